use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{format_rational, Field};
use super::LinalgError;

/// A linear map between based spaces, stored as a dense row-major matrix.
///
/// Column `j` is the image of the `j`-th domain basis vector, so `rows` is the
/// codomain dimension and `cols` the domain dimension. Every entry is kept in
/// the canonical form of `field`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl LinearMap {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        LinearMap {
            field,
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    /// Multiplication by `c` on a one-dimensional space.
    pub fn scalar(field: Field, c: BigRational) -> Result<Self, LinalgError> {
        Ok(LinearMap {
            field,
            rows: 1,
            cols: 1,
            data: vec![field.normalize(c)?],
        })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<BigRational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::RaggedRows);
            }
            for x in row {
                data.push(field.normalize(x)?);
            }
        }
        Ok(LinearMap { field, rows: r, cols: c, data })
    }

    /// Explicit shape, so empty matrices keep their dimensions.
    pub fn from_rows_with_shape(
        field: Field,
        rows: usize,
        cols: usize,
        entries: Vec<Vec<BigRational>>,
    ) -> Result<Self, LinalgError> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::ShapeMismatch {
                op: "from_rows",
                left: (rows, cols),
                right: (entries.len(), entries.first().map_or(0, Vec::len)),
            });
        }
        let mut m = Self::zeros(field, rows, cols);
        for (i, row) in entries.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                m.data[i * cols + j] = field.normalize(x)?;
            }
        }
        Ok(m)
    }

    /// Convenience for tests and fixtures.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let entries = rows
            .iter()
            .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows_with_shape(field, r, c, entries).expect("integer matrix")
    }

    /// Builds a matrix from its columns, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<BigRational>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: BigRational) {
        let x = self.field.normalize(x).expect("value must lie in the matrix field");
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major string form used in JSON documents.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(format_rational).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    fn check_field(&self, other: &LinearMap) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    /// `self ∘ rhs`: apply `rhs` first.
    pub fn compose(&self, rhs: &LinearMap) -> Result<LinearMap, LinalgError> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "compose",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let f = self.field;
        let mut out = LinearMap::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &LinearMap) -> Result<LinearMap, LinalgError> {
        self.zip_with(rhs, "add", |f, a, b| f.add(a, b))
    }

    pub fn try_sub(&self, rhs: &LinearMap) -> Result<LinearMap, LinalgError> {
        self.zip_with(rhs, "sub", |f, a, b| f.sub(a, b))
    }

    fn zip_with(
        &self,
        rhs: &LinearMap,
        op: &'static str,
        g: impl Fn(Field, &BigRational, &BigRational) -> BigRational,
    ) -> Result<LinearMap, LinalgError> {
        self.check_field(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(LinalgError::ShapeMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| g(self.field, a, b))
            .collect();
        Ok(LinearMap {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &BigRational) -> LinearMap {
        let c = self.field.normalize(c.clone()).expect("scale factor must lie in the field");
        LinearMap {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| self.field.mul(x, &c)).collect(),
        }
    }

    /// Transpose; as a map this is the dual `m*: Y* → X*` in dual bases.
    pub fn transpose(&self) -> LinearMap {
        let mut out = LinearMap::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Kronecker product `self ⊗ rhs`, X-major: `(i,j) ↦ i·dim(Y) + j`.
    pub fn tensor(&self, rhs: &LinearMap) -> Result<LinearMap, LinalgError> {
        self.check_field(rhs)?;
        let f = self.field;
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut out = LinearMap::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.data[(i * rhs.rows + k) * c + j * rhs.cols + l] = f.mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(a ⊗ b) ∘ self` without materializing the Kronecker product.
    pub fn tensor_then(&self, a: &LinearMap, b: &LinearMap) -> Result<LinearMap, LinalgError> {
        self.check_field(a)?;
        self.check_field(b)?;
        if a.cols * b.cols != self.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "tensor_then",
                left: (a.rows * b.rows, a.cols * b.cols),
                right: self.shape(),
            });
        }
        let f = self.field;
        let out_rows = a.rows * b.rows;
        let mut out = LinearMap::zeros(f, out_rows, self.cols);
        let bt = b.transpose();
        for col in 0..self.cols {
            // Reshape the column into an a.cols × b.cols block V; the image is A·V·Bᵀ.
            let v = LinearMap {
                field: f,
                rows: a.cols,
                cols: b.cols,
                data: self.column(col),
            };
            if v.is_zero() {
                continue;
            }
            let img = &(a * &v) * &bt;
            for (idx, x) in img.data.into_iter().enumerate() {
                out.data[idx * self.cols + col] = x;
            }
        }
        Ok(out)
    }

    /// Permutation `X ⊗ Y → Y ⊗ X`.
    pub fn swap(field: Field, dim_x: usize, dim_y: usize) -> LinearMap {
        let n = dim_x * dim_y;
        let mut out = LinearMap::zeros(field, n, n);
        for i in 0..dim_x {
            for j in 0..dim_y {
                out.data[(j * dim_x + i) * n + i * dim_y + j] = BigRational::one();
            }
        }
        out
    }

    /// Block row `[m_0 | m_1 | ...]`; all blocks share the row count `rows`.
    pub fn hstack(field: Field, rows: usize, blocks: &[LinearMap]) -> Result<LinearMap, LinalgError> {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = LinearMap::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            out.check_field(b)?;
            if b.rows != rows {
                return Err(LinalgError::ShapeMismatch {
                    op: "hstack",
                    left: (rows, cols),
                    right: b.shape(),
                });
            }
            out.paste(0, offset, b);
            offset += b.cols;
        }
        Ok(out)
    }

    /// Block column; all blocks share the column count `cols`.
    pub fn vstack(field: Field, cols: usize, blocks: &[LinearMap]) -> Result<LinearMap, LinalgError> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = LinearMap::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            out.check_field(b)?;
            if b.cols != cols {
                return Err(LinalgError::ShapeMismatch {
                    op: "vstack",
                    left: (rows, cols),
                    right: b.shape(),
                });
            }
            out.paste(offset, 0, b);
            offset += b.rows;
        }
        Ok(out)
    }

    pub fn block_diag(field: Field, blocks: &[LinearMap]) -> Result<LinearMap, LinalgError> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = LinearMap::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.check_field(b)?;
            out.paste(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        Ok(out)
    }

    /// Inclusion of the `k`-th summand into a direct sum with the given dimensions.
    pub fn inclusion(field: Field, dims: &[usize], k: usize) -> LinearMap {
        let total: usize = dims.iter().sum();
        let offset: usize = dims[..k].iter().sum();
        let mut out = LinearMap::zeros(field, total, dims[k]);
        for i in 0..dims[k] {
            out.data[(offset + i) * dims[k] + i] = BigRational::one();
        }
        out
    }

    /// Projection onto the `k`-th summand.
    pub fn projection(field: Field, dims: &[usize], k: usize) -> LinearMap {
        Self::inclusion(field, dims, k).transpose()
    }

    pub fn paste(&mut self, r0: usize, c0: usize, block: &LinearMap) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> LinearMap {
        let mut out = LinearMap::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.data[i * out.cols + j] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> LinearMap {
        let columns: Vec<_> = cols.iter().map(|&c| self.column(c)).collect();
        LinearMap::from_columns(self.field, self.rows, &columns)
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| self.field.add(&acc, &self.field.mul(a, b)))
            })
            .collect()
    }

    /// Reinterprets every entry in another field (e.g. reducing integer data mod p).
    pub fn convert(&self, field: Field) -> Result<LinearMap, LinalgError> {
        let data = self
            .data
            .iter()
            .map(|x| field.normalize(x.clone()))
            .collect::<Result<_, _>>()?;
        Ok(LinearMap {
            field,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap[{}; {}x{}]", self.field, self.rows, self.cols)?;
        for r in self.to_string_rows() {
            write!(f, "\n  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a LinearMap> for &'a LinearMap {
    type Output = LinearMap;

    /// Composition; panics on shape or field mismatch.
    fn mul(self, rhs: &'a LinearMap) -> LinearMap {
        self.compose(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Add<&'a LinearMap> for &'a LinearMap {
    type Output = LinearMap;
    fn add(self, rhs: &'a LinearMap) -> LinearMap {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a LinearMap> for &'a LinearMap {
    type Output = LinearMap;
    fn sub(self, rhs: &'a LinearMap) -> LinearMap {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &LinearMap {
    type Output = LinearMap;
    fn neg(self) -> LinearMap {
        LinearMap {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| self.field.neg(x)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn identity_tensor_identity() {
        let a = LinearMap::identity(Q, 2);
        let b = LinearMap::identity(Q, 3);
        assert_eq!(a.tensor(&b).unwrap(), LinearMap::identity(Q, 6));
    }

    #[test]
    fn scalar_tensor_scalar() {
        let two = LinearMap::from_i64(Q, &[&[2]]);
        let three = LinearMap::from_i64(Q, &[&[3]]);
        assert_eq!(two.tensor(&three).unwrap(), LinearMap::from_i64(Q, &[&[6]]));
    }

    #[test]
    fn transpose_example() {
        let m = LinearMap::from_i64(Q, &[&[0, 1], &[0, 0]]);
        assert_eq!(m.transpose(), LinearMap::from_i64(Q, &[&[0, 0], &[1, 0]]));
        assert_eq!(LinearMap::identity(Q, 3).transpose(), LinearMap::identity(Q, 3));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = LinearMap::identity(Q, 2);
        let b = LinearMap::identity(Field::Prime(3), 2);
        assert!(matches!(a.compose(&b), Err(LinalgError::FieldMismatch { .. })));
        assert!(matches!(a.tensor(&b), Err(LinalgError::FieldMismatch { .. })));
    }

    #[test]
    fn swap_moves_factors() {
        let a = LinearMap::from_i64(Q, &[&[1, 2], &[3, 4]]);
        let b = LinearMap::from_i64(Q, &[&[0, 1, 5]]);
        let s_in = LinearMap::swap(Q, 2, 3);
        let s_out = LinearMap::swap(Q, 2, 1);
        let lhs = &s_out * &a.tensor(&b).unwrap();
        let rhs = &b.tensor(&a).unwrap() * &s_in;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_then_matches_kronecker() {
        let a = LinearMap::from_i64(Q, &[&[1, 2], &[0, -1], &[3, 3]]);
        let b = LinearMap::from_i64(Q, &[&[2, 0], &[1, 1]]);
        let m = LinearMap::from_i64(Q, &[&[1, 0], &[2, 1], &[0, 0], &[-1, 4]]);
        let direct = &a.tensor(&b).unwrap() * &m;
        assert_eq!(m.tensor_then(&a, &b).unwrap(), direct);
    }

    #[test]
    fn blocks_roundtrip() {
        let a = LinearMap::from_i64(Q, &[&[1, 2]]);
        let b = LinearMap::from_i64(Q, &[&[3]]);
        let h = LinearMap::hstack(Q, 1, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(h, LinearMap::from_i64(Q, &[&[1, 2, 3]]));
        let inc = LinearMap::inclusion(Q, &[2, 1], 1);
        assert_eq!(&h * &inc, b);
        let d = LinearMap::block_diag(Q, &[a, b]).unwrap();
        assert_eq!(d.shape(), (2, 3));
    }
}
