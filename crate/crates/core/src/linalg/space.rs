use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::LinalgError;

/// A finite-dimensional space with a distinguished, labelled basis.
///
/// `weights`, when present, give the sup-norm `‖e_i‖ = p^{-w_i}` used by the
/// nonarchimedean routines; purely algebraic code ignores them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceObject {
    labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<i64>>,
}

impl SpaceObject {
    pub fn with_labels(labels: Vec<String>) -> Result<Self, LinalgError> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(LinalgError::DuplicateLabel(l.clone()));
            }
        }
        Ok(SpaceObject { labels, weights: None })
    }

    /// Basis `prefix0, prefix1, ...`.
    pub fn standard(prefix: &str, dim: usize) -> Self {
        SpaceObject {
            labels: (0..dim).map(|i| format!("{prefix}{i}")).collect(),
            weights: None,
        }
    }

    /// The one-dimensional unit object K.
    pub fn unit() -> Self {
        SpaceObject {
            labels: vec!["1".to_string()],
            weights: None,
        }
    }

    pub fn zero() -> Self {
        SpaceObject {
            labels: Vec::new(),
            weights: None,
        }
    }

    pub fn with_weights(mut self, weights: Vec<i64>) -> Result<Self, LinalgError> {
        if weights.len() != self.dim() {
            return Err(LinalgError::LabelCount {
                expected: self.dim(),
                got: weights.len(),
            });
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    /// Weights, defaulting to 0 (unit ball basis).
    pub fn weights_or_unit(&self) -> Vec<i64> {
        self.weights.clone().unwrap_or_else(|| vec![0; self.dim()])
    }

    /// `X ⊗ Y` with X-major lexicographic basis `x_i⊗y_j` at index `i·dim(Y) + j`.
    pub fn tensor(&self, other: &SpaceObject) -> SpaceObject {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        let weights = match (&self.weights, &other.weights) {
            (None, None) => None,
            _ => {
                let (wa, wb) = (self.weights_or_unit(), other.weights_or_unit());
                Some(wa.iter().flat_map(|a| wb.iter().map(move |b| a + b)).collect())
            }
        };
        SpaceObject { labels, weights }
    }

    /// Dual space with primed labels; weights negate since `‖x'‖ = 1/‖x‖`.
    pub fn dual(&self) -> SpaceObject {
        SpaceObject {
            labels: self.labels.iter().map(|l| format!("{l}'")).collect(),
            weights: self.weights.as_ref().map(|w| w.iter().map(|x| -x).collect()),
        }
    }

    /// Direct sum, labels disambiguated by summand index when they collide.
    pub fn direct_sum(spaces: &[SpaceObject]) -> SpaceObject {
        let mut labels = Vec::new();
        let mut seen = HashSet::new();
        let collide = spaces
            .iter()
            .flat_map(|s| s.labels.iter())
            .any(|l| !seen.insert(l.clone()));
        for (k, s) in spaces.iter().enumerate() {
            for l in &s.labels {
                labels.push(if collide { format!("{k}:{l}") } else { l.clone() });
            }
        }
        let weights = if spaces.iter().any(|s| s.weights.is_some()) {
            Some(spaces.iter().flat_map(|s| s.weights_or_unit()).collect())
        } else {
            None
        };
        SpaceObject { labels, weights }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_labels_rejected() {
        assert!(SpaceObject::with_labels(vec!["a".into(), "a".into()]).is_err());
        assert_eq!(SpaceObject::with_labels(vec!["a".into(), "b".into()]).unwrap().dim(), 2);
    }

    #[test]
    fn tensor_is_x_major() {
        let x = SpaceObject::standard("x", 2);
        let y = SpaceObject::standard("y", 3);
        let t = x.tensor(&y);
        assert_eq!(t.dim(), 6);
        assert_eq!(t.labels()[1 * 3 + 2], "x1⊗y2");
    }

    #[test]
    fn weights_follow_tensor_and_dual() {
        let x = SpaceObject::standard("x", 2).with_weights(vec![0, 1]).unwrap();
        let y = SpaceObject::standard("y", 2).with_weights(vec![2, -1]).unwrap();
        assert_eq!(x.tensor(&y).weights().unwrap(), &[2, -1, 3, 0]);
        assert_eq!(x.dual().weights().unwrap(), &[0, -1]);
        assert!(SpaceObject::standard("z", 2).with_weights(vec![1]).is_err());
    }

    #[test]
    fn direct_sum_disambiguates() {
        let s = SpaceObject::direct_sum(&[SpaceObject::unit(), SpaceObject::unit()]);
        assert_eq!(s.labels(), &["0:1".to_string(), "1:1".to_string()]);
        assert_eq!(SpaceObject::direct_sum(&[]).dim(), 0);
    }
}
