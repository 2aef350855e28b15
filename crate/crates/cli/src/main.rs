use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use coendforge::commands::{self, Selection, EXIT_USAGE};
use coendforge::linalg::Field;
use coendforge::spec::SpecFile;

/// Exact coends, comatrix coalgebras and reconstruction over finite diagrams.
#[derive(Parser, Debug)]
#[command(name = "coendforge", version)]
struct Args {
    /// validate, cohom, coend, ccoend, bialgebra, hopf, reconstruct, equiv, bcoend or factor
    command: String,
    /// JSON spec file
    spec: PathBuf,
    #[arg(long)]
    functor: Option<String>,
    /// Control objects, comma separated; `unit` is always available
    #[arg(long, value_delimiter = ',')]
    controls: Vec<String>,
    #[arg(long)]
    coalgebra: Option<String>,
    /// Seed comodules, comma separated (default: all comodules of the coalgebra)
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<String>,
    /// Probe comodules for `equiv`; `regular` is the coalgebra itself
    #[arg(long, value_delimiter = ',')]
    probes: Vec<String>,
    /// The two spaces X,Y for `cohom`
    #[arg(long, value_delimiter = ',')]
    spaces: Vec<String>,
    #[arg(long)]
    transformation: Option<String>,
    /// Overrides the spec's field: q, fp:<p> or padic:<p>
    #[arg(long)]
    field: Option<Field>,
    /// Write the JSON result here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(args: Args) -> anyhow::Result<i32> {
    let text = std::fs::read_to_string(&args.spec).with_context(|| format!("reading {}", args.spec.display()))?;
    let spec = SpecFile::parse(&text, args.field).with_context(|| format!("in {}", args.spec.display()))?;
    let sel = Selection {
        functor: args.functor,
        controls: args.controls,
        coalgebra: args.coalgebra,
        seeds: args.seeds,
        probes: args.probes,
        spaces: args.spaces,
        transformation: args.transformation,
    };
    let out = commands::run(&args.command, &spec, &sel)?;
    let rendered = out.render();
    match &args.out {
        Some(path) => std::fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{rendered}"),
    }
    Ok(out.exit)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
