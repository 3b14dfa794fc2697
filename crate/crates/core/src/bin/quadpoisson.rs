use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quadpoisson::complex::ComplexKind;
use quadpoisson::linalg::Rational;
use quadpoisson::report::{emit, load_tensor, parse_rational, run, Format, Mode, RMatrixMode, RunConfig, RunError};
use quadpoisson::structures::StructureParams;

#[derive(Parser)]
#[command(name = "quadpoisson", version, about = "Exact Poisson cohomology of quadratic structures on R^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute cohomology tables.
    Compute(Common),
    /// Compare computed dimensions of H(R) with the closed-form tables.
    Verify(Common),
    /// Check exactness of the long sequence R -> P -> S per bigrade.
    LesCheck(Common),
    /// Linear automorphisms of the tensor, or its r-matrix and Yang-Baxter check.
    Rmatrix {
        #[arg(value_enum)]
        which: RKind,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RKind {
    Stabilizer,
    Yb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Dh2,
    Dh7,
    Custom,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexArg {
    R,
    P,
    S,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Markdown,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Structure family (also accepted via --structure).
    #[arg(value_enum)]
    family: Option<FamilyArg>,
    #[arg(long = "structure", value_enum)]
    structure: Option<FamilyArg>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    a: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    b: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    c: Option<Rational>,
    /// Bivector file in the multivector grammar (custom structures).
    #[arg(long)]
    tensor: Option<String>,
    #[arg(long, default_value_t = 6)]
    rmax: u32,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "r")]
    complex: Vec<ComplexArg>,
    #[arg(long, value_enum, default_value = "markdown")]
    format: FormatArg,
}

fn structure(c: &Common) -> Result<StructureParams, RunError> {
    let family = match (c.family, c.structure) {
        (Some(x), Some(y)) if x != y => return Err(RunError::Usage("conflicting structure families".into())),
        (Some(x), _) | (None, Some(x)) => x,
        (None, None) => return Err(RunError::Usage("missing structure family (dh2, dh7 or custom)".into())),
    };
    let need = |v: &Option<Rational>, name: &str| {
        v.clone().ok_or_else(|| RunError::Usage(format!("--{name} is required for this structure")))
    };
    match family {
        FamilyArg::Dh2 => {
            if c.c.is_some() {
                return Err(RunError::Usage("--c only applies to dh7".into()));
            }
            Ok(StructureParams::dh2(need(&c.a, "a")?, need(&c.b, "b")?))
        }
        FamilyArg::Dh7 => Ok(StructureParams::dh7(need(&c.a, "a")?, need(&c.b, "b")?, need(&c.c, "c")?)),
        FamilyArg::Custom => {
            let path = c.tensor.as_deref().ok_or_else(|| RunError::Usage("--tensor is required for custom".into()))?;
            Ok(StructureParams::custom(load_tensor(path)?))
        }
    }
}

fn config(mode: Mode, c: &Common) -> Result<RunConfig, RunError> {
    let mut complexes = Vec::new();
    for k in &c.complex {
        let add: &[ComplexKind] = match k {
            ComplexArg::R => &[ComplexKind::R],
            ComplexArg::P => &[ComplexKind::P],
            ComplexArg::S => &[ComplexKind::S],
            ComplexArg::All => &ComplexKind::ALL,
        };
        for x in add {
            if !complexes.contains(x) {
                complexes.push(*x);
            }
        }
    }
    Ok(RunConfig {
        structure: structure(c)?,
        rmax: c.rmax,
        complexes,
        format: match c.format {
            FormatArg::Json => Format::Json,
            FormatArg::Markdown => Format::Markdown,
            FormatArg::Csv => Format::Csv,
        },
        mode,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, common) = match &cli.command {
        Command::Compute(c) => (Mode::Compute, c),
        Command::Verify(c) => (Mode::Verify, c),
        Command::LesCheck(c) => (Mode::LesCheck, c),
        Command::Rmatrix { which, common } => (
            Mode::RMatrix(match which {
                RKind::Stabilizer => RMatrixMode::Stabilizer,
                RKind::Yb => RMatrixMode::YangBaxter,
            }),
            common,
        ),
    };
    let result = config(mode, common).and_then(|cfg| Ok((run(&cfg)?, cfg.format)));
    match result {
        Ok((report, format)) => {
            print!("{}", emit(&report, format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
