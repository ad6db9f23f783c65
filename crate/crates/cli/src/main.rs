mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclekit::{NumericMode, SpaceSign};

/// Environment variable selecting the default numeric mode.
pub const MODE_VAR: &str = "CYCLEKIT_MODE";

#[derive(Parser, Debug)]
#[command(name = "cyclekit", version, about = "Cycles, Möbius maps and their invariants in the EPH planes")]
pub struct Cli {
    /// Exact rational arithmetic.
    #[arg(long, global = true, conflicts_with = "float")]
    pub exact: bool,
    /// 64-bit floating-point arithmetic.
    #[arg(long, global = true)]
    pub float: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn sign(s: &str) -> Result<SpaceSign, String> {
    s.parse().map_err(|e: cyclekit::Error| e.to_string())
}

fn fscc_s(s: &str) -> Result<i8, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("s must be 1 or -1, got `{s}`")),
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ortho,
    Sortho,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Distance,
    Centre,
    Focus,
}

#[derive(Args, Debug, Clone)]
pub struct LengthArgs {
    #[arg(long, value_enum, default_value = "distance")]
    pub kind: Kind,
    /// Point-space sign.
    #[arg(long, value_parser = sign)]
    pub sigma: SpaceSign,
    /// Cycle-space sign for `centre` and `focus`; defaults to `--sigma`.
    #[arg(long, value_parser = sign)]
    pub sigma_cycle: Option<SpaceSign>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Render a cycle-set document as SVG.
    Draw {
        /// Overrides the document's point-space sign.
        #[arg(long, value_parser = sign)]
        sigma: Option<SpaceSign>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply a Möbius map to every cycle and point of a document.
    Transform {
        /// Matrix entries a,b,c,d (normalised to determinant one).
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, value_parser = sign, default_value = "e")]
        sigma_cycle: SpaceSign,
        #[arg(long, value_parser = fscc_s, default_value = "1", allow_hyphen_values = true)]
        s: i8,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide a relation between two cycles; exit 0 when it holds, 1 otherwise.
    Check {
        #[arg(value_enum)]
        relation: Relation,
        #[arg(long, value_parser = sign)]
        sigma_cycle: SpaceSign,
        #[arg(long, value_parser = fscc_s, default_value = "1", allow_hyphen_values = true)]
        s: i8,
        #[arg(allow_hyphen_values = true)]
        c1: String,
        #[arg(allow_hyphen_values = true)]
        c2: String,
    },
    /// The ghost cycle of C.
    Ghost {
        #[arg(long, value_parser = sign)]
        sigma: SpaceSign,
        #[arg(long, value_parser = sign)]
        sigma_cycle: SpaceSign,
        #[arg(long)]
        json: bool,
        #[arg(allow_hyphen_values = true)]
        cycle: String,
    },
    /// The s-ghost cycle of C.
    Sghost {
        #[arg(long, value_parser = sign)]
        sigma: SpaceSign,
        #[arg(long, value_parser = sign)]
        sigma_cycle: SpaceSign,
        #[arg(long)]
        json: bool,
        #[arg(allow_hyphen_values = true)]
        cycle: String,
    },
    /// Invert a point or a cycle in the cycle C.
    Invert {
        #[arg(long, value_parser = sign)]
        sigma_cycle: SpaceSign,
        #[arg(long, value_parser = fscc_s, default_value = "1", allow_hyphen_values = true)]
        s: i8,
        /// A point u,v to invert.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "target", required_unless_present = "target")]
        point: Option<String>,
        /// A cycle k,l,n,m to invert.
        #[arg(long = "cycle", id = "target", allow_hyphen_values = true)]
        target: Option<String>,
        /// The mirror cycle k,l,n,m.
        #[arg(allow_hyphen_values = true)]
        mirror: String,
    },
    /// Squared distance u² - σv² between two points.
    Distance {
        #[arg(long, value_parser = sign)]
        sigma: SpaceSign,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Lengths of the directed interval A→B.
    Length {
        #[command(flatten)]
        kind: LengthArgs,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Whether the direction CD is perpendicular to A→B; exit 0 when it is.
    Perp {
        #[command(flatten)]
        kind: LengthArgs,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Direction du,dv.
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
    },
    /// Ratios of lengths before and after a Möbius map, for several directions.
    Conformal {
        #[command(flatten)]
        kind: LengthArgs,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Directions separated by `;`, e.g. `1,0;0,1`.
        #[arg(long, allow_hyphen_values = true, default_value = "1,0;0,1;1,1;1,-2;-3,1")]
        dirs: String,
        #[arg(long, default_value = "1e-4")]
        t: f64,
    },
    /// Write the SVG panels of a figure recipe.
    Figure {
        name: String,
        #[arg(long)]
        out: PathBuf,
        /// Recipe parameter key=value; repeatable.
        #[arg(long = "param", allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Points of the K-orbit through a base point.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long, value_parser = sign)]
        sigma: SpaceSign,
        /// Rotation parameters t of K(t), comma-separated.
        #[arg(long, allow_hyphen_values = true, default_value = "-4,-2,-1,-1/2,0,1/2,1,2,4")]
        t: String,
    },
}

impl Command {
    fn default_mode(&self) -> NumericMode {
        match self {
            Command::Perp { .. } | Command::Conformal { .. } | Command::Draw { .. } | Command::Figure { .. } => {
                NumericMode::Approx
            }
            _ => NumericMode::Exact,
        }
    }
}

/// Why the command did not succeed, with the exit status it maps to.
#[derive(Debug)]
pub enum Failure {
    /// A predicate evaluated to false.
    False,
    Usage(String),
    Domain(cyclekit::Error),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::False | Failure::Usage(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl From<cyclekit::Error> for Failure {
    fn from(e: cyclekit::Error) -> Self {
        match e {
            cyclekit::Error::Io(m) => Failure::Io(m),
            e if e.is_domain() => Failure::Domain(e),
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn resolve_mode(cli: &Cli) -> Result<NumericMode, Failure> {
    if cli.exact {
        if matches!(cli.command, Command::Perp { .. } | Command::Conformal { .. }) {
            return Err(Failure::Usage("perp and conformal use finite differences and need --float".into()));
        }
        return Ok(NumericMode::Exact);
    }
    if cli.float {
        return Ok(NumericMode::Approx);
    }
    match std::env::var(MODE_VAR) {
        Ok(v) if !v.is_empty() => v.parse().map_err(|e: cyclekit::Error| Failure::Usage(format!("{MODE_VAR}: {e}"))),
        _ => Ok(cli.command.default_mode()),
    }
}

/// Parses the process arguments, runs the command and maps the outcome to an exit status.
pub fn cli_main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = resolve_mode(&cli).and_then(|mode| commands::run(&cli.command, mode));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::False => {}
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Domain(e) => eprintln!("error: {e}"),
                Failure::Io(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn main() -> ExitCode {
    cli_main()
}
