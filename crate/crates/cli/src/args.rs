use clap::{Args, Parser, Subcommand, ValueEnum};
use mahler::measure::{DEFAULT_BUDGET, DEFAULT_SAMPLES};
use mahler::{Engine, MeasureConfig};

#[derive(Parser, Debug)]
#[command(name = "mahler", version, about = "Mahler measures of Laurent polynomials and of surgered links")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mahler measure of a polynomial or catalog entry.
    Measure {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        engine: EngineArgs,
        /// Golden value; the exit code is 1 when the measure misses it.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<f64>,
        #[arg(long, default_value_t = 1e-4, requires = "expect")]
        tol: f64,
    },
    /// Measures of the surgered links for q = 1..=q_max.
    Sweep {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long, default_value_t = 12)]
        q_max: u64,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// PV / Salem / Kronecker classification of a one-variable polynomial.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Also try p(-u), so the class of the measure is reported whatever
        /// the sign of the variable.
        #[arg(long)]
        up_to_sign: bool,
    },
    /// Torres conditions for an Alexander polynomial.
    Torres {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        link: LinkArgs,
        /// Polynomial of the sublink with the last component deleted.
        #[arg(long)]
        sublink: Option<String>,
    },
    /// Closed-form constants.
    Constants,
    /// Named polynomials.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    Show { key: String },
}

#[derive(Args, Debug)]
pub struct Input {
    /// Polynomial in u1, u2, ...; `-` reads standard input.
    #[arg(conflicts_with = "key")]
    pub poly: Option<String>,
    /// Catalog key instead of a polynomial.
    #[arg(long)]
    pub key: Option<String>,
}

#[derive(Args, Debug)]
pub struct LinkArgs {
    /// Linking numbers of the last component with the others.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub linking: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
pub struct EngineArgs {
    #[arg(long, default_value = "auto")]
    pub engine: Engine,
    /// Boyd-Lawton specialization degrees.
    #[arg(long, env = "MAHLER_SCHEDULE", value_delimiter = ',', default_value = "50,100,200,400")]
    pub schedule: Vec<u64>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Grid points for the fibered engine.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Skip the quadrature cross-check of the auto engine.
    #[arg(long)]
    pub no_cross_check: bool,
}

impl EngineArgs {
    pub fn config(&self) -> MeasureConfig {
        MeasureConfig {
            engine: self.engine,
            schedule: self.schedule.clone(),
            samples: self.samples,
            seed: self.seed,
            budget: self.budget,
            cross_check: !self.no_cross_check,
        }
    }
}
