use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coha_core::ffcount::{CountOptions, CountStrategy, MomentOptions};
use coha_core::invariants::KacOptions;
use coha_core::numtheory::is_prime_power;
use coha_core::quiver::SigmaOptions;
use coha_core::{DimVector, Error, Quiver, Result, Truncation};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "coha", version, about = "Exact point counts and character identities for preprojective algebras")]
pub struct Cli {
    #[command(flatten)]
    pub job: JobArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Elementwise,
    Classes,
    Types,
}

impl From<StrategyArg> for CountStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => CountStrategy::Auto,
            StrategyArg::Elementwise => CountStrategy::Elementwise,
            StrategyArg::Classes => CountStrategy::ClassBased,
            StrategyArg::Types => CountStrategy::TypeBased,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct JobArgs {
    /// Quiver file: `{"vertices": [...], "arrows": [[src, tgt], ...]}`.
    #[arg(long, global = true, value_name = "FILE")]
    pub quiver: Option<PathBuf>,
    /// Truncation box, e.g. `2,1`.
    #[arg(long = "box", global = true, value_name = "d0,d1,...")]
    pub box_: Option<String>,
    /// Cap on the total dimension `|d|`.
    #[arg(long, global = true, value_name = "N")]
    pub max_norm: Option<u32>,
    /// Field sizes for point counts.
    #[arg(long, global = true, value_delimiter = ',', default_value = "2,3,4,5")]
    pub fields: Vec<u64>,
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    #[arg(long, global = true, env = "COHA_CACHE_DIR", value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Enumeration budget for Burnside sums and moment-map counts.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_enum: Option<u64>,
    /// Budget on partial decompositions visited by the Σ-set test.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_decomp: Option<u64>,
    #[arg(long, global = true, default_value_t = 20240611)]
    pub seed: u64,
    /// Refuse quivers that are not totally negative.
    #[arg(long, global = true)]
    pub totally_negative_only: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Euler matrix, vertex classes and total negativity.
    Info,
    /// `p(d)`, `R⁺` and `Σ` membership for every class in the box.
    Sigma,
    /// Isoclass counts `M_d(q)` and Kac polynomials `A_d(q)`.
    Kac {
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
    },
    /// Absolutely cuspidal polynomials.
    Cuspidal,
    /// Intersection Poincaré polynomials on `Σ` and the BPS generator identity.
    Ip,
    /// Isoclass counts at each field for the dimension vector given by `--box`.
    Count {
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        /// Also count points of the moment-map fibre `μ⁻¹(0)`.
        #[arg(long)]
        moment: bool,
    },
    /// Point-count PBW identity at each field.
    PbwCheck,
    /// Borcherds–Bozec simple roots and graded dimensions of `n⁺` and `U(n⁺)`.
    Bb,
    /// Randomised structural identities, driven by `--seed`.
    Selfcheck {
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Sigma => "sigma",
            Command::Kac { .. } => "kac",
            Command::Cuspidal => "cuspidal",
            Command::Ip => "ip",
            Command::Count { .. } => "count",
            Command::PbwCheck => "pbw-check",
            Command::Bb => "bb",
            Command::Selfcheck { .. } => "selfcheck",
        }
    }
}

/// Validated job parameters.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub quiver: Option<Quiver>,
    pub truncation: Option<Truncation>,
    pub fields: Vec<u64>,
    pub threads: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub format: OutputFormat,
    pub budget_enum: Option<u64>,
    pub budget_decomp: Option<u64>,
    pub seed: u64,
    pub totally_negative_only: bool,
}

impl JobConfig {
    pub fn from_args(args: &JobArgs) -> Result<Self> {
        let quiver = match &args.quiver {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
                Some(Quiver::from_json(&text)?)
            }
            None => None,
        };
        let mut fields = args.fields.clone();
        for &q in &fields {
            if !is_prime_power(q) {
                return Err(Error::InvalidArgument(format!("field size {q} is not a prime power")));
            }
        }
        fields.sort_unstable();
        if fields.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("field sizes must be distinct".into()));
        }
        let truncation = match (&quiver, &args.box_, args.max_norm) {
            (_, Some(text), cap) => {
                let bound = DimVector::parse(text)?;
                if let Some(q) = &quiver {
                    if bound.len() != q.vertex_count() {
                        return Err(Error::DimensionMismatch {
                            expected: q.vertex_count(),
                            got: bound.len(),
                        });
                    }
                }
                Some(match cap {
                    Some(n) => Truncation::with_max_total(bound, n),
                    None => Truncation::new(bound),
                })
            }
            (Some(q), None, Some(n)) => Some(Truncation::total(q.vertex_count(), n)),
            _ => None,
        };
        if args.threads == Some(0) {
            return Err(Error::InvalidArgument("--threads must be positive".into()));
        }
        Ok(JobConfig {
            quiver,
            truncation,
            fields,
            threads: args.threads,
            cache_dir: args.cache_dir.clone(),
            format: args.format,
            budget_enum: args.budget_enum,
            budget_decomp: args.budget_decomp,
            seed: args.seed,
            totally_negative_only: args.totally_negative_only,
        })
    }

    pub fn require_quiver(&self) -> Result<&Quiver> {
        let q = self
            .quiver
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("--quiver is required".into()))?;
        if self.totally_negative_only && !q.is_totally_negative() {
            return Err(Error::NotTotallyNegative(
                "--totally-negative-only was given and the quiver is not totally negative".into(),
            ));
        }
        Ok(q)
    }

    pub fn require_truncation(&self) -> Result<&Truncation> {
        self.truncation
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("--box or --max-norm is required".into()))
    }

    pub fn count_options(&self, strategy: CountStrategy) -> CountOptions {
        let mut o = CountOptions::with_strategy(strategy);
        if let Some(b) = self.budget_enum {
            o.enumeration_budget = b;
        }
        o
    }

    pub fn kac_options(&self, strategy: CountStrategy) -> KacOptions {
        KacOptions {
            count: self.count_options(strategy),
            ..KacOptions::default()
        }
    }

    pub fn moment_options(&self) -> MomentOptions {
        let mut o = MomentOptions::default();
        if let Some(b) = self.budget_enum {
            o.work_budget = b;
        }
        o
    }

    pub fn sigma_options(&self) -> SigmaOptions {
        let mut o = SigmaOptions::default();
        if let Some(b) = self.budget_decomp {
            o.decomposition_budget = b;
        }
        o
    }

    /// Everything that can change a result; thread count, format and cache location cannot.
    pub fn params(&self, command: &Command) -> Value {
        let extra = match command {
            Command::Kac { strategy } | Command::Count { strategy, moment: false } => {
                json!({ "strategy": format!("{strategy:?}") })
            }
            Command::Count { strategy, moment: true } => {
                json!({ "strategy": format!("{strategy:?}"), "moment": true })
            }
            Command::Selfcheck { cases } => json!({ "cases": cases }),
            _ => Value::Null,
        };
        json!({
            "box": self.truncation.as_ref().map(|t| t.bound().to_string()),
            "max_norm": self.truncation.as_ref().and_then(|t| t.max_total()),
            "fields": self.fields,
            "budget_enum": self.budget_enum,
            "budget_decomp": self.budget_decomp,
            "seed": self.seed,
            "totally_negative_only": self.totally_negative_only,
            "command_options": extra,
        })
    }
}
