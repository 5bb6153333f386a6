//! Command-line front end for `comf`.
//!
//! Maps are read as JSON documents (see [`document`]) from file paths, or
//! from stdin when the path is `-` or omitted. Scalars go in flags. Exit
//! codes: 0 success, 1 invalid map, 2 unparsable input, 3 a library
//! precondition failed.

pub mod document;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use comf::commensurator::{self, classify};
use comf::plmap::{validate, Violation};
use comf::qi::{self, UnitDyadicInterval};
use comf::sampler::SeededGenerator;
use comf::thompson::{self, Lattice};
use comf::{Dyadic, Error, Orientation, PLMap};

pub use document::{parse_map, serialize_map, MapDocument};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid map")]
    Invalid(Vec<Violation>),
    #[error("{0}")]
    Precondition(Error),
    #[error("io error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(v) => CliError::Invalid(v),
            other => CliError::Precondition(other),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "comf",
    version,
    about = "Exact computation in the commensurator of Thompson's group F"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a map at a dyadic point.
    Eval {
        map: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Print g ∘ f (f applied first).
    Compose {
        g: String,
        f: String,
    },
    Invert {
        map: Option<String>,
    },
    /// Canonical form.
    Canon {
        map: Option<String>,
    },
    /// List invariant violations; exit 1 if any.
    Validate {
        map: Option<String>,
    },
    /// Minimal tail data.
    Classify {
        map: Option<String>,
    },
    /// Abelianization (l, r) of an element of F.
    Abelianize {
        map: Option<String>,
    },
    /// Membership in the preimage of a lattice ("a,b" or "a,b;c,d").
    Member {
        map: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lattice: String,
    },
    /// Growth rates "p/q p'/q'" (right end first).
    Phi {
        map: Option<String>,
    },
    /// Print c ∘ f ∘ c⁻¹.
    Conjugate {
        c: String,
        f: String,
    },
    /// The standard commensuration with given tail data.
    Make {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        pp: u64,
        #[arg(long)]
        qq: u64,
        #[arg(long, allow_hyphen_values = true, default_value = "+1")]
        eps: String,
    },
    /// Vertices of the staircase map [0, a] -> [0, b].
    Stair {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Unit dyadic intervals I, J with tau(I) = J disjoint.
    DisjointIntervals {
        map: Option<String>,
    },
    Support {
        map: Option<String>,
    },
    /// Conjugate a map supported in [0, 1] into [k/2^j, (k+1)/2^j].
    Transplant {
        map: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        j: u32,
    },
    /// (tau f tau⁻¹) ∘ f⁻¹ for f supported in the I of tau.
    Witness {
        tau: String,
        f: String,
    },
    /// Seeded random element.
    Sample {
        #[arg(value_enum)]
        kind: SampleKind,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        len: usize,
        #[arg(long, default_value_t = 5)]
        max_period: u64,
        #[arg(long, default_value_t = 0)]
        perturb: usize,
        #[arg(long, allow_hyphen_values = true)]
        lattice: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SampleKind {
    /// A word in x0, x1 and their inverses.
    FWord,
    Commensuration,
    /// An element of the preimage of --lattice.
    Lattice,
    /// An element of F' supported in [0, 1].
    FPrime,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs one command line. `args` starts with the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }
            };
        }
    };
    let mut input = Input { stdin, used: false };
    match dispatch(cli.command, &mut input) {
        Ok(stdout) => Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        },
        Err(e) => {
            let mut stderr = format!("{e}\n");
            if let CliError::Invalid(vs) = &e {
                for v in vs {
                    let _ = writeln!(stderr, "{v}");
                }
            }
            Outcome {
                stdout: String::new(),
                stderr,
                code: e.exit_code(),
            }
        }
    }
}

struct Input<'a> {
    stdin: &'a mut dyn Read,
    used: bool,
}

impl Input<'_> {
    fn text(&mut self, path: Option<&str>) -> Result<String, CliError> {
        match path {
            None | Some("-") => {
                if self.used {
                    return Err(CliError::Parse("stdin can supply only one map".into()));
                }
                self.used = true;
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| CliError::Io(e.to_string()))?;
                Ok(s)
            }
            Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{p}: {e}"))),
        }
    }

    fn map(&mut self, path: Option<&str>) -> Result<PLMap, CliError> {
        parse_map(&self.text(path)?)
    }
}

fn dyadic(s: &str) -> Result<Dyadic, CliError> {
    s.parse()
        .map_err(|e: comf::DyadicParseError| CliError::Parse(e.to_string()))
}

fn orientation(s: &str) -> Result<Orientation, CliError> {
    match s {
        "1" | "+1" => Ok(Orientation::Preserving),
        "-1" => Ok(Orientation::Reversing),
        other => Err(CliError::Parse(format!(
            "orientation must be +1 or -1, got {other:?}"
        ))),
    }
}

/// `"a,b"` is the product `aZ x bZ`; `"a,b;c,d"` is a row-major basis
/// whose columns generate the lattice.
pub fn parse_lattice(s: &str) -> Result<Lattice, CliError> {
    let int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| CliError::Parse(format!("bad lattice entry {t:?}")))
    };
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|row| row.split(',').map(int).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let lattice = match rows.as_slice() {
        [r] if r.len() == 2 => Lattice::product(r[0], r[1]),
        [r0, r1] if r0.len() == 2 && r1.len() == 2 => {
            Lattice::from_basis([[r0[0], r0[1]], [r1[0], r1[1]]])
        }
        _ => {
            return Err(CliError::Parse(format!(
                "lattice must be \"a,b\" or \"a,b;c,d\", got {s:?}"
            )))
        }
    };
    Ok(lattice?)
}

fn dispatch(command: Command, input: &mut Input<'_>) -> Result<String, CliError> {
    use Command::*;
    Ok(match command {
        Eval { map, t } => {
            let f = input.map(map.as_deref())?;
            format!("{}\n", f.evaluate(&dyadic(&t)?))
        }
        Compose { g, f } => {
            let (g, f) = (input.map(Some(&g))?, input.map(Some(&f))?);
            serialize_map(&comf::compose(&g, &f))
        }
        Invert { map } => serialize_map(&input.map(map.as_deref())?.invert()),
        Canon { map } => serialize_map(&input.map(map.as_deref())?.canonicalize()),
        Validate { map } => {
            let raw = document::parse_raw(&input.text(map.as_deref())?)?;
            let violations = validate::validate(&raw);
            if !violations.is_empty() {
                return Err(CliError::Invalid(violations));
            }
            "ok\n".to_string()
        }
        Classify { map } => {
            let c = classify(&input.map(map.as_deref())?);
            let (p, q) = c.right();
            let (pp, qq) = c.left();
            format!(
                "right {p} {q}\nleft {pp} {qq}\norientation {}\n",
                c.orientation()
            )
        }
        Abelianize { map } => format!("{}\n", thompson::abelianize(&input.map(map.as_deref())?)?),
        Member { map, lattice } => {
            let lattice = parse_lattice(&lattice)?;
            let f = input.map(map.as_deref())?;
            format!("{}\n", thompson::member(&f, &lattice))
        }
        Phi { map } => format!(
            "{}\n",
            commensurator::phi(&classify(&input.map(map.as_deref())?))?
        ),
        Conjugate { c, f } => {
            let (c, f) = (input.map(Some(&c))?, input.map(Some(&f))?);
            serialize_map(&commensurator::conjugate(&classify(&c), &f))
        }
        Make { p, q, pp, qq, eps } => {
            let c = commensurator::make_commensuration(p, q, pp, qq, orientation(&eps)?)?;
            serialize_map(c.map())
        }
        Stair { a, b } => {
            let mut out = String::new();
            for pt in commensurator::staircase(&dyadic(&a)?, &dyadic(&b)?)? {
                let _ = writeln!(out, "{} {}", pt.x, pt.y);
            }
            out
        }
        DisjointIntervals { map } => {
            let (i, j) = qi::disjoint_intervals(&input.map(map.as_deref())?)?;
            let line =
                |name: &str, u: UnitDyadicInterval| format!("{name} {u} k={} j={}\n", u.k, u.j);
            line("I", i) + &line("J", j)
        }
        Support { map } => input.map(map.as_deref())?.support().to_string(),
        Transplant { map, k, j } => {
            let f = input.map(map.as_deref())?;
            serialize_map(&qi::transplant(&f, UnitDyadicInterval::new(k, j))?)
        }
        Witness { tau, f } => {
            let (tau, f) = (input.map(Some(&tau))?, input.map(Some(&f))?);
            serialize_map(&qi::disjoint_support_witness(&tau, &f)?)
        }
        Sample {
            kind,
            seed,
            len,
            max_period,
            perturb,
            lattice,
        } => {
            let mut gen = SeededGenerator::new(seed);
            let f = match kind {
                SampleKind::FWord => gen.random_f_element(len),
                SampleKind::Commensuration => {
                    gen.random_commensuration(max_period, perturb).into_map()
                }
                SampleKind::FPrime => gen.random_f_prime_in_unit(len),
                SampleKind::Lattice => {
                    let text = lattice
                        .ok_or_else(|| CliError::Parse("sample lattice needs --lattice".into()))?;
                    gen.random_in_lattice(&parse_lattice(&text)?, len)
                }
            };
            serialize_map(&f)
        }
    })
}
