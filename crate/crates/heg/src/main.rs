use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use earring_core::audit::{self, AuditReport};
use earring_core::convergence::{converge, parse_rule, Outcome, Sequence, SequenceError};
use earring_core::loops::{loop_eq, LoopItinerary};
use earring_core::order::{cmp_g, decide, min_of, OrderError};
use earring_core::point::{parse_point, GroupPoint, PointError};
use earring_core::separation::{separate, thicken, SeparationError};
use earring_core::template::ParseError;
use earring_core::universe::{Universe, UniverseSpec};
use earring_core::word::parse_word;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

const DEFAULT_DEPTH: u32 = 8;

#[derive(Parser)]
#[command(
    name = "heg",
    version,
    about = "Words, points and clopen sets of the Hawaiian earring group"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the free reduction of a word.
    Reduce { word: String },
    /// Print the reduced projection to level N.
    Project {
        #[arg(short = 'N', long = "level")]
        level: u32,
        word: String,
    },
    /// Print the minimal representative of a point's class.
    Sigma {
        point: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
    },
    /// Compare two points, printing `<`, `=` or `>`.
    Cmp {
        left: String,
        right: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
    },
    /// Print the least element of a set file.
    Min {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
    },
    /// Build a clopen set containing B that lies above a.
    Thicken {
        #[arg(short = 'a')]
        a: String,
        #[arg(short = 'B')]
        b: PathBuf,
        #[arg(long, default_value = "L=3,len=6")]
        universe: UniverseSpec,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
    },
    /// Separate two disjoint sets by complementary clopen sets.
    Separate {
        #[arg(short = 'A')]
        a: PathBuf,
        #[arg(short = 'B')]
        b: PathBuf,
        #[arg(long, default_value = "L=3,len=6")]
        universe: UniverseSpec,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
    },
    /// Decide convergence of a sequence file or an inline `rule:` line.
    Converge {
        #[arg(short = 'f', long = "file")]
        source: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
    },
    /// Decide whether two loop itineraries are path homotopic.
    Loopeq { left: String, right: String },
    /// Run the property suites and print one line per property.
    Axioms {
        #[arg(long, default_value = "L=3,len=6")]
        universe: UniverseSpec,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}, line {line}: {source}")]
    SetLine {
        path: String,
        line: usize,
        source: PointError,
    },
    #[error("{0}: empty set")]
    EmptySet(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Point(#[from] PointError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Separation(#[from] SeparationError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Separation(
                SeparationError::PreconditionViolated(_)
                | SeparationError::InvariantViolation(_)
                | SeparationError::NonTermination(_),
            ) => 3,
            _ => 2,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// One point per line; blank lines and `#` comments are skipped.
fn read_set(path: &Path, depth: u32) -> Result<Vec<GroupPoint>, CliError> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p = parse_point(line, depth).map_err(|source| CliError::SetLine {
            path: path.display().to_string(),
            line: i + 1,
            source,
        })?;
        out.push(GroupPoint::new(p));
    }
    if out.is_empty() {
        return Err(CliError::EmptySet(path.display().to_string()));
    }
    Ok(out)
}

fn point(text: &str, depth: u32) -> Result<GroupPoint, CliError> {
    Ok(GroupPoint::new(parse_point(text, depth)?))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Reduce { word } => println!("{}", parse_word(&word)?.reduce()),
        Command::Project { level, word } => println!("{}", parse_word(&word)?.retract(level).reduce()),
        Command::Sigma { point: text, depth } => println!("{}", point(&text, depth)?.sigma(depth)?),
        Command::Cmp { left, right, depth } => {
            let (g, h) = (point(&left, depth)?, point(&right, depth)?);
            let symbol = if g.as_finite().is_some() && h.as_finite().is_some() {
                match decide(&g, &h, depth)? {
                    std::cmp::Ordering::Less => "<",
                    std::cmp::Ordering::Equal => "=",
                    std::cmp::Ordering::Greater => ">",
                }
            } else {
                cmp_g(&g, &h, depth)?.symbol()
            };
            println!("{symbol}");
        }
        Command::Min { file, depth } => println!("{}", min_of(&read_set(&file, depth)?, depth)?),
        Command::Thicken {
            a,
            b,
            universe,
            trace,
            depth,
        } => {
            let (a, b) = (point(&a, depth)?, read_set(&b, depth)?);
            let t = thicken(&a, &b, &Universe::new(universe), depth)?;
            if let Some(path) = trace {
                write(&path, &t.to_string())?;
            }
            println!("{}", t.outcome);
        }
        Command::Separate {
            a,
            b,
            universe,
            trace,
            depth,
        } => {
            let (a, b) = (read_set(&a, depth)?, read_set(&b, depth)?);
            let s = separate(&a, &b, &Universe::new(universe), depth)?;
            if let Some(path) = trace {
                write(&path, &s.trace.to_string())?;
            }
            println!("U_A = {}", s.u_a);
            println!("U_B = {}", s.b_side);
        }
        Command::Converge { source, depth } => {
            let seq = if source.trim_start().starts_with("rule:") {
                Sequence::from_rule(parse_rule(&source)?)
            } else {
                Sequence::parse(&read(Path::new(&source))?)?
            };
            let verdict = converge(&seq, depth)?;
            println!("{verdict}");
            if let Some(c) = &verdict.certificate {
                eprintln!("certificate: {c}");
            }
            return Ok(matches!(verdict.outcome, Outcome::Converges(_)));
        }
        Command::Loopeq { left, right } => {
            let (f, g): (LoopItinerary, LoopItinerary) = (left.parse()?, right.parse()?);
            let eq = loop_eq(&f, &g);
            println!("{eq}");
            return Ok(eq);
        }
        Command::Axioms {
            universe,
            samples,
            seed,
            depth,
        } => return Ok(axioms(universe, samples, seed, depth)),
    }
    Ok(true)
}

fn axioms(spec: UniverseSpec, samples: usize, seed: u64, depth: u32) -> bool {
    let (level, len) = (spec.max_level, spec.max_len);
    let universe = Universe::new(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reports: Vec<AuditReport> = vec![
        audit::projection_coherence(&mut rng, samples, level, len, depth),
        audit::projection_chain(&mut rng, samples, level, len, depth),
        audit::blowup_nesting(&mut rng, samples, &universe),
        audit::retraction_monotone(&mut rng, samples, level, len, depth),
        audit::cylinder_minimum(&universe),
        audit::nested_or_disjoint(&mut rng, samples, &universe),
        audit::order_is_linear(&mut rng, samples, level, len),
        audit::order_constraints(4, level),
        audit::sigma_properties(&mut rng, samples, level, len, depth),
        audit::reduction_retraction_exhaustive(level, len.min(6)),
        audit::confluence_sampled(&mut rng, samples, level, len + 4),
        audit::non_interlacing(2, 5),
        audit::non_interlacing(3, 4),
    ];
    for r in &reports {
        println!("{r}");
    }
    reports.iter().all(AuditReport::passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("heg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
