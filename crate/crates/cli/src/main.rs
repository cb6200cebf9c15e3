use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hcm_core::formats::{parse_facets, parse_module, parse_poset, write_facets, write_module, write_poset};
use hcm_core::sposet::{face_ring_module, glued_simplices, is_poset_cm, is_poset_l_cm, poset_max_l, validate};
use hcm_core::sqfree::{canonical_betti, koszul_betti, module_dim};
use hcm_core::topocm::{hochster_betti, is_cohen_macaulay, is_l_cm, krull_dimension, max_l};
use hcm_core::verify::{self, SweepScope, SWEEPS};
use hcm_core::{Error, Face, FieldSpec, SimplicialComplex, SimplicialPoset};

#[derive(Parser)]
#[command(name = "hcm", version, about = "Cohen-Macaulay and l-Cohen-Macaulay checks")]
struct Cli {
    /// Worker threads for parallel computations (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Input file; `-` or omitted reads standard input.
    file: Option<String>,
}

#[derive(Args)]
struct FieldArg {
    /// `q` for the rationals or `p:<prime>`.
    #[arg(long, default_value = "q")]
    field: FieldSpec,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Level {
    /// Test l-Cohen-Macaulayness for this l.
    #[arg(long)]
    l: Option<usize>,
    /// Print the largest l instead (0 when not Cohen-Macaulay).
    #[arg(long)]
    max: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Cohen-Macaulay verdict for a facet file.
    Cm {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        field: FieldArg,
    },
    /// l-Cohen-Macaulay verdict, or the largest such l.
    Lcm {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        level: Level,
    },
    /// Multigraded Betti table as TSV.
    Betti {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        field: FieldArg,
        /// Table of the canonical module instead (input must be Cohen-Macaulay).
        #[arg(long)]
        canonical: bool,
        /// Read a module file instead of a facet file.
        #[arg(long)]
        module: bool,
    },
    /// Facet file of the i-skeleton.
    Skeleton {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'i', allow_negative_numbers = true)]
        i: isize,
    },
    /// Facet file of an induced subcomplex, keeping vertex labels.
    Restrict {
        #[command(flatten)]
        input: Input,
        /// Comma-separated vertices to keep.
        #[arg(long, conflicts_with = "drop", required_unless_present = "drop")]
        keep: Option<String>,
        /// Comma-separated vertices to delete.
        #[arg(long)]
        drop: Option<String>,
    },
    /// Cohen-Macaulay verdict for a poset file.
    PosetCm {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        field: FieldArg,
    },
    /// l-Cohen-Macaulay verdict for a poset file, or the largest such l.
    PosetLcm {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        level: Level,
    },
    /// Face ring of a poset file as a module file.
    PosetModule {
        #[command(flatten)]
        input: Input,
    },
    /// Write a standard instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run a verification sweep and print its report.
    Verify {
        /// One of thm12, thm25, thm27, thm44, remark45, oracle, route, cor26, omega.
        sweep: String,
        /// Largest vertex count for exhaustive enumeration (at most 5).
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = SweepScope::default().seed)]
        seed: u64,
        /// Comma-separated fields.
        #[arg(long, default_value = "p:2,q", value_delimiter = ',')]
        fields: Vec<FieldSpec>,
        #[arg(long, default_value_t = SweepScope::default().random_complexes)]
        random_complexes: usize,
        #[arg(long, default_value_t = SweepScope::default().random_posets)]
        random_posets: usize,
        /// Leave out the named standard complexes.
        #[arg(long)]
        no_standard: bool,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Boundary of the d-simplex on d+1 vertices.
    BoundarySimplex {
        #[arg(short = 'd')]
        d: usize,
    },
    /// Cycle graph on m vertices.
    Cycle {
        #[arg(short = 'm')]
        m: usize,
    },
    /// Poset of m d-simplices glued along their boundaries.
    Glued {
        #[arg(short = 'd')]
        d: usize,
        #[arg(short = 'm')]
        m: usize,
    },
    /// Six-vertex real projective plane.
    Rp2,
}

enum Failure {
    Io(String, io::Error),
    Lib(Error),
    Usage(String),
    SweepFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::SweepFailed => 1,
            Failure::Usage(_) => 2,
            Failure::Io(..) => 3,
            Failure::Lib(e) => match e {
                Error::RequiresCm | Error::VoidInput | Error::ZeroModule | Error::TooLargeForExhaustive(_) => 4,
                Error::Internal(_) => 1,
                _ => 3,
            },
        }
    }
}

fn read_input(input: &Input) -> Result<String, Failure> {
    match input.file.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io("<stdin>".into(), e))?;
            Ok(s)
        }
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Io(path.into(), e)),
    }
}

fn read_complex(input: &Input) -> Result<SimplicialComplex, Failure> {
    Ok(parse_facets(&read_input(input)?)?)
}

fn read_poset(input: &Input) -> Result<SimplicialPoset, Failure> {
    Ok(validate(&parse_poset(&read_input(input)?)?)?)
}

fn parse_vertex_list(s: &str, n: usize) -> Result<Face, Failure> {
    let mut f = Face::EMPTY;
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: u32 = tok
            .parse()
            .map_err(|_| Failure::Usage(format!("`{tok}` is not a vertex")))?;
        if v == 0 || v as usize > n {
            return Err(Failure::Lib(Error::VertexOutOfRange { vertex: v, n }));
        }
        f = f.with(v);
    }
    Ok(f)
}

fn run(cli: Cli) -> Result<String, Failure> {
    Ok(match cli.command {
        Command::Cm { input, field } => {
            format!("{}\n", is_cohen_macaulay(&read_complex(&input)?, field.field)?)
        }
        Command::Lcm { input, field, level } => {
            let c = read_complex(&input)?;
            match level.l {
                Some(l) => format!("{}\n", is_l_cm(&c, l, field.field)?),
                None => format!("{}\n", max_l(&c, field.field)?),
            }
        }
        Command::Betti {
            input,
            field,
            canonical,
            module,
        } => {
            let text = read_input(&input)?;
            let (table, d) = if module {
                let m = parse_module(&text)?;
                (koszul_betti(&m, field.field)?, module_dim(&m).ok())
            } else {
                let c = parse_facets(&text)?;
                (hochster_betti(&c, field.field)?, krull_dimension(&c).ok())
            };
            if canonical {
                let d = d.ok_or(Error::ZeroModule)?;
                canonical_betti(&table, table.n(), d)?.to_tsv()
            } else {
                table.to_tsv()
            }
        }
        Command::Skeleton { input, i } => write_facets(&read_complex(&input)?.skeleton(i)),
        Command::Restrict { input, keep, drop } => {
            let c = read_complex(&input)?;
            let n = c.vertex_count();
            let w = match (keep, drop) {
                (Some(k), _) => parse_vertex_list(&k, n)?,
                (None, Some(d)) => Face::full(n).difference(parse_vertex_list(&d, n)?),
                (None, None) => unreachable!("clap requires one of --keep/--drop"),
            };
            write_facets(&c.restrict_keep_labels(w))
        }
        Command::PosetCm { input, field } => format!("{}\n", is_poset_cm(&read_poset(&input)?, field.field)?),
        Command::PosetLcm { input, field, level } => {
            let p = read_poset(&input)?;
            match level.l {
                Some(l) => format!("{}\n", is_poset_l_cm(&p, l, field.field)?),
                None => format!("{}\n", poset_max_l(&p, field.field)?),
            }
        }
        Command::PosetModule { input } => write_module(&face_ring_module(&read_poset(&input)?)?),
        Command::Gen { kind } => match kind {
            GenKind::BoundarySimplex { d } => {
                if d == 0 || d >= 64 {
                    return Err(Failure::Usage("-d must be in 1..=63".into()));
                }
                write_facets(&verify::boundary_simplex(d))
            }
            GenKind::Cycle { m } => {
                if !(3..=64).contains(&m) {
                    return Err(Failure::Usage("-m must be in 3..=64".into()));
                }
                write_facets(&verify::cycle_graph(m))
            }
            GenKind::Glued { d, m } => write_poset(&glued_simplices(d, m)?),
            GenKind::Rp2 => write_facets(&verify::rp2()),
        },
        Command::Verify {
            sweep,
            n,
            seed,
            fields,
            random_complexes,
            random_posets,
            no_standard,
        } => {
            if n > 5 {
                return Err(Failure::Lib(Error::TooLargeForExhaustive(n)));
            }
            let scope = SweepScope {
                max_n: n,
                standard: !no_standard,
                random_complexes,
                random_posets,
                seed,
            };
            let report = verify::run_sweep(&sweep, &scope, &fields).ok_or_else(|| {
                Failure::Usage(format!("unknown sweep `{sweep}`; expected one of {}", SWEEPS.join(", ")))
            })?;
            let text = report.to_text();
            if !report.passed() {
                print!("{text}");
                return Err(Failure::SweepFailed);
            }
            text
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("hcm: cannot configure {jobs} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Io(path, e) => eprintln!("hcm: cannot read {path}: {e}"),
                Failure::Lib(e) => eprintln!("hcm: {e}"),
                Failure::Usage(msg) => eprintln!("hcm: {msg}"),
                Failure::SweepFailed => eprintln!("hcm: sweep reported failures"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
