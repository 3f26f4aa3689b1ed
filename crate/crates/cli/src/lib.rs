//! The `cubecat` command line.
//!
//! Exit codes: 0 when the requested check passes, 1 when it fails on valid
//! input, 2 for usage, parse and I/O errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use cubecat_core::{
    build_grid_capped, build_hypercube, build_path, build_product_capped, build_tree, cat0_check,
    cat0_distance_upper, cnd_check, distance_kernel, edge_distance, fixed_cube, half_spaces,
    invariant_kernel, kernel_growth_scan, npc_check, orbit, parse_action, parse_complex, seeded_probes,
    serialize_complex, wall_distance, wall_identity_check, walls, BuildError, CubeComplex, Error, Family,
    GroupAction, KernelMatrix, KernelStatus, KernelVerdict, PairRule, ParseErrorKind, VertexId,
    DEFAULT_CLOSURE_CAP, DEFAULT_SIZE_CAP,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cubecat",
    version,
    about = "Finite CAT(0) cube complexes: curvature, walls, metrics, kernels"
)]
struct Cli {
    /// Largest vertex count accepted from files and builders.
    #[arg(long, global = true, default_value_t = DEFAULT_SIZE_CAP)]
    size_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the link conditions and the CAT(0) test.
    Check { file: PathBuf },
    /// List walls with their edges and half-spaces.
    Hyperplanes { file: PathBuf },
    /// Distances between one pair, or all unordered pairs.
    Distance {
        file: PathBuf,
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Bfs)]
        method: Method,
        /// Subdivision level for `cat0-upper`.
        #[arg(long, default_value_t = 4)]
        subdivision: u32,
    },
    /// Check the half-space identity and search the distance kernel for violations.
    Kernel {
        #[arg(required_unless_present = "scan", conflicts_with = "scan")]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        probes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report the largest distance across a family instead.
        #[arg(long, value_enum, requires = "range")]
        scan: Option<ScanFamily>,
        /// Inclusive parameter range for `--scan`, e.g. `1..20`.
        #[arg(long, value_parser = parse_range)]
        range: Option<(usize, usize)>,
        /// Maximise over all pairs rather than the family's designated pair.
        #[arg(long)]
        all_pairs: bool,
    },
    /// Work with a finite group given by generators.
    Action {
        complex: PathBuf,
        action: PathBuf,
        #[arg(long, value_enum, default_value_t = Op::Validate)]
        op: Op,
        /// Basepoint for `orbit` and `kernel`; defaults to the least vertex.
        #[arg(long)]
        vertex: Option<String>,
        /// Largest group order enumerated.
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: usize,
    },
    /// Write a builder complex in the text format.
    Generate {
        #[command(subcommand)]
        shape: Shape,
        /// Output file; standard output when omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Bfs,
    Walls,
    Cat0Upper,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScanFamily {
    Path,
    Grid,
    Hypercube,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Op {
    Validate,
    Orbit,
    Kernel,
    FixedCube,
}

#[derive(Debug, Subcommand)]
enum Shape {
    Path {
        n: usize,
    },
    Grid {
        #[arg(required = true)]
        dims: Vec<usize>,
    },
    Hypercube {
        n: usize,
    },
    /// Parent of each vertex in order, `-` for the root.
    Tree {
        #[arg(required = true)]
        parents: Vec<String>,
    },
    Product {
        left: PathBuf,
        right: PathBuf,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected LO..HI")?;
    let lo: usize = a.parse().map_err(|_| format!("bad bound `{a}`"))?;
    let hi: usize = b.parse().map_err(|_| format!("bad bound `{b}`"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

/// A failure with its exit code and message for standard error.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Build(_) | Error::UnknownVertex(_) | Error::ProbeIndex { .. } | Error::UnknownWall(_) => {
                EXIT_USAGE
            }
            _ => EXIT_FAIL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `args` (program name first), writing the report to `out`
/// and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "cubecat: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let cap = cli.size_cap;
    match &cli.command {
        Command::Check { file } => check(&load(file, cap)?, out),
        Command::Hyperplanes { file } => hyperplanes(&load(file, cap)?, out),
        Command::Distance {
            file,
            from,
            to,
            method,
            subdivision,
        } => {
            let pair = from.as_deref().zip(to.as_deref());
            distance(&load(file, cap)?, pair, *method, *subdivision, out)
        }
        Command::Kernel {
            file: Some(file),
            probes,
            seed,
            ..
        } => kernel(&load(file, cap)?, *probes, *seed, out),
        Command::Kernel {
            scan: Some(family),
            range: Some((lo, hi)),
            all_pairs,
            ..
        } => scan(*family, *lo, *hi, *all_pairs, cap, out),
        Command::Kernel { .. } => Err(Failure::usage("kernel needs a file or --scan with --range")),
        Command::Action {
            complex,
            action,
            op,
            vertex,
            cap: group_cap,
        } => {
            let complex = load(complex, cap)?;
            let text = read(action)?;
            let generators = match parse_action(&text, &complex) {
                Ok(g) => g,
                Err(e) => {
                    let code = if matches!(e.kind, ParseErrorKind::Invalid(_)) {
                        EXIT_FAIL
                    } else {
                        EXIT_USAGE
                    };
                    return Err(Failure {
                        code,
                        message: format!("{}: {e}", action.display()),
                    });
                }
            };
            let group = GroupAction::new(&complex, generators, *group_cap)?;
            let base = vertex.clone().unwrap_or_else(|| complex.name(0).to_string());
            act(&group, *op, &base, out)
        }
        Command::Generate { shape, output } => {
            let complex = generate(shape, cap)?;
            let text = serialize_complex(&complex);
            match output {
                Some(path) => {
                    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
                }
                None => out.write_all(text.as_bytes())?,
            }
            Ok(EXIT_PASS)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path, cap: usize) -> Result<CubeComplex, Failure> {
    let complex =
        parse_complex(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    if complex.vertex_count() > cap {
        return Err(Failure::usage(format!(
            "{}: {} vertices exceeds the size cap {cap}",
            path.display(),
            complex.vertex_count()
        )));
    }
    Ok(complex)
}

fn check(complex: &CubeComplex, out: &mut dyn Write) -> Outcome {
    let npc = npc_check(complex);
    let cat0 = cat0_check(complex);
    writeln!(out, "npc\t{}", npc.verdict)?;
    writeln!(out, "cat0\t{}", cat0.verdict)?;
    for v in &cat0.violations {
        let witness: Vec<&str> = v.witness.iter().map(|w| w.as_str()).collect();
        writeln!(out, "violation\t{}\t{}", v.kind, witness.join(" "))?;
    }
    Ok(if cat0.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn hyperplanes(complex: &CubeComplex, out: &mut dyn Write) -> Outcome {
    writeln!(out, "wall\tedges\tplus\tminus")?;
    for wall in walls(complex)? {
        let (plus, minus) = half_spaces(complex, wall.id)?;
        let edges: Vec<String> = wall.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        let names = |vs: &[VertexId]| vs.iter().map(|v| v.as_str()).collect::<Vec<_>>().join(" ");
        writeln!(
            out,
            "{}\t{}\t{}\t{}",
            wall.id,
            edges.join(" "),
            names(&plus.members),
            names(&minus.members)
        )?;
    }
    Ok(EXIT_PASS)
}

fn distance(
    complex: &CubeComplex,
    pair: Option<(&str, &str)>,
    method: Method,
    k: u32,
    out: &mut dyn Write,
) -> Outcome {
    let measure = |u: &str, v: &str| -> Result<String, Failure> {
        Ok(match method {
            Method::Bfs => edge_distance(complex, u, v)?.to_string(),
            Method::Walls => wall_distance(complex, u, v)?.to_string(),
            Method::Cat0Upper => format!("{:.12}", cat0_distance_upper(complex, u, v, k)?),
        })
    };
    match pair {
        Some((u, v)) => writeln!(out, "{}", measure(u, v)?)?,
        None => {
            let names = complex.names();
            for (i, u) in names.iter().enumerate() {
                for v in &names[i + 1..] {
                    writeln!(out, "{u}\t{v}\t{}", measure(u.as_str(), v.as_str())?)?;
                }
            }
        }
    }
    Ok(EXIT_PASS)
}

fn write_verdict(
    out: &mut dyn Write,
    kernel: &KernelMatrix<i64>,
    verdict: &KernelVerdict<i64>,
) -> io::Result<()> {
    match &verdict.counterexample {
        None => writeln!(out, "cnd\tno-violation-found\t{} probes", verdict.trials),
        Some(cx) => {
            let terms: Vec<String> = cx
                .probe
                .points()
                .iter()
                .zip(cx.probe.weights())
                .map(|(&i, w)| format!("{}:{w}", kernel.points()[i]))
                .collect();
            writeln!(out, "cnd\tviolation\tvalue {}\t{}", cx.value, terms.join(" "))
        }
    }
}

fn kernel(complex: &CubeComplex, probes: usize, seed: u64, out: &mut dyn Write) -> Outcome {
    let mut failed = 0;
    for (i, probe) in seeded_probes(complex, probes, seed).iter().enumerate() {
        let id = wall_identity_check(complex, probe)?;
        let ok = id.equal && id.lhs <= 0;
        if !ok {
            failed += 1;
        }
        writeln!(
            out,
            "probe\t{i}\t{}\t{}\t{}",
            id.lhs,
            id.rhs,
            if ok { "ok" } else { "mismatch" }
        )?;
    }
    writeln!(out, "identity\t{}/{probes}", probes - failed)?;
    let matrix = distance_kernel(complex)?;
    let verdict = cnd_check(&matrix, probes, seed);
    write_verdict(out, &matrix, &verdict)?;
    Ok(
        if failed == 0 && verdict.status == KernelStatus::NoViolationFound {
            EXIT_PASS
        } else {
            EXIT_FAIL
        },
    )
}

fn scan(
    family: ScanFamily,
    lo: usize,
    hi: usize,
    all_pairs: bool,
    cap: usize,
    out: &mut dyn Write,
) -> Outcome {
    let family = match family {
        ScanFamily::Path => Family::Path,
        ScanFamily::Grid => Family::SquareGrid,
        ScanFamily::Hypercube => Family::Hypercube,
    };
    let params: Vec<usize> = (lo..=hi).collect();
    for &k in &params {
        let (complex, _) = family.instance(k)?;
        if complex.vertex_count() > cap {
            return Err(Failure::usage(format!(
                "parameter {k} exceeds the size cap {cap}"
            )));
        }
    }
    let rule = if all_pairs {
        PairRule::AllPairs
    } else {
        PairRule::Designated
    };
    writeln!(out, "k\tsup")?;
    for (k, sup) in kernel_growth_scan(family, &params, rule)? {
        writeln!(out, "{k}\t{sup}")?;
    }
    Ok(EXIT_PASS)
}

fn act(group: &GroupAction<'_>, op: Op, base: &str, out: &mut dyn Write) -> Outcome {
    match op {
        Op::Validate => {
            for (name, _) in group.generators() {
                writeln!(out, "gen\t{name}\tok")?;
            }
            writeln!(out, "order\t{}", group.elements().len())?;
            Ok(EXIT_PASS)
        }
        Op::Orbit => {
            for v in orbit(group, base)? {
                writeln!(out, "{v}")?;
            }
            Ok(EXIT_PASS)
        }
        Op::Kernel => {
            let k = invariant_kernel(group, base)?;
            writeln!(out, "\t{}", group.labels().join("\t"))?;
            for (label, row) in group.labels().iter().zip(k.matrix.rows()) {
                let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                writeln!(out, "{label}\t{}", cells.join("\t"))?;
            }
            writeln!(out, "left-invariant\t{}", k.left_invariant)?;
            let verdict = cnd_check(&k.matrix, 100, 0);
            write_verdict(out, &k.matrix, &verdict)?;
            let pass = k.left_invariant && verdict.status == KernelStatus::NoViolationFound;
            Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Op::FixedCube => {
            let fixed = fixed_cube(group)?;
            let names: Vec<&str> = fixed.cube.iter().map(|v| v.as_str()).collect();
            writeln!(out, "cube\t{}", names.join(" "))?;
            writeln!(out, "dimension\t{}", fixed.dimension)?;
            writeln!(out, "radius\t{}", fixed.radius)?;
            Ok(EXIT_PASS)
        }
    }
}

fn generate(shape: &Shape, cap: usize) -> Result<CubeComplex, Failure> {
    let complex = match shape {
        Shape::Path { n } => build_path(*n)?,
        Shape::Grid { dims } => build_grid_capped(dims, cap)?,
        Shape::Hypercube { n } => build_hypercube(*n)?,
        Shape::Tree { parents } => {
            let parsed = parents
                .iter()
                .map(|p| match p.as_str() {
                    "-" => Ok(None),
                    s => s
                        .parse()
                        .map(Some)
                        .map_err(|_| Failure::usage(format!("bad parent `{s}`"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            build_tree(&parsed)?
        }
        Shape::Product { left, right } => build_product_capped(&load(left, cap)?, &load(right, cap)?, cap)?,
    };
    if complex.vertex_count() > cap {
        return Err(Failure::usage(format!(
            "{} vertices exceeds the size cap {cap}",
            complex.vertex_count()
        )));
    }
    Ok(complex)
}
