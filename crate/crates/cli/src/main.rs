use std::fmt::Write as _;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use scluster::cycle::{
    all_cyclic_permutations, check_arc_bounds, cj_partition, cycle_bound_check, cycle_identity,
    minimal_fstar, CyclicPermutation, SweepMode, EXHAUSTIVE_CYCLE_LIMIT,
};
use scluster::familyfile::{member_lines, parse_family, serialize_family, write_family};
use scluster::inequality::{
    complement_identity, main_chain_check, removability_bound_check, starred_count_bound_check,
};
use scluster::search::{max_star, random_family, run_search, seeded_rng, SearchParams, Strategy};
use scluster::shade::lift_simplex;
use scluster::sweep::{exhaustive_cycle_bound_sweep, SweepOptions};
use scluster::{classify, find_simplex_cluster, ConfigClass, ElementSet, Error, KUniformFamily};

/// Detect, construct and verify simplex-clusters in k-uniform set families.
///
/// Exit status: 0 when the checked property holds or nothing was found,
/// 1 when a configuration was found or a check failed, 2 on usage or
/// input errors.
#[derive(Parser, Debug)]
#[command(name = "scluster", version)]
struct Cli {
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Look for a d-simplex-cluster in a family file ("-" or omitted reads stdin).
    Detect {
        #[arg(long)]
        d: usize,
        /// Print the member sets of the witness.
        #[arg(long)]
        witness: bool,
        file: Option<PathBuf>,
    },
    /// Run one of the counting verifiers.
    Verify(VerifyArgs),
    /// Write a generated family to stdout.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Search for a large simplex-cluster-free family.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Hillclimb)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20_000)]
        iters: u64,
        /// Also write the best family here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pad a d-simplex of (d+1)-sets to a d-simplex-cluster of k-sets.
    Lift {
        #[arg(long)]
        k: usize,
        /// Universe of the output (default: just large enough).
        #[arg(long)]
        n: Option<usize>,
        file: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    #[arg(long)]
    d: Option<usize>,
    /// Enumerate every family (cycle-bound) or every arrangement (cycles).
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Random arrangements to test (cycles).
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Checkpoint file for the exhaustive sweep; resumes when it exists.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Where to write a counterexample (default: FILE.counterexample).
    #[arg(long)]
    counterexample: Option<PathBuf>,
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Check {
    CycleBound,
    Removability,
    StarredCount,
    Chain,
    Cycles,
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// All k-sets containing the center.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        center: usize,
    },
    /// A uniformly random family of the given size.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Greedy,
    Hillclimb,
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Usage(String),
    Violated,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Detect { d, witness, file } => detect(d, witness, file.as_deref()),
        Command::Verify(args) => verify(&args),
        Command::Gen { kind } => gen(kind),
        Command::Search {
            n,
            k,
            d,
            strategy,
            seed,
            iters,
            out,
        } => search(n, k, d, strategy, seed, iters, out.as_deref()),
        Command::Lift { k, n, file } => lift(k, n, file.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violated) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(file: Option<&Path>) -> Result<KUniformFamily, Failure> {
    let text = match file {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
            .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            s
        }
    };
    Ok(parse_family(&text)?)
}

fn flags(c: ConfigClass) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    format!("simplex={} cluster={}", yn(c.is_simplex), yn(c.is_cluster))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn detect(d: usize, witness: bool, file: Option<&Path>) -> Outcome {
    let family = read_input(file)?;
    if d == 0 {
        return Err(Failure::Usage("--d must be at least 1".into()));
    }
    match find_simplex_cluster(&family, d) {
        None => {
            println!("NONE");
            Ok(())
        }
        Some(w) => {
            println!("FOUND d={d} {}", flags(w.classification));
            if witness {
                print!("{}", member_lines(&w.sets));
            }
            Err(Failure::Violated)
        }
    }
}

fn side_path(args: &VerifyArgs, default: impl FnOnce() -> PathBuf) -> PathBuf {
    if let Some(p) = &args.counterexample {
        return p.clone();
    }
    match &args.file {
        Some(f) if f != Path::new("-") => {
            let mut s = f.clone().into_os_string();
            s.push(".counterexample");
            PathBuf::from(s)
        }
        _ => default(),
    }
}

fn report_counterexample(
    args: &VerifyArgs,
    family: &KUniformFamily,
    default: impl FnOnce() -> PathBuf,
) -> Outcome {
    let path = side_path(args, default);
    if args.file.as_deref() == Some(path.as_path()) {
        return Err(Failure::Usage(
            "counterexample path would overwrite the input".into(),
        ));
    }
    write_family(&path, family)?;
    println!("counterexample\t{}", path.display());
    Err(Failure::Violated)
}

fn require_d(args: &VerifyArgs) -> Result<usize, Failure> {
    args.d
        .ok_or_else(|| Failure::Usage("--d is required for this check".into()))
}

fn verify(args: &VerifyArgs) -> Outcome {
    match args.check {
        Check::CycleBound if args.exhaustive => verify_sweep(args),
        Check::CycleBound => {
            let family = read_input(args.file.as_deref())?;
            let fstar = minimal_fstar(&family);
            let out = cycle_bound_check(&family, &fstar)?;
            println!(
                "# cycle-bound n={} k={} |F|={} |F*|={}",
                family.n(),
                family.k(),
                family.len(),
                fstar.len()
            );
            println!("lhs\t{}\nrhs\t{}", out.lhs_scaled, out.rhs_scaled);
            println!("equality\t{}", yes_no(out.equality));
            if let Some(class) = out.equality_class {
                println!("equality-class\t{class:?}");
            }
            println!("holds\t{}", yes_no(out.holds && out.dichotomy_holds));
            if out.holds && out.dichotomy_holds {
                Ok(())
            } else {
                report_counterexample(args, &family, || "cycle-bound.counterexample".into())
            }
        }
        Check::Removability => {
            let family = read_input(args.file.as_deref())?;
            let out = removability_bound_check(&family)?;
            let id = complement_identity(&family)?;
            println!(
                "# removability n={} k={} |F|={}",
                family.n(),
                family.k(),
                family.len()
            );
            println!(
                "lhs\t{}/{}\nrhs\t{}",
                out.lhs_numerator, out.lhs_denominator, out.rhs
            );
            println!("equality\t{}", yes_no(out.equality));
            println!("complement-identity\t{}", yes_no(id.holds()));
            match out.holds {
                None => println!("holds\tnot applicable (|F| below the bound)"),
                Some(h) => println!("holds\t{}", yes_no(h)),
            }
            if out.holds != Some(false) && id.holds() {
                Ok(())
            } else {
                report_counterexample(args, &family, || "removability.counterexample".into())
            }
        }
        Check::StarredCount => {
            let d = require_d(args)?;
            let family = read_input(args.file.as_deref())?;
            let out = starred_count_bound_check(&family, d)?;
            println!(
                "# starred-count n={} k={} d={d} |F|={}",
                family.n(),
                family.k(),
                family.len()
            );
            println!("d*lhs\t{}\nd*rhs\t{}", out.lhs * d, out.rhs_times_d);
            println!("equality\t{}", yes_no(out.equality));
            println!("holds\t{}", yes_no(out.holds));
            if out.holds {
                Ok(())
            } else {
                report_counterexample(args, &family, || "starred-count.counterexample".into())
            }
        }
        Check::Chain => {
            let d = require_d(args)?;
            let family = read_input(args.file.as_deref())?;
            let report = main_chain_check(&family, d)?;
            print!("{report}");
            if report.verdict {
                Ok(())
            } else {
                report_counterexample(args, &family, || "chain.counterexample".into())
            }
        }
        Check::Cycles => verify_cycles(args),
    }
}

fn verify_sweep(args: &VerifyArgs) -> Outcome {
    let (Some(n), Some(k)) = (args.n, args.k) else {
        return Err(Failure::Usage("--exhaustive needs --n and --k".into()));
    };
    let options = SweepOptions {
        check_arc_bounds: true,
        checkpoint: args.checkpoint.clone(),
        ..Default::default()
    };
    let report = exhaustive_cycle_bound_sweep(n, k, &options)?;
    println!("# cycle-bound sweep n={n} k={k}");
    if let Some(from) = report.resumed_from {
        println!("resumed-from\t{from}");
    }
    println!("families\t{}", report.families);
    println!("failures\t{}", report.failures);
    println!("arc-pairs\t{}", report.arc_pairs);
    println!("arc-violations\t{}", report.arc_violations);
    if 2 * k < n {
        println!("equality-cases\t{}", report.equality_families.len());
    }
    if let Some(dich) = report.dichotomy_holds {
        println!("dichotomy\t{}", yes_no(dich));
    }
    println!("holds\t{}", yes_no(report.passed()));
    if report.passed() {
        return Ok(());
    }
    let offender = report.first_failure.clone().or_else(|| {
        let full = KUniformFamily::full(n, k).ok()?;
        report
            .equality_families
            .iter()
            .find(|f| **f != full && !f.is_maximum_star())
            .cloned()
    });
    match offender {
        Some(f) => report_counterexample(args, &f, || {
            format!("cycle-bound-n{n}-k{k}.counterexample").into()
        }),
        None => Err(Failure::Violated),
    }
}

fn verify_cycles(args: &VerifyArgs) -> Outcome {
    let family = read_input(args.file.as_deref())?;
    let (n, k) = (family.n(), family.k());
    let mut out = String::new();
    let _ = writeln!(out, "# cycles n={n} k={k} |G|={}", family.len());
    let mut ok = true;
    let bounds_apply = n >= 2 * k;
    let fstar = minimal_fstar(&family);
    if args.exhaustive || args.samples.is_none() {
        if n > EXHAUSTIVE_CYCLE_LIMIT {
            return Err(Failure::Usage(format!(
                "exhaustive enumeration is limited to n <= {EXHAUSTIVE_CYCLE_LIMIT}; use --samples"
            )));
        }
        let id = cycle_identity(&family)?;
        let _ = writeln!(out, "permutations\t{}", id.permutations);
        let _ = writeln!(
            out,
            "arc-total\t{}\nexpected\t{}",
            id.arc_total, id.expected
        );
        let _ = writeln!(out, "identity\t{}", yes_no(id.holds()));
        ok &= id.holds();
        if bounds_apply {
            let violations = all_cyclic_permutations(n)
                .filter(|s| {
                    check_arc_bounds(s, &family, &fstar)
                        .map_or(true, |c| !(c.plain_bound && c.starred_bound))
                })
                .count();
            let part = cj_partition(&family, &fstar, SweepMode::Exhaustive)?;
            let counts: Vec<String> = part.counts.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "c_j\t{}", counts.join(" "));
            let _ = writeln!(out, "arc-violations\t{violations}");
            ok &= violations == 0;
        }
    } else {
        let samples = args.samples.unwrap_or(0);
        if !bounds_apply {
            return Err(Failure::Usage("sampled cycle checks need n >= 2k".into()));
        }
        let mut rng = seeded_rng(args.seed);
        let mut violations = 0u64;
        for _ in 0..samples {
            let sigma = CyclicPermutation::random(n, &mut rng);
            let c = check_arc_bounds(&sigma, &family, &fstar)?;
            if !(c.plain_bound && c.starred_bound) {
                violations += 1;
            }
        }
        let part = cj_partition(
            &family,
            &fstar,
            SweepMode::Sampled {
                samples,
                seed: args.seed,
            },
        )?;
        let counts: Vec<String> = part.counts.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "samples\t{samples}\nseed\t{}", args.seed);
        let _ = writeln!(out, "c_j\t{}", counts.join(" "));
        let _ = writeln!(out, "arc-violations\t{violations}");
        ok &= violations == 0;
    }
    let _ = writeln!(out, "holds\t{}", yes_no(ok));
    print!("{out}");
    if ok {
        Ok(())
    } else {
        report_counterexample(args, &family, || "cycles.counterexample".into())
    }
}

fn gen(kind: GenKind) -> Outcome {
    let family = match kind {
        GenKind::Star { n, k, center } => max_star(n, k, center)?,
        GenKind::Random { n, k, size, seed } => random_family(n, k, size, seed)?,
    };
    print!("{}", serialize_family(&family));
    Ok(())
}

fn search(
    n: usize,
    k: usize,
    d: usize,
    strategy: StrategyArg,
    seed: u64,
    iters: u64,
    out: Option<&Path>,
) -> Outcome {
    if d == 0 || d + 1 > k || 2 * k > n {
        return Err(Failure::Usage(format!(
            "out of scope: need 1 <= d, d + 1 <= k and 2k <= n, got n = {n}, k = {k}, d = {d}"
        )));
    }
    let strategy = match strategy {
        StrategyArg::Greedy => Strategy::Greedy,
        StrategyArg::Hillclimb => Strategy::HillClimb,
    };
    let params = SearchParams {
        n,
        k,
        d,
        strategy,
        seed,
        iterations: iters,
    };
    let outcome = run_search(&params)?;
    if !params.in_bound_scope() {
        println!("# outside the range of the bound (needs d >= 3): bound not asserted");
    }
    println!(
        "best={} bound={} star={}",
        outcome.best_size,
        outcome.bound,
        yes_no(outcome.is_star)
    );
    if let Some(path) = out {
        write_family(path, &outcome.family)?;
    }
    if let Some(msg) = outcome.violation {
        println!("violation\t{msg}");
        let path = PathBuf::from(format!("search-n{n}-k{k}-d{d}-seed{seed}.counterexample"));
        write_family(&path, &outcome.family)?;
        println!("counterexample\t{}", path.display());
        return Err(Failure::Violated);
    }
    Ok(())
}

fn lift(k: usize, n: Option<usize>, file: Option<&Path>) -> Outcome {
    let input = read_input(file)?;
    let d = input.k() - 1;
    let sets: Vec<ElementSet> = input.members().to_vec();
    if d == 0 || sets.len() != d + 1 || !classify(&sets, d)?.is_simplex {
        println!(
            "not a simplex: expected {} sets of size {} forming a {d}-simplex",
            input.k(),
            input.k()
        );
        return Err(Failure::Violated);
    }
    if k < d + 1 {
        return Err(Failure::Usage(format!("--k must be at least {}", d + 1)));
    }
    let used = sets.iter().fold(0u64, |acc, s| acc | s.mask());
    let highest = 64 - used.leading_zeros() as usize;
    let needed = highest.max(used.count_ones() as usize + 2 * (k - d - 1));
    let n = n.unwrap_or(needed.max(input.n()));
    let witness = lift_simplex(&sets, k, n)?;
    let lifted = KUniformFamily::new(n, k, witness.sets)?;
    print!("{}", serialize_family(&lifted));
    Ok(())
}
