use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use borel_core::chops::{casimir_levels, check_hessenberg, is_generic, n_invariance_check, semi_invariance_check, HessenbergPoint};
use borel_core::dpop::dp_weight_check;
use borel_core::heisenberg::{plancherel_isometry_demo, standard_test_functions, TestFunction};
use borel_core::liestruct::{half, Decomposition};
use borel_core::orbits::{build_cross_section, casimir_vector, chart_unpack, kappa_from_casimirs, pukanszky_check};
use borel_core::poisson::{casimir_suite, involutive_family, involutivity_suite, sample_toda_initial, toda_integrate};
use borel_core::random::{self, trial_rng};
use borel_core::{Matrix, RatMatrix};

/// Verification suites and demos for the Borel subgroup of GL(n) and its
/// lower Hessenberg coadjoint orbits.
///
/// Exit codes: 0 when every check passes, 1 when a mathematical check
/// fails, 2 on usage or input errors.
#[derive(Debug, Parser)]
#[command(name = "borel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dump the root, layer and subspace data for size n.
    Describe {
        #[arg(long)]
        n: usize,
    },
    /// Run an exact verification suite and print its JSON report.
    Verify(VerifyArgs),
    /// Integrate the Toda flow with RK4 and write the invariants as CSV.
    Toda(TodaArgs),
    /// Recover κ from a Hessenberg matrix file and print f(κ).
    CrossSection {
        /// JSON matrix file {"rows","cols","entries"} with rational entries.
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exponents, degree and β-weight of the Dixmier–Pukanszky symbol.
    DpSymbol {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numerical Plancherel isometry on the n = 3 Heisenberg layer.
    Heisenberg(HeisenbergArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Semiinv,
    Involutivity,
    Casimir,
    Pukanszky,
    Dp,
    Ninv,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    suite: Suite,
    #[arg(long)]
    n: usize,
    /// Random trials per check [default: 20; 10 for involutivity and casimir; 5 for pukanszky]
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Restrict semiinv to one chop level.
    #[arg(long)]
    r: Option<usize>,
    /// Restrict semiinv to one coefficient index.
    #[arg(long)]
    m: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TodaArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Final time.
    #[arg(long, default_value_t = 10.0)]
    t: f64,
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    dt: f64,
    /// Draw X0 at random from the seed.
    #[arg(long, conflicts_with = "x0")]
    random: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON matrix file with float entries.
    #[arg(long)]
    x0: Option<PathBuf>,
    /// CSV destination; the summary then goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Function {
    Isotropic,
    AnisotropicShifted,
    TwoBump,
    Zero,
    /// Run the three Gaussian families.
    All,
}

#[derive(Debug, Args)]
struct HeisenbergArgs {
    /// Grid points per axis, a power of two ≥ 64.
    #[arg(long, default_value_t = 256)]
    grid: usize,
    /// Half-width of the box [−L, L].
    #[arg(long = "L", default_value_t = 10.0)]
    l: f64,
    #[arg(long, default_value_t = 8.0)]
    lmax: f64,
    #[arg(long, default_value_t = 160)]
    nlambda: usize,
    #[arg(long, value_enum, default_value_t = Function::Isotropic)]
    function: Function,
    /// Accepted |ratio − 1|.
    #[arg(long, default_value_t = 0.01)]
    tolerance: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// An input that cannot be processed, as opposed to a failed check.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(usage(format!("--n must be at least 2, got {n}")));
    }
    Ok(())
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => quiet_pipe(writeln!(io::stdout().lock(), "{text}"))?,
    }
    Ok(())
}

/// A closed downstream pipe is not an error.
fn quiet_pipe(r: io::Result<()>) -> io::Result<()> {
    match r {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("reading {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("parsing {}: {e}", path.display())))
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let n = args.n;
    check_n(n)?;
    let seed = args.seed;
    let (passed, report): (bool, Value) = match args.suite {
        Suite::Semiinv => {
            let trials = args.trials.unwrap_or(20);
            let levels: Vec<usize> = match args.r {
                Some(r) if r > half(n) => return Err(usage(format!("--r must be at most {}", half(n)))),
                Some(r) => vec![r],
                None => (0..=half(n)).collect(),
            };
            let mut reports = Vec::new();
            for r in levels {
                let ms: Vec<usize> = match args.m {
                    Some(m) if m > n - 2 * r => return Err(usage(format!("--m must be at most {} at r = {r}", n - 2 * r))),
                    Some(m) => vec![m],
                    None => (0..=n - 2 * r).collect(),
                };
                for m in ms {
                    reports.push(semi_invariance_check(n, r, m, trials, seed)?);
                }
            }
            let ok = reports.iter().all(|r| r.passed());
            (ok, json!({"suite": "semiinv", "n": n, "seed": seed, "passed": ok, "checks": reports}))
        }
        Suite::Involutivity => {
            let rep = involutivity_suite(n, args.trials.unwrap_or(10), seed)?;
            (rep.passed(), json!({"suite": "involutivity", "seed": seed, "passed": rep.passed(), "report": rep}))
        }
        Suite::Casimir => {
            let rep = casimir_suite(n, args.trials.unwrap_or(10), seed)?;
            (rep.passed(), json!({"suite": "casimir", "seed": seed, "passed": rep.passed(), "report": rep}))
        }
        Suite::Ninv => {
            let rep = n_invariance_check(n, args.trials.unwrap_or(20), seed)?;
            (rep.passed(), json!({"suite": "ninv", "seed": seed, "passed": rep.passed(), "report": rep}))
        }
        Suite::Pukanszky => {
            let trials = args.trials.unwrap_or(5);
            let reports = random::par_trials(trials, seed, |_, rng| {
                let kappa: Vec<_> = (0..n - half(n)).map(|_| random::rational(rng)).collect();
                pukanszky_check(n, &kappa)
            })
            .into_iter()
            .collect::<borel_core::Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.passed());
            (ok, json!({"suite": "pukanszky", "n": n, "seed": seed, "passed": ok, "reports": reports}))
        }
        Suite::Dp => {
            let rep = dp_weight_check(n)?;
            (rep.passed(), json!({"suite": "dp", "passed": rep.passed(), "report": rep}))
        }
    };
    emit(&report, args.out.as_deref())?;
    Ok(passed)
}

fn toda(args: &TodaArgs) -> Result<bool> {
    if !(args.dt > 0.0 && args.dt.is_finite()) {
        return Err(usage(format!("--dt must be positive, got {}", args.dt)));
    }
    if !(args.t > 0.0 && args.t.is_finite()) {
        return Err(usage(format!("--t must be positive, got {}", args.t)));
    }
    let x0: Matrix<f64> = match (&args.x0, args.random) {
        (Some(path), _) => read_json(path)?,
        (None, true) => {
            let n = args.n.ok_or_else(|| usage("--random needs --n"))?;
            check_n(n)?;
            sample_toda_initial(n, &mut trial_rng(args.seed, 0))
        }
        (None, false) => return Err(usage("give either --x0 FILE or --random")),
    };
    if let Some(n) = args.n {
        if n != x0.rows() {
            return Err(usage(format!("--n {n} does not match the {}×{} initial matrix", x0.rows(), x0.cols())));
        }
    }
    let n = x0.rows();
    check_n(n)?;
    check_hessenberg(&x0).map_err(|e| usage(e.to_string()))?;
    if !is_generic(&x0) {
        bail!("initial matrix is not generic");
    }
    let series = toda_integrate(&x0, args.t, args.dt, &involutive_family(n))?;
    let per: serde_json::Map<String, Value> = series
        .names
        .iter()
        .cloned()
        .zip(series.max_drift_per_observable().into_iter().map(Value::from))
        .collect();
    let summary = json!({
        "n": n,
        "t": args.t,
        "dt": args.dt,
        "steps": series.t.len() - 1,
        "max_drift": series.max_drift(),
        "max_drift_per_observable": per,
    });
    match &args.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            series.write_csv(&mut w)?;
            w.flush()?;
            println!("{}", serde_json::to_string(&summary)?);
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            quiet_pipe(series.write_csv(&mut w).and_then(|_| w.flush()))?;
            eprintln!("{}", serde_json::to_string(&summary)?);
        }
    }
    Ok(series.max_drift().is_finite())
}

fn cross_section(input: &Path, out: Option<&Path>) -> Result<bool> {
    let m: RatMatrix = read_json(input)?;
    let x = HessenbergPoint::new(m).map_err(|e| usage(format!("{}: {e}", input.display())))?;
    check_n(x.n())?;
    let kappa = kappa_from_casimirs(&x)?;
    let f = build_cross_section(x.n(), &kappa)?;
    let matches = casimir_vector(&f.f)? == casimir_vector(x.matrix())?;
    let levels: Vec<usize> = casimir_levels(x.n()).collect();
    emit(
        &json!({
            "n": x.n(),
            "kappa": kappa,
            "f": f.f,
            "casimir_levels": levels,
            "casimirs_match": matches,
            "chart": chart_unpack(&x),
        }),
        out,
    )?;
    Ok(matches)
}

fn heisenberg(args: &HeisenbergArgs) -> Result<bool> {
    if args.grid < 64 || !args.grid.is_power_of_two() {
        return Err(usage(format!("--grid must be a power of two ≥ 64, got {}", args.grid)));
    }
    if args.l.is_nan() || args.l <= 0.0 || args.lmax.is_nan() || args.lmax <= 0.0 || args.nlambda < 2 {
        return Err(usage("--L and --lmax must be positive and --nlambda at least 2"));
    }
    let std = standard_test_functions();
    let functions: Vec<TestFunction> = match args.function {
        Function::Isotropic => vec![std[0].clone()],
        Function::AnisotropicShifted => vec![std[1].clone()],
        Function::TwoBump => vec![std[2].clone()],
        Function::All => std,
        Function::Zero => vec![TestFunction {
            name: "zero".into(),
            terms: vec![],
        }],
    };
    let mut reports = Vec::new();
    let mut ok = true;
    for f in &functions {
        let rep = plancherel_isometry_demo(f, args.grid, args.l, args.lmax, args.nlambda)?;
        let pass = if f.terms.is_empty() {
            rep.lhs == 0.0 && rep.rhs == 0.0
        } else {
            (rep.ratio - 1.0).abs() <= args.tolerance
        };
        ok &= pass;
        let mut v = serde_json::to_value(&rep)?;
        v["pass"] = Value::from(pass);
        reports.push(v);
    }
    if reports.len() == 1 {
        emit(&reports[0], args.out.as_deref())?;
    } else {
        emit(&json!({"passed": ok, "reports": reports}), args.out.as_deref())?;
    }
    Ok(ok)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Describe { n } => {
            let d = Decomposition::new(*n).map_err(|e| usage(e.to_string()))?;
            emit(&d, None)?;
            Ok(true)
        }
        Command::Verify(args) => verify(args),
        Command::Toda(args) => toda(args),
        Command::CrossSection { input, out } => cross_section(input, out.as_deref()),
        Command::DpSymbol { n, out } => {
            check_n(*n)?;
            let rep = dp_weight_check(*n)?;
            emit(&rep, out.as_deref())?;
            Ok(rep.passed())
        }
        Command::Heisenberg(args) => heisenberg(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
