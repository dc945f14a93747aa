mod manifest;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use covercode::bounds::{self, LambdaChoice};
use covercode::codes::{self, ParityCheck};
use covercode::construct::{self, ConstructionConfig, Strategy};
use covercode::lift::{self, LiftSpec};
use covercode::Error;

use manifest::RunManifest;

/// Covering codes and saturating sets in finite projective spaces.
#[derive(Parser, Debug)]
#[command(name = "covercode", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bound constants, the constants table and bound curves.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Run Construction A for an (R-1)-saturating set in PG(R,q).
    Construct(ConstructArgs),
    /// Run the randomized greedy baseline.
    Baseline(BaselineArgs),
    /// Check a parity-check matrix.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Lift a starting code to codimension r0 + Rm.
    Lift(LiftArgs),
    /// Lift for m = 1..m-max and check each member.
    Family(FamilyArgs),
    /// Direct sum of two parity-check matrices.
    Directsum(DirectSumArgs),
    /// Covering density of an [n, n-r]_q R code.
    Density(DensityArgs),
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// D, λ_min, D_min, and the bound functions at q when given.
    Constants {
        #[arg(long = "R")]
        r: u32,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
    },
    /// The constants table for the standard rows.
    Table1 {
        /// Only rows with this R.
        #[arg(long = "R")]
        r: Option<u32>,
    },
    /// CSV of the t = 1 bound and its normalized value.
    Curve {
        #[arg(long = "R")]
        r: u32,
        #[arg(long)]
        lambda: f64,
        #[arg(long = "q-from")]
        q_from: f64,
        #[arg(long = "q-to")]
        q_to: f64,
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    q: u64,
    #[arg(long = "R")]
    r: usize,
    /// Defaults to λ_min.
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// exact, sampled:K or random.
    #[arg(long, default_value = "exact")]
    strategy: String,
    /// Check the result with the saturation oracle.
    #[arg(long)]
    verify: bool,
    /// Raise a start size L <= R to R + 1.
    #[arg(long)]
    clamp_start: bool,
    #[arg(long)]
    max_steps: Option<u64>,
    /// Writes <out> (pcm), <out>.report and <out>.manifest.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BaselineArgs {
    #[arg(long)]
    q: u64,
    #[arg(long = "R")]
    r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Candidates per step; 0 means all points.
    #[arg(long, default_value_t = 0)]
    sample: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Saturation level of the columns as a point set; fails above --rho.
    Sat {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        rho: usize,
    },
    /// Covering radius by syndrome search; fails above --max when given.
    Radius {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        max: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct LiftArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    m: u32,
    #[arg(long = "R")]
    r: usize,
    /// Append R q^m repeated columns.
    #[arg(long)]
    pad: bool,
    /// Check the lifted radius with the syndrome oracle.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "m-max")]
    m_max: u32,
    #[arg(long = "R")]
    r: usize,
}

#[derive(Args, Debug)]
struct DirectSumArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    r: u64,
    #[arg(long)]
    q: u64,
    #[arg(long = "R")]
    radius: u64,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_pcm(path: &Path, manifest: &mut RunManifest) -> Result<ParityCheck, Failure> {
    let text = read(path)?;
    manifest.input(path, text.as_bytes());
    ParityCheck::from_pcm(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn sidecar(path: &Path, ext: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// Writes `pcm` to `out` with its manifest, or prints it when `out` is None.
fn emit_pcm(pcm: &str, out: Option<&Path>, manifest: &mut RunManifest, started: Instant) -> Outcome {
    match out {
        Some(path) => {
            fs::write(path, pcm)?;
            manifest.output(path, pcm.as_bytes());
            manifest.wall_time = started.elapsed();
            fs::write(sidecar(path, "manifest"), manifest.render())?;
        }
        None => print!("{pcm}"),
    }
    Ok(())
}

fn bounds_cmd(cmd: BoundsCmd) -> Outcome {
    match cmd {
        BoundsCmd::Constants { r, lambda, q } => {
            if r < 3 {
                return Err(Failure::Usage(format!("R must be at least 3, got {r}")));
            }
            let lambda = lambda.unwrap_or_else(|| bounds::lambda_min(r));
            let c = bounds::constants(lambda, r);
            println!("R = {r}");
            println!("lambda = {lambda}");
            println!("D = {:.6}", c.d);
            println!("lambda_min = {:.6}", c.lambda_min);
            println!("D_min = {:.6}", c.d_min);
            let qv = bounds::q_of_lambda(lambda, r);
            println!("Q = {}", qv.value);
            match bounds::c_of_lambda(lambda, r) {
                Ok(v) => println!("C = {v:.6}"),
                Err(_) => println!("C = n/a"),
            }
            if let Some(q) = q {
                let v = bounds::bound_functions(&bounds::BoundParams::new(lambda, r, q))?;
                let opt = |x: Option<f64>| x.map_or("n/a".to_string(), |v| format!("{v:.6}"));
                println!("q = {q}");
                println!("L = {}", v.l);
                println!("beta = {:.6}", v.beta);
                println!("Upsilon = {:.6}", v.upsilon);
                println!("Phi = {}", opt(v.phi));
                println!("Phi* = {}", opt(v.phi_star));
                println!("Omega = {}", opt(v.omega));
                println!("Omega* = {}", opt(v.omega_star));
                println!("psi = {:.6}", v.psi);
            }
            Ok(())
        }
        BoundsCmd::Table1 { r } => {
            let rows: Vec<(u32, Vec<LambdaChoice>)> =
                bounds::table1_default_rows().into_iter().filter(|(rr, _)| r.map_or(true, |r| *rr == r)).collect();
            if rows.is_empty() {
                return Err(Failure::Usage("no table rows for that R; rows exist for R = 3..7".into()));
            }
            print!("{}", bounds::render_table1(&bounds::table1(&rows, &bounds::TABLE1_Q0)));
            Ok(())
        }
        BoundsCmd::Curve { r, lambda, q_from, q_to, points } => {
            let rows = bounds::curve(lambda, r, q_from, q_to, points)?;
            print!("{}", bounds::render_curve_csv(&rows));
            Ok(())
        }
    }
}

fn construct_cmd(a: ConstructArgs) -> Outcome {
    let started = Instant::now();
    let strategy: Strategy = a.strategy.parse()?;
    let mut cfg = ConstructionConfig::new(a.q, a.r).seed(a.seed).strategy(strategy).verify(a.verify).clamp_start(a.clamp_start);
    if let Some(l) = a.lambda {
        cfg = cfg.lambda(l);
    }
    if let Some(s) = a.max_steps {
        cfg = cfg.max_steps(s);
    }
    let (set, report) = construct::construction_a(&cfg)?;
    let text = report.render();
    print!("{text}");
    let pcm = set.to_parity_check()?.to_pcm();
    let mut m = RunManifest::new("construct");
    m.param("q", a.q).param("R", a.r).param("lambda", cfg.lambda).param("strategy", strategy).param("verify", a.verify);
    m.param("clamp_start", a.clamp_start).param("max_steps", report.max_steps);
    m.seed = Some(a.seed);
    if let Some(out) = &a.out {
        let rpath = sidecar(out, "report");
        fs::write(&rpath, &text)?;
        m.output(&rpath, text.as_bytes());
        emit_pcm(&pcm, Some(out), &mut m, started)?;
    }
    if a.verify && !report.verified {
        return Err(Failure::Verification(format!("saturation level {:?} exceeds R - 1 = {}", report.saturation_level, a.r - 1)));
    }
    Ok(())
}

fn baseline_cmd(a: BaselineArgs) -> Outcome {
    let started = Instant::now();
    let (set, report) = construct::greedy_baseline(a.q, a.r, a.seed, a.sample)?;
    print!("{}", report.render());
    let mut m = RunManifest::new("baseline");
    m.param("q", a.q).param("R", a.r).param("sample", a.sample);
    m.seed = Some(a.seed);
    if let Some(out) = &a.out {
        emit_pcm(&set.to_parity_check()?.to_pcm(), Some(out), &mut m, started)?;
    }
    if !report.verified {
        return Err(Failure::Verification("greedy output is not (R-1)-saturating".into()));
    }
    Ok(())
}

fn verify_cmd(cmd: VerifyCmd) -> Outcome {
    let mut m = RunManifest::new("verify");
    match cmd {
        VerifyCmd::Sat { file, rho } => {
            let h = read_pcm(&file, &mut m)?;
            let (space, points) = codes::parity_check_to_set(&h)?;
            match codes::saturation_level(&points, &space) {
                Some(level) => {
                    println!("saturation_level = {level}");
                    if level > rho {
                        return Err(Failure::Verification(format!("saturation level {level} > {rho}")));
                    }
                    Ok(())
                }
                None => Err(Failure::Verification("points span a proper subspace; no saturation level".into())),
            }
        }
        VerifyCmd::Radius { file, max } => {
            let h = read_pcm(&file, &mut m)?;
            let rep = codes::covering_radius(&h)?;
            println!("{}", rep.radius);
            match max {
                Some(mx) if rep.radius > mx => Err(Failure::Verification(format!("covering radius {} > {mx}", rep.radius))),
                _ => Ok(()),
            }
        }
    }
}

fn lift_cmd(a: LiftArgs) -> Outcome {
    let started = Instant::now();
    let mut m = RunManifest::new("lift");
    let h0 = read_pcm(&a.input, &mut m)?;
    let spec = LiftSpec::new(h0, a.m, a.r, a.pad)?;
    let h = lift::lift_qm(&spec)?;
    m.param("m", a.m).param("R", a.r).param("pad", a.pad);
    for line in spec.manifest().lines().skip(1) {
        if let Some((k, v)) = line.split_once(" = ") {
            m.param(k, v);
        }
    }
    let mut verdict = Ok(());
    if a.verify {
        let rad = codes::covering_radius(&h)?.radius;
        eprintln!("radius = {rad}");
        if rad > a.r {
            verdict = Err(Failure::Verification(format!("lifted radius {rad} > {}", a.r)));
        }
    }
    emit_pcm(&h.to_pcm(), a.out.as_deref(), &mut m, started)?;
    verdict
}

fn family_cmd(a: FamilyArgs) -> Outcome {
    let mut m = RunManifest::new("family");
    let h0 = read_pcm(&a.input, &mut m)?;
    if a.m_max == 0 {
        return Err(Failure::Usage("--m-max must be at least 1".into()));
    }
    let fam = lift::verify_family(&h0, 1..=a.m_max, a.r)?;
    print!("{}", lift::render_family(&fam));
    if fam.iter().any(|f| !f.ok) {
        return Err(Failure::Verification("a family member failed its radius or length check".into()));
    }
    Ok(())
}

fn directsum_cmd(a: DirectSumArgs) -> Outcome {
    let started = Instant::now();
    let mut m = RunManifest::new("directsum");
    let x = read_pcm(&a.a, &mut m)?;
    let y = read_pcm(&a.b, &mut m)?;
    let h = codes::direct_sum(&x, &y)?;
    emit_pcm(&h.to_pcm(), a.out.as_deref(), &mut m, started)
}

fn density_cmd(a: DensityArgs) -> Outcome {
    if a.r > a.n || a.q < 2 {
        return Err(Failure::Usage("need r <= n and q >= 2".into()));
    }
    let mut s = String::new();
    writeln!(s, "{:.6}", codes::covering_density(a.n, a.r, a.q, a.radius)).unwrap();
    print!("{s}");
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("COVERCODE_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| Failure::Usage(format!("COVERCODE_THREADS must be a number, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_threads().and_then(|_| match cli.command {
        Command::Bounds(c) => bounds_cmd(c),
        Command::Construct(a) => construct_cmd(a),
        Command::Baseline(a) => baseline_cmd(a),
        Command::Verify(c) => verify_cmd(c),
        Command::Lift(a) => lift_cmd(a),
        Command::Family(a) => family_cmd(a),
        Command::Directsum(a) => directsum_cmd(a),
        Command::Density(a) => density_cmd(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}
