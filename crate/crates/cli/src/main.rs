use std::cell::Cell;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use qqpft_core::analysis::VerificationReport;
use qqpft_core::battery::{run_battery, run_on_inputs, standard_window, Battery, BatteryConfig};
use qqpft_core::grid::{FreqGridSpec, GridSpec, QSignal2D, TfField, TfKind};
use qqpft_core::io::{self as qio, FileKind};
use qqpft_core::signals::Generator;
use qqpft_core::transforms::{canonical_freq, qqpft_direct, qqpft_fast, QQPFTResult};
use qqpft_core::{lp_norm_4d, Method, ParamPair, Quaternion, TfPlan};

/// Size above which full 4D outputs need `--force`.
const FORCE_THRESHOLD: u64 = 2 << 30;

#[derive(Parser)]
#[command(name = "qqpft", version, about = "Quaternion quadratic-phase Fourier transforms and inequality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a test signal.
    Gen(GenArgs),
    /// Two-sided QQPFT of a signal.
    Qqpft(TransformArgs),
    /// Short-time QQPFT.
    Stft(TfArgs),
    /// Quadratic-phase ambiguity function.
    Af(TfArgs),
    /// Quadratic-phase Wigner-Ville distribution.
    Wvd(TfArgs),
    /// Run a checker battery and write the report.
    Verify(VerifyArgs),
    /// Summarize a signal, transform or field file.
    Info {
        path: PathBuf,
    },
}

#[derive(Args)]
struct GenArgs {
    /// gaussian, chirp, impulse, random-smooth or quaternion-random.
    generator: String,
    #[arg(long, default_value_t = 128)]
    n: usize,
    #[arg(long, default_value_t = 20.0)]
    extent: f64,
    #[arg(long, default_value_t = 1.0)]
    width: f64,
    /// Chirp rate of the chirp generator.
    #[arg(long, default_value_t = 0.5)]
    rate: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; a `.csv` extension writes CSV instead of QSIG1.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TransformArgs {
    input: PathBuf,
    /// "A,B,C,D,E;A,B,C,D,E".
    #[arg(long, default_value = "0,1,0,0,0;0,1,0,0,0")]
    params: String,
    /// Use quadrature instead of the FFT path.
    #[arg(long)]
    direct: bool,
    /// Output path; a `.csv` extension writes CSV instead of QQPF1.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TfArgs {
    input: PathBuf,
    /// Window signal; defaults to the signal itself.
    #[arg(long)]
    window: Option<PathBuf>,
    #[arg(long, default_value = "0,1,0,0,0;0,1,0,0,0")]
    params: String,
    #[arg(long)]
    direct: bool,
    /// Export only the slice at lattice point "x1,x2" as CSV.
    #[arg(long)]
    slice: Option<String>,
    /// Allow full outputs above 2 GiB.
    #[arg(long)]
    force: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Input signals; without them the seeded random suite runs.
    signals: Vec<PathBuf>,
    #[arg(long, default_value = "all")]
    battery: String,
    #[arg(long)]
    window: Option<PathBuf>,
    #[arg(long, default_value = "0,1,0,0,0;0,1,0,0,0")]
    params: String,
    #[arg(long, default_value_t = 32)]
    n: usize,
    #[arg(long, default_value_t = 10.0)]
    extent: f64,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Single Rényi order instead of {0.6, 0.8}.
    #[arg(long)]
    alpha: Option<f64>,
    /// Single Lieb and concentration exponent.
    #[arg(long)]
    q: Option<f64>,
    /// Single concentration level instead of {0, 0.2, 0.5}.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Number of random signals in the suite.
    #[arg(long, default_value_t = 20)]
    signals_count: usize,
    /// Number of random parameter pairs in the suite.
    #[arg(long, default_value_t = 5)]
    pairs: usize,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("cannot create {}", path.display()))?))
}

fn load_signal(path: &Path) -> Result<QSignal2D> {
    qio::load_signal(path).with_context(|| format!("cannot read signal {}", path.display()))
}

fn parse_params(s: &str) -> Result<ParamPair> {
    s.parse::<ParamPair>().map_err(|e| anyhow!("--params: {e}"))
}

fn cmd_gen(a: GenArgs) -> Result<()> {
    let generator: Generator = a.generator.parse()?;
    let spec = GridSpec::new(a.n, a.extent)?;
    let f = generator.generate(spec, a.width, a.rate, a.seed)?;
    if is_csv(&a.out) {
        let mut w = create(&a.out)?;
        qio::write_signal_csv(&mut w, &f)?;
        w.flush()?;
    } else {
        qio::save_signal(&a.out, &f)?;
    }
    println!("{} n={} extent={} l2={:.12e}", generator.name(), a.n, a.extent, f.l2_norm());
    Ok(())
}

fn cmd_qqpft(a: TransformArgs) -> Result<()> {
    let f = load_signal(&a.input)?;
    let params = parse_params(&a.params)?;
    let q = if a.direct {
        qqpft_direct(&f, &params, &canonical_freq(f.spec(), &params))
    } else {
        qqpft_fast(&f, &params)?
    };
    if is_csv(&a.out) {
        let mut w = create(&a.out)?;
        qio::write_slice_csv(&mut w, q.freq(), q.values())?;
        w.flush()?;
    } else {
        qio::save_transform(&a.out, &q)?;
    }
    let ratio = params.b_product_abs() * q.l2_norm().powi(2) / f.l2_norm().powi(2);
    println!("qqpft n={} params={} parseval_ratio={:.12e}", f.n(), params, ratio);
    Ok(())
}

/// Passes slices through while accumulating `Σ |F|²`.
struct EnergyTap<'a, F: TfField> {
    inner: &'a F,
    sum: Cell<f64>,
}

impl<F: TfField> TfField for EnergyTap<'_, F> {
    fn xspec(&self) -> &GridSpec {
        self.inner.xspec()
    }
    fn xispec(&self) -> &FreqGridSpec {
        self.inner.xispec()
    }
    fn params(&self) -> &ParamPair {
        self.inner.params()
    }
    fn kind(&self) -> TfKind {
        self.inner.kind()
    }
    fn slice(&self, ix1: usize, ix2: usize) -> Vec<Quaternion> {
        let s = self.inner.slice(ix1, ix2);
        self.sum.set(self.sum.get() + s.iter().map(|q| q.norm_sqr()).sum::<f64>());
        s
    }
}

fn parse_slice(s: &str, xspec: &GridSpec) -> Result<[usize; 2]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        bail!("--slice expects \"x1,x2\", got {s:?}");
    }
    let mut ix = [0usize; 2];
    for (slot, p) in ix.iter_mut().zip(&parts) {
        let x: f64 = p.parse().map_err(|_| anyhow!("--slice: not a number: {p:?}"))?;
        let pos = ((x - xspec.origin()) / xspec.spacing()).round();
        if !(0.0..xspec.n() as f64).contains(&pos) {
            bail!("--slice: x = {x} lies outside the lattice [{}, {}]", xspec.coord(0), xspec.coord(xspec.n() - 1));
        }
        *slot = pos as usize;
    }
    Ok(ix)
}

fn cmd_tf(kind: TfKind, a: TfArgs) -> Result<()> {
    let f = load_signal(&a.input)?;
    let g = match &a.window {
        Some(p) => load_signal(p)?,
        None => f.clone(),
    };
    if f.spec() != g.spec() {
        bail!("grid mismatch: signal (n = {}, extent = {}) vs window (n = {}, extent = {})",
            f.n(), f.spec().extent(), g.n(), g.spec().extent());
    }
    let params = parse_params(&a.params)?;
    let method = if a.direct { Method::Direct } else { Method::Fast };
    let plan = match kind {
        TfKind::Stqqpft => TfPlan::stqqpft(&qqpft_core::WindowedPair::new(f.clone(), g.clone(), params)?, method)?,
        TfKind::Qqpaf => TfPlan::qqpaf(&f, &g, &params, method)?,
        TfKind::Qqpwvd => TfPlan::qqpwvd(&f, &g, &params, method)?,
    };
    if let Some(s) = &a.slice {
        let ix = parse_slice(s, plan.xspec())?;
        let values = plan.slice(ix[0], ix[1]);
        let mut w = create(&a.out)?;
        qio::write_slice_csv(&mut w, plan.xispec(), &values)?;
        w.flush()?;
        println!(
            "{} slice x=({}, {}) written to {}",
            kind.name(),
            plan.xspec().coord(ix[0]),
            plan.xspec().coord(ix[1]),
            a.out.display()
        );
        return Ok(());
    }
    let size = qio::field_file_size(plan.xspec().n(), plan.xispec().n());
    if size > FORCE_THRESHOLD && !a.force {
        bail!("output would take {size} bytes; pass --force or export one slice with --slice");
    }
    let tap = EnergyTap { inner: &plan, sum: Cell::new(0.0) };
    qio::save_field(&a.out, &tap)?;
    let energy = tap.sum.get() * plan.cell_measure();
    let ratio = params.b_product_abs() * energy / (f.l2_norm() * g.l2_norm()).powi(2);
    println!("{} n={} params={} energy_ratio={:.12e}", kind.name(), f.n(), params, ratio);
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<bool> {
    let battery: Battery = a.battery.parse()?;
    let mut config = BatteryConfig { n: a.n, extent: a.extent, seed: a.seed, signals: a.signals_count, pairs: a.pairs, ..Default::default() };
    if let Some(alpha) = a.alpha {
        config.alphas = vec![alpha];
    }
    if let Some(q) = a.q {
        config.q = q;
        config.lieb_exponents = vec![q];
    }
    if let Some(eps) = a.epsilon {
        config.epsilons = vec![eps];
    }
    let reports: Vec<VerificationReport> = if a.signals.is_empty() {
        run_battery(battery, &config)?
    } else {
        let params = parse_params(&a.params)?;
        let window = a.window.as_deref().map(load_signal).transpose()?;
        let mut out = Vec::new();
        for path in &a.signals {
            let f = load_signal(path)?;
            let g = match &window {
                Some(g) => g.clone(),
                None => standard_window(*f.spec())?,
            };
            out.extend(run_on_inputs(battery, &f, Some(&g), &params, &config)?);
        }
        out
    };
    match &a.out {
        Some(path) => {
            let mut w = create(path)?;
            qio::write_reports(&mut w, &reports)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            qio::write_reports(&mut w, &reports)?;
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    eprintln!("{}: {} checks, {} failed", battery.name(), reports.len(), failed);
    Ok(failed == 0)
}

fn describe(values: &[Quaternion], freq: &FreqGridSpec) -> String {
    let (idx, peak) = values
        .iter()
        .map(|q| q.modulus())
        .enumerate()
        .fold((0, 0.0f64), |acc, (i, m)| if m > acc.1 { (i, m) } else { acc });
    let n = freq.n();
    format!("peak={:.12e} at xi=({:.6}, {:.6})", peak, freq.xi1()[idx / n], freq.xi2()[idx % n])
}

fn cmd_info(path: &Path) -> Result<()> {
    match qio::read_magic(path).with_context(|| format!("cannot read {}", path.display()))? {
        FileKind::Signal => {
            let f = qio::load_signal(path)?;
            let spec = f.spec();
            println!("format=QSIG1");
            println!("n={} extent={} spacing={:.12e}", spec.n(), spec.extent(), spec.spacing());
            println!("l1={:.12e}", f.lp_norm(1.0)?);
            println!("l2={:.12e}", f.l2_norm());
            println!("sup={:.12e}", f.sup_norm());
            if let Some(c) = spec.center_index() {
                println!("origin_value={}", f.get(c, c));
            }
        }
        FileKind::Transform => {
            let q: QQPFTResult = qio::load_transform(path)?;
            let freq = q.freq();
            println!("format=QQPF1");
            println!("source_n={} source_extent={}", q.source().n(), q.source().extent());
            println!("params={}", q.params());
            println!("xi1=[{:.6}, {:.6}] xi2=[{:.6}, {:.6}] n={}", freq.xi1()[0], freq.xi1()[freq.n() - 1],
                freq.xi2()[0], freq.xi2()[freq.n() - 1], freq.n());
            println!("l2={:.12e}", q.l2_norm());
            println!("energy={:.12e}", q.params().b_product_abs() * q.l2_norm().powi(2));
            println!("{}", describe(q.values(), freq));
            println!("chirp_aliasing={}", q.chirp_aliasing());
        }
        FileKind::Field => {
            let field = qio::load_field(path)?;
            println!("format=QTF41 kind={}", field.kind().name());
            println!("x_n={} x_extent={} xi_n={}", field.xspec().n(), field.xspec().extent(), field.xispec().n());
            println!("params={}", field.params());
            let l2 = lp_norm_4d(&field, 2.0)?;
            println!("l2={:.12e}", l2);
            println!("energy={:.12e}", field.params().b_product_abs() * l2 * l2);
            println!("sup={:.12e}", lp_norm_4d(&field, f64::INFINITY)?);
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a).map(|_| true),
        Command::Qqpft(a) => cmd_qqpft(a).map(|_| true),
        Command::Stft(a) => cmd_tf(TfKind::Stqqpft, a).map(|_| true),
        Command::Af(a) => cmd_tf(TfKind::Qqpaf, a).map(|_| true),
        Command::Wvd(a) => cmd_tf(TfKind::Qqpwvd, a).map(|_| true),
        Command::Verify(a) => cmd_verify(a),
        Command::Info { path } => cmd_info(&path).map(|_| true),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
