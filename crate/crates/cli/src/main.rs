use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qmlp::gradcheck::{run_gradient_check_with, GradCheckConfig};
use qmlp::harness::{
    format_summary_table, run_experiment_with, write_series_csv, ExperimentSpec, RuleSelection,
    Scenario, NORMALIZE_BOUND,
};
use qmlp::timeseries::{mackey_glass, rescale, MackeyGlassConfig};
use qmlp::{mlp_gradients, Error, Execution};

const EXIT_DIVERGED: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_GRADCHECK: u8 = 3;

/// Quaternion MLP prediction experiments (MSE vs MCC training).
#[derive(Parser)]
#[command(name = "qmlp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a paired MSE/MCC prediction experiment.
    Predict(PredictArgs),
    /// Compare analytic gradients against finite differences.
    Gradcheck(GradcheckArgs),
    /// Write a Mackey–Glass series as CSV (t,value).
    GenSeries(GenSeriesArgs),
}

#[derive(Args)]
struct PredictArgs {
    /// TOML experiment file; flags below override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_from_str::<Scenario>)]
    scenario: Option<Scenario>,
    #[arg(long, value_parser = parse_from_str::<RuleSelection>)]
    rule: Option<RuleSelection>,
    #[arg(long)]
    hidden_n: Option<usize>,
    #[arg(long)]
    eta_q: Option<f64>,
    #[arg(long)]
    eta_v: Option<f64>,
    #[arg(long)]
    eta_p: Option<f64>,
    #[arg(long)]
    eta_w: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct GradcheckArgs {
    #[arg(short, long, default_value_t = 3)]
    m: usize,
    #[arg(short, long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct GenSeriesArgs {
    /// Output CSV path.
    #[arg(long, short)]
    out: PathBuf,
    #[arg(long, default_value_t = 3000)]
    samples: usize,
    #[arg(long, default_value_t = 0.1)]
    dt: f64,
    /// Integration steps per emitted sample.
    #[arg(long, default_value_t = 10)]
    stride: usize,
    #[arg(long, default_value_t = 17.0)]
    tau: f64,
    /// Map the series onto the range the experiments train on.
    #[arg(long)]
    normalize: bool,
}

fn parse_from_str<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn build_spec(args: &PredictArgs) -> qmlp::Result<ExperimentSpec> {
    let mut spec = match &args.config {
        Some(path) => ExperimentSpec::from_file(path)?,
        None => ExperimentSpec::default(),
    };
    if let Some(s) = args.scenario {
        spec.scenario = s;
        // a scenario switch on the command line brings its own default noise
        if spec.noise.is_some_and(|n| n.kind != s.default_noise()) {
            spec.noise = None;
        }
    }
    let t = &mut spec.train;
    macro_rules! set {
        ($($dst:expr => $src:expr),* $(,)?) => { $(if let Some(v) = $src { $dst = v; })* };
    }
    set!(
        spec.rule => args.rule,
        spec.hidden_n => args.hidden_n,
        t.eta_q => args.eta_q,
        t.eta_v => args.eta_v,
        t.eta_p => args.eta_p,
        t.eta_w => args.eta_w,
        t.sigma => args.sigma,
        t.iterations => args.iters,
        t.seed => args.seed,
        spec.trials => args.trials,
        spec.out_dir => args.out_dir.clone(),
    );
    spec.validate()?;
    Ok(spec)
}

fn predict(args: &PredictArgs) -> qmlp::Result<()> {
    let spec = build_spec(args)?;
    let summaries = run_experiment_with(&spec, exec(args.sequential))?;
    println!(
        "scenario {}, {} trial(s), {} iterations",
        spec.scenario.name(),
        spec.trials,
        spec.train.iterations
    );
    print!("{}", format_summary_table(&summaries));
    println!("curves and summary.csv in {}", spec.out_dir.display());
    Ok(())
}

fn gradcheck(args: &GradcheckArgs) -> qmlp::Result<bool> {
    let cfg = GradCheckConfig {
        exec: exec(args.sequential),
        ..GradCheckConfig::new(args.m, args.n, args.instances, args.seed)
    };
    let report = run_gradient_check_with(&cfg, |p, x, d| Ok(mlp_gradients(p, x, d)?.1))?;
    println!("{report}");
    Ok(report.passed())
}

fn gen_series(args: &GenSeriesArgs) -> qmlp::Result<()> {
    let cfg = MackeyGlassConfig {
        tau: args.tau,
        dt: args.dt,
        n_samples: args.samples,
        sample_stride: args.stride,
        ..MackeyGlassConfig::default()
    };
    let mut series = mackey_glass(&cfg)?;
    if args.normalize {
        series = rescale(&series, -NORMALIZE_BOUND, NORMALIZE_BOUND)?;
    }
    write_series_csv(&series, &cfg, &args.out)
}

fn failure(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_divergence() {
        EXIT_DIVERGED
    } else {
        EXIT_CONFIG
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Predict(a) => predict(a),
        Command::GenSeries(a) => gen_series(a),
        Command::Gradcheck(a) => match gradcheck(a) {
            Ok(true) => Ok(()),
            Ok(false) => return ExitCode::from(EXIT_GRADCHECK),
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => failure(&e),
    }
}
