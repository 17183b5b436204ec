//! Paired MSE/MCC prediction experiments on Mackey–Glass data.
//!
//! Each trial draws one noise realization and one initialization and trains
//! every requested rule on that identical stream, so the rules are compared
//! pairwise. Learning curves go to one CSV per (trial, rule); a summary of
//! steady-state errors goes to `summary.csv`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mlp::MlpParams;
use crate::par::{map_range, Execution};
use crate::timeseries::{
    add_noise, embed, mackey_glass, rescale, MackeyGlassConfig, NoiseKind, NoiseModel,
    DEFAULT_WINDOW,
};
use crate::training::{train, Rule, StepReport, TrainConfig};

/// Floor for dB values so that an exactly zero error stays representable.
pub const DB_FLOOR: f64 = -300.0;

/// The clean series is mapped onto `[-NORMALIZE_BOUND, NORMALIZE_BOUND]` so
/// targets sit inside the range of the tanh output.
pub const NORMALIZE_BOUND: f64 = 0.75;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    #[default]
    Noiseless,
    Gaussian,
    Impulsive,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Noiseless => "noiseless",
            Scenario::Gaussian => "gaussian",
            Scenario::Impulsive => "impulsive",
        }
    }

    pub fn default_noise(self) -> NoiseKind {
        match self {
            Scenario::Noiseless => NoiseKind::None,
            Scenario::Gaussian => NoiseKind::DEFAULT_GAUSSIAN,
            Scenario::Impulsive => NoiseKind::DEFAULT_IMPULSIVE,
        }
    }

    fn accepts(self, kind: &NoiseKind) -> bool {
        matches!(
            (self, kind),
            (Scenario::Noiseless, NoiseKind::None)
                | (Scenario::Gaussian, NoiseKind::Gaussian { .. })
                | (Scenario::Impulsive, NoiseKind::Impulsive { .. })
        )
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "noiseless" => Ok(Scenario::Noiseless),
            "gaussian" => Ok(Scenario::Gaussian),
            "impulsive" => Ok(Scenario::Impulsive),
            _ => Err(Error::Config(format!(
                "unknown scenario {s:?} (expected noiseless, gaussian or impulsive)"
            ))),
        }
    }
}

/// Which rules an experiment trains.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleSelection {
    Mse,
    Mcc,
    #[default]
    Both,
}

impl RuleSelection {
    pub fn rules(self) -> &'static [Rule] {
        match self {
            RuleSelection::Mse => &[Rule::Mse],
            RuleSelection::Mcc => &[Rule::Mcc],
            RuleSelection::Both => &[Rule::Mse, Rule::Mcc],
        }
    }
}

impl FromStr for RuleSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mse" => Ok(RuleSelection::Mse),
            "mcc" => Ok(RuleSelection::Mcc),
            "both" => Ok(RuleSelection::Both),
            _ => Err(Error::Config(format!(
                "unknown rule {s:?} (expected mse, mcc or both)"
            ))),
        }
    }
}

/// Everything that determines an experiment. Loadable from TOML; every field
/// has a default.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSpec {
    pub scenario: Scenario,
    pub rule: RuleSelection,
    pub hidden_n: usize,
    /// Embedding window, i.e. the input dimension.
    pub window: usize,
    pub trials: usize,
    /// Trailing moving-average length for the `mse` column of curve CSVs.
    pub smoothing_window: usize,
    /// Initial parameters are uniform in `[-init_scale, init_scale]`.
    pub init_scale: f64,
    /// Min-max map the clean series onto `±NORMALIZE_BOUND` before embedding.
    pub normalize: bool,
    pub out_dir: PathBuf,
    pub train: TrainConfig,
    /// `n_samples` is ignored: the harness generates exactly enough samples
    /// for `train.iterations`.
    pub series: MackeyGlassConfig,
    /// Defaults to the scenario's noise with seed `train.seed`.
    pub noise: Option<NoiseModel>,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            scenario: Scenario::default(),
            rule: RuleSelection::default(),
            hidden_n: 10,
            window: DEFAULT_WINDOW,
            trials: 10,
            smoothing_window: 50,
            init_scale: 0.2,
            normalize: true,
            out_dir: PathBuf::from("qmlp-out"),
            train: TrainConfig::default(),
            series: MackeyGlassConfig::default(),
            noise: None,
        }
    }
}

impl ExperimentSpec {
    pub fn for_scenario(scenario: Scenario) -> Self {
        ExperimentSpec {
            scenario,
            ..ExperimentSpec::default()
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn noise_model(&self) -> NoiseModel {
        self.noise.unwrap_or(NoiseModel {
            kind: self.scenario.default_noise(),
            seed: self.train.seed,
        })
    }

    pub fn series_config(&self) -> MackeyGlassConfig {
        MackeyGlassConfig {
            n_samples: self.train.iterations + self.window,
            ..self.series
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.trials == 0 {
            return bad("trials must be >= 1".into());
        }
        if self.hidden_n == 0 {
            return bad("hidden_n must be >= 1".into());
        }
        if self.window == 0 {
            return bad("window must be >= 1".into());
        }
        if self.smoothing_window == 0 {
            return bad("smoothing_window must be >= 1".into());
        }
        if self.train.iterations == 0 {
            return bad("iterations must be >= 1".into());
        }
        if !(self.init_scale >= 0.0 && self.init_scale.is_finite()) {
            return bad(format!("init_scale must be >= 0, got {}", self.init_scale));
        }
        let noise = self.noise_model();
        if !self.scenario.accepts(&noise.kind) {
            return bad(format!(
                "noise kind {:?} does not match scenario {}",
                noise.kind,
                self.scenario.name()
            ));
        }
        let as_config = |e: Error| Error::Config(e.to_string());
        self.train.validate().map_err(as_config)?;
        self.series_config().validate().map_err(as_config)?;
        noise.validate().map_err(as_config)
    }

    pub fn curve_path(&self, trial: usize, rule: Rule) -> PathBuf {
        self.out_dir.join(format!(
            "{}_{}_trial{trial:03}.csv",
            self.scenario.name(),
            rule.name()
        ))
    }

    pub fn summary_path(&self) -> PathBuf {
        self.out_dir.join("summary.csv")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub rule: Rule,
    pub trial: usize,
    /// Mean `‖e‖²` over the last 10% of iterations.
    pub final_mse: f64,
    pub final_mse_db: f64,
    pub curve_path: PathBuf,
}

pub fn to_db(x: f64) -> f64 {
    (10.0 * x.log10()).max(DB_FLOOR)
}

/// Trailing moving average of `cost_mse`; the first entries average what is
/// available.
pub fn smoothed_mse(reports: &[StepReport], window: usize) -> Vec<f64> {
    // Summed afresh per point: a running sum would drift, and window = 1 must
    // reproduce the raw costs exactly.
    let window = window.max(1);
    (0..reports.len())
        .map(|i| {
            let win = &reports[(i + 1).saturating_sub(window)..=i];
            win.iter().map(|r| r.cost_mse).sum::<f64>() / win.len() as f64
        })
        .collect()
}

/// Mean `cost_mse` over the last 10% of the curve (at least one point).
pub fn final_mse(reports: &[StepReport]) -> f64 {
    if reports.is_empty() {
        return f64::NAN;
    }
    let tail = reports.len().div_ceil(10);
    reports[reports.len() - tail..]
        .iter()
        .map(|r| r.cost_mse)
        .sum::<f64>()
        / tail as f64
}

/// One row of a learning-curve CSV. `iter` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub iter: usize,
    pub e_a: f64,
    pub e_b: f64,
    pub e_c: f64,
    pub e_d: f64,
    pub mse: f64,
    pub mse_db: f64,
    pub mcc_cost: f64,
}

const CURVE_HEADER: [&str; 8] = [
    "iter", "e_a", "e_b", "e_c", "e_d", "mse", "mse_db", "mcc_cost",
];

pub fn write_curve_csv(reports: &[StepReport], path: &Path, smoothing_window: usize) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)
        .map_err(|e| Error::csv(path, e))?;
    w.write_record(CURVE_HEADER)
        .map_err(|e| Error::csv(path, e))?;
    let smooth = smoothed_mse(reports, smoothing_window);
    for (r, mse) in reports.iter().zip(smooth) {
        let row = CurveRow {
            iter: r.index + 1,
            e_a: r.err.a,
            e_b: r.err.b,
            e_c: r.err.c,
            e_d: r.err.d,
            mse,
            mse_db: to_db(mse),
            mcc_cost: r.cost_mcc,
        };
        w.serialize(row).map_err(|e| Error::csv(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_curve_csv(path: &Path) -> Result<Vec<CurveRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| Error::csv(path, e))?;
    r.deserialize()
        .collect::<std::result::Result<Vec<CurveRow>, _>>()
        .map_err(|e| Error::csv(path, e))
}

/// `t,value` with `t` in time units after the transient.
pub fn write_series_csv(series: &[f64], cfg: &MackeyGlassConfig, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::csv(path, e))?;
    w.write_record(["t", "value"])
        .map_err(|e| Error::csv(path, e))?;
    let spacing = cfg.dt * cfg.sample_stride as f64;
    for (k, v) in series.iter().enumerate() {
        w.serialize((k as f64 * spacing, v))
            .map_err(|e| Error::csv(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_summary_csv(summaries: &[RunSummary], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::csv(path, e))?;
    w.write_record(["rule", "trial", "final_mse", "final_mse_db"])
        .map_err(|e| Error::csv(path, e))?;
    for s in summaries {
        w.serialize((s.rule.name(), s.trial, s.final_mse, s.final_mse_db))
            .map_err(|e| Error::csv(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Median of the finite values in `xs`; NaN when there are none.
pub fn median(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = xs.into_iter().filter(|x| !x.is_nan()).collect();
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Aligned text table of the summaries followed by per-rule medians.
pub fn format_summary_table(summaries: &[RunSummary]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<5} {:>5} {:>14} {:>12}",
        "rule", "trial", "final_mse", "final_db"
    );
    for s in summaries {
        let _ = writeln!(
            out,
            "{:<5} {:>5} {:>14.6e} {:>12.3}",
            s.rule.name(),
            s.trial,
            s.final_mse,
            s.final_mse_db
        );
    }
    for rule in [Rule::Mse, Rule::Mcc] {
        let of_rule: Vec<f64> = summaries
            .iter()
            .filter(|s| s.rule == rule)
            .map(|s| s.final_mse)
            .collect();
        if !of_rule.is_empty() {
            let m = median(of_rule);
            let _ = writeln!(
                out,
                "{:<5} {:>5} {:>14.6e} {:>12.3}",
                rule.name(),
                "med",
                m,
                to_db(m)
            );
        }
    }
    out
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<RunSummary>> {
    run_experiment_with(spec, Execution::default())
}

/// Runs all trials (concurrently under [`Execution::Parallel`]), writes the
/// curve CSVs and `summary.csv`, and returns summaries ordered by trial, then
/// rule. Output files do not depend on `exec`.
pub fn run_experiment_with(spec: &ExperimentSpec, exec: Execution) -> Result<Vec<RunSummary>> {
    spec.validate()?;
    fs::create_dir_all(&spec.out_dir).map_err(|e| Error::io(&spec.out_dir, e))?;

    let mut series = mackey_glass(&spec.series_config())?;
    if spec.normalize {
        series = rescale(&series, -NORMALIZE_BOUND, NORMALIZE_BOUND)?;
    }
    let pairs = embed(&series, spec.window)?;
    let pairs = &pairs[..spec.train.iterations];
    let noise = spec.noise_model();

    let per_trial = map_range(exec, spec.trials, |trial| -> Result<Vec<RunSummary>> {
        let model = NoiseModel {
            seed: noise.seed.wrapping_add(trial as u64),
            ..noise
        };
        let stream = add_noise(pairs, &model)?;
        let mut rng = ChaCha8Rng::seed_from_u64(spec.train.seed.wrapping_add(trial as u64));
        let params0 = MlpParams::random(spec.window, spec.hidden_n, spec.init_scale, &mut rng)?;

        spec.rule
            .rules()
            .iter()
            .map(|&rule| {
                let context = |e: Error| Error::Run {
                    trial,
                    rule: rule.name(),
                    source: Box::new(e),
                };
                let (_, curve) = train(&params0, &stream, &spec.train, rule).map_err(context)?;
                let path = spec.curve_path(trial, rule);
                write_curve_csv(&curve, &path, spec.smoothing_window).map_err(context)?;
                let fin = final_mse(&curve);
                Ok(RunSummary {
                    rule,
                    trial,
                    final_mse: fin,
                    final_mse_db: to_db(fin),
                    curve_path: path,
                })
            })
            .collect()
    });

    let mut summaries = Vec::with_capacity(spec.trials * spec.rule.rules().len());
    for trial in per_trial {
        summaries.extend(trial?);
    }
    write_summary_csv(&summaries, &spec.summary_path())?;
    Ok(summaries)
}
