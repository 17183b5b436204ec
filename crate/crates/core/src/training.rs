//! Per-sample stochastic training of the MLP.
//!
//! Both rules compute all four gradients from one forward trace at the
//! pre-update parameters and then move every block simultaneously. The MCC rule
//! is the MSE rule with each increment multiplied by the correntropy
//! `exp(−e e*/2σ²)` of the current sample, which gates large-error samples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mlp::{mlp_gradients, ForwardTrace, MlpGradients, MlpParams};
use crate::quat::{QVector, Quaternion};
use crate::timeseries::SamplePair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Mse,
    Mcc,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Mse => "mse",
            Rule::Mcc => "mcc",
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainConfig {
    pub eta_q: f64,
    pub eta_v: f64,
    pub eta_p: f64,
    pub eta_w: f64,
    /// MCC kernel width.
    pub sigma: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            eta_q: 1e-2,
            eta_v: 1e-2,
            eta_p: 1e-2,
            eta_w: 1e-2,
            sigma: 1.0,
            iterations: 3000,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn with_eta(eta: f64) -> Self {
        TrainConfig {
            eta_q: eta,
            eta_v: eta,
            eta_p: eta,
            eta_w: eta,
            ..TrainConfig::default()
        }
    }

    /// Step sizes must be non-negative (zero freezes a block) and σ positive.
    pub fn validate(&self) -> Result<()> {
        for (name, eta) in [
            ("eta_q", self.eta_q),
            ("eta_v", self.eta_v),
            ("eta_p", self.eta_p),
            ("eta_w", self.eta_w),
        ] {
            if !(eta >= 0.0 && eta.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be >= 0, got {eta}"
                )));
            }
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        Ok(())
    }
}

/// One point of a learning curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepReport {
    pub index: usize,
    pub err: Quaternion,
    pub cost_mse: f64,
    pub cost_mcc: f64,
}

/// `exp(−‖e‖²/2σ²)`.
pub fn mcc_cost(e: Quaternion, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    Ok((-e.norm_sq() / (2.0 * sigma * sigma)).exp())
}

/// Parameter increments of one step (already multiplied by the step sizes and,
/// for MCC, by the correntropy factor), together with the trace they came from.
pub fn step_increment(
    params: &MlpParams,
    x: &QVector,
    d: Quaternion,
    cfg: &TrainConfig,
    rule: Rule,
) -> Result<(ForwardTrace, MlpGradients)> {
    cfg.validate()?;
    let (trace, g) = mlp_gradients(params, x, d)?;
    let gate = match rule {
        Rule::Mse => 1.0,
        Rule::Mcc => mcc_cost(trace.e, cfg.sigma)?,
    };
    let inc = MlpGradients {
        g_q: g.g_q * (cfg.eta_q * gate),
        g_v: g.g_v.map(|q| q * (cfg.eta_v * gate)),
        g_p: g.g_p.map(|q| q * (cfg.eta_p * gate)),
        g_w: g.g_w.map(|q| q * (cfg.eta_w * gate)),
    };
    Ok((trace, inc))
}

fn apply(params: &MlpParams, inc: &MlpGradients, iteration: usize) -> Result<MlpParams> {
    let next = MlpParams {
        q: params.q + inc.g_q,
        v: params.v.axpy(1.0, &inc.g_v)?,
        p: params.p.axpy(1.0, &inc.g_p)?,
        w: params.w.axpy(1.0, &inc.g_w)?,
    };
    let bad = if !next.q.is_finite() {
        Some("q")
    } else if !next.v.is_finite() {
        Some("v")
    } else if !next.p.is_finite() {
        Some("p")
    } else if !next.w.is_finite() {
        Some("W")
    } else {
        None
    };
    match bad {
        Some(block) => Err(Error::Divergence { iteration, block }),
        None => Ok(next),
    }
}

fn step_at(
    params: &MlpParams,
    x: &QVector,
    d: Quaternion,
    cfg: &TrainConfig,
    rule: Rule,
    index: usize,
) -> Result<(MlpParams, StepReport)> {
    let (trace, inc) = step_increment(params, x, d, cfg, rule)?;
    let next = apply(params, &inc, index)?;
    let report = StepReport {
        index,
        err: trace.e,
        cost_mse: trace.e.norm_sq(),
        cost_mcc: mcc_cost(trace.e, cfg.sigma)?,
    };
    Ok((next, report))
}

pub fn mse_step(
    params: &MlpParams,
    x: &QVector,
    d: Quaternion,
    cfg: &TrainConfig,
) -> Result<(MlpParams, StepReport)> {
    step_at(params, x, d, cfg, Rule::Mse, 0)
}

pub fn mcc_step(
    params: &MlpParams,
    x: &QVector,
    d: Quaternion,
    cfg: &TrainConfig,
) -> Result<(MlpParams, StepReport)> {
    step_at(params, x, d, cfg, Rule::Mcc, 0)
}

/// Runs `rule` once over `stream` in order, returning the final parameters and
/// the learning curve.
pub fn train(
    params0: &MlpParams,
    stream: &[SamplePair],
    cfg: &TrainConfig,
    rule: Rule,
) -> Result<(MlpParams, Vec<StepReport>)> {
    cfg.validate()?;
    let mut params = params0.clone();
    let mut curve = Vec::with_capacity(stream.len());
    for (i, pair) in stream.iter().enumerate() {
        let (next, report) = step_at(&params, &pair.x, pair.d, cfg, rule, i)?;
        params = next;
        curve.push(report);
    }
    Ok((params, curve))
}
