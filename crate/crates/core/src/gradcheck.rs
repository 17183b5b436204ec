//! Finite-difference check of the analytic MLP gradients.
//!
//! For each real parameter component `θδ` the scalar cost `J = e e*` is
//! differenced centrally; the four partials of one quaternion parameter are
//! assembled into the HR gradient `∂J/∂θ* = ¼(∂J/∂θa + ∂J/∂θb ι + ∂J/∂θc J + ∂J/∂θd κ)`.
//! The analytic gradients are ascent directions `−2·∂J/∂θ*`, so that is the
//! quantity compared.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mlp::{mlp_forward, mlp_gradients, MlpGradients, MlpParams};
use crate::par::{map_range, Execution};
use crate::quat::{QMatrix, QVector, Quaternion};

pub const DEFAULT_STEP: f64 = 1e-5;
pub const DEFAULT_TOL: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Q,
    V,
    P,
    W,
}

impl Block {
    pub const ALL: [Block; 4] = [Block::Q, Block::V, Block::P, Block::W];

    pub fn name(self) -> &'static str {
        match self {
            Block::Q => "q",
            Block::V => "v",
            Block::P => "p",
            Block::W => "W",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    fn len(self, params: &MlpParams) -> usize {
        match self {
            Block::Q => 1,
            Block::V | Block::P => params.hidden_dim(),
            Block::W => params.input_dim() * params.hidden_dim(),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn quat_mut(params: &mut MlpParams, block: Block, idx: usize) -> &mut Quaternion {
    match block {
        Block::Q => &mut params.q,
        Block::V => &mut params.v[idx],
        Block::P => &mut params.p[idx],
        Block::W => &mut params.w.as_mut_slice()[idx],
    }
}

fn perturbed(params: &MlpParams, block: Block, idx: usize, comp: usize, delta: f64) -> MlpParams {
    let mut out = params.clone();
    let q = quat_mut(&mut out, block, idx);
    let mut arr = q.to_array();
    arr[comp] += delta;
    *q = Quaternion::from_array(arr);
    out
}

fn cost(params: &MlpParams, x: &QVector, d: Quaternion) -> Result<f64> {
    Ok(mlp_forward(params, x, d)?.e.norm_sq())
}

/// Central-difference HR gradient `∂J/∂θ*` of one parameter block, flattened
/// in storage order (W row-major).
pub fn fd_hr_gradient(
    params: &MlpParams,
    x: &QVector,
    d: Quaternion,
    block: Block,
    step: f64,
) -> Result<Vec<Quaternion>> {
    (0..block.len(params))
        .map(|idx| {
            let mut parts = [0.0; 4];
            for (comp, part) in parts.iter_mut().enumerate() {
                let jp = cost(&perturbed(params, block, idx, comp, step), x, d)?;
                let jm = cost(&perturbed(params, block, idx, comp, -step), x, d)?;
                *part = 0.25 * (jp - jm) / (2.0 * step);
            }
            Ok(Quaternion::from_array(parts))
        })
        .collect()
}

/// Finite-difference estimate of the ascent directions stored in [`MlpGradients`].
pub fn fd_ascent(
    params: &MlpParams,
    x: &QVector,
    d: Quaternion,
    step: f64,
) -> Result<MlpGradients> {
    let block = |b| -> Result<Vec<Quaternion>> {
        Ok(fd_hr_gradient(params, x, d, b, step)?
            .into_iter()
            .map(|g| g * -2.0)
            .collect())
    };
    let (m, n) = (params.input_dim(), params.hidden_dim());
    Ok(MlpGradients {
        g_q: block(Block::Q)?[0],
        g_v: QVector::new(block(Block::V)?)?,
        g_p: QVector::new(block(Block::P)?)?,
        g_w: QMatrix::new(m, n, block(Block::W)?)?,
    })
}

fn block_slice(g: &MlpGradients, block: Block) -> &[Quaternion] {
    match block {
        Block::Q => std::slice::from_ref(&g.g_q),
        Block::V => g.g_v.as_slice(),
        Block::P => g.g_p.as_slice(),
        Block::W => g.g_w.as_slice(),
    }
}

/// Norm-wise relative error `‖a − f‖∞ / max(‖a‖∞, ‖f‖∞)` over one block.
pub fn relative_error(analytic: &[Quaternion], reference: &[Quaternion]) -> f64 {
    let mut diff = 0.0f64;
    let mut scale = 0.0f64;
    for (a, f) in analytic.iter().zip(reference) {
        diff = diff.max((*a - *f).max_abs());
        scale = scale.max(a.max_abs()).max(f.max_abs());
    }
    if diff == 0.0 {
        0.0
    } else {
        diff / scale.max(f64::MIN_POSITIVE)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockResult {
    pub block: Block,
    pub max_rel_err: f64,
    pub worst_instance: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradCheckReport {
    pub m: usize,
    pub n: usize,
    pub instances: usize,
    pub tol: f64,
    pub blocks: [BlockResult; 4],
}

impl GradCheckReport {
    pub fn passed(&self) -> bool {
        self.blocks.iter().all(|b| b.max_rel_err < self.tol)
    }

    pub fn failing_blocks(&self) -> Vec<Block> {
        self.blocks
            .iter()
            .filter(|b| !(b.max_rel_err < self.tol))
            .map(|b| b.block)
            .collect()
    }

    pub fn max_rel_err(&self) -> f64 {
        self.blocks.iter().fold(0.0, |m, b| m.max(b.max_rel_err))
    }
}

impl fmt::Display for GradCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "gradient check: m={} n={} instances={} tol={:e}",
            self.m, self.n, self.instances, self.tol
        )?;
        for b in &self.blocks {
            let status = if b.max_rel_err < self.tol {
                "ok"
            } else {
                "FAIL"
            };
            writeln!(
                f,
                "  {:<2} max_rel_err={:.3e} (instance {}) {}",
                b.block.name(),
                b.max_rel_err,
                b.worst_instance,
                status
            )?;
        }
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GradCheckConfig {
    pub m: usize,
    pub n: usize,
    pub instances: usize,
    pub seed: u64,
    pub step: f64,
    pub tol: f64,
    /// Half-width of the uniform range for parameters, inputs and targets.
    pub range: f64,
    pub exec: Execution,
}

impl GradCheckConfig {
    pub fn new(m: usize, n: usize, instances: usize, seed: u64) -> Self {
        GradCheckConfig {
            m,
            n,
            instances,
            seed,
            step: DEFAULT_STEP,
            tol: DEFAULT_TOL,
            range: 1.0,
            exec: Execution::default(),
        }
    }
}

/// Random `(params, x, d)` for instance `k`; each instance owns its RNG stream.
pub fn random_instance(
    cfg: &GradCheckConfig,
    k: usize,
) -> Result<(MlpParams, QVector, Quaternion)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(k as u64);
    let r = cfg.range;
    let params = MlpParams::random(cfg.m, cfg.n, r, &mut rng)?;
    let mut draw = || {
        Quaternion::new(
            rng.random_range(-r..=r),
            rng.random_range(-r..=r),
            rng.random_range(-r..=r),
            rng.random_range(-r..=r),
        )
    };
    let x = QVector::new((0..cfg.m).map(|_| draw()).collect())?;
    let d = draw();
    Ok((params, x, d))
}

pub fn run_gradient_check(
    m: usize,
    n: usize,
    instances: usize,
    seed: u64,
) -> Result<GradCheckReport> {
    run_gradient_check_with(&GradCheckConfig::new(m, n, instances, seed), |p, x, d| {
        Ok(mlp_gradients(p, x, d)?.1)
    })
}

/// Checks an arbitrary gradient routine against the finite-difference oracle.
pub fn run_gradient_check_with<G>(cfg: &GradCheckConfig, grad_fn: G) -> Result<GradCheckReport>
where
    G: Fn(&MlpParams, &QVector, Quaternion) -> Result<MlpGradients> + Sync + Send,
{
    if cfg.m == 0 || cfg.n == 0 || cfg.instances == 0 {
        return Err(Error::InvalidParameter(format!(
            "gradient check needs m, n, instances >= 1 (got {}, {}, {})",
            cfg.m, cfg.n, cfg.instances
        )));
    }
    let per_instance = map_range(cfg.exec, cfg.instances, |k| -> Result<[f64; 4]> {
        let (params, x, d) = random_instance(cfg, k)?;
        let analytic = grad_fn(&params, &x, d)?;
        let fd = fd_ascent(&params, &x, d, cfg.step)?;
        Ok(Block::ALL.map(|b| relative_error(block_slice(&analytic, b), block_slice(&fd, b))))
    });
    let mut blocks = Block::ALL.map(|block| BlockResult {
        block,
        max_rel_err: 0.0,
        worst_instance: 0,
    });
    for (k, errs) in per_instance.into_iter().enumerate() {
        let errs = errs?;
        for b in Block::ALL {
            let slot = &mut blocks[b.index()];
            let e = errs[b.index()];
            // NaN counts as worst
            if !(e <= slot.max_rel_err) {
                slot.max_rel_err = e;
                slot.worst_instance = k;
            }
        }
    }
    Ok(GradCheckReport {
        m: cfg.m,
        n: cfg.n,
        instances: cfg.instances,
        tol: cfg.tol,
        blocks,
    })
}
