//! One-hidden-layer quaternion MLP.
//!
//! ```text
//! y = W^H x + p            (hidden pre-activation, length n)
//! z = v^H Ψ(y) + q         (output pre-activation)
//! e = d − Φ(z)
//! ```
//!
//! Gradients are stored as ascent directions of the squared error `J = e e*`,
//! i.e. `−2·∂J/∂θ*` in GHR form (equivalently `−½` of the real gradient
//! assembled componentwise). The update rules add them scaled by a step size.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::activation::{split_phi, split_phi_grad, split_psi, split_psi_grad};
use crate::error::{Error, Result};
use crate::quat::{hermitian_dot, matrix_hermitian_apply, QMatrix, QVector, Quaternion};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MlpParams {
    /// Input-to-hidden weights, `m × n`; column `j` feeds hidden unit `j`.
    pub w: QMatrix,
    pub p: QVector,
    pub v: QVector,
    pub q: Quaternion,
}

impl MlpParams {
    pub fn new(w: QMatrix, p: QVector, v: QVector, q: Quaternion) -> Result<Self> {
        let n = w.cols();
        if p.len() != n {
            return Err(Error::dim("MlpParams::new (p)", n, p.len()));
        }
        if v.len() != n {
            return Err(Error::dim("MlpParams::new (v)", n, v.len()));
        }
        Ok(MlpParams { w, p, v, q })
    }

    pub fn zeros(m: usize, n: usize) -> Result<Self> {
        check_shape(m, n)?;
        Ok(MlpParams {
            w: QMatrix::zeros(m, n),
            p: QVector::zeros(n),
            v: QVector::zeros(n),
            q: Quaternion::ZERO,
        })
    }

    /// Every real component drawn i.i.d. from `U[−scale, scale]`, in the order
    /// W (row-major), p, v, q.
    pub fn random(m: usize, n: usize, scale: f64, rng: &mut impl Rng) -> Result<Self> {
        check_shape(m, n)?;
        let mut draw = || {
            Quaternion::new(
                rng.random_range(-scale..=scale),
                rng.random_range(-scale..=scale),
                rng.random_range(-scale..=scale),
                rng.random_range(-scale..=scale),
            )
        };
        let w = QMatrix::from_fn(m, n, |_, _| draw());
        let p = QVector::new((0..n).map(|_| draw()).collect())?;
        let v = QVector::new((0..n).map(|_| draw()).collect())?;
        let q = draw();
        Ok(MlpParams { w, p, v, q })
    }

    pub fn input_dim(&self) -> usize {
        self.w.rows()
    }

    pub fn hidden_dim(&self) -> usize {
        self.w.cols()
    }

    /// Number of real degrees of freedom: `4(1 + 2n + mn)`.
    pub fn real_len(&self) -> usize {
        4 * (1 + 2 * self.hidden_dim() + self.input_dim() * self.hidden_dim())
    }

    pub fn is_finite(&self) -> bool {
        self.q.is_finite() && self.v.is_finite() && self.p.is_finite() && self.w.is_finite()
    }
}

fn check_shape(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "network dimensions must be positive, got m={m}, n={n}"
        )));
    }
    Ok(())
}

/// Intermediate values of one forward pass.
#[derive(Clone, Debug, PartialEq)]
pub struct ForwardTrace {
    pub y: QVector,
    pub psi_y: QVector,
    pub psi_y_grad: QVector,
    pub z: Quaternion,
    pub phi_z: Quaternion,
    pub phi_z_grad: Quaternion,
    pub e: Quaternion,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MlpGradients {
    pub g_q: Quaternion,
    pub g_v: QVector,
    pub g_p: QVector,
    pub g_w: QMatrix,
}

impl MlpGradients {
    pub fn scaled(&self, s: f64) -> MlpGradients {
        MlpGradients {
            g_q: self.g_q * s,
            g_v: self.g_v.map(|g| g * s),
            g_p: self.g_p.map(|g| g * s),
            g_w: self.g_w.map(|g| g * s),
        }
    }
}

pub fn mlp_forward(params: &MlpParams, x: &QVector, d: Quaternion) -> Result<ForwardTrace> {
    if x.len() != params.input_dim() {
        return Err(Error::dim("mlp_forward", params.input_dim(), x.len()));
    }
    let mut y = matrix_hermitian_apply(&params.w, x)?;
    for (yk, &pk) in y.iter_mut().zip(params.p.iter()) {
        *yk += pk;
    }
    let psi_y = split_psi(&y);
    let psi_y_grad = split_psi_grad(&y);
    let z = hermitian_dot(&params.v, &psi_y)? + params.q;
    let phi_z = split_phi(z);
    let phi_z_grad = split_phi_grad(z);
    Ok(ForwardTrace {
        y,
        psi_y,
        psi_y_grad,
        z,
        phi_z,
        phi_z_grad,
        e: d - phi_z,
    })
}

/// Output-layer signal `S = 4∂Φ(z)/∂z* ⊙ e`.
fn output_signal(trace: &ForwardTrace) -> Quaternion {
    trace.phi_z_grad.split(trace.e)
}

pub fn grad_q(trace: &ForwardTrace) -> Quaternion {
    output_signal(trace)
}

/// `Ψ(y)_k · (4∂Φ/∂z* ⊙ e*)` for each hidden unit.
pub fn grad_v(trace: &ForwardTrace) -> QVector {
    let r = trace.phi_z_grad.split(trace.e.conj());
    trace.psi_y.map(|psi| psi * r)
}

/// Hidden-layer signal from the component expansion: with
/// `s = sech²(z) ⊙ e`, unit `k` receives
///
/// ```text
///   [sa·va − sb·vb − sc·vc − sd·vd] sech²(ya)
/// + [sa·vb + sb·va − sc·vd + sd·vc] sech²(yb) ι
/// + [sa·vc + sb·vd + sc·va − sd·vb] sech²(yc) J
/// + [sa·vd − sb·vc + sc·vb + sd·va] sech²(yd) κ
/// ```
///
/// which is `(v_k · s) ⊙ sech²(y_k)`: `v` multiplies from the left. Writing
/// `s · v_k` instead flips the signs of the cross terms and fails the
/// finite-difference check.
pub fn grad_p(trace: &ForwardTrace, v: &QVector) -> Result<QVector> {
    if v.len() != trace.y.len() {
        return Err(Error::dim("grad_p", trace.y.len(), v.len()));
    }
    let s = output_signal(trace);
    let out = v
        .iter()
        .zip(trace.psi_y_grad.iter())
        .map(|(vk, gy)| {
            Quaternion::new(
                (s.a * vk.a - s.b * vk.b - s.c * vk.c - s.d * vk.d) * gy.a,
                (s.a * vk.b + s.b * vk.a - s.c * vk.d + s.d * vk.c) * gy.b,
                (s.a * vk.c + s.b * vk.d + s.c * vk.a - s.d * vk.b) * gy.c,
                (s.a * vk.d - s.b * vk.c + s.c * vk.b + s.d * vk.a) * gy.d,
            )
        })
        .collect();
    QVector::new(out)
}

/// `x · g_p^H`: entry `(i, j)` is `x_i · conj(g_p_j)`.
pub fn grad_w(trace: &ForwardTrace, params: &MlpParams, x: &QVector) -> Result<QMatrix> {
    if x.len() != params.input_dim() {
        return Err(Error::dim("grad_w", params.input_dim(), x.len()));
    }
    let hidden = grad_p(trace, &params.v)?;
    Ok(outer_hermitian(x, &hidden))
}

fn outer_hermitian(x: &QVector, h: &QVector) -> QMatrix {
    QMatrix::from_fn(x.len(), h.len(), |i, j| x[i] * h[j].conj())
}

/// One forward pass and all four gradients from the shared trace.
pub fn mlp_gradients(
    params: &MlpParams,
    x: &QVector,
    d: Quaternion,
) -> Result<(ForwardTrace, MlpGradients)> {
    let trace = mlp_forward(params, x, d)?;
    let g_p = grad_p(&trace, &params.v)?;
    let grads = MlpGradients {
        g_q: grad_q(&trace),
        g_v: grad_v(&trace),
        g_w: outer_hermitian(x, &g_p),
        g_p,
    };
    Ok((trace, grads))
}
