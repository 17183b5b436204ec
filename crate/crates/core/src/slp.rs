//! Quaternion nonlinear filter (single-layer perceptron) trained by quaternion LMS.
//!
//! `x = w^H u`, output `Φ(x)`, error `e = d − Φ(x)`. The update is
//! `w ← w + η·u·(4∂Φ/∂x* ⊙ e*)`, where each `u_k` is Hamilton-multiplied on the
//! right by the scalar quaternion in parentheses.

use crate::activation::{split_phi, split_phi_grad};
use crate::error::{Error, Result};
use crate::quat::{hermitian_dot, QVector, Quaternion};

#[derive(Clone, Debug, PartialEq)]
pub struct SlpState {
    pub w: QVector,
    pub eta: f64,
}

impl SlpState {
    pub fn new(w: QVector, eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "step size must be positive, got {eta}"
            )));
        }
        if !w.is_finite() {
            return Err(Error::InvalidParameter(
                "filter weights must be finite".into(),
            ));
        }
        Ok(SlpState { w, eta })
    }

    pub fn forward(&self, u: &QVector) -> Result<Quaternion> {
        slp_forward(self, u)
    }
}

pub fn slp_forward(state: &SlpState, u: &QVector) -> Result<Quaternion> {
    Ok(split_phi(hermitian_dot(&state.w, u)?))
}

pub fn slp_error(d: Quaternion, state: &SlpState, u: &QVector) -> Result<Quaternion> {
    Ok(d - slp_forward(state, u)?)
}

/// Split-product form of the LMS step.
pub fn slp_update(state: &SlpState, u: &QVector, d: Quaternion) -> Result<SlpState> {
    let x = hermitian_dot(&state.w, u)?;
    let e = d - split_phi(x);
    let factor = split_phi_grad(x).split(e.conj());
    apply_right_factor(state, u, factor)
}

/// Same step with the right factor written out component by component:
/// `sech²(xa)ea − sech²(xb)eb ι − sech²(xc)ec J − sech²(xd)ed κ`.
pub fn slp_update_expanded(state: &SlpState, u: &QVector, d: Quaternion) -> Result<SlpState> {
    let x = hermitian_dot(&state.w, u)?;
    let e = d - split_phi(x);
    let s = |v: f64| {
        let t = v.tanh();
        1.0 - t * t
    };
    let factor = Quaternion::new(s(x.a) * e.a, -s(x.b) * e.b, -s(x.c) * e.c, -s(x.d) * e.d);
    apply_right_factor(state, u, factor)
}

fn apply_right_factor(state: &SlpState, u: &QVector, factor: Quaternion) -> Result<SlpState> {
    let step = u.map(|uk| uk * factor);
    Ok(SlpState {
        w: state.w.axpy(state.eta, &step)?,
        eta: state.eta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activation::split_phi;
    use crate::quat::tests::{assert_close, matrix_mul};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_q(rng: &mut impl Rng, r: f64) -> Quaternion {
        Quaternion::new(
            rng.random_range(-r..r),
            rng.random_range(-r..r),
            rng.random_range(-r..r),
            rng.random_range(-r..r),
        )
    }

    fn rand_v(rng: &mut impl Rng, n: usize, r: f64) -> QVector {
        QVector::new((0..n).map(|_| rand_q(rng, r)).collect()).unwrap()
    }

    fn cost(w: &QVector, u: &QVector, d: Quaternion) -> f64 {
        // J = e e*, evaluated with the matrix-representation product.
        let x = w
            .iter()
            .zip(u.iter())
            .fold(Quaternion::ZERO, |acc, (wk, uk)| {
                acc + matrix_mul(wk.conj(), *uk)
            });
        let e = d - split_phi(x);
        matrix_mul(e, e.conj()).a
    }

    /// Central-difference HR gradient `∂J/∂w* = ¼(∂J/∂wa + ∂J/∂wb ι + ∂J/∂wc J + ∂J/∂wd κ)`.
    fn fd_hr_grad(w: &QVector, u: &QVector, d: Quaternion, h: f64) -> QVector {
        let mut out = QVector::zeros(w.len());
        for k in 0..w.len() {
            let mut g = [0.0; 4];
            for (c, gc) in g.iter_mut().enumerate() {
                let mut wp = w.clone();
                let mut wm = w.clone();
                let mut ap = wp[k].to_array();
                let mut am = wm[k].to_array();
                ap[c] += h;
                am[c] -= h;
                wp[k] = Quaternion::from_array(ap);
                wm[k] = Quaternion::from_array(am);
                *gc = 0.25 * (cost(&wp, u, d) - cost(&wm, u, d)) / (2.0 * h);
            }
            out[k] = Quaternion::from_array(g);
        }
        out
    }

    #[test]
    fn forward_trivial_cases() {
        let u = QVector::new(vec![Quaternion::new(0.3, -0.2, 0.9, 1.4)]).unwrap();
        let zero = SlpState::new(QVector::zeros(1), 0.1).unwrap();
        assert_eq!(slp_forward(&zero, &u).unwrap(), Quaternion::ZERO);
        let d = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(slp_error(d, &zero, &u).unwrap(), d);
        let id = SlpState::new(QVector::basis(1, 0), 0.1).unwrap();
        assert_eq!(slp_forward(&id, &u).unwrap(), split_phi(u[0]));
        let y = slp_forward(&id, &u).unwrap();
        assert_eq!(slp_error(y, &id, &u).unwrap(), Quaternion::ZERO);
    }

    #[test]
    fn rejects_bad_state_and_dimensions() {
        assert!(SlpState::new(QVector::zeros(2), 0.0).is_err());
        assert!(SlpState::new(QVector::zeros(2), f64::NAN).is_err());
        let s = SlpState::new(QVector::zeros(2), 0.1).unwrap();
        assert!(matches!(
            slp_forward(&s, &QVector::zeros(3)),
            Err(Error::Dimension { .. })
        ));
        assert!(slp_update(&s, &QVector::zeros(3), Quaternion::ZERO).is_err());
    }

    #[test]
    fn zero_error_freezes_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = SlpState::new(rand_v(&mut rng, 4, 1.0), 0.05).unwrap();
        let u = rand_v(&mut rng, 4, 1.0);
        let d = slp_forward(&s, &u).unwrap();
        assert_eq!(slp_update(&s, &u, d).unwrap(), s);
    }

    #[test]
    fn random_instances_forward_and_cost() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let s = SlpState::new(rand_v(&mut rng, 3, 1.0), 0.1).unwrap();
            let u = rand_v(&mut rng, 3, 1.0);
            let d = rand_q(&mut rng, 1.0);
            let x =
                s.w.iter()
                    .zip(u.iter())
                    .fold(Quaternion::ZERO, |acc, (wk, uk)| {
                        acc + matrix_mul(wk.conj(), *uk)
                    });
            assert_close(slp_forward(&s, &u).unwrap(), split_phi(x), 1e-12);
            let e = slp_error(d, &s, &u).unwrap();
            assert!((e.norm_sq() - cost(&s.w, &u, d)).abs() < 1e-12);
        }
    }

    #[test]
    fn split_and_expanded_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let n = rng.random_range(1..6);
            let s = SlpState::new(rand_v(&mut rng, n, 1.0), rng.random_range(1e-3..1.0)).unwrap();
            let u = rand_v(&mut rng, n, 2.0);
            let d = rand_q(&mut rng, 1.0);
            let a = slp_update(&s, &u, d).unwrap();
            let b = slp_update_expanded(&s, &u, d).unwrap();
            for k in 0..n {
                assert_close(a.w[k], b.w[k], 1e-12);
            }
        }
    }

    #[test]
    fn increment_is_scaled_negative_hr_gradient() {
        // increment = η·u(g ⊙ e*) = −2η·∂J/∂w*; the extra factor 2 of the
        // exact GHR gradient is carried by η.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let n = rng.random_range(1..5);
            let eta = 0.1;
            let s = SlpState::new(rand_v(&mut rng, n, 1.0), eta).unwrap();
            let u = rand_v(&mut rng, n, 1.0);
            let d = rand_q(&mut rng, 1.0);
            let next = slp_update(&s, &u, d).unwrap();
            let fd = fd_hr_grad(&s.w, &u, d, 1e-6);
            let mut num = 0.0f64;
            let mut den = 0.0f64;
            for k in 0..n {
                let inc = next.w[k] - s.w[k];
                let expect = fd[k] * (-2.0 * eta);
                num = num.max((inc - expect).max_abs());
                den = den.max(expect.max_abs()).max(inc.max_abs());
            }
            assert!(num <= 1e-5 * den.max(1e-12), "rel err {}", num / den);
        }
    }

    #[test]
    fn small_steps_do_not_increase_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..500 {
            let n = rng.random_range(1..5);
            let s = SlpState::new(rand_v(&mut rng, n, 1.0), 1e-3).unwrap();
            let u = rand_v(&mut rng, n, 1.0);
            let d = rand_q(&mut rng, 1.0);
            let before = slp_error(d, &s, &u).unwrap().norm_sq();
            let next = slp_update(&s, &u, d).unwrap();
            let after = slp_error(d, &next, &u).unwrap().norm_sq();
            // first-order predicted decrease: 4η·‖∂J/∂w*‖²·2
            let g = fd_hr_grad(&s.w, &u, d, 1e-6);
            let predicted: f64 = g.iter().map(|q| q.norm_sq()).sum::<f64>() * 8.0 * s.eta;
            if predicted > 1e-14 {
                assert!(after <= before, "{after} > {before}");
            }
        }
    }
}
