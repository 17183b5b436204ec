//! Split tanh activation.
//!
//! `Φ(x) = φ(xa) + φ(xb)ι + φ(xc)J + φ(xd)κ` with `φ = tanh`. The derivative
//! helpers return `4·∂Φ/∂x* = sech²(xa) + sech²(xb)ι + sech²(xc)J + sech²(xd)κ`;
//! the factor 4 is folded into the learning rates of every update rule.

use crate::quat::{QVector, Quaternion};

#[inline]
pub fn phi(a: f64) -> f64 {
    a.tanh()
}

/// `sech²(a)`, computed as `1 − tanh²(a)`.
#[inline]
pub fn phi_prime(a: f64) -> f64 {
    let t = a.tanh();
    1.0 - t * t
}

pub fn split_phi(x: Quaternion) -> Quaternion {
    x.map(phi)
}

pub fn split_phi_grad(x: Quaternion) -> Quaternion {
    x.map(phi_prime)
}

pub fn split_psi(y: &QVector) -> QVector {
    y.map(split_phi)
}

pub fn split_psi_grad(y: &QVector) -> QVector {
    y.map(split_phi_grad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Odd Taylor series of tanh via Bernoulli numbers would be slow to
    /// converge at 1; use the exponential definition instead.
    fn tanh_oracle(a: f64) -> f64 {
        let (p, m) = (a.exp(), (-a).exp());
        (p - m) / (p + m)
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi(0.0), 0.0);
        assert!((phi(1.0) - 0.761_594_155_955_764_9).abs() < 1e-15);
        assert!((phi(1.0) - tanh_oracle(1.0)).abs() < 1e-15);
        for a in [-3.0, -0.5, 0.25, 2.0] {
            assert_eq!(phi(a), -phi(-a));
        }
    }

    #[test]
    fn split_phi_zero_and_real() {
        assert_eq!(split_phi(Quaternion::ZERO), Quaternion::ZERO);
        assert_eq!(
            split_phi(Quaternion::real(0.7)),
            Quaternion::real(0.7f64.tanh())
        );
        assert_eq!(split_phi_grad(Quaternion::ZERO), Quaternion::SPLIT_ONE);
    }

    #[test]
    fn grad_is_stable_at_large_arguments() {
        let g = split_phi_grad(Quaternion::new(50.0, -400.0, 800.0, 1e6));
        assert!(g.is_finite());
        assert!(g.to_array().iter().all(|&c| (0.0..1e-40).contains(&c)));
    }

    #[test]
    fn vector_forms() {
        let z = QVector::zeros(3);
        assert_eq!(split_psi(&z), z);
        assert_eq!(
            split_psi_grad(&z),
            QVector::new(vec![Quaternion::SPLIT_ONE; 3]).unwrap()
        );
        let one = QVector::new(vec![Quaternion::new(0.1, -2.0, 3.0, 0.4)]).unwrap();
        assert_eq!(split_psi(&one)[0], split_phi(one[0]));
        assert_eq!(split_psi_grad(&one)[0], split_phi_grad(one[0]));
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-10.0..10.0f64).prop_map(Quaternion::from_array)
    }

    proptest! {
        #[test]
        fn componentwise(q in quat()) {
            let out = split_phi(q);
            for (o, i) in out.to_array().iter().zip(q.to_array()) {
                prop_assert_eq!(*o, phi(i));
                prop_assert!(o.abs() <= 1.0);
            }
            let g = split_phi_grad(q);
            for c in g.to_array() {
                prop_assert!(c > 0.0 || q.max_abs() > 18.0);
                prop_assert!(c <= 1.0);
            }
        }

        #[test]
        fn permuting_input_permutes_output(q in quat()) {
            let [a, b, c, d] = q.to_array();
            let perm = Quaternion::new(c, a, d, b);
            let [oa, ob, oc, od] = split_phi(q).to_array();
            prop_assert_eq!(split_phi(perm), Quaternion::new(oc, oa, od, ob));
        }

        #[test]
        fn grad_matches_central_differences(q in prop::array::uniform4(-3.0..3.0f64).prop_map(Quaternion::from_array)) {
            let h = 1e-6;
            let g = split_phi_grad(q).to_array();
            for (k, x) in q.to_array().into_iter().enumerate() {
                let fd = (phi(x + h) - phi(x - h)) / (2.0 * h);
                prop_assert!((g[k] - fd).abs() < 1e-8);
                prop_assert!((g[k] - fd).abs() / g[k] < 1e-6);
            }
        }

        #[test]
        fn vector_ops_elementwise(qs in prop::collection::vec(quat(), 1..8)) {
            let v = QVector::new(qs).unwrap();
            let (p, g) = (split_psi(&v), split_psi_grad(&v));
            for k in 0..v.len() {
                prop_assert_eq!(p[k], split_phi(v[k]));
                prop_assert_eq!(g[k], split_phi_grad(v[k]));
            }
        }
    }
}
