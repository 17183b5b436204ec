//! Mackey–Glass series generation, quaternion embedding and target noise.

use std::collections::VecDeque;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Bernoulli, Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::{QVector, Quaternion};

pub const DEFAULT_WINDOW: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MackeyGlassConfig {
    pub tau: f64,
    /// Value at `t = 0`; the history for `t < 0` is zero.
    pub x0: f64,
    pub dt: f64,
    pub n_samples: usize,
    /// Integration steps per emitted sample.
    pub sample_stride: usize,
    /// Emitted samples discarded before the returned sequence starts.
    pub transient: usize,
}

impl Default for MackeyGlassConfig {
    fn default() -> Self {
        MackeyGlassConfig {
            tau: 17.0,
            x0: 0.12,
            dt: 0.1,
            n_samples: 3000 + DEFAULT_WINDOW,
            sample_stride: 10,
            transient: 1000,
        }
    }
}

impl MackeyGlassConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.tau >= self.dt && self.tau.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tau must be finite and at least dt, got tau={} dt={}",
                self.tau, self.dt
            )));
        }
        if !self.x0.is_finite() {
            return Err(Error::InvalidParameter("x0 must be finite".into()));
        }
        if self.sample_stride == 0 {
            return Err(Error::InvalidParameter("sample_stride must be >= 1".into()));
        }
        Ok(())
    }
}

/// Right-hand side `0.2·x(t−τ)/(1 + x(t−τ)¹⁰) − 0.1·x(t)`.
#[inline]
pub fn mackey_glass_rhs(x: f64, x_delayed: f64) -> f64 {
    0.2 * x_delayed / (1.0 + x_delayed.powi(10)) - 0.1 * x
}

/// Time derivative of the right-hand side along a trajectory, given `ẋ` and
/// the delayed `(x, ẋ)`.
fn mackey_glass_rhs_dt(dx: f64, (xd, dxd): (f64, f64)) -> f64 {
    let p = xd.powi(10);
    let dg = 0.2 * (1.0 - 9.0 * p) / ((1.0 + p) * (1.0 + p));
    dg * dxd - 0.1 * dx
}

/// Grid state kept for the delayed lookup.
#[derive(Clone, Copy)]
struct GridPoint {
    x: f64,
    /// First and second derivatives seen from the following interval.
    dx_right: f64,
    ddx_right: f64,
    /// Same, seen from the preceding interval. They differ from the right-hand
    /// values only where the delayed argument crosses a kink of the history.
    dx_left: f64,
    ddx_left: f64,
}

/// Trajectory window over the last `cap` grid points.
struct DelayBuffer {
    cap: usize,
    vals: VecDeque<GridPoint>,
    /// Grid index of the oldest stored point.
    first: usize,
}

const SNAP: f64 = 1e-9;

impl DelayBuffer {
    fn new(cap: usize) -> Self {
        DelayBuffer {
            cap,
            vals: VecDeque::with_capacity(cap),
            first: 0,
        }
    }

    fn push(&mut self, p: GridPoint) {
        if self.vals.len() == self.cap {
            self.vals.pop_front();
            self.first += 1;
        }
        self.vals.push_back(p);
    }

    fn at(&self, k: usize) -> GridPoint {
        self.vals[k - self.first]
    }

    /// `(x, ẋ)` at fractional grid position `s` (in steps), zero before the
    /// origin. On a grid point `from_left` selects the one-sided derivative (and,
    /// at the origin, the history side of the jump). Between grid points a
    /// quintic Hermite interpolant is used.
    fn sample(&self, s: f64, dt: f64, from_left: bool) -> (f64, f64) {
        let nearest = s.round();
        if (s - nearest).abs() < SNAP {
            if nearest < 0.0 || (nearest == 0.0 && from_left) {
                return (0.0, 0.0);
            }
            let p = self.at(nearest as usize);
            return (p.x, if from_left { p.dx_left } else { p.dx_right });
        }
        if s < 0.0 {
            return (0.0, 0.0);
        }
        let i = s.floor() as usize;
        let u = s - i as f64;
        let p0 = self.at(i);
        let p1 = self.at(i + 1);
        let (h, h2) = (dt, dt * dt);
        let (u2, u3, u4, u5) = (u * u, u * u * u, u * u * u * u, u * u * u * u * u);
        // quintic Hermite basis on [0, 1]
        let b = [
            1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5,
            u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5,
            0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5,
            10.0 * u3 - 15.0 * u4 + 6.0 * u5,
            -4.0 * u3 + 7.0 * u4 - 3.0 * u5,
            0.5 * u3 - u4 + 0.5 * u5,
        ];
        let db = [
            -30.0 * u2 + 60.0 * u3 - 30.0 * u4,
            1.0 - 18.0 * u2 + 32.0 * u3 - 15.0 * u4,
            u - 4.5 * u2 + 6.0 * u3 - 2.5 * u4,
            30.0 * u2 - 60.0 * u3 + 30.0 * u4,
            -12.0 * u2 + 28.0 * u3 - 15.0 * u4,
            1.5 * u2 - 4.0 * u3 + 2.5 * u4,
        ];
        let c = [
            p0.x,
            h * p0.dx_right,
            h2 * p0.ddx_right,
            p1.x,
            h * p1.dx_left,
            h2 * p1.ddx_left,
        ];
        let x = b.iter().zip(&c).map(|(b, c)| b * c).sum();
        let dx = db.iter().zip(&c).map(|(b, c)| b * c).sum::<f64>() / h;
        (x, dx)
    }
}

/// Fixed-step RK4 integration of the Mackey–Glass delay equation.
///
/// Emits every `sample_stride`-th grid value starting at `t = 0` and drops
/// the first `transient` of them.
pub fn mackey_glass(cfg: &MackeyGlassConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let dt = cfg.dt;
    let lag = cfg.tau / dt;
    let cap = lag.ceil() as usize + 3;
    let mut buf = DelayBuffer::new(cap);

    let total_emitted = cfg.transient + cfg.n_samples;
    let mut out = Vec::with_capacity(cfg.n_samples);
    let mut x = cfg.x0;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let right = buf.sample(kf - lag, dt, false);
        let left = buf.sample(kf - lag, dt, true);
        let f0 = mackey_glass_rhs(x, right.0);
        let f_left = mackey_glass_rhs(x, left.0);
        buf.push(GridPoint {
            x,
            dx_right: f0,
            ddx_right: mackey_glass_rhs_dt(f0, right),
            dx_left: f_left,
            ddx_left: mackey_glass_rhs_dt(f_left, left),
        });
        if k.is_multiple_of(cfg.sample_stride) {
            let j = k / cfg.sample_stride;
            if j >= cfg.transient {
                out.push(x);
            }
            if j + 1 >= total_emitted {
                break;
            }
        }
        // stages read the delayed term as seen from inside [t_k, t_k+1]
        let xd_mid = buf.sample(kf + 0.5 - lag, dt, false).0;
        let xd_end = buf.sample(kf + 1.0 - lag, dt, true).0;
        let k1 = f0;
        let k2 = mackey_glass_rhs(x + 0.5 * dt * k1, xd_mid);
        let k3 = mackey_glass_rhs(x + 0.5 * dt * k2, xd_mid);
        let k4 = mackey_glass_rhs(x + dt * k3, xd_end);
        x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        k += 1;
    }
    Ok(out)
}

/// One `(window, next value)` training pair.
/// Affine min-max map of `series` onto `[lo, hi]`. A constant series maps to
/// the midpoint.
pub fn rescale(series: &[f64], lo: f64, hi: f64) -> Result<Vec<f64>> {
    if !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "bad rescale range [{lo}, {hi}]"
        )));
    }
    let (min, max) = series
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    let span = max - min;
    Ok(series
        .iter()
        .map(|&v| {
            if span > 0.0 {
                lo + (v - min) * (hi - lo) / span
            } else {
                0.5 * (lo + hi)
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplePair {
    pub x: QVector,
    pub d: Quaternion,
}

/// Slides a window over `series`; each scalar `s` becomes the quaternion
/// `(s, s, s, s)`.
pub fn embed(series: &[f64], window: usize) -> Result<Vec<SamplePair>> {
    if window == 0 || series.len() <= window {
        return Err(Error::SeriesTooShort {
            len: series.len(),
            window,
        });
    }
    series
        .windows(window + 1)
        .map(|w| {
            Ok(SamplePair {
                x: QVector::new(w[..window].iter().map(|&s| Quaternion::splat(s)).collect())?,
                d: Quaternion::splat(w[window]),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum NoiseKind {
    None,
    Gaussian {
        std: f64,
    },
    /// Contaminated Gaussian: background `N(0, bg_std²)` per component; with
    /// probability `prob` per sample the whole additive term is replaced by
    /// `N(0, impulse_std²)` per component.
    Impulsive {
        prob: f64,
        bg_std: f64,
        impulse_std: f64,
    },
}

impl NoiseKind {
    pub const DEFAULT_GAUSSIAN: NoiseKind = NoiseKind::Gaussian { std: 0.1 };
    pub const DEFAULT_IMPULSIVE: NoiseKind = NoiseKind::Impulsive {
        prob: 0.05,
        bg_std: 0.1,
        impulse_std: 3.0,
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    #[serde(flatten)]
    pub kind: NoiseKind,
    #[serde(default)]
    pub seed: u64,
}

impl NoiseModel {
    pub fn none() -> Self {
        NoiseModel {
            kind: NoiseKind::None,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self.kind {
            NoiseKind::None => Ok(()),
            NoiseKind::Gaussian { std } if !(std >= 0.0 && std.is_finite()) => {
                bad(format!("noise std must be >= 0, got {std}"))
            }
            NoiseKind::Gaussian { .. } => Ok(()),
            NoiseKind::Impulsive {
                prob,
                bg_std,
                impulse_std,
            } => {
                if !(0.0..=1.0).contains(&prob) {
                    return bad(format!("impulse probability must be in [0, 1], got {prob}"));
                }
                if !(bg_std >= 0.0 && bg_std.is_finite()) {
                    return bad(format!("bg_std must be >= 0, got {bg_std}"));
                }
                if !(impulse_std > bg_std && impulse_std.is_finite()) {
                    return bad(format!(
                        "impulse_std ({impulse_std}) must exceed bg_std ({bg_std})"
                    ));
                }
                Ok(())
            }
        }
    }

    /// Additive noise terms for `count` targets, one quaternion each.
    ///
    /// The background and impulse draws come from separate RNG streams, so an
    /// impulsive model with `prob = 0` reproduces the Gaussian stream exactly.
    pub fn realize(&self, count: usize) -> Result<Vec<Quaternion>> {
        self.validate()?;
        let mut bg_rng = ChaCha8Rng::seed_from_u64(self.seed);
        bg_rng.set_stream(0);
        let mut imp_rng = ChaCha8Rng::seed_from_u64(self.seed);
        imp_rng.set_stream(1);
        let normal4 = |rng: &mut ChaCha8Rng, dist: &Normal<f64>| {
            Quaternion::new(
                dist.sample(rng),
                dist.sample(rng),
                dist.sample(rng),
                dist.sample(rng),
            )
        };
        let dist =
            |std: f64| Normal::new(0.0, std).map_err(|e| Error::InvalidParameter(e.to_string()));
        Ok(match self.kind {
            NoiseKind::None => vec![Quaternion::ZERO; count],
            NoiseKind::Gaussian { std } => {
                let n = dist(std)?;
                (0..count).map(|_| normal4(&mut bg_rng, &n)).collect()
            }
            NoiseKind::Impulsive {
                prob,
                bg_std,
                impulse_std,
            } => {
                let bg = dist(bg_std)?;
                let imp = dist(impulse_std)?;
                let hit =
                    Bernoulli::new(prob).map_err(|e| Error::InvalidParameter(e.to_string()))?;
                (0..count)
                    .map(|_| {
                        let base = normal4(&mut bg_rng, &bg);
                        if hit.sample(&mut imp_rng) {
                            normal4(&mut imp_rng, &imp)
                        } else {
                            base
                        }
                    })
                    .collect()
            }
        })
    }
}

/// Adds noise to every target `d`; inputs are left clean.
pub fn add_noise(pairs: &[SamplePair], model: &NoiseModel) -> Result<Vec<SamplePair>> {
    let noise = model.realize(pairs.len())?;
    Ok(pairs
        .iter()
        .zip(noise)
        .map(|(p, n)| SamplePair {
            x: p.x.clone(),
            d: p.d + n,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, dt: f64) -> MackeyGlassConfig {
        MackeyGlassConfig {
            n_samples: n,
            dt,
            sample_stride: (1.0 / dt).round() as usize,
            ..MackeyGlassConfig::default()
        }
    }

    #[test]
    fn first_derivative_from_zero_history() {
        assert!((mackey_glass_rhs(0.12, 0.0) - -0.012).abs() < 1e-15);
        // one emitted sample with no transient and stride 1: just x0
        let c = MackeyGlassConfig {
            n_samples: 2,
            transient: 0,
            sample_stride: 1,
            ..MackeyGlassConfig::default()
        };
        let s = mackey_glass(&c).unwrap();
        assert_eq!(s[0], 0.12);
        // pure decay while t < τ: x(dt) = 0.12·e^{−0.1·dt} to RK4 accuracy
        assert!((s[1] - 0.12 * (-0.01f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn series_is_bounded_after_transient() {
        let s = mackey_glass(&cfg(3000, 0.1)).unwrap();
        assert_eq!(s.len(), 3000);
        assert!(s.iter().all(|&v| v > 0.0 && v < 1.5));
        let (lo, hi) = s
            .iter()
            .fold((f64::MAX, f64::MIN), |(l, h), &v| (l.min(v), h.max(v)));
        // chaotic regime visits a wide band
        assert!(hi - lo > 0.5, "{lo}..{hi}");
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            mackey_glass(&cfg(500, 0.1)).unwrap(),
            mackey_glass(&cfg(500, 0.1)).unwrap()
        );
    }

    #[test]
    fn rejects_bad_config() {
        assert!(mackey_glass(&MackeyGlassConfig {
            dt: 0.0,
            ..Default::default()
        })
        .is_err());
        assert!(mackey_glass(&MackeyGlassConfig {
            tau: 0.01,
            ..Default::default()
        })
        .is_err());
        assert!(mackey_glass(&MackeyGlassConfig {
            sample_stride: 0,
            ..Default::default()
        })
        .is_err());
    }

    #[test]
    fn non_integer_delay_ratio_runs() {
        let c = MackeyGlassConfig {
            tau: 17.05,
            n_samples: 200,
            ..MackeyGlassConfig::default()
        };
        let s = mackey_glass(&c).unwrap();
        assert!(s.iter().all(|v| v.is_finite() && *v > 0.0));
    }

    #[test]
    fn hermite_interpolation_is_exact_for_quintics() {
        let f =
            |t: f64| 0.1 * t.powi(5) - 0.3 * t.powi(4) + 0.3 * t.powi(3) - t * t + 2.0 * t - 0.5;
        let df = |t: f64| 0.5 * t.powi(4) - 1.2 * t.powi(3) + 0.9 * t * t - 2.0 * t + 2.0;
        let ddf = |t: f64| 2.0 * t.powi(3) - 3.6 * t * t + 1.8 * t - 2.0;
        let dt = 0.25;
        let mut buf = DelayBuffer::new(8);
        for k in 0..8 {
            let t = k as f64 * dt;
            buf.push(GridPoint {
                x: f(t),
                dx_right: df(t),
                ddx_right: ddf(t),
                dx_left: df(t),
                ddx_left: ddf(t),
            });
        }
        for s in [0.5, 1.3, 4.75, 6.01] {
            let (x, dx) = buf.sample(s, dt, false);
            assert!((x - f(s * dt)).abs() < 1e-12);
            assert!((dx - df(s * dt)).abs() < 1e-11);
        }
        assert_eq!(buf.sample(-0.5, dt, false), (0.0, 0.0));
        assert_eq!(buf.sample(0.0, dt, true), (0.0, 0.0));
        assert_eq!(buf.sample(0.0, dt, false), (f(0.0), df(0.0)));
    }

    #[test]
    fn rhs_time_derivative_matches_finite_difference() {
        // along a smooth path x(t), xd(t): d/dt rhs(x, xd) vs central difference
        let x = |t: f64| 0.9 + 0.2 * t.sin();
        let xd = |t: f64| 1.1 + 0.3 * (2.0 * t).cos();
        let (t, h) = (0.4, 1e-5);
        let fd = (mackey_glass_rhs(x(t + h), xd(t + h)) - mackey_glass_rhs(x(t - h), xd(t - h)))
            / (2.0 * h);
        let dx = 0.2 * t.cos();
        let dxd = -0.6 * (2.0 * t).sin();
        let an = mackey_glass_rhs_dt(dx, (xd(t), dxd));
        assert!((an - fd).abs() < 1e-8, "{an} vs {fd}");
    }

    #[test]
    fn rescale_hits_the_range() {
        let r = rescale(&[2.0, 4.0, 3.0, 6.0], -0.5, 0.5).unwrap();
        assert_eq!(r, vec![-0.5, 0.0, -0.25, 0.5]);
        assert_eq!(rescale(&[1.0, 1.0], -1.0, 3.0).unwrap(), vec![1.0, 1.0]);
        assert!(rescale(&[1.0], 1.0, 1.0).is_err());
        assert!(rescale(&[], -1.0, 1.0).unwrap().is_empty());
    }

    #[test]
    fn integrator_is_fourth_order_over_a_short_horizon() {
        // spans the kinks at t = tau and 2 tau, before chaos amplifies anything
        let run = |dt: f64, stride: usize| {
            mackey_glass(&MackeyGlassConfig {
                dt,
                sample_stride: stride,
                n_samples: 60,
                transient: 0,
                ..Default::default()
            })
            .unwrap()
        };
        let (a, b, c) = (run(0.2, 5), run(0.1, 10), run(0.05, 20));
        let max_diff = |x: &[f64], y: &[f64]| {
            x.iter()
                .zip(y)
                .map(|(p, q)| (p - q).abs())
                .fold(0.0, f64::max)
        };
        let (coarse, fine) = (max_diff(&a, &b), max_diff(&b, &c));
        let ratio = coarse / fine;
        assert!(
            (12.0..20.0).contains(&ratio),
            "ratio {ratio} ({coarse:e} / {fine:e})"
        );
        assert!(fine < 1e-8, "{fine:e}");
    }

    #[test]
    fn embed_windows() {
        let pairs = embed(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 5).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].d, Quaternion::splat(6.0));
        for k in 0..5 {
            assert_eq!(pairs[0].x[k], Quaternion::splat(k as f64 + 1.0));
        }
        let series: Vec<f64> = (0..40).map(|i| (i as f64 * 0.37).sin()).collect();
        let pairs = embed(&series, 5).unwrap();
        assert_eq!(pairs.len(), series.len() - 5);
        for p in &pairs {
            for q in p.x.iter() {
                assert!(q.to_array().iter().all(|c| series.contains(c)));
            }
        }
        assert!(matches!(
            embed(&[1.0; 5], 5),
            Err(Error::SeriesTooShort { .. })
        ));
        assert!(embed(&[1.0; 5], 0).is_err());
    }

    fn pairs() -> Vec<SamplePair> {
        let series: Vec<f64> = (0..60)
            .map(|i| 0.5 + 0.3 * (i as f64 * 0.2).cos())
            .collect();
        embed(&series, 5).unwrap()
    }

    #[test]
    fn trivial_noise_models_leave_pairs_unchanged() {
        let p = pairs();
        assert_eq!(add_noise(&p, &NoiseModel::none()).unwrap(), p);
        let zero = NoiseModel {
            kind: NoiseKind::Gaussian { std: 0.0 },
            seed: 4,
        };
        assert_eq!(add_noise(&p, &zero).unwrap(), p);
    }

    #[test]
    fn noise_only_touches_targets_and_is_seeded() {
        let p = pairs();
        let m = NoiseModel {
            kind: NoiseKind::DEFAULT_IMPULSIVE,
            seed: 9,
        };
        let a = add_noise(&p, &m).unwrap();
        let b = add_noise(&p, &m).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().zip(&p).all(|(x, y)| x.x == y.x));
        assert!(a.iter().zip(&p).any(|(x, y)| x.d != y.d));
        let other = add_noise(&p, &NoiseModel { seed: 10, ..m }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn impulsive_with_zero_prob_is_gaussian() {
        let g = NoiseModel {
            kind: NoiseKind::Gaussian { std: 0.1 },
            seed: 21,
        };
        let i = NoiseModel {
            kind: NoiseKind::Impulsive {
                prob: 0.0,
                bg_std: 0.1,
                impulse_std: 3.0,
            },
            seed: 21,
        };
        assert_eq!(g.realize(500).unwrap(), i.realize(500).unwrap());
    }

    fn moments(xs: &[f64]) -> (f64, f64, f64) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
        (mean, var, m4 / (var * var) - 3.0)
    }

    fn components(qs: &[Quaternion]) -> Vec<f64> {
        qs.iter().flat_map(|q| q.to_array()).collect()
    }

    #[test]
    fn gaussian_noise_statistics() {
        let m = NoiseModel {
            kind: NoiseKind::Gaussian { std: 0.1 },
            seed: 1,
        };
        let xs = components(&m.realize(25_000).unwrap());
        assert_eq!(xs.len(), 100_000);
        let (mean, var, kurt) = moments(&xs);
        assert!(mean.abs() < 2e-3);
        assert!((var - 0.01).abs() < 0.05 * 0.01, "var {var}");
        assert!(kurt.abs() < 0.2);
    }

    #[test]
    fn impulsive_noise_is_heavy_tailed() {
        let m = NoiseModel {
            kind: NoiseKind::DEFAULT_IMPULSIVE,
            seed: 2,
        };
        let xs = components(&m.realize(25_000).unwrap());
        let (_, _, kurt) = moments(&xs);
        assert!(kurt > 3.0, "excess kurtosis {kurt}");
    }

    #[test]
    fn noise_validation() {
        let bad = [
            NoiseKind::Gaussian { std: -1.0 },
            NoiseKind::Impulsive {
                prob: 1.5,
                bg_std: 0.1,
                impulse_std: 1.0,
            },
            NoiseKind::Impulsive {
                prob: 0.1,
                bg_std: 1.0,
                impulse_std: 0.5,
            },
        ];
        for kind in bad {
            assert!(NoiseModel { kind, seed: 0 }.validate().is_err());
        }
    }
}
