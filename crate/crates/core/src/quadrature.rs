//! Adaptive Gauss–Kronrod integration.
//!
//! Every analytic quantity in the crate goes through [`integrate`]: a globally
//! adaptive bisection scheme driven by the 10-point Gauss / 21-point Kronrod
//! pair, with the QUADPACK error rescaling. Semi-infinite ranges are mapped to
//! `[0, 1)` by `x = a + u / (1 - u)` before subdivision.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and subdivision budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let cfg = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol.is_finite() && self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "abs_tol must be positive and finite, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must be positive and finite, got {}",
                self.rel_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidParameter(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Both tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            max_subdivisions: self.max_subdivisions,
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadratureResult {
    /// The value, or `NotConverged` when the budget ran out first.
    pub fn into_result(self) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NotConverged {
                value: self.value,
                error: self.error_estimate,
            })
        }
    }
}

/// `u ln u` with the convention `0 ln 0 = 0`. Non-positive input (round-off
/// below zero included) maps to zero.
#[inline]
pub fn xlogx(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        u * u.ln()
    }
}

// 21-point Kronrod abscissae; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_22,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_725,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_96,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_84,
    0.134_709_217_311_473_34,
    0.142_775_938_577_060_09,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

#[allow(clippy::needless_range_loop)] // index pairs mirror the node tables
fn gauss_kronrod_21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);

    let mut res_g = 0.0;
    let mut res_k = WGK[10] * fc;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    for j in 0..5 {
        let k = 2 * j + 1;
        let dx = half * XGK[k];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[k] = f1;
        fv2[k] = f2;
        res_g += WG[j] * (f1 + f2);
        res_k += WGK[k] * (f1 + f2);
        res_abs += WGK[k] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let k = 2 * j;
        let dx = half * XGK[k];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[k] = f1;
        fv2[k] = f2;
        res_k += WGK[k] * (f1 + f2);
        res_abs += WGK[k] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for k in 0..10 {
        res_asc += WGK[k] * ((fv1[k] - mean).abs() + (fv2[k] - mean).abs());
    }

    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, cfg: &QuadratureConfig) -> QuadratureResult {
    let (value, error) = gauss_kronrod_21(f, a, b);
    let mut evaluations = 21;
    if !value.is_finite() || !error.is_finite() {
        return QuadratureResult {
            value: f64::NAN,
            error_estimate: f64::INFINITY,
            evaluations,
            converged: false,
        };
    }

    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    // segments too narrow to bisect further
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;
    let mut total_value = value;
    let mut total_error = error;
    let mut subdivisions = 1;

    while total_error > cfg.target(total_value) && subdivisions < cfg.max_subdivisions {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        let (v1, e1) = gauss_kronrod_21(f, worst.a, mid);
        let (v2, e2) = gauss_kronrod_21(f, mid, worst.b);
        evaluations += 42;
        if !(v1.is_finite() && v2.is_finite() && e1.is_finite() && e2.is_finite()) {
            return QuadratureResult {
                value: f64::NAN,
                error_estimate: f64::INFINITY,
                evaluations,
                converged: false,
            };
        }
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2 });
        subdivisions += 1;
        total_value += v1 + v2 - worst.value;
        total_error += e1 + e2 - worst.error;
    }

    // Re-sum in position order so the result does not depend on running drift.
    let mut segments = heap.into_vec();
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = frozen_value + segments.iter().map(|s| s.value).sum::<f64>();
    let error = frozen_error + segments.iter().map(|s| s.error).sum::<f64>();
    QuadratureResult {
        value,
        error_estimate: error,
        evaluations,
        converged: error <= cfg.target(value),
    }
}

/// Integrates `f` over `[a, b]`, where `b` may be `+inf`.
///
/// A result that misses the tolerance is still returned with
/// `converged = false`; use [`QuadratureResult::into_result`] to turn that
/// into [`Error::NotConverged`].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> QuadratureResult {
    if a == b {
        return QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        };
    }
    if b == f64::INFINITY {
        let g = |u: f64| {
            let s = 1.0 - u;
            let y = f(a + u / s);
            if y == 0.0 {
                0.0
            } else {
                y / (s * s)
            }
        };
        adaptive(&g, 0.0, 1.0, cfg)
    } else {
        adaptive(&f, a, b, cfg)
    }
}

/// [`integrate`] with non-convergence reported as an error.
pub fn quad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(a <= b) {
        return Err(Error::InvalidParameter(format!(
            "integration bounds out of order: [{a}, {b}]"
        )));
    }
    integrate(f, a, b, cfg).into_result()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn spec_examples() {
        let r = integrate(|x| x, 0.0, 1.0, &cfg());
        assert!(r.converged);
        assert!((r.value - 0.5).abs() < 1e-15);

        let r = integrate(|x| -xlogx(x), 0.0, 1.0, &cfg());
        assert!(r.converged);
        assert!((r.value - 0.25).abs() < 1e-10, "{}", r.value);

        let r = integrate(|x: f64| (-x).exp(), 0.0, f64::INFINITY, &cfg());
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn xlogx_convention() {
        assert_eq!(xlogx(0.0), 0.0);
        assert_eq!(xlogx(-1e-18), 0.0);
        assert_eq!(xlogx(1.0), 0.0);
        let e = std::f64::consts::E;
        assert!((xlogx(1.0 / e) + 1.0 / e).abs() < 1e-16);
    }

    #[test]
    fn kronrod_rule_is_exact_for_degree_31() {
        let p = |x: f64| x.powi(31) + 3.0 * x.powi(20) - x.powi(7) + 2.0;
        let exact = |x: f64| x.powi(32) / 32.0 + 3.0 * x.powi(21) / 21.0 - x.powi(8) / 8.0 + 2.0 * x;
        let (v, _) = gauss_kronrod_21(&p, -0.7, 1.3);
        assert!((v - (exact(1.3) - exact(-0.7))).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let tight = QuadratureConfig::new(1e-15, 1e-15, 1).unwrap();
        let r = integrate(|x: f64| x.sqrt(), 0.0, 1.0, &tight);
        assert!(!r.converged);
        assert!(matches!(r.into_result(), Err(Error::NotConverged { .. })));
    }

    #[test]
    fn nonfinite_integrand_is_not_converged() {
        let r = integrate(|_| f64::NAN, 0.0, 1.0, &cfg());
        assert!(!r.converged);
    }

    #[test]
    fn invalid_config_rejected() {
        assert!(QuadratureConfig::new(0.0, 1e-8, 10).is_err());
        assert!(QuadratureConfig::new(1e-10, f64::NAN, 10).is_err());
        assert!(QuadratureConfig::new(1e-10, 1e-8, 0).is_err());
    }

    #[test]
    fn converged_implies_error_within_target() {
        let c = cfg();
        for (a, b) in [(0.0, 1.0), (0.5, 3.0), (0.0, 10.0)] {
            let r = integrate(|x: f64| (x.sin() * x).abs().sqrt(), a, b, &c);
            if r.converged {
                assert!(r.error_estimate <= c.abs_tol.max(c.rel_tol * r.value.abs()));
            }
        }
    }

    #[test]
    fn deterministic() {
        let f = |x: f64| (x * 7.0).cos() * (-x).exp();
        let a = integrate(f, 0.0, f64::INFINITY, &cfg());
        let b = integrate(f, 0.0, f64::INFINITY, &cfg());
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.evaluations, b.evaluations);
    }
}
