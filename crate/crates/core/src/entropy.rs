//! Entropy, extropy and divergence measures of truncated lifetimes.
//!
//! [`crie`] computes the cumulative residual interval entropy by any of four
//! algebraically equivalent representations. They use different integrands
//! (one of them nested), so agreement between them is a strong check on the
//! numerics.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dist::{Dist, MonotoneMap};
use crate::error::{Error, Result};
use crate::quadrature::{quad, xlogx, QuadratureConfig};
use crate::truncation::{relevation, TruncatedView, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrieMethod {
    /// `-∫ u ln u` directly.
    Definition,
    /// Truncated expectation of the re-anchored mean residual lifetime.
    ViaMrl,
    /// `Cov(X, -ln(F̄(X) - s2) | window)`.
    ViaCovariance,
    /// Integrated relevation survival minus the mean residual lifetime.
    ViaRelevation,
}

impl CrieMethod {
    pub const ALL: [CrieMethod; 4] = [
        CrieMethod::Definition,
        CrieMethod::ViaMrl,
        CrieMethod::ViaCovariance,
        CrieMethod::ViaRelevation,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Definition => "definition",
            Self::ViaMrl => "via_mrl",
            Self::ViaCovariance => "via_covariance",
            Self::ViaRelevation => "via_relevation",
        }
    }
}

impl fmt::Display for CrieMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CrieMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == key || m.as_str().trim_start_matches("via_") == key)
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
    }
}

/// CRIE of the truncated view, using the view's quadrature settings.
pub fn crie(v: &TruncatedView, method: CrieMethod) -> Result<f64> {
    let h = match method {
        CrieMethod::Definition => by_definition(v)?,
        CrieMethod::ViaMrl => by_mrl(v)?,
        CrieMethod::ViaCovariance => by_covariance(v)?,
        CrieMethod::ViaRelevation => by_relevation(v)?,
    };
    if !h.is_finite() {
        return Err(Error::InfiniteResult("entropy integral".into()));
    }
    Ok(h.max(0.0))
}

/// CRIE by every method, in [`CrieMethod::ALL`] order.
pub fn crie_all(v: &TruncatedView) -> Result<[f64; 4]> {
    Ok([
        crie(v, CrieMethod::Definition)?,
        crie(v, CrieMethod::ViaMrl)?,
        crie(v, CrieMethod::ViaCovariance)?,
        crie(v, CrieMethod::ViaRelevation)?,
    ])
}

fn by_definition(v: &TruncatedView) -> Result<f64> {
    v.integrate(|x| -xlogx(v.u(x)))
}

// Inner integrals are tightened so their error does not dominate the outer one.
fn by_mrl(v: &TruncatedView) -> Result<f64> {
    let inner = v.with_quadrature(v.config().scaled(1e-2));
    let mass = v.mass();
    let t2 = v.tau2();
    let failure = Cell::new(None);
    let h = v.integrate(|x| {
        let f = v.dist().pdf(x);
        if f == 0.0 || x >= t2 {
            return 0.0;
        }
        let d = inner.excess_survival(x);
        if d <= 0.0 {
            return 0.0;
        }
        match quad(|t| inner.excess_survival(t), x, t2, inner.config()) {
            Ok(r) => r / d * f / mass,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        }
    });
    match failure.into_inner() {
        Some(e) => Err(e),
        None => h,
    }
}

fn by_covariance(v: &TruncatedView) -> Result<f64> {
    // E[ln D] = ln(s1 - s2) - 1 and
    // E[X ln D] = τ1 ln(s1 - s2) + ∫ D ln D / (s1 - s2) - μ, with D = F̄ - s2,
    // so Cov(X, -ln D) = m1 ln(s1 - s2) - ∫ D ln D / (s1 - s2).
    let mass = v.mass();
    let log_mass = mass.ln();
    let m1 = v.m1()?;
    let mu = v.tau1() + m1;
    let d_log_d = v.integrate(|x| xlogx(v.excess_survival(x)))?;
    let e_log_d = log_mass - 1.0;
    let e_x_log_d = v.tau1() * log_mass + d_log_d / mass - mu;
    Ok(-e_x_log_d + mu * e_log_d)
}

fn by_relevation(v: &TruncatedView) -> Result<f64> {
    if v.window().is_finite() {
        let r = v.integrate(|x| relevation(v.u(x)))?;
        return Ok(r - v.m1()?);
    }
    // residual lifetime X - t given X > t, integrated over (0, ∞)
    let t = v.tau1();
    let cfg = v.config();
    let r = quad(|y| relevation(v.u(t + y)), 0.0, f64::INFINITY, cfg)?;
    let m = quad(|y| v.u(t + y), 0.0, f64::INFINITY, cfg)?;
    Ok(r - m)
}

/// Interval (Shannon) entropy `-∫ f_w ln f_w` of the truncated density.
pub fn interval_shannon(v: &TruncatedView) -> Result<f64> {
    v.integrate(|x| -xlogx(v.pdf_unchecked(x)))
}

fn full_support_view(dist: &Dist, from: f64, cfg: QuadratureConfig) -> Result<TruncatedView> {
    let (_, hi) = dist.support();
    if dist.tail_index().is_some_and(|a| a <= 1.0) {
        return Err(Error::InfiniteResult(
            "cumulative residual entropy of a tail with index <= 1".into(),
        ));
    }
    TruncatedView::with_config(dist.clone(), Window::new(from, hi)?, cfg)
}

/// Cumulative residual entropy `-∫ F̄ ln F̄` over the support.
pub fn cre(dist: &Dist) -> Result<f64> {
    cre_with(dist, QuadratureConfig::default())
}

pub fn cre_with(dist: &Dist, cfg: QuadratureConfig) -> Result<f64> {
    let (lo, _) = dist.support();
    crie(&full_support_view(dist, lo, cfg)?, CrieMethod::Definition)
}

/// Dynamic cumulative residual entropy: the CRE of `X - t | X > t`.
pub fn dynamic_cre(dist: &Dist, t: f64) -> Result<f64> {
    dynamic_cre_with(dist, t, QuadratureConfig::default())
}

pub fn dynamic_cre_with(dist: &Dist, t: f64, cfg: QuadratureConfig) -> Result<f64> {
    let (_, hi) = dist.support();
    if !(t < hi) {
        return Err(Error::InvalidWindow(format!("age {t} lies beyond the support")));
    }
    crie(&full_support_view(dist, t, cfg)?, CrieMethod::Definition)
}

/// Cumulative past interval entropy `-∫ F_w ln F_w` of the truncated cdf.
pub fn past_interval_entropy(v: &TruncatedView) -> Result<f64> {
    if !v.window().is_finite() {
        return Err(Error::InvalidWindow("past entropy needs a finite window".into()));
    }
    v.integrate(|x| -xlogx(1.0 - v.u(x)))
}

/// Variant that normalizes `F̄` by the window mass without subtracting `s2`.
/// Not a survival function, so the value may be negative.
pub fn modified_crie(v: &TruncatedView) -> Result<f64> {
    let mass = v.mass();
    v.integrate(|x| -xlogx(v.dist().survival(x) / mass))
}

/// Cumulative residual extropy `-½ ∫ F̄²`.
pub fn crj(dist: &Dist) -> Result<f64> {
    if dist.tail_index().is_some_and(|a| a <= 0.5) {
        return Err(Error::InfiniteResult("squared survival is not integrable".into()));
    }
    let (lo, hi) = dist.support();
    let v = quad(|x| dist.survival(x).powi(2), lo, hi, &QuadratureConfig::default())?;
    Ok(-0.5 * v)
}

/// Survival-based Kullback–Leibler divergence of two truncated variables on
/// the same window: `∫ u_X ln(u_X / u_Y) - (m1_X - m1_Y)`.
pub fn crikl(vx: &TruncatedView, vy: &TruncatedView) -> Result<f64> {
    if vx.window() != vy.window() {
        return Err(Error::InvalidWindow(format!(
            "views use different windows: {} vs {}",
            vx.window(),
            vy.window()
        )));
    }
    let end = |v: &TruncatedView| v.tau2().min(v.dist().support().1);
    if end(vy) < end(vx) {
        return Err(Error::DivergentDivergence { x: end(vy) });
    }
    let bad = Cell::new(None);
    // pointwise u ln(u/w) - u + w >= 0; integrates to the stated form
    let total = vx.integrate(|x| {
        let (p, q) = (vx.u(x), vy.u(x));
        if p <= 0.0 {
            q
        } else if q <= 0.0 {
            bad.set(Some(x));
            0.0
        } else {
            p * (p / q).ln() - p + q
        }
    })?;
    if let Some(x) = bad.get() {
        return Err(Error::DivergentDivergence { x });
    }
    Ok(total.max(0.0))
}

/// CRIE of `Y = φ(X)` on a window for `Y`, by the change of variables
/// `-∫ φ'(x) u_X(x) ln u_X(x)` over the preimage window.
pub fn transform_crie(base: &Dist, map: &MonotoneMap, window: Window) -> Result<f64> {
    transform_crie_with(base, map, window, QuadratureConfig::default())
}

pub fn transform_crie_with(
    base: &Dist,
    map: &MonotoneMap,
    window: Window,
    cfg: QuadratureConfig,
) -> Result<f64> {
    let pre = Window::new(map.inverse(window.tau1), map.inverse(window.tau2))
        .map_err(|_| Error::NonMonotoneTransform { x: window.tau1, derivative: f64::NAN })?;
    probe_increasing(base, map, pre)?;
    let v = TruncatedView::with_config(base.clone(), pre, cfg)?;
    let h = v.integrate(|x| {
        let u = v.u(x);
        if u <= 0.0 || u >= 1.0 {
            0.0
        } else {
            -map.derivative(x) * xlogx(u)
        }
    })?;
    Ok(h.max(0.0))
}

const PROBE_POINTS: usize = 65;

fn probe_increasing(base: &Dist, map: &MonotoneMap, pre: Window) -> Result<()> {
    let hi = if pre.is_finite() {
        pre.tau2
    } else {
        pre.tau1.max(base.quantile(0.999)).max(pre.tau1 + 1.0)
    };
    for i in 0..PROBE_POINTS {
        let x = pre.tau1 + (hi - pre.tau1) * i as f64 / (PROBE_POINTS - 1) as f64;
        let d = map.derivative(x);
        // φ' may vanish at an endpoint (e.g. x^k at 0) without breaking monotonicity
        let interior = i > 0 && i + 1 < PROBE_POINTS;
        if !(d > 0.0 || (!interior && d == 0.0)) {
            return Err(Error::NonMonotoneTransform { x, derivative: d });
        }
    }
    Ok(())
}
