//! Doubly truncated lifetimes `X | τ1 ≤ X ≤ τ2`.
//!
//! A [`TruncatedView`] pairs a distribution with a [`Window`] and caches the
//! survival at both ends. Every analytic here is a functional of the
//! truncated survival `u(x) = (F̄(x) - s2) / (s1 - s2)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::quadrature::{quad, QuadratureConfig};

/// Truncation window `[tau1, tau2]`; `tau2` may be `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub tau1: f64,
    pub tau2: f64,
}

impl Window {
    pub fn new(tau1: f64, tau2: f64) -> Result<Self> {
        if !tau1.is_finite() {
            return Err(Error::InvalidWindow(format!("tau1 must be finite, got {tau1}")));
        }
        if tau2.is_nan() || tau2 == f64::NEG_INFINITY {
            return Err(Error::InvalidWindow(format!("invalid tau2 {tau2}")));
        }
        if !(tau1 < tau2) {
            return Err(Error::InvalidWindow(format!(
                "need tau1 < tau2, got ({tau1}, {tau2})"
            )));
        }
        Ok(Self { tau1, tau2 })
    }

    pub fn is_finite(&self) -> bool {
        self.tau2.is_finite()
    }

    pub fn width(&self) -> f64 {
        self.tau2 - self.tau1
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.tau1 && x <= self.tau2
    }
}

impl FromStr for Window {
    type Err = Error;

    /// `3:10` or `3:inf`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidWindow(format!("expected tau1:tau2, got {s:?}")))?;
        let num = |t: &str| -> Result<f64> {
            let t = t.trim();
            match t.to_ascii_lowercase().as_str() {
                "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
                _ => t
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidWindow(format!("not a number: {t:?}"))),
            }
        };
        Self::new(num(a)?, num(b)?)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tau2.is_finite() {
            write!(f, "{}:{}", self.tau1, self.tau2)
        } else {
            write!(f, "{}:inf", self.tau1)
        }
    }
}

/// Windows whose survival mass falls below this are degenerate.
pub const MIN_MASS: f64 = 1e-14;

/// A distribution restricted to a window. Immutable; cheap to clone.
#[derive(Debug, Clone)]
pub struct TruncatedView {
    dist: Dist,
    window: Window,
    s1: f64,
    s2: f64,
    // cdf at both ends, used instead of survival when s2 is close to 1
    c1: f64,
    c2: f64,
    cfg: QuadratureConfig,
}

impl TruncatedView {
    pub fn new(dist: Dist, window: Window) -> Result<Self> {
        Self::with_config(dist, window, QuadratureConfig::default())
    }

    pub fn with_config(dist: Dist, window: Window, cfg: QuadratureConfig) -> Result<Self> {
        cfg.validate()?;
        let s1 = dist.survival(window.tau1);
        let s2 = if window.is_finite() {
            dist.survival(window.tau2)
        } else {
            0.0
        };
        let c1 = dist.cdf(window.tau1);
        let c2 = if window.is_finite() {
            dist.cdf(window.tau2)
        } else {
            1.0
        };
        let mass = if s2 > 0.5 { c2 - c1 } else { s1 - s2 };
        if !(mass >= MIN_MASS) {
            return Err(Error::DegenerateWindow { mass });
        }
        Ok(Self {
            dist,
            window,
            s1,
            s2,
            c1,
            c2,
            cfg,
        })
    }

    pub fn dist(&self) -> &Dist {
        &self.dist
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn tau1(&self) -> f64 {
        self.window.tau1
    }

    pub fn tau2(&self) -> f64 {
        self.window.tau2
    }

    /// `F̄(τ1)`.
    pub fn s1(&self) -> f64 {
        self.s1
    }

    /// `F̄(τ2)`, zero for an open-ended window.
    pub fn s2(&self) -> f64 {
        self.s2
    }

    pub fn config(&self) -> &QuadratureConfig {
        &self.cfg
    }

    pub fn with_quadrature(&self, cfg: QuadratureConfig) -> Self {
        Self { cfg, ..self.clone() }
    }

    fn use_cdf(&self) -> bool {
        self.s2 > 0.5
    }

    /// `P(τ1 ≤ X ≤ τ2) = s1 - s2`.
    pub fn mass(&self) -> f64 {
        if self.use_cdf() {
            self.c2 - self.c1
        } else {
            self.s1 - self.s2
        }
    }

    /// `F̄(x) - s2`, the unnormalized truncated survival.
    pub fn excess_survival(&self, x: f64) -> f64 {
        let d = if self.use_cdf() {
            self.c2 - self.dist.cdf(x)
        } else {
            self.dist.survival(x) - self.s2
        };
        d.max(0.0)
    }

    /// Truncated survival without the window check; clamps to `[0, 1]`.
    pub fn u(&self, x: f64) -> f64 {
        if x <= self.window.tau1 {
            return 1.0;
        }
        if x >= self.window.tau2 {
            return 0.0;
        }
        (self.excess_survival(x) / self.mass()).min(1.0)
    }

    /// Truncated density without the window check.
    pub fn pdf_unchecked(&self, x: f64) -> f64 {
        self.dist.pdf(x) / self.mass()
    }

    fn check_closed(&self, x: f64) -> Result<()> {
        if self.window.contains(x) {
            Ok(())
        } else {
            Err(self.out_of_window(x))
        }
    }

    fn check_half_open(&self, x: f64) -> Result<()> {
        if x >= self.window.tau1 && x < self.window.tau2 {
            Ok(())
        } else {
            Err(self.out_of_window(x))
        }
    }

    fn out_of_window(&self, x: f64) -> Error {
        Error::OutOfWindow {
            x,
            tau1: self.window.tau1,
            tau2: self.window.tau2,
        }
    }

    /// Integral of `f` over the window with the view's quadrature settings.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        quad(f, self.window.tau1, self.window.tau2, &self.cfg)
    }

    pub fn trunc_survival(&self, x: f64) -> Result<f64> {
        self.check_closed(x)?;
        Ok(self.u(x))
    }

    pub fn trunc_cdf(&self, x: f64) -> Result<f64> {
        self.check_closed(x)?;
        Ok(1.0 - self.u(x))
    }

    pub fn trunc_pdf(&self, x: f64) -> Result<f64> {
        self.check_closed(x)?;
        Ok(self.pdf_unchecked(x))
    }

    fn live_excess(&self, x: f64) -> Result<f64> {
        self.check_half_open(x)?;
        let d = self.excess_survival(x);
        if d <= 0.0 {
            return Err(Error::DegenerateWindow { mass: d });
        }
        Ok(d)
    }

    /// Generalized failure rate of the window re-anchored at `x`:
    /// `f(x) / (F̄(x) - s2)`.
    pub fn gfr1(&self, x: f64) -> Result<f64> {
        let d = self.live_excess(x)?;
        Ok(self.dist.pdf(x) / d)
    }

    /// `f(τ2) / (F̄(x) - s2)`; zero for an open-ended window.
    pub fn gfr2(&self, x: f64) -> Result<f64> {
        let d = self.live_excess(x)?;
        if !self.window.is_finite() {
            return Ok(0.0);
        }
        Ok(self.dist.pdf(self.window.tau2) / d)
    }

    /// `Λ(x) = -ln u(x)`, the integrated re-anchored failure rate.
    pub fn cum_hazard(&self, x: f64) -> Result<f64> {
        self.check_half_open(x)?;
        Ok(-self.u(x).ln())
    }

    /// Mean residual lifetime `E[X - τ1 | window] = ∫ u`.
    pub fn m1(&self) -> Result<f64> {
        let m = self.integrate(|x| self.u(x))?;
        if !m.is_finite() {
            return Err(Error::InfiniteResult("mean residual lifetime".into()));
        }
        Ok(m)
    }

    /// Mean past lifetime `E[τ2 - X | window] = ∫ (1 - u)`; finite windows only.
    pub fn m2(&self) -> Result<f64> {
        if !self.window.is_finite() {
            return Err(Error::InfiniteResult(
                "mean past lifetime of an open-ended window".into(),
            ));
        }
        self.integrate(|x| 1.0 - self.u(x))
    }

    /// Truncated mean `τ1 + m1`.
    pub fn mu(&self) -> Result<f64> {
        Ok(self.window.tau1 + self.m1()?)
    }

    /// `∫_x^τ2 (F̄ - s2)`, the unnormalized residual integral from `x`.
    pub fn residual_integral(&self, x: f64) -> Result<f64> {
        self.check_closed(x)?;
        quad(|t| self.excess_survival(t), x, self.window.tau2, &self.cfg)
    }

    /// `m1(x, τ2)`: mean residual lifetime of the window re-anchored at `x`.
    pub fn mrl_at(&self, x: f64) -> Result<f64> {
        let d = self.live_excess(x)?;
        Ok(self.residual_integral(x)? / d)
    }

    /// The same distribution on `[x, τ2]`.
    pub fn reanchor(&self, x: f64) -> Result<Self> {
        self.check_half_open(x)?;
        Self::with_config(self.dist.clone(), Window::new(x, self.window.tau2)?, self.cfg)
    }

    /// `E[φ(X) | window] = φ(τ1) + ∫ φ'(x) u(x) dx`.
    pub fn cond_expect<P, D>(&self, phi: P, dphi: D) -> Result<f64>
    where
        P: Fn(f64) -> f64,
        D: Fn(f64) -> f64,
    {
        let tail = self.integrate(|x| {
            let u = self.u(x);
            if u == 0.0 {
                0.0
            } else {
                dphi(x) * u
            }
        })?;
        Ok(phi(self.window.tau1) + tail)
    }

    /// `Var(X | window)`, computed about `τ1` to avoid cancellation.
    pub fn cond_var(&self) -> Result<f64> {
        let t1 = self.window.tau1;
        let second = self.cond_expect(|x| (x - t1) * (x - t1), |x| 2.0 * (x - t1))?;
        let m1 = self.m1()?;
        Ok((second - m1 * m1).max(0.0))
    }

    /// Survival of the relevation transform, `u(x) (1 + Λ(x))`.
    pub fn relevation_survival(&self, x: f64) -> Result<f64> {
        self.check_closed(x)?;
        Ok(relevation(self.u(x)))
    }

    /// `E|X - Y|` for independent copies in the window: `2 ∫ u (1 - u)`.
    pub fn trunc_abs_mean_diff(&self) -> Result<f64> {
        let v = self.integrate(|x| {
            let u = self.u(x);
            u * (1.0 - u)
        })?;
        Ok(2.0 * v)
    }
}

/// `u (1 - ln u)` with value 0 at `u = 0`.
pub(crate) fn relevation(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        u * (1.0 - u.ln())
    }
}

/// Ratio of truncated survivals `u_Y(x) / u_X(x)` on a shared window.
pub fn odds_ratio_g(vx: &TruncatedView, vy: &TruncatedView, x: f64) -> Result<f64> {
    if vx.window() != vy.window() {
        return Err(Error::InvalidWindow(format!(
            "views use different windows: {} vs {}",
            vx.window(),
            vy.window()
        )));
    }
    vx.check_half_open(x)?;
    let ux = vx.u(x);
    if ux <= 0.0 {
        return Err(Error::DegenerateWindow { mass: ux });
    }
    Ok(vy.u(x) / ux)
}
