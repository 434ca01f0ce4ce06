//! Numeric shape and order diagnostics.
//!
//! Everything here is grid evidence: a "certified" verdict means the sampled
//! values satisfy the property beyond a small relative margin, not that it was
//! proved.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{Dist, MonotoneMap, MonotoneTransform};
use crate::entropy::{crie, CrieMethod};
use crate::error::{Error, Result};
use crate::quadrature::{xlogx, QuadratureConfig};
use crate::truncation::{TruncatedView, Window};

pub const DEFAULT_SCAN_POINTS: usize = 257;
pub const DEFAULT_TAU1_POINTS: usize = 33;
/// Relative margin below which successive differences count as ties.
pub const SCAN_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
    Constant,
    Mixed,
}

impl Direction {
    /// Weakly increasing (constant included).
    pub fn is_nondecreasing(self) -> bool {
        matches!(self, Self::Increasing | Self::Constant)
    }

    pub fn is_nonincreasing(self) -> bool {
        matches!(self, Self::Decreasing | Self::Constant)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotoneVerdict {
    pub direction: Direction,
    pub grid_size: usize,
    /// Largest step against the reported direction (for `Mixed`, the smaller
    /// of the largest rise and the largest fall).
    pub max_violation: f64,
}

/// Classifies already-sampled values.
pub fn classify_values(xs: &[f64], ys: &[f64]) -> Result<MonotoneVerdict> {
    if ys.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "a monotonicity scan needs at least 3 points, got {}",
            ys.len()
        )));
    }
    for (&x, &y) in xs.iter().zip(ys) {
        if !y.is_finite() {
            return Err(Error::NonFiniteSample { x, value: y });
        }
    }
    let scale = ys.iter().fold(0.0f64, |m, y| m.max(y.abs()));
    let margin = SCAN_MARGIN * scale.max(f64::MIN_POSITIVE);
    let (lo, hi) = ys
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &y| (a.min(y), b.max(y)));
    let mut rise = 0.0f64;
    let mut fall = 0.0f64;
    for w in ys.windows(2) {
        let d = w[1] - w[0];
        rise = rise.max(d);
        fall = fall.max(-d);
    }
    let (direction, max_violation) = if hi - lo <= margin {
        (Direction::Constant, hi - lo)
    } else if fall <= margin {
        (Direction::Increasing, fall)
    } else if rise <= margin {
        (Direction::Decreasing, rise)
    } else {
        (Direction::Mixed, rise.min(fall))
    };
    Ok(MonotoneVerdict {
        direction,
        grid_size: ys.len(),
        max_violation,
    })
}

/// `n` equally spaced points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Scans `f` on `n` equally spaced points of `[lo, hi]`.
pub fn scan_monotone<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> Result<MonotoneVerdict> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "a monotonicity scan needs at least 3 points, got {n}"
        )));
    }
    let xs = linspace(lo, hi, n);
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    classify_values(&xs, &ys)
}

/// Practical right end of the window for grids: `τ2`, or for an open window
/// the point leaving `0.1%` of the truncated mass.
pub fn effective_end(v: &TruncatedView) -> f64 {
    if v.window().is_finite() {
        return v.tau2();
    }
    let q = v.dist().quantile(1.0 - 1e-3 * v.s1());
    if q.is_finite() && q > v.tau1() {
        q
    } else {
        v.tau1() + 1.0
    }
}

/// `n` points on `[τ1, end)`, the right end excluded.
pub fn window_grid(v: &TruncatedView, n: usize) -> Vec<f64> {
    let (a, b) = (v.tau1(), effective_end(v));
    (0..n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

/// Scan of `x ↦ h1(x, τ2)` on the window.
pub fn scan_gfr(v: &TruncatedView, n: usize) -> Result<MonotoneVerdict> {
    let xs = window_grid(v, n);
    let ys = xs.iter().map(|&x| v.gfr1(x)).collect::<Result<Vec<_>>>()?;
    classify_values(&xs, &ys)
}

/// Scan of `x ↦ m1(x, τ2)` on the window.
pub fn scan_mrl(v: &TruncatedView, n: usize) -> Result<MonotoneVerdict> {
    let xs = window_grid(v, n);
    let ys = xs
        .par_iter()
        .map(|&x| v.mrl_at(x))
        .collect::<Result<Vec<_>>>()?;
    classify_values(&xs, &ys)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgingClass {
    Ifr,
    Dfr,
    Constant,
    Mixed,
}

impl From<Direction> for AgingClass {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Increasing => Self::Ifr,
            Direction::Decreasing => Self::Dfr,
            Direction::Constant => Self::Constant,
            Direction::Mixed => Self::Mixed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MrlClass {
    Imrl,
    Dmrl,
    Constant,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectationClass {
    /// `m(t) ≤ E X` for all t.
    Nbue,
    /// `m(t) ≥ E X` for all t.
    Nwue,
    Both,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgingReport {
    pub hazard: AgingClass,
    pub hazard_scan: MonotoneVerdict,
    pub mrl: MrlClass,
    pub expectation: ExpectationClass,
}

/// Hazard rate `f(x) / F̄(x)`.
pub fn hazard(dist: &Dist, x: f64) -> f64 {
    dist.pdf(x) / dist.survival(x)
}

/// Mean residual life `∫_t^∞ F̄ / F̄(t)`.
pub fn mean_residual_life(dist: &Dist, t: f64) -> f64 {
    dist.integrated_survival(t) / dist.survival(t)
}

fn interior_range(dist: &Dist) -> (f64, f64) {
    (dist.quantile(1e-3), dist.quantile(0.995))
}

/// IFR/DFR by a hazard scan over the bulk of the support, plus mean-residual
/// and used-versus-new labels.
pub fn classify_aging(dist: &Dist) -> Result<AgingReport> {
    classify_aging_with(dist, DEFAULT_SCAN_POINTS)
}

pub fn classify_aging_with(dist: &Dist, n: usize) -> Result<AgingReport> {
    let (a, b) = interior_range(dist);
    let hazard_scan = scan_monotone(|x| hazard(dist, x), a, b, n)?;
    let xs = linspace(a, b, n);
    let mrl: Vec<f64> = xs.iter().map(|&t| mean_residual_life(dist, t)).collect();
    let mrl_class = match classify_values(&xs, &mrl)?.direction {
        Direction::Increasing => MrlClass::Imrl,
        Direction::Decreasing => MrlClass::Dmrl,
        Direction::Constant => MrlClass::Constant,
        Direction::Mixed => MrlClass::Mixed,
    };
    let mean = dist.mean();
    let tol = SCAN_MARGIN * mean.abs().max(1.0);
    let below = mrl.iter().all(|&m| m <= mean + tol);
    let above = mrl.iter().all(|&m| m >= mean - tol);
    let expectation = match (below, above) {
        (true, true) => ExpectationClass::Both,
        (true, false) => ExpectationClass::Nbue,
        (false, true) => ExpectationClass::Nwue,
        (false, false) => ExpectationClass::Neither,
    };
    Ok(AgingReport {
        hazard: hazard_scan.direction.into(),
        hazard_scan,
        mrl: mrl_class,
        expectation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyShape {
    Icrie,
    Dcrie,
    /// `H = m1` on the whole grid: both classes at once.
    Constant,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeCheck {
    pub finite_difference: f64,
    pub predicted: f64,
    pub relative_error: f64,
    pub agrees: bool,
}

/// Step and tolerance of the derivative identity check.
pub const FD_STEP: f64 = 1e-4;
pub const FD_TOLERANCE: f64 = 1e-3;
pub const FD_MIN_WIDTH: f64 = 1e-3;

/// Compares a difference quotient of `H` in `τ1` with `h1 (H - m1)`.
/// `None` for windows narrower than [`FD_MIN_WIDTH`], open windows, or an
/// infinite failure rate at `τ1`.
pub fn derivative_identity(v: &TruncatedView) -> Result<Option<DerivativeCheck>> {
    let w = v.window();
    if !w.is_finite() || w.width() < FD_MIN_WIDTH {
        return Ok(None);
    }
    let h = crie(v, CrieMethod::Definition)?;
    let m1 = v.m1()?;
    let predicted = v.gfr1(v.tau1())? * (h - m1);
    // an unbounded density at the left end leaves nothing to compare
    if !predicted.is_finite() {
        return Ok(None);
    }
    let step = FD_STEP * w.width();
    let at = |t1: f64| -> Result<f64> {
        let shifted = TruncatedView::with_config(v.dist().clone(), Window::new(t1, w.tau2)?, *v.config())?;
        crie(&shifted, CrieMethod::Definition)
    };
    // second-order one-sided difference when the backward point leaves the support
    let fd = if w.tau1 - step < v.dist().support().0 {
        (-3.0 * h + 4.0 * at(w.tau1 + step)? - at(w.tau1 + 2.0 * step)?) / (2.0 * step)
    } else {
        (at(w.tau1 + step)? - at(w.tau1 - step)?) / (2.0 * step)
    };
    let relative_error = (fd - predicted).abs() / predicted.abs().max(1.0);
    Ok(Some(DerivativeCheck {
        finite_difference: fd,
        predicted,
        relative_error,
        agrees: relative_error <= FD_TOLERANCE,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeCell {
    pub tau1: f64,
    pub entropy: f64,
    pub mrl: f64,
    pub gfr: f64,
    pub derivative: Option<DerivativeCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeCertificate {
    pub verdict: EntropyShape,
    pub tau2: f64,
    /// Direction of `H` along the `τ1` grid.
    pub entropy_scan: MonotoneVerdict,
    /// Every cell has `H ≤ m1` (up to the margin).
    pub below_mrl: bool,
    /// Every cell has `H ≥ m1`.
    pub above_mrl: bool,
    /// Every checked cell satisfies the derivative identity.
    pub derivative_agrees: bool,
    pub cells: Vec<ShapeCell>,
}

impl ShapeCertificate {
    pub fn require(&self) -> Result<EntropyShape> {
        match self.verdict {
            EntropyShape::Inconclusive => Err(Error::Inconclusive(format!(
                "entropy scan {:?}, H <= m1 everywhere: {}, H >= m1 everywhere: {}",
                self.entropy_scan.direction, self.below_mrl, self.above_mrl
            ))),
            v => Ok(v),
        }
    }
}

/// Default `τ1` grid for a fixed `τ2`: from the support start (or the first
/// grid-able point) up to 95% of the way to `τ2`.
pub fn default_tau1_grid(dist: &Dist, tau2: f64, n: usize) -> Vec<f64> {
    let (lo, _) = dist.support();
    let end = if tau2.is_finite() {
        lo + 0.95 * (tau2 - lo)
    } else {
        dist.quantile(0.9)
    };
    linspace(lo, end, n)
}

/// Grid-level ICRIE/DCRIE certification at fixed `τ2`.
///
/// A verdict requires the `H` scan and the sign of `H - m1` to agree on every
/// cell; the derivative identity is reported as supporting evidence.
pub fn certify_icrie_dcrie(
    dist: &Dist,
    tau2: f64,
    tau1_grid: &[f64],
    cfg: QuadratureConfig,
) -> Result<ShapeCertificate> {
    let cells = tau1_grid
        .par_iter()
        .map(|&t1| -> Result<ShapeCell> {
            let v = TruncatedView::with_config(dist.clone(), Window::new(t1, tau2)?, cfg)?;
            Ok(ShapeCell {
                tau1: t1,
                entropy: crie(&v, CrieMethod::Definition)?,
                mrl: v.m1()?,
                gfr: v.gfr1(t1)?,
                derivative: derivative_identity(&v)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = cells.iter().map(|c| c.tau1).collect();
    let hs: Vec<f64> = cells.iter().map(|c| c.entropy).collect();
    let entropy_scan = classify_values(&xs, &hs)?;
    // quadrature noise on H and m1 is far above the scan margin
    let tie = |c: &ShapeCell| 1e-7 * c.mrl.abs().max(1e-12);
    let below_mrl = cells.iter().all(|c| c.entropy <= c.mrl + tie(c));
    let above_mrl = cells.iter().all(|c| c.entropy >= c.mrl - tie(c));
    let derivative_agrees = cells
        .iter()
        .all(|c| c.derivative.is_none_or(|d| d.agrees));
    let verdict = match (entropy_scan.direction, below_mrl, above_mrl) {
        (Direction::Constant, true, true) => EntropyShape::Constant,
        (Direction::Decreasing, true, _) => EntropyShape::Dcrie,
        (Direction::Increasing, _, true) => EntropyShape::Icrie,
        _ => EntropyShape::Inconclusive,
    };
    Ok(ShapeCertificate {
        verdict,
        tau2,
        entropy_scan,
        below_mrl,
        above_mrl,
        derivative_agrees,
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StochasticOrder {
    /// `F̄_X ≤ F̄_Y`.
    St,
    /// `F̄_Y / F̄_X` nondecreasing.
    Hr,
    /// `f_Y / f_X` nondecreasing.
    Lr,
}

impl std::str::FromStr for StochasticOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "st" => Ok(Self::St),
            "hr" => Ok(Self::Hr),
            "lr" => Ok(Self::Lr),
            other => Err(Error::Parse(format!("unknown order {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderStatus {
    Certified,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderCertificate {
    pub order: StochasticOrder,
    pub status: OrderStatus,
    /// Grid point with the largest violation (or the first grid point).
    pub worst_x: f64,
    pub worst_violation: f64,
}

fn practical_upper(dist: &Dist) -> f64 {
    let (_, hi) = dist.support();
    if hi.is_finite() {
        hi
    } else {
        dist.quantile(0.999)
    }
}

/// Default comparison grid: interior midpoints spanning both supports.
pub fn order_grid(x: &Dist, y: &Dist, n: usize) -> Vec<f64> {
    let lo = x.support().0.min(y.support().0);
    let hi = practical_upper(x).max(practical_upper(y));
    (0..n)
        .map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64)
        .collect()
}

type Pointwise = fn(&Dist, f64) -> f64;

/// Grid check of `X ≤ Y` in the given order.
pub fn check_order(x: &Dist, y: &Dist, order: StochasticOrder, grid: &[f64]) -> Result<OrderCertificate> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty order grid".into()));
    }
    match order {
        StochasticOrder::St => {
            let mut worst = (grid[0], f64::NEG_INFINITY);
            for &t in grid {
                let d = x.survival(t) - y.survival(t);
                if !d.is_finite() {
                    return Err(Error::NonFiniteSample { x: t, value: d });
                }
                if d > worst.1 {
                    worst = (t, d);
                }
            }
            let status = if worst.1 <= SCAN_MARGIN {
                OrderStatus::Certified
            } else {
                OrderStatus::Refuted
            };
            Ok(OrderCertificate {
                order,
                status,
                worst_x: worst.0,
                worst_violation: worst.1.max(0.0),
            })
        }
        StochasticOrder::Hr | StochasticOrder::Lr => {
            let (num, den): (Pointwise, Pointwise) = match order {
                StochasticOrder::Hr => (|d, t| d.survival(t), |d, t| d.survival(t)),
                _ => (|d, t| d.pdf(t), |d, t| d.pdf(t)),
            };
            let mut xs = Vec::new();
            let mut ratios = Vec::new();
            for &t in grid {
                let b = den(x, t);
                if b > 0.0 && b.is_finite() {
                    let r = num(y, t) / b;
                    if r.is_finite() {
                        xs.push(t);
                        ratios.push(r);
                    }
                }
            }
            if ratios.len() < 3 {
                return Ok(OrderCertificate {
                    order,
                    status: OrderStatus::Inconclusive,
                    worst_x: grid[0],
                    worst_violation: f64::NAN,
                });
            }
            let verdict = classify_values(&xs, &ratios)?;
            let (mut worst_x, mut worst) = (xs[0], 0.0f64);
            for (w, t) in ratios.windows(2).zip(&xs[1..]) {
                if w[0] - w[1] > worst {
                    worst = w[0] - w[1];
                    worst_x = *t;
                }
            }
            let status = if verdict.direction.is_nondecreasing() {
                OrderStatus::Certified
            } else {
                OrderStatus::Refuted
            };
            Ok(OrderCertificate {
                order,
                status,
                worst_x,
                worst_violation: worst,
            })
        }
    }
}

/// `∫ u (ln u + 1) = m1 - H`: non-positive on ICRIE windows, non-negative on
/// DCRIE windows.
pub fn entropy_criterion(v: &TruncatedView) -> Result<f64> {
    v.integrate(|x| {
        let u = v.u(x);
        xlogx(u) + u
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub base: EntropyShape,
    pub transformed: EntropyShape,
    /// Criterion values on the base grid windows.
    pub base_criterion: Vec<f64>,
    /// Criterion values on the mapped windows.
    pub transformed_criterion: Vec<f64>,
    /// Transformed verdict matches the base verdict and the criterion signs
    /// agree with it.
    pub preserved: bool,
}

/// Checks that an increasing map carries the base verdict to `φ(X)`, mapping
/// the `τ1` grid and `τ2` through `φ`.
pub fn closure_probe(
    dist: &Dist,
    map: &MonotoneMap,
    tau2: f64,
    tau1_grid: &[f64],
    cfg: QuadratureConfig,
) -> Result<ClosureReport> {
    let base = certify_icrie_dcrie(dist, tau2, tau1_grid, cfg)?;
    let y: Dist = std::sync::Arc::new(MonotoneTransform::new(dist.clone(), map.clone()));
    let ty2 = map.apply(tau2);
    let ygrid: Vec<f64> = tau1_grid.iter().map(|&t| map.apply(t)).collect();
    let transformed = certify_icrie_dcrie(&y, ty2, &ygrid, cfg)?;
    let criterion = |d: &Dist, t2: f64, grid: &[f64]| -> Result<Vec<f64>> {
        grid.par_iter()
            .map(|&t1| entropy_criterion(&TruncatedView::with_config(d.clone(), Window::new(t1, t2)?, cfg)?))
            .collect()
    };
    let base_criterion = criterion(dist, tau2, tau1_grid)?;
    let transformed_criterion = criterion(&y, ty2, &ygrid)?;
    let tol = 1e-8;
    let signs_ok = |vals: &[f64], shape: EntropyShape| match shape {
        EntropyShape::Dcrie => vals.iter().all(|&c| c >= -tol),
        EntropyShape::Icrie => vals.iter().all(|&c| c <= tol),
        EntropyShape::Constant => vals.iter().all(|&c| c.abs() <= tol),
        EntropyShape::Inconclusive => false,
    };
    let preserved = base.verdict != EntropyShape::Inconclusive
        && transformed.verdict == base.verdict
        && signs_ok(&base_criterion, base.verdict)
        && signs_ok(&transformed_criterion, transformed.verdict);
    Ok(ClosureReport {
        base: base.verdict,
        transformed: transformed.verdict,
        base_criterion,
        transformed_criterion,
        preserved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::parse_distribution;

    fn d(s: &str) -> Dist {
        parse_distribution(s).unwrap()
    }

    #[test]
    fn scan_examples() {
        assert_eq!(scan_monotone(|x| x, 0.0, 1.0, 11).unwrap().direction, Direction::Increasing);
        assert_eq!(scan_monotone(|_| 3.0, 0.0, 1.0, 11).unwrap().direction, Direction::Constant);
        assert_eq!(
            scan_monotone(|x| (x - 0.5).powi(2), 0.0, 1.0, 11).unwrap().direction,
            Direction::Mixed
        );
        assert_eq!(scan_monotone(|x| -x, 0.0, 1.0, 11).unwrap().direction, Direction::Decreasing);
        assert!(matches!(
            scan_monotone(|x| 1.0 / (x - 0.5), 0.0, 1.0, 3),
            Err(Error::NonFiniteSample { .. })
        ));
        assert!(scan_monotone(|x| x, 0.0, 1.0, 2).is_err());
    }

    #[test]
    fn aging_classes() {
        assert_eq!(classify_aging(&d("exp:2")).unwrap().hazard, AgingClass::Constant);
        let lomax = classify_aging(&d("lomax:2,1")).unwrap();
        assert_eq!(lomax.hazard, AgingClass::Dfr);
        assert_eq!(lomax.mrl, MrlClass::Imrl);
        assert_eq!(lomax.expectation, ExpectationClass::Nwue);
        let uni = classify_aging(&d("uniform:1")).unwrap();
        assert_eq!(uni.hazard, AgingClass::Ifr);
        assert_eq!(uni.mrl, MrlClass::Dmrl);
        assert_eq!(uni.expectation, ExpectationClass::Nbue);
    }

    #[test]
    fn exponential_is_dcrie_at_finite_tau2() {
        let grid: Vec<f64> = (3..=9).map(f64::from).collect();
        let c = certify_icrie_dcrie(&d("exp:1"), 10.0, &grid, QuadratureConfig::default()).unwrap();
        assert_eq!(c.verdict, EntropyShape::Dcrie);
        assert!(c.derivative_agrees);
        assert_eq!(c.require().unwrap(), EntropyShape::Dcrie);
    }

    #[test]
    fn uniform_and_beta_one_agree() {
        let grid = linspace(0.0, 0.8, 9);
        let a = certify_icrie_dcrie(&d("uniform:1"), 0.9, &grid, QuadratureConfig::default()).unwrap();
        let b = certify_icrie_dcrie(&d("betac:1"), 0.9, &grid, QuadratureConfig::default()).unwrap();
        assert_eq!(a.verdict, EntropyShape::Dcrie);
        assert_eq!(b.verdict, a.verdict);
    }

    #[test]
    fn exponential_open_window_is_constant() {
        let grid = linspace(0.0, 3.0, 7);
        let c = certify_icrie_dcrie(&d("exp:1"), f64::INFINITY, &grid, QuadratureConfig::default()).unwrap();
        assert_eq!(c.verdict, EntropyShape::Constant);
    }

    #[test]
    fn derivative_identity_holds() {
        let v = TruncatedView::new(d("lomax:3,1"), Window::new(0.4, 2.5).unwrap()).unwrap();
        let chk = derivative_identity(&v).unwrap().unwrap();
        assert!(chk.agrees, "{chk:?}");
        let narrow = TruncatedView::new(d("exp:1"), Window::new(1.0, 1.0005).unwrap()).unwrap();
        assert!(derivative_identity(&narrow).unwrap().is_none());
    }

    #[test]
    fn order_checks() {
        let (x, y) = (d("exp:2"), d("exp:1"));
        let g = order_grid(&x, &y, DEFAULT_SCAN_POINTS);
        for o in [StochasticOrder::Lr, StochasticOrder::Hr, StochasticOrder::St] {
            assert_eq!(check_order(&x, &y, o, &g).unwrap().status, OrderStatus::Certified);
            assert_eq!(check_order(&y, &x, o, &g).unwrap().status, OrderStatus::Refuted);
            assert_eq!(check_order(&x, &x, o, &g).unwrap().status, OrderStatus::Certified);
        }
    }

    #[test]
    fn closure_under_affine_and_convex_maps() {
        let grid: Vec<f64> = linspace(0.5, 4.0, 8);
        let base = d("exp:1");
        let r = closure_probe(&base, &MonotoneMap::affine(2.0, 3.0).unwrap(), 5.0, &grid, QuadratureConfig::default()).unwrap();
        assert_eq!(r.base, EntropyShape::Dcrie);
        assert!(r.preserved, "{r:?}");
        // X^2 is not DCRIE at τ2 = 25: H rises on τ1 ∈ (0.01, 4) and H > m1 there
        let r = closure_probe(&base, &MonotoneMap::power(2.0).unwrap(), 5.0, &grid, QuadratureConfig::default()).unwrap();
        assert_eq!(r.base, EntropyShape::Dcrie);
        assert_eq!(r.transformed, EntropyShape::Inconclusive);
        assert!(!r.preserved);
        assert!(r.transformed_criterion[0] < -1.0, "{r:?}");
        // a concave map keeps this example DCRIE
        let r = closure_probe(&base, &MonotoneMap::power(0.5).unwrap(), 5.0, &grid, QuadratureConfig::default()).unwrap();
        assert!(r.preserved, "{r:?}");
    }

    #[test]
    fn criterion_sign_for_uniform() {
        // u linear: ∫ u (ln u + 1) = w (1/2 - 1/4) = w / 4 > 0
        let v = TruncatedView::new(d("uniform:1"), Window::new(0.2, 0.6).unwrap()).unwrap();
        assert!((entropy_criterion(&v).unwrap() - 0.1).abs() < 1e-10);
    }

    #[test]
    fn gfr_and_mrl_scans_are_dual() {
        for (s, a, b) in [("exp:1", 0.0, 2.0), ("lomax:2,1", 0.0, f64::INFINITY), ("uniform:1", 0.1, 0.9)] {
            let v = TruncatedView::new(d(s), Window::new(a, b).unwrap()).unwrap();
            let h = scan_gfr(&v, 65).unwrap().direction;
            let m = scan_mrl(&v, 65).unwrap().direction;
            if h.is_nondecreasing() {
                assert!(m.is_nonincreasing(), "{s}: {h:?} {m:?}");
            }
            if h.is_nonincreasing() {
                assert!(m.is_nondecreasing(), "{s}: {h:?} {m:?}");
            }
        }
    }
}
