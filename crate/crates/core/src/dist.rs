//! Continuous lifetime distributions.
//!
//! [`Distribution`] is the evaluator every analytic routine consumes. The five
//! parametric families have closed-form survival, density, quantile and
//! partial-expectation functions; the derived constructions ([`Equilibrium`],
//! [`TiltPof`], [`MonotoneTransform`], [`Empirical`]) wrap another evaluator.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimation::SampleData;
use crate::quadrature::{quad, QuadratureConfig};

/// Shared, immutable handle to a distribution.
pub type Dist = Arc<dyn Distribution>;

pub trait Distribution: Send + Sync + fmt::Debug {
    /// `P(X > x)`; clamps to 1 below the support and 0 above it.
    fn survival(&self, x: f64) -> f64;

    fn pdf(&self, x: f64) -> f64;

    /// `(lo, hi)`, `hi` possibly `+inf`.
    fn support(&self) -> (f64, f64);

    fn cdf(&self, x: f64) -> f64 {
        1.0 - self.survival(x)
    }

    fn quantile(&self, q: f64) -> f64 {
        bisect_quantile(self, q)
    }

    /// `∫_x^hi F̄(t) dt` for `x` in the support.
    fn integrated_survival(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        let x = x.max(lo);
        if x >= hi {
            return 0.0;
        }
        quad(|t| self.survival(t), x, hi, &fine_cfg()).unwrap_or(f64::INFINITY)
    }

    fn mean(&self) -> f64 {
        let (lo, _) = self.support();
        lo + self.integrated_survival(lo)
    }

    fn second_moment(&self) -> f64 {
        let (lo, hi) = self.support();
        let tail = quad(|t| 2.0 * t * self.survival(t), lo, hi, &fine_cfg());
        match tail {
            Ok(v) => lo * lo + v,
            Err(_) => f64::INFINITY,
        }
    }

    /// Polynomial tail index `α` when `F̄(x) ~ x^-α`; `None` for light tails.
    fn tail_index(&self) -> Option<f64> {
        None
    }

    /// Compact text form (see [`DistExpr`]).
    fn label(&self) -> String;
}

fn fine_cfg() -> QuadratureConfig {
    QuadratureConfig {
        abs_tol: 1e-13,
        rel_tol: 1e-12,
        max_subdivisions: 4000,
    }
}

/// Generalized inverse by bisection on the cdf.
pub fn bisect_quantile<D: Distribution + ?Sized>(d: &D, q: f64) -> f64 {
    let (lo, hi) = d.support();
    if q <= 0.0 {
        return lo;
    }
    if q >= 1.0 {
        return hi;
    }
    let mut a = lo;
    let mut b = if hi.is_finite() {
        hi
    } else {
        let mut b = lo + 1.0;
        let mut step = 1.0;
        while d.cdf(b) < q && b.is_finite() {
            step *= 2.0;
            b = lo + step;
        }
        b
    };
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if d.cdf(m) < q {
            a = m;
        } else {
            b = m;
        }
    }
    b
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

/// Parametric families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum DistributionSpec {
    /// Uniform on `[0, b]`.
    Uniform { b: f64 },
    Exponential { rate: f64 },
    /// Survival `1 - (x/b)^a` on `[0, b]`.
    Power { a: f64, b: f64 },
    /// Beta(c, 1): survival `1 - x^c` on `[0, 1]`.
    BetaC { c: f64 },
    /// Survival `(λ / (λ + x))^α`.
    Lomax { alpha: f64, lambda: f64 },
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Uniform { b } => check_positive("uniform b", b),
            Self::Exponential { rate } => check_positive("exponential rate", rate),
            Self::Power { a, b } => {
                check_positive("power shape a", a)?;
                check_positive("power scale b", b)
            }
            Self::BetaC { c } => check_positive("beta shape c", c),
            Self::Lomax { alpha, lambda } => {
                check_positive("lomax shape alpha", alpha)?;
                check_positive("lomax scale lambda", lambda)
            }
        }
    }
}

/// Builds the evaluator for a parametric family.
pub fn make_distribution(spec: DistributionSpec) -> Result<Dist> {
    Ok(Arc::new(Parametric::new(spec)?))
}

/// Validated parametric distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parametric(DistributionSpec);

impl Parametric {
    pub fn new(spec: DistributionSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Self(spec))
    }

    pub fn spec(&self) -> DistributionSpec {
        self.0
    }

    // Power and BetaC share one closed form.
    fn power_params(&self) -> Option<(f64, f64)> {
        match self.0 {
            DistributionSpec::Power { a, b } => Some((a, b)),
            DistributionSpec::BetaC { c } => Some((c, 1.0)),
            _ => None,
        }
    }
}

impl Distribution for Parametric {
    fn survival(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x <= lo {
            return 1.0;
        }
        if x >= hi {
            return 0.0;
        }
        if let Some((a, b)) = self.power_params() {
            return -(a * (x / b).ln()).exp_m1();
        }
        match self.0 {
            DistributionSpec::Uniform { b } => 1.0 - x / b,
            DistributionSpec::Exponential { rate } => (-rate * x).exp(),
            DistributionSpec::Lomax { alpha, lambda } => (lambda / (lambda + x)).powf(alpha),
            _ => unreachable!(),
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x <= lo {
            return 0.0;
        }
        if x >= hi {
            return 1.0;
        }
        if let Some((a, b)) = self.power_params() {
            return (x / b).powf(a);
        }
        match self.0 {
            DistributionSpec::Uniform { b } => x / b,
            DistributionSpec::Exponential { rate } => -(-rate * x).exp_m1(),
            DistributionSpec::Lomax { alpha, lambda } => -(alpha * (-x / (lambda + x)).ln_1p()).exp_m1(),
            _ => unreachable!(),
        }
    }

    fn pdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x < lo || x > hi {
            return 0.0;
        }
        if let Some((a, b)) = self.power_params() {
            return a / b * (x / b).powf(a - 1.0);
        }
        match self.0 {
            DistributionSpec::Uniform { b } => 1.0 / b,
            DistributionSpec::Exponential { rate } => rate * (-rate * x).exp(),
            DistributionSpec::Lomax { alpha, lambda } => {
                alpha / lambda * (lambda / (lambda + x)).powf(alpha + 1.0)
            }
            _ => unreachable!(),
        }
    }

    fn support(&self) -> (f64, f64) {
        match self.0 {
            DistributionSpec::Uniform { b } => (0.0, b),
            DistributionSpec::Power { b, .. } => (0.0, b),
            DistributionSpec::BetaC { .. } => (0.0, 1.0),
            DistributionSpec::Exponential { .. } | DistributionSpec::Lomax { .. } => {
                (0.0, f64::INFINITY)
            }
        }
    }

    fn quantile(&self, q: f64) -> f64 {
        let (lo, hi) = self.support();
        if q <= 0.0 {
            return lo;
        }
        if q >= 1.0 {
            return hi;
        }
        if let Some((a, b)) = self.power_params() {
            return b * q.powf(1.0 / a);
        }
        match self.0 {
            DistributionSpec::Uniform { b } => q * b,
            DistributionSpec::Exponential { rate } => -(-q).ln_1p() / rate,
            DistributionSpec::Lomax { alpha, lambda } => {
                lambda * ((-(-q).ln_1p() / alpha).exp_m1())
            }
            _ => unreachable!(),
        }
    }

    fn integrated_survival(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        let x = x.max(lo);
        if x >= hi {
            return 0.0;
        }
        if let Some((a, b)) = self.power_params() {
            return (b - x) - b / (a + 1.0) * (1.0 - (x / b).powf(a + 1.0));
        }
        match self.0 {
            DistributionSpec::Uniform { b } => (b - x) * (b - x) / (2.0 * b),
            DistributionSpec::Exponential { rate } => (-rate * x).exp() / rate,
            DistributionSpec::Lomax { alpha, lambda } => {
                if alpha <= 1.0 {
                    f64::INFINITY
                } else {
                    lambda / (alpha - 1.0) * (lambda / (lambda + x)).powf(alpha - 1.0)
                }
            }
            _ => unreachable!(),
        }
    }

    fn mean(&self) -> f64 {
        self.integrated_survival(0.0)
    }

    fn second_moment(&self) -> f64 {
        if let Some((a, b)) = self.power_params() {
            return a * b * b / (a + 2.0);
        }
        match self.0 {
            DistributionSpec::Uniform { b } => b * b / 3.0,
            DistributionSpec::Exponential { rate } => 2.0 / (rate * rate),
            DistributionSpec::Lomax { alpha, lambda } => {
                if alpha <= 2.0 {
                    f64::INFINITY
                } else {
                    2.0 * lambda * lambda / ((alpha - 1.0) * (alpha - 2.0))
                }
            }
            _ => unreachable!(),
        }
    }

    fn tail_index(&self) -> Option<f64> {
        match self.0 {
            DistributionSpec::Lomax { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    fn label(&self) -> String {
        DistExpr::Param(self.0).to_string()
    }
}

/// Equilibrium (stationary-renewal) distribution: density `F̄(x) / E(X)` on `[0, hi)`.
#[derive(Debug, Clone)]
pub struct Equilibrium {
    base: Dist,
    base_mean: f64,
}

impl Equilibrium {
    pub fn new(base: Dist) -> Result<Self> {
        let (lo, _) = base.support();
        if lo < 0.0 {
            return Err(Error::InvalidParameter(
                "equilibrium requires a non-negative lifetime".into(),
            ));
        }
        if base.tail_index().is_some_and(|a| a <= 1.0) {
            return Err(Error::InfiniteMean);
        }
        let base_mean = base.mean();
        if !base_mean.is_finite() {
            return Err(Error::InfiniteMean);
        }
        Ok(Self { base, base_mean })
    }

    // ∫_x^∞ F̄_base, with F̄_base = 1 below the base support.
    fn base_tail(&self, x: f64) -> f64 {
        let (lo, _) = self.base.support();
        (lo - x).max(0.0) + self.base.integrated_survival(x.max(lo))
    }
}

pub fn equilibrium_of(base: Dist) -> Result<Dist> {
    Ok(Arc::new(Equilibrium::new(base)?))
}

impl Distribution for Equilibrium {
    fn survival(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        (self.base_tail(x) / self.base_mean).clamp(0.0, 1.0)
    }

    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        self.base.survival(x) / self.base_mean
    }

    fn support(&self) -> (f64, f64) {
        (0.0, self.base.support().1)
    }

    fn mean(&self) -> f64 {
        self.base.second_moment() / (2.0 * self.base_mean)
    }

    fn tail_index(&self) -> Option<f64> {
        self.base.tail_index().map(|a| a - 1.0)
    }

    fn label(&self) -> String {
        format!("equilibrium({})", self.base.label())
    }
}

/// Proportional-odds tilt: survival `p F̄ / (1 - (1 - p) F̄)`.
#[derive(Debug, Clone)]
pub struct TiltPof {
    base: Dist,
    p: f64,
}

impl TiltPof {
    pub fn new(base: Dist, p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "tilt parameter must lie in (0, 1), got {p}"
            )));
        }
        Ok(Self { base, p })
    }

    pub fn tilt(&self) -> f64 {
        self.p
    }
}

pub fn tilt_pof(base: Dist, p: f64) -> Result<Dist> {
    Ok(Arc::new(TiltPof::new(base, p)?))
}

impl Distribution for TiltPof {
    fn survival(&self, x: f64) -> f64 {
        let s = self.base.survival(x);
        self.p * s / (1.0 - (1.0 - self.p) * s)
    }

    fn cdf(&self, x: f64) -> f64 {
        let s = self.base.survival(x);
        self.base.cdf(x) / (1.0 - (1.0 - self.p) * s)
    }

    fn pdf(&self, x: f64) -> f64 {
        let s = self.base.survival(x);
        let d = 1.0 - (1.0 - self.p) * s;
        self.p * self.base.pdf(x) / (d * d)
    }

    fn support(&self) -> (f64, f64) {
        self.base.support()
    }

    fn quantile(&self, q: f64) -> f64 {
        if q <= 0.0 || q >= 1.0 {
            return self.base.quantile(q);
        }
        // invert the odds map: G = 1 - q  <=>  F̄ = G / (p + (1 - p) G)
        let g = 1.0 - q;
        let s = g / (self.p + (1.0 - self.p) * g);
        self.base.quantile(1.0 - s)
    }

    fn tail_index(&self) -> Option<f64> {
        self.base.tail_index()
    }

    fn label(&self) -> String {
        format!("tilt({};{})", self.base.label(), self.p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapKind {
    Affine { a: f64, b: f64 },
    Power { k: f64 },
    Custom,
}

/// An increasing, differentiable map `φ` with its derivative and inverse.
#[derive(Clone)]
pub struct MonotoneMap {
    kind: MapKind,
    phi: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    dphi: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    inv: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneMap").field("kind", &self.kind).finish()
    }
}

impl MonotoneMap {
    /// `φ(x) = a x + b`.
    pub fn affine(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidParameter("affine map needs finite a, b".into()));
        }
        if a <= 0.0 {
            return Err(Error::NonMonotoneTransform { x: 0.0, derivative: a });
        }
        Ok(Self {
            kind: MapKind::Affine { a, b },
            phi: Arc::new(move |x| a * x + b),
            dphi: Arc::new(move |_| a),
            inv: Arc::new(move |y| (y - b) / a),
        })
    }

    /// `φ(x) = x^k` on `[0, ∞)`; convex for `k ≥ 1`.
    pub fn power(k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "power map exponent must be positive, got {k}"
            )));
        }
        Ok(Self {
            kind: MapKind::Power { k },
            phi: Arc::new(move |x: f64| x.max(0.0).powf(k)),
            dphi: Arc::new(move |x: f64| k * x.max(0.0).powf(k - 1.0)),
            inv: Arc::new(move |y: f64| y.max(0.0).powf(1.0 / k)),
        })
    }

    /// Arbitrary map; monotonicity is probed where it is used.
    pub fn custom(
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        dphi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        inv: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            kind: MapKind::Custom,
            phi: Arc::new(phi),
            dphi: Arc::new(dphi),
            inv: Arc::new(inv),
        }
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn apply(&self, x: f64) -> f64 {
        if x == f64::INFINITY {
            return f64::INFINITY;
        }
        (self.phi)(x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (self.dphi)(x)
    }

    pub fn inverse(&self, y: f64) -> f64 {
        if y == f64::INFINITY {
            return f64::INFINITY;
        }
        (self.inv)(y)
    }
}

/// Distribution of `Y = φ(X)` for increasing `φ`.
#[derive(Debug, Clone)]
pub struct MonotoneTransform {
    base: Dist,
    map: MonotoneMap,
}

impl MonotoneTransform {
    pub fn new(base: Dist, map: MonotoneMap) -> Self {
        Self { base, map }
    }

    pub fn map(&self) -> &MonotoneMap {
        &self.map
    }

    pub fn base(&self) -> &Dist {
        &self.base
    }
}

pub fn affine(base: Dist, a: f64, b: f64) -> Result<Dist> {
    Ok(Arc::new(MonotoneTransform::new(base, MonotoneMap::affine(a, b)?)))
}

impl Distribution for MonotoneTransform {
    fn survival(&self, y: f64) -> f64 {
        let (lo, hi) = self.support();
        if y <= lo {
            return 1.0;
        }
        if y >= hi {
            return 0.0;
        }
        self.base.survival(self.map.inverse(y))
    }

    fn cdf(&self, y: f64) -> f64 {
        let (lo, hi) = self.support();
        if y <= lo {
            return 0.0;
        }
        if y >= hi {
            return 1.0;
        }
        self.base.cdf(self.map.inverse(y))
    }

    fn pdf(&self, y: f64) -> f64 {
        let (lo, hi) = self.support();
        if y < lo || y > hi {
            return 0.0;
        }
        let x = self.map.inverse(y);
        self.base.pdf(x) / self.map.derivative(x)
    }

    fn support(&self) -> (f64, f64) {
        let (lo, hi) = self.base.support();
        (self.map.apply(lo), self.map.apply(hi))
    }

    fn quantile(&self, q: f64) -> f64 {
        self.map.apply(self.base.quantile(q))
    }

    fn mean(&self) -> f64 {
        match self.map.kind {
            MapKind::Affine { a, b } => a * self.base.mean() + b,
            _ => {
                let (lo, _) = self.support();
                lo + self.integrated_survival(lo)
            }
        }
    }

    fn tail_index(&self) -> Option<f64> {
        match self.map.kind {
            MapKind::Affine { .. } => self.base.tail_index(),
            MapKind::Power { k } => self.base.tail_index().map(|a| a / k),
            MapKind::Custom => None,
        }
    }

    fn label(&self) -> String {
        match self.map.kind {
            MapKind::Affine { a, b } => format!("affine({};{},{})", self.base.label(), a, b),
            MapKind::Power { k } => format!("pow({};{})", self.base.label(), k),
            MapKind::Custom => format!("transform({})", self.base.label()),
        }
    }
}

/// Right-continuous empirical distribution of a sample. The density is
/// reported as zero (the a.e. derivative of the step survival).
#[derive(Debug, Clone)]
pub struct Empirical {
    sample: SampleData,
}

impl Empirical {
    pub fn new(sample: SampleData) -> Self {
        Self { sample }
    }

    pub fn sample(&self) -> &SampleData {
        &self.sample
    }
}

impl Distribution for Empirical {
    fn survival(&self, x: f64) -> f64 {
        self.sample.survival(x)
    }

    fn cdf(&self, x: f64) -> f64 {
        let v = self.sample.values();
        v.partition_point(|&s| s <= x) as f64 / v.len() as f64
    }

    fn pdf(&self, _x: f64) -> f64 {
        0.0
    }

    fn support(&self) -> (f64, f64) {
        let v = self.sample.values();
        (v[0], v[v.len() - 1])
    }

    /// Left-continuous inverse `inf{x : F_n(x) >= q}`.
    fn quantile(&self, q: f64) -> f64 {
        let v = self.sample.values();
        let n = v.len();
        if q <= 0.0 {
            return v[0];
        }
        let k = ((q * n as f64).ceil() as usize).clamp(1, n);
        v[k - 1]
    }

    fn integrated_survival(&self, x: f64) -> f64 {
        let v = self.sample.values();
        let start = v.partition_point(|&s| s <= x);
        v[start..].iter().map(|&s| s - x).sum::<f64>() / v.len() as f64
    }

    fn second_moment(&self) -> f64 {
        let v = self.sample.values();
        v.iter().map(|s| s * s).sum::<f64>() / v.len() as f64
    }

    fn label(&self) -> String {
        format!("empirical(n={})", self.sample.len())
    }
}

/// Text form of a distribution, as accepted by the CLI:
/// `exp:0.5`, `uniform:1`, `power:0.1,0.9`, `betac:0.2`, `lomax:2,1`,
/// `equilibrium(exp:1)`, `tilt(exp:1;0.5)`, `affine(exp:1;2,3)`.
#[derive(Debug, Clone, PartialEq)]
pub enum DistExpr {
    Param(DistributionSpec),
    Equilibrium(Box<DistExpr>),
    Tilt(Box<DistExpr>, f64),
    Affine(Box<DistExpr>, f64, f64),
}

impl DistExpr {
    pub fn build(&self) -> Result<Dist> {
        match self {
            Self::Param(spec) => make_distribution(*spec),
            Self::Equilibrium(inner) => equilibrium_of(inner.build()?),
            Self::Tilt(inner, p) => tilt_pof(inner.build()?, *p),
            Self::Affine(inner, a, b) => affine(inner.build()?, *a, *b),
        }
    }
}

fn parse_num(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}

fn parse_nums(s: &str, n: usize, what: &str) -> Result<Vec<f64>> {
    let v = s.split(',').map(parse_num).collect::<Result<Vec<_>>>()?;
    if v.len() != n {
        return Err(Error::Parse(format!(
            "{what} takes {n} parameter(s), got {}",
            v.len()
        )));
    }
    Ok(v)
}

// Splits `inner;args` at the last `;` outside parentheses.
fn split_args(s: &str) -> Result<(&str, &str)> {
    let mut depth = 0i32;
    let mut cut = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => cut = Some(i),
            _ => {}
        }
    }
    let i = cut.ok_or_else(|| Error::Parse(format!("expected ';' in {s:?}")))?;
    Ok((&s[..i], &s[i + 1..]))
}

impl FromStr for DistExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(open) = s.find('(') {
            let head = s[..open].trim().to_ascii_lowercase();
            let body = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
            return match head.as_str() {
                "equilibrium" | "eq" => Ok(Self::Equilibrium(Box::new(body.parse()?))),
                "tilt" => {
                    let (inner, p) = split_args(body)?;
                    Ok(Self::Tilt(Box::new(inner.parse()?), parse_num(p)?))
                }
                "affine" => {
                    let (inner, ab) = split_args(body)?;
                    let ab = parse_nums(ab, 2, "affine")?;
                    Ok(Self::Affine(Box::new(inner.parse()?), ab[0], ab[1]))
                }
                other => Err(Error::Parse(format!("unknown construction {other:?}"))),
            };
        }
        let (name, params) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected family:params, got {s:?}")))?;
        let spec = match name.trim().to_ascii_lowercase().as_str() {
            "exp" | "exponential" => DistributionSpec::Exponential {
                rate: parse_nums(params, 1, "exp")?[0],
            },
            "uniform" | "unif" => DistributionSpec::Uniform {
                b: parse_nums(params, 1, "uniform")?[0],
            },
            "power" | "pd" => {
                let v = parse_nums(params, 2, "power")?;
                DistributionSpec::Power { a: v[0], b: v[1] }
            }
            "betac" | "beta" => DistributionSpec::BetaC {
                c: parse_nums(params, 1, "betac")?[0],
            },
            "lomax" => {
                let v = parse_nums(params, 2, "lomax")?;
                DistributionSpec::Lomax {
                    alpha: v[0],
                    lambda: v[1],
                }
            }
            other => return Err(Error::Parse(format!("unknown family {other:?}"))),
        };
        Ok(Self::Param(spec))
    }
}

impl fmt::Display for DistExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Param(DistributionSpec::Uniform { b }) => write!(f, "uniform:{b}"),
            Self::Param(DistributionSpec::Exponential { rate }) => write!(f, "exp:{rate}"),
            Self::Param(DistributionSpec::Power { a, b }) => write!(f, "power:{a},{b}"),
            Self::Param(DistributionSpec::BetaC { c }) => write!(f, "betac:{c}"),
            Self::Param(DistributionSpec::Lomax { alpha, lambda }) => {
                write!(f, "lomax:{alpha},{lambda}")
            }
            Self::Equilibrium(inner) => write!(f, "equilibrium({inner})"),
            Self::Tilt(inner, p) => write!(f, "tilt({inner};{p})"),
            Self::Affine(inner, a, b) => write!(f, "affine({inner};{a},{b})"),
        }
    }
}

/// Parses and builds in one step.
pub fn parse_distribution(s: &str) -> Result<Dist> {
    s.parse::<DistExpr>()?.build()
}
