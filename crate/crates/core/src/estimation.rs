//! Plug-in estimation from i.i.d. samples.
//!
//! The empirical CRIE is evaluated exactly on the step survival function, so
//! no quadrature is involved. The goodness-of-fit statistic compares the
//! empirical truncated survival with a fully specified hypothesized one, and
//! its null distribution is calibrated by a parametric bootstrap.
//!
//! The bootstrap is this crate's own construction: replicate `r` draws its
//! sample by inverse-cdf sampling from a ChaCha20 generator seeded with
//! `seed` and switched to stream `r`, so serial and parallel runs produce
//! identical results and the stream is stable across releases.

use std::io::BufRead;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::quadrature::xlogx;
use crate::truncation::{TruncatedView, Window};

/// Sorted finite observations, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleData {
    values: Vec<f64>,
}

impl SampleData {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientData("empty sample".into()));
        }
        if let Some((i, &v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteSample { x: i as f64, value: v });
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    /// Newline-delimited decimals. Blank lines are skipped; anything else
    /// that does not parse is an error carrying its 1-based line number.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_reader(text.as_bytes())
    }

    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut values = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::DataLine {
                line: i + 1,
                message: e.to_string(),
            })?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let v = t.parse::<f64>().map_err(|_| Error::DataLine {
                line: i + 1,
                message: format!("not a number: {t:?}"),
            })?;
            if !v.is_finite() {
                return Err(Error::DataLine {
                    line: i + 1,
                    message: format!("non-finite value {t:?}"),
                });
            }
            values.push(v);
        }
        Self::new(values)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_reader(std::io::BufReader::new(file))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn count_above(&self, x: f64) -> usize {
        self.values.len() - self.values.partition_point(|&v| v <= x)
    }

    fn count_at_or_above(&self, x: f64) -> usize {
        self.values.len() - self.values.partition_point(|&v| v < x)
    }

    /// Right-continuous empirical survival `#{X_i > x} / n`.
    pub fn survival(&self, x: f64) -> f64 {
        self.count_above(x) as f64 / self.values.len() as f64
    }

    /// Left limit `#{X_i ≥ x} / n`.
    pub fn survival_left(&self, x: f64) -> f64 {
        self.count_at_or_above(x) as f64 / self.values.len() as f64
    }
}

/// Empirical truncated survival on a window, as a step function.
struct Steps {
    // breakpoints x_0 = τ1 < x_1 < ... < x_k, value p_i on [x_i, x_{i+1})
    knots: Vec<f64>,
    levels: Vec<f64>,
}

fn empirical_steps(s: &SampleData, window: Window) -> Result<Steps> {
    let (t1, t2) = (window.tau1, window.tau2);
    let top = s.count_at_or_above(t1);
    let bottom = if window.is_finite() { s.count_above(t2) } else { 0 };
    let inside: Vec<f64> = {
        let mut v: Vec<f64> = s
            .values()
            .iter()
            .copied()
            .filter(|&x| x > t1 && x < t2)
            .collect();
        v.dedup();
        v
    };
    if inside.len() < 2 || top <= bottom {
        return Err(Error::InsufficientData(format!(
            "need at least 2 distinct observations inside {window}, found {}",
            inside.len()
        )));
    }
    let denom = (top - bottom) as f64;
    let mut knots = Vec::with_capacity(inside.len() + 2);
    let mut levels = Vec::with_capacity(inside.len() + 1);
    knots.push(t1);
    levels.push((s.count_above(t1) - bottom) as f64 / denom);
    for &x in &inside {
        knots.push(x);
        levels.push((s.count_above(x) - bottom) as f64 / denom);
    }
    // the last level is 0 once every observation in the window is passed
    knots.push(if window.is_finite() { t2 } else { *inside.last().unwrap() });
    Ok(Steps { knots, levels })
}

/// Plug-in CRIE: Definition applied to the empirical survival, evaluated
/// exactly on the step function. The denominator uses `F̄_n(τ1-)`, so an
/// observation sitting exactly at `τ1` stays in the window.
pub fn empirical_crie(s: &SampleData, window: Window) -> Result<f64> {
    let steps = empirical_steps(s, window)?;
    let h: f64 = steps
        .levels
        .iter()
        .zip(steps.knots.windows(2))
        .map(|(&p, k)| -(k[1] - k[0]) * xlogx(p))
        .sum();
    Ok(h.max(0.0))
}

/// Plug-in mean residual lifetime on the window.
pub fn empirical_m1(s: &SampleData, window: Window) -> Result<f64> {
    let steps = empirical_steps(s, window)?;
    Ok(steps
        .levels
        .iter()
        .zip(steps.knots.windows(2))
        .map(|(&p, k)| (k[1] - k[0]) * p)
        .sum())
}

/// Subcells per empirical step at which the hypothesized survival is sampled.
pub const DEFAULT_REFINEMENT: usize = 8;

/// Divergence between the empirical and hypothesized truncated survivals,
/// `Σ δ [p ln(p/q) - p + q]` over a refinement of the empirical steps with `q`
/// taken at cell midpoints. Every term is non-negative.
pub fn crikl_statistic(s: &SampleData, hypothesized: &Dist, window: Window) -> Result<f64> {
    crikl_statistic_refined(s, hypothesized, window, DEFAULT_REFINEMENT)
}

pub fn crikl_statistic_refined(
    s: &SampleData,
    hypothesized: &Dist,
    window: Window,
    refinement: usize,
) -> Result<f64> {
    let refinement = refinement.max(1);
    let steps = empirical_steps(s, window)?;
    let g = TruncatedView::new(hypothesized.clone(), window)?;
    let mut total = 0.0;
    for (&p, k) in steps.levels.iter().zip(steps.knots.windows(2)) {
        let delta = (k[1] - k[0]) / refinement as f64;
        for j in 0..refinement {
            let mid = k[0] + (j as f64 + 0.5) * delta;
            let q = g.u(mid);
            total += delta * divergence_term(p, q, mid)?;
        }
    }
    if !window.is_finite() {
        // p = 0 past the last observation; the term reduces to ∫ q
        let last = *steps.knots.last().unwrap();
        let tail = hypothesized.integrated_survival(last) / g.mass();
        if !tail.is_finite() {
            return Err(Error::InfiniteResult("hypothesized tail integral".into()));
        }
        total += tail;
    }
    Ok(total)
}

fn divergence_term(p: f64, q: f64, x: f64) -> Result<f64> {
    if p <= 0.0 {
        return Ok(q);
    }
    if q <= 0.0 {
        return Err(Error::DivergentDivergence { x });
    }
    Ok((p * (p / q).ln() - p + q).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofResult {
    pub statistic: f64,
    pub p_value: f64,
    pub replicates: usize,
    pub seed: u64,
}

impl GofResult {
    pub fn rejects(&self, alpha: f64) -> bool {
        self.p_value <= alpha
    }
}

/// Add-one bootstrap p-value `(1 + #{b ≥ observed}) / (R + 1)`.
pub fn bootstrap_p_value(observed: f64, replicates: &[f64]) -> f64 {
    let exceed = replicates.iter().filter(|&&b| b >= observed).count();
    (1 + exceed) as f64 / (replicates.len() + 1) as f64
}

/// `n` inverse-cdf draws from `dist`.
pub fn draw_sample<R: Rng>(dist: &Dist, n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| dist.quantile(rng.random::<f64>())).collect()
}

/// Generator for replicate `index` of a run seeded with `seed`.
pub fn replicate_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

// Redraws until the sample has enough points inside the window, matching the
// condition the observed sample already satisfies.
const MAX_REDRAWS: usize = 1000;

fn replicate_statistic(
    hypothesized: &Dist,
    window: Window,
    n: usize,
    seed: u64,
    index: u64,
) -> Result<f64> {
    let mut rng = replicate_rng(seed, index);
    for _ in 0..MAX_REDRAWS {
        let sample = SampleData::new(draw_sample(hypothesized, n, &mut rng))?;
        match crikl_statistic(&sample, hypothesized, window) {
            Err(Error::InsufficientData(_)) => continue,
            other => return other,
        }
    }
    Err(Error::InsufficientData(format!(
        "hypothesized distribution rarely places 2 points in {window}"
    )))
}

/// Bootstrap statistics for replicates `0..replicates`, in index order.
pub fn bootstrap_statistics(
    hypothesized: &Dist,
    window: Window,
    n: usize,
    replicates: usize,
    seed: u64,
    parallel: bool,
) -> Result<Vec<f64>> {
    let one = |r: usize| replicate_statistic(hypothesized, window, n, seed, r as u64);
    if parallel {
        (0..replicates).into_par_iter().map(one).collect()
    } else {
        (0..replicates).map(one).collect()
    }
}

/// Parametric-bootstrap test of `H0: X ~ hypothesized` on a window.
pub fn bootstrap_gof(
    s: &SampleData,
    hypothesized: &Dist,
    window: Window,
    replicates: usize,
    seed: u64,
) -> Result<GofResult> {
    if replicates < 99 {
        return Err(Error::InvalidParameter(format!(
            "at least 99 bootstrap replicates are required, got {replicates}"
        )));
    }
    let statistic = crikl_statistic(s, hypothesized, window)?;
    let boot = bootstrap_statistics(hypothesized, window, s.len(), replicates, seed, true)?;
    Ok(GofResult {
        statistic,
        p_value: bootstrap_p_value(statistic, &boot),
        replicates,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{parse_distribution, Empirical};
    use std::sync::Arc;

    fn w(a: f64, b: f64) -> Window {
        Window::new(a, b).unwrap()
    }

    #[test]
    fn sample_parsing() {
        let s = SampleData::parse("0.5\n\n0.25\n 1.5 \n").unwrap();
        assert_eq!(s.values(), &[0.25, 0.5, 1.5]);
        match SampleData::parse("1\n2\nabc\n") {
            Err(Error::DataLine { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(SampleData::parse("\n"), Err(Error::InsufficientData(_))));
        assert!(matches!(
            SampleData::new(vec![1.0, f64::NAN]),
            Err(Error::NonFiniteSample { .. })
        ));
    }

    #[test]
    fn empirical_survival_limits() {
        let s = SampleData::new(vec![1.0, 2.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.survival(2.0), 0.25);
        assert_eq!(s.survival_left(2.0), 0.75);
    }

    #[test]
    fn two_point_crie() {
        let s = SampleData::new(vec![0.25, 0.75]).unwrap();
        let h = empirical_crie(&s, w(0.0, 1.0)).unwrap();
        assert!((h - 0.5 * 0.5 * 2f64.ln()).abs() < 1e-15);
        assert!((h - 0.17329).abs() < 1e-5);
    }

    #[test]
    fn two_point_crie_matches_riemann_sum() {
        let s = SampleData::new(vec![0.1, 0.25, 0.4, 0.75, 0.9, 1.3]).unwrap();
        let win = w(0.2, 1.0);
        let n = 200_000;
        let denom = s.survival_left(0.2) - s.survival(1.0);
        let riemann: f64 = (0..n)
            .map(|i| {
                let x = 0.2 + (i as f64 + 0.5) * 0.8 / n as f64;
                let p = (s.survival(x) - s.survival(1.0)) / denom;
                -xlogx(p) * 0.8 / n as f64
            })
            .sum();
        assert!((empirical_crie(&s, win).unwrap() - riemann).abs() < 1e-4);
    }

    #[test]
    fn datum_at_left_end_stays_in_window() {
        let s = SampleData::new(vec![0.2, 0.5, 0.7]).unwrap();
        // left limit counts the datum at 0.2, so p starts below 1
        let h = empirical_crie(&s, w(0.2, 1.0)).unwrap();
        let expect = -(0.3 * xlogx(2.0 / 3.0) + 0.2 * xlogx(1.0 / 3.0));
        assert!((h - expect).abs() < 1e-15);
    }

    #[test]
    fn insufficient_data() {
        let s = SampleData::new(vec![2.0, 3.0, 4.0]).unwrap();
        assert!(matches!(empirical_crie(&s, w(0.0, 1.0)), Err(Error::InsufficientData(_))));
        let s = SampleData::new(vec![0.5, 0.5, 2.0]).unwrap();
        assert!(matches!(empirical_crie(&s, w(0.0, 1.0)), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn open_window_uses_last_observation() {
        let s = SampleData::new(vec![1.0, 2.0, 4.0]).unwrap();
        let h = empirical_crie(&s, w(0.0, f64::INFINITY)).unwrap();
        let expect = -(1.0 * xlogx(2.0 / 3.0) + 2.0 * xlogx(1.0 / 3.0));
        assert!((h - expect).abs() < 1e-15);
        assert!((empirical_m1(&s, w(0.0, f64::INFINITY)).unwrap() - 7.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn crikl_of_own_step_function_vanishes() {
        let s = SampleData::new(vec![0.1, 0.3, 0.35, 0.8, 1.7]).unwrap();
        let own: Dist = Arc::new(Empirical::new(s.clone()));
        let stat = crikl_statistic(&s, &own, w(0.0, 1.0)).unwrap();
        assert!(stat.abs() < 1e-15, "{stat}");
    }

    #[test]
    fn crikl_divergent_when_hypothesis_ends_early() {
        let s = SampleData::new(vec![0.2, 0.9, 1.5, 1.8]).unwrap();
        let g = parse_distribution("uniform:1").unwrap();
        assert!(matches!(
            crikl_statistic(&s, &g, w(0.0, 2.0)),
            Err(Error::DivergentDivergence { .. })
        ));
    }

    #[test]
    fn crikl_open_window_adds_tail() {
        let g = parse_distribution("exp:1").unwrap();
        let mut rng = replicate_rng(7, 0);
        let s = SampleData::new(draw_sample(&g, 2000, &mut rng)).unwrap();
        let stat = crikl_statistic(&s, &g, w(0.0, f64::INFINITY)).unwrap();
        assert!((0.0..0.01).contains(&stat), "{stat}");
    }

    #[test]
    fn p_value_formula() {
        assert_eq!(bootstrap_p_value(0.0, &vec![1.0; 99]), 1.0);
        assert_eq!(bootstrap_p_value(2.0, &vec![1.0; 99]), 0.01);
        assert_eq!(bootstrap_p_value(1.0, &[0.5, 1.0, 2.0]), 0.75);
    }

    #[test]
    fn replicate_count_checked() {
        let s = SampleData::new(vec![0.1, 0.5, 0.9]).unwrap();
        let g = parse_distribution("uniform:1").unwrap();
        assert!(bootstrap_gof(&s, &g, w(0.0, 1.0), 50, 1).is_err());
    }

    #[test]
    fn serial_and_parallel_bootstrap_agree() {
        let g = parse_distribution("exp:1").unwrap();
        let a = bootstrap_statistics(&g, w(0.0, 2.0), 40, 64, 11, false).unwrap();
        let b = bootstrap_statistics(&g, w(0.0, 2.0), 40, 64, 11, true).unwrap();
        assert_eq!(a, b);
        let c = bootstrap_statistics(&g, w(0.0, 2.0), 40, 64, 12, true).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn gof_is_reproducible() {
        let g = parse_distribution("uniform:1").unwrap();
        let mut rng = replicate_rng(99, 5);
        let s = SampleData::new(draw_sample(&g, 60, &mut rng)).unwrap();
        let a = bootstrap_gof(&s, &g, w(0.0, 1.0), 99, 3).unwrap();
        let b = bootstrap_gof(&s, &g, w(0.0, 1.0), 99, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.p_value > 0.0 && a.p_value <= 1.0);
    }

    #[test]
    fn gof_detects_misspecification() {
        let truth = parse_distribution("exp:2").unwrap();
        let g = parse_distribution("uniform:1").unwrap();
        let mut rng = replicate_rng(2024, 0);
        let s = SampleData::new(draw_sample(&truth, 500, &mut rng)).unwrap();
        let r = bootstrap_gof(&s, &g, w(0.0, 1.0), 199, 17).unwrap();
        assert!(r.p_value <= 0.01, "{r:?}");
        assert!(r.rejects(0.05));
    }
}
