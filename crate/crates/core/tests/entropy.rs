mod common;

use common::{any_case, dist, finite_case};
use crie::entropy::{crie_all, cre, dynamic_cre};
use crie::quadrature::quad;
use crie::{crie, CrieMethod, QuadratureConfig, TruncatedView, Window};
use proptest::prelude::*;

fn h(s: &str, a: f64, b: f64) -> f64 {
    let v = TruncatedView::new(dist(s), Window::new(a, b).unwrap()).unwrap();
    crie(&v, CrieMethod::Definition).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn representations_agree((d, w) in finite_case()) {
        let v = TruncatedView::new(d, w).unwrap();
        let vals = crie_all(&v).unwrap();
        let hi = vals.iter().copied().fold(f64::MIN, f64::max);
        let lo = vals.iter().copied().fold(f64::MAX, f64::min);
        prop_assert!(hi - lo <= 1e-6, "{vals:?} on {w}");
        prop_assert!(lo >= -1e-12);
    }

    #[test]
    fn representations_agree_on_any_window((d, w) in any_case()) {
        let v = TruncatedView::new(d, w).unwrap();
        let vals = crie_all(&v).unwrap();
        let hi = vals.iter().copied().fold(f64::MIN, f64::max);
        let lo = vals.iter().copied().fold(f64::MAX, f64::min);
        prop_assert!(hi - lo <= 1e-6 * hi.max(1.0), "{vals:?} on {w}");
    }

    #[test]
    fn exponential_shift_invariance(rate in 0.2f64..3.0, a in 0.0f64..3.0, width in 0.1f64..8.0, c in 0.0f64..5.0) {
        let s = format!("exp:{rate}");
        let x = h(&s, a, a + width);
        let y = h(&s, a + c, a + c + width);
        prop_assert!((x - y).abs() <= 1e-9, "{x} vs {y}");
    }
}

#[test]
fn reference_grid_is_monotone_in_both_ends() {
    let models = ["power:0.1,0.9", "power:0.3,0.9", "betac:0.2", "betac:0.5"];
    let lives = ["exp:0.5", "exp:1", "lomax:2,0.5", "lomax:3,1"];
    let check = |s: &str, t1s: [f64; 3], t2s: [f64; 3]| {
        for &t2 in &t2s {
            let row: Vec<f64> = t1s.iter().map(|&t1| h(s, t1, t2)).collect();
            assert!(row.windows(2).all(|p| p[1] <= p[0]), "{s} tau2={t2} {row:?}");
        }
        for &t1 in &t1s {
            let col: Vec<f64> = t2s.iter().map(|&t2| h(s, t1, t2)).collect();
            assert!(col.windows(2).all(|p| p[1] >= p[0]), "{s} tau1={t1} {col:?}");
        }
    };
    for s in models {
        check(s, [0.1, 0.3, 0.5], [0.6, 0.7, 0.9]);
    }
    for s in lives {
        check(s, [3.0, 7.0, 9.0], [10.0, 12.0, 15.0]);
    }
}

#[test]
fn open_window_matches_dynamic_entropy() {
    for s in ["exp:0.5", "lomax:3,1", "lomax:4,2", "uniform:2", "betac:3"] {
        let d = dist(s);
        let lo = d.support().0;
        for t in [lo, lo + 0.1, lo + 0.5] {
            let v = TruncatedView::new(d.clone(), Window::new(t, d.support().1).unwrap()).unwrap();
            let a = crie(&v, CrieMethod::Definition).unwrap();
            let b = dynamic_cre(&d, t).unwrap();
            assert!((a - b).abs() <= 1e-8, "{s} t={t}: {a} vs {b}");
        }
        assert!((dynamic_cre(&d, lo).unwrap() - cre(&d).unwrap()).abs() <= 1e-8);
    }
}

#[test]
fn dynamic_entropy_is_a_covariance() {
    let cfg = QuadratureConfig::default();
    for s in ["exp:1", "lomax:3,1", "lomax:5,2", "power:2,1", "betac:0.5"] {
        let d = dist(s);
        let (_, hi) = d.support();
        for t in [0.0, 0.2, 0.6] {
            let st = d.survival(t);
            let w = |g: &dyn Fn(f64) -> f64| quad(|x| g(x) * d.pdf(x) / st, t, hi, &cfg).unwrap();
            let nl = |x: f64| {
                let s = d.survival(x);
                if s > 0.0 { -s.ln() } else { 0.0 }
            };
            let cov = w(&|x| x * nl(x)) - w(&|x| x) * w(&nl);
            let e = dynamic_cre(&d, t).unwrap();
            assert!((cov - e).abs() <= 1e-6, "{s} t={t}: {cov} vs {e}");
        }
    }
}

#[test]
fn uniform_closed_form() {
    for (a, b) in [(0.0, 1.0), (0.2, 0.6), (1.5, 3.9)] {
        assert!((h("uniform:4", a, b) - (b - a) / 4.0).abs() <= 1e-9);
    }
}

#[test]
fn heavy_tails_are_rejected() {
    assert!(cre(&dist("lomax:1,1")).is_err());
    let v = TruncatedView::new(dist("lomax:0.8,1"), Window::new(1.0, f64::INFINITY).unwrap()).unwrap();
    assert!(crie(&v, CrieMethod::Definition).is_err());
}
