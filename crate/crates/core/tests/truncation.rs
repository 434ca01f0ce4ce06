mod common;

use common::{dist, finite_case};
use crie::shape::{scan_gfr, scan_mrl, Direction, DEFAULT_SCAN_POINTS};
use crie::truncation::odds_ratio_g;
use crie::{QuadratureConfig, TruncatedView, Window};
use proptest::prelude::*;

fn view(s: &str, a: f64, b: f64) -> TruncatedView {
    TruncatedView::new(dist(s), Window::new(a, b).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn survival_is_exp_of_minus_cumulative_hazard((d, w) in finite_case(), t in 0.0f64..1.0) {
        let v = TruncatedView::new(d, w).unwrap();
        let x = w.tau1 + t * (w.tau2 - w.tau1);
        let u = v.trunc_survival(x).unwrap();
        let lam = v.cum_hazard(x).unwrap();
        prop_assert!((u - (-lam).exp()).abs() <= 1e-10, "u={u} lam={lam}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mean_residual_is_integral_of_exp_minus_hazard((d, w) in finite_case()) {
        let v = TruncatedView::new(d, w).unwrap();
        let direct = v
            .integrate(|x| v.cum_hazard(x.min(w.tau2)).map(|l| (-l).exp()).unwrap_or(0.0))
            .unwrap();
        let m1 = v.m1().unwrap();
        let tol = QuadratureConfig::default().rel_tol * m1.abs() + 1e-10;
        prop_assert!((m1 - direct).abs() <= tol, "{m1} vs {direct}");
    }

    #[test]
    fn failure_rate_from_mean_residual_slope((d, w) in finite_case()) {
        let v = TruncatedView::new(d.clone(), w).unwrap();
        let step = 1e-5 * w.width();
        let m = |t1: f64| TruncatedView::new(d.clone(), Window::new(t1, w.tau2).unwrap()).unwrap().m1().unwrap();
        prop_assume!(w.tau1 - step >= d.support().0);
        let slope = (m(w.tau1 + step) - m(w.tau1 - step)) / (2.0 * step);
        let m1 = v.m1().unwrap();
        let h1 = v.gfr1(w.tau1).unwrap();
        let predicted = (1.0 + slope) / m1;
        prop_assert!((h1 - predicted).abs() <= 1e-4 * h1.max(1.0), "h1={h1} predicted={predicted}");
    }

    #[test]
    fn monotone_failure_rate_orders_mean_residual((d, w) in finite_case()) {
        let v = TruncatedView::new(d, w).unwrap();
        let g = scan_gfr(&v, DEFAULT_SCAN_POINTS).unwrap().direction;
        let m = scan_mrl(&v, DEFAULT_SCAN_POINTS).unwrap().direction;
        match g {
            Direction::Increasing => prop_assert!(m.is_nonincreasing(), "{g:?} {m:?}"),
            Direction::Decreasing => prop_assert!(m.is_nondecreasing(), "{g:?} {m:?}"),
            _ => {}
        }
    }
}

#[test]
fn exponential_depends_only_on_width() {
    for rate in [0.3, 1.0, 2.5] {
        let s = format!("exp:{rate}");
        let (a, b) = (view(&s, 3.0, 10.0), view(&s, 5.0, 12.0));
        assert!((a.m1().unwrap() - b.m1().unwrap()).abs() <= 1e-10);
        assert!((a.m2().unwrap() - b.m2().unwrap()).abs() <= 1e-10);
        assert!((a.gfr1(4.0).unwrap() - b.gfr1(6.0).unwrap()).abs() <= 1e-12);
    }
}

#[test]
fn odds_ratio_increases_when_hazard_dominates() {
    let vx = view("exp:2", 0.5, 4.0);
    let vy = view("exp:1", 0.5, 4.0);
    let mut last = 0.0;
    for i in 0..100 {
        let x = 0.5 + 3.5 * i as f64 / 100.0;
        let g = odds_ratio_g(&vx, &vy, x).unwrap();
        assert!(g >= last * (1.0 - 1e-12), "x={x}");
        last = g;
    }
}

#[test]
fn equilibrium_exponential_has_same_failure_rate() {
    let d = dist("exp:0.7");
    let e = crie::dist::equilibrium_of(d.clone()).unwrap();
    let w = Window::new(1.0, 6.0).unwrap();
    let (vx, ve) = (TruncatedView::new(d, w).unwrap(), TruncatedView::new(e, w).unwrap());
    for i in 0..50 {
        let x = 1.0 + 5.0 * i as f64 / 50.0;
        assert!((vx.gfr1(x).unwrap() - ve.gfr1(x).unwrap()).abs() <= 1e-9);
    }
}

#[test]
fn window_errors() {
    assert!(Window::new(2.0, 1.0).is_err());
    assert!(Window::new(f64::NAN, 1.0).is_err());
    let e = TruncatedView::new(dist("exp:1"), Window::new(100.0, 101.0).unwrap()).unwrap_err();
    assert!(matches!(e, crie::Error::DegenerateWindow { .. }));
    let v = view("exp:1", 1.0, 2.0);
    assert!(matches!(v.trunc_pdf(3.0), Err(crie::Error::OutOfWindow { .. })));
}
