mod common;

use common::{dist, finite_case};
use crie::shape::*;
use crie::{QuadratureConfig, TruncatedView, Window};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn derivative_identity_holds((d, w) in finite_case()) {
        prop_assume!(w.width() >= 0.01);
        let v = TruncatedView::new(d, w).unwrap();
        if let Some(chk) = derivative_identity(&v).unwrap() {
            let scale = chk.predicted.abs().max(1.0);
            prop_assert!((chk.finite_difference - chk.predicted).abs() <= 1e-3 * scale, "{chk:?}");
        }
    }
}

fn families() -> Vec<(&'static str, f64)> {
    vec![
        ("exp:1", 5.0),
        ("exp:0.5", 10.0),
        ("lomax:2,1", 8.0),
        ("lomax:3,0.5", f64::INFINITY),
        ("uniform:1", 0.9),
        ("betac:2", 0.9),
        ("power:0.5,1", 1.0),
    ]
}

#[test]
fn entropy_direction_matches_sign_against_mrl() {
    for (s, tau2) in families() {
        let d = dist(s);
        let grid = default_tau1_grid(&d, tau2, 17);
        let c = certify_icrie_dcrie(&d, tau2, &grid, QuadratureConfig::default()).unwrap();
        match c.verdict {
            EntropyShape::Dcrie => assert!(c.below_mrl, "{s}"),
            EntropyShape::Icrie => assert!(c.above_mrl, "{s}"),
            EntropyShape::Constant => assert!(c.below_mrl && c.above_mrl),
            EntropyShape::Inconclusive => {}
        }
        assert!(c.derivative_agrees, "{s}");
        // wherever m1 falls along the grid, H <= m1 on that grid
        let xs: Vec<f64> = c.cells.iter().map(|c| c.tau1).collect();
        let ms: Vec<f64> = c.cells.iter().map(|c| c.mrl).collect();
        if classify_values(&xs, &ms).unwrap().direction == Direction::Decreasing {
            assert!(c.below_mrl, "{s}");
        }
    }
}

#[test]
fn failure_rate_direction_matches_conditional_survival_ratio() {
    for (s, y) in [("exp:1", 5.0), ("lomax:2,1", 6.0), ("uniform:1", 0.95), ("betac:3", 0.95)] {
        let d = dist(s);
        let v = TruncatedView::new(d.clone(), Window::new(d.support().0, y).unwrap()).unwrap();
        let g = scan_gfr(&v, 129).unwrap().direction;
        let t = 0.05 * (y - d.support().0);
        let end = y - t;
        let ratio = |x: f64| (d.survival(x + t) - d.survival(y)) / (d.survival(x) - d.survival(y));
        let r = scan_monotone(ratio, d.support().0, end - 1e-3 * t, 129).unwrap().direction;
        match g {
            Direction::Increasing => assert_eq!(r, Direction::Decreasing, "{s}"),
            Direction::Decreasing => assert_eq!(r, Direction::Increasing, "{s}"),
            Direction::Constant => assert_eq!(r, Direction::Constant, "{s}"),
            Direction::Mixed => {}
        }
    }
}

#[test]
fn entropy_and_mean_residual_fall_along_left_end() {
    for (s, tau2) in [
        ("betac:1", 0.9),
        ("betac:2", 0.9),
        ("betac:5", 0.9),
        ("exp:0.2", 10.0),
        ("exp:0.5", 10.0),
        ("exp:1", 10.0),
    ] {
        let d = dist(s);
        let grid = linspace(0.01, if tau2 < 1.0 { 0.85 } else { 9.5 }, 50);
        let c = certify_icrie_dcrie(&d, tau2, &grid, QuadratureConfig::default()).unwrap();
        assert_eq!(c.entropy_scan.direction, Direction::Decreasing, "{s}");
        let xs: Vec<f64> = c.cells.iter().map(|c| c.tau1).collect();
        let ms: Vec<f64> = c.cells.iter().map(|c| c.mrl).collect();
        assert_eq!(classify_values(&xs, &ms).unwrap().direction, Direction::Decreasing, "{s}");
    }
}

#[test]
fn order_implications_on_exponential_pairs() {
    for (a, b) in [(2.0, 1.0), (1.0, 1.0), (0.5, 3.0), (4.0, 0.2)] {
        let (x, y) = (dist(&format!("exp:{a}")), dist(&format!("exp:{b}")));
        let g = order_grid(&x, &y, 200);
        let lr = check_order(&x, &y, StochasticOrder::Lr, &g).unwrap().status;
        let hr = check_order(&x, &y, StochasticOrder::Hr, &g).unwrap().status;
        let st = check_order(&x, &y, StochasticOrder::St, &g).unwrap().status;
        if lr == OrderStatus::Certified {
            assert_eq!(hr, OrderStatus::Certified);
            assert_eq!(st, OrderStatus::Certified);
        }
        assert_eq!(lr == OrderStatus::Certified, a >= b);
    }
}

#[test]
fn aging_classes() {
    let c = classify_aging(&dist("exp:1")).unwrap();
    assert_eq!(c.hazard, AgingClass::Constant);
    assert_eq!(c.expectation, ExpectationClass::Both);
    let c = classify_aging(&dist("lomax:3,1")).unwrap();
    assert_eq!((c.hazard, c.mrl, c.expectation), (AgingClass::Dfr, MrlClass::Imrl, ExpectationClass::Nwue));
    let c = classify_aging(&dist("uniform:1")).unwrap();
    assert_eq!((c.hazard, c.mrl, c.expectation), (AgingClass::Ifr, MrlClass::Dmrl, ExpectationClass::Nbue));
}

#[test]
fn lomax_residual_entropy_is_increasing() {
    let d = dist("lomax:3,1");
    let grid = linspace(0.0, 5.0, 11);
    let c = certify_icrie_dcrie(&d, f64::INFINITY, &grid, QuadratureConfig::default()).unwrap();
    assert_eq!(c.verdict, EntropyShape::Icrie);
    // residual entropy α(λ + t)/(α - 1)²
    for cell in &c.cells {
        assert!((cell.entropy - 3.0 * (1.0 + cell.tau1) / 4.0).abs() < 1e-8, "{cell:?}");
    }
    let e = certify_icrie_dcrie(&dist("exp:2"), f64::INFINITY, &grid, QuadratureConfig::default()).unwrap();
    assert_eq!(e.verdict, EntropyShape::Constant);
}
