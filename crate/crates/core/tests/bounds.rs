mod common;

use common::{any_case, dist, finite_case};
use crie::bounds::*;
use crie::{MonotoneMap, TruncatedView, Window};
use proptest::prelude::*;

const UNIVERSAL: [&str; 9] = [
    "variance",
    "abs_log_deviation",
    "log_sum",
    "survival_product",
    "mean_past",
    "residual_weighted",
    "shannon",
    "mean_deviation",
    "abs_difference",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn unconditional_bounds_hold((d, w) in finite_case()) {
        let v = TruncatedView::new(d, w).unwrap();
        for r in audit_window(&v).unwrap() {
            if UNIVERSAL.contains(&r.bound_id.as_str()) {
                prop_assert!(r.hypotheses_met, "{r:?}");
                prop_assert!(r.holds(), "{r:?}");
            }
        }
    }

    #[test]
    fn certified_bounds_are_never_violated((d, w) in any_case()) {
        for r in audit_case(&d, w).unwrap() {
            prop_assert!(!r.is_violation(), "{w} {r:?}");
        }
    }

    #[test]
    fn affine_scaling_direction(a in 1.0f64..4.0, q in 0.0f64..0.5) {
        let base = dist("lomax:3,1");
        let t1 = base.quantile(q);
        let t2 = base.quantile(q + 0.4);
        for k in [a, 1.0 / a] {
            let map = MonotoneMap::affine(k, 0.0).unwrap();
            let r = bound_transform_scaling(&base, &map, Window::new(k * t1, k * t2).unwrap()).unwrap();
            prop_assert!(r.hypotheses_met && r.holds(), "{r:?}");
            // for a pure rescaling H(kX) = k H(X)
            prop_assert!((r.lhs - k * r.rhs).abs() <= 1e-8 * r.lhs.max(1.0));
        }
    }
}

#[test]
fn dynamic_lower_bound_on_light_tails() {
    for s in ["exp:0.5", "exp:2", "lomax:3,1", "lomax:2.5,0.5", "uniform:3", "power:0.5,2", "betac:4"] {
        let d = dist(s);
        for q in [0.0, 0.3, 0.7] {
            let t = d.quantile(q);
            let r = bound_dynamic_lower(&d, t).unwrap();
            assert!(r.holds(), "{s} t={t} {r:?}");
        }
    }
}

#[test]
fn uniform_closed_form_slacks() {
    let v = TruncatedView::new(dist("uniform:1"), Window::new(0.0, 1.0).unwrap()).unwrap();
    let by_id = |id: &str| audit_window(&v).unwrap().into_iter().find(|r| r.bound_id == id).unwrap();
    let expect = [
        ("variance", (1.0f64 / 12.0).sqrt() - 0.25),
        ("log_sum", 0.5 * 2f64.ln() - 0.25),
        ("survival_product", 0.25 - 1.0 / 6.0),
        ("mean_past", 0.25),
        ("mean_deviation", 1.0 / 3.0 - 0.25),
        ("abs_difference", 0.5 - 1.0 / 3.0),
        ("shannon", 0.25 - shannon_constant()),
    ];
    for (id, slack) in expect {
        let r = by_id(id);
        assert!((r.slack - slack).abs() < 1e-8, "{id}: {} vs {slack}", r.slack);
    }
}

#[test]
fn reference_windows_audit_clean() {
    for c in crie::reference_table::cells() {
        let d = crie::make_distribution(c.column.spec).unwrap();
        let w = Window::new(c.window.0, c.window.1).unwrap();
        for r in audit_case(&d, w).unwrap() {
            assert!(!r.is_violation(), "{} {w}: {r:?}", c.column.label);
        }
    }
}
