#![allow(dead_code)]

use crie::{make_distribution, Dist, DistributionSpec, Window};
use proptest::prelude::*;

pub fn spec_strategy() -> impl Strategy<Value = DistributionSpec> {
    prop_oneof![
        (0.5f64..5.0).prop_map(|b| DistributionSpec::Uniform { b }),
        (0.2f64..3.0).prop_map(|rate| DistributionSpec::Exponential { rate }),
        (0.1f64..3.0, 0.5f64..3.0).prop_map(|(a, b)| DistributionSpec::Power { a, b }),
        (0.2f64..5.0).prop_map(|c| DistributionSpec::BetaC { c }),
        (1.5f64..6.0, 0.3f64..3.0).prop_map(|(alpha, lambda)| DistributionSpec::Lomax { alpha, lambda }),
    ]
}

/// Window from two cdf levels, so every window carries real mass.
pub fn window_at(d: &Dist, q1: f64, q2: f64) -> Window {
    let a = d.quantile(q1);
    let b = if q2 >= 1.0 { f64::INFINITY } else { d.quantile(q2) };
    Window::new(a, b).unwrap()
}

pub fn finite_case() -> impl Strategy<Value = (Dist, Window)> {
    (spec_strategy(), 0.0f64..0.85, 0.05f64..0.95).prop_map(|(s, q1, gap)| {
        let d = make_distribution(s).unwrap();
        let q2 = q1 + gap * (0.999 - q1);
        let w = window_at(&d, q1, q2.max(q1 + 0.01));
        (d, w)
    })
}

/// Finite windows plus left-truncated ones on light-tailed models.
pub fn any_case() -> impl Strategy<Value = (Dist, Window)> {
    (finite_case(), any::<bool>()).prop_map(|((d, w), open)| {
        let light = d.tail_index().is_none_or(|a| a > 2.5);
        if open && light && d.support().1.is_infinite() {
            (d, Window::new(w.tau1, f64::INFINITY).unwrap())
        } else {
            (d, w)
        }
    })
}

pub fn dist(s: &str) -> Dist {
    crie::parse_distribution(s).unwrap()
}
