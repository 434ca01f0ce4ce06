mod common;

use common::{dist, spec_strategy};
use crie::estimation::{crikl_statistic, draw_sample, empirical_crie, replicate_rng};
use crie::{bootstrap_gof, make_distribution, SampleData, Window};
use proptest::prelude::*;

fn sample(spec: &str, n: usize, seed: u64) -> SampleData {
    let mut rng = replicate_rng(seed, 0);
    SampleData::new(draw_sample(&dist(spec), n, &mut rng)).unwrap()
}

#[test]
fn plug_in_estimator_converges() {
    let w = Window::new(0.0, 1.0).unwrap();
    let u = empirical_crie(&sample("uniform:1", 100_000, 7), w).unwrap();
    assert!((u - 0.25).abs() < 0.01, "{u}");
    let e = empirical_crie(&sample("exp:1", 100_000, 8), w).unwrap();
    let v = crie::TruncatedView::new(dist("exp:1"), w).unwrap();
    let exact = crie::crie(&v, crie::CrieMethod::Definition).unwrap();
    assert!((e - exact).abs() < 0.01, "{e} vs {exact}");
}

#[test]
fn bootstrap_is_reproducible() {
    let s = sample("exp:1", 150, 3);
    let w = Window::new(0.2, 2.0).unwrap();
    let a = bootstrap_gof(&s, &dist("exp:1"), w, 99, 42).unwrap();
    let b = bootstrap_gof(&s, &dist("exp:1"), w, 99, 42).unwrap();
    assert_eq!(a.statistic.to_bits(), b.statistic.to_bits());
    assert_eq!(a.p_value.to_bits(), b.p_value.to_bits());
    let c = bootstrap_gof(&s, &dist("exp:1"), w, 99, 43).unwrap();
    assert_eq!(a.statistic, c.statistic);
}

#[test]
fn data_lines_are_reported() {
    let e = SampleData::parse("1.0\n2.5\n\nabc\n").unwrap_err();
    assert!(matches!(e, crie::Error::DataLine { line: 4, .. }), "{e:?}");
    assert!(SampleData::parse("").is_err());
    assert_eq!(SampleData::parse("3\n1\n2\n").unwrap().values(), &[1.0, 2.0, 3.0]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn statistic_is_nonnegative(spec in spec_strategy(), seed in any::<u64>(), q1 in 0.0f64..0.6, gap in 0.2f64..0.4) {
        let d = make_distribution(spec).unwrap();
        let mut rng = replicate_rng(seed, 0);
        let s = SampleData::new(draw_sample(&d, 40, &mut rng)).unwrap();
        let w = Window::new(d.quantile(q1), d.quantile(q1 + gap)).unwrap();
        match crikl_statistic(&s, &d, w) {
            Ok(t) => prop_assert!(t >= -1e-7, "{t}"),
            Err(crie::Error::InsufficientData(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
