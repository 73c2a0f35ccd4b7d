mod common;

use common::{continuous_plfun, fuzzy, rs_sum, simpson};
use fnspace::checker::{gen_curve, gen_plfun_continuous, gen_seq, trial_rng, GenConfig};
use fnspace::functionals::{
    decompose, decompose_ic, eval_rf, eval_rf_parts, norm_bound_rf, op_norm_estimate, reconstruct,
    CSeqSpec, CurveCSpec, CurveLpSpec, FunctionalSpec, LpSeqSpec, RfSpec,
};
use fnspace::spaces::FuzzyNumbers;
use fnspace::{Error, FnCurve, FnSeq, FuzzyNum, PlFun, Tail};
use proptest::prelude::*;

fn tri(a: f64, b: f64, c: f64) -> FuzzyNum {
    FuzzyNum::triangular(a, b, c).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

#[test]
fn rf_worked_values() {
    let one = PlFun::constant(1.0);
    let id = PlFun::identity();
    let u = tri(0.0, 1.0, 2.0);
    assert_eq!(eval_rf(&one, &u).unwrap(), 0.0);
    assert_eq!(eval_rf(&one, &FuzzyNum::crisp(7.0)).unwrap(), 0.0);
    assert_eq!(eval_rf(&id, &u).unwrap(), 0.0);
    assert_eq!(eval_rf_parts(&id, &u).unwrap(), 0.0);
    assert_eq!(
        eval_rf_parts(&PlFun::constant(3.0), &tri(0.0, 1.0, 5.0)).unwrap(),
        3.0 * (2.0 - 5.0)
    );
    assert_eq!(norm_bound_rf(&PlFun::constant(0.0)), 0.0);
    assert_eq!(norm_bound_rf(&one), 4.0);
    assert_eq!(norm_bound_rf(&id), 4.0);
    let step = PlFun::new(vec![0.0, 0.5, 1.0], vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
    assert!(matches!(RfSpec::new(step), Err(Error::DiscontinuousIntegrand(r)) if r == 0.5));
}

#[test]
fn decomposition_worked_cases() {
    let d = decompose_ic(&PlFun::identity()).unwrap();
    assert_eq!(
        (d.f(), d.g()),
        (&PlFun::linear(-1.0, 0.0), &PlFun::constant(1.0))
    );
    let x = reconstruct(&d);
    assert_eq!(
        (x.lower(), x.upper()),
        (&PlFun::linear(-1.0, 0.0), &PlFun::constant(1.0))
    );
    let zero = reconstruct(&decompose(&PlFun::constant(0.0)).unwrap());
    assert_eq!(zero, FuzzyNum::zero());
    assert!(matches!(
        decompose(&PlFun::interpolate(&[0.0, 0.5, 1.0], &[0.0, 1.0, 0.0]).unwrap()),
        Err(Error::NotMonotone(_))
    ));
}

#[test]
fn sequence_families_against_term_by_term_sums() {
    let cfg = GenConfig::default();
    for i in 0..200 {
        let mut rng = trial_rng(31, i);
        let h1 = gen_plfun_continuous(&cfg, 0.0, 1.0, &mut rng);
        let h2 = gen_plfun_continuous(&cfg, 0.0, 1.0, &mut rng);
        let x = gen_seq(&cfg, &mut rng, false);
        let alpha: Vec<f64> = (0..4)
            .map(|j| [0.5, -1.25, 2.0, 0.0][(j + i as usize) % 4])
            .collect();
        let oracle = rs_sum(&h1, x.limit().lower(), 1e-12)
            + rs_sum(&h1, x.limit().upper(), 1e-12)
            + alpha
                .iter()
                .enumerate()
                .map(|(j, a)| {
                    let t = x.term(j);
                    a * (rs_sum(&h2, t.lower(), 1e-12) + rs_sum(&h2, t.upper(), 1e-12))
                })
                .sum::<f64>();
        let got = CSeqSpec::new(h1.clone(), h2.clone(), alpha.clone())
            .unwrap()
            .eval(&x)
            .unwrap();
        assert!(rel(got, oracle) <= 1e-9, "{got} vs {oracle}");

        let spec = LpSeqSpec::new(2.0, h2.clone(), alpha.clone()).unwrap();
        match x.tail() {
            Tail::Zero => {
                let direct: f64 = alpha
                    .iter()
                    .enumerate()
                    .map(|(j, a)| a * eval_rf(&h2, &x.term(j)).unwrap())
                    .sum();
                assert!(rel(spec.eval(&x).unwrap(), direct) <= 1e-12);
            }
            Tail::Const(_) => assert!(matches!(spec.eval(&x), Err(Error::NotInSpace(_)))),
        }
    }
}

#[test]
fn sequence_worked_values() {
    let one = PlFun::constant(1.0);
    let spec = LpSeqSpec::new(1.0, one.clone(), vec![1.0]).unwrap();
    assert_eq!(spec.eval(&FnSeq::zero()).unwrap(), 0.0);
    assert_eq!(
        spec.eval(&FnSeq::finite(vec![tri(0.0, 1.0, 2.0)])).unwrap(),
        0.0
    );

    // x constant with value z, h₁ = h₂ = h, α = [1]: twice the single-term value
    let h = PlFun::identity();
    let z = tri(0.0, 1.0, 3.0);
    let x = FnSeq::new(vec![], Tail::Const(z.clone()));
    let c = CSeqSpec::new(h.clone(), h.clone(), vec![1.0]).unwrap();
    assert_eq!(c.eval(&x).unwrap(), 2.0 * eval_rf(&h, &z).unwrap());
    assert_eq!(eval_rf(&h, &z).unwrap(), -0.5);
    let empty = CSeqSpec::new(h.clone(), one, vec![]).unwrap();
    assert_eq!(empty.eval(&x).unwrap(), -0.5);
}

#[test]
fn curve_families_against_simpson() {
    let cfg = GenConfig::default();
    let (a, b) = (0.0, 2.0);
    let id = PlFun::on_domain(vec![a, b], vec![(a, b)]).unwrap();
    for i in 0..10 {
        let mut rng = trial_rng(41, i);
        let h1 = gen_plfun_continuous(&cfg, 0.0, 1.0, &mut rng);
        let h2 = gen_plfun_continuous(&cfg, a, b, &mut rng);
        let f = gen_curve(&cfg, a, b, &mut rng);
        let inner = |t: f64| eval_rf(&h1, &f.eval(t).unwrap()).unwrap();
        // the inner value is linear in t between curve nodes, so Simpson split
        // at every node integrates linear times linear exactly
        let mut nodes: Vec<f64> = f.t_grid().iter().chain(h2.breakpoints()).copied().collect();
        nodes.sort_by(f64::total_cmp);
        nodes.dedup();
        let by_cells = |g: &dyn Fn(f64) -> f64| -> f64 {
            nodes.windows(2).map(|w| simpson(g, w[0], w[1], 2)).sum()
        };

        let c = CurveCSpec::new(h1.clone(), id.clone())
            .unwrap()
            .eval(&f)
            .unwrap();
        let c_oracle = by_cells(&inner);
        assert!(rel(c, c_oracle) <= 1e-10, "{c} vs {c_oracle}");
        assert!(rel(c, simpson(inner, a, b, 20_000)) <= 1e-6);

        let lp = CurveLpSpec::new(2.0, h1.clone(), h2.clone())
            .unwrap()
            .eval(&f)
            .unwrap();
        let lp_oracle = by_cells(&|t| inner(t) * h2.eval(t).unwrap());
        assert!(rel(lp, lp_oracle) <= 1e-10, "{lp} vs {lp_oracle}");
    }
}

#[test]
fn curve_worked_values() {
    let (a, b) = (0.0, 2.0);
    let h1 = PlFun::identity();
    let z = tri(0.0, 1.0, 3.0);
    let f = FnCurve::constant(a, b, z).unwrap();
    let h2 = PlFun::on_domain(vec![a, 0.5, b], vec![(1.0, 2.0), (4.0, -1.0)]).unwrap();
    // constant inner value -0.5 telescopes against h₂
    let v = CurveCSpec::new(h1.clone(), h2.clone())
        .unwrap()
        .eval(&f)
        .unwrap();
    assert_eq!(v, -0.5 * (h2.end_value() - h2.start_value()));
    let zero = CurveLpSpec::new(1.0, h1.clone(), PlFun::constant_on(a, b, 0.0)).unwrap();
    assert_eq!(zero.eval(&f).unwrap(), 0.0);
    let crisp = FnCurve::constant(a, b, FuzzyNum::crisp(2.0)).unwrap();
    let unit = CurveLpSpec::new(1.0, h1.clone(), PlFun::constant_on(a, b, 1.0)).unwrap();
    assert_eq!(unit.eval(&crisp).unwrap(), 0.0);
    assert_eq!(unit.eval(&FnCurve::zero_on(a, b).unwrap()).unwrap(), 0.0);
    let elsewhere = FnCurve::zero_on(0.0, 1.0).unwrap();
    assert!(matches!(
        unit.eval(&elsewhere),
        Err(Error::DomainMismatch(_))
    ));
}

#[test]
fn sampled_norm_stays_under_the_analytic_bound() {
    let cfg = GenConfig::default();
    for i in 0..10 {
        let h = gen_plfun_continuous(&cfg, 0.0, 1.0, &mut trial_rng(3, i));
        let spec = RfSpec::new(h).unwrap();
        let r = op_norm_estimate(&spec, &FuzzyNumbers, 300, i, &cfg).unwrap();
        let upper = r.upper_bound.expect("rf functionals carry their bound");
        assert!(r.lower_bound <= upper * (1.0 + 1e-9));
        assert!(r.lower_bound > 0.0 || spec.norm_bound() == 0.0);
    }
}

#[test]
fn specs_round_trip_through_json() {
    let text = r#"{"space":"c","h1":{"breakpoints":[0,1],"segments":[[0,1]]},"h2":{"breakpoints":[0,1],"segments":[[1,1]]},"alpha":[0.5,-1]}"#;
    let spec: FunctionalSpec = serde_json::from_str(text).unwrap();
    let again: FunctionalSpec =
        serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
    assert_eq!(again, spec);
    let curve = r#"{"space":"lp-curve","p":1.5,"h1":{"breakpoints":[0,1],"segments":[[0,1]]},"h2":{"t_grid":[0,1,3],"values":[0,2,1]}}"#;
    let spec: FunctionalSpec = serde_json::from_str(curve).unwrap();
    let again: FunctionalSpec =
        serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
    assert_eq!(again, spec);
    let bad = r#"{"space":"rf","h":{"breakpoints":[0,1],"segments":[[0,1]]},"extra":1}"#;
    assert!(serde_json::from_str::<FunctionalSpec>(bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rf_matches_stieltjes_sums(h in continuous_plfun(), x in fuzzy()) {
        let oracle = rs_sum(&h, x.lower(), 1e-12) + rs_sum(&h, x.upper(), 1e-12);
        let got = eval_rf(&h, &x).unwrap();
        prop_assert!((got - oracle).abs() <= 1e-9 * oracle.abs().max(1.0), "{got} vs {oracle}");
        prop_assert!(rel(got, eval_rf_parts(&h, &x).unwrap()) <= 1e-9);
    }

    #[test]
    fn rf_is_linear_and_bounded(h in continuous_plfun(), x in fuzzy(), y in fuzzy(), c in common::scalar()) {
        let e = |u: &FuzzyNum| eval_rf(&h, u).unwrap();
        prop_assert!(rel(e(&(&x + &y)), e(&x) + e(&y)) <= 1e-9);
        prop_assert!(rel(e(&(c * &x)), c * e(&x)) <= 1e-9);
        prop_assert!(e(&x).abs() <= norm_bound_rf(&h) * x.norm_f() * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn reconstructed_branches_sum_back(u in continuous_plfun()) {
        if let Ok(d) = decompose(&u) {
            let x = reconstruct(&d);
            prop_assert_eq!(x.lower() + x.upper(), u);
        }
    }
}
