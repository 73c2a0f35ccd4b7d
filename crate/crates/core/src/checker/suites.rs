//! The suite catalog.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::gen::{
    gen_curve, gen_fuzzy, gen_plfun_continuous, gen_plfun_jumpy, gen_plfun_monotone, Direction,
    GenConfig, Generate,
};
use super::search::{search_counterexample, CLAIMS};
use super::{run_trials, CheckReport, TrialLog, Witness, ALGEBRA_TOL, DP_TOL, METRIC_TOL};
use crate::error::{Error, Result};
use crate::functionals::{
    decompose, decompose_dc, decompose_ic, eval_rf, l0_rf, norm_bound_rf, reconstruct, rel_dev,
    CSeqSpec, CurveCSpec, CurveLpSpec, LpSeqSpec, RfSpec, INTEGRAL_TOL,
};
use crate::fuzznum::{invariant_violation, pair_norm, FuzzyNum, Interval};
use crate::levelfun::{rs_integral, PlFun};
use crate::spaces::{CurvesLp, CurvesSup, FnCurve, FnSeq, FuzzyNumbers, SeqC, SeqC0, SeqLp, SeqM};

/// Curves in the suites live on this interval.
const CURVE_DOMAIN: (f64, f64) = (0.0, 2.0);
/// Budget for counterexample suites.
const SEARCH_BUDGET: u64 = 100;

/// Every registered suite with a one-line description.
pub const SUITES: &[(&str, &str)] = &[
    ("d-translation-invariance", "D(u⊕w, v⊕w) = D(u, v)"),
    ("d-homogeneity", "D(k⊙u, k⊙v) = |k|·D(u, v)"),
    ("d-subadditivity", "D(u⊕v, w⊕e) <= D(u, w) + D(v, e)"),
    (
        "addition-commutative-associative",
        "⊕ is commutative and associative",
    ),
    ("zero-neutral", "u ⊕ 0̃ = 0̃ ⊕ u = u"),
    (
        "opposite-crisp-only",
        "u has an additive opposite iff u is crisp",
    ),
    (
        "same-sign-distributivity",
        "(a+b)⊙u = a⊙u ⊕ b⊙u when ab >= 0",
    ),
    ("scalar-distributivity", "λ⊙(u⊕v) = λ⊙u ⊕ λ⊙v"),
    ("scalar-associativity", "λ⊙(μ⊙u) = (λμ)⊙u"),
    ("norm-properties", "‖·‖_F is a norm on the cone"),
    (
        "same-sign-d-scaling",
        "D(α⊙u, β⊙u) = |α-β|·‖u‖_F when αβ >= 0",
    ),
    (
        "level-family-round-trip",
        "level sets of a level-family reconstruction match the family",
    ),
    (
        "embedding-isometry",
        "the embedding into pairs of level functions is additive and isometric",
    ),
    (
        "h-difference",
        "v ⊕ (u⊖v) = u whenever u⊖v exists; 0̃⊖v exists only for crisp v",
    ),
    ("fn-axioms-rf", "FN-type space axioms for (R_F, D)"),
    ("fn-axioms-lp1", "FN-type space axioms for (l^1, ρ_1)"),
    ("fn-axioms-lp2", "FN-type space axioms for (l^2, ρ_2)"),
    ("fn-axioms-m", "FN-type space axioms for (m, μ)"),
    ("fn-axioms-c", "FN-type space axioms for (c, μ)"),
    ("fn-axioms-c0", "FN-type space axioms for (c0, μ)"),
    (
        "fn-axioms-c-curve",
        "FN-type space axioms for (C([0,2]; R_F), D*)",
    ),
    (
        "fn-axioms-lp1-curve",
        "FN-type space axioms for (L^1([0,2]; R_F), D_1)",
    ),
    (
        "fn-axioms-lp2-curve",
        "FN-type space axioms for (L^2([0,2]; R_F), D_2)",
    ),
    (
        "curve-distance-continuity",
        "t ↦ D(f(t), g(t)) is Lipschitz along curves",
    ),
    ("cauchy-sanity", "d(x⊕2^-k⊙y, x⊕2^-(k+1)⊙y) = 2^-(k+1)·‖y‖"),
    ("decomposition", "canonical monotone splits u = f + g"),
    (
        "l0-consistency",
        "L₀ is additive on monotone functions and depends only on u",
    ),
    (
        "functional-linearity",
        "every functional family is additive and homogeneous",
    ),
    (
        "functional-boundedness",
        "|x*(x)| <= 2(|h(0)| + |h(1)| + V(h))·‖x‖_F",
    ),
    (
        "functional-parts-agreement",
        "Stieltjes and integration-by-parts forms agree",
    ),
    ("helly-bray-decay", "|L₀(u + p/n) - L₀(u)| <= M/n"),
    (
        "functional-reductions",
        "one-hot and degenerate specs reduce to simpler families",
    ),
    (
        "mixed-sign-distributivity-counterexample",
        "finds u, a > 0 > b with (a+b)⊙u ≠ a⊙u ⊕ b⊙u",
    ),
    (
        "mixed-sign-d-scaling-counterexample",
        "finds u, α > 0 > β with D(α⊙u, β⊙u) ≠ |α-β|·‖u‖_F",
    ),
    (
        "opposite-existence-counterexample",
        "finds a fuzzy number without an opposite",
    ),
    (
        "h-difference-existence-counterexample",
        "finds v for which 0̃ ⊖ v does not exist",
    ),
    (
        "curve-mixed-sign-distributivity-counterexample",
        "finds a curve f, a > 0 > b with (a+b)⊙f ≠ a⊙f ⊕ b⊙f",
    ),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

pub fn run_suite(name: &str, trials: u64, seed: u64, cfg: &GenConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let (a, b) = CURVE_DOMAIN;
    let single = |props: &'static [&'static str]| {
        let rf_cfg;
        let cfg = if props.contains(&"opposite-crisp-only") {
            // both branches of the equivalence need coverage
            rf_cfg = GenConfig {
                crisp_probability: cfg.crisp_probability.max(0.3),
                ..cfg.clone()
            };
            &rf_cfg
        } else {
            cfg
        };
        fn_axioms(name, &FuzzyNumbers, Some(props), trials, seed, cfg)
    };
    let report = match name {
        "d-translation-invariance" => single(&["d-translation-invariance"]),
        "d-homogeneity" => single(&["d-homogeneity"]),
        "d-subadditivity" => single(&["d-subadditivity"]),
        "addition-commutative-associative" => {
            single(&["addition-commutative", "addition-associative"])
        }
        "zero-neutral" => single(&["zero-neutral"]),
        "opposite-crisp-only" => single(&["opposite-crisp-only"]),
        "same-sign-distributivity" => single(&["same-sign-distributivity"]),
        "scalar-distributivity" => single(&["scalar-distributivity"]),
        "scalar-associativity" => single(&["scalar-associativity"]),
        "norm-properties" => single(&[
            "norm-zero",
            "norm-homogeneity",
            "norm-subadditivity",
            "norm-reverse-triangle",
        ]),
        "same-sign-d-scaling" => single(&["same-sign-d-scaling"]),
        "level-family-round-trip" => level_family_round_trip(trials, seed, cfg),
        "embedding-isometry" => embedding_isometry(trials, seed, cfg),
        "h-difference" => h_difference(trials, seed, cfg),
        "fn-axioms-rf" => fn_axioms(name, &FuzzyNumbers, None, trials, seed, cfg),
        "fn-axioms-lp1" => fn_axioms(name, &SeqLp::new(1.0)?, None, trials, seed, cfg),
        "fn-axioms-lp2" => fn_axioms(name, &SeqLp::new(2.0)?, None, trials, seed, cfg),
        "fn-axioms-m" => fn_axioms(name, &SeqM, None, trials, seed, cfg),
        "fn-axioms-c" => fn_axioms(name, &SeqC, None, trials, seed, cfg),
        "fn-axioms-c0" => fn_axioms(name, &SeqC0, None, trials, seed, cfg),
        "fn-axioms-c-curve" => fn_axioms(name, &CurvesSup::new(a, b)?, None, trials, seed, cfg),
        "fn-axioms-lp1-curve" => {
            fn_axioms(name, &CurvesLp::new(a, b, 1.0)?, None, trials, seed, cfg)
        }
        "fn-axioms-lp2-curve" => {
            fn_axioms(name, &CurvesLp::new(a, b, 2.0)?, None, trials, seed, cfg)
        }
        "curve-distance-continuity" => curve_distance_continuity(trials, seed, cfg),
        "cauchy-sanity" => cauchy_sanity(trials, seed, cfg),
        "decomposition" => decomposition(trials, seed, cfg),
        "l0-consistency" => l0_consistency(trials, seed, cfg),
        "functional-linearity" => functional_linearity(trials, seed, cfg),
        "functional-boundedness" => functional_boundedness(trials, seed, cfg),
        "functional-parts-agreement" => functional_parts_agreement(trials, seed, cfg),
        "helly-bray-decay" => helly_bray_decay(trials, seed, cfg),
        "functional-reductions" => functional_reductions(trials, seed, cfg),
        other => match other.strip_suffix("-counterexample") {
            Some(claim) if CLAIMS.iter().any(|(c, _)| *c == claim) => {
                counterexample_suite(name, claim, trials, seed, cfg)?
            }
            _ => return Err(Error::UnknownSuite(name.to_string())),
        },
    };
    Ok(report)
}

// ---------------------------------------------------------------------------
// helpers

fn scale_of(xs: &[f64]) -> f64 {
    xs.iter().fold(1.0, |m, x| m.max(x.abs()))
}

/// Relative excess of `lhs` over `rhs` (0 when `lhs <= rhs`).
fn excess(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).max(0.0) / scale_of(&[lhs, rhs])
}

fn err_inputs(e: &Error) -> serde_json::Value {
    json!({ "error": e.to_string() })
}

// ---------------------------------------------------------------------------
// FN-type axioms, generic over the space

/// Runs the FN-type axioms on `space`, restricted to `only` when given.
pub fn fn_axioms<S: Generate>(
    suite: &str,
    space: &S,
    only: Option<&[&str]>,
    trials: u64,
    seed: u64,
    cfg: &GenConfig,
) -> CheckReport {
    let metric_tol = if space.exact() { METRIC_TOL } else { DP_TOL };
    run_trials(suite, trials, seed, |rng, log| {
        if let Err(e) = axioms_trial(space, only, metric_tol, cfg, rng, log) {
            log.fail("evaluation", f64::INFINITY, || err_inputs(&e));
        }
    })
}

fn axioms_trial<S: Generate>(
    space: &S,
    only: Option<&[&str]>,
    metric_tol: f64,
    cfg: &GenConfig,
    rng: &mut ChaCha8Rng,
    log: &mut TrialLog,
) -> Result<()> {
    let want = |p: &str| only.is_none_or(|ps| ps.contains(&p));
    let [x, y, z, w, e] = std::array::from_fn(|_| space.generate(cfg, rng));
    let lambda = cfg.scalar(rng);
    let mu = cfg.scalar(rng);
    let (a, b) = cfg.same_sign_pair(rng);
    let d = |p: &S::Elem, q: &S::Elem| space.dist(p, q);
    let add = |p: &S::Elem, q: &S::Elem| space.add(p, q);
    let sc = |l: f64, p: &S::Elem| space.scale(l, p);
    let norm = |p: &S::Elem| space.norm(p);
    // structural equality, else the metric gap relative to the sizes involved
    let gap = |l: &S::Elem, r: &S::Elem| -> Result<f64> {
        if l == r {
            return Ok(0.0);
        }
        Ok(d(l, r)? / scale_of(&[norm(l)?, norm(r)?]))
    };

    if want("membership") {
        let sum = add(&x, &y)?;
        let ok = [&x, &y, &sum, &sc(lambda, &x)]
            .iter()
            .all(|v| space.contains(v));
        log.check_true(
            "membership",
            ok,
            || json!({ "x": x, "y": y, "lambda": lambda }),
        );
    }
    if want("d-identity") {
        log.check("d-identity", d(&x, &x)?, 0.0, || json!({ "x": x }));
    }
    if want("d-symmetry") {
        let dev = rel_dev(d(&x, &y)?, d(&y, &x)?);
        log.check("d-symmetry", dev, metric_tol, || json!({ "x": x, "y": y }));
    }
    if want("d-triangle") {
        let dev = excess(d(&x, &z)?, d(&x, &y)? + d(&y, &z)?);
        log.check(
            "d-triangle",
            dev,
            metric_tol,
            || json!({ "x": x, "y": y, "z": z }),
        );
    }
    if want("d-translation-invariance") {
        let dev = rel_dev(d(&add(&x, &z)?, &add(&y, &z)?)?, d(&x, &y)?);
        log.check(
            "d-translation-invariance",
            dev,
            metric_tol,
            || json!({ "x": x, "y": y, "z": z }),
        );
    }
    if want("d-homogeneity") {
        let dev = rel_dev(
            d(&sc(lambda, &x), &sc(lambda, &y))?,
            lambda.abs() * d(&x, &y)?,
        );
        log.check(
            "d-homogeneity",
            dev,
            metric_tol,
            || json!({ "x": x, "y": y, "lambda": lambda }),
        );
    }
    if want("d-subadditivity") {
        let dev = excess(d(&add(&x, &y)?, &add(&w, &e)?)?, d(&x, &w)? + d(&y, &e)?);
        log.check(
            "d-subadditivity",
            dev,
            metric_tol,
            || json!({ "x": x, "y": y, "w": w, "e": e }),
        );
    }
    if want("addition-commutative") {
        let dev = gap(&add(&x, &y)?, &add(&y, &x)?)?;
        log.check(
            "addition-commutative",
            dev,
            ALGEBRA_TOL,
            || json!({ "x": x, "y": y }),
        );
    }
    if want("addition-associative") {
        let dev = gap(&add(&add(&x, &y)?, &z)?, &add(&x, &add(&y, &z)?)?)?;
        log.check(
            "addition-associative",
            dev,
            ALGEBRA_TOL,
            || json!({ "x": x, "y": y, "z": z }),
        );
    }
    if want("zero-neutral") {
        let zero = space.zero();
        let dev = gap(&add(&x, &zero)?, &x)?.max(gap(&add(&zero, &x)?, &x)?);
        log.check("zero-neutral", dev, ALGEBRA_TOL, || json!({ "x": x }));
    }
    if want("same-sign-distributivity") {
        let dev = gap(&sc(a + b, &x), &add(&sc(a, &x), &sc(b, &x))?)?;
        log.check(
            "same-sign-distributivity",
            dev,
            ALGEBRA_TOL,
            || json!({ "x": x, "a": a, "b": b }),
        );
    }
    if want("scalar-distributivity") {
        let dev = gap(
            &sc(lambda, &add(&x, &y)?),
            &add(&sc(lambda, &x), &sc(lambda, &y))?,
        )?;
        log.check(
            "scalar-distributivity",
            dev,
            ALGEBRA_TOL,
            || json!({ "x": x, "y": y, "lambda": lambda }),
        );
    }
    if want("scalar-associativity") {
        let dev = gap(&sc(lambda, &sc(mu, &x)), &sc(lambda * mu, &x))?;
        log.check(
            "scalar-associativity",
            dev,
            ALGEBRA_TOL,
            || json!({ "x": x, "lambda": lambda, "mu": mu }),
        );
    }
    if want("norm-zero") {
        let zero = space.zero();
        let nx = norm(&x)?;
        let ok = norm(&zero)? == 0.0 && ((nx == 0.0) == (x == zero));
        log.check_true("norm-zero", ok, || json!({ "x": x }));
    }
    if want("norm-homogeneity") {
        let dev = rel_dev(norm(&sc(lambda, &x))?, lambda.abs() * norm(&x)?);
        log.check(
            "norm-homogeneity",
            dev,
            metric_tol,
            || json!({ "x": x, "lambda": lambda }),
        );
    }
    if want("norm-subadditivity") {
        let dev = excess(norm(&add(&x, &y)?)?, norm(&x)? + norm(&y)?);
        log.check(
            "norm-subadditivity",
            dev,
            metric_tol,
            || json!({ "x": x, "y": y }),
        );
    }
    if want("norm-reverse-triangle") {
        let dev = excess((norm(&x)? - norm(&y)?).abs(), d(&x, &y)?);
        log.check(
            "norm-reverse-triangle",
            dev,
            metric_tol,
            || json!({ "x": x, "y": y }),
        );
    }
    if want("same-sign-d-scaling") {
        let dev = rel_dev(d(&sc(a, &x), &sc(b, &x))?, (a - b).abs() * norm(&x)?);
        log.check(
            "same-sign-d-scaling",
            dev,
            metric_tol,
            || json!({ "x": x, "a": a, "b": b }),
        );
    }
    if want("opposite-crisp-only") {
        // x ⊕ (-1)⊙x collapses to 0̃ exactly when x is real-valued
        let residue = d(&add(&x, &sc(-1.0, &x))?, &space.zero())?;
        let cancels = residue <= ALGEBRA_TOL * scale_of(&[norm(&x)?]);
        log.check_true(
            "opposite-crisp-only",
            cancels == space.has_opposite(&x),
            || json!({ "x": x, "residue": residue }),
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// fuzzy-number suites

fn level_family_round_trip(trials: u64, seed: u64, cfg: &GenConfig) -> CheckReport {
    run_trials("level-family-round-trip", trials, seed, |rng, log| {
        let u = gen_fuzzy(cfg, rng);
        let mut levels: Vec<f64> = (1..64)
            .filter(|_| rng.gen_bool(0.15))
            .map(|k| k as f64 / 64.0)
            .collect();
        levels.insert(0, 0.0);
        levels.push(1.0);
        let family: Vec<(f64, Interval)> = levels
            .iter()
            .map(|&r| (r, u.level_set(r).expect("level in [0, 1]")))
            .collect();
        match FuzzyNum::from_level_family(&family) {
            Ok(v) => {
                let mismatches = family
                    .iter()
                    .filter(|(r, m)| v.level_set(*r).ok().as_ref() != Some(m))
                    .count();
                log.check(
                    "levels-match",
                    mismatches as f64,
                    0.0,
                    || json!({ "u": u, "levels": levels }),
                );
            }
            Err(e) => log.fail(
                "family-accepted",
                f64::INFINITY,
                || json!({ "u": u, "levels": levels, "error": e.to_string() }),
            ),
        }
    })
}

fn embedding_isometry(trials: u64, seed: u64, cfg: &GenConfig) -> CheckReport {
    run_trials("embedding-isometry", trials, seed, |rng, log| {
        let u = gen_fuzzy(cfg, rng);
        let v = gen_fuzzy(cfg, rng);
        let (ul, uu) = u.embed();
        let (vl, vu) = v.embed();
        let b_dist = pair_norm(&(&ul - &vl, &uu - &vu));
        log.check(
            "isometry",
            (b_dist - u.metric_d(&v)).abs(),
            0.0,
            || json!({ "u": u, "v": v }),
        );
        log.check(
            "norm",
            (pair_norm(&(ul.clone(), uu.clone())) - u.norm_f()).abs(),
            0.0,
            || json!({ "u": u }),
        );
        let (sl, su) = (&u + &v).embed();
        log.check_true(
            "additivity",
            sl == &ul + &vl && su == &uu + &vu,
            || json!({ "u": u, "v": v }),
        );
    })
}

fn h_difference(trials: u64, seed: u64, cfg: &GenConfig) -> CheckReport {
    run_trials("h-difference", trials, seed, |rng, log| {
        let u = gen_fuzzy(cfg, rng);
        let v = gen_fuzzy(cfg, rng);
        let scale = scale_of(&[u.norm_f(), v.norm_f()]);

        // (u ⊕ v) ⊖ v always exists up to rounding in the subtraction
        let sum = &u + &v;
        match sum.h_difference(&v) {
            Some(w) => {
                let dev = (&v + &w).metric_d(&sum) / scale;
                log.check(
                    "round-trip-of-sum",
                    dev,
                    ALGEBRA_TOL,
                    || json!({ "u": u, "v": v }),
                );
            }
            None => {
                let dev =
                    invariant_violation(&(sum.lower() - v.lower()), &(sum.upper() - v.upper()))
                        / scale;
                log.check(
                    "exists-for-sums",
                    dev,
                    ALGEBRA_TOL,
                    || json!({ "u": u, "v": v }),
                );
            }
        }

        if let Some(w) = u.h_difference(&v) {
            let dev = (&v + &w).metric_d(&u) / scale;
            log.check("round-trip", dev, ALGEBRA_TOL, || json!({ "u": u, "v": v }));
        }

        let from_zero = FuzzyNum::zero().h_difference(&v);
        let ok = match from_zero {
            None => !v.is_crisp(),
            Some(w) => v.is_crisp() && w == -1.0 * &v,
        };
        log.check_true("zero-minus-v", ok, || json!({ "v": v }));
    })
}

// ---------------------------------------------------------------------------
// curve and convergence suites

fn curve_distance_continuity(trials: u64, seed: u64, cfg: &GenConfig) -> CheckReport {
    let (a, b) = CURVE_DOMAIN;
    run_trials("curve-distance-continuity", trials, seed, |rng, log| {
        let f = gen_curve(cfg, a, b, rng);
        let g = gen_curve(cfg, a, b, rng);
        let lip = |c: &FnCurve| {
            c.values()
                .windows(2)
                .zip(c.t_grid().windows(2))
                .map(|(v, t)| v[0].metric_d(&v[1]) / (t[1] - t[0]))
                .fold(0.0, f64::max)
        };
        let l = lip(&f) + lip(&g);
        let dist = |t: f64| f.eval(t).unwrap().metric_d(&g.eval(t).unwrap());
        let n = 64;
        let h = (b - a) / n as f64;
        let mut prev = dist(a);
        let mut worst = 0.0f64;
        for k in 1..=n {
            let cur = dist(a + k as f64 * h);
            worst = worst.max((cur - prev).abs() - l * h);
            prev = cur;
        }
        let (s, t) = (rng.gen_range(a..=b), rng.gen_range(a..=b));
        worst = worst.max((dist(s) - dist(t)).abs() - l * (s - t).abs());
        log.check(
            "lipschitz",
            worst.max(0.0),
            ALGEBRA_TOL * scale_of(&[l]),
            || json!({ "f": f, "g": g }),
        );
    })
}

fn cauchy_sanity(trials: u64, seed: u64, cfg: &GenConfig) -> CheckReport {
    fn steps<S: Generate>(
        space: &S,
        tag: &str,
        tol: f64,
        cfg: &GenConfig,
        rng: &mut ChaCha8Rng,
        log: &mut TrialLog,
    ) -> Result<()> {
        let x = space.generate(cfg, rng);
        let y = space.generate(cfg, rng);
        let ny = space.norm(&y)?;
        let term = |k: i32| space.add(&x, &space.scale(2f64.powi(-k), &y));
        let mut prev = term(0)?;
        for k in 1..=20 {
            let cur = term(k)?;
            let dev = rel_dev(space.dist(&prev, &cur)?, 2f64.powi(-k) * ny);
            log.check(tag, dev, tol, || json!({ "x": x, "y": y, "k": k }));
            prev = cur;
        }
        Ok(())
    }
    let (a, b) = CURVE_DOMAIN;
    let l2 = SeqLp::new(2.0).expect("valid p");
    let curves = CurvesSup::new(a, b).expect("valid interval");
    run_trials("cauchy-sanity", trials, seed, |rng, log| {
        let r = steps(&FuzzyNumbers, "rf", METRIC_TOL, cfg, rng, log)
            .and_then(|_| steps(&l2, "lp2", METRIC_TOL, cfg, rng, log))
            .and_then(|_| steps(&curves, "c-curve", METRIC_TOL, cfg, rng, log));
        if let Err(e) = r {
            log.fail("evaluation", f64::INFINITY, || err_inputs(&e));
        }
    })
}

// ---------------------------------------------------------------------------
// decompositions and functionals

fn decomposition(trials: u64, seed: u64, cfg: &GenConfig) -> CheckReport {
    run_trials("decomposition", trials, seed, |rng, log| {
        for dir in [Direction::Nondecreasing, Direction::Nonincreasing] {
            let u = gen_plfun_monotone(cfg, rng, dir);
            let split = match dir {
                Direction::Nondecreasing => decompose_ic(&u),
                Direction::Nonincreasing => decompose_dc(&u),
            };
            let d = match split {
                Ok(d) => d,
                Err(e) => {
                    log.fail(
                        "invariants",
                        f64::INFINITY,
                        || json!({ "u": u, "error": e.to_string() }),
                    );
                    continue;
                }
            };
            log.check("sum", d.sum().sup_dist(&u), 0.0, || json!({ "u": u }));
            let x = reconstruct(&d);
            log.check_true(
                "reconstruct",
                x.lower() == d.f() && x.upper() == d.g(),
                || json!({ "u": u }),
            );
            let end = u.end_value();
            let canonical = match dir {
                Direction::Nondecreasing if end <= 0.0 => {
                    d.f() == &u && d.g() == &PlFun::constant(0.0)
                }
                Direction::Nondecreasing => {
                    d.f() == &u.shift(-end) && d.g() == &PlFun::constant(end)
                }
                Direction::Nonincreasing if end >= 0.0 => {
                    d.f() == &PlFun::constant(0.0) && d.g() == &u
                }
                Direction::Nonincreasing => {
                    d.f() == &PlFun::constant(end) && d.g() == &u.shift(-end)
                }
            };
            log.check_true("canonical-case", canonical, || json!({ "u": u }));
        }
    })
}

fn random_rf<R: Rng>(cfg: &GenConfig, rng: &mut R) -> RfSpec {
    RfSpec::new(gen_plfun_continuous(cfg, 0.0, 1.0, rng)).expect("continuous h")
}

fn l0_consistency(trials: u64, seed: u64, cfg: &GenConfig) -> CheckReport {
    run_trials("l0-consistency", trials, seed, |rng, log| {
        let spec = random_rf(cfg, rng);
        for dir in [Direction::Nondecreasing, Direction::Nonincreasing] {
            let u = gen_plfun_monotone(cfg, rng, dir);
            let v = gen_plfun_monotone(cfg, rng, dir);
            let inputs = || json!({ "h": spec.h(), "u": u, "v": v });
            let vals = (|| {
                Ok::<_, Error>((
                    l0_rf(&spec, &u)?,
                    l0_rf(&spec, &v)?,
                    l0_rf(&spec, &(&u + &v))?,
                    rs_integral(spec.h(), &u)?,
                ))
            })();
            match vals {
                Ok((lu, lv, luv, direct)) => {
                    log.check("additivity", rel_dev(luv, lu + lv), INTEGRAL_TOL, inputs);
                    log.check(
                        "depends-only-on-u",
                        rel_dev(lu, direct),
                        INTEGRAL_TOL,
                        inputs,
                    );
                }
                Err(e) => log.fail("evaluation", f64::INFINITY, || err_inputs(&e)),
            }
        }
    })
}

fn functional_linearity(trials: u64, seed: u64, cfg: &GenConfig) -> CheckReport {
    let (a, b) = CURVE_DOMAIN;
    let c_space = SeqC;
    let l2 = SeqLp::new(2.0).expect("valid p");
    run_trials("functional-linearity", trials, seed, |rng, log| {
        let r = (|| -> Result<()> {
            let lambda = cfg.scalar(rng);
            let alpha = |rng: &mut ChaCha8Rng| -> Vec<f64> {
                (0..cfg.seq_head_len + 1).map(|_| cfg.scalar(rng)).collect()
            };
            let h = |rng: &mut ChaCha8Rng| gen_plfun_continuous(cfg, 0.0, 1.0, rng);

            let rf = random_rf(cfg, rng);
            let (x, y) = (gen_fuzzy(cfg, rng), gen_fuzzy(cfg, rng));
            linearity_case(
                log,
                "rf",
                |v: &FuzzyNum| rf.eval(v),
                &x,
                &y,
                lambda,
                |p, q| Ok(p + q),
                |l, p| l * p,
                || json!({ "h": rf.h(), "x": x, "y": y, "lambda": lambda }),
            )?;

            let cs = CSeqSpec::new(h(rng), h(rng), alpha(rng))?;
            let (x, y) = (c_space.generate(cfg, rng), c_space.generate(cfg, rng));
            linearity_case(
                log,
                "c",
                |v: &FnSeq| cs.eval(v),
                &x,
                &y,
                lambda,
                |p, q| Ok(p.add(q)),
                |l, p| p.scale(l),
                || json!({ "x": x, "y": y, "lambda": lambda }),
            )?;

            let ls = LpSeqSpec::new(2.0, h(rng), alpha(rng))?;
            let (x, y) = (l2.generate(cfg, rng), l2.generate(cfg, rng));
            linearity_case(
                log,
                "lp",
                |v: &FnSeq| ls.eval(v),
                &x,
                &y,
                lambda,
                |p, q| Ok(p.add(q)),
                |l, p| p.scale(l),
                || json!({ "x": x, "y": y, "lambda": lambda }),
            )?;

            let cc = CurveCSpec::new(h(rng), gen_plfun_jumpy(cfg, a, b, rng))?;
            let (x, y) = (gen_curve(cfg, a, b, rng), gen_curve(cfg, a, b, rng));
            linearity_case(
                log,
                "c-curve",
                |v: &FnCurve| cc.eval(v),
                &x,
                &y,
                lambda,
                |p, q| p.add(q),
                |l, p| p.scale(l),
                || json!({ "x": x, "y": y, "lambda": lambda }),
            )?;

            let lc = CurveLpSpec::new(2.0, h(rng), gen_plfun_jumpy(cfg, a, b, rng))?;
            let (x, y) = (gen_curve(cfg, a, b, rng), gen_curve(cfg, a, b, rng));
            linearity_case(
                log,
                "lp-curve",
                |v: &FnCurve| lc.eval(v),
                &x,
                &y,
                lambda,
                |p, q| p.add(q),
                |l, p| p.scale(l),
                || json!({ "x": x, "y": y, "lambda": lambda }),
            )?;
            Ok(())
        })();
        if let Err(e) = r {
            log.fail("evaluation", f64::INFINITY, || err_inputs(&e));
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn linearity_case<T, F, Add, Scale, I>(
    log: &mut TrialLog,
    tag: &str,
    f: F,
    x: &T,
    y: &T,
    lambda: f64,
    add: Add,
    scale: Scale,
    inputs: I,
) -> Result<()>
where
    F: Fn(&T) -> Result<f64>,
    Add: Fn(&T, &T) -> Result<T>,
    Scale: Fn(f64, &T) -> T,
    I: Fn() -> serde_json::Value,
{
    let (fx, fy) = (f(x)?, f(y)?);
    let fsum = f(&add(x, y)?)?;
    let fscaled = f(&scale(lambda, x))?;
    log.check(
        &format!("{tag}-additivity"),
        rel_dev(fsum, fx + fy),
        INTEGRAL_TOL,
        &inputs,
    );
    log.check(
        &format!("{tag}-homogeneity"),
        rel_dev(fscaled, lambda * fx),
        INTEGRAL_TOL,
        &inputs,
    );
    Ok(())
}

fn functional_boundedness(trials: u64, seed: u64, cfg: &GenConfig) -> CheckReport {
    run_trials("functional-boundedness", trials, seed, |rng, log| {
        let spec = random_rf(cfg, rng);
        let x = gen_fuzzy(cfg, rng);
        let m = spec.norm_bound();
        match spec.eval(&x) {
            Ok(v) => {
                let bound = m * x.norm_f();
                log.check(
                    "bound",
                    excess(v.abs(), bound),
                    INTEGRAL_TOL,
                    || json!({ "h": spec.h(), "x": x }),
                );
            }
            Err(e) => log.fail("evaluation", f64::INFINITY, || err_inputs(&e)),
        }
    })
}

fn functional_parts_agreement(trials: u64, seed: u64, cfg: &GenConfig) -> CheckReport {
    run_trials("functional-parts-agreement", trials, seed, |rng, log| {
        let spec = random_rf(cfg, rng);
        let x = gen_fuzzy(cfg, rng);
        match (spec.eval(&x), spec.eval_parts(&x)) {
            (Ok(direct), Ok(parts)) => {
                log.check(
                    "agreement",
                    rel_dev(direct, parts),
                    INTEGRAL_TOL,
                    || json!({ "h": spec.h(), "x": x }),
                );
            }
            (Err(e), _) | (_, Err(e)) => log.fail("evaluation", f64::INFINITY, || err_inputs(&e)),
        }
    })
}

fn helly_bray_decay(trials: u64, seed: u64, cfg: &GenConfig) -> CheckReport {
    run_trials("helly-bray-decay", trials, seed, |rng, log| {
        let spec = random_rf(cfg, rng);
        let u = gen_plfun_monotone(cfg, rng, Direction::Nondecreasing);
        let p = gen_plfun_monotone(cfg, rng, Direction::Nondecreasing);
        let p = if p.sup_norm() > 1.0 {
            p.scale(1.0 / p.sup_norm())
        } else {
            p
        };
        let bound = norm_bound_rf(spec.h());
        let r = (|| -> Result<()> {
            let base = l0_rf(&spec, &u)?;
            let mut worst = 0.0f64;
            for n in 1..=100 {
                let un = &u + &p.scale(1.0 / n as f64);
                let gap = (l0_rf(&spec, &un)? - base).abs();
                worst = worst.max(gap - (bound / n as f64 + 1e-12));
            }
            log.check(
                "decay",
                worst.max(0.0),
                0.0,
                || json!({ "h": spec.h(), "u": u, "p": p }),
            );
            Ok(())
        })();
        if let Err(e) = r {
            log.fail("evaluation", f64::INFINITY, || err_inputs(&e));
        }
    })
}

fn functional_reductions(trials: u64, seed: u64, cfg: &GenConfig) -> CheckReport {
    let (a, b) = CURVE_DOMAIN;
    let l1 = SeqLp::new(1.0).expect("valid p");
    run_trials("functional-reductions", trials, seed, |rng, log| {
        let r = (|| -> Result<()> {
            let h = gen_plfun_continuous(cfg, 0.0, 1.0, rng);

            // one-hot α picks out a single term
            let x: FnSeq = l1.generate(cfg, rng);
            let j = rng.gen_range(0..=cfg.seq_head_len);
            let mut alpha = vec![0.0; j + 1];
            alpha[j] = 1.0;
            let picked = LpSeqSpec::new(1.0, h.clone(), alpha)?.eval(&x)?;
            log.check(
                "lp-one-hot",
                (picked - eval_rf(&h, &x.term(j))?).abs(),
                0.0,
                || json!({ "h": h, "x": x, "j": j }),
            );

            // empty α leaves the limit term
            let h1 = gen_plfun_continuous(cfg, 0.0, 1.0, rng);
            let xc: FnSeq = SeqC.generate(cfg, rng);
            let zterm = CSeqSpec::new(h1.clone(), h.clone(), vec![])?.eval(&xc)?;
            log.check(
                "c-limit-term",
                (zterm - eval_rf(&h1, &xc.limit())?).abs(),
                0.0,
                || json!({ "h1": h1, "x": xc }),
            );

            // h₂ ≡ 1 in the L^p family is h₂(t) = t in the C family
            let f = gen_curve(cfg, a, b, rng);
            let lp = CurveLpSpec::new(1.0, h.clone(), PlFun::constant_on(a, b, 1.0))?.eval(&f)?;
            let id = PlFun::on_domain(vec![a, b], vec![(a, b)])?;
            let cc = CurveCSpec::new(h.clone(), id)?.eval(&f)?;
            log.check(
                "lp-curve-vs-c-curve",
                rel_dev(lp, cc),
                INTEGRAL_TOL,
                || json!({ "h": h, "f": f }),
            );

            // constant curves telescope against h₂
            let u = gen_fuzzy(cfg, rng);
            let h2 = gen_plfun_jumpy(cfg, a, b, rng);
            let flat = FnCurve::constant(a, b, u.clone())?;
            let got = CurveCSpec::new(h.clone(), h2.clone())?.eval(&flat)?;
            let want = eval_rf(&h, &u)? * (h2.end_value() - h2.start_value());
            log.check(
                "constant-curve",
                rel_dev(got, want),
                INTEGRAL_TOL,
                || json!({ "h": h, "h2": h2, "u": u }),
            );

            // L₀ through the generic monotone split agrees with eval_rf on x₋ + x₊
            let g = gen_plfun_monotone(cfg, rng, Direction::Nonincreasing);
            let via_split = eval_rf(&h, &reconstruct(&decompose(&g)?))?;
            log.check(
                "split-independent",
                rel_dev(via_split, rs_integral(&h, &g)?),
                INTEGRAL_TOL,
                || json!({ "h": h, "u": g }),
            );
            Ok(())
        })();
        if let Err(e) = r {
            log.fail("evaluation", f64::INFINITY, || err_inputs(&e));
        }
    })
}

// ---------------------------------------------------------------------------
// counterexamples

fn counterexample_suite(
    suite: &str,
    claim: &str,
    trials: u64,
    seed: u64,
    cfg: &GenConfig,
) -> Result<CheckReport> {
    let start = std::time::Instant::now();
    let budget = trials.min(SEARCH_BUDGET);
    let found = search_counterexample(claim, budget, seed, cfg)?;
    let mut report = run_trials(suite, 0, seed, |_, _| {});
    report.trials = budget;
    match found {
        Some(w) => {
            report
                .worst_deviation
                .insert("witness-deviation".into(), w.deviation);
            report.counterexample = Some(w);
        }
        None => {
            report.failure_count = 1;
            report.passed = false;
            report.failures.push(Witness {
                trial: budget,
                property: "counterexample-found".into(),
                deviation: 0.0,
                inputs: json!({ "budget": budget }),
            });
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}
