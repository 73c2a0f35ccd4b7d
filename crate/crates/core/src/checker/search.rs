//! Directed search for counterexamples to identities that fail in general.

use rand::Rng;
use rayon::prelude::*;
use serde_json::json;

use super::gen::{gen_curve, gen_fuzzy, GenConfig};
use super::{trial_rng, Witness, ALGEBRA_TOL};
use crate::error::{Error, Result};
use crate::fuzznum::{invariant_violation, FuzzyNum};

/// Claims that hold only in restricted form, with the form that fails.
pub const CLAIMS: &[(&str, &str)] = &[
    (
        "mixed-sign-distributivity",
        "(a+b)⊙u = a⊙u ⊕ b⊙u for scalars of opposite sign",
    ),
    (
        "mixed-sign-d-scaling",
        "D(α⊙u, β⊙u) = |α-β|·‖u‖ for scalars of opposite sign",
    ),
    (
        "opposite-existence",
        "every fuzzy number has an additive opposite",
    ),
    (
        "h-difference-existence",
        "0̃ ⊖ v exists for every fuzzy number v",
    ),
    (
        "curve-mixed-sign-distributivity",
        "(a+b)⊙f = a⊙f ⊕ b⊙f on C([0, 1]; R_F) for scalars of opposite sign",
    ),
];

fn scale_of(xs: &[f64]) -> f64 {
    xs.iter().fold(1.0, |m, x| m.max(x.abs()))
}

/// Deviation and inputs if trial `rng` refutes `claim`.
fn attempt<R: Rng>(claim: &str, cfg: &GenConfig, rng: &mut R) -> Option<(f64, serde_json::Value)> {
    match claim {
        "mixed-sign-distributivity" => {
            let u = gen_fuzzy(cfg, rng);
            let (a, b) = cfg.opposite_sign_pair(rng);
            let lhs = (a + b) * &u;
            let rhs = &(a * &u) + &(b * &u);
            let dev = lhs.metric_d(&rhs);
            (dev > ALGEBRA_TOL * scale_of(&[lhs.norm_f(), rhs.norm_f()])).then(|| {
                (
                    dev,
                    json!({ "u": u, "a": a, "b": b, "lhs": lhs, "rhs": rhs }),
                )
            })
        }
        "mixed-sign-d-scaling" => {
            let u = gen_fuzzy(cfg, rng);
            let (alpha, beta) = cfg.opposite_sign_pair(rng);
            let d = (alpha * &u).metric_d(&(beta * &u));
            let scaled = (alpha - beta).abs() * u.norm_f();
            let dev = (d - scaled).abs();
            (dev > ALGEBRA_TOL * scale_of(&[d, scaled])).then(|| {
                (
                    dev,
                    json!({ "u": u, "alpha": alpha, "beta": beta, "d": d, "scaled_norm": scaled }),
                )
            })
        }
        "opposite-existence" => {
            // v ⊕ u = 0̃ forces v = (-u₋, -u₊); measure how far that is from valid
            let u = gen_fuzzy(cfg, rng);
            let dev = invariant_violation(&u.lower().negate(), &u.upper().negate());
            (!u.has_opposite()).then(|| (dev, json!({ "u": u })))
        }
        "h-difference-existence" => {
            let v = gen_fuzzy(cfg, rng);
            let dev = invariant_violation(&v.lower().negate(), &v.upper().negate());
            FuzzyNum::zero()
                .h_difference(&v)
                .is_none()
                .then(|| (dev, json!({ "u": FuzzyNum::zero(), "v": v })))
        }
        "curve-mixed-sign-distributivity" => {
            let f = gen_curve(cfg, 0.0, 1.0, rng);
            let (a, b) = cfg.opposite_sign_pair(rng);
            let lhs = f.scale(a + b);
            let rhs = f.scale(a).add(&f.scale(b)).expect("same domain");
            let dev = lhs.metric_dstar(&rhs).expect("same domain");
            (dev > ALGEBRA_TOL * scale_of(&[lhs.norm_sup(), rhs.norm_sup()]))
                .then(|| (dev, json!({ "f": f, "a": a, "b": b })))
        }
        _ => None,
    }
}

/// First trial index in `0..trials` whose sample refutes `claim`.
pub fn search_counterexample(
    claim: &str,
    trials: u64,
    seed: u64,
    cfg: &GenConfig,
) -> Result<Option<Witness>> {
    if !CLAIMS.iter().any(|(c, _)| *c == claim) {
        return Err(Error::UnknownClaim(claim.to_string()));
    }
    Ok((0..trials).into_par_iter().find_map_first(|i| {
        attempt(claim, cfg, &mut trial_rng(seed, i)).map(|(deviation, inputs)| Witness {
            trial: i,
            property: claim.to_string(),
            deviation,
            inputs,
        })
    }))
}

#[cfg(test)]
/// Re-runs a witness's trial and returns its deviation if it still refutes the claim.
pub(crate) fn replay(claim: &str, seed: u64, trial: u64, cfg: &GenConfig) -> Option<f64> {
    attempt(claim, cfg, &mut trial_rng(seed, trial)).map(|(d, _)| d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_sign_claims_fall_quickly() {
        let cfg = GenConfig::default();
        for (claim, _) in CLAIMS {
            let w = search_counterexample(claim, 100, 7, &cfg).unwrap();
            let w = w.unwrap_or_else(|| panic!("no counterexample for {claim}"));
            assert!(w.deviation > 0.0, "{claim}");
            assert_eq!(replay(claim, 7, w.trial, &cfg), Some(w.deviation));
        }
    }

    #[test]
    fn crisp_numbers_have_opposites() {
        let cfg = GenConfig {
            crisp_probability: 1.0,
            ..GenConfig::default()
        };
        assert_eq!(
            search_counterexample("opposite-existence", 50, 1, &cfg).unwrap(),
            None
        );
        assert_eq!(
            search_counterexample("h-difference-existence", 50, 1, &cfg).unwrap(),
            None
        );
    }

    #[test]
    fn unknown_claims_are_rejected() {
        assert_eq!(
            search_counterexample("nope", 1, 1, &GenConfig::default()),
            Err(Error::UnknownClaim("nope".into()))
        );
    }
}
