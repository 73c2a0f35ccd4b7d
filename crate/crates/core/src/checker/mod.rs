//! Randomized property suites.
//!
//! Trial `i` of a run with seed `s` draws from its own ChaCha8 stream
//! `(s, i)`, so trials run in parallel, any subset can be replayed, and a
//! witness is reproduced by re-running its trial index.

mod gen;
mod search;
mod suites;

use std::collections::BTreeMap;
use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use gen::{
    gen_curve, gen_fuzzy, gen_fuzzy_noncrisp, gen_plfun_continuous, gen_plfun_jumpy,
    gen_plfun_monotone, gen_seq, Direction, GenConfig, Generate,
};
pub use search::{search_counterexample, CLAIMS};
pub use suites::{fn_axioms, run_suite, suite_names, SUITES};

pub const SCHEMA_VERSION: u32 = 1;

/// Algebraic identities: exact up to rounding.
pub const ALGEBRA_TOL: f64 = 1e-12;
/// Closed-form metrics.
pub const METRIC_TOL: f64 = 1e-10;
/// `D_p` outside the closed-form cases.
pub const DP_TOL: f64 = 1e-8;

/// At most this many witnesses are kept per report.
const MAX_WITNESSES: usize = 20;

/// The generator stream for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: u64,
    pub property: String,
    pub deviation: f64,
    pub inputs: serde_json::Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub suite: String,
    pub trials: u64,
    pub seed: u64,
    pub passed: bool,
    pub failure_count: u64,
    pub failures: Vec<Witness>,
    pub worst_deviation: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Witness>,
    /// Wall time; left out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for CheckReport {
    /// Everything but the wall time.
    fn eq(&self, other: &Self) -> bool {
        self.schema_version == other.schema_version
            && self.suite == other.suite
            && self.trials == other.trials
            && self.seed == other.seed
            && self.passed == other.passed
            && self.failure_count == other.failure_count
            && self.failures == other.failures
            && self.worst_deviation == other.worst_deviation
            && self.counterexample == other.counterexample
    }
}

impl CheckReport {
    fn from_log(suite: &str, trials: u64, seed: u64, log: TrialLog) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            trials,
            seed,
            passed: log.failure_count == 0,
            failure_count: log.failure_count,
            failures: log.failures,
            worst_deviation: log.worst,
            counterexample: None,
            elapsed: Duration::ZERO,
        }
    }

    /// Combines two runs of the same suite over disjoint trial sets.
    pub fn merge(mut self, other: CheckReport) -> CheckReport {
        self.trials += other.trials;
        self.failure_count += other.failure_count;
        self.failures.extend(other.failures);
        self.failures.sort_by_key(|w| w.trial);
        self.failures.truncate(MAX_WITNESSES);
        self.passed = self.failure_count == 0;
        for (k, v) in other.worst_deviation {
            let e = self.worst_deviation.entry(k).or_insert(v);
            *e = e.max(v);
        }
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self.elapsed += other.elapsed;
        self
    }
}

/// What one or more trials observed.
#[derive(Clone, Debug, Default)]
pub struct TrialLog {
    trial: u64,
    failure_count: u64,
    failures: Vec<Witness>,
    worst: BTreeMap<String, f64>,
}

impl TrialLog {
    fn new(trial: u64) -> Self {
        Self {
            trial,
            ..Self::default()
        }
    }

    pub fn trial(&self) -> u64 {
        self.trial
    }

    /// Records `deviation` under `property` without judging it.
    pub fn observe(&mut self, property: &str, deviation: f64) {
        let e = self.worst.entry(property.to_string()).or_insert(0.0);
        // NaN must not hide behind max
        if deviation.is_nan() || deviation > *e {
            *e = deviation;
        }
    }

    /// Passes iff `deviation <= tol`; the inputs are serialized only on failure.
    pub fn check<F>(&mut self, property: &str, deviation: f64, tol: f64, inputs: F) -> bool
    where
        F: FnOnce() -> serde_json::Value,
    {
        self.observe(property, deviation);
        let ok = deviation <= tol;
        if !ok {
            self.push_failure(property, deviation, inputs);
        }
        ok
    }

    /// A boolean property.
    pub fn check_true<F>(&mut self, property: &str, holds: bool, inputs: F) -> bool
    where
        F: FnOnce() -> serde_json::Value,
    {
        self.check(property, if holds { 0.0 } else { 1.0 }, 0.0, inputs)
    }

    pub fn fail<F>(&mut self, property: &str, deviation: f64, inputs: F)
    where
        F: FnOnce() -> serde_json::Value,
    {
        self.observe(property, deviation);
        self.push_failure(property, deviation, inputs);
    }

    fn push_failure<F>(&mut self, property: &str, deviation: f64, inputs: F)
    where
        F: FnOnce() -> serde_json::Value,
    {
        self.failure_count += 1;
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(Witness {
                trial: self.trial,
                property: property.to_string(),
                deviation,
                inputs: inputs(),
            });
        }
    }

    fn merge(mut self, other: TrialLog) -> TrialLog {
        self.failure_count += other.failure_count;
        let room = MAX_WITNESSES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        for (k, v) in other.worst {
            self.observe(&k, v);
        }
        self
    }
}

/// Runs `body` once per trial index in parallel and folds the logs in
/// trial order.
pub fn run_trials<F>(suite: &str, trials: u64, seed: u64, body: F) -> CheckReport
where
    F: Fn(&mut ChaCha8Rng, &mut TrialLog) + Sync,
{
    let start = std::time::Instant::now();
    let log = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let mut log = TrialLog::new(i);
            body(&mut rng, &mut log);
            log
        })
        .reduce(TrialLog::default, TrialLog::merge);
    let mut report = CheckReport::from_log(suite, trials, seed, log);
    report.elapsed = start.elapsed();
    report
}

/// Runs `body` once per trial index in parallel, keeping results in order.
pub fn map_trials<T, F>(trials: u64, seed: u64, body: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|i| body(&mut trial_rng(seed, i)))
        .collect()
}

/// Re-runs a single trial of a suite; used to replay a recorded witness.
pub fn replay_trial<F>(seed: u64, trial: u64, body: F) -> TrialLog
where
    F: FnOnce(&mut ChaCha8Rng, &mut TrialLog),
{
    let mut rng = trial_rng(seed, trial);
    let mut log = TrialLog::new(trial);
    body(&mut rng, &mut log);
    log
}

impl TrialLog {
    pub fn failures(&self) -> &[Witness] {
        &self.failures
    }
}
