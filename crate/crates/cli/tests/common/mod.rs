//! Worked CLI examples shared by the integration and acceptance targets.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Runs the binary with `args`; arguments ending in `.json` are fixtures.
pub fn fnspace(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| {
            if a.ends_with(".json") {
                fixture(a).display().to_string()
            } else {
                a.to_string()
            }
        })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_fnspace"))
        .args(&args)
        .output()
        .expect("binary runs")
}

pub struct Golden {
    pub args: &'static [&'static str],
    pub code: i32,
    /// Exact stdout on success; a required stderr fragment otherwise.
    pub expect: &'static str,
}

const fn ok(args: &'static [&'static str], stdout: &'static str) -> Golden {
    Golden {
        args,
        code: 0,
        expect: stdout,
    }
}

const fn err(args: &'static [&'static str], code: i32, fragment: &'static str) -> Golden {
    Golden {
        args,
        code,
        expect: fragment,
    }
}

pub const GOLDENS: &[Golden] = &[
    // metric
    ok(&["metric", "--space", "rf", "crisp1.json", "crisp4.json"], "3\n"),
    ok(&["metric", "--space", "lp", "--p", "2", "seq34.json", "seq_zero.json"], "5\n"),
    ok(&["metric", "--space", "m", "seq_tail2.json", "seq_tail0.json"], "2\n"),
    ok(&["metric", "--space", "c", "seq_tail2.json", "seq_tail0.json"], "2\n"),
    ok(&["metric", "--space", "c-curve", "curve_0_to_2.json", "curve_zero.json"], "2\n"),
    ok(&["metric", "--space", "lp-curve", "--p", "1", "curve_0_to_1.json", "curve_zero.json"], "0.5\n"),
    ok(
        &["metric", "--space", "lp-curve", "--p", "2", "curve_0_to_1.json", "curve_zero.json"],
        "0.57735026919\n",
    ),
    err(&["metric", "--space", "rf", "swapped.json", "crisp1.json"], 2, "nondecreasing"),
    err(&["metric", "--space", "lp", "seq34.json", "seq_zero.json"], 2, "--p"),
    err(&["metric", "--space", "c0", "seq_tail2.json", "seq_tail0.json"], 3, "c0"),
    err(&["metric", "--space", "lp", "--p", "1", "seq_tail2.json", "seq_tail0.json"], 3, "l^1"),
    err(&["metric", "--space", "lp", "--p", "2", "tri012.json", "crisp1.json"], 3, "sequence"),
    err(&["metric", "--space", "c-curve", "curve_zero.json", "curve_zero_02.json"], 3, "domain"),
    // norm
    ok(&["norm", "--space", "rf", "tri012.json"], "2\n"),
    ok(&["norm", "--space", "lp", "--p", "2", "seq34.json"], "5\n"),
    // eval
    ok(&["eval", "spec_rf_one.json", "tri012.json"], "0\n"),
    ok(&["eval", "spec_rf_zero.json", "tri013.json"], "0\n"),
    ok(&["eval", "spec_rf_one.json", "crisp5.json"], "0\n"),
    ok(&["eval", "spec_rf_id.json", "tri012.json"], "0\n"),
    ok(&["eval", "spec_rf_id.json", "tri013.json"], "-0.5\n"),
    ok(&["eval", "spec_c_empty.json", "seq_const013.json"], "-0.5\n"),
    ok(&["eval", "spec_c_one.json", "seq_const013.json"], "-1\n"),
    ok(&["eval", "spec_lp_one.json", "seq_tri.json"], "0\n"),
    ok(&["eval", "spec_ccurve_id.json", "curve_const013.json"], "-1\n"),
    ok(&["eval", "spec_lpcurve_zero.json", "curve_const013.json"], "0\n"),
    ok(&["eval", "spec_lpcurve_one.json", "curve_const013.json"], "-1\n"),
    err(&["eval", "spec_rf_step.json", "tri012.json"], 2, "continuous"),
    err(&["eval", "spec_rf_one.json", "seq34.json"], 3, "fuzzy number"),
    err(&["eval", "spec_lp_one.json", "seq_tail2.json"], 3, ""),
    // decompose
    ok(
        &["decompose", "pl_identity.json"],
        "{\"f\":{\"breakpoints\":[0,1],\"segments\":[[-1,0]]},\"g\":{\"breakpoints\":[0,1],\"segments\":[[1,1]]}}\n",
    ),
    ok(
        &["decompose", "pl_r_minus_2.json"],
        "{\"f\":{\"breakpoints\":[0,1],\"segments\":[[-2,-1]]},\"g\":{\"breakpoints\":[0,1],\"segments\":[[0,0]]}}\n",
    ),
    ok(
        &["decompose", "pl_one_minus_r.json"],
        "{\"f\":{\"breakpoints\":[0,1],\"segments\":[[0,0]]},\"g\":{\"breakpoints\":[0,1],\"segments\":[[1,0]]}}\n",
    ),
    ok(
        &["decompose", "pl_minus_one_minus_r.json"],
        "{\"f\":{\"breakpoints\":[0,1],\"segments\":[[-2,-2]]},\"g\":{\"breakpoints\":[0,1],\"segments\":[[1,0]]}}\n",
    ),
    ok(
        &["decompose", "pl_zero.json"],
        "{\"f\":{\"breakpoints\":[0,1],\"segments\":[[0,0]]},\"g\":{\"breakpoints\":[0,1],\"segments\":[[0,0]]}}\n",
    ),
    err(&["decompose", "pl_sawtooth.json"], 2, "monotone"),
    // hdiff
    ok(&["hdiff", "crisp0.json", "tri012.json"], "{\"exists\":false}\n"),
    ok(
        &["hdiff", "tri012.json", "tri_half.json"],
        "{\"exists\":true,\"difference\":{\"lower\":{\"breakpoints\":[0,1],\"segments\":[[0,0.5]]},\"upper\":{\"breakpoints\":[0,1],\"segments\":[[1,0.5]]}}}\n",
    ),
    ok(
        &["hdiff", "tri012.json", "tri012.json"],
        "{\"exists\":true,\"difference\":{\"lower\":{\"breakpoints\":[0,1],\"segments\":[[0,0]]},\"upper\":{\"breakpoints\":[0,1],\"segments\":[[0,0]]}}}\n",
    ),
    // levelset
    ok(&["levelset", "tri012.json", "1"], "[1,1]\n"),
    ok(&["levelset", "tri012.json", "0"], "[0,2]\n"),
    ok(&["levelset", "crisp5.json", "0.3"], "[5,5]\n"),
    err(&["levelset", "tri012.json", "1.5"], 2, "1.5"),
    // check
    err(&["check", "no-such-suite"], 2, "no-such-suite"),
];

/// `Ok` when the run matches, else a description of the difference.
pub fn run_golden(g: &Golden) -> Result<(), String> {
    let out = fnspace(g.args);
    let code = out.status.code().unwrap_or(-1);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let stderr = String::from_utf8_lossy(&out.stderr);
    if code != g.code {
        return Err(format!(
            "{:?}: exit {code}, want {} (stderr: {stderr})",
            g.args, g.code
        ));
    }
    if g.code == 0 && stdout != g.expect {
        return Err(format!(
            "{:?}: stdout {stdout:?}, want {:?}",
            g.args, g.expect
        ));
    }
    if g.code != 0 && !stderr.contains(g.expect) {
        return Err(format!(
            "{:?}: stderr {stderr:?} lacks {:?}",
            g.args, g.expect
        ));
    }
    Ok(())
}
