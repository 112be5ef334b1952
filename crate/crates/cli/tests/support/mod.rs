//! Golden-file cases for the `ptree` binary.
//!
//! Each case's expected output lives in `tests/golden/<name>.out`: a first
//! line `exit <code>` followed by stdout verbatim. Run with
//! `UPDATE_GOLDEN=1` to rewrite them.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub const CASES: &[(&str, &[&str])] = &[
    (
        "gen_json",
        &[
            "gen-pseudotree",
            "--seed",
            "7",
            "--size",
            "10",
            "--format",
            "json",
        ],
    ),
    (
        "gen_dot",
        &[
            "gen-pseudotree",
            "--seed",
            "7",
            "--size",
            "10",
            "--format",
            "dot",
        ],
    ),
    (
        "gen_large",
        &["gen-pseudotree", "--seed", "42", "--size", "25"],
    ),
    ("check_generated", &["check", "--in", "gen7.json"]),
    ("check_diamond", &["check", "--in", "diamond.json"]),
    (
        "check_pm_antichain",
        &["check", "--pm", "--in", "antichain2.json"],
    ),
    (
        "check_pm_completed",
        &["check", "--pm", "--in", "forest_completed.json"],
    ),
    ("check_truncated_json", &["check", "--in", "truncated.json"]),
    (
        "check_missing_file",
        &["check", "--in", "no-such-file.json"],
    ),
    (
        "complete_antichain",
        &["complete", "--in", "antichain2.json"],
    ),
    (
        "complete_forest_dot",
        &["complete", "--in", "forest.json", "--format", "dot"],
    ),
    ("complete_diamond", &["complete", "--in", "diamond.json"]),
    (
        "embed_completed",
        &["embed-tq", "--in", "forest_completed.json"],
    ),
    (
        "embed_completed_seed",
        &["embed-tq", "--in", "forest_completed.json", "--seed", "3"],
    ),
    ("embed_not_pm", &["embed-tq", "--in", "antichain2.json"]),
    ("iso_swapped", &["iso-prefix", "--n", "12"]),
    (
        "iso_scaled",
        &[
            "iso-prefix",
            "--n",
            "8",
            "--b-enum",
            "scaled",
            "--scale",
            "1/2",
        ],
    ),
    ("rank_text", &["rank", "--in", "seqtree.json"]),
    (
        "rank_json",
        &["rank", "--in", "seqtree.json", "--format", "json"],
    ),
    (
        "canonical_omega",
        &["canonical-tree", "w^{1}", "--width", "5", "--depth", "3"],
    ),
    (
        "canonical_omega_squared",
        &[
            "canonical-tree",
            "w^{2} + 1",
            "--width",
            "2",
            "--depth",
            "5",
        ],
    ),
    (
        "canonical_too_deep",
        &["canonical-tree", "w^{w^{w^{w^{1}}}}"],
    ),
    ("ord_split", &["ord", "split", "w^{3/2'}*2 + w^{4} + 5"]),
    (
        "ord_split_json",
        &["ord", "split", "w^{3/2'}*2 + w^{4} + 5", "--format", "json"],
    ),
    ("ord_add_absorb", &["ord", "add", "w^{1} + 3", "w^{2}"]),
    (
        "ord_add_cut",
        &["ord", "add", "w^{1/2'} + w^{3}", "w^{1'}*2"],
    ),
    ("ord_cmp", &["ord", "cmp", "w^{w^{1}}", "w^{5}*9 + 1"]),
    ("ord_sub", &["ord", "sub", "w^{2} + w^{1}", "w^{2}*3 + 4"]),
    ("ord_sub_too_large", &["ord", "sub", "w^{2}", "w^{1}"]),
    ("ord_between", &["ord", "between", "w^{1/2'}", "w^{1'}"]),
    ("ord_between_root_gap", &["ord", "between", "0", "w^{0'}"]),
    (
        "ord_between_not_pure",
        &["ord", "between", "w^{1'}", "w^{1'} + 1"],
    ),
    ("ord_mixed_orders", &["ord", "add", "w^{1'}", "w^{w^{1}}"]),
    ("ord_bad_syntax", &["ord", "add", "w^{1", "2"]),
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// `exit <code>` then stdout, as stored in the golden files.
pub fn run_case(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_ptree"))
        .args(args)
        .current_dir(golden_dir())
        .output()
        .expect("ptree runs");
    let code = out.status.code().expect("exited normally");
    let mut bytes = format!("exit {code}\n").into_bytes();
    bytes.extend_from_slice(&out.stdout);
    bytes
}

pub struct CaseResult {
    pub name: &'static str,
    pub stable: bool,
    pub matches_golden: bool,
}

/// Runs every case twice and compares both runs with the stored file.
pub fn replay_all() -> Vec<CaseResult> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    CASES
        .iter()
        .map(|(name, args)| {
            let first = run_case(args);
            let second = run_case(args);
            let path = golden_dir().join(format!("{name}.out"));
            if update {
                std::fs::write(&path, &first).expect("golden file writable");
            }
            let stored = std::fs::read(&path).unwrap_or_default();
            CaseResult {
                name,
                stable: first == second,
                matches_golden: first == stored && second == stored,
            }
        })
        .collect()
}
