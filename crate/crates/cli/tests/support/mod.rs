#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

/// Golden case: file stem, command line (inputs named relative to
/// `data/inputs`), and expected exit status.
pub const CASES: &[(&str, &[&str], i32)] = &[
    (
        "fgl_inverse_mult",
        &["fgl", "inverse", "--backend", "mult", "--order", "3"],
        0,
    ),
    ("fgl_inverse_free", &["fgl", "inverse", "--order", "4"], 0),
    (
        "fgl_nseries_free",
        &["fgl", "nseries", "--n", "2", "--order", "4"],
        0,
    ),
    (
        "fgl_nseries_log",
        &[
            "fgl",
            "nseries",
            "--n",
            "-2",
            "--backend",
            "log",
            "--order",
            "3",
        ],
        0,
    ),
    (
        "fgl_multilinear_log",
        &[
            "fgl",
            "multilinear",
            "--n",
            "1,-1",
            "--backend",
            "log",
            "--order",
            "3",
        ],
        0,
    ),
    (
        "fgl_decompose_free",
        &["fgl", "decompose", "--order", "3", "@decompose_n.json"],
        0,
    ),
    (
        "snc_divclass_two_curves",
        &["snc", "divclass", "@two_curves.json"],
        0,
    ),
    (
        "snc_divclass_double_curve",
        &["snc", "divclass", "--order", "2", "@double_curve.json"],
        0,
    ),
    (
        "snc_prodclass_two_curves",
        &["snc", "prodclass", "@two_curves.json"],
        0,
    ),
    (
        "snc_prodclass_threefold",
        &[
            "snc",
            "prodclass",
            "--backend",
            "mult",
            "--order",
            "3",
            "@threefold.json",
        ],
        0,
    ),
    (
        "snc_normalform",
        &["snc", "normalform", "@normalform.json"],
        0,
    ),
    (
        "snc_check_properties",
        &[
            "snc",
            "check-properties",
            "--backend",
            "log",
            "--order",
            "3",
            "@threefold.json",
        ],
        0,
    ),
    (
        "snc_invalid_faces",
        &["snc", "divclass", "@bad_faces.json"],
        2,
    ),
    (
        "snc_order_too_low",
        &["snc", "divclass", "--order", "2", "@threefold.json"],
        2,
    ),
    ("cycles_dpr", &["cycles", "dpr", "@dpr.json"], 0),
    ("cycles_dpr_bad", &["cycles", "dpr", "@dpr_bad.json"], 2),
    (
        "cycles_blowup_tower",
        &["cycles", "blowup-tower", "@tower.json"],
        0,
    ),
    (
        "cycles_relgen_dim",
        &["cycles", "relgen", "@relgen_dim.json"],
        0,
    ),
    (
        "cycles_relgen_sect",
        &["cycles", "relgen", "@relgen_sect.json"],
        0,
    ),
    (
        "cycles_relgen_fgl",
        &["cycles", "relgen", "--order", "4", "@relgen_fgl.json"],
        0,
    ),
];

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn golden_path(name: &str) -> PathBuf {
    data_dir().join("golden").join(format!("{name}.json"))
}

/// Runs the binary with `FGL_ORDER` cleared and returns status and stdout.
pub fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let inputs = data_dir().join("inputs");
    let args: Vec<String> = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(file) => inputs.join(file).to_string_lossy().into_owned(),
            None => a.to_string(),
        })
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_lazard"))
        .args(&args)
        .env_remove("FGL_ORDER")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// Parses and re-serializes compact output.
pub fn reserialize(bytes: &[u8]) -> Vec<u8> {
    let value: serde_json::Value = serde_json::from_slice(bytes).expect("output is JSON");
    let mut text = serde_json::to_vec(&value).unwrap();
    text.push(b'\n');
    text
}
