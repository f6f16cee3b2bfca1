//! Scripted CLI invocations checked against transcripts in `tests/golden`.
//!
//! Each case runs the `addrep` binary in a fresh directory holding the files
//! from `tests/golden/inputs`, then renders exit code, stdout, stderr and the
//! listed output files into one transcript. Set `UPDATE_GOLDEN=1` to rewrite
//! the transcripts.
#![allow(dead_code)]

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
    /// Output files whose contents go into the transcript.
    pub files: &'static [&'static str],
}

pub const CASES: &[Case] = &[
    Case {
        name: "generate_greedy_sidon",
        args: &["generate", "greedy-sidon", "--count", "8", "--out", "out.txt"],
        exit: 0,
        files: &["out.txt", "out.txt.report.json"],
    },
    Case {
        name: "generate_theorem2",
        args: &["generate", "theorem2", "--N", "2", "--d", "1", "--sidon", "sidon8.txt", "--out", "out.txt"],
        exit: 0,
        files: &["out.txt", "out.txt.report.json"],
    },
    Case {
        name: "theorem2_empty_substrate",
        args: &["generate", "theorem2", "--N", "1", "--d", "1", "--sidon", "empty.txt", "--out", "out.txt"],
        exit: 2,
        files: &[],
    },
    Case {
        name: "theorem2_not_sidon",
        args: &["generate", "theorem2", "--N", "1", "--d", "1", "--sidon", "not_sidon.txt", "--out", "out.txt"],
        exit: 2,
        files: &[],
    },
    Case {
        name: "lemma1_without_seed",
        args: &["generate", "lemma1", "--M", "32", "--d", "1", "--lambda", "-1,1", "--out", "out.txt"],
        exit: 2,
        files: &[],
    },
    Case {
        name: "lemma1_sampling_failure",
        args: &[
            "generate", "lemma1", "--M", "4", "--d", "0", "--lambda", "1", "--seed", "5", "--max-trials", "1",
            "--out", "out.txt",
        ],
        exit: 3,
        files: &[],
    },
    Case {
        name: "lemma1_accepted",
        args: &["generate", "lemma1", "--M", "16", "--d", "0", "--lambda", "1", "--seed", "1", "--out", "out.txt"],
        exit: 0,
        files: &["out.txt", "out.txt.report.json"],
    },
    Case {
        name: "analyze_rep",
        args: &["analyze", "rep", "zero_one.txt", "--k", "2", "--out", "out.tsv"],
        exit: 0,
        files: &["out.tsv"],
    },
    Case {
        name: "analyze_weighted_blocks",
        args: &["analyze", "weighted-blocks", "two_three_five.txt", "--lambda", "-1,1", "--n", "6", "--out", "out.tsv"],
        exit: 0,
        files: &["out.tsv"],
    },
    Case {
        name: "analyze_delta",
        args: &["analyze", "delta", "squares.tsv", "--l", "2", "--out", "out.tsv"],
        exit: 0,
        files: &["out.tsv"],
    },
    Case {
        name: "analyze_unsorted_input",
        args: &["analyze", "rep", "unsorted.txt", "--out", "out.tsv"],
        exit: 2,
        files: &[],
    },
    Case {
        name: "audit_t1_holds",
        args: &["audit", "t1", "sidon8.txt", "--lambda", "1", "--out", "out"],
        exit: 0,
        files: &["out.json", "out.tsv"],
    },
    Case {
        name: "audit_t1_violated",
        args: &["audit", "t1", "one.txt", "--lambda", "1", "--horizon", "1", "--out", "out"],
        exit: 1,
        files: &["out.json", "out.tsv"],
    },
    Case {
        name: "audit_t3_unbalanced",
        args: &["audit", "t3", "sidon8.txt", "--lambda", "1,1", "--out", "out"],
        exit: 2,
        files: &[],
    },
    Case {
        name: "audit_t3_holds",
        args: &["audit", "t3", "sidon8.txt", "--lambda=-1,1", "--out", "out"],
        exit: 0,
        files: &["out.json"],
    },
    Case {
        name: "audit_p1_scan",
        args: &["audit", "p1-scan", "sidon8.txt", "--lambda", "-1,1", "--theta", "0.5,1.0,1.5", "--out", "out"],
        exit: 0,
        files: &["out.tsv"],
    },
    Case {
        name: "unknown_subcommand",
        args: &["frobnicate"],
        exit: 2,
        files: &[],
    },
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_addrep")
}

pub fn stage_inputs(dir: &Path) {
    for entry in fs::read_dir(golden_dir().join("inputs")).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), dir.join(entry.file_name())).unwrap();
    }
}

/// Runs one case; returns `(exit code, transcript)`.
pub fn run_case(case: &Case) -> (i32, String) {
    let dir = tempfile::tempdir().unwrap();
    stage_inputs(dir.path());
    let out = Command::new(binary())
        .args(case.args)
        .current_dir(dir.path())
        .output()
        .unwrap();
    let code = out.status.code().unwrap_or(-1);
    let mut t = String::new();
    writeln!(t, "$ addrep {}", case.args.join(" ")).unwrap();
    writeln!(t, "exit: {code}").unwrap();
    writeln!(t, "--- stdout").unwrap();
    t.push_str(&String::from_utf8_lossy(&out.stdout));
    writeln!(t, "--- stderr").unwrap();
    t.push_str(&String::from_utf8_lossy(&out.stderr));
    for f in case.files {
        writeln!(t, "--- file {f}").unwrap();
        t.push_str(&fs::read_to_string(dir.path().join(f)).unwrap_or_else(|_| "<missing>\n".into()));
    }
    (code, t)
}

/// Checks a case against its transcript; `Err` carries a description.
pub fn check_case(case: &Case) -> Result<(), String> {
    let (code, transcript) = run_case(case);
    let path = golden_dir().join(format!("{}.txt", case.name));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &transcript).unwrap();
    }
    if code != case.exit {
        return Err(format!("{}: exit {code}, expected {}\n{transcript}", case.name, case.exit));
    }
    let expected = fs::read_to_string(&path)
        .map_err(|e| format!("{}: cannot read {}: {e}", case.name, path.display()))?;
    if expected != transcript {
        return Err(format!(
            "{}: transcript differs\n--- expected\n{expected}--- actual\n{transcript}",
            case.name
        ));
    }
    Ok(())
}
