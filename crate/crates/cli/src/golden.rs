//! Golden-transcript harness: each `NAME.nfm` runs in a fresh interpreter
//! and its printed output is byte-compared against `NAME.expected`.

use nfm_core::{RunConfig, Session};
use std::path::Path;
use std::process::ExitCode;

pub struct FileReport {
    pub name: String,
    pub failure: Option<String>,
}

/// Runs every pair under `dir`, printing one line per file and a summary.
/// Exit is success only when every file passes.
pub fn run_golden_tests(dir: &Path, config: RunConfig) -> ExitCode {
    let reports = match collect_reports(dir, &config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("Error: Io: {}: {e}", dir.display());
            return ExitCode::from(2);
        }
    };
    let mut failed = 0;
    for r in &reports {
        match &r.failure {
            None => println!("PASS {}", r.name),
            Some(why) => {
                failed += 1;
                println!("FAIL {}: {why}", r.name);
            }
        }
    }
    println!("{} tests, {} failed", reports.len(), failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

pub fn collect_reports(dir: &Path, config: &RunConfig) -> std::io::Result<Vec<FileReport>> {
    let mut sources: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "nfm"))
        .collect();
    sources.sort();
    let mut reports = Vec::new();
    for path in sources {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        reports.push(FileReport {
            failure: check_file(&path, config).err(),
            name,
        });
    }
    Ok(reports)
}

fn check_file(path: &Path, config: &RunConfig) -> Result<(), String> {
    let expected_path = path.with_extension("expected");
    let expected = std::fs::read_to_string(&expected_path)
        .map_err(|_| format!("missing {}", expected_path.display()))?;
    let src = std::fs::read_to_string(path).map_err(|e| format!("unreadable: {e}"))?;
    let mut session = Session::new(config.clone());
    let actual = match session.run_source(&src) {
        Ok(lines) => lines.iter().fold(String::new(), |mut s, l| {
            s.push_str(l);
            s.push('\n');
            s
        }),
        Err(e) => return Err(format!("{e}")),
    };
    if actual == expected {
        return Ok(());
    }
    let (line_no, exp, act) = first_divergence(&expected, &actual);
    Err(format!(
        "line {line_no}: expected {exp:?}, got {act:?}"
    ))
}

fn first_divergence<'a>(expected: &'a str, actual: &'a str) -> (usize, &'a str, &'a str) {
    let mut exp = expected.lines();
    let mut act = actual.lines();
    let mut n = 0;
    loop {
        n += 1;
        match (exp.next(), act.next()) {
            (Some(e), Some(a)) if e == a => continue,
            (e, a) => return (n, e.unwrap_or("<end>"), a.unwrap_or("<end>")),
        }
    }
}
