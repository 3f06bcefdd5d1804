//! Fixture discovery and in-process runs shared by the CLI test targets.
#![allow(dead_code)]

use std::path::{Path, PathBuf};

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_argv<S: AsRef<str>>(args: &[S]) -> Outcome {
    let argv: Vec<String> = std::iter::once("rdb2owl".to_string())
        .chain(args.iter().map(|a| a.as_ref().to_string()))
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = rdb2owl::main_with_args(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).expect("utf-8 stdout"),
        stderr: String::from_utf8(err).expect("utf-8 stderr"),
    }
}

fn subdirs(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .flatten()
        .map(|e| e.path())
        .filter(|p| p.is_dir())
        .collect();
    v.sort();
    v
}

pub fn schema_fixtures() -> Vec<PathBuf> {
    subdirs(&testkit::fixtures_dir().join("schemas"))
}

pub fn error_fixtures() -> Vec<PathBuf> {
    subdirs(&testkit::fixtures_dir().join("errors"))
}

pub fn name(dir: &Path) -> String {
    dir.file_name().unwrap().to_string_lossy().into_owned()
}

/// `--ddl`, then `--data` (directory preferred over `data.sql`), then
/// `--config` when the fixture has one, then the fixture's `args` file.
pub fn fixture_argv(dir: &Path) -> Vec<String> {
    let d = dir.display().to_string();
    let mut v = vec!["--ddl".to_string(), format!("{d}/schema.sql")];
    if dir.join("data").is_dir() {
        v.extend(["--data".to_string(), format!("{d}/data")]);
    } else if dir.join("data.sql").is_file() {
        v.extend(["--data".to_string(), format!("{d}/data.sql")]);
    }
    if dir.join("config").is_file() {
        v.extend(["--config".to_string(), format!("{d}/config")]);
    }
    if let Ok(text) = std::fs::read_to_string(dir.join("args")) {
        v.extend(text.lines().filter(|l| !l.is_empty()).map(|l| l.replace("{dir}", &d)));
    }
    v
}

/// Exit code and stderr lines recorded in an error fixture's `expected`.
pub fn expected(dir: &Path) -> (i32, Vec<String>) {
    let text = std::fs::read_to_string(dir.join("expected")).expect("expected file");
    let mut lines = text.lines();
    let code = lines
        .next()
        .and_then(|l| l.strip_prefix("exit "))
        .and_then(|n| n.parse().ok())
        .expect("first line is `exit N`");
    (code, lines.map(str::to_string).collect())
}

pub fn stderr_lines(dir: &Path, stderr: &str) -> Vec<String> {
    let d = dir.display().to_string();
    stderr.lines().map(|l| l.replace(&d, "{dir}")).collect()
}
