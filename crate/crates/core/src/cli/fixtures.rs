use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{read_json, run, Command, JobSpec, Outcome};
use crate::error::{Error, Result};

/// `manifest.json` in a fixture directory.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub jobs: Vec<ManifestJob>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ManifestJob {
    pub name: String,
    #[serde(default)]
    pub expect_exit: i32,
    pub job: JobSpec,
}

fn rebase(c: &Command, dir: &Path) -> Command {
    let at = |p: &PathBuf| {
        if p.is_absolute() {
            p.clone()
        } else {
            dir.join(p)
        }
    };
    let mut c = c.clone();
    match &mut c {
        Command::CheckSuperpotential { input }
        | Command::Derive { input, .. }
        | Command::Hilbert { input, .. }
        | Command::KoszulDual { input, .. }
        | Command::Mckay { input, .. } => *input = at(input),
        Command::ComplexCheck { potential, .. } => *potential = at(potential),
        Command::FixturesRunAll { dir: d } => *d = at(d),
        Command::Sklyanin { .. } => {}
    }
    c
}

/// Run every job of `dir/manifest.json` (in parallel) and compare exit codes.
pub fn run_manifest(dir: &Path) -> Result<Outcome> {
    let m: Manifest = read_json(&dir.join("manifest.json"))?;
    if m.jobs
        .iter()
        .any(|j| matches!(j.job.command, Command::FixturesRunAll { .. }))
    {
        return Err(Error::Parse("manifests cannot nest fixture runs".into()));
    }
    let results: Vec<(i32, Outcome)> = m
        .jobs
        .par_iter()
        .map(|j| {
            let spec = JobSpec {
                command: rebase(&j.job.command, dir),
                format: j.job.format,
            };
            let t = std::time::Instant::now();
            let out = run(&spec);
            (t.elapsed().as_millis() as i32, out)
        })
        .collect();
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for (j, (ms, out)) in m.jobs.iter().zip(&results) {
        let ok = out.status == j.expect_exit;
        all &= ok;
        let _ = writeln!(
            text,
            "{:<4} {} (exit {}, expected {}, {ms} ms)",
            if ok { "ok" } else { "FAIL" },
            j.name,
            out.status,
            j.expect_exit
        );
        if !ok {
            for line in out.text.lines() {
                let _ = writeln!(text, "     {line}");
            }
        }
        rows.push(json!({ "name": j.name, "exit": out.status, "expected": j.expect_exit, "ok": ok, "millis": ms, "report": out.report }));
    }
    let _ = writeln!(
        text,
        "{} of {} jobs as expected",
        rows.iter().filter(|r| r["ok"] == true).count(),
        rows.len()
    );
    Ok(Outcome {
        status: if all { 0 } else { 1 },
        report: json!({ "jobs": rows, "passed": all }),
        text,
    })
}
