//! Acceptance gate: one pass/fail line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines even on success.

use std::process::Command;
use std::time::Instant;

use krein_cli::suites;

struct Gate {
    lines: Vec<(String, bool)>,
}

impl Gate {
    fn new() -> Self {
        Gate { lines: Vec::new() }
    }

    fn record(&mut self, criterion: &str, pass: bool, detail: String) {
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("{verdict}: {criterion} — {detail}");
        self.lines.push((criterion.to_string(), pass));
    }

    fn finish(self) {
        let failed: Vec<&str> = self
            .lines
            .iter()
            .filter(|(_, p)| !p)
            .map(|(c, _)| c.as_str())
            .collect();
        assert!(failed.is_empty(), "failed criteria: {failed:?}");
    }
}

#[test]
fn acceptance() {
    let mut gate = Gate::new();
    let seed = 42;
    let trials = 1000;
    let tol = 1e-10;

    // Criterion 1: metric/conjugation identities over ≥1000 random
    // vectors and operators, residuals < 1e-10, runtime < 5 s.
    let start = Instant::now();
    let metric = suites::metric_conjugation_suite(seed, trials, tol);
    let elapsed = start.elapsed();
    gate.record(
        "metric/conjugation suite (1000 trials, <1e-10, <5s)",
        metric.pass() && elapsed.as_secs_f64() < 5.0,
        format!(
            "max residual {:.3e}, {:.2}s",
            metric.max_residual(),
            elapsed.as_secs_f64()
        ),
    );

    // Criterion 2: restricted-trace calculus; Tr I± == 2 exactly.
    let traces = suites::trace_suite(seed, trials, tol);
    let identity_exact = traces.checks["sector-identity-trace"] == 0.0;
    gate.record(
        "trace suite (Tr I± == 2 exact, residuals <1e-10)",
        traces.pass() && identity_exact,
        format!("max residual {:.3e}", traces.max_residual()),
    );

    // Criterion 3: 1000 group samples with certificates, Cartan
    // reconstruction < 1e-9, positive factor PD, constructors certified.
    let group = suites::group_suite(seed, trials, tol);
    gate.record(
        "group suite (1000 samples, certificates <1e-9, blocks <1e-10)",
        group.pass(),
        format!(
            "pseudo-unitarity {:.3e}, reconstruction {:.3e}, blocks {:.3e}",
            group.checks["pseudo-unitarity"],
            group.checks["cartan-reconstruction"],
            group.checks["block-constraints"]
        ),
    );

    // Criterion 4: measurement closed forms against the brute-force
    // dyad oracle; Born sums within 1e-12; exact projector identities.
    let measurement = suites::measurement_suite(seed, trials, tol);
    let exact = measurement.checks["pi-idempotent"] == 0.0 && measurement.checks["pi-trace"] == 0.0;
    gate.record(
        "measurement suite (Born 1e-12, closed forms <1e-10 vs dyad oracle)",
        measurement.pass() && exact,
        format!("max residual {:.3e}", measurement.max_residual()),
    );

    // Criterion 5: 1000 random frames, all invariance residuals < 1e-10,
    // designated non-invariants move by > 1e-8 away from identity.
    let frames = suites::frame_suite(seed, trials, tol);
    gate.record(
        "frame suite (1000 frames, residuals <1e-10, non-invariants >1e-8)",
        frames.pass(),
        format!(
            "invariance {:.3e}, non-invariance slack {:.3e}/{:.3e}",
            frames.checks["invariance-claims"],
            frames.checks["amplitude-non-invariance"],
            frames.checks["branch-non-invariance"]
        ),
    );

    // Criterion 6: end-to-end `check --seed 42 --trials 1000` exits 0,
    // runs in < 30 s, and is byte-reproducible.
    let start = Instant::now();
    let first = Command::new(env!("CARGO_BIN_EXE_krein"))
        .args(["check", "--seed", "42", "--trials", "1000"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let second = Command::new(env!("CARGO_BIN_EXE_krein"))
        .args(["check", "--seed", "42", "--trials", "1000"])
        .output()
        .expect("binary runs");
    gate.record(
        "end-to-end check --seed 42 --trials 1000 (exit 0, <30s, reproducible)",
        first.status.success() && elapsed.as_secs_f64() < 30.0 && first.stdout == second.stdout,
        format!(
            "exit {:?}, {:.2}s, byte-identical: {}",
            first.status.code(),
            elapsed.as_secs_f64(),
            first.stdout == second.stdout
        ),
    );

    gate.finish();
}
