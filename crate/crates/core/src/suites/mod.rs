//! The check suites behind `check <suite>`. Every suite is deterministic in
//! the configured seed and reports one residual per check.

mod algebra;
mod green11;
mod green32;
mod laws;
mod quantum;
mod susy;
mod tau;

use crate::config::{Suite, SuiteConfig};
use crate::error::Result;
use crate::report::{Check, Report, SuiteReport};
use crate::sampling::{self, SuiteRng};

pub use green32::Green32Level;

/// Largest residual seen so far; NaN counts as infinite.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Worst(pub f64);

impl Worst {
    pub fn add(&mut self, r: f64) {
        if r.is_nan() {
            self.0 = f64::INFINITY;
        } else if r.abs() > self.0 {
            self.0 = r.abs();
        }
    }
}

/// |a − b| relative to the larger of |a|, |b|; zero when both vanish.
pub(crate) fn gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Runs a group of checks; an error becomes a single failed check.
pub(crate) fn group(name: &str, f: impl FnOnce() -> Result<Vec<Check>>) -> Vec<Check> {
    match f() {
        Ok(v) => v,
        Err(e) => vec![Check::failed(name, e.to_string())],
    }
}

fn suite_rng(cfg: &SuiteConfig, suite: Suite) -> SuiteRng {
    let salt = Suite::INDIVIDUAL.iter().position(|&s| s == suite).unwrap_or(0) as u64;
    sampling::rng(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt))
}

/// Runs one individual suite.
pub fn run_single(suite: Suite, cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = suite_rng(cfg, suite);
    let checks = match suite {
        Suite::GrassmannLaws => algebra::grassmann_laws(cfg, &mut rng),
        Suite::Berezinian => algebra::berezinian(cfg, &mut rng),
        Suite::Green11 => green11::run(cfg, &mut rng),
        Suite::Green32 => green32::run(cfg, &mut rng),
        Suite::Tau => tau::run(cfg, &mut rng),
        Suite::Quantize => quantum::run(cfg, &mut rng),
        Suite::Susy => susy::run(cfg, &mut rng),
        Suite::EnrichedLaws => laws::run(cfg, &mut rng),
        Suite::All => unreachable!("`all` is expanded by the caller"),
    };
    SuiteReport::new(suite.name(), checks)
}

/// Runs the configured suite (all members concurrently for `all`) and
/// assembles the report in suite order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let members = cfg.suite.members();
    let reports = std::thread::scope(|s| {
        let handles: Vec<_> = members.iter().map(|&m| s.spawn(move || run_single(m, cfg))).collect();
        handles
            .into_iter()
            .zip(&members)
            .map(|(h, m)| {
                h.join().unwrap_or_else(|_| SuiteReport::new(m.name(), vec![Check::failed("suite", "panicked")]))
            })
            .collect()
    });
    Ok(Report::new(cfg.seed, reports))
}
