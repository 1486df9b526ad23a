//! Suite configuration: which suite to run, model parameters, trial counts,
//! tolerances, seed and report path. Read from JSON; every field has a default.

use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model11::MIN_POINTS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    GrassmannLaws,
    Berezinian,
    Green11,
    Green32,
    Tau,
    Quantize,
    Susy,
    EnrichedLaws,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 8] = [
        Suite::GrassmannLaws,
        Suite::Berezinian,
        Suite::Green11,
        Suite::Green32,
        Suite::Tau,
        Suite::Quantize,
        Suite::Susy,
        Suite::EnrichedLaws,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GrassmannLaws => "grassmann-laws",
            Suite::Berezinian => "berezinian",
            Suite::Green11 => "green11",
            Suite::Green32 => "green32",
            Suite::Tau => "tau",
            Suite::Quantize => "quantize",
            Suite::Susy => "susy",
            Suite::EnrichedLaws => "enriched-laws",
            Suite::All => "all",
        }
    }

    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::INDIVIDUAL.to_vec(),
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}'")))
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Model11Params {
    pub t0: f64,
    pub t1: f64,
    pub points: usize,
}

impl Default for Model11Params {
    fn default() -> Self {
        Model11Params { t0: 0.0, t1: 2.0, points: 4096 }
    }
}

/// Square torus of side `length`; a level n means an n×n spatial grid with
/// 2n time slices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Model32Params {
    pub mass: f64,
    pub length: f64,
    pub cfl: f64,
    pub base: usize,
    pub refinement: Vec<usize>,
    pub small: usize,
}

impl Default for Model32Params {
    fn default() -> Self {
        Model32Params { mass: 1.0, length: 8.0, cfl: 0.5, base: 64, refinement: vec![32, 64, 128], small: 32 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Trials {
    pub laws: usize,
    pub sections: usize,
    pub words: usize,
    pub probes: usize,
    pub functor: usize,
    pub naturality: usize,
}

impl Default for Trials {
    fn default() -> Self {
        Trials { laws: 1000, sections: 8, words: 500, probes: 64, functor: 200, naturality: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub laws: f64,
    pub inverse: f64,
    pub green11: f64,
    pub leakage_cells: f64,
    pub quadrature: f64,
    pub tau11: f64,
    pub tau_symmetry: f64,
    pub dirac: f64,
    pub dirac_order: f64,
    pub green32: f64,
    pub refinement_low: f64,
    pub refinement_high: f64,
    pub causality: f64,
    pub eom: f64,
    pub susy: f64,
    pub susy32: f64,
    pub naturality11: f64,
    pub naturality32: f64,
    pub translation: f64,
    pub functor: f64,
    pub pushforward: f64,
    pub witness: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            laws: 1e-10,
            inverse: 1e-12,
            green11: 1e-6,
            leakage_cells: 2.0,
            quadrature: 1e-10,
            tau11: 1e-6,
            tau_symmetry: 1e-10,
            dirac: 2e-2,
            dirac_order: 0.3,
            green32: 3e-2,
            refinement_low: 3.0,
            refinement_high: 5.0,
            causality: 1e-12,
            eom: 1e-6,
            susy: 1e-6,
            susy32: 5e-3,
            naturality11: 1e-6,
            naturality32: 5e-3,
            translation: 1e-8,
            functor: 1e-6,
            pushforward: 1e-8,
            witness: 1e-3,
        }
    }
}

impl Tolerances {
    /// Sets one named tolerance.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let mut v = serde_json::to_value(&*self)?;
        let map = v.as_object_mut().expect("struct serializes to an object");
        if !map.contains_key(key) {
            let known: Vec<&str> = map.keys().map(String::as_str).collect();
            return Err(Error::Config(format!("unknown tolerance '{key}' (known: {})", known.join(", "))));
        }
        map.insert(key.to_string(), serde_json::json!(value));
        *self = serde_json::from_value(v)?;
        Ok(())
    }

    fn entries(&self) -> Vec<(String, f64)> {
        let v = serde_json::to_value(self).expect("serializes");
        v.as_object().expect("object").iter().map(|(k, x)| (k.clone(), x.as_f64().unwrap_or(f64::NAN))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub seed: u64,
    pub model11: Model11Params,
    pub model32: Model32Params,
    pub trials: Trials,
    pub tolerances: Tolerances,
    pub report: Option<PathBuf>,
}

pub const DEFAULT_SEED: u64 = 20_240_601;

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            seed: DEFAULT_SEED,
            model11: Model11Params::default(),
            model32: Model32Params::default(),
            trials: Trials::default(),
            tolerances: Tolerances::default(),
            report: None,
        }
    }
}

pub const MAX_POINTS11: usize = 1 << 20;
pub const MIN_LEVEL32: usize = 16;
pub const MAX_LEVEL32: usize = 256;

impl SuiteConfig {
    pub fn for_suite(suite: Suite, seed: u64) -> Self {
        SuiteConfig { suite, seed, ..Default::default() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SuiteConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (k, v) in self.tolerances.entries() {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("tolerance '{k}' must be positive, got {v}")));
            }
        }
        let t = &self.tolerances;
        if t.refinement_low > t.refinement_high {
            return Err(Error::Config("refinement_low exceeds refinement_high".into()));
        }
        let m = &self.model11;
        if !(m.t1 > m.t0) || !(m.t0.is_finite() && m.t1.is_finite()) {
            return Err(Error::Config(format!("model11 interval ({}, {}) is empty", m.t0, m.t1)));
        }
        if m.points < MIN_POINTS.max(64) || m.points > MAX_POINTS11 {
            return Err(Error::Config(format!("model11 points {} outside [64, {MAX_POINTS11}]", m.points)));
        }
        let p = &self.model32;
        if !(p.mass >= 0.0 && p.mass.is_finite()) {
            return Err(Error::Config(format!("mass {} must be non-negative", p.mass)));
        }
        if !(p.length > 0.0 && p.length.is_finite()) {
            return Err(Error::Config(format!("torus length {} must be positive", p.length)));
        }
        if !(p.cfl > 0.0 && p.cfl <= std::f64::consts::FRAC_1_SQRT_2) {
            return Err(Error::Config(format!("cfl {} outside (0, 1/√2]", p.cfl)));
        }
        let levels = p.refinement.iter().chain([&p.base, &p.small]);
        for &n in levels {
            if !(MIN_LEVEL32..=MAX_LEVEL32).contains(&n) {
                return Err(Error::Config(format!("3|2 level {n} outside [{MIN_LEVEL32}, {MAX_LEVEL32}]")));
            }
        }
        if p.refinement.len() < 2 || p.refinement.windows(2).any(|w| w[1] != 2 * w[0]) {
            return Err(Error::Config("refinement must list at least two successively doubled levels".into()));
        }
        if !p.refinement.contains(&p.base) {
            return Err(Error::Config("the base level must be one of the refinement levels".into()));
        }
        let tr = &self.trials;
        if [tr.laws, tr.sections, tr.words, tr.probes, tr.functor, tr.naturality].contains(&0) {
            return Err(Error::Config("trial counts must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::INDIVIDUAL.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.name()));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn defaults_validate() {
        SuiteConfig::default().validate().unwrap();
    }

    #[test]
    fn partial_json_fills_defaults() {
        let c = SuiteConfig::from_json(r#"{"suite": "green11", "model11": {"points": 2048}}"#).unwrap();
        assert_eq!(c.suite, Suite::Green11);
        assert_eq!(c.model11.points, 2048);
        assert_eq!(c.model11.t1, 2.0);
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(SuiteConfig::from_json(r#"{"tolerances": {"green11": -1.0}}"#).is_err());
        assert!(SuiteConfig::from_json(r#"{"model32": {"cfl": 0.9}}"#).is_err());
        assert!(SuiteConfig::from_json(r#"{"bogus": 1}"#).is_err());
        assert!(SuiteConfig::from_json(r#"{"model32": {"refinement": [32, 48]}}"#).is_err());
    }

    #[test]
    fn named_tolerance_override() {
        let mut t = Tolerances::default();
        t.set("green32", 0.05).unwrap();
        assert_eq!(t.green32, 0.05);
        assert!(t.set("nope", 1.0).is_err());
    }
}
