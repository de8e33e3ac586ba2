//! Sweep configuration documents.

use std::path::{Path, PathBuf};

use quarton::couplers::{CouplerKind, CouplerSpec, Qubit};
use serde::{Deserialize, Serialize};

use crate::SweepError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub coupler: CouplerTemplate,
    /// Second coupler kind evaluated with the same parameters, reported in
    /// the `compare_*` columns.
    #[serde(default)]
    pub compare_kind: Option<CouplerKind>,
    pub sweep_variable: SweepVariable,
    pub range: Range,
    pub outputs: Vec<Output>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    /// Flags rows where `|K|/f` of either qubit exceeds this ratio.
    #[serde(default)]
    pub anharmonicity_guard: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplerTemplate {
    pub kind: CouplerKind,
    #[serde(default)]
    pub e_q_ghz: f64,
    pub c_j_ff: f64,
    pub qubit_a: QubitTemplate,
    pub qubit_b: QubitTemplate,
}

/// A transmon given by its Josephson energy or its bare frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitTemplate {
    pub c_ff: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_j_ghz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_ghz: Option<f64>,
}

impl QubitTemplate {
    pub fn qubit(&self) -> Result<Qubit<f64>, SweepError> {
        match (self.e_j_ghz, self.omega_ghz) {
            (Some(e_j), None) => Ok(Qubit::new(self.c_ff, e_j)),
            (None, Some(f)) if f > 0.0 && self.c_ff > 0.0 => Ok(Qubit::from_frequency(self.c_ff, f)),
            (None, Some(f)) => Err(SweepError::Config(format!(
                "omega_ghz {f} with c_ff {} is not a valid qubit",
                self.c_ff
            ))),
            _ => Err(SweepError::Config(
                "a qubit needs exactly one of e_j_ghz and omega_ghz".into(),
            )),
        }
    }
}

impl CouplerTemplate {
    pub fn spec(&self) -> Result<CouplerSpec<f64>, SweepError> {
        let spec = CouplerSpec {
            kind: self.kind,
            e_q: self.e_q_ghz,
            qubit_a: self.qubit_a.qubit()?,
            qubit_b: self.qubit_b.qubit()?,
            c_j: self.c_j_ff,
        };
        spec.validate()
            .map_err(|e| SweepError::Config(format!("coupler: {e}")))?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    EQ,
    EJa,
    EJb,
}

impl SweepVariable {
    pub fn apply(self, mut spec: CouplerSpec<f64>, x: f64) -> CouplerSpec<f64> {
        match self {
            SweepVariable::EQ => spec.e_q = x,
            SweepVariable::EJa => spec.qubit_a.e_j = x,
            SweepVariable::EJb => spec.qubit_b.e_j = x,
        }
        spec
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub min: Bound,
    pub max: Bound,
    pub points: usize,
    #[serde(default)]
    pub scale: Scale,
}

/// A range end in GHz, or a multiple of the template's larger `E_J`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Bound {
    Ghz(f64),
    TimesMaxEJ { times_max_e_j: f64 },
}

impl Bound {
    fn resolve(self, max_e_j: f64) -> f64 {
        match self {
            Bound::Ghz(v) => v,
            Bound::TimesMaxEJ { times_max_e_j } => times_max_e_j * max_e_j,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Requested result columns. Numerical values come from the built
/// circuit, `oracle_*` from the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    FA,
    FB,
    GAb,
    KA,
    KB,
    AsymAb,
    AsymBa,
    OracleG,
    OracleGQuarton,
    OracleGCorrected,
    OracleGNonquarton,
    OracleKA,
    OracleKB,
    CompareGAb,
    CompareOracleG,
}

impl Output {
    pub fn column(self) -> &'static str {
        match self {
            Output::FA => "f_a_ghz",
            Output::FB => "f_b_ghz",
            Output::GAb => "g_ab_mhz",
            Output::KA => "k_a_mhz",
            Output::KB => "k_b_mhz",
            Output::AsymAb => "asym_ab_mhz",
            Output::AsymBa => "asym_ba_mhz",
            Output::OracleG => "oracle_g_mhz",
            Output::OracleGQuarton => "oracle_g_quarton_mhz",
            Output::OracleGCorrected => "oracle_g_corrected_mhz",
            Output::OracleGNonquarton => "oracle_g_nonquarton_mhz",
            Output::OracleKA => "oracle_k_a_mhz",
            Output::OracleKB => "oracle_k_b_mhz",
            Output::CompareGAb => "compare_g_ab_mhz",
            Output::CompareOracleG => "compare_oracle_g_mhz",
        }
    }

    fn needs_compare(self) -> bool {
        matches!(self, Output::CompareGAb | Output::CompareOracleG)
    }
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, SweepError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let inner = e.inner();
            SweepError::Config(format!(
                "line {} column {} at `{}`: {}",
                inner.line(),
                inner.column(),
                e.path(),
                inner
            ))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, SweepError> {
        let text = std::fs::read_to_string(path).map_err(|e| SweepError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            SweepError::Config(m) => SweepError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        let bad = |m: String| Err(SweepError::Config(m));
        if self.range.points < 2 {
            return bad(format!("range.points must be at least 2, got {}", self.range.points));
        }
        let (lo, hi) = self.bounds()?;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return bad(format!("range needs finite min < max, got {lo}..{hi}"));
        }
        if lo < 0.0 {
            return bad(format!("range.min must be non-negative, got {lo}"));
        }
        if self.range.scale == Scale::Log && lo <= 0.0 {
            return bad("a log range needs min > 0".into());
        }
        if self.outputs.is_empty() {
            return bad("outputs must not be empty".into());
        }
        if self.compare_kind.is_none() && self.outputs.iter().any(|o| o.needs_compare()) {
            return bad("compare_* outputs need compare_kind".into());
        }
        if let Some(g) = self.anharmonicity_guard {
            if !(g > 0.0) {
                return bad(format!("anharmonicity_guard must be positive, got {g}"));
            }
        }
        Ok(())
    }

    /// Resolved range ends in GHz.
    pub fn bounds(&self) -> Result<(f64, f64), SweepError> {
        let spec = self.coupler.spec()?;
        let m = spec.qubit_a.e_j.max(spec.qubit_b.e_j);
        Ok((self.range.min.resolve(m), self.range.max.resolve(m)))
    }

    /// Sweep points; call on a validated config.
    pub fn grid(&self) -> Vec<f64> {
        let (lo, hi) = self.bounds().expect("validated config");
        let n = self.range.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.range.scale {
                    Scale::Linear => lo + (hi - lo) * t,
                    Scale::Log => lo * (hi / lo).powf(t),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "coupler": {"kind": "canonical_quarton", "c_j_ff": 0,
            "qubit_a": {"c_ff": 103, "omega_ghz": 7},
            "qubit_b": {"c_ff": 62.5, "e_j_ghz": 30}},
        "sweep_variable": "e_q",
        "range": {"min": 0, "max": {"times_max_e_j": 2}, "points": 3},
        "outputs": ["g_ab", "oracle_g"]
    }"#;

    #[test]
    fn parses_both_qubit_forms() {
        let c = SweepConfig::from_json(MINIMAL).unwrap();
        let s = c.coupler.spec().unwrap();
        assert!((s.qubit_a.e_j - 32.569).abs() < 1e-2);
        assert_eq!(s.qubit_b.e_j, 30.0);
        assert_eq!(c.format, Format::Csv);
        let g = c.grid();
        assert_eq!(g.len(), 3);
        assert_eq!(g[0], 0.0);
        assert!((g[2] - 2.0 * s.qubit_a.e_j).abs() < 1e-12);
    }

    #[test]
    fn log_grid_hits_both_ends() {
        let mut c = SweepConfig::from_json(MINIMAL).unwrap();
        c.range = Range {
            min: Bound::Ghz(0.1),
            max: Bound::Ghz(100.0),
            points: 4,
            scale: Scale::Log,
        };
        let g = c.grid();
        assert!((g[1] - 1.0).abs() < 1e-12 && (g[3] - 100.0).abs() < 1e-12);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let bad = MINIMAL.replace("\"points\": 3", "\"points\": \"three\"");
        let SweepError::Config(m) = SweepConfig::from_json(&bad).unwrap_err() else {
            panic!()
        };
        assert!(m.contains("range.points"), "{m}");
        assert!(m.contains("line 6"), "{m}");
        let unknown = MINIMAL.replace("\"outputs\"", "\"extra\": 1, \"outputs\"");
        assert!(SweepConfig::from_json(&unknown).is_err());
    }

    #[test]
    fn semantic_checks() {
        for (from, to) in [
            ("\"points\": 3", "\"points\": 1"),
            ("\"min\": 0", "\"min\": 1e9"),
            ("[\"g_ab\", \"oracle_g\"]", "[]"),
            ("[\"g_ab\", \"oracle_g\"]", "[\"compare_g_ab\"]"),
            ("\"c_j_ff\": 0", "\"c_j_ff\": -1"),
            ("\"omega_ghz\": 7", "\"omega_ghz\": 7, \"e_j_ghz\": 3"),
        ] {
            assert!(SweepConfig::from_json(&MINIMAL.replace(from, to)).is_err(), "{to}");
        }
    }
}
