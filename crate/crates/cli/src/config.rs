//! Experiment configuration: a single JSON file per invocation, re-validated
//! against the solver preconditions at parse time. Command-line overrides
//! patch the raw JSON tree before typing, so `--override disk.tau=0` and
//! friends work uniformly.

use fracspec_core::quadrature::QuadMethod;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    CaputoDirect,
    PsiStability,
    ToyPde,
    DiskWave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodTag {
    YuanAgrawal,
    Diethelm,
    BirkSong,
}

impl MethodTag {
    pub fn to_quad(self) -> QuadMethod {
        match self {
            MethodTag::YuanAgrawal => QuadMethod::YuanAgrawal,
            MethodTag::Diethelm => QuadMethod::Diethelm,
            MethodTag::BirkSong => QuadMethod::BirkSong,
        }
    }
}

fn default_method() -> MethodTag {
    MethodTag::BirkSong
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestFunctionTag {
    Tsquared,
    Exp,
    Mittag,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaputoDirectCfg {
    pub test_function: TestFunctionTag,
    /// Mittag-Leffler parameter a of the driven function E_{a,1}(t)
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ml_a: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToyCfg {
    pub k_coeff: f64,
    pub c_coeff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskCfg {
    pub c0: f64,
    pub tau: f64,
    #[serde(default = "default_sensor_count")]
    pub sensor_count: usize,
    #[serde(default = "default_sensor_radius")]
    pub sensor_radius: f64,
    #[serde(default = "default_sensor_every")]
    pub sensor_every: usize,
    /// emit a field snapshot every this many steps
    #[serde(default = "default_snapshot_every")]
    pub snapshot_every: usize,
    #[serde(default)]
    pub paper_literal_scheme: bool,
    /// scales the bump initial displacement 4y(1-x²-y²)²; zero runs from rest
    #[serde(default = "default_initial_amplitude")]
    pub initial_amplitude: f64,
}

fn default_initial_amplitude() -> f64 {
    1.0
}

fn default_sensor_count() -> usize {
    70
}
fn default_sensor_radius() -> f64 {
    0.5
}
fn default_sensor_every() -> usize {
    100
}
fn default_snapshot_every() -> usize {
    2500
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default = "default_method")]
    pub method: MethodTag,
    pub alpha: f64,
    pub l: usize,
    pub dt: f64,
    /// run once per listed step size instead of the single `dt`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt_list: Option<Vec<f64>>,
    pub t_final: f64,
    /// spatial truncation (required by toy-pde and disk-wave)
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_every: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caputo_direct: Option<CaputoDirectCfg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toy: Option<ToyCfg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disk: Option<DiskCfg>,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| ConfigError(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parse with `key=value` overrides applied to the raw JSON tree first.
    /// Dotted keys descend into nested blocks; values are parsed as JSON
    /// literals and fall back to strings.
    pub fn from_json_with_overrides(text: &str, overrides: &[String]) -> Result<Self, ConfigError> {
        let mut tree: serde_json::Value =
            serde_json::from_str(text).map_err(|e| ConfigError(e.to_string()))?;
        for item in overrides {
            let (path, raw) = item
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("override '{item}' is not key=value")))?;
            let value = serde_json::from_str(raw)
                .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
            let mut node = &mut tree;
            let parts: Vec<&str> = path.split('.').collect();
            let (last, descend) = parts.split_last().expect("split_once gave a key");
            for part in descend {
                node = node
                    .as_object_mut()
                    .ok_or_else(|| {
                        ConfigError(format!("override path '{path}' does not address an object"))
                    })?
                    .entry((*part).to_string())
                    .or_insert_with(|| serde_json::Value::Object(Default::default()));
            }
            node.as_object_mut()
                .ok_or_else(|| {
                    ConfigError(format!("override path '{path}' does not address an object"))
                })?
                .insert((*last).to_string(), value);
        }
        let cfg: ExperimentConfig =
            serde_json::from_value(tree).map_err(|e| ConfigError(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn dts(&self) -> Vec<f64> {
        self.dt_list.clone().unwrap_or_else(|| vec![self.dt])
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let err = |m: &str| Err(ConfigError(m.to_string()));
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return err("alpha must lie strictly inside (0,1)");
        }
        if self.l == 0 {
            return err("l must be at least 1");
        }
        if !(self.dt > 0.0) || self.dts().iter().any(|&d| !(d > 0.0)) {
            return err("all step sizes must be positive");
        }
        if !(self.t_final > 0.0) {
            return err("t_final must be positive");
        }
        if self.sample_every == Some(0) {
            return err("sample_every must be at least 1");
        }
        match self.experiment {
            ExperimentKind::CaputoDirect | ExperimentKind::PsiStability => {
                let block = self
                    .caputo_direct
                    .as_ref()
                    .ok_or_else(|| ConfigError("caputo_direct block required".into()))?;
                match block.test_function {
                    TestFunctionTag::Exp | TestFunctionTag::Mittag => {
                        if (self.alpha - 0.5).abs() > 1e-14 {
                            return err("exp and mittag references are closed forms for alpha = 1/2 only");
                        }
                    }
                    TestFunctionTag::Tsquared => {}
                }
                if let Some(a) = block.ml_a {
                    if !(a > 0.0) {
                        return err("ml_a must be positive");
                    }
                }
            }
            ExperimentKind::ToyPde => {
                let toy = self
                    .toy
                    .as_ref()
                    .ok_or_else(|| ConfigError("toy block required".into()))?;
                if !(toy.k_coeff > 0.0 && toy.c_coeff > 0.0) {
                    return err("toy k_coeff and c_coeff must be positive");
                }
                if self.k.unwrap_or(0) < 2 {
                    return err("toy-pde requires k >= 2");
                }
            }
            ExperimentKind::DiskWave => {
                let disk = self
                    .disk
                    .as_ref()
                    .ok_or_else(|| ConfigError("disk block required".into()))?;
                if !(disk.c0 > 0.0) || !(disk.tau >= 0.0) {
                    return err("disk c0 must be positive and tau non-negative");
                }
                if !(disk.sensor_radius > 0.0 && disk.sensor_radius < 1.0) {
                    return err("sensor_radius must lie strictly inside (0,1)");
                }
                if disk.sensor_every == 0 || disk.snapshot_every == 0 {
                    return err("sensor_every and snapshot_every must be at least 1");
                }
                if self.k.unwrap_or(0) < 2 {
                    return err("disk-wave requires k >= 2");
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = r#"{
        "experiment": "toy-pde", "alpha": 0.5, "l": 50, "dt": 0.0001,
        "t_final": 1.0, "k": 40, "toy": {"k_coeff": 10.0, "c_coeff": 100.0}
    }"#;

    #[test]
    fn round_trip_is_identity() {
        let cfg = ExperimentConfig::from_json(TOY).unwrap();
        let text = cfg.to_json();
        let again = ExperimentConfig::from_json(&text).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(text, again.to_json());
    }

    #[test]
    fn default_method_is_birk_song() {
        let cfg = ExperimentConfig::from_json(TOY).unwrap();
        assert_eq!(cfg.method, MethodTag::BirkSong);
    }

    #[test]
    fn overrides_patch_nested_fields() {
        let cfg = ExperimentConfig::from_json_with_overrides(
            TOY,
            &["alpha=0.25".into(), "toy.k_coeff=5.0".into()],
        )
        .unwrap();
        assert_eq!(cfg.alpha, 0.25);
        assert_eq!(cfg.toy.unwrap().k_coeff, 5.0);
    }

    #[test]
    fn validation_rejects_bad_configs() {
        assert!(ExperimentConfig::from_json_with_overrides(TOY, &["alpha=1.5".into()]).is_err());
        assert!(ExperimentConfig::from_json_with_overrides(TOY, &["k=0".into()]).is_err());
        let missing_block = TOY.replace(r#""toy": {"k_coeff": 10.0, "c_coeff": 100.0}"#, r#""toy": null"#);
        assert!(ExperimentConfig::from_json(&missing_block).is_err());
        // exp reference only exists for alpha = 1/2
        let bad = r#"{
            "experiment": "caputo-direct", "alpha": 0.25, "l": 20, "dt": 0.01,
            "t_final": 1.0, "caputo_direct": {"test_function": "exp"}
        }"#;
        assert!(ExperimentConfig::from_json(bad).is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let with_typo = TOY.replace(r#""alpha""#, r#""alhpa""#);
        assert!(ExperimentConfig::from_json(&with_typo).is_err());
    }
}
