//! Run configuration: a TOML file, overridden field by field from the
//! command line.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use twistfloer_core::moduli::CutoffProfile;
use twistfloer_core::{SurfaceSpec, TwistCurveSpec};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Nonsep,
    Sep,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SurfaceSection {
    pub genus: u32,
    pub boundary: u32,
}

impl Default for SurfaceSection {
    fn default() -> Self {
        Self {
            genus: 2,
            boundary: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CurveSection {
    pub kind: CurveKind,
    /// `[g1, b1, g2, b2]` for a separating curve.
    pub split: Option<[u32; 4]>,
}

impl Default for CurveSection {
    fn default() -> Self {
        Self {
            kind: CurveKind::Nonsep,
            split: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PowersSection {
    pub m: u32,
    pub n: u32,
    pub p: Option<u32>,
}

impl Default for PowersSection {
    fn default() -> Self {
        Self { m: 2, n: 3, p: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnumerationSection {
    pub bound: i64,
    pub threads: usize,
}

impl Default for EnumerationSection {
    fn default() -> Self {
        Self {
            bound: 10,
            threads: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OdeSection {
    pub tolerance: f64,
    pub cutoff_boundary: f64,
    pub cutoff_width: f64,
}

impl Default for OdeSection {
    fn default() -> Self {
        let c = CutoffProfile::default();
        Self {
            tolerance: 1e-9,
            cutoff_boundary: c.boundary,
            cutoff_width: c.width,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    /// Where the main result goes; stdout when unset.
    pub path: Option<PathBuf>,
    /// Where `verify-nocrossing` writes its certificate.
    pub certificate: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub surface: SurfaceSection,
    pub curve: CurveSection,
    pub powers: PowersSection,
    pub enumeration: EnumerationSection,
    pub ode: OdeSection,
    pub output: OutputSection,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    pub fn surface_spec(&self) -> SurfaceSpec {
        SurfaceSpec::new(self.surface.genus, self.surface.boundary)
    }

    pub fn curve_spec(&self) -> Result<TwistCurveSpec, CliError> {
        match (self.curve.kind, self.curve.split) {
            (CurveKind::Nonsep, None) => Ok(TwistCurveSpec::NonSeparating),
            (CurveKind::Nonsep, Some(_)) => Err(CliError::Usage(
                "a split only makes sense for a separating curve".into(),
            )),
            (CurveKind::Sep, Some([g1, b1, g2, b2])) => Ok(TwistCurveSpec::Separating { g1, b1, g2, b2 }),
            (CurveKind::Sep, None) => Err(CliError::Usage(
                "a separating curve needs --split g1,b1,g2,b2".into(),
            )),
        }
    }

    pub fn cutoff(&self) -> Result<CutoffProfile, CliError> {
        CutoffProfile::new(self.ode.cutoff_boundary, self.ode.cutoff_width)
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    /// Checks that do not need any computation.
    pub fn validate(&self) -> Result<(), CliError> {
        self.curve_spec()?;
        self.cutoff()?;
        if self.powers.m == 0 || self.powers.n == 0 || self.powers.p == Some(0) {
            return Err(CliError::Usage("powers must be at least 1".into()));
        }
        if self.enumeration.bound < 0 {
            return Err(CliError::Usage("the enumeration bound must be nonnegative".into()));
        }
        if self.enumeration.threads == 0 {
            return Err(CliError::Usage("need at least one thread".into()));
        }
        if !(self.ode.tolerance > 0.0 && self.ode.tolerance.is_finite()) {
            return Err(CliError::Usage("the ODE tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_files_keep_defaults() {
        let cfg: RunConfig = toml::from_str("[powers]\nm = 4\n").unwrap();
        assert_eq!(cfg.powers.m, 4);
        assert_eq!(cfg.powers.n, 3);
        assert_eq!(cfg.surface.genus, 2);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<RunConfig>("[powers]\nq = 4\n").is_err());
    }

    #[test]
    fn separating_needs_split() {
        let mut cfg = RunConfig::default();
        cfg.curve.kind = CurveKind::Sep;
        assert!(cfg.validate().is_err());
        cfg.curve.split = Some([2, 0, 2, 0]);
        cfg.surface.genus = 4;
        assert!(cfg.validate().is_ok());
    }
}
