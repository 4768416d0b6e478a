use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use metascreen::boundary::BubbleGeometry;
use metascreen::lattice_green::{EwaldParams, Lattice, Point2};
use metascreen::resonance::{DampingModel, MediaConfig, SearchOptions};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// One period of the screen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScreenConfig {
    pub period: f64,
    pub bubble: BubbleGeometry,
}

impl Default for ScreenConfig {
    fn default() -> Self {
        Self {
            period: 10.0,
            bubble: BubbleGeometry::circle(0.1, 0.2),
        }
    }
}

/// Frequency window for the characteristic-value search, relative to `omega_M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    pub samples: usize,
    pub rel_tol: f64,
    pub window: [f64; 2],
}

impl Default for SearchConfig {
    fn default() -> Self {
        let o = SearchOptions::default();
        Self {
            samples: o.samples,
            rel_tol: o.rel_tol,
            window: [0.9, 1.1],
        }
    }
}

impl SearchConfig {
    pub fn options(&self) -> SearchOptions {
        SearchOptions {
            samples: self.samples,
            rel_tol: self.rel_tol,
        }
    }
}

/// Sweep axes. Empty lists fall back to the single value from `screen`/`media`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    /// Absolute frequencies for `reflection-sweep`; empty means 201 points over [0.5, 1.5] omega_M.
    pub omega: Vec<f64>,
    pub period: Vec<f64>,
    pub radius: Vec<f64>,
    pub standoff: Vec<f64>,
    pub delta: Vec<f64>,
}

/// Evaluation points for `green-eval`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GreenConfig {
    pub k: f64,
    pub k_par: f64,
    pub source: [f64; 2],
    pub points: Vec<[f64; 2]>,
}

impl Default for GreenConfig {
    fn default() -> Self {
        Self {
            k: 0.2,
            k_par: 0.1,
            source: [0.0, 1.0],
            points: vec![[0.5, 2.0], [10.5, 2.0], [3.0, 0.0], [-2.0, 7.0]],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Boundary nodes per bubble.
    pub nodes: usize,
    /// Incidence angle measured from the plane (pi/2 = normal incidence).
    pub theta: f64,
    pub screen: ScreenConfig,
    pub media: MediaConfig,
    pub ewald: EwaldParams,
    pub damping: DampingModel,
    pub search: SearchConfig,
    pub sweep: SweepConfig,
    pub green: GreenConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            nodes: 128,
            theta: FRAC_PI_2,
            screen: ScreenConfig::default(),
            media: MediaConfig::default(),
            ewald: EwaldParams::default(),
            damping: DampingModel::default(),
            search: SearchConfig::default(),
            sweep: SweepConfig::default(),
            green: GreenConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let cfg: RunConfig = match path {
            None => RunConfig::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
                toml::from_str(&text)
                    .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if !(self.theta > 0.0 && self.theta < std::f64::consts::PI) {
            return bad(format!("theta must lie in (0, pi), got {}", self.theta));
        }
        if self.search.samples < 20 || !(self.search.rel_tol > 0.0) {
            return bad(format!(
                "search needs >= 20 samples and rel_tol > 0, got {} and {}",
                self.search.samples, self.search.rel_tol
            ));
        }
        let [lo, hi] = self.search.window;
        if !(lo > 0.0 && hi > lo) {
            return bad(format!(
                "search window must satisfy 0 < lo < hi, got [{lo}, {hi}]"
            ));
        }
        if self.sweep.omega.iter().any(|&w| !(w > 0.0)) {
            return bad("sweep frequencies must be > 0".into());
        }
        if self.ewald.q_terms > 60 {
            return bad(format!(
                "ewald.q_terms must be <= 60, got {}",
                self.ewald.q_terms
            ));
        }
        Lattice::new(self.screen.period)?;
        self.screen.bubble.validate(Some(self.screen.period))?;
        self.media.validate()?;
        Ok(())
    }

    pub fn lattice(&self) -> Result<Lattice, CliError> {
        Ok(Lattice::new(self.screen.period)?)
    }

    pub fn green_source(&self) -> Point2 {
        Point2::new(self.green.source[0], self.green.source[1])
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }
}
