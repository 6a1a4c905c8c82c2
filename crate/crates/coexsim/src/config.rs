//! The TOML config file and its mapping onto the engine's `RunConfig`.
//!
//! Every key has a default, so an empty file (or no file at all) runs the
//! reference indoor scenario. Unknown keys are rejected at any depth —
//! a typo must fail loudly rather than silently fall back to a default.

use std::path::Path;

use coexsim_core::engine::{default_realizations, BaselineSet, RunConfig};
use coexsim_core::mac::{CsConfig, DutyCycleParams, LbtParams};
use coexsim_core::phy::{RadioParams, RateTable};
use coexsim_core::propagation::PropagationParams;
use coexsim_core::scenario::{ApLocations, ScenarioKind};
use coexsim_core::spectrum::{PlanMode, Scheme};
use coexsim_core::Tech;

use crate::{locations, CliError};

/// Which baselines each realization should simulate alongside the
/// coexistence world.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum BaselineChoice {
    Standalone,
    WifiEntrant,
    Both,
}

impl BaselineChoice {
    pub fn to_set(self) -> BaselineSet {
        BaselineSet {
            standalone: !matches!(self, BaselineChoice::WifiEntrant),
            wifi_entrant: !matches!(self, BaselineChoice::Standalone),
        }
    }
}

/// `[scenario]` — who is deployed where.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioSection {
    pub kind: ScenarioKind,
    pub incumbents: usize,
    pub entrants: usize,
    pub incumbent_tech: Tech,
    pub entrant_tech: Tech,
    /// candidate sites drawn per realization in outdoor scenarios
    pub outdoor_locations: usize,
    /// fixed outdoor coordinates (one `x y` pair per line, metres);
    /// overrides `outdoor_locations` when set
    pub location_file: Option<String>,
}

impl Default for ScenarioSection {
    fn default() -> Self {
        ScenarioSection {
            kind: ScenarioKind::Indoor,
            incumbents: 10,
            entrants: 10,
            incumbent_tech: Tech::Wifi,
            entrant_tech: Tech::Wifi,
            outdoor_locations: 20,
            location_file: None,
        }
    }
}

/// `[spectrum]` — channel plan and selection schemes.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumSection {
    pub plan: PlanMode,
    pub incumbent_scheme: Scheme,
    pub entrant_scheme: Scheme,
}

impl Default for SpectrumSection {
    fn default() -> Self {
        SpectrumSection {
            plan: PlanMode::Indoor19,
            incumbent_scheme: Scheme::Random,
            entrant_scheme: Scheme::Random,
        }
    }
}

/// `[mac]` — carrier-sense thresholds, LBT timing, duty cycling.
#[derive(Clone, Copy, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MacSection {
    pub cs: CsConfig,
    pub lbt: LbtParams,
    pub duty: DutyCycleParams,
}

/// `[phy]` — radio front end, path loss, and the SINR→rate step tables.
#[derive(Clone, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhySection {
    pub radio: RadioParams,
    pub path: PropagationParams,
    pub rates: RateTable,
}

/// `[engine]` — campaign size, seeding, baselines, worker count.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineSection {
    /// realizations per campaign; unset means the scenario default
    pub realizations: Option<usize>,
    pub master_seed: u64,
    pub baseline: BaselineChoice,
    /// worker threads; 0 means one per available core. Excluded from the
    /// config echo: results are independent of it by construction, and
    /// outputs must be byte-identical at any worker count.
    #[serde(skip_serializing)]
    pub parallelism: usize,
}

impl Default for EngineSection {
    fn default() -> Self {
        EngineSection {
            realizations: None,
            master_seed: 1,
            baseline: BaselineChoice::Standalone,
            parallelism: 0,
        }
    }
}

/// The whole config file. Field order here is the section order in the
/// echoed TOML, so keep it stable.
#[derive(Clone, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub scenario: ScenarioSection,
    pub spectrum: SpectrumSection,
    pub mac: MacSection,
    pub phy: PhySection,
    pub engine: EngineSection,
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub realizations: Option<usize>,
    pub baseline: Option<BaselineChoice>,
    pub parallelism: Option<usize>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<FileConfig, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<FileConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        FileConfig::parse(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Fold command-line flags in before converting or echoing, so every
    /// output records the values that actually ran.
    pub fn apply(&mut self, o: &Overrides) {
        if let Some(s) = o.seed {
            self.engine.master_seed = s;
        }
        if let Some(r) = o.realizations {
            self.engine.realizations = Some(r);
        }
        if let Some(b) = o.baseline {
            self.engine.baseline = b;
        }
        if let Some(p) = o.parallelism {
            self.engine.parallelism = p;
        }
    }

    pub fn effective_realizations(&self) -> usize {
        self.engine
            .realizations
            .unwrap_or_else(|| default_realizations(self.scenario.kind))
    }

    pub fn to_run_config(&self) -> Result<RunConfig, CliError> {
        let outdoor_locations = match &self.scenario.location_file {
            Some(p) => ApLocations::Provided(locations::load(Path::new(p))?),
            None => ApLocations::Synthetic {
                count: self.scenario.outdoor_locations,
            },
        };
        let rc = RunConfig {
            scenario: self.scenario.kind,
            n_pop_a: self.scenario.incumbents,
            n_pop_b: self.scenario.entrants,
            tech_a: self.scenario.incumbent_tech,
            tech_b: self.scenario.entrant_tech,
            plan_mode: self.spectrum.plan,
            scheme_a: self.spectrum.incumbent_scheme,
            scheme_b: self.spectrum.entrant_scheme,
            realizations: self.effective_realizations(),
            master_seed: self.engine.master_seed,
            baselines: self.engine.baseline.to_set(),
            outdoor_locations,
            prop: self.phy.path,
            radio: self.phy.radio,
            cs: self.mac.cs,
            lbt: self.mac.lbt,
            duty: self.mac.duty,
            rates: self.phy.rates.clone(),
        };
        rc.validate()?;
        Ok(rc)
    }

    /// The effective config as TOML, with the realization count resolved.
    /// This string is embedded verbatim in every output file.
    pub fn echo_toml(&self) -> String {
        let mut resolved = self.clone();
        resolved.engine.realizations = Some(self.effective_realizations());
        toml::to_string_pretty(&resolved).expect("config serializes to TOML")
    }
}

/// Parse a technology name as written in config files and sweep values.
pub fn parse_tech(s: &str) -> Result<Tech, CliError> {
    match s {
        "wifi" => Ok(Tech::Wifi),
        "laa" => Ok(Tech::Laa),
        "lteu" => Ok(Tech::Lteu),
        other => Err(CliError::Config(format!(
            "unknown technology `{other}` (expected wifi, laa, or lteu)"
        ))),
    }
}

pub fn parse_plan(s: &str) -> Result<PlanMode, CliError> {
    match s {
        "indoor_19" => Ok(PlanMode::Indoor19),
        "outdoor_11" => Ok(PlanMode::Outdoor11),
        "non_dfs_4" => Ok(PlanMode::NonDfs4),
        "single_1" => Ok(PlanMode::Single1),
        other => Err(CliError::Config(format!(
            "unknown channel plan `{other}` (expected indoor_19, outdoor_11, non_dfs_4, or single_1)"
        ))),
    }
}

pub fn parse_scenario(s: &str) -> Result<ScenarioKind, CliError> {
    match s {
        "indoor" => Ok(ScenarioKind::Indoor),
        "indoor_no_walls" => Ok(ScenarioKind::IndoorNoWalls),
        "outdoor" => Ok(ScenarioKind::Outdoor),
        other => Err(CliError::Config(format!(
            "unknown scenario `{other}` (expected indoor, indoor_no_walls, or outdoor)"
        ))),
    }
}
