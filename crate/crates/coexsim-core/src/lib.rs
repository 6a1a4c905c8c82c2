//! Analytic core of a Monte Carlo simulator for inter-technology coexistence
//! in the 5 GHz band.
//!
//! The crate generates seeded network deployments (indoor dual-stripe or
//! outdoor with synthetic buildings), computes link losses, assigns 20 MHz
//! channels, evaluates an analytic MAC/PHY throughput model for Wi-Fi-style
//! listen-before-talk and LTE-U-style duty-cycled access points, and reduces
//! Monte Carlo campaigns into likelihood–consequence (CCDF) risk series.
//!
//! Everything here is `no_std` + `alloc`: pure, deterministic functions of a
//! seed and a configuration. File formats, parallel execution, and the CLI
//! live in the companion `coexsim` crate.

#![no_std]

extern crate alloc;

pub mod engine;
pub mod geom;
pub mod mac;
pub mod phy;
pub mod propagation;
pub mod risk;
pub mod scenario;
pub mod seed;
pub mod spectrum;

pub use engine::{CampaignResult, RealizationOutput, RunConfig};
pub use scenario::{Deployment, Node, SiteLayout};

use thiserror::Error;

/// Radio access technology of an AP (users inherit the technology of their
/// serving AP; it selects the rate table and the receiver noise figure).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tech {
    Wifi,
    Laa,
    Lteu,
}

impl Tech {
    /// Listen-before-talk techs contend via DCF; LTE-U transmits on a
    /// periodic duty cycle without sensing first.
    pub fn is_lbt(self) -> bool {
        !matches!(self, Tech::Lteu)
    }

    pub fn is_duty_cycled(self) -> bool {
        matches!(self, Tech::Lteu)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tech::Wifi => "wifi",
            Tech::Laa => "laa",
            Tech::Lteu => "lteu",
        }
    }
}

/// Population label. Population A is the metric-reference population:
/// degradation and unfairness are always reported over its APs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Population {
    A,
    B,
}

impl Population {
    pub fn as_str(self) -> &'static str {
        match self {
            Population::A => "a",
            Population::B => "b",
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("deployment capacity exceeded: {0}")]
    Capacity(alloc::string::String),
    #[error("invalid configuration: {0}")]
    Config(alloc::string::String),
    #[error("empty channel plan")]
    EmptyPlan,
    #[error("fixed-point iteration did not converge: {0}")]
    NoConvergence(alloc::string::String),
    #[error("empty sample set")]
    EmptySamples,
    #[error("realization {index} failed: {source}")]
    Realization {
        index: usize,
        #[source]
        source: alloc::boxed::Box<Error>,
    },
}

/// dB → linear power ratio.
pub fn db_to_lin(db: f64) -> f64 {
    // exp form keeps a single libm entry point for both std and no_std builds
    libm::exp(db * core::f64::consts::LN_10 / 10.0)
}

/// Linear power ratio → dB.
pub fn lin_to_db(lin: f64) -> f64 {
    10.0 * libm::log10(lin)
}
