//! 5 GHz channel plans and the *random*, *sense*, and *single channel*
//! assignment schemes.
//!
//! Only co-channel and first-adjacent (±20 MHz) interactions matter
//! downstream; channels further apart neither interfere nor trigger
//! carrier sense.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::Error;

pub const CHANNEL_BANDWIDTH_HZ: f64 = 20.0e6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum PlanMode {
    // serde's snake_case would drop the underscore before the digits, so
    // the names are spelled out to match `as_str`
    #[serde(rename = "indoor_19")]
    Indoor19,
    #[serde(rename = "outdoor_11")]
    Outdoor11,
    #[serde(rename = "non_dfs_4")]
    NonDfs4,
    #[serde(rename = "single_1")]
    Single1,
}

impl PlanMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PlanMode::Indoor19 => "indoor_19",
            PlanMode::Outdoor11 => "outdoor_11",
            PlanMode::NonDfs4 => "non_dfs_4",
            PlanMode::Single1 => "single_1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Channel {
    /// 802.11 channel number on the 20 MHz raster
    pub number: u16,
    pub center_mhz: u32,
}

impl Channel {
    fn from_number(number: u16) -> Channel {
        Channel {
            number,
            center_mhz: 5000 + 5 * number as u32,
        }
    }

    pub fn center_hz(self) -> f64 {
        self.center_mhz as f64 * 1.0e6
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ChannelPlan {
    pub mode: PlanMode,
    pub channels: Vec<Channel>,
}

impl ChannelPlan {
    pub fn new(mode: PlanMode) -> ChannelPlan {
        let numbers: Vec<u16> = match mode {
            // UNII-1/2 plus UNII-2e
            PlanMode::Indoor19 => (36..=64).step_by(4).chain((100..=140).step_by(4)).collect(),
            PlanMode::Outdoor11 => (100..=140).step_by(4).collect(),
            PlanMode::NonDfs4 => (36..=48).step_by(4).collect(),
            PlanMode::Single1 => alloc::vec![36],
        };
        ChannelPlan {
            mode,
            channels: numbers.into_iter().map(Channel::from_number).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.channels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }

    /// Co-channel test for two plan slots.
    pub fn co_channel(&self, s1: usize, s2: usize) -> bool {
        self.channels[s1].center_mhz == self.channels[s2].center_mhz
    }

    /// Adjacent iff the centers are exactly 20 MHz apart.
    pub fn adjacent(&self, s1: usize, s2: usize) -> bool {
        let a = self.channels[s1].center_mhz;
        let b = self.channels[s2].center_mhz;
        a.abs_diff(b) == 20
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Random,
    Sense,
    Single,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Random => "random",
            Scheme::Sense => "sense",
            Scheme::Single => "single",
        }
    }
}

/// Channels for one population of APs, as slots into a plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelAssignment {
    pub scheme: Scheme,
    pub slots: Vec<usize>,
}

impl ChannelAssignment {
    pub fn channel(&self, i: usize, plan: &ChannelPlan) -> Channel {
        plan.channels[self.slots[i]]
    }
}

fn require_nonempty(plan: &ChannelPlan) -> Result<(), Error> {
    if plan.is_empty() {
        Err(Error::EmptyPlan)
    } else {
        Ok(())
    }
}

/// Every AP independently picks a uniform channel.
pub fn assign_random(n_aps: usize, plan: &ChannelPlan, rng: &mut ChaCha8Rng) -> Result<ChannelAssignment, Error> {
    require_nonempty(plan)?;
    let slots = (0..n_aps).map(|_| rng.random_range(0..plan.len())).collect();
    Ok(ChannelAssignment {
        scheme: Scheme::Random,
        slots,
    })
}

/// Every AP sits on the plan's first channel.
pub fn assign_single(n_aps: usize, plan: &ChannelPlan) -> Result<ChannelAssignment, Error> {
    require_nonempty(plan)?;
    Ok(ChannelAssignment {
        scheme: Scheme::Single,
        slots: alloc::vec![0; n_aps],
    })
}

/// Each entrant picks uniformly among the channels holding the fewest
/// incumbent APs (when free channels exist the minimum is zero, so this
/// subsumes "pick an unoccupied channel"). Entrants are processed in id
/// order and do not observe each other's choices.
pub fn assign_sense(
    n_entrants: usize,
    incumbent_slots: &[usize],
    plan: &ChannelPlan,
    rng: &mut ChaCha8Rng,
) -> Result<ChannelAssignment, Error> {
    require_nonempty(plan)?;
    let mut counts = alloc::vec![0usize; plan.len()];
    for &s in incumbent_slots {
        if s >= plan.len() {
            return Err(Error::Config(String::from("incumbent channel outside the plan")));
        }
        counts[s] += 1;
    }
    let min = counts.iter().copied().min().unwrap_or(0);
    let candidates: Vec<usize> = (0..plan.len()).filter(|&s| counts[s] == min).collect();
    let slots = (0..n_entrants)
        .map(|_| candidates[rng.random_range(0..candidates.len())])
        .collect();
    Ok(ChannelAssignment {
        scheme: Scheme::Sense,
        slots,
    })
}
