//! Campaign orchestration: seeded realization pipeline with paired
//! baselines.
//!
//! Every realization draws one deployment, one shadowing table, and one set
//! of channel assignments, then evaluates up to three worlds on that shared
//! randomness: coexistence as configured, population A alone, and population
//! A against Wi-Fi-converted entrants. Downstream consequence metrics rely
//! on this pairing, so nothing may consume random draws differently between
//! variants.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::mac::{self, CsConfig, DutyCycleParams, LbtParams};
use crate::phy::{self, ApRecord, RadioParams, RateTable};
use crate::propagation::{LinkTable, PropagationParams};
use crate::scenario::{self, ApLocations, Deployment, ScenarioKind};
use crate::seed::{self, purpose};
use crate::spectrum::{self, ChannelPlan, PlanMode, Scheme};
use crate::{Error, Tech};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct BaselineSet {
    pub standalone: bool,
    pub wifi_entrant: bool,
}

impl Default for BaselineSet {
    fn default() -> Self {
        BaselineSet {
            standalone: true,
            wifi_entrant: false,
        }
    }
}

pub fn default_realizations(kind: ScenarioKind) -> usize {
    if kind.is_indoor() {
        3000
    } else {
        1500
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub scenario: ScenarioKind,
    pub n_pop_a: usize,
    pub n_pop_b: usize,
    pub tech_a: Tech,
    pub tech_b: Tech,
    pub plan_mode: PlanMode,
    pub scheme_a: Scheme,
    pub scheme_b: Scheme,
    pub realizations: usize,
    pub master_seed: u64,
    pub baselines: BaselineSet,
    pub outdoor_locations: ApLocations,
    pub prop: PropagationParams,
    pub radio: RadioParams,
    pub cs: CsConfig,
    pub lbt: LbtParams,
    pub duty: DutyCycleParams,
    pub rates: RateTable,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: ScenarioKind::Indoor,
            n_pop_a: 10,
            n_pop_b: 10,
            tech_a: Tech::Wifi,
            tech_b: Tech::Wifi,
            plan_mode: PlanMode::Indoor19,
            scheme_a: Scheme::Random,
            scheme_b: Scheme::Random,
            realizations: default_realizations(ScenarioKind::Indoor),
            master_seed: 1,
            baselines: BaselineSet::default(),
            outdoor_locations: ApLocations::default(),
            prop: PropagationParams::default(),
            radio: RadioParams::default(),
            cs: CsConfig::default(),
            lbt: LbtParams::default(),
            duty: DutyCycleParams::default(),
            rates: RateTable::default(),
        }
    }
}

impl RunConfig {
    pub fn n_aps(&self) -> usize {
        self.n_pop_a + self.n_pop_b
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.realizations == 0 {
            return Err(Error::Config(String::from("realization count must be at least 1")));
        }
        if self.scheme_a == Scheme::Sense {
            return Err(Error::Config(String::from(
                "population A cannot use the sense scheme: there is no earlier population to observe",
            )));
        }
        if self.scenario.is_indoor() {
            if self.n_pop_a > 2 * scenario::APARTMENTS_PER_STRIPE {
                return Err(Error::Config(format!(
                    "population A ({}) exceeds the apartment count",
                    self.n_pop_a
                )));
            }
            if self.n_aps() > scenario::INDOOR_CAPACITY {
                return Err(Error::Config(format!(
                    "{} APs exceed the indoor capacity of {}",
                    self.n_aps(),
                    scenario::INDOOR_CAPACITY
                )));
            }
        } else {
            let available = match &self.outdoor_locations {
                ApLocations::Synthetic { count } => *count,
                ApLocations::Provided(points) => points.len(),
            };
            if self.n_aps() > available {
                return Err(Error::Config(format!(
                    "{} APs exceed the {} outdoor locations",
                    self.n_aps(),
                    available
                )));
            }
        }
        if self.prop.shadowing_sigma_indoor_db < 0.0 || self.prop.shadowing_sigma_outdoor_db < 0.0 {
            return Err(Error::Config(String::from("shadowing sigma must be non-negative")));
        }
        if self.prop.indoor.exponent < 2.0 {
            return Err(Error::Config(String::from("indoor path-loss exponent must be at least 2")));
        }
        if self.duty.on_time_ms <= 0.0 {
            return Err(Error::Config(String::from("duty-cycle ON time must be positive")));
        }
        self.lbt.validate()?;
        self.rates.validate()?;
        Ok(())
    }

    /// Short human-readable tag used in output labels and file names.
    pub fn label(&self) -> String {
        format!(
            "{}_{}_a{}_b{}_{}",
            self.scenario.as_str(),
            self.tech_b.as_str(),
            self.n_pop_a,
            self.n_pop_b,
            self.plan_mode.as_str()
        )
    }
}

/// A realization's per-AP results for the coexistence world and whichever
/// baselines were requested. Baseline vectors carry population-A records
/// only when entrants are absent from that world.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RealizationOutput {
    pub index: usize,
    pub seed: u64,
    pub coex: Vec<ApRecord>,
    pub standalone: Option<Vec<ApRecord>>,
    pub wifi_entrant: Option<Vec<ApRecord>>,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CampaignResult {
    pub config: RunConfig,
    pub realizations: Vec<RealizationOutput>,
}

/// One world to evaluate on top of a shared deployment: which APs exist and
/// what technology each runs.
struct Variant<'a> {
    active: &'a [bool],
    techs: &'a [Tech],
}

fn evaluate_variant(
    dep: &Deployment,
    links: &LinkTable,
    plan: &ChannelPlan,
    slots: &[usize],
    v: &Variant,
    cfg: &RunConfig,
) -> Result<Vec<ApRecord>, Error> {
    let n_aps = dep.n_aps();
    let center = |z: usize| plan.channels[slots[z]].center_hz();

    let nb = mac::build_neighborhoods(v.active, v.techs, slots, plan, &cfg.cs, &cfg.radio, |x, z| {
        links
            .loss(x, z, center(z), &cfg.prop, cfg.prop.shadow_on_cs_links)
            .total_db()
    });

    let mut airtimes = alloc::vec![0.0; n_aps];
    for x in 0..n_aps {
        if v.active[x] {
            airtimes[x] = mac::airtime(x, &nb, v.techs);
        }
    }

    // SINR and rate need every interferer's airtime but nobody's efficiency,
    // so rates resolve in one pass and frame times follow from them
    let mut sinr = alloc::vec![0.0; n_aps];
    let mut rate = alloc::vec![0.0; n_aps];
    let mut frame_us = alloc::vec![0.0; n_aps];
    for x in 0..n_aps {
        if !v.active[x] {
            continue;
        }
        let u = dep.user_of(x);
        let serving_db = links.loss(x, u, center(x), &cfg.prop, true).total_db();
        let (i_co, i_adj) = phy::interference(
            x,
            v.active,
            v.techs,
            slots,
            plan,
            &nb,
            &airtimes,
            &cfg.radio,
            |z| links.loss(z, u, center(z), &cfg.prop, true).total_db(),
        );
        sinr[x] = phy::sinr_db(serving_db, i_co, i_adj, v.techs[x], &cfg.radio);
        rate[x] = phy::rate_mbps(v.techs[x], sinr[x], &cfg.rates);
        frame_us[x] = cfg
            .lbt
            .frame_us(v.techs[x], rate[x], cfg.rates.min_rate_mbps(v.techs[x]));
    }

    let mut out = Vec::with_capacity(v.active.iter().filter(|&&a| a).count());
    for x in 0..n_aps {
        if !v.active[x] {
            continue;
        }
        let s = if v.techs[x].is_duty_cycled() {
            1.0
        } else {
            // efficiency is averaged over the whole CS range: every LBT
            // contender's frame time weighs in equally, while a collision
            // holds the channel for the longer of its two frames
            let mut contender_tf = alloc::vec![frame_us[x]];
            for &y in nb.neighbors(x) {
                if v.techs[y].is_lbt() {
                    contender_tf.push(frame_us[y]);
                }
            }
            let n = contender_tf.len();
            let mean_tf = contender_tf.iter().sum::<f64>() / n as f64;
            let coll_tf = mac::pairwise_collision_us(&contender_tf);
            mac::lbt_efficiency_mixed(n, mean_tf, coll_tf, &cfg.lbt)?
        };
        let r_deg = mac::duty_collision_degradation(x, &nb, v.techs, frame_us[x], &cfg.duty);
        let airtime = airtimes[x];
        debug_assert!((0.0..=1.0).contains(&airtime));
        debug_assert!(s > 0.0 && s <= 1.0);
        debug_assert!((0.0..=1.0).contains(&r_deg));
        out.push(ApRecord {
            ap: x,
            population: dep.population_of(x),
            tech: v.techs[x],
            channel_number: plan.channels[slots[x]].number,
            airtime,
            s,
            r_deg,
            sinr_db: sinr[x],
            rate_mbps: rate[x],
            throughput_mbps: phy::throughput_mbps(s, r_deg, airtime, rate[x]),
        });
    }
    Ok(out)
}

/// Evaluate realization `index`: one shared deployment, shadowing table and
/// channel draw, then the coexistence world plus requested baselines.
pub fn run_realization(cfg: &RunConfig, index: usize) -> Result<RealizationOutput, Error> {
    let rs = seed::child_seed(cfg.master_seed, index as u64);

    let dep = if cfg.scenario.is_indoor() {
        scenario::generate_indoor(rs, cfg.n_pop_a, cfg.n_pop_b, cfg.tech_a, cfg.tech_b, cfg.scenario)?
    } else {
        scenario::generate_outdoor(
            rs,
            &cfg.outdoor_locations,
            cfg.n_pop_a,
            cfg.n_pop_b,
            cfg.tech_a,
            cfg.tech_b,
        )?
    };
    let links = LinkTable::build(&dep, rs, &cfg.prop);
    let plan = ChannelPlan::new(cfg.plan_mode);

    let assign = |scheme: Scheme, n: usize, stream_id: u64, incumbents: &[usize]| {
        let mut rng = seed::stream(rs, stream_id);
        match scheme {
            Scheme::Random => spectrum::assign_random(n, &plan, &mut rng),
            Scheme::Single => spectrum::assign_single(n, &plan),
            Scheme::Sense => spectrum::assign_sense(n, incumbents, &plan, &mut rng),
        }
    };
    let a_slots = assign(cfg.scheme_a, cfg.n_pop_a, purpose::CHANNELS_A, &[])?.slots;
    let b_slots = if cfg.n_pop_b > 0 {
        assign(cfg.scheme_b, cfg.n_pop_b, purpose::CHANNELS_B, &a_slots)?.slots
    } else {
        Vec::new()
    };
    let mut slots = a_slots;
    slots.extend_from_slice(&b_slots);

    let n_aps = dep.n_aps();
    let mut techs_coex = alloc::vec![cfg.tech_a; n_aps];
    for t in techs_coex[cfg.n_pop_a..].iter_mut() {
        *t = cfg.tech_b;
    }
    let all_active = alloc::vec![true; n_aps];

    let coex = evaluate_variant(
        &dep,
        &links,
        &plan,
        &slots,
        &Variant {
            active: &all_active,
            techs: &techs_coex,
        },
        cfg,
    )?;

    let standalone = if cfg.baselines.standalone {
        let mut active = alloc::vec![true; n_aps];
        for a in active[cfg.n_pop_a..].iter_mut() {
            *a = false;
        }
        Some(evaluate_variant(
            &dep,
            &links,
            &plan,
            &slots,
            &Variant {
                active: &active,
                techs: &techs_coex,
            },
            cfg,
        )?)
    } else {
        None
    };

    let wifi_entrant = if cfg.baselines.wifi_entrant {
        let mut techs = techs_coex.clone();
        for t in techs[cfg.n_pop_a..].iter_mut() {
            *t = Tech::Wifi;
        }
        Some(evaluate_variant(
            &dep,
            &links,
            &plan,
            &slots,
            &Variant {
                active: &all_active,
                techs: &techs,
            },
            cfg,
        )?)
    } else {
        None
    };

    Ok(RealizationOutput {
        index,
        seed: rs,
        coex,
        standalone,
        wifi_entrant,
    })
}

/// Run all realizations in index order on the calling thread. Concurrent
/// drivers split the index range instead and merge by index; both paths
/// produce identical results because realizations share no state.
pub fn run_campaign(cfg: &RunConfig) -> Result<CampaignResult, Error> {
    cfg.validate()?;
    let mut realizations = Vec::with_capacity(cfg.realizations);
    for index in 0..cfg.realizations {
        let r = run_realization(cfg, index).map_err(|e| Error::Realization {
            index,
            source: Box::new(e),
        })?;
        realizations.push(r);
    }
    Ok(CampaignResult {
        config: cfg.clone(),
        realizations,
    })
}
