//! Radio-layer arithmetic: adjacent-channel rejection (ACIR), interference
//! sums, SINR at the served user, auto-rate lookup, and the final four-factor
//! throughput product.
//!
//! All power arithmetic is done in linear milliwatts; dB appears only at the
//! boundaries.

use alloc::vec::Vec;

use crate::mac::Neighborhoods;
use crate::spectrum::ChannelPlan;
use crate::{db_to_lin, lin_to_db, Error, Population, Tech};

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadioParams {
    pub tx_power_dbm: f64,
    pub noise_density_dbm_hz: f64,
    pub bandwidth_hz: f64,
    pub noise_figure_wifi_db: f64,
    pub noise_figure_lte_db: f64,
    pub aclr_wifi_db: f64,
    pub aclr_lte_db: f64,
    /// Wi-Fi selectivity, AP and user alike
    pub acs_wifi_db: f64,
    pub acs_lte_ap_db: f64,
    pub acs_lte_user_db: f64,
}

impl Default for RadioParams {
    fn default() -> Self {
        RadioParams {
            tx_power_dbm: 23.0,
            noise_density_dbm_hz: -174.0,
            bandwidth_hz: 20.0e6,
            noise_figure_wifi_db: 15.0,
            noise_figure_lte_db: 9.0,
            aclr_wifi_db: 26.0,
            aclr_lte_db: 45.0,
            acs_wifi_db: 22.0,
            acs_lte_ap_db: 46.0,
            acs_lte_user_db: 22.0,
        }
    }
}

impl RadioParams {
    /// Thermal noise floor seen by a receiver of the given technology, in
    /// dBm over the full channel bandwidth.
    pub fn noise_floor_dbm(&self, rx: Tech) -> f64 {
        let nf = match rx {
            Tech::Wifi => self.noise_figure_wifi_db,
            Tech::Laa | Tech::Lteu => self.noise_figure_lte_db,
        };
        self.noise_density_dbm_hz + 10.0 * libm::log10(self.bandwidth_hz) + nf
    }

    pub fn noise_floor_mw(&self, rx: Tech) -> f64 {
        db_to_lin(self.noise_floor_dbm(rx))
    }
}

/// Which end of a link is doing the receiving; selectivity differs between
/// LTE base stations and LTE terminals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RxRole {
    Ap,
    User,
}

/// Adjacent-channel interference ratio combining the transmitter's leakage
/// and the receiver's selectivity: 1/ACIR = 1/ACLR + 1/ACS in linear units.
pub fn acir_db(tx: Tech, rx_tech: Tech, rx_role: RxRole, r: &RadioParams) -> f64 {
    let aclr = match tx {
        Tech::Wifi => r.aclr_wifi_db,
        Tech::Laa | Tech::Lteu => r.aclr_lte_db,
    };
    let acs = match (rx_tech, rx_role) {
        (Tech::Wifi, _) => r.acs_wifi_db,
        (_, RxRole::Ap) => r.acs_lte_ap_db,
        (_, RxRole::User) => r.acs_lte_user_db,
    };
    lin_to_db(1.0 / (1.0 / db_to_lin(aclr) + 1.0 / db_to_lin(acs)))
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateStep {
    pub min_sinr_db: f64,
    pub rate_mbps: f64,
}

/// Step functions mapping SINR to bit rate, one per technology family.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RateTable {
    pub wifi: Vec<RateStep>,
    pub lte: Vec<RateStep>,
}

fn steps(rows: &[(f64, f64)]) -> Vec<RateStep> {
    rows.iter()
        .map(|&(min_sinr_db, rate_mbps)| RateStep {
            min_sinr_db,
            rate_mbps,
        })
        .collect()
}

impl Default for RateTable {
    fn default() -> Self {
        RateTable {
            // single-stream 802.11n MCS 0-7 ladder at 20 MHz, 800 ns GI
            wifi: steps(&[
                (2.0, 6.5),
                (5.0, 13.0),
                (9.0, 19.5),
                (11.0, 26.0),
                (15.0, 39.0),
                (18.0, 52.0),
                (20.0, 58.5),
                (25.0, 65.0),
            ]),
            // 15-step CQI ladder scaled to 20 MHz
            lte: steps(&[
                (-6.7, 2.056),
                (-4.7, 3.165),
                (-2.3, 5.090),
                (0.2, 8.123),
                (2.4, 11.841),
                (4.3, 15.876),
                (5.9, 19.937),
                (8.1, 25.844),
                (10.3, 32.490),
                (11.7, 36.867),
                (14.1, 44.858),
                (16.3, 52.689),
                (18.7, 61.075),
                (21.0, 69.066),
                (22.7, 75.000),
            ]),
        }
    }
}

impl RateTable {
    pub fn validate(&self) -> Result<(), Error> {
        for (name, t) in [("wifi", &self.wifi), ("lte", &self.lte)] {
            if t.is_empty() {
                return Err(Error::Config(alloc::format!("{name} rate table is empty")));
            }
            for w in t.windows(2) {
                if w[1].min_sinr_db <= w[0].min_sinr_db {
                    return Err(Error::Config(alloc::format!(
                        "{name} rate thresholds must increase strictly"
                    )));
                }
                if w[1].rate_mbps < w[0].rate_mbps {
                    return Err(Error::Config(alloc::format!("{name} rates must be non-decreasing")));
                }
            }
        }
        Ok(())
    }

    pub fn top_rate_mbps(&self, tech: Tech) -> f64 {
        self.for_tech(tech).last().map_or(0.0, |s| s.rate_mbps)
    }

    pub fn min_rate_mbps(&self, tech: Tech) -> f64 {
        self.for_tech(tech).first().map_or(0.0, |s| s.rate_mbps)
    }

    fn for_tech(&self, tech: Tech) -> &[RateStep] {
        match tech {
            Tech::Wifi => &self.wifi,
            Tech::Laa | Tech::Lteu => &self.lte,
        }
    }
}

/// Highest rate whose threshold is ≤ sinr (thresholds are closed lower
/// bounds); 0 below the first step.
pub fn rate_mbps(tech: Tech, sinr_db: f64, table: &RateTable) -> f64 {
    let mut rate = 0.0;
    for step in table.for_tech(tech) {
        if sinr_db >= step.min_sinr_db {
            rate = step.rate_mbps;
        } else {
            break;
        }
    }
    rate
}

/// Should interferer z be dropped from victim x's interference sum because
/// carrier sense already serializes them? Deferral happens whenever either
/// side listens before talking; only two duty-cycled APs (random independent
/// phases) keep overlapping in time despite being within CS range.
pub fn cs_excludes(tech_x: Tech, tech_z: Tech, in_cs: bool) -> bool {
    in_cs && !(tech_x.is_duty_cycled() && tech_z.is_duty_cycled())
}

/// Co-channel and adjacent-channel interference at the user of AP `x`, in
/// milliwatts. `loss_to_user_db(z)` is the loss from AP z to that user at
/// z's own carrier; `airtimes` must already cover every active AP.
#[allow(clippy::too_many_arguments)]
pub fn interference(
    x: usize,
    active: &[bool],
    techs: &[Tech],
    slots: &[usize],
    plan: &ChannelPlan,
    nb: &Neighborhoods,
    airtimes: &[f64],
    radio: &RadioParams,
    mut loss_to_user_db: impl FnMut(usize) -> f64,
) -> (f64, f64) {
    let mut i_co = 0.0;
    let mut i_adj = 0.0;
    for z in 0..techs.len() {
        if z == x || !active[z] {
            continue;
        }
        let co = plan.co_channel(slots[x], slots[z]);
        let adj = plan.adjacent(slots[x], slots[z]);
        if !co && !adj {
            continue;
        }
        if cs_excludes(techs[x], techs[z], nb.in_cs(x, z)) {
            continue;
        }
        let rx_dbm = radio.tx_power_dbm - loss_to_user_db(z);
        let mw = db_to_lin(rx_dbm) * airtimes[z];
        if co {
            i_co += mw;
        } else {
            let acir = db_to_lin(acir_db(techs[z], techs[x], RxRole::User, radio));
            i_adj += mw / acir;
        }
    }
    (i_co, i_adj)
}

/// SINR at the served user: signal over (interference + thermal noise).
pub fn sinr_db(serving_loss_db: f64, i_co_mw: f64, i_adj_mw: f64, rx: Tech, radio: &RadioParams) -> f64 {
    let signal_mw = db_to_lin(radio.tx_power_dbm - serving_loss_db);
    lin_to_db(signal_mw / (i_co_mw + i_adj_mw + radio.noise_floor_mw(rx)))
}

/// The four-factor downlink throughput product.
pub fn throughput_mbps(s: f64, r_deg: f64, airtime: f64, rate_mbps: f64) -> f64 {
    s * (1.0 - r_deg) * airtime * rate_mbps
}

/// Everything reported per AP for one realization variant.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ApRecord {
    pub ap: usize,
    pub population: Population,
    pub tech: Tech,
    pub channel_number: u16,
    pub airtime: f64,
    pub s: f64,
    pub r_deg: f64,
    pub sinr_db: f64,
    pub rate_mbps: f64,
    pub throughput_mbps: f64,
}
