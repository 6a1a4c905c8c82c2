//! MAC-layer terms: carrier-sense neighborhoods, per-AP transmit airtime,
//! listen-before-talk (LBT) efficiency from the saturated-DCF fixed point,
//! and the extra degradation Wi-Fi suffers when duty-cycled APs start an ON
//! period mid-frame.

use alloc::string::String;
use alloc::vec::Vec;

use crate::phy::{acir_db, RadioParams, RxRole};
use crate::spectrum::ChannelPlan;
use crate::{Error, Tech};

/// Carrier-sense thresholds in dBm. Wi-Fi uses preamble detection for
/// co-channel Wi-Fi and plain energy detection (higher threshold) for
/// everything else; LAA and LTE-U use energy detection throughout.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CsConfig {
    pub wifi_co_wifi: f64,
    pub wifi_co_other: f64,
    pub wifi_adj: f64,
    pub laa: f64,
    pub lteu: f64,
}

impl Default for CsConfig {
    fn default() -> Self {
        CsConfig {
            wifi_co_wifi: -82.0,
            wifi_co_other: -62.0,
            wifi_adj: -62.0,
            laa: -62.0,
            lteu: -62.0,
        }
    }
}

impl CsConfig {
    pub fn threshold_dbm(&self, sensing: Tech, sensed: Tech, adjacent: bool) -> f64 {
        match sensing {
            Tech::Wifi => {
                if adjacent {
                    self.wifi_adj
                } else if sensed == Tech::Wifi {
                    self.wifi_co_wifi
                } else {
                    self.wifi_co_other
                }
            }
            Tech::Laa => self.laa,
            Tech::Lteu => self.lteu,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LbtParams {
    pub cw_min: u32,
    pub cw_max: u32,
    pub slot_us: f64,
    pub sifs_us: f64,
    pub difs_us: f64,
    pub msdu_bytes: u32,
    pub phy_header_us: f64,
    pub mac_header_bits: u32,
    pub laa_frame_us: f64,
}

impl Default for LbtParams {
    fn default() -> Self {
        LbtParams {
            cw_min: 15,
            cw_max: 1023,
            slot_us: 9.0,
            sifs_us: 16.0,
            difs_us: 34.0,
            msdu_bytes: 1500,
            phy_header_us: 40.0,
            mac_header_bits: 320,
            laa_frame_us: 1000.0,
        }
    }
}

impl LbtParams {
    pub fn validate(&self) -> Result<(), Error> {
        if self.slot_us <= 0.0 || self.sifs_us <= 0.0 || self.phy_header_us <= 0.0 || self.laa_frame_us <= 0.0 {
            return Err(Error::Config(String::from("LBT durations must be positive")));
        }
        if (self.difs_us - (self.sifs_us + 2.0 * self.slot_us)).abs() > 1e-9 {
            return Err(Error::Config(String::from("DIFS must equal SIFS + 2 slots")));
        }
        let ratio = (self.cw_max + 1) / (self.cw_min + 1);
        if (self.cw_max + 1) % (self.cw_min + 1) != 0 || !ratio.is_power_of_two() {
            return Err(Error::Config(String::from(
                "CW_max+1 must be a power-of-two multiple of CW_min+1",
            )));
        }
        Ok(())
    }

    /// Number of binary-exponential backoff doublings.
    pub fn stages(&self) -> u32 {
        ((self.cw_max + 1) / (self.cw_min + 1)).ilog2()
    }

    /// On-air duration of one Wi-Fi data frame at the given rate.
    pub fn wifi_frame_us(&self, rate_mbps: f64) -> f64 {
        self.phy_header_us + (self.mac_header_bits as f64 + 8.0 * self.msdu_bytes as f64) / rate_mbps
    }

    /// Frame time entering the MAC model. Wi-Fi frames shrink with the
    /// selected rate (a zero rate falls back to `floor_rate_mbps`, the
    /// lowest table entry, since the MAC still clocks frames out); LAA
    /// frames fill one subframe.
    pub fn frame_us(&self, tech: Tech, rate_mbps: f64, floor_rate_mbps: f64) -> f64 {
        match tech {
            Tech::Wifi => self.wifi_frame_us(if rate_mbps > 0.0 { rate_mbps } else { floor_rate_mbps }),
            Tech::Laa | Tech::Lteu => self.laa_frame_us,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DutyCycleParams {
    /// fixed ON duration; the period stretches as 1/duty so OFF time grows
    /// with neighborhood size
    pub on_time_ms: f64,
}

impl Default for DutyCycleParams {
    fn default() -> Self {
        DutyCycleParams { on_time_ms: 100.0 }
    }
}

impl DutyCycleParams {
    pub fn period_us(&self, duty_fraction: f64) -> f64 {
        debug_assert!(duty_fraction > 0.0 && duty_fraction <= 1.0);
        self.on_time_ms * 1000.0 / duty_fraction
    }
}

/// Who hears whom: `member[x·n + z]` says AP z's transmissions trip AP x's
/// carrier sense. The relation need not be symmetric once technologies (and
/// hence thresholds and selectivities) differ.
#[derive(Clone, Debug, PartialEq)]
pub struct Neighborhoods {
    n: usize,
    member: Vec<bool>,
    lists: Vec<Vec<usize>>,
}

impl Neighborhoods {
    pub fn from_membership(n: usize, member: Vec<bool>) -> Neighborhoods {
        debug_assert_eq!(member.len(), n * n);
        let lists = (0..n)
            .map(|x| (0..n).filter(|&z| z != x && member[x * n + z]).collect())
            .collect();
        Neighborhoods { n, member, lists }
    }

    pub fn n_aps(&self) -> usize {
        self.n
    }

    pub fn in_cs(&self, x: usize, z: usize) -> bool {
        self.member[x * self.n + z]
    }

    /// Ids of every AP inside x's CS range, both populations.
    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.lists[x]
    }

    pub fn degree(&self, x: usize) -> usize {
        self.lists[x].len()
    }

    /// Adaptive duty fraction a duty-cycled AP would pick here: one equal
    /// share per observed AP, itself included.
    pub fn duty_fraction(&self, y: usize) -> f64 {
        1.0 / (1.0 + self.degree(y) as f64)
    }
}

/// Evaluate CS membership for every ordered AP pair. `cs_loss_db(x, z)` is
/// the loss from transmitter z to the sensing AP x, at z's carrier; the
/// received level is additionally knocked down by ACIR when the two sit on
/// adjacent channels (z's leakage, x's AP-grade selectivity).
pub fn build_neighborhoods(
    active: &[bool],
    techs: &[Tech],
    slots: &[usize],
    plan: &ChannelPlan,
    cs: &CsConfig,
    radio: &RadioParams,
    mut cs_loss_db: impl FnMut(usize, usize) -> f64,
) -> Neighborhoods {
    let n = techs.len();
    debug_assert_eq!(active.len(), n);
    debug_assert_eq!(slots.len(), n);
    let mut member = alloc::vec![false; n * n];
    for x in 0..n {
        if !active[x] {
            continue;
        }
        for z in 0..n {
            if z == x || !active[z] {
                continue;
            }
            let co = plan.co_channel(slots[x], slots[z]);
            let adj = plan.adjacent(slots[x], slots[z]);
            if !co && !adj {
                continue;
            }
            let mut rx_dbm = radio.tx_power_dbm - cs_loss_db(x, z);
            if adj {
                rx_dbm -= acir_db(techs[z], techs[x], RxRole::Ap, radio);
            }
            member[x * n + z] = rx_dbm >= cs.threshold_dbm(techs[x], techs[z], adj);
        }
    }
    Neighborhoods::from_membership(n, member)
}

/// Fraction of time AP x may transmit. A duty-cycled AP transmits for its
/// adaptive duty fraction. An LBT AP splits time equally with the LBT APs
/// it hears and is additionally silenced during its duty-cycled neighbors'
/// ON periods (independent blanking per neighbor).
///
/// The result lies in [0, 1]. Exactly zero is reachable: with asymmetric
/// detection, an LBT AP may hear a duty-cycled AP that itself hears nobody
/// and therefore never yields the channel.
pub fn airtime(x: usize, nb: &Neighborhoods, techs: &[Tech]) -> f64 {
    if techs[x].is_duty_cycled() {
        return nb.duty_fraction(x);
    }
    let mut lbt_peers = 0usize;
    let mut clear = 1.0;
    for &y in nb.neighbors(x) {
        if techs[y].is_lbt() {
            lbt_peers += 1;
        } else {
            clear *= 1.0 - nb.duty_fraction(y);
        }
    }
    clear / (1.0 + lbt_peers as f64)
}

/// Per-attempt transmission probability of one saturated station among n
/// contenders, from the binary-exponential-backoff fixed point. Solved by
/// bisection on the conditional collision probability, which is monotone,
/// so the bracket always closes.
pub fn bianchi_tau(n: usize, cw_min: u32, stages: u32) -> Result<f64, Error> {
    let w = (cw_min + 1) as f64;
    let tau_of = |p: f64| {
        // finite geometric sum over backoff stages; stays defined at the
        // closed form's p = 1/2 singularity
        let mut geo = 0.0;
        let mut term = 1.0;
        for _ in 0..stages {
            geo += term;
            term *= 2.0 * p;
        }
        2.0 / (1.0 + w + p * w * geo)
    };
    if n <= 1 {
        return Ok(tau_of(0.0));
    }
    let residual = |p: f64| p - (1.0 - libm::pow(1.0 - tau_of(p), (n - 1) as f64));
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if residual(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = 0.5 * (lo + hi);
    if residual(p).abs() > 1e-9 {
        return Err(Error::NoConvergence(alloc::format!(
            "backoff fixed point stalled at n={n}, residual {}",
            residual(p)
        )));
    }
    Ok(tau_of(p))
}

/// Saturated LBT MAC efficiency for one of `n` contenders whose frames
/// average `mean_frame_us` on the air: useful payload time over expected
/// channel time (idle slots + transmissions + collisions). Collisions occupy
/// the channel for the same mean duration; see [`lbt_efficiency_mixed`] when
/// contenders' frame lengths differ.
pub fn lbt_efficiency(n: usize, mean_frame_us: f64, p: &LbtParams) -> Result<f64, Error> {
    lbt_efficiency_mixed(n, mean_frame_us, mean_frame_us, p)
}

/// [`lbt_efficiency`] with a distinct collision duration: a collision holds
/// the channel for its *longest* participant, so in mixed-frame-length
/// cliques `collision_frame_us` (the expected max over a colliding pair)
/// exceeds the mean and efficiency drops. Identical frame lengths reduce
/// this to the single-duration form.
pub fn lbt_efficiency_mixed(
    n: usize,
    mean_frame_us: f64,
    collision_frame_us: f64,
    p: &LbtParams,
) -> Result<f64, Error> {
    debug_assert!(n >= 1 && mean_frame_us > 0.0);
    let tau = bianchi_tau(n, p.cw_min, p.stages())?;
    let nf = n as f64;
    let p_tr = 1.0 - libm::pow(1.0 - tau, nf);
    let p_s = nf * tau * libm::pow(1.0 - tau, nf - 1.0) / p_tr;
    let succ_us = mean_frame_us + p.difs_us;
    // E[pairwise max] ≥ mean holds mathematically; the clamp only absorbs
    // rounding from the two averages being accumulated differently
    let coll_us = collision_frame_us.max(mean_frame_us) + p.difs_us;
    let busy_us = p_s * succ_us + (1.0 - p_s) * coll_us;
    Ok(p_s * p_tr * mean_frame_us / ((1.0 - p_tr) * p.slot_us + p_tr * busy_us))
}

/// Expected channel hold of a two-party collision: the mean of the pairwise
/// maxima over all unordered contender pairs. With one contender (no one to
/// collide with) this is just its own frame time.
pub fn pairwise_collision_us(frames_us: &[f64]) -> f64 {
    let k = frames_us.len();
    if k < 2 {
        return frames_us.first().copied().unwrap_or(0.0);
    }
    let mut sum = 0.0;
    let mut pairs = 0u32;
    for i in 0..k {
        for j in (i + 1)..k {
            sum += frames_us[i].max(frames_us[j]);
            pairs += 1;
        }
    }
    sum / pairs as f64
}

/// Probability that at least one in-CS duty-cycled AP begins an ON period
/// somewhere inside one of x's frames, phases independent and uniform: a
/// frame of length T_f catches a given neighbor's period of length T_p
/// with probability T_f/T_p.
pub fn duty_collision_degradation(
    x: usize,
    nb: &Neighborhoods,
    techs: &[Tech],
    frame_us: f64,
    duty: &DutyCycleParams,
) -> f64 {
    if !techs[x].is_lbt() {
        return 0.0;
    }
    let mut survive = 1.0;
    for &y in nb.neighbors(x) {
        if techs[y].is_duty_cycled() {
            let period_us = duty.period_us(nb.duty_fraction(y));
            survive *= 1.0 - (frame_us / period_us).min(1.0);
        }
    }
    1.0 - survive
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::PlanMode;

    const R: RadioParams = RadioParams {
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
    };

    #[test]
    fn threshold_matrix_routing() {
        let cs = CsConfig::default();
        assert_eq!(cs.threshold_dbm(Tech::Wifi, Tech::Wifi, false), -82.0);
        assert_eq!(cs.threshold_dbm(Tech::Wifi, Tech::Laa, false), -62.0);
        assert_eq!(cs.threshold_dbm(Tech::Wifi, Tech::Lteu, false), -62.0);
        assert_eq!(cs.threshold_dbm(Tech::Wifi, Tech::Wifi, true), -62.0);
        for sensed in [Tech::Wifi, Tech::Laa, Tech::Lteu] {
            for adj in [false, true] {
                assert_eq!(cs.threshold_dbm(Tech::Laa, sensed, adj), -62.0);
                assert_eq!(cs.threshold_dbm(Tech::Lteu, sensed, adj), -62.0);
            }
        }
    }

    fn symmetric_loss(loss: f64) -> impl FnMut(usize, usize) -> f64 {
        move |_x, _z| loss
    }

    #[test]
    fn membership_threshold_arithmetic() {
        let plan = ChannelPlan::new(PlanMode::Single1);
        let cs = CsConfig::default();
        // two co-channel Wi-Fi APs at 100 dB: 23-100 = -77 >= -82
        let nb = build_neighborhoods(
            &[true, true],
            &[Tech::Wifi, Tech::Wifi],
            &[0, 0],
            &plan,
            &cs,
            &R,
            symmetric_loss(100.0),
        );
        assert!(nb.in_cs(0, 1) && nb.in_cs(1, 0));
        assert_eq!(nb.neighbors(0), &[1]);
        // same geometry but Wi-Fi/LAA: -77 < -62 both ways
        let nb = build_neighborhoods(
            &[true, true],
            &[Tech::Wifi, Tech::Laa],
            &[0, 0],
            &plan,
            &cs,
            &R,
            symmetric_loss(100.0),
        );
        assert!(!nb.in_cs(0, 1) && !nb.in_cs(1, 0));
        assert_eq!(nb.degree(0), 0);
    }

    #[test]
    fn adjacent_membership_includes_acir() {
        let plan = ChannelPlan::new(PlanMode::NonDfs4);
        let cs = CsConfig::default();
        // Wi-Fi pair 20 MHz apart, 60 dB loss: 23-60-20.54 = -57.5 >= -62
        let nb = build_neighborhoods(
            &[true, true],
            &[Tech::Wifi, Tech::Wifi],
            &[0, 1],
            &plan,
            &cs,
            &R,
            symmetric_loss(60.0),
        );
        assert!(nb.in_cs(0, 1) && nb.in_cs(1, 0));
        // 6 dB more loss pushes it under
        let nb = build_neighborhoods(
            &[true, true],
            &[Tech::Wifi, Tech::Wifi],
            &[0, 1],
            &plan,
            &cs,
            &R,
            symmetric_loss(66.0),
        );
        assert!(!nb.in_cs(0, 1));
        // 40 MHz apart: no relation at any loss
        let nb = build_neighborhoods(
            &[true, true],
            &[Tech::Wifi, Tech::Wifi],
            &[0, 2],
            &plan,
            &cs,
            &R,
            symmetric_loss(0.0),
        );
        assert!(!nb.in_cs(0, 1));
    }

    #[test]
    fn asymmetric_membership_across_techs() {
        // adjacent Wi-Fi/LAA pair at 62 dB: the Wi-Fi side receives through
        // the LTE transmitter's tight leakage mask (ACIR 21.98 -> -60.98,
        // heard) while the LAA side enjoys its own sharp AP selectivity
        // against Wi-Fi leakage (ACIR 25.96 -> -64.96, silent)
        let plan = ChannelPlan::new(PlanMode::NonDfs4);
        let cs = CsConfig::default();
        let nb = build_neighborhoods(
            &[true, true],
            &[Tech::Wifi, Tech::Laa],
            &[0, 1],
            &plan,
            &cs,
            &R,
            symmetric_loss(62.0),
        );
        assert!(nb.in_cs(0, 1));
        assert!(!nb.in_cs(1, 0));
    }

    #[test]
    fn isolated_and_inactive() {
        let plan = ChannelPlan::new(PlanMode::Single1);
        let cs = CsConfig::default();
        let nb = build_neighborhoods(
            &[true, true],
            &[Tech::Wifi, Tech::Wifi],
            &[0, 0],
            &plan,
            &cs,
            &R,
            symmetric_loss(200.0),
        );
        assert_eq!(nb.degree(0), 0);
        let nb = build_neighborhoods(
            &[true, false],
            &[Tech::Wifi, Tech::Wifi],
            &[0, 0],
            &plan,
            &cs,
            &R,
            symmetric_loss(60.0),
        );
        assert!(!nb.in_cs(0, 1) && !nb.in_cs(1, 0));
    }

    /// Fully-connected co-channel membership over n APs.
    fn clique(n: usize) -> Neighborhoods {
        let mut m = alloc::vec![true; n * n];
        for x in 0..n {
            m[x * n + x] = false;
        }
        Neighborhoods::from_membership(n, m)
    }

    #[test]
    fn airtime_examples() {
        // lone AP
        let nb = clique(1);
        assert_eq!(airtime(0, &nb, &[Tech::Wifi]), 1.0);
        // Wi-Fi with two Wi-Fi and one LAA neighbor: equal quarter share
        let nb = clique(4);
        let techs = [Tech::Wifi, Tech::Wifi, Tech::Wifi, Tech::Laa];
        assert_eq!(airtime(0, &nb, &techs), 0.25);
        // Wi-Fi with one duty-cycled neighbor that only sees it back:
        // neighbor duty 1/2, so half the time is blanked
        let nb = clique(2);
        let techs = [Tech::Wifi, Tech::Lteu];
        assert_eq!(airtime(0, &nb, &techs), 0.5);
        // the duty-cycled AP transmits its duty fraction
        assert_eq!(airtime(1, &nb, &techs), 0.5);
    }

    #[test]
    fn airtime_duty_equals_duty_fraction() {
        for n in 1..=6 {
            let nb = clique(n);
            let techs = alloc::vec![Tech::Lteu; n];
            for x in 0..n {
                assert_eq!(airtime(x, &nb, &techs), nb.duty_fraction(x));
                assert_eq!(nb.duty_fraction(x), 1.0 / n as f64);
            }
        }
    }

    #[test]
    fn airtime_equal_share_clique() {
        for n in 1..=8 {
            let nb = clique(n);
            let techs = alloc::vec![Tech::Wifi; n];
            let total: f64 = (0..n).map(|x| airtime(x, &nb, &techs)).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn airtime_range() {
        // memberships over the first dozen matrix cells, exhaustively,
        // with a rotating tech mix: airtime stays in [0, 1], and the only
        // zeros come from an always-on duty neighbor
        for n in 1..=5usize {
            let cells = (n * n).min(12);
            for bits in 0..(1u32 << cells) {
                let mut m = alloc::vec![false; n * n];
                for (i, cell) in m.iter_mut().enumerate().take(cells) {
                    *cell = bits >> i & 1 == 1;
                }
                for x in 0..n {
                    m[x * n + x] = false;
                }
                let nb = Neighborhoods::from_membership(n, m);
                let techs: Vec<Tech> = (0..n)
                    .map(|i| [Tech::Wifi, Tech::Laa, Tech::Lteu][i % 3])
                    .collect();
                for x in 0..n {
                    let a = airtime(x, &nb, &techs);
                    assert!((0.0..=1.0).contains(&a));
                    if a == 0.0 {
                        assert!(techs[x].is_lbt());
                        assert!(nb
                            .neighbors(x)
                            .iter()
                            .any(|&y| techs[y].is_duty_cycled() && nb.degree(y) == 0));
                    }
                }
            }
        }
    }

    #[test]
    fn lbt_params_validation() {
        LbtParams::default().validate().unwrap();
        let mut p = LbtParams::default();
        p.difs_us = 30.0;
        assert!(p.validate().is_err());
        let mut p = LbtParams::default();
        p.cw_max = 1000;
        assert!(p.validate().is_err());
        assert_eq!(LbtParams::default().stages(), 6);
    }

    #[test]
    fn frame_times() {
        let p = LbtParams::default();
        assert!((p.wifi_frame_us(65.0) - 229.538462).abs() < 1e-5);
        assert!((p.wifi_frame_us(6.5) - 1935.384615).abs() < 1e-5);
        assert_eq!(p.frame_us(Tech::Laa, 52.689, 2.056), 1000.0);
        assert_eq!(p.frame_us(Tech::Lteu, 0.0, 2.056), 1000.0);
        // zero-rate Wi-Fi clocks at the floor rate
        assert_eq!(p.frame_us(Tech::Wifi, 0.0, 6.5), p.wifi_frame_us(6.5));
        assert_eq!(p.frame_us(Tech::Wifi, 65.0, 6.5), p.wifi_frame_us(65.0));
    }

    #[test]
    fn tau_single_station() {
        let tau = bianchi_tau(1, 15, 6).unwrap();
        assert!((tau - 2.0 / 17.0).abs() < 1e-12);
    }

    #[test]
    fn tau_fixed_point_consistency() {
        // the solved (tau, p) must satisfy both coupled equations
        for n in [2usize, 3, 5, 10, 40] {
            let tau = bianchi_tau(n, 15, 6).unwrap();
            let p = 1.0 - libm::pow(1.0 - tau, (n - 1) as f64);
            let mut geo = 0.0;
            let mut term = 1.0;
            for _ in 0..6 {
                geo += term;
                term *= 2.0 * p;
            }
            let tau_back = 2.0 / (1.0 + 16.0 + p * 16.0 * geo);
            assert!((tau - tau_back).abs() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn efficiency_reference_values() {
        let p = LbtParams::default();
        let t65 = p.wifi_frame_us(65.0);
        assert!((lbt_efficiency(1, t65, &p).unwrap() - 0.693389102).abs() < 1e-6);
        assert!((lbt_efficiency(1, 1000.0, &p).unwrap() - 0.907852928).abs() < 1e-6);
        assert!((lbt_efficiency(2, t65, &p).unwrap() - 0.723075).abs() < 1e-6);
        assert!((lbt_efficiency(5, t65, &p).unwrap() - 0.690233).abs() < 1e-6);
        assert!((lbt_efficiency(10, t65, &p).unwrap() - 0.644446).abs() < 1e-6);
        assert!((lbt_efficiency(20, t65, &p).unwrap() - 0.594860).abs() < 1e-6);
        assert!((lbt_efficiency(40, t65, &p).unwrap() - 0.541508).abs() < 1e-6);
        // mixed Wi-Fi + LAA pair shares the mean frame time
        let mixed = 0.5 * (t65 + 1000.0);
        assert!((lbt_efficiency(2, mixed, &p).unwrap() - 0.847742).abs() < 1e-6);
    }

    #[test]
    fn collision_duration_lowers_mixed_efficiency() {
        let p = LbtParams::default();
        let t65 = p.wifi_frame_us(65.0);
        // identical frames: the split form collapses to the plain one
        assert_eq!(
            lbt_efficiency(3, t65, &p).unwrap(),
            lbt_efficiency_mixed(3, t65, t65, &p).unwrap()
        );
        // one Wi-Fi among two LAA: every collision pair contains an LAA
        // frame, so collisions hold the channel for the full 1 ms
        let frames = [t65, 1000.0, 1000.0];
        let mean = frames.iter().sum::<f64>() / 3.0;
        let coll = pairwise_collision_us(&frames);
        assert_eq!(coll, 1000.0);
        let split = lbt_efficiency_mixed(3, mean, coll, &p).unwrap();
        assert!(split < lbt_efficiency(3, mean, &p).unwrap());
        assert!(split > 0.0 && split <= 1.0);
    }

    #[test]
    fn pairwise_collision_examples() {
        assert_eq!(pairwise_collision_us(&[]), 0.0);
        assert_eq!(pairwise_collision_us(&[229.5]), 229.5);
        // {200, 400, 1000}: pair maxima 400, 1000, 1000
        assert!((pairwise_collision_us(&[200.0, 400.0, 1000.0]) - 800.0).abs() < 1e-12);
    }

    #[test]
    fn efficiency_monotone_beyond_two() {
        let p = LbtParams::default();
        let t = p.wifi_frame_us(65.0);
        let s2 = lbt_efficiency(2, t, &p).unwrap();
        let s8 = lbt_efficiency(8, t, &p).unwrap();
        assert!(s8 < s2);
        let mut prev = s2;
        for n in 3..=60 {
            let s = lbt_efficiency(n, t, &p).unwrap();
            assert!(s < prev, "n={n}");
            prev = s;
        }
    }

    #[test]
    fn efficiency_in_unit_interval() {
        let p = LbtParams::default();
        for n in 1..=60 {
            for t in [100.0, 229.5, 614.8, 1000.0, 1935.4, 3000.0] {
                let s = lbt_efficiency(n, t, &p).unwrap();
                assert!(s > 0.0 && s <= 1.0, "n={n} t={t} s={s}");
            }
        }
    }

    #[test]
    fn degradation_examples() {
        let duty = DutyCycleParams::default();
        let p = LbtParams::default();
        let tf = p.wifi_frame_us(65.0);
        // no duty-cycled neighbors
        let nb = clique(2);
        assert_eq!(
            duty_collision_degradation(0, &nb, &[Tech::Wifi, Tech::Laa], tf, &duty),
            0.0
        );
        // one duty neighbor with duty 1/2 -> period 200 ms
        let techs = [Tech::Wifi, Tech::Lteu];
        let r = duty_collision_degradation(0, &nb, &techs, tf, &duty);
        assert!((r - tf / 200_000.0).abs() < 1e-12);
        assert!((r - 0.00114769).abs() < 1e-7);
        // duty-cycled APs and plain entrants never accrue degradation
        assert_eq!(duty_collision_degradation(1, &nb, &techs, 1000.0, &duty), 0.0);
    }

    #[test]
    fn degradation_two_neighbors_compound() {
        let duty = DutyCycleParams::default();
        let nb = clique(3);
        let techs = [Tech::Wifi, Tech::Lteu, Tech::Lteu];
        let tf = 229.538462;
        // each neighbor sees two APs -> duty 1/3 -> period 300 ms
        let p1 = tf / 300_000.0;
        let r = duty_collision_degradation(0, &nb, &techs, tf, &duty);
        assert!((r - (1.0 - (1.0 - p1) * (1.0 - p1))).abs() < 1e-12);
    }

    #[test]
    fn period_stretches_with_neighborhood() {
        let d = DutyCycleParams::default();
        assert_eq!(d.period_us(1.0), 100_000.0);
        assert_eq!(d.period_us(0.5), 200_000.0);
        assert_eq!(d.period_us(0.25), 400_000.0);
    }
}
