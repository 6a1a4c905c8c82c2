//! Side-by-side comparison of the analytic MAC model and the event-driven
//! simulator on single-channel full cliques.
//!
//! The simulator in the crate root knows nothing about the analytic model;
//! this module is the one place where both meet. Same-technology members of
//! a clique are exchangeable, so the simulated share is averaged per
//! technology before comparing — per-station win counts carry heavy
//! backoff-correlation noise that the average removes without masking any
//! model error.

use coexsim_core::mac::{
    airtime, duty_collision_degradation, lbt_efficiency_mixed, pairwise_collision_us,
    DutyCycleParams, LbtParams, Neighborhoods,
};
use coexsim_core::Tech;

use crate::phase_averaged_opportunity_share;

/// Wi-Fi PHY rate used for clique frame times in oracle comparisons.
pub const WIFI_RATE_MBPS: f64 = 65.0;

/// One compared value: the analytic share and the simulated share for all
/// clique members of one technology.
#[derive(Clone, Copy, Debug)]
pub struct CliqueCheck {
    pub tech: Tech,
    pub analytic: f64,
    pub simulated: f64,
}

impl CliqueCheck {
    pub fn relative_error(&self) -> f64 {
        self.analytic / self.simulated - 1.0
    }
}

/// All technology multisets of the given size, as (wifi, laa, lteu) counts.
pub fn multisets(size: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for nw in 0..=size {
        for nl in 0..=(size - nw) {
            out.push((nw, nl, size - nw - nl));
        }
    }
    out
}

fn clique(n: usize) -> Neighborhoods {
    let mut member = vec![true; n * n];
    for x in 0..n {
        member[x * n + x] = false;
    }
    Neighborhoods::from_membership(n, member)
}

/// Compare analytic S·(1−r_deg)·airtime against the simulator's long-run
/// opportunity share on one full clique of `nw` Wi-Fi + `nl` LAA + `nu`
/// LTE-U APs. Returns one row per LBT technology present; a duty-only
/// clique has nothing to compare (its airtime is the duty fraction by
/// construction) and yields an empty vec.
pub fn compare_clique(
    nw: usize,
    nl: usize,
    nu: usize,
    horizon_us: f64,
    runs: usize,
    seed: u64,
) -> Vec<CliqueCheck> {
    let lbt = LbtParams::default();
    let duty_params = DutyCycleParams::default();
    let size = nw + nl + nu;
    let mut techs = Vec::new();
    techs.extend(std::iter::repeat(Tech::Wifi).take(nw));
    techs.extend(std::iter::repeat(Tech::Laa).take(nl));
    techs.extend(std::iter::repeat(Tech::Lteu).take(nu));
    let nb = clique(size);

    let frames: Vec<f64> = techs
        .iter()
        .filter(|t| t.is_lbt())
        .map(|&t| lbt.frame_us(t, WIFI_RATE_MBPS, WIFI_RATE_MBPS))
        .collect();
    if frames.is_empty() {
        return Vec::new();
    }
    let mean_tf = frames.iter().sum::<f64>() / frames.len() as f64;
    let coll_tf = pairwise_collision_us(&frames);

    // every duty member of a clique of this size runs d = 1/size
    let duty_periods: Vec<f64> = (0..nu)
        .map(|_| duty_params.period_us(1.0 / size as f64))
        .collect();
    let sim = phase_averaged_opportunity_share(
        &frames,
        &duty_periods,
        duty_params.on_time_ms * 1000.0,
        horizon_us,
        runs,
        seed,
    );

    let mut out: Vec<CliqueCheck> = Vec::new();
    let mut lbt_idx = 0;
    for (x, &tech) in techs.iter().enumerate() {
        if !tech.is_lbt() {
            continue;
        }
        let n_cont = 1 + nb
            .neighbors(x)
            .iter()
            .filter(|&&z| techs[z].is_lbt())
            .count();
        let s = lbt_efficiency_mixed(n_cont, mean_tf, coll_tf, &lbt).expect("fixed point");
        let a = airtime(x, &nb, &techs);
        let r = duty_collision_degradation(x, &nb, &techs, frames[lbt_idx], &duty_params);
        let analytic = s * (1.0 - r) * a;
        let simulated = sim[lbt_idx];
        lbt_idx += 1;
        match out.iter_mut().find(|c| c.tech == tech) {
            Some(c) => c.simulated += simulated, // analytic identical per tech
            None => out.push(CliqueCheck {
                tech,
                analytic,
                simulated,
            }),
        }
    }
    let count = |t: Tech| if t == Tech::Wifi { nw } else { nl } as f64;
    for c in out.iter_mut() {
        c.simulated /= count(c.tech);
    }
    out
}
