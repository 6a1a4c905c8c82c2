//! Event-driven reference simulator for saturated listen-before-talk (LBT)
//! cliques sharing a channel with periodically transmitting duty-cycled
//! stations.
//!
//! This crate is a test oracle. It advances time through backoff countdown,
//! transmission, collision, and duty-cycle freeze events and reports how the
//! channel time was actually spent, so the analytic MAC model can be checked
//! against an independent implementation. The simulator in this root module
//! shares no code with the model under test — timing constants are
//! duplicated on purpose; the two meet only in [`check`], which runs them
//! side by side.

use rand::Rng;

pub mod check;

/// Contention timing for the LBT stations. `difs_us` is the full post-frame
/// deferral (already including SIFS).
#[derive(Clone, Copy, Debug)]
pub struct LbtTiming {
    pub slot_us: f64,
    pub difs_us: f64,
    pub cw_min: u32,
    pub cw_max: u32,
}

impl Default for LbtTiming {
    fn default() -> Self {
        LbtTiming {
            slot_us: 9.0,
            difs_us: 34.0,
            cw_min: 15,
            cw_max: 1023,
        }
    }
}

/// A duty-cycled station: ON for `on_us`, then OFF until `period_us` has
/// elapsed, with the pattern shifted by `phase_us`.
#[derive(Clone, Copy, Debug)]
pub struct DutySpec {
    pub on_us: f64,
    pub period_us: f64,
    pub phase_us: f64,
}

impl DutySpec {
    fn is_on(&self, t: f64) -> bool {
        (t - self.phase_us).rem_euclid(self.period_us) < self.on_us
    }

    /// Next instant at which this station switches ON or OFF. The step is
    /// floored at 1 ns so time always advances even when rounding puts the
    /// edge within one ulp of `t` (a 9 µs slot never notices 1 ns).
    fn next_edge(&self, t: f64) -> f64 {
        let x = (t - self.phase_us).rem_euclid(self.period_us);
        let dt = if x < self.on_us {
            self.on_us - x
        } else {
            self.period_us - x
        };
        t + dt.max(1e-3)
    }
}

/// Tallies from one simulated run.
#[derive(Clone, Debug)]
pub struct CliqueRun {
    /// Successful frames per LBT station.
    pub wins: Vec<u64>,
    /// Channel time spent in each station's successful frames (µs).
    pub win_time_us: Vec<f64>,
    /// Simulated span (µs); at least the requested horizon.
    pub elapsed_us: f64,
    /// Frames lost to simultaneous LBT transmissions.
    pub collisions: u64,
    /// Frames lost to a duty-cycle ON period starting mid-frame.
    pub duty_hits: u64,
}

/// Simulate one clique: every LBT station hears every other station and all
/// duty-cycled stations. LBT stations run binary-exponential backoff, freeze
/// while any duty station is ON, and lose any frame that a duty ON edge
/// lands in. Duty stations transmit on their fixed schedule regardless.
pub fn run_clique(
    frame_us: &[f64],
    duty: &[DutySpec],
    horizon_us: f64,
    timing: &LbtTiming,
    rng: &mut impl Rng,
) -> CliqueRun {
    let n = frame_us.len();
    let mut cw: Vec<u32> = vec![timing.cw_min; n];
    let mut bo: Vec<u32> = (0..n)
        .map(|_| rng.random_range(0..=timing.cw_min))
        .collect();
    let mut out = CliqueRun {
        wins: vec![0; n],
        win_time_us: vec![0.0; n],
        elapsed_us: 0.0,
        collisions: 0,
        duty_hits: 0,
    };
    let any_on = |t: f64| duty.iter().any(|d| d.is_on(t));
    let next_edge = |t: f64| {
        duty.iter()
            .map(|d| d.next_edge(t))
            .fold(f64::INFINITY, f64::min)
    };

    let mut t = 0.0f64;
    while t < horizon_us {
        if any_on(t) {
            t = next_edge(t);
            continue;
        }
        if n == 0 {
            t = if duty.is_empty() { horizon_us } else { next_edge(t) };
            continue;
        }
        // Count down the smallest backoff; a duty ON edge arriving first
        // freezes the countdown with the slots already spent deducted.
        let m = *bo.iter().min().expect("n > 0");
        let countdown = m as f64 * timing.slot_us;
        if !duty.is_empty() {
            let edge = next_edge(t);
            if t + countdown > edge {
                let done = ((edge - t) / timing.slot_us) as u32;
                for b in bo.iter_mut() {
                    *b -= done.min(*b);
                }
                t = edge;
                continue;
            }
        }
        for b in bo.iter_mut() {
            *b -= m;
        }
        t += countdown;

        let tx: Vec<usize> = (0..n).filter(|&i| bo[i] == 0).collect();
        let tf = tx.iter().map(|&i| frame_us[i]).fold(0.0, f64::max);
        let collided = tx.len() > 1;
        let hit = !duty.is_empty() && (any_on(t) || next_edge(t) < t + tf);
        if collided {
            out.collisions += 1;
        } else if hit {
            out.duty_hits += 1;
        }
        for &i in &tx {
            if !collided && !hit {
                out.wins[i] += 1;
                out.win_time_us[i] += frame_us[i];
                cw[i] = timing.cw_min;
            } else {
                cw[i] = (2 * cw[i] + 1).min(timing.cw_max);
            }
            bo[i] = rng.random_range(0..=cw[i]);
        }
        t += tf + timing.difs_us;
    }
    out.elapsed_us = t;
    out
}

/// Long-run fraction of channel time each LBT station wins, expressed in
/// clique-mean frame units (wins × mean frame / elapsed) and averaged over
/// `runs` draws of the duty-cycle phases.
///
/// The mean-frame convention makes mixed-frame-length cliques comparable to
/// an analytic model that contends in averaged frame units: win *counts* are
/// symmetric across stations even when frame lengths differ, so each win is
/// valued at the clique-mean frame time.
///
/// Phases are sampled with a stratified (Latin-hypercube) design on the
/// phases *relative to the first duty station*: the share depends on the
/// relative offsets, so stratifying them shrinks the phase-integration error
/// from O(1/√runs) to roughly O(1/runs).
pub fn phase_averaged_opportunity_share(
    frame_us: &[f64],
    duty_period_us: &[f64],
    duty_on_us: f64,
    horizon_us: f64,
    runs: usize,
    seed: u64,
) -> Vec<f64> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let timing = LbtTiming::default();
    let n = frame_us.len();
    let runs = runs.max(1);
    let mean_tf = if n == 0 {
        0.0
    } else {
        frame_us.iter().sum::<f64>() / n as f64
    };
    // stratum order per duty station: stations beyond the first get an
    // independently shuffled stratum sequence for their relative offset
    let mut strata: Vec<Vec<usize>> = Vec::new();
    for _ in 0..duty_period_us.len() {
        let mut order: Vec<usize> = (0..runs).collect();
        order.shuffle(&mut rng);
        strata.push(order);
    }
    let mut acc = vec![0.0f64; n];
    for k in 0..runs {
        let base = if duty_period_us.is_empty() {
            0.0
        } else {
            rng.random_range(0.0..duty_period_us[0])
        };
        let duty: Vec<DutySpec> = duty_period_us
            .iter()
            .enumerate()
            .map(|(j, &p)| {
                let offset = if j == 0 {
                    0.0
                } else {
                    (strata[j][k] as f64 + rng.random_range(0.0..1.0)) / runs as f64 * p
                };
                DutySpec {
                    on_us: duty_on_us,
                    period_us: p,
                    phase_us: (base + offset).rem_euclid(p),
                }
            })
            .collect();
        let run = run_clique(frame_us, &duty, horizon_us, &timing, &mut rng);
        for (a, &w) in acc.iter_mut().zip(&run.wins) {
            *a += w as f64 * mean_tf / run.elapsed_us;
        }
    }
    for a in acc.iter_mut() {
        *a /= runs as f64;
    }
    acc
}
