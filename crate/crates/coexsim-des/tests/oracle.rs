//! Analytic MAC model vs. the event-driven simulator on single-channel full
//! cliques: for every technology multiset up to size 3, the analytic
//! S·(1−r_deg)·airtime must match the simulator's long-run opportunity share
//! within 5% per technology. (The acceptance suite extends the same sweep to
//! size 5.)

use coexsim_des::check::{compare_clique, multisets};

#[test]
fn analytic_matches_simulator_up_to_three_stations() {
    let mut seed = 9000;
    for size in 1..=3 {
        for (nw, nl, nu) in multisets(size) {
            seed += 1;
            let (horizon, runs) = if nu == 0 { (240e6, 1) } else { (30e6, 48 * nu.max(1)) };
            for c in compare_clique(nw, nl, nu, horizon, runs, seed) {
                let rel = c.relative_error();
                println!(
                    "clique w{nw}/l{nl}/u{nu} {:?}: analytic {:.5} sim {:.5} rel {:+.2}%",
                    c.tech,
                    c.analytic,
                    c.simulated,
                    rel * 100.0
                );
                assert!(rel.abs() <= 0.05);
            }
        }
    }
}
