//! Parallel campaign driver. Each realization is a pure function of
//! (config, index), so handing indices to worker threads and reassembling
//! by index reproduces the serial engine byte for byte at any worker count.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use coexsim_core::engine::{self, CampaignResult, RealizationOutput, RunConfig};
use coexsim_core::Error;

use crate::CliError;

pub fn available_workers() -> usize {
    std::thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1)
}

/// Run a campaign on `workers` threads (0 = one per available core).
/// On failure, reports the lowest failing realization index — the same one
/// the serial engine would stop at.
pub fn run_campaign(cfg: &RunConfig, workers: usize) -> Result<CampaignResult, CliError> {
    cfg.validate()?;
    let workers = if workers == 0 { available_workers() } else { workers };
    let n = cfg.realizations;
    if workers <= 1 || n <= 1 {
        return engine::run_campaign(cfg).map_err(CliError::from);
    }

    let slots: Vec<Mutex<Option<Result<RealizationOutput, Error>>>> =
        (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..workers.min(n) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let out = engine::run_realization(cfg, i);
                *slots[i].lock().expect("result slot") = Some(out);
            });
        }
    });

    let mut realizations = Vec::with_capacity(n);
    for (index, slot) in slots.into_iter().enumerate() {
        match slot.into_inner().expect("result slot") {
            Some(Ok(r)) => realizations.push(r),
            Some(Err(e)) => {
                return Err(Error::Realization {
                    index,
                    source: Box::new(e),
                }
                .into())
            }
            None => unreachable!("every index below the count is claimed exactly once"),
        }
    }
    Ok(CampaignResult {
        config: cfg.clone(),
        realizations,
    })
}
