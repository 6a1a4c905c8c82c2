//! Consequence metrics and likelihood–consequence (CCDF) series: per-AP
//! throughput degradation against a paired baseline, Jain-index unfairness
//! across the incumbent population, and the empirical CCDFs that form the
//! risk charts.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::engine::{CampaignResult, RealizationOutput};
use crate::{Error, Population};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Degradation,
    Unfairness,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Degradation => "degradation",
            Metric::Unfairness => "unfairness",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineKind {
    Standalone,
    WifiEntrant,
}

impl BaselineKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BaselineKind::Standalone => "standalone",
            BaselineKind::WifiEntrant => "wifi_entrant",
        }
    }
}

/// One chart series: raw samples plus their empirical CCDF and the count of
/// realizations that had to be excluded (zero baseline / all-zero inputs).
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RiskSeries {
    pub metric: Metric,
    pub baseline: BaselineKind,
    pub label: String,
    pub samples: Vec<f64>,
    pub ccdf: Vec<(f64, f64)>,
    pub excluded: usize,
}

/// Fractional throughput loss against the baseline; negative values mean
/// the AP improved. Undefined (None) when the baseline carried no traffic.
pub fn degradation(r_baseline_mbps: f64, r_mbps: f64) -> Option<f64> {
    if r_baseline_mbps == 0.0 {
        None
    } else {
        Some((r_baseline_mbps - r_mbps) / r_baseline_mbps)
    }
}

/// Jain's fairness index (ΣR)²/(n·ΣR²) in [1/n, 1]; None when every value
/// is zero (the ratio degenerates) or the list is empty.
pub fn jain(throughputs: &[f64]) -> Option<f64> {
    if throughputs.is_empty() {
        return None;
    }
    let sum: f64 = throughputs.iter().sum();
    let sq: f64 = throughputs.iter().map(|r| r * r).sum();
    if sq == 0.0 {
        None
    } else {
        Some(sum * sum / (throughputs.len() as f64 * sq))
    }
}

pub fn unfairness(jain_index: f64) -> f64 {
    1.0 - jain_index
}

/// Half-open prepend offset so a plotted CCDF starts at probability 1.
const CCDF_EPSILON: f64 = 1.0e-9;

/// Empirical CCDF with the strict-greater convention: at each distinct
/// sorted sample value v, P(X > v). A point (min − ε, 1.0) is prepended so
/// the step function is complete for plotting.
pub fn empirical_ccdf(samples: &[f64]) -> Result<Vec<(f64, f64)>, Error> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut sorted: Vec<f64> = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("samples must not be NaN"));
    let n = sorted.len() as f64;
    let mut out = Vec::new();
    out.push((sorted[0] - CCDF_EPSILON, 1.0));
    let mut i = 0;
    while i < sorted.len() {
        let v = sorted[i];
        let mut j = i;
        while j < sorted.len() && sorted[j] == v {
            j += 1;
        }
        out.push((v, (sorted.len() - j) as f64 / n));
        i = j;
    }
    Ok(out)
}

/// Linear-interpolation percentile (the common statistics-package default):
/// rank q/100·(n−1) between order statistics. `q` in [0, 100].
pub fn percentile(sorted: &[f64], q: f64) -> Result<f64, Error> {
    if sorted.is_empty() {
        return Err(Error::EmptySamples);
    }
    debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
    let rank = q / 100.0 * (sorted.len() - 1) as f64;
    let lo = rank as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = rank - lo as f64;
    Ok(sorted[lo] + frac * (sorted[hi] - sorted[lo]))
}

pub const SUMMARY_PERCENTILES: [f64; 5] = [5.0, 25.0, 50.0, 75.0, 95.0];

/// Convenience: sort a sample list and take the standard summary points.
pub fn summary_percentiles(samples: &[f64]) -> Result<[f64; 5], Error> {
    let mut sorted: Vec<f64> = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("samples must not be NaN"));
    let mut out = [0.0; 5];
    for (slot, q) in out.iter_mut().zip(SUMMARY_PERCENTILES) {
        *slot = percentile(&sorted, q)?;
    }
    Ok(out)
}

fn baseline_records<'a>(r: &'a RealizationOutput, baseline: BaselineKind) -> Option<&'a [crate::phy::ApRecord]> {
    match baseline {
        BaselineKind::Standalone => r.standalone.as_deref(),
        BaselineKind::WifiEntrant => r.wifi_entrant.as_deref(),
    }
}

/// Pool a campaign into one chart series. Degradation is computed per
/// population-A AP and pooled across realizations; unfairness is computed
/// once per realization over population A's coexistence throughputs.
pub fn aggregate(campaign: &CampaignResult, metric: Metric, baseline: BaselineKind) -> Result<RiskSeries, Error> {
    let mut samples = Vec::new();
    let mut excluded = 0usize;
    for r in &campaign.realizations {
        match metric {
            Metric::Degradation => {
                let base = baseline_records(r, baseline).ok_or_else(|| {
                    Error::Config(format!("baseline '{}' was not computed", baseline.as_str()))
                })?;
                for rec in base {
                    if rec.population != Population::A {
                        continue;
                    }
                    let coex = &r.coex[rec.ap];
                    debug_assert_eq!(coex.ap, rec.ap);
                    match degradation(rec.throughput_mbps, coex.throughput_mbps) {
                        Some(d) => samples.push(d),
                        None => excluded += 1,
                    }
                }
            }
            Metric::Unfairness => {
                let a: Vec<f64> = r
                    .coex
                    .iter()
                    .filter(|rec| rec.population == Population::A)
                    .map(|rec| rec.throughput_mbps)
                    .collect();
                match jain(&a) {
                    Some(j) => samples.push(unfairness(j)),
                    None => excluded += 1,
                }
            }
        }
    }
    let ccdf = empirical_ccdf(&samples)?;
    Ok(RiskSeries {
        metric,
        baseline,
        label: campaign.config.label(),
        samples,
        ccdf,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{self, BaselineSet, RunConfig};
    use crate::seed;
    use crate::spectrum::{PlanMode, Scheme};
    use rand::Rng;

    #[test]
    fn degradation_examples() {
        assert_eq!(degradation(10.0, 2.5), Some(0.75));
        assert_eq!(degradation(7.3, 7.3), Some(0.0));
        assert_eq!(degradation(5.0, 6.0), Some(-0.2));
        assert_eq!(degradation(0.0, 1.0), None);
    }

    #[test]
    fn jain_examples() {
        assert!((jain(&[1.0, 1.0, 1.0, 1.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((jain(&[1.0, 0.0, 0.0, 0.0]).unwrap() - 0.25).abs() < 1e-12);
        assert!((jain(&[2.0, 2.0, 4.0]).unwrap() - 64.0 / 72.0).abs() < 1e-12);
        assert_eq!(jain(&[0.0, 0.0]), None);
        assert_eq!(jain(&[]), None);
        assert_eq!(jain(&[5.0]), Some(1.0));
    }

    #[test]
    fn jain_bounds_and_scale_invariance() {
        let mut rng = seed::stream(7, 1);
        for _ in 0..500 {
            let n = rng.random_range(1..12usize);
            let v: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..50.0f64)).collect();
            if let Some(j) = jain(&v) {
                assert!(j <= 1.0 + 1e-12);
                assert!(j >= 1.0 / n as f64 - 1e-12);
                let scaled: Vec<f64> = v.iter().map(|x| x * 3.7).collect();
                assert!((jain(&scaled).unwrap() - j).abs() < 1e-12);
                let u = unfairness(j);
                assert!(u >= -1e-12 && u <= 1.0 - 1.0 / n as f64 + 1e-12);
            }
        }
    }

    #[test]
    fn unfairness_complement() {
        assert_eq!(unfairness(1.0), 0.0);
        assert!((unfairness(0.25) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn ccdf_direct_count() {
        let c = empirical_ccdf(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c[0], (1.0 - 1.0e-9, 1.0));
        assert_eq!(c[1], (1.0, 2.0 / 3.0));
        assert_eq!(c[2], (2.0, 1.0 / 3.0));
        assert_eq!(c[3], (3.0, 0.0));
    }

    #[test]
    fn ccdf_point_mass_and_duplicates() {
        let c = empirical_ccdf(&[5.0, 5.0, 5.0]).unwrap();
        assert_eq!(c, alloc::vec![(5.0 - 1.0e-9, 1.0), (5.0, 0.0)]);
        let c = empirical_ccdf(&[1.0, 1.0, 2.0]).unwrap();
        assert_eq!(c[1], (1.0, 1.0 / 3.0));
    }

    #[test]
    fn ccdf_monotone_on_random_input() {
        let mut rng = seed::stream(9, 2);
        for _ in 0..50 {
            let n = rng.random_range(1..200usize);
            let v: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0f64)).collect();
            let c = empirical_ccdf(&v).unwrap();
            for w in c.windows(2) {
                assert!(w[0].0 < w[1].0);
                assert!(w[0].1 >= w[1].1);
            }
            assert_eq!(c[0].1, 1.0);
            assert_eq!(c.last().unwrap().1, 0.0);
        }
        assert!(matches!(empirical_ccdf(&[]), Err(Error::EmptySamples)));
    }

    #[test]
    fn percentile_interpolation() {
        let sorted = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(percentile(&sorted, 0.0).unwrap(), 1.0);
        assert_eq!(percentile(&sorted, 100.0).unwrap(), 4.0);
        assert_eq!(percentile(&sorted, 50.0).unwrap(), 2.5);
        assert_eq!(percentile(&sorted, 25.0).unwrap(), 1.75);
        assert_eq!(percentile(&[42.0], 95.0).unwrap(), 42.0);
        let s = summary_percentiles(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!(s[2], 2.5);
    }

    fn tiny_campaign(tech_b: crate::Tech, n_b: usize) -> CampaignResult {
        let cfg = RunConfig {
            n_pop_a: 4,
            n_pop_b: n_b,
            tech_b,
            realizations: 6,
            plan_mode: PlanMode::Single1,
            scheme_a: Scheme::Single,
            scheme_b: Scheme::Single,
            baselines: BaselineSet {
                standalone: true,
                wifi_entrant: true,
            },
            ..RunConfig::default()
        };
        engine::run_campaign(&cfg).unwrap()
    }

    #[test]
    fn aggregate_zero_entrants_is_all_zero_degradation() {
        let campaign = tiny_campaign(crate::Tech::Wifi, 0);
        let s = aggregate(&campaign, Metric::Degradation, BaselineKind::Standalone).unwrap();
        assert_eq!(s.samples.len(), 4 * 6);
        assert!(s.samples.iter().all(|&d| d == 0.0));
        assert_eq!(s.excluded, 0);
        // step at zero: (0-eps, 1.0) then (0, 0.0)
        assert_eq!(s.ccdf.len(), 2);
        assert_eq!(s.ccdf[1], (0.0, 0.0));
    }

    #[test]
    fn aggregate_cardinalities() {
        let campaign = tiny_campaign(crate::Tech::Laa, 4);
        let d = aggregate(&campaign, Metric::Degradation, BaselineKind::Standalone).unwrap();
        assert!(d.samples.len() + d.excluded == 4 * 6);
        let u = aggregate(&campaign, Metric::Unfairness, BaselineKind::Standalone).unwrap();
        assert!(u.samples.len() + u.excluded == 6);
        for &s in &u.samples {
            assert!((0.0..=0.75 + 1e-12).contains(&s), "U for n=4 capped at 3/4, got {s}");
        }
        assert_eq!(d.label, campaign.config.label());
    }

    #[test]
    fn aggregate_missing_baseline_is_rejected() {
        let cfg = RunConfig {
            n_pop_a: 2,
            n_pop_b: 2,
            realizations: 2,
            plan_mode: PlanMode::Single1,
            scheme_a: Scheme::Single,
            scheme_b: Scheme::Single,
            baselines: BaselineSet {
                standalone: true,
                wifi_entrant: false,
            },
            ..RunConfig::default()
        };
        let campaign = engine::run_campaign(&cfg).unwrap();
        assert!(aggregate(&campaign, Metric::Degradation, BaselineKind::WifiEntrant).is_err());
        aggregate(&campaign, Metric::Degradation, BaselineKind::Standalone).unwrap();
    }

    #[test]
    fn degradation_bounded_above_by_one() {
        let campaign = tiny_campaign(crate::Tech::Lteu, 4);
        let d = aggregate(&campaign, Metric::Degradation, BaselineKind::Standalone).unwrap();
        for &s in &d.samples {
            assert!(s <= 1.0 + 1e-12);
        }
    }
}
