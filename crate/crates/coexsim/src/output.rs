//! Output formats: the per-AP CSV, the CCDF chart CSVs, and the summary
//! JSON. All files are UTF-8 with LF line endings and a `#`-prefixed
//! preamble carrying the effective config.
//!
//! Floats are written with Rust's shortest round-trip formatting and read
//! back with `str::parse`, which recovers the exact bits — that is what
//! lets `chart` re-derive CCDF files byte-identically from the per-AP CSV
//! without re-running the model.

use std::fmt::Write as _;
use std::path::Path;

use coexsim_core::engine::{CampaignResult, RealizationOutput, RunConfig};
use coexsim_core::phy::ApRecord;
use coexsim_core::risk::{self, BaselineKind, Metric, RiskSeries};
use coexsim_core::{Population, Tech};

use crate::{io_err, CliError};

pub const APS_HEADER: &str =
    "realization,variant,ap,population,tech,channel,airtime,s,r_deg,sinr_db,rate_mbps,throughput_mbps";
pub const CCDF_HEADER: &str = "series_label,value,ccdf_probability";

/// The `#`-prefixed block at the top of every output file. `chart` copies
/// it verbatim from the per-AP CSV, so its exact content is decided once,
/// at run time.
pub fn preamble(label: &str, echo_toml: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# coexsim {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "# label = {label}");
    out.push_str("# ccdf convention: probability that a value strictly exceeds x\n");
    out.push_str("# effective config:\n");
    for line in echo_toml.lines() {
        if line.is_empty() {
            out.push_str("#\n");
        } else {
            let _ = writeln!(out, "# {line}");
        }
    }
    out
}

fn label_from_preamble(preamble: &str) -> Option<String> {
    preamble
        .lines()
        .find_map(|l| l.strip_prefix("# label = "))
        .map(str::to_owned)
}

fn ap_row(out: &mut String, realization: usize, variant: &str, rec: &ApRecord) {
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        realization,
        variant,
        rec.ap,
        rec.population.as_str(),
        rec.tech.as_str(),
        rec.channel_number,
        rec.airtime,
        rec.s,
        rec.r_deg,
        rec.sinr_db,
        rec.rate_mbps,
        rec.throughput_mbps,
    );
}

/// Per-AP results for every realization and variant, one row per AP.
pub fn render_aps_csv(preamble: &str, campaign: &CampaignResult) -> String {
    let mut out = String::from(preamble);
    out.push_str(APS_HEADER);
    out.push('\n');
    for r in &campaign.realizations {
        for rec in &r.coex {
            ap_row(&mut out, r.index, "coex", rec);
        }
        if let Some(recs) = &r.standalone {
            for rec in recs {
                ap_row(&mut out, r.index, "standalone", rec);
            }
        }
        if let Some(recs) = &r.wifi_entrant {
            for rec in recs {
                ap_row(&mut out, r.index, "wifi_entrant", rec);
            }
        }
    }
    out
}

fn parse_tech_field(s: &str, line: usize) -> Result<Tech, CliError> {
    match s {
        "wifi" => Ok(Tech::Wifi),
        "laa" => Ok(Tech::Laa),
        "lteu" => Ok(Tech::Lteu),
        other => Err(CliError::Runtime(format!(
            "per-AP CSV line {line}: unknown tech `{other}`"
        ))),
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str, line: usize) -> Result<T, CliError> {
    s.parse().map_err(|_| {
        CliError::Runtime(format!("per-AP CSV line {line}: bad {what} `{s}`"))
    })
}

/// Read a per-AP CSV back into a campaign (plus its verbatim preamble).
/// Seeds are not recorded in the CSV; they are irrelevant to chart
/// derivation and left at zero.
pub fn parse_aps_csv(text: &str) -> Result<(String, CampaignResult), CliError> {
    let mut preamble = String::new();
    let mut lines = text.lines().enumerate().peekable();
    while let Some((_, l)) = lines.peek() {
        if l.starts_with('#') {
            preamble.push_str(l);
            preamble.push('\n');
            lines.next();
        } else {
            break;
        }
    }
    match lines.next() {
        Some((_, h)) if h == APS_HEADER => {}
        other => {
            return Err(CliError::Runtime(format!(
                "per-AP CSV: expected header `{APS_HEADER}`, found {:?}",
                other.map(|(_, h)| h)
            )))
        }
    }

    let mut realizations: Vec<RealizationOutput> = Vec::new();
    for (idx, line) in lines {
        let n = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            return Err(CliError::Runtime(format!(
                "per-AP CSV line {n}: expected 12 fields, got {}",
                fields.len()
            )));
        }
        let realization: usize = parse_num(fields[0], "realization", n)?;
        let variant = fields[1];
        let rec = ApRecord {
            ap: parse_num(fields[2], "ap", n)?,
            population: match fields[3] {
                "a" => Population::A,
                "b" => Population::B,
                other => {
                    return Err(CliError::Runtime(format!(
                        "per-AP CSV line {n}: unknown population `{other}`"
                    )))
                }
            },
            tech: parse_tech_field(fields[4], n)?,
            channel_number: parse_num(fields[5], "channel", n)?,
            airtime: parse_num(fields[6], "airtime", n)?,
            s: parse_num(fields[7], "s", n)?,
            r_deg: parse_num(fields[8], "r_deg", n)?,
            sinr_db: parse_num(fields[9], "sinr_db", n)?,
            rate_mbps: parse_num(fields[10], "rate_mbps", n)?,
            throughput_mbps: parse_num(fields[11], "throughput_mbps", n)?,
        };
        if realizations.last().map(|r| r.index) != Some(realization) {
            // rows arrive grouped by realization in ascending order
            if realizations.iter().any(|r| r.index == realization) {
                return Err(CliError::Runtime(format!(
                    "per-AP CSV line {n}: realization {realization} appears out of order"
                )));
            }
            realizations.push(RealizationOutput {
                index: realization,
                seed: 0,
                coex: Vec::new(),
                standalone: None,
                wifi_entrant: None,
            });
        }
        let slot = realizations.last_mut().expect("pushed above");
        match variant {
            "coex" => slot.coex.push(rec),
            "standalone" => slot.standalone.get_or_insert_with(Vec::new).push(rec),
            "wifi_entrant" => slot.wifi_entrant.get_or_insert_with(Vec::new).push(rec),
            other => {
                return Err(CliError::Runtime(format!(
                    "per-AP CSV line {n}: unknown variant `{other}`"
                )))
            }
        }
    }
    if realizations.is_empty() {
        return Err(CliError::Runtime(String::from("per-AP CSV has no data rows")));
    }
    let campaign = CampaignResult {
        config: RunConfig::default(),
        realizations,
    };
    Ok((preamble, campaign))
}

/// All chart series derivable from one campaign: a degradation series per
/// simulated baseline, and the coexistence unfairness series.
pub struct SeriesSet {
    pub degradation: Vec<RiskSeries>,
    pub unfairness: RiskSeries,
}

/// `label` overrides the campaign config's label; `chart` passes the one
/// recorded in the preamble since its reconstructed config is a stand-in.
pub fn derive_series(campaign: &CampaignResult, label: Option<&str>) -> Result<SeriesSet, CliError> {
    let first = campaign
        .realizations
        .first()
        .ok_or_else(|| CliError::Runtime(String::from("campaign has no realizations")))?;
    let mut degradation = Vec::new();
    if first.standalone.is_some() {
        degradation.push(risk::aggregate(campaign, Metric::Degradation, BaselineKind::Standalone)?);
    }
    if first.wifi_entrant.is_some() {
        degradation.push(risk::aggregate(
            campaign,
            Metric::Degradation,
            BaselineKind::WifiEntrant,
        )?);
    }
    // the baseline argument only labels unfairness; the samples come from
    // the coexistence world alone
    let unfairness = risk::aggregate(campaign, Metric::Unfairness, BaselineKind::Standalone)?;
    let mut set = SeriesSet {
        degradation,
        unfairness,
    };
    if let Some(l) = label {
        for s in set.degradation.iter_mut() {
            s.label = String::from(l);
        }
        set.unfairness.label = String::from(l);
    }
    Ok(set)
}

/// File name a series is written under, unique within one run directory.
pub fn ccdf_filename(series: &RiskSeries) -> String {
    match series.metric {
        Metric::Degradation => format!(
            "ccdf_{}_{}.csv",
            series.metric.as_str(),
            series.baseline.as_str()
        ),
        Metric::Unfairness => format!("ccdf_{}.csv", series.metric.as_str()),
    }
}

/// Value of the `series_label` column: run label, metric, and (for
/// degradation) the baseline the samples were computed against.
pub fn series_label(series: &RiskSeries) -> String {
    match series.metric {
        Metric::Degradation => format!(
            "{}/{}/{}",
            series.label,
            series.metric.as_str(),
            series.baseline.as_str()
        ),
        Metric::Unfairness => format!("{}/{}", series.label, series.metric.as_str()),
    }
}

pub fn render_ccdf_csv(preamble: &str, series: &RiskSeries) -> String {
    let mut out = String::from(preamble);
    out.push_str(CCDF_HEADER);
    out.push('\n');
    let label = series_label(series);
    for &(value, probability) in &series.ccdf {
        let _ = writeln!(out, "{label},{value},{probability}");
    }
    out
}

#[derive(serde::Serialize)]
pub struct Percentiles {
    pub p5: f64,
    pub p25: f64,
    pub p50: f64,
    pub p75: f64,
    pub p95: f64,
}

impl Percentiles {
    fn from_samples(samples: &[f64]) -> Result<Percentiles, CliError> {
        let [p5, p25, p50, p75, p95] =
            risk::summary_percentiles(samples).map_err(CliError::from)?;
        Ok(Percentiles { p5, p25, p50, p75, p95 })
    }
}

#[derive(serde::Serialize)]
pub struct SeriesSummary {
    pub metric: &'static str,
    /// present for degradation; unfairness has no baseline
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<&'static str>,
    pub series_label: String,
    pub samples: usize,
    /// samples dropped for an undefined metric (zero-throughput baseline
    /// or an empty population)
    pub excluded: usize,
    pub percentiles: Percentiles,
}

impl SeriesSummary {
    fn new(series: &RiskSeries) -> Result<SeriesSummary, CliError> {
        Ok(SeriesSummary {
            metric: series.metric.as_str(),
            baseline: match series.metric {
                Metric::Degradation => Some(series.baseline.as_str()),
                Metric::Unfairness => None,
            },
            series_label: series_label(series),
            samples: series.samples.len(),
            excluded: series.excluded,
            percentiles: Percentiles::from_samples(&series.samples)?,
        })
    }
}

#[derive(serde::Serialize)]
pub struct Summary {
    pub generator: String,
    pub label: String,
    pub master_seed: u64,
    pub realizations: usize,
    pub series: Vec<SeriesSummary>,
    /// the effective config, verbatim TOML
    pub config_toml: String,
}

pub fn render_summary_json(
    label: &str,
    master_seed: u64,
    realizations: usize,
    set: &SeriesSet,
    echo_toml: &str,
) -> Result<String, CliError> {
    let mut series = Vec::new();
    for s in &set.degradation {
        series.push(SeriesSummary::new(s)?);
    }
    series.push(SeriesSummary::new(&set.unfairness)?);
    let doc = Summary {
        generator: format!("coexsim {}", env!("CARGO_PKG_VERSION")),
        label: String::from(label),
        master_seed,
        realizations,
        series,
        config_toml: String::from(echo_toml),
    };
    let mut text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::Runtime(format!("summary serialization: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|e| io_err(path, e))
}

/// Write every CCDF CSV for a series set into `dir`, returning the file
/// names written.
pub fn write_ccdf_files(dir: &Path, preamble: &str, set: &SeriesSet) -> Result<Vec<String>, CliError> {
    let mut written = Vec::new();
    for s in set.degradation.iter().chain(std::iter::once(&set.unfairness)) {
        let name = ccdf_filename(s);
        write_file(&dir.join(&name), &render_ccdf_csv(preamble, s))?;
        written.push(name);
    }
    Ok(written)
}

/// Re-derive the CCDF files for a run directory from its per-AP CSV alone.
/// Reads from `run_dir`, writes into `out_dir`, and never touches the run
/// directory itself.
pub fn rederive_charts(run_dir: &Path, out_dir: &Path) -> Result<Vec<String>, CliError> {
    let aps_path = run_dir.join("aps.csv");
    let text = std::fs::read_to_string(&aps_path).map_err(|e| io_err(&aps_path, e))?;
    let (preamble, campaign) = parse_aps_csv(&text)?;
    let label = label_from_preamble(&preamble);
    let set = derive_series(&campaign, label.as_deref())?;
    std::fs::create_dir_all(out_dir).map_err(|e| io_err(out_dir, e))?;
    write_ccdf_files(out_dir, &preamble, &set)
}
