//! Single-point evaluations behind each analytic subcommand.

use crate::channel::misdetection_probability;
use crate::error::{Error, Result};
use crate::format::significant;
use crate::ia::{beam_report_delay, ia_delay, ia_total_latency, rach_occasions};
use crate::overhead::overhead_report;
use crate::time::Millis;
use crate::tracking::{
    csi_count, csi_offset, csi_window, max_neighbors, orthogonal_csi_capacity, rlf_delay, tracking_delay, CsiOption,
};

use super::params::Params;

/// Significant digits for values that are not exact decimals.
pub const SIG_DIGITS: usize = 10;
pub const NOT_AVAILABLE: &str = "NA";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    IaDelay,
    ReportDelay,
    TrackingDelay,
    Rlf,
    Neighbors,
    Overhead,
    Misdetection,
}

pub const TARGETS: [Target; 7] = [
    Target::IaDelay,
    Target::ReportDelay,
    Target::TrackingDelay,
    Target::Rlf,
    Target::Neighbors,
    Target::Overhead,
    Target::Misdetection,
];

fn ms(t: Millis) -> String {
    t.to_decimal_string(SIG_DIGITS)
}

fn real(x: f64) -> String {
    significant(x, SIG_DIGITS)
}

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::IaDelay => "ia-delay",
            Target::ReportDelay => "report-delay",
            Target::TrackingDelay => "tracking-delay",
            Target::Rlf => "rlf",
            Target::Neighbors => "neighbors",
            Target::Overhead => "overhead",
            Target::Misdetection => "misdetection",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        TARGETS
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::validation("target", format!("unknown target {s}")))
    }

    pub fn about(&self) -> &'static str {
        match self {
            Target::IaDelay => "initial-access sweep delay T_IA",
            Target::ReportDelay => "beam-reporting delay and total initial-access latency",
            Target::TrackingDelay => "average first-CSI-RS tracking delay",
            Target::Rlf => "radio-link-failure recovery delay",
            Target::Neighbors => "orthogonal CSI-RS capacity and neighbour limit",
            Target::Overhead => "SS, CSI-RS and beam-reporting overhead",
            Target::Misdetection => "Monte Carlo misdetection probability",
        }
    }

    /// Parameters echoed in front of the metrics.
    pub fn inputs(&self) -> &'static [&'static str] {
        match self {
            Target::IaDelay => &["scs", "nss", "tss", "gnb", "ue", "gnb-arch", "ue-arch", "nu"],
            Target::ReportDelay => &[
                "scs",
                "nss",
                "tss",
                "gnb",
                "ue",
                "gnb-arch",
                "ue-arch",
                "nu",
                "framework",
                "lte-latency",
                "expected-wait",
            ],
            Target::TrackingDelay => &[
                "scs",
                "nss",
                "tss",
                "gnb",
                "csi-option",
                "csi-period-slots",
                "users",
                "csi-rx",
            ],
            Target::Rlf => &[
                "scs",
                "nss",
                "tss",
                "gnb",
                "ue",
                "gnb-arch",
                "ue-arch",
                "nu",
                "framework",
                "lte-latency",
                "srs-period",
                "srs-miss",
            ],
            Target::Neighbors => &[
                "scs",
                "nss",
                "tss",
                "csi-option",
                "csi-period-slots",
                "csi-symbols",
                "rho",
            ],
            Target::Overhead => &[
                "scs",
                "nss",
                "tss",
                "diversity",
                "bandwidth",
                "csi-option",
                "csi-period-slots",
                "csi-symbols",
                "rho",
                "framework",
                "gnb",
                "gnb-arch",
                "rach-scs",
            ],
            Target::Misdetection => &[
                "gnb",
                "ue",
                "gnb-arch",
                "ue-arch",
                "scs",
                "diversity",
                "density",
                "radius",
                "ptx",
                "threshold",
                "nf",
                "trials",
                "seed",
            ],
        }
    }

    pub fn metrics(&self) -> &'static [&'static str] {
        match self {
            Target::IaDelay => &["gnb_directions", "ue_directions", "k_gnb", "k_ue", "s_d", "t_ia_ms"],
            Target::ReportDelay => &["rach_occasions", "t_br_ms", "t_ia_ms", "t_total_ms"],
            Target::TrackingDelay => &["window_ms", "t_csi_ms", "n_csi", "offset_ms", "k", "z_csi", "t_tr_ms"],
            Target::Rlf => &["s_d", "t_rlf_ms"],
            Target::Neighbors => &["window_ms", "n_csi", "capacity", "max_neighbors"],
            Target::Overhead => &[
                "n_rep",
                "r_ss_hz_ms",
                "omega_5ms",
                "omega_tss",
                "n_csi",
                "omega_csi",
                "omega_tot",
                "omega_br",
            ],
            Target::Misdetection => &["p_md", "half_width", "misses"],
        }
    }

    pub fn is_monte_carlo(&self) -> bool {
        *self == Target::Misdetection
    }

    /// Computes the metric cells for one parameter point. `threads` sizes the
    /// Monte Carlo worker pool (0 = default).
    pub fn evaluate(&self, p: &Params, threads: usize) -> Result<Vec<String>> {
        match self {
            Target::IaDelay => {
                let burst = p.burst()?;
                let plan = p.sweep_plan()?;
                Ok(vec![
                    plan.gnb.codebook.total_directions().to_string(),
                    plan.ue.codebook.total_directions().to_string(),
                    plan.gnb.kbf.to_string(),
                    plan.ue.kbf.to_string(),
                    plan.s_d.to_string(),
                    ms(ia_delay(&plan, &burst)),
                ])
            }
            Target::ReportDelay => {
                let burst = p.burst()?;
                let plan = p.sweep_plan()?;
                let fw = p.framework()?;
                let total = ia_total_latency(&fw, &plan, &burst, p.expected_wait()?)?;
                Ok(vec![
                    rach_occasions(&plan.gnb).to_string(),
                    ms(beam_report_delay(&fw, &plan.gnb, &burst)?),
                    ms(total.sweep),
                    ms(total.total()),
                ])
            }
            Target::TrackingDelay => {
                let burst = p.burst()?;
                let csi = p.csi()?;
                let num = burst.numerology();
                let gnb = p.gnb()?.capability(&p.beamwidth_table()?)?;
                let scenario = p.scenario(gnb.codebook.total_directions())?;
                let window = csi_window(&burst);
                let offset = match csi.option {
                    CsiOption::Opt1 => NOT_AVAILABLE.to_string(),
                    CsiOption::Opt2 => ms(csi_offset(window, &csi, num)?),
                };
                Ok(vec![
                    ms(window),
                    ms(csi.period(num)),
                    csi_count(window, &csi, num).to_string(),
                    offset,
                    scenario.gnb_beams.to_string(),
                    scenario.z_csi().to_string(),
                    ms(tracking_delay(&scenario, &csi, &burst)?),
                ])
            }
            Target::Rlf => {
                let burst = p.burst()?;
                let plan = p.sweep_plan()?;
                Ok(vec![
                    plan.s_d.to_string(),
                    ms(rlf_delay(&p.framework()?, &plan, &burst)?),
                ])
            }
            Target::Neighbors => {
                let burst = p.burst()?;
                let csi = p.csi()?;
                let window = csi_window(&burst);
                let n = csi_count(window, &csi, burst.numerology());
                let cap = orthogonal_csi_capacity(&burst, &csi);
                let neighbors = match max_neighbors(cap, n) {
                    Ok(v) => v.to_string(),
                    Err(_) => NOT_AVAILABLE.to_string(),
                };
                Ok(vec![ms(window), n.to_string(), cap.to_string(), neighbors])
            }
            Target::Overhead => {
                let burst = p.burst()?;
                let gnb = p.gnb()?.capability(&p.beamwidth_table()?)?;
                let r = overhead_report(&p.framework()?, &gnb, &burst, &p.csi()?, p.rach_scs()?)?;
                Ok(vec![
                    burst.n_rep().to_string(),
                    real(r.r_ss),
                    real(r.omega_5ms),
                    real(r.omega_tss),
                    r.n_csi.to_string(),
                    r.omega_csi.map_or_else(|| NOT_AVAILABLE.to_string(), real),
                    real(r.omega_tot),
                    real(r.omega_br),
                ])
            }
            Target::Misdetection => {
                let est = misdetection_probability(
                    &p.deployment()?,
                    &p.channel()?,
                    &p.gnb()?,
                    &p.ue()?,
                    &p.beamwidth_table()?,
                    &p.burst()?,
                    &p.monte_carlo(threads)?,
                )?;
                Ok(vec![real(est.p_md), real(est.half_width), est.misses.to_string()])
            }
        }
    }
}
