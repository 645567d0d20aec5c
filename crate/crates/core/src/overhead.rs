//! Time–frequency overhead of SS bursts, CSI-RS and beam reporting.

use crate::beams::SweepCapability;
use crate::error::{Error, Result};
use crate::ia::{rach_occasions, FrameworkConfig};
use crate::numerology::{numerology_from_spacing, SsBurstConfig, SS_BLOCK_SUBCARRIERS, SS_BLOCK_SYMBOLS};
use crate::tracking::{csi_window, CsiRsConfig};

/// Time span over which the SS burst itself is confined, in ms.
pub const SS_BURST_SPAN_MS: f64 = 5.0;
/// OFDM symbols occupied by one RACH occasion.
pub const RACH_OCCASION_SYMBOLS: u32 = 4;

/// Bandwidth reserved for RACH at a given RACH subcarrier spacing.
pub fn rach_bandwidth_hz(rach_spacing_khz: u32) -> Result<f64> {
    match rach_spacing_khz {
        60 => Ok(10e6),
        120 => Ok(20e6),
        other => Err(Error::validation(
            "rach-scs",
            format!("RACH subcarrier spacing must be 60 or 120 kHz (got {other})"),
        )),
    }
}

/// SS-burst resources and the overhead they impose.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SsOverhead {
    /// `R_SS` in Hz·ms.
    pub r_ss: f64,
    pub omega_5ms: f64,
    pub omega_tss: f64,
}

/// `N_SS · 4·T_symb · 240·N_rep·Δf`, in Hz·ms.
pub fn ss_resource_area(n_ss: u32, symbol_ms: f64, n_rep: u32, spacing_hz: f64) -> f64 {
    f64::from(n_ss)
        * f64::from(SS_BLOCK_SYMBOLS)
        * symbol_ms
        * f64::from(SS_BLOCK_SUBCARRIERS)
        * f64::from(n_rep)
        * spacing_hz
}

pub fn ss_overhead(burst: &SsBurstConfig) -> SsOverhead {
    let num = burst.numerology();
    let r_ss = ss_resource_area(burst.n_ss(), num.symbol().to_f64(), burst.n_rep(), num.spacing_hz());
    let b = burst.bandwidth_hz();
    SsOverhead {
        r_ss,
        omega_5ms: r_ss / (SS_BURST_SPAN_MS * b),
        omega_tss: r_ss / (f64::from(burst.period_ms()) * b),
    }
}

/// CSI-RS resources per burst period relative to the carrier, in ms
/// (`N_CSI · N_symb · T_symb · ρ`).
fn csi_time_share(burst: &SsBurstConfig, csi: &CsiRsConfig, n_csi: u64) -> f64 {
    n_csi as f64 * f64::from(csi.n_symb) * burst.numerology().symbol().to_f64() * csi.rho
}

/// CSI-RS overhead over the inter-burst window.
pub fn csi_overhead(burst: &SsBurstConfig, csi: &CsiRsConfig, n_csi: u64) -> Result<f64> {
    let window = csi_window(burst);
    if !window.is_positive() {
        return Err(Error::Undefined("CSI-RS overhead undefined for an empty window".into()));
    }
    Ok(csi_time_share(burst, csi, n_csi) / window.to_f64())
}

/// `(csi_area + r_ss) / (T_SS · B)` with `csi_area` in Hz·ms.
pub fn combined_overhead(csi_area: f64, r_ss: f64, period_ms: f64, bandwidth_hz: f64) -> f64 {
    (csi_area + r_ss) / (period_ms * bandwidth_hz)
}

/// Total SS + CSI-RS overhead over a burst period.
pub fn total_overhead(burst: &SsBurstConfig, csi: &CsiRsConfig, n_csi: u64) -> f64 {
    let b = burst.bandwidth_hz();
    combined_overhead(
        csi_time_share(burst, csi, n_csi) * b,
        ss_overhead(burst).r_ss,
        f64::from(burst.period_ms()),
        b,
    )
}

/// Overhead of the RACH occasions used for beam reporting.
///
/// Standalone frameworks open one occasion per pair of gNB directions (per
/// simultaneous beam); non-standalone ones need a single occasion.
pub fn report_overhead(
    framework: &FrameworkConfig,
    gnb: &SweepCapability,
    burst: &SsBurstConfig,
    rach_spacing_khz: u32,
) -> Result<f64> {
    let rach_bw = rach_bandwidth_hz(rach_spacing_khz)?;
    let rach_num = numerology_from_spacing(rach_spacing_khz)?;
    let occasions = if framework.kind.is_standalone() {
        rach_occasions(gnb)
    } else {
        1
    };
    let area = occasions as f64 * f64::from(RACH_OCCASION_SYMBOLS) * rach_num.symbol().to_f64() * rach_bw;
    Ok(area / (f64::from(burst.period_ms()) * burst.bandwidth_hz()))
}

/// All overhead ratios for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverheadReport {
    pub r_ss: f64,
    pub omega_5ms: f64,
    pub omega_tss: f64,
    pub n_csi: u64,
    /// `None` when the burst leaves no window for CSI-RS.
    pub omega_csi: Option<f64>,
    pub omega_tot: f64,
    pub omega_br: f64,
}

pub fn overhead_report(
    framework: &FrameworkConfig,
    gnb: &SweepCapability,
    burst: &SsBurstConfig,
    csi: &CsiRsConfig,
    rach_spacing_khz: u32,
) -> Result<OverheadReport> {
    let ss = ss_overhead(burst);
    let n_csi = crate::tracking::csi_count(csi_window(burst), csi, burst.numerology());
    let omega_csi = csi_overhead(burst, csi, n_csi).ok();
    Ok(OverheadReport {
        r_ss: ss.r_ss,
        omega_5ms: ss.omega_5ms,
        omega_tss: ss.omega_tss,
        n_csi,
        omega_csi,
        omega_tot: total_overhead(burst, csi, n_csi),
        omega_br: report_overhead(framework, gnb, burst, rach_spacing_khz)?,
    })
}
