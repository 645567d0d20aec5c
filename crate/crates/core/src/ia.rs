//! Initial-access reactiveness: exhaustive sweep length, sweep delay, beam
//! reporting delay and the end-to-end initial-access latency.

use crate::beams::SweepCapability;
use crate::error::{Error, Result};
use crate::numerology::{burst_tail_time, SsBurstConfig};
use crate::time::Millis;

/// LTE latencies accepted for the NSA control link.
pub const LTE_LATENCIES_MS: [(i128, i128); 3] = [(10, 1), (4, 1), (4, 5)];

/// RACH sweep directions served by one RACH occasion.
pub const DIRECTIONS_PER_RACH_OCCASION: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameworkKind {
    /// Standalone, downlink SS-block based.
    SaDl,
    /// Non-standalone, downlink SS-block based, reporting over LTE.
    NsaDl,
    /// Non-standalone, uplink SRS based.
    NsaUl,
}

impl FrameworkKind {
    pub fn name(&self) -> &'static str {
        match self {
            FrameworkKind::SaDl => "sa-dl",
            FrameworkKind::NsaDl => "nsa-dl",
            FrameworkKind::NsaUl => "nsa-ul",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sa" | "sa-dl" => Ok(FrameworkKind::SaDl),
            "nsa-dl" => Ok(FrameworkKind::NsaDl),
            "nsa-ul" => Ok(FrameworkKind::NsaUl),
            other => Err(Error::validation(
                "framework",
                format!("framework must be one of sa-dl, nsa-dl, nsa-ul (got {other})"),
            )),
        }
    }

    pub fn is_standalone(&self) -> bool {
        *self == FrameworkKind::SaDl
    }
}

/// Uplink sounding used by the gNB to detect a radio link failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SrsConfig {
    pub period: Millis,
    /// Consecutive missed SRS that declare the failure.
    pub miss_count: u32,
}

impl SrsConfig {
    pub fn new(period: Millis, miss_count: u32) -> Result<Self> {
        if !period.is_positive() {
            return Err(Error::validation("srs-period", "T_SRS must be positive"));
        }
        if miss_count == 0 {
            return Err(Error::validation("srs-miss", "N_SRS must be at least 1"));
        }
        Ok(SrsConfig { period, miss_count })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameworkConfig {
    pub kind: FrameworkKind,
    pub lte_latency: Option<Millis>,
    pub srs: Option<SrsConfig>,
}

pub(crate) fn check_lte_latency(latency: Millis) -> Result<()> {
    if LTE_LATENCIES_MS
        .iter()
        .any(|&(n, d)| latency == Millis::from_ratio(n, d))
    {
        Ok(())
    } else {
        Err(Error::validation(
            "lte-latency",
            format!("LTE latency must be in {{10,4,0.8}} ms (got {latency})"),
        ))
    }
}

impl FrameworkConfig {
    pub fn standalone() -> Self {
        FrameworkConfig {
            kind: FrameworkKind::SaDl,
            lte_latency: None,
            srs: None,
        }
    }

    pub fn non_standalone(kind: FrameworkKind, lte_latency: Millis, srs: Option<SrsConfig>) -> Result<Self> {
        if kind.is_standalone() {
            return Err(Error::validation("framework", "non-standalone constructor given sa-dl"));
        }
        check_lte_latency(lte_latency)?;
        Ok(FrameworkConfig {
            kind,
            lte_latency: Some(lte_latency),
            srs,
        })
    }

    pub(crate) fn lte_latency(&self) -> Result<Millis> {
        self.lte_latency
            .ok_or_else(|| Error::MissingParameter("lte-latency".into()))
    }
}

/// The exhaustive beam sweep needed for initial access.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPlan {
    /// SS blocks (or SRS) needed to cover every direction pair.
    pub s_d: u64,
    pub gnb: SweepCapability,
    pub ue: SweepCapability,
}

/// `S_D = ⌈dirs_gNB/K_gNB⌉ · ⌈dirs_UE/K_UE⌉`.
pub fn sweep_block_count(gnb: SweepCapability, ue: SweepCapability) -> Result<SweepPlan> {
    let steps = |cap: &SweepCapability, side: &str| -> Result<u64> {
        let dirs = u64::from(cap.codebook.total_directions());
        let k = u64::from(cap.kbf);
        if dirs == 0 || k == 0 {
            return Err(Error::validation(side, "direction count and K_BF must be at least 1"));
        }
        Ok(dirs.div_ceil(k))
    };
    let s_d = steps(&gnb, "gnb")? * steps(&ue, "ue")?;
    Ok(SweepPlan { s_d, gnb, ue })
}

/// Time from the start of the first burst until `blocks` SS blocks have been
/// transmitted, `N_SS` per burst.
pub fn sweep_delay(blocks: u64, burst: &SsBurstConfig) -> Result<Millis> {
    if blocks == 0 {
        return Err(Error::Undefined("sweep of zero SS blocks".into()));
    }
    let n_ss = u64::from(burst.n_ss());
    let bursts = blocks.div_ceil(n_ss);
    let left = blocks - n_ss * (bursts - 1);
    let tail = burst_tail_time(left, burst.numerology())?;
    Ok(burst.period() * i128::from(bursts - 1) + tail)
}

/// Initial-access delay `T_IA` for the plan's sweep.
pub fn ia_delay(plan: &SweepPlan, burst: &SsBurstConfig) -> Millis {
    sweep_delay(plan.s_d, burst).expect("a sweep plan always has at least one block")
}

/// RACH occasions the gNB must open so every one of its directions can be
/// reported on.
pub fn rach_occasions(gnb: &SweepCapability) -> u64 {
    let per_occasion = u64::from(DIRECTIONS_PER_RACH_OCCASION) * u64::from(gnb.kbf.max(1));
    u64::from(gnb.codebook.total_directions()).div_ceil(per_occasion)
}

/// Beam-reporting delay `T_BR`.
///
/// Non-standalone frameworks report over LTE. Standalone reporting sweeps RACH
/// occasions of half a slot each, at most `N_SS` of them per burst.
pub fn beam_report_delay(framework: &FrameworkConfig, gnb: &SweepCapability, burst: &SsBurstConfig) -> Result<Millis> {
    if !framework.kind.is_standalone() {
        return framework.lte_latency();
    }
    let occasions = rach_occasions(gnb);
    let n_ss = u64::from(burst.n_ss());
    let bursts = occasions.div_ceil(n_ss);
    let remaining = occasions - n_ss * (bursts - 1);
    let occasion = burst.numerology().slot().half();
    Ok(burst.period() * i128::from(bursts - 1) + occasion * i128::from(remaining))
}

/// End-to-end initial-access latency broken into its parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IaLatency {
    pub sweep: Millis,
    pub report: Millis,
    /// Expected wait for the first burst (`T_SS/2`) when requested, else zero.
    pub expected_wait: Millis,
}

impl IaLatency {
    pub fn total(&self) -> Millis {
        self.sweep + self.report + self.expected_wait
    }
}

pub fn ia_total_latency(
    framework: &FrameworkConfig,
    plan: &SweepPlan,
    burst: &SsBurstConfig,
    include_expected_wait: bool,
) -> Result<IaLatency> {
    let sweep = ia_delay(plan, burst);
    let report = beam_report_delay(framework, &plan.gnb, burst)?;
    let expected_wait = if include_expected_wait {
        burst.period().half()
    } else {
        Millis::ZERO
    };
    Ok(IaLatency {
        sweep,
        report,
        expected_wait,
    })
}
