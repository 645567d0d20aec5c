//! Beam tracking with CSI-RS between SS bursts, orthogonal CSI-RS capacity and
//! radio-link-failure recovery.

use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ia::{ia_delay, FrameworkConfig, FrameworkKind, SrsConfig, SweepPlan};
use crate::numerology::{Numerology, SsBurstConfig};
use crate::time::Millis;

pub const VALID_CSI_PERIOD_SLOTS: [u32; 8] = [5, 10, 20, 40, 80, 160, 320, 640];
pub const VALID_CSI_SYMBOLS: [u32; 3] = [1, 2, 4];
/// Symbols per slot usable for CSI-RS.
pub const CSI_SYMBOLS_PER_SLOT: u32 = 4;

/// Placement of the first CSI-RS after an SS burst.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CsiOption {
    /// First CSI-RS one period after the end of the burst.
    Opt1,
    /// CSI-RS centred in the window using an offset.
    Opt2,
}

impl CsiOption {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "opt1" => Ok(CsiOption::Opt1),
            "2" | "opt2" => Ok(CsiOption::Opt2),
            other => Err(Error::validation(
                "csi-option",
                format!("CSI-RS option must be 1 or 2 (got {other})"),
            )),
        }
    }

    pub fn number(&self) -> u32 {
        match self {
            CsiOption::Opt1 => 1,
            CsiOption::Opt2 => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsiRsConfig {
    pub option: CsiOption,
    /// Periodicity in slots.
    pub period_slots: u32,
    /// OFDM symbols per CSI-RS.
    pub n_symb: u32,
    /// Fraction of the carrier bandwidth used by each CSI-RS.
    pub rho: f64,
    /// Directions monitored by each UE.
    pub n_csi_rx: u32,
}

pub(crate) fn check_period_slots(slots: u32) -> Result<()> {
    if VALID_CSI_PERIOD_SLOTS.contains(&slots) {
        Ok(())
    } else {
        Err(Error::validation(
            "csi-period-slots",
            format!("T_CSI,slot must be in {{5,10,20,40,80,160,320,640}} (got {slots})"),
        ))
    }
}

pub(crate) fn check_symbols(n: u32) -> Result<()> {
    if VALID_CSI_SYMBOLS.contains(&n) {
        Ok(())
    } else {
        Err(Error::validation(
            "csi-symbols",
            format!("N_symb,CSI must be in {{1,2,4}} (got {n})"),
        ))
    }
}

pub(crate) fn check_rho(rho: f64) -> Result<()> {
    if rho.is_finite() && rho > 0.0 && rho <= 1.0 {
        Ok(())
    } else {
        Err(Error::validation("rho", format!("ρ ∈ (0,1] (got {rho})")))
    }
}

pub(crate) fn check_rx(n: u32) -> Result<()> {
    if (1..=4).contains(&n) {
        Ok(())
    } else {
        Err(Error::validation(
            "csi-rx",
            format!("N_CSI,RX must be in 1..=4 (got {n})"),
        ))
    }
}

impl CsiRsConfig {
    pub fn new(option: CsiOption, period_slots: u32, n_symb: u32, rho: f64, n_csi_rx: u32) -> Result<Self> {
        check_period_slots(period_slots)?;
        check_symbols(n_symb)?;
        check_rho(rho)?;
        check_rx(n_csi_rx)?;
        Ok(CsiRsConfig {
            option,
            period_slots,
            n_symb,
            rho,
            n_csi_rx,
        })
    }

    /// Absolute periodicity `T_CSI = T_CSI,slot · T_slot`.
    pub fn period(&self, numerology: Numerology) -> Millis {
        numerology.slot() * i128::from(self.period_slots)
    }

    /// `⌊1/ρ⌋` CSI-RS fit side by side in frequency.
    pub fn frequency_slots(&self) -> u64 {
        // 1/0.2 and friends land a hair below the integer in binary.
        (1.0 / self.rho + 1e-9).floor() as u64
    }
}

/// Users in a sector and the gNB beams they spread over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrackingScenario {
    pub n_user: u32,
    /// `k = N_θ,gNB · N_φ,gNB`.
    pub gnb_beams: u32,
    pub n_csi_rx: u32,
}

impl TrackingScenario {
    pub fn new(n_user: u32, gnb_beams: u32, n_csi_rx: u32) -> Result<Self> {
        if n_user == 0 {
            return Err(Error::validation("users", "N_user must be at least 1"));
        }
        if gnb_beams == 0 {
            return Err(Error::validation("gnb", "the gNB must have at least one beam"));
        }
        check_rx(n_csi_rx)?;
        Ok(TrackingScenario {
            n_user,
            gnb_beams,
            n_csi_rx,
        })
    }

    /// Equivalent single-direction measures `n = N_user · N_CSI,RX`.
    pub fn measures(&self) -> u32 {
        self.n_user * self.n_csi_rx
    }

    /// CSI-RS that must be sent, `Z_CSI = min(n, k)`.
    pub fn z_csi(&self) -> u32 {
        self.measures().min(self.gnb_beams)
    }
}

/// Time between bursts available to CSI-RS, `T_SS − D_max,SS`.
pub fn csi_window(burst: &SsBurstConfig) -> Millis {
    burst.period() - burst.max_duration()
}

/// CSI-RS that fit in the window: floor for option 1, ceil for option 2.
pub fn csi_count(window: Millis, csi: &CsiRsConfig, numerology: Numerology) -> u64 {
    if !window.is_positive() {
        return 0;
    }
    let period = csi.period(numerology);
    let n = match csi.option {
        CsiOption::Opt1 => window.floor_div(period),
        CsiOption::Opt2 => window.ceil_div(period),
    };
    n as u64
}

/// Option-2 offset `O_CSI = (window − (N_CSI − 1)·T_CSI)/2`.
pub fn csi_offset(window: Millis, csi: &CsiRsConfig, numerology: Numerology) -> Result<Millis> {
    if csi.option != CsiOption::Opt2 {
        return Err(Error::Undefined("CSI-RS offset is only defined for option 2".into()));
    }
    let n = csi_count(window, csi, numerology);
    if n == 0 {
        return Err(Error::Undefined("no CSI-RS schedulable in window".into()));
    }
    Ok(centred_offset(window, n, csi.period(numerology)))
}

/// Offset that centres `n_csi` transmissions spaced `period` apart in `window`.
pub fn centred_offset(window: Millis, n_csi: u64, period: Millis) -> Millis {
    (window - period * (n_csi as i128 - 1)).half()
}

/// Average time to receive the first CSI-RS over the `Z_CSI` required
/// transmissions.
///
/// Instants are `p·T_SS + i·T_CSI` (`i = 1..=N_CSI`) for option 1 and
/// `p·T_SS + O_CSI + i·T_CSI` (`i = 0..N_CSI`) for option 2, filled period by
/// period; this evaluates their mean in closed form.
pub fn tracking_delay(scenario: &TrackingScenario, csi: &CsiRsConfig, burst: &SsBurstConfig) -> Result<Millis> {
    let numerology = burst.numerology();
    let window = csi_window(burst);
    let n = csi_count(window, csi, numerology) as i128;
    if n == 0 {
        return Err(Error::Undefined("no CSI-RS schedulable in window".into()));
    }
    let z = i128::from(scenario.z_csi());
    let t_ss = burst.period();
    let t_csi = csi.period(numerology);
    let full = z / n;
    let rem = z % n;

    // Full periods contribute N·T_SS·Σp; the remainder sits in period `full`.
    let period_part = t_ss * (n * full * (full - 1) / 2) + t_ss * (rem * full);
    let slot_part = match csi.option {
        CsiOption::Opt1 => t_csi * (full * n * (n + 1) / 2 + rem * (rem + 1) / 2),
        CsiOption::Opt2 => {
            let offset = csi_offset(window, csi, numerology)?;
            t_csi * (full * n * (n - 1) / 2 + rem * (rem - 1) / 2) + offset * z
        }
    };
    Ok((period_part + slot_part) / z)
}

/// Orthogonal CSI-RS opportunities between bursts,
/// `(window/T_slot)·(4/N_symb)·⌊1/ρ⌋`.
pub fn orthogonal_csi_capacity(burst: &SsBurstConfig, csi: &CsiRsConfig) -> u64 {
    let window = csi_window(burst);
    if !window.is_positive() {
        return 0;
    }
    let slots = window.ratio_to(burst.numerology().slot());
    let per_slot = Ratio::new(i128::from(CSI_SYMBOLS_PER_SLOT), i128::from(csi.n_symb));
    let total = slots * per_slot * i128::from(csi.frequency_slots() as i64);
    total.floor().to_u64().unwrap_or(0)
}

/// Neighbouring gNBs that can be given orthogonal CSI-RS,
/// `⌊capacity/N_CSI⌋ − 1` floored at zero.
pub fn max_neighbors(capacity: u64, n_csi: u64) -> Result<u64> {
    if n_csi == 0 {
        return Err(Error::Undefined(
            "neighbour limit needs at least one CSI-RS per period".into(),
        ));
    }
    Ok((capacity / n_csi).saturating_sub(1))
}

/// Failure detection from missed SRS, `T_SRS/2 + (N_SRS − 1)·T_SRS`.
pub fn srs_detection_delay(srs: &SrsConfig) -> Millis {
    srs.period.half() + srs.period * i128::from(srs.miss_count - 1)
}

/// Radio-link-failure recovery delay.
///
/// Standalone: wait on average half a burst period, then redo initial access.
/// NSA-DL: the UE reports over LTE, unless SRS monitoring is configured, in
/// which case the gNB detects the failure itself. NSA-UL: gNB-side detection
/// from SRS.
pub fn rlf_delay(framework: &FrameworkConfig, plan: &SweepPlan, burst: &SsBurstConfig) -> Result<Millis> {
    match framework.kind {
        FrameworkKind::SaDl => Ok(burst.period().half() + ia_delay(plan, burst)),
        FrameworkKind::NsaDl => match &framework.srs {
            Some(srs) => Ok(srs_detection_delay(srs)),
            None => framework.lte_latency(),
        },
        FrameworkKind::NsaUl => framework
            .srs
            .as_ref()
            .map(srs_detection_delay)
            .ok_or_else(|| Error::MissingParameter("srs-period / srs-miss".into())),
    }
}
