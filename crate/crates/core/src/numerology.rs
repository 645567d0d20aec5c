//! NR frame structure: numerology timing and SS burst geometry.

use crate::error::{Error, Result};
use crate::time::Millis;

/// OFDM symbols per slot.
pub const SYMBOLS_PER_SLOT: u32 = 14;
/// OFDM symbols occupied by one SS block.
pub const SS_BLOCK_SYMBOLS: u32 = 4;
/// Subcarriers occupied by one SS block.
pub const SS_BLOCK_SUBCARRIERS: u32 = 240;
/// Maximum number of SS blocks in a burst above 6 GHz (L).
pub const MAX_SS_BLOCKS: u32 = 64;
/// Default carrier bandwidth B.
pub const DEFAULT_BANDWIDTH_HZ: f64 = 400e6;

pub const VALID_SPACINGS_KHZ: [u32; 5] = [15, 30, 60, 120, 240];
pub const BEAM_MANAGEMENT_SPACINGS_KHZ: [u32; 2] = [120, 240];
pub const VALID_N_SS: [u32; 4] = [8, 16, 32, 64];
pub const VALID_SS_PERIODS_MS: [u32; 6] = [5, 10, 20, 40, 80, 160];

/// Subcarrier spacing `15·2^n` kHz and the timing grid it induces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Numerology {
    spacing_khz: u32,
    exponent: u32,
}

impl Numerology {
    pub fn spacing_khz(&self) -> u32 {
        self.spacing_khz
    }

    pub fn spacing_hz(&self) -> f64 {
        f64::from(self.spacing_khz) * 1e3
    }

    /// The exponent `n` in `15·2^n` kHz.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Slot duration `1/2^n` ms.
    pub fn slot(&self) -> Millis {
        Millis::from_ratio(1, 1 << self.exponent)
    }

    /// Symbol duration `71.35/2^n` µs, i.e. `0.07135/2^n` ms.
    pub fn symbol(&self) -> Millis {
        Millis::from_ratio(7135, 100_000 * (1 << self.exponent))
    }

    pub fn is_beam_management(&self) -> bool {
        BEAM_MANAGEMENT_SPACINGS_KHZ.contains(&self.spacing_khz)
    }

    pub(crate) fn require_beam_management(&self) -> Result<()> {
        if self.is_beam_management() {
            Ok(())
        } else {
            Err(Error::validation(
                "scs",
                format!(
                    "subcarrier spacing must be 120 or 240 kHz for beam management (got {})",
                    self.spacing_khz
                ),
            ))
        }
    }
}

/// Builds the numerology for a subcarrier spacing given in kHz.
pub fn numerology_from_spacing(spacing_khz: u32) -> Result<Numerology> {
    let exponent = match spacing_khz {
        15 => 0,
        30 => 1,
        60 => 2,
        120 => 3,
        240 => 4,
        other => {
            return Err(Error::validation(
                "scs",
                format!("subcarrier spacing must be in {{15,30,60,120,240}} kHz (got {other})"),
            ))
        }
    };
    Ok(Numerology { spacing_khz, exponent })
}

/// Maximum SS burst duration `D_max,SS`: the window of the period in which SS
/// blocks may be placed.
pub fn ss_burst_max_duration(numerology: Numerology) -> Result<Millis> {
    numerology.require_beam_management()?;
    Ok(match numerology.spacing_khz {
        120 => Millis::from_int(5),
        _ => Millis::from_ratio(5, 2),
    })
}

/// Time from the start of a burst until the last of `n_blocks_left` SS blocks
/// has been received.
///
/// Blocks occupy symbols 2–5 and 8–11 of consecutive slots, two per slot. With
/// an even count the last block ends two symbols before the end of slot `N/2`;
/// with an odd count six symbols of one further slot are used.
pub fn burst_tail_time(n_blocks_left: u64, numerology: Numerology) -> Result<Millis> {
    if n_blocks_left == 0 {
        return Err(Error::Undefined("burst tail time requested for zero SS blocks".into()));
    }
    let half = i128::from(n_blocks_left / 2);
    let slot = numerology.slot();
    let symbol = numerology.symbol();
    Ok(if n_blocks_left.is_multiple_of(2) {
        slot * half - symbol * 2
    } else {
        slot * half + symbol * 6
    })
}

pub(crate) fn check_n_ss(n_ss: u32) -> Result<()> {
    if VALID_N_SS.contains(&n_ss) {
        Ok(())
    } else {
        Err(Error::validation(
            "nss",
            format!("N_SS must be in {{8,16,32,64}} (got {n_ss})"),
        ))
    }
}

pub(crate) fn check_ss_period(period_ms: u32) -> Result<()> {
    if VALID_SS_PERIODS_MS.contains(&period_ms) {
        Ok(())
    } else {
        Err(Error::validation(
            "tss",
            format!("T_SS must be in {{5,10,20,40,80,160}} (got {period_ms})"),
        ))
    }
}

/// Number of frequency repetitions of each SS block.
pub fn repetitions(numerology: Numerology, freq_diversity: bool) -> u32 {
    match (freq_diversity, numerology.spacing_khz) {
        (false, _) => 1,
        (true, 120) => 11,
        (true, _) => 5,
    }
}

pub(crate) fn check_bandwidth(numerology: Numerology, freq_diversity: bool, bandwidth_hz: f64) -> Result<()> {
    if !(bandwidth_hz.is_finite() && bandwidth_hz > 0.0) {
        return Err(Error::validation(
            "bandwidth",
            format!("B must be a positive number of Hz (got {bandwidth_hz})"),
        ));
    }
    let block = f64::from(SS_BLOCK_SUBCARRIERS) * numerology.spacing_hz();
    let used = block * f64::from(repetitions(numerology, freq_diversity));
    if used > bandwidth_hz {
        return Err(Error::validation(
            "bandwidth",
            format!("SS blocks need {used} Hz including repetitions but B = {bandwidth_hz} Hz"),
        ));
    }
    Ok(())
}

/// SS burst configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SsBurstConfig {
    n_ss: u32,
    period_ms: u32,
    numerology: Numerology,
    freq_diversity: bool,
    bandwidth_hz: f64,
}

impl SsBurstConfig {
    pub fn new(
        n_ss: u32,
        period_ms: u32,
        numerology: Numerology,
        freq_diversity: bool,
        bandwidth_hz: f64,
    ) -> Result<Self> {
        numerology.require_beam_management()?;
        check_n_ss(n_ss)?;
        check_ss_period(period_ms)?;
        check_bandwidth(numerology, freq_diversity, bandwidth_hz)?;
        Ok(SsBurstConfig {
            n_ss,
            period_ms,
            numerology,
            freq_diversity,
            bandwidth_hz,
        })
    }

    /// Shorthand for a burst on the default 400 MHz carrier.
    pub fn with_defaults(n_ss: u32, period_ms: u32, spacing_khz: u32, freq_diversity: bool) -> Result<Self> {
        let numerology = numerology_from_spacing(spacing_khz)?;
        Self::new(n_ss, period_ms, numerology, freq_diversity, DEFAULT_BANDWIDTH_HZ)
    }

    pub fn n_ss(&self) -> u32 {
        self.n_ss
    }

    pub fn period_ms(&self) -> u32 {
        self.period_ms
    }

    pub fn period(&self) -> Millis {
        Millis::from_int(i64::from(self.period_ms))
    }

    pub fn numerology(&self) -> Numerology {
        self.numerology
    }

    pub fn freq_diversity(&self) -> bool {
        self.freq_diversity
    }

    pub fn n_rep(&self) -> u32 {
        repetitions(self.numerology, self.freq_diversity)
    }

    pub fn bandwidth_hz(&self) -> f64 {
        self.bandwidth_hz
    }

    /// Bandwidth of a single SS block copy, `240·Δf`.
    pub fn block_bandwidth_hz(&self) -> f64 {
        f64::from(SS_BLOCK_SUBCARRIERS) * self.numerology.spacing_hz()
    }

    pub fn max_duration(&self) -> Millis {
        ss_burst_max_duration(self.numerology).expect("validated at construction")
    }
}
