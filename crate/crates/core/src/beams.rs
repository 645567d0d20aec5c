//! Antenna arrays, beam codebooks and simultaneous-beam capability.

use crate::error::{Error, Result};

pub const GNB_AZIMUTH_RANGE_DEG: f64 = 120.0;
pub const UE_AZIMUTH_RANGE_DEG: f64 = 360.0;
pub const ELEVATION_RANGE_DEG: f64 = 60.0;
pub const DEFAULT_HYBRID_DIVISOR: u32 = 2;

// Ranges are exact multiples of some calibrated beamwidths (120/60, 360/60).
const CEIL_SLACK: f64 = 1e-9;

/// Which side of the link an array sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArrayRole {
    /// One sector of a three-sector gNB site.
    GnbSector,
    /// A directional UE array scanning the full azimuth.
    Ue,
    /// A UE receiving omnidirectionally.
    UeOmni,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayConfig {
    pub elements: u32,
    pub role: ArrayRole,
    pub azimuth_range_deg: f64,
    pub elevation_range_deg: f64,
}

impl ArrayConfig {
    pub fn new(elements: u32, role: ArrayRole) -> Self {
        let azimuth_range_deg = match role {
            ArrayRole::GnbSector => GNB_AZIMUTH_RANGE_DEG,
            ArrayRole::Ue | ArrayRole::UeOmni => UE_AZIMUTH_RANGE_DEG,
        };
        ArrayConfig {
            elements,
            role,
            azimuth_range_deg,
            elevation_range_deg: ELEVATION_RANGE_DEG,
        }
    }

    pub fn gnb(elements: u32) -> Self {
        Self::new(elements, ArrayRole::GnbSector)
    }

    pub fn ue(elements: u32) -> Self {
        Self::new(elements, ArrayRole::Ue)
    }

    pub fn ue_omni() -> Self {
        Self::new(1, ArrayRole::UeOmni)
    }
}

/// A 3 dB beamwidth and whether it came from the calibrated table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beamwidth {
    pub degrees: f64,
    pub calibrated: bool,
}

/// Element count → beamwidth lookup, with a `120/√M` fallback for square
/// arrays outside the table.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamwidthTable {
    entries: Vec<(u32, f64)>,
}

impl Default for BeamwidthTable {
    fn default() -> Self {
        BeamwidthTable {
            entries: vec![(4, 60.0), (16, 26.0), (64, 13.0)],
        }
    }
}

impl BeamwidthTable {
    pub fn new(entries: Vec<(u32, f64)>) -> Result<Self> {
        for &(m, deg) in &entries {
            if m == 0 || !(deg.is_finite() && deg > 0.0) {
                return Err(Error::validation(
                    "beamwidth-table",
                    format!("entry {m}:{deg} must have M >= 1 and a positive beamwidth"),
                ));
            }
        }
        Ok(BeamwidthTable { entries })
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn beamwidth(&self, elements: u32) -> Result<Beamwidth> {
        if elements == 0 {
            return Err(Error::validation("elements", "array must have at least one element"));
        }
        if let Some(&(_, degrees)) = self.entries.iter().find(|(m, _)| *m == elements) {
            return Ok(Beamwidth {
                degrees,
                calibrated: true,
            });
        }
        let side = integer_sqrt(elements);
        if side * side != elements {
            return Err(Error::validation(
                "elements",
                format!("{elements} is neither in the beamwidth table nor a perfect square"),
            ));
        }
        Ok(Beamwidth {
            degrees: 120.0 / f64::from(side),
            calibrated: false,
        })
    }
}

fn integer_sqrt(n: u32) -> u32 {
    let mut r = f64::from(n).sqrt() as u32;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Beamwidth for an `M`-element array using the default table.
pub fn beamwidth_for_elements(elements: u32) -> Result<Beamwidth> {
    BeamwidthTable::default().beamwidth(elements)
}

/// The set of directions an array sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamCodebook {
    pub beamwidth_deg: f64,
    pub n_azimuth: u32,
    pub n_elevation: u32,
    pub boresight_gain_dbi: f64,
    pub calibrated: bool,
}

impl BeamCodebook {
    pub fn total_directions(&self) -> u32 {
        self.n_azimuth * self.n_elevation
    }
}

fn directions(range_deg: f64, beamwidth_deg: f64) -> u32 {
    ((range_deg / beamwidth_deg - CEIL_SLACK).ceil() as u32).max(1)
}

/// Codebook for an array using the default beamwidth table.
pub fn codebook(array: &ArrayConfig) -> Result<BeamCodebook> {
    codebook_with(array, &BeamwidthTable::default())
}

pub fn codebook_with(array: &ArrayConfig, table: &BeamwidthTable) -> Result<BeamCodebook> {
    if array.role == ArrayRole::UeOmni {
        return Ok(BeamCodebook {
            beamwidth_deg: 360.0,
            n_azimuth: 1,
            n_elevation: 1,
            boresight_gain_dbi: 0.0,
            calibrated: true,
        });
    }
    for (name, v) in [
        ("azimuth range", array.azimuth_range_deg),
        ("elevation range", array.elevation_range_deg),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::validation(name, format!("must be a positive angle (got {v})")));
        }
    }
    let bw = table.beamwidth(array.elements)?;
    Ok(BeamCodebook {
        beamwidth_deg: bw.degrees,
        n_azimuth: directions(array.azimuth_range_deg, bw.degrees),
        n_elevation: directions(array.elevation_range_deg, bw.degrees),
        boresight_gain_dbi: 10.0 * f64::from(array.elements).log10(),
        calibrated: bw.calibrated,
    })
}

/// Beamforming architecture of a transceiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BfArchitecture {
    Analog,
    /// Hybrid architecture processing `min(dirs, M)/divisor` beams at a time.
    Hybrid {
        divisor: u32,
    },
    Digital,
    Omni,
}

impl BfArchitecture {
    pub fn hybrid() -> Self {
        BfArchitecture::Hybrid {
            divisor: DEFAULT_HYBRID_DIVISOR,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BfArchitecture::Analog => "analog",
            BfArchitecture::Hybrid { .. } => "hybrid",
            BfArchitecture::Digital => "digital",
            BfArchitecture::Omni => "omni",
        }
    }

    /// Parses `analog`, `hybrid`, `digital` or `omni`; hybrid takes `divisor`.
    pub fn parse(name: &str, divisor: u32) -> Result<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "analog" => Ok(BfArchitecture::Analog),
            "hybrid" => Ok(BfArchitecture::Hybrid { divisor }),
            "digital" => Ok(BfArchitecture::Digital),
            "omni" => Ok(BfArchitecture::Omni),
            other => Err(Error::validation(
                "arch",
                format!("architecture must be one of analog, hybrid, digital, omni (got {other})"),
            )),
        }
    }

    /// Whether transmitting on several simultaneous beams splits the power.
    pub fn splits_power(&self) -> bool {
        matches!(self, BfArchitecture::Hybrid { .. } | BfArchitecture::Digital)
    }
}

/// Number of beams `K_BF` the transceiver can process at once.
pub fn simultaneous_beams(arch: BfArchitecture, elements: u32, total_directions: u32) -> Result<u32> {
    if total_directions == 0 {
        return Err(Error::validation("directions", "at least one direction is required"));
    }
    let cap = total_directions.min(elements);
    match arch {
        BfArchitecture::Analog | BfArchitecture::Omni => Ok(1),
        BfArchitecture::Digital => Ok(cap.max(1)),
        BfArchitecture::Hybrid { divisor } if divisor >= 2 => Ok((cap / divisor).max(1)),
        BfArchitecture::Hybrid { divisor } => Err(Error::validation(
            "nu",
            format!("hybrid divisor must be at least 2 (got {divisor})"),
        )),
    }
}

/// An array paired with its beamforming architecture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transceiver {
    pub array: ArrayConfig,
    pub arch: BfArchitecture,
}

/// A transceiver's codebook together with its `K_BF`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCapability {
    pub codebook: BeamCodebook,
    pub kbf: u32,
}

impl Transceiver {
    pub fn new(array: ArrayConfig, arch: BfArchitecture) -> Result<Self> {
        let omni_role = array.role == ArrayRole::UeOmni;
        let omni_arch = arch == BfArchitecture::Omni;
        if omni_role != omni_arch {
            return Err(Error::validation(
                "arch",
                "omni architecture is only valid for (and required by) an omnidirectional UE",
            ));
        }
        Ok(Transceiver { array, arch })
    }

    pub fn capability(&self, table: &BeamwidthTable) -> Result<SweepCapability> {
        let codebook = codebook_with(&self.array, table)?;
        let kbf = simultaneous_beams(self.arch, self.array.elements, codebook.total_directions())?;
        Ok(SweepCapability { codebook, kbf })
    }
}
