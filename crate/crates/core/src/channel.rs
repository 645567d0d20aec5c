//! Stochastic-geometry link model and Monte Carlo misdetection estimate.
//!
//! gNBs form a Poisson point process around a UE at the origin. Each link is
//! independently in outage, LOS or NLOS with distance-dependent
//! probabilities; LOS/NLOS links follow a log-distance fit with log-normal
//! shadowing. The UE is missed when no gNB reaches the SNR threshold on its
//! best beam pair.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use crate::beams::{BeamwidthTable, Transceiver};
use crate::error::{Error, Result};
use crate::numerology::SsBurstConfig;

/// Thermal noise density in dBm/Hz.
pub const THERMAL_NOISE_DBM_HZ: f64 = -174.0;
pub const MIN_REGION_RADIUS_M: f64 = 200.0;
pub const MIN_TRIALS: u64 = 1000;
const Z_95: f64 = 1.96;

/// Log-distance pathloss fit `α + 10β·log10(d) + N(0, σ²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathlossFit {
    pub intercept_db: f64,
    pub exponent: f64,
    pub shadow_sigma_db: f64,
}

/// Pathloss and link-state parameters (28 GHz New York City fits by default).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub pl_los: PathlossFit,
    pub pl_nlos: PathlossFit,
    pub los_decay_m: f64,
    pub outage_decay_m: f64,
    pub outage_offset: f64,
}

impl Default for ChannelParams {
    fn default() -> Self {
        ChannelParams {
            pl_los: PathlossFit {
                intercept_db: 61.4,
                exponent: 2.0,
                shadow_sigma_db: 5.8,
            },
            pl_nlos: PathlossFit {
                intercept_db: 72.0,
                exponent: 2.92,
                shadow_sigma_db: 8.7,
            },
            los_decay_m: 67.1,
            outage_decay_m: 30.0,
            outage_offset: 5.2,
        }
    }
}

impl ChannelParams {
    pub fn validate(&self) -> Result<()> {
        for (name, fit) in [("los", &self.pl_los), ("nlos", &self.pl_nlos)] {
            if !fit.intercept_db.is_finite() {
                return Err(Error::validation(format!("{name}-alpha"), "intercept must be finite"));
            }
            if !(fit.exponent.is_finite() && fit.exponent > 0.0) {
                return Err(Error::validation(
                    format!("{name}-beta"),
                    format!("pathloss exponent must be > 0 (got {})", fit.exponent),
                ));
            }
            if !(fit.shadow_sigma_db.is_finite() && fit.shadow_sigma_db >= 0.0) {
                return Err(Error::validation(
                    format!("{name}-sigma"),
                    format!("shadowing sigma must be >= 0 (got {})", fit.shadow_sigma_db),
                ));
            }
        }
        for (name, v) in [("los-decay", self.los_decay_m), ("outage-decay", self.outage_decay_m)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::validation(name, format!("decay length must be > 0 m (got {v})")));
            }
        }
        if !self.outage_offset.is_finite() {
            return Err(Error::validation("outage-offset", "offset must be finite"));
        }
        Ok(())
    }

    fn fit(&self, state: LinkState) -> Option<&PathlossFit> {
        match state {
            LinkState::Los => Some(&self.pl_los),
            LinkState::Nlos => Some(&self.pl_nlos),
            LinkState::Outage => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkState {
    Los,
    Nlos,
    Outage,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateProbabilities {
    pub outage: f64,
    pub los: f64,
    pub nlos: f64,
}

pub fn state_probabilities(params: &ChannelParams, distance_m: f64) -> StateProbabilities {
    let outage = (1.0 - (-distance_m / params.outage_decay_m + params.outage_offset).exp()).clamp(0.0, 1.0);
    let los = (1.0 - outage) * (-distance_m / params.los_decay_m).exp();
    StateProbabilities {
        outage,
        los,
        nlos: (1.0 - outage - los).max(0.0),
    }
}

/// Deployment and link-budget parameters of the Monte Carlo.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeploymentModel {
    pub gnb_density_per_km2: f64,
    pub region_radius_m: f64,
    pub tx_power_dbm: f64,
    pub carrier_ghz: f64,
    pub snr_threshold_db: f64,
    pub noise_figure_db: f64,
    /// Noise bandwidth of one SS block copy, `240·Δf`.
    pub bandwidth_per_rep_hz: f64,
}

impl DeploymentModel {
    /// Defaults: 500 m disc, 30 dBm, 28 GHz, Γ = −5 dB, NF = 7 dB, 120 kHz blocks.
    pub fn new(gnb_density_per_km2: f64) -> Self {
        DeploymentModel {
            gnb_density_per_km2,
            region_radius_m: 500.0,
            tx_power_dbm: 30.0,
            carrier_ghz: 28.0,
            snr_threshold_db: -5.0,
            noise_figure_db: 7.0,
            bandwidth_per_rep_hz: 240.0 * 120e3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gnb_density_per_km2.is_finite() && self.gnb_density_per_km2 > 0.0) {
            return Err(Error::validation(
                "density",
                format!("gNB density must be > 0 per km² (got {})", self.gnb_density_per_km2),
            ));
        }
        if !(self.region_radius_m.is_finite() && self.region_radius_m >= MIN_REGION_RADIUS_M) {
            return Err(Error::validation(
                "radius",
                format!(
                    "region radius must be >= {MIN_REGION_RADIUS_M} m (got {})",
                    self.region_radius_m
                ),
            ));
        }
        if !self.snr_threshold_db.is_finite() {
            return Err(Error::validation("threshold", "SNR threshold must be finite"));
        }
        for (name, v) in [
            ("ptx", self.tx_power_dbm),
            ("nf", self.noise_figure_db),
            ("carrier", self.carrier_ghz),
        ] {
            if !v.is_finite() {
                return Err(Error::validation(name, format!("must be finite (got {v})")));
            }
        }
        if !(self.bandwidth_per_rep_hz.is_finite() && self.bandwidth_per_rep_hz > 0.0) {
            return Err(Error::validation("bandwidth", "noise bandwidth must be > 0 Hz"));
        }
        Ok(())
    }

    pub fn mean_gnb_count(&self) -> f64 {
        let r_km = self.region_radius_m * 1e-3;
        self.gnb_density_per_km2 * std::f64::consts::PI * r_km * r_km
    }

    pub fn noise_dbm(&self) -> f64 {
        THERMAL_NOISE_DBM_HZ + 10.0 * self.bandwidth_per_rep_hz.log10() + self.noise_figure_db
    }
}

/// One gNB drawn in a trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GnbSample {
    pub distance_m: f64,
    pub state: LinkState,
    /// Shadowing realisation; zero in outage.
    pub shadowing_db: f64,
}

fn trial_rng(seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial_index);
    rng
}

/// Draws the gNBs seen by the UE in one trial. The result depends only on
/// `(seed, trial_index)`, never on which thread runs it.
pub fn sample_deployment(
    model: &DeploymentModel,
    params: &ChannelParams,
    seed: u64,
    trial_index: u64,
) -> Vec<GnbSample> {
    let mut rng = trial_rng(seed, trial_index);
    let count = Poisson::new(model.mean_gnb_count())
        .map(|p| p.sample(&mut rng) as usize)
        .unwrap_or(0);
    (0..count)
        .map(|_| {
            // Uniform on the disc; 1 − u keeps the distance strictly positive.
            let u: f64 = rng.random();
            let distance_m = model.region_radius_m * (1.0 - u).sqrt();
            let p = state_probabilities(params, distance_m);
            let v: f64 = rng.random();
            let state = if v < p.outage {
                LinkState::Outage
            } else if v < p.outage + p.los {
                LinkState::Los
            } else {
                LinkState::Nlos
            };
            let z: f64 = rng.sample(rand_distr::StandardNormal);
            let shadowing_db = params.fit(state).map_or(0.0, |f| z * f.shadow_sigma_db);
            GnbSample {
                distance_m,
                state,
                shadowing_db,
            }
        })
        .collect()
}

/// Pathloss in dB; infinite in outage.
pub fn pathloss_db(params: &ChannelParams, state: LinkState, distance_m: f64, shadowing_db: f64) -> Result<f64> {
    if distance_m.is_nan() || distance_m <= 0.0 {
        return Err(Error::validation(
            "distance",
            format!("distance must be > 0 m (got {distance_m})"),
        ));
    }
    Ok(match params.fit(state) {
        Some(f) => f.intercept_db + 10.0 * f.exponent * distance_m.log10() + shadowing_db,
        None => f64::INFINITY,
    })
}

/// SNR of one SS block after combining `n_rep` frequency copies.
///
/// `tx_beams` is the number of simultaneous transmit beams sharing the power.
pub fn link_snr_db(
    model: &DeploymentModel,
    gain_tx_dbi: f64,
    gain_rx_dbi: f64,
    pathloss_db: f64,
    n_rep: u32,
    tx_beams: u32,
) -> f64 {
    let tx = model.tx_power_dbm - 10.0 * f64::from(tx_beams.max(1)).log10();
    tx + gain_tx_dbi + gain_rx_dbi - pathloss_db - model.noise_dbm() + 5.0 * f64::from(n_rep.max(1)).log10()
}

/// Gains and power split of a gNB/UE pair aligned on their best beams.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub gnb_gain_dbi: f64,
    pub ue_gain_dbi: f64,
    pub tx_beams: u32,
    pub n_rep: u32,
}

impl LinkBudget {
    pub fn new(gnb: &Transceiver, ue: &Transceiver, table: &BeamwidthTable, burst: &SsBurstConfig) -> Result<Self> {
        let g = gnb.capability(table)?;
        let u = ue.capability(table)?;
        Ok(LinkBudget {
            gnb_gain_dbi: g.codebook.boresight_gain_dbi,
            ue_gain_dbi: u.codebook.boresight_gain_dbi,
            tx_beams: if gnb.arch.splits_power() { g.kbf } else { 1 },
            n_rep: burst.n_rep(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    /// −∞ when no gNB has a usable link.
    pub best_snr_db: f64,
    pub detected: bool,
    pub link_state: LinkState,
    /// Distance to the serving gNB; infinite when none was sampled.
    pub serving_distance_m: f64,
}

pub fn run_trial(
    model: &DeploymentModel,
    params: &ChannelParams,
    budget: &LinkBudget,
    seed: u64,
    trial_index: u64,
) -> TrialOutcome {
    let mut best = TrialOutcome {
        best_snr_db: f64::NEG_INFINITY,
        detected: false,
        link_state: LinkState::Outage,
        serving_distance_m: f64::INFINITY,
    };
    for g in sample_deployment(model, params, seed, trial_index) {
        let snr = match g.state {
            LinkState::Outage => f64::NEG_INFINITY,
            state => {
                let pl =
                    pathloss_db(params, state, g.distance_m, g.shadowing_db).expect("sampled distances are positive");
                link_snr_db(
                    model,
                    budget.gnb_gain_dbi,
                    budget.ue_gain_dbi,
                    pl,
                    budget.n_rep,
                    budget.tx_beams,
                )
            }
        };
        let better = snr > best.best_snr_db || (snr == best.best_snr_db && g.distance_m < best.serving_distance_m);
        if better {
            best.best_snr_db = snr;
            best.link_state = g.state;
            best.serving_distance_m = g.distance_m;
        }
    }
    best.detected = best.best_snr_db >= model.snr_threshold_db;
    best
}

/// Monte Carlo controls. `threads == 0` uses rayon's default pool size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarlo {
    pub trials: u64,
    pub seed: u64,
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MisdetectionEstimate {
    pub p_md: f64,
    /// Wald 95% half-width.
    pub half_width: f64,
    pub trials: u64,
    pub misses: u64,
}

/// Estimates `P_MD`, the probability that no gNB detects the UE.
///
/// The noise bandwidth and repetition count are taken from `burst`.
pub fn misdetection_probability(
    model: &DeploymentModel,
    params: &ChannelParams,
    gnb: &Transceiver,
    ue: &Transceiver,
    table: &BeamwidthTable,
    burst: &SsBurstConfig,
    mc: &MonteCarlo,
) -> Result<MisdetectionEstimate> {
    if mc.trials < MIN_TRIALS {
        return Err(Error::validation(
            "trials",
            format!("at least {MIN_TRIALS} trials are required (got {})", mc.trials),
        ));
    }
    params.validate()?;
    let model = DeploymentModel {
        bandwidth_per_rep_hz: burst.block_bandwidth_hz(),
        ..*model
    };
    model.validate()?;
    let budget = LinkBudget::new(gnb, ue, table, burst)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(mc.threads)
        .build()
        .map_err(|e| Error::Undefined(format!("cannot start worker pool: {e}")))?;
    let misses = pool.install(|| {
        (0..mc.trials)
            .into_par_iter()
            .filter(|&i| !run_trial(&model, params, &budget, mc.seed, i).detected)
            .count() as u64
    });
    let n = mc.trials as f64;
    let p = misses as f64 / n;
    Ok(MisdetectionEstimate {
        p_md: p,
        half_width: Z_95 * (p * (1.0 - p) / n).sqrt(),
        trials: mc.trials,
        misses,
    })
}
