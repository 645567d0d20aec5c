//! Parameter registry, config-file loading and validation.
//!
//! Every parameter has one name, used both as the config key (inside its
//! section) and as the `--name value` command-line flag. Values are kept as
//! the strings the user supplied so they can be echoed verbatim in CSV
//! output; they are parsed when a domain object is built.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::beams::{ArrayConfig, BeamwidthTable, BfArchitecture, Transceiver};
use crate::channel::{ChannelParams, DeploymentModel, MonteCarlo, PathlossFit, MIN_TRIALS};
use crate::error::{Error, Result};
use crate::ia::{sweep_block_count, FrameworkConfig, FrameworkKind, SrsConfig, SweepPlan};
use crate::numerology::{self, numerology_from_spacing, Numerology, SsBurstConfig, SS_BLOCK_SUBCARRIERS};
use crate::overhead::rach_bandwidth_hz;
use crate::time::Millis;
use crate::tracking::{self, CsiOption, CsiRsConfig, TrackingScenario};

/// One configurable parameter.
#[derive(Debug, Clone, Copy)]
pub struct KeySpec {
    pub name: &'static str,
    pub section: &'static str,
    pub default: &'static str,
    pub help: &'static str,
}

const fn key(name: &'static str, section: &'static str, default: &'static str, help: &'static str) -> KeySpec {
    KeySpec {
        name,
        section,
        default,
        help,
    }
}

/// Alias that sets `gnb-arch` and `ue-arch` together (`gnb,ue`).
pub const ARCH_ALIAS: &str = "arch";

pub const KEYS: &[KeySpec] = &[
    key("scs", "numerology", "120", "subcarrier spacing in kHz (120 or 240)"),
    key("nss", "numerology", "64", "SS blocks per burst {8,16,32,64}"),
    key("tss", "numerology", "20", "SS burst period in ms {5,10,20,40,80,160}"),
    key(
        "diversity",
        "numerology",
        "off",
        "frequency repetition of SS blocks (on/off)",
    ),
    key("bandwidth", "numerology", "400000000", "carrier bandwidth in Hz"),
    key("gnb", "beams", "64", "gNB antenna elements"),
    key("ue", "beams", "16", "UE antenna elements, or omni"),
    key(
        "gnb-arch",
        "beams",
        "analog",
        "gNB beamforming: analog, hybrid or digital",
    ),
    key(
        "ue-arch",
        "beams",
        "analog",
        "UE beamforming: analog, hybrid or digital",
    ),
    key("nu", "beams", "2", "hybrid divisor of simultaneous beams"),
    key("beamwidth-table", "beams", "4:60,16:26,64:13", "elements:degrees pairs"),
    key("framework", "framework", "sa-dl", "sa-dl, nsa-dl or nsa-ul"),
    key("lte-latency", "framework", "4", "LTE control latency in ms {10,4,0.8}"),
    key("srs-period", "framework", "none", "SRS period in ms, or none"),
    key("srs-miss", "framework", "1", "missed SRS that declare a link failure"),
    key(
        "expected-wait",
        "framework",
        "off",
        "add T_SS/2 to the initial-access total (on/off)",
    ),
    key(
        "rach-scs",
        "framework",
        "60",
        "RACH subcarrier spacing in kHz (60 or 120)",
    ),
    key("csi-option", "tracking", "1", "CSI-RS placement option (1 or 2)"),
    key(
        "csi-period-slots",
        "tracking",
        "5",
        "CSI-RS period in slots {5,...,640}",
    ),
    key("csi-symbols", "tracking", "1", "OFDM symbols per CSI-RS {1,2,4}"),
    key(
        "rho",
        "tracking",
        "1",
        "fraction of the bandwidth used by a CSI-RS, (0,1]",
    ),
    key("csi-rx", "tracking", "1", "directions each UE monitors (1..4)"),
    key("users", "tracking", "5", "connected users per sector"),
    key("density", "channel", "10", "gNB density per km²"),
    key("radius", "channel", "500", "simulation disc radius in m"),
    key("ptx", "channel", "30", "gNB transmit power in dBm"),
    key("carrier", "channel", "28", "carrier frequency in GHz"),
    key("threshold", "channel", "-5", "detection SNR threshold in dB"),
    key("nf", "channel", "7", "UE noise figure in dB"),
    key("los-alpha", "channel", "61.4", "LOS pathloss intercept in dB"),
    key("los-beta", "channel", "2", "LOS pathloss exponent"),
    key("los-sigma", "channel", "5.8", "LOS shadowing sigma in dB"),
    key("nlos-alpha", "channel", "72", "NLOS pathloss intercept in dB"),
    key("nlos-beta", "channel", "2.92", "NLOS pathloss exponent"),
    key("nlos-sigma", "channel", "8.7", "NLOS shadowing sigma in dB"),
    key("los-decay", "channel", "67.1", "LOS probability decay length in m"),
    key("outage-decay", "channel", "30", "outage probability decay length in m"),
    key("outage-offset", "channel", "5.2", "outage probability offset"),
    key("trials", "montecarlo", "100000", "Monte Carlo trials per point"),
    key("seed", "montecarlo", "1", "Monte Carlo seed"),
];

pub fn key_spec(name: &str) -> Option<&'static KeySpec> {
    KEYS.iter().find(|k| k.name == name)
}

/// Whether `name` is a parameter (or the `arch` alias).
pub fn is_known(name: &str) -> bool {
    name == ARCH_ALIAS || key_spec(name).is_some()
}

/// A constraint violation found by [`Params::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: String,
    pub constraint: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.constraint)
    }
}

impl From<Error> for Violation {
    fn from(e: Error) -> Self {
        match e {
            Error::Validation { field, constraint } => Violation { field, constraint },
            Error::MissingParameter(p) => Violation {
                field: p,
                constraint: "required".into(),
            },
            other => Violation {
                field: "config".into(),
                constraint: other.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    values: BTreeMap<&'static str, String>,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            values: KEYS.iter().map(|k| (k.name, k.default.to_string())).collect(),
        }
    }
}

fn parse_bool(key: &str, s: &str) -> Result<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "on" | "true" | "yes" | "1" => Ok(true),
        "off" | "false" | "no" | "0" => Ok(false),
        _ => Err(Error::validation(key, format!("expected on or off (got {s})"))),
    }
}

fn toml_scalar(key: &str, value: &toml::Value) -> Result<String> {
    match value {
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Integer(i) => Ok(i.to_string()),
        toml::Value::Float(f) => Ok(f.to_string()),
        toml::Value::Boolean(b) => Ok(if *b { "on" } else { "off" }.to_string()),
        _ => Err(Error::validation(key, "expected a string, number or boolean")),
    }
}

impl Params {
    /// Sets a parameter from its textual value. `arch` takes `gnb,ue`.
    pub fn set(&mut self, name: &str, value: &str) -> Result<()> {
        if name == ARCH_ALIAS {
            let (g, u) = value
                .split_once(',')
                .ok_or_else(|| Error::validation(ARCH_ALIAS, format!("expected gnb-arch,ue-arch (got {value})")))?;
            self.set("gnb-arch", g.trim())?;
            return self.set("ue-arch", u.trim());
        }
        let spec = key_spec(name).ok_or_else(|| Error::validation(name, "unknown parameter"))?;
        self.values.insert(spec.name, value.trim().to_string());
        Ok(())
    }

    /// The value as supplied (or its default). Panics on an unknown key.
    pub fn get(&self, name: &str) -> String {
        if name == ARCH_ALIAS {
            return format!("{},{}", self.get("gnb-arch"), self.get("ue-arch"));
        }
        self.values
            .get(name)
            .cloned()
            .unwrap_or_else(|| panic!("unknown parameter {name}"))
    }

    fn parse<T: FromStr>(&self, name: &str, what: &str) -> Result<T> {
        let raw = self.get(name);
        raw.parse()
            .map_err(|_| Error::validation(name, format!("expected {what} (got {raw})")))
    }

    fn uint(&self, name: &str) -> Result<u32> {
        self.parse(name, "a non-negative integer")
    }

    fn real(&self, name: &str) -> Result<f64> {
        let x: f64 = self.parse(name, "a number")?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::validation(name, format!("expected a finite number (got {x})")))
        }
    }

    fn flag(&self, name: &str) -> Result<bool> {
        parse_bool(name, &self.get(name))
    }

    fn millis(&self, name: &str) -> Result<Millis> {
        let x = self.real(name)?;
        Millis::from_f64(x).ok_or_else(|| Error::validation(name, format!("not a duration (got {x})")))
    }

    /// Parses a TOML config with one table per section.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::validation("config", e.message().to_string()))?;
        let mut params = Params::default();
        // Apply the alias first so explicit gnb-arch/ue-arch win.
        let mut entries: Vec<(String, String)> = Vec::new();
        for (section, body) in &table {
            let toml::Value::Table(body) = body else {
                return Err(Error::validation(
                    section.as_str(),
                    "top-level entries must be [section] tables",
                ));
            };
            for (name, value) in body {
                let expected = if name == ARCH_ALIAS {
                    Some("beams")
                } else {
                    key_spec(name).map(|k| k.section)
                };
                match expected {
                    None => return Err(Error::validation(name.as_str(), "unknown parameter")),
                    Some(s) if s != section => {
                        return Err(Error::validation(
                            name.as_str(),
                            format!("belongs in section [{s}], not [{section}]"),
                        ))
                    }
                    Some(_) => entries.push((name.clone(), toml_scalar(name, value)?)),
                }
            }
        }
        entries.sort_by_key(|(n, _)| n != ARCH_ALIAS);
        for (name, value) in entries {
            params.set(&name, &value)?;
        }
        Ok(params)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    /// Renders every parameter as a config file.
    pub fn to_toml_string(&self) -> String {
        let mut out = String::new();
        let mut section = "";
        for k in KEYS {
            if k.section != section {
                if !section.is_empty() {
                    out.push('\n');
                }
                out.push_str(&format!("[{}]\n", k.section));
                section = k.section;
            }
            out.push_str(&format!("{} = {:?}\n", k.name, self.get(k.name)));
        }
        out
    }

    pub fn numerology(&self) -> Result<Numerology> {
        let n = numerology_from_spacing(self.uint("scs")?)?;
        n.require_beam_management()?;
        Ok(n)
    }

    pub fn burst(&self) -> Result<SsBurstConfig> {
        SsBurstConfig::new(
            self.uint("nss")?,
            self.uint("tss")?,
            self.numerology()?,
            self.flag("diversity")?,
            self.real("bandwidth")?,
        )
    }

    pub fn beamwidth_table(&self) -> Result<BeamwidthTable> {
        let raw = self.get("beamwidth-table");
        let bad = || Error::validation("beamwidth-table", format!("expected M:degrees pairs (got {raw})"));
        let mut entries = Vec::new();
        for pair in raw.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (m, deg) = pair.split_once(':').ok_or_else(bad)?;
            entries.push((
                m.trim().parse().map_err(|_| bad())?,
                deg.trim().parse().map_err(|_| bad())?,
            ));
        }
        BeamwidthTable::new(entries)
    }

    fn arch(&self, name: &str) -> Result<BfArchitecture> {
        let arch = BfArchitecture::parse(&self.get(name), self.uint("nu")?).map_err(|_| {
            Error::validation(
                name,
                format!("expected analog, hybrid or digital (got {})", self.get(name)),
            )
        })?;
        Ok(arch)
    }

    pub fn gnb(&self) -> Result<Transceiver> {
        let arch = self.arch("gnb-arch")?;
        if arch == BfArchitecture::Omni {
            return Err(Error::validation("gnb-arch", "the gNB cannot be omnidirectional"));
        }
        Transceiver::new(ArrayConfig::gnb(self.uint("gnb")?), arch)
    }

    /// The UE transceiver; `ue = omni` implies omnidirectional reception
    /// whatever `ue-arch` says.
    pub fn ue(&self) -> Result<Transceiver> {
        if self.get("ue").eq_ignore_ascii_case("omni") {
            return Transceiver::new(ArrayConfig::ue_omni(), BfArchitecture::Omni);
        }
        let elements: u32 = self.parse("ue", "an element count or omni")?;
        let arch = self.arch("ue-arch")?;
        if arch == BfArchitecture::Omni {
            return Err(Error::validation(
                "ue-arch",
                "use ue = omni for omnidirectional reception",
            ));
        }
        Transceiver::new(ArrayConfig::ue(elements), arch)
    }

    pub fn sweep_plan(&self) -> Result<SweepPlan> {
        let table = self.beamwidth_table()?;
        sweep_block_count(self.gnb()?.capability(&table)?, self.ue()?.capability(&table)?)
    }

    pub fn srs(&self) -> Result<Option<SrsConfig>> {
        if self.get("srs-period").eq_ignore_ascii_case("none") {
            return Ok(None);
        }
        SrsConfig::new(self.millis("srs-period")?, self.uint("srs-miss")?).map(Some)
    }

    pub fn framework(&self) -> Result<FrameworkConfig> {
        let kind = FrameworkKind::parse(&self.get("framework"))?;
        if kind.is_standalone() {
            return Ok(FrameworkConfig::standalone());
        }
        FrameworkConfig::non_standalone(kind, self.millis("lte-latency")?, self.srs()?)
    }

    pub fn expected_wait(&self) -> Result<bool> {
        self.flag("expected-wait")
    }

    pub fn rach_scs(&self) -> Result<u32> {
        let scs = self.uint("rach-scs")?;
        rach_bandwidth_hz(scs)?;
        Ok(scs)
    }

    pub fn csi(&self) -> Result<CsiRsConfig> {
        CsiRsConfig::new(
            CsiOption::parse(&self.get("csi-option"))?,
            self.uint("csi-period-slots")?,
            self.uint("csi-symbols")?,
            self.real("rho")?,
            self.uint("csi-rx")?,
        )
    }

    pub fn scenario(&self, gnb_beams: u32) -> Result<TrackingScenario> {
        TrackingScenario::new(self.uint("users")?, gnb_beams, self.uint("csi-rx")?)
    }

    pub fn deployment(&self) -> Result<DeploymentModel> {
        let model = DeploymentModel {
            gnb_density_per_km2: self.real("density")?,
            region_radius_m: self.real("radius")?,
            tx_power_dbm: self.real("ptx")?,
            carrier_ghz: self.real("carrier")?,
            snr_threshold_db: self.real("threshold")?,
            noise_figure_db: self.real("nf")?,
            bandwidth_per_rep_hz: f64::from(SS_BLOCK_SUBCARRIERS) * self.numerology()?.spacing_hz(),
        };
        model.validate()?;
        Ok(model)
    }

    pub fn channel(&self) -> Result<ChannelParams> {
        let fit = |p: &str| -> Result<PathlossFit> {
            Ok(PathlossFit {
                intercept_db: self.real(&format!("{p}-alpha"))?,
                exponent: self.real(&format!("{p}-beta"))?,
                shadow_sigma_db: self.real(&format!("{p}-sigma"))?,
            })
        };
        let params = ChannelParams {
            pl_los: fit("los")?,
            pl_nlos: fit("nlos")?,
            los_decay_m: self.real("los-decay")?,
            outage_decay_m: self.real("outage-decay")?,
            outage_offset: self.real("outage-offset")?,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn monte_carlo(&self, threads: usize) -> Result<MonteCarlo> {
        let trials: u64 = self.parse("trials", "a trial count")?;
        if trials < MIN_TRIALS {
            return Err(Error::validation(
                "trials",
                format!("at least {MIN_TRIALS} trials are required (got {trials})"),
            ));
        }
        Ok(MonteCarlo {
            trials,
            seed: self.parse("seed", "a 64-bit seed")?,
            threads,
        })
    }

    /// Every constraint the configuration violates, without stopping at the
    /// first one.
    pub fn validate(&self) -> Vec<Violation> {
        let mut found: Vec<Violation> = Vec::new();
        let mut push = |r: Result<()>| {
            if let Err(e) = r {
                let v = Violation::from(e);
                if !found.contains(&v) {
                    found.push(v);
                }
            }
        };

        let num = self.numerology();
        let num_ok = num.as_ref().ok().copied();
        push(num.map(|_| ()));
        push(self.uint("nss").and_then(numerology::check_n_ss));
        push(self.uint("tss").and_then(numerology::check_ss_period));
        if let Some(n) = num_ok {
            push(
                self.flag("diversity")
                    .and_then(|d| numerology::check_bandwidth(n, d, self.real("bandwidth")?)),
            );
        } else {
            push(self.flag("diversity").map(|_| ()));
            push(self.real("bandwidth").map(|_| ()));
        }

        push(self.beamwidth_table().map(|_| ()));
        if let Ok(table) = self.beamwidth_table() {
            push(self.gnb().and_then(|t| t.capability(&table)).map(|_| ()));
            push(self.ue().and_then(|t| t.capability(&table)).map(|_| ()));
        }

        push(self.framework().map(|_| ()));
        push(self.srs().map(|_| ()));
        push(self.expected_wait().map(|_| ()));
        push(self.rach_scs().map(|_| ()));

        push(CsiOption::parse(&self.get("csi-option")).map(|_| ()));
        push(self.uint("csi-period-slots").and_then(tracking::check_period_slots));
        push(self.uint("csi-symbols").and_then(tracking::check_symbols));
        push(self.real("rho").and_then(tracking::check_rho));
        push(self.uint("csi-rx").and_then(tracking::check_rx));
        push(self.uint("users").and_then(|u| {
            if u == 0 {
                Err(Error::validation("users", "N_user must be at least 1"))
            } else {
                Ok(())
            }
        }));

        if num_ok.is_some() {
            push(self.deployment().map(|_| ()));
        }
        push(self.channel().map(|_| ()));
        push(self.monte_carlo(0).map(|_| ()));
        found
    }
}
