//! Data series behind the evaluation figures and tables.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::eval::Target;
use super::params::Params;
use super::sweep::{Axis, SweepSpec};

/// A named figure: a target, fixed parameters and the axes swept.
#[derive(Debug, Clone, Copy)]
pub struct Figure {
    pub name: &'static str,
    pub caption: &'static str,
    pub target: Target,
    pub fixed: &'static [(&'static str, &'static str)],
    /// `(keys joined by '+', values)`.
    pub axes: &'static [(&'static str, &'static [&'static str])],
}

const PAIRS: &[&str] = &["4+4", "16+4", "64+4", "16+16", "64+16", "64+omni"];
const NSS: &[&str] = &["8", "16", "32", "64"];
const TSS: &[&str] = &["5", "10", "20", "40", "80", "160"];
const USERS: &[&str] = &["5", "10", "20"];
const RX: &[&str] = &["1", "2", "3", "4"];
const SYMBOLS: &[&str] = &["1", "2", "4"];
const RHO: &[&str] = &["0.072", "0.1", "0.144", "0.2", "0.4", "0.5", "1"];
const DENSITY: &[&str] = &["10", "20", "30", "40", "50", "60"];

const fn ia_figure(
    name: &'static str,
    caption: &'static str,
    fixed: &'static [(&'static str, &'static str)],
) -> Figure {
    Figure {
        name,
        caption,
        target: Target::IaDelay,
        fixed,
        axes: &[("gnb+ue", PAIRS), ("nss", NSS)],
    }
}

pub const ANALYTIC_FIGURES: &[Figure] = &[
    ia_figure(
        "fig9a",
        "T_IA vs N_SS, analog gNB and UE (T_SS = 20 ms, 240 kHz)",
        &[
            ("tss", "20"),
            ("scs", "240"),
            ("gnb-arch", "analog"),
            ("ue-arch", "analog"),
        ],
    ),
    ia_figure(
        "fig9b",
        "T_IA vs N_SS, analog gNB, hybrid UE (T_SS = 20 ms, 240 kHz)",
        &[
            ("tss", "20"),
            ("scs", "240"),
            ("gnb-arch", "analog"),
            ("ue-arch", "hybrid"),
        ],
    ),
    ia_figure(
        "fig9c",
        "T_IA vs N_SS, analog gNB, digital UE (T_SS = 20 ms, 240 kHz)",
        &[
            ("tss", "20"),
            ("scs", "240"),
            ("gnb-arch", "analog"),
            ("ue-arch", "digital"),
        ],
    ),
    ia_figure(
        "fig9d",
        "T_IA vs N_SS, digital gNB, analog UE (T_SS = 20 ms, 240 kHz)",
        &[
            ("tss", "20"),
            ("scs", "240"),
            ("gnb-arch", "digital"),
            ("ue-arch", "analog"),
        ],
    ),
    Figure {
        name: "fig10",
        caption: "T_IA vs T_SS, analog gNB, hybrid UE (N_SS = 64, 240 kHz)",
        target: Target::IaDelay,
        fixed: &[
            ("nss", "64"),
            ("scs", "240"),
            ("gnb-arch", "analog"),
            ("ue-arch", "hybrid"),
        ],
        axes: &[("gnb+ue", PAIRS), ("tss", TSS)],
    },
    Figure {
        name: "fig11a",
        caption: "T_tr vs N_user and N_CSI,RX for both options (T_SS = 20 ms, 120 kHz, k = 50)",
        target: Target::TrackingDelay,
        fixed: &[("tss", "20"), ("scs", "120"), ("gnb", "64")],
        axes: &[
            ("csi-option", &["1", "2"]),
            ("csi-period-slots", &["5", "80"]),
            ("users", USERS),
            ("csi-rx", RX),
        ],
    },
    Figure {
        name: "fig11b",
        caption: "T_tr vs T_SS for option 1, T_CSI = 0.625 ms (120 kHz, k = 50)",
        target: Target::TrackingDelay,
        fixed: &[
            ("csi-option", "1"),
            ("csi-period-slots", "5"),
            ("scs", "120"),
            ("gnb", "64"),
        ],
        axes: &[("tss", &["10", "20", "40"]), ("users", USERS), ("csi-rx", RX)],
    },
    Figure {
        name: "fig12",
        caption: "T_IA for 120 vs 240 kHz, analog gNB and UE (N_SS = 64, T_SS = 20 ms)",
        target: Target::IaDelay,
        fixed: &[
            ("nss", "64"),
            ("tss", "20"),
            ("gnb-arch", "analog"),
            ("ue-arch", "analog"),
        ],
        axes: &[("scs", &["120", "240"]), ("gnb+ue", PAIRS)],
    },
    Figure {
        name: "fig13a",
        caption: "SS overhead vs N_SS (T_SS = 5 ms)",
        target: Target::Overhead,
        fixed: &[("tss", "5")],
        axes: &[("scs", &["120", "240"]), ("diversity", &["off", "on"]), ("nss", NSS)],
    },
    Figure {
        name: "fig13b",
        caption: "SS overhead vs T_SS (N_SS = 64)",
        target: Target::Overhead,
        fixed: &[("nss", "64")],
        axes: &[("scs", &["120", "240"]), ("diversity", &["off", "on"]), ("tss", TSS)],
    },
    Figure {
        name: "fig14",
        caption: "CSI-RS per burst period vs T_SS (120 kHz)",
        target: Target::Neighbors,
        fixed: &[("scs", "120")],
        axes: &[
            ("csi-option", &["1", "2"]),
            ("csi-period-slots", &["10", "20", "40", "80"]),
            ("tss", TSS),
        ],
    },
    Figure {
        name: "fig16a",
        caption: "CSI-RS overhead vs N_symb and rho (T_SS = 20 ms, 120 kHz, option 1)",
        target: Target::Overhead,
        fixed: &[("tss", "20"), ("scs", "120"), ("csi-option", "1")],
        axes: &[
            ("csi-period-slots", &["40", "5"]),
            ("csi-symbols", SYMBOLS),
            ("rho", RHO),
        ],
    },
    Figure {
        name: "fig16b",
        caption: "Total overhead vs N_symb and rho (N_SS = 64, T_SS = 20 ms, T_CSI = 5 slots)",
        target: Target::Overhead,
        fixed: &[
            ("nss", "64"),
            ("tss", "20"),
            ("csi-period-slots", "5"),
            ("csi-option", "1"),
        ],
        axes: &[
            ("scs", &["240", "120"]),
            ("diversity", &["off", "on"]),
            ("csi-symbols", SYMBOLS),
            ("rho", RHO),
        ],
    },
    Figure {
        name: "table7",
        caption: "Standalone beam-reporting delay (T_SS = 20 ms, 120 kHz)",
        target: Target::ReportDelay,
        fixed: &[("tss", "20"), ("scs", "120"), ("framework", "sa-dl"), ("ue", "4")],
        axes: &[
            ("gnb", &["4", "16", "64"]),
            ("gnb-arch", &["analog", "digital"]),
            ("nss", &["8", "64"]),
        ],
    },
    Figure {
        name: "table8",
        caption: "Standalone RLF recovery delay (120 kHz)",
        target: Target::Rlf,
        fixed: &[("scs", "120"), ("framework", "sa-dl")],
        axes: &[
            (
                "nss+tss+gnb-arch+ue-arch",
                &["8+20+analog+analog", "64+40+digital+analog", "64+80+digital+analog"],
            ),
            ("gnb+ue", &["4+4", "64+omni", "64+16"]),
        ],
    },
    Figure {
        name: "table9",
        caption: "Beam-reporting overhead (N_SS = 64, T_SS = 20 ms)",
        target: Target::Overhead,
        fixed: &[("nss", "64"), ("tss", "20"), ("scs", "120")],
        axes: &[
            ("framework", &["sa-dl", "nsa-dl"]),
            ("gnb", &["4", "16", "64"]),
            ("gnb-arch", &["analog", "digital"]),
            ("rach-scs", &["60", "120"]),
        ],
    },
];

pub const MONTE_CARLO_FIGURES: &[Figure] = &[
    Figure {
        name: "fig7",
        caption: "Misdetection probability vs gNB density (120 kHz, no diversity)",
        target: Target::Misdetection,
        fixed: &[
            ("scs", "120"),
            ("diversity", "off"),
            ("gnb-arch", "analog"),
            ("ue-arch", "analog"),
        ],
        axes: &[
            ("gnb+ue", &["4+4", "16+4", "64+4", "64+16", "64+omni"]),
            ("density", DENSITY),
        ],
    },
    Figure {
        name: "fig8",
        caption: "Misdetection probability vs density, spacing and diversity (4x4 arrays)",
        target: Target::Misdetection,
        fixed: &[("gnb", "4"), ("ue", "4"), ("gnb-arch", "analog"), ("ue-arch", "analog")],
        axes: &[
            ("scs", &["120", "240"]),
            ("diversity", &["off", "on"]),
            ("density", DENSITY),
        ],
    },
];

pub fn all_figures() -> impl Iterator<Item = &'static Figure> {
    ANALYTIC_FIGURES.iter().chain(MONTE_CARLO_FIGURES)
}

pub fn find(name: &str) -> Option<&'static Figure> {
    all_figures().find(|f| f.name == name)
}

impl Figure {
    /// The sweep for this figure on top of `base` (config and overrides).
    pub fn sweep(&self, base: &Params) -> Result<SweepSpec> {
        let mut base = base.clone();
        for (k, v) in self.fixed {
            base.set(k, v)?;
        }
        let axes = self
            .axes
            .iter()
            .map(|(keys, values)| Axis::new(&keys.split('+').collect::<Vec<_>>(), values))
            .collect::<Result<_>>()?;
        Ok(SweepSpec {
            target: self.target,
            base,
            axes,
        })
    }
}

/// Writes `<name>.csv` for every analytic figure (and the Monte Carlo ones
/// when asked) into `dir`. Returns the files written.
pub fn write_figures(dir: &Path, base: &Params, monte_carlo: bool, threads: usize) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let figures: Vec<&Figure> = if monte_carlo {
        all_figures().collect()
    } else {
        ANALYTIC_FIGURES.iter().collect()
    };
    let mut written = Vec::new();
    for fig in figures {
        let table = fig.sweep(base)?.run(threads)?;
        let path = dir.join(format!("{}.csv", fig.name));
        let file = fs::File::create(&path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        table.write_csv(std::io::BufWriter::new(file)).map_err(|e| match e {
            Error::Io { source, .. } => Error::Io {
                path: path.display().to_string(),
                source,
            },
            other => other,
        })?;
        written.push(path);
    }
    Ok(written)
}
