//! Command-line front-end.
//!
//! ```text
//! nr-beammgr <command> [--config FILE] [--output FILE] [--<key> VALUE]...
//! ```
//!
//! Every config key doubles as a `--key value` flag that overrides the config
//! file. Results go out as CSV: the input parameters echoed first, then the
//! metrics. Exit status is 0 on success, 1 on a validation error and 2 on an
//! I/O error.

pub mod eval;
pub mod figures;
pub mod params;
pub mod sweep;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Arg, ArgAction, ArgMatches, Command};

use crate::error::{Error, Result};

pub use eval::{Target, TARGETS};
pub use params::{Params, Violation, KEYS};
pub use sweep::{Axis, SweepSpec, Table};

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "NR_BEAMMGR_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_IO: i32 = 2;

fn key_args() -> Vec<Arg> {
    let alias = Arg::new(params::ARCH_ALIAS)
        .long(params::ARCH_ALIAS)
        .value_name("GNB,UE")
        .help("gNB and UE beamforming architectures together")
        .help_heading("Parameters");
    std::iter::once(alias)
        .chain(KEYS.iter().map(|k| {
            Arg::new(k.name)
                .long(k.name)
                .value_name("VALUE")
                .allow_hyphen_values(true)
                .help(format!("{} [{}; default {}]", k.help, k.section, k.default))
                .help_heading("Parameters")
        }))
        .collect()
}

fn common_args(cmd: Command) -> Command {
    cmd.arg(
        Arg::new("config")
            .long("config")
            .short('c')
            .value_name("FILE")
            .value_parser(clap::value_parser!(PathBuf))
            .help("TOML config file with one [section] per module"),
    )
    .args(key_args())
}

fn output_arg() -> Arg {
    Arg::new("output")
        .long("output")
        .short('o')
        .value_name("FILE")
        .value_parser(clap::value_parser!(PathBuf))
        .help("write CSV here instead of stdout")
}

pub fn command() -> Command {
    let mut cmd = Command::new("nr-beammgr")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Timing, overhead and misdetection analysis of NR beam management at mmWave")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for t in TARGETS {
        cmd = cmd.subcommand(common_args(Command::new(t.name()).about(t.about())).arg(output_arg()));
    }
    cmd.subcommand(
        common_args(Command::new("sweep").about("evaluate a target over a parameter grid"))
            .arg(output_arg())
            .arg(
                Arg::new("target")
                    .long("target")
                    .short('t')
                    .required(true)
                    .value_name("COMMAND")
                    .value_parser(TARGETS.map(|t| t.name()))
                    .help("subcommand evaluated at every grid point"),
            )
            .arg(
                Arg::new("axis")
                    .long("axis")
                    .short('a')
                    .value_name("KEY=V1,V2")
                    .action(ArgAction::Append)
                    .help("sweep axis; KEY1+KEY2=A1+A2,B1+B2 moves keys together"),
            ),
    )
    .subcommand(
        common_args(Command::new("figures").about("regenerate the per-figure CSV data series"))
            .arg(
                Arg::new("out-dir")
                    .long("out-dir")
                    .short('d')
                    .value_name("DIR")
                    .default_value("figures")
                    .value_parser(clap::value_parser!(PathBuf)),
            )
            .arg(
                Arg::new("monte-carlo")
                    .long("monte-carlo")
                    .action(ArgAction::SetTrue)
                    .help("also run the misdetection figures (slow)"),
            ),
    )
    .subcommand(common_args(
        Command::new("validate").about("list every constraint violation"),
    ))
}

/// Worker count from `NR_BEAMMGR_THREADS` (0 = rayon default).
pub fn worker_threads() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::validation(THREADS_ENV, format!("expected a worker count (got {s})"))),
    }
}

fn params_from(m: &ArgMatches) -> Result<Params> {
    let mut p = match m.get_one::<PathBuf>("config") {
        Some(path) => Params::load(path)?,
        None => Params::default(),
    };
    if let Some(v) = m.get_one::<String>(params::ARCH_ALIAS) {
        p.set(params::ARCH_ALIAS, v)?;
    }
    for k in KEYS {
        if let Some(v) = m.get_one::<String>(k.name) {
            p.set(k.name, v)?;
        }
    }
    Ok(p)
}

fn emit(table: &Table, output: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => {
            let file = fs::File::create(path).map_err(|source| io_error(path, source))?;
            table.write_csv(std::io::BufWriter::new(file)).map_err(|e| match e {
                Error::Io { source, .. } => io_error(path, source),
                other => other,
            })
        }
        None => table.write_csv(stdout),
    }
}

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn dispatch(m: &ArgMatches, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let (name, sub) = m.subcommand().expect("subcommand required");
    let params = params_from(sub)?;
    let threads = worker_threads()?;
    match name {
        "validate" => {
            let violations = params.validate();
            let out = (|| -> std::io::Result<()> {
                if violations.is_empty() {
                    writeln!(stdout, "ok")?;
                }
                for v in &violations {
                    writeln!(stdout, "{v}")?;
                }
                Ok(())
            })();
            out.map_err(|source| io_error(Path::new("stdout"), source))?;
            Ok(if violations.is_empty() {
                EXIT_OK
            } else {
                EXIT_VALIDATION
            })
        }
        "sweep" => {
            let target = Target::parse(sub.get_one::<String>("target").expect("required"))?;
            let axes = sub
                .get_many::<String>("axis")
                .into_iter()
                .flatten()
                .map(|s| Axis::parse(s))
                .collect::<Result<Vec<_>>>()?;
            let spec = SweepSpec {
                target,
                base: params,
                axes,
            };
            let _ = writeln!(stderr, "grid points: {}", spec.size());
            let table = spec.run(threads)?;
            emit(&table, sub.get_one::<PathBuf>("output"), stdout)?;
            Ok(EXIT_OK)
        }
        "figures" => {
            let dir = sub.get_one::<PathBuf>("out-dir").expect("has default");
            let written = figures::write_figures(dir, &params, sub.get_flag("monte-carlo"), threads)?;
            for path in written {
                let _ = writeln!(stderr, "wrote {}", path.display());
            }
            Ok(EXIT_OK)
        }
        other => {
            let target = Target::parse(other)?;
            let spec = SweepSpec {
                target,
                base: params,
                axes: Vec::new(),
            };
            let table = spec.run(threads)?;
            emit(&table, sub.get_one::<PathBuf>("output"), stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(stderr, "{text}");
                    EXIT_VALIDATION
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_VALIDATION
                }
            };
        }
    };
    match dispatch(&matches, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_io() {
                EXIT_IO
            } else {
                EXIT_VALIDATION
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["nr-beammgr"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn command_is_well_formed() {
        command().debug_assert();
    }

    #[test]
    fn negative_values_are_accepted() {
        let (code, out, _) = run_args(&["validate", "--ptx", "-200", "--threshold", "-5"]);
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn validation_error_exit_code() {
        let (code, _, err) = run_args(&["ia-delay", "--tss", "7"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(err.contains("tss") && err.contains("T_SS must be in"), "{err}");
        let (code, _, _) = run_args(&["ia-delay", "--bogus", "1"]);
        assert_eq!(code, EXIT_VALIDATION);
    }

    #[test]
    fn missing_config_is_io_error() {
        let (code, _, _) = run_args(&["ia-delay", "--config", "/nonexistent/dir/cfg.toml"]);
        assert_eq!(code, EXIT_IO);
    }
}
