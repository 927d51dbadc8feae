use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use ansec::{CsiError, SystemConfig};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "ansec",
    version,
    about = "Secrecy rates of artificial-noise beamforming over Rayleigh fading"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Closed-form rates at one SNR.
    Rate,
    /// Closed-form and large-array rates over an SNR range.
    Sweep,
    /// Best fixed power split per SNR.
    OptPhi,
    /// Adaptive-strategy rate per SNR next to the fixed-split optimum.
    OptPhiAdaptive,
    /// Exact critical SNR and its closed-form upper bound.
    CriticalSnr,
    /// Critical-SNR table for Na in {2,4,6,8,10} and error variance in {0,0.1,0.2}.
    Table1,
    /// Compare closed forms against Monte Carlo; exit 1 on any 3-stderr violation.
    Validate,
}

/// Flags shared by every subcommand. Unset flags fall back to the config
/// file, then to built-in defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Transmit antennas.
    #[arg(long, global = true)]
    pub na: Option<u32>,
    /// Eavesdropper antennas (colluding).
    #[arg(long, global = true)]
    pub ne: Option<u32>,
    /// SNR in dB: a value or start:stop:step.
    #[arg(long = "snr-db", global = true, allow_hyphen_values = true)]
    pub snr_db: Option<String>,
    /// Fraction of power on the information signal, in (0, 1), or "opt".
    #[arg(long, global = true)]
    pub phi: Option<String>,
    /// Channel-estimation error variance in [0, 1).
    #[arg(long = "sigma-tilde2", global = true)]
    pub sigma_tilde2: Option<f64>,
    /// Monte Carlo draws.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Monte Carlo master seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Gauss–Laguerre order for opt-phi-adaptive.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// CSV destination; standard output if absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Flat key=value file supplying defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// opt-phi: emit the coarse search grid instead of the optimum.
    #[arg(long = "dump-grid", global = true)]
    pub dump_grid: bool,
    /// Evaluate sweep points one at a time.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhiChoice {
    Fixed(f64),
    Optimal,
}

/// Fully resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub command: Command,
    pub na: u32,
    pub ne: u32,
    pub snr_db: Vec<f64>,
    /// The SNR flag was a start:stop:step range.
    pub snr_is_range: bool,
    pub phi: PhiChoice,
    pub sigma_tilde2: f64,
    pub samples: usize,
    pub seed: u64,
    pub order: usize,
    pub output: Option<PathBuf>,
    pub dump_grid: bool,
    pub sequential: bool,
}

impl RunSpec {
    pub fn system(&self) -> SystemConfig {
        SystemConfig::new(self.na, self.ne).expect("validated in from_cli")
    }

    pub fn csi(&self) -> CsiError {
        CsiError::new(self.sigma_tilde2).expect("validated in from_cli")
    }

    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let file = match &cli.flags.config {
            Some(path) => read_config(path)?,
            None => HashMap::new(),
        };
        let f = &cli.flags;
        let pick = |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).cloned());

        let na: u32 = parse_or(pick(f.na.map(|v| v.to_string()), "na"), "na", 4)?;
        let ne: u32 = parse_or(pick(f.ne.map(|v| v.to_string()), "ne"), "ne", 1)?;
        SystemConfig::new(na, ne).map_err(|e| CliError::Usage(e.to_string()))?;

        let snr_text = pick(f.snr_db.clone(), "snr-db").unwrap_or_else(|| "10".into());
        let (snr_db, snr_is_range) = parse_snr(&snr_text)?;

        let phi = match pick(f.phi.clone(), "phi").as_deref() {
            None => PhiChoice::Fixed(0.5),
            Some("opt") => PhiChoice::Optimal,
            Some(s) => {
                let v: f64 = parse_value(s, "phi")?;
                if !(v > 0.0 && v < 1.0) {
                    return Err(CliError::Usage(format!(
                        "phi = {v} must lie in (0, 1) or be \"opt\""
                    )));
                }
                PhiChoice::Fixed(v)
            }
        };

        let sigma_tilde2: f64 = parse_or(
            pick(f.sigma_tilde2.map(|v| v.to_string()), "sigma-tilde2"),
            "sigma-tilde2",
            0.0,
        )?;
        CsiError::new(sigma_tilde2).map_err(|e| CliError::Usage(e.to_string()))?;

        let samples: usize = parse_or(
            pick(f.samples.map(|v| v.to_string()), "samples"),
            "samples",
            100_000,
        )?;
        let seed: u64 = parse_or(pick(f.seed.map(|v| v.to_string()), "seed"), "seed", 1)?;
        let order: usize = parse_or(pick(f.order.map(|v| v.to_string()), "order"), "order", 64)?;
        let output = f
            .output
            .clone()
            .or_else(|| file.get("output").map(PathBuf::from));
        let dump_grid = f.dump_grid || file.get("dump-grid").is_some_and(|v| v == "true");
        let sequential = f.sequential || file.get("sequential").is_some_and(|v| v == "true");

        Ok(Self {
            command: cli.command,
            na,
            ne,
            snr_db,
            snr_is_range,
            phi,
            sigma_tilde2,
            samples,
            seed,
            order,
            output,
            dump_grid,
            sequential,
        })
    }
}

fn parse_value<T: std::str::FromStr>(text: &str, key: &str) -> Result<T, CliError> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid value {text:?} for {key}")))
}

fn parse_or<T: std::str::FromStr>(
    text: Option<String>,
    key: &str,
    default: T,
) -> Result<T, CliError> {
    text.map_or(Ok(default), |t| parse_value(&t, key))
}

/// Parses "x" or "start:stop:step" (stop inclusive) into dB values.
pub fn parse_snr(text: &str) -> Result<(Vec<f64>, bool), CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [one] => {
            let v: f64 = parse_value(one, "snr-db")?;
            if !v.is_finite() {
                return Err(CliError::Usage(format!("snr-db {v} must be finite")));
            }
            Ok((vec![v], false))
        }
        [start, stop, step] => {
            let (start, stop, step): (f64, f64, f64) = (
                parse_value(start, "snr-db start")?,
                parse_value(stop, "snr-db stop")?,
                parse_value(step, "snr-db step")?,
            );
            if step.is_nan()
                || step <= 0.0
                || !start.is_finite()
                || !stop.is_finite()
                || stop < start
            {
                return Err(CliError::Usage(format!(
                    "snr-db range {text:?} needs finite start <= stop and step > 0"
                )));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            if count > 1_000_000 {
                return Err(CliError::Usage(format!(
                    "snr-db range {text:?} has too many points"
                )));
            }
            // Index-based to avoid drift; rounded so printed values stay short.
            let values = (0..count)
                .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
                .collect();
            Ok((values, true))
        }
        _ => Err(CliError::Usage(format!(
            "snr-db {text:?} is neither a value nor start:stop:step"
        ))),
    }
}

/// Reads `key = value` lines; `#` starts a comment. Keys use the long flag
/// names, with `_` accepted for `-`.
pub fn read_config(path: &Path) -> Result<HashMap<String, String>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<HashMap<String, String>, CliError> {
    const KEYS: [&str; 11] = [
        "na",
        "ne",
        "snr-db",
        "phi",
        "sigma-tilde2",
        "samples",
        "seed",
        "order",
        "output",
        "dump-grid",
        "sequential",
    ];
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key=value", lineno + 1))
        })?;
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "config line {}: unknown key {key:?}",
                lineno + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(args: &[&str]) -> Result<RunSpec, CliError> {
        let cli =
            Cli::try_parse_from(std::iter::once("ansec").chain(args.iter().copied())).unwrap();
        RunSpec::from_cli(&cli)
    }

    #[test]
    fn ranges_include_stop() {
        let (v, range) = parse_snr("-10:0:2.5").unwrap();
        assert!(range);
        assert_eq!(v, vec![-10.0, -7.5, -5.0, -2.5, 0.0]);
        let (v, _) = parse_snr("0:1:0.1").unwrap();
        assert_eq!(v.len(), 11);
        assert_eq!(v[3], 0.3);
    }

    #[test]
    fn bad_ranges_are_usage_errors() {
        for text in ["0:1:0", "1:0:1", "0:1", "a", "0:1:-1", "inf"] {
            assert!(matches!(parse_snr(text), Err(CliError::Usage(_))), "{text}");
        }
    }

    #[test]
    fn defaults_and_overrides() {
        let s = spec(&["rate"]).unwrap();
        assert_eq!(
            (s.na, s.ne, s.phi, s.snr_db.clone()),
            (4, 1, PhiChoice::Fixed(0.5), vec![10.0])
        );
        let s = spec(&[
            "sweep", "--na", "8", "--ne", "2", "--phi", "opt", "--snr-db", "-5:5:5",
        ])
        .unwrap();
        assert_eq!((s.na, s.ne, s.phi), (8, 2, PhiChoice::Optimal));
        assert_eq!(s.snr_db, vec![-5.0, 0.0, 5.0]);
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(matches!(
            spec(&["rate", "--na", "2", "--ne", "2"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            spec(&["rate", "--phi", "1.0"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            spec(&["rate", "--phi", "best"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            spec(&["rate", "--sigma-tilde2", "1"]),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn config_file_supplies_defaults() {
        let map =
            parse_config("# setup\nna = 6\nsigma_tilde2=0.1  # error\n\nsnr-db = 0:2:1\n").unwrap();
        assert_eq!(map["na"], "6");
        assert_eq!(map["sigma-tilde2"], "0.1");
        assert!(parse_config("bogus = 1").is_err());
        assert!(parse_config("na 4").is_err());
    }
}
