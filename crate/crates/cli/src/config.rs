//! Run configuration: command-line flags layered over an optional key=value file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Args;
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Flags shared by every command. A flag overrides the same key in `--config`.
#[derive(Args, Clone, Debug, Default)]
pub struct Flags {
    /// Key=value configuration file; keys are the long flag names.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Single coupling g.
    #[arg(long)]
    pub g: Option<String>,
    /// Linear scan in g⁻², as lo:hi:n.
    #[arg(long = "g-scan")]
    pub g_scan: Option<String>,
    #[arg(long)]
    pub m0: Option<String>,
    #[arg(long)]
    pub lambda: Option<String>,
    /// Largest penalty strength scanned.
    #[arg(long)]
    pub mu: Option<String>,
    #[arg(long)]
    pub jmax: Option<String>,
    #[arg(long)]
    pub nmax: Option<String>,
    #[arg(long)]
    pub dt: Option<String>,
    #[arg(long)]
    pub dtau: Option<String>,
    #[arg(long)]
    pub steps: Option<String>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long)]
    pub threads: Option<String>,
    /// Also write the circuits used, one text file each.
    #[arg(long = "dump-circuit")]
    pub dump_circuit: bool,
    /// Number of pure-gauge levels.
    #[arg(long)]
    pub levels: Option<String>,
    /// Last time point of a real-time run.
    #[arg(long)]
    pub tmax: Option<String>,
    /// Spacing of recorded time points.
    #[arg(long)]
    pub tstep: Option<String>,
    /// QITE method: direct, a or b.
    #[arg(long)]
    pub method: Option<String>,
    /// Interior fraction for gate certificates.
    #[arg(long)]
    pub interior: Option<String>,
    /// Largest lattice size N.
    #[arg(long)]
    pub size: Option<String>,
}

/// Keys accepted in a configuration file.
const KEYS: [&str; 19] = [
    "g", "g-scan", "m0", "lambda", "mu", "jmax", "nmax", "dt", "dtau", "steps", "out", "threads", "dump-circuit", "levels",
    "tmax", "tstep", "method", "interior", "size",
];

/// Keys that do not change results and are left out of the hash.
const PRESENTATION_KEYS: [&str; 3] = ["out", "threads", "dump-circuit"];

fn parse_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("{}:{}: expected key=value", path.display(), n + 1)))?;
        let key = k.trim().trim_start_matches("--").to_owned();
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Config(format!("{}:{}: unknown key `{key}`", path.display(), n + 1)));
        }
        map.insert(key, v.trim().to_owned());
    }
    Ok(map)
}

/// Merged settings; typed getters record the value each key resolved to.
#[derive(Debug)]
pub struct Settings {
    command: String,
    given: BTreeMap<String, String>,
    resolved: BTreeMap<String, String>,
}

impl Settings {
    pub fn new(command: &str, flags: &Flags) -> Result<Self, CliError> {
        let mut given = match &flags.config {
            Some(path) => parse_file(path)?,
            None => BTreeMap::new(),
        };
        let pairs = [
            ("g", &flags.g),
            ("g-scan", &flags.g_scan),
            ("m0", &flags.m0),
            ("lambda", &flags.lambda),
            ("mu", &flags.mu),
            ("jmax", &flags.jmax),
            ("nmax", &flags.nmax),
            ("dt", &flags.dt),
            ("dtau", &flags.dtau),
            ("steps", &flags.steps),
            ("out", &flags.out),
            ("threads", &flags.threads),
            ("levels", &flags.levels),
            ("tmax", &flags.tmax),
            ("tstep", &flags.tstep),
            ("method", &flags.method),
            ("interior", &flags.interior),
            ("size", &flags.size),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                given.insert(k.to_owned(), v.clone());
            }
        }
        if flags.dump_circuit {
            given.insert("dump-circuit".into(), "true".into());
        }
        Ok(Self { command: command.to_owned(), given, resolved: BTreeMap::new() })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.given.get(key).map(String::as_str)
    }

    fn parse<T: std::str::FromStr>(key: &str, text: &str) -> Result<T, CliError> {
        text.parse().map_err(|_| CliError::Config(format!("--{key}: cannot parse `{text}`")))
    }

    fn record(&mut self, key: &str, value: String) {
        self.resolved.insert(key.to_owned(), value);
    }

    pub fn f64_or(&mut self, key: &str, default: f64) -> Result<f64, CliError> {
        let v = match self.raw(key) {
            Some(t) => Self::parse::<f64>(key, t)?,
            None => default,
        };
        if !v.is_finite() {
            return Err(CliError::Config(format!("--{key} must be finite")));
        }
        self.record(key, v.to_string());
        Ok(v)
    }

    pub fn positive_f64_or(&mut self, key: &str, default: f64) -> Result<f64, CliError> {
        let v = self.f64_or(key, default)?;
        if v <= 0.0 {
            return Err(CliError::Config(format!("--{key} must be positive, got {v}")));
        }
        Ok(v)
    }

    pub fn usize_or(&mut self, key: &str, default: usize) -> Result<usize, CliError> {
        let v = match self.raw(key) {
            Some(t) => Self::parse::<usize>(key, t)?,
            None => default,
        };
        self.record(key, v.to_string());
        Ok(v)
    }

    pub fn optional_usize(&mut self, key: &str) -> Result<Option<usize>, CliError> {
        match self.raw(key) {
            Some(t) => {
                let v = Self::parse::<usize>(key, t)?;
                self.record(key, v.to_string());
                Ok(Some(v))
            }
            None => Ok(None),
        }
    }

    pub fn text_or(&mut self, key: &str, default: &str) -> String {
        let v = self.raw(key).unwrap_or(default).to_owned();
        self.record(key, v.clone());
        v
    }

    pub fn flag(&self, key: &str) -> bool {
        self.raw(key).is_some_and(|v| v == "true" || v == "1")
    }

    pub fn out_dir(&self) -> PathBuf {
        PathBuf::from(self.raw("out").unwrap_or("."))
    }

    /// Points in g⁻² from `--g-scan`, or `1/g²` from `--g`, or the default scan.
    pub fn g_inv_sq(&mut self, default_scan: &str) -> Result<Vec<f64>, CliError> {
        match (self.raw("g-scan"), self.raw("g")) {
            (Some(_), Some(_)) => Err(CliError::Config("give either --g or --g-scan, not both".into())),
            (None, Some(t)) => {
                let g = Self::parse::<f64>("g", t)?;
                if !(g > 0.0 && g.is_finite()) {
                    return Err(CliError::Config(format!("--g must be positive, got {g}")));
                }
                self.record("g", g.to_string());
                Ok(vec![1.0 / (g * g)])
            }
            (scan, None) => {
                let text = scan.unwrap_or(default_scan).to_owned();
                let points = parse_scan(&text)?;
                self.record("g-scan", text);
                Ok(points)
            }
        }
    }

    /// Canonical `key=value` lines of the resolved configuration, command first.
    pub fn canonical(&self) -> String {
        let mut text = format!("command={}\n", self.command);
        for (k, v) in &self.resolved {
            if !PRESENTATION_KEYS.contains(&k.as_str()) {
                text.push_str(&format!("{k}={v}\n"));
            }
        }
        text
    }

    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn resolved_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.resolved
                .iter()
                .filter(|(k, _)| !PRESENTATION_KEYS.contains(&k.as_str()))
                .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                .collect(),
        )
    }

    pub fn threads(&self) -> Result<Option<usize>, CliError> {
        match self.raw("threads") {
            Some(t) => {
                let n = Self::parse::<usize>("threads", t)?;
                if n == 0 {
                    return Err(CliError::Config("--threads must be at least 1".into()));
                }
                Ok(Some(n))
            }
            None => Ok(None),
        }
    }
}

/// `lo:hi:n`, `n` evenly spaced points including both ends.
pub fn parse_scan(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Config(format!("--g-scan expects lo:hi:n, got `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else { return Err(bad()) };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(CliError::Config("--g-scan is empty".into()));
    }
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(CliError::Config(format!("--g-scan needs 0 < lo ≤ hi, got {lo}:{hi}")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_endpoints_and_validation() {
        assert_eq!(parse_scan("1:3:3").unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(parse_scan("2:2:1").unwrap(), vec![2.0]);
        assert!(matches!(parse_scan("1:2:0"), Err(CliError::Config(_))));
        assert!(parse_scan("0:2:3").is_err());
        assert!(parse_scan("1:2").is_err());
    }

    #[test]
    fn flags_override_file_and_hash_ignores_output_dir() {
        let dir = std::env::temp_dir().join(format!("hlgt-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        std::fs::write(&path, "m0 = 2.0\n# comment\nout = a\n").unwrap();
        let mut flags = Flags { config: Some(path.clone()), m0: Some("1.5".into()), ..Flags::default() };
        let mut s = Settings::new("qite", &flags).unwrap();
        assert_eq!(s.f64_or("m0", 0.0).unwrap(), 1.5);
        let h1 = s.hash();
        flags.out = Some("b".into());
        let mut t = Settings::new("qite", &flags).unwrap();
        t.f64_or("m0", 0.0).unwrap();
        assert_eq!(h1, t.hash());
        std::fs::write(&path, "colour = red\n").unwrap();
        assert!(Settings::new("qite", &flags).is_err());
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn g_and_scan_conflict() {
        let flags = Flags { g: Some("1".into()), g_scan: Some("1:2:2".into()), ..Flags::default() };
        assert!(Settings::new("spectrum", &flags).unwrap().g_inv_sq("1:1:1").is_err());
    }
}
