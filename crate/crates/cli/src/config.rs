//! Run configuration: defaults, then a flat `key=value` file, then the
//! CM_TWIST_PRECISION environment variable, then command-line flags.

use cmtwist::lseries::DEFAULT_DENOM_BOUND;
use cmtwist::PrecisionContext;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub const PRECISION_ENV: &str = "CM_TWIST_PRECISION";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    /// Working precision in bits.
    pub precision: usize,
    /// Absolute error target that decides where series are truncated.
    pub target: f64,
    /// Largest denominator accepted when recognizing algebraic values.
    pub denom_bound: u64,
    pub format: Format,
    pub jobs: usize,
    pub fixtures: PathBuf,
}

/// The fixture file shipped with the crate.
pub fn default_fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("twist_table.csv")
}

/// Error target matched to the working precision: 1e-25 at 128 bits.
pub fn default_target(bits: usize) -> f64 {
    1e-25 * 2f64.powf(-0.65 * (bits as f64 - 128.0))
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: 128,
            target: 1e-25,
            denom_bound: DEFAULT_DENOM_BOUND,
            format: Format::Csv,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            fixtures: default_fixtures(),
        }
    }
}

/// Values given explicitly on the command line or in a file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub precision: Option<usize>,
    pub target: Option<f64>,
    pub denom_bound: Option<u64>,
    pub format: Option<Format>,
    pub jobs: Option<usize>,
    pub fixtures: Option<PathBuf>,
}

impl Overrides {
    fn apply(&self, c: &mut RunConfig, target_set: &mut bool) {
        if let Some(p) = self.precision {
            c.precision = p;
        }
        if let Some(t) = self.target {
            c.target = t;
            *target_set = true;
        }
        if let Some(b) = self.denom_bound {
            c.denom_bound = b;
        }
        if let Some(f) = self.format {
            c.format = f;
        }
        if let Some(j) = self.jobs {
            c.jobs = j;
        }
        if let Some(f) = &self.fixtures {
            c.fixtures = f.clone();
        }
    }
}

fn parse<T: FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.trim().parse().map_err(|_| format!("bad value for {key}: {v:?}"))
}

/// Parses `key=value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<Overrides, String> {
    let mut o = Overrides::default();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
        let k = k.trim();
        match k {
            "precision" => o.precision = Some(parse(k, v)?),
            "target" => o.target = Some(parse(k, v)?),
            "denom_bound" => o.denom_bound = Some(parse(k, v)?),
            "format" => o.format = Some(parse(k, v)?),
            "jobs" => o.jobs = Some(parse(k, v)?),
            "fixtures" => o.fixtures = Some(PathBuf::from(v.trim())),
            _ => return Err(format!("line {}: unknown key {k:?}", i + 1)),
        }
    }
    Ok(o)
}

impl RunConfig {
    /// Layers file, environment and flags over the defaults and validates the result.
    pub fn resolve(file: Option<&str>, env_precision: Option<&str>, flags: &Overrides) -> Result<Self, String> {
        let mut c = RunConfig::default();
        let mut target_set = false;
        if let Some(text) = file {
            parse_config(text)?.apply(&mut c, &mut target_set);
        }
        if let Some(p) = env_precision {
            c.precision = parse(PRECISION_ENV, p)?;
        }
        flags.apply(&mut c, &mut target_set);
        if !target_set {
            c.target = default_target(c.precision);
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.jobs == 0 || self.denom_bound == 0 || !(self.target > 0.0) {
            return Err("jobs, denom_bound and target must be positive".into());
        }
        if self.precision < 64 {
            return Err(format!("precision must be at least 64 bits, got {}", self.precision));
        }
        self.context().map(|_| ())
    }

    pub fn context(&self) -> Result<PrecisionContext, String> {
        PrecisionContext::new(self.precision, self.target).map_err(|e| e.to_string())
    }
}
