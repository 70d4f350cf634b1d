use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{ModelSpec, SpherePoint};
use crate::quad::{GridSpec, QuadratureSpec};
use crate::tolerance::DEFAULT_FD_STEP;

pub const DEFAULT_N: usize = 2;
pub const DEFAULT_SEED: u64 = 42;
pub const AUTO_POINT_COUNT: usize = 50;
pub const AUTO_R_MIN: f64 = 0.1;
pub const AUTO_R_MAX: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

/// `all` or a comma-separated list of indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KList {
    All,
    List(Vec<usize>),
}

impl FromStr for KList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim() == "all" {
            return Ok(Self::All);
        }
        s.split(',')
            .map(|v| v.trim().parse::<usize>().map_err(|e| format!("bad k value {v:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::List)
    }
}

/// `auto` or a comma-separated list of complex numbers such as `1+2i,0.5,-0.3i`.
#[derive(Debug, Clone, PartialEq)]
pub enum PointsArg {
    Auto,
    List(Vec<Complex64>),
}

impl FromStr for PointsArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim() == "auto" {
            return Ok(Self::Auto);
        }
        s.split(',')
            .map(|v| v.trim().parse::<Complex64>().map_err(|e| format!("bad point {v:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::List)
    }
}

/// Options shared by every subcommand. Each may also be given as `key = value` in a config file
/// using the long flag name as key; flags override the file.
#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Model size N = 2s, at most 40 [default: 2]
    #[arg(long = "model-N", global = true, value_name = "N")]
    pub model_n: Option<usize>,
    /// Chain indices: `all` or a list like 0,2,3 [default: all; mesh: 0]
    #[arg(long, global = true, value_name = "LIST")]
    pub k: Option<KList>,
    /// Seed for the automatic sample points [default: 42]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Sample points: `auto` draws 50 points with |xi| log-uniform in [0.1, 10] and uniform
    /// phase; otherwise a list like 1+2i,0.5,-0.3i [default: auto]
    #[arg(long, global = true, value_name = "auto|LIST")]
    pub points: Option<PointsArg>,
    /// Gauss-Legendre nodes in the polar angle [default: 128]
    #[arg(long, global = true)]
    pub quad_radial: Option<usize>,
    /// Uniform nodes in the azimuth [default: 256]
    #[arg(long, global = true)]
    pub quad_azimuthal: Option<usize>,
    /// Quadrature levels, each doubling the polar nodes [default: 2]
    #[arg(long, global = true)]
    pub quad_levels: Option<usize>,
    /// Output format [default: csv]
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Output file [default: standard output]
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Replace P_k by a projector perturbed by EPS in the Euler-Lagrange check
    #[arg(long, global = true, value_name = "EPS")]
    pub perturb: Option<f64>,
    /// Base finite-difference step, scaled by max(1, |xi|) [default: 1e-4]
    #[arg(long, global = true, value_name = "H")]
    pub fd_step: Option<f64>,
    /// Mesh: smallest radius [default: 0.1]
    #[arg(long, global = true)]
    pub r_min: Option<f64>,
    /// Mesh: largest radius [default: 10]
    #[arg(long, global = true)]
    pub r_max: Option<f64>,
    /// Mesh: radial node count [default: 10]
    #[arg(long, global = true)]
    pub n_r: Option<usize>,
    /// Mesh: azimuthal node count [default: 10]
    #[arg(long, global = true)]
    pub n_phi: Option<usize>,
    /// Flat key = value file with defaults for any of these options
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<crate::Error> for ConfigError {
    fn from(e: crate::Error) -> Self {
        Self(e.to_string())
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e| ConfigError(format!("config key {key}: {e}")))
}

impl Options {
    /// Options read from a config file.
    pub fn from_config_text(text: &str) -> Result<Self, ConfigError> {
        let mut o = Self::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError(format!("config line {}: expected key = value", lineno + 1)));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "model-N" => o.model_n = Some(parse_value(key, value)?),
                "k" => o.k = Some(parse_value(key, value)?),
                "seed" => o.seed = Some(parse_value(key, value)?),
                "points" => o.points = Some(parse_value(key, value)?),
                "quad-radial" => o.quad_radial = Some(parse_value(key, value)?),
                "quad-azimuthal" => o.quad_azimuthal = Some(parse_value(key, value)?),
                "quad-levels" => o.quad_levels = Some(parse_value(key, value)?),
                "format" => o.format = Some(parse_value(key, value)?),
                "out" => o.out = Some(PathBuf::from(value)),
                "perturb" => o.perturb = Some(parse_value(key, value)?),
                "fd-step" => o.fd_step = Some(parse_value(key, value)?),
                "r-min" => o.r_min = Some(parse_value(key, value)?),
                "r-max" => o.r_max = Some(parse_value(key, value)?),
                "n-r" => o.n_r = Some(parse_value(key, value)?),
                "n-phi" => o.n_phi = Some(parse_value(key, value)?),
                _ => return Err(ConfigError(format!("config line {}: unknown key {key:?}", lineno + 1))),
            }
        }
        Ok(o)
    }

    pub fn from_config_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        Self::from_config_text(&text)
    }

    /// Fill every unset option from `file`.
    pub fn or(self, file: Options) -> Options {
        Options {
            model_n: self.model_n.or(file.model_n),
            k: self.k.or(file.k),
            seed: self.seed.or(file.seed),
            points: self.points.or(file.points),
            quad_radial: self.quad_radial.or(file.quad_radial),
            quad_azimuthal: self.quad_azimuthal.or(file.quad_azimuthal),
            quad_levels: self.quad_levels.or(file.quad_levels),
            format: self.format.or(file.format),
            out: self.out.or(file.out),
            perturb: self.perturb.or(file.perturb),
            fd_step: self.fd_step.or(file.fd_step),
            r_min: self.r_min.or(file.r_min),
            r_max: self.r_max.or(file.r_max),
            n_r: self.n_r.or(file.n_r),
            n_phi: self.n_phi.or(file.n_phi),
            config: self.config,
        }
    }
}

/// A validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub spec: ModelSpec,
    pub k_list: Vec<usize>,
    /// Whether `k` was given explicitly.
    pub k_explicit: bool,
    pub seed: u64,
    pub points: Vec<SpherePoint>,
    pub quadrature: QuadratureSpec,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub perturb: Option<f64>,
    pub fd_step: f64,
    pub grid: GridSpec,
}

impl RunConfig {
    /// Merge the config file named in `flags` (if any) under the flags and validate.
    pub fn resolve(flags: Options) -> Result<Self, ConfigError> {
        let merged = match &flags.config {
            Some(path) => {
                let file = Options::from_config_file(path)?;
                flags.or(file)
            }
            None => flags,
        };
        Self::from_options(merged)
    }

    pub fn from_options(o: Options) -> Result<Self, ConfigError> {
        let spec = ModelSpec::new(o.model_n.unwrap_or(DEFAULT_N))?;
        let (k_list, k_explicit) = match o.k {
            None | Some(KList::All) => ((0..=spec.n()).collect(), false),
            Some(KList::List(list)) => (list, true),
        };
        if k_list.is_empty() {
            return Err(ConfigError("empty k list".into()));
        }
        for &k in &k_list {
            spec.check_index(k)?;
        }
        let seed = o.seed.unwrap_or(DEFAULT_SEED);
        let points = match o.points.unwrap_or(PointsArg::Auto) {
            PointsArg::Auto => auto_points(seed, AUTO_POINT_COUNT),
            PointsArg::List(list) => list.into_iter().map(SpherePoint::new).collect(),
        };
        let defaults = QuadratureSpec::default();
        let quadrature = QuadratureSpec::new(
            o.quad_radial.unwrap_or(defaults.n_radial),
            o.quad_azimuthal.unwrap_or(defaults.n_azimuthal),
            o.quad_levels.unwrap_or(defaults.refinement_levels),
        )?;
        let fd_step = o.fd_step.unwrap_or(DEFAULT_FD_STEP);
        if !(fd_step > 0.0 && fd_step.is_finite()) {
            return Err(ConfigError(format!("fd-step must be positive, got {fd_step}")));
        }
        if let Some(eps) = o.perturb {
            if !eps.is_finite() {
                return Err(ConfigError(format!("perturb must be finite, got {eps}")));
            }
        }
        let g = GridSpec::default();
        let grid = GridSpec::new(
            o.r_min.unwrap_or(g.r_min),
            o.r_max.unwrap_or(g.r_max),
            o.n_r.unwrap_or(g.n_r),
            o.n_phi.unwrap_or(g.n_phi),
        )?;
        Ok(Self {
            spec,
            k_list,
            k_explicit,
            seed,
            points,
            quadrature,
            format: o.format.unwrap_or(Format::Csv),
            out: o.out,
            perturb: o.perturb,
            fd_step,
            grid,
        })
    }
}

/// `count` points with |xi| log-uniform in [0.1, 10] and uniform phase, from a ChaCha8 stream.
pub fn auto_points(seed: u64, count: usize) -> Vec<SpherePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (AUTO_R_MIN.ln(), AUTO_R_MAX.ln());
    (0..count)
        .map(|_| {
            let r = rng.random_range(lo..hi).exp();
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            SpherePoint::from_polar(r, phi)
        })
        .collect()
}
