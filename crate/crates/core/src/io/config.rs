//! Flat key=value run configuration: parse, validate, echo.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::params::{make_params, ParamOverrides, ParamSet};
use crate::solver::PicardConfig;
use crate::spectral::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equation {
    Kg,
    Dirac,
}

/// Fully explicit run description; every field has a documented default, and
/// the echo output spells each one out so a run can be reproduced from its
/// metadata alone.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub equation: Equation,
    pub dim: usize,
    pub points: usize,
    pub half_length: f64,
    pub alpha: f64,
    pub mu1: Complex64,
    pub mu2: Complex64,
    pub lambda: Complex64,
    pub k_override: Option<usize>,
    pub n_override: Option<usize>,
    pub m_override: Option<usize>,
    pub profile: String,
    pub amplitude: f64,
    pub bump_amp: f64,
    pub bump_width: f64,
    pub wavenumber_index: i32,
    pub modulation: f64,
    pub horizon: f64,
    pub quad_nodes: usize,
    pub tol: f64,
    pub max_iters: usize,
    pub snapshot_count: usize,
    pub c_tilde: Option<f64>,
    pub two_sided: bool,
    pub emit_fields: bool,
    pub seed: u64,
    pub out_dir: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            equation: Equation::Kg,
            dim: 1,
            points: 128,
            half_length: 16.0,
            alpha: 1.0,
            mu1: Complex64::new(1.0, 0.0),
            mu2: Complex64::new(1.0, 0.0),
            lambda: Complex64::new(1.0, 0.0),
            k_override: None,
            n_override: None,
            m_override: None,
            profile: "bracket_decay".into(),
            amplitude: 1.0,
            bump_amp: 0.3,
            bump_width: 1.5,
            wavenumber_index: 1,
            modulation: 0.3,
            horizon: 0.05,
            quad_nodes: 16,
            // the fixed-point distance is measured in the X-norm, whose
            // order-J derivative terms amplify spectral roundoff; 1e-6 sits
            // safely above that floor on the default grid
            tol: 1e-6,
            max_iters: 60,
            snapshot_count: 0,
            c_tilde: None,
            two_sided: false,
            emit_fields: false,
            seed: 42,
            out_dir: "run_out".into(),
        }
    }
}

pub const PROFILES: [&str; 4] = [
    "bracket_decay",
    "bracket_plus_bump",
    "plane_modulated",
    "constant_spinor",
];

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_f64(line: usize, key: &str, v: &str) -> Result<f64> {
    v.parse()
        .map_err(|_| parse_err(line, format!("{key}: expected a real number, got `{v}`")))
}

fn parse_usize(line: usize, key: &str, v: &str) -> Result<usize> {
    v.parse()
        .map_err(|_| parse_err(line, format!("{key}: expected a non-negative integer, got `{v}`")))
}

fn parse_bool(line: usize, key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        _ => Err(parse_err(line, format!("{key}: expected true/false, got `{v}`"))),
    }
}

fn parse_opt_usize(line: usize, key: &str, v: &str) -> Result<Option<usize>> {
    if v == "auto" {
        Ok(None)
    } else {
        parse_usize(line, key, v).map(Some)
    }
}

/// Parse a flat key=value document (one pair per line, `#` comments).
/// Unknown and duplicate keys are parse errors carrying their line number;
/// the result is fully validated.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    let mut seen: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected key=value, got `{content}`")))?;
        let key = key.trim();
        let v = value.trim();
        if seen.iter().any(|s| s == key) {
            return Err(parse_err(line, format!("duplicate key `{key}`")));
        }
        seen.push(key.to_string());
        match key {
            "equation" => {
                cfg.equation = match v {
                    "kg" => Equation::Kg,
                    "dirac" => Equation::Dirac,
                    _ => return Err(parse_err(line, format!("equation must be kg or dirac, got `{v}`"))),
                }
            }
            "dim" => cfg.dim = parse_usize(line, key, v)?,
            "points" => cfg.points = parse_usize(line, key, v)?,
            "half_length" => cfg.half_length = parse_f64(line, key, v)?,
            "alpha" => cfg.alpha = parse_f64(line, key, v)?,
            "mu1" => cfg.mu1.re = parse_f64(line, key, v)?,
            "mu1_im" => cfg.mu1.im = parse_f64(line, key, v)?,
            "mu2" => cfg.mu2.re = parse_f64(line, key, v)?,
            "mu2_im" => cfg.mu2.im = parse_f64(line, key, v)?,
            "lambda" => cfg.lambda.re = parse_f64(line, key, v)?,
            "lambda_im" => cfg.lambda.im = parse_f64(line, key, v)?,
            "k" => cfg.k_override = parse_opt_usize(line, key, v)?,
            "n" => cfg.n_override = parse_opt_usize(line, key, v)?,
            "m" => cfg.m_override = parse_opt_usize(line, key, v)?,
            "profile" => cfg.profile = v.to_string(),
            "amplitude" => cfg.amplitude = parse_f64(line, key, v)?,
            "bump_amp" => cfg.bump_amp = parse_f64(line, key, v)?,
            "bump_width" => cfg.bump_width = parse_f64(line, key, v)?,
            "wavenumber_index" => {
                cfg.wavenumber_index = v.parse().map_err(|_| {
                    parse_err(line, format!("wavenumber_index: expected an integer, got `{v}`"))
                })?
            }
            "modulation" => cfg.modulation = parse_f64(line, key, v)?,
            "horizon" => cfg.horizon = parse_f64(line, key, v)?,
            "quad_nodes" => cfg.quad_nodes = parse_usize(line, key, v)?,
            "tol" => cfg.tol = parse_f64(line, key, v)?,
            "max_iters" => cfg.max_iters = parse_usize(line, key, v)?,
            "snapshot_count" => cfg.snapshot_count = parse_usize(line, key, v)?,
            "c_tilde" => {
                cfg.c_tilde = if v == "auto" {
                    None
                } else {
                    Some(parse_f64(line, key, v)?)
                }
            }
            "two_sided" => cfg.two_sided = parse_bool(line, key, v)?,
            "emit_fields" => cfg.emit_fields = parse_bool(line, key, v)?,
            "seed" => {
                cfg.seed = v
                    .parse()
                    .map_err(|_| parse_err(line, format!("seed: expected a 64-bit integer, got `{v}`")))?
            }
            "out_dir" => cfg.out_dir = v.to_string(),
            _ => return Err(parse_err(line, format!("unknown key `{key}`"))),
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        // grid invariants
        GridSpec::new(self.dim, self.half_length, self.points)?;
        // parameter-set invariants, including any overrides
        self.param_set()?;
        if !PROFILES.contains(&self.profile.as_str()) {
            return Err(Error::Validation(format!(
                "unknown profile `{}`; expected one of {PROFILES:?}",
                self.profile
            )));
        }
        if (self.profile == "constant_spinor") != (self.equation == Equation::Dirac) {
            return Err(Error::Validation(
                "profile constant_spinor is exactly the Dirac profile".into(),
            ));
        }
        if !(self.amplitude > 0.0) {
            return Err(Error::Validation(format!(
                "amplitude must be positive, got {}",
                self.amplitude
            )));
        }
        if self.bump_amp < 0.0 || !(self.bump_width > 0.0) {
            return Err(Error::Validation(
                "bump_amp must be >= 0 and bump_width > 0".into(),
            ));
        }
        if !(0.0..1.0).contains(&self.modulation) {
            return Err(Error::Validation(format!(
                "modulation must lie in [0, 1), got {}",
                self.modulation
            )));
        }
        if self.wavenumber_index.unsigned_abs() as usize > self.points / 4 {
            return Err(Error::Validation(format!(
                "wavenumber_index {} exceeds points/4 = {}",
                self.wavenumber_index,
                self.points / 4
            )));
        }
        self.picard_config().validate()?;
        if let Some(c) = self.c_tilde {
            if !(c > 0.0) {
                return Err(Error::Validation(format!(
                    "c_tilde must be positive, got {c}"
                )));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec::new(self.dim, self.half_length, self.points).expect("validated")
    }

    pub fn param_set(&self) -> Result<ParamSet> {
        let overrides = ParamOverrides {
            k: self.k_override,
            n: self.n_override,
            m: self.m_override,
        };
        Ok(make_params(self.alpha, self.dim, overrides)?
            .with_mu(self.mu1, self.mu2)
            .with_lambda(self.lambda))
    }

    pub fn picard_config(&self) -> PicardConfig {
        let snapshot_times = if self.snapshot_count == 0 {
            Vec::new()
        } else {
            (0..self.snapshot_count)
                .map(|i| self.horizon * i as f64 / (self.snapshot_count - 1).max(1) as f64)
                .collect()
        };
        PicardConfig {
            horizon: self.horizon,
            quad_nodes: self.quad_nodes,
            tol: self.tol,
            max_iters: self.max_iters,
            snapshot_times,
            lower_bound_eta: None,
        }
    }

    /// Every key spelled out; re-parsing the echo reproduces the config.
    pub fn echo(&self) -> String {
        let opt = |o: Option<usize>| o.map_or("auto".to_string(), |v| v.to_string());
        let mut s = String::new();
        s.push_str(&format!(
            "equation={}\n",
            match self.equation {
                Equation::Kg => "kg",
                Equation::Dirac => "dirac",
            }
        ));
        s.push_str(&format!("dim={}\n", self.dim));
        s.push_str(&format!("points={}\n", self.points));
        s.push_str(&format!("half_length={:.17e}\n", self.half_length));
        s.push_str(&format!("alpha={:.17e}\n", self.alpha));
        s.push_str(&format!("mu1={:.17e}\n", self.mu1.re));
        s.push_str(&format!("mu1_im={:.17e}\n", self.mu1.im));
        s.push_str(&format!("mu2={:.17e}\n", self.mu2.re));
        s.push_str(&format!("mu2_im={:.17e}\n", self.mu2.im));
        s.push_str(&format!("lambda={:.17e}\n", self.lambda.re));
        s.push_str(&format!("lambda_im={:.17e}\n", self.lambda.im));
        s.push_str(&format!("k={}\n", opt(self.k_override)));
        s.push_str(&format!("n={}\n", opt(self.n_override)));
        s.push_str(&format!("m={}\n", opt(self.m_override)));
        s.push_str(&format!("profile={}\n", self.profile));
        s.push_str(&format!("amplitude={:.17e}\n", self.amplitude));
        s.push_str(&format!("bump_amp={:.17e}\n", self.bump_amp));
        s.push_str(&format!("bump_width={:.17e}\n", self.bump_width));
        s.push_str(&format!("wavenumber_index={}\n", self.wavenumber_index));
        s.push_str(&format!("modulation={:.17e}\n", self.modulation));
        s.push_str(&format!("horizon={:.17e}\n", self.horizon));
        s.push_str(&format!("quad_nodes={}\n", self.quad_nodes));
        s.push_str(&format!("tol={:.17e}\n", self.tol));
        s.push_str(&format!("max_iters={}\n", self.max_iters));
        s.push_str(&format!("snapshot_count={}\n", self.snapshot_count));
        s.push_str(&format!(
            "c_tilde={}\n",
            self.c_tilde.map_or("auto".to_string(), |c| format!("{c:.17e}"))
        ));
        s.push_str(&format!("two_sided={}\n", self.two_sided));
        s.push_str(&format!("emit_fields={}\n", self.emit_fields));
        s.push_str(&format!("seed={}\n", self.seed));
        s.push_str(&format!("out_dir={}\n", self.out_dir));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        let cfg = parse_config("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.equation, Equation::Kg);
        assert_eq!((cfg.dim, cfg.points), (1, 128));
        assert_eq!(cfg.half_length, 16.0);
        assert_eq!(cfg.profile, "bracket_decay");
    }

    #[test]
    fn minimal_integer_rule_applies_without_override() {
        let cfg = parse_config("alpha=0.25\ndim=3\npoints=16\n").unwrap();
        let p = cfg.param_set().unwrap();
        assert_eq!(p.n, 7);
        assert!(cfg.echo().contains("n=auto"));
    }

    #[test]
    fn invalid_override_names_the_violated_bound() {
        let err = parse_config("alpha=0.25\ndim=3\npoints=16\nn=1\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("n must exceed"), "{msg}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_config("alpha=1\nbogus_key=3\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_config("alpha=1\nalpha=2\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_config("not a pair\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn echo_is_lossless() {
        let text = "equation=dirac\nprofile=constant_spinor\nalpha=0.5\nhorizon=0.1\nseed=7\n";
        let cfg = parse_config(text).unwrap();
        let echoed = parse_config(&cfg.echo()).unwrap();
        assert_eq!(cfg, echoed);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let cfg = parse_config("# a comment\n\nalpha=2.0 # trailing\n").unwrap();
        assert_eq!(cfg.alpha, 2.0);
    }

    #[test]
    fn profile_equation_pairing_enforced() {
        assert!(parse_config("profile=constant_spinor\n").is_err());
        assert!(parse_config("equation=dirac\nprofile=bracket_decay\n").is_err());
        assert!(parse_config("equation=dirac\nprofile=constant_spinor\n").is_ok());
    }
}
