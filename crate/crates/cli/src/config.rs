//! Run settings resolved from defaults, the environment, an optional
//! config file, and command-line flags, in increasing precedence.

use std::fs;
use std::path::Path;

use clap::ValueEnum;

use crate::specs::{parse_rational, rational_f64};
use crate::Failure;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Pgm,
}

/// Fully resolved run parameters. `hbar_text` preserves the exact spelling
/// so the rational-arithmetic commands can avoid a float round trip.
pub struct Settings {
    pub n_points: usize,
    pub half_length: f64,
    pub hbar: f64,
    pub hbar_text: String,
    pub quad_nodes: usize,
    pub format: Option<OutputFormat>,
    pub tolerance: Option<f64>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            n_points: 256,
            half_length: 10.0,
            hbar: 1.0,
            hbar_text: "1".to_string(),
            quad_nodes: 32,
            format: None,
            tolerance: None,
        }
    }
}

impl Settings {
    pub fn format_or(&self, fallback: OutputFormat) -> OutputFormat {
        self.format.unwrap_or(fallback)
    }

    fn set_hbar(&mut self, text: &str) -> Result<(), Failure> {
        let value = rational_f64(&parse_rational(text)?);
        if !value.is_finite() || value <= 0.0 {
            return Err(Failure::Validation(format!("hbar must be positive, got {text:?}")));
        }
        self.hbar = value;
        self.hbar_text = text.trim().to_string();
        Ok(())
    }

    fn apply_file(&mut self, path: &Path) -> Result<(), Failure> {
        let body = fs::read_to_string(path).map_err(|e| {
            Failure::Validation(format!("cannot read config {}: {e}", path.display()))
        })?;
        for (idx, raw) in body.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Failure::Validation(format!(
                    "{}:{}: expected `key = value`, got {raw:?}",
                    path.display(),
                    idx + 1
                ))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| {
                Failure::Validation(format!(
                    "{}:{}: bad {what} value {value:?}",
                    path.display(),
                    idx + 1
                ))
            };
            match key {
                "n_points" => self.n_points = value.parse().map_err(|_| bad("n_points"))?,
                "half_length" => {
                    self.half_length = value.parse().map_err(|_| bad("half_length"))?
                }
                "hbar" => self.set_hbar(value)?,
                "quad_nodes" => self.quad_nodes = value.parse().map_err(|_| bad("quad_nodes"))?,
                "format" => {
                    self.format = Some(
                        OutputFormat::from_str(value, true).map_err(|_| bad("format"))?,
                    )
                }
                "tolerance" => {
                    self.tolerance = Some(value.parse().map_err(|_| bad("tolerance"))?)
                }
                other => {
                    return Err(Failure::Validation(format!(
                        "{}:{}: unknown key {other:?}",
                        path.display(),
                        idx + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

pub struct Overrides<'a> {
    pub config: Option<&'a Path>,
    pub n_points: Option<usize>,
    pub half_length: Option<f64>,
    pub hbar: Option<&'a str>,
    pub quad_nodes: Option<usize>,
    pub format: Option<OutputFormat>,
    pub tolerance: Option<f64>,
}

pub fn resolve(over: &Overrides) -> Result<Settings, Failure> {
    let mut s = Settings::default();
    if let Ok(text) = std::env::var("BJQ_DEFAULT_HBAR") {
        s.set_hbar(&text)?;
    }
    if let Some(path) = over.config {
        s.apply_file(path)?;
    }
    if let Some(n) = over.n_points {
        s.n_points = n;
    }
    if let Some(l) = over.half_length {
        s.half_length = l;
    }
    if let Some(h) = over.hbar {
        s.set_hbar(h)?;
    }
    if let Some(q) = over.quad_nodes {
        s.quad_nodes = q;
    }
    if let Some(f) = over.format {
        s.format = Some(f);
    }
    if let Some(t) = over.tolerance {
        s.tolerance = Some(t);
    }
    Ok(s)
}
