//! Pipeline settings from defaults, a `key = value` file and flags.

use std::path::{Path, PathBuf};

use ringmotif_core::layout::ForceParams;
use ringmotif_core::patterns::{AxisPreference, ModelKind, NoiseModel};
use ringmotif_core::reorder::EXACT_CAP;
use ringmotif_core::select::FilterRule;

use crate::error::{Error, Result};
use crate::io::InputFormat;
use crate::svg::RenderConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReorderMode {
    Off,
    Exact,
    Heuristic,
    #[default]
    Auto,
}

impl ReorderMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ReorderMode::Off => "off",
            ReorderMode::Exact => "exact",
            ReorderMode::Heuristic => "heuristic",
            ReorderMode::Auto => "auto",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Emit {
    pub matrix: bool,
    pub motif: bool,
    pub bar: bool,
    pub json: bool,
    pub composite: bool,
    /// Reordering instance in TSPLIB format; off unless requested.
    pub tsplib: bool,
}

impl Default for Emit {
    fn default() -> Self {
        Emit { matrix: true, motif: true, bar: true, json: true, composite: true, tsplib: false }
    }
}

impl Emit {
    /// Comma-separated subset of `matrix,motif,bar,json,composite,tsplib`,
    /// or `all` (everything except `tsplib`) / `none`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut e = Emit { matrix: false, motif: false, bar: false, json: false, composite: false, tsplib: false };
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match item {
                "matrix" => e.matrix = true,
                "motif" => e.motif = true,
                "bar" => e.bar = true,
                "json" => e.json = true,
                "composite" => e.composite = true,
                "tsplib" => e.tsplib = true,
                "all" => e = Emit::default(),
                "none" => {}
                _ => return Err(Error::Config(format!("unknown emit target '{item}'"))),
            }
        }
        Ok(e)
    }
}

pub fn model_name(kind: ModelKind) -> &'static str {
    match kind {
        ModelKind::Density => "density",
        ModelKind::PlainMorans => "morans",
        ModelKind::GlobalReweighted => "global",
        ModelKind::LocalReweighted => "local",
    }
}

pub fn filter_name(rule: FilterRule) -> String {
    match rule {
        FilterRule::None => "none".into(),
        FilterRule::Absolute(w) => format!("abs:{w}"),
        FilterRule::Relative(f) => format!("rel:{f}"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub input: Option<PathBuf>,
    pub format: InputFormat,
    pub model: ModelKind,
    pub sigma: f64,
    pub tau: f64,
    pub axis: AxisPreference,
    pub reorder: ReorderMode,
    pub exact_cap: u32,
    pub seed: u64,
    pub filter: FilterRule,
    pub forces: ForceParams,
    pub render: RenderConfig,
    pub out: PathBuf,
    pub emit: Emit,
    /// Write wall-clock stage timings to `timings.json`.
    pub timings: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let model = NoiseModel::default();
        PipelineConfig {
            input: None,
            format: InputFormat::Edges,
            model: model.kind,
            sigma: model.sigma,
            tau: model.tau,
            axis: AxisPreference::RowsFirst,
            reorder: ReorderMode::Auto,
            exact_cap: EXACT_CAP,
            seed: 42,
            filter: FilterRule::None,
            forces: ForceParams::default(),
            render: RenderConfig::default(),
            out: PathBuf::from("out"),
            emit: Emit::default(),
            timings: false,
        }
    }
}

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Config(format!("{key}: cannot parse '{value}'")))
}

fn boolean(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(Error::Config(format!("{key}: expected true or false, found '{value}'"))),
    }
}

pub fn parse_filter(value: &str) -> Result<FilterRule> {
    let rule = if value == "none" {
        FilterRule::None
    } else if let Some(w) = value.strip_prefix("abs:") {
        FilterRule::Absolute(number("filter", w)?)
    } else if let Some(f) = value.strip_prefix("rel:") {
        FilterRule::Relative(number("filter", f)?)
    } else {
        return Err(Error::Config(format!("filter: expected none, abs:N or rel:F, found '{value}'")));
    };
    Ok(rule.validate()?)
}

impl PipelineConfig {
    /// Sets one option. Keys match the long flag names; `_` may stand for `-`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        let k = key.as_str();
        match k {
            "input" => self.input = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            "model" => {
                self.model = match value {
                    "density" => ModelKind::Density,
                    "morans" => ModelKind::PlainMorans,
                    "global" => ModelKind::GlobalReweighted,
                    "local" => ModelKind::LocalReweighted,
                    _ => return Err(Error::Config(format!("unknown model '{value}'"))),
                }
            }
            "sigma" => self.sigma = number(k, value)?,
            "tau" => self.tau = number(k, value)?,
            "axis" => {
                self.axis = match value {
                    "rows" => AxisPreference::RowsFirst,
                    "cols" => AxisPreference::ColsFirst,
                    _ => return Err(Error::Config(format!("axis: expected rows or cols, found '{value}'"))),
                }
            }
            "reorder" => {
                self.reorder = match value {
                    "off" => ReorderMode::Off,
                    "exact" => ReorderMode::Exact,
                    "heuristic" => ReorderMode::Heuristic,
                    "auto" => ReorderMode::Auto,
                    _ => return Err(Error::Config(format!("unknown reorder mode '{value}'"))),
                }
            }
            "exact-cap" => self.exact_cap = number(k, value)?,
            "seed" => self.seed = number(k, value)?,
            "filter" => self.filter = parse_filter(value)?,
            "c-o" => self.forces.c_o = number(k, value)?,
            "c-a" => self.forces.c_a = number(k, value)?,
            "c-r" => self.forces.c_r = number(k, value)?,
            "c-g" => self.forces.c_g = number(k, value)?,
            "mu" => self.forces.mu = number(k, value)?,
            "max-step" => self.forces.max_step = number(k, value)?,
            "max-iters" => self.forces.max_iters = number(k, value)?,
            "eps" => self.forces.eps = number(k, value)?,
            "cell-px" => self.render.cell_px = number(k, value)?,
            "scale" => self.render.scale = number(k, value)?,
            "labels" => self.render.show_labels = boolean(k, value)?,
            "link-opacity" => self.render.link_opacity = number(k, value)?,
            "out" => self.out = PathBuf::from(value),
            "emit" => self.emit = Emit::parse(value)?,
            "timings" => self.timings = boolean(k, value)?,
            _ => return Err(Error::Config(format!("unknown option '{key}'"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines. Blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(k + 1, "expected key = value"))?;
            self.set(key, value).map_err(|e| Error::parse(k + 1, e.to_string()))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        self.apply_text(&crate::io::read_text(path)?)
    }

    pub fn noise_model(&self) -> Result<NoiseModel> {
        Ok(NoiseModel::new(self.model, self.sigma, self.tau)?)
    }

    pub fn validate(&self) -> Result<()> {
        self.noise_model()?;
        self.filter.validate()?;
        self.forces.validate()?;
        self.render.clone().validate()?;
        Ok(())
    }
}
