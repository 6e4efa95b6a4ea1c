// Copyright 2026 The qsk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Run configuration: defaults, `key=value` config files and validation.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Synth,
    Scaling,
    PartialMod,
    Equality,
    Segments,
    Report,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Synth => "synth",
            CommandKind::Scaling => "scaling",
            CommandKind::PartialMod => "partialmod",
            CommandKind::Equality => "equality",
            CommandKind::Segments => "segments",
            CommandKind::Report => "report",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub seed: u64,
    pub gate_set: String,
    pub l0: usize,
    pub depth_max: usize,
    pub out: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    /// `synth`: rotation angles θ of the targets `R(θ)`.
    pub angles: Vec<f64>,
    /// `synth`, `equality`, `segments`, `report`: accuracies.
    pub eps: Vec<f64>,
    /// `scaling`: number of Haar-random targets.
    pub targets: usize,
    pub p: Vec<u64>,
    pub v: Vec<u64>,
    pub delta: Vec<f64>,
    /// `partialmod`: extra zero bits mixed into each generated stream.
    pub padding: usize,
    /// `partialmod`: read the stream from a file instead of generating it.
    pub stream_file: Option<PathBuf>,
    pub n: Vec<u32>,
    pub max_attempts: usize,
    /// `equality`: verify this fingerprint-set file instead of searching.
    pub import_set: Option<PathBuf>,
    /// `equality`: write each found set into this directory.
    pub export_dir: Option<PathBuf>,
    pub p0: Vec<u64>,
    /// `report`: `partialmod` or `equality`.
    pub problem: String,
    /// `report`: `text` or `csv`.
    pub format: String,
}

impl RunConfig {
    pub fn defaults(command: CommandKind) -> Self {
        let mut cfg = RunConfig {
            command,
            seed: 1,
            gate_set: "clifford_t".into(),
            l0: 10,
            depth_max: 6,
            out: None,
            cache_dir: None,
            angles: vec![PI / 8.0, 0.3, 1.0],
            eps: vec![1e-1, 3e-2, 1e-2, 3e-3, 1e-3],
            targets: 100,
            p: vec![2, 3, 5, 16, 1024],
            v: vec![0, 1, 2, 4, 8],
            delta: vec![0.01, 0.04, 0.1],
            padding: 16,
            stream_file: None,
            n: vec![4, 6, 8, 10, 12],
            max_attempts: 100,
            import_set: None,
            export_dir: None,
            p0: vec![100, 10_000, 1_000_000],
            problem: "partialmod".into(),
            format: "text".into(),
        };
        match command {
            CommandKind::Equality => cfg.eps = vec![0.25, 0.5],
            CommandKind::Segments => cfg.eps = vec![0.1, 0.01, 0.001],
            CommandKind::Report => {
                cfg.eps = vec![0.25];
                cfg.p = vec![1024];
                cfg.v = vec![4];
                cfg.delta = vec![0.1];
                cfg.n = vec![16];
            }
            _ => {}
        }
        cfg
    }

    /// Applies `key=value` lines; `#` starts a comment, keys accept `-` or `_`.
    pub fn apply_config_text(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected key=value", lineno + 1))
            })?;
            self.set(key.trim(), value.trim())
                .map_err(|e| CliError::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key.replace('-', "_").as_str() {
            "seed" => self.seed = scalar(value)?,
            "gate_set" => self.gate_set = value.to_string(),
            "l0" => self.l0 = scalar(value)?,
            "depth_max" => self.depth_max = scalar(value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "cache_dir" => self.cache_dir = Some(PathBuf::from(value)),
            "angle" | "angles" => self.angles = list(value)?,
            "eps" => self.eps = list(value)?,
            "targets" => self.targets = scalar(value)?,
            "p" => self.p = list(value)?,
            "v" => self.v = list(value)?,
            "delta" => self.delta = list(value)?,
            "padding" => self.padding = scalar(value)?,
            "stream_file" => self.stream_file = Some(PathBuf::from(value)),
            "n" => self.n = list(value)?,
            "max_attempts" => self.max_attempts = scalar(value)?,
            "import_set" => self.import_set = Some(PathBuf::from(value)),
            "export_dir" => self.export_dir = Some(PathBuf::from(value)),
            "p0" => self.p0 = list(value)?,
            "problem" => self.problem = value.to_string(),
            "format" => self.format = value.to_string(),
            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Config(m.to_string()));
        if !(1..=qsk_core::synthesis::MAX_NET_WORD_LENGTH).contains(&self.l0) {
            return bad("l0 must lie in 1..=16");
        }
        if self.depth_max > qsk_core::synthesis::MAX_DEPTH {
            return bad("depth-max must be at most 6");
        }
        if !["clifford_t", "clifford_t_full"].contains(&self.gate_set.as_str()) {
            return bad("gate-set must be clifford_t or clifford_t_full");
        }
        let positive = |xs: &[f64]| xs.iter().all(|x| x.is_finite() && *x > 0.0);
        match self.command {
            CommandKind::Synth => {
                if self.angles.is_empty() || self.eps.is_empty() || !positive(&self.eps) {
                    return bad("synth needs angles and positive eps values");
                }
                if self.angles.iter().any(|a| !a.is_finite()) {
                    return bad("angles must be finite");
                }
            }
            CommandKind::Scaling => {
                if self.depth_max + 1 < 4 {
                    return bad("scaling needs at least 4 sweep points (depth-max ≥ 3)");
                }
                if self.targets == 0 {
                    return bad("scaling needs at least one target");
                }
            }
            CommandKind::PartialMod => {
                if self.p.contains(&0) || self.p.is_empty() {
                    return bad("p values must be positive");
                }
                if self.delta.iter().any(|d| !(*d > 0.0 && *d < 1.0)) || self.delta.is_empty() {
                    return bad("delta values must lie in (0, 1)");
                }
            }
            CommandKind::Equality => {
                if self.import_set.is_none() {
                    if self.n.iter().any(|&n| n == 0 || n > 16) || self.n.is_empty() {
                        return bad("n values must lie in 1..=16");
                    }
                    if self.eps.iter().any(|e| !(*e > 0.0 && *e <= 1.0)) || self.eps.is_empty() {
                        return bad("eps values must lie in (0, 1]");
                    }
                }
                if self.max_attempts == 0 {
                    return bad("max-attempts must be at least 1");
                }
            }
            CommandKind::Segments => {
                if self.p0.contains(&0) || self.p0.is_empty() {
                    return bad("p0 values must be positive");
                }
                if self.eps.iter().any(|e| !(*e > 0.0 && *e < 1.0)) || self.eps.is_empty() {
                    return bad("eps values must lie in (0, 1)");
                }
            }
            CommandKind::Report => {
                if !["partialmod", "equality"].contains(&self.problem.as_str()) {
                    return bad("problem must be partialmod or equality");
                }
                if !["text", "csv"].contains(&self.format.as_str()) {
                    return bad("format must be text or csv");
                }
            }
        }
        Ok(())
    }

    /// `#`-prefixed lines recording the tool version and every setting.
    pub fn header(&self) -> String {
        let mut h = String::new();
        let mut line = |k: &str, v: String| {
            writeln!(h, "# {k}={v}").expect("writing to a String cannot fail");
        };
        line("tool", format!("qsk {}", env!("CARGO_PKG_VERSION")));
        line("command", self.command.name().into());
        line("seed", self.seed.to_string());
        line("gate_set", self.gate_set.clone());
        line("l0", self.l0.to_string());
        line("depth_max", self.depth_max.to_string());
        match self.command {
            CommandKind::Synth => {
                line("angles", join(&self.angles));
                line("eps", join(&self.eps));
            }
            CommandKind::Scaling => line("targets", self.targets.to_string()),
            CommandKind::PartialMod => {
                line("p", join(&self.p));
                line("v", join(&self.v));
                line("delta", join(&self.delta));
                line("padding", self.padding.to_string());
                if let Some(f) = &self.stream_file {
                    line("stream_file", f.display().to_string());
                }
            }
            CommandKind::Equality => {
                line("n", join(&self.n));
                line("eps", join(&self.eps));
                line("max_attempts", self.max_attempts.to_string());
                if let Some(f) = &self.import_set {
                    line("import_set", f.display().to_string());
                }
            }
            CommandKind::Segments => {
                line("p0", join(&self.p0));
                line("eps", join(&self.eps));
            }
            CommandKind::Report => {
                line("problem", self.problem.clone());
                line("p", join(&self.p));
                line("v", join(&self.v));
                line("delta", join(&self.delta));
                line("n", join(&self.n));
                line("eps", join(&self.eps));
            }
        }
        h
    }
}

fn scalar<T: FromStr>(value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("cannot parse {value:?}"))
}

fn list<T: FromStr>(value: &str) -> Result<Vec<T>, String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(scalar)
        .collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
