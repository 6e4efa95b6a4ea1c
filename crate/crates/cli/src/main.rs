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

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qsk_cli::{run, CliError, CommandKind, RunConfig};

/// Space-bounded quantum streaming toolkit: gate synthesis, PartialMOD,
/// Equality and space accounting.
#[derive(Parser, Debug)]
#[command(name = "qsk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Master seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// `clifford_t` or `clifford_t_full`.
    #[arg(long, global = true)]
    gate_set: Option<String>,
    /// Maximum word length of the base net.
    #[arg(long, global = true)]
    l0: Option<usize>,
    /// Recursion depth cap.
    #[arg(long, global = true)]
    depth_max: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// `key=value` file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for cached nets; defaults to `$QSK_CACHE_DIR`.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize `R(θ)` for each angle and accuracy.
    Synth {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        angle: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
    },
    /// Word length against accuracy for Haar-random targets.
    Scaling {
        #[arg(long)]
        targets: Option<usize>,
    },
    /// PartialMOD sweep over p, v and delta.
    Partialmod {
        #[arg(long, value_delimiter = ',')]
        p: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        v: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        delta: Vec<f64>,
        /// Zero bits added to each generated stream.
        #[arg(long)]
        padding: Option<usize>,
        /// Read a `0`/`1` stream instead of generating one.
        #[arg(long)]
        stream_file: Option<PathBuf>,
    },
    /// Fingerprint-set search and verification.
    Equality {
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
        #[arg(long)]
        max_attempts: Option<usize>,
        /// Verify this set file instead of searching.
        #[arg(long)]
        import_set: Option<PathBuf>,
        /// Save each found set here.
        #[arg(long)]
        export_dir: Option<PathBuf>,
    },
    /// Geometric segment count against the closed form.
    Segments {
        #[arg(long, value_delimiter = ',')]
        p0: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
    },
    /// Quantum against classical space for one instance.
    Report {
        /// `partialmod` or `equality`.
        problem: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        v: Option<u64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        max_attempts: Option<usize>,
        /// `text` or `csv`.
        #[arg(long)]
        format: Option<String>,
    },
}

fn set_list<T>(dst: &mut Vec<T>, src: Vec<T>) {
    if !src.is_empty() {
        *dst = src;
    }
}

fn set_opt<T>(dst: &mut T, src: Option<T>) {
    if let Some(v) = src {
        *dst = v;
    }
}

fn build_config(cli: Cli) -> Result<RunConfig, CliError> {
    let kind = match &cli.command {
        Command::Synth { .. } => CommandKind::Synth,
        Command::Scaling { .. } => CommandKind::Scaling,
        Command::Partialmod { .. } => CommandKind::PartialMod,
        Command::Equality { .. } => CommandKind::Equality,
        Command::Segments { .. } => CommandKind::Segments,
        Command::Report { .. } => CommandKind::Report,
    };
    let mut cfg = RunConfig::defaults(kind);
    if let Ok(dir) = std::env::var("QSK_CACHE_DIR") {
        if !dir.is_empty() {
            cfg.cache_dir = Some(PathBuf::from(dir));
        }
    }
    let c = cli.common;
    if let Some(path) = &c.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg.apply_config_text(&text)?;
    }
    set_opt(&mut cfg.seed, c.seed);
    set_opt(&mut cfg.gate_set, c.gate_set);
    set_opt(&mut cfg.l0, c.l0);
    set_opt(&mut cfg.depth_max, c.depth_max);
    if c.out.is_some() {
        cfg.out = c.out;
    }
    if c.cache_dir.is_some() {
        cfg.cache_dir = c.cache_dir;
    }
    match cli.command {
        Command::Synth { angle, eps } => {
            set_list(&mut cfg.angles, angle);
            set_list(&mut cfg.eps, eps);
        }
        Command::Scaling { targets } => set_opt(&mut cfg.targets, targets),
        Command::Partialmod {
            p,
            v,
            delta,
            padding,
            stream_file,
        } => {
            set_list(&mut cfg.p, p);
            set_list(&mut cfg.v, v);
            set_list(&mut cfg.delta, delta);
            set_opt(&mut cfg.padding, padding);
            if stream_file.is_some() {
                cfg.stream_file = stream_file;
            }
        }
        Command::Equality {
            n,
            eps,
            max_attempts,
            import_set,
            export_dir,
        } => {
            set_list(&mut cfg.n, n);
            set_list(&mut cfg.eps, eps);
            set_opt(&mut cfg.max_attempts, max_attempts);
            if import_set.is_some() {
                cfg.import_set = import_set;
            }
            if export_dir.is_some() {
                cfg.export_dir = export_dir;
            }
        }
        Command::Segments { p0, eps } => {
            set_list(&mut cfg.p0, p0);
            set_list(&mut cfg.eps, eps);
        }
        Command::Report {
            problem,
            p,
            v,
            delta,
            n,
            eps,
            max_attempts,
            format,
        } => {
            cfg.problem = problem;
            set_list(&mut cfg.p, p.into_iter().collect());
            set_list(&mut cfg.v, v.into_iter().collect());
            set_list(&mut cfg.delta, delta.into_iter().collect());
            set_list(&mut cfg.n, n.into_iter().collect());
            set_list(&mut cfg.eps, eps.into_iter().collect());
            set_opt(&mut cfg.max_attempts, max_attempts);
            set_opt(&mut cfg.format, format);
        }
    }
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let cfg = build_config(cli)?;
    let out = run(&cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &out.text)?,
        None => std::io::stdout().write_all(out.text.as_bytes())?,
    }
    for msg in out.capped.iter().chain(&out.failures) {
        eprintln!("qsk: {msg}");
    }
    Ok(out.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("qsk: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
