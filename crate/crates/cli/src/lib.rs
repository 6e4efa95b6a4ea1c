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

//! Command implementations behind the `qsk` binary.
//!
//! Every command returns its CSV (or report text) as a string so the same
//! code path serves the binary, the integration tests and the acceptance
//! suite.

pub mod config;
pub mod error;
pub mod scaling;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use qsk_core::accounting::{
    build_report, classical_baseline, equality_storage_bits, program_bits, Baseline, ProblemParams,
    SpaceReport, SynthesisInputs,
};
use qsk_core::equality::{
    find_fingerprint_set, fingerprint_size, max_residual, FingerprintSet, FoundSet,
};
use qsk_core::exec;
use qsk_core::partialmod::{
    perturbed_wrong_probability, required_accuracy, run_exact, run_synthesized, BitStream,
    PartialModInstance,
};
use qsk_core::rng::{split_seed, stream};
use qsk_core::su2::rotation_y;
use qsk_core::synthesis::{
    count_covering_segments, load_or_build, segments_closed_form, synth_to_accuracy_capped,
    EpsilonNet, GateSet, SynthesisResult,
};

pub use config::{CommandKind, RunConfig};
pub use error::CliError;

/// Rendered output plus any checks that did not hold.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CommandOutput {
    pub text: String,
    /// Acceptance assertions that failed; exit code 4.
    pub failures: Vec<String>,
    /// Points that hit a depth or attempt cap; exit code 3.
    pub capped: Vec<String>,
}

impl CommandOutput {
    pub fn exit_code(&self) -> i32 {
        if !self.capped.is_empty() {
            3
        } else if !self.failures.is_empty() {
            4
        } else {
            0
        }
    }
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn run(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    cfg.validate()?;
    let mut out = match cfg.command {
        CommandKind::Synth => cmd_synth(cfg)?,
        CommandKind::Scaling => scaling::cmd_scaling(cfg)?,
        CommandKind::PartialMod => cmd_partialmod(cfg)?,
        CommandKind::Equality => cmd_equality(cfg)?,
        CommandKind::Segments => cmd_segments(cfg)?,
        CommandKind::Report => cmd_report(cfg)?,
    };
    if cfg.command != CommandKind::Report || cfg.format == "csv" {
        out.text.insert_str(0, &cfg.header());
    }
    Ok(out)
}

pub fn load_net(cfg: &RunConfig) -> Result<EpsilonNet, CliError> {
    let gs = GateSet::by_name(&cfg.gate_set)?;
    Ok(load_or_build(cfg.cache_dir.as_deref(), &gs, cfg.l0)?)
}

/// Synthesizes to `eps`; a depth-capped miss yields the best word and a note.
fn synth_or_best(
    net: &EpsilonNet,
    target: &qsk_core::su2::Unitary2,
    eps: f64,
    depth_max: usize,
) -> Result<(SynthesisResult, Option<String>), CliError> {
    match synth_to_accuracy_capped(net, target, eps, depth_max) {
        Ok(r) => Ok((r, None)),
        Err(qsk_core::Error::Unreachable {
            requested,
            depth,
            best_error,
            best,
        }) => Ok((
            *best,
            Some(format!(
                "accuracy {requested:e} unreachable by depth {depth} (best {best_error:e})"
            )),
        )),
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_synth(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let net = load_net(cfg)?;
    let g = net.gate_set().len();
    let points: Vec<(f64, f64)> = cfg
        .angles
        .iter()
        .flat_map(|&a| cfg.eps.iter().map(move |&e| (a, e)))
        .collect();
    let results = exec::map(&points, |&(angle, eps)| {
        synth_or_best(&net, &rotation_y(angle), eps, cfg.depth_max)
    });
    let mut out = CommandOutput::default();
    out.text
        .push_str("angle,eps_requested,eps_achieved,length,depth,program_bits\n");
    for (&(angle, eps), res) in points.iter().zip(results) {
        let (r, note) = res?;
        if let Some(note) = note {
            out.capped.push(format!("angle {angle}: {note}"));
        }
        writeln!(
            out.text,
            "{},{},{},{},{},{}",
            fmt_f64(angle),
            fmt_f64(eps),
            fmt_f64(r.achieved_error),
            r.word.len(),
            r.recursion_depth,
            program_bits(&r.word, g)?
        )
        .expect("writing to a String cannot fail");
    }
    Ok(out)
}

struct PartialModPoint {
    p: u64,
    delta: f64,
    inst: PartialModInstance,
}

fn partialmod_points(cfg: &RunConfig) -> Result<Vec<PartialModPoint>, CliError> {
    let mut points = Vec::new();
    if let Some(path) = &cfg.stream_file {
        let text = fs::read_to_string(path)?;
        let bits: BitStream = text.parse()?;
        for &p in &cfg.p {
            let inst = PartialModInstance::new(p, bits.clone())?;
            for &delta in &cfg.delta {
                points.push(PartialModPoint {
                    p,
                    delta,
                    inst: inst.clone(),
                });
            }
        }
        return Ok(points);
    }
    let mut counter = 0;
    for &p in &cfg.p {
        for &v in &cfg.v {
            let ones = p
                .checked_mul(v)
                .ok_or_else(|| CliError::Config(format!("v·p overflows for p={p}, v={v}")))?;
            let length = ones as usize + cfg.padding;
            let seed = split_seed(cfg.seed, stream::PLACEMENT, counter);
            counter += 1;
            let inst = PartialModInstance::new(p, BitStream::generate(p, v, length, seed)?)?;
            for &delta in &cfg.delta {
                points.push(PartialModPoint {
                    p,
                    delta,
                    inst: inst.clone(),
                });
            }
        }
    }
    Ok(points)
}

pub fn cmd_partialmod(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let net = load_net(cfg)?;
    let gs = net.gate_set();
    let points = partialmod_points(cfg)?;
    let rows = exec::map(
        &points,
        |pt| -> Result<(String, Option<String>, Option<String>), CliError> {
            let v = pt.inst.v();
            let classical = classical_baseline(Baseline::PartialMod { p: pt.p });
            let label = format!("p={} v={v} delta={}", pt.p, pt.delta);
            if v == 0 {
                let wrong = 1.0 - run_exact(&pt.inst).probability;
                let row = format!(
                    "{},0,{},,0,0,{classical},{},{}",
                    pt.p,
                    fmt_f64(pt.delta),
                    fmt_f64(0.0),
                    fmt_f64(wrong)
                );
                return Ok((row, None, None));
            }
            let eps = required_accuracy(v, pt.p, pt.delta)?;
            let (r, note) = synth_or_best(&net, &rotation_y(pt.inst.theta()), eps, cfg.depth_max)?;
            let dist = run_synthesized(&pt.inst, gs, &r.word)?;
            let wrong = 1.0 - dist.probability(pt.inst.expected_parity());
            let row = format!(
                "{},{v},{},{},{},{},{classical},{},{}",
                pt.p,
                fmt_f64(pt.delta),
                fmt_f64(eps),
                r.word.len(),
                program_bits(&r.word, gs.len())?,
                fmt_f64(perturbed_wrong_probability(v, pt.p, eps)),
                fmt_f64(wrong)
            );
            let failure = (wrong > 4.0 * pt.delta)
                .then(|| format!("{label}: wrong-parity probability {wrong:e} exceeds 4·delta"));
            Ok((row, failure, note.map(|n| format!("{label}: {n}"))))
        },
    );
    let mut out = CommandOutput::default();
    out.text.push_str(
        "p,v,delta,eps_required,word_length,program_bits,classical_bits,wrong_prob_analytic,wrong_prob_simulated\n",
    );
    for row in rows {
        let (row, failure, note) = row?;
        out.text.push_str(&row);
        out.text.push('\n');
        out.failures.extend(failure);
        out.capped.extend(note);
    }
    Ok(out)
}

fn export_set(dir: &Path, fs_: &FingerprintSet) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    let name = format!("fingerprint_n{}_eps{}.txt", fs_.n(), fs_.epsilon());
    fs::write(dir.join(name), fs_.to_text())?;
    Ok(())
}

/// Empty when `t` exceeds `2ⁿ`, where no `t`-subset exists to count.
fn storage_field(n: u32, eps: f64) -> Result<String, CliError> {
    if fingerprint_size(n, eps)? as u128 > 1u128 << n {
        return Ok(String::new());
    }
    Ok(equality_storage_bits(n, eps)?.to_string())
}

fn equality_row(found: &FoundSet, found_ok: bool, out: &mut CommandOutput) -> Result<(), CliError> {
    let set = &found.set;
    let (n, eps) = (set.n(), set.epsilon());
    let worst = found.max_residual.powi(2);
    writeln!(
        out.text,
        "{n},{},{},{},{},{},{},{}",
        fmt_f64(eps),
        set.t(),
        found.attempts,
        fmt_f64(found.max_residual),
        storage_field(n, eps)?,
        classical_baseline(Baseline::EqualityDeterministic { n }),
        fmt_f64(worst)
    )
    .expect("writing to a String cannot fail");
    if found_ok && worst > eps {
        out.failures.push(format!(
            "n={n} eps={eps}: worst false accept {worst:e} exceeds eps"
        ));
    }
    Ok(())
}

pub fn cmd_equality(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let mut out = CommandOutput::default();
    out.text.push_str(
        "n,eps,t,attempts,max_residual_g,storage_bits_entropy,baseline_bits,worst_false_accept\n",
    );
    if let Some(path) = &cfg.import_set {
        let set = FingerprintSet::from_text(&fs::read_to_string(path)?)?;
        let found = FoundSet {
            max_residual: max_residual(&set)?,
            attempts: 0,
            set,
        };
        if found.max_residual > found.set.epsilon().sqrt() {
            out.failures
                .push("imported set does not meet its accuracy".to_string());
        }
        equality_row(&found, true, &mut out)?;
        return Ok(out);
    }
    for &n in &cfg.n {
        for &eps in &cfg.eps {
            let seed = split_seed(cfg.seed, n as u64, eps.to_bits());
            match find_fingerprint_set(n, eps, seed, cfg.max_attempts) {
                Ok(found) => {
                    if let Some(dir) = &cfg.export_dir {
                        export_set(dir, &found.set)?;
                    }
                    equality_row(&found, true, &mut out)?;
                }
                Err(qsk_core::Error::SearchExhausted {
                    attempts,
                    best_max_deviation,
                }) => {
                    out.capped.push(format!(
                        "n={n} eps={eps}: no set after {attempts} attempts (best {best_max_deviation:e})"
                    ));
                    let t = fingerprint_size(n, eps)?.next_power_of_two();
                    writeln!(
                        out.text,
                        "{n},{},{t},{attempts},{},{},{},",
                        fmt_f64(eps),
                        fmt_f64(best_max_deviation),
                        storage_field(n, eps)?,
                        classical_baseline(Baseline::EqualityDeterministic { n })
                    )
                    .expect("writing to a String cannot fail");
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(out)
}

pub fn cmd_segments(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let mut out = CommandOutput::default();
    out.text
        .push_str("p0,eps,segments_iterated,segments_closed_form\n");
    for &p0 in &cfg.p0 {
        for &eps in &cfg.eps {
            let iterated = count_covering_segments(p0, eps)?;
            let closed = segments_closed_form(p0, eps)?;
            if (iterated as f64 - closed.ceil()).abs() > 1.0 {
                out.failures.push(format!(
                    "p0={p0} eps={eps}: iterated {iterated} vs closed form {closed}"
                ));
            }
            writeln!(
                out.text,
                "{p0},{},{iterated},{}",
                fmt_f64(eps),
                fmt_f64(closed)
            )
            .expect("writing to a String cannot fail");
        }
    }
    Ok(out)
}

/// Space report for the first value of each relevant sweep list.
pub fn space_report(cfg: &RunConfig) -> Result<(SpaceReport, Vec<String>), CliError> {
    let mut capped = Vec::new();
    let report = if cfg.problem == "partialmod" {
        let (p, v, delta) = (cfg.p[0], cfg.v[0], cfg.delta[0]);
        let params = ProblemParams::PartialMod { p, v, delta };
        let gs = GateSet::by_name(&cfg.gate_set)?;
        if v == 0 {
            build_report(
                params,
                SynthesisInputs::PartialMod {
                    result: None,
                    gate_set_size: gs.len(),
                },
            )?
        } else {
            let net = load_net(cfg)?;
            let eps = required_accuracy(v, p, delta)?;
            let target = rotation_y(std::f64::consts::PI / (2 * p) as f64);
            let (r, note) = synth_or_best(&net, &target, eps, cfg.depth_max)?;
            capped.extend(note);
            build_report(
                params,
                SynthesisInputs::PartialMod {
                    result: Some(&r),
                    gate_set_size: gs.len(),
                },
            )?
        }
    } else {
        let (n, eps) = (cfg.n[0], cfg.eps[0]);
        let seed = split_seed(cfg.seed, n as u64, eps.to_bits());
        let found = find_fingerprint_set(n, eps, seed, cfg.max_attempts)?;
        build_report(
            ProblemParams::Equality { n, eps },
            SynthesisInputs::Equality { set: &found.set },
        )?
    };
    Ok((report, capped))
}

pub fn cmd_report(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let (report, capped) = space_report(cfg)?;
    let text = if cfg.format == "csv" {
        format!("{}\n{}\n", SpaceReport::CSV_HEADER, report.to_csv_row())
    } else {
        report.to_string()
    };
    Ok(CommandOutput {
        text,
        failures: Vec::new(),
        capped,
    })
}
