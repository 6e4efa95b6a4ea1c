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

//! Word length versus achieved accuracy over the recursion depth.

use std::fmt::Write as _;

use qsk_core::exec;
use qsk_core::rng::{haar_sample, stream};
use qsk_core::su2::Unitary2;
use qsk_core::synthesis::{solovay_kitaev, EpsilonNet, LENGTH_SLACK};

use crate::{fmt_f64, load_net, CliError, CommandOutput, RunConfig};

pub const C_RANGE: (f64, f64) = (1.0, 5.0);
pub const MIN_R2: f64 = 0.9;
pub const MIN_POINTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingPoint {
    pub depth: usize,
    pub median_error: f64,
    pub max_error: f64,
    pub median_length: f64,
    pub max_length: usize,
    /// `5^depth · (L₀ + slack)`.
    pub length_bound: u64,
}

/// Least-squares fit of `ln L = ln a + c · ln ln(1/ε)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerFit {
    pub ln_a: f64,
    pub c: f64,
    pub r2: f64,
    pub points: usize,
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        0.5 * (values[k / 2 - 1] + values[k / 2])
    }
}

pub fn scaling_sweep(
    net: &EpsilonNet,
    targets: &[Unitary2],
    depth_max: usize,
) -> Result<Vec<ScalingPoint>, CliError> {
    let per_target = exec::map(targets, |u| {
        (0..=depth_max)
            .map(|d| solovay_kitaev(net, u, d).map(|r| (r.achieved_error, r.word.len())))
            .collect::<Result<Vec<_>, _>>()
    });
    let per_target = per_target.into_iter().collect::<Result<Vec<_>, _>>()?;
    let base_len = (net.max_word_length() + LENGTH_SLACK) as u64;
    Ok((0..=depth_max)
        .map(|d| {
            let mut errors: Vec<f64> = per_target.iter().map(|r| r[d].0).collect();
            let mut lengths: Vec<f64> = per_target.iter().map(|r| r[d].1 as f64).collect();
            ScalingPoint {
                depth: d,
                max_error: errors.iter().copied().fold(0.0, f64::max),
                median_error: median(&mut errors),
                median_length: median(&mut lengths),
                max_length: per_target.iter().map(|r| r[d].1).max().unwrap_or(0),
                length_bound: 5u64.pow(d as u32) * base_len,
            }
        })
        .collect())
}

/// Fits `(ε, L)` pairs with `0 < ε < 1` and `L ≥ 1`; `None` below
/// [`MIN_POINTS`] usable pairs.
pub fn fit_length_law(pairs: &[(f64, f64)]) -> Option<PowerFit> {
    let xy: Vec<(f64, f64)> = pairs
        .iter()
        .filter(|(e, l)| *e > 0.0 && *e < 1.0 && *l >= 1.0)
        .map(|&(e, l)| ((1.0 / e).ln().ln(), l.ln()))
        .collect();
    if xy.len() < MIN_POINTS {
        return None;
    }
    let k = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / k;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = xy.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let c = sxy / sxx;
    let ln_a = my - c * mx;
    let ss_res: f64 = xy.iter().map(|p| (p.1 - ln_a - c * p.0).powi(2)).sum();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Some(PowerFit {
        ln_a,
        c,
        r2,
        points: xy.len(),
    })
}

pub fn fit_points(points: &[ScalingPoint]) -> Option<PowerFit> {
    let pairs: Vec<(f64, f64)> = points
        .iter()
        .map(|p| (p.median_error, p.median_length))
        .collect();
    fit_length_law(&pairs)
}

pub fn cmd_scaling(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let net = load_net(cfg)?;
    let targets = haar_sample(cfg.seed, stream::HAAR_TARGETS, cfg.targets);
    let points = scaling_sweep(&net, &targets, cfg.depth_max)?;
    let mut out = CommandOutput::default();
    out.text
        .push_str("depth,median_error,max_error,median_length,max_length,length_bound\n");
    for p in &points {
        writeln!(
            out.text,
            "{},{},{},{},{},{}",
            p.depth,
            fmt_f64(p.median_error),
            fmt_f64(p.max_error),
            fmt_f64(p.median_length),
            p.max_length,
            p.length_bound
        )
        .expect("writing to a String cannot fail");
        if p.max_length as u64 > p.length_bound {
            out.failures.push(format!(
                "depth {}: length {} exceeds {}",
                p.depth, p.max_length, p.length_bound
            ));
        }
    }
    for w in points.windows(2) {
        if w[1].median_error >= w[0].median_error {
            out.failures.push(format!(
                "median error does not decrease from depth {} to {}",
                w[0].depth, w[1].depth
            ));
        }
    }
    match fit_points(&points) {
        Some(fit) => {
            writeln!(
                out.text,
                "# fit ln_a={} c={} r2={} points={}",
                fmt_f64(fit.ln_a),
                fmt_f64(fit.c),
                fmt_f64(fit.r2),
                fit.points
            )
            .expect("writing to a String cannot fail");
            if !(C_RANGE.0..=C_RANGE.1).contains(&fit.c) {
                out.failures
                    .push(format!("fitted exponent c = {} outside [1, 5]", fit.c));
            }
            if fit.r2 < MIN_R2 {
                out.failures
                    .push(format!("fit R² = {} below {MIN_R2}", fit.r2));
            }
        }
        None => out
            .failures
            .push(format!("fewer than {MIN_POINTS} usable points for the fit")),
    }
    Ok(out)
}
