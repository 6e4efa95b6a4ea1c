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

use crate::error::{domain, Result};

fn check(p0: u64, eps: f64) -> Result<()> {
    if p0 < 1 {
        return Err(domain("p0 must be at least 1"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain("segment accuracy must lie in (0, 1)"));
    }
    Ok(())
}

/// Number of adjacent angle segments needed to reach `p0`.
///
/// Starting at `q₁ = 1`, each segment advances `q ← q·(1+ε)/(1−ε)`; the count
/// is the number of advances until `q ≥ p0`, and at least one segment is
/// always needed.
pub fn count_covering_segments(p0: u64, eps: f64) -> Result<u64> {
    check(p0, eps)?;
    let ratio = (1.0 + eps) / (1.0 - eps);
    let target = p0 as f64;
    let mut q = 1.0;
    let mut count = 0;
    loop {
        q *= ratio;
        count += 1;
        if q >= target {
            return Ok(count);
        }
    }
}

/// `ln p0 / ln((1+ε)/(1−ε))`.
pub fn segments_closed_form(p0: u64, eps: f64) -> Result<f64> {
    check(p0, eps)?;
    Ok((p0 as f64).ln() / ((1.0 + eps) / (1.0 - eps)).ln())
}
