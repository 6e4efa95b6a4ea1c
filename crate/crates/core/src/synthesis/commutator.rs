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
use crate::su2::{dist_projective, rotation_about, to_axis_angle, Unitary2};

/// Largest residual distance from the identity accepted by [`gc_decompose`].
pub const GC_MAX_DISTANCE: f64 = 0.5;

/// Balanced group-commutator factors `(V, W)` with `V W V† W† = Δ` up to
/// global phase.
pub fn gc_decompose(delta: &Unitary2) -> Result<(Unitary2, Unitary2)> {
    let d = dist_projective(delta, &Unitary2::IDENTITY);
    if d > GC_MAX_DISTANCE {
        return Err(domain(format!(
            "commutator input at distance {d} from identity exceeds {GC_MAX_DISTANCE}"
        )));
    }
    Ok(balanced_commutator(delta))
}

/// `V` and `W` rotate by the same angle `θ` about the x and y axes, with
/// `sin²(θ/2) = sin(φ/4)` for a target rotation angle `φ`; this solves
/// `sin(φ/2) = 2 sin²(θ/2)·sqrt(1 − sin⁴(θ/2))`. Both factors are then
/// conjugated by the rotation carrying the commutator's axis onto `Δ`'s.
///
/// Valid for every `φ ∈ [0, π]`; the distance guard lives in [`gc_decompose`].
pub(crate) fn balanced_commutator(delta: &Unitary2) -> (Unitary2, Unitary2) {
    let target = to_axis_angle(delta);
    if target.angle == 0.0 {
        return (Unitary2::IDENTITY, Unitary2::IDENTITY);
    }
    let theta = 2.0 * (target.angle / 4.0).sin().sqrt().asin();
    let v = rotation_about([1.0, 0.0, 0.0], theta).expect("unit axis");
    let w = rotation_about([0.0, 1.0, 0.0], theta).expect("unit axis");
    let comm = v * w * v.adjoint() * w.adjoint();
    let s = align(to_axis_angle(&comm).axis, target.axis);
    (s * v * s.adjoint(), s * w * s.adjoint())
}

/// A rotation taking unit vector `from` onto unit vector `to`.
fn align(from: [f64; 3], to: [f64; 3]) -> Unitary2 {
    let cross = [
        from[1] * to[2] - from[2] * to[1],
        from[2] * to[0] - from[0] * to[2],
        from[0] * to[1] - from[1] * to[0],
    ];
    let dot = from[0] * to[0] + from[1] * to[1] + from[2] * to[2];
    let sin = cross.iter().map(|x| x * x).sum::<f64>().sqrt();
    if sin < 1e-15 {
        if dot > 0.0 {
            return Unitary2::IDENTITY;
        }
        // antiparallel: half turn about any axis perpendicular to `from`
        let helper = if from[0].abs() < 0.9 {
            [1.0, 0.0, 0.0]
        } else {
            [0.0, 1.0, 0.0]
        };
        let perp = [
            from[1] * helper[2] - from[2] * helper[1],
            from[2] * helper[0] - from[0] * helper[2],
            from[0] * helper[1] - from[1] * helper[0],
        ];
        return rotation_about(perp, std::f64::consts::PI).expect("nonzero axis");
    }
    rotation_about(cross, sin.atan2(dot)).expect("nonzero axis")
}
