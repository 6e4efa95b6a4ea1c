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

//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers fan out over the rayon pool;
//! without it, or after [`set_force_sequential`], they run on the calling
//! thread. Results are always returned in input order so parallel and
//! sequential runs produce identical values.

use std::ops::Range;
use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Route every helper through the sequential path at runtime.
pub fn set_force_sequential(on: bool) {
    FORCE_SEQUENTIAL.store(on, Ordering::SeqCst);
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.load(Ordering::Relaxed)
}

/// Ordered map over a slice.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Ordered map over an index range.
pub fn map_range<R, F>(range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return range.into_par_iter().map(f).collect();
    }
    range.map(f).collect()
}

/// Maximum of `f` over an index range, `None` when the range is empty.
///
/// Ties resolve to the lowest index and NaN is treated as smaller than any
/// number, so the result does not depend on the scheduling order.
pub fn max_over_range<F>(range: Range<usize>, f: F) -> Option<(usize, f64)>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let better = |a: (usize, f64), b: (usize, f64)| -> (usize, f64) {
        match b.1.partial_cmp(&a.1) {
            Some(std::cmp::Ordering::Greater) => b,
            Some(std::cmp::Ordering::Equal) if b.0 < a.0 => b,
            None if a.1.is_nan() && !b.1.is_nan() => b,
            _ => a,
        }
    };
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return range.into_par_iter().map(|i| (i, f(i))).reduce_with(better);
    }
    range.map(|i| (i, f(i))).reduce(better)
}

/// True when `pred` holds for at least one index.
pub fn any_in_range<F>(range: Range<usize>, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return range.into_par_iter().any(pred);
    }
    range.into_iter().any(pred)
}
