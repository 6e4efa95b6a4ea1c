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

//! Binary cache for ε-nets.
//!
//! Layout, all integers and floats little-endian:
//!
//! ```text
//! magic      8 bytes  "QSKNET\0\x01"
//! name_len   u16, then name_len bytes of UTF-8 gate-set name
//! l0         u32
//! count      u64      number of entries
//! resolution f64      ε₀
//! threshold  f64      dedup threshold
//! distinct   u64      distinct operators before coarse dedup
//! count × { word_len u16, word_len symbol bytes, 8 × f64 (re, im of U00 U01 U10 U11) }
//! ```

use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::net::NetEntry;
use super::{build_net, EpsilonNet, GateSet};
use crate::error::{Error, Result};
use crate::su2::{Complex, Unitary2};

const MAGIC: &[u8; 8] = b"QSKNET\0\x01";

/// `<dir>/<gate-set>_L<l0>.qsknet`
pub fn cache_path(dir: &Path, gate_set_name: &str, l0: usize) -> PathBuf {
    dir.join(format!("{gate_set_name}_L{l0}.qsknet"))
}

pub fn write_net(path: &Path, net: &EpsilonNet) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    out.write_all(MAGIC)?;
    let name = net.gate_set.name().as_bytes();
    out.write_all(&(name.len() as u16).to_le_bytes())?;
    out.write_all(name)?;
    out.write_all(&(net.max_word_length as u32).to_le_bytes())?;
    out.write_all(&(net.entries.len() as u64).to_le_bytes())?;
    out.write_all(&net.resolution.to_le_bytes())?;
    out.write_all(&net.dedup_threshold.to_le_bytes())?;
    out.write_all(&(net.distinct_operators as u64).to_le_bytes())?;
    for e in &net.entries {
        out.write_all(&(e.symbols.len() as u16).to_le_bytes())?;
        out.write_all(&e.symbols)?;
        for z in e.unitary.entries().iter().flatten() {
            out.write_all(&z.re.to_le_bytes())?;
            out.write_all(&z.im.to_le_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

fn take<const N: usize>(r: &mut impl Read) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)?;
    Ok(buf)
}

pub fn read_net(path: &Path) -> Result<EpsilonNet> {
    let mut r = BufReader::new(fs::File::open(path)?);
    if &take::<8>(&mut r)? != MAGIC {
        return Err(Error::Format(format!(
            "{} is not a net cache file",
            path.display()
        )));
    }
    let name_len = u16::from_le_bytes(take(&mut r)?) as usize;
    let mut name = vec![0u8; name_len];
    r.read_exact(&mut name)?;
    let name =
        String::from_utf8(name).map_err(|_| Error::Format("gate-set name is not UTF-8".into()))?;
    let gate_set = GateSet::by_name(&name)?;
    let l0 = u32::from_le_bytes(take(&mut r)?) as usize;
    let count = u64::from_le_bytes(take(&mut r)?) as usize;
    let resolution = f64::from_le_bytes(take(&mut r)?);
    let dedup_threshold = f64::from_le_bytes(take(&mut r)?);
    let distinct_operators = u64::from_le_bytes(take(&mut r)?) as usize;

    let mut entries = Vec::with_capacity(count.min(1 << 20));
    for _ in 0..count {
        let len = u16::from_le_bytes(take(&mut r)?) as usize;
        let mut symbols = vec![0u8; len];
        r.read_exact(&mut symbols)?;
        if len > l0 || symbols.iter().any(|&s| s as usize >= gate_set.len()) {
            return Err(Error::Format("net entry inconsistent with header".into()));
        }
        let mut vals = [0f64; 8];
        for v in vals.iter_mut() {
            *v = f64::from_le_bytes(take(&mut r)?);
        }
        let m = [
            [
                Complex::new(vals[0], vals[1]),
                Complex::new(vals[2], vals[3]),
            ],
            [
                Complex::new(vals[4], vals[5]),
                Complex::new(vals[6], vals[7]),
            ],
        ];
        let unitary = Unitary2::from_matrix(m)?;
        entries.push(NetEntry::new(symbols, unitary));
    }
    if r.read(&mut [0u8; 1])? != 0 {
        return Err(Error::Format("trailing bytes after net entries".into()));
    }
    Ok(EpsilonNet {
        gate_set,
        max_word_length: l0,
        entries,
        resolution,
        dedup_threshold,
        distinct_operators,
    })
}

/// Reads the cached net for `(gate_set, l0)` from `dir`, building and
/// writing it when absent or unreadable. `None` disables caching.
pub fn load_or_build(dir: Option<&Path>, gate_set: &GateSet, l0: usize) -> Result<EpsilonNet> {
    let Some(dir) = dir else {
        return build_net(gate_set, l0);
    };
    let path = cache_path(dir, gate_set.name(), l0);
    if let Ok(net) = read_net(&path) {
        if net.gate_set == *gate_set && net.max_word_length == l0 {
            return Ok(net);
        }
    }
    let net = build_net(gate_set, l0)?;
    fs::create_dir_all(dir)?;
    write_net(&path, &net)?;
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let gs = GateSet::clifford_t();
        let net = load_or_build(Some(dir.path()), &gs, 5).unwrap();
        let path = cache_path(dir.path(), "clifford_t", 5);
        assert!(path.exists());
        assert_eq!(read_net(&path).unwrap(), net);
        assert_eq!(load_or_build(Some(dir.path()), &gs, 5).unwrap(), net);
    }

    #[test]
    fn rejects_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.qsknet");
        fs::write(&path, b"not a net").unwrap();
        assert!(read_net(&path).is_err());
    }
}
