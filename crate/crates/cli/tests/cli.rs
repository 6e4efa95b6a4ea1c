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

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qsk_cli::{run, CommandKind, RunConfig};

fn qsk(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsk"))
        .args(args)
        .env("QSK_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

/// Data rows of a CSV with `#` comment lines, as vectors of fields.
fn rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let body = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, body)
}

fn col(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

fn f(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn reruns_are_byte_identical() {
    let cache = tempfile::tempdir().unwrap();
    let dir = tempfile::tempdir().unwrap();
    for (cmd, extra) in [
        ("synth", vec!["--angle", "0.3,1.0", "--eps", "0.1,0.01"]),
        ("equality", vec!["--n", "6,8"]),
        ("partialmod", vec!["--p", "3,16", "--v", "0,2"]),
    ] {
        let mut outs = Vec::new();
        for k in 0..2 {
            let path = dir.path().join(format!("{cmd}{k}.csv"));
            let mut args = vec![cmd, "--seed", "7", "--out", path.to_str().unwrap()];
            args.extend(&extra);
            let o = qsk(&args, cache.path());
            assert_eq!(
                o.status.code(),
                Some(0),
                "{}",
                String::from_utf8_lossy(&o.stderr)
            );
            outs.push(fs::read(&path).unwrap());
        }
        assert_eq!(outs[0], outs[1], "{cmd}");
        let text = String::from_utf8(outs.remove(0)).unwrap();
        assert!(text.starts_with(&format!("# tool=qsk {}\n", env!("CARGO_PKG_VERSION"))));
        assert!(text.contains("# seed=7\n"));
        assert!(text.contains(&format!("# command={cmd}\n")));
    }
    assert!(cache.path().join("clifford_t_L10.qsknet").exists());
}

#[test]
fn exit_codes() {
    let cache = tempfile::tempdir().unwrap();
    assert_eq!(qsk(&["segments"], cache.path()).status.code(), Some(0));
    assert_eq!(
        qsk(&["scaling", "--depth-max", "2"], cache.path())
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qsk(&["synth", "--l0", "0"], cache.path()).status.code(),
        Some(2)
    );
    assert_eq!(qsk(&["nonsense"], cache.path()).status.code(), Some(2));
    assert_eq!(
        qsk(&["synth", "--gate-set", "bogus"], cache.path())
            .status
            .code(),
        Some(2)
    );
    let o = qsk(
        &["synth", "--l0", "4", "--depth-max", "1", "--eps", "1e-9"],
        cache.path(),
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unreachable"));
    let o = qsk(
        &[
            "equality",
            "--n",
            "1",
            "--eps",
            "0.1",
            "--max-attempts",
            "2",
        ],
        cache.path(),
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn config_file_and_flag_precedence() {
    let cache = tempfile::tempdir().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# segments grid\nseed = 5\np0 = 1, 1000\neps = 0.2\n").unwrap();
    let o = qsk(
        &["segments", "--config", cfg.to_str().unwrap(), "--seed", "6"],
        cache.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("# seed=6\n"));
    assert!(text.contains("# p0=1,1000\n"));
    let (h, body) = rows(&text);
    assert_eq!(body.len(), 2);
    assert_eq!(body[0][col(&h, "segments_iterated")], "1");
    fs::write(&cfg, "no_such_key = 1\n").unwrap();
    let o = qsk(
        &["segments", "--config", cfg.to_str().unwrap()],
        cache.path(),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn synth_rows() {
    let mut cfg = RunConfig::defaults(CommandKind::Synth);
    cfg.angles = vec![0.3, 2.0];
    cfg.eps = vec![1e-1, 3e-2, 1e-2, 3e-3, 1e-3];
    let out = run(&cfg).unwrap();
    assert_eq!(out.exit_code(), 0);
    let (h, body) = rows(&out.text);
    assert_eq!(
        h,
        [
            "angle",
            "eps_requested",
            "eps_achieved",
            "length",
            "depth",
            "program_bits"
        ]
    );
    for chunk in body.chunks(5) {
        let lengths: Vec<usize> = chunk.iter().map(|r| r[3].parse().unwrap()).collect();
        assert!(lengths.windows(2).all(|w| w[0] <= w[1]), "{lengths:?}");
        assert_eq!(chunk[0][col(&h, "depth")], "0");
        for r in chunk {
            assert!(f(&r[2]) <= f(&r[1]));
            assert_eq!(
                r[5].parse::<usize>().unwrap(),
                2 * r[3].parse::<usize>().unwrap()
            );
        }
    }
}

#[test]
fn partialmod_rows() {
    let mut cfg = RunConfig::defaults(CommandKind::PartialMod);
    cfg.p = vec![2, 5, 1024];
    cfg.v = vec![0, 1, 4, 6];
    let out = run(&cfg).unwrap();
    assert_eq!(out.exit_code(), 0, "{:?}", out.failures);
    let (h, body) = rows(&out.text);
    assert_eq!(body.len(), 3 * 4 * 3);
    for r in &body {
        let (p, v): (u64, u64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        let delta = f(&r[col(&h, "delta")]);
        let wrong = f(&r[col(&h, "wrong_prob_simulated")]);
        assert!(wrong <= 4.0 * delta);
        if v == 0 {
            assert_eq!(wrong, 0.0);
        }
        let program: u64 = r[col(&h, "program_bits")].parse().unwrap();
        let classical: u64 = r[col(&h, "classical_bits")].parse().unwrap();
        if p == 1024 && v >= 4 {
            assert!(program >= classical);
        }
    }
}

#[test]
fn partialmod_stream_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stream.txt");
    fs::write(&path, "0110 1001\n1101 0000 10\n").unwrap();
    let mut cfg = RunConfig::defaults(CommandKind::PartialMod);
    cfg.stream_file = Some(path);
    cfg.p = vec![2, 4];
    cfg.delta = vec![0.1];
    let out = run(&cfg).unwrap();
    let (_, body) = rows(&out.text);
    assert_eq!(body[0][..2], ["2".to_string(), "4".to_string()]);
    assert_eq!(body[1][..2], ["4".to_string(), "2".to_string()]);
    cfg.p = vec![3];
    assert!(run(&cfg).is_err());
}

#[test]
fn equality_rows_and_set_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::defaults(CommandKind::Equality);
    cfg.n = vec![8, 12];
    cfg.eps = vec![0.25];
    cfg.export_dir = Some(dir.path().to_path_buf());
    let out = run(&cfg).unwrap();
    assert_eq!(out.exit_code(), 0);
    let (h, body) = rows(&out.text);
    for r in &body {
        let n: u32 = r[0].parse().unwrap();
        assert!(f(&r[col(&h, "worst_false_accept")]) <= 0.25);
        assert!(r[col(&h, "t")].parse::<usize>().unwrap().is_power_of_two());
        if n >= 12 {
            assert!(r[col(&h, "storage_bits_entropy")].parse::<u32>().unwrap() >= n);
        }
        assert_eq!(r[col(&h, "baseline_bits")], n.to_string());
    }
    let exported = dir.path().join("fingerprint_n8_eps0.25.txt");
    let mut import = RunConfig::defaults(CommandKind::Equality);
    import.import_set = Some(exported);
    let again = run(&import).unwrap();
    let (_, imported) = rows(&again.text);
    assert_eq!(imported[0][3], "0");
    assert_eq!(imported[0][4], body[0][4]);
}

#[test]
fn segments_rows() {
    let mut cfg = RunConfig::defaults(CommandKind::Segments);
    cfg.p0 = vec![1, 100, 1_000_000];
    cfg.eps = vec![0.02, 0.01, 0.005];
    let out = run(&cfg).unwrap();
    assert_eq!(out.exit_code(), 0);
    let (_, body) = rows(&out.text);
    assert_eq!(body[0][2], "1");
    for r in &body {
        assert!((r[2].parse::<f64>().unwrap() - f(&r[3])).abs() <= 1.0);
    }
    for chunk in body[6..].windows(2) {
        let ratio = f(&chunk[1][2]) / f(&chunk[0][2]);
        assert!((ratio - 2.0).abs() < 0.01, "{ratio}");
    }
}

#[test]
fn scaling_fit_is_reproducible() {
    let mut cfg = RunConfig::defaults(CommandKind::Scaling);
    cfg.targets = 40;
    cfg.depth_max = 5;
    let a = run(&cfg).unwrap();
    let b = run(&cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.exit_code(), 0, "{:?}", a.failures);
    assert!(a.text.contains("# fit ln_a="));
    cfg.seed = 2;
    let c = run(&cfg).unwrap();
    assert_eq!(c.exit_code(), 0, "{:?}", c.failures);
}

#[test]
fn report_formats() {
    let mut cfg = RunConfig::defaults(CommandKind::Report);
    cfg.problem = "equality".into();
    cfg.n = vec![10];
    let text = run(&cfg).unwrap().text;
    assert!(text.starts_with("Equality  n=10"));
    cfg.format = "csv".into();
    let csv = run(&cfg).unwrap().text;
    assert!(csv.starts_with("# tool=qsk"));
    assert!(csv.contains("\nproblem,p,v,delta,n,eps,"));
    cfg.problem = "partialmod".into();
    cfg.v = vec![0];
    let (_, body) = rows(&run(&cfg).unwrap().text);
    assert_eq!(body[0][6], "0");
}
