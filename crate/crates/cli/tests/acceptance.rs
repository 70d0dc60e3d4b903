//! CLI acceptance: render integrity (exact frame geometry, CSV cells
//! against exact partial sums within the declared float budget) plus the
//! exit-code contract of the other subcommands.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use num_traits::ToPrimitive;

use blancmange::numeric::{rat_parse, rat_string, rat_int, Rational};
use blancmange::BlancmangeSpec;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_blancmange"))
}

fn write_classic_spec(dir: &Path) -> PathBuf {
    let path = dir.join("classic.json");
    std::fs::write(
        &path,
        r#"{"generator": {"p": 2, "vertices": ["0", "1/2", "0"]}, "c": 1}"#,
    )
    .unwrap();
    path
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

// Criterion 9: a 6-frame classic job at center 1/3, factor 4, sums
// 2,4,...,12 — frame widths follow factor^(−i) exactly and 100 spot
// checked CSV cells match exact partial sums within the float budget.
#[test]
fn criterion_9_render_integrity() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = write_classic_spec(dir.path());
    let out_dir = dir.path().join("frames");
    let status = run(bin()
        .args(["render", "--spec"])
        .arg(&spec_path)
        .args([
            "--sums", "2,4,6,8,10,12",
            "--center", "1/3",
            "--factor", "4",
            "--frames", "6",
            "--res", "64",
            "--out",
        ])
        .arg(&out_dir));
    assert!(status.status.success(), "{status:?}");

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("manifest.json")).unwrap())
            .unwrap();
    let budget = rat_parse(manifest["float_budget"].as_str().unwrap()).unwrap();
    let spec = BlancmangeSpec::classic();
    assert_eq!(
        budget,
        spec.tail_bound(12) + Rational::new(1.into(), num_bigint::BigInt::from(2u64.pow(40)))
    );
    let budget_f = budget.to_f64().unwrap();
    let sums = [2u32, 4, 6, 8, 10, 12];

    let mut width = rat_int(1);
    let mut checked = 0usize;
    for (i, frame) in manifest["frame_files"].as_array().unwrap().iter().enumerate() {
        // width(frame i) = factor^(−i), exactly.
        assert_eq!(rat_parse(frame["width"].as_str().unwrap()).unwrap(), width);
        width /= rat_int(4);

        let csv = std::fs::read_to_string(out_dir.join(frame["csv"].as_str().unwrap())).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "t,B_2,B_4,B_6,B_8,B_10,B_12");
        // Spot-check cells spread over rows and columns.
        for (row_idx, line) in lines.enumerate() {
            if row_idx % 3 != 0 || checked >= 150 {
                continue;
            }
            let cells: Vec<&str> = line.split(',').collect();
            let t = rat_parse(cells[0]).unwrap();
            let col = (row_idx / 3 + i) % sums.len();
            let exact = spec.partial_sum(sums[col], &t).to_f64().unwrap();
            let got: f64 = cells[col + 1].parse().unwrap();
            assert!(
                (got - exact).abs() <= budget_f,
                "cell mismatch at t={} col={}",
                rat_string(&t),
                col
            );
            checked += 1;
        }
        assert!(out_dir.join(frame["svg"].as_str().unwrap()).exists());
    }
    assert!(checked >= 100, "only {checked} cells checked");
    println!("criterion 9 (render integrity): pass");
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = write_classic_spec(dir.path());
    let mut outputs = Vec::new();
    for name in ["a", "b"] {
        let out_dir = dir.path().join(name);
        let status = run(bin()
            .args(["render", "--spec"])
            .arg(&spec_path)
            .args(["--sums", "2,6", "--center", "1/2", "--factor", "3", "--frames", "3", "--res", "32", "--out"])
            .arg(&out_dir));
        assert!(status.status.success());
        let mut all = String::new();
        for i in 0..3 {
            all.push_str(&std::fs::read_to_string(out_dir.join(format!("frame_{i}.csv"))).unwrap());
        }
        outputs.push(all);
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn render_rejects_bad_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = write_classic_spec(dir.path());
    // 7 sums > 6
    let out = run(bin()
        .args(["render", "--spec"])
        .arg(&spec_path)
        .args(["--sums", "1,2,3,4,5,6,7", "--out"])
        .arg(dir.path().join("x")));
    assert_eq!(out.status.code(), Some(2));
    // factor <= 1
    let out = run(bin()
        .args(["render", "--spec"])
        .arg(&spec_path)
        .args(["--sums", "2", "--factor", "1", "--out"])
        .arg(dir.path().join("y")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_exact_and_enclosure() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = write_classic_spec(dir.path());
    let out = run(bin()
        .args(["eval", "--spec"])
        .arg(&spec_path)
        .args(["--at", "1/4", "--json"]));
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exact"], "1/2");

    let out = run(bin()
        .args(["eval", "--spec"])
        .arg(&spec_path)
        .args(["--at", "1/3", "--tol", "1e-9", "--json"]));
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let lo = rat_parse(v["lo"].as_str().unwrap()).unwrap();
    let hi = rat_parse(v["hi"].as_str().unwrap()).unwrap();
    let two_thirds = rat_parse("2/3").unwrap();
    assert!(lo <= two_thirds && two_thirds <= hi);

    let out = run(bin()
        .args(["eval", "--spec"])
        .arg(&spec_path)
        .args(["--at", "0"]));
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("B(0) = 0"));
}

// The witness JSON re-verifies through an independent minimal checker:
// recompute the determinant from the three printed points alone.
#[test]
fn certify_output_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = write_classic_spec(dir.path());
    let witness_path = dir.path().join("witness.json");
    let out = run(bin()
        .args(["certify", "--spec"])
        .arg(&spec_path)
        .args(["--interval", "3/10 3/5", "--out"])
        .arg(&witness_path));
    assert!(out.status.success());
    let w: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&witness_path).unwrap()).unwrap();
    assert_eq!(w["interval"]["m"], 2);
    assert_eq!(w["interval"]["j"], "3");
    // Independent re-check from the printed points.
    let pts: Vec<(Rational, Rational)> = w["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                rat_parse(p[0].as_str().unwrap()).unwrap(),
                rat_parse(p[1].as_str().unwrap()).unwrap(),
            )
        })
        .collect();
    let det = (&pts[2].0 - &pts[0].0) * (&pts[1].1 - &pts[0].1)
        - (&pts[1].0 - &pts[0].0) * (&pts[2].1 - &pts[0].1);
    assert_eq!(rat_string(&det), w["det"].as_str().unwrap());
    assert!(det != rat_int(0));
}

#[test]
fn certify_rejects_degenerate_interval() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = write_classic_spec(dir.path());
    let out = run(bin()
        .args(["certify", "--spec"])
        .arg(&spec_path)
        .args(["--interval", "1/2 1/2"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = write_classic_spec(dir.path());
    let out = run(bin()
        .args(["scan", "--spec"])
        .arg(&spec_path)
        .args(["--t0", "0", "--depth", "8"]));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,h,slope");
    for (n, line) in lines.enumerate() {
        let n = n as u32 + 1;
        assert_eq!(line, format!("{},1/{},{}", n, 2u64.pow(n + 1), n + 1));
    }

    let out = run(bin()
        .args(["scan", "--spec"])
        .arg(&spec_path)
        .args(["--t0", "1/3", "--depth", "3"]));
    assert_eq!(out.status.code(), Some(2)); // off-lattice t0
}

#[test]
fn approx_pipeline_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("tent.csv");
    std::fs::write(&samples, "t,f\n0,0\n1/2,1/2\n1,0\n").unwrap();
    let out = run(bin().arg("approx").arg(&samples).args(["--eps", "1/10"]));
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["spec"]["generator"]["p"], 2);
    assert_eq!(v["interp_error"]["hi"], "0");
    let total = rat_parse(v["total"]["hi"].as_str().unwrap()).unwrap();
    assert!(total < rat_parse("1/10").unwrap());

    let zeros = dir.path().join("zeros.csv");
    std::fs::write(&zeros, "t,f\n0,0\n1/2,0\n1,0\n").unwrap();
    let out = run(bin().arg("approx").arg(&zeros).args(["--eps", "1/10"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1() {
    let out = run(bin().arg("no-such-command"));
    assert_eq!(out.status.code(), Some(1));
    let out = run(bin().arg("eval"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let out = run(bin().args(["selftest", "--seed", "7"]));
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("exactly zero"));
}

#[test]
fn spec_file_with_generator_path() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("gen.json"),
        r#"{"p": 3, "vertices": ["0", "1", "1/2", "0"]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.path().join("spec.json"),
        r#"{"generator": "gen.json", "c": 2}"#,
    )
    .unwrap();
    let out = run(bin()
        .args(["eval", "--spec"])
        .arg(dir.path().join("spec.json"))
        .args(["--at", "1/3", "--json"]));
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exact"], "1");
}
