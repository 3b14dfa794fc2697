use std::collections::BTreeSet;
use std::process::Command;

use quadpoisson::report::Report;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quadpoisson"))
}

fn run_json(args: &[&str]) -> (Report, i32) {
    let out = bin().args(args).args(["--format", "json"]).output().unwrap();
    let rep: Report = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stderr));
    });
    (rep, out.status.code().unwrap())
}

#[test]
fn verify_anchor_nonzero_slices() {
    let (rep, code) = run_json(&["verify", "dh2", "--a", "1", "--b", "1", "--rmax", "12"]);
    assert_eq!(code, 0);
    assert!(rep.verification.iter().all(|v| v.dim == v.expected));
    let nonzero: BTreeSet<_> = rep.slices.iter().filter(|s| s.dim > 0).map(|s| (s.d, s.k, s.r)).collect();
    let want: BTreeSet<_> = [(0, 2, 3), (1, 2, 3), (2, 2, 3), (3, 2, 3), (3, 0, 0)].into_iter().collect();
    assert_eq!(nonzero, want);
}

#[test]
fn verify_a0_degree_two_count() {
    // H^2(R) for a = 0, listed by bigrade: D^m Y-terms at (2m,3m) for
    // m >= 1, the pair at (m,m) for m >= 1, and z^(r-1) d12 at (0,r).
    let rmax = 12u32;
    let mut listed = BTreeSet::new();
    for m in 1..=rmax {
        if 3 * m <= rmax {
            listed.insert((2 * m, 3 * m));
        }
        listed.insert((m, m));
        listed.insert((0, m));
    }
    let (rep, code) = run_json(&["verify", "--structure", "dh2", "--a", "0", "--b", "1", "--rmax", "12"]);
    assert_eq!(code, 0);
    let got: BTreeSet<_> = rep.slices.iter().filter(|s| s.d == 2 && s.dim > 0).map(|s| (s.k, s.r)).collect();
    assert_eq!(got, listed);
    assert_eq!(got.len(), 28);
}

#[test]
fn json_round_trip_preserves_dims() {
    let out = bin().args(["compute", "dh7", "--a", "0", "--b", "1", "--c", "-2", "--rmax", "5", "--complex", "all"]).args(["--format", "json"]).output().unwrap();
    assert!(out.status.success());
    let rep: Report = serde_json::from_slice(&out.stdout).unwrap();
    let again = serde_json::to_string(&rep).unwrap();
    let back: Report = serde_json::from_str(&again).unwrap();
    assert_eq!(back.dims(), rep.dims());
    let kinds: BTreeSet<_> = rep.slices.iter().map(|s| s.complex.to_string()).collect();
    assert_eq!(kinds.len(), 3);
}

#[test]
fn output_is_deterministic() {
    let args = ["compute", "dh7", "--a", "1", "--b", "2", "--c", "3/2", "--rmax", "5", "--complex", "r,s", "--format", "csv"];
    let a = bin().args(args).output().unwrap().stdout;
    let b = bin().args(args).output().unwrap().stdout;
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "dh2", "--a", "0.5", "--b", "1"][..],
        &["verify", "dh2", "--a", "1"][..],
        &["verify", "--rmax", "3"][..],
        &["compute", "custom"][..],
        &["frobnicate"][..],
    ] {
        let out = bin().args(args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn diagonal_case_diagnostic() {
    let out = bin().args(["verify", "dh2", "--a", "1", "--b", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("no closed-form cohomology"), "{err}");
}

#[test]
fn non_poisson_tensor_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.txt");
    std::fs::write(&path, "(x2*x3)*d23 + (x1^2)*d31\n").unwrap();
    let out = bin().args(["compute", "custom", "--tensor", path.to_str().unwrap(), "--rmax", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("[Λ,Λ] ≠ 0"), "{err}");
    assert!(err.contains("d123"), "{err}");
}

#[test]
fn custom_admissible_tensor_matches_preset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.txt");
    std::fs::write(&path, "(2*x1*x3 - x2*x3)*d23 + (x1*x3 + 2*x2*x3)*d31 + (x1^2 + x2^2)*d12").unwrap();
    let (custom, code) = run_json(&["compute", "custom", "--tensor", path.to_str().unwrap(), "--rmax", "4"]);
    assert_eq!(code, 0);
    let (preset, _) = run_json(&["compute", "dh2", "--a", "1", "--b", "1", "--rmax", "4"]);
    assert_eq!(custom.dims(), preset.dims());
}

#[test]
fn rmatrix_subcommands() {
    let (rep, code) = run_json(&["rmatrix", "stabilizer", "dh2", "--a", "1", "--b", "1"]);
    assert_eq!(code, 0);
    assert_eq!(rep.rmatrix.unwrap().dim, Some(3));
    let (rep, code) = run_json(&["rmatrix", "yb", "dh7", "--a", "1", "--b", "1", "--c", "1"]);
    assert_eq!(code, 0);
    assert_eq!(rep.rmatrix.unwrap().yang_baxter_zero, Some(true));
}

#[test]
fn les_check_passes() {
    let (rep, code) = run_json(&["les-check", "dh2", "--a", "1", "--b", "-1", "--rmax", "5"]);
    assert_eq!(code, 0);
    assert_eq!(rep.les.len(), 21);
}

#[test]
fn markdown_groups_by_degree() {
    let out = bin().args(["compute", "dh2", "--a", "1", "--b", "1", "--rmax", "4"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let heads: Vec<_> = text.lines().filter(|l| l.starts_with("## d = ")).collect();
    assert_eq!(heads, ["## d = 0", "## d = 1", "## d = 2", "## d = 3"]);
}
