use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use chanrep::random::random_matrix;
use chanrep::{
    choi_representation, depolarizing, general_natural_representation, natural_representation,
    pauli_basis, reshuffle, ComplexMatrix, C64,
};
use chanrep_cli::{cmd_convert, cmd_repr, emit_matrix, parse_matrix, BasisChoice, Form, ReprKind};
use rand::{rngs::StdRng, Rng, SeedableRng};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn chanrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chanrep"))
        .args(args)
        .output()
        .expect("spawn chanrep")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn repr_natural_transpose_matches_golden() {
    let out = chanrep(&["repr", path_str(&fixture("transpose2.json")), "--form", "natural"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
    assert_eq!(out.stdout, fs::read(golden("swap_natural.json")).unwrap());
}

#[test]
fn repr_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let dest = dir.path().join("choi.json");
    let out = chanrep(&[
        "repr",
        path_str(&fixture("identity3.json")),
        "--form",
        "choi",
        "--out",
        path_str(&dest),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read(&dest).unwrap(), fs::read(golden("identity3_choi.json")).unwrap());

    // Σ E_kl ⊗ E_kl: ones exactly where row and column are both of the form k*3 + k
    let m = parse_matrix(&fs::read_to_string(&dest).unwrap(), "choi").unwrap();
    for r in 0..9 {
        for c in 0..9 {
            let want = if r % 4 == 0 && c % 4 == 0 { 1.0 } else { 0.0 };
            assert_eq!(m[(r, c)], C64::new(want, 0.0));
        }
    }
}

#[test]
fn repr_general_pauli_depolarizing() {
    let payload = cmd_repr(&fixture("depolarizing2_p05.json"), Form::General, &BasisChoice::Pauli).unwrap();
    let m = parse_matrix(&payload, "out").unwrap();
    let want = ComplexMatrix::from_real(
        4,
        4,
        &[
            1.0, 0.0, 0.0, 0.0, //
            0.0, 0.5, 0.0, 0.0, //
            0.0, 0.0, 0.5, 0.0, //
            0.0, 0.0, 0.0, 0.5,
        ],
    )
    .unwrap();
    assert!(m.max_abs_diff(&want) < 1e-12);
    assert_eq!(payload.as_bytes(), fs::read(golden("depolarizing2_p05_pauli.json")).unwrap());
}

#[test]
fn cli_output_is_serialized_library_result() {
    let ch = depolarizing(2, 0.5).unwrap();
    let spec = fixture("depolarizing2_p05.json");
    let cases = [
        (Form::Natural, BasisChoice::Canonical, natural_representation(&ch).into_matrix()),
        (Form::Choi, BasisChoice::Canonical, choi_representation(&ch).into_matrix()),
        (
            Form::General,
            BasisChoice::Pauli,
            general_natural_representation(&ch, &pauli_basis()).unwrap().into_matrix(),
        ),
    ];
    for (form, basis, lib) in cases {
        assert_eq!(cmd_repr(&spec, form, &basis).unwrap(), emit_matrix(&lib));
    }
}

#[test]
fn repr_error_exit_codes() {
    let spec = fixture("depolarizing2_p05.json");
    let basis = format!("file:{}", path_str(&fixture("nonorthonormal_basis.json")));
    let out = chanrep(&["repr", path_str(&spec), "--form", "general", "--basis", &basis]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("orthonormal"));

    let out = chanrep(&["repr", path_str(&fixture("kraus_bad_shape.json")), "--form", "natural"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("operators[1]"));

    let out = chanrep(&["repr", "/definitely/missing.json", "--form", "natural"]);
    assert_eq!(out.status.code(), Some(4));

    let out = chanrep(&["repr", path_str(&fixture("identity3.json")), "--form", "general", "--basis", "pauli"]);
    assert_eq!(out.status.code(), Some(6));

    let out = chanrep(&["repr", path_str(&spec), "--form", "natural", "--basis", "pauli"]);
    assert_eq!(out.status.code(), Some(2));

    let out = chanrep(&["repr", path_str(&spec), "--form", "general", "--basis", "weird"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    let out = chanrep(&["check", path_str(&fixture("transpose2.json"))]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("min Choi eigenvalue -1"), "{text}");

    let out = chanrep(&["check", path_str(&fixture("depolarizing2_p03.json")), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["cptp"], true);

    let out = chanrep(&["check", path_str(&fixture("kraus_2i.json")), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["trace_preserving"], false);
    assert!((v["tp_residual"].as_f64().unwrap() - 3.0).abs() < 1e-12);

    let out = chanrep(&["check", path_str(&fixture("kraus_bad_shape.json"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convert_paths() {
    let swap = golden("swap_natural.json");
    let out = chanrep(&["convert", "--from", "natural", "--to", "choi", path_str(&swap)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, fs::read(&swap).unwrap());

    let hand_written = fixture("choi4_compact.json");
    let out = chanrep(&["convert", "--from", "choi", "--to", "choi", path_str(&hand_written)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, fs::read(&hand_written).unwrap());

    let out = chanrep(&["convert", "--from", "natural", "--to", "choi", path_str(&fixture("not_square_side.json"))]);
    assert_eq!(out.status.code(), Some(5));

    let out = chanrep(&["convert", "--from", "natural", "--to", "choi", path_str(&fixture("transpose2.json"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convert_round_trip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = StdRng::seed_from_u64(5);
    let m = random_matrix(&mut rng, 9);
    let a = dir.path().join("a.json");
    fs::write(&a, emit_matrix(&m)).unwrap();

    let natural = cmd_convert(ReprKind::Choi, ReprKind::Natural, &a).unwrap();
    assert_eq!(
        parse_matrix(std::str::from_utf8(&natural).unwrap(), "n").unwrap(),
        reshuffle(&m).unwrap()
    );
    let b = dir.path().join("b.json");
    fs::write(&b, &natural).unwrap();
    let back = cmd_convert(ReprKind::Natural, ReprKind::Choi, &b).unwrap();
    let back = parse_matrix(std::str::from_utf8(&back).unwrap(), "c").unwrap();
    assert!(back.max_abs_diff(&m) <= 1e-15);
    assert_eq!(back, m);
}

#[test]
fn apply_paths() {
    let out = chanrep(&[
        "apply",
        path_str(&fixture("depolarizing3_p1.json")),
        "--state",
        path_str(&fixture("state3.json")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let m = parse_matrix(std::str::from_utf8(&out.stdout).unwrap(), "out").unwrap();
    let mixed = ComplexMatrix::identity(3).scale(C64::new(1.0 / 3.0, 0.0));
    assert!(m.max_abs_diff(&mixed) < 1e-15);

    let out = chanrep(&[
        "apply",
        path_str(&fixture("identity3.json")),
        "--state",
        path_str(&fixture("state3.json")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let state = parse_matrix(&fs::read_to_string(fixture("state3.json")).unwrap(), "s").unwrap();
    assert_eq!(parse_matrix(std::str::from_utf8(&out.stdout).unwrap(), "out").unwrap(), state);

    let out = chanrep(&[
        "apply",
        path_str(&fixture("identity3.json")),
        "--state",
        path_str(&fixture("state2.json")),
    ]);
    assert_eq!(out.status.code(), Some(6));
    assert!(out.stdout.is_empty());

    let out = chanrep(&["apply", path_str(&fixture("identity3.json")), "--state", "/no/such/state.json"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn emit_parse_round_trip_on_exact_values() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..50 {
        let n = rng.random_range(1..6);
        // dyadic rationals and short decimals survive text round trips exactly
        let m = ComplexMatrix::from_fn(n, n, |_, _| {
            let re = rng.random_range(-4096..4096) as f64 / 256.0;
            let im = rng.random_range(-1000..1000) as f64 / 100.0;
            C64::new(re, im)
        });
        let text = emit_matrix(&m);
        let parsed = parse_matrix(&text, "m").unwrap();
        assert_eq!(parsed, m);
        assert_eq!(emit_matrix(&parsed), text);
    }
}
