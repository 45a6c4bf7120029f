use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use kal1_core::binmat::BitVector;
use kal1_core::kal1::PrivateKeyFile;
use kal1_core::Error;

const SEED: &str = "000102030405060708090a0b0c0d0e0f";

fn kal1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kal1")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn first_err_line(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).lines().next().unwrap_or_default().to_owned()
}

fn toy_keygen(dir: &Path, name: &str, extra: &[&str]) -> String {
    let prefix = dir.join(name);
    let prefix = prefix.to_str().unwrap();
    let mut args = vec!["keygen", "--n", "16", "--k", "8", "--t", "2", "--m", "4", "--seed", SEED, "--out", prefix];
    args.extend_from_slice(extra);
    let o = kal1(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    prefix.to_owned()
}

#[test]
fn keygen_reports_seed_row_payload() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("big");
    let o = kal1(&[
        "keygen",
        "--n",
        "1024",
        "--k",
        "524",
        "--t",
        "50",
        "--m",
        "10",
        "--scheme",
        "kal1",
        "--seed",
        SEED,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("public key: 500 bits"));
    assert_eq!(fs::read(dir.path().join("big.pk")).unwrap().len(), 15 + 63);
}

#[test]
fn run_key_layout_at_toy_widths() {
    let dir = tempfile::tempdir().unwrap();
    let p = toy_keygen(dir.path(), "s2", &["--scheme", "kal1-s2", "--run-start", "4", "--run-len", "3"]);
    let pk = fs::read(format!("{p}.pk")).unwrap();
    assert_eq!(&pk[..4], b"K1PK");
    assert_eq!(pk[5], 0x03);
    // n - k = 8: three bits per field, {4|3} = 100|011, zero-padded.
    assert_eq!(pk[15..], [0b1000_1100]);
}

#[test]
fn keygen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = toy_keygen(dir.path(), "a", &["--scheme", "kal1-s1", "--sparse-weight", "3"]);
    let b = toy_keygen(dir.path(), "b", &["--scheme", "kal1-s1", "--sparse-weight", "3"]);
    for ext in ["pk", "sk"] {
        assert_eq!(fs::read(format!("{a}.{ext}")).unwrap(), fs::read(format!("{b}.{ext}")).unwrap());
    }
}

#[test]
fn file_round_trip_every_scheme() {
    let dir = tempfile::tempdir().unwrap();
    let schemes: [(&str, &[&str]); 4] = [
        ("niederreiter", &[]),
        ("kal1", &[]),
        ("kal1-s1", &["--sparse-weight", "2"]),
        ("kal1-s2", &["--run-start", "1", "--run-len", "2"]),
    ];
    for (scheme, policy) in schemes {
        let mut extra = vec!["--scheme", scheme];
        extra.extend_from_slice(policy);
        let p = toy_keygen(dir.path(), scheme, &extra);
        // Baseline messages index weight-2 words of length 16: 6 bits.
        let msg: &[u8] = if scheme == "niederreiter" { &[0x2b] } else { &[0x0b] };
        let (m, c, back) = (format!("{p}.msg"), format!("{p}.ct"), format!("{p}.out"));
        fs::write(&m, msg).unwrap();
        let o = kal1(&["encrypt", "--key", &format!("{p}.pk"), "--in", &m, "--out", &c]);
        assert!(o.status.success(), "{scheme}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(fs::read(&c).unwrap().len(), 1);
        let o = kal1(&["decrypt", "--key", &format!("{p}.sk"), "--in", &c, "--out", &back]);
        assert!(o.status.success(), "{scheme}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(fs::read(&back).unwrap(), msg, "{scheme}");
    }
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = toy_keygen(dir.path(), "k", &[]);
    let (pk, sk) = (format!("{p}.pk"), format!("{p}.sk"));
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_owned();

    // Truncated ciphertext.
    fs::write(path("empty.ct"), b"").unwrap();
    let o = kal1(&["decrypt", "--key", &sk, "--in", &path("empty.ct"), "--out", &path("x")]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(first_err_line(&o), "error: 2 FormatError");

    // 16 does not fit the 4-bit message space.
    fs::write(path("big.msg"), [0x10]).unwrap();
    let o = kal1(&["encrypt", "--key", &pk, "--in", &path("big.msg"), "--out", &path("x")]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(first_err_line(&o), "error: 3 RangeError");

    // A ciphertext the Goppa decoder rejects.
    let file = PrivateKeyFile::from_bytes(&fs::read(&sk).unwrap()).unwrap();
    let (_, key) = file.regenerate().unwrap();
    let bad = (0u8..=255)
        .map(|b| BitVector::from_bytes_msb(&[b], 8).unwrap())
        .find(|c| key.decrypt(c) == Err(Error::DecodingFailure))
        .expect("some syndrome is undecodable");
    fs::write(path("bad.ct"), bad.to_bytes_msb()).unwrap();
    let o = kal1(&["decrypt", "--key", &sk, "--in", &path("bad.ct"), "--out", &path("x")]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(first_err_line(&o), "error: 4 DecodingFailure");

    // Corrupted key file.
    let mut bytes = fs::read(&pk).unwrap();
    bytes[0] = b'X';
    fs::write(path("bad.pk"), bytes).unwrap();
    let o = kal1(&["inspect", "--key", &path("bad.pk")]);
    assert_eq!(o.status.code(), Some(2));

    let o = kal1(&["keygen", "--seed", "abc", "--out", &path("y")]);
    assert_eq!(first_err_line(&o), "error: 2 FormatError");

    let o = kal1(&["keygen", "--n", "16", "--k", "9", "--t", "2", "--m", "4", "--out", &path("y")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(first_err_line(&o), "error: 1 ParameterError");

    let o = kal1(&[
        "keygen",
        "--n",
        "16",
        "--t",
        "2",
        "--m",
        "4",
        "--scheme",
        "kal1-s2",
        "--run-start",
        "7",
        "--run-len",
        "3",
        "--out",
        &path("y"),
    ]);
    assert_eq!(first_err_line(&o), "error: 1 PolicyError");

    let o = kal1(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(first_err_line(&o), "error: 1 UsageError");
}

#[test]
fn kat_generate_verify_and_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    let kat = dir.path().join("kat.txt");
    let kat = kat.to_str().unwrap();
    let o = kal1(&["kat", "generate", "--seed", SEED, "--count", "5", "--kat", kat]);
    assert!(o.status.success());
    let o = kal1(&["kat", "verify", "--kat", kat]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "ok: 5 records");

    let text = fs::read_to_string(kat).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
    // Third record: flip the last hex digit of the ciphertext.
    let line = &mut lines[3];
    let last = line.pop().unwrap();
    line.push(if last == '0' { '1' } else { '0' });
    fs::write(kat, lines.join("\n") + "\n").unwrap();
    let o = kal1(&["kat", "verify", "--kat", kat]);
    assert_eq!(o.status.code(), Some(5));
    assert_eq!(first_err_line(&o), "error: 5 KatMismatch");
    assert!(String::from_utf8_lossy(&o.stderr).contains("record 3 "));
}

#[test]
fn shipped_kat_file_verifies() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures/kat_toy.txt");
    let o = kal1(&["kat", "verify", "--kat", path]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn bench_csv_rows() {
    let o = kal1(&["bench", "--seed", SEED, "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    let bits = |name: &str| rows.iter().find(|r| r[0] == name).map(|r| r[5]);
    assert_eq!(bits("Niederreiter (systematic)"), Some("262000"));
    assert_eq!(bits("Niederreiter (full)"), Some("512000"));
    assert_eq!(bits("kal1"), Some("500"));
    assert_eq!(bits("kal1-s1"), Some("90"));
    assert_eq!(bits("kal1-s2"), Some("18"));
    assert_eq!(bits("Classic McEliece"), Some("536576"));
    for r in rows.iter().filter(|r| r[6] == "computed") {
        for t in &r[7..10] {
            assert!(t.parse::<f64>().unwrap() > 0.0, "{r:?}");
        }
    }
}

#[test]
fn inspect_and_probe() {
    let dir = tempfile::tempdir().unwrap();
    let p = toy_keygen(dir.path(), "k", &[]);
    let o = kal1(&["inspect", "--key", &format!("{p}.pk")]);
    assert!(stdout(&o).contains("scheme: kal1\n"));
    assert!(stdout(&o).contains("public key: 8 bits\n"));
    let o = kal1(&["inspect", "--key", &format!("{p}.sk")]);
    assert!(stdout(&o).contains(&format!("seed: {SEED}\n")));

    let o = kal1(&["probe", "--seed", SEED, "--trials", "200"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("rank(H_cyclic^T): 8\n"));
    assert!(out.contains("subadditivity: "));
    let o = kal1(&["probe", "--n", "128", "--t", "7", "--m", "7", "--trials", "1", "--seed", SEED]);
    assert_eq!(first_err_line(&o), "error: 1 ParameterError");
}
