//! Public-key size table with keygen/encrypt/decrypt wall times.

use std::fmt::Write;
use std::time::Instant;

use kal1_core::drbg::{Drbg, Seed};
use kal1_core::goppa::CodeParams;
use kal1_core::kal1::{PrivateKeyFile, Scheme, SeedPolicy};
use kal1_core::{Error, Result};

/// Published public-key sizes in bits, reported for comparison only.
const CITED: [(&str, usize); 6] = [
    ("Classic McEliece", 536576),
    ("BIKE L1", 1541),
    ("BIKE L3", 3083),
    ("HQC-128", 2289),
    ("HQC-192", 4522),
    ("HQC-256", 7245),
];

#[derive(Debug, Clone, Copy)]
pub struct Timings {
    pub keygen_ms: f64,
    pub encrypt_ms: f64,
    pub decrypt_ms: f64,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub scheme: String,
    pub bits: usize,
    pub computed: bool,
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub params: CodeParams,
    pub rows: Vec<Row>,
}

fn ms(start: Instant) -> f64 {
    // Keep tiny timings visibly nonzero.
    (start.elapsed().as_secs_f64() * 1e3).max(1e-3)
}

fn measure(scheme: Scheme, params: CodeParams, policy: SeedPolicy, seed: &Seed) -> Result<(usize, Timings)> {
    let t0 = Instant::now();
    let (file, pk, sk) = PrivateKeyFile::create(scheme, params, policy, *seed)?;
    let keygen_ms = ms(t0);

    let msg = pk.codec()?.random_message(&mut Drbg::new(seed));
    let t1 = Instant::now();
    let c = pk.encrypt_bytes(&msg)?;
    let encrypt_ms = ms(t1);

    let t2 = Instant::now();
    let back = file.decrypt_bytes(&sk, &c)?;
    let decrypt_ms = ms(t2);
    if back != msg {
        return Err(Error::DecodingFailure);
    }
    Ok((pk.payload_bits(), Timings { keygen_ms, encrypt_ms, decrypt_ms }))
}

pub fn run(params: CodeParams, sparse_weight: usize, run: (usize, usize), seed: &Seed) -> Result<Report> {
    let r = params.redundancy();
    let (full_bits, nied) = measure(Scheme::Niederreiter, params, SeedPolicy::Dense, seed)?;
    let mut rows = vec![
        Row { scheme: "Niederreiter (systematic)".into(), bits: params.k * r, computed: true, timings: Some(nied) },
        Row { scheme: "Niederreiter (full)".into(), bits: full_bits, computed: true, timings: Some(nied) },
    ];
    for (scheme, policy) in [
        (Scheme::Kal1, SeedPolicy::Dense),
        (Scheme::Kal1S1, SeedPolicy::Sparse(sparse_weight)),
        (Scheme::Kal1S2, SeedPolicy::Run { start: run.0, len: run.1 }),
    ] {
        let (bits, t) = measure(scheme, params, policy, seed)?;
        rows.push(Row { scheme: scheme.name().into(), bits, computed: true, timings: Some(t) });
    }
    rows.extend(CITED.iter().map(|&(name, bits)| Row { scheme: name.into(), bits, computed: false, timings: None }));
    Ok(Report { params, rows })
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "params: {}", self.params);
        let _ = writeln!(
            s,
            "{:<26} {:>10}  {:<8} {:>12} {:>12} {:>12}",
            "scheme", "pk bits", "source", "keygen ms", "encrypt ms", "decrypt ms"
        );
        for row in &self.rows {
            let (k, e, d) = match row.timings {
                Some(t) => {
                    (format!("{:.3}", t.keygen_ms), format!("{:.3}", t.encrypt_ms), format!("{:.3}", t.decrypt_ms))
                }
                None => ("-".into(), "-".into(), "-".into()),
            };
            let src = if row.computed { "computed" } else { "cited" };
            let _ = writeln!(s, "{:<26} {:>10}  {:<8} {:>12} {:>12} {:>12}", row.scheme, row.bits, src, k, e, d);
        }
        let _ = writeln!(
            s,
            "note: systematic Niederreiter counts only the k x (n-k) redundant block; the full n x (n-k) matrix is the second row"
        );
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("scheme,n,k,t,m,public_key_bits,source,keygen_ms,encrypt_ms,decrypt_ms\n");
        let p = &self.params;
        for row in &self.rows {
            let times = match row.timings {
                Some(t) => format!("{:.3},{:.3},{:.3}", t.keygen_ms, t.encrypt_ms, t.decrypt_ms),
                None => ",,".into(),
            };
            let src = if row.computed { "computed" } else { "cited" };
            let _ = writeln!(s, "{},{},{},{},{},{},{},{}", row.scheme, p.n, p.k, p.t, p.m, row.bits, src, times);
        }
        s
    }
}
