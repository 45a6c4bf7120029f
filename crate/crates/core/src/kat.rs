//! Known-answer records for Kal1 with a dense seed row.
//!
//! One record per line:
//!
//! ```text
//! params=<n>,<k>,<t>,<m> seed=<hex> msg=<hex> ct=<hex>
//! ```
//!
//! The key pair is regenerated from `seed`, `msg` is the big-endian message
//! and `ct` the `(n - k)`-bit ciphertext packed most significant bit first.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;

use crate::binmat::BitVector;
use crate::cw::CwCodec;
use crate::drbg::{Drbg, Seed};
use crate::error::{Error, Result};
use crate::goppa::CodeParams;
use crate::kal1::{self, SeedPolicy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatRecord {
    pub params: CodeParams,
    pub seed: Seed,
    pub msg: Vec<u8>,
    pub ct: Vec<u8>,
}

impl KatRecord {
    /// Build the record for `seed` and `msg` by running key generation and
    /// encryption.
    pub fn compute(params: CodeParams, seed: Seed, msg: Vec<u8>) -> Result<Self> {
        let (pk, _, _) = kal1::keygen(params, SeedPolicy::Dense, &mut Drbg::new(&seed))?;
        let ct = pk.encrypt_bytes(&msg)?.to_bytes_msb();
        Ok(KatRecord { params, seed, msg, ct })
    }

    /// Recompute the ciphertext and decrypt it again.
    pub fn check(&self) -> std::result::Result<(), String> {
        let mut rng = Drbg::new(&self.seed);
        let (pk, sk, _) = kal1::keygen(self.params, SeedPolicy::Dense, &mut rng).map_err(|e| e.to_string())?;
        let c = pk.encrypt_bytes(&self.msg).map_err(|e| e.to_string())?;
        if c.to_bytes_msb() != self.ct {
            return Err(format!("ciphertext {} expected {}", hex::encode(c.to_bytes_msb()), hex::encode(&self.ct)));
        }
        let m = sk.decrypt_bytes(&c).map_err(|e| e.to_string())?;
        if m != self.msg {
            return Err(format!("decrypted message {} expected {}", hex::encode(m), hex::encode(&self.msg)));
        }
        Ok(())
    }
}

impl fmt::Display for KatRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        write!(
            f,
            "params={},{},{},{} seed={} msg={} ct={}",
            p.n,
            p.k,
            p.t,
            p.m,
            self.seed,
            hex::encode(&self.msg),
            hex::encode(&self.ct)
        )
    }
}

impl FromStr for KatRecord {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = |what: &str| Error::Format(format!("KAT line: {what}"));
        let mut fields = [None; 4];
        for tok in line.split_whitespace() {
            let (key, val) = tok.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let slot = match key {
                "params" => 0,
                "seed" => 1,
                "msg" => 2,
                "ct" => 3,
                _ => return Err(bad(&format!("unknown field {key:?}"))),
            };
            if fields[slot].replace(val).is_some() {
                return Err(bad(&format!("duplicate field {key:?}")));
            }
        }
        let [Some(params), Some(seed), Some(msg), Some(ct)] = fields else {
            return Err(bad("missing field"));
        };
        let nums = params
            .split(',')
            .map(|v| v.parse::<usize>().map_err(|_| bad("params must be four integers")))
            .collect::<Result<Vec<_>>>()?;
        let [n, k, t, m] = nums[..] else {
            return Err(bad("params must be four integers"));
        };
        let params = CodeParams::new(n, k, t, m).map_err(|e| bad(&e.to_string()))?;
        let seed = seed.parse::<Seed>().map_err(|_| bad("seed must be 32 hex digits"))?;
        let msg = hex::decode(msg).map_err(|_| bad("msg is not hex"))?;
        let ct = hex::decode(ct).map_err(|_| bad("ct is not hex"))?;
        BitVector::from_bytes_msb(&ct, params.redundancy()).map_err(|_| bad("ct has the wrong length"))?;
        Ok(KatRecord { params, seed, msg, ct })
    }
}

/// `count` records whose seeds and messages are drawn from `master`.
pub fn generate(params: CodeParams, master: &Seed, count: usize) -> Result<Vec<KatRecord>> {
    params.validate()?;
    let codec = CwCodec::new(params.redundancy(), params.t)?;
    let mut rng = Drbg::new(master);
    (0..count)
        .map(|_| {
            let seed = rng.seed();
            let msg = codec.random_message(&mut rng);
            KatRecord::compute(params, seed, msg)
        })
        .collect()
}

pub fn parse(text: &str) -> Result<Vec<KatRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.parse::<KatRecord>().map_err(|e| match e {
                Error::Format(msg) => Error::Format(format!("line {}: {msg}", i + 1)),
                other => other,
            })
        })
        .collect()
}

pub fn format(records: &[KatRecord]) -> String {
    records.iter().map(|r| format!("{r}\n")).collect()
}

/// Check every record; the first mismatch is reported with its 1-based
/// record number.
pub fn verify(records: &[KatRecord]) -> Result<()> {
    for (i, r) in records.iter().enumerate() {
        r.check().map_err(|detail| Error::KatMismatch { index: i + 1, detail })?;
    }
    Ok(())
}
