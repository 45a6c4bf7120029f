//! Key file formats.
//!
//! Public key, all integers big-endian:
//!
//! ```text
//! "K1PK" | version 0x01 | scheme id | n u16 | k u16 | t u16 | m u16 | w u8 | payload
//! ```
//!
//! `w` is the number of positions for the sparse scheme and zero otherwise.
//! The payload is a bit string packed most significant bit first and
//! zero-padded to a byte boundary. With `b = ceil(log2(n - k))`:
//!
//! | id   | scheme        | payload                                  |
//! |------|---------------|------------------------------------------|
//! | 0x00 | Niederreiter  | `H'ᵀ` row-major, `n * (n - k)` bits       |
//! | 0x01 | Kal1          | seed row, `n - k` bits                   |
//! | 0x02 | Kal1-S1       | `w` ascending positions, `b` bits each   |
//! | 0x03 | Kal1-S2       | run start then run length, `b` bits each |
//!
//! Private key:
//!
//! ```text
//! "K1SK" | version | scheme id | n | k | t | m | w | [start u16 | len u16] | seed (16) | crc32 u32
//! ```
//!
//! The run fields are present for scheme 0x03 only. The key pair is
//! regenerated from the seed; the CRC-32 (IEEE) of the serialized public key
//! guards against mismatched files.

use std::fmt;
use std::str::FromStr;

use super::{keygen, Kal1PrivateKey, Kal1PublicKey, Kal1S1Key, Kal1S2Key, SeedPolicy};
use crate::binmat::{BinaryMatrix, BitVector};
use crate::cw::CwCodec;
use crate::drbg::{Drbg, Seed, SEED_LEN};
use crate::error::{Error, Result};
use crate::goppa::CodeParams;
use crate::niederreiter::NiedPublicKey;

pub const PK_MAGIC: &[u8; 4] = b"K1PK";
pub const SK_MAGIC: &[u8; 4] = b"K1SK";
pub const VERSION: u8 = 0x01;
const HEADER_LEN: usize = 15;

/// `ceil(log2(r))`, the width of a position or count field.
pub fn index_bits(r: usize) -> usize {
    if r <= 1 {
        0
    } else {
        (usize::BITS - (r - 1).leading_zeros()) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Niederreiter,
    Kal1,
    Kal1S1,
    Kal1S2,
}

impl Scheme {
    pub fn id(self) -> u8 {
        match self {
            Scheme::Niederreiter => 0x00,
            Scheme::Kal1 => 0x01,
            Scheme::Kal1S1 => 0x02,
            Scheme::Kal1S2 => 0x03,
        }
    }

    pub fn from_id(id: u8) -> Result<Self> {
        Ok(match id {
            0x00 => Scheme::Niederreiter,
            0x01 => Scheme::Kal1,
            0x02 => Scheme::Kal1S1,
            0x03 => Scheme::Kal1S2,
            _ => return Err(Error::Format(format!("unknown scheme id {id:#04x}"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Niederreiter => "niederreiter",
            Scheme::Kal1 => "kal1",
            Scheme::Kal1S1 => "kal1-s1",
            Scheme::Kal1S2 => "kal1-s2",
        }
    }

    /// Public-key payload length in bits.
    pub fn payload_bits(self, params: &CodeParams, w: usize) -> usize {
        let r = params.redundancy();
        match self {
            Scheme::Niederreiter => params.n * r,
            Scheme::Kal1 => r,
            Scheme::Kal1S1 => w * index_bits(r),
            Scheme::Kal1S2 => 2 * index_bits(r),
        }
    }

    fn accepts(self, policy: &SeedPolicy) -> bool {
        matches!(
            (self, policy),
            (Scheme::Niederreiter | Scheme::Kal1, SeedPolicy::Dense)
                | (Scheme::Kal1S1, SeedPolicy::Sparse(_))
                | (Scheme::Kal1S2, SeedPolicy::Run { .. })
        )
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "niederreiter" => Scheme::Niederreiter,
            "kal1" => Scheme::Kal1,
            "kal1-s1" => Scheme::Kal1S1,
            "kal1-s2" => Scheme::Kal1S2,
            _ => return Err(Error::Parameter(format!("unknown scheme {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PublicKey {
    Niederreiter(NiedPublicKey),
    Kal1(Kal1PublicKey),
    Kal1S1(Kal1S1Key),
    Kal1S2(Kal1S2Key),
}

struct BitWriter(Vec<bool>);

impl BitWriter {
    fn put(&mut self, value: usize, width: usize) {
        for i in (0..width).rev() {
            self.0.push((value >> i) & 1 == 1);
        }
    }
}

struct BitReader<'a> {
    bits: &'a BitVector,
    pos: usize,
}

impl BitReader<'_> {
    fn take(&mut self, width: usize) -> usize {
        let mut v = 0;
        for _ in 0..width {
            v = (v << 1) | self.bits.get(self.pos) as usize;
            self.pos += 1;
        }
        v
    }
}

fn write_header(out: &mut Vec<u8>, magic: &[u8; 4], scheme: Scheme, p: &CodeParams, w: usize) {
    out.extend_from_slice(magic);
    out.push(VERSION);
    out.push(scheme.id());
    for v in [p.n, p.k, p.t, p.m] {
        out.extend_from_slice(&(v as u16).to_be_bytes());
    }
    out.push(w as u8);
}

fn read_header(bytes: &[u8], magic: &[u8; 4]) -> Result<(Scheme, CodeParams, usize)> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Format(format!("truncated header: {} bytes", bytes.len())));
    }
    if &bytes[..4] != magic {
        return Err(Error::Format("bad magic".into()));
    }
    if bytes[4] != VERSION {
        return Err(Error::Format(format!("unsupported version {}", bytes[4])));
    }
    let scheme = Scheme::from_id(bytes[5])?;
    let field = |i: usize| u16::from_be_bytes([bytes[6 + 2 * i], bytes[7 + 2 * i]]) as usize;
    let params =
        CodeParams::new(field(0), field(1), field(2), field(3)).map_err(|e| Error::Format(format!("header: {e}")))?;
    let w = bytes[14] as usize;
    if scheme != Scheme::Kal1S1 && w != 0 {
        return Err(Error::Format(format!("weight byte must be zero for {scheme}")));
    }
    Ok((scheme, params, w))
}

fn as_format(e: Error) -> Error {
    match e {
        Error::Format(_) => e,
        other => Error::Format(other.to_string()),
    }
}

impl PublicKey {
    pub fn scheme(&self) -> Scheme {
        match self {
            PublicKey::Niederreiter(_) => Scheme::Niederreiter,
            PublicKey::Kal1(_) => Scheme::Kal1,
            PublicKey::Kal1S1(_) => Scheme::Kal1S1,
            PublicKey::Kal1S2(_) => Scheme::Kal1S2,
        }
    }

    pub fn params(&self) -> &CodeParams {
        match self {
            PublicKey::Niederreiter(k) => k.params(),
            PublicKey::Kal1(k) => k.params(),
            PublicKey::Kal1S1(k) => k.params(),
            PublicKey::Kal1S2(k) => k.params(),
        }
    }

    fn weight_byte(&self) -> usize {
        match self {
            PublicKey::Kal1S1(k) => k.weight(),
            _ => 0,
        }
    }

    pub fn payload_bits(&self) -> usize {
        self.scheme().payload_bits(self.params(), self.weight_byte())
    }

    fn payload(&self) -> BitVector {
        let r = self.params().redundancy();
        let b = index_bits(r);
        match self {
            PublicKey::Niederreiter(k) => {
                let m = k.h_prime_t();
                let mut w = BitWriter(Vec::with_capacity(m.rows() * m.cols()));
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        w.0.push(m.get(i, j));
                    }
                }
                BitVector::from_bools(&w.0)
            }
            PublicKey::Kal1(k) => k.seed_row().clone(),
            PublicKey::Kal1S1(k) => {
                let mut w = BitWriter(Vec::new());
                for &p in k.positions() {
                    w.put(p, b);
                }
                BitVector::from_bools(&w.0)
            }
            PublicKey::Kal1S2(k) => {
                let mut w = BitWriter(Vec::new());
                w.put(k.start(), b);
                w.put(k.run(), b);
                BitVector::from_bools(&w.0)
            }
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        write_header(&mut out, PK_MAGIC, self.scheme(), self.params(), self.weight_byte());
        out.extend_from_slice(&self.payload().to_bytes_msb());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (scheme, params, w) = read_header(bytes, PK_MAGIC)?;
        let len = scheme.payload_bits(&params, w);
        let bits = BitVector::from_bytes_msb(&bytes[HEADER_LEN..], len)?;
        let r = params.redundancy();
        let b = index_bits(r);
        let mut rd = BitReader { bits: &bits, pos: 0 };
        let key = match scheme {
            Scheme::Niederreiter => {
                let mut m = BinaryMatrix::zeros(params.n, r);
                for i in 0..params.n {
                    m.set_row(i, &bits.slice(i * r, r))?;
                }
                PublicKey::Niederreiter(NiedPublicKey::new(params, m).map_err(as_format)?)
            }
            Scheme::Kal1 => PublicKey::Kal1(Kal1PublicKey::new(params, bits)?),
            Scheme::Kal1S1 => {
                let positions = (0..w).map(|_| rd.take(b)).collect();
                PublicKey::Kal1S1(Kal1S1Key::new(params, positions).map_err(as_format)?)
            }
            Scheme::Kal1S2 => {
                let start = rd.take(b);
                let run = rd.take(b);
                PublicKey::Kal1S2(Kal1S2Key::new(params, start, run).map_err(as_format)?)
            }
        };
        Ok(key)
    }

    /// The seed-row key for the Kal1 family; `None` for the baseline scheme.
    pub fn to_kal1(&self) -> Option<Kal1PublicKey> {
        match self {
            PublicKey::Niederreiter(_) => None,
            PublicKey::Kal1(k) => Some(k.clone()),
            PublicKey::Kal1S1(k) => Some(k.to_full()),
            PublicKey::Kal1S2(k) => Some(k.to_full()),
        }
    }

    pub fn checksum(&self) -> u32 {
        crc32fast::hash(&self.to_bytes())
    }

    /// Encrypts a big-endian message file.
    pub fn encrypt_bytes(&self, msg: &[u8]) -> Result<BitVector> {
        match self {
            PublicKey::Niederreiter(k) => k.encrypt_message(msg),
            other => other.to_kal1().expect("kal1 family").encrypt_bytes(msg),
        }
    }

    /// Message codec: length `n` for the baseline scheme, `n - k` otherwise.
    pub fn codec(&self) -> Result<CwCodec> {
        let p = self.params();
        match self {
            PublicKey::Niederreiter(_) => CwCodec::new(p.n, p.t),
            _ => CwCodec::new(p.redundancy(), p.t),
        }
    }

    /// Ciphertext length in bits.
    pub fn ciphertext_bits(&self) -> usize {
        self.params().redundancy()
    }
}

/// Seed-based private key file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKeyFile {
    pub scheme: Scheme,
    pub params: CodeParams,
    pub policy: SeedPolicy,
    pub seed: Seed,
    pub checksum: u32,
}

impl PrivateKeyFile {
    /// Generates the key pair for `seed` and records its checksum.
    pub fn create(
        scheme: Scheme,
        params: CodeParams,
        policy: SeedPolicy,
        seed: Seed,
    ) -> Result<(Self, PublicKey, Kal1PrivateKey)> {
        if !scheme.accepts(&policy) {
            return Err(Error::Policy(format!("{policy:?} does not match scheme {scheme}")));
        }
        let (pk, sk) = generate(scheme, params, policy, &seed)?;
        let file = PrivateKeyFile { scheme, params, policy, seed, checksum: pk.checksum() };
        Ok((file, pk, sk))
    }

    /// Decrypts with the chain matching this file's scheme.
    pub fn decrypt_bytes(&self, sk: &Kal1PrivateKey, c: &BitVector) -> Result<Vec<u8>> {
        match self.scheme {
            Scheme::Niederreiter => sk.niederreiter().decrypt_message(c),
            _ => sk.decrypt_bytes(c),
        }
    }

    /// Regenerates the key pair and checks it against the stored checksum.
    pub fn regenerate(&self) -> Result<(PublicKey, Kal1PrivateKey)> {
        let (pk, sk) = generate(self.scheme, self.params, self.policy, &self.seed)?;
        if pk.checksum() != self.checksum {
            return Err(Error::Format("private key checksum mismatch".into()));
        }
        Ok((pk, sk))
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let w = match self.policy {
            SeedPolicy::Sparse(w) => w,
            _ => 0,
        };
        let mut out = Vec::new();
        write_header(&mut out, SK_MAGIC, self.scheme, &self.params, w);
        if let SeedPolicy::Run { start, len } = self.policy {
            out.extend_from_slice(&(start as u16).to_be_bytes());
            out.extend_from_slice(&(len as u16).to_be_bytes());
        }
        out.extend_from_slice(&self.seed.0);
        out.extend_from_slice(&self.checksum.to_be_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (scheme, params, w) = read_header(bytes, SK_MAGIC)?;
        let mut rest = &bytes[HEADER_LEN..];
        let policy = match scheme {
            Scheme::Niederreiter | Scheme::Kal1 => SeedPolicy::Dense,
            Scheme::Kal1S1 => SeedPolicy::Sparse(w),
            Scheme::Kal1S2 => {
                if rest.len() < 4 {
                    return Err(Error::Format("truncated run fields".into()));
                }
                let start = u16::from_be_bytes([rest[0], rest[1]]) as usize;
                let len = u16::from_be_bytes([rest[2], rest[3]]) as usize;
                rest = &rest[4..];
                SeedPolicy::Run { start, len }
            }
        };
        policy.validate(&params).map_err(as_format)?;
        if rest.len() != SEED_LEN + 4 {
            return Err(Error::Format(format!("expected {} trailing bytes, got {}", SEED_LEN + 4, rest.len())));
        }
        let seed = Seed(rest[..SEED_LEN].try_into().expect("length checked"));
        let checksum = u32::from_be_bytes(rest[SEED_LEN..].try_into().expect("length checked"));
        Ok(PrivateKeyFile { scheme, params, policy, seed, checksum })
    }
}

fn generate(
    scheme: Scheme,
    params: CodeParams,
    policy: SeedPolicy,
    seed: &Seed,
) -> Result<(PublicKey, Kal1PrivateKey)> {
    let (pk, sk, npk) = keygen(params, policy, &mut Drbg::new(seed))?;
    let public = match scheme {
        Scheme::Niederreiter => PublicKey::Niederreiter(npk),
        Scheme::Kal1 => PublicKey::Kal1(pk),
        Scheme::Kal1S1 => PublicKey::Kal1S1(pk.to_sparse()?),
        Scheme::Kal1S2 => PublicKey::Kal1S2(pk.to_run()?),
    };
    Ok((public, sk))
}
