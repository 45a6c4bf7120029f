//! Constant-weight encoding: a bijection between integers and binary words of
//! fixed length and weight, by colexicographic combinadic ranking.
//!
//! A weight-`w` word with ones at `c_1 < c_2 < ... < c_w` has rank
//! `Σ C(c_i, i)`. Messages are the integers below `2^msg_bits`, where
//! `msg_bits = floor(log2 C(length, weight))`, serialized big-endian in
//! `ceil(msg_bits / 8)` bytes.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::binmat::BitVector;
use crate::drbg::Drbg;
use crate::error::{check_dim, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwCodec {
    length: usize,
    weight: usize,
    msg_bits: usize,
    /// `binom[c][i] = C(c, i)` for `c <= length`, `i <= weight`.
    binom: Vec<Vec<BigUint>>,
}

impl CwCodec {
    pub fn new(length: usize, weight: usize) -> Result<Self> {
        if weight > length {
            return Err(Error::Parameter(format!("weight {weight} exceeds length {length}")));
        }
        let mut binom = vec![vec![BigUint::zero(); weight + 1]; length + 1];
        for c in 0..=length {
            binom[c][0] = BigUint::one();
            for i in 1..=weight.min(c) {
                binom[c][i] = &binom[c - 1][i - 1] + &binom[c - 1][i];
            }
        }
        let total = &binom[length][weight];
        let msg_bits = (total.bits() - 1) as usize;
        Ok(CwCodec { length, weight, msg_bits, binom })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn msg_bits(&self) -> usize {
        self.msg_bits
    }

    pub fn msg_bytes(&self) -> usize {
        self.msg_bits.div_ceil(8)
    }

    /// `C(length, weight)`.
    pub fn word_count(&self) -> &BigUint {
        &self.binom[self.length][self.weight]
    }

    /// Word of colex rank `index`, for any `index < C(length, weight)`.
    pub fn unrank(&self, index: &BigUint) -> Result<BitVector> {
        if index >= self.word_count() {
            return Err(Error::Range(format!("index {index} >= C({}, {})", self.length, self.weight)));
        }
        let mut r = index.clone();
        let mut out = BitVector::zeros(self.length);
        let mut hi = self.length;
        for i in (1..=self.weight).rev() {
            // Largest c < hi with C(c, i) <= r.
            let mut c = hi - 1;
            while self.binom[c][i] > r {
                c -= 1;
            }
            r -= &self.binom[c][i];
            out.set(c, true);
            hi = c;
        }
        Ok(out)
    }

    pub fn rank(&self, word: &BitVector) -> Result<BigUint> {
        check_dim(self.length, word.len())?;
        let wt = word.weight();
        if wt != self.weight {
            return Err(Error::Weight { expected: self.weight, found: wt });
        }
        Ok(word.iter_ones().enumerate().fold(BigUint::zero(), |acc, (i, c)| acc + &self.binom[c][i + 1]))
    }

    pub fn encode(&self, msg: &BigUint) -> Result<BitVector> {
        if msg.bits() as usize > self.msg_bits {
            return Err(Error::Range(format!("message exceeds {} bits", self.msg_bits)));
        }
        self.unrank(msg)
    }

    pub fn decode(&self, word: &BitVector) -> Result<BigUint> {
        let r = self.rank(word)?;
        if r.bits() as usize > self.msg_bits {
            return Err(Error::Range(format!("word rank lies outside the {}-bit message space", self.msg_bits)));
        }
        Ok(r)
    }

    pub fn encode_bytes(&self, msg: &[u8]) -> Result<BitVector> {
        self.encode(&self.message_from_bytes(msg)?)
    }

    pub fn decode_bytes(&self, word: &BitVector) -> Result<Vec<u8>> {
        Ok(self.message_to_bytes(&self.decode(word)?))
    }

    /// Parses a big-endian message of exactly `msg_bytes()` bytes.
    pub fn message_from_bytes(&self, msg: &[u8]) -> Result<BigUint> {
        if msg.len() != self.msg_bytes() {
            return Err(Error::Range(format!(
                "message must be {} bytes ({} bits), got {}",
                self.msg_bytes(),
                self.msg_bits,
                msg.len()
            )));
        }
        let v = BigUint::from_bytes_be(msg);
        if v.bits() as usize > self.msg_bits {
            return Err(Error::Range(format!("message exceeds {} bits", self.msg_bits)));
        }
        Ok(v)
    }

    /// Uniform message in the `msg_bits` space, as bytes.
    pub fn random_message(&self, rng: &mut Drbg) -> Vec<u8> {
        let mut msg = vec![0u8; self.msg_bytes()];
        rng.fill_bytes(&mut msg);
        let excess = msg.len() * 8 - self.msg_bits;
        if let Some(first) = msg.first_mut() {
            *first &= 0xffu8.checked_shr(excess as u32).unwrap_or(0);
        }
        msg
    }

    pub fn message_to_bytes(&self, msg: &BigUint) -> Vec<u8> {
        let raw = msg.to_bytes_be();
        let n = self.msg_bytes();
        let mut out = vec![0u8; n];
        if !msg.is_zero() {
            out[n - raw.len()..].copy_from_slice(&raw);
        }
        out
    }
}
