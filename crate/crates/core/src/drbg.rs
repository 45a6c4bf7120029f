//! Deterministic random bit generator used for every random choice in key
//! generation, so that keys and known-answer files are reproducible.
//!
//! The construction is AES-128 in counter mode:
//!
//! * the 16-byte seed is the AES key;
//! * block `i` (starting at 0) is `AES(seed, i)` with `i` encoded as a
//!   128-bit big-endian integer;
//! * output bytes are consumed in order, block after block.
//!
//! Derived draws are pinned as follows. `next_u32` takes the next four bytes
//! little-endian. `below(n)` draws `next_u32() & mask`, where `mask` is
//! `n.next_power_of_two() - 1`, and rejects values `>= n`. `bits(len)` takes
//! `ceil(len / 8)` bytes and reads them most-significant bit first.

use std::fmt;
use std::str::FromStr;

use aes::cipher::{generic_array::GenericArray, BlockEncrypt, KeyInit};
use aes::Aes128;

use crate::error::{Error, Result};

pub const SEED_LEN: usize = 16;

/// A 16-byte generator seed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub [u8; SEED_LEN]);

impl Seed {
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }
}

impl From<u64> for Seed {
    /// Places `v` big-endian in the last eight bytes.
    fn from(v: u64) -> Self {
        let mut s = [0u8; SEED_LEN];
        s[8..].copy_from_slice(&v.to_be_bytes());
        Seed(s)
    }
}

impl FromStr for Seed {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| Error::Format(format!("seed: {e}")))?;
        let arr: [u8; SEED_LEN] =
            bytes.try_into().map_err(|_| Error::Format(format!("seed must be {} hex digits", 2 * SEED_LEN)))?;
        Ok(Seed(arr))
    }
}

impl fmt::Debug for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seed({})", self.to_hex())
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub struct Drbg {
    cipher: Aes128,
    counter: u128,
    block: [u8; 16],
    pos: usize,
}

impl Drbg {
    pub fn new(seed: &Seed) -> Self {
        Drbg { cipher: Aes128::new(GenericArray::from_slice(&seed.0)), counter: 0, block: [0; 16], pos: 16 }
    }

    fn refill(&mut self) {
        let mut b = GenericArray::from(self.counter.to_be_bytes());
        self.cipher.encrypt_block(&mut b);
        self.block.copy_from_slice(&b);
        self.counter = self.counter.wrapping_add(1);
        self.pos = 0;
    }

    pub fn next_u8(&mut self) -> u8 {
        if self.pos == 16 {
            self.refill();
        }
        let b = self.block[self.pos];
        self.pos += 1;
        b
    }

    pub fn fill_bytes(&mut self, out: &mut [u8]) {
        for b in out.iter_mut() {
            *b = self.next_u8();
        }
    }

    pub fn next_u32(&mut self) -> u32 {
        let mut b = [0u8; 4];
        self.fill_bytes(&mut b);
        u32::from_le_bytes(b)
    }

    /// Uniform integer in `[0, n)`. Panics if `n == 0`.
    pub fn below(&mut self, n: u32) -> u32 {
        assert!(n > 0, "below(0)");
        let mask = n.next_power_of_two().wrapping_sub(1);
        loop {
            let x = self.next_u32() & mask;
            if x < n {
                return x;
            }
        }
    }

    /// `len` uniform bits, first bit taken from the MSB of the first byte.
    pub fn bits(&mut self, len: usize) -> Vec<bool> {
        let mut bytes = vec![0u8; len.div_ceil(8)];
        self.fill_bytes(&mut bytes);
        (0..len).map(|i| (bytes[i / 8] >> (7 - i % 8)) & 1 == 1).collect()
    }

    pub fn seed(&mut self) -> Seed {
        let mut s = [0u8; SEED_LEN];
        self.fill_bytes(&mut s);
        Seed(s)
    }

    /// Fisher-Yates shuffle: for `i` from `len - 1` down to 1, swap `i` with
    /// `below(i + 1)`.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u32 + 1) as usize;
            items.swap(i, j);
        }
    }
}
