//! The Kal1 short-public-key scheme.
//!
//! The public matrix is `H_cyclicᵀ = [C ; I]` (`n x (n - k)`): a `k x (n-k)`
//! block `C` whose row `i` is the seed row rotated right by `i`, stacked on
//! top of the identity. Only the seed row is published. The private key is a
//! systematic Niederreiter key pair, and
//!
//! ```text
//! H_cyclicᵀ = H'ᵀ + H_secondaryᵀ
//! ```
//!
//! where the bottom `(n-k) x (n-k)` block of `H_secondaryᵀ` is zero. Messages
//! become words `e = [0…0 | e_i]` with `e_i` of weight `t`, so
//! `e · H_secondaryᵀ = 0` and `c = e · H_cyclicᵀ = e · H'ᵀ` decrypts with the
//! Niederreiter private key.
//!
//! Note that `c = e_i`: the ciphertext is the constant-weight word itself.

mod wire;

pub use wire::{index_bits, PrivateKeyFile, PublicKey, Scheme};

use num_bigint::BigUint;

use crate::binmat::{BinaryMatrix, BitVector};
use crate::cw::CwCodec;
use crate::drbg::Drbg;
use crate::error::{check_dim, Error, Result};
use crate::goppa::CodeParams;
use crate::niederreiter::{self, NiedPrivateKey, NiedPublicKey};

/// How the seed row of the cyclic block is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedPolicy {
    /// Uniform random bits.
    Dense,
    /// `w` distinct uniformly chosen positions.
    Sparse(usize),
    /// Ones at `start .. start + len`, no wrap-around.
    Run { start: usize, len: usize },
}

impl SeedPolicy {
    pub fn validate(&self, params: &CodeParams) -> Result<()> {
        let r = params.redundancy();
        match *self {
            SeedPolicy::Dense => Ok(()),
            SeedPolicy::Sparse(w) => {
                if w == 0 || w > r || w > u8::MAX as usize {
                    Err(Error::Policy(format!("sparse weight {w} must be in 1..={}", r.min(255))))
                } else {
                    Ok(())
                }
            }
            SeedPolicy::Run { start, len } => {
                let cap = 1usize << index_bits(r);
                if len < 2 {
                    Err(Error::Policy(format!("run length {len} must be at least 2")))
                } else if start + len > r {
                    Err(Error::Policy(format!("run {start}+{len} overflows the {r}-bit seed row")))
                } else if len >= cap {
                    Err(Error::Policy(format!("run length {len} does not fit {} bits", index_bits(r))))
                } else {
                    Ok(())
                }
            }
        }
    }

    fn draw(&self, r: usize, rng: &mut Drbg) -> BitVector {
        match *self {
            SeedPolicy::Dense => BitVector::from_bools(&rng.bits(r)),
            SeedPolicy::Sparse(w) => {
                // Partial Fisher-Yates: the first w slots of a shuffle.
                let mut idx: Vec<usize> = (0..r).collect();
                for i in 0..w {
                    let j = i + rng.below((r - i) as u32) as usize;
                    idx.swap(i, j);
                }
                BitVector::from_support(r, &idx[..w])
            }
            SeedPolicy::Run { start, len } => BitVector::from_support(r, &(start..start + len).collect::<Vec<_>>()),
        }
    }
}

/// The published seed row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Kal1PublicKey {
    params: CodeParams,
    seed_row: BitVector,
}

impl Kal1PublicKey {
    pub fn new(params: CodeParams, seed_row: BitVector) -> Result<Self> {
        params.validate()?;
        check_dim(params.redundancy(), seed_row.len())?;
        Ok(Kal1PublicKey { params, seed_row })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn t(&self) -> usize {
        self.params.t
    }

    pub fn seed_row(&self) -> &BitVector {
        &self.seed_row
    }

    pub fn codec(&self) -> Result<CwCodec> {
        CwCodec::new(self.params.redundancy(), self.params.t)
    }

    pub fn expand(&self) -> ExpandedCyclicKey {
        let CodeParams { k, .. } = self.params;
        let r = self.params.redundancy();
        let mut top = BinaryMatrix::zeros(k, r);
        for i in 0..k {
            top.set_row(i, &self.seed_row.rotate_right(i)).expect("row width is n - k");
        }
        let h_cyclic_t = top.vstack(&BinaryMatrix::identity(r)).expect("widths agree");
        ExpandedCyclicKey { h_cyclic_t }
    }

    /// Maps `msg` to `e_i`, pads `k` zeros in front, and multiplies by
    /// `H_cyclicᵀ`.
    pub fn encrypt(&self, msg: &BigUint) -> Result<BitVector> {
        let e_i = self.codec()?.encode(msg)?;
        let e = BitVector::zeros(self.params.k).concat(&e_i);
        e.mul_mat(&self.expand().h_cyclic_t)
    }

    pub fn encrypt_bytes(&self, msg: &[u8]) -> Result<BitVector> {
        let codec = self.codec()?;
        self.encrypt(&codec.message_from_bytes(msg)?)
    }

    /// Sparse form; fails with `Policy` when the seed has more than 255 ones
    /// or none at all.
    pub fn to_sparse(&self) -> Result<Kal1S1Key> {
        Kal1S1Key::new(self.params, self.seed_row.support())
    }

    /// Run form; fails with `Policy` unless the seed is one contiguous run.
    pub fn to_run(&self) -> Result<Kal1S2Key> {
        let ones = self.seed_row.support();
        let (Some(&start), Some(&last)) = (ones.first(), ones.last()) else {
            return Err(Error::Policy("seed row is all zeros".into()));
        };
        if last - start + 1 != ones.len() {
            return Err(Error::Policy("seed row ones are not contiguous".into()));
        }
        Kal1S2Key::new(self.params, start, ones.len())
    }
}

/// Seed row given by the positions of its ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Kal1S1Key {
    params: CodeParams,
    positions: Vec<usize>,
}

impl Kal1S1Key {
    pub fn new(params: CodeParams, positions: Vec<usize>) -> Result<Self> {
        params.validate()?;
        SeedPolicy::Sparse(positions.len()).validate(&params)?;
        let r = params.redundancy();
        if positions.windows(2).any(|w| w[0] >= w[1]) || positions.iter().any(|&p| p >= r) {
            return Err(Error::Policy("positions must be strictly increasing and below n - k".into()));
        }
        Ok(Kal1S1Key { params, positions })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn weight(&self) -> usize {
        self.positions.len()
    }

    pub fn to_full(&self) -> Kal1PublicKey {
        let row = BitVector::from_support(self.params.redundancy(), &self.positions);
        Kal1PublicKey { params: self.params, seed_row: row }
    }
}

/// Seed row given as one run of ones: `{start | run}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Kal1S2Key {
    params: CodeParams,
    start: usize,
    run: usize,
}

impl Kal1S2Key {
    pub fn new(params: CodeParams, start: usize, run: usize) -> Result<Self> {
        params.validate()?;
        SeedPolicy::Run { start, len: run }.validate(&params)?;
        Ok(Kal1S2Key { params, start, run })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn run(&self) -> usize {
        self.run
    }

    pub fn to_full(&self) -> Kal1PublicKey {
        let ones: Vec<usize> = (self.start..self.start + self.run).collect();
        let row = BitVector::from_support(self.params.redundancy(), &ones);
        Kal1PublicKey { params: self.params, seed_row: row }
    }
}

/// `H_cyclicᵀ`, `n x (n - k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedCyclicKey {
    h_cyclic_t: BinaryMatrix,
}

impl ExpandedCyclicKey {
    pub fn h_cyclic_t(&self) -> &BinaryMatrix {
        &self.h_cyclic_t
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kal1PrivateKey {
    inner: NiedPrivateKey,
    seed_row: BitVector,
}

impl Kal1PrivateKey {
    pub fn params(&self) -> &CodeParams {
        self.inner.params()
    }

    pub fn niederreiter(&self) -> &NiedPrivateKey {
        &self.inner
    }

    pub fn seed_row(&self) -> &BitVector {
        &self.seed_row
    }

    pub fn public_key(&self) -> Kal1PublicKey {
        Kal1PublicKey { params: *self.params(), seed_row: self.seed_row.clone() }
    }

    /// `H'ᵀ = Pᵀ Hᵀ Sᵀ`.
    pub fn h_prime_t(&self) -> BinaryMatrix {
        self.inner.h_prime_t()
    }

    /// `H_secondaryᵀ = H_cyclicᵀ + H'ᵀ`.
    pub fn h_secondary_t(&self) -> BinaryMatrix {
        self.public_key().expand().h_cyclic_t.add(&self.h_prime_t()).expect("both are n x (n - k)")
    }

    /// Niederreiter decryption, then the zero-prefix and weight checks on
    /// `e = [0…0 | e_i]`, then the inverse message map.
    pub fn decrypt(&self, c: &BitVector) -> Result<BigUint> {
        let e_i = self.recover_word(c)?;
        self.public_key().codec()?.decode(&e_i)
    }

    pub fn decrypt_bytes(&self, c: &BitVector) -> Result<Vec<u8>> {
        let codec = self.public_key().codec()?;
        Ok(codec.message_to_bytes(&self.decrypt(c)?))
    }

    fn recover_word(&self, c: &BitVector) -> Result<BitVector> {
        let CodeParams { k, t, .. } = *self.params();
        let e = self.inner.decrypt(c)?;
        if e.iter_ones().any(|i| i < k) {
            return Err(Error::Format("decrypted error word has ones in its first k positions".into()));
        }
        if e.weight() != t {
            return Err(Error::Format(format!("decrypted error word has weight {} instead of {t}", e.weight())));
        }
        Ok(e.slice(k, self.params().redundancy()))
    }
}

/// Niederreiter key generation followed by the seed-row draw.
pub fn keygen(
    params: CodeParams,
    policy: SeedPolicy,
    rng: &mut Drbg,
) -> Result<(Kal1PublicKey, Kal1PrivateKey, NiedPublicKey)> {
    params.validate()?;
    policy.validate(&params)?;
    let (npk, inner) = niederreiter::keygen(params, rng)?;
    let seed_row = policy.draw(params.redundancy(), rng);
    let pk = Kal1PublicKey { params, seed_row: seed_row.clone() };
    Ok((pk, Kal1PrivateKey { inner, seed_row }, npk))
}
