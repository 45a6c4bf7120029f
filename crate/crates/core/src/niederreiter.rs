//! Baseline Niederreiter cryptosystem over binary Goppa codes.
//!
//! The public matrix is `H' = S · H · P` in systematic form `[A | I]`, with
//! the identity in the last `n - k` columns, exposed transposed as
//! `h_prime_t = Pᵀ Hᵀ Sᵀ` (`n x (n - k)`). `S` is not drawn independently:
//! it is the inverse of the right `(n-k) x (n-k)` block of `H · P`, so the
//! public matrix comes out systematic. Encryption is `c = e · h_prime_t`.

use std::sync::Arc;

use crate::binmat::{BinaryMatrix, BitVector, Permutation, Scrambler};
use crate::cw::CwCodec;
use crate::drbg::Drbg;
use crate::error::{check_dim, Error, Result};
use crate::gf2m::FieldContext;
use crate::goppa::{CodeParams, GoppaCode};

const MAX_SINGULAR_DRAWS: usize = 100;
const MAX_CODE_DRAWS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiedPublicKey {
    params: CodeParams,
    h_prime_t: BinaryMatrix,
}

impl NiedPublicKey {
    /// Checks the shape and the systematic identity block.
    pub fn new(params: CodeParams, h_prime_t: BinaryMatrix) -> Result<Self> {
        params.validate()?;
        check_dim(params.n, h_prime_t.rows())?;
        check_dim(params.redundancy(), h_prime_t.cols())?;
        let r = params.redundancy();
        if !h_prime_t.block(params.k, 0, r, r).is_identity() {
            return Err(Error::Format("public matrix is not in systematic form".into()));
        }
        Ok(NiedPublicKey { params, h_prime_t })
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn h_prime_t(&self) -> &BinaryMatrix {
        &self.h_prime_t
    }

    /// `e · h_prime_t` without the weight precondition.
    pub fn syndrome(&self, e: &BitVector) -> Result<BitVector> {
        e.mul_mat(&self.h_prime_t)
    }

    pub fn encrypt(&self, e: &BitVector) -> Result<BitVector> {
        check_dim(self.params.n, e.len())?;
        if e.weight() != self.params.t {
            return Err(Error::Weight { expected: self.params.t, found: e.weight() });
        }
        self.syndrome(e)
    }

    /// Maps a message onto a weight-`t` word of length `n` and encrypts it.
    pub fn encrypt_message(&self, msg: &[u8]) -> Result<BitVector> {
        let e = CwCodec::new(self.params.n, self.params.t)?.encode_bytes(msg)?;
        self.encrypt(&e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiedPrivateKey {
    code: GoppaCode,
    s: Scrambler,
    p: Permutation,
}

impl NiedPrivateKey {
    pub fn params(&self) -> &CodeParams {
        self.code.params()
    }

    pub fn code(&self) -> &GoppaCode {
        &self.code
    }

    pub fn scrambler(&self) -> &Scrambler {
        &self.s
    }

    pub fn permutation(&self) -> &Permutation {
        &self.p
    }

    /// Recomputes `Pᵀ Hᵀ Sᵀ` from the private parts.
    pub fn h_prime_t(&self) -> BinaryMatrix {
        let hp = self.p.permute_columns(self.code.parity_check().binary()).expect("shapes agree");
        self.s.matrix().mul(&hp).expect("shapes agree").transpose()
    }

    /// `c · (Sᵀ)⁻¹`, then Goppa decoding, then `· (Pᵀ)⁻¹`.
    pub fn decrypt(&self, c: &BitVector) -> Result<BitVector> {
        check_dim(self.params().redundancy(), c.len())?;
        let c1 = c.mul_mat_transpose(self.s.inverse())?;
        let c2 = self.code.decode(&c1)?;
        self.p.apply(&c2, true)
    }

    pub fn decrypt_message(&self, c: &BitVector) -> Result<Vec<u8>> {
        let e = self.decrypt(c)?;
        let params = self.params();
        if e.weight() != params.t {
            return Err(Error::Format(format!("decrypted error has weight {} instead of {}", e.weight(), params.t)));
        }
        CwCodec::new(params.n, params.t)?.decode_bytes(&e)
    }
}

/// Generates a systematic Niederreiter key pair.
///
/// Draw order: Goppa code (redrawn while its binary parity check is rank
/// deficient), then permutations until the right block of `H · P` is
/// invertible.
pub fn keygen(params: CodeParams, rng: &mut Drbg) -> Result<(NiedPublicKey, NiedPrivateKey)> {
    params.validate()?;
    let field = Arc::new(FieldContext::new(params.m as u32)?);
    let r = params.redundancy();

    let code = (0..MAX_CODE_DRAWS)
        .find_map(|_| {
            GoppaCode::generate(params, field.clone(), rng)
                .map(|c| (c.parity_check().binary().rank() == r).then_some(c))
                .transpose()
        })
        .transpose()?
        .ok_or_else(|| Error::GenerationFailure("binary parity check never reached full rank".into()))?;

    for _ in 0..MAX_SINGULAR_DRAWS {
        let p = Permutation::random(params.n, rng);
        let hp = p.permute_columns(code.parity_check().binary())?;
        let right = hp.block(0, params.k, r, r);
        let Ok(s) = right.invert() else {
            continue;
        };
        let h_prime = s.mul(&hp)?;
        let pk = NiedPublicKey::new(params, h_prime.transpose())?;
        let s = Scrambler::new(s)?;
        return Ok((pk, NiedPrivateKey { code, s, p }));
    }
    Err(Error::GenerationFailure(format!("{MAX_SINGULAR_DRAWS} permutations left the systematic block singular")))
}
