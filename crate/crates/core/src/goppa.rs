//! Binary Goppa codes: construction, parity-check matrices and Patterson
//! syndrome decoding.
//!
//! The binary parity-check matrix expands every field entry of the `t x n`
//! matrix `H[j][i] = α_i^j / g(α_i)` into `m` rows, coefficient 0 topmost:
//! binary row `j*m + b` holds bit `b` of row `j`.

use std::sync::Arc;

use crate::binmat::{BinaryMatrix, BitVector};
use crate::drbg::Drbg;
use crate::error::{check_dim, Error, Result};
use crate::gf2m::{FieldContext, FieldElement, Poly, SqrtMod};

const MAX_POLY_DRAWS: usize = 100_000;

/// Code parameters `(n, k, t, m)` with `k = n - m*t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub m: usize,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, t: usize, m: usize) -> Result<Self> {
        let p = CodeParams { n, k, t, m };
        p.validate()?;
        Ok(p)
    }

    /// Parameters with `k` derived as `n - m*t`.
    pub fn with_length(n: usize, t: usize, m: usize) -> Result<Self> {
        let k = n
            .checked_sub(m * t)
            .ok_or_else(|| Error::Parameter(format!("n = {n} is not larger than m*t = {}", m * t)))?;
        Self::new(n, k, t, m)
    }

    pub fn validate(&self) -> Result<()> {
        let CodeParams { n, k, t, m } = *self;
        let bad = |msg: String| Err(Error::Parameter(msg));
        if !(4..=16).contains(&m) {
            return bad(format!("m = {m} outside 4..=16"));
        }
        if n > 1 << m {
            return bad(format!("n = {n} exceeds 2^m = {}", 1usize << m));
        }
        if n > u16::MAX as usize {
            return bad(format!("n = {n} does not fit the 16-bit header field"));
        }
        if t < 2 {
            return bad(format!("t = {t} must be at least 2"));
        }
        if m * t >= n {
            return bad(format!("m*t = {} must be smaller than n = {n}", m * t));
        }
        if k != n - m * t {
            return bad(format!("k = {k} must equal n - m*t = {}", n - m * t));
        }
        Ok(())
    }

    /// Syndrome length `n - k`.
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }
}

impl std::fmt::Display for CodeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} k={} t={} m={}", self.n, self.k, self.t, self.m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    over_field: Vec<Vec<FieldElement>>,
    binary: BinaryMatrix,
}

impl ParityCheckMatrix {
    /// `t x n` matrix over GF(2^m).
    pub fn over_field(&self) -> &[Vec<FieldElement>] {
        &self.over_field
    }

    /// `(m*t) x n` bit expansion.
    pub fn binary(&self) -> &BinaryMatrix {
        &self.binary
    }

    /// `e · Hᵀ`.
    pub fn syndrome(&self, e: &BitVector) -> Result<BitVector> {
        e.mul_mat_transpose(&self.binary)
    }
}

/// A binary Goppa code with irreducible Goppa polynomial.
#[derive(Debug, Clone)]
pub struct GoppaCode {
    params: CodeParams,
    field: Arc<FieldContext>,
    support: Vec<FieldElement>,
    goppa_poly: Poly,
    sqrt: SqrtMod,
    h: ParityCheckMatrix,
}

impl PartialEq for GoppaCode {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
            && *self.field == *other.field
            && self.support == other.support
            && self.goppa_poly == other.goppa_poly
    }
}

impl Eq for GoppaCode {}

impl GoppaCode {
    pub fn new(
        params: CodeParams,
        field: Arc<FieldContext>,
        support: Vec<FieldElement>,
        goppa_poly: Poly,
    ) -> Result<Self> {
        params.validate()?;
        if field.degree() as usize != params.m {
            return Err(Error::Parameter(format!("field degree {} does not match m = {}", field.degree(), params.m)));
        }
        check_dim(params.n, support.len())?;
        let mut seen = vec![false; field.size()];
        for &a in &support {
            if a.0 as usize >= field.size() || std::mem::replace(&mut seen[a.0 as usize], true) {
                return Err(Error::Parameter("support elements must be distinct field elements".into()));
            }
        }
        if goppa_poly.degree() != Some(params.t) {
            return Err(Error::Parameter(format!("Goppa polynomial must have degree t = {}", params.t)));
        }
        let goppa_poly = goppa_poly.make_monic(&field);
        if !goppa_poly.is_irreducible(&field) {
            return Err(Error::Parameter("Goppa polynomial must be irreducible".into()));
        }
        let sqrt = SqrtMod::new(&field, &goppa_poly)?;
        let h = build_parity_check(&field, &params, &support, &goppa_poly)?;
        Ok(GoppaCode { params, field, support, goppa_poly, sqrt, h })
    }

    /// Support: the first `n` entries of a Fisher-Yates shuffle of all field
    /// elements. Goppa polynomial: monic with `t` uniform lower coefficients,
    /// redrawn until irreducible.
    pub fn generate(params: CodeParams, field: Arc<FieldContext>, rng: &mut Drbg) -> Result<Self> {
        params.validate()?;
        let mut all: Vec<FieldElement> = field.elements().collect();
        rng.shuffle(&mut all);
        all.truncate(params.n);

        let q = field.size() as u32;
        for _ in 0..MAX_POLY_DRAWS {
            let mut coeffs: Vec<FieldElement> = (0..params.t).map(|_| FieldElement(rng.below(q) as u16)).collect();
            coeffs.push(FieldElement::ONE);
            let g = Poly::from_coeffs(coeffs);
            if g.is_irreducible(&field) {
                return GoppaCode::new(params, field, all, g);
            }
        }
        Err(Error::GenerationFailure("no irreducible Goppa polynomial found".into()))
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn support(&self) -> &[FieldElement] {
        &self.support
    }

    pub fn goppa_poly(&self) -> &Poly {
        &self.goppa_poly
    }

    pub fn parity_check(&self) -> &ParityCheckMatrix {
        &self.h
    }

    pub fn syndrome(&self, e: &BitVector) -> Result<BitVector> {
        self.h.syndrome(e)
    }

    /// Syndrome polynomial `S(x) = Σ_{i ∈ supp(e)} 1/(x - α_i) mod g`,
    /// recovered from the binary syndrome.
    ///
    /// With `s_j = Σ α_i^j / g(α_i)` read off the syndrome bits, the
    /// coefficient of `x^j` is `Σ_{l > j} g_l s_{l-1-j}`.
    pub fn syndrome_poly(&self, synd: &BitVector) -> Result<Poly> {
        let CodeParams { t, m, .. } = self.params;
        check_dim(m * t, synd.len())?;
        let s: Vec<FieldElement> = (0..t)
            .map(|j| {
                let v = (0..m).filter(|&b| synd.get(j * m + b)).fold(0u16, |acc, b| acc | 1 << b);
                FieldElement(v)
            })
            .collect();
        let g = self.goppa_poly.coeffs();
        let coeffs = (0..t)
            .map(|j| (j + 1..=t).fold(FieldElement::ZERO, |acc, l| acc + self.field.mul(g[l], s[l - 1 - j])))
            .collect();
        Ok(Poly::from_coeffs(coeffs))
    }

    /// Patterson decoding: returns the unique error of weight `<= t` with the
    /// given syndrome.
    pub fn decode(&self, synd: &BitVector) -> Result<BitVector> {
        let f = &*self.field;
        let g = &self.goppa_poly;
        let CodeParams { n, t, .. } = self.params;

        let s = self.syndrome_poly(synd)?;
        if s.is_zero() {
            return Ok(BitVector::zeros(n));
        }
        let inv = s.inv_mod(f, g).map_err(|_| Error::DecodingFailure)?;
        let r = self.sqrt.sqrt(f, &inv.add(&Poly::x()))?;
        // a = b·R mod g with deg a <= t/2, deg b <= (t-1)/2.
        let (_, b, a) = Poly::ext_euclid(f, g, &r, Some(t / 2));
        let sigma = a.square(f).add(&Poly::x().mul(f, &b.square(f)));
        let deg = match sigma.degree() {
            Some(d) if d <= t => d,
            _ => return Err(Error::DecodingFailure),
        };

        let mut e = BitVector::zeros(n);
        let mut roots = 0;
        for (i, &alpha) in self.support.iter().enumerate() {
            if sigma.eval(f, alpha).is_zero() {
                e.set(i, true);
                roots += 1;
            }
        }
        if roots != deg || self.syndrome(&e)? != *synd {
            return Err(Error::DecodingFailure);
        }
        Ok(e)
    }
}

fn build_parity_check(
    field: &FieldContext,
    params: &CodeParams,
    support: &[FieldElement],
    g: &Poly,
) -> Result<ParityCheckMatrix> {
    let CodeParams { n, t, m, .. } = *params;
    let mut over_field = vec![vec![FieldElement::ZERO; n]; t];
    let mut binary = BinaryMatrix::zeros(m * t, n);
    for (i, &alpha) in support.iter().enumerate() {
        let mut entry = field.inv(g.eval(field, alpha))?;
        for (j, row) in over_field.iter_mut().enumerate() {
            row[i] = entry;
            for b in 0..m {
                if entry.bit(b as u32) {
                    binary.set(j * m + b, i, true);
                }
            }
            entry = field.mul(entry, alpha);
        }
    }
    Ok(ParityCheckMatrix { over_field, binary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drbg::Seed;

    fn toy_params() -> CodeParams {
        CodeParams::new(16, 8, 2, 4).unwrap()
    }

    fn code(params: CodeParams, seed: u64) -> GoppaCode {
        let field = Arc::new(FieldContext::new(params.m as u32).unwrap());
        GoppaCode::generate(params, field, &mut Drbg::new(&Seed::from(seed))).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(CodeParams::new(1024, 524, 50, 10).is_ok());
        assert!(CodeParams::new(16, 8, 2, 4).is_ok());
        assert!(CodeParams::new(16, 9, 2, 4).is_err());
        assert!(CodeParams::new(17, 9, 2, 4).is_err());
        assert!(CodeParams::new(16, 12, 1, 4).is_err());
        assert!(CodeParams::new(8, 0, 2, 4).is_err());
        assert_eq!(CodeParams::with_length(256, 8, 8).unwrap().k, 192);
        assert!(CodeParams::with_length(10, 3, 4).is_err());
    }

    #[test]
    fn toy_code_fixture() {
        let c = code(toy_params(), 1);
        let support: Vec<u16> = c.support().iter().map(|a| a.0).collect();
        let g: Vec<u16> = c.goppa_poly().coeffs().iter().map(|a| a.0).collect();
        assert_eq!(support, FIXTURE_SUPPORT);
        assert_eq!(g, FIXTURE_G);
        // A quadratic is irreducible iff it has no roots.
        assert!(c.field().elements().all(|a| !c.goppa_poly().eval(c.field(), a).is_zero()));
    }

    const FIXTURE_SUPPORT: [u16; 16] = [2, 7, 9, 0, 11, 3, 12, 15, 8, 14, 4, 1, 10, 6, 13, 5];
    const FIXTURE_G: [u16; 3] = [5, 12, 1];

    #[test]
    fn full_length_support_is_whole_field() {
        let c = code(toy_params(), 2);
        let mut s: Vec<u16> = c.support().iter().map(|a| a.0).collect();
        s.sort_unstable();
        assert_eq!(s, (0..16).collect::<Vec<u16>>());
        // Irreducible of degree 2: no roots anywhere in GF(16).
        for a in c.field().elements() {
            assert!(!c.goppa_poly().eval(c.field(), a).is_zero());
        }
    }

    #[test]
    fn parity_check_shape() {
        let c = code(toy_params(), 1);
        let h = c.parity_check();
        let f = c.field();
        for (i, &a) in c.support().iter().enumerate() {
            let g_a = c.goppa_poly().eval(f, a);
            assert_eq!(h.over_field()[0][i], f.inv(g_a).unwrap());
            assert_eq!(h.over_field()[1][i], f.div(a, g_a).unwrap());
            for b in 0..4 {
                assert_eq!(h.binary().get(4 + b, i), h.over_field()[1][i].bit(b as u32));
            }
        }
        assert_eq!(h.binary().rows(), 8);
        assert_eq!(h.binary().cols(), 16);
        assert_eq!(h.binary().rank(), 8);
    }

    #[test]
    fn syndrome_examples() {
        let c = code(toy_params(), 1);
        let h = c.parity_check().binary();
        assert!(c.syndrome(&BitVector::zeros(16)).unwrap().is_zero());
        for i in 0..16 {
            assert_eq!(c.syndrome(&BitVector::unit(16, i)).unwrap(), h.column(i));
        }
        let e = BitVector::from_support(16, &[3, 11]);
        let em = BinaryMatrix::from_rows(std::slice::from_ref(&e)).unwrap();
        assert_eq!(c.syndrome(&e).unwrap(), em.mul(&h.transpose()).unwrap().row(0));
        let e2 = BitVector::from_support(16, &[1, 11, 15]);
        assert_eq!(
            c.syndrome(&e.xor(&e2).unwrap()).unwrap(),
            c.syndrome(&e).unwrap().xor(&c.syndrome(&e2).unwrap()).unwrap()
        );
        assert!(c.syndrome(&BitVector::zeros(15)).is_err());
    }

    #[test]
    fn syndrome_poly_matches_direct_sum() {
        let c = code(CodeParams::with_length(64, 5, 6).unwrap(), 3);
        let f = c.field();
        let g = c.goppa_poly();
        let mut rng = Drbg::new(&Seed::from(99));
        for _ in 0..50 {
            let mut idx: Vec<usize> = (0..64).collect();
            rng.shuffle(&mut idx);
            let supp = &idx[..5];
            let direct = supp.iter().fold(Poly::zero(), |acc, &i| {
                let lin = Poly::from_coeffs(vec![c.support()[i], FieldElement::ONE]);
                acc.add(&lin.inv_mod(f, g).unwrap())
            });
            let e = BitVector::from_support(64, supp);
            assert_eq!(c.syndrome_poly(&c.syndrome(&e).unwrap()).unwrap(), direct);
        }
    }

    #[test]
    fn decode_exhaustive_toy() {
        for seed in 1..=5 {
            let c = code(toy_params(), seed);
            let mut count = 0;
            for i in 0..16 {
                for j in i..16 {
                    let e = if i == j { BitVector::unit(16, i) } else { BitVector::from_support(16, &[i, j]) };
                    assert_eq!(c.decode(&c.syndrome(&e).unwrap()).unwrap(), e);
                    count += 1;
                }
            }
            assert_eq!(count + 1, 137);
            assert!(c.decode(&BitVector::zeros(8)).unwrap().is_zero());
        }
    }

    #[test]
    fn decode_never_returns_wrong_preimage() {
        let c = code(toy_params(), 1);
        let mut failures = 0;
        for a in 0..16 {
            for b in a + 1..16 {
                for d in b + 1..16 {
                    let e3 = BitVector::from_support(16, &[a, b, d]);
                    let s = c.syndrome(&e3).unwrap();
                    match c.decode(&s) {
                        Err(Error::DecodingFailure) => failures += 1,
                        Err(other) => panic!("unexpected {other:?}"),
                        Ok(v) => {
                            // Only possible when e3 + v is a codeword of weight 5.
                            assert!(v.weight() <= 2);
                            assert_eq!(c.syndrome(&v).unwrap(), s);
                            assert!(c.syndrome(&e3.xor(&v).unwrap()).unwrap().is_zero());
                        }
                    }
                }
            }
        }
        assert!(failures > 0);
    }

    #[test]
    fn decode_mid_scale_random() {
        let c = code(CodeParams::with_length(256, 8, 8).unwrap(), 4);
        let mut rng = Drbg::new(&Seed::from(5));
        let mut idx: Vec<usize> = (0..256).collect();
        for _ in 0..10_000 {
            rng.shuffle(&mut idx);
            let e = BitVector::from_support(256, &idx[..8]);
            assert_eq!(c.decode(&c.syndrome(&e).unwrap()).unwrap(), e);
        }
    }

    #[test]
    fn decode_short_support_with_zero_element() {
        // Support without all field elements, and errors at α = 0 if present.
        let params = CodeParams::with_length(40, 4, 6).unwrap();
        for seed in 0..5 {
            let c = code(params, seed);
            let mut rng = Drbg::new(&Seed::from(seed + 100));
            let mut idx: Vec<usize> = (0..40).collect();
            for w in 0..=4 {
                for _ in 0..50 {
                    rng.shuffle(&mut idx);
                    let e = BitVector::from_support(40, &idx[..w]);
                    assert_eq!(c.decode(&c.syndrome(&e).unwrap()).unwrap(), e);
                }
            }
        }
    }
}
