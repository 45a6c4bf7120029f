//! Polynomials over GF(2^m), as needed by Goppa-code construction and
//! Patterson decoding.

use super::{FieldContext, FieldElement};
use crate::error::{Error, Result};

/// Polynomial with coefficients low degree first. Always normalized: no
/// trailing zero coefficients, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::ONE)
    }

    pub fn x() -> Self {
        Poly::from_coeffs(vec![FieldElement::ZERO, FieldElement::ONE])
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^d`.
    pub fn monomial(c: FieldElement, d: usize) -> Self {
        let mut v = vec![FieldElement::ZERO; d + 1];
        v[d] = c;
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, f: &FieldContext, c: FieldElement) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &FieldContext, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += f.mul(a, b);
            }
        }
        Poly::from_coeffs(out)
    }

    /// Squaring is additive in characteristic 2: `(sum a_i x^i)^2 = sum a_i^2 x^2i`.
    pub fn square(&self, f: &FieldContext) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::ZERO; 2 * self.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[2 * i] = f.square(a);
        }
        Poly::from_coeffs(out)
    }

    pub fn div_rem(&self, f: &FieldContext, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let q = f.mul(c, lead_inv);
            quot[i - dd] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] += f.mul(q, d);
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, f: &FieldContext, modulus: &Poly) -> Result<Poly> {
        Ok(self.div_rem(f, modulus)?.1)
    }

    pub fn mul_mod(&self, f: &FieldContext, other: &Poly, modulus: &Poly) -> Result<Poly> {
        self.mul(f, other).rem(f, modulus)
    }

    pub fn square_mod(&self, f: &FieldContext, modulus: &Poly) -> Result<Poly> {
        self.square(f).rem(f, modulus)
    }

    pub fn make_monic(&self, f: &FieldContext) -> Poly {
        match f.inv(self.leading()) {
            Ok(inv) => self.scale(f, inv),
            Err(_) => Poly::zero(),
        }
    }

    pub fn eval(&self, f: &FieldContext, x: FieldElement) -> FieldElement {
        f.poly_eval(&self.coeffs, x)
    }

    /// Formal derivative; even-degree terms vanish in characteristic 2.
    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| if i % 2 == 1 { c } else { FieldElement::ZERO })
                .collect(),
        )
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(f: &FieldContext, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.make_monic(f)
    }

    /// Extended Euclid on `(a, b)`. Returns `(u, v, d)` with `u*a + v*b = d`.
    ///
    /// With `stop = Some(s)` the remainder sequence halts at the first
    /// remainder of degree `<= s` (the zero polynomial counts as degree
    /// `-inf`). With `stop = None` it runs to the gcd, which is returned
    /// unnormalized.
    pub fn ext_euclid(f: &FieldContext, a: &Poly, b: &Poly, stop: Option<usize>) -> (Poly, Poly, Poly) {
        let done = |r: &Poly| match (stop, r.degree()) {
            (_, None) => true,
            (Some(s), Some(d)) => d <= s,
            (None, Some(_)) => false,
        };
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut u0, mut u1) = (Poly::one(), Poly::zero());
        let (mut v0, mut v1) = (Poly::zero(), Poly::one());
        if done(&r0) {
            return (u0, v0, r0);
        }
        while !done(&r1) {
            let (q, r) = r0.div_rem(f, &r1).expect("r1 is nonzero");
            let u = u0.add(&q.mul(f, &u1));
            let v = v0.add(&q.mul(f, &v1));
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u);
            v0 = std::mem::replace(&mut v1, v);
        }
        if stop.is_none() {
            (u0, v0, r0)
        } else {
            (u1, v1, r1)
        }
    }

    /// Inverse modulo `modulus`; fails when the two are not coprime.
    pub fn inv_mod(&self, f: &FieldContext, modulus: &Poly) -> Result<Poly> {
        let r = self.rem(f, modulus)?;
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (u, _, d) = Poly::ext_euclid(f, &r, modulus, None);
        if d.degree() != Some(0) {
            return Err(Error::DivisionByZero);
        }
        let c = f.inv(d.leading())?;
        u.scale(f, c).rem(f, modulus)
    }

    /// `x^(q^i) mod g` for `i = 0..=count`, with `q = 2^m`.
    fn frobenius_powers(f: &FieldContext, g: &Poly, count: usize) -> Vec<Poly> {
        let mut out = Vec::with_capacity(count + 1);
        let mut cur = Poly::x().rem(f, g).expect("g nonzero");
        out.push(cur.clone());
        for _ in 0..count {
            for _ in 0..f.degree() {
                cur = cur.square_mod(f, g).expect("g nonzero");
            }
            out.push(cur.clone());
        }
        out
    }

    /// Rabin's test over GF(2^m): a polynomial of degree `t` is irreducible
    /// iff `x^(q^t) = x mod g` and `gcd(x^(q^(t/p)) - x, g) = 1` for every
    /// prime `p | t`.
    pub fn is_irreducible(&self, f: &FieldContext) -> bool {
        let t = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(t) => t,
        };
        let g = self.make_monic(f);
        let powers = Poly::frobenius_powers(f, &g, t);
        let x = Poly::x();
        if powers[t] != x {
            return false;
        }
        prime_factors(t).into_iter().all(|p| {
            let h = powers[t / p].add(&x);
            Poly::gcd(f, &h, &g).degree() == Some(0)
        })
    }

    /// Square root modulo an irreducible `g` of degree `t`, computed as
    /// `s^(2^(m*t - 1)) mod g`.
    pub fn sqrt_mod(&self, f: &FieldContext, g: &Poly) -> Result<Poly> {
        let t = g.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.rem(f, g)?;
        for _ in 0..(f.degree() as usize * t).saturating_sub(1) {
            r = r.square_mod(f, g)?;
        }
        Ok(r)
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Fast square roots modulo a fixed irreducible `g`.
///
/// Splits `s = s_even(x)^2 + x * s_odd(x)^2` coefficient-wise, so that
/// `sqrt(s) = s_even + sqrt(x) * s_odd` with `sqrt(x) mod g` precomputed.
#[derive(Debug, Clone)]
pub struct SqrtMod {
    g: Poly,
    sqrt_x: Poly,
}

impl SqrtMod {
    pub fn new(f: &FieldContext, g: &Poly) -> Result<Self> {
        let sqrt_x = Poly::x().sqrt_mod(f, g)?;
        Ok(SqrtMod { g: g.clone(), sqrt_x })
    }

    pub fn sqrt(&self, f: &FieldContext, s: &Poly) -> Result<Poly> {
        let s = s.rem(f, &self.g)?;
        let half = s.coeffs().len().div_ceil(2);
        let mut even = Vec::with_capacity(half);
        let mut odd = Vec::with_capacity(half);
        for i in 0..half {
            even.push(f.sqrt(s.coeff(2 * i)));
            odd.push(f.sqrt(s.coeff(2 * i + 1)));
        }
        let even = Poly::from_coeffs(even);
        let odd = Poly::from_coeffs(odd);
        even.add(&self.sqrt_x.mul(f, &odd)).rem(f, &self.g)
    }
}
