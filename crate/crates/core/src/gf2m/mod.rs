//! Arithmetic in GF(2^m), polynomial basis.
//!
//! An element is the bitmask of a polynomial of degree `< m` with coefficient
//! `i` in bit `i`. Multiplication goes through log/exp tables built from a
//! generator found at construction, so any irreducible reduction polynomial
//! works, primitive or not.

mod poly;

pub use poly::{Poly, SqrtMod};

use crate::error::{Error, Result};

pub const MIN_DEGREE: u32 = 4;
pub const MAX_DEGREE: u32 = 16;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn bit(self, i: u32) -> bool {
        (self.0 >> i) & 1 == 1
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for FieldElement {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

/// Default reduction polynomial for each supported degree. All of them are
/// primitive trinomials or pentanomials.
pub fn default_reduction_poly(m: u32) -> Option<u32> {
    Some(match m {
        4 => 0x13,     // x^4 + x + 1
        5 => 0x25,     // x^5 + x^2 + 1
        6 => 0x43,     // x^6 + x + 1
        7 => 0x83,     // x^7 + x + 1
        8 => 0x11d,    // x^8 + x^4 + x^3 + x^2 + 1
        9 => 0x211,    // x^9 + x^4 + 1
        10 => 0x409,   // x^10 + x^3 + 1
        11 => 0x805,   // x^11 + x^2 + 1
        12 => 0x1053,  // x^12 + x^6 + x^4 + x + 1
        13 => 0x201b,  // x^13 + x^4 + x^3 + x + 1
        14 => 0x4443,  // x^14 + x^10 + x^6 + x + 1
        15 => 0x8003,  // x^15 + x + 1
        16 => 0x1100b, // x^16 + x^12 + x^3 + x + 1
        _ => return None,
    })
}

/// Carry-less shift-and-reduce product; used to build the tables.
fn mul_reduce(mut a: u32, mut b: u32, m: u32, poly: u32) -> u32 {
    let mut acc = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> m & 1 == 1 {
            a ^= poly;
        }
    }
    acc
}

fn bit_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

/// Remainder of `a` modulo `b` as polynomials over F_2.
fn f2_rem(mut a: u32, b: u32) -> u32 {
    let db = bit_degree(b);
    while a != 0 && bit_degree(a) >= db {
        a ^= b << (bit_degree(a) - db);
    }
    a
}

/// Trial division by every polynomial of degree `1..=deg/2`.
pub fn is_irreducible_f2(poly: u32) -> bool {
    let d = bit_degree(poly);
    if d < 1 {
        return false;
    }
    for divisor in 2u32..(1 << (d / 2 + 1)) {
        if f2_rem(poly, divisor) == 0 {
            return false;
        }
    }
    true
}

/// GF(2^m) arithmetic context. Immutable after construction.
#[derive(Clone)]
pub struct FieldContext {
    m: u32,
    poly: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl std::fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldContext").field("m", &self.m).field("poly", &format_args!("{:#x}", self.poly)).finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.poly == other.poly
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    /// Field with the default reduction polynomial for `m`.
    pub fn new(m: u32) -> Result<Self> {
        let poly = default_reduction_poly(m)
            .ok_or_else(|| Error::Parameter(format!("m = {m} outside {MIN_DEGREE}..={MAX_DEGREE}")))?;
        Self::with_poly(m, poly)
    }

    pub fn with_poly(m: u32, poly: u32) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(Error::Parameter(format!("m = {m} outside {MIN_DEGREE}..={MAX_DEGREE}")));
        }
        if bit_degree(poly) != m as i32 || poly & 1 == 0 {
            return Err(Error::Parameter(format!(
                "reduction polynomial {poly:#x} must have bits {m} and 0 set and nothing above"
            )));
        }
        if !is_irreducible_f2(poly) {
            return Err(Error::Parameter(format!("reduction polynomial {poly:#x} is reducible")));
        }
        let q = 1u32 << m;
        let order = (q - 1) as usize;
        let generator = (2..q)
            .find(|&g| {
                let mut x = g;
                let mut steps = 1;
                while x != 1 {
                    x = mul_reduce(x, g, m, poly);
                    steps += 1;
                }
                steps == order
            })
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x as u16;
            exp[i + order] = x as u16;
            log[x as usize] = i as u16;
            x = mul_reduce(x, generator, m, poly);
        }
        Ok(FieldContext { m, poly, exp, log })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn reduction_poly(&self) -> u32 {
        self.poly
    }

    /// Number of field elements, `2^m`.
    pub fn size(&self) -> usize {
        1 << self.m
    }

    fn order(&self) -> usize {
        self.exp.len() / 2
    }

    pub fn element(&self, v: u32) -> Result<FieldElement> {
        if (v as usize) < self.size() {
            Ok(FieldElement(v as u16))
        } else {
            Err(Error::Range(format!("{v:#x} is not an element of GF(2^{})", self.m)))
        }
    }

    /// All elements in increasing bitmask order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size() as u32).map(|v| FieldElement(v as u16))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        FieldElement(self.exp[s])
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a.0 as usize] as usize;
        Ok(FieldElement(self.exp[(self.order() - l) % self.order()]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let order = self.order() as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (e % order)) % order) as usize])
    }

    /// The unique square root; squaring is a bijection in characteristic 2.
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        if a.is_zero() {
            return a;
        }
        let order = self.order();
        let l = self.log[a.0 as usize] as usize;
        // order is odd, so exactly one of l and l + order is even.
        let half = if l.is_multiple_of(2) { l / 2 } else { (l + order) / 2 };
        FieldElement(self.exp[half])
    }

    /// Horner evaluation of `coeffs[0] + coeffs[1] x + ...` at `x`.
    pub fn poly_eval(&self, coeffs: &[FieldElement], x: FieldElement) -> FieldElement {
        coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| self.mul(acc, x) + c)
    }
}
