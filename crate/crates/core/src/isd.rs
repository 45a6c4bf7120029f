//! Toy-scale security instruments: Prange information-set decoding and rank
//! reports on Kal1 key pairs.

use std::fmt;

use crate::binmat::{BinaryMatrix, BitVector, Permutation};
use crate::drbg::Drbg;
use crate::error::{check_dim, Error, Result};
use crate::kal1::{ExpandedCyclicKey, Kal1PrivateKey};

/// Largest code length attacked without an explicit override.
pub const DEFAULT_MAX_LENGTH: usize = 64;

/// Largest kernel dimension whose solutions are enumerated when the chosen
/// column block is singular.
const MAX_KERNEL_DIM: usize = 10;

/// Find `e` with `wt(e) <= t` and `e · hᵀ = syndrome`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsdInstance {
    h: BinaryMatrix,
    syndrome: BitVector,
    t: usize,
}

impl IsdInstance {
    /// `h` is the `(n - k) x n` parity-check matrix.
    pub fn new(h: BinaryMatrix, syndrome: BitVector, t: usize) -> Result<Self> {
        check_dim(h.rows(), syndrome.len())?;
        if t > h.rows() {
            return Err(Error::Parameter(format!("t = {t} exceeds n - k = {}", h.rows())));
        }
        Ok(IsdInstance { h, syndrome, t })
    }

    pub fn h(&self) -> &BinaryMatrix {
        &self.h
    }

    pub fn syndrome(&self) -> &BitVector {
        &self.syndrome
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn length(&self) -> usize {
        self.h.cols()
    }

    fn accepts(&self, e: &BitVector) -> bool {
        e.weight() <= self.t && e.mul_mat_transpose(&self.h).is_ok_and(|s| s == self.syndrome)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsdOutcome {
    Found { error: BitVector, iterations: usize },
    NotFound { iterations: usize },
}

impl IsdOutcome {
    pub fn error(&self) -> Option<&BitVector> {
        match self {
            IsdOutcome::Found { error, .. } => Some(error),
            IsdOutcome::NotFound { .. } => None,
        }
    }
}

/// Prange's algorithm. Each iteration draws a uniformly random set of
/// `n - k` columns, solves `e_J · h_Jᵀ = s` by Gaussian elimination (all
/// solutions are tried when `h_J` is singular and the kernel is small), and
/// accepts if the solution has weight at most `t`. Every returned vector is
/// verified against the instance.
///
/// Lengths above [`DEFAULT_MAX_LENGTH`] are refused unless `allow_large`.
pub fn prange(inst: &IsdInstance, max_iters: usize, rng: &mut Drbg, allow_large: bool) -> Result<IsdOutcome> {
    let n = inst.length();
    if n > DEFAULT_MAX_LENGTH && !allow_large {
        return Err(Error::Parameter(format!(
            "n = {n} exceeds the toy limit {DEFAULT_MAX_LENGTH}; pass the override to run anyway"
        )));
    }
    if inst.syndrome.is_zero() {
        return Ok(IsdOutcome::Found { error: BitVector::zeros(n), iterations: 0 });
    }
    if inst.t == 0 {
        return Ok(IsdOutcome::NotFound { iterations: 0 });
    }
    let r = inst.h.rows();
    for it in 1..=max_iters {
        let perm = Permutation::random(n, rng);
        let cols = &perm.map()[..r];
        if let Some(e) = solve_on_columns(inst, cols) {
            debug_assert!(inst.accepts(&e));
            return Ok(IsdOutcome::Found { error: e, iterations: it });
        }
    }
    Ok(IsdOutcome::NotFound { iterations: max_iters })
}

/// Low-weight solution supported on `cols`, if one exists.
fn solve_on_columns(inst: &IsdInstance, cols: &[usize]) -> Option<BitVector> {
    let r = inst.h.rows();
    let width = cols.len();
    let s_col = BinaryMatrix::from_rows(std::slice::from_ref(&inst.syndrome)).ok()?.transpose();
    let mut aug = inst.h.select_columns(cols).hstack(&s_col).ok()?;
    let pivots = aug.rref_in_place(width);
    // Inconsistent: a zero row with a one in the syndrome column.
    if (pivots.len()..r).any(|i| aug.get(i, width)) {
        return None;
    }
    let mut particular = BitVector::zeros(width);
    for (i, &c) in pivots.iter().enumerate() {
        particular.set(c, aug.get(i, width));
    }
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    let kernel: Vec<BitVector> = free
        .iter()
        .map(|&f| {
            let mut v = BitVector::unit(width, f);
            for (i, &c) in pivots.iter().enumerate() {
                v.set(c, aug.get(i, f));
            }
            v
        })
        .collect();

    let combos: usize = if kernel.len() <= MAX_KERNEL_DIM { 1 << kernel.len() } else { 1 };
    for mask in 0..combos {
        let mut x = particular.clone();
        for (b, v) in kernel.iter().enumerate() {
            if mask >> b & 1 == 1 {
                x.xor_assign(v).ok()?;
            }
        }
        if x.weight() <= inst.t {
            let mut e = BitVector::zeros(inst.length());
            for j in x.iter_ones() {
                e.set(cols[j], true);
            }
            if inst.accepts(&e) {
                return Some(e);
            }
        }
    }
    None
}

/// `C(n - k, t) / C(n, t)`: the chance that a random `(n - k)`-set of columns
/// covers a fixed weight-`t` support.
pub fn prange_success_probability(n: usize, k: usize, t: usize) -> f64 {
    let r = n - k;
    if t > r {
        return 0.0;
    }
    (0..t).map(|i| (r - i) as f64 / (n - i) as f64).product()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    pub n: usize,
    pub k: usize,
    pub rank_cyclic: usize,
    pub rank_prime: usize,
    pub rank_secondary: usize,
    pub subadditive: bool,
    pub secondary_zero_block: bool,
    pub sampled_sets: usize,
    pub full_rank_sets: usize,
}

/// Ranks of `H_cyclicᵀ`, `H'ᵀ` and `H_secondaryᵀ`, the subadditivity check
/// `rank(H_cyclicᵀ) <= rank(H'ᵀ) + rank(H_secondaryᵀ)`, and how many of
/// `samples` random `(n - k)`-row subsets of `H_cyclicᵀ` (the column sets a
/// Prange attacker draws) are invertible.
pub fn rank_report(
    expanded: &ExpandedCyclicKey,
    sk: &Kal1PrivateKey,
    samples: usize,
    rng: &mut Drbg,
) -> Result<RankReport> {
    let cyc = expanded.h_cyclic_t();
    let prime = sk.h_prime_t();
    check_dim(prime.rows(), cyc.rows())?;
    check_dim(prime.cols(), cyc.cols())?;
    let sec = cyc.add(&prime)?;
    let (n, r) = (cyc.rows(), cyc.cols());
    let k = n - r;

    let rank_cyclic = cyc.rank();
    let rank_prime = prime.rank();
    let rank_secondary = sec.rank();
    let cyc_cols = cyc.transpose();
    let full_rank_sets = (0..samples)
        .filter(|_| {
            let perm = Permutation::random(n, rng);
            cyc_cols.select_columns(&perm.map()[..r]).rank() == r
        })
        .count();

    Ok(RankReport {
        n,
        k,
        rank_cyclic,
        rank_prime,
        rank_secondary,
        subadditive: rank_cyclic <= rank_prime + rank_secondary,
        secondary_zero_block: sec.block(k, 0, r, r).is_zero(),
        sampled_sets: samples,
        full_rank_sets,
    })
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "rank(H_cyclic^T): {}", self.rank_cyclic)?;
        writeln!(f, "rank(H'^T): {}", self.rank_prime)?;
        writeln!(f, "rank(H_secondary^T): {}", self.rank_secondary)?;
        writeln!(
            f,
            "subadditivity: {} <= {} + {}: {}",
            self.rank_cyclic,
            self.rank_prime,
            self.rank_secondary,
            if self.subadditive { "holds" } else { "VIOLATED" }
        )?;
        writeln!(f, "H_secondary^T bottom block zero: {}", self.secondary_zero_block)?;
        writeln!(f, "full-rank (n-k)-subsets: {}/{}", self.full_rank_sets, self.sampled_sets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drbg::Seed;
    use crate::goppa::CodeParams;
    use crate::kal1::{keygen, SeedPolicy};
    use crate::niederreiter;

    fn toy_instance(seed: u64, support: &[usize]) -> IsdInstance {
        let params = CodeParams::new(16, 8, 2, 4).unwrap();
        let (pk, _) = niederreiter::keygen(params, &mut Drbg::new(&Seed::from(seed))).unwrap();
        let e = BitVector::from_support(16, support);
        let s = pk.syndrome(&e).unwrap();
        IsdInstance::new(pk.h_prime_t().transpose(), s, 2).unwrap()
    }

    #[test]
    fn zero_syndrome_is_immediate() {
        let inst = toy_instance(1, &[]);
        let out = prange(&inst, 10, &mut Drbg::new(&Seed::from(0)), false).unwrap();
        assert_eq!(out, IsdOutcome::Found { error: BitVector::zeros(16), iterations: 0 });
    }

    #[test]
    fn weight_zero_bound_with_nonzero_syndrome() {
        let inst = toy_instance(1, &[3, 4]);
        let inst = IsdInstance::new(inst.h().clone(), inst.syndrome().clone(), 0).unwrap();
        let out = prange(&inst, 100, &mut Drbg::new(&Seed::from(0)), false).unwrap();
        assert!(matches!(out, IsdOutcome::NotFound { .. }));
    }

    #[test]
    fn recovers_planted_error() {
        let mut found = 0;
        for seed in 0..50 {
            let mut rng = Drbg::new(&Seed::from(seed + 1000));
            let a = rng.below(16) as usize;
            let b = (a + 1 + rng.below(15) as usize) % 16;
            let inst = toy_instance(seed % 5, &[a, b]);
            if let IsdOutcome::Found { error, .. } = prange(&inst, 10_000, &mut rng, false).unwrap() {
                assert_eq!(error, BitVector::from_support(16, &[a, b]));
                found += 1;
            }
        }
        assert_eq!(found, 50);
    }

    #[test]
    fn refuses_large_lengths_without_override() {
        let h = BinaryMatrix::identity(70).hstack(&BinaryMatrix::zeros(70, 10)).unwrap();
        let inst = IsdInstance::new(h, BitVector::unit(70, 3), 2).unwrap();
        let mut rng = Drbg::new(&Seed::from(0));
        assert!(matches!(prange(&inst, 1, &mut rng, false), Err(Error::Parameter(_))));
        let out = prange(&inst, 1000, &mut rng, true).unwrap();
        assert_eq!(out.error(), Some(&BitVector::unit(80, 3)));
    }

    #[test]
    fn instance_validation() {
        let h = BinaryMatrix::zeros(4, 8);
        assert!(IsdInstance::new(h.clone(), BitVector::zeros(5), 1).is_err());
        assert!(IsdInstance::new(h, BitVector::zeros(4), 5).is_err());
    }

    #[test]
    fn analytic_probability() {
        assert!((prange_success_probability(16, 8, 2) - 28.0 / 120.0).abs() < 1e-12);
        assert_eq!(prange_success_probability(16, 8, 0), 1.0);
        assert_eq!(prange_success_probability(16, 14, 3), 0.0);
    }

    #[test]
    fn rank_report_on_generated_keys() {
        for seed in 0..5 {
            let params = CodeParams::new(16, 8, 2, 4).unwrap();
            let (pk, sk, _) = keygen(params, SeedPolicy::Dense, &mut Drbg::new(&Seed::from(seed))).unwrap();
            let rep = rank_report(&pk.expand(), &sk, 20, &mut Drbg::new(&Seed::from(1))).unwrap();
            assert_eq!(rep.rank_cyclic, 8);
            assert_eq!(rep.rank_prime, 8);
            assert!(rep.subadditive);
            assert!(rep.secondary_zero_block);
            assert!(rep.full_rank_sets <= 20);
        }
    }
}
