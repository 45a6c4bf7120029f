use kal1_core::binmat::BitVector;
use kal1_core::drbg::{Drbg, Seed};
use kal1_core::goppa::CodeParams;
use kal1_core::isd::{prange, rank_report, IsdInstance, IsdOutcome};
use kal1_core::kal1::{keygen, SeedPolicy};

fn toy() -> CodeParams {
    CodeParams::new(16, 8, 2, 4).unwrap()
}

#[test]
fn planted_errors_recovered_across_seeds() {
    let mut recovered = 0;
    for seed in 0..200u64 {
        let mut rng = Drbg::new(&Seed::from(seed));
        let (_, _, npk) = keygen(toy(), SeedPolicy::Dense, &mut rng).unwrap();
        let a = rng.below(16) as usize;
        let b = (a + 1 + rng.below(15) as usize) % 16;
        let e = BitVector::from_support(16, &[a, b]);
        let inst = IsdInstance::new(npk.h_prime_t().transpose(), npk.syndrome(&e).unwrap(), 2).unwrap();
        match prange(&inst, 10_000, &mut rng, false).unwrap() {
            IsdOutcome::Found { error, .. } => {
                assert_eq!(error, e, "seed {seed}");
                recovered += 1;
            }
            IsdOutcome::NotFound { .. } => {}
        }
    }
    assert!(recovered >= 199, "{recovered}/200");
}

#[test]
fn rank_report_golden() {
    let (pk, sk, _) = keygen(toy(), SeedPolicy::Dense, &mut Drbg::new(&Seed::from(7))).unwrap();
    let report = rank_report(&pk.expand(), &sk, 100, &mut Drbg::new(&Seed::from(1))).unwrap();
    assert_eq!(report.rank_cyclic, 8);
    assert!(report.subadditive);
    assert_eq!(report.to_string(), include_str!("fixtures/rank_report_toy.txt"));
}
