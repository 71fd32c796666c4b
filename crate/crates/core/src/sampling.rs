//! Exactly uniform random diagrams.
//!
//! Every diagram has exactly `n` preimages under [`theta`], so a uniform
//! `(n-1)`-subset of `1..=nk` pushed through it is a uniform diagram. Subsets are
//! drawn by unranking a uniform integer below `binomial(nk, n-1)`, so no
//! rejection or shuffling is involved.

use std::collections::HashMap;

use num_bigint::{BigUint, RandBigInt};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::counting::binomial;
use crate::diagrams::{enumerate_diagrams, theta, Diagram, Label, SubsetCode};
use crate::error::{Error, Result};

/// Name of the pseudorandom stream, recorded next to sampled output.
/// `ChaCha20Rng::seed_from_u64(seed)` from `rand_chacha` 0.3, consumed
/// through `num-bigint`'s `gen_biguint_below`.
pub const ALGORITHM: &str = "chacha20";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub n: u32,
    pub k: u32,
    pub seed: u64,
}

/// A single deterministic stream of uniform diagrams.
pub struct Sampler {
    cfg: SamplerConfig,
    rng: ChaCha20Rng,
    subsets: BigUint,
}

impl Sampler {
    pub fn new(cfg: SamplerConfig) -> Result<Self> {
        if cfg.n < 1 || cfg.k < 2 {
            return Err(Error::Domain(format!(
                "need n >= 1 and k >= 2, got n={}, k={}",
                cfg.n, cfg.k
            )));
        }
        let nk = cfg.n as u64 * cfg.k as u64;
        Ok(Sampler {
            cfg,
            rng: ChaCha20Rng::seed_from_u64(cfg.seed),
            subsets: binomial(nk, cfg.n as u64 - 1).into_inner(),
        })
    }

    pub fn config(&self) -> SamplerConfig {
        self.cfg
    }

    /// A uniform `(n-1)`-subset of `1..=nk`.
    pub fn sample_code(&mut self) -> SubsetCode {
        let rank = self.rng.gen_biguint_below(&self.subsets);
        let nk = self.cfg.n * self.cfg.k;
        unrank_subset(nk, self.cfg.n - 1, &rank).expect("rank below the subset count")
    }

    pub fn sample(&mut self) -> Diagram {
        let code = self.sample_code();
        theta(&code, self.cfg.n, self.cfg.k).expect("theta is total on (n-1)-subsets")
    }
}

impl Iterator for Sampler {
    type Item = Diagram;

    fn next(&mut self) -> Option<Diagram> {
        Some(self.sample())
    }
}

/// One uniform diagram for the given configuration.
pub fn sample_diagram(cfg: SamplerConfig) -> Result<Diagram> {
    Ok(Sampler::new(cfg)?.sample())
}

/// The `rank`-th `size`-subset of `1..=universe` in lexicographic order.
pub fn unrank_subset(universe: u32, size: u32, rank: &BigUint) -> Result<SubsetCode> {
    let total = binomial(universe as u64, size as u64).into_inner();
    if rank >= &total {
        return Err(Error::Domain(format!(
            "rank {rank} is not below binomial({universe}, {size}) = {total}"
        )));
    }
    let mut rank = rank.clone();
    let mut members = Vec::with_capacity(size as usize);
    if size == 0 {
        return SubsetCode::new(universe, members);
    }
    // `block` = binomial(m, r): subsets whose next member is `next`, with
    // m = universe - next labels above it and r members still to place.
    let mut next: Label = 1;
    let mut m = (universe - 1) as u64;
    let mut r = (size - 1) as u64;
    let mut block = binomial(m, r).into_inner();
    loop {
        while rank >= block {
            rank -= &block;
            block = block * (m - r) / m;
            m -= 1;
            next += 1;
        }
        members.push(next);
        if r == 0 {
            break;
        }
        block = block * r / m;
        m -= 1;
        r -= 1;
        next += 1;
    }
    SubsetCode::new(universe, members)
}

/// Lexicographic rank of a subset among those of the same size.
pub fn rank_subset(code: &SubsetCode) -> BigUint {
    let universe = code.nk();
    let size = code.len() as u32;
    let mut rank = BigUint::zero();
    let mut next: Label = 1;
    for (slot, &m) in code.members().iter().enumerate() {
        let rest = (size - slot as u32 - 1) as u64;
        while next < m {
            rank += binomial((universe - next) as u64, rest).into_inner();
            next += 1;
        }
        next = m + 1;
    }
    rank
}

/// Tally of sampled diagrams against the uniform distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformityReport {
    pub classes: Vec<Diagram>,
    pub counts: Vec<u64>,
    pub trials: u64,
    pub chi_square: f64,
    pub dof: u64,
}

/// Draws `trials` samples and computes Pearson's chi-square statistic over
/// all `catalan_nk(n, k)` classes.
pub fn uniformity_report(cfg: SamplerConfig, trials: u64, cap: u64) -> Result<UniformityReport> {
    if trials == 0 {
        return Err(Error::Domain("trials must be positive".into()));
    }
    let classes = enumerate_diagrams(cfg.n, cfg.k, cap)?;
    let index: HashMap<&Diagram, usize> = classes.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let mut counts = vec![0u64; classes.len()];
    let mut sampler = Sampler::new(cfg)?;
    for _ in 0..trials {
        let d = sampler.sample();
        let i = index
            .get(&d)
            .ok_or_else(|| Error::InternalInvariantBroken(format!("sample {d} is not an enumerated diagram")))?;
        counts[*i] += 1;
    }
    let expected = trials as f64 / classes.len() as f64;
    let chi_square = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let dof = classes.len() as u64 - 1;
    Ok(UniformityReport {
        classes,
        counts,
        trials,
        chi_square,
        dof,
    })
}

impl UniformityReport {
    pub fn expected_per_class(&self) -> f64 {
        self.trials as f64 / self.classes.len() as f64
    }

    pub fn max_count(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    #[test]
    fn single_star_always() {
        for k in 2..6 {
            for seed in 0..5 {
                let d = sample_diagram(SamplerConfig { n: 1, k, seed }).unwrap();
                assert_eq!(d.to_star_lists(), vec![(1..=k).collect::<Vec<_>>()]);
            }
        }
    }

    #[test]
    fn determinism() {
        let cfg = SamplerConfig { n: 7, k: 3, seed: 42 };
        let a: Vec<Diagram> = Sampler::new(cfg).unwrap().take(50).collect();
        let b: Vec<Diagram> = Sampler::new(cfg).unwrap().take(50).collect();
        assert_eq!(a, b);
        let c: Vec<Diagram> = Sampler::new(SamplerConfig { seed: 43, ..cfg })
            .unwrap()
            .take(50)
            .collect();
        assert_ne!(a, c);
    }

    #[test]
    fn unrank_matches_lexicographic_listing() {
        for (universe, size) in [(6, 0), (6, 1), (6, 3), (9, 4), (10, 10)] {
            for (r, combo) in (1..=universe).combinations(size as usize).enumerate() {
                let rank = BigUint::from(r);
                let code = unrank_subset(universe, size, &rank).unwrap();
                assert_eq!(code.members(), combo.as_slice());
                assert_eq!(rank_subset(&code), rank);
            }
        }
        assert!(unrank_subset(6, 2, &BigUint::from(15u32)).is_err());
    }

    #[test]
    fn uniformity_single_class() {
        let r = uniformity_report(SamplerConfig { n: 1, k: 4, seed: 1 }, 100, 10).unwrap();
        assert_eq!(r.counts, vec![100]);
        assert_eq!(r.chi_square, 0.0);
        assert_eq!(r.dof, 0);
    }

    #[test]
    fn uniformity_two_three() {
        let r = uniformity_report(SamplerConfig { n: 2, k: 3, seed: 7 }, 30_000, 10).unwrap();
        assert_eq!(r.classes.len(), 3);
        assert_eq!(r.total(), 30_000);
        // chi2(2) 0.999 quantile
        assert!(r.chi_square < 13.816, "{r:?}");
        assert!(r.counts.iter().all(|&c| (9_000..11_000).contains(&c)));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Sampler::new(SamplerConfig { n: 0, k: 3, seed: 0 }).is_err());
        assert!(uniformity_report(SamplerConfig { n: 2, k: 3, seed: 0 }, 0, 10).is_err());
        assert!(matches!(
            uniformity_report(SamplerConfig { n: 8, k: 3, seed: 0 }, 10, 100),
            Err(Error::CapExceeded { .. })
        ));
    }

    proptest! {
        #[test]
        fn rank_unrank_round_trip(universe in 1u32..40, pick in any::<u64>(), size_pick in any::<u32>()) {
            let size = size_pick % (universe + 1);
            let total = binomial(universe as u64, size as u64).into_inner();
            let rank = BigUint::from(pick) % &total;
            let code = unrank_subset(universe, size, &rank).unwrap();
            prop_assert_eq!(code.len() as u32, size);
            prop_assert_eq!(rank_subset(&code), rank);
        }

        #[test]
        fn samples_are_valid(n in 1u32..30, k in 2u32..6, seed in any::<u64>()) {
            let d = sample_diagram(SamplerConfig { n, k, seed }).unwrap();
            prop_assert!(crate::diagrams::validate_diagram(&d).is_ok());
        }
    }
}
