//! Seeded random monomial algebras for property testing.

use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bardzell::chains;
use crate::field::{FieldSpec, PrimeField, DEFAULT_PRIME};
use crate::presentation::{enumerate_basis, Arrow, Presentation, Quiver, Relation};

#[derive(Clone, Copy, Debug)]
pub struct RandomMonomial {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub max_dim: usize,
    /// Cap on the number of associated paths in each degree up to `chain_degree`.
    pub max_chains: usize,
    pub chain_degree: usize,
    pub field: FieldSpec,
}

impl Default for RandomMonomial {
    fn default() -> Self {
        RandomMonomial {
            max_vertices: 4,
            max_arrows: 5,
            max_dim: 12,
            max_chains: 4,
            chain_degree: 8,
            field: FieldSpec::PrimeField(DEFAULT_PRIME),
        }
    }
}

impl RandomMonomial {
    /// Draws presentations until one is finite-dimensional within the limits.
    pub fn sample(&self, seed: u64) -> Presentation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            if let Some(p) = self.attempt(&mut rng) {
                return p;
            }
        }
    }

    /// `count` presentations from consecutive seeds starting at `seed`.
    pub fn batch(&self, seed: u64, count: usize) -> Vec<Presentation> {
        (0..count as u64).map(|i| self.sample(seed.wrapping_add(i))).collect()
    }

    fn attempt<R: Rng>(&self, rng: &mut R) -> Option<Presentation> {
        let nv = rng.random_range(1..=self.max_vertices);
        let na = rng.random_range(1..=self.max_arrows);
        let mut quiver = Quiver { vertices: (1..=nv).map(|v| v.to_string()).collect(), arrows: Vec::new() };
        for i in 0..na {
            let source = rng.random_range(0..nv);
            let target = rng.random_range(0..nv);
            quiver.arrows.push(Arrow { name: format!("a{i}"), source, target });
        }
        let mut relations: Vec<Relation> = Vec::new();
        for _ in 0..rng.random_range(1..=4) {
            let len = rng.random_range(2..=3);
            let mut walk = vec![rng.random_range(0..na)];
            while walk.len() < len {
                let here = quiver.arrows[*walk.last().expect("nonempty")].target;
                let next: Vec<usize> = (0..na).filter(|&a| quiver.arrows[a].source == here).collect();
                if next.is_empty() {
                    break;
                }
                walk.push(next[rng.random_range(0..next.len())]);
            }
            if walk.len() < 2 {
                continue;
            }
            walk.reverse();
            let path = quiver.path(walk).expect("walk is composable");
            if relations.iter().all(|r| r.terms[0].1 != path) {
                relations.push(Relation { terms: vec![(BigRational::one(), path)] });
            }
        }
        if relations.is_empty() {
            return None;
        }
        let words: Vec<Vec<usize>> =
            relations.iter().map(|r| r.terms[0].1.arrows.iter().rev().copied().collect()).collect();
        if !monomial_dim_at_most(&quiver, &words, self.max_dim) {
            return None;
        }
        let p = Presentation { field: self.field, quiver, relations };
        let field = match self.field {
            FieldSpec::PrimeField(q) => PrimeField::new(q).ok()?,
            FieldSpec::Rationals => PrimeField::new(DEFAULT_PRIME).ok()?,
        };
        let basis = enumerate_basis(&p, &field, self.max_dim).ok()?;
        if basis.dim() > self.max_dim {
            return None;
        }
        let levels = chains(&p, self.chain_degree).ok()?;
        if levels.iter().any(|l| l.len() > self.max_chains) {
            return None;
        }
        Some(p)
    }
}

/// Counts paths avoiding every relation (as traversal words), giving up past `max`.
fn monomial_dim_at_most(q: &Quiver, relations: &[Vec<usize>], max: usize) -> bool {
    let mut count = q.vertices.len();
    let mut frontier: Vec<Vec<usize>> = (0..q.arrows.len()).map(|a| vec![a]).collect();
    while !frontier.is_empty() {
        count += frontier.len();
        if count > max {
            return false;
        }
        let mut next = Vec::new();
        for w in &frontier {
            let here = q.arrows[*w.last().expect("nonempty")].target;
            for a in (0..q.arrows.len()).filter(|&a| q.arrows[a].source == here) {
                let mut v = w.clone();
                v.push(a);
                if !relations.iter().any(|r| v.ends_with(r)) {
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_within_limits() {
        let g = RandomMonomial::default();
        let a = g.batch(7, 5);
        assert_eq!(a, g.batch(7, 5));
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        for p in &a {
            assert!(p.is_monomial());
            assert!(p.quiver.vertices.len() <= 4 && p.quiver.arrows.len() <= 5);
            assert!(enumerate_basis(p, &f, 12).unwrap().dim() <= 12);
        }
    }
}
