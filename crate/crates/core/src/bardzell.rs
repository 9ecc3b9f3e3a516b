//! Associated paths (Anick chains) of monomial algebras.
//!
//! The minimal bimodule resolution of a monomial algebra `kQ/I` has one
//! summand `Λ e_{t(w)} ⊗ e_{s(w)} Λ` in degree `n` for every associated path
//! `w ∈ AP(n)`: vertices in degree 0, arrows in degree 1, the minimal
//! relations in degree 2, and in higher degrees the chains obtained by
//! repeatedly overlapping a relation with the tail of the previous chain.
//! Words here are in traversal order (first arrow first).

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::presentation::Presentation;

/// An associated path: its traversal word and where its tail starts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chain {
    pub word: Vec<usize>,
    pub tail: usize,
}

/// Minimal monomial relations as traversal words.
pub fn minimal_relations(p: &Presentation) -> Result<Vec<Vec<usize>>> {
    if !p.is_monomial() {
        return Err(Error::NonMonomial);
    }
    let mut words: Vec<Vec<usize>> = p
        .relations
        .iter()
        .map(|r| r.terms[0].1.arrows.iter().rev().copied().collect())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    words.sort_by_key(Vec::len);
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for w in words {
        if !kept.iter().any(|r| contains(&w, r)) {
            kept.push(w);
        }
    }
    Ok(kept)
}

fn contains(hay: &[usize], needle: &[usize]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

fn ends_with_relation(word: &[usize], rels: &[Vec<usize>]) -> bool {
    rels.iter().any(|r| word.ends_with(r))
}

/// Chains of degree `2..=max_degree` (index 0 holds degree 2).
pub fn chains(p: &Presentation, max_degree: usize) -> Result<Vec<Vec<Chain>>> {
    let rels = minimal_relations(p)?;
    let mut out: Vec<Vec<Chain>> = Vec::new();
    if max_degree < 2 {
        return Ok(out);
    }
    let mut current: Vec<Chain> = rels.iter().map(|r| Chain { word: r.clone(), tail: 1 }).collect();
    current.sort();
    out.push(current.clone());
    for _ in 3..=max_degree {
        let mut next = BTreeSet::new();
        for c in &current {
            let s = &c.word[c.tail..];
            for r in &rels {
                for i in 0..s.len() {
                    let overlap = s.len() - i;
                    if overlap >= r.len() || s[i..] != r[..overlap] {
                        continue;
                    }
                    let t = &r[overlap..];
                    let mut probe = s.to_vec();
                    let minimal = t[..t.len() - 1].iter().all(|&x| {
                        probe.push(x);
                        !ends_with_relation(&probe, &rels)
                    });
                    if minimal {
                        let mut word = c.word.clone();
                        word.extend_from_slice(t);
                        next.insert(Chain { tail: c.word.len(), word });
                    }
                }
            }
        }
        current = next.into_iter().collect();
        out.push(current.clone());
    }
    Ok(out)
}

/// `(source, target)` vertex pairs of the associated paths in each degree
/// `0..=max_degree`, sorted.
pub fn bardzell_multiplicities(p: &Presentation, max_degree: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    let levels = chains(p, max_degree)?;
    let q = &p.quiver;
    let mut out = vec![(0..q.vertices.len()).map(|v| (v, v)).collect::<Vec<_>>()];
    if max_degree >= 1 {
        let mut arrows: Vec<_> = q.arrows.iter().map(|a| (a.source, a.target)).collect();
        arrows.sort();
        out.push(arrows);
    }
    for level in levels {
        let mut pairs: Vec<_> = level
            .iter()
            .map(|c| (q.arrows[c.word[0]].source, q.arrows[*c.word.last().expect("nonempty")].target))
            .collect();
        pairs.sort();
        out.push(pairs);
    }
    Ok(out)
}

/// Reads the summands of a bimodule resolution term (idempotents of
/// `Λ^e`, indexed `u * count + v` for `e_u ⊗ e_v`) as `(source, target)`
/// pairs: the summand `Λ e_u ⊗ e_v Λ` belongs to a path from `v` to `u`.
pub fn bimodule_endpoint_pairs(summands: &[usize], vertex_count: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<_> = summands.iter().map(|&k| (k % vertex_count, k / vertex_count)).collect();
    pairs.sort();
    pairs
}
