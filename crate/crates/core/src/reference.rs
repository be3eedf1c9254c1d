//! Naive reference computations used for differential testing. These take
//! no shortcuts: they scan the full product space of rank bounds and filter
//! by pairwise dominance, independently of the chain decomposition used by
//! the production enumerator.

use crate::algebra::BoundQuiverAlgebra;
use crate::components::is_valid_rank_sequence;
use crate::dimvec::DimensionVector;

/// Every valid rank sequence for (A, d), by brute-force product scan.
pub fn valid_rank_sequences(algebra: &BoundQuiverAlgebra, d: &DimensionVector) -> Vec<Vec<u32>> {
    let q = algebra.quiver();
    let caps: Vec<u32> = q
        .arrows()
        .iter()
        .map(|a| d.get(a.tail).min(d.get(a.head)))
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0u32; caps.len()];
    loop {
        if is_valid_rank_sequence(algebra, d, &cur) {
            out.push(cur.clone());
        }
        let mut pos = 0;
        loop {
            if pos == caps.len() {
                return out;
            }
            cur[pos] += 1;
            if cur[pos] <= caps[pos] {
                break;
            }
            cur[pos] = 0;
            pos += 1;
        }
    }
}

/// Maximal valid rank sequences, by comparing every candidate against every
/// other one.
pub fn maximal_rank_sequences_naive(
    algebra: &BoundQuiverAlgebra,
    d: &DimensionVector,
) -> Vec<Vec<u32>> {
    let all = valid_rank_sequences(algebra, d);
    let dominates = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x >= y);
    let mut out: Vec<Vec<u32>> = all
        .iter()
        .filter(|cand| {
            all.iter()
                .all(|other| other.as_slice() == cand.as_slice() || !dominates(other, cand))
        })
        .cloned()
        .collect();
    out.sort();
    out
}

/// Maximal valid rank sequences via the single-step test: no coordinate can
/// be bumped by one. Equivalent to dominance maximality because the valid
/// region is downward closed (any r' > r valid forces some r + e_a valid),
/// and cheap enough for full grids; `maximal_rank_sequences_naive` validates
/// the equivalence on smaller sweeps.
pub fn maximal_rank_sequences_by_steps(
    algebra: &BoundQuiverAlgebra,
    d: &DimensionVector,
) -> Vec<Vec<u32>> {
    let all: std::collections::HashSet<Vec<u32>> =
        valid_rank_sequences(algebra, d).into_iter().collect();
    let mut out: Vec<Vec<u32>> = all
        .iter()
        .filter(|cand| {
            (0..cand.len()).all(|a| {
                let mut bumped = (*cand).clone();
                bumped[a] += 1;
                !all.contains(&bumped)
            })
        })
        .cloned()
        .collect();
    out.sort();
    out
}
