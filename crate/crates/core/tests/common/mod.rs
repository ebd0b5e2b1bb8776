//! Reference computations that share no code with the engine.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// A large prime; ranks of small 0/±1 matrices mod p agree with ranks over Q.
const P: i64 = 2_147_483_647;

fn pow_mod(mut a: i64, mut e: i64) -> i64 {
    let mut r = 1;
    a %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % P;
        }
        a = a * a % P;
        e >>= 1;
    }
    r
}

/// Rank mod `P` by plain Gaussian elimination.
pub fn rank_mod_p(mut m: Vec<Vec<i64>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c].rem_euclid(P) != 0) else { continue };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][c].rem_euclid(P), P - 2);
        for r in 0..m.len() {
            if r != rank {
                let f = m[r][c].rem_euclid(P) * inv % P;
                if f != 0 {
                    let pivot_row = m[rank].clone();
                    for (x, p) in m[r].iter_mut().zip(&pivot_row).skip(c) {
                        *x = (*x - f * p.rem_euclid(P)).rem_euclid(P);
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced homology ranks of a complex given by all its faces (including
/// the empty face when present); `out[d + 1]` is `H̃_d`.
pub fn reduced_homology(faces: &BTreeSet<Vec<usize>>) -> Vec<usize> {
    let top = faces.iter().map(Vec::len).max().unwrap_or(0);
    // by_size[s] = faces with s vertices, i.e. dimension s - 1
    let by_size: Vec<Vec<&Vec<usize>>> = (0..=top).map(|s| faces.iter().filter(|f| f.len() == s).collect()).collect();
    let boundary_rank = |s: usize| -> usize {
        // map from faces of size s to faces of size s - 1
        if s == 0 || s > top || by_size[s].is_empty() || by_size[s - 1].is_empty() {
            return 0;
        }
        let index: BTreeMap<&Vec<usize>, usize> = by_size[s - 1].iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let rows = by_size[s]
            .iter()
            .map(|f| {
                let mut row = vec![0i64; index.len()];
                for k in 0..f.len() {
                    let mut g = (*f).clone();
                    g.remove(k);
                    row[index[&g]] = if k % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        rank_mod_p(rows)
    };
    (0..=top).map(|s| by_size[s].len() - boundary_rank(s) - boundary_rank(s + 1)).collect()
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Graded Betti numbers `(i, j) -> β_{i,j}(I)` from the Taylor complex:
/// `β_{i,b}(I) = dim H̃_{i-1}` of the subsets of generators whose lcm
/// strictly divides `b`, for `b` ranging over lcms of generator subsets.
pub fn taylor_betti(gens: &[Vec<u32>]) -> BTreeMap<(usize, u64), usize> {
    let r = gens.len();
    assert!(r <= 12, "Taylor oracle is exponential in the generator count");
    let nvars = gens[0].len();
    let lcm_of = |mask: usize| -> Vec<u32> {
        (0..r).filter(|i| mask >> i & 1 == 1).fold(vec![0; nvars], |acc, i| lcm(&acc, &gens[i]))
    };
    let lcms: Vec<Vec<u32>> = (0..1usize << r).map(lcm_of).collect();
    let lattice: BTreeSet<&Vec<u32>> = lcms[1..].iter().collect();
    let mut out = BTreeMap::new();
    for b in lattice {
        let divides = |m: &Vec<u32>| m.iter().zip(b).all(|(x, y)| x <= y);
        let faces: BTreeSet<Vec<usize>> = (0..1usize << r)
            .filter(|&mask| divides(&lcms[mask]) && &lcms[mask] != b)
            .map(|mask| (0..r).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        let degree: u64 = b.iter().map(|&e| e as u64).sum();
        for (i, &rank) in reduced_homology(&faces).iter().enumerate() {
            if rank > 0 {
                *out.entry((i, degree)).or_insert(0) += rank;
            }
        }
    }
    out
}

/// `max (j - i)` over a graded table.
pub fn table_regularity(table: &BTreeMap<(usize, u64), usize>) -> i64 {
    table.keys().map(|&(i, j)| j as i64 - i as i64).max().expect("nonzero table")
}

/// `Σ w - |E| + 1 + (t - 1)(max w + 1)` evaluated directly.
pub fn closed_form(weights: &[u32], edges: usize, t: u32) -> i64 {
    let sum: i64 = weights.iter().map(|&w| w as i64).sum();
    let max = *weights.iter().max().unwrap() as i64;
    sum - edges as i64 + 1 + (t as i64 - 1) * (max + 1)
}
