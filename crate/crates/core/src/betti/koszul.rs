//! lcm lattices and upper Koszul simplicial complexes.
//!
//! For a multidegree `b`, the upper Koszul complex `K^b(I)` consists of the
//! squarefree `τ ⊆ supp(b)` with `x^b / x^τ ∈ I`. It is the union of the
//! full simplices on `F_g = { v : g_v < b_v }` over generators `g | b`.
//! A vertex whose set of containing `F_g` is contained in another vertex's
//! is dominated; deleting it is a strong collapse and leaves the homotopy
//! type unchanged, which keeps slices small even after polarization.

use std::collections::{HashSet, VecDeque};

use super::linalg::{rank_gf2, rank_rational};
use crate::error::EngineError;
use crate::monomial::{Monomial, MonomialIdeal};

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Field {
    #[default]
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "GF2")]
    Gf2,
}

impl Field {
    pub fn tag(self) -> &'static str {
        match self {
            Field::Rationals => "Q",
            Field::Gf2 => "GF2",
        }
    }

    fn rank(self, rows: &[Vec<i64>]) -> usize {
        match self {
            Field::Rationals => rank_rational(rows),
            Field::Gf2 => rank_gf2(rows),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "Q" | "QQ" | "RATIONALS" => Ok(Field::Rationals),
            "GF2" | "GF(2)" | "F2" | "Z2" => Ok(Field::Gf2),
            other => Err(format!("unknown field `{other}` (expected Q or GF2)")),
        }
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Join-closure of the minimal generators under lcm.
#[derive(Clone, Debug)]
pub struct LcmLattice {
    elements: Vec<Monomial>,
}

impl LcmLattice {
    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub(crate) fn dense_lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn dense_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Dense lattice elements over `nvars` variables, in graded-lex order.
pub(crate) fn dense_lattice(gens: &[Vec<u32>], cap: usize) -> Result<Vec<Vec<u32>>, EngineError> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = VecDeque::new();
    for g in gens {
        if seen.insert(g.clone()) {
            queue.push_back(g.clone());
        }
    }
    if seen.len() > cap {
        return Err(EngineError::LatticeCap { cap });
    }
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let l = dense_lcm(&e, g);
            if !seen.contains(&l) {
                seen.insert(l.clone());
                if seen.len() > cap {
                    return Err(EngineError::LatticeCap { cap });
                }
                queue.push_back(l);
            }
        }
    }
    let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
    out.sort_by(|a, b| Monomial::from_dense(a).grlex_cmp(&Monomial::from_dense(b)));
    Ok(out)
}

pub fn lcm_lattice(ideal: &MonomialIdeal, cap: usize) -> Result<LcmLattice, EngineError> {
    if ideal.is_zero() {
        return Err(crate::error::AlgebraError::ZeroIdeal("lcm lattice").into());
    }
    let n = ideal.nvars();
    let gens: Vec<Vec<u32>> = ideal.generators().iter().map(|g| g.to_dense(n)).collect();
    let elements = dense_lattice(&gens, cap)?.iter().map(|e| Monomial::from_dense(e)).collect();
    Ok(LcmLattice { elements })
}

/// `K^b(I)` presented by its vertices and facets (bitmasks over the local
/// vertex list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplexSlice {
    pub multidegree: Monomial,
    /// Variable index of each local vertex.
    pub vertices: Vec<usize>,
    /// Maximal faces; `[0]` is the complex holding only the empty face and
    /// `[]` the void complex.
    pub facets: Vec<u64>,
    /// Number of dominated vertices removed.
    pub pruned: usize,
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Builds `K^b(I)` from dense data. With `prune`, dominated vertices are
/// removed first.
pub(crate) fn dense_slice(
    gens: &[Vec<u32>],
    b: &[u32],
    prune: bool,
) -> Result<(Vec<usize>, Vec<u64>, usize), EngineError> {
    let below: Vec<&Vec<u32>> = gens.iter().filter(|g| dense_divides(g, b)).collect();
    let support: Vec<usize> = (0..b.len()).filter(|&v| b[v] > 0).collect();
    let words = below.len().div_ceil(64).max(1);
    // pattern[v] = set of generators g | b with g_v < b_v
    let patterns: Vec<Vec<u64>> = support
        .iter()
        .map(|&v| {
            let mut p = vec![0u64; words];
            for (k, g) in below.iter().enumerate() {
                if g[v] < b[v] {
                    p[k / 64] |= 1 << (k % 64);
                }
            }
            p
        })
        .collect();
    let live = |k: usize| patterns[k].iter().any(|&w| w != 0);
    let kept: Vec<usize> = (0..support.len())
        .filter(|&k| live(k))
        .filter(|&k| {
            !prune
                || !(0..support.len()).any(|u| {
                    u != k && is_subset(&patterns[k], &patterns[u]) && (patterns[k] != patterns[u] || u < k)
                })
        })
        .collect();
    if kept.len() > 63 {
        return Err(EngineError::Unsupported("upper Koszul slice has more than 63 vertices after pruning"));
    }
    let pruned = (0..support.len()).filter(|&k| live(k)).count() - kept.len();
    let mut facets: Vec<u64> = below
        .iter()
        .map(|g| {
            kept.iter()
                .enumerate()
                .filter(|(_, &k)| g[support[k]] < b[support[k]])
                .fold(0u64, |acc, (local, _)| acc | 1 << local)
        })
        .collect();
    facets.sort_unstable();
    facets.dedup();
    let maximal: Vec<u64> = facets
        .iter()
        .copied()
        .filter(|&f| !facets.iter().any(|&h| h != f && f & !h == 0))
        .collect();
    let vertices = kept.iter().map(|&k| support[k]).collect();
    Ok((vertices, maximal, pruned))
}

pub fn upper_koszul_slice(ideal: &MonomialIdeal, b: &Monomial, prune: bool) -> Result<SimplicialComplexSlice, EngineError> {
    let n = ideal.nvars();
    if b.max_var().is_some_and(|v| v >= n) {
        return Err(crate::error::AlgebraError::VariableSetMismatch.into());
    }
    let gens: Vec<Vec<u32>> = ideal.generators().iter().map(|g| g.to_dense(n)).collect();
    let (vertices, facets, pruned) = dense_slice(&gens, &b.to_dense(n), prune)?;
    Ok(SimplicialComplexSlice { multidegree: b.clone(), vertices, facets, pruned })
}

/// All faces grouped by dimension (`result[d + 1]` holds the `d`-faces),
/// each group in sorted-vertex lexicographic order.
pub fn faces_by_dimension(facets: &[u64], cap: usize) -> Result<Vec<Vec<u64>>, usize> {
    let total: usize = facets.iter().map(|f| 1usize << f.count_ones()).sum();
    if total > cap {
        return Err(total);
    }
    let mut all: HashSet<u64> = HashSet::new();
    for &f in facets {
        // enumerate submasks of f
        let mut s = f;
        loop {
            all.insert(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & f;
        }
    }
    let top = all.iter().map(|m| m.count_ones() as usize).max();
    let mut out = vec![Vec::new(); top.map_or(0, |t| t + 1)];
    for m in all {
        out[m.count_ones() as usize].push(m);
    }
    for group in &mut out {
        group.sort_by_key(|&m| bits(m));
    }
    Ok(out)
}

fn bits(mask: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}

/// Reduced homology ranks, `ranks[d + 1] = rank H̃_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedHomology {
    pub ranks: Vec<usize>,
    /// `dim C_d` for the same indexing.
    pub chain_dims: Vec<usize>,
}

impl ReducedHomology {
    /// `rank H̃_d` for `d >= -1`.
    pub fn rank(&self, d: i64) -> usize {
        usize::try_from(d + 1).ok().and_then(|k| self.ranks.get(k)).copied().unwrap_or(0)
    }

    pub fn euler_consistent(&self) -> bool {
        let alt = |v: &[usize]| -> i64 {
            v.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { -(x as i64) } else { x as i64 }).sum()
        };
        alt(&self.chain_dims) == alt(&self.ranks)
    }
}

/// Boundary matrix `∂_d : C_d -> C_{d-1}` with rows indexed by `lower`.
fn boundary(upper: &[u64], lower: &[u64]) -> Vec<Vec<i64>> {
    let pos: std::collections::HashMap<u64, usize> = lower.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let mut rows = vec![vec![0i64; upper.len()]; lower.len()];
    for (col, &face) in upper.iter().enumerate() {
        for (k, v) in bits(face).into_iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            rows[pos[&(face & !(1u64 << v))]][col] = sign;
        }
    }
    rows
}

/// Reduced homology of the complex generated by `facets`.
pub fn homology_of_facets(facets: &[u64], field: Field, face_cap: usize) -> Result<ReducedHomology, usize> {
    let faces = faces_by_dimension(facets, face_cap)?;
    let chain_dims: Vec<usize> = faces.iter().map(Vec::len).collect();
    // ranks of ∂ from C_{k-1} (index k) down to index k-1; ∂ out of index 0 is zero
    let mut boundary_rank = vec![0usize; faces.len() + 1];
    for k in 1..faces.len() {
        boundary_rank[k] = field.rank(&boundary(&faces[k], &faces[k - 1]));
    }
    let ranks = (0..faces.len())
        .map(|k| chain_dims[k] - boundary_rank[k] - boundary_rank[k + 1])
        .collect();
    Ok(ReducedHomology { ranks, chain_dims })
}

pub fn homology_ranks(slice: &SimplicialComplexSlice, field: Field, face_cap: usize) -> Result<ReducedHomology, EngineError> {
    let h = homology_of_facets(&slice.facets, field, face_cap).map_err(|faces| EngineError::FaceCap {
        multidegree: format!("{:?}", slice.multidegree),
        faces,
        cap: face_cap,
    })?;
    if !h.euler_consistent() {
        return Err(EngineError::EulerMismatch(format!("{:?}", slice.multidegree)));
    }
    Ok(h)
}
