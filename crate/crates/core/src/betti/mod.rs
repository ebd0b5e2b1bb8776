//! Exact multigraded Betti numbers and regularity of monomial ideals.
//!
//! `β_{i,b}(I) = rank H̃_{i-1}(K^b(I))`, evaluated at every element `b` of
//! the lcm lattice (Betti numbers vanish elsewhere). Slices are independent
//! and evaluated in parallel; results are merged in lattice order.

mod koszul;
pub mod linalg;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

pub use koszul::{
    faces_by_dimension, homology_of_facets, homology_ranks, lcm_lattice, upper_koszul_slice, Field, LcmLattice,
    ReducedHomology, SimplicialComplexSlice,
};

use crate::error::{AlgebraError, EngineError};
use crate::monomial::{Monomial, MonomialIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub field: Field,
    pub lattice_cap: usize,
    /// Upper bound on the faces enumerated for one slice.
    pub face_cap: usize,
    /// Remove dominated vertices before computing homology.
    pub prune: bool,
    pub parallel: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self { field: Field::Rationals, lattice_cap: 200_000, face_cap: 1 << 22, prune: true, parallel: true }
    }
}

impl EngineConfig {
    pub fn with_field(field: Field) -> Self {
        Self { field, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultigradedEntry {
    pub i: usize,
    pub multidegree: Monomial,
    pub rank: usize,
}

/// Graded Betti numbers `β_{i,j}` with the multigraded refinement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub field: Field,
    graded: BTreeMap<(usize, u64), usize>,
    multigraded: Vec<MultigradedEntry>,
}

#[derive(Serialize)]
struct TableJson<'a> {
    field: &'static str,
    entries: Vec<EntryJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    multigraded: Option<Vec<MultiJson<'a>>>,
}

#[derive(Serialize)]
struct EntryJson {
    i: usize,
    j: u64,
    rank: usize,
}

#[derive(Serialize)]
struct MultiJson<'a> {
    i: usize,
    multidegree: &'a str,
    rank: usize,
}

impl BettiTable {
    pub fn from_graded(field: Field, graded: BTreeMap<(usize, u64), usize>) -> Self {
        Self { field, graded: graded.into_iter().filter(|&(_, r)| r > 0).collect(), multigraded: Vec::new() }
    }

    pub fn get(&self, i: usize, j: u64) -> usize {
        self.graded.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero `((i, j), β_{i,j})` in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, u64), usize)> + '_ {
        self.graded.iter().map(|(&k, &v)| (k, v))
    }

    pub fn graded(&self) -> &BTreeMap<(usize, u64), usize> {
        &self.graded
    }

    pub fn multigraded(&self) -> &[MultigradedEntry] {
        &self.multigraded
    }

    /// Entrywise equality of the graded tables.
    pub fn same_graded(&self, other: &BettiTable) -> bool {
        self.graded == other.graded
    }

    /// `max { j - i : β_{i,j} ≠ 0 }` with the witnessing `(i, j)` of
    /// smallest `i`.
    pub fn regularity(&self) -> Option<Regularity> {
        let mut best: Option<Regularity> = None;
        for &(i, j) in self.graded.keys() {
            let value = j as i64 - i as i64;
            if best.is_none_or(|b| value > b.value) {
                best = Some(Regularity { value, i, j });
            }
        }
        best
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.graded.keys().map(|&(i, _)| i).max()
    }

    /// A table has a linear resolution when all entries sit on one
    /// diagonal `j - i = d`.
    pub fn is_linear(&self) -> bool {
        let mut diagonals = self.graded.keys().map(|&(i, j)| j as i64 - i as i64);
        match diagonals.next() {
            Some(d) => diagonals.all(|e| e == d),
            None => true,
        }
    }

    /// `{"field":"Q","entries":[{"i":..,"j":..,"rank":..}]}`; passing the
    /// ideal adds the multigraded entries.
    pub fn to_json(&self, ideal: Option<&MonomialIdeal>) -> String {
        let texts: Vec<String> = match ideal {
            Some(i) => self.multigraded.iter().map(|e| e.multidegree.display(i.vars()).to_string()).collect(),
            None => Vec::new(),
        };
        let multi = ideal.map(|_| {
            self.multigraded
                .iter()
                .zip(&texts)
                .map(|(e, t)| MultiJson { i: e.i, multidegree: t, rank: e.rank })
                .collect()
        });
        let doc = TableJson {
            field: self.field.tag(),
            entries: self.graded.iter().map(|(&(i, j), &rank)| EntryJson { i, j, rank }).collect(),
            multigraded: multi,
        };
        serde_json::to_string(&doc).expect("table serializes")
    }

    /// Aligned grid with rows `j - i` and columns `i`.
    pub fn grid(&self) -> String {
        let Some(pd) = self.projective_dimension() else {
            return "(zero table)\n".to_string();
        };
        let diag: Vec<i64> = self.graded.keys().map(|&(i, j)| j as i64 - i as i64).collect();
        let (lo, hi) = (*diag.iter().min().unwrap(), *diag.iter().max().unwrap());
        let cell = |i: usize, d: i64| -> String {
            let j = d + i as i64;
            match u64::try_from(j).ok().map(|j| self.get(i, j)) {
                Some(r) if r > 0 => r.to_string(),
                _ => "-".to_string(),
            }
        };
        let width = (0..=pd)
            .flat_map(|i| (lo..=hi).map(move |d| (i, d)))
            .map(|(i, d)| cell(i, d).len())
            .chain(std::iter::once(pd.to_string().len()))
            .max()
            .unwrap_or(1);
        let label = hi.to_string().len().max(lo.to_string().len()).max(5);
        let mut out = format!("{:>label$}", "i:");
        for i in 0..=pd {
            out.push_str(&format!(" {i:>width$}"));
        }
        out.push('\n');
        for d in lo..=hi {
            out.push_str(&format!("{:>label$}", format!("{d}:")));
            for i in 0..=pd {
                out.push_str(&format!(" {:>width$}", cell(i, d)));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.grid())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Regularity {
    pub value: i64,
    pub i: usize,
    pub j: u64,
}

impl Regularity {
    /// `reg(S/I) = reg(I) - 1`.
    pub fn of_quotient(&self) -> i64 {
        self.value - 1
    }
}

/// Betti table of a nonzero monomial ideal.
pub fn betti_table(ideal: &MonomialIdeal, config: &EngineConfig) -> Result<BettiTable, EngineError> {
    if ideal.is_zero() {
        return Err(AlgebraError::ZeroIdeal("Betti table").into());
    }
    // work on the support only; other variables never occur in the lattice
    let support = ideal.support();
    let gens: Vec<Vec<u32>> = ideal
        .generators()
        .iter()
        .map(|g| support.iter().map(|&v| g.exponent(v)).collect())
        .collect();
    let lattice = koszul::dense_lattice(&gens, config.lattice_cap)?;
    let slice = |b: &Vec<u32>| -> Result<Vec<(usize, usize)>, EngineError> {
        let (_, facets, _) = koszul::dense_slice(&gens, b, config.prune)?;
        let h = homology_of_facets(&facets, config.field, config.face_cap).map_err(|faces| EngineError::FaceCap {
            multidegree: format!("{b:?}"),
            faces,
            cap: config.face_cap,
        })?;
        if !h.euler_consistent() {
            return Err(EngineError::EulerMismatch(format!("{b:?}")));
        }
        // β_{i,b} = rank H̃_{i-1}, stored at ranks[i]
        Ok(h.ranks.iter().enumerate().filter(|(_, &r)| r > 0).map(|(i, &r)| (i, r)).collect())
    };
    let per_slice: Vec<Vec<(usize, usize)>> = if config.parallel {
        lattice.par_iter().map(slice).collect::<Result<_, _>>()?
    } else {
        lattice.iter().map(slice).collect::<Result<_, _>>()?
    };

    let mut graded = BTreeMap::new();
    let mut multigraded = Vec::new();
    for (b, ranks) in lattice.iter().zip(per_slice) {
        let degree: u64 = b.iter().map(|&e| e as u64).sum();
        let mono = Monomial::from_pairs(support.iter().zip(b).map(|(&v, &e)| (v, e)));
        for (i, r) in ranks {
            *graded.entry((i, degree)).or_insert(0) += r;
            multigraded.push(MultigradedEntry { i, multidegree: mono.clone(), rank: r });
        }
    }
    multigraded.sort_by(|a, b| a.i.cmp(&b.i).then_with(|| a.multidegree.grlex_cmp(&b.multidegree)));
    Ok(BettiTable { field: config.field, graded, multigraded })
}

pub fn regularity(ideal: &MonomialIdeal, config: &EngineConfig) -> Result<Regularity, EngineError> {
    let table = betti_table(ideal, config)?;
    Ok(table.regularity().expect("a nonzero ideal has a generator"))
}

/// `|supp(I)| - |G(I)| + 1` when every generator of the squarefree ideal
/// has a variable dividing no other generator; `None` otherwise.
pub fn private_variable_regularity(ideal: &MonomialIdeal) -> Result<Option<i64>, EngineError> {
    if !ideal.is_squarefree() {
        return Err(EngineError::Unsupported("private-variable formula needs a squarefree ideal"));
    }
    if ideal.is_zero() {
        return Err(AlgebraError::ZeroIdeal("private-variable formula").into());
    }
    let gens = ideal.generators();
    let mut uses = vec![0usize; ideal.nvars()];
    for g in gens {
        for v in g.support() {
            uses[v] += 1;
        }
    }
    let every_private = gens.iter().all(|g| g.support().any(|v| uses[v] == 1));
    Ok(every_private.then(|| ideal.support().len() as i64 - gens.len() as i64 + 1))
}
