//! Edge ideals of weighted digraphs, and the ordered generators of powers of
//! an oriented cycle's edge ideal together with their colon ideals.
//!
//! Cycle positions are 1-based throughout the public API: `L_p` is the edge
//! generator `x_{p-1} x_p^{w_p}` with `x_0 = x_n`. Internally positions are
//! stored 0-based (`p - 1`).

use std::collections::HashMap;
use std::sync::Arc;

use crate::digraph::{FamilyKind, WeightedDigraph, Witness};
use crate::error::{ConstructionError, GraphError};
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};

/// Variables named after the graph's vertices, in vertex order.
pub fn graph_variables(graph: &WeightedDigraph) -> Arc<VariableSet> {
    Arc::new(VariableSet::new(graph.vertices().iter().map(|v| v.name.clone())).expect("vertex names are validated on load"))
}

/// `x_tail * x_head^{w(head)}` for each directed edge.
pub fn edge_generator(graph: &WeightedDigraph, tail: usize, head: usize) -> Monomial {
    Monomial::from_pairs([(tail, 1), (head, graph.weight(head))])
}

/// `I(D)`: one generator per directed edge.
pub fn edge_ideal(graph: &WeightedDigraph) -> Result<MonomialIdeal, GraphError> {
    if graph.edges().is_empty() {
        return Err(GraphError::NoEdges);
    }
    let gens = graph.edges().iter().map(|&(t, h)| edge_generator(graph, t, h));
    Ok(MonomialIdeal::new(graph_variables(graph), gens)?)
}

/// One entry `L_k^(t) = Π L_p^{a_p}` of the ordered basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisEntry {
    pub vector: Vec<u32>,
    pub monomial: Monomial,
}

/// The generators of `I(C_n)^t` in descending lex order of their edge
/// exponent vectors.
#[derive(Clone, Debug)]
pub struct OrderedPowerBasis {
    t: u32,
    entries: Vec<BasisEntry>,
    lookup: HashMap<Monomial, usize>,
}

impl OrderedPowerBasis {
    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn entries(&self) -> &[BasisEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// 1-based, as `L_k^(t)`.
    pub fn entry(&self, k: usize) -> &BasisEntry {
        &self.entries[k - 1]
    }

    /// 1-based position of `m`, if it is a basis element.
    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.lookup.get(m).map(|k| k + 1)
    }
}

/// Weak compositions of `t` into `n` parts, in descending lex order.
pub fn weak_compositions(t: u32, n: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, n: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=rest).rev() {
            prefix.push(a);
            rec(rest - a, n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(t, n, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// An oriented cycle with its edge generators `L_1 .. L_n`.
#[derive(Clone, Debug)]
pub struct CycleIdeal {
    graph: WeightedDigraph,
    /// Vertex at each cycle position.
    order: Vec<usize>,
    ideal: MonomialIdeal,
    edge_gens: Vec<Monomial>,
}

impl CycleIdeal {
    pub fn new(graph: &WeightedDigraph) -> Result<Self, ConstructionError> {
        let tag = graph.classify()?;
        let order = match (tag.kind, tag.witness) {
            (FamilyKind::OrientedCycle, Witness::Cycle { order }) => order,
            (kind, _) => {
                return Err(GraphError::FamilyMismatch { expected: "OrientedCycle", actual: kind.to_string() }.into())
            }
        };
        let n = order.len();
        let edge_gens = (0..n)
            .map(|p| edge_generator(graph, order[(p + n - 1) % n], order[p]))
            .collect();
        Ok(Self { graph: graph.clone(), order, ideal: edge_ideal(graph)?, edge_gens })
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn graph(&self) -> &WeightedDigraph {
        &self.graph
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        self.ideal.vars()
    }

    /// Weight at 1-based cycle position `p`.
    pub fn weight(&self, p: usize) -> u32 {
        self.graph.weight(self.order[p - 1])
    }

    /// `L_p` for any integer `p`, read mod n (so `L_{n+1} = L_1`).
    pub fn edge(&self, p: i64) -> &Monomial {
        let n = self.n() as i64;
        &self.edge_gens[((p - 1).rem_euclid(n)) as usize]
    }

    fn edge_index(&self, p: i64) -> usize {
        ((p - 1).rem_euclid(self.n() as i64)) as usize
    }

    pub fn require_weights(&self) -> Result<(), ConstructionError> {
        for p in 1..=self.n() {
            let w = self.weight(p);
            if w < 2 {
                return Err(ConstructionError::WeightTooSmall { vertex: self.graph.name(self.order[p - 1]).to_string(), weight: w });
            }
        }
        Ok(())
    }

    /// `Π L_p^{a_p}`.
    pub fn compose(&self, vector: &[u32]) -> Monomial {
        let pairs = vector
            .iter()
            .zip(&self.edge_gens)
            .flat_map(|(&a, g)| g.iter().map(move |(v, e)| (v, e * a)));
        Monomial::from_pairs(pairs)
    }

    pub fn ordered_power_basis(&self, t: u32) -> Result<OrderedPowerBasis, ConstructionError> {
        if t == 0 {
            return Err(ConstructionError::ZeroPower);
        }
        self.require_weights()?;
        let entries: Vec<BasisEntry> = weak_compositions(t, self.n())
            .into_iter()
            .map(|vector| BasisEntry { monomial: self.compose(&vector), vector })
            .collect();
        let lookup = entries.iter().enumerate().map(|(k, e)| (e.monomial.clone(), k)).collect();
        Ok(OrderedPowerBasis { t, entries, lookup })
    }

    /// The unique exponent vector `a` with `m = Π L_p^{a_p}` and `Σ a_p = t`.
    pub fn decompose(&self, basis: &OrderedPowerBasis, m: &Monomial) -> Result<Vec<u32>, ConstructionError> {
        basis
            .position(m)
            .map(|k| basis.entry(k).vector.clone())
            .ok_or(ConstructionError::NotAGenerator { t: basis.t })
    }

    /// `M1 |^edge M2`: `M2 = M1 * M3` with `M3` a generator of the
    /// complementary power, read off the decomposition vectors.
    pub fn edge_divides(
        &self,
        m1: &Monomial,
        k: u32,
        m2: &Monomial,
        t: u32,
    ) -> Result<bool, ConstructionError> {
        if k == 0 || k >= t {
            return Err(ConstructionError::PowerOrder { k, t });
        }
        let a = self.decompose(&self.ordered_power_basis(k)?, m1)?;
        let b = self.decompose(&self.ordered_power_basis(t)?, m2)?;
        Ok(a.iter().zip(&b).all(|(x, y)| x <= y))
    }

    /// `K = (L_1^(t))` and `J` = the remaining generators.
    pub fn betti_split_power(&self, t: u32) -> Result<(MonomialIdeal, MonomialIdeal), ConstructionError> {
        let basis = self.ordered_power_basis(t)?;
        let vars = Arc::clone(self.vars());
        let k = MonomialIdeal::new(Arc::clone(&vars), [basis.entry(1).monomial.clone()])?;
        let j = MonomialIdeal::new(vars, basis.entries()[1..].iter().map(|e| e.monomial.clone()))?;
        Ok((j, k))
    }

    /// `(L_a : L_b)` as an ideal.
    fn edge_colon(&self, a: i64, b: i64) -> Result<MonomialIdeal, ConstructionError> {
        Ok(MonomialIdeal::new(Arc::clone(self.vars()), [self.edge(a).colon(self.edge(b))])?)
    }

    /// `Π_{s=0}^{q} L_{n+1-2s}` as an edge exponent vector.
    fn odd_chain_vector(&self, q: usize) -> Vec<u32> {
        let n = self.n() as i64;
        let mut v = vec![0; self.n()];
        for s in 0..=q as i64 {
            v[self.edge_index(n + 1 - 2 * s)] += 1;
        }
        v
    }

    fn chain_product(&self, q: usize, offset: i64) -> Monomial {
        let n = self.n() as i64;
        let mut v = vec![0; self.n()];
        for s in 0..=q as i64 {
            v[self.edge_index(n + offset - 2 * s)] += 1;
        }
        self.compose(&v)
    }

    /// The colon structure `(J_i : L_i^(t)) = K_i + Q_i` for `1 <= i < r`.
    pub fn build_colon_structure(&self, basis: &OrderedPowerBasis, i: usize) -> Result<ColonStructure, ConstructionError> {
        let r = basis.len();
        if i == 0 || i >= r {
            return Err(ConstructionError::IndexOutOfRange { index: i, max: r.saturating_sub(1) });
        }
        let n = self.n();
        let t = basis.t();
        let vector = basis.entry(i).vector.clone();
        let support: Vec<usize> = (1..=n).filter(|&p| vector[p - 1] > 0).collect();
        let i1 = support[0];
        let p_i = if *support.last().unwrap() == n { support.len() - 1 } else { support.len() };

        let vars = Arc::clone(self.vars());
        let tail = MonomialIdeal::new(Arc::clone(&vars), (i1 + 1..=n).map(|p| self.edge(p as i64).clone()))?;
        let mut k_ideal = tail.colon_by_monomial(self.edge(i1 as i64))?;
        for &ij in &support[..p_i] {
            k_ideal = k_ideal.sum(&self.edge_colon(ij as i64 + 1, ij as i64)?)?;
        }

        let ell = (t as usize).min(n / 2) - 1;
        let (q_i, q_ideal) = if i1 == 1 {
            let q_i = (0..=ell)
                .take_while(|&q| self.odd_chain_vector(q).iter().zip(&vector).all(|(a, b)| a <= b))
                .last()
                .expect("q = 0 holds whenever L_1 occurs");
            let mut q_ideal = MonomialIdeal::zero(Arc::clone(&vars));
            for j in 0..=q_i {
                let num = self.chain_product(j, 0);
                let den = self.chain_product(j, 1);
                q_ideal = q_ideal.sum(&MonomialIdeal::new(Arc::clone(&vars), [num.colon(&den)])?)?;
            }
            (Some(q_i), q_ideal)
        } else {
            (None, MonomialIdeal::zero(Arc::clone(&vars)))
        };

        let j_ideal = MonomialIdeal::new(vars, basis.entries()[i..].iter().map(|e| e.monomial.clone()))?;
        Ok(ColonStructure { index: i, vector, support, p_i, q_i, k_ideal, q_ideal, j_ideal })
    }

    /// Looks for `k > i` with `(L_j^(t) : L_i^(t)) ⊆ (L_k^(t) : L_i^(t))`
    /// where the latter has one of the two catalogued shapes.
    pub fn colon_form_witness(&self, basis: &OrderedPowerBasis, i: usize, j: usize) -> Option<(usize, ColonForm)> {
        let li = &basis.entry(i).monomial;
        let colon_of = |k: usize| basis.entry(k).monomial.colon(li);
        let target = colon_of(j);
        let n = self.n() as i64;
        let ell = (basis.t() as usize).min(self.n() / 2) - 1;
        let a = &basis.entry(i).vector;
        for k in i + 1..=basis.len() {
            let gen = colon_of(k);
            if !gen.divides(&target) {
                continue;
            }
            let b = &basis.entry(k).vector;
            for l1 in 1..=self.n() {
                for l2 in l1 + 1..=self.n() {
                    if a[l1 - 1] > 0 && b[l2 - 1] > 0 && self.edge(l2 as i64).colon(self.edge(l1 as i64)) == gen {
                        return Some((k, ColonForm::SingleEdge { l1, l2 }));
                    }
                }
            }
            for q in 0..=ell {
                let ok = (0..=q as i64).all(|s| {
                    b[self.edge_index(n - 2 * s)] > 0 && a[self.edge_index(n + 1 - 2 * s)] > 0
                });
                if ok && self.chain_product(q, 0).colon(&self.chain_product(q, 1)) == gen {
                    return Some((k, ColonForm::AlternatingChain { q }));
                }
            }
        }
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColonForm {
    /// `(L_{l2} : L_{l1})` with `l1 < l2`.
    SingleEdge { l1: usize, l2: usize },
    /// `(Π_{s<=q} L_{n-2s} : Π_{s<=q} L_{n+1-2s})`.
    AlternatingChain { q: usize },
}

#[derive(Clone, Debug)]
pub struct ColonStructure {
    pub index: usize,
    /// Edge exponent vector of `L_i^(t)`.
    pub vector: Vec<u32>,
    /// Positions `i_1 < ... < i_k` with nonzero exponent.
    pub support: Vec<usize>,
    pub p_i: usize,
    /// `None` when `i_1 >= 2`.
    pub q_i: Option<usize>,
    pub k_ideal: MonomialIdeal,
    pub q_ideal: MonomialIdeal,
    /// `(L_{i+1}^(t), ..., L_r^(t))`.
    pub j_ideal: MonomialIdeal,
}

impl ColonStructure {
    pub fn i1(&self) -> usize {
        self.support[0]
    }

    pub fn predicted(&self) -> MonomialIdeal {
        self.k_ideal.sum(&self.q_ideal).expect("same variables")
    }

    /// `(J_i : L_i^(t))` computed directly.
    pub fn brute_force(&self, basis: &OrderedPowerBasis) -> MonomialIdeal {
        self.j_ideal
            .colon_by_monomial(&basis.entry(self.index).monomial)
            .expect("same variables")
    }
}
