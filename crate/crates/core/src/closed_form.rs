//! Closed-form regularity of powers of edge ideals for oriented cycles,
//! rooted forests and oriented unicyclic graphs:
//!
//! `reg(I(D)^t) = Σ w(x) - |E(D)| + 1 + (t - 1)(w + 1)`, `w = max w(x)`.
//!
//! Inadmissible graphs still get the predicted value, flagged.

use serde::Serialize;

use crate::constructions::CycleIdeal;
use crate::digraph::{FamilyKind, Shape, Theorem, WeightedDigraph};
use crate::error::{FormulaError, GraphError};

pub const MAX_POWER: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaInputs {
    pub weight_sum: u64,
    pub edges: usize,
    pub max_weight: u32,
    pub t: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaResult {
    /// Set only when every hypothesis holds.
    pub value: Option<i64>,
    pub predicted: i64,
    pub theorem: Theorem,
    pub family: FamilyKind,
    pub inputs: FormulaInputs,
    pub admissible: bool,
    pub violations: Vec<String>,
}

fn predicted(inputs: &FormulaInputs) -> i64 {
    inputs.weight_sum as i64 - inputs.edges as i64 + 1 + (inputs.t as i64 - 1) * (inputs.max_weight as i64 + 1)
}

fn evaluate(graph: &WeightedDigraph, t: u32, theorem: Theorem) -> Result<FormulaResult, FormulaError> {
    if t == 0 || t > MAX_POWER {
        return Err(FormulaError::PowerOutOfRange(t));
    }
    if let Some(&v) = graph.isolated_vertices().first() {
        return Err(GraphError::IsolatedVertex(graph.name(v).to_string()).into());
    }
    let report = graph.check_hypotheses(theorem)?;
    let inputs = FormulaInputs { weight_sum: graph.weight_sum(), edges: graph.edges().len(), max_weight: graph.max_weight(), t };
    let value = predicted(&inputs);
    let admissible = report.admissible();
    Ok(FormulaResult {
        value: admissible.then_some(value),
        predicted: value,
        theorem,
        family: report.family,
        inputs,
        admissible,
        violations: report.violations.iter().map(ToString::to_string).collect(),
    })
}

pub fn formula_cycle(graph: &WeightedDigraph, t: u32) -> Result<FormulaResult, FormulaError> {
    evaluate(graph, t, Theorem::Cycle)
}

/// Also accepts a bare oriented cycle (a unicyclic graph with no trees).
pub fn formula_unicyclic(graph: &WeightedDigraph, t: u32) -> Result<FormulaResult, FormulaError> {
    evaluate(graph, t, Theorem::Unicyclic)
}

pub fn formula_forest(graph: &WeightedDigraph, t: u32) -> Result<FormulaResult, FormulaError> {
    evaluate(graph, t, Theorem::Forest)
}

/// Picks the theorem from the underlying shape of the graph.
pub fn formula(graph: &WeightedDigraph, t: u32) -> Result<FormulaResult, FormulaError> {
    match graph.shape() {
        Shape::Cycle => formula_cycle(graph, t),
        Shape::Forest => formula_forest(graph, t),
        Shape::Unicyclic => formula_unicyclic(graph, t),
        Shape::Other => Err(GraphError::FamilyMismatch {
            expected: "OrientedCycle, RootedForest or Unicyclic",
            actual: graph.classify()?.kind.to_string(),
        }
        .into()),
    }
}

/// `reg(I) + (t - 1)(w + 1)` from the `t = 1` value.
pub fn formula_power_increment(graph: &WeightedDigraph, t: u32) -> Result<i64, FormulaError> {
    if t == 0 || t > MAX_POWER {
        return Err(FormulaError::PowerOutOfRange(t));
    }
    let base = formula(graph, 1)?;
    let reg1 = base.value.ok_or_else(|| FormulaError::Inadmissible(base.violations.clone()))?;
    Ok(reg1 + (t as i64 - 1) * (graph.max_weight() as i64 + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    Exact,
    UpperBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ColonPrediction {
    pub value: i64,
    pub kind: BoundKind,
    pub i1: usize,
    pub q_i: Option<usize>,
}

/// Predicted `reg((J_i : L_i^(t)))`: exact when `i_1 >= 2` or `q_i = 0`,
/// an upper bound when `i_1 = 1` and `q_i >= 1`.
pub fn colon_regularity_prediction(cycle: &CycleIdeal, t: u32, i: usize) -> Result<ColonPrediction, FormulaError> {
    let basis = cycle.ordered_power_basis(t)?;
    let s = cycle.build_colon_structure(&basis, i)?;
    let n = cycle.n();
    let i1 = s.i1();
    let tail = |from: usize| (from..=n).map(|p| cycle.weight(p) as i64).sum::<i64>();
    let (value, kind) = match s.q_i {
        None => (tail(i1 + 1) - (n - i1) as i64 + 1, BoundKind::Exact),
        Some(0) => (tail(2) - n as i64 + 1, BoundKind::Exact),
        Some(_) => (tail(2) - n as i64 + 1, BoundKind::UpperBound),
    };
    Ok(ColonPrediction { value, kind, i1, q_i: s.q_i })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::make_cycle;

    fn example_5_10() -> WeightedDigraph {
        WeightedDigraph::indexed(&[2, 2, 2, 2, 1, 1, 2], &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6)]).unwrap()
    }

    fn example_5_11() -> WeightedDigraph {
        WeightedDigraph::indexed(&[2, 2, 2, 2, 2, 1, 2], &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (5, 4), (5, 6)]).unwrap()
    }

    #[test]
    fn cycle_values() {
        let c3 = make_cycle(&[2, 2, 2]).unwrap();
        assert_eq!(formula_cycle(&c3, 1).unwrap().value, Some(4));
        assert_eq!(formula_cycle(&c3, 2).unwrap().value, Some(7));
        let c5 = make_cycle(&[1, 3, 3, 1, 3]).unwrap();
        let r = formula_cycle(&c5, 2).unwrap();
        assert_eq!((r.predicted, r.admissible, r.value), (11, false, None));
        assert_eq!(r.violations.len(), 2);
    }

    #[test]
    fn unicyclic_values() {
        let r = formula_unicyclic(&example_5_10(), 2).unwrap();
        assert_eq!((r.predicted, r.admissible), (9, false));
        let r = formula_unicyclic(&example_5_11(), 2).unwrap();
        assert_eq!((r.predicted, r.admissible, r.family), (10, false, FamilyKind::Other));
        assert!(r.violations.iter().any(|v| v.starts_with("orientation")));
        let ok = WeightedDigraph::indexed(&[2, 2, 2, 3], &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let r = formula_unicyclic(&ok, 1).unwrap();
        assert_eq!(r.value, Some(9 - 4 + 1));
    }

    #[test]
    fn forest_values() {
        let edge = WeightedDigraph::from_parts(&[("x", 1), ("y", 3)], &[(0, 1)]).unwrap();
        assert_eq!(formula_forest(&edge, 1).unwrap().value, Some(4));
        let path = WeightedDigraph::indexed(&[1, 2, 2], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(formula_forest(&path, 2).unwrap().value, Some(7));
        let star = WeightedDigraph::indexed(&[1, 2, 2, 2], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(formula_forest(&star, 1).unwrap().value, Some(5));
    }

    #[test]
    fn wrong_family_and_bad_power() {
        let c3 = make_cycle(&[2, 2, 2]).unwrap();
        assert!(matches!(formula_forest(&c3, 1), Err(FormulaError::Graph(GraphError::FamilyMismatch { .. }))));
        assert!(matches!(formula_cycle(&c3, 0), Err(FormulaError::PowerOutOfRange(0))));
        assert!(matches!(formula_cycle(&c3, 65), Err(FormulaError::PowerOutOfRange(65))));
        let with_isolated = WeightedDigraph::indexed(&[1, 2, 1], &[(0, 1)]).unwrap();
        assert!(matches!(formula_forest(&with_isolated, 1), Err(FormulaError::Graph(GraphError::IsolatedVertex(_)))));
    }

    #[test]
    fn increment_examples() {
        let c3 = make_cycle(&[2, 2, 2]).unwrap();
        assert_eq!(formula_power_increment(&c3, 3).unwrap(), 10);
        assert_eq!(formula_power_increment(&c3, 1).unwrap(), 4);
        let c5 = make_cycle(&[1, 3, 3, 1, 3]).unwrap();
        assert!(matches!(formula_power_increment(&c5, 2), Err(FormulaError::Inadmissible(_))));
    }

    #[test]
    fn increment_is_w_plus_one() {
        for w in [[2, 2, 2, 2], [2, 3, 2, 2], [3, 3, 3, 2]] {
            let g = WeightedDigraph::indexed(&[w[0], w[1], w[2], w[3], 2], &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
            for t in 1..=4 {
                let direct = formula_unicyclic(&g, t).unwrap().value.unwrap();
                assert_eq!(formula_power_increment(&g, t).unwrap(), direct);
                let next = formula_unicyclic(&g, t + 1).unwrap().value.unwrap();
                assert_eq!(next - direct, g.max_weight() as i64 + 1);
            }
        }
    }

    #[test]
    fn colon_prediction_cases() {
        let c = CycleIdeal::new(&make_cycle(&[2, 3, 2, 3, 2]).unwrap()).unwrap();
        let basis = c.ordered_power_basis(2).unwrap();
        // L_2 L_3 has i_1 = 2
        let i = basis.position(&c.compose(&[0, 1, 1, 0, 0])).unwrap();
        let p = colon_regularity_prediction(&c, 2, i).unwrap();
        assert_eq!(p.kind, BoundKind::Exact);
        assert_eq!(p.value, (2 + 3 + 2) - 3 + 1);
        // L_1 L_2: q_i = 0
        let i = basis.position(&c.compose(&[1, 1, 0, 0, 0])).unwrap();
        let p = colon_regularity_prediction(&c, 2, i).unwrap();
        assert_eq!((p.kind, p.q_i, p.value), (BoundKind::Exact, Some(0), 10 - 5 + 1));
        // L_1 L_4: q_i = 1
        let i = basis.position(&c.compose(&[1, 0, 0, 1, 0])).unwrap();
        let p = colon_regularity_prediction(&c, 2, i).unwrap();
        assert_eq!((p.kind, p.q_i), (BoundKind::UpperBound, Some(1)));
    }
}
