//! Monomials and monomial ideals over a fixed, named set of variables.
//!
//! A [`Monomial`] is a sparse exponent vector and carries no variable set of
//! its own; a [`MonomialIdeal`] owns a shared [`VariableSet`] and keeps its
//! generators minimal and in graded-lex order at all times.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;

/// Default upper bound on the total degree of any constructed monomial.
pub const DEFAULT_DEGREE_CAP: u64 = 1_000_000;

/// Ordered list of distinct variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VariableSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, AlgebraError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(AlgebraError::InvalidVariableName(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateVariable(name.clone()));
            }
        }
        Ok(Self { names, index })
    }

    /// `prefix1 .. prefixN`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("generated names are valid")
    }

    /// Builds a variable set from arbitrary names, sorted so that a trailing
    /// number compares numerically (`x2 < x10`). Duplicates are dropped.
    pub fn natural<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Self, AlgebraError> {
        let mut names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        names.sort_by_key(|a| natural_key(a));
        names.dedup();
        Self::new(names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

fn natural_key(name: &str) -> (String, u64, String) {
    let digits = name.chars().rev().take_while(|c| c.is_ascii_digit()).count();
    let (head, tail) = name.split_at(name.len() - digits);
    (head.to_string(), tail.parse().unwrap_or(0), name.to_string())
}

/// Names must match `[A-Za-z][A-Za-z0-9_]*`.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    }
}

/// A monomial `x^a`, stored as `(variable, exponent)` pairs sorted by
/// variable with strictly positive exponents. The empty vector is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(var: usize) -> Self {
        Self { exps: vec![(var as u32, 1)] }
    }

    /// From a dense exponent vector indexed by variable.
    pub fn from_dense(exps: &[u32]) -> Self {
        Self {
            exps: exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (v as u32, e))
                .collect(),
        }
    }

    /// From `(variable, exponent)` pairs in any order; repeated variables add.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut exps: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(v, e)| (v as u32, e))
            .collect();
        exps.sort_unstable();
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        Self { exps: merged }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        match self.exps.binary_search_by_key(&(var as u32), |&(v, _)| v) {
            Ok(pos) => self.exps[pos].1,
            Err(_) => 0,
        }
    }

    /// `(variable, exponent)` pairs in variable order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().map(|&(v, _)| v as usize)
    }

    /// Largest variable index present, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|&(v, _)| v as usize)
    }

    pub fn to_dense(&self, nvars: usize) -> Vec<u32> {
        let mut out = vec![0; nvars];
        for &(v, e) in &self.exps {
            out[v as usize] = e;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e == 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        let mut theirs = other.exps.iter().peekable();
        'outer: for &(v, e) in &self.exps {
            while let Some(&&(w, f)) = theirs.peek() {
                match w.cmp(&v) {
                    Ordering::Less => {
                        theirs.next();
                    }
                    Ordering::Equal => {
                        if f < e {
                            return false;
                        }
                        theirs.next();
                        continue 'outer;
                    }
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    fn merge(&self, other: &Monomial, mut f: impl FnMut(u32, u32) -> u32) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (v, e) = match (a.get(i), b.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        i += 1;
                        (va, f(ea, 0))
                    }
                    Ordering::Greater => {
                        j += 1;
                        (vb, f(0, eb))
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (va, f(ea, eb))
                    }
                },
                (Some(&(va, ea)), None) => {
                    i += 1;
                    (va, f(ea, 0))
                }
                (None, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, f(0, eb))
                }
                (None, None) => unreachable!(),
            };
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial { exps: out }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge(other, u32::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.merge(other, u32::min)
    }

    /// Product, refusing results whose degree exceeds `cap`.
    pub fn checked_mul(&self, other: &Monomial, cap: u64) -> Result<Monomial, AlgebraError> {
        let degree = self.degree() + other.degree();
        if degree > cap {
            return Err(AlgebraError::DegreeCap { degree, cap });
        }
        let mut overflow = false;
        let out = self.merge(other, |a, b| {
            a.checked_add(b).unwrap_or_else(|| {
                overflow = true;
                0
            })
        });
        if overflow {
            return Err(AlgebraError::DegreeCap { degree, cap });
        }
        Ok(out)
    }

    /// `self / other`, when `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| self.merge(other, |a, b| a - b))
    }

    /// `self / gcd(self, other)`: the generator of `(self) : other`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a.saturating_sub(b))
    }

    /// Graded-lex order: lower degree first, then larger exponent on the
    /// earliest variable first.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| lex_desc(&self.exps, &other.exps))
    }

    /// Canonical text form such as `x1^2*x3`, or `1` for the unit.
    pub fn display<'a>(&'a self, vars: &'a VariableSet) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, vars }
    }

    /// Parses `x1^2*x3`, `x1^2 x3` or `1`, using names from `vars`.
    pub fn parse(text: &str, vars: &VariableSet) -> Result<Monomial, AlgebraError> {
        let mut pairs = Vec::new();
        for (name, exp) in parse_factors(text)? {
            let var = vars
                .position(&name)
                .ok_or_else(|| AlgebraError::UnknownVariable(name.clone()))?;
            pairs.push((var, exp));
        }
        Ok(Monomial::from_pairs(pairs))
    }
}

fn lex_desc(a: &[(u32, u32)], b: &[(u32, u32)]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        if x.0 != y.0 {
            // the one holding the earlier variable is larger
            return x.0.cmp(&y.0);
        }
        if x.1 != y.1 {
            return y.1.cmp(&x.1);
        }
    }
    b.len().cmp(&a.len())
}

/// Splits a monomial string into `(name, exponent)` factors.
fn parse_factors(text: &str) -> Result<Vec<(String, u32)>, AlgebraError> {
    let text = text.trim();
    if text == "1" {
        return Ok(Vec::new());
    }
    if text.is_empty() {
        return Err(AlgebraError::Parse("empty monomial".into()));
    }
    let mut out = Vec::new();
    for factor in text.split(|c: char| c == '*' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| AlgebraError::Parse(format!("bad exponent in `{factor}`")))?;
                (n.trim(), e)
            }
            None => (factor, 1),
        };
        if name == "1" {
            continue;
        }
        if !is_valid_name(name) {
            return Err(AlgebraError::Parse(format!("bad variable name `{name}`")));
        }
        out.push((name.to_string(), exp));
    }
    Ok(out)
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    vars: &'a VariableSet,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.mono.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(self.vars.name(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Provenance of a polarized variable `<base>_<slot>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolarSlot {
    pub base: usize,
    pub slot: u32,
}

/// Maps polarized variable indices back to `(base variable, slot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableMap {
    pub slots: Vec<PolarSlot>,
}

impl VariableMap {
    /// Index of `<base>_<slot>` in the polarized variable set.
    pub fn position(&self, base: usize, slot: u32) -> Option<usize> {
        self.slots.iter().position(|s| s.base == base && s.slot == slot)
    }
}

/// A monomial ideal with a minimal, deduplicated generating set kept in
/// graded-lex order. The zero ideal has no generators.
#[derive(Clone, Debug)]
pub struct MonomialIdeal {
    vars: Arc<VariableSet>,
    gens: Vec<Monomial>,
    degree_cap: u64,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.gens == other.gens
    }
}

impl Eq for MonomialIdeal {}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, dropping redundant generators.
    pub fn new(vars: Arc<VariableSet>, gens: impl IntoIterator<Item = Monomial>) -> Result<Self, AlgebraError> {
        Self::with_cap(vars, gens, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(
        vars: Arc<VariableSet>,
        gens: impl IntoIterator<Item = Monomial>,
        degree_cap: u64,
    ) -> Result<Self, AlgebraError> {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        for g in &gens {
            if let Some(v) = g.max_var() {
                if v >= vars.len() {
                    return Err(AlgebraError::VariableSetMismatch);
                }
            }
            let degree = g.degree();
            if degree > degree_cap {
                return Err(AlgebraError::DegreeCap { degree, cap: degree_cap });
            }
        }
        Ok(Self { vars, gens: minimalize(gens), degree_cap })
    }

    pub fn zero(vars: Arc<VariableSet>) -> Self {
        Self { vars, gens: Vec::new(), degree_cap: DEFAULT_DEGREE_CAP }
    }

    /// The unit ideal `(1)`.
    pub fn unit(vars: Arc<VariableSet>) -> Self {
        Self { vars, gens: vec![Monomial::one()], degree_cap: DEFAULT_DEGREE_CAP }
    }

    pub fn principal(vars: Arc<VariableSet>, m: Monomial) -> Result<Self, AlgebraError> {
        Self::new(vars, [m])
    }

    fn derived(&self, gens: Vec<Monomial>) -> Self {
        Self { vars: Arc::clone(&self.vars), gens: minimalize(gens), degree_cap: self.degree_cap }
    }

    pub fn set_degree_cap(&mut self, cap: u64) {
        self.degree_cap = cap;
    }

    pub fn degree_cap(&self) -> u64 {
        self.degree_cap
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Minimal generators in canonical order.
    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    fn check_same(&self, other: &MonomialIdeal) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(AlgebraError::VariableSetMismatch)
        }
    }

    fn check_monomial(&self, m: &Monomial) -> Result<(), AlgebraError> {
        match m.max_var() {
            Some(v) if v >= self.vars.len() => Err(AlgebraError::VariableSetMismatch),
            _ => Ok(()),
        }
    }

    /// `(I : m)`, generated by `g / gcd(g, m)`.
    pub fn colon_by_monomial(&self, m: &Monomial) -> Result<MonomialIdeal, AlgebraError> {
        self.check_monomial(m)?;
        Ok(self.derived(self.gens.iter().map(|g| g.colon(m)).collect()))
    }

    /// `(I : J)`, the intersection of `(I : g)` over the generators of `J`.
    pub fn colon_by_ideal(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, AlgebraError> {
        self.check_same(other)?;
        let mut gens = other.gens.iter();
        let first = gens.next().ok_or(AlgebraError::ZeroIdeal("colon by the zero ideal"))?;
        let mut acc = self.colon_by_monomial(first)?;
        for g in gens {
            acc = acc.intersect(&self.colon_by_monomial(g)?)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, AlgebraError> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.lcm(h));
            }
        }
        Ok(self.derived(gens))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, AlgebraError> {
        self.check_same(other)?;
        Ok(self.derived(self.gens.iter().chain(other.gens.iter()).cloned().collect()))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, AlgebraError> {
        self.check_same(other)?;
        let cap = self.degree_cap.min(other.degree_cap);
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.checked_mul(h, cap)?);
            }
        }
        Ok(self.derived(gens))
    }

    /// `m · I`.
    pub fn multiply_by(&self, m: &Monomial) -> Result<MonomialIdeal, AlgebraError> {
        self.check_monomial(m)?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.checked_mul(m, self.degree_cap))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.derived(gens))
    }

    pub fn power(&self, t: u32) -> Result<MonomialIdeal, AlgebraError> {
        if t == 0 {
            return Err(AlgebraError::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..t {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Union of the generator supports, as sorted variable indices.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.vars.len()];
        for g in &self.gens {
            for v in g.support() {
                seen[v] = true;
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(v, _)| v).collect()
    }

    /// Largest exponent of each variable across the generators.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.vars.len()];
        for g in &self.gens {
            for (v, e) in g.iter() {
                out[v] = out[v].max(e);
            }
        }
        out
    }

    /// Replaces each `x^a` by `x_1 x_2 ... x_a`, over variables named
    /// `<base>_<k>`. Bases that never occur get no polarized variable.
    pub fn polarize(&self) -> Result<(MonomialIdeal, VariableMap), AlgebraError> {
        let maxes = self.max_exponents();
        let mut names = Vec::new();
        let mut slots = Vec::new();
        let mut first_slot = vec![0usize; self.vars.len()];
        for (base, &m) in maxes.iter().enumerate() {
            first_slot[base] = slots.len();
            for k in 1..=m {
                names.push(format!("{}_{}", self.vars.name(base), k));
                slots.push(PolarSlot { base, slot: k });
            }
        }
        let vars = Arc::new(VariableSet::new(names)?);
        let first_slot = &first_slot;
        let gens = self.gens.iter().map(|g| {
            Monomial::from_pairs(
                g.iter()
                    .flat_map(move |(v, e)| (0..e as usize).map(move |k| (first_slot[v] + k, 1))),
            )
        });
        let ideal = MonomialIdeal::with_cap(vars, gens, self.degree_cap)?;
        Ok((ideal, VariableMap { slots }))
    }

    /// Keeps the generators whose support lies inside `vars`.
    pub fn restrict_to(&self, vars: &[usize]) -> MonomialIdeal {
        let mut allowed = vec![false; self.vars.len()];
        for &v in vars {
            allowed[v] = true;
        }
        self.derived(
            self.gens
                .iter()
                .filter(|g| g.support().all(|v| allowed[v]))
                .cloned()
                .collect(),
        )
    }

    /// Moves the ideal into a larger variable set that contains every
    /// variable name of the current one.
    pub fn embed(&self, target: Arc<VariableSet>) -> Result<MonomialIdeal, AlgebraError> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.position(n).ok_or_else(|| AlgebraError::UnknownVariable(n.clone())))
            .collect::<Result<_, _>>()?;
        let gens = self
            .gens
            .iter()
            .map(|g| Monomial::from_pairs(g.iter().map(|(v, e)| (map[v], e))));
        MonomialIdeal::with_cap(target, gens, self.degree_cap)
    }

    /// Parses `(g1, g2, ...)` against a known variable set. `()` and `(0)`
    /// give the zero ideal.
    pub fn parse(text: &str, vars: Arc<VariableSet>) -> Result<MonomialIdeal, AlgebraError> {
        let parts = split_ideal(text)?;
        let gens = parts
            .iter()
            .map(|p| Monomial::parse(p, &vars))
            .collect::<Result<Vec<_>, _>>()?;
        MonomialIdeal::new(vars, gens)
    }

    /// Parses an ideal and infers its variable set from the names used.
    pub fn parse_infer(text: &str) -> Result<MonomialIdeal, AlgebraError> {
        let parts = split_ideal(text)?;
        let mut names = Vec::new();
        for p in &parts {
            for (name, _) in parse_factors(p)? {
                names.push(name);
            }
        }
        let vars = Arc::new(VariableSet::natural(names)?);
        Self::parse(text, vars)
    }
}

fn split_ideal(text: &str) -> Result<Vec<String>, AlgebraError> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| AlgebraError::Parse("ideal must be enclosed in parentheses".into()))?
        .trim();
    if inner.is_empty() || inner == "0" {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(|s| s.trim().to_string()).collect())
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g.display(&self.vars))?;
        }
        f.write_str(")")
    }
}

/// Drops duplicates and non-minimal elements, returning graded-lex order.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(Monomial::grlex_cmp);
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        // candidates arrive by nondecreasing degree, so only kept ones can divide g
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}
