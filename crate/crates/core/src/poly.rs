//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials carry their variable set (an interned list of names) and store
//! terms in a `BTreeMap` keyed by dense exponent vectors, so equal polynomials
//! always have identical representations. Variable counts stay small here (at
//! most a handful of algebra variables plus group parameters), so dense
//! exponent vectors are the right trade-off.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{format_rat, Rat};

/// An ordered, immutable set of variable names shared by all polynomials of
/// one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<VarSet> {
        Arc::new(VarSet {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    /// Variables `x1..xn` (or any prefix).
    pub fn numbered(prefix: &str, count: usize) -> Arc<VarSet> {
        VarSet::new((1..=count).map(|i| format!("{prefix}{i}")).collect())
    }

    /// Concatenation of several alphabets, e.g. torus + additive parameters.
    pub fn concat(parts: &[&VarSet]) -> Arc<VarSet> {
        let mut names = Vec::new();
        for p in parts {
            names.extend(p.names.iter().cloned());
        }
        VarSet::new(names)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Dense exponent vector; one entry per variable of the ambient set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, idx: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }

    /// Degree counting only the variables selected by `mask`.
    pub fn degree_in(&self, mask: &[bool]) -> u32 {
        self.exps
            .iter()
            .zip(mask)
            .filter(|(_, &m)| m)
            .map(|(e, _)| e)
            .sum()
    }

    pub fn format_with(&self, vars: &VarSet) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 1 {
                parts.push(vars.name(i).to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", vars.name(i), e));
            }
        }
        parts.join("*")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    DegRevLex,
    Lex,
}

/// A monomial total order: degrevlex or lex, with an explicit variable
/// precedence (`precedence[0]` is the most significant variable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    pub kind: OrderKind,
    pub precedence: Vec<usize>,
}

impl TermOrder {
    pub fn degrevlex(nvars: usize) -> TermOrder {
        TermOrder {
            kind: OrderKind::DegRevLex,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> TermOrder {
        TermOrder {
            kind: OrderKind::Lex,
            precedence: (0..nvars).collect(),
        }
    }

    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> TermOrder {
        TermOrder { kind, precedence }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.precedence {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // ties: scanning from the least significant variable, the
                // first differing exponent decides, smaller exponent wins
                for &v in self.precedence.iter().rev() {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Multivariate polynomial with exact rational coefficients. No zero
/// coefficients are ever stored, so structural equality is ring equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(vars: &Arc<VarSet>) -> Polynomial {
        Polynomial {
            vars: Arc::clone(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Arc<VarSet>) -> Polynomial {
        Polynomial::constant(vars, Rat::one())
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rat) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        Polynomial {
            vars: Arc::clone(vars),
            terms,
        }
    }

    pub fn var(vars: &Arc<VarSet>, idx: usize) -> Polynomial {
        Polynomial::term(vars, Monomial::var(vars.len(), idx), Rat::one())
    }

    pub fn term(vars: &Arc<VarSet>, m: Monomial, c: Rat) -> Polynomial {
        assert_eq!(m.nvars(), vars.len(), "monomial width != variable count");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            vars: Arc::clone(vars),
            terms,
        }
    }

    pub fn from_terms(
        vars: &Arc<VarSet>,
        terms: impl IntoIterator<Item = (Monomial, Rat)>,
    ) -> Polynomial {
        let mut p = Polynomial::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one(self.nvars()))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars());
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VarSetMismatch(format!(
                "{:?} vs {:?}",
                self.vars.names(),
                other.vars.names()
            )))
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: Arc::clone(&self.vars),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = Polynomial::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: Arc::clone(&self.vars),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: Arc::clone(&self.vars),
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.vars);
        for _ in 0..k {
            out = out.mul(self).expect("same varset");
        }
        out
    }

    /// Leading term under `ord`; errors on the zero polynomial.
    pub fn leading_term(&self, ord: &TermOrder) -> Result<(Monomial, Rat)> {
        let mut best: Option<&Monomial> = None;
        for m in self.terms.keys() {
            best = match best {
                None => Some(m),
                Some(b) => {
                    if ord.compare(m, b) == Ordering::Greater {
                        Some(m)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        match best {
            Some(m) => Ok((m.clone(), self.terms[m].clone())),
            None => Err(Error::ZeroPolynomial),
        }
    }

    /// Substitute polynomials (over `target`) for variables by index.
    /// Every variable occurring in `self` must be assigned.
    pub fn substitute(
        &self,
        target: &Arc<VarSet>,
        assignment: &BTreeMap<usize, Polynomial>,
    ) -> Result<Polynomial> {
        for img in assignment.values() {
            if !(Arc::ptr_eq(&img.vars, target) || img.vars == *target) {
                return Err(Error::VarSetMismatch(
                    "substitution images must share the target variable set".into(),
                ));
            }
        }
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = assignment.get(&i).ok_or_else(|| {
                    Error::Parse(format!(
                        "missing assignment for variable {}",
                        self.vars.name(i)
                    ))
                })?;
                acc = acc.mul(&img.pow(e))?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Substitute an image for every variable; images live over `target`.
    pub fn substitute_full(
        &self,
        target: &Arc<VarSet>,
        images: &[Polynomial],
    ) -> Result<Polynomial> {
        if images.len() != self.nvars() {
            return Err(Error::VarSetMismatch(format!(
                "expected {} images, got {}",
                self.nvars(),
                images.len()
            )));
        }
        let map: BTreeMap<usize, Polynomial> =
            images.iter().cloned().enumerate().collect();
        self.substitute(target, &map)
    }

    /// Evaluate at a full rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars());
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            total += v;
        }
        total
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn derivative(&self, idx: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(idx);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[idx] = e - 1;
            out.add_term(Monomial::from_exps(exps), c * Rat::from_integer(e.into()));
        }
        out
    }

    /// Re-interpret over a larger variable set; `map[i]` is the index of the
    /// old variable `i` in `target`.
    pub fn reindex(&self, target: &Arc<VarSet>, map: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Monomial::from_exps(exps), c.clone());
        }
        out
    }

    /// Terms in descending graded-lex order — the conventional display
    /// order, with higher degrees first and earlier variables dominating.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Rat)> {
        let mut ts: Vec<(Monomial, Rat)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        ts.sort_by(|a, b| {
            b.0.total_degree()
                .cmp(&a.0.total_degree())
                .then_with(|| b.0.exps().cmp(a.0.exps()))
        });
        ts
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms() {
            let neg = c < Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if m.is_one() {
                write!(f, "{}", format_rat(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", m.format_with(&self.vars))?;
            } else {
                write!(f, "{}*{}", format_rat(&abs), m.format_with(&self.vars))?;
            }
        }
        Ok(())
    }
}
