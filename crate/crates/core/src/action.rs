//! Parameterized polynomial actions of `G_m^r x G_a^s` on affine `n`-space:
//! axiom verification, linearity and fixed-point tests, orbit rank, and the
//! built-in example actions (translations, the Hirzebruch family, the block
//! example, scalar actions, and wrapped table representations).
//!
//! Torus parameters are adjoined as ordinary polynomial variables with the
//! identity substitution `l = 1`; the group law is fixed as
//! `(l, a) . (m, b) = (l*m, a+b)`, so only actions polynomial in the torus
//! coordinates are representable.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{PolyMat, RatMat};
use crate::poly::{Monomial, Polynomial, VarSet};
use crate::rat::Rat;

/// A family of polynomial self-maps of affine space, one component per
/// coordinate, in the variables `l1..lr, a1..as, x1..xn`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialAction {
    pub r: usize,
    pub s: usize,
    pub n: usize,
    pub vars: Arc<VarSet>,
    pub components: Vec<Polynomial>,
}

/// Three-valued outcome of the fixed-point search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPoint {
    Yes,
    No,
    Unknown,
}

/// Everything the checks below report about one action.
#[derive(Debug, Clone)]
pub struct ActionReport {
    pub axioms_ok: bool,
    pub linear: bool,
    pub fixed_point: FixedPoint,
    pub orbit_rank_at_witness: usize,
    pub witness: Vec<Rat>,
}

pub fn action_vars(r: usize, s: usize, n: usize) -> Arc<VarSet> {
    let mut names = Vec::with_capacity(r + s + n);
    for i in 1..=r {
        names.push(format!("l{i}"));
    }
    for j in 1..=s {
        names.push(format!("a{j}"));
    }
    for k in 1..=n {
        names.push(format!("x{k}"));
    }
    VarSet::new(names)
}

impl PolynomialAction {
    pub fn new(
        r: usize,
        s: usize,
        n: usize,
        components: Vec<Polynomial>,
    ) -> Result<PolynomialAction> {
        if components.len() != n {
            return Err(Error::InvalidInput(format!(
                "expected {n} components, got {}",
                components.len()
            )));
        }
        let vars = action_vars(r, s, n);
        for c in &components {
            if **c.vars() != *vars {
                return Err(Error::VarSetMismatch(
                    "components must use the variables l*, a*, x*".into(),
                ));
            }
        }
        Ok(PolynomialAction {
            r,
            s,
            n,
            vars,
            components,
        })
    }

    fn x_index(&self, k: usize) -> usize {
        self.r + self.s + k
    }

    /// Identity parameters: every torus coordinate 1, every additive 0.
    fn identity_params(&self) -> Vec<Rat> {
        let mut p = vec![Rat::from_integer(1.into()); self.r];
        p.extend(vec![Rat::zero(); self.s]);
        p
    }

    /// Symbolic check of `act(e, x) = x` and
    /// `act(g, act(h, x)) = act(g*h, x)` over disjoint parameter alphabets.
    pub fn verify_action(&self) -> bool {
        let (r, s, n) = (self.r, self.s, self.n);
        // identity axiom
        let mut id_map = BTreeMap::new();
        for i in 0..r {
            id_map.insert(i, Polynomial::one(&self.vars));
        }
        for j in 0..s {
            id_map.insert(r + j, Polynomial::zero(&self.vars));
        }
        for k in 0..n {
            id_map.insert(
                self.x_index(k),
                Polynomial::var(&self.vars, self.x_index(k)),
            );
        }
        for (k, c) in self.components.iter().enumerate() {
            let at_identity = c
                .substitute(&self.vars, &id_map)
                .expect("assignment total");
            if at_identity != Polynomial::var(&self.vars, self.x_index(k)) {
                return false;
            }
        }

        // composition over the alphabet l, a, m, b, x
        let mut names: Vec<String> = Vec::new();
        for i in 1..=r {
            names.push(format!("l{i}"));
        }
        for j in 1..=s {
            names.push(format!("a{j}"));
        }
        for i in 1..=r {
            names.push(format!("m{i}"));
        }
        for j in 1..=s {
            names.push(format!("b{j}"));
        }
        for k in 1..=n {
            names.push(format!("x{k}"));
        }
        let big = VarSet::new(names);
        let map_h: Vec<usize> = (r + s..r + s + r)
            .chain(r + s + r..2 * (r + s))
            .chain(2 * (r + s)..2 * (r + s) + n)
            .collect();
        let act_h: Vec<Polynomial> = self
            .components
            .iter()
            .map(|c| c.reindex(&big, &map_h))
            .collect();

        // act(g, act(h, x))
        let mut compose = BTreeMap::new();
        for i in 0..r {
            compose.insert(i, Polynomial::var(&big, i));
        }
        for j in 0..s {
            compose.insert(r + j, Polynomial::var(&big, r + j));
        }
        for k in 0..n {
            compose.insert(r + s + k, act_h[k].clone());
        }
        // act(g*h, x)
        let mut product = BTreeMap::new();
        for i in 0..r {
            let p = Polynomial::var(&big, i)
                .mul(&Polynomial::var(&big, r + s + i))
                .expect("same varset");
            product.insert(i, p);
        }
        for j in 0..s {
            let p = Polynomial::var(&big, r + j)
                .add(&Polynomial::var(&big, r + s + r + j))
                .expect("same varset");
            product.insert(r + j, p);
        }
        for k in 0..n {
            product.insert(r + s + k, Polynomial::var(&big, 2 * (r + s) + k));
        }
        for c in &self.components {
            let lhs = c.substitute(&big, &compose).expect("assignment total");
            let rhs = c.substitute(&big, &product).expect("assignment total");
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// Every component homogeneous of degree exactly one in the space
    /// variables (coefficients may involve parameters).
    pub fn is_linear(&self) -> bool {
        let mask: Vec<bool> = (0..self.vars.len())
            .map(|i| i >= self.r + self.s)
            .collect();
        self.components.iter().all(|c| {
            !c.is_zero() && c.terms().all(|(m, _)| m.degree_in(&mask) == 1)
        })
    }

    /// Group `act(g, x) - x` by parameter monomials; each coefficient is a
    /// polynomial condition on `x`. Decides only when the resulting system is
    /// linear in `x`.
    pub fn has_fixed_point(&self) -> FixedPoint {
        let (r, s, n) = (self.r, self.s, self.n);
        let xvars = VarSet::numbered("x", n);
        let mut system: BTreeMap<Monomial, Vec<Polynomial>> = BTreeMap::new();
        for (k, c) in self.components.iter().enumerate() {
            let diff = c
                .sub(&Polynomial::var(&self.vars, self.x_index(k)))
                .expect("same varset");
            for (m, coeff) in diff.terms() {
                let param_exps: Vec<u32> = m.exps()[..r + s].to_vec();
                let x_exps: Vec<u32> = m.exps()[r + s..].to_vec();
                let key = Monomial::from_exps(param_exps);
                let entry = system
                    .entry(key)
                    .or_insert_with(|| vec![Polynomial::zero(&xvars); n]);
                let x_mono = Polynomial::term(&xvars, Monomial::from_exps(x_exps), coeff.clone());
                entry[k] = entry[k].add(&x_mono).expect("same varset");
            }
        }
        // a fixed point must kill every equation
        let mut equations: Vec<Polynomial> = Vec::new();
        for polys in system.values() {
            for p in polys {
                if !p.is_zero() {
                    equations.push(p.clone());
                }
            }
        }
        if equations.is_empty() {
            return FixedPoint::Yes; // the action is trivial
        }
        if equations.iter().any(|p| p.total_degree() > 1) {
            return FixedPoint::Unknown;
        }
        // linear system A x = -c
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for eq in &equations {
            let mut row = vec![Rat::zero(); n];
            let mut constant = Rat::zero();
            for (m, c) in eq.terms() {
                if m.is_one() {
                    constant = c.clone();
                } else {
                    let var = m
                        .exps()
                        .iter()
                        .position(|&e| e == 1)
                        .expect("degree-one term");
                    row[var] = c.clone();
                }
            }
            rows.push(row);
            rhs.push(-constant);
        }
        match RatMat::from_rows(rows).solve(&rhs) {
            Some(_) => FixedPoint::Yes,
            None => FixedPoint::No,
        }
    }

    /// Rank of the Jacobian in the parameters at identity parameters and the
    /// point `v` — the infinitesimal orbit dimension.
    pub fn orbit_rank(&self, v: &[Rat]) -> usize {
        assert_eq!(v.len(), self.n);
        let mut point = self.identity_params();
        point.extend(v.iter().cloned());
        let mut rows = Vec::new();
        for p in 0..self.r + self.s {
            let row: Vec<Rat> = self
                .components
                .iter()
                .map(|c| c.derivative(p).eval(&point))
                .collect();
            rows.push(row);
        }
        if rows.is_empty() {
            return 0;
        }
        RatMat::from_rows(rows).rank()
    }

    /// For linear actions, the matrix of coefficients of the space
    /// variables, over the parameter-only variable set.
    pub fn linear_matrix(&self) -> Option<PolyMat> {
        if !self.is_linear() {
            return None;
        }
        let (r, s, n) = (self.r, self.s, self.n);
        let mut pnames = Vec::new();
        for i in 1..=r {
            pnames.push(format!("l{i}"));
        }
        for j in 1..=s {
            pnames.push(format!("a{j}"));
        }
        let pvars = VarSet::new(pnames);
        let mut m = PolyMat::zeros(&pvars, n, n);
        for (i, c) in self.components.iter().enumerate() {
            for (mono, coeff) in c.terms() {
                let x_exps = &mono.exps()[r + s..];
                let j = x_exps.iter().position(|&e| e == 1).expect("linear term");
                let param_mono = Monomial::from_exps(mono.exps()[..r + s].to_vec());
                let term = Polynomial::term(&pvars, param_mono, coeff.clone());
                m[(i, j)] = m[(i, j)].add(&term).expect("same varset");
            }
        }
        Some(m)
    }

    /// Lie algebra of a linear action: parameter derivatives of the matrix
    /// at the identity.
    pub fn lie_basis(&self) -> Result<Vec<RatMat>> {
        let m = self.linear_matrix().ok_or_else(|| {
            Error::InvalidInput("lie basis requires a linear action".into())
        })?;
        let identity = self.identity_params();
        Ok((0..self.r + self.s)
            .map(|p| m.map(|e| e.derivative(p)).eval(&identity))
            .collect())
    }

    /// Full report at a seeded witness point: tries a few integer points and
    /// keeps the best orbit rank found.
    pub fn report(&self, seed: u64) -> ActionReport {
        let axioms_ok = self.verify_action();
        let linear = self.is_linear();
        let fixed_point = self.has_fixed_point();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best_rank = 0;
        let mut witness = vec![Rat::zero(); self.n];
        for _ in 0..5 {
            let v: Vec<Rat> = (0..self.n)
                .map(|_| Rat::from_integer(rng.gen_range(-9i64..=9).into()))
                .collect();
            let rank = self.orbit_rank(&v);
            if rank > best_rank {
                best_rank = rank;
                witness = v;
            }
            if best_rank == self.n {
                break;
            }
        }
        ActionReport {
            axioms_ok,
            linear,
            fixed_point,
            orbit_rank_at_witness: best_rank,
            witness,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dto = ActionJson {
            r: self.r,
            s: self.s,
            n: self.n,
            components: self.components.iter().map(|c| c.to_string()).collect(),
        };
        serde_json::to_value(dto).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<PolynomialAction> {
        let dto: ActionJson = serde_json::from_value(value.clone())?;
        let vars = action_vars(dto.r, dto.s, dto.n);
        let components = dto
            .components
            .iter()
            .map(|t| crate::present::parse_polynomial(t, &vars))
            .collect::<Result<Vec<_>>>()?;
        PolynomialAction::new(dto.r, dto.s, dto.n, components)
    }
}

#[derive(Serialize, Deserialize)]
struct ActionJson {
    r: usize,
    s: usize,
    n: usize,
    components: Vec<String>,
}

/// The built-in actions; `params` supplies the integer parameter each family
/// needs (`n`, `d`, or the table index `k`).
pub fn builtin(name: &str, params: &BTreeMap<String, i64>) -> Result<PolynomialAction> {
    let get = |key: &str| -> Result<i64> {
        params
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("builtin needs parameter {key}")))
    };
    match name {
        "translations" => {
            let n = positive(get("n")?, "n")?;
            let vars = action_vars(0, n, n);
            let components = (0..n)
                .map(|k| {
                    Polynomial::var(&vars, n + k)
                        .add(&Polynomial::var(&vars, k))
                        .expect("same varset")
                })
                .collect();
            PolynomialAction::new(0, n, n, components)
        }
        "scalar" => {
            let n = positive(get("n")?, "n")?;
            let vars = action_vars(1, 0, n);
            let components = (0..n)
                .map(|k| {
                    Polynomial::var(&vars, 0)
                        .mul(&Polynomial::var(&vars, 1 + k))
                        .expect("same varset")
                })
                .collect();
            PolynomialAction::new(1, 0, n, components)
        }
        "hirzebruch" => {
            let d = get("d")?;
            if d < 0 {
                return Err(Error::InvalidInput("hirzebruch needs d >= 0".into()));
            }
            let d = d as u32;
            let vars = action_vars(2, 2, 4);
            let (l1, l2) = (Polynomial::var(&vars, 0), Polynomial::var(&vars, 1));
            let (a1, a2) = (Polynomial::var(&vars, 2), Polynomial::var(&vars, 3));
            let x = |k: usize| Polynomial::var(&vars, 4 + k);
            let c1 = l1.mul(&x(0)).expect("same varset");
            let c2 = l2.mul(&x(1)).expect("same varset");
            let c3 = l1
                .mul(&x(2))
                .and_then(|p| {
                    p.add(&l1.mul(&a1).expect("same varset").mul(&x(0)).expect("same varset"))
                })
                .expect("same varset");
            let head = l1.pow(d).mul(&l2).expect("same varset");
            let tail = head
                .mul(&a2)
                .expect("same varset")
                .mul(&x(0).pow(d))
                .expect("same varset")
                .mul(&x(1))
                .expect("same varset");
            let c4 = head
                .mul(&x(3))
                .expect("same varset")
                .add(&tail)
                .expect("same varset");
            PolynomialAction::new(2, 2, 4, vec![c1, c2, c3, c4])
        }
        "polex" => {
            // [[l E, l A], [0, l E]] acting on K^{2n}: homomorphic
            // coordinates for the same matrix family as the block form
            let n = positive(get("n")?, "n")?;
            let space = 2 * n;
            let s = n * n;
            let vars = action_vars(1, s, space);
            let l = Polynomial::var(&vars, 0);
            let a = |i: usize, j: usize| Polynomial::var(&vars, 1 + i * n + j);
            let x = |k: usize| Polynomial::var(&vars, 1 + s + k);
            let mut components = Vec::with_capacity(space);
            for i in 0..n {
                let mut c = l.mul(&x(i)).expect("same varset");
                for j in 0..n {
                    let t = l
                        .mul(&a(i, j))
                        .expect("same varset")
                        .mul(&x(n + j))
                        .expect("same varset");
                    c = c.add(&t).expect("same varset");
                }
                components.push(c);
            }
            for i in 0..n {
                components.push(l.mul(&x(n + i)).expect("same varset"));
            }
            PolynomialAction::new(1, s, space, components)
        }
        "table_rep" => {
            let k = get("k")?;
            if !(1..=42).contains(&k) {
                return Err(Error::InvalidInput("table index must be 1..=42".into()));
            }
            let entry = crate::present::table_entry(k as u32)?;
            let alg = FiniteAlgebra::from_quotient(&entry.presentation)?;
            let rep = crate::rep::matrix_rep(&alg, None)?;
            let r = rep.torus_params.len();
            let s = rep.additive_params.len();
            let n = rep.n;
            let vars = action_vars(r, s, n);
            let param_map: Vec<usize> = (0..r + s).collect();
            let mut components = Vec::with_capacity(n);
            for i in 0..n {
                let mut c = Polynomial::zero(&vars);
                for j in 0..n {
                    let entry_ij = rep.entries[(i, j)].reindex(&vars, &param_map);
                    let term = entry_ij
                        .mul(&Polynomial::var(&vars, r + s + j))
                        .expect("same varset");
                    c = c.add(&term).expect("same varset");
                }
                components.push(c);
            }
            PolynomialAction::new(r, s, n, components)
        }
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

fn positive(v: i64, name: &str) -> Result<usize> {
    if v >= 1 {
        Ok(v as usize)
    } else {
        Err(Error::InvalidInput(format!("{name} must be >= 1")))
    }
}
