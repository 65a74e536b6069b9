//! Buchberger's algorithm, normal forms, and standard-monomial bases of
//! zero-dimensional quotients.
//!
//! Plain Buchberger with the coprime-leading-monomial criterion and the
//! normal (smallest-lcm-first) selection strategy is all this needs: the
//! ideals here have a handful of generators in at most five variables.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, TermOrder, VarSet};

/// A reduced Groebner basis: monic elements, none of whose leading monomials
/// divides another's, sorted ascending by leading monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    vars: Arc<VarSet>,
    order: TermOrder,
    elements: Vec<Polynomial>,
    leading: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }
}

/// The ordered basis of standard monomials of a zero-dimensional quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientBasis {
    pub monomials: Vec<Monomial>,
}

fn division_step(p: &Polynomial, divisors: &[Polynomial], ord: &TermOrder) -> Polynomial {
    // full multivariate division: returns the remainder
    let vars = p.vars();
    let mut rem = Polynomial::zero(vars);
    let mut h = p.clone();
    'outer: while !h.is_zero() {
        let (lm, lc) = h.leading_term(ord).expect("nonzero");
        for d in divisors {
            let (dlm, dlc) = d.leading_term(ord).expect("basis elements nonzero");
            if dlm.divides(&lm) {
                let factor = dlm.div_into(&lm);
                let coeff = &lc / &dlc;
                let sub = d.mul_monomial(&factor, &coeff);
                h = h.sub(&sub).expect("same varset");
                continue 'outer;
            }
        }
        // leading term irreducible: move it to the remainder
        let t = Polynomial::term(vars, lm.clone(), lc.clone());
        rem = rem.add(&t).expect("same varset");
        h = h.sub(&t).expect("same varset");
    }
    rem
}

/// Remainder of `p` modulo the basis: no term divisible by any leading
/// monomial; idempotent and linear in `p`.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    division_step(p, &gb.elements, &gb.order)
}

fn make_monic(p: Polynomial, ord: &TermOrder) -> Polynomial {
    let (_, lc) = p.leading_term(ord).expect("nonzero");
    p.scale(&lc.recip())
}

/// Compute the unique reduced Groebner basis of the ideal generated by
/// `gens` under `ord`.
pub fn buchberger(
    vars: &Arc<VarSet>,
    gens: &[Polynomial],
    ord: TermOrder,
) -> Result<GroebnerBasis> {
    let vars = Arc::clone(vars);
    for g in gens {
        if g.is_zero() {
            return Err(Error::InvalidInput("zero generator in ideal".into()));
        }
        if **g.vars() != *vars {
            return Err(Error::VarSetMismatch(
                "generators over different variable sets".into(),
            ));
        }
    }

    let mut basis: Vec<Polynomial> = gens
        .iter()
        .map(|g| make_monic(g.clone(), &ord))
        .collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }

    let lm = |p: &Polynomial| p.leading_term(&ord).expect("nonzero").0;

    while !pairs.is_empty() {
        // normal strategy: the pair with the smallest lcm first;
        // ties broken by index for determinism
        let mut best = 0;
        let mut best_lcm = lm(&basis[pairs[0].0]).lcm(&lm(&basis[pairs[0].1]));
        for (k, &(i, j)) in pairs.iter().enumerate().skip(1) {
            let l = lm(&basis[i]).lcm(&lm(&basis[j]));
            if ord.compare(&l, &best_lcm) == std::cmp::Ordering::Less {
                best = k;
                best_lcm = l;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        let (li, lj) = (lm(&basis[i]), lm(&basis[j]));
        let l = li.lcm(&lj);
        // coprime-leading-monomial criterion
        if l == li.mul(&lj) {
            continue;
        }
        let one = crate::rat::rat_int(1);
        let s_i = basis[i].mul_monomial(&li.div_into(&l), &one);
        let s_j = basis[j].mul_monomial(&lj.div_into(&l), &one);
        let s = s_i.sub(&s_j).expect("same varset");
        let r = division_step(&s, &basis, &ord);
        if !r.is_zero() {
            let r = make_monic(r, &ord);
            basis.push(r);
            let new = basis.len() - 1;
            for k in 0..new {
                pairs.push((k, new));
            }
        }
    }

    // minimalize: drop elements whose leading monomial is divisible by
    // another surviving element's
    let mut keep: Vec<Polynomial> = Vec::new();
    let lms: Vec<Monomial> = basis.iter().map(&lm).collect();
    for (i, b) in basis.iter().enumerate() {
        let dominated = lms.iter().enumerate().any(|(j, other)| {
            j != i && other.divides(&lms[i]) && (lms[j] != lms[i] || j < i)
        });
        if !dominated {
            keep.push(b.clone());
        }
    }
    // inter-reduce
    let mut reduced: Vec<Polynomial> = Vec::new();
    for i in 0..keep.len() {
        let others: Vec<Polynomial> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let r = division_step(&keep[i], &others, &ord);
        if !r.is_zero() {
            reduced.push(make_monic(r, &ord));
        }
    }
    reduced.sort_by(|a, b| ord.compare(&lm(a), &lm(b)));
    let leading = reduced.iter().map(&lm).collect();
    Ok(GroebnerBasis {
        vars,
        order: ord,
        elements: reduced,
        leading,
    })
}

/// All monomials outside the leading-term ideal, ordered by total degree and
/// then descending under the term order within each degree (so `x1` precedes
/// `x2` for the default precedence). Errors with [`Error::InfiniteDimensional`]
/// when some variable has no pure power among the leading monomials.
pub fn standard_monomials(gb: &GroebnerBasis) -> Result<QuotientBasis> {
    let nvars = gb.vars.len();
    if nvars == 0 {
        return Ok(QuotientBasis {
            monomials: vec![Monomial::one(0)],
        });
    }
    // bound the box: each variable needs a pure power among the LMs
    let mut bounds = vec![0u32; nvars];
    for v in 0..nvars {
        let pure = gb
            .leading
            .iter()
            .filter(|m| (0..nvars).all(|w| w == v || m.exp(w) == 0) && m.exp(v) > 0)
            .map(|m| m.exp(v))
            .min();
        match pure {
            Some(d) => bounds[v] = d,
            None => {
                return Err(Error::InfiniteDimensional(gb.vars.name(v).to_string()))
            }
        }
    }
    let mut all = Vec::new();
    let mut current = vec![0u32; nvars];
    loop {
        let m = Monomial::from_exps(current.clone());
        if !gb.leading.iter().any(|l| l.divides(&m)) {
            all.push(m);
        }
        // odometer over the box
        let mut k = nvars;
        loop {
            if k == 0 {
                // done
                all.sort_by(|a, b| {
                    a.total_degree()
                        .cmp(&b.total_degree())
                        .then_with(|| gb.order.compare(b, a))
                });
                return Ok(QuotientBasis { monomials: all });
            }
            k -= 1;
            if current[k] + 1 < bounds[k] {
                current[k] += 1;
                break;
            }
            current[k] = 0;
        }
    }
}
