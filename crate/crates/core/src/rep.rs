//! The algebra-to-module direction: exponentials of nilpotents and the
//! symbolic parameterized matrix representation of the unit group `G(A)`
//! acting on `A` by multiplication.
//!
//! Group elements are written in coordinates of the second kind, one torus
//! parameter and one exponential coordinate per radical basis vector of each
//! local summand: `g = lambda * exp(sum_j alpha_j b_j)`. In these coordinates
//! the group law is componentwise `(l, a) . (m, b) = (l*m, a+b)`, which is
//! what `verify_homomorphism` checks symbolically.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{PolyMat, RatMat};
use crate::poly::{Polynomial, VarSet};
use crate::rat::Rat;

/// Symbolic matrix representation of `G(A)` on `A`: an `n x n` matrix of
/// polynomials in the torus parameters `l1..lr` and additive parameters
/// `a1..as`, block-diagonal with respect to the local summands.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamMatrixRep {
    pub n: usize,
    pub torus_params: Vec<String>,
    pub additive_params: Vec<String>,
    pub vars: Arc<VarSet>,
    pub entries: PolyMat,
    /// Row indices belonging to each summand.
    pub layout: Vec<Vec<usize>>,
    pub summand_dims: Vec<usize>,
    pub basis_labels: Vec<String>,
}

fn mul_poly_coords(alg: &FiniteAlgebra, a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let n = alg.dim();
    let vars = a[0].vars();
    let mut out = vec![Polynomial::zero(vars); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if b[j].is_zero() {
                continue;
            }
            let prod = a[i].mul(&b[j]).expect("same varset");
            for k in 0..n {
                let c = alg.structure_constant(i, j, k);
                if !c.is_zero() {
                    out[k] = out[k].add(&prod.scale(c)).expect("same varset");
                }
            }
        }
    }
    out
}

fn const_coords(vars: &Arc<VarSet>, coords: &[Rat]) -> Vec<Polynomial> {
    coords
        .iter()
        .map(|c| Polynomial::constant(vars, c.clone()))
        .collect()
}

/// `exp(a) = sum a^k / k!`, a finite sum since `a` is nilpotent.
pub fn exp_element(alg: &FiniteAlgebra, a: &[Rat]) -> Result<Vec<Rat>> {
    let n = alg.dim();
    let mut acc = alg.unit().to_vec();
    let mut power = alg.unit().to_vec();
    let mut factorial = BigInt::one();
    for k in 1..=n {
        power = alg.mul_coords(&power, a);
        if power.iter().all(Rat::is_zero) {
            break;
        }
        if k == n {
            return Err(Error::NotNilpotent);
        }
        factorial *= BigInt::from(k);
        let inv = Rat::new(BigInt::one(), factorial.clone());
        for (s, p) in acc.iter_mut().zip(&power) {
            *s += p * &inv;
        }
    }
    Ok(acc)
}

/// `log(1 + m) = sum (-1)^{k+1} m^k / k`, inverse to [`exp_element`].
pub fn log_element(alg: &FiniteAlgebra, u: &[Rat]) -> Result<Vec<Rat>> {
    let n = alg.dim();
    let m: Vec<Rat> = u.iter().zip(alg.unit()).map(|(a, b)| a - b).collect();
    let mut acc = vec![Rat::zero(); n];
    let mut power = alg.unit().to_vec();
    for k in 1..=n {
        power = alg.mul_coords(&power, &m);
        if power.iter().all(Rat::is_zero) {
            break;
        }
        if k == n {
            return Err(Error::NotUnipotent);
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let coef = Rat::new(BigInt::from(sign), BigInt::from(k));
        for (s, p) in acc.iter_mut().zip(&power) {
            *s += p * &coef;
        }
    }
    Ok(acc)
}

fn exp_symbolic(alg: &FiniteAlgebra, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let n = alg.dim();
    let vars = v[0].vars().clone();
    let mut acc = const_coords(&vars, alg.unit());
    let mut power = const_coords(&vars, alg.unit());
    let mut factorial = BigInt::one();
    for k in 1..=n {
        power = mul_poly_coords(alg, &power, v);
        if power.iter().all(Polynomial::is_zero) {
            break;
        }
        if k == n {
            return Err(Error::NotNilpotent);
        }
        factorial *= BigInt::from(k);
        let inv = Rat::new(BigInt::one(), factorial.clone());
        for (s, p) in acc.iter_mut().zip(&power) {
            *s = s.add(&p.scale(&inv)).expect("same varset");
        }
    }
    Ok(acc)
}

/// Construct the symbolic representation. With `basis_override` (a list of
/// monomial labels, for local algebras only) the matrix is written in that
/// basis and the exponential coordinates attach to its positive-degree
/// monomials in the given order.
pub fn matrix_rep(alg: &FiniteAlgebra, basis_override: Option<&[String]>) -> Result<ParamMatrixRep> {
    match basis_override {
        None => matrix_rep_default(alg),
        Some(labels) => matrix_rep_override(alg, labels),
    }
}

fn matrix_rep_default(alg: &FiniteAlgebra) -> Result<ParamMatrixRep> {
    let decomp = alg.local_decomposition()?;
    let r = decomp.summands.len();
    let n = alg.dim();
    let s_total = n - r;
    let torus_params: Vec<String> = (1..=r).map(|i| format!("l{i}")).collect();
    let additive_params: Vec<String> = (1..=s_total).map(|j| format!("a{j}")).collect();
    let mut names = torus_params.clone();
    names.extend(additive_params.iter().cloned());
    let vars = VarSet::new(names);

    let mut entries = PolyMat::zeros(&vars, n, n);
    let mut layout = Vec::with_capacity(r);
    let mut summand_dims = Vec::with_capacity(r);
    let mut basis_labels = Vec::with_capacity(n);
    let mut row_offset = 0;
    let mut alpha_offset = 0;
    for (i, summand) in decomp.summands.iter().enumerate() {
        let d = summand.dim();
        let radical = summand.nilradical()?;
        let s_i = radical.len();
        debug_assert_eq!(s_i + 1, d);
        // rebase the summand so the unit comes first, then the radical
        let mut cols = vec![summand.unit().to_vec()];
        cols.extend(radical.iter().cloned());
        let labels: Vec<String> = ambient_labels(alg, &decomp.summand_bases[i], &cols, i);
        let adapted = summand.rebase(&cols, labels.clone())?;

        // symbolic nilpotent: sum over this summand's additive parameters
        let mut nil = vec![Polynomial::zero(&vars); d];
        for j in 0..s_i {
            let alpha = Polynomial::var(&vars, r + alpha_offset + j);
            nil[1 + j] = alpha;
        }
        let g = exp_symbolic(&adapted, &nil)?;
        let lambda = Polynomial::var(&vars, i);
        // block = lambda * L_g in the adapted basis
        for col in 0..d {
            let mut e = vec![Polynomial::zero(&vars); d];
            e[col] = Polynomial::one(&vars);
            let image = mul_poly_coords(&adapted, &g, &e);
            for (row, val) in image.into_iter().enumerate() {
                entries[(row_offset + row, row_offset + col)] =
                    val.mul(&lambda).expect("same varset");
            }
        }
        layout.push((row_offset..row_offset + d).collect());
        summand_dims.push(d);
        basis_labels.extend(labels);
        row_offset += d;
        alpha_offset += s_i;
    }
    Ok(ParamMatrixRep {
        n,
        torus_params,
        additive_params,
        vars,
        entries,
        layout,
        summand_dims,
        basis_labels,
    })
}

/// Labels for the adapted basis of one summand: reuse the ambient label when
/// the adapted vector is an ambient standard basis vector, otherwise make a
/// synthetic name.
fn ambient_labels(
    alg: &FiniteAlgebra,
    summand_basis: &[Vec<Rat>],
    cols_in_summand: &[Vec<Rat>],
    summand_idx: usize,
) -> Vec<String> {
    cols_in_summand
        .iter()
        .enumerate()
        .map(|(t, col)| {
            // ambient coordinates of this adapted vector
            let mut ambient = vec![Rat::zero(); alg.dim()];
            for (c, row) in col.iter().zip(summand_basis) {
                for (k, x) in row.iter().enumerate() {
                    ambient[k] += c * x;
                }
            }
            let mut standard = None;
            for (k, v) in ambient.iter().enumerate() {
                if v.is_one() && standard.is_none() {
                    standard = Some(k);
                } else if !v.is_zero() {
                    standard = None;
                    break;
                }
            }
            match standard {
                Some(k) => alg.basis_labels()[k].clone(),
                None if t == 0 => format!("e{}", summand_idx + 1),
                None => format!("e{}m{}", summand_idx + 1, t),
            }
        })
        .collect()
}

fn matrix_rep_override(alg: &FiniteAlgebra, labels: &[String]) -> Result<ParamMatrixRep> {
    let n = alg.dim();
    if !alg.is_geometrically_local()? {
        return Err(Error::InvalidBasis(
            "basis override is only supported for local algebras".into(),
        ));
    }
    if labels.len() != n {
        return Err(Error::InvalidBasis(format!(
            "expected {n} basis monomials, got {}",
            labels.len()
        )));
    }
    let coords: Vec<Vec<Rat>> = labels
        .iter()
        .map(|l| alg.monomial_coords(l))
        .collect::<Result<_>>()?;
    let c = RatMat::from_cols(coords.clone());
    let c_inv = c
        .inverse()
        .ok_or_else(|| Error::InvalidBasis("override monomials are dependent".into()))?;

    // the unit must appear; the remaining vectors are the radical basis the
    // exponential coordinates attach to
    let unit_pos = coords
        .iter()
        .position(|v| v == alg.unit())
        .ok_or_else(|| Error::InvalidBasis("override basis must contain the unit".into()))?;
    let radical_vectors: Vec<&Vec<Rat>> = coords
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != unit_pos)
        .map(|(_, v)| v)
        .collect();
    for v in &radical_vectors {
        let p = alg.element_pow(v, n as u32);
        if !p.iter().all(Rat::is_zero) {
            return Err(Error::InvalidBasis(
                "override basis vector outside the unit is not nilpotent".into(),
            ));
        }
    }

    let s = n - 1;
    let torus_params = vec!["l1".to_string()];
    let additive_params: Vec<String> = (1..=s).map(|j| format!("a{j}")).collect();
    let mut names = torus_params.clone();
    names.extend(additive_params.iter().cloned());
    let vars = VarSet::new(names);

    let mut nil = vec![Polynomial::zero(&vars); n];
    for (j, v) in radical_vectors.iter().enumerate() {
        let alpha = Polynomial::var(&vars, 1 + j);
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                nil[k] = nil[k].add(&alpha.scale(x)).expect("same varset");
            }
        }
    }
    let g = exp_symbolic(alg, &nil)?;
    let lambda = Polynomial::var(&vars, 0);
    let mut ambient = PolyMat::zeros(&vars, n, n);
    for col in 0..n {
        let mut e = vec![Polynomial::zero(&vars); n];
        e[col] = Polynomial::one(&vars);
        let image = mul_poly_coords(alg, &g, &e);
        for (row, val) in image.into_iter().enumerate() {
            ambient[(row, col)] = val.mul(&lambda).expect("same varset");
        }
    }
    let entries = ambient.conjugate(&c, &c_inv);
    Ok(ParamMatrixRep {
        n,
        torus_params,
        additive_params,
        vars,
        entries,
        layout: vec![(0..n).collect()],
        summand_dims: vec![n],
        basis_labels: labels.to_vec(),
    })
}

impl ParamMatrixRep {
    /// Parameter values of the group identity: every torus parameter 1,
    /// every additive parameter 0.
    pub fn identity_point(&self) -> Vec<Rat> {
        let r = self.torus_params.len();
        let s = self.additive_params.len();
        let mut point = vec![Rat::one(); r];
        point.extend(vec![Rat::zero(); s]);
        point
    }

    /// Entrywise numeric evaluation; torus parameters must be nonzero and
    /// every parameter must be assigned.
    pub fn evaluate(&self, values: &BTreeMap<String, Rat>) -> Result<RatMat> {
        let mut point = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            let v = values
                .get(name)
                .ok_or_else(|| Error::MissingParameter(name.clone()))?;
            if self.torus_params.contains(name) && v.is_zero() {
                return Err(Error::ZeroTorusValue(name.clone()));
            }
            point.push(v.clone());
        }
        let m = self.entries.eval(&point);
        debug_assert!(!m.det().is_zero());
        Ok(m)
    }

    /// Symbolic check of `rho(l, a) * rho(m, b) = rho(l*m, a+b)` over a
    /// doubled parameter alphabet.
    pub fn verify_homomorphism(&self) -> bool {
        let r = self.torus_params.len();
        let s = self.additive_params.len();
        let mut names: Vec<String> = self.vars.names().to_vec();
        for t in &self.torus_params {
            names.push(format!("{t}_2"));
        }
        for a in &self.additive_params {
            names.push(format!("{a}_2"));
        }
        let big = VarSet::new(names);
        let first: Vec<usize> = (0..r + s).collect();
        let second: Vec<usize> = (r + s..2 * (r + s)).collect();

        let rho1 = self.entries.reindex(&big, &first);
        let rho2 = self.entries.reindex(&big, &second);
        let lhs = rho1.mul(&rho2);

        let mut assignment = BTreeMap::new();
        for i in 0..r {
            // l_i -> l_i * m_i
            let prod = Polynomial::var(&big, first[i])
                .mul(&Polynomial::var(&big, second[i]))
                .expect("same varset");
            assignment.insert(i, prod);
        }
        for j in 0..s {
            let sum = Polynomial::var(&big, first[r + j])
                .add(&Polynomial::var(&big, second[r + j]))
                .expect("same varset");
            assignment.insert(r + j, sum);
        }
        let rhs = self
            .entries
            .substitute(&big, &assignment)
            .expect("assignment covers all variables");
        lhs == rhs
    }

    /// Exact symbolic determinant, computed block by block.
    pub fn det(&self) -> Polynomial {
        let mut acc = Polynomial::one(&self.vars);
        for block_rows in &self.layout {
            let d = block_rows.len();
            let mut block = PolyMat::zeros(&self.vars, d, d);
            for (bi, &i) in block_rows.iter().enumerate() {
                for (bj, &j) in block_rows.iter().enumerate() {
                    block[(bi, bj)] = self.entries[(i, j)].clone();
                }
            }
            acc = acc.mul(&block.det()).expect("same varset");
        }
        acc
    }

    /// The expected determinant `prod_i l_i^{n_i}`.
    pub fn expected_det(&self) -> Polynomial {
        let mut acc = Polynomial::one(&self.vars);
        for (i, d) in self.summand_dims.iter().enumerate() {
            acc = acc
                .mul(&Polynomial::var(&self.vars, i).pow(*d as u32))
                .expect("same varset");
        }
        acc
    }

    /// Basis of the Lie algebra of the image: the partial derivative of the
    /// entries with respect to each parameter, at the identity.
    pub fn lie_algebra_basis(&self) -> Vec<RatMat> {
        let identity = self.identity_point();
        (0..self.vars.len())
            .map(|p| self.entries.map(|e| e.derivative(p)).eval(&identity))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dto = RepJson {
            n: self.n,
            torus_params: self.torus_params.clone(),
            additive_params: self.additive_params.clone(),
            entries: (0..self.n)
                .map(|i| {
                    (0..self.n)
                        .map(|j| self.entries[(i, j)].to_string())
                        .collect()
                })
                .collect(),
            layout: self.layout.clone(),
            basis: self.basis_labels.clone(),
        };
        serde_json::to_value(dto).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<ParamMatrixRep> {
        let dto: RepJson = serde_json::from_value(value.clone())?;
        let mut names = dto.torus_params.clone();
        names.extend(dto.additive_params.iter().cloned());
        let vars = VarSet::new(names);
        if dto.entries.len() != dto.n || dto.entries.iter().any(|r| r.len() != dto.n) {
            return Err(Error::InvalidInput("entries shape != n x n".into()));
        }
        let mut entries = PolyMat::zeros(&vars, dto.n, dto.n);
        for (i, row) in dto.entries.iter().enumerate() {
            for (j, text) in row.iter().enumerate() {
                entries[(i, j)] = crate::present::parse_polynomial(text, &vars)?;
            }
        }
        let summand_dims = dto.layout.iter().map(Vec::len).collect();
        let basis = if dto.basis.is_empty() {
            (1..=dto.n).map(|i| format!("b{i}")).collect()
        } else {
            dto.basis.clone()
        };
        Ok(ParamMatrixRep {
            n: dto.n,
            torus_params: dto.torus_params,
            additive_params: dto.additive_params,
            vars,
            entries,
            layout: dto.layout,
            summand_dims,
            basis_labels: basis,
        })
    }

    /// Render as a LaTeX `pmatrix`, with `l`/`a` parameters displayed as
    /// lambda and alpha.
    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{pmatrix}\n");
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| poly_to_latex(&self.entries[(i, j)]))
                .collect();
            out.push_str(&row.join(" & "));
            if i + 1 < self.n {
                out.push_str(" \\\\");
            }
            out.push('\n');
        }
        out.push_str("\\end{pmatrix}");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    n: usize,
    torus_params: Vec<String>,
    additive_params: Vec<String>,
    entries: Vec<Vec<String>>,
    layout: Vec<Vec<usize>>,
    #[serde(default)]
    basis: Vec<String>,
}

fn latex_name(name: &str) -> String {
    let split = name.find(|c: char| c.is_ascii_digit());
    let (head, digits) = match split {
        Some(i) => name.split_at(i),
        None => (name, ""),
    };
    let symbol = match head {
        "l" => "\\lambda".to_string(),
        "a" => "\\alpha".to_string(),
        other => other.to_string(),
    };
    if digits.is_empty() {
        symbol
    } else {
        format!("{symbol}_{{{digits}}}")
    }
}

/// LaTeX form of a polynomial; non-integer coefficients become `\frac`.
pub fn poly_to_latex(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let vars = p.vars().clone();
    let mut out = String::new();
    for (idx, (m, c)) in p.sorted_terms().into_iter().enumerate() {
        let neg = c < Rat::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "-" } else { "+" });
        }
        let coeff = if abs.denom().is_one() {
            if abs.is_one() && !m.is_one() {
                String::new()
            } else {
                abs.numer().to_string()
            }
        } else {
            format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
        };
        out.push_str(&coeff);
        if !m.is_one() {
            let mut first = coeff.is_empty();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&latex_name(vars.name(i)));
                if e > 1 {
                    out.push_str(&format!("^{{{e}}}"));
                }
            }
        }
    }
    out
}
