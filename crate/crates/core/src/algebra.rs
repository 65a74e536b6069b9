//! Finite-dimensional commutative associative unital algebras over the
//! rationals: structure constants, axioms, invertibility, nilradical, local
//! decomposition, isomorphism-distinguishing fingerprints and orbit data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, normal_form, standard_monomials};
use crate::linalg::{span_basis, RatMat};
use crate::poly::TermOrder;
use crate::present::Presentation;
use crate::rat::{format_rat, parse_rat, Rat};

/// An algebra given by a structure-constants tensor: `b_i b_j = sum_k
/// c[i][j][k] b_k`, together with the coordinates of the unit.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteAlgebra {
    dim: usize,
    basis_labels: Vec<String>,
    structure: Vec<Vec<Vec<Rat>>>,
    unit: Vec<Rat>,
}

/// Result of checking the algebra axioms entry by entry.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub commutativity: bool,
    pub associativity: bool,
    pub unit: bool,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.commutativity && self.associativity && self.unit
    }
}

/// Decomposition into local summands via primitive orthogonal idempotents.
#[derive(Debug, Clone)]
pub struct LocalDecomposition {
    pub idempotents: Vec<Vec<Rat>>,
    pub summand_bases: Vec<Vec<Vec<Rat>>>,
    pub summands: Vec<FiniteAlgebra>,
}

/// Basis-free invariants of a local algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim: usize,
    pub hilbert: Vec<usize>,
    pub socle_dim: usize,
    pub ann_filtration: Vec<usize>,
    pub embedding_dim: usize,
}

/// Outcome of comparing two local algebras by their fingerprints. A
/// separation certificate is sound; `Inconclusive` never asserts isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Separation {
        invariant: String,
        left: String,
        right: String,
    },
    Inconclusive,
}

/// Number of unit-group orbits on the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitCount {
    Finite(u64),
    Infinite,
}

impl FiniteAlgebra {
    /// Build from raw parts without validation; `verify_axioms` is the
    /// validator.
    pub fn from_raw_parts(
        basis_labels: Vec<String>,
        structure: Vec<Vec<Vec<Rat>>>,
        unit: Vec<Rat>,
    ) -> FiniteAlgebra {
        let dim = basis_labels.len();
        assert_eq!(structure.len(), dim);
        assert_eq!(unit.len(), dim);
        FiniteAlgebra {
            dim,
            basis_labels,
            structure,
            unit,
        }
    }

    /// Structure constants of the quotient algebra of a presentation, with
    /// the standard monomials as basis.
    pub fn from_quotient(p: &Presentation) -> Result<FiniteAlgebra> {
        let ord = TermOrder::degrevlex(p.vars().len());
        let gb = buchberger(p.vars(), p.generators(), ord)?;
        let basis = standard_monomials(&gb)?;
        let monomials = &basis.monomials;
        let n = monomials.len();
        let index: BTreeMap<_, _> = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let vars = gb.vars().clone();
        let mut structure = vec![vec![vec![Rat::zero(); n]; n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = crate::poly::Polynomial::term(
                    &vars,
                    monomials[i].mul(&monomials[j]),
                    Rat::one(),
                );
                let nf = normal_form(&prod, &gb);
                let mut coords = vec![Rat::zero(); n];
                for (m, c) in nf.terms() {
                    let k = *index
                        .get(m)
                        .expect("normal form lies in the standard basis");
                    coords[k] = c.clone();
                }
                structure[i][j] = coords.clone();
                structure[j][i] = coords;
            }
        }
        let mut unit = vec![Rat::zero(); n];
        unit[index[&crate::poly::Monomial::one(p.vars().len())]] = Rat::one();
        let labels = monomials.iter().map(|m| m.format_with(&vars)).collect();
        let alg = FiniteAlgebra::from_raw_parts(labels, structure, unit);
        debug_assert!(alg.verify_axioms().all_ok());
        Ok(alg)
    }

    /// Blockwise direct sum; the unit is the concatenation of the units.
    pub fn direct_sum(parts: &[FiniteAlgebra]) -> Result<FiniteAlgebra> {
        if parts.is_empty() {
            return Err(Error::EmptyInput("direct sum of no algebras".into()));
        }
        if parts.len() == 1 {
            return Ok(parts[0].clone());
        }
        let n: usize = parts.iter().map(|p| p.dim).sum();
        let mut labels = Vec::with_capacity(n);
        let mut unit = Vec::with_capacity(n);
        let mut structure = vec![vec![vec![Rat::zero(); n]; n]; n];
        let mut offset = 0;
        for (s, part) in parts.iter().enumerate() {
            for (t, l) in part.basis_labels.iter().enumerate() {
                labels.push(format!("s{}:{}", s + 1, l));
                unit.push(part.unit[t].clone());
            }
            for i in 0..part.dim {
                for j in 0..part.dim {
                    for k in 0..part.dim {
                        structure[offset + i][offset + j][offset + k] =
                            part.structure[i][j][k].clone();
                    }
                }
            }
            offset += part.dim;
        }
        Ok(FiniteAlgebra::from_raw_parts(labels, structure, unit))
    }

    /// The same algebra written in a new basis; `columns[j]` holds the old
    /// coordinates of the new basis vector `j`.
    pub fn rebase(&self, columns: &[Vec<Rat>], labels: Vec<String>) -> Result<FiniteAlgebra> {
        if columns.len() != self.dim {
            return Err(Error::InvalidBasis(format!(
                "expected {} basis vectors, got {}",
                self.dim,
                columns.len()
            )));
        }
        let c = RatMat::from_cols(columns.to_vec());
        let c_inv = c
            .inverse()
            .ok_or_else(|| Error::InvalidBasis("basis vectors are dependent".into()))?;
        let n = self.dim;
        let mut structure = vec![vec![vec![Rat::zero(); n]; n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = self.mul_coords(&columns[i], &columns[j]);
                let coords = c_inv.mul_vec(&prod);
                structure[i][j] = coords.clone();
                structure[j][i] = coords;
            }
        }
        let unit = c_inv.mul_vec(&self.unit);
        Ok(FiniteAlgebra::from_raw_parts(labels, structure, unit))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn unit(&self) -> &[Rat] {
        &self.unit
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.structure[i][j][k]
    }

    pub fn zero_element(&self) -> Vec<Rat> {
        vec![Rat::zero(); self.dim]
    }

    pub fn basis_element(&self, i: usize) -> Vec<Rat> {
        let mut v = self.zero_element();
        v[i] = Rat::one();
        v
    }

    /// Product of two coordinate vectors through the structure tensor.
    pub fn mul_coords(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let n = self.dim;
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let f = &a[i] * &b[j];
                for k in 0..n {
                    let c = &self.structure[i][j][k];
                    if !c.is_zero() {
                        out[k] += c * &f;
                    }
                }
            }
        }
        out
    }

    pub fn element_pow(&self, a: &[Rat], k: u32) -> Vec<Rat> {
        let mut out = self.unit.clone();
        for _ in 0..k {
            out = self.mul_coords(&out, a);
        }
        out
    }

    /// Entry-by-entry check of commutativity, associativity and the unit law.
    pub fn verify_axioms(&self) -> AxiomReport {
        let n = self.dim;
        let mut failures = Vec::new();
        let mut commutativity = true;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.structure[i][j] != self.structure[j][i] {
                    commutativity = false;
                    failures.push(format!("commutativity fails at ({i},{j})"));
                }
            }
        }
        let mut associativity = true;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_coords(&self.structure[i][j], &self.basis_element(k));
                    let right = self.mul_coords(&self.basis_element(i), &self.structure[j][k]);
                    if left != right {
                        associativity = false;
                        failures.push(format!("associativity fails at ({i},{j},{k})"));
                    }
                }
            }
        }
        let mut unit = true;
        for j in 0..n {
            if self.mul_coords(&self.unit, &self.basis_element(j)) != self.basis_element(j) {
                unit = false;
                failures.push(format!("unit law fails at basis vector {j}"));
            }
        }
        AxiomReport {
            commutativity,
            associativity,
            unit,
            failures,
        }
    }

    /// Matrix of multiplication by `a`: column `j` holds the coordinates of
    /// `a * b_j`.
    pub fn mult_operator(&self, a: &[Rat]) -> RatMat {
        let n = self.dim;
        let mut m = RatMat::zeros(n, n);
        for j in 0..n {
            let col = self.mul_coords(a, &self.basis_element(j));
            for k in 0..n {
                m[(k, j)] = col[k].clone();
            }
        }
        m
    }

    /// The inverse of `a` when the multiplication operator is regular.
    pub fn try_inverse(&self, a: &[Rat]) -> Option<Vec<Rat>> {
        let l = self.mult_operator(a);
        let x = l.solve(&self.unit)?;
        debug_assert_eq!(self.mul_coords(a, &x), self.unit);
        Some(x)
    }

    /// Basis of the nilradical: the kernel of the trace form
    /// `(a, b) -> trace(L_{ab})`, which in characteristic zero is exactly
    /// the ideal of nilpotents.
    pub fn nilradical(&self) -> Result<Vec<Vec<Rat>>> {
        let report = self.verify_axioms();
        if !report.all_ok() {
            return Err(Error::AxiomViolation(
                report.failures.first().cloned().unwrap_or_default(),
            ));
        }
        Ok(self.nilradical_unchecked())
    }

    fn nilradical_unchecked(&self) -> Vec<Vec<Rat>> {
        let n = self.dim;
        // trace of each L_{b_k}
        let traces: Vec<Rat> = (0..n)
            .map(|k| {
                let mut t = Rat::zero();
                for j in 0..n {
                    t += &self.structure[k][j][j];
                }
                t
            })
            .collect();
        let mut gram = RatMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut v = Rat::zero();
                for k in 0..n {
                    if !self.structure[i][j][k].is_zero() {
                        v += &self.structure[i][j][k] * &traces[k];
                    }
                }
                gram[(i, j)] = v;
            }
        }
        let kernel = gram.nullspace();
        let basis = span_basis(&kernel);
        debug_assert!(basis.iter().all(|e| {
            let ln = self.element_pow(e, self.dim as u32);
            ln.iter().all(Rat::is_zero)
        }));
        basis
    }

    /// True iff the nilradical has codimension one; the residue field is
    /// then the rationals, so locality survives any base extension.
    pub fn is_geometrically_local(&self) -> Result<bool> {
        Ok(self.nilradical()?.len() + 1 == self.dim)
    }

    /// Span of pairwise products of two subspaces.
    fn mult_subspaces(&self, a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        let mut products = Vec::new();
        for u in a {
            for w in b {
                products.push(self.mul_coords(u, w));
            }
        }
        span_basis(&products)
    }

    /// Descending chain of powers of the nilradical, starting at `m^1`,
    /// ending with the last nonzero power.
    fn radical_powers(&self, radical: &[Vec<Rat>]) -> Vec<Vec<Vec<Rat>>> {
        let mut powers = Vec::new();
        let mut current = radical.to_vec();
        while !current.is_empty() {
            powers.push(current.clone());
            current = self.mult_subspaces(radical, &current);
        }
        powers
    }

    /// Annihilator dimension of a subspace.
    fn annihilator_dim(&self, subspace: &[Vec<Rat>]) -> usize {
        if subspace.is_empty() {
            return self.dim;
        }
        let mut rows = Vec::new();
        for s in subspace {
            let l = self.mult_operator(s);
            for i in 0..self.dim {
                rows.push(l.row(i).to_vec());
            }
        }
        RatMat::from_rows(rows).nullspace().len()
    }

    /// Hilbert function `dim m^i / m^{i+1}` of a local algebra.
    pub fn hilbert_function(&self) -> Result<Vec<usize>> {
        let radical = self.local_radical()?;
        let powers = self.radical_powers(&radical);
        let mut dims: Vec<usize> = vec![self.dim];
        dims.extend(powers.iter().map(Vec::len));
        dims.push(0);
        Ok(dims.windows(2).map(|w| w[0] - w[1]).collect())
    }

    fn local_radical(&self) -> Result<Vec<Vec<Rat>>> {
        let radical = self.nilradical()?;
        if radical.len() + 1 != self.dim {
            return Err(Error::NotLocal(format!(
                "nilradical has codimension {}",
                self.dim - radical.len()
            )));
        }
        Ok(radical)
    }

    /// All implemented isomorphism invariants of a local algebra.
    pub fn fingerprint(&self) -> Result<Fingerprint> {
        let radical = self.local_radical()?;
        let powers = self.radical_powers(&radical);
        let mut dims: Vec<usize> = vec![self.dim];
        dims.extend(powers.iter().map(Vec::len));
        dims.push(0);
        let hilbert: Vec<usize> = dims.windows(2).map(|w| w[0] - w[1]).collect();
        let socle_dim = self.annihilator_dim(&radical);
        let ann_filtration: Vec<usize> =
            powers.iter().map(|p| self.annihilator_dim(p)).collect();
        let embedding_dim = hilbert.get(1).copied().unwrap_or(0);
        Ok(Fingerprint {
            dim: self.dim,
            hilbert,
            socle_dim,
            ann_filtration,
            embedding_dim,
        })
    }

    /// First fingerprint field on which two local algebras differ; sound but
    /// deliberately one-sided.
    pub fn certify_nonisomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Comparison> {
        let fa = a.fingerprint()?;
        let fb = b.fingerprint()?;
        let sep = |invariant: &str, l: String, r: String| Comparison::Separation {
            invariant: invariant.to_string(),
            left: l,
            right: r,
        };
        if fa.dim != fb.dim {
            return Ok(sep("dim", fa.dim.to_string(), fb.dim.to_string()));
        }
        if fa.hilbert != fb.hilbert {
            return Ok(sep("hilbert", format!("{:?}", fa.hilbert), format!("{:?}", fb.hilbert)));
        }
        if fa.socle_dim != fb.socle_dim {
            return Ok(sep(
                "socle_dim",
                fa.socle_dim.to_string(),
                fb.socle_dim.to_string(),
            ));
        }
        if fa.ann_filtration != fb.ann_filtration {
            return Ok(sep(
                "ann_filtration",
                format!("{:?}", fa.ann_filtration),
                format!("{:?}", fb.ann_filtration),
            ));
        }
        if fa.embedding_dim != fb.embedding_dim {
            return Ok(sep(
                "embedding_dim",
                fa.embedding_dim.to_string(),
                fb.embedding_dim.to_string(),
            ));
        }
        Ok(Comparison::Inconclusive)
    }

    /// A local algebra is a chain (principal) algebra iff `dim m/m^2 <= 1`.
    pub fn is_chain(&self) -> Result<bool> {
        let radical = self.local_radical()?;
        let square = self.mult_subspaces(&radical, &radical);
        Ok(radical.len() - square.len() <= 1)
    }

    /// Number of unit-orbit classes: finite iff every local summand is a
    /// chain algebra, in which case summand of dimension `d` contributes a
    /// factor `d + 1`.
    pub fn orbit_count(&self) -> Result<OrbitCount> {
        let decomp = self.local_decomposition()?;
        let mut product: u64 = 1;
        for summand in &decomp.summands {
            if !summand.is_chain()? {
                return Ok(OrbitCount::Infinite);
            }
            product *= (summand.dim + 1) as u64;
        }
        Ok(OrbitCount::Finite(product))
    }

    /// True iff every nilpotent squares to zero, summand by summand.
    pub fn is_square_zero_radical(&self) -> Result<bool> {
        let decomp = self.local_decomposition()?;
        for summand in &decomp.summands {
            let radical = summand.nilradical()?;
            if !summand.mult_subspaces(&radical, &radical).is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One linear form per local summand; an element is invertible iff every
    /// form is nonzero on it. The vanishing loci are the hyperplanes whose
    /// union is the complement of the open orbit.
    pub fn unit_hyperplanes(&self) -> Result<Vec<Vec<Rat>>> {
        let decomp = self.local_decomposition()?;
        let mut forms = Vec::new();
        for (s, summand) in decomp.summands.iter().enumerate() {
            let basis = &decomp.summand_bases[s];
            let e = &decomp.idempotents[s];
            // dual vector of the unit against (unit, radical basis)
            let radical = summand.nilradical()?;
            let mut cols = vec![coords_in_basis(basis, e)];
            cols.extend(radical.iter().cloned());
            let m = RatMat::from_cols(cols);
            let m_inv = m.inverse().expect("unit and radical span the summand");
            let phi = m_inv.row(0).to_vec();
            let mut form = Vec::with_capacity(self.dim);
            for j in 0..self.dim {
                let prod = self.mul_coords(e, &self.basis_element(j));
                let local = coords_in_basis(basis, &prod);
                let mut v = Rat::zero();
                for (p, c) in phi.iter().zip(&local) {
                    v += p * c;
                }
                form.push(v);
            }
            forms.push(form);
        }
        Ok(forms)
    }

    /// Decompose into local summands through primitive orthogonal
    /// idempotents: split the semisimple quotient by factoring the minimal
    /// polynomial of a generic element, build idempotents by Lagrange
    /// interpolation, and lift them with the `3e^2 - 2e^3` iteration.
    pub fn local_decomposition(&self) -> Result<LocalDecomposition> {
        let radical = self.nilradical()?;
        let n = self.dim;
        if radical.len() + 1 == n {
            // already local
            return Ok(LocalDecomposition {
                idempotents: vec![self.unit.clone()],
                summand_bases: vec![(0..n).map(|i| self.basis_element(i)).collect()],
                summands: vec![self.clone()],
            });
        }
        let r = n - radical.len();
        let mut quotient = QuotientBySubspace::new(self, &radical);
        let roots = quotient.split_residue(r)?;

        // Lagrange idempotents in the quotient lifted to exact idempotents
        let u = quotient.lift(&quotient.generic);
        let mut idempotents = Vec::with_capacity(r);
        for (i, root_i) in roots.iter().enumerate() {
            let mut e = self.unit.clone();
            for (j, root_j) in roots.iter().enumerate() {
                if i == j {
                    continue;
                }
                // e *= (u - root_j) / (root_i - root_j)
                let mut shifted: Vec<Rat> =
                    u.iter().zip(&self.unit).map(|(a, b)| a - b * root_j).collect();
                let denom = root_i - root_j;
                for c in shifted.iter_mut() {
                    *c /= &denom;
                }
                e = self.mul_coords(&e, &shifted);
            }
            e = self.refine_idempotent(e)?;
            idempotents.push(e);
        }
        // orthogonality and completeness are forced by exactness
        for i in 0..idempotents.len() {
            for j in (i + 1)..idempotents.len() {
                let prod = self.mul_coords(&idempotents[i], &idempotents[j]);
                debug_assert!(prod.iter().all(Rat::is_zero));
            }
        }
        debug_assert_eq!(
            idempotents
                .iter()
                .fold(self.zero_element(), |acc, e| acc
                    .iter()
                    .zip(e)
                    .map(|(a, b)| a + b)
                    .collect()),
            self.unit
        );

        let mut summand_bases = Vec::with_capacity(r);
        let mut summands = Vec::with_capacity(r);
        let mut total = 0;
        for e in &idempotents {
            let images: Vec<Vec<Rat>> = (0..n)
                .map(|j| self.mul_coords(e, &self.basis_element(j)))
                .collect();
            let basis = span_basis(&images);
            total += basis.len();
            let k = basis.len();
            let mut structure = vec![vec![vec![Rat::zero(); k]; k]; k];
            for a in 0..k {
                for b in a..k {
                    let prod = self.mul_coords(&basis[a], &basis[b]);
                    let coords = coords_in_basis(&basis, &prod);
                    structure[a][b] = coords.clone();
                    structure[b][a] = coords;
                }
            }
            let unit = coords_in_basis(&basis, e);
            let labels = (0..k)
                .map(|t| {
                    standard_vector_index(&basis[t])
                        .map(|amb| self.basis_labels[amb].clone())
                        .unwrap_or_else(|| format!("v{}", t + 1))
                })
                .collect();
            let summand = FiniteAlgebra::from_raw_parts(labels, structure, unit);
            debug_assert!(summand.verify_axioms().all_ok());
            summand_bases.push(basis);
            summands.push(summand);
        }
        if total != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: total,
            });
        }
        Ok(LocalDecomposition {
            idempotents,
            summand_bases,
            summands,
        })
    }

    fn refine_idempotent(&self, mut e: Vec<Rat>) -> Result<Vec<Rat>> {
        let max_iter = (usize::BITS - self.dim.leading_zeros()) as usize + 2;
        for _ in 0..=max_iter {
            let e2 = self.mul_coords(&e, &e);
            if e2 == e {
                return Ok(e);
            }
            let e3 = self.mul_coords(&e2, &e);
            e = e2
                .iter()
                .zip(&e3)
                .map(|(a, b)| a * Rat::from_integer(3.into()) - b * Rat::from_integer(2.into()))
                .collect();
        }
        let e2 = self.mul_coords(&e, &e);
        if e2 == e {
            Ok(e)
        } else {
            Err(Error::ResidueFactorization(
                "idempotent refinement did not converge".into(),
            ))
        }
    }

    /// Coordinates of a basis monomial label such as `x1^2*x2`, obtained by
    /// multiplying variable basis vectors; `1` maps to the unit.
    pub fn monomial_coords(&self, label: &str) -> Result<Vec<Rat>> {
        let label = label.trim();
        if label == "1" {
            return Ok(self.unit.clone());
        }
        let index: BTreeMap<&str, usize> = self
            .basis_labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut out = self.unit.clone();
        for factor in label.split('*') {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: u32 = e.parse().map_err(|_| {
                        Error::InvalidBasis(format!("bad exponent in {factor:?}"))
                    })?;
                    (n.trim(), e)
                }
                None => (factor.trim(), 1),
            };
            let idx = *index.get(name).ok_or_else(|| {
                Error::InvalidBasis(format!("{name:?} is not a basis label"))
            })?;
            for _ in 0..exp {
                out = self.mul_coords(&out, &self.basis_element(idx));
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dto = AlgebraJson {
            dim: self.dim,
            basis: self.basis_labels.clone(),
            unit: self.unit.iter().map(format_rat).collect(),
            structure: self
                .structure
                .iter()
                .map(|pl| pl.iter().map(|row| row.iter().map(format_rat).collect()).collect())
                .collect(),
        };
        serde_json::to_value(dto).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<FiniteAlgebra> {
        let dto: AlgebraJson = serde_json::from_value(value.clone())?;
        let n = dto.dim;
        if dto.basis.len() != n || dto.unit.len() != n || dto.structure.len() != n {
            return Err(Error::InvalidInput(
                "algebra JSON fields disagree about the dimension".into(),
            ));
        }
        let mut structure = Vec::with_capacity(n);
        for plane in &dto.structure {
            if plane.len() != n {
                return Err(Error::InvalidInput("ragged structure tensor".into()));
            }
            let mut rows = Vec::with_capacity(n);
            for row in plane {
                if row.len() != n {
                    return Err(Error::InvalidInput("ragged structure tensor".into()));
                }
                rows.push(row.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?);
            }
            structure.push(rows);
        }
        let unit = dto
            .unit
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteAlgebra::from_raw_parts(dto.basis, structure, unit))
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    dim: usize,
    basis: Vec<String>,
    unit: Vec<String>,
    structure: Vec<Vec<Vec<String>>>,
}

/// Coordinates of a vector in a row-reduced basis: read off the pivot
/// columns.
fn coords_in_basis(basis: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    let pivots: Vec<usize> = basis
        .iter()
        .map(|row| row.iter().position(|c| !c.is_zero()).expect("nonzero row"))
        .collect();
    let coords: Vec<Rat> = pivots.iter().map(|&p| v[p].clone()).collect();
    #[cfg(debug_assertions)]
    {
        let mut rebuilt = vec![Rat::zero(); v.len()];
        for (c, row) in coords.iter().zip(basis) {
            for (t, x) in row.iter().enumerate() {
                rebuilt[t] += c * x;
            }
        }
        debug_assert_eq!(rebuilt, v, "vector outside the subspace");
    }
    coords
}

fn standard_vector_index(v: &[Rat]) -> Option<usize> {
    let mut idx = None;
    for (i, c) in v.iter().enumerate() {
        if c.is_one() {
            if idx.is_some() {
                return None;
            }
            idx = Some(i);
        } else if !c.is_zero() {
            return None;
        }
    }
    idx
}

/// The quotient of an algebra by a subspace spanned by row-reduced vectors
/// (used for `A / nilradical`).
struct QuotientBySubspace {
    ambient_dim: usize,
    complement: Vec<usize>,
    algebra: FiniteAlgebra,
    generic: Vec<Rat>,
}

impl QuotientBySubspace {
    fn new(parent: &FiniteAlgebra, subspace: &[Vec<Rat>]) -> QuotientBySubspace {
        let n = parent.dim;
        let rows = subspace.to_vec();
        let pivots: Vec<usize> = rows
            .iter()
            .map(|row| row.iter().position(|c| !c.is_zero()).expect("nonzero row"))
            .collect();
        let complement: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let r = complement.len();
        let project = |v: &[Rat]| -> Vec<Rat> {
            let mut w = v.to_vec();
            for (row, &p) in rows.iter().zip(&pivots) {
                if w[p].is_zero() {
                    continue;
                }
                let f = w[p].clone();
                for (t, x) in row.iter().enumerate() {
                    let val = &w[t] - &f * x;
                    w[t] = val;
                }
            }
            complement.iter().map(|&i| w[i].clone()).collect()
        };
        let lift = |coords: &[Rat]| -> Vec<Rat> {
            let mut v = vec![Rat::zero(); n];
            for (&i, c) in complement.iter().zip(coords) {
                v[i] = c.clone();
            }
            v
        };
        let mut structure = vec![vec![vec![Rat::zero(); r]; r]; r];
        for a in 0..r {
            for b in a..r {
                let va = lift(&unit_vector(r, a));
                let vb = lift(&unit_vector(r, b));
                let coords = project(&parent.mul_coords(&va, &vb));
                structure[a][b] = coords.clone();
                structure[b][a] = coords;
            }
        }
        let unit = project(&parent.unit);
        let labels = (0..r).map(|i| format!("q{}", i + 1)).collect();
        let algebra = FiniteAlgebra::from_raw_parts(labels, structure, unit);
        QuotientBySubspace {
            ambient_dim: n,
            complement,
            algebra,
            generic: Vec::new(),
        }
    }

    fn lift(&self, coords: &[Rat]) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.ambient_dim];
        for (&i, c) in self.complement.iter().zip(coords) {
            v[i] = c.clone();
        }
        v
    }

    /// Split the (reduced) quotient into `r` one-dimensional pieces over the
    /// rationals: find a generic element whose minimal polynomial has degree
    /// `r`, then collect its rational roots. Stores the successful generic
    /// element for lifting.
    fn split_residue(&mut self, r: usize) -> Result<Vec<Rat>> {
        let mut attempt = 0u64;
        loop {
            let weights: Vec<Rat> = if attempt == 0 {
                (0..r)
                    .map(|i| Rat::from_integer(BigInt::from(1i64 << i.min(50))))
                    .collect()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(attempt);
                (0..r)
                    .map(|_| Rat::from_integer(BigInt::from(rng.gen_range(-50i64..=50))))
                    .collect()
            };
            let u = weights;
            let minpoly = self.algebra.minimal_polynomial(&u);
            if minpoly.len() == r + 1 && unipoly_is_squarefree(&minpoly) {
                let roots = rational_roots(&minpoly)?;
                if roots.len() == r {
                    self.generic = u;
                    return Ok(roots);
                }
                return Err(Error::NonSplitResidue(format!(
                    "minimal polynomial of degree {} has only {} rational roots",
                    r,
                    roots.len()
                )));
            }
            attempt += 1;
            if attempt > 8 {
                return Err(Error::ResidueFactorization(
                    "no generic element found after 8 attempts".into(),
                ));
            }
        }
    }
}

fn unit_vector(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

impl FiniteAlgebra {
    /// Monic minimal polynomial of an element, ascending coefficients.
    fn minimal_polynomial(&self, a: &[Rat]) -> Vec<Rat> {
        let mut krylov: Vec<Vec<Rat>> = vec![self.unit.clone()];
        loop {
            let next = self.mul_coords(krylov.last().expect("nonempty"), a);
            // try to solve: next = sum c_i krylov[i]
            let m = RatMat::from_cols(krylov.clone());
            if let Some(coeffs) = m.solve(&next) {
                let mut poly: Vec<Rat> = coeffs.into_iter().map(|c| -c).collect();
                poly.push(Rat::one());
                return poly;
            }
            krylov.push(next);
        }
    }
}

/// Derivative of a univariate polynomial given by ascending coefficients.
fn unipoly_derivative(f: &[Rat]) -> Vec<Rat> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
        .collect()
}

fn unipoly_trim(mut f: Vec<Rat>) -> Vec<Rat> {
    while f.last().is_some_and(Rat::is_zero) {
        f.pop();
    }
    f
}

/// Remainder of univariate division.
fn unipoly_rem(f: &[Rat], g: &[Rat]) -> Vec<Rat> {
    let g = unipoly_trim(g.to_vec());
    assert!(!g.is_empty(), "division by zero polynomial");
    let mut r = unipoly_trim(f.to_vec());
    let dg = g.len() - 1;
    let lead = g.last().expect("nonzero").clone();
    while r.len() > dg {
        let factor = r.last().expect("nonzero") / &lead;
        let shift = r.len() - 1 - dg;
        for (i, gc) in g.iter().enumerate() {
            let v = &r[shift + i] - &factor * gc;
            r[shift + i] = v;
        }
        r = unipoly_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn unipoly_gcd(f: &[Rat], g: &[Rat]) -> Vec<Rat> {
    let mut a = unipoly_trim(f.to_vec());
    let mut b = unipoly_trim(g.to_vec());
    while !b.is_empty() {
        let r = unipoly_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &lead;
        }
    }
    a
}

fn unipoly_is_squarefree(f: &[Rat]) -> bool {
    unipoly_gcd(f, &unipoly_derivative(f)).len() <= 1
}

fn unipoly_eval(f: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Positive divisors by trial division, with an iteration cap so pathological
/// inputs fail loudly instead of spinning.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Err(Error::ResidueFactorization("divisors of zero".into()));
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    let mut steps = 0u64;
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
        steps += 1;
        if steps > 2_000_000 {
            return Err(Error::ResidueFactorization(format!(
                "constant term {n} too large to factor by trial division"
            )));
        }
    }
    out.sort();
    Ok(out)
}

/// All rational roots of a univariate polynomial (ascending coefficients),
/// sorted ascending, via the rational root theorem.
fn rational_roots(f: &[Rat]) -> Result<Vec<Rat>> {
    let mut f = unipoly_trim(f.to_vec());
    if f.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    // factor out powers of X
    if f[0].is_zero() {
        roots.push(Rat::zero());
        while f[0].is_zero() {
            f.remove(0);
        }
        if f.len() <= 1 {
            roots.sort();
            return Ok(roots);
        }
    }
    // clear denominators
    let mut denom_lcm = BigInt::one();
    for c in &f {
        denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = f
        .iter()
        .map(|c| {
            let scaled = c * Rat::from_integer(denom_lcm.clone());
            debug_assert!(scaled.denom().is_one());
            scaled.numer().clone()
        })
        .collect();
    let a0 = ints.first().expect("nonzero constant term").clone();
    let an = ints.last().expect("leading coefficient").clone();
    let ps = divisors(&a0)?;
    let qs = divisors(&an)?;
    for p in &ps {
        for q in &qs {
            for sign in [1i64, -1] {
                let cand = Rat::new(p * BigInt::from(sign), q.clone());
                if unipoly_eval(&f, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

impl OrbitCount {
    pub fn as_finite(&self) -> Option<u64> {
        match self {
            OrbitCount::Finite(k) => Some(*k),
            OrbitCount::Infinite => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::present::{parse_presentation, table_entry};
    use crate::rat::{rat, rat_int};

    fn algebra(text: &str) -> FiniteAlgebra {
        FiniteAlgebra::from_quotient(&parse_presentation(text).unwrap()).unwrap()
    }

    fn entry(k: u32) -> FiniteAlgebra {
        FiniteAlgebra::from_quotient(&table_entry(k).unwrap().presentation).unwrap()
    }

    #[test]
    fn entry_2_structure() {
        let a = entry(2);
        assert_eq!(a.dim(), 2);
        // x1 * x1 = 0
        let x1 = a.basis_element(1);
        assert_eq!(a.mul_coords(&x1, &x1), a.zero_element());
        assert_eq!(a.basis_labels(), &["1".to_string(), "x1".to_string()]);
    }

    #[test]
    fn entry_20_products() {
        let a = entry(20);
        assert_eq!(a.dim(), 6);
        // basis: 1, x1, x2, x1^2, x2^2, x2^3
        let x1 = a.monomial_coords("x1").unwrap();
        let x2 = a.monomial_coords("x2").unwrap();
        assert_eq!(a.mul_coords(&x1, &x2), a.zero_element());
        // x1^2 * x1 = x1^3 = x2^3 in the quotient
        let x1sq = a.monomial_coords("x1^2").unwrap();
        let cube = a.mul_coords(&x1sq, &x1);
        assert_eq!(cube, a.monomial_coords("x2^3").unwrap());
    }

    #[test]
    fn entry_1_trivial() {
        let a = entry(1);
        assert_eq!(a.dim(), 1);
        assert_eq!(a.unit(), &[rat_int(1)]);
    }

    #[test]
    fn axioms_pass_on_table_and_fail_on_injected_defects() {
        let a = entry(4);
        assert!(a.verify_axioms().all_ok());

        // non-symmetric structure tensor
        let mut bad = a.clone();
        bad.structure[0][1][0] += rat_int(1);
        let report = bad.verify_axioms();
        assert!(!report.commutativity);

        // zeroed unit vector
        let mut bad = a.clone();
        bad.unit = bad.zero_element();
        let report = bad.verify_axioms();
        assert!(!report.unit);
    }

    #[test]
    fn mult_operator_examples() {
        let a = entry(2);
        assert!(a.mult_operator(a.unit()).is_identity());
        let x1 = a.basis_element(1);
        let l = a.mult_operator(&x1);
        assert_eq!(l[(0, 0)], rat_int(0));
        assert_eq!(l[(1, 0)], rat_int(1));
        assert_eq!(l[(0, 1)], rat_int(0));
        assert_eq!(l[(1, 1)], rat_int(0));
    }

    #[test]
    fn mult_operators_commute() {
        let a = entry(20);
        let u = vec![rat_int(1), rat_int(2), rat_int(-1), rat(1, 2), rat_int(0), rat_int(3)];
        let w = vec![rat_int(0), rat_int(1), rat_int(4), rat_int(-2), rat(2, 3), rat_int(1)];
        let lu = a.mult_operator(&u);
        let lw = a.mult_operator(&w);
        assert_eq!(lu.mul(&lw), lw.mul(&lu));
        // linear in a
        let sum: Vec<Rat> = u.iter().zip(&w).map(|(x, y)| x + y).collect();
        assert_eq!(a.mult_operator(&sum), lu.add(&lw));
    }

    #[test]
    fn inverse_geometric_series() {
        let a = entry(2);
        // (1 + x1)^-1 = 1 - x1
        let u = vec![rat_int(1), rat_int(1)];
        let inv = a.try_inverse(&u).unwrap();
        assert_eq!(inv, vec![rat_int(1), rat_int(-1)]);
        // x1 is nilpotent, hence not invertible
        assert!(a.try_inverse(&a.basis_element(1)).is_none());
        // 1^-1 = 1
        assert_eq!(a.try_inverse(a.unit()).unwrap(), a.unit().to_vec());
    }

    #[test]
    fn nilradical_examples() {
        let a = entry(2);
        let rad = a.nilradical().unwrap();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0], vec![rat_int(0), rat_int(1)]);

        let kk = FiniteAlgebra::direct_sum(&[entry(1), entry(1)]).unwrap();
        assert!(kk.nilradical().unwrap().is_empty());

        let a20 = entry(20);
        assert_eq!(a20.nilradical().unwrap().len(), 5);
    }

    #[test]
    fn geometric_locality() {
        for e in crate::present::load_table() {
            let a = FiniteAlgebra::from_quotient(&e.presentation).unwrap();
            assert!(
                a.is_geometrically_local().unwrap(),
                "row {} must be local",
                e.index
            );
        }
        let kk = FiniteAlgebra::direct_sum(&[entry(1), entry(1)]).unwrap();
        assert!(!kk.is_geometrically_local().unwrap());
        // splits as K + K over the rationals
        let split = algebra("K[x1]/(x1^2-1)");
        assert!(!split.is_geometrically_local().unwrap());
        assert!(split.nilradical().unwrap().is_empty());
    }

    #[test]
    fn direct_sum_shapes() {
        let s = FiniteAlgebra::direct_sum(&[entry(2), entry(1)]).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s.nilradical().unwrap().len(), 1);
        assert!(FiniteAlgebra::direct_sum(&[]).is_err());
        let r = FiniteAlgebra::direct_sum(&[entry(1), entry(1), entry(1)]).unwrap();
        let d = r.local_decomposition().unwrap();
        assert_eq!(d.summands.len(), 3);
        for e in &d.idempotents {
            assert_eq!(r.mul_coords(e, e), *e);
        }
    }

    #[test]
    fn local_decomposition_of_local_algebra_is_trivial() {
        let a = entry(20);
        let d = a.local_decomposition().unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.idempotents[0], a.unit().to_vec());
    }

    #[test]
    fn local_decomposition_of_block_sum() {
        let a = FiniteAlgebra::direct_sum(&[entry(2), entry(3)]).unwrap();
        let d = a.local_decomposition().unwrap();
        let mut dims: Vec<usize> = d.summands.iter().map(|s| s.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![2, 3]);
        // idempotents are the block units
        for e in &d.idempotents {
            assert_eq!(a.mul_coords(e, e), *e);
        }
        let sum: Vec<Rat> = d.idempotents.iter().fold(a.zero_element(), |acc, e| {
            acc.iter().zip(e).map(|(x, y)| x + y).collect()
        });
        assert_eq!(sum, a.unit().to_vec());
    }

    #[test]
    fn decomposition_round_trips_through_direct_sum() {
        let a = FiniteAlgebra::direct_sum(&[entry(3), entry(2)]).unwrap();
        let d = a.local_decomposition().unwrap();
        let rebuilt = FiniteAlgebra::direct_sum(&d.summands).unwrap();
        // the map sending the adapted basis to the rebuilt basis must be an
        // algebra isomorphism: check products of all adapted basis pairs
        let mut adapted: Vec<Vec<Rat>> = Vec::new();
        for basis in &d.summand_bases {
            adapted.extend(basis.iter().cloned());
        }
        let n = a.dim();
        assert_eq!(adapted.len(), n);
        let to_rebuilt = |v: &[Rat]| -> Vec<Rat> {
            // coordinates of v in the adapted basis = coordinates in rebuilt
            let m = RatMat::from_cols(adapted.clone());
            m.solve(v).expect("adapted basis spans")
        };
        for i in 0..n {
            for j in 0..n {
                let prod = a.mul_coords(&adapted[i], &adapted[j]);
                let lhs = to_rebuilt(&prod);
                let rhs = rebuilt.mul_coords(&to_rebuilt(&adapted[i]), &to_rebuilt(&adapted[j]));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn non_split_residue_detected() {
        let a = algebra("K[x1]/(x1^2+1)");
        assert!(matches!(
            a.local_decomposition(),
            Err(Error::NonSplitResidue(_))
        ));
    }

    #[test]
    fn split_residue_over_rationals() {
        let a = algebra("K[x1]/(x1^2-1)");
        let d = a.local_decomposition().unwrap();
        assert_eq!(d.summands.len(), 2);
        assert!(d.summands.iter().all(|s| s.dim() == 1));
    }

    #[test]
    fn hilbert_functions() {
        assert_eq!(entry(20).hilbert_function().unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(entry(18).hilbert_function().unwrap(), vec![1, 1, 1, 1, 1, 1]);
        assert_eq!(entry(42).hilbert_function().unwrap(), vec![1, 5]);
        assert_eq!(entry(1).hilbert_function().unwrap(), vec![1]);
    }

    #[test]
    fn fingerprints() {
        let f3 = entry(3).fingerprint().unwrap();
        assert_eq!(f3.dim, 3);
        assert_eq!(f3.hilbert, vec![1, 1, 1]);
        assert_eq!(f3.socle_dim, 1);

        let f4 = entry(4).fingerprint().unwrap();
        assert_eq!(f4.hilbert, vec![1, 2]);
        assert_eq!(f4.socle_dim, 2);

        let f1 = entry(1).fingerprint().unwrap();
        assert_eq!(f1.dim, 1);
        assert_eq!(f1.hilbert, vec![1]);
        // socle of K is the whole algebra
        assert_eq!(f1.socle_dim, 1);
    }

    #[test]
    fn fingerprint_is_basis_permutation_invariant() {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in [4u32, 13, 20, 38] {
            let a = entry(k);
            let n = a.dim();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let cols: Vec<Vec<Rat>> = perm.iter().map(|&i| a.basis_element(i)).collect();
            let labels = perm.iter().map(|&i| a.basis_labels()[i].clone()).collect();
            let shuffled = a.rebase(&cols, labels).unwrap();
            assert_eq!(
                a.fingerprint().unwrap(),
                shuffled.fingerprint().unwrap(),
                "row {k}"
            );
        }
    }

    #[test]
    fn certify_separates_3_and_4() {
        let c = FiniteAlgebra::certify_nonisomorphic(&entry(3), &entry(4)).unwrap();
        match c {
            Comparison::Separation { invariant, left, right } => {
                assert_eq!(invariant, "hilbert");
                assert_eq!(left, "[1, 1, 1]");
                assert_eq!(right, "[1, 2]");
            }
            Comparison::Inconclusive => panic!("expected separation"),
        }
        let same = FiniteAlgebra::certify_nonisomorphic(&entry(20), &entry(20)).unwrap();
        assert_eq!(same, Comparison::Inconclusive);
    }

    #[test]
    fn chain_detection() {
        assert!(entry(18).is_chain().unwrap());
        assert!(!entry(20).is_chain().unwrap());
        assert!(entry(1).is_chain().unwrap());
    }

    #[test]
    fn orbit_counts() {
        // classes of K[x]/(x^3): 0, units, units*x, units*x^2
        let a = algebra("K[x1]/(x1^3)");
        assert_eq!(a.orbit_count().unwrap(), OrbitCount::Finite(4));
        assert_eq!(entry(1).orbit_count().unwrap(), OrbitCount::Finite(2));
        assert_eq!(entry(4).orbit_count().unwrap(), OrbitCount::Infinite);
        let s = FiniteAlgebra::direct_sum(&[algebra("K[x1]/(x1^2)"), entry(1)]).unwrap();
        assert_eq!(s.orbit_count().unwrap(), OrbitCount::Finite(6));
    }

    #[test]
    fn square_zero_radical() {
        assert!(entry(42).is_square_zero_radical().unwrap());
        assert!(!entry(3).is_square_zero_radical().unwrap());
        assert!(entry(1).is_square_zero_radical().unwrap());
    }

    #[test]
    fn unit_hyperplanes_examples() {
        let a = entry(2);
        let forms = a.unit_hyperplanes().unwrap();
        assert_eq!(forms, vec![vec![rat_int(1), rat_int(0)]]);

        let s = FiniteAlgebra::direct_sum(&[entry(2), entry(1)]).unwrap();
        let forms = s.unit_hyperplanes().unwrap();
        assert_eq!(forms.len(), 2);
        let mut sorted = forms.clone();
        sorted.sort();
        assert_eq!(
            sorted,
            vec![
                vec![rat_int(0), rat_int(0), rat_int(1)],
                vec![rat_int(1), rat_int(0), rat_int(0)],
            ]
        );

        let k = entry(1);
        assert_eq!(k.unit_hyperplanes().unwrap(), vec![vec![rat_int(1)]]);
    }

    #[test]
    fn invertible_iff_all_hyperplane_forms_nonzero() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for alg in [
            entry(20),
            FiniteAlgebra::direct_sum(&[entry(2), entry(3)]).unwrap(),
            algebra("K[x1]/(x1^2-1)"),
        ] {
            let forms = alg.unit_hyperplanes().unwrap();
            for _ in 0..40 {
                let v: Vec<Rat> = (0..alg.dim())
                    .map(|_| rat_int(rng.gen_range(-3i64..=3)))
                    .collect();
                let all_nonzero = forms.iter().all(|f| {
                    let mut s = Rat::zero();
                    for (a, b) in f.iter().zip(&v) {
                        s += a * b;
                    }
                    !s.is_zero()
                });
                assert_eq!(alg.try_inverse(&v).is_some(), all_nonzero);
            }
        }
    }

    #[test]
    fn radical_elements_nilpotent_nonradical_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = entry(13);
        let rad = a.nilradical().unwrap();
        for e in &rad {
            let p = a.element_pow(e, a.dim() as u32);
            assert!(p.iter().all(Rat::is_zero));
        }
        // random elements of a local algebra: invertible iff nonzero
        // constant part against the radical complement
        for _ in 0..30 {
            let v: Vec<Rat> = (0..a.dim())
                .map(|_| rat_int(rng.gen_range(-3i64..=3)))
                .collect();
            let forms = a.unit_hyperplanes().unwrap();
            let mut s = Rat::zero();
            for (x, y) in forms[0].iter().zip(&v) {
                s += x * y;
            }
            assert_eq!(a.try_inverse(&v).is_some(), !s.is_zero());
        }
    }

    #[test]
    fn json_round_trip() {
        let a = entry(10);
        let j = a.to_json();
        let b = FiniteAlgebra::from_json(&j).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn minimal_polynomial_and_roots() {
        let a = algebra("K[x1]/(x1^2-1)");
        // u = 1 + 2x: minimal polynomial X^2 - 2X - 3 with roots -1, 3
        let u = vec![rat_int(1), rat_int(2)];
        let mp = a.minimal_polynomial(&u);
        assert_eq!(mp, vec![rat_int(-3), rat_int(-2), rat_int(1)]);
        assert_eq!(
            rational_roots(&mp).unwrap(),
            vec![rat_int(-1), rat_int(3)]
        );
        // x^2 + 1 has no rational roots
        assert!(rational_roots(&[rat_int(1), rat_int(0), rat_int(1)])
            .unwrap()
            .is_empty());
        // squarefree detection
        assert!(unipoly_is_squarefree(&[rat_int(-1), rat_int(0), rat_int(1)]));
        assert!(!unipoly_is_squarefree(&[
            rat_int(1),
            rat_int(2),
            rat_int(1)
        ]));
    }
}
