//! The module-to-algebra direction: prehomogeneity checks for commuting
//! matrix families, commutant computation, associative hulls, and the
//! reconstruction of the algebra structure from a cyclic vector.
//!
//! For a commutative group with an open orbit the commutant of its Lie
//! algebra has dimension `n` and acts simply transitively through any point
//! `v` of the open orbit; defining `u * w := X_u X_w v`, where `X_u` is the
//! unique commutant element with `X_u v = u`, recovers the algebra with unit
//! `v`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{span_basis, RatMat};
use crate::rat::{format_rat, parse_rat, Rat};

/// A commuting family of square matrices spanning the Lie algebra of a
/// commutative matrix group, with an optional base vector.
#[derive(Debug, Clone)]
pub struct MatrixGroupInput {
    pub n: usize,
    pub lie_basis: Vec<RatMat>,
    pub base_point: Option<Vec<Rat>>,
}

/// Output of [`reconstruct_algebra`]: the algebra on the module, the
/// operators realizing each basis vector inside the commutant, and the base
/// vector that witnessed cyclicity.
#[derive(Debug, Clone)]
pub struct ReconstructedAlgebra {
    pub algebra: FiniteAlgebra,
    pub operator_of_basis: Vec<RatMat>,
    pub witness: Vec<Rat>,
}

impl MatrixGroupInput {
    pub fn new(n: usize, lie_basis: Vec<RatMat>, base_point: Option<Vec<Rat>>) -> Result<Self> {
        for m in &lie_basis {
            if m.rows != n || m.cols != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.rows.max(m.cols),
                });
            }
        }
        if let Some(v) = &base_point {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        Ok(MatrixGroupInput {
            n,
            lie_basis,
            base_point,
        })
    }

    /// Do all pairs of the family commute?
    pub fn check_commutative(&self) -> bool {
        for (i, a) in self.lie_basis.iter().enumerate() {
            for b in self.lie_basis.iter().skip(i + 1) {
                if a.mul(b) != b.mul(a) {
                    return false;
                }
            }
        }
        true
    }

    /// Are the family members linearly independent?
    pub fn is_linearly_independent(&self) -> bool {
        let rows: Vec<Vec<Rat>> = self.lie_basis.iter().map(RatMat::flatten).collect();
        if rows.is_empty() {
            return true;
        }
        RatMat::from_rows(rows).rank() == self.lie_basis.len()
    }

    /// Rank of the span `{X v : X in lie_basis}` — the infinitesimal orbit
    /// dimension at `v`.
    pub fn infinitesimal_orbit_rank(&self, v: &[Rat]) -> usize {
        let rows: Vec<Vec<Rat>> = self.lie_basis.iter().map(|m| m.mul_vec(v)).collect();
        if rows.is_empty() {
            return 0;
        }
        RatMat::from_rows(rows).rank()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dto = InputJson {
            n: self.n,
            lie_basis: self
                .lie_basis
                .iter()
                .map(|m| {
                    (0..m.rows)
                        .map(|i| m.row(i).iter().map(format_rat).collect())
                        .collect()
                })
                .collect(),
            base_point: self
                .base_point
                .as_ref()
                .map(|v| v.iter().map(format_rat).collect()),
        };
        serde_json::to_value(dto).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<MatrixGroupInput> {
        let dto: InputJson = serde_json::from_value(value.clone())?;
        let mut lie_basis = Vec::with_capacity(dto.lie_basis.len());
        for m in &dto.lie_basis {
            let mut rows = Vec::with_capacity(m.len());
            for row in m {
                rows.push(
                    row.iter()
                        .map(|s| parse_rat(s))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            if rows.len() != dto.n || rows.iter().any(|r| r.len() != dto.n) {
                return Err(Error::DimensionMismatch {
                    expected: dto.n,
                    found: rows.len(),
                });
            }
            lie_basis.push(RatMat::from_rows(rows));
        }
        let base_point = match &dto.base_point {
            Some(v) => Some(
                v.iter()
                    .map(|s| parse_rat(s))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        MatrixGroupInput::new(dto.n, lie_basis, base_point)
    }
}

#[derive(Serialize, Deserialize)]
struct InputJson {
    n: usize,
    lie_basis: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    base_point: Option<Vec<String>>,
}

/// Basis of `{X : XM = MX for all M in the family}`, by one exact linear
/// solve in the `n^2` matrix entries.
pub fn commutant(input: &MatrixGroupInput) -> Vec<RatMat> {
    let n = input.n;
    if input.lie_basis.is_empty() {
        return (0..n * n)
            .map(|t| {
                let mut m = RatMat::zeros(n, n);
                m[(t / n, t % n)] = Rat::from_integer(1.into());
                m
            })
            .collect();
    }
    // unknowns x_{ij}; for each family member M: (XM - MX)_{ik} = 0
    let mut rows = Vec::new();
    for m in &input.lie_basis {
        for i in 0..n {
            for k in 0..n {
                let mut row = vec![Rat::zero(); n * n];
                // sum_j x_{ij} m_{jk} - m_{ij} x_{jk}
                for j in 0..n {
                    row[i * n + j] += &m[(j, k)];
                    row[j * n + k] -= &m[(i, j)];
                }
                rows.push(row);
            }
        }
    }
    let system = RatMat::from_rows(rows);
    system
        .nullspace()
        .into_iter()
        .map(|flat| RatMat::from_flat(n, n, flat))
        .collect()
}

/// Basis of the smallest unital matrix algebra containing the family: close
/// the span of `{I} ∪ family` under products until it stabilizes.
pub fn associative_hull(input: &MatrixGroupInput) -> Vec<RatMat> {
    let n = input.n;
    let mut vectors: Vec<Vec<Rat>> = vec![RatMat::identity(n).flatten()];
    vectors.extend(input.lie_basis.iter().map(RatMat::flatten));
    let mut basis = span_basis(&vectors);
    loop {
        let mats: Vec<RatMat> = basis
            .iter()
            .map(|f| RatMat::from_flat(n, n, f.clone()))
            .collect();
        let mut extended = basis.clone();
        for a in &mats {
            for b in &mats {
                extended.push(a.mul(b).flatten());
            }
        }
        let closed = span_basis(&extended);
        if closed.len() == basis.len() {
            return mats;
        }
        basis = closed;
    }
}

/// Reconstruct the algebra from the commutant at a cyclic vector `v`.
pub fn reconstruct_algebra(
    input: &MatrixGroupInput,
    v: &[Rat],
) -> Result<ReconstructedAlgebra> {
    let n = input.n;
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    let comm = commutant(input);
    if comm.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: comm.len(),
        });
    }
    for (i, a) in comm.iter().enumerate() {
        for b in comm.iter().skip(i + 1) {
            if a.mul(b) != b.mul(a) {
                return Err(Error::NonCommutativeCommutant);
            }
        }
    }
    // evaluation map C -> V, X -> Xv
    let eval = RatMat::from_cols(comm.iter().map(|m| m.mul_vec(v)).collect());
    let eval_inv = match eval.inverse() {
        Some(inv) => inv,
        None => {
            debug_assert!(eval.det().is_zero());
            return Err(Error::NotCyclic);
        }
    };
    // X_{e_i}: the commutant element hitting the i-th standard basis vector
    let mut operator_of_basis = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::from_integer(1.into());
        let coeffs = eval_inv.mul_vec(&e);
        let mut x = RatMat::zeros(n, n);
        for (c, m) in coeffs.iter().zip(&comm) {
            if !c.is_zero() {
                x = x.add(&m.scale(c));
            }
        }
        debug_assert_eq!(x.mul_vec(v), e);
        operator_of_basis.push(x);
    }
    // structure constants: b_i * b_j = X_i X_j v = X_i e_j = column j of X_i
    let mut structure = vec![vec![vec![Rat::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            structure[i][j] = operator_of_basis[i].col(j);
        }
    }
    let labels = (1..=n).map(|i| format!("b{i}")).collect();
    let algebra = FiniteAlgebra::from_raw_parts(labels, structure, v.to_vec());
    let report = algebra.verify_axioms();
    if !report.all_ok() {
        return Err(Error::AxiomViolation(
            report.failures.first().cloned().unwrap_or_default(),
        ));
    }
    Ok(ReconstructedAlgebra {
        algebra,
        operator_of_basis,
        witness: v.to_vec(),
    })
}

/// Find a point with full orbit rank: the base point if given, else seeded
/// random integer vectors with entries in `[-9, 9]`, up to 5 retries.
pub fn orbit_certificate(input: &MatrixGroupInput, seed: u64) -> Result<(Vec<Rat>, usize)> {
    if let Some(v) = &input.base_point {
        let rank = input.infinitesimal_orbit_rank(v);
        if rank == input.n {
            return Ok((v.clone(), rank));
        }
        return Err(Error::NoOpenOrbit);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Vec<Rat>, usize)> = None;
    for _ in 0..5 {
        let v: Vec<Rat> = (0..input.n)
            .map(|_| Rat::from_integer(rng.gen_range(-9i64..=9).into()))
            .collect();
        let rank = input.infinitesimal_orbit_rank(&v);
        if rank == input.n {
            return Ok((v, rank));
        }
        if best.as_ref().is_none_or(|(_, r)| rank > *r) {
            best = Some((v, rank));
        }
    }
    Err(Error::NoOpenOrbit)
}

/// The block example of a faithful module smaller than its group: matrices
/// `[[l E, A], [0, l E]]` on `K^{2n}`, whose Lie algebra is spanned by the
/// identity and the `n^2` upper-right blocks.
pub fn polex_lie_basis(n: usize) -> MatrixGroupInput {
    let dim = 2 * n;
    let mut basis = vec![RatMat::identity(dim)];
    for i in 0..n {
        for j in 0..n {
            let mut m = RatMat::zeros(dim, dim);
            m[(i, n + j)] = Rat::from_integer(1.into());
            basis.push(m);
        }
    }
    MatrixGroupInput::new(dim, basis, None).expect("square matrices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::present::table_entry;
    use crate::rat::rat_int;
    use crate::rep::matrix_rep;

    fn entry(k: u32) -> FiniteAlgebra {
        FiniteAlgebra::from_quotient(&table_entry(k).unwrap().presentation).unwrap()
    }

    fn regular_rep_input(alg: &FiniteAlgebra) -> MatrixGroupInput {
        let rep = matrix_rep(alg, None).unwrap();
        MatrixGroupInput::new(alg.dim(), rep.lie_algebra_basis(), None).unwrap()
    }

    #[test]
    fn commutativity_checks() {
        let n = RatMat::from_rows(vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(1), rat_int(0)],
        ]);
        let input =
            MatrixGroupInput::new(2, vec![RatMat::identity(2), n], None).unwrap();
        assert!(input.check_commutative());

        // explicit non-commuting fixture
        let a = RatMat::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(3), rat_int(4)],
        ]);
        let b = RatMat::from_rows(vec![
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ]);
        let bad = MatrixGroupInput::new(2, vec![a, b], None).unwrap();
        assert!(!bad.check_commutative());

        assert!(polex_lie_basis(2).check_commutative());
        assert!(polex_lie_basis(3).check_commutative());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let wrong = RatMat::identity(3);
        assert!(matches!(
            MatrixGroupInput::new(2, vec![wrong], None),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn orbit_rank_examples() {
        // regular rep of entry 2 at the unit: rank 2
        let alg = entry(2);
        let input = regular_rep_input(&alg);
        assert_eq!(input.infinitesimal_orbit_rank(&alg.unit().to_vec()), 2);

        // polex: orbit rank n+1 at a generic point, far below n^2+1
        for n in [2usize, 3] {
            let input = polex_lie_basis(n);
            assert_eq!(input.lie_basis.len(), n * n + 1);
            assert!(input.is_linearly_independent());
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let v: Vec<Rat> = (0..2 * n)
                .map(|_| Rat::from_integer(rng.gen_range(1i64..=9).into()))
                .collect();
            assert_eq!(input.infinitesimal_orbit_rank(&v), n + 1);
        }
    }

    #[test]
    fn commutant_sizes() {
        // commutant of {I} is everything
        let input = MatrixGroupInput::new(3, vec![RatMat::identity(3)], None).unwrap();
        assert_eq!(commutant(&input).len(), 9);

        // commutant of the entry-2 regular rep is 2-dimensional
        let alg = entry(2);
        let input = regular_rep_input(&alg);
        let c = commutant(&input);
        assert_eq!(c.len(), 2);
        for m in &c {
            for l in &input.lie_basis {
                assert_eq!(m.mul(l), l.mul(m));
            }
        }
    }

    #[test]
    fn associative_hull_examples() {
        let input = MatrixGroupInput::new(3, vec![RatMat::identity(3)], None).unwrap();
        assert_eq!(associative_hull(&input).len(), 1);

        let mut nil = RatMat::zeros(2, 2);
        nil[(1, 0)] = rat_int(1);
        let input = MatrixGroupInput::new(2, vec![RatMat::identity(2), nil], None).unwrap();
        assert_eq!(associative_hull(&input).len(), 2);
    }

    #[test]
    fn hull_equals_commutant_on_table_reps() {
        for k in [2u32, 4, 10, 20] {
            let alg = entry(k);
            let input = regular_rep_input(&alg);
            let hull = associative_hull(&input);
            let comm = commutant(&input);
            assert_eq!(hull.len(), comm.len(), "entry {k}");
            // mutual containment of spans
            let hull_vecs: Vec<Vec<Rat>> = hull.iter().map(RatMat::flatten).collect();
            let comm_vecs: Vec<Vec<Rat>> = comm.iter().map(RatMat::flatten).collect();
            let hull_span = span_basis(&hull_vecs);
            let comm_span = span_basis(&comm_vecs);
            assert_eq!(hull_span, comm_span, "entry {k}");
        }
    }

    #[test]
    fn reconstruct_entry_2() {
        let alg = entry(2);
        let input = regular_rep_input(&alg);
        let v = vec![rat_int(1), rat_int(0)];
        let rec = reconstruct_algebra(&input, &v).unwrap();
        // x1 * x1 = 0, unit = (1,0): identical structure constants
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    assert_eq!(
                        rec.algebra.structure_constant(i, j, k),
                        alg.structure_constant(i, j, k)
                    );
                }
            }
        }
        assert_eq!(rec.witness, v);
    }

    #[test]
    fn reconstruct_round_trip_table_sample() {
        for k in [3u32, 8, 14, 20, 25, 38] {
            let alg = entry(k);
            let input = regular_rep_input(&alg);
            let rec = reconstruct_algebra(&input, &alg.unit().to_vec()).unwrap();
            let n = alg.dim();
            for i in 0..n {
                for j in 0..n {
                    for t in 0..n {
                        assert_eq!(
                            rec.algebra.structure_constant(i, j, t),
                            alg.structure_constant(i, j, t),
                            "entry {k} at ({i},{j},{t})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn polex_fails_with_dimension_mismatch() {
        let input = polex_lie_basis(2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let v: Vec<Rat> = (0..4)
            .map(|_| Rat::from_integer(rng.gen_range(1i64..=9).into()))
            .collect();
        assert!(matches!(
            reconstruct_algebra(&input, &v),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn not_cyclic_is_sound() {
        // regular rep of entry 2 at v = x1: evaluation map singular
        let alg = entry(2);
        let input = regular_rep_input(&alg);
        let v = vec![rat_int(0), rat_int(1)];
        match reconstruct_algebra(&input, &v) {
            Err(Error::NotCyclic) => {
                let comm = commutant(&input);
                let eval = RatMat::from_cols(comm.iter().map(|m| m.mul_vec(&v)).collect());
                assert!(eval.det().is_zero());
            }
            other => panic!("expected NotCyclic, got {other:?}"),
        }
    }

    #[test]
    fn orbit_certificate_findings() {
        let alg = entry(20);
        let input = regular_rep_input(&alg);
        let (v, rank) = orbit_certificate(&input, 0).unwrap();
        assert_eq!(rank, 6);
        assert_eq!(input.infinitesimal_orbit_rank(&v), 6);

        // polex has no open orbit: rank stays n+1 < 2n for n >= 2
        let p = polex_lie_basis(2);
        assert!(matches!(orbit_certificate(&p, 0), Err(Error::NoOpenOrbit)));
    }

    #[test]
    fn json_round_trip() {
        let input = polex_lie_basis(2);
        let j = input.to_json();
        let back = MatrixGroupInput::from_json(&j).unwrap();
        assert_eq!(back.n, input.n);
        assert_eq!(back.lie_basis, input.lie_basis);
    }
}
