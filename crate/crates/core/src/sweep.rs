//! Data-parallel sweeps over the built-in table: per-entry verification,
//! representation-law checks, reconstruction round trips, and the pairwise
//! fingerprint comparison.
//!
//! Every sweep is a pure map over independent items. With the `parallel`
//! feature (default) the `Parallel` mode fans out through rayon; without it,
//! or in `Sequential` mode, the same closure runs on a plain iterator, so
//! both modes produce identical results in a fixed order.

use crate::algebra::{Comparison, FiniteAlgebra};
use crate::error::Result;
use crate::present::load_table;
use crate::reconstruct::{reconstruct_algebra, MatrixGroupInput};
use crate::rep::matrix_rep;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

/// Map a function over items, in parallel when requested and compiled in.
pub fn map_items<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode == ExecMode::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Outcome of building and checking one table entry.
#[derive(Debug, Clone)]
pub struct EntryCheck {
    pub index: u32,
    pub declared_dim: usize,
    pub computed_dim: usize,
    pub axioms_ok: bool,
    pub local: bool,
}

/// Build every table algebra and verify dimension, axioms and locality.
pub fn verify_table(mode: ExecMode) -> Result<Vec<EntryCheck>> {
    let table = load_table();
    let results = map_items(mode, table, |entry| -> Result<EntryCheck> {
        let alg = FiniteAlgebra::from_quotient(&entry.presentation)?;
        Ok(EntryCheck {
            index: entry.index,
            declared_dim: entry.declared_dim,
            computed_dim: alg.dim(),
            axioms_ok: alg.verify_axioms().all_ok(),
            local: alg.is_geometrically_local()?,
        })
    });
    results.into_iter().collect()
}

/// Representation-law checks for one algebra.
#[derive(Debug, Clone)]
pub struct RepLawCheck {
    pub index: u32,
    pub homomorphism_ok: bool,
    pub det_ok: bool,
}

/// Homomorphism and determinant laws of the symbolic representation across
/// the table.
pub fn rep_laws(mode: ExecMode) -> Result<Vec<RepLawCheck>> {
    let table = load_table();
    let results = map_items(mode, table, |entry| -> Result<RepLawCheck> {
        let alg = FiniteAlgebra::from_quotient(&entry.presentation)?;
        let rep = matrix_rep(&alg, None)?;
        Ok(RepLawCheck {
            index: entry.index,
            homomorphism_ok: rep.verify_homomorphism(),
            det_ok: rep.det() == rep.expected_det(),
        })
    });
    results.into_iter().collect()
}

/// Reconstruction round trip for one table algebra.
#[derive(Debug, Clone)]
pub struct RoundTripCheck {
    pub index: u32,
    pub lie_basis_size: usize,
    pub commutant_dim: usize,
    pub orbit_rank_at_unit: usize,
    pub reconstruction_exact: bool,
}

/// Reconstruct every table algebra from its representation's Lie algebra at
/// the unit vector and compare structure constants exactly.
pub fn reconstruction_round_trip(mode: ExecMode) -> Result<Vec<RoundTripCheck>> {
    let table = load_table();
    let results = map_items(mode, table, |entry| -> Result<RoundTripCheck> {
        let alg = FiniteAlgebra::from_quotient(&entry.presentation)?;
        let rep = matrix_rep(&alg, None)?;
        let lie = rep.lie_algebra_basis();
        let input = MatrixGroupInput::new(alg.dim(), lie, None)?;
        let commutant_dim = crate::reconstruct::commutant(&input).len();
        let unit = alg.unit().to_vec();
        let orbit_rank = input.infinitesimal_orbit_rank(&unit);
        let rec = reconstruct_algebra(&input, &unit)?;
        let n = alg.dim();
        let mut exact = true;
        'outer: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rec.algebra.structure_constant(i, j, k)
                        != alg.structure_constant(i, j, k)
                    {
                        exact = false;
                        break 'outer;
                    }
                }
            }
        }
        Ok(RoundTripCheck {
            index: entry.index,
            lie_basis_size: input.lie_basis.len(),
            commutant_dim,
            orbit_rank_at_unit: orbit_rank,
            reconstruction_exact: exact,
        })
    });
    results.into_iter().collect()
}

/// One pairwise comparison outcome.
#[derive(Debug, Clone)]
pub struct PairComparison {
    pub left: u32,
    pub right: u32,
    pub comparison: Comparison,
}

/// Compare all 861 unordered pairs of table entries; output ordered by
/// `(left, right)` regardless of scheduling.
pub fn pairwise_table_comparison(mode: ExecMode) -> Result<Vec<PairComparison>> {
    let table = load_table();
    let algebras: Vec<FiniteAlgebra> = table
        .iter()
        .map(|e| FiniteAlgebra::from_quotient(&e.presentation))
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for i in 0..table.len() {
        for j in (i + 1)..table.len() {
            pairs.push((i, j));
        }
    }
    let results = map_items(mode, &pairs, |&(i, j)| -> Result<PairComparison> {
        Ok(PairComparison {
            left: table[i].index,
            right: table[j].index,
            comparison: FiniteAlgebra::certify_nonisomorphic(&algebras[i], &algebras[j])?,
        })
    });
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_on_table_verification() {
        let seq = verify_table(ExecMode::Sequential).unwrap();
        let par = verify_table(ExecMode::Parallel).unwrap();
        assert_eq!(seq.len(), 42);
        for (a, b) in seq.iter().zip(&par) {
            assert_eq!(a.index, b.index);
            assert_eq!(a.computed_dim, b.computed_dim);
            assert_eq!(a.axioms_ok, b.axioms_ok);
            assert_eq!(a.local, b.local);
        }
    }

    #[test]
    fn modes_agree_on_pairwise_comparison() {
        let seq = pairwise_table_comparison(ExecMode::Sequential).unwrap();
        let par = pairwise_table_comparison(ExecMode::Parallel).unwrap();
        assert_eq!(seq.len(), 861);
        for (a, b) in seq.iter().zip(&par) {
            assert_eq!((a.left, a.right), (b.left, b.right));
            assert_eq!(a.comparison, b.comparison);
        }
    }
}
