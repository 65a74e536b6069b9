//! Exact linear algebra over the rationals, plus matrices of polynomials.
//!
//! Everything here is plain Gaussian elimination: the matrices in this crate
//! are tiny (module dimensions stay in the low tens) and exactness matters
//! more than asymptotics.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::poly::{Polynomial, VarSet};
use crate::rat::Rat;

/// Dense matrix of rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> RatMat {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RatMat {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> RatMat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        RatMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: Vec<Vec<Rat>>) -> RatMat {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = RatMat::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        s += &self[(i, j)] * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> RatMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn flatten(&self) -> Vec<Rat> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rat>) -> RatMat {
        assert_eq!(data.len(), rows * cols);
        RatMat { rows, cols, data }
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(i, j)] - &f * &m[(r, j)];
                        m[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace, in the deterministic RREF convention.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b`, if consistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = RatMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = RatMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = RatMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det *= &m[(c, c)];
            let inv = m[(c, c)].recip();
            for i in (c + 1)..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let v = &m[(i, j)] - &f * &m[(c, j)];
                    m[(i, j)] = v;
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Row-reduce a list of vectors to a deterministic basis of their span.
pub fn span_basis(vectors: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RatMat::from_rows(vectors.to_vec());
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Is `v` in the row span of the (already reduced) `basis`?
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    let mut rows = basis.to_vec();
    rows.push(v.to_vec());
    RatMat::from_rows(rows).rank() == basis.len()
}

/// Dense matrix of polynomials over a shared variable set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMat {
    pub rows: usize,
    pub cols: usize,
    pub vars: Arc<VarSet>,
    data: Vec<Polynomial>,
}

impl PolyMat {
    pub fn zeros(vars: &Arc<VarSet>, rows: usize, cols: usize) -> PolyMat {
        PolyMat {
            rows,
            cols,
            vars: Arc::clone(vars),
            data: vec![Polynomial::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &Arc<VarSet>, n: usize) -> PolyMat {
        let mut m = PolyMat::zeros(vars, n, n);
        for i in 0..n {
            m[(i, i)] = Polynomial::one(vars);
        }
        m
    }

    pub fn from_rows(vars: &Arc<VarSet>, rows: Vec<Vec<Polynomial>>) -> PolyMat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        PolyMat {
            rows: r,
            cols: c,
            vars: Arc::clone(vars),
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_rat(vars: &Arc<VarSet>, m: &RatMat) -> PolyMat {
        let mut out = PolyMat::zeros(vars, m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                out[(i, j)] = Polynomial::constant(vars, m[(i, j)].clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &PolyMat) -> PolyMat {
        assert_eq!(self.cols, other.rows);
        let mut out = PolyMat::zeros(&self.vars, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other[(k, j)].is_zero() {
                        continue;
                    }
                    let prod = self[(i, k)].mul(&other[(k, j)]).expect("same varset");
                    out[(i, j)] = out[(i, j)].add(&prod).expect("same varset");
                }
            }
        }
        out
    }

    /// Conjugate by a rational change of basis: `c_inv * self * c`.
    pub fn conjugate(&self, c: &RatMat, c_inv: &RatMat) -> PolyMat {
        let left = PolyMat::from_rat(&self.vars, c_inv);
        let right = PolyMat::from_rat(&self.vars, c);
        left.mul(self).mul(&right)
    }

    pub fn map<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> PolyMat {
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            vars: Arc::clone(&self.vars),
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entrywise reinterpretation over a larger variable set.
    pub fn reindex(&self, target: &Arc<VarSet>, map: &[usize]) -> PolyMat {
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            vars: Arc::clone(target),
            data: self.data.iter().map(|p| p.reindex(target, map)).collect(),
        }
    }

    /// Entrywise substitution into a new variable set.
    pub fn substitute(
        &self,
        target: &Arc<VarSet>,
        assignment: &std::collections::BTreeMap<usize, Polynomial>,
    ) -> crate::error::Result<PolyMat> {
        let mut data = Vec::with_capacity(self.data.len());
        for p in &self.data {
            data.push(p.substitute(target, assignment)?);
        }
        Ok(PolyMat {
            rows: self.rows,
            cols: self.cols,
            vars: Arc::clone(target),
            data,
        })
    }

    /// Exact symbolic determinant by expansion over column subsets.
    pub fn det(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Polynomial::one(&self.vars);
        }
        assert!(n <= 31, "determinant expansion limited to 31 columns");
        let full: u32 = (1 << n) - 1;
        let mut memo: HashMap<u32, Polynomial> = HashMap::new();
        self.det_rec(0, full, &mut memo)
    }

    fn det_rec(&self, row: usize, mask: u32, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
        if mask == 0 {
            return Polynomial::one(&self.vars);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(&self.vars);
        let mut sign_positive = true;
        for j in 0..self.cols {
            if mask & (1 << j) == 0 {
                continue;
            }
            let entry = &self[(row, j)];
            if !entry.is_zero() {
                let sub = self.det_rec(row + 1, mask & !(1 << j), memo);
                let term = entry.mul(&sub).expect("same varset");
                acc = if sign_positive {
                    acc.add(&term).expect("same varset")
                } else {
                    acc.sub(&term).expect("same varset")
                };
            }
            sign_positive = !sign_positive;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Evaluate every entry at a rational point.
    pub fn eval(&self, point: &[Rat]) -> RatMat {
        let mut out = RatMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].eval(point);
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for PolyMat {
    type Output = Polynomial;
    fn index(&self, (i, j): (usize, usize)) -> &Polynomial {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Polynomial {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn m(rows: &[&[i64]]) -> RatMat {
        RatMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let x = a.solve(&[rat_int(3), rat_int(2)]).unwrap();
        assert_eq!(x, vec![rat_int(1), rat_int(1)]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(a.det(), rat_int(1));

        let singular = m(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.det(), rat_int(0));
        assert!(singular.solve(&[rat_int(1), rat_int(0)]).is_none());
    }

    #[test]
    fn poly_det_matches_rat_det() {
        let vars = VarSet::new(vec!["t"]);
        let a = m(&[&[1, 2, 0], &[3, 4, 1], &[0, 1, 5]]);
        let pa = PolyMat::from_rat(&vars, &a);
        assert_eq!(pa.det(), Polynomial::constant(&vars, a.det()));
    }

    #[test]
    fn poly_det_symbolic() {
        // det [[t, 1], [1, t]] = t^2 - 1
        let vars = VarSet::new(vec!["t"]);
        let t = Polynomial::var(&vars, 0);
        let one = Polynomial::one(&vars);
        let mm = PolyMat::from_rows(
            &vars,
            vec![vec![t.clone(), one.clone()], vec![one.clone(), t.clone()]],
        );
        let expected = t.pow(2).sub(&one).unwrap();
        assert_eq!(mm.det(), expected);
    }
}
