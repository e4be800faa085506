//! Dense exact linear algebra over the rationals.
//!
//! Everything downstream (path algebras, Hom complexes, mutation) reduces to
//! row reduction here, so pivoting is deterministic: first nonzero entry in
//! column order, rows scanned top to bottom.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Shorthand for an integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for `n/d`.
pub fn ratq(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl std::fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        RatMatrix {
            rows: nr,
            cols: nc,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    /// Like `from_rows` but with an explicit column count, so an empty row
    /// list still has a well-defined shape.
    pub fn from_rows_with_cols(rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        let nr = rows.len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RatMatrix {
            rows: nr,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Rat> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        let v = out.at(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Stack `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.at(r, c).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for k in 0..m.cols {
                    m.data.swap(pr * m.cols + k, r * m.cols + k);
                }
            }
            let inv = m.at(r, c).recip();
            for k in c..m.cols {
                let v = m.at(r, k) * &inv;
                m.set(r, k, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for k in c..m.cols {
                        let v = m.at(i, k) - &f * m.at(r, k);
                        m.set(i, k, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column, in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (e, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<_> = pivots.iter().copied().collect();
        for c in 0..self.cols {
            if pivot_set.contains(&c) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[c] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -e.at(r, c).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len());
        let bm = RatMatrix {
            rows: b.len(),
            cols: 1,
            data: b.to_vec(),
        };
        let aug = self.hstack(&bm);
        let (e, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the constants column
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = e.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let aug = self.hstack(&RatMatrix::identity(self.rows));
        let (e, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        let mut inv = RatMatrix::zeros(self.rows, self.rows);
        for r in 0..self.rows {
            for c in 0..self.rows {
                inv.set(r, c, e.at(r, self.rows + c).clone());
            }
        }
        Some(inv)
    }

    /// Exact determinant by fraction-free-ish Gaussian elimination.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                return Rat::zero();
            };
            if pr != c {
                for k in 0..m.cols {
                    m.data.swap(pr * m.cols + k, c * m.cols + k);
                }
                det = -det;
            }
            det *= m.at(c, c);
            let inv = m.at(c, c).recip();
            for i in c + 1..m.rows {
                if !m.at(i, c).is_zero() {
                    let f = m.at(i, c) * &inv;
                    for k in c..m.cols {
                        let v = m.at(i, k) - &f * m.at(c, k);
                        m.set(i, k, v);
                    }
                }
            }
        }
        det
    }
}

/// An echelonized subspace of Q^n supporting membership tests, reduction to a
/// canonical representative modulo the subspace, and incremental insertion.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub ambient: usize,
    /// Rows in reduced echelon form; `pivots[i]` is the pivot column of row i,
    /// strictly increasing is *not* required (insertion order preserved), but
    /// each pivot column appears once and is 1 in its row, 0 in all others.
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    /// `reps[i]` expresses row i as a combination of the successfully inserted
    /// vectors, in insertion order. Kept in sync through normalization and
    /// back-substitution so `coordinates` answers over the original vectors.
    reps: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
            reps: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// Reduce `v` modulo the subspace; the result has zeros in all pivot columns.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert `v`; returns false if it was already in the span. The pivot is
    /// the first nonzero coordinate of the reduced vector.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let k = self.rows.len();
        let mut v = v.to_vec();
        // rep of the working vector over inserted vectors: starts as e_k
        let mut rep = vec![Rat::zero(); k + 1];
        rep[k] = Rat::one();
        for (row, (&p, rrep)) in self.rows.iter().zip(self.pivots.iter().zip(&self.reps)) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
                for (x, y) in rep.iter_mut().zip(rrep) {
                    *x -= &f * y;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for x in rep.iter_mut() {
            *x *= &inv;
        }
        // back-substitute into existing rows to keep the form reduced
        for old in self.reps.iter_mut() {
            old.push(Rat::zero());
        }
        for (row, rrep) in self.rows.iter_mut().zip(self.reps.iter_mut()) {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
                for (x, y) in rrep.iter_mut().zip(&rep) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        self.reps.push(rep);
        true
    }

    /// Coordinates of `v` over the successfully inserted vectors, in
    /// insertion order, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let mut v = v.to_vec();
        let mut coords = vec![Rat::zero(); self.rows.len()];
        for ((row, &p), rrep) in self.rows.iter().zip(&self.pivots).zip(&self.reps) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
                for (c, r) in coords.iter_mut().zip(rrep) {
                    *c += &f * r;
                }
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_is_zero(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Normalize a vector so its first nonzero coordinate is 1 (for canonical output).
pub fn vec_normalize(a: &[Rat]) -> Vec<Rat> {
    match a.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.recip();
            a.iter().map(|x| x * &inv).collect()
        }
        None => a.to_vec(),
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.is_integer()
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: rank by brute-force minor expansion for small sizes.
    fn rank_by_minors(m: &RatMatrix) -> usize {
        let n = m.rows.min(m.cols);
        for size in (1..=n).rev() {
            // all size x size minors
            let rows = combos(m.rows, size);
            let cols = combos(m.cols, size);
            for rs in &rows {
                for cs in &cols {
                    let mut sub = RatMatrix::zeros(size, size);
                    for (i, &r) in rs.iter().enumerate() {
                        for (j, &c) in cs.iter().enumerate() {
                            sub.set(i, j, m.at(r, c).clone());
                        }
                    }
                    if !sub.det().is_zero() {
                        return size;
                    }
                }
            }
        }
        0
    }

    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    #[test]
    fn identity_has_full_rank_and_empty_kernel() {
        let m = RatMatrix::identity(2);
        assert_eq!(m.rank(), 2);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn rank_one_kernel_matches_frozen_value() {
        // [[1,2],[2,4]] has rank 1 and kernel spanned by (2,-1), normalized: (1,-1/2)
        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // kernel vector from free column c=1: v = (-2, 1); check span{(2,-1)}
        assert!(vec_is_zero(&m.apply(&k[0])));
        let normalized = vec_normalize(&k[0]);
        assert_eq!(normalized, vec![rat(1), ratq(-1, 2)]);
    }

    #[test]
    fn seeded_random_matrices_match_minor_rank_oracle() {
        // deterministic LCG so the suite never depends on an RNG crate's stability
        let mut state: u64 = 0x2545F4914F6CDD1D;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) % 7) as i64 - 3
        };
        for _ in 0..8 {
            let mut m = RatMatrix::zeros(5, 3);
            for r in 0..5 {
                for c in 0..3 {
                    m.set(r, c, rat(next()));
                }
            }
            assert_eq!(m.rank(), rank_by_minors(&m));
            // every kernel vector really is in the kernel
            for v in m.kernel_basis() {
                assert!(vec_is_zero(&m.apply(&v)));
            }
            // rank-nullity
            assert_eq!(m.rank() + m.kernel_basis().len(), 3);
        }
    }

    #[test]
    fn solve_finds_exact_solutions_and_detects_inconsistency() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        let x = m.solve(&[rat(5), rat(10)]).unwrap();
        assert_eq!(m.apply(&x), vec![rat(5), rat(10)]);
        let sing = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(sing.solve(&[rat(1), rat(3)]).is_none());
        assert!(sing.solve(&[rat(1), rat(2)]).is_some());
    }

    #[test]
    fn inverse_round_trips() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn subspace_reduction_is_canonical_and_incremental() {
        let mut s = Subspace::new(3);
        assert!(s.insert(&[rat(1), rat(1), rat(0)]));
        assert!(s.insert(&[rat(0), rat(2), rat(2)]));
        assert!(!s.insert(&[rat(1), rat(0), rat(-1)])); // dependent
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[rat(3), rat(1), rat(-2)]));
        assert!(!s.contains(&[rat(0), rat(0), rat(1)]));
        let coords = s.coordinates(&[rat(3), rat(1), rat(-2)]).unwrap();
        assert_eq!(coords.len(), 2);
    }

    #[test]
    fn det_matches_cofactor_expansion_on_a_3x3() {
        let m = RatMatrix::from_i64(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]]);
        // cofactor: 2*(1*1-0*3) - 0 + 1*(1*3-1*0) = 2 + 3 = 5
        assert_eq!(m.det(), rat(5));
    }
}
