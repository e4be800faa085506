//! Bounded complexes of finitely generated projectives and the homotopy
//! category K^b(proj): minimization with explicit homotopy-equivalence
//! witnesses, direct-sum decomposition into indecomposables, Hom complexes,
//! and the class map to K_0.
//!
//! A complex stores, per degree, the list of projective summands by vertex,
//! and differentials as matrices of algebra elements: the entry in row r,
//! column c of the differential out of degree d lies in
//! e_{term(d+1)[r]}·A·e_{term(d)[c]} = Hom(P_{term(d)[c]}, P_{term(d+1)[r]}),
//! acting by left multiplication. Composition of maps multiplies entries in
//! the order "second * first".

use crate::linalg::{Rat, RatMatrix, Subspace};
use crate::quiver::{AlgElt, PathAlgebra};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

pub type EntryMatrix = Vec<Vec<AlgElt>>;

#[derive(Clone)]
pub struct ProjComplex {
    pub alg: Arc<PathAlgebra>,
    pub low: i64,
    /// terms[k] lists the projective summands (by vertex) in degree low + k
    pub terms: Vec<Vec<usize>>,
    /// diffs[k]: degree low+k -> low+k+1, shape terms[k+1].len() x terms[k].len()
    pub diffs: Vec<EntryMatrix>,
}

impl PartialEq for ProjComplex {
    fn eq(&self, other: &Self) -> bool {
        let a = self.trimmed();
        let b = other.trimmed();
        a.low == b.low && a.terms == b.terms && a.diffs == b.diffs
    }
}

impl std::fmt::Debug for ProjComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Complex[{}..{}]{:?}", self.low, self.high(), self.terms)
    }
}

fn zero_entry_matrix(alg: &PathAlgebra, rows: usize, cols: usize) -> EntryMatrix {
    vec![vec![vec![Rat::zero(); alg.dim]; cols]; rows]
}

impl ProjComplex {
    pub fn new(
        alg: Arc<PathAlgebra>,
        low: i64,
        terms: Vec<Vec<usize>>,
        diffs: Vec<EntryMatrix>,
    ) -> Result<Self, String> {
        if terms.is_empty() {
            return Err("complex needs at least one degree; use zero()".into());
        }
        if diffs.len() + 1 != terms.len() {
            return Err("need exactly one differential between consecutive degrees".into());
        }
        let c = ProjComplex {
            alg,
            low,
            terms,
            diffs,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn zero(alg: &Arc<PathAlgebra>) -> Self {
        ProjComplex {
            alg: alg.clone(),
            low: 0,
            terms: vec![Vec::new()],
            diffs: Vec::new(),
        }
    }

    /// Single projective P_v sitting in the given degree.
    pub fn stalk_proj(alg: &Arc<PathAlgebra>, degree: i64, v: usize) -> Self {
        ProjComplex {
            alg: alg.clone(),
            low: degree,
            terms: vec![vec![v]],
            diffs: Vec::new(),
        }
    }

    pub fn high(&self) -> i64 {
        self.low + self.terms.len() as i64 - 1
    }

    pub fn term(&self, d: i64) -> &[usize] {
        if d < self.low || d > self.high() {
            &[]
        } else {
            &self.terms[(d - self.low) as usize]
        }
    }

    /// Differential out of degree d, if both endpoints are in range.
    pub fn diff(&self, d: i64) -> Option<&EntryMatrix> {
        if d < self.low || d >= self.high() {
            None
        } else {
            Some(&self.diffs[(d - self.low) as usize])
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        let alg = &self.alg;
        for t in &self.terms {
            for &v in t {
                if v >= alg.vertex_count() {
                    return Err("summand vertex out of range".into());
                }
            }
        }
        for (k, d) in self.diffs.iter().enumerate() {
            let (nr, nc) = (self.terms[k + 1].len(), self.terms[k].len());
            if d.len() != nr || d.iter().any(|row| row.len() != nc) {
                return Err(format!("differential {} has wrong shape", k));
            }
            for (r, row) in d.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if x.len() != alg.dim {
                        return Err("entry has wrong coordinate length".into());
                    }
                    // x ∈ Hom(P_{terms[k][c]}, P_{terms[k+1][r]}):
                    // paths from terms[k+1][r] to terms[k][c]
                    if !alg.elt_in_hom(self.terms[k][c], self.terms[k + 1][r], x) {
                        return Err(format!(
                            "entry ({}, {}) of differential {} not in the right hom space",
                            r, c, k
                        ));
                    }
                }
            }
        }
        // d² = 0
        for k in 0..self.diffs.len().saturating_sub(1) {
            let prod = compose_entries(alg, &self.diffs[k + 1], &self.diffs[k]);
            for row in &prod {
                for x in row {
                    if !crate::linalg::vec_is_zero(x) {
                        return Err(format!("d² ≠ 0 between degrees {} and {}", k, k + 2));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_zero_complex(&self) -> bool {
        self.terms.iter().all(|t| t.is_empty())
    }

    /// Remove empty degrees at both ends.
    pub fn trimmed(&self) -> ProjComplex {
        let mut lo = 0;
        let mut hi = self.terms.len();
        while lo < hi && self.terms[lo].is_empty() {
            lo += 1;
        }
        while hi > lo && self.terms[hi - 1].is_empty() {
            hi -= 1;
        }
        if lo == hi {
            return ProjComplex::zero(&self.alg);
        }
        ProjComplex {
            alg: self.alg.clone(),
            low: self.low + lo as i64,
            terms: self.terms[lo..hi].to_vec(),
            diffs: self.diffs[lo..hi - 1].to_vec(),
        }
    }

    /// Σ^n: shifts degree d to d - n and scales differentials by (-1)^n.
    pub fn shift(&self, n: i64) -> ProjComplex {
        let mut c = self.clone();
        c.low -= n;
        if n % 2 != 0 {
            for d in c.diffs.iter_mut() {
                for row in d.iter_mut() {
                    for x in row.iter_mut() {
                        for v in x.iter_mut() {
                            *v = -v.clone();
                        }
                    }
                }
            }
        }
        c
    }

    pub fn direct_sum(&self, other: &ProjComplex) -> ProjComplex {
        if self.is_zero_complex() {
            return other.clone();
        }
        if other.is_zero_complex() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for d in low..=high {
            let mut t = self.term(d).to_vec();
            t.extend_from_slice(other.term(d));
            terms.push(t);
        }
        for d in low..high {
            let a_rows = self.term(d + 1).len();
            let a_cols = self.term(d).len();
            let b_rows = other.term(d + 1).len();
            let b_cols = other.term(d).len();
            let mut m = zero_entry_matrix(&self.alg, a_rows + b_rows, a_cols + b_cols);
            if let Some(da) = self.diff(d) {
                for r in 0..a_rows {
                    for c in 0..a_cols {
                        m[r][c] = da[r][c].clone();
                    }
                }
            }
            if let Some(db) = other.diff(d) {
                for r in 0..b_rows {
                    for c in 0..b_cols {
                        m[a_rows + r][a_cols + c] = db[r][c].clone();
                    }
                }
            }
            diffs.push(m);
        }
        ProjComplex {
            alg: self.alg.clone(),
            low,
            terms,
            diffs,
        }
    }

    /// Class in K_0 ≅ Z^{vertices}: alternating sums of summand multiplicities.
    pub fn k0(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.alg.vertex_count()];
        for (k, t) in self.terms.iter().enumerate() {
            let sign = if (self.low + k as i64).rem_euclid(2) == 0 {
                1
            } else {
                -1
            };
            for &v in t {
                out[v] += sign;
            }
        }
        out
    }

    /// Total number of summands.
    pub fn summand_count(&self) -> usize {
        self.terms.iter().map(|t| t.len()).sum()
    }
}

/// Composite of entry matrices: (g ∘ f)[r][c] = Σ_m g[r][m] * f[m][c]
/// (algebra product in the order second * first).
pub fn compose_entries(alg: &PathAlgebra, g: &EntryMatrix, f: &EntryMatrix) -> EntryMatrix {
    let rows = g.len();
    let mids = f.len();
    let cols = if mids == 0 { 0 } else { f[0].len() };
    let mut out = zero_entry_matrix(alg, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            let mut acc = vec![Rat::zero(); alg.dim];
            for m in 0..mids {
                if crate::linalg::vec_is_zero(&g[r][m]) || crate::linalg::vec_is_zero(&f[m][c]) {
                    continue;
                }
                let p = alg.mul(&g[r][m], &f[m][c]);
                for (a, b) in acc.iter_mut().zip(&p) {
                    *a += b;
                }
            }
            out[r][c] = acc;
        }
    }
    out
}

fn add_entries(a: &EntryMatrix, b: &EntryMatrix) -> EntryMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
                .collect()
        })
        .collect()
}

fn scale_entries(a: &EntryMatrix, s: &Rat) -> EntryMatrix {
    a.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.iter().map(|p| p * s).collect())
                .collect()
        })
        .collect()
}

fn entries_are_zero(a: &EntryMatrix) -> bool {
    a.iter()
        .all(|r| r.iter().all(|x| crate::linalg::vec_is_zero(x)))
}

/// A chain map between complexes (degree-preserving, strictly commuting).
#[derive(Clone)]
pub struct ChainMap {
    pub from: ProjComplex,
    pub to: ProjComplex,
    /// maps[&d]: from^d -> to^d; absent degrees are zero
    pub maps: BTreeMap<i64, EntryMatrix>,
}

impl std::fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChainMap[{:?} -> {:?}]", self.from, self.to)
    }
}

impl ChainMap {
    pub fn new(
        from: ProjComplex,
        to: ProjComplex,
        maps: BTreeMap<i64, EntryMatrix>,
    ) -> Result<Self, String> {
        let f = ChainMap { from, to, maps };
        f.validate()?;
        Ok(f)
    }

    pub fn zero(from: &ProjComplex, to: &ProjComplex) -> ChainMap {
        ChainMap {
            from: from.clone(),
            to: to.clone(),
            maps: BTreeMap::new(),
        }
    }

    pub fn identity(x: &ProjComplex) -> ChainMap {
        let alg = &x.alg;
        let mut maps = BTreeMap::new();
        for d in x.low..=x.high() {
            let n = x.term(d).len();
            if n == 0 {
                continue;
            }
            let mut m = zero_entry_matrix(alg, n, n);
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = alg.idempotent(x.term(d)[i]);
            }
            maps.insert(d, m);
        }
        ChainMap {
            from: x.clone(),
            to: x.clone(),
            maps,
        }
    }

    pub fn block(&self, d: i64) -> EntryMatrix {
        match self.maps.get(&d) {
            Some(m) => m.clone(),
            None => zero_entry_matrix(
                &self.from.alg,
                self.to.term(d).len(),
                self.from.term(d).len(),
            ),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        let alg = &self.from.alg;
        for (&d, m) in &self.maps {
            let (nr, nc) = (self.to.term(d).len(), self.from.term(d).len());
            if m.len() != nr || m.iter().any(|row| row.len() != nc) {
                return Err(format!("map block at degree {} has wrong shape", d));
            }
            for (r, row) in m.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if !alg.elt_in_hom(self.from.term(d)[c], self.to.term(d)[r], x) {
                        return Err(format!(
                            "map entry ({}, {}) at degree {} not in hom space",
                            r, c, d
                        ));
                    }
                }
            }
        }
        // commutation: d_to ∘ f = f ∘ d_from
        let lo = self.from.low.min(self.to.low);
        let hi = self.from.high().max(self.to.high());
        for d in lo..hi {
            let lhs = match self.to.diff(d) {
                Some(dt) => compose_entries(alg, dt, &self.block(d)),
                None => zero_entry_matrix(alg, self.to.term(d + 1).len(), self.from.term(d).len()),
            };
            let rhs = match self.from.diff(d) {
                Some(df) => compose_entries(alg, &self.block(d + 1), df),
                None => zero_entry_matrix(alg, self.to.term(d + 1).len(), self.from.term(d).len()),
            };
            let diff = add_entries(&lhs, &scale_entries(&rhs, &-Rat::one()));
            if !entries_are_zero(&diff) {
                return Err(format!("chain map does not commute at degree {}", d));
            }
        }
        Ok(())
    }

    pub fn compose(&self, then: &ChainMap) -> ChainMap {
        // self: X -> Y, then: Y -> Z
        let alg = &self.from.alg;
        let mut maps = BTreeMap::new();
        let lo = self.from.low;
        let hi = self.from.high();
        for d in lo..=hi {
            let m = compose_entries(alg, &then.block(d), &self.block(d));
            if !entries_are_zero(&m) {
                maps.insert(d, m);
            }
        }
        ChainMap {
            from: self.from.clone(),
            to: then.to.clone(),
            maps,
        }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let mut maps = BTreeMap::new();
        let lo = self.from.low.min(other.from.low);
        let hi = self.from.high().max(other.from.high());
        for d in lo..=hi {
            let m = add_entries(&self.block(d), &other.block(d));
            if !entries_are_zero(&m) {
                maps.insert(d, m);
            }
        }
        ChainMap {
            from: self.from.clone(),
            to: self.to.clone(),
            maps,
        }
    }

    pub fn scale(&self, s: &Rat) -> ChainMap {
        let maps = self
            .maps
            .iter()
            .map(|(&d, m)| (d, scale_entries(m, s)))
            .collect();
        ChainMap {
            from: self.from.clone(),
            to: self.to.clone(),
            maps,
        }
    }

    pub fn is_zero_map(&self) -> bool {
        self.maps.values().all(entries_are_zero)
    }
}

/// Mapping cone of f: X -> Y: degree d is X^{d+1} ⊕ Y^d with differential
/// [[-d_X, 0], [f, d_Y]].
pub fn cone(f: &ChainMap) -> ProjComplex {
    let x = &f.from;
    let y = &f.to;
    let alg = &x.alg;
    if x.is_zero_complex() {
        return y.clone();
    }
    let low = (x.low - 1).min(y.low);
    let high = (x.high() - 1).max(y.high());
    let mut terms = Vec::new();
    for d in low..=high {
        let mut t = x.term(d + 1).to_vec();
        t.extend_from_slice(y.term(d));
        terms.push(t);
    }
    let mut diffs = Vec::new();
    for d in low..high {
        let xr = x.term(d + 2).len();
        let xc = x.term(d + 1).len();
        let yr = y.term(d + 1).len();
        let yc = y.term(d).len();
        let mut m = zero_entry_matrix(alg, xr + yr, xc + yc);
        if let Some(dx) = x.diff(d + 1) {
            for r in 0..xr {
                for c in 0..xc {
                    m[r][c] = dx[r][c].iter().map(|v| -v.clone()).collect();
                }
            }
        }
        let fb = f.block(d + 1);
        for r in 0..yr {
            for c in 0..xc {
                m[xr + r][c] = fb[r][c].clone();
            }
        }
        if let Some(dy) = y.diff(d) {
            for r in 0..yr {
                for c in 0..yc {
                    m[xr + r][xc + c] = dy[r][c].clone();
                }
            }
        }
        diffs.push(m);
    }
    (ProjComplex {
        alg: alg.clone(),
        low,
        terms,
        diffs,
    })
    .trimmed()
}

// ---- Hom complexes ----

/// Basis layout of Hom^m(X, Y) = ⊕_d Hom(X^d, Y^{d+m}): tuples
/// (degree d, row r in Y^{d+m}, col c in X^d, algebra basis path index).
pub fn hom_layout(x: &ProjComplex, y: &ProjComplex, m: i64) -> Vec<(i64, usize, usize, usize)> {
    let alg = &x.alg;
    let mut out = Vec::new();
    for d in x.low..=x.high() {
        let cols = x.term(d);
        let rows = y.term(d + m);
        for (r, &wv) in rows.iter().enumerate() {
            for (c, &uv) in cols.iter().enumerate() {
                for &p in &alg.hom_basis_proj(uv, wv) {
                    out.push((d, r, c, p));
                }
            }
        }
    }
    out
}

/// Matrix of the Hom-complex differential D: Hom^m -> Hom^{m+1},
/// D(f) = d_Y ∘ f - (-1)^m f ∘ d_X.
pub fn hom_differential(x: &ProjComplex, y: &ProjComplex, m: i64) -> RatMatrix {
    let alg = &x.alg;
    let src = hom_layout(x, y, m);
    let dst = hom_layout(x, y, m + 1);
    let index: BTreeMap<(i64, usize, usize, usize), usize> = dst
        .iter()
        .copied()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let sign = if m.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    };
    let mut mat = RatMatrix::zeros(dst.len(), src.len());
    for (col, &(d, r, c, p)) in src.iter().enumerate() {
        let mut pe = alg.zero();
        pe[p] = Rat::one();
        // d_Y ∘ f: entries (d, r', c) with coefficient (d_Y[r'][r] * p)
        if let Some(dy) = y.diff(d + m) {
            for (rp, dyrow) in dy.iter().enumerate() {
                let prod = alg.mul(&dyrow[r], &pe);
                for (k, coef) in prod.iter().enumerate() {
                    if !coef.is_zero() {
                        let key = (d, rp, c, k);
                        let row = index[&key];
                        let cur = mat.at(row, col).clone();
                        mat.set(row, col, cur + coef);
                    }
                }
            }
        }
        // -(-1)^m f ∘ d_X: entries (d - 1, r, c') with coefficient p * d_X[c][c']
        if let Some(dx) = x.diff(d - 1) {
            let dxrow = &dx[c];
            for (cp, xentry) in dxrow.iter().enumerate() {
                let prod = alg.mul(&pe, xentry);
                for (k, coef) in prod.iter().enumerate() {
                    if !coef.is_zero() {
                        let key = (d - 1, r, cp, k);
                        let row = index[&key];
                        let cur = mat.at(row, col).clone();
                        mat.set(row, col, cur - &sign * coef);
                    }
                }
            }
        }
    }
    mat
}

/// dim Hom_{K^b(proj)}(X, Σ^m Y) = dim H^m of the Hom complex.
pub fn hom_dim_shifted(x: &ProjComplex, y: &ProjComplex, m: i64) -> usize {
    if x.is_zero_complex() || y.is_zero_complex() {
        return 0;
    }
    let window_lo = y.low - x.high();
    let window_hi = y.high() - x.low;
    if m < window_lo || m > window_hi {
        return 0;
    }
    let d_m = hom_differential(x, y, m);
    let d_prev = hom_differential(x, y, m - 1);
    let cycles = d_m.cols - d_m.rank();
    cycles - d_prev.rank()
}

/// Graded hom dimensions over a degree window (inclusive).
pub fn graded_hom_dims(x: &ProjComplex, y: &ProjComplex, lo: i64, hi: i64) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for m in lo..=hi {
        let d = hom_dim_shifted(x, y, m);
        if d != 0 {
            out.insert(m, d);
        }
    }
    out
}

/// Representatives of Hom_{K^b}(X, Σ^m Y): chain maps X -> Σ^m Y spanning the
/// cycles modulo boundaries.
pub fn hom_space_reps(x: &ProjComplex, y: &ProjComplex, m: i64) -> Vec<ChainMap> {
    if x.is_zero_complex() || y.is_zero_complex() {
        return Vec::new();
    }
    let alg = &x.alg;
    let layout = hom_layout(x, y, m);
    if layout.is_empty() {
        return Vec::new();
    }
    let d_m = hom_differential(x, y, m);
    let cycle_basis = d_m.kernel_basis();
    // boundaries: image of D^{m-1}
    let d_prev = hom_differential(x, y, m - 1);
    let mut boundary = Subspace::new(layout.len());
    for c in 0..d_prev.cols {
        boundary.insert(&d_prev.col(c));
    }
    let mut reps = Vec::new();
    let mut span = boundary;
    let shifted = y.shift(m);
    for cyc in cycle_basis {
        if !span.insert(&cyc) {
            continue;
        }
        // assemble the chain map X -> Σ^m Y: degree d block row r col c entry
        let mut maps: BTreeMap<i64, EntryMatrix> = BTreeMap::new();
        for (i, &(d, r, c, p)) in layout.iter().enumerate() {
            if cyc[i].is_zero() {
                continue;
            }
            let entry = maps
                .entry(d)
                .or_insert_with(|| zero_entry_matrix(alg, shifted.term(d).len(), x.term(d).len()));
            entry[r][c][p] += &cyc[i];
        }
        let f = ChainMap {
            from: x.clone(),
            to: shifted.clone(),
            maps,
        };
        debug_assert!(
            f.validate().is_ok(),
            "hom representative must be a chain map"
        );
        reps.push(f);
    }
    reps
}

// ---- minimization ----

pub struct Minimization {
    pub complex: ProjComplex,
    /// inclusion of the minimal complex into the original
    pub incl: ChainMap,
    /// projection of the original onto the minimal complex
    pub proj: ChainMap,
    /// homotopy h with id - incl∘proj = d h + h d on the original complex;
    /// h[&d]: X^d -> X^{d-1}
    pub homotopy: BTreeMap<i64, EntryMatrix>,
}

impl Minimization {
    /// Check π∘ι = id, ι∘π = id - (dh + hd) exactly.
    pub fn verify(&self) -> Result<(), String> {
        let alg = &self.complex.alg;
        let x = &self.incl.to;
        let id_m = ChainMap::identity(&self.complex);
        let round = self.incl.compose(&self.proj);
        let diff = round.add(&id_m.scale(&-Rat::one()));
        if !diff.is_zero_map() {
            return Err("projection ∘ inclusion is not the identity".into());
        }
        // id_X - ι∘π = d h + h d
        for d in x.low..=x.high() {
            let n = x.term(d).len();
            let idb = ChainMap::identity(x).block(d);
            let iopi = self.proj.compose(&self.incl).block(d);
            let h_d = self
                .homotopy
                .get(&d)
                .cloned()
                .unwrap_or_else(|| zero_entry_matrix(alg, x.term(d - 1).len(), n));
            let h_d1 = self
                .homotopy
                .get(&(d + 1))
                .cloned()
                .unwrap_or_else(|| zero_entry_matrix(alg, n, x.term(d + 1).len()));
            // d_{d-1} ∘ h_d + h_{d+1} ∘ d_d
            let term1 = match x.diff(d - 1) {
                Some(dm) => compose_entries(alg, dm, &h_d),
                None => zero_entry_matrix(alg, n, n),
            };
            let term2 = match x.diff(d) {
                Some(dd) => compose_entries(alg, &h_d1, dd),
                None => zero_entry_matrix(alg, n, n),
            };
            let mut want = add_entries(&idb, &scale_entries(&iopi, &-Rat::one()));
            want = add_entries(&want, &scale_entries(&term1, &-Rat::one()));
            want = add_entries(&want, &scale_entries(&term2, &-Rat::one()));
            if !entries_are_zero(&want) {
                return Err(format!("homotopy identity fails in degree {}", d));
            }
        }
        Ok(())
    }
}

/// Invert a = ρ·e_u + n (n in the radical) inside e_u·A·e_u via the Neumann
/// series; returns None if the scalar part ρ vanishes.
fn corner_inverse(alg: &PathAlgebra, u: usize, a: &AlgElt) -> Option<AlgElt> {
    let rho = alg.trivial_coef(a, u).clone();
    if rho.is_zero() {
        return None;
    }
    let e = alg.idempotent(u);
    // write a = ρ(e + m); then a^{-1} = (1/ρ) Σ_k (-m)^k
    let mut neg_m: AlgElt = a.iter().map(|v| -(v / &rho)).collect();
    for (x, y) in neg_m.iter_mut().zip(&e) {
        *x += y;
    }
    let mut inv = e.clone();
    let mut pow = e.clone();
    loop {
        pow = alg.mul(&pow, &neg_m);
        if crate::linalg::vec_is_zero(&pow) {
            break;
        }
        inv = inv.iter().zip(&pow).map(|(x, y)| x + y).collect();
    }
    let inv: AlgElt = inv.iter().map(|v| v / &rho).collect();
    debug_assert_eq!(alg.mul(&inv, a), alg.idempotent(u));
    debug_assert_eq!(alg.mul(a, &inv), alg.idempotent(u));
    Some(inv)
}

/// Remove one contractible pair: the summand c in degree d and r in degree
/// d+1, connected by an entry with invertible corner part.
struct Elimination {
    minimal: ProjComplex,
    incl: ChainMap,
    proj: ChainMap,
    homotopy: BTreeMap<i64, EntryMatrix>,
}

fn eliminate_once(x: &ProjComplex) -> Option<Elimination> {
    let alg = &x.alg;
    for d in x.low..x.high() {
        let dd = x.diff(d)?.clone();
        let rows = x.term(d + 1).len();
        let cols = x.term(d).len();
        for r in 0..rows {
            for c in 0..cols {
                let u = x.term(d)[c];
                if x.term(d + 1)[r] != u {
                    continue;
                }
                let Some(ainv) = corner_inverse(alg, u, &dd[r][c]) else {
                    continue;
                };
                return Some(eliminate_at(x, d, r, c, &ainv));
            }
        }
    }
    None
}

fn eliminate_at(x: &ProjComplex, d: i64, r: usize, c: usize, ainv: &AlgElt) -> Elimination {
    let alg = &x.alg;
    // build the smaller complex: drop summand c from degree d, r from d+1
    let mut terms = Vec::new();
    for deg in x.low..=x.high() {
        let mut t = x.term(deg).to_vec();
        if deg == d {
            t.remove(c);
        } else if deg == d + 1 {
            t.remove(r);
        }
        terms.push(t);
    }
    // blocks of d: a = (r, c), α = row r elsewhere, β = column c elsewhere
    let keep_rows: Vec<usize> = (0..x.term(d + 1).len()).filter(|&i| i != r).collect();
    let keep_cols: Vec<usize> = (0..x.term(d).len()).filter(|&j| j != c).collect();
    let mut diffs = Vec::new();
    for deg in x.low..x.high() {
        let old = x.diff(deg).unwrap();
        let m = if deg == d {
            // B - β a^{-1} α
            let mut m = zero_entry_matrix(alg, keep_rows.len(), keep_cols.len());
            for (ri, &orow) in keep_rows.iter().enumerate() {
                for (ci, &ocol) in keep_cols.iter().enumerate() {
                    let beta = &old[orow][c];
                    let alpha = &old[r][ocol];
                    let corr = alg.mul(&alg.mul(beta, ainv), alpha);
                    let mut v = old[orow][ocol].clone();
                    for (xv, yv) in v.iter_mut().zip(&corr) {
                        *xv -= yv;
                    }
                    m[ri][ci] = v;
                }
            }
            m
        } else if deg == d - 1 {
            // drop row c
            let mut m = zero_entry_matrix(alg, keep_cols.len(), x.term(deg).len());
            for (ri, &orow) in keep_cols.iter().enumerate() {
                for cc in 0..x.term(deg).len() {
                    m[ri][cc] = old[orow][cc].clone();
                }
            }
            m
        } else if deg == d + 1 {
            // drop column r
            let mut m = zero_entry_matrix(alg, x.term(deg + 1).len(), keep_rows.len());
            for rr in 0..x.term(deg + 1).len() {
                for (ci, &ocol) in keep_rows.iter().enumerate() {
                    m[rr][ci] = old[rr][ocol].clone();
                }
            }
            m
        } else {
            old.clone()
        };
        diffs.push(m);
    }
    let minimal = ProjComplex {
        alg: alg.clone(),
        low: x.low,
        terms,
        diffs,
    };

    // witnesses
    let mut incl_maps: BTreeMap<i64, EntryMatrix> = BTreeMap::new();
    let mut proj_maps: BTreeMap<i64, EntryMatrix> = BTreeMap::new();
    for deg in x.low..=x.high() {
        let big = x.term(deg).len();
        if big == 0 {
            continue;
        }
        if deg == d {
            // ι^d = [-a^{-1} α; id] into (P_c ⊕ rest), π^d = [0, id]
            let old = x.diff(d).unwrap();
            let mut im = zero_entry_matrix(alg, big, keep_cols.len());
            let mut pm = zero_entry_matrix(alg, keep_cols.len(), big);
            for (ci, &ocol) in keep_cols.iter().enumerate() {
                let mut v = alg.mul(ainv, &old[r][ocol]);
                for val in v.iter_mut() {
                    *val = -val.clone();
                }
                im[c][ci] = v;
                im[ocol][ci] = alg.idempotent(x.term(d)[ocol]);
                pm[ci][ocol] = alg.idempotent(x.term(d)[ocol]);
            }
            incl_maps.insert(deg, im);
            proj_maps.insert(deg, pm);
        } else if deg == d + 1 {
            // ι^{d+1} = [0; id], π^{d+1} = [-β a^{-1}, id]
            let old = x.diff(d).unwrap();
            let mut im = zero_entry_matrix(alg, big, keep_rows.len());
            let mut pm = zero_entry_matrix(alg, keep_rows.len(), big);
            for (ci, &orow) in keep_rows.iter().enumerate() {
                im[orow][ci] = alg.idempotent(x.term(d + 1)[orow]);
                pm[ci][orow] = alg.idempotent(x.term(d + 1)[orow]);
                let mut v = alg.mul(&old[orow][c], ainv);
                for val in v.iter_mut() {
                    *val = -val.clone();
                }
                pm[ci][r] = v;
            }
            incl_maps.insert(deg, im);
            proj_maps.insert(deg, pm);
        } else {
            let mut m = zero_entry_matrix(alg, big, big);
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = alg.idempotent(x.term(deg)[i]);
            }
            incl_maps.insert(deg, m.clone());
            proj_maps.insert(deg, m);
        }
    }
    let incl = ChainMap {
        from: minimal.clone(),
        to: x.clone(),
        maps: incl_maps,
    };
    let proj = ChainMap {
        from: x.clone(),
        to: minimal.clone(),
        maps: proj_maps,
    };
    // h^{d+1}: X^{d+1} -> X^d, only entry (c, r) = a^{-1}
    let mut h = zero_entry_matrix(alg, x.term(d).len(), x.term(d + 1).len());
    h[c][r] = ainv.clone();
    let mut homotopy = BTreeMap::new();
    homotopy.insert(d + 1, h);
    Elimination {
        minimal,
        incl,
        proj,
        homotopy,
    }
}

/// Minimize a complex: repeatedly cancel differential entries with invertible
/// corner part, composing the homotopy-equivalence witnesses.
pub fn minimize(x: &ProjComplex) -> Minimization {
    let alg = &x.alg;
    let mut cur = x.clone();
    let mut incl = ChainMap::identity(x);
    let mut proj = ChainMap::identity(x);
    let mut homotopy: BTreeMap<i64, EntryMatrix> = BTreeMap::new();
    while let Some(step) = eliminate_once(&cur) {
        // h_total = h_prev + ι_prev ∘ h_step ∘ π_prev
        let mut extra: BTreeMap<i64, EntryMatrix> = BTreeMap::new();
        for (&deg, hblk) in &step.homotopy {
            // X^deg --π_prev--> cur^deg --h--> cur^{deg-1} --ι_prev--> X^{deg-1}
            let left = incl.block(deg - 1);
            let mid = compose_entries(alg, hblk, &proj.block(deg));
            let m = compose_entries(alg, &left, &mid);
            extra.insert(deg, m);
        }
        for (deg, m) in extra {
            match homotopy.get_mut(&deg) {
                Some(existing) => *existing = add_entries(existing, &m),
                None => {
                    homotopy.insert(deg, m);
                }
            }
        }
        incl = step.incl.compose(&incl);
        proj = proj.compose(&step.proj);
        cur = step.minimal;
    }
    let trimmed = cur.trimmed();
    // re-anchor the witnesses on the trimmed complex (blocks over empty
    // degrees are empty matrices; the maps coincide)
    let incl = ChainMap {
        from: trimmed.clone(),
        to: x.clone(),
        maps: incl.maps,
    };
    let proj = ChainMap {
        from: x.clone(),
        to: trimmed.clone(),
        maps: proj.maps,
    };
    Minimization {
        complex: trimmed,
        incl,
        proj,
        homotopy,
    }
}

/// A complex is minimal when every differential entry lies in the radical.
pub fn is_minimal(x: &ProjComplex) -> bool {
    let alg = &x.alg;
    for d in x.low..x.high() {
        if let Some(dd) = x.diff(d) {
            for (r, row) in dd.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    let u = x.term(d)[c];
                    if x.term(d + 1)[r] == u && !alg.trivial_coef(e, u).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// ---- strict endomorphisms, decomposition, isomorphism ----

/// Basis of the space of strict chain maps X -> Y.
pub fn chain_maps(x: &ProjComplex, y: &ProjComplex) -> Vec<ChainMap> {
    let alg = &x.alg;
    let layout = hom_layout(x, y, 0);
    if layout.is_empty() {
        return Vec::new();
    }
    let d0 = hom_differential(x, y, 0);
    let cycles = d0.kernel_basis();
    cycles
        .into_iter()
        .map(|cyc| {
            let mut maps: BTreeMap<i64, EntryMatrix> = BTreeMap::new();
            for (i, &(d, r, c, p)) in layout.iter().enumerate() {
                if cyc[i].is_zero() {
                    continue;
                }
                let entry = maps
                    .entry(d)
                    .or_insert_with(|| zero_entry_matrix(alg, y.term(d).len(), x.term(d).len()));
                entry[r][c][p] += &cyc[i];
            }
            ChainMap {
                from: x.clone(),
                to: y.clone(),
                maps,
            }
        })
        .collect()
}

fn flatten_chain_map(f: &ChainMap, layout: &[(i64, usize, usize, usize)]) -> Vec<Rat> {
    layout
        .iter()
        .map(|&(d, r, c, p)| {
            f.maps
                .get(&d)
                .map(|m| m[r][c][p].clone())
                .unwrap_or_else(Rat::zero)
        })
        .collect()
}

/// Strict endomorphism algebra of a complex, with its chain-map basis.
pub fn strict_end_algebra(x: &ProjComplex) -> (crate::findim::FinDimAlgebra, Vec<ChainMap>) {
    let basis = chain_maps(x, x);
    let layout = hom_layout(x, x, 0);
    let dim = basis.len();
    assert!(dim > 0, "strict_end_algebra of a zero complex");
    let mut span = Subspace::new(layout.len());
    for f in &basis {
        let ok = span.insert(&flatten_chain_map(f, &layout));
        debug_assert!(ok);
    }
    let coords = |f: &ChainMap| -> Vec<Rat> {
        span.coordinates(&flatten_chain_map(f, &layout))
            .expect("endomorphism must lie in the span")
    };
    let unit = coords(&ChainMap::identity(x));
    let products: Vec<Vec<Vec<Rat>>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| coords(&basis[j].compose(&basis[i])))
                .collect()
        })
        .collect();
    let alg = crate::findim::FinDimAlgebra::from_products(dim, unit, |i, j| products[i][j].clone());
    (alg, basis)
}

fn chain_map_from_coords(x: &ProjComplex, basis: &[ChainMap], coords: &[Rat]) -> ChainMap {
    let mut f = ChainMap::zero(x, x);
    for (c, g) in coords.iter().zip(basis) {
        if !c.is_zero() {
            f = f.add(&g.scale(c));
        }
    }
    f
}

/// Split a minimal complex along a strict idempotent chain map by conjugating
/// it, degreewise and per vertex, into an exact coordinate projection.
fn split_by_idempotent(x: &ProjComplex, e: &ChainMap) -> (ProjComplex, ProjComplex) {
    let alg = &x.alg;
    // per degree: invertible scalar change of basis q with q·S·q⁻¹ diagonal
    // 0/1, where S is the scalar part of e
    let mut conj: BTreeMap<i64, (RatMatrix, RatMatrix)> = BTreeMap::new(); // (q, q^{ -1})
    let mut keep: BTreeMap<i64, Vec<bool>> = BTreeMap::new(); // true = image side
    for deg in x.low..=x.high() {
        let verts = x.term(deg).to_vec();
        let n = verts.len();
        let eb = e.block(deg);
        // scalar part, blockwise by vertex (entries across vertices have none)
        let mut s = RatMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                if verts[r] == verts[c] {
                    s.set(r, c, alg.trivial_coef(&eb[r][c], verts[r]).clone());
                }
            }
        }
        // group indices by vertex; diagonalize the idempotent on each group
        let mut flags = vec![false; n];
        let mut q = RatMatrix::zeros(n, n);
        for u in 0..alg.vertex_count() {
            let idx: Vec<usize> = (0..n).filter(|&i| verts[i] == u).collect();
            if idx.is_empty() {
                continue;
            }
            let k = idx.len();
            let mut su = RatMatrix::zeros(k, k);
            for (a, &ia) in idx.iter().enumerate() {
                for (b, &ib) in idx.iter().enumerate() {
                    su.set(a, b, s.at(ia, ib).clone());
                }
            }
            // columns of q⁻¹: basis of im(su) then basis of ker(su)
            let mut cols: Vec<Vec<Rat>> = Vec::new();
            let mut span = Subspace::new(k);
            for c in 0..k {
                let col = su.col(c);
                if span.insert(&col) {
                    cols.push(col);
                }
            }
            let rank = cols.len();
            cols.extend(su.kernel_basis());
            assert_eq!(cols.len(), k, "idempotent scalar part must split the space");
            let mut qinv_u = RatMatrix::zeros(k, k);
            for (cc, col) in cols.iter().enumerate() {
                for (rr, v) in col.iter().enumerate() {
                    qinv_u.set(rr, cc, v.clone());
                }
            }
            let qu = qinv_u.inverse().expect("change of basis is invertible");
            // scatter into the big q (acting only on this vertex group)
            for (a, &ia) in idx.iter().enumerate() {
                for (b, &ib) in idx.iter().enumerate() {
                    q.set(ia, ib, qu.at(a, b).clone());
                }
                flags[ia] = a < rank;
            }
        }
        let qinv = q.inverse().expect("block change of basis is invertible");
        conj.insert(deg, (q, qinv));
        keep.insert(deg, flags);
    }

    // conjugate the complex: d' = Q d Q⁻¹ entrywise (scalar matrices act on
    // the summand index space), e' = Q e Q⁻¹
    let scalar_conj =
        |deg: i64, m: &EntryMatrix, left: &RatMatrix, right: &RatMatrix| -> EntryMatrix {
            // rows indexed by term(deg+?) — caller passes matching matrices
            let rows = m.len();
            let cols = if rows == 0 { 0 } else { m[0].len() };
            let _ = deg;
            let mut out = zero_entry_matrix(alg, rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    let mut acc = vec![Rat::zero(); alg.dim];
                    for i in 0..rows {
                        for j in 0..cols {
                            let coef = left.at(r, i).clone() * right.at(j, c).clone();
                            if coef.is_zero() {
                                continue;
                            }
                            for (av, mv) in acc.iter_mut().zip(&m[i][j]) {
                                *av += &coef * mv;
                            }
                        }
                    }
                    out[r][c] = acc;
                }
            }
            out
        };

    let mut new_diffs = Vec::new();
    for deg in x.low..x.high() {
        let dd = x.diff(deg).unwrap();
        let (q_up, _) = &conj[&(deg + 1)];
        let (_, qinv_lo) = &conj[&deg];
        new_diffs.push(scalar_conj(deg, dd, q_up, qinv_lo));
    }
    let conjugated = ProjComplex {
        alg: alg.clone(),
        low: x.low,
        terms: x.terms.clone(),
        diffs: new_diffs,
    };

    // the conjugated idempotent has exact 0/1 scalar diagonal; a final
    // conjugation by v = D e' + (1-D)(1-e') makes it exactly the coordinate
    // projection, and v has identity scalar part so the differential keeps
    // its block structure after conjugation by v. We don't need v explicitly:
    // commuting with D forces the off-diagonal blocks of d' to vanish, which
    // we realize by conjugating with v computed entrywise.
    let mut e_maps: BTreeMap<i64, EntryMatrix> = BTreeMap::new();
    for deg in x.low..=x.high() {
        let eb = e.block(deg);
        let (q, qinv) = &conj[&deg];
        e_maps.insert(deg, scalar_conj(deg, &eb, q, qinv));
    }
    // v per degree, and v d v⁻¹
    let mut v_blocks: BTreeMap<i64, EntryMatrix> = BTreeMap::new();
    let mut vinv_blocks: BTreeMap<i64, EntryMatrix> = BTreeMap::new();
    for deg in x.low..=x.high() {
        let n = x.term(deg).len();
        let flags = &keep[&deg];
        let ep = &e_maps[&deg];
        // v = D e' + (1-D)(1-e'): rows in D keep e', rows outside take 1-e'
        let mut v = zero_entry_matrix(alg, n, n);
        for r in 0..n {
            for c in 0..n {
                let mut val = if flags[r] {
                    ep[r][c].clone()
                } else {
                    ep[r][c].iter().map(|t| -t.clone()).collect()
                };
                if !flags[r] && r == c {
                    let idem = alg.idempotent(x.term(deg)[r]);
                    for (a, b) in val.iter_mut().zip(&idem) {
                        *a += b;
                    }
                }
                v[r][c] = val;
            }
        }
        // v has identity scalar part: invert by Neumann series on the whole
        // block matrix (v = 1 + radical-valued n)
        let vinv = invert_unitriangular_entry_matrix(alg, x.term(deg), &v);
        v_blocks.insert(deg, v);
        vinv_blocks.insert(deg, vinv);
    }
    let mut final_diffs = Vec::new();
    for deg in conjugated.low..conjugated.high() {
        let dd = conjugated.diff(deg).unwrap();
        let m = compose_entries(
            alg,
            &compose_entries(alg, &v_blocks[&(deg + 1)], dd),
            &vinv_blocks[&deg],
        );
        final_diffs.push(m);
    }
    let final_complex = ProjComplex {
        alg: alg.clone(),
        low: x.low,
        terms: x.terms.clone(),
        diffs: final_diffs,
    };

    // split along the coordinate projection
    let extract = |want: bool| -> ProjComplex {
        let mut terms = Vec::new();
        let mut index: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for deg in final_complex.low..=final_complex.high() {
            let flags = &keep[&deg];
            let idx: Vec<usize> = (0..flags.len()).filter(|&i| flags[i] == want).collect();
            terms.push(idx.iter().map(|&i| final_complex.term(deg)[i]).collect());
            index.insert(deg, idx);
        }
        let mut diffs = Vec::new();
        for deg in final_complex.low..final_complex.high() {
            let dd = final_complex.diff(deg).unwrap();
            let ridx = &index[&(deg + 1)];
            let cidx = &index[&deg];
            let mut m = zero_entry_matrix(alg, ridx.len(), cidx.len());
            for (r, &orow) in ridx.iter().enumerate() {
                for (c, &ocol) in cidx.iter().enumerate() {
                    m[r][c] = dd[orow][ocol].clone();
                }
            }
            diffs.push(m);
        }
        (ProjComplex {
            alg: alg.clone(),
            low: final_complex.low,
            terms,
            diffs,
        })
        .trimmed()
    };
    // sanity: cross blocks vanish
    #[cfg(debug_assertions)]
    {
        for deg in final_complex.low..final_complex.high() {
            let dd = final_complex.diff(deg).unwrap();
            let fr = &keep[&(deg + 1)];
            let fc = &keep[&deg];
            for (r, row) in dd.iter().enumerate() {
                for (c, entry) in row.iter().enumerate() {
                    if fr[r] != fc[c] {
                        debug_assert!(
                            crate::linalg::vec_is_zero(entry),
                            "differential must block-diagonalize"
                        );
                    }
                }
            }
        }
    }
    (extract(true), extract(false))
}

/// Invert an entry matrix of the form identity + radical-valued part over the
/// listed summand vertices.
fn invert_unitriangular_entry_matrix(
    alg: &PathAlgebra,
    verts: &[usize],
    v: &EntryMatrix,
) -> EntryMatrix {
    let n = verts.len();
    let mut id = zero_entry_matrix(alg, n, n);
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = alg.idempotent(verts[i]);
    }
    // n_part = v - id, nilpotent entrywise
    let mut npart = zero_entry_matrix(alg, n, n);
    for r in 0..n {
        for c in 0..n {
            let mut val = v[r][c].clone();
            for (a, b) in val.iter_mut().zip(&id[r][c]) {
                *a -= b;
            }
            npart[r][c] = val;
        }
    }
    let mut inv = id.clone();
    let mut pow = id.clone();
    let neg_n = scale_entries(&npart, &-Rat::one());
    loop {
        pow = compose_entries(alg, &pow, &neg_n);
        if entries_are_zero(&pow) {
            break;
        }
        inv = add_entries(&inv, &pow);
    }
    debug_assert!(entries_are_zero(&sub_check(alg, v, &inv, &id)));
    inv
}

fn sub_check(alg: &PathAlgebra, a: &EntryMatrix, b: &EntryMatrix, id: &EntryMatrix) -> EntryMatrix {
    let prod = compose_entries(alg, a, b);
    add_entries(&prod, &scale_entries(id, &-Rat::one()))
}

/// Decompose into indecomposable summands; input is minimized first.
pub fn decompose(x: &ProjComplex) -> Vec<ProjComplex> {
    let min = minimize(x).complex;
    if min.is_zero_complex() {
        return Vec::new();
    }
    decompose_minimal(&min)
}

fn decompose_minimal(x: &ProjComplex) -> Vec<ProjComplex> {
    if x.is_zero_complex() {
        return Vec::new();
    }
    let (end, basis) = strict_end_algebra(x);
    let idems = end.primitive_idempotents();
    if idems.len() == 1 {
        return vec![x.clone()];
    }
    let e = chain_map_from_coords(x, &basis, &idems[0]);
    let (a, b) = split_by_idempotent(x, &e);
    let mut out = decompose_minimal(&a.trimmed());
    out.extend(decompose_minimal(&b.trimmed()));
    out
}

/// Isomorphism test in K^b(proj): minimize, decompose, and match summands by
/// the radical-avoidance pairing.
pub fn complexes_isomorphic(x: &ProjComplex, y: &ProjComplex) -> bool {
    let mx = minimize(x).complex;
    let my = minimize(y).complex;
    if mx.is_zero_complex() || my.is_zero_complex() {
        return mx.is_zero_complex() && my.is_zero_complex();
    }
    let mut xs = decompose_minimal(&mx);
    let mut ys = decompose_minimal(&my);
    if xs.len() != ys.len() {
        return false;
    }
    while let Some(a) = xs.pop() {
        let Some(pos) = ys.iter().position(|b| indec_complexes_isomorphic(&a, b)) else {
            return false;
        };
        ys.swap_remove(pos);
    }
    true
}

/// For minimal indecomposable complexes: isomorphic iff some composite of
/// strict maps avoids rad End — the same local-endomorphism argument as for
/// modules, valid because null-homotopic endomorphisms of a minimal complex
/// form a nil ideal inside the radical.
fn indec_complexes_isomorphic(x: &ProjComplex, y: &ProjComplex) -> bool {
    // quick invariants
    if x.low != y.low || x.terms != y.terms {
        // same summand multiset per degree is necessary for minimal complexes
        let mut tx: Vec<(i64, Vec<usize>)> = Vec::new();
        let mut ty: Vec<(i64, Vec<usize>)> = Vec::new();
        for d in x.low..=x.high() {
            let mut t = x.term(d).to_vec();
            t.sort_unstable();
            if !t.is_empty() {
                tx.push((d, t));
            }
        }
        for d in y.low..=y.high() {
            let mut t = y.term(d).to_vec();
            t.sort_unstable();
            if !t.is_empty() {
                ty.push((d, t));
            }
        }
        if tx != ty {
            return false;
        }
    }
    let fs = chain_maps(x, y);
    let gs = chain_maps(y, x);
    if fs.is_empty() || gs.is_empty() {
        return false;
    }
    let (end, basis) = strict_end_algebra(x);
    let layout = hom_layout(x, x, 0);
    let mut radspan = Subspace::new(layout.len());
    for r in &end.radical() {
        radspan.insert(&flatten_chain_map(
            &chain_map_from_coords(x, &basis, r),
            &layout,
        ));
    }
    for f in &fs {
        for g in &gs {
            let comp = f.compose(g); // g ∘ f: X -> X
            if !radspan.contains(&flatten_chain_map(&comp, &layout)) {
                return true;
            }
        }
    }
    false
}

// ---- truncated dg endomorphism algebra ----

/// The non-positively truncated dg endomorphism algebra of a complex:
/// degree 0 is the space of strict chain maps (cycles), negative degrees are
/// the full Hom components, the differential is the Hom-complex one.
pub struct DgEndAlgebra {
    pub complex: ProjComplex,
    /// basis of each kept degree, as coefficient vectors over the hom layout
    pub bases: BTreeMap<i64, Vec<Vec<Rat>>>,
}

impl DgEndAlgebra {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.bases
            .iter()
            .filter(|(_, b)| !b.is_empty())
            .map(|(&d, b)| (d, b.len()))
            .collect()
    }
}

pub fn dg_end_algebra(x: &ProjComplex) -> DgEndAlgebra {
    let mut bases = BTreeMap::new();
    let lo = -(x.high() - x.low);
    for m in lo..=0 {
        let layout = hom_layout(x, x, m);
        if layout.is_empty() {
            continue;
        }
        let basis: Vec<Vec<Rat>> = if m == 0 {
            hom_differential(x, x, 0).kernel_basis()
        } else {
            (0..layout.len())
                .map(|i| {
                    let mut v = vec![Rat::zero(); layout.len()];
                    v[i] = Rat::one();
                    v
                })
                .collect()
        };
        if !basis.is_empty() {
            bases.insert(m, basis);
        }
    }
    DgEndAlgebra {
        complex: x.clone(),
        bases,
    }
}
