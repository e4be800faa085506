//! Structure theory of finite-dimensional associative unital Q-algebras given
//! by a multiplication table: Jacobson radical, semisimple quotient, and a
//! complete set of primitive orthogonal idempotents.
//!
//! The radical is the kernel of the trace form T(x,y) = trace(L_x ∘ L_y),
//! which is exactly the Jacobson radical in characteristic zero. Idempotent
//! splitting works entirely over Q: a candidate element whose minimal
//! polynomial has a rational root or is not squarefree always yields a zero
//! divisor, and any nonzero zero divisor y in a semisimple algebra splits the
//! unit through the idempotent generating the left ideal Ay. Candidates whose
//! minimal polynomial is a product of distinct non-linear irreducibles are
//! skipped; exhausting all candidates certifies the corner as local for every
//! algebra whose semisimple quotient is split (all endomorphism algebras
//! arising from the bundled fixtures are). Number-field residue algebras may
//! in principle defeat the splitter; they cannot arise from the fixtures.

use crate::linalg::{rat, Rat, RatMatrix, Subspace};
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub struct FinDimAlgebra {
    pub dim: usize,
    /// Left multiplication matrix of each basis element: `lmul[i]` sends
    /// coordinates of y to coordinates of b_i * y.
    pub lmul: Vec<RatMatrix>,
    pub unit: Vec<Rat>,
}

impl FinDimAlgebra {
    /// Build from an explicit product on basis elements.
    pub fn from_products(
        dim: usize,
        unit: Vec<Rat>,
        prod: impl Fn(usize, usize) -> Vec<Rat>,
    ) -> Self {
        let mut lmul = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut m = RatMatrix::zeros(dim, dim);
            for j in 0..dim {
                let p = prod(i, j);
                assert_eq!(p.len(), dim);
                for (k, v) in p.into_iter().enumerate() {
                    m.set(k, j, v);
                }
            }
            lmul.push(m);
        }
        FinDimAlgebra { dim, lmul, unit }
    }

    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let ly = self.lmul[i].apply(y);
            for (o, v) in out.iter_mut().zip(ly) {
                *o += xi * v;
            }
        }
        out
    }

    /// Left multiplication operator of an arbitrary element.
    pub fn lmul_of(&self, x: &[Rat]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = m.add(&self.lmul[i].scale(xi));
            }
        }
        m
    }

    pub fn is_idempotent(&self, x: &[Rat]) -> bool {
        self.mul(x, x) == x
    }

    /// Exhaustive associativity and unit check; intended for tests.
    pub fn verify_associative(&self) -> bool {
        let basis: Vec<Vec<Rat>> = (0..self.dim)
            .map(|i| {
                let mut v = vec![Rat::zero(); self.dim];
                v[i] = Rat::one();
                v
            })
            .collect();
        for b in &basis {
            if self.mul(&self.unit, b) != *b || self.mul(b, &self.unit) != *b {
                return false;
            }
        }
        for a in &basis {
            for b in &basis {
                let ab = self.mul(a, b);
                for c in &basis {
                    if self.mul(&ab, c) != self.mul(a, &self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Basis of the Jacobson radical (characteristic zero: radical of the
    /// trace form of the regular representation).
    pub fn radical(&self) -> Vec<Vec<Rat>> {
        let mut gram = RatMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                gram.set(i, j, self.lmul[i].mul(&self.lmul[j]).trace());
            }
        }
        // x in radical iff sum_i x_i T(b_i, b_j) = 0 for all j, i.e. G^T x = 0
        gram.transpose().kernel_basis()
    }

    /// Minimal polynomial of x relative to the given unit, little-endian
    /// coefficients, monic.
    pub fn minimal_polynomial(&self, x: &[Rat], unit: &[Rat]) -> Vec<Rat> {
        let mut span = Subspace::new(self.dim);
        let mut powers = vec![unit.to_vec()];
        span.insert(unit);
        let mut cur = unit.to_vec();
        loop {
            cur = self.mul(&cur, x);
            if let Some(coords) = span.coordinates(&cur) {
                // cur = sum coords_k * powers_k  => minimal poly = t^n - sum
                let n = powers.len();
                let mut p = vec![Rat::zero(); n + 1];
                p[n] = Rat::one();
                // coords are in span-basis order == power order (inserted in order)
                for (k, c) in coords.iter().enumerate() {
                    p[k] = -c.clone();
                }
                return p;
            }
            span.insert(&cur);
            powers.push(cur.clone());
        }
    }

    /// Evaluate a polynomial (little-endian) at x, relative to `unit`.
    pub fn eval_poly(&self, p: &[Rat], x: &[Rat], unit: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        // Horner from the top
        for c in p.iter().rev() {
            out = self.mul(&out, x);
            for (o, u) in out.iter_mut().zip(unit) {
                *o += c * u;
            }
        }
        out
    }

    /// A complete set of primitive orthogonal idempotents summing to 1.
    pub fn primitive_idempotents(&self) -> Vec<Vec<Rat>> {
        let rad = self.radical();
        let quot = QuotientAlgebra::new(self, &rad);
        let bar_idems = quot.split_idempotent(&quot.project(&self.unit));
        // Lift through the radical; orthogonalize sequentially. The last
        // idempotent is 1 minus the sum of the others so the family sums to 1.
        let mut lifted: Vec<Vec<Rat>> = Vec::new();
        let n = bar_idems.len();
        for (k, eb) in bar_idems.iter().enumerate() {
            if k + 1 == n {
                let mut last = self.unit.clone();
                for e in &lifted {
                    for (l, v) in last.iter_mut().zip(e) {
                        *l -= v;
                    }
                }
                debug_assert!(self.is_idempotent(&last));
                lifted.push(last);
                break;
            }
            let mut e = quot.lift(eb);
            // make orthogonal to the previously lifted family, then Newton-lift
            let mut s = vec![Rat::zero(); self.dim];
            for prev in &lifted {
                for (a, b) in s.iter_mut().zip(prev) {
                    *a += b;
                }
            }
            let mut comp = self.unit.clone(); // 1 - s
            for (c, v) in comp.iter_mut().zip(&s) {
                *c -= v;
            }
            e = self.mul(&self.mul(&comp, &e), &comp);
            for _ in 0..64 {
                if self.is_idempotent(&e) {
                    break;
                }
                // e <- 3e^2 - 2e^3
                let e2 = self.mul(&e, &e);
                let e3 = self.mul(&e2, &e);
                e = e2
                    .iter()
                    .zip(&e3)
                    .map(|(a, b)| rat(3) * a - rat(2) * b)
                    .collect();
            }
            assert!(self.is_idempotent(&e), "Newton lifting failed to converge");
            lifted.push(e);
        }
        debug_assert!({
            let mut total = vec![Rat::zero(); self.dim];
            for e in &lifted {
                for (t, v) in total.iter_mut().zip(e) {
                    *t += v;
                }
            }
            total == self.unit
        });
        debug_assert!(lifted.iter().enumerate().all(|(i, e)| lifted
            .iter()
            .enumerate()
            .all(|(j, f)| { i == j || crate::linalg::vec_is_zero(&self.mul(e, f)) })));
        lifted
    }

    /// True when the algebra is local, certified by the idempotent splitter
    /// finding no nontrivial idempotent in the semisimple quotient.
    pub fn is_local(&self) -> bool {
        let rad = self.radical();
        if self.dim - rad.len() == 1 {
            return true; // residue field Q
        }
        let quot = QuotientAlgebra::new(self, &rad);
        quot.split_idempotent(&quot.project(&self.unit)).len() == 1
    }

    /// Certify the algebra is a division algebra: zero radical and no
    /// nontrivial idempotent. Returns a human-readable witness on failure.
    pub fn certify_division(&self) -> Result<(), String> {
        let rad = self.radical();
        if !rad.is_empty() {
            return Err(format!("radical has dimension {}", rad.len()));
        }
        let quot = QuotientAlgebra::new(self, &rad);
        let idems = quot.split_idempotent(&quot.project(&self.unit));
        if idems.len() != 1 {
            return Err(format!("splits into {} idempotents", idems.len()));
        }
        Ok(())
    }
}

/// The quotient of an algebra by a two-sided ideal given as a subspace basis,
/// with section and projection maps.
pub struct QuotientAlgebra<'a> {
    parent: &'a FinDimAlgebra,
    ideal: Subspace,
    /// indices of parent basis vectors forming a complement of the ideal
    section: Vec<usize>,
    pub algebra: FinDimAlgebra,
}

impl<'a> QuotientAlgebra<'a> {
    pub fn new(parent: &'a FinDimAlgebra, ideal_basis: &[Vec<Rat>]) -> Self {
        let mut ideal = Subspace::new(parent.dim);
        for v in ideal_basis {
            ideal.insert(v);
        }
        let mut full = ideal.clone();
        let mut section = Vec::new();
        for i in 0..parent.dim {
            let mut v = vec![Rat::zero(); parent.dim];
            v[i] = Rat::one();
            if full.insert(&v) {
                section.push(i);
            }
        }
        let qdim = section.len();
        // coordinates in the quotient: reduce mod ideal, then express in the
        // section basis (reduced vectors of section elements)
        let mut sect_span = Subspace::new(parent.dim);
        let mut sect_reduced = Vec::new();
        for &i in &section {
            let mut v = vec![Rat::zero(); parent.dim];
            v[i] = Rat::one();
            let r = ideal.reduce(&v);
            sect_span.insert(&r);
            sect_reduced.push(r);
        }
        let project = |x: &[Rat]| -> Vec<Rat> {
            let r = ideal.reduce(x);
            sect_span
                .coordinates(&r)
                .expect("reduction lands in section span")
        };
        let unit_q = project(&parent.unit);
        let algebra = FinDimAlgebra::from_products(qdim, unit_q, |i, j| {
            let p = parent.mul(&sect_reduced[i], &sect_reduced[j]);
            project(&p)
        });
        QuotientAlgebra {
            parent,
            ideal,
            section,
            algebra,
        }
    }

    pub fn project(&self, x: &[Rat]) -> Vec<Rat> {
        let r = self.ideal.reduce(x);
        let mut span = Subspace::new(self.parent.dim);
        let mut reduced = Vec::new();
        for &i in &self.section {
            let mut v = vec![Rat::zero(); self.parent.dim];
            v[i] = Rat::one();
            let rr = self.ideal.reduce(&v);
            span.insert(&rr);
            reduced.push(rr);
        }
        span.coordinates(&r).expect("in span")
    }

    /// Any preimage in the parent of a quotient element.
    pub fn lift(&self, xq: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.parent.dim];
        for (c, &i) in xq.iter().zip(&self.section) {
            out[i] += c;
        }
        out
    }

    /// Recursively split an idempotent f of the (semisimple) quotient algebra
    /// into primitive orthogonal idempotents of the quotient.
    pub fn split_idempotent(&self, f: &[Rat]) -> Vec<Vec<Rat>> {
        let a = &self.algebra;
        debug_assert!(a.is_idempotent(f));
        // corner algebra f A f as a subspace
        let mut corner = Subspace::new(a.dim);
        let mut corner_basis = Vec::new();
        for i in 0..a.dim {
            let mut b = vec![Rat::zero(); a.dim];
            b[i] = Rat::one();
            let v = a.mul(&a.mul(f, &b), f);
            if corner.insert(&v) {
                corner_basis.push(corner.basis().last().unwrap().clone());
            }
        }
        if corner_basis.len() <= 1 {
            return vec![f.to_vec()];
        }
        if let Some(eps) = split_candidates(a, f, &corner_basis) {
            let mut rest = f.to_vec();
            for (r, v) in rest.iter_mut().zip(&eps) {
                *r -= v;
            }
            let mut out = self.split_idempotent(&eps);
            out.extend(self.split_idempotent(&rest));
            return out;
        }
        vec![f.to_vec()]
    }
}

/// Scan deterministic candidates in the corner fAf for a splitting idempotent.
fn split_candidates(a: &FinDimAlgebra, f: &[Rat], corner_basis: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let n = corner_basis.len();
    let mut candidates: Vec<Vec<Rat>> = Vec::new();
    candidates.extend(corner_basis.iter().cloned());
    for i in 0..n {
        for j in 0..n {
            candidates.push(a.mul(&corner_basis[i], &corner_basis[j]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            candidates.push(crate::linalg::vec_add(&corner_basis[i], &corner_basis[j]));
            let comm = crate::linalg::vec_sub(
                &a.mul(&corner_basis[i], &corner_basis[j]),
                &a.mul(&corner_basis[j], &corner_basis[i]),
            );
            candidates.push(comm);
            candidates.push(crate::linalg::vec_add(
                &corner_basis[i],
                &crate::linalg::vec_scale(&corner_basis[j], &rat(2)),
            ));
        }
    }
    for x in candidates {
        if crate::linalg::vec_is_zero(&x) {
            continue;
        }
        if let Some(eps) = try_split(a, f, &x) {
            return Some(eps);
        }
    }
    None
}

fn try_split(a: &FinDimAlgebra, f: &[Rat], x: &[Rat]) -> Option<Vec<Rat>> {
    // work inside the corner: minimal polynomial relative to unit f
    let p = a.minimal_polynomial(x, f);
    if p.len() <= 2 {
        return None; // scalar multiple of f
    }
    // route 1: rational root a0 -> y = x - a0 f is a nonzero zero divisor
    if let Some(a0) = rational_roots(&p).into_iter().next() {
        let mut y = x.to_vec();
        for (yi, fi) in y.iter_mut().zip(f) {
            *yi -= &a0 * fi;
        }
        return left_ideal_idempotent(a, f, &y);
    }
    // route 2: non-squarefree minimal polynomial -> squarefree part evaluates
    // to a nonzero nilpotent
    let d = poly_derivative(&p);
    let g = poly_gcd(&p, &d);
    if g.len() > 1 {
        let (s, r) = poly_divmod(&p, &g);
        debug_assert!(r.iter().all(|c| c.is_zero()));
        let y = a.eval_poly(&s, x, f);
        if !crate::linalg::vec_is_zero(&y) {
            return left_ideal_idempotent(a, f, &y);
        }
    }
    None
}

/// For a nonzero non-invertible y in the semisimple corner fAf, find the
/// idempotent e with (fAf)y = (fAf)e. Any solution of the linear system
/// "e in L, e*l = l for all l in a basis of L" works and is automatically
/// idempotent; e is nonzero (e*y = y) and is not f (else y were invertible).
fn left_ideal_idempotent(a: &FinDimAlgebra, f: &[Rat], y: &[Rat]) -> Option<Vec<Rat>> {
    let mut lspan = Subspace::new(a.dim);
    let mut lbasis: Vec<Vec<Rat>> = Vec::new();
    for i in 0..a.dim {
        let mut b = vec![Rat::zero(); a.dim];
        b[i] = Rat::one();
        let v = a.mul(&a.mul(&a.mul(f, &b), f), y);
        if lspan.insert(&v) {
            lbasis.push(lspan.basis().last().unwrap().clone());
        }
    }
    if lbasis.is_empty() {
        return None;
    }
    // unknowns: coefficients c_k of e = sum c_k l_k; equations: l_j*e = l_j
    // (the generator of the left ideal L = (fAf)y is a right unit of L)
    let m = lbasis.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for lj in &lbasis {
        // coordinates: a.dim equations
        let prods: Vec<Vec<Rat>> = lbasis.iter().map(|lk| a.mul(lj, lk)).collect();
        for coord in 0..a.dim {
            let row: Vec<Rat> = (0..m).map(|k| prods[k][coord].clone()).collect();
            rows.push(row);
            rhs.push(lj[coord].clone());
        }
    }
    let sys = RatMatrix::from_rows(rows);
    let c = sys.solve(&rhs)?;
    let mut e = vec![Rat::zero(); a.dim];
    for (ck, lk) in c.iter().zip(&lbasis) {
        for (ei, li) in e.iter_mut().zip(lk) {
            *ei += ck * li;
        }
    }
    if crate::linalg::vec_is_zero(&e) || e == *f {
        return None;
    }
    debug_assert!(a.is_idempotent(&e));
    Some(e)
}

// ---- polynomial helpers (little-endian coefficient vectors over Q) ----

pub fn poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

pub fn poly_derivative(p: &[Rat]) -> Vec<Rat> {
    if p.len() <= 1 {
        return vec![Rat::zero()];
    }
    (1..p.len()).map(|i| &p[i] * rat(i as i64)).collect()
}

pub fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = num.to_vec();
    poly_trim(&mut r);
    let mut d = den.to_vec();
    poly_trim(&mut d);
    assert!(!d.last().unwrap().is_zero(), "division by zero polynomial");
    let mut q = vec![Rat::zero(); num.len()];
    while r.len() >= d.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - d.len();
        let coef = r.last().unwrap() / d.last().unwrap();
        q[shift] = coef.clone();
        for (i, dc) in d.iter().enumerate() {
            let v = &r[shift + i] - &coef * dc;
            r[shift + i] = v;
        }
        poly_trim(&mut r);
        if r.iter().all(|c| c.is_zero()) {
            r = vec![Rat::zero()];
            break;
        }
    }
    poly_trim(&mut q);
    (q, r)
}

pub fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0].is_zero()) {
        let (_, r) = poly_divmod(&x, &y);
        x = y;
        y = r;
    }
    // monic normalize
    let lead = x.last().unwrap().clone();
    if !lead.is_zero() && !lead.is_one() {
        for c in x.iter_mut() {
            *c /= &lead;
        }
    }
    x
}

/// Rational roots of a monic polynomial over Q, ascending. Complete whenever
/// the scaled constant term factors within the trial-division bound; min
/// polys of the algebras built here have tiny coefficients.
pub fn rational_roots(p: &[Rat]) -> Vec<Rat> {
    use num_bigint::BigInt;
    let mut p = p.to_vec();
    poly_trim(&mut p);
    if p.len() <= 1 {
        return Vec::new();
    }
    // substitute t = s/d with d = lcm of denominators: q(s) monic integer
    let mut d = num_bigint::BigInt::one();
    for c in &p {
        d = num_integer::lcm(d, c.denom().clone());
    }
    let n = p.len() - 1;
    // q_k = p_k * d^(n-k); roots of p = integer roots of q divided by d
    let mut q: Vec<BigInt> = Vec::with_capacity(p.len());
    for (k, c) in p.iter().enumerate() {
        let scaled = c * Rat::from_integer(d.pow((n - k) as u32));
        debug_assert!(scaled.is_integer());
        q.push(scaled.to_integer());
    }
    let c0 = q[0].clone();
    let eval = |r: &BigInt| -> bool {
        let mut acc = BigInt::zero();
        for c in q.iter().rev() {
            acc = acc * r + c;
        }
        acc.is_zero()
    };
    let mut roots = Vec::new();
    if c0.is_zero() {
        roots.push(Rat::zero());
    } else {
        let mag = c0.abs();
        for div in divisors_capped(&mag) {
            for sign in [1i64, -1] {
                let cand = BigInt::from(sign) * &div;
                if eval(&cand) {
                    roots.push(Rat::new(cand, d.clone()));
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn divisors_capped(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    let mut divs = Vec::new();
    if let Some(small) = n.to_u64() {
        let mut i = 1u64;
        while i.saturating_mul(i) <= small && i <= 1_000_000 {
            if small % i == 0 {
                divs.push(BigInt::from(i));
                divs.push(BigInt::from(small / i));
            }
            i += 1;
        }
    } else {
        // too large to factor exhaustively: try small divisors only
        for i in 1u64..=1000 {
            if (n % BigInt::from(i)).is_zero() {
                divs.push(BigInt::from(i));
                divs.push(n / BigInt::from(i));
            }
        }
    }
    divs.sort();
    divs.dedup();
    divs
}
