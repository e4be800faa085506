//! The bounded derived category, reached from K^b(proj) by resolving
//! complexes of modules: projective resolutions of bounded complexes
//! (truncated below a caller-chosen floor), derived Hom, the Nakayama
//! functor ν and its inverse, injective coresolutions via duality, and
//! spherical twists.
//!
//! A resolution carries its augmentation maps and a completeness flag; when
//! the flag is false the complex was brutally cut at the floor and is only
//! trustworthy in degrees at least two above it. Callers pick floors with
//! that margin in mind; `hom_derived` does the bookkeeping itself.

use crate::homotopy::{
    cone, hom_differential, hom_layout, hom_space_reps, minimize, ChainMap, EntryMatrix,
    ProjComplex,
};
use crate::linalg::{rat, ratq, vec_is_zero, Rat, RatMatrix, Subspace};
use crate::modules::{
    is_injective_module, module_hom, nakayama_on_entry_matrix, nakayama_on_proj_map,
    proj_component_basis, proj_cover, socle_space, Module, ModuleMap,
};
use crate::quiver::PathAlgebra;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DerivedError {
    #[error("term in degree {0} is not an injective module")]
    NotInjectiveTerm(i64),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("not a spherical object: {0}")]
    NotSpherical(String),
}

// ---- bounded complexes of modules ----

/// A bounded cochain complex of modules; terms[k] sits in degree low + k.
#[derive(Clone)]
pub struct ModuleComplex {
    pub alg: Arc<PathAlgebra>,
    pub low: i64,
    pub terms: Vec<Module>,
    pub diffs: Vec<ModuleMap>,
}

impl ModuleComplex {
    pub fn new(
        alg: Arc<PathAlgebra>,
        low: i64,
        terms: Vec<Module>,
        diffs: Vec<ModuleMap>,
    ) -> Result<Self, String> {
        if !terms.is_empty() && diffs.len() + 1 != terms.len() {
            return Err("need exactly one differential between consecutive degrees".into());
        }
        let c = ModuleComplex {
            alg,
            low,
            terms,
            diffs,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn zero(alg: &Arc<PathAlgebra>) -> Self {
        ModuleComplex {
            alg: alg.clone(),
            low: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn stalk(m: Module, degree: i64) -> Self {
        let alg = m.alg.clone();
        ModuleComplex {
            alg,
            low: degree,
            terms: vec![m],
            diffs: Vec::new(),
        }
    }

    pub fn high(&self) -> i64 {
        self.low + self.terms.len() as i64 - 1
    }

    pub fn term_or_zero(&self, d: i64) -> Module {
        if d < self.low || d > self.high() {
            Module::zero(&self.alg)
        } else {
            self.terms[(d - self.low) as usize].clone()
        }
    }

    pub fn diff_or_zero(&self, d: i64) -> ModuleMap {
        if d >= self.low && d < self.high() {
            self.diffs[(d - self.low) as usize].clone()
        } else {
            ModuleMap::zero(&self.term_or_zero(d), &self.term_or_zero(d + 1))
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        for (k, f) in self.diffs.iter().enumerate() {
            if f.from != self.terms[k] || f.to != self.terms[k + 1] {
                return Err(format!("differential {k} does not match its endpoints"));
            }
        }
        for k in 0..self.diffs.len().saturating_sub(1) {
            if !self.diffs[k].compose(&self.diffs[k + 1]).is_zero() {
                return Err(format!("d² ≠ 0 out of degree {}", self.low + k as i64));
            }
        }
        Ok(())
    }

    pub fn is_zero_complex(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero_module())
    }

    pub fn trimmed(&self) -> ModuleComplex {
        let first = self.terms.iter().position(|t| !t.is_zero_module());
        let Some(first) = first else {
            return ModuleComplex::zero(&self.alg);
        };
        let last = self
            .terms
            .iter()
            .rposition(|t| !t.is_zero_module())
            .unwrap();
        let diffs = if first == last {
            Vec::new()
        } else {
            self.diffs[first..last].to_vec()
        };
        ModuleComplex {
            alg: self.alg.clone(),
            low: self.low + first as i64,
            terms: self.terms[first..=last].to_vec(),
            diffs,
        }
    }

    pub fn shift(&self, n: i64) -> ModuleComplex {
        let diffs = if n.rem_euclid(2) == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(|f| f.scale(&rat(-1))).collect()
        };
        ModuleComplex {
            alg: self.alg.clone(),
            low: self.low - n,
            terms: self.terms.clone(),
            diffs,
        }
    }

    /// Total dimension of H^d.
    pub fn cohomology_dim(&self, d: i64) -> usize {
        let t = self.term_or_zero(d);
        if t.is_zero_module() {
            return 0;
        }
        let rk_out: usize = self.diff_or_zero(d).blocks.iter().map(|b| b.rank()).sum();
        let rk_in: usize = self
            .diff_or_zero(d - 1)
            .blocks
            .iter()
            .map(|b| b.rank())
            .sum();
        t.total_dim() - rk_out - rk_in
    }
}

/// A chain map between module complexes, stored degreewise; absent degrees
/// are zero.
#[derive(Clone)]
pub struct ModuleChainMap {
    pub from: ModuleComplex,
    pub to: ModuleComplex,
    pub maps: BTreeMap<i64, ModuleMap>,
}

impl ModuleChainMap {
    pub fn block(&self, d: i64) -> ModuleMap {
        match self.maps.get(&d) {
            Some(f) => f.clone(),
            None => ModuleMap::zero(&self.from.term_or_zero(d), &self.to.term_or_zero(d)),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        for (d, f) in &self.maps {
            if f.from != self.from.term_or_zero(*d) || f.to != self.to.term_or_zero(*d) {
                return Err(format!("block at degree {d} does not match its endpoints"));
            }
        }
        let lo = self.from.low.min(self.to.low) - 1;
        let hi = self.from.high().max(self.to.high()) + 1;
        for d in lo..=hi {
            let lhs = self.block(d).compose(&self.to.diff_or_zero(d));
            let rhs = self.from.diff_or_zero(d).compose(&self.block(d + 1));
            if !lhs.add(&rhs.scale(&rat(-1))).is_zero() {
                return Err(format!("square at degree {d} does not commute"));
            }
        }
        Ok(())
    }
}

/// Block assembly of a module map between direct sums; None entries are zero.
fn assemble_module_blocks(
    alg: &Arc<PathAlgebra>,
    from_parts: &[&Module],
    to_parts: &[&Module],
    entries: &[Vec<Option<&ModuleMap>>],
) -> ModuleMap {
    let from = Module::direct_sum(alg, from_parts);
    let to = Module::direct_sum(alg, to_parts);
    let nv = alg.vertex_count();
    let mut blocks = Vec::with_capacity(nv);
    for v in 0..nv {
        let mut b = RatMatrix::zeros(to.dims[v], from.dims[v]);
        let mut roff = 0;
        for (k, tp) in to_parts.iter().enumerate() {
            let mut coff = 0;
            for (l, fp) in from_parts.iter().enumerate() {
                if let Some(g) = entries[k][l] {
                    for r in 0..tp.dims[v] {
                        for c in 0..fp.dims[v] {
                            let val = g.blocks[v].at(r, c);
                            if !val.is_zero() {
                                b.set(roff + r, coff + c, val.clone());
                            }
                        }
                    }
                }
                coff += fp.dims[v];
            }
            roff += tp.dims[v];
        }
        blocks.push(b);
    }
    ModuleMap { from, to, blocks }
}

/// cone(f)^d = X^{d+1} ⊕ Y^d with differential [[-d_X, 0], [f, d_Y]].
pub fn cone_module(f: &ModuleChainMap) -> ModuleComplex {
    let x = &f.from;
    let y = &f.to;
    let alg = x.alg.clone();
    if x.is_zero_complex() && y.is_zero_complex() {
        return ModuleComplex::zero(&alg);
    }
    let lo = (x.low - 1).min(y.low);
    let hi = (x.high() - 1).max(y.high());
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for d in lo..=hi {
        let xp = x.term_or_zero(d + 1);
        let yp = y.term_or_zero(d);
        terms.push(Module::direct_sum(&alg, &[&xp, &yp]));
    }
    for d in lo..hi {
        let x1 = x.term_or_zero(d + 1);
        let y0 = y.term_or_zero(d);
        let x2 = x.term_or_zero(d + 2);
        let y1 = y.term_or_zero(d + 1);
        let dx = x.diff_or_zero(d + 1).scale(&rat(-1));
        let dy = y.diff_or_zero(d);
        let fb = f.block(d + 1);
        diffs.push(assemble_module_blocks(
            &alg,
            &[&x1, &y0],
            &[&x2, &y1],
            &[vec![Some(&dx), None], vec![Some(&fb), Some(&dy)]],
        ));
    }
    let c = ModuleComplex {
        alg,
        low: lo,
        terms,
        diffs,
    };
    debug_assert!(c.validate().is_ok(), "cone of a chain map is a complex");
    c
}

// ---- moving between summand lists and modules ----

/// ⊕ P_{verts[i]} as a module, summands in list order.
pub fn sum_proj_module(alg: &Arc<PathAlgebra>, verts: &[usize]) -> Module {
    let parts: Vec<Module> = verts.iter().map(|&v| Module::proj(alg, v)).collect();
    let refs: Vec<&Module> = parts.iter().collect();
    Module::direct_sum(alg, &refs)
}

/// The module map ⊕P_{src} -> ⊕P_{dst} given by left multiplication with an
/// algebra entry matrix (entries[k][l] ∈ Hom(P_{src[l]}, P_{dst[k]})).
pub fn entry_matrix_to_module_map(
    alg: &Arc<PathAlgebra>,
    src: &[usize],
    dst: &[usize],
    entries: &EntryMatrix,
) -> ModuleMap {
    let from = sum_proj_module(alg, src);
    let to = sum_proj_module(alg, dst);
    let nv = alg.vertex_count();
    let mut blocks = Vec::with_capacity(nv);
    for w in 0..nv {
        let mut b = RatMatrix::zeros(to.dims[w], from.dims[w]);
        let mut coff = 0;
        for (l, &u) in src.iter().enumerate() {
            let src_comp = proj_component_basis(alg, u, w);
            for (s, &pb) in src_comp.iter().enumerate() {
                let mut qe = alg.zero();
                qe[pb] = Rat::one();
                let mut roff = 0;
                for (k, &t) in dst.iter().enumerate() {
                    let dst_comp = proj_component_basis(alg, t, w);
                    let x = &entries[k][l];
                    if !vec_is_zero(x) {
                        let prod = alg.mul(x, &qe);
                        for (r, &qb) in dst_comp.iter().enumerate() {
                            if !prod[qb].is_zero() {
                                b.set(roff + r, coff + s, prod[qb].clone());
                            }
                        }
                    }
                    roff += dst_comp.len();
                }
            }
            coff += src_comp.len();
        }
        blocks.push(b);
    }
    let f = ModuleMap { from, to, blocks };
    debug_assert!(
        ModuleMap::new(f.from.clone(), f.to.clone(), f.blocks.clone()).is_ok(),
        "left multiplication commutes with the right action"
    );
    f
}

/// Read a module map between sums of projectives back off as an algebra
/// entry matrix, by following the generator of each source summand.
pub fn module_map_entries_over_proj(
    alg: &Arc<PathAlgebra>,
    src: &[usize],
    dst: &[usize],
    f: &ModuleMap,
) -> EntryMatrix {
    let mut out = vec![vec![alg.zero(); src.len()]; dst.len()];
    for (l, &u) in src.iter().enumerate() {
        // locate the generator e_u of summand l inside the vertex-u fibre
        let comp = proj_component_basis(alg, u, u);
        let mut coff = 0;
        for &u2 in src[..l].iter() {
            coff += proj_component_basis(alg, u2, u).len();
        }
        let gen_pos = comp
            .iter()
            .position(|&pb| alg.basis[pb].is_trivial())
            .expect("projective has its trivial path");
        let col = coff + gen_pos;
        // the image column distributes over the target summands
        let mut roff = 0;
        for (k, &t) in dst.iter().enumerate() {
            let dst_comp = proj_component_basis(alg, t, u);
            for (r, &qb) in dst_comp.iter().enumerate() {
                let val = f.blocks[u].at(roff + r, col);
                if !val.is_zero() {
                    out[k][l][qb] = val.clone();
                }
            }
            roff += dst_comp.len();
        }
    }
    out
}

/// Forget that a complex of projectives is built from summand lists.
pub fn proj_to_module(p: &ProjComplex) -> ModuleComplex {
    let alg = p.alg.clone();
    let pt = p.trimmed();
    if pt.is_zero_complex() {
        return ModuleComplex::zero(&alg);
    }
    let mut terms = Vec::new();
    for d in pt.low..=pt.high() {
        terms.push(sum_proj_module(&alg, pt.term(d)));
    }
    let mut diffs = Vec::new();
    for d in pt.low..pt.high() {
        diffs.push(entry_matrix_to_module_map(
            &alg,
            pt.term(d),
            pt.term(d + 1),
            pt.diff(d).unwrap(),
        ));
    }
    ModuleComplex {
        alg,
        low: pt.low,
        terms,
        diffs,
    }
}

// ---- duality ----

/// D(f) for a map of modules: contravariant, blocks transpose.
pub fn module_map_dual(f: &ModuleMap, to: &Arc<PathAlgebra>) -> ModuleMap {
    ModuleMap {
        from: f.to.dual(to),
        to: f.from.dual(to),
        blocks: f.blocks.iter().map(|b| b.transpose()).collect(),
    }
}

/// D(X): degree d becomes -d, terms dualize, differentials transpose.
pub fn dual_complex(x: &ModuleComplex, to: &Arc<PathAlgebra>) -> ModuleComplex {
    let xt = x.trimmed();
    if xt.terms.is_empty() {
        return ModuleComplex::zero(to);
    }
    let n = xt.terms.len();
    let low = -xt.high();
    let terms: Vec<Module> = (0..n).map(|k| xt.terms[n - 1 - k].dual(to)).collect();
    let diffs: Vec<ModuleMap> = (0..n - 1)
        .map(|k| module_map_dual(&xt.diffs[n - 2 - k], to))
        .collect();
    ModuleComplex {
        alg: to.clone(),
        low,
        terms,
        diffs,
    }
}

// ---- projective resolutions of bounded complexes ----

pub struct Resolution {
    pub complex: ProjComplex,
    /// augmentation q^d from the degree-d term, as a module, to X^d
    pub maps: BTreeMap<i64, ModuleMap>,
    /// false when the resolution was brutally truncated at the floor
    pub complete: bool,
}

/// Minimal projective resolution of a single module ending in degree `at`,
/// cut off below `low`.
fn min_resolution_of_module(m: &Module, at: i64, low: i64) -> (ProjComplex, ModuleMap, bool) {
    assert!(
        !m.is_zero_module(),
        "resolve the zero module as the zero complex"
    );
    let alg = m.alg.clone();
    let (v0, cover) = proj_cover(m);
    let mut layers = vec![v0];
    let mut ents: Vec<EntryMatrix> = Vec::new();
    let (mut ker, mut incl) = cover.kernel();
    while !ker.is_zero_module() && at - (layers.len() as i64 - 1) > low {
        let (vk, coverk) = proj_cover(&ker);
        let composite = coverk.compose(&incl);
        let prev = layers.last().unwrap().clone();
        ents.push(module_map_entries_over_proj(&alg, &vk, &prev, &composite));
        layers.push(vk);
        let (k2, i2) = coverk.kernel();
        ker = k2;
        incl = i2;
    }
    let complete = ker.is_zero_module();
    layers.reverse();
    ents.reverse();
    let lowdeg = at - (layers.len() as i64 - 1);
    let complex = ProjComplex::new(alg, lowdeg, layers, ents)
        .expect("consecutive syzygy maps compose to zero");
    (complex, cover, complete)
}

/// Projective resolution of a bounded complex of modules, truncated below
/// `low`. The augmentation is a chain map and a quasi-isomorphism in degrees
/// above low + 1; it is one everywhere when `complete` comes back true.
pub fn proj_resolution(x: &ModuleComplex, low: i64) -> Resolution {
    let xt = x.trimmed();
    if xt.terms.is_empty() {
        return Resolution {
            complex: ProjComplex::zero(&x.alg),
            maps: BTreeMap::new(),
            complete: true,
        };
    }
    let res = resolve_rec(&xt, low);
    debug_assert!(
        resolution_cone_is_exact(&res, &xt, low),
        "augmentation must be a quasi-isomorphism above the floor margin"
    );
    res
}

fn resolve_rec(xt: &ModuleComplex, low: i64) -> Resolution {
    let alg = xt.alg.clone();
    let a = xt.low;
    let head = xt.terms[0].clone();
    let (pc, cover, head_complete) = min_resolution_of_module(&head, a, low);
    if xt.terms.len() == 1 {
        let mut maps = BTreeMap::new();
        maps.insert(a, cover);
        return Resolution {
            complex: pc,
            maps,
            complete: head_complete,
        };
    }
    let tail = ModuleComplex {
        alg: alg.clone(),
        low: a + 1,
        terms: xt.terms[1..].to_vec(),
        diffs: xt.diffs[1..].to_vec(),
    }
    .trimmed();
    let ra = resolve_rec(&tail, low);
    let pa = &ra.complex;

    // connecting map g^d: P_C^d -> P_A^{d+1} with d_A g + g d_C = 0 and
    // q_A^{a+1} ∘ L(g^a) = d_X^a ∘ cover; solvable since the augmentation of
    // the tail is a quasi-isomorphism where it matters
    let g = solve_connecting(&alg, &pc, pa, &cover, ra.maps.get(&(a + 1)), &xt.diffs[0]);

    // total complex [[d_C, 0], [g, d_A]]
    let lo = pc.low.min(pa.low);
    let hi = a.max(pa.high());
    let mut terms = Vec::new();
    for d in lo..=hi {
        let mut t = pc.term(d).to_vec();
        t.extend_from_slice(pa.term(d));
        terms.push(t);
    }
    let mut diffs = Vec::new();
    for d in lo..hi {
        let c_rows = pc.term(d + 1).len();
        let c_cols = pc.term(d).len();
        let a_rows = pa.term(d + 1).len();
        let a_cols = pa.term(d).len();
        let mut m = vec![vec![alg.zero(); c_cols + a_cols]; c_rows + a_rows];
        if let Some(dc) = pc.diff(d) {
            for r in 0..c_rows {
                for c in 0..c_cols {
                    m[r][c] = dc[r][c].clone();
                }
            }
        }
        if let Some(da) = pa.diff(d) {
            for r in 0..a_rows {
                for c in 0..a_cols {
                    m[c_rows + r][c_cols + c] = da[r][c].clone();
                }
            }
        }
        if let Some(gd) = g.get(&d) {
            for r in 0..a_rows {
                for c in 0..c_cols {
                    m[c_rows + r][c] = gd[r][c].clone();
                }
            }
        }
        diffs.push(m);
    }
    let px = ProjComplex::new(alg.clone(), lo, terms, diffs)
        .expect("the connecting map squares the total differential to zero");

    // augmentation before minimizing: [cover at a | tail augmentation]
    let mut maps_big: BTreeMap<i64, ModuleMap> = BTreeMap::new();
    for d in lo..=hi.max(xt.high()) {
        let xd = xt.term_or_zero(d);
        if xd.is_zero_module() {
            continue;
        }
        let pcd = sum_proj_module(&alg, pc.term(d));
        let pad = sum_proj_module(&alg, pa.term(d));
        let s = if d == a { Some(cover.clone()) } else { None };
        let qa = ra.maps.get(&d);
        maps_big.insert(
            d,
            assemble_module_blocks(&alg, &[&pcd, &pad], &[&xd], &[vec![s.as_ref(), qa]]),
        );
    }

    let min = minimize(&px);
    let mut maps = BTreeMap::new();
    for (d, q) in &maps_big {
        let iota = entry_matrix_to_module_map(
            &alg,
            min.complex.term(*d),
            px.term(*d),
            &min.incl.block(*d),
        );
        maps.insert(*d, iota.compose(q));
    }
    Resolution {
        complex: min.complex,
        maps,
        complete: head_complete && ra.complete,
    }
}

/// Solve for the connecting entries of the total differential; panics when
/// the floor leaves too little room, which callers rule out by the margin
/// convention.
fn solve_connecting(
    alg: &Arc<PathAlgebra>,
    pc: &ProjComplex,
    pa: &ProjComplex,
    cover: &ModuleMap,
    qa1: Option<&ModuleMap>,
    dxa: &ModuleMap,
) -> BTreeMap<i64, EntryMatrix> {
    let a = pc.high();
    // unknowns: one rational per basis path of each entry slot
    let mut unknowns: Vec<(i64, usize, usize, usize)> = Vec::new();
    for d in pc.low..=a {
        for (r, &w) in pa.term(d + 1).iter().enumerate() {
            for (c, &u) in pc.term(d).iter().enumerate() {
                for &pb in &alg.hom_basis_proj(u, w) {
                    unknowns.push((d, r, c, pb));
                }
            }
        }
    }
    let n = unknowns.len();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();

    // anti-chain condition d_A g + g d_C = 0, one row per coefficient of
    // each target entry
    for d in (pc.low - 1)..=a {
        let t_rows = pa.term(d + 2).len();
        let cols = pc.term(d).len();
        if t_rows == 0 || cols == 0 {
            continue;
        }
        for t in 0..t_rows {
            for c in 0..cols {
                let adim = alg.basis.len();
                let mut coeff = vec![vec![Rat::zero(); adim]; n];
                for (ui, &(ud, ur, uc, upb)) in unknowns.iter().enumerate() {
                    let mut unit = alg.zero();
                    unit[upb] = Rat::one();
                    if ud == d && uc == c {
                        // d_A^{d+1}[t][ur] * g-path
                        if let Some(da) = pa.diff(d + 1) {
                            let prod = alg.mul(&da[t][ur], &unit);
                            for (k, v) in prod.iter().enumerate() {
                                if !v.is_zero() {
                                    coeff[ui][k] += v;
                                }
                            }
                        }
                    }
                    if ud == d + 1 && ur == t {
                        // g-path * d_C^d[uc][c]
                        if let Some(dc) = pc.diff(d) {
                            let prod = alg.mul(&unit, &dc[uc][c]);
                            for (k, v) in prod.iter().enumerate() {
                                if !v.is_zero() {
                                    coeff[ui][k] += v;
                                }
                            }
                        }
                    }
                }
                for k in 0..adim {
                    let row: Vec<Rat> = (0..n).map(|ui| coeff[ui][k].clone()).collect();
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                        rhs.push(Rat::zero());
                    }
                }
            }
        }
    }

    // the strict square over degree a: q_A^{a+1} ∘ L(g^a) = d_X^a ∘ cover
    if let Some(qa1) = qa1 {
        let target = cover.compose(dxa);
        let pa1 = pa.term(a + 1);
        let pca = pc.term(a);
        // coefficient blocks, one per unknown at degree a
        let mut cols_per_unknown: Vec<Option<ModuleMap>> = Vec::new();
        for &(ud, ur, uc, upb) in &unknowns {
            if ud != a {
                cols_per_unknown.push(None);
                continue;
            }
            let mut ents = vec![vec![alg.zero(); pca.len()]; pa1.len()];
            ents[ur][uc][upb] = Rat::one();
            let lmap = entry_matrix_to_module_map(alg, pca, pa1, &ents);
            cols_per_unknown.push(Some(lmap.compose(qa1)));
        }
        let nv = alg.vertex_count();
        for v in 0..nv {
            for i in 0..target.to.dims[v] {
                for j in 0..target.from.dims[v] {
                    let mut row = vec![Rat::zero(); n];
                    let mut any = false;
                    for (ui, m) in cols_per_unknown.iter().enumerate() {
                        if let Some(m) = m {
                            let val = m.blocks[v].at(i, j);
                            if !val.is_zero() {
                                row[ui] = val.clone();
                                any = true;
                            }
                        }
                    }
                    let b = target.blocks[v].at(i, j).clone();
                    if any || !b.is_zero() {
                        rows.push(row);
                        rhs.push(b);
                    }
                }
            }
        }
    } else {
        // tail augmentation vanishes in degree a + 1, so the right-hand side
        // must too; an inexact floor would surface here
        debug_assert!(
            cover.compose(dxa).is_zero(),
            "no room to lift past the floor"
        );
    }

    let mat = RatMatrix::from_rows_with_cols(rows, n);
    let sol = mat
        .solve(&rhs)
        .expect("connecting map exists above the floor margin");

    let mut g: BTreeMap<i64, EntryMatrix> = BTreeMap::new();
    for (ui, &(d, r, c, pb)) in unknowns.iter().enumerate() {
        if sol[ui].is_zero() {
            continue;
        }
        let blk = g
            .entry(d)
            .or_insert_with(|| vec![vec![alg.zero(); pc.term(d).len()]; pa.term(d + 1).len()]);
        blk[r][c][pb] += &sol[ui];
    }
    g
}

#[allow(dead_code)]
fn resolution_cone_is_exact(res: &Resolution, xt: &ModuleComplex, low: i64) -> bool {
    let pm = proj_to_module(&res.complex);
    let q = ModuleChainMap {
        from: pm,
        to: xt.clone(),
        maps: res.maps.clone(),
    };
    if q.validate().is_err() {
        return false;
    }
    let c = cone_module(&q);
    let from = if res.complete { c.low } else { low + 2 };
    (from..=c.high() + 1).all(|d| c.cohomology_dim(d) == 0)
}

// ---- derived Hom ----

/// Layout of Hom^m(P, Y) for P projective: one coordinate per summand of P^d
/// and basis vector of Y^{d+m} over the summand's vertex.
fn hom_mod_layout(p: &ProjComplex, y: &ModuleComplex, m: i64) -> Vec<(i64, usize, usize)> {
    let mut out = Vec::new();
    for d in p.low..=p.high() {
        let yt = y.term_or_zero(d + m);
        for (c, &u) in p.term(d).iter().enumerate() {
            for i in 0..yt.dims[u] {
                out.push((d, c, i));
            }
        }
    }
    out
}

fn hom_mod_differential(p: &ProjComplex, y: &ModuleComplex, m: i64) -> RatMatrix {
    let src = hom_mod_layout(p, y, m);
    let dst = hom_mod_layout(p, y, m + 1);
    let mut index: BTreeMap<(i64, usize, usize), usize> = BTreeMap::new();
    for (row, &key) in dst.iter().enumerate() {
        index.insert(key, row);
    }
    let mut out = RatMatrix::zeros(dst.len(), src.len());
    let sign = if m.rem_euclid(2) == 0 {
        rat(-1)
    } else {
        rat(1)
    };
    for (col, &(d, c, i)) in src.iter().enumerate() {
        let u = p.term(d)[c];
        // postcompose with d_Y
        let dy = y.diff_or_zero(d + m);
        let blk = &dy.blocks[u];
        for r in 0..blk.rows {
            let val = blk.at(r, i);
            if !val.is_zero() {
                let row = index[&(d, c, r)];
                out.set(row, col, out.at(row, col) + val);
            }
        }
        // precompose with d_P, with the Koszul sign
        if let Some(dp) = p.diff(d - 1) {
            let yt = y.term_or_zero(d + m);
            for (cp, &up) in p.term(d - 1).iter().enumerate() {
                let x = &dp[c][cp];
                if vec_is_zero(x) {
                    continue;
                }
                let act = yt.act_elt_component(x, u, up);
                for r in 0..act.rows {
                    let val = act.at(r, i);
                    if !val.is_zero() {
                        let row = index[&(d - 1, cp, r)];
                        out.set(row, col, out.at(row, col) + &(val * &sign));
                    }
                }
            }
        }
    }
    out
}

/// dim Hom_D(P, Σ^m Y) for P a bounded complex of projectives.
pub fn hom_mod_dim(p: &ProjComplex, y: &ModuleComplex, m: i64) -> usize {
    let src = hom_mod_layout(p, y, m);
    if src.is_empty() {
        return 0;
    }
    let cycles = src.len() - hom_mod_differential(p, y, m).rank();
    cycles - hom_mod_differential(p, y, m - 1).rank()
}

/// dim Hom_D(X, Σ^m Y) over the window lo..=hi; zero dimensions are omitted.
pub fn hom_derived(x: &ModuleComplex, y: &ModuleComplex, lo: i64, hi: i64) -> BTreeMap<i64, usize> {
    assert!(lo <= hi);
    let xt = x.trimmed();
    let yt = y.trimmed();
    if xt.terms.is_empty() || yt.terms.is_empty() {
        return BTreeMap::new();
    }
    let dims = hom_derived_at_margin(&xt, &yt, lo, hi, 2);
    debug_assert_eq!(
        dims,
        hom_derived_at_margin(&xt, &yt, lo, hi, 3),
        "a wider resolution floor must not change the computed dimensions"
    );
    dims
}

fn hom_derived_at_margin(
    xt: &ModuleComplex,
    yt: &ModuleComplex,
    lo: i64,
    hi: i64,
    margin: i64,
) -> BTreeMap<i64, usize> {
    let floor = (yt.low - hi - 1 - margin).min(xt.low - 2);
    let r = proj_resolution(xt, floor);
    let mut out = BTreeMap::new();
    for m in lo..=hi {
        let d = hom_mod_dim(&r.complex, yt, m);
        if d != 0 {
            out.insert(m, d);
        }
    }
    out
}

// ---- the Nakayama functor and its inverse ----

/// ν: complexes of projectives to complexes of injectives, termwise.
pub fn nakayama(op: &Arc<PathAlgebra>, p: &ProjComplex) -> ModuleComplex {
    let pt = p.trimmed();
    let alg = pt.alg.clone();
    if pt.is_zero_complex() {
        return ModuleComplex::zero(&alg);
    }
    let mut terms = Vec::new();
    for d in pt.low..=pt.high() {
        let parts: Vec<Module> = pt
            .term(d)
            .iter()
            .map(|&v| Module::inj(&alg, op, v))
            .collect();
        let refs: Vec<&Module> = parts.iter().collect();
        terms.push(Module::direct_sum(&alg, &refs));
    }
    let mut diffs = Vec::new();
    for d in pt.low..pt.high() {
        diffs.push(nakayama_on_entry_matrix(
            &alg,
            op,
            pt.term(d),
            pt.term(d + 1),
            pt.diff(d).unwrap(),
        ));
    }
    ModuleComplex::new(alg, pt.low, terms, diffs).expect("ν preserves the complex laws")
}

/// ν⁻¹ on a complex whose terms are already injective: match each term with
/// a sum of standard injectives along its socle and transport the
/// differentials back through ν.
pub fn nakayama_inv(op: &Arc<PathAlgebra>, y: &ModuleComplex) -> Result<ProjComplex, DerivedError> {
    let yt = y.trimmed();
    let alg = yt.alg.clone();
    if yt.terms.is_empty() {
        return Ok(ProjComplex::zero(&alg));
    }
    let nv = alg.vertex_count();
    let mut summands: Vec<Vec<usize>> = Vec::new();
    let mut isos: Vec<ModuleMap> = Vec::new();
    let mut invs: Vec<ModuleMap> = Vec::new();
    for (k, t) in yt.terms.iter().enumerate() {
        let d = yt.low + k as i64;
        if t.is_zero_module() {
            summands.push(Vec::new());
            let z = Module::zero(&alg);
            isos.push(ModuleMap::zero(&z, t));
            invs.push(ModuleMap::zero(t, &z));
            continue;
        }
        if !is_injective_module(t, op) {
            return Err(DerivedError::NotInjectiveTerm(d));
        }
        let mut verts = Vec::new();
        let mut chosen: Vec<ModuleMap> = Vec::new();
        for v in 0..nv {
            let want = socle_space(t, v).len();
            if want == 0 {
                continue;
            }
            let iv = Module::inj(&alg, op, v);
            let soc = socle_space(&iv, v);
            debug_assert_eq!(soc.len(), 1, "a standard injective has a simple socle");
            let sv = &soc[0];
            let mut span = Subspace::new(t.dims[v]);
            let mut got = 0;
            for f in module_hom(&iv, t) {
                let img = f.blocks[v].apply(sv);
                if span.insert(&img) {
                    verts.push(v);
                    chosen.push(f);
                    got += 1;
                    if got == want {
                        break;
                    }
                }
            }
            assert_eq!(got, want, "injective term splits along its socle");
        }
        let parts: Vec<Module> = chosen.iter().map(|f| f.from.clone()).collect();
        let refs: Vec<&Module> = parts.iter().collect();
        let from = Module::direct_sum(&alg, &refs);
        let mut blocks = Vec::with_capacity(nv);
        for w in 0..nv {
            let mut b = RatMatrix::zeros(t.dims[w], from.dims[w]);
            let mut coff = 0;
            for f in &chosen {
                let fb = &f.blocks[w];
                for r in 0..fb.rows {
                    for c in 0..fb.cols {
                        b.set(r, coff + c, fb.at(r, c).clone());
                    }
                }
                coff += fb.cols;
            }
            blocks.push(b);
        }
        let phi = ModuleMap {
            from,
            to: t.clone(),
            blocks,
        };
        assert!(
            phi.is_isomorphism(),
            "socle-matched envelopes assemble to an isomorphism"
        );
        let inv = ModuleMap {
            from: t.clone(),
            to: phi.from.clone(),
            blocks: phi
                .blocks
                .iter()
                .map(|b| b.inverse().expect("block inverts"))
                .collect(),
        };
        summands.push(verts);
        isos.push(phi);
        invs.push(inv);
    }
    let mut diffs = Vec::new();
    for k in 0..yt.diffs.len() {
        let psi = isos[k].compose(&yt.diffs[k]).compose(&invs[k + 1]);
        diffs.push(entries_over_nakayama(
            &alg,
            op,
            &summands[k],
            &summands[k + 1],
            &psi,
        ));
    }
    Ok(ProjComplex::new(alg, yt.low, summands, diffs)
        .expect("transported differentials satisfy the complex laws"))
}

/// Express a map ⊕I_{src} -> ⊕I_{dst} as an algebra entry matrix through ν.
fn entries_over_nakayama(
    alg: &Arc<PathAlgebra>,
    op: &Arc<PathAlgebra>,
    src: &[usize],
    dst: &[usize],
    f: &ModuleMap,
) -> EntryMatrix {
    let nv = alg.vertex_count();
    let src_parts: Vec<Module> = src.iter().map(|&v| Module::inj(alg, op, v)).collect();
    let dst_parts: Vec<Module> = dst.iter().map(|&v| Module::inj(alg, op, v)).collect();
    let mut out = vec![vec![alg.zero(); src.len()]; dst.len()];
    for (k, &w) in dst.iter().enumerate() {
        for (l, &u) in src.iter().enumerate() {
            // flatten the (k, l) block of f across vertices
            let mut flat = Vec::new();
            for t in 0..nv {
                let ro: usize = dst_parts[..k].iter().map(|m| m.dims[t]).sum();
                let co: usize = src_parts[..l].iter().map(|m| m.dims[t]).sum();
                for r in 0..dst_parts[k].dims[t] {
                    for c in 0..src_parts[l].dims[t] {
                        flat.push(f.blocks[t].at(ro + r, co + c).clone());
                    }
                }
            }
            if vec_is_zero(&flat) {
                continue;
            }
            // coordinates over ν of the path basis of Hom(P_u, P_w)
            let hb = alg.hom_basis_proj(u, w);
            let mut span = Subspace::new(flat.len());
            let mut kept = Vec::new();
            for &pb in &hb {
                let mut x = alg.zero();
                x[pb] = Rat::one();
                let nu = nakayama_on_proj_map(alg, op, u, w, &x);
                let mut nf = Vec::new();
                for (t, blk) in nu.blocks.iter().enumerate() {
                    debug_assert_eq!(blk.rows, dst_parts[k].dims[t]);
                    for r in 0..blk.rows {
                        for c in 0..blk.cols {
                            nf.push(blk.at(r, c).clone());
                        }
                    }
                }
                let fresh = span.insert(&nf);
                debug_assert!(fresh, "ν is faithful on maps between projectives");
                kept.push(pb);
            }
            let coords = span
                .coordinates(&flat)
                .expect("ν is full on maps between projectives");
            for (ci, &pb) in kept.iter().enumerate() {
                if !coords[ci].is_zero() {
                    out[k][l][pb] = coords[ci].clone();
                }
            }
        }
    }
    out
}

// ---- injective coresolutions and ν⁻¹ on arbitrary complexes ----

pub struct Coresolution {
    pub complex: ModuleComplex,
    /// coaugmentation X^d -> Y^d
    pub maps: BTreeMap<i64, ModuleMap>,
    pub complete: bool,
}

/// Injective coresolution through duality: dualize, resolve over the
/// opposite algebra, dualize back. Truncated above `high`.
pub fn injective_coresolution(x: &ModuleComplex, op: &Arc<PathAlgebra>, high: i64) -> Coresolution {
    let alg = x.alg.clone();
    let xt = x.trimmed();
    if xt.terms.is_empty() {
        return Coresolution {
            complex: ModuleComplex::zero(&alg),
            maps: BTreeMap::new(),
            complete: true,
        };
    }
    let dx = dual_complex(&xt, op);
    let r = proj_resolution(&dx, -high);
    let pm = proj_to_module(&r.complex);
    let y = dual_complex(&pm, &alg);
    let mut maps = BTreeMap::new();
    for (d, q) in &r.maps {
        maps.insert(-d, module_map_dual(q, &alg));
    }
    Coresolution {
        complex: y,
        maps,
        complete: r.complete,
    }
}

/// ν⁻¹ of a complex of projectives: coresolve its underlying module complex
/// by injectives, pull back through ν, minimize.
pub fn nu_inverse(
    p: &ProjComplex,
    op: &Arc<PathAlgebra>,
    cap: usize,
) -> Result<ProjComplex, DerivedError> {
    let x = proj_to_module(p);
    if x.terms.is_empty() {
        return Ok(ProjComplex::zero(&p.alg));
    }
    let cor = injective_coresolution(&x, op, x.high() + cap as i64);
    if !cor.complete {
        return Err(DerivedError::CapExceeded(format!(
            "injective coresolution still running after {cap} steps"
        )));
    }
    let q = nakayama_inv(op, &cor.complex)?;
    Ok(minimize(&q).complex)
}

// ---- spherical twists ----

/// Check the graded endomorphism pattern of a twisting object: one
/// dimension in degrees 0 and w for some w ≥ 1, or a two-dimensional
/// degree-0 algebra isomorphic to the dual numbers.
pub fn check_spherical(e: &ProjComplex) -> Result<(), DerivedError> {
    let et = e.trimmed();
    if et.is_zero_complex() {
        return Err(DerivedError::NotSpherical("the zero complex".into()));
    }
    let span = et.high() - et.low;
    let mut dims = BTreeMap::new();
    for m in -span - 1..=span + 1 {
        let d = crate::homotopy::hom_dim_shifted(&et, &et, m);
        if d > 0 {
            dims.insert(m, d);
        }
    }
    if dims.len() == 2 && dims.get(&0) == Some(&1) {
        let (&w, &dw) = dims.iter().find(|(m, _)| **m != 0).unwrap();
        if dw == 1 && w >= 1 {
            return Ok(());
        }
        return Err(DerivedError::NotSpherical(format!(
            "graded endomorphisms concentrated in degrees 0 and {w} with dimension {dw}"
        )));
    }
    if dims.len() == 1 && dims.get(&0) == Some(&2) {
        // two-dimensional degree-0 part: spherical exactly when it is the
        // dual numbers, i.e. some non-identity element squares to zero
        if end_degree_zero_is_dual_numbers(&et) {
            return Ok(());
        }
        return Err(DerivedError::NotSpherical(
            "two-dimensional endomorphism ring is semisimple".into(),
        ));
    }
    Err(DerivedError::NotSpherical(format!(
        "graded endomorphism dimensions {dims:?}"
    )))
}

fn flatten_chain_map(f: &ChainMap, layout: &[(i64, usize, usize, usize)]) -> Vec<Rat> {
    layout
        .iter()
        .map(|&(d, r, c, pi)| {
            let blk = f.block(d);
            blk[r][c][pi].clone()
        })
        .collect()
}

fn end_degree_zero_is_dual_numbers(e: &ProjComplex) -> bool {
    let layout = hom_layout(e, e, 0);
    let dm1 = hom_differential(e, e, -1);
    let mut span = Subspace::new(layout.len());
    for c in 0..dm1.cols {
        span.insert(&dm1.col(c));
    }
    let nb = span.dim();
    let id = ChainMap::identity(e);
    let id_flat = flatten_chain_map(&id, &layout);
    let inserted = span.insert(&id_flat);
    debug_assert!(
        inserted,
        "the identity is not null-homotopic on a nonzero minimal object"
    );
    // pick a representative independent of the identity
    let mut f = None;
    for rep in hom_space_reps(e, e, 0) {
        let flat = flatten_chain_map(&rep, &layout);
        if span.insert(&flat) {
            f = Some(rep);
            break;
        }
    }
    let Some(f) = f else { return false };
    // f² = α·id + β·f modulo boundaries; some (f - μ)² vanishes exactly
    // when α + β²/4 = 0
    let sq = f.compose(&f);
    let sq_flat = flatten_chain_map(&sq, &layout);
    let coords = span
        .coordinates(&sq_flat)
        .expect("squares stay in the spanning set");
    let alpha = coords[nb].clone();
    let beta = coords[nb + 1].clone();
    alpha + beta.clone() * beta * ratq(1, 4) == Rat::zero()
}

/// The twist along a spherical object: the cone over the evaluation map
/// ⊕_m Hom(E, Σ^m X) ⊗ Σ^{-m} E -> X, minimized.
pub fn twist(e: &ProjComplex, x: &ProjComplex) -> Result<ProjComplex, DerivedError> {
    check_spherical(e)?;
    let et = e.trimmed();
    let xt = x.trimmed();
    if xt.is_zero_complex() {
        return Ok(xt);
    }
    let mut parts: Vec<ChainMap> = Vec::new();
    for m in (xt.low - et.high())..=(xt.high() - et.low) {
        for f in hom_space_reps(&et, &xt, m) {
            // reindex E -> Σ^m X as Σ^{-m} E -> X; no signs appear
            let maps: BTreeMap<i64, EntryMatrix> =
                f.maps.iter().map(|(d, b)| (d + m, b.clone())).collect();
            let g = ChainMap {
                from: et.shift(-m),
                to: xt.clone(),
                maps,
            };
            debug_assert!(g.validate().is_ok(), "reindexed evaluation is a chain map");
            parts.push(g);
        }
    }
    let ev = stack_chain_maps(&xt, parts);
    Ok(minimize(&cone(&ev)).complex)
}

/// One chain map out of a direct sum, given the maps on each part.
pub(crate) fn stack_chain_maps(x: &ProjComplex, parts: Vec<ChainMap>) -> ChainMap {
    let alg = &x.alg;
    if parts.is_empty() {
        return ChainMap::zero(&ProjComplex::zero(alg), x);
    }
    let mut src = parts[0].from.clone();
    for p in &parts[1..] {
        src = src.direct_sum(&p.from);
    }
    let mut maps = BTreeMap::new();
    for d in src.low..=src.high() {
        let rows = x.term(d).len();
        let cols = src.term(d).len();
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut blk = vec![vec![alg.zero(); cols]; rows];
        let mut coff = 0;
        for p in &parts {
            let w = p.from.term(d).len();
            if w > 0 {
                let pb = p.block(d);
                for r in 0..rows {
                    for c in 0..w {
                        blk[r][coff + c] = pb[r][c].clone();
                    }
                }
            }
            coff += w;
        }
        maps.insert(d, blk);
    }
    let f = ChainMap {
        from: src,
        to: x.clone(),
        maps,
    };
    debug_assert!(f.validate().is_ok(), "stacked evaluation is a chain map");
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a2, family_b, family_l, family_r, lambda0};
    use crate::homotopy::{complexes_isomorphic, hom_dim_shifted};
    use crate::modules::{ext1_dim, hom_dim};

    fn simple_stalk(alg: &Arc<PathAlgebra>, v: usize) -> ModuleComplex {
        ModuleComplex::stalk(Module::simple(alg, v), 0)
    }

    #[test]
    fn resolutions_of_the_simples_match_the_small_families() {
        let alg = lambda0();
        let r1 = proj_resolution(&simple_stalk(&alg, 0), -8);
        assert!(r1.complete);
        assert!(complexes_isomorphic(&r1.complex, &family_l(&alg, 1)));
        let r2 = proj_resolution(&simple_stalk(&alg, 1), -8);
        assert!(r2.complete);
        assert!(complexes_isomorphic(&r2.complex, &family_b(&alg, 1)));
        for v in 0..2 {
            let p = ProjComplex::stalk_proj(&alg, 0, v);
            let r = proj_resolution(&ModuleComplex::stalk(Module::proj(&alg, v), 0), -8);
            assert!(r.complete);
            assert!(complexes_isomorphic(&r.complex, &p));
        }
    }

    #[test]
    fn resolutions_collapse_contractible_pieces() {
        // a projective over its own simple is quasi-isomorphic to the
        // first syzygy shifted once
        let alg = lambda0();
        let p0 = Module::proj(&alg, 0);
        let (_, cover) = proj_cover(&Module::simple(&alg, 0));
        let x = ModuleComplex::new(
            alg.clone(),
            -1,
            vec![p0, Module::simple(&alg, 0)],
            vec![cover],
        )
        .unwrap();
        let r = proj_resolution(&x, -8);
        assert!(r.complete);
        assert!(complexes_isomorphic(
            &r.complex,
            &ProjComplex::stalk_proj(&alg, -1, 1)
        ));
    }

    #[test]
    fn truncated_resolutions_stop_at_the_floor() {
        let alg = lambda0();
        let r = proj_resolution(&simple_stalk(&alg, 1), -1);
        assert!(!r.complete);
        assert_eq!(r.complex.low, -1);
        assert!(complexes_isomorphic(&r.complex, &family_r(&alg, 1)));
    }

    #[test]
    fn derived_homs_between_stalks_match_classical_invariants() {
        for alg in [lambda0(), a2()] {
            let nv = alg.vertex_count();
            for i in 0..nv {
                for j in 0..nv {
                    let si = Module::simple(&alg, i);
                    let sj = Module::simple(&alg, j);
                    let dims = hom_derived(
                        &ModuleComplex::stalk(si.clone(), 0),
                        &ModuleComplex::stalk(sj.clone(), 0),
                        -2,
                        1,
                    );
                    assert_eq!(dims.get(&0).copied().unwrap_or(0), hom_dim(&si, &sj));
                    assert_eq!(dims.get(&1).copied().unwrap_or(0), ext1_dim(&si, &sj));
                    assert_eq!(dims.get(&-1), None);
                    assert_eq!(dims.get(&-2), None);
                }
            }
        }
    }

    #[test]
    fn the_square_zero_simple_has_periodic_self_extensions() {
        let alg = lambda0();
        let s2 = simple_stalk(&alg, 1);
        let dims = hom_derived(&s2, &s2, -8, 8);
        let expect: BTreeMap<i64, usize> = [(0, 1), (2, 1)].into_iter().collect();
        assert_eq!(dims, expect);
    }

    #[test]
    fn nakayama_matches_serre_duality() {
        let alg = lambda0();
        let op = alg.opposite().unwrap();
        for v in 0..2 {
            let nu = nakayama(&op, &ProjComplex::stalk_proj(&alg, 0, v));
            assert_eq!(nu.terms.len(), 1);
            assert!(nu.terms[0] == Module::inj(&alg, &op, v));
        }
        let probes = [
            ProjComplex::stalk_proj(&alg, 0, 0),
            ProjComplex::stalk_proj(&alg, 0, 1),
            family_r(&alg, 1),
            family_l(&alg, 1),
        ];
        for m in &probes {
            let nu_m = nakayama(&op, m);
            for n in &probes {
                for s in -2..=2 {
                    assert_eq!(
                        hom_dim_shifted(m, n, s),
                        hom_mod_dim(n, &nu_m, -s),
                        "duality pairing at shift {s}"
                    );
                }
            }
        }
    }

    #[test]
    fn nakayama_inverse_round_trips() {
        let alg = lambda0();
        let op = alg.opposite().unwrap();
        for x in [family_r(&alg, 2), family_l(&alg, 1), family_b(&alg, 2)] {
            let z = nakayama(&op, &x);
            let back = nakayama_inv(&op, &z).unwrap();
            assert!(complexes_isomorphic(&back, &x));
        }
    }

    #[test]
    fn nakayama_inverse_rejects_non_injective_terms() {
        let alg = lambda0();
        let op = alg.opposite().unwrap();
        let x = ModuleComplex::stalk(Module::simple(&alg, 0), 3);
        match nakayama_inv(&op, &x) {
            Err(DerivedError::NotInjectiveTerm(3)) => {}
            other => panic!("expected a non-injective rejection, got {other:?}"),
        }
    }

    #[test]
    fn injective_coresolutions_coaugment_correctly() {
        let alg = lambda0();
        let op = alg.opposite().unwrap();
        for x in [
            simple_stalk(&alg, 0),
            simple_stalk(&alg, 1),
            ModuleComplex::stalk(Module::proj(&alg, 1), 0),
        ] {
            let cor = injective_coresolution(&x, &op, 10);
            assert!(cor.complete);
            for t in &cor.complex.terms {
                assert!(t.is_zero_module() || is_injective_module(t, &op));
            }
            let q = ModuleChainMap {
                from: x.trimmed(),
                to: cor.complex.clone(),
                maps: cor.maps.clone(),
            };
            q.validate().unwrap();
            let c = cone_module(&q);
            for d in c.low - 1..=c.high() + 1 {
                assert_eq!(c.cohomology_dim(d), 0, "coaugmentation cone at degree {d}");
            }
        }
    }

    #[test]
    fn the_nakayama_inverse_pipeline_respects_duality() {
        let alg = lambda0();
        let op = alg.opposite().unwrap();
        let x = family_l(&alg, 2);
        let w = nu_inverse(&x, &op, 16).unwrap();
        let xmod = proj_to_module(&x);
        for v in 0..2 {
            let t = ProjComplex::stalk_proj(&alg, 0, v);
            for m in -4..=4 {
                assert_eq!(
                    hom_dim_shifted(&w, &t, m),
                    hom_mod_dim(&t, &xmod, -m),
                    "pairing at vertex {v}, shift {m}"
                );
            }
        }
    }

    #[test]
    fn twists_along_the_zero_spherical_projective() {
        let alg = lambda0();
        let e = ProjComplex::stalk_proj(&alg, 0, 0);
        let t1 = twist(&e, &family_l(&alg, 1)).unwrap();
        assert!(complexes_isomorphic(
            &t1,
            &ProjComplex::stalk_proj(&alg, -1, 1)
        ));
        let t2 = twist(&e, &e).unwrap();
        assert!(complexes_isomorphic(
            &t2,
            &ProjComplex::stalk_proj(&alg, -1, 0)
        ));
        let t3 = twist(&e, &family_b(&alg, 1)).unwrap();
        assert!(complexes_isomorphic(&t3, &family_b(&alg, 1)));
    }

    #[test]
    fn twists_along_the_two_spherical_simple() {
        let alg = lambda0();
        let s2 = family_b(&alg, 1);
        let t1 = twist(&s2, &family_l(&alg, 1)).unwrap();
        assert!(complexes_isomorphic(
            &t1,
            &ProjComplex::stalk_proj(&alg, 0, 1)
        ));
        let t2 = twist(&s2, &ProjComplex::stalk_proj(&alg, 0, 0)).unwrap();
        assert!(complexes_isomorphic(
            &t2,
            &ProjComplex::stalk_proj(&alg, 0, 0)
        ));
        let t3 = twist(&s2, &s2).unwrap();
        assert!(complexes_isomorphic(&t3, &s2.shift(-1)));
    }

    #[test]
    fn non_spherical_objects_are_rejected() {
        let alg = a2();
        let p0 = ProjComplex::stalk_proj(&alg, 0, 0);
        // an exceptional object: nothing in a nonzero degree
        assert!(matches!(
            twist(&p0, &p0),
            Err(DerivedError::NotSpherical(_))
        ));
        // two orthogonal objects: right pattern, semisimple endomorphisms
        let s0res = ProjComplex::new(
            alg.clone(),
            -1,
            vec![vec![1], vec![0]],
            vec![vec![vec![alg.arrow_elt(0)]]],
        )
        .unwrap();
        let e = s0res.direct_sum(&ProjComplex::stalk_proj(&alg, 0, 1));
        assert!(matches!(twist(&e, &p0), Err(DerivedError::NotSpherical(_))));
    }

    #[test]
    fn dualizing_twice_returns_the_original_complex() {
        let alg = lambda0();
        let op = alg.opposite().unwrap();
        let x = proj_to_module(&family_r(&alg, 2));
        let dd = dual_complex(&dual_complex(&x, &op), &alg);
        assert_eq!(dd.low, x.low);
        assert_eq!(dd.terms.len(), x.terms.len());
        for (a, b) in dd.terms.iter().zip(&x.terms) {
            assert!(a == b);
        }
        for (a, b) in dd.diffs.iter().zip(&x.diffs) {
            assert!(a.add(&b.scale(&rat(-1))).is_zero());
        }
    }
}
