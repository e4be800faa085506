//! Transport between the four classified kinds of structure: silting
//! objects, simple-minded collections, and the t-structures and
//! co-t-structures they cut out.
//!
//! Silting objects and collections are finite combinatorial data, so those
//! two corners are materialized; the two subcategory corners are carried as
//! [`StructureHandle`]s whose membership oracles answer through windowed Hom
//! vanishing against the partners instead of through any materialized
//! subcategory. Transport in the silting → collection direction replays the
//! object's mutation path on the simples; the reverse direction runs the
//! cone-iteration construction and pulls the result back through ν⁻¹.

use std::sync::Arc;

use thiserror::Error;

use crate::derived::{nu_inverse, stack_chain_maps, DerivedError};
use crate::homotopy::{
    cone, decompose, hom_differential, hom_dim_shifted, hom_layout, hom_space_reps, minimize,
    ChainMap, ProjComplex,
};
use crate::linalg::Subspace;
use crate::quiver::PathAlgebra;
use crate::silting::{
    end_data, flatten, mutate, order_leq, presilting_check, Dir, PresiltingWitness, SiltingObject,
};
use crate::smc::{
    axiom_scan, collections_isomorphic, simple_collection, smc_mutate, smc_order, AxiomViolation,
    SMCollection, SmcMutationError,
};

#[derive(Debug, Error)]
pub enum TransportError {
    #[error("the silting object carries no mutation path back to the regular representation")]
    NoProvenance,
    #[error("transport failed while replaying the mutation path: {0}")]
    TransportFailed(#[from] SmcMutationError),
    #[error(
        "pairing pattern broken at (summand {i}, member {j}, shift {m}): \
         hom dimension {dim}, expected {expected}"
    )]
    DualityFailed {
        i: usize,
        j: usize,
        m: i64,
        dim: usize,
        expected: usize,
    },
}

/// Scan for a failure of dim Hom(M_i, Σ^m X_j) = δ_{ij} δ_{m0} · dim End(X_j)
/// over the full support-forced window of every pair.
fn duality_mismatch(
    summands: &[ProjComplex],
    c: &SMCollection,
) -> Option<(usize, usize, i64, usize, usize)> {
    for (i, mi) in summands.iter().enumerate() {
        let mit = mi.trimmed();
        if mit.is_zero_complex() {
            continue;
        }
        for (j, xj) in c.objects.iter().enumerate() {
            let xjt = xj.trimmed();
            for m in (xjt.low - mit.high())..=(xjt.high() - mit.low) {
                let dim = hom_dim_shifted(mi, xj, m);
                let expected = if i == j && m == 0 { c.end_dims[j] } else { 0 };
                if dim != expected {
                    return Some((i, j, m, dim, expected));
                }
            }
        }
    }
    None
}

/// Check the pairing pattern between a silting object and a collection.
pub fn verify_hom_duality(m: &SiltingObject, c: &SMCollection) -> Result<(), TransportError> {
    match duality_mismatch(&m.summands, c) {
        Some((i, j, m, dim, expected)) => Err(TransportError::DualityFailed {
            i,
            j,
            m,
            dim,
            expected,
        }),
        None => Ok(()),
    }
}

/// Silting object → collection, by transporting the object's mutation path:
/// the regular representation maps to the simples, and each silting mutation
/// replays as the collection mutation with the same index and direction. The
/// result is verified against the pairing pattern before being returned, so
/// a path that fails to commute cannot produce a silently wrong answer.
pub fn phi21(m: &SiltingObject) -> Result<SMCollection, TransportError> {
    let path = m.provenance.as_ref().ok_or(TransportError::NoProvenance)?;
    let mut c = simple_collection(m.alg());
    for &(i, dir) in path {
        c = smc_mutate(&c, i, dir)?;
    }
    verify_hom_duality(m, &c)?;
    Ok(c)
}

/// Default bound on the number of cone-iteration rounds per member.
pub const RICKARD_ITERATION_CAP: usize = 32;
/// Default bound on the injective coresolution length inside ν⁻¹.
pub const CORESOLUTION_CAP: usize = 32;

#[derive(Debug, Error)]
pub enum RickardError {
    #[error("input collection fails its axioms: {0}")]
    Input(AxiomViolation),
    #[error("iteration for member {index} has not stabilized after {cap} rounds")]
    CapExceeded { index: usize, cap: usize },
    #[error("{0}")]
    Derived(#[from] DerivedError),
    #[error("opposite algebra unavailable: {0}")]
    Opposite(String),
    #[error("output fails the pairwise orthogonality scan: {0:?}")]
    NotPresilting(PresiltingWitness),
    #[error(
        "output breaks the pairing pattern at (member {i}, object {j}, shift {m}): \
         hom dimension {dim}, expected {expected}"
    )]
    DualityFailed {
        i: usize,
        j: usize,
        m: i64,
        dim: usize,
        expected: usize,
    },
}

/// Collection → silting object with the default coresolution cap.
pub fn phi12_rickard(c: &SMCollection, cap: usize) -> Result<SiltingObject, RickardError> {
    phi12_rickard_with(c, cap, CORESOLUTION_CAP)
}

/// Collection → silting object. For each member X_i, repeatedly cone away
/// the maps from negatively shifted members: one round stacks a basis of
/// ⊕_j Hom(Σ^m X_j, current) at the shallowest shift m < 0 that still
/// carries maps into a single evaluation map and passes to its minimized
/// cone. Shallowest first matters: coning a deep class adds cells that can
/// regenerate shallower classes forever, while killing the m = −1 layer
/// first is the socle-by-socle hull construction, after which the deeper
/// layers are found dead when their turn comes. Once every negative shift
/// is clear the object plays the role of an injective resolution T_i, so
/// ν⁻¹T_i is the summand paired with X_i. The assembled object must pass
/// the orthogonality scan and the pairing pattern against the input; a
/// self-regenerating input walks into the iteration cap instead of looping.
pub fn phi12_rickard_with(
    c: &SMCollection,
    iteration_cap: usize,
    coresolution_cap: usize,
) -> Result<SiltingObject, RickardError> {
    if let Err(v) = axiom_scan(&c.objects) {
        return Err(RickardError::Input(v));
    }
    let alg = c.alg().clone();
    let op = alg
        .opposite()
        .map_err(|e| RickardError::Opposite(e.to_string()))?;
    let end_reps: Vec<Vec<ChainMap>> = c.objects.iter().map(|x| end_data(x).reps).collect();
    let mut summands = Vec::with_capacity(c.objects.len());
    for (i, xi) in c.objects.iter().enumerate() {
        let mut cur = xi.clone();
        let mut rounds = 0usize;
        loop {
            let parts = shallowest_negative_maps_into(&c.objects, &end_reps, &cur);
            if parts.is_empty() {
                break;
            }
            if rounds == iteration_cap {
                return Err(RickardError::CapExceeded {
                    index: i,
                    cap: iteration_cap,
                });
            }
            let alpha = stack_chain_maps(&cur, parts);
            cur = minimize(&cone(&alpha)).complex;
            rounds += 1;
        }
        summands.push(nu_inverse(&cur, &op, coresolution_cap)?);
    }
    if let Err(w) = presilting_check(&summands) {
        return Err(RickardError::NotPresilting(w));
    }
    let out = SiltingObject::from_summands(summands);
    if let Some((i, j, m, dim, expected)) = duality_mismatch(&out.summands, c) {
        return Err(RickardError::DualityFailed {
            i,
            j,
            m,
            dim,
            expected,
        });
    }
    Ok(out)
}

/// Σ^m of a chain map: the same blocks, reindexed to the shifted complexes.
/// Both differentials pick up the same sign, so the chain condition survives.
fn shift_chain_map(u: &ChainMap, m: i64) -> ChainMap {
    let maps = u.maps.iter().map(|(d, blk)| (d - m, blk.clone())).collect();
    ChainMap {
        from: u.from.shift(m),
        to: u.to.shift(m),
        maps,
    }
}

/// One representative per End(X_j)-orbit of Hom(Σ^m X_j, cur) over all j, at
/// the shallowest shift m < 0 where any such map survives; empty exactly
/// when every negative shift is clear (the support window makes the scan
/// finite). Greedy selection seeded with the boundary space: whenever a
/// class is picked, its whole orbit under precomposition with shifted
/// endomorphisms is swept into the span, so the picks form a basis over
/// End(X_j) rather than over the field.
fn shallowest_negative_maps_into(
    objects: &[ProjComplex],
    end_reps: &[Vec<ChainMap>],
    cur: &ProjComplex,
) -> Vec<ChainMap> {
    let ct = cur.trimmed();
    if ct.is_zero_complex() {
        return Vec::new();
    }
    let deepest = objects
        .iter()
        .map(|xj| xj.trimmed().low - ct.high())
        .min()
        .unwrap_or(0);
    for m in (deepest..=-1).rev() {
        let mut parts = Vec::new();
        for (j, xj) in objects.iter().enumerate() {
            let shifted = xj.shift(m);
            let layout = hom_layout(&shifted, cur, 0);
            if layout.is_empty() {
                continue;
            }
            let reps = hom_space_reps(&shifted, cur, 0);
            if reps.is_empty() {
                continue;
            }
            let mut span = Subspace::new(layout.len());
            let d_prev = hom_differential(&shifted, cur, -1);
            for cix in 0..d_prev.cols {
                span.insert(&d_prev.col(cix));
            }
            for f in &reps {
                if !span.insert(&flatten(f, &layout)) {
                    continue;
                }
                parts.push(f.clone());
                for u in &end_reps[j] {
                    let su = shift_chain_map(u, m);
                    span.insert(&flatten(&su.compose(f), &layout));
                }
            }
        }
        if !parts.is_empty() {
            return parts;
        }
    }
    Vec::new()
}

// ---- structure handles ----

/// Which orthogonality convention a handle's defining oracles use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HandleKind {
    TStructure,
    CoTStructure,
}

/// A t-structure or co-t-structure, carried by its two combinatorial
/// partners. Membership in the four half-categories is decided by windowed
/// Hom vanishing rather than by materializing anything, so a handle is cheap
/// and every oracle call is a finite computation.
#[derive(Debug, Clone)]
pub struct StructureHandle {
    pub kind: HandleKind,
    pub silting_partner: SiltingObject,
    pub smc_partner: SMCollection,
}

impl StructureHandle {
    /// Aisle of the t-structure: Hom(M, Σ^m N) = 0 for all m > 0.
    pub fn member_aisle(&self, n: &ProjComplex) -> bool {
        in_aisle(&self.silting_partner, n)
    }

    /// Co-aisle of the t-structure: Hom(M, Σ^m N) = 0 for all m < 0.
    pub fn member_coaisle(&self, n: &ProjComplex) -> bool {
        let nt = n.trimmed();
        if nt.is_zero_complex() {
            return true;
        }
        for mi in &self.silting_partner.summands {
            let mit = mi.trimmed();
            if mit.is_zero_complex() {
                continue;
            }
            for s in (nt.low - mit.high())..=-1 {
                if hom_dim_shifted(mi, n, s) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Forward class of the co-t-structure, decided through the collection
    /// partner: N qualifies when Hom(N, Σ^m X_j) = 0 for all m > 0 and all j.
    /// For minimal N this reads off as "supported in degrees ≥ 0".
    pub fn member_weight_ge0(&self, n: &ProjComplex) -> bool {
        let nt = n.trimmed();
        if nt.is_zero_complex() {
            return true;
        }
        for xj in &self.smc_partner.objects {
            let xjt = xj.trimmed();
            for s in 1..=(xjt.high() - nt.low) {
                if hom_dim_shifted(n, xj, s) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Backward class of the co-t-structure: Hom(N, Σ^m X_j) = 0 for m < 0.
    pub fn member_weight_le0(&self, n: &ProjComplex) -> bool {
        let nt = n.trimmed();
        if nt.is_zero_complex() {
            return true;
        }
        for xj in &self.smc_partner.objects {
            let xjt = xj.trimmed();
            for s in (xjt.low - nt.high())..=-1 {
                if hom_dim_shifted(n, xj, s) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// The simple objects of the heart.
    pub fn heart_simples(&self) -> &SMCollection {
        &self.smc_partner
    }

    /// Generators of the co-heart: the summands of the silting partner.
    pub fn coheart(&self) -> &[ProjComplex] {
        &self.silting_partner.summands
    }

    /// Does N lie in the co-heart, i.e. is every indecomposable piece of N
    /// isomorphic (with no shift) to a summand of the silting partner?
    pub fn coheart_contains(&self, n: &ProjComplex) -> bool {
        let targets: Vec<ProjComplex> = self
            .silting_partner
            .summands
            .iter()
            .flat_map(decompose)
            .collect();
        decompose(n).iter().all(|piece| {
            targets
                .iter()
                .any(|t| crate::homotopy::complexes_isomorphic(piece, t))
        })
    }
}

/// N lies in the aisle attached to M: Hom(M, Σ^m N) = 0 for every m > 0,
/// scanned over the support-forced window.
pub fn in_aisle(m: &SiltingObject, n: &ProjComplex) -> bool {
    let nt = n.trimmed();
    if nt.is_zero_complex() {
        return true;
    }
    for mi in &m.summands {
        let mit = mi.trimmed();
        if mit.is_zero_complex() {
            continue;
        }
        for s in 1..=(nt.high() - mit.low) {
            if hom_dim_shifted(mi, n, s) != 0 {
                return false;
            }
        }
    }
    true
}

/// The t-structure handle of a silting object.
pub fn t_handle(m: &SiltingObject) -> Result<StructureHandle, TransportError> {
    Ok(StructureHandle {
        kind: HandleKind::TStructure,
        silting_partner: m.clone(),
        smc_partner: phi21(m)?,
    })
}

/// The co-t-structure handle of a silting object.
pub fn cot_handle(m: &SiltingObject) -> Result<StructureHandle, TransportError> {
    Ok(StructureHandle {
        kind: HandleKind::CoTStructure,
        silting_partner: m.clone(),
        smc_partner: phi21(m)?,
    })
}

// ---- report verifiers ----

/// Deterministic catalogue of twenty probe objects: projective stalks across
/// a band of shifts, the resolved simple models across a narrower band, then
/// the outermost stalk shifts, truncated to twenty.
pub fn probe_set(alg: &Arc<PathAlgebra>) -> Vec<ProjComplex> {
    let n = alg.vertex_count();
    let mut out = Vec::new();
    for k in -2..=2 {
        for v in 0..n {
            out.push(ProjComplex::stalk_proj(alg, 0, v).shift(k));
        }
    }
    let simples = simple_collection(alg);
    for k in -1..=1 {
        for x in &simples.objects {
            out.push(x.shift(k));
        }
    }
    for k in [-3, 3] {
        for v in 0..n {
            out.push(ProjComplex::stalk_proj(alg, 0, v).shift(k));
        }
    }
    out.truncate(20);
    out
}

/// Compare the co-t-structure oracles of two handles over a probe list; one
/// line per disagreeing (probe, oracle) pair, in probe order.
pub fn weight_oracle_disagreements(
    a: &StructureHandle,
    b: &StructureHandle,
    probes: &[ProjComplex],
) -> Vec<String> {
    let mut out = Vec::new();
    for (ix, n) in probes.iter().enumerate() {
        let (ga, gb) = (a.member_weight_ge0(n), b.member_weight_ge0(n));
        if ga != gb {
            out.push(format!(
                "probe {ix}: forward-class oracles split ({ga} vs {gb})"
            ));
        }
        let (la, lb) = (a.member_weight_le0(n), b.member_weight_le0(n));
        if la != lb {
            out.push(format!(
                "probe {ix}: backward-class oracles split ({la} vs {lb})"
            ));
        }
    }
    out
}

/// Outcome of checking that transport commutes with one left mutation.
#[derive(Debug)]
pub struct CommutationReport {
    /// transporting after mutating agrees with mutating the transport
    pub transported_agrees: bool,
    /// number of probe objects pushed through the membership oracles
    pub probes: usize,
    /// oracle disagreements between the two routes, empty on success
    pub disagreements: Vec<String>,
}

impl CommutationReport {
    pub fn all_pass(&self) -> bool {
        self.transported_agrees && self.disagreements.is_empty()
    }
}

/// Check that the two routes to the mutated collection — transport the
/// mutated object, or mutate the transported collection — agree, both as
/// objects and through the membership oracles of the handles they induce.
pub fn verify_commutation(
    m: &SiltingObject,
    i: usize,
) -> Result<CommutationReport, TransportError> {
    let mutated = mutate(m, i, Dir::Left);
    let direct = phi21(&mutated)?;
    let stepped = smc_mutate(&phi21(m)?, i, Dir::Left).map_err(TransportError::TransportFailed)?;
    let transported_agrees = collections_isomorphic(&direct, &stepped);
    let ha = StructureHandle {
        kind: HandleKind::CoTStructure,
        silting_partner: mutated.clone(),
        smc_partner: direct,
    };
    let hb = StructureHandle {
        kind: HandleKind::CoTStructure,
        silting_partner: mutated,
        smc_partner: stepped,
    };
    let probes = probe_set(m.alg());
    let disagreements = weight_oracle_disagreements(&ha, &hb, &probes);
    Ok(CommutationReport {
        transported_agrees,
        probes: probes.len(),
        disagreements,
    })
}

/// One compared pair in an order-isomorphism report: the three readings of
/// "first ≥ second".
#[derive(Debug)]
pub struct OrderIsoRow {
    pub silting_leq: bool,
    pub smc_leq: bool,
    pub aisle_probe_leq: bool,
}

impl OrderIsoRow {
    pub fn agrees(&self) -> bool {
        self.silting_leq == self.smc_leq && self.smc_leq == self.aisle_probe_leq
    }
}

#[derive(Debug)]
pub struct OrderIsoReport {
    pub rows: Vec<OrderIsoRow>,
}

impl OrderIsoReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(OrderIsoRow::agrees)
    }
}

/// For each pair (M, M'), read "M ≥ M'" three ways: the silting order, the
/// collection order of the transports, and aisle inclusion sampled on the
/// probe catalogue. An order isomorphism forces all three to coincide.
pub fn verify_order_iso(
    pairs: &[(SiltingObject, SiltingObject)],
) -> Result<OrderIsoReport, TransportError> {
    let mut rows = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let probes = probe_set(a.alg());
        let silting_leq = order_leq(a, b);
        let smc_leq = smc_order(&phi21(a)?, &phi21(b)?);
        let aisle_probe_leq = probes.iter().all(|n| !in_aisle(b, n) || in_aisle(a, n));
        rows.push(OrderIsoRow {
            silting_leq,
            smc_leq,
            aisle_probe_leq,
        });
    }
    Ok(OrderIsoReport { rows })
}
