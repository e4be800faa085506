//! Acceptance sweep: ten end-to-end checks, one summary line each.
//!
//! Every test prints `[ k/10] <what>: PASS` (or FAIL with the first problem)
//! so a `--nocapture` run reads as a checklist. The checks intentionally
//! overlap the unit suites — they re-derive the published numbers and graph
//! shapes from scratch through the public API only.

use silting::bijections::{phi12_rickard, phi21, verify_hom_duality, verify_order_iso};
use silting::derived::{
    check_spherical, hom_derived, nu_inverse, proj_resolution, proj_to_module, twist, ModuleComplex,
};
use silting::fixtures::{a2, a3, family_b, family_l, family_r, lambda0};
use silting::graphiso::digraphs_isomorphic;
use silting::homotopy::{
    complexes_isomorphic, cone, graded_hom_dims, hom_dim_shifted, is_minimal, minimize,
    strict_end_algebra, ChainMap, ProjComplex,
};
use silting::modules::{bb_tilting, Module, TiltError};
use silting::silting::{
    lattice_exchange_ball, mutate, order_leq, regular_object, silting_certificate,
    silting_objects_isomorphic, silting_quiver, Dir, SiltingObject,
};
use silting::smc::{simple_collection, smc_check, smc_mutate};

fn report(idx: usize, what: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("[{idx:2}/10] {what}: PASS");
    } else {
        println!(
            "[{idx:2}/10] {what}: FAIL ({} problem(s), first: {})",
            failures.len(),
            failures[0]
        );
        panic!("acceptance check {idx} failed:\n{}", failures.join("\n"));
    }
}

/// 1. Graded hom tables between P_2 and the R/L families over the two-vertex
/// algebra: dimensions are 0/1 with closed-form windows.
#[test]
fn criterion_01_graded_hom_tables() {
    let alg = lambda0();
    let p2 = ProjComplex::stalk_proj(&alg, 0, 1);
    let mut bad = Vec::new();
    for n in 0usize..=4 {
        let ni = n as i64;
        let r = family_r(&alg, n);
        let l = family_l(&alg, n);
        for m in -8i64..=8 {
            let cases = [
                (
                    "Hom(P2, Σ^m R(n))",
                    hom_dim_shifted(&p2, &r, m),
                    -ni <= m && m <= 0,
                ),
                (
                    "Hom(R(n), Σ^m P2)",
                    hom_dim_shifted(&r, &p2, m),
                    (2 <= m && m <= ni) || (n == 0 && m == 0),
                ),
                (
                    "Hom(P2, Σ^m L(n))",
                    hom_dim_shifted(&p2, &l, m),
                    (2 - ni <= m && m <= 0 && n > 0) || (n == 0 && m == 0),
                ),
                (
                    "Hom(L(n), Σ^m P2)",
                    hom_dim_shifted(&l, &p2, m),
                    0 <= m && m <= ni,
                ),
            ];
            for (tag, got, in_window) in cases {
                let want = usize::from(in_window);
                if got != want {
                    bad.push(format!("{tag} at n={n}, m={m}: dim {got}, expected {want}"));
                }
            }
        }
    }
    report(1, "graded hom tables of the complex families", bad);
}

/// 2. Endomorphism patterns of the two twisting objects: End(P_1) is the
/// dual numbers concentrated in degree 0, the simple at the looped-off
/// vertex has its self-maps in degrees 0 and 2.
#[test]
fn criterion_02_twisting_object_end_patterns() {
    let alg = lambda0();
    let p1 = ProjComplex::stalk_proj(&alg, 0, 0);
    let s2 = family_b(&alg, 1);
    let mut bad = Vec::new();
    for m in -8i64..=8 {
        let dp = hom_dim_shifted(&p1, &p1, m);
        let wp = if m == 0 { 2 } else { 0 };
        if dp != wp {
            bad.push(format!("dim Hom(P1, Σ^{m} P1) = {dp}, expected {wp}"));
        }
        let ds = hom_dim_shifted(&s2, &s2, m);
        let ws = usize::from(m == 0) + usize::from(m == 2);
        if ds != ws {
            bad.push(format!("dim Hom(S2, Σ^{m} S2) = {ds}, expected {ws}"));
        }
    }
    // Degree 0 part of End(P_1) is K[x]/x²: two-dimensional with a
    // one-dimensional radical spanned by a square-zero element.
    let (end, basis) = strict_end_algebra(&p1);
    if end.dim != 2 {
        bad.push(format!(
            "strict End(P1) has dimension {}, expected 2",
            end.dim
        ));
    }
    let rad = end.radical();
    if rad.len() != 1 {
        bad.push(format!(
            "rad End(P1) has dimension {}, expected 1",
            rad.len()
        ));
    } else {
        let mut u = ChainMap::zero(&p1, &p1);
        for (k, coef) in rad[0].iter().enumerate() {
            u = u.add(&basis[k].scale(coef));
        }
        if u.is_zero_map() {
            bad.push("radical basis vector lifted to the zero chain map".into());
        }
        if !u.compose(&u).is_zero_map() {
            bad.push("radical element of End(P1) does not square to zero".into());
        }
    }
    report(2, "endomorphism patterns of the twisting objects", bad);
}

/// 3. Twist functor identities on the two-vertex algebra, plus the square of
/// the projective twist acting as ν⁻¹Σ² on a catalogue of objects.
#[test]
fn criterion_03_twist_identities() {
    let alg = lambda0();
    let op = alg.opposite().expect("opposite algebra");
    let p1 = ProjComplex::stalk_proj(&alg, 0, 0);
    let p2 = ProjComplex::stalk_proj(&alg, 0, 1);
    let s1 = family_l(&alg, 1);
    let s2 = family_b(&alg, 1);
    let r2 = family_r(&alg, 2);
    let mut bad = Vec::new();
    for (e, name) in [(&p1, "P1"), (&s2, "S2")] {
        if let Err(e) = check_spherical(e) {
            bad.push(format!("{name} fails the spherical pattern check: {e}"));
        }
    }
    let table: [(&ProjComplex, &ProjComplex, ProjComplex, &str); 6] = [
        (&p1, &s1, p2.shift(1), "twist_P1(S1) = ΣP2"),
        (&p1, &p1, p1.shift(1), "twist_P1(P1) = ΣP1"),
        (&p1, &s2, s2.clone(), "twist_P1(S2) = S2"),
        (&s2, &s1, p2.clone(), "twist_S2(S1) = P2"),
        (&s2, &p1, p1.clone(), "twist_S2(P1) = P1"),
        (&s2, &s2, s2.shift(-1), "twist_S2(S2) = Σ⁻¹S2"),
    ];
    for (e, x, want, tag) in &table {
        match twist(e, x) {
            Ok(t) if complexes_isomorphic(&t, want) => {}
            Ok(t) => bad.push(format!("{tag} failed: got {t:?}")),
            Err(e) => bad.push(format!("{tag} errored: {e}")),
        }
    }
    for (x, name) in [
        (&p1, "P1"),
        (&p2, "P2"),
        (&s1, "S1"),
        (&s2, "S2"),
        (&r2, "R(2)"),
    ] {
        let twice = twist(&p1, x).and_then(|t| twist(&p1, &t));
        let serre = nu_inverse(&x.shift(2), &op, 32);
        match (twice, serre) {
            (Ok(t), Ok(s)) if complexes_isomorphic(&t, &s) => {}
            (Ok(t), Ok(s)) => bad.push(format!("twist²({name}) = {t:?} but ν⁻¹Σ²({name}) = {s:?}")),
            (t, s) => bad.push(format!("twist²/ν⁻¹Σ² on {name} errored: {t:?} / {s:?}")),
        }
    }
    report(3, "twist functor identities", bad);
}

/// 4. The radius-3 mutation ball of the regular object over the two-vertex
/// algebra: 14 nodes, out-degree exactly two with distinct targets, and the
/// same digraph as the integer-triple lattice model.
#[test]
fn criterion_04_exchange_quiver_ball() {
    let alg = lambda0();
    let reg = regular_object(&alg);
    let quiver = silting_quiver(&reg, 4);
    let mut bad = Vec::new();
    for (u, &depth) in quiver.depths.iter().enumerate() {
        if depth > 3 {
            continue;
        }
        let targets: Vec<usize> = quiver
            .edges
            .iter()
            .filter(|&&(s, _, _)| s == u)
            .map(|&(_, _, v)| v)
            .collect();
        if targets.len() != 2 {
            bad.push(format!(
                "node {u} at depth {depth} has {} outgoing mutations, expected 2",
                targets.len()
            ));
        } else if targets[0] == targets[1] {
            bad.push(format!(
                "node {u} at depth {depth} has two mutations with equal target"
            ));
        }
    }
    let (depths, edges) = quiver.induced_ball(3);
    if depths.len() != 14 {
        bad.push(format!(
            "radius-3 ball has {} nodes, expected 14",
            depths.len()
        ));
    }
    let (lat_depths, lat_edges) = lattice_exchange_ball(3);
    if !digraphs_isomorphic(depths.len(), &edges, lat_depths.len(), &lat_edges) {
        bad.push("radius-3 ball is not isomorphic to the lattice model ball".into());
    }
    report(4, "exchange quiver ball shape", bad);
}

/// 5. Left and right mutation are mutually inverse at every summand of every
/// node in the radius-3 ball, in both orders.
#[test]
fn criterion_05_mutation_involution() {
    let alg = lambda0();
    let reg = regular_object(&alg);
    let ball = silting_quiver(&reg, 3);
    let mut bad = Vec::new();
    for (u, node) in ball.nodes.iter().enumerate() {
        for i in 0..node.summands.len() {
            let lr = mutate(&mutate(node, i, Dir::Left), i, Dir::Right);
            if !silting_objects_isomorphic(&lr, node) {
                bad.push(format!(
                    "right∘left at node {u}, summand {i} moved the object"
                ));
            }
            let rl = mutate(&mutate(node, i, Dir::Right), i, Dir::Left);
            if !silting_objects_isomorphic(&rl, node) {
                bad.push(format!(
                    "left∘right at node {u}, summand {i} moved the object"
                ));
            }
        }
    }
    report(5, "mutation involution on the radius-3 ball", bad);
}

/// 6. The transported collection of every node in the radius-2 ball pairs
/// against the node's summands by the identity-matrix hom pattern.
#[test]
fn criterion_06_transport_pairing() {
    let alg = lambda0();
    let reg = regular_object(&alg);
    let ball = silting_quiver(&reg, 2);
    let mut bad = Vec::new();
    if ball.nodes.len() != 7 {
        bad.push(format!(
            "radius-2 ball has {} nodes, expected 7",
            ball.nodes.len()
        ));
    }
    for (u, node) in ball.nodes.iter().enumerate() {
        match phi21(node) {
            Ok(c) => {
                if let Err(e) = verify_hom_duality(node, &c) {
                    bad.push(format!("pairing fails at node {u}: {e}"));
                }
            }
            Err(e) => bad.push(format!("transport fails at node {u}: {e}")),
        }
    }
    report(6, "transport pairing duality on the radius-2 ball", bad);
}

/// 7. The iterated-cone construction inverts transport on the radius-2 ball,
/// and rebuilds the regular object from the simples on all three fixtures.
#[test]
fn criterion_07_round_trip() {
    let mut bad = Vec::new();
    let alg = lambda0();
    let reg = regular_object(&alg);
    let ball = silting_quiver(&reg, 2);
    for (u, node) in ball.nodes.iter().enumerate() {
        let back = phi21(node)
            .map_err(|e| format!("transport fails at node {u}: {e}"))
            .and_then(|c| {
                phi12_rickard(&c, 32).map_err(|e| format!("rebuild fails at node {u}: {e}"))
            });
        match back {
            Ok(m) => {
                if !silting_objects_isomorphic(&m, node) {
                    bad.push(format!("round trip lands off the start object at node {u}"));
                }
            }
            Err(e) => bad.push(e),
        }
    }
    for (alg, name) in [(lambda0(), "two-vertex"), (a2(), "A2"), (a3(), "A3")] {
        match phi12_rickard(&simple_collection(&alg), 32) {
            Ok(m) => {
                if !silting_objects_isomorphic(&m, &regular_object(&alg)) {
                    bad.push(format!(
                        "simples of {name} do not rebuild the regular object"
                    ));
                }
            }
            Err(e) => bad.push(format!("rebuild from the simples of {name} errored: {e}")),
        }
    }
    report(7, "round trip through collections and back", bad);
}

/// 8. Wherever the one-point tilt hypotheses hold, the tilting module's
/// stalk resolution is the left mutation of the regular object, is two-term,
/// and certifies.
#[test]
fn criterion_08_one_point_tilts() {
    let mut bad = Vec::new();
    for (alg, name) in [(lambda0(), "two-vertex"), (a2(), "A2"), (a3(), "A3")] {
        let op = alg.opposite().expect("opposite algebra");
        let reg = regular_object(&alg);
        let mut hit = 0usize;
        for i in 0..alg.vertex_count() {
            let summands = match bb_tilting(&alg, &op, i) {
                Ok(s) => s,
                Err(TiltError::HypothesisFailed(_)) => continue,
                Err(TiltError::NotTilting(e)) => {
                    bad.push(format!(
                        "{name} vertex {i}: hypotheses hold but not tilting: {e}"
                    ));
                    continue;
                }
            };
            hit += 1;
            let mut stalks = Vec::new();
            for m in &summands {
                let res = proj_resolution(&ModuleComplex::stalk(m.clone(), 0), -4);
                if !res.complete || res.complex.trimmed().low < -1 {
                    bad.push(format!(
                        "{name} vertex {i}: a tilting summand has projective dimension > 1"
                    ));
                }
                stalks.push(res.complex);
            }
            let tilt = SiltingObject::from_summands(stalks);
            if !silting_objects_isomorphic(&tilt, &mutate(&reg, i, Dir::Left)) {
                bad.push(format!(
                    "{name} vertex {i}: tilt differs from the left mutation"
                ));
            }
            let cert = silting_certificate(&tilt);
            if !cert.passes() {
                bad.push(format!("{name} vertex {i}: tilt does not certify"));
            }
        }
        if hit == 0 {
            bad.push(format!(
                "no vertex of {name} satisfied the one-point tilt hypotheses"
            ));
        }
    }
    report(8, "one-point tilts agree with left mutation", bad);
}

/// 9. Three readings of "M ≥ M'" — the summand-vanishing order, the
/// collection order of the transports, and aisle inclusion on the probe
/// catalogue — agree on 30 ordered pairs, and left mutation descends.
#[test]
fn criterion_09_order_readings() {
    let alg = lambda0();
    let reg = regular_object(&alg);
    let ball = silting_quiver(&reg, 2);
    let mut bad = Vec::new();
    let mut pairs = Vec::new();
    for a in 0..6 {
        for b in 0..6 {
            if a != b {
                pairs.push((ball.nodes[a].clone(), ball.nodes[b].clone()));
            }
        }
    }
    if pairs.len() != 30 {
        bad.push(format!("sampled {} pairs, expected 30", pairs.len()));
    }
    match verify_order_iso(&pairs) {
        Ok(rep) => {
            for (k, row) in rep.rows.iter().enumerate() {
                if !row.agrees() {
                    bad.push(format!(
                        "pair {k}: readings split (silting {}, collection {}, aisle {})",
                        row.silting_leq, row.smc_leq, row.aisle_probe_leq
                    ));
                }
            }
        }
        Err(e) => bad.push(format!("order comparison errored: {e}")),
    }
    for (u, node) in ball.nodes.iter().enumerate() {
        for i in 0..node.summands.len() {
            if !order_leq(node, &mutate(node, i, Dir::Left)) {
                bad.push(format!(
                    "left mutation at node {u}, summand {i} does not descend"
                ));
            }
        }
    }
    report(9, "three order readings coincide", bad);
}

/// 10. Structural invariants across all three fixtures: summand counts,
/// collection cardinality and end-dimensions, minimization behaviour, and
/// resolution-depth stability of derived hom.
#[test]
fn criterion_10_structural_invariants() {
    let mut bad = Vec::new();
    for (alg, name) in [(lambda0(), "two-vertex"), (a2(), "A2"), (a3(), "A3")] {
        let n = alg.vertex_count();
        let reg = regular_object(&alg);
        let ball = silting_quiver(&reg, 2);
        for (u, node) in ball.nodes.iter().enumerate() {
            if node.summands.len() != n {
                bad.push(format!(
                    "{name} node {u}: {} summands, expected {n}",
                    node.summands.len()
                ));
            }
            if !silting_certificate(node).passes() {
                bad.push(format!("{name} node {u}: certificate fails"));
            }
        }
        let c = simple_collection(&alg);
        if c.objects.len() != n || !smc_check(&c).passes() {
            bad.push(format!(
                "{name}: the simples do not form a certified collection"
            ));
        }
        let mut base_dims = c.end_dims.clone();
        base_dims.sort_unstable();
        for i in 0..n {
            for dir in [Dir::Left, Dir::Right] {
                match smc_mutate(&c, i, dir) {
                    Ok(m) => {
                        let mut dims = m.end_dims.clone();
                        dims.sort_unstable();
                        if m.objects.len() != n || dims != base_dims {
                            bad.push(format!(
                                "{name}: mutation at {i} ({dir:?}) changed the end dimensions"
                            ));
                        }
                    }
                    Err(e) => bad.push(format!("{name}: mutation at {i} ({dir:?}) errored: {e}")),
                }
            }
        }

        // Minimization: fixed point, certified homotopy data, and invariance
        // of hom under stripping a contractible summand.
        let simple_res: Vec<ProjComplex> = (0..n)
            .map(|v| proj_resolution(&ModuleComplex::stalk(Module::simple(&alg, v), 0), -4).complex)
            .collect();
        let mut samples: Vec<ProjComplex> = reg.summands.clone();
        samples.extend(simple_res.iter().cloned());
        samples.push(reg.summands[0].shift(1).direct_sum(&simple_res[n - 1]));
        let probe = simple_res[0].clone();
        for (k, x) in samples.iter().enumerate() {
            let mz = minimize(x);
            if let Err(e) = mz.verify() {
                bad.push(format!("{name} sample {k}: minimization data fails: {e}"));
            }
            if !is_minimal(&mz.complex) || minimize(&mz.complex).complex != mz.complex {
                bad.push(format!("{name} sample {k}: minimize is not a fixed point"));
            }
            let padded = x.direct_sum(&cone(&ChainMap::identity(&reg.summands[0])));
            if !complexes_isomorphic(&minimize(&padded).complex, &mz.complex) {
                bad.push(format!("{name} sample {k}: contractible padding survived"));
            }
            if graded_hom_dims(x, &probe, -3, 3) != graded_hom_dims(&mz.complex, &probe, -3, 3) {
                bad.push(format!(
                    "{name} sample {k}: minimization changed hom dimensions"
                ));
            }
        }

        // Derived hom must not depend on how deep the resolution floor sits:
        // a wider window forces a deeper floor and must agree on the overlap.
        let mods = [
            ModuleComplex::stalk(Module::simple(&alg, 0), 0),
            ModuleComplex::stalk(Module::simple(&alg, n - 1), 0),
            ModuleComplex::stalk(Module::proj(&alg, 0), 0),
            proj_to_module(&simple_res[n - 1].shift(1)),
        ];
        let mut nonzero = 0usize;
        for x in &mods {
            for y in &mods {
                let narrow = hom_derived(x, y, -4, 4);
                let wide = hom_derived(x, y, -6, 6);
                for m in -4i64..=4 {
                    if narrow.get(&m) != wide.get(&m) {
                        bad.push(format!(
                            "{name}: derived hom at degree {m} depends on the window"
                        ));
                    }
                }
                nonzero += narrow.values().sum::<usize>();
            }
        }
        if nonzero == 0 {
            bad.push(format!("{name}: derived hom sweep was vacuous"));
        }
    }
    report(10, "structural invariants across the fixtures", bad);
}
