//! Shared example algebras used across the test suites and the acceptance
//! checks.
//!
//! `lambda0` is the two-vertex algebra with arrows a: 1 -> 2, b: 2 -> 1 and
//! the single relation b*a; its basis is {e1, e2, a, b, a*b} and the loop
//! ω = a*b squares to zero. `a2` and `a3` are the linear quivers 1 -> 2 and
//! 1 -> 2 -> 3 with no relations.

use crate::homotopy::ProjComplex;
use crate::linalg::rat;
use crate::quiver::{
    AlgebraPresentation, Arrow, PathAlgebra, Quiver, RelationTerm, DEFAULT_LENGTH_CAP,
};
use std::sync::Arc;

pub fn lambda0() -> Arc<PathAlgebra> {
    let pres = AlgebraPresentation {
        quiver: Quiver {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![
                Arrow {
                    name: "a".into(),
                    source: 0,
                    target: 1,
                },
                Arrow {
                    name: "b".into(),
                    source: 1,
                    target: 0,
                },
            ],
        },
        relations: vec![vec![RelationTerm {
            coef: rat(1),
            arrows: vec![1, 0],
        }]],
        length_cap: DEFAULT_LENGTH_CAP,
    };
    PathAlgebra::build(pres).expect("fixture algebra builds")
}

pub fn a2() -> Arc<PathAlgebra> {
    let pres = AlgebraPresentation {
        quiver: Quiver {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![Arrow {
                name: "a".into(),
                source: 0,
                target: 1,
            }],
        },
        relations: vec![],
        length_cap: DEFAULT_LENGTH_CAP,
    };
    PathAlgebra::build(pres).expect("fixture algebra builds")
}

pub fn a3() -> Arc<PathAlgebra> {
    let pres = AlgebraPresentation {
        quiver: Quiver {
            vertices: vec!["1".into(), "2".into(), "3".into()],
            arrows: vec![
                Arrow {
                    name: "a".into(),
                    source: 0,
                    target: 1,
                },
                Arrow {
                    name: "b".into(),
                    source: 1,
                    target: 2,
                },
            ],
        },
        relations: vec![],
        length_cap: DEFAULT_LENGTH_CAP,
    };
    PathAlgebra::build(pres).expect("fixture algebra builds")
}

// Complex families over lambda0. Every indecomposable of K^b(proj) is, up
// to shift, one of these; the connecting maps are the unique (up to scalar)
// non-isomorphisms and the rightmost term sits in degree 0.

pub(crate) fn loop_elt(alg: &PathAlgebra) -> crate::quiver::AlgElt {
    // ω = a*b, the square-zero loop at vertex 1
    alg.mul(&alg.arrow_elt(0), &alg.arrow_elt(1))
}

/// P_1 -> P_1 -> ... -> P_1 (n copies, n ≥ 1), maps L_ω.
pub fn family_p1(alg: &Arc<PathAlgebra>, n: usize) -> ProjComplex {
    assert!(n >= 1);
    let omega = loop_elt(alg);
    let terms = vec![vec![0]; n];
    let diffs = (0..n - 1).map(|_| vec![vec![omega.clone()]]).collect();
    ProjComplex::new(alg.clone(), -(n as i64) + 1, terms, diffs).expect("family complex")
}

/// P_1 -> ... -> P_1 -> P_2 (n ≥ 0 copies of P_1), maps L_ω then L_b.
pub fn family_r(alg: &Arc<PathAlgebra>, n: usize) -> ProjComplex {
    let omega = loop_elt(alg);
    let b = alg.arrow_elt(1);
    let mut terms = vec![vec![0]; n];
    terms.push(vec![1]);
    let mut diffs: Vec<_> = (0..n.saturating_sub(1))
        .map(|_| vec![vec![omega.clone()]])
        .collect();
    if n >= 1 {
        diffs.push(vec![vec![b]]);
    }
    ProjComplex::new(alg.clone(), -(n as i64), terms, diffs).expect("family complex")
}

/// P_2 -> P_1 -> ... -> P_1 (n ≥ 0 copies of P_1), maps L_a then L_ω.
pub fn family_l(alg: &Arc<PathAlgebra>, n: usize) -> ProjComplex {
    let omega = loop_elt(alg);
    let a = alg.arrow_elt(0);
    let mut terms = vec![vec![1]];
    terms.extend(vec![vec![0]; n]);
    let mut diffs = Vec::new();
    if n >= 1 {
        diffs.push(vec![vec![a]]);
        diffs.extend((0..n - 1).map(|_| vec![vec![omega.clone()]]));
    }
    ProjComplex::new(alg.clone(), -(n as i64), terms, diffs).expect("family complex")
}

/// P_2 -> P_1 -> ... -> P_1 -> P_2 (n ≥ 1 copies of P_1 between the P_2's),
/// maps L_a, L_ω, ..., L_ω, L_b.
pub fn family_b(alg: &Arc<PathAlgebra>, n: usize) -> ProjComplex {
    assert!(n >= 1);
    let omega = loop_elt(alg);
    let a = alg.arrow_elt(0);
    let b = alg.arrow_elt(1);
    let mut terms = vec![vec![1]];
    terms.extend(vec![vec![0]; n]);
    terms.push(vec![1]);
    let mut diffs = vec![vec![vec![a]]];
    diffs.extend((0..n - 1).map(|_| vec![vec![omega.clone()]]));
    diffs.push(vec![vec![b]]);
    ProjComplex::new(alg.clone(), -(n as i64) - 1, terms, diffs).expect("family complex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::{complexes_isomorphic, hom_dim_shifted, is_minimal};

    #[test]
    fn family_anchors() {
        let alg = lambda0();
        // P_2 = R(0) = L(0)
        let p2 = ProjComplex::stalk_proj(&alg, 0, 1);
        assert!(complexes_isomorphic(&family_r(&alg, 0), &p2));
        assert!(complexes_isomorphic(&family_l(&alg, 0), &p2));
        // P_1(1) = P_1
        let p1 = ProjComplex::stalk_proj(&alg, 0, 0);
        assert!(complexes_isomorphic(&family_p1(&alg, 1), &p1));
        // families are minimal as built
        for n in 1..=4 {
            assert!(is_minimal(&family_p1(&alg, n)));
            assert!(is_minimal(&family_r(&alg, n)));
            assert!(is_minimal(&family_l(&alg, n)));
            assert!(is_minimal(&family_b(&alg, n)));
        }
    }

    #[test]
    fn simple_modules_as_family_members() {
        let alg = lambda0();
        // S_1 = L(1): End is one-dimensional, no self-extensions above 0
        let s1 = family_l(&alg, 1);
        assert_eq!(hom_dim_shifted(&s1, &s1, 0), 1);
        assert_eq!(hom_dim_shifted(&s1, &s1, 1), 0);
        // S_2 = B(1)
        let s2 = family_b(&alg, 1);
        assert_eq!(hom_dim_shifted(&s2, &s2, 0), 1);
        // distinct families are non-isomorphic
        assert!(!complexes_isomorphic(&s1, &s2));
    }
}
