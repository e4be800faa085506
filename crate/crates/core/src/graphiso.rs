//! Isomorphism testing for small directed graphs: iterated neighbourhood
//! refinement to split the vertices into invariant classes, then
//! backtracking search over class-compatible assignments. Meant for the
//! exchange-graph balls (a few dozen nodes), not for large graphs.

use std::collections::{HashMap, HashSet};

/// Whether two directed graphs on `{0..n}` are isomorphic. Parallel edges
/// are collapsed; self-loops are respected.
pub fn digraphs_isomorphic(
    n_a: usize,
    edges_a: &[(usize, usize)],
    n_b: usize,
    edges_b: &[(usize, usize)],
) -> bool {
    if n_a != n_b {
        return false;
    }
    let ea: HashSet<(usize, usize)> = edges_a.iter().copied().collect();
    let eb: HashSet<(usize, usize)> = edges_b.iter().copied().collect();
    if ea.len() != eb.len() {
        return false;
    }
    let ca = refine(n_a, &ea);
    let cb = refine(n_b, &eb);
    let mut pa = ca.clone();
    let mut pb = cb.clone();
    pa.sort_unstable();
    pb.sort_unstable();
    if pa != pb {
        return false;
    }
    // assign rare classes first so dead branches die early
    let mut population: HashMap<u64, usize> = HashMap::new();
    for &c in &ca {
        *population.entry(c).or_insert(0) += 1;
    }
    let mut order: Vec<usize> = (0..n_a).collect();
    order.sort_by_key(|&v| (population[&ca[v]], ca[v], v));
    let mut map = vec![usize::MAX; n_a];
    let mut used = vec![false; n_b];
    backtrack(0, &order, &ca, &cb, &ea, &eb, &mut map, &mut used)
}

/// Vertex invariants: start from (out-degree, in-degree) and repeatedly
/// fold in the sorted class multisets of out- and in-neighbours. The same
/// number of rounds runs on both graphs, so the resulting labels are
/// comparable across them.
fn refine(n: usize, edges: &HashSet<(usize, usize)>) -> Vec<u64> {
    let mut outs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut ins: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        outs[u].push(v);
        ins[v].push(u);
    }
    let mut class: Vec<u64> = (0..n)
        .map(|v| hash2(outs[v].len() as u64, ins[v].len() as u64))
        .collect();
    for _ in 0..n {
        let mut next = Vec::with_capacity(n);
        for v in 0..n {
            let mut o: Vec<u64> = outs[v].iter().map(|&w| class[w]).collect();
            o.sort_unstable();
            let mut i: Vec<u64> = ins[v].iter().map(|&w| class[w]).collect();
            i.sort_unstable();
            let mut h = class[v];
            for x in o {
                h = hash2(h, x);
            }
            h = hash2(h, 0x6f75742f696e);
            for x in i {
                h = hash2(h, x);
            }
            next.push(h);
        }
        class = next;
    }
    class
}

fn hash2(a: u64, b: u64) -> u64 {
    let mut h = 0xcbf29ce484222325u64 ^ a.wrapping_mul(0x9e3779b97f4a7c15);
    h ^= b.wrapping_add(0x9e3779b97f4a7c15).rotate_left(17);
    h.wrapping_mul(0x100000001b3)
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    pos: usize,
    order: &[usize],
    ca: &[u64],
    cb: &[u64],
    ea: &HashSet<(usize, usize)>,
    eb: &HashSet<(usize, usize)>,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    for w in 0..cb.len() {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        if !consistent(v, w, &order[..pos], map, ea, eb) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if backtrack(pos + 1, order, ca, cb, ea, eb, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[w] = false;
    }
    false
}

fn consistent(
    v: usize,
    w: usize,
    placed: &[usize],
    map: &[usize],
    ea: &HashSet<(usize, usize)>,
    eb: &HashSet<(usize, usize)>,
) -> bool {
    if ea.contains(&(v, v)) != eb.contains(&(w, w)) {
        return false;
    }
    for &u in placed {
        let mu = map[u];
        if ea.contains(&(v, u)) != eb.contains(&(w, mu)) {
            return false;
        }
        if ea.contains(&(u, v)) != eb.contains(&(mu, w)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_graphs_are_isomorphic() {
        // a 6-cycle with one chord, relabelled by v -> (v * 5) % 6
        let edges: Vec<(usize, usize)> =
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)];
        let relabel = |v: usize| (v * 5) % 6;
        let shuffled: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| (relabel(u), relabel(v)))
            .collect();
        assert!(digraphs_isomorphic(6, &edges, 6, &shuffled));
    }

    #[test]
    fn orientation_matters() {
        let path = vec![(0, 1), (1, 2)];
        let fork = vec![(1, 0), (1, 2)];
        assert!(!digraphs_isomorphic(3, &path, 3, &fork));
        let cycle = vec![(0, 1), (1, 2), (2, 0)];
        assert!(!digraphs_isomorphic(3, &path, 3, &cycle));
    }

    #[test]
    fn degree_blind_pairs_are_still_separated() {
        // both graphs are unions of directed 3- and 4-cycles on 7 vertices
        // versus a single 7-cycle: all vertices look alike locally
        let two_cycles = vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)];
        let one_cycle = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0)];
        assert!(!digraphs_isomorphic(7, &two_cycles, 7, &one_cycle));
        assert!(digraphs_isomorphic(7, &one_cycle, 7, &one_cycle));
    }
}
