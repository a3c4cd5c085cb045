//! Brute-force reference implementations shared by the integration tests.
//! None of them call into the library's search code.

#![allow(dead_code)]

use proptest::prelude::*;
use rp3color::{ColorSet, Coloring, Graph, Instance};

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

/// Every assignment in `[k]^n` in lexicographic order, filtered.
pub fn brute_colorings(inst: &Instance, frugal: bool) -> Vec<Vec<u8>> {
    let n = inst.n();
    let k = inst.k();
    let adj = adjacency(inst.graph());
    let mut out = Vec::new();
    let mut phi = vec![1u8; n];
    let total = (k as u64).pow(n as u32);
    for _ in 0..total {
        if brute_is_coloring(inst, &adj, &phi, frugal) {
            out.push(phi.clone());
        }
        for slot in phi.iter_mut().rev() {
            if *slot < k {
                *slot += 1;
                break;
            }
            *slot = 1;
        }
    }
    out
}

pub fn brute_is_coloring(inst: &Instance, adj: &[Vec<bool>], phi: &[u8], frugal: bool) -> bool {
    let n = inst.n();
    for v in 0..n {
        if !inst.list(v).contains(phi[v]) {
            return false;
        }
        for w in 0..n {
            if adj[v][w] && phi[v] == phi[w] {
                return false;
            }
        }
        if frugal {
            for c in inst.list(v).iter() {
                if (0..n).filter(|&w| adj[v][w] && phi[w] == c).count() > 1 {
                    return false;
                }
            }
        }
    }
    true
}

pub fn brute_feasible(inst: &Instance, frugal: bool) -> bool {
    !brute_colorings(inst, frugal).is_empty()
}

/// Proper list coloring check written from scratch.
pub fn check_coloring(inst: &Instance, phi: &Coloring) -> bool {
    phi.len() == inst.n()
        && brute_is_coloring(inst, &adjacency(inst.graph()), phi.as_slice(), false)
}

/// Induced P3s counted as (middle, unordered nonadjacent neighbor pair).
pub fn brute_p3_count(g: &Graph) -> usize {
    let adj = adjacency(g);
    let n = g.n();
    let mut count = 0;
    for mid in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if adj[mid][a] && adj[mid][b] && !adj[a][b] {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Vertex sets of size `t` inducing a path.
pub fn brute_paths(g: &Graph, t: usize) -> Vec<Vec<usize>> {
    let adj = adjacency(g);
    let n = g.n();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != t {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let degs: Vec<usize> = vs
            .iter()
            .map(|&v| vs.iter().filter(|&&w| adj[v][w]).count())
            .collect();
        let edges: usize = degs.iter().sum::<usize>() / 2;
        if edges != t - 1 || degs.iter().any(|&d| d > 2) {
            continue;
        }
        // t-1 edges and max degree 2: a path iff connected
        let mut seen = vec![vs[0]];
        let mut i = 0;
        while i < seen.len() {
            let v = seen[i];
            for &w in &vs {
                if adj[v][w] && !seen.contains(&w) {
                    seen.push(w);
                }
            }
            i += 1;
        }
        if seen.len() == t {
            out.push(vs);
        }
    }
    out
}

/// Whether `r` of the given vertex sets are pairwise disjoint and anticomplete.
pub fn brute_packing_exists(g: &Graph, r: usize, t: usize) -> bool {
    let adj = adjacency(g);
    let paths = brute_paths(g, t);
    let apart =
        |a: &[usize], b: &[usize]| a.iter().all(|&x| b.iter().all(|&y| x != y && !adj[x][y]));
    fn go(
        paths: &[Vec<usize>],
        start: usize,
        chosen: &mut Vec<usize>,
        r: usize,
        apart: &dyn Fn(&[usize], &[usize]) -> bool,
    ) -> bool {
        if chosen.len() == r {
            return true;
        }
        for i in start..paths.len() {
            if chosen.iter().all(|&j| apart(&paths[i], &paths[j])) {
                chosen.push(i);
                if go(paths, i + 1, chosen, r, apart) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(&paths, 0, &mut Vec::new(), r, &apart)
}

/// `(nu, tau, lambda)` from subset enumeration over edge and vertex masks.
pub fn brute_stats(n: usize, edges: &[u32]) -> (usize, usize, usize) {
    let m = edges.len();
    let mut nu = 0;
    let mut lambda = 2;
    for fam in 0u32..(1 << m) {
        let members: Vec<usize> = (0..m).filter(|&i| fam >> i & 1 == 1).collect();
        let disjoint = members
            .iter()
            .enumerate()
            .all(|(a, &i)| members[a + 1..].iter().all(|&j| edges[i] & edges[j] == 0));
        if disjoint {
            nu = nu.max(members.len());
        }
        if members.len() > lambda {
            let private = members.iter().enumerate().all(|(a, &i)| {
                members[a + 1..].iter().all(|&j| {
                    let rest = members
                        .iter()
                        .filter(|&&l| l != i && l != j)
                        .fold(0, |acc, &l| acc | edges[l]);
                    edges[i] & edges[j] & !rest != 0
                })
            });
            if private {
                lambda = members.len();
            }
        }
    }
    let tau = (0u32..(1 << n))
        .filter(|cover| edges.iter().all(|e| e & cover != 0))
        .map(|c| c.count_ones() as usize)
        .min()
        .unwrap_or(0);
    (nu, tau, lambda)
}

pub fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

pub fn instance(n: usize, edges: &[(usize, usize)], lists: &[&[u8]]) -> Instance {
    let g = Graph::new(n, edges).unwrap();
    let lists = lists
        .iter()
        .map(|l| ColorSet::from_colors(l.iter().copied()))
        .collect();
    Instance::new(g, 5, lists).unwrap()
}

/// Random instance with `k = 5`, at most `max_n` vertices and list masks
/// drawn from `min_len..=max_len` colors.
pub fn arb_instance(
    max_n: usize,
    min_len: usize,
    max_len: usize,
) -> impl Strategy<Value = Instance> {
    (0..=max_n).prop_flat_map(move |n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (
            proptest::collection::vec(any::<bool>(), pairs),
            proptest::collection::vec(
                proptest::sample::subsequence(vec![1u8, 2, 3, 4, 5], min_len..=max_len),
                n,
            ),
        )
            .prop_map(move |(bits, lists)| {
                let mut edges = Vec::new();
                let mut idx = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[idx] {
                            edges.push((u, v));
                        }
                        idx += 1;
                    }
                }
                let lists = lists.into_iter().map(ColorSet::from_colors).collect();
                Instance::new(Graph::new(n, &edges).unwrap(), 5, lists).unwrap()
            })
    })
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_instance(max_n, 0, 0).prop_map(|i| i.graph().clone())
}

/// Plain backtracking 5-colorability, vertices in index order.
pub fn backtrack_colorable(inst: &Instance) -> bool {
    fn go(inst: &Instance, adj: &[Vec<bool>], phi: &mut Vec<u8>) -> bool {
        let v = phi.len();
        if v == inst.n() {
            return true;
        }
        for c in inst.list(v).iter() {
            if (0..v).all(|w| !adj[v][w] || phi[w] != c) {
                phi.push(c);
                if go(inst, adj, phi) {
                    return true;
                }
                phi.pop();
            }
        }
        false
    }
    go(inst, &adjacency(inst.graph()), &mut Vec::new())
}

/// Induced P3s whose lists are pairwise intersecting sets of size at least two.
pub fn brute_good_p3s(inst: &Instance) -> Vec<[usize; 3]> {
    let adj = adjacency(inst.graph());
    let n = inst.n();
    let mut out = Vec::new();
    for mid in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if !(adj[mid][a] && adj[mid][b] && !adj[a][b]) {
                    continue;
                }
                let ls = [inst.list(a), inst.list(mid), inst.list(b)];
                let big = ls.iter().all(|l| l.len() >= 2);
                let meet =
                    ls[0].intersects(ls[1]) && ls[1].intersects(ls[2]) && ls[0].intersects(ls[2]);
                if big && meet {
                    out.push([a, mid, b]);
                }
            }
        }
    }
    out
}

/// Backtracking over proper list colorings; the frugal condition is checked
/// on complete assignments.
pub fn backtrack_feasible(inst: &Instance, frugal: bool) -> bool {
    fn go(inst: &Instance, adj: &[Vec<bool>], phi: &mut Vec<u8>, frugal: bool) -> bool {
        let v = phi.len();
        if v == inst.n() {
            return !frugal || brute_is_coloring(inst, adj, phi, true);
        }
        for c in inst.list(v).iter() {
            if (0..v).all(|w| !adj[v][w] || phi[w] != c) {
                phi.push(c);
                if go(inst, adj, phi, frugal) {
                    return true;
                }
                phi.pop();
            }
        }
        false
    }
    go(inst, &adjacency(inst.graph()), &mut Vec::new(), frugal)
}
