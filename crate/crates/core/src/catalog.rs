//! Connected graphs on a few vertices, one per isomorphism class.

use std::collections::HashSet;

use crate::graph::{Graph, VertexSet};

/// Largest order `connected_graphs` accepts.
pub const CATALOG_MAX_ORDER: usize = 10;

/// Adjacency rows on `0..n`, bit `j` of `rows[i]` set when `i ~ j`.
type Rows = Vec<u16>;

fn refine(rows: &Rows, mut color: Vec<usize>) -> Vec<usize> {
    let n = rows.len();
    loop {
        let mut sig: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&u| rows[v] >> u & 1 == 1).map(|u| color[u]).collect();
                nb.sort_unstable();
                (color[v], nb, v)
            })
            .collect();
        sig.sort();
        let mut next = vec![0; n];
        let mut c = 0;
        for i in 0..n {
            if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                c = i;
            }
            next[sig[i].2] = c;
        }
        let before = color.iter().collect::<HashSet<_>>().len();
        let after = next.iter().collect::<HashSet<_>>().len();
        color = next;
        if after == before {
            return color;
        }
    }
}

fn code(rows: &Rows, color: &[usize]) -> u64 {
    let n = rows.len();
    let mut pos = vec![0; n];
    for v in 0..n {
        pos[color[v]] = v;
    }
    let mut out = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            out = out << 1 | u64::from(rows[pos[i]] >> pos[j] & 1 == 1);
        }
    }
    out
}

fn search(rows: &Rows, color: Vec<usize>, best: &mut Option<u64>) {
    let color = refine(rows, color);
    let n = rows.len();
    let mut size = vec![0usize; n];
    for &c in &color {
        size[c] += 1;
    }
    match (0..n).find(|&c| size[c] > 1) {
        None => {
            let c = code(rows, &color);
            if best.is_none_or(|b| c < b) {
                *best = Some(c);
            }
        }
        Some(cell) => {
            for v in (0..n).filter(|&v| color[v] == cell) {
                let mut next = color.clone();
                for (u, c) in next.iter_mut().enumerate() {
                    if *c == cell && u != v {
                        *c = cell + 1;
                    }
                }
                search(rows, next, best);
            }
        }
    }
}

fn canonical(rows: &Rows) -> u64 {
    let mut best = None;
    search(rows, vec![0; rows.len()], &mut best);
    best.expect("search reaches a leaf")
}

fn is_connected(rows: &Rows) -> bool {
    let n = rows.len();
    let mut seen = 1u16;
    let mut frontier = 1u16;
    while frontier != 0 {
        let mut next = 0;
        for v in 0..n {
            if frontier >> v & 1 == 1 {
                next |= rows[v];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    n == 0 || seen.count_ones() as usize == n
}

fn to_graph(rows: &Rows) -> Graph {
    let adj = rows
        .iter()
        .map(|&r| (0..rows.len()).filter(|&u| r >> u & 1 == 1).map(|u| u + 1).collect::<VertexSet>())
        .collect();
    Graph::from_adjacency(adj).expect("rows are symmetric")
}

/// All graphs on `n` vertices up to isomorphism, connected or not.
fn all_graphs(n: usize) -> Vec<Rows> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for rows in all_graphs(n - 1) {
        for mask in 0u16..(1 << (n - 1)) {
            let mut r = rows.clone();
            for (u, row) in r.iter_mut().enumerate() {
                if mask >> u & 1 == 1 {
                    *row |= 1 << (n - 1);
                }
            }
            r.push(mask);
            if seen.insert(canonical(&r)) {
                out.push(r);
            }
        }
    }
    out
}

/// Connected graphs on exactly `n` vertices, one per isomorphism class, in a
/// fixed order.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= CATALOG_MAX_ORDER, "catalog order {n} exceeds {CATALOG_MAX_ORDER}");
    if n == 0 {
        return Vec::new();
    }
    all_graphs(n).iter().filter(|r| is_connected(r)).map(to_graph).collect()
}

/// Connected graphs on `1..=max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// Isomorphism-invariant code of `g`, for orders up to [`CATALOG_MAX_ORDER`].
pub fn canonical_code(g: &Graph) -> u64 {
    assert!(g.order() <= CATALOG_MAX_ORDER);
    let rows: Rows = g
        .vertices()
        .iter()
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, u| m | 1 << (u - 1)))
        .collect();
    canonical(&rows)
}
