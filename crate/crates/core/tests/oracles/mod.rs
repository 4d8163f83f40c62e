//! Brute-force reference implementations. Nothing here calls the search
//! routines it is compared against.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rctour::{ArcColoring, ColoredDigraph, Digraph};

/// Every simple path from `u` to `v`, shortest first, then lexicographic.
pub fn all_simple_paths(d: &Digraph, u: usize, v: usize) -> Vec<Vec<usize>> {
    fn extend(d: &Digraph, path: &mut Vec<usize>, v: usize, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == v {
            out.push(path.clone());
            return;
        }
        for x in 0..d.order() {
            if d.has_arc(last, x) && !path.contains(&x) {
                path.push(x);
                extend(d, path, v, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(d, &mut vec![u], v, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

pub fn color_of(d: &Digraph, colors: &[u8], t: usize, h: usize) -> u8 {
    let pos = d.arcs().position(|a| a.tail == t && a.head == h).unwrap();
    colors[pos]
}

pub fn is_rainbow(d: &Digraph, colors: &[u8], path: &[usize]) -> bool {
    let cs: Vec<u8> = path.windows(2).map(|w| color_of(d, colors, w[0], w[1])).collect();
    let set: BTreeSet<u8> = cs.iter().copied().collect();
    set.len() == cs.len()
}

/// Shortest, then lexicographically least, rainbow path by exhaustive enumeration.
pub fn best_rainbow_path(d: &Digraph, colors: &[u8], u: usize, v: usize) -> Option<Vec<usize>> {
    all_simple_paths(d, u, v).into_iter().find(|p| is_rainbow(d, colors, p))
}

pub fn rainbow_connected_brute(d: &Digraph, colors: &[u8]) -> bool {
    (0..d.order()).all(|u| {
        (0..d.order()).all(|v| u == v || best_rainbow_path(d, colors, u, v).is_some())
    })
}

/// Precomputed simple paths per ordered pair, for repeated coloring checks.
pub struct PathTable {
    arcs: Vec<(usize, usize)>,
    /// per ordered pair, each path as a list of arc positions
    pairs: Vec<Vec<Vec<usize>>>,
}

impl PathTable {
    pub fn new(d: &Digraph) -> Self {
        let arcs: Vec<(usize, usize)> = d.arcs().map(|a| (a.tail, a.head)).collect();
        let mut pairs = Vec::new();
        for u in 0..d.order() {
            for v in 0..d.order() {
                if u == v {
                    continue;
                }
                let paths = all_simple_paths(d, u, v)
                    .into_iter()
                    .map(|p| {
                        p.windows(2)
                            .map(|w| arcs.iter().position(|&a| a == (w[0], w[1])).unwrap())
                            .collect()
                    })
                    .collect();
                pairs.push(paths);
            }
        }
        PathTable { arcs, pairs }
    }

    pub fn connected(&self, colors: &[u8]) -> bool {
        self.pairs.iter().all(|paths| {
            paths.iter().any(|p| {
                let mut seen = 0u64;
                p.iter().all(|&i| {
                    let bit = 1u64 << colors[i];
                    let fresh = seen & bit == 0;
                    seen |= bit;
                    fresh
                })
            })
        })
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }
}

/// rc by trying every one of the c^m colorings for c = 1, 2, ...
pub fn naive_rc(d: &Digraph) -> usize {
    let table = PathTable::new(d);
    let m = table.arc_count();
    for c in 1..=m {
        let total = (c as u64).pow(m as u32);
        for code in 0..total {
            let mut x = code;
            let colors: Vec<u8> = (0..m)
                .map(|_| {
                    let digit = (x % c as u64) as u8;
                    x /= c as u64;
                    digit
                })
                .collect();
            if table.connected(&colors) {
                return c;
            }
        }
    }
    unreachable!("all-distinct coloring connects a strong digraph")
}

/// Set partitions of `m` labeled items into at most `c` blocks, by
/// canonicalizing every function `[m] -> [c]` (first-occurrence relabeling).
pub fn set_partitions_brute(m: usize, c: usize) -> BTreeSet<Vec<u8>> {
    let mut out = BTreeSet::new();
    let total = (c as u64).pow(m as u32);
    for code in 0..total {
        let mut x = code;
        let mut relabel = vec![u8::MAX; c];
        let mut next = 0u8;
        let mut s = Vec::with_capacity(m);
        for _ in 0..m {
            let digit = (x % c as u64) as usize;
            x /= c as u64;
            if relabel[digit] == u8::MAX {
                relabel[digit] = next;
                next += 1;
            }
            s.push(relabel[digit]);
        }
        out.insert(s);
    }
    out
}

/// Stirling numbers of the second kind by the usual recurrence.
pub fn stirling2(m: usize, k: usize) -> u64 {
    let mut t = vec![vec![0u64; k + 1]; m + 1];
    t[0][0] = 1;
    for i in 1..=m {
        for j in 1..=k.min(i) {
            t[i][j] = j as u64 * t[i - 1][j] + t[i - 1][j - 1];
        }
    }
    t[m][k]
}

/// Per-pair BFS reachability.
pub fn strong_by_pairs(d: &Digraph) -> bool {
    let n = d.order();
    (0..n).all(|u| {
        let mut seen = vec![false; n];
        seen[u] = true;
        let mut q = VecDeque::from([u]);
        while let Some(w) = q.pop_front() {
            for x in 0..n {
                if d.has_arc(w, x) && !seen[x] {
                    seen[x] = true;
                    q.push_back(x);
                }
            }
        }
        seen.iter().all(|&s| s)
    })
}

pub fn colored(d: &Digraph, colors: Vec<u8>, palette: usize) -> ColoredDigraph {
    ColoredDigraph::new(d.clone(), ArcColoring::new(colors, palette).unwrap()).unwrap()
}
