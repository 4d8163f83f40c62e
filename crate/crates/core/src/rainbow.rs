//! Rainbow paths and rainbow connectedness.
//!
//! Search runs breadth-first over `(vertex, used colors)` states. Cutting a
//! cycle out of a rainbow walk leaves a rainbow walk, so a shortest rainbow
//! walk is a path and the state search decides the path predicate exactly.
//! Among shortest paths the lexicographically smallest vertex sequence wins:
//! layers are expanded in queue order with ascending neighbors, so the first
//! discovery of a state is its lexicographically least shortest walk.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coloring::ColoredDigraph;
use crate::digraph::bits;
use crate::error::{Error, Result};

/// A vertex sequence; arcs are consecutive pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RainbowPath(pub Vec<usize>);

impl RainbowPath {
    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn source(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn target(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Colors along the path, `None` if some step is not an arc.
    pub fn colors(&self, cd: &ColoredDigraph) -> Option<Vec<u8>> {
        self.0.windows(2).map(|w| cd.color(w[0], w[1])).collect()
    }
}

impl fmt::Display for RainbowPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| format!("u{v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Why a listed path fails to be a rainbow path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathDefect {
    Empty,
    VertexOutOfRange { vertex: usize },
    MissingArc { tail: usize, head: usize },
    RepeatedVertex { vertex: usize },
    RepeatedColor { color: u8 },
    EndpointMismatch { from: usize, to: usize },
}

impl fmt::Display for PathDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathDefect::Empty => write!(f, "path has no vertices"),
            PathDefect::VertexOutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            PathDefect::MissingArc { tail, head } => write!(f, "({tail}, {head}) is not an arc"),
            PathDefect::RepeatedVertex { vertex } => write!(f, "vertex {vertex} repeats"),
            PathDefect::RepeatedColor { color } => write!(f, "color {color} repeats"),
            PathDefect::EndpointMismatch { from, to } => {
                write!(f, "path does not run from {from} to {to}")
            }
        }
    }
}

/// Checks arc existence, vertex distinctness and color distinctness.
pub fn check_path(cd: &ColoredDigraph, path: &RainbowPath) -> std::result::Result<(), PathDefect> {
    let n = cd.order();
    if path.0.is_empty() {
        return Err(PathDefect::Empty);
    }
    let mut seen = 0u64;
    for &v in &path.0 {
        if v >= n {
            return Err(PathDefect::VertexOutOfRange { vertex: v });
        }
        if seen >> v & 1 == 1 {
            return Err(PathDefect::RepeatedVertex { vertex: v });
        }
        seen |= 1u64 << v;
    }
    let mut used = 0u64;
    for w in path.0.windows(2) {
        let color = cd
            .color(w[0], w[1])
            .ok_or(PathDefect::MissingArc { tail: w[0], head: w[1] })?;
        if used >> color & 1 == 1 {
            return Err(PathDefect::RepeatedColor { color });
        }
        used |= 1u64 << color;
    }
    Ok(())
}

struct Node {
    vertex: usize,
    parent: usize,
}

/// Shortest (then lexicographically least) rainbow paths from `source` to
/// every vertex; entry `source` is the empty path.
pub fn rainbow_paths_from(cd: &ColoredDigraph, source: usize) -> Result<Vec<Option<RainbowPath>>> {
    let n = cd.order();
    if source >= n {
        return Err(Error::VertexOutOfRange { vertex: source, n });
    }
    let d = cd.digraph();
    let mut found: Vec<Option<usize>> = vec![None; n];
    let mut nodes = vec![Node {
        vertex: source,
        parent: usize::MAX,
    }];
    let mut masks = vec![0u64];
    let mut seen: HashMap<(usize, u64), ()> = HashMap::new();
    seen.insert((source, 0), ());
    found[source] = Some(0);
    let mut remaining = n - 1;
    let mut head = 0;
    while head < nodes.len() && remaining > 0 {
        let (w, mask) = (nodes[head].vertex, masks[head]);
        for x in bits(d.out_row(w)) {
            let color = cd.color(w, x).expect("out-neighbor is an arc");
            let bit = 1u64 << color;
            if mask & bit != 0 {
                continue;
            }
            let next = mask | bit;
            if seen.insert((x, next), ()).is_some() {
                continue;
            }
            nodes.push(Node {
                vertex: x,
                parent: head,
            });
            masks.push(next);
            if found[x].is_none() {
                found[x] = Some(nodes.len() - 1);
                remaining -= 1;
            }
        }
        head += 1;
    }
    Ok(found
        .into_iter()
        .map(|slot| {
            slot.map(|mut i| {
                let mut path = Vec::new();
                while i != usize::MAX {
                    path.push(nodes[i].vertex);
                    i = nodes[i].parent;
                }
                path.reverse();
                RainbowPath(path)
            })
        })
        .collect())
}

/// A shortest rainbow path from `u` to `v`, if one exists.
pub fn find_rainbow_path(cd: &ColoredDigraph, u: usize, v: usize) -> Result<Option<RainbowPath>> {
    let n = cd.order();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(rainbow_paths_from(cd, u)?.swap_remove(v))
}

/// One witness path for an ordered pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub from: usize,
    pub to: usize,
    pub path: RainbowPath,
}

/// Witness rainbow paths; serialized as a bare JSON array.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RainbowCertificate(pub Vec<CertificateEntry>);

impl RainbowCertificate {
    pub fn entries(&self) -> &[CertificateEntry] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, path: Vec<usize>) {
        let from = path[0];
        let to = *path.last().expect("nonempty path");
        self.0.push(CertificateEntry {
            from,
            to,
            path: RainbowPath(path),
        });
    }
}

/// First ordered pair (row-major) with no rainbow path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingPair {
    pub from: usize,
    pub to: usize,
}

impl fmt::Display for FailingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no rainbow path from {} to {}", self.from, self.to)
    }
}

/// A full certificate over all `n(n-1)` ordered pairs, or the first pair in
/// row-major order lacking a rainbow path.
pub fn rainbow_certificate(cd: &ColoredDigraph) -> std::result::Result<RainbowCertificate, FailingPair> {
    let n = cd.order();
    let mut cert = RainbowCertificate(Vec::with_capacity(n * (n - 1)));
    for u in 0..n {
        let paths = rainbow_paths_from(cd, u).expect("source in range");
        for (v, path) in paths.into_iter().enumerate() {
            if v == u {
                continue;
            }
            match path {
                Some(path) => cert.0.push(CertificateEntry { from: u, to: v, path }),
                None => return Err(FailingPair { from: u, to: v }),
            }
        }
    }
    Ok(cert)
}

pub fn is_rainbow_connected(cd: &ColoredDigraph) -> bool {
    rainbow_certificate(cd).is_ok()
}
