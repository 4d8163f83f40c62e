//! Exact rainbow connection number by sweeping canonical colorings.
//!
//! Palette sizes are tried in increasing order. For each palette the
//! restricted-growth colorings are visited in lexicographic order by a
//! backtracking walk over the arcs. A partial coloring is cut off when the
//! most recently failing pair has no path whose assigned arcs carry distinct
//! colors: unassigned arcs behave like fresh colors, so no completion can
//! repair such a pair. Cuts never remove a rainbow-connecting coloring, so the
//! first coloring found is the lexicographically least canonical witness.

use serde::{Deserialize, Serialize};

use crate::coloring::{ArcColoring, ColoredDigraph};
use crate::digraph::{bits, is_strong, is_tournament, Digraph};
use crate::error::{Error, Result};
use crate::rainbow::{rainbow_certificate, RainbowCertificate};

pub const DEFAULT_MAX_ARCS: usize = 64;
pub const DEFAULT_MAX_PALETTE: usize = 8;
/// Above this the dense `(vertex, color set)` state table gets too large.
pub const HARD_MAX_PALETTE: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub max_arcs: usize,
    pub max_palette: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_arcs: DEFAULT_MAX_ARCS,
            max_palette: DEFAULT_MAX_PALETTE,
        }
    }
}

/// The rainbow connection number with an optimal coloring and its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RcResult {
    pub value: usize,
    pub witness: ColoredDigraph,
    pub certificate: RainbowCertificate,
    /// Complete colorings tested, summed over all palette sizes tried.
    pub colorings_examined: u64,
}

/// Outcome of a search bounded by `max_colors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RcSearch {
    Exact(RcResult),
    /// No coloring with at most `max_colors` colors works: `rc > max_colors`.
    Exhausted {
        max_colors: usize,
        colorings_examined: u64,
    },
}

/// Lower half of the tournament band: a strong tournament on `n >= 3`
/// vertices has a pair without a direct arc, so it needs at least 2 colors.
pub fn rc_lower_bound_trivial(d: &Digraph) -> Result<usize> {
    if d.order() < 3 {
        return Err(Error::Domain(format!("need at least 3 vertices, got {}", d.order())));
    }
    if !is_tournament(d) {
        return Err(Error::Domain("not a tournament".into()));
    }
    if !is_strong(d) {
        return Err(Error::NotStrong);
    }
    Ok(2)
}

/// Exact rc with default caps; `max_colors` bounds the sweep.
pub fn rc_exact(d: &Digraph, max_colors: Option<usize>) -> Result<RcSearch> {
    rc_exact_with(d, max_colors, &SolverConfig::default())
}

pub fn rc_exact_with(d: &Digraph, max_colors: Option<usize>, config: &SolverConfig) -> Result<RcSearch> {
    let m = d.arc_count();
    if m == 0 {
        return Err(Error::Domain("rc needs at least one arc".into()));
    }
    if !is_strong(d) {
        return Err(Error::NotStrong);
    }
    if m > config.max_arcs {
        return Err(Error::SolverCap(format!("{m} arcs exceeds the cap of {}", config.max_arcs)));
    }
    let palette_cap = config.max_palette.min(HARD_MAX_PALETTE);
    // all-distinct colors always rainbow-connect a strong digraph, so rc <= m
    let limit = match max_colors {
        Some(c) if c.min(m) > palette_cap => {
            return Err(Error::SolverCap(format!(
                "sweep up to {c} colors exceeds the palette cap of {palette_cap}"
            )))
        }
        Some(c) => c.min(m),
        None => m.min(palette_cap),
    };
    let mut sweep = Sweep::new(d);
    for c in 1..=limit {
        if let Some(colors) = sweep.run(c) {
            let coloring = ArcColoring::new(colors, c)?;
            let witness = ColoredDigraph::new(d.clone(), coloring)?;
            let certificate = rainbow_certificate(&witness).expect("solver witness must validate");
            return Ok(RcSearch::Exact(RcResult {
                value: c,
                witness,
                certificate,
                colorings_examined: sweep.examined,
            }));
        }
    }
    if max_colors.is_none() {
        return Err(Error::SolverCap(format!(
            "rc exceeds the palette cap of {palette_cap} ({} colorings examined)",
            sweep.examined
        )));
    }
    Ok(RcSearch::Exhausted {
        max_colors: limit,
        colorings_examined: sweep.examined,
    })
}

const UNASSIGNED: u8 = u8::MAX;

struct Sweep<'a> {
    d: &'a Digraph,
    n: usize,
    /// `arc_of[t * n + h]` = arc index or `usize::MAX`.
    arc_of: Vec<usize>,
    colors: Vec<u8>,
    memo: Option<(usize, usize)>,
    examined: u64,
    stamps: Vec<u32>,
    stamp: u32,
    queue: Vec<(usize, u32)>,
    palette: usize,
}

impl<'a> Sweep<'a> {
    fn new(d: &'a Digraph) -> Self {
        let n = d.order();
        let mut arc_of = vec![usize::MAX; n * n];
        for (i, a) in d.arcs().enumerate() {
            arc_of[a.tail * n + a.head] = i;
        }
        Sweep {
            d,
            n,
            arc_of,
            colors: vec![UNASSIGNED; d.arc_count()],
            memo: None,
            examined: 0,
            stamps: Vec::new(),
            stamp: 0,
            queue: Vec::new(),
            palette: 0,
        }
    }

    fn run(&mut self, c: usize) -> Option<Vec<u8>> {
        self.palette = c;
        self.stamps = vec![0; self.n << c];
        self.stamp = 0;
        self.colors.iter_mut().for_each(|x| *x = UNASSIGNED);
        self.colors[0] = 0;
        if self.descend(1, 0) {
            Some(self.colors.clone())
        } else {
            None
        }
    }

    /// Assigns arc `i` onward; `max` is the largest color used so far.
    fn descend(&mut self, i: usize, max: u8) -> bool {
        if i == self.colors.len() {
            self.examined += 1;
            return self.full_check();
        }
        let top = (max as usize + 1).min(self.palette - 1) as u8;
        for col in 0..=top {
            self.colors[i] = col;
            if let Some((u, v)) = self.memo {
                if !self.reaches(u, 1u64 << v) {
                    continue;
                }
            }
            if self.descend(i + 1, max.max(col)) {
                return true;
            }
        }
        self.colors[i] = UNASSIGNED;
        false
    }

    fn full_check(&mut self) -> bool {
        if let Some((u, v)) = self.memo {
            if !self.reaches(u, 1u64 << v) {
                return false;
            }
        }
        for u in 0..self.n {
            let targets = self.all_but(u);
            let got = self.reached_set(u, targets);
            if got != targets {
                let v = (targets & !got).trailing_zeros() as usize;
                self.memo = Some((u, v));
                return false;
            }
        }
        true
    }

    fn all_but(&self, u: usize) -> u64 {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        full & !(1u64 << u)
    }

    fn reaches(&mut self, u: usize, targets: u64) -> bool {
        self.reached_set(u, targets) == targets
    }

    /// Subset of `targets` reachable from `u` by a walk whose assigned arcs
    /// carry distinct colors.
    fn reached_set(&mut self, u: usize, targets: u64) -> u64 {
        let direct = self.d.out_row(u) & targets;
        if direct == targets {
            return targets;
        }
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.stamps.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        let shift = self.palette;
        let mut reached = 0u64;
        self.queue.clear();
        self.queue.push((u, 0));
        self.stamps[u << shift] = self.stamp;
        let mut head = 0;
        while head < self.queue.len() {
            let (w, mask) = self.queue[head];
            head += 1;
            for x in bits(self.d.out_row(w)) {
                let col = self.colors[self.arc_of[w * self.n + x]];
                let next = if col == UNASSIGNED {
                    mask
                } else if mask >> col & 1 == 1 {
                    continue;
                } else {
                    mask | 1 << col
                };
                let slot = (x << shift) | next as usize;
                if self.stamps[slot] == self.stamp {
                    continue;
                }
                self.stamps[slot] = self.stamp;
                reached |= 1u64 << x;
                if reached & targets == targets {
                    return targets;
                }
                self.queue.push((x, next));
            }
        }
        reached & targets
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::paper_construction;
    use crate::digraph::{make_circulant, CirculantSpec};

    fn exact(d: &Digraph) -> RcResult {
        match rc_exact(d, None).unwrap() {
            RcSearch::Exact(r) => r,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn triangle_needs_three() {
        let d = make_circulant(&CirculantSpec::new(3, [1]).unwrap());
        let r = exact(&d);
        assert_eq!(r.value, 3);
        assert_eq!(r.witness.coloring().colors(), [0, 1, 2]);
        // pruning can only shrink the 1 + 4 + 5 canonical strings up to "012"
        assert!(r.colorings_examined <= 10);
    }

    #[test]
    fn bounded_sweep_reports_exhaustion() {
        let d = make_circulant(&CirculantSpec::new(3, [1]).unwrap());
        assert_eq!(
            rc_exact(&d, Some(2)).unwrap(),
            // "000" at c=1; at c=2 the failing pair (0,2) cuts "000" and "001"
            RcSearch::Exhausted { max_colors: 2, colorings_examined: 3 }
        );
    }

    #[test]
    fn complete_digraph_has_rc_one() {
        let d = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(exact(&d).value, 1);
    }

    #[test]
    fn rejects_non_strong() {
        let d = Digraph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(rc_exact(&d, None), Err(Error::NotStrong));
        assert_eq!(rc_lower_bound_trivial(&d), Err(Error::NotStrong));
    }

    #[test]
    fn construction_n7_has_rc_two() {
        let cd = paper_construction(7).unwrap();
        let r = exact(cd.digraph());
        assert_eq!(r.value, 2);
        assert_eq!(r.witness.coloring().colors_used(), 2);
    }

    #[test]
    fn lower_bound() {
        let tri = make_circulant(&CirculantSpec::new(3, [1]).unwrap());
        assert_eq!(rc_lower_bound_trivial(&tri), Ok(2));
        assert_eq!(rc_lower_bound_trivial(paper_construction(6).unwrap().digraph()), Ok(2));
        let c9 = make_circulant(&CirculantSpec::new(9, [1, 2, 4, 6]).unwrap());
        assert_eq!(rc_lower_bound_trivial(&c9), Ok(2));
        let c4 = make_circulant(&CirculantSpec::new(4, [1]).unwrap());
        assert!(matches!(rc_lower_bound_trivial(&c4), Err(Error::Domain(_))));
    }

    #[test]
    fn palette_cap_is_enforced() {
        // a directed 12-cycle needs 11 colors, over the default cap
        let d = make_circulant(&CirculantSpec::new(12, [1]).unwrap());
        assert!(matches!(rc_exact(&d, None), Err(Error::SolverCap(_))));
        assert!(matches!(rc_exact(&d, Some(3)), Ok(RcSearch::Exhausted { max_colors: 3, .. })));
    }
}
