//! Arc colorings, the explicit rc = 2 constructions, and canonical
//! (relabeling-free) enumeration of colorings.

use serde::{Deserialize, Serialize};

use crate::digraph::{make_circulant, ArcId, CirculantSpec, Digraph};
use crate::error::{Error, Result};

/// Largest palette representable by the `u64` color-set masks used in search.
pub const MAX_PALETTE: usize = 64;

/// Colors of a host digraph's arcs, aligned with its lexicographic arc order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcColoring {
    colors: Vec<u8>,
    palette_size: usize,
}

impl ArcColoring {
    pub fn new(colors: Vec<u8>, palette_size: usize) -> Result<Self> {
        if palette_size == 0 || palette_size > MAX_PALETTE {
            return Err(Error::InvalidColoring(format!(
                "palette size {palette_size} is outside 1..={MAX_PALETTE}"
            )));
        }
        if let Some(&c) = colors.iter().find(|&&c| c as usize >= palette_size) {
            return Err(Error::InvalidColoring(format!(
                "color {c} is not below palette size {palette_size}"
            )));
        }
        Ok(ArcColoring {
            colors,
            palette_size,
        })
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mask = self.colors.iter().fold(0u64, |m, &c| m | 1u64 << c);
        mask.count_ones() as usize
    }
}

/// A digraph together with a coloring of exactly its arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ColoredJson", into = "ColoredJson")]
pub struct ColoredDigraph {
    digraph: Digraph,
    coloring: ArcColoring,
}

impl ColoredDigraph {
    pub fn new(digraph: Digraph, coloring: ArcColoring) -> Result<Self> {
        if coloring.colors.len() != digraph.arc_count() {
            return Err(Error::InvalidColoring(format!(
                "{} colors for {} arcs",
                coloring.colors.len(),
                digraph.arc_count()
            )));
        }
        Ok(ColoredDigraph { digraph, coloring })
    }

    /// Colors the arcs with `color_of`, which must be total on the arc set.
    pub fn from_fn<F>(digraph: Digraph, palette_size: usize, mut color_of: F) -> Result<Self>
    where
        F: FnMut(ArcId) -> u8,
    {
        let colors = digraph.arcs().map(&mut color_of).collect();
        let coloring = ArcColoring::new(colors, palette_size)?;
        Self::new(digraph, coloring)
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn coloring(&self) -> &ArcColoring {
        &self.coloring
    }

    pub fn order(&self) -> usize {
        self.digraph.order()
    }

    pub fn palette_size(&self) -> usize {
        self.coloring.palette_size
    }

    /// Color of arc `(tail, head)`, or `None` if it is not an arc.
    pub fn color(&self, tail: usize, head: usize) -> Option<u8> {
        self.digraph
            .arc_index(tail, head)
            .map(|i| self.coloring.colors[i])
    }

    /// Arcs of color `c`, i.e. the color class `A_c`.
    pub fn color_class(&self, c: u8) -> Vec<ArcId> {
        self.digraph
            .arcs()
            .zip(&self.coloring.colors)
            .filter(|(_, &col)| col == c)
            .map(|(a, _)| a)
            .collect()
    }

    /// Renames color `c` to `perm[c]`.
    pub fn recolor(&self, perm: &[u8]) -> Result<Self> {
        if perm.len() < self.palette_size() {
            return Err(Error::InvalidColoring("permutation shorter than palette".into()));
        }
        let colors = self.coloring.colors.iter().map(|&c| perm[c as usize]).collect();
        let palette = perm.iter().map(|&c| c as usize + 1).max().unwrap_or(1).max(self.palette_size());
        ColoredDigraph::new(self.digraph.clone(), ArcColoring::new(colors, palette)?)
    }

    pub fn into_parts(self) -> (Digraph, ArcColoring) {
        (self.digraph, self.coloring)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColoredJson {
    n: usize,
    arcs: Vec<[usize; 2]>,
    colors: Vec<u8>,
    palette_size: usize,
}

impl TryFrom<ColoredJson> for ColoredDigraph {
    type Error = Error;

    fn try_from(json: ColoredJson) -> Result<Self> {
        if json.colors.len() != json.arcs.len() {
            return Err(Error::InvalidColoring(format!(
                "{} colors for {} arcs",
                json.colors.len(),
                json.arcs.len()
            )));
        }
        // Readers accept any arc order; realign colors with the sorted order.
        let mut pairs: Vec<([usize; 2], u8)> = json.arcs.into_iter().zip(json.colors).collect();
        pairs.sort_unstable_by_key(|p| p.0);
        let digraph = Digraph::new(json.n, pairs.iter().map(|([t, h], _)| (*t, *h)))?;
        let coloring = ArcColoring::new(pairs.into_iter().map(|(_, c)| c).collect(), json.palette_size)?;
        ColoredDigraph::new(digraph, coloring)
    }
}

impl From<ColoredDigraph> for ColoredJson {
    fn from(cd: ColoredDigraph) -> Self {
        ColoredJson {
            n: cd.digraph.order(),
            arcs: cd.digraph.arcs().map(|a| [a.tail, a.head]).collect(),
            colors: cd.coloring.colors,
            palette_size: cd.coloring.palette_size,
        }
    }
}

/// Dashed arcs of the 6-vertex drawing; these form color class 0.
pub const N6_COLOR0: [(usize, usize); 7] = [(0, 1), (0, 3), (1, 4), (2, 0), (2, 3), (4, 2), (5, 0)];
/// Solid arcs of the 6-vertex drawing; color class 1.
pub const N6_COLOR1: [(usize, usize); 8] = [
    (1, 2),
    (3, 1),
    (3, 4),
    (3, 5),
    (4, 5),
    (4, 0),
    (5, 1),
    (5, 2),
];

/// The 2-colored tournament on 6 vertices with rc = 2.
pub fn paper_tournament_n6() -> ColoredDigraph {
    let d = Digraph::new(6, N6_COLOR0.iter().chain(&N6_COLOR1).copied()).expect("fixture is simple");
    ColoredDigraph::from_fn(d, 2, |a| {
        u8::from(!N6_COLOR0.contains(&(a.tail, a.head)))
    })
    .expect("fixture coloring is total")
}

/// `C_{2k+1}(1, 2, 4, ..., 2(k-1))` with color 0 on
/// `{(0,1), (0,2), (1,2k-1)}` plus every arc with an even tail `>= 2`
/// except `(2, 2k)`, and color 1 elsewhere.
pub fn paper_coloring_odd(k: usize) -> Result<ColoredDigraph> {
    if k < 3 {
        return Err(Error::Domain(format!("odd construction needs k >= 3, got {k}")));
    }
    let d = make_circulant(&CirculantSpec::odd_family(k)?);
    let top = 2 * k;
    ColoredDigraph::from_fn(d, 2, |a| {
        let special = matches!((a.tail, a.head), (0, 1) | (0, 2)) || (a.tail, a.head) == (1, top - 1);
        let even_tail = a.tail % 2 == 0 && a.tail >= 2 && (a.tail, a.head) != (2, top);
        u8::from(!(special || even_tail))
    })
}

/// The odd construction for `k - 1` plus a vertex `2k - 1` that dominates
/// the even-indexed base vertices and is dominated by the odd ones; all new
/// arcs get color 1.
pub fn paper_coloring_even(k: usize) -> Result<ColoredDigraph> {
    if k < 4 {
        return Err(Error::Domain(format!("even construction needs k >= 4, got {k}")));
    }
    let base = paper_coloring_odd(k - 1)?;
    let base_order = base.order();
    let evens = (0..base_order).step_by(2).fold(0u64, |m, i| m | 1u64 << i);
    let odds = (1..base_order).step_by(2).fold(0u64, |m, i| m | 1u64 << i);
    let d = base.digraph().with_new_vertex(evens, odds)?;
    let v = base_order;
    ColoredDigraph::from_fn(d, 2, |a| {
        if a.tail == v || a.head == v {
            1
        } else {
            base.color(a.tail, a.head).expect("base arc")
        }
    })
}

/// The rc = 2 tournament of order `n >= 6`.
pub fn paper_construction(n: usize) -> Result<ColoredDigraph> {
    match n {
        0..=5 => Err(Error::Domain(format!(
            "no tournament of order {n} has rc = 2 (orders 4 and 5 force rc >= 3); need n >= 6"
        ))),
        6 => Ok(paper_tournament_n6()),
        n if n % 2 == 1 => paper_coloring_odd((n - 1) / 2),
        n => paper_coloring_even(n / 2),
    }
}

/// Restricted-growth strings of length `m` over at most `c` symbols, in
/// lexicographic order: position 0 is 0 and every later symbol is at most one
/// more than the maximum before it.
#[derive(Debug, Clone)]
pub struct RestrictedGrowth {
    current: Vec<u8>,
    fixed: usize,
    colors: usize,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(len: usize, colors: usize) -> Self {
        Self::with_prefix(len, colors, &[0])
    }

    /// Strings extending `prefix`; the prefix itself must be a valid
    /// restricted-growth string. Disjoint prefixes give independent subtrees.
    pub fn with_prefix(len: usize, colors: usize, prefix: &[u8]) -> Self {
        let valid = len >= 1
            && colors >= 1
            && colors <= MAX_PALETTE
            && !prefix.is_empty()
            && prefix.len() <= len
            && is_restricted_growth(prefix, colors);
        let mut current = prefix.to_vec();
        current.resize(len, 0);
        RestrictedGrowth {
            current,
            fixed: prefix.len(),
            colors,
            done: !valid,
        }
    }

    fn advance(&mut self) -> bool {
        let mut prefix_max = vec![0u8; self.current.len()];
        let mut running = 0u8;
        for (i, &s) in self.current.iter().enumerate() {
            prefix_max[i] = running;
            running = running.max(s);
        }
        for i in (self.fixed..self.current.len()).rev() {
            let s = self.current[i];
            if (s as usize) < self.colors - 1 && s <= prefix_max[i] {
                self.current[i] += 1;
                self.current[i + 1..].iter_mut().for_each(|x| *x = 0);
                return true;
            }
        }
        false
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        self.done = !self.advance();
        Some(out)
    }
}

/// Whether `s` starts at 0, grows by at most one past the running maximum,
/// and stays below `colors`.
pub fn is_restricted_growth(s: &[u8], colors: usize) -> bool {
    let mut max: Option<u8> = None;
    for &x in s {
        let limit = max.map_or(0, |m| m + 1);
        if x > limit || x as usize >= colors {
            return false;
        }
        max = Some(max.map_or(x, |m| m.max(x)));
    }
    true
}

/// Every coloring of `d` with at most `c` colors up to renaming of colors.
/// `arc_order` fixes the sequence the restricted-growth string is laid over
/// (lexicographic when `None`); yielded colorings are aligned with `d`'s own
/// arc order.
pub fn enumerate_canonical_colorings<'a>(
    d: &'a Digraph,
    c: usize,
    arc_order: Option<&[ArcId]>,
) -> Result<impl Iterator<Item = ArcColoring> + 'a> {
    let m = d.arc_count();
    if m == 0 {
        return Err(Error::Domain("digraph has no arcs to color".into()));
    }
    if c == 0 || c > MAX_PALETTE {
        return Err(Error::InvalidColoring(format!("palette size {c} is outside 1..={MAX_PALETTE}")));
    }
    let positions: Vec<usize> = match arc_order {
        None => (0..m).collect(),
        Some(order) => {
            if order.len() != m {
                return Err(Error::Domain(format!("arc order lists {} arcs, digraph has {m}", order.len())));
            }
            let mut seen = vec![false; m];
            let mut pos = Vec::with_capacity(m);
            for a in order {
                let i = d.arc_index(a.tail, a.head).ok_or_else(|| {
                    Error::Domain(format!("arc order names non-arc {a}"))
                })?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::Domain(format!("arc order repeats {a}")));
                }
                pos.push(i);
            }
            pos
        }
    };
    Ok(RestrictedGrowth::new(m, c).map(move |s| {
        let mut colors = vec![0u8; m];
        for (k, &i) in positions.iter().enumerate() {
            colors[i] = s[k];
        }
        ArcColoring { colors, palette_size: c }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{is_strong, is_tournament};

    fn strings(m: usize, c: usize) -> Vec<String> {
        RestrictedGrowth::new(m, c)
            .map(|s| s.iter().map(|x| char::from(b'0' + x)).collect())
            .collect()
    }

    #[test]
    fn rgs_small() {
        assert_eq!(strings(3, 3), ["000", "001", "010", "011", "012"]);
        assert_eq!(strings(3, 2), ["000", "001", "010", "011"]);
        assert_eq!(strings(10, 2).len(), 512);
        assert_eq!(strings(4, 2).len(), 8);
        assert_eq!(strings(1, 5), ["0"]);
    }

    #[test]
    fn rgs_prefix_split_partitions_stream() {
        let all: Vec<_> = RestrictedGrowth::new(6, 3).collect();
        let mut parts = Vec::new();
        for p in RestrictedGrowth::new(3, 3) {
            parts.extend(RestrictedGrowth::with_prefix(6, 3, &p));
        }
        assert_eq!(all, parts);
        assert_eq!(RestrictedGrowth::with_prefix(4, 3, &[0, 2]).count(), 0);
    }

    #[test]
    fn n6_fixture() {
        let cd = paper_tournament_n6();
        assert_eq!(cd.digraph().arc_count(), 15);
        assert_eq!(cd.color_class(0).len(), 7);
        assert_eq!(cd.color_class(1).len(), 8);
        assert!(is_tournament(cd.digraph()) && is_strong(cd.digraph()));
    }

    #[test]
    fn odd_k3_matches_dashed_arcs() {
        let cd = paper_coloring_odd(3).unwrap();
        let dashed = [
            (0, 1), (0, 2), (1, 5), (2, 3), (2, 4), (4, 1), (4, 5), (4, 6), (6, 0), (6, 1), (6, 3),
        ];
        let class: Vec<_> = cd.color_class(0).iter().map(|a| (a.tail, a.head)).collect();
        let mut expected = dashed.to_vec();
        expected.sort();
        assert_eq!(class, expected);
        assert_eq!(class.len(), 3 * 3 + 2);
    }

    #[test]
    fn odd_class_sizes_and_shape() {
        for k in 3..=30 {
            let cd = paper_coloring_odd(k).unwrap();
            let class0 = cd.color_class(0);
            assert_eq!(class0.len(), k * k + 2, "k = {k}");
            for a in class0 {
                let exception = [(0, 1), (0, 2), (1, 2 * k - 1)].contains(&(a.tail, a.head));
                assert!(exception || (a.tail % 2 == 0 && a.tail >= 2), "k = {k}, arc {a}");
            }
            assert_eq!(cd.color(2, 2 * k), Some(1));
        }
    }

    #[test]
    fn odd_is_strong_tournament() {
        for k in 3..=20 {
            let d = paper_coloring_odd(k).unwrap();
            assert_eq!(d.order(), 2 * k + 1);
            assert!(is_tournament(d.digraph()) && is_strong(d.digraph()));
        }
    }

    #[test]
    fn even_k4_neighborhoods() {
        let cd = paper_coloring_even(4).unwrap();
        let d = cd.digraph();
        assert_eq!(d.order(), 8);
        assert_eq!(d.out_neighbors(7).collect::<Vec<_>>(), [0, 2, 4, 6]);
        assert_eq!(d.in_neighbors(7).collect::<Vec<_>>(), [1, 3, 5]);
    }

    #[test]
    fn even_bookkeeping() {
        for k in 4..=20 {
            let cd = paper_coloring_even(k).unwrap();
            let d = cd.digraph();
            let v = 2 * k - 1;
            assert_eq!(d.arc_count(), k * (2 * k - 1));
            let incident: Vec<_> = d.arcs().filter(|a| a.tail == v || a.head == v).collect();
            assert_eq!(incident.len(), 2 * k - 1);
            assert!(incident.iter().all(|a| cd.color(a.tail, a.head) == Some(1)));
            assert!(is_tournament(d) && is_strong(d));
        }
    }

    #[test]
    fn construction_domain() {
        assert!(paper_construction(5).is_err());
        assert!(paper_coloring_odd(2).is_err());
        assert!(paper_coloring_even(3).is_err());
        assert_eq!(paper_construction(6).unwrap(), paper_tournament_n6());
        assert_eq!(paper_construction(7).unwrap(), paper_coloring_odd(3).unwrap());
        assert_eq!(paper_construction(8).unwrap(), paper_coloring_even(4).unwrap());
    }

    #[test]
    fn constructions_use_two_colors() {
        for n in 6..=64 {
            let cd = paper_construction(n).unwrap();
            assert_eq!(cd.order(), n);
            assert_eq!(cd.coloring().colors_used(), 2, "n = {n}");
            assert!(is_tournament(cd.digraph()) && is_strong(cd.digraph()), "n = {n}");
        }
    }

    #[test]
    fn custom_arc_order_is_respected() {
        let d = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let order = [ArcId { tail: 2, head: 0 }, ArcId { tail: 0, head: 1 }, ArcId { tail: 1, head: 2 }];
        let first_nonzero = enumerate_canonical_colorings(&d, 2, Some(&order))
            .unwrap()
            .nth(1)
            .unwrap();
        // "001" over (2,0),(0,1),(1,2) colors arc (1,2)
        assert_eq!(first_nonzero.colors(), [0, 1, 0]);
        assert!(enumerate_canonical_colorings(&d, 2, Some(&order[..2])).is_err());
    }

    #[test]
    fn colored_json_roundtrip_realigns() {
        let cd: ColoredDigraph = serde_json::from_str(
            r#"{"n":3,"arcs":[[2,0],[0,1],[1,2]],"colors":[1,0,0],"palette_size":2}"#,
        )
        .unwrap();
        assert_eq!(cd.color(2, 0), Some(1));
        assert_eq!(
            serde_json::to_string(&cd).unwrap(),
            r#"{"n":3,"arcs":[[0,1],[1,2],[2,0]],"colors":[0,0,1],"palette_size":2}"#
        );
        assert!(serde_json::from_str::<ColoredDigraph>(
            r#"{"n":3,"arcs":[[0,1]],"colors":[2],"palette_size":2}"#
        )
        .is_err());
    }
}
