//! Finite simple digraphs on dense vertex indices, circulant construction,
//! structural predicates and exhaustive enumeration of labeled tournaments.
//!
//! Adjacency is one `u64` out-row (and in-row) per vertex, so every digraph
//! has at most [`MAX_VERTICES`] vertices.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count (one machine word per adjacency row).
pub const MAX_VERTICES: usize = 64;

/// Default cap on the order accepted by [`enumerate_tournaments`].
pub const DEFAULT_ENUMERATION_CAP: usize = 6;

/// Absolute cap: the orientation counter is a `u64`.
const HARD_ENUMERATION_CAP: usize = 11;

/// An ordered pair `(tail, head)` with `tail != head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArcId {
    pub tail: usize,
    pub head: usize,
}

impl ArcId {
    pub fn new(tail: usize, head: usize) -> Result<Self> {
        if tail == head {
            return Err(Error::SelfLoop { tail, head });
        }
        Ok(ArcId { tail, head })
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tail, self.head)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DigraphJson {
    n: usize,
    arcs: Vec<[usize; 2]>,
}

/// A finite simple digraph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DigraphJson", into = "DigraphJson")]
pub struct Digraph {
    n: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
    /// `offsets[v]` is the number of arcs whose tail is below `v`.
    offsets: Vec<usize>,
}

impl Digraph {
    /// Builds a digraph, rejecting self-loops, out-of-range endpoints and
    /// duplicate arcs.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_order(n)?;
        let mut out = vec![0u64; n];
        for (tail, head) in arcs {
            if tail >= n || head >= n {
                return Err(Error::ArcOutOfRange { tail, head, n });
            }
            if tail == head {
                return Err(Error::SelfLoop { tail, head });
            }
            let bit = 1u64 << head;
            if out[tail] & bit != 0 {
                return Err(Error::DuplicateArc { tail, head });
            }
            out[tail] |= bit;
        }
        Ok(Self::from_out_rows(out))
    }

    /// The arcless digraph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Self::from_out_rows(vec![0; n]))
    }

    /// Builds from raw out-neighborhood rows. Rows must be loop-free and in range.
    pub(crate) fn from_out_rows(out: Vec<u64>) -> Self {
        let n = out.len();
        debug_assert!(n <= MAX_VERTICES);
        let mut inn = vec![0u64; n];
        let mut offsets = Vec::with_capacity(n + 1);
        let mut total = 0;
        for (tail, &row) in out.iter().enumerate() {
            debug_assert_eq!(row & (1u64 << tail), 0);
            debug_assert!(n == 64 || row >> n == 0);
            offsets.push(total);
            total += row.count_ones() as usize;
            for head in bits(row) {
                inn[head] |= 1u64 << tail;
            }
        }
        offsets.push(total);
        Digraph {
            n,
            out,
            inn,
            offsets,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.offsets[self.n]
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        tail < self.n && head < self.n && self.out[tail] >> head & 1 == 1
    }

    /// Out-neighborhood of `v` as a bitset.
    pub fn out_row(&self, v: usize) -> u64 {
        self.out[v]
    }

    /// In-neighborhood of `v` as a bitset.
    pub fn in_row(&self, v: usize) -> u64 {
        self.inn[v]
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.out[v])
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.inn[v])
    }

    /// All arcs in lexicographic `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(tail, &row)| bits(row).map(move |head| ArcId { tail, head }))
    }

    /// Position of the arc in the lexicographic arc order, if present.
    pub fn arc_index(&self, tail: usize, head: usize) -> Option<usize> {
        if !self.has_arc(tail, head) {
            return None;
        }
        let below = self.out[tail] & ((1u64 << head) - 1);
        Some(self.offsets[tail] + below.count_ones() as usize)
    }

    /// Image of the digraph under a vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::Domain(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        Digraph::new(self.n, self.arcs().map(|a| (perm[a.tail], perm[a.head])))
    }

    /// The digraph with one extra vertex (index `n`) joined by the given arcs.
    pub fn with_new_vertex(&self, out_to: u64, in_from: u64) -> Result<Self> {
        let n = self.n + 1;
        check_order(n)?;
        if out_to & in_from != 0 || (self.n < 64 && (out_to | in_from) >> self.n != 0) {
            return Err(Error::Domain("new vertex arcs overlap or are out of range".into()));
        }
        let mut out = self.out.clone();
        for v in bits(in_from) {
            out[v] |= 1u64 << self.n;
        }
        out.push(out_to);
        Ok(Self::from_out_rows(out))
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field(
                "arcs",
                &self.arcs().map(|a| (a.tail, a.head)).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl TryFrom<DigraphJson> for Digraph {
    type Error = Error;

    fn try_from(json: DigraphJson) -> Result<Self> {
        Digraph::new(json.n, json.arcs.into_iter().map(|[t, h]| (t, h)))
    }
}

impl From<Digraph> for DigraphJson {
    fn from(d: Digraph) -> Self {
        DigraphJson {
            n: d.n,
            arcs: d.arcs().map(|a| [a.tail, a.head]).collect(),
        }
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyDigraph)
    } else if n > MAX_VERTICES {
        Err(Error::TooManyVertices(n))
    } else {
        Ok(())
    }
}

/// Iterates the set bits of `row` in ascending order.
pub fn bits(mut row: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if row == 0 {
            None
        } else {
            let v = row.trailing_zeros() as usize;
            row &= row - 1;
            Some(v)
        }
    })
}

/// Order `n` and difference set `S` of the circulant `C_n(S)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CirculantSpec {
    order: usize,
    differences: BTreeSet<usize>,
}

impl CirculantSpec {
    /// Validates `n >= 2` and that `S` is a nonempty set of distinct
    /// residues in `1..n`.
    pub fn new<I>(order: usize, differences: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        if order < 2 {
            return Err(Error::InvalidCirculant(format!(
                "order must be at least 2, got {order}"
            )));
        }
        if order > MAX_VERTICES {
            return Err(Error::TooManyVertices(order));
        }
        let mut set = BTreeSet::new();
        for s in differences {
            if s == 0 || s >= order {
                return Err(Error::InvalidCirculant(format!(
                    "difference {s} is outside 1..={}",
                    order - 1
                )));
            }
            if !set.insert(s) {
                return Err(Error::InvalidCirculant(format!("difference {s} is repeated")));
            }
        }
        if set.is_empty() {
            return Err(Error::InvalidCirculant("difference set is empty".into()));
        }
        Ok(CirculantSpec {
            order,
            differences: set,
        })
    }

    /// `C_{2k+1}(1, 2, 4, ..., 2(k-1))`, the family behind the odd-order construction.
    pub fn odd_family(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("odd circulant family needs k >= 2, got {k}")));
        }
        Self::new(2 * k + 1, std::iter::once(1).chain((1..k).map(|j| 2 * j)))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn differences(&self) -> &BTreeSet<usize> {
        &self.differences
    }

    pub fn contains(&self, s: usize) -> bool {
        self.differences.contains(&s)
    }
}

/// Arc `(i, j)` is present iff `(j - i) mod n` lies in the difference set.
pub fn make_circulant(spec: &CirculantSpec) -> Digraph {
    let n = spec.order;
    let out = (0..n)
        .map(|i| {
            spec.differences
                .iter()
                .fold(0u64, |row, &s| row | 1u64 << ((i + s) % n))
        })
        .collect();
    Digraph::from_out_rows(out)
}

/// Exactly one arc between every pair of distinct vertices.
pub fn is_tournament(d: &Digraph) -> bool {
    let full = if d.n == 64 { u64::MAX } else { (1u64 << d.n) - 1 };
    (0..d.n).all(|v| {
        let others = full & !(1u64 << v);
        d.out[v] & d.inn[v] == 0 && d.out[v] | d.inn[v] == others
    })
}

/// Number-theoretic tournament test: exactly one of `s`, `n - s` in `S`
/// for every `s` in `1..n`.
pub fn circulant_is_tournament(spec: &CirculantSpec) -> bool {
    let n = spec.order;
    (1..n).all(|s| spec.contains(s) != spec.contains(n - s))
}

fn reach(d: &Digraph, start: usize, forward: bool) -> u64 {
    let rows = if forward { &d.out } else { &d.inn };
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= rows[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

/// Set of vertices reachable from `start` by directed paths, as a bitset.
pub fn reachable_from(d: &Digraph, start: usize) -> u64 {
    reach(d, start, true)
}

/// Strong connectivity: vertex 0 reaches everything and is reached by everything.
pub fn is_strong(d: &Digraph) -> bool {
    let full = if d.n == 64 { u64::MAX } else { (1u64 << d.n) - 1 };
    reach(d, 0, true) == full && reach(d, 0, false) == full
}

/// Number of unordered pairs `n(n-1)/2`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The labeled tournament whose pair orientations are the bits of `code`:
/// pairs `(i, j)`, `i < j`, in lexicographic order; bit clear orients
/// `i -> j`, bit set orients `j -> i`.
pub fn tournament_from_code(n: usize, code: u64) -> Result<Digraph> {
    check_order(n)?;
    let pairs = pair_count(n);
    if pairs > 64 || (pairs < 64 && code >> pairs != 0) {
        return Err(Error::Domain(format!(
            "orientation code {code} does not fit {pairs} pairs"
        )));
    }
    let mut out = vec![0u64; n];
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if code >> bit & 1 == 0 {
                out[i] |= 1u64 << j;
            } else {
                out[j] |= 1u64 << i;
            }
            bit += 1;
        }
    }
    Ok(Digraph::from_out_rows(out))
}

/// Inverse of [`tournament_from_code`]; `None` if `d` is not a tournament.
pub fn tournament_code(d: &Digraph) -> Option<u64> {
    if !is_tournament(d) || pair_count(d.n) > 64 {
        return None;
    }
    let mut code = 0u64;
    let mut bit = 0;
    for i in 0..d.n {
        for j in i + 1..d.n {
            if d.has_arc(j, i) {
                code |= 1u64 << bit;
            }
            bit += 1;
        }
    }
    Some(code)
}

/// Stream of labeled tournaments produced by a binary counter over pair
/// orientations.
#[derive(Debug, Clone)]
pub struct Tournaments {
    n: usize,
    next: u64,
    end: u64,
    strong_only: bool,
}

impl Tournaments {
    /// Restricts the stream to counter values in `start..end`; used to
    /// split the enumeration across workers.
    pub fn split(&self, start: u64, end: u64) -> Tournaments {
        Tournaments {
            n: self.n,
            next: start.max(self.next),
            end: end.min(self.end),
            strong_only: self.strong_only,
        }
    }

    /// Total number of counter values (before any strong filter).
    pub fn total(&self) -> u64 {
        self.end - self.next
    }
}

impl Iterator for Tournaments {
    type Item = Digraph;

    fn next(&mut self) -> Option<Digraph> {
        while self.next < self.end {
            let code = self.next;
            self.next += 1;
            let t = tournament_from_code(self.n, code).expect("code in range");
            if !self.strong_only || is_strong(&t) {
                return Some(t);
            }
        }
        None
    }
}

/// Every labeled tournament on `n` vertices, optionally only strong ones,
/// under the default order cap.
pub fn enumerate_tournaments(n: usize, strong_only: bool) -> Result<Tournaments> {
    enumerate_tournaments_capped(n, strong_only, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_tournaments_capped(n: usize, strong_only: bool, cap: usize) -> Result<Tournaments> {
    check_order(n)?;
    let pairs = pair_count(n);
    if n > cap.min(HARD_ENUMERATION_CAP) {
        return Err(Error::EnumerationTooLarge {
            n,
            pairs,
            count: 1u128 << pairs,
            cap: cap.min(HARD_ENUMERATION_CAP),
        });
    }
    Ok(Tournaments {
        n,
        next: 0,
        end: 1u64 << pairs,
        strong_only,
    })
}

/// A uniform random labeled tournament: each pair, in lexicographic order,
/// is oriented by one fair coin drawn from `rng`.
pub fn random_tournament<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Digraph> {
    check_order(n)?;
    let mut out = vec![0u64; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<bool>() {
                out[j] |= 1u64 << i;
            } else {
                out[i] |= 1u64 << j;
            }
        }
    }
    Ok(Digraph::from_out_rows(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn rejects_bad_arcs() {
        assert_eq!(
            Digraph::new(3, [(0, 0)]),
            Err(Error::SelfLoop { tail: 0, head: 0 })
        );
        assert_eq!(
            Digraph::new(3, [(0, 3)]),
            Err(Error::ArcOutOfRange { tail: 0, head: 3, n: 3 })
        );
        assert_eq!(
            Digraph::new(3, [(0, 1), (0, 1)]),
            Err(Error::DuplicateArc { tail: 0, head: 1 })
        );
        assert_eq!(Digraph::new(65, []), Err(Error::TooManyVertices(65)));
        assert_eq!(Digraph::new(0, []), Err(Error::EmptyDigraph));
    }

    #[test]
    fn arc_index_follows_lexicographic_order() {
        let d = make_circulant(&CirculantSpec::new(7, [1, 2, 4]).unwrap());
        for (i, a) in d.arcs().enumerate() {
            assert_eq!(d.arc_index(a.tail, a.head), Some(i));
        }
        assert_eq!(d.arc_index(1, 0), None);
    }

    #[test]
    fn c7_matches_drawing() {
        let d = make_circulant(&CirculantSpec::new(7, [1, 2, 4]).unwrap());
        assert_eq!(d.arc_count(), 21);
        for (t, h) in [(0, 1), (0, 2), (0, 4), (1, 3), (1, 5), (4, 1)] {
            assert!(d.has_arc(t, h), "missing ({t}, {h})");
        }
        assert!(!d.has_arc(1, 0));
        assert!(is_tournament(&d));
        assert!(is_strong(&d));
    }

    #[test]
    fn smallest_circulant_is_triangle() {
        let d = make_circulant(&CirculantSpec::new(3, [1]).unwrap());
        assert_eq!(d, triangle());
    }

    #[test]
    fn c9_is_strong_tournament() {
        let spec = CirculantSpec::new(9, [1, 2, 4, 6]).unwrap();
        let d = make_circulant(&spec);
        assert_eq!(d.arc_count(), 36);
        assert!(is_tournament(&d) && is_strong(&d));
        assert!(circulant_is_tournament(&spec));
    }

    #[test]
    fn circulant_validation_names_offender() {
        let err = CirculantSpec::new(5, [1, 5]).unwrap_err();
        assert!(err.to_string().contains("difference 5"), "{err}");
        let err = CirculantSpec::new(5, [0]).unwrap_err();
        assert!(err.to_string().contains("difference 0"), "{err}");
        assert!(CirculantSpec::new(5, []).is_err());
        assert!(CirculantSpec::new(5, [2, 2]).is_err());
    }

    #[test]
    fn tournament_predicate() {
        assert!(!is_tournament(&make_circulant(&CirculantSpec::new(4, [1]).unwrap())));
        assert!(!is_tournament(&Digraph::new(2, [(0, 1), (1, 0)]).unwrap()));
        assert!(!circulant_is_tournament(&CirculantSpec::new(7, [1, 2, 5]).unwrap()));
    }

    #[test]
    fn odd_family_is_tournament_for_small_k() {
        for k in 3..=20 {
            let spec = CirculantSpec::odd_family(k).unwrap();
            assert!(circulant_is_tournament(&spec), "k = {k}");
            assert!(is_tournament(&make_circulant(&spec)), "k = {k}");
        }
    }

    #[test]
    fn strongness() {
        assert!(is_strong(&triangle()));
        let transitive = Digraph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(!is_strong(&transitive));
        assert!(is_strong(&Digraph::empty(1).unwrap()));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_tournaments(3, false).unwrap().count(), 8);
        assert_eq!(enumerate_tournaments(3, true).unwrap().count(), 2);
        assert!(matches!(
            enumerate_tournaments(7, false),
            Err(Error::EnumerationTooLarge { n: 7, pairs: 21, count: 2097152, cap: 6 })
        ));
    }

    #[test]
    fn tournament_code_roundtrip() {
        for code in 0..64 {
            let t = tournament_from_code(4, code).unwrap();
            assert_eq!(tournament_code(&t), Some(code));
        }
        assert!(tournament_from_code(3, 8).is_err());
    }

    #[test]
    fn json_sorted_on_write_any_order_on_read() {
        let d: Digraph = serde_json::from_str(r#"{"n":3,"arcs":[[2,0],[0,1],[1,2]]}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"n":3,"arcs":[[0,1],[1,2],[2,0]]}"#
        );
        assert!(serde_json::from_str::<Digraph>(r#"{"n":3,"arcs":[[0,1],[0,1]]}"#).is_err());
    }
}
