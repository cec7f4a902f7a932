//! Rainbow detectors for forbidden configurations.
//!
//! Every detector returns at most one witness, chosen by a fixed rule so
//! repeated runs agree. For the three-edge families the witness edges are
//! pairwise distinct and pairwise differently colored in the host.
//!
//! The general-`p` detectors (cancellative, `O`, `T`) exploit that a rainbow
//! triple uses at most one edge of any given color: with `beta` the largest
//! color class, two of the three edges avoid `beta`. Enumerating pairs of
//! non-`beta` edges and completing the third edge keeps the scans cheap on
//! colorings dominated by a background color.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::graph::ColoredGraph;
use crate::hypercore::{binomial, edges, subsets, Coloring, Edge};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern requires p = 3, coloring has p = {0}")]
    Uniformity(usize),
    #[error("star S_({q},{r}) does not fit in K_{n}^({p})")]
    StarInfeasible { q: usize, r: usize, p: usize, n: usize },
    #[error("vertex {x} out of range for n = {n}")]
    VertexOutOfRange { x: usize, n: usize },
    #[error("{0} edges is too many for incremental detection")]
    TooManyEdges(usize),
}

/// Shape of a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternKind {
    Cancellative,
    F4,
    F5,
    H1,
    H2,
    Star { q: usize, r: usize },
    T,
    O,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::Cancellative => f.write_str("cancellative"),
            PatternKind::F4 => f.write_str("f4"),
            PatternKind::F5 => f.write_str("f5"),
            PatternKind::H1 => f.write_str("h1"),
            PatternKind::H2 => f.write_str("h2"),
            PatternKind::Star { q, r } => write!(f, "star({q},{r})"),
            PatternKind::T => f.write_str("t"),
            PatternKind::O => f.write_str("o"),
        }
    }
}

/// Three-edge families that can be forbidden.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `A △ B ⊆ C`.
    Cancellative,
    /// `{abc, abd, bcd}`.
    F4,
    /// `{abc, abd, cde}`.
    F5,
    /// `{abc, abd, abe}`.
    H1,
    /// `{abc, bcd, cde}`.
    H2,
    /// Pairwise symmetric differences cover at most `p` vertices.
    T,
    /// Cancellative with `C ⊄ A ∪ B`.
    O,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Cancellative,
        Family::F4,
        Family::F5,
        Family::H1,
        Family::H2,
        Family::T,
        Family::O,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cancellative => "cancellative",
            Family::F4 => "f4",
            Family::F5 => "f5",
            Family::H1 => "h1",
            Family::H2 => "h2",
            Family::T => "t",
            Family::O => "o",
        }
    }

    pub fn requires_p3(self) -> bool {
        matches!(self, Family::F4 | Family::F5 | Family::H1 | Family::H2)
    }

    pub fn kind(self) -> PatternKind {
        match self {
            Family::Cancellative => PatternKind::Cancellative,
            Family::F4 => PatternKind::F4,
            Family::F5 => PatternKind::F5,
            Family::H1 => PatternKind::H1,
            Family::H2 => PatternKind::H2,
            Family::T => PatternKind::T,
            Family::O => PatternKind::O,
        }
    }

    /// Whether three distinct `p`-edges, in any order, form a member of the
    /// family. The `p = 3` families return false for other uniformities.
    pub fn matches(self, a: Edge, b: Edge, c: Edge, p: usize) -> bool {
        let (a, b, c) = (a.mask(), b.mask(), c.mask());
        if a == b || a == c || b == c {
            return false;
        }
        let union = (a | b | c).count_ones();
        match self {
            Family::Cancellative => {
                cancellative(a, b, c) || cancellative(a, c, b) || cancellative(b, c, a)
            }
            Family::O => o_config(a, b, c) || o_config(a, c, b) || o_config(b, c, a),
            Family::T => ((a ^ b) | (a ^ c) | (b ^ c)).count_ones() as usize <= p,
            Family::F4 => p == 3 && union == 4,
            Family::F5 => p == 3 && union == 5 && Family::Cancellative.matches_masks(a, b, c, p),
            Family::H1 => p == 3 && union == 5 && (a & b & c).count_ones() == 2,
            Family::H2 => {
                p == 3
                    && union == 5
                    && (tight_path(a, b, c) || tight_path(b, a, c) || tight_path(a, c, b))
            }
        }
    }

    fn matches_masks(self, a: u64, b: u64, c: u64, p: usize) -> bool {
        self.matches(Edge::from_mask(a), Edge::from_mask(b), Edge::from_mask(c), p)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Family, UnknownFamily> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or(UnknownFamily)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("unknown family (expected one of cancellative, f4, f5, h1, h2, t, o)")]
pub struct UnknownFamily;

#[inline]
fn cancellative(a: u64, b: u64, c: u64) -> bool {
    (a ^ b) & !c == 0
}

#[inline]
fn o_config(a: u64, b: u64, c: u64) -> bool {
    cancellative(a, b, c) && c & !(a | b) != 0
}

// {abc, bcd, cde} with `mid` = bcd
#[inline]
fn tight_path(first: u64, mid: u64, last: u64) -> bool {
    (first & mid).count_ones() == 2
        && (mid & last).count_ones() == 2
        && (first & last).count_ones() == 1
}

/// A rainbow copy found in a coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternWitness {
    pub kind: PatternKind,
    pub edges: Vec<Edge>,
    pub colors: Vec<u32>,
}

impl PatternWitness {
    fn new(kind: PatternKind, edges: Vec<Edge>, host: &Coloring) -> PatternWitness {
        let colors = edges.iter().map(|&e| host.color(e)).collect();
        PatternWitness { kind, edges, colors }
    }

    /// Re-checks the witness against `host`: edge validity, recorded and
    /// pairwise distinct colors, and the defining set relation of the kind.
    pub fn validate(&self, host: &Coloring) -> bool {
        let p = host.p();
        let n = host.n();
        let in_host = |e: &Edge| e.len() == p && e.mask() >> n == 0;
        if !self.edges.iter().all(in_host) || self.colors.len() != self.edges.len() {
            return false;
        }
        for (i, (&e, &c)) in self.edges.iter().zip(&self.colors).enumerate() {
            if host.color(e) != c {
                return false;
            }
            for j in 0..i {
                if self.edges[j] == e || self.colors[j] == c {
                    return false;
                }
            }
        }
        let family = match self.kind {
            PatternKind::Star { q, r } => return is_star(&self.edges, q, r),
            PatternKind::Cancellative => Family::Cancellative,
            PatternKind::F4 => Family::F4,
            PatternKind::F5 => Family::F5,
            PatternKind::H1 => Family::H1,
            PatternKind::H2 => Family::H2,
            PatternKind::T => Family::T,
            PatternKind::O => Family::O,
        };
        match self.edges.as_slice() {
            [a, b, c] => family.matches(*a, *b, *c, p),
            _ => false,
        }
    }
}

fn is_star(edges: &[Edge], q: usize, r: usize) -> bool {
    if edges.len() != r || r == 0 {
        return false;
    }
    if r == 1 {
        return true;
    }
    let core = edges[0].mask() & edges[1].mask();
    if core.count_ones() as usize != q {
        return false;
    }
    for i in 0..r {
        for j in i + 1..r {
            if edges[i].mask() & edges[j].mask() != core {
                return false;
            }
        }
    }
    true
}

/// Dispatches to the detector for `family`.
pub fn find_rainbow(c: &Coloring, family: Family) -> Result<Option<PatternWitness>, PatternError> {
    match family {
        Family::Cancellative => Ok(find_rainbow_cancellative(c)),
        Family::O => Ok(find_rainbow_o(c)),
        Family::T => Ok(find_rainbow_t(c)),
        Family::F4 | Family::F5 | Family::H1 | Family::H2 => find_rainbow_p3(c, family),
    }
}

/// Non-dominant edges with their colors, in colex order.
fn non_background(c: &Coloring) -> Vec<(Edge, u32)> {
    let beta = c.dominant_color();
    c.iter().filter(|&(_, col)| col != beta).collect()
}

type Triple = (Edge, Edge, Edge);

fn keep_min(best: &mut Option<(u64, u64, u64, Triple)>, key: (u64, u64, u64), t: Triple) {
    if best.as_ref().is_none_or(|b| key < (b.0, b.1, b.2)) {
        *best = Some((key.0, key.1, key.2, t));
    }
}

/// Rainbow `A, B, C` with `A △ B ⊆ C` (plus `C ⊄ A ∪ B` when `o_only`).
/// The witness is the minimum of `(rank A, rank B, rank C)` with `rank A < rank B`.
fn cancellative_search(c: &Coloring, o_only: bool) -> Option<Triple> {
    if c.k() < 3 {
        return None;
    }
    let n = c.n();
    let p = c.p();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let special = non_background(c);
    let mut best = None;
    let mut offer = |a: Edge, b: Edge, cc: Edge| {
        if o_only && cc.mask() & !(a.mask() | b.mask()) == 0 {
            return;
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        keep_min(&mut best, (a.rank(), b.rank(), cc.rank()), (a, b, cc));
    };
    for (i, &(x, cx)) in special.iter().enumerate() {
        for &(y, cy) in &special[i + 1..] {
            if cx == cy {
                continue;
            }
            // {A, B} = {x, y}: first C containing x △ y with a third color
            let d = x.mask() ^ y.mask();
            let dl = d.count_ones() as usize;
            if dl <= p {
                for extra in subsets(full & !d, p - dl) {
                    let cc = Edge::from_mask(d | extra);
                    let col = c.color(cc);
                    if col != cx && col != cy && !(o_only && cc.mask() & !(x.mask() | y.mask()) == 0) {
                        offer(x, y, cc);
                        break;
                    }
                }
            }
            // one of them is A, the other C; B = (A \ X) ∪ Y
            for (a, ca, cc, ccol) in [(x, cx, y, cy), (y, cy, x, cx)] {
                let shared = a.mask() & cc.mask();
                let fresh = cc.mask() & !a.mask();
                for t in 1..=shared.count_ones() as usize {
                    for xs in subsets(shared, t) {
                        for ys in subsets(fresh, t) {
                            let b = Edge::from_mask((a.mask() & !xs) | ys);
                            let cb = c.color(b);
                            if cb != ca && cb != ccol {
                                offer(a, b, cc);
                            }
                        }
                    }
                }
            }
        }
    }
    best.map(|b| b.3)
}

/// First rainbow cancellative triple `A, B, C` (`A △ B ⊆ C`), if any.
pub fn find_rainbow_cancellative(c: &Coloring) -> Option<PatternWitness> {
    cancellative_search(c, false)
        .map(|(a, b, cc)| PatternWitness::new(PatternKind::Cancellative, vec![a, b, cc], c))
}

/// Rainbow member of `O^(p)`: cancellative with `C \ (A ∪ B)` nonempty.
pub fn find_rainbow_o(c: &Coloring) -> Option<PatternWitness> {
    cancellative_search(c, true).map(|(a, b, cc)| PatternWitness::new(PatternKind::O, vec![a, b, cc], c))
}

/// Rainbow member of `T^(p)`: three edges whose pairwise symmetric
/// differences together cover at most `p` vertices. The witness minimizes
/// the sorted rank triple.
pub fn find_rainbow_t(c: &Coloring) -> Option<PatternWitness> {
    if c.k() < 3 {
        return None;
    }
    let n = c.n();
    let p = c.p();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let special = non_background(c);
    let mut best: Option<(u64, u64, u64, Triple)> = None;
    for (i, &(f1, c1)) in special.iter().enumerate() {
        for &(f2, c2) in &special[i + 1..] {
            if c1 == c2 {
                continue;
            }
            let common = f1.mask() & f2.mask();
            let diff = f1.mask() ^ f2.mask();
            let outside = full & !(f1.mask() | f2.mask());
            let (il, dl) = (common.count_ones() as usize, diff.count_ones() as usize);
            if dl > p {
                continue;
            }
            // f3 = (common \ R) ∪ S ∪ N, covering set = diff ∪ R ∪ N
            for rl in 0..=il {
                for sl in 0..=dl {
                    let Some(nl) = p.checked_sub(il - rl + sl) else {
                        continue;
                    };
                    if dl + rl + nl > p {
                        continue;
                    }
                    for r in subsets(common, rl) {
                        for s in subsets(diff, sl) {
                            for nn in subsets(outside, nl) {
                                let f3 = Edge::from_mask((common & !r) | s | nn);
                                if f3 == f1 || f3 == f2 {
                                    continue;
                                }
                                let c3 = c.color(f3);
                                if c3 == c1 || c3 == c2 {
                                    continue;
                                }
                                let mut t = [f1, f2, f3];
                                t.sort();
                                keep_min(&mut best, (t[0].rank(), t[1].rank(), t[2].rank()), (t[0], t[1], t[2]));
                            }
                        }
                    }
                }
            }
        }
    }
    best.map(|b| {
        let (x, y, z) = b.3;
        PatternWitness::new(PatternKind::T, vec![x, y, z], c)
    })
}

/// Rainbow generalized star `S_{q,r}^(p)`: `r` edges `Q ∪ P_i` sharing a
/// `q`-set core with pairwise disjoint petals. Cores are scanned in colex
/// order and petals chosen by exact search.
pub fn find_rainbow_star(c: &Coloring, q: usize, r: usize) -> Result<Option<PatternWitness>, PatternError> {
    let (n, p) = (c.n(), c.p());
    let kind = PatternKind::Star { q, r };
    if q > p || r == 0 || q + r * (p - q) > n {
        return Err(PatternError::StarInfeasible { q, r, p, n });
    }
    if q == p {
        // all petals are empty: the star is the single edge Q
        let e = edges(n, p).next().expect("p <= n");
        return Ok(Some(PatternWitness::new(kind, vec![e], c)));
    }
    if (c.k() as usize) < r {
        return Ok(None);
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for core in subsets(full, q) {
        let petals: Vec<(u64, u32)> = subsets(full & !core, p - q)
            .map(|pt| (pt, c.color(Edge::from_mask(core | pt))))
            .collect();
        let mut chosen = Vec::with_capacity(r);
        if pick_petals(&petals, 0, 0, r, &mut chosen) {
            let es = chosen.iter().map(|&i| Edge::from_mask(core | petals[i].0)).collect();
            return Ok(Some(PatternWitness::new(kind, es, c)));
        }
    }
    Ok(None)
}

fn pick_petals(petals: &[(u64, u32)], start: usize, used: u64, r: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == r {
        return true;
    }
    for i in start..petals.len() {
        let (pt, col) = petals[i];
        if pt & used != 0 || chosen.iter().any(|&j| petals[j].1 == col) {
            continue;
        }
        chosen.push(i);
        if pick_petals(petals, i + 1, used | pt, r, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[inline]
fn tri(a: usize, b: usize, c: usize) -> Edge {
    Edge::from_mask(1 << a | 1 << b | 1 << c)
}

/// Detectors for the 3-uniform patterns `F4, F5, H1, H2`.
///
/// Scan orders: `F4` by 4-sets in colex order (sub-triples `abc, abd, acd,
/// bcd`); `F5` as `(a<b, c<d, e)` giving `{abc, abd, cde}`; `H1` as
/// `(a<b, c<d<e)` giving `{abc, abd, abe}`; `H2` as tight paths
/// `(a, b, c, d, e)` with `a < e` giving `{abc, bcd, cde}`.
pub fn find_rainbow_p3(c: &Coloring, kind: Family) -> Result<Option<PatternWitness>, PatternError> {
    if c.p() != 3 {
        return Err(PatternError::Uniformity(c.p()));
    }
    let n = c.n();
    let col = |e: Edge| c.color(e);
    let found = |es: Vec<Edge>| Ok(Some(PatternWitness::new(kind.kind(), es, c)));
    if c.k() < 3 {
        return Ok(None);
    }
    match kind {
        Family::F4 => {
            for q in edges(n, 4) {
                let subs: Vec<Edge> = q
                    .vertices()
                    .map(|v| Edge::from_mask(q.mask() & !(1 << v)))
                    .collect();
                // subs[i] omits the i-th smallest vertex: reorder to abc, abd, acd, bcd
                let order = [subs[3], subs[2], subs[1], subs[0]];
                let cols = order.map(col);
                for i in 0..4 {
                    for j in i + 1..4 {
                        if cols[i] == cols[j] {
                            continue;
                        }
                        for k in j + 1..4 {
                            if cols[k] != cols[i] && cols[k] != cols[j] {
                                return found(vec![order[i], order[j], order[k]]);
                            }
                        }
                    }
                }
            }
            Ok(None)
        }
        Family::F5 => {
            for a in 0..n {
                for b in a + 1..n {
                    for cv in 0..n {
                        if cv == a || cv == b {
                            continue;
                        }
                        let abc = col(tri(a, b, cv));
                        for d in cv + 1..n {
                            if d == a || d == b {
                                continue;
                            }
                            let abd = col(tri(a, b, d));
                            if abd == abc {
                                continue;
                            }
                            for e in 0..n {
                                if e == a || e == b || e == cv || e == d {
                                    continue;
                                }
                                let cde = col(tri(cv, d, e));
                                if cde != abc && cde != abd {
                                    return found(vec![tri(a, b, cv), tri(a, b, d), tri(cv, d, e)]);
                                }
                            }
                        }
                    }
                }
            }
            Ok(None)
        }
        Family::H1 => {
            for a in 0..n {
                for b in a + 1..n {
                    let others: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
                    for (i, &x) in others.iter().enumerate() {
                        let cx = col(tri(a, b, x));
                        for (j, &y) in others.iter().enumerate().skip(i + 1) {
                            let cy = col(tri(a, b, y));
                            if cy == cx {
                                continue;
                            }
                            for &z in &others[j + 1..] {
                                let cz = col(tri(a, b, z));
                                if cz != cx && cz != cy {
                                    return found(vec![tri(a, b, x), tri(a, b, y), tri(a, b, z)]);
                                }
                            }
                        }
                    }
                }
            }
            Ok(None)
        }
        Family::H2 => {
            for a in 0..n {
                for b in 0..n {
                    if b == a {
                        continue;
                    }
                    for cv in 0..n {
                        if cv == a || cv == b {
                            continue;
                        }
                        let abc = col(tri(a, b, cv));
                        for d in 0..n {
                            if d == a || d == b || d == cv {
                                continue;
                            }
                            let bcd = col(tri(b, cv, d));
                            if bcd == abc {
                                continue;
                            }
                            for e in a + 1..n {
                                if e == b || e == cv || e == d {
                                    continue;
                                }
                                let cde = col(tri(cv, d, e));
                                if cde != abc && cde != bcd {
                                    return found(vec![tri(a, b, cv), tri(b, cv, d), tri(cv, d, e)]);
                                }
                            }
                        }
                    }
                }
            }
            Ok(None)
        }
        Family::Cancellative | Family::T | Family::O => Ok(find_rainbow(c, kind)?),
    }
}

/// The link of `x`: pair `yz` gets the color of `xyz`.
pub fn link_graph(c: &Coloring, x: usize) -> Result<ColoredGraph, PatternError> {
    if c.p() != 3 {
        return Err(PatternError::Uniformity(c.p()));
    }
    let n = c.n();
    if x >= n {
        return Err(PatternError::VertexOutOfRange { x, n });
    }
    let labels: Vec<usize> = (0..n).filter(|&v| v != x).collect();
    let mut g = ColoredGraph::with_labels(labels.clone(), 0);
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            g.set_color(i, j, c.color(tri(x, labels[i], labels[j])));
        }
    }
    Ok(g)
}

/// First rainbow triangle of `g`, by vertex label.
pub fn has_rainbow_triangle(g: &ColoredGraph) -> Option<[usize; 3]> {
    g.has_rainbow_triangle()
}

/// Edge-count limit for [`IncrementalDetector`].
pub const MAX_INCREMENTAL_EDGES: usize = 256;

/// Family members of `K_n^(p)` indexed by their colex-largest edge.
///
/// When edges are colored in colex order, the members completed by edge `e`
/// are exactly those listed under `e`, so checking them after each
/// assignment detects a rainbow copy as soon as it appears.
#[derive(Debug, Clone)]
pub struct IncrementalDetector {
    n: usize,
    p: usize,
    family: Family,
    by_last: Vec<Vec<(u16, u16)>>,
}

impl IncrementalDetector {
    pub fn new(n: usize, p: usize, family: Family) -> Result<IncrementalDetector, PatternError> {
        if family.requires_p3() && p != 3 {
            return Err(PatternError::Uniformity(p));
        }
        let count = binomial(n, p) as usize;
        if count > MAX_INCREMENTAL_EDGES {
            return Err(PatternError::TooManyEdges(count));
        }
        let all: Vec<Edge> = edges(n, p).collect();
        let mut by_last = vec![Vec::new(); all.len()];
        for (k, &ek) in all.iter().enumerate() {
            for i in 0..k {
                for j in i + 1..k {
                    if family.matches(all[i], all[j], ek, p) {
                        by_last[k].push((i as u16, j as u16));
                    }
                }
            }
        }
        Ok(IncrementalDetector { n, p, family, by_last })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn edge_count(&self) -> usize {
        self.by_last.len()
    }

    /// Pairs `(i, j)`, `i < j < last`, completing a member with edge `last`.
    pub fn members_ending_at(&self, last: usize) -> &[(u16, u16)] {
        &self.by_last[last]
    }

    /// Checks the members closed by `last`; `colors[..=last]` must be assigned.
    #[inline]
    pub fn violation(&self, colors: &[u32], last: usize) -> Option<(usize, usize)> {
        let cl = colors[last];
        for &(i, j) in &self.by_last[last] {
            let (ci, cj) = (colors[i as usize], colors[j as usize]);
            if ci != cj && ci != cl && cj != cl {
                return Some((i as usize, j as usize));
            }
        }
        None
    }

    /// Full check of a complete assignment.
    pub fn is_free(&self, colors: &[u32]) -> bool {
        (0..colors.len()).all(|e| self.violation(colors, e).is_none())
    }
}
