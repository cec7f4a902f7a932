//! Complete `p`-graphs: edges as vertex bitmasks, colex ranking, and the
//! dense edge-colored hypergraph [`Coloring`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Vertices are bits of a `u64`.
pub const MAX_VERTICES: usize = 64;

/// Upper limit on `C(n, p)` for dense colorings.
pub const MAX_DENSE_EDGES: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypercoreError {
    #[error("invalid parameters n={n}, p={p} (need 1 <= p <= n <= 64)")]
    InvalidParameters { n: usize, p: usize },
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge vertices must be distinct and strictly ascending")]
    NotAscending,
    #[error("edge has {found} vertices, expected {expected}")]
    WrongUniformity { expected: usize, found: usize },
    #[error("rank {rank} out of range (edge count {count})")]
    RankOutOfRange { rank: u64, count: u64 },
    #[error("edge count mismatch: expected {expected}, found {found}")]
    EdgeCountMismatch { expected: u64, found: u64 },
    #[error("C({n},{p}) = {count} edges exceeds the dense storage limit")]
    TooManyEdges { n: usize, p: usize, count: u64 },
}

const fn pascal() -> [[u64; 65]; 65] {
    let mut t = [[0u64; 65]; 65];
    let mut n = 0;
    while n < 65 {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
            k += 1;
        }
        n += 1;
    }
    t
}

static BINOM: [[u64; 65]; 65] = pascal();

/// `C(n, k)`, saturating at `u64::MAX` outside the tabulated range.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    if n <= 64 {
        return BINOM[n][k];
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// A hyperedge: a set of vertices stored as a bitmask.
///
/// The derived ordering compares masks numerically, which is exactly colex
/// order on equal-size sets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(u64);

impl Edge {
    /// Builds an edge of the complete graph on `n` vertices from strictly
    /// ascending vertex indices.
    pub fn new(vertices: &[usize], n: usize) -> Result<Edge, HypercoreError> {
        let mut mask = 0u64;
        let mut prev: Option<usize> = None;
        for &v in vertices {
            if v >= n || v >= MAX_VERTICES {
                return Err(HypercoreError::VertexOutOfRange { vertex: v, n });
            }
            if prev.is_some_and(|p| p >= v) {
                return Err(HypercoreError::NotAscending);
            }
            prev = Some(v);
            mask |= 1 << v;
        }
        Ok(Edge(mask))
    }

    pub const fn from_mask(mask: u64) -> Edge {
        Edge(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }

    /// Colex rank: `sum_i C(v_i, i + 1)` over the ascending vertices.
    pub fn rank(self) -> u64 {
        self.vertices()
            .enumerate()
            .map(|(i, v)| BINOM[v][i + 1])
            .sum()
    }

    /// Inverse of [`Edge::rank`] for `p`-sets. Caller guarantees the rank is in range.
    pub fn unrank(mut rank: u64, p: usize) -> Edge {
        let mut mask = 0u64;
        for i in (1..=p).rev() {
            // largest v with C(v, i) <= rank
            let mut v = i - 1;
            while v + 1 < 65 && BINOM[v + 1][i] <= rank {
                v += 1;
            }
            rank -= BINOM[v][i];
            mask |= 1 << v;
        }
        Edge(mask)
    }

    pub const fn is_subset_of(self, other: Edge) -> bool {
        self.0 & !other.0 == 0
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

/// Ascending vertices of an [`Edge`].
#[derive(Clone)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// All `p`-subsets of `0..n` in colex order.
pub fn edges(n: usize, p: usize) -> EdgeIter {
    let first = if p == 0 || p > n || n > MAX_VERTICES {
        None
    } else {
        Some(((1u128 << p) - 1) as u64)
    };
    EdgeIter { next: first, n }
}

/// Iterator over `p`-subsets in colex order (Gosper's hack).
pub struct EdgeIter {
    next: Option<u64>,
    n: usize,
}

impl Iterator for EdgeIter {
    type Item = Edge;

    fn next(&mut self) -> Option<Edge> {
        let cur = self.next?;
        let x = cur as u128;
        let c = x & x.wrapping_neg();
        let r = x + c;
        let succ = (((r ^ x) >> 2) / c) | r;
        self.next = if succ >> self.n == 0 {
            Some(succ as u64)
        } else {
            None
        };
        Some(Edge(cur))
    }
}

/// The `k`-subsets of the set bits of `mask`, in colex order.
pub fn subsets(mask: u64, k: usize) -> impl Iterator<Item = u64> {
    let mut positions = [0u8; 64];
    let m = mask.count_ones() as usize;
    for (i, v) in Edge(mask).vertices().enumerate() {
        positions[i] = v as u8;
    }
    let empty = (k == 0).then_some(0u64);
    let inner = if k == 0 { edges(0, 1) } else { edges(m, k) };
    empty.into_iter().chain(inner.map(move |e| {
        let mut out = 0u64;
        for i in e.vertices() {
            out |= 1 << positions[i];
        }
        out
    }))
}

fn check_params(n: usize, p: usize) -> Result<u64, HypercoreError> {
    if p == 0 || p > n || n > MAX_VERTICES {
        return Err(HypercoreError::InvalidParameters { n, p });
    }
    let count = binomial(n, p);
    if count > MAX_DENSE_EDGES {
        return Err(HypercoreError::TooManyEdges { n, p, count });
    }
    Ok(count)
}

/// Colex rank of an ascending vertex list as an edge of `K_n^(p)`.
pub fn edge_rank(vertices: &[usize], n: usize, p: usize) -> Result<u64, HypercoreError> {
    if p == 0 || p > n || n > MAX_VERTICES {
        return Err(HypercoreError::InvalidParameters { n, p });
    }
    if vertices.len() != p {
        return Err(HypercoreError::WrongUniformity {
            expected: p,
            found: vertices.len(),
        });
    }
    Ok(Edge::new(vertices, n)?.rank())
}

/// Inverse of [`edge_rank`].
pub fn edge_unrank(rank: u64, n: usize, p: usize) -> Result<Edge, HypercoreError> {
    if p == 0 || p > n || n > MAX_VERTICES {
        return Err(HypercoreError::InvalidParameters { n, p });
    }
    let count = binomial(n, p);
    if rank >= count {
        return Err(HypercoreError::RankOutOfRange { rank, count });
    }
    Ok(Edge::unrank(rank, p))
}

/// Renumbers color ids by first occurrence (restricted-growth form).
/// Returns the number of distinct colors.
pub fn normalize_colors(assign: &mut [u32]) -> u32 {
    let mut map: BTreeMap<u32, u32> = BTreeMap::new();
    for c in assign.iter_mut() {
        let next = map.len() as u32;
        *c = *map.entry(*c).or_insert(next);
    }
    map.len() as u32
}

/// True if `assign` is already a restricted-growth string.
pub fn is_restricted_growth(assign: &[u32]) -> bool {
    let mut next = 0u32;
    for &c in assign {
        if c > next {
            return false;
        }
        if c == next {
            next += 1;
        }
    }
    true
}

/// An edge-colored complete `p`-graph on `n` vertices.
///
/// `assign[r]` is the color of the edge of colex rank `r`. Color ids are kept
/// in restricted-growth normal form, so two colorings that differ only by a
/// renaming of colors compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    n: usize,
    p: usize,
    assign: Vec<u32>,
    k: u32,
}

impl Coloring {
    /// Normalizing constructor; `assignments` lists colors in colex edge order.
    pub fn new(n: usize, p: usize, assignments: &[u32]) -> Result<Coloring, HypercoreError> {
        let count = check_params(n, p)?;
        if assignments.len() as u64 != count {
            return Err(HypercoreError::EdgeCountMismatch {
                expected: count,
                found: assignments.len() as u64,
            });
        }
        let mut assign = assignments.to_vec();
        let k = normalize_colors(&mut assign);
        Ok(Coloring { n, p, assign, k })
    }

    /// Colors every edge with `f(edge)`, then normalizes.
    pub fn from_fn(
        n: usize,
        p: usize,
        mut f: impl FnMut(Edge) -> u32,
    ) -> Result<Coloring, HypercoreError> {
        check_params(n, p)?;
        let mut assign: Vec<u32> = edges(n, p).map(&mut f).collect();
        let k = normalize_colors(&mut assign);
        Ok(Coloring { n, p, assign, k })
    }

    pub fn monochromatic(n: usize, p: usize) -> Result<Coloring, HypercoreError> {
        Coloring::from_fn(n, p, |_| 0)
    }

    /// Every edge gets its own color.
    pub fn rainbow(n: usize, p: usize) -> Result<Coloring, HypercoreError> {
        let mut i = 0;
        Coloring::from_fn(n, p, |_| {
            i += 1;
            i
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of colors.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.assign.len()
    }

    pub fn assignments(&self) -> &[u32] {
        &self.assign
    }

    pub fn color(&self, e: Edge) -> u32 {
        self.assign[e.rank() as usize]
    }

    pub fn color_at(&self, rank: usize) -> u32 {
        self.assign[rank]
    }

    /// Edges with their colors, in colex order.
    pub fn iter(&self) -> impl Iterator<Item = (Edge, u32)> + '_ {
        edges(self.n, self.p).zip(self.assign.iter().copied())
    }

    /// Number of edges in each color class.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = alloc::vec![0usize; self.k as usize];
        for &c in &self.assign {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// The color with the largest class (lowest id on ties).
    pub fn dominant_color(&self) -> u32 {
        let sizes = self.class_sizes();
        let mut best = 0;
        for (c, &s) in sizes.iter().enumerate() {
            if s > sizes[best] {
                best = c;
            }
        }
        best as u32
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coloring")
            .field("n", &self.n)
            .field("p", &self.p)
            .field("k", &self.k)
            .field("assign", &self.assign)
            .finish()
    }
}
