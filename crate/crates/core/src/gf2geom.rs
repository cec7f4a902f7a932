//! Projective geometry over GF(2): closures of point triples, the Steiner
//! system `PG(s-1, 2)`, projective planes, the Grassmann graph `J_2(s, 3)`
//! and good vertex colorings of it.
//!
//! Points of `F_2^s \ {0}` are integers `1..2^s`. A projective subspace is
//! stored as a bitmask over point values (bit `v` set iff `v` is a point of
//! it), so intersections are bitwise ANDs. With a `u128` mask this supports
//! `s <= 7`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use thiserror::Error;

use crate::designs::TripleSystem;
use crate::seeded_rng;

/// Largest supported ambient dimension.
pub const MAX_DIM: u32 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("points must be distinct, nonzero and below 2^{s}")]
    BadPoints { s: u32 },
    #[error("dimension s={s} out of range (need {min} <= s <= 7)")]
    DimensionOutOfRange { s: u32, min: u32 },
    #[error("planes {0}, {1}, {2} do not form a triangle of the Grassmann graph")]
    NotATriangle(usize, usize, usize),
    #[error("planes {0} and {1} meet in a line, the set is not independent")]
    NotIndependent(usize, usize),
    #[error("plane index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("coloring covers {found} planes, graph has {expected}")]
    PartialColoring { expected: usize, found: usize },
}

/// A nonzero vector of `F_2^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GF2Point(u32);

impl GF2Point {
    pub fn new(value: u32, s: u32) -> Result<GF2Point, GeomError> {
        if value == 0 || s > MAX_DIM || value >> s != 0 {
            return Err(GeomError::BadPoints { s });
        }
        Ok(GF2Point(value))
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

/// A projective subspace: the nonzero points of a linear subspace.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjSubspace {
    mask: u128,
}

impl ProjSubspace {
    /// Span of `generators` minus the origin.
    pub fn span(generators: &[u32]) -> ProjSubspace {
        let mut pts: Vec<u32> = vec![0];
        for &g in generators {
            if pts.contains(&g) {
                continue;
            }
            let shifted: Vec<u32> = pts.iter().map(|&v| v ^ g).collect();
            pts.extend(shifted);
        }
        let mask = pts.iter().fold(0u128, |m, &v| m | 1 << v) & !1;
        ProjSubspace { mask }
    }

    pub fn mask(self) -> u128 {
        self.mask
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    /// Projective dimension: 0 point, 1 line, 2 plane.
    pub fn dim(self) -> u32 {
        (self.len() as u32 + 1).trailing_zeros() - 1
    }

    pub fn contains(self, v: u32) -> bool {
        v < 128 && self.mask >> v & 1 == 1
    }

    /// Points in increasing order.
    pub fn points(self) -> Vec<u32> {
        (1..128u32).filter(|&v| self.contains(v)).collect()
    }

    pub fn meet(self, other: ProjSubspace) -> u128 {
        self.mask & other.mask
    }

    /// Closed under addition (with the origin added back).
    pub fn is_subspace(self) -> bool {
        let pts = self.points();
        pts.iter()
            .all(|&a| pts.iter().all(|&b| a == b || self.contains(a ^ b)))
    }
}

impl fmt::Debug for ProjSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

fn check_triple(x: u32, y: u32, z: u32) -> Result<(), GeomError> {
    let s = MAX_DIM;
    if x == 0 || y == 0 || z == 0 || x == y || x == z || y == z || (x | y | z) >> s != 0 {
        return Err(GeomError::BadPoints { s });
    }
    Ok(())
}

/// `Π(x, y, z)`: the span of three distinct points minus the origin; a line
/// when `x ⊕ y ⊕ z = 0`, a plane otherwise.
pub fn projective_closure(x: u32, y: u32, z: u32) -> Result<ProjSubspace, GeomError> {
    check_triple(x, y, z)?;
    Ok(ProjSubspace::span(&[x, y, z]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleClass {
    /// `{x, y, x ⊕ y}`, a line of `PG(s-1, 2)`.
    Block,
    /// Not a line; carries the unique plane through the triple.
    PlaneTriple(ProjSubspace),
}

pub fn classify_triple(x: u32, y: u32, z: u32) -> Result<TripleClass, GeomError> {
    check_triple(x, y, z)?;
    Ok(if x ^ y ^ z == 0 {
        TripleClass::Block
    } else {
        TripleClass::PlaneTriple(ProjSubspace::span(&[x, y, z]))
    })
}

fn check_dim(s: u32, min: u32) -> Result<(), GeomError> {
    if s < min || s > MAX_DIM {
        return Err(GeomError::DimensionOutOfRange { s, min });
    }
    Ok(())
}

/// `PG(s-1, 2)` as a Steiner triple system on `2^s - 1` vertices; vertex
/// `i` is the vector `i + 1`.
pub fn build_pg(s: u32) -> Result<TripleSystem, GeomError> {
    check_dim(s, 2)?;
    let top = 1u32 << s;
    let mut blocks = Vec::new();
    for x in 1..top {
        for y in x + 1..top {
            let z = x ^ y;
            if z > y {
                blocks.push([x as usize - 1, y as usize - 1, z as usize - 1]);
            }
        }
    }
    Ok(TripleSystem::new(top as usize - 1, blocks))
}

/// Gaussian binomial `[s choose k]_2`.
pub fn gaussian_binomial(s: u32, k: u32) -> u64 {
    if k > s {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (1u128 << (s - i)) - 1;
        den *= (1u128 << (i + 1)) - 1;
    }
    (num / den) as u64
}

/// All projective planes of `F_2^s`, sorted by point mask.
pub fn enumerate_planes(s: u32) -> Result<Vec<ProjSubspace>, GeomError> {
    check_dim(s, 3)?;
    let top = 1u32 << s;
    let mut seen = BTreeSet::new();
    for x in 1..top {
        for y in x + 1..top {
            for z in y + 1..top {
                if x ^ y ^ z != 0 {
                    seen.insert(ProjSubspace::span(&[x, y, z]));
                }
            }
        }
    }
    let mut planes: Vec<ProjSubspace> = seen.into_iter().collect();
    planes.sort_by_key(|w| w.mask());
    Ok(planes)
}

/// `J_2(s, 3)`: projective planes, adjacent when they meet in a line.
#[derive(Debug, Clone)]
pub struct GrassmannGraph {
    pub s: u32,
    pub planes: Vec<ProjSubspace>,
    pub adjacency: Vec<Vec<usize>>,
}

impl GrassmannGraph {
    pub fn vertex_count(&self) -> usize {
        self.planes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Every triangle `i < j < k`.
    pub fn triangles(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        (0..self.vertex_count()).flat_map(move |i| {
            self.adjacency[i]
                .iter()
                .copied()
                .filter(move |&j| j > i)
                .flat_map(move |j| {
                    self.adjacency[j]
                        .iter()
                        .copied()
                        .filter(move |&k| k > j && self.adjacent(i, k))
                        .map(move |k| [i, j, k])
                })
        })
    }
}

pub fn build_grassmann(s: u32) -> Result<GrassmannGraph, GeomError> {
    let planes = enumerate_planes(s)?;
    let m = planes.len();
    let mut adjacency = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if planes[i].meet(planes[j]).count_ones() == 3 {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    Ok(GrassmannGraph { s, planes, adjacency })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleType {
    /// The three planes share exactly one point.
    PointType,
    /// The three planes share a line.
    LineType,
}

/// Types a triangle of `J_2(s, 3)` by its triple intersection.
pub fn triangle_type(w1: ProjSubspace, w2: ProjSubspace, w3: ProjSubspace) -> Result<TriangleType, GeomError> {
    let is_plane = |w: ProjSubspace| w.len() == 7;
    let meets_in_line = |a: ProjSubspace, b: ProjSubspace| a.meet(b).count_ones() == 3;
    if !(is_plane(w1) && is_plane(w2) && is_plane(w3))
        || !meets_in_line(w1, w2)
        || !meets_in_line(w1, w3)
        || !meets_in_line(w2, w3)
    {
        return Err(GeomError::NotATriangle(0, 1, 2));
    }
    match (w1.meet(w2) & w3.mask()).count_ones() {
        1 => Ok(TriangleType::PointType),
        3 => Ok(TriangleType::LineType),
        _ => Err(GeomError::NotATriangle(0, 1, 2)),
    }
}

/// Maximal independent set from a seeded random vertex order, sorted.
pub fn greedy_independent_set(j: &GrassmannGraph, order_seed: u64) -> Vec<usize> {
    let m = j.vertex_count();
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(&mut seeded_rng(order_seed));
    let mut blocked = vec![false; m];
    let mut chosen = Vec::new();
    for v in order {
        if blocked[v] {
            continue;
        }
        chosen.push(v);
        blocked[v] = true;
        for &u in &j.adjacency[v] {
            blocked[u] = true;
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Default number of greedy restarts.
pub const DEFAULT_RESTARTS: usize = 32;

/// Largest of `restarts` greedy runs with seeds `seed, seed+1, ...`; the
/// earliest wins ties.
pub fn best_independent_set(j: &GrassmannGraph, seed: u64, restarts: usize) -> Vec<usize> {
    let mut best = Vec::new();
    for r in 0..restarts.max(1) as u64 {
        let cand = greedy_independent_set(j, seed.wrapping_add(r));
        if cand.len() > best.len() {
            best = cand;
        }
    }
    best
}

/// Distinct colors `0..t` on the independent planes, color `t` on all others.
pub fn good_coloring_from_independent_set(j: &GrassmannGraph, indep: &[usize]) -> Result<Vec<u32>, GeomError> {
    let m = j.vertex_count();
    for (a, &u) in indep.iter().enumerate() {
        if u >= m {
            return Err(GeomError::IndexOutOfRange(u));
        }
        for &v in &indep[..a] {
            if u == v || j.adjacent(u, v) {
                return Err(GeomError::NotIndependent(v, u));
            }
        }
    }
    let background = indep.len() as u32;
    let mut phi = vec![background; m];
    for (c, &u) in indep.iter().enumerate() {
        phi[u] = c as u32;
    }
    Ok(phi)
}

/// Number of distinct colors of a plane coloring.
pub fn class_count(phi: &[u32]) -> usize {
    phi.iter().collect::<BTreeSet<_>>().len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoodCheck {
    pub good: bool,
    /// A point-type triangle with three distinct colors.
    pub witness: Option<[usize; 3]>,
}

/// Scans all triangles for a point-type triangle with pairwise distinct colors.
pub fn is_good_coloring(j: &GrassmannGraph, phi: &[u32]) -> Result<GoodCheck, GeomError> {
    if phi.len() != j.vertex_count() {
        return Err(GeomError::PartialColoring {
            expected: j.vertex_count(),
            found: phi.len(),
        });
    }
    for [a, b, c] in j.triangles() {
        let (ca, cb, cc) = (phi[a], phi[b], phi[c]);
        if ca == cb || ca == cc || cb == cc {
            continue;
        }
        let (wa, wb, wc) = (j.planes[a], j.planes[b], j.planes[c]);
        if triangle_type(wa, wb, wc).map_err(|_| GeomError::NotATriangle(a, b, c))? == TriangleType::PointType {
            return Ok(GoodCheck {
                good: false,
                witness: Some([a, b, c]),
            });
        }
    }
    Ok(GoodCheck {
        good: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1: u32 = 1;
    const E2: u32 = 2;
    const E3: u32 = 4;
    const E4: u32 = 8;
    const E5: u32 = 16;

    #[test]
    fn closure_examples() {
        let line = projective_closure(1, 2, 3).unwrap();
        assert_eq!(line.points(), vec![1, 2, 3]);
        assert_eq!(line.dim(), 1);
        let plane = projective_closure(1, 2, 4).unwrap();
        assert_eq!(plane.points(), (1..=7).collect::<Vec<_>>());
        assert_eq!(plane.dim(), 2);
        let p4 = projective_closure(1, 2, 8).unwrap();
        assert_eq!(p4.points(), vec![1, 2, 3, 8, 9, 10, 11]);
        assert!(projective_closure(1, 1, 2).is_err());
        assert!(projective_closure(0, 1, 2).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_triple(1, 2, 3), Ok(TripleClass::Block));
        assert_eq!(classify_triple(3, 5, 6), Ok(TripleClass::Block));
        match classify_triple(1, 2, 4).unwrap() {
            TripleClass::PlaneTriple(w) => assert_eq!(w.len(), 7),
            TripleClass::Block => panic!("1,2,4 is independent"),
        }
    }

    #[test]
    fn pg_examples() {
        assert_eq!(build_pg(2).unwrap().len(), 1);
        let fano = build_pg(3).unwrap();
        assert_eq!((fano.n, fano.len()), (7, 7));
        assert!(fano.is_steiner());
        let pg4 = build_pg(4).unwrap();
        assert_eq!((pg4.n, pg4.len()), (15, 35));
        assert!(pg4.is_steiner());
        assert!(build_pg(1).is_err());
    }

    #[test]
    fn plane_counts() {
        assert_eq!(enumerate_planes(3).unwrap().len(), 1);
        assert_eq!(enumerate_planes(4).unwrap().len(), 15);
        assert_eq!(enumerate_planes(5).unwrap().len(), 155);
        assert!(enumerate_planes(2).is_err());
        for w in enumerate_planes(5).unwrap() {
            assert!(w.is_subspace());
            assert_eq!(w.dim(), 2);
        }
    }

    #[test]
    fn grassmann_examples() {
        let j3 = build_grassmann(3).unwrap();
        assert_eq!((j3.vertex_count(), j3.edge_count()), (1, 0));
        let j4 = build_grassmann(4).unwrap();
        assert_eq!(j4.edge_count(), 15 * 14 / 2);
        let j5 = build_grassmann(5).unwrap();
        assert_eq!(j5.vertex_count(), 155);
        for i in 0..155 {
            assert!(!j5.adjacent(i, i));
            for k in 0..155 {
                if i != k {
                    let meet = j5.planes[i].meet(j5.planes[k]).count_ones();
                    assert!(meet == 1 || meet == 3);
                    assert_eq!(j5.adjacent(i, k), meet == 3);
                    assert_eq!(j5.adjacent(i, k), j5.adjacent(k, i));
                }
            }
        }
    }

    #[test]
    fn triangle_type_examples() {
        let a = ProjSubspace::span(&[E1, E2, E3]);
        let b = ProjSubspace::span(&[E1, E2, E4]);
        let c = ProjSubspace::span(&[E1, E2, E5]);
        assert_eq!(triangle_type(a, b, c), Ok(TriangleType::LineType));
        // three lines through e1: <e1,e2>, <e1,e3>, <e1,e4>
        let x = ProjSubspace::span(&[E1, E2, E3]);
        let y = ProjSubspace::span(&[E1, E2, E4]);
        let z = ProjSubspace::span(&[E1, E3 ^ E4, E2 ^ E3]);
        assert_eq!(x.meet(z).count_ones(), 3);
        assert_eq!(triangle_type(x, y, z), Ok(TriangleType::PointType));
        let far = ProjSubspace::span(&[E3, E4, E5]);
        assert!(triangle_type(a, b, far).is_err());
    }

    #[test]
    fn s4_triangles_with_point_meet_are_point_type() {
        let j = build_grassmann(4).unwrap();
        let mut point = 0;
        for [a, b, c] in j.triangles() {
            let (wa, wb, wc) = (j.planes[a], j.planes[b], j.planes[c]);
            let t = triangle_type(wa, wb, wc).unwrap();
            if (wa.meet(wb) & wc.mask()).count_ones() == 1 {
                assert_eq!(t, TriangleType::PointType);
                point += 1;
            }
        }
        assert!(point > 0);
    }

    #[test]
    fn independent_sets() {
        let j3 = build_grassmann(3).unwrap();
        assert_eq!(greedy_independent_set(&j3, 0), vec![0]);
        let j4 = build_grassmann(4).unwrap();
        assert_eq!(greedy_independent_set(&j4, 5).len(), 1);
        let j5 = build_grassmann(5).unwrap();
        let ind = best_independent_set(&j5, 0, DEFAULT_RESTARTS);
        assert!(ind.len() >= 2);
        for (i, &u) in ind.iter().enumerate() {
            for &v in &ind[..i] {
                assert!(!j5.adjacent(u, v));
            }
        }
        // maximality
        for v in 0..155 {
            assert!(ind.contains(&v) || ind.iter().any(|&u| j5.adjacent(u, v)));
        }
    }

    #[test]
    fn good_colorings() {
        let j3 = build_grassmann(3).unwrap();
        let phi = good_coloring_from_independent_set(&j3, &[0]).unwrap();
        assert_eq!(class_count(&phi), 1);
        let j4 = build_grassmann(4).unwrap();
        let phi = good_coloring_from_independent_set(&j4, &[3]).unwrap();
        assert_eq!(class_count(&phi), 2);
        assert!(is_good_coloring(&j4, &phi).unwrap().good);
        assert_eq!(
            good_coloring_from_independent_set(&j4, &[0, 1]),
            Err(GeomError::NotIndependent(0, 1))
        );

        let j5 = build_grassmann(5).unwrap();
        let ind = best_independent_set(&j5, 0, 4);
        let phi = good_coloring_from_independent_set(&j5, &ind).unwrap();
        assert_eq!(class_count(&phi), ind.len() + 1);
        assert!(is_good_coloring(&j5, &phi).unwrap().good);

        let two: Vec<u32> = (0..155).map(|i| (i % 2) as u32).collect();
        assert!(is_good_coloring(&j5, &two).unwrap().good);

        let all: Vec<u32> = (0..155).collect();
        let check = is_good_coloring(&j5, &all).unwrap();
        assert!(!check.good);
        let [a, b, c] = check.witness.unwrap();
        assert_eq!(
            triangle_type(j5.planes[a], j5.planes[b], j5.planes[c]),
            Ok(TriangleType::PointType)
        );
        assert_eq!(
            is_good_coloring(&j5, &all[..10]),
            Err(GeomError::PartialColoring { expected: 155, found: 10 })
        );
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(3, 3), 1);
        assert_eq!(gaussian_binomial(4, 3), 15);
        assert_eq!(gaussian_binomial(5, 3), 155);
        assert_eq!(gaussian_binomial(6, 3), 1395);
    }
}
