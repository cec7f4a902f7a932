//! Closed-form bounds, the vertex/color accounting for 3-graph colorings,
//! and a checker for the extremal rainbow-cancellative structure.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::designs::{self, DesignError};
use crate::graph::ColoredGraph;
use crate::hypercore::{binomial, subsets, Coloring, Edge};
use crate::patterns::{self, Family, PatternError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagnosticsError {
    #[error("parameters out of range: {0}")]
    Range(&'static str),
    #[error("coloring has a rainbow triangle on {0:?}")]
    RainbowTriangle([usize; 3]),
    #[error("accounting needs a 3-uniform coloring, got p={0}")]
    Uniformity(usize),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// `1 + floor(n/p)`.
pub fn ar_cancellative_formula(n: usize, p: usize) -> Result<usize, DiagnosticsError> {
    if p < 3 || n < p + 1 {
        return Err(DiagnosticsError::Range("need p >= 3 and n >= p + 1"));
    }
    Ok(1 + n / p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub lower: usize,
    pub upper: usize,
}

impl Bounds {
    pub fn contains(&self, value: usize) -> bool {
        self.lower <= value && value <= self.upper
    }
}

/// Known bracket for the largest rainbow-F4-free color count on `K_n^(3)`.
pub fn f4_bounds(n: usize) -> Result<Bounds, DiagnosticsError> {
    if n < 4 {
        return Err(DiagnosticsError::Range("need n >= 4"));
    }
    let packing = designs::schonheim(n)? + 1;
    let lower = if n >= 5 { packing.max(n - 2) } else { packing };
    let upper = (5 * n * n - 8 * n) / 21;
    Ok(Bounds { lower, upper })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GallaiDefect {
    pub c: usize,
    pub rho: usize,
    pub bound_ok: bool,
}

/// Colors `c` and colors owning a monochromatic triangle `rho` of a graph
/// without rainbow triangles, with the check `c + rho <= |V| - 1`.
pub fn gallai_defect(g: &ColoredGraph) -> Result<GallaiDefect, DiagnosticsError> {
    if let Some(t) = g.has_rainbow_triangle() {
        return Err(DiagnosticsError::RainbowTriangle(t));
    }
    let c = g.color_count();
    let rho = g.colors_with_monochromatic_triangle().len();
    let bound_ok = c + rho < g.n().max(1);
    Ok(GallaiDefect { c, rho, bound_ok })
}

/// Aggregates over a 3-graph coloring.
///
/// `i` sums, over colors, the number of vertices touched by that color.
/// `rho` sums, over vertices `v`, the number of colors with a monochromatic
/// triangle in the link of `v`. `s_singleton` counts triples whose color is
/// used once and `ell` counts the pairs covered by none of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct F4Accounting {
    pub n: usize,
    pub k: usize,
    pub i: usize,
    pub rho: usize,
    pub s_singleton: usize,
    pub ell: usize,
    pub f4_free: bool,
    /// `3 s + ell = C(n, 2)`; holds exactly when the singleton triples pack.
    pub leave_identity: bool,
    /// `i + rho <= n (n - 2)`.
    pub incidence_bound: bool,
    /// `k <= floor((5 n^2 - 8 n) / 21)`.
    pub color_bound: bool,
}

impl F4Accounting {
    /// Invariants that must hold for this input: all three when the input is
    /// rainbow-F4-free, none otherwise.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.f4_free {
            if !self.leave_identity {
                out.push("leave_identity");
            }
            if !self.incidence_bound {
                out.push("incidence_bound");
            }
            if !self.color_bound {
                out.push("color_bound");
            }
        }
        out
    }
}

pub fn f4_accounting(c: &Coloring) -> Result<F4Accounting, DiagnosticsError> {
    if c.p() != 3 {
        return Err(DiagnosticsError::Uniformity(c.p()));
    }
    let n = c.n();
    let k = c.k() as usize;

    let mut touched = vec![0u64; k];
    for (e, col) in c.iter() {
        touched[col as usize] |= e.mask();
    }
    let i = touched.iter().map(|m| m.count_ones() as usize).sum();

    let mut rho = 0;
    for v in 0..n {
        rho += patterns::link_graph(c, v)?.colors_with_monochromatic_triangle().len();
    }

    let sizes = c.class_sizes();
    let mut covered = vec![false; n * n];
    let mut s_singleton = 0;
    for (e, col) in c.iter() {
        if sizes[col as usize] != 1 {
            continue;
        }
        s_singleton += 1;
        let v = e.to_vec();
        for (a, b) in [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])] {
            covered[a * n + b] = true;
        }
    }
    let pairs = binomial(n, 2) as usize;
    let ell = pairs - covered.iter().filter(|x| **x).count();

    let f4_free = patterns::find_rainbow_p3(c, Family::F4)?.is_none();
    let upper = (5 * n * n).saturating_sub(8 * n) / 21;
    Ok(F4Accounting {
        n,
        k,
        i,
        rho,
        s_singleton,
        ell,
        f4_free,
        leave_identity: 3 * s_singleton + ell == pairs,
        incidence_bound: i + rho <= n * n.saturating_sub(2),
        color_bound: k <= upper,
    })
}

/// Search nodes allowed before [`check_extremal_structure`] gives up.
pub const DEFAULT_STRUCTURE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtremalStatus {
    /// `matching` is `floor(n/p)` disjoint edges with distinct colors whose
    /// union is `u`; every other edge inside `u` has color `background`.
    Found {
        u: Vec<usize>,
        matching: Vec<Edge>,
        background: u32,
    },
    Absent,
    /// The node cap was hit before the search finished.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalCheck {
    pub status: ExtremalStatus,
    pub nodes: u64,
}

impl ExtremalCheck {
    pub fn ok(&self) -> bool {
        matches!(self.status, ExtremalStatus::Found { .. })
    }
}

pub fn check_extremal_structure(c: &Coloring) -> ExtremalCheck {
    check_extremal_structure_with_cap(c, DEFAULT_STRUCTURE_CAP)
}

/// Tries each color as the background, largest class first, and searches
/// the matchings among the remaining edges. A partial matching is dropped as
/// soon as some other edge inside its union misses the background color.
pub fn check_extremal_structure_with_cap(c: &Coloring, cap: u64) -> ExtremalCheck {
    let t = c.n() / c.p();
    let sizes = c.class_sizes();
    let mut order: Vec<u32> = (0..c.k()).collect();
    order.sort_by_key(|&b| (core::cmp::Reverse(sizes[b as usize]), b));

    let mut nodes = 0u64;
    let mut capped = false;
    for beta in order {
        let candidates: Vec<(Edge, u32)> = c.iter().filter(|&(_, col)| col != beta).collect();
        let mut search = MatchingSearch {
            c,
            beta,
            t,
            candidates: &candidates,
            chosen: Vec::with_capacity(t),
            nodes: 0,
            cap: cap.saturating_sub(nodes),
            capped: false,
        };
        let found = search.dfs(0, 0);
        nodes += search.nodes;
        if found {
            let union = search.chosen.iter().fold(0u64, |m, &(e, _)| m | e.mask());
            return ExtremalCheck {
                status: ExtremalStatus::Found {
                    u: Edge::from_mask(union).to_vec(),
                    matching: search.chosen.iter().map(|&(e, _)| e).collect(),
                    background: beta,
                },
                nodes,
            };
        }
        if search.capped {
            capped = true;
            break;
        }
    }
    let status = if capped {
        ExtremalStatus::Inconclusive
    } else {
        ExtremalStatus::Absent
    };
    ExtremalCheck { status, nodes }
}

struct MatchingSearch<'a> {
    c: &'a Coloring,
    beta: u32,
    t: usize,
    candidates: &'a [(Edge, u32)],
    chosen: Vec<(Edge, u32)>,
    nodes: u64,
    cap: u64,
    capped: bool,
}

impl MatchingSearch<'_> {
    fn dfs(&mut self, start: usize, union: u64) -> bool {
        if self.chosen.len() == self.t {
            return true;
        }
        for idx in start..self.candidates.len() {
            self.nodes += 1;
            if self.nodes > self.cap {
                self.capped = true;
                return false;
            }
            let (e, col) = self.candidates[idx];
            if e.mask() & union != 0 || self.chosen.iter().any(|&(_, c)| c == col) {
                continue;
            }
            self.chosen.push((e, col));
            let grown = union | e.mask();
            if self.background_holds(grown) && self.dfs(idx + 1, grown) {
                return true;
            }
            self.chosen.pop();
            if self.capped {
                return false;
            }
        }
        false
    }

    fn background_holds(&self, union: u64) -> bool {
        let p = self.c.p();
        subsets(union, p).all(|m| {
            let e = Edge::from_mask(m);
            self.c.color(e) == self.beta || self.chosen.iter().any(|&(x, _)| x == e)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_cancellative_extremal, build_mpsts_coloring, build_pg_coloring};

    #[test]
    fn formula_examples() {
        assert_eq!(ar_cancellative_formula(7, 3).unwrap(), 3);
        assert_eq!(ar_cancellative_formula(8, 4).unwrap(), 3);
        assert_eq!(ar_cancellative_formula(100, 3).unwrap(), 34);
        assert!(ar_cancellative_formula(3, 3).is_err());
        assert!(ar_cancellative_formula(9, 2).is_err());
    }

    #[test]
    fn f4_bound_examples() {
        assert_eq!(f4_bounds(7).unwrap(), Bounds { lower: 8, upper: 9 });
        assert_eq!(f4_bounds(5).unwrap(), Bounds { lower: 3, upper: 4 });
        assert_eq!(f4_bounds(4).unwrap(), Bounds { lower: 2, upper: 2 });
        assert!(f4_bounds(3).is_err());
    }

    #[test]
    fn gallai_examples() {
        let mono = ColoredGraph::new(4, 7);
        assert_eq!(
            gallai_defect(&mono).unwrap(),
            GallaiDefect { c: 1, rho: 1, bound_ok: true }
        );
        let mut two = ColoredGraph::new(3, 0);
        two.set_color(1, 2, 1);
        assert_eq!(
            gallai_defect(&two).unwrap(),
            GallaiDefect { c: 2, rho: 0, bound_ok: true }
        );
        let mut rainbow = ColoredGraph::new(3, 0);
        rainbow.set_color(0, 2, 1);
        rainbow.set_color(1, 2, 2);
        assert_eq!(gallai_defect(&rainbow), Err(DiagnosticsError::RainbowTriangle([0, 1, 2])));
    }

    #[test]
    fn accounting_examples() {
        let mono = f4_accounting(&Coloring::monochromatic(5, 3).unwrap()).unwrap();
        assert_eq!((mono.s_singleton, mono.ell, mono.k), (0, 10, 1));
        assert!(mono.leave_identity);

        let m7 = f4_accounting(&build_mpsts_coloring(7, 0).unwrap()).unwrap();
        assert_eq!((m7.s_singleton, m7.ell), (7, 0));
        assert!(m7.i + m7.rho <= 35);
        assert!(m7.violations().is_empty());

        let pg = f4_accounting(&build_pg_coloring(3, 4).unwrap().coloring).unwrap();
        assert_eq!((pg.s_singleton, pg.ell, pg.k), (7, 0, 8));

        let rainbow = f4_accounting(&Coloring::rainbow(4, 3).unwrap()).unwrap();
        assert!(!rainbow.f4_free);
        assert!(!rainbow.leave_identity);
        assert!(rainbow.violations().is_empty());

        assert_eq!(
            f4_accounting(&Coloring::monochromatic(5, 4).unwrap()),
            Err(DiagnosticsError::Uniformity(4))
        );
    }

    #[test]
    fn structure_examples() {
        let c = build_cancellative_extremal(7, 3).unwrap();
        match check_extremal_structure(&c).status {
            ExtremalStatus::Found { u, .. } => assert_eq!(u, [0, 1, 2, 3, 4, 5]),
            other => panic!("{other:?}"),
        }
        let mono = Coloring::monochromatic(7, 3).unwrap();
        assert_eq!(check_extremal_structure(&mono).status, ExtremalStatus::Absent);
        let rainbow = Coloring::rainbow(7, 3).unwrap();
        assert_eq!(check_extremal_structure(&rainbow).status, ExtremalStatus::Absent);
        assert_eq!(
            check_extremal_structure_with_cap(&rainbow, 5).status,
            ExtremalStatus::Inconclusive
        );
    }
}
