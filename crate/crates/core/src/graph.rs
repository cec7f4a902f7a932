use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::hypercore::{Coloring, HypercoreError};

/// An edge-colored complete graph.
///
/// Vertices are indexed `0..n` locally and carry an external label (for a
/// link graph, the host vertex it came from). Colors are raw ids and are not
/// renumbered, so a link graph keeps the colors of its host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    labels: Vec<usize>,
    colors: Vec<u32>,
}

#[inline]
fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

impl ColoredGraph {
    /// Complete graph on `0..n`, every edge colored `fill`.
    pub fn new(n: usize, fill: u32) -> ColoredGraph {
        ColoredGraph::with_labels((0..n).collect(), fill)
    }

    pub fn with_labels(labels: Vec<usize>, fill: u32) -> ColoredGraph {
        let n = labels.len();
        ColoredGraph {
            labels,
            colors: vec![fill; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn color(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i != j);
        self.colors[pair_index(i, j)]
    }

    pub fn set_color(&mut self, i: usize, j: usize, c: u32) {
        debug_assert!(i != j);
        self.colors[pair_index(i, j)] = c;
    }

    /// Pair colors in colex order of local pairs.
    pub fn pair_colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn distinct_colors(&self) -> BTreeSet<u32> {
        self.colors.iter().copied().collect()
    }

    pub fn color_count(&self) -> usize {
        self.distinct_colors().len()
    }

    /// First triangle (lexicographic in local indices) whose three edges
    /// carry pairwise distinct colors, reported by label.
    pub fn has_rainbow_triangle(&self) -> Option<[usize; 3]> {
        let n = self.n();
        for a in 0..n {
            for b in a + 1..n {
                let ab = self.color(a, b);
                for c in b + 1..n {
                    let ac = self.color(a, c);
                    if ac == ab {
                        continue;
                    }
                    let bc = self.color(b, c);
                    if bc != ab && bc != ac {
                        return Some([self.labels[a], self.labels[b], self.labels[c]]);
                    }
                }
            }
        }
        None
    }

    /// Colors whose class contains a monochromatic triangle.
    pub fn colors_with_monochromatic_triangle(&self) -> BTreeSet<u32> {
        let n = self.n();
        let mut out = BTreeSet::new();
        for a in 0..n {
            for b in a + 1..n {
                let ab = self.color(a, b);
                if out.contains(&ab) {
                    continue;
                }
                for c in b + 1..n {
                    if self.color(a, c) == ab && self.color(b, c) == ab {
                        out.insert(ab);
                        break;
                    }
                }
            }
        }
        out
    }

    /// The same graph as a normalized 2-uniform [`Coloring`] on `0..n`.
    pub fn to_coloring(&self) -> Result<Coloring, HypercoreError> {
        Coloring::new(self.n(), 2, &self.colors)
    }

    pub fn from_coloring(c: &Coloring) -> Option<ColoredGraph> {
        if c.p() != 2 {
            return None;
        }
        Some(ColoredGraph {
            labels: (0..c.n()).collect(),
            colors: c.assignments().to_vec(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rainbow_triangle_examples() {
        let mut g = ColoredGraph::new(3, 0);
        assert_eq!(g.has_rainbow_triangle(), None);
        g.set_color(0, 1, 1);
        assert_eq!(g.has_rainbow_triangle(), None);
        g.set_color(1, 2, 2);
        assert_eq!(g.has_rainbow_triangle(), Some([0, 1, 2]));
    }

    #[test]
    fn pair_index_matches_colex_edges() {
        let g = ColoredGraph::new(6, 0);
        for (r, e) in crate::hypercore::edges(6, 2).enumerate() {
            let v = e.to_vec();
            assert_eq!(pair_index(v[0], v[1]), r);
            assert_eq!(pair_index(v[1], v[0]), r);
        }
        assert_eq!(g.pair_colors().len(), 15);
    }

    #[test]
    fn coloring_round_trip() {
        let mut g = ColoredGraph::new(4, 3);
        g.set_color(0, 3, 8);
        let c = g.to_coloring().unwrap();
        assert_eq!(c.k(), 2);
        let back = ColoredGraph::from_coloring(&c).unwrap();
        assert_eq!(back.color(0, 3), 1);
        assert_eq!(back.color(1, 2), 0);
    }
}
