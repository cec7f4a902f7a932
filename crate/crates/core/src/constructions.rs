//! Lower-bound colorings and a generator of Gallai colorings.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::designs::{self, DesignError};
use crate::gf2geom::{self, GeomError, GrassmannGraph, ProjSubspace};
use crate::graph::ColoredGraph;
use crate::hypercore::{Coloring, Edge, HypercoreError};
use crate::seeded_rng;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("parameters out of range: {0}")]
    Range(&'static str),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Hypercore(#[from] HypercoreError),
}

/// `floor(n/p)` consecutive vertex blocks `{ip, ..., ip+p-1}` get their own
/// colors; every other edge shares one background color. Uses
/// `1 + floor(n/p)` colors.
pub fn build_cancellative_extremal(n: usize, p: usize) -> Result<Coloring, ConstructionError> {
    if p < 3 || n < p + 1 {
        return Err(ConstructionError::Range("need p >= 3 and n >= p + 1"));
    }
    let parts = n / p;
    let block = (1u64 << p) - 1;
    let background = parts as u32;
    Ok(Coloring::from_fn(n, p, |e| {
        let low = e.mask().trailing_zeros() as usize;
        if low.is_multiple_of(p) && low / p < parts && e.mask() == block << low {
            (low / p) as u32
        } else {
            background
        }
    })?)
}

/// Colors `blocks` with distinct colors and everything else with `background`.
fn block_coloring(n: usize, blocks: &[[usize; 3]]) -> Result<Coloring, HypercoreError> {
    let mut ids = alloc::vec![u32::MAX; crate::hypercore::binomial(n, 3) as usize];
    for (i, b) in blocks.iter().enumerate() {
        let e = Edge::new(b, n)?;
        ids[e.rank() as usize] = i as u32;
    }
    let background = blocks.len() as u32;
    for id in ids.iter_mut().filter(|c| **c == u32::MAX) {
        *id = background;
    }
    Coloring::new(n, 3, &ids)
}

/// A maximum partial Steiner triple system with rainbow blocks and one extra
/// color elsewhere: `m(n) + 1` colors.
pub fn build_mpsts_coloring(n: usize, seed: u64) -> Result<Coloring, ConstructionError> {
    if n < 4 {
        return Err(ConstructionError::Range("need n >= 4"));
    }
    let system = designs::build_mpsts(n, seed, designs::DEFAULT_ITER_CAP)?;
    Ok(block_coloring(n, &system.blocks)?)
}

/// The projective coloring of `K_{2^s-1}^(3)` together with the pieces it
/// was built from.
#[derive(Debug, Clone)]
pub struct PgColoring {
    pub s: u32,
    pub coloring: Coloring,
    pub grassmann: GrassmannGraph,
    pub independent_set: Vec<usize>,
    /// Good coloring of the planes.
    pub plane_colors: Vec<u32>,
    /// Number of plane color classes (`r`).
    pub classes: usize,
}

/// Lines of `PG(s-1, 2)` get distinct block colors; a non-line triple gets
/// the background color of the class of its plane `Π(x, y, z)` under the
/// independent-set good coloring. Vertex `i` is the vector `i + 1`.
pub fn build_pg_coloring(s: u32, restarts: usize) -> Result<PgColoring, ConstructionError> {
    build_pg_coloring_seeded(s, 0, restarts)
}

/// [`build_pg_coloring`] with an explicit seed for the independent-set search.
pub fn build_pg_coloring_seeded(s: u32, seed: u64, restarts: usize) -> Result<PgColoring, ConstructionError> {
    if !(3..=6).contains(&s) {
        return Err(ConstructionError::Range("need 3 <= s <= 6"));
    }
    let n = (1usize << s) - 1;
    let j = gf2geom::build_grassmann(s)?;
    let independent_set = gf2geom::best_independent_set(&j, seed, restarts);
    let plane_colors = gf2geom::good_coloring_from_independent_set(&j, &independent_set)?;
    let classes = gf2geom::class_count(&plane_colors);
    let lines = gf2geom::build_pg(s)?;

    let plane_index = |w: ProjSubspace| {
        j.planes
            .binary_search_by_key(&w.mask(), |p| p.mask())
            .expect("closure of a non-line triple is an enumerated plane")
    };
    let line_count = lines.len() as u32;
    let mut ids = alloc::vec![u32::MAX; crate::hypercore::binomial(n, 3) as usize];
    for (i, b) in lines.blocks.iter().enumerate() {
        ids[Edge::new(b, n)?.rank() as usize] = i as u32;
    }
    for (r, e) in crate::hypercore::edges(n, 3).enumerate() {
        if ids[r] != u32::MAX {
            continue;
        }
        let v: Vec<u32> = e.vertices().map(|x| x as u32 + 1).collect();
        match gf2geom::classify_triple(v[0], v[1], v[2])? {
            gf2geom::TripleClass::PlaneTriple(w) => {
                ids[r] = line_count + plane_colors[plane_index(w)];
            }
            gf2geom::TripleClass::Block => unreachable!("lines are colored first"),
        }
    }
    Ok(PgColoring {
        s,
        coloring: Coloring::new(n, 3, &ids)?,
        grassmann: j,
        independent_set,
        plane_colors,
        classes,
    })
}

/// Parameters of [`generate_gallai`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GallaiConfig {
    /// Largest number of parts in one substitution step (at least 2).
    pub max_parts: usize,
    /// Probability of splitting into exactly two parts.
    pub two_part_bias: f64,
    /// Probability of reusing an existing color instead of a fresh one.
    pub reuse_bias: f64,
}

impl Default for GallaiConfig {
    fn default() -> GallaiConfig {
        GallaiConfig {
            max_parts: 4,
            two_part_bias: 0.5,
            reuse_bias: 0.5,
        }
    }
}

/// Random edge-coloring of `K_n` without rainbow triangles, built by
/// recursive substitution: split the vertices into parts, join every pair
/// of parts in one color using at most two colors overall, then color each
/// part recursively. Colors are raw ids `0..`.
pub fn generate_gallai(n: usize, seed: u64, config: GallaiConfig) -> ColoredGraph {
    let mut rng = seeded_rng(seed);
    let mut g = ColoredGraph::new(n, 0);
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(&mut rng);
    let mut palette = 0u32;
    substitute(&mut g, &verts, &config, &mut rng, &mut palette);
    g
}

fn pick_color(rng: &mut impl Rng, palette: &mut u32, reuse_bias: f64) -> u32 {
    if *palette > 0 && rng.random_bool(reuse_bias) {
        rng.random_range(0..*palette)
    } else {
        *palette += 1;
        *palette - 1
    }
}

fn substitute(g: &mut ColoredGraph, verts: &[usize], cfg: &GallaiConfig, rng: &mut impl Rng, palette: &mut u32) {
    let len = verts.len();
    if len < 2 {
        return;
    }
    let most = cfg.max_parts.max(2).min(len);
    let t = if most == 2 || rng.random_bool(cfg.two_part_bias) {
        2
    } else {
        rng.random_range(2..=most)
    };
    // t - 1 distinct cut points in 1..len
    let mut cuts: Vec<usize> = (1..len).collect();
    cuts.shuffle(rng);
    cuts.truncate(t - 1);
    cuts.sort_unstable();
    let mut bounds = alloc::vec![0];
    bounds.extend(cuts);
    bounds.push(len);
    let parts: Vec<&[usize]> = bounds.windows(2).map(|w| &verts[w[0]..w[1]]).collect();

    let c1 = pick_color(rng, palette, cfg.reuse_bias);
    let c2 = pick_color(rng, palette, cfg.reuse_bias);
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let c = if rng.random_bool(0.5) { c1 } else { c2 };
            for &u in parts[i] {
                for &v in parts[j] {
                    g.set_color(u, v, c);
                }
            }
        }
    }
    for part in parts {
        substitute(g, part, cfg, rng, palette);
    }
}
