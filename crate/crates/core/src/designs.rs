//! Triple systems: Steiner triple systems, maximum partial Steiner triple
//! systems and their leave graphs.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::seeded_rng;

/// Three ascending vertex ids.
pub type Block = [usize; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("order {0} is too small (need n >= 3)")]
    TooSmall(usize),
    #[error("no STS({0}) exists: a Steiner triple system needs n ≡ 1 or 3 (mod 6)")]
    NoSteinerSystem(usize),
    #[error("hill-climbing stopped at {achieved} blocks, target {target} (suboptimal)")]
    Suboptimal {
        achieved: usize,
        target: usize,
        system: TripleSystem,
    },
    #[error("not a partial Steiner triple system: pair {0:?} is covered twice")]
    RepeatedPair((usize, usize)),
}

/// A vertex count plus a list of blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSystem {
    pub n: usize,
    pub blocks: Vec<Block>,
}

impl TripleSystem {
    /// Sorts each block and the block list.
    pub fn new(n: usize, blocks: impl IntoIterator<Item = Block>) -> TripleSystem {
        let mut blocks: Vec<Block> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_unstable();
        TripleSystem { n, blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Every pair covered exactly once.
    pub fn is_steiner(&self) -> bool {
        validate_psts(self).valid && 3 * self.blocks.len() == self.n * (self.n - 1) / 2
    }
}

/// Result of [`validate_psts`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PstsCheck {
    pub valid: bool,
    pub offending_pair: Option<(usize, usize)>,
}

/// Schönheim's packing number `m(n)`, the size of a maximum partial Steiner
/// triple system of order `n`.
pub fn schonheim(n: usize) -> Result<usize, DesignError> {
    if n < 3 {
        return Err(DesignError::TooSmall(n));
    }
    Ok(match n % 6 {
        0 | 2 => n * (n - 2) / 6,
        1 | 3 => n * (n - 1) / 6,
        4 => (n * n - 2 * n - 2) / 6,
        _ => (n * n - n - 8) / 6,
    })
}

/// First pair covered by two blocks, if any. Out-of-range or degenerate
/// blocks are reported through their first bad pair as well.
pub fn validate_psts(t: &TripleSystem) -> PstsCheck {
    let n = t.n;
    let mut seen = vec![false; n * n];
    for b in &t.blocks {
        for (x, y) in [(b[0], b[1]), (b[0], b[2]), (b[1], b[2])] {
            let (x, y) = (x.min(y), x.max(y));
            if x == y || y >= n || seen[x * n + y] {
                return PstsCheck {
                    valid: false,
                    offending_pair: Some((x, y)),
                };
            }
            seen[x * n + y] = true;
        }
    }
    PstsCheck {
        valid: true,
        offending_pair: None,
    }
}

/// Uncovered pairs of a partial Steiner triple system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeaveGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn leave_graph(t: &TripleSystem) -> Result<LeaveGraph, DesignError> {
    let check = validate_psts(t);
    if let Some(pair) = check.offending_pair {
        return Err(DesignError::RepeatedPair(pair));
    }
    let n = t.n;
    let mut covered = vec![false; n * n];
    for b in &t.blocks {
        for (x, y) in [(b[0], b[1]), (b[0], b[2]), (b[1], b[2])] {
            covered[x * n + y] = true;
        }
    }
    let edges = (0..n)
        .flat_map(|y| (0..y).map(move |x| (x, y)))
        .filter(|&(x, y)| !covered[x * n + y])
        .collect();
    Ok(LeaveGraph { n, edges })
}

/// Bose construction for `n = 3m`, `m` odd: points `(x, i)` in
/// `Z_m × Z_3` encoded as `x + m*i`, with the idempotent commutative
/// quasigroup `x∘y = (x + y)/2 mod m`.
fn bose(n: usize) -> Vec<Block> {
    let m = n / 3;
    let half = m.div_ceil(2); // inverse of 2 mod m
    let pt = |x: usize, i: usize| x + m * (i % 3);
    let op = |x: usize, y: usize| (x + y) * half % m;
    let mut blocks = Vec::with_capacity(n * (n - 1) / 6);
    for x in 0..m {
        blocks.push([pt(x, 0), pt(x, 1), pt(x, 2)]);
    }
    for x in 0..m {
        for y in x + 1..m {
            for i in 0..3 {
                blocks.push([pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// Skolem construction for `n = 6t + 1`: points `(x, i)` in `Z_{2t} × Z_3`
/// encoded as `x + 2t*i` plus `∞ = n - 1`, with the half-idempotent
/// commutative quasigroup obtained by relabeling the addition table of
/// `Z_{2t}` (`2j ↦ j`, `2j+1 ↦ t + j`).
fn skolem(n: usize) -> Vec<Block> {
    let t = (n - 1) / 6;
    let q = 2 * t;
    let inf = n - 1;
    let pt = |x: usize, i: usize| x + q * (i % 3);
    let op = |x: usize, y: usize| {
        let s = (x + y) % q;
        if s.is_multiple_of(2) {
            s / 2
        } else {
            t + s / 2
        }
    };
    let mut blocks = Vec::with_capacity(n * (n - 1) / 6);
    for x in 0..t {
        blocks.push([pt(x, 0), pt(x, 1), pt(x, 2)]);
        for i in 0..3 {
            blocks.push([inf, pt(x + t, i), pt(x, i + 1)]);
        }
    }
    for x in 0..q {
        for y in x + 1..q {
            for i in 0..3 {
                blocks.push([pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

fn relabel(n: usize, blocks: Vec<Block>, seed: u64) -> TripleSystem {
    if seed == 0 {
        return TripleSystem::new(n, blocks);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut seeded_rng(seed));
    TripleSystem::new(n, blocks.into_iter().map(|b| b.map(|v| perm[v])))
}

/// Steiner triple system of order `n ≡ 1, 3 (mod 6)` (Bose for 3, Skolem for 1).
///
/// Seed 0 keeps the construction's own labeling; any other seed applies a
/// seeded vertex permutation.
pub fn build_sts(n: usize, seed: u64) -> Result<TripleSystem, DesignError> {
    if n < 3 {
        return Err(DesignError::TooSmall(n));
    }
    let blocks = match n % 6 {
        3 => bose(n),
        1 => skolem(n),
        _ => return Err(DesignError::NoSteinerSystem(n)),
    };
    Ok(relabel(n, blocks, seed))
}

/// Default hill-climbing iteration cap for [`build_mpsts`].
pub const DEFAULT_ITER_CAP: usize = 2_000_000;

/// A maximum partial Steiner triple system with exactly `schonheim(n)` blocks.
///
/// `n ≡ 1, 3`: a Steiner system. `n ≡ 0, 2`: `STS(n + 1)` with its last
/// vertex deleted. `n ≡ 4, 5`: seeded hill-climbing from a greedy packing;
/// if `iter_cap` runs out first the partial result comes back in
/// [`DesignError::Suboptimal`].
pub fn build_mpsts(n: usize, seed: u64, iter_cap: usize) -> Result<TripleSystem, DesignError> {
    let target = schonheim(n)?;
    match n % 6 {
        1 | 3 => build_sts(n, seed),
        0 | 2 => {
            let sts = build_sts(n + 1, seed)?;
            let kept = sts.blocks.into_iter().filter(|b| b[2] != n);
            Ok(TripleSystem::new(n, kept))
        }
        _ => hill_climb(n, target, seed, iter_cap),
    }
}

const NONE: u8 = u8::MAX;

/// Pair-switch hill-climbing for packings.
///
/// `third[x][y]` is the third point of the block covering `{x, y}`. A step
/// picks a point `x` with two uncovered pairs `{x, y}`, `{x, z}`; if `{y, z}`
/// is uncovered the block `xyz` is added, otherwise the block `yzw` is
/// swapped out for `xyz`. When no point has two uncovered pairs a random
/// block is dropped.
fn hill_climb(n: usize, target: usize, seed: u64, iter_cap: usize) -> Result<TripleSystem, DesignError> {
    debug_assert!(n < NONE as usize);
    let mut rng = seeded_rng(seed);
    let mut third = vec![NONE; n * n];
    let mut count = 0usize;

    let set = |third: &mut Vec<u8>, b: Block, on: bool| {
        let [x, y, z] = b;
        for (u, v, w) in [(x, y, z), (x, z, y), (y, z, x)] {
            let val = if on { w as u8 } else { NONE };
            third[u * n + v] = val;
            third[v * n + u] = val;
        }
    };

    // greedy start over a shuffled triple list
    let mut triples: Vec<Block> = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                triples.push([x, y, z]);
            }
        }
    }
    triples.shuffle(&mut rng);
    for b in triples {
        if count == target {
            break;
        }
        let [x, y, z] = b;
        if third[x * n + y] == NONE && third[x * n + z] == NONE && third[y * n + z] == NONE {
            set(&mut third, b, true);
            count += 1;
        }
    }

    let mut live: Vec<usize> = Vec::with_capacity(n);
    let mut open: Vec<usize> = Vec::with_capacity(n);
    let mut iter = 0;
    while count < target && iter < iter_cap {
        iter += 1;
        live.clear();
        for x in 0..n {
            let free = (0..n).filter(|&y| y != x && third[x * n + y] == NONE).count();
            if free >= 2 {
                live.push(x);
            }
        }
        if live.is_empty() {
            if count == 0 {
                break;
            }
            // drop a random block
            let pick = rng.random_range(0..count);
            let mut seen = 0;
            'find: for x in 0..n {
                for y in x + 1..n {
                    let w = third[x * n + y];
                    if w != NONE && (w as usize) > y {
                        if seen == pick {
                            set(&mut third, [x, y, w as usize], false);
                            count -= 1;
                            break 'find;
                        }
                        seen += 1;
                    }
                }
            }
            continue;
        }
        let x = live[rng.random_range(0..live.len())];
        open.clear();
        open.extend((0..n).filter(|&y| y != x && third[x * n + y] == NONE));
        let i = rng.random_range(0..open.len());
        let mut j = rng.random_range(0..open.len() - 1);
        if j >= i {
            j += 1;
        }
        let (y, z) = (open[i], open[j]);
        let w = third[y * n + z];
        if w == NONE {
            count += 1;
        } else {
            let mut old = [y, z, w as usize];
            old.sort_unstable();
            set(&mut third, old, false);
        }
        set(&mut third, [x, y, z], true);
    }

    let mut blocks = Vec::with_capacity(count);
    for x in 0..n {
        for y in x + 1..n {
            let w = third[x * n + y];
            if w != NONE && (w as usize) > y {
                blocks.push([x, y, w as usize]);
            }
        }
    }
    let system = TripleSystem::new(n, blocks);
    if system.len() == target {
        Ok(system)
    } else {
        Err(DesignError::Suboptimal {
            achieved: system.len(),
            target,
            system,
        })
    }
}
