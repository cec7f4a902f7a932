#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rainbow_core::hypercore::binomial;
use rainbow_core::Coloring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Color table keyed by sorted vertex lists, built by plain recursion rather
/// than through the library's ranking.
pub struct Table {
    pub n: usize,
    pub p: usize,
    pub colors: HashMap<Vec<usize>, u32>,
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl Table {
    pub fn new(c: &Coloring) -> Table {
        let colors = c.iter().map(|(e, col)| (e.to_vec(), col)).collect();
        Table {
            n: c.n(),
            p: c.p(),
            colors,
        }
    }

    pub fn color(&self, e: &[usize]) -> u32 {
        let mut v = e.to_vec();
        v.sort_unstable();
        self.colors[&v]
    }

    pub fn edges(&self) -> Vec<Vec<usize>> {
        k_subsets(self.n, self.p)
    }
}

fn set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

fn symdiff(a: &[usize], b: &[usize]) -> BTreeSet<usize> {
    set(a).symmetric_difference(&set(b)).copied().collect()
}

fn rainbow_triples(t: &Table, mut accept: impl FnMut(&[usize], &[usize], &[usize]) -> bool) -> bool {
    let edges = t.edges();
    let cols: Vec<u32> = edges.iter().map(|e| t.color(e)).collect();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if cols[i] == cols[j] {
                continue;
            }
            for k in j + 1..edges.len() {
                if cols[k] == cols[i] || cols[k] == cols[j] {
                    continue;
                }
                if accept(&edges[i], &edges[j], &edges[k]) {
                    return true;
                }
            }
        }
    }
    false
}

fn orderings<'a>(a: &'a [usize], b: &'a [usize], c: &'a [usize]) -> [(&'a [usize], &'a [usize], &'a [usize]); 3] {
    [(a, b, c), (a, c, b), (b, c, a)]
}

pub fn brute_cancellative(c: &Coloring) -> bool {
    let t = Table::new(c);
    rainbow_triples(&t, |a, b, c| {
        orderings(a, b, c)
            .iter()
            .any(|(x, y, z)| symdiff(x, y).is_subset(&set(z)))
    })
}

pub fn brute_o(c: &Coloring) -> bool {
    let t = Table::new(c);
    rainbow_triples(&t, |a, b, c| {
        orderings(a, b, c).iter().any(|(x, y, z)| {
            let union: BTreeSet<usize> = set(x).union(&set(y)).copied().collect();
            symdiff(x, y).is_subset(&set(z)) && !set(z).is_subset(&union)
        })
    })
}

pub fn brute_t(c: &Coloring) -> bool {
    let t = Table::new(c);
    let p = t.p;
    rainbow_triples(&t, |a, b, c| {
        let mut u = symdiff(a, b);
        u.extend(symdiff(a, c));
        u.extend(symdiff(b, c));
        u.len() <= p
    })
}

/// Rainbow star: `r` edges whose pairwise intersections all equal one
/// `q`-set.
pub fn brute_star(c: &Coloring, q: usize, r: usize) -> bool {
    let t = Table::new(c);
    let edges = t.edges();
    fn rec(t: &Table, edges: &[Vec<usize>], start: usize, q: usize, r: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == r {
            return true;
        }
        for i in start..edges.len() {
            let e = &edges[i];
            let ok = chosen.iter().all(|&j| {
                let f = &edges[j];
                if t.color(f) == t.color(e) {
                    return false;
                }
                let meet: BTreeSet<usize> = set(e).intersection(&set(f)).copied().collect();
                let core: BTreeSet<usize> = if chosen.len() >= 2 {
                    set(&edges[chosen[0]]).intersection(&set(&edges[chosen[1]])).copied().collect()
                } else {
                    meet.clone()
                };
                meet.len() == q && meet == core
            });
            if ok {
                chosen.push(i);
                if rec(t, edges, i + 1, q, r, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if r == 1 {
        return !edges.is_empty();
    }
    rec(&t, &edges, 0, q, r, &mut Vec::new())
}

pub const F4: &[[usize; 3]] = &[[0, 1, 2], [0, 1, 3], [1, 2, 3]];
pub const F5: &[[usize; 3]] = &[[0, 1, 2], [0, 1, 3], [2, 3, 4]];
pub const H1: &[[usize; 3]] = &[[0, 1, 2], [0, 1, 3], [0, 1, 4]];
pub const H2: &[[usize; 3]] = &[[0, 1, 2], [1, 2, 3], [2, 3, 4]];

/// Rainbow copy of a 3-graph pattern on `0..verts`, by trying every
/// injective vertex map.
pub fn brute_pattern(c: &Coloring, pattern: &[[usize; 3]], verts: usize) -> bool {
    let t = Table::new(c);
    let n = t.n;
    if n < verts {
        return false;
    }
    let mut map = Vec::with_capacity(verts);
    fn rec(t: &Table, pattern: &[[usize; 3]], verts: usize, n: usize, map: &mut Vec<usize>) -> bool {
        if map.len() == verts {
            let cols: Vec<u32> = pattern
                .iter()
                .map(|e| t.color(&[map[e[0]], map[e[1]], map[e[2]]]))
                .collect();
            return cols[0] != cols[1] && cols[0] != cols[2] && cols[1] != cols[2];
        }
        for v in 0..n {
            if map.contains(&v) {
                continue;
            }
            map.push(v);
            if rec(t, pattern, verts, n, map) {
                return true;
            }
            map.pop();
        }
        false
    }
    rec(&t, pattern, verts, n, &mut map)
}

/// Uniform colors from `0..k`.
pub fn uniform_coloring(rng: &mut impl Rng, n: usize, p: usize, k: u32) -> Coloring {
    let e = binomial(n, p) as usize;
    let ids: Vec<u32> = (0..e).map(|_| rng.random_range(0..k)).collect();
    Coloring::new(n, p, &ids).unwrap()
}

/// A background color with a handful of edges recolored from a small palette.
pub fn sparse_coloring(rng: &mut impl Rng, n: usize, p: usize) -> Coloring {
    let e = binomial(n, p) as usize;
    let mut ids = vec![0u32; e];
    let touched = rng.random_range(0..=6.min(e));
    let palette = rng.random_range(1..=5u32);
    for _ in 0..touched {
        ids[rng.random_range(0..e)] = rng.random_range(0..=palette);
    }
    Coloring::new(n, p, &ids).unwrap()
}

/// Mixture used for the property corpora: mostly sparse perturbations of
/// a background, some uniform colorings with few colors.
pub fn corpus_coloring(rng: &mut impl Rng, n: usize, p: usize) -> Coloring {
    match rng.random_range(0..4) {
        0 => uniform_coloring(rng, n, p, 2),
        1 => {
            let k = rng.random_range(3..=5);
            uniform_coloring(rng, n, p, k)
        }
        _ => sparse_coloring(rng, n, p),
    }
}
