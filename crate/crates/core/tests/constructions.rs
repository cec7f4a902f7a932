use std::collections::BTreeSet;

use rainbow_core::constructions::{
    build_cancellative_extremal, build_mpsts_coloring, build_pg_coloring, generate_gallai, GallaiConfig,
};
use rainbow_core::designs::{build_sts, schonheim, Block};
use rainbow_core::diagnostics::check_extremal_structure;
use rainbow_core::hypercore::Edge;
use rainbow_core::patterns::{find_rainbow_cancellative, find_rainbow_p3, Family};
use rainbow_core::Coloring;

#[test]
fn cancellative_extremal_colorings() {
    for p in 3..=5 {
        for n in p + 1..=25 {
            let c = build_cancellative_extremal(n, p).unwrap();
            assert_eq!(c.k() as usize, 1 + n / p, "n={n} p={p}");
            assert_eq!(find_rainbow_cancellative(&c), None, "n={n} p={p}");
            let check = check_extremal_structure(&c);
            assert!(check.ok(), "n={n} p={p}: {:?}", check.status);
        }
    }
}

#[test]
fn mpsts_colorings() {
    for n in 4..=30 {
        let c = build_mpsts_coloring(n, 0).unwrap();
        assert_eq!(c.k() as usize, schonheim(n).unwrap() + 1, "n={n}");
        assert_eq!(find_rainbow_p3(&c, Family::F4).unwrap(), None, "n={n}");
    }
}

#[test]
fn projective_colorings() {
    for s in 3..=5u32 {
        let pg = build_pg_coloring(s, 32).unwrap();
        let n = (1usize << s) - 1;
        let m = schonheim(n).unwrap();
        assert!(pg.coloring.k() as usize > m, "s={s}");
        assert_eq!(pg.coloring.k() as usize, m + pg.classes);
        assert_eq!(find_rainbow_p3(&pg.coloring, Family::F4).unwrap(), None, "s={s}");
    }
    assert_eq!(build_pg_coloring(4, 32).unwrap().coloring.k(), 37);
}

/// Fano subsystems of a block list: 7-sets carrying 7 blocks.
fn fano_subsystems(n: usize, blocks: &[Block]) -> Vec<(BTreeSet<usize>, Vec<Block>)> {
    let mut out = Vec::new();
    let set: BTreeSet<Block> = blocks.iter().copied().collect();
    // two blocks through a common point cover 5 points of a Fano plane
    let mut seen = BTreeSet::new();
    for a in blocks {
        for b in blocks {
            if a >= b || a.iter().filter(|x| b.contains(x)).count() != 1 {
                continue;
            }
            for (d, e) in (0..n).flat_map(|d| (d + 1..n).map(move |e| (d, e))) {
                let mut pts: BTreeSet<usize> = a.iter().chain(b.iter()).copied().collect();
                if !pts.insert(d) || !pts.insert(e) {
                    continue;
                }
                let inside: Vec<Block> = set
                    .iter()
                    .filter(|blk| blk.iter().all(|x| pts.contains(x)))
                    .copied()
                    .collect();
                if pts.len() == 7 && inside.len() == 7 && seen.insert(pts.clone()) {
                    out.push((pts, inside));
                }
            }
        }
    }
    out
}

fn check_fano_background(c: &Coloring, blocks: &[Block]) -> usize {
    let sizes = c.class_sizes();
    let color = |t: &[usize]| c.color(Edge::new(t, c.n()).unwrap());
    let mut checked = 0;
    for (pts, inside) in fano_subsystems(c.n(), blocks) {
        let block_colors: BTreeSet<u32> = inside.iter().map(|b| color(b)).collect();
        if block_colors.len() != 7 || inside.iter().any(|b| sizes[color(b) as usize] != 1) {
            continue;
        }
        let pts: Vec<usize> = pts.into_iter().collect();
        let mut others = BTreeSet::new();
        for i in 0..7 {
            for j in i + 1..7 {
                for k in j + 1..7 {
                    let t = [pts[i], pts[j], pts[k]];
                    if !inside.contains(&t) {
                        others.insert(color(&t));
                    }
                }
            }
        }
        assert_eq!(others.len(), 1, "fano on {pts:?}");
        checked += 1;
    }
    checked
}

#[test]
fn rainbow_fano_subsystems_have_one_background() {
    let pg3 = build_pg_coloring(3, 4).unwrap();
    let blocks = rainbow_core::gf2geom::build_pg(3).unwrap().blocks;
    assert_eq!(check_fano_background(&pg3.coloring, &blocks), 1);

    let pg4 = build_pg_coloring(4, 4).unwrap();
    let blocks = rainbow_core::gf2geom::build_pg(4).unwrap().blocks;
    assert_eq!(check_fano_background(&pg4.coloring, &blocks), 15);

    for n in [7, 9, 13, 15] {
        let c = build_mpsts_coloring(n, 0).unwrap();
        let blocks = build_sts(n, 0).unwrap().blocks;
        check_fano_background(&c, &blocks);
    }
}

#[test]
fn gallai_generator_never_makes_rainbow_triangles() {
    for n in 1..=40 {
        for seed in 0..10 {
            for max_parts in [2, 4, 7] {
                let g = generate_gallai(n, seed, GallaiConfig { max_parts, ..GallaiConfig::default() });
                assert_eq!(g.n(), n);
                assert_eq!(g.has_rainbow_triangle(), None, "n={n} seed={seed} parts={max_parts}");
            }
        }
    }
}
