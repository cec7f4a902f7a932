//! Exact `ar(n, F)` for tiny instances.
//!
//! Edges are colored one at a time in colex order. Each edge takes an
//! existing color or the next fresh id, so every assignment is a
//! restricted-growth string and each color-renaming class is visited once.
//! After each assignment the [`IncrementalDetector`] checks only the family
//! members closed by that edge. A branch is cut once the colors in use plus
//! the uncolored edges cannot beat the incumbent.

use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use thiserror::Error;

use crate::diagnostics::{check_extremal_structure, ExtremalStatus};
use crate::hypercore::{binomial, Coloring, HypercoreError};
use crate::patterns::{Family, IncrementalDetector, PatternError};

/// Source of elapsed time for wall-clock budgets.
pub trait Clock {
    fn elapsed(&self) -> Duration;
}

/// A clock that never advances; time limits are then ignored.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

/// Default hard cap on `C(n, p)`.
pub const DEFAULT_MAX_EDGES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    pub max_edges: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_nodes: None,
            max_time: None,
            max_edges: DEFAULT_MAX_EDGES,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Budget {
        Budget {
            max_nodes: Some(max_nodes),
            ..Budget::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Search exhausted: `value` is optimal.
    Proved,
    /// Budget ran out: `value` is a certified lower bound.
    TimedOut,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: u32,
    pub witness: Coloring,
    pub status: SolveStatus,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("need n >= p >= 2 (got n={n}, p={p})")]
    Parameters { n: usize, p: usize },
    #[error("C(n,p) = {count} edges exceeds the cap of {cap}")]
    TooManyEdges { count: u64, cap: usize },
    #[error("budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Hypercore(#[from] HypercoreError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

trait Visitor {
    /// True when no completion of the current prefix can matter.
    fn prune(&self, used: u32, remaining: usize) -> bool;
    fn leaf(&mut self, colors: &[u32], used: u32) -> Flow;
}

struct Search<'a, C: Clock + ?Sized> {
    detector: Option<&'a IncrementalDetector>,
    colors: Vec<u32>,
    nodes: u64,
    budget: Budget,
    clock: &'a C,
    exhausted: bool,
}

impl<'a, C: Clock + ?Sized> Search<'a, C> {
    fn new(edge_count: usize, detector: Option<&'a IncrementalDetector>, budget: Budget, clock: &'a C) -> Self {
        Search {
            detector,
            colors: vec![0; edge_count],
            nodes: 0,
            budget,
            clock,
            exhausted: false,
        }
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|m| self.nodes > m) {
            self.exhausted = true;
        } else if self.nodes & 0xfff == 0 {
            if let Some(limit) = self.budget.max_time {
                if self.clock.elapsed() >= limit {
                    self.exhausted = true;
                }
            }
        }
        self.exhausted
    }

    fn run<V: Visitor>(&mut self, visitor: &mut V) {
        self.dfs(0, 0, visitor);
    }

    fn dfs<V: Visitor>(&mut self, depth: usize, used: u32, visitor: &mut V) -> Flow {
        let total = self.colors.len();
        if depth == total {
            return visitor.leaf(&self.colors, used);
        }
        if visitor.prune(used, total - depth) {
            return Flow::Continue;
        }
        // fresh color first
        for choice in (0..=used).rev() {
            if self.tick() {
                return Flow::Stop;
            }
            self.colors[depth] = choice;
            if let Some(det) = self.detector {
                if det.violation(&self.colors, depth).is_some() {
                    continue;
                }
            }
            let next = if choice == used { used + 1 } else { used };
            if self.dfs(depth + 1, next, visitor) == Flow::Stop {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }
}

fn edge_count(n: usize, p: usize, budget: &Budget) -> Result<usize, SolveError> {
    if p < 2 || n < p || n > 64 {
        return Err(SolveError::Parameters { n, p });
    }
    let count = binomial(n, p);
    if count > budget.max_edges as u64 {
        return Err(SolveError::TooManyEdges {
            count,
            cap: budget.max_edges,
        });
    }
    Ok(count as usize)
}

struct Maximize {
    best: u32,
    best_colors: Vec<u32>,
}

impl Visitor for Maximize {
    fn prune(&self, used: u32, remaining: usize) -> bool {
        used as usize + remaining <= self.best as usize
    }

    fn leaf(&mut self, colors: &[u32], used: u32) -> Flow {
        if used > self.best {
            self.best = used;
            self.best_colors.copy_from_slice(colors);
        }
        Flow::Continue
    }
}

/// `ar(n, family)` on `K_n^(p)` by exhaustive search, without a clock.
pub fn solve_anti_ramsey(n: usize, p: usize, family: Family, budget: &Budget) -> Result<SolveResult, SolveError> {
    solve_anti_ramsey_with_clock(n, p, family, budget, &NoClock)
}

/// As [`solve_anti_ramsey`], honoring `budget.max_time` against `clock`.
pub fn solve_anti_ramsey_with_clock<C: Clock + ?Sized>(
    n: usize,
    p: usize,
    family: Family,
    budget: &Budget,
    clock: &C,
) -> Result<SolveResult, SolveError> {
    let count = edge_count(n, p, budget)?;
    let detector = IncrementalDetector::new(n, p, family)?;
    let start = clock.elapsed();
    // the monochromatic coloring is free of every three-color pattern
    let mut visitor = Maximize {
        best: 1,
        best_colors: vec![0; count],
    };
    let mut search = Search::new(count, Some(&detector), *budget, clock);
    search.run(&mut visitor);
    let status = if search.exhausted {
        SolveStatus::TimedOut
    } else {
        SolveStatus::Proved
    };
    Ok(SolveResult {
        value: visitor.best,
        witness: Coloring::new(n, p, &visitor.best_colors)?,
        status,
        nodes: search.nodes,
        elapsed: clock.elapsed().saturating_sub(start),
    })
}

/// Outcome of [`enumerate_colorings`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationStats {
    pub leaves: u64,
    pub nodes: u64,
    pub completed: bool,
}

struct Collect<F> {
    min_colors: u32,
    leaves: u64,
    visit: F,
}

impl<F: FnMut(&[u32], u32)> Visitor for Collect<F> {
    fn prune(&self, used: u32, remaining: usize) -> bool {
        (used as usize + remaining) < self.min_colors as usize
    }

    fn leaf(&mut self, colors: &[u32], used: u32) -> Flow {
        if used >= self.min_colors {
            self.leaves += 1;
            (self.visit)(colors, used);
        }
        Flow::Continue
    }
}

/// Visits every restricted-growth coloring of `K_n^(p)` with at least
/// `min_colors` colors, skipping those with a rainbow member of `family`
/// when one is given. With `family = None` and `min_colors = 0` the leaves
/// are all set partitions of the edge set.
pub fn enumerate_colorings(
    n: usize,
    p: usize,
    family: Option<Family>,
    min_colors: u32,
    budget: &Budget,
    visit: impl FnMut(&[u32], u32),
) -> Result<EnumerationStats, SolveError> {
    let count = edge_count(n, p, budget)?;
    let detector = family.map(|f| IncrementalDetector::new(n, p, f)).transpose()?;
    let mut visitor = Collect {
        min_colors,
        leaves: 0,
        visit,
    };
    let mut search = Search::new(count, detector.as_ref(), *budget, &NoClock);
    search.run(&mut visitor);
    Ok(EnumerationStats {
        leaves: visitor.leaves,
        nodes: search.nodes,
        completed: !search.exhausted,
    })
}

/// Checks every optimal rainbow-cancellative coloring against the extremal
/// structure (disjoint rainbow edges plus one background color on their
/// union).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub n: usize,
    pub p: usize,
    pub value: u32,
    pub optimal_colorings: u64,
    pub passed: u64,
    pub failed: u64,
    pub inconclusive: u64,
    pub first_failure: Option<Coloring>,
    pub nodes: u64,
}

impl StructureReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0 && self.inconclusive == 0 && self.passed == self.optimal_colorings
    }
}

pub fn verify_optimal_structure(n: usize, p: usize, budget: &Budget) -> Result<StructureReport, SolveError> {
    let solved = solve_anti_ramsey(n, p, Family::Cancellative, budget)?;
    if solved.status != SolveStatus::Proved {
        return Err(SolveError::BudgetExhausted { nodes: solved.nodes });
    }
    let mut report = StructureReport {
        n,
        p,
        value: solved.value,
        optimal_colorings: 0,
        passed: 0,
        failed: 0,
        inconclusive: 0,
        first_failure: None,
        nodes: solved.nodes,
    };
    let mut bad: Option<HypercoreError> = None;
    let stats = enumerate_colorings(n, p, Some(Family::Cancellative), solved.value, budget, |colors, _| {
        report.optimal_colorings += 1;
        let c = match Coloring::new(n, p, colors) {
            Ok(c) => c,
            Err(e) => {
                bad = Some(e);
                return;
            }
        };
        match check_extremal_structure(&c).status {
            ExtremalStatus::Found { .. } => report.passed += 1,
            ExtremalStatus::Absent => {
                report.failed += 1;
                if report.first_failure.is_none() {
                    report.first_failure = Some(c);
                }
            }
            ExtremalStatus::Inconclusive => report.inconclusive += 1,
        }
    })?;
    if let Some(e) = bad {
        return Err(e.into());
    }
    report.nodes += stats.nodes;
    if !stats.completed {
        return Err(SolveError::BudgetExhausted { nodes: report.nodes });
    }
    Ok(report)
}
