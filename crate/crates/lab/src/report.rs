//! JSON renderings of library values.

use std::collections::BTreeMap;

use rainbow_core::designs::TripleSystem;
use rainbow_core::diagnostics::{Bounds, ExtremalCheck, ExtremalStatus, F4Accounting, GallaiDefect};
use rainbow_core::gf2geom::GrassmannGraph;
use rainbow_core::hypercore::Coloring;
use rainbow_core::patterns::PatternWitness;
use rainbow_core::solver::{SolveResult, SolveStatus};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub vertices: Vec<usize>,
    pub color: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub p: usize,
    pub n: usize,
    pub colors: u32,
    pub edges: Vec<EdgeJson>,
}

impl From<&Coloring> for ColoringJson {
    fn from(c: &Coloring) -> Self {
        ColoringJson {
            p: c.p(),
            n: c.n(),
            colors: c.k(),
            edges: c
                .iter()
                .map(|(e, color)| EdgeJson {
                    vertices: e.to_vec(),
                    color,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub kind: String,
    pub edges: Vec<Vec<usize>>,
    pub colors: Vec<u32>,
}

impl From<&PatternWitness> for WitnessJson {
    fn from(w: &PatternWitness) -> Self {
        WitnessJson {
            kind: w.kind.to_string(),
            edges: w.edges.iter().map(|e| e.to_vec()).collect(),
            colors: w.colors.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSystemJson {
    pub n: usize,
    pub blocks: Vec<[usize; 3]>,
}

impl From<&TripleSystem> for TripleSystemJson {
    fn from(t: &TripleSystem) -> Self {
        TripleSystemJson {
            n: t.n,
            blocks: t.blocks.clone(),
        }
    }
}

/// Planes as sorted point lists, adjacency as neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannJson {
    pub s: u32,
    pub planes: Vec<Vec<u32>>,
    pub adjacency: Vec<Vec<usize>>,
}

impl From<&GrassmannGraph> for GrassmannJson {
    fn from(j: &GrassmannGraph) -> Self {
        GrassmannJson {
            s: j.s,
            planes: j.planes.iter().map(|w| w.points()).collect(),
            adjacency: j.adjacency.clone(),
        }
    }
}

pub fn plane_coloring_json(phi: &[u32]) -> BTreeMap<usize, u32> {
    phi.iter().copied().enumerate().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveJson {
    pub n: usize,
    pub p: usize,
    pub family: String,
    pub value: u32,
    pub status: String,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub witness_path: Option<String>,
}

impl SolveJson {
    pub fn new(n: usize, p: usize, family: &str, r: &SolveResult, witness_path: Option<String>) -> Self {
        SolveJson {
            n,
            p,
            family: family.to_string(),
            value: r.value,
            status: match r.status {
                SolveStatus::Proved => "proved".into(),
                SolveStatus::TimedOut => "timed_out".into(),
            },
            nodes: r.nodes,
            elapsed_ms: r.elapsed.as_millis() as u64,
            witness_path,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantJson {
    pub name: String,
    /// Whether the invariant is required to hold for this input.
    pub required: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccountingJson {
    pub n: usize,
    pub k: usize,
    pub i: usize,
    pub rho: usize,
    pub s_singleton: usize,
    pub ell: usize,
    pub f4_free: bool,
    pub bounds: Option<BoundsJson>,
    pub invariants: Vec<InvariantJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsJson {
    pub lower: usize,
    pub upper: usize,
    pub within: bool,
}

impl BoundsJson {
    pub fn new(b: Bounds, value: usize) -> Self {
        BoundsJson {
            lower: b.lower,
            upper: b.upper,
            within: b.contains(value),
        }
    }
}

impl AccountingJson {
    pub fn new(a: &F4Accounting, bounds: Option<Bounds>) -> Self {
        let inv = |name: &str, holds: bool| InvariantJson {
            name: name.into(),
            required: a.f4_free,
            holds,
        };
        AccountingJson {
            n: a.n,
            k: a.k,
            i: a.i,
            rho: a.rho,
            s_singleton: a.s_singleton,
            ell: a.ell,
            f4_free: a.f4_free,
            bounds: bounds.map(|b| BoundsJson::new(b, a.k)),
            invariants: vec![
                inv("leave_identity", a.leave_identity),
                inv("incidence_bound", a.incidence_bound),
                inv("color_bound", a.color_bound),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub status: String,
    pub u: Option<Vec<usize>>,
    pub matching: Option<Vec<Vec<usize>>>,
    pub background: Option<u32>,
    pub nodes: u64,
}

impl From<&ExtremalCheck> for StructureJson {
    fn from(c: &ExtremalCheck) -> Self {
        match &c.status {
            ExtremalStatus::Found { u, matching, background } => StructureJson {
                status: "found".into(),
                u: Some(u.clone()),
                matching: Some(matching.iter().map(|e| e.to_vec()).collect()),
                background: Some(*background),
                nodes: c.nodes,
            },
            ExtremalStatus::Absent | ExtremalStatus::Inconclusive => StructureJson {
                status: if c.status == ExtremalStatus::Absent {
                    "absent".into()
                } else {
                    "inconclusive".into()
                },
                u: None,
                matching: None,
                background: None,
                nodes: c.nodes,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GallaiJson {
    pub c: usize,
    pub rho: usize,
    pub bound_ok: bool,
}

impl From<GallaiDefect> for GallaiJson {
    fn from(d: GallaiDefect) -> Self {
        GallaiJson {
            c: d.c,
            rho: d.rho,
            bound_ok: d.bound_ok,
        }
    }
}
