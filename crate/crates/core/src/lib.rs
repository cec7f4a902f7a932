//! Anti-Ramsey colorings of complete `p`-uniform hypergraphs.
//!
//! The crate covers edge-colored complete `p`-graphs ([`hypercore`]), rainbow
//! detectors for cancellative configurations and their relatives
//! ([`patterns`]), triple systems ([`designs`]), projective geometry over
//! GF(2) ([`gf2geom`]), the lower-bound colorings ([`constructions`]), an
//! exact branch-and-bound search for `ar(n, F)` on tiny instances
//! ([`solver`]) and closed-form bounds plus counting identities
//! ([`diagnostics`]).
//!
//! Everything here is `no_std` with `alloc`. File formats, wall-clock budgets
//! and the command line live in the companion `rainbow-lab` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod constructions;
pub mod designs;
pub mod diagnostics;
pub mod gf2geom;
pub mod graph;
pub mod hypercore;
pub mod patterns;
pub mod solver;

pub use graph::ColoredGraph;
pub use hypercore::{binomial, Coloring, Edge, HypercoreError};
pub use patterns::{Family, PatternKind, PatternWitness};

pub(crate) fn seeded_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
