//! Exact combinatorics for limit algebras built from order-preserving
//! embeddings of upper-triangular matrix algebras.
//!
//! * [`arith`]: positive rationals, reduced roots, supernatural numbers.
//! * [`tuples`]: the composition monoid of refinement-multiplicity tuples
//!   and its unique factorization.
//! * [`embed`]: grid orders on `[n]×[k]` and recognition of locally order
//!   preserving and order preserving embeddings.
//! * [`bratteli`]: ordered diagrams with multiplicity, contraction and a
//!   finite intertwining verifier.
//! * [`spectrum`]: level orders, coherence, gap points and cocycles.
//! * [`classify`]: invariants of eventually periodic presentations and the
//!   isomorphism decision.
//! * [`cli`]: JSON input, command dispatch and report rendering.
//!
//! All arithmetic is exact.

pub mod arith;
pub mod bratteli;
pub mod classify;
pub mod cli;
pub mod embed;
pub mod error;
pub mod par;
pub mod spectrum;
pub mod tuples;

pub use error::{Error, Result};
