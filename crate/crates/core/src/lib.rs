//! Exact computational algebra for divided power algebras over operads in
//! prime characteristic: finite-field linear algebra, the monomial
//! operations of truncated free divided power algebras, Soublin pairs,
//! restricted Lie algebras, enveloping rings, Beck modules, Kähler
//! differentials, and the degree-0 comparison maps between them.
//!
//! Everything is desk scale and exact: no floating point, no randomized
//! algorithms outside explicitly seeded property checks.

pub mod comb;
pub mod field;
pub mod linalg;

pub mod operad;

pub mod pdcom;
pub mod rlie;

pub mod beck;
pub mod envelope;
pub mod kahler;

mod lie_words;

pub mod report;
