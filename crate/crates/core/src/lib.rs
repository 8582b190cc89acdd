//! Exact combinatorial machinery for boundary-patterned manifolds.
//!
//! Everything here is integer or dyadic-rational arithmetic; there are no
//! floating-point numbers anywhere in the crate. The main pieces:
//!
//! - [`complex`]: abstract simplicial complexes stored by maximal simplices,
//!   with links, stars, joins, barycentric subdivision, dual cones, a small
//!   generator zoo, isomorphism testing, and a line-based text format.
//! - [`homology`]: integer simplicial homology via sparse Smith normal form,
//!   homology-manifold and generalized-homology-sphere certification.
//! - [`flag`]: minimal-non-face enumeration, flag certification, and the
//!   Charney-Davis quantity of a flag complex.
//! - [`dyadic`]: exact dyadic rationals `a / 2^k`.
//! - [`pattern`]: boundary patterns (named codimension-one facets), strata,
//!   nerves, and three independent orbifold Euler characteristic formulas.
//! - [`construction`]: reflection-group doubles `(Z/2)^l x M / ~` of a
//!   patterned complex across a chosen set of mirror facets.
//! - [`surgery`]: cutting a patterned complex open along a hypersurface and
//!   replaying hierarchy ledgers step by step with exact invariant audits.
//! - [`corpus`]: deterministic example families used by the test suite and
//!   the command-line `corpus` generator.

pub mod complex;
pub mod construction;
pub mod corpus;
pub mod dyadic;
pub mod flag;
pub mod homology;
pub mod pattern;
pub mod surgery;

pub use complex::{Complex, Simplex, Vertex};
pub use dyadic::Dyadic;
