//! Eventually 2-periodic free resolutions over integral group rings.
//!
//! Given a finitely presented group `G` with a central element `w` and a
//! finite free resolution of the trivial module over `ZG`, this crate
//! reduces the resolution to the quotient ring of `Gamma = G/<w>`, turns a
//! null-homotopy for multiplication by `w - 1` into a chain map, and splices
//! iterated mapping cones into a free resolution of `Z` over `ZGamma` that
//! repeats with period 2 beyond a finite stage. Integral group homology and
//! cohomology then fall out of Smith Normal Form applied to the augmented
//! differentials.
//!
//! Entry points:
//! - [`presentation::catalog`]: the built-in families (finite cyclic,
//!   torus-knot amalgam quotients, Heisenberg quotients, hyperbolic triangle
//!   groups, and the braid quotient `B4/Z(B4)`).
//! - [`periodic::assemble_periodic`]: the resolution itself.
//! - [`homology::homology_table`]: integral (co)homology tables.
//! - `perires` binary: `catalog`, `resolve`, `homology`, `verify`, `snf`.

pub mod cli;
pub mod complex;
pub mod error;
pub mod fox;
pub mod groupring;
pub mod homology;
pub mod intmat;
pub mod periodic;
pub mod presentation;
pub mod words;

pub use error::{Error, Result};
