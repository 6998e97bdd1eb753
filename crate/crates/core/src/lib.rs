//! Mod-2 characteristic maps over simplicial complexes and their wedges.
//!
//! The crate enumerates the DJ classes over a complex `K` either directly
//! (branch and bound, [`gs`]) or, when `K = L(J)` is an iterated wedge of a
//! smaller complex `L`, by solving puzzles over the board `G(J)` whose pieces
//! are the classes over `L` ([`puzzle`]).
//!
//! ```
//! use djpuzzle::{garrison_scott, SimplicialComplex};
//!
//! let pentagon = SimplicialComplex::polygon(5);
//! assert_eq!(garrison_scott(&pentagon).unwrap().len(), 5);
//! ```

pub mod charmap;
pub mod complex;
pub mod error;
pub mod gf2;
pub mod gs;
pub mod io;
pub mod par;
pub mod puzzle;

pub use charmap::{canonicalize, dualize, primal, project, wedge_maps, CharMap, DualCharMap, Framed};
pub use complex::{Face, Permutation, SimplicialComplex, VertexCopy, WedgeLayout, WedgeTuple};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use gs::{garrison_scott, garrison_scott_with, idcm_garrison_scott, idcm_garrison_scott_with, Enumeration};
pub use puzzle::{solve, Method, SearchConfig};
