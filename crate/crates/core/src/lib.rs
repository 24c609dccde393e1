//! Exact-arithmetic analysis of c-ordinary lines and triangles in planar point sets.
//!
//! A spanned line of a point set is c-ordinary when it holds at most `c` of the
//! points; a c-ordinary triangle is a non-collinear triple whose three side lines
//! are all c-ordinary. The crate enumerates spanned lines exactly, searches for
//! such triangles, generates the extremal blocker constructions, checks the
//! classical incidence inequalities as oracles, and evaluates the closed-form
//! bound that forces an 11-ordinary triangle once `n ≥ 7697`.
//!
//! ```
//! use ordtri::{geometry::PointSet, incidence::spanned_lines, ordinary::find_c_ordinary_triangle};
//!
//! let set = PointSet::from_ints(&[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2)]).unwrap();
//! let lines = spanned_lines(&set).unwrap();
//! assert_eq!(lines.line_count(), 20);
//! let cert = find_c_ordinary_triangle(&set, &lines, 3).unwrap().unwrap();
//! assert_eq!(cert.indices, [0, 1, 3]);
//! ```

pub mod bounds;
pub mod constructions;
pub mod geometry;
pub mod incidence;
pub mod lemmas;
pub mod ordinary;
pub mod par;
pub mod real;

pub use geometry::{CanonicalLine, Point, PointSet};
pub use incidence::{IncidenceSummary, SpannedLineSet};
pub use par::Execution;
