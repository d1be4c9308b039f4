//! Combinatorial models of simple graph manifolds and the horizontal surfaces
//! immersed in them, with exact slope, spirality and governor computations.
//!
//! Modules, bottom-up:
//!
//! - [`algebra`]: torus homology classes, gluing matrices, positive rationals.
//! - [`manifold`]: blocks, JSJ tori and their validation.
//! - [`surface`]: pieces, circles, edges; slopes, spirality, separability.
//! - [`construct`]: the Rubinstein–Wang piece builder, the doubled family
//!   `S_n` and non-quasi-isometry certificates.
//! - [`document`]: the JSON pair document.
//! - [`cli`]: the command-line front end.

pub mod algebra;
pub mod cli;
pub mod construct;
pub mod document;
pub mod manifold;
pub mod surface;

pub use algebra::{
    reduce, transport, wedge, AlgebraError, BasisTag, GluingMatrix, HomologyClass, Matrix2,
    PositiveRational,
};
pub use manifold::{
    dual_graph, fiber_intersection, validate_manifold, BoundaryRef, GraphManifold, JsjTorus,
    SeifertBlock, Side, ValidationReport, Violation,
};
pub use surface::{
    crossing_number, cycle_basis, governor, is_separable, slope, slope_fiber_decomposition,
    spirality, spirality_image_generators, validate_surface, Attachment, Cycle, Direction,
    HorizontalSurface, Step, SurfaceCircle, SurfaceEdge, SurfaceError, SurfacePiece,
};
