//! Lattice stick polygons for knots given by arc presentations.
//!
//! An arc presentation with `a` arcs is turned into a self-avoiding polygon
//! in the cubic lattice with `3a - 4` sticks when it is not star shaped (or
//! its dual is not), and `3a - 2` sticks for the torus-order star case. The
//! knot type of every construction is checked by comparing Alexander
//! polynomials of the input grid diagram and of an exact generic projection
//! of the output polygon.

pub mod arc;
pub mod certify;
pub mod dataset;
pub mod diagram;
pub mod invariants;
pub mod lattice;
pub mod laurent;
pub mod random;
pub mod render;

pub use arc::{
    mod_star, ArcError, ArcPresentation, NonStarWitness, NormalizedNonStar, TorusClassification,
};
pub use certify::{
    check_bounds, construct_auto, Branch, CertifyOptions, ConstructionCertificate, KnotFlags,
};
pub use diagram::{arc_to_planar, project_polygon, PlanarDiagram};
pub use invariants::{alexander, determinant, jones_kauffman};
pub use lattice::{
    construct_basic, construct_nonstar, reduce_ends, validate_polygon, Axis, LatticePolygon,
    LatticeStick,
};
pub use laurent::LaurentPolynomial;
