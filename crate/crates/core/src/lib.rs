//! Exact computations with divisor classes on Hilbert schemes of points of
//! surfaces: Néron–Severi lattices, Severi divisor classes, and polyhedral
//! cones with wall-and-chamber bookkeeping.
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod chambers;
pub mod error;
pub mod expr;
pub mod hilbpic;
pub mod linalg;
pub mod nslattice;
pub mod rational;
pub mod severi;

pub use chambers::{cross_section_svg, fixture_svg, transport_wallset_down, Cone, Fixture, PlotOptions, Wall, WallSet};
pub use error::{Error, Result};
pub use hilbpic::{HilbCurveClass, HilbDivClass};
pub use nslattice::{SurfaceClass, SurfaceKind, SurfaceLattice, Tristate};
pub use rational::Q;
pub use severi::{Flag, SeveriInput, SeveriResult};
