//! Cones, wall sets and their restriction and transport.

pub mod cone;
pub mod fixture;
pub mod svg;
pub mod walls;

pub use cone::Cone;
pub use fixture::{Fixture, LabeledRay, Section};
pub use svg::{cross_section_svg, fixture_svg, PlotOptions};
pub use walls::{transport_wallset_down, Location, Restriction, Wall, WallSet, WallStatus};
