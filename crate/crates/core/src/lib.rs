//! Exact fractional colouring toolkit.
//!
//! Computes the fractional chromatic number as an exact rational through a
//! linear program over independent sets, searches and verifies `a:b`
//! colourings, classifies graphs whose fractional chromatic number reaches
//! the maximum degree, and builds certified fold colourings of K4-free
//! graphs of maximum degree four.

pub mod blocks;
pub mod bounds;
pub mod budget;
pub mod certificate;
pub mod cliques;
pub mod coloring;
pub mod delta4;
pub mod enumerate;
pub mod error;
pub mod fractional;
pub mod hitting;
pub mod graph;
pub mod io;
pub mod iso;
pub mod lp;
pub mod patterns;
pub mod random;
pub mod rational;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use rational::Rational;
