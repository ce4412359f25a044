//! Finite models of pointfree topology.
//!
//! The crate works with finite frames (finite distributive lattices), their
//! sublocale lattices, and homomorphisms out of the frame of extended partial
//! reals, represented as pairs of rational step functions ("trails").

pub mod bits;
pub mod completion;
pub mod frame;
pub mod harness;
pub mod order;
pub mod rational;
pub mod realfn;
pub mod registry;
pub mod spatial;
pub mod sublocale;

pub use frame::{FiniteFrame, FrameError, FrameMap};
pub use order::{Elem, FiniteLattice, FinitePoset};
pub use rational::{ExtRational, Rational, RationalError};
