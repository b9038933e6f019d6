//! Realizability engine for constructive set theory at desk scale.
//!
//! Sets are coded as nonempty, prefix-closed, well-founded collections of
//! integer tuples. Realizers are naturals interpreted as programs of a
//! Kleene-style application structure. The checker decides, within explicit
//! resource bounds, whether a given natural realizes a given formula, and the
//! axiom catalogue ships one executable realizer construction per CZF axiom
//! (plus full Separation), each paired with a verification suite over
//! hereditarily finite instances.

pub mod axioms;
pub mod cli;
pub mod formula;
pub mod pca;
pub mod realize;
pub mod synth;
pub mod treeset;

pub use pca::{Nat, Pca};
pub use treeset::TreeSet;
