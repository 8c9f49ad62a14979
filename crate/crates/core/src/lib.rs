//! Exact-arithmetic categories built from subword complexes of Coxeter
//! groups, their Hall algebras, and Hall algebras of tree quivers over the
//! field with one element.
//!
//! The layers, bottom up:
//!
//! * [`coxeter`]: crystallographic Coxeter systems, roots, group elements.
//! * [`subword`]: quadruples `(W, Q, pi, I)`, root functions, canonical forms.
//! * [`flats`]: flats and induced quadruples.
//! * [`category`]: morphisms, admissible sequences, pushouts and pullbacks
//!   among root-independent objects, flips.
//! * [`hall`]: the dual Hall Hopf algebra of quadruples.
//! * [`quiver`]: root configuration quivers, the subquiver category and its
//!   Hall algebra.
//! * [`f1rep`]: pointed-set representations of tree quivers and their Hall
//!   algebra.
//!
//! Enumeration-heavy loops run on rayon when the `parallel` feature is on
//! (the default) and sequentially otherwise; results are identical.

pub mod category;
pub mod coxeter;
pub mod error;
pub mod f1rep;
pub mod flats;
pub mod format;
pub mod hall;
pub mod linalg;
pub mod par;
pub mod quiver;
pub mod subword;

pub use coxeter::{Bond, CoxeterSystem, GroupElement, Root};
pub use error::{Error, Result};
pub use flats::Flat;
pub use subword::{CanonicalKey, Quadruple, RootConfiguration};
