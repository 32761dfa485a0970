//! Plain n-bases: composition with shuffles, the level-2 morphism calculus,
//! R-units, binary-tree group presentations, enumeration, and ordinal maps.

pub mod compose;
pub mod element;
pub mod enumerate;
pub mod error;
pub mod morphisms;
pub mod ordinal;
pub mod par;
pub mod perm;
pub mod presentation;
pub mod random;
pub mod render;
pub mod selftest;
pub mod tree;
pub mod unital;

pub use compose::{
    compose, decompose_head, embed, graft, make, normalize, shuffle, validate, GammaSequence,
    HeadForm, ShuffleMap, Strategy,
};
pub use element::PlainElement;
pub use error::{Error, Result};
