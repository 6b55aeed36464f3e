//! Equivariant Ext algebras of smooth complete toric and symmetric varieties,
//! computed as graded global sections of a sheaf of algebras on a finite face poset.
//!
//! The crate is layered bottom-up:
//! [`linalg`] (exact sparse elimination over Q), [`poset`] (finite spaces, sheaves,
//! Čech cohomology), [`graded`] (polynomial algebras, twists, twisted tensors),
//! [`isotropy`] (the F₂ model of component groups), [`faces`] (face posets),
//! [`hsheaf`] (the cohomology sheaf), [`ext`] (the Ext algebra and checks) and
//! [`oracles`] (independent ground truth).

pub mod document;
pub mod error;
pub mod exec;
pub mod ext;
pub mod faces;
pub mod graded;
pub mod hsheaf;
pub mod isotropy;
pub mod linalg;
pub mod oracles;
pub mod poset;
pub mod sets;

pub use error::{Error, Result};
