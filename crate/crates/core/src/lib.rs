//! Skew constacyclic codes over the non-chain ring
//! `R = F_q[u,v]/<f(u), g(v), uv - vu>` where `f` and `g` split into distinct
//! linear factors over `F_q`.

pub mod autom;
pub mod bundled;
pub mod codes;
pub mod config;
pub mod display;
pub mod error;
pub mod gf;
pub mod gray;
pub mod oracle;
pub mod ring;
pub mod skewpoly;

pub use autom::Autom;
pub use codes::{Code, ComponentCode, ShiftKind};
pub use error::{Error, ErrorKind, Result};
pub use gf::{Field, FieldElement, FieldSpec};
pub use ring::{BivPoly, Ring, RingElement, RingSpec};
pub use skewpoly::{Coefficients, SkewPoly, SkewRing};
