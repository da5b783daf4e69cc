//! Exact decision procedures for weakly-morphic and morphic finitely generated
//! abelian groups and finite modules over `Z/n`.
//!
//! * [`linalg`]: integer matrices and the Smith normal form.
//! * [`abgroup`]: groups in invariant-factor form.
//! * [`morphic`]: closed-form predicates for multiplication maps.
//! * [`oracle`]: brute-force endomorphism enumeration for small finite groups.
//! * [`ring`]: base rings `Z`, `Z/n`, products, and modules over them.
//! * [`cli`]: expression parser, reports and verification suites behind the binary.

pub mod abgroup;
pub mod arith;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod morphic;
pub mod oracle;
pub mod ring;

pub use abgroup::{FgAbGroup, GroupOrder, PrimaryDecomposition};
pub use error::{Error, Result};
pub use linalg::{IntMatrix, SnfResult};
pub use morphic::{MorphicVerdict, MulMap};
pub use oracle::{Endo, FinitePresentation};
pub use ring::{BaseRing, RingModule};
