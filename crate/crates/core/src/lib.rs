//! Vector-valued sequence classes on finite-dimensional real Banach spaces.
//!
//! The crate evaluates the norms of finite vector sequences under the usual
//! sequence classes (absolutely, weakly, unconditionally, Cohen strongly and
//! mid summable sequences, Rademacher classes), the norms of their dual
//! classes, and summing norms of operators between such sequence spaces.
//! Every supremum comes with a [`NormCert`] saying how it was computed and
//! whether the value is exact or a lower bound.

pub mod class;
pub mod dualize;
pub mod error;
pub mod index;
pub mod json;
pub mod linalg;
pub mod opideal;
pub mod optimize;
pub mod schema;
pub mod seq;
pub mod seqnorm;
pub mod space;
pub mod verify;

pub use class::{ClassFlags, ClassId};
pub use error::{Error, Result};
pub use index::{conjugate_index, Index};
pub use optimize::{Bound, Method, MethodTag, NormCert, OptConfig, Witness};
pub use seq::VecSeq;
pub use space::Space;
