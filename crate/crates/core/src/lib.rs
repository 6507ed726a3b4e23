//! Skew shapes, outside decompositions, Schur functions and logs of
//! invertible operations between Giambelli type matrices.

pub mod error;
pub mod gmatrix;
pub mod replay;
pub mod shapes;
pub mod stabeq;
pub mod strips;
pub mod symfun;

pub use error::{Error, Result};
pub use shapes::{BoxCoord, DiagonalType, Partition, SkewShape};
pub use strips::{BorderStrip, OutsideDecomposition, Step, StripLabel, TwistCase, TwistRule};
