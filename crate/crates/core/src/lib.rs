pub mod cobordism;
pub mod error;
pub mod gauss;
pub mod heisenberg;
pub mod io;
pub mod link;
pub mod linalg;
pub mod matrix;
pub mod mcg;
pub mod ring;
pub mod scalar;
pub mod skein;
pub mod symplectic;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use ring::Ring;
pub use scalar::Scalar;

/// Exact operators between spaces of theta functions.
pub type ExactOperator = Matrix<Scalar>;
/// Floating-point operators, e.g. numerically evaluated Gram matrices.
pub type FloatOperator = Matrix<num_complex::Complex64>;
/// Period matrices in double precision.
pub type PeriodMatrix64 = theta::PeriodMatrix<f64>;
