//! Shared numerical kernels.

pub mod eigen;
pub mod fit;
pub mod quadrature;
pub mod roots;

pub use eigen::{eig4, Matrix4};
pub use fit::{fit_loglog, LogLogFit};
pub use quadrature::{integrate, integrate_vec, Quadrature, QuadratureSpec};
pub use roots::bisect;
