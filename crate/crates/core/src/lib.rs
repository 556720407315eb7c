//! Two-parameter `(a, lambda)` escort entropies and divergences, the
//! generalized Gaussian family that maximizes them under an escort-moment
//! constraint, the two-level system, and brute-force checks of the main
//! inequalities.

pub mod cli;
pub mod dist;
pub mod error;
pub mod escort;
pub mod io;
pub mod measures;
pub mod oracle;
pub mod qgaussian;
pub mod special;
pub mod twolevel;

pub use dist::{quadrature, Density, DiscreteDist, Distribution, GriddedDensity, ParamPair};
pub use error::{Error, Result};
pub use escort::{abs_moment, escort, gen_moment, info_generating};
pub use measures::{Family, Flavor, MeasureKind};
pub use qgaussian::{GenGaussian, Support};
pub use twolevel::TwoLevelState;
