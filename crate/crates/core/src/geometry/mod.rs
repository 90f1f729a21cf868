//! Points of `C²`, Schwarz maps of lines and circles, integration paths and
//! continuation of `√S′` along them.

mod bipoint;
mod path;
mod schwarz;
mod sqrt_branch;

pub use bipoint::{BiPoint, RayPoint};
pub use path::{PathKind, PathSpec};
pub use schwarz::{
    anti_conformal_reflect, inverse_schwarz_value, reflect_bipoint, schwarz_value, SchwarzCurve,
    SchwarzMap,
};
pub use sqrt_branch::{sqrt_inverse_derivative_branch, sqrt_schwarz_derivative, SqrtBranch};
