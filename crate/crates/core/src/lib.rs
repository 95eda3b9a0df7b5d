//! Expected Shortfall, the mean excess function and the duality between
//! them, with worst-case evaluation under moment and Wasserstein model
//! uncertainty and a calibration pipeline for insurance loss data.

pub mod calibration;
pub mod distributions;
pub mod dual;
mod error;
pub mod numeric;
pub mod oce;
pub mod format;
pub mod uncertainty;

pub use distributions::{
    EmpiricalSample, LossModel, ModelKind, ModelSpec, Parametric, ProbabilityInterval, QuantileInterval,
};
pub use dual::OptResult;
pub use error::{Error, Result};
