//! Cumulative residual interval entropy (CRIE) of doubly truncated lifetimes.
//!
//! For a lifetime `X` observed only inside a window `[τ1, τ2]`, the CRIE is
//! `H = -∫ u ln u dx` over the window, where `u` is the truncated survival
//! function. The crate provides:
//!
//! * [`dist`]: parametric lifetime families and derived constructions
//!   (equilibrium, proportional-odds tilt, monotone transforms, empirical);
//! * [`quadrature`]: the adaptive Gauss–Kronrod integrator behind every number;
//! * [`truncation`]: truncated survival, density, failure rates, mean residual
//!   and past lifetimes, conditional moments;
//! * [`entropy`]: the CRIE by four independent representations plus related
//!   entropies, extropy and divergences;
//! * [`bounds`]: published inequalities as checkable reports;
//! * [`shape`]: monotonicity scans, aging classes and stochastic orders;
//! * [`estimation`]: plug-in estimators and a bootstrap goodness-of-fit test;
//! * [`cli`]: the `crie` command-line front end.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod dist;
pub mod entropy;
pub mod error;
pub mod estimation;
pub mod quadrature;
pub mod shape;
pub mod reference_table;
pub mod truncation;

pub use dist::{
    make_distribution, parse_distribution, Dist, DistExpr, Distribution, DistributionSpec,
    MonotoneMap,
};
pub use entropy::{crie, CrieMethod};
pub use error::{Error, Result};
pub use estimation::{bootstrap_gof, crikl_statistic, empirical_crie, GofResult, SampleData};
pub use quadrature::{integrate, QuadratureConfig, QuadratureResult};
pub use truncation::{TruncatedView, Window};
