//! Exact polynomial arithmetic: univariate, bivariate and homogeneous
//! trivariate layers used throughout the toolkit.

pub mod bi;
pub mod homog;
pub mod uni;

pub use bi::BiPoly;
pub use homog::HPoly;
pub use uni::UniPoly;
