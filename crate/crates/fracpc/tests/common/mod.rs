//! Shared test support: an adaptive-quadrature oracle for the closed-form
//! product-integration weights, kept independent of the library's bracket
//! algebra.

pub mod oracle;
