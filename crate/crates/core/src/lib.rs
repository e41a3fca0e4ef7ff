//! Exact computation of the generic Newton polygon of twisted exponential
//! sums attached to one-variable polynomials `f(x) = a_0 + a_1 x + ... + a_d x^d`
//! over `F_q`, twisted by a multiplicative character `ω^{-u}`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is exact: rationals are
//! arbitrary precision, p-adic quantities are carried modulo `p^N` and every
//! valuation read back from them is checked against its precision cap.
//!
//! Module map:
//!
//! * [`twist`]: base-p digits of `u`, period `b`, the indicators `δ_∈`, `δ_<`
//!   and the slope function `ω(n)`.
//! * [`polygon`]: exact Newton polygons, the arithmetic and Hodge polygons,
//!   lower hulls and dominance reports.
//! * [`padic`]: finite fields, Teichmüller lifts in `Z_q / p^N`, the cyclotomic
//!   ring `Z_q[ζ_p]` with its π-adic valuation, Artin–Hasse coefficients.
//! * [`hasse`]: the u-twisted Hasse polynomials and their nonvanishing witness.
//! * [`lfunction`]: character sums by enumeration, the L-polynomial, the
//!   C-series and the end-to-end genericity check.
//! * [`dwork`]: the truncated Dwork matrix, its principal minors and the
//!   leading-term identity linking minors to Hasse polynomials.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod dwork;
pub mod error;
pub mod hasse;
pub mod lfunction;
pub mod padic;
pub mod polygon;
pub mod twist;

pub use error::{Error, Result};
pub use polygon::NewtonPolygon;
pub use twist::TwistData;
