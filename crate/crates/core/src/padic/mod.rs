//! Finite fields, truncated Witt vectors and the cyclotomic ring `Z_q[ζ_p]`.

pub mod artin_hasse;
pub mod cyclotomic;
pub mod field;
pub mod zq;

pub use artin_hasse::{artin_hasse_coeffs, artin_hasse_rational};
pub use cyclotomic::{PiElem, PiRing, Valuation};
pub use field::{FqElem, FqField};
pub use zq::{ZqElem, ZqRing};
