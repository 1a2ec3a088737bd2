//! Exact arithmetic over Z, Z/p^k, F_p, Q and Z_p.

pub mod fixed;
pub mod fp;
pub mod int;
pub mod lll;
pub mod matrix;
pub mod modmat;
pub mod padic;
pub mod poly;
pub mod real;
