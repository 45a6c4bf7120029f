//! Binary Goppa codes, the Niederreiter cryptosystem and the Kal1
//! short-public-key variant, with toy-scale analysis tools.

pub mod binmat;
pub mod cw;
pub mod drbg;
pub mod error;
pub mod gf2m;
pub mod goppa;
pub mod isd;
pub mod kal1;
pub mod kat;
pub mod niederreiter;

pub use error::{Error, Result};
