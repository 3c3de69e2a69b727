//! Exact arithmetic for symbol algebras `(a, b; n, K, ω)`: their trace forms,
//! exterior powers of those forms, and Witt classification over finite fields.
//!
//! The crate is `no_std` (with `alloc`). Enable `parallel` to spread the
//! exterior-power kernel over a rayon pool.

#![cfg_attr(not(test), no_std)]

extern crate alloc;
#[cfg(all(feature = "std", not(test)))]
extern crate std;

pub mod arith;
pub mod descriptor;
pub mod error;
pub mod exterior;
pub mod fields;
pub mod linalg;
pub mod paperlab;
pub mod quadform;
pub mod symalg;

pub use error::{Error, Result};
