//! Exact-arithmetic kernel for verifying the torus-equivariant construction
//! of a Cox ring of a four-dimensional symplectic quotient resolution.
//!
//! Everything in this crate is exact: rationals are arbitrary precision, the
//! coefficient field is the degree-4 cyclotomic field `Q(z)` with
//! `z^4 - z^2 + 1 = 0`, and all geometry is integral lattice geometry.
//! No floating point appears anywhere.
//!
//! All values are immutable and all operations are pure functions, so every
//! API here is safe to call concurrently.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod coxoracle;
pub mod cyclotomic;
pub mod cycmat;
pub mod equivariant;
pub mod fingroup;
pub mod gitquot;
pub mod intmat;
pub mod lattice;
pub mod modp;
pub mod poly;
pub mod radical;
pub mod rational;
pub mod seeds;
pub mod textfmt;

pub use cyclotomic::CycNum;
pub use rational::Rational;
