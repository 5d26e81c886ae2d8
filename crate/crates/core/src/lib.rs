//! Permutation dimensions of modules over the group algebra of a cyclic
//! group of prime order.
//!
//! A `k C_p`-module is a vector space over `F_p` with a nilpotent operator
//! `T = g - 1` satisfying `T^p = 0`. Its isomorphism class is the multiset of
//! Jordan block sizes, and its permutation dimension (the minimal length of a
//! resolution by sums of `M_1` and `M_p`) equals the p-distance computed in
//! [`pdist`]. [`resolve`] builds such resolutions explicitly and [`oracle`]
//! checks minimality by exhaustive search on small instances.

pub mod cli;
pub mod error;
pub mod exactlin;
pub mod io;
pub mod kmod;
pub mod oracle;
pub mod pdist;
pub mod resolve;

pub use error::{Error, Result};
