//! Exact computational modular representation theory of finite groups.
//!
//! The crate computes, entirely over finite fields and without floating
//! point, the standard homological invariants of a finite group `G` at a
//! prime `p` dividing its order:
//!
//! * dense exact linear algebra over `F_p` and `F_{p^2}` ([`field`], [`matrix`]),
//! * permutation-group structure: conjugacy, centralizers, Sylow subgroups,
//!   normal p-complements, the poset of elementary abelian subgroups ([`perm`], [`group`]),
//! * modules over the group algebra `kG`: duals, tensors, restriction and
//!   induction, projectivity, syzygies, block decomposition ([`algebra`], [`module`], [`blocks`]),
//! * minimal and complete (doubly infinite) resolutions, Tate cohomology
//!   windows, cup products, restriction maps, parameter-system degree bounds,
//!   gap scans ([`resolution`], [`ext`], [`ring`]),
//! * rank varieties, module supports, the nucleus, and the resulting
//!   classification of a group at a prime ([`variety`], [`nucleus`]),
//! * a deterministic report layer and group catalog backing the command line
//!   tool ([`catalog`], [`report`], [`verify`]).
//!
//! Everything is deterministic: all randomized searches draw from a caller
//! supplied seed which is recorded in any certificate or report they touch.

pub mod algebra;
pub mod blocks;
pub mod catalog;
pub mod error;
pub mod ext;
pub mod field;
pub mod fixture;
pub mod group;
pub mod matrix;
pub mod module;
pub mod nucleus;
pub mod perm;
pub mod poly;
pub mod report;
pub mod resolution;
pub mod ring;
pub mod variety;
pub mod verify;

pub use error::{Error, Result};
