//! Exact elementary-basis chromatic symmetric functions and a mechanical
//! e-positivity certifier for the spiders `S(4m+2, 2m, 1)`.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is pure: inputs are
//! immutable values, results are built fresh, and the heavy enumerations are
//! split into shards that an [`Executor`] may run in any order. Results are
//! always merged in shard order, so output is deterministic regardless of the
//! executor.
//!
//! Layout:
//!
//! * [`composition`] – compositions, partitions, surplus, weights, orderings.
//! * [`efun`] – symmetric functions in the `e` basis with big-integer
//!   coefficients, plus the power-sum conversion used by the oracle.
//! * [`graph`] – a brute-force edge-subset oracle for small graphs.
//! * [`expansions`] – closed forms for paths and three-legged spiders.
//! * [`decomposition`] – the algebraic split of `X_{S(4m+2,2m,1)}` into the
//!   pieces `X_1`, `X_0`, `Y`, `W` and the membership predicates.
//! * [`injections`] – the maps that pair negative terms of `W` with positive
//!   ones, their verification, and the end-to-end [`injections::Certificate`].
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod composition;
pub mod decomposition;
pub mod efun;
mod error;
mod exec;
pub mod expansions;
pub mod graph;
pub mod injections;

pub use composition::{Composition, Partition};
pub use efun::EFunction;
pub use error::{Error, Result};
pub use exec::{Executor, Sequential};
