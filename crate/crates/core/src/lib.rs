//! Symmetric (2,1)-latin cubes.
//!
//! A (2,1)-latin cube of order `n` is an `n × n × n` array on `n²` symbols
//! in which every layer parallel to a face holds each symbol once. It is
//! symmetric when `L_ijl = L_jli = L_lij` for distinct indices and
//! `L_iij = L_jji`, `L_iji = L_jij`, `L_ijj = L_jii`.
//!
//! Such a cube exists exactly for `n = 1` and `n ≡ 0, 2 (mod 3)`, `n ≠ 3`.
//! This crate builds one for every such order:
//!
//! 1. [`equations::solve_system`] picks how many singletons, pairs and
//!    triples each of the `n²` parallel classes starts with.
//! 2. [`lifting`] places the points `2..n` one at a time, each step rounding
//!    a fractional circulation ([`circulation::round_integral`]).
//! 3. [`convert::partition_to_cube`] reads the parallel classes as a cube.
//!
//! ```
//! use symcube::{construct_cube, is_latin, is_symmetric};
//!
//! let cube = construct_cube(5).unwrap();
//! assert!(is_latin(&cube).passed());
//! assert!(is_symmetric(&cube).passed());
//! ```

pub mod blocks;
pub mod circulation;
pub mod cli;
pub mod convert;
pub mod cube;
pub mod equations;
pub mod lifting;
pub mod oracle;

pub use blocks::{check_family_profile, Block, ParallelClass, Partition, Split, SplitFamily};
pub use convert::{cube_to_partition, partition_to_cube};
pub use cube::{is_latin, is_symmetric, LatinCube};
pub use equations::{feasible, solve_system, SystemSolution};
pub use lifting::{construct_cube, construct_partition, ConstructOptions, LiftError};
