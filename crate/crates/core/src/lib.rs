//! Permutations in transposition order.
//!
//! [`unrank`] maps a seed `s` to a factoradic code whose decoded permutation
//! differs from that of `s + 1` by a single transposition. Any seed can be
//! unranked directly in `O(n)` steps, so ranges can be split and enumerated in
//! parallel. [`rank`] inverts the map, [`distance`] measures transposition
//! distance, [`stream`] emits permutations with their swaps, and [`verify`]
//! checks the order's claimed properties over whole ranges.
//!
//! All algorithms are generic over the seed integer ([`SeedInt`]). Use
//! [`FastSeed`] when `n <= 20` and [`Seed`] otherwise; both produce identical
//! results wherever the native type can hold the seed.

pub mod distance;
pub mod error;
pub mod factoradic;
pub mod num;
pub mod stream;
pub mod unranker;
pub mod verify;

pub use distance::{bfs_distance, cayley_distance, seed_distance, DistanceQuery};
pub use error::{Error, Result};
pub use factoradic::{
    code_from_integer, decode_permutation, encode_permutation, integer_from_code, FactoradicCode, Permutation,
};
pub use num::SeedInt;
pub use stream::{delta, open_stream, open_stream_continuing, partition, DeltaStep, SeedRange, Transposition};
pub use unranker::{minimal_width, rank, unrank, unrank_permutation, unrank_traced, TraceStep, UnrankTrace};
pub use verify::{Property, Sampling, VerificationReport, Verifier};

/// Arbitrary-precision seed.
pub type Seed = num_bigint::BigUint;
/// Native seed, exact for widths up to 20.
pub type FastSeed = u64;
/// Native seed, exact for widths up to 34.
pub type WideSeed = u128;

pub type BigSeedRange = SeedRange<Seed>;
pub type FastSeedRange = SeedRange<FastSeed>;
pub type BigDeltaStep = DeltaStep<Seed>;
pub type FastDeltaStep = DeltaStep<FastSeed>;
pub type BigDistanceQuery = DistanceQuery<Seed>;
pub type FastDistanceQuery = DistanceQuery<FastSeed>;
