//! Exact Schur expansions of chromatic symmetric functions of poset
//! incomparability graphs, and certified decisions of the "nice"
//! chain-partition property.
//!
//! The crate is organised bottom-up:
//!
//! - [`partition`]: integer partitions, weak compositions, dominance order and
//!   the exact factorial/multinomial kernel.
//! - [`poset`]: finite posets (chains, products of chains, boolean algebras,
//!   the `B_{3,n}` lattices, ordinal sums), the builder DSL and
//!   incomparability graphs.
//! - [`rimhook`]: special rim hook tabloids, signed inverse Kostka
//!   coefficients and Kostka numbers.
//! - [`chain_count`]: counts of semi-ordered chain partitions and stable
//!   partitions, including the closed form for products of two chains.
//! - [`schur`]: monomial and Schur expansions of `X_{inc(P)}`.
//! - [`nice`]: chain-partition certificates, the nice-property decision
//!   procedure and the constructive ordinal-sum algorithm.
//!
//! All arithmetic is exact ([`BigInt`]); nothing in this crate uses floating
//! point.

pub mod chain_count;
pub mod error;
pub mod nice;
pub mod partition;
pub mod poset;
pub mod rimhook;
pub mod schur;
mod search;

pub use num_bigint::BigInt;

pub use chain_count::{
    count_scp, count_semiordered_stable_partitions, forced_content_prefix,
    proof_case_closed_forms, scp_closed_form, ProofCase, StaircaseContext,
};
pub use error::{Error, Result};
pub use nice::{
    chain_partition_exists, is_nice, ordinal_sum_chain_partition, parameterized_chain_family,
    staircase_type, ChainFamily, ChainFamilyParams, ChainPartitionCertificate, NiceOptions,
    NiceVerdict, NiceWitness, OrdinalSumPartition,
};
pub use partition::{
    dominance_leq, factorial, multinomial, partitions_of, weak_compositions, MultiplicityProfile,
    Partition, WeakComposition,
};
pub use poset::{Graph, Poset, PosetSpec};
pub use rimhook::{
    enumerate_srht, inverse_kostka, inverse_kostka_row, kostka_number, RimHook,
    SpecialRimHookTabloid, TabloidFamily,
};
pub use schur::{
    monomial_expansion, pieri_shift_coefficient, rho_shape, schur_coefficient, schur_expansion,
    theorem41_coefficient, MonomialExpansion, SchurExpansion, SchurMethod,
};
pub use search::SearchStats;
