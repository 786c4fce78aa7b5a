//! Exact Redheffer matrices of finite posets with a 0 element.
//!
//! The classical Redheffer matrix `R_n` has `(i, j)` entry 1 when `i | j`
//! or `j = 1`. More generally, the Redheffer matrix of a poset is its zeta
//! matrix with the 0 element's column replaced by ones. This crate builds
//! both and evaluates them exactly:
//!
//! * `det R(P) = sum_x mu(0, x)`, which for `R_n` is the Mertens function;
//! * `perm R(P)` is the number of chains through 0, which for `R_n` is a
//!   partial sum of ordered factorization counts;
//! * the contributing permutations are single cycles through 0 along a chain;
//! * `R(P)^-1` has a closed form in the Möbius function.

pub mod counting;
pub mod error;
pub mod exactmat;
pub mod numtheory;
pub mod poset;
pub mod redheffer;

pub use counting::{
    count_chains_through_zero, enumerate_contributing_permutations, signed_chain_sum,
    signed_chain_sum_by_max, verify_contributing_support, Chain, ContributingPermutation,
    SupportReport,
};
pub use error::{Error, Result};
pub use exactmat::{det_bareiss, is_identity, mat_mul, permanent_ryser, IntMatrix, Matrix, RatMatrix};
pub use numtheory::{
    growth_exponent_estimate, mertens, moebius_sieve, ordered_factorization_counts,
    permanent_formula, signed_factorization_sum, FactorCountTable, MoebiusSieve,
};
pub use poset::{boolean_lattice, build_poset, divisor_poset, MoebiusTable, Poset, PosetFile};
pub use redheffer::{
    det_via_moebius, redheffer_classic, redheffer_general, redheffer_inverse,
    sherman_morrison_inverse, RedhefferMatrix,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
