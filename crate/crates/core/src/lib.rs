//! Differences of squares in `UT2(Z)`, the ring of upper-triangular 2x2
//! integer matrices.
//!
//! A target `T = [[p, r], [0, q]]` is a difference `A^2 - B^2` of
//! upper-triangular integer matrices exactly when `p` and `q` are each a
//! difference of two integer squares and a small modulus `g(p, q)`, always
//! one of 1, 2 or 4, divides the corner `r`.
//!
//! - [`matrix`]: exact arithmetic on upper-triangular 2x2 matrices.
//! - [`dos`]: integer differences of squares and the linear Diophantine solver.
//! - [`classify`]: closed-form decision procedure and the modulus `g(p, q)`.
//! - [`witness`]: explicit `(A, B)` for every representable target.
//! - [`modular`]: exhaustive tables over `UT2(Z_m)`.
//! - [`oracle`]: brute-force search, independent of `classify` and `witness`.
//! - [`selfcheck`]: cross-validation harness tying all of the above together.
//!
//! Everything numeric is generic over [`Int`]; the aliases below pick the
//! common backends.

pub mod classify;
pub mod dos;
pub mod error;
pub mod matrix;
pub mod modular;
pub mod oracle;
pub mod scalar;
pub mod selfcheck;
pub mod witness;

pub use classify::{decide, decide_with_witness, m_of, CaseTag, Obstruction, Verdict};
pub use dos::{canonical_dos, enumerate_dos, gcd_nonneg, is_dos, solve_linear, DosRep, LinearSolution};
pub use error::{Error, Result};
pub use matrix::{diff_of_squares, square, verify_witness, Target, UTMat};
pub use modular::{
    emit_table, is_representable_mod, nonrep_diag4_mod16, representable_mod, ModMat, ModTable,
    Selection, TableFormat,
};
pub use oracle::{brute_decide, brute_g};
pub use scalar::Int;
pub use witness::{build, Witness};

/// Default truncation of the infinite family of representations of zero.
pub const DEFAULT_ZERO_BOUND: u32 = 8;

pub type BigInt = num_bigint::BigInt;

pub type Mat64 = UTMat<i64>;
pub type Mat128 = UTMat<i128>;
pub type MatBig = UTMat<BigInt>;

pub type Verdict64 = Verdict<i64>;
pub type VerdictBig = Verdict<BigInt>;

pub type Witness64 = Witness<i64>;
pub type WitnessBig = Witness<BigInt>;
