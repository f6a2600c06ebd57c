//! The integer scalar the library is generic over.
//!
//! Fixed-width backends (`i64`, `i128`) go through checked arithmetic and
//! surface [`Error::Overflow`]; `BigInt` never overflows.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub trait Int:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Send
        + Sync
        + 'static
{
}

/// Small constant lifted into `T`.
pub fn int<T: Int>(v: i64) -> T {
    T::from_i64(v).expect("every backend holds i64 constants")
}

pub fn add<T: Int>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub fn sub<T: Int>(a: &T, b: &T) -> Result<T> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

pub fn mul<T: Int>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub fn neg<T: Int>(a: &T) -> Result<T> {
    sub(&T::zero(), a)
}

pub fn abs<T: Int>(a: &T) -> Result<T> {
    if a.is_negative() {
        neg(a)
    } else {
        Ok(a.clone())
    }
}

/// `a + k` for a small constant `k`.
pub fn add_small<T: Int>(a: &T, k: i64) -> Result<T> {
    add(a, &int(k))
}

pub fn mul_small<T: Int>(a: &T, k: i64) -> Result<T> {
    mul(a, &int(k))
}

/// Canonical residue of `n` modulo `m`, in `[0, m)` for negative `n` too.
pub fn residue<T: Int>(n: &T, m: u32) -> u32 {
    let m = T::from_u32(m).expect("modulus fits the backend");
    n.mod_floor(&m)
        .to_u32()
        .expect("canonical residue lies in [0, m)")
}

/// Exact quotient `n / d`; caller guarantees `d | n` and `d > 1`.
pub fn exact_div<T: Int>(n: &T, d: i64) -> T {
    let (q, rem) = n.div_mod_floor(&int(d));
    debug_assert!(rem.is_zero());
    q
}
