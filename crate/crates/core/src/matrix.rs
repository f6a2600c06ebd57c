//! Upper-triangular 2x2 integer matrices.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::scalar::{add, mul, sub, Int};

/// The matrix `[[a, b], [0, c]]`. The zero below the diagonal is implicit.
///
/// Serializes as the triple `[a, b, c]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UTMat<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

/// A matrix `[[p, r], [0, q]]` whose representability is being decided.
pub type Target<T> = UTMat<T>;

impl<T: Int> UTMat<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        UTMat { a, b, c }
    }

    pub fn zero() -> Self {
        UTMat::new(T::zero(), T::zero(), T::zero())
    }

    /// Top-left entry of a target.
    pub fn p(&self) -> &T {
        &self.a
    }

    /// Corner entry of a target.
    pub fn r(&self) -> &T {
        &self.b
    }

    /// Bottom-right entry of a target.
    pub fn q(&self) -> &T {
        &self.c
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        Ok(UTMat::new(
            sub(&self.a, &other.a)?,
            sub(&self.b, &other.b)?,
            sub(&self.c, &other.c)?,
        ))
    }

    /// Full matrix product, used to cross-check [`square`].
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        // [[a, b], [0, c]] * [[a', b'], [0, c']] = [[aa', ab' + bc'], [0, cc']]
        Ok(UTMat::new(
            mul(&self.a, &other.a)?,
            add(&mul(&self.a, &other.b)?, &mul(&self.b, &other.c)?)?,
            mul(&self.c, &other.c)?,
        ))
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> UTMat<U> {
        UTMat {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
        }
    }
}

impl<T: Int> From<(T, T, T)> for UTMat<T> {
    fn from((a, b, c): (T, T, T)) -> Self {
        UTMat::new(a, b, c)
    }
}

impl<T: fmt::Display> fmt::Display for UTMat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [0, {}]]", self.a, self.b, self.c)
    }
}

impl<T: Serialize> Serialize for UTMat<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.a, &self.b, &self.c).serialize(s)
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for UTMat<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (a, b, c) = <(T, T, T)>::deserialize(d)?;
        Ok(UTMat { a, b, c })
    }
}

/// `M^2 = [[a^2, b(a + c)], [0, c^2]]`.
pub fn square<T: Int>(m: &UTMat<T>) -> Result<UTMat<T>> {
    Ok(UTMat::new(
        mul(&m.a, &m.a)?,
        mul(&m.b, &add(&m.a, &m.c)?)?,
        mul(&m.c, &m.c)?,
    ))
}

/// `A^2 - B^2` for `A = [[a, b], [0, d]]`, `B = [[x, y], [0, u]]`:
/// `[[a^2 - x^2, b(a + d) - y(x + u)], [0, d^2 - u^2]]`.
pub fn diff_of_squares<T: Int>(lhs: &UTMat<T>, rhs: &UTMat<T>) -> Result<UTMat<T>> {
    let (a, b, d) = (&lhs.a, &lhs.b, &lhs.c);
    let (x, y, u) = (&rhs.a, &rhs.b, &rhs.c);
    Ok(UTMat::new(
        sub(&mul(a, a)?, &mul(x, x)?)?,
        sub(&mul(b, &add(a, d)?)?, &mul(y, &add(x, u)?)?)?,
        sub(&mul(d, d)?, &mul(u, u)?)?,
    ))
}

/// True iff `A^2 - B^2 = T` exactly.
pub fn verify_witness<T: Int>(lhs: &UTMat<T>, rhs: &UTMat<T>, target: &Target<T>) -> Result<bool> {
    Ok(diff_of_squares(lhs, rhs)? == *target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64) -> UTMat<i64> {
        UTMat::new(a, b, c)
    }

    #[test]
    fn square_examples() {
        assert_eq!(square(&m(2, 3, 1)).unwrap(), m(4, 9, 1));
        assert_eq!(square(&m(0, 0, 0)).unwrap(), m(0, 0, 0));
        assert_eq!(square(&m(1, 5, -1)).unwrap(), m(1, 0, 1));
    }

    #[test]
    fn diff_of_squares_examples() {
        assert_eq!(diff_of_squares(&m(1, 0, 2), &m(0, -7, 1)).unwrap(), m(1, 7, 3));
        assert_eq!(diff_of_squares(&m(5, 9, -3), &m(5, 9, -3)).unwrap(), m(0, 0, 0));
        assert_eq!(diff_of_squares(&m(2, 1, -1), &m(-2, 0, 1)).unwrap(), m(0, 1, 0));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_witness(&m(1, 0, 2), &m(0, -7, 1), &m(1, 7, 3)).unwrap());
        assert!(!verify_witness(&m(1, 0, 2), &m(0, -7, 1), &m(1, 7, 4)).unwrap());
        assert!(verify_witness(&Mat::zero(), &Mat::zero(), &Mat::zero()).unwrap());
    }

    type Mat = UTMat<i64>;

    #[test]
    fn overflow_is_reported() {
        let big = m(i64::MAX, 0, 1);
        assert!(matches!(square(&big), Err(Error::Overflow)));
        assert!(matches!(
            diff_of_squares(&m(1, i64::MAX, 1), &Mat::zero()),
            Err(Error::Overflow)
        ));
        // 3037000500^2 just exceeds i64::MAX.
        assert!(matches!(square(&m(0, 0, 3_037_000_500)), Err(Error::Overflow)));
        assert!(square(&m(0, 0, 3_037_000_499)).is_ok());
    }

    #[test]
    fn bigint_backend_has_no_ceiling() {
        let big = BigInt::from(i64::MAX);
        let a = UTMat::new(big.clone(), BigInt::from(1), big.clone());
        let sq = square(&a).unwrap();
        assert_eq!(sq.a, &big * &big);
        assert_eq!(sq.b, &big + &big);
    }

    #[test]
    fn serde_as_triple() {
        let s = serde_json::to_string(&m(1, -7, 3)).unwrap();
        assert_eq!(s, "[1,-7,3]");
        let back: Mat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m(1, -7, 3));
    }

    proptest! {
        #[test]
        fn square_matches_self_product(a in -10_000i64..10_000, b in -10_000i64..10_000, c in -10_000i64..10_000) {
            let x = m(a, b, c);
            prop_assert_eq!(square(&x).unwrap(), x.checked_mul(&x).unwrap());
            prop_assert_eq!(diff_of_squares(&x, &Mat::zero()).unwrap(), square(&x).unwrap());
            prop_assert_eq!(diff_of_squares(&x, &x).unwrap(), Mat::zero());
        }

        #[test]
        fn diff_matches_scalar_arithmetic(
            a in -1000i64..1000, b in -1000i64..1000, d in -1000i64..1000,
            x in -1000i64..1000, y in -1000i64..1000, u in -1000i64..1000,
        ) {
            let lhs = m(a, b, d);
            let rhs = m(x, y, u);
            let diff = diff_of_squares(&lhs, &rhs).unwrap();
            prop_assert_eq!(diff.a, a * a - x * x);
            prop_assert_eq!(diff.c, d * d - u * u);
            prop_assert_eq!(diff, square(&lhs).unwrap().checked_sub(&square(&rhs).unwrap()).unwrap());
        }
    }
}
