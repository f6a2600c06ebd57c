//! Explicit witnesses `(A, B)` with `A^2 - B^2 = T`.
//!
//! Each case of [`CaseTag`] fixes the diagonals `(a, x, d, u)` of
//! `A = [[a, b], [0, d]]` and `B = [[x, y], [0, u]]` by a closed form in the
//! parameters `k, n`; the corners then solve `b(a + d) - y(x + u) = r`.
//! The closed forms are chosen so that `gcd(a + d, x + u) = m(p, q)`, which is
//! exactly what the classification allows.

use serde::{Deserialize, Serialize};

use crate::classify::{decide, CaseTag, Verdict};
use crate::dos::solve_linear;
use crate::error::{Error, Result};
use crate::matrix::{diff_of_squares, Target, UTMat};
use crate::scalar::{add, add_small, exact_div, mul_small, neg, Int};

/// A pair with `A^2 - B^2` equal to the target it was built for.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness<T> {
    #[serde(rename = "A")]
    pub a: UTMat<T>,
    #[serde(rename = "B")]
    pub b: UTMat<T>,
}

impl<T: Int> Witness<T> {
    /// Checks `a^2 - b^2 = target` before accepting the pair.
    pub fn new(a: UTMat<T>, b: UTMat<T>, target: &Target<T>) -> Result<Self> {
        let got = diff_of_squares(&a, &b)?;
        if got != *target {
            return Err(Error::Internal(format!(
                "witness A = {a}, B = {b} gives {got}, expected {target}"
            )));
        }
        Ok(Witness { a, b })
    }

    /// `A^2 - B^2`.
    pub fn target(&self) -> Result<Target<T>> {
        diff_of_squares(&self.a, &self.b)
    }
}

/// Builds a verified witness, refusing targets that [`decide`] rejects.
pub fn build<T: Int>(target: &Target<T>) -> Result<Witness<T>> {
    match decide(target) {
        Verdict::Representable { case, .. } => build_for_case(target, &case),
        Verdict::NotRepresentable { obstruction } => Err(Error::NotRepresentable(obstruction)),
    }
}

pub(crate) fn build_for_case<T: Int>(target: &Target<T>, case: &CaseTag<T>) -> Result<Witness<T>> {
    let [a, x, d, u] = diagonals(case)?;
    let s = add(&a, &d)?;
    let t = add(&x, &u)?;
    let Some(corner) = solve_linear(&s, &t, target.r())? else {
        return Err(Error::Internal(format!(
            "{case}: corner equation b*{s} - y*{t} = {} has no solution",
            target.r()
        )));
    };
    Witness::new(UTMat::new(a, corner.b, d), UTMat::new(x, corner.y, u), target)
}

/// `[a, x, d, u]` for the case; `a^2 - x^2 = p` and `d^2 - u^2 = q`.
fn diagonals<T: Int>(case: &CaseTag<T>) -> Result<[T; 4]> {
    let plus = |v: &T, k: i64| add_small(v, k);
    match case {
        // (k+1)^2 - k^2 = 2k+1
        CaseTag::BothOdd { k, n } => Ok([plus(k, 1)?, k.clone(), plus(n, 1)?, n.clone()]),
        // a + d = k - n, x + u = k - n + 1
        CaseTag::OddTimesFour { k, n } => Ok([
            plus(k, 1)?,
            k.clone(),
            neg(&plus(n, 1)?)?,
            neg(&plus(n, -1)?)?,
        ]),
        CaseTag::FourTimesOdd { k, n } => Ok([
            neg(&plus(k, 1)?)?,
            neg(&plus(k, -1)?)?,
            plus(n, 1)?,
            n.clone(),
        ]),
        CaseTag::BothFour { k, n, i, j } => match (i, j) {
            // p = 16K, q = 16N; a + d = 2K - 4N + 1, x + u = 2K - 4N - 1
            (0, 0) => {
                let big_k = exact_div(k, 4);
                let big_n4 = n.clone(); // 4N
                Ok([
                    mul_small(&plus(&big_k, 1)?, 2)?,
                    mul_small(&plus(&big_k, -1)?, 2)?,
                    neg(&plus(&big_n4, 1)?)?,
                    neg(&plus(&big_n4, -1)?)?,
                ])
            }
            // p = 16K, q = 16N + 8; a + d = 2K - 4N - 1, x + u = 2K - 4N - 3
            (0, 2) => {
                let big_k = exact_div(k, 4);
                let big_n4 = plus(n, -2)?; // 4N
                Ok([
                    mul_small(&plus(&big_k, 1)?, 2)?,
                    mul_small(&plus(&big_k, -1)?, 2)?,
                    neg(&plus(&big_n4, 3)?)?,
                    neg(&plus(&big_n4, 1)?)?,
                ])
            }
            // mirror of (0, 2): p = 16K + 8, q = 16N
            (2, 0) => {
                let big_k4 = plus(k, -2)?; // 4K
                let big_n = exact_div(n, 4);
                Ok([
                    neg(&plus(&big_k4, 3)?)?,
                    neg(&plus(&big_k4, 1)?)?,
                    mul_small(&plus(&big_n, 1)?, 2)?,
                    mul_small(&plus(&big_n, -1)?, 2)?,
                ])
            }
            // a + d = k + n + 2, x + u = k + n - 2, gcd = gcd(k + n + 2, 4)
            _ => Ok([plus(k, 1)?, plus(k, -1)?, plus(n, 1)?, plus(n, -1)?]),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Obstruction;
    use crate::dos::gcd_nonneg;
    use crate::matrix::verify_witness;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn t(p: i64, r: i64, q: i64) -> UTMat<i64> {
        UTMat::new(p, r, q)
    }

    fn m(a: i64, b: i64, c: i64) -> UTMat<i64> {
        UTMat::new(a, b, c)
    }

    #[test]
    fn odd_diagonal_example() {
        let w = build(&t(1, 7, 3)).unwrap();
        assert_eq!(w.a, m(1, 0, 2));
        assert_eq!(w.b, m(0, -7, 1));
    }

    #[test]
    fn mixed_example() {
        let w = build(&t(5, 3, 4)).unwrap();
        // diagonals (3, 2, -2, 0), corner b - 2y = 3
        assert_eq!((w.a.a, w.b.a, w.a.c, w.b.c), (3, 2, -2, 0));
        assert_eq!(w.a.b - 2 * w.b.b, 3);
        assert!(verify_witness(&w.a, &w.b, &t(5, 3, 4)).unwrap());
    }

    #[test]
    fn sixteen_k_example() {
        let w = build(&t(0, 1, 0)).unwrap();
        assert_eq!((w.a.a, w.b.a, w.a.c, w.b.c), (2, -2, -1, 1));
        assert_eq!(w.a.b + w.b.b, 1);
        assert!(verify_witness(&w.a, &w.b, &t(0, 1, 0)).unwrap());
    }

    #[test]
    fn generic_four_example() {
        let w = build(&t(4, 4, 4)).unwrap();
        assert_eq!(w.a, m(2, 1, 2));
        assert_eq!(w.b, m(0, 0, 0));
    }

    #[test]
    fn special_constructions_have_unit_gcd() {
        for p4 in (-400i64..=400).step_by(4) {
            for q4 in (-400i64..=400).step_by(4) {
                let case = CaseTag::of(&p4, &q4).unwrap();
                let CaseTag::BothFour { i, j, .. } = case else { unreachable!() };
                if matches!((i, j), (0, 0) | (0, 2) | (2, 0)) {
                    let [a, x, d, u] = diagonals(&case).unwrap();
                    assert_eq!(a * a - x * x, p4);
                    assert_eq!(d * d - u * u, q4);
                    assert_eq!(gcd_nonneg(&(a + d), &(x + u)).unwrap(), 1, "({p4}, {q4})");
                }
            }
        }
    }

    #[test]
    fn box_witnesses_verify_and_stay_small() {
        for p in -50i64..=50 {
            for q in -50i64..=50 {
                for r in -50i64..=50 {
                    let target = t(p, r, q);
                    match decide(&target) {
                        Verdict::Representable { .. } => {
                            let w = build(&target).unwrap();
                            assert!(verify_witness(&w.a, &w.b, &target).unwrap());
                            let limit = (p.abs() + q.abs()) / 2 + r.abs() + 4;
                            for e in [w.a.a, w.a.b, w.a.c, w.b.a, w.b.b, w.b.c] {
                                assert!(e.abs() <= limit, "{target}: {e} > {limit}");
                            }
                        }
                        Verdict::NotRepresentable { obstruction } => {
                            assert!(matches!(
                                build(&target),
                                Err(Error::NotRepresentable(o)) if o == obstruction
                            ));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn refuses_rejected_targets() {
        assert!(matches!(
            build(&t(4, 2, 4)),
            Err(Error::NotRepresentable(Obstruction::CornerMod4))
        ));
        assert!(matches!(
            build(&t(6, 0, 1)),
            Err(Error::NotRepresentable(Obstruction::DiagonalMod4))
        ));
    }

    #[test]
    fn bigint_witness() {
        let p = BigInt::from(10).pow(30) * 16 + 8;
        let q = BigInt::from(10).pow(25) * 16;
        let target = UTMat::new(p, BigInt::from(-12_345), q);
        let w = build(&target).unwrap();
        assert_eq!(w.target().unwrap(), target);
    }

    proptest! {
        #[test]
        fn large_targets_verify(p in -1_000_000_000i64..1_000_000_000, q in -1_000_000_000i64..1_000_000_000, r in -1_000_000_000i64..1_000_000_000) {
            let target = t(p, r, q);
            match build(&target) {
                Ok(w) => prop_assert!(verify_witness(&w.a, &w.b, &target).unwrap()),
                Err(Error::NotRepresentable(_)) => prop_assert!(!decide(&target).is_representable()),
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
