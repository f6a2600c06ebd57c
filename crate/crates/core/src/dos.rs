//! Integer differences of squares and the linear Diophantine solver behind
//! witness corners.
//!
//! An integer `n` is `x^2 - y^2` iff `n mod 4 != 2`. Representations of a
//! nonzero `n` correspond to factorizations `n = s * t` with `s = t (mod 2)`
//! through `x = (s + t) / 2`, `y = (t - s) / 2`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{abs, add, add_small, exact_div, int, mul, neg, residue, sub, Int};

/// A pair `(x, y)` with `x^2 - y^2 = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DosRep<T> {
    x: T,
    y: T,
}

impl<T: Int> DosRep<T> {
    /// Checks `x^2 - y^2 = n`; `None` if it does not hold.
    pub fn new(x: T, y: T, n: &T) -> Result<Option<Self>> {
        let value = sub(&mul(&x, &x)?, &mul(&y, &y)?)?;
        Ok((value == *n).then_some(DosRep { x, y }))
    }

    pub fn x(&self) -> &T {
        &self.x
    }

    pub fn y(&self) -> &T {
        &self.y
    }

    pub fn into_pair(self) -> (T, T) {
        (self.x, self.y)
    }
}

/// A solution `(b, y)` of `b*s - y*t = r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSolution<T> {
    pub b: T,
    pub y: T,
}

pub fn is_dos<T: Int>(n: &T) -> bool {
    residue(n, 4) != 2
}

fn require_dos<T: Int>(n: &T) -> Result<()> {
    if is_dos(n) {
        Ok(())
    } else {
        Err(Error::NotDifferenceOfSquares(n.to_string()))
    }
}

/// A fixed representation: `((n+1)/2, (n-1)/2)` for odd `n`,
/// `(n/4 + 1, n/4 - 1)` for `4 | n`, `(0, 0)` for zero.
pub fn canonical_dos<T: Int>(n: &T) -> Result<DosRep<T>> {
    require_dos(n)?;
    let (x, y) = if n.is_zero() {
        (T::zero(), T::zero())
    } else if n.is_odd() {
        let k = exact_div(&add_small(n, -1)?, 2);
        (add_small(&k, 1)?, k)
    } else {
        let k = exact_div(n, 4);
        (add_small(&k, 1)?, add_small(&k, -1)?)
    };
    DosRep::new(x, y, n)?
        .ok_or_else(|| Error::Internal(format!("canonical representation of {n} failed to verify")))
}

/// Every `(x, y)` with `x^2 - y^2 = n`, sorted ascending.
///
/// Zero has infinitely many representations `(t, t)` and `(t, -t)`; they are
/// truncated to `|t| <= zero_bound`.
pub fn enumerate_dos<T: Int>(n: &T, zero_bound: u32) -> Result<Vec<DosRep<T>>> {
    require_dos(n)?;
    let mut reps = BTreeSet::new();
    if n.is_zero() {
        let bound = i64::from(zero_bound);
        for t in -bound..=bound {
            let t: T = int(t);
            reps.insert(DosRep { x: t.clone(), y: t.clone() });
            reps.insert(DosRep { x: t.clone(), y: neg(&t)? });
        }
        return Ok(reps.into_iter().collect());
    }

    let magnitude = abs(n)?;
    let mut d = T::one();
    // d <= |n| / d avoids squaring d near the top of the range
    while d <= magnitude.div_floor(&d) {
        let (cofactor, rem) = magnitude.div_rem(&d);
        if rem.is_zero() {
            for s in [d.clone(), cofactor.clone()] {
                for s in [s.clone(), neg(&s)?] {
                    let t = n.div_floor(&s);
                    if (s.is_odd()) == (t.is_odd()) {
                        let x = exact_div(&add(&s, &t)?, 2);
                        let y = exact_div(&sub(&t, &s)?, 2);
                        reps.insert(DosRep { x, y });
                    }
                }
            }
        }
        d = add_small(&d, 1)?;
    }
    Ok(reps.into_iter().collect())
}

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd_nonneg<T: Int>(s: &T, t: &T) -> Result<T> {
    let (mut a, mut b) = (s.clone(), t.clone());
    while !b.is_zero() {
        // `MIN % -1` traps on fixed-width types
        let rem = if is_unit(&b) {
            T::zero()
        } else {
            a.mod_floor(&b)
        };
        a = b;
        b = rem;
    }
    abs(&a)
}

fn is_unit<T: Int>(v: &T) -> bool {
    v.is_one() || *v == int::<T>(-1)
}

/// Extended Euclid: `(g, u, v)` with `u*s + v*t = g`, `g >= 0`.
fn extended_gcd<T: Int>(s: &T, t: &T) -> Result<(T, T, T)> {
    let (mut old_r, mut r) = (s.clone(), t.clone());
    let (mut old_u, mut u) = (T::one(), T::zero());
    let (mut old_v, mut v) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = if r.is_one() {
            old_r.clone()
        } else if r == int::<T>(-1) {
            neg(&old_r)?
        } else {
            old_r.div_floor(&r)
        };
        let next_r = sub(&old_r, &mul(&q, &r)?)?;
        old_r = std::mem::replace(&mut r, next_r);
        let next_u = sub(&old_u, &mul(&q, &u)?)?;
        old_u = std::mem::replace(&mut u, next_u);
        let next_v = sub(&old_v, &mul(&q, &v)?)?;
        old_v = std::mem::replace(&mut v, next_v);
    }
    if old_r.is_negative() {
        Ok((neg(&old_r)?, neg(&old_u)?, neg(&old_v)?))
    } else {
        Ok((old_r, old_u, old_v))
    }
}

/// Number of `h`-steps `k` such that `value - k*h` lies in `(-h/2, h/2]`.
fn centered_steps<T: Int>(value: &T, h: &T) -> Result<T> {
    let (steps, reduced) = value.div_mod_floor(h);
    if exceeds_half(&reduced, h) {
        add_small(&steps, 1)
    } else {
        Ok(steps)
    }
}

/// `2 * reduced > h` without overflowing `2 * reduced`.
fn exceeds_half<T: Int>(reduced: &T, h: &T) -> bool {
    *reduced > h.clone() - reduced.clone()
}

/// Solves `b*s - y*t = r`.
///
/// Returns `None` iff `gcd(s, t)` does not divide `r`; for `s = t = 0` that
/// means `r != 0`, and `(0, 0)` is returned when `r = 0`.
///
/// Solutions form the family `(b + k*t/g, y + k*s/g)`; the one returned has
/// `b` reduced into `(-h/2, h/2]` with `h = |t|/g`. When `t = 0`, `y` is
/// reduced the same way instead, which makes it zero.
pub fn solve_linear<T: Int>(s: &T, t: &T, r: &T) -> Result<Option<LinearSolution<T>>> {
    if s.is_zero() && t.is_zero() {
        return Ok(r.is_zero().then(|| LinearSolution { b: T::zero(), y: T::zero() }));
    }
    let (g, u, v) = extended_gcd(s, t)?;
    let (scale, rem) = r.div_rem(&g);
    if !rem.is_zero() {
        return Ok(None);
    }
    // u*s + v*t = g  =>  (u*scale)*s - (-v*scale)*t = r
    let mut b = mul(&u, &scale)?;
    let mut y = neg(&mul(&v, &scale)?)?;

    // general solution: (b + k*t/g, y + k*s/g)
    let step_b = t.div_floor(&g);
    let step_y = s.div_floor(&g);
    if !step_b.is_zero() {
        let h = abs(&step_b)?;
        let k = centered_steps(&b, &h)?;
        let k = if step_b.is_negative() { k } else { neg(&k)? };
        b = add(&b, &mul(&k, &step_b)?)?;
        y = add(&y, &mul(&k, &step_y)?)?;
    } else {
        let h = abs(&step_y)?;
        let k = centered_steps(&y, &h)?;
        let k = if step_y.is_negative() { k } else { neg(&k)? };
        y = add(&y, &mul(&k, &step_y)?)?;
    }

    let lhs = sub(&mul(&b, s)?, &mul(&y, t)?)?;
    if lhs != *r {
        return Err(Error::Internal(format!(
            "linear solution ({b}, {y}) fails {s}*b - {t}*y = {r}"
        )));
    }
    Ok(Some(LinearSolution { b, y }))
}
