//! Brute-force search over representations of the diagonal.
//!
//! `T` is representable iff some `p = a^2 - x^2`, `q = d^2 - u^2` make
//! `b(a + d) - y(x + u) = r` solvable. This module walks every such
//! quadruple directly and never consults [`crate::classify`] or the witness
//! constructions, so the two can be checked against each other.
//!
//! Zero has infinitely many representations; they are truncated to
//! `|t| <= zero_bound`, so results for a zero diagonal are complete only
//! relative to that bound.

use crate::dos::{enumerate_dos, gcd_nonneg, is_dos, solve_linear};
use crate::error::{Error, Result};
use crate::matrix::{Target, UTMat};
use crate::scalar::{add, Int};
use crate::witness::Witness;

/// First verified witness found by searching, or `None`.
pub fn brute_decide<T: Int>(target: &Target<T>, zero_bound: u32) -> Result<Option<Witness<T>>> {
    let (p, r, q) = (target.p(), target.r(), target.q());
    if !is_dos(p) || !is_dos(q) {
        return Ok(None);
    }
    let top = enumerate_dos(p, zero_bound)?;
    let bottom = enumerate_dos(q, zero_bound)?;
    for rep_p in &top {
        for rep_q in &bottom {
            let (a, x) = (rep_p.x(), rep_p.y());
            let (d, u) = (rep_q.x(), rep_q.y());
            if let Some(sol) = solve_linear(&add(a, d)?, &add(x, u)?, r)? {
                let lhs = UTMat::new(a.clone(), sol.b, d.clone());
                let rhs = UTMat::new(x.clone(), sol.y, u.clone());
                return Witness::new(lhs, rhs, target).map(Some);
            }
        }
    }
    Ok(None)
}

/// `g(p, q)`: least positive `gcd(a + d, x + u)` over all representations.
pub fn brute_g<T: Int>(p: &T, q: &T, zero_bound: u32) -> Result<T> {
    let top = enumerate_dos(p, zero_bound)?;
    let bottom = enumerate_dos(q, zero_bound)?;
    let mut best: Option<T> = None;
    for rep_p in &top {
        for rep_q in &bottom {
            let g = gcd_nonneg(&add(rep_p.x(), rep_q.x())?, &add(rep_p.y(), rep_q.y())?)?;
            if g.is_positive() && best.as_ref().is_none_or(|b| g < *b) {
                best = Some(g);
            }
        }
    }
    best.ok_or_else(|| Error::Internal(format!("no representation pair of ({p}, {q}) has positive gcd")))
}
