//! Cross-validation over a box `|p|, |q|, |r| <= bound`.
//!
//! For every target in the box the decision is compared against the
//! brute-force oracle, representable targets get a witness that must verify
//! and must survive reduction modulo 2, 3, 4, 8 and 16, and `m(p, q)` is
//! compared with the brute-force `g(p, q)`. The residue tables for moduli 4
//! and 16 are checked against their known shape as well.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{decide, m_of, Verdict};
use crate::dos::is_dos;
use crate::error::{Error, Result};
use crate::matrix::{verify_witness, UTMat};
use crate::modular::{representable_mod, ModMat, Selection};
use crate::oracle::{brute_decide, brute_g};
use crate::scalar::residue;
use crate::witness::build;

/// The moduli every representable integer matrix must stay representable under.
pub const HOMOMORPHISM_MODULI: [u32; 5] = [2, 3, 4, 8, 16];

/// One branch of the closed-form classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Branch {
    DiagonalMod4,
    OddSameClass,
    OddOtherClass,
    OddAndFour,
    FourCornerMod4,
    FourCornerMod2,
    FourFree,
}

impl Branch {
    pub const ALL: [Branch; 7] = [
        Branch::DiagonalMod4,
        Branch::OddSameClass,
        Branch::OddOtherClass,
        Branch::OddAndFour,
        Branch::FourCornerMod4,
        Branch::FourCornerMod2,
        Branch::FourFree,
    ];

    pub fn of(p: i64, q: i64) -> Branch {
        if !is_dos(&p) || !is_dos(&q) {
            return Branch::DiagonalMod4;
        }
        match (p & 1 == 1, q & 1 == 1) {
            (true, true) if residue(&p, 4) == residue(&q, 4) => Branch::OddSameClass,
            (true, true) => Branch::OddOtherClass,
            (true, false) | (false, true) => Branch::OddAndFour,
            (false, false) => match m_of(&p, &q) {
                Ok(4) => Branch::FourCornerMod4,
                Ok(2) => Branch::FourCornerMod2,
                _ => Branch::FourFree,
            },
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SelfCheckConfig {
    pub bound: i64,
    pub zero_bound: u32,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
}

impl Default for SelfCheckConfig {
    fn default() -> Self {
        SelfCheckConfig {
            bound: 12,
            zero_bound: crate::DEFAULT_ZERO_BOUND,
            workers: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// `None` for table-level failures.
    pub target: Option<UTMat<i64>>,
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.target {
            Some(t) => write!(f, "{} check failed at {t}: {}", self.check, self.detail),
            None => write!(f, "{} check failed: {}", self.check, self.detail),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SelfCheckReport {
    pub cases: u64,
    pub representable: u64,
    pub g_pairs: u64,
    pub branches: BTreeMap<Branch, u64>,
    pub mismatch: Option<Mismatch>,
}

impl SelfCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    /// Branches with no case in the box.
    pub fn uncovered(&self) -> Vec<Branch> {
        Branch::ALL
            .into_iter()
            .filter(|b| self.branches.get(b).copied().unwrap_or(0) == 0)
            .collect()
    }
}

pub type Decider<'a> = dyn Fn(&UTMat<i64>) -> Verdict<i64> + Sync + 'a;

/// Runs the suite with the library's own decision procedure.
pub fn run(config: SelfCheckConfig) -> Result<SelfCheckReport> {
    run_with(config, &decide)
}

/// Runs the suite against an arbitrary decision procedure.
pub fn run_with(config: SelfCheckConfig, decider: &Decider<'_>) -> Result<SelfCheckReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Internal(format!("cannot start workers: {e}")))?;
    pool.install(|| run_inner(config, decider))
}

fn run_inner(config: SelfCheckConfig, decider: &Decider<'_>) -> Result<SelfCheckReport> {
    let mut report = SelfCheckReport::default();
    if let Some(m) = check_tables()? {
        report.mismatch = Some(m);
        return Ok(report);
    }

    let bound = config.bound.abs();
    let slices: Vec<Result<SliceReport>> = (-bound..=bound)
        .into_par_iter()
        .map(|p| check_slice(p, bound, config.zero_bound, decider))
        .collect();

    for slice in slices {
        let slice = slice?;
        report.cases += slice.cases;
        report.representable += slice.representable;
        report.g_pairs += slice.g_pairs;
        for (b, n) in slice.branches {
            *report.branches.entry(b).or_default() += n;
        }
        if report.mismatch.is_none() {
            report.mismatch = slice.mismatch;
        }
    }
    Ok(report)
}

#[derive(Default)]
struct SliceReport {
    cases: u64,
    representable: u64,
    g_pairs: u64,
    branches: BTreeMap<Branch, u64>,
    mismatch: Option<Mismatch>,
}

fn check_slice(p: i64, bound: i64, zero_bound: u32, decider: &Decider<'_>) -> Result<SliceReport> {
    let mut out = SliceReport::default();
    for q in -bound..=bound {
        *out.branches.entry(Branch::of(p, q)).or_default() += 2 * bound as u64 + 1;
        if let Some(m) = check_g(p, q, zero_bound)? {
            out.mismatch = Some(m);
            return Ok(out);
        }
        if is_dos(&p) && is_dos(&q) {
            out.g_pairs += 1;
        }
        for r in -bound..=bound {
            let target = UTMat::new(p, r, q);
            out.cases += 1;
            if let Some(m) = check_target(&target, zero_bound, decider)? {
                out.mismatch = Some(m);
                return Ok(out);
            }
            if decider(&target).is_representable() {
                out.representable += 1;
            }
        }
    }
    Ok(out)
}

fn mismatch(target: &UTMat<i64>, check: &'static str, detail: String) -> Option<Mismatch> {
    Some(Mismatch {
        target: Some(target.clone()),
        check,
        detail,
    })
}

fn check_g(p: i64, q: i64, zero_bound: u32) -> Result<Option<Mismatch>> {
    if !is_dos(&p) || !is_dos(&q) {
        return Ok(None);
    }
    let closed = m_of(&p, &q)?;
    let searched = brute_g(&p, &q, zero_bound)?;
    if i64::from(closed) != searched {
        return Ok(mismatch(
            &UTMat::new(p, 0, q),
            "g-invariant",
            format!("m(p, q) = {closed} but brute-force g(p, q) = {searched}"),
        ));
    }
    Ok(None)
}

fn check_target(target: &UTMat<i64>, zero_bound: u32, decider: &Decider<'_>) -> Result<Option<Mismatch>> {
    let verdict = decider(target);
    let found = brute_decide(target, zero_bound)?;
    if let Some(w) = &found {
        if !verify_witness(&w.a, &w.b, target)? {
            return Ok(mismatch(target, "oracle-witness", format!("A = {}, B = {} fails", w.a, w.b)));
        }
    }
    if verdict.is_representable() != found.is_some() {
        return Ok(mismatch(
            target,
            "oracle",
            format!(
                "decision says {}, brute force says {}",
                describe(verdict.is_representable()),
                describe(found.is_some())
            ),
        ));
    }
    if !verdict.is_representable() {
        return Ok(None);
    }
    match build(target) {
        Ok(w) if verify_witness(&w.a, &w.b, target)? => {}
        Ok(w) => return Ok(mismatch(target, "witness", format!("A = {}, B = {} fails", w.a, w.b))),
        Err(e) => return Ok(mismatch(target, "witness", e.to_string())),
    }
    for m in HOMOMORPHISM_MODULI {
        let table = representable_mod(m)?;
        if !table.contains(ModMat::reduce(target, m)) {
            return Ok(mismatch(target, "modular", format!("not representable modulo {m}")));
        }
    }
    Ok(None)
}

fn describe(representable: bool) -> &'static str {
    if representable {
        "representable"
    } else {
        "not representable"
    }
}

/// The non-representable set modulo 4: `a = 2` or `c = 2`, plus
/// `(1, 1|3, 1)` and `(3, 1|3, 3)`.
pub fn expected_mod4_complement() -> Vec<ModMat> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let diag = a == 2 || c == 2;
                let odd_corner = a == c && a % 2 == 1 && b % 2 == 1;
                if diag || odd_corner {
                    out.push(ModMat::new(a, b, c));
                }
            }
        }
    }
    out
}

/// Required divisor of the corner for `(4i, r, 4j)` modulo 16.
pub fn mod16_corner_divisor(i: u32, j: u32) -> u32 {
    match (i, j) {
        (1, 1) | (3, 3) => 4,
        (1, 3) | (2, 2) | (3, 1) => 2,
        _ => 1,
    }
}

fn table_mismatch(check: &'static str, detail: String) -> Option<Mismatch> {
    Some(Mismatch {
        target: None,
        check,
        detail,
    })
}

fn check_tables() -> Result<Option<Mismatch>> {
    let t4 = representable_mod(4)?;
    if t4.complement() != expected_mod4_complement() {
        return Ok(table_mismatch("mod-4 table", "complement differs from the expected set".into()));
    }
    let t16 = representable_mod(16)?;
    let bad = Selection {
        diag_multiple: Some(4),
        complement: true,
    }
    .apply(&t16);
    if bad.len() != 48 {
        return Ok(table_mismatch(
            "mod-16 table",
            format!("{} non-representable triples with 4 | a, c (expected 48)", bad.len()),
        ));
    }
    for i in 0..4 {
        for j in 0..4 {
            let need = mod16_corner_divisor(i, j);
            for b in 0..16 {
                let t = ModMat::new(4 * i, b, 4 * j);
                if t16.contains(t) != (b % need == 0) {
                    return Ok(table_mismatch("mod-16 table", format!("{t} violates the corner rule")));
                }
            }
        }
    }
    Ok(None)
}

/// A deliberately wrong decision procedure: it rejects the zero matrix.
/// Used to exercise the failure path of the harness.
pub fn faulty_decide(target: &UTMat<i64>) -> Verdict<i64> {
    if *target == UTMat::zero() {
        Verdict::NotRepresentable {
            obstruction: crate::classify::Obstruction::CornerParity,
        }
    } else {
        decide(target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_box_passes() {
        let report = run(SelfCheckConfig {
            bound: 6,
            ..Default::default()
        })
        .unwrap();
        assert!(report.passed(), "{:?}", report.mismatch);
        assert_eq!(report.cases, 13 * 13 * 13);
    }

    #[test]
    fn zero_box() {
        let report = run(SelfCheckConfig {
            bound: 0,
            ..Default::default()
        })
        .unwrap();
        assert!(report.passed());
        assert_eq!(report.cases, 1);
        assert_eq!(report.branches.get(&Branch::FourFree), Some(&1));
    }

    #[test]
    fn coverage_at_sixteen() {
        let report = run(SelfCheckConfig {
            bound: 16,
            workers: 4,
            ..Default::default()
        })
        .unwrap();
        assert!(report.passed());
        assert!(report.uncovered().is_empty(), "{:?}", report.uncovered());
    }

    #[test]
    fn injected_fault_is_caught() {
        let report = run_with(
            SelfCheckConfig {
                bound: 3,
                ..Default::default()
            },
            &faulty_decide,
        )
        .unwrap();
        let m = report.mismatch.unwrap();
        assert_eq!(m.check, "oracle");
        assert_eq!(m.target, Some(UTMat::zero()));
    }

    #[test]
    fn first_counterexample_is_deterministic() {
        // rejects every odd corner, first wrong target in (p, q, r) order
        let wrong = |t: &UTMat<i64>| {
            if t.r().rem_euclid(2) == 1 {
                Verdict::NotRepresentable {
                    obstruction: crate::classify::Obstruction::CornerParity,
                }
            } else {
                decide(t)
            }
        };
        let cfg = |workers| SelfCheckConfig {
            bound: 5,
            workers,
            ..Default::default()
        };
        let one = run_with(cfg(1), &wrong).unwrap().mismatch.unwrap();
        let many = run_with(cfg(8), &wrong).unwrap().mismatch.unwrap();
        assert_eq!(one, many);
        // p = -5: q = -5 is the same odd class (g = 2), q = -4 is mixed
        assert_eq!(one.target, Some(UTMat::new(-5, -5, -4)));
    }
}
