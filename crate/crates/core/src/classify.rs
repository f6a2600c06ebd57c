//! Closed-form decision procedure.
//!
//! `[[p, r], [0, q]]` is a difference of squares iff `p, q != 2 (mod 4)` and
//! `m(p, q) | r`, where `m(p, q)` is read off the residues of `p` and `q`:
//!
//! | diagonal                 | condition                               | m |
//! |--------------------------|-----------------------------------------|---|
//! | both odd                 | `p = q (mod 4)`                         | 2 |
//! | both odd                 | `p != q (mod 4)`                        | 1 |
//! | one odd, other `0 mod 4` |                                         | 1 |
//! | both `0 mod 4`           | `(p, q) mod 16` in `(4,4), (12,12)`     | 4 |
//! | both `0 mod 4`           | `(p, q) mod 16` in `(4,12), (8,8), (12,4)` | 2 |
//! | both `0 mod 4`           | otherwise                               | 1 |
//!
//! Nothing here searches; the brute-force counterpart is [`crate::oracle`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dos::is_dos;
use crate::error::{Error, Result};
use crate::matrix::Target;
use crate::scalar::{exact_div, int, residue, Int};
use crate::witness::{build_for_case, Witness};

/// Parametrisation of the diagonal `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CaseTag<T> {
    /// `p = 2k + 1`, `q = 2n + 1`.
    BothOdd { k: T, n: T },
    /// `p = 2k + 1`, `q = 4n`.
    OddTimesFour { k: T, n: T },
    /// `p = 4k`, `q = 2n + 1`.
    FourTimesOdd { k: T, n: T },
    /// `p = 4k`, `q = 4n`, with `(i, j) = (k mod 4, n mod 4)`.
    BothFour { k: T, n: T, i: u8, j: u8 },
}

impl<T: Int> CaseTag<T> {
    /// `None` when either diagonal entry is `2 mod 4`.
    pub fn of(p: &T, q: &T) -> Option<Self> {
        if !is_dos(p) || !is_dos(q) {
            return None;
        }
        // p odd: k = (p - 1) / 2 = floor(p / 2); p = 0 mod 4: k = p / 4
        let tag = match (p.is_odd(), q.is_odd()) {
            (true, true) => CaseTag::BothOdd {
                k: p.div_floor(&int(2)),
                n: q.div_floor(&int(2)),
            },
            (true, false) => CaseTag::OddTimesFour {
                k: p.div_floor(&int(2)),
                n: exact_div(q, 4),
            },
            (false, true) => CaseTag::FourTimesOdd {
                k: exact_div(p, 4),
                n: q.div_floor(&int(2)),
            },
            (false, false) => {
                let k = exact_div(p, 4);
                let n = exact_div(q, 4);
                let i = residue(&k, 4) as u8;
                let j = residue(&n, 4) as u8;
                CaseTag::BothFour { k, n, i, j }
            }
        };
        Some(tag)
    }

    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::BothOdd { .. } => "BothOdd",
            CaseTag::OddTimesFour { .. } => "OddTimesFour",
            CaseTag::FourTimesOdd { .. } => "FourTimesOdd",
            CaseTag::BothFour { .. } => "BothFour",
        }
    }
}

impl<T: fmt::Display> fmt::Display for CaseTag<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::BothOdd { k, n } => write!(f, "BothOdd(k={k}, n={n})"),
            CaseTag::OddTimesFour { k, n } => write!(f, "OddTimesFour(k={k}, n={n})"),
            CaseTag::FourTimesOdd { k, n } => write!(f, "FourTimesOdd(k={k}, n={n})"),
            CaseTag::BothFour { k, n, i, j } => write!(f, "BothFour(k={k}, n={n}, i={i}, j={j})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Obstruction {
    /// `p` or `q` is `2 mod 4`.
    DiagonalMod4,
    /// `m(p, q) = 2` and `r` is odd.
    CornerParity,
    /// `m(p, q) = 4` and `r != 0 (mod 4)`.
    CornerMod4,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Obstruction::DiagonalMod4 => "a diagonal entry is 2 mod 4",
            Obstruction::CornerParity => "the corner must be even",
            Obstruction::CornerMod4 => "the corner must be divisible by 4",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Verdict<T> {
    Representable {
        case: CaseTag<T>,
        g: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<Witness<T>>,
    },
    NotRepresentable { obstruction: Obstruction },
}

impl<T> Verdict<T> {
    pub fn is_representable(&self) -> bool {
        matches!(self, Verdict::Representable { .. })
    }

    pub fn g(&self) -> Option<u32> {
        match self {
            Verdict::Representable { g, .. } => Some(*g),
            Verdict::NotRepresentable { .. } => None,
        }
    }

    pub fn obstruction(&self) -> Option<Obstruction> {
        match self {
            Verdict::NotRepresentable { obstruction } => Some(*obstruction),
            Verdict::Representable { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness<T>> {
        match self {
            Verdict::Representable { witness, .. } => witness.as_ref(),
            Verdict::NotRepresentable { .. } => None,
        }
    }
}

/// `m(p, q)`, the modulus in `{1, 2, 4}` that the corner must be divisible by.
pub fn m_of<T: Int>(p: &T, q: &T) -> Result<u32> {
    for v in [p, q] {
        if !is_dos(v) {
            return Err(Error::NotDifferenceOfSquares(v.to_string()));
        }
    }
    let m = match (p.is_odd(), q.is_odd()) {
        (true, true) => {
            if residue(p, 4) == residue(q, 4) {
                2
            } else {
                1
            }
        }
        (true, false) | (false, true) => 1,
        (false, false) => match (residue(p, 16), residue(q, 16)) {
            (4, 4) | (12, 12) => 4,
            (4, 12) | (8, 8) | (12, 4) => 2,
            _ => 1,
        },
    };
    Ok(m)
}

/// Decides representability without constructing a witness.
pub fn decide<T: Int>(target: &Target<T>) -> Verdict<T> {
    let Some(case) = CaseTag::of(target.p(), target.q()) else {
        return Verdict::NotRepresentable {
            obstruction: Obstruction::DiagonalMod4,
        };
    };
    let g = m_of(target.p(), target.q()).expect("diagonal already checked");
    if residue(target.r(), g) == 0 {
        Verdict::Representable {
            case,
            g,
            witness: None,
        }
    } else {
        let obstruction = if g == 2 {
            Obstruction::CornerParity
        } else {
            Obstruction::CornerMod4
        };
        Verdict::NotRepresentable { obstruction }
    }
}

/// Like [`decide`], with a verified witness attached to representable verdicts.
pub fn decide_with_witness<T: Int>(target: &Target<T>) -> Result<Verdict<T>> {
    match decide(target) {
        Verdict::Representable { case, g, .. } => {
            let witness = build_for_case(target, &case)?;
            Ok(Verdict::Representable {
                case,
                g,
                witness: Some(witness),
            })
        }
        rejected => Ok(rejected),
    }
}
