//! Exhaustive difference-of-squares tables over `UT2(Z_m)`.
//!
//! The set of squares `{M^2 mod m}` is computed first (`m^3` squarings,
//! deduplicated), then every ordered pair of squares is subtracted. The
//! outer loop over squares is split across rayon workers; each worker marks
//! a private bitmap and the bitmaps are OR-ed together, so the result does
//! not depend on the partitioning.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::Target;
use crate::scalar::{residue, Int};

pub const DEFAULT_MODULUS_CAP: u32 = 64;

/// Overrides [`DEFAULT_MODULUS_CAP`] when set to a positive integer.
pub const MODULUS_CAP_ENV: &str = "UT2DOS_MAX_MODULUS";

pub fn modulus_cap() -> u32 {
    std::env::var(MODULUS_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &u32| v > 0)
        .unwrap_or(DEFAULT_MODULUS_CAP)
}

/// `[[a, b], [0, c]]` over `Z_m`; serializes as `[a, b, c]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMat {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl ModMat {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        ModMat { a, b, c }
    }

    /// Canonical reduction of an integer matrix.
    pub fn reduce<T: Int>(t: &Target<T>, m: u32) -> Self {
        ModMat::new(residue(t.p(), m), residue(t.r(), m), residue(t.q(), m))
    }

    fn index(self, m: u32) -> usize {
        ((self.a as usize * m as usize) + self.b as usize) * m as usize + self.c as usize
    }

    fn from_index(i: usize, m: u32) -> Self {
        let m = m as usize;
        ModMat::new((i / (m * m)) as u32, ((i / m) % m) as u32, (i % m) as u32)
    }
}

impl fmt::Display for ModMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl Serialize for ModMat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b, self.c].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c] = <[u32; 3]>::deserialize(d)?;
        Ok(ModMat::new(a, b, c))
    }
}

/// The representable matrices of `UT2(Z_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModTable {
    modulus: u32,
    member: Vec<bool>,
}

impl ModTable {
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn contains(&self, t: ModMat) -> bool {
        let m = self.modulus;
        t.a < m && t.b < m && t.c < m && self.member[t.index(m)]
    }

    /// Representable triples in lexicographic order.
    pub fn representable(&self) -> Vec<ModMat> {
        self.collect(true)
    }

    /// Non-representable triples in lexicographic order.
    pub fn complement(&self) -> Vec<ModMat> {
        self.collect(false)
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&x| x).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn collect(&self, want: bool) -> Vec<ModMat> {
        self.member
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x == want)
            .map(|(i, _)| ModMat::from_index(i, self.modulus))
            .collect()
    }

    /// Rebuilds a table from its modulus and representable list.
    pub fn from_triples(modulus: u32, triples: &[ModMat]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut member = vec![false; (modulus as usize).pow(3)];
        for &t in triples {
            if t.a >= modulus || t.b >= modulus || t.c >= modulus {
                return Err(Error::Internal(format!("triple {t} is not reduced mod {modulus}")));
            }
            member[t.index(modulus)] = true;
        }
        Ok(ModTable { modulus, member })
    }
}

/// `{M^2 : M in UT2(Z_m)}`, deduplicated and sorted.
pub fn square_set(m: u32) -> Result<Vec<ModMat>> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let mm = m as u64;
    let mut seen = vec![false; (m as usize).pow(3)];
    for a in 0..mm {
        for b in 0..mm {
            for c in 0..mm {
                let sq = ModMat::new(
                    (a * a % mm) as u32,
                    (b * ((a + c) % mm) % mm) as u32,
                    (c * c % mm) as u32,
                );
                seen[sq.index(m)] = true;
            }
        }
    }
    Ok(seen
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x)
        .map(|(i, _)| ModMat::from_index(i, m))
        .collect())
}

/// Computes the table for `m` without consulting the cache.
///
/// `parallel = false` keeps everything on the calling thread.
pub fn compute_table(m: u32, cap: u32, parallel: bool) -> Result<ModTable> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if m > cap {
        return Err(Error::ModulusCap { modulus: m, cap });
    }
    let squares = square_set(m)?;
    let size = (m as usize).pow(3);
    let sub = |x: u32, y: u32| (x + m - y) % m;
    let mark_row = |member: &mut Vec<bool>, s: &ModMat| {
        for t in &squares {
            let d = ModMat::new(sub(s.a, t.a), sub(s.b, t.b), sub(s.c, t.c));
            member[d.index(m)] = true;
        }
    };

    let member = if parallel {
        squares
            .par_iter()
            .fold(
                || vec![false; size],
                |mut acc, s| {
                    mark_row(&mut acc, s);
                    acc
                },
            )
            .reduce(
                || vec![false; size],
                |mut x, y| {
                    x.iter_mut().zip(y).for_each(|(l, r)| *l |= r);
                    x
                },
            )
    } else {
        let mut member = vec![false; size];
        for s in &squares {
            mark_row(&mut member, s);
        }
        member
    };
    Ok(ModTable { modulus: m, member })
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<ModTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<ModTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The table for `m`, computed once per process.
pub fn representable_mod(m: u32) -> Result<Arc<ModTable>> {
    if let Some(t) = cache().lock().expect("table cache poisoned").get(&m) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(compute_table(m, modulus_cap(), true)?);
    let mut guard = cache().lock().expect("table cache poisoned");
    Ok(Arc::clone(guard.entry(m).or_insert(table)))
}

pub fn is_representable_mod<T: Int>(t: &Target<T>, m: u32) -> Result<bool> {
    let table = representable_mod(m)?;
    Ok(table.contains(ModMat::reduce(t, m)))
}

/// Non-representable triples of `UT2(Z_16)` whose diagonal entries are
/// divisible by 4. There are 48 of them.
pub fn nonrep_diag4_mod16() -> Result<Vec<ModMat>> {
    let table = representable_mod(16)?;
    Ok(Selection {
        diag_multiple: Some(4),
        complement: true,
    }
    .apply(&table))
}

/// Which part of a table to emit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Selection {
    /// Keep only triples with `d | a` and `d | c`.
    pub diag_multiple: Option<u32>,
    /// Emit the non-representable triples instead.
    pub complement: bool,
}

impl Selection {
    pub fn apply(&self, table: &ModTable) -> Vec<ModMat> {
        let rows = if self.complement {
            table.complement()
        } else {
            table.representable()
        };
        match self.diag_multiple {
            Some(d) if d > 0 => rows.into_iter().filter(|t| t.a % d == 0 && t.c % d == 0).collect(),
            _ => rows,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    /// `(a,b,c) (a,b,c) ...` on one line.
    Text,
    /// One `a,b,c` row per triple, no header.
    Csv,
    /// `{"modulus": m, "representable": [[a,b,c], ...]}`; the key is
    /// `not_representable` for a complement selection.
    Json,
}

/// JSON document written by [`emit_table`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub modulus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representable: Option<Vec<ModMat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub not_representable: Option<Vec<ModMat>>,
}

pub fn emit_table<W: Write + ?Sized>(
    table: &ModTable,
    format: TableFormat,
    selection: Selection,
    sink: &mut W,
) -> Result<()> {
    let rows = selection.apply(table);
    match format {
        TableFormat::Text => {
            let line: Vec<String> = rows.iter().map(ModMat::to_string).collect();
            writeln!(sink, "{}", line.join(" "))?;
        }
        TableFormat::Csv => {
            for t in &rows {
                writeln!(sink, "{},{},{}", t.a, t.b, t.c)?;
            }
        }
        TableFormat::Json => {
            let (representable, not_representable) = if selection.complement {
                (None, Some(rows))
            } else {
                (Some(rows), None)
            };
            let doc = TableDoc {
                modulus: table.modulus(),
                representable,
                not_representable,
            };
            serde_json::to_writer(&mut *sink, &doc)?;
            writeln!(sink)?;
        }
    }
    sink.flush()?;
    Ok(())
}
