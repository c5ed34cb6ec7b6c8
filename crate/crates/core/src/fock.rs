//! Fermionic Fock space of one open `l` shell with exact sparse operators.
//!
//! A basis state is an occupation bitmask; bit `i` is the spin-orbital with
//! index `i` in the active [`OrbitalOrdering`]. Creation operators carry the
//! Jordan-Wigner sign `(-1)^(occupied orbitals with smaller index)`.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::radix::RadicalNumber;
use crate::wigner::HalfInt;

/// Largest supported shell; `l = 3` already means a 2^14-dimensional space.
pub const MAX_L: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinOrbital {
    pub ms: HalfInt,
    pub ml: HalfInt,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum OrbitalOrdering {
    /// `ms = +1/2` block first, `ml` descending inside each block.
    #[default]
    Standard,
    /// The standard list read backwards.
    Reversed,
}

#[derive(Clone, Debug)]
pub struct FockSpace {
    l: HalfInt,
    ordering: OrbitalOrdering,
    orbitals: Vec<SpinOrbital>,
}

impl FockSpace {
    pub fn new(l: HalfInt, ordering: OrbitalOrdering) -> Result<Self> {
        let Some(li) = l.as_integer().filter(|&li| (0..=MAX_L).contains(&li)) else {
            return Err(Error::InvalidAngularMomentum {
                j: l.to_string(),
                m: "-".into(),
                reason: "shell l must be an integer between 0 and 3",
            });
        };
        let mut pairs = Vec::new();
        for ms in [HalfInt::HALF, -HalfInt::HALF] {
            for ml in (-li..=li).rev() {
                pairs.push((ms, HalfInt::int(ml)));
            }
        }
        if ordering == OrbitalOrdering::Reversed {
            pairs.reverse();
        }
        let orbitals = pairs
            .into_iter()
            .enumerate()
            .map(|(index, (ms, ml))| SpinOrbital { ms, ml, index })
            .collect();
        Ok(FockSpace { l, ordering, orbitals })
    }

    /// The d shell in the standard ordering.
    pub fn d_shell() -> Self {
        Self::new(HalfInt::int(2), OrbitalOrdering::Standard).expect("l = 2 is valid")
    }

    pub fn l(&self) -> HalfInt {
        self.l
    }

    pub fn ordering(&self) -> OrbitalOrdering {
        self.ordering
    }

    pub fn orbitals(&self) -> &[SpinOrbital] {
        &self.orbitals
    }

    pub fn num_orbitals(&self) -> usize {
        self.orbitals.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.orbitals.len()
    }

    pub fn orbital(&self, ms: HalfInt, ml: HalfInt) -> Option<SpinOrbital> {
        self.orbitals.iter().copied().find(|o| o.ms == ms && o.ml == ml)
    }

    fn jw_sign(state: u32, index: usize) -> bool {
        (state & ((1u32 << index) - 1)).count_ones() % 2 == 1
    }

    pub fn create(&self, orb: SpinOrbital) -> SparseOperator {
        let bit = 1u32 << orb.index;
        let entries = (0..self.dim() as u32).filter(|s| s & bit == 0).map(|s| {
            let v = if Self::jw_sign(s, orb.index) {
                -RadicalNumber::one()
            } else {
                RadicalNumber::one()
            };
            (s | bit, s, v)
        });
        SparseOperator::from_entries(self.dim(), entries)
    }

    pub fn annihilate(&self, orb: SpinOrbital) -> SparseOperator {
        self.create(orb).transpose()
    }

    /// `a⁺_i a_j` built directly from the occupation patterns.
    pub fn hopping(&self, i: usize, j: usize) -> SparseOperator {
        let (bi, bj) = (1u32 << i, 1u32 << j);
        let entries = (0..self.dim() as u32).filter_map(|s| {
            if s & bj == 0 {
                return None;
            }
            let mid = s & !bj;
            if mid & bi != 0 {
                return None;
            }
            let odd = Self::jw_sign(s, j) ^ Self::jw_sign(mid, i);
            let v = if odd {
                -RadicalNumber::one()
            } else {
                RadicalNumber::one()
            };
            Some((mid | bi, s, v))
        });
        SparseOperator::from_entries(self.dim(), entries)
    }

    pub fn number_operator(&self) -> SparseOperator {
        let entries = (0..self.dim() as u32)
            .filter(|s| *s != 0)
            .map(|s| (s, s, RadicalNumber::from_integer(s.count_ones() as i64)));
        SparseOperator::from_entries(self.dim(), entries)
    }

    /// Basis states of the `n`-particle sector in ascending bitmask order.
    pub fn sector(&self, n: u32) -> Vec<u32> {
        (0..self.dim() as u32).filter(|s| s.count_ones() == n).collect()
    }
}

/// Exact sparse square matrix stored row by row, columns ascending, no
/// stored zeros; structural equality is value equality.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseOperator {
    dim: usize,
    rows: Vec<Vec<(u32, RadicalNumber)>>,
}

impl SparseOperator {
    pub fn zero(dim: usize) -> Self {
        SparseOperator {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_entries(dim, (0..dim as u32).map(|i| (i, i, RadicalNumber::one())))
    }

    /// Sums duplicate positions and drops zeros.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (u32, u32, RadicalNumber)>) -> Self {
        let mut rows: Vec<Vec<(u32, RadicalNumber)>> = vec![Vec::new(); dim];
        for (r, c, v) in entries {
            assert!(
                (r as usize) < dim && (c as usize) < dim,
                "entry ({r}, {c}) outside dimension {dim}"
            );
            rows[r as usize].push((c, v));
        }
        for row in &mut rows {
            normalize_row(row);
        }
        SparseOperator { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, row: u32, col: u32) -> RadicalNumber {
        let r = &self.rows[row as usize];
        r.binary_search_by_key(&col, |(c, _)| *c)
            .map_or_else(|_| RadicalNumber::zero(), |i| r[i].1.clone())
    }

    pub fn row(&self, row: u32) -> &[(u32, RadicalNumber)] {
        &self.rows[row as usize]
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &RadicalNumber)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r as u32, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(self.dim, self.entries().map(|(r, c, v)| (c, r, v.clone())))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn scale(&self, c: &RadicalNumber) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(col, v)| (*col, v * c)).collect())
            .collect();
        SparseOperator { dim: self.dim, rows }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &RadicalNumber, other: &Self) -> Result<Self> {
        self.check(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| merge_rows(a, b, c))
            .collect();
        Ok(SparseOperator { dim: self.dim, rows })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(&RadicalNumber::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(&-RadicalNumber::one(), other)
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut rows = Vec::with_capacity(self.dim);
        let mut acc: Vec<(u32, RadicalNumber)> = Vec::new();
        for row in &self.rows {
            acc.clear();
            for (k, a) in row {
                for (c, b) in &other.rows[*k as usize] {
                    acc.push((*c, a * b));
                }
            }
            let mut out = std::mem::take(&mut acc);
            normalize_row(&mut out);
            rows.push(out);
        }
        Ok(SparseOperator { dim: self.dim, rows })
    }

    /// `xy − yx`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// `xy + yx`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.add(&other.compose(self)?)
    }

    /// Exact equality; operators of different dimension are never equal.
    pub fn equals(&self, other: &Self) -> bool {
        self == other
    }

    /// Restriction to the span of `states` (rows and columns in that order).
    pub fn restrict(&self, states: &[u32]) -> Self {
        let position: std::collections::HashMap<u32, u32> =
            states.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
        let entries = states.iter().enumerate().flat_map(|(i, s)| {
            self.rows[*s as usize]
                .iter()
                .filter_map(|(c, v)| position.get(c).map(|j| (i as u32, *j, v.clone())))
                .collect::<Vec<_>>()
        });
        Self::from_entries(states.len(), entries)
    }

    /// One `row col value` line per stored entry, bitmasks in decimal.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (r, c, v) in self.entries() {
            writeln!(out, "{r} {c} {v}").expect("writing to a String");
        }
        out
    }

    /// Inverse of [`SparseOperator::dump`]; blank lines and `#` comments are
    /// skipped.
    pub fn parse_dump(dim: usize, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| Error::parse(format!("line {}: {what}: `{line}`", n + 1));
            let mut parts = line.splitn(3, char::is_whitespace);
            let r: u32 = parts
                .next()
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| bad("bad row"))?;
            let c: u32 = parts
                .next()
                .and_then(|p| p.trim().parse().ok())
                .ok_or_else(|| bad("bad column"))?;
            let v: RadicalNumber = parts.next().ok_or_else(|| bad("missing value"))?.parse()?;
            if r as usize >= dim || c as usize >= dim {
                return Err(bad("index outside the space"));
            }
            entries.push((r, c, v));
        }
        Ok(Self::from_entries(dim, entries))
    }
}

fn normalize_row(row: &mut Vec<(u32, RadicalNumber)>) {
    if row.len() > 1 {
        row.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(u32, RadicalNumber)> = Vec::with_capacity(row.len());
        for (c, v) in row.drain(..) {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += &v,
                _ => merged.push((c, v)),
            }
        }
        *row = merged;
    }
    row.retain(|(_, v)| !v.is_zero());
}

fn merge_rows(
    a: &[(u32, RadicalNumber)],
    b: &[(u32, RadicalNumber)],
    scale: &RadicalNumber,
) -> Vec<(u32, RadicalNumber)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, &b[j].1 * scale));
            j += 1;
        } else {
            let v = &a[i].1 + &(&b[j].1 * scale);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl fmt::Debug for SparseOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseOperator(dim {}, {} entries)", self.dim, self.nnz())?;
        f.write_str(&self.dump())
    }
}
