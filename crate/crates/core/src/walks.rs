//! Exact enumeration of ±1 walks on the half-line `Z>=0`.
//!
//! Two families of counts live here:
//!
//! * the classical counts `a(n, m)`: walks of length `n` from `0` to `m`
//!   that never visit `-1`;
//! * the mod-`ell` constrained counts `b(n, m)`, which follow the classical
//!   recursion except on two residue classes of the endpoint:
//!
//! ```text
//! b(n, m) = a(n, m)                        if m = ell - 1 (mod ell)
//! b(n, m) = b(n-1, m-1)                    if m = ell - 2 (mod ell)
//! b(n, m) = b(n-1, m-1) + b(n-1, m+1)      otherwise
//! ```
//!
//! For `ell = 2` the last case is empty. `b(n, m)` is also the multiplicity of
//! the tilting module `T(m)` in `T(1)^{⊗n}` at a root of unity of order
//! `ell`, see [`crate::tilting`].
//!
//! Dense tables store row `n` with `n + 1` entries; an entry at step `n` has
//! at most `n` bits, so a full table to order `N` costs `O(N^3)` bits. For
//! row sums at large `n` use [`WalkStream`], which keeps two rows only.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Which recursion produced a [`CountTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableKind {
    Classical,
    Modular { ell: u64 },
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableKind::Classical => write!(f, "classical"),
            TableKind::Modular { ell } => write!(f, "modular(ell={ell})"),
        }
    }
}

/// Triangular table of walk counts; row `n` holds the entries `m = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    kind: TableKind,
    rows: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn kind(&self) -> TableKind {
        self.kind
    }

    /// Truncation order `N`; the table has rows `0..=N`.
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> Result<&[BigUint]> {
        self.rows
            .get(n)
            .map(Vec::as_slice)
            .ok_or(Error::RowOutOfRange { n, max: self.order() })
    }

    /// Entry `(n, m)`; zero outside the triangle `m <= n`.
    pub fn entry(&self, n: usize, m: usize) -> Result<BigUint> {
        Ok(self.row(n)?.get(m).cloned().unwrap_or_default())
    }
}

/// A growth sequence `x_0, x_1, ...` together with a provenance label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSequence {
    pub values: Vec<BigUint>,
    pub label: String,
}

impl GrowthSequence {
    pub fn new(label: impl Into<String>, values: Vec<BigUint>) -> Self {
        Self {
            values,
            label: label.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_modulus(ell: u64) -> Result<()> {
    if ell < 2 {
        return Err(Error::ModulusTooSmall { ell, min: 2 });
    }
    Ok(())
}

#[inline]
fn at(row: &[BigUint], m: usize) -> Option<&BigUint> {
    row.get(m)
}

fn add_neighbors(row: &[BigUint], m: usize) -> BigUint {
    let left = m.checked_sub(1).and_then(|i| at(row, i));
    let right = at(row, m + 1);
    match (left, right) {
        (Some(l), Some(r)) => l + r,
        (Some(l), None) => l.clone(),
        (None, Some(r)) => r.clone(),
        (None, None) => BigUint::zero(),
    }
}

fn next_classical(prev: &[BigUint]) -> Vec<BigUint> {
    (0..=prev.len()).map(|m| add_neighbors(prev, m)).collect()
}

/// Next modular row; `classical` must already be row `n` of the classical
/// table, `prev` row `n - 1` of the modular one.
fn next_modular(prev: &[BigUint], classical: &[BigUint], ell: u64) -> Vec<BigUint> {
    (0..=prev.len())
        .map(|m| {
            let r = m as u64 % ell;
            if r == ell - 1 {
                classical[m].clone()
            } else if r == ell - 2 {
                m.checked_sub(1)
                    .and_then(|i| at(prev, i))
                    .cloned()
                    .unwrap_or_default()
            } else {
                add_neighbors(prev, m)
            }
        })
        .collect()
}

/// Classical table `a(n, m)` for `n <= order`.
pub fn classical_table(order: usize) -> CountTable {
    let mut rows = Vec::with_capacity(order + 1);
    rows.push(vec![BigUint::one()]);
    for n in 1..=order {
        let next = next_classical(&rows[n - 1]);
        rows.push(next);
    }
    CountTable {
        kind: TableKind::Classical,
        rows,
    }
}

/// Binomial coefficient `C(n, k)`, zero for `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Closed form for `a(n, m)`: `C(n, (n-m)/2) - C(n, (n-m)/2 - 1)` when
/// `m <= n` and `m = n (mod 2)`, zero otherwise.
pub fn ballot_formula(n: u64, m: u64) -> BigUint {
    if m > n || (n - m).is_odd() {
        return BigUint::zero();
    }
    let k = ((n - m) / 2) as i64;
    binomial(n, k) - binomial(n, k - 1)
}

/// Mod-`ell` constrained table `b(n, m)` for `n <= order`. The classical
/// table is advanced in lockstep since the wall class copies its entries.
pub fn modular_table(ell: u64, order: usize) -> Result<CountTable> {
    check_modulus(ell)?;
    let mut stream = WalkStream::new(Some(ell))?;
    let mut rows = Vec::with_capacity(order + 1);
    rows.push(stream.modular_row().to_vec());
    for _ in 0..order {
        stream.step();
        rows.push(stream.modular_row().to_vec());
    }
    Ok(CountTable {
        kind: TableKind::Modular { ell },
        rows,
    })
}

/// Sum of row `n`: `a_n` for a classical table, `b_n` for a modular one.
pub fn row_sum(table: &CountTable, n: usize) -> Result<BigUint> {
    Ok(table.row(n)?.iter().sum())
}

fn residue_sum_of_row(row: &[BigUint], r: u64, ell: u64) -> BigUint {
    row.iter().skip(r as usize).step_by(ell as usize).sum()
}

/// `c_n^(r)`: number of classical walks of length `n` ending at some
/// `m = r (mod ell)`.
pub fn residue_sum(table: &CountTable, n: usize, r: u64, ell: u64) -> Result<BigUint> {
    check_modulus(ell)?;
    if table.kind != TableKind::Classical {
        return Err(Error::InvalidArgument(format!(
            "residue sums are taken over the classical table, got {}",
            table.kind
        )));
    }
    if r >= ell {
        return Err(Error::ResidueOutOfRange { r, ell });
    }
    Ok(residue_sum_of_row(table.row(n)?, r, ell))
}

/// `w_n = c_n^(ell-1)`: walks ending on the wall `m + 1 = 0 (mod ell)`.
pub fn wall_count(ell: u64, n: usize) -> Result<BigUint> {
    check_modulus(ell)?;
    let mut stream = WalkStream::new(None)?;
    while stream.n() < n {
        stream.step();
    }
    Ok(residue_sum_of_row(stream.classical_row(), ell - 1, ell))
}

/// Two-row walker: holds row `n` of the classical table and, when a modulus
/// is given, row `n` of the modular table.
#[derive(Debug, Clone)]
pub struct WalkStream {
    ell: Option<u64>,
    n: usize,
    classical: Vec<BigUint>,
    modular: Vec<BigUint>,
}

impl WalkStream {
    pub fn new(ell: Option<u64>) -> Result<Self> {
        if let Some(ell) = ell {
            check_modulus(ell)?;
        }
        Ok(Self {
            ell,
            n: 0,
            classical: vec![BigUint::one()],
            modular: vec![BigUint::one()],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> Option<u64> {
        self.ell
    }

    pub fn classical_row(&self) -> &[BigUint] {
        &self.classical
    }

    /// Row `n` of the modular table. Without a modulus this is the initial
    /// row `[1]` forever.
    pub fn modular_row(&self) -> &[BigUint] {
        &self.modular
    }

    pub fn step(&mut self) {
        let classical = next_classical(&self.classical);
        if let Some(ell) = self.ell {
            self.modular = next_modular(&self.modular, &classical, ell);
        }
        self.classical = classical;
        self.n += 1;
    }

    pub fn a_n(&self) -> BigUint {
        self.classical.iter().sum()
    }

    pub fn b_n(&self) -> Option<BigUint> {
        self.ell.map(|_| self.modular.iter().sum())
    }

    pub fn residue_sum(&self, r: u64) -> Option<BigUint> {
        self.ell
            .filter(|&ell| r < ell)
            .map(|ell| residue_sum_of_row(&self.classical, r, ell))
    }

    pub fn wall_count(&self) -> Option<BigUint> {
        self.ell.map(|ell| residue_sum_of_row(&self.classical, ell - 1, ell))
    }
}

/// Row-sum sequences up to `n_max`, computed in streaming mode.
#[derive(Debug, Clone)]
pub struct StreamedSums {
    pub ell: u64,
    /// `a_n`
    pub classical: GrowthSequence,
    /// `b_n`
    pub modular: GrowthSequence,
    /// `w_n`
    pub wall: GrowthSequence,
}

pub fn streamed_sums(ell: u64, n_max: usize) -> Result<StreamedSums> {
    let mut stream = WalkStream::new(Some(ell))?;
    let mut a = Vec::with_capacity(n_max + 1);
    let mut b = Vec::with_capacity(n_max + 1);
    let mut w = Vec::with_capacity(n_max + 1);
    loop {
        a.push(stream.a_n());
        b.push(stream.b_n().unwrap_or_default());
        w.push(stream.wall_count().unwrap_or_default());
        if stream.n() == n_max {
            break;
        }
        stream.step();
    }
    Ok(StreamedSums {
        ell,
        classical: GrowthSequence::new("a_n", a),
        modular: GrowthSequence::new(format!("b_n(ell={ell})"), b),
        wall: GrowthSequence::new(format!("w_n(ell={ell})"), w),
    })
}
