//! Sparse exact linear algebra over the integers.
//!
//! Rows are eliminated fraction-free and divided by their content after
//! every step, which keeps entries small for the matrices met here.

use std::collections::HashMap;

use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};

use crate::forest::HyperForest;
use crate::lincomb::LinComb;

/// Nonzero entries sorted by column.
pub type SparseRow = Vec<(usize, BigInt)>;

/// `a * x - b * y`.
fn combine(x: &SparseRow, a: &BigInt, y: &SparseRow, b: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map(|e| e.0);
        let cy = y.get(j).map(|e| e.0);
        let (col, val) = match (cx, cy) {
            (Some(p), Some(q)) if p == q => {
                let v = a * &x[i].1 - b * &y[j].1;
                i += 1;
                j += 1;
                (p, v)
            }
            (Some(p), Some(q)) if p < q => {
                i += 1;
                (p, a * &x[i - 1].1)
            }
            (Some(p), None) => {
                i += 1;
                (p, a * &x[i - 1].1)
            }
            (_, Some(q)) => {
                j += 1;
                (q, -(b * &y[j - 1].1))
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

/// Divides by the content and makes the leading entry positive.
fn normalize(row: &mut SparseRow) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.abs();
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Row echelon form with rows keyed by their leading column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Eliminates leading entries until the leading column is free.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        normalize(&mut row);
        while let Some((col, lead)) = row.first().cloned() {
            let Some(p) = self.pivots.get(&col) else { break };
            let g = lead.gcd(&p[0].1);
            row = combine(&row, &(&p[0].1 / &g), p, &(lead / &g));
            normalize(&mut row);
        }
        row
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        self.insert_reduced(row).is_some()
    }

    /// Adds a row and returns its reduced form if the rank grew.
    pub fn insert_reduced(&mut self, row: SparseRow) -> Option<&SparseRow> {
        let r = self.reduce(row);
        let col = r.first()?.0;
        self.pivots.insert(col, r);
        self.pivots.get(&col)
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.pivots.values()
    }
}

pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// A basis of the kernel of `e_i -> rows[i]` where every row lives in
/// columns below `width`. Kernel vectors are in the coordinates `i`.
pub fn kernel(rows: &[SparseRow], width: usize) -> Vec<SparseRow> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut aug = r.clone();
        aug.push((width + i, BigInt::one()));
        if let Some(red) = e.insert_reduced(aug) {
            if red[0].0 >= width {
                out.push(red.iter().map(|(c, v)| (c - width, v.clone())).collect());
            }
        }
    }
    out
}

/// Coordinates of linear combinations in a fixed basis of forests.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: Vec<HyperForest>,
    index: HashMap<HyperForest, usize>,
}

impl Coordinates {
    pub fn new(basis: Vec<HyperForest>) -> Self {
        let index = basis.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        Coordinates { basis, index }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[HyperForest] {
        &self.basis
    }

    pub fn index_of(&self, f: &HyperForest) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// An integer multiple of `v` as a sparse row; `None` if `v` leaves the
    /// basis.
    pub fn row(&self, v: &LinComb) -> Option<SparseRow> {
        let mut denom = BigInt::one();
        for (_, c) in v.iter() {
            denom = denom.lcm(c.denom());
        }
        let mut row = Vec::with_capacity(v.len());
        for (f, c) in v.iter() {
            let x = c.numer() * (&denom / c.denom());
            row.push((self.index_of(f)?, x));
        }
        row.sort_by_key(|e| e.0);
        Some(row)
    }

    pub fn lincomb(&self, row: &SparseRow) -> LinComb {
        row.iter()
            .map(|(c, v)| (self.basis[*c].clone(), num::BigRational::from_integer(v.clone())))
            .collect()
    }
}
