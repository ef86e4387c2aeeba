use std::sync::Arc;

use rayon::prelude::*;

use super::cyclotomic::{CycField, CycNum};
use super::modp::{ModpEmbedding, ModpMatrix};
use crate::error::{Error, Result};

/// Dense matrix over a cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Arc<CycField>,
    rows: usize,
    cols: usize,
    entries: Vec<CycNum>,
}

impl ExactMatrix {
    pub fn zeros(field: &Arc<CycField>, rows: usize, cols: usize) -> Self {
        Self { field: Arc::clone(field), rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Arc<CycField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: &Arc<CycField>, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycNum) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                assert_eq!(v.level(), field.level());
                entries.push(v);
            }
        }
        Self { field: Arc::clone(field), rows, cols, entries }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycNum {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNum) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(Self::from_fn(&self.field, self.rows, other.cols, |r, c| {
            let mut acc = self.field.zero();
            for k in 0..self.cols {
                let a = self.get(r, k);
                let b = other.get(k, c);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    /// Exact rank over the cyclotomic field: row elimination scanning columns left to
    /// right and taking the first nonzero entry at or below the current row as pivot.
    pub fn rank_exact(&self) -> usize {
        let mut a: Vec<Vec<CycNum>> = (0..self.rows).map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = a[rank][c].inv().expect("pivot is nonzero");
            for r in rank + 1..self.rows {
                if a[r][c].is_zero() {
                    continue;
                }
                let factor = &a[r][c] * &inv;
                for k in c..self.cols {
                    if !a[rank][k].is_zero() {
                        let d = &factor * &a[rank][k];
                        a[r][k] = &a[r][k] - &d;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Exact rank by an independent elimination order: full pivoting that scans rows
    /// from the bottom and eliminates column-wise (equivalently, row rank of the transpose
    /// with reversed row order).
    pub fn rank_exact_colpivot(&self) -> usize {
        let mut a: Vec<Vec<CycNum>> = (0..self.cols)
            .rev()
            .map(|c| (0..self.rows).rev().map(|r| self.get(r, c).clone()).collect())
            .collect();
        let (rows, cols) = (self.cols, self.rows);
        let mut live: Vec<bool> = vec![true; rows];
        let mut rank = 0;
        for c in 0..cols {
            // pivot: the last live row with a nonzero entry in this column
            let Some(piv) = (0..rows).rev().find(|&r| live[r] && !a[r][c].is_zero()) else {
                continue;
            };
            live[piv] = false;
            let inv = a[piv][c].inv().expect("pivot is nonzero");
            let prow = a[piv].clone();
            for r in 0..rows {
                if !live[r] || a[r][c].is_zero() {
                    continue;
                }
                let factor = &a[r][c] * &inv;
                for k in 0..cols {
                    if !prow[k].is_zero() {
                        let d = &factor * &prow[k];
                        a[r][k] = &a[r][k] - &d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Image of the matrix under a reduction to `F_p`.
    pub fn reduce_mod(&self, emb: &ModpEmbedding) -> Result<ModpMatrix> {
        let mut m = ModpMatrix::zeros(*emb.prime_field(), self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, emb.reduce(self.get(r, c))?);
            }
        }
        Ok(m)
    }

    /// Rank via reduction modulo two large primes (maximum of the two images).
    ///
    /// Each image rank is a lower bound for the true rank; they coincide with it
    /// except at the finitely many primes dividing the relevant minors.
    pub fn rank(&self) -> usize {
        ModpEmbedding::standard_pair(self.field.level())
            .par_iter()
            .filter_map(|e| self.reduce_mod(e).ok().map(|m| m.rank()))
            .max()
            .unwrap_or_else(|| self.rank_exact())
    }
}

/// Square or rectangular matrix whose entries are either zero or an integer power
/// of one fixed field element (the loop value, for every Gram matrix in this crate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerMatrix {
    base: CycNum,
    rows: usize,
    cols: usize,
    exps: Vec<Option<i32>>,
}

impl PowerMatrix {
    pub fn new(base: CycNum, rows: usize, cols: usize, exps: Vec<Option<i32>>) -> Self {
        assert_eq!(exps.len(), rows * cols);
        Self { base, rows, cols, exps }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn exponent(&self, r: usize, c: usize) -> Option<i32> {
        self.exps[r * self.cols + c]
    }

    pub fn to_exact(&self) -> Result<ExactMatrix> {
        let field = self.base.field();
        let lo = self.exps.iter().flatten().copied().min().unwrap_or(0).min(0);
        let hi = self.exps.iter().flatten().copied().max().unwrap_or(0).max(0);
        let mut powers = Vec::with_capacity((hi - lo + 1) as usize);
        for e in lo..=hi {
            powers.push(self.base.powi(i64::from(e))?);
        }
        Ok(ExactMatrix::from_fn(field, self.rows, self.cols, |r, c| match self.exponent(r, c) {
            Some(e) => powers[(e - lo) as usize].clone(),
            None => field.zero(),
        }))
    }

    pub fn reduce_mod(&self, emb: &ModpEmbedding) -> Result<ModpMatrix> {
        let f = emb.prime_field();
        let b = emb.reduce(&self.base)?;
        let b_inv = f.inv(b).ok_or(Error::DivisionByZero)?;
        let mut m = ModpMatrix::zeros(*f, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if let Some(e) = self.exponent(r, c) {
                    let v = if e >= 0 { f.pow(b, e as u64) } else { f.pow(b_inv, u64::from(e.unsigned_abs())) };
                    m.set(r, c, v);
                }
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        ModpEmbedding::standard_pair(self.base.level())
            .par_iter()
            .filter_map(|e| self.reduce_mod(e).ok().map(|m| m.rank()))
            .max()
            .unwrap_or(0)
    }
}
