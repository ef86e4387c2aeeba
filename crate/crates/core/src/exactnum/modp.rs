//! Exact arithmetic in prime fields `F_p` with `p = 1 mod 2*level`, used to
//! compute ranks of large cyclotomic matrices through a ring homomorphism
//! `Z[1/N][zeta] -> F_p`, `zeta -> omega`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::cyclotomic::CycNum;
use crate::error::{Error, Result};

/// Primes are kept below `2^31` so that a product of two residues fits in a `u64`.
const PRIME_CEILING: u64 = 1 << 31;

/// Barrett-reduced arithmetic modulo a fixed prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    /// `floor(2^64 / p)`
    m: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < PRIME_CEILING, "modulus out of range");
        let m = (u128::from(u64::MAX) + 1) / u128::from(p);
        Self { p, m: m as u64 }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces `x < p^2`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.m)) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a % self.p == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((v % &p) + &p) % &p;
        r.to_u64().expect("residue fits")
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A reduction map `Q(zeta_{2 level}) -> F_p` sending `zeta` to a primitive
/// `2*level`-th root of unity `omega`.
#[derive(Debug, Clone)]
pub struct ModpEmbedding {
    level: u32,
    field: PrimeField,
    omega: u64,
}

impl ModpEmbedding {
    /// The `index`-th largest admissible prime below `2^31` (index 0 is the largest).
    pub fn new(level: u32, index: usize) -> Self {
        let order = 2 * u64::from(level);
        let mut p = (PRIME_CEILING - 1) / order * order + 1;
        let mut found = 0;
        loop {
            if p < PRIME_CEILING && is_prime(p) {
                if found == index {
                    break;
                }
                found += 1;
            }
            p -= order;
        }
        let field = PrimeField::new(p);
        let factors = prime_factors(order);
        let omega = (2..p)
            .map(|g| field.pow(g, (p - 1) / order))
            .find(|&w| factors.iter().all(|&r| field.pow(w, order / r) != 1))
            .expect("F_p* is cyclic and 2*level divides p-1");
        Self { level, field, omega }
    }

    /// Two independent reductions; the rank over the number field is at least the
    /// rank under either one.
    pub fn standard_pair(level: u32) -> [Self; 2] {
        [Self::new(level, 0), Self::new(level, 1)]
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn prime_field(&self) -> &PrimeField {
        &self.field
    }

    pub fn omega(&self) -> u64 {
        self.omega
    }

    /// Image of a field element, or an error if its denominator vanishes mod `p`.
    pub fn reduce(&self, x: &CycNum) -> Result<u64> {
        if x.level() != self.level {
            return Err(Error::LevelMismatch { left: x.level(), right: self.level });
        }
        let f = &self.field;
        if x.is_zero() {
            return Ok(0);
        }
        let den = f.from_bigint(x.denominator());
        let den_inv = f.inv(den).ok_or(Error::DivisionByZero)?;
        let mut acc = 0;
        let mut wk = 1;
        for c in x.numerators() {
            if !c.is_zero() {
                acc = f.add(acc, f.mul(f.from_bigint(c), wk));
            }
            wk = f.mul(wk, self.omega);
        }
        Ok(f.mul(acc, den_inv))
    }
}

/// Dense matrix over `F_p`.
#[derive(Debug, Clone)]
pub struct ModpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Row echelon rank by Gaussian elimination with first-nonzero pivoting.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let cols = self.cols;
        let mut a = self.data.clone();
        let mut rank = 0;
        for c in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| a[r * cols + c] != 0) else {
                continue;
            };
            if piv != rank {
                for k in c..cols {
                    a.swap(piv * cols + k, rank * cols + k);
                }
            }
            let inv = f.inv(a[rank * cols + c]).expect("pivot is nonzero");
            for k in c..cols {
                a[rank * cols + k] = f.mul(a[rank * cols + k], inv);
            }
            let (head, tail) = a.split_at_mut((rank + 1) * cols);
            let prow = &head[rank * cols..];
            for row in tail.chunks_exact_mut(cols) {
                let factor = row[c];
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for k in c..cols {
                    row[k] = f.reduce(row[k] + neg * prow[k]);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Incrementally maintained reduced row echelon basis of a subspace of `F_p^n`.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: PrimeField,
    dim: usize,
    /// `pivot_row[c]` is the basis row whose pivot sits in column `c`.
    pivot_row: Vec<Option<usize>>,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Self { field, dim, pivot_row: vec![None; dim], rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Reduces `v` against the basis; returns the residual.
    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let f = self.field;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let factor = v[c];
            if factor == 0 {
                continue;
            }
            let neg = f.neg(factor);
            for (x, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *x = f.reduce(*x + neg * r);
                }
            }
        }
        v
    }

    /// Adds `v` to the span. Returns `true` if it was independent; the stored row
    /// is then the normalized residual, which is returned via `last_row`.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(v[c]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep the basis fully reduced in the new pivot column
        for row in self.rows.iter_mut() {
            let factor = row[c];
            if factor == 0 {
                continue;
            }
            let neg = f.neg(factor);
            for (x, &r) in row.iter_mut().zip(&v) {
                if r != 0 {
                    *x = f.reduce(*x + neg * r);
                }
            }
        }
        self.pivot_row[c] = Some(self.rows.len());
        self.pivots.push(c);
        self.rows.push(v);
        true
    }

    pub fn last_row(&self) -> Option<&[u64]> {
        self.rows.last().map(Vec::as_slice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_admissible() {
        for level in 3..=12u32 {
            for e in ModpEmbedding::standard_pair(level) {
                let p = e.prime_field().modulus();
                assert!(is_prime(p));
                assert_eq!((p - 1) % (2 * u64::from(level)), 0);
                let f = e.prime_field();
                assert_eq!(f.pow(e.omega(), u64::from(level)), p - 1);
            }
        }
    }

    #[test]
    fn barrett_matches_naive() {
        let f = PrimeField::new(2_147_483_029);
        for &(a, b) in &[(0, 5), (2_147_483_028, 2_147_483_028), (12345, 67890), (1 << 30, 3)] {
            assert_eq!(f.mul(a, b), (a * b) % f.modulus());
        }
    }

    #[test]
    fn echelon_insert_tracks_rank() {
        let f = PrimeField::new(1_000_003);
        let mut b = EchelonBasis::new(f, 3);
        assert!(b.insert(vec![1, 2, 3]));
        assert!(b.insert(vec![2, 4, 7]));
        assert!(!b.insert(vec![3, 6, 10]));
        assert!(b.insert(vec![0, 1, 0]));
        assert_eq!(b.rank(), 3);
        assert!(!b.insert(vec![5, 5, 5]));
    }

    #[test]
    fn modp_rank_small() {
        let f = PrimeField::new(1_000_003);
        let mut m = ModpMatrix::zeros(f, 3, 3);
        for (i, v) in [1u64, 2, 3, 2, 4, 6, 1, 0, 1].into_iter().enumerate() {
            m.set(i / 3, i % 3, v);
        }
        assert_eq!(m.rank(), 2);
    }
}
