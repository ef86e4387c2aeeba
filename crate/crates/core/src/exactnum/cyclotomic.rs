use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The cyclotomic field `Q(zeta)` with `zeta = exp(i*pi/level)` a primitive
/// `2*level`-th root of unity.
///
/// Elements are residues modulo the cyclotomic polynomial `Phi_{2 level}`.
/// The designated quantum parameter is `q = zeta^(level+1) = -exp(i*pi/level)`,
/// so that `q^2` has order `level` and the loop value
/// `delta = -(q + q^-1) = 2 cos(pi/level)` is real and positive.
#[derive(Debug)]
pub struct CycField {
    level: u32,
    /// Coefficients of `Phi_{2 level}`, low degree first; monic.
    modulus: Vec<BigInt>,
    /// `zeta^k mod Phi` for `k in 0..2*level`, as integer coefficient rows.
    zeta_powers: Vec<Vec<BigInt>>,
}

/// Integer coefficients of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_monic(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn poly_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (dd..num.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dd] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            rem[k - dd + j] -= &c * dc;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
    }
}

impl Eq for CycField {}

impl CycField {
    pub fn new(level: u32) -> Result<Arc<Self>> {
        if level < 3 {
            return Err(Error::InvalidLevel(level));
        }
        let order = 2 * level;
        let modulus = cyclotomic_poly(order);
        let deg = modulus.len() - 1;
        let mut zeta_powers = Vec::with_capacity(order as usize);
        let mut cur = vec![BigInt::zero(); deg];
        cur[0] = BigInt::one();
        for _ in 0..order {
            zeta_powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[deg - 1].clone();
            for j in (1..deg).rev() {
                cur[j] = cur[j - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for j in 0..deg {
                    cur[j] -= &top * &modulus[j];
                }
            }
        }
        Ok(Arc::new(Self { level, modulus, zeta_powers }))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Degree of the field over `Q`, i.e. `phi(2 level)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    pub fn zero(self: &Arc<Self>) -> CycNum {
        CycNum {
            field: Arc::clone(self),
            num: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(self: &Arc<Self>) -> CycNum {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> CycNum {
        self.from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(self: &Arc<Self>, v: BigInt) -> CycNum {
        let mut x = self.zero();
        x.num[0] = v;
        x
    }

    pub fn from_rational(self: &Arc<Self>, v: &BigRational) -> CycNum {
        let mut x = self.zero();
        x.num[0] = v.numer().clone();
        x.den = v.denom().clone();
        x.normalize();
        x
    }

    /// Builds an element from rational coordinates in the power basis `1, zeta, zeta^2, ...`.
    /// Coordinates beyond the field degree are reduced modulo `Phi`.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[BigRational]) -> CycNum {
        let mut acc = self.zero();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &self.zeta_pow(k as i64) * &self.from_rational(c);
            acc = &acc + &term;
        }
        acc
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> CycNum {
        let order = 2 * i64::from(self.level);
        let idx = k.rem_euclid(order) as usize;
        CycNum {
            field: Arc::clone(self),
            num: self.zeta_powers[idx].clone(),
            den: BigInt::one(),
        }
    }

    pub fn zeta(self: &Arc<Self>) -> CycNum {
        self.zeta_pow(1)
    }

    /// `q = zeta^(level+1)`.
    pub fn q(self: &Arc<Self>) -> CycNum {
        self.zeta_pow(i64::from(self.level) + 1)
    }

    pub fn q_inv(self: &Arc<Self>) -> CycNum {
        self.zeta_pow(-(i64::from(self.level) + 1))
    }

    /// Loop value `delta = -(q + q^-1)`.
    pub fn delta(self: &Arc<Self>) -> CycNum {
        -&(&self.q() + &self.q_inv())
    }

    /// `i = q^2` when `level = 4`; in general `q^2 = zeta^2` up to sign of the exponent.
    pub fn q_squared(self: &Arc<Self>) -> CycNum {
        self.zeta_pow(2 * (i64::from(self.level) + 1))
    }
}

/// Element of a cyclotomic field, stored as `num / den` with `num` a vector of
/// integer power-basis coordinates and `den > 0`, kept in lowest terms.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn level(&self) -> u32 {
        self.field.level
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Rational power-basis coordinates.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Returns the rational value if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn same_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field.level == other.field.level,
            "mixing scalars of level {} and {}",
            self.field.level,
            other.field.level
        );
    }

    pub fn try_same_field(&self, other: &Self) -> Result<()> {
        if self.field.level == other.field.level {
            Ok(())
        } else {
            Err(Error::LevelMismatch { left: self.field.level, right: other.field.level })
        }
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn scale_int(&self, k: i64) -> CycNum {
        let k = BigInt::from(k);
        let mut out = self.clone();
        for c in &mut out.num {
            *c *= &k;
        }
        out.normalize();
        out
    }

    pub fn pow(&self, mut e: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn powi(&self, e: i64) -> Result<CycNum> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv().ok_or(Error::DivisionByZero)?.pow(e.unsigned_abs()))
        }
    }

    /// Multiplicative inverse by solving `self * y = 1` as a linear system over `Q`.
    pub fn inv(&self) -> Option<CycNum> {
        if self.is_zero() {
            return None;
        }
        let d = self.field.degree();
        // Column j of the multiplication matrix is self * zeta^j.
        let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); d + 1]; d];
        for j in 0..d {
            let col = self * &self.field.zeta_pow(j as i64);
            for (i, c) in col.coeffs().into_iter().enumerate() {
                rows[i][j] = c;
            }
        }
        rows[0][d] = BigRational::one();
        // Gauss-Jordan; the matrix is invertible because the field has no zero divisors.
        for col in 0..d {
            let piv = (col..d).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, piv);
            let p = rows[col][col].clone();
            for x in rows[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..d {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in col..=d {
                        let v = &rows[col][c] * &f;
                        rows[r][c] -= v;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = rows.into_iter().map(|r| r[d].clone()).collect();
        Some(self.field.from_coeffs(&sol))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    /// Complex approximation `(re, im)`; presentation only.
    pub fn approx(&self) -> (f64, f64) {
        let order = 2.0 * f64::from(self.field.level);
        let den = big_to_f64(&self.den);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            let v = big_to_f64(c) / den;
            let ang = std::f64::consts::TAU * k as f64 / order;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

fn big_to_f64(v: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.level == other.field.level && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.level.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.same_field(rhs);
        let mut out = self.clone();
        if self.den == rhs.den {
            for (a, b) in out.num.iter_mut().zip(&rhs.num) {
                *a += b;
            }
        } else {
            for (a, b) in out.num.iter_mut().zip(&rhs.num) {
                *a = &*a * &rhs.den + b * &self.den;
            }
            out.den = &self.den * &rhs.den;
        }
        out.normalize();
        out
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        let mut out = self.clone();
        for c in &mut out.num {
            *c = -c.clone();
        }
        out
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.field.zero();
        }
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let m = &self.field.modulus;
        for k in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                if !m[j].is_zero() {
                    prod[k - d + j] -= &c * &m[j];
                }
            }
        }
        prod.truncate(d);
        let mut out = CycNum { field: Arc::clone(&self.field), num: prod, den: &self.den * &rhs.den };
        out.normalize();
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[l={}]({})", self.field.level, self)
    }
}

/// Symbolic form in powers of `z = exp(i*pi/level)`, e.g. `1 - z^2 + 1/2*z^3`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            if !unit || k == 0 {
                write!(f, "{mag}")?;
            }
            if k > 0 {
                if !unit {
                    write!(f, "*")?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_poly(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_poly(10), ints(&[1, -1, 1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn q_has_the_right_order() {
        for level in 3..=10u32 {
            let k = CycField::new(level).unwrap();
            let q2 = k.q_squared();
            assert!(q2.pow(u64::from(level)).is_one());
            for j in 1..level {
                assert!(!q2.pow(u64::from(j)).is_one(), "level {level}, j {j}");
            }
            assert_eq!(&k.q() * &k.q_inv(), k.one());
            assert!(!k.delta().is_zero());
        }
    }

    #[test]
    fn delta_is_two_cos() {
        for level in 3..=10u32 {
            let k = CycField::new(level).unwrap();
            let (re, im) = k.delta().approx();
            let want = 2.0 * (std::f64::consts::PI / f64::from(level)).cos();
            assert!((re - want).abs() < 1e-12 && im.abs() < 1e-12);
        }
    }

    #[test]
    fn level_four_constants() {
        let k = CycField::new(4).unwrap();
        let d = k.delta();
        assert_eq!(&d * &d, k.from_int(2));
        let i = k.q_squared();
        assert_eq!(&i * &i, k.from_int(-1));
        assert_eq!(d.inv().unwrap(), d.checked_div(&k.from_int(2)).unwrap());
    }

    #[test]
    fn inverse_and_display() {
        let k = CycField::new(5).unwrap();
        let x = &k.zeta() + &k.from_int(3);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(k.from_int(0).inv(), None);
        assert_eq!(x.to_string(), "3 + z");
        let half = k.from_rational(&BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!((&half * &k.zeta_pow(2)).to_string(), "-1/2*z^2");
    }
}
