use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cyclotomic::CycNum;

/// Integer Laurent polynomial in one variable `x`.
///
/// Zero coefficients are never stored, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolyZ {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolyZ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// `x + x^-1`-style construction from `(exponent, coefficient)` pairs.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Exact quotient `self / divisor` in `Z[x, x^-1]`, or `None` if the
    /// division leaves a remainder (or is not integral).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d_lo = divisor.min_exp()?;
        let d_hi = divisor.max_exp()?;
        let lead = divisor.coeff(d_hi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Long division from the top; the remainder's span shrinks every step.
        while let Some(r_hi) = rem.max_exp() {
            let r_lo = rem.min_exp()?;
            if r_hi - r_lo < d_hi - d_lo {
                return None;
            }
            let (c, r) = rem.coeff(r_hi).div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let shift = r_hi - d_hi;
            for (e, dc) in divisor.terms() {
                rem.add_term(e + shift, -(dc * &c));
            }
            quot.add_term(shift, c);
        }
        Some(quot)
    }

    /// Ring homomorphism `Z[x, x^-1] -> Q(zeta)` sending `x` to `at`.
    pub fn eval(&self, at: &CycNum) -> CycNum {
        let field = at.field();
        let mut acc = field.zero();
        if self.is_zero() {
            return acc;
        }
        let inv = at.inv().expect("Laurent polynomials are evaluated at units");
        for (e, c) in self.terms() {
            let base = if e >= 0 { at.pow(e as u64) } else { inv.pow(e.unsigned_abs()) };
            acc = &acc + &(&base * &field.from_bigint(c.clone()));
        }
        acc
    }
}

impl Add for &LaurentPolyZ {
    type Output = LaurentPolyZ;
    fn add(self, rhs: Self) -> LaurentPolyZ {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolyZ {
    type Output = LaurentPolyZ;
    fn sub(self, rhs: Self) -> LaurentPolyZ {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPolyZ {
    type Output = LaurentPolyZ;
    fn mul(self, rhs: Self) -> LaurentPolyZ {
        let mut out = LaurentPolyZ::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPolyZ {
    type Output = LaurentPolyZ;
    fn neg(self) -> LaurentPolyZ {
        LaurentPolyZ {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl fmt::Debug for LaurentPolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

/// Symbolic quantum integer `[m]_x = x^(m-1) + x^(m-3) + ... + x^-(m-1)`.
pub fn quantum_int(m: u32) -> LaurentPolyZ {
    let m = i64::from(m);
    LaurentPolyZ::from_terms((0..m).map(|j| (m - 1 - 2 * j, 1)))
}

/// `[m]_x! = [m]_x [m-1]_x ... [1]_x`, with `[0]! = 1`.
pub fn quantum_factorial(m: u32) -> LaurentPolyZ {
    (1..=m).fold(LaurentPolyZ::one(), |acc, j| &acc * &quantum_int(j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_ints_small() {
        assert_eq!(quantum_int(0), LaurentPolyZ::zero());
        assert_eq!(quantum_int(1), LaurentPolyZ::one());
        assert_eq!(quantum_int(2), LaurentPolyZ::from_terms([(1, 1), (-1, 1)]));
        assert_eq!(quantum_int(3), LaurentPolyZ::from_terms([(2, 1), (0, 1), (-2, 1)]));
    }

    #[test]
    fn factorials() {
        assert_eq!(quantum_factorial(0), LaurentPolyZ::one());
        assert_eq!(quantum_factorial(2), quantum_int(2));
        let f4 = quantum_factorial(4);
        assert_eq!(f4.div_exact(&quantum_int(4)).unwrap(), quantum_factorial(3));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let two = quantum_int(2);
        let three = quantum_int(3);
        assert!(three.div_exact(&two).is_none());
        assert!(LaurentPolyZ::monomial(0, 3).div_exact(&LaurentPolyZ::monomial(0, 2)).is_none());
        let prod = &two * &three;
        assert_eq!(prod.div_exact(&three).unwrap(), two);
        assert_eq!(LaurentPolyZ::monomial(-3, 6).div_exact(&LaurentPolyZ::monomial(2, 3)).unwrap(), LaurentPolyZ::monomial(-5, 2));
    }

    #[test]
    fn display() {
        assert_eq!(quantum_int(2).to_string(), "x + x^-1");
        assert_eq!((&LaurentPolyZ::monomial(0, 2) - &LaurentPolyZ::monomial(3, 1)).to_string(), "-x^3 + 2");
    }
}
