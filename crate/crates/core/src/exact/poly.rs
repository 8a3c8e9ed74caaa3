use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CycloNum, Rat};
use crate::error::{Error, Result};

/// Univariate polynomial with rational coefficients, ascending degree.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector and has no degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints<I: Into<BigInt> + Clone>(coeffs: &[I]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|c| Rat::from_integer(c.clone().into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rat::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in the field of `x`.
    pub fn eval(&self, x: &CycloNum) -> CycloNum {
        let mut acc = CycloNum::zero(x.conductor());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &CycloNum::from_rat(c.clone(), x.conductor());
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, b: &UniPoly) -> (UniPoly, UniPoly) {
        let db = b.degree().expect("polynomial division by zero");
        let lead_inv = b.coeffs[db].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + db] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Exact division; fails with [`Error::InexactDivision`] on a nonzero remainder.
    pub fn div_exact(&self, b: &UniPoly) -> Result<UniPoly> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = self.div_rem(b);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn xgcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            Some(l) if !l.is_one() => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            _ => (r0, s0, t0),
        }
    }

    /// Coefficients as machine integers, if all are integral and fit.
    pub fn to_i64_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    pub fn has_nonnegative_integer_coeffs(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// `t^deg * p(1/t) == p` for the given total degree.
    pub fn is_palindromic(&self, total_degree: usize) -> bool {
        if self.degree().is_some_and(|d| d > total_degree) {
            return false;
        }
        (0..=total_degree).all(|k| self.coeff(k) == self.coeff(total_degree - k))
    }
}

impl fmt::Display for UniPoly {
    /// Sparse human-readable form, e.g. `t + t^11 + t^19 + t^29`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
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
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl serde::Serialize for UniPoly {
    /// Ascending coefficient array; integral entries as numbers, others as `"n/d"`.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.is_integer().then(|| c.to_integer().to_i64()).flatten() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn geometric_factorization() {
        let a = p(&[1, 0, 0, 0, -1]);
        let b = p(&[1, -1]);
        assert_eq!(a.div_exact(&b).unwrap(), p(&[1, 1, 1, 1]));
    }

    #[test]
    fn self_division_is_one() {
        let a = p(&[3, 0, -2, 7]);
        assert_eq!(a.div_exact(&a).unwrap(), UniPoly::one());
    }

    #[test]
    fn inexact_division_is_reported() {
        let a = p(&[1, 0, 1]);
        let b = p(&[1, 1]);
        assert_eq!(a.div_exact(&b), Err(Error::InexactDivision));
        assert_eq!(a.div_exact(&UniPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn no_trailing_zeros() {
        let a = p(&[1, 2, 0, 0]);
        assert_eq!(a.degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_at_one() {
        let mut c = vec![0i64; 31];
        c[0] = 1;
        c[30] = 1;
        assert_eq!(p(&c).eval_rat(&rat_int(1)), rat_int(2));
        assert_eq!(p(&[5, 1, 1]).eval_rat(&rat_int(0)), rat_int(5));
    }

    #[test]
    fn sparse_display() {
        let mut c = vec![0i64; 30];
        for k in [1, 11, 19, 29] {
            c[k] = 1;
        }
        assert_eq!(p(&c).to_string(), "t + t^11 + t^19 + t^29");
        assert_eq!(p(&[1, -2, 0, 3]).to_string(), "1 - 2t + 3t^3");
    }

    #[test]
    fn xgcd_bezout() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1, 1]);
        let (g, s, t) = UniPoly::xgcd(&a, &b);
        assert_eq!(g, UniPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }
}
