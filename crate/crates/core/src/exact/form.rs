use std::fmt;

use super::CycloNum;
use crate::error::{Error, Result};

/// Homogeneous binary form `sum_k c_k x^k y^(d-k)` with cyclotomic
/// coefficients, all at one conductor. `coeffs[k]` multiplies `x^k y^(d-k)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiForm {
    conductor: u32,
    coeffs: Vec<CycloNum>,
}

impl BiForm {
    pub fn new(coeffs: Vec<CycloNum>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        let conductor = coeffs[0].conductor();
        assert!(coeffs.iter().all(|c| c.conductor() == conductor));
        BiForm { conductor, coeffs }
    }

    pub fn zero(degree: usize, conductor: u32) -> Self {
        BiForm {
            conductor,
            coeffs: vec![CycloNum::zero(conductor); degree + 1],
        }
    }

    pub fn constant(c: CycloNum) -> Self {
        Self::new(vec![c])
    }

    /// `a x + b y`
    pub fn linear(a: CycloNum, b: CycloNum) -> Self {
        Self::new(vec![b, a])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloNum::is_zero)
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &CycloNum, y: &CycloNum) -> CycloNum {
        // Horner in x with y-powers carried along
        let d = self.degree();
        let mut ypow = vec![CycloNum::one(self.conductor); d + 1];
        for k in 1..=d {
            ypow[k] = &ypow[k - 1] * y;
        }
        let mut acc = CycloNum::zero(self.conductor);
        for k in (0..=d).rev() {
            acc = &(&acc * x) + &(&self.coeffs[k] * &ypow[d - k]);
        }
        acc
    }

    /// `f(g (x, y)^T)`: substitute `x -> g00 x + g01 y`, `y -> g10 x + g11 y`.
    pub fn compose(&self, g: &[[CycloNum; 2]; 2]) -> Self {
        let d = self.degree();
        let lx = Self::linear(g[0][0].clone(), g[0][1].clone());
        let ly = Self::linear(g[1][0].clone(), g[1][1].clone());
        let mut xpow = vec![Self::constant(CycloNum::one(self.conductor))];
        let mut ypow = vec![Self::constant(CycloNum::one(self.conductor))];
        for k in 1..=d {
            xpow.push(&xpow[k - 1] * &lx);
            ypow.push(&ypow[k - 1] * &ly);
        }
        let mut acc = Self::zero(d, self.conductor);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(&xpow[k] * &ypow[d - k]).scale(c);
        }
        acc
    }

    pub fn d_dx(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0, self.conductor);
        }
        Self::new(
            (1..=d)
                .map(|k| self.coeffs[k].scale(&super::rat_int(k as i64)))
                .collect(),
        )
    }

    pub fn d_dy(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0, self.conductor);
        }
        Self::new(
            (0..d)
                .map(|k| self.coeffs[k].scale(&super::rat_int((d - k) as i64)))
                .collect(),
        )
    }

    /// Exact quotient `self / h`; fails unless `h` divides `self`.
    pub fn div_exact(&self, h: &BiForm) -> Result<BiForm> {
        let (df, dh) = (self.degree(), h.degree());
        let Some(top) = h.coeffs.iter().rposition(|c| !c.is_zero()) else {
            return Err(Error::DivisionByZero);
        };
        if dh > df {
            return if self.is_zero() {
                Ok(Self::zero(0, self.conductor))
            } else {
                Err(Error::InexactDivision)
            };
        }
        // univariate division in x with y = 1, then homogenize
        let lead_inv = h.coeffs[top].inv()?;
        let mut rem = self.coeffs.clone();
        let dq = df - dh;
        let mut q = vec![CycloNum::zero(self.conductor); dq + 1];
        let fx_top = match rem.iter().rposition(|c| !c.is_zero()) {
            Some(t) => t,
            None => return Ok(Self::zero(dq, self.conductor)),
        };
        if fx_top < top {
            return Err(Error::InexactDivision);
        }
        for j in (0..=fx_top - top).rev() {
            let c = &rem[j + top] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            if j > dq {
                return Err(Error::InexactDivision);
            }
            for (i, hi) in h.coeffs.iter().enumerate().take(top + 1) {
                if !hi.is_zero() {
                    rem[j + i] = &rem[j + i] - &(&c * hi);
                }
            }
            q[j] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::new(q))
    }

    /// `Some(c)` with `self = c * other` when the two forms are proportional
    /// and `other` is nonzero.
    pub fn ratio(&self, other: &BiForm) -> Option<CycloNum> {
        if self.degree() != other.degree() {
            return None;
        }
        let k = other.coeffs.iter().position(|c| !c.is_zero())?;
        let c = &self.coeffs[k] * &other.coeffs[k].inv().ok()?;
        (other.scale(&c) == *self).then_some(c)
    }

    pub fn product<'a, I: IntoIterator<Item = &'a BiForm>>(forms: I, conductor: u32) -> BiForm {
        forms.into_iter().fold(
            Self::constant(CycloNum::one(conductor)),
            |acc, f| &acc * f,
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(CycloNum::one(self.conductor));
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Jacobian determinant `f_x g_y - f_y g_x`.
    pub fn jacobian(f: &BiForm, g: &BiForm) -> BiForm {
        &(&f.d_dx() * &g.d_dy()) - &(&f.d_dy() * &g.d_dx())
    }
}

impl std::ops::Mul for &BiForm {
    type Output = BiForm;
    fn mul(self, rhs: &BiForm) -> BiForm {
        let n = self.conductor;
        let mut v = vec![CycloNum::zero(n); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = &v[i + j] + &(a * b);
                }
            }
        }
        BiForm::new(v)
    }
}

impl std::ops::Add for &BiForm {
    type Output = BiForm;
    fn add(self, rhs: &BiForm) -> BiForm {
        assert_eq!(self.degree(), rhs.degree(), "adding forms of different degree");
        BiForm::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &BiForm {
    type Output = BiForm;
    fn sub(self, rhs: &BiForm) -> BiForm {
        assert_eq!(self.degree(), rhs.degree(), "subtracting forms of different degree");
        BiForm::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match (k, d - k) {
                (0, 0) => String::new(),
                (a, 0) => pow_str("x", a),
                (0, b) => pow_str("y", b),
                (a, b) => format!("{}*{}", pow_str("x", a), pow_str("y", b)),
            };
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn pow_str(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}
