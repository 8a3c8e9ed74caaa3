use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::linalg;
use super::{Rat, UniPoly};
use crate::error::{Error, Result};

pub fn euler_phi(n: u32) -> usize {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn moebius(n: u32) -> i32 {
    let mut n = n;
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// `n`-th cyclotomic polynomial as ascending integer coefficients, built as
/// the Moebius product of the factors `t^(n/d) - 1`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    let mut num: Vec<i64> = vec![1];
    let mut den: Vec<i64> = vec![1];
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let e = (n / d) as usize;
        let mut f = vec![0i64; e + 1];
        f[0] = -1;
        f[e] = 1;
        match moebius(d) {
            1 => num = int_mul(&num, &f),
            -1 => den = int_mul(&den, &f),
            _ => {}
        }
    }
    int_div_monic(&num, &den)
}

fn int_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut v = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v
}

/// Exact division by a polynomial whose leading coefficient is +-1.
fn int_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let lead = b[db];
    assert!(lead == 1 || lead == -1);
    let mut rem = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db] * lead;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
        q[k] = c;
    }
    assert!(rem.iter().all(|&r| r == 0), "cyclotomic factor division not exact");
    q
}

/// Per-conductor tables: the reduction rules for `x^k mod Phi_N` and the
/// reduced powers of the generator. Read-only after construction.
#[derive(Debug)]
struct Field {
    n: u32,
    phi: usize,
    cyclo: Vec<i64>,
    /// `reduce[k]` is `x^(phi + k) mod Phi_N`, for `k < phi - 1`.
    reduce: Vec<Vec<i64>>,
    /// `powers[j]` is `zeta^j` on the power basis, `j < n`.
    powers: Vec<Vec<i64>>,
}

impl Field {
    fn build(n: u32) -> Field {
        let cyclo = cyclotomic_polynomial(n);
        let phi = cyclo.len() - 1;
        // x^phi = -(c_0 + ... + c_{phi-1} x^{phi-1})
        let step = |v: &[i64]| -> Vec<i64> {
            // multiply a reduced vector by x and reduce
            let mut out = vec![0i64; phi];
            let top = v[phi - 1];
            for k in (1..phi).rev() {
                out[k] = v[k - 1];
            }
            if top != 0 {
                for k in 0..phi {
                    out[k] -= top * cyclo[k];
                }
            }
            out
        };
        let mut one = vec![0i64; phi];
        one[0] = 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = one;
        for _ in 0..n.max(2 * phi as u32) {
            powers.push(cur.clone());
            cur = step(&cur);
        }
        let reduce = (phi..2 * phi - 1).map(|k| powers[k].clone()).collect();
        powers.truncate(n as usize);
        Field {
            n,
            phi,
            cyclo,
            reduce,
            powers,
        }
    }
}

fn field(n: u32) -> Arc<Field> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("cyclotomic field cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(Field::build(n)))
        .clone()
}

/// Exact element of the cyclotomic field `Q(zeta_N)`.
///
/// Stored on the power basis `1, zeta, ..., zeta^(phi(N)-1)` as an integer
/// numerator vector over a common positive denominator, reduced so that the
/// gcd of all entries and the denominator is 1. That form is canonical, so
/// structural equality is field equality at a fixed conductor. Values of
/// different conductors compare with [`CycloNum::exact_eq`], which promotes
/// both sides to the lcm; arithmetic promotes automatically.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<Field>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    fn from_parts(field: Arc<Field>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CycloNum { field, num, den };
        x.normalize();
        x
    }

    fn from_i64_vec(field: Arc<Field>, v: &[i64]) -> Self {
        let num = v.iter().map(|&c| BigInt::from(c)).collect();
        CycloNum {
            field,
            num,
            den: BigInt::one(),
        }
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    return;
                }
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero(n: u32) -> Self {
        let f = field(n);
        let phi = f.phi;
        CycloNum {
            field: f,
            num: vec![BigInt::zero(); phi],
            den: BigInt::one(),
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(1, n)
    }

    pub fn from_int(k: i64, n: u32) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(k)), n)
    }

    pub fn from_rat(r: Rat, n: u32) -> Self {
        let mut x = Self::zero(n);
        x.num[0] = r.numer().clone();
        x.den = r.denom().clone();
        x.normalize();
        x
    }

    /// `zeta_N^k`; negative exponents are reduced mod `N`.
    pub fn root_of_unity(k: i64, n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let f = field(n);
        let j = k.rem_euclid(n as i64) as usize;
        let v = f.powers[j].clone();
        Self::from_i64_vec(f, &v)
    }

    /// `zeta_m^k` realized inside `Q(zeta_n)`; requires `m | n`.
    pub fn root_in(k: i64, m: u32, n: u32) -> Result<Self> {
        if m == 0 || !n.is_multiple_of(m) {
            return Err(Error::ConductorInsufficient(format!(
                "a primitive {m}-th root of unity does not lie in Q(zeta_{n})"
            )));
        }
        Ok(Self::root_of_unity(k * (n / m) as i64, n))
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    pub fn degree(&self) -> usize {
        self.field.phi
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational()
            .then(|| Rat::new(self.num[0].clone(), self.den.clone()))
    }

    /// Power-basis coefficients as reduced rationals.
    pub fn coeffs(&self) -> Vec<Rat> {
        self.num
            .iter()
            .map(|c| Rat::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn from_coeffs(coeffs: &[Rat], n: u32) -> Result<Self> {
        let f = field(n);
        if coeffs.len() != f.phi {
            return Err(Error::Invalid(format!(
                "expected {} coefficients for conductor {n}, got {}",
                f.phi,
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_parts(f, num, den))
    }

    /// Canonical key: numerator vector followed by the denominator.
    pub fn key(&self) -> (u32, &[BigInt], &BigInt) {
        (self.field.n, &self.num, &self.den)
    }

    pub fn promote(&self, m: u32) -> Result<Self> {
        let n = self.field.n;
        if m == n {
            return Ok(self.clone());
        }
        if m == 0 || !m.is_multiple_of(n) {
            return Err(Error::IncompatibleConductor { from: n, to: m });
        }
        let target = field(m);
        let step = (m / n) as usize;
        let mut num = vec![BigInt::zero(); target.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (acc, &b) in num.iter_mut().zip(&target.powers[(k * step) % m as usize]) {
                if b != 0 {
                    *acc += c * b;
                }
            }
        }
        Ok(Self::from_parts(target, num, self.den.clone()))
    }

    /// Inverse of [`promote`](Self::promote): the representation of `self`
    /// in `Q(zeta_m)`, if it lies there.
    pub fn demote(&self, m: u32) -> Option<Self> {
        let n = self.field.n;
        if m == 0 || !n.is_multiple_of(m) {
            return None;
        }
        if m == n {
            return Some(self.clone());
        }
        let small = field(m);
        // columns: images of zeta_m^k in Q(zeta_n)
        let cols: Vec<Vec<Rat>> = (0..small.phi)
            .map(|k| {
                CycloNum::root_in(k as i64, m, n)
                    .expect("m divides n")
                    .coeffs()
            })
            .collect();
        let rows = self.field.phi;
        let matrix: Vec<Vec<Rat>> = (0..rows)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let sol = linalg::solve(&matrix, &self.coeffs())?;
        Self::from_coeffs(&sol, m).ok()
    }

    pub fn exact_eq(&self, other: &CycloNum) -> bool {
        let (a, b) = unify(self, other);
        a.num == b.num && a.den == b.den
    }

    /// Complex conjugation, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let f = &self.field;
        let n = f.n as usize;
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (acc, &b) in num.iter_mut().zip(&f.powers[(n - k) % n]) {
                if b != 0 {
                    *acc += c * b;
                }
            }
        }
        Self::from_parts(f.clone(), num, self.den.clone())
    }

    /// Image under the Galois automorphism `zeta -> zeta^a`, `gcd(a, N) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let f = &self.field;
        let n = f.n as i64;
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = (a * k as i64).rem_euclid(n) as usize;
            for (acc, &b) in num.iter_mut().zip(&f.powers[j]) {
                if b != 0 {
                    *acc += c * b;
                }
            }
        }
        Self::from_parts(f.clone(), num, self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let r = Rat::new(self.num[0].clone(), self.den.clone());
            return Ok(Self::from_rat(r.recip(), self.field.n));
        }
        let a = UniPoly::new(self.coeffs());
        let m = UniPoly::from_ints(&self.field.cyclo);
        let (g, s, _) = UniPoly::xgcd(&a, &m);
        debug_assert!(g.degree() == Some(0));
        let mut c = s.coeffs().to_vec();
        c.resize(self.field.phi, Rat::zero());
        Self::from_coeffs(&c, self.field.n)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * r.denom())
    }

    /// Floating approximation for display; compensated summation of the
    /// power-basis expansion.
    pub fn approx(&self) -> Complex64 {
        let n = self.field.n as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut re = Neumaier::default();
        let mut im = Neumaier::default();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = Rat::new(c.clone(), BigInt::one()).to_f64().unwrap_or(f64::NAN) / den;
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
            let (s, co) = angle.sin_cos();
            re.add(c * co);
            im.add(c * s);
        }
        Complex64::new(re.sum(), im.sum())
    }
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}

fn unify(a: &CycloNum, b: &CycloNum) -> (CycloNum, CycloNum) {
    let (n, m) = (a.field.n, b.field.n);
    if n == m {
        return (a.clone(), b.clone());
    }
    let l = n.lcm(&m);
    (
        a.promote(l).expect("lcm is a multiple"),
        b.promote(l).expect("lcm is a multiple"),
    )
}

fn add_impl(a: &CycloNum, b: &CycloNum, sign: i32) -> CycloNum {
    if a.field.n != b.field.n {
        let (a, b) = unify(a, b);
        return add_impl(&a, &b, sign);
    }
    let combine = |x: &BigInt, y: &BigInt| if sign > 0 { x + y } else { x - y };
    if a.den == b.den {
        let num = a.num.iter().zip(&b.num).map(|(x, y)| combine(x, y)).collect();
        return CycloNum::from_parts(a.field.clone(), num, a.den.clone());
    }
    let l = a.den.lcm(&b.den);
    let fa = &l / &a.den;
    let fb = &l / &b.den;
    let num = a
        .num
        .iter()
        .zip(&b.num)
        .map(|(x, y)| combine(&(x * &fa), &(y * &fb)))
        .collect();
    CycloNum::from_parts(a.field.clone(), num, l)
}

fn mul_impl(a: &CycloNum, b: &CycloNum) -> CycloNum {
    if a.field.n != b.field.n {
        let (a, b) = unify(a, b);
        return mul_impl(&a, &b);
    }
    let f = &a.field;
    let phi = f.phi;
    if a.is_zero() || b.is_zero() {
        return CycloNum::zero(f.n);
    }
    let mut prod = vec![BigInt::zero(); 2 * phi - 1];
    for (i, x) in a.num.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.num.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    let (low, high) = prod.split_at_mut(phi);
    for (k, c) in high.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (acc, &r) in low.iter_mut().zip(&f.reduce[k]) {
            if r != 0 {
                *acc += c * r;
            }
        }
    }
    prod.truncate(phi);
    CycloNum::from_parts(f.clone(), prod, &a.den * &b.den)
}

impl PartialEq for CycloNum {
    /// Structural equality at a fixed conductor; see [`CycloNum::exact_eq`].
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNum {
    /// e.g. `1/2 + 3/2*z60^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.field.n;
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
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{n}")?;
                    } else {
                        write!(f, "z{n}^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        add_impl(self, rhs, 1)
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        add_impl(self, rhs, -1)
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        mul_impl(self, rhs)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn bigint_to_json(b: &BigInt) -> serde_json::Value {
    match b.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(b.to_string()),
    }
}

fn json_to_bigint(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<serde_json::Value> = self
            .coeffs()
            .iter()
            .map(|c| serde_json::Value::Array(vec![bigint_to_json(c.numer()), bigint_to_json(c.denom())]))
            .collect();
        let v = serde_json::json!({ "conductor": self.field.n, "coeffs": coeffs });
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            conductor: u32,
            coeffs: Vec<[serde_json::Value; 2]>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.conductor == 0 {
            return Err(de::Error::custom("conductor must be positive"));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|[n, d]| {
                let n = json_to_bigint(n).ok_or_else(|| de::Error::custom("bad numerator"))?;
                let d = json_to_bigint(d).ok_or_else(|| de::Error::custom("bad denominator"))?;
                if d.is_zero() {
                    return Err(de::Error::custom("zero denominator"));
                }
                Ok(Rat::new(n, d))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        CycloNum::from_coeffs(&coeffs, raw.conductor).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn z(k: i64, n: u32) -> CycloNum {
        CycloNum::root_of_unity(k, n)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(60).len() - 1, 16);
        let c105 = cyclotomic_polynomial(105);
        assert_eq!(c105[7], -2);
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(z(2, 4), CycloNum::from_int(-1, 4));
        assert_eq!(z(1, 4).pow(4), CycloNum::one(4));
    }

    #[test]
    fn golden_ratio_from_tenth_roots() {
        let tau = &z(1, 10) + &z(-1, 10);
        // tau^2 - tau - 1 = 0
        let lhs = &(&(&tau * &tau) - &tau) - &CycloNum::one(10);
        assert!(lhs.is_zero());
        assert!(tau.approx().re > 0.0);
        assert!((tau.approx().re - 1.618_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn fifth_root_inside_conductor_sixty() {
        let w = z(12, 60);
        assert!(w.exact_eq(&z(1, 5)));
        let mut acc = CycloNum::one(60);
        for _ in 0..5 {
            acc = &acc * &w;
        }
        assert!(acc.is_one());
        // order is exactly 5: no smaller power is 1
        for k in 1..5 {
            assert!(!w.pow(k).is_one());
        }
    }

    #[test]
    fn promotion_rules() {
        let m1 = CycloNum::from_int(-1, 1);
        for m in [3, 8, 60] {
            assert_eq!(m1.promote(m).unwrap(), CycloNum::from_int(-1, m));
        }
        assert_eq!(
            z(1, 12).promote(20),
            Err(Error::IncompatibleConductor { from: 12, to: 20 })
        );
        let prod = &z(1, 5).promote(60).unwrap() * &z(1, 12).promote(60).unwrap();
        // zeta_5 * zeta_12 = zeta_60^17, a primitive 60th root
        assert_eq!(prod, z(17, 60));
        for k in 1..60 {
            assert!(!prod.pow(k).is_one());
        }
        assert!(prod.pow(60).is_one());
    }

    #[test]
    fn demotion_round_trip() {
        let x = &z(1, 5) + &CycloNum::from_rat(rat(3, 7), 5);
        let up = x.promote(60).unwrap();
        assert_eq!(up.demote(5).unwrap(), x);
        assert!(z(1, 60).demote(5).is_none());
    }

    #[test]
    fn approximations() {
        assert_eq!(CycloNum::zero(7).approx(), Complex64::new(0.0, 0.0));
        let e8 = z(1, 8).approx();
        let h = std::f64::consts::SQRT_2 / 2.0;
        assert!((e8.re - h).abs() < 1e-12 && (e8.im - h).abs() < 1e-12);
    }

    #[test]
    fn character_sums_of_roots() {
        for n in [1u32, 4, 6, 10, 12, 60] {
            for k in 0..(2 * n as i64) {
                let mut s = CycloNum::zero(n);
                for j in 0..n as i64 {
                    s = &s + &z(j * k, n);
                }
                let expect = if k % n as i64 == 0 { n as i64 } else { 0 };
                assert_eq!(s, CycloNum::from_int(expect, n), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn inverse_and_conjugate() {
        let x = &(&z(1, 24) + &z(5, 24)) + &CycloNum::from_int(2, 24);
        let xi = x.inv().unwrap();
        assert!((&x * &xi).is_one());
        assert_eq!(x.conj().conj(), x);
        assert_eq!(z(1, 24).conj(), z(23, 24));
        assert_eq!(CycloNum::zero(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn json_shape() {
        let x = CycloNum::from_rat(rat(-1, 2), 4);
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v, serde_json::json!({"conductor": 4, "coeffs": [[-1, 2], [0, 1]]}));
        let back: CycloNum = serde_json::from_value(v).unwrap();
        assert_eq!(back, x);
    }
}
