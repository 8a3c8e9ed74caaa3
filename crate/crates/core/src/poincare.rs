//! Exact solution of the polynomial system
//! `sum_j (delta_ij (1 + t^2) - m_ij t) P_j = (1 - t^d1)(1 - t^d2) delta_{i,0}`.

use serde::{Serialize, Serializer};

use crate::ade::{signed_index, Node};
use crate::characters::McKayMatrix;
use crate::error::{Error, Result};
use crate::exact::{rat_int, CycloNum, UniPoly};
use crate::klein::GroupType;

/// Half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn twice(self) -> i64 {
        self.0
    }
}

impl std::fmt::Display for HalfInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 % 2 == 0 {
            s.serialize_i64(self.0 / 2)
        } else {
            s.serialize_f64(self.0 as f64 / 2.0)
        }
    }
}

/// `1 - m t + t^2` on the diagonal and `-m t` elsewhere.
pub fn system_matrix(m: &McKayMatrix) -> Vec<Vec<UniPoly>> {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = (i == j) as i64;
                    UniPoly::from_ints(&[d, -(m.get(i, j) as i64), d])
                })
                .collect()
        })
        .collect()
}

/// `(1 - t^d1)(1 - t^d2)`.
pub fn right_side(d1: u32, d2: u32) -> UniPoly {
    let f = |d: u32| UniPoly::one() - UniPoly::monomial(rat_int(1), d as usize);
    &f(d1) * &f(d2)
}

/// Fraction-free forward elimination of `a` in place. Returns the sign of the
/// row permutation, or `None` if the matrix is singular.
fn bareiss(a: &mut [Vec<UniPoly>], ncols: usize) -> Result<Option<i32>> {
    let n = a.len();
    let mut sign = 1;
    let mut prev = UniPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(None);
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..ncols {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = UniPoly::zero();
        }
        prev = a[k][k].clone();
    }
    Ok(Some(sign))
}

pub fn determinant(m: &[Vec<UniPoly>]) -> Result<UniPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(UniPoly::one());
    }
    let mut a = m.to_vec();
    Ok(match bareiss(&mut a, n)? {
        Some(sign) => a[n - 1][n - 1].scale(&rat_int(sign as i64)),
        None => UniPoly::zero(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PoincareSolution {
    pub degrees: (u32, u32),
    pub trivial: usize,
    pub polys: Vec<UniPoly>,
}

impl PoincareSolution {
    /// Solves the system for the McKay matrix `m`; fails unless every
    /// component is a polynomial with nonnegative integer coefficients.
    pub fn solve(m: &McKayMatrix, degrees: (u32, u32), trivial: usize) -> Result<Self> {
        let n = m.len();
        let a = system_matrix(m);
        let b = right_side(degrees.0, degrees.1);
        let mut aug: Vec<Vec<UniPoly>> = a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.push(if i == trivial { b.clone() } else { UniPoly::zero() });
                r
            })
            .collect();
        let inconsistent = |msg: String| Error::SystemInconsistency(msg);
        bareiss(&mut aug, n + 1)
            .map_err(|e| inconsistent(format!("elimination: {e}")))?
            .ok_or_else(|| inconsistent("singular system".into()))?;
        let mut x = vec![UniPoly::zero(); n];
        for i in (0..n).rev() {
            let mut num = aug[i][n].clone();
            for j in i + 1..n {
                num = &num - &(&aug[i][j] * &x[j]);
            }
            x[i] = num.div_exact(&aug[i][i]).map_err(|_| {
                inconsistent(format!(
                    "component {i} is not a polynomial for degrees {degrees:?}"
                ))
            })?;
        }
        let sol = PoincareSolution {
            degrees,
            trivial,
            polys: x,
        };
        if !sol.residual_vanishes(m) {
            return Err(inconsistent("nonzero residual".into()));
        }
        if let Some(i) = sol.polys.iter().position(|p| !p.has_nonnegative_integer_coeffs()) {
            return Err(inconsistent(format!(
                "component {i} has a negative or fractional coefficient"
            )));
        }
        Ok(sol)
    }

    /// Substitutes the solution back into the system.
    pub fn residual_vanishes(&self, m: &McKayMatrix) -> bool {
        let a = system_matrix(m);
        let b = right_side(self.degrees.0, self.degrees.1);
        a.iter().enumerate().all(|(i, row)| {
            let lhs = row
                .iter()
                .zip(&self.polys)
                .fold(UniPoly::zero(), |acc, (aij, pj)| &acc + &(aij * pj));
            let rhs = if i == self.trivial { b.clone() } else { UniPoly::zero() };
            lhs == rhs
        })
    }

    /// Cramer's rule: `det(A) P_i = det(A with column i replaced by b)`.
    pub fn cramer_check(&self, m: &McKayMatrix) -> Result<bool> {
        let a = system_matrix(m);
        let det = determinant(&a)?;
        let b = right_side(self.degrees.0, self.degrees.1);
        for (i, p) in self.polys.iter().enumerate() {
            let mut ai = a.clone();
            for (r, row) in ai.iter_mut().enumerate() {
                row[i] = if r == self.trivial { b.clone() } else { UniPoly::zero() };
            }
            if determinant(&ai)? != &det * p {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn poly(&self, i: usize) -> &UniPoly {
        &self.polys[i]
    }

    /// `(lowest + highest exponent) / 2`.
    pub fn center(&self, i: usize) -> Option<HalfInt> {
        let p = &self.polys[i];
        Some(HalfInt((p.valuation()? + p.degree()?) as i64))
    }

    pub fn split(&self, i: usize) -> Result<(UniPoly, UniPoly)> {
        let h = self
            .center(i)
            .ok_or_else(|| Error::AmbiguousSplit(format!("component {i} is zero")))?;
        split(&self.polys[i], h)
    }
}

/// Terms above the center and terms below it; a term at the center is an error.
pub fn split(p: &UniPoly, h: HalfInt) -> Result<(UniPoly, UniPoly)> {
    let mut plus = vec![rat_int(0); p.coeffs().len()];
    let mut minus = plus.clone();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c == &rat_int(0) {
            continue;
        }
        let twice = 2 * k as i64;
        match twice.cmp(&h.twice()) {
            std::cmp::Ordering::Greater => plus[k] = c.clone(),
            std::cmp::Ordering::Less => minus[k] = c.clone(),
            std::cmp::Ordering::Equal => return Err(Error::AmbiguousSplit(h.to_string())),
        }
    }
    Ok((UniPoly::new(plus), UniPoly::new(minus)))
}

/// Specialization point of a node: 1, -1, `zeta_{2p_X}^{+-n}` with the sign
/// of the node label, or `zeta_n^k`.
pub fn node_point(node: Node, gtype: GroupType, conductor: u32) -> Result<CycloNum> {
    Ok(match node {
        Node::Zero => CycloNum::one(conductor),
        Node::Star => CycloNum::from_int(-1, conductor),
        Node::Branch(x, n) => {
            let p = gtype.triple().ok_or_else(|| Error::Invalid("branch node on a cyclic type".into()))?[x.index()];
            CycloNum::root_in(signed_index(gtype, x, n), 2 * p, conductor)?
        }
        Node::Cycle(k) => {
            let GroupType::Cyclic(n) = gtype else {
                return Err(Error::Invalid("cycle node on a non-cyclic type".into()));
            };
            CycloNum::root_in(k as i64, n, conductor)?
        }
    })
}

pub fn evaluate_at_node(p: &UniPoly, node: Node, gtype: GroupType, conductor: u32) -> Result<CycloNum> {
    Ok(p.eval(&node_point(node, gtype, conductor)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_of_two_terms() {
        let p = UniPoly::from_ints(&[1, 0, 0, 1]);
        let (plus, minus) = split(&p, HalfInt(3)).unwrap();
        assert_eq!(plus, UniPoly::monomial(rat_int(1), 3));
        assert_eq!(minus, UniPoly::one());
        let q = UniPoly::from_ints(&[0, 1, 1, 1]);
        assert!(matches!(split(&q, HalfInt(4)), Err(Error::AmbiguousSplit(_))));
    }

    #[test]
    fn half_integers_print() {
        assert_eq!(HalfInt(30).to_string(), "15");
        assert_eq!(HalfInt(7).to_string(), "3.5");
        assert_eq!(serde_json::to_string(&HalfInt(7)).unwrap(), "3.5");
        assert_eq!(serde_json::to_string(&HalfInt(4)).unwrap(), "2");
    }

    #[test]
    fn cyclic_two_system() {
        // A1: M = [[0, 2], [2, 0]], degrees (2, 2)
        let m = McKayMatrix::from_rows(vec![vec![0, 2], vec![2, 0]]);
        let sol = PoincareSolution::solve(&m, (2, 2), 0).unwrap();
        assert_eq!(sol.poly(0), &UniPoly::from_ints(&[1, 0, 1]));
        assert_eq!(sol.poly(1), &UniPoly::from_ints(&[0, 2]));
        assert!(sol.cramer_check(&m).unwrap());
    }

    #[test]
    fn wrong_degrees_are_rejected() {
        let m = McKayMatrix::from_rows(vec![vec![0, 2], vec![2, 0]]);
        assert!(matches!(
            PoincareSolution::solve(&m, (3, 2), 0),
            Err(Error::SystemInconsistency(_))
        ));
    }

    #[test]
    fn determinant_of_constant_matrix() {
        let a = vec![
            vec![UniPoly::from_ints(&[2]), UniPoly::from_ints(&[1])],
            vec![UniPoly::from_ints(&[1]), UniPoly::from_ints(&[3])],
        ];
        assert_eq!(determinant(&a).unwrap(), UniPoly::from_ints(&[5]));
    }
}
