//! Class-algebra eigenvector method for irreducible characters.

use std::collections::HashSet;

use num_complex::Complex64;
use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::linalg::nullspace;
use crate::exact::{euler_phi, rat_int, CycloNum, Rat, UniPoly};
use crate::klein::MatrixGroup;

/// Relative residual below which a candidate eigenvalue is checked exactly.
const PREFILTER_TOLERANCE: f64 = 1e-9;

/// Class constants: `a[i][j][k] = #{(x, y) in C_i x C_j : x y = z_k}`.
pub(super) fn class_constants(g: &MatrixGroup) -> Vec<Vec<Vec<u64>>> {
    let r = g.classes().len();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (i, ci) in g.classes().iter().enumerate() {
        for (k, ck) in g.classes().iter().enumerate() {
            for &x in &ci.members {
                let y = g.mul(g.inverse(x), ck.rep);
                a[i][g.class_of(y)][k] += 1;
            }
        }
    }
    a
}

/// Characteristic polynomial of an integer matrix (Faddeev-LeVerrier).
pub(super) fn char_poly(m: &[Vec<i64>]) -> UniPoly {
    let r = m.len();
    let a: Vec<Vec<Rat>> = m
        .iter()
        .map(|row| row.iter().map(|&x| rat_int(x)).collect())
        .collect();
    let mut c = vec![Rat::zero(); r + 1];
    c[r] = rat_int(1);
    let mut mk = vec![vec![Rat::zero(); r]; r];
    for k in 1..=r {
        // M_k = A M_{k-1} + c_{r-k+1} I
        let mut next = vec![vec![Rat::zero(); r]; r];
        for i in 0..r {
            for j in 0..r {
                let mut s = Rat::zero();
                for l in 0..r {
                    if !a[i][l].is_zero() && !mk[l][j].is_zero() {
                        s += &a[i][l] * &mk[l][j];
                    }
                }
                if i == j {
                    s += &c[r - k + 1];
                }
                next[i][j] = s;
            }
        }
        mk = next;
        // c_{r-k} = -tr(A M_k) / k
        let mut tr = Rat::zero();
        for i in 0..r {
            for l in 0..r {
                if !a[i][l].is_zero() && !mk[l][i].is_zero() {
                    tr += &a[i][l] * &mk[l][i];
                }
            }
        }
        c[r - k] = -tr / rat_int(k as i64);
    }
    UniPoly::new(c)
}

/// Distinct sums of exactly `k` `o`-th roots of unity, for every `k <= max`,
/// as reduced integer vectors on the power basis of `Q(zeta_o)`.
struct RootSums {
    o: u32,
    basis: Vec<Complex64>,
    by_count: Vec<Vec<Vec<i64>>>,
}

impl RootSums {
    fn new(o: u32, max: usize) -> Self {
        let phi = euler_phi(o);
        let roots: Vec<Vec<i64>> = (0..o as i64)
            .map(|j| {
                CycloNum::root_of_unity(j, o)
                    .coeffs()
                    .iter()
                    .map(|c| c.to_integer().to_i64().expect("root coefficients are small"))
                    .collect()
            })
            .collect();
        let mut by_count = vec![vec![vec![0i64; phi]]];
        for _ in 0..max {
            let prev = by_count.last().expect("nonempty");
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for s in prev {
                for z in &roots {
                    let v: Vec<i64> = s.iter().zip(z).map(|(a, b)| a + b).collect();
                    if seen.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            by_count.push(next);
        }
        let basis = (0..phi)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / o as f64))
            .collect();
        RootSums { o, basis, by_count }
    }

    fn approx(&self, v: &[i64]) -> Complex64 {
        v.iter()
            .zip(&self.basis)
            .map(|(&c, b)| b * c as f64)
            .sum()
    }
}

fn poly_residual(p: &[f64], x: Complex64) -> (f64, f64) {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    let ax = x.norm();
    for &c in p.iter().rev() {
        acc = acc * x + c;
        scale = scale * ax + c.abs();
    }
    (acc.norm(), scale)
}

/// Distinct eigenvalues of the class matrix `M_i`, found among the values
/// `|C_i| s / d` with `s` a sum of `d` roots of unity of the class order and
/// `d` a possible character degree. Each is certified as an exact root of the
/// characteristic polynomial.
pub(super) fn eigenvalues(
    cp: &UniPoly,
    class_size: usize,
    class_order: u32,
    degrees: &[usize],
    conductor: u32,
) -> Result<Vec<CycloNum>> {
    let max_d = degrees.iter().copied().max().unwrap_or(1);
    let sums = RootSums::new(class_order, max_d);
    let pf: Vec<f64> = cp
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    let mut found: Vec<CycloNum> = Vec::new();
    for &d in degrees {
        let factor = Rat::new((class_size as i64).into(), (d as i64).into());
        let ff = factor.to_f64().expect("small rational");
        for s in &sums.by_count[d] {
            let x = sums.approx(s) * ff;
            let (res, scale) = poly_residual(&pf, x);
            if res > PREFILTER_TOLERANCE * scale.max(1.0) {
                continue;
            }
            let coeffs: Vec<Rat> = s.iter().map(|&c| rat_int(c)).collect();
            let lam = CycloNum::from_coeffs(&coeffs, sums.o)?
                .promote(conductor)?
                .scale(&factor);
            if found.contains(&lam) {
                continue;
            }
            if cp.eval(&lam).is_zero() {
                found.push(lam);
            }
        }
    }
    Ok(found)
}

/// Common eigenvectors of all class matrices, one per irreducible character,
/// each scaled so the identity-class entry is 1.
pub(super) fn common_eigenvectors(g: &MatrixGroup, conductor: u32) -> Result<Vec<Vec<CycloNum>>> {
    let classes = g.classes();
    let r = classes.len();
    let a = class_constants(g);
    let center = g.center().len();
    let index = g.order() / center;
    let degrees: Vec<usize> = (1..=index)
        .filter(|d| d * d <= index && index.is_multiple_of(*d))
        .collect();
    let zero = CycloNum::zero(conductor);
    let one = CycloNum::one(conductor);

    // start from the whole space
    let mut spaces: Vec<Vec<Vec<CycloNum>>> = vec![(0..r)
        .map(|j| {
            let mut v = vec![zero.clone(); r];
            v[j] = one.clone();
            v
        })
        .collect()];

    let mut order: Vec<usize> = (1..r).collect();
    order.sort_by_key(|&i| (euler_phi(classes[i].order), i));
    for i in order {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mi: Vec<Vec<i64>> = (0..r)
            .map(|j| (0..r).map(|k| a[i][j][k] as i64).collect())
            .collect();
        let cp = char_poly(&mi);
        let lams = eigenvalues(&cp, classes[i].size(), classes[i].order, &degrees, conductor)?;
        let mic: Vec<Vec<CycloNum>> = mi
            .iter()
            .map(|row| row.iter().map(|&x| CycloNum::from_int(x, conductor)).collect())
            .collect();
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let dim = basis.len();
            // image columns M_i b for each basis vector b
            let images: Vec<Vec<CycloNum>> = basis
                .iter()
                .map(|b| {
                    (0..r)
                        .map(|row| {
                            mic[row]
                                .iter()
                                .zip(b)
                                .filter(|(m, x)| !m.is_zero() && !x.is_zero())
                                .fold(zero.clone(), |acc, (m, x)| &acc + &(m * x))
                        })
                        .collect()
                })
                .collect();
            let mut total = 0;
            for lam in &lams {
                // (M_i - lam) B c = 0
                let rows: Vec<Vec<CycloNum>> = (0..r)
                    .map(|row| {
                        (0..dim)
                            .map(|col| &images[col][row] - &(lam * &basis[col][row]))
                            .collect()
                    })
                    .collect();
                let ker = nullspace(&rows, dim, &zero);
                if ker.is_empty() {
                    continue;
                }
                total += ker.len();
                let sub: Vec<Vec<CycloNum>> = ker
                    .iter()
                    .map(|c| {
                        (0..r)
                            .map(|row| {
                                c.iter()
                                    .zip(&basis)
                                    .filter(|(x, _)| !x.is_zero())
                                    .fold(zero.clone(), |acc, (x, b)| &acc + &(x * &b[row]))
                            })
                            .collect()
                    })
                    .collect();
                next.push(sub);
            }
            if total != dim {
                return Err(Error::CharacterOracleFailed(format!(
                    "class {i}: eigenspaces cover {total} of {dim} dimensions"
                )));
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::CharacterOracleFailed(format!(
            "{} common eigenspaces for {r} classes",
            spaces.len()
        )));
    }
    spaces
        .into_iter()
        .map(|mut s| {
            let v = s.pop().expect("one-dimensional");
            let inv = v[0].inv().map_err(|_| {
                Error::CharacterOracleFailed("eigenvector vanishes at the identity".into())
            })?;
            Ok(v.iter().map(|x| x * &inv).collect())
        })
        .collect()
}

/// Degree from a normalized eigenvector `w` via `d^2 = |G| / sum_k |w_k|^2 / |C_k|`.
pub(super) fn degree_of(w: &[CycloNum], sizes: &[usize], order: usize) -> Result<u32> {
    let n = w[0].conductor();
    let mut s = CycloNum::zero(n);
    for (x, &h) in w.iter().zip(sizes) {
        s = &s + &(x * &x.conj()).scale(&Rat::new(1.into(), (h as i64).into()));
    }
    let fail = || Error::CharacterOracleFailed("non-integral character degree".into());
    let s = s.to_rat().ok_or_else(fail)?;
    let d2 = rat_int(order as i64) / s;
    if !d2.is_integer() {
        return Err(fail());
    }
    let d2 = d2.to_integer().to_u64().ok_or_else(fail)?;
    let d = d2.sqrt();
    if d * d != d2 || d == 0 {
        return Err(fail());
    }
    Ok(d as u32)
}

pub(super) fn working_conductor(g: &MatrixGroup) -> u32 {
    g.conductor().lcm(&g.exponent())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_of_small_matrices() {
        // [[0, 1], [1, 0]] -> x^2 - 1
        assert_eq!(char_poly(&[vec![0, 1], vec![1, 0]]), UniPoly::from_ints(&[-1, 0, 1]));
        // [[2, 1], [0, 3]] -> (x - 2)(x - 3)
        assert_eq!(char_poly(&[vec![2, 1], vec![0, 3]]), UniPoly::from_ints(&[6, -5, 1]));
    }

    #[test]
    fn root_sums_count() {
        // sums of two 4th roots: 0, 2, -2, 2i, -2i, 1+i, 1-i, -1+i, -1-i
        let s = RootSums::new(4, 2);
        assert_eq!(s.by_count[2].len(), 9);
        assert_eq!(s.by_count[1].len(), 4);
    }
}
