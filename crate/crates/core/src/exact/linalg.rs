//! Dense Gaussian elimination over exact fields.

use num_traits::{One, Zero};

use super::{CycloNum, Rat};

/// Field element usable by the elimination routines. Zero and one are taken
/// "like" an existing element so cyclotomic values keep their conductor.
pub trait Scalar: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_val(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn recip_val(&self) -> Self;
}

impl Scalar for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero_val(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn recip_val(&self) -> Self {
        self.recip()
    }
}

impl Scalar for CycloNum {
    fn zero_like(&self) -> Self {
        CycloNum::zero(self.conductor())
    }
    fn one_like(&self) -> Self {
        CycloNum::one(self.conductor())
    }
    fn is_zero_val(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn recip_val(&self) -> Self {
        self.inv().expect("pivot is nonzero")
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: Scalar>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero_val()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip_val();
        if !inv.is_one_val() {
            for x in m[r].iter_mut() {
                if !x.is_zero_val() {
                    *x = x.mul_ref(&inv);
                }
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero_val() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero_val() {
                    *x = x.sub_ref(&f.mul_ref(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

trait IsOne {
    fn is_one_val(&self) -> bool;
}

impl<T: Scalar> IsOne for T {
    fn is_one_val(&self) -> bool {
        *self == self.one_like()
    }
}

/// Basis of the right kernel `{x : m x = 0}`. `ncols` is needed when `m`
/// has no rows; `template` fixes the scalar kind for that case.
pub fn nullspace<T: Scalar>(m: &[Vec<T>], ncols: usize, template: &T) -> Vec<Vec<T>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let zero = template.zero_like();
    let one = template.one_like();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); ncols];
            v[f] = one.clone();
            for (row, &pc) in pivots.iter().enumerate() {
                let x = &a[row][f];
                if !x.is_zero_val() {
                    v[pc] = zero.sub_ref(x);
                }
            }
            v
        })
        .collect()
}

pub fn rank<T: Scalar>(m: &[Vec<T>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Unique solution of `m x = b`, or `None` if the system is singular or
/// inconsistent.
pub fn solve<T: Scalar>(m: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<T>> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != ncols || pivots.contains(&ncols) {
        return None;
    }
    Some(aug.iter().take(ncols).map(|r| r[ncols].clone()).collect())
}

/// Any solution of a consistent system, free variables set to zero.
pub fn solve_any<T: Scalar>(m: &[Vec<T>], b: &[T], template: &T) -> Option<Vec<T>> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<T>> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![template.zero_like(); ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn solves_small_system() {
        let m = vec![r(&[2, 1]), r(&[1, 3])];
        let x = solve(&m, &r(&[3, 5])).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let sing = vec![r(&[1, 2]), r(&[2, 4])];
        assert!(solve(&sing, &r(&[1, 1])).is_none());
    }

    #[test]
    fn kernel_of_cartan_a2_affine() {
        // affine A2: 2I - adjacency of a triangle
        let m = vec![r(&[2, -1, -1]), r(&[-1, 2, -1]), r(&[-1, -1, 2])];
        let k = nullspace(&m, 3, &rat_int(0));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], r(&[1, 1, 1]));
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn cyclotomic_kernel() {
        let i = CycloNum::root_of_unity(1, 4);
        let one = CycloNum::one(4);
        // [[1, i], [i, -1]] has kernel spanned by (-i, 1)
        let m = vec![vec![one.clone(), i.clone()], vec![i.clone(), -&one]];
        let k = nullspace(&m, 2, &one);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![-&i, one]);
    }
}
