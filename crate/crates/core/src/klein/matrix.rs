use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::CycloNum;

/// 2x2 matrix over a single cyclotomic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[CycloNum; 2]; 2]);

impl Mat2 {
    pub fn identity(n: u32) -> Self {
        let (o, z) = (CycloNum::one(n), CycloNum::zero(n));
        Mat2([[o.clone(), z.clone()], [z, o]])
    }

    pub fn scalar(c: CycloNum) -> Self {
        let z = CycloNum::zero(c.conductor());
        Mat2([[c.clone(), z.clone()], [z, c]])
    }

    pub fn diag(a: CycloNum, d: CycloNum) -> Self {
        let z = CycloNum::zero(a.conductor());
        Mat2([[a, z.clone()], [z, d]])
    }

    /// Quaternion `a + b i + c j + d k` as `[[a + b i, c + d i], [-c + d i, a - b i]]`,
    /// with `a..d` real numbers of the field.
    pub fn quaternion(a: &CycloNum, b: &CycloNum, c: &CycloNum, d: &CycloNum) -> Result<Self> {
        let n = a.conductor();
        let i = CycloNum::root_in(1, 4, n)?;
        let bi = b * &i;
        let di = d * &i;
        Ok(Mat2([[a + &bi, c + &di], [&di - c, a - &bi]]))
    }

    pub fn conductor(&self) -> u32 {
        self.0[0][0].conductor()
    }

    pub fn entry(&self, r: usize, c: usize) -> &CycloNum {
        &self.0[r][c]
    }

    pub fn trace(&self) -> CycloNum {
        &self.0[0][0] + &self.0[1][1]
    }

    pub fn det(&self) -> CycloNum {
        &(&self.0[0][0] * &self.0[1][1]) - &(&self.0[0][1] * &self.0[1][0])
    }

    pub fn conj_transpose(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn is_unitary(&self) -> bool {
        (self * &self.conj_transpose()) == Mat2::identity(self.conductor())
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        let m = &self.0;
        Mat2([[&m[0][0] * c, &m[0][1] * c], [&m[1][0] * c, &m[1][1] * c]])
    }

    /// `M v` for a column vector.
    pub fn apply(&self, v: &[CycloNum; 2]) -> [CycloNum; 2] {
        let m = &self.0;
        [
            &(&m[0][0] * &v[0]) + &(&m[0][1] * &v[1]),
            &(&m[1][0] * &v[0]) + &(&m[1][1] * &v[1]),
        ]
    }

    pub fn promote(&self, n: u32) -> Result<Self> {
        let m = &self.0;
        Ok(Mat2([
            [m[0][0].promote(n)?, m[0][1].promote(n)?],
            [m[1][0].promote(n)?, m[1][1].promote(n)?],
        ]))
    }
}

impl std::ops::Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let e = |r: usize, c: usize| &(&a[r][0] * &b[0][c]) + &(&a[r][1] * &b[1][c]);
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

impl std::ops::Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        let m = &self.0;
        Mat2([[-&m[0][0], -&m[0][1]], [-&m[1][0], -&m[1][1]]])
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// One conjugacy class of a [`MatrixGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub id: usize,
    /// Smallest element index in the class.
    pub rep: usize,
    pub members: Vec<usize>,
    pub order: u32,
    pub inverse_class: usize,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Finite matrix group enumerated by closure, with its full multiplication
/// table. Index 0 is always the identity.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    conductor: u32,
    elements: Vec<Mat2>,
    index: HashMap<Mat2, usize>,
    table: Vec<Vec<u32>>,
    inverse: Vec<usize>,
    orders: Vec<u32>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
}

impl MatrixGroup {
    /// Closure of `gens` under multiplication. Fails once more than `bound`
    /// elements have been produced.
    pub fn generate(gens: &[Mat2], conductor: u32, bound: usize) -> Result<Self> {
        let id = Mat2::identity(conductor);
        let gens: Vec<Mat2> = gens
            .iter()
            .map(|g| g.promote(conductor))
            .collect::<Result<_>>()?;
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        // origin[x] = (generator, parent) with elements[x] = gens[g] * elements[parent]
        let mut origin: Vec<Option<(usize, usize)>> = vec![None];
        let mut left: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let y = g * &elements[x];
                let yi = match index.get(&y) {
                    Some(&yi) => yi,
                    None => {
                        let yi = elements.len();
                        if yi >= bound {
                            return Err(Error::ClosureOverflow(bound));
                        }
                        index.insert(y.clone(), yi);
                        elements.push(y);
                        origin.push(Some((gi, x)));
                        queue.push_back(yi);
                        yi
                    }
                };
                let row = &mut left[gi];
                if row.len() <= x {
                    row.resize(x + 1, u32::MAX);
                }
                row[x] = yi as u32;
            }
        }
        let n = elements.len();
        let mut table: Vec<Vec<u32>> = vec![Vec::new(); n];
        table[0] = (0..n as u32).collect();
        // BFS order guarantees parents are filled before children
        for a in 1..n {
            let (g, p) = origin[a].expect("non-identity element has a parent");
            let row: Vec<u32> = table[p].iter().map(|&pb| left[g][pb as usize]).collect();
            table[a] = row;
        }
        let mut inverse = vec![0usize; n];
        for a in 0..n {
            inverse[a] = table[a]
                .iter()
                .position(|&c| c == 0)
                .expect("finite group element has an inverse");
        }
        let orders = (0..n)
            .map(|a| {
                let mut k = 1;
                let mut x = a;
                while x != 0 {
                    x = table[a][x] as usize;
                    k += 1;
                }
                k
            })
            .collect();
        let mut group = MatrixGroup {
            conductor,
            elements,
            index,
            table,
            inverse,
            orders,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        group.compute_classes();
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members: Vec<usize> = (0..n).map(|g| self.conjugate(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = id;
            }
            classes.push(ConjClass {
                id,
                rep: x,
                members,
                order: self.orders[x],
                inverse_class: usize::MAX,
            });
        }
        for c in &mut classes {
            c.inverse_class = class_of[self.inverse[c.rep]];
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Mat2 {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Mat2) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g^-1`
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inverse[a] } else { a };
        let mut x = 0;
        for _ in 0..e.unsigned_abs() {
            x = self.mul(x, base);
        }
        x
    }

    pub fn element_order(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| (0..self.order()).all(|g| self.mul(g, z) == self.mul(z, g)))
            .collect()
    }

    /// Exponent: lcm of element orders.
    pub fn exponent(&self) -> u32 {
        use num_integer::Integer;
        self.orders.iter().fold(1u32, |acc, &o| acc.lcm(&o))
    }

    /// Subgroup generated by the given element indices.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut members = vec![0usize];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        members
    }

    /// Elements normalizing the subgroup given as a sorted member list.
    pub fn normalizer(&self, sub: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| {
                sub.iter()
                    .all(|&h| sub.binary_search(&self.conjugate(g, h)).is_ok())
            })
            .collect()
    }

    /// Shortest words in the given generators for every element, generators
    /// tried in order so the choice is deterministic. `names[i]` labels `gens[i]`.
    pub fn words(&self, gens: &[usize], names: &[&str]) -> Vec<String> {
        let n = self.order();
        let mut word: Vec<Option<Vec<usize>>> = vec![None; n];
        word[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if word[y].is_none() {
                    let mut w = word[x].clone().expect("visited");
                    w.push(gi);
                    word[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        word.into_iter()
            .map(|w| w.map_or_else(|| "?".to_string(), |w| format_word(&w, names)))
            .collect()
    }
}

fn format_word(w: &[usize], names: &[&str]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut k = 0;
    while k < w.len() {
        let mut run = 1;
        while k + run < w.len() && w[k + run] == w[k] {
            run += 1;
        }
        if run == 1 {
            parts.push(names[w[k]].to_string());
        } else {
            parts.push(format!("{}^{run}", names[w[k]]));
        }
        k += run;
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quat_units(n: u32) -> (Mat2, Mat2) {
        let z = CycloNum::zero(n);
        let o = CycloNum::one(n);
        let i = Mat2::quaternion(&z, &o, &z, &z).unwrap();
        let j = Mat2::quaternion(&z, &z, &o, &z).unwrap();
        (i, j)
    }

    #[test]
    fn quaternion_relations() {
        let (i, j) = quat_units(4);
        let k = &i * &j;
        let z = CycloNum::zero(4);
        let o = CycloNum::one(4);
        assert_eq!(k, Mat2::quaternion(&z, &z, &z, &o).unwrap());
        let m1 = -&Mat2::identity(4);
        assert_eq!(&i * &i, m1);
        assert_eq!(&k * &k, m1);
        assert!(i.is_unitary() && j.is_unitary());
    }

    #[test]
    fn quaternion_group_closure() {
        let (i, j) = quat_units(4);
        let g = MatrixGroup::generate(&[i, j], 4, 100).unwrap();
        assert_eq!(g.order(), 8);
        let sizes: Vec<usize> = g.classes().iter().map(ConjClass::size).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 8);
        assert_eq!(g.classes().len(), 5);
        assert_eq!(g.center().len(), 2);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn table_agrees_with_matrix_products() {
        let (i, j) = quat_units(4);
        let g = MatrixGroup::generate(&[i, j], 4, 100).unwrap();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let m = g.element(a) * g.element(b);
                assert_eq!(g.index_of(&m), Some(g.mul(a, b)));
            }
        }
    }

    #[test]
    fn closure_bound_is_enforced() {
        let (i, j) = quat_units(4);
        assert_eq!(
            MatrixGroup::generate(&[i, j], 4, 5).unwrap_err(),
            Error::ClosureOverflow(5)
        );
    }
}
