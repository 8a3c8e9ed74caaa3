use num_integer::Roots;
use serde::Serialize;

use super::{GroupType, KleinGroup, Mat2, MatrixGroup};
use crate::error::{Error, Result};
use crate::exact::{rat, CycloNum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CosetSource {
    /// `r = i h` with `h` an order-4 element of `K`.
    Inner,
    /// `h` found in a larger group normalizing `K`.
    Outer,
}

/// Index-2 extension `K' = K ∪ rK` of a Klein group by a reflection `r`.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    group: MatrixGroup,
    /// `K` index to `K'` index.
    embedding: Vec<usize>,
    /// `K'` index to `K` index, `None` on the other coset.
    restriction: Vec<Option<usize>>,
    reflections: Vec<usize>,
    coset_rep: usize,
    degrees: (u32, u32),
    source: CosetSource,
}

fn is_reflection(m: &Mat2) -> bool {
    let n = m.conductor();
    (m * m) == Mat2::identity(n) && m.det() == CycloNum::from_int(-1, n) && m.trace().is_zero()
}

/// Positive integer solution `d1 >= d2` of `d1 + d2 = reflections + 2`,
/// `d1 d2 = order`.
pub fn solve_degrees(order: usize, reflections: usize) -> Result<(u32, u32)> {
    let s = reflections as i64 + 2;
    let p = order as i64;
    let disc = s * s - 4 * p;
    let fail = Error::DegreesInconsistent { order, reflections };
    if disc < 0 {
        return Err(fail);
    }
    let r = disc.sqrt();
    if r * r != disc || (s + r) % 2 != 0 {
        return Err(fail);
    }
    let (d1, d2) = ((s + r) / 2, (s - r) / 2);
    if d2 <= 0 {
        return Err(fail);
    }
    Ok((d1 as u32, d2 as u32))
}

fn outer_extra(gtype: GroupType, n: u32) -> Result<Option<Mat2>> {
    let z = CycloNum::zero(n);
    let o = CycloNum::one(n);
    Ok(match gtype {
        GroupType::Dihedral(p) => Some(Mat2::diag(
            CycloNum::root_in(1, 4 * p, n)?,
            CycloNum::root_in(-1, 4 * p, n)?,
        )),
        GroupType::Tetrahedral => {
            let sqrt2 = &CycloNum::root_in(1, 8, n)? + &CycloNum::root_in(-1, 8, n)?;
            let s = sqrt2.scale(&rat(1, 2));
            Some(Mat2::quaternion(&s, &s, &z, &z)?)
        }
        GroupType::Cyclic(_) => Some(Mat2::quaternion(&z, &z, &o, &z)?),
        GroupType::Octahedral | GroupType::Icosahedral => None,
    })
}

impl ReflectionGroup {
    /// Searches order-4 elements `h` normalizing `K`, inner ones first, and
    /// accepts the first `K' = <K, i h>` of order `2|K|` that is generated by
    /// its reflections and has consistent degrees.
    pub fn build(k: &KleinGroup, closure_bound: usize) -> Result<Self> {
        let n = k.conductor();
        let g = k.group();
        let minus_id = -&Mat2::identity(n);
        let i = CycloNum::root_in(1, 4, n)?;
        let kgens: Vec<Mat2> = k.generators().iter().map(|&x| g.element(x).clone()).collect();

        let mut candidates: Vec<(Mat2, CosetSource)> = (0..g.order())
            .filter(|&x| (g.element(x) * g.element(x)) == minus_id)
            .map(|x| (g.element(x).clone(), CosetSource::Inner))
            .collect();
        if let Some(extra) = outer_extra(k.group_type(), n)? {
            let mut gens = kgens.clone();
            gens.push(extra);
            let big = MatrixGroup::generate(&gens, n, closure_bound)?;
            for h in big.elements() {
                if g.index_of(h).is_some() || (h * h) != minus_id {
                    continue;
                }
                let hinv = h.conj_transpose();
                let normalizes = kgens
                    .iter()
                    .all(|x| g.index_of(&(&(h * x) * &hinv)).is_some());
                if normalizes {
                    candidates.push((h.clone(), CosetSource::Outer));
                }
            }
        }

        for (h, source) in candidates {
            let r = h.scale(&i);
            let mut gens = kgens.clone();
            gens.push(r.clone());
            let kp = MatrixGroup::generate(&gens, n, closure_bound)?;
            if kp.order() != 2 * k.order() {
                continue;
            }
            let reflections: Vec<usize> = (0..kp.order())
                .filter(|&x| is_reflection(kp.element(x)))
                .collect();
            let Ok(degrees) = solve_degrees(kp.order(), reflections.len()) else {
                continue;
            };
            if kp.subgroup(&reflections).len() != kp.order() {
                continue;
            }
            let embedding: Vec<usize> = g
                .elements()
                .iter()
                .map(|m| kp.index_of(m).expect("K lies in K'"))
                .collect();
            let mut restriction = vec![None; kp.order()];
            for (a, &b) in embedding.iter().enumerate() {
                restriction[b] = Some(a);
            }
            let coset_rep = kp.index_of(&r).expect("r lies in K'");
            return Ok(ReflectionGroup {
                group: kp,
                embedding,
                restriction,
                reflections,
                coset_rep,
                degrees,
                source,
            });
        }
        Err(Error::ReflectionSearchFailed)
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn restrict_index(&self, x: usize) -> Option<usize> {
        self.restriction[x]
    }

    pub fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    /// The reflection `r` with `K' = K ∪ rK`.
    pub fn coset_rep(&self) -> usize {
        self.coset_rep
    }

    /// `(d1, d2)` with `d1 >= d2`.
    pub fn degrees(&self) -> (u32, u32) {
        self.degrees
    }

    pub fn source(&self) -> CosetSource {
        self.source
    }

    /// `K` is normal in `K'`: conjugation by `r` maps `K` to itself.
    pub fn is_normal(&self) -> bool {
        self.embedding.iter().all(|&x| {
            self.restriction[self.group.conjugate(self.coset_rep, x)].is_some()
        })
    }

    /// Class permutation of `K` induced by conjugation with `r`.
    pub fn class_action(&self, k: &KleinGroup) -> Vec<usize> {
        k.classes()
            .iter()
            .map(|c| {
                let y = self.group.conjugate(self.coset_rep, self.embedding[c.rep]);
                let y = self.restriction[y].expect("K is normal in K'");
                k.group().class_of(y)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_equations() {
        assert_eq!(solve_degrees(240, 30), Ok((20, 12)));
        assert_eq!(solve_degrees(48, 12), Ok((8, 6)));
        assert_eq!(solve_degrees(16, 6), Ok((4, 4)));
        assert!(solve_degrees(48, 6).is_err());
    }

    #[test]
    fn quaternion_extension() {
        let k = KleinGroup::build(GroupType::Dihedral(2)).unwrap();
        let kp = ReflectionGroup::build(&k, 10_000).unwrap();
        assert_eq!(kp.order(), 16);
        assert_eq!(kp.reflections().len(), 6);
        assert_eq!(kp.degrees(), (4, 4));
        assert!(kp.is_normal());
    }
}
