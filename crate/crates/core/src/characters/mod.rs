//! Irreducible characters computed independently of any McKay structure,
//! the natural character and the McKay matrix.

mod oracle;

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rat_int, CycloNum, Rat};
use crate::klein::{Mat2, MatrixGroup, ReflectionGroup};

/// Irreducible characters of a finite matrix group, rows indexed by
/// character and columns by conjugacy class.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    order: usize,
    conductor: u32,
    class_sizes: Vec<usize>,
    class_orders: Vec<u32>,
    inverse_class: Vec<usize>,
    chars: Vec<Vec<CycloNum>>,
    degrees: Vec<u32>,
    trivial: usize,
    natural: Option<usize>,
    natural_values: Vec<CycloNum>,
}

fn cmp_values(a: &[CycloNum], b: &[CycloNum]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.coeffs().cmp(&y.coeffs());
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Trace of each class representative.
pub fn natural_character(g: &MatrixGroup, conductor: u32) -> Result<Vec<CycloNum>> {
    g.classes()
        .iter()
        .map(|c| g.element(c.rep).trace().promote(conductor))
        .collect()
}

impl CharacterTable {
    /// Class-algebra oracle: simultaneous eigenvectors of the class
    /// multiplication matrices, normalized by the orthogonality relations.
    pub fn compute(g: &MatrixGroup) -> Result<Self> {
        let conductor = oracle::working_conductor(g);
        let sizes: Vec<usize> = g.classes().iter().map(|c| c.size()).collect();
        let vectors = oracle::common_eigenvectors(g, conductor)?;
        let mut rows: Vec<(u32, Vec<CycloNum>)> = vectors
            .iter()
            .map(|w| {
                let d = oracle::degree_of(w, &sizes, g.order())?;
                let dc = CycloNum::from_int(d as i64, conductor);
                let chi = w
                    .iter()
                    .zip(&sizes)
                    .map(|(x, &h)| (x * &dc).scale(&Rat::new(1.into(), (h as i64).into())))
                    .collect();
                Ok((d, chi))
            })
            .collect::<Result<_>>()?;

        let minus = g
            .index_of(&-&Mat2::identity(g.conductor()))
            .map(|x| g.class_of(x));
        let at_minus = |row: &[CycloNum]| -> Rat {
            minus
                .and_then(|c| row[c].to_rat())
                .unwrap_or_else(|| rat_int(0))
        };
        rows.sort_by(|(da, a), (db, b)| {
            da.cmp(db)
                .then_with(|| at_minus(b).cmp(&at_minus(a)))
                .then_with(|| cmp_values(a, b))
        });

        let one = CycloNum::one(conductor);
        let trivial = rows
            .iter()
            .position(|(_, r)| r.iter().all(|x| *x == one))
            .ok_or_else(|| Error::CharacterOracleFailed("no trivial character".into()))?;
        let natural_values = natural_character(g, conductor)?;
        let natural = rows.iter().position(|(_, r)| *r == natural_values);
        let table = CharacterTable {
            order: g.order(),
            conductor,
            class_sizes: sizes,
            class_orders: g.classes().iter().map(|c| c.order).collect(),
            inverse_class: g.classes().iter().map(|c| c.inverse_class).collect(),
            degrees: rows.iter().map(|(d, _)| *d).collect(),
            chars: rows.into_iter().map(|(_, r)| r).collect(),
            trivial,
            natural,
            natural_values,
        };
        table.check_orthogonality()?;
        Ok(table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn class_orders(&self) -> &[u32] {
        &self.class_orders
    }

    pub fn inverse_class(&self) -> &[usize] {
        &self.inverse_class
    }

    pub fn rows(&self) -> &[Vec<CycloNum>] {
        &self.chars
    }

    pub fn row(&self, i: usize) -> &[CycloNum] {
        &self.chars[i]
    }

    pub fn value(&self, i: usize, class: usize) -> &CycloNum {
        &self.chars[i][class]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn trivial(&self) -> usize {
        self.trivial
    }

    /// Row equal to the natural character, when that character is irreducible.
    pub fn natural(&self) -> Option<usize> {
        self.natural
    }

    pub fn natural_values(&self) -> &[CycloNum] {
        &self.natural_values
    }

    /// `(1/|G|) sum_c |c| f(c) conj(g(c))`.
    pub fn inner_product(&self, f: &[CycloNum], g: &[CycloNum]) -> CycloNum {
        let n = self.conductor;
        let mut s = CycloNum::zero(n);
        for ((a, b), &h) in f.iter().zip(g).zip(&self.class_sizes) {
            s = &s + &(a * &b.conj()).scale(&rat_int(h as i64));
        }
        s.scale(&Rat::new(1.into(), (self.order as i64).into()))
    }

    /// Row and column orthogonality and `sum d_i^2 = |G|`.
    pub fn check_orthogonality(&self) -> Result<()> {
        let r = self.len();
        let n = self.conductor;
        for i in 0..r {
            for j in 0..r {
                let ip = self.inner_product(&self.chars[i], &self.chars[j]);
                let expect = CycloNum::from_int((i == j) as i64, n);
                if ip != expect {
                    return Err(Error::OracleInconsistency(format!(
                        "row orthogonality fails for characters {i}, {j}"
                    )));
                }
            }
        }
        for c in 0..r {
            for c2 in 0..r {
                let mut s = CycloNum::zero(n);
                for row in &self.chars {
                    s = &s + &(&row[c] * &row[c2].conj());
                }
                let expect = if c == c2 {
                    Rat::new((self.order as i64).into(), (self.class_sizes[c] as i64).into())
                } else {
                    rat_int(0)
                };
                if s != CycloNum::from_rat(expect, n) {
                    return Err(Error::OracleInconsistency(format!(
                        "column orthogonality fails for classes {c}, {c2}"
                    )));
                }
            }
        }
        let sq: u64 = self.degrees.iter().map(|&d| (d as u64) * (d as u64)).sum();
        if sq != self.order as u64 {
            return Err(Error::OracleInconsistency(format!(
                "sum of squared degrees {sq} differs from |G| = {}",
                self.order
            )));
        }
        Ok(())
    }

    /// Row index whose values equal the complex conjugate of row `i`.
    pub fn conjugate_of(&self, i: usize) -> usize {
        let target: Vec<CycloNum> = self.chars[i].iter().map(CycloNum::conj).collect();
        self.chars
            .iter()
            .position(|r| *r == target)
            .expect("conjugate of an irreducible character is irreducible")
    }

    /// Multiplicities of the irreducible characters in a class function.
    pub fn decompose(&self, f: &[CycloNum]) -> Result<Vec<u32>> {
        self.chars
            .iter()
            .map(|row| {
                let m = self.inner_product(f, row);
                m.to_rat()
                    .filter(|x| x.is_integer() && *x >= rat_int(0))
                    .and_then(|x| x.to_integer().try_into().ok())
                    .ok_or_else(|| {
                        Error::OracleInconsistency(format!("multiplicity {m} is not a natural number"))
                    })
            })
            .collect()
    }
}

/// Multiplication-by-natural-character matrix on irreducible characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McKayMatrix(Vec<Vec<u32>>);

impl McKayMatrix {
    pub fn compute(t: &CharacterTable) -> Result<Self> {
        let chi = t.natural_values();
        let rows = t
            .rows()
            .iter()
            .map(|ci| {
                let prod: Vec<CycloNum> = chi.iter().zip(ci).map(|(a, b)| a * b).collect();
                t.decompose(&prod)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(McKayMatrix(rows))
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        McKayMatrix(rows)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.0[i][j]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.0[i][j] == self.0[j][i]))
    }

    /// `sum_j m_ij d_j = 2 d_i` for every row.
    pub fn balances(&self, degrees: &[u32]) -> bool {
        self.0.iter().zip(degrees).all(|(row, &di)| {
            row.iter().zip(degrees).map(|(&m, &d)| m * d).sum::<u32>() == 2 * di
        })
    }
}

/// How one irreducible character of `K'` restricts to `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Restriction {
    Irreducible(usize),
    /// `chi_i + conj(chi_i)` with the two distinct.
    ConjugatePair(usize, usize),
    Other(Vec<u32>),
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub restrictions: Vec<Restriction>,
    /// How many `K'` characters contain each `chi_i` of `K`.
    pub occurrences: Vec<u32>,
    pub passes: bool,
}

/// Restricts each character of `K'` to `K` and classifies it. A character
/// fixed by complex conjugation must occur in two restrictions, a
/// non-real one in exactly one.
pub fn restriction_check(
    kp: &ReflectionGroup,
    kp_table: &CharacterTable,
    k: &MatrixGroup,
    k_table: &CharacterTable,
) -> Result<RestrictionReport> {
    let n = k_table.conductor();
    let l = {
        use num_integer::Integer;
        n.lcm(&kp_table.conductor())
    };
    let mut restrictions = Vec::new();
    let mut occurrences = vec![0u32; k_table.len()];
    for row in kp_table.rows() {
        let values: Vec<CycloNum> = k
            .classes()
            .iter()
            .map(|c| {
                let x = kp.embedding()[c.rep];
                row[kp.group().class_of(x)].clone()
            })
            .collect();
        // compare in a field containing both tables
        let values = values
            .iter()
            .map(|v| v.promote(l))
            .collect::<Result<Vec<_>>>()?;
        let kt: Vec<Vec<CycloNum>> = k_table
            .rows()
            .iter()
            .map(|r| r.iter().map(|v| v.promote(l)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mult: Vec<u32> = kt
            .iter()
            .map(|r| {
                let m = k_table.inner_product(&values, r);
                m.to_rat()
                    .filter(|x| x.is_integer() && *x >= rat_int(0))
                    .and_then(|x| x.to_integer().try_into().ok())
                    .ok_or_else(|| Error::OracleInconsistency(format!("restriction multiplicity {m}")))
            })
            .collect::<Result<_>>()?;
        for (o, &m) in occurrences.iter_mut().zip(&mult) {
            *o += (m > 0) as u32;
        }
        let support: Vec<usize> = (0..mult.len()).filter(|&i| mult[i] > 0).collect();
        let kind = match support.as_slice() {
            [i] if mult[*i] == 1 => Restriction::Irreducible(*i),
            [i, j] if mult[*i] == 1 && mult[*j] == 1 && k_table.conjugate_of(*i) == *j => {
                Restriction::ConjugatePair(*i, *j)
            }
            _ => Restriction::Other(mult),
        };
        restrictions.push(kind);
    }
    let counts_ok = (0..k_table.len()).all(|i| {
        let expect = if k_table.conjugate_of(i) == i { 2 } else { 1 };
        occurrences[i] == expect
    });
    let passes = counts_ok
        && !restrictions
            .iter()
            .any(|r| matches!(r, Restriction::Other(_)));
    Ok(RestrictionReport {
        restrictions,
        occurrences,
        passes,
    })
}
