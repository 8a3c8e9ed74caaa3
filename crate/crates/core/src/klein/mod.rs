//! Finite subgroups of SU(2) and their reflection extensions.

mod matrix;
mod reflection;

pub use matrix::{ConjClass, Mat2, MatrixGroup};
pub use reflection::ReflectionGroup;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{rat, CycloNum};

pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

/// The supported families, keyed by the triple `<p_A, p_B, p_C>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupType {
    /// Cyclic group of order `n`.
    Cyclic(u32),
    /// Binary dihedral `<p, 2, 2>`, affine `D_{p+2}`.
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl GroupType {
    pub fn from_triple(t: [u32; 3]) -> Result<Self> {
        let mut t = t;
        t.sort_unstable_by(|a, b| b.cmp(a));
        let [a, b, c] = t;
        if c == 0 {
            return Err(Error::Invalid(format!("triple {t:?} has a zero entry")));
        }
        if c == 1 {
            return Err(Error::UnsupportedType(format!("<{a},{b},{c}>")));
        }
        let (a64, b64, c64) = (a as u64, b as u64, c as u64);
        if b64 * c64 + a64 * c64 + a64 * b64 <= a64 * b64 * c64 {
            return Err(Error::InfiniteGroup(t));
        }
        Ok(match (a, b, c) {
            (p, 2, 2) => GroupType::Dihedral(p),
            (3, 3, 2) => GroupType::Tetrahedral,
            (4, 3, 2) => GroupType::Octahedral,
            (5, 3, 2) => GroupType::Icosahedral,
            _ => unreachable!("Schwarz condition leaves only these triples"),
        })
    }

    /// `(p_A, p_B, p_C)`, descending; `None` for cyclic groups.
    pub fn triple(&self) -> Option<[u32; 3]> {
        match *self {
            GroupType::Cyclic(_) => None,
            GroupType::Dihedral(p) => Some([p, 2, 2]),
            GroupType::Tetrahedral => Some([3, 3, 2]),
            GroupType::Octahedral => Some([4, 3, 2]),
            GroupType::Icosahedral => Some([5, 3, 2]),
        }
    }

    /// Affine Dynkin label.
    pub fn label(&self) -> String {
        match *self {
            GroupType::Cyclic(n) => format!("A{}", n - 1),
            GroupType::Dihedral(p) => format!("D{}", p + 2),
            GroupType::Tetrahedral => "E6".into(),
            GroupType::Octahedral => "E7".into(),
            GroupType::Icosahedral => "E8".into(),
        }
    }

    pub fn triple_label(&self) -> String {
        match self.triple() {
            Some([a, b, c]) => format!("<{a},{b},{c}>"),
            None => match self {
                GroupType::Cyclic(n) => format!("<{n}>"),
                _ => unreachable!(),
            },
        }
    }

    /// Default working conductor: every matrix entry, eigenvalue and
    /// character value of the type lies in `Q(zeta_N)`.
    pub fn conductor(&self) -> u32 {
        match *self {
            GroupType::Cyclic(n) => 4 * n,
            GroupType::Dihedral(p) => 4 * p,
            GroupType::Tetrahedral | GroupType::Octahedral => 24,
            GroupType::Icosahedral => 60,
        }
    }

    /// `4 / (1/p_A + 1/p_B + 1/p_C - 1)`, or `n` for cyclic groups.
    pub fn predicted_order(&self) -> usize {
        match (self, self.triple()) {
            (GroupType::Cyclic(n), _) => *n as usize,
            (_, Some([a, b, c])) => {
                let (a, b, c) = (a as usize, b as usize, c as usize);
                4 * a * b * c / (b * c + a * c + a * b - a * b * c)
            }
            _ => unreachable!(),
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, GroupType::Cyclic(_))
    }

    /// Types exercised by the default verification suite.
    pub fn default_suite() -> Vec<GroupType> {
        let mut v: Vec<GroupType> = (2..=8).map(GroupType::Dihedral).collect();
        v.extend([GroupType::Tetrahedral, GroupType::Octahedral, GroupType::Icosahedral]);
        v
    }

    /// Catalog printed by `list`: the default suite plus cyclic groups.
    pub fn catalog() -> Vec<GroupType> {
        let mut v: Vec<GroupType> = (2..=8).map(GroupType::Cyclic).collect();
        v.extend(Self::default_suite());
        v
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for GroupType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl FromStr for GroupType {
    type Err = Error;

    /// Accepts `E6`/`E7`/`E8`, `D4`.., `A1`.., `5,3,2`, `<5,3,2>` and a
    /// single integer `n` for the cyclic group of order `n`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnsupportedType(s.to_string());
        let upper = s.to_ascii_uppercase();
        match upper.as_str() {
            "E6" => return Ok(GroupType::Tetrahedral),
            "E7" => return Ok(GroupType::Octahedral),
            "E8" => return Ok(GroupType::Icosahedral),
            _ => {}
        }
        if let Some(rest) = upper.strip_prefix('D') {
            let n: u32 = rest.parse().map_err(|_| bad())?;
            return if n >= 4 { Ok(GroupType::Dihedral(n - 2)) } else { Err(bad()) };
        }
        if let Some(rest) = upper.strip_prefix('A') {
            let n: u32 = rest.parse().map_err(|_| bad())?;
            return if n >= 1 { Ok(GroupType::Cyclic(n + 1)) } else { Err(bad()) };
        }
        let inner = s
            .trim_start_matches(['<', '(', '⟨'])
            .trim_end_matches(['>', ')', '⟩']);
        let parts: Vec<u32> = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        match parts.as_slice() {
            [n] if *n >= 2 => Ok(GroupType::Cyclic(*n)),
            [a, b, c] => GroupType::from_triple([*a, *b, *c]),
            _ => Err(bad()),
        }
    }
}

/// Branch of the triangle: the three maximal abelian subgroups up to conjugacy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Branch {
    A,
    B,
    C,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::A, Branch::B, Branch::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::A => "A",
            Branch::B => "B",
            Branch::C => "C",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub conductor: Option<u32>,
    pub closure_bound: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            conductor: None,
            closure_bound: DEFAULT_CLOSURE_BOUND,
        }
    }
}

/// A fully enumerated finite subgroup of SU(2).
#[derive(Clone, Debug)]
pub struct KleinGroup {
    gtype: GroupType,
    group: MatrixGroup,
    minus_one: Option<usize>,
    /// `e_A, e_B, e_C` for D/E types, the single generator for cyclic ones.
    generators: Vec<usize>,
    words: Vec<String>,
}

/// Cyclic subgroup `T_X = <e_X>` with its two eigenlines.
#[derive(Clone, Debug)]
pub struct MaxAbelian {
    pub branch: Branch,
    pub p: u32,
    pub generator: usize,
    /// `powers[k] = e_X^k`, `k < 2 p`.
    pub powers: Vec<usize>,
    /// Eigenvector of `e_X` for `zeta_{2p}`.
    pub line_plus: [CycloNum; 2],
    /// Eigenvector of `e_X` for `zeta_{2p}^-1`.
    pub line_minus: [CycloNum; 2],
    pub normalizer: Vec<usize>,
}

impl MaxAbelian {
    pub fn order(&self) -> usize {
        self.powers.len()
    }

    /// Eigenvalue of `e_X^k` on the line `P_X`.
    pub fn lambda(&self, k: i64, conductor: u32) -> CycloNum {
        CycloNum::root_in(k, 2 * self.p, conductor).expect("working conductor contains 2p-th roots")
    }

    pub fn sorted_members(&self) -> Vec<usize> {
        let mut v = self.powers.clone();
        v.sort_unstable();
        v
    }

    pub fn is_doubled(&self) -> bool {
        self.normalizer.len() == 2 * self.order()
    }
}

/// How the two eigenlines of a branch are related under the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pairing {
    /// The normalizer swaps the two eigenlines.
    Doubled,
    /// `T_X` is conjugate to the subgroup of another branch.
    CoupledWith(Branch),
    /// Neither; violates the expected dichotomy.
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEquation {
    pub quotient_order: usize,
    /// `(branch, |G|/|N(H)|, |H| - 1)` per conjugacy class of branches.
    pub terms: Vec<(Branch, usize, usize)>,
    pub holds: bool,
}

fn root(k: i64, m: u32, n: u32) -> Result<CycloNum> {
    CycloNum::root_in(k, m, n)
}

fn seeds(gtype: GroupType, n: u32) -> Result<Vec<Mat2>> {
    let z = CycloNum::zero(n);
    let o = CycloNum::one(n);
    let half = CycloNum::from_rat(rat(1, 2), n);
    let qi = Mat2::quaternion(&z, &o, &z, &z)?;
    let qj = Mat2::quaternion(&z, &z, &o, &z)?;
    let tetra = || -> Result<Vec<Mat2>> {
        Ok(vec![
            qi.clone(),
            qj.clone(),
            Mat2::quaternion(&half, &half, &half, &half)?,
        ])
    };
    Ok(match gtype {
        GroupType::Cyclic(m) => vec![Mat2::diag(root(1, m, n)?, root(-1, m, n)?)],
        GroupType::Dihedral(p) => vec![Mat2::diag(root(1, 2 * p, n)?, root(-1, 2 * p, n)?), qj],
        GroupType::Tetrahedral => tetra()?,
        GroupType::Octahedral => {
            let sqrt2 = &root(1, 8, n)? + &root(-1, 8, n)?;
            let s = sqrt2.scale(&rat(1, 2));
            let mut v = tetra()?;
            v.push(Mat2::quaternion(&s, &s, &z, &z)?);
            v
        }
        GroupType::Icosahedral => {
            let tau = &root(1, 10, n)? + &root(-1, 10, n)?;
            let tau_inv = &tau - &o;
            let mut v = tetra()?;
            v.push(Mat2::quaternion(
                &tau.scale(&rat(1, 2)),
                &tau_inv.scale(&rat(1, 2)),
                &half,
                &z,
            )?);
            v
        }
    })
}

/// Eigenvector of `m` for eigenvalue `lam`, assuming `lam` is a simple eigenvalue.
fn eigenvector(m: &Mat2, lam: &CycloNum) -> [CycloNum; 2] {
    let (a, b, c, d) = (m.entry(0, 0), m.entry(0, 1), m.entry(1, 0), m.entry(1, 1));
    let n = m.conductor();
    if !b.is_zero() {
        [b.clone(), lam - a]
    } else if !c.is_zero() {
        [lam - d, c.clone()]
    } else if a == lam {
        [CycloNum::one(n), CycloNum::zero(n)]
    } else {
        [CycloNum::zero(n), CycloNum::one(n)]
    }
}

impl KleinGroup {
    pub fn build(gtype: GroupType) -> Result<Self> {
        Self::build_with(gtype, &BuildOptions::default())
    }

    pub fn build_with(gtype: GroupType, opts: &BuildOptions) -> Result<Self> {
        if let GroupType::Cyclic(n) = gtype {
            if n < 2 {
                return Err(Error::UnsupportedType(format!("cyclic group of order {n}")));
            }
        }
        if let GroupType::Dihedral(p) = gtype {
            if p < 2 {
                return Err(Error::UnsupportedType(format!("<{p},2,2>")));
            }
        }
        let n = opts.conductor.unwrap_or_else(|| gtype.conductor());
        let group = MatrixGroup::generate(&seeds(gtype, n)?, n, opts.closure_bound)?;
        let expected = gtype.predicted_order();
        if group.order() != expected {
            return Err(Error::OrderMismatch {
                expected,
                found: group.order(),
            });
        }
        let minus_one = group.index_of(&-&Mat2::identity(n));
        let (generators, names): (Vec<usize>, Vec<&str>) = match gtype.triple() {
            None => {
                let g = group
                    .index_of(&seeds(gtype, n)?[0])
                    .expect("seed lies in its closure");
                (vec![g], vec!["g"])
            }
            Some(t) => {
                let gens = triangle_generators(&group, t, minus_one.ok_or(Error::GeneratorSearchFailed)?)?;
                (gens.to_vec(), vec!["A", "B", "C"])
            }
        };
        let words = group.words(&generators, &names);
        Ok(KleinGroup {
            gtype,
            group,
            minus_one,
            generators,
            words,
        })
    }

    pub fn group_type(&self) -> GroupType {
        self.gtype
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn conductor(&self) -> u32 {
        self.group.conductor()
    }

    pub fn classes(&self) -> &[ConjClass] {
        self.group.classes()
    }

    pub fn minus_one(&self) -> Option<usize> {
        self.minus_one
    }

    /// `[e_A, e_B, e_C]` for D/E types.
    pub fn triangle(&self) -> Option<[usize; 3]> {
        match self.generators.as_slice() {
            [a, b, c] => Some([*a, *b, *c]),
            _ => None,
        }
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Shortest word for an element in the generators.
    pub fn word(&self, x: usize) -> &str {
        &self.words[x]
    }

    pub fn maximal_abelian(&self) -> Result<Vec<MaxAbelian>> {
        let Some(triple) = self.gtype.triple() else {
            return Ok(Vec::new());
        };
        let [ea, eb, ec] = self.triangle().expect("D/E types carry a triangle");
        let n = self.conductor();
        let g = &self.group;
        [ea, eb, ec]
            .into_iter()
            .zip(Branch::ALL)
            .zip(triple)
            .map(|((e, branch), p)| {
                let powers: Vec<usize> = (0..2 * p as i64).map(|k| g.pow(e, k)).collect();
                let m = g.element(e);
                let lp = root(1, 2 * p, n)?;
                let lm = root(-1, 2 * p, n)?;
                let line_plus = eigenvector(m, &lp);
                let line_minus = eigenvector(m, &lm);
                let check = |v: &[CycloNum; 2], l: &CycloNum| {
                    let w = m.apply(v);
                    w[0] == &v[0] * l && w[1] == &v[1] * l
                };
                if !check(&line_plus, &lp) || !check(&line_minus, &lm) {
                    return Err(Error::Invalid(format!(
                        "e_{} does not have eigenvalues zeta_{}^(+-1)",
                        branch.name(),
                        2 * p
                    )));
                }
                let mut sorted = powers.clone();
                sorted.sort_unstable();
                let normalizer = g.normalizer(&sorted);
                Ok(MaxAbelian {
                    branch,
                    p,
                    generator: e,
                    powers,
                    line_plus,
                    line_minus,
                    normalizer,
                })
            })
            .collect()
    }

    /// Doubled/coupled status for each branch.
    pub fn pairings(&self, abelians: &[MaxAbelian]) -> Vec<Pairing> {
        abelians
            .iter()
            .map(|t| {
                if t.is_doubled() {
                    return Pairing::Doubled;
                }
                abelians
                    .iter()
                    .find(|u| u.branch != t.branch && self.conjugate_subgroups(t, u))
                    .map_or(Pairing::Neither, |u| Pairing::CoupledWith(u.branch))
            })
            .collect()
    }

    fn conjugate_subgroups(&self, t: &MaxAbelian, u: &MaxAbelian) -> bool {
        if t.order() != u.order() {
            return false;
        }
        let target = u.sorted_members();
        (0..self.order()).any(|g| {
            target
                .binary_search(&self.group.conjugate(g, t.generator))
                .is_ok()
        })
    }

    /// Permutation `[c] -> [c^-1]` on class ids.
    pub fn inversion_involution(&self) -> Vec<usize> {
        self.classes().iter().map(|c| c.inverse_class).collect()
    }

    /// Class equation of `K / {+-1}` over conjugacy classes of branches.
    pub fn check_class_equation(&self, abelians: &[MaxAbelian]) -> ClassEquation {
        let quotient_order = self.order() / 2;
        let mut terms = Vec::new();
        for (k, t) in abelians.iter().enumerate() {
            let repeated = abelians[..k]
                .iter()
                .any(|u| self.conjugate_subgroups(t, u));
            if repeated {
                continue;
            }
            let normalizer_bar = t.normalizer.len() / 2;
            terms.push((t.branch, quotient_order / normalizer_bar, t.p as usize - 1));
        }
        let rhs: usize = 1 + terms.iter().map(|(_, a, b)| a * b).sum::<usize>();
        ClassEquation {
            quotient_order,
            terms,
            holds: rhs == quotient_order,
        }
    }
}

/// First `(a, b)` in index order with `a, b, c = -(ab)^-1` of orders
/// `2 p_X`, traces `zeta_{2p_X} + zeta_{2p_X}^-1`, and `<a, b> = K`.
fn triangle_generators(g: &MatrixGroup, t: [u32; 3], minus_one: usize) -> Result<[usize; 3]> {
    let n = g.conductor();
    let trace_of = |p: u32| -> Result<CycloNum> { Ok(&root(1, 2 * p, n)? + &root(-1, 2 * p, n)?) };
    let traces = [trace_of(t[0])?, trace_of(t[1])?, trace_of(t[2])?];
    let fits = |x: usize, k: usize| {
        g.element_order(x) == 2 * t[k] && g.element(x).trace() == traces[k]
    };
    let candidates = |k: usize| (0..g.order()).filter(move |&x| fits(x, k));
    for a in candidates(0) {
        for b in candidates(1) {
            let c = g.mul(g.inverse(g.mul(a, b)), minus_one);
            if fits(c, 2) && g.subgroup(&[a, b]).len() == g.order() {
                return Ok([a, b, c]);
            }
        }
    }
    Err(Error::GeneratorSearchFailed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_type_names() {
        assert_eq!("E8".parse::<GroupType>().unwrap(), GroupType::Icosahedral);
        assert_eq!("<5,3,2>".parse::<GroupType>().unwrap(), GroupType::Icosahedral);
        assert_eq!("2,3,5".parse::<GroupType>().unwrap(), GroupType::Icosahedral);
        assert_eq!("D5".parse::<GroupType>().unwrap(), GroupType::Dihedral(3));
        assert_eq!("A3".parse::<GroupType>().unwrap(), GroupType::Cyclic(4));
        assert_eq!(
            "7,3,2".parse::<GroupType>().unwrap_err(),
            Error::InfiniteGroup([7, 3, 2])
        );
        assert!("F4".parse::<GroupType>().is_err());
        assert!("5,3,1".parse::<GroupType>().is_err());
    }

    #[test]
    fn labels_round_trip() {
        for t in GroupType::catalog() {
            assert_eq!(t.label().parse::<GroupType>().unwrap(), t);
        }
    }

    #[test]
    fn binary_tetrahedral_generator() {
        let k = KleinGroup::build(GroupType::Tetrahedral).unwrap();
        assert_eq!(k.order(), 24);
        let n = k.conductor();
        let h = CycloNum::from_rat(rat(1, 2), n);
        let m = Mat2::quaternion(&h, &h, &h, &h).unwrap();
        let idx = k.group().index_of(&m).unwrap();
        assert_eq!(k.group().element_order(idx), 6);
    }

    #[test]
    fn triangle_relation_holds() {
        for t in GroupType::default_suite() {
            let k = KleinGroup::build(t).unwrap();
            let [a, b, c] = k.triangle().unwrap();
            let g = k.group();
            assert_eq!(g.mul(g.mul(a, b), c), k.minus_one().unwrap(), "{t}");
            let [pa, pb, pc] = t.triple().unwrap();
            assert_eq!(
                [g.element_order(a), g.element_order(b), g.element_order(c)],
                [2 * pa, 2 * pb, 2 * pc]
            );
        }
    }

    #[test]
    fn wrong_conductor_is_reported() {
        let opts = BuildOptions {
            conductor: Some(24),
            ..BuildOptions::default()
        };
        assert!(matches!(
            KleinGroup::build_with(GroupType::Icosahedral, &opts),
            Err(Error::ConductorInsufficient(_))
        ));
    }
}
