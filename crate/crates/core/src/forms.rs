//! Orbit forms of lines, their multiplicative characters, the Jacobian
//! factorization and absolute invariants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rat, BiForm, CycloNum};
use crate::klein::{Branch, KleinGroup, Mat2, MaxAbelian};

/// Rational parameters `t` tried in order for generic lines `(1, t)`.
const GENERIC_SWEEP: usize = 64;

/// Canonical representative of the line through `v`: first nonzero
/// coordinate scaled to 1.
fn normalize(v: &[CycloNum; 2]) -> Option<[CycloNum; 2]> {
    if !v[0].is_zero() {
        let inv = v[0].inv().ok()?;
        Some([CycloNum::one(v[0].conductor()), &v[1] * &inv])
    } else if !v[1].is_zero() {
        Some([CycloNum::zero(v[1].conductor()), CycloNum::one(v[1].conductor())])
    } else {
        None
    }
}

fn entries(m: &Mat2) -> [[CycloNum; 2]; 2] {
    m.0.clone()
}

/// Elements of `K` mapping the line through `v` to itself.
pub fn line_stabilizer(k: &KleinGroup, v: &[CycloNum; 2]) -> Vec<usize> {
    let g = k.group();
    (0..g.order())
        .filter(|&x| {
            let w = g.element(x).apply(v);
            (&w[0] * &v[1]) == (&w[1] * &v[0])
        })
        .collect()
}

/// Distinct lines `g v`, in the order first reached by element index.
pub fn line_orbit(k: &KleinGroup, v: &[CycloNum; 2]) -> Vec<[CycloNum; 2]> {
    let mut out: Vec<[CycloNum; 2]> = Vec::new();
    for m in k.group().elements() {
        let w = normalize(&m.apply(v)).expect("group elements are invertible");
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

/// Orbit of the eigenline `P_X` of `e_X` for `zeta_{2p}`.
#[derive(Clone, Debug, Serialize)]
pub struct SingularOrbit {
    pub branch: Branch,
    pub p: u32,
    pub line: [CycloNum; 2],
    pub size: usize,
    pub stabilizer_order: usize,
    /// `P_X^-` lies in the same orbit.
    pub contains_minus: bool,
}

pub fn singular_lines(k: &KleinGroup, abelians: &[MaxAbelian]) -> Vec<SingularOrbit> {
    abelians
        .iter()
        .map(|t| {
            let orbit = line_orbit(k, &t.line_plus);
            let minus = normalize(&t.line_minus).expect("eigenvectors are nonzero");
            SingularOrbit {
                branch: t.branch,
                p: t.p,
                line: t.line_plus.clone(),
                size: orbit.len(),
                stabilizer_order: line_stabilizer(k, &t.line_plus).len(),
                contains_minus: orbit.contains(&minus),
            }
        })
        .collect()
}

/// `f_P = prod_{g in [H \ G]} a(g x)` where `a` vanishes on `P`.
#[derive(Clone, Debug)]
pub struct OrbitForm {
    pub line: [CycloNum; 2],
    pub form: BiForm,
    /// `mu(g)` for each generator of `K`, with `f(g x) = mu(g) f(x)`.
    pub mu: Vec<CycloNum>,
    pub relative_invariant: bool,
}

impl OrbitForm {
    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    /// Order of the character `mu` (lcm of the orders of its generator values).
    pub fn character_order(&self) -> u32 {
        self.mu.iter().map(root_order).fold(1, num_integer::lcm)
    }
}

fn root_order(z: &CycloNum) -> u32 {
    let n = z.conductor();
    (1..=2 * n).find(|&e| z.pow(e).is_one()).unwrap_or(0)
}

/// `f(g x) / f(x)` for each generator, `None` where not proportional.
fn characters(k: &KleinGroup, f: &BiForm) -> Vec<Option<CycloNum>> {
    k.generators()
        .iter()
        .map(|&x| f.compose(&entries(k.group().element(x))).ratio(f))
        .collect()
}

pub fn orbit_form(k: &KleinGroup, v: &[CycloNum; 2]) -> OrbitForm {
    let g = k.group();
    let a = BiForm::linear(v[1].clone(), -&v[0]);
    let mut reached: Vec<[CycloNum; 2]> = Vec::new();
    let mut factors = Vec::new();
    for x in 0..g.order() {
        // a(g x) vanishes on g^-1 P
        let back = g.element(g.inverse(x)).apply(v);
        let line = normalize(&back).expect("group elements are invertible");
        if reached.contains(&line) {
            continue;
        }
        reached.push(line);
        factors.push(a.compose(&entries(g.element(x))));
    }
    let form = BiForm::product(&factors, k.conductor());
    let mu = characters(k, &form);
    let relative_invariant = mu.iter().all(Option::is_some);
    OrbitForm {
        line: v.clone(),
        form,
        mu: mu
            .into_iter()
            .map(|m| m.unwrap_or_else(|| CycloNum::zero(k.conductor())))
            .collect(),
        relative_invariant,
    }
}

/// `mu` respects `e_X^{2 p_X} = 1` and `e_A e_B e_C = -1`, where `-1` acts on
/// a form of degree `d` by `(-1)^d`.
pub fn character_respects_relations(k: &KleinGroup, f: &OrbitForm) -> bool {
    let Some(t) = k.group_type().triple() else {
        return f.mu.len() == 1;
    };
    let n = k.conductor();
    let powers_ok = f.mu.iter().zip(t).all(|(m, p)| m.pow(2 * p).is_one());
    let sign = CycloNum::from_int(if f.degree().is_multiple_of(2) { 1 } else { -1 }, n);
    let product = f.mu.iter().fold(CycloNum::one(n), |acc, m| &acc * m);
    powers_ok && product == sign
}

/// Lines `(1, t)` with stabilizer `{+-1}`, for `t` in `1, 2, 1/2, 3, 1/3, ...`.
pub fn generic_lines(k: &KleinGroup) -> impl Iterator<Item = [CycloNum; 2]> + '_ {
    let n = k.conductor();
    let center = k.group().center().len();
    (0..GENERIC_SWEEP)
        .map(move |i| {
            let m = (i / 2 + 1) as i64;
            let t = if i % 2 == 0 { rat(m, 1) } else { rat(1, m + 1) };
            [CycloNum::one(n), CycloNum::from_rat(t, n)]
        })
        .filter(move |v| line_stabilizer(k, v).len() == center)
}

#[derive(Clone, Debug, Serialize)]
pub struct KleinIdentity {
    pub lhs: usize,
    /// `(branch, |G|/p_X, p_X - 1)`.
    pub terms: Vec<(Branch, usize, usize)>,
    pub holds: bool,
}

/// `2(|G| - 1) = sum_X (|G|/p_X)(p_X - 1)` with `G = K/{+-1}`.
pub fn klein_identity(k: &KleinGroup) -> Result<KleinIdentity> {
    let t = k
        .group_type()
        .triple()
        .ok_or_else(|| Error::UnsupportedType(k.group_type().label()))?;
    let gbar = k.order() / 2;
    let terms: Vec<(Branch, usize, usize)> = Branch::ALL
        .iter()
        .zip(t)
        .map(|(&x, p)| (x, gbar / p as usize, p as usize - 1))
        .collect();
    let rhs: usize = terms.iter().map(|(_, a, b)| a * b).sum();
    Ok(KleinIdentity {
        lhs: 2 * (gbar - 1),
        terms,
        holds: 2 * (gbar - 1) == rhs,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobianCheck {
    pub generic_degrees: (usize, usize),
    pub jacobian_degree: usize,
    /// Exponents `p_X - 1` of the singular orbit forms.
    pub exponents: Vec<(Branch, u32)>,
    /// `J / prod f_X^{p_X - 1}`, present when the division is exact and
    /// the quotient is a nonzero constant.
    pub constant: Option<CycloNum>,
}

impl JacobianCheck {
    pub fn holds(&self) -> bool {
        self.constant.is_some()
    }
}

/// Jacobian of two generic orbit forms against the product of the singular
/// orbit forms raised to `p_X - 1`.
pub fn jacobian_check(k: &KleinGroup, singular: &[OrbitForm]) -> Result<JacobianCheck> {
    let t = k
        .group_type()
        .triple()
        .ok_or_else(|| Error::UnsupportedType(k.group_type().label()))?;
    let mut chosen: Vec<OrbitForm> = Vec::new();
    for v in generic_lines(k) {
        let f = orbit_form(k, &v);
        if chosen.iter().all(|g| f.form.ratio(&g.form).is_none()) {
            chosen.push(f);
        }
        if chosen.len() == 2 {
            break;
        }
    }
    let [f1, f2] = <[OrbitForm; 2]>::try_from(chosen).map_err(|_| Error::GenericLineSearchFailed)?;
    let jac = BiForm::jacobian(&f1.form, &f2.form);
    let exponents: Vec<(Branch, u32)> = Branch::ALL.iter().zip(t).map(|(&x, p)| (x, p - 1)).collect();
    let divisor = singular
        .iter()
        .zip(&exponents)
        .fold(BiForm::constant(CycloNum::one(k.conductor())), |acc, (f, &(_, e))| {
            &acc * &f.form.pow(e)
        });
    let constant = jac
        .div_exact(&divisor)
        .ok()
        .filter(|q| q.degree() == 0 && !q.is_zero())
        .map(|q| q.coeffs()[0].clone());
    Ok(JacobianCheck {
        generic_degrees: (f1.degree(), f2.degree()),
        jacobian_degree: jac.degree(),
        exponents,
        constant,
    })
}

/// `prod_X f_X^{m_X}` with trivial total character.
#[derive(Clone, Debug)]
pub struct AbsoluteInvariant {
    pub exponents: Vec<u32>,
    pub form: BiForm,
    pub invariant: bool,
}

impl AbsoluteInvariant {
    pub fn degree(&self) -> usize {
        self.form.degree()
    }
}

/// Exponent vectors with trivial character that are minimal under the
/// componentwise order, smallest degree first.
pub fn absolute_invariants(k: &KleinGroup, singular: &[OrbitForm]) -> Vec<AbsoluteInvariant> {
    let n = k.conductor();
    let bounds: Vec<u32> = singular.iter().map(OrbitForm::character_order).collect();
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for &b in &bounds {
        exps = exps
            .into_iter()
            .flat_map(|e| {
                (0..=b).map(move |m| {
                    let mut v = e.clone();
                    v.push(m);
                    v
                })
            })
            .collect();
    }
    let degree = |e: &[u32]| -> usize { e.iter().zip(singular).map(|(&m, f)| m as usize * f.degree()).sum() };
    let trivial = |e: &[u32]| {
        (0..k.generators().len()).all(|g| {
            singular
                .iter()
                .zip(e)
                .fold(CycloNum::one(n), |acc, (f, &m)| &acc * &f.mu[g].pow(m))
                .is_one()
        })
    };
    exps.retain(|e| e.iter().any(|&m| m > 0) && trivial(e));
    exps.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
    let mut minimal: Vec<Vec<u32>> = Vec::new();
    for e in exps {
        let dominated = minimal.iter().any(|m| m.iter().zip(&e).all(|(a, b)| a <= b));
        if !dominated {
            minimal.push(e);
        }
    }
    minimal
        .into_iter()
        .map(|e| {
            let form = singular
                .iter()
                .zip(&e)
                .fold(BiForm::constant(CycloNum::one(n)), |acc, (f, &m)| &acc * &f.form.pow(m));
            let invariant = k
                .generators()
                .iter()
                .all(|&x| form.compose(&entries(k.group().element(x))) == form);
            AbsoluteInvariant {
                exponents: e,
                form,
                invariant,
            }
        })
        .collect()
}

/// Everything the invariant-theory checks need for one type.
#[derive(Clone, Debug)]
pub struct FormsData {
    pub singular: Vec<SingularOrbit>,
    pub orbit_forms: Vec<OrbitForm>,
    pub klein: KleinIdentity,
    pub jacobian: JacobianCheck,
    pub invariants: Vec<AbsoluteInvariant>,
}

impl FormsData {
    pub fn compute(k: &KleinGroup) -> Result<Self> {
        let abelians = k.maximal_abelian()?;
        if abelians.is_empty() {
            return Err(Error::UnsupportedType(k.group_type().label()));
        }
        let singular = singular_lines(k, &abelians);
        let orbit_forms: Vec<OrbitForm> = singular.iter().map(|s| orbit_form(k, &s.line)).collect();
        let klein = klein_identity(k)?;
        let jacobian = jacobian_check(k, &orbit_forms)?;
        let invariants = absolute_invariants(k, &orbit_forms);
        Ok(FormsData {
            singular,
            orbit_forms,
            klein,
            jacobian,
            invariants,
        })
    }
}
