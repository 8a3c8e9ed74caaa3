use std::sync::OnceLock;

use mckay::exact::{rat, BiForm, CycloNum};
use mckay::forms::{
    absolute_invariants, generic_lines, klein_identity, line_orbit, orbit_form, singular_lines, FormsData,
};
use mckay::klein::{GroupType, KleinGroup};

fn all_forms() -> &'static [(KleinGroup, FormsData)] {
    static DATA: OnceLock<Vec<(KleinGroup, FormsData)>> = OnceLock::new();
    DATA.get_or_init(|| {
        std::thread::scope(|s| {
            let handles: Vec<_> = GroupType::default_suite()
                .into_iter()
                .map(|t| {
                    s.spawn(move || {
                        let k = KleinGroup::build(t).unwrap();
                        let f = FormsData::compute(&k).unwrap();
                        (k, f)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    })
}

fn forms(t: GroupType) -> &'static (KleinGroup, FormsData) {
    all_forms().iter().find(|(k, _)| k.group_type() == t).unwrap()
}

/// `f(g x) / f(x)` for every element, required to agree at three sample
/// points where `f` does not vanish.
fn relative_character(k: &KleinGroup, f: &BiForm) -> Option<Vec<CycloNum>> {
    let n = k.conductor();
    let points: Vec<[CycloNum; 2]> = [rat(-3, 7), rat(-5, 11), rat(13, 17)]
        .into_iter()
        .map(|t| [CycloNum::one(n), CycloNum::from_rat(t, n)])
        .collect();
    let base: Vec<CycloNum> = points.iter().map(|[x, y]| f.eval(x, y)).collect();
    if base.iter().any(CycloNum::is_zero) {
        return None;
    }
    let base: Vec<CycloNum> = base.iter().map(|b| b.inv().unwrap()).collect();
    k.group()
        .elements()
        .iter()
        .map(|g| {
            let ratios: Vec<CycloNum> = points
                .iter()
                .zip(&base)
                .map(|(p, b)| {
                    let [x, y] = g.apply(p);
                    &f.eval(&x, &y) * b
                })
                .collect();
            ratios.windows(2).all(|w| w[0] == w[1]).then(|| ratios[0].clone())
        })
        .collect()
}

#[test]
fn singular_orbit_sizes() {
    for t in GroupType::default_suite() {
        let k = KleinGroup::build(t).unwrap();
        let orbits = singular_lines(&k, &k.maximal_abelian().unwrap());
        let gbar = k.order() / 2;
        let sizes: Vec<usize> = orbits.iter().map(|o| o.size).collect();
        let want: Vec<usize> = t.triple().unwrap().iter().map(|&p| gbar / p as usize).collect();
        assert_eq!(sizes, want, "{t}");
        for o in &orbits {
            assert_eq!(line_orbit(&k, &o.line).len(), o.size);
            assert_eq!(o.stabilizer_order, 2 * o.p as usize);
        }
    }
    let k = KleinGroup::build(GroupType::Icosahedral).unwrap();
    let sizes: Vec<usize> = singular_lines(&k, &k.maximal_abelian().unwrap()).iter().map(|o| o.size).collect();
    assert_eq!(sizes, vec![12, 20, 30]);
}

#[test]
fn orbit_forms_are_relative_invariants() {
    for (k, data) in all_forms() {
        let t = k.group_type();
        for (o, f) in data.singular.iter().zip(&data.orbit_forms) {
            assert_eq!(f.degree(), o.size);
            assert!(f.relative_invariant);
            let mu = relative_character(k, &f.form).expect("relative invariant");
            let order = f.character_order();
            assert!(mu.iter().all(|m| m.pow(order).is_one()), "{t}");
            // the form vanishes exactly on its orbit of lines
            for line in line_orbit(k, &o.line) {
                assert!(f.form.eval(&line[0], &line[1]).is_zero());
            }
        }
        for v in generic_lines(k).take(2) {
            let g = orbit_form(k, &v);
            assert_eq!(g.degree(), k.order() / 2, "{t}");
            assert!(relative_character(k, &g.form).is_some());
            let [a, b] = &v;
            assert!(g.form.eval(a, b).is_zero());
            assert!(data.orbit_forms.iter().all(|f| !f.form.eval(a, b).is_zero()));
        }
    }
}

#[test]
fn klein_degree_identity() {
    for t in GroupType::default_suite() {
        let k = KleinGroup::build(t).unwrap();
        let id = klein_identity(&k).unwrap();
        assert!(id.holds, "{t}");
        let rhs: usize = id.terms.iter().map(|&(_, a, b)| a * b).sum();
        assert_eq!(id.lhs, rhs);
    }
    let k = KleinGroup::build(GroupType::Icosahedral).unwrap();
    let id = klein_identity(&k).unwrap();
    assert_eq!(id.lhs, 118);
    let parts: Vec<usize> = id.terms.iter().map(|&(_, a, b)| a * b).collect();
    assert_eq!(parts, vec![48, 40, 30]);
}

#[test]
fn jacobian_factorization() {
    for (k, data) in all_forms() {
        let t = k.group_type();
        let j = &data.jacobian;
        assert!(j.holds(), "{t}");
        let gbar = k.order() / 2;
        assert_eq!(j.generic_degrees, (gbar, gbar));
        assert_eq!(j.jacobian_degree, 2 * gbar - 2);
        let factor_degree: usize = data
            .orbit_forms
            .iter()
            .zip(&j.exponents)
            .map(|(f, &(_, e))| f.degree() * e as usize)
            .sum();
        assert_eq!(factor_degree, j.jacobian_degree);
    }
}

#[test]
fn absolute_invariant_degrees() {
    let cases = [
        (GroupType::Icosahedral, vec![12, 20, 30]),
        // a degree-24 monomial generates the exponent monoid but not the ring
        (GroupType::Octahedral, vec![8, 12, 18, 24]),
        (GroupType::Tetrahedral, vec![6, 8, 12, 12]),
        (GroupType::Dihedral(2), vec![4, 4, 4, 6]),
    ];
    for (t, want) in cases {
        let (k, data) = forms(t);
        let degrees: Vec<usize> = data.invariants.iter().map(|i| i.degree()).collect();
        assert_eq!(degrees, want, "{t}");
        for inv in &data.invariants {
            assert!(inv.invariant);
            let mu = relative_character(k, &inv.form).unwrap();
            assert!(mu.iter().all(CycloNum::is_one), "{t}");
        }
    }
    for (k, data) in all_forms() {
        let again = absolute_invariants(k, &data.orbit_forms);
        assert_eq!(again.len(), data.invariants.len());
    }
}
