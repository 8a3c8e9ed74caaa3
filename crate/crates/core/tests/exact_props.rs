use mckay::exact::{euler_phi, rat, rat_int, CycloNum, UniPoly};
use mckay::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn cyclo(n: u32) -> impl Strategy<Value = CycloNum> {
    let phi = euler_phi(n);
    prop::collection::vec((-6i64..=6, 1i64..=4), phi).prop_map(move |v| {
        let coeffs: Vec<_> = v.into_iter().map(|(a, b)| rat(a, b)).collect();
        CycloNum::from_coeffs(&coeffs, n).unwrap()
    })
}

fn poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-5i64..=5, 0..7).prop_map(|v| UniPoly::from_ints(&v))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

macro_rules! field_axioms {
    ($name:ident, $n:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]
            #[test]
            fn $name(x in cyclo($n), y in cyclo($n), z in cyclo($n)) {
                prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
                prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
                prop_assert_eq!(&x * &y, &y * &x);
                if !x.is_zero() {
                    prop_assert!((&x * &x.inv().unwrap()).is_one());
                }
                prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
                prop_assert_eq!(x.conj().conj(), x.clone());
                // floating embedding as an independent check of the reduction
                prop_assert!(close((&x * &y).approx(), x.approx() * y.approx()));
            }
        }
    };
}

field_axioms!(field_axioms_conductor_4, 4);
field_axioms!(field_axioms_conductor_8, 8);
field_axioms!(field_axioms_conductor_12, 12);
field_axioms!(field_axioms_conductor_20, 20);
field_axioms!(field_axioms_conductor_24, 24);
field_axioms!(field_axioms_conductor_60, 60);

proptest! {
    #[test]
    fn eval_is_a_ring_homomorphism(p in poly(), q in poly(), x in cyclo(20)) {
        prop_assert_eq!((&p * &q).eval(&x), &p.eval(&x) * &q.eval(&x));
        prop_assert_eq!((&p + &q).eval(&x), &p.eval(&x) + &q.eval(&x));
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).div_exact(&q).unwrap(), p);
    }

    #[test]
    fn promotion_preserves_values(x in cyclo(12)) {
        let y = x.promote(60).unwrap();
        prop_assert!(close(x.approx(), y.approx()));
        prop_assert_eq!(y.demote(12).unwrap(), x);
    }
}

#[test]
fn root_of_unity_sums() {
    for n in 1..=24u32 {
        for k in -30..=30i64 {
            let s = (0..n as i64).fold(CycloNum::zero(n), |acc, j| &acc + &CycloNum::root_of_unity(j * k, n));
            let expected = if k.rem_euclid(n as i64) == 0 { n as i64 } else { 0 };
            assert_eq!(s, CycloNum::from_int(expected, n), "n = {n}, k = {k}");
        }
    }
}

#[test]
fn roots_of_unity_have_the_right_order() {
    for n in [4u32, 10, 12, 60] {
        for k in 0..n as i64 {
            let z = CycloNum::root_of_unity(k, n);
            let order = n / num_integer::gcd(k.unsigned_abs() as u32, n);
            assert!(z.pow(n).is_one());
            assert!(z.pow(order).is_one());
            for d in 1..order {
                assert!(!z.pow(d).is_one(), "zeta_{n}^{k} has order below {order}");
            }
        }
    }
}

#[test]
fn examples() {
    assert_eq!(CycloNum::root_of_unity(2, 4), CycloNum::from_int(-1, 4));
    let tau = &CycloNum::root_of_unity(1, 10) + &CycloNum::root_of_unity(-1, 10);
    assert_eq!(&(&tau * &tau) - &tau, CycloNum::one(10));
    assert!((tau.approx().re - 1.618033988750).abs() <= 1e-12);
    let z8 = CycloNum::root_of_unity(1, 8).approx();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((z8.re - h).abs() <= 1e-12 && (z8.im - h).abs() <= 1e-12);
    // zeta_60^12 = zeta_5 after promotion
    assert!(CycloNum::root_of_unity(12, 60).exact_eq(&CycloNum::root_of_unity(1, 5)));
    assert!(CycloNum::root_of_unity(60, 60).is_one());
    // product of roots of orders 5 and 12 has order 60
    let w = &CycloNum::root_of_unity(1, 5).promote(60).unwrap() * &CycloNum::root_of_unity(1, 12).promote(60).unwrap();
    assert!(w.pow(60).is_one() && !w.pow(30).is_one() && !w.pow(20).is_one() && !w.pow(12).is_one());
    assert!(matches!(
        CycloNum::root_of_unity(1, 5).promote(12),
        Err(Error::IncompatibleConductor { .. })
    ));
    assert_eq!(CycloNum::from_int(-1, 4).promote(60).unwrap(), CycloNum::from_int(-1, 60));
    assert!(CycloNum::zero(7).approx().norm() == 0.0);
}

#[test]
fn polynomial_examples() {
    let p = UniPoly::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
    assert_eq!(p.eval_rat(&rat_int(1)), rat_int(2));
    assert_eq!(p.eval(&CycloNum::zero(4)), CycloNum::one(4));
    // t + t^11 + t^19 + t^29 at zeta_10: exponents mod 10 are 1, 1, 9, 9
    let mut c = vec![0i64; 30];
    for e in [1, 11, 19, 29] {
        c[e] = 1;
    }
    let q = UniPoly::from_ints(&c);
    let z = CycloNum::root_of_unity(1, 10);
    let two_tau = (&z + &CycloNum::root_of_unity(-1, 10)).scale(&rat_int(2));
    assert_eq!(q.eval(&z), two_tau);
    let geometric = UniPoly::from_ints(&[1, 0, 0, 0, -1]).div_exact(&UniPoly::from_ints(&[1, -1])).unwrap();
    assert_eq!(geometric, UniPoly::from_ints(&[1, 1, 1, 1]));
    assert!(matches!(
        UniPoly::from_ints(&[1, 0, 1]).div_exact(&UniPoly::from_ints(&[1, -1])),
        Err(Error::InexactDivision)
    ));
}

#[test]
fn serialization_shape() {
    let x = CycloNum::from_coeffs(&[rat(1, 2), rat(3, 2)], 3).unwrap();
    let v: serde_json::Value = serde_json::to_value(&x).unwrap();
    assert_eq!(v, serde_json::json!({ "conductor": 3, "coeffs": [[1, 2], [3, 2]] }));
    assert_eq!(serde_json::to_value(UniPoly::from_ints(&[1, 0, 2])).unwrap(), serde_json::json!([1, 0, 2]));
}
