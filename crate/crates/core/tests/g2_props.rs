mod common;

use common::*;
use octosolve::g2::{self, random_generator, random_word, transporter, Automorphism, OrbitLabel};
use octosolve::{Error, Field, Octonion};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type O<F> = Octonion<<F as Field>::Elem>;

fn labels_agree<F: Field>(f: &F, a: &OrbitLabel<F::Elem>, b: &OrbitLabel<F::Elem>, m: f64) -> bool {
    a.eq_scaled(f, b, f.rounding_scale(4.0 * m * m).max(1.0))
}

fn invariance<F: Field>(f: &F, a: &O<F>, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_generator(f, &mut rng);
    let ga = g.apply(f, a).unwrap();
    let m = a.magnitude(f).max(ga.magnitude(f)).max(1.0);
    match (g2::classify(f, a), g2::classify(f, &ga)) {
        (Ok(x), Ok(y)) => {
            let k = f.quadratic_closure().unwrap();
            prop_assert!(labels_agree(&k, &x, &y, m), "{:?} vs {:?} under {:?}", x, y, g);
        }
        (Err(Error::NotSplit(_)), Err(Error::NotSplit(_))) => {}
        (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
    }
    // the inverse generator undoes it
    let back = g.inverse(f).unwrap().apply(f, &ga).unwrap();
    prop_assert!(close(f, &back, a, m.powi(4)));
    Ok(())
}

fn vieta_and_membership<F: Field>(f: &F, a: &O<F>) -> Result<(), TestCaseError> {
    let e = match g2::eigenvalues(f, a) {
        Ok(e) => e,
        Err(Error::NotSplit(_)) => return Ok(()),
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    };
    let k = f.quadratic_closure().unwrap();
    let m = a.magnitude(f).max(1.0);
    let (t, n) = (f.embed(&k, &a.trace(f)), f.embed(&k, &a.norm(f)));
    prop_assert!(close_elem(&k, &k.add(&e.lambda1, &e.lambda2), &t, 4.0 * m * m));
    prop_assert!(close_elem(&k, &k.mul(&e.lambda1, &e.lambda2), &n, 4.0 * m * m));
    let label = g2::classify(f, a).unwrap();
    prop_assert!(g2::orbit_member(f, &label, a).unwrap(), "{:?} ∉ {:?}", a, label);
    Ok(())
}

fn words_are_automorphisms<F: Field>(f: &F, seed: u64, len: usize) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let auto = Automorphism::from_word(f, random_word(f, &mut rng, len)).unwrap();
    let v = auto.violations(f);
    prop_assert!(v.is_empty(), "{:?}", v);
    let inv = auto.invert(f).unwrap();
    let v = inv.compose(f, &auto).violations(f);
    prop_assert!(v.is_empty(), "{:?}", &v[..v.len().min(3)]);
    Ok(())
}

fn transports<F: Field>(f: &F, a: &O<F>) -> Result<(), TestCaseError> {
    match transporter(f, a) {
        Ok((auto, target)) => {
            prop_assert!(auto.apply(f, a).eq(f, &target));
            prop_assert!(g2::classify_split(f, &target).unwrap().representative(f).eq(f, &target));
        }
        Err(Error::NotSplit(_)) => {}
        Err(e) => prop_assert!(false, "{}", e),
    }
    Ok(())
}

/// The canonical representatives lie in distinct orbits, and α + βu1 with
/// β ≠ 0 is never in an O2 orbit.
fn representatives<F: Field>(f: &F, alpha: &F::Elem, beta: &F::Elem, g1: &F::Elem, g2_: &F::Elem) -> Result<(), TestCaseError> {
    let scalar = OrbitLabel::Scalar(alpha.clone());
    let o3 = OrbitLabel::O3(alpha.clone());
    let reps = [scalar.representative(f), o3.representative(f)];
    prop_assert_eq!(g2::classify(f, &reps[0]).unwrap().kind(), "scalar");
    prop_assert_eq!(g2::classify(f, &reps[1]).unwrap().kind(), "O3");
    prop_assert!(!g2::orbit_member(f, &scalar, &reps[1]).unwrap());
    prop_assert!(!g2::orbit_member(f, &o3, &reps[0]).unwrap());
    if let Ok(o2) = OrbitLabel::o2(f, g1.clone(), g2_.clone()) {
        let rep = o2.representative(f);
        prop_assert_eq!(g2::classify(f, &rep).unwrap().kind(), "O2");
        prop_assert!(!g2::orbit_member(f, &scalar, &rep).unwrap());
        prop_assert!(!g2::orbit_member(f, &o3, &rep).unwrap());
        if !f.is_zero(beta) {
            let mut x = Octonion::scalar(f, alpha.clone());
            x.u[0] = beta.clone();
            prop_assert!(!g2::orbit_member(f, &o2, &x).unwrap());
            prop_assert_eq!(g2::classify(f, &x).unwrap().kind(), "O3");
        }
    }
    Ok(())
}

macro_rules! g2_suite {
    ($name:ident, $field:expr, $elem:expr, $cases:expr) => {
        mod $name {
            use super::*;

            proptest! {
                #![proptest_config(ProptestConfig::with_cases($cases))]

                #[test]
                fn classify_is_invariant(a in octonion($elem), seed in any::<u64>()) {
                    invariance(&$field, &a, seed)?;
                }

                #[test]
                fn vieta_and_own_orbit(a in octonion($elem)) {
                    vieta_and_membership(&$field, &a)?;
                }

                #[test]
                fn random_words(seed in any::<u64>(), len in 1usize..=12) {
                    words_are_automorphisms(&$field, seed, len)?;
                }

                #[test]
                fn representatives_are_distinct(a in $elem, b in $elem, c in $elem, d in $elem) {
                    representatives(&$field, &a, &b, &c, &d)?;
                }
            }
        }
    };
}

g2_suite!(complex_field, complex(), complex_elem(), 128);
g2_suite!(rational_field, rationals(), rational_elem(), 48);
g2_suite!(f7, finite(7, 1), finite_elem(&finite(7, 1)), 256);
g2_suite!(f9, finite(3, 2), finite_elem(&finite(3, 2)), 256);
g2_suite!(f16, finite(2, 4), finite_elem(&finite(2, 4)), 256);

proptest! {
    #[test]
    fn transporter_over_finite_fields(a in octonion(finite_elem(&finite(5, 1)))) {
        transports(&finite(5, 1), &a)?;
    }

    #[test]
    fn transporter_in_characteristic_two(a in octonion(finite_elem(&finite(2, 3)))) {
        transports(&finite(2, 3), &a)?;
    }

    #[test]
    fn transporter_over_rationals(a in octonion(rational_elem())) {
        transports(&rationals(), &a)?;
    }

    #[test]
    fn automorphism_json_round_trips(seed in any::<u64>()) {
        let f = finite(7, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let auto = Automorphism::from_word(&f, random_word(&f, &mut rng, 6)).unwrap();
        let back = Automorphism::from_json(&f, &auto.to_json(&f)).unwrap();
        prop_assert_eq!(back.matrix, auto.matrix);
    }
}
