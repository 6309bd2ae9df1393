mod common;

use std::time::Instant;

use common::*;
use octosolve::oracle::{compare, enumerate_solutions, is_sorted, naive_mul, DEFAULT_MAX_Q};
use octosolve::polyeq::solve;
use octosolve::{Field, Octonion, Poly};
use proptest::prelude::*;

fn agree<F: Field>(f: &F, a: &Octonion<F::Elem>, b: &Octonion<F::Elem>) -> Result<(), TestCaseError> {
    let lib = a.mul(f, b);
    let naive = Octonion::from_coords(naive_mul(f, &a.coords(), &b.coords()));
    let m = 4.0 * a.magnitude(f).max(1.0) * b.magnitude(f).max(1.0);
    prop_assert!(close(f, &lib, &naive, m));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn complex_products_agree(a in octonion(complex_elem()), b in octonion(complex_elem())) {
        agree(&complex(), &a, &b)?;
    }

    #[test]
    fn rational_products_agree(a in octonion(rational_elem()), b in octonion(rational_elem())) {
        agree(&rationals(), &a, &b)?;
    }

    #[test]
    fn f5_products_agree((a, b) in { let f = finite(5, 1); (octonion(finite_elem(&f)), octonion(finite_elem(&f))) }) {
        agree(&finite(5, 1), &a, &b)?;
    }

    #[test]
    fn f16_products_agree((a, b) in { let f = finite(2, 4); (octonion(finite_elem(&f)), octonion(finite_elem(&f))) }) {
        agree(&finite(2, 4), &a, &b)?;
    }
}

#[test]
fn enumeration_is_deterministic_and_sorted() {
    let f = finite(3, 1);
    let p = Poly::new(&f, vec![f.zero(), f.one(), f.one()]);
    let c = Octonion::zero(&f);
    let first = enumerate_solutions(&f, &p, &c, DEFAULT_MAX_Q).unwrap();
    for _ in 0..3 {
        let again = enumerate_solutions(&f, &p, &c, DEFAULT_MAX_Q).unwrap();
        assert_eq!(again.found, first.found);
        assert_eq!(again.to_json(&f), first.to_json(&f));
    }
    assert!(is_sorted(&f, &first.found));
    assert!(!first.found.is_empty());
}

#[test]
fn square_roots_of_e1_plus_4e2_over_f7() {
    let f = finite(7, 1);
    let c = Octonion::from_coords([1, 0, 0, 0, 0, 0, 0, 4].map(|n| f.from_i64(n)));
    let p = Poly::monomial(&f, 2);
    let start = Instant::now();
    let report = enumerate_solutions(&f, &p, &c, DEFAULT_MAX_Q).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(report.scanned, 7u64.pow(8));
    let expected: Vec<_> = [(1, 2), (1, 5), (6, 2), (6, 5)]
        .iter()
        .map(|&(a, b)| Octonion::from_coords([a, 0, 0, 0, 0, 0, 0, b].map(|n| f.from_i64(n))))
        .collect();
    assert_eq!(report.found, expected);
    let sol = solve(&f, &p, &c).unwrap();
    assert!(compare(&f, &report, &sol).unwrap().matches);
    assert!(elapsed.as_secs() < 60, "scan took {elapsed:?}");
}
