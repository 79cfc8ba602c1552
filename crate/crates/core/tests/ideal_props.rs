use multideal::{MonomialIdeal, Polynomial, Rational};
use proptest::prelude::*;

fn below(s: &[u32], m: &[u32]) -> bool {
    s.iter().zip(m).all(|(a, b)| a <= b)
}

fn boxed(n: usize, side: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| (0..side).map(move |c| [p.clone(), vec![c]].concat()))
            .collect();
    }
    out
}

fn vars(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_is_the_upward_closure(
        n in 1usize..4,
        raw in proptest::collection::vec(proptest::collection::vec(0u32..5, 3), 1..6),
    ) {
        let set: Vec<Vec<u32>> = raw.into_iter().map(|g| g[..n].to_vec()).collect();
        let ideal = MonomialIdeal::minimalize(n, set.clone()).unwrap();
        for m in boxed(n, 7) {
            let expected = set.iter().any(|s| below(s, &m));
            prop_assert_eq!(ideal.contains(&m).unwrap(), expected);
        }
        for (i, a) in ideal.generators().iter().enumerate() {
            for (j, b) in ideal.generators().iter().enumerate() {
                prop_assert!(i == j || !below(a, b));
            }
        }
    }

    #[test]
    fn term_ideal_ignores_scalars(
        terms in proptest::collection::vec((proptest::collection::vec(0u32..5, 2), 1i64..9), 1..6),
        num in -7i64..8,
        den in 1i64..6,
    ) {
        prop_assume!(num != 0);
        let f = Polynomial::from_terms(
            vars(2),
            terms.into_iter().map(|(e, c)| (e, Rational::from_integer(c.into()))),
        )
        .unwrap();
        let scaled = f.scale(&Rational::new(num.into(), den.into()));
        prop_assert_eq!(
            MonomialIdeal::term_ideal(&f).unwrap(),
            MonomialIdeal::term_ideal(&scaled).unwrap()
        );
    }
}

#[test]
fn encodings_of_trivial_ideals() {
    let zero = MonomialIdeal::zero(2);
    let unit = MonomialIdeal::unit(2);
    assert!(zero.is_zero() && !zero.contains(&[5, 5]).unwrap());
    assert!(unit.is_unit() && unit.contains(&[0, 0]).unwrap());
    assert!(unit.contains_ideal(&zero).unwrap());
    assert!(!zero.contains_ideal(&unit).unwrap());
    assert!(MonomialIdeal::term_ideal(&Polynomial::zero(vars(2))).is_err());
}
