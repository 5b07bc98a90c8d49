use crg_core::cyclo::{totient, Rational};
use crg_core::CycNum;
use num_bigint::BigInt;
use proptest::prelude::*;

fn cyc(order: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec((-9i64..=9, 1i64..=4), order as usize).prop_map(move |cs| {
        let coeffs = cs
            .into_iter()
            .map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
            .collect();
        CycNum::new(order, coeffs).unwrap()
    })
}

fn canonical(x: &CycNum) -> bool {
    let again = CycNum::new(x.order(), x.coeffs().to_vec()).unwrap();
    again.coeffs() == x.coeffs()
        && x.coeffs()[totient(x.order())..]
            .iter()
            .all(|c| *c == Rational::from_integer(0.into()))
}

fn axioms(a: CycNum, b: CycNum, c: CycNum) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!(&a * &b, &b * &a);
    for x in [&a + &b, &a * &b, &a - &c, -&c] {
        prop_assert!(canonical(&x));
    }
    if !a.is_zero() {
        let inv = a.inv().unwrap();
        prop_assert!(canonical(&inv));
        prop_assert!((&a * &inv).is_one());
    } else {
        prop_assert!(a.inv().is_err());
    }
    Ok(())
}

macro_rules! field_axioms {
    ($name:ident, $m:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(500))]
            #[test]
            fn $name(a in cyc($m), b in cyc($m), c in cyc($m)) {
                axioms(a, b, c)?;
            }
        }
    };
}

field_axioms!(field_axioms_order_3, 3);
field_axioms!(field_axioms_order_4, 4);
field_axioms!(field_axioms_order_6, 6);
field_axioms!(field_axioms_order_8, 8);
field_axioms!(field_axioms_order_12, 12);
field_axioms!(field_axioms_order_24, 24);

fn units(m: u32) -> Vec<i64> {
    (1..m as i64)
        .filter(|&n| num_integer::gcd(n, m as i64) == 1)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn galois_is_a_ring_map(
        (m, a, b, n, k) in prop::sample::select(vec![3u32, 4, 5, 8, 12]).prop_flat_map(|m| {
            (Just(m), cyc(m), cyc(m), prop::sample::select(units(m)), prop::sample::select(units(m)))
        })
    ) {
        prop_assert_eq!((&a * &b).galois(n).unwrap(), &a.galois(n).unwrap() * &b.galois(n).unwrap());
        prop_assert_eq!((&a + &b).galois(n).unwrap(), &a.galois(n).unwrap() + &b.galois(n).unwrap());
        prop_assert_eq!(a.galois(n).unwrap().galois(k).unwrap(), a.galois(n * k % m as i64).unwrap());
    }

    #[test]
    fn values_are_independent_of_the_ambient_order(
        (a, b) in (cyc(6), cyc(4)), k in 1u32..=3
    ) {
        let big = 12 * k;
        let lifted = &a.lift(big) * &b.lift(big);
        prop_assert_eq!(&a * &b, lifted.clone());
        let z = (&a * &b).embed() - lifted.embed();
        prop_assert!(z.norm() < 1e-9);
    }
}

#[test]
fn galois_permutes_roots_of_unity_faithfully() {
    for m in [3u32, 4, 6, 8, 12, 24] {
        for n in units(m) {
            let images: std::collections::BTreeSet<i64> = (0..m as i64)
                .map(|k| {
                    let img = CycNum::zeta_pow(m, k).galois(n).unwrap();
                    assert_eq!(img, CycNum::zeta_pow(m, k * n));
                    (k * n).rem_euclid(m as i64)
                })
                .collect();
            assert_eq!(images.len(), m as usize);
        }
        assert!(CycNum::zeta(m).galois(m as i64).is_err() || m == 1);
    }
}
