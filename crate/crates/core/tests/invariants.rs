mod common;

use common::{block, block_diag, built, catalog_built};
use crg_core::arrangement::{arrangement_of, irreducibility, is_essential};
use crg_core::catalog::{g4_generators, imprimitive_generators, CoxeterType, GroupSpec};
use crg_core::kappa::{a_indices, divisors};
use crg_core::matgroup::{generate, DEFAULT_ORDER_BOUND};
use crg_core::quadmap::{build_phi, equivariance_defect, is_surjective, sym2_dim, PhiMap};
use crg_core::repfamily::{check_periodicity, constant, inner_product, ChiFamily};
use crg_core::{CycNum, Vector};
use proptest::prelude::*;

fn irreducible(b: &crg_core::catalog::BuiltGroup) -> bool {
    is_essential(&b.arrangement) && irreducibility(&b.arrangement).unwrap().is_irreducible()
}

#[test]
fn phi_rank_follows_irreducibility() {
    for b in catalog_built() {
        if !is_essential(&b.arrangement) {
            continue;
        }
        let (surjective, rank) = is_surjective(&build_phi(&b.arrangement).unwrap());
        assert_eq!(surjective, irreducible(&b), "{}", b.name);
        assert!(rank <= sym2_dim(b.group.dim()));
    }
}

#[test]
fn hyperplane_count_bound() {
    for b in catalog_built() {
        if irreducible(&b) {
            assert!(b.arrangement.len() >= sym2_dim(b.group.dim()), "{}", b.name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn column_scaling(h in 0usize..4, k in 0i64..6, p in 1i64..5) {
        let b = built(&GroupSpec::exceptional(4));
        let order = b.arrangement.cyclotomic_order();
        let lambda = &CycNum::zeta_pow(order, k) * &CycNum::from_int(order, p);
        let mut forms: Vec<Vector> = b.arrangement.forms();
        forms[h] = forms[h].iter().map(|x| &lambda * x).collect();
        let scaled = PhiMap::from_forms(2, order, &forms);
        let base = build_phi(&b.arrangement).unwrap();
        prop_assert_eq!(scaled.rank(), base.rank());
        let l2 = &lambda * &lambda;
        let expected: Vec<CycNum> = base.column(h).coeffs.iter().map(|c| &l2 * c).collect();
        prop_assert_eq!(scaled.column(h).coeffs, expected);
    }
}

#[test]
fn equivariant_sums_are_invariant() {
    for b in catalog_built() {
        if !is_essential(&b.arrangement) {
            continue;
        }
        let r = equivariance_defect(&build_phi(&b.arrangement).unwrap(), &b.group);
        if r.is_equivariant() && !r.sum_of_squares_zero {
            assert_eq!(r.sum_is_invariant, Some(true), "{}", b.name);
        }
    }
}

#[test]
fn indices_are_the_divisors_of_kappa() {
    for b in catalog_built() {
        let r = a_indices(&b.group, &b.arrangement);
        assert_eq!(r.indices, divisors(r.kappa), "{}", b.name);
        assert_eq!(r.kappa % b.group.center_exponent() as u32, 0, "{}", b.name);
        if irreducible(&b) {
            assert_eq!(r.kappa % b.group.center().len() as u32, 0, "{}", b.name);
        }
    }
}

#[test]
fn kappa_two_exactly_for_real_groups() {
    for d in 1..=6u32 {
        for e in 1..=6 / d {
            for r in 2..=3usize {
                if (d, e, r) == (1, 1, 2) {
                    continue;
                }
                let b = built(&GroupSpec::imprimitive(d, e, r));
                let k = a_indices(&b.group, &b.arrangement).kappa;
                let real = d * e <= 2 || (d == 1 && r == 2);
                assert_eq!(k == 2, real, "G({},{},{})", d * e, e, r);
            }
        }
    }
}

#[test]
fn chi_splits_over_orbits() {
    for b in catalog_built() {
        let fam = ChiFamily::new(&b.group, &b.arrangement);
        for n in 0..4 {
            let total = fam.chi(n);
            let blocks = (0..b.arrangement.orbits().len())
                .map(|o| fam.chi_on_orbit(n, o))
                .reduce(|x, y| x.add(&y))
                .unwrap();
            assert_eq!(total, blocks, "{}", b.name);
        }
    }
}

#[test]
fn central_elements_act_by_powers() {
    for b in catalog_built() {
        let g = &b.group;
        let fam = ChiFamily::new(g, &b.arrangement);
        let m = fam.modulus();
        for &z in g.center() {
            // only scalar central elements act by a power on every root line
            let Some(lambda) = g.is_scalar(z) else {
                assert!(!irreducible(&b), "{}", b.name);
                continue;
            };
            let class = g.conjugacy_class_of(z);
            for n in 0..6 {
                let expected = &lambda.pow(n).unwrap().lift(m)
                    * &CycNum::from_int(m, b.arrangement.len() as i64);
                assert_eq!(fam.chi(n).values[class], expected, "{} n={}", b.name, n);
            }
        }
    }
}

#[test]
fn period_is_kappa() {
    for b in catalog_built() {
        let p = check_periodicity(&b.group, &b.arrangement);
        assert!(
            p.matches,
            "{}: period {} kappa {}",
            b.name, p.period, p.kappa
        );
    }
}

#[test]
fn product_characters_add() {
    let left = imprimitive_generators(3, 1, 1);
    let right = g4_generators();
    let mut gens = Vec::new();
    for w in &left {
        gens.push(block_diag(w, &crg_core::Matrix::identity(2, 1)));
    }
    for w in &right {
        gens.push(block_diag(&crg_core::Matrix::identity(1, 1), w));
    }
    let g = generate(&gens, DEFAULT_ORDER_BOUND).unwrap();
    assert_eq!(g.len(), 3 * 24);
    let a = arrangement_of(&g).unwrap();
    let g1 = generate(&left, DEFAULT_ORDER_BOUND).unwrap();
    let a1 = arrangement_of(&g1).unwrap();
    let g2 = generate(&right, DEFAULT_ORDER_BOUND).unwrap();
    let a2 = arrangement_of(&g2).unwrap();
    let (f, f1, f2) = (
        ChiFamily::new(&g, &a),
        ChiFamily::new(&g1, &a1),
        ChiFamily::new(&g2, &a2),
    );
    for n in 0..7 {
        let (x, x1, x2) = (f.chi(n), f1.chi(n), f2.chi(n));
        for w in 0..g.len() {
            let m = g.element(w);
            let w1 = g1.index_of(&block(m, 0, 1)).unwrap();
            let w2 = g2.index_of(&block(m, 1, 2)).unwrap();
            let sum = &x1.values[g1.conjugacy_class_of(w1)] + &x2.values[g2.conjugacy_class_of(w2)];
            assert_eq!(x.values[g.conjugacy_class_of(w)], sum, "n={}", n);
        }
    }
}

fn norm(b: &crg_core::catalog::BuiltGroup, n: i64) -> CycNum {
    let x = ChiFamily::new(&b.group, &b.arrangement).chi(n);
    inner_product(&x, &x).unwrap()
}

#[test]
fn first_character_norms() {
    for (spec, expected) in [
        (GroupSpec::coxeter(CoxeterType::A, 3), 2),
        (GroupSpec::coxeter(CoxeterType::A, 4), 2),
        (GroupSpec::coxeter(CoxeterType::B, 3), 5),
        (GroupSpec::coxeter(CoxeterType::B, 4), 5),
        (GroupSpec::coxeter(CoxeterType::D, 4), 2),
        (GroupSpec::exceptional(4), 2),
    ] {
        let b = built(&spec);
        assert_eq!(norm(&b, 1), CycNum::from_int(1, expected), "{}", b.name);
    }
}

#[test]
fn type_a_permutation_character() {
    for n in [3, 4] {
        let b = built(&GroupSpec::coxeter(CoxeterType::A, n));
        let x0 = ChiFamily::new(&b.group, &b.arrangement).chi(0);
        assert_eq!(norm(&b, 0), CycNum::from_int(1, 3));
        let one = constant(&b.group, 1);
        assert_eq!(inner_product(&x0, &one).unwrap(), CycNum::from_int(1, 1));
    }
}

#[test]
fn coxeter_root_squares_are_equivariant() {
    use crg_core::quadmap::coxeter_equivariant_forms;
    let mut specs: Vec<GroupSpec> = (1..=5)
        .map(|n| GroupSpec::coxeter(CoxeterType::A, n))
        .collect();
    specs.extend((2..=4).map(|n| GroupSpec::coxeter(CoxeterType::B, n)));
    specs.push(GroupSpec::coxeter(CoxeterType::D, 4));
    specs.extend([3, 4, 6].map(|m| GroupSpec::coxeter(CoxeterType::I2, m)));
    for spec in specs {
        let b = built(&spec);
        let forms = coxeter_equivariant_forms(&b).unwrap();
        let p = PhiMap::from_forms(b.group.dim(), b.arrangement.cyclotomic_order(), &forms);
        let r = equivariance_defect(&p, &b.group);
        assert!(r.is_equivariant(), "{}", b.name);
        assert!(!r.sum_of_squares_zero, "{}", b.name);
        assert_eq!(r.sum_is_invariant, Some(true), "{}", b.name);
    }
}
