mod common;

use common::*;
use disconnected_core::abgroup::{AbHom, DiagonalizableGroup, FGAbelianGroup};
use disconnected_core::cohomology::*;
use disconnected_core::exactlin::IntMatrix;
use disconnected_core::grouptable::FiniteGroup;
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn h2_matches_enumeration() {
    let mut full = 0;
    for (name, raw) in small_modules() {
        let module = raw.module();
        let h = cohomology_group(&module, 2, DEFAULT_COHOMOLOGY_BUDGET).unwrap();
        let divs = divisors(raw.moduli.iter().product());
        let mut expected = brute_h2(&raw);
        expected.torsion.retain(|(d, _)| divs.contains(d));
        let got = census_of(h.group(), &expected.torsion.iter().map(|p| p.0).collect::<Vec<_>>());
        assert_eq!(got, expected, "{name}");
        if full_enumeration(&raw) {
            full += 1;
        }
    }
    assert!(full >= 5);
}

#[test]
fn normalized_enumeration_agrees_with_full() {
    for (name, raw) in small_modules().into_iter().filter(|(_, r)| full_enumeration(r)) {
        assert_eq!(brute_h2_normalized(&raw), brute_h2_full(&raw), "{name}");
    }
}

#[test]
fn h1_matches_enumeration() {
    for (name, raw) in small_modules() {
        let h = cohomology_group(&raw.module(), 1, DEFAULT_COHOMOLOGY_BUDGET).unwrap();
        let expected = brute_h1(&raw);
        let divs: Vec<u64> = expected.torsion.iter().map(|p| p.0).collect();
        assert_eq!(census_of(h.group(), &divs), expected, "{name}");
    }
}

#[test]
fn eckmann_on_all_small_modules() {
    for (name, raw) in small_modules() {
        for p in 1..=2 {
            let h = cohomology_group(&raw.module(), p, DEFAULT_COHOMOLOGY_BUDGET).unwrap();
            assert!(eckmann_check(&h).unwrap(), "{name} degree {p}");
        }
    }
}

#[test]
fn normalization_preserves_class() {
    for (name, raw) in small_modules().into_iter().take(30) {
        let module = raw.module();
        let h = cohomology_group(&module, 2, DEFAULT_COHOMOLOGY_BUDGET).unwrap();
        let elements = module.coeff().elements().unwrap();
        for class in h.classes().unwrap() {
            // add the coboundary of a 1-cochain that is nonzero at the identity
            let b = Cochain::from_fn(&module, 1, |t| elements[(t[0] * 3 + 1) % elements.len()].clone()).unwrap();
            let shifted = class.representative.add(&module, &differential(&module, &b).unwrap()).unwrap();
            let (normalized, witness) = normalize(&module, &shifted).unwrap();
            assert!(normalized.is_normalized(&module), "{name}");
            let back = normalized.add(&module, &differential(&module, &witness).unwrap()).unwrap();
            assert_eq!(back, shifted, "{name}");
            assert_eq!(h.class_of(&normalized).unwrap(), class.coordinates, "{name}");
        }
    }
}

#[test]
fn representatives_are_canonical() {
    for (name, raw) in small_modules().into_iter().step_by(3) {
        let module = raw.module();
        let h = cohomology_group(&module, 2, DEFAULT_COHOMOLOGY_BUDGET).unwrap();
        let elements = module.coeff().elements().unwrap();
        let gamma = module.gamma().clone();
        for class in h.classes().unwrap() {
            let mut b = Cochain::zero(&module, 1);
            for g in 0..gamma.order() {
                if g != gamma.identity() {
                    b.set(&module, &[g], &elements[(g * 5 + 2) % elements.len()]).unwrap();
                }
            }
            let moved = class.representative.add(&module, &differential(&module, &b).unwrap()).unwrap();
            let coords = h.class_of(&moved).unwrap();
            assert_eq!(h.representative(&coords).unwrap(), class.representative, "{name}");
            let w = h.coboundary_witness(&moved.sub(&module, &class.representative).unwrap()).unwrap();
            assert!(w.is_some(), "{name}");
        }
    }
}

#[test]
fn torus_tower_examples() {
    let z = DiagonalizableGroup::new(1, FGAbelianGroup::trivial()).unwrap();
    let g = FiniteGroup::cyclic(2);
    let id = vec![IntMatrix::identity(1); 2];
    let s = stabilized_h2(&g, &z, &id, DEFAULT_MAX_K, DEFAULT_COHOMOLOGY_BUDGET).unwrap();
    assert!(s.group.is_trivial());
    let inv = vec![IntMatrix::identity(1), IntMatrix::from_i64(&[&[-1]])];
    let s = stabilized_h2(&g, &z, &inv, DEFAULT_MAX_K, DEFAULT_COHOMOLOGY_BUDGET).unwrap();
    assert_eq!(s.group, FGAbelianGroup::cyclic(2));
    assert_eq!(s.k_used, 1);
    assert!(s.tower.iter().all(|t| t.comparison_is_isomorphism));
}

#[test]
fn stable_value_does_not_depend_on_max_k() {
    let z = DiagonalizableGroup::new(1, FGAbelianGroup::cyclic(4)).unwrap();
    let g = FiniteGroup::cyclic(2);
    let inv = vec![IntMatrix::identity(2), IntMatrix::from_i64(&[&[-1, 0], &[0, -1]])];
    let a = stabilized_h2(&g, &z, &inv, 2, DEFAULT_COHOMOLOGY_BUDGET).unwrap();
    let b = stabilized_h2(&g, &z, &inv, 5, DEFAULT_COHOMOLOGY_BUDGET).unwrap();
    assert_eq!(a.group, b.group);
    assert_eq!(a.k_used, b.k_used);
    assert!(matches!(
        stabilized_h2(&g, &z, &inv, 0, DEFAULT_COHOMOLOGY_BUDGET),
        Err(disconnected_core::Error::BudgetExceeded { .. })
    ));
}

#[test]
fn budget_is_enforced() {
    let m = GammaModule::trivial(FiniteGroup::cyclic(6), FGAbelianGroup::cyclic(2)).unwrap();
    assert!(matches!(cohomology_group(&m, 2, 10), Err(disconnected_core::Error::BudgetExceeded { .. })));
}

fn module_strategy() -> impl Strategy<Value = (String, RawModule)> {
    proptest::sample::select(small_modules())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_is_zero((name, raw) in module_strategy(), seed in any::<u64>()) {
        let module = raw.module();
        let elements = module.coeff().elements().unwrap();
        // d is defined up to degree 3, so d∘d up to degree 1
        for p in 0..=1 {
            let mut s = seed;
            let c = Cochain::from_fn(&module, p, |_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                elements[(s >> 33) as usize % elements.len()].clone()
            }).unwrap();
            let dd = differential(&module, &differential(&module, &c).unwrap()).unwrap();
            prop_assert!(dd.is_zero(), "{} degree {}", name, p);
        }
    }

    #[test]
    fn induced_action_commutes_with_inclusion(n in 1u64..=4, k in 1u64..=4, f in 2u64..=6) {
        let z = DiagonalizableGroup::new(1, FGAbelianGroup::cyclic(f)).unwrap();
        // column 0: the torus character goes to its negative plus the torsion generator
        let s = IntMatrix::from_i64(&[&[-1, 0], &[1, 1]]);
        let (n, k) = (BigInt::from(n), BigInt::from(k));
        let inc = z.torsion_inclusion(&n, &k).unwrap();
        let small = z.precompose_action(&s, &n).unwrap();
        let large = z.precompose_action(&s, &(&n * &k)).unwrap();
        let lhs = inc.compose(&small).unwrap();
        let rhs = large.compose(&inc).unwrap();
        prop_assert!(lhs.same_map(&rhs));
    }
}

#[test]
fn coboundary_detection_direction() {
    let a = FGAbelianGroup::cyclic(4);
    let m = GammaModule::from_generator_action(FiniteGroup::cyclic(2), a.clone(), vec![AbHom::negation(&a)]).unwrap();
    let c = Cochain::from_fn(&m, 2, |t| vec![BigInt::from((t == [1, 1]) as i64 * 2)]).unwrap();
    assert!(is_cocycle(&m, &c).unwrap());
    // 2 is a norm of nothing: H² = A^Γ / N(A) = {0,2}/{0}
    assert!(coboundary_witness(&m, &c).unwrap().is_none());
}
