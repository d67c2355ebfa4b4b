use std::sync::Arc;

use proptest::prelude::*;

use diam2_core::classify::SubfieldClassifier;
use diam2_core::field::{Fe, Field};
use diam2_core::forms::FormKind;
use diam2_core::instance::Instance;
use diam2_core::oracle::{all_orbits, group_order, subfield_pair};
use diam2_core::space::{VectorSpace, SPACE_CAP};

fn closed_form_instances() -> Vec<Instance> {
    vec![
        Instance::C2Linear { q: 3, m: 1, t: 3 },
        Instance::C2Linear { q: 4, m: 2, t: 2 },
        Instance::C2SpCase1 { q: 3, m: 2, t: 2 },
        Instance::C2SpCase2 { q: 5, m: 2 },
        Instance::C2SpCase2 { q: 9, m: 1 },
        Instance::Tensor { q: 3, k: 2, m: 3, swap: false },
        Instance::Tensor { q: 4, k: 2, m: 2, swap: true },
        Instance::Subfield { q0: 2, r: 3, n: 3 },
        Instance::Subfield { q0: 3, r: 3, n: 2 },
        // form groups are found by brute force, so these stay small
        Instance::Unitary { q: 4, n: 3 },
        Instance::Quadratic { q: 3, n: 3, kind: FormKind::QuadraticOddNonsquare },
        Instance::Quadratic { q: 2, n: 4, kind: FormKind::QuadraticMinus },
        Instance::Quadratic { q: 5, n: 2, kind: FormKind::QuadraticPlus },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn c_value_is_scalar_invariant(q0 in prop_oneof![Just(2u64), Just(3)], r in 2u32..=3, n in 1usize..=3, seed in any::<u64>(), lambda in 1u32..u32::MAX) {
        let (f, sub) = subfield_pair(q0, r).unwrap();
        let cls = SubfieldClassifier::new(f.clone(), sub, n).unwrap();
        let space = VectorSpace::new(f.clone(), n).unwrap();
        let idx = 1 + (seed % (space.size() as u64 - 1)) as u32;
        let v = space.vector(idx);
        let lam = Fe(1 + lambda % (f.order() - 1));
        let w: Vec<Fe> = v.iter().map(|&x| f.mul(lam, x)).collect();
        prop_assert_eq!(cls.c_value(&v).unwrap(), cls.c_value(&w).unwrap());
        let c = cls.c_value(&v).unwrap();
        prop_assert!(c >= 1 && c <= n.min(r as usize));
    }

    #[test]
    fn labels_are_generator_invariant(which in 0usize..13, seed in any::<u64>()) {
        let inst = closed_form_instances()[which];
        let built = inst.build(SPACE_CAP).unwrap();
        let space = &built.group.space;
        let f = built.field();
        let idx = 1 + (seed % (space.size() as u64 - 1)) as u32;
        let v = space.vector(idx);
        let label = built.label(&v).unwrap();
        for g in &built.group.generators {
            let w = g.apply(&v, f).unwrap();
            prop_assert_eq!(&built.label(&w).unwrap(), &label, "{} generator {:?}", inst, g);
        }
    }

    #[test]
    fn field_distributes(p in prop_oneof![Just(2u32), Just(3), Just(5)], e in 1u32..=4, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = Field::new(p, e).unwrap();
        let q = f.order();
        let (a, b, c) = (Fe(a % q), Fe(b % q), Fe(c % q));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }
}

#[test]
fn orbit_sizes_divide_group_order() {
    for inst in [
        Instance::C2Linear { q: 3, m: 1, t: 2 },
        Instance::C2SpCase2 { q: 4, m: 1 },
        Instance::Tensor { q: 2, k: 2, m: 2, swap: true },
        Instance::Subfield { q0: 2, r: 2, n: 2 },
        Instance::Extraspecial { q: 5 },
        Instance::Quadratic { q: 3, n: 3, kind: FormKind::QuadraticOddSquare },
    ] {
        let built = inst.build(SPACE_CAP).unwrap();
        let order = group_order(&built.group.generators, built.field()).unwrap();
        let part = all_orbits(&built.group);
        for &s in &part.sizes {
            assert_eq!(order % s, 0, "{inst}: orbit of size {s} in a group of order {order}");
        }
        assert_eq!(part.sizes.iter().sum::<u64>() + 1, built.group.space.size() as u64);
    }
}

#[test]
fn closed_form_sizes_sum_to_space() {
    for inst in closed_form_instances() {
        let built = inst.build(SPACE_CAP).unwrap();
        let total: usize = built.orbits().unwrap().iter().map(|o| o.members.len()).sum();
        assert_eq!(total + 1, built.group.space.size() as usize, "{inst}");
    }
}

#[test]
fn space_over_prime_field_has_code_digits() {
    let space = VectorSpace::new(Arc::new(Field::new(3, 1).unwrap()), 3).unwrap();
    assert_eq!(space.vector(5), vec![Fe(0), Fe(1), Fe(2)]);
}
