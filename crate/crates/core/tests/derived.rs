//! Worked examples, each checked against a direct enumeration written here.

use std::collections::BTreeMap;
use std::sync::Arc;

use diam2_core::cayley::{distance_profile, ConnectionSet};
use diam2_core::classify::{eta, pairing_label, OrbitLabel};
use diam2_core::field::{Fe, Field, SquareClass};
use diam2_core::forms::{ClassicalForm, FormKind, VectorClass};
use diam2_core::instance::Instance;
use diam2_core::oracle::{brute_force_isometry_group, group_order};
use diam2_core::space::{VectorSpace, SPACE_CAP};
use diam2_core::verify::{run_classify, run_oracle_check};

fn gf(q: u64) -> Arc<Field> {
    Arc::new(Field::from_order(q).unwrap())
}

fn census(inst: Instance) -> Vec<(String, u64)> {
    run_classify(&inst, SPACE_CAP).unwrap().into_iter().map(|r| (r.label, r.orbit_size)).collect()
}

#[test]
fn gf9_modulus_norm_and_squares() {
    let f = gf(9);
    assert_eq!(f.modulus(), &[1, 0, 1]);
    // x^2 + 1 has no root in GF(3)
    assert!((0..3).all(|x| (x * x + 1) % 3 != 0));
    let sub = f.subfield(1).unwrap();
    let mut preimages: BTreeMap<Fe, usize> = BTreeMap::new();
    for a in f.nonzero() {
        *preimages.entry(f.norm_to(a, sub)).or_default() += 1;
    }
    assert_eq!(preimages.values().copied().collect::<Vec<_>>(), vec![4, 4]);
    let minus_one = f.neg(f.one());
    assert!(f.nonzero().any(|a| f.mul(a, a) == minus_one));
    assert_eq!(f.square_class(minus_one).unwrap(), SquareClass::Square);
}

#[test]
fn small_form_facts() {
    let minus = ClassicalForm::standard(FormKind::QuadraticMinus, 2, gf(2)).unwrap();
    let space = VectorSpace::new(gf(2), 2).unwrap();
    assert!(space.nonzero().all(|i| !minus.eval_quadratic(&space.vector(i)).unwrap().is_zero()));
    assert_eq!(brute_force_isometry_group(&minus).unwrap().len(), 6);

    // phi(v, v) = sum v_i G_ij v_j^2 straight from the gram matrix
    let f = gf(4);
    let unitary = ClassicalForm::standard(FormKind::Unitary, 2, f.clone()).unwrap();
    let g = unitary.gram();
    let space = VectorSpace::new(f.clone(), 2).unwrap();
    for i in space.nonzero() {
        let v = space.vector(i);
        let mut phi = Fe::ZERO;
        for a in 0..2 {
            for b in 0..2 {
                phi = f.add(phi, f.mul(f.mul(v[a], g.get(a, b)), f.mul(v[b], v[b])));
            }
        }
        let want = if phi.is_zero() { VectorClass::Singular } else { VectorClass::Nonsingular };
        assert_eq!(unitary.vector_class(&v).unwrap(), want, "{v:?}");
    }
    // (1, 1) pairs to 1 + 1 = 0 in characteristic 2
    assert_eq!(unitary.vector_class(&[f.one(), f.one()]).unwrap(), VectorClass::Singular);
}

#[test]
fn censuses() {
    assert_eq!(census(Instance::C2Linear { q: 2, m: 1, t: 3 }), [("X1", 3), ("X2", 3), ("X3", 1)].map(|(a, b)| (a.to_string(), b)));
    assert_eq!(census(Instance::Tensor { q: 2, k: 2, m: 2, swap: false }), [("Y1", 9), ("Y2", 6)].map(|(a, b)| (a.to_string(), b)));
    assert_eq!(census(Instance::Unitary { q: 4, n: 2 }), [("S0", 9), ("S#", 6)].map(|(a, b)| (a.to_string(), b)));
    let plus = census(Instance::Quadratic { q: 3, n: 2, kind: FormKind::QuadraticPlus });
    assert_eq!(plus, [("S0", 4), ("S#", 4)].map(|(a, b)| (a.to_string(), b)));
    // c = 1 and c = 2 over GF(4)^2 have sizes 9 and 6
    let sizes: Vec<u64> = census(Instance::Subfield { q0: 2, r: 2, n: 2 }).into_iter().map(|(_, s)| s).collect();
    assert_eq!(sizes, vec![9, 6]);
}

#[test]
fn direct_c_value_census_over_gf4() {
    // count vectors of GF(4)^2 whose coordinates lie on one GF(2)-line
    let f = gf(4);
    let mut one_dim = 0;
    for a in f.elements() {
        for b in f.elements() {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let span: std::collections::BTreeSet<Fe> =
                [Fe::ZERO, a, b, f.add(a, b)].into_iter().collect();
            if span.len() <= 2 {
                one_dim += 1;
            }
        }
    }
    assert_eq!(one_dim, 9);
}

#[test]
fn pairing_classes() {
    let f3 = gf(3);
    let v = [f3.one(), f3.from_int(2)];
    assert_eq!(pairing_label(&v, 1, &f3).unwrap(), OrbitLabel::Pairing(vec![f3.from_int(2)]));
    let f4 = gf(4);
    let w = f4.basis_generator();
    let mut class = vec![w, f4.mul(w, w)];
    class.sort();
    assert_eq!(pairing_label(&[f4.one(), w], 1, &f4).unwrap(), OrbitLabel::Pairing(class));
}

#[test]
fn eta_examples() {
    assert_eq!(eta(2, 3, 2).unwrap(), 1);
    assert_eq!(eta(2, 5, 2).unwrap(), 5);
}

#[test]
fn swap_group_has_order_two() {
    let built = Instance::C2Linear { q: 2, m: 1, t: 2 }.build(SPACE_CAP).unwrap();
    assert_eq!(group_order(&built.group.generators, built.field()).unwrap(), 2);
    assert_eq!(census(Instance::C2Linear { q: 2, m: 1, t: 2 }), [("X1", 2), ("X2", 1)].map(|(a, b)| (a.to_string(), b)));
}

#[test]
fn frobenius_fuses_pairing_orbits() {
    let rec = run_oracle_check(&Instance::C2SpCase2 { q: 4, m: 1 }, SPACE_CAP).unwrap();
    assert!(rec.equal);
    assert!(rec.linear_orbits > rec.oracle_orbits);
    let rec = run_oracle_check(&Instance::Subfield { q0: 3, r: 3, n: 2 }, SPACE_CAP).unwrap();
    assert!(rec.equal && rec.sizes_ok == Some(true), "{rec:?}");
}

#[test]
fn axis_set_over_gf3_plane() {
    let space = VectorSpace::new(gf(3), 2).unwrap();
    let f = space.field();
    let (one, two) = (f.one(), f.from_int(2));
    let members: Vec<u32> = {
        let mut m: Vec<u32> = [[one, Fe::ZERO], [two, Fe::ZERO], [Fe::ZERO, one], [Fe::ZERO, two]].iter().map(|v| space.index(v)).collect();
        m.sort();
        m
    };
    let report = distance_profile(&ConnectionSet::validate(&space, &members).unwrap());
    assert_eq!(report.diameter, 2);
    assert_eq!(report.histogram, vec![1, 4, 4]);
}
