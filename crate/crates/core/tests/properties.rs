mod common;

use common::*;
use proptest::prelude::*;
use qcat::adjunction::{concept_lattice, BifunctorTable, InducedAdjunction, Kind, TwoVarAdjunction};
use qcat::completeness::{
    has_order_right_adjoint, iota, is_complete, preserves_sups, preserves_tensors, right_adjoint_of, CompleteCategory,
};
use qcat::quantale::{Elem, Quantale, QuantaleRef};
use qcat::representation::self_certificate;
use qcat::vcat::{check_adjunction, functor_category, is_equivalence, verify_vfunctor, Budget, VCategory, VFunctor};
use rand::Rng;

fn quantale(i: usize, n: usize) -> QuantaleRef {
    match i % 4 {
        0 => Quantale::boolean(),
        1 => Quantale::goedel(n).unwrap(),
        2 => Quantale::lukasiewicz(n).unwrap(),
        _ => Quantale::lawvere(n).unwrap(),
    }
}

/// A small complete category: `V`, or a presheaf category on at most two
/// objects when `V` is Boolean.
fn complete_category(r: &mut Rng8, q: &QuantaleRef) -> CompleteCategory {
    if q.len() > 2 || r.gen_bool(0.3) {
        return CompleteCategory::of_quantale(q);
    }
    let n = r.gen_range(1..=2);
    let a = random_category(r, q, n);
    let space = functor_category(&a.dual(), &VCategory::of_quantale(q), Budget::default()).unwrap();
    is_complete(space.category()).expect("presheaf categories are complete")
}

fn random_functor(r: &mut Rng8, x: &VCategory, y: &VCategory) -> VFunctor {
    let all = functor_category(x, y, Budget::default()).unwrap();
    let map = all.map(r.gen_range(0..all.len())).to_vec();
    VFunctor::new(x.clone(), y.clone(), map).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residuation_and_distributivity(i in 0usize..4, n in 2usize..7, x in 0usize..7, y in 0usize..7, z in 0usize..7) {
        let q = quantale(i, n);
        let (x, y, z) = (x % q.len(), y % q.len(), z % q.len());
        prop_assert_eq!(q.leq(q.tensor(x, y), z), q.leq(x, q.residuate(y, z)));
        prop_assert_eq!(q.tensor(x, q.join2(y, z)), q.join2(q.tensor(x, y), q.tensor(x, z)));
        prop_assert_eq!(q.tensor(x, q.bottom()), q.bottom());
        prop_assert_eq!(q.residuate(x, y), residuum(&q, x, y));
    }

    #[test]
    fn lawvere_order_is_numeric_reverse(n in 2usize..8) {
        let q = Quantale::lawvere(n).unwrap();
        prop_assert_eq!(q.label(q.join([])), "inf");
        prop_assert_eq!(q.label(q.unit()), "0");
        prop_assert_eq!(q.unit(), q.top());
        let value = |e: Elem| q.label(e).parse::<usize>().unwrap_or(usize::MAX);
        for a in q.elements() {
            for b in q.elements() {
                prop_assert_eq!(q.leq(a, b), value(a) >= value(b));
                let sum = value(a).saturating_add(value(b));
                prop_assert_eq!(value(q.tensor(a, b)), if sum < n { sum } else { usize::MAX });
            }
        }
    }

    #[test]
    fn functor_enumeration_matches_filter(seed in any::<u64>(), i in 0usize..4, m in 1usize..4, k in 1usize..4) {
        let mut r = rng(seed);
        let q = quantale(i, 3);
        let (x, y) = (random_category(&mut r, &q, m), random_category(&mut r, &q, k));
        let space = functor_category(&x, &y, Budget::default()).unwrap();
        let expected = brute_functors(&x, &y);
        prop_assert_eq!(space.maps(), expected.as_slice());
        for (f, fm) in space.maps().iter().enumerate() {
            for (g, gm) in space.maps().iter().enumerate() {
                prop_assert_eq!(space.category().hom(f, g), pointwise_hom(&y, fm, gm));
            }
        }
    }

    #[test]
    fn dual_functoriality(seed in any::<u64>(), i in 0usize..4) {
        let mut r = rng(seed);
        let q = quantale(i, 3);
        let (x, y) = (random_category(&mut r, &q, 3), random_category(&mut r, &q, 2));
        let map: Vec<usize> = (0..3).map(|_| r.gen_range(0..2)).collect();
        let f = VFunctor::new(x.clone(), y.clone(), map).unwrap();
        prop_assert_eq!(verify_vfunctor(&f), verify_vfunctor(&f.dual()));
        let g = random_functor(&mut r, &x, &y);
        let h = random_functor(&mut r, &x, &y);
        prop_assert_eq!(g.le(&h), h.dual().le(&g.dual()));
    }

    #[test]
    fn adjunction_by_homs_matches_unit_and_counit(seed in any::<u64>(), i in 0usize..3) {
        let mut r = rng(seed);
        let q = quantale(i, 3);
        let (x, y) = (random_category(&mut r, &q, 2), random_category(&mut r, &q, 2));
        let f = random_functor(&mut r, &x, &y);
        let g = random_functor(&mut r, &y, &x);
        let unit = x.objects().all(|a| x.le(a, g.apply(f.apply(a))));
        let counit = y.objects().all(|b| y.le(f.apply(g.apply(b)), b));
        prop_assert_eq!(check_adjunction(&f, &g), unit && counit);
    }

    #[test]
    fn adjoint_characterisations_agree(seed in any::<u64>(), i in 0usize..3) {
        let mut r = rng(seed);
        let q = quantale(i, 3);
        let (x, y) = (complete_category(&mut r, &q), complete_category(&mut r, &q));
        let f = random_functor(&mut r, x.category(), y.category());
        let by_search = right_adjoint_of(&f);
        let by_sups = preserves_sups(&f, &x, &y, Budget::default()).unwrap();
        let by_tensors = has_order_right_adjoint(&f) && preserves_tensors(&f, &x, &y);
        prop_assert_eq!(by_search.is_some(), by_sups);
        prop_assert_eq!(by_sups, by_tensors);
        if let Some(g) = by_search {
            prop_assert!(check_adjunction(&f, &g));
        }
    }

    #[test]
    fn hom_continuity(seed in any::<u64>(), i in 0usize..3, mask in any::<u32>()) {
        let mut r = rng(seed);
        let q = quantale(i, 3);
        let x = complete_category(&mut r, &q);
        let c = x.category();
        let subset: Vec<usize> = c.objects().filter(|&o| mask & (1 << (o % 32)) != 0).collect();
        let (meet, join) = (x.meet(subset.iter().copied()), x.join(subset.iter().copied()));
        for o in c.objects() {
            let into: Vec<Elem> = subset.iter().map(|&s| c.hom(o, s)).collect();
            let out: Vec<Elem> = subset.iter().map(|&s| c.hom(s, o)).collect();
            prop_assert_eq!(c.hom(o, meet), glb(&q, &into));
            prop_assert_eq!(c.hom(join, o), glb(&q, &out));
        }
    }

    #[test]
    fn functor_categories_into_complete_targets_are_complete(seed in any::<u64>(), i in 0usize..3) {
        let mut r = rng(seed);
        let q = quantale(i, 3);
        let a = random_category(&mut r, &q, 2);
        let x = CompleteCategory::of_quantale(&q);
        let space = functor_category(&a, x.category(), Budget::default()).unwrap();
        prop_assert!(is_complete(space.category()).is_ok());
        prop_assert!(is_complete(&space.category().dual()).is_ok());
    }

    #[test]
    fn concepts_are_exactly_the_fixed_points(seed in any::<u64>(), qi in 0usize..2, na in 1usize..3, nb in 1usize..3, k in 0usize..3) {
        let mut r = rng(seed);
        let (_, q) = quantales()[qi].clone();
        let t = TwoVarAdjunction::of_quantale(&q);
        let (a, b) = (random_category(&mut r, &q, na), random_category(&mut r, &q, nb));
        let table = random_table(&mut r, &a, &b, &VCategory::of_quantale(&q));
        let kind = Kind::ALL[k];
        let lattice = concept_lattice(&t, kind, &table, Budget::default()).unwrap();
        let adj = lattice.adjunction();
        let space = adj.left_space().category();
        let h = adj.closure();
        let fixed: Vec<usize> = space.objects().filter(|&p| space.is_iso(h[p], p)).collect();
        let primaries: Vec<usize> = lattice.concepts().iter().map(|c| c.primary).collect();
        prop_assert_eq!(primaries, fixed);
        for c in lattice.concepts() {
            prop_assert_eq!(c.mate, adj.left()[c.primary]);
        }
        for i in 0..lattice.len() {
            for j in 0..lattice.len() {
                let (p, p2) = (lattice.concepts()[i].primary, lattice.concepts()[j].primary);
                prop_assert_eq!(lattice.category().hom(i, j), space.hom(p, p2));
            }
        }
    }

    #[test]
    fn valid_certificates_give_equivalences(seed in any::<u64>(), qi in 0usize..2, k in 0usize..3) {
        let mut r = rng(seed);
        let (_, q) = quantales()[qi].clone();
        let t = TwoVarAdjunction::of_quantale(&q);
        let (a, b) = (random_category(&mut r, &q, 2), random_category(&mut r, &q, 2));
        let table = random_table(&mut r, &a, &b, &VCategory::of_quantale(&q));
        let cert = self_certificate(&t, Kind::ALL[k], &table, Budget::default()).unwrap();
        prop_assert!(cert.is_valid());
        let h = cert.h.as_ref().unwrap();
        prop_assert!(is_equivalence(h));
        prop_assert!(cert.h_bijective);
    }

    #[test]
    fn isbell_h_identity(seed in any::<u64>(), qi in 0usize..2) {
        let mut r = rng(seed);
        let (_, q) = quantales()[qi].clone();
        let t = TwoVarAdjunction::of_quantale(&q);
        let (a, b) = (random_category(&mut r, &q, 2), random_category(&mut r, &q, 2));
        let table = random_table(&mut r, &a, &b, &VCategory::of_quantale(&q));
        let cert = self_certificate(&t, Kind::Isbell, &table, Budget::default()).unwrap();
        let lattice = concept_lattice(&t, Kind::Isbell, &table, Budget::default()).unwrap();
        let (c, h) = (lattice.category(), cert.h.as_ref().unwrap());
        for i in 0..lattice.len() {
            for bo in b.objects() {
                for x in q.elements() {
                    let found = c.hom(h.apply(i), cert.beta.get(bo, x));
                    prop_assert_eq!(found, vhom(&q, x, lattice.mate_map(i)[bo]));
                }
            }
        }
    }

    #[test]
    fn random_bifunctor_tables_pass_validation(seed in any::<u64>(), qi in 0usize..2) {
        let mut r = rng(seed);
        let (_, q) = quantales()[qi].clone();
        let (a, b) = (random_category(&mut r, &q, 2), random_category(&mut r, &q, 2));
        let v = VCategory::of_quantale(&q);
        let values: Vec<Vec<usize>> = (0..2).map(|_| (0..2).map(|_| r.gen_range(0..q.len())).collect()).collect();
        let bifunctorial = a.objects().all(|x| a.objects().all(|x2| b.objects().all(|y| b.objects().all(|y2| {
            // A(x2,x) ⊗ B(y,y2) ≤ V(φ(x,y), φ(x2,y2))
            q.leq(q.tensor(a.hom(x2, x), b.hom(y, y2)), residuum(&q, values[x][y], values[x2][y2]))
        }))));
        prop_assert_eq!(BifunctorTable::new(a, b, v, values).is_ok(), bifunctorial);
    }
}

#[test]
fn induced_operators_are_adjoint_on_every_small_boolean_table() {
    let q = Quantale::boolean();
    let t = TwoVarAdjunction::of_quantale(&q);
    let v = VCategory::of_quantale(&q);
    for a in all_small_categories(&q, 2) {
        for b in all_small_categories(&q, 2) {
            for table in all_tables(&a, &b, &v) {
                for kind in Kind::ALL {
                    let adj = InducedAdjunction::new(&t, kind, &table, Budget::default()).unwrap();
                    assert!(adj.adjointness_witness().is_none(), "{kind} on {:?}", table.table());
                }
            }
        }
    }
}

#[test]
fn formal_balls_are_saturated_sums() {
    let q = Quantale::lawvere(4).unwrap();
    let d = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]];
    let a = VCategory::new(q.clone(), names("p", 3), d.clone()).unwrap();
    let x = CompleteCategory::of_quantale(&q);
    let space = functor_category(&a.dual(), x.category(), Budget::default()).unwrap();
    let value = |e: Elem| q.label(e).parse::<usize>().unwrap_or(usize::MAX);
    for c in a.objects() {
        for r in q.elements() {
            let ball = space.map(iota(&space, &x, c, r).unwrap());
            for b in a.objects() {
                let sum = d[b][c].saturating_add(value(r));
                assert_eq!(value(ball[b]), if sum < 4 { sum } else { usize::MAX });
            }
        }
    }
}
