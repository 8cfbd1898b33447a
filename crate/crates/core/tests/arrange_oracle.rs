use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zome_core::arrange::{detect_crossings, strut_cost, Arranger, CrossingKind, PlacedStrut, ZomeCycle};
use zome_core::field::DistanceField;
use zome_core::golden::{Sign, SignedStrut, StrutCatalog, ZomePoint};

fn random_field(rng: &mut ChaCha8Rng) -> DistanceField {
    let values = (0..24 * 24).map(|_| rng.gen_range(-2.0..2.0)).collect();
    DistanceField::new(24, 24, 1.0, [-12.0, -12.0], values).unwrap()
}

fn random_multiset(rng: &mut ChaCha8Rng, cat: &StrutCatalog, max: usize) -> Vec<SignedStrut> {
    let all = cat.signed_struts();
    // draw from a handful of kinds so repeats occur
    let pool: Vec<SignedStrut> = (0..rng.gen_range(1..=4)).map(|_| all[rng.gen_range(0..all.len())]).collect();
    (0..rng.gen_range(1..=max)).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
}

/// Every permutation by Heap's algorithm; returns the minimum cost.
fn naive_min(arr: &Arranger, start: ZomePoint, items: &[SignedStrut]) -> f64 {
    let mut a = items.to_vec();
    let n = a.len();
    let cost = |o: &[SignedStrut]| arr.layout([0.0, 0.0], start, o).iter().map(|p| p.cost).sum::<f64>();
    let mut best = cost(&a);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            best = best.min(cost(&a));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

fn total(p: &[PlacedStrut]) -> f64 {
    p.iter().map(|s| s.cost).sum()
}

#[test]
fn exact_matches_naive_enumeration() {
    let cat = StrutCatalog::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for case in 0..100 {
        let field = random_field(&mut rng);
        let arr = Arranger::new(&field, &cat, 1.0);
        let ms = random_multiset(&mut rng, &cat, 8);
        let start = ZomePoint::new(rng.gen_range(-2..=2), 0, rng.gen_range(-2..=2), 0);
        let exact = arr.exact([0.0, 0.0], start, &ms).unwrap();
        let greedy = arr.greedy([0.0, 0.0], start, &ms);
        let oracle = naive_min(&arr, start, &ms);
        assert!((total(&exact) - oracle).abs() <= 1e-9, "case {case}: {} vs {oracle}", total(&exact));
        assert!(total(&greedy) >= total(&exact) - 1e-9, "case {case}");
    }
}

#[test]
fn single_strut_is_its_own_arrangement() {
    let cat = StrutCatalog::standard();
    let field = random_field(&mut ChaCha8Rng::seed_from_u64(1));
    let arr = Arranger::new(&field, &cat, 1.0);
    let s = SignedStrut { type_index: 4, column: 1, sign: Sign::Minus };
    let e = arr.exact([0.0, 0.0], ZomePoint::ORIGIN, &[s]).unwrap();
    let g = arr.greedy([0.0, 0.0], ZomePoint::ORIGIN, &[s]);
    assert_eq!(e, g);
    let end = cat.plane(&s);
    assert!((e[0].cost - strut_cost(&field, [0.0, 0.0], end)).abs() < 1e-15);
}

#[test]
fn two_struts_pick_cheaper_order() {
    let cat = StrutCatalog::standard();
    // cost grows to the right, so the vertical strut should go first
    let field = DistanceField::from_fn(40, 40, 0.5, [-10.0, -10.0], |x, _| x + 10.0).unwrap();
    let arr = Arranger::new(&field, &cat, 1.0);
    let right = SignedStrut { type_index: 0, column: 0, sign: Sign::Plus };
    let up = SignedStrut { type_index: 0, column: 1, sign: Sign::Plus };
    let e = arr.exact([0.0, 0.0], ZomePoint::ORIGIN, &[right, up]).unwrap();
    let a = total(&arr.layout([0.0, 0.0], ZomePoint::ORIGIN, &[right, up]));
    let b = total(&arr.layout([0.0, 0.0], ZomePoint::ORIGIN, &[up, right]));
    assert!(b < a);
    assert_eq!(e[0].strut, up);
    assert!((total(&e) - b).abs() < 1e-12);
}

#[test]
fn ties_follow_catalog_order() {
    let cat = StrutCatalog::standard();
    let field = DistanceField::new(4, 4, 1.0, [0.0, 0.0], vec![0.0; 16]).unwrap();
    let arr = Arranger::new(&field, &cat, 1.0);
    let a = SignedStrut { type_index: 2, column: 0, sign: Sign::Minus };
    let b = SignedStrut { type_index: 0, column: 1, sign: Sign::Plus };
    let e = arr.exact([0.0, 0.0], ZomePoint::ORIGIN, &[a, b]).unwrap();
    let g = arr.greedy([0.0, 0.0], ZomePoint::ORIGIN, &[a, b]);
    assert_eq!(e[0].strut, b);
    assert_eq!(g[0].strut, b);
}

#[test]
fn greedy_can_be_strictly_worse() {
    // search a fixed stream of small instances for a greedy miss
    let cat = StrutCatalog::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut found = None;
    for case in 0..500 {
        let field = random_field(&mut rng);
        let arr = Arranger::new(&field, &cat, 1.0);
        let all = cat.signed_struts();
        let ms: Vec<SignedStrut> = (0..3).map(|_| all[rng.gen_range(0..all.len())]).collect();
        let e = total(&arr.exact([0.0, 0.0], ZomePoint::ORIGIN, &ms).unwrap());
        let g = total(&arr.greedy([0.0, 0.0], ZomePoint::ORIGIN, &ms));
        if g > e + 1e-6 {
            found = Some((case, g, e));
            break;
        }
    }
    let (case, g, e) = found.expect("no 3-strut instance where greedy loses");
    assert!(g > e, "case {case}");
}

proptest! {
    #[test]
    fn every_order_ends_at_the_same_node(seed in 0u64..10_000, perm_seed in 0u64..1000) {
        let cat = StrutCatalog::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = random_field(&mut rng);
        let arr = Arranger::new(&field, &cat, 1.0);
        let ms = random_multiset(&mut rng, &cat, 10);
        let mut shuffled = ms.clone();
        let mut prng = ChaCha8Rng::seed_from_u64(perm_seed);
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, prng.gen_range(0..=i));
        }
        let sum = |o: &[SignedStrut]| o.iter().fold(ZomePoint::ORIGIN, |p, s| p.checked_add(&cat.lifted(s)).unwrap());
        prop_assert_eq!(sum(&ms), sum(&shuffled));
        let a = arr.layout([0.0, 0.0], ZomePoint::ORIGIN, &ms);
        let b = arr.exact([0.0, 0.0], ZomePoint::ORIGIN, &shuffled).unwrap();
        let ea = a.last().unwrap().end;
        let eb = b.last().unwrap().end;
        prop_assert!((ea[0] - eb[0]).abs() < 1e-9 && (ea[1] - eb[1]).abs() < 1e-9);
        for p in &b {
            let v = cat.plane(&p.strut);
            prop_assert!((p.end[0] - p.start[0] - v[0]).abs() < 1e-9);
            prop_assert!((p.end[1] - p.start[1] - v[1]).abs() < 1e-9);
        }
    }
}

fn cycle_of(points: &[[f64; 2]]) -> ZomeCycle {
    let s = SignedStrut { type_index: 0, column: 0, sign: Sign::Plus };
    let seg = (0..points.len())
        .map(|i| PlacedStrut { strut: s, start: points[i], end: points[(i + 1) % points.len()], cost: 0.0 })
        .collect();
    ZomeCycle { shift: [0.0, 0.0], segments: vec![seg], total_cost: 0.0 }
}

#[test]
fn convex_square_has_no_crossings() {
    let c = cycle_of(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
    assert!(detect_crossings(&c).is_empty());
}

#[test]
fn bowtie_has_one_crossing() {
    let c = cycle_of(&[[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]]);
    let x = detect_crossings(&c);
    assert_eq!(x.len(), 1);
    assert_eq!(x[0].kind, CrossingKind::Struts);
    assert_eq!((x[0].first, x[0].second), ((0, 0), (0, 2)));
}

#[test]
fn figure_eight_is_flagged() {
    // two loops sharing the middle node
    let c = cycle_of(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 0.0], [-1.0, 0.0], [-1.0, -1.0]]);
    let x = detect_crossings(&c);
    assert!(x.iter().any(|c| c.kind == CrossingKind::DoubleNode));
    let c = cycle_of(&[[0.0, 0.0], [2.0, 2.0], [2.0, 0.0], [0.0, 2.0], [-2.0, 2.0], [-2.0, 0.0]]);
    assert!(!detect_crossings(&c).is_empty());
}
