//! Closed-form relative lengths and `d̂` against breadth-first search.

use gcomb_core::group::{CyclicFactor, GroupDescription, Order};
use gcomb_core::relative::{GeneratingAlphabet, RelativeDistance, SearchOutcome};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bx() -> GeneratingAlphabet {
    let g = GroupDescription::free_product(vec![
        CyclicFactor::new("b", Order::Infinite),
        CyclicFactor::new("x", Order::Infinite),
    ])
    .unwrap();
    GeneratingAlphabet::relative_named(g, "b").unwrap()
}

fn z2() -> GeneratingAlphabet {
    let g = GroupDescription::direct(vec![
        GroupDescription::free_named(["b"]).unwrap(),
        GroupDescription::free_named(["x"]).unwrap(),
    ])
    .unwrap();
    GeneratingAlphabet::relative(g, 0).unwrap()
}

#[test]
fn z2_dhat_is_three_by_bfs() {
    let a = z2();
    let g = a.group().clone();
    let h = |i: i64| g.parse(&format!("(b^{i}, 1)")).unwrap();
    for d in (-40..=40).filter(|&d| d != 0) {
        let bfs = a.dhat_bfs(&g.identity(), &h(d), 5, 40);
        assert_eq!(bfs, RelativeDistance::Finite(3), "d = {d}");
    }
    for i in -20..=20 {
        for j in -20..=20 {
            let expect = if i == j {
                RelativeDistance::Finite(0)
            } else {
                RelativeDistance::Finite(3)
            };
            assert_eq!(a.dhat(&h(i), &h(j), 30), expect);
        }
    }
}

#[test]
fn free_product_dhat_exceeds_every_searched_bound() {
    let a = bx();
    let g = a.group().clone();
    for k in 1..=5 {
        let h = g.parse(&format!("b^{k}")).unwrap();
        assert_eq!(a.dhat(&g.identity(), &h, 30), RelativeDistance::Exceeds(30));
        assert_eq!(
            a.dhat_bfs(&g.identity(), &h, 6, 3),
            RelativeDistance::Exceeds(6)
        );
    }
    let outside = g.parse("x").unwrap();
    assert_eq!(
        a.dhat(&g.identity(), &outside, 30),
        RelativeDistance::Infinite
    );
}

fn bfs_length(a: &GeneratingAlphabet, g: &gcomb_core::GroupElement, h_cap: u64) -> u64 {
    match a.shortest_path(&a.group().identity(), g, 12, h_cap, false) {
        SearchOutcome::Found(p) => p.len() as u64,
        SearchOutcome::NotWithin(b) => panic!("not within {b}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_product_length_is_graph_distance(seed in any::<u64>()) {
        let a = bx();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = a.group().random_element(&mut rng, 4, 2);
        prop_assert_eq!(a.length(&g), bfs_length(&a, &g, 2));
        let path = a.canonical_geodesic(&g);
        prop_assert_eq!(path.len() as u64, a.length(&g));
        prop_assert_eq!(path.end(&a), g);
    }

    #[test]
    fn direct_product_length_is_graph_distance(i in -6i64..=6, j in -3i64..=3) {
        let a = z2();
        let g = a.group().parse(&format!("(b^{i}, x^{j})")).unwrap();
        prop_assert_eq!(a.length(&g), bfs_length(&a, &g, 6));
        prop_assert_eq!(a.length(&g), u64::from(i != 0) + j.unsigned_abs());
    }
}
