//! Combing axioms and the combinatorics of the designated semigroup.

use std::collections::BTreeSet;

use gcomb_core::combing::{
    audit_combing, empirical_growth, triple_witness, verify_free_semigroup, AuditConfig, Combing,
    CombingError, FreeSemigroupOutcome, GeodesicCombing, NeighbourhoodCombing,
    NeighbourhoodOptions, ProductCombing,
};
use gcomb_core::group::{
    CyclicFactor, GroupDescription, GroupElement, Order, Pseudolength, WordLength,
};
use gcomb_core::relative::{h_components, GeneratingAlphabet, SearchOutcome};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bx_group() -> GroupDescription {
    GroupDescription::free_product(vec![
        CyclicFactor::new("b", Order::Infinite),
        CyclicFactor::new("x", Order::Infinite),
    ])
    .unwrap()
}

fn reference() -> NeighbourhoodCombing {
    let g = bx_group();
    let a = GeneratingAlphabet::relative_named(g.clone(), "b").unwrap();
    let f = [g.parse("x").unwrap(), g.parse("x^-1").unwrap()];
    NeighbourhoodCombing::build(a, &f, 0, None, NeighbourhoodOptions::default()).unwrap()
}

/// All `t f_1 ... t f_n`, `n <= max_pairs`, grouped by `n`, by brute force
/// over index sequences.
fn semigroup_by_pairs(c: &NeighbourhoodCombing, max_pairs: usize) -> Vec<Vec<GroupElement>> {
    let g = c.group();
    let mut layers = vec![vec![g.identity()]];
    for _ in 0..max_pairs {
        let next = layers
            .last()
            .unwrap()
            .iter()
            .flat_map(|w| c.f().iter().map(move |f| g.product([w, c.t(), f])))
            .collect();
        layers.push(next);
    }
    layers
}

#[test]
fn reference_instance_constants() {
    let c = reference();
    let g = c.group();
    assert_eq!(g.format(c.t()), "b");
    let omega: Vec<String> = c.omega().iter().map(|w| g.format(w)).collect();
    let expect: BTreeSet<&str> = ["1", "b", "b^-1", "x", "x^-1"].into();
    assert_eq!(
        omega.iter().map(String::as_str).collect::<BTreeSet<_>>(),
        expect
    );
    assert_eq!(c.omega_squared().len(), 17);
    assert_eq!(c.m(), 2);
    let cert = c.certified().unwrap();
    assert_eq!(cert.gamma(3), 300);
    assert_eq!(cert.rho(10), 12);
}

#[test]
fn canonical_paths_in_semigroup() {
    let c = reference();
    let a = c.alphabet();
    for (n, layer) in semigroup_by_pairs(&c, 6).iter().enumerate() {
        assert_eq!(layer.iter().collect::<BTreeSet<_>>().len(), layer.len());
        for s in layer {
            assert_eq!(a.length(s), 2 * n as u64);
            let path = a.canonical_geodesic(s);
            let comps = h_components(a, &path);
            assert_eq!(comps.len(), n);
            assert!(comps.iter().all(|k| k.isolated));
            assert!(c.semigroup_member(s));
        }
    }
    // Graph distance for the short ones.
    for (n, layer) in semigroup_by_pairs(&c, 3).iter().enumerate() {
        for s in layer {
            match a.shortest_path(&c.group().identity(), s, 2 * n as u64, 2, false) {
                SearchOutcome::Found(p) => assert_eq!(p.len(), 2 * n),
                SearchOutcome::NotWithin(b) => panic!("{b}"),
            }
        }
    }
}

#[test]
fn triple_intersection_on_semigroup() {
    let c = reference();
    let g = c.group();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sample: Vec<GroupElement> = (0..200).map(|_| g.random_element(&mut rng, 6, 3)).collect();
    for s in semigroup_by_pairs(&c, 4).concat() {
        for x in &sample {
            let w = triple_witness(&c, &s, x).expect("nonempty triple intersection");
            assert!(c.eval(&g.identity(), &s).contains(&w));
            assert!(c.eval(&s, x).contains(&w));
            assert!(c.eval(&g.identity(), x).contains(&w));
        }
    }
    assert_eq!(
        triple_witness(&c, &g.identity(), &sample[0]),
        Some(g.identity())
    );
}

#[test]
fn eval_example() {
    let c = reference();
    let g = c.group();
    let e = g.parse("b x").unwrap();
    let expect: BTreeSet<GroupElement> = ["1", "b", "b x"]
        .iter()
        .flat_map(|v| {
            let v = g.parse(v).unwrap();
            c.omega_squared()
                .iter()
                .map(move |w| g.mul(&v, w))
                .collect::<Vec<_>>()
        })
        .collect();
    assert_eq!(c.eval_from_identity(&e), expect);
}

#[test]
fn geodesic_growth_is_exact_on_f2() {
    let g = GroupDescription::free(2).unwrap();
    let c = GeodesicCombing::standard(g.clone()).unwrap();
    let ball = WordLength::new(g).ball(8).unwrap();
    for n in 0..=6 {
        let obs = empirical_growth(&c, n, &ball);
        assert_eq!(obs.gamma_observed, n + 1);
        assert_eq!(obs.rho_observed, Some(n));
        assert!(obs.dominated());
    }
}

#[test]
fn neighbourhood_growth_dominated() {
    let c = reference();
    let g = c.group();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut sample: Vec<GroupElement> = (0..1000)
        .map(|_| g.random_element(&mut rng, 6, 3))
        .collect();
    sample.push(g.identity());
    for n in 0..=8 {
        let obs = empirical_growth(&c, n, &sample);
        assert!(obs.dominated(), "{obs:?}");
    }
    let one = empirical_growth(&c, 4, &[g.identity()]);
    let len = c.pseudolength();
    assert_eq!(
        one.gamma_observed as usize,
        c.omega_squared()
            .iter()
            .filter(|w| len.length(w) <= 4)
            .count()
    );
}

#[test]
fn class_c_polynomial() {
    let cert = reference().certified().unwrap();
    let p = cert.gamma_rho_poly();
    assert!(p.degree() <= 1);
    for n in 0..200 {
        assert!(cert.gamma_rho(n) <= p.eval(n));
    }
}

#[test]
fn product_of_reference_instances() {
    let c = ProductCombing::new(vec![Box::new(reference()), Box::new(reference())]).unwrap();
    let cfg = AuditConfig {
        seed: 1,
        pairs: 200,
        triple_samples: 20,
        s_max_len: 2,
        growth_samples: 100,
        n_max: 6,
        max_syllables: 4,
        max_exp: 2,
        free_semigroup_len: 4,
        ..AuditConfig::default()
    };
    let r = audit_combing(&c, &cfg);
    assert!(r.passed(), "{:?}", r.violations);
    assert!(r.s_exhaustive);
    assert_eq!(
        r.free_semigroup,
        Some(FreeSemigroupOutcome::Ok {
            words: 4 + 16 + 64 + 256
        })
    );
    let cert = c.certified().unwrap();
    let single = reference().certified().unwrap();
    for n in 0..20 {
        assert_eq!(cert.gamma(n), single.gamma(n) * single.gamma(n));
        assert!(cert.rho(n) <= single.rho(n).max(single.rho(n)));
        assert!(cert.rho(n) <= cert.rho_product_form(n));
    }
}

#[test]
fn free_semigroup_reference() {
    let c = reference();
    let gens = c.f().to_vec();
    assert_eq!(
        verify_free_semigroup(c.group(), c.t(), &gens, 8, 1 << 20).unwrap(),
        FreeSemigroupOutcome::Ok { words: 510 }
    );
}

#[test]
fn z2_has_no_far_h_element() {
    let g = GroupDescription::direct(vec![
        GroupDescription::free_named(["b"]).unwrap(),
        GroupDescription::free_named(["x"]).unwrap(),
    ])
    .unwrap();
    let a = GeneratingAlphabet::relative(g.clone(), 0).unwrap();
    let x = g.parse("(1, x)").unwrap();
    let r = NeighbourhoodCombing::build(
        a,
        &[x.clone(), g.inv(&x)],
        1,
        None,
        NeighbourhoodOptions::default(),
    );
    assert!(matches!(
        r,
        Err(CombingError::NoSuitableT { threshold: 5, .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_and_equivariant(seed in any::<u64>()) {
        let c = reference();
        let g = c.group();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [x, y, h] = [0; 3].map(|_| g.random_element(&mut rng, 5, 3));
        prop_assert_eq!(c.eval(&x, &y), c.eval(&y, &x));
        let lhs = c.eval(&g.mul(&h, &x), &g.mul(&h, &y));
        let rhs: BTreeSet<GroupElement> = c.eval(&x, &y).iter().map(|v| g.mul(&h, v)).collect();
        prop_assert_eq!(lhs, rhs);
        let back: BTreeSet<GroupElement> = c.eval_from_identity(&g.inv(&x)).iter().map(|v| g.mul(&x, v)).collect();
        prop_assert_eq!(c.eval_from_identity(&x), back);
    }
}
