//! Fixtures shared by the benchmarks.

use gcomb_core::algebra::AlgebraElement;
use gcomb_core::group::{CyclicFactor, GroupDescription, Order};
use gcomb_core::{GeneratingAlphabet, NeighbourhoodCombing, NeighbourhoodOptions};
use num_bigint::BigInt;

/// `<b> * <x>`.
pub fn bx_group() -> GroupDescription {
    GroupDescription::free_product(vec![
        CyclicFactor::new("b", Order::Infinite),
        CyclicFactor::new("x", Order::Infinite),
    ])
    .expect("valid factors")
}

/// The neighbourhood combing with `H = <b>`, `F = {x, x^-1}`, `C = 0`.
pub fn reference_combing() -> NeighbourhoodCombing {
    let g = bx_group();
    let a = GeneratingAlphabet::relative_named(g.clone(), "b").expect("b is a factor");
    let f = [g.parse("x").expect("word"), g.parse("x^-1").expect("word")];
    NeighbourhoodCombing::build(a, &f, 0, None, NeighbourhoodOptions::default())
        .expect("reference instance")
}

/// `δ_{bx} + δ_{bx^-1}`.
pub fn reference_element() -> AlgebraElement<BigInt> {
    let g = bx_group();
    AlgebraElement::from_terms(
        ["b x", "b x^-1"].map(|w| (g.parse(w).expect("word"), BigInt::from(1))),
    )
}

/// Sum of the generators of `F_2` and their inverses.
pub fn kesten_element(g: &GroupDescription) -> AlgebraElement<BigInt> {
    AlgebraElement::from_terms(
        ["x", "x^-1", "y", "y^-1"].map(|w| (g.parse(w).expect("word"), BigInt::from(1))),
    )
}
