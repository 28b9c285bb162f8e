//! Exact normal-form arithmetic for free groups, free products of cyclic
//! groups and finite direct products of those.
//!
//! Elements of free products are stored as reduced syllable lists
//! `g_{i_1}^{e_1} ... g_{i_m}^{e_m}` with `i_j != i_{j+1}` and every exponent
//! nonzero (and, for finite cyclic factors, in the symmetric residue range).
//! Direct-product elements are tuples of factor elements.

mod ball;
mod element;
mod exponent;
mod parse;

pub use ball::{bfs_ball, ProductLength, Pseudolength, WordLength, DEFAULT_BALL_CAP};
pub use element::{GroupElement, Syllable};
pub use exponent::Exponent;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group description: {0}")]
    InvalidDescription(String),
    #[error("element does not belong to the group: {0}")]
    Mismatch(String),
    #[error("cannot parse word `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("balls of this pseudolength are infinite ({0})")]
    NonLocallyFinite(String),
    #[error("ball enumeration exceeded the cap of {0} elements")]
    BallTooLarge(usize),
}

/// Order of a cyclic free factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicFactor {
    pub name: String,
    pub order: Order,
}

impl CyclicFactor {
    pub fn new(name: impl Into<String>, order: Order) -> Self {
        CyclicFactor {
            name: name.into(),
            order,
        }
    }
}

/// One of the model groups everything else runs on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupDescription {
    /// Free group on the named generators.
    Free { generators: Vec<String> },
    /// Free product of cyclic groups `<g_1> * ... * <g_k>`.
    FreeProduct { factors: Vec<CyclicFactor> },
    /// Direct product `G_1 x ... x G_r`, `r >= 2`.
    Direct { factors: Vec<GroupDescription> },
}

fn default_names(rank: usize) -> Vec<String> {
    const SMALL: [&str; 3] = ["x", "y", "z"];
    if rank <= SMALL.len() {
        SMALL[..rank].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=rank).map(|i| format!("x{i}")).collect()
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "e"
}

impl GroupDescription {
    /// Free group of the given rank with default generator names
    /// (`x, y, z`, then `x1, x2, ...`).
    pub fn free(rank: usize) -> Result<Self, GroupError> {
        Self::free_named(default_names(rank))
    }

    pub fn free_named<S: Into<String>>(
        generators: impl IntoIterator<Item = S>,
    ) -> Result<Self, GroupError> {
        let g = GroupDescription::Free {
            generators: generators.into_iter().map(Into::into).collect(),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn free_product(factors: Vec<CyclicFactor>) -> Result<Self, GroupError> {
        let g = GroupDescription::FreeProduct { factors };
        g.validate()?;
        Ok(g)
    }

    pub fn direct(factors: Vec<GroupDescription>) -> Result<Self, GroupError> {
        let g = GroupDescription::Direct { factors };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let bad = |m: String| Err(GroupError::InvalidDescription(m));
        match self {
            GroupDescription::Free { generators } => {
                if generators.is_empty() {
                    return bad("free group rank must be at least 1".into());
                }
                check_names(generators.iter().map(String::as_str))
            }
            GroupDescription::FreeProduct { factors } => {
                if factors.is_empty() {
                    return bad("free product needs at least one factor".into());
                }
                for f in factors {
                    if let Order::Finite(m) = f.order {
                        if m < 2 {
                            return bad(format!("cyclic order of `{}` must be >= 2", f.name));
                        }
                    }
                }
                check_names(factors.iter().map(|f| f.name.as_str()))
            }
            GroupDescription::Direct { factors } => {
                if factors.len() < 2 {
                    return bad("direct product needs at least two factors".into());
                }
                factors.iter().try_for_each(GroupDescription::validate)
            }
        }
    }

    /// Whether elements are syllable words (free group or free product).
    pub fn is_word_kind(&self) -> bool {
        !matches!(self, GroupDescription::Direct { .. })
    }

    /// Cyclic factors of a free group / free product (`None` for direct products).
    pub fn cyclic_factors(&self) -> Option<Vec<CyclicFactor>> {
        match self {
            GroupDescription::Free { generators } => Some(
                generators
                    .iter()
                    .map(|n| CyclicFactor::new(n.clone(), Order::Infinite))
                    .collect(),
            ),
            GroupDescription::FreeProduct { factors } => Some(factors.clone()),
            GroupDescription::Direct { .. } => None,
        }
    }

    pub fn num_factors(&self) -> usize {
        match self {
            GroupDescription::Free { generators } => generators.len(),
            GroupDescription::FreeProduct { factors } => factors.len(),
            GroupDescription::Direct { factors } => factors.len(),
        }
    }

    pub fn direct_factors(&self) -> Option<&[GroupDescription]> {
        match self {
            GroupDescription::Direct { factors } => Some(factors),
            _ => None,
        }
    }

    pub fn factor_name(&self, i: usize) -> &str {
        match self {
            GroupDescription::Free { generators } => &generators[i],
            GroupDescription::FreeProduct { factors } => &factors[i].name,
            GroupDescription::Direct { .. } => {
                panic!("direct products have no named cyclic factors")
            }
        }
    }

    pub fn factor_order(&self, i: usize) -> Order {
        match self {
            GroupDescription::Free { .. } => Order::Infinite,
            GroupDescription::FreeProduct { factors } => factors[i].order,
            GroupDescription::Direct { .. } => {
                panic!("direct products have no cyclic factor orders")
            }
        }
    }

    pub fn factor_index(&self, name: &str) -> Option<usize> {
        match self {
            GroupDescription::Free { generators } => generators.iter().position(|g| g == name),
            GroupDescription::FreeProduct { factors } => {
                factors.iter().position(|f| f.name == name)
            }
            GroupDescription::Direct { .. } => None,
        }
    }

    /// Whether every cyclic factor (recursively) is infinite.
    pub fn is_torsion_free(&self) -> bool {
        match self {
            GroupDescription::Free { .. } => true,
            GroupDescription::FreeProduct { factors } => {
                factors.iter().all(|f| f.order.is_infinite())
            }
            GroupDescription::Direct { factors } => factors.iter().all(|f| f.is_torsion_free()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupDescription::Direct { factors } => {
                GroupElement::Tuple(factors.iter().map(|f| f.identity()).collect())
            }
            _ => GroupElement::Word(Vec::new()),
        }
    }

    /// The `i`-th cyclic generator `g_i` of a free product.
    pub fn generator(&self, i: usize) -> GroupElement {
        assert!(self.is_word_kind() && i < self.num_factors());
        GroupElement::Word(vec![Syllable::new(i, 1)])
    }

    /// `g_i^e` in normal form.
    pub fn syllable_power(&self, i: usize, e: impl Into<Exponent>) -> GroupElement {
        let e = self.normalize_exp(i, e.into());
        if e.is_zero() {
            GroupElement::Word(Vec::new())
        } else {
            GroupElement::Word(vec![Syllable { factor: i, exp: e }])
        }
    }

    /// Embeds an element of direct factor `i` (identity elsewhere).
    pub fn embed(&self, i: usize, g: GroupElement) -> GroupElement {
        let factors = self
            .direct_factors()
            .expect("embed requires a direct product");
        GroupElement::Tuple(
            factors
                .iter()
                .enumerate()
                .map(|(j, f)| if j == i { g.clone() } else { f.identity() })
                .collect(),
        )
    }

    fn normalize_exp(&self, factor: usize, e: Exponent) -> Exponent {
        match self.factor_order(factor) {
            Order::Infinite => e,
            Order::Finite(m) => e.reduce_mod(m),
        }
    }

    /// Normal form of `gh`. Both arguments must belong to this group.
    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        match (self, g, h) {
            (
                GroupDescription::Direct { factors },
                GroupElement::Tuple(a),
                GroupElement::Tuple(b),
            ) => GroupElement::Tuple(
                factors
                    .iter()
                    .zip(a.iter().zip(b))
                    .map(|(f, (x, y))| f.mul(x, y))
                    .collect(),
            ),
            (_, GroupElement::Word(a), GroupElement::Word(b)) => {
                GroupElement::Word(self.mul_words(a, b))
            }
            _ => panic!("mul: element kinds do not match the group description"),
        }
    }

    fn mul_words(&self, a: &[Syllable], b: &[Syllable]) -> Vec<Syllable> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        out.extend_from_slice(a);
        let mut j = 0;
        while j < b.len() {
            let Some(last) = out.last_mut() else { break };
            if last.factor != b[j].factor {
                break;
            }
            let e = self.normalize_exp(last.factor, last.exp.add(&b[j].exp));
            j += 1;
            if e.is_zero() {
                out.pop();
            } else {
                last.exp = e;
                break;
            }
        }
        out.extend_from_slice(&b[j..]);
        out
    }

    /// Checked multiplication.
    pub fn try_mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    pub fn inv(&self, g: &GroupElement) -> GroupElement {
        match (self, g) {
            (GroupDescription::Direct { factors }, GroupElement::Tuple(xs)) => {
                GroupElement::Tuple(factors.iter().zip(xs).map(|(f, x)| f.inv(x)).collect())
            }
            (_, GroupElement::Word(s)) => GroupElement::Word(
                s.iter()
                    .rev()
                    .map(|syl| Syllable {
                        factor: syl.factor,
                        exp: self.normalize_exp(syl.factor, syl.exp.neg()),
                    })
                    .collect(),
            ),
            _ => panic!("inv: element kind does not match the group description"),
        }
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: &GroupElement, k: i64) -> GroupElement {
        let base = if k < 0 { self.inv(g) } else { g.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// `x^{-1} y`.
    pub fn left_quotient(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.mul(&self.inv(x), y)
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items
            .into_iter()
            .fold(self.identity(), |acc, g| self.mul(&acc, g))
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        g.is_identity()
    }

    /// Validates that `g` is a normal-form element of this group.
    pub fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::Mismatch(format!("{g:?}")))
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (GroupDescription::Direct { factors }, GroupElement::Tuple(xs)) => {
                xs.len() == factors.len() && factors.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            (GroupDescription::Direct { .. }, _) | (_, GroupElement::Tuple(_)) => false,
            (_, GroupElement::Word(s)) => {
                let k = self.num_factors();
                s.iter().all(|syl| {
                    syl.factor < k
                        && !syl.exp.is_zero()
                        && self.normalize_exp(syl.factor, syl.exp.clone()) == syl.exp
                }) && s.windows(2).all(|w| w[0].factor != w[1].factor)
            }
        }
    }

    /// Builds an element from a list of `(factor, exponent)` letters,
    /// reducing as it goes.
    pub fn from_letters(&self, letters: &[(usize, i64)]) -> GroupElement {
        letters.iter().fold(self.identity(), |acc, &(i, e)| {
            self.mul(&acc, &self.syllable_power(i, e))
        })
    }

    /// The standard symmetric generating set (generators of every cyclic
    /// factor and their inverses, embedded factor-wise for direct products).
    pub fn standard_generators(&self) -> Vec<GroupElement> {
        let mut out = Vec::new();
        match self {
            GroupDescription::Direct { factors } => {
                for (i, f) in factors.iter().enumerate() {
                    for g in f.standard_generators() {
                        out.push(self.embed(i, g));
                    }
                }
            }
            _ => {
                for i in 0..self.num_factors() {
                    let g = self.generator(i);
                    let gi = self.inv(&g);
                    out.push(g.clone());
                    if gi != g {
                        out.push(gi);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Word length with respect to [`standard_generators`](Self::standard_generators).
    /// Saturates at `u64::MAX`.
    pub fn std_length(&self, g: &GroupElement) -> u64 {
        match (self, g) {
            (GroupDescription::Direct { factors }, GroupElement::Tuple(xs)) => factors
                .iter()
                .zip(xs)
                .fold(0u64, |acc, (f, x)| acc.saturating_add(f.std_length(x))),
            (_, GroupElement::Word(s)) => s.iter().fold(0u64, |acc, syl| {
                acc.saturating_add(syl.exp.abs_u64().unwrap_or(u64::MAX))
            }),
            _ => panic!("std_length: element kind does not match the group description"),
        }
    }

    /// Uniform-ish random normal form with at most `max_syllables` syllables
    /// per word factor and exponents bounded by `max_exp` in absolute value.
    pub fn random_element<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        max_syllables: usize,
        max_exp: u64,
    ) -> GroupElement {
        match self {
            GroupDescription::Direct { factors } => GroupElement::Tuple(
                factors
                    .iter()
                    .map(|f| f.random_element(rng, max_syllables, max_exp))
                    .collect(),
            ),
            _ => {
                let k = self.num_factors();
                let len = rng.random_range(0..=max_syllables);
                let mut out: Vec<Syllable> = Vec::with_capacity(len);
                let max_exp = max_exp.max(1) as i64;
                while out.len() < len {
                    let factor = rng.random_range(0..k);
                    if out.last().is_some_and(|s| s.factor == factor) {
                        if k == 1 {
                            break;
                        }
                        continue;
                    }
                    let mag = rng.random_range(1..=max_exp);
                    let e = if rng.random_bool(0.5) { mag } else { -mag };
                    let e = self.normalize_exp(factor, Exponent::Small(e));
                    if !e.is_zero() {
                        out.push(Syllable { factor, exp: e });
                    }
                }
                GroupElement::Word(out)
            }
        }
    }

    /// Human-readable word, e.g. `x b^3 x^-1`; `1` for the identity and
    /// `(w1, w2)` for direct products.
    pub fn format(&self, g: &GroupElement) -> String {
        let mut s = String::new();
        self.write_element(&mut s, g);
        s
    }

    fn write_element(&self, out: &mut String, g: &GroupElement) {
        match (self, g) {
            (GroupDescription::Direct { factors }, GroupElement::Tuple(xs)) => {
                out.push('(');
                for (i, (f, x)) in factors.iter().zip(xs).enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    f.write_element(out, x);
                }
                out.push(')');
            }
            (_, GroupElement::Word(syls)) => {
                if syls.is_empty() {
                    out.push('1');
                }
                for (i, syl) in syls.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    out.push_str(self.factor_name(syl.factor));
                    if syl.exp != Exponent::ONE {
                        out.push('^');
                        out.push_str(&syl.exp.to_string());
                    }
                }
            }
            _ => out.push_str("<mismatched element>"),
        }
    }

    pub fn parse(&self, input: &str) -> Result<GroupElement, GroupError> {
        parse::parse_element(self, input)
    }
}

fn check_names<'a>(names: impl Iterator<Item = &'a str>) -> Result<(), GroupError> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !valid_name(n) {
            return Err(GroupError::InvalidDescription(format!(
                "generator name `{n}` must be an identifier other than `e`"
            )));
        }
        if !seen.insert(n) {
            return Err(GroupError::InvalidDescription(format!(
                "duplicate generator name `{n}`"
            )));
        }
    }
    Ok(())
}

impl fmt::Display for GroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescription::Free { generators } => write!(f, "F({})", generators.join(",")),
            GroupDescription::FreeProduct { factors } => {
                let parts: Vec<String> = factors
                    .iter()
                    .map(|c| match c.order {
                        Order::Infinite => format!("<{}>", c.name),
                        Order::Finite(m) => format!("<{}|{}^{}>", c.name, c.name, m),
                    })
                    .collect();
                f.write_str(&parts.join(" * "))
            }
            GroupDescription::Direct { factors } => {
                let parts: Vec<String> = factors.iter().map(|g| format!("({g})")).collect();
                f.write_str(&parts.join(" x "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fxb() -> GroupDescription {
        GroupDescription::free_named(["x", "b"]).unwrap()
    }

    fn z2() -> GroupDescription {
        GroupDescription::direct(vec![
            GroupDescription::free_named(["u"]).unwrap(),
            GroupDescription::free_named(["v"]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn identities() {
        assert_eq!(
            GroupDescription::free(2).unwrap().identity(),
            GroupElement::Word(vec![])
        );
        let g = z2();
        assert_eq!(g.format(&g.identity()), "(1, 1)");
        let fp = GroupDescription::free_product(vec![
            CyclicFactor::new("a", Order::Infinite),
            CyclicFactor::new("c", Order::Finite(3)),
        ])
        .unwrap();
        assert!(fp.identity().is_identity());
    }

    #[test]
    fn multiply_examples() {
        let g = fxb();
        let x = g.parse("x").unwrap();
        assert!(g.mul(&x, &g.inv(&x)).is_identity());
        let a = g.parse("x b^2").unwrap();
        let b = g.parse("b^-2 x").unwrap();
        assert_eq!(g.format(&g.mul(&a, &b)), "x^2");

        let z = z2();
        let p = z.parse("(u, v^2)").unwrap();
        let q = z.parse("(u^3, v^-1)").unwrap();
        assert_eq!(z.format(&z.mul(&p, &q)), "(u^4, v)");
    }

    #[test]
    fn invert_examples() {
        let g = fxb();
        assert_eq!(g.format(&g.inv(&g.parse("x b^3").unwrap())), "b^-3 x^-1");
        let z = z2();
        assert_eq!(
            z.format(&z.inv(&z.parse("(u^2, v^-5)").unwrap())),
            "(u^-2, v^5)"
        );
        assert!(g.inv(&g.identity()).is_identity());
    }

    #[test]
    fn finite_factor_reduction() {
        let g = GroupDescription::free_product(vec![
            CyclicFactor::new("b", Order::Infinite),
            CyclicFactor::new("c", Order::Finite(3)),
        ])
        .unwrap();
        let c = g.generator(1);
        assert_eq!(g.format(&g.mul(&c, &c)), "c^-1");
        assert!(g.pow(&c, 3).is_identity());
        assert!(g.contains(&g.parse("b c^-1 b").unwrap()));
        assert!(!g.contains(&GroupElement::Word(vec![Syllable::new(1, 2)])));
    }

    #[test]
    fn rejects_bad_descriptions() {
        assert!(GroupDescription::free(0).is_err());
        assert!(
            GroupDescription::free_product(vec![CyclicFactor::new("c", Order::Finite(1))]).is_err()
        );
        assert!(GroupDescription::direct(vec![GroupDescription::free(1).unwrap()]).is_err());
        assert!(GroupDescription::free_named(["x", "x"]).is_err());
    }

    #[test]
    fn try_mul_rejects_foreign_elements() {
        let g = fxb();
        let z = z2();
        assert!(g.try_mul(&g.identity(), &z.identity()).is_err());
        let bad = GroupElement::Word(vec![Syllable::new(0, 1), Syllable::new(0, 1)]);
        assert!(g.try_mul(&bad, &g.identity()).is_err());
    }

    #[test]
    fn standard_generators_are_symmetric() {
        let g = GroupDescription::free_product(vec![
            CyclicFactor::new("b", Order::Infinite),
            CyclicFactor::new("t", Order::Finite(2)),
        ])
        .unwrap();
        let gens = g.standard_generators();
        assert_eq!(gens.len(), 3);
        for s in &gens {
            assert!(gens.contains(&g.inv(s)));
        }
        assert_eq!(z2().standard_generators().len(), 4);
    }
}
