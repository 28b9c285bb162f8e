use std::collections::BTreeSet;

use rand::{Rng, RngCore};
use serde::Serialize;

use super::{CertifiedGrowth, Combing, CombingError, ElementSet};
use crate::group::{GroupDescription, GroupElement, Pseudolength};
use crate::relative::{AlphabetLength, GeneratingAlphabet, RelativeDistance};

/// Enumeration bounds for the conditions that quantify over all of `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NeighbourhoodOptions {
    /// `H`-elements of standard length up to this bound are searched for
    /// `t`, tested for `F H F^-1 ∩ H = {1}` and collected into `Ω`.
    pub h_enumeration: u64,
}

impl Default for NeighbourhoodOptions {
    fn default() -> Self {
        NeighbourhoodOptions { h_enumeration: 64 }
    }
}

/// How the universally quantified hypotheses were established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub h_enumeration: u64,
    /// For a cyclic free factor `H` and `F ⊆ X` both conditions also follow
    /// from normal forms, and the enumeration was checked to agree.
    pub analytic: bool,
    pub t_dhat: RelativeDistance,
}

/// `C(1, g) = V(γ_g ∪ g γ_{g^-1}) · Ω · Ω` over `A = X ⊔ H`, where `γ_g` is
/// the canonical geodesic from `1` to `g`.
#[derive(Clone, Debug)]
pub struct NeighbourhoodCombing {
    alphabet: GeneratingAlphabet,
    length: AlphabetLength,
    f: Vec<GroupElement>,
    t: GroupElement,
    c_const: u64,
    omega: Vec<GroupElement>,
    omega2: Vec<GroupElement>,
    m: u64,
    certificate: Certificate,
}

impl NeighbourhoodCombing {
    pub fn build(
        alphabet: GeneratingAlphabet,
        f: &[GroupElement],
        c_const: u64,
        t_override: Option<GroupElement>,
        options: NeighbourhoodOptions,
    ) -> Result<Self, CombingError> {
        let group = alphabet.group().clone();
        if !alphabet.has_h() {
            return Err(CombingError::Unsupported("the alphabet has no H".into()));
        }
        let f: Vec<GroupElement> = f
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if f.is_empty() {
            return Err(CombingError::EmptyF);
        }
        if f.iter().any(GroupElement::is_identity) {
            return Err(CombingError::IdentityInF);
        }
        if let Some(bad) = f.iter().find(|x| alphabet.in_h(x)) {
            return Err(CombingError::DisjointnessViolation(group.format(bad)));
        }
        if let Some(bad) = f.iter().find(|x| !alphabet.x_letters().contains(x)) {
            return Err(CombingError::FNotInX(group.format(bad)));
        }

        let threshold = 5 * c_const;
        let radius = if alphabet.is_direct_model() {
            options.h_enumeration.min(6)
        } else {
            options.h_enumeration
        };
        let h_elems = alphabet.h_letters(radius);
        let o = group.identity();
        let far = |h: &GroupElement| {
            !matches!(alphabet.dhat(&o, h, threshold), RelativeDistance::Finite(_))
        };

        let t = match t_override {
            Some(t) => {
                if !alphabet.in_h(&t) || t.is_identity() {
                    return Err(CombingError::InvalidT(format!(
                        "`{}` is not a nontrivial element of H",
                        group.format(&t)
                    )));
                }
                if !far(&t) {
                    return Err(CombingError::InvalidT(format!(
                        "d̂(1, {}) <= {threshold}",
                        group.format(&t)
                    )));
                }
                t
            }
            None => h_elems
                .iter()
                .find(|h| far(h))
                .cloned()
                .ok_or(CombingError::NoSuitableT {
                    threshold,
                    searched: h_elems.len() + 1,
                })?,
        };

        // F H F^-1 ∩ H = {1}, for h up to the enumeration bound.
        for f1 in &f {
            for f2 in &f {
                let f2i = group.inv(f2);
                for h in std::iter::once(&o).chain(&h_elems) {
                    let v = group.product([f1, h, &f2i]);
                    if alphabet.in_h(&v) && !v.is_identity() {
                        return Err(CombingError::IntersectionViolation {
                            f1: group.format(f1),
                            h: group.format(h),
                            f2: group.format(f2),
                            value: group.format(&v),
                        });
                    }
                }
            }
        }

        let mut omega: BTreeSet<GroupElement> = BTreeSet::new();
        omega.insert(t.clone());
        omega.insert(group.inv(&t));
        for x in &f {
            omega.insert(x.clone());
            omega.insert(group.inv(x));
        }
        omega.insert(o.clone());
        let outermost = h_elems
            .iter()
            .map(|h| group.std_length(h))
            .max()
            .unwrap_or(0);
        for h in &h_elems {
            if !far(h) {
                if group.std_length(h) == outermost && !alphabet.h_is_finite() {
                    return Err(CombingError::OmegaUnbounded {
                        threshold,
                        bound: radius,
                    });
                }
                omega.insert(h.clone());
            }
        }
        let omega: Vec<GroupElement> = omega.into_iter().collect();
        let omega2: Vec<GroupElement> = omega
            .iter()
            .flat_map(|a| omega.iter().map(|b| group.mul(a, b)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let m = omega2.iter().map(|u| alphabet.length(u)).max().unwrap_or(0);

        let analytic = alphabet.is_free_product_model();
        let t_dhat = alphabet.dhat(&o, &t, threshold);
        if analytic {
            // Normal forms: every h != 1 has d̂(1, h) = ∞, and f1 h f2^-1 is
            // a reduced word of three syllables whenever h != 1.
            assert!(
                !t_dhat.is_finite(),
                "closed form disagrees with the free-product analysis"
            );
            assert_eq!(omega.iter().filter(|h| alphabet.in_h(h)).count(), 3);
        }

        Ok(NeighbourhoodCombing {
            length: AlphabetLength::new(alphabet.clone()),
            alphabet,
            f,
            t,
            c_const,
            omega,
            omega2,
            m,
            certificate: Certificate {
                h_enumeration: radius,
                analytic,
                t_dhat,
            },
        })
    }

    pub fn alphabet(&self) -> &GeneratingAlphabet {
        &self.alphabet
    }

    pub fn f(&self) -> &[GroupElement] {
        &self.f
    }

    pub fn t(&self) -> &GroupElement {
        &self.t
    }

    pub fn c_const(&self) -> u64 {
        self.c_const
    }

    pub fn omega(&self) -> &[GroupElement] {
        &self.omega
    }

    pub fn omega_squared(&self) -> &[GroupElement] {
        &self.omega2
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// The generators `t f`, in the order of `F`.
    pub fn semigroup_generators(&self) -> Vec<GroupElement> {
        let g = self.group();
        self.f.iter().map(|x| g.mul(&self.t, x)).collect()
    }

    /// Parses `g` as `t f_1 t f_2 ... t f_n`; returns the indices into `F`.
    /// The empty parse is the identity.
    pub fn semigroup_parse(&self, g: &GroupElement) -> Option<Vec<usize>> {
        let group = self.group();
        let mut rest = g.clone();
        let mut out = Vec::new();
        while !rest.is_identity() {
            let after_t = strip(group, &rest, &self.t)?;
            let (i, next) = self
                .f
                .iter()
                .enumerate()
                .find_map(|(i, x)| strip(group, &after_t, x).map(|n| (i, n)))?;
            out.push(i);
            rest = next;
        }
        Some(out)
    }

    pub fn semigroup_member(&self, g: &GroupElement) -> bool {
        self.semigroup_parse(g).is_some()
    }

    fn word_from_indices(&self, idx: &[usize]) -> GroupElement {
        let gens = self.semigroup_generators();
        let group = self.group();
        idx.iter()
            .fold(group.identity(), |acc, &i| group.mul(&acc, &gens[i]))
    }
}

/// `x^-1 w`, provided `x` is a prefix of the normal form of `w`.
fn strip(group: &GroupDescription, w: &GroupElement, x: &GroupElement) -> Option<GroupElement> {
    let next = group.mul(&group.inv(x), w);
    strips_prefix(group, w, x, &next).then_some(next)
}

/// Whether `x · next = w` is a prefix factorisation of the normal form of
/// `w` (no cancellation between `x` and `next`).
fn strips_prefix(
    group: &GroupDescription,
    w: &GroupElement,
    x: &GroupElement,
    next: &GroupElement,
) -> bool {
    match (w, x, next) {
        (GroupElement::Word(ws), GroupElement::Word(xs), GroupElement::Word(ns)) => {
            ws.len() == xs.len() + ns.len() && ws[..xs.len()] == xs[..] && ws[xs.len()..] == ns[..]
        }
        (GroupElement::Tuple(ws), GroupElement::Tuple(xs), GroupElement::Tuple(ns)) => {
            let fs = group.direct_factors().unwrap();
            ws.iter()
                .zip(xs)
                .zip(ns)
                .zip(fs)
                .all(|(((w, x), n), f)| x.is_identity() || strips_prefix(f, w, x, n))
        }
        _ => false,
    }
}

impl Combing for NeighbourhoodCombing {
    fn group(&self) -> &GroupDescription {
        self.alphabet.group()
    }

    fn name(&self) -> String {
        "neighbourhood".into()
    }

    fn pseudolength(&self) -> &dyn Pseudolength {
        &self.length
    }

    fn boxed_pseudolength(&self) -> Box<dyn Pseudolength> {
        Box::new(self.length.clone())
    }

    fn eval_from_identity(&self, g: &GroupElement) -> ElementSet {
        let group = self.group();
        let mut verts: BTreeSet<GroupElement> = self
            .alphabet
            .canonical_geodesic(g)
            .vertices(&self.alphabet)
            .into_iter()
            .collect();
        let back = self.alphabet.canonical_geodesic(&group.inv(g));
        verts.extend(
            back.vertices(&self.alphabet)
                .iter()
                .map(|v| group.mul(g, v)),
        );
        verts
            .iter()
            .flat_map(|v| self.omega2.iter().map(move |w| group.mul(v, w)))
            .collect()
    }

    fn in_designated_set(&self, g: &GroupElement) -> bool {
        self.semigroup_member(g)
    }

    fn sample_designated(&self, rng: &mut dyn RngCore, max_len: usize) -> GroupElement {
        let len = rng.random_range(0..=max_len);
        let idx: Vec<usize> = (0..len)
            .map(|_| rng.random_range(0..self.f.len()))
            .collect();
        self.word_from_indices(&idx)
    }

    fn enumerate_designated(&self, max_len: usize) -> Option<Vec<GroupElement>> {
        let gens = self.semigroup_generators();
        let group = self.group();
        let mut out = vec![group.identity()];
        let mut layer = vec![group.identity()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| gens.iter().map(move |s| group.mul(w, s)))
                .collect();
            out.extend(layer.iter().cloned());
        }
        Some(out)
    }

    fn certified(&self) -> Option<CertifiedGrowth> {
        Some(CertifiedGrowth::Neighbourhood {
            omega_size: self.omega.len() as u64,
            m: self.m,
        })
    }

    fn semigroup_basis(&self) -> Option<(GroupElement, Vec<GroupElement>)> {
        Some((self.t.clone(), self.f.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combing::triple_witness;
    use crate::group::{CyclicFactor, Order};

    pub(crate) fn reference() -> NeighbourhoodCombing {
        let g = GroupDescription::free_product(vec![
            CyclicFactor::new("b", Order::Infinite),
            CyclicFactor::new("x", Order::Infinite),
        ])
        .unwrap();
        let a = GeneratingAlphabet::relative_named(g.clone(), "b").unwrap();
        let f = vec![g.parse("x").unwrap(), g.parse("x^-1").unwrap()];
        NeighbourhoodCombing::build(a, &f, 0, None, NeighbourhoodOptions::default()).unwrap()
    }

    fn set(g: &GroupDescription, words: &[&str]) -> Vec<GroupElement> {
        let mut v: Vec<GroupElement> = words.iter().map(|w| g.parse(w).unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn reference_instance() {
        let c = reference();
        let g = c.group().clone();
        assert_eq!(c.t(), &g.parse("b").unwrap());
        assert_eq!(c.omega(), &set(&g, &["1", "b", "b^-1", "x", "x^-1"])[..]);
        assert_eq!(c.m(), 2);
        assert_eq!(c.omega_squared().len(), 17);
        assert!(c.certificate().analytic);
    }

    #[test]
    fn eval_examples() {
        let c = reference();
        let g = c.group().clone();
        let o = g.identity();
        let o2: ElementSet = c.omega_squared().iter().cloned().collect();
        assert_eq!(c.eval(&o, &o), o2);
        let h = g.parse("x b^3").unwrap();
        assert_eq!(c.eval(&h, &h), crate::combing::translate(&g, &h, &o2));
        let bx = g.parse("b x").unwrap();
        let want: ElementSet = set(&g, &["1", "b", "b x"])
            .iter()
            .flat_map(|v| o2.iter().map(|w| g.mul(v, w)).collect::<Vec<_>>())
            .collect();
        assert_eq!(c.eval(&o, &bx), want);
        let gi = g.parse("x^-1 b^-1").unwrap();
        assert!(triple_witness(&c, &bx, &gi).is_some());
        assert_eq!(triple_witness(&c, &o, &gi), Some(o));
    }

    #[test]
    fn build_errors() {
        let c = reference();
        let g = c.group().clone();
        let a = c.alphabet().clone();
        let opts = NeighbourhoodOptions::default();
        let b = g.parse("b").unwrap();
        let x = g.parse("x").unwrap();
        assert_eq!(
            NeighbourhoodCombing::build(a.clone(), &[x.clone(), b.clone()], 0, None, opts)
                .unwrap_err(),
            CombingError::DisjointnessViolation("b".into())
        );
        assert_eq!(
            NeighbourhoodCombing::build(a.clone(), &[], 0, None, opts).unwrap_err(),
            CombingError::EmptyF
        );
        assert_eq!(
            NeighbourhoodCombing::build(a.clone(), &[g.identity()], 0, None, opts).unwrap_err(),
            CombingError::IdentityInF
        );
        assert!(matches!(
            NeighbourhoodCombing::build(a.clone(), &[g.parse("x^2").unwrap()], 0, None, opts),
            Err(CombingError::FNotInX(_))
        ));
        assert!(matches!(
            NeighbourhoodCombing::build(
                a.clone(),
                std::slice::from_ref(&x),
                0,
                Some(x.clone()),
                opts
            ),
            Err(CombingError::InvalidT(_))
        ));
        let c3 =
            NeighbourhoodCombing::build(a, &[x], 0, Some(g.parse("b^-3").unwrap()), opts).unwrap();
        assert_eq!(c3.omega().len(), 5);
    }

    #[test]
    fn z2_has_no_suitable_t() {
        let g = GroupDescription::direct(vec![
            GroupDescription::free_named(["b"]).unwrap(),
            GroupDescription::free_named(["x"]).unwrap(),
        ])
        .unwrap();
        let a = GeneratingAlphabet::relative(g.clone(), 0).unwrap();
        let x = g.parse("(1, x)").unwrap();
        let opts = NeighbourhoodOptions::default();
        assert!(matches!(
            NeighbourhoodCombing::build(a.clone(), std::slice::from_ref(&x), 1, None, opts),
            Err(CombingError::NoSuitableT { threshold: 5, .. })
        ));
        // With C = 0 a t exists, but x commutes with H.
        assert!(matches!(
            NeighbourhoodCombing::build(a, &[x], 0, None, opts),
            Err(CombingError::IntersectionViolation { .. })
        ));
    }

    #[test]
    fn membership() {
        let c = reference();
        let g = c.group().clone();
        assert_eq!(
            c.semigroup_parse(&g.parse("b x b x").unwrap()),
            Some(vec![0, 0])
        );
        assert_eq!(
            c.semigroup_parse(&g.parse("b x b x^-1").unwrap()),
            Some(vec![0, 1])
        );
        assert_eq!(c.semigroup_parse(&g.identity()), Some(vec![]));
        assert!(!c.semigroup_member(&g.parse("x").unwrap()));
        assert!(!c.semigroup_member(&g.parse("b^2 x").unwrap()));
        assert!(!c.semigroup_member(&g.parse("b x b").unwrap()));
        assert_eq!(c.enumerate_designated(4).unwrap().len(), 31);
        for s in c.enumerate_designated(4).unwrap() {
            assert!(c.semigroup_member(&s));
        }
    }

    #[test]
    fn symmetric_on_identity() {
        let c = reference();
        let g = c.group().clone();
        for w in ["b x", "x^3 b^-2 x", "b^5", "x b x b x"] {
            let e = g.parse(w).unwrap();
            let lhs = c.eval_from_identity(&e);
            let rhs = crate::combing::translate(&g, &e, &c.eval_from_identity(&g.inv(&e)));
            assert_eq!(lhs, rhs, "{w}");
        }
    }
}
