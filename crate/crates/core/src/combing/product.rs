use rand::RngCore;

use super::{CertifiedGrowth, Combing, CombingError, ElementSet};
use crate::group::{GroupDescription, GroupElement, ProductLength, Pseudolength};

/// `C((x1, x2), (y1, y2)) = C1(x1, y1) x C2(x2, y2)` with
/// `ℓ(x1, x2) = max(ℓ1(x1), ℓ2(x2))`.
pub struct ProductCombing {
    group: GroupDescription,
    factors: Vec<Box<dyn Combing>>,
    length: ProductLength,
}

impl ProductCombing {
    pub fn new(factors: Vec<Box<dyn Combing>>) -> Result<Self, CombingError> {
        if factors.len() < 2 {
            return Err(CombingError::Unsupported(
                "a product combing needs at least two factors".into(),
            ));
        }
        let group = GroupDescription::direct(factors.iter().map(|c| c.group().clone()).collect())
            .map_err(|e| CombingError::Unsupported(e.to_string()))?;
        let length = ProductLength::new(
            group.clone(),
            factors.iter().map(|c| c.boxed_pseudolength()).collect(),
        )
        .map_err(|e| CombingError::Unsupported(e.to_string()))?;
        Ok(ProductCombing {
            group,
            factors,
            length,
        })
    }

    pub fn factors(&self) -> &[Box<dyn Combing>] {
        &self.factors
    }
}

fn cartesian(sets: Vec<ElementSet>) -> ElementSet {
    let mut out: Vec<Vec<GroupElement>> = vec![Vec::new()];
    for s in &sets {
        out = out
            .iter()
            .flat_map(|p| {
                s.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(GroupElement::Tuple).collect()
}

impl Combing for ProductCombing {
    fn group(&self) -> &GroupDescription {
        &self.group
    }

    fn name(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|c| c.name()).collect();
        format!("product({})", parts.join(", "))
    }

    fn pseudolength(&self) -> &dyn Pseudolength {
        &self.length
    }

    fn boxed_pseudolength(&self) -> Box<dyn Pseudolength> {
        let lengths = self
            .factors
            .iter()
            .map(|c| c.boxed_pseudolength())
            .collect();
        Box::new(ProductLength::new(self.group.clone(), lengths).expect("factor lengths match"))
    }

    fn eval_from_identity(&self, g: &GroupElement) -> ElementSet {
        cartesian(
            self.factors
                .iter()
                .zip(g.components())
                .map(|(c, x)| c.eval_from_identity(x))
                .collect(),
        )
    }

    fn eval(&self, x: &GroupElement, y: &GroupElement) -> ElementSet {
        cartesian(
            self.factors
                .iter()
                .zip(x.components().iter().zip(y.components()))
                .map(|(c, (a, b))| c.eval(a, b))
                .collect(),
        )
    }

    /// `S1 x S2`, a subsemigroup containing the one generated by
    /// `(t1, t2)(F1 x F2)`.
    fn in_designated_set(&self, g: &GroupElement) -> bool {
        self.factors
            .iter()
            .zip(g.components())
            .all(|(c, x)| c.in_designated_set(x))
    }

    fn sample_designated(&self, rng: &mut dyn RngCore, max_len: usize) -> GroupElement {
        GroupElement::Tuple(
            self.factors
                .iter()
                .map(|c| c.sample_designated(rng, max_len))
                .collect(),
        )
    }

    fn enumerate_designated(&self, max_len: usize) -> Option<Vec<GroupElement>> {
        let parts = self
            .factors
            .iter()
            .map(|c| {
                c.enumerate_designated(max_len)
                    .map(|v| v.into_iter().collect::<ElementSet>())
            })
            .collect::<Option<Vec<_>>>()?;
        Some(cartesian(parts).into_iter().collect())
    }

    fn certified(&self) -> Option<CertifiedGrowth> {
        Some(CertifiedGrowth::Product {
            factors: self
                .factors
                .iter()
                .map(|c| c.certified())
                .collect::<Option<Vec<_>>>()?,
        })
    }

    /// `t = (t_i)` and `F = Π F_i`.
    fn semigroup_basis(&self) -> Option<(GroupElement, Vec<GroupElement>)> {
        let parts = self
            .factors
            .iter()
            .map(|c| c.semigroup_basis())
            .collect::<Option<Vec<_>>>()?;
        let t = GroupElement::Tuple(parts.iter().map(|(t, _)| t.clone()).collect());
        let f = cartesian(
            parts
                .into_iter()
                .map(|(_, f)| f.into_iter().collect())
                .collect(),
        );
        Some((t, f.into_iter().collect()))
    }

    /// With `ℓ = max ℓ_i`, `|{x : ℓ(x) <= n}|` is the product of the factor
    /// counts.
    fn length_histogram(&self, g: &GroupElement) -> Vec<u64> {
        let parts: Vec<Vec<u64>> = self
            .factors
            .iter()
            .zip(g.components())
            .map(|(c, x)| c.length_histogram(x))
            .collect();
        if parts.iter().any(Vec::is_empty) {
            return Vec::new();
        }
        let top = parts.iter().map(Vec::len).max().unwrap_or(0);
        let cumulative = |l: usize| -> u64 {
            parts
                .iter()
                .map(|h| h.iter().take(l + 1).sum::<u64>())
                .product()
        };
        let mut prev = 0;
        (0..top)
            .map(|l| {
                let c = cumulative(l);
                let d = c - prev;
                prev = c;
                d
            })
            .collect()
    }

    /// The triple intersection of cartesian products is the cartesian
    /// product of the factor intersections.
    fn triple_witness(&self, s: &GroupElement, g: &GroupElement) -> Option<GroupElement> {
        self.factors
            .iter()
            .zip(s.components().iter().zip(g.components()))
            .map(|(c, (a, b))| c.triple_witness(a, b))
            .collect::<Option<Vec<_>>>()
            .map(GroupElement::Tuple)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combing::GeodesicCombing;

    #[test]
    fn eval_is_cartesian() {
        let f2 = GroupDescription::free(2).unwrap();
        let c = ProductCombing::new(vec![
            Box::new(GeodesicCombing::standard(f2.clone()).unwrap()),
            Box::new(GeodesicCombing::standard(f2.clone()).unwrap()),
        ])
        .unwrap();
        let g = c.group().clone();
        let e = g.parse("(x y, y^-2)").unwrap();
        let set = c.eval(&g.identity(), &e);
        assert_eq!(set.len(), 9);
        let c1 = c.factors()[0].eval_from_identity(&f2.parse("x y").unwrap());
        let c2 = c.factors()[1].eval_from_identity(&f2.parse("y^-2").unwrap());
        for a in &c1 {
            for b in &c2 {
                assert!(set.contains(&GroupElement::Tuple(vec![a.clone(), b.clone()])));
            }
        }
        assert_eq!(c.pseudolength().length(&e), 2);
        assert_eq!(c.certified().unwrap().gamma(3), 16);
    }

    #[test]
    fn histogram_matches_materialised_set() {
        let f2 = GroupDescription::free(2).unwrap();
        let c = ProductCombing::new(vec![
            Box::new(GeodesicCombing::standard(f2.clone()).unwrap()),
            Box::new(GeodesicCombing::standard(f2).unwrap()),
        ])
        .unwrap();
        for w in ["(x y x, y^-2)", "(1, x)", "(y^3 x^-1, 1)", "(1, 1)"] {
            let e = c.group().parse(w).unwrap();
            let set = c.eval_from_identity(&e);
            assert_eq!(
                c.length_histogram(&e),
                crate::combing::length_histogram(c.pseudolength(), &set),
                "{w}"
            );
        }
    }

    #[test]
    fn componentwise_witness_lies_in_the_full_intersection() {
        let f2 = GroupDescription::free(2).unwrap();
        let c = ProductCombing::new(vec![
            Box::new(GeodesicCombing::standard(f2.clone()).unwrap()),
            Box::new(GeodesicCombing::standard(f2).unwrap()),
        ])
        .unwrap();
        let g = c.group().clone();
        let s = g.parse("(x y, y^-1 x)").unwrap();
        let h = g.parse("(x y^2, x)").unwrap();
        let w = c.triple_witness(&s, &h).unwrap();
        let id = g.identity();
        assert!(
            c.eval(&id, &s).contains(&w)
                && c.eval(&s, &h).contains(&w)
                && c.eval(&id, &h).contains(&w)
        );
    }
}
