use num_complex::Complex64;

use super::Scalar;
use crate::group::{GroupDescription, GroupElement, Pseudolength};

/// A finitely supported `Σ α_g g`, stored as terms sorted by the element
/// order with no zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<S> {
    terms: Vec<(GroupElement, S)>,
}

impl<S: Scalar> Default for AlgebraElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero() -> Self {
        AlgebraElement { terms: Vec::new() }
    }

    pub fn delta(g: GroupElement) -> Self {
        AlgebraElement {
            terms: vec![(g, S::one())],
        }
    }

    /// Sums coefficients of repeated elements and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (GroupElement, S)>) -> Self {
        let mut v: Vec<(GroupElement, S)> = terms.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        AlgebraElement {
            terms: fold_sorted(v),
        }
    }

    /// Terms must already be strictly sorted and nonzero.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(GroupElement, S)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        AlgebraElement { terms }
    }

    pub fn terms(&self) -> &[(GroupElement, S)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(GroupElement, S)> {
        self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.iter().map(|(g, _)| g)
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &GroupElement) -> Option<&S> {
        self.terms
            .binary_search_by(|(h, _)| h.cmp(g))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, a)| (g.clone(), a.mul(c))))
    }

    /// `(Σ α_g g)^* = Σ conj(α_g) g^{-1}`.
    pub fn involution(&self, group: &GroupDescription) -> Self {
        Self::from_terms(self.terms.iter().map(|(g, a)| (group.inv(g), a.conj())))
    }

    /// `Σ |α_g| g`.
    pub fn positive_part(&self) -> Self {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(g, a)| (g.clone(), a.modulus()))
                .collect(),
        }
    }

    pub fn is_nonneg_real(&self) -> bool {
        self.terms.iter().all(|(_, a)| a.is_nonneg_real())
    }

    /// `Σ |α_g|^2`, exact in the integer and rational modes.
    pub fn l2_norm_squared(&self) -> S {
        self.terms
            .iter()
            .fold(S::zero(), |acc, (_, a)| acc.add(&a.abs_sq()))
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_squared().to_f64().sqrt()
    }

    /// `max ℓ` over the support (0 for the zero element).
    pub fn max_length(&self, len: &dyn Pseudolength) -> u64 {
        self.support().map(|g| len.length(g)).max().unwrap_or(0)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> AlgebraElement<T> {
        AlgebraElement::from_terms(self.terms.iter().map(|(g, a)| (g.clone(), f(a))))
    }

    pub fn to_complex(&self) -> AlgebraElement<Complex64> {
        self.map(|a| a.to_complex())
    }

    pub fn format(&self, group: &GroupDescription) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, a)| format!("{}*[{}]", a.render(), group.format(g)))
            .collect();
        parts.join(" + ")
    }
}

/// Merges adjacent equal keys of a key-sorted vector, left to right.
pub(crate) fn fold_sorted<S: Scalar>(v: Vec<(GroupElement, S)>) -> Vec<(GroupElement, S)> {
    let mut out: Vec<(GroupElement, S)> = Vec::with_capacity(v.len());
    for (g, a) in v {
        match out.last_mut() {
            Some((h, b)) if *h == g => *b = b.add(&a),
            _ => {
                if let Some((_, b)) = out.last() {
                    if b.is_zero() {
                        out.pop();
                    }
                }
                out.push((g, a));
            }
        }
    }
    if out.last().is_some_and(|(_, b)| b.is_zero()) {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    #[test]
    fn from_terms_merges_and_drops_zeros() {
        let g = GroupDescription::free(2).unwrap();
        let x = g.parse("x").unwrap();
        let y = g.parse("y").unwrap();
        let a = AlgebraElement::<BigInt>::from_terms([
            (y.clone(), BigInt::from(2)),
            (x.clone(), BigInt::from(1)),
            (y.clone(), BigInt::from(-2)),
            (x.clone(), BigInt::from(4)),
        ]);
        assert_eq!(a.terms(), &[(x.clone(), BigInt::from(5))]);
        assert_eq!(a.coeff(&y), None);
        assert_eq!(a.l2_norm_squared(), BigInt::from(25));
    }

    #[test]
    fn involution_and_positive_part() {
        let g = GroupDescription::free(2).unwrap();
        let x = g.parse("x").unwrap();
        let y = g.parse("y").unwrap();
        let a = AlgebraElement::from_terms([(x.clone(), Complex64::new(2.0, 1.0))]);
        let s = a.involution(&g);
        assert_eq!(s.terms(), &[(g.inv(&x), Complex64::new(2.0, -1.0))]);
        assert_eq!(s.involution(&g), a);

        let f = AlgebraElement::from_terms([
            (x.clone(), BigInt::from(1)),
            (y.clone(), BigInt::from(-1)),
        ]);
        let p = f.positive_part();
        assert_eq!(p.coeff(&y), Some(&BigInt::from(1)));
        assert_eq!(p.l2_norm_squared(), f.l2_norm_squared());

        let z = AlgebraElement::from_terms([(x, Complex64::new(3.0, -4.0))]);
        assert_eq!(z.positive_part().terms()[0].1, Complex64::new(5.0, 0.0));
        assert!(p.is_nonneg_real());
        assert_eq!(p.positive_part(), p);
    }

    #[test]
    fn norms() {
        let g = GroupDescription::free(2).unwrap();
        let a = AlgebraElement::<BigInt>::delta(g.identity());
        assert_eq!(a.l2_norm(), 1.0);
        let b = AlgebraElement::<BigInt>::from_terms([
            (g.parse("x").unwrap(), BigInt::from(1)),
            (g.parse("y").unwrap(), BigInt::from(1)),
        ]);
        assert!((b.l2_norm() - 2f64.sqrt()).abs() < 1e-15);
    }
}
