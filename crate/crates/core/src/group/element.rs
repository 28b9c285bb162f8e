use std::cmp::Ordering;

use super::Exponent;

/// A maximal power `g_factor^exp` inside a reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub factor: usize,
    pub exp: Exponent,
}

impl Syllable {
    pub fn new(factor: usize, exp: impl Into<Exponent>) -> Self {
        Syllable {
            factor,
            exp: exp.into(),
        }
    }
}

impl Ord for Syllable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.factor
            .cmp(&other.factor)
            .then_with(|| self.exp.cmp(&other.exp))
    }
}

impl PartialOrd for Syllable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Normal form of a group element. Only meaningful together with the
/// [`GroupDescription`](super::GroupDescription) that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Word(Vec<Syllable>),
    Tuple(Vec<GroupElement>),
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Word(s) => s.is_empty(),
            GroupElement::Tuple(xs) => xs.iter().all(GroupElement::is_identity),
        }
    }

    /// Total syllable count (summed over tuple components).
    pub fn syllable_count(&self) -> usize {
        match self {
            GroupElement::Word(s) => s.len(),
            GroupElement::Tuple(xs) => xs.iter().map(GroupElement::syllable_count).sum(),
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        match self {
            GroupElement::Word(s) => s,
            GroupElement::Tuple(_) => panic!("syllables() called on a direct-product element"),
        }
    }

    pub fn components(&self) -> &[GroupElement] {
        match self {
            GroupElement::Tuple(xs) => xs,
            GroupElement::Word(_) => panic!("components() called on a word element"),
        }
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupElement::Word(a), GroupElement::Word(b)) => a.cmp(b),
            (GroupElement::Tuple(a), GroupElement::Tuple(b)) => {
                for (x, y) in a.iter().zip(b) {
                    let c = x.cmp(y);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                a.len().cmp(&b.len())
            }
            (GroupElement::Word(_), GroupElement::Tuple(_)) => Ordering::Less,
            (GroupElement::Tuple(_), GroupElement::Word(_)) => Ordering::Greater,
        }
    }
}

/// Syllable count first, then lexicographic on `(factor, exponent)` with
/// exponents in shortlex order (`1 < -1 < 2 < ...`).
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.syllable_count()
            .cmp(&other.syllable_count())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
