use super::GeneratingAlphabet;
use crate::group::GroupElement;

/// A letter of `A = X ⊔ H`. Letters carry their value in `G`; an `H`-letter
/// and an `X`-letter with equal values are still different edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X(GroupElement),
    H(GroupElement),
}

impl Letter {
    pub fn value(&self) -> &GroupElement {
        match self {
            Letter::X(g) | Letter::H(g) => g,
        }
    }

    pub fn is_h(&self) -> bool {
        matches!(self, Letter::H(_))
    }
}

/// An edge path in `Γ(G, A)` starting at `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphabetPath {
    pub base: GroupElement,
    pub letters: Vec<Letter>,
}

impl AlphabetPath {
    pub fn new(base: GroupElement, letters: Vec<Letter>) -> Self {
        AlphabetPath { base, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// All `len + 1` vertices, starting with `base`.
    pub fn vertices(&self, alphabet: &GeneratingAlphabet) -> Vec<GroupElement> {
        let g = alphabet.group();
        let mut out = Vec::with_capacity(self.letters.len() + 1);
        let mut v = self.base.clone();
        out.push(v.clone());
        for l in &self.letters {
            v = g.mul(&v, l.value());
            out.push(v.clone());
        }
        out
    }

    pub fn end(&self, alphabet: &GeneratingAlphabet) -> GroupElement {
        let g = alphabet.group();
        self.letters
            .iter()
            .fold(self.base.clone(), |v, l| g.mul(&v, l.value()))
    }

    /// The same edges traversed backwards.
    pub fn reversed(&self, alphabet: &GeneratingAlphabet) -> AlphabetPath {
        let g = alphabet.group();
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| match l {
                Letter::X(x) => Letter::X(g.inv(x)),
                Letter::H(h) => Letter::H(g.inv(h)),
            })
            .collect();
        AlphabetPath::new(self.end(alphabet), letters)
    }

    /// Left translate by `t`.
    pub fn translate(&self, alphabet: &GeneratingAlphabet, t: &GroupElement) -> AlphabetPath {
        AlphabetPath::new(alphabet.group().mul(t, &self.base), self.letters.clone())
    }

    pub fn concat(&self, other: &AlphabetPath) -> AlphabetPath {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        AlphabetPath::new(self.base.clone(), letters)
    }

    pub fn format(&self, alphabet: &GeneratingAlphabet) -> String {
        if self.letters.is_empty() {
            return "(empty)".into();
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| alphabet.format_letter(l))
            .collect();
        parts.join(" ")
    }
}
