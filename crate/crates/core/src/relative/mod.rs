//! The relative Cayley graph `Γ(G, X ⊔ H)` of a model group with a
//! designated cyclic free factor (or direct factor) `H`.
//!
//! `X` is always the standard symmetric generating set of the remaining
//! factors, so word lengths have a closed form: in a free product each
//! `H`-syllable costs one letter and an `X`-syllable `x^m` costs `|m|`; in a
//! direct product `H x K` the whole `H`-coordinate costs one letter.

mod components;
mod dhat;
mod ngon;
mod path;

pub use components::{h_components, HComponent};
pub use dhat::{RelativeDistance, SearchOutcome};
pub use ngon::{ngon_isolated_audit, IsolatedSide, NgonReport};
pub use path::{AlphabetPath, Letter};

use thiserror::Error;

use crate::group::{
    bfs_ball, GroupDescription, GroupElement, GroupError, Order, Pseudolength, DEFAULT_BALL_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("polygon is not closed: side {0} does not end where side {1} starts")]
    NotClosed(usize, usize),
    #[error("side {side} is not geodesic (length {len}, distance {dist})")]
    NotGeodesic { side: usize, len: usize, dist: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Where the designated subgroup `H` sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum HPlacement {
    /// `H = {1}`; the alphabet is just the standard generating set.
    None,
    /// `H = <g_i>`, a cyclic free factor of a free product.
    FreeFactor(usize),
    /// `H = G_i`, a direct factor.
    DirectFactor(usize),
}

/// `A = X ⊔ H` together with its evaluation map into `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingAlphabet {
    group: GroupDescription,
    h: HPlacement,
    x_letters: Vec<GroupElement>,
}

impl GeneratingAlphabet {
    /// The standard generating set, `H` trivial.
    pub fn standard(group: GroupDescription) -> Self {
        let x_letters = group.standard_generators();
        GeneratingAlphabet {
            group,
            h: HPlacement::None,
            x_letters,
        }
    }

    /// `H` is cyclic free factor `h` of a free product, or direct factor `h`
    /// of a direct product. `X` is the standard generating set of the
    /// remaining factors.
    pub fn relative(group: GroupDescription, h: usize) -> Result<Self, GeometryError> {
        if h >= group.num_factors() {
            return Err(GeometryError::InvalidAlphabet(format!(
                "H factor index {h} out of range for {group}"
            )));
        }
        let (placement, x_letters) = match &group {
            GroupDescription::Direct { factors } => {
                let mut xs = Vec::new();
                for (j, f) in factors.iter().enumerate() {
                    if j != h {
                        xs.extend(
                            f.standard_generators()
                                .into_iter()
                                .map(|g| group.embed(j, g)),
                        );
                    }
                }
                (HPlacement::DirectFactor(h), xs)
            }
            _ => {
                let xs = group
                    .standard_generators()
                    .into_iter()
                    .filter(|g| g.syllables()[0].factor != h)
                    .collect();
                (HPlacement::FreeFactor(h), xs)
            }
        };
        if x_letters.is_empty() {
            return Err(GeometryError::InvalidAlphabet("X must be nonempty".into()));
        }
        let mut x_letters: Vec<GroupElement> = x_letters;
        x_letters.sort();
        x_letters.dedup();
        Ok(GeneratingAlphabet {
            group,
            h: placement,
            x_letters,
        })
    }

    /// Like [`relative`](Self::relative) with `H` named by its generator
    /// (free products only).
    pub fn relative_named(group: GroupDescription, h_name: &str) -> Result<Self, GeometryError> {
        let idx = group.factor_index(h_name).ok_or_else(|| {
            GeometryError::InvalidAlphabet(format!("no cyclic factor named `{h_name}`"))
        })?;
        Self::relative(group, idx)
    }

    pub fn group(&self) -> &GroupDescription {
        &self.group
    }

    pub fn x_letters(&self) -> &[GroupElement] {
        &self.x_letters
    }

    pub fn has_h(&self) -> bool {
        self.h != HPlacement::None
    }

    /// Index of the `H` factor, if any.
    pub fn h_factor(&self) -> Option<usize> {
        match self.h {
            HPlacement::None => None,
            HPlacement::FreeFactor(i) | HPlacement::DirectFactor(i) => Some(i),
        }
    }

    pub fn is_free_product_model(&self) -> bool {
        matches!(self.h, HPlacement::FreeFactor(_))
    }

    pub fn is_direct_model(&self) -> bool {
        matches!(self.h, HPlacement::DirectFactor(_))
    }

    /// Whether `H` is a finite group (then `|.|_A`-balls are finite).
    pub fn h_is_finite(&self) -> bool {
        match self.h {
            HPlacement::None => true,
            HPlacement::FreeFactor(i) => !self.group.factor_order(i).is_infinite(),
            HPlacement::DirectFactor(i) => {
                is_finite_group(&self.group.direct_factors().unwrap()[i])
            }
        }
    }

    pub fn in_h(&self, g: &GroupElement) -> bool {
        match self.h {
            HPlacement::None => g.is_identity(),
            HPlacement::FreeFactor(i) => {
                let s = g.syllables();
                s.is_empty() || (s.len() == 1 && s[0].factor == i)
            }
            HPlacement::DirectFactor(i) => g
                .components()
                .iter()
                .enumerate()
                .all(|(j, c)| j == i || c.is_identity()),
        }
    }

    /// Canonical representative of the left coset `gH`.
    pub fn coset_rep(&self, g: &GroupElement) -> GroupElement {
        match self.h {
            HPlacement::None => g.clone(),
            HPlacement::FreeFactor(i) => {
                let mut s = g.syllables().to_vec();
                if s.last().is_some_and(|syl| syl.factor == i) {
                    s.pop();
                }
                GroupElement::Word(s)
            }
            HPlacement::DirectFactor(i) => {
                let mut c = g.components().to_vec();
                c[i] = self.group.direct_factors().unwrap()[i].identity();
                GroupElement::Tuple(c)
            }
        }
    }

    /// `H`-letters whose value has standard length at most `cap`
    /// (excluding the identity), sorted.
    pub fn h_letters(&self, cap: u64) -> Vec<GroupElement> {
        let mut out = match self.h {
            HPlacement::None => Vec::new(),
            HPlacement::FreeFactor(i) => {
                let mut v = Vec::new();
                let limit = match self.group.factor_order(i) {
                    Order::Finite(m) => cap.min(m),
                    Order::Infinite => cap,
                };
                for e in 1..=limit as i64 {
                    for s in [e, -e] {
                        let g = self.group.syllable_power(i, s);
                        if !g.is_identity() {
                            v.push(g);
                        }
                    }
                }
                v
            }
            HPlacement::DirectFactor(i) => {
                let f = &self.group.direct_factors().unwrap()[i];
                bfs_ball(f, &f.standard_generators(), cap, DEFAULT_BALL_CAP)
                    .expect("H-letter ball within cap")
                    .into_iter()
                    .filter(|g| !g.is_identity())
                    .map(|g| self.group.embed(i, g))
                    .collect()
            }
        };
        out.sort();
        out.dedup();
        out
    }

    /// `|g|_A`, by the closed-form syllable rule.
    pub fn length(&self, g: &GroupElement) -> u64 {
        match self.h {
            HPlacement::None => self.group.std_length(g),
            HPlacement::FreeFactor(i) => g.syllables().iter().fold(0u64, |acc, s| {
                let cost = if s.factor == i {
                    1
                } else {
                    s.exp.abs_u64().unwrap_or(u64::MAX)
                };
                acc.saturating_add(cost)
            }),
            HPlacement::DirectFactor(i) => {
                let factors = self.group.direct_factors().unwrap();
                g.components().iter().enumerate().fold(0u64, |acc, (j, c)| {
                    let cost = if j == i {
                        u64::from(!c.is_identity())
                    } else {
                        factors[j].std_length(c)
                    };
                    acc.saturating_add(cost)
                })
            }
        }
    }

    /// A geodesic from `1` to `g` spelling the normal form: `H`-syllables as
    /// single `H`-letters and `X`-syllables letter by letter.
    pub fn canonical_geodesic(&self, g: &GroupElement) -> AlphabetPath {
        let mut letters = Vec::new();
        match self.h {
            HPlacement::None => {
                letters.extend(std_spelling(&self.group, g).into_iter().map(Letter::X));
            }
            HPlacement::FreeFactor(i) => {
                for s in g.syllables() {
                    if s.factor == i {
                        letters.push(Letter::H(GroupElement::Word(vec![s.clone()])));
                    } else {
                        letters.extend(
                            std_spelling(&self.group, &GroupElement::Word(vec![s.clone()]))
                                .into_iter()
                                .map(Letter::X),
                        );
                    }
                }
            }
            HPlacement::DirectFactor(i) => {
                let factors = self.group.direct_factors().unwrap();
                let comps = g.components();
                if !comps[i].is_identity() {
                    letters.push(Letter::H(self.group.embed(i, comps[i].clone())));
                }
                for (j, (f, c)) in factors.iter().zip(comps).enumerate() {
                    if j != i {
                        letters.extend(
                            std_spelling(f, c)
                                .into_iter()
                                .map(|x| Letter::X(self.group.embed(j, x))),
                        );
                    }
                }
            }
        }
        AlphabetPath::new(self.group.identity(), letters)
    }

    /// `d̂(h1, h2)`, extended to all of `G` by `d̂(f, g) = d̂(1, f^{-1} g)`
    /// when `f^{-1} g ∈ H` and `∞` otherwise. Answers beyond `bound` are
    /// reported as `Exceeds(bound)`.
    pub fn dhat(&self, h1: &GroupElement, h2: &GroupElement, bound: u64) -> RelativeDistance {
        dhat::dhat(self, h1, h2, bound)
    }

    /// Breadth-first `d̂` restricted to `H`-letters of standard length
    /// at most `h_cap`. Exhaustive for every avoiding path built from such
    /// letters.
    pub fn dhat_bfs(
        &self,
        h1: &GroupElement,
        h2: &GroupElement,
        bound: u64,
        h_cap: u64,
    ) -> RelativeDistance {
        dhat::dhat_bfs(self, h1, h2, bound, h_cap)
    }

    /// Shortest path search in `Γ(G, A)` with capped `H`-letters.
    pub fn shortest_path(
        &self,
        from: &GroupElement,
        to: &GroupElement,
        bound: u64,
        h_cap: u64,
        avoid_h_edges: bool,
    ) -> SearchOutcome {
        dhat::shortest_path(self, from, to, bound, h_cap, avoid_h_edges)
    }

    pub fn format_letter(&self, letter: &Letter) -> String {
        match letter {
            Letter::X(g) => self.group.format(g),
            Letter::H(g) => format!("H[{}]", self.group.format(g)),
        }
    }
}

/// The pseudolength `g -> |g|_A`.
#[derive(Clone, Debug)]
pub struct AlphabetLength {
    alphabet: GeneratingAlphabet,
}

impl AlphabetLength {
    pub fn new(alphabet: GeneratingAlphabet) -> Self {
        AlphabetLength { alphabet }
    }

    pub fn alphabet(&self) -> &GeneratingAlphabet {
        &self.alphabet
    }
}

impl Pseudolength for AlphabetLength {
    fn group(&self) -> &GroupDescription {
        &self.alphabet.group
    }

    fn length(&self, g: &GroupElement) -> u64 {
        self.alphabet.length(g)
    }

    fn ball(&self, n: u64) -> Result<Vec<GroupElement>, GroupError> {
        if !self.alphabet.h_is_finite() {
            return Err(GroupError::NonLocallyFinite(
                "relative length |.|_A with infinite H".into(),
            ));
        }
        let mut gens = self.alphabet.x_letters.clone();
        if self.alphabet.has_h() {
            gens.extend(self.alphabet.h_letters(1 << 20));
        }
        bfs_ball(&self.alphabet.group, &gens, n, DEFAULT_BALL_CAP)
    }

    fn describe(&self) -> String {
        if self.alphabet.has_h() {
            "relative word length |.|_A".into()
        } else {
            "standard word length".into()
        }
    }
}

/// Standard-generator spelling of `g` as a list of generator values.
fn std_spelling(group: &GroupDescription, g: &GroupElement) -> Vec<GroupElement> {
    match group {
        GroupDescription::Direct { factors } => {
            let mut out = Vec::new();
            for (j, (f, c)) in factors.iter().zip(g.components()).enumerate() {
                out.extend(std_spelling(f, c).into_iter().map(|x| group.embed(j, x)));
            }
            out
        }
        _ => {
            let mut out = Vec::new();
            for s in g.syllables() {
                let step = group.syllable_power(s.factor, s.exp.signum());
                let n = s
                    .exp
                    .abs_u64()
                    .expect("spelling of astronomically long syllable");
                for _ in 0..n {
                    out.push(step.clone());
                }
            }
            out
        }
    }
}

fn is_finite_group(g: &GroupDescription) -> bool {
    match g {
        GroupDescription::Free { .. } => false,
        GroupDescription::FreeProduct { factors } => {
            factors.len() == 1 && !factors[0].order.is_infinite()
        }
        GroupDescription::Direct { factors } => factors.iter().all(is_finite_group),
    }
}
