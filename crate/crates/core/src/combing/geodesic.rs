use rand::RngCore;

use super::{CertifiedGrowth, Combing, CombingError, ElementSet};
use crate::group::{GroupDescription, GroupElement, Order, Pseudolength};
use crate::relative::{AlphabetLength, GeneratingAlphabet};

/// `C(x, y)` = vertices of the unique geodesic from `x` to `y`.
///
/// Geodesics are unique in Cayley graphs of free products of cyclic groups
/// as long as no `X`-factor is a cyclic group of even order at least 4 (an
/// even cycle has two geodesics between antipodal points). `H`-factors are
/// cliques and never cause ambiguity.
#[derive(Clone, Debug)]
pub struct GeodesicCombing {
    alphabet: GeneratingAlphabet,
    length: AlphabetLength,
}

impl GeodesicCombing {
    pub fn new(alphabet: GeneratingAlphabet) -> Result<Self, CombingError> {
        let g = alphabet.group();
        if !g.is_word_kind() {
            return Err(CombingError::Unsupported(
                "geodesic combing needs a free group or free product".into(),
            ));
        }
        if alphabet.is_direct_model() {
            return Err(CombingError::Unsupported(
                "geodesic combing with a direct-factor H".into(),
            ));
        }
        for i in 0..g.num_factors() {
            if Some(i) == alphabet.h_factor() {
                continue;
            }
            if let Order::Finite(m) = g.factor_order(i) {
                if m >= 4 && m % 2 == 0 {
                    return Err(CombingError::Unsupported(format!(
                        "geodesics are not unique: factor `{}` has even order {m}",
                        g.factor_name(i)
                    )));
                }
            }
        }
        Ok(GeodesicCombing {
            length: AlphabetLength::new(alphabet.clone()),
            alphabet,
        })
    }

    /// Standard alphabet on `group`.
    pub fn standard(group: GroupDescription) -> Result<Self, CombingError> {
        Self::new(GeneratingAlphabet::standard(group))
    }

    pub fn alphabet(&self) -> &GeneratingAlphabet {
        &self.alphabet
    }
}

impl Combing for GeodesicCombing {
    fn group(&self) -> &GroupDescription {
        self.alphabet.group()
    }

    fn name(&self) -> String {
        "geodesic".into()
    }

    fn pseudolength(&self) -> &dyn Pseudolength {
        &self.length
    }

    fn boxed_pseudolength(&self) -> Box<dyn Pseudolength> {
        Box::new(self.length.clone())
    }

    fn eval_from_identity(&self, g: &GroupElement) -> ElementSet {
        self.alphabet
            .canonical_geodesic(g)
            .vertices(&self.alphabet)
            .into_iter()
            .collect()
    }

    fn in_designated_set(&self, _g: &GroupElement) -> bool {
        true
    }

    fn sample_designated(&self, rng: &mut dyn RngCore, max_len: usize) -> GroupElement {
        self.group().random_element(rng, max_len, 3)
    }

    fn enumerate_designated(&self, _max_len: usize) -> Option<Vec<GroupElement>> {
        None
    }

    fn certified(&self) -> Option<CertifiedGrowth> {
        Some(CertifiedGrowth::Geodesic)
    }
}
