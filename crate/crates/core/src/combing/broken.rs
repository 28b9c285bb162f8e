use rand::RngCore;

use super::{CertifiedGrowth, Combing, ElementSet, GeodesicCombing};
use crate::group::{GroupDescription, GroupElement, Pseudolength};

/// Negative control: the geodesic combing with the far endpoint removed
/// from `C(1, g)`. Equivariant by construction but not symmetric.
#[derive(Clone, Debug)]
pub struct DroppedEndpointCombing {
    inner: GeodesicCombing,
}

impl DroppedEndpointCombing {
    pub fn new(inner: GeodesicCombing) -> Self {
        DroppedEndpointCombing { inner }
    }
}

impl Combing for DroppedEndpointCombing {
    fn group(&self) -> &GroupDescription {
        self.inner.group()
    }

    fn name(&self) -> String {
        "broken".into()
    }

    fn pseudolength(&self) -> &dyn Pseudolength {
        self.inner.pseudolength()
    }

    fn boxed_pseudolength(&self) -> Box<dyn Pseudolength> {
        self.inner.boxed_pseudolength()
    }

    fn eval_from_identity(&self, g: &GroupElement) -> ElementSet {
        let mut s = self.inner.eval_from_identity(g);
        if !g.is_identity() {
            s.remove(g);
        }
        s
    }

    fn in_designated_set(&self, g: &GroupElement) -> bool {
        self.inner.in_designated_set(g)
    }

    fn sample_designated(&self, rng: &mut dyn RngCore, max_len: usize) -> GroupElement {
        self.inner.sample_designated(rng, max_len)
    }

    fn enumerate_designated(&self, max_len: usize) -> Option<Vec<GroupElement>> {
        self.inner.enumerate_designated(max_len)
    }

    fn certified(&self) -> Option<CertifiedGrowth> {
        self.inner.certified()
    }
}
