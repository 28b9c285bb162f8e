use std::collections::HashSet;

use super::{GroupDescription, GroupElement, GroupError};

/// Default cap on the size of an enumerated ball.
pub const DEFAULT_BALL_CAP: usize = 5_000_000;

/// A symmetric, subadditive `G -> [0, inf)`. All lengths used here are
/// integer valued.
pub trait Pseudolength: Send + Sync {
    fn group(&self) -> &GroupDescription;

    fn length(&self, g: &GroupElement) -> u64;

    /// `B(n) = { g : length(g) <= n }`, sorted by the element order.
    fn ball(&self, n: u64) -> Result<Vec<GroupElement>, GroupError>;

    fn describe(&self) -> String;
}

/// Word length with respect to the standard generators.
#[derive(Clone, Debug)]
pub struct WordLength {
    group: GroupDescription,
    cap: usize,
}

impl WordLength {
    pub fn new(group: GroupDescription) -> Self {
        WordLength {
            group,
            cap: DEFAULT_BALL_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }
}

impl Pseudolength for WordLength {
    fn group(&self) -> &GroupDescription {
        &self.group
    }

    fn length(&self, g: &GroupElement) -> u64 {
        self.group.std_length(g)
    }

    fn ball(&self, n: u64) -> Result<Vec<GroupElement>, GroupError> {
        bfs_ball(&self.group, &self.group.standard_generators(), n, self.cap)
    }

    fn describe(&self) -> String {
        "standard word length".into()
    }
}

/// `(x_1, ..., x_r) -> max_i l_i(x_i)` on a direct product.
pub struct ProductLength {
    group: GroupDescription,
    factors: Vec<Box<dyn Pseudolength>>,
}

impl ProductLength {
    pub fn new(
        group: GroupDescription,
        factors: Vec<Box<dyn Pseudolength>>,
    ) -> Result<Self, GroupError> {
        let fs = group.direct_factors().ok_or_else(|| {
            GroupError::InvalidDescription("product length needs a direct product".into())
        })?;
        if fs.len() != factors.len() || fs.iter().zip(&factors).any(|(g, l)| g != l.group()) {
            return Err(GroupError::InvalidDescription(
                "factor lengths do not match the direct factors".into(),
            ));
        }
        Ok(ProductLength { group, factors })
    }

    pub fn factors(&self) -> &[Box<dyn Pseudolength>] {
        &self.factors
    }
}

impl Pseudolength for ProductLength {
    fn group(&self) -> &GroupDescription {
        &self.group
    }

    fn length(&self, g: &GroupElement) -> u64 {
        self.factors
            .iter()
            .zip(g.components())
            .map(|(l, x)| l.length(x))
            .max()
            .unwrap_or(0)
    }

    fn ball(&self, n: u64) -> Result<Vec<GroupElement>, GroupError> {
        let balls = self
            .factors
            .iter()
            .map(|l| l.ball(n))
            .collect::<Result<Vec<_>, _>>()?;
        let mut out: Vec<Vec<GroupElement>> = vec![Vec::new()];
        for ball in &balls {
            let mut next = Vec::with_capacity(out.len() * ball.len());
            for prefix in &out {
                for x in ball {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        let mut elems: Vec<GroupElement> = out.into_iter().map(GroupElement::Tuple).collect();
        elems.sort();
        Ok(elems)
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|l| l.describe()).collect();
        format!("max({})", parts.join(", "))
    }
}

/// Ball of radius `n` in the Cayley graph for a finite generating set,
/// by breadth-first search. Sorted by the element order.
pub fn bfs_ball(
    group: &GroupDescription,
    generators: &[GroupElement],
    n: u64,
    cap: usize,
) -> Result<Vec<GroupElement>, GroupError> {
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let id = group.identity();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &frontier {
            for s in generators {
                let w = group.mul(v, s);
                if !seen.contains(&w) {
                    seen.insert(w.clone());
                    next.push(w);
                    if seen.len() > cap {
                        return Err(GroupError::BallTooLarge(cap));
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let mut out: Vec<GroupElement> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}
