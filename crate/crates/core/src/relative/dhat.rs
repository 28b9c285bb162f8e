use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AlphabetPath, GeneratingAlphabet, HPlacement, Letter};
use crate::group::GroupElement;

/// Value of `d̂` as far as it was resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum RelativeDistance {
    Finite(u64),
    /// No admissible path of length `<= bound` exists.
    Exceeds(u64),
    /// The endpoints lie in different `H`-cosets.
    Infinite,
}

impl RelativeDistance {
    pub fn finite(self) -> Option<u64> {
        match self {
            RelativeDistance::Finite(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, RelativeDistance::Finite(_))
    }
}

impl fmt::Display for RelativeDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelativeDistance::Finite(d) => write!(f, "finite({d})"),
            RelativeDistance::Exceeds(b) => write!(f, "exceeds({b})"),
            RelativeDistance::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(AlphabetPath),
    NotWithin(u64),
}

/// Closed form. In `A * H` every path between distinct points of `H` passes
/// through the clique on `H`, so `d̂(1, h) = ∞` for `h != 1`. In `H x K` with
/// `K` nontrivial, `x h x^-1` is an avoiding path of length 3 and nothing
/// shorter exists: a path of length `<= 2` from `1` to `h` either stays in
/// `H` or uses an `X`-letter without undoing it.
pub(super) fn dhat(
    a: &GeneratingAlphabet,
    h1: &GroupElement,
    h2: &GroupElement,
    bound: u64,
) -> RelativeDistance {
    let d = a.group().left_quotient(h1, h2);
    if d.is_identity() {
        return RelativeDistance::Finite(0);
    }
    if !a.in_h(&d) {
        return RelativeDistance::Infinite;
    }
    match a.h {
        HPlacement::None => RelativeDistance::Infinite,
        HPlacement::FreeFactor(_) => RelativeDistance::Exceeds(bound),
        HPlacement::DirectFactor(_) => {
            if bound >= 3 {
                RelativeDistance::Finite(3)
            } else {
                RelativeDistance::Exceeds(bound)
            }
        }
    }
}

pub(super) fn dhat_bfs(
    a: &GeneratingAlphabet,
    h1: &GroupElement,
    h2: &GroupElement,
    bound: u64,
    h_cap: u64,
) -> RelativeDistance {
    let d = a.group().left_quotient(h1, h2);
    if !a.in_h(&d) {
        return RelativeDistance::Infinite;
    }
    match shortest_path(a, &a.group().identity(), &d, bound, h_cap, true) {
        SearchOutcome::Found(p) => RelativeDistance::Finite(p.len() as u64),
        SearchOutcome::NotWithin(b) => RelativeDistance::Exceeds(b),
    }
}

pub(super) fn shortest_path(
    a: &GeneratingAlphabet,
    from: &GroupElement,
    to: &GroupElement,
    bound: u64,
    h_cap: u64,
    avoid_h_edges: bool,
) -> SearchOutcome {
    let g = a.group();
    let mut letters: Vec<Letter> = a.x_letters().iter().cloned().map(Letter::X).collect();
    letters.extend(a.h_letters(h_cap).into_iter().map(Letter::H));

    let mut parent: HashMap<GroupElement, Option<(GroupElement, Letter)>> = HashMap::new();
    parent.insert(from.clone(), None);
    let mut queue = VecDeque::from([(from.clone(), 0u64)]);
    let mut found = from == to;
    while !found {
        let Some((v, depth)) = queue.pop_front() else {
            break;
        };
        if depth >= bound {
            break;
        }
        let v_in_h = avoid_h_edges && a.in_h(&v);
        for l in &letters {
            if v_in_h && l.is_h() {
                continue;
            }
            let w = g.mul(&v, l.value());
            if parent.contains_key(&w) {
                continue;
            }
            parent.insert(w.clone(), Some((v.clone(), l.clone())));
            if &w == to {
                found = true;
                break;
            }
            queue.push_back((w, depth + 1));
        }
    }
    if !found {
        return SearchOutcome::NotWithin(bound);
    }
    let mut rev = Vec::new();
    let mut cur = to.clone();
    while let Some(Some((prev, l))) = parent.get(&cur) {
        rev.push(l.clone());
        cur = prev.clone();
    }
    rev.reverse();
    SearchOutcome::Found(AlphabetPath::new(from.clone(), rev))
}

#[cfg(test)]
mod tests {
    use super::super::tests::{bx, z2_h};
    use super::*;

    #[test]
    fn closed_form_examples() {
        let z = z2_h();
        let g = z.group().clone();
        let o = g.identity();
        let h = g.parse("(b^5, 1)").unwrap();
        assert_eq!(z.dhat(&o, &h, 10), RelativeDistance::Finite(3));
        assert_eq!(z.dhat(&o, &h, 2), RelativeDistance::Exceeds(2));
        assert_eq!(
            z.dhat(&o, &g.parse("(1, x)").unwrap(), 10),
            RelativeDistance::Infinite
        );

        let a = bx();
        let g = a.group().clone();
        let o = g.identity();
        assert_eq!(
            a.dhat(&o, &g.parse("b").unwrap(), 30),
            RelativeDistance::Exceeds(30)
        );
        assert_eq!(a.dhat(&o, &o, 30), RelativeDistance::Finite(0));
        assert_eq!(
            a.dhat(&o, &g.parse("x").unwrap(), 30),
            RelativeDistance::Infinite
        );
    }

    #[test]
    fn bfs_agrees_with_closed_form() {
        let z = z2_h();
        let g = z.group().clone();
        for e in -6..=6i64 {
            let h = g.embed(0, g.direct_factors().unwrap()[0].syllable_power(0, e));
            let o = g.identity();
            assert_eq!(z.dhat_bfs(&o, &h, 3, 12), z.dhat(&o, &h, 3), "b^{e}");
        }

        let a = bx();
        let g = a.group().clone();
        let o = g.identity();
        for e in [1i64, -1, 2, 5] {
            let h = g.syllable_power(0, e);
            assert_eq!(a.dhat_bfs(&o, &h, 5, 3), RelativeDistance::Exceeds(5));
        }
    }

    #[test]
    fn unrestricted_search_finds_geodesics() {
        let a = bx();
        let g = a.group().clone();
        let s = g.parse("x b^4 x^-2").unwrap();
        match a.shortest_path(&g.identity(), &s, 6, 4, false) {
            SearchOutcome::Found(p) => {
                assert_eq!(p.len() as u64, a.length(&s));
                assert_eq!(p.end(&a), s);
            }
            other => panic!("{other:?}"),
        }
    }
}
