use super::{AlphabetPath, GeneratingAlphabet};
use crate::group::GroupElement;

/// A maximal run of consecutive `H`-letters. On a loop a run may wrap
/// around the base point, in which case `end < start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HComponent {
    /// Index of the first letter.
    pub start: usize,
    /// One past the index of the last letter (mod the loop length when
    /// wrapping).
    pub end: usize,
    pub wraps: bool,
    /// First and last vertex of the run.
    pub from: GroupElement,
    pub to: GroupElement,
    /// Representative of the common coset `from·H = to·H`.
    pub coset: GroupElement,
    /// No other component lies in the same coset.
    pub isolated: bool,
}

impl HComponent {
    pub fn len(&self, path_len: usize) -> usize {
        if self.wraps {
            path_len - self.start + self.end
        } else {
            self.end - self.start
        }
    }

    pub fn contains(&self, idx: usize) -> bool {
        if self.wraps {
            idx >= self.start || idx < self.end
        } else {
            (self.start..self.end).contains(&idx)
        }
    }
}

/// `H`-components of `path`. When the path is closed and both its first and
/// last letters are `H`-letters the two end runs are one component.
pub fn h_components(alphabet: &GeneratingAlphabet, path: &AlphabetPath) -> Vec<HComponent> {
    let verts = path.vertices(alphabet);
    let n = path.letters.len();
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < n {
        if path.letters[i].is_h() {
            let s = i;
            while i < n && path.letters[i].is_h() {
                i += 1;
            }
            runs.push((s, i));
        } else {
            i += 1;
        }
    }
    let closed = n > 0 && verts[0] == verts[n];
    let mut comps: Vec<HComponent> = Vec::new();
    let merge = closed && runs.len() >= 2 && runs[0].0 == 0 && runs.last().unwrap().1 == n;
    let inner = if merge {
        &runs[1..runs.len() - 1]
    } else {
        &runs[..]
    };
    for &(s, e) in inner {
        comps.push(HComponent {
            start: s,
            end: e,
            wraps: false,
            from: verts[s].clone(),
            to: verts[e].clone(),
            coset: alphabet.coset_rep(&verts[s]),
            isolated: true,
        });
    }
    if merge {
        let (s, _) = *runs.last().unwrap();
        let (_, e) = runs[0];
        comps.push(HComponent {
            start: s,
            end: e,
            wraps: true,
            from: verts[s].clone(),
            to: verts[e].clone(),
            coset: alphabet.coset_rep(&verts[s]),
            isolated: true,
        });
        comps.sort_by_key(|c| c.start);
    }
    for i in 0..comps.len() {
        comps[i].isolated = !comps
            .iter()
            .enumerate()
            .any(|(j, c)| j != i && c.coset == comps[i].coset);
    }
    comps
}
