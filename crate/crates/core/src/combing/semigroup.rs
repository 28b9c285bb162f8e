use std::collections::HashMap;

use serde::Serialize;

use super::CombingError;
use crate::group::{GroupDescription, GroupElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum FreeSemigroupOutcome {
    /// All `words` positive words of length `1..=L` have distinct values.
    Ok { words: usize },
    /// Two different words (as index sequences into the generators) with
    /// the same value.
    Collision {
        first: Vec<usize>,
        second: Vec<usize>,
        value: String,
    },
}

/// Checks that the words of length at most `max_len` in the letters
/// `t f` (`f` in `F`) represent pairwise distinct elements.
pub fn verify_free_semigroup(
    group: &GroupDescription,
    t: &GroupElement,
    f: &[GroupElement],
    max_len: usize,
    cap: usize,
) -> Result<FreeSemigroupOutcome, CombingError> {
    let gens: Vec<GroupElement> = f.iter().map(|x| group.mul(t, x)).collect();
    let k = gens.len();
    let needed = (1..=max_len as u32).try_fold(0usize, |acc, l| {
        k.checked_pow(l).and_then(|p| acc.checked_add(p))
    });
    match needed {
        Some(n) if n <= cap => {}
        Some(n) => return Err(CombingError::EnumerationCap { cap, needed: n }),
        None => {
            return Err(CombingError::EnumerationCap {
                cap,
                needed: usize::MAX,
            })
        }
    }
    let mut seen: HashMap<GroupElement, Vec<usize>> = HashMap::new();
    let mut layer: Vec<(Vec<usize>, GroupElement)> = vec![(Vec::new(), group.identity())];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * k);
        for (word, value) in &layer {
            for (i, s) in gens.iter().enumerate() {
                let mut w = word.clone();
                w.push(i);
                let v = group.mul(value, s);
                if let Some(prev) = seen.get(&v) {
                    return Ok(FreeSemigroupOutcome::Collision {
                        first: prev.clone(),
                        second: w,
                        value: group.format(&v),
                    });
                }
                seen.insert(v.clone(), w.clone());
                next.push((w, v));
            }
        }
        layer = next;
    }
    Ok(FreeSemigroupOutcome::Ok { words: seen.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{CyclicFactor, Order};

    #[test]
    fn free_product_generators_are_free() {
        let g = GroupDescription::free_product(vec![
            CyclicFactor::new("b", Order::Infinite),
            CyclicFactor::new("x", Order::Infinite),
        ])
        .unwrap();
        let t = g.parse("b").unwrap();
        let f = [g.parse("x").unwrap(), g.parse("x^-1").unwrap()];
        assert_eq!(
            verify_free_semigroup(&g, &t, &f, 8, 1 << 20).unwrap(),
            FreeSemigroupOutcome::Ok { words: 510 }
        );
        assert_eq!(
            verify_free_semigroup(&g, &t, &f[..1], 12, 1 << 20).unwrap(),
            FreeSemigroupOutcome::Ok { words: 12 }
        );
        assert!(matches!(
            verify_free_semigroup(&g, &t, &f, 30, 1000),
            Err(CombingError::EnumerationCap { .. })
        ));
    }

    #[test]
    fn abelian_collision() {
        let z = GroupDescription::free(1).unwrap();
        let f = [z.parse("x").unwrap(), z.parse("x^2").unwrap()];
        match verify_free_semigroup(&z, &z.identity(), &f, 3, 1000).unwrap() {
            FreeSemigroupOutcome::Collision {
                first,
                second,
                value,
            } => {
                assert_ne!(first, second);
                assert_eq!(value, "x^2");
            }
            other => panic!("{other:?}"),
        }
    }
}
