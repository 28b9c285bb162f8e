use num_bigint::BigInt;

use super::{Exponent, GroupDescription, GroupElement, GroupError};

pub(super) fn parse_element(
    group: &GroupDescription,
    input: &str,
) -> Result<GroupElement, GroupError> {
    let err = |reason: &str| GroupError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let trimmed = input.trim();
    match group {
        GroupDescription::Direct { factors } => {
            let inner = trimmed
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| err("direct-product elements are written `(w1, w2, ...)`"))?;
            let parts = split_top_level(inner).ok_or_else(|| err("unbalanced parentheses"))?;
            if parts.len() != factors.len() {
                return Err(err(&format!(
                    "expected {} components, found {}",
                    factors.len(),
                    parts.len()
                )));
            }
            factors
                .iter()
                .zip(parts)
                .map(|(f, p)| parse_element(f, p))
                .collect::<Result<Vec<_>, _>>()
                .map(GroupElement::Tuple)
        }
        _ => {
            if trimmed.is_empty() {
                return Err(err("empty word (write `1` for the identity)"));
            }
            let mut acc = group.identity();
            for token in trimmed.split(|c: char| c.is_whitespace() || c == '*' || c == '.') {
                if token.is_empty() || token == "1" || token == "e" {
                    continue;
                }
                let (name, exp) = match token.split_once('^') {
                    Some((n, e)) => {
                        let e: BigInt = e
                            .parse()
                            .map_err(|_| err(&format!("bad exponent in `{token}`")))?;
                        (n, Exponent::from_big(e))
                    }
                    None => (token, Exponent::ONE),
                };
                let idx = group
                    .factor_index(name)
                    .ok_or_else(|| err(&format!("unknown generator `{name}`")))?;
                acc = group.mul(&acc, &group.syllable_power(idx, exp));
            }
            Ok(acc)
        }
    }
}

/// Splits on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Option<Vec<&str>> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut parts = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&s[start..]);
    Some(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{CyclicFactor, Order};

    #[test]
    fn parses_and_reduces() {
        let g = GroupDescription::free_named(["x", "b"]).unwrap();
        let w = g.parse("x b^3 b^-3 x^-1").unwrap();
        assert!(w.is_identity());
        assert_eq!(g.format(&g.parse(" x  b^3 x^-1 ").unwrap()), "x b^3 x^-1");
        assert!(g.parse("q").is_err());
        assert!(g.parse("x^").is_err());
        assert!(g.parse("").is_err());
        assert!(g.parse("1").unwrap().is_identity());
    }

    #[test]
    fn nested_direct_products() {
        let inner = GroupDescription::direct(vec![
            GroupDescription::free(1).unwrap(),
            GroupDescription::free_product(vec![CyclicFactor::new("c", Order::Finite(5))]).unwrap(),
        ])
        .unwrap();
        let g = GroupDescription::direct(vec![inner, GroupDescription::free(2).unwrap()]).unwrap();
        let e = g.parse("((x^2, c^3), x y)").unwrap();
        assert_eq!(g.format(&e), "((x^2, c^-2), x y)");
        assert!(g.parse("((x, c), x, y)").is_err());
        assert!(g.parse("(x, c)").is_err());
    }

    #[test]
    fn huge_exponents_survive() {
        let g = GroupDescription::free(1).unwrap();
        let s = "x^123456789012345678901234567890";
        assert_eq!(g.format(&g.parse(s).unwrap()), s);
    }
}
