//! Subsets of a ground set `{1..n}` as bitmasks.
//!
//! Element `i` (1-based, as printed) is bit `i - 1`. All library functions take
//! 0-based element indices; only parsing and display use the 1-based labels.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest supported ground-set size.
pub const MAX_N: usize = 12;

/// Bitmask of a subset of the ground set.
pub type Subset = u32;

#[inline]
pub fn full(n: usize) -> Subset {
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn card(k: Subset) -> usize {
    k.count_ones() as usize
}

#[inline]
pub fn contains(k: Subset, i: usize) -> bool {
    k >> i & 1 == 1
}

/// Ascending 0-based elements of `k`.
pub fn elements(k: Subset) -> Vec<usize> {
    let mut out = Vec::with_capacity(card(k));
    let mut rest = k;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Subset {
    elems.into_iter().fold(0, |acc, i| acc | 1 << i)
}

/// Compress the bits of `k` that lie in `ground` into a contiguous mask,
/// keeping the relative order of elements. This re-indexes a subset of
/// `ground` onto `{0..|ground|}` by increasing original label.
pub fn compress(k: Subset, ground: Subset) -> Subset {
    let mut out = 0;
    let mut pos = 0;
    let mut rest = ground;
    while rest != 0 {
        let b = rest.trailing_zeros();
        if k >> b & 1 == 1 {
            out |= 1 << pos;
        }
        pos += 1;
        rest &= rest - 1;
    }
    out
}

/// Inverse of [`compress`]: spread the low `|ground|` bits of `k` onto the
/// positions of `ground`.
pub fn expand(k: Subset, ground: Subset) -> Subset {
    let mut out = 0;
    let mut pos = 0;
    let mut rest = ground;
    while rest != 0 {
        let b = rest.trailing_zeros();
        if k >> pos & 1 == 1 {
            out |= 1 << b;
        }
        pos += 1;
        rest &= rest - 1;
    }
    out
}

/// Iterate over all subsets of `ground` (including the empty set and `ground`).
pub fn subsets_of(ground: Subset) -> impl Iterator<Item = Subset> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == ground {
            None
        } else {
            Some((cur.wrapping_sub(ground)) & ground)
        };
        Some(cur)
    })
}

/// Subsets ordered by cardinality, then lexicographically on their sorted
/// element tuples: `∅, 1, 2, 3, 12, 13, 23, 123` for `n = 3`.
pub fn cardlex_order(n: usize) -> &'static [Subset] {
    assert!(n <= MAX_N, "ground set too large");
    static TABLES: [OnceLock<Vec<Subset>>; MAX_N + 1] = [const { OnceLock::new() }; MAX_N + 1];
    TABLES[n].get_or_init(|| {
        let mut all: Vec<Subset> = (0..1u32 << n).collect();
        all.sort_by_key(|&k| (card(k), elements(k)));
        all
    })
}

/// Position of every subset in [`cardlex_order`], indexed by bitmask.
pub fn cardlex_rank(n: usize) -> &'static [usize] {
    assert!(n <= MAX_N, "ground set too large");
    static TABLES: [OnceLock<Vec<usize>>; MAX_N + 1] = [const { OnceLock::new() }; MAX_N + 1];
    TABLES[n].get_or_init(|| {
        let order = cardlex_order(n);
        let mut rank = vec![0; order.len()];
        for (r, &k) in order.iter().enumerate() {
            rank[k as usize] = r;
        }
        rank
    })
}

/// Serialization order for sign vectors and other `2^n`-indexed data.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Order {
    /// Cardinality first, then lexicographic on sorted elements.
    #[default]
    CardLex,
    /// Plain bitmask order `0, 1, 2, ..., 2^n - 1`.
    Bitmask,
}

impl Order {
    pub fn subsets(self, n: usize) -> Vec<Subset> {
        match self {
            Order::CardLex => cardlex_order(n).to_vec(),
            Order::Bitmask => (0..1u32 << n).collect(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Order::CardLex => "cardlex",
            Order::Bitmask => "bitmask",
        }
    }
}

impl std::str::FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cardlex" => Ok(Order::CardLex),
            "bitmask" => Ok(Order::Bitmask),
            other => Err(Error::Parse(format!("unknown order {other:?}"))),
        }
    }
}

/// Display helper printing a subset with 1-based labels, e.g. `{1,3}` as `13`
/// and `∅` for the empty set. Labels above 9 are comma-separated.
pub struct Label(pub Subset);

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("∅");
        }
        let elems = elements(self.0);
        let wide = elems.iter().any(|&i| i >= 9);
        for (idx, i) in elems.iter().enumerate() {
            if wide && idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

/// Parse a 1-based element list such as `1,3`, `13`, `{1,3}` or `∅`.
pub fn parse_label(text: &str, n: usize) -> Result<Subset> {
    let t = text
        .trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .trim();
    if t.is_empty() || t == "∅" || t == "-" {
        return Ok(0);
    }
    let parts: Vec<&str> = if t.contains(',') {
        t.split(',').map(str::trim).collect()
    } else {
        t.split("").filter(|p| !p.is_empty()).collect()
    };
    let mut k = 0;
    for p in parts {
        let v: usize = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad element {p:?} in {text:?}")))?;
        if v == 0 || v > n {
            return Err(Error::Parse(format!("element {v} outside 1..={n}")));
        }
        k |= 1 << (v - 1);
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardlex_matches_table_caption() {
        let labels: Vec<String> = cardlex_order(3)
            .iter()
            .map(|&k| Label(k).to_string())
            .collect();
        assert_eq!(labels, ["∅", "1", "2", "3", "12", "13", "23", "123"]);
        let rank = cardlex_rank(3);
        for (r, &k) in cardlex_order(3).iter().enumerate() {
            assert_eq!(rank[k as usize], r);
        }
    }

    #[test]
    fn compress_expand_roundtrip() {
        let ground = 0b10110;
        for k in subsets_of(ground) {
            assert_eq!(expand(compress(k, ground), ground), k);
        }
        assert_eq!(compress(0b10010, ground), 0b101);
        assert_eq!(subsets_of(ground).count(), 8);
    }

    #[test]
    fn labels_parse() {
        assert_eq!(parse_label("13", 3).unwrap(), 0b101);
        assert_eq!(parse_label("{1,3}", 3).unwrap(), 0b101);
        assert_eq!(parse_label("∅", 3).unwrap(), 0);
        assert!(parse_label("4", 3).is_err());
        assert_eq!(Label(0b101).to_string(), "13");
    }
}
