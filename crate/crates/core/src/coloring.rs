//! Admissible sign patterns are in bijection with proper 3-colorings of the
//! hypercube graph `C_N` that color `∅` with 0. Walking an edge `K → iK`
//! either increments the color (sign kept) or decrements it (sign flipped).

use crate::error::{Error, Result};
use crate::pattern::{Sign, SignPattern};
use crate::subset::{self, Subset, MAX_N};

/// A coloring `c: 2^N → Z/3`, indexed by subset bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HypercubeColoring {
    n: usize,
    colors: Vec<u8>,
}

impl HypercubeColoring {
    /// Colors are reduced mod 3. Properness is not checked here; see [`is_proper`].
    pub fn new(n: usize, colors: Vec<u8>) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::GroundSetSize(n));
        }
        if colors.len() != 1 << n {
            return Err(Error::SizeMismatch {
                expected: 1 << n,
                got: colors.len(),
            });
        }
        Ok(Self {
            n,
            colors: colors.into_iter().map(|c| c % 3).collect(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(Subset) -> u8) -> Result<Self> {
        Self::new(n, (0..1u32 << n).map(f).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color(&self, k: Subset) -> u8 {
        self.colors[k as usize]
    }
}

/// `c(∅) = 0` and adjacent subsets get different colors.
pub fn is_proper(c: &HypercubeColoring) -> bool {
    first_defect(c).is_none()
}

fn first_defect(c: &HypercubeColoring) -> Option<String> {
    if c.colors[0] != 0 {
        return Some("c(∅) ≠ 0".into());
    }
    for k in 0..1u32 << c.n {
        for i in 0..c.n {
            if !subset::contains(k, i) && c.color(k) == c.color(k | 1 << i) {
                return Some(format!(
                    "edge {} – {}",
                    subset::Label(k),
                    subset::Label(k | 1 << i)
                ));
            }
        }
    }
    None
}

/// Subsets by cardinality, so every predecessor `K` of `iK` comes first.
fn by_cardinality(n: usize) -> Vec<Subset> {
    let mut order: Vec<Subset> = (0..1u32 << n).collect();
    order.sort_by_key(|&k| (subset::card(k), k));
    order
}

/// `s(iK) = s(K)` if `c(iK) = c(K) + 1`, else `-s(K)`. Every incoming edge
/// is checked for agreement.
pub fn coloring_to_pattern(c: &HypercubeColoring) -> Result<SignPattern> {
    if let Some(defect) = first_defect(c) {
        return Err(Error::ImproperColoring(defect));
    }
    let mut signs: Vec<Option<Sign>> = vec![None; 1 << c.n];
    signs[0] = Some(Sign::Plus);
    for k in by_cardinality(c.n).into_iter().skip(1) {
        for i in subset::elements(k) {
            let below = k & !(1 << i);
            let prev = signs[below as usize].expect("lower level assigned");
            let step = if c.color(k) == (c.color(below) + 1) % 3 {
                prev
            } else {
                -prev
            };
            match signs[k as usize] {
                None => signs[k as usize] = Some(step),
                Some(existing) if existing != step => return Err(Error::Inconsistent(k)),
                Some(_) => {}
            }
        }
    }
    SignPattern::from_fn(c.n, |k| signs[k as usize].expect("all assigned"))
}

/// `c(iK) = c(K) + 1` if `s(iK) = s(K)`, else `c(K) - 1`. Fails on patterns
/// that are not admissible (the recursion is then not well defined).
pub fn pattern_to_coloring(s: &SignPattern) -> Result<HypercubeColoring> {
    if !s.is_admissible() {
        return Err(Error::NotAdmissible);
    }
    let n = s.n();
    let mut colors: Vec<Option<u8>> = vec![None; 1 << n];
    colors[0] = Some(0);
    for k in by_cardinality(n).into_iter().skip(1) {
        for i in subset::elements(k) {
            let below = k & !(1 << i);
            let prev = colors[below as usize].expect("lower level assigned");
            let step = if s.get(k) == s.get(below) {
                (prev + 1) % 3
            } else {
                (prev + 2) % 3
            };
            match colors[k as usize] {
                None => colors[k as usize] = Some(step),
                Some(existing) if existing != step => return Err(Error::Inconsistent(k)),
                Some(_) => {}
            }
        }
    }
    HypercubeColoring::new(
        n,
        colors
            .into_iter()
            .map(|c| c.expect("all assigned"))
            .collect(),
    )
}

/// Number of proper 3-colorings of `C_N` with `c(∅) = 0`, by depth-first
/// search over vertices in bitmask order. Independent of the pattern
/// enumerator. Refuses `n > 4`.
pub fn count_colorings_bruteforce(n: usize) -> Result<u64> {
    if n > 4 {
        return Err(Error::TooLarge {
            n,
            reason: "brute-force coloring count is limited to n ≤ 4",
        });
    }
    fn dfs(v: usize, n: usize, colors: &mut [u8]) -> u64 {
        if v == colors.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..3u8 {
            // all neighbours of v below it in bitmask order: v with one bit cleared
            let clash = (0..n).any(|i| v >> i & 1 == 1 && colors[v & !(1 << i)] == c);
            if !clash {
                colors[v] = c;
                total += dfs(v + 1, n, colors);
            }
        }
        total
    }
    let mut colors = vec![0u8; 1 << n];
    Ok(dfs(1, n, &mut colors))
}

/// Every proper coloring with `c(∅) = 0`, for small `n` (≤ 3).
pub fn all_colorings(n: usize) -> Result<Vec<HypercubeColoring>> {
    if n > 3 {
        return Err(Error::TooLarge {
            n,
            reason: "coloring listing is limited to n ≤ 3",
        });
    }
    let size = 1usize << n;
    let mut out = Vec::new();
    let mut colors = vec![0u8; size];
    fn rec(v: usize, n: usize, colors: &mut Vec<u8>, out: &mut Vec<HypercubeColoring>) {
        if v == colors.len() {
            out.push(HypercubeColoring {
                n,
                colors: colors.clone(),
            });
            return;
        }
        for c in 0..3u8 {
            if (0..n).all(|i| v >> i & 1 == 0 || colors[v & !(1 << i)] != c) {
                colors[v] = c;
                rec(v + 1, n, colors, out);
            }
        }
    }
    rec(1, n, &mut colors, &mut out);
    Ok(out)
}
