//! Reducibility of sign patterns and flag sign changes.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::Permutation;
use crate::pattern::{Sign, SignPattern};
use crate::subset::{self, Label, Subset};

/// A partition of the ground set into nonempty disjoint blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    blocks: Vec<Subset>,
}

impl Decomposition {
    /// Blocks are sorted by their smallest element.
    pub fn new(n: usize, mut blocks: Vec<Subset>) -> Result<Self> {
        let mut seen = 0;
        for &b in &blocks {
            if b == 0 || b & seen != 0 {
                return Err(Error::Precondition(
                    "blocks must be nonempty and disjoint".into(),
                ));
            }
            seen |= b;
        }
        if seen != subset::full(n) {
            return Err(Error::Precondition(
                "blocks must cover the ground set".into(),
            ));
        }
        blocks.sort_by_key(|b| b.trailing_zeros());
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn is_complete(&self) -> bool {
        self.blocks.iter().all(|&b| subset::card(b) == 1)
    }

    /// `s(I) = ∏ s|_{K_i}(I ∩ K_i)` for every `I`.
    pub fn is_valid_for(&self, s: &SignPattern) -> bool {
        (0..1u32 << s.n()).all(|i| {
            let product = self
                .blocks
                .iter()
                .fold(Sign::Plus, |acc, &b| acc * s.get(i & b));
            product == s.get(i)
        })
    }

    /// Common refinement of two partitions of the same ground set.
    pub fn refine(&self, other: &Self) -> Self {
        let mut blocks: Vec<Subset> = self
            .blocks
            .iter()
            .flat_map(|&a| other.blocks.iter().map(move |&b| a & b))
            .filter(|&b| b != 0)
            .collect();
        blocks.sort_by_key(|b| b.trailing_zeros());
        Self { blocks }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "{{{}}}", Label(*b))?;
        }
        Ok(())
    }
}

/// The unique minimal decomposition: the common refinement of every valid
/// bipartition `N = KL`.
pub fn irreducible_decomposition(s: &SignPattern) -> Decomposition {
    let n = s.n();
    let full = s.ground();
    let mut result = Decomposition {
        blocks: if n == 0 { vec![] } else { vec![full] },
    };
    if n < 2 {
        return result;
    }
    // K ranges over proper subsets containing element 1: one per bipartition.
    let rest = full & !1;
    for tail in subset::subsets_of(rest) {
        let k = 1 | tail;
        if k == full {
            continue;
        }
        let split = Decomposition {
            blocks: vec![k, full & !k],
        };
        if split.is_valid_for(s) {
            result = result.refine(&split);
        }
    }
    result
}

/// Number of sign changes in `s(∅), s(π1), s(π1π2), …, s(N)`.
pub fn sign_changes_along_flag(s: &SignPattern, order: &Permutation) -> Result<usize> {
    if order.len() != s.n() {
        return Err(Error::NotAPermutation);
    }
    let mut prefix = 0;
    let mut prev = s.get(0);
    let mut changes = 0;
    for step in 0..s.n() {
        prefix |= 1 << order.apply(step);
        let cur = s.get(prefix);
        if cur != prev {
            changes += 1;
        }
        prev = cur;
    }
    Ok(changes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> SignPattern {
        text.parse().unwrap()
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(
            irreducible_decomposition(&p("++++++++")).blocks(),
            &[0b001, 0b010, 0b100]
        );
        assert!(irreducible_decomposition(&p("++++++++")).is_complete());
        assert_eq!(irreducible_decomposition(&p("+++++++-")).blocks(), &[0b111]);
        assert_eq!(
            irreducible_decomposition(&p("+")).blocks(),
            &[] as &[Subset]
        );
        // diag(1,-1) block structure with an independent third element
        let s = p("++-+-+--");
        assert!(irreducible_decomposition(&s).is_valid_for(&s));
    }

    #[test]
    fn decomposition_validation() {
        assert!(Decomposition::new(3, vec![0b011, 0b110]).is_err());
        assert!(Decomposition::new(3, vec![0b011]).is_err());
        assert!(Decomposition::new(3, vec![0b100, 0b011]).is_ok());
    }

    #[test]
    fn flag_sign_changes() {
        let id = Permutation::identity(3);
        assert_eq!(sign_changes_along_flag(&p("++++++++"), &id).unwrap(), 0);
        assert_eq!(sign_changes_along_flag(&p("+++++++-"), &id).unwrap(), 1);
        assert_eq!(sign_changes_along_flag(&p("++++----"), &id).unwrap(), 1);
        assert!(sign_changes_along_flag(&p("++++"), &id).is_err());
    }
}
