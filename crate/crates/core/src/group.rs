//! The hyperoctahedral group `(Z/2)^N ⋊ S_N` acting on sign patterns.
//!
//! Permutations act by `(π·s)(K) = s(π(K))`, swaps by
//! `(Z·s)(K) = (-1)^|Z∩K| s(Z) s(Z⊕K)`. A [`GroupElement`] `(Z, π)` acts as
//! "swap `Z`, then permute by `π`".

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::pattern::{Sign, SignPattern};
use crate::subset::{self, Subset};

/// A bijection of `{0..n}`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n as u8).collect())
    }

    /// `images[i] = π(i)`, 0-based. Fails unless this is a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation);
            }
        }
        Ok(Self(images.into_iter().map(|x| x as u8).collect()))
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// Image `π(K)` of a subset.
    pub fn image(&self, k: Subset) -> Subset {
        let mut out = 0;
        let mut rest = k;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            out |= 1 << self.0[b];
            rest &= rest - 1;
        }
        out
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Self(inv)
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `(π·s)(K) = s(π(K))`.
pub fn apply_perm(s: &SignPattern, perm: &Permutation) -> Result<SignPattern> {
    if perm.len() != s.n() {
        return Err(Error::NotAPermutation);
    }
    Ok(SignPattern::from_fn(s.n(), |k| s.get(perm.image(k))).expect("π(∅) = ∅"))
}

/// `(Z·s)(K) = (-1)^|Z∩K| · s(Z) · s(Z⊕K)`.
pub fn apply_swap(s: &SignPattern, z: Subset) -> SignPattern {
    let z = z & s.ground();
    let sz = s.get(z);
    SignPattern::from_fn(s.n(), |k| {
        Sign::parity(subset::card(z & k)) * sz * s.get(z ^ k)
    })
    .expect("s(Z)^2 = +")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub swap: Subset,
    pub perm: Permutation,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        Self {
            swap: 0,
            perm: Permutation::identity(n),
        }
    }

    pub fn new(swap: Subset, perm: Permutation) -> Result<Self> {
        if swap & !subset::full(perm.len()) != 0 {
            return Err(Error::Precondition(
                "swap set outside the ground set".into(),
            ));
        }
        Ok(Self { swap, perm })
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// The element acting as `self` followed by `next`.
    ///
    /// Uses `Z·(π·s) = π·((πZ)·s)` and `π·(ρ·s) = (ρ∘π)·s`.
    pub fn then(&self, next: &GroupElement) -> GroupElement {
        GroupElement {
            swap: self.swap ^ self.perm.image(next.swap),
            perm: self.perm.compose(&next.perm),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "swap {{{}}} perm {}",
            subset::Label(self.swap),
            self.perm
        )
    }
}

/// `apply_perm(apply_swap(s, g.swap), g.perm)`.
pub fn apply_group(s: &SignPattern, g: &GroupElement) -> Result<SignPattern> {
    apply_perm(&apply_swap(s, g.swap), &g.perm)
}

/// A group element `g` with `g·s` positive on every singleton, following the
/// constructive argument: keep `{1..k-1}` positive definite, move a negative
/// singleton to position `k`, swap `k`.
pub fn positive_singleton_form(s: &SignPattern) -> Result<(GroupElement, SignPattern)> {
    if !s.is_admissible() {
        return Err(Error::NotAdmissible);
    }
    let n = s.n();
    let mut g = GroupElement::identity(n);
    let mut cur = s.clone();
    for k in 0..n {
        let Some(j) = (0..n).find(|&j| cur.is_negative(1 << j)) else {
            break;
        };
        debug_assert!(j >= k, "prefix {{1..{k}}} is positive definite");
        let step = GroupElement {
            swap: 0,
            perm: Permutation::transposition(n, j, k),
        }
        .then(&GroupElement {
            swap: 1 << k,
            perm: Permutation::identity(n),
        });
        cur = apply_group(&cur, &step)?;
        g = g.then(&step);
    }
    Ok((g, cur))
}

/// Generators of the hyperoctahedral group: adjacent transpositions and
/// single-element swaps.
pub fn generators(n: usize) -> Vec<GroupElement> {
    let mut gens = Vec::with_capacity(2 * n);
    for i in 0..n.saturating_sub(1) {
        gens.push(GroupElement {
            swap: 0,
            perm: Permutation::transposition(n, i, i + 1),
        });
    }
    for i in 0..n {
        gens.push(GroupElement {
            swap: 1 << i,
            perm: Permutation::identity(n),
        });
    }
    gens
}

/// Apply one generator; cheaper than [`apply_group`] for the two generator
/// shapes.
pub(crate) fn apply_generator(s: &SignPattern, g: &GroupElement) -> SignPattern {
    if g.swap == 0 {
        apply_perm(s, &g.perm).expect("generator matches ground set")
    } else {
        apply_swap(s, g.swap)
    }
}

/// The full orbit of `s`, by breadth-first search over generators.
pub fn orbit(s: &SignPattern) -> Vec<SignPattern> {
    let gens = generators(s.n());
    let mut seen: HashSet<SignPattern> = HashSet::from([s.clone()]);
    let mut queue = VecDeque::from([s.clone()]);
    let mut out = Vec::new();
    while let Some(cur) = queue.pop_front() {
        for g in &gens {
            let next = apply_generator(&cur, g);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(cur);
    }
    out
}

/// The orbit member whose cardlex text form is lexicographically smallest.
pub fn canonical_form(s: &SignPattern) -> SignPattern {
    orbit(s)
        .into_iter()
        .min_by(|a, b| a.cmp_cardlex(b))
        .expect("orbit contains s")
}
