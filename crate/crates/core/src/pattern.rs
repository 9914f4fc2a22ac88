//! Sign patterns `s: 2^N -> {+,-}` and the diamond axiom.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{self, cardlex_order, Label, Order, Subset, MAX_N};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_negative(neg: bool) -> Self {
        if neg {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    /// `(-1)^k`.
    pub fn parity(k: usize) -> Self {
        Self::from_negative(k % 2 == 1)
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '−' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_negative(self.is_negative() != rhs.is_negative())
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        Sign::from_negative(!self.is_negative())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A total sign pattern on the ground set `{1..n}`, stored as a bitset over
/// subset bitmasks (bit `K` set iff `s(K) = -`). Always `s(∅) = +`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignPattern {
    n: u8,
    neg: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    (1usize << n).div_ceil(64)
}

impl SignPattern {
    fn check_n(n: usize) -> Result<()> {
        if n > MAX_N {
            Err(Error::GroundSetSize(n))
        } else {
            Ok(())
        }
    }

    /// The all-positive pattern.
    pub fn positive(n: usize) -> Result<Self> {
        Self::check_n(n)?;
        Ok(Self {
            n: n as u8,
            neg: vec![0; words_for(n)],
        })
    }

    /// Build from a sign function over bitmasks.
    pub fn from_fn(n: usize, mut f: impl FnMut(Subset) -> Sign) -> Result<Self> {
        let mut s = Self::positive(n)?;
        for k in 0..1u32 << n {
            if f(k).is_negative() {
                s.neg[(k >> 6) as usize] |= 1 << (k & 63);
            }
        }
        if s.is_negative(0) {
            return Err(Error::NegativeEmptySet);
        }
        Ok(s)
    }

    /// Build from signs indexed by bitmask.
    pub fn from_signs(n: usize, signs: &[Sign]) -> Result<Self> {
        if signs.len() != 1 << n.min(MAX_N) || n > MAX_N {
            return Err(Error::SizeMismatch {
                expected: 1 << n.min(MAX_N),
                got: signs.len(),
            });
        }
        Self::from_fn(n, |k| signs[k as usize])
    }

    /// Pack a pattern on `n ≤ 5` from the 32-bit mask with bit `K` set iff `s(K) = -`.
    pub fn from_mask32(n: usize, mask: u32) -> Result<Self> {
        if n > 5 {
            return Err(Error::GroundSetSize(n));
        }
        Self::from_fn(n, |k| Sign::from_negative(mask >> k & 1 == 1))
    }

    /// Inverse of [`SignPattern::from_mask32`]; `None` for `n > 5`.
    pub fn mask32(&self) -> Option<u32> {
        (self.n <= 5).then(|| self.neg[0] as u32)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn ground(&self) -> Subset {
        subset::full(self.n())
    }

    #[inline]
    pub fn is_negative(&self, k: Subset) -> bool {
        self.neg[(k >> 6) as usize] >> (k & 63) & 1 == 1
    }

    #[inline]
    pub fn get(&self, k: Subset) -> Sign {
        Sign::from_negative(self.is_negative(k))
    }

    /// Signs in the requested serialization order.
    pub fn signs_in(&self, order: Order) -> Vec<Sign> {
        order
            .subsets(self.n())
            .into_iter()
            .map(|k| self.get(k))
            .collect()
    }

    /// Text form over `{+,-}` of length `2^n`.
    pub fn to_string_in(&self, order: Order) -> String {
        self.signs_in(order)
            .into_iter()
            .map(Sign::as_char)
            .collect()
    }

    /// Parse the text form. The length must be a power of two and the first
    /// symbol (the empty set) must be `+`. Accepts `-` and `−`.
    pub fn parse_in(text: &str, order: Order) -> Result<Self> {
        let signs: Vec<Sign> = text
            .trim()
            .chars()
            .map(|c| Sign::from_char(c).ok_or_else(|| Error::Parse(format!("bad sign {c:?}"))))
            .collect::<Result<_>>()?;
        let len = signs.len();
        if len == 0 || !len.is_power_of_two() || len > 1 << MAX_N {
            return Err(Error::Parse(format!(
                "pattern length {len} is not 2^n for 0 ≤ n ≤ {MAX_N}"
            )));
        }
        if signs[0].is_negative() {
            return Err(Error::NegativeEmptySet);
        }
        let n = len.trailing_zeros() as usize;
        let mut by_mask = vec![Sign::Plus; len];
        for (k, sign) in order.subsets(n).into_iter().zip(signs) {
            by_mask[k as usize] = sign;
        }
        Self::from_signs(n, &by_mask)
    }

    /// Compare two patterns on the same ground set by their cardlex text form
    /// (`+` before `-`).
    pub fn cmp_cardlex(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.n, other.n);
        for &k in cardlex_order(self.n()) {
            match (self.is_negative(k), other.is_negative(k)) {
                (false, true) => return Ordering::Less,
                (true, false) => return Ordering::Greater,
                _ => {}
            }
        }
        Ordering::Equal
    }

    /// Every diamond axiom holds (and `s(∅) = +`, which the type guarantees).
    pub fn is_admissible(&self) -> bool {
        self.first_violation().is_none()
    }

    /// The first diamond (in [`diamonds`] order) whose axiom fails.
    pub fn first_violation(&self) -> Option<Diamond> {
        diamonds(self.n())
            .into_iter()
            .find(|d| !check_diamond(self, d))
    }

    /// `s^∨(K) = s(N)·s(K^c)`.
    pub fn dual(&self) -> Self {
        let full = self.ground();
        let top = self.get(full);
        Self::from_fn(self.n(), |k| top * self.get(full ^ k)).expect("dual fixes ∅")
    }

    /// `s^co(K) = s(N)·s(K)`.
    pub fn covalue(&self, k: Subset) -> Sign {
        self.get(self.ground()) * self.get(k)
    }

    /// `(-s)(K) = (-1)^|K| s(K)`.
    pub fn negate(&self) -> Self {
        Self::from_fn(self.n(), |k| Sign::parity(subset::card(k)) * self.get(k)).expect("∅ even")
    }

    /// Restriction `s|_K`, re-indexed onto `{1..|K|}` by increasing label.
    pub fn restrict(&self, k: Subset) -> Self {
        let k = k & self.ground();
        Self::from_fn(subset::card(k), |l| self.get(subset::expand(l, k))).expect("∅ kept")
    }

    /// Deletion `s \ K = s|_{K^c}`.
    pub fn delete(&self, k: Subset) -> Self {
        self.restrict(self.ground() & !k)
    }

    /// Contraction `s/K` on `K^c`: `(s/K)(L) = s(K)·s(KL)`.
    pub fn contract(&self, k: Subset) -> Self {
        let k = k & self.ground();
        let rest = self.ground() & !k;
        let base = self.get(k);
        Self::from_fn(subset::card(rest), |l| {
            base * self.get(k | subset::expand(l, rest))
        })
        .expect("s(K)^2 = +")
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in(Order::CardLex))
    }
}

impl fmt::Debug for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignPattern({self})")
    }
}

impl std::str::FromStr for SignPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_in(s, Order::CardLex)
    }
}

impl Serialize for SignPattern {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignPattern {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// The diamond `(ij|K)`: the interval `[K, ijK]` of the boolean lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Diamond {
    i: u8,
    j: u8,
    context: Subset,
}

impl Diamond {
    /// `i`, `j` are 0-based distinct elements; `context` must avoid both.
    pub fn new(i: usize, j: usize, context: Subset) -> Result<Self> {
        if i == j || i >= MAX_N || j >= MAX_N {
            return Err(Error::Precondition(format!("invalid pair ({i},{j})")));
        }
        if subset::contains(context, i) || subset::contains(context, j) {
            return Err(Error::Precondition("context meets the pair".into()));
        }
        let (i, j) = (i.min(j), i.max(j));
        Ok(Self {
            i: i as u8,
            j: j as u8,
            context,
        })
    }

    pub fn i(&self) -> usize {
        self.i as usize
    }

    pub fn j(&self) -> usize {
        self.j as usize
    }

    pub fn context(&self) -> Subset {
        self.context
    }

    /// The four corners `(K, iK, jK, ijK)`.
    pub fn corners(&self) -> [Subset; 4] {
        let (bi, bj) = (1 << self.i, 1 << self.j);
        let k = self.context;
        [k, k | bi, k | bj, k | bi | bj]
    }

    /// The dual diamond `(ij | N \ ijK)`.
    pub fn dual(&self, n: usize) -> Self {
        let [_, _, _, top] = self.corners();
        Self {
            i: self.i,
            j: self.j,
            context: subset::full(n) & !top,
        }
    }
}

impl fmt::Display for Diamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}{}|{})",
            self.i + 1,
            self.j + 1,
            if self.context == 0 {
                "∅".to_string()
            } else {
                Label(self.context).to_string()
            }
        )
    }
}

/// All diamonds `(ij|K)` with `i < j` over `{1..n}`; `C(n,2)·2^(n-2)` of them.
/// Ordered by pair, then by context bitmask.
pub fn diamonds(n: usize) -> Vec<Diamond> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let full = subset::full(n);
    for i in 0..n {
        for j in i + 1..n {
            let rest = full & !(1 << i) & !(1 << j);
            for k in subset::subsets_of(rest) {
                out.push(Diamond {
                    i: i as u8,
                    j: j as u8,
                    context: k,
                });
            }
        }
    }
    out.sort_by_key(|d| (d.i, d.j, d.context));
    out
}

/// `[s(iK) ≠ s(jK)] ⇒ [s(K) ≠ s(ijK)]`.
pub fn check_diamond(s: &SignPattern, d: &Diamond) -> bool {
    let [k, ik, jk, ijk] = d.corners();
    s.get(ik) == s.get(jk) || s.get(k) != s.get(ijk)
}
