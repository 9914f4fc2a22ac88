use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{int, sign_of, Rational, RationalSymMatrix};
use crate::pattern::Sign;
use crate::subset;

/// Signs `ℓ(0), …, ℓ(n)` of the nested minors `pr({1..k})`, with `ℓ(0) = +`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeadingPattern {
    signs: Vec<Sign>,
}

impl LeadingPattern {
    pub fn new(signs: Vec<Sign>) -> Result<Self> {
        match signs.first() {
            Some(Sign::Plus) => Ok(Self { signs }),
            Some(Sign::Minus) => Err(Error::NegativeEmptySet),
            None => Err(Error::Parse("empty leading pattern".into())),
        }
    }

    /// Bit `k - 1` of `mask` gives `ℓ(k)`.
    pub fn from_mask(n: usize, mask: u32) -> Self {
        let signs = std::iter::once(Sign::Plus)
            .chain((0..n).map(|k| Sign::from_negative(mask >> k & 1 == 1)))
            .collect();
        Self { signs }
    }

    /// All `2^n` leading patterns of size `n`.
    pub fn all(n: usize) -> impl Iterator<Item = Self> {
        (0..1u32 << n).map(move |m| Self::from_mask(n, m))
    }

    pub fn n(&self) -> usize {
        self.signs.len() - 1
    }

    pub fn get(&self, k: usize) -> Sign {
        self.signs[k]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }
}

impl fmt::Display for LeadingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.signs
            .iter()
            .try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

impl FromStr for LeadingPattern {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let signs = text
            .trim()
            .chars()
            .map(|c| Sign::from_char(c).ok_or_else(|| Error::Parse(format!("bad sign {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(signs)
    }
}

/// `ℓ(k) = sgn pr({1..k})`.
pub fn leading_signs(m: &RationalSymMatrix) -> Result<LeadingPattern> {
    let signs = m
        .leading_minors()
        .iter()
        .enumerate()
        .map(|(k, p)| sign_of(p).ok_or(Error::NotPrincipallyRegular(subset::full(k))))
        .collect::<Result<Vec<_>>>()?;
    LeadingPattern::new(signs)
}

/// Diagonal matrix with `d_k = ℓ(k)·ℓ(k-1)`, whose leading minors have signs `ℓ`.
pub fn lpr_diagonal_representative(l: &LeadingPattern) -> RationalSymMatrix {
    let d: Vec<Rational> = (1..=l.n())
        .map(|k| match l.get(k) * l.get(k - 1) {
            Sign::Plus => int(1),
            Sign::Minus => int(-1),
        })
        .collect();
    RationalSymMatrix::diagonal(&d)
}

/// `bᵀ A⁻¹ b` with `A` the leading `k×k` block and `b` the first `k` entries
/// of column `k`; `σ_kk − h` is then the Schur complement `p_{k+1}/p_k`.
fn leading_quadratic_form(rows: &[Vec<Rational>], k: usize) -> Result<Rational> {
    if k == 0 {
        return Ok(Rational::zero());
    }
    let a = RationalSymMatrix::from_rows(rows[..k].iter().map(|r| r[..k].to_vec()).collect())?;
    let inv = a.inverse()?;
    let mut h = Rational::zero();
    for i in 0..k {
        for j in 0..k {
            h += &rows[i][k] * inv.get(i, j) * &rows[j][k];
        }
    }
    Ok(h)
}

/// Keep the off-diagonal entries of `Σ` and rewrite the diagonal in order,
/// `σ′_kk = h′ + ℓ(k)ℓ(k-1)ℓ′(k)ℓ′(k-1)·(σ_kk − h)`, so that the leading
/// minors of the result have signs `ℓ′`.
pub fn lpr_transport(
    m: &RationalSymMatrix,
    from: &LeadingPattern,
    to: &LeadingPattern,
) -> Result<RationalSymMatrix> {
    let n = m.n();
    for l in [from, to] {
        if l.n() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: l.n(),
            });
        }
    }
    if leading_signs(m)? != *from {
        return Err(Error::Precondition(
            "leading minors of the matrix do not have the source signs".into(),
        ));
    }
    let rows = m.rows();
    let mut out = rows.clone();
    for k in 0..n {
        let h = leading_quadratic_form(&rows, k)?;
        let h2 = leading_quadratic_form(&out, k)?;
        let c = from.get(k + 1) * from.get(k) * to.get(k + 1) * to.get(k);
        let delta = &rows[k][k] - h;
        out[k][k] = match c {
            Sign::Plus => h2 + delta,
            Sign::Minus => h2 - delta,
        };
    }
    RationalSymMatrix::from_rows(out)
}
