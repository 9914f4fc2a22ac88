use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{self, format_rational, parse_rational, sign_of, Rational};
use crate::error::{Error, Result};
use crate::pattern::{Sign, SignPattern};
use crate::subset::{self, cardlex_order, Subset, MAX_N};

/// Exact symmetric matrix over the rationals, rows and columns indexed by
/// `{0..n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalSymMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RationalSymMatrix {
    /// Build from full rows; fails unless square and symmetric.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_N {
            return Err(Error::GroundSetSize(n));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        if (0..n).any(|i| (0..i).any(|j| rows[i][j] != rows[j][i])) {
            return Err(Error::NotSymmetric);
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from the upper triangle: `f(i, j)` is only called with `i ≤ j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                entries[j * n + i] = v.clone();
                entries[i * n + j] = v;
            }
        }
        Self { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        Self::from_fn(diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Constant diagonal with off-diagonals `(σ12, σ13, σ23)` as in the
    /// three-element tables.
    pub fn three(diag: Rational, off: [Rational; 3]) -> Self {
        let [a, b, c] = off;
        Self::from_fn(3, |i, j| match (i, j) {
            (0, 1) => a.clone(),
            (0, 2) => b.clone(),
            (1, 2) => c.clone(),
            _ => diag.clone(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Same matrix with the diagonal replaced.
    pub fn with_diagonal(&self, diag: &[Rational]) -> Self {
        let mut out = self.clone();
        for (i, d) in diag.iter().enumerate() {
            out.entries[i * self.n + i] = d.clone();
        }
        out
    }

    /// The submatrix on rows `rows` and columns `cols`, both ascending.
    pub fn block(&self, rows: Subset, cols: Subset) -> Vec<Vec<Rational>> {
        let cs = subset::elements(cols);
        subset::elements(rows)
            .into_iter()
            .map(|i| cs.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Principal submatrix `Σ_K`, re-indexed by increasing label.
    pub fn principal_submatrix(&self, k: Subset) -> Self {
        let idx = subset::elements(k);
        Self::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]).clone())
    }

    /// `pr(K:Σ) = det Σ_K`, with `pr(∅) = 1`.
    pub fn principal_minor(&self, k: Subset) -> Rational {
        rational::det(&self.block(k, k))
    }

    /// All `2^n` principal minors.
    pub fn all_principal_minors(&self) -> MinorVector {
        MinorVector {
            n: self.n,
            p: (0..1u32 << self.n)
                .map(|k| self.principal_minor(k))
                .collect(),
        }
    }

    /// Signs of all principal minors; the first vanishing minor in cardlex
    /// order is reported.
    pub fn sign_pattern(&self) -> Result<SignPattern> {
        self.all_principal_minors().sign_pattern()
    }

    /// Signs of the leading minors `pr({1..k})`, `k = 0..n`.
    pub fn leading_minors(&self) -> Vec<Rational> {
        (0..=self.n)
            .map(|k| self.principal_minor(subset::full(k)))
            .collect()
    }

    /// Schur complement `Σ^K = C - Bᵀ A⁻¹ B` on `K^c`.
    pub fn schur_complement(&self, k: Subset) -> Result<Self> {
        let full = subset::full(self.n);
        let k = k & full;
        if k == 0 {
            return Ok(self.clone());
        }
        let rest = full & !k;
        let a_inv = Dense(self.block(k, k)).inverse()?;
        let b = Dense(self.block(k, rest));
        let c = self.block(rest, rest);
        let correction = b.transpose().mul(&a_inv).mul(&b);
        let m = rest.count_ones() as usize;
        Ok(Self::from_fn(m, |i, j| &c[i][j] - &correction.0[i][j]))
    }

    /// Exact inverse.
    pub fn inverse(&self) -> Result<Self> {
        let inv = Dense(self.rows()).inverse()?;
        Self::from_rows(inv.0)
    }

    /// The swap action `Z·Σ = (A - ΣB)⁻¹ (B + ΣA)` with `A = diag(i ∉ Z)`
    /// and `B = -diag(i ∈ Z)`.
    pub fn swap(&self, z: Subset) -> Result<Self> {
        let n = self.n;
        let in_z = |j: usize| subset::contains(z, j);
        // Column j of A - ΣB is e_j for j ∉ Z and Σ e_j for j ∈ Z;
        // column j of B + ΣA is Σ e_j for j ∉ Z and -e_j for j ∈ Z.
        let lhs = Dense(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match (in_z(j), i == j) {
                            (true, _) => self.get(i, j).clone(),
                            (false, true) => Rational::one(),
                            (false, false) => Rational::zero(),
                        })
                        .collect()
                })
                .collect(),
        );
        let rhs = Dense(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match (in_z(j), i == j) {
                            (false, _) => self.get(i, j).clone(),
                            (true, true) => -Rational::one(),
                            (true, false) => Rational::zero(),
                        })
                        .collect()
                })
                .collect(),
        );
        let out = lhs.inverse()?.mul(&rhs);
        Self::from_rows(out.0)
    }

    /// `D Σ D` for a diagonal `D`.
    pub fn congruence_by_diagonal(&self, d: &[Rational]) -> Self {
        Self::from_fn(self.n, |i, j| &d[i] * self.get(i, j) * &d[j])
    }

    /// Block-diagonal assembly, blocks in order.
    pub fn block_diagonal(blocks: &[&RationalSymMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut entries = vec![Rational::zero(); n * n];
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    entries[(off + i) * n + off + j] = b.get(i, j).clone();
                }
            }
            off += b.n;
        }
        Self { n, entries }
    }

    /// `t·A + (1 - t)·B`.
    pub fn lerp(a: &Self, b: &Self, t: &Rational) -> Self {
        let s = Rational::one() - t;
        Self::from_fn(a.n, |i, j| t * a.get(i, j) + &s * b.get(i, j))
    }

    /// Rows as literal strings, for the JSON formats.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| parse_rational(x))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.entries
            .iter()
            .map(|x| x.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

impl fmt::Display for RationalSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_strings() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalSymMatrix{:?}", self.to_strings())
    }
}

/// JSON form `{"n": k, "entries": [["p/q", ...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

impl From<&RationalSymMatrix> for MatrixJson {
    fn from(m: &RationalSymMatrix) -> Self {
        Self {
            n: m.n,
            entries: m.to_strings(),
        }
    }
}

impl TryFrom<MatrixJson> for RationalSymMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        let m = Self::from_strings(&j.entries)?;
        if m.n != j.n {
            return Err(Error::SizeMismatch {
                expected: j.n,
                got: m.n,
            });
        }
        Ok(m)
    }
}

/// All principal minors `p_K`, indexed by bitmask; `p_∅ = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorVector {
    n: usize,
    p: Vec<Rational>,
}

impl MinorVector {
    pub fn new(n: usize, p: Vec<Rational>) -> Result<Self> {
        if p.len() != 1 << n {
            return Err(Error::SizeMismatch {
                expected: 1 << n,
                got: p.len(),
            });
        }
        if !p[0].is_one() {
            return Err(Error::Precondition("p_∅ must be 1".into()));
        }
        Ok(Self { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: Subset) -> &Rational {
        &self.p[k as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.p
    }

    pub fn sign_pattern(&self) -> Result<SignPattern> {
        for &k in cardlex_order(self.n) {
            if self.p[k as usize].is_zero() {
                return Err(Error::NotPrincipallyRegular(k));
            }
        }
        SignPattern::from_fn(self.n, |k| {
            sign_of(&self.p[k as usize]).unwrap_or(Sign::Plus)
        })
    }
}

/// Dense square matrix for the non-symmetric intermediates.
#[derive(Clone, Debug)]
struct Dense(Vec<Vec<Rational>>);

impl Dense {
    fn transpose(&self) -> Dense {
        let rows = self.0.len();
        let cols = self.0.first().map_or(0, Vec::len);
        Dense(
            (0..cols)
                .map(|j| (0..rows).map(|i| self.0[i][j].clone()).collect())
                .collect(),
        )
    }

    fn mul(&self, other: &Dense) -> Dense {
        let inner = other.0.len();
        let cols = other.0.first().map_or(0, Vec::len);
        Dense(
            self.0
                .iter()
                .map(|row| {
                    (0..cols)
                        .map(|j| {
                            (0..inner).fold(Rational::zero(), |acc, k| {
                                if row[k].is_zero() {
                                    acc
                                } else {
                                    acc + &row[k] * &other.0[k][j]
                                }
                            })
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Gauss–Jordan with first-nonzero pivoting.
    fn inverse(&self) -> Result<Dense> {
        let n = self.0.len();
        let mut a = self.0.clone();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &p;
                inv[col][j] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let da = &f * &a[col][j];
                    a[r][j] -= da;
                    let di = &f * &inv[col][j];
                    inv[r][j] -= di;
                }
            }
        }
        Ok(Dense(inv))
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::int;
    use super::*;

    fn table_matrix(a: i64, b: i64, c: i64) -> RationalSymMatrix {
        RationalSymMatrix::three(int(3), [int(a), int(b), int(c)])
    }

    #[test]
    fn identity_minors() {
        let i3 = RationalSymMatrix::identity(3);
        for k in 0..8 {
            assert_eq!(i3.principal_minor(k), int(1));
        }
        assert_eq!(i3.sign_pattern().unwrap().to_string(), "++++++++");
        assert_eq!(
            RationalSymMatrix::identity(2)
                .all_principal_minors()
                .values(),
            &[int(1), int(1), int(1), int(1)]
        );
    }

    #[test]
    fn table_minors() {
        assert_eq!(table_matrix(-2, -2, -1).principal_minor(0b111), int(-8));
        assert_eq!(table_matrix(-4, -4, -4).principal_minor(0b110), int(-7));
        let p = table_matrix(-2, -2, -4).all_principal_minors();
        let cardlex: Vec<Rational> = cardlex_order(3).iter().map(|&k| p.get(k).clone()).collect();
        assert_eq!(cardlex, [1, 3, 3, 3, 5, 5, -7, -77].map(int));
        assert_eq!(
            table_matrix(-2, -4, -4).sign_pattern().unwrap().to_string(),
            "+++++---"
        );
    }

    #[test]
    fn diagonal_minors_multiply() {
        let d = RationalSymMatrix::diagonal(&[int(2), int(-3), int(5)]);
        for k in 0..8u32 {
            let expected = subset::elements(k)
                .into_iter()
                .fold(int(1), |acc, i| acc * d.get(i, i));
            assert_eq!(d.principal_minor(k), expected);
        }
    }

    #[test]
    fn singular_reports_first_vanishing_minor() {
        let ones = RationalSymMatrix::from_fn(2, |_, _| int(1));
        assert_eq!(ones.sign_pattern(), Err(Error::NotPrincipallyRegular(0b11)));
    }

    #[test]
    fn schur_examples() {
        let m = table_matrix(-2, -2, -1);
        assert_eq!(m.schur_complement(0).unwrap(), m);
        let i3 = RationalSymMatrix::identity(3);
        assert_eq!(
            i3.schur_complement(0b001).unwrap(),
            RationalSymMatrix::identity(2)
        );
        let ones = RationalSymMatrix::from_fn(2, |_, _| int(0));
        assert_eq!(ones.schur_complement(0b01), Err(Error::Singular));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            RationalSymMatrix::identity(4).inverse().unwrap(),
            RationalSymMatrix::identity(4)
        );
        let m = table_matrix(-2, -2, -1);
        let inv = m.inverse().unwrap();
        let prod = Dense(m.rows()).mul(&Dense(inv.rows()));
        assert_eq!(prod.0, RationalSymMatrix::identity(3).rows());
        assert_eq!(
            RationalSymMatrix::from_fn(2, |_, _| int(1)).inverse(),
            Err(Error::Singular)
        );
    }

    #[test]
    fn swap_empty_is_identity() {
        let m = table_matrix(-2, -4, -4);
        assert_eq!(m.swap(0).unwrap(), m);
        // Swapping twice returns Σ up to a ±1 diagonal congruence.
        let d = [int(-1), int(1), int(1)];
        assert_eq!(
            m.swap(0b001).unwrap().swap(0b001).unwrap(),
            m.congruence_by_diagonal(&d)
        );
    }

    #[test]
    fn swap_matches_pattern_action() {
        let m = table_matrix(-2, -4, -4);
        let s = m.sign_pattern().unwrap();
        for z in 0..8 {
            let swapped = m.swap(z).unwrap().sign_pattern().unwrap();
            assert_eq!(swapped, crate::group::apply_swap(&s, z), "Z = {z:03b}");
        }
    }

    #[test]
    fn rejects_asymmetric_rows() {
        let rows = vec![vec![int(1), int(2)], vec![int(3), int(1)]];
        assert_eq!(RationalSymMatrix::from_rows(rows), Err(Error::NotSymmetric));
    }

    #[test]
    fn json_roundtrip() {
        let m = table_matrix(-2, -2, -1).map(|x| x / int(7));
        let j = MatrixJson::from(&m);
        assert_eq!(j.entries[0][0], "3/7");
        let back = RationalSymMatrix::try_from(j).unwrap();
        assert_eq!(back, m);
    }
}
