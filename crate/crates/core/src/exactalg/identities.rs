//! Polynomial identities and inequalities among principal minors, used as
//! exact test oracles.

use super::matrix::{MinorVector, RationalSymMatrix};
use super::rational::{self, Rational};
use crate::error::{Error, Result};
use crate::pattern::Diamond;

/// `det Σ_{iK, jK}` with rows `iK` and columns `jK`, both ascending.
pub fn offdiag_minor(m: &RationalSymMatrix, d: &Diamond) -> Rational {
    let k = d.context();
    rational::det(&m.block(k | 1 << d.i(), k | 1 << d.j()))
}

/// Both sides of `(det Σ_{iK,jK})² = pr(iK)·pr(jK) − pr(ijK)·pr(K)`.
pub fn mdiamond_sides(m: &RationalSymMatrix, d: &Diamond) -> (Rational, Rational) {
    let off = offdiag_minor(m, d);
    let [k, ik, jk, ijk] = d.corners().map(|s| m.principal_minor(s));
    (&off * &off, ik * jk - ijk * k)
}

pub fn check_mdiamond_identity(m: &RationalSymMatrix, d: &Diamond) -> bool {
    let (lhs, rhs) = mdiamond_sides(m, d);
    lhs == rhs
}

/// `pr(iK)·pr(jK) ≥ pr(ijK)·pr(K)`.
pub fn koteljanskii_check(m: &RationalSymMatrix, d: &Diamond) -> bool {
    let [k, ik, jk, ijk] = d.corners().map(|s| m.principal_minor(s));
    ik * jk >= ijk * k
}

/// The dehomogenized 2×2×2 hyperdeterminant in the seven minors of a 3×3
/// symmetric matrix; vanishes on every such minor vector.
pub fn hyperdet3(p: &MinorVector) -> Result<Rational> {
    if p.n() != 3 {
        return Err(Error::SizeMismatch {
            expected: 3,
            got: p.n(),
        });
    }
    let g = |k: u32| p.get(k).clone();
    let (p1, p2, p3) = (g(0b001), g(0b010), g(0b100));
    let (p12, p13, p23) = (g(0b011), g(0b101), g(0b110));
    let p123 = g(0b111);
    let two = rational::int(2);
    let four = rational::int(4);
    let h = &p123 * &p123 - &two * &p123 * &p13 * &p2 + &p13 * &p13 * &p2 * &p2
        - &two * &p1 * &p123 * &p23
        + &four * &p12 * &p13 * &p23
        - &two * &p1 * &p13 * &p2 * &p23
        + &p1 * &p1 * &p23 * &p23
        - &two * &p12 * &p123 * &p3
        + &four * &p1 * &p123 * &p2 * &p3
        - &two * &p12 * &p13 * &p2 * &p3
        - &two * &p1 * &p12 * &p23 * &p3
        + &p12 * &p12 * &p3 * &p3;
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::super::rational::int;
    use super::*;
    use crate::pattern::diamonds;

    /// Second, independently typed copy of the hyperdeterminant, term by term.
    fn hyperdet3_reference(p: [i64; 8]) -> i64 {
        // bitmask order: ∅,1,2,12,3,13,23,123
        let [_, a1, a2, a12, a3, a13, a23, a123] = p;
        let terms = [
            a123 * a123,
            -2 * a123 * a13 * a2,
            a13 * a13 * a2 * a2,
            -2 * a1 * a123 * a23,
            4 * a12 * a13 * a23,
            -2 * a1 * a13 * a2 * a23,
            a1 * a1 * a23 * a23,
            -2 * a12 * a123 * a3,
            4 * a1 * a123 * a2 * a3,
            -2 * a12 * a13 * a2 * a3,
            -2 * a1 * a12 * a23 * a3,
            a12 * a12 * a3 * a3,
        ];
        assert_eq!(terms.len(), 12);
        terms.iter().sum()
    }

    #[test]
    fn hyperdet_matches_reference_copy() {
        let samples = [
            [1, 1, 1, 1, 1, 1, 1, 1],
            [1, 2, -3, 5, 7, -11, 13, 17],
            [1, -1, 4, 0, 2, 9, -6, 3],
            [1, 3, 5, -2, 8, 1, 1, -4],
        ];
        for s in samples {
            let mv = MinorVector::new(3, s.iter().map(|&v| int(v)).collect()).unwrap();
            assert_eq!(hyperdet3(&mv).unwrap(), int(hyperdet3_reference(s)));
        }
    }

    #[test]
    fn hyperdet_examples() {
        let ones = MinorVector::new(3, vec![int(1); 8]).unwrap();
        assert_eq!(hyperdet3(&ones).unwrap(), int(0));
        let m = RationalSymMatrix::three(int(3), [int(-2), int(-2), int(-1)]);
        assert_eq!(hyperdet3(&m.all_principal_minors()).unwrap(), int(0));
        let two = RationalSymMatrix::identity(2).all_principal_minors();
        assert!(hyperdet3(&two).is_err());
    }

    #[test]
    fn identity_matrix_diamonds() {
        for n in 2..=4 {
            let id = RationalSymMatrix::identity(n);
            for d in diamonds(n) {
                assert_eq!(offdiag_minor(&id, &d), int(0));
                assert_eq!(mdiamond_sides(&id, &d), (int(0), int(0)));
                assert!(koteljanskii_check(&id, &d));
            }
        }
    }

    #[test]
    fn table_matrix_mdiamond() {
        let m = RationalSymMatrix::three(int(3), [int(-2), int(-2), int(-1)]);
        let d = Diamond::new(0, 1, 0b100).unwrap();
        let (lhs, rhs) = mdiamond_sides(&m, &d);
        // rows {1,3}, cols {2,3}: det [[-2,-2],[-1,3]] = -8
        assert_eq!(offdiag_minor(&m, &d), int(-8));
        assert_eq!(lhs, int(64));
        assert_eq!(rhs, int(64));
        assert!(koteljanskii_check(&m, &d));
    }
}
