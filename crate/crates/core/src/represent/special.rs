use crate::exactalg::{int, ratio, RationalSymMatrix};
use crate::pattern::{Sign, SignPattern};
use crate::subset::{self, from_elements};

/// An admissible pattern on five elements with no known representation.
///
/// Singletons 1, 2 are negative and 3, 4, 5 positive; all pairs are
/// negative; the triples 123, 124, 145, 235 are negative and the other
/// triples positive; all quadruples and 12345 are positive.
pub fn s_star() -> SignPattern {
    let negative_triples = [[1, 2, 3], [1, 2, 4], [1, 4, 5], [2, 3, 5]]
        .map(|t| from_elements(t.into_iter().map(|e| e - 1)));
    SignPattern::from_fn(5, |k| {
        let neg = match subset::card(k) {
            1 => k & 0b00011 != 0,
            2 => true,
            3 => negative_triples.contains(&k),
            _ => false,
        };
        Sign::from_negative(neg)
    })
    .expect("s(∅) is positive")
}

/// `s_star` with the sign at 12345 flipped.
pub fn s_star_prime() -> SignPattern {
    let s = s_star();
    SignPattern::from_fn(5, |k| {
        if k == subset::full(5) {
            -s.get(k)
        } else {
            s.get(k)
        }
    })
    .expect("s(∅) is positive")
}

/// A rational representation of [`s_star_prime`].
pub fn sigma_star_prime() -> RationalSymMatrix {
    let r = |p, q| ratio(p, q);
    RationalSymMatrix::from_rows(vec![
        vec![int(-1), r(-25, 17), r(10, 27), r(-9, 7), r(17, 22)],
        vec![r(-25, 17), int(-1), r(-3, 7), r(-7, 8), int(-1)],
        vec![r(10, 27), r(-3, 7), int(1), r(-22, 7), r(-7, 4)],
        vec![r(-9, 7), r(-7, 8), r(-22, 7), int(1), r(8, 5)],
        vec![r(17, 22), int(-1), r(-7, 4), r(8, 5), int(1)],
    ])
    .expect("symmetric")
}

/// One row of the catalogue of admissible patterns on three elements: the
/// orbit representative, a representing matrix with diagonal 3, the orbit
/// size and the number of connected components of its representation space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub pattern: SignPattern,
    /// Off-diagonal entries `σ12, σ13, σ23`.
    pub offdiag: [i64; 3],
    pub orbit_size: usize,
    pub components: u64,
}

impl Table1Row {
    pub fn matrix(&self) -> RationalSymMatrix {
        RationalSymMatrix::three(int(3), self.offdiag.map(int))
    }
}

pub fn table1() -> Vec<Table1Row> {
    [
        ("++++++++", [0, 0, 0], 8, 1),
        ("+++++++-", [-2, -2, -1], 8, 4),
        ("++++++--", [-2, -2, -4], 12, 2),
        ("+++++---", [-2, -4, -4], 8, 4),
        ("++++----", [-4, -4, -4], 2, 16),
    ]
    .into_iter()
    .map(|(p, offdiag, orbit_size, components)| Table1Row {
        pattern: p.parse().expect("valid pattern"),
        offdiag,
        orbit_size,
        components,
    })
    .collect()
}
