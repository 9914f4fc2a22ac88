use num_traits::Zero;

use super::certificate::{verify_certificate, Certificate, SearchMeta, Strategy};
use super::search::singleton_diagonal;
use crate::error::{Error, Result};
use crate::exactalg::{ratio, Rational, RationalSymMatrix};
use crate::pattern::{Sign, SignPattern};
use crate::reduce::irreducible_decomposition;
use crate::subset::{self, Subset, MAX_N};

/// Place each certificate on its own ground set (a subset of the union,
/// which is re-indexed to `{1, …, |union|}`) and assemble the block-diagonal
/// matrix. The result is verified exactly.
pub fn block_diagonal_compose_on(parts: &[(Subset, &Certificate)]) -> Result<Certificate> {
    let mut union: Subset = 0;
    for &(ground, c) in parts {
        if union & ground != 0 {
            return Err(Error::Overlap);
        }
        if subset::card(ground) != c.pattern.n() {
            return Err(Error::SizeMismatch {
                expected: c.pattern.n(),
                got: subset::card(ground),
            });
        }
        union |= ground;
    }
    let n = subset::card(union);
    if n > MAX_N {
        return Err(Error::GroundSetSize(n));
    }
    // global index -> (part, local index)
    let mut owner = vec![(0usize, 0usize); n];
    for (p, &(ground, _)) in parts.iter().enumerate() {
        for (local, e) in subset::elements(ground).into_iter().enumerate() {
            owner[subset::card(union & ((1 << e) - 1))] = (p, local);
        }
    }
    let matrix = RationalSymMatrix::from_fn(n, |i, j| {
        let ((pi, li), (pj, lj)) = (owner[i], owner[j]);
        if pi == pj {
            parts[pi].1.matrix.get(li, lj).clone()
        } else {
            Rational::zero()
        }
    });
    let pattern = SignPattern::from_fn(n, |k| {
        let k = subset::expand(k, union);
        parts.iter().fold(Sign::Plus, |acc, &(ground, c)| {
            acc * c.pattern.get(subset::compress(k & ground, ground))
        })
    })?;
    let mut out = Certificate::new(
        pattern,
        matrix,
        SearchMeta {
            seed: None,
            strategy: Strategy::BlockDiagonal,
            attempts: 0,
        },
    );
    verify_certificate(&mut out);
    Ok(out)
}

/// Compose certificates on consecutive ground sets: the first occupies
/// `{1, …, n₁}`, the next `{n₁+1, …}`, and so on.
pub fn block_diagonal_compose(certs: &[Certificate]) -> Result<Certificate> {
    let mut offset = 0;
    let mut parts = Vec::with_capacity(certs.len());
    for c in certs {
        let k = c.pattern.n();
        if offset + k > MAX_N {
            return Err(Error::GroundSetSize(offset + k));
        }
        parts.push((subset::full(k) << offset, c));
        offset += k;
    }
    block_diagonal_compose_on(&parts)
}

/// For a completely reducible pattern, check that every point of the segment
/// from `Σ` to the diagonal `±1` matrix `D` of singleton signs represents the
/// same pattern, at `t = 1/steps, …, (steps-1)/steps`.
pub fn star_segment_check(c: &Certificate, steps: u32) -> Result<bool> {
    if !irreducible_decomposition(&c.pattern).is_complete() {
        return Err(Error::NotCompletelyReducible);
    }
    if !c.check().is_verified() {
        return Err(Error::Precondition("certificate does not verify".into()));
    }
    let d = singleton_diagonal(&c.pattern);
    for i in 1..steps {
        let t = ratio(i as i64, steps as i64);
        let m = RationalSymMatrix::lerp(&d, &c.matrix, &t);
        match m.sign_pattern() {
            Ok(p) if p == c.pattern => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}
