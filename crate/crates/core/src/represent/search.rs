use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::certificate::{verify_certificate, Certificate, SearchMeta, Strategy};
use crate::error::{Error, Result};
use crate::exactalg::{int, ratio, Rational, RationalSymMatrix};
use crate::pattern::{Sign, SignPattern};
use crate::subset::{self, cardlex_order, Subset, MAX_N};

/// Bounds and budget for the randomized searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_numerator: u32,
    pub max_denominator: u32,
    pub attempts: u64,
    pub seed: u64,
    pub strategy: Strategy,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_numerator: 27,
            max_denominator: 27,
            attempts: 10_000,
            seed: 0,
            strategy: Strategy::Random,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_numerator == 0 || self.max_denominator == 0 || self.attempts == 0 {
            return Err(Error::Precondition(
                "search bounds and attempts must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Perturbation numerators for the seeded strategy lie in `[-PERTURB_NUM, PERTURB_NUM]`.
pub const PERTURB_NUM: i64 = 8;
/// Perturbation denominators lie in `[PERTURB_MIN_DEN, PERTURB_MAX_DEN]`.
pub const PERTURB_MIN_DEN: i64 = 16;
pub const PERTURB_MAX_DEN: i64 = 32;

/// Run the strategy named in `cfg`.
pub fn search(s: &SignPattern, cfg: &SearchConfig) -> Option<Certificate> {
    match cfg.strategy {
        Strategy::SeededOrder2 => seeded_search(s, cfg),
        _ => random_search(s, cfg),
    }
}

/// Sample symmetric matrices with diagonal `±1` taken from the singleton
/// signs of `s` and off-diagonal entries `p/q`, `|p| ≤ max_numerator`,
/// `1 ≤ q ≤ max_denominator`. Attempt `a` draws from stream `a` of a ChaCha
/// generator keyed by `cfg.seed`, so results are reproducible.
pub fn random_search(s: &SignPattern, cfg: &SearchConfig) -> Option<Certificate> {
    if cfg.validate().is_err() || !s.is_admissible() {
        return None;
    }
    let n = s.n();
    let diag: Vec<i64> = (0..n)
        .map(|i| if s.is_negative(1 << i) { -1 } else { 1 })
        .collect();
    let (num, den) = (cfg.max_numerator as i64, cfg.max_denominator as i64);
    let mut off = vec![(0i64, 1i64); n * n.saturating_sub(1) / 2];
    run_attempts(s, cfg, Strategy::Random, |rng| {
        for e in off.iter_mut() {
            *e = (rng.gen_range(-num..=num), rng.gen_range(1..=den));
        }
        Candidate::new(n, |i| (diag[i], 1), &off)
    })
}

/// Start from the order-2 construction (diagonal 1, entry 2 where
/// `s(ij) = -`, else 0) and add independent perturbations `p/q` with
/// `|p| ≤ PERTURB_NUM` and `PERTURB_MIN_DEN ≤ q ≤ PERTURB_MAX_DEN`.
/// Requires positive singletons; returns `None` otherwise.
pub fn seeded_search(s: &SignPattern, cfg: &SearchConfig) -> Option<Certificate> {
    let n = s.n();
    if cfg.validate().is_err() || !s.is_admissible() || (0..n).any(|i| s.is_negative(1 << i)) {
        return None;
    }
    let base: Vec<i64> = pairs(n)
        .map(|(i, j)| if s.is_negative(1 << i | 1 << j) { 2 } else { 0 })
        .collect();
    let mut off = vec![(0i64, 1i64); base.len()];
    run_attempts(s, cfg, Strategy::SeededOrder2, |rng| {
        for (e, &b) in off.iter_mut().zip(&base) {
            let p = rng.gen_range(-PERTURB_NUM..=PERTURB_NUM);
            let q = rng.gen_range(PERTURB_MIN_DEN..=PERTURB_MAX_DEN);
            *e = (b * q + p, q);
        }
        Candidate::new(n, |_| (1, 1), &off)
    })
}

/// The unperturbed order-2 matrix used as the seed of [`seeded_search`].
pub fn order2_base(s: &SignPattern) -> RationalSymMatrix {
    RationalSymMatrix::from_fn(s.n(), |i, j| {
        if i == j {
            int(1)
        } else if s.is_negative(1 << i | 1 << j) {
            int(2)
        } else {
            int(0)
        }
    })
}

pub(super) fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

fn attempt_rng(seed: u64, attempt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt);
    rng
}

fn run_attempts(
    s: &SignPattern,
    cfg: &SearchConfig,
    strategy: Strategy,
    mut sample: impl FnMut(&mut ChaCha8Rng) -> Candidate,
) -> Option<Certificate> {
    let order = screening_order(s.n());
    for attempt in 0..cfg.attempts {
        let mut rng = attempt_rng(cfg.seed, attempt);
        let cand = sample(&mut rng);
        if !cand.screen(s, &order) {
            continue;
        }
        let mut cert = Certificate::new(
            s.clone(),
            cand.exact(),
            SearchMeta {
                seed: Some(cfg.seed),
                strategy,
                attempts: attempt + 1,
            },
        );
        if verify_certificate(&mut cert).is_verified() {
            return Some(cert);
        }
    }
    None
}

/// Subsets of size at least 2, in cardlex order. Singletons match by
/// construction.
fn screening_order(n: usize) -> Vec<Vec<usize>> {
    cardlex_order(n)
        .iter()
        .filter(|&&k| subset::card(k) >= 2)
        .map(|&k| subset::elements(k))
        .collect()
}

/// A sampled matrix as integer ratios, with an `f64` copy for screening.
pub(super) struct Candidate {
    n: usize,
    entries: Vec<(i64, i64)>,
    approx: [f64; MAX_N * MAX_N],
}

impl Candidate {
    pub(super) fn new(n: usize, diag: impl Fn(usize) -> (i64, i64), off: &[(i64, i64)]) -> Self {
        let mut entries = vec![(0, 1); n * n];
        let mut approx = [0.0; MAX_N * MAX_N];
        for i in 0..n {
            entries[i * n + i] = diag(i);
        }
        for ((i, j), &e) in pairs(n).zip(off) {
            entries[i * n + j] = e;
            entries[j * n + i] = e;
        }
        for (a, &(p, q)) in approx.iter_mut().zip(&entries) {
            *a = p as f64 / q as f64;
        }
        Self { n, entries, approx }
    }

    /// Floating-point sign check with early exit; exact verification follows.
    fn screen(&self, s: &SignPattern, order: &[Vec<usize>]) -> bool {
        order.iter().all(|elems| {
            let d = det_f64(&self.approx, self.n, elems);
            d != 0.0 && (d < 0.0) == s.is_negative(subset::from_elements(elems.iter().copied()))
        })
    }

    /// Floating-point sign pattern as a bitmask over subsets, or `None` when
    /// some minor is too close to zero to call.
    pub(super) fn sign_mask(&self, subsets: &[(Subset, Vec<usize>)]) -> Option<u32> {
        let mut mask = 0;
        for (k, elems) in subsets {
            let d = det_f64(&self.approx, self.n, elems);
            if d.abs() < 1e-12 {
                return None;
            }
            if d < 0.0 {
                mask |= 1 << k;
            }
        }
        Some(mask)
    }

    pub(super) fn exact(&self) -> RationalSymMatrix {
        let (n, e) = (self.n, &self.entries);
        RationalSymMatrix::from_fn(n, |i, j| {
            let (p, q) = e[i * n + j];
            ratio(p, q)
        })
    }
}

/// Determinant of the principal submatrix on `elems` by partial pivoting.
fn det_f64(m: &[f64], n: usize, elems: &[usize]) -> f64 {
    let k = elems.len();
    let mut a = [0.0f64; MAX_N * MAX_N];
    for (r, &i) in elems.iter().enumerate() {
        for (c, &j) in elems.iter().enumerate() {
            a[r * k + c] = m[i * n + j];
        }
    }
    let mut det = 1.0;
    for col in 0..k {
        let piv = (col..k)
            .max_by(|&x, &y| a[x * k + col].abs().total_cmp(&a[y * k + col].abs()))
            .unwrap();
        let p = a[piv * k + col];
        if p == 0.0 {
            return 0.0;
        }
        if piv != col {
            for c in 0..k {
                a.swap(piv * k + c, col * k + c);
            }
            det = -det;
        }
        det *= p;
        for r in col + 1..k {
            let f = a[r * k + col] / p;
            for c in col + 1..k {
                a[r * k + c] -= f * a[col * k + c];
            }
        }
    }
    det
}

/// Diagonal `±1` matrix from the singleton signs of `s`.
pub fn singleton_diagonal(s: &SignPattern) -> RationalSymMatrix {
    let d: Vec<Rational> = (0..s.n())
        .map(|i| match s.get(1 << i) {
            Sign::Plus => int(1),
            Sign::Minus => int(-1),
        })
        .collect();
    RationalSymMatrix::diagonal(&d)
}
