use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::certificate::{verify_certificate, Certificate, SearchMeta, Strategy};
use super::search::{pairs, seeded_search, Candidate, SearchConfig};
use crate::enumerate::{admissible_orbits, MAX_ENUMERATE_N};
use crate::error::{Error, Result};
use crate::group::positive_singleton_form;
use crate::pattern::SignPattern;
use crate::subset::{self, Subset};

/// Samples per chunk; each chunk draws from its own generator stream.
pub const SWEEP_CHUNK: u64 = 1 << 14;
/// Chunks per round. Orbits resolved in one round are skipped in the next,
/// and the sweep stops early once every orbit is resolved.
pub const SWEEP_ROUND: u64 = 16;

/// An orbit with no certificate after the full budget. Never read as a proof
/// of non-representability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unresolved {
    /// Canonical (lex-min) orbit representative.
    pub key: SignPattern,
    /// Random samples drawn plus seeded attempts spent on this orbit.
    pub attempts: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub n: usize,
    pub orbits: usize,
    /// Random samples drawn in the first phase.
    pub samples: u64,
    /// Certificates keyed by canonical representative, in key order. The
    /// certified pattern may be any member of the orbit.
    pub resolved: Vec<(SignPattern, Certificate)>,
    pub unresolved: Vec<Unresolved>,
    pub random_hits: usize,
    /// Orbits that only the seeded strategy resolved.
    pub seeded_hits: usize,
}

/// Independent per-orbit seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Orbit lookup for every admissible pattern on `n` elements.
struct OrbitIndex {
    keys: Vec<SignPattern>,
    lookup: HashMap<u32, usize>,
}

impl OrbitIndex {
    fn build(n: usize) -> Result<Self> {
        let orbits = admissible_orbits(n, true)?;
        let mut lookup = HashMap::new();
        let mut keys = Vec::with_capacity(orbits.len());
        for (i, o) in orbits.into_iter().enumerate() {
            for m in o.members.unwrap_or_default() {
                lookup.insert(m.mask32().expect("n ≤ 5"), i);
            }
            keys.push(o.representative);
        }
        Ok(Self { keys, lookup })
    }

    fn orbit_of(&self, s: &SignPattern) -> Option<usize> {
        self.lookup.get(&s.mask32()?).copied()
    }
}

/// Certify every orbit of admissible patterns on `n ≤ 5` elements.
///
/// The first phase draws `cfg.attempts × #orbits` random matrices (off-diagonal
/// entries on the grid of [`random_search`](super::random_search); diagonal
/// all `+1` on even samples and random `±1` on odd ones), reads off each
/// sample's pattern and keeps the first exact certificate per orbit. The
/// second phase runs [`seeded_search`] on the positive-singleton form of every
/// orbit still open. The report does not depend on the number of threads.
pub fn sweep_orbits(n: usize, cfg: &SearchConfig) -> Result<SweepReport> {
    if n > MAX_ENUMERATE_N {
        return Err(Error::TooLarge {
            n,
            reason: "orbit sweep supports n ≤ 5",
        });
    }
    cfg.validate()?;
    let index = OrbitIndex::build(n)?;
    let orbits = index.keys.len();
    let budget = cfg.attempts.saturating_mul(orbits as u64);
    let mut found: Vec<Option<Certificate>> = vec![None; orbits];
    let mut open = orbits;
    let mut samples = 0;
    let chunks = budget.div_ceil(SWEEP_CHUNK);
    let mut chunk = 0;
    while chunk < chunks && open > 0 {
        let round_end = (chunk + SWEEP_ROUND).min(chunks);
        let hits: Vec<Vec<(usize, Certificate)>> = (chunk..round_end)
            .into_par_iter()
            .map(|c| {
                let len = SWEEP_CHUNK.min(budget - c * SWEEP_CHUNK);
                sample_chunk(n, cfg, &index, &found, c, len)
            })
            .collect();
        // chunks are in order, so the first hit per orbit has the smallest index
        for (o, cert) in hits.into_iter().flatten() {
            if found[o].is_none() {
                found[o] = Some(cert);
                open -= 1;
            }
        }
        samples = (round_end * SWEEP_CHUNK).min(budget);
        chunk = round_end;
    }

    let open_orbits: Vec<usize> = (0..orbits).filter(|&o| found[o].is_none()).collect();
    let seeded: Vec<Option<Certificate>> = open_orbits
        .par_iter()
        .map(|&o| {
            let (_, target) = positive_singleton_form(&index.keys[o]).ok()?;
            let cfg = SearchConfig {
                seed: derive_seed(cfg.seed, o as u64),
                ..*cfg
            };
            seeded_search(&target, &cfg)
        })
        .collect();
    let mut seeded_hits = 0;
    for (&o, cert) in open_orbits.iter().zip(seeded) {
        if cert.is_some() {
            seeded_hits += 1;
            found[o] = cert;
        }
    }

    let mut report = SweepReport {
        n,
        orbits,
        samples,
        resolved: Vec::new(),
        unresolved: Vec::new(),
        random_hits: orbits - open,
        seeded_hits,
    };
    for (key, cert) in index.keys.into_iter().zip(found) {
        match cert {
            Some(c) => report.resolved.push((key, c)),
            None => report.unresolved.push(Unresolved {
                key,
                attempts: samples + cfg.attempts,
            }),
        }
    }
    Ok(report)
}

fn sample_chunk(
    n: usize,
    cfg: &SearchConfig,
    index: &OrbitIndex,
    found: &[Option<Certificate>],
    chunk: u64,
    len: u64,
) -> Vec<(usize, Certificate)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(chunk);
    let subsets: Vec<(Subset, Vec<usize>)> =
        (1..1 << n).map(|k| (k, subset::elements(k))).collect();
    let (num, den) = (cfg.max_numerator as i64, cfg.max_denominator as i64);
    let mut off = vec![(0i64, 1i64); pairs(n).count()];
    let mut diag = vec![1i64; n];
    let mut hits: Vec<(usize, Certificate)> = Vec::new();
    for i in 0..len {
        let attempt = chunk * SWEEP_CHUNK + i;
        for d in diag.iter_mut() {
            *d = if attempt % 2 == 1 && rng.gen::<bool>() {
                -1
            } else {
                1
            };
        }
        for e in off.iter_mut() {
            *e = (rng.gen_range(-num..=num), rng.gen_range(1..=den));
        }
        let cand = Candidate::new(n, |i| (diag[i], 1), &off);
        let Some(mask) = cand.sign_mask(&subsets) else {
            continue;
        };
        let Some(&o) = index.lookup.get(&mask) else {
            continue;
        };
        if found[o].is_some() || hits.iter().any(|(h, _)| *h == o) {
            continue;
        }
        // classify by the exact pattern, which settles any rounding doubt
        let matrix = cand.exact();
        let Ok(pattern) = matrix.sign_pattern() else {
            continue;
        };
        let Some(o) = index.orbit_of(&pattern) else {
            continue;
        };
        if found[o].is_some() || hits.iter().any(|(h, _)| *h == o) {
            continue;
        }
        let mut cert = Certificate::new(
            pattern,
            matrix,
            SearchMeta {
                seed: Some(cfg.seed),
                strategy: Strategy::Random,
                attempts: attempt + 1,
            },
        );
        if verify_certificate(&mut cert).is_verified() {
            hits.push((o, cert));
        }
    }
    hits
}
