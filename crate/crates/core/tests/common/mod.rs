//! Checks shared by the integration suites and the acceptance harness. Every
//! check returns `Err` with a description of the first failure.

#![allow(dead_code)]

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pmsign::coloring::{
    all_colorings, coloring_to_pattern, count_colorings_bruteforce, pattern_to_coloring,
};
use pmsign::enumerate::{
    admissible_orbits, count_admissible, enumerate_admissible, vacuous_patterns, PartialSignPattern,
};
use pmsign::exactalg::{
    check_mdiamond_identity, hyperdet3, koteljanskii_check, ratio, Rational, RationalSymMatrix,
};
use pmsign::group::{apply_group, apply_swap, canonical_form, positive_singleton_form};
use pmsign::pattern::diamonds;
use pmsign::reduce::sign_changes_along_flag;
use pmsign::represent::{s_star, s_star_prime, sigma_star_prime, table1};
use pmsign::subset::{self, compress};
use pmsign::{GroupElement, Permutation, Sign, SignPattern};

pub type Check = Result<(), String>;

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Diamond axioms checked directly from the definition.
pub fn admissible_by_definition(s: &SignPattern) -> bool {
    let n = s.n();
    for k in 0..1u32 << n {
        for i in 0..n {
            for j in i + 1..n {
                let (bi, bj) = (1 << i, 1 << j);
                if k & (bi | bj) != 0 {
                    continue;
                }
                if s.get(k | bi) != s.get(k | bj) && s.get(k) == s.get(k | bi | bj) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every pattern on `n` elements with `s(∅) = +`.
pub fn all_patterns(n: usize) -> impl Iterator<Item = SignPattern> {
    let free = (1u64 << n) - 1;
    (0..1u64 << free).map(move |bits| {
        SignPattern::from_fn(n, |k| {
            Sign::from_negative(k != 0 && bits >> (k - 1) & 1 == 1)
        })
        .unwrap()
    })
}

pub fn permutations(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Permutation>) {
        if prefix.len() == n {
            out.push(Permutation::new(prefix.clone()).unwrap());
            return;
        }
        for x in 0..n {
            if !prefix.contains(&x) {
                prefix.push(x);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

pub fn group_elements(n: usize) -> Vec<GroupElement> {
    let perms = permutations(n);
    (0..1u32 << n)
        .flat_map(|z| {
            perms
                .iter()
                .map(move |p| GroupElement::new(z, p.clone()).unwrap())
        })
        .collect()
}

fn admissible_set(n: usize) -> Result<HashSet<SignPattern>, String> {
    Ok(enumerate_admissible(n)
        .map_err(|e| e.to_string())?
        .into_iter()
        .collect())
}

/// Enumeration agrees with a scan of all patterns against the definition.
pub fn enumeration_matches_definition(n: usize) -> Check {
    let brute: HashSet<SignPattern> = all_patterns(n).filter(admissible_by_definition).collect();
    let listed = admissible_set(n)?;
    ensure(brute == listed, || {
        format!("n={n}: enumeration differs from brute force")
    })?;
    let count = count_admissible(n).map_err(|e| e.to_string())?;
    ensure(count == brute.len() as u64, || {
        format!("n={n}: count {count} vs {}", brute.len())
    })
}

/// Minors, duals, negation and every group element preserve admissibility,
/// and the algebraic relations among them hold.
pub fn closure_under_operations(n: usize) -> Check {
    let full = subset::full(n);
    let group = group_elements(n);
    for s in enumerate_admissible(n).map_err(|e| e.to_string())? {
        let mut images = vec![s.dual(), s.negate()];
        for k in 0..1u32 << n {
            images.push(s.restrict(k));
            images.push(s.contract(k));
            ensure(s.dual().delete(k).dual() == s.contract(k), || {
                format!(
                    "{s}: deletion/contraction duality fails at {}",
                    subset::Label(k)
                )
            })?;
        }
        for g in &group {
            images.push(apply_group(&s, g).map_err(|e| e.to_string())?);
        }
        if let Some(bad) = images.iter().find(|t| !admissible_by_definition(t)) {
            return Err(format!("{s}: image {bad} is not admissible"));
        }
        ensure(s.dual().negate() == apply_swap(&s, full), || {
            format!("{s}: -dual differs from the full swap")
        })?;
        ensure(s.dual().dual() == s, || {
            format!("{s}: dual is not an involution")
        })?;
        let (g, t) = positive_singleton_form(&s).map_err(|e| e.to_string())?;
        ensure((0..n).all(|i| !t.is_negative(1 << i)), || {
            format!("{s}: positive-singleton form {t} has a negative singleton")
        })?;
        ensure(apply_group(&s, &g).ok() == Some(t.clone()), || {
            format!("{s}: returned element does not produce {t}")
        })?;
    }
    Ok(())
}

/// A pattern is admissible exactly when all its minors on two elements are.
pub fn two_minor_characterization(n: usize) -> Check {
    for s in all_patterns(n) {
        let mut all_minors_ok = true;
        for k in 0..1u32 << n {
            let rest = subset::full(n) & !k;
            for i in 0..n {
                for j in i + 1..n {
                    let ij = 1 << i | 1 << j;
                    if k & ij == 0 && !s.contract(k).restrict(compress(ij, rest)).is_admissible() {
                        all_minors_ok = false;
                    }
                }
            }
        }
        ensure(all_minors_ok == admissible_by_definition(&s), || {
            format!("{s}: 2-minor test disagrees with the axioms")
        })?;
    }
    Ok(())
}

/// Logarithmic bounds on the counts for `n ≤ max_n`, and the vacuous family
/// behind the lower bound.
pub fn count_bounds(max_n: usize) -> Check {
    let mut prev = 1.0f64;
    for n in 1..=max_n {
        let a = count_admissible(n).map_err(|e| e.to_string())? as f64;
        let log = a.log2();
        ensure(
            2f64.powi(n as i32 - 1) <= log && log <= 1.0 + 2.0 * prev.log2() + 1e-9,
            || format!("n={n}: log2 a_n = {log} outside bounds"),
        )?;
        prev = a;
        let vac = vacuous_patterns(n).map_err(|e| e.to_string())?;
        let distinct: HashSet<&SignPattern> = vac.iter().collect();
        ensure(distinct.len() == 1 << (1usize << (n - 1)), || {
            format!("n={n}: {} vacuous patterns", distinct.len())
        })?;
        ensure(vac.iter().all(admissible_by_definition), || {
            format!("n={n}: vacuous pattern not admissible")
        })?;
    }
    Ok(())
}

/// `s ↦ (s(N), s∖m, s/m)` is injective on admissible patterns.
pub fn split_map_injective(n: usize) -> Check {
    let all = enumerate_admissible(n).map_err(|e| e.to_string())?;
    for m in 0..n {
        let images: HashSet<(Sign, SignPattern, SignPattern)> = all
            .iter()
            .map(|s| (s.get(s.ground()), s.delete(1 << m), s.contract(1 << m)))
            .collect();
        ensure(images.len() == all.len(), || {
            format!("n={n}: collision for m={}", m + 1)
        })?;
    }
    Ok(())
}

/// Colorings are counted by brute force and match the pattern counts.
pub fn colorings_match_counts(n: usize) -> Check {
    let c = count_colorings_bruteforce(n).map_err(|e| e.to_string())?;
    let a = count_admissible(n).map_err(|e| e.to_string())?;
    ensure(c == a, || format!("n={n}: {c} colorings vs {a} patterns"))
}

/// Both directions of the coloring correspondence are mutually inverse.
pub fn coloring_round_trips(n: usize) -> Check {
    let colorings = all_colorings(n).map_err(|e| e.to_string())?;
    for c in &colorings {
        let s = coloring_to_pattern(c).map_err(|e| e.to_string())?;
        ensure(admissible_by_definition(&s), || {
            format!("coloring gives {s}")
        })?;
        ensure(pattern_to_coloring(&s).ok().as_ref() == Some(c), || {
            format!("coloring round trip fails through {s}")
        })?;
    }
    for s in enumerate_admissible(n).map_err(|e| e.to_string())? {
        let c = pattern_to_coloring(&s).map_err(|e| e.to_string())?;
        ensure(coloring_to_pattern(&c).ok() == Some(s.clone()), || {
            format!("{s}: pattern round trip fails")
        })?;
    }
    Ok(())
}

/// Orbit counts, orbit sizes summing to the pattern count, and for `n ≤ 3`
/// sizes equal to those found by applying the whole group.
pub fn orbit_checks(n: usize, expected: usize) -> Check {
    let orbits = admissible_orbits(n, false).map_err(|e| e.to_string())?;
    ensure(orbits.len() == expected, || {
        format!("n={n}: {} orbits", orbits.len())
    })?;
    let total: usize = orbits.iter().map(|o| o.size).sum();
    let a = count_admissible(n).map_err(|e| e.to_string())?;
    ensure(total as u64 == a, || {
        format!("n={n}: orbit sizes sum to {total}")
    })?;
    for o in &orbits {
        ensure(
            canonical_form(&o.representative) == o.representative,
            || format!("{} is not canonical", o.representative),
        )?;
    }
    if n <= 3 {
        let group = group_elements(n);
        for o in &orbits {
            let images: HashSet<SignPattern> = group
                .iter()
                .map(|g| apply_group(&o.representative, g).unwrap())
                .collect();
            ensure(images.len() == o.size, || {
                format!(
                    "{}: orbit size {} vs {}",
                    o.representative,
                    o.size,
                    images.len()
                )
            })?;
        }
    }
    Ok(())
}

/// The catalogue on three elements: representatives, orbit sizes and
/// matrices.
pub fn table1_checks() -> Check {
    let orbits = admissible_orbits(3, false).map_err(|e| e.to_string())?;
    let rows = table1();
    ensure(rows.len() == orbits.len(), || "row count".into())?;
    for (row, o) in rows.iter().zip(&orbits) {
        ensure(
            row.pattern == o.representative && row.orbit_size == o.size,
            || {
                format!(
                    "{} / {}: representative or size differs",
                    row.pattern, o.representative
                )
            },
        )?;
        let got = row.matrix().sign_pattern().map_err(|e| e.to_string())?;
        ensure(got == row.pattern, || {
            format!("{}: matrix gives {got}", row.pattern)
        })?;
    }
    let mut sizes: Vec<usize> = rows.iter().map(|r| r.orbit_size).collect();
    sizes.sort();
    ensure(sizes == [2, 8, 8, 8, 12], || format!("sizes {sizes:?}"))
}

/// The number of sign changes along a maximal chain does not depend on the
/// chain.
pub fn flag_sign_changes_independent(patterns: &[SignPattern]) -> Check {
    for s in patterns {
        let counts: HashSet<usize> = permutations(s.n())
            .iter()
            .map(|p| sign_changes_along_flag(s, p).unwrap())
            .collect();
        ensure(counts.len() == 1, || format!("{s}: counts {counts:?}"))?;
    }
    Ok(())
}

/// The special five-element pattern, its flipped neighbour and the matrix
/// representing the neighbour.
pub fn special_pattern_checks() -> Check {
    let s = s_star();
    let t = s_star_prime();
    ensure(admissible_by_definition(&s), || "s* not admissible".into())?;
    ensure(admissible_by_definition(&t), || "s*' not admissible".into())?;
    ensure(canonical_form(&s) != canonical_form(&t), || {
        "s* and s*' share an orbit".into()
    })?;
    let odd = PartialSignPattern::from_pattern(&s, |k| subset::card(k) % 2 == 1);
    let completions: Vec<SignPattern> = odd.complete().take(2).collect();
    ensure(completions == [s.clone()], || {
        format!("{} completions of the odd values", completions.len())
    })?;
    let m = sigma_star_prime();
    let got = m.sign_pattern().map_err(|e| e.to_string())?;
    ensure(got == t, || format!("matrix gives {got}"))?;
    ensure(m.principal_minor(subset::full(5)).is_negative(), || {
        "det is not negative".into()
    })
}

/// A random symmetric matrix with entries `p/q`, `|p| ≤ 9`, `1 ≤ q ≤ 9`.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> RationalSymMatrix {
    let upper: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (i..n)
                .map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9)))
                .collect()
        })
        .collect();
    RationalSymMatrix::from_fn(n, |i, j| upper[i.min(j)][i.max(j) - i.min(j)].clone())
}

/// Every exact identity of the minor algebra on one matrix.
pub fn matrix_identities(m: &RationalSymMatrix) -> Check {
    let n = m.n();
    let full = subset::full(n);
    for d in diamonds(n) {
        ensure(check_mdiamond_identity(m, &d), || {
            format!("square identity at {d}")
        })?;
        ensure(koteljanskii_check(m, &d), || format!("Koteljanskii at {d}"))?;
    }
    if n == 3 {
        ensure(
            hyperdet3(&m.all_principal_minors()).ok() == Some(Rational::zero()),
            || "hyperdeterminant".into(),
        )?;
    }
    let det = m.principal_minor(full);
    for k in 0..1u32 << n {
        let pk = m.principal_minor(k);
        if pk.is_zero() {
            continue;
        }
        let schur = m.schur_complement(k).map_err(|e| e.to_string())?;
        let rest = full & !k;
        for l in subset::subsets_of(rest) {
            ensure(
                schur.principal_minor(compress(l, rest)) == m.principal_minor(k | l) / &pk,
                || {
                    format!(
                        "Schur minors at K={} L={}",
                        subset::Label(k),
                        subset::Label(l)
                    )
                },
            )?;
            if !m.principal_minor(k | l).is_zero() && l != 0 {
                let nested = schur.schur_complement(compress(l, rest)).unwrap();
                ensure(nested == m.schur_complement(k | l).unwrap(), || {
                    format!(
                        "quotient formula at K={} L={}",
                        subset::Label(k),
                        subset::Label(l)
                    )
                })?;
            }
        }
        if !det.is_zero() && k != full {
            let lhs = m.inverse().unwrap().principal_submatrix(rest);
            ensure(lhs == schur.inverse().unwrap(), || {
                format!("inverse of Schur complement at {}", subset::Label(k))
            })?;
        }
        let swapped = m.swap(k).map_err(|e| e.to_string())?;
        for l in 0..1u32 << n {
            let sign = if (k & l).count_ones() % 2 == 1 {
                -Rational::one()
            } else {
                Rational::one()
            };
            ensure(
                swapped.principal_minor(l) == sign * m.principal_minor(k ^ l) / &pk,
                || {
                    format!(
                        "swap minors at Z={} K={}",
                        subset::Label(k),
                        subset::Label(l)
                    )
                },
            )?;
        }
    }
    if let Ok(s) = m.sign_pattern() {
        ensure(admissible_by_definition(&s), || {
            format!("pattern {s} of a matrix is not admissible")
        })?;
        ensure(
            m.inverse().unwrap().sign_pattern().ok() == Some(s.dual()),
            || "inverse vs dual".into(),
        )?;
        ensure(
            m.map(|x| -x).sign_pattern().ok() == Some(s.negate()),
            || "negation".into(),
        )?;
        for z in 0..1u32 << n {
            ensure(
                m.swap(z).unwrap().sign_pattern().ok() == Some(apply_swap(&s, z)),
                || format!("swap pattern at {}", subset::Label(z)),
            )?;
        }
    }
    Ok(())
}

/// [`matrix_identities`] on `count` seeded random matrices of sizes 1..=5.
pub fn identities_on_random_matrices(seed: u64, count: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for idx in 0..count {
        let n = 1 + idx % 5;
        let m = random_matrix(&mut rng, n);
        matrix_identities(&m).map_err(|e| format!("matrix #{idx}: {e}"))?;
    }
    Ok(())
}
