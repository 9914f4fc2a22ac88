//! Exhaustive generation of admissible sign patterns and their hyperoctahedral
//! orbits.
//!
//! Subsets are assigned in cardlex order, `+` before `-`, so completions come
//! out in lexicographic order of their text form. When a set `L` is assigned
//! only the `C(|L|,2)` diamonds with top `L` are checked; their other three
//! corners are smaller and already fixed.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{apply_generator, generators};
use crate::pattern::{diamonds, Sign, SignPattern};
use crate::subset::{self, cardlex_order, cardlex_rank, Subset, MAX_N};

/// Full enumeration is refused above this size.
pub const MAX_ENUMERATE_N: usize = 5;

/// Constraints `(K_i, s_i)` on some subsets; everything else is free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSignPattern {
    n: usize,
    assigned: Vec<Option<Sign>>,
}

impl PartialSignPattern {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::GroundSetSize(n));
        }
        Ok(Self {
            n,
            assigned: vec![None; 1 << n],
        })
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Subset, Sign)>) -> Result<Self> {
        let mut p = Self::new(n)?;
        for (k, s) in pairs {
            p.assign(k, s)?;
        }
        Ok(p)
    }

    /// Keep the values of `s` on the subsets selected by `keep`.
    pub fn from_pattern(s: &SignPattern, keep: impl Fn(Subset) -> bool) -> Self {
        let mut p = Self::new(s.n()).expect("pattern size is valid");
        for k in 0..1u32 << s.n() {
            if keep(k) {
                p.assigned[k as usize] = Some(s.get(k));
            }
        }
        p
    }

    pub fn assign(&mut self, k: Subset, s: Sign) -> Result<()> {
        if k as usize >= self.assigned.len() {
            return Err(Error::Precondition("subset outside the ground set".into()));
        }
        if k == 0 && s == Sign::Minus {
            return Err(Error::NegativeEmptySet);
        }
        self.assigned[k as usize] = Some(s);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: Subset) -> Option<Sign> {
        self.assigned[k as usize]
    }

    /// All admissible total patterns extending this one.
    pub fn complete(&self) -> Completions {
        Completions::new(self)
    }
}

/// Iterator over admissible completions in lexicographic (cardlex text) order.
pub struct Completions {
    n: usize,
    order: &'static [Subset],
    /// Per rank: the fixed value, if any.
    fixed: Vec<Option<bool>>,
    /// Per rank: `(K, iK, jK)` for each diamond with top `order[rank]`.
    checks: Vec<Vec<[Subset; 3]>>,
    tried: Vec<u8>,
    bits: Vec<u64>,
    pos: usize,
    done: bool,
}

impl Completions {
    fn new(p: &PartialSignPattern) -> Self {
        let n = p.n;
        let order = cardlex_order(n);
        let fixed = order
            .iter()
            .map(|&k| {
                if k == 0 {
                    Some(false)
                } else {
                    p.assigned[k as usize].map(Sign::is_negative)
                }
            })
            .collect();
        let checks = order
            .iter()
            .map(|&top| {
                let elems = subset::elements(top);
                let mut out = Vec::new();
                for (a, &i) in elems.iter().enumerate() {
                    for &j in &elems[a + 1..] {
                        let k = top & !(1 << i) & !(1 << j);
                        out.push([k, k | 1 << i, k | 1 << j]);
                    }
                }
                out
            })
            .collect();
        Self {
            n,
            order,
            fixed,
            checks,
            tried: vec![0; order.len()],
            bits: vec![0; order.len().div_ceil(64)],
            pos: 0,
            done: false,
        }
    }

    #[inline]
    fn bit(&self, k: Subset) -> bool {
        self.bits[(k >> 6) as usize] >> (k & 63) & 1 == 1
    }

    #[inline]
    fn set(&mut self, k: Subset, neg: bool) {
        let w = &mut self.bits[(k >> 6) as usize];
        if neg {
            *w |= 1 << (k & 63);
        } else {
            *w &= !(1 << (k & 63));
        }
    }

    fn consistent(&self, rank: usize) -> bool {
        let top = self.bit(self.order[rank]);
        self.checks[rank]
            .iter()
            .all(|&[k, ik, jk]| self.bit(ik) == self.bit(jk) || self.bit(k) != top)
    }

    /// Advance to the next full assignment, leaving it in `bits`.
    fn advance(&mut self) -> bool {
        let len = self.order.len();
        if self.done {
            return false;
        }
        loop {
            if self.pos == len {
                self.pos = len - 1;
                return true;
            }
            let r = self.pos;
            let options: &[bool] = match self.fixed[r] {
                Some(false) => &[false],
                Some(true) => &[true],
                None => &[false, true],
            };
            if self.tried[r] as usize >= options.len() {
                self.tried[r] = 0;
                if r == 0 {
                    self.done = true;
                    return false;
                }
                self.pos -= 1;
                continue;
            }
            let v = options[self.tried[r] as usize];
            self.tried[r] += 1;
            self.set(self.order[r], v);
            if self.consistent(r) {
                self.pos += 1;
            }
        }
    }

    fn current(&self) -> SignPattern {
        SignPattern::from_fn(self.n, |k| Sign::from_negative(self.bit(k))).expect("∅ fixed to +")
    }

    fn count_remaining(mut self) -> u64 {
        let mut total = 0;
        while self.advance() {
            total += 1;
        }
        total
    }

    fn collect_masks(mut self) -> Vec<u32> {
        let mut out = Vec::new();
        while self.advance() {
            out.push(self.bits[0] as u32);
        }
        out
    }
}

impl Iterator for Completions {
    type Item = SignPattern;

    fn next(&mut self) -> Option<SignPattern> {
        self.advance().then(|| self.current())
    }
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_ENUMERATE_N {
        Err(Error::TooLarge {
            n,
            reason: "full enumeration is limited to n ≤ 5",
        })
    } else {
        Ok(())
    }
}

/// One partial pattern per singleton sign vector, in lexicographic order.
fn singleton_subtrees(n: usize) -> Vec<PartialSignPattern> {
    (0..1u32 << n)
        .map(|idx| {
            let pairs = (0..n).map(|i| {
                let neg = idx >> (n - 1 - i) & 1 == 1;
                (1 << i, Sign::from_negative(neg))
            });
            PartialSignPattern::from_pairs(n, pairs).expect("singletons are valid")
        })
        .collect()
}

/// `a_n`, the number of admissible sign patterns. Refuses `n ≥ 6`.
pub fn count_admissible(n: usize) -> Result<u64> {
    guard(n)?;
    Ok(singleton_subtrees(n)
        .par_iter()
        .map(|p| p.complete().count_remaining())
        .sum())
}

/// All admissible patterns on `n ≤ 5` as packed masks (bit `K` set iff
/// `s(K) = -`), sorted by text form.
pub fn enumerate_packed(n: usize) -> Result<Vec<u32>> {
    guard(n)?;
    let parts: Vec<Vec<u32>> = singleton_subtrees(n)
        .par_iter()
        .map(|p| p.complete().collect_masks())
        .collect();
    Ok(parts.concat())
}

/// All admissible patterns on `n ≤ 5`, sorted by text form.
pub fn enumerate_admissible(n: usize) -> Result<Vec<SignPattern>> {
    Ok(enumerate_packed(n)?
        .into_iter()
        .map(|m| SignPattern::from_mask32(n, m).expect("packed pattern"))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    /// Cardlex-lexicographically smallest member.
    pub representative: SignPattern,
    pub size: usize,
    pub members: Option<Vec<SignPattern>>,
}

/// Partition a set closed under the hyperoctahedral action into orbits by
/// breadth-first search over generators. Reports are sorted by representative.
pub fn orbit_partition(patterns: &[SignPattern], keep_members: bool) -> Result<Vec<OrbitReport>> {
    let Some(first) = patterns.first() else {
        return Ok(vec![]);
    };
    let n = first.n();
    if patterns.iter().any(|p| p.n() != n) {
        return Err(Error::Precondition(
            "patterns on different ground sets".into(),
        ));
    }
    let index: HashMap<&SignPattern, usize> =
        patterns.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let gens = generators(n);
    let mut orbit_of = vec![usize::MAX; patterns.len()];
    let mut reports = Vec::new();
    for start in 0..patterns.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = reports.len();
        orbit_of[start] = id;
        let mut queue = VecDeque::from([start]);
        let mut members = vec![start];
        while let Some(cur) = queue.pop_front() {
            for g in &gens {
                let img = apply_generator(&patterns[cur], g);
                let &next = index.get(&img).ok_or(Error::NotClosed)?;
                if orbit_of[next] == usize::MAX {
                    orbit_of[next] = id;
                    members.push(next);
                    queue.push_back(next);
                }
            }
        }
        let rep = members
            .iter()
            .map(|&i| &patterns[i])
            .min_by(|a, b| a.cmp_cardlex(b))
            .expect("nonempty orbit")
            .clone();
        let size = members.len();
        let members = keep_members.then(|| {
            let mut m: Vec<SignPattern> = members.iter().map(|&i| patterns[i].clone()).collect();
            m.sort_by(|a, b| a.cmp_cardlex(b));
            m
        });
        reports.push(OrbitReport {
            representative: rep,
            size,
            members,
        });
    }
    reports.sort_by(|a, b| a.representative.cmp_cardlex(&b.representative));
    Ok(reports)
}

/// Orbits of all admissible patterns on `n ≤ 5`.
pub fn admissible_orbits(n: usize, keep_members: bool) -> Result<Vec<OrbitReport>> {
    orbit_partition(&enumerate_admissible(n)?, keep_members)
}

/// Patterns with `s(K) = (-1)^{|K|/2}` on even `|K|` and arbitrary values on
/// odd `|K|`; all of them satisfy every diamond axiom vacuously.
pub fn vacuous_patterns(n: usize) -> Result<Vec<SignPattern>> {
    guard(n)?;
    let odd: Vec<Subset> = cardlex_order(n)
        .iter()
        .copied()
        .filter(|&k| subset::card(k) % 2 == 1)
        .collect();
    let count = 1u64 << odd.len();
    Ok((0..count)
        .map(|bits| {
            let mut signs = vec![Sign::Plus; 1 << n];
            for k in 0..1u32 << n {
                let c = subset::card(k);
                if c.is_multiple_of(2) {
                    signs[k as usize] = Sign::parity(c / 2);
                }
            }
            for (pos, &k) in odd.iter().enumerate() {
                let neg = bits >> (odd.len() - 1 - pos) & 1 == 1;
                signs[k as usize] = Sign::from_negative(neg);
            }
            SignPattern::from_signs(n, &signs).expect("even part has s(∅) = +")
        })
        .collect())
}

/// A CNF formula over variables `1..=num_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub comments: Vec<String>,
}

impl Cnf {
    /// DIMACS text: comments, `p cnf <vars> <clauses>`, one 0-terminated clause per line.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "c {c}");
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }

    /// Evaluate under an assignment (`assignment[v - 1]` is variable `v`).
    pub fn is_satisfied(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let v = assignment[lit.unsigned_abs() as usize - 1];
                if lit > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }
}

/// Variable number of `V_K` (`s(K) = +`): cardlex rank plus one.
pub fn cnf_variable(n: usize, k: Subset) -> i32 {
    cardlex_rank(n)[k as usize] as i32 + 1
}

/// The variable assignment encoding a sign pattern.
pub fn cnf_assignment(s: &SignPattern) -> Vec<bool> {
    cardlex_order(s.n())
        .iter()
        .map(|&k| !s.is_negative(k))
        .collect()
}

/// Admissibility as CNF: a unit clause `V_∅` and, per diamond, one clause
/// forbidding each of the four assignments with `s(iK) ≠ s(jK)` and
/// `s(K) = s(ijK)`. `1 + C(n,2)·2^n` clauses.
pub fn export_cnf(n: usize) -> Result<Cnf> {
    if n > MAX_N {
        return Err(Error::GroundSetSize(n));
    }
    let var = |k| cnf_variable(n, k);
    let mut clauses = vec![vec![var(0)]];
    for d in diamonds(n) {
        let [k, ik, jk, ijk] = d.corners();
        for (vk, vik) in [(true, true), (true, false), (false, true), (false, false)] {
            // forbidden: V_K = V_ijK = vk, V_iK = vik, V_jK = !vik
            let lit = |v: i32, val: bool| if val { -v } else { v };
            clauses.push(vec![
                lit(var(k), vk),
                lit(var(ik), vik),
                lit(var(jk), !vik),
                lit(var(ijk), vk),
            ]);
        }
    }
    Ok(Cnf {
        num_vars: 1 << n,
        clauses,
        comments: vec![
            format!("admissible sign patterns on n = {n}"),
            "variable r+1 is true iff s(K) = + for the r-th subset K in cardlex order".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count_admissible(0).unwrap(), 1);
        assert_eq!(count_admissible(1).unwrap(), 2);
        assert_eq!(count_admissible(2).unwrap(), 6);
        assert_eq!(count_admissible(3).unwrap(), 38);
        assert_eq!(count_admissible(4).unwrap(), 990);
        assert!(count_admissible(6).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_admissible() {
        let all = enumerate_admissible(3).unwrap();
        assert_eq!(all.len(), 38);
        assert!(all.windows(2).all(|w| w[0].cmp_cardlex(&w[1]).is_lt()));
        assert!(all.iter().all(SignPattern::is_admissible));
        let lazy: Vec<SignPattern> = PartialSignPattern::new(3).unwrap().complete().collect();
        assert_eq!(lazy, all);
    }

    #[test]
    fn unsatisfiable_partial() {
        let p = PartialSignPattern::from_pairs(
            2,
            [(0b01, Sign::Plus), (0b10, Sign::Minus), (0b11, Sign::Plus)],
        )
        .unwrap();
        assert_eq!(p.complete().count(), 0);
        assert_eq!(
            PartialSignPattern::new(2).unwrap().assign(0, Sign::Minus),
            Err(Error::NegativeEmptySet)
        );
    }

    #[test]
    fn orbits_n3() {
        let orbits = admissible_orbits(3, false).unwrap();
        let sizes: Vec<usize> = orbits.iter().map(|o| o.size).collect();
        let reps: Vec<String> = orbits
            .iter()
            .map(|o| o.representative.to_string())
            .collect();
        assert_eq!(
            reps,
            ["++++++++", "+++++++-", "++++++--", "+++++---", "++++----"]
        );
        assert_eq!(sizes, [8, 8, 12, 8, 2]);
    }

    #[test]
    fn orbit_partition_requires_closure() {
        let one: Vec<SignPattern> = vec!["+++++++-".parse().unwrap()];
        assert_eq!(orbit_partition(&one, false), Err(Error::NotClosed));
    }

    #[test]
    fn vacuous_family() {
        let v2 = vacuous_patterns(2).unwrap();
        assert_eq!(v2.len(), 4);
        assert!(v2.iter().all(SignPattern::is_admissible));
        assert_eq!(vacuous_patterns(1).unwrap().len(), 2);
        assert_eq!(vacuous_patterns(3).unwrap().len(), 16);
    }

    #[test]
    fn cnf_shape() {
        let cnf = export_cnf(3).unwrap();
        assert_eq!(cnf.clauses.len(), 25);
        assert_eq!(cnf.num_vars, 8);
        assert_eq!(export_cnf(2).unwrap().clauses.len(), 5);
        let text = export_cnf(2).unwrap().to_dimacs();
        assert!(text.contains("p cnf 4 5\n"));
        assert!(text.contains("\n1 0\n"));
    }

    #[test]
    fn cnf_agrees_with_admissibility() {
        let cnf = export_cnf(3).unwrap();
        let models = (0..1u32 << 8)
            .filter(|bits| {
                let assignment: Vec<bool> = (0..8).map(|v| bits >> v & 1 == 1).collect();
                cnf.is_satisfied(&assignment)
            })
            .count();
        assert_eq!(models, 38);
        for s in enumerate_admissible(3).unwrap() {
            assert!(cnf.is_satisfied(&cnf_assignment(&s)));
        }
    }
}
