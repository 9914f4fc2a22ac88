//! Connected components of the reduced representation spaces for `n = 3`,
//! estimated by sampling cell centres of a grid over the off-diagonal
//! entries `(σ12, σ13, σ23) ∈ [-R, R]³`.
//!
//! Components are counted inside the box only: two regions that meet
//! outside `[-R, R]³` are reported separately.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{format_rational, int, parse_rational, ratio, Rational};
use crate::pattern::SignPattern;
use crate::represent::table1;

/// Cells per axis above which a grid is refused.
pub const MAX_CELLS_PER_AXIS: u64 = 4096;

/// Box `[-R, R]³` cut into cubes of side `step`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    radius: Rational,
    step: Rational,
}

impl GridSpec {
    pub fn new(radius: Rational, step: Rational) -> Result<Self> {
        if !radius.is_positive() || !step.is_positive() {
            return Err(Error::Precondition(
                "radius and step must be positive".into(),
            ));
        }
        if !(&radius / &step).is_integer() {
            return Err(Error::Precondition(
                "radius must be a multiple of step".into(),
            ));
        }
        let g = Self { radius, step };
        if g.cells_per_axis() > MAX_CELLS_PER_AXIS {
            return Err(Error::Precondition(format!(
                "grid has more than {MAX_CELLS_PER_AXIS} cells per axis"
            )));
        }
        Ok(g)
    }

    /// `R = 8`, `step = 1/16`.
    pub fn standard() -> Self {
        Self::new(int(8), ratio(1, 16)).expect("valid grid")
    }

    /// Same box with the given step.
    pub fn with_step(step: Rational) -> Result<Self> {
        Self::new(int(8), step)
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn step(&self) -> &Rational {
        &self.step
    }

    /// `2R / step`.
    pub fn cells_per_axis(&self) -> u64 {
        (&self.radius * int(2) / &self.step)
            .to_integer()
            .to_u64()
            .unwrap_or(u64::MAX)
    }

    /// The same grid with every length multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        Self::new(&self.radius * factor, &self.step * factor)
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::standard()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridJson {
    #[serde(rename = "R")]
    pub radius: String,
    pub step: String,
}

impl From<&GridSpec> for GridJson {
    fn from(g: &GridSpec) -> Self {
        Self {
            radius: format_rational(&g.radius),
            step: format_rational(&g.step),
        }
    }
}

impl TryFrom<GridJson> for GridSpec {
    type Error = Error;

    fn try_from(j: GridJson) -> Result<Self> {
        GridSpec::new(parse_rational(&j.radius)?, parse_rational(&j.step)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub pattern: SignPattern,
    /// Number of connected classes of matched cells.
    pub count: u64,
    /// Number of cells whose centre has the sign pattern.
    pub cells: u64,
    pub grid: GridSpec,
    pub diagonal: Rational,
}

impl ComponentReport {
    pub fn warning(&self) -> Option<&'static str> {
        (self.cells == 0).then_some("no grid cell matched the pattern; grid too coarse")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "pattern": self.pattern.to_string(),
            "grid": GridJson::from(&self.grid),
            "cells": self.cells,
            "components": self.count,
        });
        if !self.diagonal.is_one() {
            v["diagonal"] = format_rational(&self.diagonal).into();
        }
        if let Some(w) = self.warning() {
            v["warning"] = w.into();
        }
        v
    }
}

/// Count components of the matrices with unit diagonal and sign pattern `s`.
pub fn count_components_3(s: &SignPattern, grid: &GridSpec) -> Result<ComponentReport> {
    count_components_3_with_diagonal(s, grid, &int(1))
}

/// As [`count_components_3`] with every diagonal entry equal to `diagonal`.
pub fn count_components_3_with_diagonal(
    s: &SignPattern,
    grid: &GridSpec,
    diagonal: &Rational,
) -> Result<ComponentReport> {
    if s.n() != 3 {
        return Err(Error::SizeMismatch {
            expected: 3,
            got: s.n(),
        });
    }
    if !s.is_admissible() {
        return Err(Error::NotAdmissible);
    }
    if (0..3).any(|i| s.is_negative(1 << i)) || !diagonal.is_positive() {
        return Err(Error::Precondition(
            "singletons and diagonal must be positive".into(),
        ));
    }
    let cells = grid.cells_per_axis() as usize;
    // Centre of cell a along an axis is (2a + 1 - cells)·step/2. Scaling every
    // entry by L = 2·lcm(den step, den diagonal) makes all entries integers
    // without changing any minor's sign.
    let l = BigInt::from(2) * grid.step.denom().lcm(diagonal.denom());
    let unit = (&grid.step * Rational::from_integer(l.clone()) / int(2)).to_integer();
    let d = (diagonal * Rational::from_integer(l)).to_integer();
    let (unit, d) = match (unit.to_i128(), d.to_i128()) {
        (Some(u), Some(d)) if u.abs() < 1 << 20 && d.abs() < 1 << 20 => (u, d),
        _ => return Err(Error::Precondition("grid entries too large".into())),
    };
    let coord: Vec<i128> = (0..cells)
        .map(|a| (2 * a as i128 + 1 - cells as i128) * unit)
        .collect();
    let want = |k: u32| s.is_negative(k);
    let (w12, w13, w23, w123) = (want(0b011), want(0b101), want(0b110), want(0b111));

    // matched x-runs per (z, y) row, computed plane by plane
    let planes: Vec<Vec<Vec<(u32, u32)>>> = (0..cells)
        .into_par_iter()
        .map(|zi| {
            let z = coord[zi];
            let p23 = d * d - z * z;
            (0..cells)
                .map(|yi| {
                    let y = coord[yi];
                    let p13 = d * d - y * y;
                    let mut runs = Vec::new();
                    if p23 == 0 || p13 == 0 || (p23 < 0) != w23 || (p13 < 0) != w13 {
                        return runs;
                    }
                    let mut start: Option<u32> = None;
                    for (xi, &x) in coord.iter().enumerate() {
                        let p12 = d * d - x * x;
                        let p123 = d * d * d + 2 * x * y * z - d * (x * x + y * y + z * z);
                        let hit = p12 != 0 && p123 != 0 && (p12 < 0) == w12 && (p123 < 0) == w123;
                        match (hit, start) {
                            (true, None) => start = Some(xi as u32),
                            (false, Some(s0)) => {
                                runs.push((s0, xi as u32));
                                start = None;
                            }
                            _ => {}
                        }
                    }
                    if let Some(s0) = start {
                        runs.push((s0, cells as u32));
                    }
                    runs
                })
                .collect()
        })
        .collect();

    let (count, matched) = count_run_components(&planes);
    Ok(ComponentReport {
        pattern: s.clone(),
        count,
        cells: matched,
        grid: grid.clone(),
        diagonal: diagonal.clone(),
    })
}

/// Union–find over half-open x-runs `[x0, x1)` indexed by plane and row.
/// Runs touch when they overlap in x and sit in face-adjacent rows.
fn count_run_components(planes: &[Vec<Vec<(u32, u32)>>]) -> (u64, u64) {
    let mut ids: Vec<Vec<usize>> = Vec::new(); // first run id per row, per plane
    let mut parent: Vec<usize> = Vec::new();
    let mut matched = 0u64;
    for plane in planes {
        let mut firsts = Vec::with_capacity(plane.len());
        for row in plane {
            firsts.push(parent.len());
            for &(a, b) in row {
                parent.push(parent.len());
                matched += (b - a) as u64;
            }
        }
        ids.push(firsts);
    }
    for (z, plane) in planes.iter().enumerate() {
        for (y, row) in plane.iter().enumerate() {
            let base = ids[z][y];
            if y > 0 {
                link(&mut parent, row, base, &plane[y - 1], ids[z][y - 1]);
            }
            if z > 0 {
                link(&mut parent, row, base, &planes[z - 1][y], ids[z - 1][y]);
            }
        }
    }
    let roots = (0..parent.len())
        .filter(|&x| find(&mut parent, x) == x)
        .count();
    (roots as u64, matched)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Union overlapping runs of two sorted rows; run `i` of a row has id `base + i`.
fn link(parent: &mut [usize], r1: &[(u32, u32)], base1: usize, r2: &[(u32, u32)], base2: usize) {
    let (mut i, mut j) = (0, 0);
    while i < r1.len() && j < r2.len() {
        let (a0, a1) = r1[i];
        let (b0, b1) = r2[j];
        if a0 < b1 && b0 < a1 {
            union(parent, base1 + i, base2 + j);
        }
        if a1 < b1 {
            i += 1;
        } else {
            j += 1;
        }
    }
}

/// `Σ orbit_size × components` over the rows; every count must be positive.
pub fn total_from_counts(rows: &[(usize, u64)]) -> Result<u64> {
    rows.iter().try_fold(0u64, |acc, &(size, count)| {
        if count == 0 {
            Err(Error::Missing("component count for an orbit".into()))
        } else {
            Ok(acc + size as u64 * count)
        }
    })
}

/// Total number of components over all admissible patterns on three
/// elements, from per-representative counts on `grid` weighted by orbit size.
pub fn total_components_3(grid: &GridSpec) -> Result<u64> {
    let rows = table1()
        .into_iter()
        .map(|row| {
            Ok((
                row.orbit_size,
                count_components_3(&row.pattern, grid)?.count,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    total_from_counts(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coarse() -> GridSpec {
        GridSpec::new(int(4), ratio(1, 4)).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(int(8), ratio(3, 16)).is_err());
        assert!(GridSpec::new(int(0), ratio(1, 16)).is_err());
        assert_eq!(GridSpec::standard().cells_per_axis(), 256);
        let j = GridJson::from(&GridSpec::standard());
        assert_eq!((j.radius.as_str(), j.step.as_str()), ("8", "1/16"));
    }

    #[test]
    fn positive_pattern_is_one_region() {
        let r = count_components_3(&"++++++++".parse().unwrap(), &coarse()).unwrap();
        assert_eq!(r.count, 1);
        assert!(r.cells > 0);
        assert!(r.warning().is_none());
    }

    #[test]
    fn preconditions() {
        let g = coarse();
        assert!(count_components_3(&"+-++++++".parse().unwrap(), &g).is_err());
        assert!(count_components_3(&"++++".parse().unwrap(), &g).is_err());
    }

    #[test]
    fn runs_union_across_rows_and_planes() {
        // two planes, two rows: an L-shape plus an isolated run
        let planes = vec![
            vec![vec![(0, 2)], vec![(1, 3), (5, 6)]],
            vec![vec![], vec![(5, 6)]],
        ];
        assert_eq!(count_run_components(&planes), (2, 6));
        let diagonal_only = vec![vec![vec![(0, 1)], vec![(1, 2)]]];
        assert_eq!(count_run_components(&diagonal_only), (2, 2));
    }

    #[test]
    fn totals() {
        let rows = [(8, 1), (8, 4), (12, 2), (8, 4), (2, 16)];
        assert_eq!(total_from_counts(&rows), Ok(128));
        let zeros = [(8, 0), (8, 0), (12, 0), (8, 0), (2, 0)];
        assert!(total_from_counts(&zeros).is_err());
    }
}
