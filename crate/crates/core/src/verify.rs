//! Probe-grid soundness verification: over a finite grid of shift vectors,
//! the substitution oracle and the computed form system must agree exactly.
//!
//! Grid points are independent, so evaluation is data-parallel; the
//! `parallel` feature (default on) fans the grid out over rayon, and the
//! sequential path remains available for comparison.

use crate::certify::substitution_fixes;
use crate::constfield::Const;
use crate::poly::RatExpr;
use crate::subfield::SubfieldPresentation;
use crate::symbol::SymId;
use std::collections::BTreeMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The default probe grid, spanning each axis with small exact constants.
pub fn default_probe_grid() -> Vec<Const> {
    vec![
        Const::zero(),
        Const::from_integer(1),
        Const::from_integer(-1),
        Const::from_integer(2),
        Const::from_integer(-2),
        Const::from_ratio(1, 2),
    ]
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProbeReport {
    /// Grid points evaluated.
    pub points: u64,
    /// Points where the substitution fixed the expression.
    pub fixed: u64,
    /// Points where the oracle and the form system disagreed.
    pub mismatches: u64,
}

impl ProbeReport {
    pub fn sound(&self) -> bool {
        self.mismatches == 0
    }

    fn merge(mut self, other: ProbeReport) -> ProbeReport {
        self.points += other.points;
        self.fixed += other.fixed;
        self.mismatches += other.mismatches;
        self
    }
}

fn decode_point(mut idx: u64, grid: &[Const], vars: &[SymId]) -> BTreeMap<SymId, Const> {
    let base = grid.len() as u64;
    let mut shift = BTreeMap::new();
    for v in vars {
        let digit = (idx % base) as usize;
        idx /= base;
        let c = grid[digit].clone();
        if !c.is_zero() {
            shift.insert(v.clone(), c);
        }
    }
    shift
}

fn probe_point(
    u: &RatExpr,
    pres: &SubfieldPresentation,
    grid: &[Const],
    idx: u64,
) -> ProbeReport {
    let shift = decode_point(idx, grid, &pres.form_vars);
    let fixed = substitution_fixes(u, &shift, &BTreeMap::new())
        .expect("probe substitutions are well-formed");
    let vanish = pres.forms_vanish(&shift);
    ProbeReport {
        points: 1,
        fixed: fixed as u64,
        mismatches: (fixed != vanish) as u64,
    }
}

fn grid_size(grid: &[Const], nvars: usize) -> u64 {
    (grid.len() as u64)
        .checked_pow(nvars as u32)
        .expect("probe grid too large")
}

/// Sequential probe-grid run over all shift vectors in `grid^|form_vars|`.
pub fn probe_soundness_seq(
    u: &RatExpr,
    pres: &SubfieldPresentation,
    grid: &[Const],
) -> ProbeReport {
    let total = grid_size(grid, pres.form_vars.len());
    (0..total)
        .map(|i| probe_point(u, pres, grid, i))
        .fold(ProbeReport::default(), ProbeReport::merge)
}

/// Probe-grid run; parallel over grid points when the `parallel` feature is
/// enabled.
#[cfg(feature = "parallel")]
pub fn probe_soundness(u: &RatExpr, pres: &SubfieldPresentation, grid: &[Const]) -> ProbeReport {
    let total = grid_size(grid, pres.form_vars.len());
    (0..total)
        .into_par_iter()
        .map(|i| probe_point(u, pres, grid, i))
        .reduce(ProbeReport::default, ProbeReport::merge)
}

#[cfg(not(feature = "parallel"))]
pub fn probe_soundness(u: &RatExpr, pres: &SubfieldPresentation, grid: &[Const]) -> ProbeReport {
    probe_soundness_seq(u, pres, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MPoly;
    use crate::subfield::iterlog_subfield;
    use crate::symbol::LogSym;
    use crate::constfield::ConstVec;

    fn lv(k: i64) -> SymId {
        SymId::log(LogSym::new(ConstVec(vec![Const::from_integer(k)])))
    }

    #[test]
    fn example_one_denominator_sound_on_grid() {
        // u = y4 + x (y5 - 17 y6)^2
        let diff = &MPoly::var(lv(5)) - &MPoly::var(lv(6)).scale(&Const::from_integer(17));
        let u = RatExpr::from_poly(
            &MPoly::var(lv(4)) + &(&MPoly::var(SymId::x()) * &(&diff * &diff)),
        );
        let analysis = iterlog_subfield(&u).unwrap();
        let grid = vec![
            Const::zero(),
            Const::from_integer(1),
            Const::from_integer(17),
        ];
        let report = probe_soundness(&u, &analysis.presentation, &grid);
        assert!(report.sound(), "mismatches: {:?}", report);
        assert_eq!(report.points, 27);
        // the shift (0, 17, 1) fixes u, so at least one non-trivial fix
        assert!(report.fixed >= 2);
        // sequential path agrees
        assert_eq!(report, probe_soundness_seq(&u, &analysis.presentation, &grid));
    }
}
