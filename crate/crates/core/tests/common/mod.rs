//! Shared test support: seeded random generators for constants, symbols and
//! polynomials, plus small independent oracles (naive division, evaluation
//! gcd) used to cross-check the production algorithms.

#![allow(dead_code)]

use itlog_core::constfield::{Const, ConstVec};
use itlog_core::gauss::GaussRat;
use itlog_core::iterlog::{self, ClosureSet};
use itlog_core::poly::{MPoly, Mono, RatExpr};
use itlog_core::symbol::{LogSym, SymId};
use num_rational::BigRational;
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

pub fn small_consts() -> Vec<Const> {
    vec![
        Const::from_integer(1),
        Const::from_integer(-1),
        Const::from_integer(2),
        Const::from_integer(-2),
        Const::from_integer(3),
        Const::from_integer(5),
        Const::from_ratio(1, 2),
        Const::from_ratio(-1, 2),
        Const::i(),
        Const::atom("e").unwrap(),
        Const::atom("sqrt2").unwrap(),
    ]
}

pub fn shift_consts() -> Vec<Const> {
    vec![
        Const::zero(),
        Const::from_integer(1),
        Const::from_integer(2),
        Const::from_integer(-1),
        Const::from_integer(5),
        Const::from_ratio(1, 2),
        Const::i(),
        Const::atom("e").unwrap(),
    ]
}

pub fn rand_const(rng: &mut impl Rng) -> Const {
    let pool = small_consts();
    pool[rng.gen_range(0..pool.len())].clone()
}

pub fn rand_logsym(rng: &mut impl Rng, max_level: usize) -> LogSym {
    let level = rng.gen_range(1..=max_level);
    let pool = shift_consts();
    let shifts: Vec<Const> = (0..level)
        .map(|_| pool[rng.gen_range(0..pool.len())].clone())
        .collect();
    LogSym::new(ConstVec(shifts))
}

/// A random closure whose pi-base has between 1 and `max_base` elements.
pub fn rand_closure(rng: &mut impl Rng, max_base: usize, max_level: usize) -> ClosureSet {
    loop {
        let n = rng.gen_range(1..=max_base);
        let e: BTreeSet<LogSym> = (0..n).map(|_| rand_logsym(rng, max_level)).collect();
        let cl = iterlog::closure(&e).unwrap();
        if !cl.pi_base.is_empty() && cl.pi_base.len() <= max_base {
            return cl;
        }
    }
}

/// Random polynomial over the given symbols: at most `max_terms` monomials of
/// total degree at most `max_deg`.
pub fn rand_poly(
    rng: &mut impl Rng,
    syms: &[SymId],
    max_deg: u32,
    max_terms: usize,
) -> MPoly {
    let mut p = MPoly::zero();
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let mut budget = max_deg;
        let mut powers = Vec::new();
        for s in syms {
            if budget == 0 {
                break;
            }
            if rng.gen_bool(0.5) {
                let e = rng.gen_range(1..=budget.min(2));
                powers.push((s.clone(), e));
                budget -= e;
            }
        }
        p.add_term(Mono::from_powers(powers), rand_const(rng));
    }
    p
}

pub fn rand_nonzero_poly(
    rng: &mut impl Rng,
    syms: &[SymId],
    max_deg: u32,
    max_terms: usize,
) -> MPoly {
    loop {
        let p = rand_poly(rng, syms, max_deg, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random reduced iterated-log expression whose pi-base stays small enough
/// for full-grid probing.
pub fn rand_iterlog_expr(rng: &mut impl Rng, max_base: usize) -> RatExpr {
    loop {
        let cl = rand_closure(rng, max_base, 2);
        let pool: Vec<SymId> = cl.closure.iter().cloned().map(SymId::log).collect();
        let p = rand_poly(rng, &pool, 3, 4);
        let q = rand_nonzero_poly(rng, &pool, 3, 3);
        let u = RatExpr::new(p, q);
        let essential = iterlog::essential_elements(&u);
        if essential.is_empty() || essential.iter().all(|s| s.is_x()) {
            continue;
        }
        let logs: BTreeSet<LogSym> = essential
            .iter()
            .map(|s| s.as_log().unwrap().clone())
            .collect();
        let cl2 = iterlog::closure(&logs).unwrap();
        if cl2.pi_base.len() <= max_base {
            return u;
        }
    }
}

// ---------------------------------------------------------------------------
// Independent oracles
// ---------------------------------------------------------------------------

/// Naive recursive exact division, written against the dense univariate
/// recursion rather than leading-monomial cancellation.
pub fn oracle_divides(a: &MPoly, d: &MPoly) -> Option<MPoly> {
    assert!(!d.is_zero());
    if a.is_zero() {
        return Some(MPoly::zero());
    }
    let mut vars: Vec<SymId> = a.vars().into_iter().collect();
    for v in d.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    if vars.is_empty() {
        // both constants
        let (ac, dc) = (a.as_constant().unwrap(), d.as_constant().unwrap());
        return Some(MPoly::constant(ac.checked_div(&dc).unwrap()));
    }
    let v = vars.pop().unwrap();
    let da = a.univariate_in(&v);
    let dd = d.univariate_in(&v);
    let deg_d = dd.iter().rposition(|c| !c.is_zero())?;
    let mut rem = da;
    let mut quot: Vec<MPoly> = vec![MPoly::zero(); rem.len()];
    loop {
        let deg_r = match rem.iter().rposition(|c| !c.is_zero()) {
            None => break,
            Some(k) => k,
        };
        if deg_r < deg_d {
            return None;
        }
        // leading coefficient of the remainder must be divisible by that of d
        let qc = oracle_divides(&rem[deg_r], &dd[deg_d])?;
        let shift = deg_r - deg_d;
        quot[shift] = &quot[shift] + &qc;
        for (i, dc) in dd.iter().enumerate() {
            let t = &qc * dc;
            rem[shift + i] = &rem[shift + i] - &t;
        }
    }
    Some(MPoly::from_univariate(quot, &v))
}

fn eval_gauss_poly(
    p: &itlog_core::mpoly::MPoly<itlog_core::constfield::Atom, GaussRat>,
    atoms: &BTreeMap<String, GaussRat>,
) -> GaussRat {
    let mut acc = GaussRat::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (a, e) in m.powers() {
            let v = atoms.get(a.name()).expect("atom value provided");
            for _ in 0..*e {
                t = &t * v;
            }
        }
        acc = &acc + &t;
    }
    acc
}

/// Evaluate a constant at rational atom values; `None` on a vanishing
/// denominator.
pub fn eval_const(c: &Const, atoms: &BTreeMap<String, GaussRat>) -> Option<GaussRat> {
    let frac = c.as_fraction();
    let num = eval_gauss_poly(frac.num(), atoms);
    let den = eval_gauss_poly(frac.den(), atoms);
    if den.is_zero() {
        return None;
    }
    Some(&num / &den)
}

/// Evaluate a polynomial at symbol and atom assignments.
pub fn eval_poly(
    p: &MPoly,
    vals: &BTreeMap<SymId, GaussRat>,
    atoms: &BTreeMap<String, GaussRat>,
) -> Option<GaussRat> {
    let mut acc = GaussRat::zero();
    for (m, c) in p.terms() {
        let mut t = eval_const(c, atoms)?;
        for (v, e) in m.powers() {
            let val = vals.get(v)?;
            for _ in 0..*e {
                t = &t * val;
            }
        }
        acc = &acc + &t;
    }
    Some(acc)
}

/// Specialize all variables but `v` and all atoms at the given values,
/// producing a dense univariate coefficient vector.
pub fn specialize_univariate(
    p: &MPoly,
    v: &SymId,
    vals: &BTreeMap<SymId, GaussRat>,
    atoms: &BTreeMap<String, GaussRat>,
) -> Option<Vec<GaussRat>> {
    let mut out = vec![GaussRat::zero(); p.degree_in(v) as usize + 1];
    for coeff_poly in p.univariate_in(v).iter().enumerate().map(|(e, c)| (e, c)) {
        let (e, c) = coeff_poly;
        let val = eval_poly(c, vals, atoms)?;
        out[e] = &out[e] + &val;
    }
    Some(out)
}

fn uni_deg(p: &[GaussRat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Euclidean gcd of dense univariate polynomials over Q(i); returns the
/// degree of the (monic) gcd.
pub fn uni_gcd_degree(a: &[GaussRat], b: &[GaussRat]) -> usize {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    loop {
        let (Some(da), Some(db)) = (uni_deg(&a), uni_deg(&b)) else {
            return uni_deg(&a).or(uni_deg(&b)).unwrap_or(0);
        };
        if da < db {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // a = a - lc(a)/lc(b) x^(da-db) b
        let factor = &a[da] / &b[db];
        let shift = da - db;
        for i in 0..=db {
            let t = &factor * &b[i];
            a[shift + i] = &a[shift + i] - &t;
        }
        if uni_deg(&a).map(|d| d >= da).unwrap_or(false) {
            unreachable!("degree must drop");
        }
        if uni_deg(&a).is_none() {
            return db;
        }
    }
}

pub fn rand_rational(rng: &mut impl Rng) -> GaussRat {
    GaussRat::new(
        BigRational::from_integer(rng.gen_range(-20i64..=20).into()),
        BigRational::from_integer(0.into()),
    )
}
