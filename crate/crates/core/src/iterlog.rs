//! Iterated-logarithm combinatorics: derivatives, essential elements, the
//! projection closure with its levelled partition and pi-base, and the two
//! towers.

use crate::error::{Error, Result};
use crate::poly::{MPoly, RatExpr};
use crate::symbol::{LogSym, SymId};
use std::collections::BTreeSet;

/// The denominator factors of the derivative of an iterated logarithm: the
/// chain (pi^{i+1}(y) + shift_i) over all levels below y. Each factor has
/// total degree 1 and is therefore irreducible.
pub fn log_derivative_factors(y: &LogSym) -> Vec<MPoly> {
    let n = y.level();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // factor (l[pi^{i+1}(c), n-i-1] + psi_{n-i}(pi^i(c)))
        let arg = y.project(i + 1);
        let shift = y
            .project(i)
            .outer_shift()
            .expect("level >= 1 symbol has an outer shift");
        let mut factor = MPoly::var(SymId::log(arg));
        factor.add_term(crate::poly::Mono::unit(), shift);
        out.push(factor);
    }
    out
}

/// Derivative of an iterated logarithm, fully expanded: the product of
/// reciprocals of (pi^{i+1}(y) + shift) over all levels below y. Level 0
/// (x itself) has derivative 1.
pub fn log_derivative(y: &LogSym) -> RatExpr {
    let mut den = MPoly::one();
    for f in log_derivative_factors(y) {
        den = &den * &f;
    }
    RatExpr::new(MPoly::one(), den)
}

/// The set of essential elements of a reduced fraction: symbols with a
/// nonzero partial in the numerator or denominator. Unique by reducedness.
pub fn essential_elements(u: &RatExpr) -> BTreeSet<SymId> {
    let mut out = BTreeSet::new();
    for v in u.vars() {
        if !u.num().partial(&v).is_zero() || !u.den().partial(&v).is_zero() {
            out.insert(v.clone());
        }
    }
    out
}

/// The projection closure of a finite symbol set, with the data the
/// structure algorithm needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureSet {
    /// The closure: union of all projections of E.
    pub closure: BTreeSet<LogSym>,
    /// Minimal n with pi^n(E) = {x}; equals the maximal level in E.
    pub depth: usize,
    /// Levelled partition T_0 .. T_n (T_i = level-i elements of the closure).
    pub levels: Vec<BTreeSet<LogSym>>,
    /// The pi-base: E minus everything reachable by projecting E.
    pub pi_base: BTreeSet<LogSym>,
}

impl ClosureSet {
    /// Base symbols of the presentation: the closure minus the pi-base,
    /// i.e. the union of all proper projections, always containing x.
    pub fn projected_base(&self) -> BTreeSet<LogSym> {
        self.closure
            .iter()
            .filter(|y| !self.pi_base.contains(y))
            .cloned()
            .collect()
    }
}

fn to_logsyms(set: &BTreeSet<SymId>) -> Result<BTreeSet<LogSym>> {
    set.iter()
        .map(|s| match s {
            SymId::Log(l) => Ok(l.clone()),
            other => Err(Error::NotIterLogExpression(other.to_string())),
        })
        .collect()
}

/// Compute the closure, levelled partition and pi-base of a nonempty set of
/// iterated-log symbols.
pub fn closure(e: &BTreeSet<LogSym>) -> Result<ClosureSet> {
    if e.is_empty() {
        return Err(Error::EmptyInput);
    }
    let depth = e.iter().map(|y| y.level()).max().unwrap();
    let mut closure: BTreeSet<LogSym> = BTreeSet::new();
    let mut projected: BTreeSet<LogSym> = BTreeSet::new();
    for k in 0..=depth {
        for y in e {
            let p = y.project(k);
            closure.insert(p.clone());
            if k >= 1 {
                projected.insert(p);
            }
        }
    }
    // x enters through pi^depth even if E held only deeper symbols
    closure.insert(LogSym::x());
    if depth >= 1 {
        projected.insert(LogSym::x());
    }
    let mut levels: Vec<BTreeSet<LogSym>> = vec![BTreeSet::new(); depth + 1];
    for y in &closure {
        levels[y.level()].insert(y.clone());
    }
    // E = {x} has the trivial closure with an empty base
    let pi_base: BTreeSet<LogSym> = if depth == 0 {
        BTreeSet::new()
    } else {
        e.iter().filter(|y| !projected.contains(y)).cloned().collect()
    };
    Ok(ClosureSet {
        closure,
        depth,
        levels,
        pi_base,
    })
}

/// Closure of the essential elements of an expression.
pub fn closure_of_expr(u: &RatExpr) -> Result<ClosureSet> {
    let e = to_logsyms(&essential_elements(u))?;
    if e.is_empty() {
        return Err(Error::EmptyInput);
    }
    closure(&e)
}

/// The two towers over the closure, as ascending chains of symbol sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerReport {
    /// K_i = C(T_0 u ... u T_i): levelled partition tower, ascending.
    pub levelled: Vec<BTreeSet<LogSym>>,
    /// P_i = C(pi^{n}(P) u ... u pi^{n-i}(P)): pi-tower, ascending.
    pub pi: Vec<BTreeSet<LogSym>>,
}

pub fn towers(c: &ClosureSet) -> TowerReport {
    let n = c.depth;
    let mut levelled = Vec::with_capacity(n + 1);
    let mut acc: BTreeSet<LogSym> = BTreeSet::new();
    for i in 0..=n {
        acc.extend(c.levels[i].iter().cloned());
        levelled.push(acc.clone());
    }
    let mut pi = Vec::with_capacity(n + 1);
    let mut acc: BTreeSet<LogSym> = BTreeSet::new();
    acc.insert(LogSym::x());
    for i in 0..=n {
        for y in &c.pi_base {
            acc.insert(y.project(n - i));
        }
        pi.push(acc.clone());
    }
    for (p, k) in pi.iter().zip(levelled.iter()) {
        debug_assert!(p.is_subset(k), "pi-tower must sit inside the levelled tower");
    }
    TowerReport { levelled, pi }
}
