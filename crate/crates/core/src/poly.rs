//! The working polynomial ring: tower symbols with constant coefficients,
//! plus the user-declared derivation and divisibility/irreducibility helpers.

use crate::constfield::{poly_to_string, Const};
use crate::error::{Error, Result};
use crate::mpoly::{self, Coeff, Monomial};
use crate::symbol::SymId;
use std::collections::{BTreeMap, BTreeSet};

pub type MPoly = mpoly::MPoly<SymId, Const>;
pub type RatExpr = mpoly::Fraction<SymId, Const>;
pub type Mono = Monomial<SymId>;

pub fn poly_to_text(p: &MPoly) -> String {
    poly_to_string(p, Const::parts)
}

pub fn rat_to_text(u: &RatExpr) -> String {
    if u.is_poly() {
        return poly_to_text(u.num());
    }
    format!("({})/({})", poly_to_text(u.num()), poly_to_text(u.den()))
}

/// Reduce a fraction of polynomials to canonical form.
pub fn reduce_fraction(num: MPoly, den: MPoly) -> Result<RatExpr> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(RatExpr::new(num, den))
}

/// GCD with the precondition check surfaced as an error.
pub fn poly_gcd(a: &MPoly, b: &MPoly) -> Result<MPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    Ok(mpoly::poly_gcd(a, b))
}

/// Exact divisibility with quotient.
pub fn divides(a: &MPoly, b: &MPoly) -> Result<Option<MPoly>> {
    if a.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    Ok(b.checked_div(a))
}

// ---------------------------------------------------------------------------
// Derivation
// ---------------------------------------------------------------------------

/// The kind of a tower symbol for derivation purposes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DerivKind {
    /// The table entry is the derivative itself.
    Antiderivative,
    /// The table entry is the logarithmic derivative e'/e.
    Exponential,
}

/// The declared derivation: each symbol maps to its derivative (or, for
/// exponentials, its logarithmic derivative) over strictly earlier symbols.
#[derive(Clone, Debug, Default)]
pub struct DerivationTable {
    entries: BTreeMap<SymId, (DerivKind, RatExpr)>,
    /// Tower depth of each symbol: x has level 0; otherwise one more than the
    /// maximum level mentioned by the entry.
    levels: BTreeMap<SymId, usize>,
}

impl DerivationTable {
    pub fn new() -> Self {
        let mut t = DerivationTable::default();
        t.levels.insert(SymId::x(), 0);
        t
    }

    /// Append a symbol. Its entry may mention only x and previously declared
    /// symbols; anything else is an ill-founded tower.
    pub fn declare(&mut self, sym: SymId, kind: DerivKind, entry: RatExpr) -> Result<()> {
        let mut level = 0usize;
        for v in entry.vars() {
            match self.levels.get(&v) {
                Some(l) => level = level.max(l + 1),
                None => {
                    if v.is_x() {
                        level = level.max(1);
                    } else {
                        return Err(Error::IllFoundedTower(sym.to_string()));
                    }
                }
            }
        }
        if entry.vars().is_empty() {
            // derivative lies in C, e.g. x' = 1
            level = 1;
        }
        if sym.is_x() {
            return Err(Error::IllFoundedTower("x".to_string()));
        }
        self.levels.insert(sym.clone(), level);
        self.entries.insert(sym, (kind, entry));
        Ok(())
    }

    /// Table for a set of iterated logarithms, by the closed-form derivative.
    pub fn for_iterlogs<'a>(symbols: impl IntoIterator<Item = &'a SymId>) -> Self {
        let mut t = DerivationTable::new();
        for s in symbols {
            if let SymId::Log(l) = s {
                if !l.is_x() {
                    t.levels.insert(s.clone(), l.level());
                    t.entries.insert(
                        s.clone(),
                        (DerivKind::Antiderivative, crate::iterlog::log_derivative(l)),
                    );
                }
            }
        }
        t
    }

    pub fn level(&self, sym: &SymId) -> Option<usize> {
        self.levels.get(sym).copied()
    }

    pub fn kind(&self, sym: &SymId) -> Option<DerivKind> {
        if sym.is_x() {
            return Some(DerivKind::Antiderivative);
        }
        self.entries.get(sym).map(|(k, _)| *k)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &SymId> {
        self.entries.keys()
    }

    /// The derivative of a symbol as a rational expression: table entry for
    /// antiderivatives, (e'/e) * e for exponentials, 1 for x.
    pub fn derivative_of(&self, sym: &SymId) -> Result<RatExpr> {
        if sym.is_x() {
            return Ok(RatExpr::one());
        }
        let (kind, entry) = self
            .entries
            .get(sym)
            .ok_or_else(|| Error::UnknownSymbol(sym.to_string()))?;
        Ok(match kind {
            DerivKind::Antiderivative => entry.clone(),
            DerivKind::Exponential => entry.mul(&RatExpr::var(sym.clone())),
        })
    }

    /// The derivative as a numerator and a denominator factor list. Iterated
    /// logs yield their chain of degree-1 factors directly, which keeps the
    /// later reduction to cheap trial divisions.
    pub fn derivative_parts(&self, sym: &SymId) -> Result<(MPoly, Vec<MPoly>)> {
        if sym.is_x() {
            return Ok((MPoly::one(), Vec::new()));
        }
        if let SymId::Log(l) = sym {
            if self.entries.contains_key(sym) || self.levels.contains_key(sym) {
                return Ok((MPoly::one(), crate::iterlog::log_derivative_factors(l)));
            }
        }
        let d = self.derivative_of(sym)?;
        let mut factors = Vec::new();
        if !d.den().is_constant() {
            factors.push(d.den().clone());
        } else {
            debug_assert!(d.den().as_constant().map(|c| c.is_one()).unwrap_or(false));
        }
        Ok((d.num().clone(), factors))
    }
}

/// Derivative of a polynomial, as an unreduced numerator over a denominator
/// kept as a factor list; fractions are accumulated over the running product
/// so the caller pays for one structured reduction at the end.
fn derivation_poly_raw(p: &MPoly, table: &DerivationTable) -> Result<(MPoly, Vec<MPoly>)> {
    let mut num = MPoly::zero();
    let mut factors: Vec<MPoly> = Vec::new();
    for v in p.vars() {
        let dp = p.partial(&v);
        if dp.is_zero() {
            continue;
        }
        let (dv_num, dv_factors) = table.derivative_parts(&v)?;
        // num/den + dp * dv_num/dv_den: accumulate without reducing
        let mut dv_den = MPoly::one();
        for f in &dv_factors {
            dv_den = &dv_den * f;
        }
        let mut den = MPoly::one();
        for f in &factors {
            den = &den * f;
        }
        num = &(&num * &dv_den) + &(&(&dp * &dv_num) * &den);
        factors.extend(dv_factors);
    }
    Ok((num, factors))
}

/// Reduce a numerator against a denominator factor list: degree-1 factors
/// (always irreducible) cancel by trial division, everything else goes
/// through one polynomial gcd of moderate size.
fn reduce_with_factors(mut num: MPoly, factors: Vec<MPoly>) -> RatExpr {
    if num.is_zero() {
        return RatExpr::zero();
    }
    let mut den = MPoly::one();
    for f in factors {
        if f.is_constant() {
            let c = f.as_constant().unwrap();
            num = num.map_coeffs(|x| x.div_ref(&c));
        } else if f.total_degree() == 1 {
            // degree-1 factors are irreducible: cancel or keep whole
            match num.checked_div(&f) {
                Some(q) => num = q,
                None => den = &den * &f,
            }
        } else {
            let g = crate::mpoly::poly_gcd(&num, &f);
            if g.is_constant() {
                den = &den * &f;
            } else {
                num = num.exact_div(&g);
                den = &den * &f.exact_div(&g);
            }
        }
    }
    RatExpr::from_coprime(num, den)
}

/// Derivative of a polynomial under the declared derivation (the coefficients
/// are constants, so only symbols contribute).
pub fn apply_derivation_poly(p: &MPoly, table: &DerivationTable) -> Result<RatExpr> {
    let (num, factors) = derivation_poly_raw(p, table)?;
    Ok(reduce_with_factors(num, factors))
}

/// Derivative of a reduced fraction via the quotient rule, reducing once
/// against the known denominator factors.
pub fn apply_derivation(u: &RatExpr, table: &DerivationTable) -> Result<RatExpr> {
    if u.is_poly() {
        return apply_derivation_poly(u.num(), table);
    }
    let (np, dp_factors) = derivation_poly_raw(u.num(), table)?;
    let (nq, dq_factors) = derivation_poly_raw(u.den(), table)?;
    let mut dp = MPoly::one();
    for f in &dp_factors {
        dp = &dp * f;
    }
    let mut dq = MPoly::one();
    for f in &dq_factors {
        dq = &dq * f;
    }
    // (P/Q)' = (P'Q - PQ')/Q^2 with P' = np/dp, Q' = nq/dq
    let num = &(&(&np * &dq) * u.den()) - &(&(&nq * &dp) * u.num());
    let mut factors = dp_factors;
    factors.extend(dq_factors);
    factors.push(u.den().clone());
    factors.push(u.den().clone());
    Ok(reduce_with_factors(num, factors))
}

// ---------------------------------------------------------------------------
// Irreducibility
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// Carries a proper factorization p = a * b.
    Reducible(MPoly, MPoly),
    Unknown,
}

/// Decide irreducibility for total degree <= 2; degree >= 3 is out of reach.
///
/// Degree 1 over a field is always irreducible. For degree 2 the polynomial
/// is inspected in its greatest variable: linear case by content, quadratic
/// case by discriminant root extraction in Q(i)(atoms). A quadratic whose
/// roots are not representable reports Unknown, never Irreducible, since the
/// intended constant field is algebraically closed.
pub fn irreducible_linear_check(p: &MPoly) -> Result<Irreducibility> {
    if p.is_zero() || p.is_constant() {
        return Err(Error::ConstantInput);
    }
    let deg = p.total_degree();
    if deg == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    if deg >= 3 {
        return Ok(Irreducibility::Unknown);
    }
    let v = p.vars().into_iter().next_back().unwrap();
    let coeffs = p.univariate_in(&v);
    match coeffs.len() - 1 {
        0 => unreachable!("nonconstant polynomial with empty main variable"),
        1 => {
            // p = A v + B; reducible iff the content gcd(A, B) is nonconstant
            let a = &coeffs[1];
            let b = &coeffs[0];
            if b.is_zero() {
                if a.is_constant() {
                    // p = c v: associate of v with v irreducible; but deg 2
                    // forces a nonconstant A here, so this is v * A
                    return Ok(Irreducibility::Irreducible);
                }
                return Ok(Irreducibility::Reducible(
                    a.clone(),
                    MPoly::var(v.clone()),
                ));
            }
            let g = mpoly::poly_gcd(a, b);
            if g.is_constant() {
                Ok(Irreducibility::Irreducible)
            } else {
                Ok(Irreducibility::Reducible(g.clone(), p.exact_div(&g)))
            }
        }
        2 => {
            // p = A v^2 + B v + C; try to split via the discriminant
            let a = coeffs[2].clone();
            let b = coeffs[1].clone();
            let c = coeffs[0].clone();
            match (a.as_constant(), b.as_constant(), c.as_constant()) {
                (Some(ac), Some(bc), Some(cc)) => {
                    let four = Const::from_integer(4);
                    let disc = bc.mul(&bc).sub(&four.mul(&ac).mul(&cc));
                    match disc.sqrt() {
                        Some(root) => {
                            let two_a = ac.add(&ac);
                            let r1 = bc.neg().add(&root).checked_div(&two_a).unwrap();
                            let r2 = bc.neg().sub(&root).checked_div(&two_a).unwrap();
                            // p = a (v - r1)(v - r2)
                            let lin = |r: &Const| {
                                let mut q = MPoly::var(v.clone());
                                q.add_term(Mono::unit(), r.neg());
                                q
                            };
                            let f1 = lin(&r1).scale(&ac);
                            let f2 = lin(&r2);
                            Ok(Irreducibility::Reducible(f1, f2))
                        }
                        // roots exist over the algebraic closure but are not
                        // representable here
                        None => Ok(Irreducibility::Unknown),
                    }
                }
                _ => {
                    // multivariate quadratic in v: a common content splits it
                    let g = mpoly::poly_gcd(&a, &mpoly::poly_gcd(&b, &c));
                    if !g.is_constant() {
                        return Ok(Irreducibility::Reducible(g.clone(), p.exact_div(&g)));
                    }
                    Ok(Irreducibility::Unknown)
                }
            }
        }
        _ => Ok(Irreducibility::Unknown),
    }
}

/// Homogeneous decomposition grading only the given variables.
pub fn homogeneous_components(p: &MPoly, vars: &BTreeSet<SymId>) -> Vec<(u64, MPoly)> {
    p.homogeneous_components(vars)
}

/// Exact Taylor shift by constants.
pub fn translate(p: &MPoly, shift: &BTreeMap<SymId, Const>) -> MPoly {
    p.translate(shift)
}
