//! Sparse multivariate polynomials and reduced fractions over an exact
//! coefficient field.
//!
//! The same engine is instantiated twice: once with Gaussian-rational
//! coefficients and named atoms (the constant field), and once with constant
//! coefficients and tower symbols (the working polynomial ring). Monomials are
//! ordered graded-lexicographically with respect to the variable order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact field of coefficients.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// Field division; `other` must be nonzero.
    fn div_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Specialize to a Gaussian rational for evaluation-based degree bounds;
    /// free atoms take values derived from `salt`. `None` when a denominator
    /// vanishes at the chosen point.
    fn spec_value(&self, salt: u64) -> Option<crate::gauss::GaussRat>;
}

impl Coeff for crate::gauss::GaussRat {
    fn zero() -> Self {
        crate::gauss::GaussRat::zero()
    }
    fn one() -> Self {
        crate::gauss::GaussRat::one()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn spec_value(&self, _salt: u64) -> Option<crate::gauss::GaussRat> {
        Some(self.clone())
    }
}

/// Variable identifier. The `Ord` impl fixes the global monomial order.
pub trait Var: Clone + Ord + Eq + fmt::Debug {}
impl<T: Clone + Ord + Eq + fmt::Debug> Var for T {}

/// A power product of variables; exponents are strictly positive.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial<V: Var> {
    // sorted by variable, no zero exponents
    powers: Vec<(V, u32)>,
}

impl<V: Var> Monomial<V> {
    pub fn unit() -> Self {
        Monomial { powers: Vec::new() }
    }

    pub fn var(v: V) -> Self {
        Monomial {
            powers: vec![(v, 1)],
        }
    }

    pub fn from_powers(mut powers: Vec<(V, u32)>) -> Self {
        powers.retain(|(_, e)| *e > 0);
        powers.sort_by(|a, b| a.0.cmp(&b.0));
        Monomial { powers }
    }

    pub fn is_unit(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.powers.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn degree_in(&self, v: &V) -> u32 {
        self.powers
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn degree_in_set(&self, vars: &BTreeSet<V>) -> u64 {
        self.powers
            .iter()
            .filter(|(v, _)| vars.contains(v))
            .map(|(_, e)| *e as u64)
            .sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = &V> {
        self.powers.iter().map(|(v, _)| v)
    }

    pub fn powers(&self) -> &[(V, u32)] {
        &self.powers
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            match self.powers[i].0.cmp(&other.powers[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.powers[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.powers[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.powers[i].0.clone(), self.powers[i].1 + other.powers[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.powers[i..]);
        out.extend_from_slice(&other.powers[j..]);
        Monomial { powers: out }
    }

    /// Componentwise quotient, if `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.powers.len());
        let mut j = 0;
        for (v, e) in &self.powers {
            while j < other.powers.len() && other.powers[j].0 < *v {
                return None; // other has a variable self lacks
            }
            if j < other.powers.len() && other.powers[j].0 == *v {
                let oe = other.powers[j].1;
                if oe > *e {
                    return None;
                }
                if *e > oe {
                    out.push((v.clone(), e - oe));
                }
                j += 1;
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.powers.len() {
            return None;
        }
        Some(Monomial { powers: out })
    }

    /// Restriction to the variables in `vars`.
    pub fn project(&self, vars: &BTreeSet<V>) -> Self {
        Monomial {
            powers: self
                .powers
                .iter()
                .filter(|(v, _)| vars.contains(v))
                .cloned()
                .collect(),
        }
    }

    /// Restriction to the variables not in `vars`.
    pub fn coproject(&self, vars: &BTreeSet<V>) -> Self {
        Monomial {
            powers: self
                .powers
                .iter()
                .filter(|(v, _)| !vars.contains(v))
                .cloned()
                .collect(),
        }
    }
}

impl<V: Var> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Var> Ord for Monomial<V> {
    /// Graded lexicographic: total degree first, then the first variable (in
    /// the global variable order) with differing exponent decides.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            let (va, ea) = &self.powers[i];
            let (vb, eb) = &other.powers[j];
            match va.cmp(vb) {
                // self has a power of an earlier variable that other lacks
                std::cmp::Ordering::Less => return std::cmp::Ordering::Greater,
                std::cmp::Ordering::Greater => return std::cmp::Ordering::Less,
                std::cmp::Ordering::Equal => match ea.cmp(eb) {
                    std::cmp::Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    ord => return ord,
                },
            }
        }
        match (i < self.powers.len(), j < other.powers.len()) {
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Equal,
        }
    }
}

/// A sparse multivariate polynomial; the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly<V: Var, C: Coeff> {
    terms: BTreeMap<Monomial<V>, C>,
}

impl<V: Var, C: Coeff> MPoly<V, C> {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        MPoly { terms }
    }

    pub fn var(v: V) -> Self {
        Self::from_monomial(Monomial::var(v), C::one())
    }

    pub fn from_monomial(m: Monomial<V>, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial<V>, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    /// The coefficient of the unit monomial when the polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        if self.terms.is_empty() {
            return Some(C::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial<V>) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: &V) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<V> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for v in m.vars() {
                out.insert(v.clone());
            }
        }
        out
    }

    /// Leading term under the graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial<V>, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> C {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|x| x.mul_ref(c))
    }

    /// Division by the leading coefficient, making the polynomial monic.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, lc)) => {
                let lc = lc.clone();
                self.map_coeffs(|x| x.div_ref(&lc))
            }
        }
    }

    pub fn mul_monomial(&self, m: &Monomial<V>, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (mm, cc) in &self.terms {
            out.add_term(mm.mul(m), cc.mul_ref(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial(&self, v: &V) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(v);
            if e == 0 {
                continue;
            }
            let mut powers: Vec<(V, u32)> = m.powers().to_vec();
            for p in powers.iter_mut() {
                if &p.0 == v {
                    p.1 -= 1;
                }
            }
            // multiply coefficient by the exponent
            let mut k = C::zero();
            for _ in 0..e {
                k = k.add_ref(&C::one());
            }
            out.add_term(Monomial::from_powers(powers), c.mul_ref(&k));
        }
        out
    }

    /// Exact multivariate division: `Some(q)` with `self = q * d` iff `d`
    /// divides `self`.
    pub fn checked_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.checked_div(dm)?;
            let qc = rc.div_ref(dc);
            let piece = d.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
            rem = &rem - &piece;
        }
        Some(quot)
    }

    /// Exact division that must succeed; panics otherwise.
    pub fn exact_div(&self, d: &Self) -> Self {
        self.checked_div(d).expect("exact division failed")
    }

    /// Substitute `v -> v + shift` for each entry, exactly (Taylor shift).
    pub fn translate(&self, shifts: &BTreeMap<V, C>) -> Self {
        let mut p = self.clone();
        for (v, c) in shifts {
            if c.is_zero() {
                continue;
            }
            p = p.translate_one(v, c);
        }
        p
    }

    fn translate_one(&self, v: &V, c: &C) -> Self {
        let d = self.degree_in(v);
        if d == 0 {
            return self.clone();
        }
        // Horner in v: collect coefficients of v^k (free of v), then fold.
        let mut coeffs: Vec<Self> = vec![Self::zero(); (d + 1) as usize];
        for (m, k) in &self.terms {
            let e = m.degree_in(v);
            let mut powers: Vec<(V, u32)> = m
                .powers()
                .iter()
                .filter(|(w, _)| w != v)
                .cloned()
                .collect();
            powers.retain(|(_, e)| *e > 0);
            coeffs[e as usize].add_term(Monomial::from_powers(powers), k.clone());
        }
        let shifted = {
            let mut s = Self::var(v.clone());
            s.add_term(Monomial::unit(), c.clone());
            s
        };
        let mut acc = Self::zero();
        for k in (0..=d).rev() {
            acc = &(&acc * &shifted) + &coeffs[k as usize];
        }
        acc
    }

    /// General substitution of variables by polynomials.
    pub fn substitute(&self, map: &BTreeMap<V, Self>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (v, e) in m.powers() {
                let factor = match map.get(v) {
                    Some(repl) => repl.pow(*e),
                    None => Self::from_monomial(Monomial::from_powers(vec![(v.clone(), *e)]), C::one()),
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        out
    }

    /// Decomposition into components homogeneous in `vars`; degrees strictly
    /// increasing, components sum to `self`.
    pub fn homogeneous_components(&self, vars: &BTreeSet<V>) -> Vec<(u64, Self)> {
        let mut by_deg: BTreeMap<u64, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.degree_in_set(vars);
            by_deg.entry(d).or_insert_with(Self::zero).add_term(m.clone(), c.clone());
        }
        by_deg.into_iter().collect()
    }

    /// Coefficients with respect to one variable: index k holds the
    /// coefficient of `v^k`, a polynomial free of `v`.
    pub fn univariate_in(&self, v: &V) -> Vec<Self> {
        let d = self.degree_in(v) as usize;
        let mut coeffs = vec![Self::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.degree_in(v) as usize;
            let rest: Vec<(V, u32)> = m
                .powers()
                .iter()
                .filter(|(w, _)| w != v)
                .cloned()
                .collect();
            coeffs[e].add_term(Monomial::from_powers(rest), c.clone());
        }
        coeffs
    }

    pub fn from_univariate(coeffs: Vec<Self>, v: &V) -> Self {
        let mut out = Self::zero();
        for (e, c) in coeffs.into_iter().enumerate() {
            let vm = Monomial::from_powers(vec![(v.clone(), e as u32)]);
            out = &out + &c.mul_monomial(&vm, &C::one());
        }
        out
    }
}

impl<'a, V: Var, C: Coeff> Add for &'a MPoly<V, C> {
    type Output = MPoly<V, C>;
    fn add(self, rhs: Self) -> MPoly<V, C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, V: Var, C: Coeff> Sub for &'a MPoly<V, C> {
    type Output = MPoly<V, C>;
    fn sub(self, rhs: Self) -> MPoly<V, C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }
}

impl<'a, V: Var, C: Coeff> Mul for &'a MPoly<V, C> {
    type Output = MPoly<V, C>;
    fn mul(self, rhs: Self) -> MPoly<V, C> {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        out
    }
}

impl<'a, V: Var, C: Coeff> Neg for &'a MPoly<V, C> {
    type Output = MPoly<V, C>;
    fn neg(self) -> MPoly<V, C> {
        self.map_coeffs(|c| c.neg_ref())
    }
}

// ---------------------------------------------------------------------------
// GCD
// ---------------------------------------------------------------------------

/// GCD of two polynomials, normalized monic under the global monomial order.
///
/// Recursive content/primitive-part computation with a subresultant PRS in a
/// chosen main variable. An evaluation shortcut certifies trivial per-variable
/// degrees first, so the common coprime case never enters the PRS.
pub fn poly_gcd<V: Var, C: Coeff>(a: &MPoly<V, C>, b: &MPoly<V, C>) -> MPoly<V, C> {
    assert!(!(a.is_zero() && b.is_zero()), "gcd of two zero polynomials");
    gcd_inner(a, b).monic()
}

fn gcd_inner<V: Var, C: Coeff>(a: &MPoly<V, C>, b: &MPoly<V, C>) -> MPoly<V, C> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let mut vars: Vec<V> = {
        let mut s = a.vars();
        s.extend(b.vars());
        s.into_iter().collect()
    };
    if vars.is_empty() {
        return MPoly::one();
    }
    // trial division handles nested gcds cheaply
    if b.checked_div(a).is_some() {
        return a.clone();
    }
    if a.checked_div(b).is_some() {
        return b.clone();
    }
    // drop variables certified (by evaluation) to not occur in the gcd: the
    // gcd lies in the ring over the remaining variables, so the answer is the
    // gcd of the corresponding contents; tiny instances go straight to the PRS
    if vars.len() >= 2 || a.num_terms() + b.num_terms() >= 8 {
        vars.retain(|v| !degree_certified_zero(a, b, v));
    } else {
        vars.retain(|v| a.degree_in(v) > 0 && b.degree_in(v) > 0);
    }
    if vars.is_empty() {
        return MPoly::one();
    }
    // main variable: smallest surviving min-degree keeps the PRS short
    let v = vars
        .iter()
        .min_by_key(|v| a.degree_in(v).min(b.degree_in(v)))
        .unwrap()
        .clone();
    let ua = multi_content_split(a, &vars, &v);
    let ub = multi_content_split(b, &vars, &v);
    let (cont_a, pa) = ua;
    let (cont_b, pb) = ub;
    let cont = gcd_inner(&cont_a, &cont_b);
    let pgcd = subresultant_prs(pa, pb);
    let pgcd = {
        let c = content(&pgcd);
        pgcd.iter().map(|x| x.exact_div(&c)).collect::<Vec<_>>()
    };
    let g = MPoly::from_univariate(pgcd, &v);
    &g * &cont
}

/// Split into (content, primitive part) with respect to `v`; when the gcd is
/// known to avoid variables outside `vars`, contents of coefficients still
/// recurse over everything present.
fn multi_content_split<V: Var, C: Coeff>(
    p: &MPoly<V, C>,
    _vars: &[V],
    v: &V,
) -> (MPoly<V, C>, Vec<MPoly<V, C>>) {
    let up = p.univariate_in(v);
    let cont = content(&up);
    let prim: Vec<_> = up.iter().map(|c| c.exact_div(&cont)).collect();
    (cont, prim)
}

/// Certify by specialization that no common factor involves `v`: some
/// evaluation of the other variables keeps the leading coefficient in `v`
/// alive and makes the univariate images coprime.
fn degree_certified_zero<V: Var, C: Coeff>(a: &MPoly<V, C>, b: &MPoly<V, C>, v: &V) -> bool {
    use crate::gauss::GaussRat;
    let da = a.degree_in(v);
    let db = b.degree_in(v);
    if da == 0 || db == 0 {
        // a common factor cannot involve v if either side is free of it
        return true;
    }
    let mut others: BTreeSet<V> = a.vars();
    others.extend(b.vars());
    others.remove(v);
    'salt: for salt in 0..4u64 {
        let points: BTreeMap<V, GaussRat> = others
            .iter()
            .map(|w| (w.clone(), var_point::<V>(w, salt)))
            .collect();
        let eval = |p: &MPoly<V, C>| -> Option<Vec<GaussRat>> {
            let mut out = vec![GaussRat::zero(); p.degree_in(v) as usize + 1];
            for (m, c) in &p.terms {
                let mut val = c.spec_value(salt.wrapping_mul(0x9e3779b97f4a7c15))?;
                let e_v = m.degree_in(v);
                for (w, e) in m.powers() {
                    if w == v {
                        continue;
                    }
                    let x = &points[w];
                    for _ in 0..*e {
                        val = &val * x;
                    }
                }
                out[e_v as usize] = &out[e_v as usize] + &val;
            }
            Some(out)
        };
        let (Some(ua), Some(ub)) = (eval(a), eval(b)) else {
            continue 'salt;
        };
        // degree must not drop in at least one of the images
        let lead_ok = !ua[da as usize].is_zero() || !ub[db as usize].is_zero();
        if !lead_ok {
            continue 'salt;
        }
        if uni_gauss_gcd_degree(&ua, &ub) == Some(0) {
            return true;
        }
    }
    false
}

/// Deterministic small evaluation point for a variable.
fn var_point<V: Var>(w: &V, salt: u64) -> crate::gauss::GaussRat {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};
    let mut h = DefaultHasher::new();
    format!("{:?}", w).hash(&mut h);
    salt.hash(&mut h);
    let k = (h.finish() % 37) as i64 + 2;
    crate::gauss::GaussRat::from_integer(k)
}

/// Degree of the gcd of two dense univariate polynomials over Q(i);
/// `None` when both are zero.
fn uni_gauss_gcd_degree(a: &[crate::gauss::GaussRat], b: &[crate::gauss::GaussRat]) -> Option<usize> {
    let deg = |p: &[crate::gauss::GaussRat]| p.iter().rposition(|c| !c.is_zero());
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        match (da, db) {
            (None, None) => return None,
            (Some(d), None) => return Some(d),
            (None, Some(d)) => return Some(d),
            (Some(da), Some(db)) => {
                if da < db {
                    std::mem::swap(&mut a, &mut b);
                    continue;
                }
                let factor = &a[da] / &b[db];
                let shift = da - db;
                for i in 0..=db {
                    let t = &factor * &b[i];
                    a[shift + i] = &a[shift + i] - &t;
                }
                debug_assert!(deg(&a).map(|d| d < da).unwrap_or(true));
            }
        }
    }
}

fn content<V: Var, C: Coeff>(coeffs: &[MPoly<V, C>]) -> MPoly<V, C> {
    let mut c = MPoly::zero();
    for k in coeffs {
        if !k.is_zero() {
            c = gcd_inner(&c, k);
        }
        if c.is_constant() && !c.is_zero() {
            return MPoly::one();
        }
    }
    if c.is_zero() {
        panic!("content of zero polynomial");
    }
    c
}

fn uni_degree<V: Var, C: Coeff>(p: &[MPoly<V, C>]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Pseudo-remainder prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b.
fn pseudo_rem<V: Var, C: Coeff>(a: &[MPoly<V, C>], b: &[MPoly<V, C>]) -> Vec<MPoly<V, C>> {
    let da = uni_degree(a).unwrap();
    let db = uni_degree(b).expect("pseudo division by zero");
    let lcb = b[db].clone();
    let mut r: Vec<MPoly<V, C>> = a.to_vec();
    let mut k = da as i64 - db as i64;
    while let Some(dr) = uni_degree(&r) {
        if dr < db {
            break;
        }
        let lead = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * &lcb;
        }
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            let idx = dr - db + i;
            let t = &lead * bc;
            r[idx] = &r[idx] - &t;
        }
        k -= 1;
    }
    while k >= 0 {
        for c in r.iter_mut() {
            *c = &*c * &lcb;
        }
        k -= 1;
    }
    r
}

/// Subresultant polynomial remainder sequence on primitive inputs; the
/// Brown divisors keep intermediate coefficient growth polynomial.
fn subresultant_prs<V: Var, C: Coeff>(
    mut a: Vec<MPoly<V, C>>,
    mut b: Vec<MPoly<V, C>>,
) -> Vec<MPoly<V, C>> {
    if uni_degree(&a) < uni_degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    if uni_degree(&b).is_none() {
        return a;
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let da = uni_degree(&a).unwrap();
        let db = uni_degree(&b).unwrap();
        if db == 0 {
            return vec![MPoly::one()];
        }
        let delta = (da - db) as u32;
        let r = pseudo_rem(&a, &b);
        if uni_degree(&r).is_none() {
            return b;
        }
        // divide r exactly by g * h^delta
        let divisor = &g * &h.pow(delta);
        let r: Vec<MPoly<V, C>> = r.iter().map(|c| c.exact_div(&divisor)).collect();
        g = b[db].clone();
        // h = g^delta * h^(1-delta), exact in the coefficient ring
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta);
            if delta == 1 {
                num
            } else {
                num.exact_div(&h.pow(delta - 1))
            }
        };
        a = b;
        b = r;
    }
}

// ---------------------------------------------------------------------------
// Fractions
// ---------------------------------------------------------------------------

/// A reduced fraction of polynomials: coprime, denominator monic and nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fraction<V: Var, C: Coeff> {
    num: MPoly<V, C>,
    den: MPoly<V, C>,
}

impl<V: Var, C: Coeff> Fraction<V, C> {
    /// Reduce `num/den` to canonical form. Panics if `den` is zero; callers
    /// with user-supplied input must check first.
    pub fn new(num: MPoly<V, C>, den: MPoly<V, C>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Fraction {
                num,
                den: MPoly::one(),
            };
        }
        // constant denominator: fold it into the numerator
        if let Some(dc) = den.as_constant() {
            return Fraction {
                num: num.map_coeffs(|c| c.div_ref(&dc)),
                den: MPoly::one(),
            };
        }
        // constant (nonzero) numerator: already coprime, just make den monic
        if num.is_constant() {
            let lc = den.leading_coeff();
            return Fraction {
                num: num.map_coeffs(|c| c.div_ref(&lc)),
                den: den.map_coeffs(|c| c.div_ref(&lc)),
            };
        }
        let g = poly_gcd(&num, &den);
        let num = num.exact_div(&g);
        let den = den.exact_div(&g);
        let lc = den.leading_coeff();
        Fraction {
            num: num.map_coeffs(|c| c.div_ref(&lc)),
            den: den.map_coeffs(|c| c.div_ref(&lc)),
        }
    }

    pub fn zero() -> Self {
        Fraction {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Fraction {
            num: MPoly::one(),
            den: MPoly::one(),
        }
    }

    pub fn from_poly(p: MPoly<V, C>) -> Self {
        Fraction {
            num: p,
            den: MPoly::one(),
        }
    }

    /// Assemble a fraction the caller has already reduced to lowest terms;
    /// only the monic normalization of the denominator is applied here.
    pub fn from_coprime(num: MPoly<V, C>, den: MPoly<V, C>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading_coeff();
        Fraction {
            num: num.map_coeffs(|c| c.div_ref(&lc)),
            den: den.map_coeffs(|c| c.div_ref(&lc)),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(v: V) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    pub fn num(&self) -> &MPoly<V, C> {
        &self.num
    }

    pub fn den(&self) -> &MPoly<V, C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.as_constant().map(|c| c == C::one()).unwrap_or(false)
    }

    pub fn as_constant(&self) -> Option<C> {
        if !self.is_poly() {
            return None;
        }
        self.num.as_constant()
    }

    fn den_is_one(&self) -> bool {
        self.den.as_constant().map(|c| c == C::one()).unwrap_or(false)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den_is_one() && other.den_is_one() {
            return Fraction {
                num: &self.num + &other.num,
                den: MPoly::one(),
            };
        }
        Fraction::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        if self.den_is_one() && other.den_is_one() {
            return Fraction {
                num: &self.num - &other.num,
                den: MPoly::one(),
            };
        }
        Fraction::new(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.den_is_one() && other.den_is_one() {
            return Fraction {
                num: &self.num * &other.num,
                den: MPoly::one(),
            };
        }
        Fraction::new(&self.num * &other.num, &self.den * &other.den)
    }

    /// Division; `None` when `other` is zero.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        Some(Fraction::new(
            &self.num * &other.den,
            &self.den * &other.num,
        ))
    }

    pub fn neg(&self) -> Self {
        Fraction {
            num: (-&self.num).clone(),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn vars(&self) -> BTreeSet<V> {
        let mut out = self.num.vars();
        out.extend(self.den.vars());
        out
    }
}

// Structural total order, used when variables are themselves labelled by
// field elements (iterated-log shift vectors).
impl<V: Var, C: Coeff + Ord> PartialOrd for MPoly<V, C> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Var, C: Coeff + Ord> Ord for MPoly<V, C> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }
}

impl<V: Var, C: Coeff + Ord> PartialOrd for Fraction<V, C> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Var, C: Coeff + Ord> Ord for Fraction<V, C> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.num.cmp(&other.num).then_with(|| self.den.cmp(&other.den))
    }
}

impl<V: Var + std::hash::Hash, C: Coeff + std::hash::Hash> std::hash::Hash for MPoly<V, C> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl<V: Var + std::hash::Hash, C: Coeff + std::hash::Hash> std::hash::Hash for Fraction<V, C> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}
