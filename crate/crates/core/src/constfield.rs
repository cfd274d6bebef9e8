//! The constant field: fractions of polynomials in free transcendental atoms
//! over the Gaussian rationals.
//!
//! `i` is a coefficient with `i^2 = -1`, never a free atom. Declared atoms
//! (e.g. `@e`, `@sqrt2`) are algebraically independent; no relations are ever
//! applied. Atoms are ordered by name, which fixes the canonical form.

use crate::error::Error;
use crate::gauss::GaussRat;
use crate::mpoly::{Coeff, Fraction, MPoly};
use std::fmt;

/// A named transcendental atom of the constant field.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Atom(String);

impl Atom {
    /// Validate and intern an atom name. Names are plain identifiers; the
    /// reserved names `i`, `x` and `ln` are refused, as is anything that
    /// smells like a relation annotation.
    pub fn new(name: &str) -> Result<Atom, Error> {
        let ok = !name.is_empty()
            && name.chars().next().unwrap().is_ascii_alphabetic()
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::BadAtomName(name.to_string()));
        }
        if name == "i" || name == "x" || name == "ln" {
            return Err(Error::BadAtomName(name.to_string()));
        }
        Ok(Atom(name.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{}", self.0)
    }
}

/// An exact element of the constant field C = Q(i)(atoms).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Const(Fraction<Atom, GaussRat>);

impl Const {
    pub fn zero() -> Const {
        Const(Fraction::zero())
    }

    pub fn one() -> Const {
        Const(Fraction::one())
    }

    pub fn from_integer(n: i64) -> Const {
        Const(Fraction::constant(GaussRat::from_integer(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Const {
        Const(Fraction::constant(GaussRat::from_ratio(num, den)))
    }

    pub fn i() -> Const {
        Const(Fraction::constant(GaussRat::i()))
    }

    pub fn atom(name: &str) -> Result<Const, Error> {
        Ok(Const(Fraction::var(Atom::new(name)?)))
    }

    pub fn from_gauss(g: GaussRat) -> Const {
        Const(Fraction::constant(g))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.as_gauss().map(|g| g.is_one()).unwrap_or(false)
    }

    /// The Gaussian-rational value when no atom occurs.
    pub fn as_gauss(&self) -> Option<GaussRat> {
        self.0.as_constant()
    }

    /// The underlying reduced fraction of atom polynomials.
    pub fn as_fraction(&self) -> &Fraction<Atom, GaussRat> {
        &self.0
    }

    pub fn add(&self, other: &Const) -> Const {
        Const(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Const) -> Const {
        Const(self.0.sub(&other.0))
    }

    pub fn mul(&self, other: &Const) -> Const {
        Const(self.0.mul(&other.0))
    }

    pub fn checked_div(&self, other: &Const) -> Result<Const, Error> {
        self.0
            .checked_div(&other.0)
            .map(Const)
            .ok_or(Error::DivisionByZero)
    }

    pub fn neg(&self) -> Const {
        Const(self.0.neg())
    }

    pub fn inv(&self) -> Result<Const, Error> {
        Const::one().checked_div(self)
    }

    /// A square root in C, when one is representable: the fraction must be a
    /// Gaussian rational times an even-exponent atom monomial.
    pub fn sqrt(&self) -> Option<Const> {
        if self.is_zero() {
            return Some(Const::zero());
        }
        let root_of_poly = |p: &MPoly<Atom, GaussRat>| -> Option<MPoly<Atom, GaussRat>> {
            if p.num_terms() != 1 {
                return None;
            }
            let (m, c) = p.terms().next().unwrap();
            let rc = c.sqrt()?;
            let mut powers = Vec::new();
            for (v, e) in m.powers() {
                if e % 2 != 0 {
                    return None;
                }
                powers.push((v.clone(), e / 2));
            }
            Some(MPoly::from_monomial(
                crate::mpoly::Monomial::from_powers(powers),
                rc,
            ))
        };
        let rn = root_of_poly(self.0.num())?;
        let rd = root_of_poly(self.0.den())?;
        Some(Const(Fraction::new(rn, rd)))
    }
}

impl Coeff for Const {
    fn zero() -> Self {
        Const::zero()
    }
    fn one() -> Self {
        Const::one()
    }
    fn is_zero(&self) -> bool {
        Const::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn div_ref(&self, other: &Self) -> Self {
        self.checked_div(other).expect("division by zero constant")
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn spec_value(&self, salt: u64) -> Option<GaussRat> {
        use std::collections::hash_map::DefaultHasher;
        use std::hash::{Hash, Hasher};
        let eval = |p: &MPoly<Atom, GaussRat>| -> GaussRat {
            let mut acc = GaussRat::zero();
            for (m, c) in p.terms() {
                let mut t = c.clone();
                for (a, e) in m.powers() {
                    let mut h = DefaultHasher::new();
                    a.name().hash(&mut h);
                    salt.hash(&mut h);
                    let x = GaussRat::from_integer((h.finish() % 41) as i64 + 2);
                    for _ in 0..*e {
                        t = &t * &x;
                    }
                }
                acc = &acc + &t;
            }
            acc
        };
        let den = eval(self.0.den());
        if den.is_zero() {
            return None;
        }
        Some(&eval(self.0.num()) / &den)
    }
}

// --- display in the literal syntax --------------------------------------

/// How a coefficient renders inside a polynomial term: a sign, the magnitude
/// text, and whether the magnitude must be parenthesized when used as a
/// factor.
pub(crate) struct CoeffParts {
    pub negative: bool,
    pub text: String,
    pub needs_parens: bool,
    pub is_one: bool,
}

pub(crate) fn gauss_parts(g: &GaussRat) -> CoeffParts {
    use num_traits::{One, Signed, Zero};
    if g.im.is_zero() {
        let neg = g.re.is_negative();
        let mag = if neg { -g.re.clone() } else { g.re.clone() };
        CoeffParts {
            negative: neg,
            is_one: mag.is_one(),
            text: format!("{}", mag),
            needs_parens: false,
        }
    } else if g.re.is_zero() {
        let neg = g.im.is_negative();
        let mag = if neg { -g.im.clone() } else { g.im.clone() };
        let text = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", mag)
        };
        CoeffParts {
            negative: neg,
            is_one: false,
            text,
            needs_parens: false,
        }
    } else {
        CoeffParts {
            negative: false,
            is_one: false,
            text: format!("({})", g),
            needs_parens: false,
        }
    }
}

pub(crate) fn poly_to_string<V: crate::mpoly::Var + fmt::Display, C: Coeff>(
    p: &MPoly<V, C>,
    parts: impl Fn(&C) -> CoeffParts,
) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    // leading monomial first
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let cp = parts(c);
        let mut factors: Vec<String> = Vec::new();
        if !cp.is_one || m.is_unit() {
            if cp.needs_parens {
                factors.push(format!("({})", cp.text));
            } else {
                factors.push(cp.text.clone());
            }
        }
        for (v, e) in m.powers() {
            if *e == 1 {
                factors.push(format!("{}", v));
            } else {
                factors.push(format!("{}^{}", v, e));
            }
        }
        let body = factors.join("*");
        if idx == 0 {
            if cp.negative {
                // a leading "-" must be followed by digits to lex as a
                // negative rational; otherwise spell out the -1 factor
                if body.chars().next().map(|c| c.is_ascii_digit()).unwrap_or(false) {
                    out.push('-');
                    out.push_str(&body);
                } else {
                    out.push_str("-1*");
                    out.push_str(&body);
                }
            } else {
                out.push_str(&body);
            }
        } else if cp.negative {
            out.push_str(" - ");
            out.push_str(&body);
        } else {
            out.push_str(" + ");
            out.push_str(&body);
        }
    }
    out
}

impl Const {
    pub(crate) fn parts(&self) -> CoeffParts {
        let num = self.0.num();
        let den = self.0.den();
        let den_is_one = self.0.is_poly();
        if den_is_one && num.num_terms() <= 1 {
            if num.is_zero() {
                return CoeffParts {
                    negative: false,
                    is_one: false,
                    text: "0".to_string(),
                    needs_parens: false,
                };
            }
            let (m, c) = num.terms().next().unwrap();
            let gp = gauss_parts(c);
            let mut factors = Vec::new();
            if !gp.is_one || m.is_unit() {
                factors.push(gp.text);
            }
            for (v, e) in m.powers() {
                if *e == 1 {
                    factors.push(format!("{}", v));
                } else {
                    factors.push(format!("{}^{}", v, e));
                }
            }
            return CoeffParts {
                negative: gp.negative,
                is_one: self.is_one(),
                text: factors.join("*"),
                needs_parens: false,
            };
        }
        let num_s = poly_to_string(num, gauss_parts);
        if den_is_one {
            CoeffParts {
                negative: false,
                is_one: false,
                text: format!("({})", num_s),
                needs_parens: false,
            }
        } else {
            let den_s = poly_to_string(den, gauss_parts);
            CoeffParts {
                negative: false,
                is_one: false,
                text: format!("({})/({})", num_s, den_s),
                needs_parens: false,
            }
        }
    }

    /// Canonical text, valid in the expression grammar.
    pub fn to_literal(&self) -> String {
        let p = self.parts();
        if p.negative {
            if p.text.chars().next().map(|c| c.is_ascii_digit()).unwrap_or(false) {
                format!("-{}", p.text)
            } else {
                format!("-1*{}", p.text)
            }
        } else {
            p.text
        }
    }

    /// Text to append after a preceding summand: `+c` or `-c`, empty for 0.
    /// Polynomial constants are flattened term by term so that e.g. 5+i
    /// renders as `+5+i` rather than `+(5+i)`.
    pub fn to_suffix(&self) -> String {
        if self.is_zero() {
            return String::new();
        }
        if !self.0.is_poly() {
            let p = self.parts();
            return format!("+{}", p.text);
        }
        let mut out = String::new();
        for (m, g) in self.0.num().terms().rev() {
            let mono = |text: &str, is_one: bool| {
                let mut factors = Vec::new();
                if !is_one || m.is_unit() {
                    factors.push(text.to_string());
                }
                for (v, e) in m.powers() {
                    if *e == 1 {
                        factors.push(format!("{}", v));
                    } else {
                        factors.push(format!("{}^{}", v, e));
                    }
                }
                factors.join("*")
            };
            if m.is_unit() {
                // split a Gaussian coefficient into real and imaginary suffixes
                use num_traits::{Signed, Zero};
                for (val, imag) in [(&g.re, false), (&g.im, true)] {
                    if val.is_zero() {
                        continue;
                    }
                    let neg = val.is_negative();
                    let mag = if neg { -val.clone() } else { val.clone() };
                    let body = if imag {
                        if mag == num_rational::BigRational::from_integer(1.into()) {
                            "i".to_string()
                        } else {
                            format!("{}*i", mag)
                        }
                    } else {
                        format!("{}", mag)
                    };
                    out.push(if neg { '-' } else { '+' });
                    out.push_str(&body);
                }
            } else {
                let gp = gauss_parts(g);
                out.push(if gp.negative { '-' } else { '+' });
                out.push_str(&mono(&gp.text, gp.is_one));
            }
        }
        out
    }
}

impl fmt::Display for Const {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_literal())
    }
}

// --- constant vectors -----------------------------------------------------

/// An ordered vector of constants labelling an iterated logarithm.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Default)]
pub struct ConstVec(pub Vec<Const>);

impl ConstVec {
    pub fn empty() -> ConstVec {
        ConstVec(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Drop the last `min(k, n)` coordinates (the map pi^k).
    pub fn project(&self, k: usize) -> ConstVec {
        let keep = self.0.len().saturating_sub(k);
        ConstVec(self.0[..keep].to_vec())
    }

    /// The final coordinate (the map psi_n).
    pub fn last(&self) -> Result<Const, Error> {
        self.0.last().cloned().ok_or(Error::EmptyVector)
    }

    pub fn push(&self, c: Const) -> ConstVec {
        let mut v = self.0.clone();
        v.push(c);
        ConstVec(v)
    }
}
