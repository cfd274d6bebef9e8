//! The structure algorithms: fixing forms of translations, their reduction to
//! constant-coefficient linear systems, power products for exponentials, the
//! full iterated-log pipeline, and single-generator composition.

use crate::constfield::Const;
use crate::error::{Error, Result};
use crate::iterlog::{self, ClosureSet};
use crate::linalg;
use crate::poly::{self, MPoly, Mono, RatExpr};
use crate::symbol::SymId;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A linear form over tower symbols with constant coefficients.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: BTreeMap<SymId, Const>,
}

impl LinearForm {
    pub fn new(coeffs: impl IntoIterator<Item = (SymId, Const)>) -> LinearForm {
        LinearForm {
            coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, s: &SymId) -> Const {
        self.coeffs.get(s).cloned().unwrap_or_else(Const::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&SymId, &Const)> {
        self.coeffs.iter()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &SymId> {
        self.coeffs.keys()
    }

    pub fn as_poly(&self) -> MPoly {
        let mut p = MPoly::zero();
        for (s, c) in &self.coeffs {
            p.add_term(Mono::var(s.clone()), c.clone());
        }
        p
    }

    /// Value of the form at a shift vector (absent symbols count as zero).
    pub fn evaluate(&self, shift: &BTreeMap<SymId, Const>) -> Const {
        let mut acc = Const::zero();
        for (s, c) in &self.coeffs {
            if let Some(v) = shift.get(s) {
                acc = acc.add(&c.mul(v));
            }
        }
        acc
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly::poly_to_text(&self.as_poly()))
    }
}

/// A linear form with polynomial coefficients over the base ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FLinearForm {
    coeffs: BTreeMap<SymId, MPoly>,
}

impl FLinearForm {
    pub fn new(coeffs: impl IntoIterator<Item = (SymId, MPoly)>) -> FLinearForm {
        FLinearForm {
            coeffs: coeffs.into_iter().filter(|(_, p)| !p.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&SymId, &MPoly)> {
        self.coeffs.iter()
    }
}

/// An integer exponent vector over exponential symbols.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct PowerProduct {
    exponents: BTreeMap<SymId, BigInt>,
}

impl PowerProduct {
    pub fn new(exponents: impl IntoIterator<Item = (SymId, BigInt)>) -> PowerProduct {
        PowerProduct {
            exponents: exponents.into_iter().filter(|(_, e)| !e.is_zero()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&SymId, &BigInt)> {
        self.exponents.iter()
    }

    /// The product as a rational expression (negative exponents go to the
    /// denominator).
    pub fn as_ratexpr(&self) -> RatExpr {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (s, e) in &self.exponents {
            let mag: u32 = e.magnitude().try_into().expect("exponent fits in u32");
            if e > &BigInt::zero() {
                num.push((s.clone(), mag));
            } else {
                den.push((s.clone(), mag));
            }
        }
        RatExpr::new(
            MPoly::from_monomial(Mono::from_powers(num), Const::one()),
            MPoly::from_monomial(Mono::from_powers(den), Const::one()),
        )
    }

    /// The value of lambda^exponents under a scale assignment (absent symbols
    /// count as 1). Errors on a zero scale.
    pub fn evaluate(&self, scale: &BTreeMap<SymId, Const>) -> Result<Const> {
        let mut acc = Const::one();
        for (s, e) in &self.exponents {
            let lam = scale.get(s).cloned().unwrap_or_else(Const::one);
            if lam.is_zero() {
                return Err(Error::ZeroScale);
            }
            let mag: u32 = e.magnitude().try_into().expect("exponent fits in u32");
            let mut pow = Const::one();
            for _ in 0..mag {
                pow = pow.mul(&lam);
            }
            if e > &BigInt::zero() {
                acc = acc.mul(&pow);
            } else {
                acc = acc.checked_div(&pow)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(s, e)| {
                if *e == BigInt::from(1) {
                    format!("{}", s)
                } else {
                    format!("{}^{}", s, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// The computed answer: linear generators, power products and base symbols.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubfieldPresentation {
    /// Linear generators in reduced row echelon form over `form_vars`.
    pub linear_forms: Vec<LinearForm>,
    /// The ordered variables the forms range over (pi-base or declared vars).
    pub form_vars: Vec<SymId>,
    /// Power-product generators in Hermite normal form over `expo_vars`.
    pub power_products: Vec<PowerProduct>,
    pub expo_vars: Vec<SymId>,
    /// Symbols of the base field of the presentation.
    pub base_symbols: BTreeSet<SymId>,
    /// One note per generator (forms first, then products).
    pub provenance: Vec<String>,
}

impl SubfieldPresentation {
    pub fn base_field(base_symbols: BTreeSet<SymId>) -> SubfieldPresentation {
        SubfieldPresentation {
            linear_forms: Vec::new(),
            form_vars: Vec::new(),
            power_products: Vec::new(),
            expo_vars: Vec::new(),
            base_symbols,
            provenance: Vec::new(),
        }
    }

    /// True iff every form vanishes at the shift vector.
    pub fn forms_vanish(&self, shift: &BTreeMap<SymId, Const>) -> bool {
        self.linear_forms.iter().all(|l| l.evaluate(shift).is_zero())
    }

    /// True iff every power product evaluates to 1 at the scale vector.
    pub fn products_fixed(&self, scale: &BTreeMap<SymId, Const>) -> Result<bool> {
        for p in &self.power_products {
            if !p.evaluate(scale)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

// ---------------------------------------------------------------------------
// Fixing forms
// ---------------------------------------------------------------------------

/// The linear system characterizing the translations fixing `p`.
///
/// Per homogeneous component H of `p` (graded in `vars`), the polynomial
/// sum_i c_i dH/dy_i is grouped by its primitive monomials in `vars`; each
/// group is a linear form in the shifts with base-ring coefficients. The
/// translation y -> y + c fixes `p` exactly when all forms vanish at c.
pub fn fixing_forms(p: &MPoly, vars: &BTreeSet<SymId>) -> Result<Vec<FLinearForm>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut forms = Vec::new();
    for (_deg, h) in p.homogeneous_components(vars) {
        let mut groups: BTreeMap<Mono, BTreeMap<SymId, MPoly>> = BTreeMap::new();
        for y in vars {
            let dh = h.partial(y);
            for (m, c) in dh.terms() {
                let omega = m.project(vars);
                let beta = m.coproject(vars);
                let entry = groups
                    .entry(omega)
                    .or_default()
                    .entry(y.clone())
                    .or_insert_with(MPoly::zero);
                entry.add_term(beta, c.clone());
            }
        }
        for (_omega, coeffs) in groups {
            let form = FLinearForm::new(coeffs);
            if !form.is_zero() {
                forms.push(form);
            }
        }
    }
    Ok(forms)
}

/// Reduce base-ring linear forms to an equivalent constant-coefficient
/// system in reduced row echelon form.
///
/// Each coefficient is viewed as a polynomial in the base symbols; since
/// distinct primitive monomials are linearly independent over the constants,
/// the coefficient of every base monomial must vanish separately.
pub fn reduce_forms_over_c(forms: &[FLinearForm], vars: &[SymId]) -> Vec<LinearForm> {
    let mut rows: Vec<LinearForm> = Vec::new();
    for form in forms {
        let mut by_monomial: BTreeMap<Mono, BTreeMap<SymId, Const>> = BTreeMap::new();
        for (y, a) in form.coeffs() {
            for (beta, c) in a.terms() {
                by_monomial
                    .entry(beta.clone())
                    .or_default()
                    .insert(y.clone(), c.clone());
            }
        }
        for (_beta, coeffs) in by_monomial {
            rows.push(LinearForm::new(coeffs));
        }
    }
    rref_forms(rows, vars)
}

/// Canonicalize a set of forms to reduced row echelon form over the ordered
/// variable list.
pub fn rref_forms(forms: Vec<LinearForm>, vars: &[SymId]) -> Vec<LinearForm> {
    let mut rows: Vec<Vec<Const>> = forms
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| vars.iter().map(|v| f.coeff(v)).collect())
        .collect();
    linalg::rref(&mut rows);
    rows.into_iter()
        .map(|row| {
            LinearForm::new(
                vars.iter()
                    .cloned()
                    .zip(row)
                    .filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect()
}

/// Row-space equality over the common symbol universe.
pub fn span_equal(a: &[LinearForm], b: &[LinearForm]) -> bool {
    let mut vars: BTreeSet<SymId> = BTreeSet::new();
    for f in a.iter().chain(b.iter()) {
        vars.extend(f.symbols().cloned());
    }
    let vars: Vec<SymId> = vars.into_iter().collect();
    rref_forms(a.to_vec(), &vars) == rref_forms(b.to_vec(), &vars)
}

// ---------------------------------------------------------------------------
// Structure theorems
// ---------------------------------------------------------------------------

fn forms_of_fraction(u: &RatExpr, vars: &BTreeSet<SymId>) -> Result<Vec<LinearForm>> {
    let mut all = Vec::new();
    if !u.num().is_zero() {
        all.extend(fixing_forms(u.num(), vars)?);
    }
    if !u.den().is_constant() || !u.num().is_zero() {
        all.extend(fixing_forms(u.den(), vars)?);
    }
    let ordered: Vec<SymId> = vars.iter().cloned().collect();
    Ok(reduce_forms_over_c(&all, &ordered))
}

/// Subfield generated by `u` over a base field, for a tower of algebraically
/// independent antiderivative symbols `vars`: the C-linear forms whose
/// solutions are exactly the shifts fixing `u`.
pub fn antiderivative_subfield(
    u: &RatExpr,
    vars: &BTreeSet<SymId>,
    base_symbols: &BTreeSet<SymId>,
) -> Result<SubfieldPresentation> {
    let forms = forms_of_fraction(u, vars)?;
    let provenance = forms
        .iter()
        .map(|_| "fixing-form basis vector (rref) of the numerator/denominator system".to_string())
        .collect();
    Ok(SubfieldPresentation {
        linear_forms: forms,
        form_vars: vars.iter().cloned().collect(),
        power_products: Vec::new(),
        expo_vars: Vec::new(),
        base_symbols: base_symbols.clone(),
        provenance,
    })
}

fn exponent_vector(m: &Mono, evars: &[SymId]) -> Vec<BigInt> {
    evars
        .iter()
        .map(|v| BigInt::from(m.degree_in(v)))
        .collect()
}

fn lattice_to_products(mut rows: Vec<Vec<BigInt>>, evars: &[SymId]) -> Vec<PowerProduct> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    linalg::hnf(&mut rows);
    rows.into_iter()
        .map(|row| PowerProduct::new(evars.iter().cloned().zip(row)))
        .collect()
}

/// Subfield generated by `u` for algebraically independent exponentials of
/// integrals: the power products are the exponent differences of the
/// monomials of P and Q against a reference monomial of P, as a lattice basis
/// in Hermite normal form.
pub fn exponential_subfield(
    u: &RatExpr,
    evars: &BTreeSet<SymId>,
    base_symbols: &BTreeSet<SymId>,
) -> Result<SubfieldPresentation> {
    if u.is_zero() {
        return Ok(SubfieldPresentation::base_field(base_symbols.clone()));
    }
    let ordered: Vec<SymId> = evars.iter().cloned().collect();
    let pm: BTreeSet<Mono> = u.num().terms().map(|(m, _)| m.project(evars)).collect();
    let qm: BTreeSet<Mono> = u.den().terms().map(|(m, _)| m.project(evars)).collect();
    // reference: maximal monomial of P under the global order
    let reference = pm.iter().next_back().expect("nonzero numerator").clone();
    let refv = exponent_vector(&reference, &ordered);
    let mut rows = Vec::new();
    for m in pm.iter().chain(qm.iter()) {
        let v = exponent_vector(m, &ordered);
        rows.push(v.iter().zip(&refv).map(|(a, b)| a - b).collect());
    }
    let products = lattice_to_products(rows, &ordered);
    let provenance = products
        .iter()
        .map(|_| "exponent-difference lattice basis vector (hnf)".to_string())
        .collect();
    Ok(SubfieldPresentation {
        linear_forms: Vec::new(),
        form_vars: Vec::new(),
        power_products: products,
        expo_vars: ordered,
        base_symbols: base_symbols.clone(),
        provenance,
    })
}

/// The mixed case: write P and Q as polynomials in the exponential symbols
/// with antiderivative-polynomial coefficients, normalize by the leading
/// coefficient of P, extract fixing forms from every coefficient ratio in
/// lowest terms, and power products from the monomial ratios.
pub fn mixed_subfield(
    u: &RatExpr,
    avars: &BTreeSet<SymId>,
    evars: &BTreeSet<SymId>,
    base_symbols: &BTreeSet<SymId>,
) -> Result<SubfieldPresentation> {
    if u.is_zero() {
        return Ok(SubfieldPresentation::base_field(base_symbols.clone()));
    }
    let ordered_e: Vec<SymId> = evars.iter().cloned().collect();
    let split = |p: &MPoly| -> BTreeMap<Mono, MPoly> {
        let mut out: BTreeMap<Mono, MPoly> = BTreeMap::new();
        for (m, c) in p.terms() {
            let em = m.project(evars);
            let rest = m.coproject(evars);
            out.entry(em).or_insert_with(MPoly::zero).add_term(rest, c.clone());
        }
        out
    };
    let p_split = split(u.num());
    let q_split = split(u.den());
    let (ref_mono, ref_coeff) = p_split.iter().next_back().expect("nonzero numerator");

    let mut fforms: Vec<FLinearForm> = Vec::new();
    let mut handle_ratio = |a: &MPoly| -> Result<()> {
        // alpha/beta = a/ref_coeff in lowest terms
        let g = crate::mpoly::poly_gcd(a, ref_coeff);
        let alpha = a.exact_div(&g);
        let beta = ref_coeff.exact_div(&g);
        if !alpha.is_constant() {
            fforms.extend(fixing_forms(&alpha, avars)?);
        }
        if !beta.is_constant() {
            fforms.extend(fixing_forms(&beta, avars)?);
        }
        Ok(())
    };
    for (m, a) in &p_split {
        if m != ref_mono {
            handle_ratio(a)?;
        }
    }
    for (_, b) in &q_split {
        handle_ratio(b)?;
    }
    let ordered_a: Vec<SymId> = avars.iter().cloned().collect();
    let forms = reduce_forms_over_c(&fforms, &ordered_a);

    let refv = exponent_vector(ref_mono, &ordered_e);
    let mut rows = Vec::new();
    for m in p_split.keys().chain(q_split.keys()) {
        let v = exponent_vector(m, &ordered_e);
        rows.push(v.iter().zip(&refv).map(|(a, b)| a - b).collect());
    }
    let products = lattice_to_products(rows, &ordered_e);

    let mut provenance: Vec<String> = forms
        .iter()
        .map(|_| "fixing-form basis vector (rref) of the coefficient-ratio system".to_string())
        .collect();
    provenance.extend(
        products
            .iter()
            .map(|_| "exponent-difference lattice basis vector (hnf)".to_string()),
    );
    Ok(SubfieldPresentation {
        linear_forms: forms,
        form_vars: ordered_a,
        power_products: products,
        expo_vars: ordered_e,
        base_symbols: base_symbols.clone(),
        provenance,
    })
}

// ---------------------------------------------------------------------------
// The iterated-log pipeline
// ---------------------------------------------------------------------------

/// Result of the full pipeline, keeping the combinatorial data alongside the
/// presentation.
#[derive(Clone, Debug)]
pub struct IterlogAnalysis {
    pub essential: BTreeSet<SymId>,
    pub closure: Option<ClosureSet>,
    pub presentation: SubfieldPresentation,
}

/// The full pipeline for a rational expression in iterated logarithms:
/// essential elements, projection closure and pi-base, fixing forms of P and
/// Q over the pi-base, reduction over the constants, and assembly of the
/// presentation over the projected base symbols.
pub fn iterlog_subfield(u: &RatExpr) -> Result<IterlogAnalysis> {
    for v in u.vars() {
        if v.as_log().is_none() {
            return Err(Error::NotIterLogExpression(v.to_string()));
        }
    }
    let essential = iterlog::essential_elements(u);
    // u in C
    if essential.is_empty() {
        return Ok(IterlogAnalysis {
            essential,
            closure: None,
            presentation: SubfieldPresentation::base_field(BTreeSet::new()),
        });
    }
    // u in C(x) \ C
    if essential.iter().all(|s| s.is_x()) {
        return Ok(IterlogAnalysis {
            essential,
            closure: None,
            presentation: SubfieldPresentation::base_field(
                [SymId::x()].into_iter().collect(),
            ),
        });
    }
    let logs: BTreeSet<crate::symbol::LogSym> = essential
        .iter()
        .map(|s| s.as_log().unwrap().clone())
        .collect();
    let cl = iterlog::closure(&logs)?;
    let vars: BTreeSet<SymId> = cl.pi_base.iter().cloned().map(SymId::log).collect();
    let forms = forms_of_fraction(u, &vars)?;
    // every pi-base element must appear in some form
    for y in &vars {
        debug_assert!(
            forms.iter().any(|f| !f.coeff(y).is_zero()),
            "pi-base symbol {} missing from the form system",
            y
        );
    }
    let base_symbols: BTreeSet<SymId> =
        cl.projected_base().into_iter().map(SymId::log).collect();
    let provenance = forms
        .iter()
        .map(|_| "fixing-form basis vector (rref) of the numerator/denominator system".to_string())
        .collect();
    Ok(IterlogAnalysis {
        essential,
        closure: Some(cl),
        presentation: SubfieldPresentation {
            linear_forms: forms,
            form_vars: vars.into_iter().collect(),
            power_products: Vec::new(),
            expo_vars: Vec::new(),
            base_symbols,
            provenance,
        },
    })
}

/// Compose a presentation into the single generator sum_i x^i L_i; running
/// the pipeline on the result recovers a span-equal presentation.
pub fn combine_to_single_generator(p: &SubfieldPresentation) -> Result<RatExpr> {
    if p.linear_forms.is_empty() {
        if p.base_symbols.contains(&SymId::x()) {
            return Ok(RatExpr::var(SymId::x()));
        }
        return Err(Error::EmptyPresentation);
    }
    let x = MPoly::var(SymId::x());
    let mut acc = MPoly::zero();
    let mut xpow = MPoly::one();
    for form in &p.linear_forms {
        xpow = &xpow * &x;
        acc = &acc + &(&xpow * &form.as_poly());
    }
    Ok(RatExpr::from_poly(acc))
}

// ---------------------------------------------------------------------------
// Membership certificates
// ---------------------------------------------------------------------------

/// Rewrite `p` in coordinates adapted to the form basis: the forms become new
/// coordinates, kernel directions are completed, and `p` must have degree
/// zero in every kernel coordinate. Returns the rewritten polynomial as a
/// membership certificate; `NotFixed` signals an upstream bug.
pub fn rewrite_in_generators(
    p: &MPoly,
    forms: &[LinearForm],
    vars: &BTreeSet<SymId>,
) -> Result<MPoly> {
    let ordered: Vec<SymId> = vars.iter().cloned().collect();
    let rows = rref_forms(forms.to_vec(), &ordered);
    let mut pivot_cols = Vec::new();
    for row in &rows {
        let pivot = ordered
            .iter()
            .position(|v| !row.coeff(v).is_zero())
            .expect("nonzero rref row");
        pivot_cols.push(pivot);
    }
    let free_cols: Vec<usize> = (0..ordered.len())
        .filter(|c| !pivot_cols.contains(c))
        .collect();
    // new coordinates
    let w = |j: usize| SymId::anti(&format!("w_{}", j + 1));
    let z = |l: usize| SymId::anti(&format!("z_{}", l + 1));
    // invert the triangular system: y_pivot_j = w_j - sum over free cols
    let mut map: BTreeMap<SymId, MPoly> = BTreeMap::new();
    for (l, &fc) in free_cols.iter().enumerate() {
        map.insert(ordered[fc].clone(), MPoly::var(z(l)));
    }
    for (j, row) in rows.iter().enumerate() {
        let mut expr = MPoly::var(w(j));
        for (l, &fc) in free_cols.iter().enumerate() {
            let c = row.coeff(&ordered[fc]);
            if !c.is_zero() {
                expr = &expr - &MPoly::var(z(l)).scale(&c);
            }
        }
        map.insert(ordered[pivot_cols[j]].clone(), expr);
    }
    let rewritten = p.substitute(&map);
    for l in 0..free_cols.len() {
        if rewritten.degree_in(&z(l)) > 0 {
            return Err(Error::NotFixed);
        }
    }
    Ok(rewritten)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constfield::ConstVec;
    use crate::symbol::LogSym;

    fn c(k: i64) -> Const {
        Const::from_integer(k)
    }
    fn lv(cs: Vec<i64>) -> SymId {
        SymId::log(LogSym::new(ConstVec(cs.into_iter().map(c).collect())))
    }
    fn xsym() -> SymId {
        SymId::x()
    }

    /// x^3(5 y1 + 27 y2) + y3 with y_k = ln(x+k)-style level-1 symbols.
    fn example_one_numerator() -> (MPoly, [SymId; 3]) {
        let y1 = lv(vec![1]);
        let y2 = lv(vec![2]);
        let y3 = lv(vec![3]);
        let x3 = MPoly::var(xsym()).pow(3);
        let p = &(&(&x3.scale(&c(5)) * &MPoly::var(y1.clone()))
            + &(&x3.scale(&c(27)) * &MPoly::var(y2.clone())))
            + &MPoly::var(y3.clone());
        (p, [y1, y2, y3])
    }

    #[test]
    fn fixing_forms_of_example_one_numerator() {
        let (p, [y1, y2, y3]) = example_one_numerator();
        let vars: BTreeSet<SymId> = [y1.clone(), y2.clone(), y3.clone()].into_iter().collect();
        let forms = fixing_forms(&p, &vars).unwrap();
        // single F-form x^3(5c1 + 27c2) + c3
        assert_eq!(forms.len(), 1);
        let ordered: Vec<SymId> = vars.iter().cloned().collect();
        let cforms = reduce_forms_over_c(&forms, &ordered);
        let expect = vec![
            LinearForm::new([(y1.clone(), c(1)), (y2.clone(), Const::from_ratio(27, 5))]),
            LinearForm::new([(y3.clone(), c(1))]),
        ];
        assert!(span_equal(&cforms, &expect));
    }

    #[test]
    fn fixing_forms_of_example_one_denominator() {
        // Q = y4 + x(y5 - 17 y6)^2
        let y4 = lv(vec![4]);
        let y5 = lv(vec![5]);
        let y6 = lv(vec![6]);
        let diff = &MPoly::var(y5.clone()) - &MPoly::var(y6.clone()).scale(&c(17));
        let q = &MPoly::var(y4.clone()) + &(&MPoly::var(xsym()) * &(&diff * &diff));
        let vars: BTreeSet<SymId> = [y4.clone(), y5.clone(), y6.clone()].into_iter().collect();
        // homogeneous components: degree 1 (y4) and degree 2 (x(y5-17y6)^2)
        let comps = q.homogeneous_components(&vars);
        assert_eq!(comps.iter().map(|(d, _)| *d).collect::<Vec<_>>(), vec![1, 2]);
        let forms = fixing_forms(&q, &vars).unwrap();
        let ordered: Vec<SymId> = vars.iter().cloned().collect();
        let cforms = reduce_forms_over_c(&forms, &ordered);
        let expect = vec![
            LinearForm::new([(y4.clone(), c(1))]),
            LinearForm::new([(y5.clone(), c(1)), (y6.clone(), c(-17))]),
        ];
        assert!(span_equal(&cforms, &expect));
    }

    #[test]
    fn fixing_forms_of_constant_is_empty() {
        let vars: BTreeSet<SymId> = [lv(vec![1])].into_iter().collect();
        let p = MPoly::var(xsym());
        assert!(fixing_forms(&p, &vars).unwrap().is_empty());
        assert!(fixing_forms(&MPoly::zero(), &vars).is_err());
    }

    #[test]
    fn span_equality_is_scaling_invariant() {
        let y1 = lv(vec![1]);
        let y2 = lv(vec![2]);
        let a = vec![LinearForm::new([(y1.clone(), c(5)), (y2.clone(), c(27))])];
        let b = vec![LinearForm::new([
            (y1.clone(), c(1)),
            (y2.clone(), Const::from_ratio(27, 5)),
        ])];
        assert!(span_equal(&a, &b));
        let basis1 = vec![
            LinearForm::new([(y1.clone(), c(1))]),
            LinearForm::new([(y2.clone(), c(1))]),
        ];
        let basis2 = vec![
            LinearForm::new([(y1.clone(), c(1)), (y2.clone(), c(1))]),
            LinearForm::new([(y1.clone(), c(1)), (y2.clone(), c(-1))]),
        ];
        assert!(span_equal(&basis1, &basis2));
        assert!(!span_equal(
            &[LinearForm::new([(y1.clone(), c(1))])],
            &[LinearForm::new([(y2.clone(), c(1))])]
        ));
    }

    #[test]
    fn exponential_example_lattice() {
        // u = (e1 e2 + e2^2)/e3
        let e1 = SymId::expo("e1");
        let e2 = SymId::expo("e2");
        let e3 = SymId::expo("e3");
        let evars: BTreeSet<SymId> = [e1.clone(), e2.clone(), e3.clone()].into_iter().collect();
        let num = &(&MPoly::var(e1.clone()) * &MPoly::var(e2.clone()))
            + &MPoly::var(e2.clone()).pow(2);
        let den = MPoly::var(e3.clone());
        let u = RatExpr::new(num, den);
        let pres = exponential_subfield(&u, &evars, &BTreeSet::new()).unwrap();
        // expected lattice: hnf of {(-1,1,0), (-1,-1,1)}
        let mut expect = vec![
            vec![BigInt::from(-1), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)],
        ];
        linalg::hnf(&mut expect);
        let got: Vec<Vec<BigInt>> = pres
            .power_products
            .iter()
            .map(|p| {
                [e1.clone(), e2.clone(), e3.clone()]
                    .iter()
                    .map(|s| {
                        p.exponents()
                            .find(|(t, _)| *t == s)
                            .map(|(_, e)| e.clone())
                            .unwrap_or_else(BigInt::zero)
                    })
                    .collect()
            })
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn exponential_single_and_constant() {
        let e1 = SymId::expo("e1");
        let evars: BTreeSet<SymId> = [e1.clone()].into_iter().collect();
        let u = RatExpr::var(e1.clone());
        let pres = exponential_subfield(&u, &evars, &BTreeSet::new()).unwrap();
        assert_eq!(pres.power_products.len(), 1);
        assert_eq!(pres.power_products[0].as_ratexpr(), RatExpr::var(e1));
        let u = RatExpr::constant(c(9));
        let pres = exponential_subfield(&u, &evars, &BTreeSet::new()).unwrap();
        assert!(pres.power_products.is_empty());
    }

    #[test]
    fn mixed_example_forms_and_product() {
        // u = (y1 e + 1)/e
        let y1 = SymId::anti("y1");
        let e = SymId::expo("e1");
        let avars: BTreeSet<SymId> = [y1.clone()].into_iter().collect();
        let evars: BTreeSet<SymId> = [e.clone()].into_iter().collect();
        let num = &(&MPoly::var(y1.clone()) * &MPoly::var(e.clone())) + &MPoly::one();
        let u = RatExpr::new(num, MPoly::var(e.clone()));
        let pres = mixed_subfield(&u, &avars, &evars, &BTreeSet::new()).unwrap();
        assert!(span_equal(
            &pres.linear_forms,
            &[LinearForm::new([(y1.clone(), c(1))])]
        ));
        assert_eq!(pres.power_products.len(), 1);
        assert_eq!(pres.power_products[0].as_ratexpr(), RatExpr::var(e));
    }

    #[test]
    fn mixed_degenerates_to_pure_cases() {
        // antiderivative side
        let (p, [y1, y2, y3]) = example_one_numerator();
        let u = RatExpr::from_poly(p);
        let avars: BTreeSet<SymId> = [y1, y2, y3].into_iter().collect();
        let pa = antiderivative_subfield(&u, &avars, &BTreeSet::new()).unwrap();
        let pm = mixed_subfield(&u, &avars, &BTreeSet::new(), &BTreeSet::new()).unwrap();
        assert!(span_equal(&pa.linear_forms, &pm.linear_forms));
        assert!(pm.power_products.is_empty());

        // exponential side
        let e1 = SymId::expo("e1");
        let e2 = SymId::expo("e2");
        let evars: BTreeSet<SymId> = [e1.clone(), e2.clone()].into_iter().collect();
        let u = RatExpr::new(
            &MPoly::var(e1.clone()) + &MPoly::var(e2.clone()).pow(3),
            MPoly::var(e2.clone()),
        );
        let pe = exponential_subfield(&u, &evars, &BTreeSet::new()).unwrap();
        let pm = mixed_subfield(&u, &BTreeSet::new(), &evars, &BTreeSet::new()).unwrap();
        assert_eq!(pe.power_products, pm.power_products);
        assert!(pm.linear_forms.is_empty());
    }

    #[test]
    fn rewrite_in_generators_example() {
        let (p, [y1, y2, y3]) = example_one_numerator();
        let vars: BTreeSet<SymId> = [y1.clone(), y2.clone(), y3.clone()].into_iter().collect();
        let forms = vec![
            LinearForm::new([(y1.clone(), c(5)), (y2.clone(), c(27))]),
            LinearForm::new([(y3.clone(), c(1))]),
        ];
        let rewritten = rewrite_in_generators(&p, &forms, &vars).unwrap();
        // p = 5 x^3 w1 + w2 in unit-pivot coordinates
        let w1 = SymId::anti("w_1");
        let w2 = SymId::anti("w_2");
        let expect = &(&MPoly::var(xsym()).pow(3).scale(&c(5)) * &MPoly::var(w1)) + &MPoly::var(w2);
        assert_eq!(rewritten, expect);

        // constant polynomial is unchanged
        let k = MPoly::constant(c(42));
        assert_eq!(rewrite_in_generators(&k, &forms, &vars).unwrap(), k);

        // kernel direction survives: NotFixed
        let bad = MPoly::var(y1.clone());
        let only_y3 = vec![LinearForm::new([(y3.clone(), c(1))])];
        assert_eq!(
            rewrite_in_generators(&bad, &only_y3, &vars),
            Err(Error::NotFixed)
        );
    }

    #[test]
    fn combine_trivial_cases() {
        let y3 = lv(vec![3]);
        let pres = SubfieldPresentation {
            linear_forms: vec![LinearForm::new([(y3.clone(), c(1))])],
            form_vars: vec![y3.clone()],
            power_products: vec![],
            expo_vars: vec![],
            base_symbols: [xsym()].into_iter().collect(),
            provenance: vec![String::new()],
        };
        let u = combine_to_single_generator(&pres).unwrap();
        assert_eq!(
            u,
            RatExpr::from_poly(&MPoly::var(xsym()) * &MPoly::var(y3))
        );

        let base_only = SubfieldPresentation::base_field([xsym()].into_iter().collect());
        assert_eq!(
            combine_to_single_generator(&base_only).unwrap(),
            RatExpr::var(xsym())
        );
        let empty = SubfieldPresentation::base_field(BTreeSet::new());
        assert!(combine_to_single_generator(&empty).is_err());
    }
}
