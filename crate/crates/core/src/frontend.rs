//! Command implementations shared by the CLI: input modes, tower
//! declarations, and JSON serialization of presentations and certificates.

use crate::certify::{self, Certificate, JieTriple, Verdict, Witness};
use crate::constfield::Const;
use crate::error::{Error, Result};
use crate::iterlog;
use crate::parse::{self, ParseMode};
use crate::poly::{self, DerivKind, DerivationTable, MPoly, RatExpr};
use crate::subfield::{self, IterlogAnalysis, SubfieldPresentation};
use crate::symbol::{LogSym, SymId};
use crate::verify::{self, ProbeReport};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

// ---------------------------------------------------------------------------
// Output document
// ---------------------------------------------------------------------------

#[derive(Serialize, Debug, Clone)]
pub struct Document {
    pub mode: String,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub essential_elements: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi_base: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub towers: Option<TowersDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<GeneratorsDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerifyDoc>,
    pub provenance: Vec<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct TowersDoc {
    pub levelled: Vec<Vec<String>>,
    pub pi: Vec<Vec<String>>,
}

#[derive(Serialize, Debug, Clone)]
pub struct GeneratorsDoc {
    /// Each form as a coefficient map: symbol text -> constant literal.
    pub linear_forms: Vec<BTreeMap<String, String>>,
    /// Each product as an exponent map: symbol text -> integer.
    pub power_products: Vec<BTreeMap<String, i64>>,
    pub base_symbols: Vec<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct CertificateDoc {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2_witnesses: Option<Vec<Option<String>>>,
    pub reason: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct VerifyDoc {
    pub points: u64,
    pub fixed: u64,
    pub mismatches: u64,
    pub sound: bool,
}

fn generators_doc(p: &SubfieldPresentation) -> GeneratorsDoc {
    GeneratorsDoc {
        linear_forms: p
            .linear_forms
            .iter()
            .map(|f| {
                f.coeffs()
                    .map(|(s, c)| (s.to_string(), c.to_literal()))
                    .collect()
            })
            .collect(),
        power_products: p
            .power_products
            .iter()
            .map(|pp| {
                pp.exponents()
                    .map(|(s, e)| {
                        (
                            s.to_string(),
                            i64::try_from(e).expect("exponent fits in i64"),
                        )
                    })
                    .collect()
            })
            .collect(),
        base_symbols: p.base_symbols.iter().map(|s| s.to_string()).collect(),
    }
}

fn certificate_doc(c: &Certificate) -> CertificateDoc {
    CertificateDoc {
        verdict: match c.verdict {
            Verdict::Certified => "certified",
            Verdict::Refuted => "refuted",
            Verdict::Unknown => "unknown",
        }
        .to_string(),
        witness_factor: match &c.witness {
            Witness::Factor(r) => Some(poly::poly_to_text(r)),
            _ => None,
        },
        c2_witnesses: match &c.witness {
            Witness::JieWitnesses(ws) => Some(
                ws.iter()
                    .map(|w| w.as_ref().map(|s| s.to_string()))
                    .collect(),
            ),
            _ => None,
        },
        reason: c.reason.clone(),
    }
}

fn towers_doc(report: &iterlog::TowerReport) -> TowersDoc {
    let names = |sets: &[BTreeSet<LogSym>]| -> Vec<Vec<String>> {
        sets.iter()
            .map(|s| s.iter().map(|y| y.to_string()).collect())
            .collect()
    };
    TowersDoc {
        levelled: names(&report.levelled),
        pi: names(&report.pi),
    }
}

// ---------------------------------------------------------------------------
// analyze / essential / towers / verify
// ---------------------------------------------------------------------------

/// Run the full iterated-log pipeline on an expression.
pub fn analyze_expr(text: &str) -> Result<IterlogAnalysis> {
    let u = parse::parse_iterlog(text)?;
    subfield::iterlog_subfield(&u)
}

pub fn analyze_document(text: &str) -> Result<Document> {
    let analysis = analyze_expr(text)?;
    let towers = analysis
        .closure
        .as_ref()
        .map(|cl| towers_doc(&iterlog::towers(cl)));
    let mut provenance = analysis.presentation.provenance.clone();
    provenance.push("linear generators are an rref basis over the ordered pi-base; compare by span".to_string());
    Ok(Document {
        mode: "iterlog".to_string(),
        input: text.to_string(),
        essential_elements: Some(
            analysis
                .essential
                .iter()
                .map(|s| s.to_string())
                .collect(),
        ),
        pi_base: Some(
            analysis
                .closure
                .as_ref()
                .map(|cl| cl.pi_base.iter().map(|y| y.to_string()).collect())
                .unwrap_or_default(),
        ),
        towers,
        generators: Some(generators_doc(&analysis.presentation)),
        certificate: None,
        verification: None,
        provenance,
    })
}

/// Union of the essential elements of a comma-separated list of expressions.
fn essential_union(text: &str) -> Result<BTreeSet<LogSym>> {
    let mut out = BTreeSet::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let u = parse::parse_iterlog(piece)?;
        for s in iterlog::essential_elements(&u) {
            match s {
                SymId::Log(l) => {
                    out.insert(l);
                }
                other => return Err(Error::NotIterLogExpression(other.to_string())),
            }
        }
    }
    if out.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(out)
}

pub fn towers_document(text: &str) -> Result<Document> {
    let e = essential_union(text)?;
    let cl = iterlog::closure(&e)?;
    let report = iterlog::towers(&cl);
    Ok(Document {
        mode: "towers".to_string(),
        input: text.to_string(),
        essential_elements: Some(e.iter().map(|y| y.to_string()).collect()),
        pi_base: Some(cl.pi_base.iter().map(|y| y.to_string()).collect()),
        towers: Some(towers_doc(&report)),
        generators: None,
        certificate: None,
        verification: None,
        provenance: vec!["towers ascend from C(x); each chain entry lists the adjoined symbols".to_string()],
    })
}

pub fn essential_document(text: &str) -> Result<Document> {
    let u = parse::parse_iterlog(text)?;
    let e = iterlog::essential_elements(&u);
    Ok(Document {
        mode: "essential".to_string(),
        input: text.to_string(),
        essential_elements: Some(e.iter().map(|s| s.to_string()).collect()),
        pi_base: None,
        towers: None,
        generators: None,
        certificate: None,
        verification: None,
        provenance: vec![],
    })
}

/// Parse a probe-grid override: comma-separated constant literals.
pub fn parse_grid(text: &str) -> Result<Vec<Const>> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let ast = parse::parse(piece, ParseMode::IterLog)?;
        let r = parse::to_ratexpr(&ast, &BTreeMap::new())?;
        match r.as_constant() {
            Some(c) => out.push(c),
            None => {
                return Err(Error::Domain(format!(
                    "probe grid entries must be constants, got {:?}",
                    piece
                )))
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Domain("empty probe grid".to_string()));
    }
    Ok(out)
}

pub fn verify_document(text: &str, grid: Option<Vec<Const>>) -> Result<Document> {
    let u = parse::parse_iterlog(text)?;
    let analysis = subfield::iterlog_subfield(&u)?;
    let grid = grid.unwrap_or_else(verify::default_probe_grid);
    let report: ProbeReport = verify::probe_soundness(&u, &analysis.presentation, &grid);
    Ok(Document {
        mode: "verify".to_string(),
        input: text.to_string(),
        essential_elements: None,
        pi_base: Some(
            analysis
                .presentation
                .form_vars
                .iter()
                .map(|s| s.to_string())
                .collect(),
        ),
        towers: None,
        generators: Some(generators_doc(&analysis.presentation)),
        certificate: None,
        verification: Some(VerifyDoc {
            points: report.points,
            fixed: report.fixed,
            mismatches: report.mismatches,
            sound: report.sound(),
        }),
        provenance: vec![
            "soundness: substitution fixes u iff all forms vanish, on every grid point".to_string(),
        ],
    })
}

// ---------------------------------------------------------------------------
// Tower files and generic mode
// ---------------------------------------------------------------------------

#[derive(Deserialize, Debug, Clone)]
pub struct TowerDeclJson {
    pub name: String,
    pub kind: String,
    #[serde(default)]
    pub derivative: Option<String>,
    #[serde(default)]
    pub log_derivative: Option<String>,
    #[serde(default)]
    pub jie: Option<JieJson>,
}

#[derive(Deserialize, Debug, Clone)]
pub struct JieJson {
    pub a: String,
    pub b: String,
    pub c: String,
}

/// A parsed tower: the derivation table plus name resolution and the
/// original declarations in order.
pub struct Tower {
    pub table: DerivationTable,
    pub symbols: BTreeMap<String, SymId>,
    pub decls: Vec<(SymId, TowerDeclJson)>,
}

pub fn parse_tower(json: &str) -> Result<Tower> {
    let decls: Vec<TowerDeclJson> = serde_json::from_str(json)
        .map_err(|e| Error::Domain(format!("tower file is not valid JSON: {}", e)))?;
    let mut table = DerivationTable::new();
    let mut symbols: BTreeMap<String, SymId> = BTreeMap::new();
    let mut out = Vec::new();
    for d in decls {
        if d.name == "x" {
            // x is built in; tolerate an explicit declaration of x' = 1
            match d.derivative.as_deref() {
                None | Some("1") => continue,
                Some(other) => {
                    return Err(Error::Domain(format!(
                        "x is built in with derivative 1, got {:?}",
                        other
                    )))
                }
            }
        }
        let (sym, kind, entry_text) = match d.kind.as_str() {
            "antiderivative" => {
                let text = d.derivative.as_deref().ok_or_else(|| {
                    Error::Domain(format!("antiderivative {:?} needs a derivative", d.name))
                })?;
                (SymId::anti(&d.name), DerivKind::Antiderivative, text)
            }
            "exponential" => {
                let text = d.log_derivative.as_deref().ok_or_else(|| {
                    Error::Domain(format!("exponential {:?} needs a log_derivative", d.name))
                })?;
                (SymId::expo(&d.name), DerivKind::Exponential, text)
            }
            other => {
                return Err(Error::Domain(format!(
                    "unknown symbol kind {:?} (expected antiderivative or exponential)",
                    other
                )))
            }
        };
        if symbols.contains_key(&d.name) {
            return Err(Error::Domain(format!("duplicate symbol {:?}", d.name)));
        }
        let ast = parse::parse(entry_text, ParseMode::Generic)?;
        let entry = parse::to_ratexpr(&ast, &symbols)?;
        table.declare(sym.clone(), kind, entry)?;
        symbols.insert(d.name.clone(), sym.clone());
        out.push((sym, d));
    }
    Ok(Tower {
        table,
        symbols,
        decls: out,
    })
}

/// Level of a symbol inside a tower: declared level, log level, or 0 for x.
fn tower_level(tower: &Tower, s: &SymId) -> Result<usize> {
    if let Some(l) = tower.table.level(s) {
        return Ok(l);
    }
    match s {
        SymId::Log(l) if l.is_x() => Ok(0),
        _ => Err(Error::UnknownSymbol(s.to_string())),
    }
}

/// The structure-theorem presentation of the field generated by `u` over the
/// field below the topmost stage that `u` touches.
///
/// The topmost declared stage occurring essentially in `u` supplies the
/// variables; every declared symbol of lower level, together with x, forms
/// the base field of the presentation.
pub fn generic_subfield(tower: &Tower, u: &RatExpr) -> Result<SubfieldPresentation> {
    for v in u.vars() {
        tower_level(tower, &v)?;
    }
    let essential = iterlog::essential_elements(u);
    if essential.is_empty() {
        return Ok(SubfieldPresentation::base_field(BTreeSet::new()));
    }
    let top = essential
        .iter()
        .map(|s| tower_level(tower, s))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap();
    if top == 0 {
        return Ok(SubfieldPresentation::base_field(
            [SymId::x()].into_iter().collect(),
        ));
    }
    let vars: BTreeSet<SymId> = tower
        .table
        .symbols()
        .filter(|s| tower.table.level(s) == Some(top))
        .cloned()
        .collect();
    let mut base: BTreeSet<SymId> = tower
        .table
        .symbols()
        .filter(|s| tower.table.level(s).map(|l| l < top).unwrap_or(false))
        .cloned()
        .collect();
    base.insert(SymId::x());
    let avars: BTreeSet<SymId> = vars.iter().filter(|s| !s.is_exponential()).cloned().collect();
    let evars: BTreeSet<SymId> = vars.iter().filter(|s| s.is_exponential()).cloned().collect();
    if evars.is_empty() {
        subfield::antiderivative_subfield(u, &avars, &base)
    } else if avars.is_empty() {
        subfield::exponential_subfield(u, &evars, &base)
    } else {
        subfield::mixed_subfield(u, &avars, &evars, &base)
    }
}

pub fn generic_analyze_document(tower_json: &str, expr: &str) -> Result<Document> {
    let tower = parse_tower(tower_json)?;
    let ast = parse::parse(expr, ParseMode::Generic)?;
    let u = parse::to_ratexpr(&ast, &tower.symbols)?;
    for v in u.vars() {
        if v.as_log().map(|l| !l.is_x()).unwrap_or(false) {
            return Err(Error::Domain(format!(
                "generic mode expressions use declared symbols; found iterated log {}",
                v
            )));
        }
    }
    let pres = generic_subfield(&tower, &u)?;
    let mut provenance = pres.provenance.clone();
    provenance.push(
        "generic mode: presentation is relative to the declared base field (all lower-stage symbols)"
            .to_string(),
    );
    Ok(Document {
        mode: "generic".to_string(),
        input: expr.to_string(),
        essential_elements: Some(
            iterlog::essential_elements(&u)
                .iter()
                .map(|s| s.to_string())
                .collect(),
        ),
        pi_base: None,
        towers: None,
        generators: Some(generators_doc(&pres)),
        certificate: None,
        verification: None,
        provenance,
    })
}

// ---------------------------------------------------------------------------
// jie-check and certify-nonint
// ---------------------------------------------------------------------------

/// Build the J-I-E triples of a tower: explicit `jie` data when present,
/// otherwise derived by splitting the derivative's denominator into an
/// irreducible factor C and cofactor B.
pub fn tower_triples(tower: &Tower) -> Result<Vec<JieTriple>> {
    let mut triples = Vec::new();
    for (sym, decl) in &tower.decls {
        if decl.kind != "antiderivative" {
            continue;
        }
        let level = tower.table.level(sym).unwrap_or(1);
        // symbols strictly below this declaration
        let mut below: BTreeMap<String, SymId> = BTreeMap::new();
        for (name, s) in &tower.symbols {
            if tower.table.level(s).map(|l| l < level).unwrap_or(false) {
                below.insert(name.clone(), s.clone());
            }
        }
        let (a, b, c) = match &decl.jie {
            Some(j) => {
                let a = parse::parse_poly(&j.a, &below)?;
                let b = parse::parse_poly(&j.b, &below)?;
                let c = parse::parse_poly(&j.c, &below)?;
                (a, b, c)
            }
            None => {
                let d = tower.table.derivative_of(sym)?;
                let den = d.den().clone();
                if den.is_constant() {
                    return Err(Error::Domain(format!(
                        "derivative of {} has a constant denominator; provide explicit jie data",
                        sym
                    )));
                }
                let c = split_irreducible_factor(&den).ok_or_else(|| {
                    Error::Domain(format!(
                        "cannot split the denominator of {}' into C*B; provide explicit jie data",
                        sym
                    ))
                })?;
                let b = den.exact_div(&c);
                (d.num().clone(), b, c)
            }
        };
        let mut vars: BTreeSet<SymId> = below.values().cloned().collect();
        vars.insert(SymId::x());
        for p in [&a, &b, &c] {
            for v in p.vars() {
                vars.insert(v.clone());
            }
        }
        triples.push(JieTriple { a, b, c, vars });
    }
    if triples.is_empty() {
        return Err(Error::Domain(
            "tower file declares no antiderivatives".to_string(),
        ));
    }
    Ok(triples)
}

fn split_irreducible_factor(den: &MPoly) -> Option<MPoly> {
    if let Ok(poly::Irreducibility::Irreducible) = poly::irreducible_linear_check(den) {
        return Some(den.monic());
    }
    certify::simple_factor_candidates_public(den)
        .into_iter()
        .find(|r| den.checked_div(r).is_some())
}

pub fn jie_check_document(tower_json: &str) -> Result<Document> {
    let tower = parse_tower(tower_json)?;
    let triples = tower_triples(&tower)?;
    let cert = certify::jie_check(&triples);
    Ok(Document {
        mode: "jie-check".to_string(),
        input: tower_json.to_string(),
        essential_elements: None,
        pi_base: None,
        towers: None,
        generators: None,
        certificate: Some(certificate_doc(&cert)),
        verification: None,
        provenance: vec![],
    })
}

pub fn certify_nonint_document(s_text: &str, t_text: &str, vars: &[String]) -> Result<Document> {
    let mut symbols: BTreeMap<String, SymId> = BTreeMap::new();
    for v in vars {
        if v != "x" {
            symbols.insert(v.clone(), SymId::anti(v));
        }
    }
    let s = parse::parse_poly(s_text, &symbols)?;
    let t = parse::parse_poly(t_text, &symbols)?;
    let cert = certify::no_antiderivative_certificate(&s, &t)?;
    Ok(Document {
        mode: "certify-nonint".to_string(),
        input: format!("({})/({})", s_text, t_text),
        essential_elements: None,
        pi_base: None,
        towers: None,
        generators: None,
        certificate: Some(certificate_doc(&cert)),
        verification: None,
        provenance: vec![],
    })
}

pub fn render(doc: &Document, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(doc).expect("document serializes")
    } else {
        serde_json::to_string(doc).expect("document serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subfield::LinearForm;

    fn c(k: i64) -> Const {
        Const::from_integer(k)
    }

    const EXAMPLE_ONE: &str = "(5*x^3*ln(x+1) + ln(x+@e) + 27*x^3*ln(x+@sqrt2)) / (ln(x) + x*(ln(x+2) - 17*ln(x+3))^2)";

    #[test]
    fn analyze_example_one_spans_the_paper_generators() {
        let analysis = analyze_expr(EXAMPLE_ONE).unwrap();
        let lsym = |text: &str| {
            let u = parse::parse_iterlog(text).unwrap();
            u.vars().into_iter().next().unwrap()
        };
        let expect = vec![
            LinearForm::new([(lsym("ln(x+@e)"), c(1))]),
            LinearForm::new([(lsym("ln(x)"), c(1))]),
            LinearForm::new([(lsym("ln(x+1)"), c(5)), (lsym("ln(x+@sqrt2)"), c(27))]),
            LinearForm::new([(lsym("ln(x+2)"), c(1)), (lsym("ln(x+3)"), c(-17))]),
        ];
        assert!(subfield::span_equal(
            &analysis.presentation.linear_forms,
            &expect
        ));
        let base: Vec<String> = analysis
            .presentation
            .base_symbols
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(base, vec!["x".to_string()]);
    }

    #[test]
    fn analyze_rational_input_gives_base_field() {
        let analysis = analyze_expr("x^2 + 3").unwrap();
        assert!(analysis.presentation.linear_forms.is_empty());
        assert_eq!(
            analysis.presentation.base_symbols,
            [SymId::x()].into_iter().collect()
        );
        let analysis = analyze_expr("5").unwrap();
        assert!(analysis.presentation.base_symbols.is_empty());
    }

    #[test]
    fn towers_document_matches_worked_example() {
        let doc =
            towers_document("ln(ln(x+@e)+5) + ln(ln(x)) + ln(x) + ln(x+1)").unwrap();
        let t = doc.towers.unwrap();
        assert_eq!(
            t.levelled[1],
            vec!["x", "ln(x)", "ln(x+1)", "ln(x+@e)"]
                .into_iter()
                .map(String::from)
                .collect::<Vec<_>>()
        );
        assert_eq!(
            t.pi[1],
            vec!["x", "ln(x)", "ln(x+@e)"]
                .into_iter()
                .map(String::from)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn generic_arctan_tower() {
        let tower_json = r#"[
            {"name": "atan", "kind": "antiderivative", "derivative": "1/((x-i)*(x+i))"},
            {"name": "atan2", "kind": "antiderivative", "derivative": "1/((atan-i)*(atan+i)*(x-i)*(x+i))"}
        ]"#;
        let tower = parse_tower(tower_json).unwrap();
        let u = parse::to_ratexpr(
            &parse::parse("atan2", ParseMode::Generic).unwrap(),
            &tower.symbols,
        )
        .unwrap();
        let pres = generic_subfield(&tower, &u).unwrap();
        // C(atan2, atan, x)
        assert!(subfield::span_equal(
            &pres.linear_forms,
            &[LinearForm::new([(SymId::anti("atan2"), c(1))])]
        ));
        let base: BTreeSet<SymId> = [SymId::anti("atan"), SymId::x()].into_iter().collect();
        assert_eq!(pres.base_symbols, base);
    }

    #[test]
    fn jie_document_from_tower_without_explicit_data() {
        let tower_json = r#"[
            {"name": "lnx", "kind": "antiderivative", "derivative": "1/x"},
            {"name": "w1", "kind": "antiderivative", "derivative": "lnx/(x-1)",
             "jie": {"a": "lnx", "b": "1", "c": "x-1"}},
            {"name": "w2", "kind": "antiderivative", "derivative": "lnx/(x-2)",
             "jie": {"a": "lnx", "b": "1", "c": "x-2"}}
        ]"#;
        let doc = jie_check_document(tower_json).unwrap();
        assert_eq!(doc.certificate.unwrap().verdict, "certified");
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0, 1, -1, 2, -2, 1/2").unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g[5], Const::from_ratio(1, 2));
        assert!(parse_grid("x").is_err());
    }
}
