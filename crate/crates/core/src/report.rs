//! Machine-readable reports and their text rendering, plus the cross-checks run by `verify`.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arrangement::EllipticArrangement;
use crate::error::{Error, Result};
use crate::json;
use crate::linalg::smith_form;
use crate::matroid::{ArithmeticMatroid, AxiomReport, GcdWitness};
use crate::poly::{BiPoly, Poly};
use crate::quadratic_order::{CurveParams, OmegaCase};
use crate::subset::Subset;

#[derive(Clone, Debug, Serialize)]
pub struct OrderInfo {
    pub m: i64,
    pub omega: OmegaCase,
    pub m_prime: Option<i64>,
    #[serde(serialize_with = "json::bigints")]
    pub tau: Vec<BigInt>,
    #[serde(serialize_with = "json::bigint")]
    pub trace_num: BigInt,
    #[serde(serialize_with = "json::bigint")]
    pub det_num: BigInt,
    #[serde(serialize_with = "json::bigint")]
    pub g: BigInt,
    #[serde(serialize_with = "json::bigint")]
    pub c_prime: BigInt,
    #[serde(serialize_with = "json::bigint")]
    pub delta_prime: BigInt,
    #[serde(serialize_with = "json::bigint")]
    pub n: BigInt,
    #[serde(serialize_with = "json::bigint")]
    pub conductor: BigInt,
    pub maximal_order: bool,
    pub min_poly: String,
    #[serde(serialize_with = "json::bigints")]
    pub min_poly_coeffs: Vec<BigInt>,
    #[serde(serialize_with = "json::bigint")]
    pub discriminant: BigInt,
    pub field_discriminant: i64,
}

impl OrderInfo {
    pub fn new(curve: &CurveParams) -> Self {
        let (a, b, c) = curve.tau();
        let poly = curve.min_poly();
        OrderInfo {
            m: curve.field().m(),
            omega: curve.field().omega_case(),
            m_prime: curve.field().m_prime(),
            tau: vec![a.clone(), b.clone(), c.clone()],
            trace_num: curve.trace_num().clone(),
            det_num: curve.det_num().clone(),
            g: curve.g().clone(),
            c_prime: curve.c_prime().clone(),
            delta_prime: curve.delta_prime().clone(),
            n: curve.n().clone(),
            conductor: curve.conductor().clone(),
            maximal_order: curve.is_maximal_order(),
            min_poly: poly.to_string(),
            discriminant: poly.discriminant(),
            min_poly_coeffs: vec![poly.lead, poly.lin, poly.constant],
            field_discriminant: curve.field().field_discriminant(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let omega = match self.omega {
            OmegaCase::HalfIntegral => "(1 + sqrt(-m))/2",
            OmegaCase::PureImaginary => "sqrt(-m)",
        };
        let _ = writeln!(out, "m               {}", self.m);
        let _ = writeln!(out, "omega           {omega}");
        let _ = writeln!(
            out,
            "tau             ({} + {} omega) / {}",
            self.tau[0], self.tau[1], self.tau[2]
        );
        let _ = writeln!(out, "N               {}", self.n);
        let _ = writeln!(out, "conductor       {}", self.conductor);
        let _ = writeln!(out, "maximal order   {}", if self.maximal_order { "yes" } else { "no" });
        let _ = writeln!(out, "min poly        {}", self.min_poly);
        let _ = writeln!(out, "discriminant    {}", self.discriminant);
        let _ = writeln!(
            out,
            "constants       t = {}, delta = {}, g = {}, c' = {}, delta' = {}",
            self.trace_num, self.det_num, self.g, self.c_prime, self.delta_prime
        );
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsetRow {
    #[serde(serialize_with = "json::subset")]
    pub subset: Subset,
    pub rank: usize,
    #[serde(serialize_with = "json::bigint")]
    pub multiplicity: BigInt,
    pub layer_dim: usize,
    #[serde(serialize_with = "json::bigints")]
    pub torsion_invariants: Vec<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolationOut {
    pub rule: String,
    #[serde(serialize_with = "json::subsets")]
    pub subsets: Vec<Subset>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub violations: Vec<ViolationOut>,
}

impl CheckResult {
    fn from_axiom(report: AxiomReport) -> Self {
        CheckResult {
            name: report.name.to_string(),
            passed: report.passed(),
            checked: report.checked,
            violations: report
                .violations
                .into_iter()
                .map(|v| ViolationOut {
                    rule: v.axiom.label().to_string(),
                    subsets: v.subsets,
                    detail: v.detail,
                })
                .collect(),
        }
    }

    fn new(name: &str, checked: u64, violations: Vec<ViolationOut>) -> Self {
        CheckResult { name: name.to_string(), passed: violations.is_empty(), checked, violations }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PolyOut {
    pub text: String,
    pub terms: Vec<String>,
}

impl From<&BiPoly> for PolyOut {
    fn from(p: &BiPoly) -> Self {
        PolyOut { text: p.to_string(), terms: p.term_list() }
    }
}

impl From<&Poly> for PolyOut {
    fn from(p: &Poly) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(i, c)| format!("{c} t^{i}"))
            .collect();
        PolyOut { text: p.to_string(), terms }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerOut {
    #[serde(serialize_with = "json::bigint")]
    pub value: BigInt,
    pub essential: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GcdOut {
    pub holds: bool,
    pub witness: Option<GcdWitness>,
    pub maximal_order: bool,
}

/// Everything `analyze` prints.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub order: OrderInfo,
    pub rows: usize,
    pub cols: usize,
    pub essential: bool,
    pub subsets: Vec<SubsetRow>,
    pub checks: Vec<CheckResult>,
    pub tutte: PolyOut,
    pub char_poly: PolyOut,
    pub e2_poincare: Option<PolyOut>,
    pub euler: EulerOut,
    pub gcd: GcdOut,
}

/// The checks `verify` can run.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Rank,
    A1,
    A2,
    P,
    P1,
    P2,
    Dual,
    CokerXcheck,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Rank,
        Check::A1,
        Check::A2,
        Check::P,
        Check::P1,
        Check::P2,
        Check::Dual,
        Check::CokerXcheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Rank => "rank",
            Check::A1 => "a1",
            Check::A2 => "a2",
            Check::P => "p",
            Check::P1 => "p1",
            Check::P2 => "p2",
            Check::Dual => "dual",
            Check::CokerXcheck => "coker-xcheck",
        }
    }

    /// Parses a comma-separated list such as `a1,p,dual`.
    pub fn parse_list(list: &str) -> Result<Vec<Check>> {
        list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(Check::from_str).collect()
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Format {
                context: "--axioms".into(),
                message: format!("unknown check `{s}`"),
            })
    }
}

/// Compares `dual(M_A)` with the contraction of the stacked arrangement's matroid by `T`.
pub fn check_dual(arr: &EllipticArrangement, matroid: &ArithmeticMatroid) -> Result<CheckResult> {
    let dual = matroid.dual()?;
    let (stacked, t) = arr.dual_arrangement()?;
    let contracted = ArithmeticMatroid::from_arrangement_with_cap(&stacked, usize::MAX)?
        .contraction(t)?;
    let mut violations = Vec::new();
    for s in Subset::full(arr.k()).submasks() {
        let (r1, r2) = (dual.rank(s), contracted.rank(s));
        let (m1, m2) = (dual.multiplicity(s), contracted.multiplicity(s));
        if r1 != r2 || m1 != m2 {
            violations.push(ViolationOut {
                rule: "dual".into(),
                subsets: vec![s],
                detail: format!("dual has (rk, m) = ({r1}, {m1}), contraction has ({r2}, {m2})"),
            });
        }
    }
    Ok(CheckResult::new("dual", 1 << arr.k(), violations))
}

/// For every subset, compares the torsion invariants of the lattice expansion with those of
/// the order expansion and of the conjugate transpose.
pub fn check_cokernels(arr: &EllipticArrangement) -> Result<CheckResult> {
    let mut violations = Vec::new();
    for s in Subset::full(arr.k()).submasks() {
        let sel = arr.matrix().row_select(s)?;
        let lambda = smith_form(&sel.expand_lambda()).torsion_factors();
        let order = smith_form(&sel.expand_order()).torsion_factors();
        let adjoint = smith_form(&sel.conj_transpose().expand_lambda()).torsion_factors();
        if lambda != order || lambda != adjoint {
            violations.push(ViolationOut {
                rule: "coker-xcheck".into(),
                subsets: vec![s],
                detail: format!(
                    "lattice {}, order {}, conjugate transpose {}",
                    chain(&lambda),
                    chain(&order),
                    chain(&adjoint)
                ),
            });
        }
    }
    Ok(CheckResult::new("coker-xcheck", 1 << arr.k(), violations))
}

/// Runs the selected checks in the order given.
pub fn run_checks(
    arr: &EllipticArrangement,
    matroid: &ArithmeticMatroid,
    checks: &[Check],
) -> Result<Vec<CheckResult>> {
    let mut out = Vec::with_capacity(checks.len());
    for &check in checks {
        let result = match check {
            Check::Rank => CheckResult::from_axiom(matroid.verify_matroid()),
            Check::A1 => CheckResult::from_axiom(matroid.verify_a1()),
            Check::A2 => CheckResult::from_axiom(matroid.verify_a2()),
            Check::P => {
                let positivity = matroid.verify_positivity();
                let mut result = CheckResult::from_axiom(positivity.p);
                if !positivity.equivalence_holds {
                    result.passed = false;
                    result.violations.push(ViolationOut {
                        rule: "p".into(),
                        subsets: vec![],
                        detail: "P disagrees with A2 + P1 + P2".into(),
                    });
                }
                result
            }
            Check::P1 => CheckResult::from_axiom(matroid.verify_p1()),
            Check::P2 => CheckResult::from_axiom(matroid.verify_p2()),
            Check::Dual => check_dual(arr, matroid)?,
            Check::CokerXcheck => check_cokernels(arr)?,
        };
        out.push(result);
    }
    Ok(out)
}

pub fn subset_rows(arr: &EllipticArrangement) -> Result<Vec<SubsetRow>> {
    Ok(arr
        .all_reports()?
        .into_iter()
        .map(|r| SubsetRow {
            subset: r.subset,
            rank: r.rank,
            multiplicity: r.multiplicity,
            layer_dim: r.layer_dim,
            torsion_invariants: r.torsion_invariants,
        })
        .collect())
}

pub fn euler_out(arr: &EllipticArrangement, matroid: &ArithmeticMatroid) -> EulerOut {
    let essential = arr.is_essential();
    EulerOut {
        value: matroid.euler_characteristic(arr.n(), essential),
        essential,
        note: (!essential).then(|| {
            format!(
                "arrangement has rank {} < {}; the complement has an elliptic factor",
                matroid.full_rank(),
                arr.n()
            )
        }),
    }
}

pub fn gcd_out(arr: &EllipticArrangement, matroid: &ArithmeticMatroid) -> GcdOut {
    let check = matroid.gcd_property();
    GcdOut { holds: check.holds, witness: check.witness, maximal_order: arr.curve().is_maximal_order() }
}

/// Builds the full report, running every check.
pub fn analyze(arr: &EllipticArrangement) -> Result<Report> {
    let matroid = ArithmeticMatroid::from_arrangement(arr)?;
    let essential = arr.is_essential();
    let tutte = matroid.tutte();
    let chi = matroid.char_poly();
    let e2 = matroid.e2_poincare(arr.n()).ok();
    Ok(Report {
        order: OrderInfo::new(arr.curve()),
        rows: arr.k(),
        cols: arr.n(),
        essential,
        subsets: subset_rows(arr)?,
        checks: run_checks(arr, &matroid, &Check::ALL)?,
        tutte: (&tutte).into(),
        char_poly: (&chi).into(),
        e2_poincare: e2.as_ref().map(Into::into),
        euler: euler_out(arr, &matroid),
        gcd: gcd_out(arr, &matroid),
    })
}

/// Divisor chain such as `2 | 4`, or `-` when trivial.
pub fn chain(factors: &[BigInt]) -> String {
    if factors.is_empty() {
        "-".to_string()
    } else {
        factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | ")
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn render_subsets(rows: &[SubsetRow]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.subset.to_string(),
                r.rank.to_string(),
                r.multiplicity.to_string(),
                r.layer_dim.to_string(),
                chain(&r.torsion_invariants),
            ]
        })
        .collect();
    table(&["subset", "rank", "mult", "dim", "torsion"], &body)
}

pub fn render_checks(checks: &[CheckResult]) -> String {
    let mut out = String::new();
    for c in checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{:<14}{verdict}  ({} checked)", c.name, c.checked);
        for v in &c.violations {
            let sets: Vec<String> = v.subsets.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "    [{}] {} {}", v.rule, sets.join(" "), v.detail);
        }
    }
    out
}

pub fn render_gcd(gcd: &GcdOut) -> String {
    match &gcd.witness {
        None => "GCD property: PASS\n".to_string(),
        Some(w) => format!(
            "GCD property: FAIL at {} (m = {}, gcd over bases = {})\n",
            w.subset, w.multiplicity, w.gcd
        ),
    }
}

pub fn render_euler(euler: &EulerOut) -> String {
    match &euler.note {
        None => format!("{}\n", euler.value),
        Some(note) => format!("{} ({note})\n", euler.value),
    }
}

impl Report {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.order.render_text());
        let _ = writeln!(out, "\n{} divisors in E^{}, essential: {}\n", self.rows, self.cols, self.essential);
        out.push_str(&render_subsets(&self.subsets));
        out.push('\n');
        out.push_str(&render_checks(&self.checks));
        out.push('\n');
        let _ = writeln!(out, "Tutte polynomial        {}", self.tutte.text);
        let _ = writeln!(out, "characteristic poly     {}", self.char_poly.text);
        if let Some(e2) = &self.e2_poincare {
            let _ = writeln!(out, "E2 Poincare polynomial  {}", e2.text);
        }
        let _ = write!(out, "Euler characteristic    {}", render_euler(&self.euler));
        out.push_str(&render_gcd(&self.gcd));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::file_format::parse_str;

    const FIXTURE: &str = r#"{"field": {"m": 3}, "tau": {"a": -1, "b": 2, "c": 1},
        "matrix": {"rows": 2, "cols": 1, "entries": [[[2, 0]], [[1, 1]]]}}"#;

    #[test]
    fn check_list_parsing() {
        assert_eq!(Check::parse_list("a1,p2,coker-xcheck").unwrap(), vec![Check::A1, Check::P2, Check::CokerXcheck]);
        assert!(Check::parse_list("a3").is_err());
    }

    #[test]
    fn analyze_fixture() {
        let arr = parse_str(FIXTURE).unwrap();
        let report = analyze(&arr).unwrap();
        let m: Vec<String> = report.subsets.iter().map(|r| r.multiplicity.to_string()).collect();
        assert_eq!(m, ["1", "4", "4", "2"]);
        assert!(report.checks.iter().all(|c| c.passed));
        assert_eq!(report.euler.value, BigInt::from(-6));
        assert!(!report.gcd.holds);
        let text = report.render_text();
        assert!(text.contains("{1,2}"));
        assert!(text.contains("x + 2y + 5"));
    }

    #[test]
    fn json_is_exact_and_stable() {
        let arr = parse_str(FIXTURE).unwrap();
        let a = serde_json::to_string(&analyze(&arr).unwrap()).unwrap();
        let b = serde_json::to_string(&analyze(&arr).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"multiplicity\":2"));
        assert!(!a.contains('.'), "no floats in machine output");
    }

    #[test]
    fn chains_and_tables() {
        assert_eq!(chain(&[]), "-");
        assert_eq!(chain(&[BigInt::from(2), BigInt::from(4)]), "2 | 4");
        let t = table(&["a", "bb"], &[vec!["123".into(), "x".into()]]);
        assert_eq!(t, "a    bb\n123  x\n");
    }
}
