//! Recomputes the tabulated invariants and compares them with the fixtures.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::fixtures::{
    displayed_numerators, ledgers, planes, screen_expectations, table1, table1_row, table2, ExpectedPoint,
};
use crate::fano_model::{orbifold_screen, FanoModel, QuotientPoint, Verdict};
use crate::key_variety::{key_series, Half, WeightData};
use crate::series::Denominator;
use crate::unprojection::{
    ci_euler, euler_ledger, hilbert_burch_numerator, node_count, pattern_feasible, pfaffian_numerator,
    project_type_one, unprojection_degree, SkewPfaffianData, TomJerryPattern,
};
use crate::{HilbertSeries, IntPolynomial};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Check {
    pub item: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    fn new(item: impl Into<String>, expected: impl ToString, computed: impl ToString) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Check { item: item.into(), pass: expected == computed, expected, computed }
    }

    fn flag(item: impl Into<String>, pass: bool, detail: impl ToString) -> Self {
        Check { item: item.into(), expected: "true".into(), computed: detail.to_string(), pass }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({}/{} pass)", self.title, self.passed(), self.checks.len())?;
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            if c.pass {
                writeln!(f, "{status} {}: {}", c.item, c.computed)?;
            } else {
                writeln!(f, "{status} {}: got {}, expected {}", c.item, c.computed, c.expected)?;
            }
        }
        Ok(())
    }
}

fn row_model(id: &str) -> Option<FanoModel> {
    table1_row(id)?.model()
}

fn displayed_route(name: &str) -> Option<HilbertSeries> {
    match name {
        "segre" => {
            let w = WeightData::new([Half::ZERO; 3], [Half::ZERO; 3], Half::from_int(1)).ok()?;
            key_series(&w).ok()
        }
        "26989-sings" => {
            let num: IntPolynomial = hilbert_burch_numerator([Half::ZERO; 3], [Half::from_int(1); 4]).ok()?;
            Some(HilbertSeries::new(num, Denominator::new([1, 1, 1]).ok()?))
        }
        "20543" => {
            let s = SkewPfaffianData::new([0, 1, 1, 1, 1].map(Half::from_int), Default::default(), vec![]).ok()?;
            Some(HilbertSeries::new(pfaffian_numerator(&s).ok()?, Denominator::new([1, 1, 1, 1, 1, 2, 2]).ok()?))
        }
        id => Some(row_model(id)?.series()),
    }
}

/// Euler ledgers, unprojection degrees, displayed numerators and the
/// projection data behind the theorem tables.
pub fn report_theorem_ledgers() -> Report {
    let mut checks = Vec::new();
    for row in ledgers() {
        let item = format!("{} family {} ({}) e(X)", row.series, row.family, row.construction);
        checks.push(Check::new(item, row.e_x, euler_ledger(row.e_y_gen, row.nodes)));
    }
    if let Some(row) = ledgers().iter().find(|r| r.series == "26989") {
        let e = ci_euler(6, &[2, 2, 2]).map_or_else(|e| e.to_string(), |v| v.to_string());
        checks.push(Check::new("26989 e(Y_gen) of the 2,2,2 complete intersection", row.e_y_gen, e));
    }
    if let Some(row) = ledgers().iter().find(|r| r.series == "26989" && r.family == 1) {
        let num: IntPolynomial =
            hilbert_burch_numerator([Half::ZERO; 3], [Half::from_int(1); 4]).expect("valid degrees");
        let n = node_count(&num, &Denominator::new([1, 1, 1]).expect("positive"))
            .map_or_else(|e| e.to_string(), |v| v.to_string());
        checks.push(Check::new("26989 family 1 nodes from the rank drop locus", row.nodes, n));
    }
    for p in planes() {
        let b = unprojection_degree(Some(-1), &p.plane).map_or_else(|e| e.to_string(), |v| v.to_string());
        let plane = p.plane.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",");
        checks.push(Check::new(format!("{} unprojection degree for D = P({plane})", p.series), p.weight, b));
    }
    for d in displayed_numerators() {
        let displayed =
            HilbertSeries::new(d.numerator.clone(), Denominator::new(d.ambient.iter().copied()).expect("positive"));
        let computed = match displayed_route(&d.name) {
            Some(s) => s.normalized(),
            None => {
                checks.push(Check::flag(format!("{} numerator", d.name), false, "no route"));
                continue;
            }
        };
        let agree = computed.same_function(&displayed);
        checks.push(Check::flag(format!("{} series {}", d.name, displayed), agree, computed));
    }
    if let (Some(p2), Some(pf)) = (displayed_route("20543"), row_model("20543")) {
        let a: Vec<BigInt> = p2.expand(40);
        let b: Vec<BigInt> = pf.series().expand(40);
        checks.push(Check::flag("20543 Pfaffian and P2xP2 routes agree to 40 terms", a == b, format!("{:?}", &a[..6])));
    }
    for (id, carrier, display) in
        [("26989", 2, "(0) 1 1 1 / 1 1 1 / 2 2 / (2)"), ("20543", 2, "(0) 1 1 2 / 1 1 2 / 2 3 / (3)")]
    {
        let got = row_model(id)
            .ok_or_else(|| "no model".to_string())
            .and_then(|m| project_type_one(&m, carrier).map_err(|e| e.to_string()))
            .map(|p| p.skew.degree_display());
        let got = got.unwrap_or_else(|e| e);
        checks.push(Check::new(format!("{id} projection from 1/{carrier} degree matrix"), display, got));
    }
    if let Some(n) = row_model("26989").and_then(|m| project_type_one(&m, 2).ok()).map(|p| p.skew) {
        let tom = TomJerryPattern::tom(3, vec![1; 4]);
        checks.push(Check::new("26989 Tom_3 feasible", true, pattern_feasible(&n, &tom)));
        let mut eps = n.clone();
        eps.zero_entries = [(4, 5)].into_iter().collect();
        let jer = TomJerryPattern::jerry(4, 5, vec![1; 4]);
        checks.push(Check::new("26989 Jer_4,5 with f_45 = 0 feasible", false, pattern_feasible(&eps, &jer)));
    }
    if let Some(n) = row_model("20543").and_then(|m| project_type_one(&m, 2).ok()).map(|p| p.skew) {
        let tom = TomJerryPattern::tom(3, vec![1, 1, 2, 2]);
        checks.push(Check::new("20543 Tom_3 feasible", true, pattern_feasible(&n, &tom)));
    }
    Report { title: "theorem ledgers".into(), checks }
}

/// Every second-Tom matrix recomputed from the (a, b) of the matching row of
/// the P2xP2 table.
pub fn cross_check_tables() -> Report {
    let checks = table2()
        .iter()
        .map(|t2| {
            let item = format!("{} weight matrix", t2.grdb_id);
            match table1().iter().find(|r| r.matches_id(&t2.grdb_id)) {
                None => Check::new(item, t2.matrix, "no row"),
                Some(row) => {
                    let m = row.weight_data().weight_matrix();
                    let computed = if m == t2.matrix || m.transpose() == t2.matrix { t2.matrix } else { m };
                    Check::new(item, t2.matrix, computed)
                }
            }
        })
        .collect();
    Report { title: "table cross-check".into(), checks }
}

fn same_type(r: u32, got: &[u32], want: &[u32; 3]) -> bool {
    if got.len() != 3 {
        return false;
    }
    let mut want: Vec<u32> = want.iter().map(|w| w % r).collect();
    want.sort_unstable();
    (1..r.max(2)).any(|u| {
        let mut g: Vec<u32> = got.iter().map(|w| (u * w) % r).collect();
        g.sort_unstable();
        g == want
    })
}

fn matches(p: &QuotientPoint, e: &ExpectedPoint) -> bool {
    let verdict = if e.terminal { Verdict::Terminal } else { Verdict::NonTerminal };
    p.r == e.r && p.verdict == verdict && e.weights.is_none_or(|w| same_type(p.r, &p.local_weights, &w))
}

fn describe(e: &ExpectedPoint) -> String {
    let w = e.weights.map(|w| format!("({},{},{})", w[0], w[1], w[2])).unwrap_or_default();
    let v = if e.terminal { Verdict::Terminal } else { Verdict::NonTerminal };
    format!("1/{}{w} {v}", e.r)
}

/// Screens the rows whose singularities are described in the text.
pub fn screen_report() -> Report {
    let mut checks = Vec::new();
    for exp in screen_expectations() {
        let Some(model) = row_model(&exp.series) else {
            checks.push(Check::flag(format!("{} model", exp.series), false, "no model"));
            continue;
        };
        let points: Vec<QuotientPoint> =
            orbifold_screen(&model).into_iter().filter(|p| p.verdict != Verdict::NotOnX).collect();
        let listing = if points.is_empty() {
            "none".to_string()
        } else {
            points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; ")
        };
        for e in &exp.points {
            let ok = points.iter().any(|p| matches(p, e));
            checks.push(Check::flag(format!("{} has {}", exp.series, describe(e)), ok, &listing));
        }
        if exp.exhaustive {
            let extra: Vec<String> =
                points.iter().filter(|p| !exp.points.iter().any(|e| matches(p, e))).map(|p| p.to_string()).collect();
            checks.push(Check::flag(
                format!("{} has no other points", exp.series),
                extra.is_empty(),
                if extra.is_empty() { "none".to_string() } else { extra.join("; ") },
            ));
        }
        let qs = points.iter().all(|p| p.quasismooth);
        checks.push(Check::new(format!("{} quasismooth", exp.series), exp.quasismooth, qs));
        let undecided = points.iter().filter(|p| p.verdict == Verdict::Unknown).count();
        checks.push(Check::new(format!("{} undecided points", exp.series), 0, undecided));
    }
    Report { title: "singularity screen".into(), checks }
}
