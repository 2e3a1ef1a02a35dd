//! The `verify` harness: one row per check and parameter set.

use std::collections::{BTreeMap, BTreeSet};

use clap::ValueEnum;
use serde_json::{json, Value};

use refl_fc::embed::{compare_appendix, embed, g333_fc_image_table, verify_intrinsic_presentation};
use refl_fc::fc::{
    enumerate_fc_with_budget, is_fc_oracle, is_fully_commutative, DEFAULT_CLASS_BUDGET,
};
use refl_fc::group::verify_presentation;
use refl_fc::packets::{
    catalan_triangle, count_fc_closed, coxeter_fc_count, decompose_with_budget, packet_size,
    CoxeterType, Decomposition,
};
use refl_fc::words::{canonical_forms, structure};
use refl_fc::{eval, normalize, CanonicalForm, CayleyIndex, GroupParams};

use crate::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Relations,
    Canonical,
    Fc,
    Packets,
    Counts,
    Appendix,
    All,
}

pub(crate) struct Grid {
    pub dmax: u32,
    pub nmax: usize,
    pub budget: u64,
    pub oracle_budget: u64,
}

impl Grid {
    /// Every valid `G(d, r, n)` with `d <= dmax`, `n <= nmax`.
    fn groups(&self, min_n: usize) -> Vec<GroupParams> {
        let mut out = Vec::new();
        for d in 1..=self.dmax {
            for r in (1..=d).filter(|r| d % r == 0) {
                for n in min_n.max(2)..=self.nmax {
                    if let Ok(p) = GroupParams::new(d, r, n) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Row {
    pub check: &'static str,
    pub params: String,
    pub expected: Value,
    pub actual: Value,
    /// `None` when the check was skipped for budget reasons.
    pub pass: Option<bool>,
}

impl Row {
    fn compare(check: &'static str, params: impl ToString, expected: Value, actual: Value) -> Row {
        let pass = Some(expected == actual);
        Row {
            check,
            params: params.to_string(),
            expected,
            actual,
            pass,
        }
    }

    fn skipped(check: &'static str, params: impl ToString, why: String) -> Row {
        Row {
            check,
            params: params.to_string(),
            expected: Value::Null,
            actual: json!(why),
            pass: None,
        }
    }

    fn failed(check: &'static str, params: impl ToString, why: String) -> Row {
        Row {
            check,
            params: params.to_string(),
            expected: Value::Null,
            actual: json!(why),
            pass: Some(false),
        }
    }
}

pub(crate) fn table(rows: &[Row]) -> Table {
    let mut t = Table::new(&["check", "params", "expected", "actual", "pass"]);
    for r in rows {
        let pass = r.pass.map_or(Value::Null, Value::Bool);
        t.push(vec![
            json!(r.check),
            json!(r.params),
            r.expected.clone(),
            r.actual.clone(),
            pass,
        ]);
    }
    t
}

/// Big integers as JSON numbers when they fit, strings otherwise.
pub(crate) fn number(text: String) -> Value {
    text.parse::<u64>()
        .map(Value::from)
        .unwrap_or(Value::String(text))
}

pub(crate) fn run(scope: Scope, grid: &Grid) -> Vec<Row> {
    let mut cache = BTreeMap::new();
    let mut rows = Vec::new();
    let all = scope == Scope::All;
    if all || scope == Scope::Relations {
        relations(grid, &mut rows);
    }
    if all || scope == Scope::Canonical {
        canonical(grid, &mut rows);
    }
    if all || scope == Scope::Fc {
        fc_oracle(grid, &mut rows);
    }
    if all || scope == Scope::Packets {
        packets(grid, &mut cache, &mut rows);
    }
    if all || scope == Scope::Counts {
        counts(grid, &mut cache, &mut rows);
    }
    if all || scope == Scope::Appendix {
        appendix(&mut rows);
    }
    rows
}

fn relations(grid: &Grid, rows: &mut Vec<Row>) {
    for p in grid.groups(2) {
        let report = if p.is_full() {
            verify_presentation(&p)
        } else {
            match verify_intrinsic_presentation(&p) {
                Ok(r) => r,
                Err(e) => {
                    rows.push(Row::failed("relations", p, e.to_string()));
                    continue;
                }
            }
        };
        let passed = report.checks.iter().filter(|c| c.pass).count();
        rows.push(Row::compare(
            "relations",
            p,
            json!(report.checks.len()),
            json!(passed),
        ));
    }
}

fn canonical(grid: &Grid, rows: &mut Vec<Row>) {
    for p in grid.groups(2).into_iter().filter(GroupParams::is_full) {
        let order = p.order();
        if order > grid.budget as u128 {
            rows.push(Row::skipped(
                "canonical census",
                p,
                format!("order {order} over budget"),
            ));
            continue;
        }
        // every canonical word is its own normal form and re-parses to itself
        let mut count = 0u64;
        for cf in canonical_forms(&p) {
            let w = cf.flatten();
            let fixed = normalize(&w, &p).ok() == Some(cf.clone());
            let parsed = structure(&w, &p).ok() == Some(cf.clone());
            if fixed && parsed {
                count += 1;
            }
        }
        rows.push(Row::compare(
            "canonical census",
            p,
            json!(order as u64),
            json!(count),
        ));
        if order > grid.oracle_budget.max(100_000) as u128 {
            continue;
        }
        let idx = match CayleyIndex::build_with_budget(&p, grid.budget) {
            Ok(idx) => idx,
            Err(e) => {
                rows.push(Row::failed("canonical geodesics", p, e.to_string()));
                continue;
            }
        };
        let mut seen = BTreeSet::new();
        let mut geodesic = 0u64;
        for cf in canonical_forms(&p) {
            let g = eval(&cf.flatten(), &p);
            if idx.length(&g) as usize == cf.length() && seen.insert(g) {
                geodesic += 1;
            }
        }
        rows.push(Row::compare(
            "canonical geodesics",
            p,
            json!(order as u64),
            json!(geodesic),
        ));
    }
}

fn fc_oracle(grid: &Grid, rows: &mut Vec<Row>) {
    for p in grid.groups(2).into_iter().filter(GroupParams::is_full) {
        let order = p.order();
        if order > grid.oracle_budget as u128 {
            rows.push(Row::skipped(
                "fc oracle",
                p,
                format!("order {order} over oracle budget"),
            ));
            continue;
        }
        let idx = match CayleyIndex::build(&p) {
            Ok(idx) => idx,
            Err(e) => {
                rows.push(Row::failed("fc oracle", p, e.to_string()));
                continue;
            }
        };
        let mut agree = 0u64;
        for cf in canonical_forms(&p) {
            let w = cf.flatten();
            let fast = is_fully_commutative(&w, &p);
            let slow = is_fc_oracle(&w, &idx, DEFAULT_CLASS_BUDGET);
            if let (Ok(a), Ok(b)) = (fast, slow) {
                agree += u64::from(a == b);
            }
        }
        rows.push(Row::compare(
            "fc oracle",
            p,
            json!(order as u64),
            json!(agree),
        ));
    }
}

type Cache = BTreeMap<GroupParams, Result<Decomposition, String>>;

fn decomposition<'a>(
    grid: &Grid,
    cache: &'a mut Cache,
    p: &GroupParams,
) -> &'a Result<Decomposition, String> {
    cache.entry(*p).or_insert_with(|| {
        decompose_with_budget(p, grid.budget, DEFAULT_CLASS_BUDGET).map_err(|e| e.to_string())
    })
}

fn packets(grid: &Grid, cache: &mut Cache, rows: &mut Vec<Row>) {
    for p in grid.groups(3) {
        let n = p.n();
        let dec = match decomposition(grid, cache, &p) {
            Ok(dec) => dec,
            Err(e) => {
                rows.push(Row::skipped("packet sizes", p, e.clone()));
                continue;
            }
        };
        let formula: Vec<Value> = (0..=n)
            .map(|k| number(packet_size(&p, k).expect("k in range").to_string()))
            .collect();
        let observed: Vec<Value> = (0..=n)
            .map(|k| json!(dec.packet(k).map_or(0, |c| c.len())))
            .collect();
        rows.push(Row::compare(
            "packet sizes",
            p,
            json!(formula),
            json!(observed),
        ));

        // one entry per packet: the set of collection sizes met, expected {C(n,k)}
        let mut expected = Vec::new();
        let mut actual = Vec::new();
        for k in 0..=n {
            let Some(packet) = dec.packet(k) else {
                continue;
            };
            expected.push(json!([number(
                catalan_triangle(n, k).expect("k in range").to_string()
            )]));
            let sizes: BTreeSet<usize> = packet.values().map(Vec::len).collect();
            actual.push(json!(sizes));
        }
        rows.push(Row::compare(
            "collection sizes",
            p,
            json!(expected),
            json!(actual),
        ));
    }
}

fn counts(grid: &Grid, cache: &mut Cache, rows: &mut Vec<Row>) {
    for p in grid.groups(3) {
        let closed = number(count_fc_closed(&p).expect("n >= 3").to_string());
        match decomposition(grid, cache, &p) {
            Ok(dec) => rows.push(Row::compare("fc count", p, closed, json!(dec.total()))),
            Err(e) => rows.push(Row::skipped("fc count", p, e.clone())),
        }
    }
    for n in 2..=grid.nmax {
        let (a, b) = (GroupParams::new(1, 1, n), GroupParams::new(2, 1, n));
        for (kind, rank, p) in [(CoxeterType::A, n - 1, a), (CoxeterType::B, n, b)] {
            let Ok(p) = p else { continue };
            if p.d() > grid.dmax {
                continue;
            }
            let expected = number(
                coxeter_fc_count(kind, rank)
                    .expect("rank in range")
                    .to_string(),
            );
            let name = format!("{kind:?}{rank}");
            match enumerate_fc_with_budget(&p, grid.budget, DEFAULT_CLASS_BUDGET) {
                Ok(v) => rows.push(Row::compare(
                    "coxeter count",
                    name,
                    expected,
                    json!(v.len()),
                )),
                Err(e) => rows.push(Row::skipped("coxeter count", name, e.to_string())),
            }
        }
    }
}

fn appendix(rows: &mut Vec<Row>) {
    let cmp = compare_appendix();
    let row = Row {
        check: "g333 list",
        params: "G(3,3,3)".into(),
        expected: json!(cmp.expected),
        actual: json!(cmp.matched),
        pass: Some(cmp.is_exact()),
    };
    rows.push(row);
    let p = GroupParams::new(3, 3, 3).expect("valid parameters");
    let amb = p.ambient();
    let table = g333_fc_image_table();
    let fc: BTreeSet<CanonicalForm> = enumerate_fc_with_budget(&p, u64::MAX, DEFAULT_CLASS_BUDGET)
        .map(|v| v.into_iter().collect())
        .unwrap_or_default();
    let mut verified = 0usize;
    for r in &table {
        let Ok(img) = embed(&r.intrinsic, &p) else {
            continue;
        };
        let g = eval(&img, &amb);
        let alternatives_agree = r.images.iter().all(|w| eval(w, &amb) == g);
        let is_fc = normalize(&img, &amb)
            .map(|cf| fc.contains(&cf))
            .unwrap_or(false);
        verified += usize::from(alternatives_agree && is_fc);
    }
    rows.push(Row::compare(
        "g333 image table",
        "G(3,3,3)",
        json!(fc.len()),
        json!(verified),
    ));
}
