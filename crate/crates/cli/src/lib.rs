//! Command-line front end for `refl-fc`.

mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use refl_fc::embed::{
    appendix_g333, compare_appendix, embed, intrinsic_normal_forms, is_member,
    parse_intrinsic_word, preimage,
};
use refl_fc::fc::{cf_is_fully_commutative, DEFAULT_CLASS_BUDGET};
use refl_fc::group::DEFAULT_BUDGET;
use refl_fc::packets::{
    count_fc_closed, decompose_with_budget, packet_size, CatalanTriangle, Decomposition,
};
use refl_fc::{eval, normalize, parse_word, CanonicalForm, GroupParams};

pub use verify::Scope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "refl-fc",
    version,
    about = "Canonical forms and fully commutative elements of G(d,r,n)"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Largest group order (of G(d,1,n)) enumerated exhaustively.
    #[arg(long, env = "REFL_FC_BUDGET", default_value_t = DEFAULT_BUDGET, global = true)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical form of a word of G(d,1,n).
    Normalize {
        #[arg(long)]
        group: GroupParams,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Full commutativity queries.
    Fc {
        #[command(subcommand)]
        action: FcAction,
    },
    /// Packets and collections with their sizes.
    Packets {
        #[arg(long)]
        group: GroupParams,
    },
    /// Image of an intrinsic word (letter 0 is the extra generator).
    Embed {
        #[arg(long)]
        group: GroupParams,
        #[arg(long)]
        word: String,
    },
    /// An intrinsic word mapping onto the element of a word of G(d,1,n).
    Preimage {
        #[arg(long)]
        group: GroupParams,
        #[arg(long)]
        word: String,
    },
    /// Deg-lex reduced words of G(3,3,3) over its intrinsic generators.
    Appendix {
        #[arg(value_enum)]
        which: Appendix,
        /// Compare with the bundled list; exit 1 on any difference.
        #[arg(long)]
        check: bool,
    },
    /// Re-derive the counts and identities over a parameter grid.
    Verify {
        #[arg(value_enum, default_value_t = Scope::All)]
        scope: Scope,
        #[arg(long, default_value_t = 4)]
        dmax: u32,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        /// Largest group order checked against the Cayley-graph oracle.
        #[arg(long, default_value_t = 400)]
        oracle_budget: u64,
    },
    /// Deterministic tables.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long, required_if_eq_any = [("kind", "packets"), ("kind", "collections"), ("kind", "fc-words")])]
        group: Option<GroupParams>,
        /// Last row of the Catalan triangle.
        #[arg(long, default_value_t = 7)]
        nmax: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum FcAction {
    /// Is the element of the word fully commutative?
    Check {
        #[arg(long)]
        group: GroupParams,
        #[arg(long)]
        word: String,
    },
    /// Number of fully commutative elements, with the closed form when n >= 3.
    Count {
        #[arg(long)]
        group: GroupParams,
    },
    /// Every fully commutative element.
    List {
        #[arg(long)]
        group: GroupParams,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Appendix {
    G333,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    CatalanTriangle,
    Packets,
    Collections,
    FcWords,
}

/// Column-ordered rows rendered as a JSON array of objects or as CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let objects: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let map = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| (c.to_string(), v.clone()))
                            .collect();
                        Value::Object(map)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&objects).expect("values serialise");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row.iter().map(csv_cell))
                        .expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
            }
        }
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Rendered output and the process exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

fn ok(table: Table, format: Format) -> Outcome {
    Outcome {
        output: table.render(format),
        status: 0,
    }
}

fn cf_json(cf: &CanonicalForm) -> (Value, Value) {
    let suffix: Vec<Value> = cf.suffix().iter().map(|f| json!([f.j, f.k])).collect();
    (json!(cf.prefix()), Value::Array(suffix))
}

fn word_text(cf: &CanonicalForm) -> String {
    cf.flatten().to_compact_string()
}

fn decomposition(group: &GroupParams, budget: u64) -> refl_fc::Result<Decomposition> {
    decompose_with_budget(group, budget, DEFAULT_CLASS_BUDGET)
}

fn packets_table(group: &GroupParams, budget: u64) -> refl_fc::Result<Table> {
    let dec = decomposition(group, budget)?;
    let mut t = Table::new(&["k", "packet_size", "collection", "collection_size"]);
    for k in 0..=group.n() {
        let size = verify::number(packet_size(group, k)?.to_string());
        match dec.packet(k) {
            Some(packet) => {
                for (label, members) in packet {
                    t.push(vec![
                        json!(k),
                        size.clone(),
                        json!(label.to_string()),
                        json!(members.len()),
                    ]);
                }
            }
            None => t.push(vec![json!(k), size.clone(), Value::Null, json!(0)]),
        }
    }
    Ok(t)
}

fn fc_rows(group: &GroupParams, budget: u64, with_intrinsic: bool) -> refl_fc::Result<Table> {
    let dec = decomposition(group, budget)?;
    let mut cols = vec!["k", "collection", "prefix", "word"];
    if with_intrinsic {
        cols.push("intrinsic");
    }
    let mut t = Table::new(&cols);
    for (packet, collections) in &dec.packets {
        for (label, members) in collections {
            for cf in members {
                let mut row = vec![
                    json!(packet.k),
                    json!(label.to_string()),
                    json!(cf.prefix_word().to_compact_string()),
                    json!(word_text(cf)),
                ];
                if with_intrinsic {
                    let w = if group.is_full() {
                        Value::Null
                    } else {
                        json!(preimage(cf, group)?.to_string())
                    };
                    row.push(w);
                }
                t.push(row);
            }
        }
    }
    Ok(t)
}

fn collections_table(group: &GroupParams, budget: u64) -> refl_fc::Result<Table> {
    let dec = decomposition(group, budget)?;
    let mut t = Table::new(&["k", "collection", "size", "members"]);
    for (packet, collections) in &dec.packets {
        for (label, members) in collections {
            let words: Vec<String> = members.iter().map(word_text).collect();
            t.push(vec![
                json!(packet.k),
                json!(label.to_string()),
                json!(members.len()),
                json!(words),
            ]);
        }
    }
    Ok(t)
}

/// Runs a parsed command. Errors in the input become `Err`.
pub fn run(cli: &Cli) -> Result<Outcome, String> {
    let format = cli.format;
    let budget = cli.budget;
    let err = |e: refl_fc::Error| e.to_string();
    match &cli.command {
        Command::Normalize { group, word } => {
            let amb = group.ambient();
            let w = parse_word(word, &amb).map_err(err)?;
            let cf = normalize(&w, &amb).map_err(err)?;
            let (prefix, suffix) = cf_json(&cf);
            let mut t = Table::new(&[
                "group",
                "input",
                "canonical",
                "prefix",
                "suffix",
                "length",
                "reduced",
                "member",
            ]);
            t.push(vec![
                json!(group.to_string()),
                json!(w.to_compact_string()),
                json!(word_text(&cf)),
                prefix,
                suffix,
                json!(cf.length()),
                json!(cf.length() == w.len()),
                json!(is_member(&cf, group)),
            ]);
            Ok(ok(t, format))
        }
        Command::Fc { action } => match action {
            FcAction::Check { group, word } => {
                let amb = group.ambient();
                let w = parse_word(word, &amb).map_err(err)?;
                let cf = normalize(&w, &amb).map_err(err)?;
                let fc = cf_is_fully_commutative(&cf, &amb, DEFAULT_CLASS_BUDGET).map_err(err)?;
                let mut t =
                    Table::new(&["group", "word", "canonical", "member", "fully_commutative"]);
                t.push(vec![
                    json!(group.to_string()),
                    json!(w.to_compact_string()),
                    json!(word_text(&cf)),
                    json!(is_member(&cf, group)),
                    json!(fc),
                ]);
                Ok(ok(t, format))
            }
            FcAction::Count { group } => {
                let dec = decomposition(group, budget).map_err(err)?;
                let closed = if group.n() >= 3 {
                    json!(count_fc_closed(group).map_err(err)?.to_string())
                } else {
                    Value::Null
                };
                let mut t = Table::new(&["group", "count", "closed_form"]);
                t.push(vec![json!(group.to_string()), json!(dec.total()), closed]);
                Ok(ok(t, format))
            }
            FcAction::List { group } => Ok(ok(fc_rows(group, budget, false).map_err(err)?, format)),
        },
        Command::Packets { group } => Ok(ok(packets_table(group, budget).map_err(err)?, format)),
        Command::Embed { group, word } => {
            let amb = group.ambient();
            let w = parse_intrinsic_word(word, group).map_err(err)?;
            let img = embed(&w, group).map_err(err)?;
            let cf = normalize(&img, &amb).map_err(err)?;
            let mut t = Table::new(&["group", "intrinsic", "image", "canonical"]);
            t.push(vec![
                json!(group.to_string()),
                json!(w.to_string()),
                json!(img.to_compact_string()),
                json!(word_text(&cf)),
            ]);
            Ok(ok(t, format))
        }
        Command::Preimage { group, word } => {
            let amb = group.ambient();
            let w = parse_word(word, &amb).map_err(err)?;
            let cf = normalize(&w, &amb).map_err(err)?;
            let pre = preimage(&cf, group).map_err(err)?;
            debug_assert_eq!(
                eval(&embed(&pre, group).map_err(err)?, &amb),
                eval(&w, &amb)
            );
            // deg-lex least geodesic, when the subgroup is small enough to search
            let geodesic = if group.order() <= budget as u128 {
                let alphabet: Vec<u8> = (u8::from(group.e() == 1)..=group.top()).collect();
                let forms = intrinsic_normal_forms(group, &alphabet).map_err(err)?;
                forms
                    .get(&eval(&cf.flatten(), &amb))
                    .map_or(Value::Null, |g| json!(g.to_string()))
            } else {
                Value::Null
            };
            let mut t = Table::new(&["group", "word", "canonical", "preimage", "geodesic"]);
            t.push(vec![
                json!(group.to_string()),
                json!(w.to_compact_string()),
                json!(word_text(&cf)),
                json!(pre.to_string()),
                geodesic,
            ]);
            Ok(ok(t, format))
        }
        Command::Appendix {
            which: Appendix::G333,
            check,
        } => {
            if *check {
                let cmp = compare_appendix();
                let mut t = Table::new(&[
                    "computed",
                    "expected",
                    "matched",
                    "missing",
                    "unexpected",
                    "pass",
                ]);
                t.push(vec![
                    json!(cmp.computed),
                    json!(cmp.expected),
                    json!(cmp.matched),
                    json!(cmp.missing),
                    json!(cmp.unexpected),
                    json!(cmp.is_exact()),
                ]);
                Ok(Outcome {
                    output: t.render(format),
                    status: if cmp.is_exact() { 0 } else { 1 },
                })
            } else {
                let mut t = Table::new(&["index", "word"]);
                for (i, w) in appendix_g333().iter().enumerate() {
                    t.push(vec![json!(i + 1), json!(w.to_digit_string())]);
                }
                Ok(ok(t, format))
            }
        }
        Command::Verify {
            scope,
            dmax,
            nmax,
            oracle_budget,
        } => {
            let grid = verify::Grid {
                dmax: *dmax,
                nmax: *nmax,
                budget,
                oracle_budget: *oracle_budget,
            };
            let report = verify::run(*scope, &grid);
            let failed = report.iter().any(|r| r.pass == Some(false));
            Ok(Outcome {
                output: verify::table(&report).render(format),
                status: i32::from(failed),
            })
        }
        Command::Table { kind, group, nmax } => {
            let need = || group.ok_or_else(|| "--group is required for this table".to_string());
            let t = match kind {
                TableKind::CatalanTriangle => {
                    let tri = CatalanTriangle::new(*nmax);
                    let mut t = Table::new(&["n", "row"]);
                    for (n, row) in tri.rows().enumerate() {
                        let text: Vec<String> = row.iter().map(ToString::to_string).collect();
                        t.push(vec![json!(n), json!(text.join(","))]);
                    }
                    t
                }
                TableKind::Packets => packets_table(&need()?, budget).map_err(err)?,
                TableKind::Collections => collections_table(&need()?, budget).map_err(err)?,
                TableKind::FcWords => fc_rows(&need()?, budget, true).map_err(err)?,
            };
            Ok(ok(t, format))
        }
    }
}
