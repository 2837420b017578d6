use serde_json::{json, Value};

use ree_syl::classes::{all_classes, all_classes_bruteforce, superclass_partition, SuperclassLabel};
use ree_syl::irrchar::build_char_table;
use ree_syl::orbits::{classify_all, orbit_of, OrbitRecord, Pattern};
use ree_syl::superchar::{build_supertable, Constancy, EXHAUSTIVE_CAP};
use ree_syl::verify::{run_suite, Diagnostic, Sampling, Suite, SuiteReport};
use ree_syl::{Eisenstein, Field, Result, SylowGroup};

use crate::emit::{Rendered, Table};
use crate::{ChevalleyOp, Cli, Command, GroupOp, SuiteArg};

pub fn run(cli: &Cli) -> Result<Rendered> {
    let g = &cli.global;
    let sampling = Sampling {
        samples: g.samples as usize,
        seed: g.seed,
    };
    match &cli.command {
        Command::FieldInfo => field_info(g.m),
        Command::Group { op } => group_op(g.m, op),
        Command::Chevalley { op: ChevalleyOp::Check } => {
            verify(&SylowGroup::new(g.m)?, &[Suite::Matrix], sampling)
        }
        Command::Orbits { pattern } => orbits(g.m, pattern.as_deref()),
        Command::Classes { brute_force } => classes(g.m, *brute_force),
        Command::Superclasses => superclasses(g.m),
        Command::Supertable => supertable(g.m, sampling),
        Command::Chartable { verify: false } => chartable(),
        Command::Chartable { verify: true } => {
            verify(&SylowGroup::new(0)?, &[Suite::Chartable], sampling)
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = match suite {
                SuiteArg::All => Suite::ALL.to_vec(),
                SuiteArg::Cocycle => vec![Suite::Cocycle],
                SuiteArg::Matrix => vec![Suite::Matrix],
                SuiteArg::Classes => vec![Suite::Classes],
                SuiteArg::Axioms => vec![Suite::Axioms],
                SuiteArg::Chartable => vec![Suite::Chartable],
            };
            verify(&SylowGroup::new(g.m)?, &suites, sampling)
        }
    }
}

fn eis_json(z: &Eisenstein) -> Value {
    serde_json::to_value(z).expect("eisenstein values serialize")
}

fn field_info(m: u32) -> Result<Rendered> {
    let f = Field::new(m)?;
    let modulus: Vec<u8> = f.modulus().to_vec();
    let modulus_text = modulus
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let mut t = Table::new(["key", "value"]);
    t.push(["m".to_string(), m.to_string()]);
    t.push(["q".to_string(), f.q().to_string()]);
    t.push(["degree".to_string(), f.degree().to_string()]);
    t.push(["theta".to_string(), f.theta().to_string()]);
    t.push(["modulus".to_string(), modulus_text]);
    t.push(["group_order".to_string(), (f.q().pow(3)).to_string()]);
    Ok(Rendered {
        json: json!({
            "m": m,
            "q": f.q(),
            "degree": f.degree(),
            "theta": f.theta(),
            "modulus": modulus,
            "group_order": f.q().pow(3),
        }),
        table: t,
        ok: true,
    })
}

fn group_op(m: u32, op: &GroupOp) -> Result<Rendered> {
    let group = SylowGroup::new(m)?;
    let (name, result) = match op {
        GroupOp::Mul { x, y } => ("mul", group.mul(&group.parse(x)?, &group.parse(y)?)),
        GroupOp::Inv { x } => ("inv", group.inv(&group.parse(x)?)),
        GroupOp::Conj { x, by } => ("conj", group.conjugate(&group.parse(x)?, &group.parse(by)?)),
        GroupOp::Comm { x, y } => ("comm", group.commutator(&group.parse(x)?, &group.parse(y)?)),
    };
    let f = group.field();
    let text = group.format(&result);
    let mut t = Table::new(["op", "result"]);
    t.push([name.to_string(), text.clone()]);
    Ok(Rendered {
        json: json!({
            "op": name,
            "result": text,
            "t1": f.format(result.t1),
            "t3": f.format(result.t3),
            "t4": f.format(result.t4),
        }),
        table: t,
        ok: true,
    })
}

fn orbit_json(f: &Field, r: &OrbitRecord) -> Value {
    json!({
        "verge": r.verge.format(f),
        "size": r.size(),
        "stabilizer_order": r.stabilizer_order,
        "family": r.family.name(),
    })
}

fn orbits(m: u32, pattern: Option<&str>) -> Result<Rendered> {
    let group = SylowGroup::new(m)?;
    let f = group.field();
    let records = match pattern {
        Some(p) => vec![orbit_of(&group, &Pattern::parse(f, p)?)],
        None => classify_all(&group)?,
    };
    let mut t = Table::new(["verge", "family", "size", "stabilizer_order"]);
    for r in &records {
        t.push([
            r.verge.format(f),
            r.family.name().to_string(),
            r.size().to_string(),
            r.stabilizer_order.to_string(),
        ]);
    }
    Ok(Rendered {
        json: Value::Array(records.iter().map(|r| orbit_json(f, r)).collect()),
        table: t,
        ok: true,
    })
}

fn classes(m: u32, brute_force: bool) -> Result<Rendered> {
    let group = SylowGroup::new(m)?;
    let f = group.field();
    let list = if brute_force {
        all_classes_bruteforce(&group)?
    } else {
        all_classes(&group)?
    };
    let mut t = Table::new(["rep", "size", "superclass_label"])
        .title(format!("{} conjugacy classes, q = {}", list.len(), group.q()));
    let mut out = Vec::new();
    for c in &list {
        let label = SuperclassLabel::of(&c.representative).format(f);
        let rep = group.format(&c.representative);
        t.push([rep.clone(), c.size.to_string(), label.clone()]);
        out.push(json!({ "rep": rep, "size": c.size, "superclass_label": label }));
    }
    Ok(Rendered {
        json: Value::Array(out),
        table: t,
        ok: true,
    })
}

fn superclasses(m: u32) -> Result<Rendered> {
    let group = SylowGroup::new(m)?;
    let f = group.field();
    let partition = superclass_partition(&group)?;
    let mut t = Table::new(["label", "size", "representative"])
        .title(format!("{} superclasses, q = {}", partition.parts.len(), group.q()));
    let mut out = Vec::new();
    for p in &partition.parts {
        let label = p.label.format(f);
        let rep = group.format(&p.label.representative(&group));
        t.push([label.clone(), p.members.len().to_string(), rep.clone()]);
        out.push(json!({ "label": label, "size": p.members.len(), "representative": rep }));
    }
    Ok(Rendered {
        json: Value::Array(out),
        table: t,
        ok: true,
    })
}

fn supertable(m: u32, sampling: Sampling) -> Result<Rendered> {
    let group = SylowGroup::new(m)?;
    let f = group.field();
    let constancy = if group.q() <= EXHAUSTIVE_CAP {
        Constancy::Full
    } else {
        Constancy::Sampled {
            samples: sampling.samples.min(64),
            seed: sampling.seed,
        }
    };
    let table = build_supertable(&group, constancy)?;
    let mut headers = vec!["character".to_string()];
    headers.extend(table.column_labels.iter().cloned());
    let mut t = Table::new(headers).title(format!("supercharacter table, q = {}", table.q));
    let mut sizes = vec!["size".to_string()];
    sizes.extend(table.column_sizes.iter().map(|s| s.to_string()));
    t.notes.push(format!("superclass sizes: {}", sizes[1..].join(" ")));
    let mut rows = Vec::new();
    for r in &table.rows {
        let mut cells = vec![r.label.clone()];
        cells.extend(r.values.iter().map(|v| v.to_string()));
        t.push(cells);
        rows.push(json!({
            "label": r.label,
            "verge": r.verge.format(f),
            "family": r.family.name(),
            "values": r.values.iter().map(eis_json).collect::<Vec<_>>(),
        }));
    }
    let columns: Vec<Value> = table
        .column_labels
        .iter()
        .zip(&table.column_sizes)
        .map(|(l, s)| json!({ "label": l, "size": s }))
        .collect();
    Ok(Rendered {
        json: json!({ "q": table.q, "columns": columns, "rows": rows }),
        table: t,
        ok: true,
    })
}

fn chartable() -> Result<Rendered> {
    let group = SylowGroup::new(0)?;
    let table = build_char_table(&group)?;
    let mut headers = vec!["character".to_string(), "degree".to_string()];
    headers.extend(table.column_labels.iter().cloned());
    let mut t = Table::new(headers).title("character table, q = 3");
    t.notes.push(format!(
        "class sizes: {}",
        table
            .column_sizes
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    let mut rows = Vec::new();
    for r in &table.rows {
        let mut cells = vec![r.label.clone(), r.degree.to_string()];
        cells.extend(r.values.iter().map(|v| v.to_string()));
        t.push(cells);
        rows.push(json!({
            "label": r.label,
            "degree": r.degree as i64,
            "values": r.values.iter().map(eis_json).collect::<Vec<_>>(),
        }));
    }
    let columns: Vec<Value> = table
        .column_labels
        .iter()
        .zip(&table.column_sizes)
        .map(|(l, s)| json!({ "representative": l, "size": s }))
        .collect();
    Ok(Rendered {
        json: json!({ "q": 3, "columns": columns, "rows": rows }),
        table: t,
        ok: true,
    })
}

fn diagnostic_note(d: &Diagnostic) -> String {
    match d {
        Diagnostic::MatrixDisplay(x) => format!(
            "diagnostic: matrix display, {} parameter triples, {} mismatching entries",
            x.triples_checked,
            x.mismatches.len()
        ),
        Diagnostic::PublishedCharacterTable(p) => {
            let rows: Vec<String> = p
                .rows
                .iter()
                .filter(|r| r.mismatched_cells > 0)
                .map(|r| format!("{}~{}:{}", r.published_row, r.matched_row, r.mismatched_cells))
                .collect();
            format!(
                "diagnostic: published character table, {} differing cells{}{}",
                p.cells.len(),
                if rows.is_empty() { "" } else { " in " },
                rows.join(" ")
            )
        }
    }
}

fn verify(group: &SylowGroup, suites: &[Suite], sampling: Sampling) -> Result<Rendered> {
    let mut reports: Vec<SuiteReport> = Vec::new();
    for s in suites {
        reports.push(run_suite(*s, group, sampling)?);
    }
    let ok = reports.iter().all(|r| r.passed());
    let mut t = Table::new(["suite", "q", "check", "status", "detail"]).title(format!(
        "verification, m = {}, q = {}: {}",
        group.field().m(),
        group.q(),
        if ok { "PASS" } else { "FAIL" }
    ));
    for r in &reports {
        for c in &r.checks {
            t.push([
                r.suite.name().to_string(),
                r.q.to_string(),
                c.name.clone(),
                if c.passed { "pass" } else { "FAIL" }.to_string(),
                c.detail.clone(),
            ]);
            if let Some(ce) = &c.counterexample {
                t.note(format!("counterexample for {}: {ce}", c.name));
            }
        }
        for d in &r.diagnostics {
            t.note(diagnostic_note(d));
        }
    }
    let json = json!({
        "m": group.field().m(),
        "q": group.q(),
        "passed": ok,
        "suites": serde_json::to_value(&reports).expect("reports serialize"),
    });
    Ok(Rendered { json, table: t, ok })
}
