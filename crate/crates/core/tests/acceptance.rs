//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use diam2_core::classify::{eta, OrbitLabel, SubfieldClassifier};
use diam2_core::field::Field;
use diam2_core::forms::{ClassicalForm, FormKind};
use diam2_core::instance::{compare_partition, Instance};
use diam2_core::oracle::{all_orbits, isometry_group_spec, lambda_classes_by_enumeration, subfield_pair};
use diam2_core::space::SPACE_CAP;
use diam2_core::tables::{regenerate, subfield_bfs, TableId};
use diam2_core::verify::{default_grid, extraspecial_grid, partition_grid, run_oracle_check, run_verify, Record};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: summary }
    } else {
        Outcome { pass: false, detail: format!("{summary}; {}", failures.join("; ")) }
    }
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for table in [TableId::Type1, TableId::Type2, TableId::Type4, TableId::TensorM0] {
        for cell in regenerate(table).expect("regenerate") {
            // of the type-1 table only the r0 row and the t = 1 column are in scope
            if table == TableId::Type1 && !(cell.key.starts_with("r0") || cell.key.ends_with("t=1")) {
                continue;
            }
            checked += 1;
            if !cell.ok {
                failures.push(format!("{} {}: published {}, regenerated {}", table, cell.key, cell.golden, cell.regenerated));
            }
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(60) {
        failures.push(format!("took {took:?}"));
    }
    outcome(failures, format!("{checked} cells in {took:.2?}"))
}

fn partition_equality() -> Outcome {
    let mut failures = Vec::new();
    let grid = partition_grid();
    for inst in &grid {
        let start = Instant::now();
        let rec = run_oracle_check(inst, SPACE_CAP).expect("oracle check");
        let took = start.elapsed();
        if !rec.equal {
            failures.push(format!("{inst}: {} labels vs {} orbits, first {:?}", rec.label_classes, rec.oracle_orbits, rec.first_disagreement));
        }
        if took > Duration::from_secs(30) {
            failures.push(format!("{inst} took {took:?}"));
        }
    }
    outcome(failures, format!("{} instances", grid.len()))
}

fn verify_all(grid: &[Instance]) -> Vec<Record> {
    grid.iter().flat_map(|inst| run_verify(inst, SPACE_CAP).expect("verify")).collect()
}

fn diameter_verdicts(records: &[Record]) -> Outcome {
    let failures = records
        .iter()
        .filter(|r| {
            let two = r.diam == Some(2);
            match r.claim.as_str() {
                "2" => !two,
                "not 2" => two,
                "open" => false,
                exact => r.diam != exact.trim_start_matches('=').parse().ok(),
            }
        })
        .map(|r| format!("{} {} (size {}): claim {}, diameter {:?}", r.instance, r.label, r.orbit_size, r.claim, r.diam))
        .collect();
    let open = records.iter().filter(|r| r.claim == "open").count();
    outcome(failures, format!("{} orbits, {open} without a claim", records.len()))
}

fn subfield_quantitative() -> Outcome {
    let mut failures = Vec::new();
    for (q0, r, n, c, want) in [(2, 3, 3, 1, 3), (2, 2, 2, 1, 2), (2, 2, 2, 2, 2), (2, 3, 3, 3, 2), (3, 2, 2, 2, 2)] {
        let start = Instant::now();
        let got = subfield_bfs(q0, r, n, c).expect("bfs");
        if got != Some(want) {
            failures.push(format!("GF({}^{r})^{n} c={c}: diameter {got:?}, expected {want}", q0));
        }
        if q0 == 2 && r == 3 && start.elapsed() > Duration::from_secs(1) {
            failures.push(format!("GF(8)^3 took {:?}", start.elapsed()));
        }
    }
    let wanted = ["r=2 n=2+", "r=3 n=2 ", "r=3 n=3+"];
    let mut rows = 0;
    for cell in regenerate(TableId::Subfield).expect("subfield table") {
        let key = format!("{} ", cell.key);
        if !wanted.iter().any(|w| key.starts_with(w)) {
            continue;
        }
        rows += 1;
        if !cell.ok || cell.bfs.is_none() {
            failures.push(format!("{}: published {}, regenerated {}, bfs {:?}", cell.key, cell.golden, cell.regenerated, cell.bfs));
        }
    }
    outcome(failures, format!("5 direct searches, {rows} table cells"))
}

fn counting_formulas() -> Outcome {
    let mut failures = Vec::new();
    let c5: Vec<Instance> = partition_grid().into_iter().filter(|i| matches!(i, Instance::Subfield { .. })).collect();
    for inst in &c5 {
        let rec = run_oracle_check(inst, SPACE_CAP).expect("oracle check");
        if rec.sizes_ok != Some(true) {
            failures.push(format!("{inst}: orbit sizes differ ({})", rec.note));
        }
    }
    let mut pairs = 0;
    for q0 in [2u64, 3] {
        for r in [2u32, 3, 5] {
            let (f, sub) = subfield_pair(q0, r).expect("field");
            let cls = SubfieldClassifier::new(f, sub, 1).expect("classifier");
            for a in 1..=r {
                let (_, classes) = lambda_classes_by_enumeration(&cls, a as usize).expect("enumeration");
                let formula = eta(a, r, q0).expect("eta");
                pairs += 1;
                if formula != classes as u128 {
                    failures.push(format!("q0={q0} r={r} a={a}: eta {formula}, enumerated {classes}"));
                }
            }
        }
    }
    outcome(failures, format!("{} orbit-size instances, {pairs} eta values", c5.len()))
}

fn isometry_orbits() -> Outcome {
    use FormKind::*;
    let mut cases: Vec<(FormKind, usize, u64)> = Vec::new();
    for q in [2u64, 3, 4, 5] {
        cases.extend([(Symplectic, 2, q), (QuadraticPlus, 2, q), (QuadraticMinus, 2, q)]);
    }
    cases.push((Unitary, 2, 4));
    cases.extend([(QuadraticOddSquare, 3, 3), (QuadraticOddNonsquare, 3, 3), (Unitary, 3, 4)]);
    let mut failures = Vec::new();
    for &(kind, n, q) in &cases {
        let f = Arc::new(Field::from_order(q).expect("field"));
        let form = ClassicalForm::standard(kind, n, f).expect("form");
        let spec = isometry_group_spec(&form).expect("isometry group");
        let space = &spec.space;
        let labels: Vec<Option<OrbitLabel>> = (0..space.size())
            .map(|i| (i != 0).then(|| OrbitLabel::Orbit(form.phi_bar(&space.vector(i)).expect("phi").0)))
            .collect();
        let check = compare_partition(&labels, &all_orbits(&spec));
        if !check.equal {
            failures.push(format!("{kind:?} n={n} q={q}: {} level sets, {} orbits", check.label_classes, check.orbits));
        }
    }
    outcome(failures, format!("{} forms", cases.len()))
}

fn extraspecial() -> Outcome {
    let start = Instant::now();
    let grid = extraspecial_grid();
    let recs = verify_all(&grid);
    let took = start.elapsed();
    let mut failures: Vec<String> = recs
        .iter()
        .filter(|r| r.diam != Some(2))
        .map(|r| format!("{} {} (size {}): diameter {:?}", r.instance, r.label, r.orbit_size, r.diam))
        .collect();
    if took > Duration::from_secs(5) {
        failures.push(format!("took {took:?}"));
    }
    outcome(failures, format!("{} orbits in {took:.2?}", recs.len()))
}

fn cross_path(records: &[Record]) -> Outcome {
    let failures = records
        .iter()
        .filter(|r| !r.sumset_agrees)
        .map(|r| format!("{} {}", r.instance, r.label))
        .collect();
    outcome(failures, format!("{} orbits", records.len()))
}

#[test]
fn acceptance() {
    let partition = verify_all(&partition_grid());
    let everything = verify_all(&default_grid());
    let results: BTreeMap<u32, (&str, Outcome)> = [
        (1, ("bound tables reproduced", table_reproduction())),
        (2, ("classifier matches orbit oracle", partition_equality())),
        (3, ("diameter verdicts match the classification", diameter_verdicts(&partition))),
        (4, ("subfield-case diameters", subfield_quantitative())),
        (5, ("orbit-size and eta formulas", counting_formulas())),
        (6, ("isometry orbits are level sets", isometry_orbits())),
        (7, ("extraspecial t=1 orbits have diameter 2", extraspecial())),
        (8, ("sumset and BFS agree", cross_path(&everything))),
    ]
    .into_iter()
    .collect();
    let mut failed = Vec::new();
    println!();
    for (id, (name, out)) in &results {
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {id} ({name}): {}", out.detail);
        if !out.pass {
            failed.push(*id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
