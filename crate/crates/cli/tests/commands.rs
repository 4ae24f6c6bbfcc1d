use std::io::Write;
use std::path::PathBuf;

use serde_json::Value;
use smirnov_cli::{
    cmd_levels, cmd_refine, cmd_table, cmd_test, cmd_verify, CliError, Format, Payload, TableKind,
};
use smirnov_core::lattice::Tail;
use smirnov_core::{Error, ExactRational};

fn sample_file(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(body.as_bytes()).unwrap();
    path
}

fn json(doc: &smirnov_cli::OutputDocument) -> Value {
    serde_json::from_str(&doc.render(Format::Json)).unwrap()
}

#[test]
fn test_command_reports_statistic_and_levels() {
    let dir = tempfile::tempdir().unwrap();
    let x = sample_file(&dir, "x.txt", "# first sample\n1\n4\n5\n");
    let y = sample_file(&dir, "y.txt", "2\n\n3  # comment\n");
    let doc = cmd_test(&x, &y, Tail::Upper, 3).unwrap();
    let v = json(&doc);
    assert_eq!(v["m"], 3);
    assert_eq!(v["n"], 2);
    assert_eq!(v["path"], serde_json::json!([2, 2]));
    // merge order X Y Y X X: max of 2x - 3y over vertices is 2 at (1, 0)
    assert_eq!(v["statistic_int"], 2);
    assert_eq!(v["statistic"], "1/3");
    assert_eq!(v["profile_r"], 2);
    let p: ExactRational = v["tail_probability"].as_str().unwrap().parse().unwrap();
    assert!(p.is_canonical());
    assert!(doc.render(Format::Human).contains("<2,2>"));
}

#[test]
fn extreme_sample_gives_minimal_tail() {
    let dir = tempfile::tempdir().unwrap();
    let x = sample_file(&dir, "x.txt", "0.1\n0.2\n0.3\n");
    let y = sample_file(&dir, "y.txt", "1.5\n2.5\n3.5\n4.5\n");
    let v = json(&cmd_test(&x, &y, Tail::Upper, 3).unwrap());
    assert_eq!(v["statistic"], "1/1");
    assert_eq!(v["statistic_int"], 12);
    assert_eq!(v["tail_probability"], "1/35");
}

#[test]
fn lower_and_twosided_report_statistic_only() {
    let dir = tempfile::tempdir().unwrap();
    let x = sample_file(&dir, "x.txt", "1\n4\n5\n");
    let y = sample_file(&dir, "y.txt", "2\n3\n");
    let lower = json(&cmd_test(&x, &y, Tail::Lower, 3).unwrap());
    // max of 3y - 2x is 4 at (1, 2)
    assert_eq!(lower["statistic_int"], 4);
    assert!(lower.get("tail_probability").is_none());
    let two = json(&cmd_test(&x, &y, Tail::TwoSided, 3).unwrap());
    assert_eq!(two["tail"], "twosided");
}

#[test]
fn test_command_errors() {
    let dir = tempfile::tempdir().unwrap();
    let x = sample_file(&dir, "x.txt", "1.0\n2\n");
    let y = sample_file(&dir, "y.txt", "1\n3\n");
    assert!(matches!(
        cmd_test(&x, &y, Tail::Upper, 3),
        Err(CliError::Core(Error::CrossSampleTie(_)))
    ));
    let bad = sample_file(&dir, "bad.txt", "1\nfoo\n");
    assert!(matches!(
        cmd_test(&bad, &y, Tail::Upper, 3),
        Err(CliError::Core(Error::Parse(_)))
    ));
    let missing = dir.path().join("missing.txt");
    assert!(matches!(
        cmd_test(&missing, &y, Tail::Upper, 3),
        Err(CliError::Io { .. })
    ));
    let empty = sample_file(&dir, "empty.txt", "# nothing\n");
    assert!(matches!(
        cmd_test(&empty, &y, Tail::Upper, 3),
        Err(CliError::Core(Error::EmptySample { .. }))
    ));
}

#[test]
fn levels_command() {
    let v = json(&cmd_levels(10, 10, 3).unwrap());
    let decimals: Vec<_> = v["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["level_decimal"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(decimals.len(), 11);
    assert_eq!(decimals[0], "5.41e-6");
    assert_eq!(decimals[10], "0.318");
    assert_eq!(v["tails"].as_array().unwrap().len(), 11);

    let v = json(&cmd_levels(5, 3, 3).unwrap());
    assert_eq!(v["levels"].as_array().unwrap().len(), 12);

    let v = json(&cmd_levels(1, 1, 3).unwrap());
    let levels: Vec<_> = v["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["level"].clone())
        .collect();
    assert_eq!(levels, vec![Value::from("1/2"), Value::from("1/1")]);
}

#[test]
fn rendered_rationals_are_reduced_and_consistent() {
    let doc = cmd_levels(6, 4, 4).unwrap();
    let Payload::Levels(report) = &doc.payload else {
        panic!("levels payload")
    };
    for row in &report.levels {
        assert!(row.level.is_canonical());
        assert_eq!(row.level.to_sig_decimal(4).to_string(), row.level_decimal);
    }
    let csv = doc.render(Format::Csv);
    assert!(csv.starts_with("kind,r,profile,count,value,decimal\n"));
    assert!(csv.contains("\"<"));
}

#[test]
fn table_command_shapes() {
    let v = json(&cmd_table(TableKind::Natural, 3, 3).unwrap());
    assert_eq!(v["cells"], serde_json::json!([[4]]));
    let v = json(&cmd_table(TableKind::Saturated, 4, 6).unwrap());
    assert_eq!(v["rows"], serde_json::json!([3, 4]));
    assert_eq!(v["cols"], serde_json::json!([3, 4, 5, 6]));
    assert!(matches!(
        cmd_table(TableKind::Natural, 2, 10),
        Err(CliError::Usage(_))
    ));
    let csv = cmd_table(TableKind::Natural, 4, 4)
        .unwrap()
        .render(Format::Csv);
    assert_eq!(csv, "m\\n,3,4\n3,4,10\n4,10,5\n");
}

#[test]
fn refine_command() {
    let v = json(&cmd_refine(5, 3, false, 10).unwrap());
    assert_eq!(v["refinement_count"], "1");
    assert_eq!(v["saturated"], true);
    assert_eq!(v["chains"].as_array().unwrap().len(), 1);

    let v = json(&cmd_refine(4, 2, false, 10).unwrap());
    assert_eq!(v["refinement_count"], "9");
    assert_eq!(v["saturated_refinement_count"], "4");
    assert_eq!(v["saturated"], false);
    assert!(v["witness"]["path"].is_array());
    assert_eq!(v["chains"].as_array().unwrap().len(), 9);

    let v = json(&cmd_refine(3, 3, true, 12).unwrap());
    let chains = v["chains"].as_array().unwrap();
    assert_eq!(chains.len(), 12);
    assert!(chains.iter().all(|c| c.as_array().unwrap().len() == 7));

    let v = json(&cmd_refine(10, 10, false, 2).unwrap());
    assert_eq!(v["chains"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_command() {
    for (m, n) in [(4, 2), (5, 3), (1, 1), (6, 6)] {
        let doc = cmd_verify(m, n, 10_000_000).unwrap();
        assert_eq!(doc.exit_code(), 0, "{}", doc.render(Format::Human));
    }
    let human = cmd_verify(5, 3, 10_000_000).unwrap().render(Format::Human);
    assert!(human.contains("no insertable path found"));

    let doc = cmd_verify(40, 40, 10_000_000).unwrap();
    let v = json(&doc);
    let statuses: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap().to_string())
        .collect();
    assert!(statuses.contains(&"skipped".to_string()));
    assert!(statuses.contains(&"pass".to_string()));
    assert!(!statuses.contains(&"fail".to_string()));
    assert_eq!(doc.exit_code(), 0);
}
