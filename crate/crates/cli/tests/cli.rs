use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_comideal");

fn data(file: &str) -> String {
    format!("{}/../core/data/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

/// Table and JSON output for the same flags, with the JSON envelope checked.
fn both(args: &[&str]) -> (String, Value, i32) {
    let (table, _, code) = run(args);
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let (json, _, json_code) = run(&json_args);
    assert_eq!(code, json_code);
    let doc: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], args[0]);
    (table, doc["report"].clone(), code)
}

#[test]
fn basis_rows() {
    let (t, _, code) = run(&["basis", "--variety", "associative", "--gens", "3", "--degree", "3", "--multilinear"]);
    assert_eq!(code, 0);
    assert!(t.lines().any(|l| l == "(1,1,1): 6"), "{t}");
    let (t, _, _) = run(&["basis", "--variety", "assosymmetric", "--gens", "3", "--degree", "3", "--multilinear"]);
    assert!(t.lines().any(|l| l == "(1,1,1): 7"), "{t}");
}

#[test]
fn magma_basis_counts_bracketings() {
    let (t, r, code) = both(&["basis", "--variety", "magma", "--gens", "2", "--degree", "3"]);
    assert_eq!(code, 0);
    let catalan = [1, 1, 2];
    let mut seen = 0;
    for row in r["rows"].as_array().unwrap() {
        let md = row["multidegree"].as_str().unwrap();
        let counts: Vec<u64> = md.trim_matches(|c| c == '(' || c == ')').split(',').map(|x| x.parse().unwrap()).collect();
        let n: u64 = counts.iter().sum();
        let words = (1..=n).product::<u64>() / counts.iter().map(|&c| (1..=c).product::<u64>()).product::<u64>();
        assert_eq!(row["dim"].as_u64().unwrap(), catalan[n as usize - 1] * words);
        assert!(t.lines().any(|l| l == format!("{md}: {}", row["dim"])));
        seen += 1;
    }
    assert_eq!(seen, 9);
}

#[test]
fn basis_with_inline_identities() {
    let (t, _, code) = run(&[
        "basis", "--identity", "leftsym", "--identity", "<x,y,z> - <x,z,y>", "--gens", "3", "--degree", "3", "--multilinear",
    ]);
    assert_eq!(code, 0);
    assert!(t.lines().any(|l| l == "(1,1,1): 7"), "{t}");
}

#[test]
fn verify_examples() {
    let (t, r, code) = both(&["verify", "--variety", "assosymmetric", "--char", "0", "--builtin", "eq314"]);
    assert_eq!(code, 0);
    assert!(t.contains("HOLDS"));
    assert_eq!(r["verdict"]["status"], "holds");

    let (t, _, code) = run(&["verify", "--variety", "assosymmetric", "--char", "3", "--builtin", "eq313"]);
    assert_eq!(code, 0);
    assert!(t.contains("HOLDS"));

    let (t, r, code) = both(&["verify", "--variety", "associative", "--char", "0", "--expr", "[x,y]"]);
    assert_eq!(code, 1);
    assert!(t.contains("FAILS"));
    let residual = r["verdict"]["residual"].as_str().unwrap();
    assert!(t.contains(residual));
    assert_eq!(r["verdict"]["multidegree"], "(1,1)");
}

#[test]
fn witness_reverifies() {
    let (_, r, _) = both(&["verify", "--variety", "associative", "--expr", "[x,y]"]);
    let residual = r["verdict"]["residual"].as_str().unwrap().replace("x1", "a").replace("x2", "b");
    let (_, _, code) = run(&["verify", "--variety", "associative", "--expr", &residual]);
    assert_eq!(code, 1);
    let (_, _, code) = run(&["verify", "--variety", "magma", "--expr", "(a*b) - (a*b)"]);
    assert_eq!(code, 0);
}

#[test]
fn chain_tables_match_json() {
    for series in ["lower-central", "lie-powers"] {
        let (t, r, code) = both(&["chain", "--variety", "bicommutative", "--gens", "2", "--degree", "4", "--series", series]);
        assert_eq!(code, 0);
        let rows = r["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 4);
        for row in rows {
            let dims: Vec<String> = row["dims"].as_array().unwrap().iter().map(|d| d.to_string()).collect();
            let line = t.lines().find(|l| l.split_whitespace().next() == row["term"].as_str()).unwrap();
            let cells: Vec<&str> = line.split_whitespace().skip(1).collect();
            assert_eq!(cells[..4], dims.iter().map(String::as_str).collect::<Vec<_>>()[..]);
            assert_eq!(cells[4], row["total"].to_string());
        }
    }
    let (_, r, _) = both(&["chain", "--variety", "bicommutative", "--gens", "2", "--degree", "4"]);
    let dims: Vec<Vec<u64>> = r["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect())
        .collect();
    assert_eq!(dims, vec![vec![2, 4, 12, 25], vec![0, 1, 8, 20], vec![0, 0, 2, 12], vec![0, 0, 0, 3]]);
}

#[test]
fn chain_with_degree_one() {
    let (t, r, code) = both(&["chain", "--variety", "bicommutative", "--gens", "2", "--degree", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r["rows"].as_array().unwrap().len(), 1);
    assert_eq!(t.lines().filter(|l| l.starts_with("H_")).count(), 1);
}

#[test]
fn check_examples() {
    let cases: [&[&str]; 3] = [
        &["check", "--theorem", "th_pro", "--variety", "novikov", "--gens", "2", "--degree", "5", "--p", "2", "--q", "2"],
        &["check", "--theorem", "prod_com_id", "--variety", "bicommutative", "--gens", "2", "--degree", "5", "--i", "3"],
        &["check", "--theorem", "lem_46", "--variety", "assosymmetric", "--gens", "2", "--degree", "5", "--j", "3", "--char", "0"],
    ];
    for args in cases {
        let (t, r, code) = both(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(r["status"], "verified");
        assert_eq!(t.lines().last(), Some("VERIFIED"));
        for c in r["checks"].as_array().unwrap() {
            assert!(t.contains(c["claim"].as_str().unwrap()));
        }
    }
}

#[test]
fn check_reports_violation() {
    let (t, r, code) = both(&["check", "--theorem", "assoc_even_even", "--variety", "associative", "--gens", "4", "--degree", "4"]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "violated");
    let c = &r["checks"][0];
    assert_eq!(c["multidegree"], "(1,1,1,1)");
    assert!(t.contains(c["witness"].as_str().unwrap()));
}

#[test]
fn check_budget_too_large() {
    let (_, err, code) = run(&["check", "--theorem", "th_pro", "--variety", "novikov", "--degree", "3", "--p", "3"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn algebra_audits() {
    let (t, r, code) = both(&["algebra", "--file", &data("heisenberg.json")]);
    assert_eq!(code, 0);
    let rep = &r[0]["report"];
    assert_eq!(rep["class"], 2);
    assert_eq!(rep["nilpotency_index"], 2);
    assert!(t.contains("class 2") && t.contains("index 2"));
    assert_eq!(t.lines().last(), Some("PASS"));

    let (t, _, code) = run(&["algebra", "--file", &data("zero.json")]);
    assert_eq!(code, 0);
    assert_eq!(t.lines().last(), Some("PASS"));
}

#[test]
fn nonmember_witness_in_table() {
    let (t, r, code) = both(&["algebra", "--file", &data("nonmember.json")]);
    assert_eq!(code, 0);
    let bicom = r[0]["report"]["membership"]
        .as_array()
        .unwrap()
        .iter()
        .find(|l| l["variety"] == "bicommutative")
        .unwrap()
        .clone();
    assert_eq!(bicom["verdict"]["tuple"], serde_json::json!([1, 2, 2]));
    assert!(t.contains("(e1,e2,e2)"), "{t}");
}

#[test]
fn corpus_file_batch() {
    let (t, r, code) = both(&["algebra", "--file", &data("random_corpus.json"), "--file", &data("square.json")]);
    assert_eq!(code, 0);
    assert_eq!(r.as_array().unwrap().len(), 51);
    assert_eq!(t.lines().filter(|l| *l == "PASS").count(), 51);
}

#[test]
fn malformed_algebra_file() {
    let dir = std::env::temp_dir().join(format!("comideal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("syntax.json", "{\"field\": \"Q\", \"dim\": 2,"),
        ("index.json", "{\"field\": \"Q\", \"dim\": 2, \"products\": [[1, 2, 3, \"1\"]]}"),
        ("extra.json", "{\"field\": \"Q\", \"dim\": 2, \"products\": [], \"colour\": 1}"),
    ];
    for (name, text) in cases {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        let (_, err, code) = run(&["algebra", "--file", path.to_str().unwrap()]);
        assert_eq!(code, 2, "{name}");
        assert!(err.contains("schema"), "{name}: {err}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn search_examples() {
    let (t, r, code) = both(&["search", "--target", "bicom-right-nilpotency", "--gens", "3", "--degree", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["outcome"], "NOT-NILPOTENT-UP-TO-CAP");
    assert_eq!(t.lines().last(), Some("NOT-NILPOTENT-UP-TO-CAP"));

    let (t, r, code) = both(&["search", "--target", "assoc-even-even", "--gens", "3", "--degree", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "inconclusive");
    assert_eq!(t.lines().last(), r["outcome"].as_str());

    let (_, r, code) = both(&["search", "--target", "assoc-even-even", "--gens", "3", "--degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["outcome"], "NONE-FOUND-AT-CAP");
}

#[test]
fn usage_errors_exit_two() {
    let bad: [&[&str]; 6] = [
        &[],
        &["basis"],
        &["basis", "--variety", "jordan"],
        &["basis", "--variety", "novikov", "--char", "4"],
        &["verify", "--variety", "novikov"],
        &["chain", "--variety", "novikov", "--series", "upper"],
    ];
    for args in bad {
        let (_, _, code) = run(args);
        assert_eq!(code, 2, "{args:?}");
    }
}

#[test]
fn resource_guard() {
    let (_, err, code) = run(&["basis", "--variety", "magma", "--gens", "3", "--degree", "6", "--max-monomials", "100"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn outputs_are_deterministic() {
    let args = ["algebra", "--file", &data("random_corpus.json"), "--format", "json"];
    assert_eq!(run(&args).0, run(&args).0);
    let args = ["check", "--theorem", "cp_ass", "--variety", "assosymmetric", "--degree", "5", "--format", "json"];
    assert_eq!(run(&args).0, run(&args).0);
}

#[test]
fn corpus_matches_bundled_file() {
    let (out, _, code) = run(&["corpus"]);
    assert_eq!(code, 0);
    let generated: Value = serde_json::from_str(&out).unwrap();
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(data("random_corpus.json")).unwrap()).unwrap();
    assert_eq!(generated, stored);
}
