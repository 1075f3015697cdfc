use std::path::PathBuf;
use std::process::Command;

use nielsen_core::Citation;
use serde_json::Value;

fn nielsen(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nielsen")).args(args).env_remove("NIELSEN_DATA_DIR").output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let doc: Value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {stdout}"));
    (out.status.code().unwrap(), doc, stdout)
}

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(rel).to_string_lossy().into_owned()
}

fn assert_tags_known(doc: &Value) {
    for tag in doc["applied"].as_array().unwrap() {
        assert!(Citation::from_tag(tag.as_str().unwrap()).is_some(), "dangling tag {tag}");
    }
}

#[test]
fn circle_delta_example() {
    let (code, doc, _) = nielsen(&["circle", "--delta", "[2,4]"]);
    assert_eq!(code, 0);
    assert_eq!(doc["N"], 2);
    assert_eq!(doc["MCC"], 2);
    assert_eq!(doc["conditions"]["iii"], false);
    assert_tags_known(&doc);
}

#[test]
fn circle_homotopic_maps_are_loose() {
    let (code, doc, _) = nielsen(&["circle", "--f1", "[1,-2]", "--f2", "[1,-2]"]);
    assert_eq!(code, 0);
    assert_eq!(doc["N"], 0);
    assert_eq!(doc["fiber_type"], "M x Z");
    assert!(doc["conditions"].as_object().unwrap().values().all(|v| v == true));
}

#[test]
fn circle_with_torsion_in_h1() {
    let (code, doc, _) = nielsen(&["circle", "--h1", "[2,0]", "--delta", "[0,3]"]);
    assert_eq!(code, 0);
    assert_eq!(doc["N"], 3);
    let (code, doc, _) = nielsen(&["circle", "--h1", "[2,0]", "--delta", "[1,3]"]);
    assert_eq!(code, 1);
    assert_eq!(doc["field"], "delta");
}

#[test]
fn lie_group_dichotomy_is_undecided() {
    let (code, doc, _) = nielsen(&["circle", "--lie-pi1", "[2]", "--h1", "[0]", "--f1", "[[0]]", "--f2", "[[0]]"]);
    assert_eq!(code, 2);
    assert_eq!(doc["N_candidates"], serde_json::json!([0, 2]));
    assert!(!doc["caveats"].as_array().unwrap().is_empty());
}

#[test]
fn sphere_listed_pair_is_unknown() {
    let (code, doc, _) = nielsen(&["sphere", "--m", "9", "--n", "5", "--d1", "zero", "--d2", "zero"]);
    assert_eq!(code, 2);
    assert_eq!(doc["MCC"], "unknown");
    let caveats = doc["caveats"].as_array().unwrap();
    assert!(caveats.iter().any(|c| c.as_str().unwrap().contains("Γ not injective")));
    assert_tags_known(&doc);
}

#[test]
fn sphere_injective_range_decides() {
    // On S^2 the antipodal map has degree -1, so (1, -1) is loose and (1, 1) is not.
    let (code, doc, _) = nielsen(&["sphere", "--m", "2", "--n", "2", "--d1", "[1]", "--d2", "[1]"]);
    assert_eq!(code, 0);
    assert_eq!(doc["N"], 1);
    assert_eq!(doc["MCC"], 1);
    let (code, doc, _) = nielsen(&["sphere", "--m", "2", "--n", "2", "--d1", "[1]", "--d2", "[-1]"]);
    assert_eq!(code, 0);
    assert_eq!(doc["N"], 0);
    assert_eq!(doc["MCC"], 0);
    // On S^3 it has degree 1: equal degrees are loose.
    let (code, doc, _) = nielsen(&["sphere", "--m", "3", "--n", "3", "--d1", "[2]", "--d2", "[2]"]);
    assert_eq!(code, 0);
    assert_eq!(doc["MCC"], 0);
}

#[test]
fn sphere_torsion_violation_names_the_flag() {
    let (code, doc, _) = nielsen(&["sphere", "--m", "12", "--n", "5", "--d1", "[[0],[1]]", "--d2", "zero"]);
    assert_eq!(code, 1);
    assert_eq!(doc["field"], "d1");
    let (code, doc, _) = nielsen(&["sphere", "--m", "12", "--n", "5", "--d1", "[[0],[12]]", "--d2", "zero"]);
    assert_eq!(code, 0, "{doc}");
}

#[test]
fn malformed_json_points_at_field() {
    let (code, doc, _) = nielsen(&["circle", "--delta", "[2,"]);
    assert_eq!(code, 1);
    assert_eq!(doc["field"], "delta");
    assert_eq!(doc["exit_code"], 1);
    let (code, doc, _) = nielsen(&["oracle-torus", "--a", "[1]", "--b", "[1,2]"]);
    assert_eq!(code, 1);
    assert_eq!(doc["field"], "b");
}

#[test]
fn unknown_subcommand_is_invalid_input_as_json() {
    let (code, doc, _) = nielsen(&["frobnicate"]);
    assert_eq!(code, 1);
    assert!(doc["error"].is_string());
}

#[test]
fn reidemeister_abelian_and_table_modes() {
    let (code, doc, _) = nielsen(&["reidemeister", "--pi1m", "[6]", "--pi1n", "[6]", "--f1", "[[1]]", "--f2", "[[4]]"]);
    assert_eq!(code, 0);
    assert_eq!(doc["cardinality"], 3);
    assert_eq!(doc["mcc_upper_bound"], 3);
    assert!(doc["caveats"][0].as_str().unwrap().contains("n != 2"));

    // S3 with f1 = f2 = id on the transposition generators (0 1) and (1 2).
    let (table, perms) = nielsen_core::reidemeister::FiniteGroupTable::symmetric(3);
    let t01 = perms.iter().position(|p| p == &vec![1, 0, 2]).unwrap();
    let t12 = perms.iter().position(|p| p == &vec![0, 2, 1]).unwrap();
    let table = serde_json::to_string(&table).unwrap();
    let pairing = format!("{{\"pairs\":[[{t01},{t01}],[{t12},{t12}]]}}");
    let (code, doc, _) = nielsen(&["reidemeister", "--pi1n", &table, "--pairing", &pairing, "--target-dim", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["cardinality"], 3);
    assert_eq!(doc["summary"], "N <= MCC <= 3");
}

#[test]
fn index_modes() {
    // f1 = f2 = 0: the stabilizer is everything and w1 is nontrivial on it.
    let args = ["index", "--pi1m", "[2]", "--pi1n", "[2]", "--w1m", "[1]", "--w1n", "[0]", "--f1", "[[0]]", "--f2", "[[0]]"];
    let (code, doc, _) = nielsen(&args);
    assert_eq!(code, 0);
    assert_eq!(doc["coefficients"], "Z2");
    assert_eq!(doc["classes"].as_array().unwrap().len(), 2);

    // f1 = 1, f2 = 0: trivial stabilizer, a single class.
    let args = ["index", "--pi1m", "[2]", "--pi1n", "[2]", "--w1m", "[1]", "--w1n", "[1]", "--f1", "[[1]]", "--f2", "[[0]]", "--theta", "1"];
    let (code, doc, _) = nielsen(&args);
    assert_eq!(code, 0);
    assert_eq!(doc["coefficients"], "Z");
    assert_eq!(doc["class"], serde_json::json!([0, 1]));
}

#[test]
fn immersion_on_shipped_curves() {
    let (code, doc, _) = nielsen(&["immersion", "--curve", &data("curves/fig8.json")]);
    assert_eq!(code, 0);
    assert_eq!(doc["h1"], 1);
    assert_eq!(doc["h2"].as_i64().unwrap().abs(), 1);
    assert_eq!(doc["rotation"], 0);
    let (_, doc, _) = nielsen(&["immersion", "--curve", &data("curves/two_fig8.json")]);
    assert_eq!(doc["rotations"].as_array().unwrap().len(), 2);
    let (code, doc, _) = nielsen(&["immersion", "--curve", r#"{"vertices":[[0,0],[1,0],[2,0]],"heights":[0,0,0]}"#]);
    assert_eq!(code, 1);
    assert_eq!(doc["field"], "curve");
}

#[test]
fn oracle_torus_example() {
    let (code, doc, _) = nielsen(&["oracle-torus", "--a", "[3,0]", "--b", "[1,0]", "--res", "512"]);
    assert_eq!(code, 0);
    assert_eq!(doc["components"], 2);
    assert_eq!(doc["stabilized"], true);
    assert_eq!(doc["formula"], 2);
}

#[test]
fn crosscheck_torus_example() {
    let (code, doc, _) = nielsen(&["crosscheck", "torus", "--trials", "20", "--seed", "7"]);
    assert_eq!(code, 0);
    let rows = doc["results"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r["formula"] == r["oracle"]));
}

#[test]
fn crosschecks_are_reproducible() {
    for kind in ["reidemeister", "whitney"] {
        let (c1, _, s1) = nielsen(&["crosscheck", kind, "--trials", "15", "--seed", "11"]);
        let (c2, _, s2) = nielsen(&["crosscheck", kind, "--trials", "15", "--seed", "11"]);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(s1, s2);
        let (_, _, s3) = nielsen(&["crosscheck", kind, "--trials", "15", "--seed", "12"]);
        assert_ne!(s1, s3);
    }
}

#[test]
fn tables_list_data_and_known_tags() {
    let (code, doc, _) = nielsen(&["tables", "--max-n", "5", "--max-m", "12"]);
    assert_eq!(code, 0);
    assert_eq!(doc["data_source"], "embedded");
    assert_eq!(doc["stems"][3]["group"], "Z/24");
    assert_eq!(doc["stems"][3]["certified"], true);
    let grid = doc["injectivity"].as_array().unwrap();
    let nine_five = grid.iter().find(|r| r["m"] == 9 && r["n"] == 5).unwrap();
    assert_eq!(nine_five["verdict"], "not_injective");
    for c in doc["citations"].as_array().unwrap() {
        assert!(Citation::from_tag(c["tag"].as_str().unwrap()).is_some());
    }
}

#[test]
fn data_dir_override_is_verified() {
    let dir = std::env::temp_dir().join(format!("nielsen-data-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let stems = std::fs::read_to_string(data("stems.json")).unwrap();
    std::fs::write(dir.join("stems.json"), stems.replace("\"3\": [24]", "\"3\": [12]")).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_nielsen"))
        .args(["sphere", "--m", "5", "--n", "3", "--d1", "zero", "--d2", "zero"])
        .env("NIELSEN_DATA_DIR", &dir)
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(doc["field"], "NIELSEN_DATA_DIR");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_format_and_help() {
    let out = Command::new(env!("CARGO_BIN_EXE_nielsen"))
        .args(["--format", "text", "circle", "--delta", "[3]"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().lines().any(|l| l == "N: 3"));
    let out = Command::new(env!("CARGO_BIN_EXE_nielsen")).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
