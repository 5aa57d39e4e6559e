mod common;

use common::*;

/// Every file a compile run writes validates against its shipped schema.
#[test]
fn compile_outputs_match_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = vqc(&[
        "compile", "--target", "ch", "--max-gates", "4", "--schedule", "1.0:20,0.3:10",
        "--q-init-samples", "4", "--lambda", "0.1", "--seed", "1", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_valid("circuit.schema.json", &read_json(&out.join("circuit.json")));
    assert_valid("manifest.schema.json", &read_json(&out.join("manifest.json")));
    assert_valid("qtable.schema.json", &read_json(&out.join("qtable.json")));
    let replay = std::fs::read_to_string(out.join("replay.jsonl")).unwrap();
    assert_eq!(replay.lines().count(), 30);
    for line in replay.lines() {
        assert_valid("replay_entry.schema.json", &serde_json::from_str(line).unwrap());
    }
}

#[test]
fn block_circuit_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = vqc(&[
        "compile", "--target", "layered4:1", "--max-gates", "2", "--schedule", "1.0:5",
        "--q-init-samples", "2", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_valid("circuit.schema.json", &read_json(&out.join("circuit.json")));
    assert_valid("manifest.schema.json", &read_json(&out.join("manifest.json")));
    assert_valid("qtable.schema.json", &read_json(&out.join("qtable.json")));
}

#[test]
fn schemas_reject_malformed_documents() {
    let bad_circuit = serde_json::json!({"n": 2, "gates": [{"gate": "SWAP", "qubits": [0, 1]}]});
    let schema = read_json(&schema_dir().join("circuit.schema.json"));
    assert!(!jsonschema::validator_for(&schema).unwrap().is_valid(&bad_circuit));
    let bad_q = serde_json::json!({"START|RZ[0]": [0.1]});
    let schema = read_json(&schema_dir().join("qtable.schema.json"));
    assert!(!jsonschema::validator_for(&schema).unwrap().is_valid(&bad_q));
}

#[test]
fn unitary_file_matches_schema() {
    let u = vqc_core::target_unitary::<f64>(&vqc_core::TargetSpec::Cs).unwrap();
    let v: serde_json::Value = serde_json::from_str(&u.to_json().unwrap()).unwrap();
    assert_valid("unitary.schema.json", &v);
}
