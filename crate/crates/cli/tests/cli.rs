use std::path::Path;
use std::process::{Command, Output};

/// Runs the binary from a scratch working directory so default outputs
/// never land in the source tree.
fn lieabel(args: &[&str], cache: Option<&Path>) -> Output {
    let cwd = tempfile::tempdir().unwrap();
    lieabel_in(cwd.path(), args, cache)
}

fn lieabel_in(cwd: &Path, args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lieabel"));
    cmd.current_dir(cwd).args(args).env_remove("LIEABEL_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("LIEABEL_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_spec(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn build_reports_dimensions_and_rejects_unknown_types() {
    let o = lieabel(&["build", "E8"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim 248"), "{}", stdout(&o));
    let o = lieabel(&["build", "D6", "--json"], None);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 66);
    for bad in ["F4", "E9", "D4", "A3"] {
        let o = lieabel(&["build", bad], None);
        assert_eq!(o.status.code(), Some(2), "{bad}");
        assert!(stderr(&o).contains("error"));
    }
}

#[test]
fn build_defaults_to_the_working_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = lieabel_in(dir.path(), &["build", "D5"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("D5.table")).unwrap();
    assert_eq!(lieabel_core::chevalley::parse_structure_table(&text).unwrap().dim, 45);
}

#[test]
fn build_writes_a_table_into_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let o = lieabel(&["build", "E6"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("E6.table")).unwrap();
    assert!(text.contains("type E6"));
    let parsed = lieabel_core::chevalley::parse_structure_table(&text).unwrap();
    assert_eq!(parsed.dim, 78);
}

#[test]
fn verify_all_is_deterministic_and_passes() {
    let a = lieabel(&["verify", "all", "--json"], None);
    let b = lieabel(&["verify", "all", "--json"], None);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["failed"], 0);
}

#[test]
fn verify_rejects_unknown_selectors() {
    let o = lieabel(&["verify", "everything"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("serre"));
}

/// Flips the sign of one structure constant in a cached table. The table
/// still parses, so the damage must be caught by the checks.
#[test]
fn sign_mutated_table_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(lieabel(&["build", "E6"], Some(dir.path())).status.code(), Some(0));
    let path = dir.path().join("E6.table");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let target = lines
        .iter()
        .position(|l| l.starts_with("X_") && l.split_whitespace().count() == 4)
        .unwrap();
    let mut fields: Vec<String> = lines[target].split_whitespace().map(str::to_string).collect();
    let n: i64 = fields[3].parse().unwrap();
    fields[3] = (-n).to_string();
    lines[target] = fields.join(" ");
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();

    let o = lieabel(&["verify", "all", "--json"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(failed.iter().any(|id| id.starts_with("serre.e6")), "{failed:?}");
}

#[test]
fn spec_commands_reproduce_the_worked_examples() {
    let dir = tempfile::tempdir().unwrap();
    let adj6 = write_spec(dir.path(), "e6.json", r#"{"ambient":"E6","source":"D5","variant":"natural"}"#);
    let o = lieabel(&["decompose", &adj6, "--json"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dims: Vec<u64> = v["constituents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["dim"].as_u64().unwrap() * c["multiplicity"].as_u64().unwrap())
        .collect();
    assert_eq!(dims.iter().sum::<u64>(), 78);

    let e8 = write_spec(
        dir.path(),
        "e8.json",
        r#"{"ambient":"E8","module":"λ8","lift":{"weight":"λ1","element":"X'''"}}"#,
    );
    let o = lieabel(&["branch", &e8], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("(2V(λ1) + V(λ2) + V(0)) ⊕ (V(λ6) + V(λ7))"), "{}", stdout(&o));

    let e7 = write_spec(dir.path(), "e7.json", r#"{"ambient":"E7","variant":"natural"}"#);
    let o = lieabel(&["scan", &e7], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[αY' + βX''' + γH]"));
}

#[test]
fn bad_specs_name_the_offending_field() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"ambient":"E6","lift":{"weight":"λ4","element":"Q1"}}"#, "lift.element"),
        (r#"{"ambient":"E6","variant":"sideways"}"#, "variant"),
        (r#"{"ambient":"E8","lift":{"weight":"λ6","element":"Y1"}}"#, "lift"),
        (r#"{"ambient":"E6","module":"(1,2)"}"#, "module"),
        (r#"{"ambient":"E6""#, "invalid spec"),
    ];
    for (i, (body, needle)) in cases.iter().enumerate() {
        let p = write_spec(dir.path(), &format!("bad{i}.json"), body);
        let o = lieabel(&["decompose", &p], None);
        assert_eq!(o.status.code(), Some(2), "{body}");
        assert!(stderr(&o).contains(needle), "{body}: {}", stderr(&o));
    }
    let plain = write_spec(dir.path(), "plain.json", r#"{"ambient":"E6"}"#);
    let o = lieabel(&["branch", &plain], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("lift"));
}

#[test]
fn classify_and_report() {
    let o = lieabel(&["classify", "E8"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("φ̃7^{λ1',1}"));
    assert_eq!(lieabel(&["classify", "D5"], None).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r");
    let o = lieabel(&["report", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for f in ["verify.json", "verify.txt", "table.e6.txt", "table.e7.txt", "table.e8.txt", "catalog.e8.natural.txt"] {
        assert!(out.join(f).exists(), "{f}");
    }
}
