use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tempfile::TempDir;

use lowfact::cli::{run, EXIT_OK, EXIT_PARSE, EXIT_VERIFY};
use lowfact::divres::{divides_with_quotient, ExactPit};
use lowfact::poly::parse_poly;

struct Run {
    code: i32,
    out: String,
    err: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.out).unwrap_or_else(|e| panic!("{e}: {}", self.out))
    }
}

fn lowfact(args: &[&str]) -> Run {
    let mut all = vec!["lowfact"];
    all.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(all, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn factors(report: &Value) -> Vec<(String, u64)> {
    report["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["poly"].as_str().unwrap().to_string(), e["multiplicity"].as_u64().unwrap()))
        .collect()
}

#[test]
fn factor_expanded_product() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "(x1+1)^2*(x1+x2)");
    let r = lowfact(&["factor", s(&f), "--degree", "1", "--expand"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let report = r.json();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["mode"], "guaranteed");
    assert_eq!(report["complete_product"], true);
    assert_eq!(
        factors(&report),
        vec![("x1 + 1".to_string(), 2), ("x1 + x2".to_string(), 1)]
    );
}

#[test]
fn factor_constant() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "7");
    for d in ["1", "3"] {
        let r = lowfact(&["factor", s(&f), "--degree", d]);
        assert_eq!(r.code, EXIT_OK);
        let report = r.json();
        assert!(factors(&report).is_empty());
        assert_eq!(report["complete_product"], true);
    }
}

#[test]
fn malformed_input_reports_position() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "x1^2 + * x2");
    let r = lowfact(&["factor", s(&f), "--degree", "1"]);
    assert_eq!(r.code, EXIT_PARSE);
    assert!(r.err.contains("byte 7"), "{}", r.err);
    assert!(r.out.is_empty());
}

#[test]
fn bad_flags_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "x1 + 1");
    assert_eq!(lowfact(&["factor", s(&f), "--degree", "0"]).code, EXIT_PARSE);
    assert_eq!(lowfact(&["factor", s(&f)]).code, EXIT_PARSE);
    assert_eq!(
        lowfact(&["factor", s(&f), "-d", "1", "--randomized", "--mode", "guaranteed"]).code,
        EXIT_PARSE
    );
    assert_eq!(lowfact(&["factor", "/nonexistent/f.txt", "-d", "1"]).code, EXIT_PARSE);
}

#[test]
fn output_is_stable_across_runs_and_threads() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "(x1*x2 + x3 - 2)^2*(x1 + x2 + x3 + 1)*(x2^2 + x3 + 5)");
    let base = lowfact(&["factor", s(&f), "-d", "2", "--expand"]);
    assert_eq!(base.code, EXIT_OK, "{}", base.err);
    for threads in ["1", "3"] {
        let again = lowfact(&["factor", s(&f), "-d", "2", "--expand", "--threads", threads]);
        assert_eq!(again.out, base.out);
    }
    assert_eq!(factors(&base.json()).len(), 3);
}

#[test]
fn text_format() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "x1^2 - x2^2");
    let r = lowfact(&["factor", s(&f), "-d", "1", "--format", "text"]);
    assert_eq!(r.out, "(x1 - x2)^1\n(x1 + x2)^1\ncomplete_product: true\ncomplete: true\n");
}

#[test]
fn many_variables_default_to_budgeted() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "(x1 + x4)*(x2 + x3 + 1)");
    let r = lowfact(&["factor", s(&f), "-d", "1", "--expand"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.err.contains("budgeted"), "{}", r.err);
    assert_eq!(r.json()["mode"], "budgeted");
    assert_eq!(factors(&r.json()).len(), 2);
}

#[test]
fn formula_input() {
    let dir = TempDir::new().unwrap();
    let doc = r#"{"op": "prod", "children": [
        {"node": {"op": "sum", "children": [{"node": {"op": "var", "index": 1}}, {"node": {"op": "const", "value": "2"}}]}},
        {"scalar": "3", "node": {"op": "sum", "children": [{"node": {"op": "var", "index": 2}}, {"node": {"op": "var", "index": 1}}]}}
    ]}"#;
    let f = write(&dir, "f.json", doc);
    let r = lowfact(&["factor", s(&f), "-d", "1"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(
        factors(&r.json()),
        vec![("x1 + 2".to_string(), 1), ("x1 + x2".to_string(), 1)]
    );
}

#[test]
fn divides_examples() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "x1^2 - x2^2");
    let g = write(&dir, "g.txt", "x1 - x2");
    let r = lowfact(&["divides", s(&f), s(&g)]);
    assert_eq!(r.json(), serde_json::json!({"divides": true, "quotient": "x1 + x2"}));

    let f = write(&dir, "f2.txt", "x1^2 + 1");
    let g = write(&dir, "g2.txt", "x1 + 1");
    assert_eq!(lowfact(&["divides", s(&f), s(&g)]).json()["divides"], false);

    let zero = write(&dir, "zero.txt", "0");
    assert_eq!(lowfact(&["divides", s(&f), s(&zero)]).code, EXIT_PARSE);
}

#[test]
fn scripted_divides_pairs_match_library() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let dir = TempDir::new().unwrap();
    let term = |rng: &mut ChaCha8Rng| {
        format!(
            "{}*x1^{}*x2^{}",
            rng.gen_range(1..=5),
            rng.gen_range(0..=2),
            rng.gen_range(0..=2)
        )
    };
    for k in 0..100 {
        let g = format!("{} + {}", term(&mut rng), rng.gen_range(1..=4));
        let q = format!("{} - {}", term(&mut rng), term(&mut rng));
        let f = if k % 2 == 0 {
            format!("({g})*({q})")
        } else {
            format!("{q} + {}", term(&mut rng))
        };
        let fp = write(&dir, "f.txt", &f);
        let gp = write(&dir, "g.txt", &g);
        let r = lowfact(&["divides", s(&fp), s(&gp), "--expand", "--arity", "2"]);
        if f.contains('(') {
            assert_eq!(r.code, EXIT_OK, "{}", r.err);
        }
        let fe = lowfact::poly::parse_expression(&f, Some(2)).unwrap();
        let ge = lowfact::poly::parse_expression(&g, Some(2)).unwrap();
        let expected = divides_with_quotient(&fe, &ge, &ExactPit).unwrap();
        let report = r.json();
        assert_eq!(report["divides"], expected.is_some(), "{f} / {g}");
        if let Some(q) = expected {
            assert_eq!(parse_poly(report["quotient"].as_str().unwrap(), Some(2)).unwrap(), q);
        }
    }
}

#[test]
fn resultant_pit_and_pseudo_quotient() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "x2 + 3");
    let h = write(&dir, "h.txt", "x2 + 5");
    let r = lowfact(&["resultant", s(&g), s(&h), "--var", "2"]);
    assert_eq!(r.json()["resultant"], "2");
    assert_eq!(lowfact(&["resultant", s(&g), s(&h), "--var", "3"]).code, EXIT_PARSE);

    let z = write(&dir, "z.txt", "x1*x2 - x2*x1");
    assert_eq!(lowfact(&["pit", s(&z)]).json()["zero"], true);
    let nz = write(&dir, "nz.txt", "x1*x2 - 1");
    let p = lowfact(&["pit", s(&nz)]).json();
    assert_eq!(p["zero"], false);
    assert_ne!(p["value"], "0");

    let f = write(&dir, "f.txt", "x1^3 + x1^2 + 3*x1 + 3");
    let g = write(&dir, "g1.txt", "x1 + 1");
    let q = lowfact(&["pseudo-quotient", s(&f), s(&g)]).json();
    assert_eq!(q["quotient"], "x1^2 + 3");
    assert_eq!(q["exact"], true);
}

#[test]
fn verify_accepts_reports_and_rejects_tampering() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "(x1+x2+1)^2*(x1^2+x1*x2+x2^2+5)");
    let r = lowfact(&["factor", s(&f), "-d", "2", "--expand"]);
    assert_eq!(r.code, EXIT_OK);
    let good = write(&dir, "r.json", &r.out);
    assert_eq!(lowfact(&["verify", s(&good), s(&f), "--expand"]).code, EXIT_OK);

    let bumped = r.out.replacen("\"multiplicity\": 2", "\"multiplicity\": 3", 1);
    assert_ne!(bumped, r.out);
    let bad = write(&dir, "r2.json", &bumped);
    let v = lowfact(&["verify", s(&bad), s(&f), "--expand"]);
    assert_eq!(v.code, EXIT_VERIFY);
    assert_eq!(v.json()["offending"][0]["index"], 0);

    let changed = r.out.replacen("x1 + x2 + 1", "x1 + x2 + 2", 1);
    assert_ne!(changed, r.out);
    let bad = write(&dir, "r3.json", &changed);
    assert_eq!(lowfact(&["verify", s(&bad), s(&f), "--expand"]).code, EXIT_VERIFY);

    let garbage = write(&dir, "r4.json", "{\"schema_version\": 1}");
    assert_eq!(lowfact(&["verify", s(&garbage), s(&f), "--expand"]).code, EXIT_PARSE);
}
