use std::path::PathBuf;
use std::process::Command;

use hdeform::cli::run;
use hdeform::fixture::Fixture;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn hd(args: &[&str]) -> (i32, String) {
    let o = run(std::iter::once("hdeform").chain(args.iter().copied()));
    (o.code, o.stdout)
}

#[test]
fn check_reports() {
    assert_eq!(hd(&["check", &fixture("dual_numbers.json")]), (0, "A∞: ok; inner product: ok\n".into()));
    let (code, out) = hd(&["check", &fixture("nonassociative.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("fails at arity 3"), "{out}");
    let (code, out) = hd(&["check", &fixture("no_pairing.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("inner product: absent, skipped"));
}

#[test]
fn term_listings() {
    for (k, l, n) in [("0", "0", 2), ("1", "1", 10), ("2", "0", 9)] {
        let (code, out) = hd(&["terms", k, l]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), n, "{out}");
    }
    assert!(!hd(&["terms", "2", "0"]).1.contains("⟨a,b,f_2(c,d)⟩"));
}

#[test]
fn mc_on_fix_def() {
    assert_eq!(hd(&["mc", &fixture("fix_def.json")]), (0, "residual: 0 (order 2)\n".into()));
    assert_eq!(hd(&["mc", &fixture("fix_def.json"), "--ring", "k[t]/t^3"]).1, "residual: 0 (order 3)\n");
    let (code, out) = hd(&["mc", &fixture("dual_numbers.json")]);
    assert_eq!(code, 2);
    assert!(out.contains("`perturbation`"), "{out}");
}

#[test]
fn gauge_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.json");
    let (code, text) = hd(&["gauge", &fixture("gauge.json"), "--output", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("(i) λ∘D' = D_R∘λ: holds"));
    let written = std::fs::read_to_string(&out).unwrap();
    let fx = Fixture::parse(&written).unwrap();
    assert_eq!(fx.to_json() + "\n", written);
    assert_eq!(hd(&["mc", out.to_str().unwrap()]).0, 0);
}

#[test]
fn zero_generator_leaves_fixture_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let src = Fixture::parse(&std::fs::read_to_string(fixture("gauge.json")).unwrap()).unwrap();
    let mut zero = src.clone();
    zero.generator = Some(hdeform::deform::HElement::zero(src.generator.as_ref().unwrap().frame(), 0));
    let input = dir.path().join("z.json");
    std::fs::write(&input, zero.to_json()).unwrap();
    let output = dir.path().join("z2.json");
    assert_eq!(hd(&["gauge", input.to_str().unwrap(), "--output", output.to_str().unwrap()]).0, 0);
    assert_eq!(Fixture::parse(&std::fs::read_to_string(output).unwrap()).unwrap(), zero);
}

#[test]
fn tangent_and_cyclic() {
    let (code, out) = hd(&["tangent", &fixture("unit.json"), "--weight", "2", "--degree", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "H^1 (weight ≤ 2): dim 1 (2 cochains)\n");
    let (code, out) = hd(&["cyclic", &fixture("matrices.json"), "--degree", "0"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("structure cyclic: yes\n"));
    assert!(out.contains("inclusion chain map: ok"));
}

#[test]
fn selftest_agrees() {
    let (code, out) = hd(&["selftest"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("delta oracle: agree ("), "{out}");
    assert!(out.trim_end().ends_with("; ad oracle: agree"));
}

#[test]
fn structured_output_is_a_fixture_with_report() {
    let (code, out) = hd(&["check", &fixture("unit.json"), "--format", "structured"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["report"]["ainf"], true);
    assert_eq!(Fixture::parse(&out).unwrap(), Fixture::parse(&std::fs::read_to_string(fixture("unit.json")).unwrap()).unwrap());
}

#[test]
fn bracket_and_differential_of_elements() {
    let dir = tempfile::tempdir().unwrap();
    let mut fx = Fixture::parse(&std::fs::read_to_string(fixture("dual_numbers.json")).unwrap()).unwrap();
    fx.elements.push(("p".into(), fx.polarization().unwrap().as_element()));
    let path = dir.path().join("e.json");
    std::fs::write(&path, fx.to_json()).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(hd(&["bracket", p, "p", "p"]), (0, "h-degree 2\n".into()));
    assert_eq!(hd(&["differential", p, "p"]), (0, "h-degree 2\n".into()));
    assert_eq!(hd(&["bracket", p, "p", "q"]).0, 2);
}

#[test]
fn errors_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"field\": \"Q\",\n  \"space\": [\n").unwrap();
    let (code, out) = hd(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("line 4"), "{out}");
    assert_eq!(hd(&["frobnicate"]).0, 2);
    let a = hd(&["tangent", &fixture("dual_numbers.json"), "--degree", "0..1"]);
    assert_eq!(a, hd(&["tangent", &fixture("dual_numbers.json"), "--degree", "0..1"]));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_hdeform");
    let st = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    assert_eq!(st(&["check", &fixture("matrices.json")]).status.code(), Some(0));
    assert_eq!(st(&["check", &fixture("nonassociative.json")]).status.code(), Some(1));
    assert_eq!(st(&["check", "/nonexistent.json"]).status.code(), Some(2));
}
