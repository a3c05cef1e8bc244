use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn mcx(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mcx"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn mcx");
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or_default()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn fixture_file(dir: &tempdir::Dir, name: &str) -> String {
    let out = mcx(&["fixture", name], None);
    assert!(out.status.success());
    dir.write(name, &out.stdout)
}

mod tempdir {
    use std::path::PathBuf;

    pub struct Dir(PathBuf);

    impl Dir {
        pub fn new(tag: &str) -> Self {
            let p = std::env::temp_dir().join(format!("mcx-cli-{tag}-{}", std::process::id()));
            std::fs::create_dir_all(&p).unwrap();
            Dir(p)
        }

        pub fn write(&self, name: &str, bytes: &[u8]) -> String {
            let p = self.0.join(format!("{name}.json"));
            std::fs::write(&p, bytes).unwrap();
            p.to_string_lossy().into_owned()
        }
    }

    impl Drop for Dir {
        fn drop(&mut self) {
            let _ = std::fs::remove_dir_all(&self.0);
        }
    }
}

#[test]
fn sphere_piped_into_rational_homology() {
    let sphere = mcx(&["sphere", "--dim", "2"], None);
    assert!(sphere.status.success());
    let h = mcx(&["homology", "--ring", "q"], Some(&sphere.stdout));
    assert!(h.status.success(), "{}", String::from_utf8_lossy(&h.stderr));
    let v = json(&h);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "homology");
    assert_eq!(v["betti"], serde_json::json!([1, 0, 1]));
}

#[test]
fn non_associative_table_fails_validation() {
    let dir = tempdir::Dir::new("validate");
    let circle = fixture_file(&dir, "circle");
    let broken = fixture_file(&dir, "broken-composition");
    let out = mcx(&["validate", &circle, "--action", &broken], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["ok"], false);
}

#[test]
fn three_arc_cover_has_multiplicity_two() {
    let dir = tempdir::Dir::new("mult");
    let hexagon = fixture_file(&dir, "hexagon");
    let arcs = fixture_file(&dir, "hexagon-arcs");
    let out = mcx(&["mult", &hexagon, "--cover", &arcs], None);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["multiplicity"], 2);
    assert_eq!(v["nerve_dim"], 1);
}

#[test]
fn antipodal_quotient_is_a_domain_error() {
    let dir = tempdir::Dir::new("quotient");
    let circle = fixture_file(&dir, "circle");
    let swap = fixture_file(&dir, "circle-edge-swap");
    let anti = fixture_file(&dir, "circle-antipodal");
    let ok = mcx(&["quotient", &circle, "--action", &swap], None);
    assert!(ok.status.success());
    assert_eq!(json(&ok)["simplices"].as_array().map(Vec::len), Some(3));
    let bad = mcx(&["quotient", &circle, "--action", &anti], None);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["error"]["kind"], "domain");
}

#[test]
fn malformed_input_exits_with_parse_code() {
    let out = mcx(&["homology"], Some(b"{ not json"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dual_audit_on_circle_class() {
    let dir = tempdir::Dir::new("dual");
    let circle = fixture_file(&dir, "circle");
    let chain = dir.write(
        "chain",
        br#"{"degree": 1, "ring": "q", "terms": [{"simplex": "a,b#n", "coeff": "1"}, {"simplex": "a,b#s", "coeff": "-1"}]}"#,
    );
    let out = mcx(&["dual", &circle, "--chain", &chain, "--variant", "reduced"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["value"], "2");
    assert_eq!(v["dual_check"]["zero_gap"], true);
}

#[test]
fn diffusion_of_a_dipole_on_the_integers() {
    let dir = tempdir::Dir::new("diffuse");
    let action = dir.write("action", br#"{"group": {"kind": "zd", "dim": 1}, "set": {"kind": "regular"}}"#);
    let f = dir.write("f", br#"{"values": {"0": "1", "1": "-1"}}"#);
    let out = mcx(&["diffuse", "--action", &action, "--function", &f, "--epsilon", "1/10"], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["certified"], true);
}
