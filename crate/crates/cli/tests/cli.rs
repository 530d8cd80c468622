use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn weylot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylot")).args(args).output().expect("binary runs")
}

fn weylot_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylot")).args(args).env(key, value).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn gen_reproduces_the_fixtures() {
    for (name, ty, w) in [("square.txt", "B2", "0,2"), ("cube.txt", "B3", "0,0,2"), ("v3.txt", "A3", "0,2,0")] {
        let o = weylot(&["gen", "--type", ty, "--weight", w]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), fs::read_to_string(fixture(name)).unwrap());
    }
}

#[test]
fn dual_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.txt");
    let o = weylot(&["dual", fixture("cube.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    fs::write(&d, &o.stdout).unwrap();
    let back = weylot(&["dual", d.to_str().unwrap()]);
    let again = weylot(&["dual", fixture("cube.txt").to_str().unwrap()]);
    assert_eq!(back.status.code(), Some(0));
    // the comment line is dropped, the vertex block is reproduced
    let cube = fs::read_to_string(fixture("cube.txt")).unwrap();
    assert!(cube.ends_with(&stdout(&back)));
    assert_eq!(o.stdout, again.stdout);
    // the octagon is not reflexive
    assert_eq!(weylot(&["dual", fixture("octagon.txt").to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn family_rows() {
    let o = weylot(&["family", "--row", "6", "--rank", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with(fs::read_to_string(fixture("cube.txt")).unwrap().split_once('\n').unwrap().1));
    assert_eq!(weylot(&["family", "--row", "3", "--rank", "4"]).status.code(), Some(2));
}

#[test]
fn checks_and_exit_codes() {
    let hex = fixture("hexagon.txt");
    let o = weylot(&["check", hex.to_str().unwrap(), "--vertex-condition"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let w = v["report"]["witness"].as_array().unwrap();
    assert_eq!(w.len(), 2);
    assert!(w[0].as_array().unwrap().iter().all(|x| x.is_i64()));

    let o = weylot(&["check", hex.to_str().unwrap(), "--reflexive"]);
    assert_eq!(o.status.code(), Some(0));
    let o = weylot(&["check", fixture("octagon.txt").to_str().unwrap(), "--reflexive"]);
    assert_eq!(o.status.code(), Some(1));
    let o = weylot(&["check", hex.to_str().unwrap(), "--weyl"]);
    assert_eq!(json(&o)["report"]["weyl"]["group_order"], 12);
    let o = weylot(&["check", fixture("octagon.txt").to_str().unwrap(), "--star", "--type", "B2", "--weight", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["star_containment"]["primal"]["status"], "certified");
    // --star without a Weyl structure is an input error
    assert_eq!(weylot(&["check", hex.to_str().unwrap(), "--star"]).status.code(), Some(2));
    // exactly one check
    assert_eq!(weylot(&["check", hex.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn input_errors_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "2 4\n1 1 -1 x\n1 -1 1 -1\n").unwrap();
    let o = weylot(&["check", bad.to_str().unwrap(), "--reflexive"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("non-integer"));
    assert_eq!(weylot(&["check", "/nonexistent/file", "--reflexive"]).status.code(), Some(2));
    assert_eq!(weylot(&["gen", "--type", "B2", "--weight", "1,1"]).status.code(), Some(2));
    assert_eq!(weylot(&["gen", "--type", "Q2", "--weight", "1,1"]).status.code(), Some(2));
    let o = weylot_env(&["gen", "--type", "B3", "--weight", "1,2,2"], "WEYLOT_ORBIT_CAP", "5");
    assert_eq!(o.status.code(), Some(3));
    let o = weylot_env(&["classify", fixture("cube.txt").to_str().unwrap()], "WEYLOT_ORBIT_CAP", "10");
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn classify_batch() {
    let dir = tempfile::tempdir().unwrap();
    let files = ["square.txt", "hexagon.txt", "cube.txt"].map(|f| fixture(f).to_str().unwrap().to_string());
    let mut args = vec!["classify"];
    args.extend(files.iter().map(String::as_str));
    let printed = weylot(&args);
    assert_eq!(printed.status.code(), Some(0));
    let docs: Vec<serde_json::Value> =
        serde_json::Deserializer::from_slice(&printed.stdout).into_iter().map(Result::unwrap).collect();
    let orders: Vec<u64> = docs.iter().map(|d| d["report"]["aut_order"].as_u64().unwrap()).collect();
    assert_eq!(orders, vec![8, 12, 48]);

    args.extend(["--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(weylot(&args).status.code(), Some(0));
    let cube = fs::read(dir.path().join("cube.json")).unwrap();
    let single = weylot(&["classify", &files[2]]);
    assert_eq!(cube, single.stdout);
}

#[test]
fn certify_and_transport() {
    let sq = fixture("square.txt");
    let o = weylot(&["certify", sq.to_str().unwrap(), "--type", "B2", "--weight", "0,2", "--refine", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["passed"], true);
    assert_eq!(v["report"]["stability"]["offending_mass"], "0/1");
    assert_eq!(v["report"]["duality_gap"], "0/1");
    // reports are byte-deterministic
    let again = weylot(&["certify", sq.to_str().unwrap(), "--type", "B2", "--weight", "0,2", "--refine", "1"]);
    assert_eq!(o.stdout, again.stdout);
    // wrong structure for the file
    let o = weylot(&["certify", sq.to_str().unwrap(), "--type", "B2", "--weight", "1,0"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let mu = dir.path().join("mu.json");
    let nu = dir.path().join("nu.json");
    let base = ["cloud", sq.to_str().unwrap(), "--type", "B2", "--weight", "0,2"];
    fs::write(&mu, weylot(&base).stdout).unwrap();
    let mut dual = base.to_vec();
    dual.push("--dual");
    fs::write(&nu, weylot(&dual).stdout).unwrap();
    for pivot in ["block", "bland"] {
        let o = weylot(&["ot", mu.to_str().unwrap(), nu.to_str().unwrap(), "--pivot", pivot]);
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        // the dual cloud has the quarter points of each edge of the diamond
        assert_eq!(v["report"]["cost"], "-7/8");
        assert_eq!(v["report"]["duality_gap"], "0/1");
    }
    fs::write(&nu, "{\"side\": \"N\"}").unwrap();
    assert_eq!(weylot(&["ot", mu.to_str().unwrap(), nu.to_str().unwrap()]).status.code(), Some(2));
}
