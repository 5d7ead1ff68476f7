use std::io::Write;
use std::process::{Command, Stdio};

use hypercover::cli::run;
use hypercover::format;
use hypercover::{validate_witness, Cover, OmegaWitness};
use serde_json::Value;

const TRIANGLE: &str = "0 1\n1 2\n0 2\n";

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn call(args: &[&str], stdin: &str) -> Output {
    let argv = std::iter::once("hypercover").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json(args: &[&str], stdin: &str) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = call(&all, stdin);
    (out.code, serde_json::from_str(&out.stdout).expect("one JSON document"))
}

fn edge_lines(text: &str) -> Vec<String> {
    text.lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect()
}

fn binary(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hypercover"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn check_cover_exit_codes() {
    let file = "0 1\n1 2\n";
    let ok = call(&["check-cover", "--indices", "0,1"], file);
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    assert!(ok.stdout.contains("verdict: minimal cover"));
    assert!(ok.stdout.contains("private 0 -> 0"));

    let short = call(&["check-cover", "--indices", "0"], file);
    assert_eq!(short.code, 1);
    assert!(short.stdout.contains("verdict: not a cover"));

    assert_eq!(call(&["check-cover", "--indices", "0"], "0 0\n").code, 2);
    assert_eq!(call(&["check-cover", "--indices", "0"], "1 empty\n").code, 2);
    assert_eq!(call(&["check-cover", "--indices", "5"], file).code, 2);
    assert_eq!(call(&["check-cover", "--bogus"], file).code, 2);
}

#[test]
fn check_cover_redundant() {
    let (code, doc) = json(&["check-cover", "--indices", "0,1,2"], TRIANGLE);
    assert_eq!(code, 1);
    assert_eq!(doc["verdict"], "cover, not minimal");
    assert_eq!(doc["result"]["violating_edge"], 0);
}

#[test]
fn minimalize_algorithms() {
    let (code, doc) = json(&["minimalize", "--algorithm", "greedy"], TRIANGLE);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["selected"], serde_json::json!([1, 2]));

    let (code, doc) = json(&["minimalize", "--algorithm", "local"], TRIANGLE);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["selected"], serde_json::json!([0, 1]));
    assert_eq!(doc["result"]["trace"]["steps"].as_array().unwrap().len(), 2);

    let width_one = "a\nb\na\nempty\nc\n";
    let (code, doc) = json(&["minimalize", "--algorithm", "bounded-width"], width_one);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["selected"], serde_json::json!([0, 1, 4]));

    let (code, doc) = json(&["minimalize", "--algorithm", "point-finite"], TRIANGLE);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["minimal"], true);
}

#[test]
fn minimalize_human_output_names_private_vertices() {
    let out = call(&["minimalize", "--algorithm", "local"], "x y\ny z\nx z\n");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("selected: 0 1"));
    assert!(out.stdout.contains("private 0 -> x"));
    assert!(out.stdout.contains("step 0: v=x") && out.stdout.contains("step 1: v=z"));
}

#[test]
fn gen_omega() {
    let out = call(&["gen", "omega", "--count", "4"], "");
    assert_eq!(out.code, 0);
    assert_eq!(edge_lines(&out.stdout), vec!["empty", "0", "0 1", "0 1 2"]);
}

#[test]
fn gen_domotor_pair() {
    let out = call(&["gen", "domotor", "--count", "2"], "");
    assert_eq!(out.code, 0);
    // A_2 = {-2,-1,0,2}, B_2 = {-2,0,1,2}; z >= 0 is 2z, z < 0 is -2z-1
    assert_eq!(edge_lines(&out.stdout), vec!["0 1 3 4", "0 2 3 4"]);
    assert!(out.stdout.contains("# id 3 = -2"));
}

#[test]
fn gen_lines_radius_one() {
    let out = call(&["gen", "lines", "--radius", "1"], "");
    assert_eq!(out.code, 0);
    let h = format::parse(&out.stdout).unwrap();
    assert_eq!(h.len(), 20);
    assert_eq!(h.vertex_set().len(), 9);
}

#[test]
fn gen_bad_parameters() {
    assert_eq!(call(&["gen", "omega"], "").code, 2);
    assert_eq!(call(&["gen", "lines", "--radius", "0"], "").code, 2);
    assert_eq!(call(&["gen", "lines", "--radius", "99"], "").code, 2);
    assert_eq!(call(&["gen", "nope"], "").code, 2);
}

#[test]
fn gen_random_is_seeded() {
    let a = call(&["gen", "random", "--seed", "7"], "");
    let b = call(&["gen", "random", "--seed", "7"], "");
    let c = call(&["gen", "random", "--seed", "8"], "");
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert!(format::parse(&a.stdout).unwrap().len() <= 30);
}

#[test]
fn find_omega_on_domotor() {
    let file = call(&["gen", "domotor", "--count", "40"], "").stdout;
    let (code, doc) = json(&["find-omega", "--depth", "20"], &file);
    assert_eq!(code, 0);
    assert_eq!(doc["verdict"], "witness found");

    // re-verify offline from the payload alone
    let h = format::parse(&file).unwrap();
    let w = &doc["result"]["witness"];
    let witness = OmegaWitness {
        omega: serde_json::from_value(w["omega"].clone()).unwrap(),
        edge_indices: serde_json::from_value(w["edge_indices"].clone()).unwrap(),
        depth: 20,
    };
    validate_witness(&h, &witness).unwrap();
}

#[test]
fn find_omega_none_and_usage() {
    let mut file = call(&["gen", "random", "--max-degree", "3", "--seed", "3"], "").stdout;
    let h = format::parse(&file).unwrap();
    assert!(h.vertex_set().iter().all(|v| h.degree(v) <= 3));
    let out = call(&["find-omega", "--depth", "4"], &file);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("verdict: none"));

    file.push_str("oops oops\n");
    assert_eq!(call(&["find-omega", "--depth", "4"], &file).code, 2);
    assert_eq!(call(&["find-omega", "--depth", "0"], TRIANGLE).code, 2);
}

#[test]
fn enumerate_and_check_nm() {
    let (code, doc) = json(&["enumerate"], TRIANGLE);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["covers"], serde_json::json!([[0, 1], [0, 2], [1, 2]]));

    let lines = call(&["gen", "lines", "--radius", "2"], "").stdout;
    assert_eq!(call(&["check-nm", "--n", "2", "--m", "2"], &lines).code, 0);
    let (code, doc) = json(&["check-nm", "--n", "2", "--m", "1"], &lines);
    assert_eq!(code, 1);
    assert_eq!(doc["result"]["holds"], false);
    assert_eq!(doc["result"]["counterexample"]["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn json_reports_have_the_documented_keys() {
    let cases: &[&[&str]] = &[
        &["check-cover", "--indices", "1,2"],
        &["minimalize"],
        &["enumerate"],
        &["find-omega", "--depth", "2"],
        &["check-nm", "--n", "2", "--m", "2"],
    ];
    for args in cases {
        let (code, doc) = json(args, TRIANGLE);
        assert!(code == 0 || code == 1);
        let obj = doc.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 4, "{keys:?}");
        assert_eq!(doc["command"][0], "hypercover");
        assert!(doc["input_digest"].as_str().unwrap().starts_with("sha256:"));
        assert!(doc["verdict"].is_string());
        assert!(doc["result"].is_object());
    }
}

#[test]
fn json_check_cover_is_reverifiable() {
    let (_, doc) = json(&["check-cover", "--indices", "1,2"], TRIANGLE);
    let h = format::parse(TRIANGLE).unwrap();
    let selected: Vec<usize> = serde_json::from_value(doc["result"]["selected"].clone()).unwrap();
    let cover = Cover::new(&h, selected).unwrap();
    for (edge, v) in doc["result"]["private_vertex"].as_object().unwrap() {
        let i: usize = edge.parse().unwrap();
        let v = v["id"].as_u64().unwrap() as u32;
        assert!(cover.selected().iter().all(|&j| (j == i) == h.edge(j).contains(v)));
    }
}

#[test]
fn binary_reads_files_and_stdin() {
    let dir = std::env::temp_dir().join(format!("hypercover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("triangle.txt");
    std::fs::write(&path, TRIANGLE).unwrap();
    let path = path.to_str().unwrap();

    let (code, out) = binary(&["minimalize", path], "");
    assert_eq!(code, 0);
    assert!(out.contains("selected: 1 2"));
    let (code, _) = binary(&["check-cover", "-", "--indices", "0"], TRIANGLE);
    assert_eq!(code, 1);
    let (code, _) = binary(&["check-cover", "/nonexistent/file", "--indices", "0"], "");
    assert_eq!(code, 2);
    let (code, _) = binary(&["find-omega", "--depth", "0"], TRIANGLE);
    assert_eq!(code, 2);
    let (code, out) = binary(&["--help"], "");
    assert_eq!(code, 0);
    assert!(out.contains("find-omega"));
    std::fs::remove_dir_all(&dir).unwrap();
}
