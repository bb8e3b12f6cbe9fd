use serde_json::Value;
use valfram::cli::{run, EXIT_DOMAIN, EXIT_FAILED, EXIT_OK, EXIT_PRECISION, EXIT_USAGE};

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

impl Outcome {
    fn json(&self) -> Value {
        serde_json::from_str(&self.out).unwrap_or_else(|e| panic!("{e}: {}", self.out))
    }

    fn error(&self) -> Value {
        serde_json::from_str(&self.err).unwrap_or_else(|e| panic!("{e}: {}", self.err))
    }
}

fn valfram(args: &[&str], stdin: &str) -> Outcome {
    let argv = std::iter::once("valfram").chain(args.iter().copied()).map(std::ffi::OsString::from);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

#[test]
fn chain_of_eisenstein_quadratic() {
    let o = valfram(&["chain", "-p", "2", "x^2-2"], "");
    assert_eq!(o.code, EXIT_OK);
    let j = o.json();
    assert_eq!(j["depth"], 1);
    assert_eq!(j["e"], 2);
    assert_eq!(j["f"], 1);
    assert_eq!(j["nodes"][0]["gamma"], "1/2");
    assert_eq!(j["certified"], true);
}

#[test]
fn chain_of_split_input_lists_branches() {
    let j = valfram(&["chain", "-p", "2", "x^2+7"], "").json();
    assert_eq!(j["branches"].as_array().unwrap().len(), 2);
}

#[test]
fn parenthesized_input_matches_expanded() {
    let a = valfram(&["chain", "-p", "2", "(x^2+x+1)^2-2"], "").json();
    let b = valfram(&["chain", "-p", "2", "x^4+2*x^3+3*x^2+2*x-1"], "").json();
    assert_eq!(a, b);
    assert_eq!(a["depth"], 2);
    assert_eq!(a["e"], 2);
    assert_eq!(a["f"], 2);
}

#[test]
fn equivalence_and_krasner() {
    let o = valfram(&["equiv", "-p", "2", "x^2-2", "x^2-6"], "");
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.json()["equivalent"], true);
    assert_eq!(o.json()["u"], "1/1");
    let o = valfram(&["--text", "equiv", "-p", "2", "x^2-2", "x^2-3"], "");
    assert_eq!(o.out.trim(), "false");
    assert_eq!(valfram(&["krasner", "-p", "2", "x^2-2"], "").json()["krasner"], "3/2");
}

#[test]
fn frames_verify() {
    let o = valfram(&["frame", "--verify", "-p", "2", "(x^2+x+1)^2-2"], "");
    assert_eq!(o.code, EXIT_OK);
    let j = o.json();
    assert_eq!(j["verified"], true);
    assert_eq!(j["frame"]["weights"], serde_json::json!([["2", "0/1"], ["4", "1/4"]]));
}

#[test]
fn distance_hos_and_corpus() {
    let j = valfram(&["dist", "-p", "2", "x-1", "x-3"], "").json();
    assert_eq!(j["u"], "1/1");
    assert_eq!(valfram(&["hos", "-p", "2", "x^2-2", "x^2+x"], "").json()["hos"], false);
    let j = valfram(&["corpus", "-p", "2", "-"], "x^2-2\nx^2-6\nx^2-3\n").json();
    assert_eq!(j["classes"], serde_json::json!([[0, 1], [2]]));
}

#[test]
fn polynomials_from_stdin() {
    let o = valfram(&["krasner", "-p", "2"], "x^2-2\nx^2+x+1\n");
    assert_eq!(o.code, EXIT_OK);
    let lines: Vec<Value> = o.out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1]["krasner"], "0/1");
}

#[test]
fn exit_codes() {
    let o = valfram(&["chain", "-p", "2", "x^-1"], "");
    assert_eq!(o.code, EXIT_USAGE);
    assert_eq!(o.error()["error"], "syntax");
    assert_eq!(valfram(&["chain", "-p", "4", "x"], "").code, EXIT_USAGE);
    assert_eq!(valfram(&["bogus"], "").code, EXIT_USAGE);
    assert_eq!(valfram(&["--json", "--text", "chain", "-p", "2", "x"], "").code, EXIT_USAGE);
    let o = valfram(&["frame", "-p", "2", "x-1"], "");
    assert_eq!(o.code, EXIT_DOMAIN);
    assert_eq!(o.error()["input"], "x-1");
    assert_eq!(valfram(&["krasner", "-p", "2", "x^2-1"], "").code, EXIT_DOMAIN);
    assert_eq!(valfram(&["frame", "-p", "2", "x^2+2*x+1"], "").code, EXIT_PRECISION);
    assert_ne!(EXIT_FAILED, EXIT_OK);
}

#[test]
fn selftest_runs() {
    let o = valfram(&["--text", "selftest", "--max-degree", "2", "--height", "1"], "");
    assert_eq!(o.code, EXIT_OK, "{}", o.out);
    assert!(o.out.trim_end().ends_with("PASS"));
}
