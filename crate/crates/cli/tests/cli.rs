use std::process::Command;

use hyperline::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hyperline").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    out
}

#[test]
fn sum_reports_the_shortfall() {
    let out = ok(&["sum", "9*pow(1/10,n)", "H"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("1 - pow(1/10,H)"));
    assert!(lines.next().unwrap().contains("shortfall is infinitesimal"));
    assert_eq!(
        ok(&["sum", "sum(9*pow(1/10,n), H-1)"]).lines().next(),
        Some("1 - 10*pow(1/10,H)")
    );
    assert_eq!(
        ok(&["sum", "n", "H"]).lines().next(),
        Some("1/2*H^2 + 1/2*H")
    );
    assert!(ok(&["sum", "1", "H"]).contains("sum is infinite"));
}

#[test]
fn scalar_subcommands() {
    assert_eq!(ok(&["st", "1 - pow(1/10,H)"]), "1\n");
    assert_eq!(ok(&["cmp", "pow(1/10,H)", "0"]), "Greater\n");
    assert_eq!(ok(&["cmp", "1 - pow(1/10,H)", "1"]), "Less\n");
    assert_eq!(ok(&["cmp", "-1", "-1"]), "Equal\n");
    assert_eq!(ok(&["classify", "pow(1/10,H)"]), "Infinitesimal\n");
    assert_eq!(ok(&["classify", "2 + 1/H"]), "NonzeroLimited\n");
    assert_eq!(ok(&["eval", "(H^2-1)/(H-1)"]), "H + 1\n");
    assert_eq!(ok(&["ultralimit", "(n+1)/n"]), "(H + 1)/H\n");
}

#[test]
fn notation_subcommands() {
    assert_eq!(
        ok(&["lightstone", "1 - pow(1/10,H)"]),
        "0.9{1..H}0{H+1..}\n"
    );
    assert_eq!(
        ok(&["lightstone", "--from-decimal", "0,9{1..H}0{H+1..}"]),
        "1 - pow(1/10,H)\n"
    );
    assert_eq!(
        ok(&["digits", "1 - pow(1/10,H)", "--from", "1", "--to", "5"]),
        "99999\n"
    );
    assert_eq!(ok(&["digits", "1/7", "--to", "6"]), "142857\n");
}

#[test]
fn microscope_scene_and_blur() {
    let out = ok(&[
        "microscope",
        "--center",
        "1",
        "a=1 - pow(1/10,H)",
        "b=1 - pow(1/100,H)",
        "--resolve-blur",
    ]);
    assert!(out.starts_with("a: InView(-1)\nb: InView(0)\n"));
    assert!(out.contains("resolved at unit^2:\nb: InView(-1)"));
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("view.svg");
    ok(&[
        "microscope",
        "--center",
        "1",
        "x=1/2",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("&#8592; x"));
}

#[test]
fn exit_statuses_name_the_error() {
    let (code, _, err) = call(&["st", "H"]);
    assert_eq!((code, err.starts_with("InfiniteArgument")), (1, true));
    let (code, _, err) = call(&["eval", "1/(H-H)"]);
    assert_eq!((code, err.starts_with("DivisionByZero")), (1, true));
    let (code, _, err) = call(&["eval", "pow(-2,H)"]);
    assert_eq!((code, err.starts_with("NonPositiveBase")), (1, true));
    let (code, _, err) = call(&["lightstone", "H"]);
    assert_eq!((code, err.starts_with("UnsupportedForm")), (1, true));
    let (code, _, err) = call(&["eval", "H^65"]);
    assert_eq!((code, err.starts_with("CapExceeded")), (1, true));
    let (code, _, err) = call(&["digits", "1"]);
    assert_eq!((code, err.starts_with("OutOfRange")), (1, true));
    let (code, _, err) = call(&["eval", "1 + * 2"]);
    assert_eq!((code, err.starts_with("SyntaxError")), (2, true));
    let (code, _, err) = call(&["frobnicate"]);
    assert_eq!((code, err.starts_with("UsageError")), (2, true));
    let (code, _, _) = call(&["microscope", "--center", "1", "--width", "5"]);
    assert_eq!(code, 2);
    let (code, _, err) = call(&["digits", "1/2", "--from", "0"]);
    assert_eq!((code, err.starts_with("UsageError")), (2, true));
}

#[test]
fn json_results_and_errors() {
    let out = ok(&["--format", "json", "cmp", "pow(1/10,H)", "0"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["subcommand"], "cmp");
    assert_eq!(v["input"]["left"], "pow(1/10,H)");
    assert_eq!(v["result"], "Greater");

    let (code, out, _) = call(&["st", "H", "--format", "json"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["name"], "InfiniteArgument");
    assert!(v.get("result").is_none());

    let v: Value =
        serde_json::from_str(&ok(&["--format", "json", "sum", "9*pow(1/10,n)", "H"])).unwrap();
    assert_eq!(v["result"]["value"], "1 - pow(1/10,H)");
    assert_eq!(v["result"]["classification"], "NonzeroLimited");

    let v: Value =
        serde_json::from_str(&ok(&["--format", "json", "laws", "--cases", "5"])).unwrap();
    assert!(v["result"]["laws"]
        .as_array()
        .unwrap()
        .iter()
        .all(|l| l["passed"] == true));
}

#[test]
fn laws_output_is_deterministic() {
    let a = ok(&["laws", "--seed", "9", "--cases", "50"]);
    let b = ok(&["laws", "--seed", "9", "--cases", "50"]);
    assert_eq!(a, b);
    assert!(a.lines().take(17).all(|l| l.starts_with("PASS ")));
    assert!(a.ends_with("17 laws, 17 passed, 0 failed\n"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_hyperline");
    let out = Command::new(bin)
        .args(["st", "1 - pow(1/10,H)"])
        .output()
        .unwrap();
    assert_eq!(
        (out.status.code(), out.stdout.as_slice()),
        (Some(0), b"1\n".as_slice())
    );
    let out = Command::new(bin).args(["st", "H"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("InfiniteArgument"));
    let out = Command::new(bin).args(["eval", "((("]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
