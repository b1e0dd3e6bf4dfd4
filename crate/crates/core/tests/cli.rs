use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rescurrent"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[], "ring R = Q[x,y]; resolve((x, y))").status.code(), Some(0));
    assert_eq!(run(&[], "ring R = Q[x]; resolve((y))").status.code(), Some(1));
    assert_eq!(run(&[], "resolve((x)").status.code(), Some(2));
    assert_eq!(run(&["--cap", "0"], "").status.code(), Some(2));
    assert_eq!(run(&["--script", "/nonexistent/script.rsc"], "").status.code(), Some(2));
}

#[test]
fn text_and_json_reports() {
    let out = run(&["--json", "-"], "ring R = Q[x,y,z]\nC = resolve((x*z, y*z))");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[line 2] resolve C"));
    let json_line = text.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(json_line).unwrap();
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["results"][1]["value"]["ranks"], serde_json::json!([1, 2, 1]));
}

#[test]
fn corpus_flag_is_deterministic() {
    let a = run(&["--corpus", "--json", "-"], "");
    let b = run(&["--corpus", "--json", "-"], "");
    assert_eq!(a.status.code(), Some(0));
    let last = |o: &Output| String::from_utf8(o.stdout.clone()).unwrap().lines().last().unwrap().to_string();
    assert_eq!(last(&a), last(&b));
}

#[test]
fn default_order_applies_to_rings() {
    let out = run(&["--order", "lex", "--json", "-"], "ring R = Q[x,y]");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last().unwrap().contains(r#""order":"lex""#), "{text}");
    assert_eq!(run(&["--order", "weird"], "").status.code(), Some(2));
}
