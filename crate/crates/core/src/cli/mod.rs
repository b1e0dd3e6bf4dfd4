//! Script front end: parsing, execution, text and JSON reports.

mod exec;
pub mod json;
mod parse;

use std::time::{Duration, Instant};

use serde_json::{json, Value as Json};

pub use exec::{Entry, Options, Value};
pub use parse::{parse_script, Arg, Base, Call, ParseError, Statement, StatementKind, COMMANDS};

/// The bundled script exercising every worked example.
pub const CORPUS: &str = include_str!("../../corpus/worked_examples.rsc");

pub const EXIT_OK: i32 = 0;
pub const EXIT_EXEC_ERROR: i32 = 1;
pub const EXIT_PARSE_ERROR: i32 = 2;

#[derive(Clone, Debug)]
pub struct Report {
    pub entries: Vec<Entry>,
    pub parse_errors: Vec<ParseError>,
    pub exit_code: i32,
    pub elapsed: Duration,
}

impl Report {
    pub fn succeeded(&self) -> bool {
        self.exit_code == EXIT_OK
    }

    /// Canonical JSON: no timing, sorted keys.
    pub fn to_json(&self) -> Json {
        let errors: Vec<Json> =
            self.parse_errors.iter().map(|e| json!({ "line": e.line, "error": e.message })).collect();
        json!({
            "exit_code": self.exit_code,
            "parse_errors": errors,
            "results": self.entries.iter().map(Entry::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_json_string(&self) -> String {
        json::to_canonical_string(&self.to_json())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.parse_errors {
            out.push_str(&format!("parse error: {e}\n"));
        }
        for e in &self.entries {
            let head = match &e.name {
                Some(n) => format!("[line {}] {} {}", e.line, e.label, n),
                None => format!("[line {}] {}", e.line, e.label),
            };
            match &e.outcome {
                Ok(v) => out.push_str(&format!("{head}: {}\n", v.render())),
                Err(msg) => out.push_str(&format!("{head}: error: {msg}\n")),
            }
        }
        let failed = self.entries.iter().filter(|e| e.outcome.is_err()).count();
        out.push_str(&format!(
            "{} statement(s), {} failed, exit {} ({} ms)\n",
            self.entries.len(),
            failed,
            self.exit_code,
            self.elapsed.as_millis()
        ));
        out
    }
}

/// Parses then executes `text`. Any parse error stops execution (exit 2); execution errors
/// are recorded per statement, later statements still run (exit 1).
pub fn run_script(text: &str, options: Options) -> Report {
    let start = Instant::now();
    let statements = match parse_script(text) {
        Ok(s) => s,
        Err(parse_errors) => {
            return Report { entries: Vec::new(), parse_errors, exit_code: EXIT_PARSE_ERROR, elapsed: start.elapsed() }
        }
    };
    let mut ex = exec::Executor::new(options);
    let entries: Vec<Entry> = statements.iter().map(|s| ex.run(s)).collect();
    let exit_code = if entries.iter().any(|e| e.outcome.is_err()) { EXIT_EXEC_ERROR } else { EXIT_OK };
    Report { entries, parse_errors: Vec::new(), exit_code, elapsed: start.elapsed() }
}

pub fn run_corpus(options: Options) -> Report {
    run_script(CORPUS, options)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(s: &str) -> Report {
        run_script(s, Options::default())
    }

    fn value<'a>(r: &'a Report, i: usize) -> &'a Value {
        r.entries[i].outcome.as_ref().unwrap_or_else(|e| panic!("line {}: {e}", r.entries[i].line))
    }

    #[test]
    fn cusp_recipe_script() {
        let r = run(
            "ring R = Q[z,w]; quotient Z = R/(z^3 - w^2); ideal J = Z:(z, w); recipe X = recipe(Z, J); annmember(X, z)",
        );
        assert_eq!(r.exit_code, EXIT_OK);
        assert!(matches!(value(&r, 4), Value::Bool(true)));
    }

    #[test]
    fn empty_script() {
        let r = run("");
        assert_eq!((r.entries.len(), r.exit_code), (0, EXIT_OK));
        assert_eq!(run("# only a comment\n\n").exit_code, EXIT_OK);
    }

    #[test]
    fn periodic_resolution_script() {
        let r = run("resolve((x), over Q[x,y]/(x*y), cap=6); period(last)");
        assert_eq!(r.exit_code, EXIT_OK);
        match value(&r, 1) {
            Value::Period(p) => assert_eq!((p.detected, p.offset, p.period), (true, 0, 2)),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run("ring R = Q[x]\nresolve((x)").exit_code, EXIT_PARSE_ERROR);
        let r = run("ring R = Q[x]\nresolve((y))\nresolve((x))\nbe-check(last)");
        assert_eq!(r.exit_code, EXIT_EXEC_ERROR);
        assert!(r.entries[1].outcome.is_err());
        assert!(r.entries[2].outcome.is_ok() && r.entries[3].outcome.is_ok());
        let r = run("ring R = Q[x]\nC = resolve((y))\nbe-check(C)");
        assert!(r.entries[2].outcome.as_ref().unwrap_err().contains("line 2 failed"));
        assert!(r.to_text().contains("[line 2] resolve C: error"));
    }

    #[test]
    fn commands_cover_the_engine() {
        let script = "\
ring R = Q[z,w]
K = koszul((z, w))
F = resolve((z^3 - w^2))
a = compare(F, K)
b = compare(F, K, order=lex)
homotopy(a, b)
ch((z, w))
annmember(last, z^3 - w^2)
translaw((z, w), (z + w, w), [[1, 0], [-1, 1]])
presidue(z^3 - w^2, w)
quotient Z = R/(z^3 - w^2)
shape(Z)
cm-check((z, w))
regseq((z, w))
loci(K)
be-check(K)
member(z^2, (z))
lift(Z:(z))
ring T = Q[z,w,t]
E = extend(K, T)
D = koszul(T:(t))
tensor(E, D)
proper-check(K, K, p=2, q=2)
minimalize(F)
";
        let r = run(script);
        for e in &r.entries {
            assert!(e.outcome.is_ok(), "line {}: {:?}", e.line, e.outcome);
        }
        match value(&r, 5) {
            Value::Homotopy { verified, .. } => assert!(verified),
            v => panic!("{v:?}"),
        }
        assert!(matches!(value(&r, 7), Value::Bool(true)));
        assert!(matches!(value(&r, 16), Value::Bool(true)));
        match value(&r, 21) {
            Value::Complex(c) => assert_eq!(c.ranks(), &[1, 3, 3, 1]),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn type_errors_are_reported() {
        let r = run("ring R = Q[x]\nideal I = (x)\nbe-check(I)\nresolve(I, cap=zero)\nresolve(I, foo=1)");
        assert_eq!(r.exit_code, EXIT_EXEC_ERROR);
        assert!(r.entries[2].outcome.as_ref().unwrap_err().contains("expected a complex"));
        assert!(r.entries[3].outcome.is_err() && r.entries[4].outcome.is_err());
    }

    #[test]
    fn corpus_runs_clean_and_deterministically() {
        let a = run_corpus(Options::default());
        assert_eq!(a.exit_code, EXIT_OK, "{}", a.to_text());
        let b = run_corpus(Options::default());
        assert_eq!(a.to_json_string(), b.to_json_string());
    }
}
