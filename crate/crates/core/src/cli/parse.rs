//! Line-oriented script syntax.
//!
//! ```text
//! script    := (statement? ('#' comment)? '\n')*        statements may also be split by ';'
//! statement := decl | [word] ident '=' call | call
//! decl      := 'ring' ident '=' 'Q[' vars ']' ['order=' order]
//!            | 'quotient' ident '=' (ident | 'Q[' vars ']') '/(' gens ')'
//!            | ('ideal' | 'tuple') ident '=' [ident ':'] '(' gens ')'
//!            | 'matrix' ident '=' [ident ':'] '[[' ... ']]'
//!            | 'poly' ident '=' [ident ':'] expr
//! call      := command '(' arg (',' arg)* ')'
//! arg       := 'over' arg | key '=' value | arg ':' uint | ident | '(' gens ')' | ident ':(' gens ')'
//!            | 'Q[' vars ']' ['/(' gens ')'] | '[[' ... ']]' | expr
//! ```

use crate::polyring::{is_identifier, MonomialOrder};

pub const COMMANDS: &[&str] = &[
    "resolve",
    "minimalize",
    "koszul",
    "tensor",
    "extend",
    "lift",
    "compare",
    "homotopy",
    "be-check",
    "proper-check",
    "period",
    "cm-check",
    "regseq",
    "ch",
    "translaw",
    "presidue",
    "shape",
    "recipe",
    "annmember",
    "member",
    "loci",
];

const DECLARATIONS: &[&str] = &["ring", "quotient", "ideal", "tuple", "matrix", "poly"];

#[derive(Clone, Debug, PartialEq)]
pub struct Statement {
    pub line: usize,
    pub source: String,
    pub kind: StatementKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StatementKind {
    Ring { name: String, vars: Vec<String>, order: Option<MonomialOrder> },
    Quotient { name: String, base: Base, gens: Vec<String> },
    Ideal { name: String, base: Option<String>, gens: Vec<String> },
    Tuple { name: String, base: Option<String>, gens: Vec<String> },
    Matrix { name: String, base: Option<String>, rows: Vec<Vec<String>> },
    Poly { name: String, base: Option<String>, expr: String },
    Command { bind: Option<String>, call: Call },
}

impl StatementKind {
    pub fn binding(&self) -> Option<&str> {
        match self {
            StatementKind::Ring { name, .. }
            | StatementKind::Quotient { name, .. }
            | StatementKind::Ideal { name, .. }
            | StatementKind::Tuple { name, .. }
            | StatementKind::Matrix { name, .. }
            | StatementKind::Poly { name, .. } => Some(name),
            StatementKind::Command { bind, .. } => bind.as_deref(),
        }
    }

    pub fn label(&self) -> &str {
        match self {
            StatementKind::Ring { .. } => "ring",
            StatementKind::Quotient { .. } => "quotient",
            StatementKind::Ideal { .. } => "ideal",
            StatementKind::Tuple { .. } => "tuple",
            StatementKind::Matrix { .. } => "matrix",
            StatementKind::Poly { .. } => "poly",
            StatementKind::Command { call, .. } => &call.name,
        }
    }
}

/// The ring a quotient is taken of.
#[derive(Clone, Debug, PartialEq)]
pub enum Base {
    Named(String),
    Literal { vars: Vec<String>, order: Option<MonomialOrder> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Call {
    pub name: String,
    pub args: Vec<Arg>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Arg {
    Ident(String),
    Gens { base: Option<String>, gens: Vec<String> },
    Ring { vars: Vec<String>, order: Option<MonomialOrder> },
    Quotient { vars: Vec<String>, order: Option<MonomialOrder>, gens: Vec<String> },
    Matrix { base: Option<String>, rows: Vec<Vec<String>> },
    Over(Box<Arg>),
    Keyword(String, String),
    Component(Box<Arg>, usize),
    Expr(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Splits `s` at top-level occurrences of `sep` (outside (), [] and {}).
fn split_top(s: &str, sep: char) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut depth: i32 = 0;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => {
                depth -= 1;
                if depth < 0 {
                    return Err(format!("unbalanced `{c}`"));
                }
            }
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    if depth != 0 {
        return Err("unbalanced brackets".into());
    }
    out.push(cur);
    Ok(out)
}

/// Index of the bracket closing the one at `open`.
fn matching(s: &str, open: usize) -> Option<usize> {
    let bytes = s.as_bytes();
    let (o, c) = match bytes[open] {
        b'(' => (b'(', b')'),
        b'[' => (b'[', b']'),
        _ => return None,
    };
    let mut depth = 0;
    for (i, &b) in bytes.iter().enumerate().skip(open) {
        if b == o {
            depth += 1;
        } else if b == c {
            depth -= 1;
            if depth == 0 {
                return Some(i);
            }
        }
    }
    None
}

/// `s` is `(...)` with the outer parentheses matching each other.
fn parenthesized(s: &str) -> Option<&str> {
    if s.starts_with('(') && matching(s, 0) == Some(s.len() - 1) {
        Some(&s[1..s.len() - 1])
    } else {
        None
    }
}

fn gens_list(inner: &str) -> Result<Vec<String>, String> {
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let parts = split_top(inner, ',')?;
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        let p = p.trim();
        if p.is_empty() {
            return Err("empty generator".into());
        }
        out.push(p.to_string());
    }
    Ok(out)
}

fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    s.trim().parse::<MonomialOrder>().map_err(|e| format!("unknown monomial order `{}`: {e}", s.trim()))
}

/// `Q[x,y]` with an optional ` order=lex`; returns the variables, order and the remaining text.
fn ring_literal(s: &str) -> Result<Option<(Vec<String>, &str)>, String> {
    let s = s.trim_start();
    if !s.starts_with("Q[") {
        return Ok(None);
    }
    let close = matching(s, 1).ok_or("unterminated ring literal")?;
    let vars: Vec<String> = s[2..close].split(',').map(|v| v.trim().to_string()).collect();
    if vars.iter().any(|v| !is_identifier(v)) {
        return Err(format!("invalid variable list `{}`", &s[2..close]));
    }
    Ok(Some((vars, &s[close + 1..])))
}

fn trailing_order(rest: &str) -> Result<Option<MonomialOrder>, String> {
    let rest = rest.trim();
    if rest.is_empty() {
        return Ok(None);
    }
    match rest.strip_prefix("order") {
        Some(r) => match r.trim_start().strip_prefix('=') {
            Some(o) => Ok(Some(parse_order(o)?)),
            None => Err(format!("unexpected `{rest}`")),
        },
        None => Err(format!("unexpected `{rest}`")),
    }
}

fn matrix_rows(s: &str) -> Result<Vec<Vec<String>>, String> {
    let s = s.trim();
    if !(s.starts_with('[') && matching(s, 0) == Some(s.len() - 1)) {
        return Err(format!("expected a matrix literal `[[..], ..]`, found `{s}`"));
    }
    let inner = &s[1..s.len() - 1];
    let mut rows = Vec::new();
    for r in split_top(inner, ',')? {
        let r = r.trim();
        if !(r.starts_with('[') && matching(r, 0) == Some(r.len() - 1)) {
            return Err(format!("expected a row `[..]`, found `{r}`"));
        }
        rows.push(gens_list(&r[1..r.len() - 1])?);
    }
    if rows.is_empty() || rows[0].is_empty() {
        return Err("empty matrix".into());
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err("rows of different lengths".into());
    }
    Ok(rows)
}

/// `ident:` prefix naming the ring or quotient of an inline object.
fn split_base(s: &str) -> (Option<String>, &str) {
    if let Some(i) = s.find(':') {
        let head = s[..i].trim();
        let tail = s[i + 1..].trim_start();
        if is_identifier(head) && (tail.starts_with('(') || tail.starts_with('[')) {
            return (Some(head.to_string()), tail);
        }
    }
    (None, s)
}

fn parse_arg(s: &str) -> Result<Arg, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty argument".into());
    }
    if let Some(rest) = s.strip_prefix("over ") {
        return Ok(Arg::Over(Box::new(parse_arg(rest)?)));
    }
    if let Some(i) = s.find('=') {
        let key = s[..i].trim();
        if is_identifier(key) {
            return Ok(Arg::Keyword(key.to_string(), s[i + 1..].trim().to_string()));
        }
    }
    if let Some(i) = s.rfind(':') {
        let tail = s[i + 1..].trim();
        if !tail.is_empty() && tail.bytes().all(|b| b.is_ascii_digit()) {
            let dim = tail.parse::<usize>().map_err(|e| e.to_string())?;
            return Ok(Arg::Component(Box::new(parse_arg(&s[..i])?), dim));
        }
    }
    if let Some((vars, rest)) = ring_literal(s)? {
        let rest = rest.trim_start();
        if let Some(q) = rest.strip_prefix('/') {
            let q = q.trim();
            let inner = parenthesized(q).ok_or_else(|| format!("expected `/(...)`, found `/{q}`"))?;
            return Ok(Arg::Quotient { vars, order: None, gens: gens_list(inner)? });
        }
        return Ok(Arg::Ring { vars, order: trailing_order(rest)? });
    }
    let (base, body) = split_base(s);
    if body.starts_with('[') {
        return Ok(Arg::Matrix { base, rows: matrix_rows(body)? });
    }
    if let Some(inner) = parenthesized(body) {
        return Ok(Arg::Gens { base, gens: gens_list(inner)? });
    }
    if base.is_some() {
        return Err(format!("malformed argument `{s}`"));
    }
    if is_identifier(s) {
        return Ok(Arg::Ident(s.to_string()));
    }
    Ok(Arg::Expr(s.to_string()))
}

fn parse_call(s: &str) -> Result<Call, String> {
    let s = s.trim();
    let open = s.find('(').ok_or_else(|| format!("expected a command call, found `{s}`"))?;
    let name = s[..open].trim();
    if !COMMANDS.contains(&name) {
        return Err(format!("unknown command `{name}`"));
    }
    let close = matching(s, open).ok_or("unterminated argument list")?;
    if close != s.len() - 1 {
        return Err(format!("unexpected `{}` after the argument list", &s[close + 1..]));
    }
    let inner = &s[open + 1..close];
    let args = if inner.trim().is_empty() {
        Vec::new()
    } else {
        split_top(inner, ',')?.iter().map(|a| parse_arg(a)).collect::<Result<Vec<_>, _>>()?
    };
    Ok(Call { name: name.to_string(), args })
}

fn check_name(name: &str) -> Result<String, String> {
    if !is_identifier(name) {
        return Err(format!("invalid identifier `{name}`"));
    }
    if name == "last" || name == "Q" {
        return Err(format!("`{name}` is reserved"));
    }
    Ok(name.to_string())
}

fn parse_declaration(keyword: &str, name: String, rhs: &str) -> Result<StatementKind, String> {
    let rhs = rhs.trim();
    match keyword {
        "ring" => {
            let (vars, rest) = ring_literal(rhs)?.ok_or_else(|| format!("expected `Q[...]`, found `{rhs}`"))?;
            Ok(StatementKind::Ring { name, vars, order: trailing_order(rest)? })
        }
        "quotient" => {
            let (base, rest) = match ring_literal(rhs)? {
                Some((vars, rest)) => (Base::Literal { vars, order: None }, rest),
                None => {
                    let slash = rhs.find('/').ok_or_else(|| format!("expected `R/(...)`, found `{rhs}`"))?;
                    let head = rhs[..slash].trim();
                    if !is_identifier(head) {
                        return Err(format!("expected a ring name, found `{head}`"));
                    }
                    (Base::Named(head.to_string()), &rhs[slash..])
                }
            };
            let q = rest.trim().strip_prefix('/').ok_or("expected `/(...)` after the ring")?.trim();
            let inner = parenthesized(q).ok_or_else(|| format!("expected `(...)`, found `{q}`"))?;
            Ok(StatementKind::Quotient { name, base, gens: gens_list(inner)? })
        }
        "ideal" | "tuple" => {
            let (base, body) = split_base(rhs);
            let inner = parenthesized(body.trim()).ok_or_else(|| format!("expected `(...)`, found `{body}`"))?;
            let gens = gens_list(inner)?;
            if keyword == "ideal" {
                Ok(StatementKind::Ideal { name, base, gens })
            } else {
                if gens.is_empty() {
                    return Err("empty tuple".into());
                }
                Ok(StatementKind::Tuple { name, base, gens })
            }
        }
        "matrix" => {
            let (base, body) = split_base(rhs);
            Ok(StatementKind::Matrix { name, base, rows: matrix_rows(body)? })
        }
        "poly" => {
            let (base, expr) = match rhs.find(':') {
                Some(i) if is_identifier(rhs[..i].trim()) => (Some(rhs[..i].trim().to_string()), rhs[i + 1..].trim()),
                _ => (None, rhs),
            };
            if expr.is_empty() {
                return Err("empty polynomial".into());
            }
            Ok(StatementKind::Poly { name, base, expr: expr.to_string() })
        }
        _ => unreachable!("declaration keywords are fixed"),
    }
}

fn parse_statement(s: &str) -> Result<StatementKind, String> {
    let s = s.trim();
    let first_end = s.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '-')).unwrap_or(s.len());
    let first = &s[..first_end];
    let rest = s[first_end..].trim_start();
    if DECLARATIONS.contains(&first) && !rest.starts_with('(') {
        let eq = rest.find('=').ok_or_else(|| format!("expected `{first} <name> = ...`"))?;
        let name = check_name(rest[..eq].trim())?;
        return parse_declaration(first, name, &rest[eq + 1..]);
    }
    if rest.starts_with('=') && is_identifier(first) {
        return Ok(StatementKind::Command { bind: Some(check_name(first)?), call: parse_call(&rest[1..])? });
    }
    if (first == "let" || COMMANDS.contains(&first)) && !rest.starts_with('(') {
        let eq = rest.find('=').ok_or_else(|| format!("expected `{first} <name> = ...`"))?;
        let name = check_name(rest[..eq].trim())?;
        let call = parse_call(&rest[eq + 1..])?;
        if first != "let" && call.name != first {
            return Err(format!("`{first} {name} = ...` must bind a `{first}` call, found `{}`", call.name));
        }
        return Ok(StatementKind::Command { bind: Some(name), call });
    }
    Ok(StatementKind::Command { bind: None, call: parse_call(s)? })
}

/// Parses a whole script; every malformed statement is reported.
pub fn parse_script(text: &str) -> Result<Vec<Statement>, Vec<ParseError>> {
    let mut out = Vec::new();
    let mut errors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let code = match raw.find('#') {
            Some(c) => &raw[..c],
            None => raw,
        };
        let pieces = match split_top(code, ';') {
            Ok(p) => p,
            Err(message) => {
                errors.push(ParseError { line, message });
                continue;
            }
        };
        for piece in pieces {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            match parse_statement(piece) {
                Ok(kind) => out.push(Statement { line, source: piece.to_string(), kind }),
                Err(message) => errors.push(ParseError { line, message }),
            }
        }
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(errors)
    }
}
