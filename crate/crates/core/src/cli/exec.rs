//! Statement execution over an environment of named values.

use std::collections::HashMap;

use serde_json::{json, Map, Value as Json};

use super::json::*;
use super::parse::{Arg, Base, Call, Statement, StatementKind};
use crate::groebner::{ideal_member, Codim, Ideal, QuotientContext};
use crate::homalg::{
    buchsbaum_eisenbud_check, cohen_macaulay_check, detect_periodicity, extend_ring, free_resolution, koszul_complex,
    minimalize, proper_intersection_check, rank_loci, tensor_complexes, BeReport, ChainComplex, CmReport,
    PeriodicityReport, ProperIntersection, ResolutionDiagnostics, DEFAULT_CAP,
};
use crate::polyring::{poly_parse, MonomialOrder, PolyMatrix, Polynomial, PolynomialRing};
use crate::residues::{
    annihilator_member, build_current_recipe, chain_homotopy, coleff_herrera, comparison_morphism,
    comparison_morphism_in_order, maximal_lifting, poincare_residue, regular_sequence_check, structure_form_shape,
    transformation_law_check, verify_homotopy, ChainMap, Component, CurrentRecipe, FormalCurrent, Homotopy,
    MeromorphicForm, RegularSequenceReport, StructureFormShape, TransformationVerdict,
};

/// Engine-wide settings supplied on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Resolution cap used when a statement gives none.
    pub cap: usize,
    /// Monomial order of rings declared without one.
    pub order: MonomialOrder,
}

impl Default for Options {
    fn default() -> Self {
        Options { cap: DEFAULT_CAP, order: MonomialOrder::GrevLex }
    }
}

/// Any value a statement can produce.
#[derive(Clone, Debug)]
pub enum Value {
    Ring(PolynomialRing),
    Quotient(QuotientContext),
    Ideal { ideal: Ideal, context: Option<QuotientContext> },
    Tuple { entries: Vec<Polynomial>, context: Option<QuotientContext> },
    Matrix(PolyMatrix),
    Poly(Polynomial),
    Complex(ChainComplex),
    ChainMap(ChainMap),
    Homotopy { homotopy: Homotopy, verified: bool },
    Bool(bool),
    Be(BeReport),
    Proper(ProperIntersection),
    Period(PeriodicityReport),
    Cm(CmReport),
    Loci(ResolutionDiagnostics),
    RegSeq(RegularSequenceReport),
    Current(FormalCurrent),
    Verdict(TransformationVerdict),
    Form(MeromorphicForm),
    Shape(StructureFormShape),
    Recipe(Box<CurrentRecipe>),
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Ring(_) => "ring",
            Value::Quotient(_) => "quotient",
            Value::Ideal { .. } => "ideal",
            Value::Tuple { .. } => "tuple",
            Value::Matrix(_) => "matrix",
            Value::Poly(_) => "poly",
            Value::Complex(_) => "complex",
            Value::ChainMap(_) => "chain_map",
            Value::Homotopy { .. } => "homotopy",
            Value::Bool(_) => "bool",
            Value::Be(_) => "be_report",
            Value::Proper(_) => "proper_intersection",
            Value::Period(_) => "periodicity",
            Value::Cm(_) => "cm_report",
            Value::Loci(_) => "rank_loci",
            Value::RegSeq(_) => "regular_sequence",
            Value::Current(_) => "current",
            Value::Verdict(_) => "transformation_verdict",
            Value::Form(_) => "meromorphic_form",
            Value::Shape(_) => "structure_form_shape",
            Value::Recipe(_) => "recipe",
        }
    }

    /// The value in the JSON schema of its type.
    pub fn to_json(&self) -> Json {
        match self {
            Value::Ring(r) => ring_to_json(r),
            Value::Quotient(z) => json!({ "ring": ring_to_json(z.ring()), "ideal": ideal_to_json(z.ideal()) }),
            Value::Ideal { ideal, .. } => ideal_to_json(ideal),
            Value::Tuple { entries, .. } => {
                json!({ "entries": entries.iter().map(|p| p.to_text()).collect::<Vec<_>>() })
            }
            Value::Matrix(m) => matrix_to_json(m),
            Value::Poly(p) => poly_to_json(p),
            Value::Complex(c) => complex_to_json(c),
            Value::ChainMap(a) => chain_map_to_json(a),
            Value::Homotopy { homotopy, .. } => homotopy_to_json(homotopy),
            Value::Bool(b) => json!(b),
            Value::Be(r) => be_report_to_json(r),
            Value::Proper(p) => proper_to_json(p),
            Value::Period(p) => periodicity_to_json(p),
            Value::Cm(c) => cm_to_json(c),
            Value::Loci(d) => loci_to_json(d),
            Value::RegSeq(r) => regseq_to_json(r),
            Value::Current(c) => current_to_json(c),
            Value::Verdict(v) => verdict_to_json(v),
            Value::Form(f) => form_to_json(f),
            Value::Shape(s) => shape_to_json(s),
            Value::Recipe(r) => recipe_to_json(r),
        }
    }

    /// Data needed to read the value back that lies outside its schema.
    pub fn metadata(&self) -> Map<String, Json> {
        let mut m = Map::new();
        let ctx = |c: Option<&QuotientContext>| c.map(|z| ideal_to_json(z.ideal())).unwrap_or(Json::Null);
        match self {
            Value::Ideal { ideal, context } => {
                m.insert("ring".into(), ring_to_json(ideal.ring()));
                m.insert("context".into(), ctx(context.as_ref()));
            }
            Value::Tuple { entries, context } => {
                m.insert("ring".into(), ring_to_json(entries[0].ring()));
                m.insert("context".into(), ctx(context.as_ref()));
            }
            Value::Matrix(a) => {
                m.insert("ring".into(), ring_to_json(a.ring()));
                m.insert("shape".into(), json!([a.nrows(), a.ncols()]));
            }
            Value::Complex(c) => {
                m.insert("ring".into(), ring_to_json(c.ring()));
                m.insert("context".into(), ctx(c.context()));
                m.insert("truncated".into(), json!(c.is_truncated()));
                m.insert("minimality".into(), json!(format!("{:?}", c.minimality())));
            }
            Value::ChainMap(a) => {
                m.insert("ring".into(), ring_to_json(a.source().ring()));
                m.insert("source_ranks".into(), json!(a.source().ranks()));
                m.insert("target_ranks".into(), json!(a.target().ranks()));
            }
            Value::Homotopy { verified, .. } => {
                m.insert("verified".into(), json!(verified));
            }
            _ => {}
        }
        m
    }

    /// Human-readable rendering for the text report.
    pub fn render(&self) -> String {
        match self {
            Value::Ring(r) => format!("{r} ({})", r.order().name()),
            Value::Quotient(z) => format!("{}/({})", z.ring(), join(z.ideal().gens())),
            Value::Ideal { ideal, context } => match context {
                Some(z) => format!("({}) over {}/({})", join(ideal.gens()), z.ring(), join(z.ideal().gens())),
                None => format!("({})", join(ideal.gens())),
            },
            Value::Tuple { entries, .. } => format!("({})", join(entries)),
            Value::Matrix(m) => render_matrix(m),
            Value::Poly(p) => p.to_text(),
            Value::Complex(c) => {
                let mut s = format!("ranks {:?}", c.ranks());
                if c.is_truncated() {
                    s.push_str(" (truncated)");
                }
                for (k, d) in c.diffs().iter().enumerate() {
                    s.push_str(&format!("\n  phi_{} = {}", k + 1, render_matrix(d)));
                }
                s
            }
            Value::ChainMap(a) => {
                let mut s = format!("chain map, {} levels", a.maps().len());
                for (k, m) in a.maps().iter().enumerate() {
                    s.push_str(&format!("\n  a_{k} = {}", render_matrix(m)));
                }
                s
            }
            Value::Homotopy { homotopy, verified } => {
                let mut s = format!("homotopy (verified: {verified})");
                for (k, m) in homotopy.maps().iter().enumerate() {
                    s.push_str(&format!("\n  s_{k} = {}", render_matrix(m)));
                }
                s
            }
            Value::Bool(b) => b.to_string(),
            Value::Be(r) => match r.failing_level {
                None => "exact (criterion holds at every level)".into(),
                Some(k) => format!("criterion fails at k = {k}"),
            },
            Value::Proper(p) => match p.witness {
                None => format!("proper ({} pairs checked)", p.checked.len()),
                Some((k, l, c)) => format!("not proper: codim {} < {} at (k, l) = ({k}, {l})", codim_text(c), k + l),
            },
            Value::Period(p) if p.detected => {
                format!("period {} from offset {} (exact: {})", p.period, p.offset, p.exact)
            }
            Value::Period(_) => "no periodicity".into(),
            Value::Cm(c) => {
                format!("cohen-macaulay: {} (length {}, codim {})", c.cohen_macaulay, c.length, codim_text(c.codim))
            }
            Value::Loci(d) => {
                let mut s = format!("{:?} ranks {:?}", d.source, d.ranks);
                for (k, (i, c)) in d.loci.iter().zip(&d.codims).enumerate() {
                    s.push_str(&format!("\n  Z_{} = V({}), codim {}", k + 1, join(i.gens()), codim_text(*c)));
                }
                s
            }
            Value::RegSeq(r) => match r.failing_index {
                None => "regular".into(),
                Some(i) => format!("not regular at index {i}: {}", r.reason.clone().unwrap_or_default()),
            },
            Value::Current(c) => format!(
                "{} current, annihilator ({}), degrees {}..{}",
                c.kind.name(),
                join(c.annihilator.gens()),
                c.degree_span.0,
                c.degree_span.1
            ),
            Value::Verdict(v) => match v {
                TransformationVerdict::NotATransformation { column } => {
                    format!("not a transformation: f_{column} != sum_i g_i A_i{column}")
                }
                TransformationVerdict::NotInvertibleAtOrigin { det } => format!("det A = {det} vanishes at the origin"),
                TransformationVerdict::Certified { det } => format!("certified, det A = {det}, (f) = (g)"),
                TransformationVerdict::LocalOnly { det } => {
                    format!("det A = {det} is a unit at the origin only; (f) != (g) globally")
                }
            },
            Value::Form(f) => f.to_text(),
            Value::Shape(s) => {
                let mut out = format!("{:?}, n = {}, d = {}, p = {}", s.purity, s.n, s.d, s.p);
                for c in &s.components {
                    out.push_str(&format!("\n  {c:?}"));
                }
                for l in &s.locus_checks {
                    out.push_str(&format!("\n  {l:?}"));
                }
                out
            }
            Value::Recipe(r) => format!(
                "J~ = ({}); E ranks {:?}; F ranks {:?}; degrees {}..{}",
                join(r.j_lift.gens()),
                r.e.ranks(),
                r.f.ranks(),
                r.current.degree_span.0,
                r.current.degree_span.1
            ),
        }
    }
}

fn codim_text(c: Codim) -> String {
    match c {
        Codim::Finite(k) => k.to_string(),
        Codim::Infinite => "infinite".into(),
    }
}

fn join(ps: &[Polynomial]) -> String {
    ps.iter().map(|p| p.to_text()).collect::<Vec<_>>().join(", ")
}

fn render_matrix(m: &PolyMatrix) -> String {
    let rows: Vec<String> = m.rows().iter().map(|r| format!("[{}]", join(r))).collect();
    format!("[{}]", rows.join(", "))
}

/// Outcome of one statement.
#[derive(Clone, Debug)]
pub struct Entry {
    pub line: usize,
    pub source: String,
    pub label: String,
    pub name: Option<String>,
    pub outcome: Result<Value, String>,
}

impl Entry {
    pub fn to_json(&self) -> Json {
        let mut m = Map::new();
        m.insert("line".into(), json!(self.line));
        m.insert("statement".into(), json!(self.source));
        m.insert("command".into(), json!(self.label));
        m.insert("name".into(), json!(self.name));
        match &self.outcome {
            Ok(v) => {
                m.insert("type".into(), json!(v.type_name()));
                m.insert("value".into(), v.to_json());
                let meta = v.metadata();
                if !meta.is_empty() {
                    m.insert("meta".into(), Json::Object(meta));
                }
            }
            Err(e) => {
                m.insert("error".into(), json!(e));
            }
        }
        Json::Object(m)
    }
}

enum Slot {
    Ready(Value),
    Failed(usize),
}

pub(super) struct Executor {
    options: Options,
    env: HashMap<String, Slot>,
    last: Option<Slot>,
    current: Option<PolynomialRing>,
}

type Res<T> = Result<T, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

impl Executor {
    pub(super) fn new(options: Options) -> Self {
        Executor { options, env: HashMap::new(), last: None, current: None }
    }

    pub(super) fn run(&mut self, st: &Statement) -> Entry {
        let outcome = self.execute(&st.kind);
        let slot = match &outcome {
            Ok(v) => Slot::Ready(v.clone()),
            Err(_) => Slot::Failed(st.line),
        };
        if let Some(name) = st.kind.binding() {
            let copy = match &slot {
                Slot::Ready(v) => Slot::Ready(v.clone()),
                Slot::Failed(l) => Slot::Failed(*l),
            };
            self.env.insert(name.to_string(), copy);
        }
        if let Ok(v) = &outcome {
            match v {
                Value::Ring(r) => self.current = Some(r.clone()),
                Value::Quotient(z) => self.current = Some(z.ring().clone()),
                _ => {}
            }
        }
        self.last = Some(slot);
        Entry {
            line: st.line,
            source: st.source.clone(),
            label: st.kind.label().to_string(),
            name: st.kind.binding().map(str::to_string),
            outcome,
        }
    }

    fn lookup(&self, name: &str) -> Res<Option<&Value>> {
        let slot = if name == "last" { self.last.as_ref() } else { self.env.get(name) };
        match slot {
            None if name == "last" => Err("`last` used before any statement".into()),
            None => Ok(None),
            Some(Slot::Ready(v)) => Ok(Some(v)),
            Some(Slot::Failed(l)) => Err(format!("`{name}` is unavailable because line {l} failed")),
        }
    }

    fn bound(&self, name: &str) -> Res<&Value> {
        self.lookup(name)?.ok_or_else(|| format!("undefined name `{name}`"))
    }

    fn current_ring(&self) -> Res<PolynomialRing> {
        self.current.clone().ok_or_else(|| "no ring declared yet".into())
    }

    fn literal_ring(&self, vars: &[String], order: Option<MonomialOrder>) -> Res<PolynomialRing> {
        PolynomialRing::new(vars, order.unwrap_or(self.options.order)).map_err(err)
    }

    /// Ring and context named by an identifier (ring or quotient).
    fn setting_named(&self, name: &str) -> Res<(PolynomialRing, Option<QuotientContext>)> {
        match self.bound(name)? {
            Value::Ring(r) => Ok((r.clone(), None)),
            Value::Quotient(z) => Ok((z.ring().clone(), Some(z.clone()))),
            v => Err(format!("`{name}` is a {}, expected a ring or quotient", v.type_name())),
        }
    }

    fn setting_of(&self, base: Option<&str>) -> Res<(PolynomialRing, Option<QuotientContext>)> {
        match base {
            Some(b) => self.setting_named(b),
            None => Ok((self.current_ring()?, None)),
        }
    }

    fn setting_arg(&self, a: &Arg) -> Res<(PolynomialRing, Option<QuotientContext>)> {
        match a {
            Arg::Ident(n) => self.setting_named(n),
            Arg::Ring { vars, order } => Ok((self.literal_ring(vars, *order)?, None)),
            Arg::Quotient { vars, order, gens } => {
                let r = self.literal_ring(vars, *order)?;
                let z = QuotientContext::from_gens(&r, parse_polys(gens, &r)?).map_err(err)?;
                Ok((r, Some(z)))
            }
            Arg::Over(inner) => self.setting_arg(inner),
            _ => Err("expected a ring or quotient".into()),
        }
    }

    fn ideal_arg(&self, a: &Arg, hint: Option<&PolynomialRing>) -> Res<(Ideal, Option<QuotientContext>)> {
        match a {
            Arg::Ident(n) => match self.bound(n)? {
                Value::Ideal { ideal, context } => Ok((ideal.clone(), context.clone())),
                Value::Tuple { entries, context } => {
                    Ok((Ideal::new(entries[0].ring(), entries.clone()).map_err(err)?, context.clone()))
                }
                Value::Quotient(z) => Ok((z.ideal().clone(), None)),
                v => Err(format!("`{n}` is a {}, expected an ideal", v.type_name())),
            },
            Arg::Gens { base, gens } => {
                let (r, ctx) = match (base, hint) {
                    (None, Some(h)) => (h.clone(), None),
                    _ => self.setting_of(base.as_deref())?,
                };
                Ok((Ideal::new(&r, parse_polys(gens, &r)?).map_err(err)?, ctx))
            }
            _ => Err("expected an ideal".into()),
        }
    }

    fn tuple_arg(&self, a: &Arg, hint: Option<&PolynomialRing>) -> Res<(Vec<Polynomial>, Option<QuotientContext>)> {
        match a {
            Arg::Ident(n) => match self.bound(n)? {
                Value::Tuple { entries, context } => Ok((entries.clone(), context.clone())),
                Value::Ideal { ideal, context } => Ok((ideal.gens().to_vec(), context.clone())),
                v => Err(format!("`{n}` is a {}, expected a tuple", v.type_name())),
            },
            Arg::Gens { base, gens } => {
                let (r, ctx) = match (base, hint) {
                    (None, Some(h)) => (h.clone(), None),
                    _ => self.setting_of(base.as_deref())?,
                };
                if gens.is_empty() {
                    return Err("empty tuple".into());
                }
                Ok((parse_polys(gens, &r)?, ctx))
            }
            _ => Err("expected a tuple".into()),
        }
    }

    fn poly_arg(&self, a: &Arg, ring: &PolynomialRing) -> Res<Polynomial> {
        match a {
            Arg::Ident(n) => match self.lookup(n)? {
                Some(Value::Poly(p)) => p.to_ring(ring).map_err(err),
                Some(v) if ring.var_index(n).is_none() => {
                    Err(format!("`{n}` is a {}, expected a polynomial", v.type_name()))
                }
                _ => poly_parse(n, ring).map_err(err),
            },
            Arg::Expr(s) => poly_parse(s, ring).map_err(err),
            Arg::Gens { base: None, gens } if gens.len() == 1 => poly_parse(&gens[0], ring).map_err(err),
            _ => Err("expected a polynomial".into()),
        }
    }

    fn complex_arg(&self, a: &Arg) -> Res<ChainComplex> {
        match a {
            Arg::Ident(n) => match self.bound(n)? {
                Value::Complex(c) => Ok(c.clone()),
                v => Err(format!("`{n}` is a {}, expected a complex", v.type_name())),
            },
            _ => Err("expected a complex".into()),
        }
    }

    fn chain_map_arg(&self, a: &Arg) -> Res<ChainMap> {
        match a {
            Arg::Ident(n) => match self.bound(n)? {
                Value::ChainMap(m) => Ok(m.clone()),
                v => Err(format!("`{n}` is a {}, expected a chain map", v.type_name())),
            },
            _ => Err("expected a chain map".into()),
        }
    }

    fn quotient_arg(&self, a: &Arg) -> Res<QuotientContext> {
        match self.setting_arg(a)? {
            (r, None) => Ok(QuotientContext::new(Ideal::zero(&r))),
            (_, Some(z)) => Ok(z),
        }
    }

    fn matrix_arg(&self, a: &Arg, ring: &PolynomialRing) -> Res<PolyMatrix> {
        match a {
            Arg::Ident(n) => match self.bound(n)? {
                Value::Matrix(m) => m.to_ring(ring).map_err(err),
                v => Err(format!("`{n}` is a {}, expected a matrix", v.type_name())),
            },
            Arg::Matrix { base, rows } => {
                let r = match base {
                    Some(b) => self.setting_named(b)?.0,
                    None => ring.clone(),
                };
                build_matrix(rows, &r)
            }
            _ => Err("expected a matrix".into()),
        }
    }

    fn execute(&mut self, kind: &StatementKind) -> Res<Value> {
        match kind {
            StatementKind::Ring { vars, order, .. } => Ok(Value::Ring(self.literal_ring(vars, *order)?)),
            StatementKind::Quotient { base, gens, .. } => {
                let r = match base {
                    Base::Named(n) => match self.bound(n)? {
                        Value::Ring(r) => r.clone(),
                        v => return Err(format!("`{n}` is a {}, expected a ring", v.type_name())),
                    },
                    Base::Literal { vars, order } => self.literal_ring(vars, *order)?,
                };
                Ok(Value::Quotient(QuotientContext::from_gens(&r, parse_polys(gens, &r)?).map_err(err)?))
            }
            StatementKind::Ideal { base, gens, .. } => {
                let (r, context) = self.setting_of(base.as_deref())?;
                let ideal = Ideal::new(&r, parse_polys(gens, &r)?).map_err(err)?;
                Ok(Value::Ideal { ideal, context: context.filter(|z| !z.is_ambient()) })
            }
            StatementKind::Tuple { base, gens, .. } => {
                let (r, context) = self.setting_of(base.as_deref())?;
                Ok(Value::Tuple { entries: parse_polys(gens, &r)?, context: context.filter(|z| !z.is_ambient()) })
            }
            StatementKind::Matrix { base, rows, .. } => {
                let (r, _) = self.setting_of(base.as_deref())?;
                Ok(Value::Matrix(build_matrix(rows, &r)?))
            }
            StatementKind::Poly { base, expr, .. } => {
                let (r, _) = self.setting_of(base.as_deref())?;
                Ok(Value::Poly(poly_parse(expr, &r).map_err(err)?))
            }
            StatementKind::Command { call, .. } => self.command(call),
        }
    }

    fn command(&mut self, call: &Call) -> Res<Value> {
        let mut pos: Vec<&Arg> = Vec::new();
        let mut over: Option<&Arg> = None;
        let mut kw: Vec<(&str, &str)> = Vec::new();
        let mut comps: Vec<(&Arg, usize)> = Vec::new();
        for a in &call.args {
            match a {
                Arg::Over(inner) => {
                    if over.replace(inner).is_some() {
                        return Err("`over` given twice".into());
                    }
                }
                Arg::Keyword(k, v) => kw.push((k, v)),
                Arg::Component(w, d) => comps.push((w, *d)),
                other => pos.push(other),
            }
        }
        let name = call.name.as_str();
        let allowed: &[&str] = match name {
            "resolve" => &["cap", "minimal"],
            "compare" => &["order"],
            "proper-check" => &["p", "q"],
            _ => &[],
        };
        if let Some((k, _)) = kw.iter().find(|(k, _)| !allowed.contains(k)) {
            return Err(format!("`{name}` takes no keyword `{k}`"));
        }
        if !comps.is_empty() && name != "shape" {
            return Err(format!("`{name}` takes no `ideal:dim` components"));
        }
        let kwarg = |k: &str| kw.iter().find(|(key, _)| *key == k).map(|(_, v)| *v);
        let usize_kw = |k: &str, default: usize| -> Res<usize> {
            match kwarg(k) {
                Some(v) => v.parse::<usize>().map_err(|_| format!("`{k}` must be a non-negative integer, found `{v}`")),
                None => Ok(default),
            }
        };
        let arity = |n: usize| -> Res<()> {
            if pos.len() == n {
                Ok(())
            } else {
                Err(format!("`{name}` takes {n} argument(s), found {}", pos.len()))
            }
        };
        let setting = match over {
            Some(o) => Some(self.setting_arg(o)?),
            None => None,
        };
        let hint = setting.as_ref().map(|s| &s.0);
        let over_ctx = |own: Option<QuotientContext>| -> Option<QuotientContext> {
            match &setting {
                Some((_, ctx)) => ctx.clone(),
                None => own,
            }
        };
        match name {
            "resolve" => {
                arity(1)?;
                let (ideal, own) = self.ideal_arg(pos[0], hint)?;
                let ctx = over_ctx(own);
                let cap = usize_kw("cap", self.options.cap)?;
                let minimal = match kwarg("minimal") {
                    None | Some("true") => true,
                    Some("false") => false,
                    Some(v) => return Err(format!("`minimal` must be true or false, found `{v}`")),
                };
                Ok(Value::Complex(free_resolution(&ideal, ctx.as_ref(), cap, minimal).map_err(err)?))
            }
            "minimalize" => {
                arity(1)?;
                Ok(Value::Complex(minimalize(&self.complex_arg(pos[0])?).map_err(err)?))
            }
            "koszul" => {
                arity(1)?;
                let (t, own) = self.tuple_arg(pos[0], hint)?;
                Ok(Value::Complex(koszul_complex(&t, over_ctx(own).as_ref()).map_err(err)?))
            }
            "tensor" => {
                arity(2)?;
                let (c, d) = (self.complex_arg(pos[0])?, self.complex_arg(pos[1])?);
                Ok(Value::Complex(tensor_complexes(&c, &d).map_err(err)?))
            }
            "extend" => {
                arity(2)?;
                let c = self.complex_arg(pos[0])?;
                let (r, ctx) = self.setting_arg(pos[1])?;
                if ctx.is_some() {
                    return Err("`extend` takes a polynomial ring".into());
                }
                Ok(Value::Complex(extend_ring(&c, &r).map_err(err)?))
            }
            "lift" => {
                arity(1)?;
                let (j, own) = self.ideal_arg(pos[0], hint)?;
                let z = over_ctx(own).ok_or("`lift` needs an ideal over a quotient (or `over Z`)")?;
                Ok(Value::Ideal { ideal: maximal_lifting(&j, &z).map_err(err)?, context: None })
            }
            "compare" => {
                arity(2)?;
                let (f, e) = (self.complex_arg(pos[0])?, self.complex_arg(pos[1])?);
                let a = match kwarg("order") {
                    Some(o) => {
                        let o: MonomialOrder = o.parse().map_err(|e| format!("unknown order `{o}`: {e}"))?;
                        comparison_morphism_in_order(&f, &e, o)
                    }
                    None => comparison_morphism(&f, &e),
                };
                Ok(Value::ChainMap(a.map_err(err)?))
            }
            "homotopy" => {
                arity(2)?;
                let (a, b) = (self.chain_map_arg(pos[0])?, self.chain_map_arg(pos[1])?);
                let s = chain_homotopy(&a, &b).map_err(err)?;
                let verified = verify_homotopy(&a, &b, &s).map_err(err)?;
                Ok(Value::Homotopy { homotopy: s, verified })
            }
            "be-check" => {
                arity(1)?;
                Ok(Value::Be(buchsbaum_eisenbud_check(&self.complex_arg(pos[0])?).map_err(err)?))
            }
            "proper-check" => {
                arity(2)?;
                let (c, d) = (self.complex_arg(pos[0])?, self.complex_arg(pos[1])?);
                let (p, q) = (usize_kw("p", 1)?, usize_kw("q", 1)?);
                Ok(Value::Proper(proper_intersection_check(&c, &d, p, q).map_err(err)?))
            }
            "period" => {
                arity(1)?;
                Ok(Value::Period(detect_periodicity(&self.complex_arg(pos[0])?).map_err(err)?))
            }
            "cm-check" => {
                arity(1)?;
                let (i, ctx) = self.ideal_arg(pos[0], hint)?;
                let i = match ctx {
                    Some(z) => z.lift_ideal(i.gens()).map_err(err)?,
                    None => i,
                };
                Ok(Value::Cm(cohen_macaulay_check(&i).map_err(err)?))
            }
            "loci" => {
                arity(1)?;
                Ok(Value::Loci(rank_loci(&self.complex_arg(pos[0])?).map_err(err)?))
            }
            "regseq" => {
                arity(1)?;
                let (t, own) = self.tuple_arg(pos[0], hint)?;
                Ok(Value::RegSeq(regular_sequence_check(&t, over_ctx(own).as_ref()).map_err(err)?))
            }
            "ch" => {
                arity(1)?;
                let (t, own) = self.tuple_arg(pos[0], hint)?;
                Ok(Value::Current(coleff_herrera(&t, over_ctx(own).as_ref()).map_err(err)?))
            }
            "translaw" => {
                arity(3)?;
                let (f, own) = self.tuple_arg(pos[0], hint)?;
                let ring = f[0].ring().clone();
                let (g, _) = self.tuple_arg(pos[1], Some(&ring))?;
                let a = self.matrix_arg(pos[2], &ring)?;
                Ok(Value::Verdict(transformation_law_check(&f, &g, &a, over_ctx(own).as_ref()).map_err(err)?))
            }
            "presidue" => {
                arity(2)?;
                let h = match pos[0] {
                    Arg::Ident(n) if matches!(self.lookup(n)?, Some(Value::Quotient(_))) => {
                        let z = self.quotient_arg(pos[0])?;
                        match z.ideal().gens() {
                            [h] => h.clone(),
                            _ => return Err(format!("`{n}` is not a hypersurface (one generator)")),
                        }
                    }
                    a => {
                        let r = match hint {
                            Some(r) => r.clone(),
                            None => self.current_ring()?,
                        };
                        self.poly_arg(a, &r)?
                    }
                };
                let var = match pos[1] {
                    Arg::Ident(v) => v,
                    _ => return Err("the distinguished variable must be a variable name".into()),
                };
                Ok(Value::Form(poincare_residue(&h, var).map_err(err)?))
            }
            "shape" => {
                arity(1)?;
                let z = self.quotient_arg(pos[0])?;
                let mut decomposition = Vec::with_capacity(comps.len());
                for (w, dim) in comps {
                    let (ideal, _) = self.ideal_arg(w, Some(z.ring()))?;
                    decomposition.push(Component { ideal, dim });
                }
                let d = if decomposition.is_empty() { None } else { Some(decomposition.as_slice()) };
                Ok(Value::Shape(structure_form_shape(&z, d).map_err(err)?))
            }
            "recipe" => {
                arity(2)?;
                let z = self.quotient_arg(pos[0])?;
                let (j, own) = self.ideal_arg(pos[1], Some(z.ring()))?;
                if let Some(c) = own {
                    if c != z {
                        return Err("the ideal is declared over a different quotient".into());
                    }
                }
                Ok(Value::Recipe(Box::new(build_current_recipe(&z, &j).map_err(err)?)))
            }
            "annmember" => {
                arity(2)?;
                let target = match pos[0] {
                    Arg::Ident(n) => self.bound(n)?,
                    _ => return Err("expected a recipe or current".into()),
                };
                match target {
                    Value::Recipe(r) => {
                        let g = self.poly_arg(pos[1], r.z.ring())?;
                        Ok(Value::Bool(annihilator_member(r, &g).map_err(err)?))
                    }
                    Value::Current(c) => {
                        let g = self.poly_arg(pos[1], c.annihilator.ring())?;
                        Ok(Value::Bool(c.annihilates(&g).map_err(err)?))
                    }
                    v => Err(format!("expected a recipe or current, found a {}", v.type_name())),
                }
            }
            "member" => {
                arity(2)?;
                let (i, own) = self.ideal_arg(pos[1], hint)?;
                let g = self.poly_arg(pos[0], i.ring())?;
                Ok(Value::Bool(ideal_member(&g, &i, over_ctx(own).as_ref()).map_err(err)?))
            }
            other => Err(format!("unknown command `{other}`")),
        }
    }
}

fn parse_polys(gens: &[String], ring: &PolynomialRing) -> Res<Vec<Polynomial>> {
    gens.iter().map(|g| poly_parse(g, ring).map_err(|e| format!("in `{g}`: {e}"))).collect()
}

fn build_matrix(rows: &[Vec<String>], ring: &PolynomialRing) -> Res<PolyMatrix> {
    let rows = rows.iter().map(|r| parse_polys(r, ring)).collect::<Res<Vec<_>>>()?;
    PolyMatrix::from_rows(ring, rows).map_err(err)
}
