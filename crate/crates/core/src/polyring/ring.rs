use std::fmt;
use std::sync::Arc;

use super::{MonomialOrder, PolyError};

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingInner {
    vars: Vec<String>,
    order: MonomialOrder,
}

/// `Q[x_1, ..., x_n]` with a fixed variable list and the order its polynomials are kept sorted by.
///
/// Two rings are the same ring when they have the same variable names and the same order.
#[derive(Clone)]
pub struct PolynomialRing(Arc<RingInner>);

impl PolynomialRing {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<Self, PolyError> {
        if vars.is_empty() {
            return Err(PolyError::InvalidRing("a ring needs at least one variable".into()));
        }
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            if !is_identifier(v) {
                return Err(PolyError::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if names.iter().any(|n| n == v) {
                return Err(PolyError::InvalidRing(format!("duplicate variable `{v}`")));
            }
            names.push(v.to_string());
        }
        if let MonomialOrder::Elimination { block } = order {
            if block > names.len() {
                return Err(PolyError::InvalidRing("elimination block larger than ring".into()));
            }
        }
        Ok(PolynomialRing(Arc::new(RingInner { vars: names, order })))
    }

    /// Grevlex ring, the default order.
    pub fn grevlex<S: AsRef<str>>(vars: &[S]) -> Result<Self, PolyError> {
        Self::new(vars, MonomialOrder::GrevLex)
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> PolynomialRing {
        if order == self.order() {
            return self.clone();
        }
        PolynomialRing(Arc::new(RingInner { vars: self.0.vars.clone(), order }))
    }

    pub fn same_vars(&self, other: &PolynomialRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.vars == other.0.vars
    }

    /// True when every variable of `self` is a variable of `other`.
    pub fn is_subring_of(&self, other: &PolynomialRing) -> bool {
        self.vars().iter().all(|v| other.var_index(v).is_some())
    }

    pub fn ensure_same(&self, other: &PolynomialRing) -> Result<(), PolyError> {
        if self == other {
            Ok(())
        } else {
            Err(PolyError::RingMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl PartialEq for PolynomialRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for PolynomialRing {}

impl fmt::Display for PolynomialRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.0.vars.join(","))
    }
}

impl fmt::Debug for PolynomialRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self, self.order().name())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
