use std::fmt;
use std::sync::{Arc, OnceLock};

use super::engine::{Engine, MElem, ModuleOrder};
use super::GroebnerError;
use crate::polyring::{MonomialOrder, PolyMatrix, PolyVector, Polynomial, PolynomialRing};

/// A reduced Groebner basis. Only the Buchberger routine constructs one, so a value of this
/// type is always a genuine Groebner basis for its ring's order.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolynomialRing,
    elems: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elems
    }

    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0].is_unit()
    }

    /// Normal form of `f` (converted into the basis ring).
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        let f = f.to_ring(&self.ring)?;
        if self.elems.is_empty() || f.is_zero() {
            return Ok(f);
        }
        let eng = Engine::new(&self.ring, ModuleOrder::PositionOverTerm);
        let basis: Vec<MElem> = self.elems.iter().map(|g| eng.from_poly(g, 0)).collect();
        let r = eng.reduce(&eng.from_poly(&f, 0), &basis);
        Ok(eng.to_polys(&r, 0, 1).pop().expect("one entry"))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<crate::polyring::Monomial> {
        self.elems.iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    /// Every S-pair reduces to zero.
    pub fn certify(&self) -> bool {
        let eng = Engine::new(&self.ring, ModuleOrder::PositionOverTerm);
        let basis: Vec<MElem> = self.elems.iter().map(|g| eng.from_poly(g, 0)).collect();
        eng.is_groebner(&basis)
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.elems.iter().map(|p| p.to_string())).finish()
    }
}

/// Reduced Groebner basis of the ideal generated by `gens` under `order`.
pub fn groebner_basis(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::EmptyGenerators)?;
    let ring = first.ring().with_order(order);
    let eng = Engine::new(&ring, ModuleOrder::PositionOverTerm);
    let mut elems = Vec::with_capacity(gens.len());
    for g in gens {
        if !g.ring().same_vars(first.ring()) {
            return Err(crate::polyring::PolyError::RingMismatch(first.ring().to_string(), g.ring().to_string()).into());
        }
        elems.push(eng.from_poly(&g.to_ring(&ring)?, 0));
    }
    let basis = eng.groebner(elems, true);
    let elems = basis.iter().map(|e| eng.to_polys(e, 0, 1).pop().expect("one entry")).collect();
    Ok(GroebnerBasis { ring, elems })
}

/// An ideal given by generators, with its reduced Groebner basis (ring order) computed on demand.
#[derive(Clone)]
pub struct Ideal {
    ring: PolynomialRing,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &PolynomialRing, gens: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        for g in &gens {
            g.ring().ensure_same(ring)?;
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    pub fn zero(ring: &PolynomialRing) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &PolynomialRing) -> Self {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)], gb: OnceLock::new() }
    }

    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            if self.gens.is_empty() {
                GroebnerBasis { ring: self.ring.clone(), elems: Vec::new() }
            } else {
                groebner_basis(&self.gens, self.ring.order()).expect("generators share the ideal's ring")
            }
        })
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        f.ring().ensure_same(&self.ring)?;
        self.groebner().contains(f)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        f.ring().ensure_same(&self.ring)?;
        self.groebner().reduce(f)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, GroebnerError> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, by mutual membership.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool, GroebnerError> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, GroebnerError> {
        other.ring.ensure_same(&self.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<Ideal, GroebnerError> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// The same generators re-expressed in `target`.
    pub fn to_ring(&self, target: &PolynomialRing) -> Result<Ideal, GroebnerError> {
        let gens = self.gens.iter().map(|g| g.to_ring(target)).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(target, gens)
    }
}

impl PartialEq for Ideal {
    /// Generator lists compared literally; use [`Ideal::same_ideal`] for ideal equality.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

struct ContextInner {
    ideal: Ideal,
}

/// The quotient ring `O_Z = R / I_Z`, carried as the ambient ring plus the reduced
/// Groebner basis of `I_Z`. All arithmetic on `O_Z` reduces through it.
#[derive(Clone)]
pub struct QuotientContext(Arc<ContextInner>);

impl QuotientContext {
    pub fn new(ideal: Ideal) -> Self {
        ideal.groebner();
        QuotientContext(Arc::new(ContextInner { ideal }))
    }

    pub fn from_gens(ring: &PolynomialRing, gens: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        Ok(Self::new(Ideal::new(ring, gens)?))
    }

    pub fn ring(&self) -> &PolynomialRing {
        self.0.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.0.ideal
    }

    pub fn basis(&self) -> &GroebnerBasis {
        self.0.ideal.groebner()
    }

    /// Normal form modulo `I_Z`; idempotent.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        f.ring().ensure_same(self.ring())?;
        self.basis().reduce(f)
    }

    pub fn is_zero(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn reduce_vector(&self, v: &PolyVector) -> Result<PolyVector, GroebnerError> {
        let entries = v.entries().iter().map(|p| self.reduce(p)).collect::<Result<Vec<_>, _>>()?;
        Ok(PolyVector::new(self.ring(), entries)?)
    }

    pub fn reduce_matrix(&self, m: &PolyMatrix) -> Result<PolyMatrix, GroebnerError> {
        m.try_map_entries(|p| self.reduce(p))
    }

    /// The ambient ideal `J + I_Z` whose image in `O_Z` is the ideal generated by `gens`.
    pub fn lift_ideal(&self, gens: &[Polynomial]) -> Result<Ideal, GroebnerError> {
        let mut all = gens.to_vec();
        all.extend(self.ideal().gens().iter().cloned());
        Ideal::new(self.ring(), all)
    }

    /// Image in `O_Z`: generators reduced modulo `I_Z`, zeros dropped.
    pub fn image(&self, ideal: &Ideal) -> Result<Ideal, GroebnerError> {
        let gens = ideal.gens().iter().map(|g| self.reduce(g)).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(self.ring(), gens)
    }

    /// True when `I_Z` is the zero ideal.
    pub fn is_ambient(&self) -> bool {
        self.0.ideal.is_zero()
    }
}

impl PartialEq for QuotientContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.ring() == other.ring() && self.basis().elements() == other.basis().elements())
    }
}

impl fmt::Display for QuotientContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.ring(), self.ideal())
    }
}

impl fmt::Debug for QuotientContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientContext({self})")
    }
}

/// Normal form of `f` with respect to a Groebner basis, optionally inside a quotient ring.
/// In a quotient context the remainder is taken modulo `basis + I_Z`.
pub fn normal_form(
    f: &Polynomial,
    basis: &GroebnerBasis,
    context: Option<&QuotientContext>,
) -> Result<Polynomial, GroebnerError> {
    match context {
        None => basis.reduce(f),
        Some(ctx) => {
            let f = ctx.reduce(f)?;
            let mut gens = basis.elements().to_vec();
            gens.extend(ctx.basis().elements().iter().cloned());
            if gens.is_empty() {
                return Ok(f);
            }
            let combined = groebner_basis(&gens, basis.order())?;
            combined.reduce(&f)
        }
    }
}

/// Ideal membership, optionally in `O_Z`.
pub fn ideal_member(f: &Polynomial, ideal: &Ideal, context: Option<&QuotientContext>) -> Result<bool, GroebnerError> {
    match context {
        None => ideal.contains(f),
        Some(ctx) => ctx.lift_ideal(ideal.gens())?.contains(f),
    }
}
