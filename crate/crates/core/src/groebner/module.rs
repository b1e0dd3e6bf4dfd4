//! Submodules of free modules: Groebner bases, membership, syzygies and lifting.

use super::engine::{Engine, MElem, MTerm, ModuleOrder};
use super::{GroebnerError, QuotientContext};
use crate::polyring::{Monomial, PolyMatrix, PolyVector, Polynomial, PolynomialRing};

/// Generators of a submodule of `R^rank`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmoduleBasis {
    ring: PolynomialRing,
    rank: usize,
    gens: Vec<PolyVector>,
}

impl SubmoduleBasis {
    pub fn new(ring: &PolynomialRing, rank: usize, gens: Vec<PolyVector>) -> Result<Self, GroebnerError> {
        for g in &gens {
            g.ring().ensure_same(ring)?;
            if g.rank() != rank {
                return Err(crate::polyring::PolyError::RankMismatch { expected: rank, found: g.rank() }.into());
            }
        }
        Ok(SubmoduleBasis { ring: ring.clone(), rank, gens })
    }

    /// The column space of a matrix.
    pub fn from_columns(m: &PolyMatrix) -> Self {
        SubmoduleBasis { ring: m.ring().clone(), rank: m.nrows(), gens: m.columns() }
    }

    /// An ideal seen as a submodule of `R^1`.
    pub fn from_polys(ring: &PolynomialRing, gens: &[Polynomial]) -> Result<Self, GroebnerError> {
        let gens = gens.iter().map(|g| PolyVector::new(ring, vec![g.clone()])).collect::<Result<Vec<_>, _>>()?;
        Ok(SubmoduleBasis { ring: ring.clone(), rank: 1, gens })
    }

    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[PolyVector] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators as the columns of a `rank x len` matrix.
    pub fn to_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_columns(&self.ring, self.rank, &self.gens).expect("ranks checked on construction")
    }
}

/// Reduced Groebner basis of a submodule under position-over-term.
#[derive(Clone, Debug)]
pub struct ModuleGroebnerBasis {
    ring: PolynomialRing,
    rank: usize,
    elems: Vec<MElem>,
}

impl ModuleGroebnerBasis {
    /// Groebner basis of `sub`, plus `I_Z * R^rank` when a context is given.
    pub fn new(sub: &SubmoduleBasis, context: Option<&QuotientContext>) -> Result<Self, GroebnerError> {
        let eng = Engine::new(&sub.ring, ModuleOrder::PositionOverTerm);
        let mut gens: Vec<MElem> = sub.gens.iter().map(|g| eng.elem_from_vector(g)).collect();
        if let Some(ctx) = context {
            ctx.ring().ensure_same(&sub.ring)?;
            for h in ctx.basis().elements() {
                for c in 0..sub.rank {
                    gens.push(eng.from_poly(h, c));
                }
            }
        }
        let elems = eng.groebner(gens, sub.rank == 1);
        Ok(ModuleGroebnerBasis { ring: sub.ring.clone(), rank: sub.rank, elems })
    }

    pub fn elements(&self) -> Vec<PolyVector> {
        let eng = Engine::new(&self.ring, ModuleOrder::PositionOverTerm);
        self.elems
            .iter()
            .map(|e| PolyVector::new(&self.ring, eng.to_polys(e, 0, self.rank)).expect("same ring"))
            .collect()
    }

    pub fn reduce(&self, v: &PolyVector) -> Result<PolyVector, GroebnerError> {
        v.ring().ensure_same(&self.ring)?;
        if v.rank() != self.rank {
            return Err(crate::polyring::PolyError::RankMismatch { expected: self.rank, found: v.rank() }.into());
        }
        let eng = Engine::new(&self.ring, ModuleOrder::PositionOverTerm);
        let r = eng.reduce(&eng.elem_from_vector(v), &self.elems);
        Ok(PolyVector::new(&self.ring, eng.to_polys(&r, 0, self.rank))?)
    }

    pub fn contains(&self, v: &PolyVector) -> Result<bool, GroebnerError> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn certify(&self) -> bool {
        Engine::new(&self.ring, ModuleOrder::PositionOverTerm).is_groebner(&self.elems)
    }
}

/// Leading (monomial, component) of each generator under position-over-term.
fn pot_leads(gens: &[PolyVector]) -> Vec<Option<(Monomial, usize)>> {
    gens.iter()
        .map(|g| {
            g.entries()
                .iter()
                .position(|p| !p.is_zero())
                .map(|c| (g.get(c).leading_monomial().cloned().expect("nonzero"), c))
        })
        .collect()
}

/// Groebner basis of the augmented module spanned by `(g_i | e_i)` (and `(h e_c | 0)` for the
/// relations of a quotient context) under an order where the first `rank` components dominate.
/// Elements with vanishing upper part are exactly a Groebner basis of the syzygies.
struct Augmented {
    eng: Engine,
    rank: usize,
    ngens: usize,
    basis: Vec<MElem>,
}

impl Augmented {
    fn new(gens: &[PolyVector], rank: usize, ring: &PolynomialRing, context: Option<&QuotientContext>) -> Self {
        let frame = ModuleOrder::schreyer(ModuleOrder::PositionOverTerm, pot_leads(gens));
        let order =
            ModuleOrder::Split { at: rank, upper: Box::new(ModuleOrder::PositionOverTerm), lower: Box::new(frame) };
        let eng = Engine::new(ring, order);
        let mut elems = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let mut terms = eng.from_vector(g.entries(), 0);
            terms.push(MTerm { m: Monomial::one(ring.nvars()), c: rank + i, k: num_traits::One::one() });
            elems.push(eng.from_terms(terms));
        }
        if let Some(ctx) = context {
            for h in ctx.basis().elements() {
                for c in 0..rank {
                    elems.push(eng.from_poly(h, c));
                }
            }
        }
        let basis = eng.groebner(elems, false);
        Augmented { eng, rank, ngens: gens.len(), basis }
    }

    fn syzygies(&self) -> Vec<Vec<Polynomial>> {
        self.basis
            .iter()
            .filter(|e| e.lead().map(|t| t.c >= self.rank).unwrap_or(false))
            .map(|e| self.eng.to_polys(e, self.rank, self.rank + self.ngens))
            .collect()
    }

    fn lift(&self, v: &PolyVector) -> Option<Vec<Polynomial>> {
        let f = self.eng.from_terms(self.eng.from_vector(v.entries(), 0));
        let r = self.eng.reduce(&f, &self.basis);
        if r.terms.iter().any(|t| t.c < self.rank) {
            return None;
        }
        let coeffs = self.eng.to_polys(&r, self.rank, self.rank + self.ngens);
        Some(coeffs.into_iter().map(|p| -p).collect())
    }
}

fn reduce_in(context: Option<&QuotientContext>, v: &PolyVector) -> Result<PolyVector, GroebnerError> {
    match context {
        Some(ctx) => ctx.reduce_vector(v),
        None => Ok(v.clone()),
    }
}

/// Generators of the syzygy module of `gens` (modulo `I_Z` when a context is given).
///
/// The returned vectors `s` satisfy `G s = 0` (resp. `G s in I_Z R^r`), generate all such
/// relations, are pruned to an irredundant set, and are scaled monic with respect to the
/// order induced by the leading terms of `gens`.
pub fn syzygies(gens: &SubmoduleBasis, context: Option<&QuotientContext>) -> Result<SubmoduleBasis, GroebnerError> {
    let ring = gens.ring().clone();
    if let Some(ctx) = context {
        ctx.ring().ensure_same(&ring)?;
    }
    let reduced: Vec<PolyVector> = gens.gens().iter().map(|g| reduce_in(context, g)).collect::<Result<_, _>>()?;
    let s = reduced.len();
    if s == 0 {
        return SubmoduleBasis::new(&ring, 0, Vec::new());
    }
    let aug = Augmented::new(&reduced, gens.rank(), &ring, context);
    let mut found: Vec<PolyVector> = Vec::new();
    for entries in aug.syzygies() {
        let v = reduce_in(context, &PolyVector::new(&ring, entries)?)?;
        if !v.is_zero() && !found.contains(&v) {
            found.push(v);
        }
    }
    let pruned = prune(&ring, s, found, context)?;
    let frame = Engine::new(&ring, ModuleOrder::schreyer(ModuleOrder::PositionOverTerm, pot_leads(&reduced)));
    let normalized = pruned
        .into_iter()
        .map(|v| {
            let e = frame.elem_from_vector(&v);
            let lc = e.lead().expect("nonzero").k.clone();
            v.scale(&lc.recip())
        })
        .collect();
    SubmoduleBasis::new(&ring, s, normalized)
}

/// Drops generators lying in the span of the others (plus `I_Z R^rank`), last ones first.
fn prune(
    ring: &PolynomialRing,
    rank: usize,
    mut vs: Vec<PolyVector>,
    context: Option<&QuotientContext>,
) -> Result<Vec<PolyVector>, GroebnerError> {
    let mut i = vs.len();
    while i > 0 {
        i -= 1;
        if vs.len() <= 1 {
            break;
        }
        let others: Vec<PolyVector> = vs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        let gb = ModuleGroebnerBasis::new(&SubmoduleBasis::new(ring, rank, others)?, context)?;
        if gb.contains(&vs[i])? {
            vs.remove(i);
        }
    }
    Ok(vs)
}

/// Solves `A u = v` for the columns `A` of a submodule, reusing one Groebner basis for many targets.
pub struct Lifter {
    ring: PolynomialRing,
    aug: Augmented,
    context: Option<QuotientContext>,
}

impl Lifter {
    pub fn new(columns: &SubmoduleBasis, context: Option<&QuotientContext>) -> Result<Self, GroebnerError> {
        if let Some(ctx) = context {
            ctx.ring().ensure_same(columns.ring())?;
        }
        let reduced: Vec<PolyVector> =
            columns.gens().iter().map(|g| reduce_in(context, g)).collect::<Result<_, _>>()?;
        let aug = Augmented::new(&reduced, columns.rank(), columns.ring(), context);
        Ok(Lifter { ring: columns.ring().clone(), aug, context: context.cloned() })
    }

    /// Coefficients `u` with `A u = v` (modulo `I_Z` in a context), or `None` if `v` is not in the image.
    pub fn lift(&self, v: &PolyVector) -> Result<Option<PolyVector>, GroebnerError> {
        v.ring().ensure_same(&self.ring)?;
        if v.rank() != self.aug.rank {
            return Err(crate::polyring::PolyError::RankMismatch { expected: self.aug.rank, found: v.rank() }.into());
        }
        let v = reduce_in(self.context.as_ref(), v)?;
        match self.aug.lift(&v) {
            None => Ok(None),
            Some(c) => Ok(Some(reduce_in(self.context.as_ref(), &PolyVector::new(&self.ring, c)?)?)),
        }
    }

    /// Lifts every column of `targets`; `None` if some column is not in the image.
    pub fn lift_matrix(&self, targets: &PolyMatrix) -> Result<Option<PolyMatrix>, GroebnerError> {
        let mut cols = Vec::with_capacity(targets.ncols());
        for c in targets.columns() {
            match self.lift(&c)? {
                Some(u) => cols.push(u),
                None => return Ok(None),
            }
        }
        Ok(Some(PolyMatrix::from_columns(&self.ring, self.aug.ngens, &cols)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{poly_parse, MonomialOrder};

    fn ring(vars: &[&str]) -> PolynomialRing {
        PolynomialRing::new(vars, MonomialOrder::GrevLex).unwrap()
    }

    fn vecs(r: &PolynomialRing, rows: &[&[&str]]) -> Vec<PolyVector> {
        rows.iter()
            .map(|row| PolyVector::new(r, row.iter().map(|s| poly_parse(s, r).unwrap()).collect()).unwrap())
            .collect()
    }

    #[test]
    fn koszul_syzygy_of_coordinates() {
        let r = ring(&["z", "w"]);
        let g = SubmoduleBasis::from_polys(&r, &[poly_parse("z", &r).unwrap(), poly_parse("w", &r).unwrap()]).unwrap();
        let s = syzygies(&g, None).unwrap();
        assert_eq!(s.gens(), vecs(&r, &[&["-w", "z"]]).as_slice());
    }

    #[test]
    fn syzygy_with_common_factor() {
        let r = ring(&["x", "y", "z"]);
        let g =
            SubmoduleBasis::from_polys(&r, &[poly_parse("x*z", &r).unwrap(), poly_parse("y*z", &r).unwrap()]).unwrap();
        let s = syzygies(&g, None).unwrap();
        assert_eq!(s.gens(), vecs(&r, &[&["-y", "x"]]).as_slice());
    }

    #[test]
    fn principal_nonzerodivisor_has_no_syzygies() {
        let r = ring(&["z", "w"]);
        let g = SubmoduleBasis::from_polys(&r, &[poly_parse("z^3 - w^2", &r).unwrap()]).unwrap();
        assert!(syzygies(&g, None).unwrap().is_empty());
    }

    #[test]
    fn quotient_ring_syzygies_alternate() {
        let r = ring(&["x", "y"]);
        let ctx = QuotientContext::from_gens(&r, vec![poly_parse("x*y", &r).unwrap()]).unwrap();
        let g = SubmoduleBasis::from_polys(&r, &[poly_parse("x", &r).unwrap()]).unwrap();
        let s = syzygies(&g, Some(&ctx)).unwrap();
        assert_eq!(s.gens(), vecs(&r, &[&["y"]]).as_slice());
        let s2 = syzygies(&s, Some(&ctx)).unwrap();
        assert_eq!(s2.gens(), vecs(&r, &[&["x"]]).as_slice());
    }

    #[test]
    fn lifter_solves_linear_systems() {
        let r = ring(&["z", "w"]);
        let cols = SubmoduleBasis::new(&r, 1, vecs(&r, &[&["z"], &["w"]])).unwrap();
        let l = Lifter::new(&cols, None).unwrap();
        let target = vecs(&r, &[&["z^3 - w^2"]]).remove(0);
        let u = l.lift(&target).unwrap().unwrap();
        let back = cols.to_matrix().mul_vector(&u).unwrap();
        assert_eq!(back, target);
        assert!(l.lift(&vecs(&r, &[&["1"]])[0]).unwrap().is_none());
    }

    #[test]
    fn module_membership() {
        let r = ring(&["x", "y"]);
        let sub = SubmoduleBasis::new(&r, 2, vecs(&r, &[&["x", "y"], &["y", "0"]])).unwrap();
        let gb = ModuleGroebnerBasis::new(&sub, None).unwrap();
        assert!(gb.certify());
        assert!(gb.contains(&vecs(&r, &[&["x + y^2", "y"]])[0]).unwrap());
        assert!(!gb.contains(&vecs(&r, &[&["0", "1"]])[0]).unwrap());
    }
}
