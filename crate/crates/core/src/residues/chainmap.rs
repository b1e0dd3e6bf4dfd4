//! Morphisms between resolutions and homotopies between them.

use super::ResidueError;
use crate::groebner::{ideal_member, Lifter, QuotientContext, SubmoduleBasis};
use crate::homalg::{resolved_ideal, ChainComplex};
use crate::polyring::{MonomialOrder, PolyMatrix, PolynomialRing};

/// `a : (F, psi) -> (E, phi)` with `a_k : F_k -> E_k` an `rank E_k x rank F_k` matrix for
/// `k = 0..=len F`; levels past the end of `E` are empty matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: Vec<PolyMatrix>,
}

/// `s_k : F_k -> E_{k+1}` with `a'_k - a_k = phi_{k+1} s_k + s_{k-1} psi_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Homotopy {
    maps: Vec<PolyMatrix>,
}

impl Homotopy {
    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(PolyMatrix::is_zero)
    }
}

/// `phi_k` of `c`, or the empty map when `k` lies past the computed end.
fn diff_or_zero(c: &ChainComplex, k: usize) -> PolyMatrix {
    match c.differential(k) {
        Some(m) => m.clone(),
        None => PolyMatrix::zero(c.ring(), c.rank(k.saturating_sub(1)), c.rank(k)),
    }
}

fn reduce(ctx: Option<&QuotientContext>, m: PolyMatrix) -> Result<PolyMatrix, ResidueError> {
    Ok(match ctx {
        Some(c) => c.reduce_matrix(&m)?,
        None => m,
    })
}

impl ChainMap {
    /// Checks every square `phi_k a_k = a_{k-1} psi_k`.
    pub fn new(source: &ChainComplex, target: &ChainComplex, maps: Vec<PolyMatrix>) -> Result<Self, ResidueError> {
        source.ensure_same_setting(target)?;
        if maps.len() != source.num_levels() + 1 {
            return Err(ResidueError::Shape(format!(
                "{} maps for a source with {} levels",
                maps.len(),
                source.num_levels()
            )));
        }
        let ctx = source.context();
        let mut reduced = Vec::with_capacity(maps.len());
        for (k, a) in maps.into_iter().enumerate() {
            if a.nrows() != target.rank(k) || a.ncols() != source.rank(k) {
                return Err(ResidueError::Shape(format!(
                    "a_{k} is {}x{}, expected {}x{}",
                    a.nrows(),
                    a.ncols(),
                    target.rank(k),
                    source.rank(k)
                )));
            }
            reduced.push(reduce(ctx, a)?);
        }
        let out = ChainMap { source: source.clone(), target: target.clone(), maps: reduced };
        if let Some(k) = out.first_failing_square()? {
            return Err(ResidueError::NotAChainMap { level: k });
        }
        Ok(out)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let maps = (0..=c.num_levels()).map(|k| PolyMatrix::identity(c.ring(), c.rank(k))).collect();
        ChainMap { source: c.clone(), target: c.clone(), maps }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// `a_0, a_1, ...`.
    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    pub fn level(&self, k: usize) -> Option<&PolyMatrix> {
        self.maps.get(k)
    }

    fn first_failing_square(&self) -> Result<Option<usize>, ResidueError> {
        let ctx = self.source.context();
        for k in 1..self.maps.len() {
            let lhs = diff_or_zero(&self.target, k).mul(&self.maps[k])?;
            let rhs = self.maps[k - 1].mul(&diff_or_zero(&self.source, k))?;
            if !reduce(ctx, lhs.sub(&rhs)?)?.is_zero() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// All squares commute.
    pub fn verify(&self) -> Result<bool, ResidueError> {
        Ok(self.first_failing_square()?.is_none())
    }
}

/// Solves `phi X = B` column by column, the Groebner bases taken in `order`.
fn lift_through(
    phi: &PolyMatrix,
    targets: &PolyMatrix,
    ctx: Option<&QuotientContext>,
    order: MonomialOrder,
) -> Result<Option<PolyMatrix>, ResidueError> {
    let ring = phi.ring().clone();
    if targets.ncols() == 0 {
        return Ok(Some(PolyMatrix::zero(&ring, phi.ncols(), 0)));
    }
    if phi.ncols() == 0 {
        let zero = reduce(ctx, targets.clone())?.is_zero();
        return Ok(zero.then(|| PolyMatrix::zero(&ring, 0, targets.ncols())));
    }
    let work: PolynomialRing = ring.with_order(order);
    let phi_w = phi.to_ring(&work)?;
    let targets_w = targets.to_ring(&work)?;
    let ctx_w = match ctx {
        Some(c) if order != ring.order() => Some(QuotientContext::new(c.ideal().to_ring(&work)?)),
        Some(c) => Some(c.clone()),
        None => None,
    };
    let lifter = Lifter::new(&SubmoduleBasis::from_columns(&phi_w), ctx_w.as_ref())?;
    match lifter.lift_matrix(&targets_w)? {
        Some(x) => Ok(Some(x.to_ring(&ring)?)),
        None => Ok(None),
    }
}

/// The comparison morphism `F -> E` over the natural map `O/I -> O/J` (requires `I ⊆ J`):
/// `a_0 = 1` and `a_k` lifts the columns of `a_{k-1} psi_k` through `phi_k`.
pub fn comparison_morphism(f: &ChainComplex, e: &ChainComplex) -> Result<ChainMap, ResidueError> {
    comparison_morphism_in_order(f, e, f.ring().order())
}

/// As [`comparison_morphism`], with the liftings computed under another monomial order.
pub fn comparison_morphism_in_order(
    f: &ChainComplex,
    e: &ChainComplex,
    order: MonomialOrder,
) -> Result<ChainMap, ResidueError> {
    f.ensure_same_setting(e)?;
    if f.is_truncated() || e.is_truncated() {
        return Err(ResidueError::Truncated);
    }
    if f.rank(0) != 1 || e.rank(0) != 1 {
        return Err(ResidueError::Shape("both complexes must resolve a cyclic module O/I".into()));
    }
    let ctx = f.context();
    let i = resolved_ideal(f)?;
    let j = resolved_ideal(e)?;
    for g in i.gens() {
        if !ideal_member(g, &j, ctx)? {
            return Err(ResidueError::NotContained(g.to_string()));
        }
    }
    let ring = f.ring();
    let mut maps = vec![PolyMatrix::identity(ring, 1)];
    for k in 1..=f.num_levels() {
        let target = reduce(ctx, maps[k - 1].mul(&diff_or_zero(f, k))?)?;
        let phi = diff_or_zero(e, k);
        match lift_through(&phi, &target, ctx, order)? {
            Some(a) => maps.push(reduce(ctx, a)?),
            None => return Err(ResidueError::LiftFailed { level: k }),
        }
    }
    ChainMap::new(f, e, maps)
}

/// A homotopy `s` from `a` to `b`, built level by level: `s_k` lifts
/// `(b_k - a_k) - s_{k-1} psi_k` through `phi_{k+1}`.
pub fn chain_homotopy(a: &ChainMap, b: &ChainMap) -> Result<Homotopy, ResidueError> {
    if a.source != b.source || a.target != b.target {
        return Err(ResidueError::Shape("chain maps have different source or target".into()));
    }
    let (f, e) = (&a.source, &a.target);
    let ctx = f.context();
    let ring = f.ring();
    let mut maps: Vec<PolyMatrix> = Vec::with_capacity(a.maps.len());
    for k in 0..a.maps.len() {
        let mut residual = b.maps[k].sub(&a.maps[k])?;
        if k >= 1 {
            residual = residual.sub(&maps[k - 1].mul(&diff_or_zero(f, k))?)?;
        }
        let residual = reduce(ctx, residual)?;
        let phi = diff_or_zero(e, k + 1);
        match lift_through(&phi, &residual, ctx, ring.order())? {
            Some(s) => maps.push(reduce(ctx, s)?),
            None => return Err(ResidueError::HomotopyFailed { level: k }),
        }
    }
    Ok(Homotopy { maps })
}

/// `b_k - a_k = phi_{k+1} s_k + s_{k-1} psi_k` at every level.
pub fn verify_homotopy(a: &ChainMap, b: &ChainMap, s: &Homotopy) -> Result<bool, ResidueError> {
    let (f, e) = (&a.source, &a.target);
    let ctx = f.context();
    if s.maps.len() != a.maps.len() {
        return Ok(false);
    }
    for k in 0..a.maps.len() {
        let mut rhs = diff_or_zero(e, k + 1).mul(&s.maps[k])?;
        if k >= 1 {
            rhs = rhs.add(&s.maps[k - 1].mul(&diff_or_zero(f, k))?)?;
        }
        let lhs = b.maps[k].sub(&a.maps[k])?;
        if !reduce(ctx, lhs.sub(&rhs)?)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Ideal;
    use crate::homalg::{free_resolution, koszul_complex, DEFAULT_CAP};
    use crate::polyring::{poly_parse, Polynomial};

    fn ring(vars: &[&str]) -> PolynomialRing {
        PolynomialRing::grevlex(vars).unwrap()
    }

    fn p(r: &PolynomialRing, s: &str) -> Polynomial {
        poly_parse(s, r).unwrap()
    }

    fn col(r: &PolynomialRing, entries: &[&str]) -> PolyMatrix {
        PolyMatrix::from_rows(r, entries.iter().map(|s| vec![p(r, s)]).collect()).unwrap()
    }

    #[test]
    fn cusp_comparison_is_homotopic_to_reference() {
        let r = ring(&["z", "w"]);
        let f = free_resolution(&Ideal::new(&r, vec![p(&r, "z^3 - w^2")]).unwrap(), None, DEFAULT_CAP, true).unwrap();
        let e = koszul_complex(&[p(&r, "z"), p(&r, "w")], None).unwrap();
        let a = comparison_morphism(&f, &e).unwrap();
        assert!(a.verify().unwrap());
        let reference = ChainMap::new(&f, &e, vec![PolyMatrix::identity(&r, 1), col(&r, &["z^2", "-w"])]).unwrap();
        let s = chain_homotopy(&a, &reference).unwrap();
        assert!(verify_homotopy(&a, &reference, &s).unwrap());
    }

    #[test]
    fn identity_and_self_homotopy() {
        let r = ring(&["z", "w"]);
        let e = koszul_complex(&[p(&r, "z"), p(&r, "w")], None).unwrap();
        let a = comparison_morphism(&e, &e).unwrap();
        let id = ChainMap::identity(&e);
        let s = chain_homotopy(&id, &a).unwrap();
        assert!(verify_homotopy(&id, &a, &s).unwrap());
        assert!(chain_homotopy(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn perturbed_map_recovers_multiple() {
        let r = ring(&["z", "w"]);
        let f = free_resolution(&Ideal::new(&r, vec![p(&r, "z^3 - w^2")]).unwrap(), None, DEFAULT_CAP, true).unwrap();
        let e = koszul_complex(&[p(&r, "z"), p(&r, "w")], None).unwrap();
        let a = comparison_morphism(&f, &e).unwrap();
        let c = p(&r, "z*w + 3");
        let bumped = a.maps()[1].add(&e.diffs()[1].mul(&PolyMatrix::scalar(&r, 1, &c)).unwrap()).unwrap();
        let b = ChainMap::new(&f, &e, vec![a.maps()[0].clone(), bumped]).unwrap();
        let s = chain_homotopy(&a, &b).unwrap();
        assert_eq!(s.maps()[1].entries(), &[c]);
    }

    #[test]
    fn principal_into_principal() {
        let r = ring(&["x"]);
        let f = free_resolution(&Ideal::new(&r, vec![p(&r, "x^2")]).unwrap(), None, DEFAULT_CAP, true).unwrap();
        let e = free_resolution(&Ideal::new(&r, vec![p(&r, "x")]).unwrap(), None, DEFAULT_CAP, true).unwrap();
        let a = comparison_morphism(&f, &e).unwrap();
        assert_eq!(a.maps()[1].entries(), &[p(&r, "x")]);
        assert!(matches!(comparison_morphism(&e, &f), Err(ResidueError::NotContained(_))));
    }

    #[test]
    fn orders_give_homotopic_maps() {
        let r = ring(&["x", "y", "z"]);
        let i = Ideal::new(&r, vec![p(&r, "x*y*z"), p(&r, "x^2*y")]).unwrap();
        let j = Ideal::new(&r, vec![p(&r, "x*y"), p(&r, "y*z"), p(&r, "x*z")]).unwrap();
        let f = free_resolution(&i, None, DEFAULT_CAP, true).unwrap();
        let e = free_resolution(&j, None, DEFAULT_CAP, true).unwrap();
        let a = comparison_morphism_in_order(&f, &e, MonomialOrder::GrevLex).unwrap();
        let b = comparison_morphism_in_order(&f, &e, MonomialOrder::Lex).unwrap();
        let s = chain_homotopy(&a, &b).unwrap();
        assert!(verify_homotopy(&a, &b, &s).unwrap());
    }

    #[test]
    fn bad_square_rejected() {
        let r = ring(&["z", "w"]);
        let f = free_resolution(&Ideal::new(&r, vec![p(&r, "z^3 - w^2")]).unwrap(), None, DEFAULT_CAP, true).unwrap();
        let e = koszul_complex(&[p(&r, "z"), p(&r, "w")], None).unwrap();
        let bad = ChainMap::new(&f, &e, vec![PolyMatrix::identity(&r, 1), col(&r, &["z^2", "w"])]);
        assert!(matches!(bad, Err(ResidueError::NotAChainMap { level: 1 })));
    }
}
