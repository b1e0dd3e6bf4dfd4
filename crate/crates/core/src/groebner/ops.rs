//! Derived ideal operations: elimination, intersection, quotients, saturation, dimension.

use std::fmt;

use super::{groebner_basis, GroebnerError, Ideal, QuotientContext};
use crate::polyring::{div_exact, MonomialOrder, Polynomial, PolynomialRing};

/// Codimension, with `Infinite` standing for the empty variety (unit ideal).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Codim {
    Finite(usize),
    Infinite,
}

impl Codim {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Codim::Finite(c) => c >= k,
            Codim::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Codim::Finite(c) => Some(c),
            Codim::Infinite => None,
        }
    }
}

impl fmt::Display for Codim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codim::Finite(c) => write!(f, "{c}"),
            Codim::Infinite => write!(f, "inf"),
        }
    }
}

/// Krull dimension of `V(I)` and its codimension; `dim = -1` for the unit ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dimension {
    pub dim: i64,
    pub codim: Codim,
}

fn fresh_name(ring: &PolynomialRing, base: &str) -> String {
    let mut name = base.to_string();
    let mut k = 0;
    while ring.var_index(&name).is_some() {
        k += 1;
        name = format!("{base}{k}");
    }
    name
}

/// `I ∩ Q[keep]`, computed with an elimination order that puts the other variables first.
pub fn elimination(ideal: &Ideal, keep: &[&str]) -> Result<Ideal, GroebnerError> {
    let ring = ideal.ring();
    for k in keep {
        if ring.var_index(k).is_none() {
            return Err(GroebnerError::UnknownVariable(k.to_string()));
        }
    }
    let elim: Vec<String> = ring.vars().iter().filter(|v| !keep.contains(&v.as_str())).cloned().collect();
    if elim.is_empty() || ideal.is_zero() {
        return Ok(ideal.clone());
    }
    let mut vars = elim.clone();
    vars.extend(ring.vars().iter().filter(|v| keep.contains(&v.as_str())).cloned());
    let big = PolynomialRing::new(&vars, MonomialOrder::Elimination { block: elim.len() })?;
    let gens = ideal.gens().iter().map(|g| g.to_ring(&big)).collect::<Result<Vec<_>, _>>()?;
    let gb = groebner_basis(&gens, big.order())?;
    let kept: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter(|g| g.support_vars().iter().all(|&i| i >= elim.len()))
        .map(|g| g.to_ring(ring))
        .collect::<Result<_, _>>()?;
    Ideal::new(ring, kept)
}

/// `I ∩ J` via `t I + (1 - t) J` and elimination of `t`.
pub fn ideal_intersect(a: &Ideal, b: &Ideal) -> Result<Ideal, GroebnerError> {
    a.ring().ensure_same(b.ring())?;
    let ring = a.ring();
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let t = fresh_name(ring, "t");
    let mut vars = vec![t.clone()];
    vars.extend(ring.vars().iter().cloned());
    let big = PolynomialRing::new(&vars, ring.order())?;
    let tv = Polynomial::var(&big, 0);
    let one_minus_t = &Polynomial::one(&big) - &tv;
    let mut gens = Vec::new();
    for g in a.gens() {
        gens.push(&tv * &g.to_ring(&big)?);
    }
    for g in b.gens() {
        gens.push(&one_minus_t * &g.to_ring(&big)?);
    }
    let keep: Vec<&str> = ring.vars().iter().map(String::as_str).collect();
    let elim = elimination(&Ideal::new(&big, gens)?, &keep)?;
    let gens = elim.gens().iter().map(|g| g.to_ring(ring)).collect::<Result<Vec<_>, _>>()?;
    // interreduce through a Groebner basis so the result is canonical
    let out = Ideal::new(ring, gens)?;
    let gb = out.groebner().elements().to_vec();
    Ideal::new(ring, gb)
}

/// `(I : f) = { g : g f ∈ I }`. In a quotient context this is computed for `I + I_Z` and the
/// answer is returned as an ideal of `O_Z` (generators reduced modulo `I_Z`, zeros dropped).
pub fn ideal_quotient(
    ideal: &Ideal,
    f: &Polynomial,
    context: Option<&QuotientContext>,
) -> Result<Ideal, GroebnerError> {
    f.ring().ensure_same(ideal.ring())?;
    if f.is_zero() {
        return Err(GroebnerError::ZeroDivisor);
    }
    let ring = ideal.ring();
    let ambient = match context {
        Some(ctx) => ctx.lift_ideal(ideal.gens())?,
        None => ideal.clone(),
    };
    let quotient = if ambient.is_zero() {
        Ideal::zero(ring)
    } else {
        let meet = ideal_intersect(&ambient, &Ideal::new(ring, vec![f.clone()])?)?;
        let gens = meet
            .gens()
            .iter()
            .map(|g| {
                div_exact(g, f)
                    .ok_or_else(|| GroebnerError::Internal("intersection with (f) not divisible by f".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let q = Ideal::new(ring, gens)?;
        let gb = q.groebner().elements().to_vec();
        Ideal::new(ring, gb)?
    };
    match context {
        Some(ctx) => ctx.image(&quotient),
        None => Ok(quotient),
    }
}

pub const SATURATION_CAP: usize = 64;

/// `(I : f^∞)`, iterating quotients until the chain stabilizes.
pub fn saturation(ideal: &Ideal, f: &Polynomial) -> Result<Ideal, GroebnerError> {
    let mut current = ideal.clone();
    for _ in 0..SATURATION_CAP {
        let next = ideal_quotient(&current, f, None)?;
        if current.contains_ideal(&next)? {
            return Ok(next);
        }
        current = next;
    }
    Err(GroebnerError::Internal(format!("saturation did not stabilize within {SATURATION_CAP} steps")))
}

/// `f` lies in the radical of `I`: `1` is in `I + (1 - t f)` with a fresh variable `t`.
pub fn radical_member(f: &Polynomial, ideal: &Ideal) -> Result<bool, GroebnerError> {
    let ring = ideal.ring();
    f.ring().ensure_same(ring)?;
    if f.is_zero() {
        return Ok(true);
    }
    let mut vars = ring.vars().to_vec();
    vars.push(fresh_name(ring, "t"));
    let big = PolynomialRing::new(&vars, MonomialOrder::GrevLex)?;
    let t = Polynomial::var(&big, vars.len() - 1);
    let mut gens = ideal.gens().iter().map(|g| g.to_ring(&big)).collect::<Result<Vec<_>, _>>()?;
    gens.push(&Polynomial::one(&big) - &(&t * &f.to_ring(&big)?));
    Ok(groebner_basis(&gens, MonomialOrder::GrevLex)?.is_unit())
}

/// Dimension of `V(I)` from the leading-term ideal: the largest set of variables containing
/// the support of no leading monomial.
pub fn dimension(ideal: &Ideal) -> Result<Dimension, GroebnerError> {
    let n = ideal.ring().nvars();
    if ideal.is_zero() {
        return Ok(Dimension { dim: n as i64, codim: Codim::Finite(0) });
    }
    let gb = groebner_basis(ideal.gens(), MonomialOrder::GrevLex)?;
    if gb.is_unit() {
        return Ok(Dimension { dim: -1, codim: Codim::Infinite });
    }
    let masks: Vec<u64> =
        gb.leading_monomials().iter().map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i))).collect();
    Ok(dimension_from_supports(n, &masks))
}

/// Dimension of a monomial ideal given the variable supports of its generators as bitmasks.
pub fn dimension_from_supports(n: usize, supports: &[u64]) -> Dimension {
    assert!(n < 64, "too many variables");
    if supports.iter().any(|&s| s == 0) {
        return Dimension { dim: -1, codim: Codim::Infinite };
    }
    let mut best = 0usize;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    Dimension { dim: best as i64, codim: Codim::Finite(n - best) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::poly_parse;

    fn ideal(r: &PolynomialRing, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| poly_parse(g, r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn radical_membership() {
        let r = PolynomialRing::grevlex(&["x", "y"]).unwrap();
        let i = Ideal::new(&r, vec![poly_parse("x^2", &r).unwrap(), poly_parse("y^3", &r).unwrap()]).unwrap();
        assert!(radical_member(&poly_parse("x + y", &r).unwrap(), &i).unwrap());
        assert!(!i.contains(&poly_parse("x", &r).unwrap()).unwrap());
        assert!(!radical_member(&poly_parse("x + 1", &r).unwrap(), &i).unwrap());
    }

    #[test]
    fn eliminate_parameter() {
        let r = PolynomialRing::grevlex(&["t", "x", "y"]).unwrap();
        let i = ideal(&r, &["x - t", "y - t^2"]);
        let e = elimination(&i, &["x", "y"]).unwrap();
        assert!(e.same_ideal(&ideal(&r, &["y - x^2"])).unwrap());
        // substitution oracle: t = x makes every generator vanish on the curve
        for g in e.gens() {
            let img = g.substitute(&[
                poly_parse("x", &r).unwrap(),
                poly_parse("x", &r).unwrap(),
                poly_parse("x^2", &r).unwrap(),
            ]);
            assert!(img.is_zero());
        }
    }

    #[test]
    fn eliminate_trivial_cases() {
        let r = PolynomialRing::grevlex(&["x", "y"]).unwrap();
        assert_eq!(elimination(&ideal(&r, &["x"]), &["x", "y"]).unwrap(), ideal(&r, &["x"]));
        assert!(elimination(&ideal(&r, &["x"]), &["x"]).unwrap().same_ideal(&ideal(&r, &["x"])).unwrap());
        assert!(elimination(&ideal(&r, &["1"]), &["y"]).unwrap().is_unit());
        assert!(matches!(elimination(&ideal(&r, &["x"]), &["q"]), Err(GroebnerError::UnknownVariable(_))));
    }

    #[test]
    fn intersections() {
        let r = PolynomialRing::grevlex(&["x", "y"]).unwrap();
        let m = ideal_intersect(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
        assert!(m.same_ideal(&ideal(&r, &["x*y"])).unwrap());
        let i = ideal(&r, &["x^2", "y"]);
        assert!(ideal_intersect(&i, &i).unwrap().same_ideal(&i).unwrap());
        assert!(ideal_intersect(&i, &ideal(&r, &["1"])).unwrap().same_ideal(&i).unwrap());
    }

    #[test]
    fn quotients() {
        let r = PolynomialRing::grevlex(&["x", "y"]).unwrap();
        let q = ideal_quotient(&ideal(&r, &["x*y"]), &poly_parse("x", &r).unwrap(), None).unwrap();
        assert!(q.same_ideal(&ideal(&r, &["y"])).unwrap());
        let i = ideal(&r, &["x^2", "x*y + y^3"]);
        assert!(ideal_quotient(&i, &poly_parse("1", &r).unwrap(), None).unwrap().same_ideal(&i).unwrap());
        let ctx = QuotientContext::from_gens(&r, vec![poly_parse("x*y", &r).unwrap()]).unwrap();
        let z = ideal_quotient(&Ideal::zero(&r), &poly_parse("x + y", &r).unwrap(), Some(&ctx)).unwrap();
        assert!(z.is_zero());
        assert!(matches!(ideal_quotient(&i, &Polynomial::zero(&r), None), Err(GroebnerError::ZeroDivisor)));
    }

    #[test]
    fn saturations() {
        let r = PolynomialRing::grevlex(&["x", "y"]).unwrap();
        let y = poly_parse("y", &r).unwrap();
        assert!(saturation(&ideal(&r, &["x^2*y"]), &y).unwrap().same_ideal(&ideal(&r, &["x^2"])).unwrap());
        assert!(saturation(&ideal(&r, &["x"]), &y).unwrap().same_ideal(&ideal(&r, &["x"])).unwrap());
        assert!(saturation(&ideal(&r, &["1"]), &y).unwrap().is_unit());
    }

    #[test]
    fn dimensions() {
        let r = PolynomialRing::grevlex(&["x", "y", "z"]).unwrap();
        assert_eq!(dimension(&ideal(&r, &["x*z", "y*z"])).unwrap(), Dimension { dim: 2, codim: Codim::Finite(1) });
        assert_eq!(dimension(&Ideal::zero(&r)).unwrap(), Dimension { dim: 3, codim: Codim::Finite(0) });
        assert_eq!(dimension(&ideal(&r, &["x", "1 + y"])).unwrap().codim, Codim::Finite(2));
        assert_eq!(dimension(&ideal(&r, &["x", "x - 1"])).unwrap(), Dimension { dim: -1, codim: Codim::Infinite });
        let r2 = PolynomialRing::grevlex(&["z", "w"]).unwrap();
        assert_eq!(dimension(&ideal(&r2, &["z", "w"])).unwrap(), Dimension { dim: 0, codim: Codim::Finite(2) });
    }

    #[test]
    fn codim_ordering() {
        assert!(Codim::Infinite > Codim::Finite(100));
        assert!(Codim::Infinite.at_least(7));
        assert!(!Codim::Finite(1).at_least(2));
    }
}
