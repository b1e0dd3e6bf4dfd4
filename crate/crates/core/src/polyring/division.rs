use std::cmp::Ordering;

use num_traits::Zero;

use super::{MonomialOrder, PolyError, PolyVector, Polynomial};

/// Result of multivariate division: `f = sum(quotients[i] * divisors[i]) + remainder`.
#[derive(Clone, Debug, PartialEq)]
pub struct Division<T> {
    pub quotients: Vec<Polynomial>,
    pub remainder: T,
}

/// Multivariate division of `f` by `divisors` under `order`.
///
/// Results are expressed in the ring of `f` with `order`, so they are sorted by it.
pub fn divide(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: MonomialOrder,
) -> Result<Division<Polynomial>, PolyError> {
    if divisors.is_empty() {
        return Err(PolyError::EmptyDivisors);
    }
    let ring = f.ring().with_order(order);
    for g in divisors {
        if !g.ring().same_vars(f.ring()) {
            return Err(PolyError::RingMismatch(f.ring().to_string(), g.ring().to_string()));
        }
    }
    let gs: Vec<Polynomial> = divisors.iter().map(|g| g.to_ring(&ring)).collect::<Result<_, _>>()?;
    let mut p = f.to_ring(&ring)?;
    let mut quotients = vec![Polynomial::zero(&ring); gs.len()];
    let mut rem_terms = Vec::new();
    while let Some((lm, lc)) = p.leading_term().cloned() {
        let mut divided = false;
        for (i, g) in gs.iter().enumerate() {
            let Some((glm, glc)) = g.leading_term() else { continue };
            if let Some(q) = glm.quotient_of(&lm) {
                let c = &lc / glc;
                quotients[i] = quotients[i].add_scaled(&c, &q, &Polynomial::one(&ring));
                p = p.add_scaled(&-c, &q, g);
                divided = true;
                break;
            }
        }
        if !divided {
            rem_terms.push((lm.clone(), lc.clone()));
            p = Polynomial::from_sorted_unchecked(&ring, p.into_terms().into_iter().skip(1).collect());
        }
    }
    Ok(Division { quotients, remainder: Polynomial::from_sorted_unchecked(&ring, rem_terms) })
}

/// Leading position and term of a vector under position-over-term:
/// the first nonzero entry's leading term.
fn pot_lead(v: &[Polynomial]) -> Option<usize> {
    v.iter().position(|p| !p.is_zero())
}

/// Division of a vector by vectors under position-over-term extending `order`.
pub fn divide_vector(
    f: &PolyVector,
    divisors: &[PolyVector],
    order: MonomialOrder,
) -> Result<Division<PolyVector>, PolyError> {
    if divisors.is_empty() {
        return Err(PolyError::EmptyDivisors);
    }
    let ring = f.ring().with_order(order);
    let conv = |v: &PolyVector| -> Result<Vec<Polynomial>, PolyError> {
        v.entries().iter().map(|p| p.to_ring(&ring)).collect()
    };
    for g in divisors {
        if g.rank() != f.rank() {
            return Err(PolyError::RankMismatch { expected: f.rank(), found: g.rank() });
        }
    }
    let gs: Vec<Vec<Polynomial>> = divisors.iter().map(conv).collect::<Result<_, _>>()?;
    let mut p = conv(f)?;
    let mut quotients = vec![Polynomial::zero(&ring); gs.len()];
    let mut rem: Vec<Polynomial> = vec![Polynomial::zero(&ring); f.rank()];
    while let Some(pos) = pot_lead(&p) {
        let (lm, lc) = p[pos].leading_term().cloned().expect("nonzero entry");
        let mut divided = false;
        for (i, g) in gs.iter().enumerate() {
            if pot_lead(g) != Some(pos) {
                continue;
            }
            let (glm, glc) = g[pos].leading_term().expect("nonzero entry");
            if let Some(q) = glm.quotient_of(&lm) {
                let c = &lc / glc;
                quotients[i] = quotients[i].add_scaled(&c, &q, &Polynomial::one(&ring));
                for (pe, ge) in p.iter_mut().zip(g) {
                    *pe = pe.add_scaled(&-c.clone(), &q, ge);
                }
                divided = true;
                break;
            }
        }
        if !divided {
            let one = Polynomial::monomial(&ring, lm.clone(), lc.clone());
            rem[pos] = &rem[pos] + &one;
            p[pos] =
                Polynomial::from_sorted_unchecked(&ring, p[pos].clone().into_terms().into_iter().skip(1).collect());
        }
    }
    Ok(Division { quotients, remainder: PolyVector::new(&ring, rem)? })
}

/// Exact quotient `f / g`, or `None` when `g` does not divide `f`.
pub fn div_exact(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    if g.is_zero() {
        return None;
    }
    if f.is_zero() {
        return Some(Polynomial::zero(f.ring()));
    }
    let d = divide(f, std::slice::from_ref(g), f.ring().order()).ok()?;
    if d.remainder.is_zero() {
        d.quotients.into_iter().next()
    } else {
        None
    }
}

/// Compares two monomials, validating that they have the same length.
pub fn compare_monomials(
    order: MonomialOrder,
    m1: &super::Monomial,
    m2: &super::Monomial,
) -> Result<Ordering, PolyError> {
    if m1.nvars() != m2.nvars() {
        return Err(PolyError::LengthMismatch(m1.nvars(), m2.nvars()));
    }
    Ok(order.compare(m1, m2))
}

/// Checks the division identity and the remainder condition; used by tests.
pub fn check_division(f: &Polynomial, divisors: &[Polynomial], d: &Division<Polynomial>) -> bool {
    let ring = d.remainder.ring().clone();
    let mut acc = d.remainder.clone();
    for (q, g) in d.quotients.iter().zip(divisors) {
        let g = g.to_ring(&ring).expect("same vars");
        acc = &acc + &(q * &g);
    }
    let identity = acc == f.to_ring(&ring).expect("same vars");
    let leads: Vec<_> =
        divisors.iter().filter_map(|g| g.to_ring(&ring).ok().and_then(|g| g.leading_monomial().cloned())).collect();
    let reduced = d.remainder.terms().iter().all(|(m, c)| c.is_zero() || !leads.iter().any(|l| l.divides(m)));
    identity && reduced
}
