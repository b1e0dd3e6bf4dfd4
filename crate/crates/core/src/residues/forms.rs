//! Holomorphic differential forms with polynomial coefficients, and the Poincaré residue of a hypersurface.

use std::collections::BTreeMap;
use std::fmt;

use super::ResidueError;
use crate::groebner::QuotientContext;
use crate::polyring::{Polynomial, PolynomialRing};

/// `sum_S c_S dz_S` with `S` an increasing list of variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialForm {
    ring: PolynomialRing,
    terms: BTreeMap<Vec<usize>, Polynomial>,
}

/// Sign of the permutation sorting `idx` (which has no repeats), and the sorted list.
fn sort_sign(idx: &[usize]) -> (bool, Vec<usize>) {
    let mut v = idx.to_vec();
    let mut negative = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                negative = !negative;
            }
        }
    }
    (negative, v)
}

impl DifferentialForm {
    pub fn zero(ring: &PolynomialRing) -> Self {
        DifferentialForm { ring: ring.clone(), terms: BTreeMap::new() }
    }

    /// `c dz_{i_1} ∧ ... ∧ dz_{i_k}`, reordered to increasing indices with the matching sign.
    pub fn monomial(ring: &PolynomialRing, idx: &[usize], c: Polynomial) -> Self {
        let mut out = Self::zero(ring);
        let mut seen = idx.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != idx.len() || c.is_zero() {
            return out;
        }
        let (neg, sorted) = sort_sign(idx);
        out.terms.insert(sorted, if neg { -c } else { c });
        out
    }

    /// `dz_1 ∧ ... ∧ dz_n`.
    pub fn volume(ring: &PolynomialRing) -> Self {
        let all: Vec<usize> = (0..ring.nvars()).collect();
        Self::monomial(ring, &all, Polynomial::one(ring))
    }

    /// `df = sum_i (∂f/∂z_i) dz_i`.
    pub fn differential(f: &Polynomial) -> Self {
        let ring = f.ring();
        let mut out = Self::zero(ring);
        for i in 0..ring.nvars() {
            let d = f.derivative(i);
            if !d.is_zero() {
                out.terms.insert(vec![i], d);
            }
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Polynomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, key: Vec<usize>, c: Polynomial) {
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &DifferentialForm) -> Result<DifferentialForm, ResidueError> {
        self.ring.ensure_same(&other.ring)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert_add(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DifferentialForm) -> Result<DifferentialForm, ResidueError> {
        self.add(&other.scale_poly(&-Polynomial::one(&other.ring)))
    }

    pub fn scale_poly(&self, p: &Polynomial) -> DifferentialForm {
        let mut out = Self::zero(&self.ring);
        for (k, c) in &self.terms {
            out.insert_add(k.clone(), c * p);
        }
        out
    }

    pub fn wedge(&self, other: &DifferentialForm) -> Result<DifferentialForm, ResidueError> {
        self.ring.ensure_same(&other.ring)?;
        let mut out = Self::zero(&self.ring);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                if s.iter().any(|i| t.contains(i)) {
                    continue;
                }
                let mut idx = s.clone();
                idx.extend_from_slice(t);
                let (neg, sorted) = sort_sign(&idx);
                let c = a * b;
                out.insert_add(sorted, if neg { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Coefficients reduced modulo `I_Z`.
    pub fn reduce(&self, ctx: &QuotientContext) -> Result<DifferentialForm, ResidueError> {
        let mut out = Self::zero(&self.ring);
        for (k, c) in &self.terms {
            out.insert_add(k.clone(), ctx.reduce(c)?);
        }
        Ok(out)
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let d: Vec<String> = k.iter().map(|&i| format!("d{}", vars[i])).collect();
                let d = if d.is_empty() { "1".to_string() } else { d.join("^") };
                format!("({c})*{d}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `(2 pi i)^twopi_exponent * numerator / denominator * dz_wedge`, restricted to `Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeromorphicForm {
    pub context: QuotientContext,
    pub wedge: Vec<usize>,
    pub numerator: Polynomial,
    pub denominator: Polynomial,
    pub twopi_exponent: i32,
}

impl MeromorphicForm {
    pub fn ring(&self) -> &PolynomialRing {
        self.context.ring()
    }

    /// `numerator * dz_wedge`, the form with the denominator cleared.
    pub fn numerator_form(&self) -> DifferentialForm {
        DifferentialForm::monomial(self.ring(), &self.wedge, self.numerator.clone())
    }

    /// `(dh / 2 pi i) ∧ ω = dz` modulo `(h)`, checked as
    /// `dh ∧ (numerator dz_wedge) - denominator dz ≡ 0 (mod h)` for a single factor of `2 pi i`.
    pub fn satisfies_defining_relation(&self, h: &Polynomial) -> Result<bool, ResidueError> {
        if self.twopi_exponent != 1 {
            return Ok(false);
        }
        let lhs = DifferentialForm::differential(h).wedge(&self.numerator_form())?;
        let rhs = DifferentialForm::volume(self.ring()).scale_poly(&self.denominator);
        Ok(lhs.sub(&rhs)?.reduce(&self.context)?.is_zero())
    }

    pub fn to_text(&self) -> String {
        let vars = self.ring().vars();
        let dz: Vec<String> = self.wedge.iter().map(|&i| format!("d{}", vars[i])).collect();
        let dz = if dz.is_empty() { "1".to_string() } else { dz.join("^") };
        let twopi = match self.twopi_exponent {
            0 => String::new(),
            1 => "2*pi*i * ".to_string(),
            e => format!("(2*pi*i)^{e} * "),
        };
        format!("{twopi}({}) * {dz} / ({}) on {}", self.numerator, self.denominator, self.context)
    }
}

impl fmt::Display for MeromorphicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// The Poincaré residue `ω` on `Z = V(h)`, determined by `(dh / 2 pi i) ∧ ω = dz` with
/// `ω = 2 pi i (-1)^{j-1} dz_1 ∧ .. (omit dz_j) .. ∧ dz_n / (∂h/∂z_j)` (`j` 1-based). The sign is
/// moved so that the denominator's leading coefficient is positive.
pub fn poincare_residue(h: &Polynomial, distinguished: &str) -> Result<MeromorphicForm, ResidueError> {
    let ring = h.ring();
    let j = ring.var_index(distinguished).ok_or_else(|| ResidueError::UnknownVariable(distinguished.to_string()))?;
    if h.is_zero() || h.is_constant() {
        return Err(ResidueError::Shape("the hypersurface equation must be nonconstant".into()));
    }
    let context = QuotientContext::from_gens(ring, vec![h.clone()])?;
    let mut denominator = h.derivative(j);
    if context.is_zero(&denominator)? {
        return Err(ResidueError::DerivativeVanishes(distinguished.to_string()));
    }
    let mut numerator = if j % 2 == 0 { Polynomial::one(ring) } else { -Polynomial::one(ring) };
    if denominator.leading_coeff().map(|c| *c < num_traits::Zero::zero()).unwrap_or(false) {
        denominator = -denominator;
        numerator = -numerator;
    }
    let wedge: Vec<usize> = (0..ring.nvars()).filter(|&i| i != j).collect();
    Ok(MeromorphicForm { context, wedge, numerator, denominator, twopi_exponent: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::poly_parse;

    fn ring(vars: &[&str]) -> PolynomialRing {
        PolynomialRing::grevlex(vars).unwrap()
    }

    #[test]
    fn cusp_residue() {
        let r = ring(&["z", "w"]);
        let h = poly_parse("z^3 - w^2", &r).unwrap();
        let om = poincare_residue(&h, "w").unwrap();
        assert_eq!(om.numerator, Polynomial::one(&r));
        assert_eq!(om.denominator, poly_parse("2*w", &r).unwrap());
        assert_eq!(om.wedge, vec![0]);
        assert_eq!(om.twopi_exponent, 1);
        assert!(om.satisfies_defining_relation(&h).unwrap());
        let other = poincare_residue(&h, "z").unwrap();
        assert_eq!(other.denominator, poly_parse("3*z^2", &r).unwrap());
        assert!(other.satisfies_defining_relation(&h).unwrap());
    }

    #[test]
    fn smooth_residue_sign() {
        let r = ring(&["z", "w"]);
        let h = poly_parse("w", &r).unwrap();
        let om = poincare_residue(&h, "w").unwrap();
        assert_eq!(om.numerator, poly_parse("-1", &r).unwrap());
        assert_eq!(om.denominator, Polynomial::one(&r));
        assert!(om.satisfies_defining_relation(&h).unwrap());
        assert!(matches!(poincare_residue(&h, "z"), Err(ResidueError::DerivativeVanishes(_))));
    }

    #[test]
    fn wedge_is_graded_commutative() {
        let r = ring(&["x", "y", "z"]);
        let dx = DifferentialForm::monomial(&r, &[0], Polynomial::one(&r));
        let dy = DifferentialForm::monomial(&r, &[1], Polynomial::one(&r));
        let a = dx.wedge(&dy).unwrap();
        let b = dy.wedge(&dx).unwrap();
        assert!(a.add(&b).unwrap().is_zero());
        assert!(dx.wedge(&dx).unwrap().is_zero());
        let vol = DifferentialForm::volume(&r);
        let dz = DifferentialForm::monomial(&r, &[2], Polynomial::one(&r));
        assert_eq!(a.wedge(&dz).unwrap(), vol);
        assert_eq!(DifferentialForm::monomial(&r, &[2, 0, 1], Polynomial::one(&r)), vol);
    }
}
