//! Groebner bases of ideals and submodules, normal forms, syzygies, and the ideal operations
//! built on them, over the ambient ring or a quotient ring `O_Z`.

mod engine;
mod ideal;
mod module;
mod ops;

use thiserror::Error;

use crate::polyring::PolyError;

pub use engine::{ModuleOrder, SchreyerFrame};
pub use ideal::{groebner_basis, ideal_member, normal_form, GroebnerBasis, Ideal, QuotientContext};
pub use module::{syzygies, Lifter, ModuleGroebnerBasis, SubmoduleBasis};
pub use ops::{
    dimension, dimension_from_supports, elimination, ideal_intersect, ideal_quotient, radical_member, saturation,
    Codim, Dimension, SATURATION_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("quotient by the zero polynomial")]
    ZeroDivisor,
    #[error("internal error: {0}")]
    Internal(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{poly_parse, rat, Monomial, Polynomial, PolynomialRing};
    use proptest::prelude::*;

    fn ring2() -> PolynomialRing {
        PolynomialRing::grevlex(&["x", "y"]).unwrap()
    }

    fn poly_from(r: &PolynomialRing, terms: Vec<((u32, u32), i64)>) -> Polynomial {
        Polynomial::from_terms(r, terms.into_iter().map(|((a, b), k)| (Monomial::new(vec![a, b]), rat(k, 1))))
    }

    fn arb_small() -> impl Strategy<Value = Vec<((u32, u32), i64)>> {
        prop::collection::vec(((0u32..3, 0u32..3), -4i64..=4), 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn buchberger_certificate(a in arb_small(), b in arb_small(), c in arb_small()) {
            let r = ring2();
            let gens: Vec<_> = [a, b, c].into_iter().map(|t| poly_from(&r, t)).filter(|p| !p.is_zero()).collect();
            prop_assume!(!gens.is_empty());
            for o in [crate::polyring::MonomialOrder::Lex, crate::polyring::MonomialOrder::GrevLex] {
                let gb = groebner_basis(&gens, o).unwrap();
                prop_assert!(gb.certify());
                for g in &gens {
                    prop_assert!(gb.contains(g).unwrap());
                }
            }
        }

        #[test]
        fn membership_consistency(a in arb_small(), b in arb_small(), c1 in arb_small(), c2 in arb_small()) {
            let r = ring2();
            let g1 = poly_from(&r, a);
            let g2 = poly_from(&r, b);
            let ideal = Ideal::new(&r, vec![g1.clone(), g2.clone()]).unwrap();
            prop_assume!(!ideal.is_zero());
            let f = &(&poly_from(&r, c1) * &g1) + &(&poly_from(&r, c2) * &g2);
            prop_assert!(ideal_member(&f, &ideal, None).unwrap());
            if !ideal.is_unit() {
                let g = &f + &Polynomial::one(&r);
                prop_assert!(!ideal_member(&g, &ideal, None).unwrap());
            }
        }

        #[test]
        fn quotient_duality(a in arb_small(), b in arb_small(), f in arb_small(), g in arb_small()) {
            let r = ring2();
            let ideal = Ideal::new(&r, vec![poly_from(&r, a), poly_from(&r, b)]).unwrap();
            let f = poly_from(&r, f);
            prop_assume!(!f.is_zero() && !ideal.is_zero());
            let q = ideal_quotient(&ideal, &f, None).unwrap();
            for h in q.gens() {
                prop_assert!(ideal.contains(&(h * &f)).unwrap());
            }
            let g = poly_from(&r, g);
            if ideal.contains(&(&g * &f)).unwrap() {
                prop_assert!(q.contains(&g).unwrap());
            }
        }

        #[test]
        fn syzygy_soundness(a in arb_small(), b in arb_small(), c in arb_small()) {
            let r = ring2();
            let gens: Vec<_> = [a, b, c].into_iter().map(|t| poly_from(&r, t)).collect();
            let sub = SubmoduleBasis::from_polys(&r, &gens).unwrap();
            let syz = syzygies(&sub, None).unwrap();
            let row = sub.to_matrix();
            for s in syz.gens() {
                prop_assert!(row.mul_vector(s).unwrap().is_zero());
            }
        }
    }

    /// Coordinate subspace `{x_i = 0, i ∉ S}` lies in V(I) iff every generator vanishes at the
    /// point with ones on S and zeros elsewhere.
    fn brute_force_dim(r: &PolynomialRing, gens: &[Polynomial]) -> i64 {
        let n = r.nvars();
        let mut best = -1i64;
        for set in 0u32..(1 << n) {
            let point: Vec<Polynomial> =
                (0..n).map(|i| if set & (1 << i) != 0 { Polynomial::one(r) } else { Polynomial::zero(r) }).collect();
            if gens.iter().all(|g| g.substitute(&point).is_zero()) {
                best = best.max(set.count_ones() as i64);
            }
        }
        best
    }

    #[test]
    fn monomial_ideal_dimension_matches_enumeration() {
        let r = PolynomialRing::grevlex(&["x", "y", "z"]).unwrap();
        // all monomials of degree 1..=3
        let mut monos = Vec::new();
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                for c in 0..=3u32 {
                    let d = a + b + c;
                    if (1..=3).contains(&d) {
                        monos.push(Polynomial::monomial(&r, Monomial::new(vec![a, b, c]), rat(1, 1)));
                    }
                }
            }
        }
        let mut checked = 0;
        for i in 0..monos.len() {
            for j in i..monos.len() {
                let gens = vec![monos[i].clone(), monos[j].clone()];
                let ideal = Ideal::new(&r, gens.clone()).unwrap();
                let d = dimension(&ideal).unwrap();
                assert_eq!(d.dim, brute_force_dim(&r, &gens), "ideal {ideal}");
                checked += 1;
            }
        }
        // a few three-generator ideals
        for i in (0..monos.len()).step_by(3) {
            let gens = vec![
                monos[i].clone(),
                monos[(i * 7 + 1) % monos.len()].clone(),
                monos[(i * 5 + 2) % monos.len()].clone(),
            ];
            let ideal = Ideal::new(&r, gens.clone()).unwrap();
            assert_eq!(dimension(&ideal).unwrap().dim, brute_force_dim(&r, &gens));
            checked += 1;
        }
        assert!(checked > 100);
    }

    #[test]
    fn quotient_context_normal_form_idempotent() {
        let r = ring2();
        let ctx = QuotientContext::from_gens(&r, vec![poly_parse("x^2 - y", &r).unwrap()]).unwrap();
        let f = poly_parse("x^5 + x*y + 3", &r).unwrap();
        let once = ctx.reduce(&f).unwrap();
        assert_eq!(ctx.reduce(&once).unwrap(), once);
    }
}
