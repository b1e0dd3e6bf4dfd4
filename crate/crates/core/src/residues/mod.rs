//! Residue-current ingredients: comparison morphisms and homotopies, regular sequences,
//! Coleff–Herrera and Poincaré residue descriptors, structure-form shapes, and the recipe
//! for `R^J_Z` with its annihilator oracle.

mod chainmap;
mod forms;
mod recipe;
mod regular;
mod shape;

use thiserror::Error;

use crate::groebner::GroebnerError;
use crate::homalg::HomalgError;
use crate::polyring::PolyError;

pub use chainmap::{
    chain_homotopy, comparison_morphism, comparison_morphism_in_order, verify_homotopy, ChainMap, Homotopy,
};
pub use forms::{poincare_residue, DifferentialForm, MeromorphicForm};
pub use recipe::{annihilator_member, build_current_recipe, maximal_lifting, CurrentRecipe};
pub use regular::{
    coleff_herrera, regular_sequence_check, transformation_law_check, CurrentKind, FormalCurrent,
    RegularSequenceReport, TransformationVerdict,
};
pub use shape::{structure_form_shape, Component, LocusCheck, Purity, ShapeComponent, StructureFormShape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error(transparent)]
    Homalg(#[from] HomalgError),
    #[error("empty tuple")]
    EmptyTuple,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("complexes live over different quotient rings")]
    ContextMismatch,
    #[error("complexes must be complete (untruncated)")]
    Truncated,
    #[error("square {level} of the chain map does not commute")]
    NotAChainMap { level: usize },
    #[error("generator {0} of the source ideal is not in the target ideal")]
    NotContained(String),
    #[error("cannot lift through phi_{level}; the target is not exact there")]
    LiftFailed { level: usize },
    #[error("no homotopy at level {level}")]
    HomotopyFailed { level: usize },
    #[error("not a regular sequence (element {index}): {reason}")]
    NotRegular { index: usize, reason: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("the derivative along `{0}` vanishes on the hypersurface")]
    DerivativeVanishes(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("the subvariety is empty")]
    EmptyVariety,
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("annihilator routes disagree: {0}")]
    Inconsistent(String),
}

impl From<GroebnerError> for ResidueError {
    fn from(e: GroebnerError) -> Self {
        ResidueError::Homalg(HomalgError::Groebner(e))
    }
}

impl From<PolyError> for ResidueError {
    fn from(e: PolyError) -> Self {
        ResidueError::Homalg(HomalgError::from(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{Ideal, QuotientContext};
    use crate::polyring::{poly_parse, rat, Monomial, Polynomial, PolynomialRing};
    use proptest::prelude::*;

    fn ring() -> PolynomialRing {
        PolynomialRing::grevlex(&["z", "w"]).unwrap()
    }

    fn poly(r: &PolynomialRing, terms: &[((u32, u32), i64)]) -> Polynomial {
        Polynomial::from_terms(r, terms.iter().map(|&((a, b), k)| (Monomial::new(vec![a, b]), rat(k, 1))))
    }

    fn arb_terms() -> impl Strategy<Value = Vec<((u32, u32), i64)>> {
        prop::collection::vec(((0u32..3, 0u32..3), -5i64..=5), 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn maximal_lifting_is_maximal(c1 in arb_terms(), c2 in arb_terms(), d in arb_terms()) {
            let r = ring();
            let z = QuotientContext::from_gens(&r, vec![poly_parse("z^3 - w^2", &r).unwrap()]).unwrap();
            let j = Ideal::new(&r, vec![poly_parse("z^2", &r).unwrap(), poly_parse("w", &r).unwrap()]).unwrap();
            let lift = maximal_lifting(&j, &z).unwrap();
            let g = &(&(&poly(&r, &c1) * &j.gens()[0]) + &(&poly(&r, &c2) * &j.gens()[1]))
                + &(&poly(&r, &d) * &z.ideal().gens()[0]);
            prop_assert!(lift.contains(&g).unwrap());
            let nf_one = &g + &Polynomial::one(&r);
            prop_assert!(!lift.contains(&nf_one).unwrap());
        }

        #[test]
        fn residue_relation_holds(h in arb_terms(), extra in arb_terms()) {
            let r = ring();
            let h = &poly(&r, &h) + &poly(&r, &extra);
            prop_assume!(!h.is_constant());
            for v in ["z", "w"] {
                match poincare_residue(&h, v) {
                    Ok(om) => prop_assert!(om.satisfies_defining_relation(&h).unwrap()),
                    Err(ResidueError::DerivativeVanishes(_)) => {}
                    Err(e) => prop_assert!(false, "{e}"),
                }
            }
        }
    }
}
