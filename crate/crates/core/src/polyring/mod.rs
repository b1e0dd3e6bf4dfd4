//! Exact multivariate polynomials over the rationals.

mod division;
mod matrix;
mod monomial;
mod parse;
mod poly;
mod ring;

use thiserror::Error;

pub use division::{check_division, compare_monomials, div_exact, divide, divide_vector, Division};
pub use matrix::{PolyMatrix, PolyVector};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::poly_parse;
pub use poly::{format_rational, Polynomial};
pub(crate) use ring::is_identifier;
pub use ring::PolynomialRing;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at offset {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("monomial length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("empty divisor list")]
    EmptyDivisors,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// The three ring operations exposed to scripts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(op: ArithOp, p: &Polynomial, q: &Polynomial) -> Result<Polynomial, PolyError> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
    }
}

/// Builds a rational from a pair of machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::cmp::Ordering;

    fn ring3() -> PolynomialRing {
        PolynomialRing::grevlex(&["x", "y", "z"]).unwrap()
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -9i64..=9), 0..5).prop_map(|terms| {
            let r = ring3();
            Polynomial::from_terms(
                &r,
                terms.into_iter().map(|((a, b, c), k)| (Monomial::new(vec![a, b, c]), rat(k, 1))),
            )
        })
    }

    #[test]
    fn arith_examples() {
        let r = PolynomialRing::grevlex(&["x", "y", "z"]).unwrap();
        let p = |s: &str| poly_parse(s, &r).unwrap();
        assert_eq!(poly_arith(ArithOp::Mul, &p("z"), &p("z^2")).unwrap(), p("z^3"));
        assert!(poly_arith(ArithOp::Sub, &p("x + y"), &p("x + y")).unwrap().is_zero());
        assert_eq!(poly_arith(ArithOp::Mul, &p("x + y"), &p("x - y")).unwrap(), p("x^2 - y^2"));
        // (x+y)^2 by repeated multiplication
        let s = p("x + y");
        let sq = &s * &s;
        assert_eq!(p("(x+y)^2"), sq);
        assert_eq!(sq.to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = PolynomialRing::grevlex(&["x"]).unwrap();
        let b = PolynomialRing::grevlex(&["y"]).unwrap();
        let r = poly_arith(ArithOp::Add, &Polynomial::var(&a, 0), &Polynomial::var(&b, 0));
        assert!(matches!(r, Err(PolyError::RingMismatch(..))));
    }

    #[test]
    fn compare_checks_length() {
        let r = compare_monomials(MonomialOrder::Lex, &Monomial::one(2), &Monomial::one(3));
        assert_eq!(r, Err(PolyError::LengthMismatch(2, 3)));
    }

    #[test]
    fn invalid_rings() {
        assert!(PolynomialRing::grevlex::<&str>(&[]).is_err());
        assert!(PolynomialRing::grevlex(&["x", "x"]).is_err());
        assert!(PolynomialRing::grevlex(&["1x"]).is_err());
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..4, 3).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
        }

        #[test]
        fn print_parse_roundtrip(p in arb_poly()) {
            let text = p.to_string();
            let back = poly_parse(&text, p.ring()).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn division_identity(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            let divs: Vec<_> = [g, h].into_iter().filter(|d| !d.is_zero()).collect();
            prop_assume!(!divs.is_empty());
            for o in [MonomialOrder::Lex, MonomialOrder::GrLex, MonomialOrder::GrevLex] {
                let d = divide(&f, &divs, o).unwrap();
                prop_assert!(check_division(&f, &divs, &d));
            }
        }

        #[test]
        fn orders_are_total_and_multiplicative(
            ms in prop::collection::vec(arb_monomial(), 2..6),
            t in arb_monomial(),
        ) {
            for o in [MonomialOrder::Lex, MonomialOrder::GrLex, MonomialOrder::GrevLex,
                      MonomialOrder::Elimination { block: 1 }] {
                for a in &ms {
                    prop_assert_eq!(o.compare(a, a), Ordering::Equal);
                    prop_assert_ne!(o.compare(a, &Monomial::one(3)), Ordering::Less);
                    for b in &ms {
                        let ab = o.compare(a, b);
                        prop_assert_eq!(ab, o.compare(b, a).reverse());
                        if ab == Ordering::Equal { prop_assert_eq!(a, b); }
                        if ab == Ordering::Less {
                            prop_assert_eq!(o.compare(&a.mul(&t), &b.mul(&t)), Ordering::Less);
                        }
                        for c in &ms {
                            if ab == Ordering::Less && o.compare(b, c) == Ordering::Less {
                                prop_assert_eq!(o.compare(a, c), Ordering::Less);
                            }
                        }
                    }
                }
            }
        }
    }
}
