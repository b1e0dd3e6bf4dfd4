//! Assembly of every algebraically determined ingredient of the current `R^J_Z`.

use super::chainmap::{comparison_morphism, ChainMap};
use super::regular::{CurrentKind, FormalCurrent};
use super::shape::{structure_form_shape_with, StructureFormShape};
use super::ResidueError;
use crate::groebner::{dimension, ideal_member, Ideal, QuotientContext};
use crate::homalg::{free_resolution, ChainComplex, DEFAULT_CAP};
use crate::polyring::Polynomial;

/// The full preimage `J~ = (representatives) + I_Z` of an ideal `J` of `O_Z`.
pub fn maximal_lifting(j: &Ideal, z: &QuotientContext) -> Result<Ideal, ResidueError> {
    j.ring().ensure_same(z.ring())?;
    Ok(z.lift_ideal(j.gens())?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurrentRecipe {
    pub z: QuotientContext,
    /// Generators of `J` (ambient representatives of elements of `O_Z`).
    pub j: Ideal,
    pub j_lift: Ideal,
    /// Minimal resolution of `O/J~`.
    pub e: ChainComplex,
    /// Minimal resolution of `O/I_Z`.
    pub f: ChainComplex,
    pub a: ChainMap,
    pub shape: StructureFormShape,
    pub current: FormalCurrent,
    pub z_cohen_macaulay: bool,
    pub j_lift_cohen_macaulay: bool,
}

fn is_cm(res: &ChainComplex, ideal: &Ideal) -> Result<bool, ResidueError> {
    let codim = dimension(ideal)?.codim;
    Ok(codim.finite() == Some(res.length()))
}

/// Builds `J~`, minimal resolutions `E` of `O/J~` and `F` of `O/I_Z`, the comparison morphism
/// `a : F -> E`, the structure-form shape of `Z`, and the descriptor of the current whose
/// annihilator in `O_Z` is `J`.
pub fn build_current_recipe(z: &QuotientContext, j: &Ideal) -> Result<CurrentRecipe, ResidueError> {
    let j_lift = maximal_lifting(j, z)?;
    if j_lift.is_unit() {
        return Err(ResidueError::UnitIdeal);
    }
    let ring = z.ring();
    let cap = DEFAULT_CAP.max(ring.nvars() + 1);
    let f = free_resolution(z.ideal(), None, cap, true)?;
    let degenerate = z.ideal().contains_ideal(&j_lift)?;
    let (e, a) = if degenerate {
        (f.clone(), ChainMap::identity(&f))
    } else {
        let e = free_resolution(&j_lift, None, cap, true)?;
        let a = comparison_morphism(&f, &e)?;
        (e, a)
    };
    if e.is_truncated() || f.is_truncated() {
        return Err(ResidueError::Truncated);
    }
    let shape = structure_form_shape_with(z, &f, None)?;
    let codim = dimension(&j_lift)?.codim.finite().unwrap_or(0);
    let current = FormalCurrent {
        kind: CurrentKind::AwCurrent { resolution_length: e.length() },
        annihilator: j.clone(),
        context: Some(z.clone()).filter(|c| !c.is_ambient()),
        degree_span: (codim, e.length()),
        twopi_exponent: 0,
    };
    let z_cohen_macaulay = is_cm(&f, z.ideal())?;
    let j_lift_cohen_macaulay = is_cm(&e, &j_lift)?;
    Ok(CurrentRecipe {
        z: z.clone(),
        j: j.clone(),
        j_lift,
        e,
        f,
        a,
        shape,
        current,
        z_cohen_macaulay,
        j_lift_cohen_macaulay,
    })
}

/// `g` annihilates `R^J_Z`: decided both as `g mod I_Z ∈ J` and as `g ∈ J~`; the two must agree.
pub fn annihilator_member(recipe: &CurrentRecipe, g: &Polynomial) -> Result<bool, ResidueError> {
    let in_quotient = ideal_member(g, &recipe.j, Some(&recipe.z))?;
    let in_lift = recipe.j_lift.contains(g)?;
    if in_quotient != in_lift {
        return Err(ResidueError::Inconsistent(format!(
            "membership of {g}: {in_quotient} in O_Z, {in_lift} in the lifted ideal"
        )));
    }
    Ok(in_quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{equal_up_to_units, koszul_complex};
    use crate::polyring::{poly_parse, PolyMatrix, PolynomialRing};
    use crate::residues::{chain_homotopy, verify_homotopy};

    fn setup() -> (PolynomialRing, QuotientContext) {
        let r = PolynomialRing::grevlex(&["z", "w"]).unwrap();
        let z = QuotientContext::from_gens(&r, vec![poly_parse("z^3 - w^2", &r).unwrap()]).unwrap();
        (r, z)
    }

    fn p(r: &PolynomialRing, s: &str) -> Polynomial {
        poly_parse(s, r).unwrap()
    }

    #[test]
    fn cusp_maximal_ideal() {
        let (r, z) = setup();
        let m = Ideal::new(&r, vec![p(&r, "z"), p(&r, "w")]).unwrap();
        let rec = build_current_recipe(&z, &m).unwrap();
        assert!(rec.j_lift.same_ideal(&m).unwrap());
        let k = koszul_complex(&[p(&r, "z"), p(&r, "w")], None).unwrap();
        assert_eq!(rec.e.ranks(), k.ranks());
        for (a, b) in rec.e.diffs().iter().zip(k.diffs()) {
            assert!(equal_up_to_units(a, b));
        }
        assert_eq!(rec.current.degree_span, (2, 2));
        assert!(rec.z_cohen_macaulay && rec.j_lift_cohen_macaulay);
        for (g, expect) in [("z", true), ("w", true), ("1", false), ("z^3 - w^2", true), ("1 + z", false)] {
            assert_eq!(annihilator_member(&rec, &p(&r, g)).unwrap(), expect, "{g}");
        }
        // a_1 agrees with (z^2, -w) up to homotopy
        assert_eq!(rec.e.diffs()[0], PolyMatrix::from_rows(&r, vec![vec![p(&r, "z"), p(&r, "w")]]).unwrap());
        let reference = ChainMap::new(
            &rec.f,
            &rec.e,
            vec![
                PolyMatrix::identity(&r, 1),
                PolyMatrix::from_rows(&r, vec![vec![p(&r, "z^2")], vec![p(&r, "-w")]]).unwrap(),
            ],
        )
        .unwrap();
        let s = chain_homotopy(&rec.a, &reference).unwrap();
        assert!(verify_homotopy(&rec.a, &reference, &s).unwrap());
    }

    #[test]
    fn zero_ideal_is_degenerate() {
        let (r, z) = setup();
        let rec = build_current_recipe(&z, &Ideal::zero(&r)).unwrap();
        assert!(rec.j_lift.same_ideal(z.ideal()).unwrap());
        assert_eq!(rec.e, rec.f);
        assert_eq!(rec.a, ChainMap::identity(&rec.f));
        assert!(!annihilator_member(&rec, &p(&r, "z")).unwrap());
        assert!(annihilator_member(&rec, &p(&r, "z^3 - w^2")).unwrap());
    }

    #[test]
    fn hypersurface_principal() {
        let (r, z) = setup();
        let j = Ideal::new(&r, vec![p(&r, "z + w")]).unwrap();
        let rec = build_current_recipe(&z, &j).unwrap();
        assert!(rec.j_lift.same_ideal(&Ideal::new(&r, vec![p(&r, "z + w"), p(&r, "z^3 - w^2")]).unwrap()).unwrap());
        let g = &(&p(&r, "z + w") * &p(&r, "w^2 + 3")) + &(&p(&r, "z^3 - w^2") * &p(&r, "z"));
        assert!(annihilator_member(&rec, &g).unwrap());
        assert!(!annihilator_member(&rec, &p(&r, "w")).unwrap());
    }

    #[test]
    fn unit_ideal_refused() {
        let (r, z) = setup();
        let j = Ideal::new(&r, vec![p(&r, "1 + z - z")]).unwrap();
        assert!(matches!(build_current_recipe(&z, &j), Err(ResidueError::UnitIdeal)));
    }
}
