//! Free resolutions by iterated syzygies, and pruning to a minimal resolution.

use super::complex::{reduce_entry, ChainComplex, Minimality};
use super::HomalgError;
use crate::groebner::{syzygies, Ideal, QuotientContext, SubmoduleBasis};
use crate::polyring::{PolyMatrix, Polynomial, PolynomialRing, Rational};

pub const DEFAULT_CAP: usize = 16;

/// Free resolution of `O/I` (or `O_Z/I` in a quotient context) with at most `cap` differentials.
/// `phi_1` is the row of generators (reduced mod `I_Z`, zeros dropped); each further
/// differential generates the syzygies of the previous one.
pub fn free_resolution(
    ideal: &Ideal,
    context: Option<&QuotientContext>,
    cap: usize,
    minimal: bool,
) -> Result<ChainComplex, HomalgError> {
    if cap == 0 {
        return Err(HomalgError::InvalidCap);
    }
    let ring = ideal.ring().clone();
    if let Some(ctx) = context {
        ctx.ring().ensure_same(&ring)?;
    }
    let mut gens = Vec::new();
    for g in ideal.gens() {
        let g = reduce_entry(context, g)?;
        if !g.is_zero() {
            gens.push(g);
        }
    }
    if gens.is_empty() {
        return Ok(ChainComplex::free_module(&ring, context, 1));
    }
    let mut diffs = vec![PolyMatrix::from_rows(&ring, vec![gens])?];
    let mut truncated = false;
    loop {
        let last = diffs.last().expect("nonempty");
        let syz = syzygies(&SubmoduleBasis::from_columns(last), context)?;
        if syz.is_empty() {
            break;
        }
        if diffs.len() >= cap {
            truncated = true;
            break;
        }
        diffs.push(syz.to_matrix());
    }
    let mut ranks = vec![1];
    ranks.extend(diffs.iter().map(PolyMatrix::ncols));
    let c = ChainComplex::new(&ring, context, ranks, diffs, truncated)?;
    if minimal {
        minimalize(&c)
    } else {
        Ok(c)
    }
}

type Rows = Vec<Vec<Polynomial>>;

fn to_rows(m: &PolyMatrix) -> Rows {
    m.rows()
}

fn from_rows(ring: &PolynomialRing, rows: usize, cols: usize, m: Rows) -> Result<PolyMatrix, HomalgError> {
    Ok(PolyMatrix::from_data(ring, rows, cols, m.into_iter().flatten().collect())?)
}

fn find_pivot(mats: &[Rows]) -> Option<(usize, usize, usize, Rational)> {
    for (idx, m) in mats.iter().enumerate() {
        for (i, row) in m.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() && e.is_constant() {
                    return Some((idx, i, j, e.constant_term()));
                }
            }
        }
    }
    None
}

/// Splits off trivial summands `O --c--> O` for every nonzero constant entry `c` until none is left.
/// Entries that are units only locally (nonzero constant term, not constant) are flagged, not pivoted.
pub fn minimalize(c: &ChainComplex) -> Result<ChainComplex, HomalgError> {
    let ring = c.ring().clone();
    let ctx = c.context();
    let mut ranks = c.ranks().to_vec();
    let mut mats: Vec<Rows> = c.diffs().iter().map(to_rows).collect();
    let reduce_all = |m: &mut Rows| -> Result<(), HomalgError> {
        for row in m.iter_mut() {
            for e in row.iter_mut() {
                *e = reduce_entry(ctx, e)?;
            }
        }
        Ok(())
    };
    while let Some((idx, i, j, piv)) = find_pivot(&mats) {
        let inv = piv.recip();
        // column operations on phi_k: col_l -= t_l col_j, compensated in the rows of phi_{k+1}
        let t: Vec<Polynomial> = mats[idx][i].iter().map(|e| e.scale(&inv)).collect();
        {
            let m = &mut mats[idx];
            for row in m.iter_mut() {
                let pj = row[j].clone();
                for (l, tl) in t.iter().enumerate() {
                    if l != j && !tl.is_zero() && !pj.is_zero() {
                        row[l] = &row[l] - &(tl * &pj);
                    }
                }
            }
        }
        if idx + 1 < mats.len() {
            let next = &mut mats[idx + 1];
            let ncols = next.first().map(Vec::len).unwrap_or(0);
            for col in 0..ncols {
                let mut acc = next[j][col].clone();
                for (l, tl) in t.iter().enumerate() {
                    if l != j && !tl.is_zero() {
                        acc = &acc + &(tl * &next[l][col]);
                    }
                }
                next[j][col] = acc;
            }
            reduce_all(next)?;
        }
        // row operations on phi_k: row_r -= s_r row_i, compensated in the columns of phi_{k-1}
        let s: Vec<Polynomial> = mats[idx].iter().map(|row| row[j].scale(&inv)).collect();
        {
            let m = &mut mats[idx];
            let pivot_row = m[i].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r == i || s[r].is_zero() {
                    continue;
                }
                for (e, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *e = &*e - &(&s[r] * p);
                    }
                }
            }
            reduce_all(m)?;
        }
        if idx >= 1 {
            let prev = &mut mats[idx - 1];
            for row in prev.iter_mut() {
                let mut acc = row[i].clone();
                for (r, sr) in s.iter().enumerate() {
                    if r != i && !sr.is_zero() {
                        acc = &acc + &(sr * &row[r]);
                    }
                }
                row[i] = acc;
            }
            reduce_all(prev)?;
        }
        // delete the split summand
        let m = &mut mats[idx];
        m.remove(i);
        for row in m.iter_mut() {
            row.remove(j);
        }
        if idx + 1 < mats.len() {
            let removed = mats[idx + 1].remove(j);
            if removed.iter().any(|e| !e.is_zero()) {
                return Err(HomalgError::Internal("split summand has nonzero image".into()));
            }
        }
        if idx >= 1 {
            for row in mats[idx - 1].iter_mut() {
                let e = row.remove(i);
                if !e.is_zero() {
                    return Err(HomalgError::Internal("split summand is hit by a nonzero map".into()));
                }
            }
        }
        ranks[idx] -= 1;
        ranks[idx + 1] -= 1;
    }
    while ranks.len() > 2 && *ranks.last().expect("nonempty") == 0 {
        ranks.pop();
        mats.pop();
    }
    let mut minimality = Minimality::Minimal;
    'scan: for (idx, m) in mats.iter().enumerate() {
        for (i, row) in m.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_local_unit() {
                    minimality = Minimality::NotLocallyMinimal { level: idx + 1, row: i, col: j };
                    break 'scan;
                }
            }
        }
    }
    let mut diffs = Vec::with_capacity(mats.len());
    for (k, m) in mats.into_iter().enumerate() {
        diffs.push(from_rows(&ring, ranks[k], ranks[k + 1], m)?);
    }
    let out = ChainComplex::from_parts_unchecked(&ring, ctx, ranks, diffs, c.is_truncated(), minimality);
    if !out.verify()? {
        return Err(HomalgError::Internal("minimalization broke the complex".into()));
    }
    Ok(out)
}

/// The ideal resolved by `c`: entries of `phi_1`.
pub fn resolved_ideal(c: &ChainComplex) -> Result<Ideal, HomalgError> {
    let gens = c.differential(1).map(|m| m.entries().to_vec()).unwrap_or_default();
    Ok(Ideal::new(c.ring(), gens)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::equal_up_to_units;
    use crate::polyring::poly_parse;

    fn ideal(r: &PolynomialRing, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| poly_parse(g, r).unwrap()).collect()).unwrap()
    }

    fn mat(r: &PolynomialRing, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            r,
            rows.iter().map(|row| row.iter().map(|s| poly_parse(s, r).unwrap()).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn resolution_of_xz_yz() {
        let r = PolynomialRing::grevlex(&["x", "y", "z"]).unwrap();
        let c = free_resolution(&ideal(&r, &["x*z", "y*z"]), None, DEFAULT_CAP, true).unwrap();
        assert_eq!(c.ranks(), &[1, 2, 1]);
        assert!(c.is_complete());
        assert!(equal_up_to_units(&c.diffs()[1], &mat(&r, &[&["-y"], &["x"]])));
        assert_eq!(c.minimality(), &Minimality::Minimal);
    }

    #[test]
    fn resolution_of_coordinates_is_koszul() {
        let r = PolynomialRing::grevlex(&["z", "w"]).unwrap();
        let c = free_resolution(&ideal(&r, &["z", "w"]), None, DEFAULT_CAP, true).unwrap();
        assert_eq!(c.ranks(), &[1, 2, 1]);
        assert_eq!(c.diffs()[0], mat(&r, &[&["z", "w"]]));
        assert!(equal_up_to_units(&c.diffs()[1], &mat(&r, &[&["-w"], &["z"]])));
    }

    #[test]
    fn periodic_resolution_over_quotient() {
        let r = PolynomialRing::grevlex(&["x", "y"]).unwrap();
        let ctx = QuotientContext::from_gens(&r, vec![poly_parse("x*y", &r).unwrap()]).unwrap();
        let c = free_resolution(&ideal(&r, &["x"]), Some(&ctx), 6, true).unwrap();
        assert!(c.is_truncated());
        assert_eq!(c.ranks(), &[1; 7]);
        for (k, d) in c.diffs().iter().enumerate() {
            let expect = if k % 2 == 0 { "x" } else { "y" };
            assert_eq!(d, &mat(&r, &[&[expect]]), "level {}", k + 1);
        }
    }

    #[test]
    fn minimalize_redundant_generator() {
        let r = PolynomialRing::grevlex(&["z", "w"]).unwrap();
        let j = ideal(&r, &["z", "w", "z + w"]);
        let raw = free_resolution(&j, None, DEFAULT_CAP, false).unwrap();
        assert_eq!(raw.rank(1), 3);
        let m = minimalize(&raw).unwrap();
        assert_eq!(m.ranks(), &[1, 2, 1]);
        let after = resolved_ideal(&m).unwrap();
        assert!(after.same_ideal(&j).unwrap());
        assert_eq!(minimalize(&m).unwrap().diffs(), m.diffs());
    }

    #[test]
    fn unit_ideal_collapses() {
        let r = PolynomialRing::grevlex(&["x"]).unwrap();
        let c = free_resolution(&ideal(&r, &["1"]), None, DEFAULT_CAP, true).unwrap();
        assert_eq!(c.ranks(), &[0, 0]);
        // no constant entry appears here, so only the local-unit flag reports the unit ideal
        let c = free_resolution(&ideal(&r, &["x", "1 + x"]), None, DEFAULT_CAP, true).unwrap();
        assert_eq!(c.ranks(), &[1, 2, 1]);
        assert!(matches!(c.minimality(), Minimality::NotLocallyMinimal { level: 1, .. }));
    }

    #[test]
    fn local_unit_is_flagged() {
        let r = PolynomialRing::grevlex(&["x"]).unwrap();
        // (1 + x) generates a proper ideal, but its generator is a unit at the origin
        let c = free_resolution(&ideal(&r, &["1 + x"]), None, DEFAULT_CAP, true).unwrap();
        assert_eq!(c.ranks(), &[1, 1]);
        assert_eq!(c.minimality(), &Minimality::NotLocallyMinimal { level: 1, row: 0, col: 0 });
    }

    #[test]
    fn zero_ideal_resolves_trivially() {
        let r = PolynomialRing::grevlex(&["x"]).unwrap();
        let c = free_resolution(&Ideal::zero(&r), None, 4, true).unwrap();
        assert_eq!(c.ranks(), &[1]);
        assert!(c.is_complete());
    }
}
