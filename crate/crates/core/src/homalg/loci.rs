//! Determinantal rank loci and the exactness diagnostics built on them.

use super::complex::{reduce_entry, subsets, ChainComplex};
use super::resolution::{free_resolution, DEFAULT_CAP};
use super::HomalgError;
use crate::groebner::{dimension, radical_member, Codim, Ideal, QuotientContext};
use crate::polyring::{PolyMatrix, Polynomial};

/// All `r x r` minors, row and column subsets in lexicographic order. `r = 0` gives `[1]`.
pub fn minors(m: &PolyMatrix, r: usize) -> Result<Vec<Polynomial>, HomalgError> {
    let mut out = Vec::new();
    for rows in subsets(m.nrows(), r) {
        for cols in subsets(m.ncols(), r) {
            out.push(m.submatrix(&rows, &cols).determinant()?);
        }
    }
    Ok(out)
}

/// The Fitting-type ideal `I_r(m)` (plus `I_Z` in a context).
pub fn minor_ideal(m: &PolyMatrix, r: usize, context: Option<&QuotientContext>) -> Result<Ideal, HomalgError> {
    let mut gens = Vec::new();
    for p in minors(m, r)? {
        let p = reduce_entry(context, &p)?;
        if !p.is_zero() && !gens.contains(&p) {
            gens.push(p);
        }
    }
    if let Some(ctx) = context {
        gens.extend(ctx.ideal().gens().iter().cloned());
    }
    Ok(Ideal::new(m.ring(), gens)?)
}

/// Largest `r` with a minor nonzero (mod `I_Z`); the first nonzero minor in lexicographic order ends the search.
pub fn generic_rank(m: &PolyMatrix, context: Option<&QuotientContext>) -> Result<usize, HomalgError> {
    for r in (1..=m.nrows().min(m.ncols())).rev() {
        for rows in subsets(m.nrows(), r) {
            for cols in subsets(m.ncols(), r) {
                let d = m.submatrix(&rows, &cols).determinant()?;
                if !reduce_entry(context, &d)?.is_zero() {
                    return Ok(r);
                }
            }
        }
    }
    Ok(0)
}

/// `r_k = sum_{i >= k} (-1)^{i-k} rank C_i` for `k = 1..=N`; entry `k - 1` holds `r_k`.
pub fn expected_ranks(c: &ChainComplex) -> Result<Vec<i64>, HomalgError> {
    if c.is_truncated() {
        return Err(HomalgError::Truncated("expected ranks"));
    }
    let n = c.num_levels();
    let mut out = vec![0i64; n];
    let mut acc = 0i64;
    for k in (1..=n).rev() {
        acc = c.rank(k) as i64 - acc;
        out[k - 1] = acc;
    }
    Ok(out)
}

/// How the rank `r_k` used for the locus of `phi_k` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankSource {
    /// Alternating sums of module ranks (complete complex over the ambient ring).
    Expected,
    /// Largest nonvanishing minor size, modulo `I_Z` (truncated or quotient-ring complexes).
    Generic,
}

/// Rank loci `Z_k = V(I_{r_k}(phi_k))` of a complex, level `k` at index `k - 1`.
#[derive(Clone, Debug)]
pub struct ResolutionDiagnostics {
    pub source: RankSource,
    pub ranks: Vec<usize>,
    pub expected_ranks: Option<Vec<i64>>,
    pub loci: Vec<Ideal>,
    pub codims: Vec<Codim>,
    /// `codim Z_k >= k`.
    pub verdicts: Vec<bool>,
    /// `Z_{k+1} ⊆ Z_k`, checked by radical membership; index `k - 1` compares levels `k` and `k + 1`.
    pub nested: Vec<bool>,
}

impl ResolutionDiagnostics {
    pub fn locus(&self, k: usize) -> Option<&Ideal> {
        if k == 0 {
            None
        } else {
            self.loci.get(k - 1)
        }
    }

    pub fn codim(&self, k: usize) -> Codim {
        if k == 0 {
            return Codim::Finite(0);
        }
        self.codims.get(k - 1).copied().unwrap_or(Codim::Infinite)
    }
}

pub fn rank_loci(c: &ChainComplex) -> Result<ResolutionDiagnostics, HomalgError> {
    let ctx = c.context();
    let (source, ranks, expected) = if c.is_complete() && ctx.is_none() {
        let e = expected_ranks(c)?;
        let ranks = e.iter().map(|&r| r.max(0) as usize).collect();
        (RankSource::Expected, ranks, Some(e))
    } else {
        let ranks = c.diffs().iter().map(|d| generic_rank(d, ctx)).collect::<Result<Vec<_>, _>>()?;
        (RankSource::Generic, ranks, None)
    };
    let mut loci = Vec::with_capacity(ranks.len());
    let mut codims = Vec::with_capacity(ranks.len());
    let mut verdicts = Vec::with_capacity(ranks.len());
    for (k0, (d, &r)) in c.diffs().iter().zip(&ranks).enumerate() {
        let ideal = minor_ideal(d, r, ctx)?;
        let codim = dimension(&ideal)?.codim;
        verdicts.push(codim.at_least(k0 + 1));
        codims.push(codim);
        loci.push(ideal);
    }
    let mut nested = Vec::new();
    for w in loci.windows(2) {
        let mut ok = true;
        for g in w[0].gens() {
            if !radical_member(g, &w[1])? {
                ok = false;
                break;
            }
        }
        nested.push(ok);
    }
    Ok(ResolutionDiagnostics { source, ranks, expected_ranks: expected, loci, codims, verdicts, nested })
}

/// Per-level data of the exactness criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeLevel {
    pub k: usize,
    pub generic_rank: usize,
    pub rank_condition: bool,
    pub codim: Codim,
    pub codim_condition: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeReport {
    pub passed: bool,
    pub levels: Vec<BeLevel>,
    pub failing_level: Option<usize>,
}

/// Buchsbaum–Eisenbud: a finite free complex over the polynomial ring is exact iff
/// `g_k + g_{k+1} = rank C_k` and `codim I_{g_k}(phi_k) >= k` for all `k >= 1`.
pub fn buchsbaum_eisenbud_check(c: &ChainComplex) -> Result<BeReport, HomalgError> {
    if c.is_truncated() {
        return Err(HomalgError::Truncated("the exactness criterion"));
    }
    if c.context().is_some() {
        return Err(HomalgError::QuotientRefused(
            "the exactness criterion holds for complexes over the polynomial ring only; \
             resolutions over a quotient ring may be infinite and the criterion does not apply"
                .into(),
        ));
    }
    let n = c.num_levels();
    let g: Vec<usize> = c.diffs().iter().map(|d| generic_rank(d, None)).collect::<Result<_, _>>()?;
    let mut levels = Vec::with_capacity(n);
    let mut failing = None;
    for k in 1..=n {
        let gk = g[k - 1];
        let next = g.get(k).copied().unwrap_or(0);
        let rank_condition = gk + next == c.rank(k);
        let codim = dimension(&minor_ideal(&c.diffs()[k - 1], gk, None)?)?.codim;
        let codim_condition = codim.at_least(k);
        if failing.is_none() && !(rank_condition && codim_condition) {
            failing = Some(k);
        }
        levels.push(BeLevel { k, generic_rank: gk, rank_condition, codim, codim_condition });
    }
    Ok(BeReport { passed: failing.is_none(), levels, failing_level: failing })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperIntersection {
    pub proper: bool,
    /// First `(k, l)` with `codim(Z^C_k ∩ Z^D_l) < k + l`, and that codimension.
    pub witness: Option<(usize, usize, Codim)>,
    pub checked: Vec<(usize, usize, Codim)>,
}

/// `codim(Z^C_k ∩ Z^D_l) >= k + l` for all `k >= codim_c`, `l >= codim_d`.
pub fn proper_intersection_check(
    c: &ChainComplex,
    d: &ChainComplex,
    codim_c: usize,
    codim_d: usize,
) -> Result<ProperIntersection, HomalgError> {
    c.ensure_same_setting(d)?;
    let lc = rank_loci(c)?;
    let ld = rank_loci(d)?;
    let mut checked = Vec::new();
    let mut witness = None;
    for k in codim_c.max(1)..=c.num_levels() {
        for l in codim_d.max(1)..=d.num_levels() {
            let (a, b) = (lc.locus(k).expect("level"), ld.locus(l).expect("level"));
            let codim = if lc.codim(k) == Codim::Infinite || ld.codim(l) == Codim::Infinite {
                Codim::Infinite
            } else {
                dimension(&a.sum(b)?)?.codim
            };
            checked.push((k, l, codim));
            if witness.is_none() && !codim.at_least(k + l) {
                witness = Some((k, l, codim));
            }
        }
    }
    Ok(ProperIntersection { proper: witness.is_none(), witness, checked })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CmReport {
    pub cohen_macaulay: bool,
    pub length: usize,
    pub codim: Codim,
}

/// Compares the length of a minimal free resolution of `O/I` with `codim V(I)`.
pub fn cohen_macaulay_check(ideal: &Ideal) -> Result<CmReport, HomalgError> {
    if ideal.is_unit() {
        return Err(HomalgError::UnitIdeal);
    }
    let cap = DEFAULT_CAP.max(ideal.ring().nvars() + 1);
    let res = free_resolution(ideal, None, cap, true)?;
    if res.is_truncated() {
        return Err(HomalgError::Internal("resolution over the polynomial ring did not terminate".into()));
    }
    let codim = dimension(ideal)?.codim;
    let length = res.length();
    Ok(CmReport { cohen_macaulay: codim == Codim::Finite(length), length, codim })
}
