//! Chain complexes of free modules and the constructions that build them directly.

use std::cmp::Ordering;

use super::HomalgError;
use crate::groebner::QuotientContext;
use crate::polyring::{PolyMatrix, Polynomial, PolynomialRing, Rational};

/// Outcome of the last minimality scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Minimality {
    Unchecked,
    Minimal,
    /// An entry is a unit in the local ring at the origin without being a constant.
    NotLocallyMinimal {
        level: usize,
        row: usize,
        col: usize,
    },
}

/// `0 <- C_0 <- C_1 <- ... <- C_N` with `C_k = O^{r_k}` and `phi_k : C_k -> C_{k-1}` an
/// `r_{k-1} x r_k` matrix. In a quotient context all entries are kept in normal form.
/// Equality ignores the cached minimality scan.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: PolynomialRing,
    context: Option<QuotientContext>,
    ranks: Vec<usize>,
    diffs: Vec<PolyMatrix>,
    truncated: bool,
    minimality: Minimality,
}

impl PartialEq for ChainComplex {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.context == other.context
            && self.ranks == other.ranks
            && self.diffs == other.diffs
            && self.truncated == other.truncated
    }
}

pub(crate) fn reduce_entry(context: Option<&QuotientContext>, p: &Polynomial) -> Result<Polynomial, HomalgError> {
    Ok(match context {
        Some(ctx) => ctx.reduce(p)?,
        None => p.clone(),
    })
}

pub(crate) fn reduce_mat(context: Option<&QuotientContext>, m: &PolyMatrix) -> Result<PolyMatrix, HomalgError> {
    Ok(match context {
        Some(ctx) => ctx.reduce_matrix(m)?,
        None => m.clone(),
    })
}

fn normalize_context(context: Option<&QuotientContext>) -> Option<QuotientContext> {
    context.filter(|c| !c.is_ambient()).cloned()
}

impl ChainComplex {
    /// Validates shapes and `phi_k phi_{k+1} = 0` (modulo `I_Z`).
    pub fn new(
        ring: &PolynomialRing,
        context: Option<&QuotientContext>,
        ranks: Vec<usize>,
        diffs: Vec<PolyMatrix>,
        truncated: bool,
    ) -> Result<Self, HomalgError> {
        if ranks.len() != diffs.len() + 1 {
            return Err(HomalgError::Shape(format!("{} ranks for {} differentials", ranks.len(), diffs.len())));
        }
        if let Some(ctx) = context {
            ctx.ring().ensure_same(ring)?;
        }
        let context = normalize_context(context);
        let mut reduced = Vec::with_capacity(diffs.len());
        for (k, d) in diffs.iter().enumerate() {
            d.ring().ensure_same(ring)?;
            if d.nrows() != ranks[k] || d.ncols() != ranks[k + 1] {
                return Err(HomalgError::Shape(format!(
                    "phi_{} is {}x{}, expected {}x{}",
                    k + 1,
                    d.nrows(),
                    d.ncols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
            reduced.push(reduce_mat(context.as_ref(), d)?);
        }
        for k in 1..reduced.len() {
            let prod = reduce_mat(context.as_ref(), &reduced[k - 1].mul(&reduced[k])?)?;
            if !prod.is_zero() {
                return Err(HomalgError::NotAComplex { level: k });
            }
        }
        Ok(ChainComplex {
            ring: ring.clone(),
            context,
            ranks,
            diffs: reduced,
            truncated,
            minimality: Minimality::Unchecked,
        })
    }

    pub(crate) fn from_parts_unchecked(
        ring: &PolynomialRing,
        context: Option<&QuotientContext>,
        ranks: Vec<usize>,
        diffs: Vec<PolyMatrix>,
        truncated: bool,
        minimality: Minimality,
    ) -> Self {
        ChainComplex { ring: ring.clone(), context: normalize_context(context), ranks, diffs, truncated, minimality }
    }

    /// The complex `0 <- O^rank` with no differentials.
    pub fn free_module(ring: &PolynomialRing, context: Option<&QuotientContext>, rank: usize) -> Self {
        Self::from_parts_unchecked(ring, context, vec![rank], Vec::new(), false, Minimality::Minimal)
    }

    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn context(&self) -> Option<&QuotientContext> {
        self.context.as_ref()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `phi_1, ..., phi_N`; `diffs()[k - 1]` is `phi_k`.
    pub fn diffs(&self) -> &[PolyMatrix] {
        &self.diffs
    }

    /// `phi_k` for `1 <= k <= N`.
    pub fn differential(&self, k: usize) -> Option<&PolyMatrix> {
        if k == 0 {
            None
        } else {
            self.diffs.get(k - 1)
        }
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// Number of computed differentials.
    pub fn num_levels(&self) -> usize {
        self.diffs.len()
    }

    /// Largest `k` with `C_k != 0`.
    pub fn length(&self) -> usize {
        self.ranks.iter().rposition(|&r| r > 0).unwrap_or(0)
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_complete(&self) -> bool {
        !self.truncated
    }

    pub fn minimality(&self) -> &Minimality {
        &self.minimality
    }

    /// `phi_k phi_{k+1}` reduces to zero at every level.
    pub fn verify(&self) -> Result<bool, HomalgError> {
        for k in 1..self.diffs.len() {
            let prod = reduce_mat(self.context(), &self.diffs[k - 1].mul(&self.diffs[k])?)?;
            if !prod.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same ring and same quotient context.
    pub fn ensure_same_setting(&self, other: &ChainComplex) -> Result<(), HomalgError> {
        self.ring.ensure_same(&other.ring)?;
        if self.context != other.context {
            return Err(HomalgError::ContextMismatch);
        }
        Ok(())
    }
}

/// Lexicographically ordered `k`-subsets of `0..n`.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// The Koszul complex of `f`: `C_k` has basis `e_S` for `k`-subsets `S` in lexicographic order and
/// `phi_k(e_S) = sum_j (-1)^j f_{s_j} e_{S - s_j}`.
pub fn koszul_complex(f: &[Polynomial], context: Option<&QuotientContext>) -> Result<ChainComplex, HomalgError> {
    let ring = f.first().ok_or(HomalgError::EmptyGenerators)?.ring().clone();
    for g in f {
        g.ring().ensure_same(&ring)?;
    }
    let p = f.len();
    let bases: Vec<Vec<Vec<usize>>> = (0..=p).map(|k| subsets(p, k)).collect();
    let ranks: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut diffs = Vec::with_capacity(p);
    for k in 1..=p {
        let mut m = PolyMatrix::zero(&ring, ranks[k - 1], ranks[k]);
        for (col, s) in bases[k].iter().enumerate() {
            for j in 0..s.len() {
                let mut rest = s.clone();
                let drop = rest.remove(j);
                let row = bases[k - 1].binary_search(&rest).expect("lexicographic subsets");
                let entry = if j % 2 == 0 { f[drop].clone() } else { -&f[drop] };
                m.set(row, col, entry);
            }
        }
        diffs.push(m);
    }
    ChainComplex::new(&ring, context, ranks, diffs, false)
}

/// Summands `(p, q)` of `(C ⊗ D)_k`, by descending `p`.
fn tensor_blocks(nc: usize, nd: usize, k: usize) -> Vec<(usize, usize)> {
    let hi = k.min(nc);
    let lo = k.saturating_sub(nd);
    if lo > hi {
        return Vec::new();
    }
    (lo..=hi).rev().map(|p| (p, k - p)).collect()
}

/// Tensor product with differential `phi(x) ⊗ y + (-1)^p x ⊗ psi(y)`. The basis of
/// `(C ⊗ D)_k` lists the blocks `C_p ⊗ D_q` by descending `p`, each block row-major
/// (`e_i ⊗ f_j` at offset `i * rank D_q + j`).
pub fn tensor_complexes(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex, HomalgError> {
    c.ensure_same_setting(d)?;
    let ring = c.ring();
    let (nc, nd) = (c.num_levels(), d.num_levels());
    let n = nc + nd;
    let offsets = |k: usize| -> Vec<((usize, usize), usize)> {
        let mut off = 0;
        tensor_blocks(nc, nd, k)
            .into_iter()
            .map(|b| {
                let o = off;
                off += c.rank(b.0) * d.rank(b.1);
                (b, o)
            })
            .collect()
    };
    let total = |k: usize| -> usize { tensor_blocks(nc, nd, k).iter().map(|&(p, q)| c.rank(p) * d.rank(q)).sum() };
    let ranks: Vec<usize> = (0..=n).map(total).collect();
    let mut diffs = Vec::with_capacity(n);
    for k in 1..=n {
        let mut m = PolyMatrix::zero(ring, ranks[k - 1], ranks[k]);
        let target = offsets(k - 1);
        let find = |b: (usize, usize)| target.iter().find(|(t, _)| *t == b).map(|(_, o)| *o);
        for ((p, q), off) in offsets(k) {
            let (rc, rd) = (c.rank(p), d.rank(q));
            for i in 0..rc {
                for j in 0..rd {
                    let col = off + i * rd + j;
                    if p >= 1 {
                        if let Some(t) = find((p - 1, q)) {
                            let phi = c.differential(p).expect("level exists");
                            for r in 0..c.rank(p - 1) {
                                let e = phi.get(r, i);
                                if !e.is_zero() {
                                    m.set(t + r * rd + j, col, e.clone());
                                }
                            }
                        }
                    }
                    if q >= 1 {
                        if let Some(t) = find((p, q - 1)) {
                            let psi = d.differential(q).expect("level exists");
                            let rd1 = d.rank(q - 1);
                            for s in 0..rd1 {
                                let e = psi.get(s, j);
                                if !e.is_zero() {
                                    let v = if p % 2 == 0 { e.clone() } else { -e };
                                    m.set(t + i * rd1 + s, col, v);
                                }
                            }
                        }
                    }
                }
            }
        }
        diffs.push(m);
    }
    ChainComplex::new(ring, c.context(), ranks, diffs, c.is_truncated() || d.is_truncated())
}

/// The same complex with entries read in a ring with more variables.
pub fn extend_ring(c: &ChainComplex, bigger: &PolynomialRing) -> Result<ChainComplex, HomalgError> {
    if c.ring() == bigger {
        return Ok(c.clone());
    }
    if !c.ring().is_subring_of(bigger) {
        return Err(HomalgError::NotASubring(c.ring().to_string(), bigger.to_string()));
    }
    let diffs = c.diffs().iter().map(|d| d.to_ring(bigger)).collect::<Result<Vec<_>, _>>()?;
    let context = match c.context() {
        Some(ctx) => Some(QuotientContext::new(ctx.ideal().to_ring(bigger)?)),
        None => None,
    };
    let mut out = ChainComplex::new(bigger, context.as_ref(), c.ranks().to_vec(), diffs, c.is_truncated())?;
    out.minimality = c.minimality.clone();
    Ok(out)
}

/// Total order on polynomials of one ring: term by term, monomial first, then coefficient.
pub fn poly_cmp(a: &Polynomial, b: &Polynomial) -> Ordering {
    let order = a.ring().order();
    for (x, y) in a.terms().iter().zip(b.terms()) {
        let o = order.compare(&x.0, &y.0).then_with(|| x.1.cmp(&y.1));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.num_terms().cmp(&b.num_terms())
}

fn seq_cmp(a: &[Polynomial], b: &[Polynomial]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = poly_cmp(x, y);
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Representative of a matrix up to row/column permutation and column scaling by constants:
/// rows sorted by their multiset of leading monomials (descending), columns made monic at their
/// first nonzero entry, then columns sorted.
pub fn canonical_matrix(m: &PolyMatrix) -> PolyMatrix {
    let ring = m.ring();
    let order = ring.order();
    let row_key = |i: usize| {
        let mut key: Vec<_> = m.row(i).iter().filter_map(|p| p.leading_monomial().cloned()).collect();
        key.sort_by(|a, b| order.compare(b, a));
        key
    };
    let mut rows: Vec<usize> = (0..m.nrows()).collect();
    let keys: Vec<_> = rows.iter().map(|&i| row_key(i)).collect();
    rows.sort_by(|&a, &b| {
        let (ka, kb) = (&keys[a], &keys[b]);
        for (x, y) in ka.iter().zip(kb) {
            let o = order.compare(y, x);
            if o != Ordering::Equal {
                return o;
            }
        }
        kb.len().cmp(&ka.len())
    });
    let mut cols: Vec<Vec<Polynomial>> = (0..m.ncols())
        .map(|j| {
            let col: Vec<Polynomial> = rows.iter().map(|&i| m.get(i, j).clone()).collect();
            match col.iter().find(|p| !p.is_zero()) {
                Some(p) => {
                    let inv: Rational = p.leading_coeff().expect("nonzero").recip();
                    col.iter().map(|q| q.scale(&inv)).collect()
                }
                None => col,
            }
        })
        .collect();
    cols.sort_by(|a, b| seq_cmp(b, a));
    let mut out = PolyMatrix::zero(ring, m.nrows(), m.ncols());
    for (j, col) in cols.into_iter().enumerate() {
        for (i, p) in col.into_iter().enumerate() {
            out.set(i, j, p);
        }
    }
    out
}

/// Equality up to row/column permutation and constant column scaling.
pub fn equal_up_to_units(a: &PolyMatrix, b: &PolyMatrix) -> bool {
    a.nrows() == b.nrows() && a.ncols() == b.ncols() && canonical_matrix(a) == canonical_matrix(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::poly_parse;

    fn ring(vars: &[&str]) -> PolynomialRing {
        PolynomialRing::grevlex(vars).unwrap()
    }

    fn mat(r: &PolynomialRing, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            r,
            rows.iter().map(|row| row.iter().map(|s| poly_parse(s, r).unwrap()).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn koszul_two_variables() {
        let r = ring(&["z", "w"]);
        let f = [poly_parse("z", &r).unwrap(), poly_parse("w", &r).unwrap()];
        let k = koszul_complex(&f, None).unwrap();
        assert_eq!(k.ranks(), &[1, 2, 1]);
        assert_eq!(k.diffs()[0], mat(&r, &[&["z", "w"]]));
        assert_eq!(k.diffs()[1], mat(&r, &[&["-w"], &["z"]]));
    }

    #[test]
    fn koszul_ranks_are_binomial() {
        let r = ring(&["x", "y", "z"]);
        let f: Vec<_> = ["x", "y", "z"].iter().map(|s| poly_parse(s, &r).unwrap()).collect();
        let k = koszul_complex(&f, None).unwrap();
        assert_eq!(k.ranks(), &[1, 3, 3, 1]);
        assert!(k.verify().unwrap());
        let single = koszul_complex(&f[..1], None).unwrap();
        assert_eq!(single.ranks(), &[1, 1]);
    }

    #[test]
    fn non_complex_rejected() {
        let r = ring(&["x"]);
        let a = mat(&r, &[&["x"]]);
        let err = ChainComplex::new(&r, None, vec![1, 1, 1], vec![a.clone(), a], false);
        assert!(matches!(err, Err(HomalgError::NotAComplex { level: 1 })));
    }

    #[test]
    fn tensor_with_unit_complex() {
        let r = ring(&["z", "w"]);
        let f = [poly_parse("z", &r).unwrap(), poly_parse("w", &r).unwrap()];
        let k = koszul_complex(&f, None).unwrap();
        let unit = ChainComplex::free_module(&r, None, 1);
        let t = tensor_complexes(&k, &unit).unwrap();
        assert_eq!(t.ranks(), k.ranks());
        assert_eq!(t.diffs(), k.diffs());
    }

    #[test]
    fn tensor_of_principal_koszuls() {
        let r = ring(&["x", "y"]);
        let kx = koszul_complex(&[poly_parse("x", &r).unwrap()], None).unwrap();
        let ky = koszul_complex(&[poly_parse("y", &r).unwrap()], None).unwrap();
        let t = tensor_complexes(&kx, &ky).unwrap();
        let kxy = koszul_complex(&[poly_parse("x", &r).unwrap(), poly_parse("y", &r).unwrap()], None).unwrap();
        assert_eq!(t.ranks(), kxy.ranks());
        for (a, b) in t.diffs().iter().zip(kxy.diffs()) {
            assert!(equal_up_to_units(a, b), "{a} vs {b}");
        }
    }

    #[test]
    fn extend_keeps_matrices() {
        let r = ring(&["z", "w"]);
        let big = ring(&["z", "w", "t"]);
        let f = [poly_parse("z", &r).unwrap(), poly_parse("w", &r).unwrap()];
        let k = koszul_complex(&f, None).unwrap();
        let e = extend_ring(&k, &big).unwrap();
        assert_eq!(e.ring(), &big);
        assert_eq!(e.diffs()[1], mat(&big, &[&["-w"], &["z"]]));
        assert_eq!(extend_ring(&k, &r).unwrap(), k);
        assert!(extend_ring(&e, &r).is_err());
    }

    #[test]
    fn canonical_form_ignores_sign_and_order() {
        let r = ring(&["x", "y", "z"]);
        let a = mat(&r, &[&["-y"], &["x"]]);
        let b = mat(&r, &[&["x"], &["-y"]]);
        let c = mat(&r, &[&["y"], &["-x"]]);
        assert!(equal_up_to_units(&a, &c));
        assert!(equal_up_to_units(&b, &c));
        assert!(!equal_up_to_units(&a, &mat(&r, &[&["y"], &["x + 1"]])));
    }

    #[test]
    fn subsets_in_lex_order() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}
