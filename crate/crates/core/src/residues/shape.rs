//! Bidegree and bundle-level bookkeeping for the structure form of a subvariety.

use super::ResidueError;
use crate::groebner::{dimension, ideal_intersect, Codim, Ideal, QuotientContext};
use crate::homalg::{free_resolution, rank_loci, ChainComplex, DEFAULT_CAP};

/// Whether the shape was derived from declared components or assumed pure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Purity {
    /// No decomposition given; `Z` is treated as pure dimensional.
    Assumed,
    /// All declared components have the same dimension.
    Declared,
    /// Components of several dimensions were declared.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeComponent {
    /// `ω_r` of bidegree `(d, r)` with values in `F_{p+r}`.
    Pure { r: usize, bidegree: (usize, usize), level: usize },
    /// `ω^e` of bidimension `(0, e)` with values in `F_{n-e}`, supported on the union of the
    /// components of dimension `>= e`.
    Mixed { e: usize, bidimension: (usize, usize), level: usize, support: Vec<usize> },
}

impl ShapeComponent {
    pub fn level(&self) -> usize {
        match self {
            ShapeComponent::Pure { level, .. } | ShapeComponent::Mixed { level, .. } => *level,
        }
    }
}

/// `codim(W^e + Z_k) >= k + 1` with `k = n - e'`, for declared dimensions `e > e'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusCheck {
    pub e: usize,
    pub e_prime: usize,
    pub level: usize,
    pub codim: Codim,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureFormShape {
    pub purity: Purity,
    pub n: usize,
    pub d: usize,
    pub p: usize,
    pub resolution_length: usize,
    pub components: Vec<ShapeComponent>,
    pub locus_checks: Vec<LocusCheck>,
}

impl StructureFormShape {
    pub fn is_pure(&self) -> bool {
        self.purity != Purity::Mixed
    }
}

/// A declared component `W` of `Z` with its dimension.
#[derive(Clone, Debug)]
pub struct Component {
    pub ideal: Ideal,
    pub dim: usize,
}

fn pure_components(d: usize, p: usize, length: usize) -> Vec<ShapeComponent> {
    (0..=length.saturating_sub(p)).map(|r| ShapeComponent::Pure { r, bidegree: (d, r), level: p + r }).collect()
}

/// Shape of the structure form of `Z`, from a minimal resolution `F` of `O/I_Z`. With a
/// decomposition, each component must contain `I_Z`, their intersection must equal `I_Z`,
/// and each declared dimension must match.
pub fn structure_form_shape(
    z: &QuotientContext,
    decomposition: Option<&[Component]>,
) -> Result<StructureFormShape, ResidueError> {
    let f = free_resolution(z.ideal(), None, DEFAULT_CAP.max(z.ring().nvars() + 1), true)?;
    structure_form_shape_with(z, &f, decomposition)
}

pub(crate) fn structure_form_shape_with(
    z: &QuotientContext,
    f: &ChainComplex,
    decomposition: Option<&[Component]>,
) -> Result<StructureFormShape, ResidueError> {
    let iz = z.ideal();
    if iz.is_unit() {
        return Err(ResidueError::EmptyVariety);
    }
    let n = z.ring().nvars();
    let dim = dimension(iz)?;
    let d = dim.dim.max(0) as usize;
    let p = n - d;
    let length = f.length();
    let comps = match decomposition {
        None | Some([]) => {
            return Ok(StructureFormShape {
                purity: Purity::Assumed,
                n,
                d,
                p,
                resolution_length: length,
                components: pure_components(d, p, length),
                locus_checks: Vec::new(),
            })
        }
        Some(c) => c,
    };
    let mut meet: Option<Ideal> = None;
    for (i, c) in comps.iter().enumerate() {
        c.ideal.ring().ensure_same(z.ring())?;
        if !c.ideal.contains_ideal(iz)? {
            return Err(ResidueError::InvalidDecomposition(format!("component {} does not contain I_Z", i + 1)));
        }
        let actual = dimension(&c.ideal)?.dim;
        if actual != c.dim as i64 {
            return Err(ResidueError::InvalidDecomposition(format!(
                "component {} has dimension {actual}, declared {}",
                i + 1,
                c.dim
            )));
        }
        meet = Some(match meet {
            None => c.ideal.clone(),
            Some(m) => ideal_intersect(&m, &c.ideal)?,
        });
    }
    let meet = meet.expect("nonempty decomposition");
    if !meet.same_ideal(iz)? {
        return Err(ResidueError::InvalidDecomposition("the components do not intersect to I_Z".into()));
    }
    let mut dims: Vec<usize> = comps.iter().map(|c| c.dim).collect();
    dims.sort_unstable_by(|a, b| b.cmp(a));
    dims.dedup();
    if dims.len() == 1 {
        return Ok(StructureFormShape {
            purity: Purity::Declared,
            n,
            d,
            p,
            resolution_length: length,
            components: pure_components(d, p, length),
            locus_checks: Vec::new(),
        });
    }
    let components = dims
        .iter()
        .map(|&e| ShapeComponent::Mixed {
            e,
            bidimension: (0, e),
            level: n - e,
            support: dims.iter().copied().filter(|&g| g >= e).collect(),
        })
        .collect();
    // W^e: intersection of the declared components of dimension e
    let mut by_dim: Vec<(usize, Ideal)> = Vec::new();
    for &e in &dims {
        let mut w: Option<Ideal> = None;
        for c in comps.iter().filter(|c| c.dim == e) {
            w = Some(match w {
                None => c.ideal.clone(),
                Some(m) => ideal_intersect(&m, &c.ideal)?,
            });
        }
        by_dim.push((e, w.expect("dimension taken from the components")));
    }
    let loci = rank_loci(f)?;
    let mut locus_checks = Vec::new();
    for (e, w) in &by_dim {
        for &ep in dims.iter().filter(|&&g| g < *e) {
            let k = n - ep;
            let codim = match loci.locus(k) {
                Some(zk) if loci.codim(k) != Codim::Infinite => dimension(&w.sum(zk)?)?.codim,
                _ => Codim::Infinite,
            };
            locus_checks.push(LocusCheck { e: *e, e_prime: ep, level: k, codim, ok: codim.at_least(k + 1) });
        }
    }
    Ok(StructureFormShape { purity: Purity::Mixed, n, d, p, resolution_length: length, components, locus_checks })
}
