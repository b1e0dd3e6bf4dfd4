//! Regular sequences, Coleff–Herrera descriptors and the transformation law.

use super::ResidueError;
use crate::groebner::{ideal_member, ideal_quotient, Ideal, QuotientContext};
use crate::polyring::{PolyMatrix, PolyVector, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSequenceReport {
    pub regular: bool,
    /// 1-based index of the first element that is a zero divisor (or makes the ideal the unit ideal).
    pub failing_index: Option<usize>,
    pub reason: Option<String>,
}

/// `f_i` is a non-zerodivisor modulo `I_Z + (f_1, ..., f_{i-1})` for every `i`, and
/// `I_Z + (f)` is proper.
pub fn regular_sequence_check(
    f: &[Polynomial],
    context: Option<&QuotientContext>,
) -> Result<RegularSequenceReport, ResidueError> {
    let first = f.first().ok_or(ResidueError::EmptyTuple)?;
    let ring = first.ring().clone();
    let fail =
        |i: usize, why: String| RegularSequenceReport { regular: false, failing_index: Some(i), reason: Some(why) };
    let mut prev = match context {
        Some(ctx) => {
            ctx.ring().ensure_same(&ring)?;
            ctx.ideal().clone()
        }
        None => Ideal::zero(&ring),
    };
    for (i0, fi) in f.iter().enumerate() {
        let i = i0 + 1;
        fi.ring().ensure_same(&ring)?;
        if prev.contains(fi)? {
            return Ok(fail(i, format!("f_{i} = {fi} vanishes modulo the previous elements")));
        }
        let colon = ideal_quotient(&prev, fi, None)?;
        if !prev.contains_ideal(&colon)? {
            return Ok(fail(i, format!("f_{i} = {fi} is a zero divisor modulo the previous elements")));
        }
        prev = prev.with_generators(std::slice::from_ref(fi))?;
        if prev.is_unit() {
            return Ok(fail(i, "the sequence generates the unit ideal".into()));
        }
    }
    Ok(RegularSequenceReport { regular: true, failing_index: None, reason: None })
}

/// Which residue current a descriptor stands for.
#[derive(Clone, Debug, PartialEq)]
pub enum CurrentKind {
    ColeffHerrera {
        tuple: Vec<Polynomial>,
    },
    /// Built from a free resolution of the given length.
    AwCurrent {
        resolution_length: usize,
    },
    PoincareResidue,
}

impl CurrentKind {
    pub fn name(&self) -> &'static str {
        match self {
            CurrentKind::ColeffHerrera { .. } => "coleff_herrera",
            CurrentKind::AwCurrent { .. } => "aw_current",
            CurrentKind::PoincareResidue => "poincare_residue",
        }
    }
}

/// A residue current described by its annihilator, the degrees carrying components, and
/// the power of `2 pi i` in its normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalCurrent {
    pub kind: CurrentKind,
    pub annihilator: Ideal,
    pub context: Option<QuotientContext>,
    pub degree_span: (usize, usize),
    pub twopi_exponent: i32,
}

impl FormalCurrent {
    /// `g` annihilates the current iff `g` lies in the annihilator ideal (mod `I_Z`).
    pub fn annihilates(&self, g: &Polynomial) -> Result<bool, ResidueError> {
        Ok(ideal_member(g, &self.annihilator, self.context.as_ref())?)
    }
}

/// The Coleff–Herrera product of a regular sequence; its annihilator is `(f)`.
pub fn coleff_herrera(f: &[Polynomial], context: Option<&QuotientContext>) -> Result<FormalCurrent, ResidueError> {
    let report = regular_sequence_check(f, context)?;
    if let Some(i) = report.failing_index {
        return Err(ResidueError::NotRegular { index: i, reason: report.reason.unwrap_or_default() });
    }
    let ring = f[0].ring();
    Ok(FormalCurrent {
        kind: CurrentKind::ColeffHerrera { tuple: f.to_vec() },
        annihilator: Ideal::new(ring, f.to_vec())?,
        context: context.filter(|c| !c.is_ambient()).cloned(),
        degree_span: (f.len(), f.len()),
        twopi_exponent: 0,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransformationVerdict {
    /// `f_j = sum_i g_i A_ij` fails.
    NotATransformation { column: usize },
    /// `det A` vanishes at the origin; no claim about the ideals.
    NotInvertibleAtOrigin { det: Polynomial },
    /// `det A` is a unit at the origin and `(f) = (g)`.
    Certified { det: Polynomial },
    /// `det A` is a unit at the origin but `(f) != (g)` globally; the ideals agree only near the origin.
    LocalOnly { det: Polynomial },
}

/// Checks `f = g A`, and when `det A(0) != 0`, the ideal equality `(f) = (g)` it implies.
pub fn transformation_law_check(
    f: &[Polynomial],
    g: &[Polynomial],
    a: &PolyMatrix,
    context: Option<&QuotientContext>,
) -> Result<TransformationVerdict, ResidueError> {
    let p = f.len();
    if p == 0 {
        return Err(ResidueError::EmptyTuple);
    }
    if g.len() != p || a.nrows() != p || a.ncols() != p {
        return Err(ResidueError::Shape(format!(
            "tuples of length {} and {} with a {}x{} matrix",
            p,
            g.len(),
            a.nrows(),
            a.ncols()
        )));
    }
    let ring = f[0].ring();
    let gv = PolyVector::new(ring, g.to_vec())?;
    let ga = a.transpose().mul_vector(&gv)?;
    for (j, (lhs, rhs)) in f.iter().zip(ga.entries()).enumerate() {
        let diff = lhs - rhs;
        let zero = match context {
            Some(ctx) => ctx.is_zero(&diff)?,
            None => diff.is_zero(),
        };
        if !zero {
            return Ok(TransformationVerdict::NotATransformation { column: j + 1 });
        }
    }
    let det = a.determinant()?;
    if !det.is_local_unit() {
        return Ok(TransformationVerdict::NotInvertibleAtOrigin { det });
    }
    let jf = Ideal::new(ring, f.to_vec())?;
    let jg = Ideal::new(ring, g.to_vec())?;
    let mut equal = true;
    for (x, y) in [(&jf, &jg), (&jg, &jf)] {
        for h in x.gens() {
            if !ideal_member(h, y, context)? {
                equal = false;
            }
        }
    }
    Ok(if equal { TransformationVerdict::Certified { det } } else { TransformationVerdict::LocalOnly { det } })
}
