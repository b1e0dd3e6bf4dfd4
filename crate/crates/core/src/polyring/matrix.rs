use std::fmt;

use super::{PolyError, Polynomial, PolynomialRing, Rational};

/// An element of the free module `R^r`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyVector {
    ring: PolynomialRing,
    entries: Vec<Polynomial>,
}

impl PolyVector {
    pub fn new(ring: &PolynomialRing, entries: Vec<Polynomial>) -> Result<Self, PolyError> {
        for e in &entries {
            e.ring().ensure_same(ring)?;
        }
        Ok(PolyVector { ring: ring.clone(), entries })
    }

    pub fn zero(ring: &PolynomialRing, rank: usize) -> Self {
        PolyVector { ring: ring.clone(), entries: vec![Polynomial::zero(ring); rank] }
    }

    /// The standard basis vector `e_i` of `R^rank`.
    pub fn basis(ring: &PolynomialRing, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.entries[i] = Polynomial::one(ring);
        v
    }

    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Polynomial> {
        self.entries
    }

    pub fn get(&self, i: usize) -> &Polynomial {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &PolyVector) -> Result<PolyVector, PolyError> {
        self.check_rank(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(PolyVector { ring: self.ring.clone(), entries })
    }

    pub fn sub(&self, other: &PolyVector) -> Result<PolyVector, PolyError> {
        self.check_rank(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(PolyVector { ring: self.ring.clone(), entries })
    }

    pub fn scale_poly(&self, p: &Polynomial) -> PolyVector {
        let entries = self.entries.iter().map(|e| e * p).collect();
        PolyVector { ring: self.ring.clone(), entries }
    }

    pub fn scale(&self, c: &Rational) -> PolyVector {
        let entries = self.entries.iter().map(|e| e.scale(c)).collect();
        PolyVector { ring: self.ring.clone(), entries }
    }

    pub fn map_entries<F: FnMut(&Polynomial) -> Polynomial>(&self, f: F) -> PolyVector {
        PolyVector { ring: self.ring.clone(), entries: self.entries.iter().map(f).collect() }
    }

    fn check_rank(&self, other: &PolyVector) -> Result<(), PolyError> {
        self.ring.ensure_same(&other.ring)?;
        if self.rank() != other.rank() {
            return Err(PolyError::RankMismatch { expected: self.rank(), found: other.rank() });
        }
        Ok(())
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyVector{self}")
    }
}

/// Dense row-major matrix of polynomials. A `rows x cols` matrix maps `R^cols -> R^rows`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: PolynomialRing,
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(ring: &PolynomialRing, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, data: vec![Polynomial::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &PolynomialRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    /// `c * Id_n`.
    pub fn scalar(ring: &PolynomialRing, n: usize, c: &Polynomial) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(ring: &PolynomialRing, rows: Vec<Vec<Polynomial>>) -> Result<Self, PolyError> {
        let nrows = rows.len();
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(PolyError::ShapeMismatch("rows of unequal length".into()));
            }
            for e in row {
                e.ring().ensure_same(ring)?;
                data.push(e);
            }
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: nrows, cols: ncols, data })
    }

    /// Matrix from row-major entries; works for empty shapes where `from_rows` cannot know the width.
    pub fn from_data(
        ring: &PolynomialRing,
        rows: usize,
        cols: usize,
        data: Vec<Polynomial>,
    ) -> Result<Self, PolyError> {
        if data.len() != rows * cols {
            return Err(PolyError::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        for e in &data {
            e.ring().ensure_same(ring)?;
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, data })
    }

    /// Matrix whose columns are the given vectors, all of rank `rows`.
    pub fn from_columns(ring: &PolynomialRing, rows: usize, cols: &[PolyVector]) -> Result<Self, PolyError> {
        let mut m = Self::zero(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.rank() != rows {
                return Err(PolyError::RankMismatch { expected: rows, found: c.rank() });
            }
            for i in 0..rows {
                m.set(i, j, c.get(i).clone());
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    pub fn column(&self, j: usize) -> PolyVector {
        let entries = (0..self.rows).map(|i| self.get(i, j).clone()).collect();
        PolyVector::new(&self.ring, entries).expect("same ring")
    }

    pub fn columns(&self) -> Vec<PolyVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = Self::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        self.ring.ensure_same(&other.ring)?;
        if self.cols != other.rows {
            return Err(PolyError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vector(&self, v: &PolyVector) -> Result<PolyVector, PolyError> {
        if v.rank() != self.cols {
            return Err(PolyError::RankMismatch { expected: self.cols, found: v.rank() });
        }
        let entries = (0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() && !v.get(k).is_zero() {
                        acc = &acc + &(a * v.get(k));
                    }
                }
                acc
            })
            .collect();
        PolyVector::new(&self.ring, entries)
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn map_entries<F: FnMut(&Polynomial) -> Polynomial>(&self, f: F) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map_entries<F, E>(&self, f: F) -> Result<PolyMatrix, E>
    where
        F: FnMut(&Polynomial) -> Result<Polynomial, E>,
    {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(PolyMatrix {
            ring: data.first().map(|p| p.ring().clone()).unwrap_or_else(|| self.ring.clone()),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Re-expresses all entries in `target`.
    pub fn to_ring(&self, target: &PolynomialRing) -> Result<PolyMatrix, PolyError> {
        let data = self.data.iter().map(|p| p.to_ring(target)).collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix { ring: target.clone(), rows: self.rows, cols: self.cols, data })
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = Self::zero(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn remove_row(&self, r: usize) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn remove_column(&self, c: usize) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != c).collect();
        self.submatrix(&rows, &cols)
    }

    /// Determinant by expansion along rows, memoized over column subsets.
    pub fn determinant(&self) -> Result<Polynomial, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::ShapeMismatch(format!("determinant of {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        if n > 20 {
            return Err(PolyError::ShapeMismatch("determinant too large for subset expansion".into()));
        }
        // dets[mask] = det of the first popcount(mask) rows restricted to the columns in mask
        let mut dets: Vec<Option<Polynomial>> = vec![None; 1 << n];
        dets[0] = Some(Polynomial::one(&self.ring));
        for mask in 1usize..(1 << n) {
            let k = mask.count_ones() as usize;
            let row = k - 1;
            let mut acc = Polynomial::zero(&self.ring);
            for c in 0..n {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let a = self.get(row, c);
                if a.is_zero() {
                    continue;
                }
                let rest = mask & !(1 << c);
                let sub = dets[rest].as_ref().expect("smaller mask computed first");
                if sub.is_zero() {
                    continue;
                }
                // sign from the position of column c among the columns of mask
                let higher = (rest >> (c + 1)).count_ones();
                let term = a * sub;
                acc = if higher % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            dets[mask] = Some(acc);
        }
        Ok(dets[(1 << n) - 1].take().expect("full mask"))
    }

    fn same_shape(&self, other: &PolyMatrix) -> Result<(), PolyError> {
        self.ring.ensure_same(&other.ring)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(PolyError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{}x{}{}", self.rows, self.cols, self)
    }
}
