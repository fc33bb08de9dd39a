//! Fraction-free linear algebra over `K[y]`.
//!
//! Kernels are computed by fraction-free Gauss-Jordan elimination (the
//! Bareiss update applied above and below the pivot), so every intermediate
//! entry is a polynomial and every division is exact.

use thiserror::Error;

use crate::algebra::{poly_gcd, AlgebraError, FieldSpec, MultiPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimensions do not match")]
    DimensionMismatch,
    #[error("matrix rows have different lengths")]
    Ragged,
    #[error("entries live over different fields or variable sets")]
    FieldMismatch,
    #[error("fraction-free update was not exactly divisible")]
    InexactDivision,
}

/// Dense matrix with entries in `K[y_1..y_n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    field: FieldSpec,
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(field: FieldSpec, nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix { field, nvars, rows, cols, entries: vec![MultiPoly::zero(field, nvars); rows * cols] }
    }

    pub fn from_rows(field: FieldSpec, nvars: usize, rows: Vec<Vec<MultiPoly>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Ragged);
        }
        if rows.iter().flatten().any(|e| e.field() != field || e.nvars() != nvars) {
            return Err(LinalgError::FieldMismatch);
        }
        let nrows = rows.len();
        Ok(PolyMatrix { field, nvars, rows: nrows, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: MultiPoly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[MultiPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// `M v`.
    pub fn apply(&self, v: &[MultiPoly]) -> Result<Vec<MultiPoly>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch);
        }
        if v.iter().any(|e| e.field() != self.field || e.nvars() != self.nvars) {
            return Err(LinalgError::FieldMismatch);
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(MultiPoly::zero(self.field, self.nvars), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// Fraction-free reduced form; see [`Reduction`].
    pub fn reduce(&self) -> Result<Reduction, LinalgError> {
        let mut a = self.entries.clone();
        let cols = self.cols;
        let mut prev = MultiPoly::one(self.field, self.nvars);
        let mut pivot_cols = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == self.rows {
                break;
            }
            // first row with a nonzero entry of minimal total degree
            let choice = (pr..self.rows)
                .filter_map(|r| a[r * cols + c].total_degree().map(|d| (d, r)))
                .min();
            let Some((_, r0)) = choice else { continue };
            if r0 != pr {
                for j in 0..cols {
                    a.swap(r0 * cols + j, pr * cols + j);
                }
            }
            let piv = a[pr * cols + c].clone();
            for r in 0..self.rows {
                if r == pr {
                    continue;
                }
                let factor = a[r * cols + c].clone();
                for j in 0..cols {
                    let cur = &a[r * cols + j];
                    let pj = &a[pr * cols + j];
                    let mut num = if cur.is_zero() { MultiPoly::zero(self.field, self.nvars) } else { &piv * cur };
                    if !factor.is_zero() && !pj.is_zero() {
                        num -= &(&factor * pj);
                    }
                    let next = if prev.is_one() || num.is_zero() {
                        num
                    } else {
                        num.exact_div(&prev).map_err(|e| match e {
                            AlgebraError::NotDivisible => LinalgError::InexactDivision,
                            _ => LinalgError::FieldMismatch,
                        })?
                    };
                    a[r * cols + j] = next;
                }
            }
            prev = piv;
            pivot_cols.push(c);
            pr += 1;
        }
        Ok(Reduction {
            matrix: PolyMatrix { field: self.field, nvars: self.nvars, rows: self.rows, cols, entries: a },
            pivot_cols,
            pivot: prev,
        })
    }

    pub fn rank(&self) -> usize {
        self.reduce().expect("exact elimination").pivot_cols.len()
    }
}

/// Result of fraction-free Gauss-Jordan elimination: row `k < rank` has the
/// common value `pivot` in column `pivot_cols[k]` and zeros in every other
/// pivot column; rows `>= rank` vanish.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub matrix: PolyMatrix,
    pub pivot_cols: Vec<usize>,
    pub pivot: MultiPoly,
}

impl Reduction {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

/// Removes the gcd of the entries and makes the first nonzero entry monic.
pub fn normalize_vector(v: &[MultiPoly]) -> Vec<MultiPoly> {
    let Some(first) = v.iter().find(|e| !e.is_zero()) else { return v.to_vec() };
    let mut g = first.clone();
    for e in v {
        if g.is_constant() {
            break;
        }
        if !e.is_zero() {
            g = poly_gcd(&g, e).expect("nonzero");
        }
    }
    let divided: Vec<MultiPoly> = if g.is_constant() {
        v.to_vec()
    } else {
        v.iter().map(|e| e.exact_div(&g).expect("gcd divides")).collect()
    };
    let lc = divided
        .iter()
        .find(|e| !e.is_zero())
        .and_then(|e| e.leading_coeff().cloned())
        .expect("nonzero vector");
    let inv = lc.inverse().expect("nonzero");
    divided.iter().map(|e| e.scale(&inv)).collect()
}

/// Spanning set of the right kernel over `K(y)`, with polynomial entries.
/// Empty iff `m` has full column rank.
pub fn ff_kernel(m: &PolyMatrix) -> Vec<Vec<MultiPoly>> {
    let red = m.reduce().expect("fraction-free elimination divides exactly");
    let zero = MultiPoly::zero(m.field, m.nvars);
    (0..m.cols)
        .filter(|c| !red.pivot_cols.contains(c))
        .map(|free| {
            let mut v = vec![zero.clone(); m.cols];
            v[free] = red.pivot.clone();
            for (k, &pc) in red.pivot_cols.iter().enumerate() {
                v[pc] = -red.matrix.get(k, free);
            }
            normalize_vector(&v)
        })
        .collect()
}

/// Whether `M v = 0` exactly.
pub fn verify_kernel(m: &PolyMatrix, v: &[MultiPoly]) -> Result<bool, LinalgError> {
    Ok(m.apply(v)?.iter().all(MultiPoly::is_zero))
}
