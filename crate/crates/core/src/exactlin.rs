//! Exact linear algebra over the integers.
//!
//! Everything here works on arbitrary-precision entries. The central routine is
//! [`smith_normal_form`], which also drives cokernel presentations and integer
//! system solving; kernels and row lattices use a cheaper echelon reduction.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A dense rectangular matrix of big integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "IntMatrix::from_vec",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows. `cols` is needed to give shape to a
    /// matrix with no rows.
    pub fn from_rows<R, T>(cols: usize, rows: R) -> Result<Self>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut data = Vec::new();
        let mut nrows = 0;
        for row in rows {
            let before = data.len();
            data.extend(row.into_iter().map(Into::into));
            if data.len() - before != cols {
                return Err(Error::DimensionMismatch {
                    context: "IntMatrix::from_rows",
                    expected: cols,
                    found: data.len() - before,
                });
            }
            nrows += 1;
        }
        Ok(IntMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Convenience constructor for small literal matrices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().copied()))
            .expect("ragged literal matrix")
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: "vector-matrix product",
                expected: self.rows,
                found: x.len(),
            });
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                if !a.is_zero() {
                    *o += xi * a;
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                context: "hstack",
                expected: self.rows,
                found: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "vstack",
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                context: "determinant",
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square()
            && self
                .determinant()
                .map(|d| d.abs().is_one())
                .unwrap_or(false)
    }

    /// Inverse of a unimodular matrix, or `None` when the matrix is not invertible over ℤ.
    pub fn inverse(&self) -> Option<IntMatrix> {
        if !self.is_square() {
            return None;
        }
        let snf = smith_normal_form(self);
        if (0..self.rows).any(|i| !snf.d.get(i, i).is_one()) {
            return None;
        }
        // U A V = I  =>  A^{-1} = V U
        Some(&snf.v * &snf.u)
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = q * s;
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = q * s;
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimensions do not agree")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal in divisibility order.
///
/// The inverses of `U` and `V` are tracked alongside, since cokernel
/// presentations need `V⁻¹` to lift generators back to the ambient lattice.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    pub fn shape(&self) -> (usize, usize) {
        (self.d.rows(), self.d.cols())
    }

    /// Diagonal entries `d₁ | d₂ | …`, including trailing zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let (r, c) = self.shape();
        (0..r.min(c)).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }

    /// Solves `A x = b` over ℤ using this decomposition of `A`.
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let (rows, cols) = self.shape();
        if b.len() != rows {
            return Err(Error::DimensionMismatch {
                context: "solve_integer",
                expected: rows,
                found: b.len(),
            });
        }
        let ub = self.u.mul_vec(b)?;
        let r = self.rank();
        let mut y = vec![BigInt::zero(); cols];
        for i in 0..rows {
            if i < r {
                let d = self.d.get(i, i);
                let (q, rem) = ub[i].div_rem(d);
                if !rem.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            } else if !ub[i].is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(self.v.mul_vec(&y)?))
    }
}

/// Position of the smallest nonzero |entry| in the lower-right block starting at `t`,
/// ties broken by lowest (row, col).
fn smallest_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with unimodular transforms.
///
/// Pivot choice is the smallest nonzero absolute value with lowest (row, col)
/// tie-break, so the returned transforms are reproducible. Diagonal entries are
/// nonnegative; signs are absorbed into `U`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // Elementary operations applied to all four trackers.
    // row_i += q row_t on D and U; U⁻¹ gets col_t -= q col_i.
    let row_op = |d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i, t, q: &BigInt| {
        d.add_row_multiple(i, t, q);
        u.add_row_multiple(i, t, q);
        u_inv.add_col_multiple(t, i, &-q);
    };
    // col_j += q col_t on D and V; V⁻¹ gets row_t -= q row_j.
    let col_op = |d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, j, t, q: &BigInt| {
        d.add_col_multiple(j, t, q);
        v.add_col_multiple(j, t, q);
        v_inv.add_row_multiple(t, j, &-q);
    };

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = smallest_pivot(&d, t) {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                row_op(&mut d, &mut u, &mut u_inv, i, t, &-q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                col_op(&mut d, &mut v, &mut v_inv, j, t, &-q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let p = d.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d.get(i, j).mod_floor(&p).is_zero())
            });
            match offender {
                Some(i) => row_op(&mut d, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            // U⁻¹ column t flips with it.
            for i in 0..m {
                let x = &mut u_inv.data[i * m + t];
                *x = -std::mem::take(x);
            }
        }
    }
    SmithDecomposition {
        u,
        d,
        v,
        u_inv,
        v_inv,
    }
}

/// `ℤ^cols / (row span of relations) ≅ ℤ^free_rank ⊕ ⊕ ℤ/fᵢ`, with coordinate maps.
///
/// Presented coordinates list the free generators first, then the torsion
/// generators in divisibility order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelPresentation {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
    /// `cols × k`: a standard row vector `x` has presented coordinates `x · to_presented`.
    pub to_presented: IntMatrix,
    /// `k × cols`: row `i` is a lift of the `i`-th presented generator.
    pub lift: IntMatrix,
}

impl CokernelPresentation {
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Order of each presented coordinate; zero marks a free coordinate.
    pub fn moduli(&self) -> Vec<BigInt> {
        let mut m = vec![BigInt::zero(); self.free_rank];
        m.extend(self.invariant_factors.iter().cloned());
        m
    }

    /// Presented coordinates of a standard vector, torsion entries reduced into `[0, f)`.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let raw = self.to_presented.vec_mul(x)?;
        Ok(reduce_mod(&raw, &self.moduli()))
    }
}

/// Reduces each entry modulo the corresponding modulus (0 leaves it alone).
pub fn reduce_mod(x: &[BigInt], moduli: &[BigInt]) -> Vec<BigInt> {
    x.iter()
        .zip(moduli)
        .map(|(v, m)| if m.is_zero() { v.clone() } else { v.mod_floor(m) })
        .collect()
}

/// Presents the cokernel of the relation matrix whose rows are relations in `ℤ^cols`.
pub fn cokernel_presentation(relations: &IntMatrix) -> CokernelPresentation {
    let snf = smith_normal_form(relations);
    let cols = relations.cols();
    let diag = snf.diagonal();
    let r = snf.rank();
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..cols {
        if i < r {
            let d = &diag[i];
            if !d.is_one() {
                torsion.push((i, d.clone()));
            }
        } else {
            free.push(i);
        }
    }
    let kept: Vec<usize> = free
        .iter()
        .copied()
        .chain(torsion.iter().map(|(i, _)| *i))
        .collect();
    let mut to_presented = IntMatrix::zeros(cols, kept.len());
    let mut lift = IntMatrix::zeros(kept.len(), cols);
    for (c, &i) in kept.iter().enumerate() {
        for k in 0..cols {
            to_presented.set(k, c, snf.v.get(k, i).clone());
            lift.set(c, k, snf.v_inv.get(i, k).clone());
        }
    }
    CokernelPresentation {
        free_rank: free.len(),
        invariant_factors: torsion.into_iter().map(|(_, d)| d).collect(),
        to_presented,
        lift,
    }
}

/// Finds an integer `x` with `A x = b`, or `None` when no integral solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            context: "solve_integer",
            expected: a.rows(),
            found: b.len(),
        });
    }
    smith_normal_form(a).solve(b)
}

/// Row echelon form by unimodular row operations, optionally tracking the transform.
///
/// Returns the number of nonzero rows; rows below that are zero. When
/// `transform` is given it receives the same row operations.
fn echelonize(rows: &mut [Vec<BigInt>], mut transform: Option<&mut [Vec<BigInt>]>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut p = 0;
    for j in 0..ncols {
        if p == nrows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in p..nrows {
                let v = &rows[i][j];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|b| rows[b][j].abs() > v.abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(p, b);
            if let Some(t) = transform.as_deref_mut() {
                t.swap(p, b);
            }
            let mut done = true;
            for i in p + 1..nrows {
                if rows[i][j].is_zero() {
                    continue;
                }
                let q = rows[i][j].div_floor(&rows[p][j]);
                let (head, tail) = rows.split_at_mut(i);
                axpy(&mut tail[0][j..], &q, &head[p][j..]);
                if let Some(t) = transform.as_deref_mut() {
                    let (th, tt) = t.split_at_mut(i);
                    axpy(&mut tt[0], &q, &th[p]);
                }
                if !rows[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                if rows[p][j].is_negative() {
                    for v in rows[p].iter_mut() {
                        *v = -std::mem::take(v);
                    }
                    if let Some(t) = transform.as_deref_mut() {
                        for v in t[p].iter_mut() {
                            *v = -std::mem::take(v);
                        }
                    }
                }
                p += 1;
                break;
            }
        }
    }
    p
}

/// dst -= q * src
fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

/// A basis of `{x ∈ ℤ^cols : A x = 0}`, returned as the columns of a `cols × k` matrix.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let n = a.cols();
    let mut rows = a.transpose().row_vecs();
    let mut t: Vec<Vec<BigInt>> = IntMatrix::identity(n).row_vecs();
    let r = if a.rows() == 0 {
        0
    } else {
        echelonize(&mut rows, Some(&mut t))
    };
    let k = n - r;
    let mut out = IntMatrix::zeros(n, k);
    for (c, row) in t[r..].iter().enumerate() {
        for (i, v) in row.iter().enumerate() {
            out.set(i, c, v.clone());
        }
    }
    out
}

/// Echelon basis of the lattice spanned by the given rows.
///
/// Pivots are positive, each pivot column is zero below its pivot, and entries
/// above a pivot are reduced into `[0, pivot)`. Such a basis is unique for the
/// lattice, so it can be used for canonical coset reduction.
pub fn row_hermite_basis(generators: &IntMatrix) -> IntMatrix {
    let cols = generators.cols();
    let mut rows = generators.row_vecs();
    let r = echelonize(&mut rows, None);
    rows.truncate(r);
    let pivots: Vec<usize> = rows
        .iter()
        .map(|row| row.iter().position(|v| !v.is_zero()).expect("nonzero row"))
        .collect();
    for k in 0..r {
        let pc = pivots[k];
        for i in 0..k {
            let q = rows[i][pc].div_floor(&rows[k][pc]);
            if !q.is_zero() {
                let (head, tail) = rows.split_at_mut(k);
                axpy(&mut head[i], &q, &tail[0]);
            }
        }
    }
    IntMatrix::from_rows(cols, rows).expect("rows keep their length")
}

/// Reduces `x` against an echelon basis from [`row_hermite_basis`]: each pivot
/// coordinate lands in `[0, pivot)`. Two vectors are congruent modulo the lattice
/// exactly when their reductions agree.
pub fn reduce_by_hermite(basis: &IntMatrix, x: &[BigInt]) -> Vec<BigInt> {
    let mut out = x.to_vec();
    for k in 0..basis.rows() {
        let row = basis.row(k);
        let Some(pc) = row.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let q = out[pc].div_floor(&row[pc]);
        if !q.is_zero() {
            axpy(&mut out, &q, row);
        }
    }
    out
}

/// Coefficients of `x` in an echelon basis from [`row_hermite_basis`], or `None`
/// when `x` is not in the lattice it spans.
pub fn solve_hermite(basis: &IntMatrix, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if x.len() != basis.cols() {
        return Err(Error::DimensionMismatch {
            context: "solve_hermite",
            expected: basis.cols(),
            found: x.len(),
        });
    }
    let mut rest = x.to_vec();
    let mut coeffs = Vec::with_capacity(basis.rows());
    for k in 0..basis.rows() {
        let row = basis.row(k);
        let Some(pc) = row.iter().position(|v| !v.is_zero()) else {
            coeffs.push(BigInt::zero());
            continue;
        };
        let (q, r) = rest[pc].div_rem(&row[pc]);
        if !r.is_zero() {
            return Ok(None);
        }
        if !q.is_zero() {
            axpy(&mut rest, &q, row);
        }
        coeffs.push(q);
    }
    Ok(rest.iter().all(Zero::is_zero).then_some(coeffs))
}

/// Echelon basis of `{x ∈ ℤ^cols : (A x)_r ≡ 0 mod moduli_r for every row r}`.
///
/// Every modulus must be positive; the lattice then contains `L·ℤ^cols` for
/// `L = lcm(moduli)` and has full rank. Rows are imposed one at a time, and the
/// working basis is reduced modulo `L` whenever its entries grow past `L²`.
pub fn congruence_kernel(a: &IntMatrix, moduli: &[BigInt]) -> Result<IntMatrix> {
    if moduli.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            context: "congruence_kernel moduli",
            expected: a.rows(),
            found: moduli.len(),
        });
    }
    if moduli.iter().any(|m| !m.is_positive()) {
        return Err(Error::invalid("congruence moduli must be positive"));
    }
    let n = a.cols();
    let lcm = moduli.iter().fold(BigInt::one(), |acc, m| acc.lcm(m));
    let bound = &lcm * &lcm;
    let mut basis: Vec<Vec<BigInt>> = IntMatrix::identity(n).row_vecs();
    for r in 0..a.rows() {
        let q = &moduli[r];
        if q.is_one() {
            continue;
        }
        let arow = a.row(r);
        if arow.iter().all(Zero::is_zero) {
            continue;
        }
        let value = |b: &[BigInt]| -> BigInt {
            arow.iter()
                .zip(b)
                .filter(|(x, _)| !x.is_zero())
                .map(|(x, y)| x * y)
                .sum::<BigInt>()
                .mod_floor(q)
        };
        let mut values: Vec<BigInt> = basis.iter().map(|b| value(b)).collect();
        let mut pivot: Option<usize> = None;
        for i in 0..n {
            if values[i].is_zero() {
                continue;
            }
            let Some(p) = pivot else {
                pivot = Some(i);
                continue;
            };
            // Unimodular combination of rows p and i leaving gcd at p and 0 at i.
            let e = values[p].extended_gcd(&values[i]);
            let (vp, vi) = (&values[p] / &e.gcd, &values[i] / &e.gcd);
            let new_p: Vec<BigInt> = basis[p]
                .iter()
                .zip(&basis[i])
                .map(|(x, y)| &e.x * x + &e.y * y)
                .collect();
            let new_i: Vec<BigInt> = basis[p]
                .iter()
                .zip(&basis[i])
                .map(|(x, y)| &vi * x - &vp * y)
                .collect();
            basis[p] = new_p;
            basis[i] = new_i;
            values[p] = e.gcd.mod_floor(q);
            values[i] = BigInt::zero();
        }
        if let Some(p) = pivot {
            let factor = q / values[p].gcd(q);
            for v in basis[p].iter_mut() {
                *v *= &factor;
            }
        }
        if basis.iter().flatten().any(|v| v.abs() > bound) {
            basis = reduce_modulo(basis, &lcm, n);
        }
    }
    let m = IntMatrix::from_rows(n, reduce_modulo(basis, &lcm, n))?;
    Ok(m)
}

fn reduce_modulo(mut rows: Vec<Vec<BigInt>>, lcm: &BigInt, n: usize) -> Vec<Vec<BigInt>> {
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = lcm.clone();
        rows.push(e);
    }
    let m = IntMatrix::from_rows(n, rows).expect("rows keep their length");
    row_hermite_basis(&m).row_vecs()
}
