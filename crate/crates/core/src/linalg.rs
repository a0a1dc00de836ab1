//! Dense matrices over a coefficient context, fraction-free determinants and
//! row reduction.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Domain, Field, Ring};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(ring: R, rows: usize, cols: usize, data: Vec<R::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::new(ring, n, m, rows.into_iter().flatten().collect())
    }

    pub fn zero(ring: R, rows: usize, cols: usize) -> Self {
        let data = vec![ring.zero(); rows * cols];
        Matrix { ring, rows, cols, data }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.ring.one();
        }
        m
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> Vec<Vec<R::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { ring: self.ring.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn map<S: Ring>(&self, target: &S, f: impl FnMut(&R::Elem) -> S::Elem) -> Matrix<S> {
        Matrix {
            ring: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut out = Matrix::zero(r.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = r.add(out.get(i, j), &r.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let r = &self.ring;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b)))
            })
            .collect())
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[R::Elem], y: &[R::Elem]) -> Result<R::Elem> {
        let my = self.mul_vec(y)?;
        if x.len() != self.rows {
            return Err(Error::Dimension("left vector length".into()));
        }
        let r = &self.ring;
        Ok(x.iter().zip(&my).fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b))))
    }

    pub fn format_rows(&self) -> String {
        (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|x| self.ring.format(x)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}\n{}", self.rows, self.cols, self.format_rows())
    }
}

/// Fraction-free Gaussian elimination (Bareiss). Every intermediate division
/// is exact, so the computation stays inside the domain.
pub fn bareiss_det<R: Domain>(m: &Matrix<R>) -> Result<R::Elem> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows, cols: m.cols });
    }
    let r = &m.ring;
    let n = m.rows;
    if n == 0 {
        return Ok(r.one());
    }
    let mut a = m.rows();
    let mut negate = false;
    let mut prev = r.one();
    for k in 0..n - 1 {
        if r.is_zero(&a[k][k]) {
            match (k + 1..n).find(|&i| !r.is_zero(&a[i][k])) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(r.zero()),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let num = r.sub(&r.mul(&row[j], &pivot_row[k]), &r.mul(&row[k], &pivot_row[j]));
                row[j] = r
                    .exact_div(&num, &prev)
                    .ok_or_else(|| Error::Verification("inexact Bareiss step".into()))?;
            }
            row[k] = r.zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { r.neg(&d) } else { d })
}

/// Determinant that first eliminates with unit pivots (ordinary division,
/// no growth), then hands the remaining block to Bareiss. `unit_inv` returns
/// the inverse of an element when it is a unit of the domain.
pub fn det_unit_first<R: Domain>(
    m: &Matrix<R>,
    unit_inv: impl Fn(&R::Elem) -> Option<R::Elem>,
) -> Result<R::Elem> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows, cols: m.cols });
    }
    let r = &m.ring;
    let n = m.rows;
    let mut a = m.rows();
    let mut acc = r.one();
    let mut k = 0;
    while k < n {
        let found = (k..n).find_map(|j| {
            (k..n).find_map(|i| unit_inv(&a[i][j]).map(|inv| (i, j, inv)))
        });
        let Some((i, j, inv)) = found else { break };
        if i != k {
            a.swap(i, k);
            acc = r.neg(&acc);
        }
        if j != k {
            for row in a.iter_mut() {
                row.swap(j, k);
            }
            acc = r.neg(&acc);
        }
        acc = r.mul(&acc, &a[k][k]);
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            if r.is_zero(&row[k]) {
                continue;
            }
            let factor = r.mul(&row[k], &inv);
            for c in k + 1..n {
                if !r.is_zero(&pivot_row[c]) {
                    row[c] = r.sub(&row[c], &r.mul(&factor, &pivot_row[c]));
                }
            }
            row[k] = r.zero();
        }
        k += 1;
    }
    if k == n {
        return Ok(acc);
    }
    let rest: Vec<Vec<R::Elem>> = a[k..].iter().map(|row| row[k..].to_vec()).collect();
    let rest = Matrix::from_rows(r.clone(), rest)?;
    Ok(r.mul(&acc, &bareiss_det(&rest)?))
}

/// Determinant by Laplace expansion along the first row. Exponential; meant
/// for small matrices and as an oracle.
pub fn cofactor_det<R: Ring>(m: &Matrix<R>) -> Result<R::Elem> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows, cols: m.cols });
    }
    let cols: Vec<usize> = (0..m.cols).collect();
    Ok(laplace(m, 0, &cols))
}

fn laplace<R: Ring>(m: &Matrix<R>, row: usize, cols: &[usize]) -> R::Elem {
    let r = &m.ring;
    if cols.is_empty() {
        return r.one();
    }
    let mut acc = r.zero();
    for (k, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if r.is_zero(a) {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = r.mul(a, &laplace(m, row + 1, &rest));
        acc = if k % 2 == 0 { r.add(&acc, &term) } else { r.sub(&acc, &term) };
    }
    acc
}

/// Reduced row echelon form and the pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let f = m.ring.clone();
    let mut a = m.rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(i) = (r..m.rows).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(i, r);
        let inv = f.inv(&a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(x, &f.mul(&factor, p));
            }
        }
        pivots.push(c);
        r += 1;
    }
    let out = Matrix::from_rows(f.clone(), a).unwrap_or_else(|_| Matrix::zero(f, m.rows, m.cols));
    (out, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel, one vector per free column in increasing
/// column order, with a 1 in its free coordinate.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    let f = &m.ring;
    let (e, pivots) = rref(m);
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(e.get(r, free));
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Integers, PrimeField, Rationals};
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn int_matrix(rows: &[&[i64]]) -> Matrix<Integers> {
        Matrix::from_rows(
            Integers,
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_determinants() {
        let id = Matrix::identity(Integers, 4);
        assert_eq!(bareiss_det(&id).unwrap(), BigInt::from(1));
        let d = int_matrix(&[&[1, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 4]]);
        assert_eq!(bareiss_det(&d).unwrap(), BigInt::from(24));
        let swap = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(bareiss_det(&swap).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn non_square_rejected() {
        let m = Matrix::zero(Integers, 2, 3);
        assert_eq!(bareiss_det(&m).unwrap_err(), Error::NonSquare { rows: 2, cols: 3 });
    }

    #[test]
    fn random_6x6_matches_cofactor() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let data: Vec<BigInt> = (0..36).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect();
            let m = Matrix::new(Integers, 6, 6, data).unwrap();
            assert_eq!(bareiss_det(&m).unwrap(), cofactor_det(&m).unwrap());
        }
    }

    #[test]
    fn unit_first_matches_bareiss() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let data: Vec<BigInt> = (0..49).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect();
            let m = Matrix::new(Integers, 7, 7, data).unwrap();
            let units = |x: &BigInt| (x == &BigInt::from(1) || x == &BigInt::from(-1)).then(|| x.clone());
            assert_eq!(det_unit_first(&m, units).unwrap(), bareiss_det(&m).unwrap());
        }
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let k = PrimeField::new(7).unwrap();
        assert_eq!(kernel_basis(&Matrix::zero(k, 2, 3)).len(), 3);
        assert!(kernel_basis(&Matrix::identity(Rationals, 4)).is_empty());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let k = PrimeField::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..7);
            let data: Vec<u64> = (0..rows * cols).map(|_| rng.gen_range(0..5)).collect();
            let m = Matrix::new(k, rows, cols, data).unwrap();
            let basis = kernel_basis(&m);
            assert_eq!(basis.len() + rank(&m), cols);
            for v in &basis {
                assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == 0));
            }
        }
    }
}
