//! Exact linear algebra over ℚ(i).
//!
//! Ranks go through fraction-free (Bareiss) elimination over the Gaussian
//! integers after clearing denominators row by row; kernels and column
//! spaces go through reduced row echelon form over ℚ(i).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::form::{BasisForm, Form};
use crate::scalar::GaussianRational;

/// Dense row-major matrix of Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a `rows × cols.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<GaussianRational>]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn conj_transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).conj());
            }
        }
        t
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hconcat row mismatch");
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// `[self; other]`.
    pub fn vconcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vconcat column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }
}

/// Matrix of a linear operator between two bidegree components: column `j`
/// holds the coordinates of the image of `cols[j]` on the basis `rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedMatrix {
    pub rows: Vec<BasisForm>,
    pub cols: Vec<BasisForm>,
    pub matrix: Matrix,
}

impl IndexedMatrix {
    pub fn from_operator(rows: Vec<BasisForm>, cols: Vec<BasisForm>, mut op: impl FnMut(&BasisForm) -> Form) -> Self {
        let columns: Vec<Vec<GaussianRational>> = cols.iter().map(|b| op(b).coords(&rows)).collect();
        let matrix = Matrix::from_columns(rows.len(), &columns);
        IndexedMatrix { rows, cols, matrix }
    }

    pub fn zero(rows: Vec<BasisForm>, cols: Vec<BasisForm>) -> Self {
        let matrix = Matrix::zeros(rows.len(), cols.len());
        IndexedMatrix { rows, cols, matrix }
    }

    /// Stacks two operators with the same domain into one with the
    /// concatenated codomain basis.
    pub fn stack(&self, other: &IndexedMatrix) -> IndexedMatrix {
        assert_eq!(self.cols, other.cols, "stacked operators need a common domain");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().copied());
        IndexedMatrix { rows, cols: self.cols.clone(), matrix: self.matrix.vconcat(&other.matrix) }
    }

    /// Joins two operators with the same codomain side by side.
    pub fn join(&self, other: &IndexedMatrix) -> IndexedMatrix {
        assert_eq!(self.rows, other.rows, "joined operators need a common codomain");
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().copied());
        IndexedMatrix { rows: self.rows.clone(), cols, matrix: self.matrix.hconcat(&other.matrix) }
    }
}

// --- Gaussian integers for fraction-free elimination -----------------------

#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn one() -> Self {
        GaussInt { re: BigInt::one(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt { re: &self.re * &o.re, im: BigInt::zero() };
        }
        GaussInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Division known to be exact in ℤ[i].
    fn div_exact(&self, d: &GaussInt) -> GaussInt {
        if d.im.is_zero() {
            let (re, r1) = self.re.div_rem(&d.re);
            let (im, r2) = self.im.div_rem(&d.re);
            assert!(r1.is_zero() && r2.is_zero(), "inexact Bareiss division");
            return GaussInt { re, im };
        }
        let n = d.norm();
        let num = GaussInt { re: &self.re * &d.re + &self.im * &d.im, im: &self.im * &d.re - &self.re * &d.im };
        let (re, r1) = num.re.div_rem(&n);
        let (im, r2) = num.im.div_rem(&n);
        assert!(r1.is_zero() && r2.is_zero(), "inexact Bareiss division");
        GaussInt { re, im }
    }

    fn size(&self) -> u64 {
        self.re.abs().bits() + self.im.abs().bits()
    }
}

/// Scales each row by the lcm of its denominators so every entry lies in ℤ[i].
fn integer_rows(m: &Matrix) -> Vec<Vec<GaussInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, z| acc.lcm(&z.denom_lcm()));
            row.iter()
                .map(|z| GaussInt { re: z.re.numer() * (&l / z.re.denom()), im: z.im.numer() * (&l / z.im.denom()) })
                .collect()
        })
        .filter(|row: &Vec<GaussInt>| row.iter().any(|z| !z.is_zero()))
        .collect()
}

/// Exact rank by fraction-free Gaussian elimination.
pub fn rank(m: &Matrix) -> usize {
    let mut a = integer_rows(m);
    let rows = a.len();
    let cols = m.cols();
    let mut prev = GaussInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].size());
        let Some(p) = pivot else { continue };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let prow = &head[r];
        let pv = &prow[c];
        for row in tail.iter_mut() {
            let factor = std::mem::replace(&mut row[c], GaussInt { re: BigInt::zero(), im: BigInt::zero() });
            for j in c + 1..cols {
                let lhs_zero = row[j].is_zero();
                let rhs_zero = factor.is_zero() || prow[j].is_zero();
                if lhs_zero && rhs_zero {
                    continue;
                }
                let mut v =
                    if lhs_zero { GaussInt { re: BigInt::zero(), im: BigInt::zero() } } else { pv.mul(&row[j]) };
                if !rhs_zero {
                    v = v.sub(&factor.mul(&prow[j]));
                }
                row[j] = v.div_exact(&prev);
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form over ℚ(i); returns the reduced matrix and the
/// pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).inv().expect("nonzero pivot");
        for j in c..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..a.cols {
                let pj = a.get(r, j);
                if pj.is_zero() {
                    continue;
                }
                let v = a.get(i, j) - &(&f * pj);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Determinant of a square matrix by elimination over ℚ(i).
pub fn determinant(m: &Matrix) -> GaussianRational {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let mut a = m.clone();
    let n = a.rows();
    let mut det = GaussianRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return GaussianRational::zero();
        };
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
            }
            det = -det;
        }
        let pivot = a.get(c, c).clone();
        det = &det * &pivot;
        let inv = pivot.inv().expect("nonzero pivot");
        for i in c + 1..n {
            let f = a.get(i, c) * &inv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = a.get(i, j) - &(&f * a.get(c, j));
                a.set(i, j, v);
            }
        }
    }
    det
}

/// Basis of the null space; each vector is scaled so its first nonzero entry is 1.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<GaussianRational>> {
    let (red, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![GaussianRational::zero(); m.cols()];
            v[f] = GaussianRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -red.get(row, f);
            }
            normalize_leading(&mut v);
            v
        })
        .collect()
}

fn normalize_leading(v: &mut [GaussianRational]) {
    if let Some(lead) = v.iter().find(|z| !z.is_zero()).cloned() {
        let inv = lead.inv().expect("nonzero");
        for z in v.iter_mut() {
            *z = &*z * &inv;
        }
    }
}

/// Indices of a maximal linearly independent set of columns (the first
/// independent ones, greedily from the left).
pub fn independent_columns(m: &Matrix) -> Vec<usize> {
    rref(m).1
}

/// `dim ker(kernel_of) − dim(Σ images)`, after checking every image lies in
/// the kernel. The image sum is the column space of the concatenated images.
pub fn subquotient_dim(kernel_of: &IndexedMatrix, images: &[IndexedMatrix]) -> Result<usize> {
    let domain = kernel_of.cols.len();
    for img in images {
        if img.rows != kernel_of.cols {
            return Err(Error::DimensionMismatch { left: domain, right: img.rows.len() });
        }
        let prod = kernel_of.matrix.mul(&img.matrix);
        if let Some(j) = (0..prod.cols()).find(|&j| (0..prod.rows()).any(|i| !prod.get(i, j).is_zero())) {
            return Err(Error::Containment { witness: img.matrix.column(j) });
        }
    }
    let kernel_dim = domain - rank(&kernel_of.matrix);
    let image_dim = match images.split_first() {
        None => 0,
        Some((first, rest)) => {
            let joined = rest.iter().fold(first.matrix.clone(), |acc, m| acc.hconcat(&m.matrix));
            rank(&joined)
        }
    };
    Ok(kernel_dim - image_dim)
}
