//! Exact linear algebra over Q and F_p: rank, kernel, determinants, streamed
//! minor enumeration, and incremental span accumulation.
//!
//! Over F_p elimination runs on raw `u64` residues. Over Q, `rank` and `det`
//! use fraction-free (Bareiss) elimination on a denominator-cleared integer
//! matrix so entries stay bounded by minors of the input; kernel extraction
//! uses reduced row echelon form with normalized rows.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::field::{Char, Scalar};

/// Dense exact matrix; all entries share one characteristic.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    ch: Char,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(ch: Char, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            ch,
            data: vec![Scalar::zero(ch); rows * cols],
        }
    }

    pub fn identity(ch: Char, n: usize) -> Self {
        let mut m = Self::zeros(ch, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(ch));
        }
        m
    }

    /// Build from row vectors, validating that every entry has the same
    /// characteristic.
    pub fn from_rows(ch: Char, rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for s in r {
                if s.characteristic() != ch {
                    return Err(Error::CharMismatch);
                }
            }
            data.extend(r.iter().cloned());
        }
        Ok(ExactMatrix {
            rows: rows.len(),
            cols: ncols,
            ch,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn characteristic(&self) -> Char {
        self.ch
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.characteristic(), self.ch);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.ch, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn matmul(&self, other: &ExactMatrix) -> Result<ExactMatrix, Error> {
        if self.ch != other.ch {
            return Err(Error::CharMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.ch, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero(self.ch);
                for k in 0..self.cols {
                    acc = acc + self.get(i, k).clone() * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if v.len() != self.cols {
            return Err(Error::Dimension("apply: vector length".into()));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Scalar::zero(self.ch);
            for j in 0..self.cols {
                acc = acc + self.get(i, j).clone() * &v[j];
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, Error> {
        if self.ch != other.ch {
            return Err(Error::CharMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("add: shape".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            ch: self.ch,
            data,
        })
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        assert_eq!(s.characteristic(), self.ch);
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            ch: self.ch,
            data: self.data.iter().map(|a| a.clone() * s).collect(),
        }
    }

    pub fn submatrix(&self, row_sel: &[usize], col_sel: &[usize]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.ch, row_sel.len(), col_sel.len());
        for (i, &r) in row_sel.iter().enumerate() {
            for (j, &c) in col_sel.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Exact rank. Plain elimination over F_p, Bareiss over Q.
    pub fn rank(&self) -> usize {
        match self.ch {
            Char::Prime(p) => fp_rank(&self.to_fp(), self.rows, self.cols, p),
            Char::Zero => bareiss_rank(&self.to_bigint_cleared(), self.rows, self.cols),
        }
    }

    /// Basis of the right kernel; `M * b = 0` for every returned `b`, and the
    /// count equals `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        match self.ch {
            Char::Prime(p) => {
                let grid = self.to_fp();
                let (red, pivots) = fp_rref(&grid, self.rows, self.cols, p);
                fp_kernel_from_rref(&red, self.cols, &pivots, p)
                    .into_iter()
                    .map(|v| v.into_iter().map(|x| Scalar::Mod { v: x, p }).collect())
                    .collect()
            }
            Char::Zero => {
                let (red, pivots) = rat_rref(self);
                rat_kernel_from_rref(&red, self.cols, &pivots)
            }
        }
    }

    /// Reduced row echelon form together with pivot column indices.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        match self.ch {
            Char::Prime(p) => {
                let grid = self.to_fp();
                let (red, pivots) = fp_rref(&grid, self.rows, self.cols, p);
                let data = red
                    .into_iter()
                    .map(|x| Scalar::Mod { v: x, p })
                    .collect::<Vec<_>>();
                (
                    ExactMatrix {
                        rows: self.rows,
                        cols: self.cols,
                        ch: self.ch,
                        data,
                    },
                    pivots,
                )
            }
            Char::Zero => {
                let (red, pivots) = rat_rref(self);
                let data = red
                    .into_iter()
                    .map(Scalar::Rat)
                    .collect::<Vec<_>>();
                (
                    ExactMatrix {
                        rows: self.rows,
                        cols: self.cols,
                        ch: self.ch,
                        data,
                    },
                    pivots,
                )
            }
        }
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Result<Scalar, Error> {
        if self.rows != self.cols {
            return Err(Error::Dimension("det of non-square matrix".into()));
        }
        match self.ch {
            Char::Prime(p) => Ok(Scalar::Mod {
                v: fp_det(&self.to_fp(), self.rows, p),
                p,
            }),
            Char::Zero => {
                let (ints, den) = self.to_bigint_rows_cleared();
                let d = bareiss_det(&ints, self.rows);
                // det(M) = det(cleared) / prod(row denominators)
                Ok(Scalar::Rat(BigRational::new(d, den)))
            }
        }
    }

    /// One solution of `M x = b`, if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, Error> {
        if b.len() != self.rows {
            return Err(Error::Dimension("solve: rhs length".into()));
        }
        for s in b {
            if s.characteristic() != self.ch {
                return Err(Error::CharMismatch);
            }
        }
        // Augment, reduce, back-read.
        let mut aug = ExactMatrix::zeros(self.ch, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (red, pivots) = aug.rref();
        // Inconsistent iff some pivot lands in the augmented column.
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(self.ch); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Streamed enumeration of all k x k minors, lexicographic on row-set
    /// then column-set. The stream never materializes the full list.
    pub fn minors(&self, k: usize) -> Result<MinorStream<'_>, Error> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(Error::MinorOrder {
                k,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(MinorStream {
            m: self,
            k,
            row_set: None,
            col_set: None,
        })
    }

    fn to_fp(&self) -> Vec<u64> {
        self.data
            .iter()
            .map(|s| s.residue().expect("fp path on non-modular scalar"))
            .collect()
    }

    /// Clear denominators row by row; rank is unaffected.
    fn to_bigint_cleared(&self) -> Vec<BigInt> {
        self.to_bigint_rows_cleared().0
    }

    fn to_bigint_rows_cleared(&self) -> (Vec<BigInt>, BigInt) {
        let mut out = Vec::with_capacity(self.data.len());
        let mut den_prod = BigInt::one();
        for i in 0..self.rows {
            let mut lcm = BigInt::one();
            for j in 0..self.cols {
                if let Scalar::Rat(r) = self.get(i, j) {
                    lcm = num_integer::lcm(lcm, r.denom().clone());
                } else {
                    unreachable!()
                }
            }
            den_prod *= &lcm;
            for j in 0..self.cols {
                if let Scalar::Rat(r) = self.get(i, j) {
                    out.push(r.numer() * (&lcm / r.denom()));
                } else {
                    unreachable!()
                }
            }
        }
        (out, den_prod)
    }
}

impl std::fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ExactMatrix {}x{} (char {})", self.rows, self.cols, self.ch)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Lexicographic stream over `(row-set, col-set, determinant)` triples.
pub struct MinorStream<'a> {
    m: &'a ExactMatrix,
    k: usize,
    row_set: Option<Vec<usize>>,
    col_set: Option<Vec<usize>>,
}

impl Iterator for MinorStream<'_> {
    type Item = (Vec<usize>, Vec<usize>, Scalar);

    fn next(&mut self) -> Option<Self::Item> {
        match (&mut self.row_set, &mut self.col_set) {
            (None, _) => {
                self.row_set = Some((0..self.k).collect());
                self.col_set = Some((0..self.k).collect());
            }
            (Some(rs), Some(cs)) => {
                if !advance_combination(cs, self.m.cols) {
                    *cs = (0..self.k).collect();
                    if !advance_combination(rs, self.m.rows) {
                        return None;
                    }
                }
            }
            _ => unreachable!(),
        }
        let rs = self.row_set.as_ref().unwrap().clone();
        let cs = self.col_set.as_ref().unwrap().clone();
        let det = self.m.submatrix(&rs, &cs).det().expect("square by construction");
        Some((rs, cs, det))
    }
}

/// Advance a sorted index combination to its lexicographic successor.
/// Returns false when exhausted.
pub fn advance_combination(sel: &mut [usize], n: usize) -> bool {
    let k = sel.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if sel[i] < n - (k - i) {
            sel[i] += 1;
            for j in i + 1..k {
                sel[j] = sel[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Dimension of the linear span of a set of equal-length vectors.
pub fn span_dim(ch: Char, vectors: &[Vec<Scalar>]) -> Result<usize, Error> {
    let mut acc = SpanAccumulator::new(ch, vectors.first().map_or(0, |v| v.len()));
    for v in vectors {
        acc.insert(v.clone())?;
    }
    Ok(acc.dim())
}

/// Incrementally row-reduced basis of a growing span. Insertion keeps the
/// basis in reduced echelon form, so the accumulated subspace (and its
/// canonical basis) is independent of insertion order; `merge` is
/// associative and commutative on the subspace level.
#[derive(Clone)]
pub struct SpanAccumulator {
    ch: Char,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SpanAccumulator {
    pub fn new(ch: Char, cols: usize) -> Self {
        SpanAccumulator {
            ch,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Reduce `v` against the basis; if a nonzero remainder survives, add it
    /// (normalized) and return true.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> Result<bool, Error> {
        if v.len() != self.cols {
            return Err(Error::Dimension("span insert: vector length".into()));
        }
        for s in &v {
            if s.characteristic() != self.ch {
                return Err(Error::CharMismatch);
            }
        }
        self.reduce(&mut v);
        let pivot = match v.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return Ok(false),
        };
        let inv = v[pivot].inv()?;
        for x in v.iter_mut() {
            *x = x.clone() * &inv;
        }
        // Back-substitute into existing rows to keep everything reduced.
        for r in 0..self.rows.len() {
            let c = self.rows[r][pivot].clone();
            if !c.is_zero() {
                for j in 0..self.cols {
                    let sub = c.clone() * &v[j];
                    self.rows[r][j] = self.rows[r][j].clone() - sub;
                }
            }
        }
        let at = self.pivots.iter().position(|&p| p > pivot).unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, pivot);
        Ok(true)
    }

    /// True iff `v` lies in the accumulated span.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for (r, &p) in self.pivots.iter().enumerate() {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for j in 0..self.cols {
                    let sub = c.clone() * &self.rows[r][j];
                    v[j] = v[j].clone() - sub;
                }
            }
        }
    }

    /// Fold another accumulator in; the result spans the union.
    pub fn merge(&mut self, other: SpanAccumulator) -> Result<(), Error> {
        for row in other.rows {
            self.insert(row)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// F_p fast paths on raw residues.

fn fp_rank(data: &[u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut a = data.to_vec();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank >= rows {
            break;
        }
        let mut piv = None;
        for r in rank..rows {
            if a[r * cols + col] != 0 {
                piv = Some(r);
                break;
            }
        }
        let piv = match piv {
            Some(r) => r,
            None => continue,
        };
        if piv != rank {
            for j in 0..cols {
                a.swap(rank * cols + j, piv * cols + j);
            }
        }
        let inv = fp_inv(a[rank * cols + col], p);
        for r in rank + 1..rows {
            let f = a[r * cols + col];
            if f != 0 {
                let mult = mulmod(f, inv, p);
                for j in col..cols {
                    let sub = mulmod(mult, a[rank * cols + j], p);
                    a[r * cols + j] = (a[r * cols + j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn fp_rref(data: &[u64], rows: usize, cols: usize, p: u64) -> (Vec<u64>, Vec<usize>) {
    let mut a = data.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..cols {
        if r >= rows {
            break;
        }
        let mut piv = None;
        for i in r..rows {
            if a[i * cols + col] != 0 {
                piv = Some(i);
                break;
            }
        }
        let piv = match piv {
            Some(i) => i,
            None => continue,
        };
        if piv != r {
            for j in 0..cols {
                a.swap(r * cols + j, piv * cols + j);
            }
        }
        let inv = fp_inv(a[r * cols + col], p);
        for j in 0..cols {
            a[r * cols + j] = mulmod(a[r * cols + j], inv, p);
        }
        for i in 0..rows {
            if i != r && a[i * cols + col] != 0 {
                let f = a[i * cols + col];
                for j in 0..cols {
                    let sub = mulmod(f, a[r * cols + j], p);
                    a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

fn fp_kernel_from_rref(a: &[u64], cols: usize, pivots: &[usize], p: u64) -> Vec<Vec<u64>> {
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - a[row * cols + free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

fn fp_det(data: &[u64], n: usize, p: u64) -> u64 {
    let mut a = data.to_vec();
    let mut det: u64 = 1 % p;
    for col in 0..n {
        let mut piv = None;
        for r in col..n {
            if a[r * n + col] != 0 {
                piv = Some(r);
                break;
            }
        }
        let piv = match piv {
            Some(r) => r,
            None => return 0,
        };
        if piv != col {
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
            }
            det = (p - det) % p;
        }
        let d = a[col * n + col];
        det = mulmod(det, d, p);
        let inv = fp_inv(d, p);
        for r in col + 1..n {
            let f = a[r * n + col];
            if f != 0 {
                let mult = mulmod(f, inv, p);
                for j in col..n {
                    let sub = mulmod(mult, a[col * n + j], p);
                    a[r * n + j] = (a[r * n + j] + p - sub) % p;
                }
            }
        }
    }
    det
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let mut e = p - 2;
    let mut b = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// Q paths: Bareiss on cleared integers, rational RREF for kernels.

fn bareiss_rank(data: &[BigInt], rows: usize, cols: usize) -> usize {
    let mut a = data.to_vec();
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let mut piv = None;
        for r in row..rows {
            if !a[r * cols + col].is_zero() {
                piv = Some(r);
                break;
            }
        }
        let piv = match piv {
            Some(r) => r,
            None => continue,
        };
        if piv != row {
            for j in 0..cols {
                a.swap(row * cols + j, piv * cols + j);
            }
        }
        let pivot = a[row * cols + col].clone();
        for r in row + 1..rows {
            for j in col + 1..cols {
                let num = &a[r * cols + j] * &pivot - &a[r * cols + col] * &a[row * cols + j];
                a[r * cols + j] = num / &prev;
            }
            a[r * cols + col] = BigInt::zero();
        }
        prev = pivot;
        row += 1;
        rank += 1;
    }
    rank
}

fn bareiss_det(data: &[BigInt], n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut a = data.to_vec();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    for col in 0..n - 1 {
        if a[col * n + col].is_zero() {
            let mut piv = None;
            for r in col + 1..n {
                if !a[r * n + col].is_zero() {
                    piv = Some(r);
                    break;
                }
            }
            match piv {
                Some(r) => {
                    for j in 0..n {
                        a.swap(col * n + j, r * n + j);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = a[col * n + col].clone();
        for r in col + 1..n {
            for j in col + 1..n {
                let num = &a[r * n + j] * &pivot - &a[r * n + col] * &a[col * n + j];
                a[r * n + j] = num / &prev;
            }
            a[r * n + col] = BigInt::zero();
        }
        prev = pivot;
    }
    let d = a[(n - 1) * n + (n - 1)].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

fn rat_rref(m: &ExactMatrix) -> (Vec<BigRational>, Vec<usize>) {
    let rows = m.rows;
    let cols = m.cols;
    let mut a: Vec<BigRational> = m
        .data
        .iter()
        .map(|s| match s {
            Scalar::Rat(r) => r.clone(),
            _ => unreachable!(),
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..cols {
        if r >= rows {
            break;
        }
        let mut piv = None;
        for i in r..rows {
            if !a[i * cols + col].is_zero() {
                piv = Some(i);
                break;
            }
        }
        let piv = match piv {
            Some(i) => i,
            None => continue,
        };
        if piv != r {
            for j in 0..cols {
                a.swap(r * cols + j, piv * cols + j);
            }
        }
        let inv = a[r * cols + col].recip();
        for j in 0..cols {
            let v = &a[r * cols + j] * &inv;
            a[r * cols + j] = v;
        }
        for i in 0..rows {
            if i != r && !a[i * cols + col].is_zero() {
                let f = a[i * cols + col].clone();
                for j in 0..cols {
                    let sub = &f * &a[r * cols + j];
                    let v = &a[i * cols + j] - sub;
                    a[i * cols + j] = v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

fn rat_kernel_from_rref(a: &[BigRational], cols: usize, pivots: &[usize]) -> Vec<Vec<Scalar>> {
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row * cols + free].clone();
        }
        basis.push(v.into_iter().map(Scalar::Rat).collect());
    }
    basis
}

/// Rank via a second, independent pivoting strategy (last nonzero pivot,
/// column-reversed sweep). Exists as an oracle for cross-checking `rank`.
pub fn rank_alt(m: &ExactMatrix) -> usize {
    // Work over the field generically; pivot choice differs from `rank`.
    let rows = m.rows();
    let cols = m.cols();
    let ch = m.characteristic();
    let mut a: Vec<Scalar> = m.data.clone();
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in (0..cols).rev() {
        if row >= rows {
            break;
        }
        let mut piv = None;
        for r in (row..rows).rev() {
            if !a[r * cols + col].is_zero() {
                piv = Some(r);
                break;
            }
        }
        let piv = match piv {
            Some(r) => r,
            None => continue,
        };
        if piv != row {
            for j in 0..cols {
                a.swap(row * cols + j, piv * cols + j);
            }
        }
        let inv = a[row * cols + col].inv().expect("nonzero pivot");
        for r in row + 1..rows {
            let f = a[r * cols + col].clone();
            if !f.is_zero() {
                let mult = f * &inv;
                for j in 0..cols {
                    let sub = mult.clone() * &a[row * cols + j];
                    a[r * cols + j] = a[r * cols + j].clone() - sub;
                }
            }
        }
        row += 1;
        rank += 1;
    }
    let _ = ch;
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, v: i64) -> Scalar {
        Scalar::from_i64(Char::Prime(p), v)
    }

    fn mat(p: u64, rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            Char::Prime(p),
            rows.iter().map(|r| r.iter().map(|&v| fp(p, v)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_zero_identity_outer() {
        let p = 32003;
        assert_eq!(ExactMatrix::zeros(Char::Prime(p), 3, 3).rank(), 0);
        assert_eq!(ExactMatrix::identity(Char::Prime(p), 5).rank(), 5);
        // v w^T has rank 1 for nonzero v, w
        let v = [2i64, 3, 5];
        let w = [7i64, 11];
        let mut m = ExactMatrix::zeros(Char::Prime(p), 3, 2);
        for i in 0..3 {
            for j in 0..2 {
                m.set(i, j, fp(p, v[i] * w[j]));
            }
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_basics() {
        let p = 101;
        assert!(ExactMatrix::identity(Char::Prime(p), 4).kernel_basis().is_empty());
        let m = mat(p, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // forced up to scale: (1, -1)
        let v = &k[0];
        assert_eq!(v[0].clone() + v[1].clone(), fp(p, 0));
        assert!(!v[0].is_zero());
    }

    #[test]
    fn kernel_annihilates_and_counts() {
        let p = 32003;
        let m = mat(
            p,
            &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]],
        );
        let r = m.rank();
        let k = m.kernel_basis();
        assert_eq!(r + k.len(), 4);
        for v in &k {
            assert!(m.apply(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn minors_identity_and_rank1() {
        let p = 101;
        let id = ExactMatrix::identity(Char::Prime(p), 2);
        let all: Vec<_> = id.minors(2).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].2.is_one());

        let mut r1 = ExactMatrix::zeros(Char::Prime(p), 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                r1.set(i, j, fp(p, ((i + 1) * (j + 2)) as i64));
            }
        }
        assert!(r1.minors(2).unwrap().all(|(_, _, d)| d.is_zero()));
    }

    #[test]
    fn minor_stream_order_and_cofactor_oracle() {
        // 3x3 matrix, k=2: 9 minors, verified against cofactor expansion.
        let p = 32003;
        let m = mat(p, &[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        fn cofactor_det(m: &ExactMatrix, rows: &[usize], cols: &[usize]) -> Scalar {
            // independent recursive cofactor expansion
            if rows.len() == 1 {
                return m.get(rows[0], cols[0]).clone();
            }
            let mut acc = Scalar::zero(m.characteristic());
            for (idx, &c) in cols.iter().enumerate() {
                let sub_rows = &rows[1..];
                let sub_cols: Vec<usize> =
                    cols.iter().copied().filter(|&x| x != c).collect();
                let term = m.get(rows[0], c).clone() * cofactor_det(m, sub_rows, &sub_cols);
                acc = if idx % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
        let mut count = 0;
        let mut last: Option<(Vec<usize>, Vec<usize>)> = None;
        for (rs, cs, d) in m.minors(2).unwrap() {
            assert_eq!(d, cofactor_det(&m, &rs, &cs));
            if let Some((pr, pc)) = &last {
                // lexicographic on row-set then col-set
                assert!((pr, pc) < (&&rs, &&cs).clone().into());
            }
            last = Some((rs, cs));
            count += 1;
        }
        assert_eq!(count, 9);
    }

    #[test]
    fn span_dim_examples() {
        let p = 101;
        let ch = Char::Prime(p);
        assert_eq!(span_dim(ch, &[]).unwrap(), 0);
        let v = vec![fp(p, 1), fp(p, 2)];
        let v2 = vec![fp(p, 2), fp(p, 4)];
        assert_eq!(span_dim(ch, &[v.clone(), v2]).unwrap(), 1);
        let e1 = vec![fp(p, 1), fp(p, 0)];
        let e2 = vec![fp(p, 0), fp(p, 1)];
        assert_eq!(span_dim(ch, &[e1, e2]).unwrap(), 2);
    }

    #[test]
    fn span_merge_is_order_independent() {
        let p = 211;
        let ch = Char::Prime(p);
        let vs: Vec<Vec<Scalar>> = (0..6)
            .map(|i| (0..4).map(|j| fp(p, ((i * 7 + j * 3 + 1) % 5) as i64)).collect())
            .collect();
        let mut a = SpanAccumulator::new(ch, 4);
        let mut b1 = SpanAccumulator::new(ch, 4);
        let mut b2 = SpanAccumulator::new(ch, 4);
        for (i, v) in vs.iter().enumerate() {
            a.insert(v.clone()).unwrap();
            if i % 2 == 0 {
                b1.insert(v.clone()).unwrap();
            } else {
                b2.insert(v.clone()).unwrap();
            }
        }
        b2.merge(b1).unwrap();
        assert_eq!(a.dim(), b2.dim());
        for row in a.basis() {
            assert!(b2.contains(row));
        }
    }

    #[test]
    fn rational_bareiss_det_and_rank() {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let ch = Char::Zero;
        let q = |n: i64, d: i64| {
            Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
        };
        let m = ExactMatrix::from_rows(
            ch,
            vec![
                vec![q(1, 2), q(1, 3)],
                vec![q(1, 4), q(1, 5)],
            ],
        )
        .unwrap();
        // det = 1/10 - 1/12 = 1/60
        assert_eq!(m.det().unwrap(), q(1, 60));
        assert_eq!(m.rank(), 2);
        let singular = ExactMatrix::from_rows(
            ch,
            vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]],
        )
        .unwrap();
        assert_eq!(singular.rank(), 1);
        assert!(singular.det().unwrap().is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let p = 101;
        let m = mat(p, &[&[1, 2], &[3, 4]]);
        let b = vec![fp(p, 5), fp(p, 6)];
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.apply(&x).unwrap(), b);
        let sing = mat(p, &[&[1, 2], &[2, 4]]);
        let bad = vec![fp(p, 1), fp(p, 3)];
        assert!(sing.solve(&bad).unwrap().is_none());
    }

    #[test]
    fn char_mismatch_is_an_error() {
        let bad = ExactMatrix::from_rows(
            Char::Prime(101),
            vec![vec![fp(101, 1), Scalar::from_i64(Char::Prime(103), 1)]],
        );
        assert_eq!(bad.unwrap_err(), Error::CharMismatch);
    }
}
