use super::field::{inv_raw, is_prime, FieldElem, MAX_MODULUS};
use super::LinAlgError;

/// A dense matrix over GF(p), stored row-major. All entries share the
/// matrix's modulus; zero-extent matrices (0 x n, n x 0) are first-class
/// because vertex spaces in a ladder representation may be 0-dimensional.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} mod {} [", self.rows, self.cols, self.modulus)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        assert!(p < MAX_MODULUS && is_prime(p), "modulus {p} must be prime");
        Matrix {
            rows,
            cols,
            modulus: p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Matrix::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row-major signed entries, reducing mod p.
    pub fn from_rows(rows: usize, cols: usize, entries: &[i64], p: u64) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let mut m = Matrix::zeros(rows, cols, p);
        let mp = p as i64;
        for (k, &e) in entries.iter().enumerate() {
            m.data[k] = (((e % mp) + mp) % mp) as u64;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, p: u64, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Matrix::zeros(rows, cols, p);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
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

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        FieldElem::new(self[(i, j)] as i64, self.modulus)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.data[i * self.cols + j] = v % self.modulus;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == u64::from(i == j)))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.modulus, |i, j| self[(j, i)])
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let p = self.modulus;
        let mut out = Matrix::zeros(self.rows, other.cols, p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cell = &mut out.data[i * other.cols + j];
                    *cell = (*cell + a * other[(k, j)]) % p;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        assert_eq!(self.modulus, other.modulus);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + *b) % self.modulus;
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        assert_eq!(self.modulus, other.modulus);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a + self.modulus - *b) % self.modulus;
        }
        out
    }

    pub fn neg(&self) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = (self.modulus - *a) % self.modulus;
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(idx.len(), self.cols, self.modulus, |i, j| self[(idx[i], j)])
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, idx.len(), self.modulus, |i, j| self[(i, idx[j])])
    }

    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        Matrix::from_fn(r1 - r0, c1 - c0, self.modulus, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols);
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b[(i, j)]);
            }
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.modulus, other.modulus);
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols, self.modulus);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.modulus, other.modulus);
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols, self.modulus);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    /// Block-diagonal stack of two matrices (used by direct sums).
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.modulus, other.modulus);
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols, self.modulus);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    /// Kronecker product, `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let p = self.modulus;
        assert_eq!(p, other.modulus);
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, p, |i, j| {
            let a = self[(i / other.rows, j / other.cols)];
            let b = other[(i % other.rows, j % other.cols)];
            a * b % p
        })
    }

    pub fn permutation(perm: &[usize], p: u64) -> Matrix {
        // column j of the result is e_{perm[j]}: as a basis change it sends
        // new coordinate j to old coordinate perm[j].
        let n = perm.len();
        let mut m = Matrix::zeros(n, n, p);
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, 1);
        }
        m
    }

    // --- elementary column/row operations ------------------------------

    fn add_col_multiple(&mut self, src: usize, dst: usize, c: u64) {
        if c == 0 {
            return;
        }
        let p = self.modulus;
        for i in 0..self.rows {
            let v = (self[(i, dst)] + c * self[(i, src)]) % p;
            self.data[i * self.cols + dst] = v;
        }
    }

    fn add_row_multiple(&mut self, src: usize, dst: usize, c: u64) {
        if c == 0 {
            return;
        }
        let p = self.modulus;
        for j in 0..self.cols {
            let v = (self[(dst, j)] + c * self[(src, j)]) % p;
            self.data[dst * self.cols + j] = v;
        }
    }

    fn scale_col(&mut self, j: usize, c: u64) {
        let p = self.modulus;
        for i in 0..self.rows {
            self.data[i * self.cols + j] = self[(i, j)] * c % p;
        }
    }

    fn scale_row(&mut self, i: usize, c: u64) {
        let p = self.modulus;
        for j in 0..self.cols {
            self.data[i * self.cols + j] = self[(i, j)] * c % p;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    // --- echelon reductions ---------------------------------------------
    //
    // Both reductions zero the bottom-left region of the result. The column
    // form places all-zero columns first, then pivot columns whose lowest
    // nonzero entry descends strictly rightward; the row form is the usual
    // staircase with zero rows at the bottom. Pivot selection is always the
    // first usable nonzero in scan order.

    /// Column echelon reduction: returns `(E, P)` with `E = self * P` and
    /// `P` invertible. The first `cols - rank` columns of `E` are zero and
    /// the corresponding columns of `P` are a kernel basis.
    pub fn column_echelon(&self) -> (Matrix, Matrix) {
        let p = self.modulus;
        let mut e = self.clone();
        let mut t = Matrix::identity(self.cols, p);
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; self.cols];
        for i in (0..self.rows).rev() {
            let Some(j) = (0..self.cols).find(|&j| pivot_of_col[j].is_none() && e[(i, j)] != 0)
            else {
                continue;
            };
            pivot_of_col[j] = Some(i);
            let inv = inv_raw(e[(i, j)], p).expect("pivot is nonzero");
            e.scale_col(j, inv);
            t.scale_col(j, inv);
            for j2 in 0..self.cols {
                if j2 != j && pivot_of_col[j2].is_none() && e[(i, j2)] != 0 {
                    let c = (p - e[(i, j2)]) % p;
                    e.add_col_multiple(j, j2, c);
                    t.add_col_multiple(j, j2, c);
                }
            }
        }
        // zero columns first, then pivots by ascending pivot row
        let mut order: Vec<usize> = (0..self.cols).filter(|&j| pivot_of_col[j].is_none()).collect();
        let mut pivots: Vec<usize> = (0..self.cols).filter(|&j| pivot_of_col[j].is_some()).collect();
        pivots.sort_by_key(|&j| pivot_of_col[j].unwrap());
        order.extend(pivots);
        (e.select_cols(&order), t.select_cols(&order))
    }

    /// Row echelon reduction: returns `(E, Q)` with `E = Q * self` and `Q`
    /// invertible. Pivot rows come first (leading entries moving rightward),
    /// zero rows last.
    pub fn row_echelon(&self) -> (Matrix, Matrix) {
        let p = self.modulus;
        let mut e = self.clone();
        let mut q = Matrix::identity(self.rows, p);
        let mut pivot_of_row: Vec<Option<usize>> = vec![None; self.rows];
        for j in 0..self.cols {
            let Some(i) = (0..self.rows).find(|&i| pivot_of_row[i].is_none() && e[(i, j)] != 0)
            else {
                continue;
            };
            pivot_of_row[i] = Some(j);
            let inv = inv_raw(e[(i, j)], p).expect("pivot is nonzero");
            e.scale_row(i, inv);
            q.scale_row(i, inv);
            for i2 in 0..self.rows {
                if i2 != i && pivot_of_row[i2].is_none() && e[(i2, j)] != 0 {
                    let c = (p - e[(i2, j)]) % p;
                    e.add_row_multiple(i, i2, c);
                    q.add_row_multiple(i, i2, c);
                }
            }
        }
        let mut order: Vec<usize> = (0..self.rows).filter(|&i| pivot_of_row[i].is_some()).collect();
        order.sort_by_key(|&i| pivot_of_row[i].unwrap());
        order.extend((0..self.rows).filter(|&i| pivot_of_row[i].is_none()));
        (e.select_rows(&order), q.select_rows(&order))
    }

    pub fn rank(&self) -> usize {
        let (e, _) = self.column_echelon();
        (0..e.cols)
            .filter(|&j| (0..e.rows).any(|i| e[(i, j)] != 0))
            .count()
    }

    /// Columns spanning `ker self`; the count is `cols - rank`.
    pub fn kernel_basis(&self) -> Matrix {
        let (e, p) = self.column_echelon();
        let k = (0..e.cols)
            .take_while(|&j| (0..e.rows).all(|i| e[(i, j)] == 0))
            .count();
        p.block(0, p.rows, 0, k)
    }

    /// Solves `self * X = rhs`, returning `None` when inconsistent. For
    /// underdetermined systems an arbitrary (deterministic) solution is
    /// produced by setting free variables to zero.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "shape mismatch in solve");
        assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus;
        let (e, q) = self.row_echelon();
        let b = q.mul(rhs);
        // leading column of each pivot row
        let mut x = Matrix::zeros(self.cols, rhs.cols, p);
        let mut pivot_rows: Vec<(usize, usize)> = Vec::new();
        for i in 0..e.rows {
            match (0..e.cols).find(|&j| e[(i, j)] != 0) {
                Some(j) => pivot_rows.push((i, j)),
                None => {
                    if (0..b.cols).any(|j| b[(i, j)] != 0) {
                        return None; // 0 = nonzero: inconsistent
                    }
                }
            }
        }
        for &(i, j) in pivot_rows.iter().rev() {
            for c in 0..rhs.cols {
                let mut acc = b[(i, c)];
                for j2 in (j + 1)..e.cols {
                    if e[(i, j2)] != 0 {
                        acc = (acc + p * p - e[(i, j2)] * x[(j2, c)] % p) % p;
                    }
                }
                // pivot is normalized to 1 by row_echelon
                x.set(j, c, acc);
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Matrix, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::ShapeMismatch(format!(
                "inverse of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let id = Matrix::identity(self.rows, self.modulus);
        match self.solve(&id) {
            Some(x) if self.mul(&x).is_identity() => Ok(x),
            _ => Err(LinAlgError::Singular),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// A left inverse `L` with `L * self = I`; requires full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let lt = self.transpose().solve(&Matrix::identity(self.cols, self.modulus))?;
        let l = lt.transpose();
        if l.mul(self).is_identity() {
            Some(l)
        } else {
            None
        }
    }

    /// Extends the (full-column-rank) columns of `self` to a basis: returns
    /// an invertible matrix whose first `cols` columns equal `self`,
    /// completed greedily with unit vectors.
    pub fn extend_to_basis(&self) -> Matrix {
        let n = self.rows;
        let p = self.modulus;
        assert_eq!(self.rank(), self.cols, "columns must be independent");
        let mut chosen = self.clone();
        for i in 0..n {
            if chosen.cols == n {
                break;
            }
            let mut unit = Matrix::zeros(n, 1, p);
            unit.set(i, 0, 1);
            let cand = chosen.hstack(&unit);
            if cand.rank() == cand.cols() {
                chosen = cand;
            }
        }
        assert_eq!(chosen.cols, n, "completion failed");
        chosen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64], p: u64) -> Matrix {
        Matrix::from_rows(rows, cols, e, p)
    }

    /// Checks the paper's column-echelon shape: zero columns first, then
    /// pivots whose lowest nonzero row strictly increases (so the region
    /// below-left of the staircase is zero).
    fn assert_column_echelon_shape(e: &Matrix) {
        let lowest: Vec<Option<usize>> = (0..e.cols())
            .map(|j| (0..e.rows()).rev().find(|&i| e[(i, j)] != 0))
            .collect();
        let mut seen_pivot = false;
        let mut last = None;
        for l in lowest {
            match l {
                None => assert!(!seen_pivot, "zero column after a pivot column"),
                Some(r) => {
                    if let Some(prev) = last {
                        assert!(r > prev, "pivot rows must descend rightward");
                    }
                    last = Some(r);
                    seen_pivot = true;
                }
            }
        }
    }

    #[test]
    fn column_echelon_identity() {
        let id = Matrix::identity(3, 5);
        let (e, p) = id.column_echelon();
        assert_eq!(e, id);
        assert_eq!(p, id);
    }

    #[test]
    fn column_echelon_equal_columns_gf2() {
        let a = m(2, 2, &[1, 1, 1, 1], 2);
        let (e, p) = a.column_echelon();
        assert_eq!(a.mul(&p), e);
        assert!(p.is_invertible());
        let nonzero = (0..2).filter(|&j| (0..2).any(|i| e[(i, j)] != 0)).count();
        assert_eq!(nonzero, 1);
        assert_eq!(e.rank(), 1);
    }

    #[test]
    fn column_echelon_witness_gf2() {
        let a = m(2, 2, &[1, 1, 1, 0], 2);
        let (e, p) = a.column_echelon();
        assert_eq!(a.mul(&p), e);
        assert!(p.is_invertible());
        assert_column_echelon_shape(&e);
    }

    #[test]
    fn row_echelon_identity_and_zero() {
        let id = Matrix::identity(4, 3);
        let (e, q) = id.row_echelon();
        assert_eq!(e, id);
        assert_eq!(q, id);
        let z = Matrix::zeros(2, 3, 3);
        let (e, q) = z.row_echelon();
        assert_eq!(e, z);
        assert_eq!(q, Matrix::identity(2, 3));
    }

    #[test]
    fn row_echelon_permutation_gf3() {
        let a = m(2, 2, &[0, 1, 1, 0], 3);
        let (e, q) = a.row_echelon();
        assert_eq!(q.mul(&a), e);
        assert_eq!(e, Matrix::identity(2, 3));
        // Q is the row swap
        assert_eq!(q, m(2, 2, &[0, 1, 1, 0], 3));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(4, 2).rank(), 4);
        assert_eq!(m(2, 2, &[1, 1, 1, 1], 2).rank(), 1);
        assert_eq!(Matrix::zeros(3, 2, 5).rank(), 0);
    }

    #[test]
    fn kernel_of_zero_map() {
        let z = Matrix::zeros(2, 3, 5);
        let k = z.kernel_basis();
        assert_eq!(k.cols(), 3);
        assert!(z.mul(&k).is_zero());
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn kernel_columns_are_independent_cycles() {
        let a = m(2, 3, &[1, 2, 3, 2, 4, 6], 7); // second row = 2 * first
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 3 - a.rank());
        assert!(a.mul(&k).is_zero());
        assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(3, 3, &[2, 1, 0, 0, 1, 4, 3, 0, 1], 5);
        let x = m(3, 2, &[1, 2, 3, 4, 0, 1], 5);
        let b = a.mul(&x);
        let got = a.solve(&b).unwrap();
        assert_eq!(a.mul(&got), b);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
    }

    #[test]
    fn solve_inconsistent_is_none() {
        let a = m(2, 1, &[1, 1], 3);
        let b = m(2, 1, &[1, 2], 3);
        assert!(a.solve(&b).is_none());
    }

    #[test]
    fn singular_inverse_is_error() {
        let a = m(2, 2, &[1, 1, 1, 1], 2);
        assert_eq!(a.inverse(), Err(LinAlgError::Singular));
    }

    #[test]
    fn extend_to_basis_completes() {
        let c = m(3, 1, &[0, 1, 0], 2);
        let b = c.extend_to_basis();
        assert!(b.is_invertible());
        assert_eq!(b.block(0, 3, 0, 1), c);
    }

    #[test]
    fn left_inverse_of_injection() {
        let c = m(3, 2, &[1, 0, 2, 1, 0, 3], 5);
        let l = c.left_inverse().unwrap();
        assert!(l.mul(&c).is_identity());
    }

    #[test]
    fn empty_matrices_work() {
        let a = Matrix::zeros(0, 3, 2);
        let b = Matrix::zeros(3, 0, 2);
        assert_eq!(a.mul(&b.transpose()).rows(), 0);
        assert_eq!(b.mul(&a).rank(), 0);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.kernel_basis().cols(), 3);
        let (e, p) = a.column_echelon();
        assert_eq!(e.cols(), 3);
        assert!(p.is_identity());
    }

    #[test]
    fn kron_layout() {
        let id = Matrix::identity(2, 2);
        let v = m(2, 1, &[1, 0], 2);
        let k = id.kron(&v);
        // copy-major: column j hits row 2*j
        assert_eq!(k, m(4, 2, &[1, 0, 0, 0, 0, 1, 0, 0], 2));
    }
}
