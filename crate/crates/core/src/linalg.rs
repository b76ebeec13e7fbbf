//! Dense exact linear algebra over `F_{p^k}`: row reduction with
//! deterministic pivoting, solving with kernel bases, and
//! Frobenius-semilinear systems solved by restriction of scalars to `F_p`.

use thiserror::Error;

use crate::field::{Field, FieldError, Fq};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Row-major dense matrix over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Fq>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Fq>>) -> Result<Matrix, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinAlgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &Fq {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.field != other.field {
            return Err(LinAlgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch("matrix add".into()));
        }
        let f = &self.field;
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = f.add(&self.data[i], &other.data[i]);
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Fq]) -> Result<Vec<Fq>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "matrix {}x{} applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = f.zero();
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !f.is_zero(a) {
                    acc = f.add(&acc, &f.mul(a, &v[j]));
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Result<Matrix, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::DimensionMismatch("pow of non-square".into()));
        }
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// In-place reduced row echelon form with deterministic pivoting
    /// (first nonzero entry in column order). Returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut pivot_row = None;
            for i in r..self.rows {
                if !f.is_zero(self.get(i, c)) {
                    pivot_row = Some(i);
                    break;
                }
            }
            let Some(pi) = pivot_row else { continue };
            self.swap_rows(r, pi);
            let inv = f.inv(self.get(r, c)).expect("pivot nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !f.is_zero(self.get(i, c)) {
                    let factor = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel { v : A v = 0 }.
    pub fn kernel(&self) -> Vec<Vec<Fq>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(ri, fc));
            }
            basis.push(v);
        }
        basis
    }
}

/// Result of a consistent linear solve: one particular solution plus a
/// basis of the homogeneous kernel.
#[derive(Debug, Clone)]
pub struct LinearSolution {
    pub particular: Vec<Fq>,
    pub kernel: Vec<Vec<Fq>>,
}

/// Solve A x = b. `Ok(None)` means no solution exists.
pub fn solve_linear(a: &Matrix, b: &[Fq]) -> Result<Option<LinearSolution>, LinAlgError> {
    if b.len() != a.rows {
        return Err(LinAlgError::DimensionMismatch(format!(
            "rhs length {} for {} rows",
            b.len(),
            a.rows
        )));
    }
    let f = &a.field;
    // Augmented matrix [A | b].
    let mut aug = Matrix::zeros(f, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let pivots = aug.rref();
    if pivots.contains(&a.cols) {
        return Ok(None);
    }
    let mut particular = vec![f.zero(); a.cols];
    for (ri, &pc) in pivots.iter().enumerate() {
        particular[pc] = aug.get(ri, a.cols).clone();
    }
    Ok(Some(LinearSolution {
        particular,
        kernel: a.kernel(),
    }))
}

/// Span of row vectors kept in reduced echelon form; supports membership
/// tests and incremental insertion.
#[derive(Debug, Clone)]
pub struct RowSpan {
    pub field: Field,
    pub width: usize,
    rows: Vec<Vec<Fq>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(field: &Field, width: usize) -> RowSpan {
        RowSpan {
            field: field.clone(),
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the span; the remainder is returned.
    pub fn reduce(&self, v: &[Fq]) -> Vec<Fq> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[pc]) {
                let factor = v[pc].clone();
                for j in pc..self.width {
                    if !f.is_zero(&row[j]) {
                        v[j] = f.sub(&v[j], &f.mul(&factor, &row[j]));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Fq]) -> bool {
        let f = &self.field;
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[Fq]) -> bool {
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pc]).expect("nonzero leading entry");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // Back-substitute into existing rows, keep rows sorted by pivot.
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[pc]) {
                let factor = row[pc].clone();
                for j in 0..self.width {
                    if !f.is_zero(&v[j]) {
                        row[j] = f.sub(&row[j], &f.mul(&factor, &v[j]));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.rows.insert(at, v);
        self.pivots.insert(at, pc);
        true
    }

    /// Coordinates of `v` in the quotient by this span: entries of the
    /// reduced vector at non-pivot positions.
    pub fn quotient_coords(&self, v: &[Fq], free: &[usize]) -> Vec<Fq> {
        let r = self.reduce(v);
        free.iter().map(|&j| r[j].clone()).collect()
    }

    /// Non-pivot coordinate positions (a basis of the quotient).
    pub fn free_positions(&self) -> Vec<usize> {
        let pivot_set: std::collections::HashSet<usize> = self.pivots.iter().copied().collect();
        (0..self.width).filter(|j| !pivot_set.contains(j)).collect()
    }
}

/// Incremental kernel tracker: maintains a basis of the joint kernel of all
/// rows inserted so far. Starts as the full space.
#[derive(Debug, Clone)]
pub struct KernelTracker {
    pub field: Field,
    pub width: usize,
    basis: Vec<Vec<Fq>>,
}

impl KernelTracker {
    pub fn new(field: &Field, width: usize) -> KernelTracker {
        let mut basis = Vec::with_capacity(width);
        for i in 0..width {
            let mut v = vec![field.zero(); width];
            v[i] = field.one();
            basis.push(v);
        }
        KernelTracker {
            field: field.clone(),
            width,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Fq>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vec<Fq>> {
        self.basis
    }

    /// Impose the constraint row . v = 0 on the tracked space.
    pub fn add_row(&mut self, row: &[Fq]) {
        assert_eq!(row.len(), self.width, "constraint width mismatch");
        let f = self.field.clone();
        let dots: Vec<Fq> = self
            .basis
            .iter()
            .map(|v| {
                let mut acc = f.zero();
                for (a, b) in row.iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect();
        let Some(piv) = dots.iter().position(|d| !f.is_zero(d)) else {
            return;
        };
        let pivot_vec = self.basis.remove(piv);
        let pivot_dot = dots[piv].clone();
        let inv = f.inv(&pivot_dot).expect("nonzero dot");
        for (idx, v) in self.basis.iter_mut().enumerate() {
            let d = if idx < piv {
                &dots[idx]
            } else {
                &dots[idx + 1]
            };
            if f.is_zero(d) {
                continue;
            }
            let factor = f.mul(d, &inv);
            for (x, pv) in v.iter_mut().zip(&pivot_vec) {
                *x = f.sub(x, &f.mul(&factor, pv));
            }
        }
    }
}

/// A Frobenius-semilinear map v -> M . Frob^e(v) (entrywise Frobenius).
#[derive(Debug, Clone)]
pub struct SemilinearMap {
    pub matrix: Matrix,
    pub frobenius_power: usize,
}

impl SemilinearMap {
    pub fn linear(matrix: Matrix) -> SemilinearMap {
        SemilinearMap {
            matrix,
            frobenius_power: 0,
        }
    }

    pub fn apply(&self, v: &[Fq]) -> Result<Vec<Fq>, LinAlgError> {
        let f = &self.matrix.field;
        let fv: Vec<Fq> = v
            .iter()
            .map(|x| f.frobenius(x, self.frobenius_power))
            .collect();
        self.matrix.apply(&fv)
    }
}

/// Express `F_{p^k}` coordinates over `F_p`: each field coordinate becomes
/// k prime-field coordinates in the power basis.
pub fn restrict_vector(field: &Field, v: &[Fq], fp: &Field) -> Vec<Fq> {
    let k = field.k();
    let mut out = Vec::with_capacity(v.len() * k);
    for x in v {
        for i in 0..k {
            out.push(fp.from_u64(x.coeffs()[i]));
        }
    }
    out
}

/// Inverse of [`restrict_vector`].
pub fn unrestrict_vector(field: &Field, v: &[Fq]) -> Vec<Fq> {
    let k = field.k();
    assert_eq!(v.len() % k, 0);
    v.chunks(k)
        .map(|chunk| {
            let coeffs: Vec<u64> = chunk.iter().map(|c| c.coeffs()[0]).collect();
            field.from_coeffs(&coeffs).expect("length k by construction")
        })
        .collect()
}

/// `F_p`-matrix of a semilinear map after restriction of scalars. The map
/// becomes honestly `F_p`-linear because Frobenius is `F_p`-linear.
pub fn restrict_semilinear(map: &SemilinearMap, fp: &Field) -> Result<Matrix, LinAlgError> {
    let field = &map.matrix.field;
    let k = field.k();
    let n = map.matrix.cols;
    let m = map.matrix.rows;
    let mut out = Matrix::zeros(fp, m * k, n * k);
    for j in 0..n {
        for t in 0..k {
            // Basis vector lambda_t e_j where lambda_t = generator^t.
            let mut basis = vec![field.zero(); n];
            let mut coeffs = vec![0u64; k];
            coeffs[t] = 1;
            basis[j] = field.from_coeffs(&coeffs).expect("power basis element");
            let image = map.apply(&basis)?;
            let col = restrict_vector(field, &image, fp);
            for (i, val) in col.iter().enumerate() {
                out.set(i, j * k + t, val.clone());
            }
        }
    }
    Ok(out)
}

/// Joint kernel of a family of semilinear equations, as an `F_p`-basis.
#[derive(Debug, Clone)]
pub struct SemilinearKernel {
    /// Kernel vectors expressed back over `F_{p^k}`.
    pub basis: Vec<Vec<Fq>>,
    /// Dimension over `F_p`.
    pub fp_dim: usize,
    /// Extension degree k, for converting dimensions.
    pub k: usize,
}

/// Restrict scalars to `F_p`, stack all equations, and return an `F_p`-basis
/// of the joint kernel.
pub fn semilinear_kernel(maps: &[SemilinearMap]) -> Result<SemilinearKernel, LinAlgError> {
    let Some(first) = maps.first() else {
        return Err(LinAlgError::DimensionMismatch("empty equation list".into()));
    };
    let field = first.matrix.field.clone();
    let n = first.matrix.cols;
    for m in maps {
        if m.matrix.field != field {
            return Err(LinAlgError::FieldMismatch);
        }
        if m.matrix.cols != n {
            return Err(LinAlgError::DimensionMismatch(
                "equations act on different spaces".into(),
            ));
        }
    }
    let fp = Field::prime(field.p()).expect("p is prime");
    let k = field.k();
    let mut tracker = KernelTracker::new(&fp, n * k);
    for m in maps {
        let fp_mat = restrict_semilinear(m, &fp)?;
        for i in 0..fp_mat.rows {
            tracker.add_row(fp_mat.row(i));
        }
    }
    let basis: Vec<Vec<Fq>> = tracker
        .basis()
        .iter()
        .map(|v| unrestrict_vector(&field, v))
        .collect();
    Ok(SemilinearKernel {
        fp_dim: basis.len(),
        basis,
        k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn solve_with_kernel() {
        let f = f2();
        let a = Matrix::from_rows(
            &f,
            vec![
                vec![f.one(), f.one()],
                vec![f.zero(), f.zero()],
            ],
        )
        .unwrap();
        let sol = solve_linear(&a, &[f.one(), f.zero()]).unwrap().unwrap();
        assert_eq!(sol.particular, vec![f.one(), f.zero()]);
        assert_eq!(sol.kernel, vec![vec![f.one(), f.one()]]);
    }

    #[test]
    fn identity_solve_unique() {
        let f = Field::prime(5).unwrap();
        let a = Matrix::identity(&f, 3);
        let b = vec![f.from_u64(2), f.from_u64(3), f.from_u64(4)];
        let sol = solve_linear(&a, &b).unwrap().unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn zero_map_no_solution() {
        let f = f2();
        let a = Matrix::zeros(&f, 2, 2);
        assert!(solve_linear(&a, &[f.one(), f.zero()]).unwrap().is_none());
    }

    #[test]
    fn solve_residual_exact() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f = Field::prime(3).unwrap();
        for _ in 0..20 {
            let a = {
                let mut m = Matrix::zeros(&f, 3, 4);
                for i in 0..3 {
                    for j in 0..4 {
                        m.set(i, j, f.random(&mut rng));
                    }
                }
                m
            };
            let x: Vec<Fq> = (0..4).map(|_| f.random(&mut rng)).collect();
            let b = a.apply(&x).unwrap();
            let sol = solve_linear(&a, &b).unwrap().expect("consistent by construction");
            assert_eq!(a.apply(&sol.particular).unwrap(), b);
            for kv in &sol.kernel {
                assert!(a.apply(kv).unwrap().iter().all(|z| f.is_zero(z)));
            }
        }
    }

    #[test]
    fn kernel_tracker_matches_kernel() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let f = Field::prime(3).unwrap();
        for _ in 0..20 {
            let mut m = Matrix::zeros(&f, 4, 5);
            for i in 0..4 {
                for j in 0..5 {
                    m.set(i, j, f.random(&mut rng));
                }
            }
            let mut tracker = KernelTracker::new(&f, 5);
            for i in 0..4 {
                tracker.add_row(m.row(i));
            }
            assert_eq!(tracker.dim(), m.kernel().len());
            for v in tracker.basis() {
                assert!(m.apply(v).unwrap().iter().all(|z| f.is_zero(z)));
            }
        }
    }

    #[test]
    fn semilinear_kernel_f4_frobenius() {
        // m -> w * Frob(m) on a 1-dim space over F_4 has trivial kernel.
        let f = Field::new(2, 2, &[1, 1, 1]).unwrap();
        let w = f.gen();
        let mut mat = Matrix::zeros(&f, 1, 1);
        mat.set(0, 0, w);
        let map = SemilinearMap {
            matrix: mat,
            frobenius_power: 1,
        };
        let k = semilinear_kernel(&[map]).unwrap();
        assert_eq!(k.fp_dim, 0);
    }

    #[test]
    fn semilinear_kernel_identity_and_zero() {
        let f = f2();
        let id = SemilinearMap::linear(Matrix::identity(&f, 1));
        assert_eq!(semilinear_kernel(&[id]).unwrap().fp_dim, 0);

        let zero = SemilinearMap::linear(Matrix::zeros(&f, 3, 3));
        assert_eq!(semilinear_kernel(&[zero]).unwrap().fp_dim, 3);
    }

    #[test]
    fn semilinear_kernel_permutation_invariant() {
        use rand::SeedableRng;
        let f = Field::new(2, 2, &[1, 1, 1]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mk = |rng: &mut rand_chacha::ChaCha8Rng, e: usize| {
            let mut m = Matrix::zeros(&f, 2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    m.set(i, j, f.random(rng));
                }
            }
            SemilinearMap {
                matrix: m,
                frobenius_power: e,
            }
        };
        let maps = vec![mk(&mut rng, 0), mk(&mut rng, 1), mk(&mut rng, 1)];
        let d1 = semilinear_kernel(&maps).unwrap().fp_dim;
        let permuted = vec![maps[2].clone(), maps[0].clone(), maps[1].clone()];
        let d2 = semilinear_kernel(&permuted).unwrap().fp_dim;
        assert_eq!(d1, d2);
    }
}
