//! Dense matrices over a finite field, with exact linear algebra.
//!
//! Entries are element indices into a [`crate::fq::FieldTable`]; the table
//! is passed to each operation rather than stored, so matrices stay small,
//! hashable, and comparable by value.

use crate::fq::{FieldTable, Fq};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatFq {
    rows: usize,
    cols: usize,
    a: Vec<Fq>,
}

impl MatFq {
    pub fn zero(rows: usize, cols: usize) -> MatFq {
        MatFq { rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> MatFq {
        let mut m = MatFq::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn scalar(n: usize, c: Fq) -> MatFq {
        let mut m = MatFq::zero(n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fq>]) -> MatFq {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut a = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            a.extend_from_slice(row);
        }
        MatFq { rows: r, cols: c, a }
    }

    /// Build from signed integer literals reduced into the field.
    pub fn from_int_rows(f: &FieldTable, rows: &[Vec<i64>]) -> MatFq {
        let data: Vec<Vec<Fq>> =
            rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect();
        MatFq::from_rows(&data)
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.a[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &MatFq, f: &FieldTable) -> MatFq {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = MatFq::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let y = other.get(k, j);
                    if y != 0 {
                        let t = f.mul(x, y);
                        out.set(i, j, f.add(out.get(i, j), t));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> MatFq {
        let mut out = MatFq::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn scale(&self, c: Fq, f: &FieldTable) -> MatFq {
        let mut out = self.clone();
        for v in &mut out.a {
            *v = f.mul(*v, c);
        }
        out
    }

    pub fn add(&self, other: &MatFq, f: &FieldTable) -> MatFq {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (v, w) in out.a.iter_mut().zip(&other.a) {
            *v = f.add(*v, *w);
        }
        out
    }

    pub fn sub(&self, other: &MatFq, f: &FieldTable) -> MatFq {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (v, w) in out.a.iter_mut().zip(&other.a) {
            *v = f.sub(*v, *w);
        }
        out
    }

    pub fn neg(&self, f: &FieldTable) -> MatFq {
        let mut out = self.clone();
        for v in &mut out.a {
            *v = f.neg(*v);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u16::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&v| v == 0)
    }

    pub fn det(&self, f: &FieldTable) -> Fq {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det: Fq = 1;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m.get(r, col) != 0) else {
                return 0;
            };
            if pivot != col {
                for j in 0..n {
                    let t = m.get(col, j);
                    m.set(col, j, m.get(pivot, j));
                    m.set(pivot, j, t);
                }
                det = f.neg(det);
            }
            let p = m.get(col, col);
            det = f.mul(det, p);
            let pinv = f.inv(p);
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let t = f.mul(factor, m.get(col, j));
                    m.set(r, j, f.sub(m.get(r, j), t));
                }
            }
        }
        det
    }

    pub fn inv(&self, f: &FieldTable) -> Option<MatFq> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut out = MatFq::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| m.get(r, col) != 0)?;
            if pivot != col {
                for j in 0..n {
                    let t = m.get(col, j);
                    m.set(col, j, m.get(pivot, j));
                    m.set(pivot, j, t);
                    let t = out.get(col, j);
                    out.set(col, j, out.get(pivot, j));
                    out.set(pivot, j, t);
                }
            }
            let pinv = f.inv(m.get(col, col));
            for j in 0..n {
                m.set(col, j, f.mul(m.get(col, j), pinv));
                out.set(col, j, f.mul(out.get(col, j), pinv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(factor, m.get(col, j));
                    m.set(r, j, f.sub(m.get(r, j), t));
                    let t = f.mul(factor, out.get(col, j));
                    out.set(r, j, f.sub(out.get(r, j), t));
                }
            }
        }
        Some(out)
    }

    pub fn pow(&self, mut k: u64, f: &FieldTable) -> MatFq {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = MatFq::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order; panics if the matrix is singular.
    pub fn mult_order(&self, f: &FieldTable) -> u64 {
        let mut cur = self.clone();
        let mut k = 1u64;
        while !cur.is_identity() {
            cur = cur.mul(self, f);
            k += 1;
            assert!(k <= 1 << 32, "order runaway: matrix is likely singular");
        }
        k
    }

    /// Copy of the `h x w` block with top-left corner `(top, left)`.
    pub fn block(&self, top: usize, left: usize, h: usize, w: usize) -> MatFq {
        assert!(top + h <= self.rows && left + w <= self.cols);
        let mut out = MatFq::zero(h, w);
        for i in 0..h {
            for j in 0..w {
                out.set(i, j, self.get(top + i, left + j));
            }
        }
        out
    }

    /// Overwrite the block with top-left corner `(top, left)`.
    pub fn set_block(&mut self, top: usize, left: usize, b: &MatFq) {
        assert!(top + b.rows <= self.rows && left + b.cols <= self.cols);
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(top + i, left + j, b.get(i, j));
            }
        }
    }

    /// Block-diagonal assembly.
    pub fn block_diag(blocks: &[&MatFq]) -> MatFq {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = MatFq::zero(n, m);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j) == 0))
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square()
            && self.is_upper_triangular()
            && (0..self.rows).all(|i| self.get(i, i) == 1)
    }

    /// Rank over the field, by row reduction.
    pub fn rank(&self, f: &FieldTable) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pivot != rank {
                for j in 0..m.cols {
                    let t = m.get(rank, j);
                    m.set(rank, j, m.get(pivot, j));
                    m.set(pivot, j, t);
                }
            }
            let pinv = f.inv(m.get(rank, col));
            for r in rank + 1..m.rows {
                let factor = f.mul(m.get(r, col), pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..m.cols {
                    let t = f.mul(factor, m.get(rank, j));
                    m.set(r, j, f.sub(m.get(r, j), t));
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Nullspace basis (column vectors as rows of the result), by full
    /// reduced row echelon form.
    pub fn nullspace(&self, f: &FieldTable) -> Vec<Vec<Fq>> {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for j in 0..m.cols {
                    let t = m.get(row, j);
                    m.set(row, j, m.get(pr, j));
                    m.set(pr, j, t);
                }
            }
            let pinv = f.inv(m.get(row, col));
            for j in 0..m.cols {
                m.set(row, j, f.mul(m.get(row, j), pinv));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let t = f.mul(factor, m.get(row, j));
                    m.set(r, j, f.sub(m.get(r, j), t));
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![0 as Fq; m.cols];
            v[free] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }
}

impl std::fmt::Debug for MatFq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MatFq {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| format!("{}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
