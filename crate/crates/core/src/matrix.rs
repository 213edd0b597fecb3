//! Dense binary matrices with bitset rows.

use std::fmt;

use crate::bits::Bits;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<Bits>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryMatrix {
            cols,
            rows: vec![Bits::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BinaryMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Panics if the rows do not share a length.
    pub fn from_rows(cols: usize, rows: Vec<Bits>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        BinaryMatrix { cols, rows }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v);
    }

    pub fn row(&self, r: usize) -> &Bits {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> Bits {
        Bits::from_bools(self.rows.iter().map(|r| r.get(c)))
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.rows.len(), other.rows.len());
        BinaryMatrix {
            cols: self.cols + other.cols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.concat(b))
                .collect(),
        }
    }

    /// Matrix-vector product `self · v` over F2 (one bit per row).
    pub fn mul_vec(&self, v: &Bits) -> Bits {
        assert_eq!(v.len(), self.cols);
        Bits::from_bools(self.rows.iter().map(|r| r.dot(v)))
    }

    pub fn mul(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.cols, other.num_rows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Bits::zeros(other.cols);
                for k in r.iter_ones() {
                    acc.xor_assign(other.row(k));
                }
                acc
            })
            .collect();
        BinaryMatrix {
            cols: other.cols,
            rows,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Bits::is_zero)
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(Bits::weight).collect()
    }

    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in &self.rows {
            for j in r.iter_ones() {
                w[j] += 1;
            }
        }
        w
    }

    /// Column supports: the rows in which each column has a one.
    pub fn column_supports(&self) -> Vec<Vec<usize>> {
        let mut s = vec![Vec::new(); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                s[j].push(i);
            }
        }
        s
    }

    pub fn select_rows(&self, idx: &[usize]) -> BinaryMatrix {
        BinaryMatrix {
            cols: self.cols,
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        RowEchelon::new(self).rank()
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<BinaryMatrix> {
        let n = self.rows.len();
        assert_eq!(n, self.cols, "inverse of a non-square matrix");
        let mut a = self.hstack(&BinaryMatrix::identity(n));
        for c in 0..n {
            let p = (c..n).find(|&r| a.rows[r].get(c))?;
            a.rows.swap(c, p);
            let pivot = a.rows[c].clone();
            for r in 0..n {
                if r != c && a.rows[r].get(c) {
                    a.rows[r].xor_assign(&pivot);
                }
            }
        }
        Some(BinaryMatrix {
            cols: n,
            rows: a.rows.iter().map(|r| r.slice(n, n)).collect(),
        })
    }

    /// Basis of `{v : self · v = 0}`.
    pub fn kernel(&self) -> Vec<Bits> {
        let ech = RowEchelon::new(self);
        let pivot_set: Vec<Option<usize>> = {
            let mut p = vec![None; self.cols];
            for (ri, &c) in ech.pivots.iter().enumerate() {
                p[c] = Some(ri);
            }
            p
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = Bits::zeros(self.cols);
            v.set(free, true);
            for (ri, &pc) in ech.pivots.iter().enumerate() {
                if ech.rows[ri].get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

/// Reduced row echelon form of a row space, used for membership tests.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    len: usize,
    rows: Vec<Bits>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(m: &BinaryMatrix) -> Self {
        RowEchelon::from_vectors(m.num_cols(), m.rows().iter().cloned())
    }

    pub fn from_vectors<I: IntoIterator<Item = Bits>>(len: usize, vectors: I) -> Self {
        let mut ech = RowEchelon {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        };
        for v in vectors {
            ech.insert(v);
        }
        ech
    }

    /// Adds a vector to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Bits) -> bool {
        assert_eq!(v.len(), self.len);
        let r = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.len
    }

    pub fn basis(&self) -> &[Bits] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after clearing all pivot positions.
    pub fn reduce(&self, v: &Bits) -> Bits {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &Bits) -> bool {
        self.reduce(v).is_zero()
    }

    /// True when both row spaces coincide.
    pub fn same_span(&self, other: &RowEchelon) -> bool {
        self.len == other.len && self.rows == other.rows
    }
}
