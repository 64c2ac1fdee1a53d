use super::number::Cyclotomic;
use crate::error::{Error, Result};
use num::BigRational;

/// Matrix over a cyclotomic field; all entries share one order. Group
/// elements are square, but the elimination routines accept rectangular
/// shapes for subspace work.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycMatrix {
    order: u32,
    rows: usize,
    cols: usize,
    entries: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn new(order: u32, rows: usize, cols: usize, entries: Vec<Cyclotomic>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.order() != order {
                return Err(Error::MixedOrders {
                    left: order,
                    right: e.order(),
                });
            }
        }
        Ok(CycMatrix {
            order,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(order: u32, rows: usize, cols: usize) -> Self {
        CycMatrix {
            order,
            rows,
            cols,
            entries: vec![Cyclotomic::zero(order); rows * cols],
        }
    }

    pub fn identity(order: u32, n: usize) -> Self {
        let mut m = CycMatrix::zero(order, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Cyclotomic::one(order);
        }
        m
    }

    pub fn order(&self) -> u32 {
        self.order
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

    pub fn at(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Cyclotomic {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn from_rows(order: u32, rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            entries.extend(row);
        }
        CycMatrix::new(order, r, c, entries)
    }

    pub fn check_same_order(&self, other: &CycMatrix) -> Result<()> {
        if self.order != other.order {
            return Err(Error::MixedOrders {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &CycMatrix) -> Result<CycMatrix> {
        self.check_same_order(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CycMatrix::zero(self.order, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let p = a.mul(b)?;
                    let s = out.at(i, j).add(&p)?;
                    *out.at_mut(i, j) = s;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &CycMatrix) -> Result<CycMatrix> {
        self.check_same_order(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("matrix addition shapes".into()));
        }
        let mut out = self.clone();
        for i in 0..self.entries.len() {
            out.entries[i] = out.entries[i].add(&other.entries[i])?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CycMatrix) -> Result<CycMatrix> {
        self.check_same_order(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("matrix subtraction shapes".into()));
        }
        let mut out = self.clone();
        for i in 0..self.entries.len() {
            out.entries[i] = out.entries[i].sub(&other.entries[i])?;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> CycMatrix {
        let mut out = CycMatrix::zero(self.order, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn apply(&self, v: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch("matrix-vector shapes".into()));
        }
        let mut out = vec![Cyclotomic::zero(self.order); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.at(i, j).is_zero() || v[j].is_zero() {
                    continue;
                }
                let p = self.at(i, j).mul(&v[j])?;
                out[i] = out[i].add(&p)?;
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form with unit pivots, and the pivot columns.
    pub fn rref(&self) -> Result<(CycMatrix, Vec<usize>)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for col in 0..m.cols {
            if r >= m.rows {
                break;
            }
            let pivot = (r..m.rows).find(|&i| !m.at(i, col).is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            for j in 0..m.cols {
                let a = m.at(pivot, j).clone();
                *m.at_mut(pivot, j) = m.at(r, j).clone();
                *m.at_mut(r, j) = a;
            }
            let inv = m.at(r, col).inv()?;
            for j in 0..m.cols {
                let v = m.at(r, j).mul(&inv)?;
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i == r || m.at(i, col).is_zero() {
                    continue;
                }
                let f = m.at(i, col).clone();
                for j in 0..m.cols {
                    let s = m.at(r, j).mul(&f)?;
                    let v = m.at(i, j).sub(&s)?;
                    *m.at_mut(i, j) = v;
                }
            }
            pivots.push(col);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Right kernel basis: vectors `v` with `self * v = 0`, via RREF free
    /// variables. Deterministic order.
    pub fn kernel(&self) -> Result<Vec<Vec<Cyclotomic>>> {
        let (r, pivots) = self.rref()?;
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Cyclotomic::zero(self.order); self.cols];
            v[free] = Cyclotomic::one(self.order);
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = r.at(pi, free).neg();
            }
            basis.push(v);
        }
        Ok(basis)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inv(&self) -> Result<CycMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let mut aug = CycMatrix::zero(self.order, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = Cyclotomic::one(self.order);
        }
        let (r, pivots) = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularMatrix);
        }
        let mut out = CycMatrix::zero(self.order, n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = r.at(i, n + j).clone();
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.at(i, j);
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Rank of `self - identity`; a non-identity element of finite order is
    /// a pseudoreflection exactly when this is 1.
    pub fn fixed_space_codim(&self) -> Result<usize> {
        let d = self.sub(&CycMatrix::identity(self.order, self.rows))?;
        d.rank()
    }

    /// Basis of the fixed subspace `ker(self - identity)`, rows in RREF.
    pub fn fixed_space(&self) -> Result<Vec<Vec<Cyclotomic>>> {
        let d = self.sub(&CycMatrix::identity(self.order, self.rows))?;
        d.kernel()
    }

    /// `k`-fold block-diagonal copy.
    pub fn block_diagonal_power(&self, k: usize) -> CycMatrix {
        let n = self.rows;
        let mut out = CycMatrix::zero(self.order, n * k, n * k);
        for b in 0..k {
            for i in 0..n {
                for j in 0..n {
                    *out.at_mut(b * n + i, b * n + j) = self.at(i, j).clone();
                }
            }
        }
        out
    }

    pub fn lift(&self, m: u32) -> Result<CycMatrix> {
        let entries: Result<Vec<Cyclotomic>> = self.entries.iter().map(|e| e.lift(m)).collect();
        CycMatrix::new(m, self.rows, self.cols, entries?)
    }

    pub fn scale(&self, q: &BigRational) -> CycMatrix {
        CycMatrix {
            order: self.order,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.scale(q)).collect(),
        }
    }

    /// Deterministic serialization for element hashing.
    pub fn canonical_string(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            s.push_str(&e.canonical_string());
            s.push(';');
        }
        s
    }
}
