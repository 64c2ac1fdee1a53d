use crate::cyclotomic::{CycMatrix, Cyclotomic};
use crate::error::Result;

/// A linear subspace of `K^n` over a cyclotomic field, stored as an RREF
/// basis so that equal subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: CycMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_spanning(order: u32, ambient: usize, vectors: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let raw = CycMatrix::from_rows(order, vectors)?;
        let (r, pivots) = raw.rref()?;
        let rows: Vec<Vec<Cyclotomic>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        let basis = if rows.is_empty() {
            CycMatrix::zero(order, 0, ambient)
        } else {
            CycMatrix::from_rows(order, rows)?
        };
        Ok(Subspace { basis, pivots })
    }

    pub fn full(order: u32, ambient: usize) -> Self {
        Subspace {
            basis: CycMatrix::identity(order, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn order(&self) -> u32 {
        self.basis.order()
    }

    pub fn basis(&self) -> &CycMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    pub fn canonical_key(&self) -> String {
        format!("{}x{}:{}", self.dim(), self.ambient(), self.basis.canonical_string())
    }

    /// Remainder of `v` after subtracting the pivot components; zero iff
    /// `v` lies in the subspace.
    pub fn reduce(&self, v: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        let mut rem = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = rem[pc].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ambient() {
                let s = self.basis.at(i, j).mul(&c)?;
                rem[j] = rem[j].sub(&s)?;
            }
        }
        Ok(rem)
    }

    pub fn contains(&self, v: &[Cyclotomic]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|x| x.is_zero()))
    }

    /// Coordinates of `v` in the RREF basis; `v` must be a member.
    pub fn coordinates(&self, v: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        let coords: Vec<Cyclotomic> = self.pivots.iter().map(|&pc| v[pc].clone()).collect();
        debug_assert!(self.contains(v)?);
        Ok(coords)
    }

    /// Intersection via the left kernel of the residuals of one basis
    /// against the other.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        let order = self.order();
        let n = self.ambient();
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::from_spanning(order, n, Vec::new());
        }
        let mut residual_rows = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            residual_rows.push(other.reduce(self.basis.row(i))?);
        }
        let residual = CycMatrix::from_rows(order, residual_rows)?;
        // c * residual = 0  <=>  residual^T c = 0
        let combos = residual.transpose().kernel()?;
        let mut vectors = Vec::with_capacity(combos.len());
        for c in combos {
            let mut v = vec![Cyclotomic::zero(order); n];
            for (i, ci) in c.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let s = self.basis.at(i, j).mul(ci)?;
                    v[j] = v[j].add(&s)?;
                }
            }
            vectors.push(v);
        }
        Subspace::from_spanning(order, n, vectors)
    }
}
