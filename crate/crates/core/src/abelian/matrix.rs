use crate::error::{Error, Result};
use num::{BigInt, Integer, One, Signed, Zero};

/// Dense integer matrix, row-major, arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMat {
    /// Builds a matrix from explicit rows. `cols` must be given so the
    /// zero-row case is unambiguous.
    pub fn from_rows(cols: usize, data: Vec<Vec<BigInt>>) -> Result<Self> {
        for (i, row) in data.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
        }
        Ok(IntMat {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Convenience constructor for literals in tests and examples.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMat::from_rows(cols, data).expect("ragged literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.data[i].iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self.data[i][k] * &other.data[k][j];
                    out.data[i][j] += p;
                }
            }
        }
        Ok(out)
    }

    /// Vertical concatenation; both operands must have the same column count.
    pub fn stack(&self, below: &IntMat) -> Result<IntMat> {
        if self.cols != below.cols {
            return Err(Error::ShapeMismatch(format!(
                "stack {} cols on {} cols",
                below.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        IntMat::from_rows(self.cols, data)
    }

    /// Fraction-free Bareiss determinant. Used by tests to certify
    /// unimodularity of transforms.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
                match swap {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev; // exact by Bareiss
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * a[n - 1][n - 1].clone())
    }

    fn row_sub_scaled(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source][j] * q;
            self.data[target][j] -= s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -std::mem::take(x);
        }
    }

    fn col_sub_scaled(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i][source] * q;
            self.data[i][target] -= s;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in &mut self.data {
            row.swap(a, b);
        }
    }
}

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`. Row span is preserved.
pub fn hnf(m: &IntMat) -> IntMat {
    hnf_with_transform(m).0
}

/// HNF together with a unimodular `u` such that `u * m = hnf(m)`.
pub fn hnf_with_transform(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut pivot_row = 0usize;
    for col in 0..h.cols {
        if pivot_row >= h.rows {
            break;
        }
        loop {
            let best = (pivot_row..h.rows)
                .filter(|&r| !h.data[r][col].is_zero())
                .min_by_key(|&r| h.data[r][col].abs());
            let best = match best {
                Some(b) => b,
                None => break,
            };
            h.data.swap(pivot_row, best);
            u.data.swap(pivot_row, best);
            let mut dirty = false;
            for r in pivot_row + 1..h.rows {
                if h.data[r][col].is_zero() {
                    continue;
                }
                let q = &h.data[r][col] / &h.data[pivot_row][col];
                h.row_sub_scaled(r, pivot_row, &q);
                u.row_sub_scaled(r, pivot_row, &q);
                if !h.data[r][col].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        if h.data[pivot_row][col].is_zero() {
            continue;
        }
        if h.data[pivot_row][col].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for r in 0..pivot_row {
            let q = h.data[r][col].div_floor(&h.data[pivot_row][col]);
            h.row_sub_scaled(r, pivot_row, &q);
            u.row_sub_scaled(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Number of nonzero rows of the HNF.
pub fn rank(m: &IntMat) -> usize {
    let h = hnf(m);
    (0..h.rows()).filter(|&i| !h.is_zero_row(i)).count()
}

/// Smith normal form data: `u * m * v = diag(d)` with `d_i >= 0`,
/// `d_i | d_{i+1}`, zero factors last, `u`/`v` unimodular.
#[derive(Debug, Clone)]
pub struct Snf {
    pub d: Vec<BigInt>,
    pub u: IntMat,
    pub v: IntMat,
}

pub fn snf(m: &IntMat) -> Snf {
    let mut a = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut v = IntMat::identity(m.cols);
    let n = m.rows.min(m.cols);
    let mut t = 0usize;

    while t < n {
        // Pivot search over the trailing submatrix.
        let mut best: Option<(usize, usize)> = None;
        for i in t..a.rows {
            for j in t..a.cols {
                if a.data[i][j].is_zero() {
                    continue;
                }
                match &best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if a.data[i][j].abs() < a.data[*bi][*bj].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        let (pi, pj) = match best {
            Some(p) => p,
            None => break,
        };
        a.data.swap(t, pi);
        u.data.swap(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // Clear column t below the pivot.
            let mut col_dirty = false;
            for i in t + 1..a.rows {
                if a.data[i][t].is_zero() {
                    continue;
                }
                let q = &a.data[i][t] / &a.data[t][t];
                a.row_sub_scaled(i, t, &q);
                u.row_sub_scaled(i, t, &q);
                if !a.data[i][t].is_zero() {
                    col_dirty = true;
                }
            }
            if col_dirty {
                let best = (t..a.rows)
                    .filter(|&i| !a.data[i][t].is_zero())
                    .min_by_key(|&i| a.data[i][t].abs())
                    .expect("dirty column has a nonzero entry");
                a.data.swap(t, best);
                u.data.swap(t, best);
                continue;
            }
            // Clear row t to the right of the pivot.
            let mut row_dirty = false;
            for j in t + 1..a.cols {
                if a.data[t][j].is_zero() {
                    continue;
                }
                let q = &a.data[t][j] / &a.data[t][t];
                a.col_sub_scaled(j, t, &q);
                v.col_sub_scaled(j, t, &q);
                if !a.data[t][j].is_zero() {
                    row_dirty = true;
                }
            }
            if row_dirty {
                let best = (t..a.cols)
                    .filter(|&j| !a.data[t][j].is_zero())
                    .min_by_key(|&j| a.data[t][j].abs())
                    .expect("dirty row has a nonzero entry");
                a.swap_cols(t, best);
                v.swap_cols(t, best);
                continue;
            }
            // Divisibility fix: the pivot must divide the whole trailing
            // submatrix before we advance.
            let mut offender = None;
            'scan: for i in t + 1..a.rows {
                for j in t + 1..a.cols {
                    if !(&a.data[i][j] % &a.data[t][t]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    // row_t += row_i, then keep eliminating
                    for j in 0..a.cols {
                        let add = a.data[i][j].clone();
                        a.data[t][j] += add;
                    }
                    for j in 0..u.cols {
                        let addu = u.data[i][j].clone();
                        u.data[t][j] += addu;
                    }
                }
                None => break,
            }
        }

        if a.data[t][t].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let d = (0..n).map(|i| a.data[i][i].clone()).collect();
    Snf { d, u, v }
}

/// Basis of the left integer kernel `{ u : u * m = 0 }`, rows in HNF. The
/// kernel of a map to a free group is saturated, so this is a saturated
/// sublattice basis.
pub fn kernel_basis(m: &IntMat) -> IntMat {
    let (h, u) = hnf_with_transform(m);
    let rows: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&i| h.is_zero_row(i))
        .map(|i| u.row(i).to_vec())
        .collect();
    let k = IntMat::from_rows(m.rows, rows).expect("kernel rows have matrix row count");
    hnf(&k)
}

/// Expresses `target` as an integer combination of the rows of an
/// HNF-basis matrix. Returns the coefficient vector when `target` lies in
/// the row lattice.
pub fn express_in_hnf_basis(basis: &IntMat, target: &[BigInt]) -> Option<Vec<BigInt>> {
    if target.len() != basis.cols() {
        return None;
    }
    let mut residual: Vec<BigInt> = target.to_vec();
    let mut coeffs = vec![BigInt::zero(); basis.rows()];
    for i in 0..basis.rows() {
        let pivot_col = (0..basis.cols()).find(|&j| !basis.at(i, j).is_zero());
        let pc = match pivot_col {
            Some(c) => c,
            None => continue,
        };
        let (q, r) = residual[pc].div_rem(basis.at(i, pc));
        if !r.is_zero() {
            return None;
        }
        for j in 0..basis.cols() {
            let s = basis.at(i, j) * &q;
            residual[j] -= s;
        }
        coeffs[i] = q;
    }
    if residual.iter().all(|x| x.is_zero()) {
        Some(coeffs)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(s: &Snf) -> Vec<i64> {
        s.d.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    fn assert_snf_valid(m: &IntMat, s: &Snf) {
        // u*m*v is the diagonal matrix with entries d
        let umv = s.u.mul(m).unwrap().mul(&s.v).unwrap();
        for i in 0..umv.rows() {
            for j in 0..umv.cols() {
                let expect = if i == j && i < s.d.len() {
                    s.d[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(*umv.at(i, j), expect, "diag mismatch at ({i},{j})");
            }
        }
        // divisibility chain, zeros last
        for w in s.d.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zero factors must come last");
            } else {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {} | {}", w[0], w[1]);
            }
        }
        // transforms unimodular
        assert_eq!(s.u.det().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.det().unwrap().abs(), BigInt::one());
    }

    /// Independent naive row-reduction oracle for HNF, used to pin the
    /// derived example values.
    fn naive_hnf(m: &IntMat) -> IntMat {
        let mut rows: Vec<Vec<BigInt>> = m.row_vecs().to_vec();
        let cols = m.cols();
        let mut top = 0usize;
        for col in 0..cols {
            loop {
                let nz: Vec<usize> = (top..rows.len())
                    .filter(|&r| !rows[r][col].is_zero())
                    .collect();
                if nz.is_empty() {
                    break;
                }
                if nz.len() == 1 {
                    rows.swap(top, nz[0]);
                    break;
                }
                // subtract the smallest from the others, over and over
                let min = *nz
                    .iter()
                    .min_by_key(|&&r| rows[r][col].abs())
                    .unwrap();
                for &r in &nz {
                    if r == min {
                        continue;
                    }
                    let q = &rows[r][col] / &rows[min][col];
                    for j in 0..cols {
                        let s = &rows[min][j] * &q;
                        rows[r][j] -= s;
                    }
                }
            }
            if top < rows.len() && !rows[top][col].is_zero() {
                if rows[top][col].is_negative() {
                    for x in &mut rows[top] {
                        *x = -std::mem::take(x);
                    }
                }
                for r in 0..top {
                    let q = rows[r][col].div_floor(&rows[top][col]);
                    for j in 0..cols {
                        let s = &rows[top][j] * &q;
                        rows[r][j] -= s;
                    }
                }
                top += 1;
            }
        }
        IntMat::from_rows(cols, rows).unwrap()
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMat::identity(2);
        assert_eq!(hnf(&id), id);
        let z = IntMat::zeros(2, 2);
        assert_eq!(hnf(&z), z);
    }

    #[test]
    fn hnf_derived_example() {
        let m = IntMat::from_i64(&[&[2, 6], &[1, 4]]);
        let h = hnf(&m);
        // value frozen from the naive row-reduction oracle
        assert_eq!(h, IntMat::from_i64(&[&[1, 0], &[0, 2]]));
        assert_eq!(naive_hnf(&m), h);
    }

    #[test]
    fn hnf_transform_is_unimodular_and_reproduces() {
        let m = IntMat::from_i64(&[&[4, 2, 0], &[6, 0, 3], &[2, 2, 2]]);
        let (h, u) = hnf_with_transform(&m);
        assert_eq!(u.mul(&m).unwrap(), h);
        assert_eq!(u.det().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn snf_identity() {
        let s = snf(&IntMat::identity(2));
        assert_eq!(diag_of(&s), vec![1, 1]);
    }

    #[test]
    fn snf_derived_diag_2_3() {
        let m = IntMat::from_i64(&[&[2, 0], &[0, 3]]);
        let s = snf(&m);
        // frozen from the gcd-of-minors oracle: D1 = gcd(2,3) = 1, D2 = 6
        assert_eq!(diag_of(&s), vec![1, 6]);
        assert_snf_valid(&m, &s);
    }

    #[test]
    fn snf_zero_map() {
        let m = IntMat::from_i64(&[&[0]]);
        let s = snf(&m);
        assert_eq!(diag_of(&s), vec![0]);
        assert_snf_valid(&m, &s);
    }

    #[test]
    fn kernel_of_balanced_weights() {
        // weights +1, +1, -1, -1
        let m = IntMat::from_i64(&[&[1], &[1], &[-1], &[-1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.rows(), 3);
        for v in [[1i64, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0]] {
            let t: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            assert!(
                express_in_hnf_basis(&k, &t).is_some(),
                "{v:?} should lie in the kernel lattice"
            );
        }
        // enumeration oracle over small coefficients: everything the oracle
        // finds must lie in the computed lattice
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    for d in -2i64..=2 {
                        if a + b - c - d == 0 {
                            let t: Vec<BigInt> =
                                [a, b, c, d].iter().map(|&x| BigInt::from(x)).collect();
                            assert!(express_in_hnf_basis(&k, &t).is_some());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_trivial_cases() {
        assert_eq!(kernel_basis(&IntMat::identity(3)).rows(), 0);
        let z = IntMat::zeros(2, 1);
        assert_eq!(kernel_basis(&z), IntMat::identity(2));
    }

    #[test]
    fn kernel_rows_annihilate_and_count() {
        let m = IntMat::from_i64(&[&[1, 2], &[3, 4], &[4, 6], &[0, 0]]);
        let k = kernel_basis(&m);
        assert_eq!(k.rows(), m.rows() - rank(&m));
        let prod = k.mul(&m).unwrap();
        for i in 0..prod.rows() {
            assert!(prod.is_zero_row(i));
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn snf_reconstructs_and_chains(
            rows in 1usize..5,
            cols in 1usize..5,
            seed in proptest::collection::vec(-9i64..=9, 16),
        ) {
            let data: Vec<Vec<BigInt>> = (0..rows)
                .map(|i| (0..cols).map(|j| BigInt::from(seed[i * cols + j])).collect())
                .collect();
            let m = IntMat::from_rows(cols, data).unwrap();
            assert_snf_valid(&m, &snf(&m));
        }

        #[test]
        fn kernel_rows_annihilate(
            rows in 1usize..5,
            cols in 1usize..4,
            seed in proptest::collection::vec(-9i64..=9, 16),
        ) {
            let data: Vec<Vec<BigInt>> = (0..rows)
                .map(|i| (0..cols).map(|j| BigInt::from(seed[i * cols + j])).collect())
                .collect();
            let m = IntMat::from_rows(cols, data).unwrap();
            let k = kernel_basis(&m);
            proptest::prop_assert_eq!(k.rows(), m.rows() - rank(&m));
            let prod = k.mul(&m).unwrap();
            for i in 0..prod.rows() {
                proptest::prop_assert!(prod.is_zero_row(i));
            }
        }
    }

    #[test]
    fn snf_matches_minor_gcd_oracle_on_randoms() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let r = rng.gen_range(1..=5);
            let c = rng.gen_range(1..=5);
            let data: Vec<Vec<BigInt>> = (0..r)
                .map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect())
                .collect();
            let m = IntMat::from_rows(c, data).unwrap();
            let s = snf(&m);
            assert_snf_valid(&m, &s);
            let oracle = crate::oracle::snf_invariant_factors_by_minors(&m);
            assert_eq!(s.d, oracle, "snf mismatch on {m:?}");
        }
    }
}
