use super::lp::{feasible_eq_nonneg, in_nonneg_span};
use crate::abelian::{express_in_hnf_basis, kernel_basis, snf, IntMat};
use crate::error::{Error, Result};
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// Rational polyhedral cone given by its extreme rays: primitive integer
/// vectors, lexicographically sorted, none a nonnegative combination of the
/// others.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<Vec<BigInt>>,
}

impl Cone {
    pub fn new(ambient_rank: usize, mut rays: Vec<Vec<BigInt>>) -> Self {
        for r in &mut rays {
            primitivize(r);
        }
        rays.sort();
        rays.dedup();
        Cone { ambient_rank, rays }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn ray_matrix(&self) -> IntMat {
        IntMat::from_rows(self.ambient_rank, self.rays.clone()).expect("rays sized to ambient")
    }
}

fn primitivize(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rank of a set of integer vectors, by rational Gaussian elimination.
fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut mat: Vec<Vec<BigRational>> = rows.iter().map(|r| to_rational(r)).collect();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot = (rank..mat.len()).find(|&i| !mat[i][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        mat.swap(rank, pivot);
        let pv = mat[rank][col].clone();
        for i in 0..mat.len() {
            if i == rank || mat[i][col].is_zero() {
                continue;
            }
            let f = &mat[i][col] / &pv;
            for j in col..cols {
                let s = &mat[rank][j] * &f;
                mat[i][j] -= s;
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank
}

/// Extreme rays of `{ x in Q^n_{>=0} : x in L ⊗ Q }` for the sublattice `L`
/// spanned by the rows of `kernel`, by the double description method run in
/// the basis coordinates of `L`. Rays come out primitive and sorted.
pub fn extreme_rays(kernel: &IntMat, n: usize) -> Result<Cone> {
    if kernel.cols() != n {
        return Err(Error::ShapeMismatch(format!(
            "kernel has {} columns, ambient dimension is {n}",
            kernel.cols()
        )));
    }
    let k = kernel.rows();
    if k == 0 {
        return Ok(Cone::new(n, Vec::new()));
    }

    // halfspace normals in y-coordinates: columns of the basis matrix
    let constraints: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..k).map(|i| kernel.at(i, j).clone()).collect())
        .collect();

    // greedy independent subset of size k for the simplicial start
    let mut chosen: Vec<usize> = Vec::new();
    for j in 0..n {
        if chosen.len() == k {
            break;
        }
        let mut trial: Vec<Vec<BigInt>> = chosen.iter().map(|&c| constraints[c].clone()).collect();
        trial.push(constraints[j].clone());
        if rational_rank(&trial) == trial.len() {
            chosen.push(j);
        }
    }
    if chosen.len() != k {
        return Err(Error::ShapeMismatch(
            "kernel rows are not a lattice basis".into(),
        ));
    }

    // initial rays: columns of the inverse of the chosen constraint matrix
    let init = invert_rational(&chosen.iter().map(|&c| to_rational(&constraints[c])).collect::<Vec<_>>());
    let mut rays: Vec<Vec<BigInt>> = Vec::with_capacity(k);
    for l in 0..k {
        let col: Vec<BigRational> = (0..k).map(|i| init[i][l].clone()).collect();
        rays.push(clear_denominators(&col));
    }

    let mut processed: Vec<usize> = chosen.clone();
    let mut tight: Vec<Vec<usize>> = (0..k)
        .map(|l| {
            processed
                .iter()
                .copied()
                .filter(|&j| dot(&constraints[j], &rays[l]).is_zero())
                .collect()
        })
        .collect();

    for j in 0..n {
        if chosen.contains(&j) {
            continue;
        }
        let a = &constraints[j];
        let dots: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| dots[i].is_negative()).collect();
        if neg.is_empty() {
            processed.push(j);
            for (i, t) in tight.iter_mut().enumerate() {
                if dots[i].is_zero() {
                    t.push(j);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| dots[i].is_positive()).collect();

        let mut new_rays = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<usize> = tight[p]
                    .iter()
                    .copied()
                    .filter(|t| tight[q].contains(t))
                    .collect();
                if k >= 2 {
                    let vecs: Vec<Vec<BigInt>> =
                        common.iter().map(|&t| constraints[t].clone()).collect();
                    if rational_rank(&vecs) != k - 2 {
                        continue;
                    }
                }
                let mut nr: Vec<BigInt> = (0..k)
                    .map(|i| &dots[p] * &rays[q][i] - &dots[q] * &rays[p][i])
                    .collect();
                primitivize(&mut nr);
                new_rays.push(nr);
            }
        }

        let mut kept_rays = Vec::new();
        for i in 0..rays.len() {
            if !dots[i].is_negative() {
                kept_rays.push(rays[i].clone());
            }
        }
        kept_rays.extend(new_rays);
        kept_rays.sort();
        kept_rays.dedup();
        processed.push(j);
        rays = kept_rays;
        tight = rays
            .iter()
            .map(|r| {
                processed
                    .iter()
                    .copied()
                    .filter(|&t| dot(&constraints[t], r).is_zero())
                    .collect()
            })
            .collect();
    }

    // back to ambient coordinates: x = y * B
    let ambient: Vec<Vec<BigInt>> = rays
        .iter()
        .map(|y| {
            (0..n)
                .map(|j| (0..k).map(|i| &y[i] * kernel.at(i, j)).sum())
                .collect()
        })
        .collect();
    Ok(Cone::new(n, ambient))
}

/// Gauss-Jordan inverse of a square rational matrix given as rows.
fn invert_rational(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let k = rows.len();
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k)
            .find(|&i| !a[i][col].is_zero())
            .expect("matrix certified invertible by rank test");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pv = a[col][col].clone();
        for j in 0..k {
            a[col][j] /= &pv;
            inv[col][j] /= &pv;
        }
        for i in 0..k {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..k {
                let s = &a[col][j] * &f;
                a[i][j] -= s;
                let s = &inv[col][j] * &f;
                inv[i][j] -= s;
            }
        }
    }
    inv
}

fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitivize(&mut out);
    out
}

/// Saturation of the row lattice of `m` inside `Z^n`: the sublattice
/// `span_Q(rows) ∩ Z^n`, as an HNF basis. Computed by a double kernel.
pub fn saturate_rows(m: &IntMat) -> IntMat {
    let complement = kernel_basis(&m.transpose());
    kernel_basis(&complement.transpose())
}

/// Is the cone generated by part of a basis of the ambient lattice?
/// True iff the rays are linearly independent and span a saturated
/// sublattice, decided by SNF of the ray matrix.
pub fn is_smooth_cone(c: &Cone, lattice_rank: usize) -> bool {
    if c.rays.is_empty() {
        return true;
    }
    if c.rays.len() > lattice_rank {
        return false;
    }
    let s = snf(&c.ray_matrix());
    let nonzero = s.d.iter().filter(|d| !d.is_zero()).count();
    nonzero == c.rays.len() && s.d.iter().all(|d| d.is_zero() || d.is_one())
}

/// All faces of the cone, each given by the subset of extreme rays it
/// contains. A subset is a face exactly when some supporting functional
/// vanishes on it and is strictly positive on the remaining rays, which is
/// an exact LP feasibility question. Includes the zero face and the cone
/// itself. Desk scale: ray count is capped.
pub fn faces(c: &Cone, cap: usize) -> Result<Vec<Cone>> {
    let m = c.rays.len();
    if m > cap {
        return Err(Error::CapExceeded {
            what: "face enumeration rays",
            limit: cap,
            needed: m,
        });
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << m) {
        let inside: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        let outside: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) == 0).collect();
        if supporting_functional_exists(c, &inside, &outside)? {
            let rays = inside.iter().map(|&i| c.rays[i].clone()).collect();
            out.push(Cone::new(c.ambient_rank, rays));
        }
    }
    out.sort_by_key(|f| (f.ray_count(), f.rays.clone()));
    Ok(out)
}

/// Does a functional with `l . r = 0` on `zero_set` and `l . r >= 1` on
/// `positive_set` exist?
fn supporting_functional_exists(
    c: &Cone,
    zero_set: &[usize],
    positive_set: &[usize],
) -> Result<bool> {
    let d = c.ambient_rank;
    // variables: l = u - w with u, w >= 0, plus one slack per strict row
    let nvars = 2 * d + positive_set.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for &i in zero_set {
        let mut row = vec![BigRational::zero(); nvars];
        for j in 0..d {
            let rj = BigRational::from_integer(c.rays[i][j].clone());
            row[j] = rj.clone();
            row[d + j] = -rj;
        }
        a.push(row);
        b.push(BigRational::zero());
    }
    for (s, &i) in positive_set.iter().enumerate() {
        let mut row = vec![BigRational::zero(); nvars];
        for j in 0..d {
            let rj = BigRational::from_integer(c.rays[i][j].clone());
            row[j] = rj.clone();
            row[d + j] = -rj;
        }
        row[2 * d + s] = -BigRational::one();
        a.push(row);
        b.push(BigRational::one());
    }
    Ok(feasible_eq_nonneg(&a, &b).is_some())
}

/// Smoothness of the toric orbit attached to a face: the image of the cone
/// in the quotient of the spanned lattice by the face's span must be
/// generated by part of a lattice basis. The zero face corresponds to the
/// most special point, the full cone to the dense orbit.
pub fn face_orbit_smooth(c: &Cone, face: &Cone) -> Result<bool> {
    if c.rays.is_empty() {
        return Ok(true);
    }
    let b_c = saturate_rows(&c.ray_matrix());
    let k = b_c.rows();
    let y_coords: Vec<Vec<BigInt>> = c
        .rays
        .iter()
        .map(|r| {
            express_in_hnf_basis(&b_c, r)
                .expect("rays lie in the saturated span lattice")
        })
        .collect();

    let mut face_idx = Vec::new();
    for fr in &face.rays {
        let pos = c.rays.iter().position(|r| r == fr).ok_or_else(|| {
            Error::ShapeMismatch("face ray is not a ray of the cone".into())
        })?;
        face_idx.push(pos);
    }

    if face_idx.len() == c.rays.len() {
        return Ok(true); // dense orbit
    }

    let face_rows: Vec<Vec<BigInt>> = face_idx.iter().map(|&i| y_coords[i].clone()).collect();
    let b_f = saturate_rows(&IntMat::from_rows(k, face_rows)?);
    let f = b_f.rows();
    let s = snf(&b_f);
    debug_assert!(s.d.iter().all(|d| d.is_one()), "face span lattice saturated");

    // z = y * v; the quotient lattice keeps coordinates f..k
    let mut projected: Vec<Vec<BigInt>> = Vec::new();
    for (i, y) in y_coords.iter().enumerate() {
        if face_idx.contains(&i) {
            continue;
        }
        let mut z = vec![BigInt::zero(); k];
        for (r, yr) in y.iter().enumerate() {
            if yr.is_zero() {
                continue;
            }
            for jc in 0..k {
                let t = yr * s.v.at(r, jc);
                z[jc] += t;
            }
        }
        let mut tail: Vec<BigInt> = z[f..].to_vec();
        debug_assert!(
            !tail.iter().all(|x| x.is_zero()),
            "non-face ray projects to zero"
        );
        primitivize(&mut tail);
        projected.push(tail);
    }
    projected.sort();
    projected.dedup();

    // drop projections that are nonnegative combinations of the others
    let mut extreme = Vec::new();
    for (i, p) in projected.iter().enumerate() {
        let others: Vec<Vec<BigRational>> = projected
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| to_rational(q))
            .collect();
        if !in_nonneg_span(&to_rational(p), &others)? {
            extreme.push(p.clone());
        }
    }
    Ok(is_smooth_cone(&Cone::new(k - f, extreme), k - f))
}
