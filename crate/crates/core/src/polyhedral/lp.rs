use crate::error::{Error, Result};
use num::{BigRational, One, Signed, Zero};

/// Phase-I exact simplex: decides whether `{ x >= 0 : a x = b }` is
/// nonempty and returns a feasible point. Bland's rule, so no cycling and
/// no tolerances; every comparison is an exact rational decision.
pub fn feasible_eq_nonneg(
    a: &[Vec<BigRational>],
    b: &[BigRational],
) -> Option<Vec<BigRational>> {
    let m = a.len();
    assert_eq!(m, b.len(), "row/rhs count mismatch");
    let n = a.first().map_or(0, |r| r.len());
    if m == 0 {
        return Some(vec![BigRational::zero(); n]);
    }

    // tableau rows: [structural | artificial | rhs], rhs normalized >= 0
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row = Vec::with_capacity(width);
        let flip = b[i].is_negative();
        for j in 0..n {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    // objective: minimize sum of artificials; reduced-cost row starts as
    // -(sum of constraint rows) on structural columns
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..n {
            let v = row[j].clone();
            obj[j] -= v;
        }
        let rhs = row[width - 1].clone();
        obj[width - 1] -= rhs;
    }

    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // Bland: entering column = smallest index with negative reduced cost
        let entering = (0..n + m).find(|&j| obj[j].is_negative());
        let entering = match entering {
            Some(j) => j,
            None => break,
        };
        // ratio test; ties broken by smallest basic variable index (Bland)
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[entering].is_positive() {
                let ratio = &row[width - 1] / &row[entering];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let (leaving, _) = leave.expect("phase-I objective is bounded below");
        // pivot
        let piv = t[leaving][entering].clone();
        for x in &mut t[leaving] {
            *x /= &piv;
        }
        for i in 0..m {
            if i == leaving || t[i][entering].is_zero() {
                continue;
            }
            let f = t[i][entering].clone();
            for j in 0..width {
                let s = &t[leaving][j] * &f;
                t[i][j] -= s;
            }
        }
        if !obj[entering].is_zero() {
            let f = obj[entering].clone();
            for j in 0..width {
                let s = &t[leaving][j] * &f;
                obj[j] -= s;
            }
        }
        basis[leaving] = entering;
    }

    // feasible iff the artificial objective reached zero
    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        } else {
            debug_assert!(t[i][width - 1].is_zero());
        }
    }
    Some(x)
}

fn check_common_dim(vectors: &[Vec<BigRational>]) -> Result<usize> {
    let d = vectors.first().map_or(0, |v| v.len());
    for v in vectors {
        if v.len() != d {
            return Err(Error::CoordinateMismatch {
                expected: d,
                got: v.len(),
            });
        }
    }
    Ok(d)
}

/// Is zero in the relative interior of the convex hull of the given
/// vectors? Equivalently: do strictly positive rationals `c_i` with
/// `sum c_i v_i = 0` exist? The empty list returns `true` by convention,
/// so the zero module is handled uniformly.
pub fn relint_contains_zero(vectors: &[Vec<BigRational>]) -> Result<bool> {
    if vectors.is_empty() {
        return Ok(true);
    }
    let d = check_common_dim(vectors)?;
    // substitute c = 1 + x, x >= 0:  sum x_i v_i = -sum v_i
    let n = vectors.len();
    let mut a = vec![vec![BigRational::zero(); n]; d];
    let mut b = vec![BigRational::zero(); d];
    for (i, v) in vectors.iter().enumerate() {
        for r in 0..d {
            a[r][i] = v[r].clone();
            let s = v[r].clone();
            b[r] -= s;
        }
    }
    Ok(feasible_eq_nonneg(&a, &b).is_some())
}

/// Does a nonnegative combination with `c_forced >= 1` summing to zero
/// exist? Used to compute the canonical maximal support of a stratum.
pub fn positive_combination_zero_with(vectors: &[Vec<BigRational>], forced: usize) -> Result<bool> {
    let d = check_common_dim(vectors)?;
    let n = vectors.len();
    // c_forced = 1 + x_forced, others c_i = x_i >= 0
    let mut a = vec![vec![BigRational::zero(); n]; d];
    let mut b = vec![BigRational::zero(); d];
    for (i, v) in vectors.iter().enumerate() {
        for r in 0..d {
            a[r][i] = v[r].clone();
        }
    }
    for r in 0..d {
        let s = vectors[forced][r].clone();
        b[r] -= s;
    }
    Ok(feasible_eq_nonneg(&a, &b).is_some())
}

/// Does `target` lie in the nonnegative span of `vectors`?
pub fn in_nonneg_span(target: &[BigRational], vectors: &[Vec<BigRational>]) -> Result<bool> {
    let d = target.len();
    for v in vectors {
        if v.len() != d {
            return Err(Error::CoordinateMismatch {
                expected: d,
                got: v.len(),
            });
        }
    }
    let n = vectors.len();
    let mut a = vec![vec![BigRational::zero(); n]; d];
    for (i, v) in vectors.iter().enumerate() {
        for r in 0..d {
            a[r][i] = v[r].clone();
        }
    }
    let b: Vec<BigRational> = target.to_vec();
    Ok(feasible_eq_nonneg(&a, &b).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    fn vs(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn symmetric_pair_is_balanced() {
        assert!(relint_contains_zero(&vs(&[&[1], &[-1]])).unwrap());
    }

    #[test]
    fn all_positive_is_not() {
        assert!(!relint_contains_zero(&vs(&[&[1], &[2]])).unwrap());
    }

    #[test]
    fn barycentric_triangle() {
        assert!(relint_contains_zero(&vs(&[&[1, 0], &[0, 1], &[-1, -1]])).unwrap());
    }

    #[test]
    fn empty_list_true_by_convention() {
        assert!(relint_contains_zero(&[]).unwrap());
    }

    #[test]
    fn zero_vector_alone_is_balanced() {
        assert!(relint_contains_zero(&vs(&[&[0, 0]])).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let bad = vec![vec![q(1)], vec![q(1), q(2)]];
        assert!(relint_contains_zero(&bad).is_err());
    }

    #[test]
    fn union_of_balanced_sets_is_balanced_and_scale_invariant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut found = 0;
        while found < 40 {
            let d = rng.gen_range(1..=3usize);
            let n = rng.gen_range(1..=4usize);
            let s: Vec<Vec<BigRational>> = (0..n)
                .map(|_| (0..d).map(|_| q(rng.gen_range(-3i64..=3))).collect())
                .collect();
            let t: Vec<Vec<BigRational>> = (0..rng.gen_range(1..=4usize))
                .map(|_| (0..d).map(|_| q(rng.gen_range(-3i64..=3))).collect())
                .collect();
            if !(relint_contains_zero(&s).unwrap() && relint_contains_zero(&t).unwrap()) {
                continue;
            }
            found += 1;
            let mut both = s.clone();
            both.extend(t.clone());
            assert!(relint_contains_zero(&both).unwrap());

            // permuting and positively scaling entries changes nothing
            let mut scaled: Vec<Vec<BigRational>> = s
                .iter()
                .map(|v| {
                    let c = BigRational::new(
                        BigInt::from(rng.gen_range(1i64..=5)),
                        BigInt::from(rng.gen_range(1i64..=5)),
                    );
                    v.iter().map(|x| x * &c).collect()
                })
                .collect();
            scaled.reverse();
            assert!(relint_contains_zero(&scaled).unwrap());
        }
    }

    #[test]
    fn forced_coefficient_variant() {
        let v = vs(&[&[1], &[-1], &[2]]);
        assert!(positive_combination_zero_with(&v, 0).unwrap());
        assert!(positive_combination_zero_with(&v, 2).unwrap());
        let w = vs(&[&[1], &[2]]);
        assert!(!positive_combination_zero_with(&w, 0).unwrap());
    }

    #[test]
    fn nonneg_span_membership() {
        let rays = vs(&[&[1, 0], &[1, 1]]);
        assert!(in_nonneg_span(&[q(2), q(1)], &rays).unwrap());
        assert!(!in_nonneg_span(&[q(0), q(1)], &rays).unwrap());
    }
}
