//! Slow independent oracles.
//!
//! Each function here recomputes a quantity by a route deliberately
//! different from the main implementation: invariant factors by gcds of
//! minors instead of elimination with transforms, extreme rays by
//! Fourier-Motzkin elimination with history vectors instead of double
//! description, admissibility by exhaustive support enumeration instead of
//! the codimension shortcut. They back the `--oracle` mode of the CLI and
//! the cross-check test suites.

use crate::abelian::{subgroup_from, CharacterSubgroup, FgAbelianGroup, IntMat};
use crate::error::Result;
use crate::polyhedral::relint_contains_zero;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::collections::{BTreeSet, HashMap};

/// Invariant factors via determinantal divisors: `d_k = D_k / D_{k-1}` where
/// `D_k` is the gcd of all `k x k` minors. Independent of the elimination
/// code path.
pub fn snf_invariant_factors_by_minors(m: &IntMat) -> Vec<BigInt> {
    let n = m.rows().min(m.cols());
    let mut out = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 1..=n {
        let mut g = BigInt::zero();
        for rows in subsets_of_size(m.rows(), k) {
            for cols in subsets_of_size(m.cols(), k) {
                let det = minor_det(m, &rows, &cols);
                g = g.gcd(&det);
                if g.is_one() {
                    break;
                }
            }
            if g.is_one() {
                break;
            }
        }
        if g.is_zero() {
            // all k x k minors vanish: this and the remaining factors are 0
            for _ in k..=n {
                out.push(BigInt::zero());
            }
            return out;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

fn minor_det(m: &IntMat, rows: &[usize], cols: &[usize]) -> BigInt {
    // cofactor expansion; minors are at most 5x5 in the oracle suites
    let k = rows.len();
    if k == 0 {
        return BigInt::one();
    }
    if k == 1 {
        return m.at(rows[0], cols[0]).clone();
    }
    let mut det = BigInt::zero();
    for (i, &r) in rows.iter().enumerate() {
        if m.at(r, cols[0]).is_zero() {
            continue;
        }
        let sub_rows: Vec<usize> = rows
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, &x)| x)
            .collect();
        let cofactor = minor_det(m, &sub_rows, &cols[1..]);
        let term = m.at(r, cols[0]) * cofactor;
        if i % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Extreme rays of `{ x >= 0 : x * weights = 0 }` by Fourier-Motzkin
/// elimination with history vectors. `weights` has one row per coordinate.
/// Returns primitive rays, lexicographically sorted.
pub fn extreme_rays_fourier_motzkin(weights: &IntMat) -> Vec<Vec<BigInt>> {
    let n = weights.rows();
    let p = weights.cols();

    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
    struct Row {
        coeff: Vec<BigInt>,
        history: Vec<BigInt>,
    }

    let mut rows: Vec<Row> = (0..n)
        .map(|i| {
            let mut history = vec![BigInt::zero(); n];
            history[i] = BigInt::one();
            Row {
                coeff: weights.row(i).to_vec(),
                history,
            }
        })
        .collect();

    for var in 0..p {
        let mut next: Vec<Row> = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for r in rows {
            if r.coeff[var].is_zero() {
                next.push(r);
            } else if r.coeff[var].is_positive() {
                pos.push(r);
            } else {
                neg.push(r);
            }
        }
        for pr in &pos {
            for nr in &neg {
                let a = pr.coeff[var].clone();
                let b = -nr.coeff[var].clone();
                let mut coeff: Vec<BigInt> = (0..p)
                    .map(|j| &b * &pr.coeff[j] + &a * &nr.coeff[j])
                    .collect();
                let mut history: Vec<BigInt> = (0..n)
                    .map(|j| &b * &pr.history[j] + &a * &nr.history[j])
                    .collect();
                let mut g = BigInt::zero();
                for x in coeff.iter().chain(history.iter()) {
                    g = g.gcd(x);
                }
                if !g.is_zero() && !g.is_one() {
                    for x in coeff.iter_mut().chain(history.iter_mut()) {
                        *x = &*x / &g;
                    }
                }
                next.push(Row { coeff, history });
            }
        }
        next.sort();
        next.dedup();
        rows = next;
    }

    // every remaining row is 0 >= 0; histories are nonnegative combinations
    // annihilating the weights
    let mut candidates: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| {
            debug_assert!(r.coeff.iter().all(|x| x.is_zero()));
            let mut h = r.history;
            let mut g = BigInt::zero();
            for x in &h {
                g = g.gcd(x);
            }
            if !g.is_zero() && !g.is_one() {
                for x in h.iter_mut() {
                    *x = &*x / &g;
                }
            }
            h
        })
        .filter(|h| h.iter().any(|x| !x.is_zero()))
        .collect();
    candidates.sort();
    candidates.dedup();

    // extreme rays are exactly the minimal-support elements
    let supports: Vec<BTreeSet<usize>> = candidates
        .iter()
        .map(|h| (0..n).filter(|&i| !h[i].is_zero()).collect())
        .collect();
    let minimal: Vec<Vec<BigInt>> = candidates
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !supports
                .iter()
                .enumerate()
                .any(|(j, s)| j != *i && s.is_subset(&supports[*i]) && s != &supports[*i])
        })
        .map(|(_, h)| h.clone())
        .collect();
    minimal
}

/// Brute-force admissibility: enumerate every coordinate support of the
/// fixed-weight module, classify it as good or bad, and check that the bad
/// locus has codimension at least two. `fixed` lists (weight coordinates in
/// the ambient group, free part, multiplicity).
pub fn admissible_bruteforce(
    ambient: &FgAbelianGroup,
    target: &CharacterSubgroup,
    fixed: &[(Vec<BigInt>, Vec<BigRational>, usize)],
) -> Result<bool> {
    let dim: usize = fixed.iter().map(|(_, _, m)| m).sum();
    assert!(dim <= 20, "oracle is exponential in the module dimension");
    // coordinate -> weight index
    let mut label = Vec::with_capacity(dim);
    for (i, (_, _, mult)) in fixed.iter().enumerate() {
        for _ in 0..*mult {
            label.push(i);
        }
    }
    let mut good_cache: HashMap<u64, bool> = HashMap::new();
    let mut min_bad_codim = usize::MAX;
    for mask in 0u64..(1u64 << dim) {
        let mut weight_mask = 0u64;
        for (c, &l) in label.iter().enumerate() {
            if mask & (1 << c) != 0 {
                weight_mask |= 1 << l;
            }
        }
        let good = match good_cache.get(&weight_mask) {
            Some(&g) => g,
            None => {
                let indices: Vec<usize> = (0..fixed.len())
                    .filter(|&i| weight_mask & (1 << i) != 0)
                    .collect();
                let gens: Vec<Vec<BigInt>> =
                    indices.iter().map(|&i| fixed[i].0.clone()).collect();
                let frees: Vec<Vec<BigRational>> =
                    indices.iter().map(|&i| fixed[i].1.clone()).collect();
                let generates = subgroup_from(&gens, ambient)? == *target;
                let closed = relint_contains_zero(&frees)?;
                let g = generates && closed;
                good_cache.insert(weight_mask, g);
                g
            }
        };
        if !good {
            let codim = dim - (mask.count_ones() as usize);
            min_bad_codim = min_bad_codim.min(codim);
        }
    }
    Ok(min_bad_codim >= 2)
}
