use super::poly::{monomials_of_degree, Monomial, Poly};
use crate::cyclotomic::{CycMatrix, Cyclotomic};
use crate::error::Result;
use crate::group::{Character, FiniteGroup};
use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;

/// A finite group acting on polynomials: `(g . f)(v) = f(g^{-1} v)`.
/// Substitution data is precomputed per element at a common cyclotomic
/// order, so characters of a larger order can be mixed in.
pub struct GroupAction {
    order: u32,
    nvars: usize,
    group_order: usize,
    inverse_of: Vec<usize>,
    subs: Vec<Vec<Poly>>,
}

impl GroupAction {
    pub fn new(group: &FiniteGroup, target_order: u32) -> Result<GroupAction> {
        let nvars = group.dim();
        let mut subs = Vec::with_capacity(group.order());
        for i in 0..group.order() {
            let ginv: CycMatrix = group.element(group.inv_idx(i)).lift(target_order)?;
            let mut rows = Vec::with_capacity(nvars);
            for r in 0..nvars {
                let mut p = Poly::zero(target_order, nvars);
                for c in 0..nvars {
                    let coeff = ginv.at(r, c);
                    if !coeff.is_zero() {
                        let term = Poly::variable(target_order, nvars, c)
                            .scale(coeff)
                            .expect("same order");
                        p = p.add(&term)?;
                    }
                }
                rows.push(p);
            }
            subs.push(rows);
        }
        Ok(GroupAction {
            order: target_order,
            nvars,
            group_order: group.order(),
            inverse_of: (0..group.order()).map(|i| group.inv_idx(i)).collect(),
            subs,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn act(&self, element: usize, f: &Poly) -> Result<Poly> {
        f.substitute_linear(&self.subs[element])
    }
}

/// The trivial character at a given order, usable with any action.
pub fn trivial_character(group_order: usize, order: u32) -> Character {
    Character {
        cl_coords: Vec::new(),
        values: vec![Cyclotomic::one(order); group_order],
    }
}

/// Character-twisted Reynolds operator
/// `f -> (1/|G|) sum_g chi(g)^{-1} (g . f)`; idempotent on its image, which
/// consists of chi-semiinvariants.
pub fn reynolds(action: &GroupAction, chi: &Character, f: &Poly) -> Result<Poly> {
    let mut sum = Poly::zero(action.order, action.nvars);
    for g in 0..action.group_order {
        let moved = action.act(g, f)?;
        // chi(g)^{-1} = chi(g^{-1})
        let coeff = chi.values[action.inverse_of[g]].lift(action.order)?;
        sum = sum.add(&moved.scale(&coeff)?)?;
    }
    let inv_order = BigRational::new(BigInt::one(), BigInt::from(action.group_order as i64));
    Ok(sum.scale_rational(&inv_order))
}

/// Canonical basis of the degree-`d` chi-semiinvariants: reduced row
/// echelon form (graded-lex pivots) of the Reynolds images of all degree-`d`
/// monomials.
pub fn invariant_basis(action: &GroupAction, chi: &Character, d: u32) -> Result<Vec<Poly>> {
    let monomials = monomials_of_degree(action.nvars, d);
    let index: BTreeMap<Monomial, usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let mut rows = Vec::new();
    for m in &monomials {
        let f = Poly::from_term(action.order, action.nvars, m.clone(), Cyclotomic::one(action.order));
        let r = reynolds(action, chi, &f)?;
        if !r.is_zero() {
            rows.push(r.to_row(&index, monomials.len()));
        }
    }
    let reduced = rref_rows(action.order, rows)?;
    Ok(reduced
        .into_iter()
        .map(|row| Poly::from_row(action.order, action.nvars, &monomials, &row))
        .collect())
}

/// RREF over the cyclotomic field; returns the nonzero rows with unit
/// pivots, in pivot order.
pub(crate) fn rref_rows(order: u32, rows: Vec<Vec<Cyclotomic>>) -> Result<Vec<Vec<Cyclotomic>>> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let m = CycMatrix::from_rows(order, rows)?;
    let (r, pivots) = m.rref()?;
    Ok((0..pivots.len()).map(|i| r.row(i).to_vec()).collect())
}

/// Reduce a row against RREF rows (pivot columns assumed unit).
pub(crate) fn reduce_row(
    rref: &[Vec<Cyclotomic>],
    row: &mut Vec<Cyclotomic>,
) -> Result<()> {
    for basis_row in rref {
        let pivot = match basis_row.iter().position(|c| !c.is_zero()) {
            Some(p) => p,
            None => continue,
        };
        let c = row[pivot].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..row.len() {
            let s = basis_row[j].mul(&c)?;
            row[j] = row[j].sub(&s)?;
        }
    }
    Ok(())
}

/// Molien series coefficients `c_0..c_up_to`:
/// `(1/|G|) sum_g 1/det(1 - t g)`, expanded exactly. `c_d` is the dimension
/// of the degree-`d` invariants.
pub fn molien_series(group: &FiniteGroup, up_to: u32) -> Result<Vec<BigInt>> {
    let d = up_to as usize;
    let order = group.cyclotomic_order();
    let mut total = vec![BigRational::zero(); d + 1];
    let mut acc = vec![Cyclotomic::zero(order); d + 1];
    for g in 0..group.order() {
        let det = det_one_minus_tg(group, g)?;
        let inv = series_inverse(&det, d, order)?;
        for (i, c) in inv.iter().enumerate() {
            acc[i] = acc[i].add(c)?;
        }
    }
    let n = BigRational::from_integer(BigInt::from(group.order() as i64));
    for i in 0..=d {
        let v = acc[i]
            .to_rational()
            .expect("Molien coefficients are rational");
        total[i] = v / &n;
    }
    let mut out = Vec::with_capacity(d + 1);
    for t in total {
        assert!(t.is_integer(), "Molien coefficients are integers");
        out.push(t.to_integer());
    }
    Ok(out)
}

/// Coefficients of `det(1 - t g)` via Newton's identities on the power
/// traces; degree equals the matrix dimension.
fn det_one_minus_tg(group: &FiniteGroup, g: usize) -> Result<Vec<Cyclotomic>> {
    let order = group.cyclotomic_order();
    let n = group.dim();
    // power sums p_j = tr(g^j)
    let mut traces = Vec::with_capacity(n);
    let mut power = group.element(g).clone();
    for _ in 0..n {
        let mut tr = Cyclotomic::zero(order);
        for i in 0..n {
            tr = tr.add(power.at(i, i))?;
        }
        traces.push(tr);
        power = power.mul(group.element(g))?;
    }
    // elementary symmetric functions: k e_k = sum (-1)^{i-1} e_{k-i} p_i
    let mut e = vec![Cyclotomic::one(order)];
    for k in 1..=n {
        let mut sum = Cyclotomic::zero(order);
        for i in 1..=k {
            let term = e[k - i].mul(&traces[i - 1])?;
            if i % 2 == 1 {
                sum = sum.add(&term)?;
            } else {
                sum = sum.sub(&term)?;
            }
        }
        let kk = BigRational::new(BigInt::one(), BigInt::from(k as i64));
        e.push(sum.scale(&kk));
    }
    // det(1 - t g) = sum_k (-1)^k e_k t^k
    let mut det = Vec::with_capacity(n + 1);
    for (k, ek) in e.into_iter().enumerate() {
        det.push(if k % 2 == 0 { ek } else { ek.neg() });
    }
    Ok(det)
}

/// Inverse of a power series with constant term 1, truncated at `t^d`.
fn series_inverse(p: &[Cyclotomic], d: usize, order: u32) -> Result<Vec<Cyclotomic>> {
    assert!(p[0].is_one(), "series inversion needs constant term 1");
    let mut q = vec![Cyclotomic::zero(order); d + 1];
    q[0] = Cyclotomic::one(order);
    for k in 1..=d {
        let mut sum = Cyclotomic::zero(order);
        for i in 1..=k.min(p.len() - 1) {
            let term = p[i].mul(&q[k - i])?;
            sum = sum.add(&term)?;
        }
        q[k] = sum.neg();
    }
    Ok(q)
}
