use super::poly::{monomials_of_degree, Monomial, Poly};
use super::ring::{invariant_basis, reduce_row, rref_rows, trivial_character, GroupAction};
use crate::abelian::FgAbelianGroup;
use crate::cyclotomic::{CycMatrix, Cyclotomic};
use crate::error::Result;
use crate::group::{Abelianization, Character, FiniteGroup};
use num::BigInt;
use std::collections::BTreeMap;

/// A minimal generator of a (semi)invariant ring: the polynomial, its
/// polynomial degree and its class-group degree.
#[derive(Debug, Clone)]
pub struct RingGenerator {
    pub poly: Poly,
    pub degree: u32,
    pub cl_degree: Vec<BigInt>,
}

/// A formal polynomial in generator symbols `y_0..y_{m-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalPoly {
    pub terms: Vec<(Vec<u32>, Cyclotomic)>,
}

impl FormalPoly {
    /// Evaluates the formal polynomial on the generator list.
    pub fn substitute(&self, gens: &[RingGenerator]) -> Result<Poly> {
        let (order, nvars) = match gens.first() {
            Some(g) => (g.poly.order(), g.poly.nvars()),
            None => (1, 0),
        };
        let mut out = Poly::zero(order, nvars);
        for (expts, coeff) in &self.terms {
            let mut term = Poly::constant(order, nvars, coeff.clone());
            for (i, &e) in expts.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&gens[i].poly.pow(e)?)?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Degree under the grading induced by the generator degrees.
    pub fn induced_degree(&self, gens: &[RingGenerator]) -> u32 {
        self.terms
            .first()
            .map(|(e, _)| e.iter().zip(gens).map(|(&x, g)| x * g.degree).sum())
            .unwrap_or(0)
    }
}

/// Generators with class-group degrees, relations up to a bound, and the
/// completeness flag. The grading group is the class group of the stratum
/// (trivial for plain invariant rings).
#[derive(Debug, Clone)]
pub struct GradedRingPresentation {
    pub variables: usize,
    pub class_group: FgAbelianGroup,
    pub generators: Vec<RingGenerator>,
    pub relations: Vec<FormalPoly>,
    pub degree_bound: u32,
    pub relation_bound: u32,
    pub complete_generators: bool,
    pub certified: bool,
}

struct CharClass {
    coords: Vec<BigInt>,
    character: Character,
}

/// Degree-by-degree minimal generators, graded by the given characters of
/// the averaging group. Within each degree and character the choice is
/// canonicalized by reduced row echelon form under graded-lex order.
fn generators_by_characters(
    action: &GroupAction,
    characters: &[CharClass],
    grading: &FgAbelianGroup,
    bound: u32,
) -> Result<Vec<RingGenerator>> {
    let nvars = action.nvars();
    let order = action.order();
    // subalgebra spans: degree -> char coords -> RREF rows
    let mut spans: Vec<BTreeMap<Vec<BigInt>, Vec<Vec<Cyclotomic>>>> = Vec::new();
    let mut deg0 = BTreeMap::new();
    let trivial_coords = grading.reduce(&vec![BigInt::from(0); grading.coord_len()])?;
    deg0.insert(trivial_coords.clone(), vec![vec![Cyclotomic::one(order)]]);
    spans.push(deg0);

    let mut gens: Vec<RingGenerator> = Vec::new();

    for d in 1..=bound {
        let monomials = monomials_of_degree(nvars, d);
        let index: BTreeMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let width = monomials.len();

        // products of already-found generators, per character
        let mut products: BTreeMap<Vec<BigInt>, Vec<Vec<Cyclotomic>>> = BTreeMap::new();
        for g in &gens {
            if g.degree > d {
                continue;
            }
            let lower = (d - g.degree) as usize;
            for (lower_coords, rows) in &spans[lower] {
                let sum: Vec<BigInt> = g
                    .cl_degree
                    .iter()
                    .zip(lower_coords)
                    .map(|(a, b)| a + b)
                    .collect();
                let target = grading.reduce(&sum)?;
                let lower_monos = monomials_of_degree(nvars, d - g.degree);
                for row in rows {
                    let p = Poly::from_row(order, nvars, &lower_monos, row);
                    let prod = g.poly.mul(&p)?;
                    products
                        .entry(target.clone())
                        .or_default()
                        .push(prod.to_row(&index, width));
                }
            }
        }
        for rows in products.values_mut() {
            *rows = rref_rows(order, std::mem::take(rows))?;
        }

        // new generators: semiinvariant basis modulo the product span
        let mut span_d: BTreeMap<Vec<BigInt>, Vec<Vec<Cyclotomic>>> = products.clone();
        for cc in characters {
            let basis = invariant_basis(action, &cc.character, d)?;
            if basis.is_empty() {
                continue;
            }
            let prod_rows = products.get(&cc.coords).cloned().unwrap_or_default();
            let mut new_rows = Vec::new();
            for b in &basis {
                let mut row = b.to_row(&index, width);
                reduce_row(&prod_rows, &mut row)?;
                reduce_row(&new_rows, &mut row)?;
                if row.iter().any(|c| !c.is_zero()) {
                    new_rows.push(row);
                }
            }
            if new_rows.is_empty() {
                continue;
            }
            let canonical = rref_rows(order, new_rows)?;
            for row in &canonical {
                gens.push(RingGenerator {
                    poly: Poly::from_row(order, nvars, &monomials, row),
                    degree: d,
                    cl_degree: cc.coords.clone(),
                });
            }
            let entry = span_d.entry(cc.coords.clone()).or_default();
            let mut all = entry.clone();
            all.extend(canonical);
            *entry = rref_rows(order, all)?;
        }
        spans.push(span_d);
    }
    Ok(gens)
}

/// Minimal generators of the invariant ring `K[V]^G`, degree by degree up
/// to the bound (the order of the group is the Noether bound).
pub fn minimal_generators(group: &FiniteGroup, bound: u32) -> Result<Vec<RingGenerator>> {
    let action = GroupAction::new(group, group.cyclotomic_order())?;
    let trivial = CharClass {
        coords: Vec::new(),
        character: trivial_character(group.order(), group.cyclotomic_order()),
    };
    generators_by_characters(&action, &[trivial], &FgAbelianGroup::trivial(), bound)
}

/// Minimal generators of `K[V]^S` for `S = [W, W]`, graded by the
/// characters of `Q = W/S`: every generator is chi-homogeneous for exactly
/// one character, and the generator count per degree is minimal.
pub fn minimal_generators_graded(
    weyl: &FiniteGroup,
    ab: &Abelianization,
    bound: u32,
) -> Result<Vec<RingGenerator>> {
    let action = GroupAction::new(weyl, ab.value_order)?;
    let classes: Vec<CharClass> = ab
        .characters
        .iter()
        .map(|c| CharClass {
            coords: c.cl_coords.clone(),
            character: c.clone(),
        })
        .collect();
    generators_by_characters(&action, &classes, &ab.group, bound)
}

/// Dimensions of the subalgebra generated by the given generators, degree
/// by degree; used to cross-check generator completeness against the
/// Molien series.
pub fn subalgebra_dims(gens: &[RingGenerator], nvars: usize, up_to: u32) -> Result<Vec<usize>> {
    let order = gens.first().map_or(1, |g| g.poly.order());
    let mut spans: Vec<Vec<Vec<Cyclotomic>>> = vec![vec![vec![Cyclotomic::one(order)]]];
    let mut dims = vec![1usize];
    for d in 1..=up_to {
        let monomials = monomials_of_degree(nvars, d);
        let index: BTreeMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut rows = Vec::new();
        for g in gens {
            if g.degree > d {
                continue;
            }
            let lower_monos = monomials_of_degree(nvars, d - g.degree);
            for row in &spans[(d - g.degree) as usize] {
                let p = Poly::from_row(order, nvars, &lower_monos, row);
                let prod = g.poly.mul(&p)?;
                rows.push(prod.to_row(&index, monomials.len()));
            }
        }
        let r = rref_rows(order, rows)?;
        dims.push(r.len());
        spans.push(r);
    }
    Ok(dims)
}

/// The linear space of formal polynomials in the generator symbols that
/// vanish under substitution, degree by degree up to the bound, with
/// multiples of lower-degree relations quotiented out. Exact linear
/// algebra; nothing is claimed beyond the bound.
pub fn relations(gens: &[RingGenerator], rel_bound: u32) -> Result<Vec<FormalPoly>> {
    let (order, nvars) = match gens.first() {
        Some(g) => (g.poly.order(), g.poly.nvars()),
        None => return Ok(Vec::new()),
    };
    let mut found: Vec<FormalPoly> = Vec::new();
    for d in 1..=rel_bound {
        let formals = formal_monomials_of_induced_degree(gens, d);
        if formals.is_empty() {
            continue;
        }
        let formal_index: BTreeMap<Vec<u32>, usize> = formals
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();

        // substitution matrix: formal monomial -> polynomial of degree d
        let monomials = monomials_of_degree(nvars, d);
        let index: BTreeMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut rows = Vec::with_capacity(formals.len());
        for e in &formals {
            let mut p = Poly::one(order, nvars);
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    p = p.mul(&gens[i].poly.pow(x)?)?;
                }
            }
            rows.push(p.to_row(&index, monomials.len()));
        }
        let subst = CycMatrix::from_rows(order, rows)?;
        // left kernel: c with c * subst = 0
        let kernel = subst.transpose().kernel()?;
        if kernel.is_empty() {
            continue;
        }

        // span of (formal monomial) * (lower-degree relation)
        let mut lower_rows: Vec<Vec<Cyclotomic>> = Vec::new();
        for rel in &found {
            let rel_deg = rel.induced_degree(gens);
            if rel_deg >= d {
                continue;
            }
            for shift in formal_monomials_of_induced_degree(gens, d - rel_deg) {
                let mut row = vec![Cyclotomic::zero(order); formals.len()];
                for (e, c) in &rel.terms {
                    let prod: Vec<u32> =
                        e.iter().zip(&shift).map(|(a, b)| a + b).collect();
                    row[formal_index[&prod]] = c.clone();
                }
                lower_rows.push(row);
            }
        }
        let lower = rref_rows(order, lower_rows)?;

        let mut new_rows = Vec::new();
        for k in kernel {
            let mut row = k;
            reduce_row(&lower, &mut row)?;
            reduce_row(&new_rows, &mut row)?;
            if row.iter().any(|c| !c.is_zero()) {
                new_rows.push(row);
            }
        }
        for row in rref_rows(order, new_rows)? {
            let terms: Vec<(Vec<u32>, Cyclotomic)> = row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (formals[i].clone(), c.clone()))
                .collect();
            found.push(FormalPoly { terms });
        }
    }
    Ok(found)
}

/// Exponent vectors over the generators with weighted degree exactly `d`,
/// in a fixed deterministic order.
fn formal_monomials_of_induced_degree(gens: &[RingGenerator], d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; gens.len()];
    fn rec(
        gens: &[RingGenerator],
        i: usize,
        remaining: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == gens.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let step = gens[i].degree;
        let max = remaining / step;
        for e in (0..=max).rev() {
            current[i] = e;
            rec(gens, i + 1, remaining - e * step, current, out);
        }
        current[i] = 0;
    }
    if gens.is_empty() {
        return out;
    }
    rec(gens, 0, d, &mut current, &mut out);
    out
}

#[derive(Debug, Clone, Copy)]
pub struct CoxBounds {
    /// generator degree bound; defaults to the order of the commutant
    /// (the Noether bound)
    pub max_degree: Option<u32>,
    /// relation degree bound; defaults to twice the maximal generator degree
    pub rel_degree: Option<u32>,
}

impl Default for CoxBounds {
    fn default() -> Self {
        CoxBounds {
            max_degree: None,
            rel_degree: None,
        }
    }
}

/// Class-group-graded Cox presentation for a stratum in the finite regime:
/// minimal generators of `K[V^H]^S` for `S = [W, W]` with their
/// `X(Q)`-degrees, relations up to the bound, and the class group
/// `Cl = X(Q) ≅ Q`.
pub fn cox_presentation_finite(
    weyl: &FiniteGroup,
    ab: &Abelianization,
    bounds: CoxBounds,
    admissible: bool,
) -> Result<GradedRingPresentation> {
    let s_order = weyl.commutator_indices().len() as u32;
    let degree_bound = bounds.max_degree.unwrap_or(s_order.max(1));
    let generators = minimal_generators_graded(weyl, ab, degree_bound)?;
    let max_gen_degree = generators.iter().map(|g| g.degree).max().unwrap_or(0);
    let relation_bound = bounds.rel_degree.unwrap_or(2 * max_gen_degree);
    let relations = relations(&generators, relation_bound)?;
    Ok(GradedRingPresentation {
        variables: weyl.dim(),
        class_group: ab.group.clone(),
        generators,
        relations,
        degree_bound,
        relation_bound,
        complete_generators: degree_bound >= s_order,
        certified: admissible,
    })
}
