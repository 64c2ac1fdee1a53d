use super::engine::{Abelianization, FiniteGroup};
use super::subspace::Subspace;
use crate::abelian::FgAbelianGroup;
use crate::cyclotomic::{CycMatrix, Cyclotomic};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy)]
pub struct StrataOptions {
    pub arrangement_cap: usize,
    pub cyclotomic_ceiling: u32,
}

impl Default for StrataOptions {
    fn default() -> Self {
        StrataOptions {
            arrangement_cap: super::DEFAULT_ARRANGEMENT_CAP,
            cyclotomic_ceiling: crate::cyclotomic::DEFAULT_CYCLOTOMIC_CEILING,
        }
    }
}

/// One Luna stratum of a finite matrix group action: the isotropy class
/// representative `H`, its fixed space `V^H`, the group `W = N_G(H)/H`
/// acting faithfully on it, the pseudoreflection-based admissibility
/// verdict and the class group `X(Q)` for `Q = W/[W,W]`.
#[derive(Debug, Clone)]
pub struct FiniteStratum {
    pub isotropy_indices: BTreeSet<usize>,
    pub isotropy: FiniteGroup,
    pub fixed_space: Subspace,
    pub weyl: FiniteGroup,
    pub admissible: bool,
    pub pseudoreflection_witness: Option<CycMatrix>,
    pub class_group: FgAbelianGroup,
    pub weyl_abelianization: Abelianization,
    /// an explicit point of `V^H` whose stabilizer is exactly `H`
    pub witness_point: Vec<Cyclotomic>,
    pub principal: bool,
    pub conjugacy_class_size: usize,
    pub normalizer_order: usize,
}

impl FiniteStratum {
    pub fn fixed_dim(&self) -> usize {
        self.fixed_space.dim()
    }
}

/// Luna strata from the fixed-subspace arrangement: isotropy groups are the
/// pointwise stabilizers of arrangement subspaces, deduplicated up to
/// conjugacy, each with `W = N_G(H)/H` realized by its faithful matrices on
/// `V^H`. Ordered by isotropy order, principal (trivial isotropy) first.
pub fn strata(g: &FiniteGroup, options: StrataOptions) -> Result<Vec<FiniteStratum>> {
    let order_n = g.cyclotomic_order();
    let dim = g.dim();

    // fixed spaces of the elements, deduplicated
    let mut generators: Vec<Subspace> = Vec::new();
    let mut seen = BTreeSet::new();
    for e in g.elements() {
        let fs = Subspace::from_spanning(order_n, dim, e.fixed_space()?)?;
        if seen.insert(fs.canonical_key()) {
            generators.push(fs);
        }
    }

    // arrangement closure under intersection
    let mut arrangement: BTreeMap<String, Subspace> = BTreeMap::new();
    let full = Subspace::full(order_n, dim);
    arrangement.insert(full.canonical_key(), full);
    for gen in &generators {
        arrangement.insert(gen.canonical_key(), gen.clone());
    }
    loop {
        let snapshot: Vec<Subspace> = arrangement.values().cloned().collect();
        let mut changed = false;
        for u in &snapshot {
            for f in &generators {
                let i = u.intersect(f)?;
                let key = i.canonical_key();
                if !arrangement.contains_key(&key) {
                    if arrangement.len() >= options.arrangement_cap {
                        return Err(Error::CapExceeded {
                            what: "fixed-subspace arrangement",
                            limit: options.arrangement_cap,
                            needed: arrangement.len() + 1,
                        });
                    }
                    arrangement.insert(key, i);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    // pointwise stabilizers; group the arrangement by stabilizer
    let mut by_stabilizer: BTreeMap<Vec<usize>, Subspace> = BTreeMap::new();
    for u in arrangement.values() {
        let stab = pointwise_stabilizer(g, u)?;
        let key: Vec<usize> = stab.iter().copied().collect();
        match by_stabilizer.get(&key) {
            Some(existing) if existing.dim() >= u.dim() => {}
            _ => {
                by_stabilizer.insert(key, u.clone());
            }
        }
    }

    // conjugacy classes of stabilizers; keep the smallest index set as the
    // class representative
    let stabs: Vec<(BTreeSet<usize>, Subspace)> = by_stabilizer
        .into_iter()
        .map(|(k, u)| (k.into_iter().collect(), u))
        .collect();
    let mut class_of: Vec<Option<usize>> = vec![None; stabs.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..stabs.len() {
        if class_of[i].is_some() {
            continue;
        }
        let cid = classes.len();
        class_of[i] = Some(cid);
        let mut members = vec![i];
        for j in i + 1..stabs.len() {
            if class_of[j].is_some() || stabs[j].0.len() != stabs[i].0.len() {
                continue;
            }
            if are_conjugate(g, &stabs[i].0, &stabs[j].0) {
                class_of[j] = Some(cid);
                members.push(j);
            }
        }
        classes.push(members);
    }

    let mut out = Vec::with_capacity(classes.len());
    for members in &classes {
        let rep = *members
            .iter()
            .min_by_key(|&&i| stabs[i].0.iter().copied().collect::<Vec<_>>())
            .unwrap();
        let (h_set, u) = &stabs[rep];
        out.push(build_stratum(
            g,
            h_set,
            u,
            members.len(),
            options.cyclotomic_ceiling,
        )?);
    }
    out.sort_by_key(|s| {
        (
            s.isotropy_indices.len(),
            s.isotropy_indices.iter().copied().collect::<Vec<_>>(),
        )
    });
    Ok(out)
}

fn pointwise_stabilizer(g: &FiniteGroup, u: &Subspace) -> Result<BTreeSet<usize>> {
    let mut stab = BTreeSet::new();
    let basis = u.basis_rows();
    'elems: for (i, e) in g.elements().iter().enumerate() {
        for b in &basis {
            if &e.apply(b)? != b {
                continue 'elems;
            }
        }
        stab.insert(i);
    }
    Ok(stab)
}

fn are_conjugate(g: &FiniteGroup, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
    for c in 0..g.order() {
        if a.iter().all(|&h| b.contains(&g.conjugate_idx(c, h))) && a.len() == b.len() {
            return true;
        }
    }
    false
}

fn build_stratum(
    g: &FiniteGroup,
    h_set: &BTreeSet<usize>,
    fixed: &Subspace,
    class_size: usize,
    ceiling: u32,
) -> Result<FiniteStratum> {
    let isotropy = g.subgroup_from_indices(h_set)?;

    // normalizer of H in G
    let mut normalizer = Vec::new();
    for c in 0..g.order() {
        if h_set.iter().all(|&h| h_set.contains(&g.conjugate_idx(c, h))) {
            normalizer.push(c);
        }
    }

    // W = N/H through its faithful matrices on V^H
    let order_n = g.cyclotomic_order();
    let k = fixed.dim();
    let mut weyl_elements: Vec<CycMatrix> = Vec::new();
    let mut weyl_seen = BTreeSet::new();
    for &n in &normalizer {
        let m = restrict_to(g.element(n), fixed)?;
        if weyl_seen.insert(m.canonical_string()) {
            weyl_elements.push(m);
        }
    }
    let weyl = FiniteGroup::from_elements(order_n, k, weyl_elements)?;
    // the kernel of the normalizer action on V^H is exactly H
    if weyl.order() * h_set.len() != normalizer.len() {
        return Err(Error::InvalidGroup(
            "kernel of the normalizer action on the fixed space is not the isotropy group".into(),
        ));
    }

    let witness = pointwise_stabilizer(g, fixed)?;
    debug_assert_eq!(&witness, h_set);
    let witness_point = exact_stabilizer_point(g, h_set, fixed)?;

    let pr = weyl.pseudoreflection_witness()?;
    let ab = weyl.abelianization(ceiling)?;

    Ok(FiniteStratum {
        isotropy_indices: h_set.clone(),
        isotropy,
        fixed_space: fixed.clone(),
        admissible: pr.is_none(),
        pseudoreflection_witness: pr.map(|i| weyl.element(i).clone()),
        class_group: ab.group.clone(),
        weyl_abelianization: ab,
        weyl,
        witness_point,
        principal: h_set.len() == 1,
        conjugacy_class_size: class_size,
        normalizer_order: normalizer.len(),
    })
}

/// Matrix of an element on the fixed-space basis. Columns are the
/// basis-coordinates of the images of the basis vectors.
fn restrict_to(m: &CycMatrix, space: &Subspace) -> Result<CycMatrix> {
    let k = space.dim();
    let order = space.order();
    let mut out = CycMatrix::zero(order, k, k);
    let basis = space.basis_rows();
    for (j, b) in basis.iter().enumerate() {
        let image = m.apply(b)?;
        if !space.contains(&image)? {
            return Err(Error::InvalidGroup(
                "element does not preserve the fixed space".into(),
            ));
        }
        let coords = space.coordinates(&image)?;
        for i in 0..k {
            *out.at_mut(i, j) = coords[i].clone();
        }
    }
    Ok(out)
}

/// A point of the fixed space whose stabilizer is exactly `H`: integer
/// combinations `sum t^i b_i` of the basis avoid the finitely many proper
/// subspaces fixed by outside elements for all but finitely many `t`.
fn exact_stabilizer_point(
    g: &FiniteGroup,
    h_set: &BTreeSet<usize>,
    fixed: &Subspace,
) -> Result<Vec<Cyclotomic>> {
    let order = fixed.order();
    let n = fixed.ambient();
    let basis = fixed.basis_rows();
    for t in 1i64..=1000 {
        let mut v = vec![Cyclotomic::zero(order); n];
        let mut scale = 1i64;
        for b in &basis {
            for (j, x) in b.iter().enumerate() {
                let s = x.scale(&num::BigRational::from_integer(num::BigInt::from(scale)));
                v[j] = v[j].add(&s)?;
            }
            scale *= t;
        }
        let mut exact = true;
        for (i, e) in g.elements().iter().enumerate() {
            let fixes = e.apply(&v)? == v;
            if fixes != h_set.contains(&i) {
                exact = false;
                break;
            }
        }
        if exact {
            return Ok(v);
        }
    }
    Err(Error::InvalidGroup(
        "no small witness point with exact stabilizer".into(),
    ))
}
