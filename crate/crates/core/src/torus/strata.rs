use super::module::WeightModule;
use crate::abelian::{
    kernel_basis, subgroup_from, CharacterSubgroup, ClCoordinateMap, FgAbelianGroup, IntMat,
};
use crate::error::{Error, Result};
use crate::polyhedral::{
    extreme_rays, positive_combination_zero_with, relint_contains_zero, Cone,
};
use num::{BigInt, BigRational, Signed};
use std::collections::BTreeMap;

/// Why a stratum is or is not admissible. A bad support names the weight
/// subset whose locus has codimension one and which fails to be free or
/// closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibilityCertificate {
    Admissible {
        /// supports whose goodness was verified: the full fixed support and
        /// one support per multiplicity-one weight
        checked_supports: Vec<Vec<usize>>,
    },
    BadSupport {
        support: Vec<usize>,
        generates: bool,
        closed: bool,
    },
}

/// One Luna stratum of a weight module. The defining character subgroup is
/// `X(W)` for `W = T/H`; dually it pins the isotropy group `H` as the joint
/// kernel of the support characters.
#[derive(Debug, Clone)]
pub struct Stratum {
    support: Vec<usize>,
    characters: CharacterSubgroup,
    fixed_weights: Vec<usize>,
    admissible: bool,
    certificate: AdmissibilityCertificate,
    class_group: FgAbelianGroup,
    class_group_map: ClCoordinateMap,
    isotropy_quotient: FgAbelianGroup,
    principal: bool,
}

impl Stratum {
    /// Canonical maximal support: every weight that occurs in some balanced
    /// subset of the fixed weights.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// The subgroup `⟨S⟩` of the ambient character group, anti-equivalently
    /// defining `H = ker S`.
    pub fn isotropy_characters(&self) -> &CharacterSubgroup {
        &self.characters
    }

    /// The same subgroup viewed as the character group of `W = T/H`.
    pub fn weyl_characters(&self) -> &CharacterSubgroup {
        &self.characters
    }

    /// Indices of the module weights lying in `⟨S⟩`: the weights of the
    /// `W`-module `V^H`.
    pub fn fixed_weights(&self) -> &[usize] {
        &self.fixed_weights
    }

    pub fn admissible(&self) -> bool {
        self.admissible
    }

    pub fn certificate(&self) -> &AdmissibilityCertificate {
        &self.certificate
    }

    /// Abstract structure of `X(W)`; equals the divisor class group of the
    /// stratum when the stratum is admissible.
    pub fn class_group(&self) -> &FgAbelianGroup {
        &self.class_group
    }

    pub fn class_group_map(&self) -> &ClCoordinateMap {
        &self.class_group_map
    }

    /// Structure of `X(H) = X(T)/⟨S⟩`, a descriptor of the isotropy group.
    pub fn isotropy_quotient(&self) -> &FgAbelianGroup {
        &self.isotropy_quotient
    }

    pub fn principal(&self) -> bool {
        self.principal
    }

    /// Dimension of the fixed submodule `V^H`.
    pub fn fixed_dim(&self, module: &WeightModule) -> usize {
        self.fixed_weights
            .iter()
            .map(|&i| module.weights()[i].multiplicity())
            .sum()
    }
}

/// Enumerates the Luna strata of a quasitorus module: one stratum per
/// distinct character subgroup generated by a balanced subset of the
/// weights. Ordered principal-first along subgroup inclusion, ties broken
/// by canonical form.
pub fn enumerate_strata(module: &WeightModule, weight_cap: usize) -> Result<Vec<Stratum>> {
    let t = module.weights().len();
    if t > weight_cap {
        return Err(Error::CapExceeded {
            what: "distinct weights",
            limit: weight_cap,
            needed: t,
        });
    }
    let ambient = module.character_group();
    let frees: Vec<Vec<BigRational>> = (0..t).map(|i| module.free_part(i)).collect();

    let mut subgroups: BTreeMap<Vec<Vec<BigInt>>, CharacterSubgroup> = BTreeMap::new();
    for mask in 0u32..(1u32 << t) {
        let subset: Vec<usize> = (0..t).filter(|&i| mask & (1 << i) != 0).collect();
        if !balanced_prefilter(&frees, &subset) {
            continue;
        }
        let vectors: Vec<Vec<BigRational>> = subset.iter().map(|&i| frees[i].clone()).collect();
        if !relint_contains_zero(&vectors)? {
            continue;
        }
        let gens: Vec<Vec<BigInt>> = subset
            .iter()
            .map(|&i| module.weights()[i].coords().to_vec())
            .collect();
        let sub = subgroup_from(&gens, ambient)?;
        subgroups.entry(sub.canonical_key()).or_insert(sub);
    }

    let mut strata: Vec<Stratum> = Vec::with_capacity(subgroups.len());
    for (_, characters) in subgroups {
        strata.push(build_stratum(module, characters)?);
    }

    // exactly one maximal subgroup: the join of balanced supports is again a
    // balanced support
    let mut principal_idx = None;
    'outer: for i in 0..strata.len() {
        for j in 0..strata.len() {
            if i == j {
                continue;
            }
            if !strata[j].characters.is_subgroup_of(&strata[i].characters)? {
                continue 'outer;
            }
        }
        principal_idx = Some(i);
        break;
    }
    let principal_idx = principal_idx.expect("the join of balanced supports is balanced");
    strata[principal_idx].principal = true;

    // linear extension of the inclusion order, principal first; Kahn's
    // algorithm with canonical-form tie-breaking for determinism
    let n = strata.len();
    let mut contains = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                contains[i][j] = strata[j].characters.is_subgroup_of(&strata[i].characters)?;
            }
        }
    }
    let mut emitted = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let mut candidates: Vec<usize> = (0..n)
            .filter(|&i| !emitted[i])
            .filter(|&i| (0..n).all(|j| emitted[j] || j == i || !contains[j][i]))
            .collect();
        candidates.sort_by_key(|&i| strata[i].characters.canonical_key());
        let pick = candidates[0];
        emitted[pick] = true;
        order.push(pick);
    }
    let mut out: Vec<Stratum> = Vec::with_capacity(n);
    for i in order {
        out.push(strata[i].clone());
    }
    Ok(out)
}

/// Cheap necessary condition for a balanced subset: no coordinate of the
/// free parts may be one-signed.
fn balanced_prefilter(frees: &[Vec<BigRational>], subset: &[usize]) -> bool {
    if subset.is_empty() {
        return true;
    }
    let d = frees[subset[0]].len();
    for c in 0..d {
        let mut has_nonpos = false;
        let mut has_nonneg = false;
        for &i in subset {
            if !frees[i][c].is_positive() {
                has_nonpos = true;
            }
            if !frees[i][c].is_negative() {
                has_nonneg = true;
            }
        }
        if !(has_nonpos && has_nonneg) {
            return false;
        }
    }
    true
}

fn build_stratum(module: &WeightModule, characters: CharacterSubgroup) -> Result<Stratum> {
    let t = module.weights().len();
    let mut fixed_weights = Vec::new();
    for i in 0..t {
        if characters.contains(module.weights()[i].coords())? {
            fixed_weights.push(i);
        }
    }
    // canonical maximal support: weights participating in a nonnegative
    // zero-combination of the fixed weights
    let fixed_frees: Vec<Vec<BigRational>> =
        fixed_weights.iter().map(|&i| module.free_part(i)).collect();
    let mut support = Vec::new();
    for (pos, &i) in fixed_weights.iter().enumerate() {
        if positive_combination_zero_with(&fixed_frees, pos)? {
            support.push(i);
        }
    }

    let (admissible, certificate) =
        admissibility_of(module, &characters, &fixed_weights)?;
    let (class_group, class_group_map) = characters.structure_with_map();
    let isotropy_quotient =
        crate::abelian::quotient_structure(module.character_group(), &characters)?;

    Ok(Stratum {
        support,
        characters,
        fixed_weights,
        admissible,
        certificate,
        class_group,
        class_group_map,
        isotropy_quotient,
        principal: false,
    })
}

/// Decides admissibility of a stratum: the bad locus of the `W`-module
/// `V^H` has codimension at least two iff the full fixed support is good
/// and, for every fixed weight of multiplicity one, the support without it
/// stays good. A support is good when it generates `X(W)` and has zero in
/// the relative interior of its hull.
pub fn is_admissible(
    module: &WeightModule,
    stratum: &Stratum,
) -> Result<(bool, AdmissibilityCertificate)> {
    admissibility_of(module, &stratum.characters, &stratum.fixed_weights)
}

fn admissibility_of(
    module: &WeightModule,
    characters: &CharacterSubgroup,
    fixed_weights: &[usize],
) -> Result<(bool, AdmissibilityCertificate)> {
    let mut checked = Vec::new();

    let full: Vec<usize> = fixed_weights.to_vec();
    if let Some(bad) = check_support(module, characters, &full)? {
        return Ok((false, bad));
    }
    checked.push(full);

    for &i in fixed_weights {
        if module.weights()[i].multiplicity() != 1 {
            continue;
        }
        let sub: Vec<usize> = fixed_weights.iter().copied().filter(|&j| j != i).collect();
        if let Some(bad) = check_support(module, characters, &sub)? {
            return Ok((false, bad));
        }
        checked.push(sub);
    }
    Ok((
        true,
        AdmissibilityCertificate::Admissible {
            checked_supports: checked,
        },
    ))
}

fn check_support(
    module: &WeightModule,
    characters: &CharacterSubgroup,
    support: &[usize],
) -> Result<Option<AdmissibilityCertificate>> {
    let gens: Vec<Vec<BigInt>> = support
        .iter()
        .map(|&i| module.weights()[i].coords().to_vec())
        .collect();
    let generates = subgroup_from(&gens, module.character_group())? == *characters;
    let frees: Vec<Vec<BigRational>> = support.iter().map(|&i| module.free_part(i)).collect();
    let closed = relint_contains_zero(&frees)?;
    if generates && closed {
        Ok(None)
    } else {
        Ok(Some(AdmissibilityCertificate::BadSupport {
            support: support.to_vec(),
            generates,
            closed,
        }))
    }
}

/// Class group of a stratum. The identification with `X(W)` is only
/// certified for admissible strata; the value is still computed otherwise
/// and flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroupResult {
    pub group: FgAbelianGroup,
    pub certified: bool,
}

pub fn class_group(stratum: &Stratum) -> ClassGroupResult {
    ClassGroupResult {
        group: stratum.class_group.clone(),
        certified: stratum.admissible,
    }
}

/// A generator of the polynomial Cox presentation of a torus stratum: one
/// coordinate of `V^H` with its class-group degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxGenerator {
    pub weight_index: usize,
    pub copy: usize,
    pub cl_degree: Vec<BigInt>,
}

/// Polynomial Cox presentation: one generator per coordinate of `V^H`,
/// no relations. Degrees live in the pinned coordinates of the class group.
#[derive(Debug, Clone)]
pub struct TorusCoxPresentation {
    pub class_group: FgAbelianGroup,
    pub generators: Vec<CoxGenerator>,
    pub certified: bool,
}

pub fn cox_presentation(module: &WeightModule, stratum: &Stratum) -> Result<TorusCoxPresentation> {
    let map = &stratum.class_group_map;
    let mut generators = Vec::new();
    for &i in &stratum.fixed_weights {
        let degree = map.coords(module.weights()[i].coords())?;
        for copy in 0..module.weights()[i].multiplicity() {
            generators.push(CoxGenerator {
                weight_index: i,
                copy,
                cl_degree: degree.clone(),
            });
        }
    }
    Ok(TorusCoxPresentation {
        class_group: stratum.class_group.clone(),
        generators,
        certified: stratum.admissible,
    })
}

/// Weight matrix of `W` on `V^H`: one row per coordinate, in the pinned
/// class-group coordinates. Errors out when `X(W)` has torsion.
pub fn weyl_weight_matrix(module: &WeightModule, stratum: &Stratum) -> Result<IntMat> {
    if !stratum.class_group.torsion().is_empty() {
        return Err(Error::TorsionClassGroup(format!(
            "X(W) = {} has invariant factors",
            stratum.class_group
        )));
    }
    let map = &stratum.class_group_map;
    let rank = stratum.class_group.free_rank();
    let mut rows = Vec::new();
    for &i in &stratum.fixed_weights {
        let degree = map.coords(module.weights()[i].coords())?;
        for _ in 0..module.weights()[i].multiplicity() {
            rows.push(degree.clone());
        }
    }
    IntMat::from_rows(rank, rows)
}

/// The cone of the affine toric variety `V^H // W`, obtained by Gale
/// duality: extreme rays of the orthant intersected with the kernel of the
/// weight matrix of `W` on `V^H`.
pub fn quotient_cone(module: &WeightModule, stratum: &Stratum) -> Result<Cone> {
    let weights = weyl_weight_matrix(module, stratum)?;
    let l = kernel_basis(&weights);
    extreme_rays(&l, weights.rows())
}
