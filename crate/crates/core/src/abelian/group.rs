use super::matrix::{express_in_hnf_basis, hnf, snf, IntMat};
use crate::error::{Error, Result};
use num::{BigInt, Integer, One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Finitely generated abelian group in invariant-factor form:
/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `2 <= d_1 | d_2 | ... | d_k`.
///
/// The representation is unique, so structural equality is isomorphism.
/// Element coordinates are the `free_rank` free coordinates followed by the
/// torsion coordinates, stored reduced into `[0, d_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for w in torsion.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::InvalidAbelianGroup(format!(
                    "invariant factors must form a divisibility chain: {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        for d in &torsion {
            if *d < BigInt::from(2) {
                return Err(Error::InvalidAbelianGroup(format!(
                    "invariant factor {d} must be at least 2"
                )));
            }
        }
        Ok(FgAbelianGroup { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        FgAbelianGroup::free(0)
    }

    /// Builds the group from a raw invariant-factor list as produced by SNF:
    /// factors equal to 1 are dropped, zero factors contribute free rank.
    pub fn from_invariant_factors<I: IntoIterator<Item = BigInt>>(factors: I) -> Self {
        let mut free_rank = 0usize;
        let mut torsion = Vec::new();
        for d in factors {
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                torsion.push(d);
            }
        }
        torsion.sort();
        FgAbelianGroup { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn coord_len(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order for finite groups, `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    /// Reduces a coordinate vector: torsion coordinates into `[0, d_i)`.
    pub fn reduce(&self, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        if coords.len() != self.coord_len() {
            return Err(Error::CoordinateMismatch {
                expected: self.coord_len(),
                got: coords.len(),
            });
        }
        let mut out = coords.to_vec();
        for (i, d) in self.torsion.iter().enumerate() {
            out[self.free_rank + i] = out[self.free_rank + i].mod_floor(d);
        }
        Ok(out)
    }

    /// Relation lattice of the presentation `Z^n -> self` (rows `d_i * e_{r+i}`).
    pub fn relation_matrix(&self) -> IntMat {
        let n = self.coord_len();
        let mut rows = Vec::new();
        for (i, d) in self.torsion.iter().enumerate() {
            let mut row = vec![BigInt::zero(); n];
            row[self.free_rank + i] = d.clone();
            rows.push(row);
        }
        IntMat::from_rows(n, rows).expect("relation rows sized to coord_len")
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A subgroup of an ambient group `Z^r ⊕ ⊕ Z/d_i`, represented by the HNF of
/// the preimage lattice in `Z^n` (generators stacked with the torsion
/// relations `d_i e_{r+i}`). The canonical form is independent of the
/// generating set, so equality of canonical forms decides subgroup equality.
#[derive(Debug, Clone)]
pub struct CharacterSubgroup {
    ambient: FgAbelianGroup,
    generators: Vec<Vec<BigInt>>,
    canonical: IntMat,
}

impl PartialEq for CharacterSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.canonical == other.canonical
    }
}

impl Eq for CharacterSubgroup {}

/// Builds the subgroup of `ambient` generated by the given elements.
pub fn subgroup_from(
    generators: &[Vec<BigInt>],
    ambient: &FgAbelianGroup,
) -> Result<CharacterSubgroup> {
    let n = ambient.coord_len();
    let mut reduced = Vec::with_capacity(generators.len());
    for g in generators {
        reduced.push(ambient.reduce(g)?);
    }
    let gen_mat = IntMat::from_rows(n, reduced.clone())?;
    let stacked = gen_mat.stack(&ambient.relation_matrix())?;
    let full = hnf(&stacked);
    let rows: Vec<Vec<BigInt>> = (0..full.rows())
        .filter(|&i| !full.is_zero_row(i))
        .map(|i| full.row(i).to_vec())
        .collect();
    let canonical = IntMat::from_rows(n, rows)?;
    Ok(CharacterSubgroup {
        ambient: ambient.clone(),
        generators: reduced,
        canonical,
    })
}

impl CharacterSubgroup {
    pub fn ambient(&self) -> &FgAbelianGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Canonical HNF basis of the preimage lattice, the subgroup's identity.
    pub fn canonical(&self) -> &IntMat {
        &self.canonical
    }

    /// Stable key for ordering and deduplication.
    pub fn canonical_key(&self) -> Vec<Vec<BigInt>> {
        self.canonical.row_vecs().to_vec()
    }

    pub fn contains(&self, elem: &[BigInt]) -> Result<bool> {
        let e = self.ambient.reduce(elem)?;
        Ok(express_in_hnf_basis(&self.canonical, &e).is_some())
    }

    pub fn is_subgroup_of(&self, other: &CharacterSubgroup) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(Error::NotInAmbient(
                "subgroups live in different ambient groups".into(),
            ));
        }
        for i in 0..self.canonical.rows() {
            if express_in_hnf_basis(&other.canonical, self.canonical.row(i)).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Invariant-factor structure of the subgroup as an abstract group.
    pub fn structure(&self) -> FgAbelianGroup {
        self.structure_with_map().0
    }

    /// The ambient torsion relations written in the canonical lattice
    /// basis: the relation matrix whose cokernel is the subgroup. Exposed
    /// so oracle mode can recompute the structure by an independent SNF
    /// route.
    pub fn relation_matrix_in_basis(&self) -> IntMat {
        let p = self.canonical.rows();
        let rel = self.ambient.relation_matrix();
        let mut rows = Vec::with_capacity(rel.rows());
        for i in 0..rel.rows() {
            rows.push(
                express_in_hnf_basis(&self.canonical, rel.row(i))
                    .expect("torsion relations lie in the preimage lattice"),
            );
        }
        IntMat::from_rows(p, rows).expect("relation coords sized to basis rank")
    }

    /// Structure together with the pinned coordinate map onto it.
    ///
    /// The subgroup is `L / R` where `L` is the canonical preimage lattice
    /// and `R` the ambient torsion-relation lattice. Writing the relations
    /// in the `L`-basis and taking SNF pins one isomorphism onto
    /// `Z^f ⊕ ⊕ Z/d_j`; the same transform is reused everywhere degrees in
    /// the class group are reported, so outputs are reproducible.
    pub fn structure_with_map(&self) -> (FgAbelianGroup, ClCoordinateMap) {
        let p = self.canonical.rows();
        let c = self.relation_matrix_in_basis();
        let s = snf(&c);
        let mut factors = vec![BigInt::zero(); p];
        for (j, d) in s.d.iter().enumerate() {
            factors[j] = d.clone();
        }
        let mut free_pos = Vec::new();
        let mut torsion_pos = Vec::new();
        for (j, f) in factors.iter().enumerate() {
            if f.is_zero() {
                free_pos.push(j);
            } else if !f.is_one() {
                torsion_pos.push(j);
            }
        }
        let group = FgAbelianGroup {
            free_rank: free_pos.len(),
            torsion: torsion_pos.iter().map(|&j| factors[j].clone()).collect(),
        };
        let map = ClCoordinateMap {
            basis: self.canonical.clone(),
            v: s.v,
            factors,
            free_pos,
            torsion_pos,
            group: group.clone(),
        };
        (group, map)
    }
}

/// Pinned isomorphism from a character subgroup onto its abstract
/// invariant-factor form; maps subgroup elements to class-group coordinates.
#[derive(Debug, Clone)]
pub struct ClCoordinateMap {
    basis: IntMat,
    v: IntMat,
    factors: Vec<BigInt>,
    free_pos: Vec<usize>,
    torsion_pos: Vec<usize>,
    group: FgAbelianGroup,
}

impl ClCoordinateMap {
    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    /// Coordinates of a subgroup element in the abstract group, free
    /// coordinates first, torsion coordinates reduced.
    pub fn coords(&self, elem: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = express_in_hnf_basis(&self.basis, elem).ok_or_else(|| {
            Error::NotInAmbient("element does not lie in the subgroup".into())
        })?;
        // z = y * v
        let p = self.basis.rows();
        let mut z = vec![BigInt::zero(); p];
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for j in 0..p {
                let s = yi * self.v.at(i, j);
                z[j] += s;
            }
        }
        let mut out = Vec::with_capacity(self.group.coord_len());
        for &j in &self.free_pos {
            out.push(z[j].clone());
        }
        for &j in &self.torsion_pos {
            out.push(z[j].mod_floor(&self.factors[j]));
        }
        Ok(out)
    }
}

/// Structure of the subgroup as an abstract group.
pub fn subgroup_structure(s: &CharacterSubgroup) -> FgAbelianGroup {
    s.structure()
}

/// Invariant factors of `ambient / s` via SNF of the relation lattice.
pub fn quotient_structure(ambient: &FgAbelianGroup, s: &CharacterSubgroup) -> Result<FgAbelianGroup> {
    if s.ambient() != ambient {
        return Err(Error::NotInAmbient(
            "subgroup was built over a different ambient group".into(),
        ));
    }
    let n = ambient.coord_len();
    let sn = snf(s.canonical());
    let mut factors = vec![BigInt::zero(); n];
    for (j, d) in sn.d.iter().enumerate() {
        factors[j] = d.clone();
    }
    Ok(FgAbelianGroup::from_invariant_factors(factors))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| bi(x)).collect())
            .collect()
    }

    #[test]
    fn subgroup_two_z_in_z() {
        let z = FgAbelianGroup::free(1);
        let two = subgroup_from(&vecs(&[&[2]]), &z).unwrap();
        let one = subgroup_from(&vecs(&[&[1]]), &z).unwrap();
        assert_eq!(two.canonical(), &IntMat::from_i64(&[&[2]]));
        assert_ne!(two, one);
        let st = two.structure();
        assert_eq!(st, FgAbelianGroup::free(1));
        assert_eq!(
            quotient_structure(&z, &two).unwrap(),
            FgAbelianGroup::new(0, vec![bi(2)]).unwrap()
        );
    }

    #[test]
    fn subgroup_full_z2_by_determinant_one() {
        let z2 = FgAbelianGroup::free(2);
        // SNF oracle: det [[2,1],[1,1]] = 1, so the subgroup is everything
        let s = subgroup_from(&vecs(&[&[2, 1], &[1, 1]]), &z2).unwrap();
        assert_eq!(s.canonical(), &IntMat::identity(2));
        assert_eq!(s.structure(), FgAbelianGroup::free(2));
        assert!(quotient_structure(&z2, &s).unwrap().is_trivial());
    }

    #[test]
    fn redundant_generators_do_not_change_canonical_form() {
        let z2 = FgAbelianGroup::free(2);
        let a = subgroup_from(&vecs(&[&[1, 0]]), &z2).unwrap();
        let b = subgroup_from(&vecs(&[&[1, 0], &[2, 0]]), &z2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn subgroup_structure_in_mixed_ambient() {
        // <(1,1)> inside Z + Z/2. Enumeration oracle on the quotient
        // presentation: cosets of (a, a mod 2) are represented by (0,0) and
        // (0,1), so the quotient has order 2 and the subgroup is free of
        // rank 1.
        let ambient = FgAbelianGroup::new(1, vec![bi(2)]).unwrap();
        let s = subgroup_from(&vecs(&[&[1, 1]]), &ambient).unwrap();
        assert_eq!(s.structure(), FgAbelianGroup::free(1));
        assert_eq!(
            quotient_structure(&ambient, &s).unwrap(),
            FgAbelianGroup::new(0, vec![bi(2)]).unwrap()
        );
        // and the oracle count: distinct cosets of {(a, a mod 2)} among
        // representatives (0..=0, b) and shifts in a box
        let mut cosets = std::collections::BTreeSet::new();
        for a in -4i64..=4 {
            for b in 0i64..2 {
                // reduce (a, b) modulo the subgroup: subtract a*(1,1)
                let t = (b - a).rem_euclid(2);
                cosets.insert(t);
            }
        }
        assert_eq!(cosets.len(), 2);
    }

    #[test]
    fn contains_and_ordering() {
        let z = FgAbelianGroup::free(1);
        let two = subgroup_from(&vecs(&[&[2]]), &z).unwrap();
        let four = subgroup_from(&vecs(&[&[4]]), &z).unwrap();
        assert!(two.contains(&[bi(6)]).unwrap());
        assert!(!two.contains(&[bi(3)]).unwrap());
        assert!(four.is_subgroup_of(&two).unwrap());
        assert!(!two.is_subgroup_of(&four).unwrap());
    }

    #[test]
    fn torsion_ambient_full_subgroup() {
        let ambient = FgAbelianGroup::new(0, vec![bi(2)]).unwrap();
        let s = subgroup_from(&vecs(&[&[1]]), &ambient).unwrap();
        assert_eq!(s.structure(), FgAbelianGroup::new(0, vec![bi(2)]).unwrap());
        let trivial = subgroup_from(&[], &ambient).unwrap();
        assert!(trivial.structure().is_trivial());
        assert!(trivial.is_subgroup_of(&s).unwrap());
    }

    #[test]
    fn quotient_z2_by_diag_2_3() {
        let z2 = FgAbelianGroup::free(2);
        let s = subgroup_from(&vecs(&[&[2, 0], &[0, 3]]), &z2).unwrap();
        // SNF oracle on [[2,0],[0,3]]: invariant factors (1,6)
        assert_eq!(
            quotient_structure(&z2, &s).unwrap(),
            FgAbelianGroup::new(0, vec![bi(6)]).unwrap()
        );
    }

    #[test]
    fn coordinate_map_is_a_homomorphism_onto_structure() {
        let ambient = FgAbelianGroup::new(1, vec![bi(4)]).unwrap();
        let s = subgroup_from(&vecs(&[&[2, 1], &[0, 2]]), &ambient).unwrap();
        let (g, map) = s.structure_with_map();
        // additivity on a couple of elements
        let a = ambient.reduce(&[bi(2), bi(1)]).unwrap();
        let b = ambient.reduce(&[bi(0), bi(2)]).unwrap();
        let sum: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let sum = ambient.reduce(&sum).unwrap();
        let ca = map.coords(&a).unwrap();
        let cb = map.coords(&b).unwrap();
        let csum = map.coords(&sum).unwrap();
        let added: Vec<BigInt> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        assert_eq!(g.reduce(&added).unwrap(), csum);
    }

    #[test]
    fn display_formats() {
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FgAbelianGroup::free(1).to_string(), "Z");
        assert_eq!(
            FgAbelianGroup::new(2, vec![bi(2), bi(6)]).unwrap().to_string(),
            "Z^2 + Z/2 + Z/6"
        );
    }

    #[test]
    fn generating_set_invariance_under_shuffles_and_combinations() {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let free = rng.gen_range(0..=2usize);
            let torsion: Vec<BigInt> = match rng.gen_range(0..3) {
                0 => vec![],
                1 => vec![bi(2)],
                _ => vec![bi(2), bi(4)],
            };
            let ambient = FgAbelianGroup::new(free, torsion).unwrap();
            let n = ambient.coord_len();
            if n == 0 {
                continue;
            }
            let k = rng.gen_range(1..=3usize);
            let gens: Vec<Vec<BigInt>> = (0..k)
                .map(|_| (0..n).map(|_| bi(rng.gen_range(-3i64..=3))).collect())
                .collect();
            let s1 = subgroup_from(&gens, &ambient).unwrap();

            // shuffle and augment with a random integer combination
            let mut gens2 = gens.clone();
            gens2.shuffle(&mut rng);
            let coeffs: Vec<BigInt> = (0..k).map(|_| bi(rng.gen_range(-2i64..=2))).collect();
            let extra: Vec<BigInt> = (0..n)
                .map(|j| gens.iter().zip(&coeffs).map(|(g, c)| &g[j] * c).sum())
                .collect();
            gens2.push(extra);
            let s2 = subgroup_from(&gens2, &ambient).unwrap();
            assert_eq!(s1, s2, "canonical form changed under regeneration");
        }
    }
}
