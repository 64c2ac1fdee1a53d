use super::module::WeightModule;
use super::strata::{quotient_cone, Stratum};
use crate::abelian::subgroup_from;
use crate::error::{Error, Result};
use crate::polyhedral::{face_orbit_smooth, faces, relint_contains_zero, Cone};
use num::{BigInt, BigRational};

/// Verdict for one face of the quotient cone: smoothness of its toric orbit
/// and whether the orbit meets the image of the free-closed locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceVerdict {
    pub ray_indices: Vec<usize>,
    pub orbit_smooth: bool,
    pub meets_stratum: bool,
}

#[derive(Debug, Clone)]
pub enum BoundaryStatus {
    Verified {
        cone: Cone,
        faces: Vec<FaceVerdict>,
        /// singular locus of the quotient equals the complement of the
        /// stratum, face by face
        singular_exactly_on_boundary: bool,
        /// every orbit meets the stratum: the boundary is empty and the
        /// singularity statement is vacuous
        boundary_empty: bool,
    },
    Declined {
        reason: String,
    },
}

#[derive(Debug, Clone)]
pub struct BoundaryReport {
    pub status: BoundaryStatus,
}

/// Desk-scale toric verification that an admissible stratum is singular
/// along its boundary. Faces of the Gale-dual cone correspond to torus
/// orbits of `V^H // W` (the normalization of the stratum closure); an
/// orbit is smooth iff the cone quotient by the face span is unimodular,
/// and it meets the stratum iff some good coordinate support selects
/// exactly that face.
pub fn boundary_singularity_report(
    module: &WeightModule,
    stratum: &Stratum,
    ray_cap: usize,
    dim_cap: usize,
) -> Result<BoundaryReport> {
    if !stratum.admissible() {
        return Ok(BoundaryReport {
            status: BoundaryStatus::Declined {
                reason: "stratum is not admissible; the boundary-singularity statement needs an admissible stratum".into(),
            },
        });
    }
    let cone = quotient_cone(module, stratum)?;
    let dim = stratum.fixed_dim(module);
    if dim > dim_cap {
        return Err(Error::CapExceeded {
            what: "boundary scan coordinates",
            limit: dim_cap,
            needed: dim,
        });
    }
    let all_faces = faces(&cone, ray_cap)?;

    // coordinate labels: which weight each coordinate of V^H carries
    let mut labels: Vec<usize> = Vec::with_capacity(dim);
    for &i in stratum.fixed_weights() {
        for _ in 0..module.weights()[i].multiplicity() {
            labels.push(i);
        }
    }

    // a coordinate support T is good iff its weight set generates X(W) and
    // is balanced; it selects the face spanned by the rays supported in T
    let mut face_keys: Vec<Vec<usize>> = Vec::new();
    for f in &all_faces {
        let key: Vec<usize> = f
            .rays()
            .iter()
            .map(|r| {
                cone.rays()
                    .iter()
                    .position(|cr| cr == r)
                    .expect("face rays are cone rays")
            })
            .collect();
        face_keys.push(key);
    }
    let mut meets = vec![false; all_faces.len()];
    let weight_count = module.weights().len();
    let mut good_cache: Vec<Option<bool>> = vec![None; 1 << weight_count];
    for mask in 0u64..(1u64 << dim) {
        let mut weight_mask = 0usize;
        for (c, &l) in labels.iter().enumerate() {
            if mask & (1 << c) != 0 {
                weight_mask |= 1 << l;
            }
        }
        let good = match good_cache[weight_mask] {
            Some(g) => g,
            None => {
                let idx: Vec<usize> = (0..weight_count)
                    .filter(|&i| weight_mask & (1 << i) != 0)
                    .collect();
                let gens: Vec<Vec<BigInt>> = idx
                    .iter()
                    .map(|&i| module.weights()[i].coords().to_vec())
                    .collect();
                let frees: Vec<Vec<BigRational>> =
                    idx.iter().map(|&i| module.free_part(i)).collect();
                let g = subgroup_from(&gens, module.character_group())?
                    == *stratum.isotropy_characters()
                    && relint_contains_zero(&frees)?;
                good_cache[weight_mask] = Some(g);
                g
            }
        };
        if !good {
            continue;
        }
        // rays supported inside the coordinate set T
        let selected: Vec<usize> = cone
            .rays()
            .iter()
            .enumerate()
            .filter(|(_, r)| {
                r.iter()
                    .enumerate()
                    .all(|(c, x)| x == &BigInt::from(0) || mask & (1 << c) != 0)
            })
            .map(|(i, _)| i)
            .collect();
        if let Some(fi) = face_keys.iter().position(|k| *k == selected) {
            meets[fi] = true;
        }
    }

    let mut verdicts = Vec::with_capacity(all_faces.len());
    let mut agree = true;
    let mut boundary_empty = true;
    for (fi, f) in all_faces.iter().enumerate() {
        let smooth = face_orbit_smooth(&cone, f)?;
        if smooth != meets[fi] {
            agree = false;
        }
        if !meets[fi] {
            boundary_empty = false;
        }
        verdicts.push(FaceVerdict {
            ray_indices: face_keys[fi].clone(),
            orbit_smooth: smooth,
            meets_stratum: meets[fi],
        });
    }

    Ok(BoundaryReport {
        status: BoundaryStatus::Verified {
            cone,
            faces: verdicts,
            singular_exactly_on_boundary: agree,
            boundary_empty,
        },
    })
}
