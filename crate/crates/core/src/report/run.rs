use super::model::*;
use super::schema::{FiniteProblem, Options, ProblemKind, ProblemSpec, TorusProblem};
use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};
use crate::group::{strata as finite_strata, FiniteGroup, FiniteStratum, StrataOptions};
use crate::invariant::{
    cox_presentation_finite, minimal_generators, molien_series, CoxBounds,
    GradedRingPresentation, RingGenerator,
};
use crate::oracle;
use crate::polyhedral::Cone;
use crate::torus::{
    boundary_singularity_report, cox_presentation, enumerate_strata, quotient_cone,
    AdmissibilityCertificate, BoundaryStatus, Stratum, WeightModule,
};
use num::{BigInt, BigRational, Zero};

/// What the orchestrator computes; subcommands trim the expensive parts.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub compute_cox: bool,
    pub compute_cones: bool,
    pub compute_boundary: bool,
    pub compute_quotient_presentation: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            compute_cox: true,
            compute_cones: true,
            compute_boundary: true,
            compute_quotient_presentation: true,
        }
    }
}

fn tool_info() -> ToolInfo {
    ToolInfo {
        name: "lunacox".into(),
        version: env!("CARGO_PKG_VERSION").into(),
    }
}

fn bounds_used(o: &Options) -> BoundsUsed {
    BoundsUsed {
        cap_weights: o.cap_weights,
        cap_order: o.cap_order,
        cap_arrangement: o.cap_arrangement,
        cap_rays: o.cap_rays,
        cap_boundary_dim: o.cap_boundary_dim,
        cyclotomic_ceiling: o.cyclotomic_ceiling,
        max_degree: o.max_degree,
        rel_degree: o.rel_degree,
        oracle: o.oracle,
    }
}

/// Runs the full pipeline for a parsed problem and assembles the report.
/// With oracle mode on, derived quantities are recomputed by the slow
/// independent oracles and any mismatch aborts the run.
pub fn run(spec: &ProblemSpec, config: RunConfig) -> Result<StratificationReport> {
    match &spec.kind {
        ProblemKind::TorusModule(t) => run_torus(t, &spec.options, config),
        ProblemKind::FiniteGroup(f) => run_finite(f, &spec.options, config),
    }
}

fn display_bigints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn run_torus(
    problem: &TorusProblem,
    options: &Options,
    config: RunConfig,
) -> Result<StratificationReport> {
    let ambient = FgAbelianGroup::new(problem.rank, problem.torsion.clone())?;
    let module = WeightModule::new(ambient.clone(), problem.weights.clone())?;
    let mut warnings: Vec<String> = Vec::new();

    let strata = enumerate_strata(&module, options.cap_weights)?;
    if options.oracle {
        oracle_check_torus_strata(&module, &strata)?;
    }

    let mut stratum_reports = Vec::with_capacity(strata.len());
    for (id, s) in strata.iter().enumerate() {
        stratum_reports.push(torus_stratum_report(
            id, &module, s, options, config, &mut warnings,
        )?);
    }

    let quotient_presentation = if config.compute_quotient_presentation {
        torus_quotient_presentation(&module, options, &mut warnings)?
    } else {
        None
    };

    Ok(StratificationReport {
        tool: tool_info(),
        input: InputSummary {
            kind: "torus_module".into(),
            character_group: Some(ambient.to_string()),
            weights: Some(
                module
                    .weights()
                    .iter()
                    .map(|w| WeightSummary {
                        coords: display_bigints(w.coords()),
                        multiplicity: w.multiplicity(),
                    })
                    .collect(),
            ),
            module_dimension: Some(module.dim()),
            cyclotomic_order: None,
            dimension: None,
            generator_count: None,
            group_order: None,
        },
        conventions: Conventions::default(),
        bounds: bounds_used(options),
        strata: stratum_reports,
        quotient_presentation,
        warnings,
    })
}

fn torus_stratum_report(
    id: usize,
    module: &WeightModule,
    s: &Stratum,
    options: &Options,
    config: RunConfig,
    warnings: &mut Vec<String>,
) -> Result<StratumReport> {
    let admissibility = match s.certificate() {
        AdmissibilityCertificate::Admissible { checked_supports } => AdmissibilityReport {
            verdict: true,
            checked_supports: Some(checked_supports.clone()),
            bad_support: None,
            bad_support_generates: None,
            bad_support_closed: None,
            pseudoreflection: None,
        },
        AdmissibilityCertificate::BadSupport {
            support,
            generates,
            closed,
        } => AdmissibilityReport {
            verdict: false,
            checked_supports: None,
            bad_support: Some(support.clone()),
            bad_support_generates: Some(*generates),
            bad_support_closed: Some(*closed),
            pseudoreflection: None,
        },
    };
    if !s.admissible() {
        warnings.push(format!(
            "stratum {id}: not admissible; the class-group identification and Cox presentation are not certified"
        ));
    }

    if options.oracle {
        oracle_check_torus_stratum(module, s)?;
    }

    let cox = if config.compute_cox {
        let p = cox_presentation(module, s)?;
        Some(PresentationReport {
            variables: s.fixed_dim(module),
            class_group: p.class_group.to_string(),
            generators: p
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| GeneratorReport {
                    poly: format!("x{i}"),
                    degree: 1,
                    cl_degree: display_bigints(&g.cl_degree),
                })
                .collect(),
            relations: Vec::new(),
            degree_bound: 1,
            relation_bound: None,
            complete_generators: true,
            certified: p.certified,
        })
    } else {
        None
    };

    let mut cone_report = None;
    let mut boundary = None;
    if config.compute_cones {
        if s.class_group().torsion().is_empty() {
            let cone = quotient_cone(module, s)?;
            if options.oracle {
                oracle_check_cone(module, s, &cone)?;
            }
            cone_report = Some(ConeReport {
                ambient_dimension: s.fixed_dim(module),
                rays: cone.rays().iter().map(|r| display_bigints(r)).collect(),
            });
            if config.compute_boundary {
                if !s.admissible() {
                    boundary = Some(BoundaryScanReport {
                        status: "declined".into(),
                        reason: Some("stratum is not admissible".into()),
                        faces: None,
                        singular_exactly_on_boundary: None,
                        boundary_empty: None,
                    });
                } else if cone.ray_count() > options.cap_rays
                    || s.fixed_dim(module) > options.cap_boundary_dim
                {
                    warnings.push(format!(
                        "stratum {id}: boundary scan skipped (cone has {} rays, fixed space dimension {})",
                        cone.ray_count(),
                        s.fixed_dim(module)
                    ));
                } else {
                    let br = boundary_singularity_report(
                        module,
                        s,
                        options.cap_rays,
                        options.cap_boundary_dim,
                    )?;
                    boundary = Some(match br.status {
                        BoundaryStatus::Verified {
                            faces,
                            singular_exactly_on_boundary,
                            boundary_empty,
                            ..
                        } => BoundaryScanReport {
                            status: "verified".into(),
                            reason: None,
                            faces: Some(
                                faces
                                    .iter()
                                    .map(|f| FaceReport {
                                        ray_indices: f.ray_indices.clone(),
                                        orbit_smooth: f.orbit_smooth,
                                        meets_stratum: f.meets_stratum,
                                    })
                                    .collect(),
                            ),
                            singular_exactly_on_boundary: Some(singular_exactly_on_boundary),
                            boundary_empty: Some(boundary_empty),
                        },
                        BoundaryStatus::Declined { reason } => BoundaryScanReport {
                            status: "declined".into(),
                            reason: Some(reason),
                            faces: None,
                            singular_exactly_on_boundary: None,
                            boundary_empty: None,
                        },
                    });
                }
            }
        } else {
            warnings.push(format!(
                "stratum {id}: quotient cone skipped, X(W) = {} has torsion",
                s.class_group()
            ));
        }
    }

    Ok(StratumReport {
        id,
        principal: s.principal(),
        isotropy: IsotropyReport {
            character_subgroup: Some(
                s.isotropy_characters()
                    .canonical()
                    .row_vecs()
                    .iter()
                    .map(|r| display_bigints(r))
                    .collect(),
            ),
            isotropy_character_group: Some(s.isotropy_quotient().to_string()),
            support: Some(s.support().to_vec()),
            fixed_weights: Some(s.fixed_weights().to_vec()),
            order: None,
            conjugacy_class_size: None,
            normalizer_order: None,
            weyl_order: None,
            witness_point: None,
            fixed_dimension: s.fixed_dim(module),
        },
        admissible: s.admissible(),
        admissibility,
        class_group: s.class_group().to_string(),
        class_group_certified: s.admissible(),
        cox,
        quotient_cone: cone_report,
        boundary,
    })
}

/// Minimal monoid generators of the invariant monomials of the full module,
/// degree by degree up to the bound.
fn torus_quotient_presentation(
    module: &WeightModule,
    options: &Options,
    warnings: &mut Vec<String>,
) -> Result<Option<PresentationReport>> {
    let n = module.dim();
    if n > 10 {
        warnings.push(format!(
            "quotient presentation skipped: module dimension {n} exceeds the monomial enumeration budget"
        ));
        return Ok(None);
    }
    let bound = options.max_degree.unwrap_or(6);
    // coordinate -> weight coordinates
    let mut coord_weights: Vec<&[BigInt]> = Vec::with_capacity(n);
    for w in module.weights() {
        for _ in 0..w.multiplicity() {
            coord_weights.push(w.coords());
        }
    }
    let ambient = module.character_group();
    let m = ambient.coord_len();
    let mut found: Vec<Vec<u32>> = Vec::new();
    let mut gens: Vec<GeneratorReport> = Vec::new();
    for d in 1..=bound {
        for mono in crate::invariant::monomials_of_degree(n, d) {
            let e = &mono.0;
            // weight of the monomial must vanish in the character group
            let mut wsum = vec![BigInt::zero(); m];
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                for j in 0..m {
                    let s = &coord_weights[i][j] * BigInt::from(ei);
                    wsum[j] += s;
                }
            }
            let reduced = ambient.reduce(&wsum)?;
            if !reduced.iter().all(|x| x.is_zero()) {
                continue;
            }
            // indecomposable: no earlier monoid element divides it with a
            // monoid complement
            let decomposable = found.iter().any(|v| {
                v.iter().zip(e).all(|(a, b)| a <= b)
                    && found
                        .iter()
                        .any(|w| w.iter().zip(v.iter().zip(e)).all(|(wi, (vi, ei))| wi + vi == *ei))
            });
            if !decomposable {
                let poly = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| {
                        if x == 1 {
                            format!("x{i}")
                        } else {
                            format!("x{i}^{x}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*");
                gens.push(GeneratorReport {
                    poly,
                    degree: d,
                    cl_degree: Vec::new(),
                });
            }
            found.push(e.clone());
        }
    }
    Ok(Some(PresentationReport {
        variables: n,
        class_group: "0".into(),
        generators: gens,
        relations: Vec::new(),
        degree_bound: bound,
        relation_bound: None,
        complete_generators: false,
        certified: true,
    }))
}

fn run_finite(
    problem: &FiniteProblem,
    options: &Options,
    config: RunConfig,
) -> Result<StratificationReport> {
    let group = FiniteGroup::closure(&problem.generators, options.cap_order)?;
    let mut warnings = Vec::new();
    let strata = finite_strata(
        &group,
        StrataOptions {
            arrangement_cap: options.cap_arrangement,
            cyclotomic_ceiling: options.cyclotomic_ceiling,
        },
    )?;

    let mut stratum_reports = Vec::with_capacity(strata.len());
    for (id, s) in strata.iter().enumerate() {
        stratum_reports.push(finite_stratum_report(id, s, options, config, &mut warnings)?);
    }

    let quotient_presentation = if config.compute_quotient_presentation {
        let noether = group.order() as u32;
        let bound = options.max_degree.unwrap_or_else(|| {
            if noether > 12 {
                warnings.push(format!(
                    "quotient presentation degree bound clamped to 12 (group order {noether}); pass max_degree to override"
                ));
                12
            } else {
                noether
            }
        });
        let gens = minimal_generators(&group, bound)?;
        Some(presentation_report(
            group.dim(),
            &FgAbelianGroup::trivial(),
            &gens,
            &[],
            bound,
            None,
            bound >= noether,
            true,
        ))
    } else {
        None
    };

    Ok(StratificationReport {
        tool: tool_info(),
        input: InputSummary {
            kind: "finite_group".into(),
            character_group: None,
            weights: None,
            module_dimension: None,
            cyclotomic_order: Some(problem.cyclotomic_order),
            dimension: Some(problem.dimension),
            generator_count: Some(problem.generators.len()),
            group_order: Some(group.order()),
        },
        conventions: Conventions::default(),
        bounds: bounds_used(options),
        strata: stratum_reports,
        quotient_presentation,
        warnings,
    })
}

#[allow(clippy::too_many_arguments)]
fn presentation_report(
    variables: usize,
    class_group: &FgAbelianGroup,
    gens: &[RingGenerator],
    rels: &[crate::invariant::FormalPoly],
    degree_bound: u32,
    relation_bound: Option<u32>,
    complete: bool,
    certified: bool,
) -> PresentationReport {
    PresentationReport {
        variables,
        class_group: class_group.to_string(),
        generators: gens
            .iter()
            .map(|g| GeneratorReport {
                poly: g.poly.to_string(),
                degree: g.degree,
                cl_degree: display_bigints(&g.cl_degree),
            })
            .collect(),
        relations: rels.iter().map(format_formal).collect(),
        degree_bound,
        relation_bound,
        complete_generators: complete,
        certified,
    }
}

fn format_formal(rel: &crate::invariant::FormalPoly) -> String {
    let mut parts = Vec::new();
    for (e, c) in &rel.terms {
        let mut vars = String::new();
        for (i, &x) in e.iter().enumerate() {
            if x == 1 {
                vars.push_str(&format!("*y{i}"));
            } else if x > 1 {
                vars.push_str(&format!("*y{i}^{x}"));
            }
        }
        let coeff = if c.to_rational().is_some() {
            format!("{c}")
        } else {
            format!("({c})")
        };
        parts.push(format!("{coeff}{vars}"));
    }
    parts.join(" + ")
}

fn finite_stratum_report(
    id: usize,
    s: &FiniteStratum,
    options: &Options,
    config: RunConfig,
    warnings: &mut Vec<String>,
) -> Result<StratumReport> {
    if !s.admissible {
        warnings.push(format!(
            "stratum {id}: not admissible (pseudoreflection present); the class-group identification and Cox presentation are not certified"
        ));
    }
    if options.oracle {
        oracle_check_finite_stratum(s)?;
    }

    let cox = if config.compute_cox {
        let s_order = s.weyl.commutator_indices().len() as u32;
        let mut bounds = CoxBounds {
            max_degree: options.max_degree,
            rel_degree: options.rel_degree,
        };
        if bounds.max_degree.is_none() && s_order > 12 {
            warnings.push(format!(
                "stratum {id}: Cox generator degree bound clamped to 12 (commutant order {s_order}); pass max_degree to override"
            ));
            bounds.max_degree = Some(12);
        }
        let p = cox_presentation_finite(&s.weyl, &s.weyl_abelianization, bounds, s.admissible)?;
        if options.oracle {
            oracle_check_presentation(&p)?;
        }
        Some(presentation_report(
            p.variables,
            &p.class_group,
            &p.generators,
            &p.relations,
            p.degree_bound,
            Some(p.relation_bound),
            p.complete_generators,
            p.certified,
        ))
    } else {
        None
    };

    Ok(StratumReport {
        id,
        principal: s.principal,
        isotropy: IsotropyReport {
            character_subgroup: None,
            isotropy_character_group: None,
            support: None,
            fixed_weights: None,
            order: Some(s.isotropy.order()),
            conjugacy_class_size: Some(s.conjugacy_class_size),
            normalizer_order: Some(s.normalizer_order),
            weyl_order: Some(s.weyl.order()),
            witness_point: Some(s.witness_point.iter().map(|c| c.to_string()).collect()),
            fixed_dimension: s.fixed_dim(),
        },
        admissible: s.admissible,
        admissibility: AdmissibilityReport {
            verdict: s.admissible,
            checked_supports: None,
            bad_support: None,
            bad_support_generates: None,
            bad_support_closed: None,
            pseudoreflection: s.pseudoreflection_witness.as_ref().map(|m| {
                format!("matrix with fixed hyperplane: {}", m.canonical_string())
            }),
        },
        class_group: s.class_group.to_string(),
        class_group_certified: s.admissible,
        cox,
        quotient_cone: None,
        boundary: None,
    })
}

// ---------------------------------------------------------------------------
// oracle mode

fn oracle_check_torus_strata(module: &WeightModule, strata: &[Stratum]) -> Result<()> {
    use crate::abelian::subgroup_from;
    use crate::polyhedral::relint_contains_zero;
    use std::collections::BTreeSet;

    // raw subset enumeration without the prefilter
    let t = module.weights().len();
    let mut expected: BTreeSet<Vec<Vec<BigInt>>> = BTreeSet::new();
    for mask in 0u32..(1u32 << t) {
        let subset: Vec<usize> = (0..t).filter(|&i| mask & (1 << i) != 0).collect();
        let frees: Vec<Vec<BigRational>> = subset.iter().map(|&i| module.free_part(i)).collect();
        if relint_contains_zero(&frees)? {
            let gens: Vec<Vec<BigInt>> = subset
                .iter()
                .map(|&i| module.weights()[i].coords().to_vec())
                .collect();
            expected.insert(subgroup_from(&gens, module.character_group())?.canonical_key());
        }
    }
    let got: BTreeSet<Vec<Vec<BigInt>>> = strata
        .iter()
        .map(|s| s.isotropy_characters().canonical_key())
        .collect();
    if expected != got {
        return Err(Error::OracleMismatch {
            what: "stratum enumeration",
            detail: format!(
                "raw subset enumeration found {} subgroups, pipeline found {}",
                expected.len(),
                got.len()
            ),
        });
    }
    Ok(())
}

fn oracle_check_torus_stratum(module: &WeightModule, s: &Stratum) -> Result<()> {
    // admissibility by brute-force support enumeration
    let dim = s.fixed_dim(module);
    if dim <= 16 {
        let fixed: Vec<(Vec<BigInt>, Vec<BigRational>, usize)> = s
            .fixed_weights()
            .iter()
            .map(|&i| {
                (
                    module.weights()[i].coords().to_vec(),
                    module.free_part(i),
                    module.weights()[i].multiplicity(),
                )
            })
            .collect();
        let brute = oracle::admissible_bruteforce(
            module.character_group(),
            s.isotropy_characters(),
            &fixed,
        )?;
        if brute != s.admissible() {
            return Err(Error::OracleMismatch {
                what: "admissibility",
                detail: format!(
                    "brute-force support enumeration says {brute}, pipeline says {}",
                    s.admissible()
                ),
            });
        }
    }
    // class group invariant factors by the gcd-of-minors route
    let canonical = s.isotropy_characters().canonical();
    let p = canonical.rows();
    let rel = s.isotropy_characters().relation_matrix_in_basis();
    let mut factors = oracle::snf_invariant_factors_by_minors(&rel);
    factors.resize(p, BigInt::zero());
    let oracle_group = FgAbelianGroup::from_invariant_factors(factors);
    if &oracle_group != s.class_group() {
        return Err(Error::OracleMismatch {
            what: "class group",
            detail: format!("minors oracle {} vs pipeline {}", oracle_group, s.class_group()),
        });
    }
    Ok(())
}

fn oracle_check_cone(module: &WeightModule, s: &Stratum, cone: &Cone) -> Result<()> {
    let weights = crate::torus::weyl_weight_matrix(module, s)?;
    let fm = oracle::extreme_rays_fourier_motzkin(&weights);
    if fm != cone.rays() {
        return Err(Error::OracleMismatch {
            what: "extreme rays",
            detail: format!(
                "Fourier-Motzkin found {} rays, double description {}",
                fm.len(),
                cone.ray_count()
            ),
        });
    }
    Ok(())
}

fn oracle_check_finite_stratum(s: &FiniteStratum) -> Result<()> {
    // the class group must match the coset structure: order, exponent,
    // character count, and each character must be a homomorphism
    let ab = &s.weyl_abelianization;
    let q = ab.group.order().expect("finite quotient");
    if BigInt::from(ab.characters.len() as i64) != q {
        return Err(Error::OracleMismatch {
            what: "character count",
            detail: format!("{} characters for a quotient of order {q}", ab.characters.len()),
        });
    }
    for ch in &ab.characters {
        for a in 0..s.weyl.order() {
            for b in 0..s.weyl.order() {
                let prod = ch.values[a].mul(&ch.values[b])?;
                if prod != ch.values[s.weyl.mul_idx(a, b)] {
                    return Err(Error::OracleMismatch {
                        what: "character multiplicativity",
                        detail: "character is not a homomorphism".into(),
                    });
                }
            }
        }
    }
    // Molien cross-check for the commutant at low degrees
    let sub = s.weyl.subgroup_from_indices(&s.weyl.commutator_indices())?;
    if s.weyl.dim() <= 4 {
        let molien = molien_series(&sub, 4)?;
        let action = crate::invariant::GroupAction::new(&sub, sub.cyclotomic_order())?;
        let chi = crate::invariant::trivial_character(sub.order(), sub.cyclotomic_order());
        for d in 0..=4u32 {
            let basis = crate::invariant::invariant_basis(&action, &chi, d)?;
            if BigInt::from(basis.len() as i64) != molien[d as usize] {
                return Err(Error::OracleMismatch {
                    what: "Molien consistency",
                    detail: format!(
                        "degree {d}: Reynolds span {} vs Molien {}",
                        basis.len(),
                        molien[d as usize]
                    ),
                });
            }
        }
    }
    Ok(())
}

fn oracle_check_presentation(p: &GradedRingPresentation) -> Result<()> {
    for rel in &p.relations {
        if !rel.substitute(&p.generators)?.is_zero() {
            return Err(Error::OracleMismatch {
                what: "relation verification",
                detail: "a reported relation does not vanish under substitution".into(),
            });
        }
    }
    Ok(())
}
