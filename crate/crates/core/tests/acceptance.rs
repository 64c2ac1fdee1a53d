//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//! Every tolerance here is exact; the only non-exact bounds are wall-clock
//! budgets.

use lunacox_core::abelian::{FgAbelianGroup, IntMat};
use lunacox_core::cyclotomic::{CycMatrix, Cyclotomic};
use lunacox_core::group::{strata, FiniteGroup, StrataOptions};
use lunacox_core::invariant::{
    cox_presentation_finite, invariant_basis, molien_series, subalgebra_dims, trivial_character,
    CoxBounds, GroupAction,
};
use lunacox_core::oracle;
use lunacox_core::polyhedral::{extreme_rays, relint_contains_zero};
use lunacox_core::torus::{
    boundary_singularity_report, cox_presentation, enumerate_strata, quotient_cone,
    BoundaryStatus, WeightModule,
};
use num::{BigInt, BigRational, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn bi(x: i64) -> BigInt {
    BigInt::from(x)
}

fn report(id: &str, name: &str, started: Instant, budget_s: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    println!("acceptance {id} ({name}): PASS ({elapsed:.2}s, budget {budget_s}s)");
    assert!(
        elapsed < budget_s,
        "{id} exceeded its {budget_s}s budget: {elapsed:.2}s"
    );
}

fn q8() -> FiniteGroup {
    let i = Cyclotomic::zeta(4);
    let zero = Cyclotomic::zero(4);
    let one = Cyclotomic::one(4);
    let a = CycMatrix::from_rows(
        4,
        vec![vec![i.clone(), zero.clone()], vec![zero.clone(), i.neg()]],
    )
    .unwrap();
    let b = CycMatrix::from_rows(
        4,
        vec![vec![zero.clone(), one.clone()], vec![one.neg(), zero]],
    )
    .unwrap();
    FiniteGroup::closure(&[a, b], 1000).unwrap()
}

fn s3() -> FiniteGroup {
    let e = |x: i64| Cyclotomic::from_integer(1, x);
    let r = CycMatrix::from_rows(1, vec![vec![e(0), e(-1)], vec![e(1), e(-1)]]).unwrap();
    let s = CycMatrix::from_rows(1, vec![vec![e(0), e(1)], vec![e(1), e(0)]]).unwrap();
    FiniteGroup::closure(&[r, s], 1000).unwrap()
}

fn rank1_module(weights: &[(i64, usize)]) -> WeightModule {
    WeightModule::new(
        FgAbelianGroup::free(1),
        weights.iter().map(|&(w, m)| (vec![bi(w)], m)).collect(),
    )
    .unwrap()
}

fn random_module(rng: &mut ChaCha8Rng, max_rank: usize, max_weights: usize) -> WeightModule {
    loop {
        let rank = rng.gen_range(1..=max_rank);
        let t = rng.gen_range(1..=max_weights);
        let weights: Vec<(Vec<BigInt>, usize)> = (0..t)
            .map(|_| {
                (
                    (0..rank).map(|_| bi(rng.gen_range(-3i64..=3))).collect(),
                    rng.gen_range(1..=2usize),
                )
            })
            .collect();
        if let Ok(m) = WeightModule::new(FgAbelianGroup::free(rank), weights) {
            return m;
        }
    }
}

/// Exact Q8 pipeline: order, admissibility, commutant, abelianization, and
/// the quadric Cox presentation.
#[test]
fn acceptance_a1_q8_pipeline() {
    let t0 = Instant::now();
    let g = q8();
    assert_eq!(g.order(), 8, "Q8 has order 8");
    assert!(!g.has_pseudoreflection().unwrap());

    let list = strata(&g, StrataOptions::default()).unwrap();
    let principal = list.iter().find(|s| s.principal).unwrap();
    assert!(principal.admissible, "principal stratum is admissible");

    let commutant = g.commutator_subgroup().unwrap();
    assert_eq!(commutant.order(), 2, "commutant is {{±E}}");
    let minus_e = CycMatrix::identity(4, 2)
        .scale(&BigRational::from_integer(bi(-1)));
    assert!(commutant.index_of(&minus_e).is_some());

    assert_eq!(
        principal.class_group,
        FgAbelianGroup::new(0, vec![bi(2), bi(2)]).unwrap(),
        "Q = Z/2 + Z/2"
    );

    let p = cox_presentation_finite(
        &principal.weyl,
        &principal.weyl_abelianization,
        CoxBounds {
            max_degree: None,
            rel_degree: Some(4),
        },
        principal.admissible,
    )
    .unwrap();
    assert_eq!(p.generators.len(), 3, "exactly 3 Cox generators");
    assert!(p.generators.iter().all(|g| g.degree == 2));
    assert_eq!(p.relations.len(), 1, "exactly 1 relation up to degree 4");
    let rel = &p.relations[0];
    assert!(rel.substitute(&p.generators).unwrap().is_zero());

    // the relation is a quadratic form in the three generators of rank 3,
    // i.e. the two-dimensional quadratic cone a*c - b^2 after a linear
    // change of coordinates
    let mut gram = CycMatrix::zero(p.generators[0].poly.order(), 3, 3);
    for (e, c) in &rel.terms {
        assert_eq!(e.iter().sum::<u32>(), 2, "relation is quadratic in the generators");
        let vars: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat(i).take(e[i] as usize)).collect();
        let (i, j) = (vars[0], vars[1]);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        if i == j {
            *gram.at_mut(i, i) = gram.at(i, i).add(c).unwrap();
        } else {
            let h = c.scale(&half);
            *gram.at_mut(i, j) = gram.at(i, j).add(&h).unwrap();
            *gram.at_mut(j, i) = gram.at(j, i).add(&h).unwrap();
        }
    }
    assert_eq!(gram.rank().unwrap(), 3, "rank-3 quadric");

    report("A1", "q8 pipeline", t0, 5.0);
}

/// Torus shadow of the tautological-plus-dual family: k = 1 inadmissible,
/// k = 2 admissible with Cl = Z, degrees (1,1,-1,-1), 4-ray cone.
#[test]
fn acceptance_a2_torus_shadow() {
    let t0 = Instant::now();
    let m1 = rank1_module(&[(1, 1), (-1, 1)]);
    let s1 = enumerate_strata(&m1, 16).unwrap();
    let p1 = s1.iter().find(|s| s.principal()).unwrap();
    assert!(!p1.admissible(), "k = 1: principal stratum not admissible");

    let m2 = rank1_module(&[(1, 2), (-1, 2)]);
    let s2 = enumerate_strata(&m2, 16).unwrap();
    let p2 = s2.iter().find(|s| s.principal()).unwrap();
    assert!(p2.admissible());
    assert_eq!(p2.class_group(), &FgAbelianGroup::free(1), "Cl = Z");

    let cox = cox_presentation(&m2, p2).unwrap();
    assert!(cox.certified);
    assert_eq!(cox.generators.len(), 4, "polynomial on 4 generators");
    let mut degrees: Vec<i64> = cox
        .generators
        .iter()
        .map(|g| i64::try_from(&g.cl_degree[0]).unwrap())
        .collect();
    degrees.sort();
    assert_eq!(degrees, vec![-1, -1, 1, 1], "degrees (1,1,-1,-1) up to the pinned sign");

    let cone = quotient_cone(&m2, p2).unwrap();
    assert_eq!(cone.ray_count(), 4, "exactly 4 extreme rays");

    report("A2", "torus quadric shadow", t0, 1.0);
}

/// The sign action on a line is a pseudoreflection group; its principal
/// stratum is not admissible.
#[test]
fn acceptance_a3_sign_shadow() {
    let t0 = Instant::now();
    let m = CycMatrix::from_rows(1, vec![vec![Cyclotomic::from_integer(1, -1)]]).unwrap();
    let g = FiniteGroup::closure(&[m], 1000).unwrap();
    assert!(g.has_pseudoreflection().unwrap(), "flagged as a pseudoreflection group");
    let list = strata(&g, StrataOptions::default()).unwrap();
    let principal = list.iter().find(|s| s.principal).unwrap();
    assert!(!principal.admissible);
    assert!(principal.pseudoreflection_witness.is_some());
    report("A3", "pseudoreflection shadow", t0, 1.0);
}

/// Boundary-singularity desk check on the quadric cone: the face scan finds
/// the singular locus exactly at the apex.
#[test]
fn acceptance_a4_boundary_scan() {
    let t0 = Instant::now();
    let m = rank1_module(&[(1, 2), (-1, 2)]);
    let list = enumerate_strata(&m, 16).unwrap();
    let p = list.iter().find(|s| s.principal()).unwrap();
    let r = boundary_singularity_report(&m, p, 12, 16).unwrap();
    match r.status {
        BoundaryStatus::Verified {
            faces,
            singular_exactly_on_boundary,
            boundary_empty,
            ..
        } => {
            assert!(singular_exactly_on_boundary);
            assert!(!boundary_empty);
            assert_eq!(faces.len(), 10);
            for f in &faces {
                assert_eq!(f.orbit_smooth, !f.ray_indices.is_empty());
                assert_eq!(f.meets_stratum, !f.ray_indices.is_empty());
            }
        }
        BoundaryStatus::Declined { reason } => panic!("declined: {reason}"),
    }
    report("A4", "singular exactly at the apex", t0, 1.0);
}

fn random_finite_group(rng: &mut ChaCha8Rng) -> FiniteGroup {
    let e = |x: i64| Cyclotomic::from_integer(1, x);
    let family = rng.gen_range(0..8);
    let base = match family {
        0 => {
            // cyclic on a plane
            let n = rng.gen_range(2..=10u32);
            let a = rng.gen_range(1..n) as i64;
            let z = Cyclotomic::zeta(n);
            let za = Cyclotomic::root_of_unity(n, a);
            let zero = Cyclotomic::zero(n);
            FiniteGroup::closure(
                &[CycMatrix::from_rows(n, vec![vec![z, zero.clone()], vec![zero, za]]).unwrap()],
                1000,
            )
            .unwrap()
        }
        1 => {
            // dihedral
            let n = rng.gen_range(3..=8u32);
            let z = Cyclotomic::zeta(n);
            let zinv = Cyclotomic::root_of_unity(n, -1);
            let zero = Cyclotomic::zero(n);
            let one = Cyclotomic::one(n);
            let rot =
                CycMatrix::from_rows(n, vec![vec![z, zero.clone()], vec![zero.clone(), zinv]])
                    .unwrap();
            let swap =
                CycMatrix::from_rows(n, vec![vec![zero.clone(), one.clone()], vec![one, zero]])
                    .unwrap();
            FiniteGroup::closure(&[rot, swap], 1000).unwrap()
        }
        2 => q8(),
        3 => s3(),
        4 => {
            // even sign changes with a coordinate cycle: order 12 in GL(3)
            let diag = CycMatrix::from_rows(
                1,
                vec![
                    vec![e(-1), e(0), e(0)],
                    vec![e(0), e(-1), e(0)],
                    vec![e(0), e(0), e(1)],
                ],
            )
            .unwrap();
            let cycle = CycMatrix::from_rows(
                1,
                vec![
                    vec![e(0), e(0), e(1)],
                    vec![e(1), e(0), e(0)],
                    vec![e(0), e(1), e(0)],
                ],
            )
            .unwrap();
            FiniteGroup::closure(&[diag, cycle], 1000).unwrap()
        }
        5 => {
            // Klein four group on the plane
            let a = CycMatrix::from_rows(1, vec![vec![e(-1), e(0)], vec![e(0), e(1)]]).unwrap();
            let b = CycMatrix::from_rows(1, vec![vec![e(1), e(0)], vec![e(0), e(-1)]]).unwrap();
            FiniteGroup::closure(&[a, b], 1000).unwrap()
        }
        6 => {
            // S3 x Z/2 in GL(3)
            let r = CycMatrix::from_rows(
                1,
                vec![
                    vec![e(0), e(-1), e(0)],
                    vec![e(1), e(-1), e(0)],
                    vec![e(0), e(0), e(1)],
                ],
            )
            .unwrap();
            let s = CycMatrix::from_rows(
                1,
                vec![
                    vec![e(0), e(1), e(0)],
                    vec![e(1), e(0), e(0)],
                    vec![e(0), e(0), e(-1)],
                ],
            )
            .unwrap();
            FiniteGroup::closure(&[r, s], 1000).unwrap()
        }
        _ => {
            // Z/3 x Z/3 on the plane
            let z = Cyclotomic::zeta(3);
            let zero = Cyclotomic::zero(3);
            let one = Cyclotomic::one(3);
            let a = CycMatrix::from_rows(3, vec![vec![z.clone(), zero.clone()], vec![zero.clone(), one.clone()]])
                .unwrap();
            let b = CycMatrix::from_rows(3, vec![vec![one, zero.clone()], vec![zero, z]]).unwrap();
            FiniteGroup::closure(&[a, b], 1000).unwrap()
        }
    };
    // conjugate by a small integer shear so matrices are not diagonal
    if rng.gen_bool(0.5) {
        let t = rng.gen_range(-1i64..=1);
        let n = base.cyclotomic_order();
        let dim = base.dim();
        let mut p = CycMatrix::identity(n, dim);
        if dim >= 2 {
            *p.at_mut(0, 1) = Cyclotomic::from_integer(n, t);
        }
        let pinv = p.inv().unwrap();
        let conj: Vec<CycMatrix> = base
            .elements()
            .iter()
            .map(|m| p.mul(m).unwrap().mul(&pinv).unwrap())
            .collect();
        FiniteGroup::from_elements(n, dim, conj).unwrap()
    } else {
        base
    }
}

/// Doubling property: every stratum of `V ⊕ V` is admissible, for random
/// torus modules and random finite groups, and every isotropy subgroup of
/// the base module reappears in the doubled one.
#[test]
fn acceptance_a5_doubling_property() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let m = random_module(&mut rng, 3, 5);
        let doubled = m.direct_sum_power(2).unwrap();
        let base = enumerate_strata(&m, 16).unwrap();
        let dlist = enumerate_strata(&doubled, 16).unwrap();
        for s in &dlist {
            assert!(s.admissible(), "counterexample module: {m:?}");
        }
        for s in &base {
            assert!(
                dlist
                    .iter()
                    .any(|d| d.isotropy_characters() == s.isotropy_characters()),
                "isotropy subgroup lost under doubling: {m:?}"
            );
        }
    }
    for _ in 0..10 {
        let g = random_finite_group(&mut rng);
        assert!(g.order() <= 48, "catalog stays at desk scale");
        let doubled = g.direct_sum_power(2).unwrap();
        let list = strata(&doubled, StrataOptions::default()).unwrap();
        for s in &list {
            assert!(
                s.admissible,
                "doubled finite stratum not admissible (order {})",
                g.order()
            );
        }
    }
    report("A5", "doubling gives admissible strata", t0, 60.0);
}

/// Multiplicity at least two: every stratum admissible and every Cox
/// presentation relation-free (polynomial).
#[test]
fn acceptance_a6_multiplicity_two_property() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..100 {
        let m = random_module(&mut rng, 3, 5).direct_sum_power(2).unwrap();
        // direct_sum_power(2) of mult 1..2 gives multiplicities 2 or 4
        for s in enumerate_strata(&m, 16).unwrap() {
            assert!(s.admissible(), "counterexample module: {m:?}");
            let cox = cox_presentation(&m, &s).unwrap();
            assert!(cox.certified);
            assert_eq!(
                cox.generators.len(),
                s.fixed_dim(&m),
                "polynomial ring on dim V^H generators"
            );
            // torus Cox rings are polynomial: the presentation carries no
            // relations by construction, and the generator degrees span
            // the class group because the fixed weights generate X(W)
        }
    }
    report("A6", "multiplicity >= 2 modules", t0, 30.0);
}

/// Molien/Reynolds consistency over a catalog of groups of order <= 48,
/// all degrees <= 8.
#[test]
fn acceptance_a7_molien_reynolds() {
    let t0 = Instant::now();
    let e = |x: i64| Cyclotomic::from_integer(1, x);
    let mut catalog: Vec<(&str, FiniteGroup)> = Vec::new();
    catalog.push((
        "sign on a line",
        FiniteGroup::closure(&[CycMatrix::from_rows(1, vec![vec![e(-1)]]).unwrap()], 1000).unwrap(),
    ));
    catalog.push((
        "minus identity on a plane",
        FiniteGroup::closure(
            &[CycMatrix::identity(1, 2).scale(&BigRational::from_integer(bi(-1)))],
            1000,
        )
        .unwrap(),
    ));
    catalog.push((
        "cyclic of order 4",
        FiniteGroup::closure(
            &[CycMatrix::from_rows(
                4,
                vec![
                    vec![Cyclotomic::zeta(4), Cyclotomic::zero(4)],
                    vec![Cyclotomic::zero(4), Cyclotomic::root_of_unity(4, -1)],
                ],
            )
            .unwrap()],
            1000,
        )
        .unwrap(),
    ));
    catalog.push((
        "Klein four diagonal",
        FiniteGroup::closure(
            &[
                CycMatrix::from_rows(1, vec![vec![e(-1), e(0)], vec![e(0), e(1)]]).unwrap(),
                CycMatrix::from_rows(1, vec![vec![e(1), e(0)], vec![e(0), e(-1)]]).unwrap(),
            ],
            1000,
        )
        .unwrap(),
    ));
    catalog.push(("quaternion group", q8()));
    catalog.push(("S3 reflection representation", s3()));
    {
        let z6 = Cyclotomic::zeta(6);
        let z6inv = Cyclotomic::root_of_unity(6, -1);
        let zero = Cyclotomic::zero(6);
        let one = Cyclotomic::one(6);
        let rot = CycMatrix::from_rows(6, vec![vec![z6, zero.clone()], vec![zero.clone(), z6inv]])
            .unwrap();
        let swap =
            CycMatrix::from_rows(6, vec![vec![zero.clone(), one.clone()], vec![one, zero]]).unwrap();
        catalog.push((
            "dihedral of order 12",
            FiniteGroup::closure(&[rot, swap], 1000).unwrap(),
        ));
    }
    catalog.push((
        "cyclic of order 48 on a line",
        FiniteGroup::closure(
            &[CycMatrix::from_rows(48, vec![vec![Cyclotomic::zeta(48)]]).unwrap()],
            1000,
        )
        .unwrap(),
    ));
    catalog.push((
        "alternating rotations doubled",
        s3().commutator_subgroup().unwrap().direct_sum_power(2).unwrap(),
    ));
    catalog.push(("S3 doubled", s3().direct_sum_power(2).unwrap()));

    for (name, g) in &catalog {
        assert!(g.order() <= 48);
        let molien = molien_series(g, 8).unwrap();
        let action = GroupAction::new(g, g.cyclotomic_order()).unwrap();
        let chi = trivial_character(g.order(), g.cyclotomic_order());
        for d in 0..=8u32 {
            let basis = invariant_basis(&action, &chi, d).unwrap();
            assert_eq!(
                BigInt::from(basis.len() as i64),
                molien[d as usize],
                "{name}: degree {d}"
            );
        }
    }
    report("A7", "Molien vs Reynolds spans", t0, 120.0);
}

/// Oracle equivalence: SNF vs gcd-of-minors, double description vs
/// Fourier-Motzkin, admissibility vs brute-force support enumeration.
#[test]
fn acceptance_a8_oracle_equivalence() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4096);

    // 500 random integer matrices up to 5x5
    for _ in 0..500 {
        let r = rng.gen_range(1..=5);
        let c = rng.gen_range(1..=5);
        let data: Vec<Vec<BigInt>> = (0..r)
            .map(|_| (0..c).map(|_| bi(rng.gen_range(-5i64..=5))).collect())
            .collect();
        let m = IntMat::from_rows(c, data).unwrap();
        let s = lunacox_core::abelian::snf(&m);
        let o = oracle::snf_invariant_factors_by_minors(&m);
        assert_eq!(s.d, o, "SNF mismatch on {m:?}");
    }

    // 50 random weight maps, ambient dimension <= 6
    let mut done = 0;
    while done < 50 {
        let n = rng.gen_range(1..=6usize);
        let p = rng.gen_range(1..=3usize);
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|_| (0..p).map(|_| bi(rng.gen_range(-3i64..=3))).collect())
            .collect();
        let weights = IntMat::from_rows(p, rows).unwrap();
        let l = lunacox_core::abelian::kernel_basis(&weights);
        let dd = extreme_rays(&l, n).unwrap();
        let fm = oracle::extreme_rays_fourier_motzkin(&weights);
        assert_eq!(dd.rays(), &fm[..], "ray mismatch on {weights:?}");
        done += 1;
    }

    // 100 random modules: admissibility against brute-force enumeration
    let mut checked = 0;
    while checked < 100 {
        let m = random_module(&mut rng, 2, 3);
        for s in enumerate_strata(&m, 16).unwrap() {
            let fixed: Vec<(Vec<BigInt>, Vec<BigRational>, usize)> = s
                .fixed_weights()
                .iter()
                .map(|&i| {
                    (
                        m.weights()[i].coords().to_vec(),
                        m.free_part(i),
                        m.weights()[i].multiplicity(),
                    )
                })
                .collect();
            let brute =
                oracle::admissible_bruteforce(m.character_group(), s.isotropy_characters(), &fixed)
                    .unwrap();
            assert_eq!(s.admissible(), brute, "module {m:?}");
            checked += 1;
        }
    }

    report("A8", "oracle equivalence", t0, 120.0);
}

/// Weyl A2 doubled: S3 on two copies of its reflection representation is
/// admissible with Cl = Z/2, and the commutant-invariant generators
/// reproduce the Molien dimensions degree by degree up to 6.
#[test]
fn acceptance_a9_weyl_a2_doubled() {
    let t0 = Instant::now();
    let g = s3().direct_sum_power(2).unwrap();
    let list = strata(&g, StrataOptions::default()).unwrap();
    let principal = list.iter().find(|s| s.principal).unwrap();
    assert!(principal.admissible);
    assert_eq!(
        principal.class_group,
        FgAbelianGroup::new(0, vec![bi(2)]).unwrap(),
        "Cl = Z/2"
    );

    let p = cox_presentation_finite(
        &principal.weyl,
        &principal.weyl_abelianization,
        CoxBounds::default(),
        principal.admissible,
    )
    .unwrap();
    assert!(p.complete_generators, "Noether bound reached");
    let deg2 = p.generators.iter().filter(|g| g.degree == 2).count();
    let deg3 = p.generators.iter().filter(|g| g.degree == 3).count();
    assert_eq!((deg2, deg3), (4, 8), "generator degrees of the doubled rotations");

    // Molien series of the commutant on K^4, frozen from the hand expansion
    // of (1/3)[1/(1-t)^4 + 2/(1+t+t^2)^2]
    let commutant = principal.weyl.commutator_subgroup().unwrap();
    assert_eq!(commutant.order(), 3);
    let molien = molien_series(&commutant, 6).unwrap();
    let frozen: Vec<BigInt> = [1i64, 0, 4, 8, 9, 20, 30].iter().map(|&x| bi(x)).collect();
    assert_eq!(molien, frozen);

    let dims = subalgebra_dims(&p.generators, 4, 6).unwrap();
    for d in 0..=6usize {
        assert_eq!(
            BigInt::from(dims[d] as i64),
            molien[d],
            "generated subalgebra matches the invariant ring in degree {d}"
        );
    }
    report("A9", "Weyl A2 doubled", t0, 30.0);
}

/// Strictly positive weights never balance; the zero module convention.
#[test]
fn sanity_relint_conventions() {
    assert!(relint_contains_zero(&[]).unwrap());
    let v = vec![vec![BigRational::from_integer(bi(1))]];
    assert!(!relint_contains_zero(&v).unwrap());
}
