use serde::{Deserialize, Serialize};

/// Full stratification report. Serialization is deterministic: field order
/// is fixed, every list is built in a canonical order, and all numerics are
/// integers or `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratificationReport {
    pub tool: ToolInfo,
    pub input: InputSummary,
    pub conventions: Conventions,
    pub bounds: BoundsUsed,
    pub strata: Vec<StratumReport>,
    pub quotient_presentation: Option<PresentationReport>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSummary {
    pub kind: String,
    /// display form of the ambient character group (torus regime)
    pub character_group: Option<String>,
    pub weights: Option<Vec<WeightSummary>>,
    pub module_dimension: Option<usize>,
    /// finite regime
    pub cyclotomic_order: Option<u32>,
    pub dimension: Option<usize>,
    pub generator_count: Option<usize>,
    pub group_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSummary {
    pub coords: Vec<String>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub hnf: String,
    pub snf: String,
    pub class_group_coordinates: String,
    pub empty_support: String,
    pub term_order: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            hnf: "row-style upper echelon, positive pivots, entries above pivots reduced into [0, pivot)".into(),
            snf: "nonnegative invariant factors in a divisibility chain, zero factors last".into(),
            class_group_coordinates: "pinned by the SNF change of basis of the subgroup structure computation; free coordinates first, then torsion in increasing invariant-factor order".into(),
            empty_support: "the empty weight set is balanced by convention, so the origin stratum always exists".into(),
            term_order: "graded lexicographic; generator spaces canonicalized by reduced row echelon form".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsUsed {
    pub cap_weights: usize,
    pub cap_order: usize,
    pub cap_arrangement: usize,
    pub cap_rays: usize,
    pub cap_boundary_dim: usize,
    pub cyclotomic_ceiling: u32,
    pub max_degree: Option<u32>,
    pub rel_degree: Option<u32>,
    pub oracle: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumReport {
    pub id: usize,
    pub principal: bool,
    pub isotropy: IsotropyReport,
    pub admissible: bool,
    pub admissibility: AdmissibilityReport,
    /// abstract class group; certified as the divisor class group of the
    /// stratum only when the stratum is admissible
    pub class_group: String,
    pub class_group_certified: bool,
    pub cox: Option<PresentationReport>,
    pub quotient_cone: Option<ConeReport>,
    pub boundary: Option<BoundaryScanReport>,
}

/// Isotropy descriptor. In the torus regime the subgroup of characters; in
/// the finite regime the subgroup order and witness data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsotropyReport {
    /// torus: canonical basis rows of the character subgroup X(W)
    pub character_subgroup: Option<Vec<Vec<String>>>,
    /// torus: structure of X(H) = X(T)/X(W)
    pub isotropy_character_group: Option<String>,
    pub support: Option<Vec<usize>>,
    pub fixed_weights: Option<Vec<usize>>,
    /// finite regime
    pub order: Option<usize>,
    pub conjugacy_class_size: Option<usize>,
    pub normalizer_order: Option<usize>,
    pub weyl_order: Option<usize>,
    pub witness_point: Option<Vec<String>>,
    /// dimension of V^H in either regime
    pub fixed_dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub verdict: bool,
    /// torus: supports checked good, or the violating support
    pub checked_supports: Option<Vec<Vec<usize>>>,
    pub bad_support: Option<Vec<usize>>,
    pub bad_support_generates: Option<bool>,
    pub bad_support_closed: Option<bool>,
    /// finite: pseudoreflection witness, if any
    pub pseudoreflection: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub variables: usize,
    pub class_group: String,
    pub generators: Vec<GeneratorReport>,
    pub relations: Vec<String>,
    pub degree_bound: u32,
    pub relation_bound: Option<u32>,
    pub complete_generators: bool,
    /// the identification with the Cox ring holds only for admissible
    /// strata
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub poly: String,
    pub degree: u32,
    pub cl_degree: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeReport {
    /// the affine toric variety V^H // W, the normalization of the stratum
    /// closure, described by its Gale-dual cone
    pub ambient_dimension: usize,
    pub rays: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryScanReport {
    pub status: String,
    pub reason: Option<String>,
    pub faces: Option<Vec<FaceReport>>,
    pub singular_exactly_on_boundary: Option<bool>,
    pub boundary_empty: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceReport {
    pub ray_indices: Vec<usize>,
    pub orbit_smooth: bool,
    pub meets_stratum: bool,
}
