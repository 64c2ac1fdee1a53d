use crate::cyclotomic::{euler_phi, CycMatrix, Cyclotomic};
use num::{BigInt, BigRational, Zero};
use serde_json::Value;
use std::fmt;
use std::str::FromStr;

/// One schema violation, with the JSON path that caused it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Clone)]
pub struct TorusProblem {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    /// weight coordinates (free then torsion) with multiplicities
    pub weights: Vec<(Vec<BigInt>, usize)>,
}

#[derive(Debug, Clone)]
pub struct FiniteProblem {
    pub cyclotomic_order: u32,
    pub dimension: usize,
    pub generators: Vec<CycMatrix>,
}

#[derive(Debug, Clone)]
pub enum ProblemKind {
    TorusModule(TorusProblem),
    FiniteGroup(FiniteProblem),
}

#[derive(Debug, Clone)]
pub struct Options {
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

impl Default for Options {
    fn default() -> Self {
        Options {
            cap_weights: crate::torus::DEFAULT_WEIGHT_CAP,
            cap_order: crate::group::DEFAULT_ORDER_CAP,
            cap_arrangement: crate::group::DEFAULT_ARRANGEMENT_CAP,
            cap_rays: 12,
            cap_boundary_dim: 16,
            cyclotomic_ceiling: crate::cyclotomic::DEFAULT_CYCLOTOMIC_CEILING,
            max_degree: None,
            rel_degree: None,
            oracle: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    pub options: Options,
}

struct Validator {
    errors: Vec<SchemaError>,
}

impl Validator {
    fn err(&mut self, path: &str, message: impl Into<String>) {
        self.errors.push(SchemaError {
            path: path.to_string(),
            message: message.into(),
        });
    }

    fn usize_field(
        &mut self,
        obj: &serde_json::Map<String, Value>,
        path: &str,
        name: &str,
    ) -> Option<usize> {
        match obj.get(name) {
            Some(Value::Number(n)) if n.is_u64() => Some(n.as_u64().unwrap() as usize),
            Some(_) => {
                self.err(&format!("{path}.{name}"), "expected a nonnegative integer");
                None
            }
            None => {
                self.err(path, format!("missing field \"{name}\""));
                None
            }
        }
    }

    fn bigint(&mut self, v: &Value, path: &str) -> Option<BigInt> {
        match v {
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Some(BigInt::from(i))
                } else if let Some(u) = n.as_u64() {
                    Some(BigInt::from(u))
                } else {
                    self.err(path, "floats are not accepted; integers must be exact");
                    None
                }
            }
            Value::String(s) => match BigInt::from_str(s.trim()) {
                Ok(i) => Some(i),
                Err(_) => {
                    self.err(path, format!("not an integer: {s:?}"));
                    None
                }
            },
            _ => {
                self.err(path, "expected an integer (number or string)");
                None
            }
        }
    }

    /// Rationals travel as integers or `"p/q"` strings; non-reduced input
    /// is accepted and normalized.
    fn rational(&mut self, v: &Value, path: &str) -> Option<BigRational> {
        match v {
            Value::Number(_) => self.bigint(v, path).map(BigRational::from_integer),
            Value::String(s) => {
                let s = s.trim();
                let (num, den) = match s.split_once('/') {
                    Some((a, b)) => (a.trim(), b.trim()),
                    None => (s, "1"),
                };
                let n = match BigInt::from_str(num) {
                    Ok(n) => n,
                    Err(_) => {
                        self.err(path, format!("bad numerator in {s:?}"));
                        return None;
                    }
                };
                let d = match BigInt::from_str(den) {
                    Ok(d) => d,
                    Err(_) => {
                        self.err(path, format!("bad denominator in {s:?}"));
                        return None;
                    }
                };
                if d.is_zero() {
                    self.err(path, "zero denominator");
                    return None;
                }
                Some(BigRational::new(n, d))
            }
            _ => {
                self.err(path, "expected a rational: integer or \"p/q\" string");
                None
            }
        }
    }
}

/// Parses and validates a problem description; on failure returns all
/// violations found, each with its JSON path.
pub fn parse(text: &str) -> Result<ProblemSpec, Vec<SchemaError>> {
    let value: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => {
            return Err(vec![SchemaError {
                path: "$".into(),
                message: format!("malformed JSON: {e}"),
            }])
        }
    };
    let mut v = Validator { errors: Vec::new() };
    let root = match value.as_object() {
        Some(o) => o,
        None => {
            return Err(vec![SchemaError {
                path: "$".into(),
                message: "top level must be an object".into(),
            }])
        }
    };

    let options = parse_options(&mut v, root);

    let kind = match root.get("kind").and_then(|k| k.as_str()) {
        Some("torus_module") => parse_torus(&mut v, root).map(ProblemKind::TorusModule),
        Some("finite_group") => parse_finite(&mut v, root).map(ProblemKind::FiniteGroup),
        Some(other) => {
            v.err(
                "$.kind",
                format!("unknown kind {other:?}; expected \"torus_module\" or \"finite_group\""),
            );
            None
        }
        None => {
            v.err("$", "missing field \"kind\"");
            None
        }
    };

    match (kind, v.errors.is_empty()) {
        (Some(kind), true) => Ok(ProblemSpec { kind, options }),
        _ => Err(v.errors),
    }
}

fn parse_torus(v: &mut Validator, root: &serde_json::Map<String, Value>) -> Option<TorusProblem> {
    let rank = v.usize_field(root, "$", "rank")?;
    let mut torsion: Vec<BigInt> = Vec::new();
    if let Some(t) = root.get("torsion") {
        match t.as_array() {
            Some(arr) => {
                for (i, d) in arr.iter().enumerate() {
                    let path = format!("$.torsion[{i}]");
                    if let Some(d) = v.bigint(d, &path) {
                        if d < BigInt::from(2) {
                            v.err(&path, "invariant factors must be at least 2");
                        } else {
                            torsion.push(d);
                        }
                    }
                }
            }
            None => v.err("$.torsion", "expected an array of integers"),
        }
    }
    for w in torsion.windows(2) {
        if !(&w[1] % &w[0]).is_zero() {
            v.err(
                "$.torsion",
                format!(
                    "invariant factors must form a divisibility chain ({} does not divide {}); \
                     give the group in invariant-factor form",
                    w[0], w[1]
                ),
            );
        }
    }

    let coords = rank + torsion.len();
    let mut weights: Vec<(Vec<BigInt>, usize)> = Vec::new();
    match root.get("weights").and_then(|w| w.as_array()) {
        Some(arr) => {
            for (i, w) in arr.iter().enumerate() {
                let path = format!("$.weights[{i}]");
                let obj = match w.as_object() {
                    Some(o) => o,
                    None => {
                        v.err(&path, "expected an object {vector, torsion_part?, multiplicity}");
                        continue;
                    }
                };
                let mut coord_vec: Vec<BigInt> = Vec::new();
                match obj.get("vector").and_then(|x| x.as_array()) {
                    Some(vecarr) => {
                        if vecarr.len() != rank {
                            v.err(
                                &format!("{path}.vector"),
                                format!("expected {rank} coordinates, got {}", vecarr.len()),
                            );
                        }
                        for (j, x) in vecarr.iter().enumerate() {
                            if let Some(b) = v.bigint(x, &format!("{path}.vector[{j}]")) {
                                coord_vec.push(b);
                            }
                        }
                    }
                    None => v.err(&format!("{path}.vector"), "expected an integer array"),
                }
                match obj.get("torsion_part") {
                    Some(tp) => match tp.as_array() {
                        Some(tparr) => {
                            if tparr.len() != torsion.len() {
                                v.err(
                                    &format!("{path}.torsion_part"),
                                    format!(
                                        "expected {} coordinates, got {}",
                                        torsion.len(),
                                        tparr.len()
                                    ),
                                );
                            }
                            for (j, x) in tparr.iter().enumerate() {
                                if let Some(b) =
                                    v.bigint(x, &format!("{path}.torsion_part[{j}]"))
                                {
                                    coord_vec.push(b);
                                }
                            }
                        }
                        None => {
                            v.err(&format!("{path}.torsion_part"), "expected an integer array")
                        }
                    },
                    None => {
                        coord_vec.extend(std::iter::repeat(BigInt::zero()).take(torsion.len()))
                    }
                }
                let mult = match obj.get("multiplicity") {
                    Some(Value::Number(n)) if n.is_u64() && n.as_u64().unwrap() >= 1 => {
                        n.as_u64().unwrap() as usize
                    }
                    Some(_) => {
                        v.err(&format!("{path}.multiplicity"), "expected a positive integer");
                        continue;
                    }
                    None => {
                        v.err(&path, "missing field \"multiplicity\"");
                        continue;
                    }
                };
                if coord_vec.len() == coords {
                    // reduce torsion coordinates before the duplicate check
                    for (j, d) in torsion.iter().enumerate() {
                        let c = &mut coord_vec[rank + j];
                        *c = ((&*c % d) + d) % d;
                    }
                    if weights.iter().any(|(c, _)| c == &coord_vec) {
                        v.err(
                            &path,
                            "duplicate weight (after torsion reduction); merge multiplicities",
                        );
                    } else {
                        weights.push((coord_vec, mult));
                    }
                }
            }
        }
        None => v.err("$.weights", "expected an array of weights"),
    }

    if v.errors.is_empty() {
        Some(TorusProblem {
            rank,
            torsion,
            weights,
        })
    } else {
        None
    }
}

fn parse_finite(v: &mut Validator, root: &serde_json::Map<String, Value>) -> Option<FiniteProblem> {
    let order = match v.usize_field(root, "$", "cyclotomic_order") {
        Some(n) if n >= 1 => n as u32,
        Some(_) => {
            v.err("$.cyclotomic_order", "must be at least 1");
            return None;
        }
        None => return None,
    };
    let dim = v.usize_field(root, "$", "dimension")?;
    let phi = euler_phi(order) as usize;

    let mut generators = Vec::new();
    match root.get("generators").and_then(|g| g.as_array()) {
        Some(arr) => {
            for (gi, gen) in arr.iter().enumerate() {
                let gpath = format!("$.generators[{gi}]");
                let rows = match gen.as_array() {
                    Some(r) => r,
                    None => {
                        v.err(&gpath, "expected a matrix: an array of rows");
                        continue;
                    }
                };
                if rows.len() != dim {
                    v.err(&gpath, format!("expected {dim} rows, got {}", rows.len()));
                    continue;
                }
                let mut entries = Vec::with_capacity(dim * dim);
                let mut ok = true;
                for (ri, row) in rows.iter().enumerate() {
                    let rpath = format!("{gpath}[{ri}]");
                    let cols = match row.as_array() {
                        Some(c) => c,
                        None => {
                            v.err(&rpath, "expected a row: an array of entries");
                            ok = false;
                            continue;
                        }
                    };
                    if cols.len() != dim {
                        v.err(&rpath, format!("expected {dim} entries, got {}", cols.len()));
                        ok = false;
                        continue;
                    }
                    for (ci, entry) in cols.iter().enumerate() {
                        let epath = format!("{rpath}[{ci}]");
                        match parse_entry(v, entry, &epath, order, phi) {
                            Some(c) => entries.push(c),
                            None => ok = false,
                        }
                    }
                }
                if ok && entries.len() == dim * dim {
                    match CycMatrix::new(order, dim, dim, entries) {
                        Ok(m) => generators.push(m),
                        Err(e) => v.err(&gpath, e.to_string()),
                    }
                }
            }
        }
        None => v.err("$.generators", "expected an array of matrices"),
    }

    if v.errors.is_empty() {
        Some(FiniteProblem {
            cyclotomic_order: order,
            dimension: dim,
            generators,
        })
    } else {
        None
    }
}

/// A matrix entry: either a single rational (a rational constant) or an
/// array of rationals, the coefficient vector in the power basis of
/// `Q(ζ_N)`.
fn parse_entry(
    v: &mut Validator,
    entry: &Value,
    path: &str,
    order: u32,
    phi: usize,
) -> Option<Cyclotomic> {
    match entry {
        Value::Array(coeffs) => {
            if coeffs.len() > phi {
                v.err(
                    path,
                    format!("at most {phi} power-basis coefficients for order {order}"),
                );
                return None;
            }
            let mut poly = Vec::with_capacity(coeffs.len());
            for (i, c) in coeffs.iter().enumerate() {
                poly.push(v.rational(c, &format!("{path}[{i}]"))?);
            }
            Some(Cyclotomic::from_poly(order, poly))
        }
        _ => {
            let q = v.rational(entry, path)?;
            Some(Cyclotomic::from_rational(order, q))
        }
    }
}

fn parse_options(v: &mut Validator, root: &serde_json::Map<String, Value>) -> Options {
    let mut options = Options::default();
    let obj = match root.get("options") {
        None => return options,
        Some(Value::Object(o)) => o,
        Some(_) => {
            v.err("$.options", "expected an object");
            return options;
        }
    };
    for (key, val) in obj {
        let path = format!("$.options.{key}");
        match key.as_str() {
            "cap_weights" => set_usize(v, val, &path, &mut options.cap_weights),
            "cap_order" => set_usize(v, val, &path, &mut options.cap_order),
            "cap_arrangement" => set_usize(v, val, &path, &mut options.cap_arrangement),
            "cap_rays" => set_usize(v, val, &path, &mut options.cap_rays),
            "cap_boundary_dim" => set_usize(v, val, &path, &mut options.cap_boundary_dim),
            "cyclotomic_ceiling" => {
                let mut tmp = options.cyclotomic_ceiling as usize;
                set_usize(v, val, &path, &mut tmp);
                options.cyclotomic_ceiling = tmp as u32;
            }
            "max_degree" => options.max_degree = get_u32(v, val, &path),
            "rel_degree" => options.rel_degree = get_u32(v, val, &path),
            "oracle" => match val.as_bool() {
                Some(b) => options.oracle = b,
                None => v.err(&path, "expected a boolean"),
            },
            other => v.err(&path, format!("unknown option {other:?}")),
        }
    }
    options
}

fn set_usize(v: &mut Validator, val: &Value, path: &str, target: &mut usize) {
    match val.as_u64() {
        Some(x) => *target = x as usize,
        None => v.err(path, "expected a nonnegative integer"),
    }
}

fn get_u32(v: &mut Validator, val: &Value, path: &str) -> Option<u32> {
    match val.as_u64() {
        Some(x) if x <= u32::MAX as u64 => Some(x as u32),
        _ => {
            v.err(path, "expected a nonnegative integer");
            None
        }
    }
}
