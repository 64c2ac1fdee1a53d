use super::model::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Which sections of the report a subcommand shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportView {
    /// strata, admissibility and class groups only
    Strata,
    /// strata plus Cox presentations
    Cox,
    /// everything
    Full,
}

/// Deterministic serialization of a report. The same report emits the same
/// bytes, and the JSON form re-parses into an equal report.
pub fn emit(report: &StratificationReport, format: Format, view: ReportView) -> Vec<u8> {
    assert!(
        !report.strata.is_empty(),
        "a report always contains the origin stratum"
    );
    let trimmed = trim_to_view(report, view);
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&trimmed).expect("report serializes");
            out.push(b'\n');
            out
        }
        Format::Text => render_text(&trimmed).into_bytes(),
    }
}

fn trim_to_view(report: &StratificationReport, view: ReportView) -> StratificationReport {
    let mut r = report.clone();
    match view {
        ReportView::Full => r,
        ReportView::Cox => {
            for s in &mut r.strata {
                s.quotient_cone = None;
                s.boundary = None;
            }
            r.quotient_presentation = None;
            r
        }
        ReportView::Strata => {
            for s in &mut r.strata {
                s.cox = None;
                s.quotient_cone = None;
                s.boundary = None;
            }
            r.quotient_presentation = None;
            r
        }
    }
}

fn render_text(r: &StratificationReport) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    push(&mut out, format!("{} {}", r.tool.name, r.tool.version));
    match r.input.kind.as_str() {
        "torus_module" => {
            push(
                &mut out,
                format!(
                    "quasitorus module over X(T) = {}, dimension {}",
                    r.input.character_group.as_deref().unwrap_or("?"),
                    r.input.module_dimension.unwrap_or(0)
                ),
            );
            if let Some(ws) = &r.input.weights {
                for (i, w) in ws.iter().enumerate() {
                    push(
                        &mut out,
                        format!("  weight {}: ({}) x{}", i, w.coords.join(", "), w.multiplicity),
                    );
                }
            }
        }
        _ => {
            push(
                &mut out,
                format!(
                    "finite matrix group over Q(zeta_{}), dimension {}, order {}",
                    r.input.cyclotomic_order.unwrap_or(1),
                    r.input.dimension.unwrap_or(0),
                    r.input.group_order.unwrap_or(0)
                ),
            );
        }
    }
    push(&mut out, format!("strata: {}", r.strata.len()));
    for s in &r.strata {
        push(&mut out, String::new());
        let tag = if s.principal { " (principal)" } else { "" };
        push(&mut out, format!("stratum {}{}", s.id, tag));
        if let Some(sub) = &s.isotropy.character_subgroup {
            let rows: Vec<String> = sub.iter().map(|r| format!("({})", r.join(", "))).collect();
            push(&mut out, format!("  X(W) basis: [{}]", rows.join(", ")));
        }
        if let Some(xh) = &s.isotropy.isotropy_character_group {
            push(&mut out, format!("  X(H) = {xh}"));
        }
        if let Some(order) = s.isotropy.order {
            push(
                &mut out,
                format!(
                    "  |H| = {order}, conjugacy class size {}, |N_G(H)| = {}, |W| = {}",
                    s.isotropy.conjugacy_class_size.unwrap_or(1),
                    s.isotropy.normalizer_order.unwrap_or(0),
                    s.isotropy.weyl_order.unwrap_or(0)
                ),
            );
        }
        push(
            &mut out,
            format!("  dim V^H = {}", s.isotropy.fixed_dimension),
        );
        push(
            &mut out,
            format!(
                "  admissible: {}{}",
                s.admissible,
                match (&s.admissibility.bad_support, &s.admissibility.pseudoreflection) {
                    (Some(bad), _) => format!(" (bad support: {bad:?})"),
                    (_, Some(_)) => " (pseudoreflection witness found)".to_string(),
                    _ => String::new(),
                }
            ),
        );
        push(
            &mut out,
            format!(
                "  class group: {}{}",
                s.class_group,
                if s.class_group_certified {
                    ""
                } else {
                    " (not certified: stratum not admissible)"
                }
            ),
        );
        if let Some(cox) = &s.cox {
            push(
                &mut out,
                format!(
                    "  Cox presentation: {} generators, {} relations (degrees <= {}, relations <= {}){}",
                    cox.generators.len(),
                    cox.relations.len(),
                    cox.degree_bound,
                    cox.relation_bound.map_or("-".to_string(), |b| b.to_string()),
                    if cox.complete_generators { "" } else { " [generators possibly incomplete]" }
                ),
            );
            for g in &cox.generators {
                push(
                    &mut out,
                    format!(
                        "    gen deg {} cl ({}): {}",
                        g.degree,
                        g.cl_degree.join(", "),
                        g.poly
                    ),
                );
            }
            for rel in &cox.relations {
                push(&mut out, format!("    relation: {rel}"));
            }
        }
        if let Some(cone) = &s.quotient_cone {
            let rays: Vec<String> = cone.rays.iter().map(|r| format!("({})", r.join(", "))).collect();
            push(
                &mut out,
                format!(
                    "  quotient cone of Norm(closure): {} extreme rays in dim {}: {}",
                    cone.rays.len(),
                    cone.ambient_dimension,
                    rays.join(" ")
                ),
            );
        }
        if let Some(b) = &s.boundary {
            match b.status.as_str() {
                "verified" => {
                    push(
                        &mut out,
                        format!(
                            "  boundary scan: singular exactly on boundary = {}, boundary empty = {}",
                            b.singular_exactly_on_boundary.unwrap_or(false),
                            b.boundary_empty.unwrap_or(false)
                        ),
                    );
                    if let Some(faces) = &b.faces {
                        for f in faces {
                            push(
                                &mut out,
                                format!(
                                    "    face {:?}: orbit smooth = {}, meets stratum = {}",
                                    f.ray_indices, f.orbit_smooth, f.meets_stratum
                                ),
                            );
                        }
                    }
                }
                _ => push(
                    &mut out,
                    format!(
                        "  boundary scan declined: {}",
                        b.reason.as_deref().unwrap_or("")
                    ),
                ),
            }
        }
    }
    if let Some(qp) = &r.quotient_presentation {
        push(&mut out, String::new());
        push(
            &mut out,
            format!(
                "quotient V//G: {} invariant generators up to degree {}{}",
                qp.generators.len(),
                qp.degree_bound,
                if qp.complete_generators { "" } else { " (possibly incomplete)" }
            ),
        );
        for g in &qp.generators {
            push(&mut out, format!("  deg {}: {}", g.degree, g.poly));
        }
    }
    if !r.warnings.is_empty() {
        push(&mut out, String::new());
        for w in &r.warnings {
            push(&mut out, format!("warning: {w}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{parse, run, RunConfig};

    fn sample_report() -> StratificationReport {
        let spec = parse(
            r#"{
            "kind": "torus_module",
            "rank": 1,
            "weights": [
                {"vector": [1], "multiplicity": 2},
                {"vector": [-1], "multiplicity": 2}
            ]
        }"#,
        )
        .unwrap();
        run(&spec, RunConfig::default()).unwrap()
    }

    #[test]
    fn emission_is_deterministic_and_roundtrips() {
        let report = sample_report();
        let a = emit(&report, Format::Json, ReportView::Full);
        let b = emit(&report, Format::Json, ReportView::Full);
        assert_eq!(a, b, "identical bytes for the same report");
        let parsed: StratificationReport = serde_json::from_slice(&a).unwrap();
        assert_eq!(parsed, report);
        let c = emit(&parsed, Format::Json, ReportView::Full);
        assert_eq!(a, c, "byte-identical after a round trip");
    }

    #[test]
    fn text_rendering_mentions_the_verdicts() {
        let report = sample_report();
        let text = String::from_utf8(emit(&report, Format::Text, ReportView::Full)).unwrap();
        assert!(text.contains("principal"));
        assert!(text.contains("class group: Z"));
        assert!(text.contains("singular exactly on boundary = true"));
    }

    #[test]
    fn views_trim_sections() {
        let report = sample_report();
        let s = emit(&report, Format::Json, ReportView::Strata);
        let parsed: StratificationReport = serde_json::from_slice(&s).unwrap();
        assert!(parsed.strata.iter().all(|x| x.cox.is_none()));
        assert!(parsed.quotient_presentation.is_none());
    }
}
