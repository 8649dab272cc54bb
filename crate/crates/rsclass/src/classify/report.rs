//! Human-readable and CSV renderings of the classification reports.

use super::{Check, LargeOrderReport, LocusReport, SurfaceRecord};
use std::fmt::Write;

fn pass_fail(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn check_line(out: &mut String, c: &Check) {
    if c.pass {
        let _ = writeln!(out, "{} {}: {}", pass_fail(true), c.name, c.computed);
    } else {
        let _ = writeln!(out, "{} {}: expected {}, computed {}", pass_fail(false), c.name, c.expected, c.computed);
    }
}

fn surface_lines(out: &mut String, r: &SurfaceRecord) {
    let _ = writeln!(out, "  {}", r.label);
    if r.members.len() > 1 {
        let _ = writeln!(out, "    same surface as: {}", r.members.join(", "));
    }
    let _ = writeln!(out, "    acting:   {} {} [{}]", r.acting.group, r.acting.signature, r.acting.ske.join(", "));
    let mut full = format!("{} {} [{}]", r.full_aut.group, r.full_aut.signature, r.full_aut.ske.join(", "));
    if let Some(n) = &r.identified_as {
        full.push_str(&format!(" = {n}"));
    }
    if !r.full_aut_complete {
        full.push_str(" (supergroup list not provably complete)");
    }
    let _ = writeln!(out, "    full aut: {full}");
    let _ = writeln!(out, "    curve:    {}", r.curve.equation);
    let dims: Vec<String> = r.jacobian.nonzero().iter().map(|(d, n, dim)| format!("B(deg {d}, dim {dim})^{n}")).collect();
    let _ = writeln!(out, "    jacobian: {}", dims.join(" x "));
}

pub fn render_large_text(r: &LargeOrderReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "large orders, p = {}, genus {}", r.prime, r.genus);
    let _ = writeln!(out, "cap: {}", r.cap);
    let _ = writeln!(out, "{:>6} {:>6}  {:<24} detail", "lambda", "order", "verdict");
    for row in &r.rows {
        let detail: Vec<String> = row
            .signatures
            .iter()
            .map(|s| {
                let mut d = format!("{}: {} classes in {} groups", s.signature, s.classes.len(), s.groups_searched);
                if !s.complete {
                    d.push_str(" (incomplete)");
                }
                d
            })
            .collect();
        let detail = if detail.is_empty() { "no admissible signature".to_string() } else { detail.join("; ") };
        let _ = writeln!(out, "{:>6} {:>6}  {:<24} {}", row.lambda, row.order, row.verdict.as_str(), detail);
        for c in row.classes() {
            let _ = writeln!(out, "{:>15}{} {} [{}]", "", c.group, c.signature, c.ske.join(", "));
        }
    }
    out
}

pub fn render_large_csv(r: &LargeOrderReport) -> String {
    let mut out = String::from("lambda,order,verdict,signature,groups_searched,complete,classes\n");
    for row in &r.rows {
        if row.signatures.is_empty() {
            let _ = writeln!(out, "{},{},{},,0,true,0", row.lambda, row.order, row.verdict.as_str());
        }
        for s in &row.signatures {
            let _ = writeln!(
                out,
                "{},{},{},\"{}\",{},{},{}",
                row.lambda,
                row.order,
                row.verdict.as_str(),
                s.signature,
                s.groups_searched,
                s.complete,
                s.classes.len()
            );
        }
    }
    out
}

pub fn render_checks_csv(r: &LocusReport) -> String {
    let mut out = String::from("status,check,expected,computed\n");
    let q = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
    for c in &r.checks {
        let _ = writeln!(out, "{},{},{},{}", pass_fail(c.pass), q(&c.name), q(&c.expected), q(&c.computed));
    }
    out
}

pub fn render_text(r: &LocusReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "locus of genus {} surfaces with {} automorphisms, p = {}", r.genus, 4 * r.prime, r.prime);
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "\nsignatures of order {}:", 4 * r.prime);
    for s in &r.signatures {
        let by: Vec<String> = s.realised_by.iter().map(|(g, n)| format!("{g} ({n} skes)")).collect();
        let by = if by.is_empty() { "not realised".to_string() } else { by.join(", ") };
        let _ = writeln!(out, "  {:<18} {}", s.signature, by);
    }
    let _ = writeln!(out, "\nfamilies:");
    for f in &r.families {
        let bound = f.class_bound.map(|b| format!(" (bound {b})")).unwrap_or_default();
        let _ = writeln!(
            out,
            "  {} = {} {}: {} topological classes{}; boundary {{{}}}",
            f.label,
            f.group,
            f.signature,
            f.topological_classes,
            bound,
            f.boundary.join(", ")
        );
        for c in &f.components {
            surface_lines(&mut out, c);
        }
    }
    let _ = writeln!(out, "\nquasiplatonic surfaces with a triangle action of order {}:", 4 * r.prime);
    for q in &r.quasiplatonic {
        surface_lines(&mut out, q);
    }
    let _ = writeln!(out, "\nsurfaces with more automorphisms:");
    for q in &r.special {
        surface_lines(&mut out, q);
    }
    let c = &r.counts;
    let _ = writeln!(out, "\ncounts:");
    let _ = writeln!(out, "  family components          {}", c.family_components);
    let _ = writeln!(out, "  C_j classes                {}", c.axes_classes);
    let _ = writeln!(out, "  S_j classes                {} ({} extending)", c.cyclic_classes, c.cyclic_extending);
    let _ = writeln!(out, "  quasiplatonic, distinct    {}", c.quasiplatonic_total);
    let _ = writeln!(out, "  quasiplatonic, not in F1/F2 {}", c.quasiplatonic_outside_families);
    let _ = writeln!(out);
    out.push_str(&render_large_text(&r.large_order));
    let _ = writeln!(out, "\nchecks:");
    for c in &r.checks {
        check_line(&mut out, c);
    }
    let failed = r.checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(out, "\n{} checks, {} failed", r.checks.len(), failed);
    out
}
