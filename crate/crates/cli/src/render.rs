//! Aligned text output. Everything here reads only the report.

use std::fmt::Write;

use crg_core::report::{ChiSummary, KappaRow, Report};

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), ToString::to_string)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn table(out: &mut String, header: &[String], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |out: &mut String, cells: &[String]| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let pad = w - cell.chars().count();
            s.push_str(cell);
            s.extend(std::iter::repeat_n(' ', pad));
        }
        let _ = writeln!(out, "  {}", s.trim_end());
    };
    line(out, header);
    for row in rows {
        line(out, row);
    }
}

fn chi(out: &mut String, c: &ChiSummary) {
    let _ = writeln!(out, "period: {}", c.period);
    if c.n_values.is_empty() {
        return;
    }
    let mut header = vec!["class".to_string(), "order".into(), "size".into()];
    header.extend(c.n_values.iter().map(|n| format!("chi_{}", n)));
    let rows: Vec<Vec<String>> = c
        .classes
        .iter()
        .map(|row| {
            let mut cells = vec![
                row.representative.clone(),
                row.element_order.to_string(),
                row.size.to_string(),
            ];
            cells.extend(row.values.iter().cloned());
            cells
        })
        .collect();
    let _ = writeln!(out, "chi:");
    table(out, &header, &rows);
    let mut header = vec!["n".to_string()];
    header.extend(c.n_values.iter().map(ToString::to_string));
    let mut norms = vec!["<chi,chi>".to_string()];
    norms.extend(c.norms.iter().cloned());
    let mut kernels = vec!["|Ker R_n|".to_string()];
    kernels.extend(c.kernel_sizes.iter().map(ToString::to_string));
    table(out, &header, &[norms, kernels]);
}

fn kappa_rows(out: &mut String, rows: &[KappaRow]) {
    let header: Vec<String> = [
        "group", "|W|", "|A|", "indices", "kappa", "|Z|", "formula", "source",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.group.clone(),
                opt(&r.order),
                opt(&r.hyperplanes),
                join(&r.indices),
                r.kappa.to_string(),
                opt(&r.center),
                opt(&r.formula),
                r.source.clone(),
            ]
        })
        .collect();
    table(out, &header, &cells);
}

pub fn render(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", r.command);
    if let Some(seed) = r.seed {
        let _ = writeln!(out, "seed: {}", seed);
    }
    if let Some(g) = &r.group {
        let _ = writeln!(out, "group: {}", g.name);
        let _ = writeln!(out, "dim: {}", g.dim);
        let _ = writeln!(out, "order: {}", g.order);
        let _ = writeln!(out, "reflections: {}", g.reflections);
        let _ = writeln!(out, "hyperplanes: {}", g.hyperplanes);
        let _ = writeln!(out, "center: {}", g.center);
        let _ = writeln!(out, "classes: {}", g.classes);
        let _ = writeln!(out, "essential: {}", g.essential);
        let _ = writeln!(out, "irreducible: {}", opt(&g.irreducible));
        if let Some(t) = &g.coxeter {
            let _ = writeln!(out, "coxeter type: {}", t);
        }
    }
    if let Some(a) = &r.arrangement {
        let _ = writeln!(out, "orbits: {}", a.orbits);
        if !a.parts.is_empty() {
            let _ = writeln!(out, "parts: {}", join(&a.parts));
        }
        if let Some(p) = &a.poincare {
            let _ = writeln!(out, "poincare: {}", join(p));
        }
        let header: Vec<String> = ["H", "alpha", "root", "d", "orbit"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let rows: Vec<Vec<String>> = a
            .hyperplanes
            .iter()
            .enumerate()
            .map(|(i, h)| {
                vec![
                    i.to_string(),
                    format!("({})", h.alpha.join(", ")),
                    format!("({})", h.root.join(", ")),
                    h.d.to_string(),
                    h.orbit.to_string(),
                ]
            })
            .collect();
        let _ = writeln!(out, "arrangement:");
        table(&mut out, &header, &rows);
    }
    if let Some(p) = &r.phi {
        let _ = writeln!(out, "phi.rank: {} of {}", p.rank, p.rows);
        let _ = writeln!(out, "phi.surjective: {}", p.surjective);
        let _ = writeln!(out, "phi.equivariance_defects: {}", p.defects.len());
        let _ = writeln!(out, "phi.sum_of_squares_zero: {}", p.sum_of_squares_zero);
    }
    if let Some(k) = &r.kappa {
        let _ = writeln!(out, "kappa: {}", k.kappa);
        let _ = writeln!(out, "indices: {}", join(&k.indices));
        let _ = writeln!(out, "center exponent: {}", k.center_exponent);
    }
    if let Some(c) = &r.chi {
        chi(&mut out, c);
    }
    if let Some(m) = &r.monodromy {
        let b: Vec<String> = m
            .basepoint
            .iter()
            .map(|[re, im]| format!("{}{:+}i", re, im))
            .collect();
        let _ = writeln!(out, "monodromy.basepoint: ({})", b.join(", "));
        let _ = writeln!(out, "monodromy.random_paths: {}", m.random_paths);
    }
    if let Some(p) = &r.poincare {
        let _ = writeln!(out, "dim: {}", p.dim);
        let _ = writeln!(out, "hyperplanes: {}", p.hyperplanes);
        let _ = writeln!(out, "poincare: {}", join(&p.coefficients));
        let _ = writeln!(out, "(1+t) multiplicity: {}", p.one_plus_t_multiplicity);
        let _ = writeln!(out, "essential: {}", p.essential);
        let _ = writeln!(out, "phi.rank: {} of {}", p.phi_rank, p.sym2_dim);
    }
    if let Some(rows) = &r.kappa_table {
        let _ = writeln!(out, "kappa table:");
        kappa_rows(&mut out, rows);
    }
    if !r.checks.is_empty() {
        let _ = writeln!(out, "checks:");
        for c in &r.checks {
            let verdict = if c.passed { "pass" } else { "fail" };
            let _ = writeln!(out, "  {}: {}  {}", c.name, verdict, c.detail);
        }
    }
    out
}
