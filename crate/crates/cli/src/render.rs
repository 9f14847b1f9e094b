//! Plain-text tables for reports and sweeps.

use std::fmt::Write;

use twistor_core::catalog::Value;
use twistor_core::io::{IndexedVector, Report, SweepRow};

/// Digits after the point in table output; JSON carries full precision.
pub const DIGITS: usize = 10;

/// Fixed-point with trailing zeros trimmed; residue below display precision prints as 0.
pub fn num(x: f64) -> String {
    let s = format!("{x:.DIGITS$}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "-0" | "" => "0".to_string(),
        s => s.to_string(),
    }
}

fn vec4(v: &[f64; 4]) -> String {
    format!("({})", v.iter().map(|&x| num(x)).collect::<Vec<_>>().join(", "))
}

fn value(v: &Value) -> String {
    match v {
        Value::Scalar(x) => num(*x),
        Value::Vector(v) => vec4(v),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn matrix(out: &mut String, title: &str, m: &[[f64; 4]; 4]) {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|&x| num(x)).collect()).collect();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let _ = writeln!(out, "{title}");
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "  [ {} ]", line.join("  "));
    }
}

fn indexed(out: &mut String, title: &str, symbol: &str, entries: &[IndexedVector]) {
    let _ = writeln!(out, "{title} ({} non-zero)", entries.len());
    for e in entries {
        let idx: Vec<String> = e.index.iter().map(|i| format!("E{i}")).collect();
        let _ = writeln!(out, "  {symbol}({}) = {}", idx.join(", "), vec4(&e.value));
    }
}

pub fn report(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", r.name);
    let _ = writeln!(out, "twistor scale t = {}   tol = {:e}   jacobi tol = {:e}", num(r.settings.t), r.settings.tol, r.settings.jacobi_tol);
    if !r.preset_params.is_empty() {
        let p: Vec<String> = r.preset_params.iter().map(|(k, v)| format!("{k} = {}", num(*v))).collect();
        let _ = writeln!(out, "parameters: {}", p.join(", "));
    }
    let _ = writeln!(out);

    indexed(&mut out, "Levi-Civita connection", "nabla", &r.connection);
    indexed(&mut out, "Curvature R(X,Y)Z, X < Y", "R", &r.curvature);
    matrix(&mut out, "Ricci rho", &r.ricci);
    matrix(&mut out, "star-Ricci rho*", &r.star_ricci);
    let _ = writeln!(out, "scalar s = {}   star-scalar s* = {}", num(r.scalar), num(r.star_scalar));
    let _ = writeln!(out);

    let _ = writeln!(out, "class: {}   integrable: {}   symplectic: {}   Kahler: {}", r.class.as_str(), yes(r.integrable), yes(r.symplectic), yes(r.kahler));
    let _ = writeln!(out, "Lee form theta = {}", vec4(&r.theta));
    let _ = writeln!(out, "Lee vector B = {}", vec4(&r.b));
    matrix(&mut out, "dtheta", &r.dtheta);
    let _ = writeln!(out, "dtheta is (1,1): {}", yes(r.dtheta_one_one));
    indexed(&mut out, "Nijenhuis tensor N(X,Y), X < Y", "N", &r.nijenhuis);
    let _ = writeln!(out, "dim span N = {}", r.n_space_dim);
    let _ = writeln!(out);

    let tn = &r.tension;
    let _ = writeln!(out, "tension field");
    let _ = writeln!(out, "  vertical: s2 {}   s3 {}", num(tn.vertical_s2), num(tn.vertical_s3));
    let _ = writeln!(out, "  horizontal: {}", vec4(&tn.horizontal));
    let _ = writeln!(out, "  normal residual: {}", num(tn.normal_residual));
    let _ = writeln!(out);

    let v = &r.verdict;
    let _ = writeln!(out, "verdict (method {:?}, routes agree: {})", v.method, yes(v.cross_check));
    for (label, flag, direct) in [
        ("harmonic section", v.harmonic_section, v.direct.harmonic_section),
        ("harmonic map", v.harmonic_map, v.direct.harmonic_map),
        ("minimal", v.minimal, v.direct.minimal),
        ("totally geodesic", v.totally_geodesic, v.direct.totally_geodesic),
    ] {
        let _ = writeln!(out, "  {label:<17} {:<4} direct: {}", yes(flag), yes(direct));
    }
    if !v.conditions.is_empty() {
        let _ = writeln!(out, "  criteria");
        for c in &v.conditions {
            let _ = writeln!(out, "    {:<5} {}  {} < {:e}", if c.pass { "ok" } else { "fails" }, c.name, num(c.value), c.threshold);
        }
    }
    let d = &v.direct;
    let _ = writeln!(
        out,
        "  direct route: |V tau| {}   |H tau| {}   |II| {}   threshold {:e}",
        num(d.vertical_tension),
        num(d.horizontal_tension),
        num(d.second_fundamental),
        d.threshold
    );
    for w in &v.warnings {
        let _ = writeln!(out, "  warning: {w}");
    }

    if let Some(diffs) = &r.expected {
        let _ = writeln!(out);
        let _ = writeln!(out, "reference values");
        for e in diffs {
            let status = match (e.matches_printed, e.matches_reference) {
                (true, _) => "ok",
                (false, true) => "corrected",
                (false, false) => "MISMATCH",
            };
            let _ = writeln!(out, "  {:<9} {}: published {}  computed {}", status, e.label, value(&e.printed), value(&e.computed));
            if let Some(c) = &e.corrected {
                let _ = writeln!(out, "            corrected {}{}", value(c), e.note.as_deref().map(|n| format!("  ({n})")).unwrap_or_default());
            }
        }
        if let Some(m) = r.expected_verdict_match {
            let _ = writeln!(out, "  expected verdict: {}", if m { "ok" } else { "MISMATCH" });
        }
    }
    out
}

pub fn sweep(rows: &[SweepRow], tol: f64) -> String {
    let mut out = String::new();
    let Some(first) = rows.first() else {
        return "empty grid\n".to_string();
    };
    let _ = writeln!(out, "{}: {} points   tol = {tol:e}", first.preset, rows.len());
    let header: Vec<String> = first.params.iter().map(|(k, _)| k.clone()).collect();
    let mut table: Vec<Vec<String>> = vec![header
        .iter()
        .cloned()
        .chain(["scale", "class", "section", "map", "minimal", "geodesic", "routes", "expected"].map(String::from))
        .collect()];
    for r in rows {
        let mut line: Vec<String> = r.params.iter().map(|(_, v)| num(*v)).collect();
        line.push(num(r.t));
        line.push(r.class.as_str().to_string());
        for b in [r.harmonic_section, r.harmonic_map, r.minimal, r.totally_geodesic, r.cross_check, r.expected_verdict_match] {
            line.push(yes(b).to_string());
        }
        table.push(line);
    }
    let widths: Vec<usize> = (0..table[0].len()).map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    for row in &table {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "  {}", cells.join("  ").trim_end());
    }
    let flags = |r: &SweepRow| [r.harmonic_section, r.harmonic_map, r.minimal, r.totally_geodesic];
    let constant = rows.iter().all(|r| flags(r) == flags(first));
    let maps = rows.iter().filter(|r| r.harmonic_map).count();
    let _ = writeln!(
        out,
        "harmonic maps: {maps}/{}   verdict constant over grid: {}   expected verdicts: {}/{}",
        rows.len(),
        yes(constant),
        rows.iter().filter(|r| r.expected_verdict_match).count(),
        rows.len()
    );
    out
}
