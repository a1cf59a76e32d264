//! Descriptor text format.
//!
//! ```text
//! name = d2q9-iso
//! dimension = 2
//! model = isothermal
//!
//! [velocities]
//! 0 0
//! 1 0
//! ...
//! [moments]
//! rho = 1
//! eps = 3*(vx^2 + vy^2) - 4*lambda^2
//! ...
//! [groups]
//! conserved = rho jx jy
//! family1 = eps xx xy
//! ...
//! [sigma]
//! sigma_x = xx xy
//! ...
//! [energy]            (thermal only)
//! a = 26
//! b = -28
//! [variant NAME]      (optional row overrides)
//! h = ...
//! [deviations]        (optional free text, one note per line)
//! ```
//!
//! Lines starting with `#` are comments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use lbm_poly::{parse_poly, parse_rational, Rational, Sym, Vars};

use crate::def::{Group, Model, Moment, SchemeDef};
use crate::vel::{Vel, VelPoly};
use crate::SchemeError;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Velocities,
    Moments,
    Groups,
    Sigma,
    Energy,
    Variant,
    Deviations,
}

struct Line<'a> {
    no: usize,
    text: &'a str,
    /// Byte offset of `text` within the raw line.
    col: usize,
}

impl Line<'_> {
    fn err(&self, at: usize, msg: impl Into<String>) -> SchemeError {
        SchemeError::Parse { line: self.no, column: self.col + at + 1, msg: msg.into() }
    }

    /// Splits `key = value`, returning the value's offset as well.
    fn key_value(&self) -> Result<(&str, &str, usize), SchemeError> {
        let eq = self.text.find('=').ok_or_else(|| self.err(0, "expected `key = value`"))?;
        let key = self.text[..eq].trim();
        if key.is_empty() {
            return Err(self.err(0, "missing key"));
        }
        let rest = &self.text[eq + 1..];
        let lead = rest.len() - rest.trim_start().len();
        Ok((key, rest.trim(), eq + 1 + lead))
    }
}

#[derive(Default)]
struct Raw {
    header: BTreeMap<String, (String, usize)>,
    velocities: Vec<([i32; 3], usize)>,
    moments: Vec<(String, VelPoly)>,
    groups: Vec<(Group, Vec<String>, usize)>,
    sigma: Vec<(Sym, Vec<String>, usize)>,
    energy: BTreeMap<String, Rational>,
    variants: BTreeMap<String, Vec<(String, VelPoly, usize)>>,
    deviations: Vec<String>,
}

fn expr(line: &Line, text: &str, at: usize) -> Result<VelPoly, SchemeError> {
    parse_poly::<Vel>(text).map_err(|e| line.err(at + e.offset, e.msg))
}

fn invalid(msg: impl Into<String>) -> SchemeError {
    SchemeError::Invalid(msg.into())
}

/// Parses and validates a scheme descriptor.
pub fn parse_scheme(text: &str) -> Result<SchemeDef, SchemeError> {
    let mut raw = Raw::default();
    let mut section = Section::Header;
    let mut variant = String::new();
    let mut dim: Option<usize> = None;

    for (i, full) in text.lines().enumerate() {
        let trimmed = full.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let line = Line { no: i + 1, text: trimmed, col: full.len() - full.trim_start().len() };
        if let Some(inner) = trimmed.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| line.err(0, "unterminated section header"))?;
            section = match inner.trim() {
                "velocities" => Section::Velocities,
                "moments" => Section::Moments,
                "groups" => Section::Groups,
                "sigma" => Section::Sigma,
                "energy" => Section::Energy,
                "deviations" => Section::Deviations,
                s => match s.strip_prefix("variant ") {
                    Some(v) if !v.trim().is_empty() => {
                        variant = v.trim().to_string();
                        raw.variants.entry(variant.clone()).or_default();
                        Section::Variant
                    }
                    _ => return Err(line.err(1, format!("unknown section `{s}`"))),
                },
            };
            if section == Section::Velocities && dim.is_none() {
                dim = match raw.header.get("dimension").map(|(v, _)| v.as_str()) {
                    Some("2") => Some(2),
                    Some("3") => Some(3),
                    Some(_) => return Err(invalid("dimension must be 2 or 3")),
                    None => return Err(line.err(0, "`dimension` must precede [velocities]")),
                };
            }
            continue;
        }
        match section {
            Section::Header => {
                let (k, v, _) = line.key_value()?;
                if !matches!(k, "name" | "dimension" | "model" | "variant") {
                    return Err(line.err(0, format!("unknown header key `{k}`")));
                }
                raw.header.insert(k.to_string(), (v.to_string(), line.no));
            }
            Section::Velocities => {
                let d = dim.expect("set on entering the section");
                let mut c = [0i32; 3];
                let mut n = 0;
                for tok in trimmed.split_whitespace() {
                    let at = tok.as_ptr() as usize - trimmed.as_ptr() as usize;
                    if n == d {
                        return Err(line.err(at, format!("expected {d} components")));
                    }
                    c[n] = tok.parse().map_err(|_| line.err(at, format!("bad integer `{tok}`")))?;
                    n += 1;
                }
                if n != d {
                    return Err(line.err(0, format!("expected {d} components")));
                }
                raw.velocities.push((c, line.no));
            }
            Section::Moments => {
                let (k, v, at) = line.key_value()?;
                raw.moments.push((k.to_string(), expr(&line, v, at)?));
            }
            Section::Variant => {
                let (k, v, at) = line.key_value()?;
                let p = expr(&line, v, at)?;
                raw.variants.get_mut(&variant).unwrap().push((k.to_string(), p, line.no));
            }
            Section::Groups => {
                let (k, v, _) = line.key_value()?;
                let g = Group::from_name(k).ok_or_else(|| line.err(0, format!("bad group `{k}`")))?;
                raw.groups.push((g, v.split_whitespace().map(String::from).collect(), line.no));
            }
            Section::Sigma => {
                let (k, v, _) = line.key_value()?;
                let s = Sym::from_name(k)
                    .filter(|s| s.is_sigma())
                    .ok_or_else(|| line.err(0, format!("unknown relaxation symbol `{k}`")))?;
                raw.sigma.push((s, v.split_whitespace().map(String::from).collect(), line.no));
            }
            Section::Energy => {
                let (k, v, at) = line.key_value()?;
                if k != "a" && k != "b" {
                    return Err(line.err(0, format!("unknown energy key `{k}`")));
                }
                let r = parse_rational(v).ok_or_else(|| line.err(at, format!("bad rational `{v}`")))?;
                raw.energy.insert(k.to_string(), r);
            }
            Section::Deviations => raw.deviations.push(trimmed.to_string()),
        }
    }
    build(raw, dim)
}

fn build(raw: Raw, dim: Option<usize>) -> Result<SchemeDef, SchemeError> {
    let header = |k: &str| raw.header.get(k).map(|(v, _)| v.clone());
    let name = header("name").ok_or_else(|| invalid("missing `name`"))?;
    let dim = dim.ok_or_else(|| invalid("missing [velocities]"))?;
    let model_name = header("model").ok_or_else(|| invalid("missing `model`"))?;
    let model = Model::from_name(&model_name).ok_or_else(|| invalid(format!("unknown model `{model_name}`")))?;

    let mut seen = BTreeSet::new();
    for (c, line) in &raw.velocities {
        if !seen.insert(*c) {
            let shown: Vec<String> = c[..dim].iter().map(ToString::to_string).collect();
            return Err(invalid(format!("duplicate velocity ({}) on line {line}", shown.join(", "))));
        }
    }
    let velocities: Vec<[i32; 3]> = raw.velocities.iter().map(|(c, _)| *c).collect();
    if velocities.len() != raw.moments.len() {
        return Err(invalid(format!(
            "{} velocities but {} moments",
            velocities.len(),
            raw.moments.len()
        )));
    }

    let vel_vars = Vel::all();
    let degree_of = |row: &str, p: &VelPoly| -> Result<i32, SchemeError> {
        if dim == 2 && p.mentions(Vel::Vz) {
            return Err(invalid(format!("moment `{row}` uses vz in a 2D scheme")));
        }
        if p.is_zero() {
            return Err(invalid(format!("moment `{row}` is zero")));
        }
        p.homogeneous_degree(&vel_vars)
            .ok_or_else(|| invalid(format!("moment `{row}` is not lambda-homogeneous")))
    };

    let mut group_of: BTreeMap<&str, Group> = BTreeMap::new();
    for (g, names, line) in &raw.groups {
        for n in names {
            if !raw.moments.iter().any(|(m, _)| m == n) {
                return Err(invalid(format!("bad group: unknown moment `{n}` on line {line}")));
            }
            if group_of.insert(n, *g).is_some() {
                return Err(invalid(format!("bad group: moment `{n}` assigned twice")));
            }
        }
    }
    let mut sigma_of: BTreeMap<&str, Sym> = BTreeMap::new();
    for (s, names, line) in &raw.sigma {
        for n in names {
            if !raw.moments.iter().any(|(m, _)| m == n) {
                return Err(invalid(format!("unknown moment `{n}` in [sigma] on line {line}")));
            }
            if sigma_of.insert(n, *s).is_some() {
                return Err(invalid(format!("moment `{n}` has two relaxation symbols")));
            }
        }
    }

    let mut moments = Vec::with_capacity(raw.moments.len());
    let mut names = BTreeSet::new();
    for (row, poly) in &raw.moments {
        if !names.insert(row.as_str()) {
            return Err(invalid(format!("duplicate moment `{row}`")));
        }
        let degree = degree_of(row, poly)?;
        let group = *group_of
            .get(row.as_str())
            .ok_or_else(|| invalid(format!("bad group: moment `{row}` has no group")))?;
        let sigma = sigma_of.get(row.as_str()).copied();
        match (group, sigma) {
            (Group::Conserved, Some(_)) => {
                return Err(invalid(format!("conserved moment `{row}` has a relaxation symbol")))
            }
            (Group::Conserved, None) | (_, Some(_)) => {}
            (_, None) => return Err(invalid(format!("moment `{row}` has no relaxation symbol"))),
        }
        moments.push(Moment { name: row.clone(), poly: poly.clone(), degree, group, sigma });
    }

    let n = moments.iter().filter(|m| m.group == Group::Conserved).count();
    if n != model.conserved(dim) {
        return Err(invalid(format!(
            "bad group: {n} conserved moments, a {dim}D {model} scheme needs {}",
            model.conserved(dim)
        )));
    }
    if moments[..n].iter().any(|m| m.group != Group::Conserved) {
        return Err(invalid("bad group: conserved moments must be the leading rows"));
    }

    let energy = match (model, raw.energy.get("a"), raw.energy.get("b")) {
        (Model::Thermal, Some(a), Some(b)) => Some((a.clone(), b.clone())),
        (Model::Thermal, _, _) => return Err(invalid("thermal scheme needs [energy] a and b")),
        (Model::Isothermal, None, None) => None,
        (Model::Isothermal, _, _) => return Err(invalid("[energy] is only meaningful for thermal schemes")),
    };

    let mut variants = BTreeMap::new();
    for (v, rows) in raw.variants {
        let mut out = Vec::new();
        for (row, poly, line) in rows {
            if !names.contains(row.as_str()) {
                return Err(invalid(format!("variant `{v}` overrides unknown moment `{row}` on line {line}")));
            }
            degree_of(&row, &poly)?;
            out.push((row, poly));
        }
        variants.insert(v, out);
    }

    Ok(SchemeDef {
        name,
        dim,
        model,
        velocities,
        moments,
        energy,
        variants,
        variant: header("variant"),
        deviations: raw.deviations,
    })
}

/// Renders a scheme as descriptor text; `parse_scheme(&dump(s)) == s`.
pub fn dump(s: &SchemeDef) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name = {}", s.name);
    let _ = writeln!(out, "dimension = {}", s.dim);
    let _ = writeln!(out, "model = {}", s.model);
    if let Some(v) = &s.variant {
        let _ = writeln!(out, "variant = {v}");
    }

    out.push_str("\n[velocities]\n");
    for c in &s.velocities {
        let comps: Vec<String> = c[..s.dim].iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", comps.join(" "));
    }

    out.push_str("\n[moments]\n");
    for m in &s.moments {
        let _ = writeln!(out, "{} = {}", m.name, m.poly);
    }

    out.push_str("\n[groups]\n");
    for g in Group::ALL {
        let names: Vec<&str> = s.moments.iter().filter(|m| m.group == g).map(|m| m.name.as_str()).collect();
        if !names.is_empty() {
            let _ = writeln!(out, "{} = {}", g.name(), names.join(" "));
        }
    }

    out.push_str("\n[sigma]\n");
    for sym in Sym::all().into_iter().filter(|s| s.is_sigma()) {
        let names: Vec<&str> =
            s.moments.iter().filter(|m| m.sigma == Some(sym)).map(|m| m.name.as_str()).collect();
        if !names.is_empty() {
            let _ = writeln!(out, "{} = {}", sym.name(), names.join(" "));
        }
    }

    if let Some((a, b)) = &s.energy {
        let _ = write!(out, "\n[energy]\na = {a}\nb = {b}\n");
    }
    for (v, rows) in &s.variants {
        let _ = write!(out, "\n[variant {v}]\n");
        for (row, p) in rows {
            let _ = writeln!(out, "{row} = {p}");
        }
    }
    if !s.deviations.is_empty() {
        out.push_str("\n[deviations]\n");
        for d in &s.deviations {
            let _ = writeln!(out, "{d}");
        }
    }
    out
}
