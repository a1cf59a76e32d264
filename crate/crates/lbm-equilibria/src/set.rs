//! Equilibrium files:
//!
//! ```text
//! scheme = d3q33-iso
//! cs2 = lambda^2/3          (optional sound-speed constraint)
//! [equilibria]
//! qx = rho*u*(13*(u^2 + v^2 + w^2) - 37*lambda^2 + 65*cs^2)
//! [pairs]                   (first second weight: only first + weight*second is fixed)
//! rx tx = 38/13*lambda^-2
//! [variant NAME]            (entry overrides)
//! rx = ...
//! ```
//!
//! Moments not listed have equilibrium 0.

use std::collections::BTreeMap;

use lbm_poly::{parse_poly, Sym, SymPoly, Vars};
use lbm_scheme::{Model, SchemeDef, Vel, VelPoly};

use crate::EqError;

macro_rules! files {
    ($($name:literal),* $(,)?) => {
        const SOURCES: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../equilibria/", $name, ".eq")))),*
        ];
    };
}

files!(
    "d2q9-iso",
    "d2q13-iso",
    "d3q19-iso",
    "d3q27-iso",
    "d3q33-iso",
    "d3q27-2-iso",
    "d2q13-th",
    "d2q17-th",
    "d2v17-th",
    "d2w17-th",
    "d3q33-th",
    "d3q27-2-th",
);

pub fn equilibria_source(scheme: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == scheme).map(|(_, s)| *s)
}

/// Family-2 pair where only `Phi_first + weight * Phi_second` is determined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub first: usize,
    pub second: usize,
    pub weight: SymPoly,
}

/// Equilibria of every nonconserved moment of one scheme, as polynomials in
/// `(rho, u, v, w, e, lambda, cs)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumSet {
    scheme: String,
    variant: Option<String>,
    n: usize,
    names: Vec<String>,
    entries: Vec<SymPoly>,
    pairs: Vec<Pair>,
    cs2: Option<SymPoly>,
    variants: BTreeMap<String, Vec<(usize, SymPoly)>>,
}

impl EquilibriumSet {
    pub fn scheme(&self) -> &str {
        &self.scheme
    }

    pub fn variant(&self) -> Option<&str> {
        self.variant.as_deref()
    }

    pub fn variant_names(&self) -> impl Iterator<Item = &str> {
        self.variants.keys().map(String::as_str)
    }

    pub fn has_variant(&self, v: &str) -> bool {
        self.variants.contains_key(v)
    }

    /// Number of conserved moments preceding the entries.
    pub fn n_conserved(&self) -> usize {
        self.n
    }

    /// Equilibrium of moment row `m` (`m >= N`).
    pub fn get(&self, m: usize) -> &SymPoly {
        &self.entries[m - self.n]
    }

    pub fn by_name(&self, name: &str) -> Option<&SymPoly> {
        self.index(name).map(|m| self.get(m))
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, m: usize) -> &str {
        &self.names[m]
    }

    /// `(row, name, equilibrium)` for every nonconserved moment.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &str, &SymPoly)> {
        self.entries.iter().enumerate().map(move |(k, p)| (self.n + k, self.names[self.n + k].as_str(), p))
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    /// Constraint `cs^2 = ...` required by the scheme, if any.
    pub fn cs2(&self) -> Option<&SymPoly> {
        self.cs2.as_ref()
    }

    pub fn with_entry(&self, m: usize, p: SymPoly) -> Self {
        let mut out = self.clone();
        out.entries[m - self.n] = p;
        out
    }

    pub fn with_variant(&self, v: &str) -> Result<Self, EqError> {
        let rows = self
            .variants
            .get(v)
            .ok_or_else(|| EqError::UnknownVariant(self.scheme.clone(), v.to_string()))?;
        let mut out = self.clone();
        for (m, p) in rows {
            out.entries[m - self.n] = p.clone();
        }
        out.variants.clear();
        out.variant = Some(v.to_string());
        Ok(out)
    }

    /// `Phi_first + weight * Phi_second`, the determined combination.
    pub fn pair_target(&self, p: &Pair) -> SymPoly {
        self.get(p.first) + &(&p.weight * self.get(p.second))
    }

    /// Replaces the second member of pair `k` and adjusts the first so the
    /// combination is unchanged.
    pub fn resplit(&self, k: usize, second: SymPoly) -> Self {
        let p = &self.pairs[k];
        let first = self.pair_target(p) - &(&p.weight * &second);
        self.with_entry(p.first, first).with_entry(p.second, second)
    }

    /// Applies the sound-speed constraint, if any, to every entry.
    pub fn constrained(&self) -> Self {
        let Some(c) = &self.cs2 else { return self.clone() };
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.subs_square(Sym::Cs, c).expect("equilibria are even in cs");
        }
        out
    }

    /// Moments whose equilibrium is not divisible by `rho`.
    pub fn rho_divisibility_failures(&self) -> Vec<&str> {
        let rho = SymPoly::var(Sym::Rho);
        self.iter().filter(|(_, _, p)| p.div_exact(&rho).is_err()).map(|(_, n, _)| n).collect()
    }

    /// `(moment, direction)` pairs where `u_a -> -u_a` does not act on the
    /// equilibrium as `v_a -> -v_a` acts on the moment polynomial.
    pub fn parity_failures(&self, s: &SchemeDef) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        for (m, name, phi) in self.iter() {
            let poly = &s.moments()[m].poly;
            for a in 0..s.dim() {
                let v = Vel::component(a);
                let moment_sign = reflect_vel(poly, v);
                let u = Sym::velocity(a);
                let phi_flip = phi.subs(u, &-SymPoly::var(u)).expect("substitution");
                let ok = match moment_sign {
                    Some(true) => phi_flip == *phi,
                    Some(false) => phi_flip == -phi,
                    None => true,
                };
                if !ok {
                    out.push((name.to_string(), a));
                }
            }
        }
        out
    }
}

/// `Some(true)` if even in `v`, `Some(false)` if odd, `None` if neither.
fn reflect_vel(p: &VelPoly, v: Vel) -> Option<bool> {
    let odd = p.terms().all(|(m, _)| m.exp(v.index()) % 2 != 0);
    let even = p.terms().all(|(m, _)| m.exp(v.index()) % 2 == 0);
    match (even, odd) {
        (true, _) => Some(true),
        (_, true) => Some(false),
        _ => None,
    }
}

fn allowed(s: &SchemeDef, sym: Sym) -> bool {
    match sym {
        Sym::Rho | Sym::Lambda => true,
        Sym::U | Sym::V => true,
        Sym::W => s.dim() == 3,
        Sym::E => s.model() == Model::Thermal,
        Sym::Cs => s.model() == Model::Isothermal,
        _ => false,
    }
}

/// Parses an equilibrium file against its scheme.
pub fn parse_equilibria(text: &str, s: &SchemeDef) -> Result<EquilibriumSet, EqError> {
    #[derive(PartialEq)]
    enum Sec {
        Header,
        Entries,
        Pairs,
        Variant(String),
    }
    let n = s.n_conserved();
    let names: Vec<String> = s.moments().iter().map(|m| m.name.clone()).collect();
    let mut entries = vec![SymPoly::zero(); s.q() - n];
    let mut pairs = Vec::new();
    let mut cs2 = None;
    let mut scheme = None;
    let mut variants: BTreeMap<String, Vec<(usize, SymPoly)>> = BTreeMap::new();
    let mut sec = Sec::Header;

    for (i, full) in text.lines().enumerate() {
        let t = full.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let lead = full.len() - full.trim_start().len();
        let err = |at: usize, msg: String| EqError::Parse { line: i + 1, column: lead + at + 1, msg };
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            sec = match inner.trim() {
                "equilibria" => Sec::Entries,
                "pairs" => Sec::Pairs,
                x => match x.strip_prefix("variant ") {
                    Some(v) => {
                        variants.entry(v.trim().to_string()).or_default();
                        Sec::Variant(v.trim().to_string())
                    }
                    None => return Err(err(1, format!("unknown section `{x}`"))),
                },
            };
            continue;
        }
        let eq = t.find('=').ok_or_else(|| err(0, "expected `key = value`".into()))?;
        let key = t[..eq].trim();
        let rest = &t[eq + 1..];
        let at = eq + 1 + (rest.len() - rest.trim_start().len());
        let value = rest.trim();
        let poly = |v: &str| -> Result<SymPoly, EqError> {
            let p = parse_poly::<Sym>(v).map_err(|e| err(at + e.offset, e.msg))?;
            if let Some(bad) = Sym::all().into_iter().find(|&x| p.mentions(x) && !allowed(s, x)) {
                return Err(err(at, format!("`{bad}` is not a variable of this model")));
            }
            Ok(p)
        };
        let row = |name: &str| -> Result<usize, EqError> {
            match names.iter().position(|m| m == name) {
                Some(m) if m >= n => Ok(m),
                Some(_) => Err(err(0, format!("`{name}` is conserved"))),
                None => Err(err(0, format!("unknown moment `{name}`"))),
            }
        };
        match &sec {
            Sec::Header => match key {
                "scheme" => scheme = Some(value.to_string()),
                "cs2" => cs2 = Some(poly(value)?),
                _ => return Err(err(0, format!("unknown header key `{key}`"))),
            },
            Sec::Entries => {
                let m = row(key)?;
                entries[m - n] = poly(value)?;
            }
            Sec::Variant(v) => {
                let m = row(key)?;
                let p = poly(value)?;
                variants.get_mut(v).unwrap().push((m, p));
            }
            Sec::Pairs => {
                let mut it = key.split_whitespace();
                let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                    return Err(err(0, "expected `first second = weight`".into()));
                };
                pairs.push(Pair { first: row(a)?, second: row(b)?, weight: poly(value)? });
            }
        }
    }
    let scheme = scheme.ok_or_else(|| EqError::Parse { line: 1, column: 1, msg: "missing `scheme`".into() })?;
    if scheme != s.name() {
        return Err(EqError::SchemeMismatch(scheme, s.name().to_string()));
    }
    let set = EquilibriumSet { scheme, variant: None, n, names, entries, pairs, cs2, variants };
    let bad = set.rho_divisibility_failures();
    if let Some(name) = bad.first() {
        return Err(EqError::NotDivisible(name.to_string()));
    }
    Ok(set)
}

/// Built-in equilibria for a scheme; a variant the file does not declare
/// leaves the defaults in place.
pub fn equilibrium_family(s: &SchemeDef, variant: Option<&str>) -> Result<EquilibriumSet, EqError> {
    let src = equilibria_source(s.name()).ok_or_else(|| EqError::Unsupported(s.name().to_string()))?;
    let set = parse_equilibria(src, s)?;
    match variant {
        Some(v) if set.has_variant(v) => set.with_variant(v),
        _ => Ok(set),
    }
}

/// Canonical text of every entry and pair.
pub fn dump_equilibria(set: &EquilibriumSet) -> String {
    let mut out = format!("scheme = {}\n", set.scheme);
    if let Some(v) = &set.variant {
        out += &format!("# variant {v}\n");
    }
    if let Some(c) = &set.cs2 {
        out += &format!("cs2 = {c}\n");
    }
    out += "\n[equilibria]\n";
    for (_, name, p) in set.iter() {
        out += &format!("{name} = {p}\n");
    }
    if !set.pairs.is_empty() {
        out += "\n[pairs]\n";
        for p in &set.pairs {
            out += &format!("{} {} = {}\n", set.names[p.first], set.names[p.second], p.weight);
        }
    }
    out
}
