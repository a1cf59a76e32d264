use std::collections::BTreeMap;

use crate::vars::Sym;
use crate::Poly;

type P = Poly<Sym>;

/// `sum over (k, alpha) of coeff * d_alpha V_k`, V the primitive field list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FirstOrderForm {
    coeffs: BTreeMap<(usize, usize), P>,
}

impl FirstOrderForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, field: usize, dir: usize, c: &P) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((field, dir)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(field, dir));
        }
    }

    pub fn get(&self, field: usize, dir: usize) -> P {
        self.coeffs.get(&(field, dir)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &P)> {
        self.coeffs.iter().map(|(&(k, a), c)| (k, a, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn nonzero(&self) -> usize {
        self.coeffs.len()
    }

    pub fn map(&self, f: impl Fn(&P) -> P) -> Self {
        let mut out = Self::new();
        for (k, a, c) in self.iter() {
            out.add(k, a, &f(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, a, c) in other.iter() {
            out.add(k, a, &-c);
        }
        out
    }
}

/// `sum over beta of d_beta [ inner form ]`, per conserved equation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SecondOrderFluxForm {
    entries: BTreeMap<(usize, usize), FirstOrderForm>,
}

impl SecondOrderFluxForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, eq: usize, dir: usize, form: FirstOrderForm) {
        if form.is_zero() {
            self.entries.remove(&(eq, dir));
        } else {
            self.entries.insert((eq, dir), form);
        }
    }

    pub fn get(&self, eq: usize, dir: usize) -> FirstOrderForm {
        self.entries.get(&(eq, dir)).cloned().unwrap_or_default()
    }

    /// Cell coefficient for equation `eq`, outer `beta`, field `k`, inner `alpha`.
    pub fn cell(&self, eq: usize, beta: usize, k: usize, alpha: usize) -> P {
        self.entries
            .get(&(eq, beta))
            .map(|f| f.get(k, alpha))
            .unwrap_or_default()
    }

    /// Nonzero cells as `(eq, beta, field, alpha, coeff)` in index order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, usize, usize, &P)> {
        self.entries
            .iter()
            .flat_map(|(&(i, b), f)| f.iter().map(move |(k, a, c)| (i, b, k, a, c)))
    }

    pub fn nonzero(&self) -> usize {
        self.entries.values().map(FirstOrderForm::nonzero).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn map(&self, f: impl Fn(&P) -> P) -> Self {
        let mut out = Self::new();
        for (&(i, b), form) in &self.entries {
            out.set(i, b, form.map(&f));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, b), form) in &other.entries {
            let cur = out.get(i, b);
            out.set(i, b, cur.sub(form));
        }
        out
    }
}
