use std::collections::BTreeMap;
use std::fmt;

use lbm_poly::{int, RatMatrix, Rational, Sym, Vars};

use crate::vel::{Vel, VelPoly};
use crate::SchemeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Isothermal,
    Thermal,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Isothermal => "isothermal",
            Model::Thermal => "thermal",
        }
    }

    pub fn from_name(s: &str) -> Option<Model> {
        match s {
            "isothermal" => Some(Model::Isothermal),
            "thermal" => Some(Model::Thermal),
            _ => None,
        }
    }

    /// Conserved count for a lattice dimension.
    pub fn conserved(self, dim: usize) -> usize {
        match self {
            Model::Isothermal => dim + 1,
            Model::Thermal => dim + 2,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Role of a moment in the analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    Conserved,
    /// Equilibrium fitted to the Euler fluxes.
    Family1,
    /// Equilibrium fitted to the viscous terms.
    Family2,
    /// No influence at second order.
    Family3,
}

impl Group {
    pub const ALL: [Group; 4] = [Group::Conserved, Group::Family1, Group::Family2, Group::Family3];

    pub fn name(self) -> &'static str {
        match self {
            Group::Conserved => "conserved",
            Group::Family1 => "family1",
            Group::Family2 => "family2",
            Group::Family3 => "family3",
        }
    }

    pub fn from_name(s: &str) -> Option<Group> {
        Group::ALL.into_iter().find(|g| g.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moment {
    pub name: String,
    pub poly: VelPoly,
    /// Total degree in (vx, vy, vz, lambda).
    pub degree: i32,
    pub group: Group,
    pub sigma: Option<Sym>,
}

/// A lattice scheme: velocities, moment basis and grouping metadata.
/// Velocities are integer multiples of lambda; 2D schemes keep a zero
/// third component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeDef {
    pub(crate) name: String,
    pub(crate) dim: usize,
    pub(crate) model: Model,
    pub(crate) velocities: Vec<[i32; 3]>,
    pub(crate) moments: Vec<Moment>,
    pub(crate) energy: Option<(Rational, Rational)>,
    pub(crate) variants: BTreeMap<String, Vec<(String, VelPoly)>>,
    pub(crate) variant: Option<String>,
    pub(crate) deviations: Vec<String>,
}

impl SchemeDef {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn q(&self) -> usize {
        self.velocities.len()
    }

    /// Number of conserved moments; these are always the leading rows.
    pub fn n_conserved(&self) -> usize {
        self.moments.iter().filter(|m| m.group == Group::Conserved).count()
    }

    pub fn velocities(&self) -> &[[i32; 3]] {
        &self.velocities
    }

    pub fn moments(&self) -> &[Moment] {
        &self.moments
    }

    pub fn moment(&self, name: &str) -> Option<(usize, &Moment)> {
        self.moments.iter().enumerate().find(|(_, m)| m.name == name)
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.moments.iter().map(|m| m.degree).collect()
    }

    pub fn group_size(&self, g: Group) -> usize {
        self.moments.iter().filter(|m| m.group == g).count()
    }

    /// `(a, b)` with `eps = a E + b lambda^2 rho`; thermal schemes only.
    pub fn energy(&self) -> Option<&(Rational, Rational)> {
        self.energy.as_ref()
    }

    pub fn variant(&self) -> Option<&str> {
        self.variant.as_deref()
    }

    pub fn variant_names(&self) -> impl Iterator<Item = &str> {
        self.variants.keys().map(String::as_str)
    }

    pub fn has_variant(&self, name: &str) -> bool {
        self.variants.contains_key(name)
    }

    /// Notes on where the transcription departs from the reference tables.
    pub fn deviations(&self) -> &[String] {
        &self.deviations
    }

    /// The scheme with the named row overrides applied.
    pub fn with_variant(&self, name: &str) -> Result<SchemeDef, SchemeError> {
        let rows = self
            .variants
            .get(name)
            .ok_or_else(|| SchemeError::UnknownVariant(self.name.clone(), name.to_string()))?;
        let mut out = self.clone();
        for (row, poly) in rows {
            let m = out.moments.iter_mut().find(|m| &m.name == row).expect("checked at parse");
            m.degree = poly.homogeneous_degree(&Vel::all()).expect("checked at parse");
            m.poly = poly.clone();
        }
        out.variants.clear();
        out.variant = Some(name.to_string());
        Ok(out)
    }

    /// `p_i(c_j)` at lambda = 1, the integer-scaled core of the moment matrix.
    pub fn core_matrix(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.q(), self.q());
        for (i, mom) in self.moments.iter().enumerate() {
            for (j, c) in self.velocities.iter().enumerate() {
                let at = [
                    (Vel::Vx, int(c[0] as i64)),
                    (Vel::Vy, int(c[1] as i64)),
                    (Vel::Vz, int(c[2] as i64)),
                    (Vel::Lambda, int(1)),
                ];
                m.set(i, j, mom.poly.eval(&at).expect("all variables assigned"));
            }
        }
        m
    }
}
