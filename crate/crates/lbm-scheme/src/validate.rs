use lbm_poly::Vars;
use num_traits::Zero;

use crate::vel::Vel;
use crate::SchemeDef;

/// Exact structural checks on a scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub orthogonal: bool,
    /// Row pairs with a nonzero inner product over the velocity set.
    pub non_orthogonal: Vec<(String, String)>,
    pub invertible: bool,
    pub rank: usize,
    pub homogeneous: bool,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.orthogonal && self.invertible && self.homogeneous
    }
}

pub fn validate_scheme(s: &SchemeDef) -> ValidationReport {
    let core = s.core_matrix();
    let gram = core.mul(&core.transpose()).expect("square");
    let q = s.q();
    let mut non_orthogonal = Vec::new();
    for i in 0..q {
        for k in i + 1..q {
            if !gram.get(i, k).is_zero() {
                non_orthogonal.push((s.moments[i].name.clone(), s.moments[k].name.clone()));
            }
        }
    }
    let rank = core.rank();
    let vars = Vel::all();
    let homogeneous = s
        .moments
        .iter()
        .all(|m| m.poly.homogeneous_degree(&vars) == Some(m.degree));
    ValidationReport {
        orthogonal: non_orthogonal.is_empty(),
        non_orthogonal,
        invertible: rank == q,
        rank,
        homogeneous,
    }
}
