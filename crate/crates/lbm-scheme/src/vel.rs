use std::fmt;

use lbm_poly::{Poly, Vars};

/// Variables of a moment polynomial: velocity components and lambda.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vel {
    Vx,
    Vy,
    Vz,
    Lambda,
}

pub type VelPoly = Poly<Vel>;

impl Vel {
    pub fn component(dir: usize) -> Vel {
        [Vel::Vx, Vel::Vy, Vel::Vz][dir]
    }
}

impl Vars for Vel {
    const COUNT: usize = 4;

    fn index(self) -> usize {
        self as usize
    }

    fn from_index(i: usize) -> Self {
        [Vel::Vx, Vel::Vy, Vel::Vz, Vel::Lambda][i]
    }

    fn name(self) -> &'static str {
        match self {
            Vel::Vx => "vx",
            Vel::Vy => "vy",
            Vel::Vz => "vz",
            Vel::Lambda => "lambda",
        }
    }

    fn laurent(self) -> bool {
        self == Vel::Lambda
    }
}

impl fmt::Display for Vel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
