use std::fmt;

/// A named, ordered variable set. A polynomial type is tied to one set so
/// that exponent vectors from different sets never mix.
pub trait Vars: Copy + Eq + Ord + fmt::Debug + Send + Sync + 'static {
    const COUNT: usize;
    fn index(self) -> usize;
    fn from_index(i: usize) -> Self;
    fn name(self) -> &'static str;

    /// Whether negative powers are admissible (e.g. lambda).
    fn laurent(self) -> bool {
        false
    }

    fn from_name(name: &str) -> Option<Self> {
        (0..Self::COUNT)
            .map(Self::from_index)
            .find(|v| v.name() == name)
    }
    fn all() -> Vec<Self> {
        (0..Self::COUNT).map(Self::from_index).collect()
    }
}

/// Canonical analysis symbols, in the fixed order used by every module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Rho,
    U,
    V,
    W,
    E,
    Lambda,
    Cs,
    SigmaE,
    SigmaX,
    SigmaQ,
    SigmaH,
}

const SYMS: [Sym; 11] = [
    Sym::Rho,
    Sym::U,
    Sym::V,
    Sym::W,
    Sym::E,
    Sym::Lambda,
    Sym::Cs,
    Sym::SigmaE,
    Sym::SigmaX,
    Sym::SigmaQ,
    Sym::SigmaH,
];

impl Sym {
    pub fn velocity(dir: usize) -> Sym {
        [Sym::U, Sym::V, Sym::W][dir]
    }

    pub fn is_sigma(self) -> bool {
        matches!(self, Sym::SigmaE | Sym::SigmaX | Sym::SigmaQ | Sym::SigmaH)
    }
}

impl Vars for Sym {
    const COUNT: usize = 11;

    fn index(self) -> usize {
        self as usize
    }

    fn from_index(i: usize) -> Self {
        SYMS[i]
    }

    fn name(self) -> &'static str {
        match self {
            Sym::Rho => "rho",
            Sym::U => "u",
            Sym::V => "v",
            Sym::W => "w",
            Sym::E => "e",
            Sym::Lambda => "lambda",
            Sym::Cs => "cs",
            Sym::SigmaE => "sigma_e",
            Sym::SigmaX => "sigma_x",
            Sym::SigmaQ => "sigma_q",
            Sym::SigmaH => "sigma_h",
        }
    }

    fn laurent(self) -> bool {
        self == Sym::Lambda
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
