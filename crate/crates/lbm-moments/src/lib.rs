//! Moment matrix `M = diag(lambda^d) M^`, its exact inverse, the advection
//! operators `Lambda^a = M diag(v^a) M^-1` and their ABCD block split.
//!
//! Every matrix here is a rational core plus a per-row / per-column power
//! of lambda, so the algebra never leaves the rationals.

mod dump;

pub use dump::{matrices_csv, matrices_json};

use lbm_poly::{MatrixError, RatMatrix, Rational, Sym, SymPoly};
use lbm_scheme::SchemeDef;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MomentError {
    #[error("moment matrix is singular")]
    Singular,
}

impl From<MatrixError> for MomentError {
    fn from(_: MatrixError) -> Self {
        MomentError::Singular
    }
}

/// A nonzero operator entry `coeff * lambda^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub coeff: Rational,
    pub exp: i32,
}

impl Entry {
    pub fn to_poly(&self) -> SymPoly {
        SymPoly::monomial(self.coeff.clone(), &[(Sym::Lambda, self.exp as i16)])
    }

    pub fn to_f64(&self, lambda: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeff.to_f64().unwrap_or(f64::NAN) * lambda.powi(self.exp)
    }
}

#[derive(Clone, Debug)]
pub struct MomentMatrix {
    degrees: Vec<i32>,
    core: RatMatrix,
    core_inv: RatMatrix,
}

impl MomentMatrix {
    pub fn build(s: &SchemeDef) -> Result<Self, MomentError> {
        let core = s.core_matrix();
        let core_inv = core.inverse()?;
        Ok(MomentMatrix { degrees: s.degrees(), core, core_inv })
    }

    pub fn q(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    /// `M^` with `M = diag(lambda^d) M^`.
    pub fn core(&self) -> &RatMatrix {
        &self.core
    }

    /// `M^^-1` with `M^-1 = M^^-1 diag(lambda^-d)`.
    pub fn core_inverse(&self) -> &RatMatrix {
        &self.core_inv
    }

    /// `M_ij = core_ij lambda^d_i`.
    pub fn entry(&self, i: usize, j: usize) -> Option<Entry> {
        nonzero(self.core.get(i, j), self.degrees[i])
    }

    /// `(M^-1)_jk = inv_jk lambda^-d_k`.
    pub fn inverse_entry(&self, j: usize, k: usize) -> Option<Entry> {
        nonzero(self.core_inv.get(j, k), -self.degrees[k])
    }

    pub fn verify_inverse(&self) -> bool {
        self.core.mul(&self.core_inv).is_ok_and(|p| p.is_identity())
    }

    /// Row-major `M` and `M^-1` at a numeric lambda.
    pub fn to_f64(&self, lambda: f64) -> (Vec<f64>, Vec<f64>) {
        let q = self.q();
        let mut m = self.core.to_f64();
        let mut inv = self.core_inv.to_f64();
        for i in 0..q {
            let up = lambda.powi(self.degrees[i]);
            for j in 0..q {
                m[i * q + j] *= up;
                inv[j * q + i] /= up;
            }
        }
        (m, inv)
    }
}

fn nonzero(c: &Rational, exp: i32) -> Option<Entry> {
    (!c.is_zero()).then(|| Entry { coeff: c.clone(), exp })
}

/// `Lambda^a` per direction; entry `(i, k)` is `coeff lambda^(1 + d_i - d_k)`.
#[derive(Clone, Debug)]
pub struct LambdaMatrix {
    degrees: Vec<i32>,
    coeffs: Vec<RatMatrix>,
}

impl LambdaMatrix {
    pub fn build(s: &SchemeDef, m: &MomentMatrix) -> Self {
        let q = s.q();
        let coeffs = (0..s.dim())
            .map(|a| {
                let mut scaled = m.core.clone();
                for j in 0..q {
                    let c = Rational::from_integer(s.velocities()[j][a].into());
                    for i in 0..q {
                        let v = scaled.get(i, j) * &c;
                        scaled.set(i, j, v);
                    }
                }
                scaled.mul(&m.core_inv).expect("square")
            })
            .collect();
        LambdaMatrix { degrees: m.degrees.clone(), coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn q(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn coeffs(&self, dir: usize) -> &RatMatrix {
        &self.coeffs[dir]
    }

    pub fn entry(&self, dir: usize, i: usize, k: usize) -> Option<Entry> {
        nonzero(self.coeffs[dir].get(i, k), 1 + self.degrees[i] - self.degrees[k])
    }

    /// The entry as a polynomial in lambda (zero when absent).
    pub fn poly(&self, dir: usize, i: usize, k: usize) -> SymPoly {
        self.entry(dir, i, k).map(|e| e.to_poly()).unwrap_or_default()
    }

    /// Nonzero in at least one direction.
    pub fn is_structurally_nonzero(&self, i: usize, k: usize) -> bool {
        self.coeffs.iter().any(|c| !c.get(i, k).is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    A,
    B,
    C,
    D,
}

/// Block view of `Lambda` split after the `n` conserved rows/columns.
#[derive(Clone, Debug)]
pub struct AbcdBlocks {
    lam: LambdaMatrix,
    n: usize,
}

impl AbcdBlocks {
    pub fn new(lam: LambdaMatrix, n: usize) -> Self {
        assert!(n >= 1 && n < lam.q(), "split must satisfy 1 <= N < q");
        AbcdBlocks { lam, n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.lam.q()
    }

    pub fn dim(&self) -> usize {
        self.lam.dim()
    }

    pub fn lambda(&self) -> &LambdaMatrix {
        &self.lam
    }

    pub fn shape(&self, b: Block) -> (usize, usize) {
        let (n, r) = (self.n, self.q() - self.n);
        match b {
            Block::A => (n, n),
            Block::B => (n, r),
            Block::C => (r, n),
            Block::D => (r, r),
        }
    }

    fn offset(&self, b: Block) -> (usize, usize) {
        match b {
            Block::A => (0, 0),
            Block::B => (0, self.n),
            Block::C => (self.n, 0),
            Block::D => (self.n, self.n),
        }
    }

    /// Entry `(i, k)` of block `b`, indices local to the block.
    pub fn entry(&self, b: Block, dir: usize, i: usize, k: usize) -> Option<Entry> {
        let (r, c) = self.offset(b);
        self.lam.entry(dir, r + i, c + k)
    }

    pub fn poly(&self, b: Block, dir: usize, i: usize, k: usize) -> SymPoly {
        let (r, c) = self.offset(b);
        self.lam.poly(dir, r + i, c + k)
    }

    pub fn block(&self, b: Block, dir: usize) -> RatMatrix {
        let (rows, cols) = self.shape(b);
        let (r, c) = self.offset(b);
        let mut out = RatMatrix::zeros(rows, cols);
        for i in 0..rows {
            for k in 0..cols {
                out.set(i, k, self.lam.coeffs[dir].get(r + i, c + k).clone());
            }
        }
        out
    }
}

/// Moment matrix, advection operators and blocks for one scheme.
#[derive(Clone, Debug)]
pub struct SchemeMatrices {
    pub moments: MomentMatrix,
    pub blocks: AbcdBlocks,
}

impl SchemeMatrices {
    pub fn build(s: &SchemeDef) -> Result<Self, MomentError> {
        let moments = MomentMatrix::build(s)?;
        let lam = LambdaMatrix::build(s, &moments);
        Ok(SchemeMatrices { moments, blocks: AbcdBlocks::new(lam, s.n_conserved()) })
    }

    pub fn lambda(&self) -> &LambdaMatrix {
        self.blocks.lambda()
    }
}
