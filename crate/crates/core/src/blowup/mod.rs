//! Instances and constructions: random alternating presentations, the
//! Buchsbaum–Eisenbud generators, Jacobian dual, bordered matrix, the
//! F-vector with its common factor `h`, the content ideal `C(φ)` and the
//! candidate defining ideals.

mod content;
mod instance;
mod presentation;

pub use content::{content_ideal, ContentMethod};
pub use instance::{bordered_matrix, f_vector, jacobian_dual, BlowupInstance, FVector};
pub use presentation::{
    be_generators, fitting_heights, random_presentation, AlternatingPresentation, FittingHeight, InstanceFile,
    INSTANCE_FORMAT, MAX_RESAMPLES,
};

use thiserror::Error;

use crate::groebner::GbError;
use crate::pfaffian::MatrixError;
use crate::polyring::{Ring, RingDescriptor, RingError, VariableBlock};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),
    #[error("entry ({0}, {1}) is not a linear form in x")]
    NotLinear(usize, usize),
    #[error("internal identity failed: {0}")]
    Inconsistent(String),
    #[error("instance file: {0}")]
    Format(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Gb(#[from] GbError),
}

impl From<RingError> for BlowupError {
    fn from(e: RingError) -> Self {
        BlowupError::Gb(GbError::Ring(e))
    }
}

impl BlowupError {
    pub fn is_timeout(&self) -> bool {
        matches!(self, BlowupError::Gb(g) if g.is_timeout())
    }
}

/// `R = k[x1..xd]`, `T = k[T1..Tn]` and `S = k[x, T]` with `deg x = (1,0)`,
/// `deg T = (0,1)`.
#[derive(Clone, Debug)]
pub struct BlowupRings {
    pub r: Ring,
    pub t: Ring,
    pub s: Ring,
}

pub const X_BLOCK: &str = "x";
pub const T_BLOCK: &str = "T";

impl BlowupRings {
    pub fn new(characteristic: u64, d: usize, n: usize) -> Result<Self, BlowupError> {
        let x = VariableBlock::indexed(X_BLOCK, "x", d, (1, 0));
        let t = VariableBlock::indexed(T_BLOCK, "T", n, (0, 1));
        Ok(Self {
            r: RingDescriptor::new(characteristic, vec![x.clone()])?,
            t: RingDescriptor::new(characteristic, vec![t.clone()])?,
            s: RingDescriptor::new(characteristic, vec![x, t])?,
        })
    }

    pub fn d(&self) -> usize {
        self.r.nvars()
    }

    pub fn n(&self) -> usize {
        self.t.nvars()
    }
}

/// Exponent vectors of all monomials of degree `deg` in `nvars` variables,
/// lexicographically descending.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if deg == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, deg, &mut vec![0; nvars], &mut out);
    out
}

/// `Σ_{i=0}^{⌊(n-d)/2⌋} C(n-2-2i, d-2)`, the multiplicity of the special fiber ring.
pub fn expected_fiber_multiplicity(d: usize, n: usize) -> i128 {
    if d > n || d < 2 {
        return 0;
    }
    (0..=(n - d) / 2)
        .map(|i| crate::groebner::binomial(n as i64 - 2 - 2 * i as i64, d as i64 - 2))
        .sum()
}

/// Monomials of degree at most `n-d` in `d-1` variables whose degree is even
/// for odd `d` and odd for even `d`.
pub fn monomial_count_restatement(d: usize, n: usize) -> i128 {
    if d > n || d < 2 {
        return 0;
    }
    (0..=(n - d))
        .filter(|k| k % 2 == (d + 1) % 2)
        .map(|k| crate::groebner::binomial(k as i64 + d as i64 - 2, d as i64 - 2))
        .sum()
}
