use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{BlowupError, BlowupRings};
use crate::groebner::{GbError, IdealHandle};
use crate::pfaffian::PolyMatrix;
use crate::polyring::{same_ring, Monomial, MonomialOrder, Polynomial, MAX_VARS};

pub const INSTANCE_FORMAT: u32 = 1;
/// Redraws allowed before a parameter set is declared hopeless.
pub const MAX_RESAMPLES: u32 = 32;

/// On-disk instance. `phi` lists, row by row, the strictly upper triangular
/// entries as coefficient vectors over `x1..xd`; the parser also accepts a
/// full `n x n` array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub format: u32,
    pub char: u64,
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    #[serde(default)]
    pub resamples: u32,
    pub phi: Vec<Vec<Vec<i64>>>,
}

/// An `n x n` alternating matrix of linear forms in `x1..xd`.
#[derive(Clone, Debug)]
pub struct AlternatingPresentation {
    d: usize,
    n: usize,
    seed: u64,
    resamples: u32,
    rings: BlowupRings,
    phi: PolyMatrix,
}

fn validate_parameters(d: usize, n: usize) -> Result<(), BlowupError> {
    if n.is_multiple_of(2) {
        return Err(BlowupError::InvalidParameters(format!("n = {n} must be odd")));
    }
    if d < 3 || n < 3 {
        return Err(BlowupError::InvalidParameters(format!("need d >= 3 and n >= 3, got d = {d}, n = {n}")));
    }
    // two spare slots for the Rees variable and one auxiliary variable
    if d + n + 2 > MAX_VARS {
        return Err(BlowupError::InvalidParameters(format!("d + n = {} exceeds {}", d + n, MAX_VARS - 2)));
    }
    Ok(())
}

impl AlternatingPresentation {
    /// Validates `phi` (over the `R` ring of `rings`): alternating, entries
    /// linear in `x`, odd size.
    pub fn new(rings: BlowupRings, phi: PolyMatrix, seed: u64, resamples: u32) -> Result<Self, BlowupError> {
        let (d, n) = (rings.d(), rings.n());
        validate_parameters(d, n)?;
        if phi.rows() != n || phi.cols() != n {
            return Err(BlowupError::InvalidPresentation(format!("expected {n}x{n}, got {}x{}", phi.rows(), phi.cols())));
        }
        if !same_ring(phi.ring(), &rings.r) {
            return Err(BlowupError::InvalidPresentation("entries must lie in k[x]".into()));
        }
        phi.check_alternating().map_err(|e| BlowupError::InvalidPresentation(e.to_string()))?;
        for i in 0..n {
            for j in 0..n {
                if phi.get(i, j).terms().iter().any(|t| t.mono.degree() != 1) {
                    return Err(BlowupError::NotLinear(i, j));
                }
            }
        }
        Ok(Self { d, n, seed, resamples, rings, phi })
    }

    /// Builds the matrix from upper-triangle coefficient rows.
    pub fn from_upper(
        characteristic: u64,
        d: usize,
        n: usize,
        seed: u64,
        resamples: u32,
        upper: &[Vec<Vec<i64>>],
    ) -> Result<Self, BlowupError> {
        validate_parameters(d, n)?;
        let rings = BlowupRings::new(characteristic, d, n)?;
        if upper.len() != n || upper.iter().enumerate().any(|(i, row)| row.len() != n - 1 - i) {
            return Err(BlowupError::Format(format!("phi must have {n} upper-triangle rows of lengths {}..0", n - 1)));
        }
        let mut phi = PolyMatrix::zeros(&rings.r, n, n);
        for (i, row) in upper.iter().enumerate() {
            for (k, coefs) in row.iter().enumerate() {
                let j = i + 1 + k;
                let e = linear_form(&rings, coefs)?;
                phi.set(j, i, -&e);
                phi.set(i, j, e);
            }
        }
        Self::new(rings, phi, seed, resamples)
    }

    pub fn from_file(file: &InstanceFile) -> Result<Self, BlowupError> {
        if file.format != INSTANCE_FORMAT {
            return Err(BlowupError::Format(format!("unsupported format {}", file.format)));
        }
        let n = file.n;
        if file.phi.len() == n && file.phi.iter().all(|row| row.len() == n) && n > 0 {
            validate_parameters(file.d, n)?;
            let rings = BlowupRings::new(file.char, file.d, n)?;
            let mut entries = Vec::with_capacity(n * n);
            for row in &file.phi {
                for coefs in row {
                    entries.push(linear_form(&rings, coefs)?);
                }
            }
            let phi = PolyMatrix::new(&rings.r, n, n, entries)?;
            return Self::new(rings, phi, file.seed, file.resamples);
        }
        Self::from_upper(file.char, file.d, n, file.seed, file.resamples, &file.phi)
    }

    pub fn from_json(text: &str) -> Result<Self, BlowupError> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| BlowupError::Format(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            format: INSTANCE_FORMAT,
            char: self.characteristic() as u64,
            d: self.d,
            n: self.n,
            seed: self.seed,
            resamples: self.resamples,
            phi: self.upper_coefficients(),
        }
    }

    /// Compact JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_file()).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Canonical coefficient representatives in `0..p`.
    pub fn upper_coefficients(&self) -> Vec<Vec<Vec<i64>>> {
        (0..self.n)
            .map(|i| {
                (i + 1..self.n)
                    .map(|j| {
                        let e = self.phi.get(i, j);
                        (0..self.d).map(|k| e.coefficient(&Monomial::variable(k, 1).expect("k < d")) as i64).collect()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn characteristic(&self) -> u32 {
        self.rings.r.characteristic()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn resamples(&self) -> u32 {
        self.resamples
    }

    pub fn rings(&self) -> &BlowupRings {
        &self.rings
    }

    /// `φ` over `R`.
    pub fn phi(&self) -> &PolyMatrix {
        &self.phi
    }

    pub fn id(&self) -> String {
        format!("d{}-n{}-p{}-s{}", self.d, self.n, self.characteristic(), self.seed)
    }
}

fn linear_form(rings: &BlowupRings, coefs: &[i64]) -> Result<Polynomial, BlowupError> {
    let d = rings.d();
    if coefs.len() != d {
        return Err(BlowupError::Format(format!("entry has {} coefficients, expected {d}", coefs.len())));
    }
    let field = rings.r.field();
    let terms = coefs
        .iter()
        .enumerate()
        .map(|(k, &c)| (field.from_i64(c), Monomial::variable(k, 1).expect("k < d")))
        .collect();
    Ok(Polynomial::from_terms(&rings.r, MonomialOrder::default(), terms))
}

/// Signed submaximal Pfaffians `g_i = (-1)^(i+1) Pf(φ without row/column i)`,
/// checked against `φ·gᵗ = 0` and `ht (g) = 3`.
pub fn be_generators(pres: &AlternatingPresentation) -> Result<Vec<Polynomial>, BlowupError> {
    let n = pres.n as i64;
    let g = pres.phi.signed_submax_pfaffians(n)?;
    if pres.phi.mul_vector(&g)?.iter().any(|e| !e.is_zero()) {
        return Err(BlowupError::Inconsistent("φ·gᵗ ≠ 0".into()));
    }
    let (_, ht) = IdealHandle::new(&pres.rings.r, g.clone())?.dim_height()?;
    if ht != 3 {
        return Err(BlowupError::DegenerateInstance(format!("ht (g) = {ht}, expected 3")));
    }
    Ok(g)
}

/// Height of `Fitt_i = I_{n-i}(φ)` in `R`, with the bound `i + 1` required by `G_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FittingHeight {
    pub i: usize,
    pub minor_size: usize,
    pub height: usize,
    pub required: usize,
}

impl FittingHeight {
    pub fn holds(&self) -> bool {
        self.height >= self.required
    }
}

/// `ht I_{n-i}(φ)` for `1 <= i <= d-1`.
pub fn fitting_heights(pres: &AlternatingPresentation) -> Result<Vec<FittingHeight>, BlowupError> {
    let mut out = Vec::new();
    for i in 1..pres.d {
        let size = pres.n - i;
        let mut minors: Vec<Polynomial> =
            pres.phi.minors(size).into_iter().filter(|m| !m.is_zero()).map(|m| m.monic()).collect();
        minors.sort_by_key(|m| m.to_string());
        minors.dedup();
        let ideal = IdealHandle::new(&pres.rings.r, minors)?;
        let height = match ideal.dim_height() {
            Ok((_, h)) => h,
            Err(GbError::UnitIdeal) => pres.d,
            Err(e) => return Err(e.into()),
        };
        out.push(FittingHeight { i, minor_size: size, height, required: i + 1 });
    }
    Ok(out)
}

fn draw_upper(rng: &mut ChaCha8Rng, d: usize, n: usize, p: u32) -> Vec<Vec<Vec<i64>>> {
    (0..n).map(|i| (i + 1..n).map(|_| (0..d).map(|_| rng.gen_range(0..p) as i64).collect()).collect()).collect()
}

/// A seeded random alternating matrix of linear forms. Draws whose
/// generators have height below three or that fail `G_d` are replaced by a
/// fresh draw from the next stream of the same seed; the number of redraws
/// is recorded.
pub fn random_presentation(d: usize, n: usize, characteristic: u64, seed: u64) -> Result<AlternatingPresentation, BlowupError> {
    validate_parameters(d, n)?;
    let rings = BlowupRings::new(characteristic, d, n)?;
    let p = rings.r.characteristic();
    for attempt in 0..=MAX_RESAMPLES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let upper = draw_upper(&mut rng, d, n, p);
        let pres = AlternatingPresentation::from_upper(characteristic, d, n, seed, attempt, &upper)?;
        match be_generators(&pres) {
            Ok(_) => {}
            Err(BlowupError::DegenerateInstance(_)) => continue,
            Err(e) => return Err(e),
        }
        if fitting_heights(&pres)?.iter().all(FittingHeight::holds) {
            return Ok(pres);
        }
    }
    Err(BlowupError::DegenerateInstance(format!(
        "no draw with ht (g) = 3 and G_{d} after {} attempts",
        MAX_RESAMPLES + 1
    )))
}
