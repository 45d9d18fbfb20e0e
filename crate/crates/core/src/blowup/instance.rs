use super::content::t_content;
use super::presentation::{be_generators, AlternatingPresentation};
use super::{BlowupError, BlowupRings};
use crate::groebner::IdealHandle;
use crate::pfaffian::{MatrixError, PolyMatrix};
use crate::polyring::{same_ring, Monomial, Polynomial};

/// The Jacobian dual of `φ` (over `R`): the `d x cols` matrix over `T` with
/// `B[j][c] = Σ_i coef(x_j, φ[i][c])·T_i`, so that `T̲·φ = x̲·B`.
pub fn jacobian_dual(phi: &PolyMatrix, rings: &BlowupRings) -> Result<PolyMatrix, BlowupError> {
    let (d, n) = (rings.d(), rings.n());
    if !same_ring(phi.ring(), &rings.r) {
        return Err(BlowupError::InvalidPresentation("entries must lie in k[x]".into()));
    }
    if phi.rows() != n {
        return Err(MatrixError::Shape(format!("{} rows, expected {n}", phi.rows())).into());
    }
    let field = rings.t.field();
    let mut b = PolyMatrix::zeros(&rings.t, d, phi.cols());
    for c in 0..phi.cols() {
        let mut coeffs = vec![vec![0u32; n]; d];
        for i in 0..n {
            for term in phi.get(i, c).terms() {
                if term.mono.degree() != 1 {
                    return Err(BlowupError::NotLinear(i, c));
                }
                let j = term.mono.support().trailing_zeros() as usize;
                coeffs[j][i] = field.add(coeffs[j][i], term.coef);
            }
        }
        for (j, row) in coeffs.into_iter().enumerate() {
            let terms = row
                .into_iter()
                .enumerate()
                .map(|(i, coef)| (coef, Monomial::variable(i, 1).expect("i < n")))
                .collect();
            b.set(j, c, Polynomial::from_terms(&rings.t, Default::default(), terms));
        }
    }
    Ok(b)
}

/// `𝔅 = [[φ, -Bᵗ], [B, 0]]`, both inputs over one ring.
pub fn bordered_matrix(phi: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix, BlowupError> {
    let n = phi.rows();
    let d = b.rows();
    if phi.cols() != n || b.cols() != n {
        return Err(MatrixError::Shape(format!(
            "φ is {}x{}, B is {}x{}",
            phi.rows(),
            phi.cols(),
            b.rows(),
            b.cols()
        ))
        .into());
    }
    if !same_ring(phi.ring(), b.ring()) {
        return Err(MatrixError::Ring(crate::polyring::RingError::RingMismatch).into());
    }
    let ring = phi.ring();
    Ok(PolyMatrix::from_fn(ring, n + d, n + d, |r, c| match (r < n, c < n) {
        (true, true) => phi.get(r, c).clone(),
        (true, false) => -b.get(c - n, r),
        (false, true) => b.get(r - n, c).clone(),
        (false, false) => Polynomial::zero(ring),
    }))
}

/// Signed submaximal Pfaffians of `𝔅` and their common factor.
#[derive(Clone, Debug)]
pub struct FVector {
    /// `F_i = (-1)^(n+d-i)·Pf(𝔅 without row/column i)`, over `S`.
    pub f: Vec<Polynomial>,
    /// `h` with `(F_1..F_{n+d}) = h·(T_1..T_n, -x_1..-x_d)`.
    pub h: Polynomial,
}

/// Computes the F-vector of `bordered` (over `S`) and extracts `h = -F_{n+d}/x_d`,
/// then checks the full factorization.
pub fn f_vector(bordered: &PolyMatrix, rings: &BlowupRings) -> Result<FVector, BlowupError> {
    let (d, n) = (rings.d(), rings.n());
    let m = n + d;
    if bordered.rows() != m || bordered.cols() != m {
        return Err(MatrixError::Shape(format!("bordered matrix must be {m}x{m}")).into());
    }
    if m % 2 == 0 {
        return Ok(FVector { f: vec![Polynomial::zero(&rings.s); m], h: Polynomial::zero(&rings.s) });
    }
    let f = bordered.signed_submax_pfaffians(m as i64)?;
    let x = |j: usize| Polynomial::variable(&rings.s, j);
    let t = |i: usize| Polynomial::variable(&rings.s, d + i);
    let h = -&f[m - 1]
        .exact_div(&x(d - 1))
        .map_err(|e| BlowupError::Inconsistent(format!("F_(n+d) / x_d: {e}")))?;
    for i in 0..n {
        if f[i] != &h * &t(i) {
            return Err(BlowupError::Inconsistent(format!("F_{} ≠ h·T_{}", i + 1, i + 1)));
        }
    }
    for j in 0..d {
        if f[n + j] != -&(&h * &x(j)) {
            return Err(BlowupError::Inconsistent(format!("F_{} ≠ -h·x_{}", n + j + 1, j + 1)));
        }
    }
    if !h.is_zero() {
        let expected = (((n as i64 - d as i64 - 1) / 2) as u32, d as u32 - 1);
        match h.bidegree() {
            Some(b) if b == expected && n > d => {}
            other => {
                return Err(BlowupError::Inconsistent(format!("bidegree of h is {other:?}, expected {expected:?}")));
            }
        }
    }
    Ok(FVector { f, h })
}

/// Everything derived from one presentation.
#[derive(Clone, Debug)]
pub struct BlowupInstance {
    presentation: AlternatingPresentation,
    g: Vec<Polynomial>,
    b: PolyMatrix,
    phi_s: PolyMatrix,
    b_s: PolyMatrix,
    bordered: PolyMatrix,
    f: FVector,
    cphi: IdealHandle,
    id_b: IdealHandle,
    l: IdealHandle,
    candidate_rees: IdealHandle,
    candidate_fiber: IdealHandle,
}

impl BlowupInstance {
    /// Builds all derived data and asserts the structural identities
    /// (`φ·gᵗ = 0`, `ht (g) = 3`, `T̲·φ = x̲·B`, `B·T̲ᵗ = 0`, `(T̲, -x̲)·𝔅 = 0`,
    /// the factorization through `h`, and the shape of `C(φ)`).
    pub fn new(presentation: AlternatingPresentation) -> Result<Self, BlowupError> {
        let rings = presentation.rings().clone();
        let (d, n) = (rings.d(), rings.n());
        let g = be_generators(&presentation)?;
        let b = jacobian_dual(presentation.phi(), &rings)?;
        let phi_s = presentation.phi().map_to_ring(&rings.s)?;
        let b_s = b.map_to_ring(&rings.s)?;

        let xs: Vec<Polynomial> = (0..d).map(|j| Polynomial::variable(&rings.s, j)).collect();
        let ts: Vec<Polynomial> = (0..n).map(|i| Polynomial::variable(&rings.s, d + i)).collect();
        let t_phi = phi_s.left_mul_vector(&ts)?;
        if t_phi != b_s.left_mul_vector(&xs)? {
            return Err(BlowupError::Inconsistent("T̲·φ ≠ x̲·B".into()));
        }
        let ts_t: Vec<Polynomial> = (0..n).map(|i| Polynomial::variable(&rings.t, i)).collect();
        if b.mul_vector(&ts_t)?.iter().any(|e| !e.is_zero()) {
            return Err(BlowupError::Inconsistent("B·T̲ᵗ ≠ 0".into()));
        }

        let bordered = bordered_matrix(&phi_s, &b_s)?;
        let tx: Vec<Polynomial> = ts.iter().cloned().chain(xs.iter().map(|x| -x)).collect();
        if bordered.left_mul_vector(&tx)?.iter().any(|e| !e.is_zero()) {
            return Err(BlowupError::Inconsistent("(T̲, -x̲)·𝔅 ≠ 0".into()));
        }
        let f = f_vector(&bordered, &rings)?;

        let cphi = IdealHandle::new(&rings.t, t_content(&f.f[n + d - 1], &rings)?)?;
        if (n <= d || (n + d) % 2 == 0) && !cphi.is_zero() {
            return Err(BlowupError::Inconsistent("C(φ) must vanish when n <= d or n + d is even".into()));
        }
        for c in cphi.generators() {
            if !c.is_homogeneous() || c.total_degree() != Some(d as u32 - 1) {
                return Err(BlowupError::Inconsistent(format!("C(φ) generator {c} is not a form of degree d-1")));
            }
        }

        let id_b = IdealHandle::new(&rings.t, b.minors(d))?;
        let l = IdealHandle::new(&rings.s, t_phi)?;
        let candidate_fiber = id_b.sum(&cphi)?;
        let candidate_rees = l.sum(&candidate_fiber.map_to_ring(&rings.s)?)?;
        Ok(Self { presentation, g, b, phi_s, b_s, bordered, f, cphi, id_b, l, candidate_rees, candidate_fiber })
    }

    pub fn presentation(&self) -> &AlternatingPresentation {
        &self.presentation
    }

    pub fn rings(&self) -> &BlowupRings {
        self.presentation.rings()
    }

    pub fn d(&self) -> usize {
        self.presentation.d()
    }

    pub fn n(&self) -> usize {
        self.presentation.n()
    }

    /// Generators `g_1..g_n` of `I` in `R`.
    pub fn generators(&self) -> &[Polynomial] {
        &self.g
    }

    /// `I = (g)` in `R`.
    pub fn ideal(&self) -> IdealHandle {
        IdealHandle::new(&self.rings().r, self.g.clone()).expect("generators live in R")
    }

    /// Jacobian dual over `T`.
    pub fn jacobian_dual(&self) -> &PolyMatrix {
        &self.b
    }

    /// Jacobian dual over `S`.
    pub fn jacobian_dual_s(&self) -> &PolyMatrix {
        &self.b_s
    }

    /// `φ` over `S`.
    pub fn phi_s(&self) -> &PolyMatrix {
        &self.phi_s
    }

    pub fn bordered(&self) -> &PolyMatrix {
        &self.bordered
    }

    pub fn f_vector(&self) -> &FVector {
        &self.f
    }

    pub fn h(&self) -> &Polynomial {
        &self.f.h
    }

    /// `C(φ) = c_T(F_{n+d})` in `T`.
    pub fn content(&self) -> &IdealHandle {
        &self.cphi
    }

    /// `I_d(B)` in `T`.
    pub fn minors_ideal(&self) -> &IdealHandle {
        &self.id_b
    }

    /// The symmetric algebra ideal `ℒ` in `S`.
    pub fn symmetric_ideal(&self) -> &IdealHandle {
        &self.l
    }

    /// `ℒ + I_d(B)S + C(φ)S`.
    pub fn candidate_rees(&self) -> &IdealHandle {
        &self.candidate_rees
    }

    /// `I_d(B) + C(φ)`.
    pub fn candidate_fiber(&self) -> &IdealHandle {
        &self.candidate_fiber
    }

    /// `c_T(F_i)` for `1 <= i <= n + d`, generators in `T`.
    pub fn f_content(&self, i: usize) -> Result<Vec<Polynomial>, BlowupError> {
        if i == 0 || i > self.f.f.len() {
            return Err(BlowupError::InvalidParameters(format!("F index {i} out of range")));
        }
        t_content(&self.f.f[i - 1], self.rings())
    }

    /// `T_i` as an element of `S`, `i` 1-based.
    pub fn t_var_s(&self, i: usize) -> Polynomial {
        Polynomial::variable(&self.rings().s, self.d() + i - 1)
    }
}
