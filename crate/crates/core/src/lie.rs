//! Group elements of `Sl(n, R)` / `Gl(n, R)` and their Iwasawa, polar and
//! Jordan-hyperbolic decompositions.
//!
//! Everything downstream is built from the `a`-projections computed here:
//! the Iwasawa A-part `a(g)` (log of the positive diagonal in `g = kan`),
//! the polar part `a+(g)` (sorted log singular values), and the hyperbolic
//! part `H+` (sorted log eigenvalue moduli).

use nalgebra::{DMatrix, DVector};

use crate::cartan::CartanVector;
use crate::error::Error;
use crate::Result;

/// Numerical thresholds for decomposition checks. All defaults target
/// `n <= 8` matrices in f64.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Allowed deviation of `det` from 1 for special inputs.
    pub det: f64,
    /// Allowed deviation of `k^T k` from the identity.
    pub orth: f64,
    /// Allowed reconstruction error `|k exp(a) n - g|`.
    pub reconstruct: f64,
    /// Entries below this modulus are treated as zero when fixing signs.
    pub sign: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            det: 1e-9,
            orth: 1e-9,
            reconstruct: 1e-9,
            sign: 1e-12,
        }
    }
}

/// An element of `Sl(n, R)`, with an optional central log-scale so that
/// `Gl(n, R)` inputs can be carried as `exp(central_log) * g0`,
/// `det g0 = 1`. The central part never touches the flag dynamics; it is
/// a scalar sidecar accumulated independently.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    entries: DMatrix<f64>,
    central_log: f64,
    det_flipped: bool,
}

impl GroupElement {
    /// Wraps a matrix expected to have determinant 1.
    pub fn special(entries: DMatrix<f64>) -> Result<Self> {
        Self::special_with(entries, &Tolerances::default())
    }

    pub fn special_with(entries: DMatrix<f64>, tol: &Tolerances) -> Result<Self> {
        Self::check_shape(&entries, "GroupElement::special")?;
        let det = entries.determinant();
        if (det - 1.0).abs() > tol.det {
            return Err(Error::invalid(
                "GroupElement::special",
                format!("determinant {det} is not 1 within {:e}", tol.det),
            ));
        }
        Ok(GroupElement {
            entries,
            central_log: 0.0,
            det_flipped: false,
        })
    }

    /// Splits a general invertible matrix as `exp(central_log) * g0` with
    /// `det g0 = 1`. A negative determinant is absorbed by flipping the
    /// sign of the last column, recorded in `det_flipped`.
    pub fn from_general(entries: DMatrix<f64>) -> Result<Self> {
        Self::check_shape(&entries, "GroupElement::from_general")?;
        let n = entries.nrows();
        let det = entries.determinant();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::invalid(
                "GroupElement::from_general",
                format!("determinant {det} is singular or non-finite"),
            ));
        }
        let central_log = det.abs().ln() / n as f64;
        let mut g0 = entries * (-central_log).exp();
        let det_flipped = det < 0.0;
        if det_flipped {
            for i in 0..n {
                g0[(i, n - 1)] = -g0[(i, n - 1)];
            }
        }
        Ok(GroupElement {
            entries: g0,
            central_log,
            det_flipped,
        })
    }

    fn check_shape(entries: &DMatrix<f64>, op: &'static str) -> Result<()> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::invalid(op, "matrix is not square"));
        }
        if entries.nrows() < 2 {
            return Err(Error::invalid(op, "need n >= 2"));
        }
        if !entries.iter().all(|x| x.is_finite()) {
            return Err(Error::invalid(op, "non-finite entries"));
        }
        Ok(())
    }

    /// The identity of `Sl(n)`.
    pub fn identity(n: usize) -> Self {
        GroupElement {
            entries: DMatrix::identity(n, n),
            central_log: 0.0,
            det_flipped: false,
        }
    }

    /// `exp(diag h)`. Determinant is `exp(sum h)`, so pass a zero-sum
    /// vector to stay in `Sl(n)`.
    pub fn from_diag_exp(h: &CartanVector) -> Self {
        let n = h.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = h.coord(i).exp();
        }
        GroupElement {
            entries: m,
            central_log: 0.0,
            det_flipped: false,
        }
    }

    /// Wraps an orthogonal matrix without the determinant-1 check
    /// (used for frames; `det = ±1`).
    pub(crate) fn from_orthogonal(entries: DMatrix<f64>) -> Self {
        GroupElement {
            entries,
            central_log: 0.0,
            det_flipped: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn central_log(&self) -> f64 {
        self.central_log
    }

    pub fn det_flipped(&self) -> bool {
        self.det_flipped
    }

    pub fn multiply(&self, rhs: &GroupElement) -> GroupElement {
        GroupElement {
            entries: &self.entries * &rhs.entries,
            central_log: self.central_log + rhs.central_log,
            det_flipped: self.det_flipped ^ rhs.det_flipped,
        }
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        let inv = self.entries.clone().try_inverse().ok_or_else(|| {
            Error::decomposition("GroupElement::inverse", "matrix is singular")
        })?;
        Ok(GroupElement {
            entries: inv,
            central_log: -self.central_log,
            det_flipped: self.det_flipped,
        })
    }
}

/// The unique factorization `g = k exp(diag a) n` with `k` orthogonal,
/// `a` the log of the positive diagonal and `n` unit upper triangular.
#[derive(Debug, Clone)]
pub struct IwasawaTriple {
    pub k_factor: DMatrix<f64>,
    pub a_log: CartanVector,
    pub n_factor: DMatrix<f64>,
}

impl IwasawaTriple {
    /// `k exp(diag a) n`, for roundtrip checks.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let n = self.a_log.dim();
        let mut an = self.n_factor.clone();
        for i in 0..n {
            let s = self.a_log.coord(i).exp();
            for j in 0..n {
                an[(i, j)] *= s;
            }
        }
        &self.k_factor * an
    }
}

/// The polar refinement `g = u exp(diag a+) v` with `u, v` orthogonal and
/// `a+` weakly decreasing (sorted log singular values).
#[derive(Debug, Clone)]
pub struct PolarTriple {
    pub u_factor: DMatrix<f64>,
    pub a_plus_log: CartanVector,
    pub v_factor: DMatrix<f64>,
}

impl PolarTriple {
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let n = self.a_plus_log.dim();
        let mut sv = self.v_factor.clone();
        for i in 0..n {
            let s = self.a_plus_log.coord(i).exp();
            for j in 0..n {
                sv[(i, j)] *= s;
            }
        }
        &self.u_factor * sv
    }
}

/// QR with the R-diagonal forced positive by sign flips applied to both
/// factors. This pins down the unique `KAN` factorization.
pub(crate) fn positive_qr(m: &DMatrix<f64>, op: &'static str) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    if !m.iter().all(|x| x.is_finite()) {
        return Err(Error::decomposition(op, "non-finite entries"));
    }
    let n = m.nrows();
    let (mut q, mut r) = m.clone().qr().unpack();
    for i in 0..n {
        let d = r[(i, i)];
        if d == 0.0 || !d.is_finite() {
            return Err(Error::decomposition(
                op,
                format!("singular input: pivot {i} is {d}"),
            ));
        }
        if d < 0.0 {
            for j in 0..n {
                q[(j, i)] = -q[(j, i)];
                r[(i, j)] = -r[(i, j)];
            }
        }
    }
    Ok((q, r))
}

/// Iwasawa decomposition `g = kan`. The A-part is `a(g)` and satisfies
/// `a(g p) = a(g) + a(p)` for `p` in the minimal parabolic `MAN`.
pub fn iwasawa(g: &GroupElement) -> Result<IwasawaTriple> {
    let n = g.dim();
    let (k, r) = positive_qr(g.entries(), "iwasawa")?;
    let mut a = Vec::with_capacity(n);
    let mut nf = DMatrix::identity(n, n);
    for i in 0..n {
        let d = r[(i, i)];
        a.push(d.ln());
        for j in (i + 1)..n {
            nf[(i, j)] = r[(i, j)] / d;
        }
    }
    let a_log = CartanVector::new(a);
    if !a_log.is_finite() {
        return Err(Error::decomposition("iwasawa", "log of A-part overflowed"));
    }
    Ok(IwasawaTriple {
        k_factor: k,
        a_log,
        n_factor: nf,
    })
}

/// Just the `a`-projection of the Iwasawa decomposition.
pub fn iwasawa_a(g: &GroupElement) -> Result<CartanVector> {
    Ok(iwasawa(g)?.a_log)
}

/// Polar decomposition `g = u exp(diag a+) v` via SVD, with singular
/// values sorted weakly decreasing and signs fixed so that each row of
/// `v` has a nonnegative first entry of modulus above the sign tolerance.
pub fn polar(g: &GroupElement) -> Result<PolarTriple> {
    polar_with(g, &Tolerances::default())
}

pub fn polar_with(g: &GroupElement, tol: &Tolerances) -> Result<PolarTriple> {
    let n = g.dim();
    if !g.entries().iter().all(|x| x.is_finite()) {
        return Err(Error::decomposition("polar", "non-finite entries"));
    }
    let svd = nalgebra::linalg::SVD::try_new(g.entries().clone(), true, true, f64::EPSILON, 0)
        .ok_or_else(|| Error::decomposition("polar", "SVD did not converge"))?;
    let mut u = svd.u.expect("u requested");
    let mut v_t = svd.v_t.expect("v_t requested");
    let sigma: DVector<f64> = svd.singular_values;
    let mut a = Vec::with_capacity(n);
    for i in 0..n {
        if sigma[i] <= 0.0 || !sigma[i].is_finite() {
            return Err(Error::decomposition(
                "polar",
                format!("singular value {i} is {}", sigma[i]),
            ));
        }
        a.push(sigma[i].ln());
    }
    // Deterministic sign rule: first significant entry of each v-row >= 0.
    for i in 0..n {
        let lead = (0..n).find(|&j| v_t[(i, j)].abs() > tol.sign);
        if let Some(j) = lead {
            if v_t[(i, j)] < 0.0 {
                for c in 0..n {
                    v_t[(i, c)] = -v_t[(i, c)];
                    u[(c, i)] = -u[(c, i)];
                }
            }
        }
    }
    Ok(PolarTriple {
        u_factor: u,
        a_plus_log: CartanVector::new(a),
        v_factor: v_t,
    })
}

/// Sorted log singular values only.
pub fn polar_a(g: &GroupElement) -> Result<CartanVector> {
    Ok(polar(g)?.a_plus_log)
}

/// The hyperbolic part `H+` of the Jordan decomposition `g = u h n`:
/// the weakly decreasing vector of log moduli of the eigenvalues of `g`.
/// Complex pairs contribute their common modulus twice.
pub fn hyperbolic_log(g: &GroupElement) -> Result<CartanVector> {
    if !g.entries().iter().all(|x| x.is_finite()) {
        return Err(Error::decomposition("hyperbolic_log", "non-finite entries"));
    }
    let schur = nalgebra::linalg::Schur::try_new(g.entries().clone(), f64::EPSILON, 100_000)
        .ok_or_else(|| Error::decomposition("hyperbolic_log", "Schur iteration did not converge"))?;
    let eigs = schur.complex_eigenvalues();
    let mut logs: Vec<f64> = Vec::with_capacity(g.dim());
    for e in eigs.iter() {
        let m = e.norm();
        if m == 0.0 || !m.is_finite() {
            return Err(Error::decomposition(
                "hyperbolic_log",
                format!("eigenvalue modulus {m}"),
            ));
        }
        logs.push(m.ln());
    }
    logs.sort_by(|a, b| b.partial_cmp(a).expect("finite logs"));
    Ok(CartanVector::new(logs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use nalgebra::dmatrix;

    fn sl(m: DMatrix<f64>) -> GroupElement {
        GroupElement::special(m).unwrap()
    }

    #[test]
    fn iwasawa_identity() {
        let t = iwasawa(&GroupElement::identity(3)).unwrap();
        assert_abs_diff_eq!(t.k_factor, DMatrix::identity(3, 3), epsilon = 1e-14);
        assert!(t.a_log.inf_norm() < 1e-14);
        assert_abs_diff_eq!(t.n_factor, DMatrix::identity(3, 3), epsilon = 1e-14);
    }

    #[test]
    fn iwasawa_diagonal_input() {
        let t = iwasawa(&sl(dmatrix![2.0, 0.0; 0.0, 0.5])).unwrap();
        assert_abs_diff_eq!(t.a_log.coord(0), 2.0_f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(t.a_log.coord(1), -(2.0_f64.ln()), epsilon = 1e-14);
        assert_abs_diff_eq!(t.k_factor, DMatrix::identity(2, 2), epsilon = 1e-14);
    }

    #[test]
    fn iwasawa_shear_matches_gram_schmidt_oracle() {
        // Hand Gram-Schmidt on the columns of [[1,0],[1,1]]:
        // q1 = (1,1)/sqrt2, r11 = sqrt2, r12 = 1/sqrt2, r22 = 1/sqrt2.
        let t = iwasawa(&sl(dmatrix![1.0, 0.0; 1.0, 1.0])).unwrap();
        let s = 0.5_f64.sqrt();
        let expect_k = dmatrix![s, -s; s, s];
        assert_abs_diff_eq!(t.k_factor, expect_k, epsilon = 1e-14);
        assert_abs_diff_eq!(t.a_log.coord(0), 0.5 * 2.0_f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(t.a_log.coord(1), -0.5 * 2.0_f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(t.n_factor[(0, 1)], 0.5, epsilon = 1e-14);
    }

    #[test]
    fn iwasawa_a_kills_rotations_and_unipotents() {
        let th = 0.73_f64;
        let rot = sl(dmatrix![th.cos(), -th.sin(); th.sin(), th.cos()]);
        assert!(iwasawa_a(&rot).unwrap().inf_norm() < 1e-14);
        let upper = sl(dmatrix![1.0, 5.0; 0.0, 1.0]);
        assert!(iwasawa_a(&upper).unwrap().inf_norm() < 1e-14);
    }

    #[test]
    fn iwasawa_additivity_on_parabolic() {
        // a(g p) = a(g) + a(p) for p = m h n in MAN.
        let raw = dmatrix![1.0, 0.2, 0.0; 0.4, 1.0, 0.1; 0.3, 0.0, 0.9];
        let d = raw.determinant();
        let g = GroupElement::special(raw * d.powf(-1.0 / 3.0)).unwrap();
        let h = CartanVector::from(vec![1.0, 0.0, -1.0]);
        let m = DMatrix::from_diagonal(&nalgebra::dvector![-1.0, -1.0, 1.0]);
        let n = dmatrix![1.0, 0.3, -0.2; 0.0, 1.0, 0.7; 0.0, 0.0, 1.0];
        let p = GroupElement::special(m * GroupElement::from_diag_exp(&h).entries() * n).unwrap();
        let lhs = iwasawa_a(&g.multiply(&p)).unwrap();
        let rhs = &iwasawa_a(&g).unwrap() + &iwasawa_a(&p).unwrap();
        assert!(lhs.inf_distance(&rhs) < 1e-12);
    }

    #[test]
    fn polar_diagonal_and_rotation() {
        let t = polar(&sl(dmatrix![2.0, 0.0; 0.0, 0.5])).unwrap();
        assert_abs_diff_eq!(t.a_plus_log.coord(0), 2.0_f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(t.a_plus_log.coord(1), -(2.0_f64.ln()), epsilon = 1e-14);

        let th = 1.1_f64;
        let rot = sl(dmatrix![th.cos(), -th.sin(); th.sin(), th.cos()]);
        assert!(polar(&rot).unwrap().a_plus_log.inf_norm() < 1e-14);
    }

    #[test]
    fn polar_shear_hits_golden_ratio() {
        // Eigenvalues of g g^T for g = [[1,1],[0,1]] are (3 ± sqrt5)/2,
        // so the singular values are phi and 1/phi.
        let t = polar(&sl(dmatrix![1.0, 1.0; 0.0, 1.0])).unwrap();
        let phi = 0.5 * (1.0 + 5.0_f64.sqrt());
        assert_abs_diff_eq!(t.a_plus_log.coord(0), phi.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(t.a_plus_log.coord(1), -phi.ln(), epsilon = 1e-12);
        assert!(t.a_plus_log.is_weakly_decreasing(0.0));
        let rec = t.reconstruct();
        assert_abs_diff_eq!(rec, dmatrix![1.0, 1.0; 0.0, 1.0], epsilon = 1e-12);
    }

    #[test]
    fn hyperbolic_log_examples() {
        let t = hyperbolic_log(&sl(dmatrix![2.0, 1.0; 0.0, 0.5])).unwrap();
        assert_abs_diff_eq!(t.coord(0), 2.0_f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(t.coord(1), -(2.0_f64.ln()), epsilon = 1e-12);

        let th = 0.37_f64;
        let rot = sl(dmatrix![th.cos(), -th.sin(); th.sin(), th.cos()]);
        assert!(hyperbolic_log(&rot).unwrap().inf_norm() < 1e-12);

        let unipotent = sl(dmatrix![1.0, 1.0; 0.0, 1.0]);
        assert!(hyperbolic_log(&unipotent).unwrap().inf_norm() < 1e-12);
    }

    #[test]
    fn hyperbolic_log_powers_scale() {
        let g = sl(dmatrix![2.0, 1.0; 0.0, 0.5]);
        let h1 = hyperbolic_log(&g).unwrap();
        let mut p = g.clone();
        for k in 2..=5 {
            p = p.multiply(&g);
            let hk = hyperbolic_log(&p).unwrap();
            assert!(hk.inf_distance(&h1.scale(k as f64)) < 1e-8);
        }
    }

    #[test]
    fn general_linear_split() {
        let g = GroupElement::from_general(dmatrix![3.0, 1.0; 0.5, 1.0]).unwrap();
        let det = g.entries().determinant();
        assert_abs_diff_eq!(det, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.central_log(), 2.5_f64.ln() / 2.0, epsilon = 1e-12);
        assert!(!g.det_flipped());

        let neg = GroupElement::from_general(dmatrix![0.0, 2.0; 2.0, 0.0]).unwrap();
        assert!(neg.det_flipped());
        assert_abs_diff_eq!(neg.entries().determinant(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(neg.central_log(), 4.0_f64.ln() / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn singular_input_is_rejected() {
        assert!(GroupElement::from_general(dmatrix![1.0, 1.0; 1.0, 1.0]).is_err());
        assert!(GroupElement::special(dmatrix![2.0, 0.0; 0.0, 2.0]).is_err());
    }
}
