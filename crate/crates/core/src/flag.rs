//! Points of the full flag manifold of `R^n`, the group action on them,
//! Bruhat-cell classification and fixed-set membership under `exp(t H)`.
//!
//! A complete flag `V_1 c V_2 c ... c V_n` is stored as an orthonormal
//! frame whose first `j` columns span `V_j`. Frames are sign-canonicalized
//! (each column's first significant entry is positive), which quotients
//! out the group `M` of `±1` diagonals and makes the frame a faithful
//! representative of the coset `K/M`.

use nalgebra::DMatrix;

use crate::cartan::CartanVector;
use crate::error::Error;
use crate::lie::{positive_qr, GroupElement};
use crate::roots::{
    coset_representative, theta_of, RootSystem, ThetaSubset, WeylElement,
};
use crate::Result;

/// Entries below this modulus are skipped when choosing a column's
/// leading entry for sign canonicalization.
pub const SIGN_TOL: f64 = 1e-12;

/// A complete flag, stored as a sign-canonicalized orthogonal frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FlagPoint {
    frame: DMatrix<f64>,
}

impl FlagPoint {
    /// The standard flag `b0 = (<e1> c <e1,e2> c ...)`.
    pub fn standard(n: usize) -> Self {
        FlagPoint {
            frame: DMatrix::identity(n, n),
        }
    }

    /// Builds a flag from an orthogonal frame, canonicalizing signs.
    pub fn from_frame(frame: DMatrix<f64>) -> Result<Self> {
        let n = frame.nrows();
        if frame.ncols() != n {
            return Err(Error::invalid("FlagPoint::from_frame", "frame not square"));
        }
        let gram = frame.transpose() * &frame;
        let dev = (&gram - DMatrix::identity(n, n)).amax();
        if dev > 1e-8 {
            return Err(Error::invalid(
                "FlagPoint::from_frame",
                format!("frame not orthogonal: |k^T k - I| = {dev:.3e}"),
            ));
        }
        Ok(FlagPoint {
            frame: canonicalize_signs(frame),
        })
    }

    /// Orthonormalizes an arbitrary nonsingular matrix into a flag
    /// (the flag of its column spans).
    pub fn from_spanning(m: &DMatrix<f64>) -> Result<Self> {
        let (q, _) = positive_qr(m, "FlagPoint::from_spanning")?;
        Ok(FlagPoint {
            frame: canonicalize_signs(q),
        })
    }

    pub fn dim(&self) -> usize {
        self.frame.nrows()
    }

    pub fn frame(&self) -> &DMatrix<f64> {
        &self.frame
    }
}

fn canonicalize_signs(mut frame: DMatrix<f64>) -> DMatrix<f64> {
    let n = frame.nrows();
    for j in 0..n {
        let lead = (0..n).find(|&i| frame[(i, j)].abs() > SIGN_TOL);
        if let Some(i) = lead {
            if frame[(i, j)] < 0.0 {
                for r in 0..n {
                    frame[(r, j)] = -frame[(r, j)];
                }
            }
        }
    }
    frame
}

/// Bruhat-cell label: the Weyl element of the lower-unipotent orbit
/// containing the flag, with a degeneracy flag raised when a rank
/// decision fell inside the tolerance band.
#[derive(Debug, Clone, PartialEq)]
pub struct CellLabel {
    pub w: WeylElement,
    pub degenerate: bool,
}

/// Left action of `g` on a flag: orthonormalize the moved frame. The
/// central part of `g` acts trivially, so this is the `Sl(n)` action.
pub fn act(g: &GroupElement, b: &FlagPoint) -> Result<FlagPoint> {
    let moved = g.entries() * b.frame();
    let (q, _) = positive_qr(&moved, "flag act")?;
    Ok(FlagPoint {
        frame: canonicalize_signs(q),
    })
}

/// The coordinate flag of `w`: column `j` of the frame is `e_{w(j)}`.
/// These are exactly the fixed flags of every `exp(diag H)`, and for
/// regular `H` in the positive chamber the `w`-fixed point.
pub fn coordinate_flag(w: &WeylElement) -> FlagPoint {
    let n = w.rank();
    let mut frame = DMatrix::zeros(n, n);
    for j in 0..n {
        frame[(w.perm()[j], j)] = 1.0;
    }
    FlagPoint { frame }
}

/// Distance on the flag manifold: the largest gap `|P_Vj - P_V'j|_2`
/// (sine of the largest principal angle) over the nested subspaces.
pub fn flag_distance(a: &FlagPoint, b: &FlagPoint) -> f64 {
    let n = a.dim();
    assert_eq!(n, b.dim(), "dimension mismatch");
    let mut worst = 0.0_f64;
    for j in 1..n {
        worst = worst.max(subspace_gap(a, b, j));
    }
    worst
}

/// Gap between the `j`-dimensional subspaces of two flags.
pub fn subspace_gap(a: &FlagPoint, b: &FlagPoint, j: usize) -> f64 {
    let inner = a.frame().columns(0, j).transpose() * b.frame().columns(0, j);
    let sigma = inner.svd(false, false).singular_values;
    let cos_min = sigma[sigma.len() - 1].clamp(-1.0, 1.0);
    (1.0 - cos_min * cos_min).max(0.0).sqrt()
}

/// Classifies the Bruhat cell `N^- w b0` containing `b` from the rank
/// pattern of leading submatrices, with ranks decided at `tol` and the
/// degeneracy flag raised for singular values inside `(tol/10, tol*10)`.
pub fn bruhat_cell(b: &FlagPoint, tol: f64) -> CellLabel {
    let n = b.dim();
    let mut degenerate = false;
    // ranks[i][j] = rank of the top-left i x j block, i, j in 1..=n.
    let mut ranks = vec![vec![0usize; n + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            let sub = b.frame().view((0, 0), (i, j)).into_owned();
            let sigma = sub.svd(false, false).singular_values;
            let mut r = 0;
            for s in sigma.iter() {
                if *s > tol {
                    r += 1;
                }
                if *s > tol / 10.0 && *s < tol * 10.0 {
                    degenerate = true;
                }
            }
            ranks[i][j] = r;
        }
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for j in 1..=n {
        // w(j) = smallest i whose top-i rank jumps when column j arrives.
        let jump = (1..=n).find(|&i| ranks[i][j] > ranks[i][j - 1] && !used[i - 1]);
        match jump {
            Some(i) => {
                perm[j - 1] = i - 1;
                used[i - 1] = true;
            }
            None => {
                degenerate = true;
                let i = (0..n).find(|&i| !used[i]).expect("free slot exists");
                perm[j - 1] = i;
                used[i] = true;
            }
        }
    }
    CellLabel {
        w: WeylElement::from_perm(perm),
        degenerate,
    }
}

/// Whether `exp(diag H)` fixes `b` (within `tol` in the flag metric),
/// and when it does, the `W_Theta(H)`-coset labelling which fixed-point
/// component `fix(H, w)` contains it. `H` must lie in the closed
/// positive chamber.
pub fn fixed_by(
    rs: &RootSystem,
    h: &CartanVector,
    b: &FlagPoint,
    tol: f64,
) -> Result<(bool, Option<WeylElement>)> {
    let theta = theta_of(rs, h, tol)?;
    let moved = act(&GroupElement::from_diag_exp(h), b)?;
    if flag_distance(&moved, b) > tol {
        return Ok((false, None));
    }
    let cell = bruhat_cell(b, 1e-8);
    let rep = coset_representative(rs, &theta, &cell.w);
    Ok((true, Some(rep)))
}

/// Convenience: the coset representative of a cell label under
/// `W_Theta`, for component reporting.
pub fn component_label(rs: &RootSystem, theta: &ThetaSubset, w: &WeylElement) -> WeylElement {
    coset_representative(rs, theta, w)
}
