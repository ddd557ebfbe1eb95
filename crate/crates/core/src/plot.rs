//! Planar geometry of the chamber pictures: wall lines (root kernels),
//! chamber label positions and cloud projections, for rank-2 systems
//! (`A_2` on the zero-sum plane of R^3, `C_2` on R^2).

use crate::cartan::CartanVector;
use crate::error::Error;
use crate::roots::{enumerate_weyl, weyl_act, Family, RootSystem, WeylElement};
use crate::Result;

/// A wall through the origin: the kernel of one positive root, given by
/// a unit direction in plane coordinates, plus the root's display name.
#[derive(Debug, Clone)]
pub struct WallLine {
    pub root: String,
    pub direction: [f64; 2],
}

/// A chamber label: the Weyl element name and a representative position.
#[derive(Debug, Clone)]
pub struct ChamberLabel {
    pub name: String,
    pub position: [f64; 2],
}

/// Figure-ready chamber geometry.
#[derive(Debug, Clone)]
pub struct ChamberGeometry {
    pub walls: Vec<WallLine>,
    pub chambers: Vec<ChamberLabel>,
}

/// Orthonormal basis of the plane the spectra live in.
fn plane_basis(rs: &RootSystem) -> Result<[CartanVector; 2]> {
    match (rs.family(), rs.ambient_dim()) {
        (Family::A, 3) => {
            let s2 = 0.5_f64.sqrt();
            let s6 = (1.0 / 6.0_f64).sqrt();
            Ok([
                CartanVector::from(vec![s2, -s2, 0.0]),
                CartanVector::from(vec![s6, s6, -2.0 * s6]),
            ])
        }
        (Family::C, 2) => Ok([
            CartanVector::from(vec![1.0, 0.0]),
            CartanVector::from(vec![0.0, 1.0]),
        ]),
        _ => Err(Error::invalid(
            "plane_basis",
            "plot geometry is available for A_2 and C_2 only",
        )),
    }
}

/// Projects a Cartan vector onto plane coordinates.
pub fn project(rs: &RootSystem, h: &CartanVector) -> Result<[f64; 2]> {
    let [u, v] = plane_basis(rs)?;
    Ok([dot(h, &u), dot(h, &v)])
}

fn dot(a: &CartanVector, b: &CartanVector) -> f64 {
    a.coords().iter().zip(b.coords()).map(|(x, y)| x * y).sum()
}

/// Wall lines and chamber labels for the rank-2 picture. `radius` sets
/// the chamber-label distance from the origin.
pub fn chamber_geometry(rs: &RootSystem, radius: f64) -> Result<ChamberGeometry> {
    let [u, v] = plane_basis(rs)?;
    let mut walls = Vec::new();
    for root in rs.positive_roots() {
        // Kernel direction in plane coordinates: rotate the projected
        // root normal by 90 degrees.
        let nx = root
            .coeffs()
            .iter()
            .zip(u.coords())
            .map(|(&c, &x)| c as f64 * x)
            .sum::<f64>();
        let ny = root
            .coeffs()
            .iter()
            .zip(v.coords())
            .map(|(&c, &x)| c as f64 * x)
            .sum::<f64>();
        let len = (nx * nx + ny * ny).sqrt();
        walls.push(WallLine {
            root: root.to_string(),
            direction: [-ny / len, nx / len],
        });
    }

    // A regular reference point of the positive chamber, normalized.
    let h_ref = match rs.family() {
        Family::A => CartanVector::from(vec![1.0, 0.25, -1.25]),
        Family::C => CartanVector::from(vec![1.0, 0.45]),
    };
    let mut chambers = Vec::new();
    for w in enumerate_weyl(rs)? {
        let moved = weyl_act(&w, &h_ref)?;
        let p = project(rs, &moved)?;
        let norm = (p[0] * p[0] + p[1] * p[1]).sqrt();
        chambers.push(ChamberLabel {
            name: chamber_name(&w),
            position: [p[0] / norm * radius, p[1] / norm * radius],
        });
    }
    Ok(ChamberGeometry { walls, chambers })
}

fn chamber_name(w: &WeylElement) -> String {
    format!("C_{}", w.name())
}
