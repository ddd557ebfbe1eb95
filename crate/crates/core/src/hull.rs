//! Convex hull support for spectrum clouds.
//!
//! Clouds live in the Cartan subspace but are almost always lower
//! dimensional (the zero-sum plane for `Sl(3)`). Points are first
//! projected onto their affine span; the hull is then exact for span
//! dimension <= 3 (monotone chain in 2-D, quickhull in 3-D). Above that,
//! extreme points are retained by filtering against a family of linear
//! functionals, which is what every downstream assertion evaluates.

use nalgebra::{DMatrix, DVector};

use crate::cartan::CartanVector;

/// Indices of the hull vertices of `points`, in a deterministic order.
/// `functionals` is the filtering family used beyond dimension 3.
pub fn hull_vertices(points: &[CartanVector], functionals: &[Vec<f64>]) -> Vec<usize> {
    if points.is_empty() {
        return Vec::new();
    }
    let n = points[0].dim();
    let dedup = deduplicate(points);
    if dedup.len() == 1 {
        return vec![dedup[0]];
    }

    // Affine span of the cloud via SVD of the centered coordinates.
    let mean: Vec<f64> = (0..n)
        .map(|i| dedup.iter().map(|&p| points[p].coord(i)).sum::<f64>() / dedup.len() as f64)
        .collect();
    let centered = DMatrix::from_fn(n, dedup.len(), |i, j| points[dedup[j]].coord(i) - mean[i]);
    let svd = centered.clone().svd(true, false);
    let scale = svd.singular_values.max().max(1e-300);
    let dim = svd
        .singular_values
        .iter()
        .filter(|&&s| s > 1e-9 * scale)
        .count();
    let u = svd.u.expect("u requested");

    let mut verts: Vec<usize> = match dim {
        0 => vec![0],
        1 => {
            let axis = u.column(0);
            let proj: Vec<f64> = (0..dedup.len())
                .map(|j| centered.column(j).dot(&axis))
                .collect();
            let lo = argmin(&proj);
            let hi = argmax(&proj);
            if lo == hi {
                vec![lo]
            } else {
                vec![lo, hi]
            }
        }
        2 => {
            let pts2: Vec<[f64; 2]> = (0..dedup.len())
                .map(|j| {
                    [
                        centered.column(j).dot(&u.column(0)),
                        centered.column(j).dot(&u.column(1)),
                    ]
                })
                .collect();
            monotone_chain(&pts2)
        }
        3 => {
            let pts3: Vec<[f64; 3]> = (0..dedup.len())
                .map(|j| {
                    [
                        centered.column(j).dot(&u.column(0)),
                        centered.column(j).dot(&u.column(1)),
                        centered.column(j).dot(&u.column(2)),
                    ]
                })
                .collect();
            quickhull3(&pts3)
        }
        _ => functional_filter(points, &dedup, functionals),
    };
    // Map back to indices into the original point list.
    for v in verts.iter_mut() {
        *v = dedup[*v];
    }
    verts.sort_unstable();
    verts.dedup();
    verts
}

fn deduplicate(points: &[CartanVector]) -> Vec<usize> {
    let mut keep: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if keep.iter().all(|&k| points[k].inf_distance(p) > 1e-12) {
            keep.push(i);
        }
    }
    keep
}

fn argmin(xs: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in xs.iter().enumerate() {
        if x < xs[best] {
            best = i;
        }
    }
    best
}

fn argmax(xs: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in xs.iter().enumerate() {
        if x > xs[best] {
            best = i;
        }
    }
    best
}

/// Andrew's monotone chain; returns vertex indices, strictly convex
/// (collinear interior points dropped).
fn monotone_chain(pts: &[[f64; 2]]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| {
        pts[a]
            .partial_cmp(&pts[b])
            .expect("finite coordinates")
    });
    let cross = |o: usize, a: usize, b: usize| -> f64 {
        (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1])
            - (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0])
    };
    let mut hull: Vec<usize> = Vec::new();
    for &i in &order {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], i) <= 0.0 {
            hull.pop();
        }
        hull.push(i);
    }
    let lower_len = hull.len() + 1;
    for &i in order.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], i) <= 0.0
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}

/// Quickhull in 3-D, returning vertex indices only.
fn quickhull3(pts: &[[f64; 3]]) -> Vec<usize> {
    let m = pts.len();
    let sub = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let cross = |a: [f64; 3], b: [f64; 3]| {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];

    // Initial tetrahedron from extreme points.
    let mut i0 = 0;
    for i in 1..m {
        if pts[i] < pts[i0] {
            i0 = i;
        }
    }
    let mut i1 = if i0 == 0 { 1 } else { 0 };
    let mut best = 0.0;
    for i in 0..m {
        let d = dot(sub(pts[i], pts[i0]), sub(pts[i], pts[i0]));
        if d > best {
            best = d;
            i1 = i;
        }
    }
    let e01 = sub(pts[i1], pts[i0]);
    let mut i2 = usize::MAX;
    best = 1e-18;
    for i in 0..m {
        let c = cross(e01, sub(pts[i], pts[i0]));
        let d = dot(c, c);
        if d > best {
            best = d;
            i2 = i;
        }
    }
    if i2 == usize::MAX {
        // Degenerate (collinear): endpoints only.
        let mut out = vec![i0, i1];
        out.dedup();
        return out;
    }
    let normal = cross(e01, sub(pts[i2], pts[i0]));
    let mut i3 = usize::MAX;
    best = 1e-15;
    for i in 0..m {
        let d = dot(normal, sub(pts[i], pts[i0])).abs();
        if d > best {
            best = d;
            i3 = i;
        }
    }
    if i3 == usize::MAX {
        // Coplanar within tolerance: fall back to the 2-D hull in plane
        // coordinates.
        let nn = dot(normal, normal).sqrt();
        let nhat = [normal[0] / nn, normal[1] / nn, normal[2] / nn];
        let ux = {
            let e = sub(pts[i1], pts[i0]);
            let l = dot(e, e).sqrt();
            [e[0] / l, e[1] / l, e[2] / l]
        };
        let uy = cross(nhat, ux);
        let flat: Vec<[f64; 2]> = pts
            .iter()
            .map(|&p| [dot(sub(p, pts[i0]), ux), dot(sub(p, pts[i0]), uy)])
            .collect();
        return monotone_chain(&flat);
    }

    // Faces as index triples with outward orientation.
    let centroid = [
        (pts[i0][0] + pts[i1][0] + pts[i2][0] + pts[i3][0]) / 4.0,
        (pts[i0][1] + pts[i1][1] + pts[i2][1] + pts[i3][1]) / 4.0,
        (pts[i0][2] + pts[i1][2] + pts[i2][2] + pts[i3][2]) / 4.0,
    ];
    let scale: f64 = pts
        .iter()
        .map(|p| dot(sub(*p, centroid), sub(*p, centroid)).sqrt())
        .fold(0.0, f64::max);
    let eps = 1e-12 * scale.max(1e-12);
    let orient = |f: &mut [usize; 3]| {
        let nrm = cross(sub(pts[f[1]], pts[f[0]]), sub(pts[f[2]], pts[f[0]]));
        if dot(nrm, sub(centroid, pts[f[0]])) > 0.0 {
            f.swap(1, 2);
        }
    };
    let mut faces: Vec<[usize; 3]> = vec![
        [i0, i1, i2],
        [i0, i1, i3],
        [i0, i2, i3],
        [i1, i2, i3],
    ];
    for f in faces.iter_mut() {
        orient(f);
    }

    let face_sees = |f: &[usize; 3], p: usize| -> f64 {
        let nrm = cross(sub(pts[f[1]], pts[f[0]]), sub(pts[f[2]], pts[f[0]]));
        let l = dot(nrm, nrm).sqrt();
        dot(nrm, sub(pts[p], pts[f[0]])) / l.max(1e-300)
    };

    let mut pending: Vec<usize> = (0..m).collect();
    loop {
        // Farthest outside point over all faces.
        let mut far: Option<(usize, f64)> = None;
        for &p in &pending {
            let mut worst = f64::NEG_INFINITY;
            for f in &faces {
                worst = worst.max(face_sees(f, p));
            }
            if worst > eps {
                match far {
                    Some((_, d)) if d >= worst => {}
                    _ => far = Some((p, worst)),
                }
            }
        }
        let Some((apex, _)) = far else { break };
        // Horizon: edges between visible and hidden faces.
        let visible: Vec<bool> = faces.iter().map(|f| face_sees(f, apex) > eps).collect();
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for (fi, f) in faces.iter().enumerate() {
            if !visible[fi] {
                continue;
            }
            for e in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                // An edge is on the horizon if its mirrored copy belongs
                // to a hidden face.
                let mirrored = faces.iter().enumerate().any(|(gi, g)| {
                    !visible[gi]
                        && [(g[0], g[1]), (g[1], g[2]), (g[2], g[0])]
                            .iter()
                            .any(|&(a, b)| a == e.1 && b == e.0)
                });
                if mirrored {
                    horizon.push(e);
                }
            }
        }
        let mut next_faces: Vec<[usize; 3]> = faces
            .iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| *f)
            .collect();
        for (a, b) in horizon {
            let mut f = [a, b, apex];
            let nrm = cross(sub(pts[f[1]], pts[f[0]]), sub(pts[f[2]], pts[f[0]]));
            if dot(nrm, sub(centroid, pts[f[0]])) > 0.0 {
                f.swap(0, 1);
            }
            next_faces.push(f);
        }
        faces = next_faces;
        pending.retain(|&p| p != apex);
    }

    let mut verts: Vec<usize> = faces.iter().flat_map(|f| f.iter().copied()).collect();
    verts.sort_unstable();
    verts.dedup();
    verts
}

/// Keeps the points attaining the min or max of some functional in the
/// family — an inner approximation of the extreme set adequate for
/// linear-functional queries.
fn functional_filter(
    points: &[CartanVector],
    idx: &[usize],
    functionals: &[Vec<f64>],
) -> Vec<usize> {
    let mut keep = Vec::new();
    for f in functionals {
        let vals: Vec<f64> = idx
            .iter()
            .map(|&i| f.iter().zip(points[i].coords()).map(|(a, b)| a * b).sum())
            .collect();
        keep.push(argmin(&vals));
        keep.push(argmax(&vals));
    }
    if keep.is_empty() {
        keep.extend(0..idx.len());
    }
    keep.sort_unstable();
    keep.dedup();
    keep
}

/// Whether `p` lies within `slack` of the convex hull of `vertices`
/// (exact membership via a least-squares projection onto the hull:
/// small instances only).
pub fn contains_fattened(vertices: &[CartanVector], p: &CartanVector, slack: f64) -> bool {
    distance_to_hull(vertices, p) <= slack
}

/// Euclidean distance from `p` to `conv(vertices)`, computed with a
/// Frank-Wolfe iteration (exact enough at desk scale).
pub fn distance_to_hull(vertices: &[CartanVector], p: &CartanVector) -> f64 {
    assert!(!vertices.is_empty(), "hull must be nonempty");
    let n = p.dim();
    let m = vertices.len();
    if m == 1 {
        return vertices[0].distance(p);
    }
    // Start from the nearest vertex; iterate x <- x + gamma (v* - x).
    let mut x: DVector<f64> = {
        let mut best = 0;
        for i in 1..m {
            if vertices[i].distance(p) < vertices[best].distance(p) {
                best = i;
            }
        }
        DVector::from_column_slice(vertices[best].coords())
    };
    let target = DVector::from_column_slice(p.coords());
    for _ in 0..2000 {
        let grad = &x - &target;
        // Vertex minimizing <grad, v>.
        let mut best = 0;
        let mut best_val = f64::INFINITY;
        for (i, v) in vertices.iter().enumerate() {
            let val: f64 = (0..n).map(|k| grad[k] * v.coord(k)).sum();
            if val < best_val {
                best_val = val;
                best = i;
            }
        }
        let dir = DVector::from_column_slice(vertices[best].coords()) - &x;
        let denom = dir.dot(&dir);
        if denom < 1e-30 {
            break;
        }
        let gamma = (-grad.dot(&dir) / denom).clamp(0.0, 1.0);
        if gamma * denom.sqrt() < 1e-15 {
            break;
        }
        x += gamma * dir;
    }
    (x - target).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cvs(pts: &[&[f64]]) -> Vec<CartanVector> {
        pts.iter().map(|p| CartanVector::from(*p)).collect()
    }

    #[test]
    fn hull_of_singleton_and_segment() {
        let pts = cvs(&[&[1.0, 0.0, -1.0]]);
        assert_eq!(hull_vertices(&pts, &[]), vec![0]);

        let pts = cvs(&[
            &[0.0, 0.0, 0.0],
            &[1.0, 0.0, -1.0],
            &[0.5, 0.0, -0.5],
            &[0.25, 0.0, -0.25],
        ]);
        let verts = hull_vertices(&pts, &[]);
        assert_eq!(verts, vec![0, 1]);
    }

    #[test]
    fn planar_hull_square_with_interior() {
        // Zero-sum plane points: a triangle orbit plus interior points.
        let pts = cvs(&[
            &[2.0, 0.0, -2.0],
            &[0.0, 2.0, -2.0],
            &[-2.0, 2.0, 0.0],
            &[0.0, 0.0, 0.0],
            &[0.5, 0.5, -1.0],
            &[2.0, 0.0, -2.0],
        ]);
        let verts = hull_vertices(&pts, &[]);
        assert_eq!(verts, vec![0, 1, 2]);
        for p in &pts {
            assert!(contains_fattened(
                &verts.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>(),
                p,
                1e-9
            ));
        }
    }

    #[test]
    fn hull_3d_simplex() {
        // Zero-sum 4-vectors: ambient span dimension 3.
        let pts = cvs(&[
            &[3.0, -1.0, -1.0, -1.0],
            &[-1.0, 3.0, -1.0, -1.0],
            &[-1.0, -1.0, 3.0, -1.0],
            &[-1.0, -1.0, -1.0, 3.0],
            &[0.0, 0.0, 0.0, 0.0],
            &[1.0, 1.0, -1.0, -1.0],
        ]);
        let verts = hull_vertices(&pts, &[]);
        assert_eq!(verts, vec![0, 1, 2, 3]);
    }

    #[test]
    fn hull_3d_cube() {
        let mut raw: Vec<Vec<f64>> = Vec::new();
        for x in [-1.0, 1.0] {
            for y in [-1.0, 1.0] {
                for z in [-1.0, 1.0] {
                    raw.push(vec![x, y, z, -(x + y + z)]);
                }
            }
        }
        // The 4th coordinate breaks the cube into a 3-dim affine set
        // already; add interior points.
        raw.push(vec![0.1, 0.0, 0.0, -0.1]);
        raw.push(vec![0.0, 0.2, -0.1, -0.1]);
        let pts: Vec<CartanVector> = raw.into_iter().map(CartanVector::from).collect();
        let verts = hull_vertices(&pts, &[]);
        assert_eq!(verts.len(), 8);
        assert!(verts.iter().all(|&v| v < 8));
        let vset: Vec<CartanVector> = verts.iter().map(|&i| pts[i].clone()).collect();
        for p in &pts {
            assert!(contains_fattened(&vset, p, 1e-9));
        }
    }

    #[test]
    fn distance_to_hull_basics() {
        let verts = cvs(&[&[1.0, -1.0], &[-1.0, 1.0]]);
        let d = distance_to_hull(&verts, &CartanVector::from(vec![0.0, 0.0]));
        assert!(d < 1e-10);
        let d = distance_to_hull(&verts, &CartanVector::from(vec![2.0, -2.0]));
        assert!((d - 2.0_f64.sqrt()).abs() < 1e-9);
    }
}
