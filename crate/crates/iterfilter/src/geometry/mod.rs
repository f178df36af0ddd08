//! Point clouds, triangle meshes, normalization and spatial queries.
//!
//! Coordinates are `f64` throughout. Point order in a [`PointCloud`] is
//! significant: index `i` keeps referring to the same point across every
//! operation that does not resample.

pub mod io;
pub mod kdtree;
pub mod sample;
pub mod triangle;
pub mod vec3;

pub use kdtree::KdTree;
pub use sample::{farthest_point_sample, sample_mesh_uniform};
pub use triangle::point_to_triangle_distance;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use vec3::Vec3;

/// An ordered list of 3D points.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec3>,
}

impl PointCloud {
    /// Wraps a point list, rejecting non-finite coordinates.
    pub fn new(points: Vec<Vec3>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if !vec3::is_finite(*p) {
                return Err(Error::invalid(format!(
                    "point {i} has non-finite coordinate {p:?}"
                )));
            }
        }
        Ok(PointCloud { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Vec3> {
        self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vec3> {
        self.points.iter()
    }
}

/// A triangle mesh: vertices plus vertex-index triples.
///
/// Degenerate (zero-area) faces are legal in storage; they simply never get
/// picked by area-weighted sampling.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<Vec3>,
    pub faces: Vec<[usize; 3]>,
}

impl TriangleMesh {
    /// Builds a mesh, validating face indices against the vertex count.
    pub fn new(vertices: Vec<Vec3>, faces: Vec<[usize; 3]>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if !vec3::is_finite(*v) {
                return Err(Error::invalid(format!("vertex {i} is non-finite")));
            }
        }
        for (i, f) in faces.iter().enumerate() {
            for &idx in f {
                if idx >= vertices.len() {
                    return Err(Error::invalid(format!(
                        "face {i} references vertex {idx} but mesh has {} vertices",
                        vertices.len()
                    )));
                }
            }
        }
        Ok(TriangleMesh { vertices, faces })
    }

    /// Corner positions of face `i`.
    pub fn face_vertices(&self, i: usize) -> [Vec3; 3] {
        let [a, b, c] = self.faces[i];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    /// Area of face `i`.
    pub fn face_area(&self, i: usize) -> f64 {
        let [a, b, c] = self.face_vertices(i);
        0.5 * vec3::norm(vec3::cross(vec3::sub(b, a), vec3::sub(c, a)))
    }

    /// Applies a normalization transform to every vertex.
    pub fn normalized(&self, transform: &NormalizationTransform) -> TriangleMesh {
        TriangleMesh {
            vertices: self.vertices.iter().map(|&v| transform.apply(v)).collect(),
            faces: self.faces.clone(),
        }
    }
}

/// Bounding-sphere transform mapping raw coordinates to the unit sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizationTransform {
    pub center: Vec3,
    pub radius: f64,
}

impl NormalizationTransform {
    /// Raw point -> normalized point.
    pub fn apply(&self, p: Vec3) -> Vec3 {
        vec3::scale(vec3::sub(p, self.center), 1.0 / self.radius)
    }

    /// Normalized point -> raw point.
    pub fn invert(&self, p: Vec3) -> Vec3 {
        vec3::add(vec3::scale(p, self.radius), self.center)
    }
}

/// Centers a cloud on its bounding-sphere center and scales it so the
/// farthest point sits at distance 1.
///
/// The sphere comes from Ritter's approximate algorithm followed by an exact
/// max-distance radius fix-up, so `max ||p|| == 1` holds to float rounding.
/// A degenerate cloud (single point, or all points equal) gets radius 1 so
/// the transform stays invertible.
pub fn normalize_to_unit_sphere(cloud: &PointCloud) -> Result<(PointCloud, NormalizationTransform)> {
    if cloud.is_empty() {
        return Err(Error::invalid("cannot normalize an empty cloud"));
    }
    let (center, mut radius) = bounding_sphere(cloud.points());
    if radius < 1e-300 {
        radius = 1.0;
    }
    let transform = NormalizationTransform { center, radius };
    let points = cloud.points().iter().map(|&p| transform.apply(p)).collect();
    Ok((PointCloud { points }, transform))
}

/// Ritter's bounding sphere with an exact radius correction pass.
fn bounding_sphere(points: &[Vec3]) -> (Vec3, f64) {
    let first = points[0];
    let a = farthest_from(points, first);
    let b = farthest_from(points, points[a]);
    let mut center = vec3::scale(vec3::add(points[a], points[b]), 0.5);
    let mut radius = 0.5 * vec3::dist(points[a], points[b]);

    for &p in points {
        let d = vec3::dist(center, p);
        if d > radius {
            let new_radius = 0.5 * (radius + d);
            // Shift the center toward p so the old sphere stays inside.
            let t = (d - new_radius) / d;
            center = vec3::add(center, vec3::scale(vec3::sub(p, center), t));
            radius = new_radius;
        }
    }

    // Exact correction: the final radius is the true max distance, so the
    // normalized cloud has max norm exactly 1 up to rounding.
    let mut max_d = 0.0f64;
    for &p in points {
        max_d = max_d.max(vec3::dist(center, p));
    }
    (center, max_d)
}

fn farthest_from(points: &[Vec3], q: Vec3) -> usize {
    let mut best = 0;
    let mut best_d = -1.0;
    for (i, &p) in points.iter().enumerate() {
        let d = vec3::dist_sq(p, q);
        if d > best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

/// Indices of the `m` nearest neighbors of `query`, ascending by distance,
/// ties broken by lower index.
///
/// Small clouds are scanned directly; larger ones go through a [`KdTree`].
/// Callers issuing many queries against one cloud should build the tree
/// themselves.
pub fn knn(query: Vec3, cloud: &PointCloud, m: usize) -> Result<Vec<usize>> {
    if m > cloud.len() {
        return Err(Error::invalid(format!(
            "requested {m} neighbors from a cloud of {}",
            cloud.len()
        )));
    }
    if cloud.len() < kdtree::BRUTE_FORCE_THRESHOLD {
        Ok(knn_brute(query, cloud.points(), m))
    } else {
        Ok(KdTree::build(cloud.points()).knn(query, m))
    }
}

/// Exhaustive kNN used as the small-cloud path and as the test oracle.
pub fn knn_brute(query: Vec3, points: &[Vec3], m: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        let di = vec3::dist_sq(points[i], query);
        let dj = vec3::dist_sq(points[j], query);
        di.total_cmp(&dj).then(i.cmp(&j))
    });
    order.truncate(m);
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{normal3, stream_rng};
    use rand::Rng;

    fn random_cloud(n: usize, seed: u64) -> PointCloud {
        let mut rng = stream_rng(seed, 0);
        let points = (0..n)
            .map(|_| {
                [
                    rng.gen_range(-3.0..5.0),
                    rng.gen_range(-1.0..9.0),
                    rng.gen_range(-6.0..2.0),
                ]
            })
            .collect();
        PointCloud::new(points).unwrap()
    }

    #[test]
    fn rejects_non_finite() {
        assert!(PointCloud::new(vec![[0.0, f64::NAN, 0.0]]).is_err());
        assert!(PointCloud::new(vec![[f64::INFINITY, 0.0, 0.0]]).is_err());
    }

    #[test]
    fn normalize_single_point_uses_unit_radius() {
        let cloud = PointCloud::new(vec![[5.0, 5.0, 5.0]]).unwrap();
        let (normed, t) = normalize_to_unit_sphere(&cloud).unwrap();
        assert_eq!(normed.points()[0], [0.0, 0.0, 0.0]);
        assert_eq!(t.center, [5.0, 5.0, 5.0]);
        assert_eq!(t.radius, 1.0);
    }

    #[test]
    fn normalize_symmetric_pair_is_identity() {
        let cloud = PointCloud::new(vec![[-1.0, 0.0, 0.0], [1.0, 0.0, 0.0]]).unwrap();
        let (normed, t) = normalize_to_unit_sphere(&cloud).unwrap();
        assert_eq!(t.center, [0.0, 0.0, 0.0]);
        assert!((t.radius - 1.0).abs() < 1e-15);
        assert!(vec3::dist(normed.points()[0], [-1.0, 0.0, 0.0]) < 1e-15);
        assert!(vec3::dist(normed.points()[1], [1.0, 0.0, 0.0]) < 1e-15);
    }

    #[test]
    fn normalize_random_box_max_norm_one_and_roundtrip() {
        let cloud = random_cloud(100, 11);
        let (normed, t) = normalize_to_unit_sphere(&cloud).unwrap();

        let max_norm = normed
            .points()
            .iter()
            .map(|&p| vec3::norm(p))
            .fold(0.0f64, f64::max);
        assert!((max_norm - 1.0).abs() < 1e-9, "max norm {max_norm}");

        for (&orig, &ن) in cloud.points().iter().zip(normed.points()) {
            let back = t.invert(ن);
            for k in 0..3 {
                let scale = orig[k].abs().max(1.0);
                assert!((back[k] - orig[k]).abs() / scale < 1e-12);
            }
        }
    }

    #[test]
    fn normalize_empty_errors() {
        let cloud = PointCloud::new(vec![]).unwrap();
        assert!(normalize_to_unit_sphere(&cloud).is_err());
    }

    #[test]
    fn knn_collinear_ordering() {
        let cloud =
            PointCloud::new(vec![[1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [3.0, 0.0, 0.0]]).unwrap();
        assert_eq!(knn([0.0, 0.0, 0.0], &cloud, 2).unwrap(), vec![0, 1]);
    }

    #[test]
    fn knn_tie_breaks_by_lower_index() {
        // Indices 3 and 7 equidistant from the query.
        let mut pts = vec![[10.0, 0.0, 0.0]; 8];
        pts[3] = [1.0, 0.0, 0.0];
        pts[7] = [-1.0, 0.0, 0.0];
        let cloud = PointCloud::new(pts).unwrap();
        let got = knn([0.0, 0.0, 0.0], &cloud, 1).unwrap();
        assert_eq!(got, vec![3]);
    }

    #[test]
    fn knn_m_too_large_errors() {
        let cloud = PointCloud::new(vec![[0.0; 3]]).unwrap();
        assert!(knn([0.0; 3], &cloud, 2).is_err());
    }

    #[test]
    fn knn_matches_brute_force_on_random_clouds() {
        let cloud = random_cloud(1000, 17);
        let tree = KdTree::build(cloud.points());
        let mut rng = stream_rng(18, 0);
        for _ in 0..50 {
            let q = normal3(&mut rng);
            let q = [q[0] * 3.0, q[1] * 3.0, q[2] * 3.0];
            let fast = tree.knn(q, 32);
            let slow = knn_brute(q, cloud.points(), 32);
            assert_eq!(fast, slow);
        }
    }
}
