//! Tangent-cone algebra at a point: pointedness classification, extreme
//! rays, vertex stars and their exact angular coverage in the plane.
//!
//! The spherical polytopes around a point are modelled by their polyhedral
//! tangent cones (apex at the origin); intersecting with the unit sphere is a
//! type-preserving bijection, so no irrational sphere points ever appear.

use crate::exactnum::{Matrix, Scalar, Vector};
use crate::patch::Patch;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StarError {
    #[error("extreme rays unsupported for dimension {0}")]
    UnsupportedDim(usize),
    #[error("point lies outside the patch support")]
    OutsideSupport,
    #[error("theorem hypothesis absent: {0}")]
    PreconditionViolated(String),
}

/// Polyhedral cone `{v : normal . v >= 0}` with apex at the origin.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cone {
    normals: Vec<Vector>,
    dim: usize,
}

/// A-type: pointed (no full line). B-type: contains a line through the apex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConeType {
    A,
    B,
}

impl fmt::Display for ConeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeType::A => write!(f, "A"),
            ConeType::B => write!(f, "B"),
        }
    }
}

impl Cone {
    pub fn new(normals: Vec<Vector>, dim: usize) -> Self {
        assert!(normals.iter().all(|n| n.dim() == dim && !n.is_zero()));
        // drop exact duplicates up to positive scaling
        let mut kept: Vec<Vector> = Vec::new();
        let mut canon: Vec<Vector> = Vec::new();
        for n in normals {
            let c = n.canonical_direction();
            if !canon.contains(&c) {
                canon.push(c);
                kept.push(n);
            }
        }
        Cone { normals: kept, dim }
    }

    pub fn full_space(dim: usize) -> Self {
        Cone {
            normals: Vec::new(),
            dim,
        }
    }

    /// The halfspace cone `{v : normal . v >= 0}`.
    pub fn halfspace(normal: Vector) -> Self {
        let dim = normal.dim();
        Cone::new(vec![normal], dim)
    }

    pub fn normals(&self) -> &[Vector] {
        &self.normals
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        if self.normals.is_empty() {
            0
        } else {
            Matrix::new(self.normals.clone()).rank()
        }
    }

    /// Dimension of the lineality space `{v : normals . v = 0}`.
    pub fn lineality_dim(&self) -> usize {
        self.dim - self.rank()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.normals.iter().all(|n| n.dot(v).sign() >= 0)
    }

    pub fn contains_interior(&self, v: &Vector) -> bool {
        self.normals.iter().all(|n| n.dot(v).sign() > 0)
    }

    /// True when the direction is tight on at least one defining normal.
    pub fn on_boundary_hyperplane(&self, v: &Vector) -> bool {
        self.normals.iter().any(|n| n.dot(v).is_zero())
    }

    /// Image of the cone under an invertible linear map `T` (normals map by
    /// the inverse transpose; here realized by solving `T^t n' = n`).
    pub fn linear_image(&self, t: &Matrix) -> Cone {
        let tt = t.transpose();
        let normals = self
            .normals
            .iter()
            .map(|n| tt.solve(n).expect("invertible map"))
            .collect();
        Cone::new(normals, self.dim)
    }

    /// Restriction of the cone to the hyperplane `{v : h . v = 0}`, expressed
    /// in an orthogonal coordinate basis of that hyperplane (dimension n-1).
    pub fn intersect_with_hyperplane(&self, h: &Vector) -> Cone {
        assert_eq!(h.dim(), self.dim);
        assert!(!h.is_zero());
        let basis = hyperplane_basis(h);
        let normals: Vec<Vector> = self
            .normals
            .iter()
            .filter_map(|n| {
                let row = Vector::new(basis.iter().map(|b| n.dot(b)).collect());
                if row.is_zero() {
                    None
                } else {
                    Some(row)
                }
            })
            .collect();
        Cone::new(normals, self.dim - 1)
    }
}

/// An orthogonal basis of `{v : h . v = 0}` with exact entries.
fn hyperplane_basis(h: &Vector) -> Vec<Vector> {
    let n = h.dim();
    match n {
        1 => Vec::new(),
        2 => vec![Vector::new(vec![-h.get(1).clone(), h.get(0).clone()])],
        3 => {
            // pick a coordinate axis not parallel to h, then Gram-Schmidt-free
            // cross-product construction
            let axis = (0..3)
                .map(|i| {
                    Vector::new(
                        (0..3)
                            .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                            .collect(),
                    )
                })
                .find(|a| !h.cross3(a).is_zero())
                .expect("nonzero h has a non-parallel axis");
            let u = h.cross3(&axis);
            let v = h.cross3(&u);
            vec![u, v]
        }
        _ => panic!("hyperplane basis unsupported for dimension {n}"),
    }
}

/// Pointed iff the kernel of the normal matrix is trivial: a convex cone
/// contains a full line exactly when some nonzero `v` has `normals . v = 0`.
pub fn classify(c: &Cone) -> ConeType {
    if c.rank() == c.dim() {
        ConeType::A
    } else {
        ConeType::B
    }
}

/// Canonical direction representatives of the 1-dimensional faces (a
/// lineality line is reported as its two antipodal rays), n in {2, 3}.
pub fn extreme_rays(c: &Cone) -> Result<Vec<Vector>, StarError> {
    match c.dim() {
        2 => Ok(extreme_rays_2d(c)),
        3 => Ok(extreme_rays_3d(c)),
        n => Err(StarError::UnsupportedDim(n)),
    }
}

fn extreme_rays_2d(c: &Cone) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for n in c.normals() {
        let perp = Vector::new(vec![n.get(1).clone(), -n.get(0).clone()]);
        for cand in [perp.clone(), perp.neg()] {
            if c.contains(&cand) {
                let canon = cand.canonical_direction();
                if !out.contains(&canon) {
                    out.push(canon);
                }
            }
        }
    }
    out
}

fn extreme_rays_3d(c: &Cone) -> Vec<Vector> {
    // double description at desk scale: candidate rays are cross products of
    // normal pairs, kept when feasible (each is tight on two independent
    // normals, hence spans a 1-face)
    let mut out: Vec<Vector> = Vec::new();
    let ns = c.normals();
    for i in 0..ns.len() {
        for j in (i + 1)..ns.len() {
            let cand = ns[i].cross3(&ns[j]);
            if cand.is_zero() {
                continue;
            }
            for dir in [cand.clone(), cand.neg()] {
                if c.contains(&dir) {
                    let canon = dir.canonical_direction();
                    if !out.contains(&canon) {
                        out.push(canon);
                    }
                }
            }
        }
    }
    out
}

/// A planar cone as a ccw angular sector, or the whole plane.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Sector2 {
    Full,
    /// ccw from `start` to `end`, opening angle in (0, pi]
    Arc { start: Vector, end: Vector },
}

fn sector_of(c: &Cone) -> Sector2 {
    assert_eq!(c.dim(), 2);
    if c.normals().is_empty() {
        return Sector2::Full;
    }
    if c.normals().len() == 1 {
        let n = &c.normals()[0];
        // start such that a small ccw rotation enters the halfplane interior
        let start = Vector::new(vec![n.get(1).clone(), -n.get(0).clone()]).canonical_direction();
        let end = start.neg();
        return Sector2::Arc { start, end };
    }
    let rays = extreme_rays_2d(c);
    assert_eq!(
        rays.len(),
        2,
        "degenerate planar cone (not full-dimensional)"
    );
    let (a, b) = (rays[0].clone(), rays[1].clone());
    if a.cross2(&b).sign() > 0 {
        Sector2::Arc { start: a, end: b }
    } else {
        Sector2::Arc { start: b, end: a }
    }
}

/// Strict interior membership of a direction in a sector of angle <= pi.
fn in_sector_interior(s: &Sector2, d: &Vector) -> bool {
    match s {
        Sector2::Full => true,
        Sector2::Arc { start, end } => {
            start.cross2(d).sign() > 0 && d.cross2(end).sign() > 0
        }
    }
}

/// Exact test that the cones tile all directions around the origin: no two
/// sector interiors overlap, and the sectors chain end-to-start once around
/// the full circle. n = 2 exact; n = 3 via seeded Monte Carlo sampling.
pub fn coverage(cones: &[Cone]) -> bool {
    if cones.is_empty() {
        return false;
    }
    match cones[0].dim() {
        2 => coverage_2d(cones),
        3 => coverage_3d(cones, 10_000, 0),
        _ => false,
    }
}

fn coverage_2d(cones: &[Cone]) -> bool {
    if cones.iter().any(|c| c.normals().is_empty()) {
        return cones.len() == 1;
    }
    let sectors: Vec<Sector2> = cones.iter().map(sector_of).collect();
    // pairwise interior disjointness
    for i in 0..sectors.len() {
        for j in (i + 1)..sectors.len() {
            if sectors_overlap(&sectors[i], &sectors[j]) {
                return false;
            }
        }
    }
    // end-to-start walk must close after visiting every sector once
    let arcs: Vec<(&Vector, &Vector)> = sectors
        .iter()
        .map(|s| match s {
            Sector2::Arc { start, end } => (start, end),
            Sector2::Full => unreachable!(),
        })
        .collect();
    let mut used = vec![false; arcs.len()];
    let origin = arcs[0].0.clone();
    let mut cur = origin.clone();
    for _ in 0..arcs.len() {
        let Some(idx) = (0..arcs.len()).find(|&i| !used[i] && *arcs[i].0 == cur) else {
            return false;
        };
        used[idx] = true;
        cur = arcs[idx].1.clone();
    }
    cur == origin && used.iter().all(|&u| u)
}

fn sectors_overlap(a: &Sector2, b: &Sector2) -> bool {
    if a == b {
        return true;
    }
    let ends = |s: &Sector2| match s {
        Sector2::Arc { start, end } => vec![start.clone(), end.clone()],
        Sector2::Full => Vec::new(),
    };
    ends(b).iter().any(|d| in_sector_interior(a, d))
        || ends(a).iter().any(|d| in_sector_interior(b, d))
}

/// Sampled coverage in 3D: every sampled rational direction lies in exactly
/// one cone interior (boundary-tight samples are redrawn).
pub fn coverage_3d(cones: &[Cone], samples: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < samples {
        let d = Vector::new(
            (0..3)
                .map(|_| Scalar::from_int(rng.gen_range(-1000..=1000)))
                .collect(),
        );
        if d.is_zero() || cones.iter().any(|c| c.on_boundary_hyperplane(&d)) {
            continue;
        }
        let hits = cones.iter().filter(|c| c.contains_interior(&d)).count();
        if hits != 1 {
            return false;
        }
        done += 1;
    }
    true
}

/// One tile's contribution to a vertex star.
#[derive(Clone, Debug)]
pub struct StarCone {
    pub tile_id: usize,
    pub cone: Cone,
    pub cone_type: ConeType,
}

/// The tangent cones of every tile containing a point, with the exact record
/// of whether they tile all directions around it.
#[derive(Clone, Debug)]
pub struct VertexStar {
    pub center: Vector,
    pub cones: Vec<StarCone>,
    pub complete: bool,
}

impl VertexStar {
    pub fn a_count(&self) -> usize {
        self.cones
            .iter()
            .filter(|c| c.cone_type == ConeType::A)
            .count()
    }

    pub fn a_cones(&self) -> Vec<&StarCone> {
        self.cones
            .iter()
            .filter(|c| c.cone_type == ConeType::A)
            .collect()
    }

    /// Line-oriented report: one line per cone with tile id, type tag and
    /// normals.
    pub fn report(&self) -> String {
        let mut out = format!(
            "star center={} complete={} a_count={}\n",
            self.center,
            self.complete,
            self.a_count()
        );
        for sc in &self.cones {
            let normals: Vec<String> = sc.cone.normals().iter().map(|n| n.to_string()).collect();
            out.push_str(&format!(
                "cone tile={} type={} normals=[{}]\n",
                sc.tile_id,
                sc.cone_type,
                normals.join(" ")
            ));
        }
        out
    }
}

/// Collects every tile containing `x`, forms exact tangent cones and
/// classifies them. Exact cones make the paper-style "sufficiently small
/// sphere" argument unnecessary.
pub fn build_star(patch: &Patch, x: &Vector) -> Result<VertexStar, StarError> {
    let tiles = patch.tiles_containing(x);
    if tiles.is_empty() {
        return Err(StarError::OutsideSupport);
    }
    let cones: Vec<StarCone> = tiles
        .iter()
        .map(|&(id, poly)| {
            let cone = poly.tangent_cone(x).expect("tile contains x");
            let cone_type = classify(&cone);
            StarCone {
                tile_id: id,
                cone,
                cone_type,
            }
        })
        .collect();
    let complete = coverage(&cones.iter().map(|c| c.cone.clone()).collect::<Vec<_>>());
    Ok(VertexStar {
        center: x.clone(),
        cones,
        complete,
    })
}

/// Successful pairing of the extreme rays of the two A-type cones of a
/// complete star: every ray of one matches a ray of the other up to sign.
#[derive(Clone, Debug)]
pub struct AntipodalReport {
    /// (ray of first A-cone, matching ray of second, negated?)
    pub pairings: Vec<(Vector, Vector, bool)>,
}

pub fn check_two_atype_antipodal(star: &VertexStar) -> Result<AntipodalReport, StarError> {
    if !star.complete {
        return Err(StarError::PreconditionViolated("incomplete star".into()));
    }
    let a_cones = star.a_cones();
    if a_cones.len() != 2 {
        return Err(StarError::PreconditionViolated(format!(
            "a_count = {}, need exactly 2",
            a_cones.len()
        )));
    }
    let r1 = extreme_rays(&a_cones[0].cone)?;
    let r2 = extreme_rays(&a_cones[1].cone)?;
    if r1.len() != r2.len() {
        return Err(StarError::PreconditionViolated(format!(
            "ray counts differ: {} vs {}",
            r1.len(),
            r2.len()
        )));
    }
    let mut pairings = Vec::new();
    for r in &r1 {
        let direct = r2.iter().find(|s| *s == r);
        let negated = r2.iter().find(|s| **s == r.neg().canonical_direction());
        match (direct, negated) {
            (Some(s), _) => pairings.push((r.clone(), s.clone(), false)),
            (None, Some(s)) => pairings.push((r.clone(), s.clone(), true)),
            (None, None) => {
                return Err(StarError::PreconditionViolated(format!(
                    "ray {r} of the first A-cone has no antipodal partner"
                )))
            }
        }
    }
    // and conversely
    for s in &r2 {
        if !pairings.iter().any(|(_, p, _)| p == s) {
            return Err(StarError::PreconditionViolated(format!(
                "ray {s} of the second A-cone unmatched"
            )));
        }
    }
    Ok(AntipodalReport { pairings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v2(x: i64, y: i64) -> Vector {
        Vector::from_ints(&[x, y])
    }

    fn quadrant1() -> Cone {
        Cone::new(vec![v2(1, 0), v2(0, 1)], 2)
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&quadrant1()), ConeType::A);
        assert_eq!(classify(&Cone::halfspace(v2(0, 1))), ConeType::B);
        assert_eq!(classify(&Cone::full_space(2)), ConeType::B);
        let octant = Cone::new(
            vec![
                Vector::from_ints(&[1, 0, 0]),
                Vector::from_ints(&[0, 1, 0]),
                Vector::from_ints(&[0, 0, 1]),
            ],
            3,
        );
        assert_eq!(classify(&octant), ConeType::A);
    }

    #[test]
    fn classify_invariant_under_linear_maps() {
        // shear + scale applied to the first quadrant stays pointed
        let t = Matrix::new(vec![v2(2, 1), v2(0, 3)]);
        let img = quadrant1().linear_image(&t);
        assert_eq!(classify(&img), ConeType::A);
        let img_b = Cone::halfspace(v2(0, 1)).linear_image(&t);
        assert_eq!(classify(&img_b), ConeType::B);
    }

    #[test]
    fn extreme_ray_examples() {
        let rays = extreme_rays(&quadrant1()).unwrap();
        assert_eq!(rays.len(), 2);
        assert!(rays.contains(&v2(1, 0)) && rays.contains(&v2(0, 1)));

        let half = extreme_rays(&Cone::halfspace(v2(0, 1))).unwrap();
        assert_eq!(half.len(), 2);
        assert!(half.contains(&v2(1, 0)) && half.contains(&v2(-1, 0)));

        assert!(extreme_rays(&Cone::full_space(2)).unwrap().is_empty());

        let octant = Cone::new(
            vec![
                Vector::from_ints(&[1, 0, 0]),
                Vector::from_ints(&[0, 1, 0]),
                Vector::from_ints(&[0, 0, 1]),
            ],
            3,
        );
        let rays3 = extreme_rays(&octant).unwrap();
        assert_eq!(rays3.len(), 3);
        for axis in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
            assert!(rays3.contains(&Vector::from_ints(&axis)));
        }
    }

    #[test]
    fn pointed_2d_rays_span_the_cone() {
        // membership round-trip for a skew pointed cone
        let c = Cone::new(vec![v2(1, -1), v2(1, 2)], 2);
        let rays = extreme_rays(&c).unwrap();
        assert_eq!(rays.len(), 2);
        for r in &rays {
            assert!(c.contains(r));
        }
        // any positive combination of the rays stays inside
        let combo = rays[0].scale(&Scalar::from_int(3)).add(&rays[1].scale(&Scalar::from_int(5)));
        assert!(c.contains(&combo));
    }

    #[test]
    fn coverage_quadrants() {
        let quads = vec![
            Cone::new(vec![v2(1, 0), v2(0, 1)], 2),
            Cone::new(vec![v2(-1, 0), v2(0, 1)], 2),
            Cone::new(vec![v2(-1, 0), v2(0, -1)], 2),
            Cone::new(vec![v2(1, 0), v2(0, -1)], 2),
        ];
        assert!(coverage(&quads));
        // two copies of the upper halfplane overlap
        let twice = vec![Cone::halfspace(v2(0, 1)), Cone::halfspace(v2(0, 1))];
        assert!(!coverage(&twice));
        // quadrant + quadrant + lower halfplane
        let mixed = vec![
            Cone::new(vec![v2(1, 0), v2(0, 1)], 2),
            Cone::new(vec![v2(-1, 0), v2(0, 1)], 2),
            Cone::halfspace(v2(0, -1)),
        ];
        assert!(coverage(&mixed));
        // a gap
        let gap = vec![
            Cone::new(vec![v2(1, 0), v2(0, 1)], 2),
            Cone::halfspace(v2(0, -1)),
        ];
        assert!(!coverage(&gap));
        // full plane alone
        assert!(coverage(&[Cone::full_space(2)]));
        assert!(!coverage(&[Cone::full_space(2), quads[0].clone()]));
    }

    #[test]
    fn coverage_3d_octants() {
        let mut octants = Vec::new();
        for sx in [1i64, -1] {
            for sy in [1i64, -1] {
                for sz in [1i64, -1] {
                    octants.push(Cone::new(
                        vec![
                            Vector::from_ints(&[sx, 0, 0]),
                            Vector::from_ints(&[0, sy, 0]),
                            Vector::from_ints(&[0, 0, sz]),
                        ],
                        3,
                    ));
                }
            }
        }
        assert!(coverage_3d(&octants, 500, 7));
        octants.pop();
        assert!(!coverage_3d(&octants, 500, 7));
    }

    #[test]
    fn b_cone_hyperplane_slice_stays_b() {
        // upper halfplane sliced with its own boundary line: within that line
        // (R^1) the result is the full space, a B-type cone
        let c = Cone::halfspace(v2(0, 1));
        let sliced = c.intersect_with_hyperplane(&v2(0, 1));
        assert_eq!(sliced.dim(), 1);
        assert_eq!(classify(&sliced), ConeType::B);

        // 3D halfspace just touching a vertical plane
        let c3 = Cone::halfspace(Vector::from_ints(&[0, 0, 1]));
        let sliced3 = c3.intersect_with_hyperplane(&Vector::from_ints(&[0, 0, 1]));
        assert_eq!(sliced3.dim(), 2);
        assert_eq!(classify(&sliced3), ConeType::B);

        // 3D wedge with lineality along the x-axis, just touched by {z = 0}
        let wedge = Cone::new(
            vec![Vector::from_ints(&[0, 0, 1]), Vector::from_ints(&[0, 1, 1])],
            3,
        );
        assert_eq!(classify(&wedge), ConeType::B);
        let sliced_w = wedge.intersect_with_hyperplane(&Vector::from_ints(&[0, 0, 1]));
        assert_eq!(classify(&sliced_w), ConeType::B);
    }

    #[test]
    fn antipodal_brick_wall_t_vertex() {
        let star = VertexStar {
            center: v2(2, 1),
            cones: vec![
                StarCone {
                    tile_id: 0,
                    cone: Cone::new(vec![v2(1, 0), v2(0, 1)], 2),
                    cone_type: ConeType::A,
                },
                StarCone {
                    tile_id: 1,
                    cone: Cone::new(vec![v2(-1, 0), v2(0, 1)], 2),
                    cone_type: ConeType::A,
                },
                StarCone {
                    tile_id: 2,
                    cone: Cone::halfspace(v2(0, -1)),
                    cone_type: ConeType::B,
                },
            ],
            complete: true,
        };
        let report = check_two_atype_antipodal(&star).unwrap();
        assert_eq!(report.pairings.len(), 2);
        // (0,1) matches directly, (1,0) matches -(-1,0)
        assert!(report
            .pairings
            .iter()
            .any(|(a, b, neg)| *a == v2(0, 1) && *b == v2(0, 1) && !neg));
        assert!(report
            .pairings
            .iter()
            .any(|(a, b, neg)| *a == v2(1, 0) && *b == v2(-1, 0) && *neg));
    }

    #[test]
    fn antipodal_precondition_violations() {
        let quads: Vec<StarCone> = [
            [1i64, 0, 0, 1],
            [-1, 0, 0, 1],
            [-1, 0, 0, -1],
            [1, 0, 0, -1],
        ]
        .iter()
        .enumerate()
        .map(|(i, n)| StarCone {
            tile_id: i,
            cone: Cone::new(vec![v2(n[0], n[1]), v2(n[2], n[3])], 2),
            cone_type: ConeType::A,
        })
        .collect();
        let grid_star = VertexStar {
            center: v2(1, 1),
            cones: quads,
            complete: true,
        };
        assert!(matches!(
            check_two_atype_antipodal(&grid_star),
            Err(StarError::PreconditionViolated(_))
        ));

        let edge_star = VertexStar {
            center: v2(0, 0),
            cones: vec![
                StarCone {
                    tile_id: 0,
                    cone: Cone::halfspace(v2(0, 1)),
                    cone_type: ConeType::B,
                },
                StarCone {
                    tile_id: 1,
                    cone: Cone::halfspace(v2(0, -1)),
                    cone_type: ConeType::B,
                },
            ],
            complete: true,
        };
        assert!(matches!(
            check_two_atype_antipodal(&edge_star),
            Err(StarError::PreconditionViolated(_))
        ));
    }
}
