//! Convex polytopes in R^n (n <= 3) with exact dual representations.
//!
//! Every polytope stores both its irredundant vertex list and its irredundant
//! halfspace list (`normal . x >= offset`), so all predicates are direct exact
//! evaluations. In the plane vertices are kept in counterclockwise cyclic
//! order.

use crate::exactnum::{Matrix, Scalar, Vector};
use crate::vertexstar::Cone;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("input points do not affinely span the ambient space")]
    DegenerateInput,
    #[error("ambient dimension {0} unsupported here")]
    UnsupportedDim(usize),
    #[error("point lies outside the polytope")]
    OutsidePoint,
}

/// Closed halfspace `normal . x >= offset`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: Scalar,
}

impl Halfspace {
    pub fn eval(&self, x: &Vector) -> Scalar {
        self.normal.dot(x) - self.offset.clone()
    }

    /// Joint canonical form of (normal, offset) under positive scaling.
    fn canonical(&self) -> (Vector, Scalar) {
        let scale = self
            .normal
            .coords()
            .iter()
            .find(|c| !c.is_zero())
            .expect("zero normal")
            .abs();
        (
            Vector::new(
                self.normal
                    .coords()
                    .iter()
                    .map(|c| c.clone() / scale.clone())
                    .collect(),
            ),
            self.offset.clone() / scale,
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// Full-dimensional convex polytope with both representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polytope {
    vertices: Vec<Vector>,
    halfspaces: Vec<Halfspace>,
    dim: usize,
}

/// A k-face, carrying its vertex set and the indices of all halfspaces tight
/// on the whole face.
#[derive(Clone, Debug)]
pub struct Face {
    pub active_halfspace_indices: Vec<usize>,
    pub vertices: Vec<Vector>,
    pub face_dim: usize,
}

/// Affine dimension of a point set.
pub fn affine_dim(points: &[Vector]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<Vector> = points[1..].iter().map(|p| p.sub(base)).collect();
    Matrix::new(diffs).rank()
}

impl Polytope {
    /// Convex hull of the given points, with the irredundant H-rep derived.
    /// The points must affinely span R^n, n in {1, 2, 3}.
    pub fn from_vertices(points: &[Vector]) -> Result<Polytope, GeomError> {
        if points.is_empty() {
            return Err(GeomError::DegenerateInput);
        }
        let n = points[0].dim();
        assert!(points.iter().all(|p| p.dim() == n));
        if !(1..=3).contains(&n) {
            return Err(GeomError::UnsupportedDim(n));
        }
        let mut pts: Vec<Vector> = points.to_vec();
        pts.sort();
        pts.dedup();
        if affine_dim(&pts) != n {
            return Err(GeomError::DegenerateInput);
        }
        match n {
            1 => Ok(Self::hull_1d(&pts)),
            2 => Ok(Self::hull_2d(&pts)),
            3 => Ok(Self::hull_3d(&pts)),
            _ => unreachable!(),
        }
    }

    fn hull_1d(pts: &[Vector]) -> Polytope {
        let lo = pts.first().unwrap().clone();
        let hi = pts.last().unwrap().clone();
        let one = Vector::new(vec![Scalar::one()]);
        let halfspaces = vec![
            Halfspace {
                normal: one.clone(),
                offset: lo.get(0).clone(),
            },
            Halfspace {
                normal: one.neg(),
                offset: -hi.get(0).clone(),
            },
        ];
        Polytope {
            vertices: vec![lo, hi],
            halfspaces,
            dim: 1,
        }
    }

    /// Andrew monotone chain with exact orientation predicates; collinear
    /// points are dropped so the vertex list is irredundant. Result is in
    /// counterclockwise order.
    fn hull_2d(pts: &[Vector]) -> Polytope {
        let cross = |o: &Vector, a: &Vector, b: &Vector| a.sub(o).cross2(&b.sub(o)).sign();
        let mut lower: Vec<Vector> = Vec::new();
        for p in pts {
            while lower.len() >= 2
                && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Vector> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2
                && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        let vertices = lower;
        let m = vertices.len();
        let halfspaces = (0..m)
            .map(|i| {
                let a = &vertices[i];
                let b = &vertices[(i + 1) % m];
                let e = b.sub(a);
                // inward normal of a ccw edge
                let normal = Vector::new(vec![-e.get(1).clone(), e.get(0).clone()]);
                let offset = normal.dot(a);
                Halfspace { normal, offset }
            })
            .collect();
        Polytope {
            vertices,
            halfspaces,
            dim: 2,
        }
    }

    /// Brute-force facet enumeration over point triples; adequate at desk
    /// scale and exact. Each kept hyperplane touches >= 3 affinely
    /// independent points, so it supports a genuine facet.
    fn hull_3d(pts: &[Vector]) -> Polytope {
        let m = pts.len();
        let mut halfspaces: Vec<Halfspace> = Vec::new();
        let mut seen: Vec<(Vector, Scalar)> = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                for k in (j + 1)..m {
                    let u = pts[j].sub(&pts[i]);
                    let v = pts[k].sub(&pts[i]);
                    let normal = u.cross3(&v);
                    if normal.is_zero() {
                        continue;
                    }
                    let offset = normal.dot(&pts[i]);
                    let mut pos = false;
                    let mut neg = false;
                    for p in pts {
                        match (normal.dot(p) - offset.clone()).sign() {
                            s if s > 0 => pos = true,
                            s if s < 0 => neg = true,
                            _ => {}
                        }
                    }
                    let hs = if !neg {
                        Halfspace { normal, offset }
                    } else if !pos {
                        Halfspace {
                            normal: normal.neg(),
                            offset: -offset,
                        }
                    } else {
                        continue;
                    };
                    let canon = hs.canonical();
                    if !seen.contains(&canon) {
                        seen.push(canon);
                        halfspaces.push(hs);
                    }
                }
            }
        }
        // vertices: points whose active facet normals span R^3
        let vertices: Vec<Vector> = pts
            .iter()
            .filter(|p| {
                let active: Vec<Vector> = halfspaces
                    .iter()
                    .filter(|h| h.eval(p).is_zero())
                    .map(|h| h.normal.clone())
                    .collect();
                active.len() >= 3 && Matrix::new(active).rank() == 3
            })
            .cloned()
            .collect();
        Polytope {
            vertices,
            halfspaces,
            dim: 3,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn contains(&self, x: &Vector) -> Location {
        let mut boundary = false;
        for h in &self.halfspaces {
            match h.eval(x).sign() {
                s if s < 0 => return Location::Outside,
                0 => boundary = true,
                _ => {}
            }
        }
        if boundary {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    pub fn is_vertex(&self, x: &Vector) -> bool {
        self.vertices.contains(x)
    }

    /// Enumerates the k-faces via active-set closure, 0 <= k <= n-1.
    pub fn faces_of_dim(&self, k: usize) -> Vec<Face> {
        assert!(k < self.dim);
        let n = self.dim;
        let need = n - k;
        let m = self.halfspaces.len();
        let mut faces: Vec<Face> = Vec::new();
        let mut seen: Vec<Vec<Vector>> = Vec::new();
        for combo in subsets(m, need) {
            let tight: Vec<Vector> = self
                .vertices
                .iter()
                .filter(|v| combo.iter().all(|&i| self.halfspaces[i].eval(v).is_zero()))
                .cloned()
                .collect();
            if tight.is_empty() || affine_dim(&tight) != k {
                continue;
            }
            let mut key = tight.clone();
            key.sort();
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            // full active set of the face
            let active: Vec<usize> = (0..m)
                .filter(|&i| tight.iter().all(|v| self.halfspaces[i].eval(v).is_zero()))
                .collect();
            faces.push(Face {
                active_halfspace_indices: active,
                vertices: tight,
                face_dim: k,
            });
        }
        faces
    }

    /// Tangent cone at `x`: the directions staying inside all halfspaces
    /// tight at `x`, apex at the origin. An interior point yields the
    /// full-space cone.
    pub fn tangent_cone(&self, x: &Vector) -> Result<Cone, GeomError> {
        if self.contains(x) == Location::Outside {
            return Err(GeomError::OutsidePoint);
        }
        let normals: Vec<Vector> = self
            .halfspaces
            .iter()
            .filter(|h| h.eval(x).is_zero())
            .map(|h| h.normal.clone())
            .collect();
        Ok(Cone::new(normals, self.dim))
    }

    /// Exact axis-aligned bounding box (per-coordinate min and max).
    pub fn bbox(&self) -> (Vector, Vector) {
        let n = self.dim;
        let mut lo: Vec<Scalar> = self.vertices[0].coords().to_vec();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for i in 0..n {
                if v.get(i) < &lo[i] {
                    lo[i] = v.get(i).clone();
                }
                if v.get(i) > &hi[i] {
                    hi[i] = v.get(i).clone();
                }
            }
        }
        (Vector::new(lo), Vector::new(hi))
    }

    /// Candidate points of the combined halfspace system: all intersections
    /// of n bounding hyperplanes that satisfy every constraint. The vertices
    /// of the intersection polytope are among them.
    fn feasible_candidates(system: &[Halfspace], n: usize) -> Vec<Vector> {
        let mut out: Vec<Vector> = Vec::new();
        for combo in subsets(system.len(), n) {
            let rows: Vec<Vector> = combo.iter().map(|&i| system[i].normal.clone()).collect();
            let rhs = Vector::new(combo.iter().map(|&i| system[i].offset.clone()).collect());
            let mat = Matrix::new(rows);
            let Some(p) = mat.solve(&rhs) else { continue };
            if system.iter().all(|h| h.eval(&p).sign() >= 0) && !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }

    /// True iff the open interiors intersect: the closed intersection must be
    /// full-dimensional, decided on the exact candidate vertex set.
    pub fn interiors_intersect(&self, other: &Polytope) -> bool {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        // cheap exact bbox reject
        let (alo, ahi) = self.bbox();
        let (blo, bhi) = other.bbox();
        for i in 0..n {
            if ahi.get(i) <= blo.get(i) || bhi.get(i) <= alo.get(i) {
                return false;
            }
        }
        let mut system = self.halfspaces.clone();
        system.extend(other.halfspaces.iter().cloned());
        let candidates = Self::feasible_candidates(&system, n);
        affine_dim(&candidates) == n
    }

    /// True iff the closed polytopes share at least one point.
    pub fn closed_intersects(&self, other: &Polytope) -> bool {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let (alo, ahi) = self.bbox();
        let (blo, bhi) = other.bbox();
        for i in 0..n {
            if ahi.get(i) < blo.get(i) || bhi.get(i) < alo.get(i) {
                return false;
            }
        }
        if self
            .vertices
            .iter()
            .any(|v| other.contains(v) != Location::Outside)
            || other
                .vertices
                .iter()
                .any(|v| self.contains(v) != Location::Outside)
        {
            return true;
        }
        let mut system = self.halfspaces.clone();
        system.extend(other.halfspaces.iter().cloned());
        !Self::feasible_candidates(&system, n).is_empty()
    }

    /// Exact polygon area (shoelace over the ccw vertex cycle), n = 2.
    pub fn area2(&self) -> Scalar {
        assert_eq!(self.dim, 2, "area2 requires the plane");
        let m = self.vertices.len();
        let mut twice = Scalar::zero();
        for i in 0..m {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % m];
            twice = twice + a.cross2(b);
        }
        twice / Scalar::from_int(2)
    }

    /// Image under `x -> linear * x + offset`; the hull is recomputed so both
    /// representations stay consistent (handles reflections too).
    pub fn transform(&self, linear: &Matrix, offset: &Vector) -> Polytope {
        let pts: Vec<Vector> = self
            .vertices
            .iter()
            .map(|v| linear.apply(v).add(offset))
            .collect();
        Polytope::from_vertices(&pts).expect("isometry image of a polytope is a polytope")
    }

    pub fn translate(&self, offset: &Vector) -> Polytope {
        let vertices: Vec<Vector> = self.vertices.iter().map(|v| v.add(offset)).collect();
        let halfspaces: Vec<Halfspace> = self
            .halfspaces
            .iter()
            .map(|h| Halfspace {
                normal: h.normal.clone(),
                offset: h.offset.clone() + h.normal.dot(offset),
            })
            .collect();
        Polytope {
            vertices,
            halfspaces,
            dim: self.dim,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Polytope {
        let pts: Vec<Vector> = self.vertices.iter().map(|v| v.scale(s)).collect();
        Polytope::from_vertices(&pts).expect("scaled polytope")
    }

    /// Exact squared distance from a point to the polytope (0 when inside).
    /// n = 2 only; used for disc-intersection counts.
    pub fn dist2_to_point(&self, x: &Vector) -> Scalar {
        assert_eq!(self.dim, 2);
        if self.contains(x) != Location::Outside {
            return Scalar::zero();
        }
        let m = self.vertices.len();
        let mut best: Option<Scalar> = None;
        for i in 0..m {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % m];
            let d = segment_dist2(a, b, x);
            best = Some(match best {
                None => d,
                Some(cur) => {
                    if d < cur {
                        d
                    } else {
                        cur
                    }
                }
            });
        }
        best.unwrap()
    }
}

fn segment_dist2(a: &Vector, b: &Vector, x: &Vector) -> Scalar {
    let e = b.sub(a);
    let w = x.sub(a);
    let t = w.dot(&e) / e.dot(&e);
    let clamped = if t.sign() < 0 {
        Scalar::zero()
    } else if (t.clone() - Scalar::one()).sign() > 0 {
        Scalar::one()
    } else {
        t
    };
    let proj = a.add(&e.scale(&clamped));
    let d = x.sub(&proj);
    d.dot(&d)
}

/// All index subsets of {0..m} of the given size, small m only.
fn subsets(m: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, size, cur, out);
            cur.pop();
        }
    }
    if size <= m {
        rec(0, m, size, &mut cur, &mut out);
    }
    out
}

/// Convenience: axis-aligned rectangle [x0,x1] x [y0,y1] from integers.
pub fn rect(x0: i64, y0: i64, x1: i64, y1: i64) -> Polytope {
    Polytope::from_vertices(&[
        Vector::from_ints(&[x0, y0]),
        Vector::from_ints(&[x1, y0]),
        Vector::from_ints(&[x1, y1]),
        Vector::from_ints(&[x0, y1]),
    ])
    .unwrap()
}

/// Lexicographic comparison helper used by canonical forms.
pub fn lex_min<'a, I: Iterator<Item = &'a Vector>>(mut it: I) -> Option<Vector> {
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, v| {
        if matches!(v.cmp(&acc), Ordering::Less) {
            v.clone()
        } else {
            acc
        }
    }))
}
