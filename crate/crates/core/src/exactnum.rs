//! Exact arithmetic over the real quadratic extension Q(sqrt(d)).
//!
//! Every scalar is `a + b*sqrt(d)` with arbitrary-precision rational `a`, `b`
//! and a fixed nonnegative square-free radicand `d` shared per context
//! (`d = 0` degenerates to the rationals). Signs, ranks and lattice bases are
//! all decided without floating point; floats appear only as display/indexing
//! approximations.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumError {
    #[error("scalar parse error: {0}")]
    Parse(String),
    #[error("lattice generators are not a discrete subgroup")]
    NotDiscrete,
    #[error("lattice canonicalization requires rational coordinates")]
    NonRational,
}

/// An exact element of Q(sqrt(d)): `a + b*sqrt(d)`.
///
/// Invariants: the rationals are kept in lowest terms by `BigRational`;
/// whenever `b == 0` the radicand is normalized to 0, so structural equality
/// coincides with numeric equality for a fixed square-free `d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() || d == 0 {
            // sqrt(0) contributes nothing
            Scalar {
                a,
                b: BigRational::zero(),
                d: 0,
            }
        } else {
            Scalar { a, b, d }
        }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero(), 0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(n.into()), BigRational::zero(), 0)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::new(r, BigRational::zero(), 0)
    }

    /// `p/q` as a scalar. Panics if `q == 0`.
    pub fn rat(p: i64, q: i64) -> Self {
        Scalar::from_rational(BigRational::new(p.into(), q.into()))
    }

    /// `(p/q) * sqrt(d)`.
    pub fn root(p: i64, q: i64, d: u64) -> Self {
        Scalar::new(BigRational::zero(), BigRational::new(p.into(), q.into()), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The value as a rational, if the radical part vanishes.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    /// Exact sign of the real number `a + b*sqrt(d)`, by case analysis on the
    /// signs of `a`, `b` and comparison of `a^2` against `b^2 d`.
    pub fn sign(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // opposite signs: |a| vs |b|*sqrt(d) decided on squares
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Scalar {
        // 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d)
        let denom = &self.a * &self.a
            - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        if denom.is_zero() {
            panic!("division by zero scalar");
        }
        Scalar::new(&self.a / &denom, -(&self.b) / &denom, self.d)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    fn join_d(&self, other: &Scalar) -> u64 {
        match (self.d, other.d) {
            (x, 0) => x,
            (0, y) => y,
            (x, y) if x == y => x,
            (x, y) => panic!("mixed radicands: sqrt({x}) vs sqrt({y})"),
        }
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        let d = self.join_d(&rhs);
        Scalar::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        let d = self.join_d(&rhs);
        Scalar::new(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        let d = self.join_d(&rhs);
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar::new(a, b, d)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        let inv = rhs.inv();
        self * inv
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.a, -self.b, self.d)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Scalar) -> Ordering {
        match (self.clone() - other.clone()).sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", fmt_rat(&self.b), self.d);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*sqrt({})",
            fmt_rat(&self.a),
            sign,
            fmt_rat(&self.b.abs()),
            self.d
        )
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rat(s: &str) -> Result<BigRational, NumError> {
    let s = s.trim();
    let err = || NumError::Parse(format!("bad rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if q.is_zero() {
            return Err(NumError::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(p, q))
    } else {
        let p = BigInt::from_str(s).map_err(|_| err())?;
        Ok(BigRational::from_integer(p))
    }
}

impl FromStr for Scalar {
    type Err = NumError;

    /// Parses `p/q`, `r/s*sqrt(d)`, or `p/q+r/s*sqrt(d)` (integer numerators
    /// accepted without `/q`, signs optional on both terms).
    fn from_str(s: &str) -> Result<Scalar, NumError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(NumError::Parse("empty scalar".into()));
        }
        // split at the last top-level '+'/'-' that separates the two terms
        let bytes = s.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-')
                && matches!(bytes[i - 1] as char, '0'..='9' | ')')
            {
                split = Some(i);
                break;
            }
        }
        let parse_term = |t: &str| -> Result<(BigRational, Option<u64>), NumError> {
            if let Some(idx) = t.find("*sqrt(") {
                let coeff = parse_rat(&t[..idx])?;
                let rest = &t[idx + 6..];
                let close = rest
                    .find(')')
                    .ok_or_else(|| NumError::Parse(format!("missing ')' in {t:?}")))?;
                let d: u64 = rest[..close]
                    .parse()
                    .map_err(|_| NumError::Parse(format!("bad radicand in {t:?}")))?;
                if !rest[close + 1..].is_empty() {
                    return Err(NumError::Parse(format!("trailing junk in {t:?}")));
                }
                Ok((coeff, Some(d)))
            } else {
                Ok((parse_rat(t)?, None))
            }
        };
        match split {
            None => {
                let (v, d) = parse_term(&s)?;
                Ok(match d {
                    None => Scalar::from_rational(v),
                    Some(d) => Scalar::new(BigRational::zero(), v, d),
                })
            }
            Some(i) => {
                let (first, fd) = parse_term(&s[..i])?;
                let (second, sd) = parse_term(&s[i..])?;
                match (fd, sd) {
                    (None, Some(d)) => Ok(Scalar::new(first, second, d)),
                    (Some(d), None) => Ok(Scalar::new(second, first, d)),
                    _ => Err(NumError::Parse(format!(
                        "expected one rational and one sqrt term in {s:?}"
                    ))),
                }
            }
        }
    }
}

/// A point or direction in R^n with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    coords: Vec<Scalar>,
}

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        assert!(!coords.is_empty(), "zero-dimensional vector");
        Vector { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector::new(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Vector::new(vec![Scalar::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim());
        Vector::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim());
        Vector::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(x, y)| x.clone() - y.clone())
                .collect(),
        )
    }

    pub fn neg(&self) -> Vector {
        Vector::new(self.coords.iter().map(|x| -x.clone()).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector::new(self.coords.iter().map(|x| x.clone() * s.clone()).collect())
    }

    pub fn dot(&self, rhs: &Vector) -> Scalar {
        assert_eq!(self.dim(), rhs.dim());
        self.coords
            .iter()
            .zip(&rhs.coords)
            .fold(Scalar::zero(), |acc, (x, y)| {
                acc + x.clone() * y.clone()
            })
    }

    /// 2D cross product (z-component of the 3D cross of the embeddings).
    pub fn cross2(&self, rhs: &Vector) -> Scalar {
        assert_eq!(self.dim(), 2);
        assert_eq!(rhs.dim(), 2);
        self.coords[0].clone() * rhs.coords[1].clone()
            - self.coords[1].clone() * rhs.coords[0].clone()
    }

    pub fn cross3(&self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), 3);
        assert_eq!(rhs.dim(), 3);
        let a = &self.coords;
        let b = &rhs.coords;
        Vector::new(vec![
            a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
            a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
            a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
        ])
    }

    /// Scales so the first nonzero coordinate becomes +1 or -1, preserving
    /// direction. Zero vectors are returned unchanged.
    pub fn canonical_direction(&self) -> Vector {
        for c in &self.coords {
            if !c.is_zero() {
                let norm = c.abs();
                return Vector::new(
                    self.coords
                        .iter()
                        .map(|x| x.clone() / norm.clone())
                        .collect(),
                );
            }
        }
        self.clone()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(Scalar::to_f64).collect()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A rectangular matrix with `Scalar` entries, stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: Vec<Vector>,
}

impl Matrix {
    pub fn new(rows: Vec<Vector>) -> Self {
        assert!(!rows.is_empty(), "empty matrix");
        let w = rows[0].dim();
        assert!(rows.iter().all(|r| r.dim() == w), "ragged matrix");
        Matrix { rows }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::new(
            (0..n)
                .map(|i| {
                    Vector::new(
                        (0..n)
                            .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].dim()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.rows[i].get(j)
    }

    /// Matrix-vector product (self as a linear map applied to `v`).
    pub fn apply(&self, v: &Vector) -> Vector {
        Vector::new(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    pub fn transpose(&self) -> Matrix {
        let (n, m) = (self.nrows(), self.ncols());
        Matrix::new(
            (0..m)
                .map(|j| Vector::new((0..n).map(|i| self.get(i, j).clone()).collect()))
                .collect(),
        )
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        let rt = rhs.transpose();
        Matrix::new(
            self.rows
                .iter()
                .map(|r| Vector::new(rt.rows.iter().map(|c| r.dot(c)).collect()))
                .collect(),
        )
    }

    /// Exact check that the matrix is orthogonal (`M^T M = I`).
    pub fn is_orthogonal(&self) -> bool {
        self.nrows() == self.ncols()
            && self.transpose().matmul(self) == Matrix::identity(self.nrows())
    }

    /// Rank over the field Q(sqrt(d)), by Gaussian elimination with exact
    /// pivots.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .map(|r| r.coords().to_vec())
            .collect();
        gaussian_rank(&mut m)
    }

    /// Determinant of a square matrix, n <= 3.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.nrows(), self.ncols());
        match self.nrows() {
            1 => self.get(0, 0).clone(),
            2 => {
                self.get(0, 0).clone() * self.get(1, 1).clone()
                    - self.get(0, 1).clone() * self.get(1, 0).clone()
            }
            3 => {
                let m = |i: usize, j: usize| self.get(i, j).clone();
                m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
            }
            n => panic!("det unsupported for n = {n}"),
        }
    }

    /// Solves `self * x = rhs` for square systems; `None` when singular.
    pub fn solve(&self, rhs: &Vector) -> Option<Vector> {
        let n = self.nrows();
        assert_eq!(n, self.ncols());
        assert_eq!(n, rhs.dim());
        let mut m: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .zip(rhs.coords())
            .map(|(r, b)| {
                let mut row = r.coords().to_vec();
                row.push(b.clone());
                row
            })
            .collect();
        // forward elimination
        for col in 0..n {
            let pivot = (col..n).find(|&i| !m[i][col].is_zero())?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for i in 0..n {
                if i != col && !m[i][col].is_zero() {
                    let f = m[i][col].clone() / p.clone();
                    for j in col..=n {
                        let v = m[col][j].clone() * f.clone();
                        m[i][j] = m[i][j].clone() - v;
                    }
                }
            }
        }
        Some(Vector::new(
            (0..n)
                .map(|i| m[i][n].clone() / m[i][i].clone())
                .collect(),
        ))
    }
}

fn gaussian_rank(m: &mut Vec<Vec<Scalar>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let nrows = m.len();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let p = m[rank][col].clone();
        for i in (rank + 1)..nrows {
            if !m[i][col].is_zero() {
                let f = m[i][col].clone() / p.clone();
                for j in col..ncols {
                    let v = m[rank][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the abstract Z-module generated by the vectors (via the rational
/// 2n-column embedding splitting each coordinate into its `a`/`b` parts),
/// together with the rank of the vectors over Q(sqrt(d)) as real vectors.
pub fn zspan_rank(vectors: &[Vector]) -> (usize, usize) {
    if vectors.is_empty() {
        return (0, 0);
    }
    let n = vectors[0].dim();
    assert!(vectors.iter().all(|v| v.dim() == n));
    let mut embed: Vec<Vec<Scalar>> = vectors
        .iter()
        .map(|v| {
            let mut row = Vec::with_capacity(2 * n);
            for c in v.coords() {
                row.push(Scalar::from_rational(c.rational_part().clone()));
            }
            for c in v.coords() {
                row.push(Scalar::from_rational(c.radical_part().clone()));
            }
            row
        })
        .collect();
    let z_rank = gaussian_rank(&mut embed);
    let r_dim = Matrix::new(vectors.to_vec()).rank();
    (z_rank, r_dim)
}

/// A finitely generated subgroup of R^n is discrete iff its abstract rank
/// equals the dimension of its real span.
pub fn is_discrete_span(vectors: &[Vector]) -> bool {
    let (z, r) = zspan_rank(vectors);
    z == r
}

/// Canonical Hermite-normal-form basis of the lattice generated by rational
/// vectors. Denominators are cleared, the integer HNF is taken, and the
/// result is rescaled back.
pub fn hnf_lattice_basis(vectors: &[Vector]) -> Result<Vec<Vector>, NumError> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    for v in vectors {
        for c in v.coords() {
            if !c.is_rational() {
                return Err(NumError::NonRational);
            }
        }
    }
    if !is_discrete_span(vectors) {
        return Err(NumError::NotDiscrete);
    }
    let n = vectors[0].dim();
    // common denominator
    let mut l = BigInt::one();
    for v in vectors {
        for c in v.coords() {
            l = l.lcm(c.rational_part().denom());
        }
    }
    let lr = BigRational::from_integer(l.clone());
    let int_rows: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .map(|c| (c.rational_part() * &lr).to_integer())
                .collect()
        })
        .collect();
    let hnf = integer_hnf(int_rows, n);
    Ok(hnf
        .into_iter()
        .map(|row| {
            Vector::new(
                row.into_iter()
                    .map(|x| Scalar::from_rational(BigRational::new(x, l.clone())))
                    .collect(),
            )
        })
        .collect())
}

/// Row-style Hermite normal form of an integer matrix: pivots positive,
/// entries above each pivot reduced into `[0, pivot)`. Returns the nonzero
/// rows.
fn integer_hnf(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let nrows = m.len();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        loop {
            // smallest nonzero entry in this column at or below r
            let mut best: Option<usize> = None;
            for i in r..nrows {
                if !m[i][col].is_zero() {
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if m[i][col].magnitude() < m[b][col].magnitude() {
                                best = Some(i);
                            }
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut done = true;
            for i in (r + 1)..nrows {
                if !m[i][col].is_zero() {
                    let q = div_round(&m[i][col], &m[r][col]);
                    for j in 0..ncols {
                        let v = &q * &m[r][j];
                        m[i][j] = &m[i][j] - v;
                    }
                    if !m[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][col].is_zero() {
            continue;
        }
        if m[r][col].sign() == Sign::Minus {
            for j in 0..ncols {
                m[r][j] = -m[r][j].clone();
            }
        }
        for i in 0..r {
            let q = m[i][col].div_floor(&m[r][col]);
            if !q.is_zero() {
                for j in 0..ncols {
                    let v = &q * &m[r][j];
                    m[i][j] = &m[i][j] - v;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // quotient rounded toward zero is enough for the Euclidean descent
    a / b
}

/// True iff `x` is an integer combination of the HNF `basis` rows
/// (row-echelon back-substitution with exact divisibility checks).
pub fn in_lattice(basis: &[Vector], x: &Vector) -> bool {
    let mut rest = x.clone();
    for row in basis {
        // pivot column of this echelon row
        let Some(p) = (0..row.dim()).find(|&j| !row.get(j).is_zero()) else {
            continue;
        };
        if rest.get(p).is_zero() {
            continue;
        }
        let c = rest.get(p).clone() / row.get(p).clone();
        if !c.is_integer() {
            return false;
        }
        rest = rest.sub(&row.scale(&c));
    }
    rest.is_zero()
}
