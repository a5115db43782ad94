//! Signed linear combinations of cone indicators.
//!
//! Evaluation at directions in cone interiors stands in for the
//! almost-everywhere equality of spherical indicator functions: boundary
//! directions form a measure-zero set and are excluded (each tight term
//! contributes 0, and the sampling loop redraws tight directions entirely).

use crate::exactnum::{Scalar, Vector};
use crate::vertexstar::{Cone, VertexStar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndicatorError {
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("star is not complete around its center")]
    IncompleteStar,
}

/// `sum_i coeff_i * I_{cone_i}` over cones of a shared dimension.
#[derive(Clone, Debug)]
pub struct IndicatorCombo {
    terms: Vec<(Scalar, Cone)>,
}

impl IndicatorCombo {
    pub fn new(terms: Vec<(Scalar, Cone)>) -> Self {
        if let Some((_, first)) = terms.first() {
            assert!(terms.iter().all(|(_, c)| c.dim() == first.dim()));
        }
        IndicatorCombo { terms }
    }

    pub fn terms(&self) -> &[(Scalar, Cone)] {
        &self.terms
    }

    pub fn dim(&self) -> Option<usize> {
        self.terms.first().map(|(_, c)| c.dim())
    }

    /// Concatenation; evaluation is linear over it.
    pub fn concat(&self, other: &IndicatorCombo) -> IndicatorCombo {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        IndicatorCombo::new(terms)
    }

    /// Sum of coefficients of the cones containing `direction` strictly in
    /// their interior; tight or violated terms contribute 0.
    pub fn eval(&self, direction: &Vector) -> Result<Scalar, IndicatorError> {
        if direction.is_zero() {
            return Err(IndicatorError::ZeroDirection);
        }
        let mut acc = Scalar::zero();
        for (coeff, cone) in &self.terms {
            if cone.contains_interior(direction) {
                acc = acc + coeff.clone();
            }
        }
        Ok(acc)
    }

    fn tight_anywhere(&self, direction: &Vector) -> bool {
        self.terms
            .iter()
            .any(|(_, c)| c.on_boundary_hyperplane(direction))
    }
}

/// Outcome of the randomized zero test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroVerdict {
    Zero,
    Witness { direction: Vector, value: Scalar },
}

/// Evaluates the combo at `samples` seeded pseudo-random rational directions,
/// resampling any direction tight on some term. Exact evaluations throughout,
/// so a `Witness` is hard evidence of a nonzero combination.
pub fn monte_carlo_zero(combo: &IndicatorCombo, samples: usize, seed: u64) -> ZeroVerdict {
    assert!(samples >= 1);
    let Some(dim) = combo.dim() else {
        return ZeroVerdict::Zero;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < samples {
        let direction = Vector::new(
            (0..dim)
                .map(|_| Scalar::from_int(rng.gen_range(-1000i64..=1000)))
                .collect(),
        );
        if direction.is_zero() || combo.tight_anywhere(&direction) {
            continue;
        }
        let value = combo.eval(&direction).expect("nonzero direction");
        if !value.is_zero() {
            return ZeroVerdict::Witness { direction, value };
        }
        done += 1;
    }
    ZeroVerdict::Zero
}

/// `sum_i I_{cone_i} - I_{H+} - I_{H-}` for a complete star and a splitting
/// normal: the cones partition all directions, each non-boundary direction
/// lies in exactly one open halfspace, so the combo vanishes almost
/// everywhere.
pub fn hemisphere_identity(
    star: &VertexStar,
    splitting_normal: &Vector,
) -> Result<IndicatorCombo, IndicatorError> {
    if !star.complete {
        return Err(IndicatorError::IncompleteStar);
    }
    if splitting_normal.is_zero() {
        return Err(IndicatorError::ZeroDirection);
    }
    let mut terms: Vec<(Scalar, Cone)> = star
        .cones
        .iter()
        .map(|sc| (Scalar::one(), sc.cone.clone()))
        .collect();
    terms.push((
        -Scalar::one(),
        Cone::halfspace(splitting_normal.clone()),
    ));
    terms.push((-Scalar::one(), Cone::halfspace(splitting_normal.neg())));
    Ok(IndicatorCombo::new(terms))
}
