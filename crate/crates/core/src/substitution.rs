//! Tile-substitution rules and their verification: the dissection identity
//! `lambda T_i = union sigma(T_i)` (non-overlapping), supertile generation,
//! the discrete-lattice criterion for finite local complexity, and the
//! two-tile constellation enumerator.

use crate::exactnum::{self, Matrix, Scalar, Vector};
use crate::patch::{self, Patch};
use crate::polytope::{Location, Polytope};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("rule schema error: {0}")]
    Schema(String),
    #[error("prototile {0} has no vertices to normalize to the origin")]
    Normalization(String),
    #[error("prototile {prototile} placement {placement} escapes the inflated tile")]
    Containment { prototile: usize, placement: usize },
    #[error("prototile {prototile}: placements {first} and {second} overlap")]
    Overlap {
        prototile: usize,
        first: usize,
        second: usize,
    },
    #[error("prototile {prototile}: placed area {got} != inflated area {want}")]
    AreaGap {
        prototile: usize,
        got: String,
        want: String,
    },
    #[error("inflation factor is not a positive integer")]
    NonIntegerFactor,
}

/// One placed copy inside a dissection: `x -> linear * x + offset` applied to
/// the target prototile.
#[derive(Clone, Debug)]
pub struct Placement {
    pub target: usize,
    pub linear: Matrix,
    pub offset: Vector,
}

/// A tile-substitution rule: prototiles (each with the origin as a vertex),
/// a scalar inflation factor, and per-prototile placement lists.
#[derive(Clone, Debug)]
pub struct SubstitutionRule {
    pub names: Vec<String>,
    pub prototiles: Vec<Polytope>,
    pub factor: Scalar,
    pub mappings: Vec<Vec<Placement>>,
    pub dim: usize,
    pub radicand: u64,
}

// -- file schema ------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RuleFile {
    dim: usize,
    radicand: u64,
    factor: String,
    prototiles: Vec<PrototileFile>,
    substitution: Vec<SubstFile>,
}

#[derive(Serialize, Deserialize)]
struct PrototileFile {
    name: String,
    vertices: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct SubstFile {
    prototile: String,
    placements: Vec<PlacementFile>,
}

#[derive(Serialize, Deserialize)]
struct PlacementFile {
    target: String,
    /// row-major scalar strings, dim*dim entries
    matrix: Vec<String>,
    offset: Vec<String>,
}

fn parse_scalar(s: &str, radicand: u64, what: &str) -> Result<Scalar, RuleError> {
    let v: Scalar = s
        .parse()
        .map_err(|e| RuleError::Schema(format!("{what}: {e}")))?;
    if v.radicand() != 0 && v.radicand() != radicand {
        return Err(RuleError::Schema(format!(
            "{what}: radicand {} does not match rule radicand {radicand}",
            v.radicand()
        )));
    }
    Ok(v)
}

fn is_square_free(d: u64) -> bool {
    let mut m = d;
    let mut p = 2;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        while m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

/// Parses and fully validates a rule file; each prototile is translated so
/// its lexicographically smallest vertex sits at the origin, with placement
/// offsets adjusted to keep the dissection identity intact.
pub fn parse_rule(text: &str) -> Result<SubstitutionRule, RuleError> {
    let file: RuleFile =
        serde_json::from_str(text).map_err(|e| RuleError::Schema(e.to_string()))?;
    if !(1..=3).contains(&file.dim) {
        return Err(RuleError::Schema(format!("unsupported dim {}", file.dim)));
    }
    if file.radicand == 1 || !is_square_free(file.radicand) {
        return Err(RuleError::Schema(format!(
            "radicand {} must be 0 or square-free >= 2",
            file.radicand
        )));
    }
    let factor = parse_scalar(&file.factor, file.radicand, "factor")?;
    if factor.sign() <= 0 {
        return Err(RuleError::Schema("factor must be positive".into()));
    }
    if file.prototiles.is_empty() {
        return Err(RuleError::Schema("no prototiles".into()));
    }
    let mut names = Vec::new();
    let mut raw_tiles: Vec<Vec<Vector>> = Vec::new();
    for p in &file.prototiles {
        if names.contains(&p.name) {
            return Err(RuleError::Schema(format!("duplicate prototile {}", p.name)));
        }
        if p.vertices.is_empty() {
            return Err(RuleError::Normalization(p.name.clone()));
        }
        let mut verts = Vec::new();
        for v in &p.vertices {
            if v.len() != file.dim {
                return Err(RuleError::Schema(format!(
                    "prototile {}: vertex arity {} != dim {}",
                    p.name,
                    v.len(),
                    file.dim
                )));
            }
            let coords: Result<Vec<Scalar>, RuleError> = v
                .iter()
                .map(|s| parse_scalar(s, file.radicand, &format!("prototile {}", p.name)))
                .collect();
            verts.push(Vector::new(coords?));
        }
        names.push(p.name.clone());
        raw_tiles.push(verts);
    }
    let lookup = |name: &str| -> Result<usize, RuleError> {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| RuleError::Schema(format!("unknown prototile {name:?}")))
    };
    // origin-vertex normalization: remember each shift to fix up offsets
    let mut shifts: Vec<Vector> = Vec::new();
    let mut prototiles: Vec<Polytope> = Vec::new();
    for (name, verts) in names.iter().zip(&raw_tiles) {
        let min = verts.iter().min().cloned().unwrap();
        let moved: Vec<Vector> = verts.iter().map(|v| v.sub(&min)).collect();
        let tile = Polytope::from_vertices(&moved)
            .map_err(|e| RuleError::Schema(format!("prototile {name}: {e}")))?;
        if !tile.is_vertex(&Vector::zero(file.dim)) {
            return Err(RuleError::Normalization(name.clone()));
        }
        shifts.push(min);
        prototiles.push(tile);
    }
    let mut mappings: Vec<Vec<Placement>> = vec![Vec::new(); prototiles.len()];
    let mut seen = vec![false; prototiles.len()];
    for s in &file.substitution {
        let i = lookup(&s.prototile)?;
        if seen[i] {
            return Err(RuleError::Schema(format!(
                "duplicate substitution entry for {}",
                s.prototile
            )));
        }
        seen[i] = true;
        for (pidx, pf) in s.placements.iter().enumerate() {
            let j = lookup(&pf.target)?;
            if pf.matrix.len() != file.dim * file.dim {
                return Err(RuleError::Schema(format!(
                    "{}[{pidx}]: matrix needs {} entries",
                    s.prototile,
                    file.dim * file.dim
                )));
            }
            if pf.offset.len() != file.dim {
                return Err(RuleError::Schema(format!(
                    "{}[{pidx}]: offset arity mismatch",
                    s.prototile
                )));
            }
            let entries: Result<Vec<Scalar>, RuleError> = pf
                .matrix
                .iter()
                .map(|t| parse_scalar(t, file.radicand, &format!("{}[{pidx}] matrix", s.prototile)))
                .collect();
            let entries = entries?;
            let linear = Matrix::new(
                entries
                    .chunks(file.dim)
                    .map(|row| Vector::new(row.to_vec()))
                    .collect(),
            );
            if !linear.is_orthogonal() {
                return Err(RuleError::Schema(format!(
                    "{}[{pidx}]: linear part is not an exact isometry",
                    s.prototile
                )));
            }
            let off: Result<Vec<Scalar>, RuleError> = pf
                .offset
                .iter()
                .map(|t| parse_scalar(t, file.radicand, &format!("{}[{pidx}] offset", s.prototile)))
                .collect();
            let offset = Vector::new(off?);
            // placements were authored against the un-normalized prototiles:
            // piece L*T_j + w becomes L*T_j' + (w + L*shift_j - lambda*shift_i)
            let adjusted = offset
                .add(&linear.apply(&shifts[j]))
                .sub(&shifts[i].scale(&factor));
            mappings[i].push(Placement {
                target: j,
                linear,
                offset: adjusted,
            });
        }
    }
    for (i, s) in seen.iter().enumerate() {
        if !s {
            return Err(RuleError::Schema(format!(
                "prototile {} has no substitution entry",
                names[i]
            )));
        }
    }
    Ok(SubstitutionRule {
        names,
        prototiles,
        factor,
        mappings,
        dim: file.dim,
        radicand: file.radicand,
    })
}

impl SubstitutionRule {
    fn placed_polytope(&self, p: &Placement) -> Polytope {
        self.prototiles[p.target].transform(&p.linear, &p.offset)
    }

    /// True when the inflation factor is a positive integer, as the lattice
    /// criterion requires.
    pub fn integer_factor(&self) -> bool {
        self.factor.is_integer() && self.factor.sign() > 0
    }
}

/// Certifies `lambda T_i = union of placements` as a non-overlapping union:
/// exact vertex containment, pairwise interior-disjointness, and an exact
/// area audit. Ambient dimension 2.
pub fn check_self_similar(rule: &SubstitutionRule) -> Result<(), RuleError> {
    assert_eq!(rule.dim, 2, "self-similarity audit implemented for the plane");
    for (i, placements) in rule.mappings.iter().enumerate() {
        let inflated = rule.prototiles[i].scale(&rule.factor);
        let placed: Vec<Polytope> = placements
            .iter()
            .map(|p| rule.placed_polytope(p))
            .collect();
        for (pidx, tile) in placed.iter().enumerate() {
            if tile
                .vertices()
                .iter()
                .any(|v| inflated.contains(v) == Location::Outside)
            {
                return Err(RuleError::Containment {
                    prototile: i,
                    placement: pidx,
                });
            }
        }
        for a in 0..placed.len() {
            for b in (a + 1)..placed.len() {
                if placed[a].interiors_intersect(&placed[b]) {
                    return Err(RuleError::Overlap {
                        prototile: i,
                        first: a,
                        second: b,
                    });
                }
            }
        }
        let got = placed
            .iter()
            .fold(Scalar::zero(), |acc, t| acc + t.area2());
        let want = inflated.area2();
        if got != want {
            return Err(RuleError::AreaGap {
                prototile: i,
                got: got.to_string(),
                want: want.to_string(),
            });
        }
    }
    Ok(())
}

/// Iteratively expands prototile `i` to order `k` and emits a validated
/// patch. Deterministic tile ordering: children in placement order.
pub fn supertile(rule: &SubstitutionRule, i: usize, k: u32) -> Patch {
    // placed tile = linear * T_target + offset
    let mut placed: Vec<Placement> = vec![Placement {
        target: i,
        linear: Matrix::identity(rule.dim),
        offset: Vector::zero(rule.dim),
    }];
    for _ in 0..k {
        let mut next = Vec::with_capacity(placed.len() * 4);
        for t in &placed {
            for p in &rule.mappings[t.target] {
                next.push(Placement {
                    target: p.target,
                    linear: t.linear.matmul(&p.linear),
                    offset: t.linear.apply(&p.offset).add(&t.offset.scale(&rule.factor)),
                });
            }
        }
        placed = next;
    }
    let tiles: Vec<Polytope> = placed.iter().map(|p| rule.placed_polytope(p)).collect();
    patch::build_patch(tiles).expect("supertile packing holds by construction")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlcVerdict {
    /// Discrete vertex span; carries the canonical lattice basis when the
    /// coordinates are rational.
    Certified { basis: Option<Vec<Vector>> },
    /// Non-discrete span: the criterion is sufficient only, so nothing is
    /// concluded.
    Inconclusive,
}

/// The finite group of orientations the rule can produce: closure of the
/// placement linear parts under composition, starting from the identity.
fn orientation_closure(rule: &SubstitutionRule) -> Vec<Matrix> {
    let generators: Vec<&Matrix> = rule
        .mappings
        .iter()
        .flatten()
        .map(|p| &p.linear)
        .collect();
    let mut closure = vec![Matrix::identity(rule.dim)];
    let mut frontier = closure.clone();
    while let Some(m) = frontier.pop() {
        for g in &generators {
            let next = m.matmul(g);
            if !closure.contains(&next) {
                assert!(
                    closure.len() < 64,
                    "orientation closure too large; is the rule's rotation group finite?"
                );
                closure.push(next.clone());
                frontier.push(next);
            }
        }
    }
    closure
}

/// The discrete-lattice criterion: collects the prototile vertices in every
/// orientation the rule produces (tiles of the tiling are translates of
/// these) and tests whether their Z-span is discrete. Requires a positive
/// integer inflation factor.
pub fn flc_criterion(rule: &SubstitutionRule) -> Result<FlcVerdict, RuleError> {
    if !rule.integer_factor() {
        return Err(RuleError::NonIntegerFactor);
    }
    let orientations = orientation_closure(rule);
    let vertices: Vec<Vector> = rule
        .prototiles
        .iter()
        .flat_map(|t| t.vertices().iter().cloned())
        .flat_map(|v| orientations.iter().map(move |m| m.apply(&v)))
        .filter(|v| !v.is_zero())
        .collect();
    if !exactnum::is_discrete_span(&vertices) {
        return Ok(FlcVerdict::Inconclusive);
    }
    let basis = exactnum::hnf_lattice_basis(&vertices).ok();
    Ok(FlcVerdict::Certified { basis })
}

#[derive(Clone, Debug)]
pub struct LatticeAuditReport {
    /// supertile vertex points outside the lattice, per prototile
    pub outliers: Vec<(usize, Vector)>,
    /// prototiles whose supertile graph splits into several components
    pub disconnected: Vec<usize>,
}

impl LatticeAuditReport {
    pub fn passed(&self) -> bool {
        self.outliers.is_empty() && self.disconnected.is_empty()
    }
}

/// Checks that every vertex point of every order-k supertile lies in the
/// prototile-vertex lattice, and that each supertile's vertex-edge graph is
/// a single component.
pub fn vertex_lattice_audit(rule: &SubstitutionRule, k: u32) -> Result<LatticeAuditReport, RuleError> {
    let verdict = flc_criterion(rule)?;
    let FlcVerdict::Certified { basis: Some(basis) } = verdict else {
        return Err(RuleError::Schema(
            "lattice audit needs a certified rational lattice".into(),
        ));
    };
    let mut outliers = Vec::new();
    let mut disconnected = Vec::new();
    for i in 0..rule.prototiles.len() {
        let patch = supertile(rule, i, k);
        for v in patch.vertex_points() {
            if !exactnum::in_lattice(&basis, &v) {
                outliers.push((i, v));
            }
        }
        let graph = patch::build_graph(&patch);
        if graph.component_count != 1 {
            disconnected.push(i);
        }
    }
    Ok(LatticeAuditReport {
        outliers,
        disconnected,
    })
}

/// Canonical translation-only form of a pair of intersecting tiles: shift
/// the lexicographically smallest vertex of the pair to the origin and
/// record both ordered vertex lists (cyclic lists rotated to start at their
/// lexicographic minimum), the two serializations sorted.
fn canonical_pair(a: &Polytope, b: &Polytope) -> (String, String) {
    let anchor = a
        .vertices()
        .iter()
        .chain(b.vertices())
        .min()
        .cloned()
        .unwrap();
    let serialize = |t: &Polytope| -> String {
        let verts: Vec<Vector> = t.vertices().iter().map(|v| v.sub(&anchor)).collect();
        let start = verts
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| x.cmp(y))
            .map(|(i, _)| i)
            .unwrap();
        let rotated: Vec<String> = (0..verts.len())
            .map(|o| verts[(start + o) % verts.len()].to_string())
            .collect();
        rotated.join(";")
    };
    let (sa, sb) = (serialize(a), serialize(b));
    if sa <= sb {
        (sa, sb)
    } else {
        (sb, sa)
    }
}

/// Distinct two-tile constellations (up to translation) per order, merged
/// over all prototiles' supertiles. A stabilizing count across orders is
/// empirical evidence of finite local complexity.
pub fn enumerate_pair_constellations(rule: &SubstitutionRule, max_order: u32) -> Vec<usize> {
    (0..=max_order)
        .map(|k| {
            let mut forms: BTreeSet<(String, String)> = BTreeSet::new();
            for i in 0..rule.prototiles.len() {
                let patch = supertile(rule, i, k);
                let tiles = patch.tiles();
                for a in 0..tiles.len() {
                    for b in (a + 1)..tiles.len() {
                        if tiles[a].1.closed_intersects(&tiles[b].1) {
                            forms.insert(canonical_pair(&tiles[a].1, &tiles[b].1));
                        }
                    }
                }
            }
            forms.len()
        })
        .collect()
}

/// Distinct constellation forms in a single patch (used for oracle tests).
pub fn patch_pair_constellations(patch: &Patch) -> usize {
    let tiles = patch.tiles();
    let mut forms: BTreeSet<(String, String)> = BTreeSet::new();
    for a in 0..tiles.len() {
        for b in (a + 1)..tiles.len() {
            if tiles[a].1.closed_intersects(&tiles[b].1) {
                forms.insert(canonical_pair(&tiles[a].1, &tiles[b].1));
            }
        }
    }
    forms.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patch::{lonely_vertex_scan, square_grid};

    pub(crate) const TABLE_RULE: &str = r#"{
      "dim": 2,
      "radicand": 0,
      "factor": "2",
      "prototiles": [
        {"name": "table", "vertices": [["0","0"],["2","0"],["2","1"],["0","1"]]}
      ],
      "substitution": [
        {"prototile": "table", "placements": [
          {"target": "table", "matrix": ["0","-1","1","0"], "offset": ["1","0"]},
          {"target": "table", "matrix": ["0","-1","1","0"], "offset": ["4","0"]},
          {"target": "table", "matrix": ["1","0","0","1"], "offset": ["1","0"]},
          {"target": "table", "matrix": ["1","0","0","1"], "offset": ["1","1"]}
        ]}
      ]
    }"#;

    pub(crate) const TRIANGLE_RULE: &str = r#"{
      "dim": 2,
      "radicand": 0,
      "factor": "2",
      "prototiles": [
        {"name": "half", "vertices": [["0","0"],["1","0"],["0","1"]]}
      ],
      "substitution": [
        {"prototile": "half", "placements": [
          {"target": "half", "matrix": ["1","0","0","1"], "offset": ["0","0"]},
          {"target": "half", "matrix": ["1","0","0","1"], "offset": ["1","0"]},
          {"target": "half", "matrix": ["1","0","0","1"], "offset": ["0","1"]},
          {"target": "half", "matrix": ["-1","0","0","-1"], "offset": ["1","1"]}
        ]}
      ]
    }"#;

    #[test]
    fn parse_table_rule() {
        let rule = parse_rule(TABLE_RULE).unwrap();
        assert_eq!(rule.prototiles.len(), 1);
        assert_eq!(rule.factor, Scalar::from_int(2));
        assert_eq!(rule.mappings[0].len(), 4);
        assert!(rule.prototiles[0].is_vertex(&Vector::zero(2)));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(matches!(
            parse_rule("{"),
            Err(RuleError::Schema(_))
        ));
        let bad_vertex = TABLE_RULE.replace("[\"2\",\"0\"]", "[\"2x\",\"0\"]");
        assert!(matches!(parse_rule(&bad_vertex), Err(RuleError::Schema(_))));
        let bad_matrix = TABLE_RULE.replacen("\"0\",\"-1\",\"1\",\"0\"", "\"0\",\"-2\",\"1\",\"0\"", 1);
        assert!(matches!(parse_rule(&bad_matrix), Err(RuleError::Schema(_))));
    }

    #[test]
    fn fractional_factor_parses_but_fails_flc_path() {
        let frac = TABLE_RULE.replace("\"factor\": \"2\"", "\"factor\": \"3/2\"");
        let rule = parse_rule(&frac).unwrap();
        assert!(!rule.integer_factor());
        assert_eq!(flc_criterion(&rule).unwrap_err(), RuleError::NonIntegerFactor);
    }

    #[test]
    fn table_rule_self_similar() {
        let rule = parse_rule(TABLE_RULE).unwrap();
        check_self_similar(&rule).unwrap();
        let tri = parse_rule(TRIANGLE_RULE).unwrap();
        check_self_similar(&tri).unwrap();
    }

    #[test]
    fn broken_dissections_are_named() {
        // shift one piece by (1/2, 0): overlap
        let shifted = TABLE_RULE.replacen("\"offset\": [\"1\",\"1\"]", "\"offset\": [\"3/2\",\"1\"]", 1);
        let rule = parse_rule(&shifted).unwrap();
        assert!(matches!(
            check_self_similar(&rule),
            Err(RuleError::Overlap { prototile: 0, .. })
        ));
        // drop one piece: area gap 6 != 8
        let mut missing = parse_rule(TABLE_RULE).unwrap();
        missing.mappings[0].pop();
        match check_self_similar(&missing) {
            Err(RuleError::AreaGap { prototile: 0, got, want }) => {
                assert_eq!(got, "6");
                assert_eq!(want, "8");
            }
            other => panic!("expected area gap, got {other:?}"),
        }
        // move a piece outside
        let mut escaping = parse_rule(TABLE_RULE).unwrap();
        escaping.mappings[0][3].offset = Vector::from_ints(&[10, 0]);
        assert!(matches!(
            check_self_similar(&escaping),
            Err(RuleError::Containment { prototile: 0, placement: 3 })
        ));
    }

    #[test]
    fn supertile_counts_and_support() {
        let rule = parse_rule(TABLE_RULE).unwrap();
        assert_eq!(supertile(&rule, 0, 0).tiles().len(), 1);
        assert_eq!(supertile(&rule, 0, 1).tiles().len(), 4);
        let s3 = supertile(&rule, 0, 3);
        assert_eq!(s3.tiles().len(), 64);
        // support is the inflated prototile [0,16] x [0,8]
        let support = s3.support_hull();
        let expected = rule.prototiles[0].scale(&Scalar::from_int(8));
        let mut a = support.vertices().to_vec();
        let mut b = expected.vertices().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(
            s3.tiles().iter().fold(Scalar::zero(), |acc, (_, t)| acc + t.area2()),
            expected.area2()
        );
    }

    #[test]
    fn flc_table_certified_with_z2() {
        let rule = parse_rule(TABLE_RULE).unwrap();
        match flc_criterion(&rule).unwrap() {
            FlcVerdict::Certified { basis: Some(basis) } => {
                assert_eq!(
                    basis,
                    vec![Vector::from_ints(&[1, 0]), Vector::from_ints(&[0, 1])]
                );
            }
            other => panic!("expected certified rational lattice, got {other:?}"),
        }
    }

    #[test]
    fn flc_inconclusive_for_dense_span() {
        let rule = r#"{
          "dim": 2,
          "radicand": 2,
          "factor": "2",
          "prototiles": [
            {"name": "skew", "vertices": [["0","0"],["1","0"],["1*sqrt(2)","1"],["0","1"]]}
          ],
          "substitution": [
            {"prototile": "skew", "placements": [
              {"target": "skew", "matrix": ["1","0","0","1"], "offset": ["0","0"]}
            ]}
          ]
        }"#;
        let rule = parse_rule(rule).unwrap();
        assert_eq!(flc_criterion(&rule).unwrap(), FlcVerdict::Inconclusive);
    }

    #[test]
    fn lattice_audit_and_negative_control() {
        let rule = parse_rule(TABLE_RULE).unwrap();
        for k in 0..=3 {
            let report = vertex_lattice_audit(&rule, k).unwrap();
            assert!(report.passed(), "k={k}: {report:?}");
        }
        // a vertex shifted by 1/3 must be flagged
        let basis = vec![Vector::from_ints(&[1, 0]), Vector::from_ints(&[0, 1])];
        let bad = Vector::new(vec![Scalar::rat(1, 3), Scalar::zero()]);
        assert!(!exactnum::in_lattice(&basis, &bad));
    }

    #[test]
    fn grid_constellations_oracle() {
        // 4x4 unit grid: horizontal, vertical, and two diagonal touch classes
        let grid = square_grid(4, 4);
        assert_eq!(patch_pair_constellations(&grid), 4);
        // order 0: single tile, no pairs
        let rule = parse_rule(TABLE_RULE).unwrap();
        assert_eq!(enumerate_pair_constellations(&rule, 0), vec![0]);
    }

    #[test]
    fn supertiles_have_no_lonely_vertices() {
        for text in [TABLE_RULE, TRIANGLE_RULE] {
            let rule = parse_rule(text).unwrap();
            let patch = supertile(&rule, 0, 3);
            assert!(lonely_vertex_scan(&patch).is_empty());
        }
    }
}
