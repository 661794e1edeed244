//! Knot-type oracle for polygonal knots: generic projection, Wirtinger/Fox
//! Alexander matrix, knot determinant and linking number.
//!
//! For polygons with at most seven edges the only possible knot types are the
//! unknot, the trefoil (either chirality) and the figure-8, whose determinants
//! are 1, 3 and 5, so the determinant alone classifies them.

mod poly;
mod projection;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Lattice;
use crate::geometry::{collinear, general_position_check, GeneralPosition, GeometryError, Point3};

pub use poly::{determinant, int_determinant, IntPolynomial};
pub use projection::{candidate_directions, Crossing, Degeneracy, Diagram, Direction, MAX_CANDIDATES};

pub(crate) use projection::{build_from_lattice, first_generic};

pub const MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("a polygon needs between 3 and {MAX_VERTICES} vertices, got {0}")]
    UnsupportedSize(usize),
    #[error("no generic projection direction among {MAX_CANDIDATES} candidates")]
    ExhaustedCandidates,
    #[error("direction {direction} is not generic: {reason}")]
    NonGenericDirection { direction: Direction, reason: Degeneracy },
    #[error("expected a knot diagram, got {0} components")]
    NotAKnot(usize),
    #[error("expected a 2-component link diagram, got {0} components")]
    NotTwoComponents(usize),
    #[error("column {column} out of range for {arcs} arcs")]
    ColumnOutOfRange { column: usize, arcs: usize },
    #[error("knot determinant {0} is not 1, 3 or 5")]
    UnexpectedDeterminant(u64),
    #[error("the determinant classifies polygons with at most 7 edges, got {0}")]
    TooManyEdges(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KnotClass {
    Unknot,
    /// Either chirality.
    Trefoil,
    Figure8,
}

impl KnotClass {
    pub fn from_determinant(det: u64) -> Result<KnotClass, OracleError> {
        match det {
            1 => Ok(KnotClass::Unknot),
            3 => Ok(KnotClass::Trefoil),
            5 => Ok(KnotClass::Figure8),
            other => Err(OracleError::UnexpectedDeterminant(other)),
        }
    }

    pub fn determinant(self) -> u64 {
        match self {
            KnotClass::Unknot => 1,
            KnotClass::Trefoil => 3,
            KnotClass::Figure8 => 5,
        }
    }

    pub fn is_trivial(self) -> bool {
        self == KnotClass::Unknot
    }
}

fn validate_points(points: &[Point3]) -> Result<(), OracleError> {
    if points.len() == 3 {
        if collinear(&points[0], &points[1], &points[2]) {
            return Err(GeometryError::CollinearTriangle.into());
        }
        return Ok(());
    }
    match general_position_check(points)? {
        GeneralPosition::Ok => Ok(()),
        GeneralPosition::Violation(q) => Err(GeometryError::NotInGeneralPosition(q).into()),
    }
}

/// Closed polygon through its vertices in order, vertices in general position.
#[derive(Clone, Debug)]
pub struct PolygonalKnot {
    vertices: Vec<Point3>,
    lattice: Lattice,
}

impl PolygonalKnot {
    pub fn new(vertices: Vec<Point3>) -> Result<Self, OracleError> {
        if !(3..=MAX_VERTICES).contains(&vertices.len()) {
            return Err(OracleError::UnsupportedSize(vertices.len()));
        }
        validate_points(&vertices)?;
        let lattice = Lattice::from_points(&vertices);
        Ok(PolygonalKnot { vertices, lattice })
    }

    /// Skips validation; the caller guarantees general position.
    pub(crate) fn from_lattice(lattice: Lattice) -> Self {
        PolygonalKnot {
            vertices: Vec::new(),
            lattice,
        }
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }
}

/// Several closed polygons; all vertices together in general position.
#[derive(Clone, Debug)]
pub struct PolygonalLink {
    sizes: Vec<usize>,
    lattice: Lattice,
}

impl PolygonalLink {
    pub fn new(components: Vec<Vec<Point3>>) -> Result<Self, OracleError> {
        if let Some(c) = components.iter().find(|c| !(3..=MAX_VERTICES).contains(&c.len())) {
            return Err(OracleError::UnsupportedSize(c.len()));
        }
        let sizes: Vec<usize> = components.iter().map(Vec::len).collect();
        let all: Vec<Point3> = components.into_iter().flatten().collect();
        validate_points(&all)?;
        Ok(PolygonalLink {
            sizes,
            lattice: Lattice::from_points(&all),
        })
    }

    pub fn component_sizes(&self) -> &[usize] {
        &self.sizes
    }
}

/// First direction in the seeded candidate sequence that gives a regular
/// projection of `p`.
pub fn pick_generic_direction(p: &PolygonalKnot, seed: u64) -> Result<Direction, OracleError> {
    first_generic(&p.lattice, &[p.len()], seed)
        .map(|(d, _)| d)
        .ok_or(OracleError::ExhaustedCandidates)
}

pub fn project_to_diagram(p: &PolygonalKnot, direction: Direction) -> Result<Diagram, OracleError> {
    build_from_lattice(&p.lattice, &[p.len()], direction)
        .map_err(|reason| OracleError::NonGenericDirection { direction, reason })
}

pub fn pick_link_direction(l: &PolygonalLink, seed: u64) -> Result<Direction, OracleError> {
    first_generic(&l.lattice, &l.sizes, seed)
        .map(|(d, _)| d)
        .ok_or(OracleError::ExhaustedCandidates)
}

pub fn project_link(l: &PolygonalLink, direction: Direction) -> Result<Diagram, OracleError> {
    build_from_lattice(&l.lattice, &l.sizes, direction)
        .map_err(|reason| OracleError::NonGenericDirection { direction, reason })
}

/// Crossing × arc matrix of Fox derivatives, abelianized.
///
/// Positive crossing (over `k`, under `i → j`): `t` at `i`, `-1` at `j`,
/// `1 - t` at `k`. Negative crossings swap the roles of `i` and `j`.
fn alexander_matrix(d: &Diagram) -> Vec<Vec<IntPolynomial>> {
    let n = d.arc_count();
    let mut m = vec![vec![IntPolynomial::zero(); n]; d.crossing_count()];
    for (row, c) in m.iter_mut().zip(&d.crossings) {
        let (t_col, minus_col) = if c.sign > 0 {
            (c.under_in, c.under_out)
        } else {
            (c.under_out, c.under_in)
        };
        row[t_col] = &row[t_col] + &IntPolynomial::linear(0, 1);
        row[minus_col] = &row[minus_col] + &IntPolynomial::constant(-1);
        row[c.over] = &row[c.over] + &IntPolynomial::linear(1, -1);
    }
    m
}

fn require_knot(d: &Diagram) -> Result<(), OracleError> {
    if d.components != 1 {
        return Err(OracleError::NotAKnot(d.components));
    }
    Ok(())
}

/// Alexander polynomial from the minor that drops the last crossing row and
/// arc column `column`, normalized up to ±tᵏ.
pub fn alexander_polynomial_deleting(d: &Diagram, column: usize) -> Result<IntPolynomial, OracleError> {
    require_knot(d)?;
    if d.crossing_count() == 0 {
        return Ok(IntPolynomial::constant(1));
    }
    if column >= d.arc_count() {
        return Err(OracleError::ColumnOutOfRange {
            column,
            arcs: d.arc_count(),
        });
    }
    let mut m = alexander_matrix(d);
    m.pop();
    for row in &mut m {
        row.remove(column);
    }
    Ok(determinant(m).normalized())
}

pub fn alexander_polynomial(d: &Diagram) -> Result<IntPolynomial, OracleError> {
    alexander_polynomial_deleting(d, d.arc_count().saturating_sub(1))
}

/// |Δ(−1)|, from the integer matrix obtained by setting t = −1.
pub fn knot_determinant(d: &Diagram) -> Result<u64, OracleError> {
    require_knot(d)?;
    let n = d.crossing_count();
    if n == 0 {
        return Ok(1);
    }
    let mut m = vec![vec![0i128; n]; n];
    for (row, c) in m.iter_mut().zip(&d.crossings) {
        row[c.under_in] -= 1;
        row[c.under_out] -= 1;
        row[c.over] += 2;
    }
    m.pop();
    for row in &mut m {
        row.pop();
    }
    Ok(int_determinant(m).unsigned_abs() as u64)
}

/// Knot class from the seed-0 generic projection.
pub fn classify_knot(p: &PolygonalKnot) -> Result<KnotClass, OracleError> {
    classify_knot_with_seed(p, 0)
}

pub fn classify_knot_with_seed(p: &PolygonalKnot, seed: u64) -> Result<KnotClass, OracleError> {
    if p.len() > 7 {
        return Err(OracleError::TooManyEdges(p.len()));
    }
    let (_, diagram) =
        first_generic(&p.lattice, &[p.len()], seed).ok_or(OracleError::ExhaustedCandidates)?;
    KnotClass::from_determinant(knot_determinant(&diagram)?)
}

/// Half the signed count of crossings between the two components.
pub fn linking_number(d: &Diagram) -> Result<i64, OracleError> {
    if d.components != 2 {
        return Err(OracleError::NotTwoComponents(d.components));
    }
    let total: i64 = d
        .crossings
        .iter()
        .filter(|c| d.arcs[c.over] != d.arcs[c.under_in])
        .map(|c| c.sign as i64)
        .sum();
    debug_assert!(total % 2 == 0);
    Ok(total / 2)
}
