//! Penetration tables of heptagons and the three figure-8 sign patterns.
//!
//! Label the vertices 1..7 along the polygon. Row `r` of the table records how
//! the three edges that avoid the triangle Δ(r, r+1, r+2) penetrate it:
//! ε(Δ(r,r+1,r+2), e(r+3,r+4)), ε(.., e(r+4,r+5)), ε(.., e(r+5,r+6)).
//! A heptagon in general position is a figure-8 knot exactly when some
//! labeling turns its table into one of the patterns RS1, RS2, RS3 (with a
//! single global sign).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{epsilon_by, Chirotope, GeometryError, Point3, Sign};

/// Seven vertices in general position, closed into a polygon in index order.
#[derive(Clone, Debug)]
pub struct Heptagon {
    vertices: Vec<Point3>,
    chirotope: Chirotope,
}

impl Heptagon {
    pub fn new(vertices: Vec<Point3>) -> Result<Self, GeometryError> {
        if vertices.len() != 7 {
            return Err(GeometryError::DegenerateInput(format!(
                "a heptagon has 7 vertices, got {}",
                vertices.len()
            )));
        }
        let chirotope = Chirotope::from_points(&vertices);
        if let Some(q) = chirotope.first_zero() {
            return Err(GeometryError::NotInGeneralPosition(q));
        }
        Ok(Heptagon { vertices, chirotope })
    }

    /// Heptagon whose vertex `i` is point `order[i]` of a larger configuration
    /// with known orientations. Used by the census to avoid recomputing signs.
    pub(crate) fn from_chirotope(chirotope: &Chirotope, order: &[usize]) -> Self {
        Heptagon {
            vertices: Vec::new(),
            chirotope: chirotope.select(order),
        }
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn chirotope(&self) -> &Chirotope {
        &self.chirotope
    }

    /// The same polygon with its vertices renumbered so that label position
    /// `l` holds old vertex `lab.vertex(l)`.
    pub fn relabeled(&self, lab: Labeling) -> Heptagon {
        let order: Vec<usize> = (0..7).map(|l| lab.vertex(l)).collect();
        Heptagon {
            vertices: if self.vertices.is_empty() {
                Vec::new()
            } else {
                order.iter().map(|&i| self.vertices[i].clone()).collect()
            },
            chirotope: self.chirotope.select(&order),
        }
    }
}

/// Choice of base vertex and traversal direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Labeling {
    pub base: usize,
    /// +1 or -1.
    pub direction: i8,
}

impl Labeling {
    pub const IDENTITY: Labeling = Labeling { base: 0, direction: 1 };

    pub fn new(base: usize, direction: i8) -> Option<Labeling> {
        (base < 7 && (direction == 1 || direction == -1)).then_some(Labeling { base, direction })
    }

    /// All 14 labelings: base ascending, direction +1 before -1.
    pub fn all() -> impl Iterator<Item = Labeling> {
        (0..7).flat_map(|base| [1, -1].map(|direction| Labeling { base, direction }))
    }

    /// Vertex index carrying label position `l` (0-based; label `l + 1`).
    pub fn vertex(self, l: usize) -> usize {
        let step = if self.direction > 0 { l } else { 7 - l % 7 };
        (self.base + step) % 7
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.base, self.direction)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PenetrationTable {
    pub entries: [[Sign; 3]; 7],
}

impl PenetrationTable {
    pub fn zero() -> Self {
        PenetrationTable {
            entries: [[Sign::Zero; 3]; 7],
        }
    }

    /// I(r): number of edges penetrating the row-`r` triangle (0-based row).
    pub fn penetration_count(&self, row: usize) -> usize {
        self.entries[row].iter().filter(|s| !s.is_zero()).count()
    }

    pub fn negated(&self) -> Self {
        PenetrationTable {
            entries: self.entries.map(|r| r.map(|s| -s)),
        }
    }

    /// Seven lines of three symbols: `+`, `-`, or `x` for ε = 0.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            let cells: Vec<&str> = row
                .iter()
                .map(|s| match s {
                    Sign::Positive => "+",
                    Sign::Negative => "-",
                    Sign::Zero => "x",
                })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Inverse of [`render`](Self::render).
    pub fn parse(text: &str) -> Option<Self> {
        let mut t = PenetrationTable::zero();
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        if lines.len() != 7 {
            return None;
        }
        for (r, line) in lines.iter().enumerate() {
            let cells: Vec<&str> = line.split_whitespace().collect();
            if cells.len() != 3 {
                return None;
            }
            for (c, cell) in cells.iter().enumerate() {
                t.entries[r][c] = match *cell {
                    "+" => Sign::Positive,
                    "-" => Sign::Negative,
                    "x" => Sign::Zero,
                    _ => return None,
                };
            }
        }
        Some(t)
    }

    /// Row labels in 1-based vertex notation, e.g. "123: 45 56 67".
    pub fn row_header(row: usize) -> String {
        let v = |k: usize| (row + k) % 7 + 1;
        format!(
            "{}{}{}: {}{} {}{} {}{}",
            v(0),
            v(1),
            v(2),
            v(3),
            v(4),
            v(4),
            v(5),
            v(5),
            v(6)
        )
    }
}

/// Penetration table of `h` under labeling `lab`.
pub fn build_table(h: &Heptagon, lab: Labeling) -> Result<PenetrationTable, GeometryError> {
    let v: [usize; 7] = std::array::from_fn(|l| lab.vertex(l));
    let chi = &h.chirotope;
    let mut t = PenetrationTable::zero();
    for r in 0..7 {
        let tri = [v[r], v[(r + 1) % 7], v[(r + 2) % 7]];
        for c in 0..3 {
            let j = v[(r + 3 + c) % 7];
            let k = v[(r + 4 + c) % 7];
            t.entries[r][c] = epsilon_by(|a, b, c, d| chi.orient(a, b, c, d), tri, j, k)?;
        }
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cell {
    Plus,
    Minus,
    Zero,
}

use Cell::{Minus as M, Plus as P, Zero as Z};

const RS1: [[Cell; 3]; 7] = [
    [P, M, Z],
    [M, Z, Z],
    [Z, P, Z],
    [P, Z, Z],
    [Z, M, Z],
    [M, Z, Z],
    [Z, P, Z],
];

const RS2: [[Cell; 3]; 7] = [
    [P, M, Z],
    [M, Z, Z],
    [Z, P, Z],
    [P, Z, Z],
    [Z, M, Z],
    [M, P, Z],
    [Z, P, Z],
];

const RS3: [[Cell; 3]; 7] = [
    [P, M, Z],
    [Z, M, Z],
    [Z, P, Z],
    [P, Z, Z],
    [Z, M, Z],
    [M, Z, Z],
    [Z, P, Z],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RsPattern {
    RS1,
    RS2,
    RS3,
}

impl RsPattern {
    pub const ALL: [RsPattern; 3] = [RsPattern::RS1, RsPattern::RS2, RsPattern::RS3];

    fn cells(self) -> &'static [[Cell; 3]; 7] {
        match self {
            RsPattern::RS1 => &RS1,
            RsPattern::RS2 => &RS2,
            RsPattern::RS3 => &RS3,
        }
    }

    /// The template with `+` read as `s` and `-` as `-s`.
    pub fn instantiate(self, s: Sign) -> PenetrationTable {
        let mut t = PenetrationTable::zero();
        for (r, row) in self.cells().iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                t.entries[r][c] = match cell {
                    Cell::Plus => s,
                    Cell::Minus => -s,
                    Cell::Zero => Sign::Zero,
                };
            }
        }
        t
    }
}

impl fmt::Display for RsPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RsPattern::RS1 => "RS-I",
            RsPattern::RS2 => "RS-II",
            RsPattern::RS3 => "RS-III",
        };
        f.write_str(name)
    }
}

/// First `(pattern, s)` reproducing `t`, RS1 < RS2 < RS3 and s = +1 first.
pub fn match_rs(t: &PenetrationTable) -> Option<(RsPattern, Sign)> {
    RsPattern::ALL.into_iter().find_map(|p| {
        [Sign::Positive, Sign::Negative]
            .into_iter()
            .find(|&s| p.instantiate(s) == *t)
            .map(|s| (p, s))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsMatch {
    pub labeling: Labeling,
    pub pattern: RsPattern,
    /// +1 or -1.
    pub global_sign: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadonVerdict {
    Figure8(RsMatch),
    NotFigure8,
}

impl RadonVerdict {
    pub fn is_figure8(&self) -> bool {
        matches!(self, RadonVerdict::Figure8(_))
    }
}

/// Scans labelings in order and reports the first RS match.
pub fn classify_by_radon(h: &Heptagon) -> Result<RadonVerdict, GeometryError> {
    for lab in Labeling::all() {
        if let Some(m) = match_labeling(h, lab)? {
            return Ok(RadonVerdict::Figure8(m));
        }
    }
    Ok(RadonVerdict::NotFigure8)
}

/// Every labeling that matches some pattern, in scan order.
pub fn all_rs_matches(h: &Heptagon) -> Result<Vec<RsMatch>, GeometryError> {
    let mut out = Vec::new();
    for lab in Labeling::all() {
        if let Some(m) = match_labeling(h, lab)? {
            out.push(m);
        }
    }
    Ok(out)
}

fn match_labeling(h: &Heptagon, lab: Labeling) -> Result<Option<RsMatch>, GeometryError> {
    let t = build_table(h, lab)?;
    Ok(match_rs(&t).map(|(pattern, s)| RsMatch {
        labeling: lab,
        pattern,
        global_sign: s.as_i8(),
    }))
}
