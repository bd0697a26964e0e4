//! Finite projective planes as incidence structures.
//!
//! Points and lines each use the id space `0..n` with `n = q^2 + q + 1`.
//! Incidence is kept as bit rows in both orientations plus sorted adjacency
//! lists, so neighbourhood and intersection queries are cheap from either
//! side.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::{Elem, Field, FieldError};
use crate::io::{LineDocument, PlaneDocument};

/// Cap on the number of violations collected by [`validate_axioms`].
pub const MAX_VIOLATIONS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexKind {
    Point,
    Line,
}

impl VertexKind {
    pub fn opposite(self) -> Self {
        match self {
            VertexKind::Point => VertexKind::Line,
            VertexKind::Line => VertexKind::Point,
        }
    }
}

/// A vertex of the incidence graph. Points order before lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub kind: VertexKind,
    pub index: u32,
}

impl VertexId {
    pub const fn point(index: u32) -> Self {
        VertexId { kind: VertexKind::Point, index }
    }

    pub const fn line(index: u32) -> Self {
        VertexId { kind: VertexKind::Line, index }
    }

    /// Dense index into `0..2n`: points first, then lines.
    pub fn global(self, n: usize) -> usize {
        match self.kind {
            VertexKind::Point => self.index as usize,
            VertexKind::Line => n + self.index as usize,
        }
    }

    pub fn from_global(g: usize, n: usize) -> Self {
        if g < n {
            VertexId::point(g as u32)
        } else {
            VertexId::line((g - n) as u32)
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VertexKind::Point => write!(f, "P{}", self.index),
            VertexKind::Line => write!(f, "L{}", self.index),
        }
    }
}

impl Serialize for VertexId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid vertex id {0:?}: expected P<digits> or L<digits>")]
pub struct ParseVertexError(pub String);

impl FromStr for VertexId {
    type Err = ParseVertexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseVertexError(s.to_owned());
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('P') => VertexKind::Point,
            Some('L') => VertexKind::Line,
            _ => return Err(err()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let index = digits.parse::<u32>().map_err(|_| err())?;
        Ok(VertexId { kind, index })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    OrderUndeterminable,
    OrderTooSmall { q: u32 },
    LineCount { expected: usize, found: usize },
    LineSize { line: u32, size: usize, expected: usize },
    PointDegree { point: u32, degree: usize, expected: usize },
    PointPair { a: u32, b: u32, common_lines: usize },
    LinePair { a: u32, b: u32, common_points: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::OrderUndeterminable => write!(f, "order undeterminable"),
            Violation::OrderTooSmall { q } => write!(f, "order {q} is below 2"),
            Violation::LineCount { expected, found } => {
                write!(f, "plane has {found} lines, expected q^2+q+1 = {expected}")
            }
            Violation::LineSize { line, size, expected } => {
                write!(f, "line size ≠ q+1: L{line} has {size} points, expected {expected}")
            }
            Violation::PointDegree { point, degree, expected } => {
                write!(f, "point degree ≠ q+1: P{point} lies on {degree} lines, expected {expected}")
            }
            Violation::PointPair { a, b, common_lines } => {
                write!(f, "points P{a} and P{b} share {common_lines} lines, expected 1")
            }
            Violation::LinePair { a, b, common_points } => {
                write!(f, "lines L{a} and L{b} share {common_points} points, expected 1")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub q: u32,
    pub n: usize,
    pub violations: Vec<Violation>,
    /// Set when more than [`MAX_VIOLATIONS`] violations were found.
    pub truncated: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum PlaneError {
    #[error("malformed plane document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("homogeneous triple is all zero")]
    ZeroTriple,
    #[error(transparent)]
    Id(#[from] ParseVertexError),
    #[error("expected a {expected:?} id, found {found}")]
    WrongKind { expected: VertexKind, found: VertexId },
    #[error("{id} is out of range for a plane with {n} lines")]
    OutOfRange { id: VertexId, n: usize },
    #[error("line L{0} appears more than once")]
    DuplicateLine(u32),
    #[error("point P{point} is listed twice on line L{line}")]
    RepeatedPoint { line: u32, point: u32 },
    #[error("point P{0} does not appear on any line")]
    MissingPoint(u32),
    #[error("document declares q = {declared} but the first line gives q = {inferred}")]
    OrderMismatch { declared: u32, inferred: u32 },
    #[error("axiom violation: {}", describe_violations(.0))]
    Axiom(Vec<Violation>),
}

/// Leads with the first pair sharing too much, if any, else the first violation.
fn describe_violations(vs: &[Violation]) -> String {
    let lead = vs
        .iter()
        .find(|v| {
            matches!(v, Violation::PointPair { common_lines: c, .. } | Violation::LinePair { common_points: c, .. } if *c > 1)
        })
        .or(vs.first());
    match lead {
        Some(v) if vs.len() > 1 => format!("{v} (and {} more)", vs.len() - 1),
        Some(v) => v.to_string(),
        None => "unknown".into(),
    }
}

/// A finite projective plane (or a candidate that may fail the axioms).
#[derive(Debug, Clone)]
pub struct IncidencePlane {
    q: u32,
    n: usize,
    point_coords: Option<Vec<[Elem; 3]>>,
    line_coords: Option<Vec<[Elem; 3]>>,
    line_rows: Vec<FixedBitSet>,
    point_rows: Vec<FixedBitSet>,
    line_points: Vec<Vec<u32>>,
    point_lines: Vec<Vec<u32>>,
}

/// Scales a homogeneous triple so its first nonzero coordinate is 1.
pub fn canonicalize(field: &Field, triple: [Elem; 3]) -> Result<[Elem; 3], PlaneError> {
    for &c in &triple {
        field.checked_add(c, 0)?;
    }
    let lead = *triple.iter().find(|&&c| c != 0).ok_or(PlaneError::ZeroTriple)?;
    let s = field.inv(lead)?;
    Ok(triple.map(|c| field.mul(c, s)))
}

/// Position of a canonical triple in lexicographic order.
fn triple_index(q: u32, t: [Elem; 3]) -> usize {
    let q = q as usize;
    if t[0] == 1 {
        1 + q + t[1] as usize * q + t[2] as usize
    } else if t[1] == 1 {
        1 + t[2] as usize
    } else {
        0
    }
}

fn canonical_triples(q: u32) -> Vec<[Elem; 3]> {
    let mut out = Vec::with_capacity((q * q + q + 1) as usize);
    out.push([0, 0, 1]);
    out.extend((0..q).map(|c| [0, 1, c]));
    for b in 0..q {
        out.extend((0..q).map(|c| [1, b, c]));
    }
    out
}

/// PG(2, q) over `field`: points and lines are canonical triples in
/// lexicographic order, and a point lies on a line iff their dot product
/// vanishes.
pub fn build_pg2(field: &Field) -> IncidencePlane {
    let q = field.order();
    let triples = canonical_triples(q);
    let line_points: Vec<Vec<u32>> = triples
        .iter()
        .map(|&[a, b, c]| {
            // Two distinct points spanning the line a x + b y + c z = 0.
            let (p1, p2) = match (a, b) {
                (0, 0) => ([1, 0, 0], [0, 1, 0]),
                (0, _) => ([1, 0, 0], [0, field.neg(c), 1]),
                _ => ([field.neg(b), 1, 0], [field.neg(c), 0, 1]),
            };
            let mut pts = Vec::with_capacity(q as usize + 1);
            pts.push(triple_index(q, canonicalize(field, p2).unwrap()) as u32);
            for t in field.elements() {
                let v = [0, 1, 2].map(|i| field.add(p1[i], field.mul(t, p2[i])));
                pts.push(triple_index(q, canonicalize(field, v).unwrap()) as u32);
            }
            pts.sort_unstable();
            pts
        })
        .collect();
    let mut plane = IncidencePlane::assemble(line_points);
    plane.q = q;
    plane.point_coords = Some(triples.clone());
    plane.line_coords = Some(triples);
    plane
}

/// Parses and validates a plane document.
pub fn load_plane(json: &str) -> Result<IncidencePlane, PlaneError> {
    let doc: PlaneDocument = serde_json::from_str(json)?;
    IncidencePlane::from_document(&doc)
}

/// Byte-slice variant of [`load_plane`]; input must be UTF-8 JSON.
pub fn load_plane_slice(bytes: &[u8]) -> Result<IncidencePlane, PlaneError> {
    let doc: PlaneDocument = serde_json::from_slice(bytes)?;
    IncidencePlane::from_document(&doc)
}

impl IncidencePlane {
    /// Builds the incidence structure from per-line point lists without
    /// checking the plane axioms. Every index must be below `lines.len()`.
    pub fn from_line_lists(lines: Vec<Vec<u32>>) -> Result<Self, PlaneError> {
        let n = lines.len();
        let mut lines = lines;
        for (l, pts) in lines.iter_mut().enumerate() {
            pts.sort_unstable();
            for w in pts.windows(2) {
                if w[0] == w[1] {
                    return Err(PlaneError::RepeatedPoint { line: l as u32, point: w[0] });
                }
            }
            if let Some(&p) = pts.last().filter(|&&p| p as usize >= n) {
                return Err(PlaneError::OutOfRange { id: VertexId::point(p), n });
            }
        }
        Ok(Self::assemble(lines))
    }

    fn assemble(line_points: Vec<Vec<u32>>) -> Self {
        let n = line_points.len();
        let mut point_lines = vec![Vec::new(); n];
        let mut line_rows = Vec::with_capacity(n);
        for (l, pts) in line_points.iter().enumerate() {
            let mut row = FixedBitSet::with_capacity(n);
            for &p in pts {
                row.insert(p as usize);
                point_lines[p as usize].push(l as u32);
            }
            line_rows.push(row);
        }
        let point_rows = point_lines
            .iter()
            .map(|ls| {
                let mut row = FixedBitSet::with_capacity(n);
                ls.iter().for_each(|&l| row.insert(l as usize));
                row
            })
            .collect();
        let q = line_points.first().map_or(0, |l| l.len().saturating_sub(1) as u32);
        IncidencePlane {
            q,
            n,
            point_coords: None,
            line_coords: None,
            line_rows,
            point_rows,
            line_points,
            point_lines,
        }
    }

    pub fn from_document(doc: &PlaneDocument) -> Result<Self, PlaneError> {
        let n = doc.lines.len();
        let mut lists: Vec<Option<Vec<u32>>> = vec![None; n];
        for line in &doc.lines {
            let id: VertexId = line.id.parse()?;
            if id.kind != VertexKind::Line {
                return Err(PlaneError::WrongKind { expected: VertexKind::Line, found: id });
            }
            let slot = lists
                .get_mut(id.index as usize)
                .ok_or(PlaneError::OutOfRange { id, n })?;
            if slot.is_some() {
                return Err(PlaneError::DuplicateLine(id.index));
            }
            let mut pts = Vec::with_capacity(line.points.len());
            for p in &line.points {
                let pid: VertexId = p.parse()?;
                if pid.kind != VertexKind::Point {
                    return Err(PlaneError::WrongKind { expected: VertexKind::Point, found: pid });
                }
                if pid.index as usize >= n {
                    return Err(PlaneError::OutOfRange { id: pid, n });
                }
                pts.push(pid.index);
            }
            *slot = Some(pts);
        }
        // Every line id in 0..n appeared exactly once, since there are n entries.
        let lists: Vec<Vec<u32>> = lists.into_iter().map(Option::unwrap_or_default).collect();
        let plane = Self::from_line_lists(lists)?;
        if let Some(p) = plane.point_lines.iter().position(Vec::is_empty) {
            return Err(PlaneError::MissingPoint(p as u32));
        }
        let report = validate_axioms(&plane);
        if !report.passed() {
            return Err(PlaneError::Axiom(report.violations));
        }
        if doc.q != plane.q {
            return Err(PlaneError::OrderMismatch { declared: doc.q, inferred: plane.q });
        }
        Ok(plane)
    }

    pub fn to_document(&self) -> PlaneDocument {
        PlaneDocument {
            q: self.q,
            lines: self
                .line_points
                .iter()
                .enumerate()
                .map(|(l, pts)| LineDocument {
                    id: VertexId::line(l as u32).to_string(),
                    points: pts.iter().map(|&p| VertexId::point(p).to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of points, which equals the number of lines.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    pub fn points_on(&self, line: u32) -> &[u32] {
        &self.line_points[line as usize]
    }

    pub fn lines_through(&self, point: u32) -> &[u32] {
        &self.point_lines[point as usize]
    }

    /// Points of `line` as a bit row over the point ids.
    pub fn line_row(&self, line: u32) -> &FixedBitSet {
        &self.line_rows[line as usize]
    }

    /// Lines through `point` as a bit row over the line ids.
    pub fn point_row(&self, point: u32) -> &FixedBitSet {
        &self.point_rows[point as usize]
    }

    pub fn line_rows(&self) -> &[FixedBitSet] {
        &self.line_rows
    }

    pub fn point_rows(&self) -> &[FixedBitSet] {
        &self.point_rows
    }

    pub fn line_lists(&self) -> &[Vec<u32>] {
        &self.line_points
    }

    pub fn point_lists(&self) -> &[Vec<u32>] {
        &self.point_lines
    }

    pub fn incident(&self, point: u32, line: u32) -> bool {
        self.line_rows[line as usize].contains(point as usize)
    }

    /// Neighbours of `v` in the incidence graph (ids of the opposite kind).
    pub fn neighbors(&self, v: VertexId) -> &[u32] {
        match v.kind {
            VertexKind::Point => self.lines_through(v.index),
            VertexKind::Line => self.points_on(v.index),
        }
    }

    /// The line through two distinct points.
    pub fn join(&self, a: u32, b: u32) -> Option<u32> {
        self.point_rows[a as usize]
            .intersection(&self.point_rows[b as usize])
            .next()
            .map(|l| l as u32)
    }

    /// The common point of two distinct lines.
    pub fn meet(&self, a: u32, b: u32) -> Option<u32> {
        self.line_rows[a as usize]
            .intersection(&self.line_rows[b as usize])
            .next()
            .map(|p| p as u32)
    }

    pub fn point_coords(&self, point: u32) -> Option<[Elem; 3]> {
        self.point_coords.as_ref().map(|c| c[point as usize])
    }

    pub fn line_coords(&self, line: u32) -> Option<[Elem; 3]> {
        self.line_coords.as_ref().map(|c| c[line as usize])
    }

    /// The dual plane: points and lines swap roles.
    pub fn dual(&self) -> Self {
        let mut d = Self::assemble(self.point_lines.clone());
        d.point_coords = self.line_coords.clone();
        d.line_coords = self.point_coords.clone();
        d
    }

    /// Copy of the plane with a single incidence bit flipped.
    pub fn with_incidence_toggled(&self, point: u32, line: u32) -> Self {
        let mut lists = self.line_points.clone();
        let pts = &mut lists[line as usize];
        match pts.binary_search(&point) {
            Ok(i) => {
                pts.remove(i);
            }
            Err(i) => pts.insert(i, point),
        }
        let mut p = Self::assemble(lists);
        p.q = self.q;
        p
    }
}

/// Checks the projective-plane axioms, inferring `q` from the first line.
pub fn validate_axioms(plane: &IncidencePlane) -> AxiomReport {
    let n = plane.n;
    let mut report = AxiomReport { q: plane.q, n, violations: Vec::new(), truncated: false };
    let push = |report: &mut AxiomReport, v: Violation| {
        if report.violations.len() < MAX_VIOLATIONS {
            report.violations.push(v);
        } else {
            report.truncated = true;
        }
    };
    if n == 0 || plane.line_points[0].is_empty() {
        push(&mut report, Violation::OrderUndeterminable);
        return report;
    }
    let q = plane.q as usize;
    if q < 2 {
        push(&mut report, Violation::OrderTooSmall { q: plane.q });
    }
    let expected_n = q * q + q + 1;
    if n != expected_n {
        push(&mut report, Violation::LineCount { expected: expected_n, found: n });
    }
    for (l, pts) in plane.line_points.iter().enumerate() {
        if pts.len() != q + 1 {
            push(&mut report, Violation::LineSize { line: l as u32, size: pts.len(), expected: q + 1 });
        }
    }
    for (p, ls) in plane.point_lines.iter().enumerate() {
        if ls.len() != q + 1 {
            push(&mut report, Violation::PointDegree { point: p as u32, degree: ls.len(), expected: q + 1 });
        }
    }
    // Pair coverage, counted from each vertex through its neighbourhood.
    let mut counts = vec![0usize; n];
    for (side_lists, other_lists, is_points) in [
        (&plane.point_lines, &plane.line_points, true),
        (&plane.line_points, &plane.point_lines, false),
    ] {
        for a in 0..n {
            for &mid in &side_lists[a] {
                for &b in &other_lists[mid as usize] {
                    counts[b as usize] += 1;
                }
            }
            for (b, c) in counts.iter_mut().enumerate() {
                if b > a && *c != 1 {
                    let (a, b) = (a as u32, b as u32);
                    let v = if is_points {
                        Violation::PointPair { a, b, common_lines: *c }
                    } else {
                        Violation::LinePair { a, b, common_points: *c }
                    };
                    push(&mut report, v);
                }
                *c = 0;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(q: u64) -> IncidencePlane {
        build_pg2(&Field::with_order(q).unwrap())
    }

    #[test]
    fn canonical_forms() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(canonicalize(&f5, [0, 2, 4]).unwrap(), [0, 1, 2]);
        assert_eq!(canonicalize(&f5, [0, 0, 3]).unwrap(), [0, 0, 1]);
        assert_eq!(canonicalize(&f5, [1, 3, 4]).unwrap(), [1, 3, 4]);
        assert!(matches!(canonicalize(&f5, [0, 0, 0]), Err(PlaneError::ZeroTriple)));
        assert!(canonicalize(&f5, [0, 7, 0]).is_err());
        let f9 = Field::new(3, 2).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    if let Ok(t) = canonicalize(&f9, [a, b, c]) {
                        assert_eq!(canonicalize(&f9, t).unwrap(), t);
                    }
                }
            }
        }
    }

    #[test]
    fn counts_for_small_orders() {
        for (q, n) in [(2u64, 7usize), (4, 21)] {
            let p = pg(q);
            assert_eq!(p.n(), n);
            assert!(p.line_lists().iter().all(|l| l.len() == q as usize + 1));
        }
    }

    #[test]
    fn incidence_matches_dot_product() {
        for q in [2u64, 3, 4, 5, 8, 9] {
            let f = Field::with_order(q).unwrap();
            let p = build_pg2(&f);
            let dot = |x: [u32; 3], y: [u32; 3]| {
                (0..3).fold(0, |acc, i| f.add(acc, f.mul(x[i], y[i])))
            };
            for pt in 0..p.n() as u32 {
                for ln in 0..p.n() as u32 {
                    let d = dot(p.point_coords(pt).unwrap(), p.line_coords(ln).unwrap());
                    assert_eq!(p.incident(pt, ln), d == 0, "q={q} P{pt} L{ln}");
                }
            }
        }
        let p3 = pg(3);
        let x = triple_index(3, [1, 0, 0]) as u32;
        let z = triple_index(3, [0, 0, 1]) as u32;
        assert!(p3.incident(x, z));
    }

    #[test]
    fn ids_are_sorted_triples() {
        let p = pg(4);
        let coords: Vec<[u32; 3]> = (0..p.n() as u32).map(|i| p.point_coords(i).unwrap()).collect();
        assert!(coords.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn vertex_id_parsing() {
        assert_eq!("P12".parse::<VertexId>().unwrap(), VertexId::point(12));
        assert_eq!("L0".parse::<VertexId>().unwrap(), VertexId::line(0));
        for bad in ["", "P", "X1", "p1", "P-1", "P1a", "L 2", "P99999999999"] {
            assert!(bad.parse::<VertexId>().is_err(), "{bad}");
        }
        assert_eq!(VertexId::line(5).to_string(), "L5");
        assert_eq!(VertexId::from_global(9, 7), VertexId::line(2));
        assert_eq!(VertexId::line(2).global(7), 9);
    }

    #[test]
    fn axioms_hold_for_prime_powers_up_to_16() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let p = pg(q);
            let r = validate_axioms(&p);
            assert!(r.passed(), "q={q}: {:?}", r.violations);
            assert!(validate_axioms(&p.dual()).passed());
        }
    }

    #[test]
    fn pair_coverage_brute_force() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let p = pg(q);
            for a in 0..p.n() as u32 {
                for b in a + 1..p.n() as u32 {
                    let common = (0..p.n() as u32).filter(|&l| p.incident(a, l) && p.incident(b, l)).count();
                    assert_eq!(common, 1);
                    assert!(p.incident(a, p.join(a, b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn flipped_bit_is_detected_with_both_kinds_of_violation() {
        let p = pg(3);
        let pt = p.points_on(4)[1];
        let m = p.with_incidence_toggled(pt, 4);
        let r = validate_axioms(&m);
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| matches!(v, Violation::LineSize { line: 4, .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::PointPair { .. })));
        // Re-check by brute force: the removed point shares no line with the
        // other points of line 4.
        for &other in m.points_on(4) {
            let common = (0..m.n() as u32).filter(|&l| m.incident(pt, l) && m.incident(other, l)).count();
            assert_eq!(common, 0);
        }
    }

    #[test]
    fn empty_plane_is_undeterminable() {
        let p = IncidencePlane::from_line_lists(Vec::new()).unwrap();
        let r = validate_axioms(&p);
        assert_eq!(r.violations, vec![Violation::OrderUndeterminable]);
        assert_eq!(Violation::OrderUndeterminable.to_string(), "order undeterminable");
    }

    #[test]
    fn document_round_trip() {
        let p = pg(2);
        let json = serde_json::to_string(&p.to_document()).unwrap();
        let back = load_plane(&json).unwrap();
        assert_eq!(back.q(), 2);
        assert_eq!(back.line_lists(), p.line_lists());
        assert!(back.point_coords(0).is_none());
    }

    #[test]
    fn short_line_is_rejected() {
        let mut doc = pg(2).to_document();
        doc.lines[3].points.pop();
        let err = IncidencePlane::from_document(&doc).unwrap_err();
        assert!(err.to_string().contains("line size ≠ q+1"), "{err}");
    }

    #[test]
    fn lines_sharing_two_points_are_named() {
        let p = pg(2);
        let mut lists = p.line_lists().to_vec();
        // Make line 1 equal to line 0: they then share three points.
        lists[1] = lists[0].clone();
        let doc = IncidencePlane::from_line_lists(lists).unwrap().to_document();
        let err = IncidencePlane::from_document(&doc).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("share 2 lines"), "{msg}");
        match err {
            PlaneError::Axiom(vs) => assert!(vs.contains(&Violation::LinePair { a: 0, b: 1, common_points: 3 })),
            other => panic!("unexpected {other:?}"),
        }
        let r = validate_axioms(&IncidencePlane::from_document(&pg(2).to_document()).unwrap());
        assert!(r.passed());
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(load_plane("{"), Err(PlaneError::Json(_))));
        assert!(matches!(load_plane(r#"{"q":1,"lines":[{"id":"P0","points":[]}]}"#), Err(PlaneError::WrongKind { .. })));
        assert!(matches!(
            load_plane(r#"{"q":1,"lines":[{"id":"L0","points":["P3"]}]}"#),
            Err(PlaneError::OutOfRange { .. })
        ));
        assert!(matches!(
            load_plane(r#"{"q":1,"lines":[{"id":"L0","points":["P0","P0"]}]}"#),
            Err(PlaneError::RepeatedPoint { .. })
        ));
        assert!(matches!(
            load_plane(r#"{"q":0,"lines":[{"id":"L0","points":["P0"]},{"id":"L0","points":[]}]}"#),
            Err(PlaneError::DuplicateLine(0))
        ));
        let mut doc = pg(2).to_document();
        doc.q = 3;
        assert!(matches!(IncidencePlane::from_document(&doc), Err(PlaneError::OrderMismatch { .. })));
    }
}
