//! Searching-set classes: greedy selection of common lines and common points
//! driven by searching families over the majors and the conflict graph.

use std::fmt;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use super::searching::{searching_family, SearchingError};
use super::{ConflictGraph, Frame};
use crate::metric::VertexSet;
use crate::plane::{IncidencePlane, VertexId, VertexKind};

/// One searching-set class. `t ⊆` major points, `t_star ⊆` major lines,
/// `q` and `r` are the conflict-graph searching sets on points and lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H2Class {
    pub t: Vec<u32>,
    pub t_star: Vec<u32>,
    pub q: Vec<u32>,
    pub r: Vec<u32>,
    pub lines: Vec<u32>,
    pub points: Vec<u32>,
}

impl H2Class {
    pub fn len(&self) -> usize {
        self.lines.len() + self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_vertices(
            n,
            self.points
                .iter()
                .map(|&p| VertexId::point(p))
                .chain(self.lines.iter().map(|&l| VertexId::line(l))),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Requirement {
    /// Every member of the conflict searching set is covered exactly once.
    SearchCover,
    /// Every member of the major searching set is covered exactly once.
    MajorCover,
}

/// A greedy step that found no free candidate.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub struct GreedyFailure {
    /// 1-based index of the searching-set class.
    pub class: usize,
    /// Kind of the vertices being chosen.
    pub chosen: VertexKind,
    pub requirement: Requirement,
    /// The vertex left uncovered.
    pub vertex: VertexId,
}

impl GreedyFailure {
    pub fn requirement_text(&self) -> &'static str {
        match (self.chosen, self.requirement) {
            (VertexKind::Line, Requirement::SearchCover) => "every point of Q(H) lies on exactly one chosen line",
            (VertexKind::Line, Requirement::MajorCover) => "every point of T(H) lies on exactly one chosen line",
            (VertexKind::Point, Requirement::SearchCover) => "every line of R(H) carries exactly one chosen point",
            (VertexKind::Point, Requirement::MajorCover) => "every line of T*(H) carries exactly one chosen point",
        }
    }
}

impl fmt::Display for GreedyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.chosen {
            VertexKind::Line => "line",
            VertexKind::Point => "point",
        };
        write!(
            f,
            "class S{}: no free {what} for {}; violated requirement: {}",
            self.class,
            self.vertex,
            self.requirement_text()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum H2Error {
    #[error(transparent)]
    Greedy(GreedyFailure),
    #[error("searching sets on {domain}: {source}")]
    Searching { domain: &'static str, source: SearchingError },
    #[error("class S{0} would be empty")]
    EmptyClass(usize),
}

/// One side of the selection. Chosen vertices have kind `chosen`, the
/// vertices they must cover have the other kind.
struct Orientation<'a> {
    chosen: VertexKind,
    /// Chosen vertex → covered vertices incident with it.
    rows: &'a [FixedBitSet],
    /// Covered vertex → chosen vertices incident with it, ascending.
    through: &'a [Vec<u32>],
    /// The support vertex of the chosen kind.
    anchor: u32,
    /// The support vertex of the covered kind.
    covered_support: u32,
}

impl<'a> Orientation<'a> {
    fn lines(plane: &'a IncidencePlane, frame: &Frame) -> Self {
        Orientation {
            chosen: VertexKind::Line,
            rows: plane.line_rows(),
            through: plane.point_lists(),
            anchor: frame.support_line,
            covered_support: frame.support_point,
        }
    }

    fn points(plane: &'a IncidencePlane, frame: &Frame) -> Self {
        Orientation {
            chosen: VertexKind::Point,
            rows: plane.point_rows(),
            through: plane.line_lists(),
            anchor: frame.support_point,
            covered_support: frame.support_line,
        }
    }

    fn covered_vertex(&self, i: u32) -> VertexId {
        VertexId { kind: self.chosen.opposite(), index: i }
    }

    /// The covered vertex incident with both `c` and the anchor.
    fn meet_anchor(&self, c: u32) -> Option<u32> {
        self.rows[c as usize].intersection(&self.rows[self.anchor as usize]).next().map(|x| x as u32)
    }
}

fn mask(n: usize, items: &[u32]) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(n);
    items.iter().for_each(|&x| m.insert(x as usize));
    m
}

/// Inputs to one greedy cover, in the chosen orientation.
struct Cover<'a> {
    /// Majors of the covered kind to cover exactly once.
    targets: &'a [u32],
    /// Conflict vertices of the covered kind to cover exactly once.
    search: &'a [u32],
    /// Conflict vertices of the covered kind that no chosen vertex may touch.
    search_complement: &'a [u32],
    /// Vertices of the chosen kind that may not be chosen.
    forbidden: &'a [u32],
    /// Vertices of the chosen kind already in some class.
    used: &'a FixedBitSet,
}

fn select_cover(o: &Orientation, c: &Cover, class: usize) -> Result<Vec<u32>, GreedyFailure> {
    let n = o.rows.len();
    let targets = mask(n, c.targets);
    let search = mask(n, c.search);
    let avoid = mask(n, c.search_complement);
    let forbidden = mask(n, c.forbidden);
    let free = |x: u32| {
        let row = &o.rows[x as usize];
        x != o.anchor
            && !row.contains(o.covered_support as usize)
            && !c.used.contains(x as usize)
            && !forbidden.contains(x as usize)
            && row.is_disjoint(&avoid)
    };
    let mut covered = FixedBitSet::with_capacity(n);
    let mut taken = FixedBitSet::with_capacity(n);
    let mut chosen = Vec::with_capacity(c.targets.len());
    let fail = |requirement, v: u32| GreedyFailure {
        class,
        chosen: o.chosen,
        requirement,
        vertex: o.covered_vertex(v),
    };

    let mut order = c.search.to_vec();
    order.sort_unstable();
    for &u in &order {
        let pick = o.through[u as usize].iter().copied().find(|&x| {
            if taken.contains(x as usize) || !free(x) {
                return false;
            }
            let Some(t) = o.meet_anchor(x) else { return false };
            if !targets.contains(t as usize) || covered.contains(t as usize) {
                return false;
            }
            // u is the only search member on x.
            o.rows[x as usize].intersection(&search).nth(1).is_none()
        });
        let x = pick.ok_or_else(|| fail(Requirement::SearchCover, u))?;
        covered.insert(o.meet_anchor(x).unwrap() as usize);
        taken.insert(x as usize);
        chosen.push(x);
    }

    let mut order = c.targets.to_vec();
    order.sort_unstable();
    for &t in &order {
        if covered.contains(t as usize) {
            continue;
        }
        let pick = o.through[t as usize]
            .iter()
            .copied()
            .find(|&x| !taken.contains(x as usize) && free(x) && o.rows[x as usize].is_disjoint(&search));
        let x = pick.ok_or_else(|| fail(Requirement::MajorCover, t))?;
        covered.insert(t as usize);
        taken.insert(x as usize);
        chosen.push(x);
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Common lines for one class: each point of `t` (major points) and of `q`
/// lies on exactly one chosen line, no other major point and no point of
/// `q_complement` lies on any, and no chosen line is in `r_complement` or
/// `used`. `class` is the 1-based index used in failure reports.
#[allow(clippy::too_many_arguments)]
pub fn select_class_lines(
    plane: &IncidencePlane,
    frame: &Frame,
    t: &[u32],
    q: &[u32],
    q_complement: &[u32],
    r_complement: &[u32],
    used: &VertexSet,
    class: usize,
) -> Result<Vec<u32>, GreedyFailure> {
    let cover = Cover {
        targets: t,
        search: q,
        search_complement: q_complement,
        forbidden: r_complement,
        used: used.mask(VertexKind::Line),
    };
    select_cover(&Orientation::lines(plane, frame), &cover, class)
}

/// Dual of [`select_class_lines`]: common points covering the major lines
/// in `t_star` and the lines in `r`, off every line of `r_complement`, and
/// outside `q_complement` and `used`.
#[allow(clippy::too_many_arguments)]
pub fn select_class_points(
    plane: &IncidencePlane,
    frame: &Frame,
    t_star: &[u32],
    r: &[u32],
    r_complement: &[u32],
    q_complement: &[u32],
    used: &VertexSet,
    class: usize,
) -> Result<Vec<u32>, GreedyFailure> {
    let cover = Cover {
        targets: t_star,
        search: r,
        search_complement: r_complement,
        forbidden: q_complement,
        used: used.mask(VertexKind::Point),
    };
    select_cover(&Orientation::points(plane, frame), &cover, class)
}

fn complement(domain: &[u32], set: &[u32], excluded: u32) -> Vec<u32> {
    domain.iter().copied().filter(|x| *x != excluded && !set.contains(x)).collect()
}

/// `l` searching-set classes, disjoint from `used` and from each other.
/// Rank order inside each searching family is drawn from `rng`.
pub fn build_h2<R: Rng + ?Sized>(
    plane: &IncidencePlane,
    frame: &Frame,
    conflict: &ConflictGraph,
    l: usize,
    used: &VertexSet,
    rng: &mut R,
) -> Result<Vec<H2Class>, H2Error> {
    let family = |domain: &[u32], excluded: &[u32], name: &'static str, rng: &mut R| {
        let mut d = domain.to_vec();
        d.shuffle(rng);
        searching_family(&d, l, excluded).map_err(|source| H2Error::Searching { domain: name, source })
    };
    let x_points = conflict.points();
    let x_lines = conflict.lines();
    let ts = family(&frame.major_points, &[], "major points", rng)?;
    let t_stars = family(&frame.major_lines, &[], "major lines", rng)?;
    let qs = family(&x_points, &[frame.support_point], "conflict points", rng)?;
    let rs = family(&x_lines, &[frame.support_line], "conflict lines", rng)?;

    let n = plane.n();
    let mut used = used.clone();
    let mut out = Vec::with_capacity(l);
    for j in 0..l {
        let q_c = complement(&x_points, &qs[j], frame.support_point);
        let r_c = complement(&x_lines, &rs[j], frame.support_line);
        let lines = select_class_lines(plane, frame, &ts[j], &qs[j], &q_c, &r_c, &used, j + 1)
            .map_err(H2Error::Greedy)?;
        let points = select_class_points(plane, frame, &t_stars[j], &rs[j], &r_c, &q_c, &used, j + 1)
            .map_err(H2Error::Greedy)?;
        let class = H2Class {
            t: sorted(&ts[j]),
            t_star: sorted(&t_stars[j]),
            q: sorted(&qs[j]),
            r: sorted(&rs[j]),
            lines,
            points,
        };
        if class.is_empty() {
            return Err(H2Error::EmptyClass(j + 1));
        }
        used.union_with(&class.to_vertex_set(n));
        out.push(class);
    }
    Ok(out)
}

fn sorted(v: &[u32]) -> Vec<u32> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}
