//! Exact subsets of the character sphere.
//!
//! Circles (dimension 1) are described by counterclockwise arcs in the plane of
//! the first and second generator coordinates; spheres of any dimension can be
//! described by the union of great subspheres S(G, U) forming the complement.

use std::cmp::Ordering;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::Direction;
use crate::error::{Error, Result};
use crate::linalg::SubspaceQ;

/// Counterclockwise arc from `from` to `to`; `from == to` means the full turn.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub from: Direction,
    pub to: Direction,
    pub from_closed: bool,
    pub to_closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Empty,
    All,
    PointSet(Vec<Direction>),
    ArcUnion {
        arcs: Vec<Arc>,
        points: Vec<Direction>,
    },
    /// The complement of the region is the union of the subspheres S(G, U_j)
    /// and of the listed points.
    ComplementOfSubspheres {
        subspheres: Vec<SubspaceQ>,
        points: Vec<Direction>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereRegion {
    dim: i64,
    body: Body,
}

// ---------------------------------------------------------------- circle geometry

fn half(x: i128, y: i128) -> u8 {
    if y > 0 || (y == 0 && x > 0) {
        0
    } else {
        1
    }
}

fn cross(a: &[i64], b: &[i64]) -> i128 {
    a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
}

fn dot2(a: &[i64], b: &[i64]) -> i128 {
    a[0] as i128 * b[0] as i128 + a[1] as i128 * b[1] as i128
}

fn cmp_angle_raw(ax: i128, ay: i128, bx: i128, by: i128) -> Ordering {
    let (ha, hb) = (half(ax, ay), half(bx, by));
    if ha != hb {
        return ha.cmp(&hb);
    }
    // same half plane: a before b iff cross(a, b) > 0
    let c = ax * by - ay * bx;
    0.cmp(&c)
}

/// Order by angle in [0, 2pi) measured from (1, 0).
pub fn angle_cmp(a: &Direction, b: &Direction) -> Ordering {
    let (a, b) = (a.coords(), b.coords());
    cmp_angle_raw(a[0] as i128, a[1] as i128, b[0] as i128, b[1] as i128)
}

/// Order by angle measured counterclockwise from `base`.
fn rel_angle_cmp(base: &Direction, a: &Direction, b: &Direction) -> Ordering {
    let bs = base.coords();
    let (a, b) = (a.coords(), b.coords());
    cmp_angle_raw(dot2(bs, a), cross(bs, a), dot2(bs, b), cross(bs, b))
}

fn dir2(x: i128, y: i128) -> Direction {
    let g = {
        let (mut a, mut b) = (x.abs(), y.abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    Direction::new(vec![(x / g) as i64, (y / g) as i64]).expect("nonzero direction")
}

/// A rational direction strictly inside the counterclockwise open arc from `a` to `b`.
pub fn interior_direction(a: &Direction, b: &Direction) -> Direction {
    let (ac, bc) = (a.coords(), b.coords());
    if a == b {
        return a.antipode();
    }
    let c = cross(ac, bc);
    let (sx, sy) = (ac[0] as i128 + bc[0] as i128, ac[1] as i128 + bc[1] as i128);
    match c.cmp(&0) {
        Ordering::Greater => dir2(sx, sy),
        Ordering::Less => dir2(-sx, -sy),
        Ordering::Equal => dir2(-(ac[1] as i128), ac[0] as i128),
    }
}

/// The two directions orthogonal to a nonzero plane vector.
pub fn normals(v: (i128, i128)) -> [Direction; 2] {
    let d = dir2(-v.1, v.0);
    [d.clone(), d.antipode()]
}

fn arc_contains(arc: &Arc, d: &Direction) -> bool {
    if *d == arc.from {
        return arc.from_closed || (arc.from == arc.to && arc.to_closed);
    }
    if *d == arc.to {
        return arc.to_closed;
    }
    if arc.from == arc.to {
        return true;
    }
    rel_angle_cmp(&arc.from, d, &arc.to) == Ordering::Less
}

/// Breakpoint description of a subset of the circle: labelled points in angular
/// order and the labels of the open arcs between consecutive points.
#[derive(Clone, Debug, PartialEq, Eq)]
struct CircleLabel {
    points: Vec<Direction>,
    point_in: Vec<bool>,
    /// `arc_in[i]` labels the open arc from `points[i]` to `points[i + 1]` (cyclically).
    arc_in: Vec<bool>,
    /// Label of the whole circle when there are no points.
    all: bool,
}

impl CircleLabel {
    fn from_oracle(mut breaks: Vec<Direction>, f: impl Fn(&Direction) -> bool) -> Self {
        breaks.sort_by(angle_cmp);
        breaks.dedup();
        if breaks.is_empty() {
            let probe = Direction::new(vec![1, 0]).unwrap();
            return CircleLabel {
                points: vec![],
                point_in: vec![],
                arc_in: vec![],
                all: f(&probe),
            };
        }
        let k = breaks.len();
        let point_in = breaks.iter().map(&f).collect();
        let arc_in = (0..k)
            .map(|i| f(&interior_direction(&breaks[i], &breaks[(i + 1) % k])))
            .collect();
        CircleLabel {
            points: breaks,
            point_in,
            arc_in,
            all: false,
        }
    }

    fn simplify(&self) -> CircleLabel {
        let k = self.points.len();
        if k == 0 {
            return self.clone();
        }
        let keep: Vec<usize> = (0..k)
            .filter(|&i| {
                let before = self.arc_in[(i + k - 1) % k];
                !(before == self.arc_in[i] && self.point_in[i] == before)
            })
            .collect();
        if keep.is_empty() {
            return CircleLabel {
                points: vec![],
                point_in: vec![],
                arc_in: vec![],
                all: self.arc_in[0],
            };
        }
        CircleLabel {
            points: keep.iter().map(|&i| self.points[i].clone()).collect(),
            point_in: keep.iter().map(|&i| self.point_in[i]).collect(),
            arc_in: keep.iter().map(|&i| self.arc_in[i]).collect(),
            all: false,
        }
    }

    fn to_body(&self) -> Body {
        let s = self.simplify();
        let k = s.points.len();
        if k == 0 {
            return if s.all { Body::All } else { Body::Empty };
        }
        let mut arcs = Vec::new();
        let mut points = Vec::new();
        for i in 0..k {
            let j = (i + 1) % k;
            if s.arc_in[i] {
                arcs.push(Arc {
                    from: s.points[i].clone(),
                    to: s.points[j].clone(),
                    from_closed: s.point_in[i],
                    to_closed: s.point_in[j],
                });
            } else if s.point_in[i] && !s.arc_in[(i + k - 1) % k] {
                points.push(s.points[i].clone());
            }
        }
        if arcs.is_empty() {
            Body::PointSet(points)
        } else {
            Body::ArcUnion { arcs, points }
        }
    }
}

// ---------------------------------------------------------------- region

fn sorted_points(mut v: Vec<Direction>) -> Vec<Direction> {
    v.sort();
    v.dedup();
    v
}

impl SphereRegion {
    /// Number of coordinates of a direction, i.e. the sphere dimension plus one.
    pub fn ambient(&self) -> usize {
        (self.dim + 1) as usize
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn empty(dim: i64) -> Self {
        SphereRegion {
            dim,
            body: Body::Empty,
        }
    }

    pub fn all(dim: i64) -> Self {
        if dim < 0 {
            return SphereRegion::empty(dim);
        }
        SphereRegion {
            dim,
            body: Body::All,
        }
    }

    pub fn point_set(dim: i64, points: Vec<Direction>) -> Result<Self> {
        let r = SphereRegion {
            dim,
            body: Body::PointSet(points),
        };
        r.check_coords()?;
        Ok(r.normalized())
    }

    pub fn arc_union(arcs: Vec<Arc>, points: Vec<Direction>) -> Result<Self> {
        let r = SphereRegion {
            dim: 1,
            body: Body::ArcUnion { arcs, points },
        };
        r.check_coords()?;
        Ok(r.normalized())
    }

    /// The region whose complement is the union of the S(G, U_j) and the given points.
    pub fn complement_of_subspheres(
        n: usize,
        subspheres: Vec<SubspaceQ>,
        points: Vec<Direction>,
    ) -> Result<Self> {
        let r = SphereRegion {
            dim: n as i64 - 1,
            body: Body::ComplementOfSubspheres { subspheres, points },
        };
        r.check_coords()?;
        Ok(r.normalized())
    }

    fn check_coords(&self) -> Result<()> {
        let n = self.ambient();
        let bad = |got| {
            Err(Error::Dimension {
                module: "regions",
                expected: n,
                got,
            })
        };
        let check_pts = |pts: &[Direction]| -> Result<()> {
            for p in pts {
                if p.dim() != n {
                    return bad(p.dim());
                }
            }
            Ok(())
        };
        match &self.body {
            Body::Empty | Body::All => Ok(()),
            Body::PointSet(p) => check_pts(p),
            Body::ArcUnion { arcs, points } => {
                if self.dim != 1 {
                    return Err(Error::input("regions", "arc unions live on circles only"));
                }
                check_pts(points)?;
                for a in arcs {
                    check_pts(&[a.from.clone(), a.to.clone()])?;
                }
                Ok(())
            }
            Body::ComplementOfSubspheres { subspheres, points } => {
                check_pts(points)?;
                for u in subspheres {
                    if u.ambient_dim() != n {
                        return bad(u.ambient_dim());
                    }
                }
                Ok(())
            }
        }
    }

    pub fn contains(&self, d: &Direction) -> Result<bool> {
        if self.dim < 0 || d.dim() != self.ambient() {
            return Err(Error::Dimension {
                module: "regions",
                expected: self.ambient(),
                got: d.dim(),
            });
        }
        Ok(self.contains_unchecked(d))
    }

    fn contains_unchecked(&self, d: &Direction) -> bool {
        match &self.body {
            Body::Empty => false,
            Body::All => true,
            Body::PointSet(p) => p.contains(d),
            Body::ArcUnion { arcs, points } => {
                points.contains(d) || arcs.iter().any(|a| arc_contains(a, d))
            }
            Body::ComplementOfSubspheres { subspheres, points } => {
                !points.contains(d) && !subspheres.iter().any(|u| u.annihilated_by(d.coords()))
            }
        }
    }

    /// Directions where membership may change along the circle.
    fn circle_breaks(&self) -> Vec<Direction> {
        match &self.body {
            Body::Empty | Body::All => vec![],
            Body::PointSet(p) => p.clone(),
            Body::ArcUnion { arcs, points } => {
                let mut v = points.clone();
                for a in arcs {
                    v.push(a.from.clone());
                    v.push(a.to.clone());
                }
                v
            }
            Body::ComplementOfSubspheres { subspheres, points } => {
                let mut v = points.clone();
                for u in subspheres {
                    if u.dim() == 1 {
                        let b = &u.basis()[0];
                        v.extend(normals((b[0] as i128, b[1] as i128)));
                    }
                }
                v
            }
        }
    }

    fn circle_label(&self) -> CircleLabel {
        CircleLabel::from_oracle(self.circle_breaks(), |d| self.contains_unchecked(d))
    }

    fn from_label(label: &CircleLabel) -> Self {
        SphereRegion {
            dim: 1,
            body: label.to_body(),
        }
    }

    fn zero_sphere_points() -> [Direction; 2] {
        [
            Direction::new(vec![1]).unwrap(),
            Direction::new(vec![-1]).unwrap(),
        ]
    }

    /// Canonical form within the variant family.
    pub fn normalized(&self) -> SphereRegion {
        if self.dim < 0 {
            return SphereRegion::empty(self.dim);
        }
        match &self.body {
            Body::Empty | Body::All => self.clone(),
            Body::ComplementOfSubspheres { subspheres, points } => {
                if subspheres.iter().any(|u| u.dim() == 0) {
                    return SphereRegion::empty(self.dim);
                }
                let mut subs: Vec<SubspaceQ> = subspheres
                    .iter()
                    .filter(|u| !u.is_full())
                    .cloned()
                    .collect();
                subs.sort();
                subs.dedup();
                let minimal: Vec<SubspaceQ> = subs
                    .iter()
                    .filter(|u| !subs.iter().any(|w| w != *u && u.contains_subspace(w)))
                    .cloned()
                    .collect();
                let pts: Vec<Direction> = sorted_points(
                    points
                        .iter()
                        .filter(|p| !minimal.iter().any(|u| u.annihilated_by(p.coords())))
                        .cloned()
                        .collect(),
                );
                if minimal.is_empty() && pts.is_empty() {
                    return SphereRegion::all(self.dim);
                }
                SphereRegion {
                    dim: self.dim,
                    body: Body::ComplementOfSubspheres {
                        subspheres: minimal,
                        points: pts,
                    },
                }
            }
            Body::PointSet(p) => {
                if self.dim == 1 {
                    return Self::from_label(&self.circle_label());
                }
                let pts = sorted_points(p.clone());
                if pts.is_empty() {
                    return SphereRegion::empty(self.dim);
                }
                if self.dim == 0 && pts.len() == 2 {
                    return SphereRegion::all(0);
                }
                SphereRegion {
                    dim: self.dim,
                    body: Body::PointSet(pts),
                }
            }
            Body::ArcUnion { .. } => Self::from_label(&self.circle_label()),
        }
    }

    /// Rewrites a region of a sphere of dimension at most one in its canonical
    /// point or arc form.
    pub fn to_canonical_low_dim(&self) -> Option<SphereRegion> {
        match self.dim {
            d if d < 0 => Some(SphereRegion::empty(d)),
            0 => {
                let pts: Vec<Direction> = Self::zero_sphere_points()
                    .into_iter()
                    .filter(|p| self.contains_unchecked(p))
                    .collect();
                Some(
                    SphereRegion {
                        dim: 0,
                        body: Body::PointSet(pts),
                    }
                    .normalized(),
                )
            }
            1 => Some(Self::from_label(&self.circle_label())),
            _ => None,
        }
    }

    /// Set equality. Exact for every pair of regions in dimension at most one and
    /// for regions of the same family in higher dimension.
    pub fn same_set(&self, other: &SphereRegion) -> bool {
        if self.dim != other.dim {
            return false;
        }
        match (self.to_canonical_low_dim(), other.to_canonical_low_dim()) {
            (Some(a), Some(b)) => a == b,
            _ => self.normalized() == other.normalized(),
        }
    }

    fn check_same_dim(&self, other: &SphereRegion) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                module: "regions",
                expected: self.ambient(),
                got: other.ambient(),
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &SphereRegion) -> Result<SphereRegion> {
        self.check_same_dim(other)?;
        let dim = self.dim;
        if dim < 0 {
            return Ok(SphereRegion::empty(dim));
        }
        match (&self.body, &other.body) {
            (Body::All, _) | (_, Body::All) => return Ok(SphereRegion::all(dim)),
            (Body::Empty, _) => return Ok(other.normalized()),
            (_, Body::Empty) => return Ok(self.normalized()),
            _ => {}
        }
        if dim <= 1 {
            return Ok(self.combine_low_dim(other, |a, b| a || b));
        }
        match (&self.body, &other.body) {
            (Body::PointSet(a), Body::PointSet(b)) => {
                let mut v = a.clone();
                v.extend(b.iter().cloned());
                SphereRegion::point_set(dim, v)
            }
            (
                Body::ComplementOfSubspheres {
                    subspheres: s1,
                    points: p1,
                },
                Body::ComplementOfSubspheres {
                    subspheres: s2,
                    points: p2,
                },
            ) => {
                let mut subs = Vec::new();
                for u in s1 {
                    for w in s2 {
                        subs.push(u.sum(w)?);
                    }
                }
                let mut pts: Vec<Direction> = p1
                    .iter()
                    .filter(|p| !other.contains_unchecked(p))
                    .cloned()
                    .collect();
                pts.extend(p2.iter().filter(|p| !self.contains_unchecked(p)).cloned());
                SphereRegion::complement_of_subspheres(self.ambient(), subs, pts)
            }
            _ => Err(Error::Unsupported(
                "union of a point set and a subsphere-complement region above dimension 1".into(),
            )),
        }
    }

    pub fn intersection(&self, other: &SphereRegion) -> Result<SphereRegion> {
        self.check_same_dim(other)?;
        let dim = self.dim;
        if dim < 0 {
            return Ok(SphereRegion::empty(dim));
        }
        match (&self.body, &other.body) {
            (Body::Empty, _) | (_, Body::Empty) => return Ok(SphereRegion::empty(dim)),
            (Body::All, _) => return Ok(other.normalized()),
            (_, Body::All) => return Ok(self.normalized()),
            _ => {}
        }
        if dim <= 1 {
            return Ok(self.combine_low_dim(other, |a, b| a && b));
        }
        match (&self.body, &other.body) {
            (Body::PointSet(a), _) => SphereRegion::point_set(
                dim,
                a.iter()
                    .filter(|p| other.contains_unchecked(p))
                    .cloned()
                    .collect(),
            ),
            (_, Body::PointSet(b)) => SphereRegion::point_set(
                dim,
                b.iter()
                    .filter(|p| self.contains_unchecked(p))
                    .cloned()
                    .collect(),
            ),
            (
                Body::ComplementOfSubspheres {
                    subspheres: s1,
                    points: p1,
                },
                Body::ComplementOfSubspheres {
                    subspheres: s2,
                    points: p2,
                },
            ) => SphereRegion::complement_of_subspheres(
                self.ambient(),
                s1.iter().chain(s2).cloned().collect(),
                p1.iter().chain(p2).cloned().collect(),
            ),
            _ => unreachable!("arc unions only exist in dimension 1"),
        }
    }

    pub fn complement(&self) -> Result<SphereRegion> {
        let dim = self.dim;
        if dim < 0 {
            return Ok(SphereRegion::empty(dim));
        }
        match &self.body {
            Body::Empty => return Ok(SphereRegion::all(dim)),
            Body::All => return Ok(SphereRegion::empty(dim)),
            _ => {}
        }
        if dim <= 1 {
            let e = SphereRegion::empty(dim);
            return Ok(self.combine_low_dim(&e, |a, _| !a));
        }
        Err(Error::Unsupported(format!(
            "complement of a {} region on a sphere of dimension {dim}",
            self.kind()
        )))
    }

    pub fn antipode(&self) -> SphereRegion {
        let body = match &self.body {
            Body::Empty => Body::Empty,
            Body::All => Body::All,
            Body::PointSet(p) => Body::PointSet(p.iter().map(|d| d.antipode()).collect()),
            Body::ArcUnion { arcs, points } => Body::ArcUnion {
                arcs: arcs
                    .iter()
                    .map(|a| Arc {
                        from: a.from.antipode(),
                        to: a.to.antipode(),
                        from_closed: a.from_closed,
                        to_closed: a.to_closed,
                    })
                    .collect(),
                points: points.iter().map(|d| d.antipode()).collect(),
            },
            Body::ComplementOfSubspheres { subspheres, points } => Body::ComplementOfSubspheres {
                subspheres: subspheres.clone(),
                points: points.iter().map(|d| d.antipode()).collect(),
            },
        };
        SphereRegion {
            dim: self.dim,
            body,
        }
        .normalized()
    }

    fn combine_low_dim(
        &self,
        other: &SphereRegion,
        op: impl Fn(bool, bool) -> bool,
    ) -> SphereRegion {
        if self.dim == 0 {
            let pts = Self::zero_sphere_points()
                .into_iter()
                .filter(|p| op(self.contains_unchecked(p), other.contains_unchecked(p)))
                .collect();
            return SphereRegion {
                dim: 0,
                body: Body::PointSet(pts),
            }
            .normalized();
        }
        let mut breaks = self.circle_breaks();
        breaks.extend(other.circle_breaks());
        let label = CircleLabel::from_oracle(breaks, |d| {
            op(self.contains_unchecked(d), other.contains_unchecked(d))
        });
        Self::from_label(&label)
    }

    pub fn kind(&self) -> &'static str {
        match self.body {
            Body::Empty => "empty",
            Body::All => "all",
            Body::PointSet(_) => "point_set",
            Body::ArcUnion { .. } => "arc_union",
            Body::ComplementOfSubspheres { .. } => "complement_of_subspheres",
        }
    }

    pub fn is_all(&self) -> bool {
        self.dim >= 0 && matches!(self.normalized().body, Body::All)
            || self
                .to_canonical_low_dim()
                .is_some_and(|r| r.dim >= 0 && r.body == Body::All)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.normalized().body, Body::Empty)
            || self
                .to_canonical_low_dim()
                .is_some_and(|r| r.body == Body::Empty)
    }

    // ------------------------------------------------------------ output

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(Repr::from(self)).expect("region serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<SphereRegion> {
        let repr: Repr = serde_json::from_value(v.clone())
            .map_err(|e| Error::input("regions", format!("bad region JSON: {e}")))?;
        repr.try_into()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("dim {}\n", self.dim);
        match &self.body {
            Body::Empty => s.push_str("empty\n"),
            Body::All => s.push_str("all\n"),
            Body::PointSet(p) => {
                for d in p {
                    let _ = writeln!(s, "point {d}");
                }
            }
            Body::ArcUnion { arcs, points } => {
                for a in arcs {
                    let _ = writeln!(
                        s,
                        "arc {} {} -> {} {}",
                        a.from,
                        if a.from_closed { "closed" } else { "open" },
                        a.to,
                        if a.to_closed { "closed" } else { "open" }
                    );
                }
                for d in points {
                    let _ = writeln!(s, "point {d}");
                }
            }
            Body::ComplementOfSubspheres { subspheres, points } => {
                for u in subspheres {
                    let _ = writeln!(s, "excluded subsphere {u}");
                }
                for d in points {
                    let _ = writeln!(s, "excluded point {d}");
                }
            }
        }
        s
    }

    /// Arc table `start_x,start_y,end_x,end_y,start_closed,end_closed`; isolated
    /// points appear as closed degenerate arcs.
    pub fn to_csv(&self) -> Result<String> {
        let c = self.circle_form()?;
        let mut s = String::from("start_x,start_y,end_x,end_y,start_closed,end_closed\n");
        let row = |s: &mut String, a: &Direction, b: &Direction, ac: bool, bc: bool| {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                a.coords()[0],
                a.coords()[1],
                b.coords()[0],
                b.coords()[1],
                ac,
                bc
            );
        };
        match &c.body {
            Body::All => {
                let e = Direction::new(vec![1, 0]).unwrap();
                row(&mut s, &e, &e, true, true);
            }
            Body::Empty => {}
            Body::PointSet(p) => {
                for d in p {
                    row(&mut s, d, d, true, true);
                }
            }
            Body::ArcUnion { arcs, points } => {
                for a in arcs {
                    row(&mut s, &a.from, &a.to, a.from_closed, a.to_closed);
                }
                for d in points {
                    row(&mut s, d, d, true, true);
                }
            }
            Body::ComplementOfSubspheres { .. } => unreachable!(),
        }
        Ok(s)
    }

    fn circle_form(&self) -> Result<SphereRegion> {
        if self.dim != 1 {
            return Err(Error::precondition(
                "regions",
                format!(
                    "figures need a circle, this sphere has dimension {}",
                    self.dim
                ),
            ));
        }
        Ok(self.to_canonical_low_dim().expect("dimension 1"))
    }

    /// Unit circle with the region drawn in red.
    pub fn to_svg(&self) -> Result<String> {
        let c = self.circle_form()?;
        let (cx, cy, r) = (130.0f64, 130.0f64, 100.0f64);
        let pos = |d: &Direction| {
            let (x, y) = (d.coords()[0] as f64, d.coords()[1] as f64);
            let t = y.atan2(x);
            (cx + r * t.cos(), cy - r * t.sin(), t)
        };
        let mut s = String::new();
        s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"260\" height=\"260\" viewBox=\"0 0 260 260\">\n");
        let _ = writeln!(
            s,
            "  <line x1=\"10\" y1=\"{cy}\" x2=\"250\" y2=\"{cy}\" stroke=\"#bbb\"/>\n  <line x1=\"{cx}\" y1=\"10\" x2=\"{cx}\" y2=\"250\" stroke=\"#bbb\"/>"
        );
        let _ = writeln!(
            s,
            "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"{r}\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>"
        );
        let dot = |s: &mut String, d: &Direction, closed: bool| {
            let (x, y, _) = pos(d);
            let fill = if closed { "red" } else { "white" };
            let _ = writeln!(
                s,
                "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" fill=\"{fill}\" stroke=\"red\" stroke-width=\"1.5\"/>"
            );
        };
        match &c.body {
            Body::All => {
                let _ = writeln!(
                    s,
                    "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"{r}\" fill=\"none\" stroke=\"red\" stroke-width=\"4\"/>"
                );
            }
            Body::Empty => {}
            Body::PointSet(p) => {
                for d in p {
                    dot(&mut s, d, true);
                }
            }
            Body::ArcUnion { arcs, points } => {
                for a in arcs {
                    let (x1, y1, t1) = pos(&a.from);
                    let (x2, y2, t2) = pos(&a.to);
                    let mut sweep = t2 - t1;
                    if sweep <= 0.0 {
                        sweep += std::f64::consts::TAU;
                    }
                    if a.from == a.to {
                        let (xm, ym) = (2.0 * cx - x1, 2.0 * cy - y1);
                        let _ = writeln!(
                            s,
                            "  <path d=\"M {x1:.3} {y1:.3} A {r} {r} 0 0 0 {xm:.3} {ym:.3} A {r} {r} 0 0 0 {x2:.3} {y2:.3}\" fill=\"none\" stroke=\"red\" stroke-width=\"4\"/>"
                        );
                    } else {
                        let large = i32::from(sweep > std::f64::consts::PI);
                        let _ = writeln!(
                            s,
                            "  <path d=\"M {x1:.3} {y1:.3} A {r} {r} 0 {large} 0 {x2:.3} {y2:.3}\" fill=\"none\" stroke=\"red\" stroke-width=\"4\"/>"
                        );
                    }
                    dot(&mut s, &a.from, a.from_closed);
                    dot(&mut s, &a.to, a.to_closed);
                }
                for d in points {
                    dot(&mut s, d, true);
                }
            }
            Body::ComplementOfSubspheres { .. } => unreachable!(),
        }
        s.push_str("</svg>\n");
        Ok(s)
    }
}

/// Builds a circle region from a finite set of critical directions: membership
/// is decided at each critical direction and at one interior direction of every
/// open arc between consecutive critical directions. Exact whenever membership
/// is constant on those open arcs.
pub fn sweep_circle<F>(critical: Vec<Direction>, test: F) -> Result<SphereRegion>
where
    F: Fn(&Direction) -> Result<bool> + Sync,
{
    let mut breaks = critical;
    breaks.sort_by(angle_cmp);
    breaks.dedup();
    if breaks.is_empty() {
        breaks.push(Direction::new(vec![1, 0]).unwrap());
    }
    let k = breaks.len();
    let mut probes: Vec<Direction> = breaks.clone();
    probes.extend((0..k).map(|i| interior_direction(&breaks[i], &breaks[(i + 1) % k])));
    let results: Vec<bool> = probes
        .par_iter()
        .map(|d| test(d))
        .collect::<Result<Vec<_>>>()?;
    let label = CircleLabel {
        points: breaks,
        point_in: results[..k].to_vec(),
        arc_in: results[k..].to_vec(),
        all: false,
    };
    Ok(SphereRegion::from_label(&label))
}

/// Exact test for whether span(U) + span(W) = Q^n, i.e. S(G,U) and S(G,W) are disjoint.
pub fn subsphere_disjoint(u: &SubspaceQ, w: &SubspaceQ, n: usize) -> Result<bool> {
    if u.ambient_dim() != n || w.ambient_dim() != n {
        return Err(Error::Dimension {
            module: "regions",
            expected: n,
            got: if u.ambient_dim() != n {
                u.ambient_dim()
            } else {
                w.ambient_dim()
            },
        });
    }
    Ok(u.sum_dim(w) == n)
}

// ---------------------------------------------------------------- JSON

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum Repr {
    Empty {
        dim: i64,
    },
    All {
        dim: i64,
    },
    PointSet {
        dim: i64,
        points: Vec<Direction>,
    },
    ArcUnion {
        dim: i64,
        arcs: Vec<Arc>,
        points: Vec<Direction>,
    },
    ComplementOfSubspheres {
        dim: i64,
        subspheres: Vec<Vec<Vec<i64>>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        points: Vec<Direction>,
    },
}

impl From<&SphereRegion> for Repr {
    fn from(r: &SphereRegion) -> Self {
        let dim = r.dim;
        match &r.body {
            Body::Empty => Repr::Empty { dim },
            Body::All => Repr::All { dim },
            Body::PointSet(p) => Repr::PointSet {
                dim,
                points: p.clone(),
            },
            Body::ArcUnion { arcs, points } => Repr::ArcUnion {
                dim,
                arcs: arcs.clone(),
                points: points.clone(),
            },
            Body::ComplementOfSubspheres { subspheres, points } => Repr::ComplementOfSubspheres {
                dim,
                subspheres: subspheres.iter().map(|u| u.basis().to_vec()).collect(),
                points: points.clone(),
            },
        }
    }
}

impl TryFrom<Repr> for SphereRegion {
    type Error = Error;
    fn try_from(r: Repr) -> Result<Self> {
        match r {
            Repr::Empty { dim } => Ok(SphereRegion::empty(dim)),
            Repr::All { dim } => Ok(SphereRegion::all(dim)),
            Repr::PointSet { dim, points } => SphereRegion::point_set(dim, points),
            Repr::ArcUnion { dim, arcs, points } => {
                if dim != 1 {
                    return Err(Error::input("regions", "arc unions need dim 1"));
                }
                SphereRegion::arc_union(arcs, points)
            }
            Repr::ComplementOfSubspheres {
                dim,
                subspheres,
                points,
            } => {
                let n = (dim + 1).max(0) as usize;
                let subs = subspheres
                    .iter()
                    .map(|rows| SubspaceQ::new(n, rows))
                    .collect::<Result<Vec<_>>>()?;
                SphereRegion::complement_of_subspheres(n, subs, points)
            }
        }
    }
}

/// Sorts plane directions by angle and removes repeats.
pub fn sort_by_angle(v: &mut Vec<Direction>) {
    v.sort_by(angle_cmp);
    v.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: i64, y: i64) -> Direction {
        Direction::new(vec![x, y]).unwrap()
    }

    fn open_arc(a: Direction, b: Direction) -> Arc {
        Arc {
            from: a,
            to: b,
            from_closed: false,
            to_closed: false,
        }
    }

    #[test]
    fn angular_order() {
        let mut v = vec![d(0, -1), d(-1, 0), d(1, 1), d(1, 0), d(1, -1), d(-1, 1)];
        v.sort_by(angle_cmp);
        assert_eq!(
            v,
            vec![d(1, 0), d(1, 1), d(-1, 1), d(-1, 0), d(0, -1), d(1, -1)]
        );
    }

    #[test]
    fn interior_directions() {
        assert_eq!(interior_direction(&d(1, 0), &d(0, 1)), d(1, 1));
        assert_eq!(interior_direction(&d(1, 0), &d(-1, 0)), d(0, 1));
        assert_eq!(interior_direction(&d(0, 1), &d(1, 0)), d(-1, -1));
        assert_eq!(interior_direction(&d(1, 0), &d(1, 0)), d(-1, 0));
    }

    #[test]
    fn contains_examples() {
        let r = SphereRegion::arc_union(vec![open_arc(d(1, 0), d(0, 1))], vec![]).unwrap();
        assert!(r.contains(&d(1, 1)).unwrap());
        assert!(!r.contains(&d(1, 0)).unwrap());
        assert!(r.contains(&Direction::new(vec![1, 1, 1]).unwrap()).is_err());
        let u = SubspaceQ::coordinate(4, &[0, 1]);
        let c = SphereRegion::complement_of_subspheres(4, vec![u], vec![]).unwrap();
        assert!(!c
            .contains(&Direction::new(vec![0, 0, 1, 0]).unwrap())
            .unwrap());
        assert!(c
            .contains(&Direction::new(vec![1, 0, 1, 0]).unwrap())
            .unwrap());
    }

    #[test]
    fn algebra_examples() {
        assert_eq!(
            SphereRegion::all(3).complement().unwrap(),
            SphereRegion::empty(3)
        );
        let r = SphereRegion::arc_union(vec![open_arc(d(1, 0), d(0, 1))], vec![]).unwrap();
        let a = r.antipode();
        assert_eq!(
            a,
            SphereRegion::arc_union(vec![open_arc(d(-1, 0), d(0, -1))], vec![]).unwrap()
        );
        let left = SphereRegion::arc_union(
            vec![Arc {
                from: d(1, 0),
                to: d(0, 1),
                from_closed: false,
                to_closed: true,
            }],
            vec![],
        )
        .unwrap();
        let right = SphereRegion::arc_union(vec![open_arc(d(0, 1), d(-1, 0))], vec![]).unwrap();
        let u = left.union(&right).unwrap();
        assert_eq!(
            u,
            SphereRegion::arc_union(vec![open_arc(d(1, 0), d(-1, 0))], vec![]).unwrap()
        );
        match u.body() {
            Body::ArcUnion { arcs, .. } => assert_eq!(arcs.len(), 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn circle_minus_point() {
        let r = SphereRegion::point_set(1, vec![d(1, 0)])
            .unwrap()
            .complement()
            .unwrap();
        assert_eq!(
            r,
            SphereRegion::arc_union(vec![open_arc(d(1, 0), d(1, 0))], vec![]).unwrap()
        );
        assert!(r.contains(&d(-1, 0)).unwrap());
        assert!(!r.contains(&d(1, 0)).unwrap());
        assert_eq!(
            r.complement().unwrap(),
            SphereRegion::point_set(1, vec![d(1, 0)]).unwrap()
        );
    }

    #[test]
    fn subspheres_on_circle_convert() {
        let c =
            SphereRegion::complement_of_subspheres(2, vec![SubspaceQ::coordinate(2, &[0])], vec![])
                .unwrap();
        let canon = c.to_canonical_low_dim().unwrap();
        let expect = SphereRegion::arc_union(
            vec![open_arc(d(0, 1), d(0, -1)), open_arc(d(0, -1), d(0, 1))],
            vec![],
        )
        .unwrap();
        assert_eq!(canon, expect);
        assert!(c.same_set(&expect));
    }

    #[test]
    fn zero_sphere() {
        let p = SphereRegion::point_set(0, vec![Direction::new(vec![-1]).unwrap()]).unwrap();
        let c = p.complement().unwrap();
        assert_eq!(
            c,
            SphereRegion::point_set(0, vec![Direction::new(vec![1]).unwrap()]).unwrap()
        );
        assert_eq!(p.union(&c).unwrap(), SphereRegion::all(0));
    }

    #[test]
    fn subsphere_pruning_and_union() {
        let a = SubspaceQ::coordinate(4, &[0, 1]);
        let b = SubspaceQ::coordinate(4, &[0]);
        let r =
            SphereRegion::complement_of_subspheres(4, vec![a.clone(), b.clone()], vec![]).unwrap();
        match r.body() {
            Body::ComplementOfSubspheres { subspheres, .. } => {
                assert_eq!(subspheres, &vec![b.clone()])
            }
            other => panic!("unexpected {other:?}"),
        }
        let r2 = SphereRegion::complement_of_subspheres(
            4,
            vec![SubspaceQ::coordinate(4, &[2, 3])],
            vec![],
        )
        .unwrap();
        let u = r.union(&r2).unwrap();
        match u.body() {
            Body::ComplementOfSubspheres { subspheres, .. } => {
                assert_eq!(subspheres, &vec![SubspaceQ::coordinate(4, &[0, 2, 3])])
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(r.complement(), Err(Error::Unsupported(_))));
        let pts =
            SphereRegion::point_set(3, vec![Direction::new(vec![1, 0, 0, 0]).unwrap()]).unwrap();
        assert!(matches!(r.union(&pts), Err(Error::Unsupported(_))));
    }

    #[test]
    fn disjointness() {
        let u = SubspaceQ::coordinate(4, &[0, 1]);
        let w = SubspaceQ::new(4, &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]).unwrap();
        assert!(subsphere_disjoint(&u, &w, 4).unwrap());
        assert!(subsphere_disjoint(&SubspaceQ::full(3), &SubspaceQ::full(3), 3).unwrap());
        let e = SubspaceQ::coordinate(2, &[0]);
        assert!(!subsphere_disjoint(&e, &e, 2).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let r = SphereRegion::arc_union(vec![open_arc(d(1, 0), d(0, 1))], vec![d(-1, 0)]).unwrap();
        let js = r.to_json();
        assert_eq!(
            js,
            serde_json::from_str::<serde_json::Value>(r#"{"kind":"arc_union","dim":1,"arcs":[{"from":[1,0],"to":[0,1],"from_closed":false,"to_closed":false}],"points":[[-1,0]]}"#).unwrap()
        );
        assert_eq!(SphereRegion::from_json(&js).unwrap(), r);
        let c = SphereRegion::complement_of_subspheres(
            4,
            vec![SubspaceQ::coordinate(4, &[0, 1])],
            vec![],
        )
        .unwrap();
        let js = c.to_json();
        assert_eq!(
            js,
            serde_json::from_str::<serde_json::Value>(r#"{"kind":"complement_of_subspheres","dim":3,"subspheres":[[[1,0,0,0],[0,1,0,0]]]}"#).unwrap()
        );
        assert_eq!(SphereRegion::from_json(&js).unwrap(), c);
    }

    #[test]
    fn figures() {
        let r = SphereRegion::arc_union(vec![open_arc(d(1, 0), d(0, 1))], vec![d(-1, 0)]).unwrap();
        let svg = r.to_svg().unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("<path"));
        let csv = r.to_csv().unwrap();
        assert_eq!(
            csv,
            "start_x,start_y,end_x,end_y,start_closed,end_closed\n1,0,0,1,false,false\n-1,0,-1,0,true,true\n"
        );
        assert!(SphereRegion::all(3).to_svg().is_err());
    }
}
