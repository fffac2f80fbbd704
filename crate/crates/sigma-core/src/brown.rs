//! Sigma^1 of one-relator groups: the point test on cyclic tracks, degenerate
//! cases, and the exact full circle from the convex hull of the relator path.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::characters::{abelianization, cyclic_min_stats, track, Character, Direction};
use crate::error::{Error, Result};
use crate::linalg::{primitive_ints, rank_int};
use crate::regions::{normals, sweep_circle, SphereRegion};
use crate::words::{Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OneRelatorClass {
    /// Two generators, the relator involves both.
    TwoGenBothLetters,
    /// Infinite cyclic or finite cyclic group; Sigma^1 = S(G).
    Cyclic,
    /// Two generators, relator a power of one generator; Sigma^1 is empty.
    FreeProductEmpty,
    /// At least three generators and one relator; Sigma^1 is empty.
    ManyGensEmpty,
    /// No relator and at least two generators; Sigma^1 is empty.
    FreeGroup,
}

pub fn classify_one_relator(p: &Presentation) -> Result<OneRelatorClass> {
    let rels = p.relators();
    if rels.len() > 1 {
        return Err(Error::precondition(
            "brown",
            format!("expected at most one relator, got {}", rels.len()),
        ));
    }
    let n = p.n_gens();
    Ok(match (n, rels.first()) {
        (1, _) => OneRelatorClass::Cyclic,
        (_, None) => OneRelatorClass::FreeGroup,
        (2, Some(r)) => {
            if r.support().len() == 2 {
                OneRelatorClass::TwoGenBothLetters
            } else if r.len() == 1 {
                OneRelatorClass::Cyclic
            } else {
                OneRelatorClass::FreeProductEmpty
            }
        }
        _ => OneRelatorClass::ManyGensEmpty,
    })
}

fn check_relator(r: &Word) -> Result<()> {
    if !r.is_cyclically_reduced() || r.is_empty() {
        return Err(Error::precondition(
            "brown",
            "relator must be nonempty and cyclically reduced",
        ));
    }
    if r.max_gen().unwrap_or(0) > 1 {
        return Err(Error::Dimension {
            module: "brown",
            expected: 2,
            got: r.max_gen().unwrap() + 1,
        });
    }
    if r.support().len() != 2 {
        return Err(Error::precondition(
            "brown",
            "relator must involve both generators",
        ));
    }
    Ok(())
}

/// The condition of Brown's criterion at a single point.
pub fn brown_point_test(r: &Word, chi: &Character) -> Result<bool> {
    check_relator(r)?;
    chi.check_dim(2, "brown")?;
    if chi.is_zero() {
        return Err(Error::precondition("brown", "zero character"));
    }
    if !chi.eval(r).is_zero() {
        return Err(Error::precondition(
            "brown",
            "the character does not vanish on the relator",
        ));
    }
    let (ca, cb) = (chi.gen_value(0), chi.gen_value(1));
    assert!(!(ca.is_zero() && cb.is_zero()));
    let required = if ca.is_zero() || cb.is_zero() { 2 } else { 1 };
    let stats = cyclic_min_stats(&track(r, chi)?)?;
    Ok(stats.multiplicity == required)
}

/// Vertices v_0 = 0, v_1, ..., v_k of the closed lattice path of a relator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePath {
    pub vertices: Vec<(i64, i64)>,
}

pub fn relator_to_lattice_path(r: &Word) -> Result<LatticePath> {
    if r.max_gen().unwrap_or(0) > 1 {
        return Err(Error::Dimension {
            module: "brown",
            expected: 2,
            got: r.max_gen().unwrap() + 1,
        });
    }
    let ev = r.exponent_vector(2);
    if ev != [0, 0] {
        return Err(Error::precondition(
            "brown",
            format!("exponent sums ({}, {}) are not both zero", ev[0], ev[1]),
        ));
    }
    Ok(LatticePath {
        vertices: path_vertices(r),
    })
}

/// Lattice path of any word in two generators (closed or not).
pub(crate) fn path_vertices(r: &Word) -> Vec<(i64, i64)> {
    let mut v = vec![(0i64, 0i64)];
    let (mut x, mut y) = (0i64, 0i64);
    for l in r.letters() {
        let s = l.sign as i64;
        if l.gen == 0 {
            x += s;
        } else {
            y += s;
        }
        v.push((x, y));
    }
    v
}

fn orient(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

/// Counterclockwise convex hull without collinear points (monotone chain).
pub fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Normals of the hull edges of the relator path together with the axis directions.
pub fn critical_directions(r: &Word) -> Result<Vec<Direction>> {
    let path = relator_to_lattice_path(r)?;
    let hull = convex_hull(&path.vertices);
    let mut out: Vec<Direction> = [[1, 0], [0, 1], [-1, 0], [0, -1]]
        .iter()
        .map(|v| Direction::new(v.to_vec()).unwrap())
        .collect();
    let h = hull.len();
    for i in 0..h {
        let (a, b) = (hull[i], hull[(i + 1) % h]);
        if a != b {
            out.extend(normals(((b.0 - a.0) as i128, (b.1 - a.1) as i128)));
        }
    }
    Ok(out)
}

/// Exact Sigma^1 of <a, b | r> when both exponent sums of r vanish.
pub fn brown_full_circle(r: &Word) -> Result<SphereRegion> {
    check_relator(r)?;
    let crit = critical_directions(r)?;
    sweep_circle(crit, |d| brown_point_test(r, &d.to_character()))
}

/// Sigma^1 of a presentation with at most one relator, on the sphere of the
/// torsion-free abelianization. Coordinates are the generator coordinates when
/// the rank is 2, and the sign of the kernel vector of the exponent sums when
/// the rank is 1.
pub fn one_relator_region(p: &Presentation) -> Result<SphereRegion> {
    let class = classify_one_relator(p)?;
    let rank = abelianization(p).torsion_free_rank as i64;
    match class {
        OneRelatorClass::Cyclic => Ok(SphereRegion::all(rank - 1)),
        OneRelatorClass::FreeGroup
        | OneRelatorClass::FreeProductEmpty
        | OneRelatorClass::ManyGensEmpty => Ok(SphereRegion::empty(rank - 1)),
        OneRelatorClass::TwoGenBothLetters => {
            let r = &p.relators()[0];
            if rank == 2 {
                return brown_full_circle(r);
            }
            let basis = rank_one_basis(p)?;
            let mut pts = Vec::new();
            for (sign, chi) in [(1, basis.clone()), (-1, basis.negated())] {
                if brown_point_test(r, &chi)? {
                    pts.push(Direction::new(vec![sign])?);
                }
            }
            SphereRegion::point_set(0, pts)
        }
    }
}

/// Primitive integer character spanning the character space of a rank-1 two-generator group.
pub fn rank_one_basis(p: &Presentation) -> Result<Character> {
    let ab = abelianization(p);
    if ab.torsion_free_rank != 1 || rank_int(p.exponent_matrix()) != 1 {
        return Err(Error::precondition(
            "brown",
            "abelianization does not have rank 1",
        ));
    }
    let mut v = primitive_ints(&ab.character_basis[0])?;
    // orient so that the first nonzero coordinate is positive
    if v.iter().find(|x| **x != 0).is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(Character::from_ints(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::Arc;
    use crate::words::parse_presentation;

    fn rel(s: &str) -> Word {
        parse_presentation(s).unwrap().relators()[0].clone()
    }

    fn d(x: i64, y: i64) -> Direction {
        Direction::new(vec![x, y]).unwrap()
    }

    fn open(a: Direction, b: Direction) -> Arc {
        Arc {
            from: a,
            to: b,
            from_closed: false,
            to_closed: false,
        }
    }

    #[test]
    fn classification() {
        let c = |s: &str| classify_one_relator(&parse_presentation(s).unwrap()).unwrap();
        assert_eq!(c("<a b c | a b c a^-1>"), OneRelatorClass::ManyGensEmpty);
        assert_eq!(c("<a b | a^3>"), OneRelatorClass::FreeProductEmpty);
        assert_eq!(c("<a b | b^-1>"), OneRelatorClass::Cyclic);
        assert_eq!(c("<a b | >"), OneRelatorClass::FreeGroup);
        assert_eq!(c("<a | a^5>"), OneRelatorClass::Cyclic);
        assert_eq!(
            c("<a b | a^2 b^2 a b^-2 a^-1 b a^-1 b^-2 a b^2>"),
            OneRelatorClass::TwoGenBothLetters
        );
        assert!(classify_one_relator(&parse_presentation("<a b | a, b>").unwrap()).is_err());
    }

    #[test]
    fn trefoil() {
        let r = rel("<a b | a b a b^-1 a^-1 b^-1>");
        let chi = Character::from_ints(&[1, 1]);
        assert!(brown_point_test(&r, &chi).unwrap());
        assert!(brown_point_test(&r, &chi.negated()).unwrap());
    }

    #[test]
    fn preconditions() {
        let r = rel("<a b | a b a^-1 b^-1>");
        assert!(matches!(
            brown_point_test(
                &Word::from_syllables(&[(0, 1), (1, 1), (0, -1)]),
                &Character::from_ints(&[0, 1])
            ),
            Err(Error::Precondition { .. })
        ));
        assert!(brown_point_test(&r, &Character::from_ints(&[0, 0])).is_err());
        let r2 = rel("<a b | a^2 b>");
        assert!(brown_point_test(&r2, &Character::from_ints(&[1, 0])).is_err());
        assert!(relator_to_lattice_path(&r2).is_err());
    }

    #[test]
    fn commutator_path_and_circle() {
        let r = rel("<a b | a b a^-1 b^-1>");
        assert_eq!(
            relator_to_lattice_path(&r).unwrap().vertices,
            vec![(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]
        );
        assert_eq!(brown_full_circle(&r).unwrap(), SphereRegion::all(1));
    }

    #[test]
    fn four_piece_region() {
        let r = rel("<a b | a^-1 b^-1 a b^2 a^-1 b^-1 a^2 b^-1 a^-1 b a^-1 b a b^-1>");
        assert_eq!(relator_to_lattice_path(&r).unwrap().vertices.len(), 17);
        let got = brown_full_circle(&r).unwrap();
        let q1 = SphereRegion::arc_union(vec![open(d(1, 0), d(0, 1))], vec![]).unwrap();
        let q2 = SphereRegion::arc_union(vec![open(d(0, 1), d(-1, 0))], vec![]).unwrap();
        let p = SphereRegion::point_set(1, vec![d(-1, 0)]).unwrap();
        let q3 = SphereRegion::arc_union(vec![open(d(-1, 0), d(-1, -1))], vec![]).unwrap();
        let expect = q1
            .union(&q2)
            .unwrap()
            .union(&p)
            .unwrap()
            .union(&q3)
            .unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn positive_relator_quadrants() {
        let u = Word::from_syllables(&[(0, 2), (1, 1), (0, 1), (1, 3), (0, 3)]);
        let v = Word::from_syllables(&[(1, 1), (0, 1), (1, 1), (0, 4), (1, 1), (0, 1), (1, 1)]);
        assert_eq!(u.exponent_vector(2), vec![6, 4]);
        let r = u.concat(&v.invert()).reduce();
        let c = brown_full_circle(&r).unwrap();
        assert!(c.contains(&d(1, 1)).unwrap());
        assert!(c.contains(&d(2, 7)).unwrap());
        assert!(c.contains(&d(-3, -1)).unwrap());
    }

    #[test]
    fn rank_one_region() {
        let p = parse_presentation("<a b | a^2 b^2 a b^-2 a^-1 b a^-1 b^-2 a b^2>").unwrap();
        assert_eq!(rank_one_basis(&p).unwrap(), Character::from_ints(&[1, -2]));
        assert_eq!(one_relator_region(&p).unwrap(), SphereRegion::all(0));
        let f = parse_presentation("<a b c | a b c>").unwrap();
        assert_eq!(one_relator_region(&f).unwrap(), SphereRegion::empty(1));
    }

    #[test]
    fn hull() {
        let h = convex_hull(&[(0, 0), (2, 0), (1, 0), (2, 2), (0, 2), (1, 1)]);
        assert_eq!(h, vec![(0, 0), (2, 0), (2, 2), (0, 2)]);
    }
}
