//! Closed forms for products and wreath products, the join criterion,
//! finite generation of normal subgroups above G', co-rank and simultaneous
//! supplements.

use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::characters::Direction;
use crate::error::{Error, Result};
use crate::linalg::{SubspaceQ, Q};
use crate::regions::{Body, SphereRegion};

/// The complement of Sigma^1 as a union of great subspheres S(G, U_j) and of
/// finitely many isolated directions, in Q^n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementData {
    pub n: usize,
    pub subspaces: Vec<SubspaceQ>,
    #[serde(default)]
    pub points: Vec<Direction>,
}

impl ComplementData {
    pub fn new(n: usize, subspaces: Vec<SubspaceQ>, points: Vec<Direction>) -> Result<Self> {
        for u in &subspaces {
            if u.ambient_dim() != n {
                return Err(Error::Dimension {
                    module: "combinators",
                    expected: n,
                    got: u.ambient_dim(),
                });
            }
        }
        for p in &points {
            if p.dim() != n {
                return Err(Error::Dimension {
                    module: "combinators",
                    expected: n,
                    got: p.dim(),
                });
            }
        }
        Ok(ComplementData {
            n,
            subspaces,
            points,
        })
    }

    /// Reads the complement of a region. Arc regions are accepted only when
    /// their complement is a finite set of points.
    pub fn from_region(r: &SphereRegion) -> Result<Self> {
        let n = (r.dim() + 1).max(0) as usize;
        let r = r.normalized();
        match r.body() {
            Body::Empty => {
                if n == 0 {
                    return ComplementData::new(0, vec![], vec![]);
                }
                ComplementData::new(n, vec![SubspaceQ::zero(n)], vec![])
            }
            Body::All => ComplementData::new(n, vec![], vec![]),
            Body::ComplementOfSubspheres { subspheres, points } => {
                ComplementData::new(n, subspheres.clone(), points.clone())
            }
            Body::PointSet(_) | Body::ArcUnion { .. } if r.dim() <= 1 => {
                let c = r.complement()?;
                match c.body() {
                    Body::Empty => ComplementData::new(n, vec![], vec![]),
                    Body::All => ComplementData::new(n, vec![SubspaceQ::zero(n)], vec![]),
                    Body::PointSet(p) => ComplementData::new(n, vec![], p.clone()),
                    _ => Err(Error::Unsupported(
                        "the complement of this region contains arcs; only points and subspheres compose".into(),
                    )),
                }
            }
            _ => Err(Error::Unsupported(
                "point sets on spheres of dimension >= 2 do not have a symbolic complement".into(),
            )),
        }
    }

    pub fn to_region(&self) -> Result<SphereRegion> {
        if self.n == 0 {
            return Ok(SphereRegion::empty(-1));
        }
        SphereRegion::complement_of_subspheres(self.n, self.subspaces.clone(), self.points.clone())
    }
}

/// Complement of Sigma^1(G1 x G2) from the complements of the factors.
pub fn product_complement(c1: &ComplementData, c2: &ComplementData) -> Result<ComplementData> {
    let n = c1.n + c2.n;
    let second = SubspaceQ::coordinate(n, &(c1.n..n).collect::<Vec<_>>());
    let first = SubspaceQ::coordinate(n, &(0..c1.n).collect::<Vec<_>>());
    let mut subs = Vec::new();
    for w in &c1.subspaces {
        subs.push(w.embed(0, n).sum(&second)?);
    }
    for w in &c2.subspaces {
        subs.push(w.embed(c1.n, n).sum(&first)?);
    }
    let mut points = Vec::new();
    for p in &c1.points {
        let mut v = p.coords().to_vec();
        v.resize(n, 0);
        points.push(Direction::new(v)?);
    }
    for p in &c2.points {
        let mut v = vec![0; c1.n];
        v.extend_from_slice(p.coords());
        points.push(Direction::new(v)?);
    }
    ComplementData::new(n, subs, points)
}

/// Complement of Sigma^1(H wr Q) with coordinates ordered (H block, Q block):
/// the subsphere S(G, H).
pub fn wreath_complement(n_h: usize, n_q: usize) -> Result<ComplementData> {
    let n = n_h + n_q;
    if n == 0 {
        return ComplementData::new(0, vec![], vec![]);
    }
    let h = SubspaceQ::coordinate(n, &(0..n_h).collect::<Vec<_>>());
    ComplementData::new(n, vec![h], vec![])
}

/// Data of one edge of the join graph: character values of chosen elements of
/// G_u intersected with G_v.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinWitness {
    pub u: usize,
    pub v: usize,
    pub values: Vec<String>,
}

/// Sufficient condition for [chi] in Sigma^1 of a group generated by subgroups
/// G_v: every [chi|G_v] is in Sigma^1(G_v) and the graph with an edge {u, v}
/// whenever chi is nonzero on some witness in G_u and G_v is connected.
pub fn join_test(part_flags: &[bool], witnesses: &[(usize, usize, Vec<Q>)]) -> Result<bool> {
    let k = part_flags.len();
    if k == 0 {
        return Err(Error::input("combinators", "join needs at least one part"));
    }
    for &(u, v, _) in witnesses {
        if u >= k || v >= k {
            return Err(Error::input(
                "combinators",
                format!("witness pair ({u}, {v}) refers to a missing part"),
            ));
        }
    }
    if !part_flags.iter().all(|&f| f) {
        return Ok(false);
    }
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for (u, v, vals) in witnesses {
        if vals.iter().any(|x| !x.is_zero()) {
            let (a, b) = (find(&mut parent, *u), find(&mut parent, *v));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    Ok((0..k).all(|i| find(&mut parent, i) == root))
}

/// A normal subgroup N containing G' is finitely generated iff S(G, N) avoids
/// the complement; with N given by its image span in Q^n.
pub fn fg_normal_test(complement: &[SubspaceQ], n_image: &SubspaceQ, n: usize) -> Result<bool> {
    if n_image.ambient_dim() != n {
        return Err(Error::Dimension {
            module: "combinators",
            expected: n,
            got: n_image.ambient_dim(),
        });
    }
    for u in complement {
        if u.ambient_dim() != n {
            return Err(Error::Dimension {
                module: "combinators",
                expected: n,
                got: u.ambient_dim(),
            });
        }
    }
    Ok(complement.iter().all(|u| n_image.sum_dim(u) == n))
}

/// Same test on complement data, points included: S(G, N) contains d iff N is orthogonal to d.
pub fn fg_normal_test_data(c: &ComplementData, n_image: &SubspaceQ) -> Result<bool> {
    if !fg_normal_test(&c.subspaces, n_image, c.n)? {
        return Ok(false);
    }
    Ok(!c.points.iter().any(|p| n_image.annihilated_by(p.coords())))
}

pub fn max_corank(complement: &[SubspaceQ]) -> Result<usize> {
    complement
        .iter()
        .map(|u| u.dim())
        .min()
        .ok_or_else(|| Error::input("combinators", "empty subspace list"))
}

fn moment_vector(t: i64, n: usize) -> Result<Vec<i64>> {
    let mut v = Vec::with_capacity(n);
    let mut x: i64 = 1;
    for i in 0..n {
        v.push(x);
        if i + 1 < n {
            x = x.checked_mul(t).ok_or_else(|| {
                Error::overflow("combinators", format!("moment curve at t = {t}"))
            })?;
        }
    }
    Ok(v)
}

/// Subspace U of co-dimension min dim U_j with U + U_j = Q^n for all j, built
/// from points (1, t, ..., t^(n-1)) of the moment curve, t = 0, 1, 2, ...
pub fn simultaneous_supplement(us: &[SubspaceQ], n: usize) -> Result<SubspaceQ> {
    let m = max_corank(us)?;
    for u in us {
        if u.ambient_dim() != n {
            return Err(Error::Dimension {
                module: "combinators",
                expected: n,
                got: u.ambient_dim(),
            });
        }
    }
    let mut a = SubspaceQ::zero(n);
    let mut t: i64 = 0;
    for _ in 0..n - m {
        let obstructions: Vec<SubspaceQ> = std::iter::once(Ok(a.clone()))
            .chain(us.iter().map(|u| a.sum(u)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|w| !w.is_full())
            .collect();
        let bound: usize = obstructions.iter().map(|w| w.dim()).sum();
        let mut skipped = 0usize;
        loop {
            let v = moment_vector(t, n)?;
            t += 1;
            let qv: Vec<Q> = v.iter().map(|&x| Q::from_integer(x.into())).collect();
            if obstructions.iter().any(|w| w.contains_vector(&qv)) {
                skipped += 1;
                assert!(
                    skipped <= bound,
                    "moment-curve scan skipped more points than the obstructions allow"
                );
                continue;
            }
            let mut rows = a.basis().to_vec();
            rows.push(v);
            a = SubspaceQ::new(n, &rows)?;
            break;
        }
    }
    for u in us {
        if a.sum_dim(u) != n {
            return Err(Error::precondition(
                "combinators",
                "supplement failed the transversality check",
            ));
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn span(n: usize, rows: &[&[i64]]) -> SubspaceQ {
        SubspaceQ::new(n, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn free2() -> ComplementData {
        ComplementData::from_region(&SphereRegion::empty(1)).unwrap()
    }

    #[test]
    fn free_times_free() {
        let c = product_complement(&free2(), &free2()).unwrap();
        assert_eq!(
            c.subspaces,
            vec![
                SubspaceQ::coordinate(4, &[2, 3]),
                SubspaceQ::coordinate(4, &[0, 1])
            ]
        );
        let n = span(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        assert!(fg_normal_test(&c.subspaces, &n, 4).unwrap());
        assert!(!fg_normal_test(&c.subspaces, &SubspaceQ::zero(4), 4).unwrap());
        assert!(fg_normal_test(&[], &SubspaceQ::zero(4), 4).unwrap());
        assert_eq!(max_corank(&c.subspaces).unwrap(), 2);
    }

    #[test]
    fn products_with_points() {
        let bs = ComplementData::new(1, vec![], vec![Direction::new(vec![1]).unwrap()]).unwrap();
        let c = product_complement(&bs, &bs).unwrap();
        let r = c.to_region().unwrap();
        assert!(!r.contains(&Direction::new(vec![1, 0]).unwrap()).unwrap());
        assert!(!r.contains(&Direction::new(vec![0, 1]).unwrap()).unwrap());
        assert!(r.contains(&Direction::new(vec![-1, 0]).unwrap()).unwrap());
        assert!(r.contains(&Direction::new(vec![1, 1]).unwrap()).unwrap());
        let z = ComplementData::new(1, vec![], vec![]).unwrap();
        let e = product_complement(&z, &free2()).unwrap();
        assert_eq!(e.subspaces, vec![SubspaceQ::coordinate(3, &[0])]);
    }

    #[test]
    fn wreath() {
        let w = wreath_complement(1, 1).unwrap().to_region().unwrap();
        assert!(!w.contains(&Direction::new(vec![0, 1]).unwrap()).unwrap());
        assert!(!w.contains(&Direction::new(vec![0, -1]).unwrap()).unwrap());
        assert!(w.contains(&Direction::new(vec![1, 0]).unwrap()).unwrap());
        assert!(wreath_complement(0, 1)
            .unwrap()
            .to_region()
            .unwrap()
            .is_empty());
    }

    #[test]
    fn joins() {
        assert!(join_test(&[true], &[]).unwrap());
        assert!(!join_test(&[true, true], &[(0, 1, vec![q(0)])]).unwrap());
        assert!(join_test(&[true, true], &[(0, 1, vec![q(0), q(2)])]).unwrap());
        assert!(!join_test(&[true, false], &[(0, 1, vec![q(1)])]).unwrap());
        assert!(join_test(&[], &[]).is_err());
    }

    #[test]
    fn supplements() {
        let us = vec![
            SubspaceQ::coordinate(4, &[0, 1]),
            SubspaceQ::coordinate(4, &[2, 3]),
        ];
        let a = simultaneous_supplement(&us, 4).unwrap();
        assert_eq!(a.dim(), 2);
        let a = simultaneous_supplement(&[SubspaceQ::coordinate(2, &[0])], 2).unwrap();
        assert_eq!(a, span(2, &[&[1, 1]]));
        let a = simultaneous_supplement(&[SubspaceQ::full(3)], 3).unwrap();
        assert_eq!(a.dim(), 0);
        assert!(simultaneous_supplement(&[], 3).is_err());
    }
}
