//! Sigma^1 of right-angled Artin groups, read off the defining graph.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::Zero;
use rayon::prelude::*;

use crate::characters::Character;
use crate::error::{Error, Result};
use crate::linalg::SubspaceQ;
use crate::regions::SphereRegion;
use crate::words::{Letter, Presentation, Word};

/// Simple graph on at most 64 vertices, adjacency as bitsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

pub const MAX_VERTICES: usize = 64;
/// Above this size the direct subset enumeration is not attempted.
pub const DIRECT_LIMIT: usize = 22;

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::input(
                "raag",
                format!("at most {MAX_VERTICES} vertices supported, got {n}"),
            ));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(
                    "raag",
                    format!("edge ({u}, {v}) outside 0..{n}"),
                ));
            }
            if u == v {
                return Err(Error::input("raag", format!("loop at vertex {u}")));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(SimpleGraph { n, adj })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                bits(self.adj[u])
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn all(&self) -> u64 {
        full_mask(self.n)
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.adj[v] | (1 << v) == self.all())
    }

    /// Neighbors of a vertex set outside the set.
    pub fn boundary(&self, set: u64) -> u64 {
        bits(set).fold(0, |acc, v| acc | self.adj[v]) & !set
    }

    /// Connected components of the subgraph induced on `mask`.
    pub fn components(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let next = bits(frontier).fold(0, |acc, v| acc | self.adj[v]) & mask & !comp;
                comp |= next;
                frontier = next;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub fn is_connected_on(&self, mask: u64) -> bool {
        mask != 0 && self.components(mask).len() == 1
    }

    /// Commutator relators x_u x_v x_u^-1 x_v^-1, one per edge.
    pub fn commutator_relators(&self) -> Vec<Word> {
        self.edges()
            .into_iter()
            .map(|(u, v)| {
                Word::new(vec![
                    Letter::pos(u),
                    Letter::pos(v),
                    Letter::neg(u),
                    Letter::neg(v),
                ])
            })
            .collect()
    }

    pub fn presentation(&self) -> Result<Presentation> {
        Presentation::with_default_names(self.n, self.commutator_relators())
    }
}

pub fn set_to_vec(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

pub fn vec_to_set(v: &[usize]) -> u64 {
    v.iter().fold(0, |acc, &i| acc | 1 << i)
}

/// Vertices with nonzero character value.
pub fn living_set(g: &SimpleGraph, chi: &Character) -> Result<u64> {
    chi.check_dim(g.n, "raag")?;
    if chi.is_zero() {
        return Err(Error::precondition("raag", "zero character"));
    }
    Ok((0..g.n)
        .filter(|&v| !chi.gen_value(v).is_zero())
        .fold(0, |acc, v| acc | 1 << v))
}

/// Full subgraph on the vertices with nonzero character value; vertices keep their labels.
pub fn living_subgraph(g: &SimpleGraph, chi: &Character) -> Result<SimpleGraph> {
    let l = living_set(g, chi)?;
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| l >> u & 1 == 1 && l >> v & 1 == 1)
        .collect();
    SimpleGraph::new(g.n, &edges)
}

/// Living subgraph connected and dominating.
pub fn raag_point_test(g: &SimpleGraph, chi: &Character) -> Result<bool> {
    let l = living_set(g, chi)?;
    if g.is_complete() {
        return Ok(true);
    }
    if !g.is_connected_on(l) {
        return Ok(false);
    }
    Ok(bits(g.all() & !l).all(|v| g.adj[v] & l != 0))
}

/// Components of the complement number at least two and every vertex of S
/// has a neighbor in each of them.
pub fn is_minimal_separating_by_criterion(g: &SimpleGraph, s: u64) -> bool {
    let comps = g.components(g.all() & !s);
    comps.len() >= 2 && bits(s).all(|v| comps.iter().all(|&c| g.adj[v] & c != 0))
}

fn canonical_sort(v: &mut [u64]) {
    v.sort_by_key(|&m| (m.count_ones(), set_to_vec(m)));
}

/// Every vertex subset checked against the criterion; at most `DIRECT_LIMIT` vertices.
pub fn minimal_separating_direct(g: &SimpleGraph) -> Result<Vec<u64>> {
    if g.n > DIRECT_LIMIT {
        return Err(Error::precondition(
            "raag",
            format!("direct enumeration limited to {DIRECT_LIMIT} vertices"),
        ));
    }
    let total = 1u64 << g.n;
    let chunk = 1u64 << 12;
    let mut found: Vec<u64> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .flat_map_iter(|c| {
            (c * chunk..((c + 1) * chunk).min(total))
                .filter(|&s| is_minimal_separating_by_criterion(g, s))
        })
        .collect();
    canonical_sort(&mut found);
    Ok(found)
}

/// Boundaries of connected vertex sets with at most n/2 elements, filtered by
/// the same criterion; every minimal separator has a full component that small.
pub fn minimal_separating_via_components(g: &SimpleGraph) -> Vec<u64> {
    let mut out: BTreeSet<u64> = BTreeSet::new();
    if g.n == 0 {
        return vec![];
    }
    if g.components(g.all()).len() >= 2 {
        out.insert(0);
    }
    let limit = g.n / 2;
    let mut layer: HashSet<u64> = (0..g.n).map(|v| 1u64 << v).collect();
    for _size in 1..=limit {
        let found: Vec<u64> = layer
            .par_iter()
            .map(|&c| g.boundary(c))
            .filter(|&s| s != 0 && is_minimal_separating_by_criterion(g, s))
            .collect();
        out.extend(found);
        let next: HashSet<u64> = layer
            .par_iter()
            .flat_map_iter(|&c| bits(g.boundary(c)).map(move |v| c | 1 << v))
            .collect();
        layer = next;
    }
    let mut v: Vec<u64> = out.into_iter().collect();
    canonical_sort(&mut v);
    v
}

/// Minimal separating subsets, sorted by size then lexicographically.
pub fn minimal_separating_subsets(g: &SimpleGraph) -> Vec<u64> {
    if g.n <= DIRECT_LIMIT {
        minimal_separating_direct(g).expect("within the direct limit")
    } else {
        minimal_separating_via_components(g)
    }
}

/// Separation and minimality checked from the definition: the complement is
/// disconnected and putting back any single vertex reconnects it.
pub fn verify_separator(g: &SimpleGraph, s: u64) -> bool {
    let rest = g.all() & !s;
    if g.components(rest).len() < 2 {
        return false;
    }
    bits(s).all(|v| g.components(rest | 1 << v).len() == 1)
}

/// Number of separators per size of the smallest component of the complement.
pub fn size_classes(g: &SimpleGraph, seps: &[u64]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for &s in seps {
        let m = g
            .components(g.all() & !s)
            .iter()
            .map(|c| c.count_ones() as usize)
            .min()
            .unwrap_or(0);
        *out.entry(m).or_insert(0) += 1;
    }
    out
}

/// Region whose complement is the union of S(G, span{e_v : v in S}).
pub fn raag_complement(g: &SimpleGraph) -> Result<SphereRegion> {
    complement_from_separators(g, &minimal_separating_subsets(g))
}

pub fn complement_from_separators(g: &SimpleGraph, seps: &[u64]) -> Result<SphereRegion> {
    let subs = seps
        .iter()
        .map(|&s| SubspaceQ::coordinate(g.n, &set_to_vec(s)))
        .collect();
    SphereRegion::complement_of_subspheres(g.n, subs, vec![])
}

/// Largest rank of a free abelian quotient G/N with N finitely generated.
pub fn max_fg_corank(g: &SimpleGraph) -> usize {
    if g.is_complete() {
        return g.n;
    }
    corank_from(g, &minimal_separating_subsets(g))
}

fn corank_from(g: &SimpleGraph, seps: &[u64]) -> usize {
    seps.iter()
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(g.n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSubgroup {
    pub corank: usize,
    /// Rows (1^k, 2^k, ..., n^k) for k = 0 .. n - corank - 1.
    pub rows: Vec<Vec<i64>>,
    /// Every S(G, U_S) is disjoint from S(G, span(rows)).
    pub transversal: bool,
}

/// Lattice A in Z^n whose preimage N is finitely generated with G/N free abelian
/// of rank equal to the co-rank.
pub fn explicit_normal_subgroup(g: &SimpleGraph) -> Result<NormalSubgroup> {
    let seps = if g.is_complete() {
        vec![]
    } else {
        minimal_separating_subsets(g)
    };
    let corank = if g.is_complete() {
        g.n
    } else {
        corank_from(g, &seps)
    };
    let mut rows = Vec::new();
    for k in 0..(g.n - corank) as u32 {
        let row = (1..=g.n as i64)
            .map(|i| {
                i.checked_pow(k)
                    .ok_or_else(|| Error::overflow("raag", format!("computing {i}^{k}")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let a = SubspaceQ::new(g.n, &rows)?;
    let transversal = seps
        .iter()
        .all(|&s| a.sum_dim(&SubspaceQ::coordinate(g.n, &set_to_vec(s))) == g.n);
    Ok(NormalSubgroup {
        corank,
        rows,
        transversal,
    })
}

// ---------------------------------------------------------------- graph input

pub fn path(n: usize) -> SimpleGraph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    SimpleGraph::new(n, &e).unwrap()
}

pub fn cycle(n: usize) -> Result<SimpleGraph> {
    if n < 3 {
        return Err(Error::input("raag", "cycles need at least 3 vertices"));
    }
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    SimpleGraph::new(n, &e)
}

pub fn complete(n: usize) -> Result<SimpleGraph> {
    let e: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    SimpleGraph::new(n, &e)
}

/// Center 0 with leaves 1..=k.
pub fn star(k: usize) -> Result<SimpleGraph> {
    let e: Vec<_> = (1..=k).map(|v| (0, v)).collect();
    SimpleGraph::new(k + 1, &e)
}

/// Complete binary tree of height h (root 0, children 2i+1 and 2i+2).
pub fn balanced_tree(h: usize) -> Result<SimpleGraph> {
    if h > 5 {
        return Err(Error::input("raag", "balanced trees limited to height 5"));
    }
    let n = (1usize << (h + 1)) - 1;
    let e: Vec<_> = (1..n).map(|v| ((v - 1) / 2, v)).collect();
    SimpleGraph::new(n, &e)
}

/// 1-skeleton of the dodecahedron as the generalized Petersen graph GP(10, 2):
/// outer cycle 0..9, spokes i -- 10+i, inner edges 10+i -- 10+(i+2 mod 10).
pub fn dodecahedron() -> SimpleGraph {
    let mut e = Vec::new();
    for i in 0..10 {
        e.push((i, (i + 1) % 10));
        e.push((i, 10 + i));
        e.push((10 + i, 10 + (i + 2) % 10));
    }
    SimpleGraph::new(20, &e).unwrap()
}

/// m rods of length 3 tied together at both ends: vertex 0 and 2m+1 are the
/// ends, rod j runs 0 -- j -- m+j -- 2m+1.
pub fn bundle(m: usize) -> Result<SimpleGraph> {
    if m == 0 || 2 * m + 2 > MAX_VERTICES {
        return Err(Error::input(
            "raag",
            format!("bundle size {m} out of range"),
        ));
    }
    let end = 2 * m + 1;
    let mut e = Vec::new();
    for j in 1..=m {
        e.push((0, j));
        e.push((j, m + j));
        e.push((m + j, end));
    }
    SimpleGraph::new(2 * m + 2, &e)
}

/// `path:n`, `cycle:n`, `complete:n`, `star:k`, `tree:balanced:h`, `dodecahedron`, `bundle:m`.
pub fn named_graph(spec: &str) -> Result<SimpleGraph> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::input("raag", format!("bad number `{s}` in graph name `{spec}`")))
    };
    match parts.as_slice() {
        ["path", n] => {
            let n = num(n)?;
            if n == 0 || n > MAX_VERTICES {
                return Err(Error::input("raag", "path length out of range"));
            }
            Ok(path(n))
        }
        ["cycle", n] => cycle(num(n)?),
        ["complete", n] => complete(num(n)?),
        ["star", k] => star(num(k)?),
        ["tree", "balanced", h] => balanced_tree(num(h)?),
        ["dodecahedron"] => Ok(dodecahedron()),
        ["bundle", m] => bundle(num(m)?),
        _ => Err(Error::input("raag", format!("unknown graph name `{spec}`"))),
    }
}

/// Edge list: a vertex-count line, then one `u v` pair per line (0-based); `#` comments.
pub fn parse_edge_list(text: &str) -> Result<SimpleGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, first) = lines
        .next()
        .ok_or_else(|| Error::input("raag", "empty graph file"))?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::input("raag", format!("line {ln}: expected the vertex count")))?;
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let f: Vec<&str> = l.split_whitespace().collect();
        let bad = || Error::input("raag", format!("line {ln}: expected `u v`"));
        if f.len() != 2 {
            return Err(bad());
        }
        edges.push((
            f[0].parse().map_err(|_| bad())?,
            f[1].parse().map_err(|_| bad())?,
        ));
    }
    SimpleGraph::new(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(v: &[u64]) -> Vec<Vec<usize>> {
        v.iter().map(|&m| set_to_vec(m)).collect()
    }

    #[test]
    fn point_tests() {
        let p = path(3);
        assert!(!raag_point_test(&p, &Character::from_ints(&[1, 0, 1])).unwrap());
        assert!(raag_point_test(&p, &Character::from_ints(&[0, 1, 0])).unwrap());
        assert!(raag_point_test(&p, &Character::from_ints(&[2, -1, 3])).unwrap());
        assert!(raag_point_test(&p, &Character::from_ints(&[0, 0, 0])).is_err());
        let k = complete(3).unwrap();
        assert!(raag_point_test(&k, &Character::from_ints(&[1, 0, 0])).unwrap());
    }

    #[test]
    fn separators_small() {
        assert_eq!(sets(&minimal_separating_subsets(&path(3))), vec![vec![1]]);
        let c5 = minimal_separating_subsets(&cycle(5).unwrap());
        assert_eq!(
            sets(&c5),
            vec![vec![0, 2], vec![0, 3], vec![1, 3], vec![1, 4], vec![2, 4]]
        );
        let two = SimpleGraph::new(2, &[]).unwrap();
        assert_eq!(minimal_separating_subsets(&two), vec![0]);
        assert!(minimal_separating_subsets(&complete(4).unwrap()).is_empty());
    }

    #[test]
    fn bundles() {
        for m in 2..=5 {
            let g = bundle(m).unwrap();
            let s = minimal_separating_subsets(&g);
            assert_eq!(s.len(), (1 << m) + 2 * m + 1);
            assert_eq!(s, minimal_separating_via_components(&g));
            assert!(s.iter().all(|&x| verify_separator(&g, x)));
        }
    }

    #[test]
    fn complements_and_coranks() {
        assert_eq!(
            raag_complement(&complete(4).unwrap()).unwrap(),
            SphereRegion::all(3)
        );
        assert_eq!(
            raag_complement(&SimpleGraph::new(2, &[]).unwrap()).unwrap(),
            SphereRegion::empty(1)
        );
        assert_eq!(max_fg_corank(&cycle(6).unwrap()), 2);
        assert_eq!(max_fg_corank(&balanced_tree(2).unwrap()), 1);
        assert_eq!(max_fg_corank(&complete(3).unwrap()), 3);
        let ns = explicit_normal_subgroup(&cycle(5).unwrap()).unwrap();
        assert_eq!(
            ns.rows,
            vec![
                vec![1, 1, 1, 1, 1],
                vec![1, 2, 3, 4, 5],
                vec![1, 4, 9, 16, 25]
            ]
        );
        assert!(ns.transversal);
        assert!(explicit_normal_subgroup(&complete(3).unwrap())
            .unwrap()
            .rows
            .is_empty());
    }

    #[test]
    fn graph_input() {
        let g = parse_edge_list("# triangle\n3\n0 1\n1 2 # edge\n2 0\n").unwrap();
        assert!(g.is_complete());
        assert!(parse_edge_list("2\n0 2\n").is_err());
        assert!(parse_edge_list("2\n1 1\n").is_err());
        assert_eq!(named_graph("tree:balanced:2").unwrap().n_vertices(), 7);
        assert_eq!(named_graph("star:3").unwrap().edges().len(), 3);
        assert_eq!(dodecahedron().edges().len(), 30);
        assert!(named_graph("cube").is_err());
    }
}
