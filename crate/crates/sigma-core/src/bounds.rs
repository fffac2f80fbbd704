//! Lower bounds psi(R) and Psi(R) for Sigma^1 built from the cyclic minima of
//! relator tracks, their full circles in rank 2, Wirtinger graphs of knot
//! diagrams, and emptiness certificates from the deficiency.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::characters::{abelianization, cyclic_min_stats, track, Character, Direction};
use crate::error::{Error, Result};
use crate::linalg::{primitive_ints, Q};
use crate::regions::{normals, sweep_circle, SphereRegion};
use crate::words::{Letter, Presentation, Word};

/// What the cyclic minimum of one relator track looks like.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinWitness {
    pub relator_index: usize,
    /// 1-based positions of the cyclic minimum.
    pub positions: Vec<usize>,
    /// (s_j^-1, s_{j+1}) for a unique minimum at j.
    pub involved_pair: Option<(Letter, Letter)>,
    /// (s_j, s_{j+1}, s_{j+2}) for a minimum at exactly the consecutive indices j, j+1.
    pub zero_triple: Option<(Letter, Letter, Letter)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiGraph {
    pub vertices: Vec<Letter>,
    /// Unordered edges stored as (smaller, larger).
    pub edges: Vec<(Letter, Letter)>,
}

impl PsiGraph {
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let idx: BTreeMap<Letter, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.vertices.len();
        for (a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, idx[a]), find(&mut parent, idx[b]));
            if ra != rb {
                parent[ra] = rb;
                comps -= 1;
            }
        }
        comps == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiResult {
    pub member: bool,
    pub t: Option<Letter>,
    /// Witness for each y in Y_{>0} other than t.
    pub letter_witnesses: Vec<(Letter, MinWitness)>,
    /// Witness for each generator with chi = 0.
    pub zero_witnesses: Vec<(usize, MinWitness)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigPsiResult {
    pub member: bool,
    pub graph: PsiGraph,
    pub zero_witnesses: Vec<(usize, MinWitness)>,
    /// Generators with chi = 0 lacking a qualifying relator.
    pub unmatched_zero_generators: Vec<usize>,
}

/// R together with the inverses of its elements, up to cyclic permutation.
pub fn sym_closure(rels: &[Word]) -> Vec<Word> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for w in rels.iter().cloned().chain(rels.iter().map(|r| r.invert())) {
        if seen.insert(w.canonical_rotation()) {
            out.push(w);
        }
    }
    out
}

fn positive_letters(chi: &Character) -> Vec<Letter> {
    Letter::alphabet(chi.dim())
        .into_iter()
        .filter(|&l| chi.letter_value(l).is_positive())
        .collect()
}

fn zero_generators(chi: &Character) -> Vec<usize> {
    (0..chi.dim())
        .filter(|&g| chi.gen_value(g).is_zero())
        .collect()
}

fn min_witness(index: usize, r: &Word, chi: &Character) -> Result<Option<MinWitness>> {
    if r.is_empty() {
        return Ok(None);
    }
    let stats = cyclic_min_stats(&track(r, chi)?)?;
    let k = r.len();
    let s = |i: usize| r.letters()[(i - 1) % k];
    let mut w = MinWitness {
        relator_index: index,
        positions: stats.positions.clone(),
        involved_pair: None,
        zero_triple: None,
    };
    if stats.multiplicity == 1 {
        let j = stats.positions[0];
        w.involved_pair = Some((s(j).inverse(), s(j + 1)));
    } else if stats.multiplicity == 2 && stats.consecutive && k > 2 {
        let (a, b) = (stats.positions[0], stats.positions[1]);
        let j = if b == a + 1 { a } else { b };
        w.zero_triple = Some((s(j), s(j + 1), s(j + 2)));
    }
    Ok(Some(w))
}

fn check_inputs(rels: &[Word], chi: &Character) -> Result<()> {
    if chi.is_zero() {
        return Err(Error::precondition("bounds", "zero character"));
    }
    for (i, r) in rels.iter().enumerate() {
        if let Some(g) = r.max_gen() {
            if g >= chi.dim() {
                return Err(Error::Dimension {
                    module: "bounds",
                    expected: chi.dim(),
                    got: g + 1,
                });
            }
        }
        if !r.is_cyclically_reduced() {
            return Err(Error::precondition(
                "bounds",
                format!("relator {} is not cyclically reduced", i + 1),
            ));
        }
        if !chi.eval(r).is_zero() {
            return Err(Error::precondition(
                "bounds",
                format!("the character does not vanish on relator {}", i + 1),
            ));
        }
    }
    Ok(())
}

fn witnesses(rels: &[Word], chi: &Character, symmetrize: bool) -> Result<Vec<MinWitness>> {
    check_inputs(rels, chi)?;
    let set = if symmetrize {
        sym_closure(rels)
    } else {
        rels.to_vec()
    };
    let mut out = Vec::new();
    for (i, r) in set.iter().enumerate() {
        if let Some(w) = min_witness(i, r, chi)? {
            out.push(w);
        }
    }
    Ok(out)
}

fn same_pair(p: (Letter, Letter), a: Letter, b: Letter) -> bool {
    (p.0 == a && p.1 == b) || (p.0 == b && p.1 == a)
}

/// Membership in psi(R). Relator indices in the witnesses refer to the
/// symmetrized list when `symmetrize` is set.
pub fn psi_point_test(rels: &[Word], chi: &Character, symmetrize: bool) -> Result<PsiResult> {
    let ws = witnesses(rels, chi, symmetrize)?;
    let ypos = positive_letters(chi);
    let x0 = zero_generators(chi);
    for &t in &ypos {
        let mut letter_witnesses = Vec::new();
        let ok_letters = ypos.iter().filter(|&&y| y != t).all(|&y| {
            match ws
                .iter()
                .find(|w| w.involved_pair.is_some_and(|p| same_pair(p, y, t)))
            {
                Some(w) => {
                    letter_witnesses.push((y, w.clone()));
                    true
                }
                None => false,
            }
        });
        if !ok_letters {
            continue;
        }
        let mut zero_witnesses = Vec::new();
        let ok_zero = x0.iter().all(|&x| {
            match ws.iter().find(|w| {
                w.zero_triple
                    .is_some_and(|(a, m, b)| a == t.inverse() && m.gen == x && b == t)
            }) {
                Some(w) => {
                    zero_witnesses.push((x, w.clone()));
                    true
                }
                None => false,
            }
        });
        if ok_zero {
            return Ok(PsiResult {
                member: true,
                t: Some(t),
                letter_witnesses,
                zero_witnesses,
            });
        }
    }
    Ok(PsiResult {
        member: false,
        t: None,
        letter_witnesses: vec![],
        zero_witnesses: vec![],
    })
}

/// Membership in Psi(R) with the graph on the positive letters.
pub fn big_psi_point_test(
    rels: &[Word],
    chi: &Character,
    symmetrize: bool,
) -> Result<BigPsiResult> {
    let ws = witnesses(rels, chi, symmetrize)?;
    let ypos = positive_letters(chi);
    let mut edges = BTreeSet::new();
    for w in &ws {
        if let Some((a, b)) = w.involved_pair {
            if a != b {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    let graph = PsiGraph {
        vertices: ypos.clone(),
        edges: edges.into_iter().collect(),
    };
    let mut zero_witnesses = Vec::new();
    let mut unmatched = Vec::new();
    for x in zero_generators(chi) {
        let found = ws.iter().find(|w| {
            w.zero_triple.is_some_and(|(a, m, b)| {
                m.gen == x && ypos.contains(&a.inverse()) && ypos.contains(&b)
            })
        });
        match found {
            Some(w) => zero_witnesses.push((x, w.clone())),
            None => unmatched.push(x),
        }
    }
    Ok(BigPsiResult {
        member: graph.is_connected() && unmatched.is_empty(),
        graph,
        zero_witnesses,
        unmatched_zero_generators: unmatched,
    })
}

/// Basis (c1, c2) of the character space of a presentation of rank 2; the
/// circle coordinate d corresponds to the character d1*c1 + d2*c2.
pub fn circle_coordinates(p: &Presentation) -> Result<[Vec<Q>; 2]> {
    let ab = abelianization(p);
    if ab.torsion_free_rank != 2 {
        return Err(Error::precondition(
            "bounds",
            format!(
                "full circle needs an abelianization of rank 2, this one has rank {}",
                ab.torsion_free_rank
            ),
        ));
    }
    let b = ab.character_basis;
    Ok([b[0].clone(), b[1].clone()])
}

pub fn character_at(coords: &[Vec<Q>; 2], d: &Direction) -> Character {
    let (x, y) = (
        Q::from_integer(d.coords()[0].into()),
        Q::from_integer(d.coords()[1].into()),
    );
    Character::new(
        coords[0]
            .iter()
            .zip(&coords[1])
            .map(|(a, b)| a * &x + b * &y)
            .collect(),
    )
}

fn plane_image(coords: &[Vec<Q>; 2], w: &[i64]) -> (Q, Q) {
    let f = |c: &Vec<Q>| {
        c.iter()
            .zip(w)
            .map(|(a, &b)| a * Q::from_integer(b.into()))
            .sum::<Q>()
    };
    (f(&coords[0]), f(&coords[1]))
}

fn push_normals(out: &mut Vec<Direction>, v: (Q, Q)) -> Result<()> {
    if v.0.is_zero() && v.1.is_zero() {
        return Ok(());
    }
    let p = primitive_ints(&[v.0, v.1])?;
    out.extend(normals((p[0] as i128, p[1] as i128)));
    Ok(())
}

/// Directions where the sign of a letter or the order of two prefix values of
/// one relator can change.
pub fn psi_critical_directions(p: &Presentation) -> Result<Vec<Direction>> {
    let coords = circle_coordinates(p)?;
    let n = p.n_gens();
    let mut out = Vec::new();
    for g in 0..n {
        let mut e = vec![0i64; n];
        e[g] = 1;
        push_normals(&mut out, plane_image(&coords, &e))?;
    }
    for r in p.relators() {
        let mut prefix = vec![0i64; n];
        let mut pts: BTreeSet<(Q, Q)> = BTreeSet::new();
        pts.insert((Q::zero(), Q::zero()));
        for l in r.letters() {
            prefix[l.gen] += l.sign as i64;
            pts.insert(plane_image(&coords, &prefix));
        }
        let pts: Vec<(Q, Q)> = pts.into_iter().collect();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                push_normals(&mut out, (&pts[j].0 - &pts[i].0, &pts[j].1 - &pts[i].1))?;
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// psi(R) for the relators of a rank-2 presentation, in circle coordinates.
pub fn psi_full_circle(p: &Presentation, symmetrize: bool) -> Result<SphereRegion> {
    let coords = circle_coordinates(p)?;
    let crit = psi_critical_directions(p)?;
    sweep_circle(crit, |d| {
        Ok(psi_point_test(p.relators(), &character_at(&coords, d), symmetrize)?.member)
    })
}

/// Psi(R) for the relators of a rank-2 presentation, in circle coordinates.
pub fn big_psi_full_circle(p: &Presentation, symmetrize: bool) -> Result<SphereRegion> {
    let coords = circle_coordinates(p)?;
    let crit = psi_critical_directions(p)?;
    sweep_circle(crit, |d| {
        Ok(big_psi_point_test(p.relators(), &character_at(&coords, d), symmetrize)?.member)
    })
}

// ---------------------------------------------------------------- knot diagrams

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerReport {
    pub presentation: Presentation,
    /// Edge e_j for each crossing (loops kept), on generators for chi_+.
    pub g_plus: PsiGraph,
    /// Same for chi_-, on the inverse letters.
    pub g_minus: PsiGraph,
    pub plus_member: bool,
    pub minus_member: bool,
    /// Psi graphs recomputed from the relators.
    pub psi_plus: PsiGraph,
    pub psi_minus: PsiGraph,
}

fn formula_connected(g: &PsiGraph) -> bool {
    let no_loops = PsiGraph {
        vertices: g.vertices.clone(),
        edges: g.edges.iter().filter(|(a, b)| a != b).cloned().collect(),
    };
    no_loops.is_connected()
}

/// Wirtinger relators r_j = x_j x_b^s x_{j+1}^-1 x_b^-s with b = beta(j),
/// s = sigma(j); `beta` is 1-based.
pub fn wirtinger_graphs(m: usize, beta: &[usize], sigma: &[i8]) -> Result<WirtingerReport> {
    if m == 0 || beta.len() != m || sigma.len() != m {
        return Err(Error::input(
            "bounds",
            format!("need m >= 1 crossings with one beta and one sigma each (m = {m})"),
        ));
    }
    if let Some(b) = beta.iter().find(|&&b| b == 0 || b > m) {
        return Err(Error::input(
            "bounds",
            format!("beta value {b} outside 1..{m}"),
        ));
    }
    if sigma.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::input("bounds", "sigma values must be +1 or -1"));
    }
    let next = |j: usize| (j + 1) % m;
    let mut rels = Vec::new();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for j in 0..m {
        let (b, s) = (beta[j] - 1, sigma[j]);
        rels.push(
            Word::new(vec![
                Letter::pos(j),
                Letter::new(b, s),
                Letter::neg(next(j)),
                Letter::new(b, -s),
            ])
            .cyclically_reduce()
            .0,
        );
        let order = |a: Letter, c: Letter| (a.min(c), a.max(c));
        if s == 1 {
            plus.push(order(Letter::pos(j), Letter::pos(b)));
            minus.push(order(Letter::neg(next(j)), Letter::neg(b)));
        } else {
            plus.push(order(Letter::pos(next(j)), Letter::pos(b)));
            minus.push(order(Letter::neg(j), Letter::neg(b)));
        }
    }
    let presentation = Presentation::with_default_names(m, rels)?;
    let chi_plus = Character::from_ints(&vec![1; m]);
    let a = big_psi_point_test(presentation.relators(), &chi_plus, true)?;
    let b = big_psi_point_test(presentation.relators(), &chi_plus.negated(), true)?;
    let g_plus = PsiGraph {
        vertices: (0..m).map(Letter::pos).collect(),
        edges: plus,
    };
    let g_minus = PsiGraph {
        vertices: (0..m).map(Letter::neg).collect(),
        edges: minus,
    };
    Ok(WirtingerReport {
        presentation,
        plus_member: a.member,
        minus_member: b.member,
        g_plus,
        g_minus,
        psi_plus: a.graph,
        psi_minus: b.graph,
    })
}

impl WirtingerReport {
    /// Whether connectivity of the closed-form graphs agrees with the Psi graphs.
    pub fn formula_agrees(&self) -> bool {
        formula_connected(&self.g_plus) == self.plus_member
            && formula_connected(&self.g_minus) == self.minus_member
    }
}

/// Parses lines `j beta sigma` (1-based, `#` starts a comment).
pub fn parse_wirtinger(text: &str) -> Result<(usize, Vec<usize>, Vec<i8>)> {
    let mut rows: BTreeMap<usize, (usize, i8)> = BTreeMap::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let bad = || {
            Error::input(
                "bounds",
                format!("line {}: expected `j beta sigma`", ln + 1),
            )
        };
        if f.len() != 3 {
            return Err(bad());
        }
        let j: usize = f[0].parse().map_err(|_| bad())?;
        let b: usize = f[1].parse().map_err(|_| bad())?;
        let s: i8 = f[2].trim_start_matches('+').parse().map_err(|_| bad())?;
        if rows.insert(j, (b, s)).is_some() {
            return Err(Error::input("bounds", format!("crossing {j} listed twice")));
        }
    }
    let m = rows.len();
    if rows.keys().copied().ne(1..=m) {
        return Err(Error::input("bounds", "crossings must be numbered 1..m"));
    }
    Ok((
        m,
        rows.values().map(|v| v.0).collect(),
        rows.values().map(|v| v.1).collect(),
    ))
}

// ---------------------------------------------------------------- deficiency

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeficiencyCase {
    /// at most m - 2 relators
    I,
    /// m - 1 relators, one a proper power
    Ii,
    /// m relators, two proper powers with a common prime
    Iii,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeficiencyCertificate {
    pub case: DeficiencyCase,
    pub prime: Option<u64>,
    /// 0-based indices of the proper-power relators used.
    pub relators: Vec<usize>,
}

fn smallest_prime_factor(k: u64) -> u64 {
    (2..)
        .find(|p| k % p == 0 || p * p > k)
        .map_or(k, |p| if k % p == 0 { p } else { k })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A certificate that Sigma^1 is empty, when the counts of generators,
/// relators and proper powers force it.
pub fn emptiness_by_deficiency(p: &Presentation) -> Option<DeficiencyCertificate> {
    let (m, n) = (p.n_gens(), p.relators().len());
    if n + 2 <= m {
        return Some(DeficiencyCertificate {
            case: DeficiencyCase::I,
            prime: None,
            relators: vec![],
        });
    }
    let powers: Vec<(usize, u64)> = p
        .relators()
        .iter()
        .enumerate()
        .map(|(i, r)| (i, r.root_power().1 as u64))
        .filter(|&(_, k)| k >= 2)
        .collect();
    if n + 1 == m {
        if let Some(&(i, k)) = powers.first() {
            return Some(DeficiencyCertificate {
                case: DeficiencyCase::Ii,
                prime: Some(smallest_prime_factor(k)),
                relators: vec![i],
            });
        }
    }
    if n == m {
        let mut best: Option<DeficiencyCertificate> = None;
        for (a, &(i, ki)) in powers.iter().enumerate() {
            for &(j, kj) in &powers[a + 1..] {
                let g = gcd(ki, kj);
                if g > 1 {
                    let prime = smallest_prime_factor(g);
                    if best.as_ref().is_none_or(|c| c.prime > Some(prime)) {
                        best = Some(DeficiencyCertificate {
                            case: DeficiencyCase::Iii,
                            prime: Some(prime),
                            relators: vec![i, j],
                        });
                    }
                }
            }
        }
        return best;
    }
    None
}
