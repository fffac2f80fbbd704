//! Exact group models and the finite Cayley-ball certificate search.
//!
//! A certificate is a generator-or-inverse t with chi(t) > 0 and, for every
//! letter y, a word w_y with t w_y = y t in G whose path from t stays strictly
//! above min(0, chi(y)). A certificate proves membership; its absence proves
//! nothing.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{v_chi, Character};
use crate::error::{Error, Result};
use crate::linalg::{dot_qi, Q};
use crate::raag::{self, SimpleGraph};
use crate::words::{default_names, Letter, Word};

/// Exact arithmetic on a finitely generated group. Elements are canonical:
/// two elements are equal iff they are equal as values of `Elem`.
pub trait GroupModel: Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> String;
    fn n_gens(&self) -> usize;
    fn generator_names(&self) -> Vec<String> {
        default_names(self.n_gens())
    }
    fn identity(&self) -> Self::Elem;
    fn letter(&self, l: Letter) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// Integer relations among generator exponents in the abelianization;
    /// a character must be orthogonal to each row.
    fn character_relations(&self) -> Vec<Vec<i64>>;

    fn normal_form(&self, w: &Word) -> Self::Elem {
        w.letters()
            .iter()
            .fold(self.identity(), |acc, &l| self.mul(&acc, &self.letter(l)))
    }
}

#[derive(Clone, Debug)]
pub struct FreeAbelian {
    pub n: usize,
}

impl GroupModel for FreeAbelian {
    type Elem = Vec<i64>;

    fn name(&self) -> String {
        format!("abelian:{}", self.n)
    }
    fn n_gens(&self) -> usize {
        self.n
    }
    fn identity(&self) -> Vec<i64> {
        vec![0; self.n]
    }
    fn letter(&self, l: Letter) -> Vec<i64> {
        let mut v = vec![0; self.n];
        v[l.gen] = l.sign as i64;
        v
    }
    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn inv(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }
    fn character_relations(&self) -> Vec<Vec<i64>> {
        vec![]
    }
}

/// Free group; elements are freely reduced words.
#[derive(Clone, Debug)]
pub struct Free {
    pub n: usize,
}

impl GroupModel for Free {
    type Elem = Word;

    fn name(&self) -> String {
        format!("free:{}", self.n)
    }
    fn n_gens(&self) -> usize {
        self.n
    }
    fn identity(&self) -> Word {
        Word::empty()
    }
    fn letter(&self, l: Letter) -> Word {
        Word::new(vec![l])
    }
    fn mul(&self, a: &Word, b: &Word) -> Word {
        a.concat(b).reduce()
    }
    fn inv(&self, a: &Word) -> Word {
        a.invert()
    }
    fn character_relations(&self) -> Vec<Vec<i64>> {
        vec![]
    }
    fn normal_form(&self, w: &Word) -> Word {
        w.reduce()
    }
}

/// Right-angled Artin group; elements are shortlex-least reduced words.
#[derive(Clone, Debug)]
pub struct Raag {
    pub label: String,
    pub graph: SimpleGraph,
}

impl Raag {
    fn commute(&self, a: Letter, b: Letter) -> bool {
        a.gen == b.gen || self.graph.adjacent(a.gen, b.gen)
    }

    /// Appends a letter to a reduced word, cancelling against an inverse that
    /// can be shuffled to the end.
    fn push_reduced(&self, w: &mut Vec<Letter>, l: Letter) {
        for i in (0..w.len()).rev() {
            let x = w[i];
            if x.gen == l.gen {
                if x.cancels(l) {
                    w.remove(i);
                    return;
                }
                break;
            }
            if !self.commute(x, l) {
                break;
            }
        }
        w.push(l);
    }

    /// Lexicographically least rearrangement of a reduced word by commutations.
    fn lex_least(&self, mut w: Vec<Letter>) -> Vec<Letter> {
        let mut out = Vec::with_capacity(w.len());
        while !w.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..w.len() {
                let free = w[..i]
                    .iter()
                    .all(|&x| x.gen != w[i].gen && self.commute(x, w[i]));
                if free && best.is_none_or(|b| w[i] < w[b]) {
                    best = Some(i);
                }
            }
            let b = best.expect("the first letter is always available");
            out.push(w.remove(b));
        }
        out
    }
}

impl GroupModel for Raag {
    type Elem = Word;

    fn name(&self) -> String {
        format!("raag:{}", self.label)
    }
    fn n_gens(&self) -> usize {
        self.graph.n_vertices()
    }
    fn identity(&self) -> Word {
        Word::empty()
    }
    fn letter(&self, l: Letter) -> Word {
        Word::new(vec![l])
    }
    fn mul(&self, a: &Word, b: &Word) -> Word {
        let mut w = a.letters().to_vec();
        for &l in b.letters() {
            self.push_reduced(&mut w, l);
        }
        Word::new(self.lex_least(w))
    }
    fn inv(&self, a: &Word) -> Word {
        self.normal_form(&a.invert())
    }
    fn character_relations(&self) -> Vec<Vec<i64>> {
        vec![]
    }
    fn normal_form(&self, w: &Word) -> Word {
        let mut r = Vec::new();
        for &l in w.letters() {
            self.push_reduced(&mut r, l);
        }
        Word::new(self.lex_least(r))
    }
}

/// The metabelian group Z[1/pq] x| <s>, s acting by multiplication by p/q,
/// generated by a = (1, s^0) and t = (0, s).
#[derive(Clone, Debug)]
pub struct Gpq {
    pub p: i64,
    pub q: i64,
}

impl Gpq {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 || q == 0 || p.gcd(&q) != 1 {
            return Err(Error::input(
                "oracle",
                format!("gpq needs nonzero coprime integers, got {p}, {q}"),
            ));
        }
        Ok(Gpq { p, q })
    }

    fn ratio_pow(&self, m: i64) -> Q {
        let r = Q::new(BigInt::from(self.p), BigInt::from(self.q));
        if m >= 0 {
            num_traits::pow(r, m as usize)
        } else {
            num_traits::pow(r.recip(), m.unsigned_abs() as usize)
        }
    }
}

impl GroupModel for Gpq {
    type Elem = (Q, i64);

    fn name(&self) -> String {
        format!("gpq:{},{}", self.p, self.q)
    }
    fn n_gens(&self) -> usize {
        2
    }
    fn generator_names(&self) -> Vec<String> {
        vec!["a".into(), "t".into()]
    }
    fn identity(&self) -> (Q, i64) {
        (Q::zero(), 0)
    }
    fn letter(&self, l: Letter) -> (Q, i64) {
        let g = match l.gen {
            0 => (Q::one(), 0),
            _ => (Q::zero(), 1),
        };
        if l.sign == 1 {
            g
        } else {
            self.inv(&g)
        }
    }
    fn mul(&self, a: &(Q, i64), b: &(Q, i64)) -> (Q, i64) {
        (&a.0 + self.ratio_pow(a.1) * &b.0, a.1 + b.1)
    }
    fn inv(&self, a: &(Q, i64)) -> (Q, i64) {
        (-(self.ratio_pow(-a.1) * &a.0), -a.1)
    }
    fn character_relations(&self) -> Vec<Vec<i64>> {
        if self.p == self.q {
            vec![]
        } else {
            vec![vec![self.q - self.p, 0]]
        }
    }
}

/// A parsed `--model` argument.
#[derive(Clone, Debug)]
pub enum ModelSpec {
    FreeAbelian(FreeAbelian),
    Free(Free),
    Raag(Raag),
    Gpq(Gpq),
}

impl ModelSpec {
    /// `abelian:N`, `free:N`, `gpq:P,Q` or `raag:GRAPH` with a named graph.
    pub fn parse(spec: &str) -> Result<Self> {
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| Error::input("oracle", format!("model '{spec}' has no ':'")))?;
        let count = |s: &str| -> Result<usize> {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::input("oracle", format!("bad generator count '{s}'")))
        };
        match kind.trim() {
            "abelian" => Ok(ModelSpec::FreeAbelian(FreeAbelian { n: count(arg)? })),
            "free" => Ok(ModelSpec::Free(Free { n: count(arg)? })),
            "gpq" => {
                let parts: Vec<&str> = arg.split(',').collect();
                if parts.len() != 2 {
                    return Err(Error::input("oracle", "gpq needs two integers p,q"));
                }
                let int = |s: &str| -> Result<i64> {
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::input("oracle", format!("bad integer '{s}'")))
                };
                Ok(ModelSpec::Gpq(Gpq::new(int(parts[0])?, int(parts[1])?)?))
            }
            "raag" => Ok(ModelSpec::Raag(Raag {
                label: arg.trim().to_string(),
                graph: raag::named_graph(arg.trim())?,
            })),
            other => Err(Error::input(
                "oracle",
                format!("unknown model kind '{other}'"),
            )),
        }
    }

    pub fn n_gens(&self) -> usize {
        match self {
            ModelSpec::FreeAbelian(m) => m.n_gens(),
            ModelSpec::Free(m) => m.n_gens(),
            ModelSpec::Raag(m) => m.n_gens(),
            ModelSpec::Gpq(m) => m.n_gens(),
        }
    }

    pub fn search(&self, chi: &Character, radius: usize) -> Result<SearchOutcome> {
        match self {
            ModelSpec::FreeAbelian(m) => certificate_search(m, chi, radius),
            ModelSpec::Free(m) => certificate_search(m, chi, radius),
            ModelSpec::Raag(m) => certificate_search(m, chi, radius),
            ModelSpec::Gpq(m) => certificate_search(m, chi, radius),
        }
    }

    pub fn probe(&self, chi: &Character, radius: usize, lo: &Q, hi: &Q) -> Result<ProbeReport> {
        match self {
            ModelSpec::FreeAbelian(m) => connectivity_probe(m, chi, radius, lo, hi),
            ModelSpec::Free(m) => connectivity_probe(m, chi, radius, lo, hi),
            ModelSpec::Raag(m) => connectivity_probe(m, chi, radius, lo, hi),
            ModelSpec::Gpq(m) => connectivity_probe(m, chi, radius, lo, hi),
        }
    }

    /// Known membership of [chi] for the shipped models.
    pub fn ground_truth(&self, chi: &Character) -> Result<bool> {
        check_character(self.relations().as_slice(), self.n_gens(), chi)?;
        match self {
            ModelSpec::FreeAbelian(_) => Ok(true),
            ModelSpec::Free(m) => Ok(m.n <= 1),
            ModelSpec::Raag(m) => raag::raag_point_test(&m.graph, chi),
            ModelSpec::Gpq(m) => {
                if m.p == m.q {
                    return Ok(true);
                }
                if chi.gen_value(1).is_positive() {
                    Ok(m.p.abs() == 1)
                } else {
                    Ok(m.q.abs() == 1)
                }
            }
        }
    }

    fn relations(&self) -> Vec<Vec<i64>> {
        match self {
            ModelSpec::FreeAbelian(m) => m.character_relations(),
            ModelSpec::Free(m) => m.character_relations(),
            ModelSpec::Raag(m) => m.character_relations(),
            ModelSpec::Gpq(m) => m.character_relations(),
        }
    }
}

/// Values recorded for reference only; no model is shipped for these groups.
pub const DOCUMENTED_ONLY: &[(&str, &str)] = &[(
    "Houghton group G_m, m > 2",
    "the complement of Sigma^1 is the m rank 1 points [-chi_1], ..., [-chi_m]",
)];

fn check_character(relations: &[Vec<i64>], n: usize, chi: &Character) -> Result<()> {
    chi.check_dim(n, "oracle")?;
    if chi.is_zero() {
        return Err(Error::precondition("oracle", "the character is zero"));
    }
    for r in relations {
        if !dot_qi(chi.values(), r).is_zero() {
            return Err(Error::precondition(
                "oracle",
                "the character does not vanish on a relation of the model",
            ));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub t: Letter,
    pub paths: Vec<(Letter, Word)>,
}

impl Certificate {
    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        let paths: BTreeMap<String, String> = self
            .paths
            .iter()
            .map(|(y, w)| (y.display_with(names), w.display_with(names)))
            .collect();
        serde_json::json!({ "t": self.t.display_with(names), "paths": paths })
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub radius: usize,
    pub certificate: Option<Certificate>,
    /// Letters for which no path was found within the radius.
    pub missing: Vec<Letter>,
}

/// Deterministic choice of t: the letter with the largest value, lowest index first.
pub fn choose_t(chi: &Character) -> Option<Letter> {
    let mut best: Option<(Letter, Q)> = None;
    for l in Letter::alphabet(chi.dim()) {
        let v = chi.letter_value(l);
        if v.is_positive() && best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((l, v));
        }
    }
    best.map(|(l, _)| l)
}

type Node<E> = (E, Option<(usize, Letter)>, Q, usize);

fn find_path<M: GroupModel>(
    model: &M,
    chi: &Character,
    t: Letter,
    y: Letter,
    radius: usize,
) -> Option<Word> {
    let bound = chi.letter_value(y).min(Q::zero());
    let start = model.letter(t);
    let target = model.mul(&model.letter(y), &start);
    let letters = Letter::alphabet(model.n_gens());
    // (element, parent and step, level, depth)
    let mut nodes: Vec<Node<M::Elem>> = vec![(start.clone(), None, chi.letter_value(t), 0)];
    let mut seen: HashMap<M::Elem, usize> = HashMap::new();
    seen.insert(start, 0);
    let mut queue = VecDeque::from([0usize]);
    let rebuild = |nodes: &[Node<M::Elem>], mut i: usize| {
        let mut w = Vec::new();
        while let Some((p, l)) = nodes[i].1 {
            w.push(l);
            i = p;
        }
        w.reverse();
        Word::new(w)
    };
    if nodes[0].0 == target {
        return Some(Word::empty());
    }
    while let Some(i) = queue.pop_front() {
        if nodes[i].3 >= radius {
            continue;
        }
        for &l in &letters {
            let level = &nodes[i].2 + chi.letter_value(l);
            if level <= bound {
                continue;
            }
            let e = model.mul(&nodes[i].0, &model.letter(l));
            if seen.contains_key(&e) {
                continue;
            }
            let depth = nodes[i].3 + 1;
            nodes.push((e.clone(), Some((i, l)), level, depth));
            let j = nodes.len() - 1;
            if e == target {
                return Some(rebuild(&nodes, j));
            }
            seen.insert(e, j);
            queue.push_back(j);
        }
    }
    None
}

/// Breadth-first search for a certificate within words of length <= radius.
pub fn certificate_search<M: GroupModel>(
    model: &M,
    chi: &Character,
    radius: usize,
) -> Result<SearchOutcome> {
    check_character(&model.character_relations(), model.n_gens(), chi)?;
    if radius == 0 {
        return Err(Error::input("oracle", "radius must be at least 1"));
    }
    let t = choose_t(chi).ok_or_else(|| {
        Error::precondition("oracle", "no generator-or-inverse has positive value")
    })?;
    let letters = Letter::alphabet(model.n_gens());
    let found: Vec<(Letter, Option<Word>)> = letters
        .par_iter()
        .map(|&y| (y, find_path(model, chi, t, y, radius)))
        .collect();
    let missing: Vec<Letter> = found
        .iter()
        .filter(|(_, w)| w.is_none())
        .map(|(y, _)| *y)
        .collect();
    let certificate = if missing.is_empty() {
        let cert = Certificate {
            t,
            paths: found.into_iter().map(|(y, w)| (y, w.unwrap())).collect(),
        };
        if !verify_certificate(model, chi, &cert)? {
            return Err(Error::precondition(
                "oracle",
                "internal error: a found certificate failed re-verification",
            ));
        }
        Some(cert)
    } else {
        None
    };
    Ok(SearchOutcome {
        radius,
        certificate,
        missing,
    })
}

/// Independent check of every condition of a certificate.
pub fn verify_certificate<M: GroupModel>(
    model: &M,
    chi: &Character,
    cert: &Certificate,
) -> Result<bool> {
    if !chi.letter_value(cert.t).is_positive() {
        return Ok(false);
    }
    let letters = Letter::alphabet(model.n_gens());
    if cert.paths.len() != letters.len()
        || cert.paths.iter().zip(&letters).any(|((y, _), l)| y != l)
    {
        return Ok(false);
    }
    for (y, w) in &cert.paths {
        let lhs = model.normal_form(&Word::new(vec![cert.t]).concat(w));
        let rhs = model.normal_form(&Word::new(vec![*y, cert.t]));
        if lhs != rhs {
            return Ok(false);
        }
        let left = chi.letter_value(cert.t) + v_chi(w, chi)?;
        let right = v_chi(&Word::new(vec![*y]), chi)?;
        if left <= right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Diagnostic only: components of the band slice of a finite ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub radius: usize,
    pub vertices: usize,
    pub components: usize,
    pub identity_component_size: usize,
    /// Sizes of the components, largest first, with whether they reach the ball's boundary.
    pub component_sizes: Vec<(usize, bool)>,
}

pub fn connectivity_probe<M: GroupModel>(
    model: &M,
    chi: &Character,
    radius: usize,
    lo: &Q,
    hi: &Q,
) -> Result<ProbeReport> {
    check_character(&model.character_relations(), model.n_gens(), chi)?;
    if lo > hi {
        return Err(Error::input("oracle", "empty band"));
    }
    let letters = Letter::alphabet(model.n_gens());
    let mut elems: Vec<(M::Elem, Q, usize)> = vec![(model.identity(), Q::zero(), 0)];
    let mut index: HashMap<M::Elem, usize> = HashMap::new();
    index.insert(model.identity(), 0);
    let mut edges = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        let (e, level, depth) = elems[i].clone();
        for &l in &letters {
            let f = model.mul(&e, &model.letter(l));
            if let Some(&j) = index.get(&f) {
                edges.push((i, j));
            } else if depth < radius {
                let j = elems.len();
                elems.push((f.clone(), &level + chi.letter_value(l), depth + 1));
                index.insert(f, j);
                edges.push((i, j));
            }
        }
        i += 1;
    }
    let inside: Vec<bool> = elems.iter().map(|(_, v, _)| v >= lo && v <= hi).collect();
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in &edges {
        if inside[a] && inside[b] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let mut comps: BTreeMap<usize, (usize, bool)> = BTreeMap::new();
    for v in 0..elems.len() {
        if inside[v] {
            let r = find(&mut parent, v);
            let c = comps.entry(r).or_insert((0, false));
            c.0 += 1;
            c.1 |= elems[v].2 == radius;
        }
    }
    let identity_component_size = if inside[0] {
        let r = find(&mut parent, 0);
        comps[&r].0
    } else {
        0
    };
    let mut component_sizes: Vec<(usize, bool)> = comps.into_values().collect();
    component_sizes.sort_by(|a, b| b.cmp(a));
    Ok(ProbeReport {
        radius,
        vertices: inside.iter().filter(|&&b| b).count(),
        components: component_sizes.len(),
        identity_component_size,
        component_sizes,
    })
}
