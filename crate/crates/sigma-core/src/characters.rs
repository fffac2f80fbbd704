//! Characters G -> R with exact rational values, sphere directions, tracks of
//! words, and the band reordering of a sequence of increments.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, dot_qi, parse_rational, primitive_ints, q, Q};
use crate::words::{Letter, Presentation, Word};

/// A character, given by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    values: Vec<Q>,
}

impl Character {
    pub fn new(values: Vec<Q>) -> Self {
        Character { values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Character {
            values: values.iter().map(|&x| q(x)).collect(),
        }
    }

    /// Parses a comma separated list of exact rationals, e.g. `3/2,-1,0`.
    pub fn parse(list: &str) -> Result<Self> {
        let values = list
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(Character { values })
    }

    /// Checks the dimension and that every relator is killed.
    pub fn on_presentation(p: &Presentation, values: Vec<Q>) -> Result<Self> {
        let chi = Character { values };
        chi.validate(p)?;
        Ok(chi)
    }

    pub fn validate(&self, p: &Presentation) -> Result<()> {
        self.check_dim(p.n_gens(), "characters")?;
        for (i, row) in p.exponent_matrix().iter().enumerate() {
            if !dot_qi(&self.values, row).is_zero() {
                return Err(Error::precondition(
                    "characters",
                    format!("the character does not vanish on relator {}", i + 1),
                ));
            }
        }
        Ok(())
    }

    pub fn check_dim(&self, n: usize, module: &'static str) -> Result<()> {
        if self.values.len() != n {
            return Err(Error::Dimension {
                module,
                expected: n,
                got: self.values.len(),
            });
        }
        Ok(())
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn gen_value(&self, g: usize) -> &Q {
        &self.values[g]
    }

    pub fn letter_value(&self, l: Letter) -> Q {
        if l.sign == 1 {
            self.values[l.gen].clone()
        } else {
            -self.values[l.gen].clone()
        }
    }

    pub fn eval(&self, w: &Word) -> Q {
        w.letters().iter().map(|&l| self.letter_value(l)).sum()
    }

    pub fn scaled(&self, factor: &Q) -> Character {
        Character {
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn negated(&self) -> Character {
        Character {
            values: self.values.iter().map(|v| -v.clone()).collect(),
        }
    }

    pub fn direction(&self) -> Result<Direction> {
        if self.is_zero() {
            return Err(Error::precondition(
                "characters",
                "the zero character has no direction",
            ));
        }
        Ok(Direction(primitive_ints(&self.values)?))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

/// A point [chi] of the character sphere, stored as a primitive integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Direction(Vec<i64>);

impl Direction {
    /// Normalizes a nonzero integer vector by its gcd.
    pub fn new(v: Vec<i64>) -> Result<Self> {
        let g = linalg::gcd_slice(&v);
        if g == 0 {
            return Err(Error::input(
                "characters",
                "a direction must be a nonzero vector",
            ));
        }
        Ok(Direction(v.into_iter().map(|x| x / g).collect()))
    }

    pub fn from_rationals(v: &[Q]) -> Result<Self> {
        Character::new(v.to_vec()).direction()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn antipode(&self) -> Direction {
        Direction(self.0.iter().map(|x| -x).collect())
    }

    pub fn to_character(&self) -> Character {
        Character::from_ints(&self.0)
    }
}

impl TryFrom<Vec<i64>> for Direction {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        let d = Direction::new(v.clone())?;
        if d.0 != v {
            return Err(Error::input(
                "characters",
                "direction vector is not primitive",
            ));
        }
        Ok(d)
    }
}

impl From<Direction> for Vec<i64> {
    fn from(d: Direction) -> Vec<i64> {
        d.0
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

/// Rank of the abelianization and a basis of the rational character space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub torsion_free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    pub character_basis: Vec<Vec<Q>>,
}

pub fn abelianization(p: &Presentation) -> Abelianization {
    let n = p.n_gens();
    let m = p.exponent_matrix();
    let basis = linalg::kernel(&linalg::to_q_rows(m), n);
    let torsion = linalg::smith_invariants(m)
        .into_iter()
        .filter(|d| d > &BigInt::from(1))
        .collect();
    Abelianization {
        torsion_free_rank: basis.len(),
        torsion,
        character_basis: basis,
    }
}

/// Prefix values chi(s1), chi(s1 s2), ..., chi(s1...sk); the empty prefix is excluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Track(Vec<Q>);

impl Track {
    pub fn values(&self) -> &[Q] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn track(w: &Word, chi: &Character) -> Result<Track> {
    if let Some(g) = w.max_gen() {
        if g >= chi.dim() {
            return Err(Error::Dimension {
                module: "characters",
                expected: chi.dim(),
                got: g + 1,
            });
        }
    }
    let mut acc = Q::zero();
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        acc += chi.letter_value(l);
        out.push(acc.clone());
    }
    Ok(Track(out))
}

/// min(0, all prefix values).
pub fn v_chi(w: &Word, chi: &Character) -> Result<Q> {
    let t = track(w, chi)?;
    Ok(t.0
        .into_iter()
        .fold(Q::zero(), |m, x| if x < m { x } else { m }))
}

/// Minimum of a track read on the circle Z/kZ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicMinStats {
    pub min_value: Q,
    /// 1-based positions attaining the minimum, increasing.
    pub positions: Vec<usize>,
    pub multiplicity: usize,
    /// The positions form one cyclically contiguous block (k and 1 are adjacent).
    pub consecutive: bool,
}

pub fn cyclic_min_stats(t: &Track) -> Result<CyclicMinStats> {
    let k = t.len();
    if k == 0 {
        return Err(Error::precondition(
            "characters",
            "cyclic minimum of an empty track",
        ));
    }
    let min = t.0.iter().min().unwrap().clone();
    let hit: Vec<bool> = t.0.iter().map(|x| *x == min).collect();
    let positions: Vec<usize> = (0..k).filter(|&i| hit[i]).map(|i| i + 1).collect();
    let multiplicity = positions.len();
    let block_starts = (0..k).filter(|&i| hit[i] && !hit[(i + k - 1) % k]).count();
    Ok(CyclicMinStats {
        min_value: min,
        consecutive: multiplicity == k || block_starts == 1,
        positions,
        multiplicity,
    })
}

/// The character g -> chi(phi(g)) for a map phi given by the images of the generators.
pub fn pullback(chi: &Character, images: &[Word]) -> Result<Character> {
    let values = images
        .iter()
        .map(|w| {
            if let Some(g) = w.max_gen() {
                if g >= chi.dim() {
                    return Err(Error::Dimension {
                        module: "characters",
                        expected: chi.dim(),
                        got: g + 1,
                    });
                }
            }
            Ok(chi.eval(w))
        })
        .collect::<Result<Vec<_>>>()?;
    let out = Character::new(values);
    if out.is_zero() {
        return Err(Error::ZeroPullback);
    }
    Ok(out)
}

/// Finds an order of the increments `f` such that every partial sum `c + f_{pi(1)} + ... + f_{pi(k)}`
/// stays in `[0, b]`. Requires `b >= 2 max|f_j|`, `c` in `[0, b]` and `c + sum f` in `[0, b]`.
pub fn reorder_within_band(f: &[Q], c: &Q, b: &Q) -> Result<Vec<usize>> {
    let zero = Q::zero();
    let max = f.iter().map(|x| x.abs()).max().unwrap_or_default();
    let total: Q = c + f.iter().sum::<Q>();
    if *b < &max * q(2) {
        return Err(Error::precondition(
            "characters",
            "band width is below twice the largest increment",
        ));
    }
    if *c < zero || c > b || total < zero || &total > b {
        return Err(Error::precondition(
            "characters",
            "start value and final value must lie in the band",
        ));
    }
    let half = b / q(2);
    let mut rest: Vec<usize> = (0..f.len()).collect();
    let mut order = Vec::with_capacity(f.len());
    let mut cur = c.clone();
    while !rest.is_empty() {
        let (plus, minus): (Vec<usize>, Vec<usize>) = rest.iter().partition(|&&j| f[j] >= zero);
        if cur <= half {
            let s_plus: Q = plus.iter().map(|&j| &f[j]).sum();
            if &cur + &s_plus <= *b {
                order.extend(plus);
                order.extend(minus);
                break;
            }
            // climb above the middle, then continue with what is left
            let mut used = 0;
            for &j in &plus {
                cur += &f[j];
                order.push(j);
                used += 1;
                if cur > half {
                    break;
                }
            }
            rest = plus[used..].iter().chain(&minus).copied().collect();
        } else {
            let s_minus: Q = minus.iter().map(|&j| &f[j]).sum();
            if &cur + &s_minus >= zero {
                order.extend(minus);
                order.extend(plus);
                break;
            }
            let mut used = 0;
            for &j in &minus {
                cur += &f[j];
                order.push(j);
                used += 1;
                if cur <= half {
                    break;
                }
            }
            rest = plus.iter().chain(&minus[used..]).copied().collect();
        }
    }
    Ok(order)
}

/// Checks that the order keeps all partial sums in `[0, b]`.
pub fn band_order_is_valid(f: &[Q], c: &Q, b: &Q, order: &[usize]) -> bool {
    let mut seen = vec![false; f.len()];
    let mut cur = c.clone();
    for &j in order {
        if j >= f.len() || seen[j] {
            return false;
        }
        seen[j] = true;
        cur += &f[j];
        if cur < Q::zero() || &cur > b {
            return false;
        }
    }
    seen.iter().all(|&s| s)
}
