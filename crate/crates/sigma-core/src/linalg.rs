//! Exact linear algebra over the rationals and the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `3`, `-2`, `3/2` or `-7/4`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::input("characters", format!("`{s}` is not an exact rational"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::input(
                    "characters",
                    format!("zero denominator in `{s}`"),
                ));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn to_q_rows(rows: &[Vec<i64>]) -> Vec<Vec<Q>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect()
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Q>]) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    rref(rows).1.len()
}

pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    rank(&to_q_rows(rows))
}

/// Basis of `{v : M v = 0}` for the matrix with the given rows and `ncols` columns.
pub fn kernel(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (r, pivots) = rref(rows);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn dot_q(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_qi(a: &[Q], b: &[i64]) -> Q {
    a.iter().zip(b).map(|(x, &y)| x * q(y)).sum()
}

/// Scales a rational vector to a primitive integer vector with the same ray.
/// The zero vector maps to zeros.
pub fn primitive_ints(v: &[Q]) -> Result<Vec<i64>> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Q::from_integer(l.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Ok(vec![0; v.len()]);
    }
    ints.iter()
        .map(|x| {
            (x / &g)
                .to_i64()
                .ok_or_else(|| Error::overflow("characters", "normalizing a direction"))
        })
        .collect()
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Nonzero invariant factors d1 | d2 | ... of an integer matrix (Smith normal form).
pub fn smith_invariants(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let nr = m.len();
    let nc = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..nr {
            if !m[i][t].is_zero() {
                let f = m[i][t].div_floor(&m[t][t]);
                for j in t..nc {
                    let d = &f * &m[t][j];
                    m[i][j] -= d;
                }
                dirty |= !m[i][t].is_zero();
            }
        }
        for j in t + 1..nc {
            if !m[t][j].is_zero() {
                let f = m[t][j].div_floor(&m[t][t]);
                for i in t..nr {
                    let d = &f * &m[i][t];
                    m[i][j] -= d;
                }
                dirty |= !m[t][j].is_zero();
            }
        }
        if dirty {
            continue;
        }
        let p = m[t][t].clone();
        let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !m[i][j].is_multiple_of(&p)));
        if let Some(i) = bad {
            for j in t..nc {
                let v = m[i][j].clone();
                m[t][j] += v;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

/// A subspace of Q^n stored as its reduced echelon basis with every row scaled
/// to a primitive integer vector (positive pivot). Equal subspaces have equal bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubspaceQ {
    n: usize,
    basis: Vec<Vec<i64>>,
}

impl SubspaceQ {
    pub fn new(n: usize, spanning: &[Vec<i64>]) -> Result<Self> {
        for r in spanning {
            if r.len() != n {
                return Err(Error::Dimension {
                    module: "combinators",
                    expected: n,
                    got: r.len(),
                });
            }
        }
        Self::from_q(n, &to_q_rows(spanning))
    }

    pub fn from_q(n: usize, spanning: &[Vec<Q>]) -> Result<Self> {
        let (r, _) = rref(spanning);
        let basis = r
            .iter()
            .map(|row| primitive_ints(row))
            .collect::<Result<Vec<_>>>()?;
        Ok(SubspaceQ { n, basis })
    }

    pub fn zero(n: usize) -> Self {
        SubspaceQ {
            n,
            basis: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        SubspaceQ {
            n,
            basis: (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    /// Span of the given coordinate vectors.
    pub fn coordinate(n: usize, coords: &[usize]) -> Self {
        let mut c: Vec<usize> = coords.to_vec();
        c.sort_unstable();
        c.dedup();
        SubspaceQ {
            n,
            basis: c
                .iter()
                .map(|&i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.n
    }

    pub fn sum(&self, other: &SubspaceQ) -> Result<SubspaceQ> {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        SubspaceQ::new(self.n, &rows)
    }

    pub fn sum_dim(&self, other: &SubspaceQ) -> usize {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        rank_int(&rows)
    }

    pub fn contains_subspace(&self, other: &SubspaceQ) -> bool {
        self.sum_dim(other) == self.dim()
    }

    pub fn contains_vector(&self, v: &[Q]) -> bool {
        let mut rows = to_q_rows(&self.basis);
        rows.push(v.to_vec());
        rank(&rows) == self.dim()
    }

    /// True when the integer vector `d` is orthogonal to the whole subspace,
    /// i.e. the character `d` vanishes on it.
    pub fn annihilated_by(&self, d: &[i64]) -> bool {
        self.basis.iter().all(|u| {
            u.iter()
                .zip(d)
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum::<i128>()
                == 0
        })
    }

    /// Embeds into Q^(offset + n + extra) by placing coordinates at `offset`.
    pub fn embed(&self, offset: usize, total: usize) -> SubspaceQ {
        SubspaceQ {
            n: total,
            basis: self
                .basis
                .iter()
                .map(|r| {
                    let mut v = vec![0; total];
                    v[offset..offset + r.len()].copy_from_slice(r);
                    v
                })
                .collect(),
        }
    }
}

impl fmt::Display for SubspaceQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| {
                format!(
                    "({})",
                    r.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = to_q_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            assert!(dot_q(row, &k[0]).is_zero());
        }
        assert_eq!(kernel(&[], 2).len(), 2);
    }

    #[test]
    fn smith_examples() {
        assert_eq!(
            smith_invariants(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        assert_eq!(smith_invariants(&[vec![0, 0]]), Vec::<BigInt>::new());
        assert_eq!(
            smith_invariants(&[vec![4, 0], vec![0, 6]]),
            vec![BigInt::from(2), BigInt::from(12)]
        );
    }

    #[test]
    fn primitive() {
        assert_eq!(
            primitive_ints(&[q_frac(3, 2), q(-1), q(0)]).unwrap(),
            vec![3, -2, 0]
        );
        assert_eq!(primitive_ints(&[q(4), q(-6)]).unwrap(), vec![2, -3]);
    }

    #[test]
    fn subspace_canonical() {
        let a = SubspaceQ::new(3, &[vec![1, 1, 0], vec![0, 2, 2]]).unwrap();
        let b = SubspaceQ::new(3, &[vec![1, 0, -1], vec![3, 3, 0], vec![1, 2, 1]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.annihilated_by(&[1, -1, 1]));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("3/2").unwrap(), q_frac(3, 2));
        assert_eq!(parse_rational("-4").unwrap(), q(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
