//! Words over a finite generating set, free and cyclic reduction, and the
//! presentation data model with its text parser.

use std::fmt;

use crate::error::{Error, Result};

/// A generator or the inverse of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    /// +1 or -1.
    pub sign: i8,
}

impl Letter {
    pub fn new(gen: usize, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "letter sign must be +1 or -1");
        Letter { gen, sign }
    }

    pub fn pos(gen: usize) -> Self {
        Letter { gen, sign: 1 }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, sign: -1 }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            sign: -self.sign,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign == -other.sign
    }

    /// All letters x_0, x_0^-1, x_1, x_1^-1, ... of a rank `n` alphabet.
    pub fn alphabet(n: usize) -> Vec<Letter> {
        (0..n)
            .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
            .collect()
    }

    pub fn display_with(self, names: &[String]) -> String {
        let name = names
            .get(self.gen)
            .cloned()
            .unwrap_or_else(|| format!("x{}", self.gen));
        if self.sign == 1 {
            name
        } else {
            format!("{name}^-1")
        }
    }
}

/// A word in the letters; a^2 is stored as two letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from (generator, exponent) syllables.
    pub fn from_syllables(syllables: &[(usize, i64)]) -> Self {
        let mut letters = Vec::new();
        for &(g, e) in syllables {
            let l = if e >= 0 {
                Letter::pos(g)
            } else {
                Letter::neg(g)
            };
            letters.extend(std::iter::repeat(l).take(e.unsigned_abs() as usize));
        }
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Free reduction.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&f), Some(&l)) if self.0.len() > 1 => !f.cancels(l),
                _ => true,
            }
    }

    /// Returns `(core, conjugator)` with `core` cyclically reduced and
    /// `conjugator * core * conjugator^-1` freely equal to `self`.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let r = self.reduce().0;
        let mut i = 0;
        let mut j = r.len();
        while j >= i + 2 && r[i].cancels(r[j - 1]) {
            i += 1;
            j -= 1;
        }
        (Word(r[i..j].to_vec()), Word(r[..i].to_vec()))
    }

    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Rotation moving the first `k` letters to the end; `k` is taken modulo the length.
    pub fn cyclic_permutation(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn exponent_vector(&self, n_gens: usize) -> Vec<i64> {
        let mut v = vec![0i64; n_gens];
        for l in &self.0 {
            v[l.gen] += l.sign as i64;
        }
        v
    }

    /// Generators occurring in the word, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.0.iter().map(|l| l.gen).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// Writes the word as `root^k` with `k` maximal, by period search on the
    /// cyclic word. Expects a cyclically reduced word.
    pub fn root_power(&self) -> (Word, usize) {
        let n = self.0.len();
        if n == 0 {
            return (Word::empty(), 1);
        }
        for d in 1..=n {
            if n % d == 0 && (0..n).all(|i| self.0[i] == self.0[(i + d) % n]) {
                return (Word(self.0[..d].to_vec()), n / d);
            }
        }
        unreachable!()
    }

    /// Least rotation in the derived letter order; identifies cyclic words.
    pub fn canonical_rotation(&self) -> Word {
        (0..self.0.len().max(1))
            .map(|k| self.cyclic_permutation(k))
            .min()
            .unwrap_or_default()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let name = names
                .get(l.gen)
                .cloned()
                .unwrap_or_else(|| format!("x{}", l.gen));
            let e = (j - i) as i64 * l.sign as i64;
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Generators and cyclically reduced relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
    exponent_matrix: Vec<Vec<i64>>,
}

impl Presentation {
    /// Relators are cyclically reduced; those reducing to the empty word are dropped.
    pub fn new(generator_names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if generator_names.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let n = generator_names.len();
        let mut stored = Vec::new();
        for r in relators {
            if let Some(g) = r.max_gen() {
                if g >= n {
                    return Err(Error::input(
                        "words",
                        format!("relator uses generator index {g} but only {n} generators exist"),
                    ));
                }
            }
            let (core, _) = r.cyclically_reduce();
            if !core.is_empty() {
                stored.push(core);
            }
        }
        let exponent_matrix = stored.iter().map(|r| r.exponent_vector(n)).collect();
        Ok(Presentation {
            generator_names,
            relators: stored,
            exponent_matrix,
        })
    }

    /// Generators named a, b, c, ... (x0, x1, ... beyond 26).
    pub fn with_default_names(n_gens: usize, relators: Vec<Word>) -> Result<Self> {
        Self::new(default_names(n_gens), relators)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn n_gens(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn exponent_matrix(&self) -> &[Vec<i64>] {
        &self.exponent_matrix
    }

    /// Parses a word written with this presentation's generator names.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut lx = Lexer::new(text);
        let mut w = Word::empty();
        loop {
            lx.skip_ws();
            if lx.at_end() {
                break;
            }
            parse_token(&mut lx, &self.generator_names, &mut w)?;
        }
        Ok(w)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.display_with(&self.generator_names))
            .collect();
        write!(
            f,
            "< {} | {} >",
            self.generator_names.join(" "),
            rels.join(", ")
        )
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if n <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

/// Parses `< gen+ | word (, word)* >`.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut lx = Lexer::new(text);
    lx.skip_ws();
    lx.expect('<')?;
    let mut names: Vec<String> = Vec::new();
    loop {
        lx.skip_ws();
        match lx.peek() {
            Some('|') => {
                lx.bump();
                break;
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let col = lx.column();
                let id = lx.ident();
                if names.contains(&id) {
                    return Err(Error::Syntax {
                        column: col,
                        message: format!("duplicate generator `{id}`"),
                    });
                }
                names.push(id);
            }
            Some(c) => return Err(lx.error(format!("expected generator name or `|`, found `{c}`"))),
            None => return Err(lx.error("unexpected end of input, expected `|`")),
        }
    }
    if names.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let mut relators = Vec::new();
    lx.skip_ws();
    if lx.peek() == Some('>') {
        lx.bump();
    } else {
        loop {
            let mut w = Word::empty();
            let mut tokens = 0;
            loop {
                lx.skip_ws();
                match lx.peek() {
                    Some(c) if c.is_ascii_alphabetic() => {
                        parse_token(&mut lx, &names, &mut w)?;
                        tokens += 1;
                    }
                    _ => break,
                }
            }
            if tokens == 0 {
                return Err(lx.error("expected a relator word"));
            }
            relators.push(w);
            lx.skip_ws();
            match lx.peek() {
                Some(',') => lx.bump(),
                Some('>') => {
                    lx.bump();
                    break;
                }
                Some(c) => return Err(lx.error(format!("expected `,` or `>`, found `{c}`"))),
                None => return Err(lx.error("unexpected end of input, expected `>`")),
            }
        }
    }
    lx.skip_ws();
    if !lx.at_end() {
        return Err(lx.error("trailing characters after `>`"));
    }
    Presentation::new(names, relators)
}

fn parse_token(lx: &mut Lexer, names: &[String], w: &mut Word) -> Result<()> {
    let col = lx.column();
    match lx.peek() {
        Some(c) if c.is_ascii_alphabetic() => {}
        Some(c) => return Err(lx.error(format!("expected generator name, found `{c}`"))),
        None => return Err(lx.error("unexpected end of input")),
    }
    let id = lx.ident();
    let gen = names
        .iter()
        .position(|n| *n == id)
        .ok_or_else(|| Error::UnknownGenerator(id.clone()))?;
    let mut exp: i64 = 1;
    if lx.peek() == Some('^') {
        lx.bump();
        exp = lx.signed_int()?;
    }
    if exp.unsigned_abs() > 1_000_000 {
        return Err(Error::Syntax {
            column: col,
            message: format!("exponent {exp} is too large"),
        });
    }
    let l = if exp >= 0 {
        Letter::pos(gen)
    } else {
        Letter::neg(gen)
    };
    for _ in 0..exp.unsigned_abs() {
        w.push(l);
    }
    Ok(())
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            column: self.column(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn signed_int(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected an integer exponent after `^`"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<i64>().map_err(|_| Error::Syntax {
            column: start + 1,
            message: format!("exponent `{s}` out of range"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[(usize, i64)]) -> Word {
        Word::from_syllables(s)
    }

    #[test]
    fn parse_commutator() {
        let p = parse_presentation("< a b | a b a^-1 b^-1 >").unwrap();
        assert_eq!(p.n_gens(), 2);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].len(), 4);
        assert_eq!(p.exponent_matrix()[0], vec![0, 0]);
    }

    #[test]
    fn parse_knot_8_20_relator() {
        let p = parse_presentation("< a b | a^2 b^2 a b^-2 a^-1 b a^-1 b^-2 a b^2 >").unwrap();
        assert_eq!(p.relators()[0].len(), 15);
        assert_eq!(p.exponent_matrix()[0], vec![2, 1]);
    }

    #[test]
    fn parse_free_rank_one() {
        let p = parse_presentation("< a | >").unwrap();
        assert_eq!(p.n_gens(), 1);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_presentation("< a b | a c >"),
            Err(Error::UnknownGenerator(ref s)) if s == "c"
        ));
        assert_eq!(parse_presentation("< | >"), Err(Error::EmptyGenerators));
        match parse_presentation("< a b | a ^ >") {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 11),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_presentation("< a b | a, >"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("< a a | >"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_presentation("< a b | a b"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn identifiers_are_case_sensitive() {
        let p = parse_presentation("< a A | a A^-1 >").unwrap();
        assert_eq!(p.n_gens(), 2);
        assert_eq!(p.exponent_matrix()[0], vec![1, -1]);
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w(&[(0, 1), (0, -1), (1, 1)]).reduce(), w(&[(1, 1)]));
        assert_eq!(Word::empty().reduce(), Word::empty());
        assert_eq!(w(&[(0, 1), (1, 1), (1, -1), (0, 1)]).reduce(), w(&[(0, 2)]));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (c, k) = w(&[(0, 1), (1, 1), (0, -1)]).cyclically_reduce();
        assert_eq!((c, k), (w(&[(1, 1)]), w(&[(0, 1)])));
        let comm = w(&[(1, 1), (0, 1), (1, -1), (0, -1)]);
        assert_eq!(comm.cyclically_reduce(), (comm.clone(), Word::empty()));
        let (c, k) = w(&[(0, 2), (1, 1), (0, -2)]).cyclically_reduce();
        assert_eq!((c, k), (w(&[(1, 1)]), w(&[(0, 2)])));
    }

    #[test]
    fn invert_rotate_exponents() {
        assert_eq!(w(&[(0, 1), (1, -1)]).invert(), w(&[(1, 1), (0, -1)]));
        assert_eq!(
            w(&[(0, 1), (1, 1), (2, 1)]).cyclic_permutation(1),
            w(&[(1, 1), (2, 1), (0, 1)])
        );
        let p = parse_presentation(
            "< a b | a^2 b a^-1 b^-2 a^-1 b a^-1 b^-1 a b^2 a b^-1 a b^2 a b^-1 a^-1 b a^-1 b^-2 a^-1 b >",
        )
        .unwrap();
        assert_eq!(p.relators()[0].len(), 27);
        assert_eq!(p.exponent_matrix()[0], vec![0, 1]);
    }

    #[test]
    fn proper_powers() {
        let c = w(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
        let sq = c.concat(&c);
        assert_eq!(sq.root_power(), (c.clone(), 2));
        assert_eq!(c.root_power().1, 1);
        assert_eq!(w(&[(1, 4)]).root_power(), (w(&[(1, 1)]), 4));
    }

    #[test]
    fn display_round_trip() {
        let p = parse_presentation("< a b | a^2 b^-3 a b >").unwrap();
        let again = parse_presentation(&p.to_string()).unwrap();
        assert_eq!(p, again);
    }
}
