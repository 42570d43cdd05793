//! Free-group words over `x1..xk`: reduction, balls, abelianisation and
//! integer evaluation.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::syntax;

/// A generator or its inverse. Ordered by `(generator, sign)` with the
/// positive letter first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    /// Zero-based generator index.
    pub gen: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen: gen as u8, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Dense code `2·gen + inverse`, consistent with the letter order.
    pub fn code(self) -> usize {
        2 * self.gen as usize + self.inverse as usize
    }

    pub fn from_code(code: usize) -> Self {
        Letter { gen: (code / 2) as u8, inverse: code % 2 == 1 }
    }
}

/// A freely reduced word in the free group of rank `rank`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<Letter>,
}

/// Exponent sums, one entry per generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianVector(pub Vec<i64>);

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    /// `x_{index}` with a 1-based index.
    pub fn generator(rank: usize, index: usize) -> Result<Self> {
        if index == 0 || index > rank {
            return Err(Error::GeneratorOutOfRange { index, rank });
        }
        Ok(FreeWord { rank, letters: vec![Letter::new(index - 1, false)] })
    }

    /// Freely reduces a raw sequence of `(1-based generator index, ±1)`.
    pub fn reduce(rank: usize, raw: &[(usize, i8)]) -> Result<Self> {
        let mut letters: Vec<Letter> = Vec::with_capacity(raw.len());
        for &(index, sign) in raw {
            if index == 0 || index > rank {
                return Err(Error::GeneratorOutOfRange { index, rank });
            }
            push_reduced(&mut letters, Letter::new(index - 1, sign < 0));
        }
        Ok(FreeWord { rank, letters })
    }

    /// Builds a word from letters, reducing as it goes.
    pub fn from_letters(rank: usize, letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out = Vec::new();
        for l in letters {
            debug_assert!((l.gen as usize) < rank);
            push_reduced(&mut out, l);
        }
        FreeWord { rank, letters: out }
    }

    /// Power word `x_index^exponent`.
    pub fn power(rank: usize, index: usize, exponent: i64) -> Result<Self> {
        Ok(Self::generator(rank, index)?.pow(exponent))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { rank: self.rank, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// `[u, v] = u⁻¹v⁻¹uv`.
    pub fn commutator(u: &FreeWord, v: &FreeWord) -> Self {
        &(&(&u.inverse() * &v.inverse()) * u) * v
    }

    /// Maximal runs `(1-based generator, exponent)` with adjacent generators distinct.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.letters {
            let g = l.gen as usize + 1;
            match out.last_mut() {
                Some((h, e)) if *h == g => *e += l.sign(),
                _ => out.push((g, l.sign())),
            }
        }
        out
    }

    /// Cyclically reduced core: strips matching inverse letters from both ends.
    pub fn cyclic_core(&self) -> Self {
        let mut lo = 0;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo] == self.letters[hi - 1].inv() {
            lo += 1;
            hi -= 1;
        }
        FreeWord { rank: self.rank, letters: self.letters[lo..hi].to_vec() }
    }

    /// Canonical representative of the conjugacy class of `w` and `w⁻¹`:
    /// the least rotation of the cyclic core of either.
    pub fn conjugacy_inverse_class(&self) -> Vec<Letter> {
        let core = self.cyclic_core();
        let mut best: Option<Vec<Letter>> = None;
        for w in [core.letters.clone(), core.inverse().letters] {
            let n = w.len();
            for r in 0..n.max(1) {
                let rot: Vec<Letter> = w[r..].iter().chain(w[..r].iter()).copied().collect();
                if best.as_ref().is_none_or(|b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        best.unwrap_or_default()
    }

    pub fn abelianize(&self) -> AbelianVector {
        let mut v = vec![0i64; self.rank];
        for l in &self.letters {
            v[l.gen as usize] += l.sign();
        }
        AbelianVector(v)
    }

    /// Homomorphism to `Z` sending `x_i` to `images[i-1]`.
    pub fn evaluate(&self, images: &[i64]) -> i64 {
        assert_eq!(images.len(), self.rank, "one image per generator");
        self.letters.iter().map(|l| l.sign() * images[l.gen as usize]).sum()
    }

    /// Parses `x1*x2^-1*x3`, `(x1*x2)^3`, or `1`.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let expr = syntax::parse_expr(text)?;
        let mut unknown = None;
        let flat = expr.flatten(&mut |name: &str, line, column| {
            match name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                Some(i) if i >= 1 && i <= rank => Ok(vec![(i, 1)]),
                _ => {
                    unknown.get_or_insert((name.to_string(), line, column));
                    Ok(vec![])
                }
            }
        })?;
        if let Some((name, line, column)) = unknown {
            return Err(Error::UnknownIdentifier { name, line, column });
        }
        let raw: Vec<(usize, i8)> = flat.into_iter().collect();
        Self::reduce(rank, &raw)
    }

    /// Formats with caller-supplied generator names.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.syllables()
            .into_iter()
            .map(|(g, e)| {
                if e == 1 {
                    names[g - 1].clone()
                } else {
                    format!("{}^{}", names[g - 1], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

fn push_reduced(letters: &mut Vec<Letter>, l: Letter) {
    if letters.last() == Some(&l.inv()) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        debug_assert_eq!(self.rank, rhs.rank);
        let mut letters = self.letters.clone();
        for &l in &rhs.letters {
            push_reduced(&mut letters, l);
        }
        FreeWord { rank: self.rank, letters }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.rank).map(|i| format!("x{i}")).collect();
        f.write_str(&self.format_with(&names))
    }
}

/// Number of reduced words of length at most `radius` in rank `rank`.
pub fn ball_size(rank: usize, radius: usize) -> u128 {
    let mut total: u128 = 1;
    let mut layer: u128 = 2 * rank as u128;
    for _ in 0..radius {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(2 * rank as u128 - 1);
    }
    total
}

/// Streams every reduced word of length `<= radius` exactly once, ordered by
/// length then lexicographically by `(generator, sign)`.
///
/// Fails up front when the ball holds more than `cap` words.
pub fn enumerate_ball(rank: usize, radius: usize, cap: usize) -> Result<BallIter> {
    assert!(rank >= 1);
    if ball_size(rank, radius) > cap as u128 {
        return Err(Error::CapExceeded { what: format!("ball B({radius}) in rank {rank}"), cap });
    }
    Ok(BallIter { rank, radius, current: None, started: false })
}

pub struct BallIter {
    rank: usize,
    radius: usize,
    current: Option<Vec<usize>>,
    started: bool,
}

impl BallIter {
    fn smallest_after(&self, prev: Option<usize>, from: usize) -> Option<usize> {
        (from..2 * self.rank).find(|&c| prev != Some(c ^ 1))
    }

    fn first_of_length(&self, n: usize) -> Vec<usize> {
        let mut w = Vec::with_capacity(n);
        for _ in 0..n {
            let prev = w.last().copied();
            w.push(self.smallest_after(prev, 0).expect("rank >= 1"));
        }
        w
    }

    fn advance(&self, w: &[usize]) -> Option<Vec<usize>> {
        for i in (0..w.len()).rev() {
            let prev = if i == 0 { None } else { Some(w[i - 1]) };
            if let Some(c) = self.smallest_after(prev, w[i] + 1) {
                let mut next = w[..i].to_vec();
                next.push(c);
                while next.len() < w.len() {
                    let p = next.last().copied();
                    next.push(self.smallest_after(p, 0).expect("rank >= 1"));
                }
                return Some(next);
            }
        }
        None
    }
}

impl Iterator for BallIter {
    type Item = FreeWord;

    fn next(&mut self) -> Option<FreeWord> {
        let next = if !self.started {
            self.started = true;
            Some(Vec::new())
        } else {
            let cur = self.current.as_ref()?;
            match self.advance(cur) {
                Some(w) => Some(w),
                None if cur.len() < self.radius => Some(self.first_of_length(cur.len() + 1)),
                None => None,
            }
        };
        self.current = next.clone();
        next.map(|codes| FreeWord {
            rank: self.rank,
            letters: codes.into_iter().map(Letter::from_code).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s, 3).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(FreeWord::reduce(3, &[(1, 1), (1, -1)]).unwrap().is_empty());
        let r = FreeWord::reduce(3, &[(1, 1), (2, 1), (2, -1), (3, 1)]).unwrap();
        assert_eq!(r.to_string(), "x1*x3");
        let r = FreeWord::reduce(3, &[(1, -1), (1, -1)]).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.to_string(), "x1^-2");
        assert!(matches!(
            FreeWord::reduce(3, &[(4, 1)]),
            Err(Error::GeneratorOutOfRange { index: 4, rank: 3 })
        ));
    }

    #[test]
    fn ball_counts() {
        assert_eq!(enumerate_ball(3, 1, 1000).unwrap().count(), 7);
        assert_eq!(enumerate_ball(3, 2, 1000).unwrap().count(), 37);
        assert_eq!(enumerate_ball(2, 2, 1000).unwrap().count(), 17);
        for k in 2..=3 {
            for l in 0..=4 {
                let n = enumerate_ball(k, l, 100_000).unwrap().count() as u128;
                let pow = (2 * k as u128 - 1).pow(l as u32);
                assert_eq!(n, 1 + 2 * k as u128 * (pow - 1) / (2 * k as u128 - 2));
            }
        }
    }

    #[test]
    fn ball_order_and_distinctness() {
        let words: Vec<FreeWord> = enumerate_ball(2, 3, 1000).unwrap().collect();
        assert_eq!(words[0], FreeWord::identity(2));
        assert_eq!(words[1].to_string(), "x1");
        assert_eq!(words[2].to_string(), "x1^-1");
        for pair in words.windows(2) {
            let key = |w: &FreeWord| (w.len(), w.letters().to_vec());
            assert!(key(&pair[0]) < key(&pair[1]));
        }
        assert!(words.iter().all(|w| w.letters().windows(2).all(|p| p[0] != p[1].inv())));
    }

    #[test]
    fn ball_cap() {
        assert!(matches!(enumerate_ball(3, 10, 1000), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn abelianize_examples() {
        assert_eq!(w("x2^-1*x3*x2^-1").abelianize(), AbelianVector(vec![0, -2, 1]));
        assert_eq!(FreeWord::identity(3).abelianize(), AbelianVector(vec![0, 0, 0]));
        assert_eq!(w("x1^3").abelianize(), AbelianVector(vec![3, 0, 0]));
    }

    #[test]
    fn evaluate_examples() {
        let images = [0, 1, 1];
        assert_eq!(w("x2^3").evaluate(&images), 3);
        assert_eq!(w("x1^5").evaluate(&images), 0);
        assert_eq!(w("(x2*x3^-1)^3").evaluate(&images), 0);
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in ["1", "x1", "x1^-2*x3", "x2*x1^3*x2^-1"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!(matches!(FreeWord::parse("x4", 3), Err(Error::UnknownIdentifier { .. })));
        assert!(matches!(FreeWord::parse("x1**", 3), Err(Error::Syntax(_))));
    }

    #[test]
    fn conjugacy_class_rep() {
        let a = w("x2^-1*x3");
        let b = w("x1*x3^-1*x2*x1^-1");
        assert_eq!(a.conjugacy_inverse_class(), b.conjugacy_inverse_class());
        assert_ne!(a.conjugacy_inverse_class(), w("x1").conjugacy_inverse_class());
    }
}
