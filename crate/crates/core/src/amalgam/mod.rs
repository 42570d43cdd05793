//! Arithmetic in `G = D4 *_{C2} (C2×C2)` with `D4 = ⟨a, b⟩` and
//! `C2×C2 = ⟨ab⟩ × ⟨z⟩`, amalgamated over `⟨ab⟩`.
//!
//! Elements are kept in the reduced form `(ab)^ε a^{e1} z a^{e2} … z a^{en}`
//! where the inner exponents are nonzero.

mod image;
mod rewrite;

use std::fmt;

pub use image::{
    check_relators, literature_sym8_images, phi, phi_letters, Composition, GroupElement, ImageElement,
    Perm, PermIn, RelatorDiscrepancy, RelatorReport, RELATOR_NAMES,
    relator_discrepancy,
};
pub use rewrite::{conj_action, conj_by, expand_kernel_word, kernel_generators, schreier_rewrite, KernelRewriter};

use crate::error::{Error, Result};
use crate::syntax;

/// Generator symbols of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    A,
    B,
    Z,
}

impl Sym {
    pub fn name(self) -> char {
        match self {
            Sym::A => 'a',
            Sym::B => 'b',
            Sym::Z => 'z',
        }
    }
}

/// A word over `a, b, z` with integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GWord {
    pub letters: Vec<(Sym, i64)>,
}

impl GWord {
    pub fn new(letters: Vec<(Sym, i64)>) -> Self {
        GWord { letters }
    }

    /// Parses `z*a^2*z*a^2`, `(za^2)^4`, `zaza`, `(ab)^1*a^3`.
    ///
    /// An identifier made of the letters `a`, `b`, `z` is read as their
    /// juxtaposition, so `zaza` is `z*a*z*a`.
    pub fn parse(text: &str) -> Result<Self> {
        let expr = syntax::parse_expr(text)?;
        let mut bad = None;
        let flat = expr.flatten(&mut |name: &str, line, column| {
            let mut run = Vec::new();
            for ch in name.chars() {
                match ch {
                    'a' => run.push((0usize, 1i64)),
                    'b' => run.push((1, 1)),
                    'z' => run.push((2, 1)),
                    _ => {
                        bad.get_or_insert((name.to_string(), line, column));
                    }
                }
            }
            Ok(run)
        })?;
        if let Some((name, line, column)) = bad {
            return Err(Error::UnknownIdentifier { name, line, column });
        }
        let syms = [Sym::A, Sym::B, Sym::Z];
        let mut letters: Vec<(Sym, i64)> = Vec::new();
        for (g, s) in flat {
            let sym = syms[g];
            match letters.last_mut() {
                Some((t, e)) if *t == sym => *e += s as i64,
                _ => letters.push((sym, s as i64)),
            }
        }
        letters.retain(|&(_, e)| e != 0);
        Ok(GWord { letters })
    }

    pub fn inverse(&self) -> Self {
        GWord { letters: self.letters.iter().rev().map(|&(s, e)| (s, -e)).collect() }
    }

    pub fn concat(&self, other: &GWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GWord { letters }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        GWord { letters }
    }
}

impl fmt::Display for GWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(s, e)| if e == 1 { s.name().to_string() } else { format!("{}^{}", s.name(), e) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Canonical reduced form of an element of `G`.
///
/// `exps` holds `e1, …, en`, with one `z` between consecutive entries;
/// interior entries lie in `1..=3`, the two ends in `0..=3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmalgamNF {
    eps: u8,
    exps: Vec<u8>,
}

impl Default for AmalgamNF {
    fn default() -> Self {
        Self::identity()
    }
}

impl AmalgamNF {
    pub fn identity() -> Self {
        AmalgamNF { eps: 0, exps: vec![0] }
    }

    /// Builds from raw parts, rejecting anything that is not reduced.
    pub fn from_parts(eps: u8, exps: Vec<u8>) -> Option<Self> {
        let n = exps.len();
        let ok = eps <= 1
            && n >= 1
            && exps.iter().all(|&e| e < 4)
            && exps.iter().enumerate().all(|(i, &e)| i == 0 || i == n - 1 || e != 0);
        ok.then_some(AmalgamNF { eps, exps })
    }

    pub fn eps(&self) -> u8 {
        self.eps
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.eps == 0 && self.exps == [0]
    }

    pub fn z_count(&self) -> usize {
        self.exps.len() - 1
    }

    /// Number of symbols `a`, `a²`, `a³`, `z`; the `(ab)^ε` prefix is free.
    pub fn star_length(&self) -> usize {
        self.z_count() + self.exps.iter().filter(|&&e| e != 0).count()
    }

    pub fn mul_a(&mut self, e: i64) {
        let last = self.exps.last_mut().expect("nonempty");
        *last = ((*last as i64 + e).rem_euclid(4)) as u8;
    }

    pub fn mul_z(&mut self) {
        if self.exps.len() > 1 && *self.exps.last().unwrap() == 0 {
            self.exps.pop();
        } else {
            self.exps.push(0);
        }
    }

    /// Right multiplication by `ab`, which commutes with `z` and inverts `a`.
    pub fn mul_ab(&mut self) {
        self.eps ^= 1;
        for e in &mut self.exps {
            *e = (4 - *e) % 4;
        }
    }

    /// Right multiplication by `b = (ab)·a`.
    pub fn mul_b(&mut self) {
        self.mul_ab();
        self.mul_a(1);
    }

    pub fn mul_sym(&mut self, s: Sym) {
        match s {
            Sym::A => self.mul_a(1),
            Sym::B => self.mul_b(),
            Sym::Z => self.mul_z(),
        }
    }

    pub fn mul(&self, other: &AmalgamNF) -> AmalgamNF {
        let mut out = self.clone();
        if other.eps == 1 {
            out.mul_ab();
        }
        for (i, &e) in other.exps.iter().enumerate() {
            if i > 0 {
                out.mul_z();
            }
            out.mul_a(e as i64);
        }
        out
    }

    pub fn inverse(&self) -> AmalgamNF {
        let mut out = AmalgamNF::identity();
        for (i, &e) in self.exps.iter().enumerate().rev() {
            out.mul_a(-(e as i64));
            if i > 0 {
                out.mul_z();
            }
        }
        if self.eps == 1 {
            out.mul_ab();
        }
        out
    }

    pub fn pow(&self, n: i64) -> AmalgamNF {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = AmalgamNF::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Unit letters over `a, b, z` spelling this element (`(ab)` as `a, b`).
    pub fn letters(&self) -> Vec<Sym> {
        let mut out = Vec::new();
        if self.eps == 1 {
            out.extend([Sym::A, Sym::B]);
        }
        for (i, &e) in self.exps.iter().enumerate() {
            if i > 0 {
                out.push(Sym::Z);
            }
            out.extend(std::iter::repeat_n(Sym::A, e as usize));
        }
        out
    }

    pub fn to_gword(&self) -> GWord {
        let mut letters = Vec::new();
        if self.eps == 1 {
            letters.push((Sym::A, 1));
            letters.push((Sym::B, 1));
        }
        for (i, &e) in self.exps.iter().enumerate() {
            if i > 0 {
                letters.push((Sym::Z, 1));
            }
            if e != 0 {
                letters.push((Sym::A, e as i64));
            }
        }
        GWord { letters }
    }

    /// Short form without zero parts, e.g. `z*a^2*z*a^2`; identity is `1`.
    pub fn compact(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if self.eps == 1 {
            parts.push("(ab)".into());
        }
        for (i, &e) in self.exps.iter().enumerate() {
            if i > 0 {
                parts.push("z".into());
            }
            match e {
                0 => {}
                1 => parts.push("a".into()),
                _ => parts.push(format!("a^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for AmalgamNF {
    /// `(ab)^ε * a^e1 * z * a^e2 * …`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(ab)^{}", self.eps)?;
        for (i, &e) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str(" * z")?;
            }
            write!(f, " * a^{e}")?;
        }
        Ok(())
    }
}

/// Reduces a word over `a, b, z` to its canonical form.
pub fn normal_form(w: &GWord) -> AmalgamNF {
    let mut nf = AmalgamNF::identity();
    for &(s, e) in &w.letters {
        match s {
            Sym::A => nf.mul_a(e),
            Sym::B => {
                if e.rem_euclid(2) == 1 {
                    nf.mul_b()
                }
            }
            Sym::Z => {
                if e.rem_euclid(2) == 1 {
                    nf.mul_z()
                }
            }
        }
    }
    nf
}

/// Number of elements with star-length at most `radius`.
pub fn star_ball_size(radius: usize) -> u128 {
    (0..=radius).map(star_sphere_size).sum()
}

fn star_sphere_size(s: usize) -> u128 {
    let mut total: u128 = match s {
        0 => 1,
        1 => 3,
        _ => 0,
    };
    for m in 1..=s {
        // ends carry s - (2m - 1) nonzero entries
        let Some(t) = (s + 1).checked_sub(2 * m) else { break };
        let ends = match t {
            0 => 1,
            1 => 6,
            2 => 9,
            _ => continue,
        };
        total += ends * 3u128.pow(m as u32 - 1);
    }
    2 * total
}

/// Streams `B_*(radius)` ordered by star-length, then `z`-count, then `ε`,
/// then exponents lexicographically.
pub fn star_ball(radius: usize, cap: usize) -> Result<StarBall> {
    if star_ball_size(radius) > cap as u128 {
        return Err(Error::CapExceeded { what: format!("star ball B_*({radius})"), cap });
    }
    Ok(StarBall { radius, length: 0, zs: 0, eps: 0, digits: None })
}

/// Possible `z`-counts for star-length `s`: `2m - 1 <= s <= 2m + 1`.
fn z_range(s: usize) -> (usize, usize) {
    (s.saturating_sub(1).div_ceil(2), s.div_ceil(2))
}

pub struct StarBall {
    radius: usize,
    length: usize,
    zs: usize,
    eps: u8,
    digits: Option<Vec<u8>>,
}

impl StarBall {
    fn ranges(&self) -> Vec<(u8, u8)> {
        let n = self.zs + 1;
        (0..n).map(|i| if i == 0 || i == n - 1 { (0, 3) } else { (1, 3) }).collect()
    }

    fn step_digits(&self, cur: &[u8]) -> Option<Vec<u8>> {
        let ranges = self.ranges();
        let mut d = cur.to_vec();
        for i in (0..d.len()).rev() {
            if d[i] < ranges[i].1 {
                d[i] += 1;
                return Some(d);
            }
            d[i] = ranges[i].0;
        }
        None
    }

    fn advance_block(&mut self) -> bool {
        // next (eps, zs) block within the current length, or the next length
        if self.eps == 0 {
            self.eps = 1;
        } else {
            self.eps = 0;
            self.zs += 1;
            if self.zs > z_range(self.length).1 {
                self.length += 1;
                if self.length > self.radius {
                    return false;
                }
                self.zs = z_range(self.length).0;
            }
        }
        true
    }
}

impl Iterator for StarBall {
    type Item = AmalgamNF;

    fn next(&mut self) -> Option<AmalgamNF> {
        if self.length > self.radius {
            return None;
        }
        loop {
            let next = match &self.digits {
                None => Some(self.ranges().iter().map(|r| r.0).collect::<Vec<u8>>()),
                Some(cur) => self.step_digits(cur),
            };
            match next {
                Some(d) => {
                    self.digits = Some(d.clone());
                    let nf = AmalgamNF { eps: self.eps, exps: d };
                    if nf.star_length() == self.length {
                        return Some(nf);
                    }
                }
                None => {
                    self.digits = None;
                    if !self.advance_block() {
                        self.length = self.radius + 1;
                        return None;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn nf(s: &str) -> AmalgamNF {
        normal_form(&GWord::parse(s).unwrap())
    }

    /// Elements of `D4 ∪ D4·z` written as `d` or `d·z` with `d = a^i b^j`.
    fn d4_and_d4z() -> Vec<AmalgamNF> {
        let mut out = Vec::new();
        for i in 0..4 {
            for j in 0..2 {
                for k in 0..2 {
                    out.push(normal_form(&GWord::new(vec![(Sym::A, i), (Sym::B, j), (Sym::Z, k)])));
                }
            }
        }
        out
    }

    #[test]
    fn normal_form_examples() {
        let b = nf("b");
        assert_eq!((b.eps(), b.exps()), (1, &[1u8][..]));
        assert!(nf("zz").is_identity());
        let x1 = nf("z*a^2*z*a^2");
        assert_eq!((x1.eps(), x1.exps()), (0, &[0u8, 2, 2][..]));
        assert_eq!(x1.star_length(), 4);
    }

    #[test]
    fn b_is_ab_times_a_exhaustively() {
        // every D4 element a^i b^j equals its normal form expansion
        for i in 0..4 {
            for j in 0..2 {
                let w = GWord::new(vec![(Sym::A, i), (Sym::B, j)]);
                let n = normal_form(&w);
                assert_eq!(normal_form(&n.to_gword()), n);
                assert!(n.z_count() == 0);
            }
        }
        let all: HashSet<AmalgamNF> = d4_and_d4z().into_iter().collect();
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn relators_vanish() {
        for r in ["a^4", "b^2", "(a*b)^2", "z^2", "(a*b*z)^2", "b^-1*a*b*a", "(ab)^-1*z^-1*ab*z"] {
            assert!(nf(r).is_identity(), "{r}");
        }
    }

    #[test]
    fn star_ball_small_radii() {
        let b0: Vec<_> = star_ball(0, 100).unwrap().collect();
        assert_eq!(b0.len(), 2);
        let oracle0: HashSet<_> = d4_and_d4z().into_iter().filter(|g| g.star_length() == 0).collect();
        assert_eq!(b0.iter().cloned().collect::<HashSet<_>>(), oracle0);

        let b1: HashSet<_> = star_ball(1, 100).unwrap().collect();
        assert_eq!(b1.len(), 10);
        let oracle1: HashSet<_> = d4_and_d4z().into_iter().filter(|g| g.star_length() <= 1).collect();
        assert_eq!(b1, oracle1);
        for i in 0..4 {
            for j in 0..2 {
                assert!(b1.contains(&normal_form(&GWord::new(vec![(Sym::A, i), (Sym::B, j)]))));
            }
        }

        let b4: HashSet<_> = star_ball(4, 10_000).unwrap().collect();
        let x1 = nf("(z*a^2)^2");
        assert!(b4.contains(&x1) && b4.contains(&x1.inverse()));
    }

    #[test]
    fn star_ball_sizes_match_formula_and_brute_force() {
        // brute force: all words of bounded syllable count, filtered
        let mut seen = HashSet::new();
        let mut frontier = vec![AmalgamNF::identity(), nf("ab")];
        seen.extend(frontier.iter().cloned());
        for _ in 0..6 {
            let mut next = Vec::new();
            for g in &frontier {
                for step in ["a", "a^2", "a^3", "z"] {
                    let h = g.mul(&nf(step));
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        for r in 0..=5 {
            let streamed: Vec<_> = star_ball(r, 1 << 20).unwrap().collect();
            let set: HashSet<_> = streamed.iter().cloned().collect();
            assert_eq!(set.len(), streamed.len());
            assert_eq!(streamed.len() as u128, star_ball_size(r));
            let oracle: HashSet<_> = seen.iter().filter(|g| g.star_length() <= r).cloned().collect();
            assert_eq!(set, oracle, "radius {r}");
        }
    }

    #[test]
    fn star_ball_cap() {
        assert!(matches!(star_ball(13, 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn display_parses_back() {
        for s in ["1", "b", "z*a^2*z*a^3", "(ab)*z*a*z", "a^3*z"] {
            let g = nf(s);
            assert_eq!(nf(&g.to_string()), g);
            assert_eq!(nf(&g.compact()), g);
        }
        assert_eq!(nf("b*z").to_string(), "(ab)^1 * a^1 * z * a^0");
        assert!(GWord::parse("q").is_err());
    }
}
