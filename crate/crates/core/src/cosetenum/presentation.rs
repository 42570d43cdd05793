use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result, SyntaxError};
use crate::syntax::{Cursor, Expr};
use crate::words::FreeWord;

/// A finite presentation `⟨generators | relators⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<FreeWord>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if seen.insert(g.clone(), i).is_some() {
                return Err(SyntaxError { line: 0, column: 0, message: format!("duplicate generator '{g}'") }.into());
            }
        }
        if relators.iter().any(|r| r.is_empty() || r.rank() != generators.len()) {
            return Err(SyntaxError { line: 0, column: 0, message: "relators must be nonempty words".into() }.into());
        }
        Ok(Presentation { generators, relators })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Parses `gens: a, b; rels: a^4, (a*b)^2;` (the final `;` is optional).
    pub fn parse(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        cur.keyword("gens")?;
        cur.expect(':')?;
        let mut generators = Vec::new();
        let mut index = HashMap::new();
        loop {
            let (name, line, column) = cur.ident()?;
            if index.insert(name.clone(), generators.len()).is_some() {
                return Err(SyntaxError { line, column, message: format!("duplicate generator '{name}'") }.into());
            }
            generators.push(name);
            if !cur.eat(',') {
                break;
            }
        }
        cur.expect(';')?;
        cur.keyword("rels")?;
        cur.expect(':')?;
        if cur.at_end() || cur.peek() == Some(';') {
            return Err(cur.error("expected at least one relator").into());
        }
        let mut relators = Vec::new();
        loop {
            let (line, column) = { cur.skip_ws(); cur.position() };
            let expr = cur.expr()?;
            let word = resolve(&expr, &index)?;
            if word.is_empty() {
                return Err(SyntaxError { line, column, message: "relator reduces to the identity".into() }.into());
            }
            relators.push(word);
            if !cur.eat(',') {
                break;
            }
        }
        cur.eat(';');
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input").into());
        }
        Ok(Presentation { generators, relators })
    }

    /// Parses a word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<FreeWord> {
        let index: HashMap<String, usize> =
            self.generators.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let mut cur = Cursor::new(text);
        let expr = cur.expr()?;
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input").into());
        }
        resolve(&expr, &index)
    }

    /// Parses a comma-separated word list; the empty string is the empty list.
    pub fn parse_word_list(&self, text: &str) -> Result<Vec<FreeWord>> {
        if text.trim().is_empty() {
            return Ok(Vec::new());
        }
        text.split(',').map(|w| self.parse_word(w)).collect()
    }

    pub fn format_word(&self, w: &FreeWord) -> String {
        w.format_with(&self.generators)
    }
}

fn resolve(expr: &Expr, index: &HashMap<String, usize>) -> Result<FreeWord> {
    let mut unknown = None;
    let flat = expr.flatten(&mut |name: &str, line, column| match index.get(name) {
        Some(&i) => Ok(vec![(i + 1, 1)]),
        None => {
            unknown.get_or_insert((name.to_string(), line, column));
            Ok(vec![])
        }
    })?;
    if let Some((name, line, column)) = unknown {
        return Err(Error::UnknownIdentifier { name, line, column });
    }
    FreeWord::reduce(index.len(), &flat)
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens: {}; rels: ", self.generators.join(", "))?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "{};", rels.join(", "))
    }
}

/// `G = ⟨a, b, z | a⁴, b², (ab)², z², (abz)²⟩`.
pub fn amalgam_presentation() -> Presentation {
    Presentation::parse("gens: a, b, z; rels: a^4, b^2, (a*b)^2, z^2, (a*b*z)^2;").expect("static presentation")
}

/// Presentation of `F3 / F3^{2ℓ} γ_ℓ(F3)` for `ℓ ∈ {2, 3}`.
///
/// For `ℓ = 2` the commutators are killed outright. For `ℓ = 3` the group is
/// class 2, and `x_i^6`, `(x_i x_j)^6`, `[x_j, x_i]^6` generate the sixth
/// powers modulo `γ3` because `(xy)^6 = x^6 y^6 [y,x]^15` there.
pub fn power_nilpotent_presentation(ell: u32) -> Result<Presentation> {
    let n = 2 * ell as i64;
    let mut rels = Vec::new();
    for i in 1..=3 {
        rels.push(format!("x{i}^{n}"));
    }
    for i in 1..=3 {
        for j in i + 1..=3 {
            rels.push(format!("(x{i}*x{j})^{n}"));
        }
    }
    let comm = |j: usize, i: usize| format!("x{j}^-1*x{i}^-1*x{j}*x{i}");
    match ell {
        2 => {
            for i in 1..=3 {
                for j in i + 1..=3 {
                    rels.push(comm(j, i));
                }
            }
        }
        3 => {
            for i in 1..=3 {
                for j in i + 1..=3 {
                    rels.push(format!("({})^{n}", comm(j, i)));
                }
            }
            for i in 1..=3 {
                for j in i + 1..=3 {
                    for k in 1..=3 {
                        let c = comm(j, i);
                        rels.push(format!("({c})^-1*x{k}^-1*({c})*x{k}"));
                    }
                }
            }
        }
        other => return Err(Error::UnsupportedEll(other)),
    }
    Presentation::parse(&format!("gens: x1, x2, x3; rels: {};", rels.join(", ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let p = Presentation::parse("gens: a; rels: a^4").unwrap();
        assert_eq!((p.rank(), p.relators.len()), (1, 1));
        let g = amalgam_presentation();
        assert_eq!((g.rank(), g.relators.len()), (3, 5));
        assert!(matches!(Presentation::parse("gens: a; rels:"), Err(Error::Syntax(_))));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match Presentation::parse("gens: a, b;\nrels: a^4, c") {
            Err(Error::UnknownIdentifier { name, line, column }) => {
                assert_eq!((name.as_str(), line, column), ("c", 2, 12));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(Presentation::parse("gens: a, a; rels: a"), Err(Error::Syntax(_))));
        assert!(matches!(Presentation::parse("gens: a; rels: a*a^-1"), Err(Error::Syntax(_))));
        assert!(matches!(Presentation::parse("gen: a; rels: a"), Err(Error::Syntax(_))));
    }

    #[test]
    fn printing_round_trips() {
        for p in [amalgam_presentation(), power_nilpotent_presentation(3).unwrap()] {
            let again = Presentation::parse(&p.to_string()).unwrap();
            assert_eq!(again, p);
        }
    }

    #[test]
    fn word_lists() {
        let g = amalgam_presentation();
        let ws = g.parse_word_list("z*a^2*z*a^2, (z*a)^2").unwrap();
        assert_eq!(ws.len(), 2);
        assert_eq!(g.format_word(&ws[1]), "z*a*z*a");
        assert!(g.parse_word_list("").unwrap().is_empty());
    }
}
