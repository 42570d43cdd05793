use std::fmt;

use crate::words::FreeWord;

/// Reduced word in `C_ℓ * C_ℓ * C_∞ = ⟨z1, z2, z3 | z1^ℓ, z2^ℓ⟩`.
///
/// Syllables alternate between factors; exponents of `z1`, `z2` lie in
/// `1..ℓ`, exponents of `z3` are nonzero integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FPWord {
    ell: i64,
    syllables: Vec<(u8, i64)>,
}

impl FPWord {
    pub fn identity(ell: u32) -> Self {
        assert!(ell >= 2);
        FPWord { ell: ell as i64, syllables: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// `(factor 1..=3, exponent)` pairs.
    pub fn syllables(&self) -> &[(u8, i64)] {
        &self.syllables
    }

    fn normalize(&self, factor: u8, e: i64) -> i64 {
        if factor == 3 {
            e
        } else {
            e.rem_euclid(self.ell)
        }
    }

    /// Right multiplication by `z_factor^e`.
    pub fn push(&mut self, factor: u8, e: i64) {
        assert!((1..=3).contains(&factor));
        match self.syllables.last_mut() {
            Some((f, x)) if *f == factor => {
                let sum = *x + e;
                let sum = if factor == 3 { sum } else { sum.rem_euclid(self.ell) };
                if sum == 0 {
                    self.syllables.pop();
                } else {
                    *x = sum;
                }
            }
            _ => {
                let e = self.normalize(factor, e);
                if e != 0 {
                    self.syllables.push((factor, e));
                }
            }
        }
    }
}

impl fmt::Display for FPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.syllables.iter().map(|(g, e)| format!("z{g}^{e}")).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Reduced form of a word over `z1, z2, z3` (rank-3 free word).
pub fn fp_normal_form(w: &FreeWord, ell: u32) -> FPWord {
    assert_eq!(w.rank(), 3);
    let mut out = FPWord::identity(ell);
    for (g, e) in w.syllables() {
        out.push(g as u8, e);
    }
    out
}

/// Exact membership in `H = ⟨x1^ℓ, (x2 x3⁻¹)^ℓ⟩^{F3}`, the kernel of
/// `x1 ↦ z1`, `x2 ↦ z2 z3`, `x3 ↦ z3`.
pub fn in_h(w: &FreeWord, ell: u32) -> bool {
    assert_eq!(w.rank(), 3);
    let mut out = FPWord::identity(ell);
    for l in w.letters() {
        let s = l.sign();
        match (l.gen, l.inverse) {
            (0, _) => out.push(1, s),
            (1, false) => {
                out.push(2, 1);
                out.push(3, 1);
            }
            (1, true) => {
                out.push(3, -1);
                out.push(2, -1);
            }
            (_, _) => out.push(3, s),
        }
    }
    out.is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s, 3).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        for ell in [2, 3, 5] {
            assert!(fp_normal_form(&w(&format!("x1^{ell}")), ell).is_identity());
            let z3 = fp_normal_form(&w(&format!("x3^{ell}")), ell);
            assert_eq!(z3.syllables(), &[(3, ell as i64)]);
        }
        let nf = fp_normal_form(&w("x2*x3*x2"), 3);
        assert_eq!(nf.syllables().len(), 3);
        assert_eq!(nf.to_string(), "z2^1*z3^1*z2^1");
        assert_eq!(fp_normal_form(&w("x1^-1"), 3).syllables(), &[(1, 2)]);
    }

    #[test]
    fn membership_examples() {
        for ell in [2u32, 3, 5] {
            let e = ell as i64;
            assert!(in_h(&w(&format!("x1^{e}")), ell));
            let v = w(&format!("(x2*x3^-1)^{e}"));
            assert_eq!(v.len(), 2 * ell as usize);
            assert!(in_h(&v, ell) && in_h(&v.inverse(), ell));
        }
        assert!(!in_h(&w("x2^2"), 2));
        // normal closure: conjugates are members
        assert!(in_h(&w("x3*x1^3*x3^-1"), 3));
        assert!(!in_h(&w("x3^3"), 3));
    }
}
