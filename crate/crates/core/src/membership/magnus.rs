use std::collections::BTreeMap;
use std::fmt;

use crate::words::{FreeWord, Letter};

/// A monomial `X_{i1} X_{i2} … X_{in}` stored by zero-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// From 1-based variable indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        Monomial(indices.iter().map(|&i| (i - 1) as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

/// Noncommutative polynomial in `X_1..X_k` with coefficients in `Z/m`
/// (`m = 0` means `Z`), with every monomial of degree `>= degree_bound`
/// discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    rank: usize,
    modulus: i64,
    degree_bound: usize,
    coeffs: BTreeMap<Monomial, i64>,
}

impl TruncSeries {
    pub fn zero(rank: usize, modulus: i64, degree_bound: usize) -> Self {
        assert!(degree_bound >= 1 && modulus >= 0);
        TruncSeries { rank, modulus, degree_bound, coeffs: BTreeMap::new() }
    }

    pub fn one(rank: usize, modulus: i64, degree_bound: usize) -> Self {
        let mut s = Self::zero(rank, modulus, degree_bound);
        s.add_term(Monomial::one(), 1);
        s
    }

    fn reduce(&self, c: i64) -> i64 {
        if self.modulus == 0 {
            c
        } else {
            c.rem_euclid(self.modulus)
        }
    }

    fn add_term(&mut self, m: Monomial, c: i64) {
        if m.degree() >= self.degree_bound {
            return;
        }
        let entry = self.coeffs.entry(m.clone()).or_insert(0);
        let sum = entry.checked_add(c).expect("coefficient overflow");
        let sum = if self.modulus == 0 { sum } else { sum.rem_euclid(self.modulus) };
        if sum == 0 {
            self.coeffs.remove(&m);
        } else {
            *entry = sum;
        }
    }

    /// Image of a single letter: `1 + X_i`, or `Σ (-X_i)^n` for the inverse.
    pub fn of_letter(rank: usize, modulus: i64, degree_bound: usize, l: Letter) -> Self {
        let mut s = Self::one(rank, modulus, degree_bound);
        if l.inverse {
            for n in 1..degree_bound {
                let c = if n % 2 == 0 { 1 } else { -1 };
                s.add_term(Monomial(vec![l.gen; n]), c);
            }
        } else {
            s.add_term(Monomial(vec![l.gen]), 1);
        }
        s
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        assert_eq!((self.rank, self.modulus, self.degree_bound), (other.rank, other.modulus, other.degree_bound));
        let mut out = Self::zero(self.rank, self.modulus, self.degree_bound);
        for (m1, &c1) in &self.coeffs {
            for (m2, &c2) in &other.coeffs {
                if m1.degree() + m2.degree() >= self.degree_bound {
                    continue;
                }
                let mut m = m1.0.clone();
                m.extend_from_slice(&m2.0);
                let c = c1.checked_mul(c2).expect("coefficient overflow");
                out.add_term(Monomial(m), self.reduce(c));
            }
        }
        out
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.coeffs.get(m).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coefficient(&Monomial::one()) == 1
    }

    /// Nonzero terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.coeffs.iter().map(|(m, &c)| (m, c))
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(m, c)| {
                if m.0.is_empty() {
                    c.to_string()
                } else {
                    let vars: Vec<String> = m.0.iter().map(|i| format!("X{}", i + 1)).collect();
                    format!("{c}*{}", vars.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The Magnus map `x_i ↦ 1 + X_i`, truncated below `degree_bound`.
pub fn magnus(w: &FreeWord, modulus: i64, degree_bound: usize) -> TruncSeries {
    w.letters().iter().fold(TruncSeries::one(w.rank(), modulus, degree_bound), |acc, &l| {
        acc.mul(&TruncSeries::of_letter(w.rank(), modulus, degree_bound, l))
    })
}

/// Integer coefficient of `monomial` (1-based indices) in the Magnus image.
pub fn fox_coefficient(w: &FreeWord, monomial: &[usize]) -> i64 {
    magnus(w, 0, monomial.len() + 1).coefficient(&Monomial::from_indices(monomial))
}

/// Outcome of the `F_k^ℓ γ_ℓ(F_k)` test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PowerGammaVerdict {
    /// Magnus image mod `ℓ` is nontrivial below degree `ℓ`: provably not a member.
    CertifiedOut,
    /// Magnus image mod `ℓ` is trivial below degree `ℓ` (necessary for membership).
    TrivialImage,
}

pub fn in_power_gamma(w: &FreeWord, ell: u32) -> PowerGammaVerdict {
    if magnus(w, ell as i64, ell as usize).is_one() {
        PowerGammaVerdict::TrivialImage
    } else {
        PowerGammaVerdict::CertifiedOut
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s, 3).unwrap()
    }

    #[test]
    fn magnus_examples() {
        assert!(magnus(&FreeWord::identity(3), 0, 3).is_one());
        assert_eq!(magnus(&w("x1"), 0, 3).to_string(), "1 + 1*X1");
        assert_eq!(magnus(&w("x1^-1"), 0, 3).to_string(), "1 + -1*X1 + 1*X1*X1");
    }

    #[test]
    fn power_gamma_examples() {
        assert_eq!(in_power_gamma(&w("x1^2"), 2), PowerGammaVerdict::TrivialImage);
        let c = FreeWord::commutator(&w("x1"), &w("x2"));
        assert_eq!(in_power_gamma(&c, 2), PowerGammaVerdict::TrivialImage);
        assert_eq!(in_power_gamma(&w("x1*x2*x1"), 3), PowerGammaVerdict::CertifiedOut);
    }

    #[test]
    fn fox_examples() {
        assert_eq!(fox_coefficient(&w("x1"), &[1]), 1);
        assert_eq!(fox_coefficient(&w("x1^-1"), &[1]), -1);
        assert_eq!(fox_coefficient(&w("x1^2*x2^3"), &[1, 2]), 6);
    }

    /// Direct expansion of `(1+X1)^2 (1+X2)^3`: the `X1 X2` term is `2·3`.
    #[test]
    fn fox_oracle_by_binomial_expansion() {
        let s = magnus(&w("x1^2*x2^3"), 0, 4);
        assert_eq!(s.coefficient(&Monomial::from_indices(&[1])), 2);
        assert_eq!(s.coefficient(&Monomial::from_indices(&[1, 1])), 1);
        assert_eq!(s.coefficient(&Monomial::from_indices(&[2, 2])), 3);
        assert_eq!(s.coefficient(&Monomial::from_indices(&[2, 2, 2])), 1);
        assert_eq!(s.coefficient(&Monomial::from_indices(&[1, 2, 2])), 6);
        assert_eq!(s.coefficient(&Monomial::from_indices(&[2, 1])), 0);
    }

    #[test]
    fn modular_reduction_drops_zeros() {
        let s = magnus(&w("x1^3"), 3, 3);
        assert!(s.is_one());
        let s = magnus(&w("x1^3"), 0, 3);
        assert_eq!(s.coefficient(&Monomial::from_indices(&[1, 1])), 3);
    }
}
