//! Word-length oracles in free groups: the truncated Magnus map, Fox
//! coefficients, the `F_k^ℓ γ_ℓ(F_k)` test and exact membership in the
//! normal closure of `x1^ℓ, (x2 x3⁻¹)^ℓ`.

mod free_product;
mod magnus;

pub use free_product::{fp_normal_form, in_h, FPWord};
pub use magnus::{fox_coefficient, in_power_gamma, magnus, Monomial, PowerGammaVerdict, TruncSeries};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::Verdict;
use crate::words::{enumerate_ball, FreeWord, Letter};

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerGammaReport {
    pub theorem: &'static str,
    pub rank: usize,
    pub ell: u32,
    pub ball_checked: usize,
    pub trivial_image: Vec<String>,
    pub short_words_certified_out: bool,
    pub abelian_condition_holds: bool,
    pub verdict: Verdict,
    pub claim: &'static str,
}

/// Scans `B(ℓ)` in rank `rank`: words shorter than `ℓ` must be certified
/// out, and the trivial-image words of length `ℓ` must be exactly `x_i^{±ℓ}`.
pub fn verify_power_gamma(rank: usize, ell: u32, cap: usize) -> Result<PowerGammaReport> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    let mut ball_checked = 0;
    let mut trivial = Vec::new();
    let mut short_ok = true;
    let mut abelian_ok = true;
    for w in enumerate_ball(rank, ell as usize, cap)? {
        ball_checked += 1;
        if in_power_gamma(&w, ell) == PowerGammaVerdict::TrivialImage {
            if !w.is_empty() && w.len() < ell as usize {
                short_ok = false;
            }
            if w.abelianize().0.iter().any(|e| e.rem_euclid(ell as i64) != 0) {
                abelian_ok = false;
            }
            trivial.push(w);
        }
    }
    let mut expected = vec![FreeWord::identity(rank)];
    for i in 1..=rank {
        for s in [1, -1] {
            expected.push(FreeWord::power(rank, i, s * ell as i64)?);
        }
    }
    let exact = trivial == expected;
    Ok(PowerGammaReport {
        theorem: "B",
        rank,
        ell,
        ball_checked,
        trivial_image: trivial.iter().map(|w| w.to_string()).collect(),
        short_words_certified_out: short_ok,
        abelian_condition_holds: abelian_ok,
        verdict: Verdict::from(short_ok && abelian_ok && exact),
        claim: "every w in F_k^l gamma_l(F_k) has length >= l, with equality iff w = x_i^(+-l)",
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FreeProductKernelReport {
    pub oracle: &'static str,
    pub ell: u32,
    pub ball_checked: usize,
    pub members_in_ball: Vec<String>,
    pub double_length_witnesses: Vec<String>,
    pub witnesses_are_members: bool,
    pub verdict: Verdict,
    pub claim: &'static str,
}

/// Scans `B(ℓ)` for members of `⟨x1^ℓ, (x2x3⁻¹)^ℓ⟩^{F3}` and checks that
/// `(x2x3⁻¹)^{±ℓ}` are members of length `2ℓ`.
pub fn verify_free_product_kernel(ell: u32, cap: usize) -> Result<FreeProductKernelReport> {
    if ell < 2 {
        return Err(Error::NotPrime(ell));
    }
    let e = ell as i64;
    let mut ball_checked = 0;
    let mut members = Vec::new();
    for w in enumerate_ball(3, ell as usize, cap)? {
        ball_checked += 1;
        if in_h(&w, ell) {
            members.push(w);
        }
    }
    let expected =
        vec![FreeWord::identity(3), FreeWord::power(3, 1, e)?, FreeWord::power(3, 1, -e)?];
    let v = &FreeWord::generator(3, 2)? * &FreeWord::generator(3, 3)?.inverse();
    let witnesses = [v.pow(e), v.pow(-e)];
    let witnesses_ok = witnesses.iter().all(|w| w.len() == 2 * ell as usize && in_h(w, ell));
    Ok(FreeProductKernelReport {
        oracle: "lemma43",
        ell,
        ball_checked,
        members_in_ball: members.iter().map(|w| w.to_string()).collect(),
        double_length_witnesses: witnesses.iter().map(|w| w.to_string()).collect(),
        witnesses_are_members: witnesses_ok,
        verdict: Verdict::from(members == expected && witnesses_ok),
        claim: "every w in <x1^l, (x2 x3^-1)^l>^F3 has length >= l, with equality iff w = x1^(+-l)",
    })
}

/// Random reduced word of length at most `max_len`.
pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> FreeWord {
    let n = rng.gen_range(0..=max_len);
    let letters = (0..n).map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5)));
    FreeWord::from_letters(rank, letters)
}

/// Random `x_{i1}^{α1} … x_{in}^{αn}` with adjacent indices distinct and
/// nonzero exponents; returns the word, the 1-based indices and exponents.
pub fn random_power_word<R: Rng>(
    rng: &mut R,
    rank: usize,
    max_syllables: usize,
    max_exponent: i64,
) -> (FreeWord, Vec<usize>, Vec<i64>) {
    assert!(rank >= 2 && max_syllables >= 1);
    let n = rng.gen_range(1..=max_syllables);
    let mut indices: Vec<usize> = Vec::with_capacity(n);
    let mut exps = Vec::with_capacity(n);
    for _ in 0..n {
        let i = loop {
            let i = rng.gen_range(1..=rank);
            if indices.last() != Some(&i) {
                break i;
            }
        };
        let mut a = rng.gen_range(1..=max_exponent);
        if rng.gen_bool(0.5) {
            a = -a;
        }
        indices.push(i);
        exps.push(a);
    }
    let mut w = FreeWord::identity(rank);
    for (&i, &a) in indices.iter().zip(&exps) {
        w = &w * &FreeWord::power(rank, i, a).expect("index in range");
    }
    (w, indices, exps)
}

#[derive(Debug, Clone, Serialize)]
pub struct FoxMagnusReport {
    pub oracle: &'static str,
    pub seed: u64,
    pub fox_samples: usize,
    pub fox_matches: usize,
    pub magnus_words: usize,
    pub magnus_settings: Vec<(i64, usize)>,
    pub magnus_failures: usize,
    pub verdict: Verdict,
    pub claim: &'static str,
}

pub const MAGNUS_MODULI: [i64; 4] = [0, 2, 3, 5];
pub const MAGNUS_DEGREE_BOUNDS: [usize; 3] = [2, 3, 5];

/// Seeded property suite: `c_W = ∏ α_i` on random power words, and
/// multiplicativity plus inverse cancellation of the truncated Magnus map.
pub fn verify_fox_magnus(fox_samples: usize, magnus_words: usize, seed: u64) -> FoxMagnusReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut fox_matches = 0;
    for _ in 0..fox_samples {
        let (w, indices, exps) = random_power_word(&mut rng, 3, 5, 4);
        if fox_coefficient(&w, &indices) == exps.iter().product::<i64>() {
            fox_matches += 1;
        }
    }
    let mut settings = Vec::new();
    let mut failures = 0;
    let words: Vec<FreeWord> = (0..magnus_words).map(|_| random_word(&mut rng, 3, 12)).collect();
    for &m in &MAGNUS_MODULI {
        for &d in &MAGNUS_DEGREE_BOUNDS {
            settings.push((m, d));
            for (i, u) in words.iter().enumerate() {
                let v = &words[(i + 1) % words.len()];
                let uv = magnus(&(u * v), m, d);
                if uv != magnus(u, m, d).mul(&magnus(v, m, d)) {
                    failures += 1;
                }
                if !magnus(&u.inverse(), m, d).mul(&magnus(u, m, d)).is_one() {
                    failures += 1;
                }
            }
        }
    }
    FoxMagnusReport {
        oracle: "fox",
        seed,
        fox_samples,
        fox_matches,
        magnus_words,
        magnus_settings: settings,
        magnus_failures: failures,
        verdict: Verdict::from(fox_matches == fox_samples && failures == 0),
        claim: "the Magnus coefficient of X_i1...X_in in x_i1^a1...x_in^an is a1*...*an",
    }
}
