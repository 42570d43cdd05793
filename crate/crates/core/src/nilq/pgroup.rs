use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::words::FreeWord;

/// Element of `P = F3 / F3^{2ℓ} γ_ℓ(F3)`.
///
/// `a` is the abelianization mod `2ℓ`. For `ℓ = 3`, `c` holds the
/// commutator coordinates (mod 3) for the pairs `(2,1), (3,1), (3,2)`; for
/// `ℓ = 2` it is always zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PElement {
    pub a: [u8; 3],
    pub c: [u8; 3],
}

const PAIRS: [(usize, usize); 3] = [(1, 0), (2, 0), (2, 1)];

/// `P` for `ℓ ∈ {2, 3}`, with elements addressed by dense indices.
#[derive(Debug, Clone)]
pub struct PGroup {
    ell: u32,
    amod: u8,
    cmod: u8,
}

impl PGroup {
    pub fn new(ell: u32) -> Result<Self> {
        match ell {
            2 => Ok(PGroup { ell, amod: 4, cmod: 1 }),
            3 => Ok(PGroup { ell, amod: 6, cmod: 3 }),
            other => Err(Error::UnsupportedEll(other)),
        }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn order(&self) -> usize {
        (self.amod as usize).pow(3) * (self.cmod as usize).pow(3)
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Generator `x_i`, 1-based.
    pub fn generator(&self, i: usize) -> u32 {
        let mut e = PElement { a: [0; 3], c: [0; 3] };
        e.a[i - 1] = 1;
        self.encode(&e)
    }

    pub fn encode(&self, e: &PElement) -> u32 {
        let (am, cm) = (self.amod as u32, self.cmod as u32);
        let a = e.a[0] as u32 + am * (e.a[1] as u32 + am * e.a[2] as u32);
        let c = e.c[0] as u32 + cm * (e.c[1] as u32 + cm * e.c[2] as u32);
        a + am * am * am * c
    }

    pub fn decode(&self, mut x: u32) -> PElement {
        let (am, cm) = (self.amod as u32, self.cmod as u32);
        let mut e = PElement { a: [0; 3], c: [0; 3] };
        for k in 0..3 {
            e.a[k] = (x % am) as u8;
            x /= am;
        }
        for k in 0..3 {
            e.c[k] = (x % cm) as u8;
            x /= cm;
        }
        e
    }

    /// Collection product: `c″_{(j,i)} = c_{(j,i)} + c′_{(j,i)} + a_j a′_i` for `i < j`.
    pub fn mul_elements(&self, x: &PElement, y: &PElement) -> PElement {
        let (am, cm) = (self.amod as u32, self.cmod as u32);
        let mut out = PElement { a: [0; 3], c: [0; 3] };
        for k in 0..3 {
            out.a[k] = ((x.a[k] as u32 + y.a[k] as u32) % am) as u8;
        }
        for (k, &(j, i)) in PAIRS.iter().enumerate() {
            let s = x.c[k] as u32 + y.c[k] as u32 + x.a[j] as u32 * y.a[i] as u32;
            out.c[k] = (s % cm) as u8;
        }
        out
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.encode(&self.mul_elements(&self.decode(x), &self.decode(y)))
    }

    pub fn inv(&self, x: u32) -> u32 {
        // (a, c)⁻¹ = (−a, −c + B(a, a))
        let e = self.decode(x);
        let (am, cm) = (self.amod as u32, self.cmod as u32);
        let mut out = PElement { a: [0; 3], c: [0; 3] };
        for k in 0..3 {
            out.a[k] = ((am - e.a[k] as u32) % am) as u8;
        }
        for (k, &(j, i)) in PAIRS.iter().enumerate() {
            let s = cm - e.c[k] as u32 + e.a[j] as u32 * e.a[i] as u32;
            out.c[k] = (s % cm) as u8;
        }
        self.encode(&out)
    }

    /// `y⁻¹ x y`.
    pub fn conj(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(y), x), y)
    }

    pub fn pow(&self, x: u32, n: i64) -> u32 {
        let base = if n < 0 { self.inv(x) } else { x };
        (0..n.unsigned_abs()).fold(self.identity(), |acc, _| self.mul(acc, base))
    }

    /// Image of a rank-3 free word under `x_i ↦ x_i`.
    pub fn evaluate(&self, w: &FreeWord) -> u32 {
        let gens = [1, 2, 3].map(|i| self.generator(i));
        let invs = gens.map(|g| self.inv(g));
        w.letters().iter().fold(self.identity(), |acc, l| {
            let g = if l.inverse { invs[l.gen as usize] } else { gens[l.gen as usize] };
            self.mul(acc, g)
        })
    }
}

impl fmt::Display for PElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}; {},{},{})", self.a[0], self.a[1], self.a[2], self.c[0], self.c[1], self.c[2])
    }
}

/// Endomorphism of `P` given by the images of the generators, tabulated on
/// all elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutoMap {
    pub images: [u32; 3],
    table: Vec<u32>,
}

impl AutoMap {
    /// Extends `x_i ↦ images[i]` along the Cayley graph of `P` and checks
    /// that the result is a bijective homomorphism.
    pub fn new(p: &PGroup, images: [u32; 3]) -> Result<Self> {
        let n = p.order();
        let gens = [1, 2, 3].map(|i| p.generator(i));
        let mut table = vec![u32::MAX; n];
        table[p.identity() as usize] = p.identity();
        let mut queue = VecDeque::from([p.identity()]);
        while let Some(g) = queue.pop_front() {
            for k in 0..3 {
                let h = p.mul(g, gens[k]) as usize;
                if table[h] == u32::MAX {
                    table[h] = p.mul(table[g as usize], images[k]);
                    queue.push_back(h as u32);
                }
            }
        }
        for g in 0..n as u32 {
            for k in 0..3 {
                if table[p.mul(g, gens[k]) as usize] != p.mul(table[g as usize], images[k]) {
                    return Err(Error::NonBijective("generator images do not define a homomorphism".into()));
                }
            }
        }
        let mut hit = vec![false; n];
        for &y in &table {
            if std::mem::replace(&mut hit[y as usize], true) {
                return Err(Error::NonBijective("induced endomorphism is not injective".into()));
            }
        }
        Ok(AutoMap { images, table })
    }

    /// The map induced by substituting the words `images` for `x1, x2, x3`.
    pub fn from_words(p: &PGroup, images: &[FreeWord; 3]) -> Result<Self> {
        Self::new(p, [0, 1, 2].map(|k| p.evaluate(&images[k])))
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AutoMap) -> AutoMap {
        let table: Vec<u32> = other.table.iter().map(|&y| self.table[y as usize]).collect();
        let images = other.images.map(|y| self.table[y as usize]);
        AutoMap { images, table }
    }
}

/// Smallest subgroup containing `seeds` that is normal in `P` and invariant
/// under every map in `autos`; returned as a membership vector.
pub fn invariant_closure(p: &PGroup, seeds: &[u32], autos: &[AutoMap]) -> Vec<bool> {
    let n = p.order();
    let gens: Vec<u32> = (1..=3).map(|i| p.generator(i)).collect();
    // orbit of the seeds under conjugation and the automorphisms
    let mut in_orbit = vec![false; n];
    let mut orbit = Vec::new();
    for &s in seeds {
        if !std::mem::replace(&mut in_orbit[s as usize], true) {
            orbit.push(s);
        }
    }
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        i += 1;
        let images = gens.iter().map(|&g| p.conj(x, g)).chain(autos.iter().map(|f| f.apply(x)));
        for y in images.collect::<Vec<_>>() {
            if !std::mem::replace(&mut in_orbit[y as usize], true) {
                orbit.push(y);
            }
        }
    }
    // subgroup generated by the orbit (finite, so closure under products suffices)
    let mut member = vec![false; n];
    member[p.identity() as usize] = true;
    let mut queue = vec![p.identity()];
    while let Some(x) = queue.pop() {
        for &g in &orbit {
            let y = p.mul(x, g);
            if !std::mem::replace(&mut member[y as usize], true) {
                queue.push(y);
            }
        }
    }
    member
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{conj_action, Sym};

    fn word(s: &str) -> FreeWord {
        FreeWord::parse(s, 3).unwrap()
    }

    #[test]
    fn orders_and_rejection() {
        assert_eq!(PGroup::new(2).unwrap().order(), 64);
        assert_eq!(PGroup::new(3).unwrap().order(), 5832);
        assert!(matches!(PGroup::new(5), Err(Error::UnsupportedEll(5))));
    }

    #[test]
    fn ell2_is_abelian_mod_4() {
        let p = PGroup::new(2).unwrap();
        assert_eq!(p.decode(p.generator(1)).a, [1, 0, 0]);
        for x in 0..64 {
            for y in 0..64 {
                assert_eq!(p.mul(x, y), p.mul(y, x));
            }
            assert_eq!(p.pow(x, 4), 0);
        }
    }

    #[test]
    fn ell3_exponent_relations() {
        let p = PGroup::new(3).unwrap();
        assert_eq!(p.evaluate(&word("x1^6")), 0);
        assert_eq!(p.evaluate(&word("(x1*x2)^6")), 0);
        assert_eq!(p.evaluate(&word("(x1*x2^-1*x3)^6")), 0);
        // class exactly 2: commutators nontrivial but central
        let c = FreeWord::commutator(&word("x2"), &word("x1"));
        assert_ne!(p.evaluate(&c), 0);
        let cc = FreeWord::commutator(&c, &word("x3"));
        assert_eq!(p.evaluate(&cc), 0);
        for x in (0..5832).step_by(97) {
            assert_eq!(p.mul(x, p.inv(x)), 0);
            assert_eq!(p.pow(x, 6), 0);
        }
    }

    #[test]
    fn ell3_associative_on_samples() {
        let p = PGroup::new(3).unwrap();
        let mut s = 12345u64;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 33) % 5832) as u32
        };
        for _ in 0..20_000 {
            let (x, y, z) = (next(), next(), next());
            assert_eq!(p.mul(p.mul(x, y), z), p.mul(x, p.mul(y, z)));
        }
    }

    #[test]
    fn conjugation_automorphisms_on_ell2() {
        let p = PGroup::new(2).unwrap();
        let az = AutoMap::from_words(&p, &conj_action(Sym::Z)).unwrap();
        assert_eq!(p.decode(az.apply(p.generator(1))).a, [3, 0, 0]);
        let aa = AutoMap::from_words(&p, &conj_action(Sym::A)).unwrap();
        assert_eq!(p.decode(aa.apply(p.generator(1))).a, [0, 3, 1]);
        let a4 = aa.compose(&aa).compose(&aa).compose(&aa);
        assert!(a4.is_identity());
    }

    #[test]
    fn automorphisms_on_ell3_have_finite_order() {
        let p = PGroup::new(3).unwrap();
        let aa = AutoMap::from_words(&p, &conj_action(Sym::A)).unwrap();
        let a4 = aa.compose(&aa).compose(&aa).compose(&aa);
        assert!(a4.is_identity());
        for s in [Sym::B, Sym::Z] {
            let m = AutoMap::from_words(&p, &conj_action(s)).unwrap();
            assert!(m.compose(&m).is_identity());
        }
    }

    #[test]
    fn non_bijective_images_rejected() {
        let p = PGroup::new(2).unwrap();
        let x1 = p.generator(1);
        assert!(matches!(AutoMap::new(&p, [x1, x1, x1]), Err(Error::NonBijective(_))));
    }

    #[test]
    fn closure_examples() {
        let p = PGroup::new(2).unwrap();
        let autos: Vec<AutoMap> =
            [Sym::A, Sym::B, Sym::Z].map(|s| AutoMap::from_words(&p, &conj_action(s)).unwrap()).to_vec();
        let trivial = invariant_closure(&p, &[0], &autos);
        assert_eq!(trivial.iter().filter(|&&m| m).count(), 1);
        let seed = p.evaluate(&word("x1^2"));
        let m = invariant_closure(&p, &[seed], &autos);
        let at = |a: [u8; 3]| m[p.encode(&PElement { a, c: [0; 3] }) as usize];
        assert!(at([2, 0, 0]) && at([0, 2, 2]));
        for f in &autos {
            assert!((0..64).all(|x| m[x as usize] == m[f.apply(x) as usize]));
        }
    }
}
