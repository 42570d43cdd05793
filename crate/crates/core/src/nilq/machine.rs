use serde::Serialize;

use super::pgroup::{invariant_closure, AutoMap, PGroup};
use crate::amalgam::{
    conj_action, conj_by, phi, schreier_rewrite, AmalgamNF, GroupElement, ImageElement, KernelRewriter, Sym,
};
use crate::error::{Error, Result};
use crate::words::FreeWord;

/// Finite quotient `G/M`, where `M` is the kernel of `ker φ = F3 → Q`.
///
/// An element is a pair `(q, t)` standing for `k · s_t`, with `s_t` the
/// transversal element over image index `t` and `q ∈ Q` the class of `k`.
/// Machine elements are dense indices `q * 16 + t`.
#[derive(Debug, Clone)]
pub struct QuotientMachine {
    ell: u32,
    p: PGroup,
    mbar_order: usize,
    /// `P → Q`.
    coset_of: Vec<u32>,
    /// Least `P`-element of each class.
    rep: Vec<u32>,
    /// `beta[t][q]`: class of `s_t k s_t⁻¹` for `k` in class `q`.
    beta: Vec<Vec<u32>>,
    /// `cocycle[t][u]`: class of `s_t s_u s_{tu}⁻¹`.
    cocycle: Vec<Vec<u32>>,
    gens: [u32; 3],
}

const T: usize = ImageElement::ORDER;

#[derive(Debug, Clone, Serialize)]
pub struct MachineSummary {
    pub ell: u32,
    #[serde(rename = "P_order")]
    pub p_order: usize,
    #[serde(rename = "Mbar_order")]
    pub mbar_order: usize,
    #[serde(rename = "Q_order")]
    pub q_order: usize,
    pub machine_order: usize,
}

impl QuotientMachine {
    pub fn build(ell: u32) -> Result<Self> {
        let p = PGroup::new(ell)?;
        let autos = [Sym::A, Sym::B, Sym::Z]
            .map(|s| AutoMap::from_words(&p, &conj_action(s)))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let seed = p.evaluate(&FreeWord::power(3, 1, ell as i64)?);
        let member = invariant_closure(&p, &[seed], &autos);
        let mbar: Vec<u32> = (0..p.order() as u32).filter(|&x| member[x as usize]).collect();

        let mut coset_of = vec![u32::MAX; p.order()];
        let mut rep = Vec::new();
        for x in 0..p.order() as u32 {
            if coset_of[x as usize] == u32::MAX {
                let q = rep.len() as u32;
                rep.push(x);
                for &m in &mbar {
                    coset_of[p.mul(x, m) as usize] = q;
                }
            }
        }
        let q_order = rep.len();
        let project = |w: &FreeWord| coset_of[p.evaluate(w) as usize];

        let rw = KernelRewriter::get();
        let trans: Vec<AmalgamNF> = (0..T).map(|t| rw.transversal(ImageElement::from_index(t)).clone()).collect();
        let mut beta = Vec::with_capacity(T);
        for s in &trans {
            // k ↦ s k s⁻¹ is conjugation v ↦ g⁻¹ v g with g = s⁻¹
            let alpha = AutoMap::from_words(&p, &conj_by(&s.inverse()))?;
            let row: Vec<u32> = rep.iter().map(|&x| coset_of[alpha.apply(x) as usize]).collect();
            beta.push(row);
        }
        let mut cocycle = vec![vec![0u32; T]; T];
        for t in 0..T {
            for u in 0..T {
                let tu = ImageElement::from_index(t).op(&ImageElement::from_index(u)).index();
                let k = trans[t].mul(&trans[u]).mul(&trans[tu].inverse());
                cocycle[t][u] = project(&schreier_rewrite(&k)?);
            }
        }
        let mut m = QuotientMachine {
            ell,
            p,
            mbar_order: mbar.len(),
            coset_of,
            rep,
            beta,
            cocycle,
            gens: [0; 3],
        };
        debug_assert_eq!(m.order(), T * q_order);
        m.gens = [Sym::A, Sym::B, Sym::Z].map(|s| {
            let mut g = AmalgamNF::identity();
            g.mul_sym(s);
            m.element_by_rewriting(&g).expect("generator image")
        });
        Ok(m)
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn p_group(&self) -> &PGroup {
        &self.p
    }

    pub fn q_order(&self) -> usize {
        self.rep.len()
    }

    pub fn order(&self) -> usize {
        T * self.q_order()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn summary(&self) -> MachineSummary {
        MachineSummary {
            ell: self.ell,
            p_order: self.p.order(),
            mbar_order: self.mbar_order,
            q_order: self.q_order(),
            machine_order: self.order(),
        }
    }

    fn q_mul(&self, x: u32, y: u32) -> u32 {
        self.coset_of[self.p.mul(self.rep[x as usize], self.rep[y as usize]) as usize]
    }

    pub fn mul(&self, g: u32, h: u32) -> u32 {
        let (q, t) = ((g as usize / T) as u32, g as usize % T);
        let (r, u) = ((h as usize / T) as u32, h as usize % T);
        let tu = ImageElement::from_index(t).op(&ImageElement::from_index(u)).index();
        let k = self.q_mul(self.q_mul(q, self.beta[t][r as usize]), self.cocycle[t][u]);
        k * T as u32 + tu as u32
    }

    pub fn inv(&self, g: u32) -> u32 {
        // finite group: g⁻¹ = g^{order(g) - 1}
        let mut prev = self.identity();
        let mut x = g;
        while x != self.identity() {
            prev = x;
            x = self.mul(x, g);
        }
        prev
    }

    /// Images of `a`, `b`, `z`.
    pub fn generators(&self) -> [u32; 3] {
        self.gens
    }

    pub fn of_sym(&self, s: Sym) -> u32 {
        match s {
            Sym::A => self.gens[0],
            Sym::B => self.gens[1],
            Sym::Z => self.gens[2],
        }
    }

    /// Image of `g` obtained by multiplying generator images.
    pub fn element(&self, g: &AmalgamNF) -> u32 {
        g.letters().into_iter().fold(self.identity(), |acc, s| self.mul(acc, self.of_sym(s)))
    }

    /// Image of `g` obtained directly from its decomposition `k · s_t`;
    /// agrees with [`Self::element`] exactly when the machine is a homomorphism.
    pub fn element_by_rewriting(&self, g: &AmalgamNF) -> Result<u32> {
        let t = phi(g);
        let s = KernelRewriter::get().transversal(t);
        let k = schreier_rewrite(&g.mul(&s.inverse()))?;
        let q = self.coset_of[self.p.evaluate(&k) as usize];
        Ok(q * T as u32 + t.index() as u32)
    }

    /// Image of a word in the kernel basis, read as an element of `G`.
    pub fn kernel_element(&self, w: &FreeWord) -> u32 {
        self.coset_of[self.p.evaluate(w) as usize] * T as u32
    }

    /// Exact test `g ∈ M`.
    pub fn is_in_m(&self, g: &AmalgamNF) -> bool {
        self.element(g) == self.identity()
    }

    /// Index in `0..16` of the `φ`-image of a machine element.
    pub fn image_index(g: u32) -> usize {
        g as usize % T
    }
}

/// Every `g ∈ B_*(radius)` with `g ∈ M`, in star-ball order, plus the
/// number of elements visited.
pub fn verify_ball_intersection(m: &QuotientMachine, radius: usize, cap: usize) -> Result<(Vec<AmalgamNF>, u128)> {
    let size = crate::amalgam::star_ball_size(radius);
    if size > cap as u128 {
        return Err(Error::CapExceeded { what: format!("star ball B_*({radius})"), cap });
    }
    let [a, ab, z] = [m.of_sym(Sym::A), m.mul(m.of_sym(Sym::A), m.of_sym(Sym::B)), m.of_sym(Sym::Z)];
    let a_pows = [m.identity(), a, m.mul(a, a), m.mul(m.mul(a, a), a)];
    let mut found = Vec::new();
    let mut visited = 0u128;
    let mut exps = Vec::new();
    for eps in 0..2u8 {
        let start = if eps == 1 { ab } else { m.identity() };
        for e1 in 0..4u8 {
            let cost = (e1 != 0) as usize;
            if cost > radius {
                continue;
            }
            exps.clear();
            exps.push(e1);
            let g = m.mul(start, a_pows[e1 as usize]);
            walk(m, &a_pows, z, g, cost, radius, eps, &mut exps, &mut found, &mut visited);
        }
    }
    found.sort_by_key(|g: &AmalgamNF| (g.star_length(), g.z_count(), g.eps(), g.exps().to_vec()));
    debug_assert_eq!(visited, size);
    Ok((found, visited))
}

/// Depth-first walk over reduced forms extending `exps`; `g` is the image
/// of the current prefix, which ends in an `a`-power (possibly trivial).
#[allow(clippy::too_many_arguments)]
fn walk(
    m: &QuotientMachine,
    a_pows: &[u32; 4],
    z: u32,
    g: u32,
    cost: usize,
    radius: usize,
    eps: u8,
    exps: &mut Vec<u8>,
    found: &mut Vec<AmalgamNF>,
    visited: &mut u128,
) {
    *visited += 1;
    if g == m.identity() {
        found.push(AmalgamNF::from_parts(eps, exps.clone()).expect("reduced by construction"));
    }
    // a trailing zero exponent can only be followed by stopping
    let last = *exps.last().expect("nonempty");
    if exps.len() > 1 && last == 0 {
        return;
    }
    if cost < radius {
        let gz = m.mul(g, z);
        for e in 0..4u8 {
            let c = cost + 1 + (e != 0) as usize;
            if c > radius {
                continue;
            }
            exps.push(e);
            walk(m, a_pows, z, m.mul(gz, a_pows[e as usize]), c, radius, eps, exps, found, visited);
            exps.pop();
        }
    }
}

/// Evaluation check on `B(ℓ)` over the kernel basis: every word whose
/// expansion lies in `M` maps to a multiple of `2ℓ` under
/// `x1 ↦ 0, x2 ↦ 1, x3 ↦ 1`. Returns the members found.
pub fn evaluation_check(m: &QuotientMachine, cap: usize) -> Result<(Vec<FreeWord>, bool)> {
    let ell = m.ell() as usize;
    let mut members = Vec::new();
    let mut ok = true;
    for w in crate::words::enumerate_ball(3, ell, cap)? {
        if m.kernel_element(&w) == m.identity() {
            if w.evaluate(&[0, 1, 1]).rem_euclid(2 * ell as i64) != 0 {
                ok = false;
            }
            members.push(w);
        }
    }
    Ok((members, ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{expand_kernel_word, normal_form, star_ball, GWord};

    fn g(s: &str) -> AmalgamNF {
        normal_form(&GWord::parse(s).unwrap())
    }

    #[test]
    fn relators_act_trivially() {
        for ell in [2, 3] {
            let m = QuotientMachine::build(ell).unwrap();
            for r in ["a^4", "b^2", "(ab)^2", "z^2", "(abz)^2"] {
                assert!(m.is_in_m(&g(r)), "{r}");
            }
            let x1l = FreeWord::power(3, 1, ell as i64).unwrap();
            assert!(m.is_in_m(&expand_kernel_word(&x1l)));
            assert_eq!(m.order() % 16, 0);
            assert_eq!((16 * m.p_group().order()) % m.order(), 0);
        }
    }

    #[test]
    fn multiplication_is_consistent_with_rewriting() {
        let m = QuotientMachine::build(2).unwrap();
        for h in star_ball(5, 1 << 20).unwrap() {
            assert_eq!(m.element(&h), m.element_by_rewriting(&h).unwrap(), "{h}");
        }
    }

    #[test]
    fn machine_is_associative_on_generators() {
        let m = QuotientMachine::build(2).unwrap();
        let n = m.order() as u32;
        for x in (0..n).step_by(7) {
            for &y in &m.generators() {
                for &z in &m.generators() {
                    assert_eq!(m.mul(m.mul(x, y), z), m.mul(x, m.mul(y, z)));
                }
            }
            assert_eq!(m.mul(x, m.inv(x)), m.identity());
        }
    }

    #[test]
    fn membership_examples() {
        for ell in [2u32, 3] {
            let m = QuotientMachine::build(ell).unwrap();
            let e = 2 * ell as i64;
            assert!(m.is_in_m(&g("z*a^2").pow(e)));
            assert!(m.is_in_m(&g("z*a^2").pow(-e)));
            assert!(!m.is_in_m(&g("z*a^2").pow(e / 2)));
            for i in [2, 3] {
                let w = FreeWord::power(3, i, ell as i64).unwrap();
                assert!(!m.is_in_m(&expand_kernel_word(&w)));
            }
        }
    }

    #[test]
    fn evaluation_check_holds() {
        for ell in [2, 3] {
            let m = QuotientMachine::build(ell).unwrap();
            let (members, ok) = evaluation_check(&m, 1 << 20).unwrap();
            assert!(ok);
            assert!(members.len() >= 3);
        }
    }

    #[test]
    fn small_ball_is_trivial() {
        let m = QuotientMachine::build(2).unwrap();
        let (found, visited) = verify_ball_intersection(&m, 7, 1 << 24).unwrap();
        assert_eq!(visited, crate::amalgam::star_ball_size(7));
        assert_eq!(found, vec![AmalgamNF::identity()]);
    }
}
