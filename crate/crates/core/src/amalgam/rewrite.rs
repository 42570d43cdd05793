//! Rewriting elements of `ker φ` as words in the free basis
//! `x1 = za²za²`, `x2 = zaza`, `x3 = za³za³`.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::image::{phi, GroupElement, ImageElement};
use super::{normal_form, AmalgamNF, GWord, Sym};
use crate::error::{Error, Result};
use crate::words::{enumerate_ball, FreeWord};

const KERNEL_RANK: usize = 3;
const SYMS: [Sym; 3] = [Sym::A, Sym::B, Sym::Z];

/// Normal forms of `x1, x2, x3`.
pub fn kernel_generators() -> [AmalgamNF; 3] {
    ["z*a^2*z*a^2", "zaza", "z*a^3*z*a^3"]
        .map(|s| normal_form(&GWord::parse(s).expect("static word")))
}

/// Substitutes `x_i` by its element of `G`.
pub fn expand_kernel_word(w: &FreeWord) -> AmalgamNF {
    let gens = kernel_generators();
    let invs = gens.clone().map(|g| g.inverse());
    let mut out = AmalgamNF::identity();
    for l in w.letters() {
        let g = if l.inverse { &invs[l.gen as usize] } else { &gens[l.gen as usize] };
        out = out.mul(g);
    }
    out
}

/// Schreier transversal of `ker φ` and the rewriting table for its
/// Schreier generators.
pub struct KernelRewriter {
    /// Transversal element for each image index.
    transversal: Vec<AmalgamNF>,
    /// `table[c][s]` is `t_c · s · t_{c·φ(s)}⁻¹` as a word in `x1, x2, x3`.
    table: Vec<[FreeWord; 3]>,
}

impl KernelRewriter {
    /// Shared instance; construction is deterministic.
    pub fn get() -> &'static KernelRewriter {
        static INSTANCE: OnceLock<KernelRewriter> = OnceLock::new();
        INSTANCE.get_or_init(|| KernelRewriter::build().expect("kernel rewriter construction"))
    }

    fn build() -> Result<Self> {
        // BFS over the image with right multiplication by a, b, z
        let mut transversal: Vec<Option<AmalgamNF>> = vec![None; ImageElement::ORDER];
        transversal[ImageElement::IDENTITY.index()] = Some(AmalgamNF::identity());
        let mut queue = std::collections::VecDeque::from([ImageElement::IDENTITY]);
        while let Some(c) = queue.pop_front() {
            let rep = transversal[c.index()].clone().expect("visited");
            for s in SYMS {
                let d = c.op(&ImageElement::of_sym(s));
                if transversal[d.index()].is_none() {
                    let mut t = rep.clone();
                    t.mul_sym(s);
                    transversal[d.index()] = Some(t);
                    queue.push_back(d);
                }
            }
        }
        let transversal: Vec<AmalgamNF> =
            transversal.into_iter().map(|t| t.expect("image has order 16")).collect();

        let mut needed: Vec<(usize, usize, AmalgamNF)> = Vec::new();
        for (ci, t) in transversal.iter().enumerate() {
            let c = ImageElement::from_index(ci);
            for (si, &s) in SYMS.iter().enumerate() {
                let d = c.op(&ImageElement::of_sym(s));
                let mut g = t.clone();
                g.mul_sym(s);
                let g = g.mul(&transversal[d.index()].inverse());
                debug_assert!(phi(&g).is_one());
                needed.push((ci, si, g));
            }
        }

        // Look Schreier generators up among short words in the free basis;
        // the basis is free, so each kernel element has exactly one reduced word.
        let mut dictionary: HashMap<AmalgamNF, FreeWord> = HashMap::new();
        let mut radius = 0;
        while needed.iter().any(|(_, _, g)| !dictionary.contains_key(g)) {
            radius += 1;
            if radius > 8 {
                return Err(Error::CapExceeded { what: "Schreier generator lookup".into(), cap: 8 });
            }
            dictionary.clear();
            for w in enumerate_ball(KERNEL_RANK, radius, usize::MAX)? {
                dictionary.insert(expand_kernel_word(&w), w);
            }
        }

        let mut table = vec![std::array::from_fn(|_| FreeWord::identity(KERNEL_RANK)); ImageElement::ORDER];
        for (ci, si, g) in needed {
            table[ci][si] = dictionary[&g].clone();
        }
        Ok(KernelRewriter { transversal, table })
    }

    pub fn transversal(&self, c: ImageElement) -> &AmalgamNF {
        &self.transversal[c.index()]
    }

    /// Expresses a kernel element in `x1, x2, x3`.
    pub fn rewrite(&self, g: &AmalgamNF) -> Result<FreeWord> {
        if !phi(g).is_one() {
            return Err(Error::NotInKernel);
        }
        let mut coset = ImageElement::IDENTITY;
        let mut out = FreeWord::identity(KERNEL_RANK);
        for s in g.letters() {
            let si = SYMS.iter().position(|&t| t == s).expect("generator");
            out = &out * &self.table[coset.index()][si];
            coset = coset.op(&ImageElement::of_sym(s));
        }
        debug_assert!(coset.is_one());
        Ok(out)
    }
}

pub fn schreier_rewrite(g: &AmalgamNF) -> Result<FreeWord> {
    KernelRewriter::get().rewrite(g)
}

/// Images of `x1, x2, x3` under `v ↦ g⁻¹ v g` for a generator `g`.
pub fn conj_action(g: Sym) -> [FreeWord; 3] {
    let mut gnf = AmalgamNF::identity();
    gnf.mul_sym(g);
    conj_by(&gnf)
}

/// Images of `x1, x2, x3` under `v ↦ g⁻¹ v g` for any `g ∈ G`.
pub fn conj_by(g: &AmalgamNF) -> [FreeWord; 3] {
    let ginv = g.inverse();
    kernel_generators().map(|x| {
        schreier_rewrite(&ginv.mul(&x).mul(g)).expect("kernel is normal")
    })
}
