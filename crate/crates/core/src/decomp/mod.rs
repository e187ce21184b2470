//! Krull–Schmidt decomposition over the dihedral group algebra.

mod hom;
mod identify;
mod iso;
mod local;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::group::Element;
use crate::module::Rep;

pub use hom::{end_space, hom_space, is_hom, HomSpace};
pub use identify::{find_word, identify_summand, IdTag, DEFAULT_BUDGET};
pub use iso::{
    find_unit, indecomposables_isomorphic, is_isomorphic, is_summand_of, scramble, Invariants,
    IsoVerdict,
};
pub use local::{certify_by_radical, certify_local, certify_prime_residue, Locality};

/// An indecomposable piece of a decomposition, with its basis written in the
/// coordinates of the decomposed module.
#[derive(Clone, Debug)]
pub struct Piece {
    pub rep: Rep,
    pub basis: BitMatrix,
    pub locality: Locality,
}

impl Piece {
    pub fn certified(&self) -> bool {
        matches!(self.locality, Locality::Local { .. })
    }
}

/// One isomorphism class of summands.
#[derive(Clone, Debug, Serialize)]
pub struct SummandClass {
    #[serde(skip)]
    pub rep: Rep,
    pub dim: usize,
    #[serde(rename = "mult")]
    pub multiplicity: usize,
    pub tag: IdTag,
    pub certified: bool,
    #[serde(skip)]
    pub pieces: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub q: usize,
    pub dim: usize,
    pub seed: u64,
    pub summands: Vec<SummandClass>,
    /// Whether the pieces' bases reassemble the module exactly.
    pub reassembled: bool,
    #[serde(skip)]
    pub pieces: Vec<Piece>,
}

impl DecompositionReport {
    pub fn all_certified(&self) -> bool {
        self.summands.iter().all(|s| s.certified)
    }

    /// Dimensions of the summands with repetition, ascending.
    pub fn dims(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .summands
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.dim, s.multiplicity))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn count_where(&self, f: impl Fn(&SummandClass) -> bool) -> usize {
        self.summands.iter().filter(|s| f(s)).map(|s| s.multiplicity).sum()
    }
}

/// Options for [`fitting_decompose`].
#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    pub seed: u64,
    /// Search budget for word recovery; `0` skips identification.
    pub id_budget: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { seed: 0, id_budget: DEFAULT_BUDGET }
    }
}

const RANDOM_SPLITS: usize = 64;
const EXTRA_SPLITS: usize = 512;

/// Decomposes `m` into indecomposables, groups them up to isomorphism and
/// identifies each class.
pub fn fitting_decompose(m: &Rep, seed: u64) -> DecompositionReport {
    decompose_with(m, DecomposeOptions { seed, ..Default::default() })
}

pub fn decompose_with(m: &Rep, opts: DecomposeOptions) -> DecompositionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pieces = Vec::new();
    split_into(m, BitMatrix::identity(m.dim()), &mut rng, &mut pieces);
    let reassembled = reassembles(m, &pieces);
    let mut classes: Vec<SummandClass> = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        let hit = classes.iter_mut().find(|c| {
            c.rep.dim() == p.rep.dim() && c.certified && p.certified() && {
                indecomposables_isomorphic(&c.rep, &p.rep).unwrap_or(false)
            }
        });
        match hit {
            Some(c) => {
                c.multiplicity += 1;
                c.pieces.push(i);
            }
            None => classes.push(SummandClass {
                rep: p.rep.clone(),
                dim: p.rep.dim(),
                multiplicity: 1,
                tag: IdTag::Unidentified,
                certified: p.certified(),
                pieces: vec![i],
            }),
        }
    }
    for c in classes.iter_mut() {
        if c.certified && opts.id_budget > 0 {
            c.tag = identify_summand(&c.rep, opts.id_budget);
        }
    }
    classes.sort_by(|a, b| a.dim.cmp(&b.dim).then(b.multiplicity.cmp(&a.multiplicity)));
    DecompositionReport {
        q: m.q().get(),
        dim: m.dim(),
        seed: opts.seed,
        summands: classes,
        reassembled,
        pieces,
    }
}

fn reassembles(m: &Rep, pieces: &[Piece]) -> bool {
    if m.dim() == 0 {
        return pieces.is_empty();
    }
    let Some(first) = pieces.first() else { return false };
    let mut t = first.basis.clone();
    for p in &pieces[1..] {
        t = t.vstack(&p.basis);
    }
    if t.rows() != m.dim() {
        return false;
    }
    let Ok(conj) = m.change_basis(&t) else { return false };
    let parts: Vec<&Rep> = pieces.iter().map(|p| &p.rep).collect();
    Rep::direct_sum(&parts).map(|d| d == conj).unwrap_or(false)
}

/// `φ^k` for some `k ≥ n`.
fn stable_power(phi: &BitMatrix) -> BitMatrix {
    let mut p = phi.clone();
    let mut k = 1;
    while k < phi.rows() {
        p = p.mul(&p);
        k *= 2;
    }
    p
}

fn push_sub(m: &Rep, basis: &BitMatrix, vectors: &[BitVec], rng: &mut ChaCha8Rng, out: &mut Vec<Piece>) {
    let (sub, sb) = m.submodule(vectors);
    split_into(&sub, sb.mul(basis), rng, out);
}

/// Free summands via an explicit retraction onto the free submodule, then
/// Fitting splits until every piece has a local endomorphism ring.
fn split_into(m: &Rep, basis: BitMatrix, rng: &mut ChaCha8Rng, out: &mut Vec<Piece>) {
    let n = m.dim();
    if n == 0 {
        return;
    }
    if let Some((free_parts, complement)) = free_splitting(m) {
        for f in free_parts {
            let (sub, sb) = m.submodule(&f);
            out.push(Piece { rep: sub, basis: sb.mul(&basis), locality: Locality::Local { residue_degree: 1 } });
        }
        if !complement.is_empty() {
            push_sub(m, &basis, &complement, rng, out);
        }
        return;
    }
    let end = end_space(m);
    if let loc @ Locality::Local { .. } = certify_prime_residue(&end) {
        out.push(Piece { rep: m.clone(), basis, locality: loc });
        return;
    }
    let d = end.dim();
    let try_split = |phi: &BitMatrix, out: &mut Vec<Piece>, rng: &mut ChaCha8Rng| -> bool {
        let p = stable_power(phi);
        let (img, _) = p.rref();
        if img.rows() == 0 || img.rows() == n {
            return false;
        }
        let ker = p.left_kernel();
        push_sub(m, &basis, &img.row_vecs(), rng, out);
        push_sub(m, &basis, &ker.row_vecs(), rng, out);
        true
    };
    for b in &end.basis {
        if try_split(b, out, rng) {
            return;
        }
    }
    let random_phi = |rng: &mut ChaCha8Rng| {
        let mut c = BitVec::zeros(d);
        for i in 0..d {
            c.set(i, rng.gen());
        }
        end.combine(&c)
    };
    for _ in 0..RANDOM_SPLITS {
        let phi = random_phi(rng);
        if try_split(&phi, out, rng) {
            return;
        }
    }
    let locality = certify_by_radical(&end);
    if let Locality::Local { .. } = locality {
        out.push(Piece { rep: m.clone(), basis, locality });
        return;
    }
    for i in 0..d.min(24) {
        for j in 0..d.min(24) {
            if try_split(&end.basis[i].mul(&end.basis[j]), out, rng) {
                return;
            }
        }
    }
    for _ in 0..EXTRA_SPLITS {
        let phi = random_phi(rng);
        if try_split(&phi, out, rng) {
            return;
        }
    }
    out.push(Piece { rep: m.clone(), basis, locality });
}

/// For `M` with free summands: generators of the free summands (one
/// generated submodule each) and a complementary submodule, as the kernel of
/// a retraction `M → F`.
///
/// Maps `M → KG` are `m ↦ Σ_g λ(m·g⁻¹)·g` for linear forms `λ`; choosing `λ_k`
/// dual to the basis `f_i·g` of `F` gives the retraction.
fn free_splitting(m: &Rep) -> Option<(Vec<Vec<BitVec>>, Vec<BitVec>)> {
    let n = m.dim();
    let q = m.q();
    let norm = m.norm_matrix();
    let mut e = Echelon::new(n);
    let mut gens = Vec::new();
    for j in 0..n {
        if e.insert(norm.row_vec(j)).is_some() {
            gens.push(BitVec::unit(n, j));
        }
    }
    if gens.is_empty() {
        return None;
    }
    let elems: Vec<Element> = Element::all(q).collect();
    let mats: Vec<BitMatrix> = elems.iter().map(|&g| m.element_matrix(g)).collect();
    let order = elems.len();
    let r = gens.len();
    // Basis f_i·g of F, extended to a basis of M.
    let mut rows: Vec<BitVec> = Vec::with_capacity(n);
    for f in &gens {
        for mg in &mats {
            rows.push(f.mul_mat(mg));
        }
    }
    let mut ext = Echelon::from_vectors(n, &rows);
    debug_assert_eq!(ext.dim(), r * order);
    for j in 0..n {
        let u = BitVec::unit(n, j);
        if ext.insert(u.clone()).is_some() {
            rows.push(u);
        }
    }
    let t = BitMatrix::from_vectors(n, &rows);
    let tinv = t.inverse().expect("extended basis");
    let id = elems.iter().position(|&g| g == Element::IDENTITY).expect("identity");
    // Λ (n × r): λ_k(f_i·g) = [i = k and g = 1], zero on the extension.
    let mut target = BitMatrix::zeros(n, r);
    for k in 0..r {
        target.set(k * order + id, k, true);
    }
    let lambda = tinv.mul(&target);
    // ρ: column block g holds M_{g⁻¹} Λ.
    let mut rho = BitMatrix::zeros(n, order * r);
    for (gi, &g) in elems.iter().enumerate() {
        let block = m.element_matrix(g.inv(q)).mul(&lambda);
        rho.paste(0, gi * r, &block);
    }
    let complement = rho.left_kernel().row_vecs();
    debug_assert_eq!(complement.len(), n - r * order);
    let free_parts = gens
        .iter()
        .map(|f| mats.iter().map(|mg| f.mul_mat(mg)).collect())
        .collect();
    Some((free_parts, complement))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{regular_module, string_module, trivial};
    use crate::word::QParam;

    fn q2() -> QParam {
        QParam::new(2).unwrap()
    }

    #[test]
    fn regular_is_one_projective() {
        let r = fitting_decompose(&regular_module(q2()), 1);
        assert_eq!(r.summands.len(), 1);
        assert_eq!(r.summands[0].tag, IdTag::Projective);
        assert_eq!(r.summands[0].multiplicity, 1);
        assert!(r.reassembled);
    }

    #[test]
    fn explicit_sums() {
        let a = string_module(&"a".parse().unwrap(), q2()).unwrap();
        let s = Rep::direct_sum(&[&a, &a]).unwrap();
        let r = fitting_decompose(&s, 2);
        assert_eq!(r.summands.len(), 1);
        assert_eq!(r.summands[0].multiplicity, 2);
        assert_eq!(r.summands[0].tag, IdTag::StringWord("a".parse().unwrap()));
        let kg = regular_module(q2());
        let k = trivial(q2());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mixed = scramble(&Rep::direct_sum(&[&kg, &a, &k, &kg]).unwrap(), &mut rng);
        let r = fitting_decompose(&mixed, 3);
        assert!(r.reassembled && r.all_certified());
        assert_eq!(r.dims(), vec![1, 2, 8, 8]);
    }

    #[test]
    fn tensor_square_of_aba() {
        let m = string_module(&"a b- a".parse().unwrap(), q2()).unwrap();
        let t = m.tensor(&m).unwrap();
        let r = fitting_decompose(&t, 0);
        assert!(r.reassembled && r.all_certified());
        assert!(r.dims().iter().all(|d| d % 2 == 0), "{:?}", r.dims());
        let even_strings = r.count_where(|s| matches!(s.tag, IdTag::StringWord(_)));
        assert_eq!(even_strings, 2);
    }
}
