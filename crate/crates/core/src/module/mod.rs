//! Modules for the dihedral group given by the matrices of the generators.
//!
//! Modules are right modules: vectors are rows and `g` acts by `v ↦ v·M_g`,
//! so `M_{gh} = M_g·M_h`.

mod construct;
mod heller;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::group::Element;
use crate::word::QParam;

pub use construct::{band_module, induce, regular_module, string_module, trivial};
pub use heller::{free_rank, heller, omega, omega_inverse, split_free, top_generators};

/// A representation of `D_{4q}` (or of `V₄` when `q = 1`): involutions `x`, `y`
/// with `(xy)^{2q} = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rep {
    q: QParam,
    x: BitMatrix,
    y: BitMatrix,
}

impl Rep {
    pub fn new(q: QParam, x: BitMatrix, y: BitMatrix) -> Result<Self> {
        let rep = Rep { q, x, y };
        rep.check()?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(q: QParam, x: BitMatrix, y: BitMatrix) -> Self {
        let rep = Rep { q, x, y };
        debug_assert!(rep.check().is_ok(), "constructed rep violates relations");
        rep
    }

    /// Checks squareness, `x² = y² = 1` and `(xy)^{2q} = 1`.
    pub fn check(&self) -> Result<()> {
        let n = self.x.rows();
        if !self.x.is_square() || !self.y.is_square() || self.y.rows() != n {
            return Err(Error::InvalidRep("generators must be square of equal size".into()));
        }
        if !self.x.mul(&self.x).is_identity() {
            return Err(Error::InvalidRep("x² ≠ 1".into()));
        }
        if !self.y.mul(&self.y).is_identity() {
            return Err(Error::InvalidRep("y² ≠ 1".into()));
        }
        if !self.x.mul(&self.y).pow(2 * self.q.get() as u64).is_identity() {
            return Err(Error::InvalidRep(format!("(xy)^{} ≠ 1", 2 * self.q.get())));
        }
        Ok(())
    }

    pub fn q(&self) -> QParam {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.x.rows()
    }

    /// Matrix of `x` (α).
    pub fn x(&self) -> &BitMatrix {
        &self.x
    }

    /// Matrix of `y` (β).
    pub fn y(&self) -> &BitMatrix {
        &self.y
    }

    pub fn gens(&self) -> [&BitMatrix; 2] {
        [&self.x, &self.y]
    }

    pub fn element_matrix(&self, g: Element) -> BitMatrix {
        let r = self.x.mul(&self.y).pow(g.rot as u64);
        if g.refl {
            self.x.mul(&r)
        } else {
            r
        }
    }

    /// `ζ = (αβ)^q`, the action of the central involution.
    pub fn z_matrix(&self) -> BitMatrix {
        self.x.mul(&self.y).pow(self.q.get() as u64)
    }

    /// Sum of the matrices of all group elements.
    pub fn norm_matrix(&self) -> BitMatrix {
        let n = self.dim();
        let r = self.x.mul(&self.y);
        let mut sum = BitMatrix::zeros(n, n);
        let mut cur = BitMatrix::identity(n);
        for _ in 0..2 * self.q.get() {
            sum.add_assign(&cur);
            cur = cur.mul(&r);
        }
        sum.add(&self.x.mul(&sum))
    }

    pub fn check_same_group(&self, other: &Rep) -> Result<()> {
        if self.q != other.q {
            Err(Error::QMismatch(self.q.get(), other.q.get()))
        } else {
            Ok(())
        }
    }

    pub fn direct_sum(parts: &[&Rep]) -> Result<Rep> {
        let first = parts.first().ok_or_else(|| Error::Dimension("empty direct sum".into()))?;
        for p in parts {
            first.check_same_group(p)?;
        }
        let xs: Vec<&BitMatrix> = parts.iter().map(|p| &p.x).collect();
        let ys: Vec<&BitMatrix> = parts.iter().map(|p| &p.y).collect();
        Ok(Rep::new_unchecked(first.q, BitMatrix::direct_sum(&xs), BitMatrix::direct_sum(&ys)))
    }

    /// Zero-dimensional module.
    pub fn zero(q: QParam) -> Rep {
        Rep { q, x: BitMatrix::zeros(0, 0), y: BitMatrix::zeros(0, 0) }
    }

    /// Diagonal action on the tensor product.
    pub fn tensor(&self, other: &Rep) -> Result<Rep> {
        self.check_same_group(other)?;
        Ok(Rep::new_unchecked(self.q, self.x.kronecker(&other.x), self.y.kronecker(&other.y)))
    }

    /// Contragredient module: generators are involutions, so transposes.
    pub fn dual(&self) -> Rep {
        Rep { q: self.q, x: self.x.transpose(), y: self.y.transpose() }
    }

    /// `T·g·T⁻¹` for each generator: the same module in the basis given by the
    /// rows of `t`.
    pub fn change_basis(&self, t: &BitMatrix) -> Result<Rep> {
        let inv = t.inverse().ok_or(Error::NotInvertible)?;
        Ok(Rep::new_unchecked(self.q, t.mul(&self.x).mul(&inv), t.mul(&self.y).mul(&inv)))
    }

    /// Module on the invariant subspace spanned by `vectors`, in its reduced
    /// echelon basis. Returns the module and that basis.
    pub fn submodule(&self, vectors: &[BitVec]) -> (Rep, BitMatrix) {
        let n = self.dim();
        let (basis, pivots) = BitMatrix::from_vectors(n, vectors).rref();
        let k = basis.rows();
        let act = |g: &BitMatrix| {
            let mut out = BitMatrix::zeros(k, k);
            for i in 0..k {
                let img = basis.row_vec(i).mul_mat(g);
                for (j, &p) in pivots.iter().enumerate() {
                    if img.get(p) {
                        out.set(i, j, true);
                    }
                }
                debug_assert!(
                    {
                        let mut e = Echelon::new(n);
                        for v in basis.row_vecs() {
                            e.insert(v);
                        }
                        e.contains(&img)
                    },
                    "subspace is not invariant"
                );
            }
            out
        };
        (Rep::new_unchecked(self.q, act(&self.x), act(&self.y)), basis)
    }

    /// Quotient by the invariant subspace spanned by `vectors`; the quotient
    /// basis is the standard vectors off the pivot columns.
    pub fn quotient(&self, vectors: &[BitVec]) -> Rep {
        let n = self.dim();
        let (basis, pivots) = BitMatrix::from_vectors(n, vectors).rref();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rest: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let k = rest.len();
        let act = |g: &BitMatrix| {
            let mut out = BitMatrix::zeros(k, k);
            for (i, &c) in rest.iter().enumerate() {
                let mut img = g.row_vec(c);
                for (r, &p) in pivots.iter().enumerate() {
                    if img.get(p) {
                        img.add_assign(&basis.row_vec(r));
                    }
                }
                for (j, &c2) in rest.iter().enumerate() {
                    if img.get(c2) {
                        out.set(i, j, true);
                    }
                }
            }
            out
        };
        Rep::new_unchecked(self.q, act(&self.x), act(&self.y))
    }

    /// Submodule generated by `vectors`: closure under both generators.
    pub fn generated_subspace(&self, vectors: &[BitVec]) -> Vec<BitVec> {
        let mut e = Echelon::new(self.dim());
        let mut queue: Vec<BitVec> = Vec::new();
        for v in vectors {
            if e.insert(v.clone()).is_some() {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for g in self.gens() {
                let w = v.mul_mat(g);
                if e.insert(w.clone()).is_some() {
                    queue.push(w);
                }
            }
        }
        e.basis().to_vec()
    }

    /// Bases (reduced echelon) of `rad M = M(x+1) + M(y+1)` and
    /// `soc M = ker(x+1) ∩ ker(y+1)`.
    pub fn radical_socle(&self) -> (BitMatrix, BitMatrix) {
        let (u, v) = (self.x.plus_identity(), self.y.plus_identity());
        let (rad, _) = u.vstack(&v).rref();
        let n = self.dim();
        let mut both = BitMatrix::zeros(n, 2 * n);
        both.paste(0, 0, &u);
        both.paste(0, n, &v);
        let soc = both.left_kernel();
        (rad, soc)
    }

    /// Restriction to one of the four distinguished subgroups.
    pub fn restrict(&self, s: SubgroupId) -> Restricted {
        match s {
            SubgroupId::GenX => Restricted::Cyclic(self.x.clone()),
            SubgroupId::GenY => Restricted::Cyclic(self.y.clone()),
            SubgroupId::KleinX => {
                Restricted::Klein(KleinRep::new_unchecked(self.x.clone(), self.z_matrix()))
            }
            SubgroupId::KleinY => {
                Restricted::Klein(KleinRep::new_unchecked(self.y.clone(), self.z_matrix()))
            }
        }
    }

    pub fn restrict_klein(&self, s: SubgroupId) -> KleinRep {
        match self.restrict(s) {
            Restricted::Klein(k) => k,
            Restricted::Cyclic(_) => panic!("{s:?} is not a Klein subgroup"),
        }
    }
}

/// The subgroups the toolkit restricts to; `z = (xy)^q` is central.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubgroupId {
    /// `<x>`
    GenX,
    /// `<y>`
    GenY,
    /// `X = <x, z>`
    KleinX,
    /// `Y = <y, z>`
    KleinY,
}

impl SubgroupId {
    pub fn is_klein(self) -> bool {
        matches!(self, SubgroupId::KleinX | SubgroupId::KleinY)
    }

    /// Elements of the subgroup paired with their word in the two Klein
    /// generators `(g1^a, g2^b)` where `g2 = z`.
    pub(crate) fn klein_elements(self, q: QParam) -> [(Element, bool, bool); 4] {
        let g1 = match self {
            SubgroupId::KleinX => Element::X,
            SubgroupId::KleinY => Element::Y,
            _ => panic!("{self:?} is not a Klein subgroup"),
        };
        let z = Element::z(q);
        [
            (Element::IDENTITY, false, false),
            (g1, true, false),
            (z, false, true),
            (g1.mul(z, q), true, true),
        ]
    }
}

/// Restriction to a cyclic subgroup of order 2 or to a Klein four subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restricted {
    Cyclic(BitMatrix),
    Klein(KleinRep),
}

/// Module for a cyclic group of order two: counts of free and trivial summands.
pub fn cyclic_decomposition(g: &BitMatrix) -> (usize, usize) {
    let free = g.plus_identity().rank();
    (free, g.rows() - 2 * free)
}

/// A module for the Klein four group: two commuting involutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KleinRep {
    pub g1: BitMatrix,
    pub g2: BitMatrix,
}

impl KleinRep {
    pub fn new(g1: BitMatrix, g2: BitMatrix) -> Result<Self> {
        let k = KleinRep { g1, g2 };
        k.as_rep_checked()?;
        if k.g1.mul(&k.g2) != k.g2.mul(&k.g1) {
            return Err(Error::InvalidRep("Klein generators do not commute".into()));
        }
        Ok(k)
    }

    pub(crate) fn new_unchecked(g1: BitMatrix, g2: BitMatrix) -> Self {
        KleinRep { g1, g2 }
    }

    pub fn dim(&self) -> usize {
        self.g1.rows()
    }

    fn as_rep_checked(&self) -> Result<Rep> {
        Rep::new(QParam::KLEIN, self.g1.clone(), self.g2.clone())
    }

    /// The same module viewed through the `q = 1` presentation of `V₄`.
    pub fn as_rep(&self) -> Rep {
        Rep::new_unchecked(QParam::KLEIN, self.g1.clone(), self.g2.clone())
    }

    pub fn from_rep(r: &Rep) -> KleinRep {
        assert!(r.q().is_klein(), "not a Klein four module");
        KleinRep { g1: r.x().clone(), g2: r.y().clone() }
    }

    pub fn trivial() -> KleinRep {
        KleinRep { g1: BitMatrix::identity(1), g2: BitMatrix::identity(1) }
    }

    pub fn direct_sum(parts: &[&KleinRep]) -> KleinRep {
        let a: Vec<&BitMatrix> = parts.iter().map(|p| &p.g1).collect();
        let b: Vec<&BitMatrix> = parts.iter().map(|p| &p.g2).collect();
        KleinRep { g1: BitMatrix::direct_sum(&a), g2: BitMatrix::direct_sum(&b) }
    }

    pub fn dual(&self) -> KleinRep {
        KleinRep { g1: self.g1.transpose(), g2: self.g2.transpose() }
    }

    pub fn tensor(&self, other: &KleinRep) -> KleinRep {
        KleinRep { g1: self.g1.kronecker(&other.g1), g2: self.g2.kronecker(&other.g2) }
    }

    /// Matrix of a Klein element written as `g1^a g2^b`.
    pub(crate) fn word_matrix(&self, a: bool, b: bool) -> BitMatrix {
        match (a, b) {
            (false, false) => BitMatrix::identity(self.dim()),
            (true, false) => self.g1.clone(),
            (false, true) => self.g2.clone(),
            (true, true) => self.g1.mul(&self.g2),
        }
    }
}
