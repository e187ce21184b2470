use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::gf2::{BitMatrix, BitVec};
use crate::klein::{klein_decompose, KleinDecomposition};
use crate::module::{free_rank, Rep, SubgroupId};

use super::hom::{end_space, hom_space, HomSpace};
use super::local::{certify_local, Locality};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    /// Invariants agree but the search found no isomorphism.
    NotDecided,
}

impl IsoVerdict {
    pub fn is_iso(self) -> bool {
        self == IsoVerdict::Isomorphic
    }
}

/// Isomorphism invariants used as a pre-filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub dim: usize,
    pub top: usize,
    pub socle: usize,
    pub rank_x: usize,
    pub rank_y: usize,
    pub free: usize,
    pub klein_x: KleinDecomposition,
    pub klein_y: KleinDecomposition,
}

impl Invariants {
    pub fn of(m: &Rep) -> Self {
        let (rad, soc) = m.radical_socle();
        Invariants {
            dim: m.dim(),
            top: m.dim() - rad.rows(),
            socle: soc.rows(),
            rank_x: m.x().plus_identity().rank(),
            rank_y: m.y().plus_identity().rank(),
            free: free_rank(m),
            klein_x: klein_decompose(&m.restrict_klein(SubgroupId::KleinX)),
            klein_y: klein_decompose(&m.restrict_klein(SubgroupId::KleinY)),
        }
    }
}

/// Number of random combinations tried before giving up.
pub const RANDOM_TRIALS: usize = 256;
const EXHAUSTIVE_DIM: usize = 16;

/// Searches `span(h)` for an invertible matrix: every element when the space
/// is small, otherwise seeded random combinations.
pub fn find_unit(h: &HomSpace, seed: u64) -> Option<BitMatrix> {
    let d = h.dim();
    if h.source_dim != h.target_dim || d == 0 {
        return None;
    }
    if d <= EXHAUSTIVE_DIM {
        let mut cur = BitMatrix::zeros(h.source_dim, h.target_dim);
        for step in 1u32..(1u32 << d) {
            cur.add_assign(&h.basis[step.trailing_zeros() as usize]);
            if cur.is_invertible() {
                return Some(cur);
            }
        }
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let mut c = BitVec::zeros(d);
        for i in 0..d {
            c.set(i, rng.gen());
        }
        let cand = h.combine(&c);
        if cand.is_invertible() {
            return Some(cand);
        }
    }
    None
}

/// Exact test when `m` has a local endomorphism ring: `m` is a summand of
/// `n` iff some composite of basis maps `m → n → m` is a unit.
pub fn is_summand_of(m: &Rep, n: &Rep) -> Result<bool> {
    let there = hom_space(m, n)?;
    if there.dim() == 0 {
        return Ok(false);
    }
    let back = hom_space(n, m)?;
    Ok(there
        .basis
        .iter()
        .any(|f| back.basis.iter().any(|g| f.mul(g).is_invertible())))
}

/// Isomorphism of two modules known to be indecomposable with local
/// endomorphism rings.
pub fn indecomposables_isomorphic(m: &Rep, n: &Rep) -> Result<bool> {
    m.check_same_group(n)?;
    if m.dim() != n.dim() {
        return Ok(false);
    }
    is_summand_of(m, n)
}

/// Decides `m ≅ n`. Invariants are compared first; then the hom space is
/// searched for a unit, exhaustively when it is small. If `m` has a local
/// endomorphism ring the answer is exact; otherwise a failed random search
/// gives [`IsoVerdict::NotDecided`].
pub fn is_isomorphic(m: &Rep, n: &Rep, seed: u64) -> Result<IsoVerdict> {
    m.check_same_group(n)?;
    if m.dim() != n.dim() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if m == n || m.dim() == 0 {
        return Ok(IsoVerdict::Isomorphic);
    }
    if Invariants::of(m) != Invariants::of(n) {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let h = hom_space(m, n)?;
    if h.dim() == 0 {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if h.dim() <= EXHAUSTIVE_DIM {
        return Ok(if find_unit(&h, seed).is_some() {
            IsoVerdict::Isomorphic
        } else {
            IsoVerdict::NotIsomorphic
        });
    }
    if let Locality::Local { .. } = certify_local(&end_space(m)) {
        return Ok(if is_summand_of(m, n)? {
            IsoVerdict::Isomorphic
        } else {
            IsoVerdict::NotIsomorphic
        });
    }
    Ok(if find_unit(&h, seed).is_some() { IsoVerdict::Isomorphic } else { IsoVerdict::NotDecided })
}

/// A random invertible change of basis, for tests and fixtures.
pub fn scramble<R: Rng + ?Sized>(m: &Rep, rng: &mut R) -> Rep {
    let t = BitMatrix::random_invertible(m.dim(), rng);
    m.change_basis(&t).expect("invertible")
}
