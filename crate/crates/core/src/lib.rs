//! Modules for dihedral 2-groups over GF(2): string and band modules, Heller
//! translates, Klein-four decompositions, Krull–Schmidt decomposition,
//! Auslander–Reiten quiver sweeps and tensor-closure probes.

pub mod algebraic;
pub mod decomp;
pub mod error;
pub mod gf2;
pub mod group;
pub mod klein;
pub mod module;
pub mod quiver;
pub mod suite;
pub mod word;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec, Poly2};
pub use module::{KleinRep, Rep, SubgroupId};
pub use word::{Letter, QParam, Sym, Word};
