//! Decomposition of modules for the Klein four group and the signature of
//! a dihedral module.
//!
//! After free summands are split off, `u = g1+1` and `v = g2+1` satisfy
//! `uv = 0` and the module is described by the pencil
//! `Ū, V̄ : M/soc M → soc M`. Its Kronecker blocks correspond to summands:
//! a block with `ε+1` columns on the top side and `ε` on the socle side is
//! `Ω^ε K`, the transposed shape is `Ω^{-ε} K`, and square blocks are periodic.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, Poly2};
use crate::module::{self, KleinRep, Rep, SubgroupId};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KleinSummand {
    /// `Ω^n K`; `Omega(0)` is the trivial module.
    Omega(i64),
    Free,
    /// Regular block with elementary divisor `f^power` of `t·Ū + V̄`.
    Periodic { poly: Poly2, power: usize },
    /// Regular block on which `Ū` is nilpotent of index `power`.
    PeriodicInfinity { power: usize },
}

impl KleinSummand {
    pub fn dim(&self) -> usize {
        match self {
            KleinSummand::Omega(n) => 2 * n.unsigned_abs() as usize + 1,
            KleinSummand::Free => 4,
            KleinSummand::Periodic { poly, power } => 2 * poly.degree().unwrap_or(0) * power,
            KleinSummand::PeriodicInfinity { power } => 2 * power,
        }
    }

    pub fn is_odd(&self) -> bool {
        matches!(self, KleinSummand::Omega(_))
    }
}

impl fmt::Display for KleinSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KleinSummand::Omega(0) => write!(f, "K"),
            KleinSummand::Omega(n) => write!(f, "Ω^{n}K"),
            KleinSummand::Free => write!(f, "KV4"),
            KleinSummand::Periodic { poly, power } => write!(f, "P({poly})^{power}"),
            KleinSummand::PeriodicInfinity { power } => write!(f, "P(∞)^{power}"),
        }
    }
}

/// Multiset of summands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KleinDecomposition {
    parts: BTreeMap<KleinSummand, usize>,
}

impl KleinDecomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, s: KleinSummand, mult: usize) {
        if mult > 0 {
            *self.parts.entry(s).or_default() += mult;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&KleinSummand, usize)> {
        self.parts.iter().map(|(s, &m)| (s, m))
    }

    pub fn mult(&self, s: &KleinSummand) -> usize {
        self.parts.get(s).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> usize {
        self.iter().map(|(s, m)| s.dim() * m).sum()
    }

    /// Omega indices of the odd summands, with repetition, ascending.
    pub fn omega_indices(&self) -> Vec<i64> {
        let mut v = Vec::new();
        for (s, m) in self.iter() {
            if let KleinSummand::Omega(n) = s {
                v.extend(std::iter::repeat_n(*n, m));
            }
        }
        v
    }

    /// Same multiset with `Ω^n K ↦ Ω^{n+k} K`.
    pub fn shifted(&self, k: i64) -> KleinDecomposition {
        self.map_omega(|n| n + k)
    }

    /// Same multiset with `Ω^n K ↦ Ω^{-n} K`.
    pub fn negated(&self) -> KleinDecomposition {
        self.map_omega(|n| -n)
    }

    fn map_omega(&self, f: impl Fn(i64) -> i64) -> KleinDecomposition {
        let mut out = KleinDecomposition::new();
        for (s, m) in self.iter() {
            let s = match s {
                KleinSummand::Omega(n) => KleinSummand::Omega(f(*n)),
                other => other.clone(),
            };
            out.add(s, m);
        }
        out
    }

    pub fn without_free(&self) -> KleinDecomposition {
        let mut out = self.clone();
        out.parts.remove(&KleinSummand::Free);
        out
    }
}

impl fmt::Display for KleinDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            if m > 1 {
                write!(f, "{m}·")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

struct SummandJson<'a>(&'a KleinSummand, usize);

impl Serialize for SummandJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        match self.0 {
            KleinSummand::Omega(n) => {
                map.serialize_entry("kind", "omega")?;
                map.serialize_entry("n", n)?;
            }
            KleinSummand::Free => map.serialize_entry("kind", "free")?,
            KleinSummand::Periodic { poly, power } => {
                map.serialize_entry("kind", "periodic")?;
                map.serialize_entry("poly", &poly.to_string())?;
                map.serialize_entry("power", power)?;
            }
            KleinSummand::PeriodicInfinity { power } => {
                map.serialize_entry("kind", "periodic_inf")?;
                map.serialize_entry("power", power)?;
            }
        }
        map.serialize_entry("mult", &self.1)?;
        map.end()
    }
}

impl Serialize for KleinDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|(k, m)| SummandJson(k, m)))
    }
}

/// Splits off free summands: the rank of `(g1+1)(g2+1)` and a complement.
pub fn split_free(m: &KleinRep) -> (usize, KleinRep) {
    let (r, c) = module::split_free(&m.as_rep());
    (r, KleinRep::from_rep(&c))
}

/// `{x : x·u ∈ span(s)}` as a basis in reduced echelon form.
fn preimage(u: &BitMatrix, s: &BitMatrix) -> BitMatrix {
    let a = u.rows();
    let stacked = u.vstack(s);
    let ker = stacked.left_kernel();
    let proj: Vec<BitVec> =
        (0..ker.rows()).map(|i| ker.submatrix(i, 0, 1, a).row_vec(0)).collect();
    BitMatrix::from_vectors(a, &proj).rref().0
}

/// Kronecker structure of the pencil `(u, v)` seen from its left side:
/// counts of blocks with `ε+1` rows and `ε` columns indexed by `ε`, and
/// sizes of nilpotent-`u` regular blocks.
fn left_structure(u: &BitMatrix, v: &BitMatrix) -> (BTreeMap<usize, usize>, BTreeMap<usize, usize>) {
    let b = u.cols();
    // Chain A_i = u⁻¹(A_{i-1}·v), A_0 = ker u; record dim A_i and dim(A_{i-1}·v).
    let mut a_dims = Vec::new();
    let mut b_dims = Vec::new();
    let mut img = BitMatrix::zeros(0, b);
    loop {
        let ai = preimage(u, &img);
        let next_img = ai.mul(v).rref().0;
        let stable = a_dims.last() == Some(&ai.rows()) && b_dims.last() == Some(&img.rows());
        a_dims.push(ai.rows());
        b_dims.push(img.rows());
        if stable {
            break;
        }
        img = next_img;
    }
    let steps = a_dims.len();
    let c: Vec<i64> = (0..steps).map(|i| a_dims[i] as i64 - b_dims[i] as i64).collect();
    let total_l = c[steps - 1];
    // #{L_ε : ε ≥ i} = Δa_i − (c_i − #L).
    let at_least: Vec<i64> = (0..steps)
        .map(|i| {
            let da = a_dims[i] as i64 - if i == 0 { 0 } else { a_dims[i - 1] as i64 };
            da - (c[i] - total_l)
        })
        .collect();
    let mut l = BTreeMap::new();
    for e in 0..steps {
        let next = at_least.get(e + 1).copied().unwrap_or(0);
        let cnt = at_least[e] - next;
        debug_assert!(cnt >= 0);
        if cnt > 0 {
            l.insert(e, cnt as usize);
        }
    }
    // #{J_n : n > i} = c_i − #L.
    let mut inf = BTreeMap::new();
    for n in 1..steps {
        let gt = |i: usize| c.get(i).copied().unwrap_or(total_l) - total_l;
        let cnt = gt(n - 1) - gt(n);
        if cnt > 0 {
            inf.insert(n, cnt as usize);
        }
    }
    (l, inf)
}

/// Invariant factors of a polynomial matrix (Smith normal form over GF(2)[t]).
fn invariant_factors(mut m: Vec<Vec<Poly2>>) -> Vec<Poly2> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for k in 0..rows.min(cols) {
        loop {
            // Pivot: a nonzero entry of minimal degree.
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(k) {
                for (j, e) in row.iter().enumerate().skip(k) {
                    if let Some(d) = e.degree() {
                        if best.is_none_or(|b| d < b.2) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return out;
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            let pivot = m[k][k].clone();
            let mut dirty = false;
            for i in k + 1..rows {
                if m[i][k].is_zero() {
                    continue;
                }
                let (qt, r) = m[i][k].div_rem(&pivot);
                for j in k..cols {
                    let sub = qt.mul(&m[k][j]);
                    m[i][j] = m[i][j].add(&sub);
                }
                debug_assert_eq!(m[i][k], r);
                dirty |= !r.is_zero();
            }
            for j in k + 1..cols {
                if m[k][j].is_zero() {
                    continue;
                }
                let (qt, r) = m[k][j].div_rem(&pivot);
                for row in m.iter_mut().skip(k) {
                    let sub = qt.mul(&row[k]);
                    row[j] = row[j].add(&sub);
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // Divisibility of the remaining block by the pivot.
            let bad = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| !m[i][j].rem(&pivot).is_zero()));
            match bad {
                Some(i) => {
                    for j in k..cols {
                        let add = m[i][j].clone();
                        m[k][j] = m[k][j].add(&add);
                    }
                }
                None => {
                    out.push(pivot);
                    break;
                }
            }
        }
    }
    out
}

/// Decomposes a Klein module without free summands from its pencil.
pub fn pencil_reduce(m: &KleinRep) -> Result<KleinDecomposition> {
    let u = m.g1.plus_identity();
    let v = m.g2.plus_identity();
    if !u.mul(&v).is_zero() {
        return Err(Error::PreconditionViolated("(g1+1)(g2+1) ≠ 0".into()));
    }
    let n = m.dim();
    let mut both = BitMatrix::zeros(n, 2 * n);
    both.paste(0, 0, &u);
    both.paste(0, n, &v);
    let soc = both.left_kernel();
    let (soc, soc_piv) = soc.rref();
    let s = soc.rows();
    let mut is_piv = vec![false; n];
    for &p in &soc_piv {
        is_piv[p] = true;
    }
    let top: Vec<usize> = (0..n).filter(|&c| !is_piv[c]).collect();
    let t = top.len();
    let pencil = |g: &BitMatrix| {
        let mut out = BitMatrix::zeros(t, s);
        for (i, &c) in top.iter().enumerate() {
            let img = g.row_vec(c);
            for (j, &p) in soc_piv.iter().enumerate() {
                if img.get(p) {
                    out.set(i, j, true);
                }
            }
        }
        out
    };
    let (pu, pv) = (pencil(&u), pencil(&v));
    let mut dec = KleinDecomposition::new();
    let (l, inf) = left_structure(&pu, &pv);
    let (lt, _) = left_structure(&pu.transpose(), &pv.transpose());
    for (&e, &c) in &l {
        dec.add(KleinSummand::Omega(e as i64), c);
    }
    for (&e, &c) in &lt {
        dec.add(KleinSummand::Omega(-(e as i64)), c);
    }
    for (&p, &c) in &inf {
        dec.add(KleinSummand::PeriodicInfinity { power: p }, c);
    }
    let singular_rows: usize = l.iter().map(|(e, c)| (e + 1) * c).sum::<usize>()
        + lt.iter().map(|(e, c)| e * c).sum::<usize>();
    let inf_rows: usize = inf.iter().map(|(p, c)| p * c).sum();
    if singular_rows + inf_rows < t {
        let mat: Vec<Vec<Poly2>> = (0..t)
            .map(|i| {
                (0..s)
                    .map(|j| Poly2::from_coeffs(&[pv.get(i, j), pu.get(i, j)]))
                    .collect()
            })
            .collect();
        for f in invariant_factors(mat) {
            if f.degree().unwrap_or(0) == 0 {
                continue;
            }
            for (p, e) in f.factor() {
                dec.add(KleinSummand::Periodic { poly: p, power: e }, 1);
            }
        }
    }
    if dec.dim() != n {
        return Err(Error::Dimension(format!(
            "pencil blocks account for {} of {} dimensions",
            dec.dim(),
            n
        )));
    }
    Ok(dec)
}

/// Full decomposition: free part first, then the pencil.
pub fn klein_decompose(m: &KleinRep) -> KleinDecomposition {
    let (free, rest) = split_free(m);
    let mut dec = pencil_reduce(&rest).expect("free-free complement has uv = 0");
    dec.add(KleinSummand::Free, free);
    dec
}

/// Unordered pair of Omega indices, stored ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub [i64; 2]);

impl Signature {
    pub fn new(r: i64, s: i64) -> Self {
        Signature([r.min(s), r.max(s)])
    }

    pub fn shifted(self, k: i64) -> Self {
        Signature::new(self.0[0] + k, self.0[1] + k)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.0[0], self.0[1])
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Signature of `m`: the Omega indices of the two odd summands on the
/// Klein subgroup whose restriction is not periodic. Free summands do not
/// take part.
pub fn signature_of(m: &Rep) -> Result<(Signature, SubgroupId)> {
    let mut found = Vec::new();
    for s in [SubgroupId::KleinX, SubgroupId::KleinY] {
        let idx = klein_decompose(&m.restrict_klein(s)).omega_indices();
        if !idx.is_empty() {
            found.push((s, idx));
        }
    }
    match found.as_slice() {
        [(s, idx)] if idx.len() == 2 => Ok((Signature::new(idx[0], idx[1]), *s)),
        [(s, idx)] => Err(Error::NotSignatureEligible(format!(
            "{} odd summands on {s:?}",
            idx.len()
        ))),
        [] => Err(Error::NotSignatureEligible("no odd summands on either Klein subgroup".into())),
        _ => Err(Error::NotSignatureEligible("odd summands on both Klein subgroups".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{heller, omega, omega_inverse, regular_module, string_module};
    use crate::word::QParam;

    fn v4_regular() -> KleinRep {
        KleinRep::from_rep(&regular_module(QParam::KLEIN))
    }

    fn omega_k(n: i64) -> KleinRep {
        let mut m = KleinRep::trivial().as_rep();
        for _ in 0..n.unsigned_abs() {
            m = if n > 0 { omega(&m) } else { omega_inverse(&m) };
        }
        KleinRep::from_rep(&m)
    }

    fn top_soc(k: &KleinRep) -> (usize, usize) {
        let (rad, soc) = k.as_rep().radical_socle();
        (k.dim() - rad.rows(), soc.rows())
    }

    #[test]
    fn orientation_oracle() {
        let o1 = omega_k(1);
        assert_eq!(top_soc(&o1), (2, 1));
        assert_eq!(top_soc(&omega_k(-1)), (1, 2));
        for n in -4..=4i64 {
            let k = omega_k(n);
            assert_eq!(k.dim(), 2 * n.unsigned_abs() as usize + 1);
            let d = klein_decompose(&k);
            assert_eq!(d.omega_indices(), vec![n], "n = {n}: {d}");
        }
    }

    #[test]
    fn free_and_trivial() {
        let (r, c) = split_free(&v4_regular());
        assert_eq!((r, c.dim()), (1, 0));
        let kk = KleinRep::direct_sum(&[&KleinRep::trivial(), &KleinRep::trivial()]);
        assert_eq!(split_free(&kk).0, 0);
        assert_eq!(klein_decompose(&kk).mult(&KleinSummand::Omega(0)), 2);
    }

    #[test]
    fn tensor_of_omega() {
        let o = omega_k(1);
        let t = o.tensor(&o);
        let d = klein_decompose(&t);
        assert_eq!(d.mult(&KleinSummand::Free), 1);
        assert_eq!(d.omega_indices(), vec![2]);
    }

    #[test]
    fn periodic_blocks() {
        // Band-like module: top and socle of dim 1 with u = v.
        let g = BitMatrix::from_row_strings(&["11", "01"]).unwrap();
        let d = klein_decompose(&KleinRep::new(g.clone(), g.clone()).unwrap());
        assert_eq!(d.iter().count(), 1);
        assert!(matches!(d.iter().next().unwrap().0, KleinSummand::Periodic { .. }));
        let d = klein_decompose(&KleinRep::new(BitMatrix::identity(2), g.clone()).unwrap());
        assert!(matches!(d.iter().next().unwrap().0, KleinSummand::PeriodicInfinity { power: 1 }));
        let d = klein_decompose(&KleinRep::new(g, BitMatrix::identity(2)).unwrap());
        let (s, _) = d.iter().next().unwrap();
        assert_eq!(s, &KleinSummand::Periodic { poly: Poly2::t(), power: 1 });
    }

    #[test]
    fn restrictions_of_small_modules() {
        let q = QParam::new(2).unwrap();
        let a = string_module(&"a".parse().unwrap(), q).unwrap();
        let d = klein_decompose(&a.restrict_klein(SubgroupId::KleinY));
        assert_eq!(d.mult(&KleinSummand::Omega(0)), 2);
        let kg = regular_module(q);
        assert_eq!(klein_decompose(&kg.restrict_klein(SubgroupId::KleinY)).mult(&KleinSummand::Free), 2);
        let (sig, act) = signature_of(&a).unwrap();
        assert_eq!((sig, act), (Signature::new(0, 0), SubgroupId::KleinY));
        let (sig, _) = signature_of(&heller(&a, -2)).unwrap();
        assert_eq!(sig, Signature::new(2, 2));
    }

    #[test]
    fn json_format() {
        let mut d = KleinDecomposition::new();
        d.add(KleinSummand::Omega(-2), 2);
        d.add(KleinSummand::Free, 1);
        d.add(KleinSummand::Periodic { poly: "1+t+t^2".parse().unwrap(), power: 1 }, 1);
        let j = serde_json::to_string(&d).unwrap();
        assert_eq!(
            j,
            r#"[{"kind":"omega","n":-2,"mult":2},{"kind":"free","mult":1},{"kind":"periodic","poly":"1+t+t^2","power":1,"mult":1}]"#
        );
    }
}
