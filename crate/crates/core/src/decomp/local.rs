//! Certificates that an endomorphism algebra is local.

use crate::gf2::{BitMatrix, BitVec, Echelon, TrackedEchelon};

use super::hom::HomSpace;

/// Outcome of a locality check on `End(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locality {
    /// Local with residue field of the given degree over GF(2).
    Local { residue_degree: usize },
    NotLocal,
    Undecided,
}

/// Coordinates of algebra elements in a fixed basis.
pub(crate) struct Algebra<'a> {
    space: &'a HomSpace,
    coords: TrackedEchelon,
}

impl<'a> Algebra<'a> {
    pub(crate) fn new(space: &'a HomSpace) -> Self {
        let width = space.source_dim * space.target_dim;
        let mut coords = TrackedEchelon::new(width, space.dim());
        for b in &space.basis {
            let fresh = coords.insert(b.flatten());
            debug_assert!(fresh);
        }
        Algebra { space, coords }
    }

    pub(crate) fn coordinates(&self, m: &BitMatrix) -> BitVec {
        self.coords.coordinates(&m.flatten()).expect("product stays in the algebra")
    }

    pub(crate) fn basis(&self) -> &[BitMatrix] {
        &self.space.basis
    }

    pub(crate) fn element(&self, c: &BitVec) -> BitMatrix {
        self.space.combine(c)
    }
}

/// Cheap certificate for residue field GF(2): the non-units must form a
/// nilpotent right ideal of codimension one. Never reports `NotLocal`.
pub fn certify_prime_residue(end: &HomSpace) -> Locality {
    let d = end.dim();
    if d == 0 {
        return Locality::Undecided;
    }
    let alg = Algebra::new(end);
    let lambda: Vec<bool> = end.basis.iter().map(|b| b.is_invertible()).collect();
    let Some(pivot) = lambda.iter().position(|&l| l) else {
        return Locality::Undecided;
    };
    // Basis of H = ker λ: b_i + λ_i b_pivot for i ≠ pivot.
    let h: Vec<BitMatrix> = (0..d)
        .filter(|&i| i != pivot)
        .map(|i| if lambda[i] { end.basis[i].add(&end.basis[pivot]) } else { end.basis[i].clone() })
        .collect();
    let lam = |m: &BitMatrix| -> bool {
        alg.coordinates(m).ones().fold(false, |acc, i| acc ^ lambda[i])
    };
    for x in &h {
        for b in &end.basis {
            if lam(&x.mul(b)) {
                return Locality::Undecided;
            }
        }
    }
    if is_nilpotent_family(&h, end.source_dim) {
        Locality::Local { residue_degree: 1 }
    } else {
        Locality::Undecided
    }
}

/// Whether every product of sufficiently many members of `family` vanishes,
/// tested on the chain `V_{k+1} = Σ V_k·h`.
fn is_nilpotent_family(family: &[BitMatrix], n: usize) -> bool {
    let mut cur: Vec<BitVec> = (0..n).map(|i| BitVec::unit(n, i)).collect();
    let mut prev_dim = n + 1;
    while !cur.is_empty() {
        if cur.len() >= prev_dim {
            return false;
        }
        prev_dim = cur.len();
        let mut e = Echelon::new(n);
        for v in &cur {
            for h in family {
                e.insert(v.mul_mat(h));
            }
        }
        cur = e.basis().to_vec();
    }
    true
}

/// Radical of a matrix algebra over GF(2) via integer lifts: with
/// `g_i(a) = (Tr(â^{2^i}) mod 2^{i+1}) / 2^i`, set `I_{-1} = A` and
/// `I_i = {x ∈ I_{i-1} : g_i(xy) = 0 for all y}`; the radical is `I_l`,
/// `l = ⌊log₂ n⌋`.
pub(crate) fn radical(alg: &Algebra<'_>, n: usize) -> Vec<BitVec> {
    let d = alg.basis().len();
    let mut ideal: Vec<BitVec> = (0..d).map(|i| BitVec::unit(d, i)).collect();
    let l = usize::BITS as usize - 1 - n.max(1).leading_zeros() as usize;
    for i in 0..=l {
        if ideal.is_empty() {
            break;
        }
        let elems: Vec<BitMatrix> = ideal.iter().map(|c| alg.element(c)).collect();
        // G[k][j] = g_i(x_k y_j); I_i is the left kernel of G.
        let mut g = BitMatrix::zeros(elems.len(), d);
        for (k, x) in elems.iter().enumerate() {
            for (j, y) in alg.basis().iter().enumerate() {
                if lifted_trace_bit(&x.mul(y), i) {
                    g.set(k, j, true);
                }
            }
        }
        let ker = g.left_kernel();
        ideal = ker
            .row_vecs()
            .iter()
            .map(|row| {
                let mut c = BitVec::zeros(d);
                for k in row.ones() {
                    c.add_assign(&ideal[k]);
                }
                c
            })
            .collect();
    }
    ideal
}

/// Bit `i` of `Tr(â^{2^i})` for the 0/1 lift `â`, i.e. `g_i(a)`.
fn lifted_trace_bit(a: &BitMatrix, i: usize) -> bool {
    let n = a.rows();
    let mut m: Vec<u32> = (0..n * n).map(|k| u32::from(a.get(k / n, k % n))).collect();
    let mask: u32 = if i + 1 >= 32 { u32::MAX } else { (1 << (i + 1)) - 1 };
    for _ in 0..i {
        let mut out = vec![0u32; n * n];
        for r in 0..n {
            for k in 0..n {
                let v = m[r * n + k];
                if v == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] = out[r * n + c].wrapping_add(v.wrapping_mul(m[k * n + c]));
                }
            }
        }
        for x in out.iter_mut() {
            *x &= mask;
        }
        m = out;
    }
    let tr = (0..n).fold(0u32, |acc, k| acc.wrapping_add(m[k * n + k])) & mask;
    (tr >> i) & 1 == 1
}

/// Locality from the radical: `End/J` must be a field, checked by
/// enumerating its nonzero elements (residue degree at most 16).
pub fn certify_by_radical(end: &HomSpace) -> Locality {
    let d = end.dim();
    if d == 0 {
        return Locality::NotLocal;
    }
    let alg = Algebra::new(end);
    let rad = radical(&alg, end.source_dim);
    let mut e = Echelon::from_vectors(d, &rad);
    let reps: Vec<usize> =
        (0..d).filter(|&i| e.insert(BitVec::unit(d, i)).is_some()).collect();
    let k = reps.len();
    if k == 0 {
        return Locality::NotLocal;
    }
    if k > 16 {
        return Locality::Undecided;
    }
    // Gray-code walk over the complement of J.
    let mut cur = BitMatrix::zeros(end.source_dim, end.target_dim);
    for step in 1u32..(1u32 << k) {
        let bit = step.trailing_zeros() as usize;
        cur.add_assign(&end.basis[reps[bit]]);
        if !cur.is_invertible() {
            return Locality::NotLocal;
        }
    }
    Locality::Local { residue_degree: k }
}

/// Cheap certificate first, radical computation as fallback.
pub fn certify_local(end: &HomSpace) -> Locality {
    match certify_prime_residue(end) {
        Locality::Local { residue_degree } => Locality::Local { residue_degree },
        _ => certify_by_radical(end),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::hom::end_space;
    use crate::gf2::Poly2;
    use crate::module::{band_module, regular_module, string_module, trivial, Rep};
    use crate::word::QParam;

    fn q2() -> QParam {
        QParam::new(2).unwrap()
    }

    #[test]
    fn local_examples() {
        let kg = regular_module(q2());
        assert_eq!(certify_local(&end_space(&kg)), Locality::Local { residue_degree: 1 });
        let m = string_module(&"a b- a b a-".parse().unwrap(), q2()).unwrap();
        assert_eq!(certify_local(&end_space(&m)), Locality::Local { residue_degree: 1 });
    }

    #[test]
    fn decomposable_is_not_local() {
        let k = trivial(q2());
        let a = string_module(&"a".parse().unwrap(), q2()).unwrap();
        let s = Rep::direct_sum(&[&a, &k]).unwrap();
        assert_eq!(certify_prime_residue(&end_space(&s)), Locality::Undecided);
        assert_eq!(certify_by_radical(&end_space(&s)), Locality::NotLocal);
        let kk = Rep::direct_sum(&[&k, &k]).unwrap();
        assert_eq!(certify_local(&end_space(&kk)), Locality::NotLocal);
    }

    #[test]
    fn band_with_larger_residue_field() {
        let c = Poly2::from_coeffs(&[true, true, true]).companion();
        let m = band_module(&"a b-".parse().unwrap(), &c, q2()).unwrap();
        let end = end_space(&m);
        assert_eq!(certify_prime_residue(&end), Locality::Undecided);
        assert_eq!(certify_by_radical(&end), Locality::Local { residue_degree: 2 });
    }

    #[test]
    fn radical_of_matrix_algebra_oracle() {
        // Upper triangular 2×2 matrices: radical is the strictly upper part.
        let space = HomSpace {
            source_dim: 2,
            target_dim: 2,
            basis: vec![
                BitMatrix::from_row_strings(&["10", "00"]).unwrap(),
                BitMatrix::from_row_strings(&["01", "00"]).unwrap(),
                BitMatrix::from_row_strings(&["00", "01"]).unwrap(),
            ],
        };
        let alg = Algebra::new(&space);
        let r = radical(&alg, 2);
        assert_eq!(r.len(), 1);
        assert_eq!(alg.element(&r[0]), BitMatrix::from_row_strings(&["01", "00"]).unwrap());
    }
}
