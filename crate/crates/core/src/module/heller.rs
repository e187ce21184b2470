use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::group::Element;

use super::{regular_module, Rep};

/// Vectors whose images span `M / rad M`.
pub fn top_generators(m: &Rep) -> Vec<BitVec> {
    let n = m.dim();
    let (rad, _) = m.radical_socle();
    let mut e = Echelon::from_vectors(n, &rad.row_vecs());
    (0..n)
        .map(|i| BitVec::unit(n, i))
        .filter(|v| e.insert(v.clone()).is_some())
        .collect()
}

/// Number of free summands: the rank of the norm element on `M`.
pub fn free_rank(m: &Rep) -> usize {
    m.norm_matrix().rank()
}

/// Splits `M = F ⊕ C` with `F` free. Returns the rank of `F` and `C ≅ M/F`.
///
/// Standard vectors are chosen greedily so that their norm images stay
/// independent; the submodule they generate then meets the socle injectively,
/// so it is free, and free modules are injective.
pub fn split_free(m: &Rep) -> (usize, Rep) {
    let norm = m.norm_matrix();
    let mut e = Echelon::new(m.dim());
    let mut gens = Vec::new();
    for j in 0..m.dim() {
        if e.insert(norm.row_vec(j)).is_some() {
            gens.push(BitVec::unit(m.dim(), j));
        }
    }
    if gens.is_empty() {
        return (0, m.clone());
    }
    let span = m.generated_subspace(&gens);
    debug_assert_eq!(span.len(), gens.len() * m.q().order());
    (gens.len(), m.quotient(&span))
}

/// `Ω(M)`: kernel of the projective cover, free summands removed.
pub fn omega(m: &Rep) -> Rep {
    let q = m.q();
    let gens = top_generators(m);
    if gens.is_empty() {
        return Rep::zero(q);
    }
    let order = q.order();
    let t = gens.len();
    let mut cover = BitMatrix::zeros(t * order, m.dim());
    let elems: Vec<BitMatrix> = Element::all(q).map(|g| m.element_matrix(g)).collect();
    for (k, v) in gens.iter().enumerate() {
        for (gi, mg) in elems.iter().enumerate() {
            let img = v.mul_mat(mg);
            cover.row_mut(k * order + gi).copy_from_slice(img.words());
        }
    }
    let kernel = cover.left_kernel();
    let kg = regular_module(q);
    let free = Rep::direct_sum(&vec![&kg; t]).expect("same group");
    let (sub, _) = free.submodule(&kernel.row_vecs());
    split_free(&sub).1
}

/// `Ω⁻¹(M)`, computed as `(Ω(M*))*`.
pub fn omega_inverse(m: &Rep) -> Rep {
    omega(&m.dual()).dual()
}

/// Heller translate: `power < 0` applies `Ω^{|power|}`, `power > 0` applies
/// `Ω^{-power}`, `0` strips free summands.
pub fn heller(m: &Rep, power: i64) -> Rep {
    let mut cur = split_free(m).1;
    for _ in 0..power.unsigned_abs() {
        cur = if power < 0 { omega(&cur) } else { omega_inverse(&cur) };
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{string_module, trivial};
    use crate::word::QParam;

    #[test]
    fn omega_of_trivial_is_radical_of_kg() {
        for q in [2, 4] {
            let q = QParam::new(q).unwrap();
            let o = heller(&trivial(q), -1);
            assert_eq!(o.dim(), q.order() - 1);
            assert_eq!(top_generators(&o).len(), 2);
        }
    }

    #[test]
    fn free_parts() {
        let q = QParam::new(2).unwrap();
        let kg = regular_module(q);
        let k = trivial(q);
        let sum = Rep::direct_sum(&[&kg, &k, &kg]).unwrap();
        assert_eq!(free_rank(&sum), 2);
        let (r, c) = split_free(&sum);
        assert_eq!((r, c.dim()), (2, 1));
        assert_eq!(omega(&kg).dim(), 0);
    }

    #[test]
    fn omega_dimensions_for_a() {
        let q = QParam::new(2).unwrap();
        let m = string_module(&"a".parse().unwrap(), q).unwrap();
        // 0 → Ω M → KG → M(a) → 0
        assert_eq!(omega(&m).dim(), 6);
        assert_eq!(heller(&m, -2).dim(), 10);
        assert_eq!(heller(&heller(&m, -1), 1).dim(), 2);
    }
}
