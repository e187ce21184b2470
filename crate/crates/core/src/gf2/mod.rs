//! Linear algebra over the field with two elements.

mod matrix;
mod poly;

pub use matrix::{BitMatrix, BitVec, Echelon, TrackedEchelon};
pub use poly::{min_poly, Poly2};

/// Basis of all `H` (n×m) with `A·H = H·B` for every pair `(A, B)`, where each
/// `A` is n×n and each `B` is m×m.
///
/// Unknowns are the entries of `H` in row-major order; the returned basis is
/// the reduced echelon kernel of the stacked constraint system.
pub fn solve_linear(system: &[(BitMatrix, BitMatrix)]) -> Vec<BitMatrix> {
    let Some((a0, b0)) = system.first() else { return Vec::new() };
    let (n, m) = (a0.rows(), b0.rows());
    let unknowns = n * m;
    let mut eqs = BitMatrix::zeros(system.len() * unknowns, unknowns);
    for (s, (a, b)) in system.iter().enumerate() {
        assert!(a.is_square() && a.rows() == n, "left constraint must be {n}x{n}");
        assert!(b.is_square() && b.rows() == m, "right constraint must be {m}x{m}");
        for i in 0..n {
            for j in 0..m {
                let row = s * unknowns + i * m + j;
                // (A H)_{ij} = sum_k A_ik H_kj
                for k in a.row_vec(i).ones() {
                    let c = k * m + j;
                    let v = eqs.get(row, c);
                    eqs.set(row, c, !v);
                }
                // (H B)_{ij} = sum_k H_ik B_kj
                for k in 0..m {
                    if b.get(k, j) {
                        let c = i * m + k;
                        let v = eqs.get(row, c);
                        eqs.set(row, c, !v);
                    }
                }
            }
        }
    }
    let (_, kernel) = eqs.rank_kernel();
    kernel.row_vecs().iter().map(|v| BitMatrix::unflatten(n, m, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unconstrained_gives_everything() {
        let sols = solve_linear(&[(BitMatrix::identity(2), BitMatrix::identity(2))]);
        assert_eq!(sols.len(), 4);
    }

    #[test]
    fn jordan_block_centraliser_matches_enumeration() {
        let j = BitMatrix::from_row_strings(&["11", "01"]).unwrap();
        let sols = solve_linear(&[(j.clone(), j.clone())]);
        // Oracle: enumerate all 16 candidates.
        let mut count = 0;
        for mask in 0u32..16 {
            let mut h = BitMatrix::zeros(2, 2);
            for k in 0..4 {
                h.set(k / 2, k % 2, mask >> k & 1 == 1);
            }
            if j.mul(&h) == h.mul(&j) {
                count += 1;
            }
        }
        assert_eq!(1usize << sols.len(), count);
        assert_eq!(sols.len(), 2);
        for h in &sols {
            assert_eq!(j.mul(h), h.mul(&j));
        }
    }
}
