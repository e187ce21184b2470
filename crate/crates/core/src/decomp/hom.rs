use crate::error::Result;
use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::module::{top_generators, Rep};

/// Space of module maps `M → N`, as matrices `H` with `α_M H = H α_N` and
/// `β_M H = H β_N`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Vec<BitMatrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ c_i H_i` for the set bits of `coeffs`.
    pub fn combine(&self, coeffs: &BitVec) -> BitMatrix {
        let mut h = BitMatrix::zeros(self.source_dim, self.target_dim);
        for i in coeffs.ones() {
            h.add_assign(&self.basis[i]);
        }
        h
    }
}

struct Node {
    vec: BitVec,
    root: usize,
    /// Product of the target generator matrices along the path from the root.
    path: BitMatrix,
}

/// `Hom(M, N)`. A map is fixed by the images of the top generators of `M`;
/// spanning `M` by a breadth-first search from those generators leaves one
/// constraint for every edge that does not create a new basis vector.
pub fn hom_space(m: &Rep, n: &Rep) -> Result<HomSpace> {
    m.check_same_group(n)?;
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(HomSpace { source_dim: dm, target_dim: dn, basis: Vec::new() });
    }
    let gens = top_generators(m);
    let t = gens.len();
    let mut span = Echelon::new(dm);
    let mut nodes: Vec<Node> = Vec::with_capacity(dm);
    for (k, g) in gens.iter().enumerate() {
        span.insert(g.clone());
        nodes.push(Node { vec: g.clone(), root: k, path: BitMatrix::identity(dn) });
    }
    let mut back_edges: Vec<(usize, usize)> = Vec::new();
    let mut head = 0;
    while head < nodes.len() {
        for s in 0..2 {
            let w = nodes[head].vec.mul_mat(m.gens()[s]);
            if span.insert(w.clone()).is_some() {
                let path = nodes[head].path.mul(n.gens()[s]);
                let root = nodes[head].root;
                nodes.push(Node { vec: w, root, path });
            } else {
                back_edges.push((head, s));
            }
        }
        head += 1;
    }
    debug_assert_eq!(nodes.len(), dm);
    let tmat = BitMatrix::from_vectors(dm, &nodes.iter().map(|b| b.vec.clone()).collect::<Vec<_>>());
    let tinv = tmat.inverse().expect("search spans the module");
    // Unknown U = (u_1 | … | u_t), u_k ∈ K^{dn}; each back edge gives a dn-column block.
    let mut sys = BitMatrix::zeros(t * dn, back_edges.len() * dn);
    for (e, &(b, s)) in back_edges.iter().enumerate() {
        let mut block = BitMatrix::zeros(t * dn, dn);
        let node = &nodes[b];
        let lhs = node.path.mul(n.gens()[s]);
        add_block(&mut block, node.root * dn, &lhs);
        let coef = node.vec.mul_mat(m.gens()[s]).mul_mat(&tinv);
        for c in coef.ones() {
            add_block(&mut block, nodes[c].root * dn, &nodes[c].path);
        }
        sys.paste(0, e * dn, &block);
    }
    let kernel = sys.left_kernel();
    let basis = kernel
        .row_vecs()
        .iter()
        .map(|u| {
            let mut hb = BitMatrix::zeros(dm, dn);
            for (i, node) in nodes.iter().enumerate() {
                let uk = BitVec::from_words(
                    dn,
                    slice_bits(u, node.root * dn, dn),
                );
                hb.row_mut(i).copy_from_slice(uk.mul_mat(&node.path).words());
            }
            tinv.mul(&hb)
        })
        .collect();
    Ok(HomSpace { source_dim: dm, target_dim: dn, basis })
}

fn add_block(dst: &mut BitMatrix, r0: usize, block: &BitMatrix) {
    for r in 0..block.rows() {
        for c in block.row_vec(r).ones() {
            let v = dst.get(r0 + r, c);
            dst.set(r0 + r, c, !v);
        }
    }
}

fn slice_bits(v: &BitVec, start: usize, len: usize) -> Vec<u64> {
    let mut out = BitVec::zeros(len);
    for i in 0..len {
        if v.get(start + i) {
            out.set(i, true);
        }
    }
    out.words().to_vec()
}

/// Whether `h` intertwines the two actions.
pub fn is_hom(m: &Rep, n: &Rep, h: &BitMatrix) -> bool {
    m.x().mul(h) == h.mul(n.x()) && m.y().mul(h) == h.mul(n.y())
}

/// `End(M)`.
pub fn end_space(m: &Rep) -> HomSpace {
    hom_space(m, m).expect("same group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::solve_linear;
    use crate::module::{regular_module, string_module, trivial};
    use crate::word::{QParam, Word};

    fn q2() -> QParam {
        QParam::new(2).unwrap()
    }

    #[test]
    fn small_dimensions() {
        let k = trivial(q2());
        assert_eq!(hom_space(&k, &k).unwrap().dim(), 1);
        assert_eq!(hom_space(&k, &regular_module(q2())).unwrap().dim(), 1);
        assert_eq!(hom_space(&regular_module(q2()), &k).unwrap().dim(), 1);
        assert_eq!(end_space(&regular_module(q2())).dim(), 8);
    }

    #[test]
    fn agrees_with_direct_solve() {
        let words: Vec<Word> = Word::enumerate_canonical(4, q2());
        for a in words.iter().step_by(3) {
            for b in words.iter().step_by(5) {
                let m = string_module(a, q2()).unwrap();
                let n = string_module(b, q2()).unwrap();
                let fast = hom_space(&m, &n).unwrap();
                let slow = solve_linear(&[
                    (m.x().clone(), n.x().clone()),
                    (m.y().clone(), n.y().clone()),
                ]);
                assert_eq!(fast.dim(), slow.len(), "{a} → {b}");
                for h in &fast.basis {
                    assert!(is_hom(&m, &n, h));
                }
                let e = Echelon::from_vectors(m.dim() * n.dim(), &fast.basis.iter().map(|h| h.flatten()).collect::<Vec<_>>());
                assert_eq!(e.dim(), fast.dim());
            }
        }
    }
}
