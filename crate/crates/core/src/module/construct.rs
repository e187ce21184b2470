use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::group::Element;
use crate::word::{Letter, QParam, Sym, Word};

use super::{KleinRep, Rep, SubgroupId};

/// The trivial module `K`.
pub fn trivial(q: QParam) -> Rep {
    Rep::new_unchecked(q, BitMatrix::identity(1), BitMatrix::identity(1))
}

fn gen_index(s: Sym) -> usize {
    match s {
        Sym::A => 0,
        Sym::B => 1,
    }
}

/// String module `M(w)` on basis `v_1, …, v_{n+1}`. A direct letter at
/// position `i` sends `v_{i+1} ↦ v_i + v_{i+1}`, an inverse letter sends
/// `v_i ↦ v_i + v_{i+1}`.
pub fn string_module(w: &Word, q: QParam) -> Result<Rep> {
    if !w.is_valid(q) {
        return Err(Error::InvalidWord(w.clone(), q.get()));
    }
    let n = w.len() + 1;
    let mut gens = [BitMatrix::identity(n), BitMatrix::identity(n)];
    for (i, l) in w.letters().iter().enumerate() {
        let g = &mut gens[gen_index(l.sym)];
        if l.is_direct() {
            g.set(i + 1, i, true);
        } else {
            g.set(i, i + 1, true);
        }
    }
    let [x, y] = gens;
    Rep::new(q, x, y)
}

fn is_proper_power(letters: &[Letter]) -> bool {
    let n = letters.len();
    (1..n).any(|d| n.is_multiple_of(d) && (d..n).all(|i| letters[i] == letters[i - d]))
}

/// Band module for the cyclic word `w` and automorphism `phi`: one copy of
/// `V = K^d` per position, letters acting by identity blocks between
/// neighbouring positions and the closing letter acting through `phi`.
pub fn band_module(w: &Word, phi: &BitMatrix, q: QParam) -> Result<Rep> {
    let letters = w.letters();
    let n = letters.len();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::InvalidBand("cyclic word must have positive even length".into()));
    }
    if letters[0].sym == letters[n - 1].sym {
        return Err(Error::InvalidBand("word does not alternate cyclically".into()));
    }
    if letters.iter().all(|l| l.is_direct()) || letters.iter().all(|l| !l.is_direct()) {
        return Err(Error::InvalidBand("word needs both direct and inverse letters".into()));
    }
    if is_proper_power(letters) {
        return Err(Error::InvalidBand("word is a proper power".into()));
    }
    for s in 0..n {
        let rotated: Vec<Letter> = letters[s..].iter().chain(&letters[..s]).copied().collect();
        let doubled: Vec<Letter> = rotated.iter().chain(&rotated).copied().collect();
        if !Word::new(doubled[..n + n.min(2 * q.get())].to_vec())
            .map(|u| u.is_valid(q))
            .unwrap_or(false)
        {
            return Err(Error::InvalidBand(format!("a cyclic shift leaves W_{}", q.get())));
        }
    }
    if !phi.is_square() || phi.rows() == 0 {
        return Err(Error::InvalidBand("phi must be a non-empty square matrix".into()));
    }
    if !phi.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let d = phi.rows();
    let dim = n * d;
    let mut gens = [BitMatrix::identity(dim), BitMatrix::identity(dim)];
    let id = BitMatrix::identity(d);
    for (i, l) in letters.iter().enumerate() {
        let (p, p1) = (i, (i + 1) % n);
        let block = if i + 1 == n { phi } else { &id };
        let g = &mut gens[gen_index(l.sym)];
        // Direct: copy at p+1 maps onto copy at p; inverse: p onto p+1.
        let (from, to) = if l.is_direct() { (p1, p) } else { (p, p1) };
        for r in 0..d {
            for c in 0..d {
                if block.get(r, c) {
                    g.set(from * d + r, to * d + c, true);
                }
            }
        }
    }
    let [x, y] = gens;
    Rep::new(q, x, y).map_err(|e| Error::InvalidBand(e.to_string()))
}

/// Right regular module on the group elements in normal-form order.
pub fn regular_module(q: QParam) -> Rep {
    let n = q.order();
    let perm = |s: Element| {
        let mut m = BitMatrix::zeros(n, n);
        for g in Element::all(q) {
            m.set(g.index(q), g.mul(s, q).index(q), true);
        }
        m
    };
    Rep::new_unchecked(q, perm(Element::X), perm(Element::Y))
}

/// Induction from a Klein four subgroup along a right transversal: for
/// `t·s = h·t'` the `(t, t')` block of `s` is the matrix of `h`.
pub fn induce(m: &KleinRep, s: SubgroupId, q: QParam) -> Result<Rep> {
    if !s.is_klein() {
        return Err(Error::UnsupportedSubgroup);
    }
    let elems = s.klein_elements(q);
    let member = |g: Element| elems.iter().find(|e| e.0 == g).map(|e| (e.1, e.2));
    // Right cosets Hg, one representative each.
    let mut reps: Vec<Element> = Vec::new();
    for g in Element::all(q) {
        if !reps.iter().any(|&t| member(g.mul(t.inv(q), q)).is_some()) {
            reps.push(g);
        }
    }
    let d = m.dim();
    let k = reps.len();
    let act = |gen: Element| -> BitMatrix {
        let mut out = BitMatrix::zeros(k * d, k * d);
        for (i, &t) in reps.iter().enumerate() {
            let ts = t.mul(gen, q);
            let (j, (a, b)) = reps
                .iter()
                .enumerate()
                .find_map(|(j, &t2)| member(ts.mul(t2.inv(q), q)).map(|w| (j, w)))
                .expect("transversal covers the group");
            out.paste(i * d, j * d, &m.word_matrix(a, b));
        }
        out
    };
    Rep::new(q, act(Element::X), act(Element::Y))
}
