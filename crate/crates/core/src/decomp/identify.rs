use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::gf2::BitMatrix;
use crate::module::{free_rank, string_module, Rep};
use crate::word::{Letter, QParam, Sym, Word};

use super::iso::indecomposables_isomorphic;

/// What an indecomposable summand was recognised as.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IdTag {
    StringWord(Word),
    Band,
    Projective,
    Unidentified,
}

impl IdTag {
    pub fn word(&self) -> Option<&Word> {
        match self {
            IdTag::StringWord(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for IdTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdTag::StringWord(w) if w.is_empty() => write!(f, "M(ε)"),
            IdTag::StringWord(w) => write!(f, "M({w})"),
            IdTag::Band => write!(f, "band"),
            IdTag::Projective => write!(f, "KG"),
            IdTag::Unidentified => write!(f, "?"),
        }
    }
}

impl Serialize for IdTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        match self {
            IdTag::StringWord(w) => {
                map.serialize_entry("kind", "string")?;
                map.serialize_entry("word", w)?;
            }
            IdTag::Band => map.serialize_entry("kind", "band")?,
            IdTag::Projective => map.serialize_entry("kind", "projective")?,
            IdTag::Unidentified => map.serialize_entry("kind", "unidentified")?,
        }
        map.end()
    }
}

/// Default number of search nodes for word recovery.
pub const DEFAULT_BUDGET: usize = 2_000_000;

/// Ranks of the alternating products `X Y X …` and `Y X Y …` (`k` factors,
/// `X = α+1`, `Y = β+1`) for `k = 1..=dim`. On a string module these count
/// runs of direct letters read leftwards and runs of inverse letters read
/// rightwards.
fn alternating_ranks(m: &Rep) -> [Vec<usize>; 2] {
    let ops = [m.x().plus_identity(), m.y().plus_identity()];
    let mut out = [Vec::new(), Vec::new()];
    for start in 0..2 {
        let mut p = ops[start].clone();
        for k in 1..=m.dim() {
            let r = p.rank();
            out[start].push(r);
            if r == 0 {
                break;
            }
            p = p.mul(&ops[(start + k) % 2]);
        }
    }
    out
}

fn sym_index(s: Sym) -> usize {
    match s {
        Sym::A => 0,
        Sym::B => 1,
    }
}

struct Search<'a> {
    target: &'a [Vec<usize>; 2],
    module: &'a Rep,
    q: QParam,
    len: usize,
    letters: Vec<Letter>,
    counts: [Vec<usize>; 2],
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    fn target_at(&self, s: usize, k: usize) -> usize {
        self.target[s].get(k - 1).copied().unwrap_or(0)
    }

    /// Window increments caused by appending `l`; `None` if the word leaves
    /// `W_q` or some count overshoots the target.
    fn increments(&self, l: Letter) -> Option<Vec<(usize, usize)>> {
        let run = 1 + self
            .letters
            .iter()
            .rev()
            .take_while(|p| p.inverse == l.inverse)
            .count();
        if run >= 2 * self.q.get() {
            return None;
        }
        let mut inc = Vec::with_capacity(run);
        for k in 1..=run {
            let s = if l.is_direct() || k % 2 == 1 {
                sym_index(l.sym)
            } else {
                sym_index(l.sym.other())
            };
            if self.counts[s][k - 1] + 1 > self.target_at(s, k) {
                return None;
            }
            inc.push((s, k));
        }
        Some(inc)
    }

    fn run(&mut self) -> Option<Word> {
        if self.nodes >= self.budget {
            return None;
        }
        self.nodes += 1;
        if self.letters.len() == self.len {
            let done = (0..2).all(|s| (1..=self.len.max(1)).all(|k| self.counts[s][k - 1] == self.target_at(s, k)));
            if !done {
                return None;
            }
            let w = Word::new(self.letters.clone()).expect("alternating by construction");
            let cand = string_module(&w, self.q).ok()?;
            return indecomposables_isomorphic(self.module, &cand).ok()?.then_some(w);
        }
        let choices: Vec<Letter> = match self.letters.last() {
            None => vec![Letter::A, Letter::A_INV, Letter::B, Letter::B_INV],
            Some(p) => {
                let s = p.sym.other();
                vec![Letter { sym: s, inverse: false }, Letter { sym: s, inverse: true }]
            }
        };
        for l in choices {
            let Some(inc) = self.increments(l) else { continue };
            for &(s, k) in &inc {
                self.counts[s][k - 1] += 1;
            }
            self.letters.push(l);
            let found = self.run();
            self.letters.pop();
            for &(s, k) in &inc {
                self.counts[s][k - 1] -= 1;
            }
            if found.is_some() {
                return found;
            }
            if self.nodes >= self.budget {
                return None;
            }
        }
        None
    }
}

/// Searches for `w` with `M(w) ≅ m` among words of length `dim m − 1`.
/// `m` must have a local endomorphism ring.
pub fn find_word(m: &Rep, budget: usize) -> Option<Word> {
    let n = m.dim();
    if n == 0 {
        return None;
    }
    let target = alternating_ranks(m);
    let len = n - 1;
    let mut search = Search {
        target: &target,
        module: m,
        q: m.q(),
        len,
        letters: Vec::with_capacity(len),
        counts: [vec![0; len.max(1)], vec![0; len.max(1)]],
        nodes: 0,
        budget,
    };
    search.run().map(|w| w.canonical())
}

fn restriction_free(g: &BitMatrix) -> bool {
    2 * g.plus_identity().rank() == g.rows()
}

/// Classifies an indecomposable module: free of rank one is projective, even
/// dimension with both single-generator restrictions free is a band, anything
/// else is a string module whose word is recovered by search.
pub fn identify_summand(m: &Rep, budget: usize) -> IdTag {
    let n = m.dim();
    if n == m.q().order() && free_rank(m) == 1 {
        return IdTag::Projective;
    }
    if n.is_multiple_of(2) && restriction_free(m.x()) && restriction_free(m.y()) {
        return IdTag::Band;
    }
    match find_word(m, budget) {
        Some(w) => IdTag::StringWord(w),
        None => IdTag::Unidentified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::iso::scramble;
    use crate::module::{band_module, heller, regular_module, trivial};
    use crate::word::{word_a, word_b};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q2() -> QParam {
        QParam::new(2).unwrap()
    }

    #[test]
    fn recovers_scrambled_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for w in Word::enumerate_canonical(6, q2()).iter().step_by(7) {
            let m = scramble(&string_module(w, q2()).unwrap(), &mut rng);
            assert_eq!(identify_summand(&m, DEFAULT_BUDGET), IdTag::StringWord(w.clone()), "{w}");
        }
    }

    #[test]
    fn projective_band_and_omega() {
        assert_eq!(identify_summand(&regular_module(q2()), DEFAULT_BUDGET), IdTag::Projective);
        let b = band_module(&"a b-".parse().unwrap(), &BitMatrix::identity(1), q2()).unwrap();
        assert_eq!(identify_summand(&b, DEFAULT_BUDGET), IdTag::Band);
        // ΩK = rad KG has two top generators and a simple socle: M(A⁻¹B).
        let o = heller(&trivial(q2()), -1);
        let a_inv_b = word_a(q2()).inverse().concat(&word_b(q2())).unwrap();
        assert_eq!(identify_summand(&o, DEFAULT_BUDGET), IdTag::StringWord(a_inv_b.canonical()));
        // KG/soc is M(AB⁻¹), the end term of the sequence with projective middle.
        let o = heller(&trivial(q2()), 1);
        let ab = word_a(q2()).concat(&word_b(q2()).inverse()).unwrap();
        assert_eq!(identify_summand(&o, DEFAULT_BUDGET), IdTag::StringWord(ab.canonical()));
    }
}
