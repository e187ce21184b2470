//! Words in `a`, `b` and their inverses indexing string modules, together
//! with the operators `L_q`, `R_q` that realise `Ω²` on string modules.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The group parameter: `G = <x, y | x² = y² = (xy)^{2q} = 1>` has order `4q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QParam(usize);

impl QParam {
    pub fn new(q: usize) -> Result<Self> {
        if q >= 2 && q.is_power_of_two() {
            Ok(QParam(q))
        } else {
            Err(Error::InvalidQ(q))
        }
    }

    /// `q = 1`: the presentation degenerates to the Klein four group.
    pub(crate) const KLEIN: QParam = QParam(1);

    pub fn get(self) -> usize {
        self.0
    }

    pub fn is_klein(self) -> bool {
        self.0 == 1
    }

    /// Order of the group.
    pub fn order(self) -> usize {
        4 * self.0
    }
}

impl Serialize for QParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.0 as u64)
    }
}

impl<'de> Deserialize<'de> for QParam {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let q = usize::deserialize(d)?;
        if q == 1 {
            return Ok(QParam::KLEIN);
        }
        QParam::new(q).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    A,
    B,
}

impl Sym {
    pub fn other(self) -> Sym {
        match self {
            Sym::A => Sym::B,
            Sym::B => Sym::A,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub sym: Sym,
    pub inverse: bool,
}

impl Letter {
    pub const A: Letter = Letter { sym: Sym::A, inverse: false };
    pub const B: Letter = Letter { sym: Sym::B, inverse: false };
    pub const A_INV: Letter = Letter { sym: Sym::A, inverse: true };
    pub const B_INV: Letter = Letter { sym: Sym::B, inverse: true };

    pub fn inv(self) -> Letter {
        Letter { inverse: !self.inverse, ..self }
    }

    pub fn is_direct(self) -> bool {
        !self.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sym {
            Sym::A => "a",
            Sym::B => "b",
        };
        f.write_str(s)?;
        if self.inverse {
            f.write_str("-")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(Letter::A),
            "b" => Ok(Letter::B),
            "a-" => Ok(Letter::A_INV),
            "b-" => Ok(Letter::B_INV),
            _ => Err(Error::Parse(format!(
                "unknown letter {s:?}; expected one of a, b, a-, b-"
            ))),
        }
    }
}

/// An alternating sequence of letters. Alternation is checked on construction.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

fn first_break(letters: &[Letter]) -> Option<usize> {
    letters.windows(2).position(|w| w[0].sym == w[1].sym).map(|i| i + 1)
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        match first_break(&letters) {
            Some(i) => Err(Error::NotAlternating(i)),
            None => Ok(Word(letters)),
        }
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Whether the word lies in `W_q`: no run of `2q` consecutive direct
    /// letters and no run of `2q` consecutive inverse letters. Given
    /// alternation these runs are exactly `(ab)^q`, `(ba)^q`, `(a⁻¹b⁻¹)^q`
    /// and `(b⁻¹a⁻¹)^q`.
    pub fn is_valid(&self, q: QParam) -> bool {
        let limit = 2 * q.get();
        let mut run = 0;
        let mut prev: Option<bool> = None;
        for l in &self.0 {
            if prev == Some(l.inverse) {
                run += 1;
            } else {
                run = 1;
                prev = Some(l.inverse);
            }
            if run >= limit {
                return false;
            }
        }
        true
    }

    /// Reverses the word and inverts every letter.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Lexicographic minimum of `w` and `w⁻¹`, the representative of the
    /// isomorphism class of `M(w)`.
    pub fn canonical(&self) -> Word {
        let inv = self.inverse();
        if inv < *self {
            inv
        } else {
            self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self <= self.inverse()
    }

    pub fn same_class(&self, other: &Word) -> bool {
        self == other || *self == other.inverse()
    }

    /// Concatenation, `None` if the junction breaks alternation.
    pub fn concat(&self, other: &Word) -> Option<Word> {
        if let (Some(x), Some(y)) = (self.last(), other.first()) {
            if x.sym == y.sym {
                return None;
            }
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Some(Word(v))
    }

    fn strip_prefix(&self, p: &Word) -> Option<Word> {
        self.0.strip_prefix(p.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    fn strip_suffix(&self, p: &Word) -> Option<Word> {
        self.0.strip_suffix(p.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    /// Words with a-type (resp. b-type) first letter.
    pub fn starts_with_sym(&self, s: Sym) -> bool {
        self.first().map(|l| l.sym == s).unwrap_or(false)
    }

    /// All alternating words of length `n` (valid or not), in lexicographic order.
    pub fn all_alternating(n: usize) -> Vec<Word> {
        if n == 0 {
            return vec![Word::empty()];
        }
        let mut out = Vec::with_capacity(2 << n);
        for start in [Sym::A, Sym::B] {
            for mask in 0u64..(1u64 << n) {
                let letters = (0..n)
                    .map(|i| Letter {
                        sym: if i % 2 == 0 { start } else { start.other() },
                        inverse: (mask >> (n - 1 - i)) & 1 == 1,
                    })
                    .collect();
                out.push(Word(letters));
            }
        }
        out.sort();
        out
    }

    /// All members of `W_q` of length `n`.
    pub fn enumerate(n: usize, q: QParam) -> Vec<Word> {
        Self::all_alternating(n).into_iter().filter(|w| w.is_valid(q)).collect()
    }

    /// Canonical representatives of `W_q` of length at most `max_len`.
    pub fn enumerate_canonical(max_len: usize, q: QParam) -> Vec<Word> {
        (0..=max_len)
            .flat_map(|n| Self::enumerate(n, q))
            .filter(|w| w.is_canonical())
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("Word(ε)")
        } else {
            write!(f, "Word({self})")
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts whitespace-separated letters (`a b- a`) or a JSON array
    /// (`["a","b-","a"]`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let tokens: Vec<String> = if t.starts_with('[') {
            serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?
        } else {
            t.split_whitespace().map(str::to_owned).collect()
        };
        let letters = tokens.iter().map(|tok| tok.parse()).collect::<Result<Vec<Letter>>>()?;
        Word::new(letters)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let letters = v
            .iter()
            .map(|t| t.parse())
            .collect::<Result<Vec<Letter>>>()
            .map_err(serde::de::Error::custom)?;
        Word::new(letters).map_err(serde::de::Error::custom)
    }
}

/// `A = (ab)^{q-1}a`.
pub fn word_a(q: QParam) -> Word {
    direct_run(Sym::A, 2 * q.get() - 1)
}

/// `B = (ba)^{q-1}b`.
pub fn word_b(q: QParam) -> Word {
    direct_run(Sym::B, 2 * q.get() - 1)
}

fn direct_run(start: Sym, len: usize) -> Word {
    Word(
        (0..len)
            .map(|i| Letter { sym: if i % 2 == 0 { start } else { start.other() }, inverse: false })
            .collect(),
    )
}

fn w(letters: &[Letter]) -> Word {
    Word(letters.to_vec())
}

fn cat(parts: &[&Word]) -> Word {
    Word(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
}

/// Segments removed/added by `L_q`: `(removable prefixes, addable prefixes)`.
fn l_segments(q: QParam) -> ([Word; 2], [Word; 2]) {
    let (a, b) = (word_a(q), word_b(q));
    (
        [cat(&[&a, &w(&[Letter::B_INV])]), cat(&[&b, &w(&[Letter::A_INV])])],
        [cat(&[&a.inverse(), &w(&[Letter::B])]), cat(&[&b.inverse(), &w(&[Letter::A])])],
    )
}

/// Segments removed/added by `R_q`.
fn r_segments(q: QParam) -> ([Word; 2], [Word; 2]) {
    let (a, b) = (word_a(q), word_b(q));
    (
        [cat(&[&w(&[Letter::A]), &b.inverse()]), cat(&[&w(&[Letter::B]), &a.inverse()])],
        [cat(&[&w(&[Letter::A_INV]), &b]), cat(&[&w(&[Letter::B_INV]), &a])],
    )
}

fn pick_unique(
    op: &'static str,
    word: &Word,
    q: QParam,
    candidates: impl IntoIterator<Item = Word>,
) -> Result<Word> {
    let mut valid: Vec<Word> = candidates.into_iter().filter(|c| c.is_valid(q)).collect();
    valid.dedup();
    match valid.len() {
        0 => Err(Error::OperatorUndefined { op, word: word.clone(), q: q.get() }),
        1 => Ok(valid.pop().unwrap()),
        _ => Err(Error::AmbiguousOperator { op, word: word.clone(), q: q.get() }),
    }
}

fn require_valid(word: &Word, q: QParam) -> Result<()> {
    if word.is_valid(q) {
        Ok(())
    } else {
        Err(Error::InvalidWord(word.clone(), q.get()))
    }
}

/// `wL_q`: strip a leading `Ab⁻¹` or `Ba⁻¹`, otherwise prepend whichever of
/// `A⁻¹b`, `B⁻¹a` keeps the word alternating and inside `W_q`.
pub fn apply_l(word: &Word, q: QParam) -> Result<Word> {
    require_valid(word, q)?;
    let (remove, add) = l_segments(q);
    for p in &remove {
        if let Some(rest) = word.strip_prefix(p) {
            return Ok(rest);
        }
    }
    pick_unique("L", word, q, add.iter().filter_map(|p| p.concat(word)))
}

/// `wR_q`: strip a trailing `aB⁻¹` or `bA⁻¹`, otherwise append whichever of
/// `a⁻¹B`, `b⁻¹A` keeps the word alternating and inside `W_q`.
pub fn apply_r(word: &Word, q: QParam) -> Result<Word> {
    require_valid(word, q)?;
    let (remove, add) = r_segments(q);
    for s in &remove {
        if let Some(rest) = word.strip_suffix(s) {
            return Ok(rest);
        }
    }
    pick_unique("R", word, q, add.iter().filter_map(|s| word.concat(s)))
}

/// `wL_q⁻¹`: the unique `u ∈ W_q` with `uL_q = w`.
pub fn apply_l_inv(word: &Word, q: QParam) -> Result<Word> {
    require_valid(word, q)?;
    let (remove, add) = l_segments(q);
    let mut cands: Vec<Word> = add.iter().filter_map(|p| word.strip_prefix(p)).collect();
    cands.extend(remove.iter().filter_map(|p| p.concat(word)));
    let cands = cands.into_iter().filter(|u| u.is_valid(q) && apply_l(u, q).ok().as_ref() == Some(word));
    pick_unique("L^-1", word, q, cands)
}

/// `wR_q⁻¹`: the unique `u ∈ W_q` with `uR_q = w`.
pub fn apply_r_inv(word: &Word, q: QParam) -> Result<Word> {
    require_valid(word, q)?;
    let (remove, add) = r_segments(q);
    let mut cands: Vec<Word> = add.iter().filter_map(|s| word.strip_suffix(s)).collect();
    cands.extend(remove.iter().filter_map(|s| word.concat(s)));
    let cands = cands.into_iter().filter(|u| u.is_valid(q) && apply_r(u, q).ok().as_ref() == Some(word));
    pick_unique("R^-1", word, q, cands)
}

/// `L_q^i`, negative exponents applying the inverse operator.
pub fn apply_l_pow(word: &Word, i: i64, q: QParam) -> Result<Word> {
    let mut cur = word.clone();
    for _ in 0..i.unsigned_abs() {
        cur = if i > 0 { apply_l(&cur, q)? } else { apply_l_inv(&cur, q)? };
    }
    Ok(cur)
}

/// `R_q^j`, negative exponents applying the inverse operator.
pub fn apply_r_pow(word: &Word, j: i64, q: QParam) -> Result<Word> {
    let mut cur = word.clone();
    for _ in 0..j.unsigned_abs() {
        cur = if j > 0 { apply_r(&cur, q)? } else { apply_r_inv(&cur, q)? };
    }
    Ok(cur)
}

/// `wL_qR_q`, the word of `Ω²M(w)`.
pub fn omega2_word(word: &Word, q: QParam) -> Result<Word> {
    apply_r(&apply_l(word, q)?, q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArNeighbors {
    pub left: Word,
    pub right: Word,
    pub translate: Word,
    pub has_projective_middle: bool,
}

/// The almost-split sequence ending in `M(w)`:
/// `0 → M(wL_qR_q) → M(wL_q) ⊕ M(wR_q) [⊕ KG] → M(w) → 0`, the projective
/// middle term occurring exactly for `w = AB⁻¹` (up to inversion).
pub fn ar_neighbors(word: &Word, q: QParam) -> Result<ArNeighbors> {
    let left = apply_l(word, q)?;
    let right = apply_r(word, q)?;
    let translate = apply_r(&left, q)?;
    let ab = cat(&[&word_a(q), &word_b(q).inverse()]);
    Ok(ArNeighbors { left, right, translate, has_projective_middle: word.same_class(&ab) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wd(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn q2() -> QParam {
        QParam::new(2).unwrap()
    }

    #[test]
    fn parsing_and_display() {
        let x = wd("a b- a b a-");
        assert_eq!(x.to_string(), "a b- a b a-");
        assert_eq!(wd(r#"["a","b-"]"#), wd("a b-"));
        assert!("a a".parse::<Word>().is_err());
        assert!("A".parse::<Word>().is_err());
        assert!("aB-Ab".parse::<Word>().is_err());
        assert!(QParam::new(3).is_err());
        assert!(QParam::new(1).is_err());
    }

    #[test]
    fn validity() {
        assert!(wd("a b- a b a-").is_valid(q2()));
        assert!(!wd("a b a b").is_valid(q2()));
        assert!(!wd("b- a- b- a-").is_valid(q2()));
        assert!(wd("a b a b").is_valid(QParam::new(4).unwrap()));
        assert!(Word::empty().is_valid(q2()));
    }

    #[test]
    fn inversion() {
        assert_eq!(wd("a b- a b a-").inverse(), wd("a b- a- b a-"));
        assert_eq!(Word::empty().inverse(), Word::empty());
        assert_eq!(wd("a").inverse(), wd("a-"));
    }

    #[test]
    fn l_examples() {
        assert_eq!(apply_l(&wd("a"), q2()).unwrap(), wd("a- b- a- b a"));
        assert_eq!(apply_l(&wd("a b a b- a- b-"), q2()).unwrap(), wd("a- b-"));
        assert!(matches!(
            apply_l(&wd("a b a"), q2()),
            Err(Error::OperatorUndefined { .. })
        ));
        assert!(matches!(
            apply_l(&Word::empty(), q2()),
            Err(Error::AmbiguousOperator { .. })
        ));
    }

    #[test]
    fn r_examples() {
        assert_eq!(apply_r(&wd("a"), q2()).unwrap(), wd("a b- a b a"));
        assert_eq!(apply_r(&wd("a b a b- a- b-"), q2()).unwrap(), wd("a b"));
    }

    #[test]
    fn omega2_of_a() {
        let o = omega2_word(&wd("a"), q2()).unwrap();
        assert_eq!(o, wd("a- b- a- b a b- a b a"));
        assert_eq!(o.len(), 9);
    }

    #[test]
    fn neighbors_flag_projective_middle() {
        let ab = wd("a b a b- a- b-");
        assert!(ar_neighbors(&ab, q2()).unwrap().has_projective_middle);
        assert!(ar_neighbors(&ab.inverse(), q2()).unwrap().has_projective_middle);
        let n = ar_neighbors(&wd("a"), q2()).unwrap();
        assert!(!n.has_projective_middle);
        assert_eq!(n.left, wd("a- b- a- b a"));
        assert_eq!(n.right, wd("a b- a b a"));
    }

    #[test]
    fn inverse_operators_undo() {
        for w in Word::enumerate_canonical(6, q2()) {
            if let Ok(l) = apply_l(&w, q2()) {
                if l.is_empty() {
                    // Both Ab⁻¹ and Ba⁻¹ reduce to the empty word.
                    assert!(matches!(apply_l_inv(&l, q2()), Err(Error::AmbiguousOperator { .. })));
                } else {
                    assert_eq!(apply_l_inv(&l, q2()).unwrap(), w);
                }
            }
            if let Ok(r) = apply_r(&w, q2()) {
                if r.is_empty() {
                    assert!(matches!(apply_r_inv(&r, q2()), Err(Error::AmbiguousOperator { .. })));
                } else {
                    assert_eq!(apply_r_inv(&r, q2()).unwrap(), w);
                }
            }
        }
    }
}
