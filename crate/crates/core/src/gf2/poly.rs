//! Polynomials over GF(2), coefficients packed lowest degree first.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use super::matrix::{get_bit, set_bit, words_for, xor_into, BitMatrix, TrackedEchelon};
use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    // Invariant: no trailing zero words.
    words: Vec<u64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(deg: usize) -> Self {
        let mut words = vec![0; words_for(deg + 1)];
        set_bit(&mut words, deg, true);
        Poly2 { words }
    }

    pub fn from_coeffs(coeffs: &[bool]) -> Self {
        let mut words = vec![0; words_for(coeffs.len())];
        for (i, &c) in coeffs.iter().enumerate() {
            set_bit(&mut words, i, c);
        }
        Self::normalized(words)
    }

    /// Builds from a bitmask, bit `i` being the coefficient of `t^i`.
    pub fn from_mask(mask: u64) -> Self {
        Self::normalized(vec![mask])
    }

    fn normalized(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Poly2 { words }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        i < self.words.len() * 64 && get_bit(&self.words, i)
    }

    pub fn coeffs(&self) -> Vec<bool> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.coeff(i)).collect(),
        }
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let (long, short) =
            if self.words.len() >= other.words.len() { (self, other) } else { (other, self) };
        let mut words = long.words.clone();
        xor_into(&mut words, &short.words);
        Self::normalized(words)
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return Poly2::zero();
        };
        let mut words = vec![0u64; words_for(da + db + 1)];
        for i in 0..=da {
            if self.coeff(i) {
                // Shift `other` by i and accumulate.
                let (ws, bs) = (i / 64, i % 64);
                for (k, &w) in other.words.iter().enumerate() {
                    words[k + ws] ^= w << bs;
                    if bs != 0 && k + ws + 1 < words.len() {
                        words[k + ws + 1] ^= w >> (64 - bs);
                    }
                }
            }
        }
        Self::normalized(words)
    }

    pub fn shl(&self, s: usize) -> Poly2 {
        self.mul(&Poly2::monomial(s))
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, divisor: &Poly2) -> (Poly2, Poly2) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly2::zero();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            quot = quot.add(&Poly2::monomial(shift));
            rem = rem.add(&divisor.shl(shift));
        }
        (quot, rem)
    }

    pub fn rem(&self, divisor: &Poly2) -> Poly2 {
        self.div_rem(divisor).1
    }

    pub fn gcd(&self, other: &Poly2) -> Poly2 {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn pow(&self, e: usize) -> Poly2 {
        (0..e).fold(Poly2::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Poly2 {
        let Some(d) = self.degree() else { return Poly2::zero() };
        let coeffs: Vec<bool> = (1..=d).map(|i| i % 2 == 1 && self.coeff(i)).collect();
        Poly2::from_coeffs(&coeffs)
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &BitMatrix) -> BitMatrix {
        assert!(m.is_square());
        let n = m.rows();
        let Some(d) = self.degree() else { return BitMatrix::zeros(n, n) };
        let mut acc = BitMatrix::zeros(n, n);
        for i in (0..=d).rev() {
            acc = acc.mul(m);
            if self.coeff(i) {
                acc = acc.plus_identity();
            }
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        rabin_irreducible(self)
    }

    /// Factorisation into powers of distinct monic irreducibles, sorted by
    /// (degree, coefficients). The zero and constant polynomials give `[]`.
    pub fn factor(&self) -> Vec<(Poly2, usize)> {
        if self.degree().is_none() {
            return Vec::new();
        }
        let mut rest = self.clone();
        let mut out = Vec::new();
        let mut deg = 1;
        while rest.degree().unwrap_or(0) > 0 {
            let rd = rest.degree().unwrap();
            if deg * 2 > rd || deg > TABLE_DEGREE {
                assert!(
                    rabin_irreducible(&rest),
                    "factorisation beyond degree {TABLE_DEGREE} factors is not supported"
                );
                out.push((rest.clone(), 1));
                break;
            }
            for cand in irreducibles_of_degree(deg).iter().cloned() {
                let mut mult = 0;
                loop {
                    let (qt, r) = rest.div_rem(&cand);
                    if !r.is_zero() {
                        break;
                    }
                    rest = qt;
                    mult += 1;
                }
                if mult > 0 {
                    out.push((cand, mult));
                }
            }
            deg += 1;
        }
        // Merge the possible trailing irreducible with an earlier identical entry.
        out.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Poly2, usize)> = Vec::new();
        for (p, m) in out {
            match merged.last_mut() {
                Some((lp, lm)) if *lp == p => *lm += m,
                _ => merged.push((p, m)),
            }
        }
        merged
    }

    /// Companion matrix acting on row vectors: `e_i ↦ e_{i+1}`, last row the
    /// low coefficients.
    pub fn companion(&self) -> BitMatrix {
        let d = self.degree().expect("companion of zero polynomial");
        let mut m = BitMatrix::zeros(d, d);
        for i in 0..d.saturating_sub(1) {
            m.set(i, i + 1, true);
        }
        for j in 0..d {
            if self.coeff(j) {
                m.set(d - 1, j, true);
            }
        }
        m
    }
}

impl Ord for Poly2 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Poly2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

const TABLE_DEGREE: usize = 12;

fn irreducible_table() -> &'static [Vec<Poly2>] {
    static TABLE: OnceLock<Vec<Vec<Poly2>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=TABLE_DEGREE)
            .map(|d| {
                if d == 0 {
                    return Vec::new();
                }
                let lo = 1u64 << d;
                (lo..lo << 1).map(Poly2::from_mask).filter(rabin_irreducible).collect()
            })
            .collect()
    })
}

fn irreducibles_of_degree(d: usize) -> &'static [Poly2] {
    &irreducible_table()[d]
}

/// `t^(2^k) mod f`.
fn frobenius_power(f: &Poly2, k: usize) -> Poly2 {
    let mut x = Poly2::t().rem(f);
    for _ in 0..k {
        x = x.mul(&x).rem(f);
    }
    x
}

/// Rabin's test: `f` of degree n is irreducible iff `t^(2^n) = t mod f` and
/// `gcd(t^(2^(n/r)) - t, f) = 1` for every prime `r | n`.
fn rabin_irreducible(f: &Poly2) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if frobenius_power(f, n) != Poly2::t().rem(f) {
        return false;
    }
    let mut m = n;
    let mut r = 2;
    while m > 1 {
        if m % r == 0 {
            while m % r == 0 {
                m /= r;
            }
            let h = frobenius_power(f, n / r).add(&Poly2::t());
            if !h.gcd(f).is_one() {
                return false;
            }
        }
        r += 1;
    }
    true
}

/// Minimal polynomial of a square matrix: the first linear dependency among
/// `I, m, m², …`.
pub fn min_poly(m: &BitMatrix) -> Poly2 {
    assert!(m.is_square(), "minimal polynomial needs a square matrix");
    let n = m.rows();
    let mut powers = TrackedEchelon::new(n * n, n + 1);
    let mut cur = BitMatrix::identity(n);
    for k in 0..=n {
        let flat = cur.flatten();
        if let Some(c) = powers.coordinates(&flat) {
            let mut coeffs = vec![false; k + 1];
            for i in c.ones() {
                coeffs[i] = true;
            }
            coeffs[k] = true;
            return Poly2::from_coeffs(&coeffs);
        }
        powers.insert(flat);
        cur = cur.mul(m);
    }
    unreachable!("Cayley–Hamilton bounds the degree by n")
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else { return f.write_str("0") };
        let mut first = true;
        for i in 0..=d {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

impl FromStr for Poly2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(Poly2::zero());
        }
        let mut p = Poly2::zero();
        for term in s.split('+') {
            let deg = match term {
                "1" => 0,
                "t" => 1,
                _ => term
                    .strip_prefix("t^")
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad polynomial term {term:?}")))?,
            };
            p = p.add(&Poly2::monomial(deg));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly2 {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_basics() {
        assert_eq!(p("1+t").mul(&p("1+t")), p("1+t^2"));
        let (q, r) = p("t^3+t+1").div_rem(&p("t+1"));
        assert_eq!(q.mul(&p("t+1")).add(&r), p("t^3+t+1"));
        assert_eq!(p("t^2+1").gcd(&p("t^2+t")), p("t+1"));
        assert_eq!(p("1+t+t^2").to_string(), "1+t+t^2");
    }

    #[test]
    fn irreducibility_and_factoring() {
        assert!(p("1+t+t^2").is_irreducible());
        assert!(!p("1+t^2").is_irreducible());
        let f = p("1+t").pow(3).mul(&p("1+t+t^2")).mul(&p("t"));
        assert_eq!(f.factor(), vec![(p("t"), 1), (p("1+t"), 3), (p("1+t+t^2"), 1)]);
        let g = p("1+t+t^3").pow(2);
        assert_eq!(g.factor(), vec![(p("1+t+t^3"), 2)]);
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(min_poly(&BitMatrix::identity(3)), p("1+t"));
        let jordan = BitMatrix::from_row_strings(&["11", "01"]).unwrap();
        assert_eq!(min_poly(&jordan), p("1+t^2"));
        let c = p("1+t+t^3").companion();
        assert_eq!(min_poly(&c), p("1+t+t^3"));
        assert!(p("1+t+t^3").eval_matrix(&c).is_zero());
    }
}
