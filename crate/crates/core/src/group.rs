//! Elements of the dihedral group of order `4q` in the normal form
//! `x^a (xy)^k`, `0 ≤ a ≤ 1`, `0 ≤ k < 2q`.

use crate::word::QParam;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    /// Exponent of `x` (reflection part).
    pub refl: bool,
    /// Exponent of the rotation `r = xy`.
    pub rot: usize,
}

impl Element {
    pub const IDENTITY: Element = Element { refl: false, rot: 0 };
    pub const X: Element = Element { refl: true, rot: 0 };
    /// `y = x·(xy)`.
    pub const Y: Element = Element { refl: true, rot: 1 };

    /// The central involution `z = (xy)^q`.
    pub fn z(q: QParam) -> Element {
        Element { refl: false, rot: q.get() % (2 * q.get()) }
    }

    /// Product `self · other`, using `r^k x = x r^{-k}`.
    pub fn mul(self, other: Element, q: QParam) -> Element {
        let n = 2 * q.get();
        let k = if other.refl { (n - self.rot % n) % n } else { self.rot % n };
        Element { refl: self.refl ^ other.refl, rot: (k + other.rot) % n }
    }

    pub fn inv(self, q: QParam) -> Element {
        if self.refl {
            self
        } else {
            let n = 2 * q.get();
            Element { refl: false, rot: (n - self.rot) % n }
        }
    }

    /// Position in the canonical enumeration (`a` major, `k` minor).
    pub fn index(self, q: QParam) -> usize {
        usize::from(self.refl) * 2 * q.get() + self.rot
    }

    pub fn from_index(i: usize, q: QParam) -> Element {
        let n = 2 * q.get();
        Element { refl: i >= n, rot: i % n }
    }

    pub fn all(q: QParam) -> impl Iterator<Item = Element> {
        (0..q.order()).map(move |i| Element::from_index(i, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_holds() {
        for q in [QParam::KLEIN, QParam::new(2).unwrap(), QParam::new(4).unwrap()] {
            let (x, y) = (Element::X, Element::Y);
            assert_eq!(x.mul(x, q), Element::IDENTITY);
            assert_eq!(y.mul(y, q), Element::IDENTITY);
            let mut r = Element::IDENTITY;
            for _ in 0..2 * q.get() {
                r = r.mul(x.mul(y, q), q);
            }
            assert_eq!(r, Element::IDENTITY);
            let z = Element::z(q);
            for g in Element::all(q) {
                assert_eq!(g.mul(z, q), z.mul(g, q));
                assert_eq!(g.mul(g.inv(q), q), Element::IDENTITY);
                for h in Element::all(q) {
                    for k in Element::all(q) {
                        assert_eq!(g.mul(h, q).mul(k, q), g.mul(h.mul(k, q), q));
                    }
                }
            }
        }
    }
}
