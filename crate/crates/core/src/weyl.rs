//! Weyl group elements as signed permutations of the positive roots.

use std::collections::HashSet;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::rootsys::{Root, RootAutomorphism, RootSystem, SystemId};
use crate::subset::{IndexSubset, Word};

/// An element of the Weyl group.
///
/// Stored as the images of the positive roots (as root indices of the owning
/// [`RootSystem`]); an image `>= N` is a negative root. Equality is equality
/// of this action, so two words for the same element compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    system: SystemId,
    images: Box<[u16]>,
    length: u32,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement(len={}, {:?})", self.length, self.images)
    }
}

impl WeylElement {
    fn from_images(system: SystemId, images: Box<[u16]>) -> Self {
        let n = images.len();
        let length = images.iter().filter(|&&x| x as usize >= n).count() as u32;
        WeylElement { system, images, length }
    }

    pub fn system(&self) -> SystemId {
        self.system
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Image of root index `k` (positive or negative).
    #[inline]
    pub fn act(&self, k: usize) -> usize {
        let n = self.images.len();
        if k < n {
            self.images[k] as usize
        } else {
            let t = self.images[k - n] as usize;
            if t < n {
                t + n
            } else {
                t - n
            }
        }
    }

    /// Whether `w(alpha_i)` is negative, i.e. `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.images[i] as usize >= self.images.len()
    }

    pub fn inverse(&self) -> WeylElement {
        let n = self.images.len();
        let mut inv = vec![0u16; n];
        for (k, &t) in self.images.iter().enumerate() {
            let t = t as usize;
            if t < n {
                inv[t] = k as u16;
            } else {
                inv[t - n] = (k + n) as u16;
            }
        }
        WeylElement {
            system: self.system,
            images: inv.into_boxed_slice(),
            length: self.length,
        }
    }

    /// Whether `w^{-1}(alpha_i)` is negative, i.e. `l(s_i w) < l(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let n = self.images.len();
        // w^{-1}(alpha_i) < 0 iff some positive root maps to -alpha_i
        self.images.iter().any(|&t| t as usize == i + n)
    }

    /// `self * other`, acting as `other` first.
    pub fn try_mul(&self, other: &WeylElement) -> Result<WeylElement> {
        if self.system != other.system {
            return Err(Error::Mismatch);
        }
        let images: Box<[u16]> = other.images.iter().map(|&t| self.act(t as usize) as u16).collect();
        Ok(WeylElement::from_images(self.system, images))
    }

    /// Root indices of the images of the positive roots.
    pub fn images(&self) -> &[u16] {
        &self.images
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;

    /// Panics on elements of different root systems; use [`WeylElement::try_mul`] to check.
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        self.try_mul(rhs).expect("multiplying elements of different root systems")
    }
}

impl RootSystem {
    pub fn identity(&self) -> WeylElement {
        let n = self.num_positive();
        WeylElement::from_images(self.id(), (0..n as u16).collect())
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        let n = self.num_positive();
        WeylElement::from_images(self.id(), (0..n).map(|k| self.reflect(i, k) as u16).collect())
    }

    pub(crate) fn check_element(&self, w: &WeylElement) -> Result<()> {
        if w.system == self.id() {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    /// `w * s_i`
    pub fn mul_simple_right(&self, w: &WeylElement, i: usize) -> WeylElement {
        let n = self.num_positive();
        let images = (0..n).map(|k| w.act(self.reflect(i, k)) as u16).collect();
        WeylElement::from_images(w.system, images)
    }

    /// `s_i * w`
    pub fn mul_simple_left(&self, i: usize, w: &WeylElement) -> WeylElement {
        let images = w.images.iter().map(|&t| self.reflect(i, t as usize) as u16).collect();
        WeylElement::from_images(w.system, images)
    }

    /// Product of simple reflections in the order given.
    pub fn from_word(&self, word: &Word) -> Result<WeylElement> {
        let mut w = self.identity();
        for &l in word.letters() {
            if l >= self.rank() {
                return Err(Error::Word { letter: l.wrapping_add(1), rank: self.rank() });
            }
            w = self.mul_simple_right(&w, l);
        }
        Ok(w)
    }

    pub fn act_on_root(&self, w: &WeylElement, root: &[i32]) -> Result<Root> {
        self.check_element(w)?;
        let k = self.root_index(root).ok_or_else(|| Error::Root(root.to_vec()))?;
        Ok(self.root(w.act(k)).clone())
    }

    /// Reduced word by repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self, w: &WeylElement) -> Word {
        let mut cur = w.clone();
        let mut rev = Vec::with_capacity(w.length());
        while let Some(i) = (0..self.rank()).find(|&i| cur.has_right_descent(i)) {
            rev.push(i);
            cur = self.mul_simple_right(&cur, i);
        }
        rev.reverse();
        Word(rev)
    }

    /// Simple indices occurring in any reduced word of `w`.
    ///
    /// Computed as the union of the supports of the inversions of `w`; this
    /// avoids building a word.
    pub fn support(&self, w: &WeylElement) -> IndexSubset {
        let n = self.num_positive();
        let mut s = IndexSubset::EMPTY;
        for k in 0..n {
            if w.images[k] as usize >= n {
                s = s.union(self.root_support(k));
            }
        }
        s
    }

    /// Conjugation `theta w theta^{-1}` of the root action.
    pub fn apply_aut(&self, theta: &RootAutomorphism, w: &WeylElement) -> WeylElement {
        let n = self.num_positive();
        let images = (0..n)
            .map(|k| theta.apply(w.act(theta.apply_inverse(k))) as u16)
            .collect();
        WeylElement::from_images(w.system, images)
    }

    pub fn longest_element(&self) -> WeylElement {
        let mut w = self.identity();
        while let Some(i) = (0..self.rank()).find(|&i| !w.has_right_descent(i)) {
            w = self.mul_simple_right(&w, i);
        }
        w
    }

    fn check_guard(&self, size: u128) -> Result<()> {
        if size > self.guard() as u128 {
            Err(Error::Guard { size, limit: self.guard() })
        } else {
            Ok(())
        }
    }

    /// Every element of the group generated by the simple reflections in `gens`,
    /// breadth first by length and sorted within each length.
    pub fn enumerate_generated(&self, gens: IndexSubset) -> Result<Vec<WeylElement>> {
        let mut out = vec![self.identity()];
        let mut frontier = vec![self.identity()];
        let mut seen: HashSet<WeylElement> = HashSet::new();
        seen.insert(self.identity());
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                for i in gens.iter() {
                    if w.has_right_descent(i) {
                        continue;
                    }
                    let v = self.mul_simple_right(w, i);
                    if seen.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            self.check_guard(seen.len() as u128)?;
            self.sort_elements(&mut next);
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }

    /// The whole Weyl group, in (length, reduced word) order.
    pub fn enumerate_group(&self) -> Result<Vec<WeylElement>> {
        if let Some(order) = self.weyl_order() {
            self.check_guard(order)?;
        }
        self.enumerate_generated(self.all_indices())
    }

    /// Sorts by length, then lexicographically by reduced word.
    pub fn sort_elements(&self, v: &mut [WeylElement]) {
        v.sort_by_cached_key(|w| (w.length(), self.reduced_word(w)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, diagram_automorphisms, validate_automorphism};

    fn rs(s: &str) -> RootSystem {
        build_root_system(&s.parse().unwrap()).unwrap()
    }

    fn w(r: &RootSystem, labels: &[usize]) -> WeylElement {
        r.from_word(&Word::from_labels(labels)).unwrap()
    }

    #[test]
    fn from_word_examples() {
        let a2 = rs("A2");
        assert!(w(&a2, &[]).is_identity());
        let s1s2 = w(&a2, &[1, 2]);
        assert_eq!(s1s2.length(), 2);
        assert_eq!(a2.act_on_root(&s1s2, &[1, 0]).unwrap(), vec![0, 1]);
        assert_eq!(w(&a2, &[1, 1]), a2.identity());
        assert!(matches!(
            a2.from_word(&Word::from_labels(&[3])),
            Err(Error::Word { letter: 3, rank: 2 })
        ));
    }

    #[test]
    fn multiply_and_inverse() {
        let a2 = rs("A2");
        let s1s2 = w(&a2, &[1, 2]);
        assert!((&s1s2 * &s1s2.inverse()).is_identity());
        assert_eq!(s1s2.inverse(), w(&a2, &[2, 1]));
        let (s1, s2) = (a2.simple_reflection(0), a2.simple_reflection(1));
        assert_ne!(&s1 * &s2, &s2 * &s1);
        assert_eq!(&s1 * &s2, s1s2);
        let b2 = rs("B2");
        assert_eq!(s1.try_mul(&b2.simple_reflection(0)), Err(Error::Mismatch));
        // A3 and G2 both have six positive roots
        let (a3, g2) = (rs("A3"), rs("G2"));
        assert_eq!(a3.identity().try_mul(&g2.identity()), Err(Error::Mismatch));
    }

    #[test]
    fn length_and_reduced_words() {
        let a2 = rs("A2");
        assert_eq!(a2.identity().length(), 0);
        let w0 = a2.longest_element();
        assert_eq!(w0.length(), 3);
        assert_eq!(w0, w(&a2, &[2, 1, 2]));
        let rw = a2.reduced_word(&w(&a2, &[1, 2, 1]));
        assert!(rw.labels() == vec![1, 2, 1] || rw.labels() == vec![2, 1, 2]);
        assert_eq!(rw.labels(), vec![1, 2, 1]);
        assert_eq!(a2.reduced_word(&w(&a2, &[1, 2])).labels(), vec![1, 2]);
    }

    #[test]
    fn act_on_root_examples() {
        let a2 = rs("A2");
        assert_eq!(a2.act_on_root(&a2.identity(), &[1, 0]).unwrap(), vec![1, 0]);
        assert_eq!(a2.act_on_root(&w(&a2, &[2]), &[1, 0]).unwrap(), vec![1, 1]);
        assert_eq!(a2.act_on_root(&w(&a2, &[1]), &[1, 0]).unwrap(), vec![-1, 0]);
        assert!(matches!(a2.act_on_root(&a2.identity(), &[2, 0]), Err(Error::Root(_))));
    }

    #[test]
    fn group_orders() {
        for (s, n) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("B3", 48), ("G2", 12), ("A1xA1", 4), ("A2xA2", 36), ("D4", 192), ("F4", 1152)] {
            let r = rs(s);
            let g = r.enumerate_group().unwrap();
            assert_eq!(g.len(), n, "{s}");
            assert_eq!(r.weyl_order(), Some(n as u128));
            assert!(g.windows(2).all(|p| p[0].length() <= p[1].length()));
        }
    }

    #[test]
    fn enumeration_closed_under_multiplication() {
        let r = rs("B2");
        let g = r.enumerate_group().unwrap();
        let set: HashSet<_> = g.iter().cloned().collect();
        for a in &g {
            for b in &g {
                assert!(set.contains(&(a * b)));
            }
        }
    }

    #[test]
    fn guard_is_enforced() {
        let r = rs("E6").with_guard(1000);
        assert!(matches!(r.enumerate_group(), Err(Error::Guard { limit: 1000, .. })));
        let c = RootSystem::from_cartan(rs("A4").cartan_matrix().to_vec()).unwrap().with_guard(50);
        assert!(matches!(c.enumerate_group(), Err(Error::Guard { .. })));
    }

    #[test]
    fn support_examples() {
        let a2 = rs("A2");
        assert_eq!(a2.support(&a2.identity()), IndexSubset::EMPTY);
        assert_eq!(a2.support(&w(&a2, &[1, 2])), IndexSubset::from_indices([0, 1]));
        assert_eq!(a2.support(&w(&a2, &[2])), IndexSubset::from_indices([1]));
    }

    #[test]
    fn support_matches_reduced_word_letters() {
        for s in ["A3", "B3", "G2", "A1xA2"] {
            let r = rs(s);
            for x in r.enumerate_group().unwrap() {
                let letters = IndexSubset::from_indices(r.reduced_word(&x).letters().iter().copied());
                assert_eq!(r.support(&x), letters);
            }
        }
    }

    #[test]
    fn apply_aut_examples() {
        let a2 = rs("A2");
        let id = RootAutomorphism::identity(&a2);
        let flip = RootAutomorphism::diagram_flip(&a2).unwrap();
        let neg = RootAutomorphism::negation(&a2);
        for x in a2.enumerate_group().unwrap() {
            assert_eq!(a2.apply_aut(&id, &x), x);
            assert_eq!(a2.apply_aut(&neg, &x), x);
        }
        assert_eq!(a2.apply_aut(&flip, &w(&a2, &[1])), w(&a2, &[2]));
    }

    #[test]
    fn diagram_automorphisms_relabel_words_and_supports() {
        for s in ["A3", "A2xA2", "D4"] {
            let r = rs(s);
            let g = r.enumerate_group().unwrap();
            for d in diagram_automorphisms(&r) {
                let p = d.simple_permutation().unwrap();
                for x in &g {
                    let y = r.apply_aut(&d, x);
                    assert_eq!(y.length(), x.length());
                    assert_eq!(r.support(&y), r.support(x).permuted(&p));
                    let relabelled = Word(r.reduced_word(x).letters().iter().map(|&l| p[l]).collect());
                    assert_eq!(r.from_word(&relabelled).unwrap(), y);
                }
            }
        }
    }

    #[test]
    fn general_automorphism_conjugation_is_homomorphism() {
        let b2 = rs("B2");
        let theta = validate_automorphism(&b2, vec![vec![1, 0], vec![2, -1]], None).unwrap();
        let g = b2.enumerate_group().unwrap();
        let s2 = b2.simple_reflection(1);
        for a in &g {
            // theta is the lattice action of s_2, so conjugation is inner
            assert_eq!(b2.apply_aut(&theta, a), &(&s2 * a) * &s2);
            for b in &g {
                assert_eq!(b2.apply_aut(&theta, &(a * b)), &b2.apply_aut(&theta, a) * &b2.apply_aut(&theta, b));
            }
        }
    }
}
