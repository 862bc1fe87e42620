//! Bédard's parametrization of `W^{δ(J)}`, the stabilizer set `I(J, w, δ)`,
//! piece enumeration, and the classifier that locates the piece containing
//! `(x, 1)` for an arbitrary `x` in `W`.
//!
//! A Bédard sequence `(J_n, w_n)` for `(J, δ)` satisfies
//!
//! * `J_0 = J`,
//! * `J_n = J_{n-1} ∩ δ^{-1}(w_{n-1}^{-1} J_{n-1})`,
//! * `w_n ∈ ^{J_n}W^{δ(J_n)}` and `w_n ∈ W_{J_{n-1}} w_{n-1}`,
//!
//! and is eventually constant. Its limit runs over `W^{δ(J)}` bijectively,
//! and the limiting `J_m` is `I(J, w_m, δ)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::parabolic::{self, decompose_left, decompose_right, is_min_double, is_min_right, Side};
use crate::rootsys::{RootAutomorphism, RootSystem};
use crate::subset::IndexSubset;
use crate::weyl::WeylElement;

/// An eventually constant sequence `(J_n, w_n)`, listed up to and including
/// its first stable term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BedardSequence {
    pub steps: Vec<(IndexSubset, WeylElement)>,
    pub stable_index: usize,
}

impl BedardSequence {
    pub fn limit(&self) -> &WeylElement {
        &self.steps[self.stable_index].1
    }

    pub fn stable_subset(&self) -> IndexSubset {
        self.steps[self.stable_index].0
    }
}

/// Index record for one piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceDescriptor {
    pub j: IndexSubset,
    pub w: WeylElement,
    pub k: IndexSubset,
    pub sequence: BedardSequence,
}

pub(crate) fn diagram_perm(delta: &RootAutomorphism) -> Result<Vec<usize>> {
    delta
        .simple_permutation()
        .ok_or_else(|| Error::Precondition("δ must be a diagram automorphism".into()))
}

fn require_min_right(w: &WeylElement, dj: IndexSubset, what: &str) -> Result<()> {
    if is_min_right(w, dj) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} is not in W^{{δ(J)}} with δ(J) = {dj}")))
    }
}

/// `{j ∈ J : w(δ(α_j)) ∈ Δ_J}`
fn shrink(rs: &RootSystem, perm: &[usize], j: IndexSubset, w: &WeylElement) -> IndexSubset {
    IndexSubset::from_indices(j.iter().filter(|&i| {
        let t = w.act(perm[i]);
        t < rs.rank() && j.contains(t)
    }))
}

/// The largest `K ⊆ J` with `w δ(K) = K`, by pruning indices whose image is
/// not a simple root of the current candidate.
pub fn i_set(rs: &RootSystem, j: IndexSubset, delta: &RootAutomorphism, w: &WeylElement) -> Result<IndexSubset> {
    rs.check_element(w)?;
    delta.check_system(rs)?;
    let perm = diagram_perm(delta)?;
    require_min_right(w, j.permuted(&perm), "w")?;
    let mut k = j;
    loop {
        let next = shrink(rs, &perm, k, w);
        if next == k {
            return Ok(k);
        }
        k = next;
    }
}

/// The unique sequence in `T(J, δ)` with limit `w`.
///
/// Built as `w_n = min(W_{J_n} w)` and `J_{n+1} = {j ∈ J_n : w_n δ(α_j) ∈ Δ_{J_n}}`
/// until the pair repeats. The result is checked against the defining axioms.
pub fn bedard_sequence(rs: &RootSystem, j: IndexSubset, delta: &RootAutomorphism, w: &WeylElement) -> Result<BedardSequence> {
    rs.check_element(w)?;
    delta.check_system(rs)?;
    let perm = diagram_perm(delta)?;
    require_min_right(w, j.permuted(&perm), "w")?;

    let bound = rs.rank() + 2;
    let mut steps: Vec<(IndexSubset, WeylElement)> = Vec::new();
    let mut cur = j;
    loop {
        let wn = decompose_left(rs, w, cur).1;
        if let Some((pj, pw)) = steps.last() {
            if *pj == cur && *pw == wn {
                break;
            }
        }
        let next = shrink(rs, &perm, cur, &wn);
        steps.push((cur, wn));
        if steps.len() > bound {
            return Err(Error::Internal(format!("Bédard sequence did not stabilize within {bound} steps")));
        }
        cur = next;
    }
    let seq = BedardSequence { stable_index: steps.len() - 1, steps };
    let limit = check_bedard_axioms(rs, j, delta, &seq)?;
    if limit != *w {
        return Err(Error::Contract("Bédard sequence limit differs from its input".into()));
    }
    Ok(seq)
}

/// Checks that `seq` is an element of `T(J, δ)` written literally from its
/// axioms (δ may be any diagram automorphism, including an inverse), and
/// returns its limit.
///
/// Shares no code with [`bedard_sequence`]: the `J_n` recursion goes through
/// [`parabolic::transport`] of `w^{-1}`, and coset membership through supports.
pub fn check_bedard_axioms(
    rs: &RootSystem,
    j: IndexSubset,
    delta: &RootAutomorphism,
    seq: &BedardSequence,
) -> Result<WeylElement> {
    let fail = |msg: String| Err(Error::Contract(format!("sequence not in T({j}, δ): {msg}")));
    let steps = &seq.steps;
    if steps.is_empty() || seq.stable_index + 1 != steps.len() {
        return fail("malformed step list".into());
    }
    if steps[0].0 != j {
        return fail(format!("J_0 = {} ≠ J", steps[0].0));
    }
    let next_subset = |jn: IndexSubset, wn: &WeylElement| -> Result<IndexSubset> {
        let moved = parabolic::transport(rs, &wn.inverse(), jn);
        let back = delta
            .preimage_subset(moved)
            .ok_or_else(|| Error::Precondition("δ must be a diagram automorphism".into()))?;
        Ok(jn.intersection(back))
    };
    for (n, (jn, wn)) in steps.iter().enumerate() {
        let dj = delta.map_subset(*jn).expect("diagram");
        if !is_min_double(wn, *jn, dj) {
            return fail(format!("w_{n} not in ^{{J_{n}}}W^{{δ(J_{n})}}"));
        }
        if n >= 1 {
            let (jp, wp) = &steps[n - 1];
            if *jn != next_subset(*jp, wp)? {
                return fail(format!("J_{n} breaks the intersection recursion"));
            }
            if !parabolic::in_parabolic(rs, &(wn * &wp.inverse()), *jp) {
                return fail(format!("w_{n} not in W_{{J_{}}} w_{}", n - 1, n - 1));
            }
        }
    }
    let (jm, wm) = &steps[seq.stable_index];
    // constant continuation (J_m, w_m) must itself satisfy the recursion
    if next_subset(*jm, wm)? != *jm {
        return fail("sequence is not stable at its last term".into());
    }
    let dj = delta.map_subset(j).expect("diagram");
    if !is_min_right(wm, dj) {
        return fail("limit not in W^{δ(J)}".into());
    }
    Ok(wm.clone())
}

/// One descriptor per `w ∈ W^{δ(J)}`, in (length, word) order of `w`.
pub fn enumerate_pieces(rs: &RootSystem, j: IndexSubset, delta: &RootAutomorphism) -> Result<Vec<PieceDescriptor>> {
    delta.check_system(rs)?;
    let perm = diagram_perm(delta)?;
    let reps = parabolic::enumerate_min_reps(rs, j.permuted(&perm), Side::Right)?;
    reps.into_par_iter()
        .map(|w| {
            let sequence = bedard_sequence(rs, j, delta, &w)?;
            let k = i_set(rs, j, delta, &w)?;
            if k != sequence.stable_subset() {
                return Err(Error::Contract(format!(
                    "stable J_m = {} but I(J, w, δ) = {k}",
                    sequence.stable_subset()
                )));
            }
            Ok(PieceDescriptor { j, w, k, sequence })
        })
        .collect()
}

/// One step `(J_n, w_n, u_n)` of the classifier iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyStep {
    pub j: IndexSubset,
    pub w: WeylElement,
    pub u: WeylElement,
}

/// Full record of a classifier run: `x = a δ(b)` and the iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyTrace {
    pub a: WeylElement,
    pub b: WeylElement,
    pub steps: Vec<ClassifyStep>,
}

impl ClassifyTrace {
    pub fn result(&self) -> &WeylElement {
        &self.steps.last().expect("nonempty trace").w
    }
}

/// The element `w ∈ W^{δ(J)}` whose piece contains `(x, 1)`; see [`classify_trace`].
pub fn classify(rs: &RootSystem, j: IndexSubset, delta: &RootAutomorphism, x: &WeylElement) -> Result<WeylElement> {
    Ok(classify_trace(rs, j, delta, x)?.result().clone())
}

/// Runs the classifier iteration.
///
/// Write `x = a δ(b)` with `a ∈ W^{δ(J)}`, `b ∈ W_J`; start from
/// `J_0 = J`, `w_0 = min(W_J a)`, `u_0 = b a w_0^{-1}`. Then
/// `J_n = J_{n-1} ∩ δ^{-1}(w_{n-1}^{-1} J_{n-1})`, factor
/// `u_{n-1} w_{n-1} = w'_n δ(u'_n)` with `w'_n ∈ W^{δ(J_n)}`, `u'_n ∈ W_{J_n}`,
/// and set `w_n = min(W_{J_n} w'_n)`, `u_n = u'_n w'_n w_n^{-1}`. Stops when
/// `(J_n, w_n)` repeats.
pub fn classify_trace(rs: &RootSystem, j: IndexSubset, delta: &RootAutomorphism, x: &WeylElement) -> Result<ClassifyTrace> {
    rs.check_element(x)?;
    delta.check_system(rs)?;
    let perm = diagram_perm(delta)?;
    let delta_inv = crate::rootsys::aut_inverse(rs, delta)?;

    let (a, c) = decompose_right(rs, x, j.permuted(&perm));
    let b = rs.apply_aut(&delta_inv, &c);
    let w0 = decompose_left(rs, &a, j).1;
    let u0 = &(&b * &a) * &w0.inverse();
    let mut steps = vec![ClassifyStep { j, w: w0, u: u0 }];

    let bound = 2 * x.length() + rs.rank() + 2;
    loop {
        let prev = steps.last().expect("nonempty");
        let jn = shrink(rs, &perm, prev.j, &prev.w);
        let (w_prime, c) = decompose_right(rs, &(&prev.u * &prev.w), jn.permuted(&perm));
        let u_prime = rs.apply_aut(&delta_inv, &c);
        let wn = decompose_left(rs, &w_prime, jn).1;
        let un = &(&u_prime * &w_prime) * &wn.inverse();
        let stable = jn == prev.j && wn == prev.w;
        steps.push(ClassifyStep { j: jn, w: wn, u: un });
        if stable {
            break;
        }
        if steps.len() > bound {
            return Err(Error::Internal(format!("classifier did not stabilize within {bound} iterations")));
        }
    }

    let last = steps.last().expect("nonempty");
    if !parabolic::in_parabolic(rs, &last.u, last.j) {
        return Err(Error::Contract("classifier: u_m not in W_{J_m}".into()));
    }
    if !is_min_right(&last.w, j.permuted(&perm)) {
        return Err(Error::Contract("classifier result not in W^{δ(J)}".into()));
    }
    Ok(ClassifyTrace { a, b, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, diagram_automorphisms};
    use crate::subset::Word;

    fn rs(s: &str) -> RootSystem {
        build_root_system(&s.parse().unwrap()).unwrap()
    }

    fn w(r: &RootSystem, labels: &[usize]) -> WeylElement {
        r.from_word(&Word::from_labels(labels)).unwrap()
    }

    fn set(l: &[usize]) -> IndexSubset {
        IndexSubset::from_indices(l.iter().map(|x| x - 1))
    }

    #[test]
    fn i_set_examples() {
        let a2 = rs("A2");
        let id = RootAutomorphism::identity(&a2);
        assert_eq!(i_set(&a2, set(&[1, 2]), &id, &a2.identity()).unwrap(), set(&[1, 2]));
        assert_eq!(i_set(&a2, set(&[1]), &id, &w(&a2, &[1, 2])).unwrap(), IndexSubset::EMPTY);
        assert_eq!(i_set(&a2, set(&[1]), &id, &a2.identity()).unwrap(), set(&[1]));
        // s2 s1 is not in W^{1}
        assert!(matches!(i_set(&a2, set(&[1]), &id, &w(&a2, &[2, 1])), Err(Error::Precondition(_))));
        let neg = RootAutomorphism::negation(&a2);
        assert!(matches!(i_set(&a2, set(&[1]), &neg, &a2.identity()), Err(Error::Precondition(_))));
    }

    #[test]
    fn i_set_with_flip() {
        let a3 = rs("A3");
        let flip = RootAutomorphism::diagram_flip(&a3).unwrap();
        assert_eq!(i_set(&a3, set(&[1, 3]), &flip, &a3.identity()).unwrap(), set(&[1, 3]));
        // δ = flip, J = {1}: e δ({1}) = {3} ⊄ {1}
        assert_eq!(i_set(&a3, set(&[1]), &flip, &a3.identity()).unwrap(), IndexSubset::EMPTY);
    }

    #[test]
    fn bedard_examples() {
        let a2 = rs("A2");
        let id = RootAutomorphism::identity(&a2);
        let seq = bedard_sequence(&a2, set(&[1]), &id, &w(&a2, &[1, 2])).unwrap();
        assert_eq!(
            seq.steps,
            vec![(set(&[1]), w(&a2, &[2])), (IndexSubset::EMPTY, w(&a2, &[1, 2]))]
        );
        assert_eq!(seq.stable_index, 1);

        let seq = bedard_sequence(&a2, set(&[1]), &id, &a2.identity()).unwrap();
        assert_eq!(seq.steps, vec![(set(&[1]), a2.identity())]);

        for r in [rs("A3"), rs("B2"), rs("A1xA1")] {
            let id = RootAutomorphism::identity(&r);
            for j in r.all_indices().subsets() {
                let seq = bedard_sequence(&r, j, &id, &r.identity()).unwrap();
                assert_eq!(seq.steps, vec![(j, r.identity())]);
            }
        }
    }

    #[test]
    fn bedard_identity_with_flip_is_largest_stable_subset() {
        let a3 = rs("A3");
        let flip = RootAutomorphism::diagram_flip(&a3).unwrap();
        let seq = bedard_sequence(&a3, set(&[1, 2]), &flip, &a3.identity()).unwrap();
        // δ({1,2}) = {2,3}; the largest δ-stable subset of {1,2} is {2}
        assert_eq!(seq.stable_subset(), set(&[2]));
        assert!(seq.limit().is_identity());
    }

    #[test]
    fn validator_rejects_tampered_sequences() {
        let a2 = rs("A2");
        let id = RootAutomorphism::identity(&a2);
        let good = bedard_sequence(&a2, set(&[1]), &id, &w(&a2, &[1, 2])).unwrap();
        let mut bad = good.clone();
        bad.steps[0].0 = set(&[2]);
        assert!(check_bedard_axioms(&a2, set(&[1]), &id, &bad).is_err());
        let mut bad = good.clone();
        bad.steps[0].1 = w(&a2, &[1, 2]);
        assert!(check_bedard_axioms(&a2, set(&[1]), &id, &bad).is_err());
        let truncated = BedardSequence { steps: good.steps[..1].to_vec(), stable_index: 0 };
        assert!(check_bedard_axioms(&a2, set(&[1]), &id, &truncated).is_err());
    }

    #[test]
    fn bedard_round_trip_and_stabilizer() {
        for s in ["A3", "B3", "G2", "A2xA2"] {
            let r = rs(s);
            for d in diagram_automorphisms(&r) {
                for j in r.all_indices().subsets() {
                    for p in enumerate_pieces(&r, j, &d).unwrap() {
                        assert_eq!(p.sequence.limit(), &p.w);
                        assert_eq!(p.k, p.sequence.stable_subset());
                        assert!(p.sequence.steps.len() <= r.rank() + 2);
                    }
                }
            }
        }
    }

    #[test]
    fn piece_counts() {
        let a2 = rs("A2");
        let id = RootAutomorphism::identity(&a2);
        let p = enumerate_pieces(&a2, set(&[1]), &id).unwrap();
        let ws: Vec<_> = p.iter().map(|d| d.w.clone()).collect();
        assert_eq!(ws, vec![a2.identity(), w(&a2, &[2]), w(&a2, &[1, 2])]);
        assert_eq!(enumerate_pieces(&a2, a2.all_indices(), &id).unwrap().len(), 1);
        let a3 = rs("A3");
        let flip = RootAutomorphism::diagram_flip(&a3).unwrap();
        assert_eq!(enumerate_pieces(&a3, set(&[1, 3]), &flip).unwrap().len(), 6);
    }

    #[test]
    fn classify_examples() {
        let a2 = rs("A2");
        let id = RootAutomorphism::identity(&a2);
        let t = classify_trace(&a2, set(&[1]), &id, &w(&a2, &[1])).unwrap();
        assert!(t.a.is_identity());
        assert_eq!(t.b, w(&a2, &[1]));
        assert_eq!(t.steps[0].u, w(&a2, &[1]));
        assert!(t.result().is_identity());
        for x in a2.enumerate_group().unwrap() {
            assert!(classify(&a2, a2.all_indices(), &id, &x).unwrap().is_identity());
        }
    }

    #[test]
    fn classify_fixes_min_reps_and_lands_in_quotient() {
        for s in ["A3", "B2", "G2", "A1xA1"] {
            let r = rs(s);
            let g = r.enumerate_group().unwrap();
            for d in diagram_automorphisms(&r) {
                let perm = d.simple_permutation().unwrap();
                for j in r.all_indices().subsets() {
                    let dj = j.permuted(&perm);
                    for x in &g {
                        let c = classify(&r, j, &d, x).unwrap();
                        assert!(is_min_right(&c, dj));
                        if is_min_right(x, dj) {
                            assert_eq!(&c, x, "{s} J={j}");
                        }
                    }
                }
            }
        }
    }
}
