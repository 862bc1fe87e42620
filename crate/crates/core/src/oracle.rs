//! Naive reference implementations.
//!
//! Everything here works from the whole group and from lengths, words and
//! root images only. Nothing calls into `parabolic`, `pieces`, `piece_maps`
//! or the enumeration in `twisted`, so agreement with those modules is a real
//! cross-check.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{RootAutomorphism, RootSystem};
use crate::subset::{IndexSubset, Word};
use crate::twisted::{InvolutionPair, JOracle};
use crate::weyl::WeylElement;

/// Which coset side [`brute_min_reps`] minimizes over.
pub use crate::parabolic::Side;

/// Called with the number of outer items processed so far.
pub type Progress<'a> = &'a dyn Fn(u64);

pub fn no_progress(_: u64) {}

/// Findings of an exhaustive scan.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub checked: u64,
    pub counterexamples: Vec<BTreeMap<String, Word>>,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn letters_within(rs: &RootSystem, w: &WeylElement, j: IndexSubset) -> bool {
    rs.reduced_word(w).letters().iter().all(|&l| j.contains(l))
}

/// `W_J` as a filter of the whole group by the letters of reduced words.
fn brute_parabolic(rs: &RootSystem, group: &[WeylElement], j: IndexSubset) -> Vec<WeylElement> {
    group.iter().filter(|w| letters_within(rs, w, j)).cloned().collect()
}

/// Minimal coset representatives by listing every coset of `W_J` and taking
/// its shortest element.
pub fn brute_min_reps(rs: &RootSystem, j: IndexSubset, side: Side) -> Result<Vec<WeylElement>> {
    let group = rs.enumerate_group()?;
    let wj = brute_parabolic(rs, &group, j);
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut out = Vec::new();
    for w in &group {
        if seen.contains(w) {
            continue;
        }
        let coset: Vec<WeylElement> = wj
            .iter()
            .map(|y| match side {
                Side::Right => w * y,
                Side::Left => y * w,
            })
            .collect();
        let shortest = coset.iter().map(|x| x.length()).min().expect("nonempty");
        let minimal: Vec<&WeylElement> = coset.iter().filter(|x| x.length() == shortest).collect();
        if minimal.len() != 1 {
            return Err(Error::Contract("coset with more than one shortest element".into()));
        }
        out.push(minimal[0].clone());
        seen.extend(coset);
    }
    rs.sort_elements(&mut out);
    Ok(out)
}

/// `w` in `W^J`, via lengths: no `s_j` with `j ∈ J` shortens `w` on the right.
fn brute_is_min_right(rs: &RootSystem, w: &WeylElement, j: IndexSubset) -> bool {
    j.iter().all(|i| rs.mul_simple_right(w, i).length() > w.length())
}

/// Whether `w δ(K) = K` as sets of simple roots.
fn stabilizes(rs: &RootSystem, w: &WeylElement, delta: &RootAutomorphism, k: IndexSubset) -> bool {
    let image: HashSet<Vec<i32>> = k
        .iter()
        .map(|i| rs.act_on_root(w, &delta.apply_root(rs, rs.root(i)).expect("root")).expect("root"))
        .collect();
    let target: HashSet<Vec<i32>> = k.iter().map(|i| rs.root(i).clone()).collect();
    image == target
}

/// `max{K ⊆ J : w δ(K) = K}` by scanning every subset of `J`. The qualifying
/// subsets are checked to be closed under union.
pub fn brute_i_set(rs: &RootSystem, j: IndexSubset, delta: &RootAutomorphism, w: &WeylElement) -> Result<IndexSubset> {
    if j.len() > 20 {
        return Err(Error::Precondition("subset scan limited to |J| ≤ 20".into()));
    }
    delta.check_system(rs)?;
    rs.check_element(w)?;
    if !delta.is_diagram() {
        return Err(Error::Precondition("δ must be a diagram automorphism".into()));
    }
    let good: Vec<IndexSubset> = j.subsets().filter(|&k| stabilizes(rs, w, delta, k)).collect();
    let set: HashSet<IndexSubset> = good.iter().copied().collect();
    for a in &good {
        for b in &good {
            if !set.contains(&a.union(*b)) {
                return Err(Error::Contract(format!("union of {a} and {b} does not qualify")));
            }
        }
    }
    Ok(good.into_iter().max_by_key(|k| k.len()).expect("the empty set qualifies"))
}

/// The unique element of `W^J` of the form `δ(x)^{-1} w^{-1} x`, `x ∈ W_J`.
pub fn brute_epsilon(rs: &RootSystem, j: IndexSubset, delta: &RootAutomorphism, w: &WeylElement) -> Result<WeylElement> {
    delta.check_system(rs)?;
    rs.check_element(w)?;
    let group = rs.enumerate_group()?;
    let winv = w.inverse();
    let found: HashSet<WeylElement> = brute_parabolic(rs, &group, j)
        .iter()
        .map(|x| &(&rs.apply_aut(delta, x).inverse() * &winv) * x)
        .filter(|v| brute_is_min_right(rs, v, j))
        .collect();
    if found.len() != 1 {
        return Err(Error::Contract(format!("{} candidates for ε(w) in W^J", found.len())));
    }
    Ok(found.into_iter().next().expect("one"))
}

fn brute_oracle_set(
    rs: &RootSystem,
    group: &[WeylElement],
    oracle: &JOracle,
    j: IndexSubset,
    theta: &RootAutomorphism,
) -> Result<HashSet<WeylElement>> {
    Ok(match oracle {
        JOracle::Full => brute_parabolic(rs, group, j)
            .into_iter()
            .filter(|w| rs.apply_aut(theta, w) == w.inverse())
            .collect(),
        other => other.elements(rs, j, theta)?.into_iter().collect(),
    })
}

/// `W(J, σ, τ)` straight from its definition, scanning `W^{δ(J)} × J_{J,τ}`.
pub fn brute_w_set(
    rs: &RootSystem,
    j: IndexSubset,
    pair: &InvolutionPair,
    j_big: &JOracle,
    j_small: &JOracle,
) -> Result<Vec<WeylElement>> {
    let group = rs.enumerate_group()?;
    let big = brute_oracle_set(rs, &group, j_big, rs.all_indices(), &pair.sigma)?;
    let small = brute_oracle_set(rs, &group, j_small, j, &pair.tau)?;
    let dj = pair.delta.map_subset(j).expect("diagram");
    let mut out: Vec<WeylElement> = group
        .iter()
        .filter(|w| brute_is_min_right(rs, w, dj))
        .filter(|w| small.iter().any(|u| big.contains(&(*w * &rs.apply_aut(&pair.delta, u)))))
        .cloned()
        .collect();
    rs.sort_elements(&mut out);
    Ok(out)
}

fn record(rs: &RootSystem, items: &[(&str, &WeylElement)]) -> BTreeMap<String, Word> {
    items.iter().map(|(k, w)| (k.to_string(), rs.reduced_word(w))).collect()
}

/// For `w, x ∈ W^{δ(J)}`, `u ∈ W_J`, `v ∈ W_{δ(J)}` with
/// `supp(v) = δ(supp(u))` and `w v = u x`, checks `u ∈ W_{I(J,w,δ)}`.
pub fn scan_intertwiner_support(
    rs: &RootSystem,
    j: IndexSubset,
    delta: &RootAutomorphism,
    progress: Progress,
) -> Result<ScanReport> {
    delta.check_system(rs)?;
    let dj = delta
        .map_subset(j)
        .ok_or_else(|| Error::Precondition("δ must be a diagram automorphism".into()))?;
    let group = rs.enumerate_group()?;
    let wj = brute_parabolic(rs, &group, j);
    let wdj = brute_parabolic(rs, &group, dj);
    let reps: Vec<&WeylElement> = group.iter().filter(|w| brute_is_min_right(rs, w, dj)).collect();
    let support = |x: &WeylElement| IndexSubset::from_indices(rs.reduced_word(x).letters().iter().copied());
    let mut by_support: HashMap<IndexSubset, Vec<&WeylElement>> = HashMap::new();
    for v in &wdj {
        by_support.entry(support(v)).or_default().push(v);
    }
    let mut report = ScanReport::default();
    for (n, w) in reps.iter().enumerate() {
        let k = brute_i_set(rs, j, delta, w)?;
        for u in &wj {
            let target = delta.map_subset(support(u)).expect("diagram");
            let uinv = u.inverse();
            for v in by_support.get(&target).into_iter().flatten() {
                let x = &(&uinv * w) * v;
                if !brute_is_min_right(rs, &x, dj) {
                    continue;
                }
                report.checked += 1;
                if !letters_within(rs, u, k) {
                    report.counterexamples.push(record(rs, &[("w", w), ("u", u), ("v", v), ("x", &x)]));
                }
            }
        }
        progress(n as u64 + 1);
    }
    Ok(report)
}

/// For `w ∈ W^{δ(J)}` and every `a ∈ W_J` with `σ(w) = δ(a)^{-1} w^{-1} a`,
/// checks `a τ(Phi_K) = Phi_K` with `K = I(J, w, δ)`.
pub fn scan_solution_levi_stability(
    rs: &RootSystem,
    j: IndexSubset,
    pair: &InvolutionPair,
    progress: Progress,
) -> Result<ScanReport> {
    let delta = &pair.delta;
    let dj = delta.map_subset(j).expect("diagram");
    let group = rs.enumerate_group()?;
    let wj = brute_parabolic(rs, &group, j);
    let mut report = ScanReport::default();
    for (n, w) in group.iter().filter(|w| brute_is_min_right(rs, w, dj)).enumerate() {
        let k = brute_i_set(rs, j, delta, w)?;
        let phi_k: HashSet<Vec<i32>> = rs
            .roots()
            .iter()
            .filter(|r| r.iter().enumerate().all(|(i, &c)| c == 0 || k.contains(i)))
            .cloned()
            .collect();
        let sw = rs.apply_aut(&pair.sigma, w);
        let winv = w.inverse();
        for a in &wj {
            if sw != &(&rs.apply_aut(delta, a).inverse() * &winv) * a {
                continue;
            }
            report.checked += 1;
            let image: HashSet<Vec<i32>> = phi_k
                .iter()
                .map(|r| rs.act_on_root(a, &pair.tau.apply_root(rs, r).expect("root")).expect("root"))
                .collect();
            if image != phi_k {
                report.counterexamples.push(record(rs, &[("w", w), ("a", a)]));
            }
        }
        progress(n as u64 + 1);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, diagram_automorphisms};

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
    fn min_reps_examples() {
        let a2 = rs("A2");
        assert_eq!(
            brute_min_reps(&a2, set(&[1]), Side::Right).unwrap(),
            vec![a2.identity(), w(&a2, &[2]), w(&a2, &[1, 2])]
        );
        assert_eq!(brute_min_reps(&a2, a2.all_indices(), Side::Left).unwrap(), vec![a2.identity()]);
        assert_eq!(brute_min_reps(&a2, IndexSubset::EMPTY, Side::Right).unwrap().len(), 6);
    }

    #[test]
    fn i_set_examples() {
        let a2 = rs("A2");
        let id = RootAutomorphism::identity(&a2);
        assert_eq!(brute_i_set(&a2, set(&[1]), &id, &w(&a2, &[1, 2])).unwrap(), IndexSubset::EMPTY);
        assert_eq!(brute_i_set(&a2, set(&[1, 2]), &id, &a2.identity()).unwrap(), set(&[1, 2]));
        let a3 = rs("A3");
        let flip = RootAutomorphism::diagram_flip(&a3).unwrap();
        assert_eq!(brute_i_set(&a3, set(&[1, 3]), &flip, &a3.identity()).unwrap(), set(&[1, 3]));
    }

    #[test]
    fn epsilon_examples() {
        let a2 = rs("A2");
        let id = RootAutomorphism::identity(&a2);
        for word in [&[][..], &[2], &[1, 2]] {
            let x = w(&a2, word);
            assert_eq!(brute_epsilon(&a2, set(&[1]), &id, &x).unwrap(), x);
        }
    }

    #[test]
    fn w_set_examples() {
        let a2 = rs("A2");
        let neg = RootAutomorphism::negation(&a2);
        let pair = InvolutionPair::new(&a2, neg.clone(), neg).unwrap();
        assert_eq!(
            brute_w_set(&a2, set(&[1]), &pair, &JOracle::Full, &JOracle::Full).unwrap(),
            vec![a2.identity(), w(&a2, &[2]), w(&a2, &[1, 2])]
        );
        let d = rs("A1xA1");
        let swap = RootAutomorphism::product_swap(&d).unwrap();
        let pair = InvolutionPair::new(&d, swap.clone(), swap).unwrap();
        let o = JOracle::DoubledSwap;
        let got = brute_w_set(&d, IndexSubset::EMPTY, &pair, &o, &o).unwrap();
        assert_eq!(got, vec![d.identity(), w(&d, &[1, 2])]);
    }

    #[test]
    fn intertwiner_scan_is_clean() {
        for s in ["A1", "A2", "B2"] {
            let r = rs(s);
            for d in diagram_automorphisms(&r) {
                for j in r.all_indices().subsets() {
                    let report = scan_intertwiner_support(&r, j, &d, &no_progress).unwrap();
                    assert!(report.is_clean(), "{s} {j}: {:?}", report.counterexamples);
                    assert!(report.checked > 0);
                }
            }
        }
    }

    #[test]
    fn progress_is_reported() {
        let a2 = rs("A2");
        let id = RootAutomorphism::identity(&a2);
        let last = std::cell::Cell::new(0);
        scan_intertwiner_support(&a2, set(&[1]), &id, &|n| last.set(n)).unwrap();
        assert_eq!(last.get(), 3);
    }

    #[test]
    fn levi_stability_scan_a2() {
        let a2 = rs("A2");
        let neg = RootAutomorphism::negation(&a2);
        let pair = InvolutionPair::new(&a2, neg.clone(), neg).unwrap();
        for j in a2.all_indices().subsets() {
            let report = scan_solution_levi_stability(&a2, j, &pair, &no_progress).unwrap();
            assert!(report.is_clean());
        }
    }
}
