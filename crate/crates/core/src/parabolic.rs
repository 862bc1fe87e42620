//! Parabolic subgroups `W_J`, minimal coset representatives, and the
//! root subsystems `Phi_J`.
//!
//! Membership in `W^J` is tested by root positivity: `x` is minimal in
//! `x W_J` iff `x(alpha_j) > 0` for every `j` in `J`. The coset-scanning
//! versions live in [`crate::oracle`].

use std::collections::HashSet;

use crate::error::Result;
use crate::rootsys::RootSystem;
use crate::subset::IndexSubset;
use crate::weyl::WeylElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `W^J`: minimal in `w W_J`.
    Right,
    /// `^J W`: minimal in `W_J w`.
    Left,
}

/// `x` minimal in `x W_J`.
pub fn is_min_right(w: &WeylElement, j: IndexSubset) -> bool {
    j.iter().all(|i| !w.has_right_descent(i))
}

/// `x` minimal in `W_J x`.
pub fn is_min_left(w: &WeylElement, j: IndexSubset) -> bool {
    j.iter().all(|i| !w.has_left_descent(i))
}

/// `x` in `^J W^K`.
pub fn is_min_double(w: &WeylElement, j: IndexSubset, k: IndexSubset) -> bool {
    is_min_left(w, j) && is_min_right(w, k)
}

/// Writes `w = x * y` with `x` in `W^J`, `y` in `W_J`, lengths adding.
pub fn decompose_right(rs: &RootSystem, w: &WeylElement, j: IndexSubset) -> (WeylElement, WeylElement) {
    let mut x = w.clone();
    let mut y = rs.identity();
    while let Some(i) = j.iter().find(|&i| x.has_right_descent(i)) {
        x = rs.mul_simple_right(&x, i);
        y = rs.mul_simple_left(i, &y);
    }
    (x, y)
}

/// Writes `w = y * x` with `y` in `W_J`, `x` in `^J W`, lengths adding.
pub fn decompose_left(rs: &RootSystem, w: &WeylElement, j: IndexSubset) -> (WeylElement, WeylElement) {
    let mut x = w.clone();
    let mut y = rs.identity();
    loop {
        let inv = x.inverse();
        match j.iter().find(|&i| inv.has_right_descent(i)) {
            Some(i) => {
                x = rs.mul_simple_left(i, &x);
                y = rs.mul_simple_right(&y, i);
            }
            None => return (y, x),
        }
    }
}

/// `min(W_J w)`
pub fn min_left(rs: &RootSystem, w: &WeylElement, j: IndexSubset) -> WeylElement {
    decompose_left(rs, w, j).1
}

/// `min(w W_J)`
pub fn min_right(rs: &RootSystem, w: &WeylElement, j: IndexSubset) -> WeylElement {
    decompose_right(rs, w, j).0
}

/// `w` in `W_J`, via the support of `w`.
pub fn in_parabolic(rs: &RootSystem, w: &WeylElement, j: IndexSubset) -> bool {
    rs.support(w).is_subset(j)
}

/// The parabolic subgroup `W_J`, in (length, word) order.
pub fn enumerate_parabolic(rs: &RootSystem, j: IndexSubset) -> Result<Vec<WeylElement>> {
    rs.enumerate_generated(j)
}

/// Minimal coset representatives, in (length, word) order.
///
/// `W^J` is closed under removing left descents, so it is generated from the
/// identity by left multiplication by simple reflections that raise length
/// and stay inside `W^J`. `^J W` is the image under inversion.
pub fn enumerate_min_reps(rs: &RootSystem, j: IndexSubset, side: Side) -> Result<Vec<WeylElement>> {
    let mut out = vec![rs.identity()];
    let mut frontier = vec![rs.identity()];
    let mut seen: HashSet<WeylElement> = frontier.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..rs.rank() {
                if w.has_left_descent(i) {
                    continue;
                }
                let v = rs.mul_simple_left(i, w);
                if is_min_right(&v, j) && seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        if seen.len() as u64 > rs.guard() {
            return Err(crate::error::Error::Guard { size: seen.len() as u128, limit: rs.guard() });
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    if side == Side::Left {
        for w in out.iter_mut() {
            *w = w.inverse();
        }
    }
    rs.sort_elements(&mut out);
    Ok(out)
}

/// `^J W^K`, in (length, word) order.
pub fn enumerate_double_reps(rs: &RootSystem, j: IndexSubset, k: IndexSubset) -> Result<Vec<WeylElement>> {
    Ok(enumerate_min_reps(rs, k, Side::Right)?
        .into_iter()
        .filter(|w| is_min_left(w, j))
        .collect())
}

/// Root indices of `Phi_J`: roots whose support lies in `J`.
pub fn phi_subset(rs: &RootSystem, j: IndexSubset) -> Vec<usize> {
    (0..rs.roots().len()).filter(|&k| rs.root_support(k).is_subset(j)).collect()
}

/// Root indices of `Phi_J^+`.
pub fn phi_subset_positive(rs: &RootSystem, j: IndexSubset) -> Vec<usize> {
    (0..rs.num_positive()).filter(|&k| rs.root_support(k).is_subset(j)).collect()
}

/// `{i : w(alpha_k) = alpha_i for some k in K}`. Images that are not simple
/// roots are dropped.
pub fn transport(rs: &RootSystem, w: &WeylElement, k: IndexSubset) -> IndexSubset {
    IndexSubset::from_indices(k.iter().map(|i| w.act(i)).filter(|&t| t < rs.rank()))
}
