//! Twisted involutions and the index set `W(J, σ, τ)` of pieces of a
//! symmetric-space compactification, with the distinguished element `u`.
//!
//! The group-level sets `J_{J,θ}` are not determined by the Weyl group, so
//! they come from a pluggable [`JOracle`]. The full mode is the set of all
//! twisted involutions of `W_J`, which contains every group-level set; with
//! it [`w_set`] gives an upper bound.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::parabolic::{self, Side};
use crate::pieces;
use crate::rootsys::{aut_compose, RootAutomorphism, RootSystem};
use crate::subset::IndexSubset;
use crate::weyl::WeylElement;

/// Involutions `σ`, `τ` of the root system whose product `δ = σ∘τ` is a
/// diagram automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionPair {
    pub sigma: RootAutomorphism,
    pub tau: RootAutomorphism,
    pub delta: RootAutomorphism,
}

impl InvolutionPair {
    pub fn new(rs: &RootSystem, sigma: RootAutomorphism, tau: RootAutomorphism) -> Result<Self> {
        sigma.check_system(rs)?;
        tau.check_system(rs)?;
        if sigma.order() > 2 || tau.order() > 2 {
            return Err(Error::Precondition("σ and τ must be involutions".into()));
        }
        let delta = aut_compose(rs, &sigma, &tau)?;
        if !delta.is_diagram() {
            return Err(Error::Precondition("σ∘τ must permute the simple roots".into()));
        }
        Ok(InvolutionPair { sigma, tau, delta })
    }
}

/// Source of the sets `J_{J,θ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JOracle {
    /// All twisted involutions of `W_J`.
    Full,
    /// Explicit elements per `J`. Each must be a twisted involution in `W_J`.
    Custom(BTreeMap<IndexSubset, Vec<WeylElement>>),
    /// `{(v, v^{-1}) : v ∈ W_{F,J_0}}` on `F × F` with the factor swap, for
    /// `J = (J_0, J_0)`.
    DoubledSwap,
}

impl JOracle {
    /// The set `J_{J,θ}` in (length, word) order.
    pub fn elements(&self, rs: &RootSystem, j: IndexSubset, theta: &RootAutomorphism) -> Result<Vec<WeylElement>> {
        let mut out = match self {
            JOracle::Full => return twisted_involutions(rs, theta, j),
            JOracle::Custom(map) => {
                let els = map
                    .get(&j)
                    .ok_or_else(|| Error::Precondition(format!("custom oracle has no entry for J = {j}")))?;
                for x in els {
                    rs.check_element(x)?;
                    if !parabolic::in_parabolic(rs, x, j) {
                        return Err(Error::Precondition(format!("custom oracle element {} not in W_J", rs.reduced_word(x))));
                    }
                    if rs.apply_aut(theta, x) != x.inverse() {
                        return Err(Error::Precondition(format!(
                            "custom oracle element {} is not a twisted involution",
                            rs.reduced_word(x)
                        )));
                    }
                }
                els.clone()
            }
            JOracle::DoubledSwap => {
                let h = rs
                    .self_product_half()
                    .ok_or_else(|| Error::Precondition("doubled oracle needs a self-product F × F".into()))?;
                let swap = RootAutomorphism::product_swap(rs)?;
                if *theta != swap {
                    return Err(Error::Precondition("doubled oracle needs θ = productSwap".into()));
                }
                let first = IndexSubset::from_indices(j.iter().filter(|&i| i < h));
                if first.permuted(&swap.simple_permutation().expect("diagram")) != j.difference(first) {
                    return Err(Error::Precondition(format!("doubled oracle needs J = (J0, J0), got {j}")));
                }
                parabolic::enumerate_parabolic(rs, first)?
                    .iter()
                    .map(|v| v * &rs.apply_aut(&swap, &v.inverse()))
                    .collect()
            }
        };
        rs.sort_elements(&mut out);
        Ok(out)
    }
}

/// The doubled-group oracle for `F × F`.
pub fn doubled_j_oracle(rs: &RootSystem) -> Result<JOracle> {
    rs.self_product_half()
        .ok_or_else(|| Error::Precondition(format!("{} is not a self-product", rs.label())))?;
    Ok(JOracle::DoubledSwap)
}

/// `{w ∈ W_J : θ(w) = w^{-1}}`.
pub fn twisted_involutions(rs: &RootSystem, theta: &RootAutomorphism, j: IndexSubset) -> Result<Vec<WeylElement>> {
    theta.check_system(rs)?;
    if theta.order() > 2 {
        return Err(Error::Precondition("θ must be an involution".into()));
    }
    Ok(parabolic::enumerate_parabolic(rs, j)?
        .into_iter()
        .filter(|w| rs.apply_aut(theta, w) == w.inverse())
        .collect())
}

/// A member `w` of `W(J, σ, τ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedSolution {
    pub w: WeylElement,
    /// `I(J, w, δ)`
    pub k: IndexSubset,
    /// `a ∈ J_{J,τ}` with `w δ(a) ∈ J_{I,σ}`.
    pub solutions: Vec<WeylElement>,
    /// The unique `u ∈ W_J` with `u τ(Phi_K^+) = Phi_K^+` in the `W_K`-coset
    /// of the solutions.
    pub u: WeylElement,
}

fn check_pair(rs: &RootSystem, j: IndexSubset, pair: &InvolutionPair) -> Result<()> {
    pair.sigma.check_system(rs)?;
    if !pair.tau.preserves_subsystem(rs, j) {
        return Err(Error::Precondition(format!("τ does not preserve Φ_J for J = {j}")));
    }
    Ok(())
}

/// `W(J, σ, τ)`: all `w ∈ W^{δ(J)}` with `w δ(u) ∈ J_{I,σ}` for some
/// `u ∈ J_{J,τ}`, in (length, word) order of `w`.
pub fn w_set(
    rs: &RootSystem,
    j: IndexSubset,
    pair: &InvolutionPair,
    j_big: &JOracle,
    j_small: &JOracle,
) -> Result<Vec<TwistedSolution>> {
    check_pair(rs, j, pair)?;
    let delta = &pair.delta;
    let dj = delta.map_subset(j).expect("diagram");
    let big: HashSet<WeylElement> = j_big.elements(rs, rs.all_indices(), &pair.sigma)?.into_iter().collect();
    let small = j_small.elements(rs, j, &pair.tau)?;
    let twisted_small: Vec<(WeylElement, WeylElement)> =
        small.into_iter().map(|a| (rs.apply_aut(delta, &a), a)).collect();
    let reps = parabolic::enumerate_min_reps(rs, dj, Side::Right)?;
    let out: Vec<Option<TwistedSolution>> = reps
        .par_iter()
        .map(|w| -> Result<Option<TwistedSolution>> {
            let solutions: Vec<WeylElement> = twisted_small
                .iter()
                .filter(|(da, _)| big.contains(&(w * da)))
                .map(|(_, a)| a.clone())
                .collect();
            if solutions.is_empty() {
                return Ok(None);
            }
            let k = pieces::i_set(rs, j, delta, w)?;
            let u = distinguished_u(rs, j, pair, w, &solutions)?;
            Ok(Some(TwistedSolution { w: w.clone(), k, solutions, u }))
        })
        .collect::<Result<_>>()?;
    Ok(out.into_iter().flatten().collect())
}

/// The distinguished element for `w` from a nonempty list of solutions `a`
/// of `σ(w) = δ(a)^{-1} w^{-1} a`.
///
/// Each `a` is factored as `b u` with `b ∈ W_K` and `u τ(Phi_K^+) ⊂ Phi^+`,
/// scanning all of `W_K`; `τ` acts on roots through its matrix. Fails with
/// a contract violation if some `a` does not stabilize `Phi_K` after `τ`,
/// if the factorization is not unique, if `u τ(Phi_K^+) ≠ Phi_K^+`, or if
/// different solutions give different `u`.
pub fn distinguished_u(
    rs: &RootSystem,
    j: IndexSubset,
    pair: &InvolutionPair,
    w: &WeylElement,
    solutions: &[WeylElement],
) -> Result<WeylElement> {
    let delta = &pair.delta;
    let tau = &pair.tau;
    if solutions.is_empty() {
        return Err(Error::Precondition("no solutions to pick from".into()));
    }
    let sw = rs.apply_aut(&pair.sigma, w);
    let winv = w.inverse();
    for a in solutions {
        if !parabolic::in_parabolic(rs, a, j) {
            return Err(Error::Precondition(format!("solution {} not in W_J", rs.reduced_word(a))));
        }
        if sw != &(&rs.apply_aut(delta, a).inverse() * &winv) * a {
            return Err(Error::Precondition(format!(
                "{} does not solve σ(w) = δ(a)^{{-1}} w^{{-1}} a",
                rs.reduced_word(a)
            )));
        }
    }
    let k = pieces::i_set(rs, j, delta, w)?;
    let phi_k: HashSet<usize> = parabolic::phi_subset(rs, k).into_iter().collect();
    let phi_k_pos: HashSet<usize> = parabolic::phi_subset_positive(rs, k).into_iter().collect();
    let tau_pos: Vec<usize> = parabolic::phi_subset_positive(rs, k).into_iter().map(|r| tau.apply(r)).collect();
    let wk = parabolic::enumerate_parabolic(rs, k)?;

    let mut chosen: Option<WeylElement> = None;
    for a in solutions {
        let image: HashSet<usize> = phi_k.iter().map(|&r| a.act(tau.apply(r))).collect();
        if image != phi_k {
            return Err(Error::Contract(format!(
                "solution {} does not map τ(Φ_K) onto Φ_K",
                rs.reduced_word(a)
            )));
        }
        let mut found = wk.iter().map(|b| &b.inverse() * a).filter(|u| tau_pos.iter().all(|&r| rs.is_positive(u.act(r))));
        let u = found
            .next()
            .ok_or_else(|| Error::Contract(format!("no factorization of {} over W_K", rs.reduced_word(a))))?;
        if found.next().is_some() {
            return Err(Error::Contract(format!("factorization of {} over W_K is not unique", rs.reduced_word(a))));
        }
        if tau_pos.iter().map(|&r| u.act(r)).collect::<HashSet<_>>() != phi_k_pos {
            return Err(Error::Contract("u τ(Φ_K^+) ≠ Φ_K^+".into()));
        }
        match &chosen {
            None => chosen = Some(u),
            Some(c) if *c == u => {}
            Some(c) => {
                return Err(Error::Contract(format!(
                    "distinguished element not unique: {} and {}",
                    rs.reduced_word(c),
                    rs.reduced_word(&u)
                )))
            }
        }
    }
    Ok(chosen.expect("nonempty"))
}

/// `ρ` on `K` with `w(δ(alpha_j)) = alpha_{ρ(j)}`, as `(j, ρ(j))` pairs in
/// increasing `j`.
pub fn twist_perm(
    rs: &RootSystem,
    w: &WeylElement,
    delta: &RootAutomorphism,
    k: IndexSubset,
) -> Result<Vec<(usize, usize)>> {
    rs.check_element(w)?;
    delta.check_system(rs)?;
    k.iter()
        .map(|j| {
            let t = w.act(delta.apply(j));
            if t < rs.rank() && k.contains(t) {
                Ok((j, t))
            } else {
                Err(Error::Precondition(format!("w δ(K) ≠ K for K = {k}")))
            }
        })
        .collect()
}

/// Named involutions available on `rs`: `id`, `neg`, `flip`, `productSwap`
/// and the negatives of the last two, skipping those that do not apply.
pub fn builtin_involutions(rs: &RootSystem) -> Vec<(String, RootAutomorphism)> {
    let neg = RootAutomorphism::negation(rs);
    let mut out = vec![("id".to_string(), RootAutomorphism::identity(rs)), ("neg".to_string(), neg.clone())];
    for (name, aut) in [
        ("flip", RootAutomorphism::diagram_flip(rs)),
        ("productSwap", RootAutomorphism::product_swap(rs)),
    ] {
        if let Ok(a) = aut {
            let negated = aut_compose(rs, &neg, &a).expect("same system");
            out.push((name.to_string(), a));
            out.push((format!("neg*{name}"), negated));
        }
    }
    out
}
