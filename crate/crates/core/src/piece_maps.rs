//! The inverse map on pieces: `ε_{J,δ}: W^{δ(J)} → W^J` through the dual
//! sequence, its scan characterization, and the involution `℘`.

use crate::error::{Error, Result};
use crate::parabolic::{self, is_min_right};
use crate::pieces::{self, check_bedard_axioms, BedardSequence};
use crate::rootsys::{aut_compose, aut_inverse, aut_power, RootAutomorphism, RootSystem};
use crate::subset::IndexSubset;
use crate::weyl::WeylElement;

/// The sequence `(K_n, v_n)` attached to a Bédard sequence `(J_n, w_n)`:
///
/// * `K_0 = δ(J)`, `v_0 = w_0^{-1}`,
/// * `K_n = K_{n-1} ∩ δ(v_{n-1}^{-1} K_{n-1})`,
/// * `v_n = P_n^{-1} δ^n(w_n^{-1}) Q_n`, where `Q_n = δ^{n-1}(v_0) ⋯ v_{n-1}`
///   and `P_n = δ(Q_n)`.
///
/// It lies in `T(δ(J), δ^{-1})`, and its limit is `ε_{J,δ}(w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSequence {
    pub steps: Vec<(IndexSubset, WeylElement)>,
    /// `Q_n` for each step.
    pub q: Vec<WeylElement>,
    /// `P_n = δ(Q_n)` for each step.
    pub p: Vec<WeylElement>,
    pub stable_index: usize,
}

impl DualSequence {
    pub fn limit(&self) -> &WeylElement {
        &self.steps[self.stable_index].1
    }

    pub fn as_bedard(&self) -> BedardSequence {
        BedardSequence { steps: self.steps.clone(), stable_index: self.stable_index }
    }
}

/// `v = δ(x)^{-1} w^{-1} x` with `x ∈ W_J` and `v ∈ W^J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonCertificate {
    pub w: WeylElement,
    pub v: WeylElement,
    pub x: WeylElement,
}

/// `ε_{J,δ}(w)` via the dual sequence. The dual sequence is re-validated as a
/// member of `T(δ(J), δ^{-1})` before returning.
pub fn epsilon(
    rs: &RootSystem,
    j: IndexSubset,
    delta: &RootAutomorphism,
    w: &WeylElement,
) -> Result<(WeylElement, DualSequence)> {
    let bedard = pieces::bedard_sequence(rs, j, delta, w)?;
    let delta_inv = aut_inverse(rs, delta)?;
    let k0 = delta.map_subset(j).expect("checked diagram");
    let m = bedard.stable_index;
    let w_at = |n: usize| &bedard.steps[n.min(m)].1;

    let mut steps = vec![(k0, w_at(0).inverse())];
    let mut q = vec![rs.identity()];
    let mut p = vec![rs.identity()];
    let mut power = RootAutomorphism::identity(rs);

    let bound = m + rs.rank() + 3;
    loop {
        let n = steps.len();
        power = aut_compose(rs, delta, &power)?;
        let (k_prev, v_prev) = steps[n - 1].clone();
        let qn = &rs.apply_aut(delta, &q[n - 1]) * &v_prev;
        let pn = rs.apply_aut(delta, &qn);
        let moved = parabolic::transport(rs, &v_prev.inverse(), k_prev);
        let kn = k_prev.intersection(delta.map_subset(moved).expect("diagram"));
        let vn = &(&pn.inverse() * &rs.apply_aut(&power, &w_at(n).inverse())) * &qn;

        let repeat = kn == k_prev && vn == v_prev;
        if repeat && n > m {
            break;
        }
        steps.push((kn, vn));
        q.push(qn);
        p.push(pn);
        if steps.len() > bound {
            return Err(Error::Internal(format!("dual sequence did not stabilize within {bound} steps")));
        }
    }

    let seq = DualSequence { stable_index: steps.len() - 1, steps, q, p };
    let v = check_bedard_axioms(rs, k0, &delta_inv, &seq.as_bedard())?;
    if !is_min_right(&v, j) {
        return Err(Error::Contract("ε(w) not in W^J".into()));
    }
    Ok((v, seq))
}

/// `ε_{J,δ}(w)` as the unique element of `W^J` of the form
/// `δ(x)^{-1} w^{-1} x` with `x ∈ W_J`, found by scanning `W_J`.
pub fn epsilon_oracle(
    rs: &RootSystem,
    j: IndexSubset,
    delta: &RootAutomorphism,
    w: &WeylElement,
) -> Result<EpsilonCertificate> {
    rs.check_element(w)?;
    delta.check_system(rs)?;
    let perm = pieces::diagram_perm(delta)?;
    if !is_min_right(w, j.permuted(&perm)) {
        return Err(Error::Precondition("w not in W^{δ(J)}".into()));
    }
    let winv = w.inverse();
    let mut found: Option<EpsilonCertificate> = None;
    for x in parabolic::enumerate_parabolic(rs, j)? {
        let cand = &(&rs.apply_aut(delta, &x).inverse() * &winv) * &x;
        if !is_min_right(&cand, j) {
            continue;
        }
        match &found {
            None => found = Some(EpsilonCertificate { w: w.clone(), v: cand, x }),
            Some(c) if c.v == cand => {}
            Some(_) => {
                return Err(Error::Contract("more than one element of W^J of the form δ(x)^{-1} w^{-1} x".into()))
            }
        }
    }
    found.ok_or_else(|| Error::Contract("no element of W^J of the form δ(x)^{-1} w^{-1} x".into()))
}

/// Options for [`wp`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WpConfig {
    /// Reject σ unless it maps `Phi_J` onto `Phi_{δ(J)}`, the word-level
    /// shadow of `σ(P_J)` being conjugate to `P_{δ(J)}` with trivial `y`.
    pub require_levi_match: bool,
}

impl Default for WpConfig {
    fn default() -> Self {
        WpConfig { require_levi_match: true }
    }
}

/// Checks the word-level preconditions of `℘` for `(J, δ, σ)`.
pub fn check_wp_config(
    rs: &RootSystem,
    j: IndexSubset,
    delta: &RootAutomorphism,
    sigma: &RootAutomorphism,
    cfg: WpConfig,
) -> Result<()> {
    delta.check_system(rs)?;
    sigma.check_system(rs)?;
    pieces::diagram_perm(delta)?;
    if sigma.order() > 2 {
        return Err(Error::Precondition("σ must be an involution".into()));
    }
    let conj = aut_compose(rs, sigma, &aut_compose(rs, delta, sigma)?)?;
    if conj != aut_inverse(rs, delta)? {
        return Err(Error::Precondition("σ δ σ ≠ δ^{-1}".into()));
    }
    let dj = delta.map_subset(j).expect("diagram");
    if cfg.require_levi_match && !sigma.maps_subsystem(rs, j, dj) {
        return Err(Error::Precondition(format!("σ does not map Φ_J onto Φ_δ(J) for J = {j}")));
    }
    Ok(())
}

fn wp_raw(rs: &RootSystem, j: IndexSubset, delta: &RootAutomorphism, sigma: &RootAutomorphism, w: &WeylElement) -> Result<WeylElement> {
    pieces::classify(rs, j, delta, &rs.apply_aut(sigma, w).inverse())
}

/// `℘(w)`: the piece index of `σ(w)^{-1}` under the classifier.
/// Fails with a contract violation if `℘(℘(w)) ≠ w`.
pub fn wp(
    rs: &RootSystem,
    j: IndexSubset,
    delta: &RootAutomorphism,
    sigma: &RootAutomorphism,
    w: &WeylElement,
    cfg: WpConfig,
) -> Result<WeylElement> {
    check_wp_config(rs, j, delta, sigma, cfg)?;
    rs.check_element(w)?;
    let perm = pieces::diagram_perm(delta)?;
    if !is_min_right(w, j.permuted(&perm)) {
        return Err(Error::Precondition("w not in W^{δ(J)}".into()));
    }
    let image = wp_raw(rs, j, delta, sigma, w)?;
    let back = wp_raw(rs, j, delta, sigma, &image)?;
    if back != *w {
        return Err(Error::Contract(format!(
            "℘ is not involutive: ℘(℘({:?})) = {:?}",
            rs.reduced_word(w),
            rs.reduced_word(&back)
        )));
    }
    Ok(image)
}

/// `(w, ℘(w))` for every `w ∈ W^{δ(J)}`.
pub fn wp_table(
    rs: &RootSystem,
    j: IndexSubset,
    delta: &RootAutomorphism,
    sigma: &RootAutomorphism,
    cfg: WpConfig,
) -> Result<Vec<(WeylElement, WeylElement)>> {
    let perm = pieces::diagram_perm(delta)?;
    parabolic::enumerate_min_reps(rs, j.permuted(&perm), parabolic::Side::Right)?
        .into_iter()
        .map(|w| {
            let v = wp(rs, j, delta, sigma, &w, cfg)?;
            Ok((w, v))
        })
        .collect()
}

/// `δ^n` for `n ≥ 0`, as used by the dual sequence.
pub fn delta_power(rs: &RootSystem, delta: &RootAutomorphism, n: i64) -> Result<RootAutomorphism> {
    aut_power(rs, delta, n)
}
