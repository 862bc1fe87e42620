//! Property suites run by `weylpieces selftest`.
//!
//! Each property walks one root system exhaustively (every `J`, every diagram
//! automorphism, the built-in involutions) and returns the number of checks
//! it made. A failed check is a contract violation.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{self, no_progress};
use crate::parabolic::{self, Side};
use crate::piece_maps::{self, WpConfig};
use crate::pieces;
use crate::report::FORMAT_VERSION;
use crate::rootsys::{aut_inverse, diagram_automorphisms, RootAutomorphism, RootSystem};
use crate::subset::{IndexSubset, Word};
use crate::twisted::{self, InvolutionPair, JOracle};
use crate::weyl::WeylElement;

/// Systems larger than this skip the quadruple scans.
const SCAN_LIMIT: u128 = 48;

type Property = fn(&RootSystem) -> Result<u64>;

pub const PROPERTIES: &[(&str, Property)] = &[
    ("group_order", group_order),
    ("min_reps_match_oracle", min_reps_match_oracle),
    ("coset_counting", coset_counting),
    ("i_set_matches_oracle", i_set_matches_oracle),
    ("bedard_round_trip", bedard_round_trip),
    ("pieces_cover_quotient", pieces_cover_quotient),
    ("epsilon_involutive", epsilon_involutive),
    ("epsilon_matches_scans", epsilon_matches_scans),
    ("dual_sequence_certified", dual_sequence_certified),
    ("classify_retraction", classify_retraction),
    ("wp_involutive", wp_involutive),
    ("intertwiner_support_scan", intertwiner_support_scan),
    ("solution_levi_stability_scan", solution_levi_stability_scan),
    ("distinguished_element_unique", distinguished_element_unique),
    ("w_set_matches_oracle", w_set_matches_oracle),
    ("doubled_group_epsilon_graph", doubled_group_epsilon_graph),
];

#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub checks: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub version: String,
    pub systems: Vec<String>,
    pub properties: Vec<PropertyResult>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

/// Runs every property over every system. Guard and input errors abort the
/// run; contract violations are recorded per property.
pub fn run(systems: &[RootSystem]) -> Result<SelftestReport> {
    let mut properties = Vec::new();
    for (name, prop) in PROPERTIES {
        let mut res = PropertyResult { name: name.to_string(), checks: 0, passed: true, failure: None };
        for rs in systems {
            match prop(rs) {
                Ok(n) => res.checks += n,
                Err(e @ (Error::Contract(_) | Error::Internal(_))) => {
                    res.passed = false;
                    res.failure = Some(format!("{}: {e}", rs.label()));
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        properties.push(res);
    }
    let first_failure = properties.iter().find(|p| !p.passed).map(|p| p.name.clone());
    Ok(SelftestReport {
        version: FORMAT_VERSION.to_string(),
        systems: systems.iter().map(|r| r.label().to_string()).collect(),
        passed: first_failure.is_none(),
        first_failure,
        properties,
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Contract(msg()))
    }
}

fn word(rs: &RootSystem, w: &WeylElement) -> Word {
    rs.reduced_word(w)
}

/// Calls `f` for every diagram automorphism and every `J`.
fn for_each_config(rs: &RootSystem, mut f: impl FnMut(&RootAutomorphism, IndexSubset) -> Result<u64>) -> Result<u64> {
    let mut n = 0;
    for d in diagram_automorphisms(rs) {
        for j in rs.all_indices().subsets() {
            n += f(&d, j)?;
        }
    }
    Ok(n)
}

fn quotient(rs: &RootSystem, d: &RootAutomorphism, j: IndexSubset) -> Result<Vec<WeylElement>> {
    parabolic::enumerate_min_reps(rs, d.map_subset(j).expect("diagram"), Side::Right)
}

fn group_order(rs: &RootSystem) -> Result<u64> {
    let g = rs.enumerate_group()?;
    let expect = rs.weyl_order();
    ensure(expect.is_none_or(|o| o == g.len() as u128), || format!("|W| = {} vs {expect:?}", g.len()))?;
    let set: HashSet<&WeylElement> = g.iter().collect();
    ensure(set.len() == g.len(), || "duplicate group elements".into())?;
    Ok(1)
}

fn min_reps_match_oracle(rs: &RootSystem) -> Result<u64> {
    let mut n = 0;
    for j in rs.all_indices().subsets() {
        for side in [Side::Right, Side::Left] {
            let fast = parabolic::enumerate_min_reps(rs, j, side)?;
            let slow = oracle::brute_min_reps(rs, j, side)?;
            ensure(fast == slow, || format!("min reps differ for J = {j}, {side:?}"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn coset_counting(rs: &RootSystem) -> Result<u64> {
    let order = rs.enumerate_group()?.len();
    let mut n = 0;
    for j in rs.all_indices().subsets() {
        let reps = parabolic::enumerate_min_reps(rs, j, Side::Right)?.len();
        let wj = parabolic::enumerate_parabolic(rs, j)?.len();
        ensure(reps * wj == order, || format!("|W^J| |W_J| ≠ |W| for J = {j}"))?;
        n += 1;
    }
    Ok(n)
}

fn i_set_matches_oracle(rs: &RootSystem) -> Result<u64> {
    for_each_config(rs, |d, j| {
        let mut n = 0;
        for w in quotient(rs, d, j)? {
            let fast = pieces::i_set(rs, j, d, &w)?;
            let slow = oracle::brute_i_set(rs, j, d, &w)?;
            ensure(fast == slow, || format!("I(J, w, δ) differs at J = {j}, w = {}", word(rs, &w)))?;
            n += 1;
        }
        Ok(n)
    })
}

fn bedard_round_trip(rs: &RootSystem) -> Result<u64> {
    for_each_config(rs, |d, j| {
        let mut n = 0;
        for w in quotient(rs, d, j)? {
            let seq = pieces::bedard_sequence(rs, j, d, &w)?;
            ensure(seq.steps.len() <= rs.rank() + 2, || "sequence too long".into())?;
            let limit = pieces::check_bedard_axioms(rs, j, d, &seq)?;
            ensure(limit == w, || "limit differs".into())?;
            ensure(seq.stable_subset() == pieces::i_set(rs, j, d, &w)?, || "stable J differs".into())?;
            n += 1;
        }
        Ok(n)
    })
}

fn pieces_cover_quotient(rs: &RootSystem) -> Result<u64> {
    for_each_config(rs, |d, j| {
        let ps = pieces::enumerate_pieces(rs, j, d)?;
        let q = quotient(rs, d, j)?;
        let ws: Vec<WeylElement> = ps.into_iter().map(|p| p.w).collect();
        ensure(ws == q, || format!("pieces do not list W^δ(J) for J = {j}"))?;
        Ok(1)
    })
}

fn epsilon_involutive(rs: &RootSystem) -> Result<u64> {
    for_each_config(rs, |d, j| {
        let dinv = aut_inverse(rs, d)?;
        let dj = d.map_subset(j).expect("diagram");
        let mut n = 0;
        for w in quotient(rs, d, j)? {
            let (v, _) = piece_maps::epsilon(rs, j, d, &w)?;
            ensure(parabolic::is_min_right(&v, j), || "ε(w) not in W^J".into())?;
            let (back, _) = piece_maps::epsilon(rs, dj, &dinv, &v)?;
            ensure(back == w, || format!("ε is not inverted at J = {j}, w = {}", word(rs, &w)))?;
            n += 1;
        }
        Ok(n)
    })
}

fn epsilon_matches_scans(rs: &RootSystem) -> Result<u64> {
    for_each_config(rs, |d, j| {
        let mut n = 0;
        for w in quotient(rs, d, j)? {
            let (v, _) = piece_maps::epsilon(rs, j, d, &w)?;
            let cert = piece_maps::epsilon_oracle(rs, j, d, &w)?;
            ensure(cert.v == v, || "ε differs from the W_J scan".into())?;
            let brute = oracle::brute_epsilon(rs, j, d, &w)?;
            ensure(brute == v, || "ε differs from the brute scan".into())?;
            n += 1;
        }
        Ok(n)
    })
}

fn dual_sequence_certified(rs: &RootSystem) -> Result<u64> {
    for_each_config(rs, |d, j| {
        let dinv = aut_inverse(rs, d)?;
        let dj = d.map_subset(j).expect("diagram");
        let mut n = 0;
        for w in quotient(rs, d, j)? {
            let (v, seq) = piece_maps::epsilon(rs, j, d, &w)?;
            let limit = pieces::check_bedard_axioms(rs, dj, &dinv, &seq.as_bedard())?;
            ensure(limit == v, || "dual limit differs from ε(w)".into())?;
            n += 1;
        }
        Ok(n)
    })
}

fn classify_retraction(rs: &RootSystem) -> Result<u64> {
    let group = rs.enumerate_group()?;
    for_each_config(rs, |d, j| {
        let dj = d.map_subset(j).expect("diagram");
        let mut n = 0;
        for x in &group {
            let c = pieces::classify(rs, j, d, x)?;
            ensure(parabolic::is_min_right(&c, dj), || "classify left W^δ(J)".into())?;
            if parabolic::is_min_right(x, dj) {
                ensure(c == *x, || format!("classify moved {}", word(rs, x)))?;
            }
            n += 1;
        }
        Ok(n)
    })
}

fn wp_involutive(rs: &RootSystem) -> Result<u64> {
    let sigmas = twisted::builtin_involutions(rs);
    for_each_config(rs, |d, j| {
        let mut n = 0;
        for (_, s) in &sigmas {
            let cfg = WpConfig::default();
            if piece_maps::check_wp_config(rs, j, d, s, cfg).is_err() {
                continue;
            }
            n += piece_maps::wp_table(rs, j, d, s, cfg)?.len() as u64;
        }
        Ok(n)
    })
}

fn small(rs: &RootSystem) -> bool {
    rs.weyl_order().is_some_and(|o| o <= SCAN_LIMIT)
}

fn intertwiner_support_scan(rs: &RootSystem) -> Result<u64> {
    if !small(rs) {
        return Ok(0);
    }
    for_each_config(rs, |d, j| {
        let report = oracle::scan_intertwiner_support(rs, j, d, &no_progress)?;
        ensure(report.is_clean(), || format!("counterexample at J = {j}: {:?}", report.counterexamples[0]))?;
        Ok(report.checked)
    })
}

fn pairs(rs: &RootSystem) -> Vec<InvolutionPair> {
    let b = twisted::builtin_involutions(rs);
    let mut out = Vec::new();
    for (_, s) in &b {
        for (_, t) in &b {
            if let Ok(p) = InvolutionPair::new(rs, s.clone(), t.clone()) {
                out.push(p);
            }
        }
    }
    out
}

fn for_each_pair(rs: &RootSystem, mut f: impl FnMut(&InvolutionPair, IndexSubset) -> Result<u64>) -> Result<u64> {
    let mut n = 0;
    for p in pairs(rs) {
        for j in rs.all_indices().subsets() {
            if p.tau.preserves_subsystem(rs, j) {
                n += f(&p, j)?;
            }
        }
    }
    Ok(n)
}

fn solution_levi_stability_scan(rs: &RootSystem) -> Result<u64> {
    if !small(rs) {
        return Ok(0);
    }
    for_each_pair(rs, |p, j| {
        let report = oracle::scan_solution_levi_stability(rs, j, p, &no_progress)?;
        ensure(report.is_clean(), || format!("counterexample at J = {j}: {:?}", report.counterexamples[0]))?;
        Ok(report.checked)
    })
}

fn distinguished_element_unique(rs: &RootSystem) -> Result<u64> {
    for_each_pair(rs, |p, j| {
        let sols = twisted::w_set(rs, j, p, &JOracle::Full, &JOracle::Full)?;
        for s in &sols {
            let again = twisted::distinguished_u(rs, j, p, &s.w, &s.solutions[s.solutions.len() - 1..])?;
            ensure(again == s.u, || "distinguished element depends on the seed".into())?;
        }
        Ok(sols.len() as u64)
    })
}

fn w_set_matches_oracle(rs: &RootSystem) -> Result<u64> {
    for_each_pair(rs, |p, j| {
        let fast: Vec<WeylElement> =
            twisted::w_set(rs, j, p, &JOracle::Full, &JOracle::Full)?.into_iter().map(|s| s.w).collect();
        let slow = oracle::brute_w_set(rs, j, p, &JOracle::Full, &JOracle::Full)?;
        ensure(fast == slow, || format!("W(J, σ, τ) differs from the brute scan at J = {j}"))?;
        Ok(1)
    })
}

fn doubled_group_epsilon_graph(rs: &RootSystem) -> Result<u64> {
    let Some(h) = rs.self_product_half() else { return Ok(0) };
    let swap = RootAutomorphism::product_swap(rs)?;
    let pair = InvolutionPair::new(rs, swap.clone(), swap.clone())?;
    let oracle = twisted::doubled_j_oracle(rs)?;
    let first = IndexSubset::from_indices(0..h);
    let mut n = 0;
    for j0 in first.subsets() {
        let j = j0.union(j0.permuted(&swap.simple_permutation().expect("diagram")));
        let got: Vec<WeylElement> = twisted::w_set(rs, j, &pair, &oracle, &oracle)?.into_iter().map(|s| s.w).collect();
        // ε on the first factor, its value transported to the second by the swap
        let id = RootAutomorphism::identity(rs);
        let mut expect = Vec::new();
        for w in parabolic::enumerate_min_reps(rs, j0, Side::Right)? {
            if parabolic::in_parabolic(rs, &w, first) {
                let (v, _) = piece_maps::epsilon(rs, j0, &id, &w)?;
                expect.push(&w * &rs.apply_aut(&swap, &v));
            }
        }
        rs.sort_elements(&mut expect);
        ensure(got == expect, || format!("doubled W differs from the ε graph for J0 = {j0}"))?;
        n += got.len() as u64;
    }
    Ok(n)
}
