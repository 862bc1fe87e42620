use proptest::prelude::*;
use proptest::sample::select;

use weylpieces::parabolic::{self, Side};
use weylpieces::piece_maps;
use weylpieces::pieces;
use weylpieces::rootsys::{aut_inverse, diagram_automorphisms};
use weylpieces::{build_root_system, IndexSubset, RootSystem, WeylElement, Word};

const TYPES: &[&str] = &["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "A1xA1", "A2xA2", "A1xB2"];

fn system(t: &str) -> RootSystem {
    build_root_system(&t.parse().unwrap()).unwrap()
}

/// A system with a random word, a random J and a random diagram automorphism index.
fn input() -> impl Strategy<Value = (RootSystem, Word, IndexSubset, usize)> {
    select(TYPES).prop_flat_map(|t| {
        let rs = system(t);
        let n = rs.rank();
        let nd = diagram_automorphisms(&rs).len();
        (
            Just(rs),
            prop::collection::vec(0..n, 0..14).prop_map(Word),
            (0u64..(1 << n)).prop_map(IndexSubset::from_bits),
            0..nd,
        )
    })
}

fn elt(rs: &RootSystem, w: &Word) -> WeylElement {
    rs.from_word(w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduced_words_are_reduced((rs, w, _, _) in input()) {
        let x = elt(&rs, &w);
        let r = rs.reduced_word(&x);
        prop_assert_eq!(r.len(), x.length());
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(elt(&rs, &r), x);
    }

    #[test]
    fn words_multiply_by_concatenation((rs, w, _, _) in input(), split in 0usize..14) {
        let k = split.min(w.len());
        let (a, b) = w.letters().split_at(k);
        let prod = &elt(&rs, &Word(a.to_vec())) * &elt(&rs, &Word(b.to_vec()));
        prop_assert_eq!(&prod, &elt(&rs, &w));
        prop_assert!((&prod * &prod.inverse()).is_identity());
        let rev: Vec<usize> = w.letters().iter().rev().copied().collect();
        prop_assert_eq!(prod.inverse(), elt(&rs, &Word(rev)));
    }

    #[test]
    fn right_decomposition((rs, w, j, _) in input()) {
        let x = elt(&rs, &w);
        let (m, y) = parabolic::decompose_right(&rs, &x, j);
        prop_assert_eq!(&(&m * &y), &x);
        prop_assert!(parabolic::is_min_right(&m, j));
        prop_assert!(parabolic::in_parabolic(&rs, &y, j));
        prop_assert_eq!(m.length() + y.length(), x.length());
    }

    #[test]
    fn left_decomposition((rs, w, j, _) in input()) {
        let x = elt(&rs, &w);
        let (y, m) = parabolic::decompose_left(&rs, &x, j);
        prop_assert_eq!(&(&y * &m), &x);
        prop_assert!(parabolic::is_min_left(&m, j));
        prop_assert_eq!(m.length() + y.length(), x.length());
    }

    #[test]
    fn automorphisms_are_homomorphisms((rs, w, _, d) in input(), v in prop::collection::vec(0usize..8, 0..8)) {
        let delta = &diagram_automorphisms(&rs)[d];
        let x = elt(&rs, &w);
        let y = elt(&rs, &Word(v.into_iter().filter(|&l| l < rs.rank()).collect()));
        prop_assert_eq!(rs.apply_aut(delta, &(&x * &y)), &rs.apply_aut(delta, &x) * &rs.apply_aut(delta, &y));
        prop_assert_eq!(rs.apply_aut(delta, &x).length(), x.length());
    }

    #[test]
    fn classify_is_idempotent((rs, w, j, d) in input()) {
        let delta = &diagram_automorphisms(&rs)[d];
        let x = elt(&rs, &w);
        let c = pieces::classify(&rs, j, delta, &x).unwrap();
        prop_assert!(parabolic::is_min_right(&c, delta.map_subset(j).unwrap()));
        prop_assert_eq!(pieces::classify(&rs, j, delta, &c).unwrap(), c);
    }

    #[test]
    fn sequences_recover_their_limit((rs, w, j, d) in input()) {
        let delta = &diagram_automorphisms(&rs)[d];
        let x = parabolic::min_right(&rs, &elt(&rs, &w), delta.map_subset(j).unwrap());
        let seq = pieces::bedard_sequence(&rs, j, delta, &x).unwrap();
        prop_assert_eq!(seq.limit(), &x);
        prop_assert_eq!(pieces::check_bedard_axioms(&rs, j, delta, &seq).unwrap(), x.clone());
        let k = pieces::i_set(&rs, j, delta, &x).unwrap();
        prop_assert_eq!(seq.stable_subset(), k);
        prop_assert_eq!(parabolic::transport(&rs, &x, delta.map_subset(k).unwrap()), k);
    }

    #[test]
    fn epsilon_round_trip((rs, w, j, d) in input()) {
        let delta = &diagram_automorphisms(&rs)[d];
        let dinv = aut_inverse(&rs, delta).unwrap();
        let x = parabolic::min_right(&rs, &elt(&rs, &w), delta.map_subset(j).unwrap());
        let (v, _) = piece_maps::epsilon(&rs, j, delta, &x).unwrap();
        prop_assert!(parabolic::is_min_right(&v, j));
        let (back, _) = piece_maps::epsilon(&rs, delta.map_subset(j).unwrap(), &dinv, &v).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn min_reps_count_cosets(t in select(&["A1", "A2", "A3", "B2", "B3", "G2", "A1xA1"][..]), bits in 0u64..8) {
        let rs = system(t);
        let j = IndexSubset::from_bits(bits).intersection(rs.all_indices());
        let order = rs.enumerate_group().unwrap().len();
        let sub = parabolic::enumerate_parabolic(&rs, j).unwrap().len();
        for side in [Side::Right, Side::Left] {
            prop_assert_eq!(parabolic::enumerate_min_reps(&rs, j, side).unwrap().len() * sub, order);
        }
    }
}
