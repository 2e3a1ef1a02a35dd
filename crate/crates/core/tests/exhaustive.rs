use std::collections::{BTreeMap, BTreeSet};

use num_integer::binomial;

use refl_fc::embed::{census, embed, member_forms, preimage};
use refl_fc::fc::{comm_class, is_fc_oracle, kr_fingerprint, DEFAULT_CLASS_BUDGET};
use refl_fc::normalize::is_reduced;
use refl_fc::packets::{decompose, CollectionLabel};
use refl_fc::words::canonical_forms;
use refl_fc::{eval, CayleyIndex, GroupParams, Word};

fn all_groups(max_d: u32, ns: std::ops::RangeInclusive<usize>) -> Vec<GroupParams> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        for r in (1..=d).filter(|r| d % r == 0) {
            for n in ns.clone() {
                if let Ok(p) = GroupParams::new(d, r, n) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn triangle(n: u64, k: u64) -> u64 {
    (binomial(n + k, k) * (n - k + 1) / (n + 1)) as u64
}

#[test]
fn every_collection_has_catalan_triangle_size() {
    for p in all_groups(3, 3..=4) {
        let dec = decompose(&p).unwrap();
        for (label, packet) in &dec.packets {
            for (c, members) in packet {
                assert_eq!(
                    members.len() as u64,
                    triangle(label.n as u64, label.k as u64),
                    "{p} {c}"
                );
            }
        }
    }
}

fn prefix_set(members: &[refl_fc::CanonicalForm]) -> BTreeSet<Word> {
    members.iter().map(|cf| cf.prefix_word()).collect()
}

#[test]
fn collections_sharing_a_first_factor_share_prefixes() {
    for p in all_groups(3, 3..=4) {
        let dec = decompose(&p).unwrap();
        let n = p.n() as u8;
        let mut by_first: BTreeMap<u8, BTreeSet<BTreeSet<Word>>> = BTreeMap::new();
        let mut top: BTreeSet<BTreeSet<Word>> = BTreeSet::new();
        for packet in dec.packets.values() {
            for (label, members) in packet {
                match label.suffix() {
                    [first, _, ..] => {
                        by_first
                            .entry(first.j)
                            .or_default()
                            .insert(prefix_set(members));
                    }
                    [f] if f.j >= n - 1 => {
                        top.insert(prefix_set(members));
                    }
                    _ => {}
                }
            }
        }
        for (j, sets) in by_first {
            assert_eq!(sets.len(), 1, "{p}: first factor j={j}");
        }
        assert!(top.len() <= 1, "{p}");
        if let Some(set) = top.into_iter().next() {
            let n = p.n() as u64;
            assert_eq!(set.len() as u64, binomial(2 * n, n) / (n + 1), "{p}");
        }
    }
}

#[test]
fn bottom_packet_collections_are_singletons() {
    for p in all_groups(4, 3..=4) {
        let dec = decompose(&p).unwrap();
        if let Some(packet) = dec.packet(0) {
            for (label, members) in packet {
                assert_eq!(members.len(), 1, "{p} {label}");
                assert!(members[0].prefix_word().is_empty());
            }
        }
    }
}

#[test]
fn decomposition_labels_are_sorted_by_word() {
    let dec = decompose(&GroupParams::full(3, 3).unwrap()).unwrap();
    let labels: Vec<&CollectionLabel> = dec.packets.values().flat_map(|p| p.keys()).collect();
    assert_eq!(labels.len(), 16 + 6 + 4 + 1);
    for packet in dec.packets.values() {
        let words: Vec<Word> = packet.keys().map(CollectionLabel::word).collect();
        assert!(words.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn member_census_and_preimages() {
    for p in all_groups(4, 3..=4) {
        let order =
            (1..=p.n() as u64).product::<u64>() * (p.d() as u64).pow(p.n() as u32) / p.r() as u64;
        assert_eq!(census(&p, u64::MAX).unwrap(), order, "{p}");
        let amb = p.ambient();
        for cf in member_forms(&p) {
            let w = preimage(&cf, &p).unwrap();
            assert_eq!(
                eval(&embed(&w, &p).unwrap(), &amb),
                eval(&cf.flatten(), &amb),
                "{p} {cf:?}"
            );
        }
    }
}

#[test]
fn fingerprints_separate_commutation_classes() {
    let p = GroupParams::full(2, 4).unwrap();
    let idx = CayleyIndex::build(&p).unwrap();
    for cf in canonical_forms(&p).filter(|cf| cf.length() <= 7) {
        let g = eval(&cf.flatten(), &p);
        let words = idx.all_reduced_words(&g);
        let mut classes: BTreeMap<_, BTreeSet<Word>> = BTreeMap::new();
        for w in &words {
            classes
                .entry(kr_fingerprint(w, p.n()))
                .or_default()
                .insert(w.clone());
        }
        for (_, members) in classes {
            let first = members.iter().next().unwrap();
            let class = comm_class(first, DEFAULT_CLASS_BUDGET).unwrap();
            assert_eq!(class.members, members);
        }
    }
}

#[test]
fn reducedness_agrees_with_geodesic_length() {
    let p = GroupParams::full(3, 3).unwrap();
    let idx = CayleyIndex::build(&p).unwrap();
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..6 {
        words = words
            .iter()
            .flat_map(|w| (1..=3u8).map(move |a| [w.as_slice(), &[a]].concat()))
            .collect();
        for w in &words {
            assert_eq!(is_reduced(w, &p).unwrap(), idx.is_reduced(w), "{w:?}");
        }
    }
}

#[test]
fn oracle_handles_non_canonical_words() {
    let p = GroupParams::full(3, 3).unwrap();
    let idx = CayleyIndex::build(&p).unwrap();
    // the trailing s_2 s_2 cancels
    let a = is_fc_oracle(&[3, 2, 3, 3, 2, 2], &idx, DEFAULT_CLASS_BUDGET).unwrap();
    let b = is_fc_oracle(&[3, 2, 3, 3], &idx, DEFAULT_CLASS_BUDGET).unwrap();
    assert_eq!(a, b);
}
