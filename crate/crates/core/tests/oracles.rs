//! Cross-checks against routes that share no code with the enumerator:
//! permutation groups on the leaves of T_n, and direct portrait arithmetic.

use std::collections::{HashSet, VecDeque};

use ggs_core::{
    make_a, make_b, parse_word, DefiningVector, Portrait, QuotientGroup, TreeShape, DEFAULT_BUDGET,
};
use proptest::prelude::*;

/// The action of `x` on the leaves of its tree, leaves numbered in base p.
fn leaf_perm(x: &Portrait) -> Vec<u32> {
    let sh = x.shape();
    let (p, n) = (sh.p() as u32, sh.depth() as u32);
    (0..p.pow(n))
        .map(|k| {
            let word: Vec<u8> = (0..n).rev().map(|d| ((k / p.pow(d)) % p) as u8 + 1).collect();
            let img = x.apply(&word).unwrap();
            img.iter().fold(0, |acc, &l| acc * p + (l as u32 - 1))
        })
        .collect()
}

fn perm_closure(gens: &[Vec<u32>]) -> HashSet<Vec<u32>> {
    let id: Vec<u32> = (0..gens[0].len() as u32).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<u32> = x.iter().map(|&i| g[i as usize]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn perm_group(v: &DefiningVector, n: u32) -> HashSet<Vec<u32>> {
    let sh = TreeShape::new(v.p() as u32, n).unwrap();
    perm_closure(&[leaf_perm(&make_a(sh)), leaf_perm(&make_b(v, sh).unwrap())])
}

#[test]
fn orders_match_permutation_groups() {
    let cases: &[(u32, &[i64], u32)] = &[
        (3, &[1, -1], 1),
        (3, &[1, -1], 2),
        (3, &[1, -1], 3),
        (3, &[1, 0], 2),
        (3, &[1, 0], 3),
        (3, &[1, 1], 3),
        (5, &[1, -1, 1, -1], 2),
        (5, &[1, 2, 0, 0], 2),
        (5, &[1, 1, 1, 1], 2),
    ];
    for &(p, e, n) in cases {
        let v = DefiningVector::new(p, e).unwrap();
        let g = QuotientGroup::enumerate(&v, n, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.order(), perm_group(&v, n).len(), "p={p} e={e:?} n={n}");
    }
}

#[test]
fn elements_are_the_permutation_group() {
    let v = DefiningVector::new(3, &[1, -1]).unwrap();
    let g = QuotientGroup::enumerate(&v, 3, DEFAULT_BUDGET).unwrap();
    let perms = perm_group(&v, 3);
    for x in g.elements() {
        assert!(perms.contains(&leaf_perm(&g.portrait(x))));
    }
}

#[test]
fn multiplication_is_left_to_right() {
    // x·y acts as x first, then y.
    let v = DefiningVector::new(5, &[1, 2, 3, 4]).unwrap();
    let g = QuotientGroup::enumerate(&v, 2, DEFAULT_BUDGET).unwrap();
    for (x, y) in [(g.a(), g.b()), (g.mul(g.a(), g.b()), g.b()), (7, 19)] {
        let (px, py, pxy) = (leaf_perm(&g.portrait(x)), leaf_perm(&g.portrait(y)), leaf_perm(&g.portrait(g.mul(x, y))));
        let composed: Vec<u32> = px.iter().map(|&i| py[i as usize]).collect();
        assert_eq!(pxy, composed);
    }
}

#[test]
fn center_by_definition() {
    for (p, e, n) in [(3, vec![1, -1], 3), (3, vec![1, 0], 2), (5, vec![1, -1, 1, -1], 2)] {
        let v = DefiningVector::new(p, &e).unwrap();
        let g = QuotientGroup::enumerate(&v, n, DEFAULT_BUDGET).unwrap();
        let z: Vec<u32> = g
            .elements()
            .filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x)))
            .collect();
        assert_eq!(g.center().members().collect::<Vec<_>>(), z);
    }
}

#[test]
fn derived_subgroup_by_closure_of_commutators() {
    let v = DefiningVector::new(3, &[1, 0]).unwrap();
    let g = QuotientGroup::enumerate(&v, 2, DEFAULT_BUDGET).unwrap();
    let comms: HashSet<u32> = g.elements().flat_map(|x| g.elements().map(move |y| (x, y))).map(|(x, y)| g.commutator(x, y)).collect();
    let mut closed = comms.clone();
    loop {
        let next: HashSet<u32> = closed.iter().flat_map(|&x| closed.iter().map(move |&y| (x, y))).map(|(x, y)| g.mul(x, y)).collect();
        if next.len() == closed.len() {
            break;
        }
        closed = next;
    }
    let mut want: Vec<u32> = closed.into_iter().collect();
    want.sort();
    assert_eq!(g.derived_subgroup().members().collect::<Vec<_>>(), want);
    assert_eq!(want.len() * 9, g.order());
}

#[test]
fn words_match_portrait_products() {
    let v = DefiningVector::new(3, &[1, -1]).unwrap();
    let sh = TreeShape::new(3, 3).unwrap();
    let a = make_a(sh);
    let b = make_b(&v, sh).unwrap();
    let ab = a.compose(&b).unwrap();
    assert_eq!(parse_word("ab", &v, sh).unwrap(), ab);
    assert_eq!(parse_word("(ab)^-2", &v, sh).unwrap(), ab.pow(-2));
    assert_eq!(parse_word("Aba", &v, sh).unwrap(), b.conjugate_by(&a).unwrap());
    assert_eq!(parse_word("ABab", &v, sh).unwrap(), a.commutator(&b).unwrap());
    assert!(parse_word("1", &v, sh).unwrap().is_identity());
}

fn shape_and_labels() -> impl Strategy<Value = (TreeShape, Vec<u8>, Vec<u8>)> {
    prop_oneof![Just((3u32, 3u32)), Just((5, 2)), Just((7, 2)), Just((3, 5))].prop_flat_map(|(p, n)| {
        let sh = TreeShape::new(p, n).unwrap();
        let len = sh.internal_count();
        (
            Just(sh),
            proptest::collection::vec(0..p as u8, len),
            proptest::collection::vec(0..p as u8, len),
        )
    })
}

proptest! {
    #[test]
    fn order_divides_and_is_minimal((sh, f, _) in shape_and_labels()) {
        let x = Portrait::from_labels(sh, f).unwrap();
        let o = x.order();
        prop_assert!(x.pow(o as i64).is_identity());
        let p = sh.p() as u64;
        let mut q = o;
        while q.is_multiple_of(p) {
            q /= p;
        }
        prop_assert_eq!(q, 1);
        if o > 1 {
            prop_assert!(!x.pow((o / p) as i64).is_identity());
        }
    }

    #[test]
    fn display_round_trips((sh, f, _) in shape_and_labels()) {
        let x = Portrait::from_labels(sh, f).unwrap();
        let y: Portrait = x.to_string().parse().unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn psi_is_multiplicative_on_the_stabilizer((sh, f, g) in shape_and_labels()) {
        // Kill the root labels so both lie in st(1).
        let mut f = f;
        let mut g = g;
        f[0] = 0;
        g[0] = 0;
        let x = Portrait::from_labels(sh, f).unwrap();
        let y = Portrait::from_labels(sh, g).unwrap();
        let dx = x.psi().unwrap();
        let dy = y.psi().unwrap();
        let dxy = x.compose(&y).unwrap().psi().unwrap();
        for i in 0..sh.p() as usize {
            prop_assert_eq!(&dxy.sections[i], &dx.sections[i].compose(&dy.sections[i]).unwrap());
        }
    }

    #[test]
    fn truncation_is_a_homomorphism((sh, f, g) in shape_and_labels()) {
        let x = Portrait::from_labels(sh, f).unwrap();
        let y = Portrait::from_labels(sh, g).unwrap();
        let k = sh.depth() as usize - 1;
        prop_assert_eq!(
            x.compose(&y).unwrap().truncate(k).unwrap(),
            x.truncate(k).unwrap().compose(&y.truncate(k).unwrap()).unwrap()
        );
    }
}
