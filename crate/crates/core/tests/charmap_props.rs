mod common;

use djpuzzle::charmap::relabel_map;
use djpuzzle::puzzle::edge_label;
use djpuzzle::{
    canonicalize, dualize, garrison_scott, primal, project, wedge_maps, BitMatrix, CharMap, Face, Permutation,
    SimplicialComplex, WedgeTuple,
};
use proptest::prelude::*;

use common::fixture;

fn seeds() -> Vec<SimplicialComplex> {
    let mut out = vec![fixture("p5.txt"), fixture("p6.txt"), fixture("c4.txt")];
    let (w, _) = fixture("p5.txt")
        .wedged(&WedgeTuple::parse("2,1,2,1,1").unwrap())
        .unwrap();
    out.push(w.relabel_facet_first().0);
    out
}

fn classes() -> Vec<(SimplicialComplex, CharMap)> {
    seeds()
        .into_iter()
        .flat_map(|k| garrison_scott(&k).unwrap().into_iter().map(move |c| (k.clone(), c)))
        .collect()
}

fn invertible(n: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(any::<u64>(), n)
        .prop_map(move |rows| {
            BitMatrix::from_row_bits(n, &rows.iter().map(|r| r & ((1 << n) - 1)).collect::<Vec<_>>()).unwrap()
        })
        .prop_filter("invertible", move |g| g.rank() == n)
}

fn class_with_transform() -> impl Strategy<Value = (SimplicialComplex, CharMap, BitMatrix)> {
    let all = classes();
    (0..all.len()).prop_flat_map(move |i| {
        let (k, c) = all[i].clone();
        invertible(c.n()).prop_map(move |g| (k.clone(), c.clone(), g))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonicalize_is_constant_on_orbits((k, c, g) in class_with_transform()) {
        let moved = g.mul(c.matrix()).unwrap();
        prop_assert_eq!(canonicalize(&moved, &k).unwrap(), c);
    }
}

#[test]
fn dualize_and_primal_are_inverse() {
    for (k, c) in classes() {
        let d = dualize(&c);
        assert_eq!(primal(&d), c);
        assert_eq!(dualize(&primal(&d)), d);
        assert_eq!((d.n(), d.m()), (k.n(), k.m()));
        assert!(djpuzzle::charmap::check_dual_nonsingular(&d, &k));
    }
}

/// Carries `c` over `k` onto `target`, where `target` vertex `t` is `k`
/// vertex `to_k[t - 1]`.
fn carried(c: &CharMap, to_k: &[usize], target: &SimplicialComplex) -> CharMap {
    let mut images = vec![0; to_k.len()];
    for (t, &v) in (1..).zip(to_k) {
        images[v - 1] = t;
    }
    relabel_map(c, &Permutation::from_images(images).unwrap(), target).unwrap()
}

#[test]
fn wedged_edges_project_back_to_their_ends() {
    let mut edges = 0;
    for k in seeds() {
        let m = k.m();
        let cms = garrison_scott(&k).unwrap();
        for a in &cms {
            for b in &cms {
                for p in 1..=m {
                    let Some(psi) = edge_label(&dualize(a), &dualize(b), p) else {
                        continue;
                    };
                    edges += 1;
                    let w = wedge_maps(a, b, p, psi, &k).unwrap();
                    let framed = |old: usize| w.labels.iter().position(|&l| l == old).unwrap() + 1;
                    let (p1, p2) = (framed(p), framed(m + 1));

                    let drop2 = project(&w.map, &Face::from_vertices(&[p2]).unwrap(), &w.complex).unwrap();
                    let to_k: Vec<usize> = drop2.labels.iter().map(|&t| w.labels[t - 1]).collect();
                    assert_eq!(drop2.map, carried(a, &to_k, &drop2.complex));

                    let drop1 = project(&w.map, &Face::from_vertices(&[p1]).unwrap(), &w.complex).unwrap();
                    let to_k: Vec<usize> = drop1
                        .labels
                        .iter()
                        .map(|&t| match w.labels[t - 1] {
                            v if v == m + 1 => p,
                            v => v,
                        })
                        .collect();
                    assert_eq!(drop1.map, carried(b, &to_k, &drop1.complex));
                }
            }
        }
    }
    assert!(edges > 0);
}

#[test]
fn wedge_maps_rejects_non_edges() {
    let k = fixture("p5.txt");
    let cms = garrison_scott(&k).unwrap();
    let mut rejected = 0;
    for a in &cms {
        for b in &cms {
            for p in 1..=5 {
                if edge_label(&dualize(a), &dualize(b), p).is_none() {
                    rejected += 1;
                    let zero = djpuzzle::BitVec::zero(3);
                    assert!(wedge_maps(a, b, p, zero, &k).is_err());
                }
            }
        }
    }
    assert!(rejected > 0);
}
