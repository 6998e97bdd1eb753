use djpuzzle::{Face, Permutation, SimplicialComplex, VertexCopy, WedgeLayout, WedgeTuple};
use proptest::prelude::*;

fn seeds() -> Vec<SimplicialComplex> {
    let octahedron = SimplicialComplex::from_facets(
        6,
        &[
            vec![1, 2, 3],
            vec![1, 2, 6],
            vec![1, 3, 5],
            vec![1, 5, 6],
            vec![2, 3, 4],
            vec![2, 4, 6],
            vec![3, 4, 5],
            vec![4, 5, 6],
        ],
    )
    .unwrap();
    let mut out: Vec<_> = (4..=7).map(SimplicialComplex::polygon).collect();
    out.push(octahedron);
    out
}

fn shuffled(len: usize, mut s: u64) -> Vec<usize> {
    let mut v: Vec<usize> = (0..len).collect();
    for i in (1..len).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        v.swap(i, (s >> 33) as usize % (i + 1));
    }
    v
}

fn case() -> impl Strategy<Value = (SimplicialComplex, WedgeTuple, u64)> {
    (0..seeds().len(), any::<u64>()).prop_flat_map(|(i, s)| {
        let k = seeds().swap_remove(i);
        let m = k.m();
        prop::collection::vec(1usize..=3, m).prop_map(move |j| (k.clone(), WedgeTuple::new(j).unwrap(), s))
    })
}

fn sorted_masks(k: &SimplicialComplex) -> Vec<u64> {
    let mut v = k.facet_masks().to_vec();
    v.sort_unstable();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedging_keeps_the_picard_number((k, j, _) in case()) {
        let (w, layout) = k.wedged(&j).unwrap();
        prop_assert_eq!(w.m(), layout.vertex_count());
        prop_assert_eq!(w.picard(), k.picard());
        prop_assert!(w.is_pseudo_manifold());
    }

    #[test]
    fn one_vertex_at_a_time_in_any_order((k, j, s) in case()) {
        let mut ops: Vec<usize> = (1..=k.m()).flat_map(|v| std::iter::repeat_n(v, j.get(v) - 1)).collect();
        let order = shuffled(ops.len(), s);
        ops = order.iter().map(|&i| ops[i]).collect();

        let mut cur = k.clone();
        let mut copy_of: Vec<VertexCopy> = (1..=k.m()).map(|base| VertexCopy { base, copy: 1 }).collect();
        let mut used = vec![1usize; k.m()];
        for v in ops {
            cur = cur.wedge(v).unwrap();
            used[v - 1] += 1;
            copy_of.push(VertexCopy { base: v, copy: used[v - 1] });
        }
        let layout = WedgeLayout::new(&j);
        let mut normalized: Vec<u64> = cur
            .facet_masks()
            .iter()
            .map(|&f| {
                (0..cur.m())
                    .filter(|&i| f >> i & 1 == 1)
                    .fold(0u64, |acc, i| acc | 1 << (layout.label(copy_of[i]) - 1))
            })
            .collect();
        normalized.sort_unstable();
        let (w, _) = k.wedged(&j).unwrap();
        prop_assert_eq!(normalized, sorted_masks(&w));
    }

    #[test]
    fn wedged_commutes_with_relabeling((k, j, s) in case()) {
        let images: Vec<usize> = shuffled(k.m(), s).into_iter().map(|i| i + 1).collect();
        let perm = Permutation::from_images(images).unwrap();
        let (w, layout) = k.wedged(&j).unwrap();
        let pj = j.permuted(&perm);
        let (pw, playout) = k.relabel(&perm).wedged(&pj).unwrap();
        let mut carried: Vec<u64> = w
            .facet_masks()
            .iter()
            .map(|&f| {
                (1..=w.m())
                    .filter(|&t| f >> (t - 1) & 1 == 1)
                    .fold(0u64, |acc, t| {
                        let c = layout.copy_of(t);
                        let moved = VertexCopy { base: perm.image(c.base), copy: c.copy };
                        acc | 1 << (playout.label(moved) - 1)
                    })
            })
            .collect();
        carried.sort_unstable();
        prop_assert_eq!(carried, sorted_masks(&pw));
    }

    #[test]
    fn link_of_the_extra_copies_is_the_seed((k, j, _) in case()) {
        let (w, layout) = k.wedged(&j).unwrap();
        let extra: Vec<usize> = (1..=k.m())
            .flat_map(|base| (2..=j.get(base)).map(move |copy| VertexCopy { base, copy }))
            .map(|c| layout.label(c))
            .collect();
        let (link, old) = w.link(&Face::from_vertices(&extra).unwrap()).unwrap();
        let firsts: Vec<usize> = (1..=k.m()).map(|base| layout.label(VertexCopy { base, copy: 1 })).collect();
        prop_assert_eq!(old, firsts);
        prop_assert_eq!(link, k);
    }

    #[test]
    fn text_round_trip((k, j, _) in case()) {
        let (w, _) = k.wedged(&j).unwrap();
        prop_assert_eq!(SimplicialComplex::parse(&w.render_text()).unwrap(), w.clone());
        let (framed, perm) = w.relabel_facet_first();
        prop_assert!(framed.is_facet_first());
        prop_assert_eq!(w.relabel(&perm), framed);
    }
}

#[test]
fn link_of_the_new_copy_is_the_seed() {
    for k in seeds() {
        for v in 1..=k.m() {
            let w = k.wedge(v).unwrap();
            let (link, old) = w.link(&Face::from_vertices(&[k.m() + 1]).unwrap()).unwrap();
            assert_eq!(old, (1..=k.m()).collect::<Vec<_>>());
            assert_eq!(link, k, "wedge at {v}");
            let (link1, old1) = w.link(&Face::from_vertices(&[v]).unwrap()).unwrap();
            let images = old1.iter().map(|&o| if o == k.m() + 1 { v } else { o }).collect();
            assert_eq!(
                link1.relabel(&Permutation::from_images(images).unwrap()),
                k,
                "wedge at {v}"
            );
        }
    }
}
