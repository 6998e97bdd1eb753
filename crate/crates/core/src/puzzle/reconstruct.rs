use crate::charmap::{canonicalize, primal, primal_from_dual_matrix, project_onto_in, CharMap};
use crate::complex::{Face, Permutation, SimplicialComplex, VertexCopy, WedgeLayout};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

use super::{Board, Prediagram, Puzzle};

/// Turns realizable puzzles over `G(J)` into classes over `L(J)`, the latter
/// relabeled facet-first.
///
/// The dual rows of the copies `(k, 1)` are taken from the root class and the
/// row of copy `(k, c)` from the `k`-edge joining the root to the node with
/// `v_k = c`. Every node is then checked against the matching projection.
#[derive(Clone, Debug)]
pub struct Reconstructor {
    seed: SimplicialComplex,
    layout: WedgeLayout,
    complex: SimplicialComplex,
    perm: Permutation,
    /// Board index of the node `(1, .., c, .., 1)` for each copy `(k, c)`, `c ≥ 2`.
    spokes: Vec<(VertexCopy, usize)>,
    frames: Vec<NodeFrame>,
}

/// Where a board node sits inside `L(J)`: the copies it drops, a facet
/// containing them, and the copies standing for the seed vertices.
#[derive(Clone, Debug)]
struct NodeFrame {
    dropped: Face,
    facet: u64,
    kept: Vec<usize>,
}

impl Reconstructor {
    pub fn new(seed: &SimplicialComplex, board: &Board) -> Result<Self> {
        if !seed.is_facet_first() {
            return Err(Error::NotFacetFirst);
        }
        let j = board.tuple();
        let (wedged, layout) = seed.wedged(j)?;
        let (complex, perm) = wedged.relabel_facet_first();
        let label = |c: VertexCopy| perm.image(layout.label(c));
        let m = seed.m();

        let mut spokes = Vec::new();
        let mut corner = vec![1usize; m];
        for k in 1..=m {
            for copy in 2..=j.get(k) {
                corner[k - 1] = copy;
                spokes.push((
                    VertexCopy { base: k, copy },
                    board.index_of(&corner).expect("node on the board"),
                ));
            }
            corner[k - 1] = 1;
        }

        let first = seed.facet_masks()[0];
        let frames = board
            .nodes()
            .iter()
            .map(|v| {
                let (mut dropped, mut facet) = (0u64, 0u64);
                let mut kept = Vec::with_capacity(m);
                for (k, &vk) in (1..).zip(v) {
                    for copy in 1..=j.get(k) {
                        let t = 1u64 << (label(VertexCopy { base: k, copy }) - 1);
                        if copy == vk {
                            kept.push(label(VertexCopy { base: k, copy }));
                            if first >> (k - 1) & 1 == 1 {
                                facet |= t;
                            }
                        } else {
                            dropped |= t;
                            facet |= t;
                        }
                    }
                }
                debug_assert!(complex.has_facet(facet));
                NodeFrame {
                    dropped: Face::from_mask(dropped),
                    facet,
                    kept,
                }
            })
            .collect();
        Ok(Reconstructor {
            seed: seed.clone(),
            layout,
            complex,
            perm,
            spokes,
            frames,
        })
    }

    /// `L(J)` in the labeling of the output classes.
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn layout(&self) -> &WedgeLayout {
        &self.layout
    }

    /// Maps the block label of a vertex copy to its output label.
    pub fn label(&self, c: VertexCopy) -> usize {
        self.perm.image(self.layout.label(c))
    }

    pub fn reconstruct(&self, pre: &Prediagram, pz: &Puzzle) -> Result<CharMap> {
        if pz.assignment().len() != self.frames.len() {
            return Err(Error::ShapeMismatch("puzzle does not match the board".into()));
        }
        let root = pz.class_at(0);
        let d_root = pre.class(root);
        let mut rows = vec![d_root.row(1); self.layout.vertex_count()];
        for k in 1..=self.seed.m() {
            rows[self.layout.label(VertexCopy { base: k, copy: 1 }) - 1] = d_root.row(k);
        }
        for &(c, t) in &self.spokes {
            let psi = pre
                .psi(root, c.base, pz.class_at(t))
                .ok_or_else(|| Error::NotRealizable(format!("no {}-edge between the root and node {t}", c.base)))?;
            rows[self.layout.label(c) - 1] = d_root.row(c.base) + psi;
        }
        let dual = BitMatrix::from_rows(d_root.width(), rows)?;
        let raw = primal_from_dual_matrix(&dual);
        if raw.nrows() != self.complex.n() {
            return Err(Error::NotRealizable("assembled dual has the wrong rank".into()));
        }
        let map = canonicalize(&raw.permute_columns(self.perm.images()), &self.complex)
            .map_err(|e| Error::NotRealizable(format!("assembled map: {e}")))?;
        self.verify(pre, pz, &map)?;
        Ok(map)
    }

    /// Every node must be the projection of `map` at the copies it drops.
    fn verify(&self, pre: &Prediagram, pz: &Puzzle, map: &CharMap) -> Result<()> {
        for (t, frame) in self.frames.iter().enumerate() {
            let got = project_onto_in(map, &frame.dropped, frame.facet, &self.seed, &frame.kept)
                .map_err(|e| Error::NotRealizable(format!("projection at node {t}: {e}")))?;
            if got != primal(pre.class(pz.class_at(t))) {
                return Err(Error::NotRealizable(format!(
                    "node {t} does not match the projection of the assembled map"
                )));
            }
        }
        Ok(())
    }
}

/// The class over `L(J)` (relabeled facet-first) that `pz` describes.
pub fn puzzle_to_charmap(pz: &Puzzle, pre: &Prediagram, board: &Board) -> Result<CharMap> {
    Reconstructor::new(pre.complex(), board)?.reconstruct(pre, pz)
}
