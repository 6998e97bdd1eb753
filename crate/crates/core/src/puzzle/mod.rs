//! Puzzles: node colourings of the board `G(J)` by DJ classes of a seed `L`,
//! and their correspondence with the classes over `L(J)`.

mod board;
mod prediagram;
mod reconstruct;
mod search;

pub use board::{Board, Square, DEFAULT_NODE_CAP};
pub use prediagram::{AdjacencyGroup, ClassSet, Prediagram};
pub use reconstruct::{puzzle_to_charmap, Reconstructor};
pub use search::{
    enumerate_realizable, enumerate_realizable_naive, solve, Method, Puzzle, PuzzleRun, SearchConfig, DEFAULT_NAIVE_CAP,
};

use crate::charmap::DualCharMap;
use crate::gf2::BitVec;

/// A `p`-coloured edge between two classes, carrying the vector `ψ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct EdgeLabel {
    pub p: usize,
    pub psi: BitVec,
}

impl EdgeLabel {
    pub fn is_trivial(&self) -> bool {
        self.psi.is_zero()
    }
}

/// The unique `ψ` with `λ̄₂(i) = λ̄₁(i) + λ₁(p)_i ψ` for all `i ≤ n` (and
/// `ψ_{p-n} = 0` when `p > n`), if there is one.
pub fn edge_label(d1: &DualCharMap, d2: &DualCharMap, p: usize) -> Option<BitVec> {
    let (n, m) = (d1.n(), d1.m());
    if d2.n() != n || d2.m() != m || p == 0 || p > m {
        return None;
    }
    let lp = d1.primal_color(p);
    let psi = if p <= n {
        d2.row(p) + d1.row(p)
    } else {
        if lp.is_zero() {
            return (d1 == d2).then(|| BitVec::zero(m - n));
        }
        let i = lp.bits().trailing_zeros() as usize + 1;
        let psi = d2.row(i) + d1.row(i);
        if psi.get(p - n) {
            return None;
        }
        psi
    };
    let ok = (1..=n).all(|i| {
        let expect = if lp.get(i) { d1.row(i) + psi } else { d1.row(i) };
        d2.row(i) == expect
    });
    ok.then_some(psi)
}
