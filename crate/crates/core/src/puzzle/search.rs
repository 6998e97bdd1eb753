use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::charmap::{dualize, relabel_trusted, CharMap};
use crate::complex::{Permutation, SimplicialComplex, VertexCopy, WedgeTuple};
use crate::error::{Error, Result};
use crate::gs::{garrison_scott_with, Enumeration};
use crate::par;

use super::{Board, ClassSet, Prediagram, Reconstructor, DEFAULT_NODE_CAP};

pub const DEFAULT_NAIVE_CAP: u128 = 10_000_000;

/// A colouring of the board nodes (in board order) by prediagram class indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Puzzle {
    assignment: Vec<usize>,
}

impl Puzzle {
    pub fn new(assignment: Vec<usize>) -> Self {
        Puzzle { assignment }
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn class_at(&self, t: usize) -> usize {
        self.assignment[t]
    }

    /// One line per node: `v_1 ... v_m : class`.
    pub fn render(&self, board: &Board) -> String {
        let mut out = String::new();
        for (v, c) in board.nodes().iter().zip(&self.assignment) {
            let coords: Vec<String> = v.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{} : {}", coords.join(" "), c);
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Method {
    Constructive,
    Naive,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SearchConfig {
    pub workers: usize,
    pub node_cap: u128,
    pub naive_cap: u128,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            workers: 1,
            node_cap: DEFAULT_NODE_CAP,
            naive_cap: DEFAULT_NAIVE_CAP,
        }
    }
}

struct Search<'a> {
    pre: &'a Prediagram,
    board: &'a Board,
    assign: Vec<usize>,
    found: Vec<Puzzle>,
    nodes: u64,
}

impl Search<'_> {
    fn candidates(&self, t: usize) -> Option<ClassSet> {
        let mut cand = ClassSet::full(self.pre.len());
        for &(s, k) in self.board.earlier_neighbours(t) {
            cand.intersect_with(self.pre.component(self.assign[s], k));
        }
        for sq in self.board.squares_closing_at(t) {
            let piece = self.pre.missing_piece(
                self.assign[sq.base],
                sq.p,
                self.assign[sq.along_p],
                sq.q,
                self.assign[sq.along_q],
            )?;
            cand.retain_only(piece);
        }
        Some(cand)
    }

    fn descend(&mut self, t: usize) {
        if t == self.board.len() {
            self.found.push(Puzzle::new(self.assign.clone()));
            return;
        }
        let Some(cand) = self.candidates(t) else {
            return;
        };
        for c in cand.iter() {
            self.nodes += 1;
            self.assign[t] = c;
            self.descend(t + 1);
        }
    }
}

/// Realizable puzzles, found by filling nodes in board order and keeping only
/// the classes compatible with every earlier neighbour and closed square.
pub fn enumerate_realizable(pre: &Prediagram, board: &Board, workers: usize) -> Enumeration<Puzzle> {
    let roots: Vec<usize> = (0..pre.len()).collect();
    let parts = par::map_ordered(&roots, workers, |&r| {
        let mut s = Search {
            pre,
            board,
            assign: vec![r; board.len()],
            found: Vec::new(),
            nodes: 1,
        };
        s.descend(1);
        (s.found, s.nodes)
    });
    let nodes = parts.iter().map(|p| p.1).sum();
    Enumeration {
        classes: parts.into_iter().flat_map(|p| p.0).collect(),
        nodes,
    }
}

/// Checks every total assignment against every edge and square.
pub fn enumerate_realizable_naive(pre: &Prediagram, board: &Board, cap: u128) -> Result<Enumeration<Puzzle>> {
    let (count, size) = (pre.len(), board.len());
    let total = (0..size).try_fold(1u128, |acc, _| acc.checked_mul(count as u128));
    match total {
        Some(total) if total <= cap => {}
        _ => {
            return Err(Error::CapExceeded {
                size: total.unwrap_or(u128::MAX),
                cap,
            })
        }
    }
    let mut found = Vec::new();
    let mut nodes = 0u64;
    if count == 0 {
        return Ok(Enumeration { classes: found, nodes });
    }
    let edges: Vec<(usize, usize, usize)> = board.edges().collect();
    let squares: Vec<_> = board.squares().copied().collect();
    let mut assign = vec![0usize; size];
    loop {
        nodes += 1;
        let edges_ok = edges
            .iter()
            .all(|&(s, t, k)| pre.component(assign[s], k).contains(assign[t]));
        let ok = edges_ok
            && squares.iter().all(|sq| {
                pre.missing_piece(assign[sq.base], sq.p, assign[sq.along_p], sq.q, assign[sq.along_q])
                    == Some(assign[sq.far])
            });
        if ok {
            found.push(Puzzle::new(assign.clone()));
        }
        // advance the odometer, last node fastest
        let Some(t) = (0..size).rev().find(|&t| assign[t] + 1 < count) else {
            break;
        };
        assign[t] += 1;
        assign[t + 1..].fill(0);
    }
    Ok(Enumeration { classes: found, nodes })
}

/// Result of the full puzzle pipeline for a seed and a wedge tuple.
#[derive(Clone, Debug)]
pub struct PuzzleRun {
    /// `L(J)` relabeled facet-first; the classes live over it.
    pub complex: SimplicialComplex,
    pub classes: Vec<CharMap>,
    pub seed_classes: usize,
    pub seed_nodes: u64,
    pub search_nodes: u64,
}

/// Enumerates the classes over `seed(J)` through puzzles over `G(J)`.
///
/// The seed classes come from the branch-and-bound enumerator. The output is
/// expressed over `wedged(seed, J)` relabeled facet-first and sorted, exactly
/// as a direct enumeration of that complex would report it.
pub fn solve(seed: &SimplicialComplex, j: &WedgeTuple, method: Method, config: &SearchConfig) -> Result<PuzzleRun> {
    if j.m() != seed.m() {
        return Err(Error::LengthMismatch {
            expected: seed.m(),
            found: j.m(),
        });
    }
    let (seed_f, seed_perm) = seed.relabel_facet_first();
    let j_f = j.permuted(&seed_perm);
    let board = Board::with_cap(&j_f, config.node_cap)?;
    let rec = Reconstructor::new(&seed_f, &board)?;
    let (target, to_target) = output_frame(seed, j, &seed_perm, &rec)?;

    let seed_run = garrison_scott_with(&seed_f, config.workers)?;
    let duals: Vec<_> = seed_run.classes.iter().map(dualize).collect();
    let pre = Prediagram::build(&duals, &seed_f)?;
    let puzzles = match method {
        Method::Constructive => enumerate_realizable(&pre, &board, config.workers),
        Method::Naive => enumerate_realizable_naive(&pre, &board, config.naive_cap)?,
    };

    let maps = par::map_ordered(&puzzles.classes, config.workers, |pz| {
        let map = rec.reconstruct(&pre, pz)?;
        match &to_target {
            Some(perm) => relabel_trusted(&map, perm),
            None => Ok(map),
        }
    });
    let mut classes = maps.into_iter().collect::<Result<Vec<_>>>()?;
    classes.sort();
    if classes.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NotRealizable("two puzzles give the same class".into()));
    }
    Ok(PuzzleRun {
        complex: target,
        classes,
        seed_classes: pre.len(),
        seed_nodes: seed_run.nodes,
        search_nodes: puzzles.nodes,
    })
}

/// The facet-first frame of `wedged(seed, J)` and, unless it coincides with the
/// reconstructor's frame, the relabeling between them.
fn output_frame(
    seed: &SimplicialComplex,
    j: &WedgeTuple,
    seed_perm: &Permutation,
    rec: &Reconstructor,
) -> Result<(SimplicialComplex, Option<Permutation>)> {
    let (wedged, layout) = seed.wedged(j)?;
    let (target, target_perm) = wedged.relabel_facet_first();
    let mut images = vec![0; target.m()];
    for k in 1..=seed.m() {
        for copy in 1..=j.get(k) {
            let from = rec.label(VertexCopy {
                base: seed_perm.image(k),
                copy,
            });
            images[from - 1] = target_perm.image(layout.label(VertexCopy { base: k, copy }));
        }
    }
    let perm = Permutation::from_images(images)?;
    if rec.complex().relabel(&perm) != target {
        return Err(Error::NotRealizable("wedge frames disagree".into()));
    }
    Ok((target, (!perm.is_identity()).then_some(perm)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gs::garrison_scott;

    fn pentagon() -> (SimplicialComplex, Prediagram) {
        let p5 = SimplicialComplex::polygon(5);
        let duals: Vec<_> = garrison_scott(&p5).unwrap().iter().map(dualize).collect();
        let pre = Prediagram::build(&duals, &p5).unwrap();
        (p5, pre)
    }

    fn board(j: &str) -> Board {
        Board::new(&WedgeTuple::parse(j).unwrap()).unwrap()
    }

    #[test]
    fn trivial_board_gives_one_puzzle_per_class() {
        let (_, pre) = pentagon();
        let b = board("1,1,1,1,1");
        let fast = enumerate_realizable(&pre, &b, 1);
        let slow = enumerate_realizable_naive(&pre, &b, DEFAULT_NAIVE_CAP).unwrap();
        assert_eq!(fast.classes.len(), 5);
        assert_eq!(fast.classes, slow.classes);
    }

    #[test]
    fn constructive_matches_naive() {
        let (_, pre) = pentagon();
        for j in ["2,1,1,1,1", "2,2,1,1,1", "1,1,3,1,1"] {
            let b = board(j);
            let fast = enumerate_realizable(&pre, &b, 1);
            let slow = enumerate_realizable_naive(&pre, &b, DEFAULT_NAIVE_CAP).unwrap();
            assert_eq!(fast.classes, slow.classes, "J = {j}");
        }
    }

    #[test]
    fn naive_cap() {
        let (_, pre) = pentagon();
        let b = board("2,2,2,2,2");
        assert!(matches!(
            enumerate_realizable_naive(&pre, &b, DEFAULT_NAIVE_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn render_lists_nodes() {
        let b = board("2,1,1,1,1");
        let pz = Puzzle::new(vec![0, 3]);
        assert_eq!(pz.render(&b), "1 1 1 1 1 : 0\n2 1 1 1 1 : 3\n");
    }

    #[test]
    fn pipeline_matches_direct_enumeration() {
        let p5 = SimplicialComplex::polygon(5);
        let j = WedgeTuple::parse("2,1,1,1,1").unwrap();
        let run = solve(&p5, &j, Method::Constructive, &SearchConfig::default()).unwrap();
        let (wedged, _) = p5.wedged(&j).unwrap();
        let (framed, _) = wedged.relabel_facet_first();
        assert_eq!(run.complex, framed);
        assert_eq!(run.classes, garrison_scott(&framed).unwrap());
    }
}
