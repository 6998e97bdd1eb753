use std::collections::HashMap;

use crate::charmap::{check_dual_nonsingular, primal, DualCharMap};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gf2::BitVec;

use super::edge_label;

/// A set of class indices, packed 64 to a word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ClassSet {
    len: usize,
    words: Vec<u64>,
}

impl ClassSet {
    pub fn empty(len: usize) -> Self {
        ClassSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut s = Self::empty(len);
        s.insert(i);
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn intersect_with(&mut self, other: &ClassSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    pub fn retain_only(&mut self, i: usize) {
        let keep = self.contains(i);
        self.words.fill(0);
        if keep {
            self.insert(i);
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(k * 64 + t)
            })
        })
    }
}

/// The `ψ` vectors labelling the `p`-edges out of one class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdjacencyGroup {
    pub p: usize,
    pub psis: Vec<BitVec>,
}

impl AdjacencyGroup {
    pub fn contains(&self, psi: &BitVec) -> bool {
        self.psis.binary_search(psi).is_ok()
    }

    pub fn is_closed(&self) -> bool {
        self.psis
            .iter()
            .all(|a| self.psis.iter().all(|b| self.contains(&(*a + *b))))
    }
}

/// The graph on `CM(L)` whose `p`-coloured edges are the pairs admitting an
/// edge label at `p`.
#[derive(Clone, Debug)]
pub struct Prediagram {
    complex: SimplicialComplex,
    classes: Vec<DualCharMap>,
    index: HashMap<Vec<u64>, usize>,
    adj: Vec<Vec<Vec<(usize, BitVec)>>>,
    components: Vec<Vec<ClassSet>>,
}

impl Prediagram {
    /// Tests every ordered pair of classes (self-pairs included) at every vertex.
    /// Classes are stored sorted by their primal rendering.
    pub fn build(classes: &[DualCharMap], k: &SimplicialComplex) -> Result<Self> {
        for d in classes {
            if d.n() != k.n() || d.m() != k.m() {
                return Err(Error::ShapeMismatch(format!(
                    "dual map with n={} m={} over a complex with n={} m={}",
                    d.n(),
                    d.m(),
                    k.n(),
                    k.m()
                )));
            }
            if !check_dual_nonsingular(d, k) {
                return Err(Error::NonSingularityViolated);
            }
        }
        let mut keyed: Vec<_> = classes.iter().map(|d| (primal(d), d.clone())).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        let classes: Vec<DualCharMap> = keyed.into_iter().map(|(_, d)| d).collect();

        let (count, m) = (classes.len(), k.m());
        let index = classes.iter().enumerate().map(|(i, d)| (d.head(), i)).collect();
        let mut adj = vec![vec![Vec::new(); m]; count];
        for (a, da) in classes.iter().enumerate() {
            for (b, db) in classes.iter().enumerate() {
                for p in 1..=m {
                    if let Some(psi) = edge_label(da, db, p) {
                        adj[a][p - 1].push((b, psi));
                    }
                }
            }
        }
        let components = adj
            .iter()
            .map(|per_p: &Vec<Vec<(usize, BitVec)>>| {
                per_p
                    .iter()
                    .map(|list| {
                        let mut s = ClassSet::empty(count);
                        for &(t, _) in list {
                            s.insert(t);
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        Ok(Prediagram {
            complex: k.clone(),
            classes,
            index,
            adj,
            components,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[DualCharMap] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &DualCharMap {
        &self.classes[i]
    }

    pub fn index_of(&self, d: &DualCharMap) -> Option<usize> {
        self.index.get(&d.head()).copied()
    }

    /// `p`-neighbours of class `c` with their edge vectors, self included.
    pub fn neighbours(&self, c: usize, p: usize) -> &[(usize, BitVec)] {
        &self.adj[c][p - 1]
    }

    pub fn psi(&self, from: usize, p: usize, to: usize) -> Option<BitVec> {
        self.adj[from][p - 1]
            .iter()
            .find(|&&(t, _)| t == to)
            .map(|&(_, psi)| psi)
    }

    /// The connected component of `c` in the `p`-coloured subgraph.
    pub fn component(&self, c: usize, p: usize) -> &ClassSet {
        &self.components[c][p - 1]
    }

    pub fn group(&self, c: usize, p: usize) -> AdjacencyGroup {
        let mut psis: Vec<BitVec> = self.adj[c][p - 1].iter().map(|&(_, psi)| psi).collect();
        psis.sort();
        AdjacencyGroup { p, psis }
    }

    /// Classes `γ` with a `q`-edge from `a` and a `p`-edge from `b`.
    pub fn possible_missing_pieces(&self, a: usize, p: usize, b: usize, q: usize) -> ClassSet {
        let mut s = self.component(a, q).clone();
        s.intersect_with(self.component(b, p));
        s
    }

    /// Missing piece of the square with edges `base -p- a` and `base -q- b`.
    pub fn complete_square(&self, base: usize, p: usize, a: usize, q: usize, b: usize) -> Result<Option<usize>> {
        let m = self.complex.m();
        if p == q || p == 0 || q == 0 || p > m || q > m {
            return Err(Error::InvalidEdges);
        }
        let (Some(psi_a), Some(psi_b)) = (self.psi(base, p, a), self.psi(base, q, b)) else {
            return Err(Error::InvalidEdges);
        };
        Ok(self.missing_piece_with(base, p, a, psi_a, q, b, psi_b))
    }

    #[allow(clippy::too_many_arguments)]
    fn missing_piece_with(
        &self,
        base: usize,
        p: usize,
        a: usize,
        psi_a: BitVec,
        q: usize,
        b: usize,
        psi_b: BitVec,
    ) -> Option<usize> {
        let candidates = self.possible_missing_pieces(a, p, b, q);
        match candidates.count() {
            0 => None,
            1 => candidates.iter().next(),
            _ => {
                let d = &self.classes[base];
                let (lp, lq) = (d.primal_color(p), d.primal_color(q));
                let head: Vec<u64> = (1..=d.n())
                    .map(|i| {
                        let mut row = d.row(i);
                        if lp.get(i) {
                            row += psi_a;
                        }
                        if lq.get(i) {
                            row += psi_b;
                        }
                        row.bits()
                    })
                    .collect();
                self.index.get(&head).copied().filter(|&g| candidates.contains(g))
            }
        }
    }

    /// Like [`Prediagram::complete_square`] for edges already known to exist.
    pub(crate) fn missing_piece(&self, base: usize, p: usize, a: usize, q: usize, b: usize) -> Option<usize> {
        let psi_a = self.psi(base, p, a)?;
        let psi_b = self.psi(base, q, b)?;
        self.missing_piece_with(base, p, a, psi_a, q, b, psi_b)
    }
}
