//! Branch-and-bound enumeration of DJ classes.
//!
//! [`garrison_scott`] fixes `λ(i) = e_i` on the facet `{1..n}` and assigns the
//! remaining columns left to right, striking every subset sum of an earlier
//! face that would close a facet. [`idcm_garrison_scott`] works on the dual
//! side: the last `m - n` dual colours are the standard basis and the first
//! `n` are assigned from `n` down to `1`, pairwise distinct, avoiding the
//! subset sums dictated by the cofacet power sets.

use crate::charmap::{primal, CharMap, DualCharMap};
use crate::complex::{lex_cmp, SimplicialComplex};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, SpanSieve};
use crate::par;

/// Largest colour space the sieve will allocate (`2^24` entries).
pub const MAX_SIEVE_DIM: usize = 24;

/// Output of an enumerator together with the number of search-tree nodes visited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration<T> {
    pub classes: Vec<T>,
    pub nodes: u64,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim > MAX_SIEVE_DIM {
        return Err(Error::CapExceeded {
            size: 1u128 << dim,
            cap: 1u128 << MAX_SIEVE_DIM,
        });
    }
    Ok(())
}

/// Removes masks contained in another mask of the list.
fn keep_maximal(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(lex_cmp(*a, *b)));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::new();
    for s in sets {
        if !kept.iter().any(|&k| s & !k == 0) {
            kept.push(s);
        }
    }
    kept
}

fn gather(colors: &[u64], mask: u64, buf: &mut Vec<u64>) {
    buf.clear();
    let mut bits = mask;
    while bits != 0 {
        buf.push(colors[bits.trailing_zeros() as usize]);
        bits &= bits - 1;
    }
}

/// Per-column constraint faces: for column `c`, the maximal `σ ⊆ [c-1]` with
/// `σ ∪ {c}` a face.
fn column_constraints(k: &SimplicialComplex) -> Vec<Vec<u64>> {
    (k.n() + 1..=k.m())
        .map(|c| {
            let below = (1u64 << (c - 1)) - 1;
            let bit = 1u64 << (c - 1);
            let sets = k
                .facet_masks()
                .iter()
                .filter(|&&f| f & bit != 0)
                .map(|&f| f & below)
                .collect();
            keep_maximal(sets)
        })
        .collect()
}

struct PrimalSearch<'a> {
    n: usize,
    constraints: &'a [Vec<u64>],
    sieve: SpanSieve,
    buf: Vec<u64>,
    colors: Vec<u64>,
    found: Vec<Vec<u64>>,
    nodes: u64,
}

impl PrimalSearch<'_> {
    fn candidates(&mut self, level: usize) -> Vec<u64> {
        self.sieve.clear();
        self.sieve.mark(0);
        for &sigma in &self.constraints[level] {
            gather(&self.colors, sigma, &mut self.buf);
            self.sieve.mark_subset_sums(&self.buf);
        }
        (1u64..1 << self.n).filter(|&x| !self.sieve.contains(x)).collect()
    }

    fn descend(&mut self, level: usize) {
        if level == self.constraints.len() {
            self.found.push(self.colors.clone());
            return;
        }
        let column = self.n + level;
        for x in self.candidates(level) {
            self.nodes += 1;
            self.colors[column] = x;
            self.descend(level + 1);
        }
    }
}

fn colors_to_map(n: usize, colors: &[u64]) -> CharMap {
    let mut rows = vec![0u64; n];
    for (j, &c) in colors.iter().enumerate() {
        for (i, row) in rows.iter_mut().enumerate() {
            *row |= (c >> i & 1) << j;
        }
    }
    CharMap::from_canonical(BitMatrix::from_row_bits(colors.len(), &rows).expect("fits")).expect("leading identity")
}

/// All DJ classes over `k`, which must have `{1..n}` as a facet.
pub fn garrison_scott(k: &SimplicialComplex) -> Result<Vec<CharMap>> {
    garrison_scott_with(k, 1).map(|e| e.classes)
}

pub fn garrison_scott_with(k: &SimplicialComplex, workers: usize) -> Result<Enumeration<CharMap>> {
    if !k.is_facet_first() {
        return Err(Error::NotFacetFirst);
    }
    let n = k.n();
    check_dim(n)?;
    let constraints = column_constraints(k);
    let mut colors = vec![0u64; k.m()];
    for (i, c) in colors.iter_mut().take(n).enumerate() {
        *c = 1 << i;
    }
    let fresh = |colors: Vec<u64>| PrimalSearch {
        n,
        constraints: &constraints,
        sieve: SpanSieve::new(n),
        buf: Vec::with_capacity(n),
        colors,
        found: Vec::new(),
        nodes: 0,
    };

    let (found, nodes) = if constraints.is_empty() {
        (vec![colors], 1)
    } else {
        // fan out over the choices for the first free column
        let mut root = fresh(colors.clone());
        let first = root.candidates(0);
        let parts = par::map_ordered(&first, workers, |&x| {
            let mut c = colors.clone();
            c[n] = x;
            let mut s = fresh(c);
            s.descend(1);
            (s.found, s.nodes + 1)
        });
        let nodes = 1 + parts.iter().map(|p| p.1).sum::<u64>();
        (parts.into_iter().flat_map(|p| p.0).collect(), nodes)
    };

    let mut classes: Vec<CharMap> = found.iter().map(|c| colors_to_map(n, c)).collect();
    classes.sort();
    Ok(Enumeration { classes, nodes })
}

/// Per-vertex constraints from the cofacet power sets: for vertex `i`, the
/// maximal `I \ {i}` over all `I` whose least element is `i`.
fn cofacet_constraints(k: &SimplicialComplex) -> Vec<Vec<u64>> {
    let cf = k.cofacet_powersets();
    (1..=k.n())
        .map(|i| {
            let bit = 1u64 << (i - 1);
            let below = bit - 1;
            let rests = cf
                .iter()
                .filter(|&&s| s & bit != 0 && s & below == 0)
                .map(|&s| s & !bit)
                .collect();
            keep_maximal(rests)
        })
        .collect()
}

struct DualSearch<'a> {
    width: usize,
    constraints: &'a [Vec<u64>],
    sieve: SpanSieve,
    buf: Vec<u64>,
    colors: Vec<u64>,
    found: Vec<Vec<u64>>,
    nodes: u64,
}

impl DualSearch<'_> {
    /// `S_i`: nonzero, unused by later vertices, and outside every forbidden sum.
    fn candidates(&mut self, i: usize) -> Vec<u64> {
        self.sieve.clear();
        self.sieve.mark(0);
        for &c in &self.colors[i..] {
            self.sieve.mark(c);
        }
        for &rest in &self.constraints[i - 1] {
            gather(&self.colors, rest, &mut self.buf);
            self.sieve.mark_subset_sums(&self.buf);
        }
        (1u64..1 << self.width).filter(|&x| !self.sieve.contains(x)).collect()
    }

    fn descend(&mut self, i: usize) {
        for x in self.candidates(i) {
            self.nodes += 1;
            self.colors[i - 1] = x;
            if i == 1 {
                self.found.push(self.colors.clone());
            } else {
                self.descend(i - 1);
            }
        }
    }
}

/// All injective dual characteristic maps over `k` (which must have `{1..n}`
/// as a facet), sorted by their primal rendering.
pub fn idcm_garrison_scott(k: &SimplicialComplex) -> Result<Vec<DualCharMap>> {
    idcm_garrison_scott_with(k, 1).map(|e| e.classes)
}

pub fn idcm_garrison_scott_with(k: &SimplicialComplex, workers: usize) -> Result<Enumeration<DualCharMap>> {
    if !k.is_facet_first() {
        return Err(Error::NotFacetFirst);
    }
    let (n, m) = (k.n(), k.m());
    let width = m - n;
    check_dim(width)?;
    let constraints = cofacet_constraints(k);
    let mut colors = vec![0u64; m];
    for j in 0..width {
        colors[n + j] = 1 << j;
    }
    let fresh = |colors: Vec<u64>| DualSearch {
        width,
        constraints: &constraints,
        sieve: SpanSieve::new(width),
        buf: Vec::with_capacity(width),
        colors,
        found: Vec::new(),
        nodes: 0,
    };

    let (found, nodes) = if n == 0 {
        (vec![colors], 1)
    } else {
        let mut root = fresh(colors.clone());
        let first = root.candidates(n);
        let parts = par::map_ordered(&first, workers, |&x| {
            let mut c = colors.clone();
            c[n - 1] = x;
            let mut s = fresh(c);
            if n == 1 {
                s.found.push(s.colors.clone());
            } else {
                s.descend(n - 1);
            }
            (s.found, s.nodes + 1)
        });
        let nodes = 1 + parts.iter().map(|p| p.1).sum::<u64>();
        (parts.into_iter().flat_map(|p| p.0).collect(), nodes)
    };

    let mut classes: Vec<(CharMap, DualCharMap)> = found
        .iter()
        .map(|c| {
            let d = DualCharMap::from_head(n, m, &c[..n]);
            (primal(&d), d)
        })
        .collect();
    classes.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Enumeration {
        classes: classes.into_iter().map(|(_, d)| d).collect(),
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charmap::dualize;

    #[test]
    fn maximal_filter() {
        assert_eq!(keep_maximal(vec![0b011, 0b001, 0b110, 0b011]), vec![0b011, 0b110]);
    }

    #[test]
    fn pentagon_has_five_classes() {
        let p5 = SimplicialComplex::polygon(5);
        let classes = garrison_scott(&p5).unwrap();
        assert_eq!(classes.len(), 5);
        let rendered: Vec<String> = classes.iter().map(|c| c.matrix().to_string()).collect();
        assert!(rendered.contains(&"10110\n01011".to_string()));
    }

    #[test]
    fn square_has_three_classes() {
        let c4 = SimplicialComplex::polygon(4);
        assert_eq!(garrison_scott(&c4).unwrap().len(), 3);
        // the 4-cycle is a product of simplices: its duals are not injective
        assert!(idcm_garrison_scott(&c4).unwrap().is_empty());
    }

    #[test]
    fn idcm_initialization_and_membership() {
        let p5 = SimplicialComplex::polygon(5);
        let duals = idcm_garrison_scott(&p5).unwrap();
        for d in &duals {
            let tail: Vec<String> = (3..=5).map(|i| d.row(i).to_string()).collect();
            assert_eq!(tail, vec!["100", "010", "001"]);
        }
        let target = DualCharMap::from_head(2, 5, &[0b011, 0b110]);
        assert!(duals.contains(&target));
        let via_primal: Vec<DualCharMap> = garrison_scott(&p5).unwrap().iter().map(dualize).collect();
        assert_eq!(duals, via_primal);
    }

    #[test]
    fn requires_facet_first() {
        let star =
            SimplicialComplex::from_facets(5, &[vec![1, 3], vec![3, 5], vec![5, 2], vec![2, 4], vec![4, 1]]).unwrap();
        assert_eq!(garrison_scott(&star), Err(Error::NotFacetFirst));
        assert_eq!(idcm_garrison_scott(&star), Err(Error::NotFacetFirst));
    }

    #[test]
    fn single_simplex() {
        let s = SimplicialComplex::from_facets(3, &[vec![1, 2, 3]]).unwrap();
        let classes = garrison_scott(&s).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].matrix(), &BitMatrix::identity(3));
    }

    #[test]
    fn workers_do_not_change_output() {
        let (k, _) = SimplicialComplex::polygon(6)
            .wedged(&crate::complex::WedgeTuple::parse("2,2,1,1,1,1").unwrap())
            .unwrap();
        let (k, _) = k.relabel_facet_first();
        let a = garrison_scott_with(&k, 1).unwrap();
        let b = garrison_scott_with(&k, 4).unwrap();
        assert_eq!(a, b);
    }
}
