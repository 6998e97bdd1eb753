//! Pure simplicial complexes on the vertex set `1..=m`.
//!
//! Faces are vertex bitmasks (vertex `v` is bit `v - 1`), so subset tests are
//! single AND operations. Facets are kept deduplicated and sorted
//! lexicographically by their ascending vertex lists.
//!
//! Nothing here checks that a complex is a PL sphere; the puzzle method is only
//! correct for PL spheres and callers are trusted on that point.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::MAX_BITS;

/// Lexicographic comparison of two faces given as masks.
pub fn lex_cmp(a: u64, b: u64) -> Ordering {
    let (mut x, mut y) = (a, b);
    loop {
        match (x == 0, y == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (lx, ly) = (x.trailing_zeros(), y.trailing_zeros());
        if lx != ly {
            return lx.cmp(&ly);
        }
        x &= x - 1;
        y &= y - 1;
    }
}

pub(crate) fn mask_vertices(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut bits = mask;
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize + 1);
        bits &= bits - 1;
    }
    out
}

/// A set of vertices, sorted ascending.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Face {
    mask: u64,
}

impl Face {
    pub fn empty() -> Self {
        Face { mask: 0 }
    }

    pub fn from_mask(mask: u64) -> Self {
        Face { mask }
    }

    pub fn from_vertices(vertices: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &v in vertices {
            if v == 0 || v > MAX_BITS {
                return Err(Error::BadVertex { vertex: v, m: MAX_BITS });
            }
            let bit = 1u64 << (v - 1);
            if mask & bit != 0 {
                return Err(Error::DuplicateVertex(v));
            }
            mask |= bit;
        }
        Ok(Face { mask })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn vertices(&self) -> Vec<usize> {
        mask_vertices(self.mask)
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        (1..=MAX_BITS).contains(&v) && self.mask >> (v - 1) & 1 == 1
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.mask & !other.mask == 0
    }
}

/// A vertex relabeling: `image(old) = new`, both 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    new_of_old: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            new_of_old: (1..=m).collect(),
        }
    }

    pub fn from_images(new_of_old: Vec<usize>) -> Result<Self> {
        let m = new_of_old.len();
        let mut seen = vec![false; m];
        for &v in &new_of_old {
            if v == 0 || v > m || seen[v - 1] {
                return Err(Error::ShapeMismatch(format!(
                    "{new_of_old:?} is not a permutation of 1..={m}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { new_of_old })
    }

    pub fn len(&self) -> usize {
        self.new_of_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.new_of_old.is_empty()
    }

    pub fn image(&self, old: usize) -> usize {
        self.new_of_old[old - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.new_of_old
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.new_of_old.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { new_of_old: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.new_of_old.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn apply_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize + 1;
            out |= 1 << (self.image(v) - 1);
            bits &= bits - 1;
        }
        out
    }
}

/// The tuple `J = (j_1, ..., j_m)` of wedge multiplicities.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct WedgeTuple(Vec<usize>);

impl WedgeTuple {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(pos) = entries.iter().position(|&j| j == 0) {
            return Err(Error::Parse {
                line: 1,
                msg: format!("wedge entry {} is zero; entries must be positive", pos + 1),
            });
        }
        Ok(WedgeTuple(entries))
    }

    pub fn ones(m: usize) -> Self {
        WedgeTuple(vec![1; m])
    }

    /// Parses comma-separated positive integers, e.g. `2,1,1,1,1`.
    pub fn parse(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .enumerate()
            .map(|(i, t)| {
                t.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: 1,
                    msg: format!("wedge entry {} ({:?}) is not a positive integer", i + 1, t.trim()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    /// Total number of wedges performed: `sum(j_k) - m`.
    pub fn wedge_count(&self) -> usize {
        self.0.iter().sum::<usize>() - self.0.len()
    }

    pub fn permuted(&self, perm: &Permutation) -> WedgeTuple {
        let mut out = vec![0; self.m()];
        for (k, &j) in self.0.iter().enumerate() {
            out[perm.image(k + 1) - 1] = j;
        }
        WedgeTuple(out)
    }
}

impl fmt::Display for WedgeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Copy `copy` (1-based) of the original vertex `base`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct VertexCopy {
    pub base: usize,
    pub copy: usize,
}

/// Block labeling of the vertices of `K(J)`: the copies of vertex `k` occupy
/// the contiguous labels `offset(k) + 1 ..= offset(k) + j_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WedgeLayout {
    j: WedgeTuple,
    offsets: Vec<usize>,
}

impl WedgeLayout {
    pub fn new(j: &WedgeTuple) -> Self {
        let mut offsets = Vec::with_capacity(j.m());
        let mut acc = 0;
        for &jk in j.entries() {
            offsets.push(acc);
            acc += jk;
        }
        WedgeLayout { j: j.clone(), offsets }
    }

    pub fn tuple(&self) -> &WedgeTuple {
        &self.j
    }

    pub fn vertex_count(&self) -> usize {
        self.j.entries().iter().sum()
    }

    pub fn label(&self, c: VertexCopy) -> usize {
        debug_assert!(c.copy >= 1 && c.copy <= self.j.get(c.base));
        self.offsets[c.base - 1] + c.copy
    }

    pub fn copy_of(&self, label: usize) -> VertexCopy {
        let base = self.offsets.partition_point(|&o| o < label);
        VertexCopy {
            base,
            copy: label - self.offsets[base - 1],
        }
    }

    /// Mask of all copies of `base`.
    pub fn block_mask(&self, base: usize) -> u64 {
        let jk = self.j.get(base);
        ((1u64 << jk) - 1) << self.offsets[base - 1]
    }
}

#[derive(Deserialize)]
struct StructuredComplex {
    m: usize,
    facets: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct StructuredComplexOut {
    m: usize,
    facets: Vec<Vec<usize>>,
}

/// A pure simplicial complex given by its facets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex {
    m: usize,
    n: usize,
    facets: Vec<u64>,
}

impl SimplicialComplex {
    pub fn from_facets(m: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if m > MAX_BITS {
            return Err(Error::TooWide(m));
        }
        let masks = facets
            .iter()
            .map(|f| {
                if let Some(&v) = f.iter().find(|&&v| v == 0 || v > m) {
                    return Err(Error::BadVertex { vertex: v, m });
                }
                Face::from_vertices(f).map(|face| face.mask())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(m, masks)
    }

    pub(crate) fn from_masks(m: usize, mut masks: Vec<u64>) -> Result<Self> {
        if m > MAX_BITS {
            return Err(Error::TooWide(m));
        }
        if masks.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = masks[0].count_ones() as usize;
        let mut union = 0u64;
        for &f in &masks {
            let size = f.count_ones() as usize;
            if size != n {
                return Err(Error::NotPure {
                    expected: n,
                    found: size,
                });
            }
            if f >> m != 0 && m < 64 {
                let v = 64 - f.leading_zeros() as usize;
                return Err(Error::BadVertex { vertex: v, m });
            }
            union |= f;
        }
        if let Some(v) = (1..=m).find(|&v| union >> (v - 1) & 1 == 0) {
            return Err(Error::GhostVertex(v));
        }
        masks.sort_by(|a, b| lex_cmp(*a, *b));
        masks.dedup();
        Ok(SimplicialComplex { m, n, facets: masks })
    }

    /// The boundary of an `m`-gon with facets `{i, i+1}`.
    pub fn polygon(m: usize) -> Self {
        assert!(m >= 3);
        let facets: Vec<Vec<usize>> = (1..=m).map(|i| vec![i, i % m + 1]).collect();
        Self::from_facets(m, &facets).expect("polygon is valid")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Facet size (dimension + 1).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> isize {
        self.n as isize - 1
    }

    pub fn picard(&self) -> usize {
        self.m - self.n
    }

    pub fn facet_masks(&self) -> &[u64] {
        &self.facets
    }

    pub fn facets(&self) -> impl Iterator<Item = Face> + '_ {
        self.facets.iter().map(|&f| Face::from_mask(f))
    }

    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&f| mask_vertices(f)).collect()
    }

    pub fn vertex_mask(&self) -> u64 {
        crate::gf2::low_mask(self.m)
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        self.facets.iter().any(|&f| face.mask() & !f == 0)
    }

    pub fn has_facet(&self, mask: u64) -> bool {
        self.facets.binary_search_by(|f| lex_cmp(*f, mask)).is_ok()
    }

    /// True when `{1, ..., n}` is a facet, the frame every canonical map assumes.
    pub fn is_facet_first(&self) -> bool {
        self.has_facet(crate::gf2::low_mask(self.n))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.m {
            Err(Error::BadVertex { vertex: v, m: self.m })
        } else {
            Ok(())
        }
    }

    /// The link of `sigma`, relabeled onto `1..=m'` in ascending order of the
    /// original labels; the second value maps each new label to its old one.
    pub fn link(&self, sigma: &Face) -> Result<(SimplicialComplex, Vec<usize>)> {
        let s = sigma.mask();
        let containing: Vec<u64> = self.facets.iter().filter(|&&f| s & !f == 0).map(|&f| f & !s).collect();
        if containing.is_empty() || (self.m < 64 && s >> self.m != 0) {
            return Err(Error::NotAFace(sigma.vertices()));
        }
        let union = containing.iter().fold(0u64, |a, &f| a | f);
        let old = mask_vertices(union);
        let mut new_of_old = HashMap::new();
        for (i, &v) in old.iter().enumerate() {
            new_of_old.insert(v, i + 1);
        }
        let relabeled = containing
            .iter()
            .map(|&f| {
                mask_vertices(f)
                    .into_iter()
                    .fold(0u64, |acc, v| acc | 1 << (new_of_old[&v] - 1))
            })
            .collect();
        let link = Self::from_masks(old.len(), relabeled)?;
        Ok((link, old))
    }

    /// `wed_v(K) = (I * Lk(v)) ∪ (∂I * (K \ v))`. The copy `v_1` keeps label
    /// `v`; `v_2` is the new label `m + 1`.
    pub fn wedge(&self, v: usize) -> Result<SimplicialComplex> {
        self.check_vertex(v)?;
        if self.m + 1 > MAX_BITS {
            return Err(Error::TooWide(self.m + 1));
        }
        let vb = 1u64 << (v - 1);
        let nb = 1u64 << self.m;
        let mut out = Vec::with_capacity(self.facets.len() * 2);
        for &f in &self.facets {
            if f & vb != 0 {
                out.push(f | nb);
            } else {
                out.push(f | vb);
                out.push(f | nb);
            }
        }
        Self::from_masks(self.m + 1, out)
    }

    /// `K(J)` in the block labeling of [`WedgeLayout`]. A facet `F` of `K`
    /// yields the facets containing every copy of each vertex of `F` and all
    /// copies but one of each vertex outside `F`.
    pub fn wedged(&self, j: &WedgeTuple) -> Result<(SimplicialComplex, WedgeLayout)> {
        if j.m() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                found: j.m(),
            });
        }
        let layout = WedgeLayout::new(j);
        let total = layout.vertex_count();
        if total > MAX_BITS {
            return Err(Error::TooWide(total));
        }
        let mut out = Vec::new();
        for &f in &self.facets {
            let mut fixed = 0u64;
            let mut free = Vec::new();
            for k in 1..=self.m {
                if f >> (k - 1) & 1 == 1 {
                    fixed |= layout.block_mask(k);
                } else {
                    free.push(k);
                }
            }
            expand_missing(&layout, &free, fixed, &mut out);
        }
        Ok((Self::from_masks(total, out)?, layout))
    }

    /// Every subset of every facet complement.
    pub fn cofacet_powersets(&self) -> Vec<u64> {
        let all = self.vertex_mask();
        let mut set = BTreeSet::new();
        for &f in &self.facets {
            let co = all & !f;
            // enumerate submasks of co
            let mut sub = co;
            loop {
                set.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & co;
            }
        }
        let mut out: Vec<u64> = set.into_iter().collect();
        out.sort_by(|a, b| a.count_ones().cmp(&b.count_ones()).then(lex_cmp(*a, *b)));
        out
    }

    /// Relabels so that the lexicographically least facet becomes
    /// `{1, ..., n}`; the remaining vertices keep their relative order.
    pub fn relabel_facet_first(&self) -> (SimplicialComplex, Permutation) {
        let first = self.facets[0];
        let mut new_of_old = vec![0; self.m];
        let mut next = 1;
        for v in mask_vertices(first) {
            new_of_old[v - 1] = next;
            next += 1;
        }
        for v in 1..=self.m {
            if first >> (v - 1) & 1 == 0 {
                new_of_old[v - 1] = next;
                next += 1;
            }
        }
        let perm = Permutation { new_of_old };
        (self.relabel(&perm), perm)
    }

    pub fn relabel(&self, perm: &Permutation) -> SimplicialComplex {
        assert_eq!(perm.len(), self.m);
        let masks = self.facets.iter().map(|&f| perm.apply_mask(f)).collect();
        Self::from_masks(self.m, masks).expect("relabeling preserves validity")
    }

    /// Every ridge lies in exactly two facets.
    pub fn is_pseudo_manifold(&self) -> bool {
        let mut count: HashMap<u64, usize> = HashMap::new();
        for &f in &self.facets {
            let mut bits = f;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                *count.entry(f & !low).or_default() += 1;
                bits &= bits - 1;
            }
        }
        count.values().all(|&c| c == 2)
    }

    /// Text form: `m n` header, then one facet per line.
    pub fn render_text(&self) -> String {
        let mut s = format!("{} {}\n", self.m, self.n);
        for f in self.facet_lists() {
            let parts: Vec<String> = f.iter().map(usize::to_string).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn render_structured(&self) -> String {
        serde_json::to_string(&StructuredComplexOut {
            m: self.m,
            facets: self.facet_lists(),
        })
        .expect("serializable")
    }

    /// Accepts either the text form or a JSON object with `m` and `facets`.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            let parsed: StructuredComplex = serde_json::from_str(input).map_err(|e| Error::Parse {
                line: e.line(),
                msg: e.to_string(),
            })?;
            return Self::from_facets(parsed.m, &parsed.facets);
        }
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::EmptyInput)?;
        let nums = parse_ints(hline, header)?;
        if nums.len() != 2 {
            return Err(Error::Parse {
                line: hline,
                msg: "header must be \"m n\"".into(),
            });
        }
        let (m, n) = (nums[0], nums[1]);
        let mut facets = Vec::new();
        for (line, text) in lines {
            let f = parse_ints(line, text)?;
            if f.len() != n {
                return Err(Error::Parse {
                    line,
                    msg: format!("facet has {} vertices, header says {n}", f.len()),
                });
            }
            if let Some(&v) = f.iter().find(|&&v| v == 0 || v > m) {
                return Err(Error::Parse {
                    line,
                    msg: format!("vertex {v} outside 1..={m}"),
                });
            }
            facets.push(f);
        }
        Self::from_facets(m, &facets)
    }
}

fn parse_ints(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("expected a non-negative integer, found {t:?}"),
            })
        })
        .collect()
}

fn expand_missing(layout: &WedgeLayout, free: &[usize], acc: u64, out: &mut Vec<u64>) {
    match free.split_first() {
        None => out.push(acc),
        Some((&k, rest)) => {
            let block = layout.block_mask(k);
            for c in 1..=layout.tuple().get(k) {
                let missing = 1u64 << (layout.label(VertexCopy { base: k, copy: c }) - 1);
                expand_missing(layout, rest, acc | (block & !missing), out);
            }
        }
    }
}
