//! Characteristic maps, their canonical DJ-class representatives and duals.
//!
//! A class over a complex whose first facet is `{1, ..., n}` is stored as the
//! unique representative `(I_n | M)`. Its dual is the `m x (m - n)` matrix with
//! `M` on top of `I_{m-n}`; row `i` is the dual colour of vertex `i`.

use std::fmt;

use crate::complex::{Face, Permutation, SimplicialComplex};
use crate::error::{Error, Result};
use crate::gf2::{is_independent, low_mask, BitMatrix, BitVec};

/// A canonical `(I_n | M)` representative of a DJ class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharMap {
    matrix: BitMatrix,
}

impl CharMap {
    /// Wraps a matrix already of the form `(I_n | M)`.
    pub fn from_canonical(matrix: BitMatrix) -> Result<Self> {
        let n = matrix.nrows();
        if matrix.ncols() < n {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix has fewer columns than rows",
                n,
                matrix.ncols()
            )));
        }
        let id = low_mask(n);
        let ok = matrix.rows().iter().enumerate().all(|(i, r)| r.bits() & id == 1 << i);
        if !ok {
            return Err(Error::ShapeMismatch("leading block is not the identity".into()));
        }
        Ok(CharMap { matrix })
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn m(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    /// The colour `λ(v)` of vertex `v`.
    pub fn color(&self, v: usize) -> BitVec {
        self.matrix.column(v)
    }

    /// Header `n m`, then the rows.
    pub fn render(&self) -> String {
        format!("{} {}\n{}\n", self.n(), self.m(), self.matrix)
    }
}

impl fmt::Display for CharMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for CharMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharMap({:?})", self.matrix)
    }
}

/// The dual of a canonical class: `M` stacked over `I_{m-n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DualCharMap {
    n: usize,
    matrix: BitMatrix,
}

impl DualCharMap {
    pub fn new(n: usize, matrix: BitMatrix) -> Result<Self> {
        let m = matrix.nrows();
        if n > m || matrix.ncols() != m - n {
            return Err(Error::ShapeMismatch(format!(
                "dual of an n={n} map must be {m}x{}, got {}x{}",
                m.saturating_sub(n),
                m,
                matrix.ncols()
            )));
        }
        let ok = (0..m - n).all(|j| matrix.rows()[n + j].bits() == 1 << j);
        if !ok {
            return Err(Error::ShapeMismatch(
                "bottom block of a dual map must be the identity".into(),
            ));
        }
        Ok(DualCharMap { n, matrix })
    }

    /// Builds a dual from its top `n` rows, given as packed words of width `m - n`.
    pub fn from_head(n: usize, m: usize, head: &[u64]) -> Self {
        debug_assert_eq!(head.len(), n);
        let width = m - n;
        let rows: Vec<u64> = head
            .iter()
            .map(|&r| r & low_mask(width))
            .chain((0..width).map(|j| 1u64 << j))
            .collect();
        DualCharMap {
            n,
            matrix: BitMatrix::from_row_bits(width, &rows).expect("width below 64"),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn width(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    /// Dual colour `λ̄(i)` (1-based).
    pub fn row(&self, i: usize) -> BitVec {
        self.matrix.row(i)
    }

    /// The packed top rows `λ̄(1), ..., λ̄(n)`; they determine the class.
    pub fn head(&self) -> Vec<u64> {
        self.matrix.rows()[..self.n].iter().map(BitVec::bits).collect()
    }

    /// The primal colour `λ(p)` read off the dual.
    pub fn primal_color(&self, p: usize) -> BitVec {
        let n = self.n;
        if p <= n {
            return BitVec::unit(n, p);
        }
        let mut bits = 0u64;
        for i in 0..n {
            bits |= (self.matrix.rows()[i].bits() >> (p - n - 1) & 1) << i;
        }
        BitVec::from_bits(n, bits)
    }

    /// Header `dual n m`, then the `m` rows.
    pub fn render(&self) -> String {
        format!("dual {} {}\n{}\n", self.n, self.m(), self.matrix)
    }
}

impl fmt::Display for DualCharMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for DualCharMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DualCharMap(n={}, {:?})", self.n, self.matrix)
    }
}

fn check_shape(matrix: &BitMatrix, k: &SimplicialComplex) -> Result<()> {
    if matrix.nrows() != k.n() || matrix.ncols() != k.m() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} matrix over a complex with n={} m={}",
            matrix.nrows(),
            matrix.ncols(),
            k.n(),
            k.m()
        )));
    }
    Ok(())
}

/// Non-singularity: the columns of every facet are linearly independent.
pub fn is_characteristic(matrix: &BitMatrix, k: &SimplicialComplex) -> Result<bool> {
    check_shape(matrix, k)?;
    let cols = matrix.columns();
    Ok(facets_independent(&cols, k))
}

fn facets_independent(cols: &[BitVec], k: &SimplicialComplex) -> bool {
    let dim = k.n();
    let mut buf = Vec::with_capacity(dim);
    k.facets().all(|f| {
        buf.clear();
        buf.extend(f.vertices().into_iter().map(|v| cols[v - 1]));
        is_independent(&buf, dim)
    })
}

/// Reduces a characteristic map to its `(I_n | M)` representative.
pub fn canonicalize(matrix: &BitMatrix, k: &SimplicialComplex) -> Result<CharMap> {
    if !is_characteristic(matrix, k)? {
        return Err(Error::NonSingularityViolated);
    }
    let pivots: Vec<usize> = (1..=k.n()).collect();
    let reduced = matrix
        .reduce_to_identity(&pivots)
        .map_err(|_| Error::NonSingularityViolated)?;
    CharMap::from_canonical(reduced)
}

pub fn dualize(cm: &CharMap) -> DualCharMap {
    let (n, m) = (cm.n(), cm.m());
    let head: Vec<u64> = cm.matrix.rows().iter().map(|r| r.bits() >> n).collect();
    DualCharMap::from_head(n, m, &head)
}

pub fn primal(d: &DualCharMap) -> CharMap {
    let (n, m) = (d.n(), d.m());
    let rows: Vec<u64> = d.head().iter().enumerate().map(|(i, &h)| 1u64 << i | h << n).collect();
    CharMap {
        matrix: BitMatrix::from_row_bits(m, &rows).expect("width below 64"),
    }
}

/// Dual non-singularity: the rows of every facet complement form a basis.
pub fn check_dual_nonsingular(d: &DualCharMap, k: &SimplicialComplex) -> bool {
    if d.m() != k.m() || d.n() != k.n() {
        return false;
    }
    let width = d.width();
    let all = k.vertex_mask();
    let mut buf = Vec::with_capacity(width);
    k.facet_masks().iter().all(|&f| {
        buf.clear();
        let mut bits = all & !f;
        while bits != 0 {
            buf.push(d.matrix.rows()[bits.trailing_zeros() as usize]);
            bits &= bits - 1;
        }
        is_independent(&buf, width)
    })
}

/// A primal matrix whose row space is the annihilator of the dual's columns.
pub fn primal_from_dual_matrix(dual: &BitMatrix) -> BitMatrix {
    dual.transpose().kernel_basis().transpose()
}

/// A map carried onto a relabeled complex: `labels[t - 1]` is the vertex of the
/// source complex that vertex `t` of `complex` stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Framed {
    pub complex: SimplicialComplex,
    pub labels: Vec<usize>,
    pub map: CharMap,
}

/// Colours of the link vertices modulo the span of `sigma`'s colours,
/// indexed like `vertices`.
fn quotient_colors(cm: &CharMap, sigma: &Face, k: &SimplicialComplex, vertices: &[usize]) -> Result<Vec<BitVec>> {
    let s = sigma.mask();
    let facet = k
        .facet_masks()
        .iter()
        .copied()
        .find(|&f| s & !f == 0)
        .ok_or_else(|| Error::NotAFace(sigma.vertices()))?;
    quotient_colors_in(cm, sigma, facet, vertices)
}

/// As [`quotient_colors`], given a facet containing `sigma`.
fn quotient_colors_in(cm: &CharMap, sigma: &Face, facet: u64, vertices: &[usize]) -> Result<Vec<BitVec>> {
    let s = sigma.mask();
    let mut pivots = sigma.vertices();
    pivots.extend(Face::from_mask(facet & !s).vertices());
    let reduced = cm
        .matrix
        .reduce_to_identity(&pivots)
        .map_err(|_| Error::NonSingularityViolated)?;
    let drop = sigma.len();
    let dim = cm.n() - drop;
    Ok(vertices
        .iter()
        .map(|&v| BitVec::from_bits(dim, reduced.column(v).bits() >> drop))
        .collect())
}

/// `Proj_σ λ` over the link of `σ`, with the link relabeled facet-first.
pub fn project(cm: &CharMap, sigma: &Face, k: &SimplicialComplex) -> Result<Framed> {
    check_shape(&cm.matrix, k)?;
    let (link, old) = k.link(sigma)?;
    let colors = quotient_colors(cm, sigma, k, &old)?;
    let raw = BitMatrix::from_columns(cm.n() - sigma.len(), &colors)?;
    let (framed, perm) = link.relabel_facet_first();
    let map = canonicalize(&raw.permute_columns(perm.images()), &framed)?;
    let inv = perm.inverse();
    let labels = (1..=framed.m()).map(|t| old[inv.image(t) - 1]).collect();
    Ok(Framed {
        complex: framed,
        labels,
        map,
    })
}

/// `Proj_σ λ` read through an explicit identification of the link with
/// `target`: vertex `t` of `target` is vertex `vertex_map[t - 1]` of `k`.
pub fn project_onto(
    cm: &CharMap,
    sigma: &Face,
    k: &SimplicialComplex,
    target: &SimplicialComplex,
    vertex_map: &[usize],
) -> Result<CharMap> {
    check_shape(&cm.matrix, k)?;
    if vertex_map.len() != target.m() || cm.n() < sigma.len() || cm.n() - sigma.len() != target.n() {
        return Err(Error::ShapeMismatch("projection target does not match the link".into()));
    }
    let colors = quotient_colors(cm, sigma, k, vertex_map)?;
    let raw = BitMatrix::from_columns(target.n(), &colors)?;
    canonicalize(&raw, target)
}

/// [`project_onto`] with a known facet of `k` containing `sigma`.
pub(crate) fn project_onto_in(
    cm: &CharMap,
    sigma: &Face,
    facet: u64,
    target: &SimplicialComplex,
    vertex_map: &[usize],
) -> Result<CharMap> {
    let colors = quotient_colors_in(cm, sigma, facet, vertex_map)?;
    let raw = BitMatrix::from_columns(target.n(), &colors)?;
    canonicalize(&raw, target)
}

/// The `p`-wedge `cm1 ∧_p cm2` over `wed_p(K)`: projecting away the new copy
/// `p_2` gives `cm1`, projecting away `p_1` gives `cm2`.
pub fn wedge_maps(cm1: &CharMap, cm2: &CharMap, p: usize, psi: BitVec, k: &SimplicialComplex) -> Result<Framed> {
    check_shape(&cm1.matrix, k)?;
    check_shape(&cm2.matrix, k)?;
    let d1 = dualize(cm1);
    let d2 = dualize(cm2);
    match crate::puzzle::edge_label(&d1, &d2, p) {
        Some(label) if label == psi => {}
        _ => return Err(Error::NotAdjacent(p)),
    }
    let m = k.m();
    let mut rows: Vec<BitVec> = d1.matrix.rows().to_vec();
    rows.push(d1.row(p) + psi);
    let dual = BitMatrix::from_rows(d1.width(), rows)?;
    let raw = primal_from_dual_matrix(&dual);
    debug_assert_eq!(raw.nrows(), k.n() + 1);
    let wedge = k.wedge(p)?;
    let (framed, perm) = wedge.relabel_facet_first();
    let map = canonicalize(&raw.permute_columns(perm.images()), &framed)?;
    let inv = perm.inverse();
    let labels = (1..=m + 1).map(|t| inv.image(t)).collect();
    Ok(Framed {
        complex: framed,
        labels,
        map,
    })
}

/// Carries a canonical map through a vertex relabeling of its complex.
pub fn relabel_map(cm: &CharMap, perm: &Permutation, target: &SimplicialComplex) -> Result<CharMap> {
    canonicalize(&cm.matrix.permute_columns(perm.images()), target)
}

/// [`relabel_map`] for a map already known to be non-singular over `target`.
pub(crate) fn relabel_trusted(cm: &CharMap, perm: &Permutation) -> Result<CharMap> {
    let pivots: Vec<usize> = (1..=cm.n()).collect();
    let reduced = cm
        .matrix
        .permute_columns(perm.images())
        .reduce_to_identity(&pivots)
        .map_err(|_| Error::NonSingularityViolated)?;
    CharMap::from_canonical(reduced)
}
