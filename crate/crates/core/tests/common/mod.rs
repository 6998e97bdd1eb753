#![allow(dead_code)]

use std::path::PathBuf;

use djpuzzle::{BitMatrix, CharMap, SimplicialComplex};

pub fn fixture(name: &str) -> SimplicialComplex {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    SimplicialComplex::parse(&text).unwrap()
}

/// Vectors are independent iff no nonempty subset sums to zero.
pub fn independent_by_subsets(vectors: &[u64]) -> bool {
    (1u64..1 << vectors.len()).all(|s| {
        let sum = (0..vectors.len())
            .filter(|&i| s >> i & 1 == 1)
            .fold(0u64, |acc, i| acc ^ vectors[i]);
        sum != 0
    })
}

/// Column `j` (0-based) of an `n`-row matrix given as row words.
pub fn column(rows: &[u64], j: usize) -> u64 {
    rows.iter()
        .enumerate()
        .fold(0u64, |acc, (i, r)| acc | (r >> j & 1) << i)
}

/// Every `(I_n | M)` whose facet columns pass the subset-sum test.
pub fn brute_force_classes(k: &SimplicialComplex) -> Vec<CharMap> {
    let (n, m) = (k.n(), k.m());
    let free = n * (m - n);
    assert!(free <= 20, "brute force over 2^{free} matrices");
    let mut out = Vec::new();
    for bits in 0u64..1 << free {
        let rows: Vec<u64> = (0..n)
            .map(|i| 1u64 << i | (bits >> (i * (m - n)) & ((1 << (m - n)) - 1)) << n)
            .collect();
        let ok = k.facet_masks().iter().all(|&f| {
            let cols: Vec<u64> = (0..m).filter(|&j| f >> j & 1 == 1).map(|j| column(&rows, j)).collect();
            independent_by_subsets(&cols)
        });
        if ok {
            let matrix = BitMatrix::from_row_bits(m, &rows).unwrap();
            out.push(CharMap::from_canonical(matrix).unwrap());
        }
    }
    out.sort();
    out
}

/// `min` of `reps` timings of `f`, in seconds.
pub fn best_of<T>(reps: usize, mut f: impl FnMut() -> T) -> (f64, T) {
    let mut best = f64::INFINITY;
    let mut last = None;
    for _ in 0..reps {
        let start = std::time::Instant::now();
        let out = f();
        best = best.min(start.elapsed().as_secs_f64());
        last = Some(out);
    }
    (best, last.unwrap())
}
