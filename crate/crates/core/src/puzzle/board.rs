use crate::complex::WedgeTuple;
use crate::error::{Error, Result};

pub const DEFAULT_NODE_CAP: u128 = 1 << 20;

/// A subsquare of the board, named by its four corners. `base` differs from
/// `along_p` in coordinate `p` and from `along_q` in coordinate `q`; `far`
/// differs from `base` in both.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Square {
    pub base: usize,
    pub p: usize,
    pub along_p: usize,
    pub q: usize,
    pub along_q: usize,
    pub far: usize,
}

/// The graph `G(J)`: nodes are the tuples `1 ≤ v_k ≤ j_k`, sorted by depth and
/// then lexicographically; edges join tuples differing in one coordinate.
#[derive(Clone, Debug)]
pub struct Board {
    j: WedgeTuple,
    nodes: Vec<Vec<usize>>,
    position: Vec<usize>,
    earlier: Vec<Vec<(usize, usize)>>,
    squares: Vec<Vec<Square>>,
}

fn depth_of(v: &[usize]) -> usize {
    v.iter().filter(|&&x| x != 1).count()
}

impl Board {
    pub fn new(j: &WedgeTuple) -> Result<Self> {
        Self::with_cap(j, DEFAULT_NODE_CAP)
    }

    pub fn with_cap(j: &WedgeTuple, cap: u128) -> Result<Self> {
        let size = j
            .entries()
            .iter()
            .try_fold(1u128, |acc, &x| acc.checked_mul(x as u128))
            .unwrap_or(u128::MAX);
        if size > cap {
            return Err(Error::Overflow { nodes: size, cap });
        }
        let size = size as usize;
        let radix = j.entries();
        let code = |v: &[usize]| {
            v.iter()
                .zip(radix)
                .rev()
                .fold(0usize, |acc, (&x, &r)| acc * r + (x - 1))
        };

        let mut nodes = Vec::with_capacity(size);
        let mut v = vec![1usize; radix.len()];
        loop {
            nodes.push(v.clone());
            let Some(k) = (0..v.len()).find(|&k| v[k] < radix[k]) else {
                break;
            };
            v[k] += 1;
            v[..k].fill(1);
        }
        nodes.sort_by(|a, b| depth_of(a).cmp(&depth_of(b)).then_with(|| a.cmp(b)));
        let mut position = vec![0; size];
        for (t, v) in nodes.iter().enumerate() {
            position[code(v)] = t;
        }

        let mut earlier = Vec::with_capacity(size);
        let mut squares = Vec::with_capacity(size);
        for (t, v) in nodes.iter().enumerate() {
            let at = |changes: &[(usize, usize)]| {
                let mut w = v.clone();
                for &(k, x) in changes {
                    w[k] = x;
                }
                position[code(&w)]
            };
            let mut e = Vec::new();
            let mut s = Vec::new();
            for k in 0..v.len() {
                for x in 1..v[k] {
                    e.push((at(&[(k, x)]), k + 1));
                    for (l, &vl) in v.iter().enumerate().skip(k + 1) {
                        for y in 1..vl {
                            s.push(Square {
                                base: at(&[(k, x), (l, y)]),
                                p: k + 1,
                                along_p: at(&[(l, y)]),
                                q: l + 1,
                                along_q: at(&[(k, x)]),
                                far: t,
                            });
                        }
                    }
                }
            }
            earlier.push(e);
            squares.push(s);
        }
        Ok(Board {
            j: j.clone(),
            nodes,
            position,
            earlier,
            squares,
        })
    }

    pub fn tuple(&self) -> &WedgeTuple {
        &self.j
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, t: usize) -> &[usize] {
        &self.nodes[t]
    }

    pub fn nodes(&self) -> &[Vec<usize>] {
        &self.nodes
    }

    pub fn depth(&self, t: usize) -> usize {
        depth_of(&self.nodes[t])
    }

    /// Index of the node `v` in board order.
    pub fn index_of(&self, v: &[usize]) -> Option<usize> {
        let radix = self.j.entries();
        if v.len() != radix.len() || v.iter().zip(radix).any(|(&x, &r)| x == 0 || x > r) {
            return None;
        }
        let code = v
            .iter()
            .zip(radix)
            .rev()
            .fold(0usize, |acc, (&x, &r)| acc * r + (x - 1));
        Some(self.position[code])
    }

    /// Neighbours of `t` that precede it, with the colour of the joining edge.
    pub fn earlier_neighbours(&self, t: usize) -> &[(usize, usize)] {
        &self.earlier[t]
    }

    /// Subsquares whose last corner in board order is `t`.
    pub fn squares_closing_at(&self, t: usize) -> &[Square] {
        &self.squares[t]
    }

    /// All edges `(earlier, later, colour)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.earlier
            .iter()
            .enumerate()
            .flat_map(|(t, e)| e.iter().map(move |&(s, k)| (s, t, k)))
    }

    pub fn squares(&self) -> impl Iterator<Item = &Square> + '_ {
        self.squares.iter().flatten()
    }
}
