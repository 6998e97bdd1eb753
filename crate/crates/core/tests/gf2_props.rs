use djpuzzle::{BitMatrix, BitVec};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = BitMatrix> {
    (1usize..8, 1usize..14).prop_flat_map(|(r, c)| {
        prop::collection::vec(0u64..1 << c, r).prop_map(move |rows| BitMatrix::from_row_bits(c, &rows).unwrap())
    })
}

/// Rank by counting the distinct vectors in the row span.
fn rank_by_span(m: &BitMatrix) -> usize {
    let rows: Vec<u64> = m.rows().iter().map(BitVec::bits).collect();
    let mut span = std::collections::HashSet::new();
    for s in 0u64..1 << rows.len() {
        span.insert(
            (0..rows.len())
                .filter(|&i| s >> i & 1 == 1)
                .fold(0u64, |a, i| a ^ rows[i]),
        );
    }
    span.len().trailing_zeros() as usize
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank(), rank_by_span(&m));
        prop_assert_eq!(m.rank() + k.ncols(), m.ncols());
        prop_assert_eq!(k.rank(), k.ncols());
    }

    #[test]
    fn kernel_is_annihilated(m in matrix()) {
        let k = m.kernel_basis();
        if k.ncols() > 0 {
            prop_assert!(m.mul(&k).unwrap().is_zero());
        }
    }

    #[test]
    fn reduce_is_idempotent(m in matrix(), seed in any::<u64>()) {
        let mut cols: Vec<usize> = (1..=m.ncols()).collect();
        let mut s = seed;
        for i in (1..cols.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            cols.swap(i, (s >> 33) as usize % (i + 1));
        }
        if m.nrows() <= m.ncols() {
            let pivots = &cols[..m.nrows()];
            if let Ok(r) = m.reduce_to_identity(pivots) {
                for (i, &p) in pivots.iter().enumerate() {
                    prop_assert_eq!(r.column(p), BitVec::unit(m.nrows(), i + 1));
                }
                prop_assert_eq!(r.reduce_to_identity(pivots).unwrap(), r);
            } else {
                prop_assert!(m.select_columns(pivots).rank() < m.nrows());
            }
        }
    }

    #[test]
    fn xor_group_laws(len in 1usize..=64, a in any::<u64>(), b in any::<u64>()) {
        let x = BitVec::from_bits(len, a);
        let y = BitVec::from_bits(len, b);
        let zero = BitVec::zero(len);
        prop_assert_eq!(x + x, zero);
        prop_assert_eq!(x + zero, x);
        prop_assert_eq!(x + y, y + x);
        prop_assert_eq!((x + y) + y, x);
    }

    #[test]
    fn render_round_trip(len in 1usize..=64, a in any::<u64>()) {
        let x = BitVec::from_bits(len, a);
        prop_assert_eq!(BitVec::parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn transpose_is_an_involution(m in matrix()) {
        prop_assert_eq!(m.transpose().transpose(), m);
    }
}
