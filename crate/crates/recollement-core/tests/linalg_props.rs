//! Property tests for the exact linear algebra kernel.

use proptest::prelude::*;
use recollement_core::field::Field;
use recollement_core::mat::Mat;

fn small_matrix(max_dim: usize) -> impl Strategy<Value = Mat> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(0u64..32003, r * c).prop_map(move |data| {
            let mut m = Mat::zero(r, c);
            for i in 0..r {
                for j in 0..c {
                    m.set(i, j, data[i * c + j]);
                }
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in small_matrix(6)) {
        let f = Field::default();
        let k = m.kernel_basis(&f);
        prop_assert_eq!(m.rank(&f) + k.rows, m.rows);
        prop_assert!(k.mul(&m, &f).is_zero());
    }

    #[test]
    fn rref_is_idempotent(m in small_matrix(6)) {
        let f = Field::default();
        let (r1, p1) = m.rref(&f);
        let (r2, p2) = r1.rref(&f);
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn solve_is_exact_when_it_returns(a in small_matrix(5), x in small_matrix(5)) {
        // manufacture a solvable system: b := x·a (shapes adjusted)
        let f = Field::default();
        if x.cols != a.rows {
            return Ok(());
        }
        let b = x.mul(&a, &f);
        let sol = Mat::solve(&a, &b, &f).expect("b lies in the row space by construction");
        prop_assert_eq!(sol.mul(&a, &f), b);
    }

    #[test]
    fn kronecker_rank_multiplies(a in small_matrix(4), b in small_matrix(4)) {
        let f = Field::default();
        let k = a.kronecker(&b, &f);
        prop_assert_eq!(k.rank(&f), a.rank(&f) * b.rank(&f));
    }

    #[test]
    fn intersection_is_contained_in_both(a in small_matrix(4), b in small_matrix(4)) {
        let f = Field::default();
        if a.cols != b.cols {
            return Ok(());
        }
        let i = Mat::row_space_intersect(&a, &b, &f);
        for r in 0..i.rows {
            prop_assert!(a.contains_in_row_space(i.row(r), &f));
            prop_assert!(b.contains_in_row_space(i.row(r), &f));
        }
        // dimension formula
        let s = Mat::row_space_sum(&a, &b, &f);
        prop_assert_eq!(s.rank(&f) + i.rank(&f), a.rank(&f) + b.rank(&f));
    }
}
