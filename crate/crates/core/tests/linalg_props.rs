use mackeylab::linalg::{kernel, rank, solve, Mat, PrimeField, Subspace};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![2u32, 3, 5, 7]).prop_map(|p| PrimeField::new(p).unwrap())
}

fn mat(rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> impl Strategy<Value = Mat> {
    (field(), rows, cols).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(0..f.p(), r * c).prop_map(move |d| Mat::from_vec(f, r, c, d).unwrap())
    })
}

proptest! {
    #[test]
    fn rank_plus_nullity(m in mat(0..9, 0..9)) {
        let k = kernel(&m);
        prop_assert_eq!(rank(&m) + k.rows(), m.cols());
        prop_assert!(m.mul(&k.transpose()).is_zero());
        prop_assert_eq!(rank(&k), k.rows());
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn solve_is_consistent(m in mat(1..8, 1..8), seed in any::<u64>()) {
        let f = m.field();
        // a right-hand side in the column space is always solvable
        let x0: Vec<u32> = (0..m.cols()).map(|i| ((seed >> (i % 32)) as u32) % f.p()).collect();
        let b = Mat::column(f, &m.mul_vec(&x0));
        let s = solve(&m, &b).unwrap().expect("b lies in the column space");
        prop_assert_eq!(m.mul(&s.x), b.clone());
        prop_assert_eq!(s.kernel.rows(), m.cols() - rank(&m));
        // appending b as a column keeps the rank exactly when solvable
        let e = Mat::column(f, &(0..m.rows()).map(|i| u32::from(i == seed as usize % m.rows())).collect::<Vec<_>>());
        let solvable = solve(&m, &e).unwrap().is_some();
        prop_assert_eq!(solvable, rank(&m.hstack(&e)) == rank(&m));
    }

    #[test]
    fn subspace_dimension_formula(a in mat(0..6, 6..7), seed in any::<u64>()) {
        let f = a.field();
        let rows: Vec<Vec<u32>> = (0..4)
            .map(|i| (0..6).map(|j| ((seed >> ((i * 6 + j) % 60)) as u32) % f.p()).collect())
            .collect();
        let b = Mat::from_rows(f, 6, &rows);
        let (sa, sb) = (Subspace::row_space(&a), Subspace::row_space(&b));
        let sum = sa.sum(&sb).unwrap();
        let meet = sa.intersection(&sb).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), sa.dim() + sb.dim());
        prop_assert!(meet.is_subspace_of(&sa) && meet.is_subspace_of(&sb));
        prop_assert!(sa.is_subspace_of(&sum) && sb.is_subspace_of(&sum));
    }
}
