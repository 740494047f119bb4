mod common;

use common::{divisibility_chain, is_diagonal, is_unimodular, minor_gcd_diagonal, random_matrix};
use cosheaf::linalg::{in_column_lattice, int_vec, smith_diagonal, snf, solve_integer, IntMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix_strategy(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::from_data(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_form_invariants(m in matrix_strategy(5, 12)) {
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(is_unimodular(&s.u));
        prop_assert!(is_unimodular(&s.v));
        prop_assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(m.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(m.cols()));
        prop_assert!(is_diagonal(&s.d));
        prop_assert!(divisibility_chain(&s.diagonal));
        prop_assert_eq!(&s.diagonal, &minor_gcd_diagonal(&m));
        prop_assert_eq!(smith_diagonal(&m), s.diagonal.clone());
    }

    #[test]
    fn solutions_are_exact(m in matrix_strategy(4, 6), x in proptest::collection::vec(-5i64..=5, 4)) {
        let x: Vec<BigInt> = x.into_iter().take(m.cols()).map(BigInt::from).collect();
        prop_assume!(x.len() == m.cols());
        let b = m.mul_vec(&x).unwrap();
        let sol = solve_integer(&m, &b).unwrap();
        prop_assert!(sol.is_some());
        prop_assert_eq!(m.mul_vec(&sol.unwrap()).unwrap(), b.clone());
        prop_assert!(in_column_lattice(&m, &b).unwrap());
    }

    #[test]
    fn obstruction_certificates_are_genuine(m in matrix_strategy(4, 6), b in proptest::collection::vec(-7i64..=7, 4)) {
        let b: Vec<BigInt> = b.into_iter().take(m.rows()).map(BigInt::from).collect();
        prop_assume!(b.len() == m.rows());
        let s = snf(&m);
        match s.solve(&b).unwrap() {
            Ok(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), b),
            Err(ob) => {
                // (U b)_i is not divisible by d_i, so no integer x can satisfy D y = U b.
                let ub = s.u.mul_vec(&b).unwrap();
                prop_assert_eq!(&ub[ob.coordinate], &ob.value);
                if ob.divisor == BigInt::from(0) {
                    prop_assert!(ob.value != BigInt::from(0));
                } else {
                    prop_assert!(&ob.value % &ob.divisor != BigInt::from(0));
                }
                prop_assert!(!in_column_lattice(&m, &b).unwrap());
            }
        }
    }

    #[test]
    fn kernel_and_lattice_bases(m in matrix_strategy(4, 8)) {
        let s = snf(&m);
        let k = s.kernel_basis();
        prop_assert!(m.mul(&k).unwrap().is_zero());
        prop_assert_eq!(k.cols(), m.cols() - s.rank());
        let l = s.lattice_basis();
        for j in 0..l.cols() {
            prop_assert!(in_column_lattice(&m, &l.column(j)).unwrap());
        }
        for j in 0..m.cols() {
            prop_assert!(in_column_lattice(&l, &m.column(j)).unwrap());
        }
    }
}

#[test]
fn deficient_and_large_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..150 {
        let m = random_matrix(&mut rng, 5);
        let s = snf(&m);
        assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        assert_eq!(s.diagonal, minor_gcd_diagonal(&m));
    }
}

#[test]
fn worked_examples() {
    assert_eq!(smith_diagonal(&IntMatrix::from_rows(&[[2, 4], [6, 8]])), int_vec(&[2, 4]));
    assert_eq!(minor_gcd_diagonal(&IntMatrix::from_rows(&[[2, 4], [6, 8]])), int_vec(&[2, 4]));
    let m = IntMatrix::from_rows(&[[1, 1], [0, 2]]);
    assert_eq!(solve_integer(&m, &int_vec(&[3, 2])).unwrap(), Some(int_vec(&[2, 1])));
    assert_eq!(solve_integer(&IntMatrix::from_rows(&[[2]]), &int_vec(&[3])).unwrap(), None);
}
