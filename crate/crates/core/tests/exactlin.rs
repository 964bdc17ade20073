mod common;

use common::{abs_det_is_one, determinantal_invariants};
use disconnected_core::exactlin::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-range..=range, rows * cols).prop_map(move |v| {
        IntMatrix::from_vec(rows, cols, v.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c, 6))
}

fn permuted(a: &IntMatrix, rp: &[usize], cp: &[usize]) -> IntMatrix {
    let mut out = IntMatrix::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, a.get(rp[i], cp[j]).clone());
        }
    }
    out
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_decomposition_is_exact(a in any_matrix()) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.checked_mul(&a).unwrap().checked_mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(abs_det_is_one(&s.u));
        prop_assert!(abs_det_is_one(&s.v));
        prop_assert_eq!(s.u.checked_mul(&s.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        prop_assert_eq!(s.v.checked_mul(&s.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[0] >= BigInt::zero());
            prop_assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn smith_matches_determinantal_divisors(a in any_matrix()) {
        let expected = determinantal_invariants(&a.row_vecs(), a.cols());
        prop_assert_eq!(smith_normal_form(&a).diagonal(), expected);
    }

    #[test]
    fn smith_is_permutation_independent(
        a in any_matrix(),
        seed in any::<u64>(),
    ) {
        let mut rp: Vec<usize> = (0..a.rows()).collect();
        let mut cp: Vec<usize> = (0..a.cols()).collect();
        let mut s = seed;
        for v in [&mut rp, &mut cp] {
            for i in (1..v.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                v.swap(i, (s >> 33) as usize % (i + 1));
            }
        }
        let b = permuted(&a, &rp, &cp);
        prop_assert_eq!(smith_normal_form(&a).d, smith_normal_form(&b).d);
    }

    #[test]
    fn presentation_lifts_are_coordinate_sections(a in any_matrix()) {
        let p = cokernel_presentation(&a);
        let k = p.generator_count();
        for i in 0..k {
            let coords = p.coordinates(p.lift.row(i)).unwrap();
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::from(1);
            prop_assert_eq!(coords, reduce_mod(&e, &p.moduli()));
        }
        // relations vanish
        for r in 0..a.rows() {
            let coords = p.coordinates(a.row(r)).unwrap();
            prop_assert!(coords.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_integer_is_sound(a in any_matrix(), b in proptest::collection::vec(-8i64..=8, 4)) {
        let b: Vec<BigInt> = big(&b[..a.rows()]);
        match solve_integer(&a, &b).unwrap() {
            Some(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b),
            None => {
                let s = smith_normal_form(&a);
                let ub = s.u.mul_vec(&b).unwrap();
                let d = s.diagonal();
                let blocked = (0..a.rows()).any(|i| match d.get(i) {
                    Some(di) if !di.is_zero() => !ub[i].is_multiple_of(di),
                    _ => !ub[i].is_zero(),
                });
                prop_assert!(blocked);
            }
        }
    }

    #[test]
    fn solve_integer_finds_planted_solutions(a in any_matrix(), x in proptest::collection::vec(-5i64..=5, 4)) {
        let x = big(&x[..a.cols()]);
        let b = a.mul_vec(&x).unwrap();
        let y = solve_integer(&a, &b).unwrap().expect("planted solution exists");
        prop_assert_eq!(a.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn kernel_basis_is_saturated(a in any_matrix()) {
        let k = kernel_basis(&a);
        prop_assert!(a.checked_mul(&k).unwrap().is_zero());
        prop_assert_eq!(k.cols(), a.cols() - smith_normal_form(&a).rank());
        // saturated: the kernel basis has trivial torsion cokernel in ℤ^cols
        if k.cols() > 0 {
            let inv = determinantal_invariants(&k.transpose().row_vecs(), k.rows());
            prop_assert!(inv.iter().all(|d| *d == BigInt::from(1)));
        }
    }

    #[test]
    fn congruence_kernel_matches_stacked_kernel(
        a in (1usize..=3, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c, 9)),
        moduli in proptest::collection::vec(1i64..=12, 3),
    ) {
        let moduli = big(&moduli[..a.rows()]);
        let got = congruence_kernel(&a, &moduli).unwrap();
        // oracle: first cols coordinates of ker [A | diag(moduli)]
        let stacked = a.hstack(&IntMatrix::diagonal(&moduli)).unwrap();
        let k = kernel_basis(&stacked);
        let proj = IntMatrix::from_rows(
            a.cols(),
            k.transpose().row_vecs().into_iter().map(|r| r[..a.cols()].to_vec()),
        ).unwrap();
        prop_assert_eq!(row_hermite_basis(&got), row_hermite_basis(&proj));
        prop_assert_eq!(got.rows(), a.cols());
    }

    #[test]
    fn hermite_solve_and_reduce(
        g in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c, 7)),
        coeffs in proptest::collection::vec(-4i64..=4, 4),
        noise in proptest::collection::vec(-9i64..=9, 4),
    ) {
        let h = row_hermite_basis(&g);
        let c = big(&coeffs[..g.rows()]);
        let x = g.vec_mul(&c).unwrap();
        let sol = solve_hermite(&h, &x).unwrap().expect("lattice vector");
        prop_assert_eq!(h.vec_mul(&sol).unwrap(), x.clone());
        prop_assert!(reduce_by_hermite(&h, &x).iter().all(Zero::is_zero));
        let y = big(&noise[..g.cols()]);
        let r = reduce_by_hermite(&h, &y);
        let diff: Vec<BigInt> = y.iter().zip(&r).map(|(a, b)| a - b).collect();
        prop_assert!(solve_hermite(&h, &diff).unwrap().is_some());
        prop_assert_eq!(reduce_by_hermite(&h, &r), r.clone());
        // same lattice, same basis
        let doubled = g.vstack(&g).unwrap();
        prop_assert_eq!(row_hermite_basis(&doubled), h);
    }
}

#[test]
fn worked_examples() {
    let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
    assert_eq!(smith_normal_form(&a).diagonal(), big(&[2, 4]));
    let p = cokernel_presentation(&IntMatrix::from_i64(&[&[2]]));
    assert_eq!(p.invariant_factors, big(&[2]));
    let free = cokernel_presentation(&IntMatrix::zeros(0, 2));
    assert_eq!(free.free_rank, 2);
    assert_eq!(solve_integer(&IntMatrix::from_i64(&[&[2]]), &big(&[1])).unwrap(), None);
    assert_eq!(solve_integer(&IntMatrix::from_i64(&[&[2]]), &big(&[4])).unwrap(), Some(big(&[2])));
}

#[test]
fn large_entries_stay_exact() {
    let huge: BigInt = "340282366920938463463374607431768211457".parse().unwrap();
    let a = IntMatrix::from_rows(2, vec![vec![huge.clone(), BigInt::from(0)], vec![BigInt::from(0), &huge * 2]]).unwrap();
    let d = smith_normal_form(&a).diagonal();
    assert_eq!(d, vec![huge.clone(), &huge * 2]);
    assert_eq!(determinantal_invariants(&a.row_vecs(), 2), d);
}
