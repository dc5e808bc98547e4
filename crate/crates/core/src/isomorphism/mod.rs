//! Isomorphism invariants, verification of explicit isomorphisms and a
//! budgeted isomorphism search.

mod fingerprint;
mod search;
mod verify;

pub use fingerprint::{derivations_dim, fingerprint, Comparison, Fingerprint};
pub use search::{
    search_isomorphism, search_isomorphism_with, SearchOptions, SearchOutcome, DEFAULT_BUDGET,
    DEFAULT_SEED,
};
pub use verify::{permutation_matrix, verify_isomorphism, IsoCheck, IsoError};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_support::*;
    use crate::algebra::{Algebra, CharSeq};
    use crate::linalg::{scalar, Matrix};
    use proptest::prelude::*;

    #[test]
    fn nf4_fingerprint() {
        let f = fingerprint(&nf(4)).unwrap();
        assert_eq!(f.dim, 4);
        assert_eq!(f.lcs_dims, vec![4, 3, 2, 1, 0]);
        assert_eq!(f.nilindex, 5);
        assert_eq!(f.center_dim, 1);
        assert_eq!(f.charseq, CharSeq(vec![4]));
    }

    #[test]
    fn abelian_fingerprint() {
        let f = fingerprint(&Algebra::abelian(3)).unwrap();
        assert_eq!(
            (f.dim, f.lcs_dims.clone(), f.nilindex, f.center_dim),
            (3, vec![3, 0], 2, 3)
        );
        assert_eq!(f.charseq, CharSeq(vec![1, 1, 1]));
        assert_eq!(f.derivations_dim, 9);
        assert_eq!(f.h2_dim, 9);
    }

    #[test]
    fn derivations_of_nf3() {
        // D e1 = a e1 + b e2 + c e3 determines D on NF_3; D e2 = [De1, e1] +
        // [e1, De1] = 2a e2 + b e3 + ...: a 3-parameter family.
        assert_eq!(derivations_dim(&nf(3)), 3);
    }

    #[test]
    fn verify_examples() {
        let a = nf(3);
        assert!(verify_isomorphism(&a, &a, &Matrix::identity(3))
            .unwrap()
            .holds());
        let p = Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 1, 1]]);
        match verify_isomorphism(&a, &a, &p).unwrap() {
            IsoCheck::FailsAt { i, j, .. } => assert_eq!((i, j), (0, 0)),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            verify_isomorphism(&a, &a, &Matrix::zeros(3, 3)).unwrap(),
            IsoCheck::NotInvertible
        );
        assert!(verify_isomorphism(&a, &nf(4), &Matrix::identity(3)).is_err());
    }

    #[test]
    fn search_relabeled_nf3() {
        let a = nf(3);
        let reversed = a.change_basis(&permutation_matrix(&[2, 1, 0])).unwrap();
        match search_isomorphism(&a, &reversed, 100).unwrap() {
            SearchOutcome::Found(p) => {
                assert!(verify_isomorphism(&a, &reversed, &p).unwrap().holds())
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn search_distinguishes_by_invariants() {
        assert_eq!(
            search_isomorphism(&nf(3), &Algebra::abelian(3), 10).unwrap(),
            SearchOutcome::Distinguished("lcs-dims".into())
        );
        assert_eq!(
            search_isomorphism(&f1(5), &f2(5), 10).unwrap(),
            SearchOutcome::Distinguished("center-dim".into())
        );
    }

    fn unitriangular(n: usize, entries: &[i64]) -> Matrix {
        let mut m = Matrix::identity(n);
        let mut it = entries.iter().cycle();
        for r in 0..n {
            for c in 0..r {
                m.set(r, c, scalar(*it.next().unwrap()));
            }
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn fingerprint_is_invariant(
            entries in proptest::collection::vec(-2i64..=2, 1..30),
            upper in any::<bool>(),
            which in 0usize..4,
        ) {
            let a = [nf(5), f1(6), f2(6), nf(3).direct_sum(&Algebra::abelian(2))][which].clone();
            let mut p = unitriangular(a.dim(), &entries);
            if upper {
                p = p.transpose();
            }
            let b = a.change_basis(&p).unwrap();
            prop_assert!(b.is_leibniz());
            let fa = fingerprint(&a).unwrap();
            let fb = fingerprint(&b).unwrap();
            prop_assert!(!fa.compare(&fb).is_distinguished());
            prop_assert!(verify_isomorphism(&b, &a, &p).unwrap().holds());
        }

        #[test]
        fn search_finds_conjugates(
            entries in proptest::collection::vec(-1i64..=1, 1..20),
            which in 0usize..3,
        ) {
            let a = [nf(4), f1(5), f2(5)][which].clone();
            let p = unitriangular(a.dim(), &entries).transpose();
            let b = a.change_basis(&p).unwrap();
            match search_isomorphism(&a, &b, 200).unwrap() {
                SearchOutcome::Found(q) => {
                    prop_assert!(verify_isomorphism(&a, &b, &q).unwrap().holds())
                }
                other => prop_assert!(false, "no isomorphism found: {:?}", other),
            }
        }
    }
}
