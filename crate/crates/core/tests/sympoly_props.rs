mod common;

use lattice_gamma::rational::Rational;
use lattice_gamma::sympoly::{
    elementary_bruteforce, elementary_prefix, homogeneous_bruteforce, homogeneous_prefix, ArgumentFamily,
};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

proptest! {
    #[test]
    fn arguments_are_positive(fam in common::family(), s in 1usize..60) {
        prop_assert!(fam.x(s).is_positive());
    }

    #[test]
    fn elementary_table_matches_subsets(fam in common::family(), len in 0usize..=8, deg in 0usize..=8) {
        let table = elementary_prefix(&fam, len, deg);
        for j in 0..=len {
            let xs = fam.prefix(j);
            for v in 0..=deg {
                prop_assert_eq!(table.get(j, v), &elementary_bruteforce(&xs, v).unwrap());
            }
        }
    }

    #[test]
    fn homogeneous_table_matches_multisets(fam in common::family(), len in 0usize..=8, deg in 0usize..=8) {
        let table = homogeneous_prefix(&fam, len, deg);
        for j in 0..=len {
            let xs = fam.prefix(j);
            for v in 0..=deg {
                prop_assert_eq!(table.get(j, v), &homogeneous_bruteforce(&xs, v).unwrap());
            }
        }
    }

    #[test]
    fn table_boundary_conventions(fam in common::family(), len in 0usize..=10, deg in 0usize..=10) {
        let e = elementary_prefix(&fam, len, deg);
        let h = homogeneous_prefix(&fam, len, deg);
        for j in 0..=len {
            prop_assert!(e.get(j, 0).is_one() && h.get(j, 0).is_one());
            for v in (j + 1)..=deg {
                prop_assert!(e.get(j, v).is_zero());
            }
        }
        for v in 1..=deg {
            prop_assert!(e.get(0, v).is_zero() && h.get(0, v).is_zero());
        }
    }

    /// Σ_{i=0}^{v} (-1)^i e_i h_{v-i} = 0 for v >= 1.
    #[test]
    fn newton_duality(fam in common::family(), len in 0usize..=10, deg in 1usize..=10) {
        let e = elementary_prefix(&fam, len, deg);
        let h = homogeneous_prefix(&fam, len, deg);
        for j in 0..=len {
            for v in 1..=deg {
                let mut s = Rational::zero();
                for i in 0..=v {
                    let term = e.get(j, i) * h.get(j, v - i);
                    if i % 2 == 0 { s += term } else { s -= term }
                }
                prop_assert!(s.is_zero(), "prefix {} degree {}", j, v);
            }
        }
    }
}

#[test]
fn plain_harmonic_sums() {
    // e_1 of the plain prefix is the harmonic number
    let e = elementary_prefix(&ArgumentFamily::plain(), 6, 1);
    let harmonic = (1..=6).fold(Rational::zero(), |acc, s| acc + Rational::from_integer(s.into()).recip());
    assert_eq!(e.get(6, 1), &harmonic);
}
