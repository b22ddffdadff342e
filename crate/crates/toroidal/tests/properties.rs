//! Randomized property tests for the core algebraic invariants:
//! antisymmetry and the Jacobi identity of the bracket, invertibility of the
//! automorphisms, and losslessness of the element syntax.

use std::sync::Arc;

use proptest::prelude::*;
use toroidal::autos::{apply_s, tau_shift};
use toroidal::cli::parse_elt;
use toroidal::rat;
use toroidal::rootdata::{GSym, RootSystem, TypeLabel};
use toroidal::torlie::{tor_bracket, SubalgebraTag, TorBasisElt, TorElt};

fn systems() -> impl Strategy<Value = Arc<RootSystem>> {
    prop_oneof![
        Just(Arc::new(RootSystem::new(TypeLabel::A, 1).unwrap())),
        Just(Arc::new(RootSystem::new(TypeLabel::A, 2).unwrap())),
        Just(Arc::new(RootSystem::new(TypeLabel::D, 4).unwrap())),
    ]
}

fn basis_elt(rs: Arc<RootSystem>) -> impl Strategy<Value = TorBasisElt> {
    let roots: Vec<_> = rs.all_roots().into_iter().cloned().collect();
    let rank = rs.rank;
    (0usize..(roots.len() + rank + 6), -2i64..=2, -2i64..=2).prop_map(
        move |(which, k, l)| {
            if which < roots.len() {
                TorBasisElt::G {
                    sym: GSym::Root(roots[which].clone()),
                    k,
                    l,
                }
            } else if which < roots.len() + rank {
                TorBasisElt::G {
                    sym: GSym::Cartan(which - roots.len()),
                    k,
                    l,
                }
            } else {
                match which - roots.len() - rank {
                    0 => TorBasisElt::Cs,
                    1 => TorBasisElt::Ct,
                    2 => TorBasisElt::Ds,
                    3 => TorBasisElt::Dt,
                    _ => TorBasisElt::C {
                        k,
                        l: if (k, l) == (0, 0) { 1 } else { l },
                    },
                }
            }
        },
    )
}

fn element(rs: Arc<RootSystem>) -> impl Strategy<Value = TorElt> {
    let rs2 = rs.clone();
    proptest::collection::vec((basis_elt(rs), -4i64..=4, 1i64..=3), 0..4).prop_map(
        move |terms| {
            let mut x = TorElt::zero(rs2.clone());
            for (b, num, den) in terms {
                x.add_term(b, rat(num) / rat(den));
            }
            x
        },
    )
}

fn pair() -> impl Strategy<Value = (TorElt, TorElt)> {
    systems().prop_flat_map(|rs| (element(rs.clone()), element(rs)))
}

fn triple() -> impl Strategy<Value = (TorElt, TorElt, TorElt)> {
    systems().prop_flat_map(|rs| (element(rs.clone()), element(rs.clone()), element(rs)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric((x, y) in pair()) {
        let xy = tor_bracket(&x, &y).unwrap();
        let mut yx = tor_bracket(&y, &x).unwrap();
        yx.scale(&rat(-1));
        prop_assert!(xy.sub(&yx).unwrap().is_zero());
    }

    #[test]
    fn bracket_satisfies_jacobi((x, y, z) in triple()) {
        let mut total = tor_bracket(&x, &tor_bracket(&y, &z).unwrap()).unwrap();
        total.add_assign(&tor_bracket(&y, &tor_bracket(&z, &x).unwrap()).unwrap()).unwrap();
        total.add_assign(&tor_bracket(&z, &tor_bracket(&x, &y).unwrap()).unwrap()).unwrap();
        prop_assert!(total.is_zero());
    }

    #[test]
    fn swap_automorphism_is_invertible(x in systems().prop_flat_map(element)) {
        let back = apply_s(&apply_s(&x, 1), -1);
        prop_assert!(x.sub(&back).unwrap().is_zero());
    }

    #[test]
    fn shift_automorphism_is_invertible(x in systems().prop_flat_map(element), a in -3i64..=3) {
        // restrict to the subalgebra where the shift is defined:
        // nonnegative s-powers and no s-side central or degree symbols
        let mut y = TorElt::zero(x.rs.clone());
        for (b, c) in &x.terms {
            let ok = match b {
                TorBasisElt::G { k, .. } => *k >= 0,
                TorBasisElt::C { k, .. } => *k >= 1,
                TorBasisElt::Ct | TorBasisElt::Dt => true,
                TorBasisElt::Cs | TorBasisElt::Ds => false,
            };
            if ok {
                y.add_term(b.clone(), c.clone());
            }
        }
        prop_assume!(y.in_subalgebra(SubalgebraTag::TorPlus));
        let there = tau_shift(&rat(a), &y).unwrap();
        let back = tau_shift(&rat(-a), &there).unwrap();
        prop_assert!(y.sub(&back).unwrap().is_zero());
    }

    #[test]
    fn element_syntax_round_trips(x in systems().prop_flat_map(element)) {
        let printed = x.to_string();
        let parsed = parse_elt(&x.rs, &printed).unwrap();
        prop_assert!(x.sub(&parsed).unwrap().is_zero(), "{printed}");
    }
}
