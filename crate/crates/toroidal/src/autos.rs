//! Automorphisms of the toroidal algebra.
//!
//! - [`apply_s`]: the automorphism induced by the coordinate change
//!   `s ↦ t, t ↦ s^{-1}` (power `+1`) and its inverse `s ↦ t^{-1}, t ↦ s`
//!   (power `-1`).  Central elements transform by pushing the defining
//!   differential form through the coordinate change and re-canonicalizing;
//!   the degree operators transform by the unique extension that keeps the
//!   bidegree relations covariant (`S(d_s) = d_t`, `S(d_t) = -d_s`, and the
//!   inverse pair `S^{-1}(d_s) = -d_t`, `S^{-1}(d_t) = d_s`).
//! - [`exp_ad`]: `exp(ad n)` for ad-nilpotent `n`, with a termination cap.
//! - [`apply_t0`] / [`apply_ttheta`]: the sl2 reflections
//!   `exp(ad e) exp(ad(-f)) exp(ad e)` attached to the affine node and to the
//!   highest root.
//! - [`tau_shift`]: the shift `s ↦ s + a` on the current-type subalgebra.

use std::sync::Arc;


use crate::rootdata::{e_theta, f_theta, RootSystem};
use crate::torlie::{
    ds_monomial, dt_monomial, generator, tor_bracket, GenKind, SubalgebraTag, TorBasisElt, TorElt,
};
use crate::{rat, Error, Rat, Result};

/// Default cap for [`exp_ad`] series.
pub const DEFAULT_EXP_CAP: usize = 12;

/// Apply the swap automorphism `S` (`power = 1`) or `S^{-1}` (`power = -1`).
pub fn apply_s(x: &TorElt, power: i32) -> TorElt {
    let mut out = TorElt::zero(x.rs.clone());
    for (b, c) in &x.terms {
        for (sym, coeff) in apply_s_basis(b, power) {
            out.add_term(sym, coeff * c);
        }
    }
    out
}

fn apply_s_basis(b: &TorBasisElt, power: i32) -> Vec<(TorBasisElt, Rat)> {
    use TorBasisElt::*;
    assert!(power == 1 || power == -1, "power must be ±1");
    if power == 1 {
        // s ↦ t, t ↦ s^{-1}, ds ↦ dt, dt ↦ -s^{-2} ds
        match b {
            G { sym, k, l } => vec![(
                G {
                    sym: sym.clone(),
                    k: -l,
                    l: *k,
                },
                rat(1),
            )],
            C { k, l } if *k != 0 => {
                // s^k t^{l-1} dt ↦ t^k s^{1-l} (-s^{-2} ds) = -s^{-l-1} t^k ds
                ds_monomial(-l - 1, *k)
                    .into_iter()
                    .map(|(s, c)| (s, -c))
                    .collect()
            }
            C { l, .. } => {
                // c(0,l) = s^{-1} t^l ds ↦ t^{-1} s^{-l} dt
                dt_monomial(-l, -1)
            }
            Cs => vec![(Ct, rat(1))],
            Ct => vec![(Cs, rat(-1))],
            Ds => vec![(Dt, rat(1))],
            Dt => vec![(Ds, rat(-1))],
        }
    } else {
        // s ↦ t^{-1}, t ↦ s, ds ↦ -t^{-2} dt, dt ↦ ds
        match b {
            G { sym, k, l } => vec![(
                G {
                    sym: sym.clone(),
                    k: *l,
                    l: -k,
                },
                rat(1),
            )],
            C { k, l } if *k != 0 => {
                // s^k t^{l-1} dt ↦ t^{-k} s^{l-1} ds
                ds_monomial(l - 1, -k)
            }
            C { l, .. } => {
                // c(0,l) = s^{-1} t^l ds ↦ t s^l (-t^{-2} dt) = -s^l t^{-1} dt
                dt_monomial(*l, -1)
                    .into_iter()
                    .map(|(s, c)| (s, -c))
                    .collect()
            }
            Cs => vec![(Ct, rat(-1))],
            Ct => vec![(Cs, rat(1))],
            Ds => vec![(Dt, rat(-1))],
            Dt => vec![(Ds, rat(1))],
        }
    }
}

/// `exp(ad n) x = Σ_j ad(n)^j x / j!`, summed until a term vanishes.
/// Errors if the series has not terminated after `cap` steps.
pub fn exp_ad(n: &TorElt, x: &TorElt, cap: usize) -> Result<TorElt> {
    let mut out = x.clone();
    let mut term = x.clone();
    for j in 1..=cap + 1 {
        term = tor_bracket(n, &term)?;
        term.scale(&(rat(1) / rat(j as i64)));
        if term.is_zero() {
            return Ok(out);
        }
        if j > cap {
            return Err(Error::ExpAdCap(cap));
        }
        out.add_assign(&term)?;
    }
    unreachable!()
}

fn reflection(e: &TorElt, f: &TorElt, x: &TorElt, cap: usize) -> Result<TorElt> {
    let mut minus_f = f.clone();
    minus_f.scale(&rat(-1));
    let step1 = exp_ad(e, x, cap)?;
    let step2 = exp_ad(&minus_f, &step1, cap)?;
    exp_ad(e, &step2, cap)
}

/// The reflection `T_0 = exp(ad e_0) exp(ad(-f_0)) exp(ad e_0)` attached to
/// the affine node (`e_0 = f_theta ⊗ t`, `f_0 = e_theta ⊗ t^{-1}`).
pub fn apply_t0(x: &TorElt, cap: usize) -> Result<TorElt> {
    let e0 = generator(&x.rs, 0, 0, GenKind::E)?;
    let f0 = generator(&x.rs, 0, 0, GenKind::F)?;
    reflection(&e0, &f0, x, cap)
}

/// The reflection `T_theta = exp(ad e_theta) exp(ad(-f_theta)) exp(ad e_theta)`.
pub fn apply_ttheta(x: &TorElt, cap: usize) -> Result<TorElt> {
    let et = TorElt::from_g(x.rs.clone(), &e_theta(&x.rs), 0, 0);
    let ft = TorElt::from_g(x.rs.clone(), &f_theta(&x.rs), 0, 0);
    reflection(&et, &ft, x, cap)
}

/// The shift automorphism `tau_a` of the current-type subalgebra, induced by
/// `s ↦ s + a`: binomial expansion in each monomial, with central elements
/// routed through the differential-form rewriting.
pub fn tau_shift(a: &Rat, x: &TorElt) -> Result<TorElt> {
    if !x.in_subalgebra(SubalgebraTag::TorPlus) {
        return Err(Error::Invalid(
            "tau shift is defined on the current-type subalgebra only".into(),
        ));
    }
    let mut out = TorElt::zero(x.rs.clone());
    for (b, c) in &x.terms {
        match b {
            TorBasisElt::G { sym, k, l } => {
                // (s+a)^k = sum_j binom(k,j) a^{k-j} s^j
                for (j, coeff) in binomial_row(*k, a) {
                    out.add_term(
                        TorBasisElt::G {
                            sym: sym.clone(),
                            k: j,
                            l: *l,
                        },
                        coeff * c,
                    );
                }
            }
            TorBasisElt::C { k, l } => {
                // c(k,l) = s^k t^{l-1} dt with k >= 1
                for (j, coeff) in binomial_row(*k, a) {
                    for (sym, cc) in dt_monomial(j, l - 1) {
                        out.add_term(sym, cc * &coeff * c);
                    }
                }
            }
            TorBasisElt::Ct | TorBasisElt::Dt => out.add_term(b.clone(), c.clone()),
            TorBasisElt::Cs | TorBasisElt::Ds => unreachable!("rejected above"),
        }
    }
    Ok(out)
}

fn binomial_row(k: i64, a: &Rat) -> Vec<(i64, Rat)> {
    debug_assert!(k >= 0);
    let mut out = Vec::new();
    // binom(k, j) a^{k-j} for j = k down to 0
    let mut coeff = rat(1);
    let mut j = k;
    loop {
        out.push((j, coeff.clone()));
        if j == 0 {
            break;
        }
        // binom(k, j-1) = binom(k, j) * j / (k - j + 1)
        coeff = coeff * a * rat(j) / rat(k - j + 1);
        j -= 1;
    }
    out
}

/// Result of sampling the homomorphism property of a map.
#[derive(Debug)]
pub struct AutoReport {
    /// Number of (x, y) pairs checked.
    pub checked_pairs: usize,
    /// Triples (x, y, Φ([x,y]) − [Φx, Φy]) for violated pairs.
    pub failures: Vec<(TorElt, TorElt, TorElt)>,
}

impl AutoReport {
    /// Whether the map was a homomorphism on the whole sample.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check `Φ([x,y]) = [Φx, Φy]` over the given pairs.
pub fn homomorphism_report<F>(phi: F, pairs: &[(TorElt, TorElt)]) -> Result<AutoReport>
where
    F: Fn(&TorElt) -> Result<TorElt>,
{
    let mut failures = Vec::new();
    for (x, y) in pairs {
        let lhs = phi(&tor_bracket(x, y)?)?;
        let rhs = tor_bracket(&phi(x)?, &phi(y)?)?;
        let diff = lhs.sub(&rhs)?;
        if !diff.is_zero() {
            failures.push((x.clone(), y.clone(), diff));
        }
    }
    Ok(AutoReport {
        checked_pairs: pairs.len(),
        failures,
    })
}

/// All basis symbols with `|k|, |l| <= range`, optionally restricted to a
/// subalgebra.  Used by homomorphism sweeps here and in the acceptance suite.
pub fn basis_window(rs: &Arc<RootSystem>, range: i64, tag: SubalgebraTag) -> Vec<TorBasisElt> {
    let mut out = Vec::new();
    let syms = crate::rootdata::g_basis(rs);
    for k in -range..=range {
        for l in -range..=range {
            for s in syms.iter() {
                out.push(TorBasisElt::G {
                    sym: s.clone(),
                    k,
                    l,
                });
            }
            if (k, l) != (0, 0) {
                out.push(TorBasisElt::C { k, l });
            }
        }
    }
    out.extend([
        TorBasisElt::Cs,
        TorBasisElt::Ct,
        TorBasisElt::Ds,
        TorBasisElt::Dt,
    ]);
    out.retain(|b| tag.contains(rs, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{GSym, TypeLabel};
    use crate::ratio;

    fn a1() -> Arc<RootSystem> {
        Arc::new(RootSystem::new(TypeLabel::A, 1).unwrap())
    }

    fn basis(rs: &Arc<RootSystem>, b: TorBasisElt) -> TorElt {
        TorElt::basis(rs.clone(), b)
    }

    #[test]
    fn s_inverse_on_monomials_and_centrals() {
        let rs = a1();
        // S^{-1}(e ⊗ s^2 t^{-1}) = e ⊗ s^{-1} t^{-2}
        let e = basis(
            &rs,
            TorBasisElt::G {
                sym: GSym::Root(vec![1]),
                k: 2,
                l: -1,
            },
        );
        let want = basis(
            &rs,
            TorBasisElt::G {
                sym: GSym::Root(vec![1]),
                k: -1,
                l: -2,
            },
        );
        assert_eq!(apply_s(&e, -1), want);

        // S^{-1}(c_s) = -c_t, S^{-1}(c_t) = c_s
        let cs = basis(&rs, TorBasisElt::Cs);
        let mut want = basis(&rs, TorBasisElt::Ct);
        want.scale(&rat(-1));
        assert_eq!(apply_s(&cs, -1), want);
        let ct = basis(&rs, TorBasisElt::Ct);
        assert_eq!(apply_s(&ct, -1), basis(&rs, TorBasisElt::Cs));

        // On c(k,l) with k,l != 0, pushing the form through the coordinate
        // change gives (k/l) c(l,-k); the scalar factor is forced by the
        // homomorphism property (see the sweep below).
        let c31 = basis(&rs, TorBasisElt::C { k: 3, l: 1 });
        let mut want = basis(&rs, TorBasisElt::C { k: 1, l: -3 });
        want.scale(&rat(3));
        assert_eq!(apply_s(&c31, -1), want);
        // ... and on c(k,0) it is exactly c(0,-k)
        let c = basis(&rs, TorBasisElt::C { k: 2, l: 0 });
        assert_eq!(
            apply_s(&c, -1),
            basis(&rs, TorBasisElt::C { k: 0, l: -2 })
        );
    }

    #[test]
    fn s_and_s_inverse_compose_to_identity() {
        let rs = a1();
        for b in basis_window(&rs, 2, SubalgebraTag::Full) {
            let x = basis(&rs, b.clone());
            assert_eq!(apply_s(&apply_s(&x, 1), -1), x, "at {b:?}");
            assert_eq!(apply_s(&apply_s(&x, -1), 1), x, "at {b:?}");
        }
    }

    #[test]
    fn swap_maps_are_homomorphisms() {
        let rs = a1();
        let window = basis_window(&rs, 1, SubalgebraTag::Full);
        let mut pairs = Vec::new();
        for a in &window {
            for b in &window {
                pairs.push((basis(&rs, a.clone()), basis(&rs, b.clone())));
            }
        }
        for power in [1, -1] {
            let rep = homomorphism_report(|x| Ok(apply_s(x, power)), &pairs).unwrap();
            assert!(rep.passed(), "S^{power} failed on {} pairs", rep.failures.len());
        }
    }

    #[test]
    fn reflection_examples() {
        let rs = a1();
        // T_theta(e_theta ⊗ s t^2) = -f_theta ⊗ s t^2, i.e. x_{-theta} ⊗ s t^2
        let x = TorElt::from_g(rs.clone(), &e_theta(&rs), 1, 2);
        let got = apply_ttheta(&x, DEFAULT_EXP_CAP).unwrap();
        let mut want = TorElt::from_g(rs.clone(), &f_theta(&rs), 1, 2);
        want.scale(&rat(-1));
        assert_eq!(got, want);

        // exp(ad e_0)(f_theta ⊗ t^2) = f_theta ⊗ t^2
        let e0 = generator(&rs, 0, 0, GenKind::E).unwrap();
        let y = TorElt::from_g(rs.clone(), &f_theta(&rs), 0, 2);
        assert_eq!(exp_ad(&e0, &y, DEFAULT_EXP_CAP).unwrap(), y);
    }

    #[test]
    fn exp_ad_rejects_non_nilpotent_input() {
        let rs = a1();
        let h = basis(
            &rs,
            TorBasisElt::G {
                sym: GSym::Cartan(0),
                k: 0,
                l: 0,
            },
        );
        let e = basis(
            &rs,
            TorBasisElt::G {
                sym: GSym::Root(vec![1]),
                k: 0,
                l: 0,
            },
        );
        assert!(matches!(exp_ad(&h, &e, 12), Err(Error::ExpAdCap(12))));
    }

    #[test]
    fn tau_shift_examples_and_inverse() {
        let rs = a1();
        let a = ratio(3, 2);
        // tau_a(e ⊗ s) = e ⊗ s + a e ⊗ 1
        let e1 = basis(
            &rs,
            TorBasisElt::G {
                sym: GSym::Root(vec![1]),
                k: 1,
                l: 0,
            },
        );
        let got = tau_shift(&a, &e1).unwrap();
        let mut want = e1.clone();
        want.add_term(
            TorBasisElt::G {
                sym: GSym::Root(vec![1]),
                k: 0,
                l: 0,
            },
            a.clone(),
        );
        assert_eq!(got, want);

        // tau_a(c(2,l)) = c(2,l) + 2a c(1,l) for l != 0
        let c = basis(&rs, TorBasisElt::C { k: 2, l: 3 });
        let got = tau_shift(&a, &c).unwrap();
        let mut want = c.clone();
        want.add_term(TorBasisElt::C { k: 1, l: 3 }, rat(2) * &a);
        assert_eq!(got, want);

        // tau_a(c(2,0)) = c(2,0) + 2a c(1,0) + a^2 c_t
        let c = basis(&rs, TorBasisElt::C { k: 2, l: 0 });
        let got = tau_shift(&a, &c).unwrap();
        let mut want = c.clone();
        want.add_term(TorBasisElt::C { k: 1, l: 0 }, rat(2) * &a);
        want.add_term(TorBasisElt::Ct, a.clone() * &a);
        assert_eq!(got, want);

        // tau_a then tau_{-a} is the identity on basis symbols with k <= 4
        let mut window = basis_window(&rs, 4, SubalgebraTag::TorPlus);
        window.retain(|b| {
            let (k, l) = b.bidegree();
            k <= 4 && l.abs() <= 4
        });
        for b in window {
            let x = basis(&rs, b.clone());
            let back = tau_shift(&(-a.clone()), &tau_shift(&a, &x).unwrap()).unwrap();
            assert_eq!(back, x, "at {b:?}");
        }
        // rejected off the current-type subalgebra
        assert!(tau_shift(&a, &basis(&rs, TorBasisElt::Ds)).is_err());
    }

    #[test]
    fn tau_shift_is_a_homomorphism() {
        let rs = a1();
        let window = basis_window(&rs, 2, SubalgebraTag::TorPlus);
        let mut pairs = Vec::new();
        for a in &window {
            for b in &window {
                pairs.push((basis(&rs, a.clone()), basis(&rs, b.clone())));
            }
        }
        let a = rat(2);
        let rep = homomorphism_report(|x| tau_shift(&a, x), &pairs).unwrap();
        assert!(rep.passed(), "{} failures", rep.failures.len());
    }

    #[test]
    fn induction_identity() {
        // e_theta ⊗ s^k t^l = T_0 T_theta (e_theta ⊗ s^k t^{l+2})
        for name in ["A1", "A2"] {
            let rs = Arc::new(RootSystem::parse(name).unwrap());
            for k in -2..=2 {
                for l in -4..=2 {
                    let x = TorElt::from_g(rs.clone(), &e_theta(&rs), k, l + 2);
                    let got =
                        apply_t0(&apply_ttheta(&x, DEFAULT_EXP_CAP).unwrap(), DEFAULT_EXP_CAP)
                            .unwrap();
                    let want = TorElt::from_g(rs.clone(), &e_theta(&rs), k, l);
                    assert_eq!(got, want, "{name} at k={k}, l={l}");
                }
            }
        }
    }
}
