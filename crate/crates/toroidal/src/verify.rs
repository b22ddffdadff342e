//! The full verification suite: ten exact checks tying all modules together.
//!
//! Each check returns a [`Check`] with a pass/fail flag and a short detail
//! string.  The same functions back the `verify-all` CLI subcommand and the
//! acceptance integration test, so both always agree.  Every check is an
//! exact identity (tolerance zero).

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::autos::{
    apply_s, apply_t0, apply_ttheta, basis_window, homomorphism_report, tau_shift,
    DEFAULT_EXP_CAP,
};
use crate::charseries::{char_l0, char_leq, product_expand, Caps, CharSeries, ProductFactor};
use crate::linalg::SparseVec;
use crate::rootdata::{GSym, RootSystem, TypeLabel};
use crate::torlie::{
    generator, tor_bracket, verify_presentation, GenKind, SubalgebraTag, TorBasisElt, TorElt,
};
use crate::vrep::{
    act_basis, enumerate_basis, heis_multisets, lattice_ball, partitions_up_to, FockState, VElt,
    Window,
};
use crate::weylmod::{
    presented_weyl_dims, pullback_act, rank_spanning, straighten, PresentedEngine, WeylConfig,
    Word,
};
use crate::{rat, Rat, Result};

/// Outcome of a single verification check.
#[derive(Debug, Clone)]
pub struct Check {
    /// Short stable identifier.
    pub name: String,
    /// Whether the check passed.
    pub passed: bool,
    /// Human-readable summary (counts checked, first failure, ...).
    pub detail: String,
}

impl Check {
    fn ok(name: &str, detail: String) -> Check {
        Check {
            name: name.into(),
            passed: true,
            detail,
        }
    }

    fn fail(name: &str, detail: String) -> Check {
        Check {
            name: name.into(),
            passed: false,
            detail,
        }
    }
}

/// Options for the verification suite.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Depth cap for the Weyl-module checks.
    pub max_delta: i64,
    /// s-degree cap for the Weyl-module checks.
    pub max_s: i64,
    /// Per-label monomial budget.
    pub budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_delta: 2,
            max_s: 2,
            budget: crate::weylmod::DEFAULT_BUDGET,
        }
    }
}

fn a_n(n: usize) -> Result<Arc<RootSystem>> {
    Ok(Arc::new(RootSystem::new(TypeLabel::A, n)?))
}

/// Run the full suite and return one result per criterion.
pub fn run_all(opts: &VerifyOptions) -> Result<Vec<Check>> {
    Ok(vec![
        check_bracket_soundness()?,
        check_presentations()?,
        check_automorphisms()?,
        check_module_axiom()?,
        check_highest_weight_relations(opts)?,
        check_p_character(opts)?,
        check_pq_character(opts)?,
        check_rewriting_identities(opts)?,
        check_basis_factorization()?,
        check_inequality_chain(opts)?,
    ])
}

/// Criterion 1: antisymmetry and the Jacobi identity, exhaustively on small
/// windows plus 500 seeded random triples.
pub fn check_bracket_soundness() -> Result<Check> {
    let name = "bracket-soundness";
    let rs = a_n(1)?;
    let b1 = basis_window(&rs, 1, SubalgebraTag::Full);
    let mut checked = 0usize;
    for a in &b1 {
        for b in &b1 {
            for c in &b1 {
                let (ea, eb, ec) = (
                    TorElt::basis(rs.clone(), a.clone()),
                    TorElt::basis(rs.clone(), b.clone()),
                    TorElt::basis(rs.clone(), c.clone()),
                );
                let mut j = tor_bracket(&tor_bracket(&ea, &eb)?, &ec)?;
                j.add_assign(&tor_bracket(&tor_bracket(&eb, &ec)?, &ea)?)?;
                j.add_assign(&tor_bracket(&tor_bracket(&ec, &ea)?, &eb)?)?;
                if !j.is_zero() {
                    return Ok(Check::fail(name, format!("Jacobi failed at {a}, {b}, {c}")));
                }
                checked += 1;
            }
        }
    }
    let b2 = basis_window(&rs, 2, SubalgebraTag::Full);
    for a in &b2 {
        for b in &b2 {
            let ea = TorElt::basis(rs.clone(), a.clone());
            let eb = TorElt::basis(rs.clone(), b.clone());
            let mut s = tor_bracket(&ea, &eb)?;
            s.add_assign(&tor_bracket(&eb, &ea)?)?;
            if !s.is_zero() {
                return Ok(Check::fail(name, format!("antisymmetry failed at {a}, {b}")));
            }
            checked += 1;
        }
    }
    let b3 = basis_window(&rs, 3, SubalgebraTag::Full);
    let mut rng = StdRng::seed_from_u64(20260823);
    for _ in 0..500 {
        let pick = |rng: &mut StdRng| {
            let mut x = TorElt::zero(rs.clone());
            for _ in 0..2 {
                let b = b3[rng.gen_range(0..b3.len())].clone();
                x.add_term(b, rat(rng.gen_range(-3..=3)));
            }
            x
        };
        let (ea, eb, ec) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let mut j = tor_bracket(&tor_bracket(&ea, &eb)?, &ec)?;
        j.add_assign(&tor_bracket(&tor_bracket(&eb, &ec)?, &ea)?)?;
        j.add_assign(&tor_bracket(&tor_bracket(&ec, &ea)?, &eb)?)?;
        if !j.is_zero() {
            return Ok(Check::fail(name, "random Jacobi triple failed".into()));
        }
        checked += 1;
    }
    Ok(Check::ok(name, format!("{checked} identities")))
}

/// Criterion 2: all defining relations of both presentations hold under the
/// generator map for A1 and A2 with exponents in [-3, 3].
pub fn check_presentations() -> Result<Check> {
    let name = "presentations";
    let mut checked = 0usize;
    for rank in [1usize, 2] {
        let rs = a_n(rank)?;
        for nonneg in [false, true] {
            let report = verify_presentation(&rs, 3, nonneg)?;
            checked += report.checked;
            if !report.passed() {
                return Ok(Check::fail(
                    name,
                    format!(
                        "A{rank} (nonneg = {nonneg}): {}",
                        report.failures.first().cloned().unwrap_or_default()
                    ),
                ));
            }
        }
    }
    Ok(Check::ok(name, format!("{checked} relations")))
}

/// Criterion 3: the coordinate-swap, reflection, and shift maps are Lie
/// homomorphisms on basis pairs, and the reflection-induction identity holds.
pub fn check_automorphisms() -> Result<Check> {
    let name = "automorphisms";
    let rs = a_n(1)?;
    let full: Vec<TorElt> = basis_window(&rs, 2, SubalgebraTag::Full)
        .into_iter()
        .map(|b| TorElt::basis(rs.clone(), b))
        .collect();
    let mut pairs = Vec::new();
    for a in &full {
        for b in &full {
            pairs.push((a.clone(), b.clone()));
        }
    }
    let mut checked = 0usize;
    let maps: Vec<(&str, Box<dyn Fn(&TorElt) -> Result<TorElt>>)> = vec![
        ("s-swap", Box::new(|x: &TorElt| Ok(apply_s(x, 1)))),
        ("s-swap-inverse", Box::new(|x: &TorElt| Ok(apply_s(x, -1)))),
        ("t0-reflection", Box::new(|x: &TorElt| apply_t0(x, DEFAULT_EXP_CAP))),
        ("theta-reflection", Box::new(|x: &TorElt| apply_ttheta(x, DEFAULT_EXP_CAP))),
    ];
    for (mname, phi) in &maps {
        let report = homomorphism_report(phi, &pairs)?;
        checked += report.checked_pairs;
        if !report.passed() {
            return Ok(Check::fail(name, format!("{mname} is not a homomorphism")));
        }
    }
    // the shift map is defined on the nonnegative-s subalgebra only
    let plus: Vec<TorElt> = basis_window(&rs, 2, SubalgebraTag::TorPlus)
        .into_iter()
        .map(|b| TorElt::basis(rs.clone(), b))
        .collect();
    let mut ppairs = Vec::new();
    for a in &plus {
        for b in &plus {
            ppairs.push((a.clone(), b.clone()));
        }
    }
    let one = rat(1);
    let report = homomorphism_report(|x| tau_shift(&one, x), &ppairs)?;
    checked += report.checked_pairs;
    if !report.passed() {
        return Ok(Check::fail(name, "shift map is not a homomorphism".into()));
    }
    // induction identity: e_theta ⊗ s^k t^l = T0 Ttheta (e_theta ⊗ s^k t^{l+2})
    for rank in [1usize, 2] {
        let rsn = a_n(rank)?;
        for k in -2..=2 {
            for l in -4..=2 {
                let lhs = TorElt::basis(
                    rsn.clone(),
                    TorBasisElt::G {
                        sym: GSym::Root(rsn.theta.clone()),
                        k,
                        l,
                    },
                );
                let arg = TorElt::basis(
                    rsn.clone(),
                    TorBasisElt::G {
                        sym: GSym::Root(rsn.theta.clone()),
                        k,
                        l: l + 2,
                    },
                );
                let rhs = apply_t0(&apply_ttheta(&arg, DEFAULT_EXP_CAP)?, DEFAULT_EXP_CAP)?;
                if !lhs.sub(&rhs)?.is_zero() {
                    return Ok(Check::fail(
                        name,
                        format!("induction identity failed at A{rank}, k = {k}, l = {l}"),
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(Check::ok(name, format!("{checked} identities")))
}

/// Memoized single-symbol action used by the module-axiom sweep.
struct ActMemo {
    rs: Arc<RootSystem>,
    cache: BTreeMap<(TorBasisElt, FockState), Vec<(FockState, Rat)>>,
}

impl ActMemo {
    fn act(&mut self, b: &TorBasisElt, v: &VElt) -> VElt {
        let mut out = VElt::zero(self.rs.clone(), v.window);
        out.truncated = v.truncated;
        for (st, c) in &v.terms {
            let terms = self
                .cache
                .entry((b.clone(), st.clone()))
                .or_insert_with(|| act_basis(&self.rs, b, st));
            for (st2, c2) in terms.iter() {
                out.add_term(st2.clone(), c2 * c);
            }
        }
        out
    }

    fn act_elt(&mut self, x: &TorElt, v: &VElt) -> VElt {
        let mut out = VElt::zero(self.rs.clone(), v.window);
        out.truncated = v.truncated;
        for (b, cb) in &x.terms {
            let mut part = self.act(b, v);
            part.scale(cb);
            out.add_assign(&part).expect("same window");
        }
        out
    }
}

/// Criterion 4: the action satisfies the Lie module axiom exactly on a safe
/// sub-window where no truncation can occur.
pub fn check_module_axiom() -> Result<Check> {
    let name = "vertex-module-axiom";
    let rs = a_n(1)?;
    let window = Window::new(6, -2, 2);
    let ops = basis_window(&rs, 2, SubalgebraTag::Full);
    let states = enumerate_basis(&rs, &Window::new(2, 0, 0));
    let mut memo = ActMemo {
        rs: rs.clone(),
        cache: BTreeMap::new(),
    };
    let mut checked = 0usize;
    for x in &ops {
        for y in &ops {
            // keep tau inside the window: the bracket has t-degree l_x + l_y
            if (x.bidegree().1 + y.bidegree().1).abs() > 2 {
                continue;
            }
            let ex = TorElt::basis(rs.clone(), x.clone());
            let ey = TorElt::basis(rs.clone(), y.clone());
            let br = tor_bracket(&ex, &ey)?;
            for st in &states {
                let mut v = VElt::zero(rs.clone(), window);
                v.add_term(st.clone(), rat(1));
                let lhs = memo.act_elt(&br, &v);
                let xy = {
                    let t = memo.act(y, &v);
                    memo.act(x, &t)
                };
                let yx = {
                    let t = memo.act(x, &v);
                    memo.act(y, &t)
                };
                let rhs = xy.sub(&yx)?;
                if lhs.truncated || rhs.truncated {
                    return Ok(Check::fail(
                        name,
                        format!("unexpected truncation at {x}, {y}"),
                    ));
                }
                if lhs != rhs {
                    return Ok(Check::fail(
                        name,
                        format!("module axiom failed at {x}, {y} on {st:?}"),
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(Check::ok(name, format!("{checked} triples")))
}

/// Criterion 5: the highest-weight relations of the vertex module, its
/// t-loop annihilation, and the pulled-back generator relations.
pub fn check_highest_weight_relations(opts: &VerifyOptions) -> Result<Check> {
    let name = "highest-weight-relations";
    let rs = a_n(1)?;
    let window = Window::new(6, -4, 4);
    let vac = VElt::vacuum(rs.clone(), window);
    let mut checked = 0usize;
    let elt = |b: TorBasisElt| TorElt::basis(rs.clone(), b);
    let mut expect_zero: Vec<(String, VElt)> = Vec::new();
    // direct relations in the vertex module
    let ftheta_s = TorElt::from_g(rs.clone(), &crate::rootdata::f_theta(&rs), 1, 0);
    expect_zero.push(("f_theta ⊗ s".into(), crate::vrep::act_tor(&ftheta_s, &vac)?));
    for i in 0..rs.rank {
        let e = TorElt::from_g(rs.clone(), &crate::rootdata::e_gen(&rs, i)?, 0, 0);
        let f = TorElt::from_g(rs.clone(), &crate::rootdata::f_gen(&rs, i)?, 0, 0);
        let h = TorElt::from_g(rs.clone(), &crate::rootdata::h_gen(&rs, i)?, 0, 0);
        for (nm, x) in [("e_i", e), ("f_i", f), ("h_i", h)] {
            expect_zero.push((format!("{nm} (i = {})", i + 1), crate::vrep::act_tor(&x, &vac)?));
        }
    }
    expect_zero.push(("d_s".into(), crate::vrep::act_tor(&elt(TorBasisElt::Ds), &vac)?));
    // c_s acts by one
    let csv = crate::vrep::act_tor(&elt(TorBasisElt::Cs), &vac)?;
    if csv != vac {
        return Ok(Check::fail(name, "c_s does not act by 1 on the vacuum".into()));
    }
    checked += 1;
    // (e_theta ⊗ s^{-1})^2 kills the vacuum
    let etheta_sinv = TorElt::from_g(rs.clone(), &crate::rootdata::e_theta(&rs), -1, 0);
    let once = crate::vrep::act_tor(&etheta_sinv, &vac)?;
    expect_zero.push((
        "(e_theta ⊗ s^{-1})^2".into(),
        crate::vrep::act_tor(&etheta_sinv, &once)?,
    ));
    // the t-loop algebra annihilates the vacuum
    for sym in crate::rootdata::g_basis(&rs) {
        for l in -3..=3 {
            let x = elt(TorBasisElt::G { sym: sym.clone(), k: 0, l });
            expect_zero.push((format!("g ⊗ t^{l}"), crate::vrep::act_tor(&x, &vac)?));
        }
    }
    expect_zero.push(("c_t".into(), crate::vrep::act_tor(&elt(TorBasisElt::Ct), &vac)?));
    expect_zero.push(("d_t".into(), crate::vrep::act_tor(&elt(TorBasisElt::Dt), &vac)?));
    // pulled-back generator relations
    for k in -3..=3 {
        for i in 0..=rs.rank {
            let e = generator(&rs, i, k, GenKind::E)?;
            expect_zero.push((format!("e_{{{i},{k}}} v"), pullback_act(&e, &vac)?));
        }
        let h1 = generator(&rs, 1, k, GenKind::H)?;
        expect_zero.push((format!("h_{{1,{k}}} v"), pullback_act(&h1, &vac)?));
        let h0 = generator(&rs, 0, k, GenKind::H)?;
        let got = pullback_act(&h0, &vac)?;
        let mut want = VElt::zero(rs.clone(), window);
        want.add_term(
            FockState {
                heis: vec![],
                lat: rs.zero_wt(),
                dmon: vec![],
                taupow: -k,
            },
            rat(1),
        );
        if got != want {
            return Ok(Check::fail(name, format!("h_{{0,{k}}} v != tau^{} v", -k)));
        }
        checked += 1;
    }
    let ctv = pullback_act(&elt(TorBasisElt::Ct), &vac)?;
    if ctv != vac {
        return Ok(Check::fail(name, "c_t v != v in the pulled-back module".into()));
    }
    checked += 1;
    for b in [TorBasisElt::Cs, TorBasisElt::Ds, TorBasisElt::Dt] {
        expect_zero.push((format!("{b} v"), pullback_act(&elt(b), &vac)?));
    }
    for i in 0..rs.rank {
        let f = generator(&rs, i + 1, 0, GenKind::F)?;
        expect_zero.push((format!("f_{} v", i + 1), pullback_act(&f, &vac)?));
    }
    let f0 = generator(&rs, 0, 0, GenKind::F)?;
    let f0v = pullback_act(&f0, &vac)?;
    expect_zero.push(("f_0^2 v".into(), pullback_act(&f0, &f0v)?));
    for (what, v) in expect_zero {
        if !v.is_zero() {
            return Ok(Check::fail(name, format!("{what} is not zero")));
        }
        checked += 1;
    }
    // lowering relations in the presented module: f_{i,k} v0 = 0 for k >= 1
    let caps = Caps::new(opts.max_delta.max(1), 3);
    let mut cfg = WeylConfig::new(rs.clone(), rat(0), caps);
    cfg.budget = opts.budget;
    let engine = PresentedEngine::new(cfg)?;
    for k in 1..=3 {
        for i in 0..rs.rank {
            let neg: Vec<i64> = rs.simple_root(i)?.iter().map(|c| -c).collect();
            let w: Word = vec![TorBasisElt::G { sym: GSym::Root(neg), k, l: 0 }];
            if !engine.is_null(&straighten(&rs, &w, &rat(0))?)? {
                return Ok(Check::fail(name, format!("f_{{{},{k}}} v0 != 0", i + 1)));
            }
            checked += 1;
        }
        let w: Word = vec![TorBasisElt::G {
            sym: GSym::Root(rs.theta.clone()),
            k,
            l: -1,
        }];
        if !engine.is_null(&straighten(&rs, &w, &rat(0))?)? {
            return Ok(Check::fail(name, format!("f_{{0,{k}}} v0 != 0")));
        }
        checked += 1;
    }
    Ok(Check::ok(name, format!("{checked} relations")))
}

/// Criterion 6: ranks in the specialized module match the p-character
/// product formula for depth up to 3, at two specialization points.
pub fn check_p_character(opts: &VerifyOptions) -> Result<Check> {
    let name = "p-character";
    let rs = a_n(1)?;
    let caps = Caps::new(3, 0);
    let formula = product_expand(&char_l0(&rs, caps), ProductFactor::PPow, caps);
    let mut cfg = WeylConfig::new(rs.clone(), rat(1), caps);
    cfg.budget = opts.budget;
    let t1 = rank_spanning(&cfg)?;
    cfg.a = rat(2);
    let t2 = rank_spanning(&cfg)?;
    if !t1.matches_series(&formula) {
        return Ok(Check::fail(name, "rank table at a = 1 differs from formula".into()));
    }
    if t1.entries != t2.entries {
        return Ok(Check::fail(name, "ranks differ between a = 1 and a = 2".into()));
    }
    Ok(Check::ok(name, format!("{} labels at two points", t1.entries.len())))
}

/// Criterion 7: presented-quotient dimensions match the (p,q)-character
/// product formula within the caps.
pub fn check_pq_character(opts: &VerifyOptions) -> Result<Check> {
    let name = "pq-character";
    let rs = a_n(1)?;
    let caps = Caps::new(opts.max_delta.min(2), opts.max_s.min(2));
    let formula = product_expand(&char_l0(&rs, caps), ProductFactor::PPowQ, caps);
    let mut cfg = WeylConfig::new(rs.clone(), rat(0), caps);
    cfg.budget = opts.budget;
    let table = presented_weyl_dims(&cfg)?;
    if !table.matches_series(&formula) {
        return Ok(Check::fail(name, "presented table differs from formula".into()));
    }
    Ok(Check::ok(name, format!("{} labels", table.entries.len())))
}

/// Criterion 8: the rewriting identities for `e_theta ⊗ s^k t^{-l}` and for
/// the degree-lowering of central elements reduce to zero in the presented
/// module for k in {1, 2}.
pub fn check_rewriting_identities(opts: &VerifyOptions) -> Result<Check> {
    let name = "rewriting-identities";
    let rs = a_n(1)?;
    let m_cap = opts.max_delta.max(3);
    let caps = Caps::new(m_cap, 2);
    let mut cfg = WeylConfig::new(rs.clone(), rat(0), caps);
    cfg.budget = opts.budget;
    let engine = PresentedEngine::new(cfg)?;
    let zero = rat(0);
    let mut checked = 0usize;
    for k in 1..=2i64 {
        for l in 1..=m_cap {
            // (e_theta ⊗ s^k t^{-l}) v0 - sum_{m=1}^{l-k} c(k,-l+m)(e_theta ⊗ t^{-m}) v0
            let head: Word = vec![TorBasisElt::G {
                sym: GSym::Root(rs.theta.clone()),
                k,
                l: -l,
            }];
            let mut v = straighten(&rs, &head, &zero)?;
            for m in 1..=(l - k).max(0) {
                let w: Word = vec![
                    TorBasisElt::C { k, l: -l + m },
                    TorBasisElt::G {
                        sym: GSym::Root(rs.theta.clone()),
                        k: 0,
                        l: -m,
                    },
                ];
                for (word, c) in straighten(&rs, &w, &zero)? {
                    let e = v.entry(word).or_insert_with(Rat::zero);
                    *e -= c;
                }
            }
            v.retain(|_, c| !c.is_zero());
            if !engine.is_null(&v)? {
                return Ok(Check::fail(name, format!("root identity failed at k = {k}, l = {l}")));
            }
            checked += 1;
        }
    }
    // central identity: (s t^{-l} ds) v0 = sum_{m=1}^{l-1} c(1,-l+m)(t^{-m} ds) v0
    // with s t^{-l} ds = (l/2) c(2,-l) and t^{-m} ds = m c(1,-m)
    for l in 1..=m_cap {
        let mut v: SparseVec<Word> = SparseVec::new();
        for (word, c) in straighten(&rs, &[TorBasisElt::C { k: 2, l: -l }], &zero)? {
            let e = v.entry(word).or_insert_with(Rat::zero);
            *e += c * crate::ratio(l, 2);
        }
        for m in 1..=(l - 1) {
            let w: Word = vec![TorBasisElt::C { k: 1, l: -l + m }, TorBasisElt::C { k: 1, l: -m }];
            for (word, c) in straighten(&rs, &w, &zero)? {
                let e = v.entry(word).or_insert_with(Rat::zero);
                *e -= c * rat(m);
            }
        }
        v.retain(|_, c| !c.is_zero());
        if !engine.is_null(&v)? {
            return Ok(Check::fail(name, format!("central identity failed at l = {l}")));
        }
        checked += 1;
    }
    Ok(Check::ok(name, format!("{checked} identities")))
}

/// Criterion 9: basis counts factor as the product of the four tensor-slot
/// counts for every window with depth at most 6.
pub fn check_basis_factorization() -> Result<Check> {
    let name = "basis-factorization";
    let rs = a_n(1)?;
    let mut checked = 0usize;
    for dmax in 0..=6i64 {
        for (tau_min, tau_max) in [(0i64, 0i64), (-2, 2), (-1, 3)] {
            let w = Window::new(dmax, tau_min, tau_max);
            let states = enumerate_basis(&rs, &w);
            let tau_count = (tau_max - tau_min + 1) as usize;
            // per-degree counts of the lattice, Heisenberg, and d-slots
            let mut lat = vec![0usize; (dmax + 1) as usize];
            for p in lattice_ball(&rs, dmax) {
                lat[rs.half_norm(&p) as usize] += 1;
            }
            let mut heis = vec![0usize; (dmax + 1) as usize];
            for d in 0..=dmax {
                heis[d as usize] = heis_multisets(rs.rank, d).len();
            }
            let mut dslot = vec![0usize; (dmax + 1) as usize];
            for p in partitions_up_to(dmax) {
                dslot[p.iter().sum::<i64>() as usize] += 1;
            }
            let mut expected = 0usize;
            for a in 0..=dmax as usize {
                for b in 0..=(dmax as usize - a) {
                    for c in 0..=(dmax as usize - a - b) {
                        expected += lat[a] * heis[b] * dslot[c] * tau_count;
                    }
                }
            }
            if states.len() != expected {
                return Ok(Check::fail(
                    name,
                    format!("window (dmax {dmax}, tau [{tau_min},{tau_max}]): {} vs {expected}", states.len()),
                ));
            }
            checked += 1;
        }
    }
    Ok(Check::ok(name, format!("{checked} windows")))
}

/// Criterion 10: presented dimensions dominate rank dimensions label by
/// label (with the q-grading collapsed), via the comparison order.
pub fn check_inequality_chain(opts: &VerifyOptions) -> Result<Check> {
    let name = "inequality-chain";
    let rs = a_n(1)?;
    let m_cap = opts.max_delta.min(2);
    let caps_q = Caps::new(m_cap, m_cap);
    let mut cfg = WeylConfig::new(rs.clone(), rat(0), caps_q);
    cfg.budget = opts.budget;
    let presented = presented_weyl_dims(&cfg)?;
    let caps_p = Caps::new(m_cap, 0);
    let mut rcfg = WeylConfig::new(rs.clone(), rat(1), caps_p);
    rcfg.budget = opts.budget;
    let ranks = rank_spanning(&rcfg)?;
    // collapse the q-grading of the presented table into the p-only caps
    let mut collapsed = CharSeries::zero(caps_p);
    for ((w, m, _n), d) in &presented.entries {
        collapsed.add(w.clone(), *m, 0, *d as i64);
    }
    let rank_series = {
        let mut s = CharSeries::zero(caps_p);
        for ((w, m, n), d) in &ranks.entries {
            s.add(w.clone(), *m, *n, *d as i64);
        }
        s
    };
    if !char_leq(&rank_series, &collapsed)? {
        return Ok(Check::fail(name, "a rank exceeds the presented dimension".into()));
    }
    Ok(Check::ok(
        name,
        format!("{} labels compared", rank_series.coeffs.len()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    // the expensive criteria run in the dedicated acceptance test; here we
    // cover the quick ones to keep unit runs fast
    #[test]
    fn quick_criteria_pass() {
        let opts = VerifyOptions::default();
        assert!(check_basis_factorization().unwrap().passed);
        assert!(check_inequality_chain(&opts).unwrap().passed);
    }
}
