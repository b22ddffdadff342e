//! The level-one vertex module at a truncation window.
//!
//! The module is realized on the tensor product of
//!
//! - a Fock space `F` over the Heisenberg modes `h_{i,-n}` (`i` a node,
//!   `n > 0`),
//! - the twisted group algebra of the root lattice (`e^beta` components),
//! - a polynomial algebra `D` in commuting symbols `delta(-n)` (`n > 0`),
//! - Laurent powers of a marker `tau`.
//!
//! A monomial basis vector is a [`FockState`]; an element is a sparse
//! rational combination [`VElt`], stored only inside a [`Window`] (maximum
//! s-degree, tau-range) with a flag recording whether any state was
//! truncated away.
//!
//! The action is built from the vertex operator
//!
//! ```text
//! X(beta, u) = u^{(beta,beta)/2} (e^beta u^{h_beta})
//!              exp( Σ_{r>0} h_beta ⊗ s^{-r} / r · u^r )
//!              exp( -Σ_{r>0} h_beta ⊗ s^r / r · u^{-r} )
//! ```
//!
//! whose modes `X_m(beta)` ([`x_mode`]) realize the root vectors, tensored
//! with the central series `Delta_l(u) = exp(Σ_{r>0} l·delta(-r)/r u^r)`
//! ([`delta_coeffs`]) and the tau-shift.  `x ⊗ s^k t^l` acts by
//! `Σ_{j>=0} (mode k+j of x) ⊗ Delta_l^{(-j)} ⊗ tau^l`; the central elements
//! act by the degree-`|k|` piece of the appropriate series; `d_s` acts by
//! `-s-degree` and `d_t` by the tau-exponent.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};
use serde::Serialize;

use crate::rootdata::{ensure_same, GSym, Lat, RootSystem};
use crate::torlie::{TorBasisElt, TorElt};
use crate::{rat, Error, Rat, Result};

/// Truncation window: maximal s-degree and allowed tau-exponent range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    /// Maximal s-degree kept.
    pub dmax: i64,
    /// Smallest tau-exponent kept.
    pub tau_min: i64,
    /// Largest tau-exponent kept.
    pub tau_max: i64,
}

impl Window {
    /// Window with `tau` confined to `[tau_min, tau_max]`.
    pub fn new(dmax: i64, tau_min: i64, tau_max: i64) -> Window {
        Window {
            dmax,
            tau_min,
            tau_max,
        }
    }
}

/// A monomial basis vector of the vertex module.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FockState {
    /// Heisenberg creation modes `h_{i,-n}` as a sorted multiset of `(i, n)`.
    pub heis: Vec<(usize, i64)>,
    /// Lattice component `e^beta` in simple-root coordinates.
    pub lat: Lat,
    /// `delta(-n)` factors as a sorted multiset of `n`.
    pub dmon: Vec<i64>,
    /// Exponent of `tau`.
    pub taupow: i64,
}

impl FockState {
    /// The vacuum state.
    pub fn vacuum(rs: &RootSystem) -> FockState {
        FockState {
            heis: Vec::new(),
            lat: rs.zero_wt(),
            dmon: Vec::new(),
            taupow: 0,
        }
    }

    /// s-degree: `(beta,beta)/2 + Σ heis modes + Σ dmon parts`.
    pub fn sdeg(&self, rs: &RootSystem) -> i64 {
        rs.half_norm(&self.lat)
            + self.heis.iter().map(|&(_, n)| n).sum::<i64>()
            + self.dmon.iter().sum::<i64>()
    }

    fn canon(mut self) -> FockState {
        self.heis.sort_unstable();
        self.dmon.sort_unstable();
        self
    }
}

/// A sparse element of the truncated vertex module.
#[derive(Debug, Clone)]
pub struct VElt {
    /// Ambient root system.
    pub rs: Arc<RootSystem>,
    /// Truncation window.
    pub window: Window,
    /// Terms with nonzero coefficients; all states lie inside the window.
    pub terms: BTreeMap<FockState, Rat>,
    /// Whether some state was dropped for lying outside the window.
    pub truncated: bool,
}

impl PartialEq for VElt {
    fn eq(&self, other: &Self) -> bool {
        self.rs.label == other.rs.label
            && self.rs.rank == other.rs.rank
            && self.terms == other.terms
    }
}
impl Eq for VElt {}

impl VElt {
    /// The zero element.
    pub fn zero(rs: Arc<RootSystem>, window: Window) -> VElt {
        VElt {
            rs,
            window,
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    /// The vacuum vector.
    pub fn vacuum(rs: Arc<RootSystem>, window: Window) -> VElt {
        let mut v = VElt::zero(rs.clone(), window);
        v.add_term(FockState::vacuum(&rs), rat(1));
        v
    }

    /// Add `c * state`, dropping (and flagging) states outside the window.
    pub fn add_term(&mut self, state: FockState, c: Rat) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        let state = state.canon();
        if state.sdeg(&self.rs) > self.window.dmax
            || state.taupow < self.window.tau_min
            || state.taupow > self.window.tau_max
        {
            self.truncated = true;
            return;
        }
        match self.terms.entry(state) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Add another element in place (windows must agree).
    pub fn add_assign(&mut self, other: &VElt) -> Result<()> {
        ensure_same(&self.rs, &other.rs)?;
        if self.window != other.window {
            return Err(Error::Invalid("window mismatch".into()));
        }
        self.truncated |= other.truncated;
        for (s, c) in &other.terms {
            self.add_term(s.clone(), c.clone());
        }
        Ok(())
    }

    /// Scale in place.
    pub fn scale(&mut self, c: &Rat) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    /// `self - other`.
    pub fn sub(&self, other: &VElt) -> Result<VElt> {
        let mut out = self.clone();
        ensure_same(&self.rs, &other.rs)?;
        out.truncated |= other.truncated;
        for (s, c) in &other.terms {
            out.add_term(s.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Whether this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// All partitions of integers `0..=budget` (each partition sorted ascending).
pub fn partitions_up_to(budget: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    fn rec(min: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        for part in min..=left {
            cur.push(part);
            out.push(cur.clone());
            rec(part, left - part, cur, out);
            cur.pop();
        }
    }
    rec(1, budget, &mut Vec::new(), &mut out);
    out
}

/// Partitions of exactly `n`.
pub fn partitions_of(n: i64) -> Vec<Vec<i64>> {
    partitions_up_to(n)
        .into_iter()
        .filter(|p| p.iter().sum::<i64>() == n)
        .collect()
}

fn z_factor(partition: &[i64]) -> Rat {
    // z_mu = prod over part sizes r: r^{m_r} * m_r!
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for &p in partition {
        *counts.entry(p).or_insert(0) += 1;
    }
    let mut z = rat(1);
    for (r, m) in counts {
        for _ in 0..m {
            z *= rat(r);
        }
        for i in 1..=m {
            z *= rat(i);
        }
    }
    z
}

/// Truncated expansion of `Delta_l(u) = exp(Σ_{r>0} l delta(-r)/r u^r)`.
#[derive(Debug, Clone)]
pub struct DeltaSeries {
    /// The parameter `l`.
    pub l: i64,
    /// `coeffs[j]` is `Delta_l^{(-j)}` as a polynomial in the `delta(-n)`:
    /// a list of (multiset of parts, coefficient).
    pub coeffs: Vec<Vec<(Vec<i64>, Rat)>>,
}

/// Compute `Delta_l^{(-j)}` for `j = 0..=j_max`:
/// `Δ_l^{(-j)} = Σ_{mu ⊢ j} l^{len(mu)} / z_mu · Π delta(-mu_i)`.
pub fn delta_coeffs(l: i64, j_max: i64) -> DeltaSeries {
    let mut coeffs: Vec<Vec<(Vec<i64>, Rat)>> = Vec::new();
    for j in 0..=j_max {
        let mut row = Vec::new();
        for mu in partitions_of(j) {
            let mut c = Rat::one();
            for _ in 0..mu.len() {
                c *= rat(l);
            }
            c /= z_factor(&mu);
            if !c.is_zero() {
                row.push((mu, c));
            }
        }
        coeffs.push(row);
    }
    DeltaSeries { l, coeffs }
}

/// The mode `X_m(beta)` of the vertex operator attached to a root `beta`,
/// applied to a single state.  The result is exact (no window truncation):
/// the new s-degree is `sdeg - m`, so the mode vanishes unless
/// `m <= sdeg_F(state) - (beta + lat, beta + lat)/2` where `sdeg_F` omits the
/// `dmon`/`tau` factors.  `dmon` and `taupow` pass through untouched.
pub fn x_mode(rs: &RootSystem, beta: &Lat, m: i64, state: &FockState) -> Vec<(FockState, Rat)> {
    if !rs.is_root(beta) {
        return Vec::new();
    }
    // Step 1: annihilation exponential exp(-Σ_r h_beta ⊗ s^r / r · u^{-r}).
    // Since the summands commute, exp(A)^ = Σ_q A^q/q! and A removes one
    // Heisenberg entry per application with coefficient -(beta, alpha_i)
    // (independent of the removed mode r) and u-offset -r.
    // terms: (heis multiset, removed degree) -> coefficient
    let mut levels: Vec<BTreeMap<(Vec<(usize, i64)>, i64), Rat>> = Vec::new();
    let mut first = BTreeMap::new();
    first.insert((state.heis.clone(), 0i64), rat(1));
    levels.push(first);
    loop {
        let last = levels.last().unwrap();
        let mut next: BTreeMap<(Vec<(usize, i64)>, i64), Rat> = BTreeMap::new();
        for ((heis, removed), coeff) in last {
            // distinct entries with multiplicities
            let mut idx = 0;
            while idx < heis.len() {
                let (i, n) = heis[idx];
                let mult = heis[idx..].iter().take_while(|&&e| e == (i, n)).count();
                let mut ei = vec![0i64; rs.rank];
                ei[i] = 1;
                let pair = rs.form(beta, &ei);
                if pair != 0 {
                    let mut h2 = heis.clone();
                    h2.remove(idx);
                    let c = coeff * rat(-(pair) * mult as i64);
                    let e = next.entry((h2, removed + n)).or_insert_with(Rat::zero);
                    *e += c;
                }
                idx += mult;
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    let mut ann: BTreeMap<(Vec<(usize, i64)>, i64), Rat> = BTreeMap::new();
    let mut factorial = rat(1);
    for (q, level) in levels.into_iter().enumerate() {
        if q > 0 {
            factorial *= rat(q as i64);
        }
        for ((h, d), c) in level {
            let e = ann.entry((h, d)).or_insert_with(Rat::zero);
            *e += c / &factorial;
        }
    }
    // Step 2: zero mode and lattice shift: prefactor u^{(beta,beta)/2},
    // u^{h_beta} e^gamma = u^{(beta,gamma)}, e^beta e^gamma = eps(beta,gamma).
    let base_pow = rs.half_norm(beta) + rs.form(beta, &state.lat);
    let sign = rat(rs.eps(beta, &state.lat));
    let new_lat: Lat = beta.iter().zip(&state.lat).map(|(a, b)| a + b).collect();
    // Step 3: creation exponential at the exact degree needed so the total
    // u-power is -m.
    let mut out: Vec<(FockState, Rat)> = Vec::new();
    for ((heis1, removed), c1) in ann {
        let need = -m - base_pow + removed;
        if need < 0 {
            continue;
        }
        let c1 = c1 * &sign;
        // exp(Σ_r h_beta ⊗ s^{-r}/r · u^r) at exact degree `need`:
        // Σ_q B^q/q! with B adding one entry (i, r), coefficient beta_i / r.
        // levels[q]: (heis, added degree) -> coeff
        let mut lvl: BTreeMap<(Vec<(usize, i64)>, i64), Rat> = BTreeMap::new();
        lvl.insert((heis1, 0), c1);
        let mut fact = rat(1);
        let mut q = 0i64;
        loop {
            for ((h, added), c) in &lvl {
                if *added == need {
                    let st = FockState {
                        heis: h.clone(),
                        lat: new_lat.clone(),
                        dmon: state.dmon.clone(),
                        taupow: state.taupow,
                    }
                    .canon();
                    out.push((st, c / &fact));
                }
            }
            if q >= need {
                break;
            }
            let mut next: BTreeMap<(Vec<(usize, i64)>, i64), Rat> = BTreeMap::new();
            for ((h, added), c) in &lvl {
                for r in 1..=(need - added) {
                    for (i, &bi) in beta.iter().enumerate() {
                        if bi == 0 {
                            continue;
                        }
                        let mut h2 = h.clone();
                        h2.push((i, r));
                        h2.sort_unstable();
                        let e = next.entry((h2, added + r)).or_insert_with(Rat::zero);
                        *e += c * rat(bi) / rat(r);
                    }
                }
            }
            q += 1;
            fact *= rat(q);
            lvl = next;
            if lvl.is_empty() {
                break;
            }
        }
    }
    out
}

fn heis_max_mode(state: &FockState) -> i64 {
    state.heis.iter().map(|&(_, n)| n).max().unwrap_or(0)
}

/// Action of the Heisenberg/weight operator `h_i ⊗ s^m` on a state
/// (creation for `m < 0`, weight scalar for `m = 0`, annihilation for
/// `m > 0`).
fn cartan_mode(rs: &RootSystem, i: usize, m: i64, state: &FockState) -> Vec<(FockState, Rat)> {
    let mut ei = vec![0i64; rs.rank];
    ei[i] = 1;
    if m == 0 {
        let c = rs.form(&ei, &state.lat);
        if c == 0 {
            return Vec::new();
        }
        return vec![(state.clone(), rat(c))];
    }
    if m < 0 {
        let mut st = state.clone();
        st.heis.push((i, -m));
        return vec![(st.canon(), rat(1))];
    }
    // annihilation: [h_i ⊗ s^m, h_{j,-m}] = m (alpha_i, alpha_j)
    let mut out = Vec::new();
    let mut idx = 0;
    while idx < state.heis.len() {
        let (j, n) = state.heis[idx];
        let mult = state.heis[idx..]
            .iter()
            .take_while(|&&e| e == (j, n))
            .count();
        if n == m {
            let mut ej = vec![0i64; rs.rank];
            ej[j] = 1;
            let pair = rs.form(&ei, &ej);
            if pair != 0 {
                let mut st = state.clone();
                st.heis.remove(idx);
                out.push((st, rat(m * pair * mult as i64)));
            }
        }
        idx += mult;
    }
    out
}

/// Multiply a state by `Delta_l^{(-j)}` and shift tau by `l`.
fn apply_delta_and_tau(
    series: &DeltaSeries,
    j: i64,
    l: i64,
    terms: Vec<(FockState, Rat)>,
) -> Vec<(FockState, Rat)> {
    let mut out = Vec::new();
    if j as usize >= series.coeffs.len() {
        return out;
    }
    for (mu, dc) in &series.coeffs[j as usize] {
        for (st, c) in &terms {
            let mut st2 = st.clone();
            st2.dmon.extend_from_slice(mu);
            st2.taupow += l;
            out.push((st2.canon(), c * dc));
        }
    }
    out
}

/// Exact action of one toroidal basis symbol on one state (no truncation).
pub fn act_basis(rs: &RootSystem, b: &TorBasisElt, state: &FockState) -> Vec<(FockState, Rat)> {
    match b {
        TorBasisElt::G { sym, k, l } => {
            // j ranges over the finitely many values where the mode can act
            let jmax = match sym {
                GSym::Root(beta) => {
                    let sum: Lat = beta.iter().zip(&state.lat).map(|(a, b)| a + b).collect();
                    let d_f = state.heis.iter().map(|&(_, n)| n).sum::<i64>()
                        + rs.half_norm(&state.lat);
                    d_f - rs.half_norm(&sum) - k
                }
                GSym::Cartan(_) => std::cmp::max(-k, heis_max_mode(state) - k),
            };
            if jmax < 0 {
                return Vec::new();
            }
            let series = delta_coeffs(*l, jmax);
            let mut out = Vec::new();
            for j in 0..=jmax {
                if series.coeffs[j as usize].is_empty() {
                    continue;
                }
                let modes = match sym {
                    GSym::Root(beta) => x_mode(rs, beta, k + j, state),
                    GSym::Cartan(i) => cartan_mode(rs, *i, k + j, state),
                };
                out.extend(apply_delta_and_tau(&series, j, *l, modes));
            }
            out
        }
        TorBasisElt::C { k, l } => {
            if *l != 0 {
                // c(k,l) = -(k/l) s^{k-1} t^l ds acts as -(k/l) Δ_l^{(-(-k))} τ^l
                // for k < 0; c(0,l) acts as τ^l; zero for k > 0.
                if *k > 0 {
                    Vec::new()
                } else if *k == 0 {
                    let mut st = state.clone();
                    st.taupow += l;
                    vec![(st, rat(1))]
                } else {
                    let j = -k;
                    let series = delta_coeffs(*l, j);
                    let terms = vec![(state.clone(), crate::ratio(-k, *l))];
                    apply_delta_and_tau(&series, j, *l, terms)
                }
            } else {
                // c(k,0) = s^k t^{-1} dt acts as delta(k) for k < 0, zero else
                if *k < 0 {
                    let mut st = state.clone();
                    st.dmon.push(-k);
                    vec![(st.canon(), rat(1))]
                } else {
                    Vec::new()
                }
            }
        }
        TorBasisElt::Cs => vec![(state.clone(), rat(1))],
        TorBasisElt::Ct => Vec::new(),
        TorBasisElt::Ds => {
            let d = state.sdeg(rs);
            if d == 0 {
                Vec::new()
            } else {
                vec![(state.clone(), rat(-d))]
            }
        }
        TorBasisElt::Dt => {
            if state.taupow == 0 {
                Vec::new()
            } else {
                vec![(state.clone(), rat(state.taupow))]
            }
        }
    }
}

/// Coefficient of `u^{-k}` of the vertex series attached to the affine root
/// `beta + l·delta` (`beta` a root or zero), applied to `v`.
pub fn vertex_x_k(beta: &Lat, l: i64, k: i64, v: &VElt) -> Result<VElt> {
    let rs = &v.rs;
    let is_zero_beta = beta.iter().all(|&c| c == 0);
    if !is_zero_beta && !rs.is_root(beta) {
        return Err(Error::Invalid(format!(
            "{beta:?} is not a root or zero"
        )));
    }
    let mut out = VElt::zero(v.rs.clone(), v.window);
    out.truncated = v.truncated;
    for (state, c) in &v.terms {
        if is_zero_beta {
            // coefficient of u^{-k} of Delta_l(u) tau^l: Delta_l^{(k)}, k <= 0
            if k <= 0 {
                let series = delta_coeffs(l, -k);
                for (st, cc) in
                    apply_delta_and_tau(&series, -k, l, vec![(state.clone(), rat(1))])
                {
                    out.add_term(st, cc * c);
                }
            }
        } else {
            let b = TorBasisElt::G {
                sym: GSym::Root(beta.clone()),
                k,
                l,
            };
            for (st, cc) in act_basis(rs, &b, state) {
                out.add_term(st, cc * c);
            }
        }
    }
    Ok(out)
}

/// Linear extension of [`act_basis`]: the toroidal action on the truncated
/// module.  States falling outside the window are dropped and flagged.
pub fn act_tor(x: &TorElt, v: &VElt) -> Result<VElt> {
    ensure_same(&x.rs, &v.rs)?;
    let mut out = VElt::zero(v.rs.clone(), v.window);
    out.truncated = v.truncated;
    for (b, cb) in &x.terms {
        for (state, cs) in &v.terms {
            for (st, c) in act_basis(&v.rs, b, state) {
                out.add_term(st, c * cb * cs);
            }
        }
    }
    Ok(out)
}

/// Enumerate all lattice points with `(beta,beta)/2 <= dmax`.
pub fn lattice_ball(rs: &RootSystem, dmax: i64) -> Vec<Lat> {
    // coordinate bound: beta_i^2 <= (C^{-1})_{ii} * (beta, beta)
    let bounds: Vec<i64> = (0..rs.rank)
        .map(|i| {
            let dii = inverse_diag(rs, i);
            let target = dii * rat(2 * dmax);
            let mut b = 0i64;
            while rat((b + 1) * (b + 1)) <= target {
                b += 1;
            }
            b
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; rs.rank];
    fn rec(
        rs: &RootSystem,
        bounds: &[i64],
        i: usize,
        cur: &mut Vec<i64>,
        dmax: i64,
        out: &mut Vec<Lat>,
    ) {
        if i == bounds.len() {
            if rs.half_norm(cur) <= dmax {
                out.push(cur.clone());
            }
            return;
        }
        for c in -bounds[i]..=bounds[i] {
            cur[i] = c;
            rec(rs, bounds, i + 1, cur, dmax, out);
        }
        cur[i] = 0;
    }
    rec(rs, &bounds, 0, &mut cur, dmax, &mut out);
    out.sort();
    out
}

fn inverse_diag(rs: &RootSystem, i: usize) -> Rat {
    // solve C x = e_i exactly; return x_i
    let n = rs.rank;
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = rs.cartan[r].iter().map(|&v| rat(v)).collect();
            row.push(if r == i { rat(1) } else { rat(0) });
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("singular");
        m.swap(col, piv);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c2 in 0..=n {
                    let sub = &f * &m[col][c2];
                    m[r][c2] -= sub;
                }
            }
        }
    }
    m[i][n].clone()
}

/// Multisets of Heisenberg modes `(i, n)` with total degree exactly `d`.
pub fn heis_multisets(rank: usize, d: i64) -> Vec<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    // entries ordered: generate nondecreasing sequences of (n, i) pairs
    fn rec(
        rank: usize,
        left: i64,
        min: (i64, usize),
        cur: &mut Vec<(usize, i64)>,
        out: &mut Vec<Vec<(usize, i64)>>,
    ) {
        if left == 0 {
            let mut v = cur.clone();
            v.sort_unstable();
            out.push(v);
            return;
        }
        for n in min.0..=left {
            let istart = if n == min.0 { min.1 } else { 0 };
            for i in istart..rank {
                cur.push((i, n));
                rec(rank, left - n, (n, i), cur, out);
                cur.pop();
            }
        }
    }
    rec(rank, d, (1, 0), &mut Vec::new(), &mut out);
    out
}

/// Complete enumeration of all basis states inside a window.
pub fn enumerate_basis(rs: &RootSystem, window: &Window) -> Vec<FockState> {
    let mut out = Vec::new();
    for lat in lattice_ball(rs, window.dmax) {
        let base = rs.half_norm(&lat);
        for hd in 0..=(window.dmax - base) {
            for heis in heis_multisets(rs.rank, hd) {
                for dmon in partitions_up_to(window.dmax - base - hd) {
                    for taupow in window.tau_min..=window.tau_max {
                        out.push(FockState {
                            heis: heis.clone(),
                            lat: lat.clone(),
                            dmon: dmon.clone(),
                            taupow,
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::TypeLabel;

    fn a1() -> Arc<RootSystem> {
        Arc::new(RootSystem::new(TypeLabel::A, 1).unwrap())
    }

    fn win(dmax: i64) -> Window {
        Window::new(dmax, -3, 3)
    }

    #[test]
    fn delta_series_small_values() {
        let d1 = delta_coeffs(1, 2);
        assert_eq!(d1.coeffs[0], vec![(vec![], rat(1))]);
        assert_eq!(d1.coeffs[1], vec![(vec![1], rat(1))]);
        // Delta_2^{(-2)} = delta(-2) + 2 delta(-1)^2
        let d2 = delta_coeffs(2, 2);
        let row: BTreeMap<Vec<i64>, Rat> = d2.coeffs[2].iter().cloned().collect();
        assert_eq!(row[&vec![2]], rat(1));
        assert_eq!(row[&vec![1, 1]], rat(2));
        // Delta_0 is identically 1
        let d0 = delta_coeffs(0, 3);
        assert!(d0.coeffs[1].is_empty() && d0.coeffs[2].is_empty());
    }

    #[test]
    fn x_modes_on_vacuum_match_hand_expansion() {
        // X(alpha,u)vac = sum_j u^{1+j} E^-_j e^alpha, so the u^{-m} modes are
        // zero for m >= 0, e^alpha at m = -1, h_{1,-1} e^alpha at m = -2, and
        // (h_{1,-1}^2/2 + h_{1,-2}/2) e^alpha at m = -3.
        let rs = a1();
        let vac = FockState::vacuum(&rs);
        let alpha = vec![1i64];
        for m in 0..=2 {
            assert!(x_mode(&rs, &alpha, m, &vac).is_empty(), "m = {m}");
        }
        let got: BTreeMap<FockState, Rat> = x_mode(&rs, &alpha, -1, &vac).into_iter().collect();
        let ea = FockState {
            heis: vec![],
            lat: vec![1],
            dmon: vec![],
            taupow: 0,
        };
        assert_eq!(got, BTreeMap::from([(ea.clone(), rat(1))]));
        let got: BTreeMap<FockState, Rat> = x_mode(&rs, &alpha, -2, &vac).into_iter().collect();
        let mut h1ea = ea.clone();
        h1ea.heis = vec![(0, 1)];
        assert_eq!(got, BTreeMap::from([(h1ea.clone(), rat(1))]));
        let got: BTreeMap<FockState, Rat> = x_mode(&rs, &alpha, -3, &vac).into_iter().collect();
        let mut h11ea = ea.clone();
        h11ea.heis = vec![(0, 1), (0, 1)];
        let mut h2ea = ea.clone();
        h2ea.heis = vec![(0, 2)];
        assert_eq!(
            got,
            BTreeMap::from([(h11ea, crate::ratio(1, 2)), (h2ea, crate::ratio(1, 2))])
        );
    }

    #[test]
    fn frenkel_kac_commutator_on_lattice_states() {
        // [X_0(alpha), X_0(-alpha)] e^alpha = eps(alpha,-alpha) h_alpha e^alpha
        //                                  = -2 e^alpha
        let rs = a1();
        let alpha = vec![1i64];
        let malpha = vec![-1i64];
        let ea = FockState {
            heis: vec![],
            lat: vec![1],
            dmon: vec![],
            taupow: 0,
        };
        let apply = |beta: &Lat, m: i64, terms: &BTreeMap<FockState, Rat>| {
            let mut out: BTreeMap<FockState, Rat> = BTreeMap::new();
            for (st, c) in terms {
                for (st2, c2) in x_mode(&rs, beta, m, st) {
                    let e = out.entry(st2).or_insert_with(Rat::zero);
                    *e += c2 * c;
                    if e.is_zero() {
                        // keep sparse
                    }
                }
            }
            out.retain(|_, v| !v.is_zero());
            out
        };
        let start = BTreeMap::from([(ea.clone(), rat(1))]);
        let ab = apply(&alpha, 0, &apply(&malpha, 0, &start));
        let ba = apply(&malpha, 0, &apply(&alpha, 0, &start));
        let mut comm = ab;
        for (st, c) in ba {
            let e = comm.entry(st).or_insert_with(Rat::zero);
            *e -= c;
            if e.is_zero() {}
        }
        comm.retain(|_, v| !v.is_zero());
        assert_eq!(comm, BTreeMap::from([(ea, rat(-2))]));
    }

    #[test]
    fn enumerate_basis_counts() {
        let rs = a1();
        // D_max = 0: vacuum only
        let w = Window::new(0, 0, 0);
        assert_eq!(enumerate_basis(&rs, &w).len(), 1);
        // D_max = 1: vacuum, h_{1,-1}, delta(-1), e^{±alpha}
        let w = Window::new(1, 0, 0);
        assert_eq!(enumerate_basis(&rs, &w).len(), 5);
        // states of s-degree exactly 2 with lat = 0
        let w = Window::new(2, 0, 0);
        let states = enumerate_basis(&rs, &w);
        let count = states
            .iter()
            .filter(|s| s.lat == vec![0] && s.sdeg(&rs) == 2)
            .count();
        assert_eq!(count, 5);
    }

    #[test]
    fn basis_counts_factor_across_tensor_slots() {
        let rs = a1();
        for dmax in 0..=4 {
            let w = Window::new(dmax, -1, 2);
            let states = enumerate_basis(&rs, &w);
            // factorization: total = sum over (f-degree, d-degree) splits of
            // (#F-and-lattice at deg a) * (#partitions at deg b) * #tau
            let tau_count = (w.tau_max - w.tau_min + 1) as usize;
            let mut fq = vec![0usize; (dmax + 1) as usize];
            for lat in lattice_ball(&rs, dmax) {
                let base = rs.half_norm(&lat);
                for hd in 0..=(dmax - base) {
                    fq[(base + hd) as usize] += heis_multisets(rs.rank, hd).len();
                }
            }
            let mut dpart = vec![0usize; (dmax + 1) as usize];
            for p in partitions_up_to(dmax) {
                dpart[p.iter().sum::<i64>() as usize] += 1;
            }
            let mut expected = 0usize;
            for a in 0..=dmax as usize {
                for b in 0..=(dmax as usize - a) {
                    expected += fq[a] * dpart[b] * tau_count;
                }
            }
            assert_eq!(states.len(), expected, "dmax = {dmax}");
        }
    }

    #[test]
    fn central_actions_on_vacuum() {
        let rs = a1();
        let v = VElt::vacuum(rs.clone(), win(4));
        // e_0 = f_theta ⊗ t kills the vacuum
        let e0 = crate::torlie::generator(&rs, 0, 0, crate::torlie::GenKind::E).unwrap();
        assert!(act_tor(&e0, &v).unwrap().is_zero());
        // c_s acts by 1
        let cs = TorElt::basis(rs.clone(), TorBasisElt::Cs);
        assert_eq!(act_tor(&cs, &v).unwrap(), v);
        // c(-2,0) -> delta(-2) vac; c(2,0) -> 0
        let c = TorElt::basis(rs.clone(), TorBasisElt::C { k: -2, l: 0 });
        let got = act_tor(&c, &v).unwrap();
        let mut want = VElt::zero(rs.clone(), win(4));
        want.add_term(
            FockState {
                heis: vec![],
                lat: vec![0],
                dmon: vec![2],
                taupow: 0,
            },
            rat(1),
        );
        assert_eq!(got, want);
        let c = TorElt::basis(rs.clone(), TorBasisElt::C { k: 2, l: 0 });
        assert!(act_tor(&c, &v).unwrap().is_zero());
        // c_t, d_s, d_t all kill the vacuum
        for b in [TorBasisElt::Ct, TorBasisElt::Ds, TorBasisElt::Dt] {
            let x = TorElt::basis(rs.clone(), b);
            assert!(act_tor(&x, &v).unwrap().is_zero());
        }
        // X_0(0 + delta) vac = tau vac
        let got = vertex_x_k(&vec![0], 1, 0, &v).unwrap();
        let mut want = VElt::zero(rs.clone(), win(4));
        want.add_term(
            FockState {
                heis: vec![],
                lat: vec![0],
                dmon: vec![],
                taupow: 1,
            },
            rat(1),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn weight_bookkeeping_under_homogeneous_action() {
        let rs = a1();
        let w = Window::new(6, -3, 3);
        let states = enumerate_basis(&rs, &Window::new(2, -1, 1));
        let ops = [
            TorBasisElt::G {
                sym: GSym::Root(vec![1]),
                k: -1,
                l: 2,
            },
            TorBasisElt::G {
                sym: GSym::Cartan(0),
                k: -2,
                l: -1,
            },
            TorBasisElt::C { k: -1, l: 1 },
        ];
        for b in &ops {
            let (k, l) = b.bidegree();
            let wt = b.weight(&rs);
            for st in &states {
                for (st2, _) in act_basis(&rs, b, st) {
                    assert_eq!(st2.sdeg(&rs), st.sdeg(&rs) - k);
                    assert_eq!(st2.taupow, st.taupow + l);
                    let expect: Lat = st.lat.iter().zip(&wt).map(|(a, b)| a + b).collect();
                    assert_eq!(st2.lat, expect);
                }
                let _ = w;
            }
        }
    }

    #[test]
    fn module_axiom_spot_checks() {
        // act([x,y], v) = act(x, act(y, v)) - act(y, act(x, v)) on a small
        // safe sub-window
        let rs = a1();
        let window = Window::new(8, -4, 4);
        let ops = crate::autos::basis_window(&rs, 1, crate::torlie::SubalgebraTag::Full);
        let states = enumerate_basis(&rs, &Window::new(1, -1, 1));
        for x in &ops {
            for y in &ops {
                let ex = TorElt::basis(rs.clone(), x.clone());
                let ey = TorElt::basis(rs.clone(), y.clone());
                let br = crate::torlie::tor_bracket(&ex, &ey).unwrap();
                for st in &states {
                    let mut v = VElt::zero(rs.clone(), window);
                    v.add_term(st.clone(), rat(1));
                    let lhs = act_tor(&br, &v).unwrap();
                    let xy = act_tor(&ex, &act_tor(&ey, &v).unwrap()).unwrap();
                    let yx = act_tor(&ey, &act_tor(&ex, &v).unwrap()).unwrap();
                    let rhs = xy.sub(&yx).unwrap();
                    assert!(!lhs.truncated && !rhs.truncated, "truncated at {x:?} {y:?}");
                    assert_eq!(lhs, rhs, "module axiom failed at {x:?}, {y:?}, {st:?}");
                }
            }
        }
    }
}
