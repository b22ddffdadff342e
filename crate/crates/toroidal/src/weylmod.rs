//! Level-one Weyl module machinery.
//!
//! Two independent computations live here, both producing a [`DimTable`] of
//! graded dimensions indexed by `(finite weight, delta-depth m, s-degree n)`:
//!
//! - **Rank in the twisted vertex module.**  The s/t-swap pulls the vertex
//!   module back to a module over the algebra in the original coordinates
//!   ([`pullback_act`]); the vacuum becomes a highest-weight-style cyclic
//!   vector `v` on which `c(1,0)` acts by `tau^{-1}`.  [`specialize`]
//!   evaluates `tau` at a nonzero rational point `a`, and [`rank_spanning`]
//!   applies the canonical spanning monomials ([`spanning_monomials`]) to
//!   `v` and computes exact ranks per label.
//!
//! - **Presented quotient.**  [`PresentedEngine`] builds the cyclic module
//!   given by the graded highest-weight relations at a point `a` (normally
//!   `a = 0`): the positive part annihilates the generator, the Cartan part
//!   acts through the character `h_{i,k} -> delta_{i,0} a^k`, `d_t` by zero,
//!   and `f_0^2` and the `f_i` are imposed as null vectors.  Monomials in the
//!   lowering part form a basis of the induced module; a straightening
//!   engine ([`straighten`]) rewrites arbitrary words into that basis, the
//!   submodule generated by the null vectors is closed out by exact linear
//!   algebra, and dimensions are read off per label
//!   ([`PresentedEngine::dim`]).

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::autos::apply_s;
use crate::charseries::{CharSeries, Caps};
use crate::linalg::{RowReducer, SparseVec};
use crate::rootdata::{GSym, Lat, RootSystem};
use crate::torlie::{SubalgebraTag, TorBasisElt, TorElt};
use crate::vrep::{act_tor, lattice_ball, FockState, VElt, Window};
use crate::{rat, Error, Rat, Result};

/// A graded label: `(finite weight, delta-depth m, s-degree n)`.
pub type Label = (Lat, i64, i64);

/// A word in toroidal basis symbols (a product, leftmost acting last).
pub type Word = Vec<TorBasisElt>;

/// Configuration for Weyl-module computations.
#[derive(Debug, Clone)]
pub struct WeylConfig {
    /// Ambient root system.
    pub rs: Arc<RootSystem>,
    /// Specialization point.
    pub a: Rat,
    /// Truncation caps.
    pub caps: Caps,
    /// Maximal number of spanning monomials per label.
    pub budget: usize,
}

/// Default per-label monomial budget.
pub const DEFAULT_BUDGET: usize = 20000;

impl WeylConfig {
    /// Configuration at specialization point `a` with the given caps.
    pub fn new(rs: Arc<RootSystem>, a: Rat, caps: Caps) -> WeylConfig {
        WeylConfig {
            rs,
            a,
            caps,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// A table of graded dimensions with provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimTable {
    /// Root system name, e.g. `"A1"`.
    pub system: String,
    /// Specialization point, if any.
    pub a: Option<Rat>,
    /// Truncation caps.
    pub caps: Caps,
    /// Dimension per label; complete over the computed label range.
    pub entries: BTreeMap<Label, usize>,
    /// One of `"rank-in-V"`, `"presented-quotient"`, `"formula"`.
    pub provenance: String,
}

impl DimTable {
    /// JSON form of the table.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|((w, m, n), d)| {
                serde_json::json!({"weight": w, "m": m, "n": n, "dim": d})
            })
            .collect();
        serde_json::json!({
            "schema_version": "1",
            "type": self.system,
            "a": self.a.as_ref().map(|a| a.to_string()),
            "caps": {"m_max": self.caps.m_max, "n_max": self.caps.n_max,
                     "w_max": self.caps.w_max},
            "entries": entries,
            "provenance": self.provenance,
        })
    }

    /// Whether the table agrees with a character series on every label in the
    /// shared cap region (absent entries count as zero on both sides).
    pub fn matches_series(&self, ch: &CharSeries) -> bool {
        let mut labels: Vec<Label> = self.entries.keys().cloned().collect();
        labels.extend(ch.coeffs.keys().cloned());
        labels.sort();
        labels.dedup();
        labels.into_iter().all(|(w, m, n)| {
            m > self.caps.m_max
                || n > self.caps.n_max
                || self.entries.get(&(w.clone(), m, n)).copied().unwrap_or(0) as i64
                    == ch.coeff(&w, m, n)
        })
    }

    /// Convert to a character series over the same caps.
    pub fn to_series(&self) -> CharSeries {
        let mut ch = CharSeries::zero(self.caps);
        for ((w, m, n), d) in &self.entries {
            ch.add(w.clone(), *m, *n, *d as i64);
        }
        ch
    }
}

/// The formula-side table: `char_L0` expanded by a product factor.
pub fn formula_table(
    rs: &RootSystem,
    caps: Caps,
    factor: crate::charseries::ProductFactor,
) -> DimTable {
    let ch = crate::charseries::product_expand(&crate::charseries::char_l0(rs, caps), factor, caps);
    DimTable {
        system: rs.name(),
        a: None,
        caps,
        entries: ch
            .coeffs
            .iter()
            .map(|(k, &c)| (k.clone(), c as usize))
            .collect(),
        provenance: "formula".into(),
    }
}

/// Action of the pulled-back module: `x` acts on the vertex module through
/// the inverse s/t-swap.
pub fn pullback_act(x: &TorElt, v: &VElt) -> Result<VElt> {
    act_tor(&apply_s(x, -1), v)
}

/// Evaluate `tau` at `a != 0`: a state with tau-exponent `p` maps to
/// `a^{-p}` times the state with the exponent cleared.
pub fn specialize(v: &VElt, a: &Rat) -> Result<SparseVec<FockState>> {
    if a.is_zero() {
        return Err(Error::Invalid(
            "specialization point must be nonzero".into(),
        ));
    }
    let mut out: SparseVec<FockState> = SparseVec::new();
    for (st, c) in &v.terms {
        let mut pow = Rat::one();
        let p = -st.taupow;
        for _ in 0..p.abs() {
            pow *= a;
        }
        if p < 0 {
            pow = pow.recip();
        }
        let mut st2 = st.clone();
        st2.taupow = 0;
        let e = out.entry(st2).or_insert_with(Rat::zero);
        *e += c * pow;
        if e.is_zero() {
            // cleaned below
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn ht(w: &Lat) -> i64 {
    w.iter().sum()
}

/// Label of a single basis symbol: `(weight, t-depth, s-degree)`.
pub fn letter_label(rs: &RootSystem, b: &TorBasisElt) -> Label {
    let (k, l) = b.bidegree();
    (b.weight(rs), -l, k)
}

fn label_sum(rs: &RootSystem, word: &[TorBasisElt]) -> Label {
    let mut w = rs.zero_wt();
    let (mut m, mut n) = (0, 0);
    for b in word {
        let (bw, bm, bn) = letter_label(rs, b);
        for (x, y) in w.iter_mut().zip(&bw) {
            *x += y;
        }
        m += bm;
        n += bn;
    }
    (w, m, n)
}

/// Enumerate sorted multiset words over `letters` whose labels add up to
/// `target`.  Letters with label `(w, 0, 0)` ("free" letters, necessarily of
/// negative weight) are capped at `free_bound` copies.
fn monomials_with_label(
    rs: &RootSystem,
    letters: &[TorBasisElt],
    target: &Label,
    budget: usize,
) -> Result<Vec<Word>> {
    let labeled: Vec<(TorBasisElt, Label)> = letters
        .iter()
        .map(|b| (b.clone(), letter_label(rs, b)))
        .collect();
    // each non-free letter consumes at least one unit of m + n and raises the
    // height by at most ht(theta); free letters lower the height by >= 1
    let free_bound = (target.1 + target.2) * ht(&rs.theta) + ht(&target.0).abs() + 1;
    let mut out = Vec::new();
    let mut cur: Word = Vec::new();
    fn rec(
        labeled: &[(TorBasisElt, Label)],
        idx: usize,
        rem: Label,
        free_bound: i64,
        budget: usize,
        cur: &mut Word,
        out: &mut Vec<Word>,
    ) -> Result<()> {
        if idx == labeled.len() {
            if rem.0.iter().all(|&c| c == 0) && rem.1 == 0 && rem.2 == 0 {
                if out.len() >= budget {
                    return Err(Error::BudgetExceeded(format!(
                        "more than {budget} monomials at one label; lower the caps or raise the budget"
                    )));
                }
                out.push(cur.clone());
            }
            return Ok(());
        }
        let (b, (bw, bm, bn)) = &labeled[idx];
        let max_mult = if *bm > 0 || *bn > 0 {
            let mut mm = i64::MAX;
            if *bm > 0 {
                mm = mm.min(rem.1 / bm);
            }
            if *bn > 0 {
                mm = mm.min(rem.2 / bn);
            }
            mm
        } else {
            free_bound
        };
        let mut rem2 = rem.clone();
        let mut pushed = 0usize;
        let mut result = Ok(());
        for mult in 0..=max_mult {
            if mult > 0 {
                for (x, y) in rem2.0.iter_mut().zip(bw) {
                    *x -= y;
                }
                rem2.1 -= bm;
                rem2.2 -= bn;
                cur.push(b.clone());
                pushed += 1;
            }
            if rem2.1 < 0 || rem2.2 < 0 {
                break;
            }
            result = rec(labeled, idx + 1, rem2.clone(), free_bound, budget, cur, out);
            if result.is_err() {
                break;
            }
        }
        cur.truncate(cur.len() - pushed);
        result
    }
    rec(&labeled, 0, target.clone(), free_bound, budget, &mut cur, &mut out)?;
    out.sort();
    Ok(out)
}

/// The lowering-part basis symbols in the t-loop picture (`s`-degree zero):
/// `x_beta ⊗ t^{-l}` and `h_i ⊗ t^{-l}` for `l >= 1`, and `x_{-beta}` for
/// positive `beta`.
fn nbar_t_letters(rs: &RootSystem, m_max: i64) -> Vec<TorBasisElt> {
    let mut out = Vec::new();
    for beta in rs.all_roots() {
        for l in 1..=m_max {
            out.push(TorBasisElt::G {
                sym: GSym::Root(beta.clone()),
                k: 0,
                l: -l,
            });
        }
    }
    for i in 0..rs.rank {
        for l in 1..=m_max {
            out.push(TorBasisElt::G {
                sym: GSym::Cartan(i),
                k: 0,
                l: -l,
            });
        }
    }
    for beta in &rs.positive_roots {
        let neg: Lat = beta.iter().map(|c| -c).collect();
        out.push(TorBasisElt::G {
            sym: GSym::Root(neg),
            k: 0,
            l: 0,
        });
    }
    out.sort();
    out
}

/// The lowering-part basis symbols of the nonnegative-s subalgebra:
/// the t-loop letters with arbitrary s-degree `0..=n_max`, plus the central
/// `c(k,-l)` with `k, l >= 1`.
fn nbar_plus_letters(rs: &RootSystem, m_max: i64, n_max: i64) -> Vec<TorBasisElt> {
    let mut out = Vec::new();
    for k in 0..=n_max {
        for beta in rs.all_roots() {
            for l in 1..=m_max {
                out.push(TorBasisElt::G {
                    sym: GSym::Root(beta.clone()),
                    k,
                    l: -l,
                });
            }
        }
        for i in 0..rs.rank {
            for l in 1..=m_max {
                out.push(TorBasisElt::G {
                    sym: GSym::Cartan(i),
                    k,
                    l: -l,
                });
            }
        }
        for beta in &rs.positive_roots {
            let neg: Lat = beta.iter().map(|c| -c).collect();
            out.push(TorBasisElt::G {
                sym: GSym::Root(neg),
                k,
                l: 0,
            });
        }
    }
    for k in 1..=n_max {
        for l in 1..=m_max {
            out.push(TorBasisElt::C { k, l: -l });
        }
    }
    out.sort();
    out
}

/// Canonical spanning monomials of the Weyl module at a target label:
/// multisets of `c(1,-l)` (their count is the `n` component) times PBW
/// monomials in the t-loop lowering letters.
pub fn spanning_monomials(config: &WeylConfig, target: &Label) -> Result<Vec<Word>> {
    let rs = &config.rs;
    let mut letters = nbar_t_letters(rs, target.1);
    for l in 1..=target.1 {
        letters.push(TorBasisElt::C { k: 1, l: -l });
    }
    letters.sort();
    monomials_with_label(rs, &letters, target, config.budget)
}

/// Exact ranks of spanning-monomial images in the specialized module, per
/// label `(weight, m)` within the caps.  `n` in the result is always 0.
pub fn rank_spanning(config: &WeylConfig) -> Result<DimTable> {
    if config.a.is_zero() {
        return Err(Error::Invalid(
            "rank computation requires a nonzero specialization point".into(),
        ));
    }
    let rs = &config.rs;
    let caps = config.caps;
    let window = Window::new(caps.m_max, -caps.m_max, 0);
    let mut entries = BTreeMap::new();
    for lam in lattice_ball(rs, caps.w_max.min(caps.m_max)) {
        for m in rs.half_norm(&lam)..=caps.m_max {
            // the n-component counts c(1,·) factors; gather all of them
            let mut monomials = Vec::new();
            for n in 0..=m {
                monomials.extend(spanning_monomials(config, &(lam.clone(), m, n))?);
            }
            if monomials.len() > config.budget {
                return Err(Error::BudgetExceeded(format!(
                    "{} monomials at ({lam:?}, {m})",
                    monomials.len()
                )));
            }
            let mut red: RowReducer<FockState> = RowReducer::new();
            for mon in &monomials {
                let mut v = VElt::vacuum(rs.clone(), window);
                for b in mon.iter().rev() {
                    v = pullback_act(&TorElt::basis(rs.clone(), b.clone()), &v)?;
                }
                if v.truncated {
                    return Err(Error::Invalid(format!(
                        "window (dmax {}, tau in [{}, 0]) too small for monomial {mon:?}",
                        window.dmax, window.tau_min
                    )));
                }
                red.insert(specialize(&v, &config.a)?);
            }
            entries.insert((lam.clone(), m, 0), red.rank());
        }
    }
    Ok(DimTable {
        system: rs.name(),
        a: Some(config.a.clone()),
        caps,
        entries,
        provenance: "rank-in-V".into(),
    })
}

/// Triangular class of a basis symbol inside the nonnegative-s subalgebra:
/// 0 = lowering, 1 = Cartan-like, 2 = raising.
fn class_of(rs: &RootSystem, b: &TorBasisElt) -> u8 {
    if SubalgebraTag::NBar.contains(rs, b) {
        0
    } else if SubalgebraTag::H.contains(rs, b) {
        1
    } else {
        debug_assert!(SubalgebraTag::N.contains(rs, b));
        2
    }
}

/// Evaluation character on the Cartan-like part: `h_i ⊗ s^k -> 0`,
/// `c(k,0) -> a^k` (`k >= 1`), `c_t -> 1`, `d_t -> 0`.
fn chi(b: &TorBasisElt, a: &Rat) -> Rat {
    match b {
        TorBasisElt::G { .. } => Rat::zero(),
        TorBasisElt::C { k, l: 0 } => {
            let mut p = Rat::one();
            for _ in 0..*k {
                p *= a;
            }
            p
        }
        TorBasisElt::Ct => Rat::one(),
        TorBasisElt::Dt => Rat::zero(),
        other => unreachable!("not a Cartan-like symbol: {other:?}"),
    }
}

/// Rewrite a word applied to the cyclic generator into the PBW basis of
/// sorted lowering-letter words: raising letters annihilate, Cartan-like
/// letters evaluate through [`chi`], inversions are fixed by commutators.
pub fn straighten(rs: &Arc<RootSystem>, word: &[TorBasisElt], a: &Rat) -> Result<SparseVec<Word>> {
    let mut out: SparseVec<Word> = SparseVec::new();
    let mut work: Vec<(Word, Rat)> = vec![(word.to_vec(), rat(1))];
    while let Some((mut w, mut c)) = work.pop() {
        // strip evaluable/annihilating letters from the right end
        loop {
            match w.last() {
                None => break,
                Some(last) => match class_of(rs, last) {
                    2 => {
                        c = Rat::zero();
                        break;
                    }
                    1 => {
                        c *= chi(last, a);
                        if c.is_zero() {
                            break;
                        }
                        w.pop();
                    }
                    _ => break,
                },
            }
        }
        if c.is_zero() {
            continue;
        }
        // find the rightmost out-of-order adjacent pair
        let mut swap_at = None;
        for i in (0..w.len().saturating_sub(1)).rev() {
            let (ca, cb) = (class_of(rs, &w[i]), class_of(rs, &w[i + 1]));
            if ca > cb || (ca == cb && ca == 0 && w[i] > w[i + 1]) {
                swap_at = Some(i);
                break;
            }
        }
        match swap_at {
            None => {
                // normal form: all letters lowering, ascending
                let e = out.entry(w).or_insert_with(Rat::zero);
                *e += c;
                if e.is_zero() {
                    // pruned at the end
                }
            }
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                for (b, cb) in crate::torlie::bracket_basis(rs, &w[i], &w[i + 1]) {
                    if cb.is_zero() {
                        continue;
                    }
                    let mut shorter = w.clone();
                    shorter.remove(i + 1);
                    shorter[i] = b;
                    work.push((shorter, &c * cb));
                }
                work.push((swapped, c));
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// The presented cyclic module at a specialization point, with the null
/// submodule closed out up to the caps.
pub struct PresentedEngine {
    /// Configuration (caps, point, budget).
    pub config: WeylConfig,
    /// Homogeneous spanning vectors of the Cartan-and-raising closure of the
    /// imposed null vectors, with their labels.
    stage1: Vec<(Label, SparseVec<Word>)>,
}

impl PresentedEngine {
    /// Build the engine: impose the null vectors `f_i v0` and `f_0^2 v0` and
    /// close them under the Cartan-like and raising letters within the caps.
    pub fn new(config: WeylConfig) -> Result<PresentedEngine> {
        let rs = config.rs.clone();
        let caps = config.caps;
        let mut seeds: Vec<Word> = Vec::new();
        for i in 0..rs.rank {
            let neg: Lat = rs.simple_root(i)?.iter().map(|c| -c).collect();
            seeds.push(vec![TorBasisElt::G {
                sym: GSym::Root(neg),
                k: 0,
                l: 0,
            }]);
        }
        let f0 = TorBasisElt::G {
            sym: GSym::Root(rs.theta.clone()),
            k: 0,
            l: -1,
        };
        seeds.push(vec![f0.clone(), f0]);
        // seed depth bound: the raising/Cartan ops never increase the depth
        let m_hi = 2;
        // ops: every Cartan-like or raising basis symbol that keeps labels
        // inside m in [0, m_hi], n <= n_max
        let mut ops: Vec<TorBasisElt> = Vec::new();
        for k in 0..=caps.n_max {
            for i in 0..rs.rank {
                for l in 0..=m_hi {
                    ops.push(TorBasisElt::G {
                        sym: GSym::Cartan(i),
                        k,
                        l,
                    });
                }
            }
            for beta in rs.all_roots() {
                for l in 1..=m_hi {
                    ops.push(TorBasisElt::G {
                        sym: GSym::Root(beta.clone()),
                        k,
                        l,
                    });
                }
            }
            for beta in &rs.positive_roots {
                ops.push(TorBasisElt::G {
                    sym: GSym::Root(beta.clone()),
                    k,
                    l: 0,
                });
            }
            if k >= 1 {
                for l in 0..=m_hi {
                    ops.push(TorBasisElt::C { k, l });
                }
            }
        }
        ops.push(TorBasisElt::Ct);
        ops.push(TorBasisElt::Dt);
        let mut red: RowReducer<Word> = RowReducer::new();
        let mut stage1: Vec<(Label, SparseVec<Word>)> = Vec::new();
        let mut queue: Vec<(Label, SparseVec<Word>)> = Vec::new();
        for seed in seeds {
            let label = label_sum(&rs, &seed);
            let v = straighten(&rs, &seed, &config.a)?;
            let r = red.reduce(v);
            if !r.is_empty() {
                red.insert(r.clone());
                stage1.push((label.clone(), r.clone()));
                queue.push((label, r));
            }
        }
        while let Some((label, v)) = queue.pop() {
            for op in &ops {
                let (ow, om, on) = letter_label(&rs, op);
                let m2 = label.1 + om;
                let n2 = label.2 + on;
                if m2 < 0 || n2 > caps.n_max {
                    continue;
                }
                let w2: Lat = label.0.iter().zip(&ow).map(|(a, b)| a + b).collect();
                let mut image: SparseVec<Word> = SparseVec::new();
                for (word, c) in &v {
                    let mut w = Vec::with_capacity(word.len() + 1);
                    w.push(op.clone());
                    w.extend_from_slice(word);
                    for (nw, nc) in straighten(&rs, &w, &config.a)? {
                        let e = image.entry(nw).or_insert_with(Rat::zero);
                        *e += nc * c;
                    }
                }
                image.retain(|_, c| !c.is_zero());
                let r = red.reduce(image);
                if !r.is_empty() {
                    red.insert(r.clone());
                    stage1.push(((w2.clone(), m2, n2), r.clone()));
                    queue.push(((w2, m2, n2), r));
                }
            }
        }
        Ok(PresentedEngine { config, stage1 })
    }

    /// PBW monomials of the induced module at a target label.
    pub fn monomials(&self, target: &Label) -> Result<Vec<Word>> {
        let letters = nbar_plus_letters(&self.config.rs, target.1, target.2);
        monomials_with_label(&self.config.rs, &letters, target, self.config.budget)
    }

    /// Basis size and a reducer spanning the null space at a target label.
    pub fn null_reducer(&self, target: &Label) -> Result<(usize, RowReducer<Word>)> {
        let rs = &self.config.rs;
        let basis_count = self.monomials(target)?.len();
        let mut red: RowReducer<Word> = RowReducer::new();
        for (label, v) in &self.stage1 {
            let rem = (
                target
                    .0
                    .iter()
                    .zip(&label.0)
                    .map(|(a, b)| a - b)
                    .collect::<Lat>(),
                target.1 - label.1,
                target.2 - label.2,
            );
            if rem.1 < 0 || rem.2 < 0 {
                continue;
            }
            let letters = nbar_plus_letters(rs, rem.1, rem.2);
            for mon in monomials_with_label(rs, &letters, &rem, self.config.budget)? {
                let mut image: SparseVec<Word> = SparseVec::new();
                for (word, c) in v {
                    let mut w = mon.clone();
                    w.extend_from_slice(word);
                    for (nw, nc) in straighten(rs, &w, &self.config.a)? {
                        let e = image.entry(nw).or_insert_with(Rat::zero);
                        *e += nc * c;
                    }
                }
                image.retain(|_, c| !c.is_zero());
                red.insert(image);
            }
        }
        Ok((basis_count, red))
    }

    /// Graded dimension of the presented quotient at a target label.
    pub fn dim(&self, target: &Label) -> Result<usize> {
        let (count, red) = self.null_reducer(target)?;
        Ok(count - red.rank())
    }

    /// Whether a vector (in the induced-module PBW basis) maps to zero in the
    /// quotient.  The label must be homogeneous; it is read off the vector.
    pub fn is_null(&self, v: &SparseVec<Word>) -> Result<bool> {
        let Some(word) = v.keys().next() else {
            return Ok(true);
        };
        let target = label_sum(&self.config.rs, word);
        let (_, red) = self.null_reducer(&target)?;
        Ok(red.contains(v))
    }
}

/// Graded dimensions of the presented quotient for all labels within caps.
pub fn presented_weyl_dims(config: &WeylConfig) -> Result<DimTable> {
    let engine = PresentedEngine::new(config.clone())?;
    let rs = &config.rs;
    let caps = config.caps;
    let mut entries = BTreeMap::new();
    for lam in lattice_ball(rs, caps.w_max.min(caps.m_max)) {
        for m in rs.half_norm(&lam)..=caps.m_max {
            for n in 0..=caps.n_max {
                let d = engine.dim(&(lam.clone(), m, n))?;
                entries.insert((lam.clone(), m, n), d);
            }
        }
    }
    Ok(DimTable {
        system: rs.name(),
        a: Some(config.a.clone()),
        caps,
        entries,
        provenance: "presented-quotient".into(),
    })
}
