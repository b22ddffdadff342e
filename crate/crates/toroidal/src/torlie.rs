//! The toroidal Lie algebra as a based vector space with an exact bracket.
//!
//! Basis symbols are
//!
//! - `x ⊗ s^k t^l` for `x` a basis symbol of `g` ([`GSym`]),
//! - central elements `c(k,l)` with `(k,l) ≠ (0,0)`, plus `c_s` and `c_t`,
//! - degree operators `d_s` and `d_t`.
//!
//! The central part is the space of 1-forms modulo exact forms: `c(k,l)` is
//! the class of `s^k t^{l-1} dt` for `k ≠ 0` and of `s^{-1} t^l ds` for
//! `k = 0`, while `c_s = s^{-1} ds` and `c_t = t^{-1} dt`.  The functions
//! [`ds_monomial`] and [`dt_monomial`] rewrite an arbitrary monomial 1-form
//! into this basis (exact forms rewrite to zero); the bracket is then
//!
//! ```text
//! [x ⊗ s^k t^l, y ⊗ s^m t^n]
//!     = [x,y] ⊗ s^{k+m} t^{l+n} + (x,y) · class( d(s^k t^l) · s^m t^n )
//! ```
//!
//! which reproduces the usual three-case formula (coefficient
//! `(lm - kn)/(k+m)` when `k+m ≠ 0`, `k c(0, l+n)` when `k+m = 0 ≠ l+n`, and
//! `k c_s + l c_t` when both sums vanish).  `d_s`, `d_t` act by bidegree and
//! everything central brackets to zero.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::rootdata::{
    bracket_syms, e_gen, e_theta, ensure_same, f_gen, f_theta, h_gen, pairing_syms, GSym, Lat,
    RootSystem,
};
use crate::{rat, ratio, Error, Rat, Result};

/// A basis symbol of the toroidal algebra.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TorBasisElt {
    /// `x ⊗ s^k t^l` for a basis symbol `x` of `g`.
    G {
        /// Basis symbol of `g`.
        sym: GSym,
        /// Exponent of `s`.
        k: i64,
        /// Exponent of `t`.
        l: i64,
    },
    /// Central element `c(k,l)`, `(k,l) ≠ (0,0)`.
    C {
        /// First index (s-degree).
        k: i64,
        /// Second index (t-degree).
        l: i64,
    },
    /// Central element `c_s = s^{-1} ds`.
    Cs,
    /// Central element `c_t = t^{-1} dt`.
    Ct,
    /// Degree operator `d_s`.
    Ds,
    /// Degree operator `d_t`.
    Dt,
}

impl TorBasisElt {
    /// `(s-degree, t-degree)` of the symbol; degree operators and `c_s`,
    /// `c_t` sit in bidegree `(0,0)`.
    pub fn bidegree(&self) -> (i64, i64) {
        match self {
            TorBasisElt::G { k, l, .. } => (*k, *l),
            TorBasisElt::C { k, l } => (*k, *l),
            _ => (0, 0),
        }
    }

    /// Finite weight of the symbol under the adjoint Cartan action.
    pub fn weight(&self, rs: &RootSystem) -> Lat {
        match self {
            TorBasisElt::G { sym, .. } => sym.weight(rs),
            _ => rs.zero_wt(),
        }
    }
}

impl fmt::Display for TorBasisElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorBasisElt::G { sym, k, l } => {
                match sym {
                    GSym::Cartan(i) => write!(f, "H({})", i + 1)?,
                    GSym::Root(beta) => {
                        let coords: Vec<String> = beta.iter().map(|c| c.to_string()).collect();
                        write!(f, "X({})", coords.join(","))?;
                    }
                }
                if *k != 0 {
                    if *k == 1 {
                        write!(f, "*s")?;
                    } else {
                        write!(f, "*s^{k}")?;
                    }
                }
                if *l != 0 {
                    if *l == 1 {
                        write!(f, "*t")?;
                    } else {
                        write!(f, "*t^{l}")?;
                    }
                }
                Ok(())
            }
            TorBasisElt::C { k, l } => write!(f, "C({k},{l})"),
            TorBasisElt::Cs => write!(f, "cs"),
            TorBasisElt::Ct => write!(f, "ct"),
            TorBasisElt::Ds => write!(f, "ds"),
            TorBasisElt::Dt => write!(f, "dt"),
        }
    }
}

/// An element of the toroidal algebra: a sparse rational combination of
/// basis symbols over a fixed root system.
#[derive(Debug, Clone)]
pub struct TorElt {
    /// The ambient root system.
    pub rs: Arc<RootSystem>,
    /// Terms with nonzero coefficients.
    pub terms: BTreeMap<TorBasisElt, Rat>,
}

impl PartialEq for TorElt {
    fn eq(&self, other: &Self) -> bool {
        self.rs.label == other.rs.label
            && self.rs.rank == other.rs.rank
            && self.terms == other.terms
    }
}
impl Eq for TorElt {}

impl TorElt {
    /// The zero element.
    pub fn zero(rs: Arc<RootSystem>) -> TorElt {
        TorElt {
            rs,
            terms: BTreeMap::new(),
        }
    }

    /// A single basis symbol with coefficient 1.
    pub fn basis(rs: Arc<RootSystem>, b: TorBasisElt) -> TorElt {
        let mut e = TorElt::zero(rs);
        e.add_term(b, rat(1));
        e
    }

    /// Add `c * b` in place, keeping the sparse form canonical.
    pub fn add_term(&mut self, b: TorBasisElt, c: Rat) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
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

    /// Add another element in place.
    pub fn add_assign(&mut self, other: &TorElt) -> Result<()> {
        ensure_same(&self.rs, &other.rs)?;
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c.clone());
        }
        Ok(())
    }

    /// Multiply by a scalar in place.
    pub fn scale(&mut self, c: &Rat) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    /// `self - other` as a new element.
    pub fn sub(&self, other: &TorElt) -> Result<TorElt> {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), -c.clone());
        }
        ensure_same(&self.rs, &other.rs)?;
        Ok(out)
    }

    /// Whether this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `x ⊗ s^k t^l` for an element `x` of `g` given as a [`crate::rootdata::GElt`].
    pub fn from_g(rs: Arc<RootSystem>, x: &crate::rootdata::GElt, k: i64, l: i64) -> TorElt {
        let mut out = TorElt::zero(rs);
        for (sym, c) in &x.terms {
            out.add_term(
                TorBasisElt::G {
                    sym: sym.clone(),
                    k,
                    l,
                },
                c.clone(),
            );
        }
        out
    }

    /// Whether every term lies in the given subalgebra.
    pub fn in_subalgebra(&self, tag: SubalgebraTag) -> bool {
        self.terms.keys().all(|b| tag.contains(&self.rs, b))
    }

    /// True if the element is homogeneous in (s, t)-bidegree; returns the
    /// bidegree for nonzero homogeneous elements.
    pub fn homogeneous_bidegree(&self) -> Option<(i64, i64)> {
        let mut deg = None;
        for b in self.terms.keys() {
            let d = b.bidegree();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }
}

impl fmt::Display for TorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in &self.terms {
            // F(i) denotes -x_{-alpha_i}; fold the sign into the coefficient
            // so that Chevalley generators print without spurious signs.
            let (shown, coeff) = display_term(&self.rs, b, c);
            if first {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = coeff.abs();
            if a.is_one() {
                write!(f, "{shown}")?;
            } else if a.is_integer() {
                write!(f, "{}*{shown}", a.numer())?;
            } else {
                write!(f, "{}/{}*{shown}", a.numer(), a.denom())?;
            }
        }
        Ok(())
    }
}

fn display_term(rs: &RootSystem, b: &TorBasisElt, c: &Rat) -> (String, Rat) {
    if let TorBasisElt::G {
        sym: GSym::Root(beta),
        k,
        l,
    } = b
    {
        // Negative simple roots print through the Chevalley generator F(i).
        let neg: Lat = beta.iter().map(|x| -x).collect();
        if let Some(i) = (0..rs.rank).find(|&i| {
            neg.iter()
                .enumerate()
                .all(|(j, &v)| v == if j == i { 1 } else { 0 })
        }) {
            let mut name = format!("F({})", i + 1);
            if *k != 0 {
                name.push_str(&if *k == 1 {
                    "*s".to_string()
                } else {
                    format!("*s^{k}")
                });
            }
            if *l != 0 {
                name.push_str(&if *l == 1 {
                    "*t".to_string()
                } else {
                    format!("*t^{l}")
                });
            }
            return (name, -c.clone());
        }
        // Positive simple roots print as E(i).
        if let Some(i) = (0..rs.rank).find(|&i| {
            beta.iter()
                .enumerate()
                .all(|(j, &v)| v == if j == i { 1 } else { 0 })
        }) {
            let mut name = format!("E({})", i + 1);
            if *k != 0 {
                name.push_str(&if *k == 1 {
                    "*s".to_string()
                } else {
                    format!("*s^{k}")
                });
            }
            if *l != 0 {
                name.push_str(&if *l == 1 {
                    "*t".to_string()
                } else {
                    format!("*t^{l}")
                });
            }
            return (name, c.clone());
        }
    }
    (b.to_string(), c.clone())
}

/// Rewrite the 1-form `s^a t^b ds` into the central basis.
/// `d(s^{a+1} t^b) = (a+1) s^a t^b ds + b s^{a+1} t^{b-1} dt` is exact, so for
/// `a ≠ -1` the form is a multiple of a `dt`-monomial; for `a = -1` it is
/// `c(0,b)` (or `c_s` when `b = 0`).  Exact forms return the empty list.
pub fn ds_monomial(a: i64, b: i64) -> Vec<(TorBasisElt, Rat)> {
    if b == 0 {
        if a == -1 {
            vec![(TorBasisElt::Cs, rat(1))]
        } else {
            vec![] // d(s^{a+1})/(a+1) is exact
        }
    } else if a == -1 {
        vec![(TorBasisElt::C { k: 0, l: b }, rat(1))]
    } else {
        // s^a t^b ds = -(b/(a+1)) s^{a+1} t^{b-1} dt = -(b/(a+1)) c(a+1, b)
        vec![(TorBasisElt::C { k: a + 1, l: b }, ratio(-b, a + 1))]
    }
}

/// Rewrite the 1-form `s^a t^b dt` into the central basis:
/// `c(a, b+1)` for `a ≠ 0`; `c_t` for `a = 0, b = -1`; otherwise exact.
pub fn dt_monomial(a: i64, b: i64) -> Vec<(TorBasisElt, Rat)> {
    if a != 0 {
        vec![(TorBasisElt::C { k: a, l: b + 1 }, rat(1))]
    } else if b == -1 {
        vec![(TorBasisElt::Ct, rat(1))]
    } else {
        vec![] // d(t^{b+1})/(b+1) is exact
    }
}

/// Bracket of two basis symbols, as a list of (symbol, coefficient) pairs.
pub fn bracket_basis(rs: &RootSystem, a: &TorBasisElt, b: &TorBasisElt) -> Vec<(TorBasisElt, Rat)> {
    use TorBasisElt::*;
    match (a, b) {
        (G { sym: x, k, l }, G { sym: y, k: m, l: n }) => {
            let mut out: Vec<(TorBasisElt, Rat)> = Vec::new();
            let g = bracket_syms(rs, x, y);
            for (sym, c) in g.terms {
                out.push((
                    G {
                        sym,
                        k: k + m,
                        l: l + n,
                    },
                    c,
                ));
            }
            let p = pairing_syms(rs, x, y);
            if !p.is_zero() {
                // (x,y) * class( d(s^k t^l) s^m t^n )
                for (sym, c) in ds_monomial(k + m - 1, l + n) {
                    out.push((sym, c * rat(*k) * &p));
                }
                for (sym, c) in dt_monomial(k + m, l + n - 1) {
                    out.push((sym, c * rat(*l) * &p));
                }
            }
            out
        }
        (Ds, G { sym, k, l }) => vec![(
            G {
                sym: sym.clone(),
                k: *k,
                l: *l,
            },
            rat(*k),
        )],
        (Dt, G { sym, k, l }) => vec![(
            G {
                sym: sym.clone(),
                k: *k,
                l: *l,
            },
            rat(*l),
        )],
        (Ds, C { k, l }) => vec![(C { k: *k, l: *l }, rat(*k))],
        (Dt, C { k, l }) => vec![(C { k: *k, l: *l }, rat(*l))],
        (G { .. } | C { .. }, Ds | Dt) => bracket_basis(rs, b, a)
            .into_iter()
            .map(|(s, c)| (s, -c))
            .collect(),
        _ => vec![], // central-central, central-G, D-D, D-central
    }
}

/// Bilinear extension of [`bracket_basis`].
pub fn tor_bracket(x: &TorElt, y: &TorElt) -> Result<TorElt> {
    ensure_same(&x.rs, &y.rs)?;
    let mut out = TorElt::zero(x.rs.clone());
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            for (s, c) in bracket_basis(&x.rs, a, b) {
                out.add_term(s, c * ca * cb);
            }
        }
    }
    Ok(out)
}

/// Generator kinds of the affine-type presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    /// Raising generator `e_{i,k}`.
    E,
    /// Lowering generator `f_{i,k}`.
    F,
    /// Cartan generator `h_{i,k}`.
    H,
}

/// Image of the presentation generator `e_{i,k}` / `f_{i,k}` / `h_{i,k}`
/// under the isomorphism with the toroidal algebra.  The index `i` ranges
/// over `0..=rank` with `0` the affine node:
///
/// - `e_{i,k} ↦ e_i ⊗ s^k` for `i ∈ I`, `f_θ ⊗ s^k t` for `i = 0`;
/// - `f_{i,k} ↦ f_i ⊗ s^k` for `i ∈ I`, `e_θ ⊗ s^k t^{-1}` for `i = 0`;
/// - `h_{i,k} ↦ h_i ⊗ s^k` for `i ∈ I`, `-h_θ ⊗ s^k + class(s^k t^{-1} dt)`
///   for `i = 0` (the last summand is `c(k,0)` for `k ≠ 0` and `c_t` for
///   `k = 0`).
pub fn generator(rs: &Arc<RootSystem>, i: usize, k: i64, kind: GenKind) -> Result<TorElt> {
    if i > rs.rank {
        return Err(Error::IndexOutOfRange(format!(
            "affine node {i} in rank {}",
            rs.rank
        )));
    }
    if i >= 1 {
        let g = match kind {
            GenKind::E => e_gen(rs, i - 1)?,
            GenKind::F => f_gen(rs, i - 1)?,
            GenKind::H => h_gen(rs, i - 1)?,
        };
        return Ok(TorElt::from_g(rs.clone(), &g, k, 0));
    }
    match kind {
        GenKind::E => Ok(TorElt::from_g(rs.clone(), &f_theta(rs), k, 1)),
        GenKind::F => Ok(TorElt::from_g(rs.clone(), &e_theta(rs), k, -1)),
        GenKind::H => {
            let mut out = TorElt::from_g(rs.clone(), &crate::rootdata::h_of(&rs.theta), k, 0);
            out.scale(&rat(-1));
            for (sym, c) in dt_monomial(k, -1) {
                out.add_term(sym, c);
            }
            Ok(out)
        }
    }
}

/// Subalgebras of the toroidal algebra, as syntactic membership predicates
/// on canonical basis symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubalgebraTag {
    /// The whole algebra.
    Full,
    /// Everything except `d_s`.
    TorPrime,
    /// `g ⊗ C[s, t^{±1}] ⊕ c(k,l) (k ≥ 1) ⊕ c_t ⊕ d_t`.
    TorPlus,
    /// Positive part `n̂` of the triangular decomposition.
    N,
    /// Negative part `n̄̂`.
    NBar,
    /// Cartan part `ĥ`.
    H,
    /// `ĥ ∩ tor′` (drops `d_s`).
    HPrime,
    /// Affine subalgebra in the `s`-direction: `g ⊗ C[s^{±1}] ⊕ c_s ⊕ d_s`.
    AffS,
    /// Affine subalgebra in the `t`-direction: `g ⊗ C[t^{±1}] ⊕ c_t ⊕ d_t`.
    AffT,
}

impl SubalgebraTag {
    /// Membership test for a canonical basis symbol.
    pub fn contains(&self, rs: &RootSystem, b: &TorBasisElt) -> bool {
        use TorBasisElt::*;
        // affine-root positivity of beta + l*delta: positive iff l > 0, or
        // l = 0 and beta is a positive root
        let affine_sign = |sym: &GSym, l: i64| -> i8 {
            match sym {
                GSym::Cartan(_) => {
                    if l > 0 {
                        1
                    } else if l < 0 {
                        -1
                    } else {
                        0
                    }
                }
                GSym::Root(beta) => {
                    if l != 0 {
                        if l > 0 {
                            1
                        } else {
                            -1
                        }
                    } else if beta.iter().all(|&c| c >= 0) {
                        1
                    } else {
                        -1
                    }
                }
            }
        };
        let _ = rs;
        match self {
            SubalgebraTag::Full => true,
            SubalgebraTag::TorPrime => !matches!(b, Ds),
            SubalgebraTag::TorPlus => match b {
                G { k, .. } => *k >= 0,
                C { k, .. } => *k >= 1,
                Ct | Dt => true,
                Cs | Ds => false,
            },
            SubalgebraTag::N => match b {
                G { sym, l, .. } => affine_sign(sym, *l) == 1,
                C { l, .. } => *l >= 1,
                _ => false,
            },
            SubalgebraTag::NBar => match b {
                G { sym, l, .. } => affine_sign(sym, *l) == -1,
                C { l, .. } => *l <= -1,
                _ => false,
            },
            SubalgebraTag::H => match b {
                G { sym, l, .. } => matches!(sym, GSym::Cartan(_)) && *l == 0,
                C { l, .. } => *l == 0,
                Cs | Ct | Ds | Dt => true,
            },
            SubalgebraTag::HPrime => {
                SubalgebraTag::H.contains(rs, b) && !matches!(b, Ds)
            }
            SubalgebraTag::AffS => match b {
                G { l, .. } => *l == 0,
                Cs | Ds => true,
                _ => false,
            },
            SubalgebraTag::AffT => match b {
                G { k, .. } => *k == 0,
                Ct | Dt => true,
                _ => false,
            },
        }
    }
}

/// Split an element along the triangular decomposition
/// `tor = n̄̂ ⊕ ĥ ⊕ n̂`.  The three parts always sum back to the input.
pub fn triangular_split(x: &TorElt) -> (TorElt, TorElt, TorElt) {
    let mut nbar = TorElt::zero(x.rs.clone());
    let mut h = TorElt::zero(x.rs.clone());
    let mut n = TorElt::zero(x.rs.clone());
    for (b, c) in &x.terms {
        if SubalgebraTag::NBar.contains(&x.rs, b) {
            nbar.add_term(b.clone(), c.clone());
        } else if SubalgebraTag::N.contains(&x.rs, b) {
            n.add_term(b.clone(), c.clone());
        } else {
            h.add_term(b.clone(), c.clone());
        }
    }
    (nbar, h, n)
}

/// Evaluation at `s = a` (`a ≠ 0`): a Lie algebra map from `tor′` onto the
/// affine algebra in the `t`-direction.  Kills `c(k,l)` with `l ≠ 0` and
/// `c_s`; sends `x ⊗ s^k t^l ↦ a^k x ⊗ t^l`, `c(k,0) ↦ a^k c_t`, `c_t ↦ c_t`,
/// `d_t ↦ d_t`.
pub fn ev_map(a: &Rat, x: &TorElt) -> Result<TorElt> {
    if a.is_zero() {
        return Err(Error::Invalid("evaluation point a = 0".into()));
    }
    if !x.in_subalgebra(SubalgebraTag::TorPrime) {
        return Err(Error::Invalid(
            "evaluation map is defined on tor' only (element contains d_s)".into(),
        ));
    }
    let pow = |k: i64| -> Rat {
        let mut r = Rat::one();
        if k >= 0 {
            for _ in 0..k {
                r *= a;
            }
        } else {
            for _ in 0..(-k) {
                r /= a;
            }
        }
        r
    };
    let mut out = TorElt::zero(x.rs.clone());
    for (b, c) in &x.terms {
        match b {
            TorBasisElt::G { sym, k, l } => out.add_term(
                TorBasisElt::G {
                    sym: sym.clone(),
                    k: 0,
                    l: *l,
                },
                c * pow(*k),
            ),
            TorBasisElt::C { k, l } => {
                if *l == 0 {
                    out.add_term(TorBasisElt::Ct, c * pow(*k));
                }
            }
            TorBasisElt::Cs => {}
            TorBasisElt::Ct => out.add_term(TorBasisElt::Ct, c.clone()),
            TorBasisElt::Dt => out.add_term(TorBasisElt::Dt, c.clone()),
            TorBasisElt::Ds => unreachable!("rejected above"),
        }
    }
    Ok(out)
}

/// Result of checking a family of relations.
#[derive(Debug, Clone)]
pub struct Report {
    /// Number of relation instances evaluated.
    pub checked: usize,
    /// Human-readable descriptions of violated instances.
    pub failures: Vec<String>,
}

impl Report {
    /// Whether every checked instance held.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluate all defining relations of the presented algebra (generators
/// `e_{i,k}`, `f_{i,k}`, `h_{i,k}` for `i` in the affine index set, plus
/// `c_s`, `d_s`, `d_t`) under the generator map, for all parameters
/// `k, l ∈ [-R, R]`.  With `nonneg = true` only `k, l ≥ 0` are used and the
/// `d_s`/`c_s` relations are skipped, which is the presentation of the
/// current-type subalgebra.
pub fn verify_presentation(rs: &Arc<RootSystem>, range: i64, nonneg: bool) -> Result<Report> {
    verify_presentation_with(rs, range, nonneg, tor_bracket)
}

/// Same as [`verify_presentation`] but with a pluggable bracket, so tests can
/// demonstrate that a corrupted bracket is reported.
pub fn verify_presentation_with(
    rs: &Arc<RootSystem>,
    range: i64,
    nonneg: bool,
    bk: impl Fn(&TorElt, &TorElt) -> Result<TorElt>,
) -> Result<Report> {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    let ks: Vec<i64> = if nonneg {
        (0..=range).collect()
    } else {
        (-range..=range).collect()
    };
    let nodes: Vec<usize> = (0..=rs.rank).collect();
    // affine Cartan matrix entries a_{ij} = (alpha_i, alpha_j) with
    // alpha_0 = -theta + delta
    let aff_cartan = |i: usize, j: usize| -> i64 {
        let wt = |n: usize| -> Lat {
            if n == 0 {
                rs.theta.iter().map(|c| -c).collect()
            } else {
                let mut e = vec![0i64; rs.rank];
                e[n - 1] = 1;
                e
            }
        };
        rs.form(&wt(i), &wt(j))
    };
    let gen = |i: usize, k: i64, kind: GenKind| generator(rs, i, k, kind);
    let mut record = |name: String, lhs: &TorElt, rhs: &TorElt, checked: &mut usize| {
        *checked += 1;
        if lhs != rhs {
            failures.push(format!("{name}: got {lhs}, expected {rhs}"));
        }
    };

    let cs = TorElt::basis(rs.clone(), TorBasisElt::Cs);
    let ds = TorElt::basis(rs.clone(), TorBasisElt::Ds);
    let dt = TorElt::basis(rs.clone(), TorBasisElt::Dt);
    let zero = TorElt::zero(rs.clone());

    for &i in &nodes {
        for &k in &ks {
            let e_ik = gen(i, k, GenKind::E)?;
            let f_ik = gen(i, k, GenKind::F)?;
            let h_ik = gen(i, k, GenKind::H)?;
            // degree relations [d_s, e_{i,k}] = k e_{i,k}, [d_t, e_{i,k}] =
            // <delta-coefficient> — d_t eigenvalues are part of the toroidal
            // t-grading: e_{i,k} has t-degree delta_{i,0}, f has -delta_{i,0}.
            if !nonneg {
                let mut ke = e_ik.clone();
                ke.scale(&rat(k));
                record(
                    format!("[d_s, e_{{{i},{k}}}]"),
                    &bk(&ds, &e_ik)?,
                    &ke,
                    &mut checked,
                );
                let mut kf = f_ik.clone();
                kf.scale(&rat(k));
                record(
                    format!("[d_s, f_{{{i},{k}}}]"),
                    &bk(&ds, &f_ik)?,
                    &kf,
                    &mut checked,
                );
                let mut kh = h_ik.clone();
                kh.scale(&rat(k));
                record(
                    format!("[d_s, h_{{{i},{k}}}]"),
                    &bk(&ds, &h_ik)?,
                    &kh,
                    &mut checked,
                );
                // c_s is central
                record(
                    format!("[c_s, e_{{{i},{k}}}]"),
                    &bk(&cs, &e_ik)?,
                    &zero,
                    &mut checked,
                );
                record("[d_s, d_t]".to_string(), &bk(&ds, &dt)?, &zero, &mut checked);
            }
            // [d_t, e_{i,k}] = delta_{i,0} e_{i,k}, [d_t, f_{i,k}] =
            // -delta_{i,0} f_{i,k}, [d_t, h_{i,k}] = 0 (both presentations)
            let d0 = if i == 0 { 1 } else { 0 };
            let mut rhs = e_ik.clone();
            rhs.scale(&rat(d0));
            record(
                format!("[d_t, e_{{{i},{k}}}]"),
                &bk(&dt, &e_ik)?,
                &rhs,
                &mut checked,
            );
            let mut rhs = f_ik.clone();
            rhs.scale(&rat(-d0));
            record(
                format!("[d_t, f_{{{i},{k}}}]"),
                &bk(&dt, &f_ik)?,
                &rhs,
                &mut checked,
            );
            record(
                format!("[d_t, h_{{{i},{k}}}]"),
                &bk(&dt, &h_ik)?,
                &zero,
                &mut checked,
            );
            for &j in &nodes {
                for &l in &ks {
                    let e_jl = gen(j, l, GenKind::E)?;
                    let f_jl = gen(j, l, GenKind::F)?;
                    let h_jl = gen(j, l, GenKind::H)?;
                    // [h_{i,k}, h_{j,l}] = a_{ij} k delta_{k+l,0} c_s
                    let mut rhs = zero.clone();
                    if k + l == 0 && !nonneg {
                        rhs = cs.clone();
                        rhs.scale(&rat(aff_cartan(i, j) * k));
                    }
                    record(
                        format!("[h_{{{i},{k}}}, h_{{{j},{l}}}]"),
                        &bk(&h_ik, &h_jl)?,
                        &rhs,
                        &mut checked,
                    );
                    // [e_{i,k}, f_{j,l}] = delta_{ij} (h_{i,k+l} + k delta_{k+l,0} c_s)
                    let mut rhs = zero.clone();
                    if i == j {
                        rhs = gen(i, k + l, GenKind::H)?;
                        if k + l == 0 {
                            let mut extra = cs.clone();
                            extra.scale(&rat(k));
                            rhs.add_assign(&extra)?;
                        }
                    }
                    record(
                        format!("[e_{{{i},{k}}}, f_{{{j},{l}}}]"),
                        &bk(&e_ik, &f_jl)?,
                        &rhs,
                        &mut checked,
                    );
                    // [h_{i,k}, e_{j,l}] = a_{ij} e_{j,k+l}
                    let mut rhs = gen(j, k + l, GenKind::E)?;
                    rhs.scale(&rat(aff_cartan(i, j)));
                    record(
                        format!("[h_{{{i},{k}}}, e_{{{j},{l}}}]"),
                        &bk(&h_ik, &e_jl)?,
                        &rhs,
                        &mut checked,
                    );
                    // [h_{i,k}, f_{j,l}] = -a_{ij} f_{j,k+l}
                    let mut rhs = gen(j, k + l, GenKind::F)?;
                    rhs.scale(&rat(-aff_cartan(i, j)));
                    record(
                        format!("[h_{{{i},{k}}}, f_{{{j},{l}}}]"),
                        &bk(&h_ik, &f_jl)?,
                        &rhs,
                        &mut checked,
                    );
                    if i == j {
                        // [e_{i,k}, e_{i,l}] = 0 = [f_{i,k}, f_{i,l}]
                        record(
                            format!("[e_{{{i},{k}}}, e_{{{i},{l}}}]"),
                            &bk(&e_ik, &e_jl)?,
                            &zero,
                            &mut checked,
                        );
                        record(
                            format!("[f_{{{i},{k}}}, f_{{{i},{l}}}]"),
                            &bk(&f_ik, &f_jl)?,
                            &zero,
                            &mut checked,
                        );
                    } else {
                        // Serre relations (ad x_{i,0})^{1 - a_{ij}} x_{j,l} = 0
                        let power = (1 - aff_cartan(i, j)) as usize;
                        let mut acc = e_jl.clone();
                        let e_i0 = gen(i, 0, GenKind::E)?;
                        for _ in 0..power {
                            acc = bk(&e_i0, &acc)?;
                        }
                        record(
                            format!("(ad e_{{{i},0}})^{power} e_{{{j},{l}}}"),
                            &acc,
                            &zero,
                            &mut checked,
                        );
                        let mut acc = f_jl.clone();
                        let f_i0 = gen(i, 0, GenKind::F)?;
                        for _ in 0..power {
                            acc = bk(&f_i0, &acc)?;
                        }
                        record(
                            format!("(ad f_{{{i},0}})^{power} f_{{{j},{l}}}"),
                            &acc,
                            &zero,
                            &mut checked,
                        );
                    }
                }
            }
        }
    }
    Ok(Report { checked, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::TypeLabel;

    fn a1() -> Arc<RootSystem> {
        Arc::new(RootSystem::new(TypeLabel::A, 1).unwrap())
    }

    fn g(rs: &Arc<RootSystem>, sym: GSym, k: i64, l: i64) -> TorElt {
        TorElt::basis(rs.clone(), TorBasisElt::G { sym, k, l })
    }

    fn root(c: i64) -> GSym {
        GSym::Root(vec![c])
    }

    #[test]
    fn differential_monomial_rewriting() {
        // c(k,l) = s^k t^{l-1} dt for k != 0
        assert_eq!(dt_monomial(3, 0), vec![(TorBasisElt::C { k: 3, l: 1 }, rat(1))]);
        // c(0,l) = s^{-1} t^l ds
        assert_eq!(ds_monomial(-1, 2), vec![(TorBasisElt::C { k: 0, l: 2 }, rat(1))]);
        // c_s and c_t
        assert_eq!(ds_monomial(-1, 0), vec![(TorBasisElt::Cs, rat(1))]);
        assert_eq!(dt_monomial(0, -1), vec![(TorBasisElt::Ct, rat(1))]);
        // exact forms vanish
        assert!(ds_monomial(4, 0).is_empty());
        assert!(dt_monomial(0, 3).is_empty());
        // s^k t^l ds = -(l/(k+1)) c(k+1, l) for l != 0
        assert_eq!(
            ds_monomial(2, 5),
            vec![(TorBasisElt::C { k: 3, l: 5 }, ratio(-5, 3))]
        );
    }

    #[test]
    fn bracket_reference_cases() {
        let rs = a1();
        // [e⊗st, f⊗st^{-1}] = h⊗s^2 + c(2,0): e = x_alpha, f = -x_{-alpha}
        let e = g(&rs, root(1), 1, 1);
        let mut f = g(&rs, root(-1), 1, -1);
        f.scale(&rat(-1));
        let got = tor_bracket(&e, &f).unwrap();
        let mut want = g(&rs, GSym::Cartan(0), 2, 0);
        want.add_term(TorBasisElt::C { k: 2, l: 0 }, rat(1));
        assert_eq!(got, want);

        // [e⊗s, f⊗s^{-1}] = h + c_s
        let e = g(&rs, root(1), 1, 0);
        let mut f = g(&rs, root(-1), -1, 0);
        f.scale(&rat(-1));
        let got = tor_bracket(&e, &f).unwrap();
        let mut want = g(&rs, GSym::Cartan(0), 0, 0);
        want.add_term(TorBasisElt::Cs, rat(1));
        assert_eq!(got, want);

        // [d_s, e⊗s^3 t^2] = 3 e⊗s^3 t^2
        let ds = TorElt::basis(rs.clone(), TorBasisElt::Ds);
        let e = g(&rs, root(1), 3, 2);
        let mut want = e.clone();
        want.scale(&rat(3));
        assert_eq!(tor_bracket(&ds, &e).unwrap(), want);

        // [h⊗s^k, h⊗s^{-k}] = 2k c_s
        for k in 1..=3 {
            let hk = g(&rs, GSym::Cartan(0), k, 0);
            let hmk = g(&rs, GSym::Cartan(0), -k, 0);
            let mut want = TorElt::basis(rs.clone(), TorBasisElt::Cs);
            want.scale(&rat(2 * k));
            assert_eq!(tor_bracket(&hk, &hmk).unwrap(), want);
        }
    }

    fn all_basis(rs: &Arc<RootSystem>, range: i64) -> Vec<TorBasisElt> {
        let mut out = Vec::new();
        let syms = crate::rootdata::g_basis(rs);
        for k in -range..=range {
            for l in -range..=range {
                for s in &syms {
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
        out.extend([TorBasisElt::Cs, TorBasisElt::Ct, TorBasisElt::Ds, TorBasisElt::Dt]);
        out
    }

    #[test]
    fn antisymmetry_exhaustive() {
        let rs = a1();
        let basis = all_basis(&rs, 2);
        for a in &basis {
            for b in &basis {
                let ea = TorElt::basis(rs.clone(), a.clone());
                let eb = TorElt::basis(rs.clone(), b.clone());
                let ab = tor_bracket(&ea, &eb).unwrap();
                let mut ba = tor_bracket(&eb, &ea).unwrap();
                ba.scale(&rat(-1));
                assert_eq!(ab, ba, "antisymmetry failed at {a:?}, {b:?}");
            }
        }
    }

    #[test]
    fn jacobi_exhaustive_small_window() {
        let rs = a1();
        let basis = all_basis(&rs, 1);
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    let ea = TorElt::basis(rs.clone(), a.clone());
                    let eb = TorElt::basis(rs.clone(), b.clone());
                    let ec = TorElt::basis(rs.clone(), c.clone());
                    let mut total = tor_bracket(&tor_bracket(&ea, &eb).unwrap(), &ec).unwrap();
                    total
                        .add_assign(&tor_bracket(&tor_bracket(&eb, &ec).unwrap(), &ea).unwrap())
                        .unwrap();
                    total
                        .add_assign(&tor_bracket(&tor_bracket(&ec, &ea).unwrap(), &eb).unwrap())
                        .unwrap();
                    assert!(total.is_zero(), "Jacobi failed at {a:?} {b:?} {c:?}");
                }
            }
        }
    }

    #[test]
    fn bracket_respects_bidegree() {
        let rs = a1();
        for a in all_basis(&rs, 2) {
            for b in all_basis(&rs, 2) {
                let ea = TorElt::basis(rs.clone(), a.clone());
                let eb = TorElt::basis(rs.clone(), b.clone());
                let br = tor_bracket(&ea, &eb).unwrap();
                if br.is_zero() {
                    continue;
                }
                let (ka, la) = a.bidegree();
                let (kb, lb) = b.bidegree();
                assert_eq!(br.homogeneous_bidegree(), Some((ka + kb, la + lb)));
            }
        }
    }

    #[test]
    fn generator_images() {
        let rs = a1();
        // (0, 2, e) -> f_theta ⊗ s^2 t = -x_{-alpha} ⊗ s^2 t
        let got = generator(&rs, 0, 2, GenKind::E).unwrap();
        let mut want = g(&rs, root(-1), 2, 1);
        want.scale(&rat(-1));
        assert_eq!(got, want);
        // (0, 0, h) -> -h_theta + c_t
        let got = generator(&rs, 0, 0, GenKind::H).unwrap();
        let mut want = g(&rs, GSym::Cartan(0), 0, 0);
        want.scale(&rat(-1));
        want.add_term(TorBasisElt::Ct, rat(1));
        assert_eq!(got, want);
        // (1, -3, f) -> f ⊗ s^{-3}
        let got = generator(&rs, 1, -3, GenKind::F).unwrap();
        let mut want = g(&rs, root(-1), -3, 0);
        want.scale(&rat(-1));
        assert_eq!(got, want);
    }

    #[test]
    fn presentation_holds_a1_a2() {
        for name in ["A1", "A2"] {
            let rs = Arc::new(RootSystem::parse(name).unwrap());
            let rep = verify_presentation(&rs, 2, false).unwrap();
            assert!(rep.passed(), "{name}: {:?}", rep.failures);
            let rep = verify_presentation(&rs, 2, true).unwrap();
            assert!(rep.passed(), "{name} (nonneg): {:?}", rep.failures);
        }
    }

    #[test]
    fn presentation_detects_corrupted_bracket() {
        let rs = a1();
        let bad = |x: &TorElt, y: &TorElt| -> Result<TorElt> {
            let mut out = tor_bracket(x, y)?;
            // corrupt the central contribution
            if out.terms.contains_key(&TorBasisElt::Cs) {
                out.add_term(TorBasisElt::Cs, rat(1));
            }
            Ok(out)
        };
        let rep = verify_presentation_with(&rs, 1, false, bad).unwrap();
        assert!(!rep.passed());
        assert!(rep
            .failures
            .iter()
            .any(|f| f.contains("[e_") || f.contains("[h_")));
    }

    #[test]
    fn triangular_split_examples() {
        let rs = a1();
        // h⊗s^2 + e⊗st^{-1} + f⊗t -> nbar = e⊗st^{-1}, h = h⊗s^2, n = f⊗t
        let mut x = g(&rs, GSym::Cartan(0), 2, 0);
        x.add_assign(&g(&rs, root(1), 1, -1)).unwrap();
        x.add_assign(&g(&rs, root(-1), 0, 1)).unwrap();
        let (nbar, h, n) = triangular_split(&x);
        assert_eq!(nbar, g(&rs, root(1), 1, -1));
        assert_eq!(h, g(&rs, GSym::Cartan(0), 2, 0));
        assert_eq!(n, g(&rs, root(-1), 0, 1));
        let mut back = nbar;
        back.add_assign(&h).unwrap();
        back.add_assign(&n).unwrap();
        assert_eq!(back, x);

        let cs = TorElt::basis(rs.clone(), TorBasisElt::Cs);
        let (nb, h, n) = triangular_split(&cs);
        assert!(nb.is_zero() && n.is_zero());
        assert_eq!(h, cs);

        let c = TorElt::basis(rs.clone(), TorBasisElt::C { k: 3, l: -2 });
        let (nb, h, n) = triangular_split(&c);
        assert!(h.is_zero() && n.is_zero());
        assert_eq!(nb, c);
    }

    #[test]
    fn ev_map_examples() {
        let rs = a1();
        // ev_2(e⊗s^3 t^{-1}) = 8 e⊗t^{-1}
        let x = g(&rs, root(1), 3, -1);
        let got = ev_map(&rat(2), &x).unwrap();
        let mut want = g(&rs, root(1), 0, -1);
        want.scale(&rat(8));
        assert_eq!(got, want);
        // c(k,l) with l != 0 dies
        let c = TorElt::basis(rs.clone(), TorBasisElt::C { k: 1, l: 2 });
        assert!(ev_map(&rat(2), &c).unwrap().is_zero());
        // ev_3(c(2,0)) = 9 c_t
        let c = TorElt::basis(rs.clone(), TorBasisElt::C { k: 2, l: 0 });
        let got = ev_map(&rat(3), &c).unwrap();
        let mut want = TorElt::basis(rs.clone(), TorBasisElt::Ct);
        want.scale(&rat(9));
        assert_eq!(got, want);
        // d_s rejected, a = 0 rejected
        assert!(ev_map(&rat(2), &TorElt::basis(rs.clone(), TorBasisElt::Ds)).is_err());
        assert!(ev_map(&rat(0), &g(&rs, root(1), 0, 0)).is_err());
    }

    #[test]
    fn ev_map_is_a_lie_map_on_random_pairs() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let rs = a1();
        let mut rng = StdRng::seed_from_u64(7);
        let basis = all_basis(&rs, 3);
        let torp: Vec<TorBasisElt> = basis
            .into_iter()
            .filter(|b| SubalgebraTag::TorPrime.contains(&rs, b))
            .collect();
        let a = ratio(3, 2);
        for _ in 0..500 {
            let x = TorElt::basis(rs.clone(), torp[rng.gen_range(0..torp.len())].clone());
            let y = TorElt::basis(rs.clone(), torp[rng.gen_range(0..torp.len())].clone());
            let lhs = ev_map(&a, &tor_bracket(&x, &y).unwrap()).unwrap();
            let rhs = tor_bracket(&ev_map(&a, &x).unwrap(), &ev_map(&a, &y).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "ev not a homomorphism at {x} , {y}");
        }
    }

    #[test]
    fn display_round_trip_cases() {
        let rs = a1();
        let mut x = g(&rs, GSym::Cartan(0), 2, 0);
        x.add_term(TorBasisElt::C { k: 2, l: 0 }, rat(1));
        assert_eq!(x.to_string(), "H(1)*s^2 + C(2,0)");
        let mut f = g(&rs, root(-1), 1, -1);
        f.scale(&rat(-1));
        assert_eq!(f.to_string(), "F(1)*s*t^-1");
    }
}
