//! Simply-laced root systems and the finite-dimensional Lie algebra `g`.
//!
//! Roots live in the root lattice `Q` and are stored as coordinate vectors
//! over the simple roots, so the symmetric form is `(a, b) = a^T C b` with `C`
//! the (symmetric, simply-laced) Cartan matrix.  The Lie algebra is presented
//! in the root-vector basis `{x_beta : beta in Delta} ∪ {h_i}` with structure
//! constants coming from the bimultiplicative two-cocycle `eps`:
//!
//! - `[h_i, h_j] = 0`, `[h_i, x_beta] = (alpha_i, beta) x_beta`,
//! - `[x_beta, x_gamma] = eps(beta, gamma) x_{beta+gamma}` if `beta+gamma` is
//!   a root,
//! - `[x_beta, x_{-beta}] = eps(beta, -beta) h_beta = -h_beta`.
//!
//! The invariant form is `(h_i, h_j) = C_{ij}`, `(x_beta, x_{-beta}) = -1`.
//! With the Chevalley generators chosen as `e_i = x_{alpha_i}` and
//! `f_i = -x_{-alpha_i}` this gives `[e_i, f_i] = h_i` and `(e_i, f_i) = 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::{rat, Error, Rat, Result};
use num::Zero;

/// A lattice vector in simple-root coordinates.
pub type Lat = Vec<i64>;

/// Simply-laced type label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeLabel {
    /// Type `A_n`, `n >= 1`.
    A,
    /// Type `D_n`, `n >= 4`.
    D,
    /// Type `E_n`, `n in {6, 7, 8}`.
    E,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::A => write!(f, "A"),
            TypeLabel::D => write!(f, "D"),
            TypeLabel::E => write!(f, "E"),
        }
    }
}

/// A simply-laced root system with its Cartan matrix, full set of roots,
/// highest root, and the cocycle data needed for structure constants.
#[derive(Debug, Clone)]
pub struct RootSystem {
    /// Type label (A, D or E).
    pub label: TypeLabel,
    /// Rank (number of simple roots), Bourbaki numbering.
    pub rank: usize,
    /// Symmetric Cartan matrix `C_{ij} = (alpha_i, alpha_j)`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height then lex.
    pub positive_roots: Vec<Lat>,
    /// The highest root `theta`.
    pub theta: Lat,
    all_roots: BTreeSet<Lat>,
}

fn cartan_matrix(label: TypeLabel, rank: usize) -> Result<Vec<Vec<i64>>> {
    // Bourbaki numbering: A_n is a path 1-2-...-n; D_n is a path 1..n-2 with
    // both n-1 and n attached to n-2; E_n is a path 1-3-4-5-...-n with node 2
    // attached to node 4.
    let mut adj: Vec<(usize, usize)> = Vec::new();
    match label {
        TypeLabel::A => {
            if rank < 1 {
                return Err(Error::UnsupportedType(format!("A{rank}")));
            }
            for i in 1..rank {
                adj.push((i, i + 1));
            }
        }
        TypeLabel::D => {
            if rank < 4 {
                return Err(Error::UnsupportedType(format!("D{rank}")));
            }
            for i in 1..rank - 1 {
                adj.push((i, i + 1));
            }
            adj.pop();
            adj.push((rank - 2, rank - 1));
            adj.push((rank - 2, rank));
        }
        TypeLabel::E => {
            if !(6..=8).contains(&rank) {
                return Err(Error::UnsupportedType(format!("E{rank}")));
            }
            adj.push((1, 3));
            adj.push((3, 4));
            adj.push((2, 4));
            for i in 4..rank {
                adj.push((i, i + 1));
            }
        }
    }
    let mut c = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        c[i][i] = 2;
    }
    for (i, j) in adj {
        c[i - 1][j - 1] = -1;
        c[j - 1][i - 1] = -1;
    }
    Ok(c)
}

impl RootSystem {
    /// Build the root system of the given type and rank.  The full set of
    /// roots is generated from the simple roots by reflection closure.
    pub fn new(label: TypeLabel, rank: usize) -> Result<RootSystem> {
        let cartan = cartan_matrix(label, rank)?;
        let form = |a: &Lat, b: &Lat| -> i64 {
            let mut s = 0;
            for i in 0..rank {
                for j in 0..rank {
                    s += a[i] * cartan[i][j] * b[j];
                }
            }
            s
        };
        let mut all: BTreeSet<Lat> = BTreeSet::new();
        let mut frontier: Vec<Lat> = Vec::new();
        for i in 0..rank {
            let mut e = vec![0i64; rank];
            e[i] = 1;
            all.insert(e.clone());
            frontier.push(e);
        }
        while let Some(beta) = frontier.pop() {
            for i in 0..rank {
                // simple reflection s_i(beta) = beta - (beta, alpha_i) alpha_i
                let mut ei = vec![0i64; rank];
                ei[i] = 1;
                let c = form(&beta, &ei);
                let mut refl = beta.clone();
                refl[i] -= c;
                if all.insert(refl.clone()) {
                    frontier.push(refl);
                }
            }
        }
        let mut positive: Vec<Lat> = all
            .iter()
            .filter(|r| r.iter().all(|&c| c >= 0))
            .cloned()
            .collect();
        positive.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        let theta = positive
            .last()
            .cloned()
            .ok_or_else(|| Error::UnsupportedType(format!("{label}{rank}")))?;
        Ok(RootSystem {
            label,
            rank,
            cartan,
            positive_roots: positive,
            theta,
            all_roots: all,
        })
    }

    /// Parse a label like `"A2"` or `"D4"`.
    pub fn parse(s: &str) -> Result<RootSystem> {
        let s = s.trim();
        let (head, tail) = s.split_at(1.min(s.len()));
        let label = match head {
            "A" | "a" => TypeLabel::A,
            "D" | "d" => TypeLabel::D,
            "E" | "e" => TypeLabel::E,
            _ => return Err(Error::UnsupportedType(s.to_string())),
        };
        let rank: usize = tail
            .parse()
            .map_err(|_| Error::UnsupportedType(s.to_string()))?;
        RootSystem::new(label, rank)
    }

    /// `"A2"`-style name.
    pub fn name(&self) -> String {
        format!("{}{}", self.label, self.rank)
    }

    /// The symmetric bilinear form on the root lattice.
    pub fn form(&self, a: &Lat, b: &Lat) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.cartan[i][j] * b[j];
            }
        }
        s
    }

    /// Squared length divided by two; roots have norm 1 in this scale.
    pub fn half_norm(&self, a: &Lat) -> i64 {
        self.form(a, a) / 2
    }

    /// Whether `a` is a root.
    pub fn is_root(&self, a: &Lat) -> bool {
        self.all_roots.contains(a)
    }

    /// All roots (positive and negative), sorted.
    pub fn all_roots(&self) -> impl Iterator<Item = &Lat> {
        self.all_roots.iter()
    }

    /// The bimultiplicative cocycle `eps: Q x Q -> {±1}`, determined on simple
    /// roots by `eps(alpha_i, alpha_i) = -1`, `eps(alpha_i, alpha_j) = 1` for
    /// `i < j` and `(-1)^{(alpha_i, alpha_j)}` for `i > j`.  It satisfies
    /// `eps(a, a) = (-1)^{(a,a)/2}` and `eps(a, b) eps(b, a) = (-1)^{(a,b)}`.
    pub fn eps(&self, a: &Lat, b: &Lat) -> i64 {
        let mut exponent = 0i64;
        for i in 0..self.rank {
            exponent += a[i] * b[i]; // diagonal contributes (-1)^{a_i b_i}
            for j in 0..i {
                exponent += a[i] * b[j] * self.cartan[i][j];
            }
        }
        if exponent.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// The zero lattice vector.
    pub fn zero_wt(&self) -> Lat {
        vec![0; self.rank]
    }

    /// The `i`-th simple root (0-based).
    pub fn simple_root(&self, i: usize) -> Result<Lat> {
        if i >= self.rank {
            return Err(Error::IndexOutOfRange(format!(
                "simple root {i} in rank {}",
                self.rank
            )));
        }
        let mut e = vec![0i64; self.rank];
        e[i] = 1;
        Ok(e)
    }

    fn check_same(&self, other: &RootSystem) -> Result<()> {
        if self.label != other.label || self.rank != other.rank {
            return Err(Error::RootSystemMismatch(self.name(), other.name()));
        }
        Ok(())
    }
}

/// Basis symbol of the finite-dimensional Lie algebra `g`: a Cartan generator
/// `h_i` or a root vector `x_beta`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GSym {
    /// Cartan generator `h_i` (0-based node index).
    Cartan(usize),
    /// Root vector `x_beta` for a root `beta`.
    Root(Lat),
}

impl GSym {
    /// Weight of the symbol under the adjoint Cartan action.
    pub fn weight(&self, rs: &RootSystem) -> Lat {
        match self {
            GSym::Cartan(_) => rs.zero_wt(),
            GSym::Root(beta) => beta.clone(),
        }
    }
}

/// An element of `g`: a rational linear combination of basis symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GElt {
    /// Terms with nonzero coefficients.
    pub terms: BTreeMap<GSym, Rat>,
}

impl GElt {
    /// The zero element.
    pub fn zero() -> GElt {
        GElt {
            terms: BTreeMap::new(),
        }
    }

    /// A single basis symbol with coefficient 1.
    pub fn sym(s: GSym) -> GElt {
        let mut terms = BTreeMap::new();
        terms.insert(s, rat(1));
        GElt { terms }
    }

    /// Add `c * s` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, s: GSym, c: Rat) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
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

    /// Whether this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `h_beta = sum_i beta_i h_i` for `beta` in the root lattice (simply laced,
/// so coroots have the same coordinates as roots).
pub fn h_of(beta: &Lat) -> GElt {
    let mut e = GElt::zero();
    for (i, &c) in beta.iter().enumerate() {
        e.add_term(GSym::Cartan(i), rat(c));
    }
    e
}

/// Bracket of two basis symbols.
pub fn bracket_syms(rs: &RootSystem, a: &GSym, b: &GSym) -> GElt {
    match (a, b) {
        (GSym::Cartan(_), GSym::Cartan(_)) => GElt::zero(),
        (GSym::Cartan(i), GSym::Root(beta)) => {
            let ei = {
                let mut e = vec![0i64; rs.rank];
                e[*i] = 1;
                e
            };
            let c = rs.form(&ei, beta);
            let mut out = GElt::zero();
            out.add_term(GSym::Root(beta.clone()), rat(c));
            out
        }
        (GSym::Root(_), GSym::Cartan(_)) => {
            let mut out = bracket_syms(rs, b, a);
            for v in out.terms.values_mut() {
                *v = -v.clone();
            }
            out
        }
        (GSym::Root(beta), GSym::Root(gamma)) => {
            let sum: Lat = beta.iter().zip(gamma).map(|(x, y)| x + y).collect();
            if sum.iter().all(|&c| c == 0) {
                let mut out = h_of(beta);
                let sign = rs.eps(beta, gamma); // always -1 here
                for v in out.terms.values_mut() {
                    *v *= rat(sign);
                }
                out
            } else if rs.is_root(&sum) {
                let mut out = GElt::zero();
                out.add_term(GSym::Root(sum), rat(rs.eps(beta, gamma)));
                out
            } else {
                GElt::zero()
            }
        }
    }
}

/// Bilinear extension of [`bracket_syms`].
pub fn chevalley_bracket(rs: &RootSystem, x: &GElt, y: &GElt) -> GElt {
    let mut out = GElt::zero();
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            let br = bracket_syms(rs, a, b);
            for (s, c) in br.terms {
                out.add_term(s, c * ca * cb);
            }
        }
    }
    out
}

/// Invariant symmetric form on basis symbols:
/// `(h_i, h_j) = C_{ij}`, `(x_beta, x_{-beta}) = -1`, all other pairs zero.
pub fn pairing_syms(rs: &RootSystem, a: &GSym, b: &GSym) -> Rat {
    match (a, b) {
        (GSym::Cartan(i), GSym::Cartan(j)) => rat(rs.cartan[*i][*j]),
        (GSym::Root(beta), GSym::Root(gamma)) => {
            if beta.iter().zip(gamma).all(|(x, y)| x + y == 0) {
                rat(-1)
            } else {
                Rat::zero()
            }
        }
        _ => Rat::zero(),
    }
}

/// Bilinear extension of [`pairing_syms`].
pub fn pairing(rs: &RootSystem, x: &GElt, y: &GElt) -> Rat {
    let mut out = Rat::zero();
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            out += pairing_syms(rs, a, b) * ca * cb;
        }
    }
    out
}

/// Chevalley generator `e_i = x_{alpha_i}`.
pub fn e_gen(rs: &RootSystem, i: usize) -> Result<GElt> {
    Ok(GElt::sym(GSym::Root(rs.simple_root(i)?)))
}

/// Chevalley generator `f_i = -x_{-alpha_i}` (the sign makes
/// `[e_i, f_i] = h_i` and `(e_i, f_i) = 1`).
pub fn f_gen(rs: &RootSystem, i: usize) -> Result<GElt> {
    let mut neg = rs.simple_root(i)?;
    for c in neg.iter_mut() {
        *c = -*c;
    }
    let mut out = GElt::zero();
    out.add_term(GSym::Root(neg), rat(-1));
    Ok(out)
}

/// Cartan generator `h_i`.
pub fn h_gen(rs: &RootSystem, i: usize) -> Result<GElt> {
    if i >= rs.rank {
        return Err(Error::IndexOutOfRange(format!(
            "h_{i} in rank {}",
            rs.rank
        )));
    }
    Ok(GElt::sym(GSym::Cartan(i)))
}

/// Highest-root vector `e_theta = x_theta`.
pub fn e_theta(rs: &RootSystem) -> GElt {
    GElt::sym(GSym::Root(rs.theta.clone()))
}

/// Lowest-root vector normalised so that `[e_theta, f_theta] = h_theta` and
/// `(e_theta, f_theta) = 1`: `f_theta = -x_{-theta}`.
pub fn f_theta(rs: &RootSystem) -> GElt {
    let neg: Lat = rs.theta.iter().map(|c| -c).collect();
    let mut out = GElt::zero();
    out.add_term(GSym::Root(neg), rat(-1));
    out
}

/// All basis symbols of `g`.
pub fn g_basis(rs: &RootSystem) -> Vec<GSym> {
    let mut out: Vec<GSym> = (0..rs.rank).map(GSym::Cartan).collect();
    out.extend(rs.all_roots().map(|r| GSym::Root(r.clone())));
    out
}

/// Error helper exposed for modules combining elements over two systems.
pub fn ensure_same(a: &RootSystem, b: &RootSystem) -> Result<()> {
    a.check_same(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> RootSystem {
        RootSystem::new(TypeLabel::A, n).unwrap()
    }

    #[test]
    fn root_counts_match_classical_values() {
        // |Delta+| = n(n+1)/2 for A_n, n(n-1) for D_n, 36 for E6.
        assert_eq!(a(1).positive_roots.len(), 1);
        assert_eq!(a(2).positive_roots.len(), 3);
        assert_eq!(a(3).positive_roots.len(), 6);
        assert_eq!(a(4).positive_roots.len(), 10);
        let d4 = RootSystem::new(TypeLabel::D, 4).unwrap();
        assert_eq!(d4.positive_roots.len(), 12);
        let d5 = RootSystem::new(TypeLabel::D, 5).unwrap();
        assert_eq!(d5.positive_roots.len(), 20);
        let e6 = RootSystem::new(TypeLabel::E, 6).unwrap();
        assert_eq!(e6.positive_roots.len(), 36);
    }

    #[test]
    fn theta_is_highest_root() {
        assert_eq!(a(2).theta, vec![1, 1]);
        assert_eq!(a(3).theta, vec![1, 1, 1]);
        let d4 = RootSystem::new(TypeLabel::D, 4).unwrap();
        assert_eq!(d4.theta, vec![1, 2, 1, 1]);
        let d5 = RootSystem::new(TypeLabel::D, 5).unwrap();
        assert_eq!(d5.theta, vec![1, 2, 2, 1, 1]);
        // theta has norm 1 (i.e. (theta, theta) = 2) in every case
        for rs in [a(1), a(4), d5] {
            assert_eq!(rs.form(&rs.theta, &rs.theta), 2);
        }
    }

    #[test]
    fn all_roots_have_norm_two() {
        for rs in [a(3), RootSystem::new(TypeLabel::D, 4).unwrap()] {
            for r in rs.all_roots() {
                assert_eq!(rs.form(r, r), 2);
            }
        }
    }

    #[test]
    fn eps_identities() {
        for rs in [a(2), a(3), RootSystem::new(TypeLabel::D, 4).unwrap()] {
            let roots: Vec<Lat> = rs.all_roots().cloned().collect();
            for x in &roots {
                assert_eq!(rs.eps(x, x), if rs.half_norm(x) % 2 == 0 { 1 } else { -1 });
                for y in &roots {
                    let lhs = rs.eps(x, y) * rs.eps(y, x);
                    let rhs = if rs.form(x, y).rem_euclid(2) == 0 { 1 } else { -1 };
                    assert_eq!(lhs, rhs, "eps symmetry failed at {x:?}, {y:?}");
                    // bimultiplicativity in the first slot
                    let sum: Lat = x.iter().zip(y).map(|(a, b)| a + b).collect();
                    for z in roots.iter().take(4) {
                        assert_eq!(rs.eps(&sum, z), rs.eps(x, z) * rs.eps(y, z));
                        assert_eq!(rs.eps(z, &sum), rs.eps(z, x) * rs.eps(z, y));
                    }
                }
            }
        }
    }

    #[test]
    fn chevalley_triple_relations() {
        for rs in [a(1), a(2), a(3)] {
            for i in 0..rs.rank {
                let e = e_gen(&rs, i).unwrap();
                let f = f_gen(&rs, i).unwrap();
                let h = h_gen(&rs, i).unwrap();
                assert_eq!(chevalley_bracket(&rs, &e, &f), h);
                assert_eq!(
                    chevalley_bracket(&rs, &h, &e),
                    {
                        let mut two_e = e.clone();
                        for v in two_e.terms.values_mut() {
                            *v *= rat(2);
                        }
                        two_e
                    }
                );
                assert_eq!(pairing(&rs, &e, &f), rat(1));
            }
            let et = e_theta(&rs);
            let ft = f_theta(&rs);
            assert_eq!(chevalley_bracket(&rs, &et, &ft), h_of(&rs.theta));
            assert_eq!(pairing(&rs, &et, &ft), rat(1));
        }
    }

    #[test]
    fn jacobi_exhaustive_small_ranks() {
        for rs in [a(1), a(2)] {
            let basis = g_basis(&rs);
            for x in &basis {
                for y in &basis {
                    for z in &basis {
                        let xe = GElt::sym(x.clone());
                        let ye = GElt::sym(y.clone());
                        let ze = GElt::sym(z.clone());
                        let mut total = chevalley_bracket(
                            &rs,
                            &chevalley_bracket(&rs, &xe, &ye),
                            &ze,
                        );
                        for (s, c) in
                            chevalley_bracket(&rs, &chevalley_bracket(&rs, &ye, &ze), &xe).terms
                        {
                            total.add_term(s, c);
                        }
                        for (s, c) in
                            chevalley_bracket(&rs, &chevalley_bracket(&rs, &ze, &xe), &ye).terms
                        {
                            total.add_term(s, c);
                        }
                        assert!(total.is_zero(), "Jacobi failed at {x:?} {y:?} {z:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn form_is_invariant() {
        // ([x, y], z) = (x, [y, z]) over all basis triples in A2.
        let rs = a(2);
        let basis = g_basis(&rs);
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    let xe = GElt::sym(x.clone());
                    let ye = GElt::sym(y.clone());
                    let ze = GElt::sym(z.clone());
                    let lhs = pairing(&rs, &chevalley_bracket(&rs, &xe, &ye), &ze);
                    let rhs = pairing(&rs, &xe, &chevalley_bracket(&rs, &ye, &ze));
                    assert_eq!(lhs, rhs, "invariance failed at {x:?} {y:?} {z:?}");
                }
            }
        }
    }
}
