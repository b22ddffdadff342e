//! Truncated formal character arithmetic.
//!
//! A [`CharSeries`] stores integer coefficients indexed by
//! `(finite weight lambda, delta-depth m, s-degree n)`: the coefficient of
//! `e^lambda p^m q^n`.  Characters in `p` only carry `n = 0` uniformly.
//!
//! [`char_l0`] is the level-one affine character obtained by enumerating the
//! Heisenberg-times-lattice basis directly, [`product_expand`] multiplies by
//! `prod_{n>0} 1/(1-p^n)` or `prod_{n>0} 1/(1-p^n q)` truncated at the caps,
//! and [`char_leq`] is the coefficientwise comparison order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::rootdata::{Lat, RootSystem};
use crate::{Error, Result};

/// Truncation caps for a character series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Maximal delta-depth `m`.
    pub m_max: i64,
    /// Maximal s-degree `n`.
    pub n_max: i64,
    /// Weight ball: keep `lambda` with `(lambda,lambda)/2 <= w_max`.
    pub w_max: i64,
}

impl Caps {
    /// Caps with the weight ball matching the depth cap.
    pub fn new(m_max: i64, n_max: i64) -> Caps {
        Caps {
            m_max,
            n_max,
            w_max: m_max,
        }
    }
}

/// A truncated character series with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSeries {
    /// Truncation caps.
    pub caps: Caps,
    /// Nonzero coefficients at `(lambda, m, n)` inside the caps.
    pub coeffs: BTreeMap<(Lat, i64, i64), i64>,
}

impl CharSeries {
    /// The zero series.
    pub fn zero(caps: Caps) -> CharSeries {
        CharSeries {
            caps,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant series `1` (coefficient 1 at weight zero, m = n = 0).
    pub fn one(rank: usize, caps: Caps) -> CharSeries {
        let mut s = CharSeries::zero(caps);
        s.add(vec![0; rank], 0, 0, 1);
        s
    }

    /// Add `c` at `(lambda, m, n)`, silently dropping labels outside caps.
    pub fn add(&mut self, lambda: Lat, m: i64, n: i64, c: i64) {
        use std::collections::btree_map::Entry;
        if c == 0 || m > self.caps.m_max || n > self.caps.n_max || m < 0 || n < 0 {
            return;
        }
        match self.coeffs.entry((lambda, m, n)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    /// Coefficient at `(lambda, m, n)`.
    pub fn coeff(&self, lambda: &Lat, m: i64, n: i64) -> i64 {
        self.coeffs
            .get(&(lambda.clone(), m, n))
            .copied()
            .unwrap_or(0)
    }

    /// Set `q = 1`: fold all `n` onto `n = 0`.
    pub fn collapse_q(&self) -> CharSeries {
        let mut out = CharSeries::zero(self.caps);
        for ((lam, m, _n), c) in &self.coeffs {
            out.add(lam.clone(), *m, 0, *c);
        }
        out
    }
}

/// Product-formula factors for [`product_expand`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductFactor {
    /// `prod_{n>0} 1/(1-p^n)`.
    PPow,
    /// `prod_{n>0} 1/(1-p^n q)`: each part `n` contributes `p^n q`.
    PPowQ,
}

/// The level-one affine character: the coefficient at `(lambda, m)` counts
/// pairs of a lattice point `beta = lambda` and a Heisenberg multiset with
/// `(beta,beta)/2 + sum of modes = m`.  All coefficients sit at `n = 0`.
pub fn char_l0(rs: &RootSystem, caps: Caps) -> CharSeries {
    let mut out = CharSeries::zero(caps);
    // Heisenberg modes: rank colors per positive mode, so the degree-d count
    // is the coefficient of q^d in prod_{n>0} (1-q^n)^{-rank}
    let hcounts = colored_partition_counts(rs.rank as i64, caps.m_max);
    for lam in crate::vrep::lattice_ball(rs, caps.m_max.min(caps.w_max)) {
        let base = rs.half_norm(&lam);
        for d in 0..=(caps.m_max - base) {
            out.add(lam.clone(), base + d, 0, hcounts[d as usize]);
        }
    }
    out
}

/// Number of partitions of `0..=dmax` with `colors` colors per part, i.e.
/// coefficients of `prod_{n>0} (1-q^n)^{-colors}`.
fn colored_partition_counts(colors: i64, dmax: i64) -> Vec<i64> {
    let mut counts = vec![0i64; (dmax + 1) as usize];
    counts[0] = 1;
    for n in 1..=dmax {
        for _ in 0..colors {
            // multiply by 1/(1-q^n)
            for d in n..=dmax {
                counts[d as usize] += counts[(d - n) as usize];
            }
        }
    }
    counts
}

/// Multiply `base` by the chosen product formula, truncated at `caps`.
pub fn product_expand(base: &CharSeries, factor: ProductFactor, caps: Caps) -> CharSeries {
    // Expand the factor as a series in (m, n): a partition with parts > 0
    // contributes p^{sum} (and q^{#parts} for the q-variant).
    let mut fac: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    for mu in crate::vrep::partitions_up_to(caps.m_max) {
        let m: i64 = mu.iter().sum();
        let n = match factor {
            ProductFactor::PPow => 0,
            ProductFactor::PPowQ => mu.len() as i64,
        };
        *fac.entry((m, n)).or_insert(0) += 1;
    }
    let mut out = CharSeries::zero(caps);
    for ((lam, m, n), c) in &base.coeffs {
        for (&(fm, fn_), &fc) in &fac {
            out.add(lam.clone(), m + fm, n + fn_, c * fc);
        }
    }
    out
}

/// Pointwise comparison `f <= g` within the (shared) caps.
pub fn char_leq(f: &CharSeries, g: &CharSeries) -> Result<bool> {
    if f.caps != g.caps {
        return Err(Error::Invalid(format!(
            "cap mismatch: {:?} vs {:?}",
            f.caps, g.caps
        )));
    }
    let mut keys: Vec<&(Lat, i64, i64)> = f.coeffs.keys().collect();
    keys.extend(g.coeffs.keys());
    for k in keys {
        if f.coeffs.get(k).copied().unwrap_or(0) > g.coeffs.get(k).copied().unwrap_or(0) {
            return Ok(false);
        }
    }
    Ok(true)
}
