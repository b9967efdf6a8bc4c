//! The mode calculus.
//!
//! The free generator acts on a state through [`alpha_act`]: mode `-n`
//! (`n >= 1`) multiplies by one more creation operator, mode `n >= 1`
//! commutes rightward — each contraction with a depth-`n` factor produces
//! the bracket scalar `2p n` — and finally hits the cyclic vector with its
//! eigenvalue, while mode `0` acts by `zeta_0 + 2k` on charge `k`.
//!
//! A general vertex-operator mode `a_m` for `a` in the vertex algebra is
//! defined recursively by the iterate formula on the leftmost creation
//! factor of each monomial: for `a = alpha(-n) b`,
//!
//! ```text
//! (alpha(-n) b)_m = sum_{i>=0} (-1)^i C(-n,i)
//!     [ alpha(-n-i) b_{m+i}  -  (-1)^n b_{m-n-i} alpha(i) ]
//! ```
//!
//! with the vacuum as base case: `1_m v = delta_{m,-1} v`. Both inner sums
//! are finite: the first by the truncation bound below, the second because
//! `alpha(i)` annihilates every state once `i` exceeds both `r` and the
//! largest stored depth.
//!
//! Truncation: for homogeneous `a` of weight `h` and a state whose PBW
//! part has weight at most `g`, `a_n v = 0` whenever
//! `n >= (r+1) h + g`. This follows by induction on the number of
//! creation factors of `a` through the iterate formula; the test suite
//! additionally samples indices in `[B, B+5]` and asserts they all act by
//! zero.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::PbwMonomial;
use crate::rational::{binomial, Rational};
use crate::state::{FockState, WhittakerParams};

/// An element of the vertex algebra: a charge-0 state over the vacuum
/// parameters (`r = 0`, `zeta = (0)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VaElement {
    state: FockState,
}

impl VaElement {
    /// Wraps a state, checking it lives in the vertex algebra itself.
    pub fn new(state: FockState) -> Result<Self> {
        if state.charge() != 0 {
            return Err(Error::InvalidParams(format!(
                "vertex algebra element must have charge 0, got {}",
                state.charge()
            )));
        }
        let params = state.params();
        if params.r() != 0 || !params.zeta_at(0).is_zero() {
            return Err(Error::InvalidParams(
                "vertex algebra element must use vacuum parameters (r = 0, zeta = (0))".into(),
            ));
        }
        Ok(VaElement { state })
    }

    /// The vacuum vector `1`.
    pub fn vacuum_one(p: u32) -> Result<Self> {
        Ok(VaElement {
            state: FockState::cyclic(Arc::new(WhittakerParams::vacuum(p)?)),
        })
    }

    /// The generator `alpha(-1) 1`.
    pub fn generator(p: u32) -> Result<Self> {
        let mut one = Self::vacuum_one(p)?;
        one.state = alpha_act(-1, &one.state);
        Ok(one)
    }

    pub fn from_terms<I>(p: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PbwMonomial, Rational)>,
    {
        let params = Arc::new(WhittakerParams::vacuum(p)?);
        Ok(VaElement {
            state: FockState::from_terms(params, 0, terms),
        })
    }

    pub fn state(&self) -> &FockState {
        &self.state
    }

    pub fn p(&self) -> u32 {
        self.state.params().p()
    }

    pub fn is_zero(&self) -> bool {
        self.state.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VaElement {
            state: self.state.scale(c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(VaElement {
            state: self.state.add(&other.state)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(VaElement {
            state: self.state.sub(&other.state)?,
        })
    }

    /// Weight when homogeneous (zero element: 0).
    pub fn weight(&self) -> Result<u64> {
        self.state.homogeneous_weight()
    }
}

/// Action of the generator mode `alpha(n)` on a state. Linear; defined for
/// every charge component.
pub fn alpha_act(n: i64, v: &FockState) -> FockState {
    let params = v.params().clone();
    let mut out = FockState::zero(params.clone(), v.charge());
    if n < 0 {
        let depth = u32::try_from(-n).expect("depth out of range");
        for (m, c) in v.terms() {
            out.add_term(m.prepend(depth), c);
        }
        return out;
    }
    if n == 0 {
        // <alpha, k alpha/p> = 2k shifts the zeta_0 eigenvalue on charge k.
        let eigen = &params.zeta_at(0) + &Rational::from_int(2 * v.charge());
        return v.scale(&eigen);
    }
    let depth = u32::try_from(n).expect("mode out of range");
    let bracket = &params.pairing() * &Rational::from_int(n);
    let eigen = if (n as usize) <= params.r() {
        params.zeta_at(n as usize)
    } else {
        Rational::zero()
    };
    for (m, c) in v.terms() {
        // one contraction per occurrence of the matching depth
        let count = m.count_depth(depth);
        if count > 0 {
            let reduced = m.remove_one(depth).expect("depth present");
            out.add_term(
                reduced,
                &(&(c * &bracket) * &Rational::from_int(count as i64)),
            );
        }
        if !eigen.is_zero() {
            out.add_term(m.clone(), &(c * &eigen));
        }
    }
    out
}

/// Truncation bound: the smallest `B` of the form `(r+1) h + g` such that
/// `a_n v = 0` for all `n >= B`, where `h` is the homogeneous weight of
/// `a` and `g` the largest PBW weight in `v`. Errors when `a` is not
/// weight-homogeneous.
pub fn truncation_bound(a: &VaElement, v: &FockState) -> Result<i64> {
    let h = a.weight()? as i64;
    let r = v.params().r() as i64;
    let g = v.max_pbw_weight() as i64;
    Ok((r + 1) * h + g)
}

fn monomial_bound(rest_weight: u64, v: &FockState) -> i64 {
    let r = v.params().r() as i64;
    (r + 1) * rest_weight as i64 + v.max_pbw_weight() as i64
}

/// `a_m v` where `a` is the monomial `alpha(-depths[0]) ... alpha(-depths[k-1]) 1`.
fn mode_of_monomial(depths: &[u32], m: i64, v: &FockState) -> FockState {
    if v.is_zero() {
        return FockState::zero(v.params().clone(), v.charge());
    }
    let Some((&head, rest)) = depths.split_first() else {
        // vacuum: 1_m v = delta_{m,-1} v
        return if m == -1 {
            v.clone()
        } else {
            FockState::zero(v.params().clone(), v.charge())
        };
    };
    let n = head as i64;
    let rest_weight: u64 = rest.iter().map(|&d| d as u64).sum();
    let mut out = FockState::zero(v.params().clone(), v.charge());

    // sum_{i>=0} C(n+i-1, i) alpha(-n-i) (rest_{m+i} v); rest_{m+i} v
    // vanishes once m+i reaches the truncation bound of the tail.
    let bound = monomial_bound(rest_weight, v);
    let mut i: i64 = 0;
    while m + i < bound {
        let inner = mode_of_monomial(rest, m + i, v);
        if !inner.is_zero() {
            let coeff = binomial(n + i - 1, i as u64);
            out.accumulate(&alpha_act(-n - i, &inner), &coeff);
        }
        i += 1;
    }

    // (-1)^{n+1} sum_{i>=0} C(n+i-1, i) rest_{m-n-i} (alpha(i) v); alpha(i)
    // annihilates v once i exceeds both r and every stored depth.
    let sign = if n % 2 == 0 {
        Rational::from_int(-1)
    } else {
        Rational::one()
    };
    let i_top = (v.params().r() as i64).max(v.max_depth() as i64);
    for i in 0..=i_top {
        let hit = alpha_act(i, v);
        if hit.is_zero() {
            continue;
        }
        let inner = mode_of_monomial(rest, m - n - i, &hit);
        if !inner.is_zero() {
            let coeff = &sign * &binomial(n + i - 1, i as u64);
            out.accumulate(&inner, &coeff);
        }
    }
    out
}

/// The mode `a_m` applied to `v`, linear in both arguments.
pub fn vertex_mode(a: &VaElement, m: i64, v: &FockState) -> FockState {
    assert_eq!(
        a.p(),
        v.params().p(),
        "vertex algebra element and state must share p"
    );
    let mut out = FockState::zero(v.params().clone(), v.charge());
    for (mono, coeff) in a.state().terms() {
        let piece = mode_of_monomial(mono.depths(), m, v);
        out.accumulate(&piece, coeff);
    }
    out
}

/// `a_i b_j v - b_j a_i v`.
pub fn mode_commutator(a: &VaElement, i: i64, b: &VaElement, j: i64, v: &FockState) -> FockState {
    let ab = vertex_mode(a, i, &vertex_mode(b, j, v));
    let ba = vertex_mode(b, j, &vertex_mode(a, i, v));
    ab.sub(&ba).expect("same component")
}

/// Applies the modes `a_{i_1} ... a_{i_q}` in normal-ordered arrangement:
/// the sequence is reordered inductively, nonnegative indices acting first
/// (rightmost), negative indices acting last.
pub fn normal_ordered_apply(indices: &[i64], a: &VaElement, v: &FockState) -> FockState {
    let Some((&head, rest)) = indices.split_first() else {
        return v.clone();
    };
    if head >= 0 {
        normal_ordered_apply(rest, a, &vertex_mode(a, head, v))
    } else {
        vertex_mode(a, head, &normal_ordered_apply(rest, a, v))
    }
}
