//! Whittaker-module data.
//!
//! For parameters `(p, zeta_0..zeta_r)` with `r >= 1` and `zeta_r != 0`
//! the cyclic vector is a Whittaker vector for the conformal element: the
//! modes `omega_i` act by the exact scalars
//!
//! ```text
//! lambda_i = (1/4p) sum_{j+k=i-1} zeta_j zeta_k
//!          - delta_{i,r+1} (p-1)(r+1)/(2p) * zeta_r,     r+1 <= i <= 2r+1,
//! ```
//!
//! and by zero above `s = 2r+1`. Two parameter tuples share a type exactly
//! when they are swapped by the fiber involution
//! `zeta_0 -> 2(p-1)(r+1) - zeta_0`, `zeta_i -> -zeta_i (i >= 1)`.
//!
//! The singlet generator acts on the cyclic vector by scalars on the whole
//! band `m - r <= i <= m`, `m = (r+1)(2p-1) - 1`, with top eigenvalue
//! `q = zeta_r^{2p-1} / (2p-1)!`. The same scalars are recovered
//! independently by a triangular recursion driven purely by the verified
//! relation between the generators and the Whittaker structure constants —
//! no Fock computation enters — and the two routes must agree exactly.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::engine;
use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, Rational};
use crate::singlet;
use crate::state::{FockState, WhittakerParams};
use crate::virasoro::conformal_vector;

/// The type of a Whittaker vector: the odd top index `s >= 3` and the
/// eigenvalue band `lambda_i` for `(s+1)/2 <= i <= s`, `lambda_s != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerType {
    s: i64,
    lambda: BTreeMap<i64, Rational>,
}

impl WhittakerType {
    pub fn new(s: i64, lambda: BTreeMap<i64, Rational>) -> Result<Self> {
        if s < 3 || s % 2 == 0 {
            return Err(Error::InvalidParams(format!(
                "type index s must be an odd integer >= 3, got {s}"
            )));
        }
        let t = (s + 1) / 2;
        let expected: Vec<i64> = (t..=s).collect();
        let keys: Vec<i64> = lambda.keys().copied().collect();
        if keys != expected {
            return Err(Error::InvalidParams(format!(
                "lambda must cover exactly indices {t}..={s}, got {keys:?}"
            )));
        }
        if lambda[&s].is_zero() {
            return Err(Error::InvalidParams("lambda_s must be nonzero".into()));
        }
        Ok(WhittakerType { s, lambda })
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    /// Lowest band index `t = (s+1)/2`.
    pub fn t(&self) -> i64 {
        (self.s + 1) / 2
    }

    pub fn lambda(&self) -> &BTreeMap<i64, Rational> {
        &self.lambda
    }

    pub fn lambda_at(&self, i: i64) -> Rational {
        self.lambda.get(&i).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Closed formula for the band eigenvalue `lambda_i` of the conformal
/// modes on the cyclic vector.
pub fn type_eigenvalue(params: &WhittakerParams, i: i64) -> Rational {
    let p = params.p() as i64;
    let r = params.r() as i64;
    let mut sum = Rational::zero();
    for j in 0..=(i - 1).min(r) {
        let k = i - 1 - j;
        if (0..=r).contains(&k) {
            sum = &sum + &(&params.zeta_at(j as usize) * &params.zeta_at(k as usize));
        }
    }
    let mut lam = &sum / &Rational::from_int(4 * p);
    if i == r + 1 {
        let corr = &Rational::new((p - 1) * (r + 1), 2 * p) * &params.zeta_at(r as usize);
        lam = &lam - &corr;
    }
    lam
}

/// Computes the Whittaker type of the cyclic vector and verifies it
/// against the mode engine: `omega_i u = lambda_i u` on the band and
/// `omega_i u = 0` above it. `r = 0` or `zeta_r = 0` is a domain error.
pub fn whittaker_type(params: &Arc<WhittakerParams>) -> Result<WhittakerType> {
    params.require_whittaker()?;
    let r = params.r() as i64;
    let s = 2 * r + 1;
    let lambda: BTreeMap<i64, Rational> = (r + 1..=s)
        .map(|i| (i, type_eigenvalue(params, i)))
        .collect();
    let ty = WhittakerType::new(s, lambda)?;

    let cd = conformal_vector(params.p())?;
    let u = FockState::cyclic(params.clone());
    for i in r + 1..=s {
        let got = engine::vertex_mode(cd.omega(), i, &u);
        if got != u.scale(&ty.lambda_at(i)) {
            return Err(Error::EngineMismatch(format!(
                "omega_{i} eigenvalue disagrees with the closed formula"
            )));
        }
    }
    let bound = engine::truncation_bound(cd.omega(), &u)?;
    for i in s + 1..=bound + 2 {
        if !engine::vertex_mode(cd.omega(), i, &u).is_zero() {
            return Err(Error::EngineMismatch(format!(
                "omega_{i} does not annihilate the cyclic vector"
            )));
        }
    }
    Ok(ty)
}

/// The other preimage of the same type: `zeta_0 -> 2(p-1)(r+1) - zeta_0`,
/// `zeta_i -> -zeta_i` for `i >= 1`. An involution without fixed points
/// when `zeta_r != 0`.
pub fn fiber_partner(params: &WhittakerParams) -> Result<WhittakerParams> {
    if params.r() < 1 {
        return Err(Error::InvalidParams("fiber involution needs r >= 1".into()));
    }
    let p = params.p() as i64;
    let r = params.r() as i64;
    let shift = Rational::from_int(2 * (p - 1) * (r + 1));
    let zeta: Vec<Rational> = params
        .zeta()
        .iter()
        .enumerate()
        .map(|(i, z)| if i == 0 { &shift - z } else { -z })
        .collect();
    WhittakerParams::new(params.p(), zeta)
}

/// Top index of the generator action on the cyclic vector.
pub fn top_index(params: &WhittakerParams) -> i64 {
    let p = params.p() as i64;
    let r = params.r() as i64;
    (r + 1) * (2 * p - 1) - 1
}

/// Top eigenvalue `q = zeta_r^{2p-1} / (2p-1)!` of the singlet generator,
/// verified against the engine: the generator acts by `q` at the top
/// index, by zero above it, and by a scalar on the whole band
/// `i >= m - r`.
pub fn h_top_eigen(params: &Arc<WhittakerParams>) -> Result<Rational> {
    params.require_whittaker()?;
    let p = params.p();
    let r = params.r() as i64;
    let m = top_index(params);
    let q = &params.zeta_at(r as usize).pow(2 * p as i64 - 1) / &factorial(2 * p as u64 - 1);

    let h = singlet::singlet_h(p)?;
    let u = FockState::cyclic(params.clone());
    let top = engine::vertex_mode(&h, m, &u);
    if top != u.scale(&q) {
        return Err(Error::EngineMismatch(format!(
            "generator top eigenvalue at index {m} disagrees with zeta_r^(2p-1)/(2p-1)!"
        )));
    }
    let bound = engine::truncation_bound(&h, &u)?;
    for i in m + 1..=bound + 2 {
        if !engine::vertex_mode(&h, i, &u).is_zero() {
            return Err(Error::EngineMismatch(format!(
                "generator mode {i} does not annihilate the cyclic vector"
            )));
        }
    }
    // scalar band: H_i u is a rational multiple of u for all i >= m - r
    for i in m - r..m {
        let hit = engine::vertex_mode(&h, i, &u);
        if hit.as_scalar().is_none() {
            return Err(Error::EngineMismatch(format!(
                "generator mode {i} is not scalar on the cyclic vector"
            )));
        }
    }
    Ok(q)
}

/// Checks `H_m^2 u = (4p)^{2p-1} / ((2p-1)!)^2 * lambda_s^{2p-1} u` with
/// both sides computed independently.
pub fn check_hm_squared(params: &Arc<WhittakerParams>) -> Result<bool> {
    params.require_whittaker()?;
    let p = params.p();
    let m = top_index(params);
    let h = singlet::singlet_h(p)?;
    let u = FockState::cyclic(params.clone());
    let lhs = engine::vertex_mode(&h, m, &engine::vertex_mode(&h, m, &u));
    let rhs = u.scale(&hm_squared_scalar(
        p,
        &type_eigenvalue(params, 2 * params.r() as i64 + 1),
    ));
    Ok(lhs == rhs)
}

/// `(4p)^{2p-1} / ((2p-1)!)^2 * lambda_s^{2p-1}`.
pub fn hm_squared_scalar(p: u32, lambda_s: &Rational) -> Rational {
    let e = 2 * p as i64 - 1;
    let lead = &Rational::from_int(4 * p as i64).pow(e) / &factorial(e as u64).pow(2);
    &lead * &lambda_s.pow(e)
}

/// Checks `[H_i, H_j] u = 0` on the critical antidiagonal
/// `i + j = 2m`, sampling `(m-d, m+d)` for `0 <= d <= window`.
pub fn check_hh_commutator(params: &Arc<WhittakerParams>, window: i64) -> Result<bool> {
    params.require_whittaker()?;
    let h = singlet::singlet_h(params.p())?;
    let u = FockState::cyclic(params.clone());
    let m = top_index(params);
    for d in 0..=window {
        let (i, j) = (m - d, m + d);
        let ij = engine::vertex_mode(&h, i, &engine::vertex_mode(&h, j, &u));
        let ji = engine::vertex_mode(&h, j, &engine::vertex_mode(&h, i, &u));
        if ij != ji {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The table of generator eigenvalues on the band.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenTable {
    pub p: u32,
    pub s: i64,
    /// `m = (s+1)(2p-1)/2 - 1`.
    pub m: i64,
    pub q: Rational,
    /// `mu_i` for `m-s+t <= i <= m`; `mu_m = q`.
    pub mu: BTreeMap<i64, Rational>,
}

/// A scalar that is linear in not-yet-solved band eigenvalues.
#[derive(Clone, Debug)]
struct MuScalar {
    constant: Rational,
    linear: BTreeMap<i64, Rational>,
}

impl MuScalar {
    fn zero() -> Self {
        MuScalar {
            constant: Rational::zero(),
            linear: BTreeMap::new(),
        }
    }

    fn constant(c: Rational) -> Self {
        MuScalar {
            constant: c,
            linear: BTreeMap::new(),
        }
    }

    fn unknown(index: i64) -> Self {
        MuScalar {
            constant: Rational::zero(),
            linear: [(index, Rational::one())].into(),
        }
    }

    fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.is_empty()
    }

    fn add_scaled(&mut self, other: &MuScalar, scale: &Rational) {
        self.constant = &self.constant + &(&other.constant * scale);
        for (k, v) in &other.linear {
            let entry = self.linear.entry(*k).or_insert_with(Rational::zero);
            *entry = &*entry + &(v * scale);
            if entry.is_zero() {
                self.linear.remove(k);
            }
        }
    }

    fn mul(&self, other: &MuScalar) -> Result<MuScalar> {
        if !self.linear.is_empty() && !other.linear.is_empty() {
            return Err(Error::NonTriangular(
                "product of two unknown eigenvalues".into(),
            ));
        }
        let (lin, con) = if self.linear.is_empty() {
            (other, &self.constant)
        } else {
            (self, &other.constant)
        };
        let mut out = MuScalar::zero();
        out.add_scaled(lin, con);
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug)]
enum ModeOp {
    Omega(i64),
    H(i64),
}

struct MuContext<'a> {
    p: i64,
    s: i64,
    t: i64,
    m: i64,
    lambda: &'a BTreeMap<i64, Rational>,
    q: &'a Rational,
    solved: BTreeMap<i64, Rational>,
}

impl MuContext<'_> {
    /// Value of one mode on the abstract Whittaker vector, when scalar.
    fn scalar_of(&self, op: ModeOp) -> Option<MuScalar> {
        match op {
            ModeOp::Omega(i) => {
                if i > self.s {
                    Some(MuScalar::zero())
                } else if i >= self.t {
                    Some(MuScalar::constant(
                        self.lambda.get(&i).cloned().unwrap_or_else(Rational::zero),
                    ))
                } else {
                    None
                }
            }
            ModeOp::H(j) => {
                if j > self.m {
                    Some(MuScalar::zero())
                } else if j == self.m {
                    Some(MuScalar::constant(self.q.clone()))
                } else if j >= self.m - self.s + self.t {
                    Some(match self.solved.get(&j) {
                        Some(v) => MuScalar::constant(v.clone()),
                        None => MuScalar::unknown(j),
                    })
                } else {
                    None
                }
            }
        }
    }

    /// Reduces a word of modes applied (left to right) to the abstract
    /// vector. A stuck conformal mode below the band is rewritten once
    /// through the primary-vector commutator
    /// `H_j omega_i = omega_i H_j - ((2p-2) i - j) H_{i+j-1}`.
    fn reduce(&self, word: &[ModeOp]) -> Result<MuScalar> {
        let Some((&head, rest)) = word.split_first() else {
            return Ok(MuScalar::constant(Rational::one()));
        };
        match self.scalar_of(head) {
            Some(v) => {
                if v.is_zero() {
                    return Ok(MuScalar::zero());
                }
                v.mul(&self.reduce(rest)?)
            }
            None => match (head, rest) {
                (ModeOp::Omega(i), [ModeOp::H(j)]) if i >= 0 => {
                    let mut out = self.reduce(&[ModeOp::H(*j), ModeOp::Omega(i)])?;
                    let scalar = Rational::from_int((2 * self.p - 2) * i - j);
                    let corr = self.reduce(&[ModeOp::H(i + j - 1)])?;
                    out.add_scaled(&corr, &-&scalar);
                    Ok(out)
                }
                _ => Err(Error::NonTriangular(format!(
                    "irreducible mode word starting at {head:?}"
                ))),
            },
        }
    }
}

/// Solves for the full band of generator eigenvalues from the type alone.
///
/// The verified generator relation, applied at mode index `t' + m + 2` for
/// `t' = s-1, s-2, ..., (s+1)/2`, expands into normal-ordered pairs
/// `:omega_i H_j:` with `i + j = t' + m`. Each equation is reduced
/// abstractly with the Whittaker structure constants; the result is a
/// triangular system solved downward for `mu_{m-1}, ..., mu_{m-s+t}`.
/// Every `mu_i` is an exact rational in the band eigenvalues, `1/lambda_s`
/// and `q`.
pub fn mu_table(p: u32, ty: &WhittakerType, q: &Rational) -> Result<EigenTable> {
    if ty.lambda_at(ty.s()).is_zero() {
        return Err(Error::InvalidParams("lambda_s must be nonzero".into()));
    }
    // q must square to the fixed multiple of lambda_s^{2p-1}
    if (q * q) != hm_squared_scalar(p, &ty.lambda_at(ty.s())) {
        return Err(Error::InvalidParams(
            "q^2 != (4p)^{2p-1}/((2p-1)!)^2 * lambda_s^{2p-1}".into(),
        ));
    }
    let relation = singlet::solve_omega_h_relation(p)?;
    let c_star = relation.coefficient;

    let s = ty.s();
    let t = ty.t();
    let m = (s + 1) * (2 * p as i64 - 1) / 2 - 1;
    let half = Rational::new(2 * p as i64 - 1, 2);

    let mut ctx = MuContext {
        p: p as i64,
        s,
        t,
        m,
        lambda: ty.lambda(),
        q,
        solved: BTreeMap::new(),
    };

    for tt in (t..=s - 1).rev() {
        let n = tt + m + 2;
        let mut expr = MuScalar::zero();
        // c* (H_{-4} 1)_n = c* C(-n+2, 3) H_{n-3}
        let lead = ctx.reduce(&[ModeOp::H(n - 3)])?;
        expr.add_scaled(&lead, &(&c_star * &binomial(-n + 2, 3)));
        // -(omega_{-1} H_{-2} 1)_n + ((2p-1)/2) (omega_{-2} H)_n over
        // normal-ordered pairs with i + j = n - 2
        for i in -3..=s + 2 {
            let j = n - 2 - i;
            let coeff = &Rational::from_int(j + 1) + &(&half * &Rational::from_int(-i - 1));
            if coeff.is_zero() {
                continue;
            }
            let word = if i >= 0 {
                [ModeOp::Omega(i), ModeOp::H(j)]
            } else {
                [ModeOp::H(j), ModeOp::Omega(i)]
            };
            let reduced = ctx.reduce(&word)?;
            expr.add_scaled(&reduced, &coeff);
        }

        // the equation must pin exactly the next band eigenvalue
        let target = tt + m - s;
        if expr.linear.len() != 1 || !expr.linear.contains_key(&target) {
            return Err(Error::NonTriangular(format!(
                "equation at t'={tt} involves unknowns {:?}, expected only mu_{target}",
                expr.linear.keys().collect::<Vec<_>>()
            )));
        }
        let coeff = expr.linear[&target].clone();
        if coeff.is_zero() {
            return Err(Error::NonTriangular(format!(
                "vanishing pivot for mu_{target}"
            )));
        }
        let value = &(-&expr.constant) / &coeff;
        ctx.solved.insert(target, value);
    }

    let mut mu = ctx.solved;
    mu.insert(m, q.clone());
    Ok(EigenTable {
        p,
        s,
        m,
        q: q.clone(),
        mu,
    })
}

/// The classification datum attached to one parameter tuple: its type, its
/// top eigenvalue, and the unique other tuple with the same type (which
/// carries `-q`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub params: WhittakerParams,
    pub ty: WhittakerType,
    pub q: Rational,
    pub partner: WhittakerParams,
}

/// Bundles `(zeta, lambda, q, zeta')` with every component verified by
/// engine computation.
pub fn classification_record(params: &Arc<WhittakerParams>) -> Result<ClassificationRecord> {
    let ty = whittaker_type(params)?;
    let q = h_top_eigen(params)?;
    let partner = fiber_partner(params)?;
    let partner_arc = Arc::new(partner.clone());
    let partner_ty = whittaker_type(&partner_arc)?;
    if partner_ty != ty {
        return Err(Error::EngineMismatch(
            "fiber partner does not share the type".into(),
        ));
    }
    let partner_q = h_top_eigen(&partner_arc)?;
    if partner_q != -&q {
        return Err(Error::EngineMismatch(
            "fiber partner top eigenvalue is not -q".into(),
        ));
    }
    if fiber_partner(&partner)? != **params {
        return Err(Error::EngineMismatch(
            "fiber map is not an involution".into(),
        ));
    }
    Ok(ClassificationRecord {
        params: (**params).clone(),
        ty,
        q,
        partner,
    })
}

impl ClassificationRecord {
    pub fn to_json(&self) -> serde_json::Value {
        let zeta: Vec<String> = self.params.zeta().iter().map(|z| z.to_string()).collect();
        let partner: Vec<String> = self.partner.zeta().iter().map(|z| z.to_string()).collect();
        let lambda: BTreeMap<String, String> = self
            .ty
            .lambda()
            .iter()
            .map(|(i, v)| (i.to_string(), v.to_string()))
            .collect();
        serde_json::json!({
            "p": self.params.p(),
            "zeta": zeta,
            "lambda": lambda,
            "q": self.q.to_string(),
            "partner_zeta": partner,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32, zeta: &[(i64, i64)]) -> Arc<WhittakerParams> {
        Arc::new(
            WhittakerParams::new(p, zeta.iter().map(|&(n, d)| Rational::new(n, d)).collect())
                .unwrap(),
        )
    }

    #[test]
    fn type_frozen_example() {
        // p=2, r=1, zeta=(0,2): s=3, lambda_2 = -1, lambda_3 = 1/2
        let ty = whittaker_type(&params(2, &[(0, 1), (2, 1)])).unwrap();
        assert_eq!(ty.s(), 3);
        assert_eq!(ty.lambda_at(2), Rational::from_int(-1));
        assert_eq!(ty.lambda_at(3), Rational::new(1, 2));
    }

    #[test]
    fn top_band_eigenvalue_is_zeta_r_squared_over_4p() {
        for (p, zeta) in [
            (2u32, vec![(0, 1), (2, 1)]),
            (2, vec![(1, 2), (-3, 1)]),
            (3, vec![(1, 1), (1, 3), (2, 1)]),
        ] {
            let pr = params(p, &zeta);
            let ty = whittaker_type(&pr).unwrap();
            let r = pr.r();
            let expect = &pr.zeta_at(r).pow(2) / &Rational::from_int(4 * p as i64);
            assert_eq!(ty.lambda_at(ty.s()), expect);
        }
    }

    #[test]
    fn degenerate_params_rejected() {
        assert!(matches!(
            whittaker_type(&params(2, &[(5, 1)])),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            whittaker_type(&params(2, &[(5, 1), (0, 1)])),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn fiber_partner_frozen_and_involutive() {
        let pr = params(2, &[(0, 1), (2, 1)]);
        let partner = fiber_partner(&pr).unwrap();
        assert_eq!(partner.zeta()[0], Rational::from_int(4));
        assert_eq!(partner.zeta()[1], Rational::from_int(-2));
        assert_eq!(fiber_partner(&partner).unwrap(), *pr.clone());
        // same type on both sides
        let t1 = whittaker_type(&pr).unwrap();
        let t2 = whittaker_type(&Arc::new(partner)).unwrap();
        assert_eq!(t1, t2);
        // never a fixed point: zeta_r flips sign
        let pr3 = params(3, &[(1, 2), (0, 1), (5, 7)]);
        assert_ne!(fiber_partner(&pr3).unwrap(), *pr3.clone());
    }

    #[test]
    fn h_top_eigen_frozen() {
        // p=2, zeta=(0,2): q = 2^3/3! = 4/3
        let q = h_top_eigen(&params(2, &[(0, 1), (2, 1)])).unwrap();
        assert_eq!(q, Rational::new(4, 3));
        // the partner carries -q
        let partner = Arc::new(fiber_partner(&params(2, &[(0, 1), (2, 1)])).unwrap());
        assert_eq!(h_top_eigen(&partner).unwrap(), Rational::new(-4, 3));
    }

    #[test]
    fn q_squared_identity() {
        for (p, zeta) in [(2u32, vec![(0, 1), (2, 1)]), (2, vec![(1, 3), (-1, 2)])] {
            let pr = params(p, &zeta);
            let q = h_top_eigen(&pr).unwrap();
            let lam_s = type_eigenvalue(&pr, 2 * pr.r() as i64 + 1);
            assert_eq!(&q * &q, hm_squared_scalar(p, &lam_s));
        }
    }

    #[test]
    fn hm_squared_frozen() {
        // p=2, zeta=(0,2): H_5^2 u = (16/9) u and the closed form agrees
        let pr = params(2, &[(0, 1), (2, 1)]);
        assert!(check_hm_squared(&pr).unwrap());
        let q = h_top_eigen(&pr).unwrap();
        assert_eq!(&q * &q, Rational::new(16, 9));
        assert_eq!(
            hm_squared_scalar(2, &Rational::new(1, 2)),
            Rational::new(16, 9)
        );
    }

    #[test]
    fn hm_squared_p3() {
        // p=3, zeta=(0,1): q = 1/5! = 1/120, so H_9^2 u = (1/14400) u
        let pr = params(3, &[(0, 1), (1, 1)]);
        let q = h_top_eigen(&pr).unwrap();
        assert_eq!(q, Rational::new(1, 120));
        assert!(check_hm_squared(&pr).unwrap());
    }

    #[test]
    fn hh_commutator_on_antidiagonal() {
        assert!(check_hh_commutator(&params(2, &[(0, 1), (2, 1)]), 3).unwrap());
    }

    #[test]
    fn mu_first_step_closed_form() {
        // mu_{m-1} = ((2p-1)/2) lambda_{s-1} q / lambda_s
        for (p, zeta) in [(2u32, vec![(0, 1), (2, 1)]), (2, vec![(1, 1), (1, 2)])] {
            let pr = params(p, &zeta);
            let ty = whittaker_type(&pr).unwrap();
            let q = h_top_eigen(&pr).unwrap();
            let table = mu_table(p, &ty, &q).unwrap();
            let expect = &(&(&Rational::new(2 * p as i64 - 1, 2) * &ty.lambda_at(ty.s() - 1)) * &q)
                / &ty.lambda_at(ty.s());
            assert_eq!(table.mu[&(table.m - 1)], expect);
        }
    }

    #[test]
    fn mu_table_worked_instance() {
        // p=2, s=3, lambda=(-1, 1/2), q=4/3: mu_4 = -4, and the direct
        // Fock computation of H_4 u for zeta=(0,2) agrees
        let pr = params(2, &[(0, 1), (2, 1)]);
        let ty = whittaker_type(&pr).unwrap();
        let q = h_top_eigen(&pr).unwrap();
        let table = mu_table(2, &ty, &q).unwrap();
        assert_eq!(table.m, 5);
        assert_eq!(table.mu[&5], Rational::new(4, 3));
        assert_eq!(table.mu[&4], Rational::from_int(-4));
        let h = singlet::singlet_h(2).unwrap();
        let u = FockState::cyclic(pr);
        assert_eq!(
            engine::vertex_mode(&h, 4, &u),
            u.scale(&Rational::from_int(-4))
        );
    }

    #[test]
    fn mu_table_matches_fock_on_full_band() {
        for (p, zeta) in [
            (2u32, vec![(0, 1), (2, 1)]),
            (2, vec![(1, 2), (-1, 1)]),
            (3, vec![(0, 1), (1, 1)]),
        ] {
            let pr = params(p, &zeta);
            let ty = whittaker_type(&pr).unwrap();
            let q = h_top_eigen(&pr).unwrap();
            let table = mu_table(p, &ty, &q).unwrap();
            let h = singlet::singlet_h(p).unwrap();
            let u = FockState::cyclic(pr.clone());
            for (i, mu) in &table.mu {
                assert_eq!(
                    engine::vertex_mode(&h, *i, &u),
                    u.scale(mu),
                    "p={p} zeta={zeta:?} index {i}"
                );
            }
            // band boundaries
            let m = top_index(&pr);
            let r = pr.r() as i64;
            assert_eq!(*table.mu.keys().next().unwrap(), m - r);
            assert_eq!(*table.mu.keys().last().unwrap(), m);
        }
    }

    #[test]
    fn mu_table_rejects_bad_q() {
        let pr = params(2, &[(0, 1), (2, 1)]);
        let ty = whittaker_type(&pr).unwrap();
        assert!(matches!(
            mu_table(2, &ty, &Rational::from_int(1)),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn even_s_rejected() {
        let lambda: BTreeMap<i64, Rational> = [
            (2, Rational::one()),
            (3, Rational::one()),
            (4, Rational::one()),
        ]
        .into();
        assert!(WhittakerType::new(4, lambda).is_err());
    }

    #[test]
    fn classification_record_frozen() {
        let pr = params(2, &[(0, 1), (2, 1)]);
        let rec = classification_record(&pr).unwrap();
        assert_eq!(rec.q, Rational::new(4, 3));
        assert_eq!(rec.partner.zeta()[0], Rational::from_int(4));
        assert_eq!(rec.partner.zeta()[1], Rational::from_int(-2));
        let json = rec.to_json();
        assert_eq!(json["q"], "4/3");
        assert_eq!(json["lambda"]["2"], "-1/1");
        assert_eq!(json["lambda"]["3"], "1/2");
        assert_eq!(json["partner_zeta"][0], "4/1");
    }
}
