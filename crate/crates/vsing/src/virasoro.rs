//! The conformal element and its mode algebra.
//!
//! The conformal element of the deformed free boson is
//!
//! ```text
//! omega = alpha(-1)^2 1 / (4p) + ((p-1)/(2p)) alpha(-2) 1
//! ```
//!
//! with central charge `1 - 6 (p-1)^2 / p`. Its shifted modes
//! `L(n) = omega_{n+1}` satisfy the Virasoro relations. Nothing here is
//! special-cased: `L` is a thin wrapper over the generic mode engine, so
//! every check in this module doubles as validation of the engine.

use crate::engine::{self, VaElement};
use crate::error::{Error, Result};
use crate::monomial::PbwMonomial;
use crate::rational::{binomial, Rational};
use crate::report::CheckResult;
use crate::state::FockState;

/// The conformal element together with its central charge.
#[derive(Clone, Debug)]
pub struct ConformalData {
    p: u32,
    omega: VaElement,
    central_charge: Rational,
}

/// Builds the conformal element for the given `p >= 2`.
pub fn conformal_vector(p: u32) -> Result<ConformalData> {
    if p < 2 {
        return Err(Error::InvalidParams(format!("p must be >= 2, got {p}")));
    }
    let four_p = Rational::from_int(4 * p as i64);
    let omega = VaElement::from_terms(
        p,
        [
            (PbwMonomial::new(vec![1, 1])?, four_p.recip()),
            (
                PbwMonomial::new(vec![2])?,
                Rational::new(p as i64 - 1, 2 * p as i64),
            ),
        ],
    )?;
    // c = 1 - 6 (p-1)^2 / p
    let c = &Rational::one()
        - &(&Rational::from_int(6 * (p as i64 - 1).pow(2)) / &Rational::from_int(p as i64));
    Ok(ConformalData {
        p,
        omega,
        central_charge: c,
    })
}

impl ConformalData {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn omega(&self) -> &VaElement {
        &self.omega
    }

    pub fn central_charge(&self) -> &Rational {
        &self.central_charge
    }

    /// `L(n) v = omega_{n+1} v`.
    pub fn l(&self, n: i64, v: &FockState) -> FockState {
        engine::vertex_mode(&self.omega, n + 1, v)
    }

    /// Checks `[L(m), L(n)] = (m-n) L(m+n) + delta_{m+n,0} (c/12)(m^3-m)`
    /// for all `m, n` in `[-window, window]` on every sample state. One
    /// result per `(m, n)` pair.
    pub fn check_virasoro_bracket(&self, samples: &[FockState], window: i64) -> Vec<CheckResult> {
        let mut out = Vec::new();
        let c12 = &self.central_charge / &Rational::from_int(12);
        // first-layer actions are shared across all (m, n) pairs
        let tables: Vec<Vec<FockState>> = samples
            .iter()
            .map(|v| (-2 * window..=2 * window).map(|k| self.l(k, v)).collect())
            .collect();
        for m in -window..=window {
            for n in -window..=window {
                let mut failure: Option<(usize, FockState)> = None;
                for (vi, v) in samples.iter().enumerate() {
                    let table = &tables[vi];
                    let idx = |k: i64| (k + 2 * window) as usize;
                    let lhs = self
                        .l(m, &table[idx(n)])
                        .sub(&self.l(n, &table[idx(m)]))
                        .expect("same component");
                    let mut rhs = table[idx(m + n)].scale(&Rational::from_int(m - n));
                    if m + n == 0 {
                        let central = &c12 * &Rational::from_int(m * m * m - m);
                        rhs = rhs.add(&v.scale(&central)).expect("same component");
                    }
                    if lhs != rhs {
                        failure = Some((vi, lhs.sub(&rhs).expect("same component")));
                        break;
                    }
                }
                let name = format!("virasoro-bracket[m={m},n={n}]");
                let result = match failure {
                    None => CheckResult::pass(name, format!("{} states", samples.len())),
                    Some((vi, diff)) => CheckResult::fail(
                        name,
                        format!("mismatch on sample state #{vi}"),
                        diff.serialize(),
                    ),
                }
                .with_param("m", m.to_string())
                .with_param("n", n.to_string())
                .with_param("p", self.p.to_string());
                out.push(result);
            }
        }
        out
    }

    /// Checks `[L(j), alpha(i)] = -i alpha(i+j) + (-2p+2) C(j+1,2) delta_{i+j,0}`
    /// on every sample state, one result per `(i, j)`.
    pub fn check_l_alpha_bracket(&self, samples: &[FockState], window: i64) -> Vec<CheckResult> {
        let mut out = Vec::new();
        let gen_scalar = Rational::from_int(-2 * self.p as i64 + 2);
        for i in -window..=window {
            for j in -window..=window {
                let mut failure: Option<(usize, FockState)> = None;
                for (vi, v) in samples.iter().enumerate() {
                    let lhs = self
                        .l(j, &engine::alpha_act(i, v))
                        .sub(&engine::alpha_act(i, &self.l(j, v)))
                        .expect("same component");
                    let mut rhs = engine::alpha_act(i + j, v).scale(&Rational::from_int(-i));
                    if i + j == 0 {
                        let scalar = &gen_scalar * &binomial(j + 1, 2);
                        rhs = rhs.add(&v.scale(&scalar)).expect("same component");
                    }
                    if lhs != rhs {
                        failure = Some((vi, lhs.sub(&rhs).expect("same component")));
                        break;
                    }
                }
                let name = format!("l-alpha-bracket[i={i},j={j}]");
                let result = match failure {
                    None => CheckResult::pass(name, format!("{} states", samples.len())),
                    Some((vi, diff)) => CheckResult::fail(
                        name,
                        format!("mismatch on sample state #{vi}"),
                        diff.serialize(),
                    ),
                }
                .with_param("i", i.to_string())
                .with_param("j", j.to_string())
                .with_param("p", self.p.to_string());
                out.push(result);
            }
        }
        out
    }

    /// Iterated omega-modes on an omega-top vector `u` (i.e. `omega_i u = 0`
    /// for `i > s`) vanish whenever the index sequence has its nonnegative
    /// entries first, total index sum at least `s * len`, and is not a pure
    /// power of the top index. `seq` is given in application order (first
    /// entry acts first); out-of-hypothesis sequences are rejected.
    pub fn check_vanishing_top(&self, s: i64, u: &FockState, seq: &[i64]) -> Result<bool> {
        if seq.is_empty() {
            return Err(Error::HypothesisViolation("empty index sequence".into()));
        }
        let split = seq.iter().position(|&i| i < 0).unwrap_or(seq.len());
        if seq[split..].iter().any(|&i| i >= 0) {
            return Err(Error::HypothesisViolation(
                "nonnegative indices must come before negative ones".into(),
            ));
        }
        let total: i64 = seq.iter().sum();
        let q = seq.len() as i64;
        if total < s * q {
            return Err(Error::HypothesisViolation(format!(
                "index sum {total} below s*q = {}",
                s * q
            )));
        }
        if split == seq.len() && seq.iter().all(|&i| i == s) {
            return Err(Error::HypothesisViolation(
                "pure power of the top index is excluded".into(),
            ));
        }
        let mut v = u.clone();
        for &i in seq {
            v = engine::vertex_mode(&self.omega, i, &v);
            if v.is_zero() {
                return Ok(true);
            }
        }
        Ok(v.is_zero())
    }

    /// For even `k = 2q`, the power element `omega_{-1}^q 1` acts on an
    /// omega-top vector at the critical index `(s+1)k/2 - 1` exactly as
    /// `omega_s^q`, and by zero at every higher index. Returns whether both
    /// statements hold (higher indices are sampled up to the truncation
    /// bound, beyond which vanishing is automatic).
    pub fn check_omega_power_mode(&self, k: u64, s: i64, u: &FockState) -> Result<bool> {
        if k == 0 || !k.is_multiple_of(2) {
            return Err(Error::HypothesisViolation(format!(
                "k must be a positive even integer, got {k}"
            )));
        }
        let q = k / 2;
        let mut power = VaElement::vacuum_one(self.p)?;
        for _ in 0..q {
            power = VaElement::new(engine::vertex_mode(&self.omega, -1, power.state()))?;
        }
        let critical = (s + 1) * (k as i64) / 2 - 1;
        let lhs = engine::vertex_mode(&power, critical, u);
        let mut rhs = u.clone();
        for _ in 0..q {
            rhs = engine::vertex_mode(&self.omega, s, &rhs);
        }
        if lhs != rhs {
            return Ok(false);
        }
        let top = engine::truncation_bound(&power, u)?.max(critical + 1);
        for m in critical + 1..=top + 2 {
            if !engine::vertex_mode(&power, m, u).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::WhittakerParams;
    use std::sync::Arc;

    fn whittaker(p: u32, zeta: &[(i64, i64)]) -> Arc<WhittakerParams> {
        Arc::new(
            WhittakerParams::new(p, zeta.iter().map(|&(n, d)| Rational::new(n, d)).collect())
                .unwrap(),
        )
    }

    fn basis_states(params: &Arc<WhittakerParams>, max_weight: u32) -> Vec<FockState> {
        let mut out = Vec::new();
        for w in 0..=max_weight {
            for m in crate::monomial::partitions(w, 1) {
                out.push(FockState::monomial(params.clone(), m, 0));
            }
        }
        out
    }

    #[test]
    fn conformal_vector_frozen_values() {
        let cd = conformal_vector(2).unwrap();
        assert_eq!(cd.central_charge(), &Rational::from_int(-2));
        let omega = cd.omega().state();
        assert_eq!(
            omega.coefficient(&PbwMonomial::new(vec![1, 1]).unwrap()),
            Rational::new(1, 8)
        );
        assert_eq!(
            omega.coefficient(&PbwMonomial::new(vec![2]).unwrap()),
            Rational::new(1, 4)
        );
        assert_eq!(
            conformal_vector(3).unwrap().central_charge(),
            &Rational::from_int(-7)
        );
        assert!(conformal_vector(1).is_err());
        // omega has weight 2: L(0) omega = 2 omega
        for p in [2u32, 3, 5] {
            let cd = conformal_vector(p).unwrap();
            assert_eq!(
                cd.l(0, cd.omega().state()),
                cd.omega().state().scale(&Rational::from_int(2))
            );
        }
    }

    #[test]
    fn l_frozen_examples() {
        let cd = conformal_vector(2).unwrap();
        let one = VaElement::vacuum_one(2).unwrap();
        // translation kills the vacuum
        assert!(cd.l(-1, one.state()).is_zero());
        // L(1) alpha(-1) 1 = (-2p+2) 1
        let gen = VaElement::generator(2).unwrap();
        assert_eq!(
            cd.l(1, gen.state()),
            one.state().scale(&Rational::from_int(-2))
        );
        let cd3 = conformal_vector(3).unwrap();
        let gen3 = VaElement::generator(3).unwrap();
        assert_eq!(
            cd3.l(1, gen3.state()),
            VaElement::vacuum_one(3)
                .unwrap()
                .state()
                .scale(&Rational::from_int(-4))
        );
        // weight grading
        let m = FockState::monomial(
            one.state().params().clone(),
            PbwMonomial::new(vec![2, 1]).unwrap(),
            0,
        );
        assert_eq!(cd.l(0, &m), m.scale(&Rational::from_int(3)));
    }

    #[test]
    fn omega_mode_on_omega_gives_half_central_charge() {
        // omega_3 omega = L(2) L(-2) 1 = (c/2) 1
        for p in [2u32, 3] {
            let cd = conformal_vector(p).unwrap();
            let one = VaElement::vacuum_one(p).unwrap();
            let got = engine::vertex_mode(cd.omega(), 3, cd.omega().state());
            let expect = one
                .state()
                .scale(&(cd.central_charge() / &Rational::from_int(2)));
            assert_eq!(got, expect, "p = {p}");
        }
    }

    #[test]
    fn virasoro_bracket_small_grid() {
        for p in [2u32, 3] {
            let cd = conformal_vector(p).unwrap();
            let vac = whittaker(p, &[(0, 1)]);
            let wh = whittaker(p, &[(0, 1), (2, 1)]);
            let mut samples = basis_states(&vac, 3);
            samples.extend(basis_states(&wh, 3));
            let results = cd.check_virasoro_bracket(&samples, 2);
            assert_eq!(results.len(), 25);
            for r in &results {
                assert!(r.passed(), "{}: {}", r.name, r.details);
            }
        }
    }

    #[test]
    fn l_alpha_bracket_small_grid() {
        let cd = conformal_vector(2).unwrap();
        let wh = whittaker(2, &[(1, 2), (2, 1)]);
        let samples = basis_states(&wh, 3);
        for r in cd.check_l_alpha_bracket(&samples, 3) {
            assert!(r.passed(), "{}: {}", r.name, r.details);
        }
        // frozen instance: j=2, i=-2 on u gives 2 alpha(0) u + (-2p+2)*3 u
        let u = FockState::cyclic(wh);
        let lhs = cd
            .l(2, &engine::alpha_act(-2, &u))
            .sub(&engine::alpha_act(-2, &cd.l(2, &u)))
            .unwrap();
        let expect = engine::alpha_act(0, &u)
            .scale(&Rational::from_int(2))
            .add(&u.scale(&Rational::from_int(-6)))
            .unwrap();
        assert_eq!(lhs, expect);
    }

    #[test]
    fn vanishing_top_examples() {
        let cd = conformal_vector(2).unwrap();
        let u = FockState::cyclic(whittaker(2, &[(0, 1), (2, 1)]));
        let s = 3; // = 2r+1
                   // a single index beyond the top annihilates
        assert!(cd.check_vanishing_top(s, &u, &[s + 1]).unwrap());
        // (4, 2): sum 6 >= s*q = 6, not the pure power (3, 3)
        assert!(cd.check_vanishing_top(s, &u, &[4, 2]).unwrap());
        // the pure power case is excluded by hypothesis
        assert!(matches!(
            cd.check_vanishing_top(s, &u, &[s, s]),
            Err(Error::HypothesisViolation(_))
        ));
        // negative entries must come last
        assert!(matches!(
            cd.check_vanishing_top(s, &u, &[-1, 7]),
            Err(Error::HypothesisViolation(_))
        ));
        // sum too small
        assert!(matches!(
            cd.check_vanishing_top(s, &u, &[2, 2]),
            Err(Error::HypothesisViolation(_))
        ));
        // mixed signs, nonnegative first: (7, -1): sum 6 >= 6, q = 2
        assert!(cd.check_vanishing_top(s, &u, &[7, -1]).unwrap());
    }

    #[test]
    fn omega_power_mode_examples() {
        let cd = conformal_vector(2).unwrap();
        let u = FockState::cyclic(whittaker(2, &[(0, 1), (2, 1)]));
        let s = 3;
        // k = 2 is the element itself
        assert!(cd.check_omega_power_mode(2, s, &u).unwrap());
        // k = 4: (omega_{-1}^2 1)_7 u = (omega_3)^2 u = (1/4) u
        assert!(cd.check_omega_power_mode(4, s, &u).unwrap());
        let mut power = VaElement::vacuum_one(2).unwrap();
        for _ in 0..2 {
            power = VaElement::new(engine::vertex_mode(cd.omega(), -1, power.state())).unwrap();
        }
        assert_eq!(
            engine::vertex_mode(&power, 7, &u),
            u.scale(&Rational::new(1, 4))
        );
        assert!(matches!(
            cd.check_omega_power_mode(3, s, &u),
            Err(Error::HypothesisViolation(_))
        ));
    }
}
