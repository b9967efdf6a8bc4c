//! The singlet subalgebra: its second generator, the screening operator,
//! weight-graded kernels, and the structural relations tying the generator
//! to the conformal element.
//!
//! The generator `H` is the degree-`(2p-1)` component of the exponential
//! generating series `exp(sum_{j>=1} alpha(-j) t^j / j)` applied to the
//! vacuum. The screening operator is the residue of the lattice vertex
//! operator attached to `e^{-alpha/p}`; on a charge-0 state of weight `w`
//! it reduces to the finite sum over pairs of exponential components
//! `(E^-_{d}, E^+_{d+1})` with `d + 1 <= w`, landing in charge `-1`. The
//! singlet algebra is exactly the kernel of this map on charge 0, computed
//! here weight by weight with exact linear algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::engine::{self, VaElement};
use crate::error::{Error, Result};
use crate::linalg;
use crate::monomial::{partitions, PbwMonomial};
use crate::rational::{factorial, Rational};
use crate::report::CheckResult;
use crate::state::{FockState, WhittakerParams};
use crate::virasoro::ConformalData;

/// Coefficient of a given partition in the expansion of
/// `exp(sum_{n>=1} c(n) A_n t^n)` with commuting `A_n`: the product over
/// distinct parts `n` with multiplicity `m` of `c(n)^m / m!`.
fn exp_partition_coeff(partition: &PbwMonomial, coeff_of: impl Fn(u32) -> Rational) -> Rational {
    let mut acc = Rational::one();
    let mut iter = partition.depths().iter().peekable();
    while let Some(&n) = iter.next() {
        let mut mult = 1u64;
        while iter.peek() == Some(&&n) {
            iter.next();
            mult += 1;
        }
        acc = &acc * &coeff_of(n).pow(mult as i64);
        acc = &acc / &factorial(mult);
    }
    acc
}

/// The `i`-th component of `exp(sum_{j>=1} alpha(-j) t^j / j)` applied to
/// the vacuum; weight-homogeneous of weight `i`.
pub fn schur_component(p: u32, i: u32) -> Result<VaElement> {
    let terms = partitions(i, 1).into_iter().map(|m| {
        let c = exp_partition_coeff(&m, |n| Rational::new(1, n as i64));
        (m, c)
    });
    VaElement::from_terms(p, terms)
}

/// The weight-`(2p-1)` generator of the singlet algebra.
pub fn singlet_h(p: u32) -> Result<VaElement> {
    if p < 2 {
        return Err(Error::InvalidParams(format!("p must be >= 2, got {p}")));
    }
    schur_component(p, 2 * p - 1)
}

/// Applies the degree-`d` component of `exp(sign/p * sum alpha(±n)/n x^{±n})`.
fn apply_exp_component(p: u32, degree: u32, negative_modes: bool, v: &FockState) -> FockState {
    let mut out = FockState::zero(v.params().clone(), v.charge());
    let sign = if negative_modes { -1 } else { 1 };
    for partition in partitions(degree, 1) {
        let coeff = exp_partition_coeff(&partition, |n| Rational::new(sign, (p * n) as i64));
        let mut piece = v.clone();
        for &n in partition.depths() {
            let mode = if negative_modes {
                -(n as i64)
            } else {
                n as i64
            };
            piece = engine::alpha_act(mode, &piece);
            if piece.is_zero() {
                break;
            }
        }
        out.accumulate(&piece, &coeff);
    }
    out
}

/// The screening operator: the residue of the lattice vertex operator for
/// `e^{-alpha/p}`. Defined here on charge 0 only, where the lattice pairing
/// contributes the trivial power `x^0`; the image lives in charge `-1` and
/// the PBW weight drops by exactly 1 on homogeneous input.
pub fn screening_q(a: &FockState) -> Result<FockState> {
    if a.charge() != 0 {
        return Err(Error::UnsupportedCharge(a.charge()));
    }
    let p = a.params().p();
    let mut out = FockState::zero(a.params().clone(), -1);
    let w = a.max_pbw_weight();
    // residue: E^- degree d against E^+ degree d+1
    for d in 0..w {
        let lowered = apply_exp_component(p, (d + 1) as u32, false, a);
        if lowered.is_zero() {
            continue;
        }
        // reinterpret in charge -1 before applying creation operators
        let lowered = FockState::from_terms(
            a.params().clone(),
            -1,
            lowered.terms().map(|(m, c)| (m.clone(), c.clone())),
        );
        let raised = apply_exp_component(p, d as u32, true, &lowered);
        out.accumulate(&raised, &Rational::one());
    }
    Ok(out)
}

/// Exact kernel of the screening operator on the weight-graded piece.
#[derive(Clone, Debug)]
pub struct KernelReport {
    pub weight: u32,
    pub dim_m1: usize,
    pub kernel_dim: usize,
    pub basis: Vec<VaElement>,
}

impl KernelReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "weight": self.weight,
            "dim": self.dim_m1,
            "kernel_dim": self.kernel_dim,
            "basis": self.basis.iter().map(|b| b.state().serialize()).collect::<Vec<_>>(),
        })
    }
}

/// Kernel of the screening operator restricted to weight `weight`,
/// computed by fraction-free elimination. The basis is primitive-integer
/// and canonical for the fixed partition order.
pub fn kernel_basis(p: u32, weight: u32) -> Result<KernelReport> {
    let params = Arc::new(WhittakerParams::vacuum(p)?);
    let domain = partitions(weight, 1);
    let target = if weight == 0 {
        Vec::new()
    } else {
        partitions(weight - 1, 1)
    };
    let target_index: BTreeMap<&PbwMonomial, usize> =
        target.iter().enumerate().map(|(i, m)| (m, i)).collect();

    // rows: target coordinates, cols: domain basis
    let mut matrix = vec![vec![Rational::zero(); domain.len()]; target.len()];
    for (col, mono) in domain.iter().enumerate() {
        let image = screening_q(&FockState::monomial(params.clone(), mono.clone(), 0))?;
        for (m, c) in image.terms() {
            let row = *target_index
                .get(m)
                .expect("screening image stays in the expected weight");
            matrix[row][col] = c.clone();
        }
    }

    let null = linalg::nullspace(&matrix, domain.len());
    let basis = null
        .iter()
        .map(|vec| {
            VaElement::from_terms(
                p,
                domain
                    .iter()
                    .cloned()
                    .zip(vec.iter().cloned())
                    .filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KernelReport {
        weight,
        dim_m1: domain.len(),
        kernel_dim: basis.len(),
        basis,
    })
}

/// Outcome of solving for the coefficient `c` that makes
/// `c H_{-4}1 - omega_{-1} H_{-2}1 + ((2p-1)/2) omega_{-2} H` vanish.
#[derive(Clone, Debug)]
pub struct RelationSolution {
    /// The unique annihilating coefficient.
    pub coefficient: Rational,
    /// The combination evaluated at coefficient `3/(2p)`.
    pub residual_at_small: FockState,
    /// The combination evaluated at coefficient `2p/3`.
    pub residual_at_big: FockState,
}

/// Solves for the unique coefficient annihilating the weight-`(2p+2)`
/// relation between the two singlet generators. `H_{-4}1` is cross-checked
/// against the translation identity `omega_0^3 H = 3! H_{-4}1` before
/// solving.
pub fn solve_omega_h_relation(p: u32) -> Result<RelationSolution> {
    let cd = crate::virasoro::conformal_vector(p)?;
    let h = singlet_h(p)?;
    let one = VaElement::vacuum_one(p)?;

    let h_m4 = engine::vertex_mode(&h, -4, one.state());
    // omega_0 is the translation operator: omega_0^i H = i! H_{-1-i} 1
    let mut translated = h.state().clone();
    for _ in 0..3 {
        translated = engine::vertex_mode(cd.omega(), 0, &translated);
    }
    if translated != h_m4.scale(&Rational::from_int(6)) {
        return Err(Error::EngineMismatch(
            "translation identity omega_0^3 H = 3! H_{-4} 1 failed".into(),
        ));
    }

    let h_m2 = engine::vertex_mode(&h, -2, one.state());
    let term2 = engine::vertex_mode(cd.omega(), -1, &h_m2);
    let term3 = engine::vertex_mode(cd.omega(), -2, h.state());
    // d = -omega_{-1} H_{-2} 1 + ((2p-1)/2) omega_{-2} H
    let mut d = term3.scale(&Rational::new(2 * p as i64 - 1, 2));
    d.accumulate(&term2, &Rational::from_int(-1));

    // solve c * h_m4 + d = 0 coefficient-wise
    let mut candidate: Option<Rational> = None;
    let mut consistent = true;
    for (m, a) in h_m4.terms() {
        let c = &(-&d.coefficient(m)) / a;
        match &candidate {
            None => candidate = Some(c),
            Some(prev) if *prev == c => {}
            Some(_) => {
                consistent = false;
                break;
            }
        }
    }
    // d must not be supported outside h_m4
    if consistent {
        for (m, c) in d.terms() {
            if h_m4.coefficient(m).is_zero() && !c.is_zero() {
                consistent = false;
                break;
            }
        }
    }

    let small = Rational::new(3, 2 * p as i64);
    let big = Rational::new(2 * p as i64, 3);
    let at = |c: &Rational| {
        let mut x = h_m4.scale(c);
        x.accumulate(&d, &Rational::one());
        x
    };
    let residual_at_small = at(&small);
    let residual_at_big = at(&big);

    match candidate {
        Some(c) if consistent => Ok(RelationSolution {
            coefficient: c,
            residual_at_small,
            residual_at_big,
        }),
        _ => Err(Error::NoUniqueCoefficient {
            residual_small: residual_at_small.num_terms(),
            residual_big: residual_at_big.num_terms(),
        }),
    }
}

/// Decomposition of `H_{-1} H` over iterated conformal modes.
#[derive(Clone, Debug)]
pub struct HDecomposition {
    /// Coefficient of the pure power `L(-2)^{2p-1} 1`.
    pub leading: Rational,
    /// Coordinates over the spanning set, keyed by the partition
    /// `(j_1 >= ... >= j_k >= 2)` of `L(-j_1) ... L(-j_k) 1`.
    pub coords: BTreeMap<PbwMonomial, Rational>,
    /// Dimension of the relation space among the spanning states inside
    /// the Fock module (0 means they are linearly independent).
    pub spanning_nullity: usize,
}

/// The state `L(-j_1) ... L(-j_k) 1` for a partition of depths.
pub fn virasoro_partition_state(cd: &ConformalData, partition: &PbwMonomial) -> Result<VaElement> {
    let mut v = VaElement::vacuum_one(cd.p())?.state().clone();
    for &j in partition.depths().iter().rev() {
        v = cd.l(-(j as i64), &v);
    }
    VaElement::new(v)
}

/// Expresses `H_{-1} H` in the spanning set of iterated conformal modes
/// `L(-j_1) ... L(-j_k) 1` over partitions of `4p-2` with parts `>= 2`,
/// and reads off the coefficient of `L(-2)^{2p-1} 1`. The spanning set may
/// be linearly dependent inside the Fock module; the coefficient is
/// reported only when it is the same in every decomposition, otherwise the
/// call fails with [`Error::AmbiguousCoordinate`].
pub fn decompose_h_minus1_h(p: u32) -> Result<HDecomposition> {
    let cd = crate::virasoro::conformal_vector(p)?;
    let h = singlet_h(p)?;
    let target = engine::vertex_mode(&h, -1, h.state());
    decompose_in_virasoro_span(&cd, &target, true)
}

/// Solves `target = sum_k x_k L(-j^{(k)}) 1` over partitions of the
/// target's weight with parts `>= 2`. When `need_leading` is set, also
/// requires the pure `L(-2)^m 1` coordinate to be pivot-unique.
pub fn decompose_in_virasoro_span(
    cd: &ConformalData,
    target: &FockState,
    need_leading: bool,
) -> Result<HDecomposition> {
    let weight = target.homogeneous_weight()? as u32;
    let span_partitions = partitions(weight, 2);
    let pbw_basis = partitions(weight, 1);
    let pbw_index: BTreeMap<&PbwMonomial, usize> =
        pbw_basis.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut matrix = vec![vec![Rational::zero(); span_partitions.len()]; pbw_basis.len()];
    for (col, part) in span_partitions.iter().enumerate() {
        let st = virasoro_partition_state(cd, part)?;
        for (m, c) in st.state().terms() {
            matrix[pbw_index[m]][col] = c.clone();
        }
    }
    let mut rhs = vec![Rational::zero(); pbw_basis.len()];
    for (m, c) in target.terms() {
        rhs[*pbw_index
            .get(m)
            .ok_or_else(|| Error::NotInSpan("target outside the graded piece".into()))?] =
            c.clone();
    }

    let solution = linalg::solve(&matrix, &rhs).ok_or_else(|| {
        Error::NotInSpan(format!(
            "no exact combination of {} iterated conformal states matches the target",
            span_partitions.len()
        ))
    })?;
    let null = linalg::nullspace(&matrix, span_partitions.len());

    let pure = PbwMonomial::new(vec![2; (weight / 2) as usize])?;
    let pure_col = span_partitions.iter().position(|m| *m == pure);
    if need_leading {
        let col = pure_col.ok_or(Error::AmbiguousCoordinate)?;
        if null.iter().any(|v| !v[col].is_zero()) {
            return Err(Error::AmbiguousCoordinate);
        }
    }
    let leading = pure_col
        .map(|col| solution[col].clone())
        .unwrap_or_else(Rational::zero);

    let coords = span_partitions
        .into_iter()
        .zip(solution)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(HDecomposition {
        leading,
        coords,
        spanning_nullity: null.len(),
    })
}

/// Whether `H_k H` lies in the span of iterated conformal modes (it is
/// zero or decomposes exactly).
pub fn h_mode_on_h_in_virasoro_span(p: u32, k: i64) -> Result<bool> {
    let cd = crate::virasoro::conformal_vector(p)?;
    let h = singlet_h(p)?;
    let hk_h = engine::vertex_mode(&h, k, h.state());
    if hk_h.is_zero() {
        return Ok(true);
    }
    match decompose_in_virasoro_span(&cd, &hk_h, false) {
        Ok(_) => Ok(true),
        Err(Error::NotInSpan(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Primary-vector checks for the singlet generator: `L(n) H = 0` for
/// `1 <= n <= n_max`, `L(0) H = (2p-1) H`, and the commutator
/// `[omega_i, H_j] = ((2p-2) i - j) H_{i+j-1}` on the given sample states.
pub fn check_h_primary(
    cd: &ConformalData,
    n_max: i64,
    samples: &[FockState],
    window: i64,
) -> Vec<CheckResult> {
    let p = cd.p();
    let mut out = Vec::new();
    let h = match singlet_h(p) {
        Ok(h) => h,
        Err(e) => {
            return vec![CheckResult::fail(
                "h-primary[construct]",
                e.to_string(),
                String::new(),
            )]
        }
    };

    for n in 1..=n_max {
        let ln_h = cd.l(n, h.state());
        let name = format!("h-primary[L({n})H]");
        out.push(if ln_h.is_zero() {
            CheckResult::pass(name, "annihilated").with_param("p", p.to_string())
        } else {
            CheckResult::fail(name, "L(n) H != 0", ln_h.serialize()).with_param("p", p.to_string())
        });
    }
    let l0_h = cd.l(0, h.state());
    let expect = h.state().scale(&Rational::from_int(2 * p as i64 - 1));
    out.push(if l0_h == expect {
        CheckResult::pass("h-primary[L(0)H]", format!("weight {}", 2 * p - 1))
            .with_param("p", p.to_string())
    } else {
        CheckResult::fail("h-primary[L(0)H]", "wrong weight", l0_h.serialize())
            .with_param("p", p.to_string())
    });

    for i in -window..=window {
        for j in -window..=window {
            let mut failure: Option<FockState> = None;
            for v in samples {
                let lhs = engine::mode_commutator(cd.omega(), i, &h, j, v);
                let scalar = Rational::from_int((2 * p as i64 - 2) * i - j);
                let rhs = engine::vertex_mode(&h, i + j - 1, v).scale(&scalar);
                if lhs != rhs {
                    failure = Some(lhs.sub(&rhs).expect("same component"));
                    break;
                }
            }
            let name = format!("h-primary-bracket[i={i},j={j}]");
            out.push(
                match failure {
                    None => CheckResult::pass(name, format!("{} states", samples.len())),
                    Some(diff) => CheckResult::fail(name, "commutator mismatch", diff.serialize()),
                }
                .with_param("p", p.to_string()),
            );
        }
    }
    out
}
