//! Module parameters and sparse Fock states.
//!
//! A [`FockState`] is a finite rational linear combination of PBW
//! monomials applied to the cyclic vector of the induced module determined
//! by [`WhittakerParams`], tagged with an integer lattice charge `k`
//! (meaning the `e^{k alpha/p}` component). Charge 0 with all-zero
//! eigenvalues is the vertex algebra itself.
//!
//! All types are immutable values; operations return new states. Zero
//! coefficients are pruned eagerly so that equality is structural.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::PbwMonomial;
use crate::rational::Rational;

/// Parameters `(p, zeta_0, ..., zeta_r)` of an induced module: the mode of
/// depth `-i` acts on the cyclic vector by `zeta_i` for `i <= r` and by
/// zero above, with the generator pairing normalized to `2p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerParams {
    p: u32,
    zeta: Vec<Rational>,
}

impl WhittakerParams {
    pub fn new(p: u32, zeta: Vec<Rational>) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParams(format!("p must be >= 2, got {p}")));
        }
        if zeta.is_empty() {
            return Err(Error::InvalidParams(
                "zeta must have at least one entry".into(),
            ));
        }
        Ok(WhittakerParams { p, zeta })
    }

    /// Parameters of the vertex algebra itself: `r = 0`, `zeta = (0)`.
    pub fn vacuum(p: u32) -> Result<Self> {
        Self::new(p, vec![Rational::zero()])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.zeta.len() - 1
    }

    pub fn zeta(&self) -> &[Rational] {
        &self.zeta
    }

    /// `zeta_i`, extended by zero above `r`.
    pub fn zeta_at(&self, i: usize) -> Rational {
        self.zeta.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `<alpha, alpha> = 2p` as a rational.
    pub fn pairing(&self) -> Rational {
        Rational::from_int(2 * self.p as i64)
    }

    /// True when the cyclic vector generates a genuine Whittaker module:
    /// `r >= 1` and `zeta_r != 0`.
    pub fn is_whittaker(&self) -> bool {
        self.r() >= 1 && !self.zeta[self.r()].is_zero()
    }

    /// Requires `r >= 1` and `zeta_r != 0`.
    pub fn require_whittaker(&self) -> Result<()> {
        if !self.is_whittaker() {
            return Err(Error::InvalidParams(
                "no Whittaker vector with s >= 2: need r >= 1 and zeta_r != 0".into(),
            ));
        }
        Ok(())
    }
}

/// A sparse element of one charge component of the module.
#[derive(Clone, Debug)]
pub struct FockState {
    charge: i64,
    params: Arc<WhittakerParams>,
    terms: BTreeMap<PbwMonomial, Rational>,
}

impl PartialEq for FockState {
    fn eq(&self, other: &Self) -> bool {
        self.charge == other.charge && *self.params == *other.params && self.terms == other.terms
    }
}

impl Eq for FockState {}

impl FockState {
    pub fn zero(params: Arc<WhittakerParams>, charge: i64) -> Self {
        FockState {
            charge,
            params,
            terms: BTreeMap::new(),
        }
    }

    /// The cyclic vector itself (empty monomial, coefficient 1, charge 0).
    pub fn cyclic(params: Arc<WhittakerParams>) -> Self {
        Self::monomial(params, PbwMonomial::vacuum(), 0)
    }

    /// A single monomial with coefficient 1.
    pub fn monomial(params: Arc<WhittakerParams>, monomial: PbwMonomial, charge: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(monomial, Rational::one());
        FockState {
            charge,
            params,
            terms,
        }
    }

    pub fn from_terms<I>(params: Arc<WhittakerParams>, charge: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (PbwMonomial, Rational)>,
    {
        let mut state = Self::zero(params, charge);
        for (m, c) in terms {
            state.add_term(m, &c);
        }
        state
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn params(&self) -> &Arc<WhittakerParams> {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, monomial: &PbwMonomial) -> Rational {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Largest PBW weight among the stored monomials (0 for the zero state).
    pub fn max_pbw_weight(&self) -> u64 {
        self.terms.keys().map(|m| m.weight()).max().unwrap_or(0)
    }

    /// Largest depth occurring in any monomial (0 for the zero state).
    pub fn max_depth(&self) -> u32 {
        self.terms.keys().map(|m| m.max_depth()).max().unwrap_or(0)
    }

    /// If every monomial has the same weight, that weight (zero state: 0).
    pub fn homogeneous_weight(&self) -> Result<u64> {
        let mut weights = self.terms.keys().map(|m| m.weight());
        let first = match weights.next() {
            None => return Ok(0),
            Some(w) => w,
        };
        if weights.all(|w| w == first) {
            Ok(first)
        } else {
            Err(Error::NonHomogeneous)
        }
    }

    /// `Some(c)` when the state equals `c` times the bare cyclic-vector
    /// monomial (including `c = 0`); `None` when other monomials occur.
    pub fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_vacuum() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// In-place accumulation; prunes the entry when it cancels to zero.
    pub(crate) fn add_term(&mut self, monomial: PbwMonomial, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub(crate) fn accumulate(&mut self, other: &FockState, scale: &Rational) {
        debug_assert_eq!(self.charge, other.charge);
        debug_assert_eq!(*self.params, *other.params);
        if scale.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &(c * scale));
        }
    }

    /// Coefficient-wise sum. Both states must live in the same charge
    /// component of the same module.
    pub fn add(&self, other: &FockState) -> Result<FockState> {
        if self.charge != other.charge {
            return Err(Error::ChargeMismatch(self.charge, other.charge));
        }
        if *self.params != *other.params {
            return Err(Error::ParamsMismatch);
        }
        let mut out = self.clone();
        out.accumulate(other, &Rational::one());
        Ok(out)
    }

    pub fn sub(&self, other: &FockState) -> Result<FockState> {
        if self.charge != other.charge {
            return Err(Error::ChargeMismatch(self.charge, other.charge));
        }
        if *self.params != *other.params {
            return Err(Error::ParamsMismatch);
        }
        let mut out = self.clone();
        out.accumulate(other, &Rational::from_int(-1));
        Ok(out)
    }

    /// Multiplies every coefficient by `c`; `c = 0` yields the zero state.
    pub fn scale(&self, c: &Rational) -> FockState {
        if c.is_zero() {
            return FockState::zero(self.params.clone(), self.charge);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        FockState {
            charge: self.charge,
            params: self.params.clone(),
            terms,
        }
    }

    /// Serializes to the versioned line-oriented state format:
    ///
    /// ```text
    /// vsing-state v1
    /// p 2
    /// r 1
    /// zeta 0/1,2/1
    /// charge 0
    /// term [] 1/1
    /// term [2,1] 3/2
    /// ```
    ///
    /// Terms are emitted sorted lexicographically by depth sequence, so the
    /// output is bit-reproducible. The zero state has no `term` records.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("vsing-state v1\n");
        let _ = writeln!(out, "p {}", self.params.p());
        let _ = writeln!(out, "r {}", self.params.r());
        let zeta = self
            .params
            .zeta()
            .iter()
            .map(|z| z.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let _ = writeln!(out, "zeta {}", zeta);
        let _ = writeln!(out, "charge {}", self.charge);
        for (m, c) in &self.terms {
            let _ = writeln!(out, "term {} {}", m, c);
        }
        out
    }

    /// Parses the format produced by [`FockState::serialize`]. Errors carry
    /// the 1-based line number of the offending record.
    pub fn deserialize(text: &str) -> Result<FockState> {
        let err = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = text.lines().enumerate();

        match lines.next() {
            Some((_, "vsing-state v1")) => {}
            Some((idx, l)) => {
                return Err(err(
                    idx + 1,
                    format!("expected header `vsing-state v1`, got {l:?}"),
                ))
            }
            None => return Err(err(0, "empty input".into())),
        }

        let mut next_field = |name: &str| -> Result<(usize, String)> {
            match lines.next() {
                None => Err(err(0, format!("unexpected end of input, expected {name}"))),
                Some((idx, l)) => {
                    let line_no = idx + 1;
                    match l.split_once(' ') {
                        Some((key, value)) if key == name => Ok((line_no, value.to_string())),
                        _ => Err(err(
                            line_no,
                            format!("expected `{name} <value>`, got {l:?}"),
                        )),
                    }
                }
            }
        };

        let (p_line, p_str) = next_field("p")?;
        let p: u32 = p_str
            .parse()
            .map_err(|_| err(p_line, format!("invalid p: {p_str:?}")))?;
        let (r_line, r_str) = next_field("r")?;
        let r: usize = r_str
            .parse()
            .map_err(|_| err(r_line, format!("invalid r: {r_str:?}")))?;
        let (z_line, z_str) = next_field("zeta")?;
        let zeta = z_str
            .split(',')
            .map(|part| {
                part.parse::<Rational>()
                    .map_err(|e| err(z_line, format!("invalid zeta entry: {e}")))
            })
            .collect::<Result<Vec<Rational>>>()?;
        if zeta.len() != r + 1 {
            return Err(err(
                z_line,
                format!(
                    "zeta has {} entries but r = {r} requires {}",
                    zeta.len(),
                    r + 1
                ),
            ));
        }
        let (c_line, c_str) = next_field("charge")?;
        let charge: i64 = c_str
            .parse()
            .map_err(|_| err(c_line, format!("invalid charge: {c_str:?}")))?;

        let params =
            Arc::new(WhittakerParams::new(p, zeta).map_err(|e| err(p_line, e.to_string()))?);
        let mut state = FockState::zero(params, charge);
        for (idx, l) in lines {
            let line_no = idx + 1;
            if l.is_empty() {
                continue;
            }
            let rest = l.strip_prefix("term ").ok_or_else(|| {
                err(
                    line_no,
                    format!("expected `term <monomial> <coeff>`, got {l:?}"),
                )
            })?;
            let (mono_str, coeff_str) = rest
                .split_once(' ')
                .ok_or_else(|| err(line_no, format!("missing coefficient in {l:?}")))?;
            let monomial: PbwMonomial =
                mono_str.parse().map_err(|e| err(line_no, format!("{e}")))?;
            let coeff: Rational = coeff_str
                .parse()
                .map_err(|e| err(line_no, format!("invalid coefficient: {e}")))?;
            if state.terms.contains_key(&monomial) {
                return Err(err(line_no, format!("duplicate term {monomial}")));
            }
            state.add_term(monomial, &coeff);
        }
        Ok(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(p: u32, zeta: &[(i64, i64)]) -> Arc<WhittakerParams> {
        Arc::new(
            WhittakerParams::new(p, zeta.iter().map(|&(n, d)| Rational::new(n, d)).collect())
                .unwrap(),
        )
    }

    #[test]
    fn params_validation() {
        assert!(WhittakerParams::new(1, vec![Rational::zero()]).is_err());
        assert!(WhittakerParams::new(2, vec![]).is_err());
        let pr = params(2, &[(0, 1), (2, 1)]);
        assert_eq!(pr.r(), 1);
        assert!(pr.is_whittaker());
        assert!(!params(2, &[(0, 1), (0, 1)]).is_whittaker());
        assert!(!params(2, &[(3, 1)]).is_whittaker());
        assert_eq!(pr.zeta_at(5), Rational::zero());
        assert_eq!(pr.pairing(), Rational::from_int(4));
    }

    #[test]
    fn additive_identities() {
        let pr = params(2, &[(0, 1), (2, 1)]);
        let m = PbwMonomial::new(vec![2, 1]).unwrap();
        let x = FockState::monomial(pr.clone(), m.clone(), 0).scale(&Rational::new(3, 2));
        let zero = FockState::zero(pr.clone(), 0);
        assert_eq!(x.add(&zero).unwrap(), x);
        assert_eq!(x.add(&x.scale(&Rational::from_int(-1))).unwrap(), zero);
        // like-term merge: (2/3) m + (1/3) m = m
        let a = FockState::monomial(pr.clone(), m.clone(), 0).scale(&Rational::new(2, 3));
        let b = FockState::monomial(pr.clone(), m.clone(), 0).scale(&Rational::new(1, 3));
        assert_eq!(a.add(&b).unwrap(), FockState::monomial(pr, m, 0));
    }

    #[test]
    fn scale_identities() {
        let pr = params(2, &[(0, 1), (2, 1)]);
        let x = FockState::monomial(pr.clone(), PbwMonomial::new(vec![1]).unwrap(), 0);
        assert_eq!(x.scale(&Rational::one()), x);
        assert_eq!(x.scale(&Rational::zero()), FockState::zero(pr, 0));
        let half = x.scale(&Rational::new(1, 2));
        assert_eq!(
            half.coefficient(&PbwMonomial::new(vec![1]).unwrap()),
            Rational::new(1, 2)
        );
    }

    #[test]
    fn mismatches_are_domain_errors() {
        let a = FockState::cyclic(params(2, &[(0, 1), (2, 1)]));
        let b = FockState::cyclic(params(2, &[(0, 1), (1, 1)]));
        assert!(matches!(a.add(&b), Err(Error::ParamsMismatch)));
        let c = FockState::zero(a.params().clone(), -1);
        assert!(matches!(a.add(&c), Err(Error::ChargeMismatch(0, -1))));
    }

    #[test]
    fn serialize_frozen_format() {
        let pr = params(2, &[(0, 1), (2, 1)]);
        let mut st = FockState::zero(pr.clone(), 0);
        st.add_term(PbwMonomial::new(vec![2, 1]).unwrap(), &Rational::new(3, 2));
        assert_eq!(
            st.serialize(),
            "vsing-state v1\np 2\nr 1\nzeta 0/1,2/1\ncharge 0\nterm [2,1] 3/2\n"
        );
        let vac = FockState::cyclic(pr.clone());
        assert!(vac.serialize().contains("term [] 1/1\n"));
        // zero state: header and fields only, no term records
        let zero = FockState::zero(pr, 0);
        assert!(!zero.serialize().contains("term"));
        assert_eq!(FockState::deserialize(&zero.serialize()).unwrap(), zero);
    }

    #[test]
    fn deserialize_errors_carry_positions() {
        let bad_header = "vsing-state v2\np 2\n";
        match FockState::deserialize(bad_header) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad_term = "vsing-state v1\np 2\nr 0\nzeta 0/1\ncharge 0\nterm [2 1/1\n";
        match FockState::deserialize(bad_term) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad_zeta = "vsing-state v1\np 2\nr 1\nzeta 0/1\ncharge 0\n";
        match FockState::deserialize(bad_zeta) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn scalar_detection() {
        let pr = params(2, &[(0, 1), (2, 1)]);
        assert_eq!(
            FockState::cyclic(pr.clone()).as_scalar(),
            Some(Rational::one())
        );
        assert_eq!(
            FockState::zero(pr.clone(), 0).as_scalar(),
            Some(Rational::zero())
        );
        let m = FockState::monomial(pr, PbwMonomial::new(vec![1]).unwrap(), 0);
        assert_eq!(m.as_scalar(), None);
    }

    prop_compose! {
        fn arb_state()(
            parts in proptest::collection::vec((1u32..5, -20i64..20, 1i64..8), 0..6)
        ) -> FockState {
            let pr = params(2, &[(0, 1), (2, 1)]);
            let mut st = FockState::zero(pr, 0);
            for (depth, num, den) in parts {
                st.add_term(
                    PbwMonomial::new(vec![depth, 1]).unwrap().prepend(depth),
                    &Rational::new(num, den),
                );
            }
            st
        }
    }

    proptest! {
        #[test]
        fn round_trip_identity(st in arb_state()) {
            let text = st.serialize();
            let back = FockState::deserialize(&text).unwrap();
            prop_assert_eq!(&back, &st);
            // serialize . deserialize is also the identity on valid text
            prop_assert_eq!(back.serialize(), text);
        }

        #[test]
        fn deserialize_never_panics(text in "\\PC*") {
            // untrusted input (CLI witnesses, FFI) must fail cleanly
            let _ = FockState::deserialize(&text);
        }

        #[test]
        fn deserialize_never_panics_on_near_valid(suffix in "[term \\[\\]0-9/,-]*") {
            let text = format!("vsing-state v1\np 2\nr 1\nzeta 0/1,2/1\ncharge 0\n{suffix}");
            let _ = FockState::deserialize(&text);
        }
    }
}
