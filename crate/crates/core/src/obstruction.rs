//! Necessary conditions for 4-triviality on the coefficients
//! `c(k_1,…,k_j)` of `E([α_i, η_q(λ_i)])`.
//!
//! If a link is 4-equivalent to the trivial link, then for every component
//! the commutator coefficients satisfy:
//!
//! * (I)   `c(k) = c(k,k) = c(k,k,k) = c(k,k,k,k) = 0`;
//! * (II)  `c(k,l,l) = c(l,k,k) = c(k,k,l) = c(l,l,k)` for `k ≠ l`;
//! * (III) `c(k,l,k,l) = c(l,k,l,k)`, `c(k,k,l,l) = c(l,l,k,k)` and
//!   `c(k,k,k,l) = c(k,k,l,k) = c(k,l,k,k) = c(l,k,k,k)` for `k ≠ l`;
//! * (IV)  a non-zero `c(k_1,k_2,k_3,k_4)` with exactly three distinct
//!   indices has two equal neighbours;
//! * (V)   `c(k_1,…,k_j) = 0` for pairwise distinct indices, `j < q`.
//!
//! The implication runs one way only. A violated condition proves the link
//! is not 4-trivial; all conditions holding proves nothing.
//!
//! Coefficients of degree `≥ q` are not controlled by the lower central
//! series term and are never read: every read goes through a probe that
//! refuses degrees above the trusted bound `B = min(q − 1, D)`.

use std::cell::Cell;
use std::fmt;

use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exec::Exec;
use crate::freegroup::{sample_s_normal_closure, Meridian, Word};
use crate::magnus::{expand_word, MagnusError, Monomial, TruncatedSeries};
use crate::milnor::{commutator_series_all, MilnorConfig, MilnorError};
use crate::underpass::UnderpassCode;

/// Smallest admissible level `q`.
pub const MIN_LEVEL: usize = 5;
/// Conditions (I)–(IV) read degrees 1 through 4.
pub const MIN_DEGREE_BOUND: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("q = {0} is below 5; the obstruction needs q ≥ 5")]
    LevelTooLow(usize),
    #[error("trusted degree bound {0} is below 4; conditions (I)-(IV) read degree 4")]
    BoundTooLow(usize),
    #[error("series is truncated at degree {series} but bound {bound} was requested")]
    SeriesTooShort { series: usize, bound: usize },
    #[error("attempted to read c({monomial}) of degree {degree} above the trusted bound {bound}")]
    UntrustedRead { monomial: String, degree: usize, bound: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Milnor(#[from] MilnorError),
    #[error(transparent)]
    Magnus(#[from] MagnusError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConditionId {
    I,
    II,
    III,
    IV,
    V,
}

impl ConditionId {
    pub const ALL: [ConditionId; 5] =
        [ConditionId::I, ConditionId::II, ConditionId::III, ConditionId::IV, ConditionId::V];

    pub fn label(self) -> &'static str {
        match self {
            ConditionId::I => "I",
            ConditionId::II => "II",
            ConditionId::III => "III",
            ConditionId::IV => "IV",
            ConditionId::V => "V",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Monomials whose coefficients violate a condition. Equality conditions
/// carry two monomials with different values; vanishing conditions carry one
/// monomial with value 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub component: usize,
    pub condition: ConditionId,
    pub monomials: Vec<Monomial>,
    pub values: Vec<bool>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .monomials
            .iter()
            .zip(&self.values)
            .map(|(m, &v)| format!("{m}:{}", u8::from(v)))
            .collect();
        f.write_str(&parts.join("  "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionStatus {
    pub id: ConditionId,
    pub witnesses: Vec<Witness>,
}

impl ConditionStatus {
    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Reads coefficients up to a fixed degree and records the highest degree
/// actually read.
pub struct CoefficientProbe<'a> {
    series: &'a TruncatedSeries,
    bound: usize,
    max_read: Cell<usize>,
    reads: Cell<usize>,
}

impl<'a> CoefficientProbe<'a> {
    pub fn new(series: &'a TruncatedSeries, bound: usize) -> Result<Self, ObstructionError> {
        if series.degree_bound() < bound {
            return Err(ObstructionError::SeriesTooShort { series: series.degree_bound(), bound });
        }
        Ok(CoefficientProbe { series, bound, max_read: Cell::new(0), reads: Cell::new(0) })
    }

    pub fn get(&self, vars: &[usize]) -> Result<bool, ObstructionError> {
        if vars.len() > self.bound {
            return Err(ObstructionError::UntrustedRead {
                monomial: Monomial::from(vars).to_string(),
                degree: vars.len(),
                bound: self.bound,
            });
        }
        self.max_read.set(self.max_read.get().max(vars.len()));
        self.reads.set(self.reads.get() + 1);
        Ok(self.series.coefficient(vars)?)
    }

    pub fn max_degree_read(&self) -> usize {
        self.max_read.get()
    }

    pub fn reads(&self) -> usize {
        self.reads.get()
    }
}

/// Conditions (I)–(V) on one commutator series. `component` only labels the
/// witnesses.
pub fn check_conditions(
    series: &TruncatedSeries,
    bound: usize,
    component: usize,
) -> Result<Vec<ConditionStatus>, ObstructionError> {
    let probe = CoefficientProbe::new(series, bound)?;
    check_conditions_probed(&probe, component)
}

pub fn check_conditions_probed(
    probe: &CoefficientProbe<'_>,
    component: usize,
) -> Result<Vec<ConditionStatus>, ObstructionError> {
    if probe.bound < MIN_DEGREE_BOUND {
        return Err(ObstructionError::BoundTooLow(probe.bound));
    }
    let m = probe.series.m();
    let witness = |condition, monos: Vec<Vec<usize>>, values: Vec<bool>| Witness {
        component,
        condition,
        monomials: monos.into_iter().map(Monomial::new).collect(),
        values,
    };
    // All coefficients of `chain` agree; otherwise the first mismatch.
    let equal_chain = |condition, chain: Vec<Vec<usize>>| -> Result<Option<Witness>, ObstructionError> {
        let first = probe.get(&chain[0])?;
        for other in &chain[1..] {
            let v = probe.get(other)?;
            if v != first {
                return Ok(Some(witness(condition, vec![chain[0].clone(), other.clone()], vec![first, v])));
            }
        }
        Ok(None)
    };

    let mut cond_i = Vec::new();
    for k in 1..=m {
        for len in 1..=4 {
            let mono = vec![k; len];
            if probe.get(&mono)? {
                cond_i.push(witness(ConditionId::I, vec![mono], vec![true]));
            }
        }
    }

    let mut cond_ii = Vec::new();
    let mut cond_iii = Vec::new();
    for k in 1..=m {
        for l in 1..=m {
            if k == l {
                continue;
            }
            if k < l {
                let chain = vec![vec![k, l, l], vec![l, k, k], vec![k, k, l], vec![l, l, k]];
                cond_ii.extend(equal_chain(ConditionId::II, chain)?);
                let alt = vec![vec![k, l, k, l], vec![l, k, l, k]];
                cond_iii.extend(equal_chain(ConditionId::III, alt)?);
                let blocks = vec![vec![k, k, l, l], vec![l, l, k, k]];
                cond_iii.extend(equal_chain(ConditionId::III, blocks)?);
            }
            let shift = vec![vec![k, k, k, l], vec![k, k, l, k], vec![k, l, k, k], vec![l, k, k, k]];
            cond_iii.extend(equal_chain(ConditionId::III, shift)?);
        }
    }

    let mut cond_iv = Vec::new();
    if m >= 3 {
        for mono in all_sequences(m, 4) {
            let distinct = Monomial::new(mono.clone()).distinct_count();
            let neighbours = mono[0] == mono[1] || mono[1] == mono[2] || mono[2] == mono[3];
            if distinct == 3 && !neighbours && probe.get(&mono)? {
                cond_iv.push(witness(ConditionId::IV, vec![mono], vec![true]));
            }
        }
    }

    let mut cond_v = Vec::new();
    for j in 1..=m.min(probe.bound) {
        for mono in injective_sequences(m, j) {
            if probe.get(&mono)? {
                cond_v.push(witness(ConditionId::V, vec![mono], vec![true]));
            }
        }
    }

    Ok(vec![
        ConditionStatus { id: ConditionId::I, witnesses: cond_i },
        ConditionStatus { id: ConditionId::II, witnesses: cond_ii },
        ConditionStatus { id: ConditionId::III, witnesses: cond_iii },
        ConditionStatus { id: ConditionId::IV, witnesses: cond_iv },
        ConditionStatus { id: ConditionId::V, witnesses: cond_v },
    ])
}

/// Every sequence in `{1..m}^len`, lexicographic.
fn all_sequences(m: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| (1..=m).map(move |k| [p.as_slice(), &[k]].concat()))
            .collect();
    }
    out
}

/// Sequences of `len` pairwise distinct indices in `1..=m`, lexicographic.
pub fn injective_sequences(m: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, len: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for k in 1..=m {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                go(m, len, cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(m, len, &mut Vec::new(), &mut vec![false; m + 1], &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Some condition fails: the link is not 4-equivalent to the trivial link.
    Obstructed,
    /// Every condition holds at this level. This does not decide 4-triviality.
    NoObstructionFound,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Obstructed => "OBSTRUCTED",
            Verdict::NoObstructionFound => "NO_OBSTRUCTION_FOUND",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub component: usize,
    pub series: TruncatedSeries,
    pub conditions: Vec<ConditionStatus>,
}

impl ComponentReport {
    pub fn condition(&self, id: ConditionId) -> &ConditionStatus {
        &self.conditions[id as usize]
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.conditions.iter().flat_map(|c| &c.witnesses)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub name: String,
    pub q: usize,
    /// Degree at which the commutator series were expanded.
    pub degree: usize,
    /// Trusted bound `B = min(q − 1, D)`.
    pub degree_bound: usize,
    pub components: Vec<ComponentReport>,
    pub verdict: Verdict,
    /// Highest coefficient degree any condition read.
    pub max_degree_read: usize,
}

impl ObstructionReport {
    pub fn component(&self, i: usize) -> &ComponentReport {
        &self.components[i - 1]
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.components.iter().flat_map(ComponentReport::witnesses)
    }

    /// Conditions violated on some component, in order.
    pub fn violated(&self) -> Vec<ConditionId> {
        ConditionId::ALL
            .into_iter()
            .filter(|&id| self.components.iter().any(|c| !c.condition(id).holds()))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let components: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                let mut conditions = serde_json::Map::new();
                for status in &c.conditions {
                    let witnesses: Vec<Value> = status
                        .witnesses
                        .iter()
                        .map(|w| {
                            json!({
                                "monomials": w.monomials.iter().map(ToString::to_string).collect::<Vec<_>>(),
                                "values": w.values.iter().map(|&v| u8::from(v)).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    conditions.insert(
                        status.id.label().to_string(),
                        json!({ "holds": status.holds(), "witnesses": witnesses }),
                    );
                }
                json!({
                    "i": c.component,
                    "series": c.series.to_string(),
                    "conditions": conditions,
                })
            })
            .collect();
        json!({
            "verdict": self.verdict.label(),
            "q": self.q,
            "degree_bound": self.degree_bound,
            "components": components,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "link: {}\nq = {}, degree bound B = {}\n",
            self.name, self.q, self.degree_bound
        ));
        for c in &self.components {
            out.push_str(&format!("component {}: E([a{}, eta(lambda{})]) = {}\n", c.component, c.component, c.component, c.series));
            for status in &c.conditions {
                if status.holds() {
                    out.push_str(&format!("  ({}) holds\n", status.id));
                } else {
                    out.push_str(&format!("  ({}) violated\n", status.id));
                    for w in &status.witnesses {
                        out.push_str(&format!("      {w}\n"));
                    }
                }
            }
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        if self.verdict == Verdict::NoObstructionFound {
            out.push_str("(these are necessary conditions only; passing them does not decide 4-equivalence)\n");
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub q: usize,
    /// Expansion degree; `None` picks `min(q − 1, max(4, m))`.
    pub degree: Option<usize>,
    pub milnor: MilnorConfig,
}

impl CheckOptions {
    pub fn new(q: usize) -> Self {
        CheckOptions { q, degree: None, milnor: MilnorConfig::default() }
    }

    pub fn with_degree(mut self, d: usize) -> Self {
        self.degree = Some(d);
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.milnor.exec = exec;
        self
    }
}

pub fn default_degree(q: usize, m: usize) -> usize {
    (q - 1).min(m.max(MIN_DEGREE_BOUND))
}

pub fn check_link(code: &UnderpassCode, q: usize, degree: Option<usize>) -> Result<ObstructionReport, ObstructionError> {
    check_link_with(code, &CheckOptions { q, degree, milnor: MilnorConfig::default() })
}

pub fn check_link_with(code: &UnderpassCode, opts: &CheckOptions) -> Result<ObstructionReport, ObstructionError> {
    let q = opts.q;
    if q < MIN_LEVEL {
        return Err(ObstructionError::LevelTooLow(q));
    }
    let degree = opts.degree.unwrap_or_else(|| default_degree(q, code.m()));
    let bound = (q - 1).min(degree);
    if bound < MIN_DEGREE_BOUND {
        return Err(ObstructionError::BoundTooLow(bound));
    }
    // degrees above the bound are never read, so expand only up to it
    let series = commutator_series_all(code, q, bound, &opts.milnor)?;
    let mut components = Vec::with_capacity(series.len());
    let mut max_degree_read = 0;
    for (idx, s) in series.into_iter().enumerate() {
        let i = idx + 1;
        let probe = CoefficientProbe::new(&s, bound)?;
        for k in 1..=code.m() {
            if probe.get(&[k])? || probe.get(&[k, k])? {
                return Err(ObstructionError::Internal(format!(
                    "component {i}: c({k}) or c({k},{k}) is non-zero in a commutator expansion"
                )));
            }
        }
        let conditions = check_conditions_probed(&probe, i)?;
        max_degree_read = max_degree_read.max(probe.max_degree_read());
        components.push(ComponentReport { component: i, series: s, conditions });
    }
    let obstructed = components.iter().any(|c| c.witnesses().next().is_some());
    Ok(ObstructionReport {
        name: code.name().to_string(),
        q,
        degree,
        degree_bound: bound,
        components,
        verdict: if obstructed { Verdict::Obstructed } else { Verdict::NoObstructionFound },
        max_degree_read,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestFailure {
    pub trial: usize,
    pub word: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestSummary {
    pub trials: usize,
    pub failures: Vec<SelftestFailure>,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Expansion degree used by [`relator_conditions_selftest`].
pub const SELFTEST_DEGREE: usize = 5;

/// Checks one element of the normal closure of the S-relators: conditions
/// (I)–(V) at bound 4, and no square-free monomial up to the expansion
/// degree (membership of `E(s) − 1` in the ideal of monomials with a
/// repeated variable).
pub fn check_relator_word(s: &Word<Meridian>, m: usize) -> Result<Option<String>, ObstructionError> {
    let series = expand_word(s, m, SELFTEST_DEGREE)?;
    let statuses = check_conditions(&series, MIN_DEGREE_BOUND, 1)?;
    if let Some(w) = statuses.iter().flat_map(|c| &c.witnesses).next() {
        return Ok(Some(format!("condition ({}) fails: {w}", w.condition)));
    }
    for j in 1..=m.min(SELFTEST_DEGREE) {
        for mono in injective_sequences(m, j) {
            if series.coefficient(&mono)? {
                return Ok(Some(format!("square-free monomial {} has coefficient 1", Monomial::new(mono))));
            }
        }
    }
    Ok(None)
}

/// Samples `trials` random products `Π g_j⁻¹ s_j^{±1} g_j` of conjugated
/// S-relators (up to three factors, words of length ≤ 6) and verifies that
/// each expansion satisfies every condition.
pub fn relator_conditions_selftest<R: Rng + ?Sized>(
    trials: usize,
    m: usize,
    rng: &mut R,
    exec: Exec,
) -> Result<SelftestSummary, ObstructionError> {
    if m < 2 {
        return Err(ObstructionError::Internal("relator self-test needs m ≥ 2".into()));
    }
    let words: Vec<Word<Meridian>> = (0..trials)
        .map(|_| {
            let factors = rng.random_range(0..=3);
            sample_s_normal_closure(rng, m, factors, 6)
        })
        .collect();
    let verdicts = exec.map(&words, |w| check_relator_word(w, m));
    let mut failures = Vec::new();
    for (trial, (w, v)) in words.iter().zip(verdicts).enumerate() {
        if let Some(reason) = v? {
            failures.push(SelftestFailure { trial, word: w.to_string(), reason });
        }
    }
    Ok(SelftestSummary { trials, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::Layout;

    #[test]
    fn identity_series_satisfies_everything() {
        let one = TruncatedSeries::one(3, 4).unwrap();
        let st = check_conditions(&one, 4, 1).unwrap();
        assert!(st.iter().all(ConditionStatus::holds));
    }

    #[test]
    fn hopf_series_violates_v() {
        let s = expand_word(&"a1^-1 a2^-1 a1 a2".parse().unwrap(), 2, 4).unwrap();
        let st = check_conditions(&s, 4, 1).unwrap();
        let v = &st[ConditionId::V as usize];
        assert!(!v.holds());
        assert_eq!(v.witnesses[0].monomials[0].to_string(), "X1X2");
    }

    #[test]
    fn welded_word_violates_ii() {
        let s = expand_word(&"a2^-1 a1 a2^-1 a1^-1 a2 a1 a2 a1^-1".parse().unwrap(), 2, 4).unwrap();
        let st = check_conditions(&s, 4, 2).unwrap();
        let ii = &st[ConditionId::II as usize];
        assert!(!ii.holds());
        let w = &ii.witnesses[0];
        let pairs: Vec<(String, bool)> =
            w.monomials.iter().map(ToString::to_string).zip(w.values.iter().copied()).collect();
        assert_eq!(pairs, vec![("X1X2X2".to_string(), true), ("X2X1X1".to_string(), false)]);
    }

    #[test]
    fn bound_errors() {
        let one = TruncatedSeries::one(2, 3).unwrap();
        assert_eq!(check_conditions(&one, 3, 1), Err(ObstructionError::BoundTooLow(3)));
        assert!(matches!(check_conditions(&one, 4, 1), Err(ObstructionError::SeriesTooShort { .. })));
        let lay = Layout::new(2, 6).unwrap();
        let s = TruncatedSeries::one_in(&lay);
        let probe = CoefficientProbe::new(&s, 4).unwrap();
        assert!(matches!(probe.get(&[1, 1, 1, 1, 1]), Err(ObstructionError::UntrustedRead { .. })));
    }

    #[test]
    fn each_condition_can_fire() {
        let lay = Layout::new(3, 4).unwrap();
        let single = |vars: &[usize]| {
            let mut s = TruncatedSeries::one_in(&lay);
            s.toggle(vars).unwrap();
            let st = check_conditions(&s, 4, 1).unwrap();
            ConditionId::ALL.into_iter().filter(|&id| !st[id as usize].holds()).collect::<Vec<_>>()
        };
        use ConditionId::*;
        assert_eq!(single(&[2, 2, 2]), vec![I]);
        assert_eq!(single(&[1, 2, 2]), vec![II]);
        assert_eq!(single(&[1, 2, 1, 2]), vec![III]);
        assert_eq!(single(&[1, 1, 2, 2]), vec![III]);
        assert_eq!(single(&[1, 1, 1, 2]), vec![III]);
        assert_eq!(single(&[1, 2, 1, 3]), vec![IV]);
        assert_eq!(single(&[1, 2, 2, 3]), Vec::<ConditionId>::new());
        assert_eq!(single(&[3, 1, 2]), vec![V]);
    }

    #[test]
    fn injective_counts() {
        assert_eq!(injective_sequences(4, 3).len(), 24);
        assert_eq!(injective_sequences(3, 4).len(), 0);
        assert_eq!(injective_sequences(3, 1), vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn level_precondition() {
        let t = UnderpassCode::trivial(2);
        assert_eq!(check_link(&t, 4, None), Err(ObstructionError::LevelTooLow(4)));
        assert_eq!(check_link(&t, 5, Some(3)), Err(ObstructionError::BoundTooLow(3)));
        assert_eq!(default_degree(5, 2), 4);
        assert_eq!(default_degree(7, 5), 5);
        assert_eq!(default_degree(6, 9), 5);
    }

    #[test]
    fn simplest_relator_passes() {
        use crate::freegroup::{make_s_relator, Letter};
        use crate::underpass::Sign;
        let s = make_s_relator(
            Letter::new(Meridian(1), Sign::Plus),
            Letter::new(Meridian(2), Sign::Plus),
            &Word::identity(),
        );
        assert_eq!(check_relator_word(&s, 2).unwrap(), None);
        assert_eq!(check_relator_word(&Word::identity(), 2).unwrap(), None);
    }
}
