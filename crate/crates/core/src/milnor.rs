//! Longitude words, Milnor's maps `η_q : F(X) → F(A)`, and the Magnus
//! expansions of the longitude commutators `[α_i, η_q(λ_i)]`.
//!
//! `η_1` sends every arc of component `i` to `α_i`; `η_{q+1}` fixes the base
//! arc `x_{i1} ↦ α_i` and sends `x_{i,j+1} ↦ η_q(v_ij)⁻¹ α_i η_q(v_ij)`,
//! where `v_ij = u_{i1}^{ε_{i1}}⋯u_{ij}^{ε_{ij}}` is the partial longitude.
//!
//! Two evaluation modes share that recursion. Word mode builds the images
//! exactly in `F(A)`; their length grows exponentially in `q`, so it serves
//! as the oracle for small inputs. Series mode pushes the Magnus expansion
//! through the recursion instead, keeping each image and its inverse as
//! truncated series, which costs a fixed number of series products per
//! underpass per level.

use std::sync::Arc;

use thiserror::Error;

use crate::exec::Exec;
use crate::freegroup::{Meridian, Word};
use crate::magnus::{Layout, MagnusError, TruncatedSeries};
use crate::underpass::{ArcRef, Sign, UnderpassCode};

pub const DEFAULT_MAX_LEVEL: usize = 16;
pub const DEFAULT_WORD_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("level q must be at least 1")]
    LevelZero,
    #[error("level q = {q} exceeds the configured maximum {max}")]
    LevelTooHigh { q: usize, max: usize },
    #[error("image of x{}_{} at level {level} has {len} letters, over the budget of {budget}", .arc.component, .arc.arc)]
    WordBudget { arc: ArcRef, level: usize, len: usize, budget: usize },
    #[error("component {i} out of range 1..={m}")]
    Component { i: usize, m: usize },
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Magnus(#[from] MagnusError),
}

#[derive(Debug, Clone, Copy)]
pub struct MilnorConfig {
    /// Largest accepted level `q`.
    pub max_level: usize,
    /// Largest word-mode image, in letters.
    pub word_budget: usize,
    pub exec: Exec,
}

impl Default for MilnorConfig {
    fn default() -> Self {
        MilnorConfig {
            max_level: DEFAULT_MAX_LEVEL,
            word_budget: DEFAULT_WORD_BUDGET,
            exec: Exec::default(),
        }
    }
}

impl MilnorConfig {
    fn check_level(&self, q: usize) -> Result<(), MilnorError> {
        if q == 0 {
            return Err(MilnorError::LevelZero);
        }
        if q > self.max_level {
            return Err(MilnorError::LevelTooHigh { q, max: self.max_level });
        }
        Ok(())
    }
}

fn check_component(code: &UnderpassCode, i: usize) -> Result<(), MilnorError> {
    if (1..=code.m()).contains(&i) {
        Ok(())
    } else {
        Err(MilnorError::Component { i, m: code.m() })
    }
}

/// Partial longitudes `v_ij` over the arc alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongitudeData {
    partials: Vec<Vec<Word<ArcRef>>>,
}

impl LongitudeData {
    /// `v_ij`, `1 ≤ j ≤ r_i`.
    pub fn partial(&self, i: usize, j: usize) -> &Word<ArcRef> {
        &self.partials[i - 1][j - 1]
    }

    pub fn partials(&self, i: usize) -> &[Word<ArcRef>] {
        &self.partials[i - 1]
    }

    /// `λ_i = v_{i r_i}`; the identity for a component without underpasses.
    pub fn longitude(&self, i: usize) -> Word<ArcRef> {
        self.partials[i - 1].last().cloned().unwrap_or_default()
    }

    pub fn m(&self) -> usize {
        self.partials.len()
    }
}

pub fn longitudes(code: &UnderpassCode) -> LongitudeData {
    let partials = code
        .components()
        .iter()
        .map(|comp| {
            let mut acc = Word::identity();
            comp.iter()
                .map(|e| {
                    acc.mul_assign(&Word::gen_pow(e.over, e.sign.value()));
                    acc.clone()
                })
                .collect()
        })
        .collect();
    LongitudeData { partials }
}

/// Images of every arc at one level `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaTable<T> {
    level: usize,
    images: Vec<Vec<T>>,
}

impl<T> EtaTable<T> {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn image(&self, arc: ArcRef) -> &T {
        &self.images[arc.component - 1][arc.arc - 1]
    }

    pub fn component_images(&self, i: usize) -> &[T] {
        &self.images[i - 1]
    }
}

pub type EtaWordTable = EtaTable<Word<Meridian>>;

impl EtaWordTable {
    /// `η_q(w)` for a word over the arcs.
    pub fn apply(&self, w: &Word<ArcRef>) -> Word<Meridian> {
        w.apply_hom_ref(|a| Some(std::borrow::Cow::Borrowed(self.image(a))))
            .expect("tables cover every arc of a validated code")
    }
}

/// `η_q` in word mode.
pub fn eta_word(code: &UnderpassCode, q: usize) -> Result<EtaWordTable, MilnorError> {
    eta_word_with(code, q, &MilnorConfig::default())
}

pub fn eta_word_with(
    code: &UnderpassCode,
    q: usize,
    cfg: &MilnorConfig,
) -> Result<EtaWordTable, MilnorError> {
    cfg.check_level(q)?;
    let mut table = EtaTable {
        level: 1,
        images: (1..=code.m())
            .map(|i| vec![Word::gen(Meridian(i)); code.arc_count(i)])
            .collect(),
    };
    while table.level < q {
        let level = table.level + 1;
        let images = code
            .components()
            .iter()
            .enumerate()
            .map(|(ci, comp)| {
                let alpha = Word::gen(Meridian(ci + 1));
                let mut row = Vec::with_capacity(comp.len().max(1));
                row.push(alpha.clone());
                let mut prefix = Word::identity();
                for (j, e) in comp.iter().enumerate().take(comp.len().saturating_sub(1)) {
                    prefix.mul_assign(&table.image(e.over).pow(e.sign.value()));
                    let img = alpha.conjugate(&prefix);
                    if img.len() > cfg.word_budget {
                        return Err(MilnorError::WordBudget {
                            arc: ArcRef::new(ci + 1, j + 2),
                            level,
                            len: img.len(),
                            budget: cfg.word_budget,
                        });
                    }
                    row.push(img);
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>, _>>()?;
        table = EtaTable { level, images };
    }
    Ok(table)
}

/// `[α_i, η_q(λ_i)]` as a word.
pub fn commutator_word(code: &UnderpassCode, i: usize, q: usize) -> Result<Word<Meridian>, MilnorError> {
    check_component(code, i)?;
    let table = eta_word(code, q)?;
    let lambda = table.apply(&longitudes(code).longitude(i));
    Ok(Word::commutator(&Word::gen(Meridian(i)), &lambda))
}

/// A unit series together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSeries {
    pub value: TruncatedSeries,
    pub inverse: TruncatedSeries,
}

impl UnitSeries {
    fn pow_sign(&self, sign: Sign) -> &TruncatedSeries {
        match sign {
            Sign::Plus => &self.value,
            Sign::Minus => &self.inverse,
        }
    }
}

pub type EtaSeriesTable = EtaTable<UnitSeries>;

impl EtaSeriesTable {
    /// Expansion of `η_q` applied to the full longitude of component `i`,
    /// with its inverse.
    pub fn longitude(&self, code: &UnderpassCode, i: usize, exec: Exec) -> UnitSeries {
        let layout = self.images[0][0].value.layout();
        let mut value = TruncatedSeries::one_in(layout);
        let mut inverse = TruncatedSeries::one_in(layout);
        for e in code.underpasses(i) {
            let img = self.image(e.over);
            value = value.mul_unchecked(img.pow_sign(e.sign), exec);
            inverse = img.pow_sign(-e.sign).mul_unchecked(&inverse, exec);
        }
        UnitSeries { value, inverse }
    }
}

/// `η_q` in series mode: every arc image expanded at degree `d`.
///
/// The recursion is iterated until level `q` or until a level reproduces the
/// previous table exactly, after which every later level is identical.
pub fn eta_series(
    code: &UnderpassCode,
    q: usize,
    d: usize,
) -> Result<EtaSeriesTable, MilnorError> {
    eta_series_with(code, q, d, &MilnorConfig::default())
}

pub fn eta_series_with(
    code: &UnderpassCode,
    q: usize,
    d: usize,
    cfg: &MilnorConfig,
) -> Result<EtaSeriesTable, MilnorError> {
    cfg.check_level(q)?;
    let layout = Layout::new(code.m(), d)?;
    let exec = cfg.exec;
    let meridians: Vec<UnitSeries> = (1..=code.m())
        .map(|i| {
            let value = TruncatedSeries::meridian_in(&layout, i)?;
            let inverse = value.inverse_with(Exec::Sequential)?;
            Ok(UnitSeries { value, inverse })
        })
        .collect::<Result<_, MagnusError>>()?;
    let mut table = EtaTable {
        level: 1,
        images: (1..=code.m()).map(|i| vec![meridians[i - 1].clone(); code.arc_count(i)]).collect(),
    };
    while table.level < q {
        let next = eta_series_step(code, &table, &layout, &meridians, exec);
        if next == table.images {
            // fixed point: every later level is the same table
            table.level = q;
            break;
        }
        table = EtaTable { level: table.level + 1, images: next };
    }
    Ok(table)
}

fn eta_series_step(
    code: &UnderpassCode,
    table: &EtaSeriesTable,
    layout: &Arc<Layout>,
    meridians: &[UnitSeries],
    exec: Exec,
) -> Vec<Vec<UnitSeries>> {
    // Prefix products P = E(η_q(v_ij)) and P⁻¹ per component; the chain is
    // sequential within a component, independent across components.
    let prefixes: Vec<Vec<UnitSeries>> = exec.map(code.components(), |comp| {
        let mut value = TruncatedSeries::one_in(layout);
        let mut inverse = TruncatedSeries::one_in(layout);
        comp.iter()
            .take(comp.len().saturating_sub(1))
            .map(|e| {
                let img = table.image(e.over);
                value = value.mul_unchecked(img.pow_sign(e.sign), exec);
                inverse = img.pow_sign(-e.sign).mul_unchecked(&inverse, exec);
                UnitSeries { value: value.clone(), inverse: inverse.clone() }
            })
            .collect()
    });
    // New image of x_{i,j+1}: P⁻¹ (1 + X_i) P = 1 + P⁻¹ X_i P, and its
    // inverse 1 + P⁻¹ (X_i + X_i² + …) P.
    let jobs: Vec<(usize, usize)> = prefixes
        .iter()
        .enumerate()
        .flat_map(|(ci, row)| (0..row.len()).map(move |j| (ci, j)))
        .collect();
    let conjugated = exec.map(&jobs, |&(ci, j)| {
        let i = ci + 1;
        let p = &prefixes[ci][j];
        let mut xp = p.value.left_mul_meridian(i, Sign::Plus).expect("component index in range");
        xp = xp.add(&p.value).expect("same layout");
        let mut value = p.inverse.mul_unchecked(&xp, exec);
        let mut xinv_p = p.value.left_mul_meridian(i, Sign::Minus).expect("component index in range");
        xinv_p = xinv_p.add(&p.value).expect("same layout");
        let mut inverse = p.inverse.mul_unchecked(&xinv_p, exec);
        value.toggle(&[]).expect("constant term");
        inverse.toggle(&[]).expect("constant term");
        UnitSeries { value, inverse }
    });
    let mut conjugated = conjugated.into_iter();
    code.components()
        .iter()
        .enumerate()
        .map(|(ci, comp)| {
            let mut row = Vec::with_capacity(comp.len().max(1));
            row.push(meridians[ci].clone());
            row.extend(conjugated.by_ref().take(comp.len().saturating_sub(1)));
            row
        })
        .collect()
}

/// `E([α_i, η_q(λ_i)])` at degree `d`, for every component.
pub fn commutator_series_all(
    code: &UnderpassCode,
    q: usize,
    d: usize,
    cfg: &MilnorConfig,
) -> Result<Vec<TruncatedSeries>, MilnorError> {
    let table = eta_series_with(code, q, d, cfg)?;
    let exec = cfg.exec;
    let indices: Vec<usize> = (1..=code.m()).collect();
    Ok(exec.map(&indices, |&i| commutator_from_table(code, &table, i, exec)))
}

fn commutator_from_table(
    code: &UnderpassCode,
    table: &EtaSeriesTable,
    i: usize,
    exec: Exec,
) -> TruncatedSeries {
    let lambda = table.longitude(code, i, exec);
    // α⁻¹ · (λ⁻¹ · (α · λ))
    let al = lambda.value.left_mul_meridian(i, Sign::Plus).expect("component index in range");
    let lal = lambda.inverse.mul_unchecked(&al, exec);
    lal.left_mul_meridian(i, Sign::Minus).expect("component index in range")
}

/// `E([α_i, η_q(λ_i)])` at degree `d`.
pub fn commutator_series(
    code: &UnderpassCode,
    i: usize,
    q: usize,
    d: usize,
) -> Result<TruncatedSeries, MilnorError> {
    check_component(code, i)?;
    let cfg = MilnorConfig::default();
    let table = eta_series_with(code, q, d, &cfg)?;
    Ok(commutator_from_table(code, &table, i, cfg.exec))
}

/// `E(α_i^{−w_i} η_q(λ_i))` at degree `d`, `w_i` the writhe of component `i`.
pub fn reduced_longitude_series(
    code: &UnderpassCode,
    i: usize,
    q: usize,
    d: usize,
) -> Result<TruncatedSeries, MilnorError> {
    check_component(code, i)?;
    let cfg = MilnorConfig::default();
    let table = eta_series_with(code, q, d, &cfg)?;
    let mut s = table.longitude(code, i, cfg.exec).value;
    let w = code.writhe(i).expect("index checked");
    let sign = if w > 0 { Sign::Minus } else { Sign::Plus };
    for _ in 0..w.unsigned_abs() {
        s = s.left_mul_meridian(i, sign)?;
    }
    Ok(s)
}

/// Diagram-level Milnor invariant `μ(k_1 … k_j i)` mod 2: the coefficient of
/// `X_{k_1}⋯X_{k_j}` in `E(α_i^{−w_i} η_q(λ_i))`. No reduction modulo the
/// indeterminacy of lower-order invariants is attempted.
pub fn mu_mod2(code: &UnderpassCode, seq: &[usize], i: usize, q: usize) -> Result<bool, MilnorError> {
    check_component(code, i)?;
    if seq.is_empty() {
        return Err(MilnorError::Precondition("index sequence must be non-empty".into()));
    }
    if seq.len() + 1 > q {
        return Err(MilnorError::Precondition(format!(
            "sequence of length {} needs q ≥ {}, got q = {q}",
            seq.len(),
            seq.len() + 1
        )));
    }
    if let Some(&k) = seq.iter().find(|&&k| !(1..=code.m()).contains(&k)) {
        return Err(MilnorError::Component { i: k, m: code.m() });
    }
    let d = seq.len().max(4);
    let s = reduced_longitude_series(code, i, q, d)?;
    Ok(s.coefficient(seq)?)
}

/// If `w = c⁻¹ g c` in reduced form, returns `c`.
pub fn conjugator_of<G: crate::freegroup::Generator>(w: &Word<G>, g: G) -> Option<Word<G>> {
    let letters: Vec<_> = w.letters().collect();
    if letters.len() % 2 == 0 {
        return None;
    }
    let mid = letters.len() / 2;
    let centre = letters[mid];
    if centre.gen != g || centre.sign != Sign::Plus {
        return None;
    }
    let left = &letters[..mid];
    let right = &letters[mid + 1..];
    let mirrored = left.iter().rev().zip(right).all(|(l, r)| l.inverse() == *r);
    mirrored.then(|| right.iter().copied().collect())
}
