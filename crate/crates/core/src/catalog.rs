//! Built-in example links.
//!
//! Parameterised families are addressed as `trivial(m)` and
//! `milnor_chain(m)`. `milnor_chain(m)` is a welded analogue of Milnor's
//! link `L_m`, not a planar diagram: components `1..m-1` never pass under
//! anything, and component `m` passes under the base arcs of the others in
//! the order spelled by the right-normed commutator
//! `[α_1, [α_2, … [α_{m-2}, α_{m-1}]…]]`. Its `m`-th longitude therefore maps
//! to that commutator at every level, all pairwise linking numbers vanish,
//! and `L_3` is a welded Borromean-type link.

use std::fmt;

use thiserror::Error;

use crate::freegroup::{right_normed, Meridian, Word};
use crate::obstruction::{ConditionId, Verdict};
use crate::underpass::{UnderpassCode, UnderpassEntry};
use crate::Sign::{Minus, Plus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}; run `fourmove catalog list`")]
    Unknown(String),
    #[error("{family}({m}) needs {family} parameter ≥ {min}")]
    Parameter { family: &'static str, m: usize, min: usize },
}

/// What the checker is expected to report at level `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub q: usize,
    pub verdict: Verdict,
    /// Violated conditions, in order.
    pub violated: Vec<ConditionId>,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at q = {}", self.verdict, self.q)?;
        if !self.violated.is_empty() {
            let ids: Vec<&str> = self.violated.iter().map(|c| c.label()).collect();
            let noun = if ids.len() == 1 { "condition" } else { "conditions" };
            write!(f, " ({noun} {})", ids.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub code: UnderpassCode,
    pub provenance: String,
    pub expected: Expectation,
    /// Hand-recorded `lk_{i/j}` with writhes on the diagonal.
    pub linking: Vec<Vec<i64>>,
}

const FIXED: [&str; 5] = ["hopf", "trefoil", "figure_eight", "figure4_welded", "borromean_welded"];

/// Names of the listed entries. `trivial(m)` and `milnor_chain(m)` accept
/// other parameters through [`get`] as well.
pub fn list() -> Vec<String> {
    let mut names: Vec<String> = (1..=4).map(|m| format!("trivial({m})")).collect();
    names.extend(FIXED.iter().map(|s| s.to_string()));
    names.extend((3..=6).map(|m| format!("milnor_chain({m})")));
    names
}

pub fn get(name: &str) -> Result<CatalogEntry, CatalogError> {
    let name = name.trim();
    if let Some((family, m)) = parse_family(name) {
        return match family {
            "trivial" => trivial(m),
            "milnor_chain" => milnor_chain(m),
            _ => Err(CatalogError::Unknown(name.to_string())),
        };
    }
    match name {
        "hopf" => Ok(hopf()),
        "trefoil" => Ok(trefoil()),
        "figure_eight" => Ok(figure_eight()),
        "figure4_welded" => Ok(figure4_welded()),
        "borromean_welded" => {
            let mut e = milnor_chain(3)?;
            e.name = "borromean_welded".into();
            e.code = e.code.with_name("borromean_welded");
            e.provenance = "alias of milnor_chain(3)".into();
            Ok(e)
        }
        _ => Err(CatalogError::Unknown(name.to_string())),
    }
}

fn parse_family(name: &str) -> Option<(&str, usize)> {
    let (family, rest) = name.split_once('(')?;
    let m = rest.strip_suffix(')')?.trim().parse().ok()?;
    Some((family.trim(), m))
}

fn build(name: &str, components: Vec<Vec<UnderpassEntry>>) -> UnderpassCode {
    UnderpassCode::new(name, components).expect("catalog codes are valid")
}

fn zeros(m: usize) -> Vec<Vec<i64>> {
    vec![vec![0; m]; m]
}

pub fn trivial(m: usize) -> Result<CatalogEntry, CatalogError> {
    if m < 1 {
        return Err(CatalogError::Parameter { family: "trivial", m, min: 1 });
    }
    let name = format!("trivial({m})");
    Ok(CatalogEntry {
        code: UnderpassCode::trivial(m).with_name(name.clone()),
        name,
        provenance: "trivial link: no crossings".into(),
        expected: Expectation { q: 5, verdict: Verdict::NoObstructionFound, violated: vec![] },
        linking: zeros(m),
    })
}

pub fn hopf() -> CatalogEntry {
    CatalogEntry {
        name: "hopf".into(),
        code: build(
            "hopf",
            vec![vec![UnderpassEntry::new(2, 1, Plus)], vec![UnderpassEntry::new(1, 1, Plus)]],
        ),
        provenance: "positive Hopf link, standard 2-crossing diagram".into(),
        expected: Expectation {
            q: 5,
            verdict: Verdict::Obstructed,
            violated: vec![ConditionId::II, ConditionId::III, ConditionId::V],
        },
        linking: vec![vec![0, 1], vec![1, 0]],
    }
}

/// Right-handed trefoil, Gauss code `O1+ U2+ O3+ U1+ O2+ U3+`.
pub fn trefoil() -> CatalogEntry {
    CatalogEntry {
        name: "trefoil".into(),
        code: build(
            "trefoil",
            vec![vec![
                UnderpassEntry::new(1, 3, Plus),
                UnderpassEntry::new(1, 1, Plus),
                UnderpassEntry::new(1, 2, Plus),
            ]],
        ),
        provenance: "right-handed trefoil 3_1, standard alternating diagram".into(),
        expected: Expectation { q: 5, verdict: Verdict::NoObstructionFound, violated: vec![] },
        linking: vec![vec![3]],
    }
}

/// Figure-eight knot, Gauss code `O1+ U4- O3- U1+ O2+ U3- O4- U2+`.
pub fn figure_eight() -> CatalogEntry {
    CatalogEntry {
        name: "figure_eight".into(),
        code: build(
            "figure_eight",
            vec![vec![
                UnderpassEntry::new(1, 4, Minus),
                UnderpassEntry::new(1, 1, Plus),
                UnderpassEntry::new(1, 2, Minus),
                UnderpassEntry::new(1, 3, Plus),
            ]],
        ),
        provenance: "figure-eight knot 4_1, standard alternating diagram".into(),
        expected: Expectation { q: 5, verdict: Verdict::NoObstructionFound, violated: vec![] },
        linking: vec![vec![0]],
    }
}

/// The welded link with longitudes `λ_1 = x_21⁻¹ x_21` and
/// `λ_2 = x_11 x_12⁻¹`.
pub fn figure4_welded() -> CatalogEntry {
    CatalogEntry {
        name: "figure4_welded".into(),
        code: build(
            "figure4_welded",
            vec![
                vec![UnderpassEntry::new(2, 1, Minus), UnderpassEntry::new(2, 1, Plus)],
                vec![UnderpassEntry::new(1, 1, Plus), UnderpassEntry::new(1, 2, Minus)],
            ],
        ),
        provenance: "2-component welded link with vanishing linking numbers".into(),
        expected: Expectation {
            q: 5,
            verdict: Verdict::Obstructed,
            violated: vec![ConditionId::II, ConditionId::III],
        },
        linking: zeros(2),
    }
}

/// The `m`-th longitude word of `milnor_chain(m)`, over meridians.
pub fn milnor_chain_longitude(m: usize) -> Word<Meridian> {
    let gens: Vec<Word<Meridian>> = (1..m).map(|k| Word::gen(Meridian(k))).collect();
    right_normed(&gens)
}

pub fn milnor_chain(m: usize) -> Result<CatalogEntry, CatalogError> {
    if m < 3 {
        return Err(CatalogError::Parameter { family: "milnor_chain", m, min: 3 });
    }
    let name = format!("milnor_chain({m})");
    let last: Vec<UnderpassEntry> = milnor_chain_longitude(m)
        .letters()
        .map(|l| UnderpassEntry::new(l.gen.index(), 1, l.sign))
        .collect();
    let mut components = vec![Vec::new(); m - 1];
    components.push(last);
    Ok(CatalogEntry {
        code: build(&name, components),
        name,
        provenance: format!(
            "welded analogue of Milnor's link L_{m}: the last longitude is an iterated commutator of the other meridians"
        ),
        // degree-4 terms of [α_3, [α_1, α_2]] also break (IV)
        expected: Expectation {
            q: m + 2,
            verdict: Verdict::Obstructed,
            violated: if m == 3 { vec![ConditionId::IV, ConditionId::V] } else { vec![ConditionId::V] },
        },
        linking: zeros(m),
    })
}
