//! Link diagrams as underpass codes.
//!
//! Component `i` is a cyclic list of under-crossing events read along the
//! orientation from the starting point. Arc `x_{i1}` contains the starting
//! point; the `j`-th entry separates `x_{ij}` from `x_{i,j+1}`, and the last
//! entry separates `x_{ir_i}` from `x_{i1}`. A component with no entries is a
//! single arc with an empty longitude.
//!
//! Any underpass code is realizable as a welded diagram (unwanted
//! intersections become virtual crossings), so no planarity check is done.

mod gauss;
mod json;

use std::fmt;
use std::ops::Neg;

use thiserror::Error;

use crate::freegroup::Generator;

pub use gauss::import_gauss;
pub use json::{parse_link_file, to_json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Plus
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Arc `x_{component,arc}`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcRef {
    pub component: usize,
    pub arc: usize,
}

impl ArcRef {
    pub fn new(component: usize, arc: usize) -> Self {
        ArcRef { component, arc }
    }
}

impl Generator for ArcRef {}

/// One under-crossing: the over-arc `u_{ij}` and the crossing sign `ε_{ij}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnderpassEntry {
    pub over: ArcRef,
    pub sign: Sign,
}

impl UnderpassEntry {
    pub fn new(component: usize, arc: usize, sign: Sign) -> Self {
        UnderpassEntry { over: ArcRef::new(component, arc), sign }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{}: {reason}", location(*.component, *.position))]
    Invalid {
        /// 1-based component, 0 when the error is not tied to one.
        component: usize,
        /// 1-based entry position within the component.
        position: Option<usize>,
        reason: String,
    },
    #[error("component index {index} out of range 1..={m}")]
    Index { index: usize, m: usize },
}

fn location(component: usize, position: Option<usize>) -> String {
    match (component, position) {
        (0, _) => "link".to_string(),
        (c, None) => format!("component {c}"),
        (c, Some(p)) => format!("component {c}, entry {p}"),
    }
}

impl LinkError {
    pub fn is_syntax(&self) -> bool {
        matches!(self, LinkError::Syntax(_))
    }
}

/// A validated underpass code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnderpassCode {
    name: String,
    components: Vec<Vec<UnderpassEntry>>,
}

impl UnderpassCode {
    pub fn new(
        name: impl Into<String>,
        components: Vec<Vec<UnderpassEntry>>,
    ) -> Result<Self, LinkError> {
        if components.is_empty() {
            return Err(LinkError::Invalid {
                component: 0,
                position: None,
                reason: "a link needs at least one component".into(),
            });
        }
        let counts: Vec<usize> = components.iter().map(|c| c.len().max(1)).collect();
        for (ci, comp) in components.iter().enumerate() {
            for (pi, e) in comp.iter().enumerate() {
                let ArcRef { component: k, arc: l } = e.over;
                let ok = (1..=counts.len()).contains(&k) && (1..=counts[k - 1]).contains(&l);
                if !ok {
                    let reason = if (1..=counts.len()).contains(&k) {
                        format!(
                            "arc reference ({k}:{l}) out of range, component {k} has {} arc(s)",
                            counts[k - 1]
                        )
                    } else {
                        format!("arc reference ({k}:{l}) names a missing component")
                    };
                    return Err(LinkError::Invalid {
                        component: ci + 1,
                        position: Some(pi + 1),
                        reason,
                    });
                }
            }
        }
        Ok(UnderpassCode { name: name.into(), components })
    }

    /// The `m`-component link with no crossings.
    pub fn trivial(m: usize) -> Self {
        assert!(m >= 1);
        UnderpassCode { name: format!("trivial({m})"), components: vec![Vec::new(); m] }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Number of components.
    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<UnderpassEntry>] {
        &self.components
    }

    /// Underpass list of component `i` (1-based). Panics on a bad index.
    pub fn underpasses(&self, i: usize) -> &[UnderpassEntry] {
        &self.components[i - 1]
    }

    /// `r_i`, the underpass count of component `i`.
    pub fn underpass_count(&self, i: usize) -> usize {
        self.components[i - 1].len()
    }

    /// Arc count of component `i`: `max(r_i, 1)`.
    pub fn arc_count(&self, i: usize) -> usize {
        self.components[i - 1].len().max(1)
    }

    pub fn total_underpasses(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcRef> + '_ {
        (1..=self.m()).flat_map(move |i| (1..=self.arc_count(i)).map(move |j| ArcRef::new(i, j)))
    }

    fn check_index(&self, i: usize) -> Result<(), LinkError> {
        if (1..=self.m()).contains(&i) {
            Ok(())
        } else {
            Err(LinkError::Index { index: i, m: self.m() })
        }
    }

    /// `lk_{i/j}`: signed count of crossings where component `i` passes over
    /// component `j`, read off component `j`'s underpass list.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64, LinkError> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.components[j - 1]
            .iter()
            .filter(|e| e.over.component == i)
            .map(|e| e.sign.value())
            .sum())
    }

    /// Writhe of component `i`: signed count of its self-crossings.
    pub fn writhe(&self, i: usize) -> Result<i64, LinkError> {
        self.linking_number(i, i)
    }

    /// All `lk_{i/j}` at once, writhes on the diagonal. Scans every list a
    /// single time, independently of [`Self::linking_number`].
    pub fn linking_matrix(&self) -> LinkingMatrix {
        let m = self.m();
        let mut entries = vec![vec![0i64; m]; m];
        for (j, comp) in self.components.iter().enumerate() {
            for e in comp {
                entries[e.over.component - 1][j] += e.sign.value();
            }
        }
        LinkingMatrix { entries }
    }

    /// Reindexes components: new component `k` is old component `perm[k-1]`.
    /// `perm` is a 1-based permutation of `1..=m`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self, LinkError> {
        let m = self.m();
        let mut inverse = vec![0usize; m + 1];
        let mut seen = vec![false; m + 1];
        if perm.len() != m {
            return Err(LinkError::Invalid {
                component: 0,
                position: None,
                reason: format!("permutation has length {}, expected {m}", perm.len()),
            });
        }
        for (k, &old) in perm.iter().enumerate() {
            if !(1..=m).contains(&old) || seen[old] {
                return Err(LinkError::Invalid {
                    component: 0,
                    position: None,
                    reason: "not a permutation of the components".into(),
                });
            }
            seen[old] = true;
            inverse[old] = k + 1;
        }
        let components = perm
            .iter()
            .map(|&old| {
                self.components[old - 1]
                    .iter()
                    .map(|e| UnderpassEntry {
                        over: ArcRef::new(inverse[e.over.component], e.over.arc),
                        sign: e.sign,
                    })
                    .collect()
            })
            .collect();
        UnderpassCode::new(self.name.clone(), components)
    }

    /// Deletes component `k` together with every crossing it passes over.
    /// Arcs of the remaining components that were separated only by such
    /// crossings merge.
    pub fn delete_component(&self, k: usize) -> Result<Self, LinkError> {
        self.check_index(k)?;
        if self.m() == 1 {
            return Err(LinkError::Invalid {
                component: k,
                position: None,
                reason: "cannot delete the only component".into(),
            });
        }
        // surviving[i][p]: entry p of component i survives
        let surviving: Vec<Vec<bool>> = self
            .components
            .iter()
            .map(|c| c.iter().map(|e| e.over.component != k).collect())
            .collect();
        let new_arc = |i: usize, arc: usize| -> usize {
            let kept = &surviving[i - 1];
            let total = kept.iter().filter(|&&s| s).count();
            let before = kept[..arc - 1].iter().filter(|&&s| s).count();
            before % total.max(1) + 1
        };
        let renumber = |c: usize| if c > k { c - 1 } else { c };
        let components = self
            .components
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != k)
            .map(|(i, comp)| {
                comp.iter()
                    .zip(&surviving[i])
                    .filter(|&(_, &s)| s)
                    .map(|(e, _)| UnderpassEntry {
                        over: ArcRef::new(
                            renumber(e.over.component),
                            new_arc(e.over.component, e.over.arc),
                        ),
                        sign: e.sign,
                    })
                    .collect()
            })
            .collect();
        UnderpassCode::new(self.name.clone(), components)
    }
}

/// `lk_{i/j}` at row `i`, column `j` (1-based accessors); writhes on the
/// diagonal. Not symmetric in general for welded links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingMatrix {
    entries: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }
}

impl fmt::Display for LinkingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus, Plus};

    fn figure4() -> UnderpassCode {
        UnderpassCode::new(
            "figure4_welded",
            vec![
                vec![UnderpassEntry::new(2, 1, Minus), UnderpassEntry::new(2, 1, Plus)],
                vec![UnderpassEntry::new(1, 1, Plus), UnderpassEntry::new(1, 2, Minus)],
            ],
        )
        .unwrap()
    }

    fn hopf() -> UnderpassCode {
        UnderpassCode::new(
            "hopf",
            vec![vec![UnderpassEntry::new(2, 1, Plus)], vec![UnderpassEntry::new(1, 1, Plus)]],
        )
        .unwrap()
    }

    fn trefoil() -> UnderpassCode {
        UnderpassCode::new(
            "trefoil",
            vec![vec![
                UnderpassEntry::new(1, 3, Plus),
                UnderpassEntry::new(1, 1, Plus),
                UnderpassEntry::new(1, 2, Plus),
            ]],
        )
        .unwrap()
    }

    #[test]
    fn linking_numbers() {
        let f = figure4();
        assert_eq!(f.linking_number(1, 2).unwrap(), 0);
        assert_eq!(f.linking_number(2, 1).unwrap(), 0);
        assert_eq!(f.writhe(1).unwrap(), 0);
        let h = hopf();
        assert_eq!(h.linking_number(1, 2).unwrap(), 1);
        assert_eq!(h.linking_number(2, 1).unwrap(), 1);
        let t = UnderpassCode::trivial(2);
        assert_eq!(t.linking_number(1, 2).unwrap(), 0);
        assert_eq!(t.writhe(2).unwrap(), 0);
        assert_eq!(trefoil().writhe(1).unwrap(), 3);
        assert!(matches!(h.linking_number(1, 3), Err(LinkError::Index { index: 3, m: 2 })));
    }

    #[test]
    fn matrix_agrees_with_pointwise() {
        for code in [figure4(), hopf(), trefoil(), UnderpassCode::trivial(3)] {
            let mat = code.linking_matrix();
            for i in 1..=code.m() {
                for j in 1..=code.m() {
                    assert_eq!(mat.get(i, j), code.linking_number(i, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn out_of_range_arc_is_named() {
        let err = UnderpassCode::new(
            "bad",
            vec![
                vec![UnderpassEntry::new(2, 1, Plus), UnderpassEntry::new(2, 1, Minus)],
                vec![UnderpassEntry::new(1, 3, Plus)],
            ],
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("(1:3)"), "{msg}");
        assert!(msg.contains("component 2, entry 1"), "{msg}");
    }

    #[test]
    fn empty_component_has_one_arc() {
        let t = UnderpassCode::trivial(2);
        assert_eq!(t.arc_count(1), 1);
        assert_eq!(t.underpass_count(1), 0);
        assert_eq!(t.arcs().count(), 2);
        assert!(UnderpassCode::new("zero", vec![]).is_err());
    }

    #[test]
    fn permutation_permutes_matrix() {
        let code = UnderpassCode::new(
            "w",
            vec![
                vec![UnderpassEntry::new(2, 1, Plus), UnderpassEntry::new(3, 1, Minus)],
                vec![UnderpassEntry::new(1, 2, Plus)],
                vec![UnderpassEntry::new(2, 1, Plus), UnderpassEntry::new(3, 2, Plus)],
            ],
        )
        .unwrap();
        let perm = [3, 1, 2];
        let p = code.permute(&perm).unwrap();
        let (a, b) = (code.linking_matrix(), p.linking_matrix());
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(b.get(i, j), a.get(perm[i - 1], perm[j - 1]));
            }
        }
        assert!(code.permute(&[1, 1, 2]).is_err());
    }

    #[test]
    fn deleting_a_component() {
        let f = figure4();
        let d = f.delete_component(2).unwrap();
        assert_eq!(d.m(), 1);
        assert_eq!(d.total_underpasses(), 0);
        let code = UnderpassCode::new(
            "w",
            vec![
                vec![
                    UnderpassEntry::new(3, 1, Plus),
                    UnderpassEntry::new(2, 1, Minus),
                    UnderpassEntry::new(3, 1, Plus),
                ],
                vec![UnderpassEntry::new(1, 3, Plus)],
                vec![],
            ],
        )
        .unwrap();
        let d = code.delete_component(2).unwrap();
        // arcs 2 and 3 of component 1 merge into arc 2
        assert_eq!(d.underpasses(1), &[UnderpassEntry::new(2, 1, Plus), UnderpassEntry::new(2, 1, Plus)]);
        let d3 = code.delete_component(3).unwrap();
        assert_eq!(d3.underpasses(1), &[UnderpassEntry::new(2, 1, Minus)]);
        assert_eq!(d3.underpasses(2), &[UnderpassEntry::new(1, 1, Plus)]);
    }
}
