use std::cmp::Ordering;
use std::fmt;

/// A word `X_{k_1}⋯X_{k_j}` in the non-commuting variables, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn new(vars: Vec<usize>) -> Self {
        Monomial(vars)
    }

    pub fn constant() -> Self {
        Monomial(Vec::new())
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn distinct_count(&self) -> usize {
        let mut v = self.0.clone();
        v.sort_unstable();
        v.dedup();
        v.len()
    }

    /// Some variable occurs at least twice.
    pub fn has_repeat(&self) -> bool {
        self.distinct_count() < self.0.len()
    }
}

/// Graded lexicographic: degree first, then variable indices.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for v in &self.0 {
            write!(f, "X{v}")?;
        }
        Ok(())
    }
}

impl From<&[usize]> for Monomial {
    fn from(vars: &[usize]) -> Self {
        Monomial(vars.to_vec())
    }
}
