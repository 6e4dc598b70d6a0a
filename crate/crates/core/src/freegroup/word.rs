use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::underpass::Sign;

/// A free generator. Implemented by [`Meridian`] (the alphabet A) and
/// [`crate::underpass::ArcRef`] (the arc alphabet X).
pub trait Generator: Copy + Eq + Ord + Hash + fmt::Debug + Send + Sync {}

/// Meridian generator `a<i>`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Meridian(pub usize);

impl Generator for Meridian {}

impl Meridian {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter<G> {
    pub gen: G,
    pub sign: Sign,
}

impl<G: Generator> Letter<G> {
    pub fn new(gen: G, sign: Sign) -> Self {
        Letter { gen, sign }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, sign: -self.sign }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("no image given for generator {0}")]
    MissingImage(String),
}

/// A freely reduced word.
///
/// Storage is run-length: `(generator, exponent)` syllables with non-zero
/// exponents and no two adjacent syllables on the same generator. Equality of
/// the syllable vectors is equality in the free group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word<G> {
    syllables: Vec<(G, i64)>,
}

impl<G: Generator> Default for Word<G> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<G: Generator> Word<G> {
    pub fn identity() -> Self {
        Word { syllables: Vec::new() }
    }

    pub fn gen(g: G) -> Self {
        Word { syllables: vec![(g, 1)] }
    }

    pub fn letter(l: Letter<G>) -> Self {
        Word { syllables: vec![(l.gen, l.sign.value())] }
    }

    pub fn gen_pow(g: G, e: i64) -> Self {
        let mut w = Self::identity();
        w.push_syllable(g, e);
        w
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter<G>>>(letters: I) -> Self {
        let mut w = Self::identity();
        for l in letters {
            w.push_syllable(l.gen, l.sign.value());
        }
        w
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Reduced length in letters.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn syllables(&self) -> &[(G, i64)] {
        &self.syllables
    }

    /// The reduced letter sequence, one `±1` letter at a time.
    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter<G>> + '_ {
        self.syllables.iter().flat_map(|&(g, e)| {
            let sign = if e > 0 { Sign::Plus } else { Sign::Minus };
            std::iter::repeat_n(Letter::new(g, sign), e.unsigned_abs() as usize)
        })
    }

    fn push_syllable(&mut self, g: G, e: i64) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((last, le)) if *last == g => {
                *le += e;
                if *le == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, e)),
        }
    }

    /// Appends `other` in place with free cancellation at the seam.
    pub fn mul_assign(&mut self, other: &Word<G>) {
        let mut rest = other.syllables.iter();
        for &(g, e) in rest.by_ref() {
            match self.syllables.last_mut() {
                Some((last, le)) if *last == g => {
                    *le += e;
                    if *le == 0 {
                        self.syllables.pop();
                        continue;
                    }
                    break;
                }
                _ => {
                    self.syllables.push((g, e));
                    break;
                }
            }
        }
        self.syllables.extend(rest.copied());
    }

    pub fn mul(&self, other: &Word<G>) -> Word<G> {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    pub fn inverse(&self) -> Word<G> {
        Word {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &Word<G>) -> Word<G> {
        let mut out = g.inverse();
        out.mul_assign(self);
        out.mul_assign(g);
        out
    }

    pub fn pow(&self, n: i64) -> Word<G> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..n.unsigned_abs() {
            out.mul_assign(&base);
        }
        out
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Word<G>, b: &Word<G>) -> Word<G> {
        let mut out = a.inverse();
        out.mul_assign(&b.inverse());
        out.mul_assign(a);
        out.mul_assign(b);
        out
    }

    pub fn exponent_sum(&self, g: G) -> i64 {
        self.exponent_sum_by(|h| h == g)
    }

    /// Signed count over every generator accepted by `class`.
    pub fn exponent_sum_by<P: Fn(G) -> bool>(&self, class: P) -> i64 {
        self.syllables.iter().filter(|&&(g, _)| class(g)).map(|&(_, e)| e).sum()
    }

    /// Letterwise substitution into another free group.
    pub fn apply_hom<H, F>(&self, images: F) -> Result<Word<H>, FreeGroupError>
    where
        H: Generator,
        F: Fn(G) -> Option<Word<H>>,
    {
        self.apply_hom_ref(|g| images(g).map(std::borrow::Cow::Owned))
    }

    pub fn apply_hom_map<H: Generator>(
        &self,
        images: &HashMap<G, Word<H>>,
    ) -> Result<Word<H>, FreeGroupError> {
        self.apply_hom_ref(|g| images.get(&g).map(std::borrow::Cow::Borrowed))
    }

    pub(crate) fn apply_hom_ref<'a, H, F>(&self, images: F) -> Result<Word<H>, FreeGroupError>
    where
        H: Generator + 'a,
        F: Fn(G) -> Option<std::borrow::Cow<'a, Word<H>>>,
    {
        let mut out = Word::identity();
        for &(g, e) in &self.syllables {
            let img = images(g).ok_or_else(|| FreeGroupError::MissingImage(format!("{g:?}")))?;
            let img = if e < 0 { img.inverse() } else { img.into_owned() };
            for _ in 0..e.unsigned_abs() {
                out.mul_assign(&img);
            }
        }
        Ok(out)
    }
}

impl<G: Generator> std::ops::Mul for &Word<G> {
    type Output = Word<G>;
    fn mul(self, rhs: &Word<G>) -> Word<G> {
        Word::mul(self, rhs)
    }
}

impl<G: Generator> FromIterator<Letter<G>> for Word<G> {
    fn from_iter<I: IntoIterator<Item = Letter<G>>>(iter: I) -> Self {
        Word::from_letters(iter)
    }
}

impl<G: Generator + fmt::Display> fmt::Debug for Word<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Left-normed iterated commutator `[[…[g₁, g₂], …], g_q]`.
pub fn left_normed<G: Generator>(terms: &[Word<G>]) -> Word<G> {
    let mut it = terms.iter();
    let Some(first) = it.next() else {
        return Word::identity();
    };
    it.fold(first.clone(), |acc, t| Word::commutator(&acc, t))
}

/// Right-normed iterated commutator `[g₁, [g₂, […, [g_{q−1}, g_q]]]]`.
pub fn right_normed<G: Generator>(terms: &[Word<G>]) -> Word<G> {
    let mut it = terms.iter().rev();
    let Some(last) = it.next() else {
        return Word::identity();
    };
    it.fold(last.clone(), |acc, t| Word::commutator(t, &acc))
}
