//! Z/2 non-commutative polynomials in `X_1..X_m`, truncated at total degree
//! `D`, and the Magnus expansion `α_i ↦ 1 + X_i`.
//!
//! A series is a packed bit vector indexed by monomial. Monomials of degree
//! `d` occupy a contiguous block of `m^d` bits starting at `offset(d)`; inside
//! a block a monomial `X_{k_1}⋯X_{k_d}` sits at the mixed-radix rank
//! `Σ (k_t − 1)·m^{d−t}`, so block order is lexicographic and whole-vector
//! order is graded lexicographic.
//!
//! Because `rank(M₁M₂) = rank(M₁)·m^{deg M₂} + rank(M₂)`, multiplying by a
//! fixed left monomial maps each degree block of the right factor onto a
//! contiguous destination range. Products are therefore sums of shifted
//! block XORs.

mod bits;
mod monomial;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exec::Exec;
use crate::freegroup::{Meridian, Word};
use crate::underpass::Sign;

pub use monomial::Monomial;

/// Series above this many bits are refused.
pub const MAX_SERIES_BITS: usize = 1 << 31;

/// Below this many set bits in the left factor, `mul` stays sequential.
const PAR_MIN_TERMS: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagnusError {
    #[error("series shapes differ: (m={0}, D={1}) vs (m={2}, D={3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("series has constant term 0 and is not invertible")]
    NotAUnit,
    #[error("monomial of degree {degree} is beyond the truncation degree {bound}")]
    DegreeBeyondTruncation { degree: usize, bound: usize },
    #[error("variable X{var} out of range 1..={m}")]
    VariableOutOfRange { var: usize, m: usize },
    #[error("m = {m}, D = {d} needs more than {MAX_SERIES_BITS} coefficient bits")]
    TooLarge { m: usize, d: usize },
    #[error("need at least one variable")]
    NoVariables,
}

/// Block geometry for a given `(m, D)`.
#[derive(Debug, PartialEq, Eq)]
pub struct Layout {
    m: usize,
    d: usize,
    /// `powers[k] = m^k` for `k ≤ D`.
    powers: Vec<usize>,
    /// `offsets[k]` = first bit of the degree-`k` block; `offsets[D+1]` = total.
    offsets: Vec<usize>,
}

impl Layout {
    pub fn new(m: usize, d: usize) -> Result<Arc<Layout>, MagnusError> {
        if m == 0 {
            return Err(MagnusError::NoVariables);
        }
        let mut powers = Vec::with_capacity(d + 1);
        let mut offsets = Vec::with_capacity(d + 2);
        let mut p = 1usize;
        let mut total = 0usize;
        for k in 0..=d {
            if k > 0 {
                p = p.checked_mul(m).ok_or(MagnusError::TooLarge { m, d })?;
            }
            powers.push(p);
            offsets.push(total);
            total = total.checked_add(p).ok_or(MagnusError::TooLarge { m, d })?;
            if total > MAX_SERIES_BITS {
                return Err(MagnusError::TooLarge { m, d });
            }
        }
        offsets.push(total);
        Ok(Arc::new(Layout { m, d, powers, offsets }))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// Number of monomials of degree `≤ D`.
    pub fn len(&self) -> usize {
        self.offsets[self.d + 1]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn words(&self) -> usize {
        self.len().div_ceil(64)
    }

    fn index_of(&self, vars: &[usize]) -> usize {
        let rank = vars.iter().fold(0usize, |acc, &v| acc * self.m + (v - 1));
        self.offsets[vars.len()] + rank
    }

    fn degree_of(&self, index: usize) -> usize {
        // offsets is sorted; last block whose start is <= index
        self.offsets.partition_point(|&o| o <= index) - 1
    }

    fn monomial_at(&self, index: usize) -> Monomial {
        let deg = self.degree_of(index);
        let mut rank = index - self.offsets[deg];
        let mut vars = vec![0usize; deg];
        for slot in vars.iter_mut().rev() {
            *slot = rank % self.m + 1;
            rank /= self.m;
        }
        Monomial::new(vars)
    }
}

/// An element of `Z/2⟨X_1..X_m⟩ / (degree > D)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    layout: Arc<Layout>,
    bits: Vec<u64>,
}

impl TruncatedSeries {
    pub fn zero(m: usize, d: usize) -> Result<Self, MagnusError> {
        Ok(Self::zero_in(&Layout::new(m, d)?))
    }

    pub fn one(m: usize, d: usize) -> Result<Self, MagnusError> {
        Ok(Self::one_in(&Layout::new(m, d)?))
    }

    pub fn zero_in(layout: &Arc<Layout>) -> Self {
        TruncatedSeries { layout: Arc::clone(layout), bits: vec![0; layout.words()] }
    }

    pub fn one_in(layout: &Arc<Layout>) -> Self {
        let mut s = Self::zero_in(layout);
        s.bits[0] = 1;
        s
    }

    /// The monomial `X_{k_1}⋯X_{k_j}` (the constant `1` for an empty slice).
    pub fn monomial_in(layout: &Arc<Layout>, vars: &[usize]) -> Result<Self, MagnusError> {
        let mut s = Self::zero_in(layout);
        s.toggle(vars)?;
        Ok(s)
    }

    /// `1 + X_i`, the expansion of the meridian `α_i`.
    pub fn meridian_in(layout: &Arc<Layout>, i: usize) -> Result<Self, MagnusError> {
        let mut s = Self::one_in(layout);
        if layout.d >= 1 {
            s.toggle(&[i])?;
        } else {
            check_var(i, layout.m)?;
        }
        Ok(s)
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn m(&self) -> usize {
        self.layout.m
    }

    /// Truncation degree `D`.
    pub fn degree_bound(&self) -> usize {
        self.layout.d
    }

    fn check_shape(&self, other: &Self) -> Result<(), MagnusError> {
        if self.layout.m != other.layout.m || self.layout.d != other.layout.d {
            return Err(MagnusError::ShapeMismatch(
                self.layout.m,
                self.layout.d,
                other.layout.m,
                other.layout.d,
            ));
        }
        Ok(())
    }

    fn check_monomial(&self, vars: &[usize]) -> Result<(), MagnusError> {
        if vars.len() > self.layout.d {
            return Err(MagnusError::DegreeBeyondTruncation {
                degree: vars.len(),
                bound: self.layout.d,
            });
        }
        for &v in vars {
            check_var(v, self.layout.m)?;
        }
        Ok(())
    }

    /// Flips the coefficient of a monomial.
    pub fn toggle(&mut self, vars: &[usize]) -> Result<(), MagnusError> {
        self.check_monomial(vars)?;
        let idx = self.layout.index_of(vars);
        self.bits[idx / 64] ^= 1 << (idx % 64);
        Ok(())
    }

    /// Z/2 coefficient of `X_{k_1}⋯X_{k_j}`. Asking for a degree above `D`
    /// is an error: those coefficients were discarded.
    pub fn coefficient(&self, vars: &[usize]) -> Result<bool, MagnusError> {
        self.check_monomial(vars)?;
        let idx = self.layout.index_of(vars);
        Ok(bits::get(&self.bits, idx))
    }

    pub fn constant_term(&self) -> bool {
        self.bits[0] & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        self.bits[0] == 1 && self.bits[1..].iter().all(|&w| w == 0)
    }

    /// Lowest degree carrying a non-zero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        bits::first_set(&self.bits).map(|i| self.layout.degree_of(i))
    }

    /// Lowest degree at which `self − 1` is non-zero; `None` when `self = 1`.
    pub fn min_degree_above_one(&self) -> Option<usize> {
        let mut diff = self.clone();
        diff.bits[0] ^= 1;
        diff.min_degree()
    }

    pub fn count_terms(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Non-zero monomials in graded lexicographic order.
    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        bits::ones(&self.bits, 0, self.layout.len()).map(|i| self.layout.monomial_at(i))
    }

    pub fn add(&self, other: &Self) -> Result<Self, MagnusError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        out.bits.iter_mut().zip(&other.bits).for_each(|(a, b)| *a ^= b);
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MagnusError> {
        self.mul_with(other, Exec::default())
    }

    pub fn mul_with(&self, other: &Self, exec: Exec) -> Result<Self, MagnusError> {
        self.check_shape(other)?;
        Ok(self.mul_unchecked(other, exec))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self, exec: Exec) -> Self {
        let lay = &*self.layout;
        let d = lay.d;
        // degrees at which the right factor has any term
        let right_degrees: Vec<usize> = (0..=d)
            .filter(|&k| bits::any(&other.bits, lay.offsets[k], lay.powers[k]))
            .collect();
        let terms = self.count_terms();
        let accumulate = |out: &mut [u64], lo: usize, hi: usize| {
            for idx in bits::ones(&self.bits, lo, hi - lo) {
                let d1 = lay.degree_of(idx);
                let r1 = idx - lay.offsets[d1];
                for &d2 in right_degrees.iter().take_while(|&&k| k + d1 <= d) {
                    bits::xor_range(
                        out,
                        lay.offsets[d1 + d2] + r1 * lay.powers[d2],
                        &other.bits,
                        lay.offsets[d2],
                        lay.powers[d2],
                    );
                }
            }
        };
        let total = lay.len();
        let bits = if exec.is_parallel() && terms >= PAR_MIN_TERMS {
            let chunks = 64usize;
            let step = total.div_ceil(chunks).max(64);
            let n = total.div_ceil(step);
            let words = lay.words();
            exec.map_reduce(
                n,
                || vec![0u64; words],
                |c| {
                    let mut out = vec![0u64; words];
                    accumulate(&mut out, c * step, ((c + 1) * step).min(total));
                    out
                },
                |mut a, b| {
                    a.iter_mut().zip(&b).for_each(|(x, y)| *x ^= y);
                    a
                },
            )
        } else {
            let mut out = vec![0u64; lay.words()];
            accumulate(&mut out, 0, total);
            out
        };
        TruncatedSeries { layout: Arc::clone(&self.layout), bits }
    }

    /// `X_i · self`.
    pub fn left_mul_var(&self, i: usize) -> Result<Self, MagnusError> {
        check_var(i, self.layout.m)?;
        let mut out = Self::zero_in(&self.layout);
        out.xor_left_var(self, i);
        Ok(out)
    }

    /// `self ^= X_i · src` on shared layouts.
    fn xor_left_var(&mut self, src: &Self, i: usize) {
        let lay = &*self.layout;
        for k in 0..lay.d {
            bits::xor_range(
                &mut self.bits,
                lay.offsets[k + 1] + (i - 1) * lay.powers[k],
                &src.bits,
                lay.offsets[k],
                lay.powers[k],
            );
        }
    }

    /// `E(α_i^{±1}) · self` without a general product: `(1 + X_i)·a` is a
    /// block shift and `(1 + X_i)⁻¹ = Σ X_i^k`.
    pub fn left_mul_meridian(&self, i: usize, sign: Sign) -> Result<Self, MagnusError> {
        check_var(i, self.layout.m)?;
        let mut out = self.clone();
        match sign {
            Sign::Plus => out.xor_left_var(self, i),
            Sign::Minus => {
                // t = a + X_i·t, solved one degree at a time
                let lay = &*self.layout;
                for k in 0..lay.d {
                    bits::xor_within(
                        &mut out.bits,
                        lay.offsets[k + 1] + (i - 1) * lay.powers[k],
                        lay.offsets[k],
                        lay.powers[k],
                    );
                }
            }
        }
        Ok(out)
    }

    /// Neumann inverse `Σ_{r ≤ D} (a − 1)^r`; exact in the truncated ring.
    pub fn inverse(&self) -> Result<Self, MagnusError> {
        self.inverse_with(Exec::default())
    }

    pub fn inverse_with(&self, exec: Exec) -> Result<Self, MagnusError> {
        if !self.constant_term() {
            return Err(MagnusError::NotAUnit);
        }
        let mut u = self.clone();
        u.bits[0] ^= 1;
        let one = Self::one_in(&self.layout);
        let mut acc = one.clone();
        // Horner: acc ← 1 + u·acc, D times
        for _ in 0..self.layout.d {
            acc = u.mul_unchecked(&acc, exec);
            acc.bits[0] ^= 1;
        }
        Ok(acc)
    }

    /// Drops every term of degree above `d`, `d ≤ D`.
    pub fn truncate(&self, d: usize) -> Result<Self, MagnusError> {
        if d > self.layout.d {
            return Err(MagnusError::DegreeBeyondTruncation { degree: d, bound: self.layout.d });
        }
        let layout = Layout::new(self.layout.m, d)?;
        let mut out = Self::zero_in(&layout);
        let n = layout.len();
        bits::xor_range(&mut out.bits, 0, &self.bits, 0, n);
        Ok(out)
    }
}

fn check_var(i: usize, m: usize) -> Result<(), MagnusError> {
    if (1..=m).contains(&i) {
        Ok(())
    } else {
        Err(MagnusError::VariableOutOfRange { var: i, m })
    }
}

/// Magnus expansion `E(w)` truncated at degree `d`.
pub fn expand_word(w: &Word<Meridian>, m: usize, d: usize) -> Result<TruncatedSeries, MagnusError> {
    expand_word_in(w, &Layout::new(m, d)?)
}

pub fn expand_word_in(
    w: &Word<Meridian>,
    layout: &Arc<Layout>,
) -> Result<TruncatedSeries, MagnusError> {
    let mut acc = TruncatedSeries::one_in(layout);
    for letter in w.letters().rev() {
        acc = acc.left_mul_meridian(letter.gen.index(), letter.sign)?;
    }
    Ok(acc)
}

impl fmt::Display for TruncatedSeries {
    /// `1 + X1X2 + X2X1`; `0` for the zero series.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for mono in self.monomials() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{mono}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(m={}, D={}: {self})", self.layout.m, self.layout.d)
    }
}
