//! Random words and relator samplers over the meridian alphabet.
//!
//! These produce certified members of the normal subgroups the obstruction is
//! built on: the S-relators, the n-th powers, and left-normed weight-q
//! commutators (which lie in the q-th lower central term).

use rand::Rng;

use super::word::{left_normed, Generator, Letter, Meridian, Word};
use crate::underpass::Sign;

fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn random_letter<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Letter<Meridian> {
    Letter::new(Meridian(rng.random_range(1..=m)), random_sign(rng))
}

/// A random word of at most `max_len` letters; the letter sequence is drawn
/// first and then reduced, so the result may be shorter.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, m: usize, max_len: usize) -> Word<Meridian> {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| random_letter(rng, m)).collect()
}

/// `(a·w·b·w⁻¹)² · (w·b·w⁻¹·a)⁻²`.
pub fn make_s_relator<G: Generator>(a: Letter<G>, b: Letter<G>, w: &Word<G>) -> Word<G> {
    let a = Word::letter(a);
    let b = Word::letter(b);
    let wb = b.conjugate(&w.inverse());
    let first = a.mul(&wb);
    let second = wb.mul(&a);
    first.pow(2).mul(&second.pow(-2))
}

pub fn sample_s_relator<R: Rng + ?Sized>(rng: &mut R, m: usize, max_len: usize) -> Word<Meridian> {
    let a = random_letter(rng, m);
    let b = random_letter(rng, m);
    let w = random_word(rng, m, max_len);
    make_s_relator(a, b, &w)
}

/// Random product `Π gⱼ⁻¹ sⱼ^{±1} gⱼ` of `factors` conjugated S-relators.
pub fn sample_s_normal_closure<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    factors: usize,
    max_len: usize,
) -> Word<Meridian> {
    let mut out = Word::identity();
    for _ in 0..factors {
        let mut s = sample_s_relator(rng, m, max_len);
        if rng.random_bool(0.5) {
            s = s.inverse();
        }
        let g = random_word(rng, m, max_len);
        out.mul_assign(&s.conjugate(&g));
    }
    out
}

/// Random left-normed commutator `[[…[g₁, g₂], …], g_q]` of generators.
pub fn sample_gamma_q<R: Rng + ?Sized>(rng: &mut R, q: usize, m: usize) -> Word<Meridian> {
    assert!(q >= 1, "lower central series is indexed from 1");
    let gens: Vec<Word<Meridian>> =
        (0..q).map(|_| Word::gen(Meridian(rng.random_range(1..=m)))).collect();
    left_normed(&gens)
}

/// `wⁿ` for a random `w`.
pub fn sample_power<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    max_len: usize,
    n: i64,
) -> Word<Meridian> {
    random_word(rng, m, max_len).pow(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a(i: usize) -> Word<Meridian> {
        Word::gen(Meridian(i))
    }

    fn all_exponent_sums_zero(w: &Word<Meridian>, m: usize) -> bool {
        (1..=m).all(|g| w.exponent_sum(Meridian(g)) == 0)
    }

    #[test]
    fn s_relator_instances() {
        let p = |i| Letter::new(Meridian(i), Sign::Plus);
        assert!(make_s_relator(p(1), p(1), &Word::identity()).is_identity());
        let s = make_s_relator(p(1), p(2), &Word::identity());
        let expected = a(1).mul(&a(2)).pow(2).mul(&a(2).mul(&a(1)).pow(-2));
        assert_eq!(s, expected);
    }

    #[test]
    fn sampled_relators_are_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            assert!(all_exponent_sums_zero(&sample_s_relator(&mut rng, 3, 6), 3));
            assert!(all_exponent_sums_zero(&sample_s_normal_closure(&mut rng, 3, 3, 4), 3));
            let q = rng.random_range(2..=5);
            assert!(all_exponent_sums_zero(&sample_gamma_q(&mut rng, q, 3), 3));
        }
    }

    #[test]
    fn gamma_small_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = sample_gamma_q(&mut rng, 1, 4);
        assert_eq!(g.len(), 1);
        let c = left_normed(&[a(1), a(2)]);
        assert_eq!(c.to_string(), "a1^-1 a2^-1 a1 a2");
    }
}
