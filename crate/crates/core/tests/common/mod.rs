#![allow(dead_code)]

use std::collections::BTreeSet;

use fourmove_core::{ArcRef, Meridian, Sign, UnderpassCode, UnderpassEntry, Word};
use proptest::prelude::*;

/// Random valid underpass code with at most `max_m` components and at most
/// `max_total` underpasses. Over-arc references are drawn as raw numbers and
/// reduced modulo the arc counts, so every code validates.
pub fn arb_code(max_m: usize, max_total: usize) -> impl Strategy<Value = UnderpassCode> {
    (1..=max_m)
        .prop_flat_map(move |m| prop::collection::vec(0..=max_total, m))
        .prop_filter("too many underpasses", move |r| r.iter().sum::<usize>() <= max_total)
        .prop_flat_map(|r| {
            let entries: Vec<_> = r
                .iter()
                .map(|&n| prop::collection::vec((any::<u8>(), any::<u8>(), any::<bool>()), n))
                .collect();
            (Just(r), entries)
        })
        .prop_map(|(r, raw)| {
            let m = r.len();
            let comps = raw
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|(c, a, s)| {
                            let c = c as usize % m + 1;
                            let a = a as usize % r[c - 1].max(1) + 1;
                            UnderpassEntry::new(c, a, if s { Sign::Plus } else { Sign::Minus })
                        })
                        .collect()
                })
                .collect();
            UnderpassCode::new("random", comps).unwrap()
        })
}

pub fn arb_word(m: usize, max_len: usize) -> impl Strategy<Value = Word<Meridian>> {
    prop::collection::vec((1..=m, any::<bool>()), 0..=max_len).prop_map(|ls| {
        let mut w = Word::identity();
        for (g, s) in ls {
            w.mul_assign(&Word::gen_pow(Meridian(g), if s { 1 } else { -1 }));
        }
        w
    })
}

/// Signed Gauss code whose import is `code` again: over events on arc `a`
/// of a component sit between its `(a-1)`-th and `a`-th under events.
pub fn gauss_text(code: &UnderpassCode) -> String {
    let label = |i: usize, j: usize| format!("c{i}_{j}");
    let sign = |s: Sign| if s.is_positive() { '+' } else { '-' };
    let mut lines = Vec::new();
    for i in 1..=code.m() {
        let overs_on = |arc: usize| {
            let mut out = Vec::new();
            for (k, comp) in code.components().iter().enumerate() {
                for (j, e) in comp.iter().enumerate() {
                    if e.over == ArcRef::new(i, arc) {
                        out.push(format!("O{}{}", label(k + 1, j + 1), sign(e.sign)));
                    }
                }
            }
            out
        };
        let mut tokens = overs_on(1);
        let entries = code.underpasses(i);
        for (j, e) in entries.iter().enumerate() {
            tokens.push(format!("U{}{}", label(i, j + 1), sign(e.sign)));
            if j + 1 < entries.len() {
                tokens.extend(overs_on(j + 2));
            }
        }
        lines.push(tokens.join(" "));
    }
    lines.iter().map(|l| format!("{l}\n")).collect()
}

/// Naive truncated Z/2 polynomials: the set of monomials with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Naive {
    pub d: usize,
    pub terms: BTreeSet<Vec<usize>>,
}

impl Naive {
    pub fn one(d: usize) -> Self {
        Naive { d, terms: [vec![]].into() }
    }

    pub fn mul(&self, other: &Naive) -> Naive {
        let mut terms = BTreeSet::new();
        for a in &self.terms {
            for b in &other.terms {
                if a.len() + b.len() <= self.d {
                    let p = [a.as_slice(), b.as_slice()].concat();
                    if !terms.remove(&p) {
                        terms.insert(p);
                    }
                }
            }
        }
        Naive { d: self.d, terms }
    }

    pub fn letter(i: usize, positive: bool, d: usize) -> Naive {
        let terms = if positive {
            [vec![], vec![i]].into()
        } else {
            (0..=d).map(|k| vec![i; k]).collect()
        };
        Naive { d, terms }
    }

    pub fn expand(w: &Word<Meridian>, d: usize) -> Naive {
        w.letters()
            .fold(Naive::one(d), |acc, l| acc.mul(&Naive::letter(l.gen.index(), l.sign.is_positive(), d)))
    }

    pub fn from_series(s: &fourmove_core::TruncatedSeries) -> Naive {
        Naive { d: s.degree_bound(), terms: s.monomials().map(|m| m.vars().to_vec()).collect() }
    }
}
