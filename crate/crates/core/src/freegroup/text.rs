//! Textual word syntax: `a1 a2^-1` over meridians, `x1_2 x2_1^-1` over arcs.
//! Letters are separated by whitespace; `1` (or an empty string) is the
//! identity. `^n` accepts any integer exponent on input; the printer always
//! emits single letters with `^-1` for inverses.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::word::{Generator, Meridian, Word};
use crate::underpass::ArcRef;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {token:?} as a {expected}")]
pub struct WordSyntaxError {
    pub token: String,
    pub expected: &'static str,
}

impl fmt::Display for Meridian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

impl FromStr for Meridian {
    type Err = WordSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || WordSyntaxError { token: s.to_string(), expected: "meridian a<i>" };
        let idx: usize = s.strip_prefix('a').ok_or_else(err)?.parse().map_err(|_| err())?;
        if idx == 0 {
            return Err(err());
        }
        Ok(Meridian(idx))
    }
}

impl fmt::Display for ArcRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}_{}", self.component, self.arc)
    }
}

impl FromStr for ArcRef {
    type Err = WordSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || WordSyntaxError { token: s.to_string(), expected: "arc x<i>_<j>" };
        let body = s.strip_prefix('x').ok_or_else(err)?;
        let (c, a) = body.split_once('_').ok_or_else(err)?;
        let component: usize = c.parse().map_err(|_| err())?;
        let arc: usize = a.parse().map_err(|_| err())?;
        if component == 0 || arc == 0 {
            return Err(err());
        }
        Ok(ArcRef { component, arc })
    }
}

impl<G: Generator + fmt::Display> fmt::Display for Word<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        for (n, l) in self.letters().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            if l.sign.is_positive() {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^-1", l.gen)?;
            }
        }
        Ok(())
    }
}

impl<G> FromStr for Word<G>
where
    G: Generator + FromStr<Err = WordSyntaxError>,
{
    type Err = WordSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut w = Word::identity();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (gen, exp) = match token.split_once('^') {
                Some((g, e)) => {
                    let e: i64 = e.parse().map_err(|_| WordSyntaxError {
                        token: token.to_string(),
                        expected: "integer exponent",
                    })?;
                    (g, e)
                }
                None => (token, 1),
            };
            w.mul_assign(&Word::gen_pow(gen.parse::<G>()?, exp));
        }
        Ok(w)
    }
}
