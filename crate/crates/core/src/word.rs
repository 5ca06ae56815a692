//! Words in the free group on the petals `a_1, ..., a_n`.
//!
//! Text syntax is dot-separated letters, `^-1` marking inverses:
//! `a2.a3^-1.a1`. The empty word is written as the empty string (or `1`).
//! Single-letter names `a, b, c, ...` are accepted as aliases for
//! `a1, a2, a3, ...`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("cannot parse letter {0:?}")]
    BadLetter(String),
    #[error("petal index {petal} out of range 1..={n}")]
    PetalOutOfRange { petal: usize, n: usize },
}

/// A generator `a_petal` or its inverse. Petals are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub petal: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(petal: usize, exponent: i8) -> Self {
        assert!(petal >= 1, "petals are numbered from 1");
        assert!(exponent == 1 || exponent == -1, "letter exponent must be +1 or -1");
        Letter { petal, inverse: exponent < 0 }
    }

    pub fn pos(petal: usize) -> Self {
        Letter::new(petal, 1)
    }

    pub fn neg(petal: usize) -> Self {
        Letter::new(petal, -1)
    }

    pub fn exponent(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter { petal: self.petal, inverse: !self.inverse }
    }

    fn cancels(self, other: Letter) -> bool {
        self.petal == other.petal && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.petal)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::BadLetter(s.to_string());
        let t = s.trim();
        let (base, inverse) = match t.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (t.strip_suffix("^1").unwrap_or(t), false),
        };
        let petal = match base.strip_prefix('a') {
            Some(digits) if !digits.is_empty() => digits.parse::<usize>().map_err(|_| bad())?,
            _ => {
                let mut chars = base.chars();
                match (chars.next(), chars.next()) {
                    (Some(c @ 'a'..='z'), None) => c as usize - 'a' as usize + 1,
                    _ => return Err(bad()),
                }
            }
        };
        if petal == 0 {
            return Err(bad());
        }
        Ok(Letter { petal, inverse })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(petal: usize) -> Self {
        Word(vec![Letter::pos(petal)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// `self^k`; negative `k` uses the inverse word.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out)
    }

    pub fn uses_petal(&self, petal: usize) -> bool {
        self.0.iter().any(|l| l.petal == petal)
    }

    pub fn max_petal(&self) -> usize {
        self.0.iter().map(|l| l.petal).max().unwrap_or(0)
    }

    pub fn check_rank(&self, n: usize) -> Result<(), WordError> {
        match self.0.iter().find(|l| l.petal > n) {
            Some(l) => Err(WordError::PetalOutOfRange { petal: l.petal, n }),
            None => Ok(()),
        }
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// `[u, v] = u v u^-1 v^-1`
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u * &(v * &(&u.inverse() * &v.inverse()))
    }
}

impl Mul for &Word {
    type Output = Word;

    /// Concatenation (not reduced).
    fn mul(self, rhs: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&rhs.0);
        Word(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        s.split('.').map(str::parse).collect::<Result<Vec<_>, _>>().map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("a1.a1^-1").free_reduce(), Word::empty());
        assert_eq!(w("a1.a2.a2^-1.a1").free_reduce(), w("a1.a1"));
        let x = w("a.a.a.b^-1.a.b");
        assert_eq!(x.free_reduce(), x);
        assert!(x.is_reduced());
        assert_eq!(w("a2^-1.a1.a1^-1.a2.a3").free_reduce(), w("a3"));
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(w("a2.a3^-1").to_string(), "a2.a3^-1");
        assert_eq!(w("b.c^-1"), w("a2.a3^-1"));
        assert_eq!(w(""), Word::empty());
        assert_eq!(w("1"), Word::empty());
        assert!("a0".parse::<Word>().is_err());
        assert!("a1..a2".parse::<Word>().is_err());
        assert!("ab".parse::<Word>().is_err());
        assert!("a1^2".parse::<Word>().is_err());
    }

    #[test]
    fn rank_check() {
        assert!(w("a1.a3").check_rank(3).is_ok());
        assert_eq!(w("a1.a4").check_rank(3), Err(WordError::PetalOutOfRange { petal: 4, n: 3 }));
    }

    #[test]
    fn inverse_and_powers() {
        let x = w("a1.a2^-1");
        assert_eq!(x.inverse(), w("a2.a1^-1"));
        assert_eq!((&x * &x.inverse()).free_reduce(), Word::empty());
        assert_eq!(x.pow(2), w("a1.a2^-1.a1.a2^-1"));
        assert_eq!(x.pow(-1), x.inverse());
        assert_eq!(x.pow(0), Word::empty());
        assert_eq!(Word::commutator(&w("a"), &w("b")), w("a.b.a^-1.b^-1"));
    }
}
