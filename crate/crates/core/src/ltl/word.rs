use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Ordered set of declared variables. Variable `i` is bit `i` of a [`Letter`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Alphabet {
    names: Vec<String>,
}

/// Hard upper bound on alphabet size; letters are `u32` bitmasks.
pub const MAX_VARIABLES: usize = 31;

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Alphabet> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARIABLES {
            return Err(Error::Capacity {
                what: "variables",
                limit: MAX_VARIABLES,
            });
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::VariableSplit(alloc::format!("variable `{n}` declared twice")));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// Number of letters, `2^len`.
    pub fn letter_count(&self) -> usize {
        1usize << self.names.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.letter_count() as u32).map(Letter)
    }

    /// Errors if enumerating letters would exceed `max_vars` variables.
    pub fn check_enumerable(&self, max_vars: usize) -> Result<()> {
        if self.len() > max_vars {
            Err(Error::Capacity {
                what: "variables for letter enumeration",
                limit: max_vars,
            })
        } else {
            Ok(())
        }
    }

    pub fn letter_from_true_vars<'a>(&self, vars: impl IntoIterator<Item = &'a str>) -> Letter {
        let mut bits = 0;
        for v in vars {
            if let Some(i) = self.index_of(v) {
                bits |= 1 << i;
            }
        }
        Letter(bits)
    }

    pub fn display_letter(&self, letter: Letter) -> LetterDisplay<'_> {
        LetterDisplay { alphabet: self, letter }
    }
}

/// A total valuation of an [`Alphabet`], as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Letter(pub u32);

impl Letter {
    pub fn get(self, var: usize) -> bool {
        self.0 >> var & 1 == 1
    }

    pub fn with(self, var: usize, value: bool) -> Letter {
        if value {
            Letter(self.0 | 1 << var)
        } else {
            Letter(self.0 & !(1 << var))
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub struct LetterDisplay<'a> {
    alphabet: &'a Alphabet,
    letter: Letter,
}

impl fmt::Display for LetterDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.alphabet.names.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}={}", u8::from(self.letter.get(i)))?;
        }
        f.write_str("}")
    }
}

/// The infinite word `stem · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LassoWord {
    stem: Vec<Letter>,
    cycle: Vec<Letter>,
}

impl LassoWord {
    /// Panics if `cycle` is empty.
    pub fn new(stem: Vec<Letter>, cycle: Vec<Letter>) -> LassoWord {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        LassoWord { stem, cycle }
    }

    pub fn stem(&self) -> &[Letter] {
        &self.stem
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    /// Letter at position `t` of the infinite word.
    pub fn at(&self, t: usize) -> Letter {
        if t < self.stem.len() {
            self.stem[t]
        } else {
            self.cycle[(t - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Same word, with one copy of the cycle moved into the stem.
    pub fn unrolled(&self) -> LassoWord {
        let mut stem = self.stem.clone();
        stem.extend_from_slice(&self.cycle);
        LassoWord {
            stem,
            cycle: self.cycle.clone(),
        }
    }

    /// Positions `0..stem+cycle` with the successor of the last one.
    pub fn positions(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    /// Successor of position `p` in the folded `0..positions()` representation.
    pub fn next_position(&self, p: usize) -> usize {
        if p + 1 < self.positions() {
            p + 1
        } else {
            self.stem.len()
        }
    }

    /// Every lasso with `stem.len() <= max_stem` and `1 <= cycle.len() <= max_cycle`.
    pub fn enumerate(alphabet: &Alphabet, max_stem: usize, max_cycle: usize) -> Vec<LassoWord> {
        let words = |max: usize, min: usize| {
            let mut all: Vec<Vec<Letter>> = Vec::new();
            let mut layer: Vec<Vec<Letter>> = alloc::vec![Vec::new()];
            for len in 0..=max {
                if len >= min {
                    all.extend(layer.iter().cloned());
                }
                let mut next = Vec::new();
                for w in &layer {
                    for l in alphabet.letters() {
                        let mut w = w.clone();
                        w.push(l);
                        next.push(w);
                    }
                }
                layer = next;
            }
            all
        };
        let stems = words(max_stem, 0);
        let cycles = words(max_cycle, 1);
        let mut out = Vec::with_capacity(stems.len() * cycles.len());
        for s in &stems {
            for c in &cycles {
                out.push(LassoWord::new(s.clone(), c.clone()));
            }
        }
        out
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> LassoDisplay<'a> {
        LassoDisplay { alphabet, word: self }
    }
}

pub struct LassoDisplay<'a> {
    alphabet: &'a Alphabet,
    word: &'a LassoWord,
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, ls: &[Letter]| {
            f.write_str("[")?;
            for (i, l) in ls.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.alphabet.display_letter(*l))?;
            }
            f.write_str("]")
        };
        f.write_str("stem=")?;
        list(f, &self.word.stem)?;
        f.write_str(" loop=")?;
        list(f, &self.word.cycle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_counts() {
        let ab = Alphabet::new(["a"]).unwrap();
        // stems: 1 + 2 + 4, cycles: 2 + 4
        assert_eq!(LassoWord::enumerate(&ab, 2, 2).len(), 7 * 6);
    }

    #[test]
    fn at_wraps_into_cycle() {
        let w = LassoWord::new(alloc::vec![Letter(0)], alloc::vec![Letter(1), Letter(2)]);
        let got: Vec<u32> = (0..6).map(|t| w.at(t).0).collect();
        assert_eq!(got, [0, 1, 2, 1, 2, 1]);
        assert_eq!(w.next_position(2), 1);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(Alphabet::new(["a", "a"]).is_err());
    }
}
