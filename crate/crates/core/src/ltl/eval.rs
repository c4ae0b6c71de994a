//! Reference semantics.
//!
//! Every subformula denotes an ultimately periodic boolean sequence, kept
//! as a stem plus a repeating cycle. Future operators are solved as least or
//! greatest fixpoints on the cycle and then propagated backwards through the
//! stem. Past operators are simulated forwards; the only carried state is the
//! value at the previous position, so the entry value of a cycle pass must
//! repeat within three passes, which bounds the unrolling.
//!
//! Nothing here is shared with the automata constructions.

use alloc::vec::Vec;

use super::{Alphabet, Formula, LassoWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Seq {
    stem: Vec<bool>,
    cycle: Vec<bool>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Seq {
    fn constant(v: bool) -> Seq {
        Seq {
            stem: Vec::new(),
            cycle: alloc::vec![v],
        }
    }

    fn at(&self, t: usize) -> bool {
        if t < self.stem.len() {
            self.stem[t]
        } else {
            self.cycle[(t - self.stem.len()) % self.cycle.len()]
        }
    }

    fn tabulate(stem: usize, cycle: usize, f: impl Fn(usize) -> bool) -> Seq {
        Seq {
            stem: (0..stem).map(&f).collect(),
            cycle: (stem..stem + cycle).map(&f).collect(),
        }
    }

    fn map(&self, f: impl Fn(bool) -> bool) -> Seq {
        Seq {
            stem: self.stem.iter().map(|&v| f(v)).collect(),
            cycle: self.cycle.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Common shape of two sequences: longest stem, lcm of cycles.
    fn shape(a: &Seq, b: &Seq) -> (usize, usize) {
        let (ca, cb) = (a.cycle.len(), b.cycle.len());
        (a.stem.len().max(b.stem.len()), ca / gcd(ca, cb) * cb)
    }

    fn zip(a: &Seq, b: &Seq, f: impl Fn(bool, bool) -> bool) -> Seq {
        let (s, c) = Seq::shape(a, b);
        Seq::tabulate(s, c, |t| f(a.at(t), b.at(t)))
    }

    fn next(&self) -> Seq {
        let s = self.stem.len().saturating_sub(1);
        Seq::tabulate(s, self.cycle.len(), |t| self.at(t + 1))
    }

    fn prev(&self, at_origin: bool) -> Seq {
        let mut stem = alloc::vec![at_origin];
        stem.extend_from_slice(&self.stem);
        Seq {
            stem,
            cycle: self.cycle.clone(),
        }
    }

    /// Solves `v(t) = goal(t) | (hold(t) & v(t+1))`, least solution when
    /// `strong`, greatest otherwise.
    fn until(hold: &Seq, goal: &Seq, strong: bool) -> Seq {
        let (s, c) = Seq::shape(hold, goal);
        let h: Vec<bool> = (0..s + c).map(|t| hold.at(t)).collect();
        let g: Vec<bool> = (0..s + c).map(|t| goal.at(t)).collect();
        let mut v = alloc::vec![!strong; s + c];
        let succ = |t: usize| if t + 1 < s + c { t + 1 } else { s };
        loop {
            let mut changed = false;
            for t in (s..s + c).rev() {
                let nv = g[t] || (h[t] && v[succ(t)]);
                changed |= nv != v[t];
                v[t] = nv;
            }
            if !changed {
                break;
            }
        }
        for t in (0..s).rev() {
            v[t] = g[t] || (h[t] && v[t + 1]);
        }
        Seq {
            stem: v[..s].to_vec(),
            cycle: v[s..].to_vec(),
        }
    }

    /// Solves `v(t) = goal(t) | (hold(t) & v(t-1))` forwards, with
    /// `v(-1) = !strong`.
    fn since(hold: &Seq, goal: &Seq, strong: bool) -> Seq {
        let (s, c) = Seq::shape(hold, goal);
        let step = |t: usize, prev: bool| goal.at(t) || (hold.at(t) && prev);
        let mut values = Vec::new();
        let mut prev = !strong;
        for t in 0..s {
            prev = step(t, prev);
            values.push(prev);
        }
        // Entry value of each cycle pass; the first pass at position 0 uses
        // the origin value, which is just another boolean here.
        let mut entries: Vec<bool> = Vec::new();
        loop {
            if let Some(p) = entries.iter().position(|&e| e == prev) {
                let stem_len = s + p * c;
                let cycle = values[stem_len..].to_vec();
                values.truncate(stem_len);
                return Seq { stem: values, cycle };
            }
            entries.push(prev);
            let base = s + (entries.len() - 1) * c;
            for k in 0..c {
                prev = step(base + k, prev);
                values.push(prev);
            }
        }
    }
}

fn denote(f: &Formula, alphabet: &Alphabet, w: &LassoWord) -> Seq {
    use Formula::*;
    let d = |g: &Formula| denote(g, alphabet, w);
    match f {
        True => Seq::constant(true),
        False => Seq::constant(false),
        Var(name) => {
            let i = alphabet
                .index_of(name)
                .unwrap_or_else(|| panic!("variable `{name}` not in alphabet"));
            Seq {
                stem: w.stem().iter().map(|l| l.get(i)).collect(),
                cycle: w.cycle().iter().map(|l| l.get(i)).collect(),
            }
        }
        Not(a) => d(a).map(|v| !v),
        And(a, b) => Seq::zip(&d(a), &d(b), |x, y| x && y),
        Or(a, b) => Seq::zip(&d(a), &d(b), |x, y| x || y),
        Implies(a, b) => Seq::zip(&d(a), &d(b), |x, y| !x || y),
        Iff(a, b) => Seq::zip(&d(a), &d(b), |x, y| x == y),
        Next(a) => d(a).next(),
        Until(a, b) => Seq::until(&d(a), &d(b), true),
        WeakUntil(a, b) => Seq::until(&d(a), &d(b), false),
        // a B b  =  !(!a U b)
        Before(a, b) => Seq::until(&d(a).map(|v| !v), &d(b), true).map(|v| !v),
        Globally(a) => Seq::until(&d(a), &Seq::constant(false), false),
        Finally(a) => Seq::until(&Seq::constant(true), &d(a), true),
        StrongPrev(a) => d(a).prev(false),
        WeakPrev(a) => d(a).prev(true),
        Since(a, b) => Seq::since(&d(a), &d(b), true),
        WeakSince(a, b) => Seq::since(&d(a), &d(b), false),
        PastBefore(a, b) => Seq::since(&d(a).map(|v| !v), &d(b), true).map(|v| !v),
        Historically(a) => Seq::since(&d(a), &Seq::constant(false), false),
        Once(a) => Seq::since(&Seq::constant(true), &d(a), true),
        // The when-operators have no independent prose meaning; their
        // defining identities are the semantics.
        When(a, b) => {
            let (a, b) = (d(a), d(b));
            let both = Seq::zip(&a, &b, |x, y| x && y);
            let miss = Seq::zip(&a, &b, |x, y| !x && y);
            Seq::until(&both.map(|v| !v), &miss, true).map(|v| !v)
        }
        StrongWhen(a, b) => {
            let (a, b) = (d(a), d(b));
            Seq::until(&b.map(|v| !v), &Seq::zip(&a, &b, |x, y| x && y), true)
        }
        PastWhen(a, b) => {
            let (a, b) = (d(a), d(b));
            let both = Seq::zip(&a, &b, |x, y| x && y);
            let miss = Seq::zip(&a, &b, |x, y| !x && y);
            Seq::since(&both.map(|v| !v), &miss, true).map(|v| !v)
        }
        PastStrongWhen(a, b) => {
            let (a, b) = (d(a), d(b));
            Seq::since(&b.map(|v| !v), &Seq::zip(&a, &b, |x, y| x && y), true)
        }
    }
}

/// Truth of `f` at position `t` of the lasso word `w`.
///
/// Panics if `f` mentions a variable missing from `alphabet`.
pub fn eval(f: &Formula, alphabet: &Alphabet, w: &LassoWord, t: usize) -> bool {
    denote(f, alphabet, w).at(t)
}

/// Truth of a propositional formula under a single letter.
///
/// Temporal operators are evaluated on the constant word `letter^ω`.
pub fn eval_letter(f: &Formula, alphabet: &Alphabet, letter: Letter) -> bool {
    use Formula::*;
    let e = |g: &Formula| eval_letter(g, alphabet, letter);
    match f {
        True => true,
        False => false,
        Var(name) => alphabet.index_of(name).is_some_and(|i| letter.get(i)),
        Not(a) => !e(a),
        And(a, b) => e(a) && e(b),
        Or(a, b) => e(a) || e(b),
        Implies(a, b) => !e(a) || e(b),
        Iff(a, b) => e(a) == e(b),
        _ => eval(f, alphabet, &LassoWord::new(Vec::new(), alloc::vec![letter]), 0),
    }
}
