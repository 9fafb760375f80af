use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Digit = u32;

/// Infinite word `u v^ω` kept in canonical form: `v` primitive and `u` as
/// short as possible.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EventuallyPeriodicWord {
    preperiod: Vec<Digit>,
    period: Vec<Digit>,
}

impl EventuallyPeriodicWord {
    pub fn new(preperiod: Vec<Digit>, period: Vec<Digit>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidDigits("empty period".into()));
        }
        let mut w = EventuallyPeriodicWord { preperiod, period };
        w.canonicalize();
        Ok(w)
    }

    /// `digits · 0^ω`.
    pub fn finite(digits: &[Digit]) -> Self {
        let mut w = EventuallyPeriodicWord { preperiod: digits.to_vec(), period: vec![0] };
        w.canonicalize();
        w
    }

    pub fn zero() -> Self {
        Self::finite(&[])
    }

    fn canonicalize(&mut self) {
        let p = self.period.len();
        for q in 1..=p {
            if p % q == 0 && (q..p).all(|i| self.period[i] == self.period[i - q]) {
                self.period.truncate(q);
                break;
            }
        }
        while let Some(&last) = self.preperiod.last() {
            if last != *self.period.last().expect("period nonempty") {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[Digit] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    /// Digit at 0-based position `i`.
    pub fn digit(&self, i: usize) -> Digit {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<Digit> {
        (0..n).map(|i| self.digit(i)).collect()
    }

    /// Shift by `k` positions.
    pub fn shift(&self, k: usize) -> Self {
        if k <= self.preperiod.len() {
            return EventuallyPeriodicWord {
                preperiod: self.preperiod[k..].to_vec(),
                period: self.period.clone(),
            };
        }
        let r = (k - self.preperiod.len()) % self.period.len();
        let mut period = self.period.clone();
        period.rotate_left(r);
        EventuallyPeriodicWord { preperiod: Vec::new(), period }
    }

    /// Prepends a finite word.
    pub fn prepend(&self, head: &[Digit]) -> Self {
        let mut pre = head.to_vec();
        pre.extend_from_slice(&self.preperiod);
        let mut w = EventuallyPeriodicWord { preperiod: pre, period: self.period.clone() };
        w.canonicalize();
        w
    }

    /// Tail `0^ω`.
    pub fn is_finite(&self) -> bool {
        self.period == [0]
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    /// Number of distinct shifts.
    pub fn orbit_len(&self) -> usize {
        self.preperiod.len() + self.period.len()
    }

    pub fn max_digit(&self) -> Digit {
        self.preperiod.iter().chain(&self.period).copied().max().unwrap_or(0)
    }

    /// First position `>= from` holding a nonzero digit.
    pub fn first_nonzero_from(&self, from: usize) -> Option<usize> {
        let end = from.max(self.preperiod.len()) + self.period.len();
        (from..end).find(|&i| self.digit(i) != 0)
    }
}

impl fmt::Display for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.max_digit() >= 10;
        write!(f, "{}", format_digits(&self.preperiod, wide))?;
        if wide && !self.preperiod.is_empty() {
            write!(f, ",")?;
        }
        let body = format_digits(&self.period, wide);
        if self.period.len() == 1 {
            write!(f, "{body}^ω")
        } else {
            write!(f, "({body})^ω")
        }
    }
}

/// Decimal digits, comma separated when `wide`.
pub fn format_digits(digits: &[Digit], wide: bool) -> String {
    let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
    parts.join(if wide { "," } else { "" })
}

/// Expansion tail: either classified, or a truncated prefix when no cycle
/// showed up within the orbit cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tail {
    Periodic(EventuallyPeriodicWord),
    Truncated { prefix: Vec<Digit> },
}

impl Tail {
    pub fn periodic(&self) -> Option<&EventuallyPeriodicWord> {
        match self {
            Tail::Periodic(w) => Some(w),
            Tail::Truncated { .. } => None,
        }
    }

    pub fn digit(&self, i: usize) -> Option<Digit> {
        match self {
            Tail::Periodic(w) => Some(w.digit(i)),
            Tail::Truncated { prefix } => prefix.get(i).copied(),
        }
    }

    pub fn prepend(&self, head: &[Digit]) -> Tail {
        match self {
            Tail::Periodic(w) => Tail::Periodic(w.prepend(head)),
            Tail::Truncated { prefix } => {
                let mut p = head.to_vec();
                p.extend_from_slice(prefix);
                Tail::Truncated { prefix: p }
            }
        }
    }

    pub fn shift(&self, k: usize) -> Tail {
        match self {
            Tail::Periodic(w) => Tail::Periodic(w.shift(k)),
            Tail::Truncated { prefix } => {
                Tail::Truncated { prefix: prefix.get(k..).unwrap_or(&[]).to_vec() }
            }
        }
    }
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tail::Periodic(w) => write!(f, "{w}"),
            Tail::Truncated { prefix } => {
                let wide = prefix.iter().any(|&d| d >= 10);
                write!(f, "{}…", format_digits(prefix, wide))
            }
        }
    }
}

/// Order on infinite digit words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WordOrder {
    /// Standard lexicographic order.
    Lex,
    /// Alternate order: at the first difference `k` (1-based), `x ≺ y` iff
    /// `(-1)^k (x_k - y_k) < 0`.
    Alt,
}

impl WordOrder {
    /// Ordering of a word holding `a` against one holding `b` at the first
    /// difference, located at 1-based position `k`.
    pub fn decide(self, k: usize, a: Digit, b: Digit) -> Ordering {
        let base = a.cmp(&b);
        match self {
            WordOrder::Lex => base,
            WordOrder::Alt if k % 2 == 1 => base.reverse(),
            WordOrder::Alt => base,
        }
    }

    pub fn compare(self, u: &EventuallyPeriodicWord, v: &EventuallyPeriodicWord) -> Ordering {
        let n = u.preperiod.len().max(v.preperiod.len()) + lcm(u.period.len(), v.period.len());
        for i in 0..n {
            let (a, b) = (u.digit(i), v.digit(i));
            if a != b {
                return self.decide(i + 1, a, b);
            }
        }
        Ordering::Equal
    }
}

pub fn lex_compare(u: &EventuallyPeriodicWord, v: &EventuallyPeriodicWord) -> Ordering {
    WordOrder::Lex.compare(u, v)
}

pub fn alt_compare(u: &EventuallyPeriodicWord, v: &EventuallyPeriodicWord) -> Ordering {
    WordOrder::Alt.compare(u, v)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(pre: &[Digit], per: &[Digit]) -> EventuallyPeriodicWord {
        EventuallyPeriodicWord::new(pre.to_vec(), per.to_vec()).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(w(&[1, 0, 1], &[0, 1]), w(&[], &[1, 0]));
        assert_eq!(w(&[1, 1, 0, 0], &[0, 0]), EventuallyPeriodicWord::finite(&[1, 1]));
        assert_eq!(w(&[0, 1, 1, 1], &[0, 1, 1, 0]).to_string(), "0111(0110)^ω");
        assert_eq!(w(&[1, 0], &[1]).to_string(), "101^ω");
        assert_eq!(w(&[], &[0]).to_string(), "0^ω");
        assert_eq!(w(&[12, 1], &[0]).to_string(), "12,1,0^ω");
    }

    #[test]
    fn shifts_and_digits() {
        let x = w(&[2, 2, 1], &[0]);
        assert_eq!(x.shift(1), w(&[2, 1], &[0]));
        assert_eq!(x.shift(7), EventuallyPeriodicWord::zero());
        let y = w(&[1], &[0, 2]);
        assert_eq!(y.shift(2), w(&[], &[2, 0]));
        assert_eq!(y.prefix(5), vec![1, 0, 2, 0, 2]);
        assert_eq!(y.first_nonzero_from(3), Some(4));
        assert_eq!(x.first_nonzero_from(3), None);
    }

    #[test]
    fn orders() {
        let a = EventuallyPeriodicWord::finite(&[1]);
        let z = EventuallyPeriodicWord::zero();
        assert_eq!(alt_compare(&a, &z), Ordering::Less);
        assert_eq!(lex_compare(&w(&[1, 1], &[0]), &w(&[1, 1, 1], &[0])), Ordering::Less);
        let u = EventuallyPeriodicWord::finite(&[1, 1]);
        let v = EventuallyPeriodicWord::finite(&[1, 0, 2]);
        assert_eq!(alt_compare(&v, &u), Ordering::Less);
        assert_eq!(alt_compare(&w(&[], &[1, 0]), &w(&[1, 0, 1, 0], &[1, 0])), Ordering::Equal);
    }
}
