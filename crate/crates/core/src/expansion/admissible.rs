use std::cmp::Ordering;

use super::word::{Digit, EventuallyPeriodicWord, WordOrder};

/// Suffix constraints: every suffix `s` must satisfy `lower ⪯ s ≺ upper`.
#[derive(Debug, Clone)]
pub struct SuffixBounds {
    pub order: WordOrder,
    pub lower: Option<EventuallyPeriodicWord>,
    pub upper: EventuallyPeriodicWord,
}

impl SuffixBounds {
    pub fn checker(&self) -> IncrementalChecker<'_> {
        IncrementalChecker { bounds: self, len: 0, lower_ties: Vec::new(), upper_ties: Vec::new() }
    }

    fn suffix_ok(&self, s: &EventuallyPeriodicWord) -> bool {
        if self.order.compare(s, &self.upper) != Ordering::Less {
            return false;
        }
        match &self.lower {
            Some(lo) => self.order.compare(s, lo) != Ordering::Less,
            None => true,
        }
    }

    /// Direct check over all distinct suffixes.
    pub fn admits(&self, w: &EventuallyPeriodicWord) -> bool {
        (0..w.orbit_len()).all(|i| self.suffix_ok(&w.shift(i)))
    }

    /// Whether `digits · 0^ω` is admissible.
    pub fn admits_finite(&self, digits: &[Digit]) -> bool {
        let mut c = self.checker();
        digits.iter().all(|&d| c.push(d)) && c.finish()
    }
}

/// Left-to-right admissibility check that tracks suffixes still tied with a
/// bound. Clone it to branch in a search.
#[derive(Debug, Clone)]
pub struct IncrementalChecker<'a> {
    bounds: &'a SuffixBounds,
    len: usize,
    lower_ties: Vec<usize>,
    upper_ties: Vec<usize>,
}

impl IncrementalChecker<'_> {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Appends a digit; false once some suffix leaves the bounds.
    pub fn push(&mut self, c: Digit) -> bool {
        let order = self.bounds.order;
        let pos = self.len;
        self.len += 1;
        self.upper_ties.push(pos);
        let upper = &self.bounds.upper;
        let mut ok = true;
        self.upper_ties.retain(|&s| {
            let off = pos - s;
            let b = upper.digit(off);
            match order.decide(off + 1, c, b) {
                Ordering::Equal => true,
                Ordering::Less => false,
                Ordering::Greater => {
                    ok = false;
                    false
                }
            }
        });
        if let Some(lower) = &self.bounds.lower {
            self.lower_ties.push(pos);
            self.lower_ties.retain(|&s| {
                let off = pos - s;
                let b = lower.digit(off);
                match order.decide(off + 1, c, b) {
                    Ordering::Equal => true,
                    Ordering::Greater => false,
                    Ordering::Less => {
                        ok = false;
                        false
                    }
                }
            });
        }
        ok
    }

    /// Whether the current prefix followed by `0^ω` is admissible.
    pub fn finish(&self) -> bool {
        let order = self.bounds.order;
        let tail_cmp = |bound: &EventuallyPeriodicWord, off: usize| match bound.first_nonzero_from(off) {
            None => Ordering::Equal,
            Some(j) => order.decide(j + 1, 0, bound.digit(j)),
        };
        let upper = &self.bounds.upper;
        let upper_ok = self
            .upper_ties
            .iter()
            .map(|&s| self.len - s)
            .chain(std::iter::once(0))
            .all(|off| tail_cmp(upper, off) == Ordering::Less);
        if !upper_ok {
            return false;
        }
        match &self.bounds.lower {
            None => true,
            Some(lower) => self
                .lower_ties
                .iter()
                .map(|&s| self.len - s)
                .chain(std::iter::once(0))
                .all(|off| tail_cmp(lower, off) != Ordering::Less),
        }
    }
}
