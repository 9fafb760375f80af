//! Windows of `Z_β^+` and `Z_{-β}`, gap tables and gap-coding letters.

use std::cmp::Ordering;

use crate::algnum::FieldElement;
use crate::error::{Error, Result};
use crate::expansion::{Base, Digit, IncrementalChecker};

/// Sorted exact points with one letter per consecutive pair.
#[derive(Debug, Clone)]
pub struct CodedPointSet {
    pub points: Vec<FieldElement>,
    pub letters: Vec<usize>,
    pub origin_index: Option<usize>,
    pub window: (FieldElement, FieldElement),
    /// Digit strings (most significant first) of the points, when known.
    pub strings: Vec<Vec<Digit>>,
}

impl CodedPointSet {
    /// Builds a set from sorted points and equal-length digit strings, coding
    /// each pair by the greatest index at which the strings differ.
    pub fn from_strings(
        points: Vec<FieldElement>,
        strings: Vec<Vec<Digit>>,
        window: (FieldElement, FieldElement),
    ) -> Self {
        let letters = strings
            .windows(2)
            .map(|p| greatest_difference(&p[0], &p[1]).expect("distinct strings"))
            .collect();
        let origin_index = points.iter().position(FieldElement::is_zero);
        CodedPointSet { points, letters, origin_index, window, strings }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn gaps(&self) -> Vec<FieldElement> {
        self.points.windows(2).map(|p| &p[1] - &p[0]).collect()
    }

    /// Letters immediately left and right of the origin, each at most
    /// `radius` long; the left part is read toward the origin.
    pub fn letters_around_origin(&self, radius: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let o = self.origin_index?;
        let left = self.letters[o.saturating_sub(radius)..o].to_vec();
        let right = self.letters[o..(o + radius).min(self.letters.len())].to_vec();
        Some((left, right))
    }

    /// Letters relabelled through a map.
    pub fn map_letters(&self, f: impl Fn(usize) -> usize) -> Vec<usize> {
        self.letters.iter().map(|&a| f(a)).collect()
    }
}

/// Greatest index (counted from the least significant end) at which two
/// strings of equal length differ.
pub fn greatest_difference(a: &[Digit], b: &[Digit]) -> Option<usize> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).position(|(x, y)| x != y).map(|p| a.len() - 1 - p)
}

/// Gap values indexed by letter.
#[derive(Debug, Clone)]
pub struct GapTable {
    pub values: Vec<FieldElement>,
}

/// `Δ_k = Σ_{i≥1} d*_{i+k} β^{-i}`.
pub fn delta_pos(base: &Base, k: usize) -> Result<FieldElement> {
    base.value_pos(&base.d_beta_star()?.shift(k))
}

pub fn delta_table_pos(base: &Base, len: usize) -> Result<GapTable> {
    Ok(GapTable { values: (0..len).map(|k| delta_pos(base, k)).collect::<Result<_>>()? })
}

/// Canonical letter for `Δ_k`: shifts of `d*_β(1)` repeat, so `k` reduces
/// into `0..preperiod + period`.
pub fn reduce_pos_letter(base: &Base, k: usize) -> Result<usize> {
    let s = base.d_beta_star()?;
    let (a, p) = (s.preperiod().len(), s.period().len());
    Ok(if k < a { k } else { a + (k - a) % p })
}

/// Sorted `Z_β^+ ∩ [0, bound]`.
pub fn enumerate_z_beta(base: &Base, bound: &FieldElement) -> Result<CodedPointSet> {
    let field = base.field();
    if bound.sign() <= 0 {
        return Err(Error::InvalidParams("bound must be positive".into()));
    }
    let bounds = base.pos_bounds()?;
    let beta = base.beta();
    let mut len = 1usize;
    let mut pw = beta.clone();
    while pw.compare(bound).is_le() {
        pw = &pw * beta;
        len += 1;
    }
    let mut powers = vec![field.one()];
    for i in 1..=len {
        powers.push(&powers[i - 1] * beta);
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    dfs_pos(
        base,
        bound,
        &powers,
        len,
        bounds.checker(),
        field.zero(),
        &mut stack,
        &mut out,
    );
    let (strings, points): (Vec<_>, Vec<_>) = out.into_iter().unzip();
    Ok(CodedPointSet::from_strings(points, strings, (field.zero(), bound.clone())))
}

#[allow(clippy::too_many_arguments)]
fn dfs_pos(
    base: &Base,
    bound: &FieldElement,
    powers: &[FieldElement],
    len: usize,
    checker: IncrementalChecker<'_>,
    value: FieldElement,
    stack: &mut Vec<Digit>,
    out: &mut Vec<(Vec<Digit>, FieldElement)>,
) {
    let r = stack.len();
    if r == len {
        if checker.finish() {
            out.push((stack.clone(), value));
        }
        return;
    }
    for d in 0..=base.digit_max_pos() {
        let v = (&value * base.beta()).add_int(d as i64);
        if (&v * &powers[len - r - 1]).compare(bound).is_gt() {
            break;
        }
        let mut c = checker.clone();
        if !c.push(d) {
            continue;
        }
        stack.push(d);
        dfs_pos(base, bound, powers, len, c, v, stack, out);
        stack.pop();
    }
}

/// String length used to enumerate `Z_{-β}` on a window of radius `radius`:
/// smallest `K` with `β^K > (β+1) radius + β`.
pub fn neg_string_length(base: &Base, radius: &FieldElement) -> usize {
    let beta = base.beta();
    let target = &(&beta.add_int(1) * radius) + beta;
    let mut k = 0usize;
    let mut pw = base.field().one();
    while pw.compare(&target).is_le() {
        pw = &pw * beta;
        k += 1;
    }
    k
}

/// Sorted `Z_{-β} ∩ [lo, hi]`.
pub fn enumerate_z_minus_beta(base: &Base, lo: &FieldElement, hi: &FieldElement) -> Result<CodedPointSet> {
    if lo.compare(hi) != Ordering::Less {
        return Err(Error::InvalidParams("window must satisfy lo < hi".into()));
    }
    let bounds = base.neg_bounds()?;
    let field = base.field();
    let radius = if lo.abs().compare(&hi.abs()).is_gt() { lo.abs() } else { hi.abs() };
    let len = neg_string_length(base, &radius);
    let neg_beta = -base.beta();
    let mut powers = vec![field.one()];
    for i in 1..=len {
        powers.push(&powers[i - 1] * &neg_beta);
    }
    let ctx = NegCtx { base, lo, hi, powers, len, neg_beta };
    let mut out = Vec::new();
    let mut stack = Vec::new();
    ctx.dfs(bounds.checker(), field.zero(), &mut stack, &mut out);
    // Depth-first order is the alternate order on strings, which is the value
    // order when the length is even and its reverse when odd.
    if len % 2 == 1 {
        out.reverse();
    }
    debug_assert!(out.windows(2).all(|p| p[0].1.compare(&p[1].1).is_lt()));
    let (strings, points): (Vec<_>, Vec<_>) = out.into_iter().unzip();
    Ok(CodedPointSet::from_strings(points, strings, (lo.clone(), hi.clone())))
}

struct NegCtx<'a> {
    base: &'a Base,
    lo: &'a FieldElement,
    hi: &'a FieldElement,
    powers: Vec<FieldElement>,
    len: usize,
    neg_beta: FieldElement,
}

impl NegCtx<'_> {
    /// Whether completions of a prefix with value `p` can reach the window:
    /// the final value lies in `(-β)^j [p + ℓ, p + ℓ + 1]`.
    fn reachable(&self, p: &FieldElement, j: usize) -> bool {
        let a = &self.powers[j] * &(p + self.base.ell());
        let b = &self.powers[j] * &(p + self.base.ell_plus_one());
        let (min, max) = if j % 2 == 0 { (a, b) } else { (b, a) };
        max.compare(self.lo).is_ge() && min.compare(self.hi).is_le()
    }

    fn dfs(
        &self,
        checker: IncrementalChecker<'_>,
        value: FieldElement,
        stack: &mut Vec<Digit>,
        out: &mut Vec<(Vec<Digit>, FieldElement)>,
    ) {
        let r = stack.len();
        if r == self.len {
            if checker.finish() && value.compare(self.lo).is_ge() && value.compare(self.hi).is_le() {
                out.push((stack.clone(), value));
            }
            return;
        }
        let k = r + 1;
        let top = self.base.digit_max_neg();
        let digits: Box<dyn Iterator<Item = Digit>> =
            if k % 2 == 1 { Box::new((0..=top).rev()) } else { Box::new(0..=top) };
        for d in digits {
            let mut c = checker.clone();
            if !c.push(d) {
                continue;
            }
            let v = (&value * &self.neg_beta).add_int(d as i64);
            if !self.reachable(&v, self.len - k) {
                continue;
            }
            stack.push(d);
            self.dfs(c, v, stack, out);
            stack.pop();
        }
    }
}

/// Alternate-order extremal admissible string of length `k`.
fn extremal_string(base: &Base, k: usize, minimal: bool) -> Result<Vec<Digit>> {
    let bounds = base.neg_bounds()?;
    let top = base.digit_max_neg();
    fn go(
        checker: IncrementalChecker<'_>,
        k: usize,
        top: Digit,
        minimal: bool,
        stack: &mut Vec<Digit>,
    ) -> bool {
        if stack.len() == k {
            return checker.finish();
        }
        let odd = (stack.len() + 1) % 2 == 1;
        // The alternate minimum prefers large digits at odd positions.
        let descending = odd == minimal;
        let order: Vec<Digit> =
            if descending { (0..=top).rev().collect() } else { (0..=top).collect() };
        for d in order {
            let mut c = checker.clone();
            if c.push(d) {
                stack.push(d);
                if go(c, k, top, minimal, stack) {
                    return true;
                }
                stack.pop();
            }
        }
        false
    }
    let mut stack = Vec::with_capacity(k);
    if go(bounds.checker(), k, top, minimal, &mut stack) {
        Ok(stack)
    } else {
        Err(Error::Unclassified(format!("no admissible string of length {k}")))
    }
}

/// `min(k)`: the alternate-minimal admissible string of length `k`.
pub fn min_string(base: &Base, k: usize) -> Result<Vec<Digit>> {
    extremal_string(base, k, true)
}

/// `max(k)`: the alternate-maximal admissible string of length `k`.
pub fn max_string(base: &Base, k: usize) -> Result<Vec<Digit>> {
    extremal_string(base, k, false)
}

/// `Δ'_k = |(-β)^k + γ(min(k)) - γ(max(k))|`.
pub fn delta_neg(base: &Base, k: usize) -> Result<FieldElement> {
    let lo = min_string(base, k)?;
    let hi = max_string(base, k)?;
    let pw = (-base.beta()).pow(k as i64)?;
    Ok((&(&pw + &base.gamma(&lo)) - &base.gamma(&hi)).abs())
}

pub fn delta_table_neg(base: &Base, len: usize) -> Result<GapTable> {
    Ok(GapTable { values: (0..len).map(|k| delta_neg(base, k)).collect::<Result<_>>()? })
}

/// Outcome of checking consecutive differences against a gap table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapCheck {
    pub ok: bool,
    pub first_offending: Option<usize>,
}

pub fn gap_word_check(set: &CodedPointSet, table: &GapTable) -> GapCheck {
    for (j, (p, &a)) in set.points.windows(2).zip(&set.letters).enumerate() {
        let good = table.values.get(a).is_some_and(|g| (&(&p[1] - &p[0]) - g).is_zero());
        if !good {
            return GapCheck { ok: false, first_offending: Some(j) };
        }
    }
    GapCheck { ok: true, first_offending: None }
}

/// Letters merged by equal gap value; each class is named by its smallest index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterProjection {
    pub class_of: Vec<usize>,
}

impl LetterProjection {
    pub fn from_values(values: &[FieldElement]) -> Self {
        let class_of = (0..values.len())
            .map(|k| (0..=k).find(|&j| (&values[j] - &values[k]).is_zero()).expect("k matches itself"))
            .collect();
        LetterProjection { class_of }
    }

    pub fn apply(&self, letter: usize) -> Option<usize> {
        self.class_of.get(letter).copied()
    }

    /// Distinct class representatives in increasing order.
    pub fn classes(&self) -> Vec<usize> {
        let mut c = self.class_of.clone();
        c.sort_unstable();
        c.dedup();
        c
    }
}

/// Whether `β < τ`, in which case `Z_{-β} = {0}`.
pub fn below_golden_ratio(base: &Base) -> bool {
    let b = base.beta();
    (&(b * b) - b).add_int(-1).sign() < 0
}
