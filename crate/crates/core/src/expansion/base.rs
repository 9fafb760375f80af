use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::admissible::SuffixBounds;
use super::word::{format_digits, Digit, EventuallyPeriodicWord, Tail, WordOrder};
use crate::algnum::{FieldElement, NumberField};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BaseTag {
    SimpleParry,
    NonSimpleParry,
    Yrrap,
    UnknownWithinCap,
}

/// Classification of one sign of the base together with its witness word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseClass {
    pub tag: BaseTag,
    pub data: Tail,
}

/// `x = ±(integer_digits • fractional)` in base `β` or `-β`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositionedExpansion {
    pub negative: bool,
    pub integer_digits: Vec<Digit>,
    pub fractional: Tail,
}

impl PositionedExpansion {
    /// Fractional tail is `0^ω`.
    pub fn is_integer(&self) -> bool {
        matches!(&self.fractional, Tail::Periodic(w) if w.preperiod().is_empty() && w.is_finite())
    }
}

impl fmt::Display for PositionedExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.integer_digits.iter().any(|&d| d >= 10);
        if self.negative {
            write!(f, "-")?;
        }
        write!(f, "{} • {}", format_digits(&self.integer_digits, wide), self.fractional)
    }
}

/// A base `β > 1` with cached quantities for both `β` and `-β` numeration.
pub struct Base {
    field: NumberField,
    beta: FieldElement,
    neg_beta: FieldElement,
    ell: FieldElement,
    ell_plus_one: FieldElement,
    floor_beta: Digit,
    integer_beta: bool,
    cap: usize,
    d_beta_one: OnceLock<Result<Tail>>,
    d_minus_ell: OnceLock<Result<Tail>>,
    pos_bounds: OnceLock<Result<SuffixBounds>>,
    neg_bounds: OnceLock<Result<SuffixBounds>>,
}

impl fmt::Debug for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Base").field("minpoly", &self.field.minpoly().to_string()).finish()
    }
}

impl Base {
    pub fn new(field: NumberField) -> Result<Self> {
        Self::with_cap(field, DEFAULT_CAP)
    }

    pub fn with_cap(field: NumberField, cap: usize) -> Result<Self> {
        let beta = field.beta();
        let neg_beta = -&beta;
        let ell = neg_beta.checked_div(&beta.add_int(1))?;
        let ell_plus_one = ell.add_int(1);
        let fl = beta.floor();
        let floor_beta = fl
            .to_u32()
            .ok_or_else(|| Error::InvalidParams(format!("base too large: floor {fl}")))?;
        let integer_beta = (&beta - &field.from_bigint(fl)).is_zero();
        Ok(Base {
            field,
            beta,
            neg_beta,
            ell,
            ell_plus_one,
            floor_beta,
            integer_beta,
            cap: cap.max(1),
            d_beta_one: OnceLock::new(),
            d_minus_ell: OnceLock::new(),
            pos_bounds: OnceLock::new(),
            neg_bounds: OnceLock::new(),
        })
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Result<Self> {
        Self::new(NumberField::from_coeffs(coeffs)?)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    /// `ℓ = -β/(β+1)`.
    pub fn ell(&self) -> &FieldElement {
        &self.ell
    }

    pub fn ell_plus_one(&self) -> &FieldElement {
        &self.ell_plus_one
    }

    pub fn floor_beta(&self) -> Digit {
        self.floor_beta
    }

    pub fn is_integer_base(&self) -> bool {
        self.integer_beta
    }

    /// Largest digit `⌈β⌉ - 1` of the positive base.
    pub fn digit_max_pos(&self) -> Digit {
        if self.integer_beta {
            self.floor_beta - 1
        } else {
            self.floor_beta
        }
    }

    /// Largest digit `⌊β⌋` of the negative base.
    pub fn digit_max_neg(&self) -> Digit {
        self.floor_beta
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `T_β(x) = βx - ⌊βx⌋` on `[0, 1)`.
    pub fn t_beta_step(&self, x: &FieldElement) -> Result<(Digit, FieldElement)> {
        if x.sign() < 0 || x.add_int(-1).sign() >= 0 {
            return Err(Error::DomainError(format!("{x} not in [0, 1)")));
        }
        let bx = &self.beta * x;
        let d = bx.floor();
        let x2 = &bx - &self.field.from_bigint(d.clone());
        Ok((d.to_u32().expect("digit fits"), x2))
    }

    /// `T_{-β}(x) = -βx - ⌊-βx - ℓ⌋` on `[ℓ, ℓ+1)`.
    pub fn t_minus_beta_step(&self, x: &FieldElement) -> Result<(Digit, FieldElement)> {
        if x.compare(&self.ell).is_lt() || x.compare(&self.ell_plus_one).is_ge() {
            return Err(Error::DomainError(format!("{x} not in [ℓ, ℓ+1)")));
        }
        let bx = &self.neg_beta * x;
        let d = (&bx - &self.ell).floor();
        let x2 = &bx - &self.field.from_bigint(d.clone());
        Ok((d.to_u32().expect("digit fits"), x2))
    }

    fn orbit(
        &self,
        x: &FieldElement,
        cap: usize,
        step: impl Fn(&FieldElement) -> Result<(Digit, FieldElement)>,
    ) -> Result<Tail> {
        let mut seen: HashMap<FieldElement, usize> = HashMap::new();
        let mut digits = Vec::new();
        let mut cur = x.clone();
        for i in 0..=cap {
            if let Some(&j) = seen.get(&cur) {
                let period = digits[j..].to_vec();
                digits.truncate(j);
                return Ok(Tail::Periodic(EventuallyPeriodicWord::new(digits, period)?));
            }
            if i == cap {
                break;
            }
            seen.insert(cur.clone(), i);
            let (d, next) = step(&cur)?;
            digits.push(d);
            cur = next;
        }
        Ok(Tail::Truncated { prefix: digits })
    }

    /// `d_β(x)` for `x ∈ [0, 1)`.
    pub fn d_beta(&self, x: &FieldElement, cap: usize) -> Result<Tail> {
        self.orbit(x, cap, |y| self.t_beta_step(y))
    }

    /// `d_{-β}(x)` for `x ∈ [ℓ, ℓ+1)`.
    pub fn d_minus_beta(&self, x: &FieldElement, cap: usize) -> Result<Tail> {
        self.orbit(x, cap, |y| self.t_minus_beta_step(y))
    }

    /// `d_β(1) = ⌊β⌋ · d_β(β - ⌊β⌋)`.
    pub fn d_beta_one(&self) -> Result<Tail> {
        self.d_beta_one
            .get_or_init(|| {
                let rest = self.beta.add_int(-(self.floor_beta as i64));
                Ok(self.d_beta(&rest, self.cap)?.prepend(&[self.floor_beta]))
            })
            .clone()
    }

    /// `d*_β(1)`, the left limit of `d_β` at 1.
    pub fn d_beta_star(&self) -> Result<EventuallyPeriodicWord> {
        let one = self.d_beta_one()?;
        let w = one
            .periodic()
            .ok_or_else(|| Error::Unclassified(format!("d_β(1) = {one}")))?;
        if w.is_finite() {
            let mut p = w.preperiod().to_vec();
            let last = p.last_mut().expect("d_β(1) is nonzero");
            *last -= 1;
            EventuallyPeriodicWord::new(Vec::new(), p)
        } else {
            Ok(w.clone())
        }
    }

    pub fn d_minus_beta_ell(&self) -> Result<Tail> {
        self.d_minus_ell
            .get_or_init(|| self.d_minus_beta(&self.ell, self.cap))
            .clone()
    }

    /// `d*_{-β}`, the left limit of `d_{-β}` at `ℓ + 1`.
    pub fn d_minus_beta_right_star(&self) -> Result<EventuallyPeriodicWord> {
        let t = self.d_minus_beta_ell()?;
        let w = t
            .periodic()
            .ok_or_else(|| Error::Unclassified(format!("d_-β(ℓ) = {t}")))?;
        if w.is_purely_periodic() && w.period().len() % 2 == 1 {
            let mut p = vec![0];
            p.extend_from_slice(w.period());
            *p.last_mut().expect("nonempty") -= 1;
            EventuallyPeriodicWord::new(Vec::new(), p)
        } else {
            Ok(w.prepend(&[0]))
        }
    }

    pub fn classify(&self) -> (BaseClass, BaseClass) {
        let pos = match self.d_beta_one() {
            Ok(Tail::Periodic(w)) => BaseClass {
                tag: if w.is_finite() { BaseTag::SimpleParry } else { BaseTag::NonSimpleParry },
                data: Tail::Periodic(w),
            },
            Ok(t) => BaseClass { tag: BaseTag::UnknownWithinCap, data: t },
            Err(_) => BaseClass { tag: BaseTag::UnknownWithinCap, data: Tail::Truncated { prefix: vec![] } },
        };
        let neg = match self.d_minus_beta_ell() {
            Ok(Tail::Periodic(w)) => BaseClass { tag: BaseTag::Yrrap, data: Tail::Periodic(w) },
            Ok(t) => BaseClass { tag: BaseTag::UnknownWithinCap, data: t },
            Err(_) => BaseClass { tag: BaseTag::UnknownWithinCap, data: Tail::Truncated { prefix: vec![] } },
        };
        (pos, neg)
    }

    /// Lexicographic suffix bounds for the positive base.
    pub fn pos_bounds(&self) -> Result<&SuffixBounds> {
        self.pos_bounds
            .get_or_init(|| {
                Ok(SuffixBounds { order: WordOrder::Lex, lower: None, upper: self.d_beta_star()? })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Alternate-order suffix bounds for the negative base.
    pub fn neg_bounds(&self) -> Result<&SuffixBounds> {
        self.neg_bounds
            .get_or_init(|| {
                let lower = self
                    .d_minus_beta_ell()?
                    .periodic()
                    .cloned()
                    .ok_or_else(|| Error::Unclassified("d_-β(ℓ) truncated".into()))?;
                Ok(SuffixBounds {
                    order: WordOrder::Alt,
                    lower: Some(lower),
                    upper: self.d_minus_beta_right_star()?,
                })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_admissible_pos(&self, w: &EventuallyPeriodicWord) -> Result<bool> {
        Ok(self.pos_bounds()?.admits(w))
    }

    pub fn is_admissible_neg(&self, w: &EventuallyPeriodicWord) -> Result<bool> {
        Ok(self.neg_bounds()?.admits(w))
    }

    /// Admissibility of `digits · 0^ω` in base `β`.
    pub fn is_admissible_pos_digits(&self, digits: &[Digit]) -> Result<bool> {
        Ok(self.pos_bounds()?.admits_finite(digits))
    }

    /// Admissibility of `digits · 0^ω` in base `-β`.
    pub fn is_admissible_neg_digits(&self, digits: &[Digit]) -> Result<bool> {
        Ok(self.neg_bounds()?.admits_finite(digits))
    }

    /// `⟨x⟩_β`; negative inputs carry the sign flag.
    pub fn expand_real_pos(&self, x: &FieldElement, cap: usize) -> Result<PositionedExpansion> {
        let negative = x.sign() < 0;
        let mut y = x.abs();
        let inv = self.beta.inverse()?;
        let mut k = 0usize;
        while y.add_int(-1).sign() >= 0 {
            y = &y * &inv;
            k += 1;
        }
        let tail = self.d_beta(&y, cap.max(1) + k)?;
        Ok(split_tail(negative, &tail, k))
    }

    /// `⟨x⟩_{-β}` with `k` minimal such that `x/(-β)^k ∈ (ℓ, ℓ+1)`.
    pub fn expand_real_neg(&self, x: &FieldElement, cap: usize) -> Result<PositionedExpansion> {
        let inv = self.neg_beta.inverse()?;
        let mut y = x.clone();
        for k in 0..=cap.max(1) {
            if y.compare(&self.ell).is_gt() && y.compare(&self.ell_plus_one).is_lt() {
                let tail = self.d_minus_beta(&y, cap.max(1) + k)?;
                return Ok(split_tail(false, &tail, k));
            }
            y = &y * &inv;
        }
        Err(Error::BoundaryCase)
    }

    /// `γ(w) = Σ w_i (-β)^i` with `w` written most significant first.
    pub fn gamma(&self, w: &[Digit]) -> FieldElement {
        horner(&self.field, &self.neg_beta, w)
    }

    /// `Σ w_i β^i` with `w` written most significant first.
    pub fn gamma_pos(&self, w: &[Digit]) -> FieldElement {
        horner(&self.field, &self.beta, w)
    }

    /// `Σ_{i≥1} w_i β^{-i}`.
    pub fn value_pos(&self, w: &EventuallyPeriodicWord) -> Result<FieldElement> {
        tail_value(&self.field, &self.beta, w)
    }

    /// `Σ_{i≥1} w_i (-β)^{-i}`.
    pub fn value_neg(&self, w: &EventuallyPeriodicWord) -> Result<FieldElement> {
        tail_value(&self.field, &self.neg_beta, w)
    }

    /// Exact value of a positive-base expansion, when classified.
    pub fn positioned_value_pos(&self, e: &PositionedExpansion) -> Result<Option<FieldElement>> {
        let Some(frac) = e.fractional.periodic() else { return Ok(None) };
        let v = &self.gamma_pos(&e.integer_digits) + &self.value_pos(frac)?;
        Ok(Some(if e.negative { -v } else { v }))
    }

    /// Exact value of a negative-base expansion, when classified.
    pub fn positioned_value_neg(&self, e: &PositionedExpansion) -> Result<Option<FieldElement>> {
        let Some(frac) = e.fractional.periodic() else { return Ok(None) };
        Ok(Some(&self.gamma(&e.integer_digits) + &self.value_neg(frac)?))
    }
}

fn split_tail(negative: bool, tail: &Tail, k: usize) -> PositionedExpansion {
    let integer_digits = if k == 0 {
        vec![0]
    } else {
        (0..k).map(|i| tail.digit(i).unwrap_or(0)).collect()
    };
    PositionedExpansion { negative, integer_digits, fractional: tail.shift(k) }
}

fn horner(field: &NumberField, b: &FieldElement, w: &[Digit]) -> FieldElement {
    w.iter().fold(field.zero(), |acc, &d| (&acc * b).add_int(d as i64))
}

/// `(u(b) + v(b)/(b^p - 1)) / b^a` for `w = u v^ω`.
fn tail_value(field: &NumberField, b: &FieldElement, w: &EventuallyPeriodicWord) -> Result<FieldElement> {
    let u = horner(field, b, w.preperiod());
    let p = w.period().len() as i64;
    let a = w.preperiod().len() as i64;
    let v = horner(field, b, w.period()).checked_div(&b.pow(p)?.add_int(-1))?;
    Ok(&(&u + &v) * &b.pow(-a)?)
}
