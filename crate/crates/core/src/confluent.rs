//! Closed forms for confluent Parry bases, roots `> 1` of
//! `x^d - m x^{d-1} - ... - m x - n` with `m ≥ n ≥ 1`.

use serde::Serialize;

use crate::algnum::{FieldElement, NumberField};
use crate::error::{Error, Result};
use crate::expansion::{Base, Digit, EventuallyPeriodicWord, PositionedExpansion, Tail};
use crate::words::Substitution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ConfluentParams {
    pub d: usize,
    pub m: Digit,
    pub n: Digit,
}

impl ConfluentParams {
    /// Rejects parameters outside `d ≥ 1, m ≥ n ≥ 1`, and `d = 1, n = 1` (root equal to one).
    pub fn new(d: usize, m: Digit, n: Digit) -> Result<Self> {
        if d == 0 || n == 0 || m < n {
            return Err(Error::InvalidParams(format!("need d ≥ 1 and m ≥ n ≥ 1, got ({d},{m},{n})")));
        }
        if d == 1 && n == 1 {
            return Err(Error::NoRootAboveOne);
        }
        Ok(ConfluentParams { d, m, n })
    }

    /// `d` odd or `m = n`.
    pub fn in_class(&self) -> bool {
        self.d % 2 == 1 || self.m == self.n
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> Vec<i64> {
        let mut c = vec![-(self.n as i64)];
        c.extend(std::iter::repeat(-(self.m as i64)).take(self.d - 1));
        c.push(1);
        c
    }

    /// All valid triples with `d ≤ max_d`, `m ≤ max_m`.
    pub fn grid(max_d: usize, max_m: Digit) -> Vec<ConfluentParams> {
        let mut out = Vec::new();
        for d in 1..=max_d {
            for m in 1..=max_m {
                for n in 1..=m {
                    if let Ok(p) = ConfluentParams::new(d, m, n) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }
}

impl std::fmt::Display for ConfluentParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.d, self.m, self.n)
    }
}

pub fn confluent_field(p: ConfluentParams) -> NumberField {
    NumberField::from_coeffs(&p.coeffs()).expect("confluent polynomial has a root above one")
}

pub fn confluent_base(p: ConfluentParams) -> Result<Base> {
    Base::new(confluent_field(p))
}

/// `m^{d-1} n 0^ω`.
pub fn expected_d_beta_one(p: ConfluentParams) -> EventuallyPeriodicWord {
    let mut pre = vec![p.m; p.d - 1];
    pre.push(p.n);
    EventuallyPeriodicWord::finite(&pre)
}

/// `(m0)^{k-1} m (m-n)^ω` for `d = 2k`, `(m0)^k n^ω` for `d = 2k+1`.
pub fn expected_d_minus_beta_ell(p: ConfluentParams) -> EventuallyPeriodicWord {
    let k = p.d / 2;
    let mut pre = Vec::new();
    let tail = if p.d % 2 == 0 {
        for _ in 0..k - 1 {
            pre.extend([p.m, 0]);
        }
        pre.push(p.m);
        p.m - p.n
    } else {
        for _ in 0..k {
            pre.extend([p.m, 0]);
        }
        p.n
    };
    EventuallyPeriodicWord::new(pre, vec![tail]).expect("nonempty period")
}

/// `Δ_i = m(1/β + ... + 1/β^{d-1-i}) + n/β^{d-i}`.
pub fn expected_delta(base: &Base, p: ConfluentParams, i: usize) -> Result<FieldElement> {
    if i >= p.d {
        return Err(Error::IndexOutOfRange { index: i, len: p.d });
    }
    let inv = base.beta().inverse()?;
    let mut acc = base.field().zero();
    let mut pow = base.field().one();
    for _ in 1..p.d - i {
        pow = &pow * &inv;
        acc = &acc + &pow.mul_int(p.m as i64);
    }
    pow = &pow * &inv;
    Ok(&acc + &pow.mul_int(p.n as i64))
}

/// Identity on `0..d-2`, `d-1 ↦ 0 (d-1)`.
pub fn pi_projection(d: usize) -> Result<Substitution> {
    if d < 2 {
        return Err(Error::InvalidParams("projection needs d ≥ 2".into()));
    }
    let mut images: Vec<Vec<usize>> = (0..d - 1).map(|i| vec![i]).collect();
    images.push(vec![0, d - 1]);
    Substitution::morphism(images)
}

fn ell_digits(base: &Base, count: usize) -> Result<Vec<Digit>> {
    let tail = base.d_minus_beta_ell()?;
    (0..count)
        .map(|i| {
            tail.digit(i)
                .ok_or_else(|| Error::Unclassified(format!("ℓ-expansion known to {i} digits only")))
        })
        .collect()
}

/// The value `(-β)^{j+1} + l_1(-β)^j + Σ (l_i - l_{i-1})(-β)^{j+1-i} - l_j` built
/// from the first `j` digits of `d_{-β}(ℓ)`.
pub fn transform_lemma_value(base: &Base, j: usize) -> Result<FieldElement> {
    if j == 0 {
        return Err(Error::InvalidParams("j must be at least 1".into()));
    }
    let l = ell_digits(base, j)?;
    let nb = -base.beta();
    // Horner in -β over coefficients 1, l_1, l_2 - l_1, ..., l_j - l_{j-1}, -l_j.
    let mut acc = base.field().one();
    let mut prev = 0i64;
    for &li in &l {
        let li = li as i64;
        acc = (&acc * &nb).add_int(li - prev);
        prev = li;
    }
    Ok((&acc * &nb).add_int(-prev))
}

/// Exact check that [`transform_lemma_value`] lies in `[-β, 1)`.
pub fn check_transform_lemma(base: &Base, j: usize) -> Result<bool> {
    let v = transform_lemma_value(base, j)?;
    let lo = -base.beta();
    Ok(v.compare(&lo).is_ge() && v.compare(&base.field().one()).is_lt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PrefixRule {
    C1,
    C2,
    C3,
    C4,
}

/// One instantiated inequality: the rule, its parameters and whether it holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixCheck {
    pub rule: PrefixRule,
    pub k: usize,
    /// `a`, `b` or `c` depending on the rule.
    pub digit: Option<Digit>,
    pub t: Option<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixReport {
    pub m: Digit,
    pub prefix: Vec<Digit>,
    /// `false` when `d_{-β}(ℓ)` does not start with `m 0`.
    pub applicable: bool,
    pub checks: Vec<PrefixCheck>,
}

impl PrefixReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// `Σ_{i=lo}^{hi} β^i`, zero when `lo > hi`.
fn power_sum(base: &Base, lo: usize, hi: usize) -> Result<FieldElement> {
    let mut acc = base.field().zero();
    for i in lo..=hi {
        acc = &acc + &base.beta().pow(i as i64)?;
    }
    Ok(acc)
}

/// Instantiates the four prefix inequalities with `m = ⌊β⌋` for every `k ≥ 1`
/// such that `(m0)^k` prefixes `d_{-β}(ℓ)` within `depth` digits.
pub fn check_prefix_inequalities(base: &Base, depth: usize) -> Result<PrefixReport> {
    let m = base.digit_max_neg();
    let l = ell_digits(base, depth)?;
    let b = base.beta();
    let pw = |e: usize| b.pow(e as i64);
    let mi = m as i64;
    let mut checks = Vec::new();
    let mut k = 1;
    while 2 * k <= l.len() && l[2 * k - 2] == m && l[2 * k - 1] == 0 {
        let rest = &l[2 * k..];
        // (c1): -β^{2k+1} + m(β^{2k} + ... + 1) < m + 1
        let lhs = &power_sum(base, 0, 2 * k)?.mul_int(mi) - &pw(2 * k + 1)?;
        checks.push(PrefixCheck {
            rule: PrefixRule::C1,
            k,
            digit: None,
            t: None,
            holds: lhs.compare(&base.field().from_int(mi + 1)).is_lt(),
        });
        if let Some(&a) = rest.first() {
            if a < m {
                // (c2): -β^{2k+2} + m(β^{2k+1} + ... + β^2) + aβ + a > -1
                let lhs = &(&power_sum(base, 2, 2 * k + 1)?.mul_int(mi) - &pw(2 * k + 2)?)
                    + &b.add_int(1).mul_int(a as i64);
                checks.push(PrefixCheck {
                    rule: PrefixRule::C2,
                    k,
                    digit: Some(a),
                    t: None,
                    holds: lhs.compare(&base.field().from_int(-1)).is_gt(),
                });
            }
        }
        if rest.len() >= 2 && rest[0] == m && rest[1] > 0 {
            // (c3): -β^{2k+2} + m(β^{2k+1} + ... + 1) - b ≥ b/β - 1
            let bd = rest[1] as i64;
            let lhs = (&power_sum(base, 0, 2 * k + 1)?.mul_int(mi) - &pw(2 * k + 2)?).add_int(-bd);
            let rhs = b.inverse()?.mul_int(bd).add_int(-1);
            checks.push(PrefixCheck { rule: PrefixRule::C3, k, digit: Some(bd as Digit), t: None, holds: lhs.compare(&rhs).is_ge() });
        }
        let zeros = rest.iter().take_while(|&&x| x == 0).count();
        if zeros % 2 == 1 && zeros < rest.len() {
            // (c4): β^{2k} - m(β^{2k-1} + ... + 1) > -c/β^{2t} - (c+1)/β^{2t+1}
            let t = zeros.div_ceil(2);
            let c = rest[zeros] as i64;
            let lhs = &pw(2 * k)? - &power_sum(base, 0, 2 * k - 1)?.mul_int(mi);
            let rhs = -&(&pw(2 * t)?.inverse()?.mul_int(c) + &pw(2 * t + 1)?.inverse()?.mul_int(c + 1));
            checks.push(PrefixCheck { rule: PrefixRule::C4, k, digit: Some(c as Digit), t: Some(t), holds: lhs.compare(&rhs).is_gt() });
        }
        k += 1;
    }
    Ok(PrefixReport { m, applicable: !checks.is_empty(), prefix: l, checks })
}

/// Number whose `(-β)`-expansion is infinite, with its expected expansion.
#[derive(Debug, Clone)]
pub struct FinitenessCounterexample {
    pub value: FieldElement,
    pub expansion: PositionedExpansion,
}

/// The three displayed families of sums of `(-β)`-integers with infinite expansions:
/// `m+1` for `d = 2k ≥ 4, n = m`; `-β + m + 1` for `d = 3, m > n`; `-β + m + 1` for
/// `d = 2k + 1 ≥ 5, m > n`.
pub fn finiteness_counterexample(base: &Base, p: ConfluentParams) -> Result<FinitenessCounterexample> {
    let (m, n) = (p.m, p.n);
    let k = p.d / 2;
    let (value, integer, pre, period) = if p.d % 2 == 0 && p.d >= 4 && m == n {
        let z = vec![0; 2 * k - 3];
        let pre = [z.clone(), vec![1, 1, m]].concat();
        let per = [z, vec![1, 1, 0]].concat();
        (base.field().from_int(m as i64 + 1), vec![1, m, 0], pre, per)
    } else if p.d == 3 && m > n {
        let pre = vec![0, m - n + 1, m - n + 1, 1];
        ((-base.beta()).add_int(m as i64 + 1), vec![0], pre, vec![n + 1])
    } else if p.d % 2 == 1 && p.d >= 5 && m > n {
        let pre = [vec![0; 2 * k - 1], vec![m - n + 1, m - n + 1, 0]].concat();
        let per = [vec![0; 2 * k - 3], vec![1, n + 1, n]].concat();
        ((-base.beta()).add_int(m as i64 + 1), vec![0], pre, per)
    } else {
        return Err(Error::OutOfClass(format!("{p} is not in a displayed family")));
    };
    let fractional = Tail::Periodic(EventuallyPeriodicWord::new(pre, period)?);
    Ok(FinitenessCounterexample {
        value,
        expansion: PositionedExpansion { negative: false, integer_digits: integer, fractional },
    })
}
