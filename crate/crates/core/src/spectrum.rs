//! Spectra `X(β)`, `X(-β)` on windows, confluent rewriting, set comparison and
//! the three-way equivalence report.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algnum::FieldElement;
use crate::error::{Error, Result};
use crate::expansion::{Base, BaseTag, Digit};
use crate::integersets::{self, CodedPointSet};
use crate::words::{self, AntimorphismFixedPoint, Conjugacy, LanguageComparison, MorphismFixedPoint, Substitution};

const ITERATION_CAP: usize = 100_000;

/// A certified window of a spectrum.
#[derive(Debug, Clone)]
pub struct SpectrumWindow {
    pub base_sign: i8,
    pub digit_max: Digit,
    pub window: (FieldElement, FieldElement),
    pub points: CodedPointSet,
    /// Number of digit-extension rounds until the clipped set stabilised.
    pub string_length_cap: usize,
    /// Sorted distinct gap values, largest first; letters index into it.
    pub gap_values: Vec<FieldElement>,
    pub certificate: String,
}

fn sort_exact(points: &mut [FieldElement]) {
    points.sort_by(|a, b| a.compare(b));
}

/// Letters for a point set given by value only: the rank of each gap among
/// the distinct gap values sorted in decreasing order.
pub fn rank_gaps(points: &[FieldElement]) -> (Vec<usize>, Vec<FieldElement>) {
    let gaps: Vec<FieldElement> = points.windows(2).map(|p| &p[1] - &p[0]).collect();
    let mut distinct: Vec<FieldElement> = Vec::new();
    for g in &gaps {
        if !distinct.iter().any(|d| (d - g).is_zero()) {
            distinct.push(g.clone());
        }
    }
    distinct.sort_by(|a, b| b.compare(a));
    let letters = gaps
        .iter()
        .map(|g| distinct.iter().position(|d| (d - g).is_zero()).expect("present"))
        .collect();
    (letters, distinct)
}

fn build_window(
    base: &Base,
    sign: i8,
    digit_max: Digit,
    mut pts: Vec<FieldElement>,
    window: (FieldElement, FieldElement),
    rounds: usize,
    certificate: String,
) -> SpectrumWindow {
    let _ = base;
    sort_exact(&mut pts);
    let (letters, gap_values) = rank_gaps(&pts);
    let origin_index = pts.iter().position(FieldElement::is_zero);
    SpectrumWindow {
        base_sign: sign,
        digit_max,
        points: CodedPointSet { points: pts, letters, origin_index, window: window.clone(), strings: Vec::new() },
        window,
        string_length_cap: rounds,
        gap_values,
        certificate,
    }
}

/// Closure of `{0}` under `v ↦ b v + a` (`0 ≤ a ≤ digit_max`), clipped to
/// `[lo, hi]`. Complete when no point outside the clip region can map back in.
fn clipped_closure(
    b: &FieldElement,
    digit_max: Digit,
    lo: &FieldElement,
    hi: &FieldElement,
) -> Result<(Vec<FieldElement>, usize)> {
    let field = b.field();
    let zero = field.zero();
    let mut seen: HashSet<FieldElement> = HashSet::from([zero.clone()]);
    let mut all = vec![zero.clone()];
    let mut frontier = vec![zero];
    let mut rounds = 0;
    while !frontier.is_empty() {
        rounds += 1;
        if all.len() > ITERATION_CAP {
            return Err(Error::InvalidParams("spectrum window did not stabilise".into()));
        }
        let mut next = Vec::new();
        for v in &frontier {
            let bv = b * v;
            for a in 0..=digit_max {
                let w = bv.add_int(a as i64);
                if w.compare(lo).is_lt() || w.compare(hi).is_gt() {
                    continue;
                }
                if seen.insert(w.clone()) {
                    all.push(w.clone());
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    Ok((all, rounds))
}

/// `X^r(β) ∩ [0, bound]`: values `Σ a_j β^j` with `0 ≤ a_j ≤ r`.
pub fn x_beta_window(base: &Base, r: Digit, bound: &FieldElement) -> Result<SpectrumWindow> {
    if bound.sign() <= 0 {
        return Err(Error::InvalidParams("bound must be positive".into()));
    }
    let zero = base.field().zero();
    let (pts, rounds) = clipped_closure(base.beta(), r, &zero, bound)?;
    Ok(build_window(
        base,
        1,
        r,
        pts,
        (zero, bound.clone()),
        rounds,
        "v ↦ βv + a is increasing, so values above the bound never return".into(),
    ))
}

/// `X(-β) ∩ [lo, hi]`: values `Σ a_j (-β)^j` with `0 ≤ a_j ≤ ⌊β⌋`.
pub fn x_minus_beta_window(base: &Base, lo: &FieldElement, hi: &FieldElement) -> Result<SpectrumWindow> {
    if lo.compare(hi) != Ordering::Less {
        return Err(Error::InvalidParams("window must satisfy lo < hi".into()));
    }
    let f = base.digit_max_neg();
    let beta = base.beta();
    let denom = (beta * beta).add_int(-1);
    // [L, U] with -βU + f = L and -βL = U.
    let l = base.field().from_int(-(f as i64)).checked_div(&denom)?;
    let u = beta.mul_int(f as i64).checked_div(&denom)?;
    let mut r = base.field().one();
    for cand in [&l - lo, hi - &u] {
        if cand.compare(&r).is_gt() {
            r = cand.add_int(1);
        }
    }
    let (elo, ehi) = (&l - &r, &u + &r);
    let (all, rounds) = clipped_closure(&-beta, f, &elo, &ehi)?;
    let pts = all.into_iter().filter(|x| x.compare(lo).is_ge() && x.compare(hi).is_le()).collect();
    Ok(build_window(
        base,
        -1,
        f,
        pts,
        (lo.clone(), hi.clone()),
        rounds,
        format!(
            "closure clipped to [{}, {}], an interval whose complement is mapped into itself",
            elo.to_decimal(6),
            ehi.to_decimal(6)
        ),
    ))
}

/// One rewriting step `y m^{d-1} z → (y+1) 0^{d-1} (z-n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub position: usize,
    pub before: Vec<Digit>,
    pub after: Vec<Digit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteTrace {
    pub initial: Vec<Digit>,
    pub final_digits: Vec<Digit>,
    pub steps: Vec<RewriteStep>,
}

/// Largest digit accepted by [`normalize_confluent`].
pub fn confluent_digit_max(d: usize, m: Digit, n: Digit) -> Digit {
    if d == 1 {
        n - 1
    } else {
        m
    }
}

/// Rewrites `w` (most significant first) into the β-expansion of
/// `Σ w_j β^j` for the confluent base `(d, m, n)`, leftmost match first.
pub fn normalize_confluent(d: usize, m: Digit, n: Digit, w: &[Digit]) -> Result<(Vec<Digit>, RewriteTrace)> {
    if d == 0 || n == 0 || n > m || (d == 1 && n == 1) {
        return Err(Error::InvalidParams(format!("({d},{m},{n})")));
    }
    let top = confluent_digit_max(d, m, n);
    if let Some(bad) = w.iter().find(|&&x| x > top) {
        return Err(Error::InvalidDigits(format!("digit {bad} exceeds {top}")));
    }
    let mut cur: Vec<Digit> = w.to_vec();
    let mut steps = Vec::new();
    let span = d + 1;
    loop {
        if cur.first().is_none_or(|&x| x != 0) {
            cur.insert(0, 0);
        }
        let hit = (0..cur.len().saturating_sub(span - 1)).find(|&i| {
            let y = cur[i];
            let z = cur[i + d];
            y < m && (n..=m).contains(&z) && cur[i + 1..i + d].iter().all(|&x| x == m)
        });
        let Some(i) = hit else { break };
        let before = cur[i..i + span].to_vec();
        let mut after = vec![0; span];
        after[0] = before[0] + 1;
        after[d] = before[d] - n;
        cur[i..i + span].copy_from_slice(&after);
        steps.push(RewriteStep { position: i, before, after });
    }
    let first = cur.iter().position(|&x| x != 0).unwrap_or(cur.len() - 1);
    let out = cur[first..].to_vec();
    Ok((out.clone(), RewriteTrace { initial: w.to_vec(), final_digits: out, steps }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    FirstOnly,
    SecondOnly,
}

#[derive(Debug, Clone)]
pub enum SetComparison {
    Equal,
    Witness { point: FieldElement, side: Side },
}

/// Pointwise comparison of two sorted windows; the witness is the
/// discrepancy of smallest absolute value.
pub fn compare_sets(a: &CodedPointSet, b: &CodedPointSet) -> Result<SetComparison> {
    let same = |x: &FieldElement, y: &FieldElement| (x - y).is_zero();
    if !same(&a.window.0, &b.window.0) || !same(&a.window.1, &b.window.1) {
        return Err(Error::WindowMismatch(format!(
            "[{}, {}] vs [{}, {}]",
            a.window.0, a.window.1, b.window.0, b.window.1
        )));
    }
    let (mut i, mut j) = (0, 0);
    let mut best: Option<(FieldElement, Side)> = None;
    let mut consider = |p: &FieldElement, side: Side| {
        let better = match &best {
            None => true,
            Some((q, _)) => p.abs().compare(&q.abs()).is_lt(),
        };
        if better {
            best = Some((p.clone(), side));
        }
    };
    while i < a.points.len() || j < b.points.len() {
        let ord = match (a.points.get(i), b.points.get(j)) {
            (Some(x), Some(y)) => x.compare(y),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
            Ordering::Less => {
                consider(&a.points[i], Side::FirstOnly);
                i += 1;
            }
            Ordering::Greater => {
                consider(&b.points[j], Side::SecondOnly);
                j += 1;
            }
        }
    }
    Ok(match best {
        None => SetComparison::Equal,
        Some((point, side)) => SetComparison::Witness { point, side },
    })
}

/// Condition (1): `d_β(1) = m^{d-1} n 0^ω` with `m ≥ n ≥ 1`, and `n = m` when `d` is even.
#[derive(Debug, Clone, Serialize)]
pub struct ConfluentMembership {
    pub holds: bool,
    /// `(d, m, n)` read off `d_β(1)` when it has the confluent shape.
    pub parameters: Option<(usize, Digit, Digit)>,
    pub d_beta_one: String,
    pub reason: String,
}

pub fn confluent_membership(base: &Base) -> ConfluentMembership {
    let (pos, _) = base.classify();
    let text = pos.data.to_string();
    let shape = match (pos.tag, pos.data.periodic()) {
        (BaseTag::SimpleParry, Some(w)) => {
            let p = w.preperiod();
            let d = p.len();
            let n = p[d - 1];
            let m = if d == 1 { n } else { p[0] };
            let ok = n >= 1 && m >= n && p[..d - 1].iter().all(|&x| x == m);
            ok.then_some((d, m, n))
        }
        _ => None,
    };
    match shape {
        None => ConfluentMembership {
            holds: false,
            parameters: None,
            d_beta_one: text,
            reason: "d_β(1) is not of the form m^{d-1} n 0^ω".into(),
        },
        Some((d, m, n)) => {
            let holds = d % 2 == 1 || m == n;
            ConfluentMembership {
                holds,
                parameters: Some((d, m, n)),
                d_beta_one: text,
                reason: if holds {
                    "confluent, and d is odd or n = m".into()
                } else {
                    format!("confluent with d = {d} even and m = {m} > n = {n}")
                },
            }
        }
    }
}

/// Settings for the three-way report.
#[derive(Debug, Clone)]
pub struct ReportSettings {
    /// Window `[-radius, radius]`.
    pub radius: i64,
    pub factor_length: usize,
    pub w_cap: Option<usize>,
}

impl Default for ReportSettings {
    fn default() -> Self {
        ReportSettings { radius: 10, factor_length: 8, w_cap: None }
    }
}

#[derive(Debug, Clone)]
pub enum Condition2 {
    Conjugated { phi2: Substitution, psi2: Substitution, result: Conjugacy },
    Failed { reason: String, phi2: Option<Substitution>, psi2: Option<Substitution> },
}

impl Condition2 {
    pub fn holds(&self) -> bool {
        matches!(self, Condition2::Conjugated { result: Conjugacy::Witness { .. }, .. })
    }
}

#[derive(Debug, Clone)]
pub struct Theorem1Report {
    pub polynomial: String,
    pub condition1: ConfluentMembership,
    pub condition2: Condition2,
    pub condition3: SetComparison,
    pub spectrum: SpectrumWindow,
    pub integers: CodedPointSet,
    pub delta: Vec<FieldElement>,
    pub delta_neg: Vec<FieldElement>,
    /// Factor languages of the fixed points of `φ` and `ψ` up to the factor length.
    pub languages: Option<LanguageComparison>,
    pub settings: ReportSettings,
    pub w_cap: usize,
}

impl Theorem1Report {
    pub fn verdicts(&self) -> [bool; 3] {
        [
            self.condition1.holds,
            self.condition2.holds(),
            matches!(self.condition3, SetComparison::Equal),
        ]
    }

    /// All three conditions agree.
    pub fn consistent(&self) -> bool {
        let v = self.verdicts();
        v[0] == v[1] && v[1] == v[2]
    }

    pub fn to_json(&self) -> Value {
        let subst = |s: &Substitution| serde_json::to_value(s).expect("serialisable");
        let c2 = match &self.condition2 {
            Condition2::Conjugated { phi2, psi2, result } => match result {
                Conjugacy::Witness { word, orientation } => json!({
                    "status": "conjugated",
                    "witness": word,
                    "orientation": orientation,
                    "phi2": subst(phi2),
                    "psi2": subst(psi2),
                }),
                other => json!({
                    "status": "failed",
                    "reason": serde_json::to_value(other).expect("serialisable"),
                    "phi2": subst(phi2),
                    "psi2": subst(psi2),
                }),
            },
            Condition2::Failed { reason, phi2, psi2 } => json!({
                "status": "failed",
                "reason": reason,
                "phi2": phi2.as_ref().map(subst),
                "psi2": psi2.as_ref().map(subst),
            }),
        };
        let c3 = match &self.condition3 {
            SetComparison::Equal => json!({"status": "equal", "points": self.integers.len()}),
            SetComparison::Witness { point, side } => json!({
                "status": "witness",
                "point": point.to_json(),
                "side": match side {
                    Side::FirstOnly => "spectrum_only",
                    Side::SecondOnly => "integers_only",
                },
                "spectrum_points": self.spectrum.points.len(),
                "integer_points": self.integers.len(),
            }),
        };
        json!({
            "parameters": {
                "polynomial": self.polynomial,
                "confluent": self.condition1.parameters,
            },
            "window": [-self.settings.radius, self.settings.radius],
            "factor_length": self.settings.factor_length,
            "w_cap": self.w_cap,
            "condition1": self.condition1,
            "condition2": c2,
            "condition3": c3,
            "gaps": {
                "delta": self.delta.iter().map(FieldElement::to_json).collect::<Vec<_>>(),
                "delta_neg": self.delta_neg.iter().map(FieldElement::to_json).collect::<Vec<_>>(),
            },
            "languages": self.languages.as_ref().map(|l| json!({"equal": l.equal, "n": l.n, "radius": l.radius})),
            "certificate": self.spectrum.certificate,
            "verdicts": self.verdicts(),
            "consistent": self.consistent(),
        })
    }
}

fn condition2(base: &Base, settings: &ReportSettings) -> (Condition2, usize, Option<LanguageComparison>) {
    let (pos, _) = base.classify();
    let phi = match words::canonical_morphism_pos(&pos) {
        Ok(p) => p,
        Err(e) => return (Condition2::Failed { reason: e.to_string(), phi2: None, psi2: None }, 0, None),
    };
    let phi2 = phi.square();
    let letters = phi.alphabet() + 2;
    let psi = match words::antimorphism_neg_constructive(base, letters) {
        Ok(c) => c.substitution,
        Err(e) => {
            return (Condition2::Failed { reason: e.to_string(), phi2: Some(phi2), psi2: None }, 0, None)
        }
    };
    let languages = words::language_equal_upto(
        &MorphismFixedPoint { morphism: phi.clone(), seed: 0 },
        &AntimorphismFixedPoint { antimorphism: psi.clone(), seed: None, projection: None },
        settings.factor_length,
    )
    .ok();
    let psi2 = psi.square();
    let cap = settings.w_cap.unwrap_or(phi2.alphabet() * phi2.max_image_len().max(psi2.max_image_len()));
    let verdict = match words::conjugacy_test(&phi2, &psi2, cap) {
        Ok(result) => Condition2::Conjugated { phi2, psi2, result },
        Err(e) => Condition2::Failed { reason: e.to_string(), phi2: Some(phi2), psi2: Some(psi2) },
    };
    (verdict, cap, languages)
}

/// Evaluates the three equivalent conditions on a base.
pub fn theorem1_report(base: &Base, settings: &ReportSettings) -> Result<Theorem1Report> {
    let field = base.field();
    let lo = field.from_int(-settings.radius);
    let hi = field.from_int(settings.radius);
    let condition1 = confluent_membership(base);
    let (condition2, w_cap, languages) = condition2(base, settings);
    let spectrum = x_minus_beta_window(base, &lo, &hi)?;
    let integers = integersets::enumerate_z_minus_beta(base, &lo, &hi)?;
    let condition3 = compare_sets(&spectrum.points, &integers)?;
    let count = match condition1.parameters {
        Some((d, _, _)) => d,
        None => base.d_beta_star().map(|w| w.orbit_len()).unwrap_or(1),
    };
    let delta = (0..count).map(|k| integersets::delta_pos(base, k)).collect::<Result<_>>()?;
    let delta_neg = (0..count).map(|k| integersets::delta_neg(base, k)).collect::<Result<_>>()?;
    Ok(Theorem1Report {
        polynomial: field.minpoly().to_string(),
        condition1,
        condition2,
        condition3,
        spectrum,
        integers,
        delta,
        delta_neg,
        languages,
        settings: settings.clone(),
        w_cap,
    })
}
