use betanum::confluent::ConfluentParams;
use betanum::integersets::{self, CodedPointSet};
use betanum::spectrum::{self, ReportSettings, SetComparison, Side, Theorem1Report};
use betanum::words::{self, Conjugacy, Substitution};
use betanum::{Base, BaseTag, FieldElement, Tail};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{ReportArgs, SignArgs};
use crate::error::CliError;
use crate::report::{csv_string, Outcome};
use crate::value::{parse_value, parse_window};

type Res = Result<Outcome, CliError>;

fn tag_name(t: BaseTag) -> &'static str {
    match t {
        BaseTag::SimpleParry => "SimpleParry",
        BaseTag::NonSimpleParry => "NonSimpleParry",
        BaseTag::Yrrap => "Yrrap",
        BaseTag::UnknownWithinCap => "UnknownWithinCap",
    }
}

fn exact_csv(x: &FieldElement) -> String {
    x.coeff_strings().join(";")
}

pub fn classify(base: &Base) -> Res {
    let (pos, neg) = base.classify();
    let star = base.d_beta_star().ok().map(|w| w.to_string());
    let neg_star = base.d_minus_beta_right_star().ok().map(|w| w.to_string());
    let payload = json!({
        "beta": base.beta().to_json(),
        "integer_base": base.is_integer_base(),
        "positive": { "tag": tag_name(pos.tag), "d_beta_one": pos.data.to_string(), "d_beta_one_star": star },
        "negative": { "tag": tag_name(neg.tag), "d_minus_beta_ell": neg.data.to_string(), "d_minus_beta_right_star": neg_star },
    });
    let mut text = format!(
        "positive  {} {}\nnegative  {} {}\n",
        tag_name(pos.tag),
        pos.data,
        tag_name(neg.tag),
        neg.data
    );
    if let Some(s) = &star {
        text += &format!("d*_β(1)        {s}\n");
    }
    if let Some(s) = &neg_star {
        text += &format!("d*_{{-β}}(ℓ+1)   {s}\n");
    }
    let mut notes = Vec::new();
    if base.is_integer_base() {
        notes.push("integer base".to_string());
    }
    let unknown = pos.tag == BaseTag::UnknownWithinCap || neg.tag == BaseTag::UnknownWithinCap;
    if unknown {
        notes.push(format!("orbit not closed within cap {}", base.cap()));
    }
    Ok(Outcome { payload, text, csv: None, notes, exit: if unknown { 3 } else { 0 } })
}

pub fn expand(base: &Base, sign: SignArgs, value: &str) -> Res {
    let x = parse_value(base.field(), value)?;
    let e = if sign.neg { base.expand_real_neg(&x, base.cap())? } else { base.expand_real_pos(&x, base.cap())? };
    let round_trip = if sign.neg { base.positioned_value_neg(&e)? } else { base.positioned_value_pos(&e)? };
    let truncated = matches!(e.fractional, Tail::Truncated { .. });
    let payload = json!({
        "value": x.to_json(),
        "base_sign": if sign.neg { "negative" } else { "positive" },
        "expansion": e.to_string(),
        "structure": e,
        "round_trip": round_trip.map(|v| v == x),
    });
    let mut notes = Vec::new();
    if truncated {
        notes.push(format!("fractional tail not periodic within cap {}; prefix shown", base.cap()));
    }
    Ok(Outcome { payload, text: format!("{e}\n"), csv: None, notes, exit: if truncated { 3 } else { 0 } })
}

fn default_window(base: &Base, sign: SignArgs, w: &Option<String>) -> Result<(FieldElement, FieldElement), CliError> {
    match w {
        Some(s) => parse_window(base.field(), s),
        None if sign.neg => Ok((base.field().from_int(-10), base.field().from_int(10))),
        None => Ok((base.field().zero(), base.field().from_int(10))),
    }
}

fn positive_window(lo: &FieldElement) -> Result<(), CliError> {
    if lo.sign() < 0 {
        return Err(CliError::Usage("positive-base windows must satisfy lo ≥ 0".into()));
    }
    Ok(())
}

fn restrict(set: &CodedPointSet, lo: &FieldElement) -> (Vec<FieldElement>, Vec<Option<usize>>, Vec<Option<String>>) {
    let start = set.points.iter().position(|x| x.compare(lo).is_ge()).unwrap_or(set.points.len());
    let points = set.points[start..].to_vec();
    let letters = (start..set.points.len()).map(|i| set.letters.get(i).copied()).collect();
    let strings = (start..set.points.len())
        .map(|i| set.strings.get(i).map(|s| betanum::expansion::format_digits(s, s.iter().any(|&d| d >= 10))))
        .collect();
    (points, letters, strings)
}

fn point_rows(points: &[FieldElement], letters: &[Option<usize>], strings: &[Option<String>]) -> (Vec<Value>, Vec<Vec<String>>) {
    let mut json_rows = Vec::new();
    let mut csv_rows = Vec::new();
    for (i, x) in points.iter().enumerate() {
        let letter = letters.get(i).copied().flatten().filter(|_| i + 1 < points.len());
        let string = strings.get(i).cloned().flatten();
        json_rows.push(json!({ "index": i, "value": x.to_json(), "string": string, "letter": letter }));
        csv_rows.push(vec![
            i.to_string(),
            exact_csv(x),
            x.to_decimal(12),
            letter.map(|l| l.to_string()).unwrap_or_default(),
        ]);
    }
    (json_rows, csv_rows)
}

fn gap_word(letters: &[Option<usize>], n: usize) -> String {
    let ls: Vec<usize> = letters.iter().take(n.saturating_sub(1)).flatten().copied().collect();
    words::word_string(&ls)
}

pub fn integers(base: &Base, sign: SignArgs, window: &Option<String>) -> Res {
    let (lo, hi) = default_window(base, sign, window)?;
    let mut notes = Vec::new();
    let (set, table) = if sign.neg {
        if integersets::below_golden_ratio(base) {
            notes.push("β < golden ratio: the set of (-β)-integers is {0}".to_string());
        }
        let set = integersets::enumerate_z_minus_beta(base, &lo, &hi)?;
        let len = set.letters.iter().max().map_or(1, |m| m + 1);
        (set, integersets::delta_table_neg(base, len))
    } else {
        positive_window(&lo)?;
        let set = integersets::enumerate_z_beta(base, &hi)?;
        let len = set.letters.iter().max().map_or(1, |m| m + 1);
        (set, integersets::delta_table_pos(base, len))
    };
    let (points, letters, strings) = restrict(&set, &lo);
    let (rows, csv_rows) = point_rows(&points, &letters, &strings);
    let table = match table {
        Ok(t) => t.values.iter().map(FieldElement::to_json).collect::<Vec<_>>(),
        Err(e) => {
            notes.push(format!("gap table unavailable: {e}"));
            Vec::new()
        }
    };
    let word = gap_word(&letters, points.len());
    let payload = json!({
        "base_sign": if sign.neg { "negative" } else { "positive" },
        "window": [lo.to_json(), hi.to_json()],
        "count": points.len(),
        "points": rows,
        "gap_word": word,
        "gap_table": table,
    });
    let mut text = format!("{} points in [{}, {}]\n", points.len(), lo, hi);
    for (x, s) in points.iter().zip(&strings) {
        text += &format!("{:>20}  {}\n", x.to_decimal(12), s.clone().unwrap_or_default());
    }
    text += &format!("gap word  {word}\n");
    let csv = csv_string(&["index", "exact", "decimal", "letter"], csv_rows);
    Ok(Outcome { payload, text, csv: Some(csv), notes, exit: 0 })
}

fn comparison_json(c: &SetComparison) -> Value {
    match c {
        SetComparison::Equal => json!({ "status": "equal" }),
        SetComparison::Witness { point, side } => json!({
            "status": "witness",
            "point": point.to_json(),
            "side": match side { Side::FirstOnly => "spectrum_only", Side::SecondOnly => "integers_only" },
        }),
    }
}

pub fn spectrum(base: &Base, sign: SignArgs, window: &Option<String>, digit_max: Option<u32>) -> Res {
    let (lo, hi) = default_window(base, sign, window)?;
    let (w, integers) = if sign.neg {
        if digit_max.is_some_and(|r| r != base.digit_max_neg()) {
            return Err(CliError::Usage(format!("the negative spectrum uses digits 0..={}", base.digit_max_neg())));
        }
        (spectrum::x_minus_beta_window(base, &lo, &hi)?, integersets::enumerate_z_minus_beta(base, &lo, &hi)?)
    } else {
        positive_window(&lo)?;
        let r = digit_max.unwrap_or_else(|| base.digit_max_pos());
        (spectrum::x_beta_window(base, r, &hi)?, integersets::enumerate_z_beta(base, &hi)?)
    };
    let cmp = spectrum::compare_sets(&w.points, &integers)?;
    let (points, letters, _) = restrict(&w.points, &lo);
    let (rows, csv_rows) = point_rows(&points, &letters, &[]);
    let max_gap = points.windows(2).map(|p| &p[1] - &p[0]).max_by(|a, b| a.compare(b));
    let word = gap_word(&letters, points.len());
    let payload = json!({
        "base_sign": if sign.neg { "negative" } else { "positive" },
        "digit_max": w.digit_max,
        "window": [lo.to_json(), hi.to_json()],
        "count": points.len(),
        "points": rows,
        "gap_values": w.gap_values.iter().map(FieldElement::to_json).collect::<Vec<_>>(),
        "gap_word": word,
        "max_gap": max_gap.as_ref().map(FieldElement::to_json),
        "rounds": w.string_length_cap,
        "certificate": w.certificate,
        "comparison_with_integers": comparison_json(&cmp),
    });
    let mut text = format!("{} points in [{}, {}], digits 0..={}\n", points.len(), lo, hi, w.digit_max);
    for x in &points {
        text += &format!("{:>20}  {}\n", x.to_decimal(12), x);
    }
    text += &format!("gap word  {word}\n");
    text += &match &cmp {
        SetComparison::Equal => "equal to the integer set on this window\n".to_string(),
        SetComparison::Witness { point, side } => format!(
            "witness {} ({}) lies only in the {}\n",
            point,
            point.to_decimal(12),
            if *side == Side::FirstOnly { "spectrum" } else { "integer set" }
        ),
    };
    let csv = csv_string(&["index", "exact", "decimal", "letter"], csv_rows);
    let notes = vec![format!("window completeness: {}", w.certificate)];
    Ok(Outcome { payload, text, csv: Some(csv), notes, exit: 0 })
}

fn subst_json(s: &Substitution) -> Value {
    json!({
        "direction": format!("{:?}", s.direction()).to_lowercase(),
        "images": s.images().iter().map(|w| words::word_string(w)).collect::<Vec<_>>(),
    })
}

fn conjugacy_json(c: &Conjugacy) -> Value {
    serde_json::to_value(c).expect("serialisable")
}

pub fn morphism(base: &Base, confluent: Option<ConfluentParams>, letters: Option<usize>, w_cap: Option<usize>) -> Res {
    let (pos, _) = base.classify();
    let phi = words::canonical_morphism_pos(&pos)?;
    let letters = letters.unwrap_or(phi.alphabet() + 2);
    let psi = words::antimorphism_neg_constructive(base, letters)?;
    let (phi2, psi2) = (phi.square(), psi.substitution.square());
    let cap = w_cap.unwrap_or(phi2.alphabet() * phi2.max_image_len().max(psi2.max_image_len()));
    let conj = words::conjugacy_test(&phi2, &psi2, cap);
    let closed = confluent
        .filter(|p| p.d >= 2)
        .map(|p| words::antimorphism_neg_confluent(p.d, p.m as usize, p.n as usize))
        .transpose()?;
    let payload = json!({
        "phi": subst_json(&phi),
        "psi": subst_json(&psi.substitution),
        "psi_representatives": psi.representatives,
        "psi_closed_form": closed.as_ref().map(subst_json),
        "phi2": subst_json(&phi2),
        "psi2": subst_json(&psi2),
        "w_cap": cap,
        "conjugacy": match &conj {
            Ok(c) => conjugacy_json(c),
            Err(e) => json!({ "status": "failed", "reason": e.to_string() }),
        },
    });
    let mut text = format!("φ   {phi}\nψ   {}\nφ²  {phi2}\nψ²  {psi2}\n", psi.substitution);
    if let Some(c) = &closed {
        text += &format!("ψ closed form  {c}\n");
    }
    text += &match &conj {
        Ok(Conjugacy::Witness { word, orientation }) => {
            format!("conjugated, w = {} ({orientation:?})\n", words::word_string(word))
        }
        Ok(Conjugacy::NotFoundWithinCap { cap }) => format!("no witness up to length {cap}\n"),
        Ok(Conjugacy::LengthObstruction { letter }) => format!("not conjugated: image lengths differ at letter {letter}\n"),
        Err(e) => format!("not conjugated: {e}\n"),
    };
    Ok(Outcome { payload, text, csv: None, notes: Vec::new(), exit: 0 })
}

fn settings(r: &ReportArgs) -> ReportSettings {
    ReportSettings { radius: r.radius, factor_length: r.factor_length, w_cap: r.w_cap }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_text(r: &Theorem1Report) -> String {
    let [c1, c2, c3] = r.verdicts();
    let j = r.to_json();
    let mut t = format!("condition 1 (confluent class): {}  {}\n", yes_no(c1), r.condition1.reason);
    let c2_detail = match j["condition2"]["witness"].as_array() {
        Some(w) => format!(
            "witness w = {} ({})",
            w.iter().map(|x| x.to_string()).collect::<String>(),
            j["condition2"]["orientation"].as_str().unwrap_or("")
        ),
        None => format!("{}", j["condition2"]["reason"]),
    };
    t += &format!("condition 2 (φ² ~ ψ²):         {}  {c2_detail}\n", yes_no(c2));
    let c3_detail = match &r.condition3 {
        SetComparison::Equal => format!("X(-β) = Z_(-β) on [-{0}, {0}]", r.settings.radius),
        SetComparison::Witness { point, .. } => format!("witness {point} ≈ {}", point.to_decimal(12)),
    };
    t += &format!("condition 3 (X(-β) = Z_(-β)):  {}  {c3_detail}\n", yes_no(c3));
    for (k, (a, b)) in r.delta.iter().zip(&r.delta_neg).enumerate() {
        t += &format!("Δ_{k} = {a}    Δ'_{k} = {b}\n");
    }
    t += if r.consistent() { "consistent\n" } else { "INCONSISTENT\n" };
    t
}

pub fn verify(base: &Base, r: &ReportArgs) -> Res {
    let report = spectrum::theorem1_report(base, &settings(r))?;
    let mut notes = vec![format!(
        "condition 3 is certified on the window only; equality there is evidence, a witness is a refutation"
    )];
    if !report.consistent() {
        notes.push("verdicts disagree".into());
    }
    Ok(Outcome {
        payload: report.to_json(),
        text: report_text(&report),
        csv: None,
        notes,
        exit: if report.consistent() { 0 } else { 6 },
    })
}

pub fn sweep(max_d: usize, max_m: u32, r: &ReportArgs) -> Res {
    let grid = ConfluentParams::grid(max_d, max_m);
    let s = settings(r);
    let results: Vec<Result<(ConfluentParams, Theorem1Report), CliError>> = grid
        .par_iter()
        .map(|&p| {
            let base = betanum::confluent::confluent_base(p)?;
            Ok((p, spectrum::theorem1_report(&base, &s)?))
        })
        .collect();
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    let mut text = String::new();
    let mut inconsistent = Vec::new();
    for res in results {
        let (p, rep) = res?;
        let j = rep.to_json();
        let v = rep.verdicts();
        let witness = j["condition2"]["witness"]
            .as_array()
            .map(|w| w.iter().map(|x| x.to_string()).collect::<String>());
        let point = match &rep.condition3 {
            SetComparison::Witness { point, .. } => Some(point.to_string()),
            SetComparison::Equal => None,
        };
        if !rep.consistent() {
            inconsistent.push(p.to_string());
        }
        text += &format!(
            "{p:<9} expected {:<3} verdicts {}/{}/{}  {}\n",
            yes_no(p.in_class()),
            yes_no(v[0]),
            yes_no(v[1]),
            yes_no(v[2]),
            if rep.consistent() { "consistent" } else { "INCONSISTENT" }
        );
        csv_rows.push(vec![
            p.d.to_string(),
            p.m.to_string(),
            p.n.to_string(),
            yes_no(p.in_class()).into(),
            yes_no(v[0]).into(),
            yes_no(v[1]).into(),
            yes_no(v[2]).into(),
            rep.consistent().to_string(),
            witness.clone().unwrap_or_default(),
            point.clone().unwrap_or_default(),
        ]);
        rows.push(json!({
            "d": p.d, "m": p.m, "n": p.n,
            "expected": p.in_class(),
            "verdicts": v,
            "consistent": rep.consistent(),
            "witness": witness,
            "witness_point": point,
        }));
    }
    let csv = csv_string(
        &["d", "m", "n", "expected", "condition1", "condition2", "condition3", "consistent", "witness", "witness_point"],
        csv_rows,
    );
    let notes = if inconsistent.is_empty() {
        Vec::new()
    } else {
        vec![format!("inconsistent at radius {}: {}", r.radius, inconsistent.join(", "))]
    };
    let exit = if inconsistent.is_empty() { 0 } else { 6 };
    Ok(Outcome {
        payload: json!({ "radius": r.radius, "factor_length": r.factor_length, "rows": rows }),
        text,
        csv: Some(csv),
        notes,
        exit,
    })
}
