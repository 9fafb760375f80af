//! Substitutions, canonical (anti)morphisms, fixed points, conjugacy and factor languages.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{Base, BaseClass, BaseTag};
use crate::integersets::{self, LetterProjection};

pub type Letter = usize;
pub type Word = Vec<Letter>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Morphism,
    Antimorphism,
}

impl Direction {
    fn then(self, other: Direction) -> Direction {
        if self == other {
            Direction::Morphism
        } else {
            Direction::Antimorphism
        }
    }
}

/// A substitution on `{0, …, alphabet-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Substitution {
    alphabet: usize,
    direction: Direction,
    images: Vec<Word>,
}

impl Substitution {
    pub fn new(alphabet: usize, images: Vec<Word>, direction: Direction) -> Result<Self> {
        if images.len() != alphabet {
            return Err(Error::InvalidParams(format!(
                "{} images for an alphabet of size {alphabet}",
                images.len()
            )));
        }
        if let Some(bad) = images.iter().flatten().find(|&&a| a >= alphabet) {
            return Err(Error::InvalidParams(format!("letter {bad} outside the alphabet")));
        }
        Ok(Substitution { alphabet, direction, images })
    }

    pub fn morphism(images: Vec<Word>) -> Result<Self> {
        Self::new(images.len(), images, Direction::Morphism)
    }

    pub fn antimorphism(images: Vec<Word>) -> Result<Self> {
        Self::new(images.len(), images, Direction::Antimorphism)
    }

    pub fn identity(alphabet: usize) -> Self {
        Substitution { alphabet, direction: Direction::Morphism, images: (0..alphabet).map(|a| vec![a]).collect() }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, a: Letter) -> &[Letter] {
        &self.images[a]
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_non_erasing(&self) -> bool {
        self.images.iter().all(|w| !w.is_empty())
    }

    /// Image of a finite word; an antimorphism reverses the order of images.
    pub fn apply(&self, w: &[Letter]) -> Word {
        let mut out = Vec::new();
        match self.direction {
            Direction::Morphism => w.iter().for_each(|&a| out.extend_from_slice(&self.images[a])),
            Direction::Antimorphism => w.iter().rev().for_each(|&a| out.extend_from_slice(&self.images[a])),
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(self.alphabet, other.alphabet));
        }
        let images = other.images.iter().map(|w| self.apply(w)).collect();
        Ok(Substitution {
            alphabet: self.alphabet,
            direction: self.direction.then(other.direction),
            images,
        })
    }

    pub fn square(&self) -> Substitution {
        self.compose(self).expect("same alphabet")
    }

    /// Image of a pointed bi-infinite window; an antimorphism swaps the sides.
    pub fn apply_pointed(&self, w: &PointedBiWord) -> PointedBiWord {
        match self.direction {
            Direction::Morphism => PointedBiWord { left: self.apply(&w.left), right: self.apply(&w.right) },
            Direction::Antimorphism => PointedBiWord { left: self.apply(&w.right), right: self.apply(&w.left) },
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(a, w)| format!("{a}→{}", word_string(w)))
            .collect();
        let kind = match self.direction {
            Direction::Morphism => "morphism",
            Direction::Antimorphism => "antimorphism",
        };
        write!(f, "{kind} {}", parts.join(", "))
    }
}

/// Letters written without separators, or comma separated past 9.
pub fn word_string(w: &[Letter]) -> String {
    let wide = w.iter().any(|&a| a >= 10);
    let parts: Vec<String> = w.iter().map(|a| a.to_string()).collect();
    if w.is_empty() {
        "ε".into()
    } else {
        parts.join(if wide { "," } else { "" })
    }
}

/// Window `… left | right …` of a two-sided word; `left` ends at the marker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointedBiWord {
    pub left: Word,
    pub right: Word,
}

impl PointedBiWord {
    pub fn truncate(&self, radius: usize) -> PointedBiWord {
        PointedBiWord {
            left: self.left[self.left.len().saturating_sub(radius)..].to_vec(),
            right: self.right[..radius.min(self.right.len())].to_vec(),
        }
    }

    pub fn concat(&self) -> Word {
        let mut w = self.left.clone();
        w.extend_from_slice(&self.right);
        w
    }
}

impl fmt::Display for PointedBiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", word_string(&self.left), word_string(&self.right))
    }
}

/// The canonical morphism `φ` read off `d_β(1)`.
pub fn canonical_morphism_pos(class: &BaseClass) -> Result<Substitution> {
    let w = match (&class.tag, class.data.periodic()) {
        (BaseTag::SimpleParry | BaseTag::NonSimpleParry, Some(w)) => w,
        _ => return Err(Error::Unclassified(format!("d_β(1) = {}", class.data))),
    };
    let zeros = |c: u32| vec![0; c as usize];
    let mut images = Vec::new();
    if w.is_finite() {
        let d = w.preperiod();
        let k = d.len();
        for (i, &di) in d.iter().enumerate() {
            let mut img = zeros(di);
            if i + 1 < k {
                img.push(i + 1);
            }
            images.push(img);
        }
    } else {
        let k = w.preperiod().len();
        let p = w.period().len();
        for i in 0..k + p {
            let mut img = zeros(w.digit(i));
            img.push(if i + 1 < k + p { i + 1 } else { k });
            images.push(img);
        }
    }
    Substitution::morphism(images)
}

/// The antimorphism `ψ(i) = 0^m (i+1)`, `ψ(d-1) = 0^n`, valid when `d` is odd or `m = n`.
pub fn antimorphism_neg_confluent(d: usize, m: usize, n: usize) -> Result<Substitution> {
    if d == 0 || n == 0 || n > m {
        return Err(Error::InvalidParams(format!("({d},{m},{n})")));
    }
    if d % 2 == 0 && m != n {
        return Err(Error::OutOfClass(format!("d = {d} even with m = {m} > n = {n}")));
    }
    let mut images: Vec<Word> = (0..d - 1)
        .map(|i| {
            let mut w = vec![0; m];
            w.push(i + 1);
            w
        })
        .collect();
    images.push(vec![0; n]);
    Substitution::antimorphism(images)
}

/// `ψ` built from the gap structure of `Z_{-β}`, projected to the classes of
/// equal gap length.
#[derive(Debug, Clone)]
pub struct ConstructiveAntimorphism {
    pub substitution: Substitution,
    /// Index `k` ↦ class representative (smallest index with the same gap).
    pub projection: LetterProjection,
    /// Class representatives; position = projected letter.
    pub representatives: Vec<usize>,
    /// Unprojected images for `k < letters`.
    pub raw_images: Vec<Word>,
}

impl ConstructiveAntimorphism {
    /// Projected letter of an unprojected index.
    pub fn letter_of(&self, k: usize) -> Option<Letter> {
        let rep = self.projection.apply(k)?;
        self.representatives.iter().position(|&r| r == rep)
    }
}

/// Builds `ψ(k) = S_k (k+1) R̃_k` (k even) and `R_k (k+1) S̃_k` (k odd) for
/// `k < letters`.
pub fn antimorphism_neg_constructive(base: &Base, letters: usize) -> Result<ConstructiveAntimorphism> {
    if letters == 0 {
        return Err(Error::InvalidParams("letter cut must be positive".into()));
    }
    let mins: Vec<_> = (0..=letters).map(|k| integersets::min_string(base, k)).collect::<Result<_>>()?;
    let maxs: Vec<_> = (0..=letters).map(|k| integersets::max_string(base, k)).collect::<Result<_>>()?;
    let segment = |from: &[u32], to: &[u32]| -> Result<Word> {
        let mut start = from.to_vec();
        start.push(0);
        let a = base.gamma(&start);
        let b = base.gamma(to);
        let (lo, hi) = if a.compare(&b).is_le() { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if (&hi - &lo).is_zero() {
            return Ok(Vec::new());
        }
        let set = integersets::enumerate_z_minus_beta(base, &lo, &hi)?;
        let mut w = set.letters.clone();
        if a.compare(&b).is_gt() {
            w.reverse();
        }
        Ok(w)
    };
    let mut raw_images = Vec::with_capacity(letters);
    for k in 0..letters {
        let s = segment(&mins[k], &mins[k + 1])?;
        let r = segment(&maxs[k], &maxs[k + 1])?;
        let (first, last) = if k % 2 == 0 { (s, r) } else { (r, s) };
        let mut img = first;
        img.push(k + 1);
        img.extend(last.iter().rev());
        raw_images.push(img);
    }
    let top = raw_images.iter().flatten().copied().max().unwrap_or(0).max(letters);
    let table = integersets::delta_table_neg(base, top + 1)?;
    let projection = LetterProjection::from_values(&table.values);
    let representatives: Vec<usize> = {
        let mut r: Vec<usize> = (0..letters).map(|k| projection.class_of[k]).collect();
        r.sort_unstable();
        r.dedup();
        r
    };
    let letter_of = |k: usize| representatives.iter().position(|&r| r == projection.class_of[k]);
    let mut images: Vec<Option<Word>> = vec![None; representatives.len()];
    for (k, raw) in raw_images.iter().enumerate() {
        let projected: Option<Word> = raw.iter().map(|&a| letter_of(a)).collect();
        let projected = projected.ok_or_else(|| {
            Error::AlphabetOverflow(format!("image of {k} uses a gap outside the first {letters} indices"))
        })?;
        let slot = letter_of(k).expect("k < letters");
        match &images[slot] {
            None => images[slot] = Some(projected),
            Some(prev) if *prev == projected => {}
            Some(prev) => {
                return Err(Error::AlphabetOverflow(format!(
                    "indices with equal gaps have different images {} and {}",
                    word_string(prev),
                    word_string(&projected)
                )))
            }
        }
    }
    let images = images.into_iter().map(|w| w.expect("every class has a member")).collect();
    Ok(ConstructiveAntimorphism {
        substitution: Substitution::antimorphism(images)?,
        projection,
        representatives,
        raw_images,
    })
}

/// Prefix of length `len` of the fixed point of a morphism starting with `seed`.
pub fn fixed_point_window(s: &Substitution, seed: Letter, len: usize) -> Result<Word> {
    if s.direction != Direction::Morphism || seed >= s.alphabet || s.image(seed).first() != Some(&seed) {
        return Err(Error::NoFixedSeed(format!("{s} has no fixed point starting with {seed}")));
    }
    let mut w = vec![seed];
    while w.len() < len {
        let next = s.apply(&w);
        if next.len() <= w.len() {
            return Err(Error::NoFixedSeed(format!("{s} does not grow from {seed}")));
        }
        w = next;
    }
    w.truncate(len);
    Ok(w)
}

/// Seed pairs `(a|b)` with `ψ(a)` starting by `b` and `ψ(b)` ending by `a`.
pub fn antimorphism_seeds(psi: &Substitution) -> Vec<(Letter, Letter)> {
    let mut out = Vec::new();
    for b in 0..psi.alphabet {
        for a in 0..psi.alphabet {
            if psi.image(a).first() == Some(&b) && psi.image(b).last() == Some(&a) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Window of the two-sided fixed point of an antimorphism around the seed
/// pair, iterating its square until both sides reach `radius`.
pub fn fixed_point_biword(psi: &Substitution, seed: Option<(Letter, Letter)>, radius: usize) -> Result<PointedBiWord> {
    if psi.direction != Direction::Antimorphism {
        return Err(Error::NoFixedSeed("expected an antimorphism".into()));
    }
    let (a, b) = match seed {
        Some(p) => p,
        None => *antimorphism_seeds(psi)
            .first()
            .ok_or_else(|| Error::NoFixedSeed(format!("{psi} admits no seed pair")))?,
    };
    if psi.image(a).first() != Some(&b) || psi.image(b).last() != Some(&a) {
        return Err(Error::NoFixedSeed(format!("({a}|{b}) is not a seed of {psi}")));
    }
    let sq = psi.square();
    let mut w = PointedBiWord { left: vec![a], right: vec![b] };
    while w.left.len() < radius || w.right.len() < radius {
        let next = sq.apply_pointed(&w);
        if next.left.len() <= w.left.len() && next.right.len() <= w.right.len() {
            return Err(Error::NoFixedSeed(format!("{psi} does not grow around ({a}|{b})")));
        }
        w = next;
    }
    Ok(w.truncate(radius))
}

/// Side on which the conjugating word sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `s(a) w = w t(a)`.
    Right,
    /// `w s(a) = t(a) w`.
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Conjugacy {
    Witness { word: Word, orientation: Orientation },
    NotFoundWithinCap { cap: usize },
    LengthObstruction { letter: Letter },
}

impl Conjugacy {
    pub fn witness(&self) -> Option<(&Word, Orientation)> {
        match self {
            Conjugacy::Witness { word, orientation } => Some((word, *orientation)),
            _ => None,
        }
    }
}

fn verifies(s: &Substitution, t: &Substitution, w: &[Letter], o: Orientation) -> bool {
    (0..s.alphabet).all(|a| {
        let (x, y) = match o {
            Orientation::Right => ([s.image(a), w].concat(), [w, t.image(a)].concat()),
            Orientation::Left => ([w, s.image(a)].concat(), [t.image(a), w].concat()),
        };
        x == y
    })
}

/// Shortest `w` with `|w| ≤ cap` conjugating two morphisms.
pub fn conjugacy_test(s: &Substitution, t: &Substitution, cap: usize) -> Result<Conjugacy> {
    if s.alphabet != t.alphabet {
        return Err(Error::AlphabetMismatch(s.alphabet, t.alphabet));
    }
    if s.direction != Direction::Morphism || t.direction != Direction::Morphism {
        return Err(Error::InvalidParams("conjugacy is tested between morphisms".into()));
    }
    if let Some(a) = (0..s.alphabet).find(|&a| s.image(a).len() != t.image(a).len()) {
        return Ok(Conjugacy::LengthObstruction { letter: a });
    }
    if s.alphabet == 0 {
        return Ok(Conjugacy::Witness { word: Vec::new(), orientation: Orientation::Right });
    }
    let power = |x: &[Letter], len: usize| -> Word { x.iter().copied().cycle().take(len).collect() };
    for len in 0..=cap {
        if s.image(0).is_empty() && len > 0 {
            break;
        }
        let w = power(s.image(0), len);
        if verifies(s, t, &w, Orientation::Right) {
            return Ok(Conjugacy::Witness { word: w, orientation: Orientation::Right });
        }
        let w = power(t.image(0), len);
        if verifies(s, t, &w, Orientation::Left) {
            return Ok(Conjugacy::Witness { word: w, orientation: Orientation::Left });
        }
    }
    Ok(Conjugacy::NotFoundWithinCap { cap })
}

/// Re-checks a witness letter by letter.
pub fn verify_witness(s: &Substitution, t: &Substitution, w: &[Letter], o: Orientation) -> bool {
    s.alphabet == t.alphabet && verifies(s, t, w, o)
}

/// All nonempty factors of length at most `n`.
pub fn factor_set(w: &[Letter], n: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for len in 1..=n.min(w.len()) {
        for f in w.windows(len) {
            out.insert(f.to_vec());
        }
    }
    out
}

/// A word available through windows of growing radius.
pub trait WordSource {
    /// A finite factor whose length grows with `radius`.
    fn window(&self, radius: usize) -> Result<Word>;
    /// Length scale for the first saturation probe.
    fn growth(&self) -> usize;
}

/// One-sided fixed point of a morphism.
#[derive(Debug, Clone)]
pub struct MorphismFixedPoint {
    pub morphism: Substitution,
    pub seed: Letter,
}

impl WordSource for MorphismFixedPoint {
    fn window(&self, radius: usize) -> Result<Word> {
        fixed_point_window(&self.morphism, self.seed, radius)
    }
    fn growth(&self) -> usize {
        self.morphism.max_image_len()
    }
}

/// Two-sided fixed point of an antimorphism, optionally mapped through a
/// projection morphism.
#[derive(Debug, Clone)]
pub struct AntimorphismFixedPoint {
    pub antimorphism: Substitution,
    pub seed: Option<(Letter, Letter)>,
    pub projection: Option<Substitution>,
}

impl WordSource for AntimorphismFixedPoint {
    fn window(&self, radius: usize) -> Result<Word> {
        let w = fixed_point_biword(&self.antimorphism, self.seed, radius)?;
        Ok(match &self.projection {
            Some(p) => p.apply_pointed(&w).concat(),
            None => w.concat(),
        })
    }
    fn growth(&self) -> usize {
        self.antimorphism.max_image_len()
    }
}

/// Outcome of a factor-language comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LanguageComparison {
    pub equal: bool,
    pub n: usize,
    pub radius: usize,
    pub only_first: Vec<Word>,
    pub only_second: Vec<Word>,
}

const SATURATION_ROUNDS: usize = 6;

/// Factor set of length at most `n`, stable under doubling the radius.
pub fn saturated_factors(src: &dyn WordSource, n: usize) -> Result<(BTreeSet<Word>, usize)> {
    let g = src.growth().max(2);
    let mut radius = (n * g * g).max(16);
    let mut prev = factor_set(&src.window(radius)?, n);
    for _ in 0..SATURATION_ROUNDS {
        let next = factor_set(&src.window(2 * radius)?, n);
        if next == prev {
            return Ok((prev, radius));
        }
        prev = next;
        radius *= 2;
    }
    Err(Error::WindowTooSmall(radius))
}

/// Compares factor languages up to length `n`.
pub fn language_equal_upto(a: &dyn WordSource, b: &dyn WordSource, n: usize) -> Result<LanguageComparison> {
    let (fa, ra) = saturated_factors(a, n)?;
    let (fb, rb) = saturated_factors(b, n)?;
    Ok(LanguageComparison {
        equal: fa == fb,
        n,
        radius: ra.max(rb),
        only_first: fa.difference(&fb).cloned().collect(),
        only_second: fb.difference(&fa).cloned().collect(),
    })
}

/// Solves `p ∘ s = t ∘ p` for a morphism `t`, if one exists.
pub fn project_and_induce(p: &Substitution, s: &Substitution) -> Option<Substitution> {
    if p.alphabet != s.alphabet || p.direction != Direction::Morphism {
        return None;
    }
    let k = p.alphabet;
    let targets: Vec<Word> = (0..k).map(|a| p.apply(&s.apply(&[a]))).collect();
    let mut t: Vec<Option<Word>> = vec![None; k];
    loop {
        let mut progress = false;
        for a in 0..k {
            let pa = p.image(a);
            let unknown: Vec<usize> = (0..pa.len()).filter(|&i| t[pa[i]].is_none()).collect();
            let distinct: BTreeSet<Letter> = unknown.iter().map(|&i| pa[i]).collect();
            if distinct.len() != 1 {
                continue;
            }
            let x = *distinct.iter().next().expect("one letter");
            let count = unknown.len();
            let known_len: usize = pa.iter().filter_map(|&b| t[b].as_ref().map(Vec::len)).sum();
            let target = &targets[a];
            if target.len() < known_len || (target.len() - known_len) % count != 0 {
                return None;
            }
            let xlen = (target.len() - known_len) / count;
            let first = unknown[0];
            let offset: usize = pa[..first].iter().map(|&b| t[b].as_ref().map_or(0, Vec::len)).sum();
            t[x] = Some(target[offset..offset + xlen].to_vec());
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let images: Option<Vec<Word>> = t.into_iter().collect();
    let induced = Substitution::morphism(images?).ok()?;
    (0..k).all(|a| induced.apply(p.image(a)) == targets[a]).then_some(induced)
}
