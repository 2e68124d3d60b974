//! The seven families of Nil 3-manifold groups: presentations, parameter
//! rules, and evaluation of words under an assignment of generators.
//!
//! Commutators follow `[x, y] = x y x⁻¹ y⁻¹`. Each relation `L = R` is stored
//! as the freely reduced relator `L·R⁻¹`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::heis::{HeisError, HeisIsom};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    NilTorus,
    VerticalHalfTwist,
    HorizontalHalfTwist,
    DoubleHalfTwist,
    QuarterTwist,
    ThirdTwist,
    SixthTwist,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] = [
        FamilyId::NilTorus,
        FamilyId::VerticalHalfTwist,
        FamilyId::HorizontalHalfTwist,
        FamilyId::DoubleHalfTwist,
        FamilyId::QuarterTwist,
        FamilyId::ThirdTwist,
        FamilyId::SixthTwist,
    ];

    pub fn from_index(id: u8) -> Result<FamilyId, FamilyError> {
        match id {
            1..=7 => Ok(FamilyId::ALL[usize::from(id) - 1]),
            _ => Err(FamilyError::UnknownFamily(id)),
        }
    }

    /// Position in the list, 1 through 7.
    pub fn index(self) -> u8 {
        FamilyId::ALL.iter().position(|&f| f == self).expect("listed") as u8 + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::NilTorus => "NilTorus",
            FamilyId::VerticalHalfTwist => "VerticalHalfTwist",
            FamilyId::HorizontalHalfTwist => "HorizontalHalfTwist",
            FamilyId::DoubleHalfTwist => "DoubleHalfTwist",
            FamilyId::QuarterTwist => "QuarterTwist",
            FamilyId::ThirdTwist => "ThirdTwist",
            FamilyId::SixthTwist => "SixthTwist",
        }
    }

    pub fn generators(self) -> &'static [Gen] {
        use Gen::*;
        match self {
            FamilyId::NilTorus => &[A, B, C],
            FamilyId::DoubleHalfTwist => &[A, B, C, Alpha, Beta],
            _ => &[A, B, C, Alpha],
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.index(), self.name())
    }
}

/// Parameters of a family member. `p` is used by family 5 only, `k1` by
/// families 6 and 7, `k2` by family 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyParams {
    pub k: i64,
    pub p: Option<i64>,
    pub k1: Option<i64>,
    pub k2: Option<i64>,
}

impl FamilyParams {
    pub fn k(k: i64) -> Self {
        FamilyParams {
            k,
            p: None,
            k1: None,
            k2: None,
        }
    }

    pub fn with_p(self, p: i64) -> Self {
        FamilyParams { p: Some(p), ..self }
    }

    pub fn with_k1(self, k1: i64) -> Self {
        FamilyParams { k1: Some(k1), ..self }
    }

    pub fn with_k2(self, k2: i64) -> Self {
        FamilyParams { k2: Some(k2), ..self }
    }

    /// Every assignment of the family's extra parameters at this `k`,
    /// valid or not: `p ∈ {1, 3}` for family 5, `(k1, k2) ∈ {0, 1} × {1, 2}`
    /// for family 6, `k1 ∈ {1, 5}` for family 7.
    pub fn candidates(family: FamilyId, k: i64) -> Vec<FamilyParams> {
        let base = FamilyParams::k(k);
        match family {
            FamilyId::QuarterTwist => vec![base.with_p(1), base.with_p(3)],
            FamilyId::ThirdTwist => [(0, 1), (0, 2), (1, 1), (1, 2)]
                .iter()
                .map(|&(k1, k2)| base.with_k1(k1).with_k2(k2))
                .collect(),
            FamilyId::SixthTwist => vec![base.with_k1(1), base.with_k1(5)],
            _ => vec![base],
        }
    }

    /// All valid parameters with `k ≤ k_max`, in increasing order.
    pub fn valid_up_to(family: FamilyId, k_max: i64) -> Vec<FamilyParams> {
        (1..=k_max)
            .flat_map(|k| FamilyParams::candidates(family, k))
            .filter(|p| p.validate(family).is_ok())
            .collect()
    }

    /// The valid parameters with the least `k`.
    pub fn smallest_valid(family: FamilyId) -> FamilyParams {
        FamilyParams::valid_up_to(family, 6)
            .into_iter()
            .next()
            .expect("every family has a member with k <= 6")
    }

    /// Checks the family's parameter rule, naming the violated constraint.
    pub fn validate(&self, family: FamilyId) -> Result<(), FamilyError> {
        let fail = |constraint: &str| {
            Err(FamilyError::InvalidParams {
                family,
                params: *self,
                constraint: constraint.to_string(),
            })
        };
        let uses = |name: &str| match name {
            "p" => family == FamilyId::QuarterTwist,
            "k1" => matches!(family, FamilyId::ThirdTwist | FamilyId::SixthTwist),
            _ => family == FamilyId::ThirdTwist,
        };
        for (name, value) in [("p", self.p), ("k1", self.k1), ("k2", self.k2)] {
            match (uses(name), value) {
                (true, None) => return fail(&format!("{name} is required")),
                (false, Some(_)) => return fail(&format!("{name} is not a parameter of this family")),
                _ => {}
            }
        }
        if self.k <= 0 {
            return fail("k > 0");
        }
        let k = self.k;
        let ok = match family {
            FamilyId::NilTorus | FamilyId::HorizontalHalfTwist => true,
            FamilyId::VerticalHalfTwist | FamilyId::DoubleHalfTwist => k % 2 == 0,
            FamilyId::QuarterTwist => {
                let p = self.p.unwrap_or_default();
                k % 2 == 0 && (p == 1 || (k % 4 == 0 && p == 3))
            }
            FamilyId::ThirdTwist => {
                let (k1, k2) = (self.k1.unwrap_or_default(), self.k2.unwrap_or_default());
                (k % 3 == 0 && k1 == 0 && (k2 == 1 || k2 == 2)) || (k % 3 != 0 && k1 == 1 && k2 == 1)
            }
            FamilyId::SixthTwist => {
                let k1 = self.k1.unwrap_or_default();
                (matches!(k % 6, 0 | 4) && k1 == 1) || (matches!(k % 6, 0 | 2) && k1 == 5)
            }
        };
        if ok {
            return Ok(());
        }
        fail(match family {
            FamilyId::VerticalHalfTwist | FamilyId::DoubleHalfTwist => "k ∈ 2N",
            FamilyId::QuarterTwist => "k ∈ 2N and either p = 1 or k ∈ 4N and p = 3",
            FamilyId::ThirdTwist => {
                "either k ≡ 0 (mod 3), k1 = 0, and k2 = 1 or 2, or k ≡ 1,2 (mod 3), k1 = 1, and k2 = 1"
            }
            FamilyId::SixthTwist => "either k ≡ 0,4 (mod 6) and k1 = 1, or k ≡ 0,2 (mod 6) and k1 = 5",
            _ => unreachable!("families 1 and 3 accept every k > 0"),
        })
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}", self.k)?;
        for (name, v) in [("p", self.p), ("k1", self.k1), ("k2", self.k2)] {
            if let Some(v) = v {
                write!(f, " {name}={v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("no family numbered {0}; families are 1 through 7")]
    UnknownFamily(u8),
    #[error("invalid parameters {params} for family {family}: requires {constraint}")]
    InvalidParams {
        family: FamilyId,
        params: FamilyParams,
        constraint: String,
    },
    #[error("generator {0} has no image")]
    UnassignedGenerator(Gen),
    #[error("line {line}: unknown token {token:?}")]
    BadToken { line: usize, token: String },
    #[error(transparent)]
    Heis(#[from] HeisError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    A,
    B,
    C,
    Alpha,
    Beta,
}

impl Gen {
    pub fn name(self) -> &'static str {
        match self {
            Gen::A => "a",
            Gen::B => "b",
            Gen::C => "c",
            Gen::Alpha => "alpha",
            Gen::Beta => "beta",
        }
    }

    fn from_token(token: &str) -> Option<(Gen, i64)> {
        let g = [Gen::A, Gen::B, Gen::C, Gen::Alpha, Gen::Beta];
        g.into_iter().find_map(|g| {
            if token == g.name() {
                Some((g, 1))
            } else if token == g.name().to_uppercase() {
                Some((g, -1))
            } else {
                None
            }
        })
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A freely reduced word: adjacent letters have distinct generators and
/// every exponent is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<(Gen, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: impl IntoIterator<Item = (Gen, i64)>) -> Self {
        let mut out: Vec<(Gen, i64)> = Vec::new();
        for (g, e) in letters {
            match out.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ if e != 0 => out.push((g, e)),
                _ => {}
            }
        }
        Word(out)
    }

    pub fn gen(g: Gen, e: i64) -> Self {
        Word::new([(g, e)])
    }

    pub fn letters(&self) -> &[(Gen, i64)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.0.iter().rev().map(|&(g, e)| (g, -e)))
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    /// Whitespace-separated tokens, powers expanded, inverses upper-case.
    pub fn to_tokens(&self) -> String {
        let mut toks = Vec::new();
        for &(g, e) in &self.0 {
            let t = if e > 0 {
                g.name().to_string()
            } else {
                g.name().to_uppercase()
            };
            toks.extend(std::iter::repeat_n(t, e.unsigned_abs() as usize));
        }
        toks.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| if e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// A relation `lhs = rhs`, kept alongside its relator `lhs·rhs⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relator {
    pub lhs: Word,
    pub rhs: Word,
    pub word: Word,
}

impl Relator {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        let word = lhs.concat(&rhs.inverse());
        Relator { lhs, rhs, word }
    }
}

impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub family: FamilyId,
    pub params: FamilyParams,
    pub generators: Vec<Gen>,
    pub relators: Vec<Relator>,
}

impl Presentation {
    /// One relator per line as tokens, each preceded by a `#` comment giving
    /// the relation it encodes.
    pub fn to_text(&self) -> String {
        let mut out = format!("# family {} {}\n", self.family, self.params);
        for r in &self.relators {
            out.push_str(&format!("# {r}\n{}\n", r.word.to_tokens()));
        }
        out
    }
}

/// Reads relator lines back; blank lines and `#` comments are skipped.
pub fn parse_relators(text: &str) -> Result<Vec<Word>, FamilyError> {
    let mut words = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut letters = Vec::new();
        for tok in line.split_whitespace() {
            let letter = Gen::from_token(tok).ok_or_else(|| FamilyError::BadToken {
                line: i + 1,
                token: tok.to_string(),
            })?;
            letters.push(letter);
        }
        words.push(Word::new(letters));
    }
    Ok(words)
}

pub fn build_presentation(family: FamilyId, params: FamilyParams) -> Result<Presentation, FamilyError> {
    params.validate(family)?;
    Ok(build_presentation_unchecked(family, params))
}

/// Builds the relators without checking the parameter rule, e.g. for the
/// formal substitution `k = 0`. Missing `p`, `k1`, `k2` read as zero.
pub fn build_presentation_unchecked(family: FamilyId, params: FamilyParams) -> Presentation {
    use Gen::*;
    let g = |x: Gen| Word::gen(x, 1);
    let pow = |x: Gen, e: i64| Word::gen(x, e);
    let one = Word::identity;
    let rel = Relator::new;
    let cat = |ws: &[Word]| ws.iter().fold(Word::identity(), |acc, w| acc.concat(w));
    let comm = |x: Gen, y: Gen| Word::commutator(&g(x), &g(y));
    let k = params.k;
    let p = params.p.unwrap_or_default();
    let k1 = params.k1.unwrap_or_default();
    let k2 = params.k2.unwrap_or_default();

    let ba_exp = match family {
        FamilyId::HorizontalHalfTwist | FamilyId::DoubleHalfTwist => 2 * k,
        _ => k,
    };
    let mut rs = vec![
        rel(comm(B, A), pow(C, ba_exp)),
        rel(comm(C, A), one()),
        rel(comm(C, B), one()),
    ];
    match family {
        FamilyId::NilTorus => {}
        FamilyId::VerticalHalfTwist => rs.extend([
            rel(comm(C, Alpha), one()),
            rel(cat(&[g(Alpha), g(A)]), cat(&[pow(A, -1), g(Alpha)])),
            rel(cat(&[g(Alpha), g(B)]), cat(&[pow(B, -1), g(Alpha)])),
            rel(pow(Alpha, 2), g(C)),
        ]),
        FamilyId::HorizontalHalfTwist => rs.extend([
            rel(comm(A, Alpha), one()),
            rel(cat(&[g(Alpha), g(B)]), cat(&[pow(B, -1), g(Alpha), pow(C, -k)])),
            rel(cat(&[g(Alpha), g(C)]), cat(&[pow(C, -1), g(Alpha)])),
            rel(pow(Alpha, 2), g(A)),
        ]),
        FamilyId::DoubleHalfTwist => rs.extend([
            rel(comm(C, Alpha), one()),
            rel(comm(A, Beta), one()),
            rel(cat(&[g(Alpha), g(A)]), cat(&[pow(A, -1), g(Alpha), pow(C, k)])),
            rel(cat(&[g(Alpha), g(B)]), cat(&[pow(B, -1), g(Alpha), pow(C, -k)])),
            rel(cat(&[g(Beta), g(B)]), cat(&[pow(B, -1), g(Beta), pow(C, -k)])),
            rel(cat(&[g(Beta), g(C)]), cat(&[pow(C, -1), g(Beta)])),
            rel(
                cat(&[g(Alpha), g(Beta)]),
                cat(&[pow(A, -1), pow(B, -1), g(Beta), g(Alpha), pow(C, -k - 1)]),
            ),
            rel(pow(Alpha, 2), g(C)),
            rel(pow(Beta, 2), g(A)),
        ]),
        FamilyId::QuarterTwist => rs.extend([
            rel(comm(C, Alpha), one()),
            rel(cat(&[g(Alpha), g(A)]), cat(&[g(B), g(Alpha)])),
            rel(cat(&[g(Alpha), g(B)]), cat(&[pow(A, -1), g(Alpha)])),
            rel(pow(Alpha, 4), pow(C, p)),
        ]),
        FamilyId::ThirdTwist => rs.extend([
            rel(comm(C, Alpha), one()),
            rel(cat(&[g(Alpha), g(A)]), cat(&[g(B), g(Alpha), pow(C, k1)])),
            rel(cat(&[g(Alpha), g(B)]), cat(&[pow(A, -1), pow(B, -1), g(Alpha)])),
            rel(pow(Alpha, 3), pow(C, k2)),
        ]),
        FamilyId::SixthTwist => rs.extend([
            rel(comm(C, Alpha), one()),
            rel(cat(&[g(Alpha), g(A)]), cat(&[g(A), g(B), g(Alpha)])),
            rel(cat(&[g(Alpha), g(B)]), cat(&[pow(A, -1), g(Alpha)])),
            rel(pow(Alpha, 6), pow(C, k1)),
        ]),
    }
    Presentation {
        family,
        params,
        generators: family.generators().to_vec(),
        relators: rs,
    }
}

/// Images of the generators.
pub type Assignment = BTreeMap<Gen, HeisIsom>;

/// Left-to-right product of the letters' images. The empty word needs a
/// `d` for its identity, taken from any assigned image.
pub fn evaluate_word(w: &Word, assignment: &Assignment) -> Result<HeisIsom, FamilyError> {
    let any = assignment
        .values()
        .next()
        .ok_or(FamilyError::UnassignedGenerator(w.letters().first().map_or(Gen::A, |l| l.0)))?;
    let mut acc = HeisIsom::identity(any.d());
    for &(g, e) in w.letters() {
        let img = assignment.get(&g).ok_or(FamilyError::UnassignedGenerator(g))?;
        acc = acc.compose(&img.power(e))?;
    }
    Ok(acc)
}

/// A relator together with its value under an assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub relator: Relator,
    pub value: HeisIsom,
}

/// Evaluates every relator; the assignment defines a homomorphism exactly
/// when every residual is the identity.
pub fn check_relations(p: &Presentation, assignment: &Assignment) -> Result<Vec<Residual>, FamilyError> {
    p.relators
        .iter()
        .map(|r| {
            Ok(Residual {
                relator: r.clone(),
                value: evaluate_word(&r.word, assignment)?,
            })
        })
        .collect()
}
