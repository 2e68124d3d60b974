//! Cusp groups of the Picard modular groups `PU(2,1,O_d)` and of the
//! cusped non-arithmetic complex triangle groups.
//!
//! Horizontal parts are recorded as tags (triangle groups, `Isom⁺(O_d)`),
//! not as implemented groups. The vertical generator is an actual element
//! and its integrality is checked.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::heis::{HeisIsom, IsomClass};
use crate::ring::{int, ImagQuad, RealQuad, SquarefreeD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HorizontalTag {
    /// `Δ(2,3,6)`
    Delta236,
    /// Index two in `Δ(2,4,4) = Isom⁺(Z[i])`.
    IndexTwoInDelta244,
    /// `Isom⁺(O_d)`
    IsomPlusOd,
    /// Index two in `Isom⁺(O_d)`.
    IndexTwoInIsomPlusOd,
}

impl fmt::Display for HorizontalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HorizontalTag::Delta236 => "Δ(2,3,6)",
            HorizontalTag::IndexTwoInDelta244 => "IndexTwoIn_Δ(2,4,4)",
            HorizontalTag::IsomPlusOd => "IsomPlus_Od",
            HorizontalTag::IndexTwoInIsomPlusOd => "IndexTwoIn_IsomPlus_Od",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspDescriptor {
    pub d: SquarefreeD,
    pub vertical_generator: HeisIsom,
    pub horizontal_tag: HorizontalTag,
}

/// The vertical translation `(0, 2√d, 1)` generating the center of the
/// Picard cusp group.
pub fn vertical_generator(d: SquarefreeD) -> HeisIsom {
    HeisIsom::vertical(RealQuad::sqrt_d_multiple(d, int(2)))
}

pub fn picard_cusp_descriptor(d: SquarefreeD) -> CuspDescriptor {
    let horizontal_tag = match (d.get(), d.residue_mod4()) {
        (3, _) => HorizontalTag::Delta236,
        (1, _) => HorizontalTag::IndexTwoInDelta244,
        (_, 3) => HorizontalTag::IsomPlusOd,
        _ => HorizontalTag::IndexTwoInIsomPlusOd,
    };
    CuspDescriptor {
        d,
        vertical_generator: vertical_generator(d),
        horizontal_tag,
    }
}

/// Integrality of `(0, 2√d, 1)` against the misstated `(0, √d, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerticalGeneratorReport {
    pub d: u64,
    pub generator: String,
    pub generator_corner: String,
    pub generator_integral: bool,
    pub generator_class: String,
    pub generator_min_poly: String,
    pub misstated: String,
    pub misstated_corner: String,
    pub misstated_integral: bool,
    /// The half-turn `(0, 0, −1)`, integral for every `d`.
    pub half_turn_integral: bool,
}

impl VerticalGeneratorReport {
    pub fn confirmed(&self) -> bool {
        self.generator_integral
            && !self.misstated_integral
            && self.half_turn_integral
            && self.generator_class == IsomClass::VerticalTranslation.to_string()
            && self.generator_min_poly == "(X - 1)^2"
    }
}

pub fn verify_vertical_generator(d: SquarefreeD) -> VerticalGeneratorReport {
    let gen = vertical_generator(d);
    let half = HeisIsom::vertical(RealQuad::sqrt_d_multiple(d, int(1)));
    let corner = |g: &HeisIsom| g.corner_entry().map_or_else(|e| e.to_string(), |c| c.to_string());
    let min_poly = gen
        .matrix_lift()
        .map_or_else(|e| e.to_string(), |(m, _)| m.min_poly().to_string());
    let half_turn = HeisIsom::rotation(-&ImagQuad::one(d)).expect("-1 has modulus one");
    VerticalGeneratorReport {
        d: d.get(),
        generator: gen.to_string(),
        generator_corner: corner(&gen),
        generator_integral: gen.is_integral(),
        generator_class: gen.classify().map_or_else(|e| e.to_string(), |c| c.to_string()),
        generator_min_poly: min_poly,
        misstated: half.to_string(),
        misstated_corner: corner(&half),
        misstated_integral: half.is_integral(),
        half_turn_integral: half_turn.is_integral(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriangleTag {
    /// `Δ(3,3,3)`
    Delta333,
    /// `Δ(2,4,4)`
    Delta244,
    /// `Δ(2,3,6)`
    Delta236,
}

impl fmt::Display for TriangleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriangleTag::Delta333 => "Δ(3,3,3)",
            TriangleTag::Delta244 => "Δ(2,4,4)",
            TriangleTag::Delta236 => "Δ(2,3,6)",
        })
    }
}

/// How a non-arithmetic cusp group compares with a Picard cusp group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PicardRelation {
    /// Isomorphic to the holomorphic cusp group `Γ_∞(d) = G⁰_∞(O_d)`.
    IsomorphicTo,
    /// Contains an index-two subgroup isomorphic to `Γ_∞(d)`.
    ContainsIndexTwoCopyOf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardMatch {
    pub d: u64,
    pub relation: PicardRelation,
}

/// Cusp group generated by two complex reflections `A, B` of order `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonArithCuspRow {
    pub p: u32,
    pub horizontal: TriangleTag,
    /// Exponent `n` with vertical generator `T = (AB)ⁿ`.
    pub vertical_ab_power: u32,
    pub matching_picard: Option<PicardMatch>,
    /// Lattices generated by R-reflections whose full cusp group is
    /// `G_∞(O_d)` for the matched `d`.
    pub reflection_lattices: Vec<String>,
}

impl NonArithCuspRow {
    pub fn vertical_word(&self) -> String {
        format!("(AB)^{}", self.vertical_ab_power)
    }
}

pub fn nonarith_cusp_table() -> Vec<NonArithCuspRow> {
    vec![
        NonArithCuspRow {
            p: 3,
            horizontal: TriangleTag::Delta333,
            vertical_ab_power: 3,
            matching_picard: None,
            reflection_lattices: Vec::new(),
        },
        NonArithCuspRow {
            p: 4,
            horizontal: TriangleTag::Delta244,
            vertical_ab_power: 2,
            matching_picard: Some(PicardMatch {
                d: 1,
                relation: PicardRelation::ContainsIndexTwoCopyOf,
            }),
            reflection_lattices: vec!["S~(4,sigma1)".into(), "S~(4,sigma5)".into(), "S~(4,conj(sigma4))".into()],
        },
        NonArithCuspRow {
            p: 6,
            horizontal: TriangleTag::Delta236,
            vertical_ab_power: 3,
            matching_picard: Some(PicardMatch {
                d: 3,
                relation: PicardRelation::IsomorphicTo,
            }),
            reflection_lattices: vec!["Gamma~(6,1/6)".into(), "S~(6,sigma1)".into(), "S~(6,conj(sigma4))".into()],
        },
    ]
}

/// The `d` for which `Q(i√d)` has class number one, equivalently for which
/// the Picard orbifold `X_d` has a single cusp.
pub fn class_number_one_list() -> BTreeSet<u64> {
    [1, 2, 3, 7, 11, 19, 43, 67, 163].into()
}
