//! Explicit holonomy representations of the seven families into
//! `G_∞(O_d)`, and the certificate checks run on them.
//!
//! The certificate checks the conditions that make a representation a
//! holonomy representation: the relations hold, the image is integral
//! (hence discrete), the images of `a, b, c` span a Heisenberg lattice, and
//! the rotational parts match the family. Faithfulness follows from these
//! by the generalized Bieberbach theorems and is not re-proved.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{
    build_presentation, build_presentation_unchecked, check_relations, Assignment, FamilyError, FamilyId,
    FamilyParams, Gen,
};
use crate::heis::{HeisIsom, IsomClass};
use crate::obstruct::{allowed_d, multiplicative_order, rotational_order, AllowedD};
use crate::ring::{int, rat, ImagQuad, RealQuad, SquarefreeD};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HolonomyError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(
        "family {family} has no representation over d = {d}: its rotational part has order {order}, \
         and a primitive root of unity of that order lies in no cubic extension of Q(i*sqrt({d})); \
         allowed d: {allowed}"
    )]
    Obstructed {
        family: FamilyId,
        d: u64,
        order: u32,
        allowed: AllowedD,
    },
}

/// Images of the generators of one family member over `E_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepAssignment {
    pub d: SquarefreeD,
    pub family: FamilyId,
    pub params: FamilyParams,
    pub images: Assignment,
}

fn hol(z: ImagQuad, t: RealQuad, u: ImagQuad) -> HeisIsom {
    HeisIsom::holomorphic(z, t, u).expect("rotational part has modulus one")
}

/// The family's representation, transcribed coordinate by coordinate.
pub fn standard_rep(family: FamilyId, params: FamilyParams, d: SquarefreeD) -> Result<RepAssignment, HolonomyError> {
    params.validate(family)?;
    let allowed = allowed_d(family);
    if !allowed.contains(d) {
        return Err(HolonomyError::Obstructed {
            family,
            d: d.get(),
            order: rotational_order(family),
            allowed,
        });
    }
    let k = params.k;
    let zero = ImagQuad::zero(d);
    let one = ImagQuad::one(d);
    let t0 = RealQuad::zero(d);
    let z = |a: i64, b: i64| ImagQuad::from_ints(d, a, b);
    let vert = |q: i64| RealQuad::sqrt_d_multiple(d, int(q));
    let trans = |zz: ImagQuad| hol(zz, t0.clone(), one.clone());

    let mut images = Assignment::new();
    match family {
        FamilyId::NilTorus
        | FamilyId::VerticalHalfTwist
        | FamilyId::HorizontalHalfTwist
        | FamilyId::DoubleHalfTwist
        | FamilyId::QuarterTwist => {
            images.insert(Gen::A, trans(z(2 * k, 0)));
            images.insert(Gen::B, trans(z(0, 2 * k)));
        }
        FamilyId::ThirdTwist => {
            images.insert(Gen::A, trans(z(24 * k, 0)));
            images.insert(Gen::B, trans(z(-12 * k, 12 * k)));
        }
        FamilyId::SixthTwist => {
            images.insert(Gen::A, trans(z(12 * k, 0)));
            images.insert(Gen::B, trans(z(-6 * k, 6 * k)));
        }
    }
    let c = match family {
        FamilyId::NilTorus | FamilyId::VerticalHalfTwist | FamilyId::QuarterTwist => 16 * k,
        FamilyId::HorizontalHalfTwist | FamilyId::DoubleHalfTwist => 8 * k,
        FamilyId::ThirdTwist => 1152 * k,
        FamilyId::SixthTwist => 288 * k,
    };
    images.insert(Gen::C, HeisIsom::vertical(vert(c)));
    let sigma_k = || HeisIsom::antiholomorphic(z(k, 0), t0.clone(), one.clone()).expect("u = 1");
    match family {
        FamilyId::NilTorus => {}
        FamilyId::VerticalHalfTwist => {
            images.insert(Gen::Alpha, hol(zero, vert(8 * k), -&one));
        }
        FamilyId::HorizontalHalfTwist => {
            images.insert(Gen::Alpha, sigma_k());
        }
        FamilyId::DoubleHalfTwist => {
            images.insert(Gen::Alpha, hol(z(-k, -k), vert(4 * k), -&one));
            images.insert(Gen::Beta, sigma_k());
        }
        FamilyId::QuarterTwist => {
            let p = params.p.expect("validated");
            images.insert(Gen::Alpha, hol(zero, vert(4 * p * k), ImagQuad::i_sqrt_d(d)));
        }
        FamilyId::ThirdTwist => {
            let (k1, k2) = (params.k1.expect("validated"), params.k2.expect("validated"));
            let u = ImagQuad::new(d, rat(-1, 2), rat(1, 2));
            let t = 384 * k * k2 + 48 * k * k - 96 * k * k1 + 192 * k1 * k1;
            images.insert(Gen::Alpha, hol(z(-6 * k - 12 * k1, 6 * k - 12 * k1), vert(t), u));
        }
        FamilyId::SixthTwist => {
            let k1 = params.k1.expect("validated");
            let u = ImagQuad::new(d, rat(1, 2), rat(1, 2));
            images.insert(Gen::Alpha, hol(z(6 * k, 0), vert(36 * k * k + 48 * k * k1), u));
        }
    }
    Ok(RepAssignment {
        d,
        family,
        params,
        images,
    })
}

/// One named check with its verdict and a human-readable account.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDetail {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

/// A relation and the canonical text of its value under the representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualText {
    pub relation: String,
    pub value: String,
    pub is_identity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolonomyCert {
    pub relations_ok: bool,
    pub integral_ok: bool,
    pub lattice_ok: bool,
    pub rotational_ok: bool,
    pub rotation_group_order: usize,
    pub residuals: Vec<ResidualText>,
    pub details: Vec<CheckDetail>,
}

impl HolonomyCert {
    pub fn all_ok(&self) -> bool {
        self.relations_ok && self.integral_ok && self.lattice_ok && self.rotational_ok
    }
}

pub fn verify_holonomy(rep: &RepAssignment) -> HolonomyCert {
    let mut details = Vec::new();

    let (relations_ok, residuals) = match check_relations(&build_presentation_unchecked(rep.family, rep.params), &rep.images) {
        Ok(rs) => {
            let texts: Vec<ResidualText> = rs
                .iter()
                .map(|r| ResidualText {
                    relation: r.relator.to_string(),
                    value: r.value.to_string(),
                    is_identity: r.value.is_identity(),
                })
                .collect();
            let bad = texts.iter().filter(|r| !r.is_identity).count();
            details.push(CheckDetail {
                name: "relations".into(),
                ok: bad == 0,
                detail: format!("{} relators, {bad} with nonidentity residual", texts.len()),
            });
            (bad == 0, texts)
        }
        Err(e) => {
            details.push(CheckDetail {
                name: "relations".into(),
                ok: false,
                detail: e.to_string(),
            });
            (false, Vec::new())
        }
    };

    let non_integral: Vec<String> = rep
        .images
        .iter()
        .filter(|(_, g)| !g.holomorphic_part().is_integral())
        .map(|(gen, g)| format!("{gen} -> {g}"))
        .collect();
    let integral_ok = non_integral.is_empty();
    details.push(CheckDetail {
        name: "integrality".into(),
        ok: integral_ok,
        detail: if integral_ok {
            format!("every image lies in G_inf(O_{})", rep.d)
        } else {
            format!("outside G_inf(O_{}): {}", rep.d, non_integral.join("; "))
        },
    });

    let (lattice_ok, lattice_detail) = lattice_check(&rep.images);
    details.push(CheckDetail {
        name: "lattice".into(),
        ok: lattice_ok,
        detail: lattice_detail,
    });

    let (rotational_ok, rot_detail) = rotational_check(rep.family, &rep.images);
    let rotation_group_order = rotation_group_order(&rep.images);
    details.push(CheckDetail {
        name: "rotational".into(),
        ok: rotational_ok,
        detail: format!("{rot_detail}; rotation group order {rotation_group_order}"),
    });

    HolonomyCert {
        relations_ok,
        integral_ok,
        lattice_ok,
        rotational_ok,
        rotation_group_order,
        residuals,
        details,
    }
}

fn lattice_check(images: &Assignment) -> (bool, String) {
    let (Some(a), Some(b), Some(c)) = (images.get(&Gen::A), images.get(&Gen::B), images.get(&Gen::C)) else {
        return (false, "a, b or c has no image".into());
    };
    let (pa, pb) = (a.pi_star(), b.pi_star());
    if !pa.is_translation() || !pb.is_translation() {
        return (false, "a or b does not project to a translation of C".into());
    }
    let cross = (&pa.z * &pb.z.conj()).im_part();
    if cross.is_zero() {
        return (false, format!("translations {} and {} are R-linearly dependent", pa.z, pb.z));
    }
    match c.classify() {
        Ok(IsomClass::VerticalTranslation) => (
            true,
            format!("a, b project to independent translations by {}, {}; c is vertical", pa.z, pb.z),
        ),
        Ok(other) => (false, format!("c is {other}, not a vertical translation")),
        Err(e) => (false, format!("c: {e}")),
    }
}

fn rotational_check(family: FamilyId, images: &Assignment) -> (bool, String) {
    let has_sigma = images.values().any(HeisIsom::is_antiholomorphic);
    let orders: Vec<u32> = images
        .values()
        .map(|g| multiplicative_order(g.u(), 12).unwrap_or(0))
        .collect();
    let has_order = |n: u32| orders.contains(&n);
    let ok = match family {
        FamilyId::NilTorus => !has_sigma && orders.iter().all(|&n| n == 1),
        FamilyId::HorizontalHalfTwist => has_sigma,
        FamilyId::DoubleHalfTwist => has_sigma && has_order(2),
        _ => !has_sigma && has_order(rotational_order(family)),
    };
    let listing: Vec<String> = images
        .iter()
        .map(|(g, v)| format!("{g}: u={}{}", v.u(), if v.is_antiholomorphic() { " with sigma" } else { "" }))
        .collect();
    (ok, listing.join(", "))
}

/// Size of the group generated by the linear parts `w ↦ u w` or
/// `w ↦ u w̄` of the images.
pub fn rotation_group_order(images: &Assignment) -> usize {
    const CAP: usize = 48;
    let gens: Vec<(ImagQuad, bool)> = images.values().map(|g| (g.u().clone(), g.is_antiholomorphic())).collect();
    let Some(first) = gens.first() else { return 1 };
    let mut elems = vec![(ImagQuad::one(first.0.d()), false)];
    let mut i = 0;
    while i < elems.len() && elems.len() <= CAP {
        let (u1, c1) = elems[i].clone();
        for (u2, c2) in &gens {
            let u2 = if c1 { u2.conj() } else { u2.clone() };
            let next = (&u1 * &u2, c1 ^ c2);
            if !elems.contains(&next) {
                elems.push(next);
            }
        }
        i += 1;
    }
    elems.len()
}

/// Reproduction of the misprinted family-4 generator `α = (2k(1+i), 0, −1)`
/// at `d = 1` next to the corrected `α = (−k(1+i), 4k, −1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErratumReport {
    pub k: i64,
    pub rho_c: String,
    pub erroneous_alpha: String,
    pub erroneous_square: String,
    pub erroneous_square_is_identity: bool,
    /// `α² c⁻¹` with the misprinted `α`.
    pub erroneous_residual: String,
    pub erroneous_fails: bool,
    /// Other relators broken by the misprinted `α`.
    pub erroneous_failing_relations: Vec<String>,
    pub corrected_alpha: String,
    pub corrected_square: String,
    pub corrected_residual: String,
    pub corrected_ok: bool,
    /// The misprint also does not square to `(0, 32k, 1)`, the value quoted
    /// with it under the normalization before dilation.
    pub differs_from_quoted_value: bool,
}

impl ErratumReport {
    /// Misprint reproduced and correction confirmed.
    pub fn reproduced(&self) -> bool {
        self.erroneous_square_is_identity && self.erroneous_fails && self.corrected_ok && self.differs_from_quoted_value
    }
}

pub fn erratum_family4(k: i64) -> ErratumReport {
    let d = SquarefreeD::new(1).expect("1 is squarefree");
    let one = ImagQuad::one(d);
    let rho_c = HeisIsom::vertical(RealQuad::from_rat(d, int(8 * k)));
    let bad = hol(ImagQuad::from_ints(d, 2 * k, 2 * k), RealQuad::zero(d), -&one);
    let good = hol(ImagQuad::from_ints(d, -k, -k), RealQuad::from_rat(d, int(4 * k)), -&one);
    let quoted = HeisIsom::vertical(RealQuad::from_rat(d, int(32 * k)));

    let bad_sq = &bad * &bad;
    let good_sq = &good * &good;
    let bad_res = &bad_sq * &rho_c.inverse();
    let good_res = &good_sq * &rho_c.inverse();

    // Evaluate the whole presentation with the misprint substituted, without
    // the parity rule on k so odd k can be reproduced too.
    let mut images = Assignment::new();
    let tr = |x: i64, y: i64| hol(ImagQuad::from_ints(d, x, y), RealQuad::zero(d), one.clone());
    images.insert(Gen::A, tr(2 * k, 0));
    images.insert(Gen::B, tr(0, 2 * k));
    images.insert(Gen::C, rho_c.clone());
    images.insert(Gen::Alpha, bad.clone());
    images.insert(
        Gen::Beta,
        HeisIsom::antiholomorphic(ImagQuad::from_ints(d, k, 0), RealQuad::zero(d), one.clone()).expect("u = 1"),
    );
    let pres = build_presentation_unchecked(FamilyId::DoubleHalfTwist, FamilyParams::k(k));
    let failing = check_relations(&pres, &images)
        .expect("all generators assigned")
        .into_iter()
        .filter(|r| !r.value.is_identity())
        .map(|r| r.relator.to_string())
        .collect();

    ErratumReport {
        k,
        rho_c: rho_c.to_string(),
        erroneous_alpha: bad.to_string(),
        erroneous_square: bad_sq.to_string(),
        erroneous_square_is_identity: bad_sq.is_identity(),
        erroneous_residual: bad_res.to_string(),
        erroneous_fails: !bad_res.is_identity(),
        erroneous_failing_relations: failing,
        corrected_alpha: good.to_string(),
        corrected_square: good_sq.to_string(),
        corrected_residual: good_res.to_string(),
        corrected_ok: good_res.is_identity(),
        differs_from_quoted_value: bad_sq != quoted,
    }
}

impl fmt::Display for ErratumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k = {}, rho(c) = {}", self.k, self.rho_c)?;
        writeln!(f, "misprinted alpha = {}, alpha^2 = {}", self.erroneous_alpha, self.erroneous_square)?;
        writeln!(f, "corrected alpha = {}, alpha^2 = {}", self.corrected_alpha, self.corrected_square)
    }
}

/// Builds the presentation, checking the parameters, and the standard
/// representation in one step.
pub fn certify(family: FamilyId, params: FamilyParams, d: SquarefreeD) -> Result<HolonomyCert, HolonomyError> {
    build_presentation(family, params)?;
    Ok(verify_holonomy(&standard_rep(family, params, d)?))
}
