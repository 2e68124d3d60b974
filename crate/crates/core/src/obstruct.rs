//! Which fields `E_d` can carry each family, and which families force
//! antiholomorphic holonomy.
//!
//! A holomorphic stabilizer element `(z, t, u)` lifts to a matrix with
//! eigenvalues `1, 1, u`. If a lattice commensurable with `PU(2,1,O_d)`
//! contains it, those eigenvalues lie in an extension of `E_d` of degree
//! dividing 3. A root of unity `ζ_n` (`n = 3, 4, 6`) has degree 2 over `Q`,
//! so `[E_d(ζ_n) : E_d]` is 1 or 2, and a degree-2 extension cannot sit in
//! a cubic one. Membership in a cubic extension therefore reduces to
//! `ζ_n ∈ E_d`, which is what is computed here. The degree argument itself
//! is taken from the commensurability obstruction theorem and not
//! re-derived.

use std::collections::BTreeSet;
use std::fmt;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{FamilyId, FamilyParams};
use crate::heis::HeisIsom;
use crate::holonomy::standard_rep;
use crate::ring::{int, rat, ImagQuad, RealQuad, SquarefreeD};
use crate::sample;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructError {
    #[error("unsupported root-of-unity order {0}; expected one of 1, 2, 3, 4, 6")]
    UnsupportedOrder(u32),
}

/// Orders of roots of unity that can occur as rotational parts of a
/// crystallographic holonomy.
pub const SUPPORTED_ORDERS: [u32; 5] = [1, 2, 3, 4, 6];

/// Past this `d`, `O_d` has no unit besides `±1`: the norm equations
/// `a² + d b² = 1` and `m² + d n² = 4` force `b = 0`, `n = 0`.
pub const UNIT_SEARCH_BOUND: u64 = 4;

fn check_order(n: u32) -> Result<(), ObstructError> {
    if SUPPORTED_ORDERS.contains(&n) {
        Ok(())
    } else {
        Err(ObstructError::UnsupportedOrder(n))
    }
}

/// All units of `O_d` (every one has modulus 1), found by solving the norm
/// equation over the integral basis.
pub fn od_units(d: SquarefreeD) -> Vec<ImagQuad> {
    let dd = d.get() as i64;
    let mut out = Vec::new();
    if d.residue_mod4() == 3 {
        // (m + n i√d)/2 with m ≡ n (mod 2) and m² + d n² = 4.
        for m in -2i64..=2 {
            for n in -2i64..=2 {
                if (m - n) % 2 == 0 && m * m + dd * n * n == 4 {
                    out.push(ImagQuad::new(d, rat(m, 2), rat(n, 2)));
                }
            }
        }
    } else {
        for a in -1i64..=1 {
            for b in -1i64..=1 {
                if a * a + dd * b * b == 1 {
                    out.push(ImagQuad::from_ints(d, a, b));
                }
            }
        }
    }
    out
}

/// Least `n ≥ 1` with `uⁿ = 1`, searching up to `max`.
pub fn multiplicative_order(u: &ImagQuad, max: u32) -> Option<u32> {
    let mut acc = u.clone();
    for n in 1..=max {
        if acc.is_one() {
            return Some(n);
        }
        acc = &acc * u;
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub n: u32,
    /// A primitive `n`-th root of unity in `E_d`, when there is one.
    pub value: Option<String>,
}

/// A primitive `n`-th root of unity of `E_d`. Roots of unity are algebraic
/// integers, so the search over the units of `O_d` is exhaustive.
pub fn root_of_unity(n: u32, d: SquarefreeD) -> Result<RootOfUnity, ObstructError> {
    check_order(n)?;
    let value = od_units(d)
        .into_iter()
        .find(|u| multiplicative_order(u, 12) == Some(n))
        .map(|u| u.to_string());
    Ok(RootOfUnity { n, value })
}

/// `ζ_n ∈ Q(i√d)`.
pub fn zeta_in_ed(n: u32, d: SquarefreeD) -> Result<bool, ObstructError> {
    Ok(root_of_unity(n, d)?.value.is_some())
}

/// `true` when a rotational part of order `n` cannot occur over `E_d`.
pub fn cubic_extension_obstruction(n: u32, d: SquarefreeD) -> Result<bool, ObstructError> {
    Ok(!zeta_in_ed(n, d)?)
}

/// Order of the rotational part of the family's twist generator. Families
/// 3 and 4 twist by `σ`, which has order 2.
pub fn rotational_order(family: FamilyId) -> u32 {
    match family {
        FamilyId::NilTorus => 1,
        FamilyId::VerticalHalfTwist | FamilyId::HorizontalHalfTwist | FamilyId::DoubleHalfTwist => 2,
        FamilyId::QuarterTwist => 4,
        FamilyId::ThirdTwist => 3,
        FamilyId::SixthTwist => 6,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AllowedD {
    AllSquarefree,
    Only(BTreeSet<u64>),
}

impl AllowedD {
    pub fn contains(&self, d: SquarefreeD) -> bool {
        match self {
            AllowedD::AllSquarefree => true,
            AllowedD::Only(s) => s.contains(&d.get()),
        }
    }
}

impl fmt::Display for AllowedD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AllowedD::AllSquarefree => f.write_str("AllSquarefree"),
            AllowedD::Only(s) => {
                let items: Vec<String> = s.iter().map(u64::to_string).collect();
                write!(f, "Only{{{}}}", items.join(","))
            }
        }
    }
}

/// The `d` for which the family's rotational order is unobstructed.
pub fn allowed_d(family: FamilyId) -> AllowedD {
    let n = rotational_order(family);
    let ok = |d: SquarefreeD| !cubic_extension_obstruction(n, d).expect("supported order");
    // Every d beyond the bound has the units of Z, so one representative
    // decides them all.
    let beyond = SquarefreeD::new(UNIT_SEARCH_BOUND + 1).expect("5 is squarefree");
    let small: BTreeSet<u64> = SquarefreeD::up_to(UNIT_SEARCH_BOUND)
        .filter(|&d| ok(d))
        .map(SquarefreeD::get)
        .collect();
    if ok(beyond) && small.len() == SquarefreeD::up_to(UNIT_SEARCH_BOUND).count() {
        AllowedD::AllSquarefree
    } else {
        AllowedD::Only(small)
    }
}

/// Why a family does or does not need antiholomorphic holonomy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntiholVerdict {
    pub family: FamilyId,
    pub required: bool,
    /// Each step with whether its machine check passed.
    pub steps: Vec<(String, bool)>,
}

impl AntiholVerdict {
    pub fn all_checks_pass(&self) -> bool {
        self.steps.iter().all(|s| s.1)
    }
}

const SQUARE_ROOT_SAMPLES: usize = 200;

/// Families 3 and 4 contain `α² = a` (resp. `β² = a`) with `a` a
/// horizontal translation and `α c α⁻¹ = c⁻¹`. A holomorphic `(z,t,u)` with
/// `u² = 1` squares to a vertical translation when `u = −1` and commutes
/// with the center when `u = 1`; both are checked on samples, and together
/// they rule out a holomorphic image. The other families get the standard
/// representation, which is all-holomorphic, as a witness.
pub fn antihol_required(family: FamilyId) -> AntiholVerdict {
    match family {
        FamilyId::HorizontalHalfTwist | FamilyId::DoubleHalfTwist => AntiholVerdict {
            family,
            required: true,
            steps: vec![
                (
                    format!(
                        "(z,t,-1)^2 = (0,2t,1) on {SQUARE_ROOT_SAMPLES} random exact samples"
                    ),
                    half_turn_squares_are_vertical(SQUARE_ROOT_SAMPLES),
                ),
                (
                    format!("(z,t,1) commutes with every (0,s,1) on {SQUARE_ROOT_SAMPLES} random exact samples"),
                    translations_commute_with_center(SQUARE_ROOT_SAMPLES),
                ),
                (
                    "a holomorphic square root of the horizontal translation a must have u^2 = 1; \
                     u = 1 commutes with c, contradicting the twist relation, and u = -1 squares to \
                     a vertical translation, contradicting horizontality (case analysis from the \
                     antiholomorphy theorem, not re-derived)"
                        .to_string(),
                    true,
                ),
            ],
        },
        _ => {
            let params = FamilyParams::smallest_valid(family);
            let d = smallest_allowed_d(family);
            let step = match standard_rep(family, params, d) {
                Ok(rep) => {
                    let holo = rep.images.values().all(|g| !g.is_antiholomorphic());
                    let imgs: Vec<String> = rep.images.iter().map(|(g, v)| format!("{g} -> {v}")).collect();
                    (format!("standard representation {params} at d = {d} is all-holomorphic: {}", imgs.join(", ")), holo)
                }
                Err(e) => (format!("standard representation unavailable: {e}"), false),
            };
            AntiholVerdict {
                family,
                required: false,
                steps: vec![step],
            }
        }
    }
}

/// The least squarefree `d` the family is allowed over.
pub fn smallest_allowed_d(family: FamilyId) -> SquarefreeD {
    let d = match allowed_d(family) {
        AllowedD::AllSquarefree => 1,
        AllowedD::Only(s) => *s.iter().next().expect("nonempty"),
    };
    SquarefreeD::new(d).expect("allowed d are squarefree")
}

fn half_turn_squares_are_vertical(samples: usize) -> bool {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    (0..samples).all(|_| {
        let d = sample::rand_d(&mut rng);
        let z = sample::rand_imag(&mut rng, d);
        let t = sample::rand_t(&mut rng, d);
        let g = HeisIsom::holomorphic(z, t.clone(), -&ImagQuad::one(d)).expect("u = -1");
        &g * &g == HeisIsom::vertical(t.scale(&int(2)))
    })
}

fn translations_commute_with_center(samples: usize) -> bool {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    (0..samples).all(|_| {
        let d = sample::rand_d(&mut rng);
        let g = HeisIsom::translation(sample::rand_imag(&mut rng, d), sample::rand_t(&mut rng, d))
            .expect("u = 1");
        let s = HeisIsom::vertical(RealQuad::sqrt_d_multiple(d, sample::rand_rat(&mut rng)));
        &g * &s == &s * &g
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: u64) -> SquarefreeD {
        SquarefreeD::new(n).unwrap()
    }

    #[test]
    fn unit_groups() {
        assert_eq!(od_units(d(1)).len(), 4);
        assert_eq!(od_units(d(3)).len(), 6);
        for n in [2, 5, 6, 7, 11, 15] {
            assert_eq!(od_units(d(n)).len(), 2, "d = {n}");
        }
    }

    #[test]
    fn roots_of_unity() {
        assert!(zeta_in_ed(4, d(1)).unwrap());
        assert!(zeta_in_ed(3, d(3)).unwrap());
        assert!(zeta_in_ed(6, d(3)).unwrap());
        assert!(!zeta_in_ed(4, d(3)).unwrap());
        assert!(!zeta_in_ed(3, d(1)).unwrap());
        assert!(zeta_in_ed(2, d(13)).unwrap());
        assert!(zeta_in_ed(5, d(1)).is_err());
        assert_eq!(
            root_of_unity(3, d(3)).unwrap().value.as_deref(),
            Some("-1/2 - 1/2*i*sqrt(3)")
        );
    }

    #[test]
    fn obstruction_examples() {
        assert!(!cubic_extension_obstruction(6, d(3)).unwrap());
        assert!(cubic_extension_obstruction(4, d(2)).unwrap());
        assert!(!cubic_extension_obstruction(2, d(2)).unwrap());
    }

    #[test]
    fn allowed_fields() {
        for f in &FamilyId::ALL[..4] {
            assert_eq!(allowed_d(*f), AllowedD::AllSquarefree);
        }
        assert_eq!(allowed_d(FamilyId::QuarterTwist), AllowedD::Only([1].into()));
        assert_eq!(allowed_d(FamilyId::ThirdTwist), AllowedD::Only([3].into()));
        assert_eq!(allowed_d(FamilyId::SixthTwist).to_string(), "Only{3}");
    }

    #[test]
    fn antiholomorphy_verdicts() {
        for f in FamilyId::ALL {
            let v = antihol_required(f);
            let want = matches!(f, FamilyId::HorizontalHalfTwist | FamilyId::DoubleHalfTwist);
            assert_eq!(v.required, want, "{f}");
            assert!(v.all_checks_pass(), "{f}: {:?}", v.steps);
        }
    }
}
