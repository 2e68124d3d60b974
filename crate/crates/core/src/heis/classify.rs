use std::fmt;

use serde::{Deserialize, Serialize};

use super::{HeisError, HeisIsom};
use crate::ring::{ImagQuad, RealQuad};

/// Conjugacy type of a holomorphic element of the stabilizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsomClass {
    Identity,
    Elliptic,
    VerticalTranslation,
    HorizontalTranslation,
    ElliptoParabolic,
}

impl fmt::Display for IsomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IsomClass::Identity => "Identity",
            IsomClass::Elliptic => "Elliptic",
            IsomClass::VerticalTranslation => "VerticalTranslation",
            IsomClass::HorizontalTranslation => "HorizontalTranslation",
            IsomClass::ElliptoParabolic => "ElliptoParabolic",
        };
        f.write_str(s)
    }
}

/// A point `(w, s)` of the Heisenberg group, i.e. of the boundary minus the
/// point at infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NilPoint {
    pub w: ImagQuad,
    pub s: RealQuad,
}

/// An isometry of the plane, `w ↦ u·w + z` or `w ↦ u·w̄ + z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMapC {
    pub u: ImagQuad,
    pub z: ImagQuad,
    pub conj: bool,
}

impl AffineMapC {
    pub fn new(u: ImagQuad, z: ImagQuad, conj: bool) -> Self {
        AffineMapC { u, z, conj }
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one() && self.z.is_zero() && !self.conj
    }

    /// A pure translation `w ↦ w + z`.
    pub fn is_translation(&self) -> bool {
        self.u.is_one() && !self.conj
    }

    pub fn apply(&self, w: &ImagQuad) -> ImagQuad {
        let w = if self.conj { w.conj() } else { w.clone() };
        &(&self.u * &w) + &self.z
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMapC) -> AffineMapC {
        let (u2, z2) = if self.conj {
            (other.u.conj(), other.z.conj())
        } else {
            (other.u.clone(), other.z.clone())
        };
        AffineMapC {
            u: &self.u * &u2,
            z: &(&self.u * &z2) + &self.z,
            conj: self.conj ^ other.conj,
        }
    }
}

impl fmt::Display for AffineMapC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.conj { "conj(w)" } else { "w" };
        write!(f, "w -> ({})*{} + ({})", self.u, w, self.z)
    }
}

impl HeisIsom {
    /// Conjugacy type of a holomorphic stabilizer element.
    ///
    /// With `u = 1` the type is read off `z` and `t`. Otherwise the element
    /// is conjugated by the translation to its horizontal fixed point
    /// `w₀ = z/(1 − u)`, which leaves `(0, t′, u)`; the element is elliptic
    /// exactly when `t′ = 0`.
    pub fn classify(&self) -> Result<IsomClass, HeisError> {
        if self.is_antiholomorphic() {
            return Err(HeisError::NotHolomorphic);
        }
        if self.u().is_one() {
            return Ok(if !self.z().is_zero() {
                IsomClass::HorizontalTranslation
            } else if !self.t().is_zero() {
                IsomClass::VerticalTranslation
            } else {
                IsomClass::Identity
            });
        }
        let centered = self.centered()?;
        Ok(if centered.t().is_zero() {
            IsomClass::Elliptic
        } else {
            IsomClass::ElliptoParabolic
        })
    }

    /// `T⁻¹ g T` with `T` the translation by `(w₀, 0)`, `w₀ = z/(1 − u)`.
    /// Only defined for holomorphic elements with `u ≠ 1`; the result has
    /// `z = 0`.
    pub fn centered(&self) -> Result<HeisIsom, HeisError> {
        if self.is_antiholomorphic() {
            return Err(HeisError::NotHolomorphic);
        }
        let d = self.d();
        let w0 = self.z().checked_div(&(&ImagQuad::one(d) - self.u()))?;
        let shift = HeisIsom::translation(w0, RealQuad::zero(d))?;
        let c = shift.inverse().compose(self)?.compose(&shift)?;
        debug_assert!(c.z().is_zero());
        Ok(c)
    }

    /// Unipotent classification from the minimal polynomial of the lift:
    /// degree 1, 2, 3 for identity, vertical, horizontal. `None` when the
    /// element is not unipotent or its lift is not representable.
    pub fn classify_by_min_poly(&self) -> Option<IsomClass> {
        if self.is_antiholomorphic() || !self.u().is_one() {
            return None;
        }
        let (m, _) = self.matrix_lift().ok()?;
        let p = m.min_poly();
        let (root, n) = p.as_linear_power()?;
        if !root.is_one() {
            return None;
        }
        match n {
            1 => Some(IsomClass::Identity),
            2 => Some(IsomClass::VerticalTranslation),
            3 => Some(IsomClass::HorizontalTranslation),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, SquarefreeD};

    fn d(n: u64) -> SquarefreeD {
        SquarefreeD::new(n).unwrap()
    }

    #[test]
    fn list_examples() {
        let dd = d(2);
        let one = ImagQuad::one(dd);
        let h = HeisIsom::translation(one.clone(), RealQuad::zero(dd)).unwrap();
        assert_eq!(h.classify().unwrap(), IsomClass::HorizontalTranslation);
        let v = HeisIsom::vertical(RealQuad::sqrt_d_multiple(dd, int(1)));
        assert_eq!(v.classify().unwrap(), IsomClass::VerticalTranslation);
        let e = HeisIsom::holomorphic(one.clone(), RealQuad::zero(dd), -&one).unwrap();
        assert_eq!(e.classify().unwrap(), IsomClass::Elliptic);
        assert!((&e * &e).is_identity());
        assert_eq!(HeisIsom::identity(dd).classify().unwrap(), IsomClass::Identity);
        assert_eq!(
            HeisIsom::sigma(dd).classify(),
            Err(HeisError::NotHolomorphic)
        );
    }

    #[test]
    fn quarter_twist_is_ellipto_parabolic() {
        let d1 = d(1);
        for pk in [2i64, 4, 12] {
            let alpha = HeisIsom::holomorphic(
                ImagQuad::zero(d1),
                RealQuad::from_rat(d1, int(4 * pk)),
                ImagQuad::i_sqrt_d(d1),
            )
            .unwrap();
            assert_eq!(alpha.classify().unwrap(), IsomClass::ElliptoParabolic);
            assert_eq!(alpha.classify_by_min_poly(), None);
        }
    }

    #[test]
    fn centering_fixes_the_horizontal_point() {
        let dd = d(3);
        let u = ImagQuad::new(dd, crate::ring::rat(1, 2), crate::ring::rat(1, 2));
        let g = HeisIsom::holomorphic(ImagQuad::from_ints(dd, 6, 2), RealQuad::sqrt_d_multiple(dd, int(5)), u).unwrap();
        let c = g.centered().unwrap();
        assert!(c.z().is_zero());
        assert_eq!(c.u(), g.u());
    }

    #[test]
    fn affine_maps_compose() {
        let dd = d(1);
        let i = ImagQuad::i_sqrt_d(dd);
        let f = AffineMapC::new(i.clone(), ImagQuad::one(dd), true);
        let g = AffineMapC::new(-&i, ImagQuad::from_ints(dd, 2, 3), false);
        let w = ImagQuad::from_ints(dd, 5, -7);
        assert_eq!(f.compose(&g).apply(&w), f.apply(&g.apply(&w)));
    }
}
