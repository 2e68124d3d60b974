//! Isometries of Nil, realized as the stabilizer `G_∞` of the point at
//! infinity in the Siegel model of the complex hyperbolic plane.
//!
//! An element is stored as `(z, t, u)` or `(z, t, u)·σ`, where `(z, t, u)`
//! is the holomorphic isometry `P_{(z,t,u)} = T_{(z,t)} R_u` and `σ` is the
//! antiholomorphic involution `(z, t) ↦ (z̄, −t)`. Products follow
//!
//! ```text
//! (z₁,t₁,u₁)·(z₂,t₂,u₂) = (u₁z₂ + z₁, t₁ + t₂ + 2 Im(ū₁ z₁ z̄₂), u₁u₂)
//! σ·(z,t,u)             = (z̄, −t, ū)·σ
//! ```
//!
//! Rotational parts are restricted to units of modulus one that are exactly
//! representable in `E_d`.

mod classify;
mod matrix;

pub use classify::{AffineMapC, IsomClass, NilPoint};
pub use matrix::{MatrixError, Poly, UMat};

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::ring::{int, ImagQuad, Rat, RealQuad, RingError, SquarefreeD};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeisError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("rotational part {0} does not have modulus 1")]
    NotUnitModulus(String),
    #[error("operation requires an antiholomorphic element")]
    NotAntiholomorphic,
    #[error("operation requires a holomorphic element")]
    NotHolomorphic,
    #[error("dilation factor must be positive, got {0}")]
    NonPositiveDilation(String),
    #[error("t outside E_d-representable set: i*({0}) is not in Q(i*sqrt({1}))")]
    UnrepresentableT(String, u64),
}

/// An element of `G_∞ = Isom(Nil)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeisIsom {
    d: SquarefreeD,
    z: ImagQuad,
    t: RealQuad,
    u: ImagQuad,
    conj: bool,
}

impl HeisIsom {
    /// Checked constructor: all parts share `d` and `|u| = 1`.
    pub fn new(z: ImagQuad, t: RealQuad, u: ImagQuad, conj: bool) -> Result<Self, HeisError> {
        let d = z.d();
        for other in [t.d(), u.d()] {
            if other != d {
                return Err(RingError::MismatchedD {
                    left: d.get(),
                    right: other.get(),
                }
                .into());
            }
        }
        if !u.norm().is_one() {
            return Err(HeisError::NotUnitModulus(u.to_string()));
        }
        Ok(HeisIsom { d, z, t, u, conj })
    }

    pub fn holomorphic(z: ImagQuad, t: RealQuad, u: ImagQuad) -> Result<Self, HeisError> {
        HeisIsom::new(z, t, u, false)
    }

    /// `(z, t, u)·σ`.
    pub fn antiholomorphic(z: ImagQuad, t: RealQuad, u: ImagQuad) -> Result<Self, HeisError> {
        HeisIsom::new(z, t, u, true)
    }

    pub fn identity(d: SquarefreeD) -> Self {
        HeisIsom {
            d,
            z: ImagQuad::zero(d),
            t: RealQuad::zero(d),
            u: ImagQuad::one(d),
            conj: false,
        }
    }

    pub fn sigma(d: SquarefreeD) -> Self {
        HeisIsom {
            conj: true,
            ..HeisIsom::identity(d)
        }
    }

    /// The Heisenberg translation `T_{(z,t)}`.
    pub fn translation(z: ImagQuad, t: RealQuad) -> Result<Self, HeisError> {
        let d = z.d();
        HeisIsom::new(z, t, ImagQuad::one(d), false)
    }

    /// The vertical translation `(0, t, 1)`.
    pub fn vertical(t: RealQuad) -> Self {
        let d = t.d();
        HeisIsom {
            d,
            z: ImagQuad::zero(d),
            t,
            u: ImagQuad::one(d),
            conj: false,
        }
    }

    /// The Heisenberg rotation `R_u`.
    pub fn rotation(u: ImagQuad) -> Result<Self, HeisError> {
        let d = u.d();
        HeisIsom::new(ImagQuad::zero(d), RealQuad::zero(d), u, false)
    }

    pub fn d(&self) -> SquarefreeD {
        self.d
    }

    pub fn z(&self) -> &ImagQuad {
        &self.z
    }

    pub fn t(&self) -> &RealQuad {
        &self.t
    }

    pub fn u(&self) -> &ImagQuad {
        &self.u
    }

    pub fn is_antiholomorphic(&self) -> bool {
        self.conj
    }

    pub fn is_identity(&self) -> bool {
        !self.conj && self.z.is_zero() && self.t.is_zero() && self.u.is_one()
    }

    /// The holomorphic factor `(z, t, u)`, dropping any trailing `σ`.
    pub fn holomorphic_part(&self) -> HeisIsom {
        HeisIsom {
            conj: false,
            ..self.clone()
        }
    }

    /// Group product `self · other`.
    pub fn compose(&self, other: &HeisIsom) -> Result<HeisIsom, HeisError> {
        if self.d != other.d {
            return Err(RingError::MismatchedD {
                left: self.d.get(),
                right: other.d.get(),
            }
            .into());
        }
        // Move our σ past the second factor: σ(z,t,u) = (z̄,−t,ū)σ.
        let (z2, t2, u2) = if self.conj {
            (other.z.conj(), -&other.t, other.u.conj())
        } else {
            (other.z.clone(), other.t.clone(), other.u.clone())
        };
        let cross = (&(&self.u.conj() * &self.z) * &z2.conj()).im_part().scale(&int(2));
        Ok(HeisIsom {
            d: self.d,
            z: &(&self.u * &z2) + &self.z,
            t: &(&self.t + &t2) + &cross,
            u: &self.u * &u2,
            conj: self.conj ^ other.conj,
        })
    }

    pub fn inverse(&self) -> HeisIsom {
        let ubar = self.u.conj();
        let hol_inv = HeisIsom {
            d: self.d,
            z: -&(&ubar * &self.z),
            t: -&self.t,
            u: ubar,
            conj: false,
        };
        if !self.conj {
            return hol_inv;
        }
        // (Pσ)⁻¹ = σP⁻¹ = conj(P⁻¹)σ
        HeisIsom {
            d: self.d,
            z: hol_inv.z.conj(),
            t: -&hol_inv.t,
            u: hol_inv.u.conj(),
            conj: true,
        }
    }

    /// `selfⁿ`; negative powers go through the inverse.
    pub fn power(&self, n: i64) -> HeisIsom {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = HeisIsom::identity(self.d);
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        acc
    }

    /// Commutator `[self, other] = self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &HeisIsom) -> Result<HeisIsom, HeisError> {
        self.compose(other)?
            .compose(&self.inverse())?
            .compose(&other.inverse())
    }

    /// Closed form for the square of `(z, t, u)·σ`:
    /// `(u z̄ + z, −2 Im(u z̄²), 1)`.
    pub fn antihol_square(&self) -> Result<HeisIsom, HeisError> {
        if !self.conj {
            return Err(HeisError::NotAntiholomorphic);
        }
        let zbar = self.z.conj();
        let t = (&self.u * &(&zbar * &zbar)).im_part().scale(&int(-2));
        Ok(HeisIsom {
            d: self.d,
            z: &(&self.u * &zbar) + &self.z,
            t,
            u: ImagQuad::one(self.d),
            conj: false,
        })
    }

    /// `D_r P_{(z,t,u)} D_r⁻¹ = P_{(rz, r²t, u)}`.
    pub fn dilate_conjugate(&self, r: &Rat) -> Result<HeisIsom, HeisError> {
        if !r.is_positive() {
            return Err(HeisError::NonPositiveDilation(r.to_string()));
        }
        if self.conj {
            return Err(HeisError::NotHolomorphic);
        }
        Ok(HeisIsom {
            d: self.d,
            z: self.z.scale(r),
            t: self.t.scale(&(r * r)),
            u: self.u.clone(),
            conj: false,
        })
    }

    /// Top-right entry `(−|z|² + i t)/2` of the matrix lift.
    pub fn corner_entry(&self) -> Result<ImagQuad, HeisError> {
        let it = self
            .t
            .times_i()
            .ok_or_else(|| HeisError::UnrepresentableT(self.t.to_string(), self.d.get()))?;
        let neg_norm = ImagQuad::from_rat(self.d, -self.z.norm());
        Ok((&neg_norm + &it).scale(&Rat::new(1.into(), 2.into())))
    }

    /// Matrix of the holomorphic part:
    ///
    /// ```text
    /// [1, −u z̄, (−|z|² + i t)/2]
    /// [0,   u,   z             ]
    /// [0,   0,   1             ]
    /// ```
    ///
    /// The flag says whether the isometry is this matrix followed by `σ`
    /// applied first (`Z ↦ M Z̄`).
    pub fn matrix_lift(&self) -> Result<(UMat, bool), HeisError> {
        let d = self.d;
        let corner = self.corner_entry()?;
        let zero = ImagQuad::zero(d);
        let one = ImagQuad::one(d);
        let m = UMat::new(
            d,
            [
                [one.clone(), -&(&self.u * &self.z.conj()), corner],
                [zero.clone(), self.u.clone(), self.z.clone()],
                [zero.clone(), zero, one],
            ],
        )?;
        Ok((m, self.conj))
    }

    /// Membership of the holomorphic part in `G⁰_∞(O_d)`: `z`,
    /// `(−|z|² + i t)/2` and `u` all lie in `O_d`.
    ///
    /// `σ` itself is integral, so for `(z,t,u)·σ` this decides membership in
    /// `G_∞(O_d)`.
    pub fn is_integral(&self) -> bool {
        match self.corner_entry() {
            Ok(corner) => self.z.in_od() && corner.in_od() && self.u.in_od(),
            Err(_) => false,
        }
    }

    /// Image under `Π_*` in `Isom(C)`: `w ↦ u·w + z` or `w ↦ u·w̄ + z`.
    pub fn pi_star(&self) -> AffineMapC {
        AffineMapC::new(self.u.clone(), self.z.clone(), self.conj)
    }

    /// Boundary action on Nil: `σ` first when present, then
    /// `(w, s) ↦ (z + u w, t + s + 2 Im(z ū w̄))`.
    pub fn act(&self, p: &NilPoint) -> NilPoint {
        let (w, s) = if self.conj {
            (p.w.conj(), -&p.s)
        } else {
            (p.w.clone(), p.s.clone())
        };
        let cross = (&(&self.z * &self.u.conj()) * &w.conj()).im_part().scale(&int(2));
        NilPoint {
            w: &self.z + &(&self.u * &w),
            s: &(&self.t + &s) + &cross,
        }
    }
}

impl Mul for &HeisIsom {
    type Output = HeisIsom;

    /// Panics on mismatched `d`; see [`HeisIsom::compose`].
    fn mul(self, rhs: &HeisIsom) -> HeisIsom {
        self.compose(rhs).expect("HeisIsom product")
    }
}

/// Canonical text: `(z; t; u)` or `(z; t; u)*sigma`.
impl fmt::Display for HeisIsom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; {})", self.z, self.t, self.u)?;
        if self.conj {
            f.write_str("*sigma")?;
        }
        Ok(())
    }
}

/// Product of matrix lifts with their conjugation flags:
/// `(M₁, c₁)(M₂, c₂) = (M₁ · c₁(M₂), c₁ ⊕ c₂)`.
pub fn compose_lifts(a: &(UMat, bool), b: &(UMat, bool)) -> Result<(UMat, bool), RingError> {
    let right = if a.1 { b.0.conj() } else { b.0.clone() };
    Ok((a.0.mul(&right)?, a.1 ^ b.1))
}

/// `true` when `x` has modulus one.
pub fn is_unit_modulus(x: &ImagQuad) -> bool {
    x.norm().is_one()
}
