//! Seeded random generators of exact elements, for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::heis::HeisIsom;
use crate::obstruct::od_units;
use crate::ring::{int, rat, ImagQuad, Rat, RealQuad, SquarefreeD};

/// Numerators are drawn from `-NUM..=NUM`, denominators from `1..=DEN`.
const NUM: i64 = 12;
const DEN: i64 = 6;

pub fn rand_d<R: Rng>(rng: &mut R) -> SquarefreeD {
    let pool: Vec<SquarefreeD> = SquarefreeD::up_to(30).collect();
    *pool.choose(rng).expect("nonempty pool")
}

pub fn rand_rat<R: Rng>(rng: &mut R) -> Rat {
    rat(rng.gen_range(-NUM..=NUM), rng.gen_range(1..=DEN))
}

pub fn rand_imag<R: Rng>(rng: &mut R, d: SquarefreeD) -> ImagQuad {
    ImagQuad::new(d, rand_rat(rng), rand_rat(rng))
}

/// A `t` coordinate `q·sqrt(d)`, so that `i·t` stays in `E_d`.
pub fn rand_t<R: Rng>(rng: &mut R, d: SquarefreeD) -> RealQuad {
    RealQuad::sqrt_d_multiple(d, rand_rat(rng))
}

/// A modulus-one element of `E_d`: half the time a unit of `O_d`, otherwise
/// the rational point `((1 − d s²) + 2 s i√d) / (1 + d s²)` of the circle.
pub fn rand_unit<R: Rng>(rng: &mut R, d: SquarefreeD) -> ImagQuad {
    if rng.gen_bool(0.5) {
        return od_units(d).choose(rng).expect("±1 always present").clone();
    }
    let s = rand_rat(rng);
    let ds2 = &s * &s * int(d.get() as i64);
    let den = int(1) + &ds2;
    ImagQuad::new(d, (int(1) - ds2) / &den, int(2) * s / den)
}

pub fn rand_holomorphic<R: Rng>(rng: &mut R, d: SquarefreeD) -> HeisIsom {
    HeisIsom::holomorphic(rand_imag(rng, d), rand_t(rng, d), rand_unit(rng, d))
        .expect("unit modulus by construction")
}

pub fn rand_antiholomorphic<R: Rng>(rng: &mut R, d: SquarefreeD) -> HeisIsom {
    HeisIsom::antiholomorphic(rand_imag(rng, d), rand_t(rng, d), rand_unit(rng, d))
        .expect("unit modulus by construction")
}

pub fn rand_isom<R: Rng>(rng: &mut R, d: SquarefreeD) -> HeisIsom {
    if rng.gen_bool(0.5) {
        rand_holomorphic(rng, d)
    } else {
        rand_antiholomorphic(rng, d)
    }
}

/// A unipotent element `(z, t, 1)`; `z` and `t` are each zero a quarter of
/// the time so every unipotent class is hit.
pub fn rand_unipotent<R: Rng>(rng: &mut R, d: SquarefreeD) -> HeisIsom {
    let z = if rng.gen_bool(0.25) {
        ImagQuad::zero(d)
    } else {
        rand_imag(rng, d)
    };
    let t = if rng.gen_bool(0.25) {
        RealQuad::zero(d)
    } else {
        rand_t(rng, d)
    };
    HeisIsom::translation(z, t).expect("u = 1")
}

/// An elliptic element: a vertical-axis rotation with `u ≠ 1` conjugated by
/// a random Heisenberg translation.
pub fn rand_elliptic<R: Rng>(rng: &mut R, d: SquarefreeD) -> HeisIsom {
    let mut u = rand_unit(rng, d);
    while u.is_one() {
        u = rand_unit(rng, d);
    }
    let shift = HeisIsom::translation(rand_imag(rng, d), rand_t(rng, d)).expect("u = 1");
    let rot = HeisIsom::rotation(u).expect("unit modulus");
    &(&shift * &rot) * &shift.inverse()
}
