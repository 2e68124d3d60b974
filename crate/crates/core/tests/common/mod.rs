//! Independent oracles for the integration and acceptance tests.
//!
//! Nothing here calls into the crate's arithmetic: elements of `E_d` are
//! plain pairs of rationals, Heisenberg isometries are checked through
//! their 3×3 lifts with a hand-rolled matrix product, and relators are
//! expanded from the relations as written, by string manipulation.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use heiscusp::heis::HeisIsom;
use heiscusp::ring::{ImagQuad, RealQuad};

pub type Q = BigRational;

pub fn q(n: i64, m: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(m))
}

/// `a + b·i√d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E {
    pub d: i64,
    pub a: Q,
    pub b: Q,
}

impl E {
    pub fn new(d: i64, a: Q, b: Q) -> E {
        E { d, a, b }
    }
    pub fn int(d: i64, a: i64, b: i64) -> E {
        E::new(d, q(a, 1), q(b, 1))
    }
    pub fn zero(d: i64) -> E {
        E::int(d, 0, 0)
    }
    pub fn one(d: i64) -> E {
        E::int(d, 1, 0)
    }
    pub fn of(x: &ImagQuad) -> E {
        E::new(x.d().get() as i64, x.re().clone(), x.im_coeff().clone())
    }
    pub fn add(&self, o: &E) -> E {
        E::new(self.d, &self.a + &o.a, &self.b + &o.b)
    }
    pub fn sub(&self, o: &E) -> E {
        E::new(self.d, &self.a - &o.a, &self.b - &o.b)
    }
    pub fn neg(&self) -> E {
        E::new(self.d, -&self.a, -&self.b)
    }
    pub fn mul(&self, o: &E) -> E {
        let d = q(self.d, 1);
        E::new(
            self.d,
            &self.a * &o.a - d * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
    pub fn conj(&self) -> E {
        E::new(self.d, self.a.clone(), -&self.b)
    }
    pub fn norm(&self) -> Q {
        &self.a * &self.a + q(self.d, 1) * &self.b * &self.b
    }
    pub fn scale(&self, r: &Q) -> E {
        E::new(self.d, &self.a * r, &self.b * r)
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    pub fn pow(&self, n: u32) -> E {
        (0..n).fold(E::one(self.d), |acc, _| acc.mul(self))
    }
}

fn is_int(x: &Q) -> bool {
    x.is_integer()
}

/// Ring of integers: `Z[i√d]`, or for `d ≡ 3 (mod 4)` the elements
/// `(m + n i√d)/2` with `m ≡ n (mod 2)`.
pub fn in_od(x: &E) -> bool {
    if x.d % 4 == 3 {
        let (m, n) = (&x.a * q(2, 1), &x.b * q(2, 1));
        is_int(&m) && is_int(&n) && is_int(&((m - n) / q(2, 1)))
    } else {
        is_int(&x.a) && is_int(&x.b)
    }
}

/// `i·t` as an element of `E_d`, if it is one.
pub fn i_times(t: &RealQuad) -> Option<E> {
    let d = t.d().get() as i64;
    if d == 1 {
        return Some(E::new(1, Q::zero(), t.rational_part() + t.sqrt_d_coeff()));
    }
    t.rational_part()
        .is_zero()
        .then(|| E::new(d, Q::zero(), t.sqrt_d_coeff().clone()))
}

pub type M = [[E; 3]; 3];

pub fn mat_identity(d: i64) -> M {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { E::one(d) } else { E::zero(d) }))
}

pub fn mat_mul(x: &M, y: &M) -> M {
    let d = x[0][0].d;
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(E::zero(d), |acc, k| acc.add(&x[i][k].mul(&y[k][j]))))
    })
}

pub fn mat_conj(x: &M) -> M {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][j].conj()))
}

pub fn mat_adjoint(x: &M) -> M {
    std::array::from_fn(|i| std::array::from_fn(|j| x[j][i].conj()))
}

pub fn mat_sub(x: &M, y: &M) -> M {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][j].sub(&y[i][j])))
}

pub fn mat_scalar(d: i64, c: &E) -> M {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { c.clone() } else { E::zero(d) }))
}

pub fn mat_is_zero(x: &M) -> bool {
    x.iter().flatten().all(E::is_zero)
}

pub fn siegel(d: i64) -> M {
    std::array::from_fn(|i| std::array::from_fn(|j| if i + j == 2 { E::one(d) } else { E::zero(d) }))
}

/// An isometry as a matrix plus a flag for complex conjugation applied
/// first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    pub m: M,
    pub conj: bool,
}

impl Lift {
    pub fn identity(d: i64) -> Lift {
        Lift {
            m: mat_identity(d),
            conj: false,
        }
    }

    /// `M₁ c₁ M₂ c₂ = M₁ c₁(M₂) (c₁ c₂)`.
    pub fn then(&self, o: &Lift) -> Lift {
        let right = if self.conj { mat_conj(&o.m) } else { o.m.clone() };
        Lift {
            m: mat_mul(&self.m, &right),
            conj: self.conj ^ o.conj,
        }
    }

    pub fn inverse(&self) -> Lift {
        // H M* H = M⁻¹ for form-preserving M, and (Mσ)⁻¹ = σ M⁻¹ = conj(M⁻¹)σ.
        let h = siegel(self.m[0][0].d);
        let inv = mat_mul(&mat_mul(&h, &mat_adjoint(&self.m)), &h);
        Lift {
            m: if self.conj { mat_conj(&inv) } else { inv },
            conj: self.conj,
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.conj && self.m == mat_identity(self.m[0][0].d)
    }
}

/// `[1, −u z̄, (−|z|² + i t)/2; 0, u, z; 0, 0, 1]`, built from the raw
/// coordinates.
pub fn lift(g: &HeisIsom) -> Option<Lift> {
    let d = g.d().get() as i64;
    let (z, u) = (E::of(g.z()), E::of(g.u()));
    let it = i_times(g.t())?;
    let corner = E::new(d, -z.norm(), Q::zero()).add(&it).scale(&q(1, 2));
    let m = [
        [E::one(d), u.mul(&z.conj()).neg(), corner],
        [E::zero(d), u.clone(), z],
        [E::zero(d), E::zero(d), E::one(d)],
    ];
    Some(Lift {
        m,
        conj: g.is_antiholomorphic(),
    })
}

/// All nine entries of the lift lie in `O_d`.
pub fn lift_integral(g: &HeisIsom) -> bool {
    lift(g).is_some_and(|l| l.m.iter().flatten().all(in_od))
}

/// Evaluates a whitespace-separated token word (lower case = generator,
/// upper case = inverse) on lifts.
pub fn eval_tokens(tokens: &str, image: &dyn Fn(&str) -> Lift, d: i64) -> Lift {
    tokens.split_whitespace().fold(Lift::identity(d), |acc, tok| {
        let lower = tok.to_lowercase();
        let l = image(&lower);
        acc.then(&if tok == lower { l } else { l.inverse() })
    })
}

// Relation expansion.

/// Letters as `(name, ±1)`.
type Letters = Vec<(String, i64)>;

fn invert(w: &Letters) -> Letters {
    w.iter().rev().map(|(g, e)| (g.clone(), -e)).collect()
}

fn reduce(w: Letters) -> Letters {
    let mut out: Letters = Vec::new();
    for (g, e) in w {
        if out.last().is_some_and(|(h, f)| *h == g && *f == -e) {
            out.pop();
        } else {
            out.push((g, e));
        }
    }
    out
}

/// One side of a relation: factors like `a`, `a^-1`, `c^3`, `[b,a]`, `1`.
fn side(text: &str) -> Letters {
    let mut out = Letters::new();
    for f in text.split_whitespace() {
        if f == "1" {
            continue;
        }
        if let Some(inner) = f.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let (x, y) = inner.split_once(',').expect("commutator");
            let (x, y) = (vec![(x.to_string(), 1)], vec![(y.to_string(), 1)]);
            out.extend(x.iter().cloned());
            out.extend(y.iter().cloned());
            out.extend(invert(&x));
            out.extend(invert(&y));
            continue;
        }
        let (g, e) = match f.split_once('^') {
            Some((g, e)) => (g, e.parse::<i64>().expect("exponent")),
            None => (f, 1),
        };
        for _ in 0..e.abs() {
            out.push((g.to_string(), e.signum()));
        }
    }
    out
}

/// `lhs = rhs` to the token line of `lhs·rhs⁻¹`, freely reduced.
pub fn relator_tokens(relation: &str) -> String {
    let (l, r) = relation.split_once('=').expect("relation has '='");
    let w = reduce(side(l).into_iter().chain(invert(&side(r))).collect());
    w.iter()
        .map(|(g, e)| if *e > 0 { g.clone() } else { g.to_uppercase() })
        .collect::<Vec<_>>()
        .join(" ")
}

/// The relations of each family as written, with parameters substituted.
pub fn relations(family: u8, k: i64, p: i64, k1: i64, k2: i64) -> Vec<String> {
    let head = |e: i64| vec![format!("[b,a] = c^{e}"), "[c,a] = 1".into(), "[c,b] = 1".into()];
    let mut r = match family {
        3 | 4 => head(2 * k),
        _ => head(k),
    };
    let more: Vec<String> = match family {
        1 => vec![],
        2 => vec![
            "[c,alpha] = 1".into(),
            "alpha a = a^-1 alpha".into(),
            "alpha b = b^-1 alpha".into(),
            "alpha^2 = c".into(),
        ],
        3 => vec![
            "[a,alpha] = 1".into(),
            format!("alpha b = b^-1 alpha c^{}", -k),
            "alpha c = c^-1 alpha".into(),
            "alpha^2 = a".into(),
        ],
        4 => vec![
            "[c,alpha] = 1".into(),
            "[a,beta] = 1".into(),
            format!("alpha a = a^-1 alpha c^{k}"),
            format!("alpha b = b^-1 alpha c^{}", -k),
            format!("beta b = b^-1 beta c^{}", -k),
            "beta c = c^-1 beta".into(),
            format!("alpha beta = a^-1 b^-1 beta alpha c^{}", -k - 1),
            "alpha^2 = c".into(),
            "beta^2 = a".into(),
        ],
        5 => vec![
            "[c,alpha] = 1".into(),
            "alpha a = b alpha".into(),
            "alpha b = a^-1 alpha".into(),
            format!("alpha^4 = c^{p}"),
        ],
        6 => vec![
            "[c,alpha] = 1".into(),
            format!("alpha a = b alpha c^{k1}"),
            "alpha b = a^-1 b^-1 alpha".into(),
            format!("alpha^3 = c^{k2}"),
        ],
        7 => vec![
            "[c,alpha] = 1".into(),
            "alpha a = a b alpha".into(),
            "alpha b = a^-1 alpha".into(),
            format!("alpha^6 = c^{k1}"),
        ],
        _ => panic!("no family {family}"),
    };
    r.extend(more);
    r
}

/// Parameter rule of each family, restated from the presentations.
pub fn valid(family: u8, k: i64, p: i64, k1: i64, k2: i64) -> bool {
    k > 0
        && match family {
            1 | 3 => true,
            2 | 4 => k % 2 == 0,
            5 => k % 2 == 0 && (p == 1 || (k % 4 == 0 && p == 3)),
            6 => {
                (k % 3 == 0 && k1 == 0 && (k2 == 1 || k2 == 2))
                    || (k % 3 != 0 && k1 == 1 && k2 == 1)
            }
            7 => ((k % 6 == 0 || k % 6 == 4) && k1 == 1) || ((k % 6 == 0 || k % 6 == 2) && k1 == 5),
            _ => false,
        }
}

/// Bounded search for a primitive `n`-th root of unity `(m + n' i√d)/2`
/// with `|m|, |n'| ≤ 2`; every root of unity in an imaginary quadratic
/// field has this shape.
pub fn zeta_search(n: u32, d: i64) -> bool {
    for m in -2..=2 {
        for nn in -2..=2 {
            let x = E::new(d, q(m, 2), q(nn, 2));
            if x.pow(n) != E::one(d) {
                continue;
            }
            if (1..n).all(|j| x.pow(j) != E::one(d)) {
                return true;
            }
        }
    }
    false
}


/// Relations, integrality and lattice shape of a representation, checked on
/// lifts. Returns the names of the failed checks.
pub fn oracle_certificate(rep: &heiscusp::holonomy::RepAssignment) -> Vec<String> {
    let d = rep.d.get() as i64;
    let fp = rep.params;
    let family = rep.family.index();
    let mut failed = Vec::new();
    let lifts: std::collections::BTreeMap<String, Lift> = rep
        .images
        .iter()
        .map(|(g, img)| (g.name().to_string(), lift(img).expect("representable t")))
        .collect();
    let image = |name: &str| lifts[name].clone();
    let rels = relations(family, fp.k, fp.p.unwrap_or(0), fp.k1.unwrap_or(0), fp.k2.unwrap_or(0));
    for r in &rels {
        if !eval_tokens(&relator_tokens(r), &image, d).is_identity() {
            failed.push(format!("relation {r}"));
        }
    }
    for (g, img) in &rep.images {
        if !lift_integral(img) {
            failed.push(format!("integrality of {}", g.name()));
        }
    }
    // a, b: horizontal translations with independent z; c: vertical.
    let (a, b, c) = (&lifts["a"].m, &lifts["b"].m, &lifts["c"].m);
    let unipotent = |m: &M| m[1][1] == E::one(d);
    let (za, zb) = (&a[1][2], &b[1][2]);
    let independent = !za.mul(&zb.conj()).b.is_zero();
    if !(unipotent(a) && unipotent(b) && independent) {
        failed.push("horizontal lattice".into());
    }
    if !(unipotent(c) && c[1][2].is_zero() && !c[0][2].is_zero()) {
        failed.push("vertical generator".into());
    }
    failed
}

/// Order of `u` as a root of unity, up to 12.
pub fn unit_order(u: &E) -> Option<u32> {
    (1..=12).find(|&n| u.pow(n) == E::one(u.d))
}
