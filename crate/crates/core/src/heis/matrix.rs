//! 3×3 matrices over `E_d`, the Siegel Hermitian form, and exact
//! characteristic and minimal polynomials.

use std::fmt;

use num_traits::Zero;

use crate::ring::{int, ImagQuad, Rat, RingError, SquarefreeD};

/// A 3×3 matrix over `E_d`. Lifts of stabilizer elements satisfy
/// `M* H M = H` for the Siegel form `H`; [`UMat::preserves_form`] checks it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UMat {
    d: SquarefreeD,
    entries: [[ImagQuad; 3]; 3],
}

impl UMat {
    pub fn new(d: SquarefreeD, entries: [[ImagQuad; 3]; 3]) -> Result<Self, RingError> {
        for row in &entries {
            for e in row {
                if e.d() != d {
                    return Err(RingError::MismatchedD {
                        left: d.get(),
                        right: e.d().get(),
                    });
                }
            }
        }
        Ok(UMat { d, entries })
    }

    pub fn from_fn(d: SquarefreeD, f: impl Fn(usize, usize) -> ImagQuad) -> Self {
        let entries = std::array::from_fn(|i| std::array::from_fn(|j| f(i, j)));
        UMat { d, entries }
    }

    pub fn identity(d: SquarefreeD) -> Self {
        UMat::from_fn(d, |i, j| {
            if i == j {
                ImagQuad::one(d)
            } else {
                ImagQuad::zero(d)
            }
        })
    }

    pub fn zero(d: SquarefreeD) -> Self {
        UMat::from_fn(d, |_, _| ImagQuad::zero(d))
    }

    /// The Siegel form: rows `[0,0,1]`, `[0,1,0]`, `[1,0,0]`.
    pub fn siegel_form(d: SquarefreeD) -> Self {
        UMat::from_fn(d, |i, j| {
            if i + j == 2 {
                ImagQuad::one(d)
            } else {
                ImagQuad::zero(d)
            }
        })
    }

    /// The Heisenberg dilation `diag(r, 1, 1/r)`.
    pub fn dilation(d: SquarefreeD, r: &Rat) -> Result<Self, RingError> {
        if r.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let diag = [r.clone(), int(1), r.recip()];
        Ok(UMat::from_fn(d, |i, j| {
            if i == j {
                ImagQuad::from_rat(d, diag[i].clone())
            } else {
                ImagQuad::zero(d)
            }
        }))
    }

    pub fn d(&self) -> SquarefreeD {
        self.d
    }

    pub fn entry(&self, i: usize, j: usize) -> &ImagQuad {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[[ImagQuad; 3]; 3] {
        &self.entries
    }

    pub fn mul(&self, other: &UMat) -> Result<UMat, RingError> {
        if self.d != other.d {
            return Err(RingError::MismatchedD {
                left: self.d.get(),
                right: other.d.get(),
            });
        }
        Ok(UMat::from_fn(self.d, |i, j| {
            let mut acc = ImagQuad::zero(self.d);
            for k in 0..3 {
                acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
            }
            acc
        }))
    }

    pub fn add(&self, other: &UMat) -> UMat {
        UMat::from_fn(self.d, |i, j| &self.entries[i][j] + &other.entries[i][j])
    }

    pub fn scale(&self, c: &ImagQuad) -> UMat {
        UMat::from_fn(self.d, |i, j| &self.entries[i][j] * c)
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> UMat {
        UMat::from_fn(self.d, |i, j| self.entries[i][j].conj())
    }

    pub fn conj_transpose(&self) -> UMat {
        UMat::from_fn(self.d, |i, j| self.entries[j][i].conj())
    }

    /// `M* H M == H`.
    pub fn preserves_form(&self) -> bool {
        let h = UMat::siegel_form(self.d);
        let lhs = self
            .conj_transpose()
            .mul(&h)
            .and_then(|m| m.mul(self))
            .expect("same d");
        lhs == h
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.entries[1][0].is_zero() && self.entries[2][0].is_zero() && self.entries[2][1].is_zero()
    }

    pub fn trace(&self) -> ImagQuad {
        &(&self.entries[0][0] + &self.entries[1][1]) + &self.entries[2][2]
    }

    pub fn det(&self) -> ImagQuad {
        let m = &self.entries;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
        };
        let t0 = &m[0][0] * &minor(1, 2, 1, 2);
        let t1 = &m[0][1] * &minor(1, 2, 0, 2);
        let t2 = &m[0][2] * &minor(1, 2, 0, 1);
        &(&t0 - &t1) + &t2
    }

    /// `det(X·I − M) = X³ − tr·X² + c₂·X − det`, with `c₂` the sum of the
    /// principal 2×2 minors.
    pub fn char_poly(&self) -> Poly {
        let m = &self.entries;
        let pm = |i: usize, j: usize| &(&m[i][i] * &m[j][j]) - &(&m[i][j] * &m[j][i]);
        let c2 = &(&pm(0, 1) + &pm(0, 2)) + &pm(1, 2);
        Poly::new(
            self.d,
            vec![-self.det(), c2, -self.trace(), ImagQuad::one(self.d)],
        )
    }

    /// Eigenvalues of an upper-triangular matrix: its diagonal.
    pub fn eigenvalues_upper(&self) -> Result<Vec<ImagQuad>, MatrixError> {
        if !self.is_upper_triangular() {
            return Err(MatrixError::NotUpperTriangular);
        }
        Ok((0..3).map(|i| self.entries[i][i].clone()).collect())
    }

    /// Monic minimal polynomial.
    ///
    /// For an upper-triangular matrix the candidates are the monic divisors
    /// of the characteristic polynomial `∏(X − λᵢ)`, tried in increasing
    /// degree. Otherwise falls back to [`UMat::min_poly_krylov`].
    pub fn min_poly(&self) -> Poly {
        let Ok(eig) = self.eigenvalues_upper() else {
            return self.min_poly_krylov();
        };
        for size in 1..=3usize {
            for subset in submultisets(&eig, size) {
                let candidate = Poly::from_roots(self.d, &subset);
                if candidate.eval_matrix(self) == UMat::zero(self.d) {
                    return candidate;
                }
            }
        }
        unreachable!("Cayley-Hamilton: the characteristic polynomial annihilates M")
    }

    /// Minimal polynomial from the first linear dependency among
    /// `I, M, M², M³`, solved exactly over `E_d`.
    pub fn min_poly_krylov(&self) -> Poly {
        let mut powers = vec![UMat::identity(self.d)];
        for k in 1..=3usize {
            let next = powers[k - 1].mul(self).expect("same d");
            if let Some(coeffs) = solve_combination(&powers, &next) {
                // next = Σ cᵢ Mⁱ  =>  X^k − Σ cᵢ Xⁱ
                let mut poly: Vec<ImagQuad> = coeffs.into_iter().map(|c| -c).collect();
                poly.push(ImagQuad::one(self.d));
                return Poly::new(self.d, poly);
            }
            powers.push(next);
        }
        unreachable!("Cayley-Hamilton bounds the degree by 3")
    }
}

impl fmt::Display for UMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
            if i < 2 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is not upper-triangular")]
    NotUpperTriangular,
}

// Distinct sub-multisets of `items` of the given size.
fn submultisets(items: &[ImagQuad], size: usize) -> Vec<Vec<ImagQuad>> {
    fn go(items: &[ImagQuad], size: usize, from: usize, acc: &mut Vec<ImagQuad>, out: &mut Vec<Vec<ImagQuad>>) {
        if acc.len() == size {
            if !out.iter().any(|p| same_multiset(p, acc)) {
                out.push(acc.clone());
            }
            return;
        }
        for i in from..items.len() {
            acc.push(items[i].clone());
            go(items, size, i + 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::new(), &mut out);
    out
}

fn same_multiset(a: &[ImagQuad], b: &[ImagQuad]) -> bool {
    let mut rest: Vec<&ImagQuad> = b.iter().collect();
    for x in a {
        match rest.iter().position(|y| *y == x) {
            Some(pos) => {
                rest.swap_remove(pos);
            }
            None => return false,
        }
    }
    rest.is_empty()
}

// Solve target = Σ cᵢ basis[i] entrywise (9 equations), or None.
fn solve_combination(basis: &[UMat], target: &UMat) -> Option<Vec<ImagQuad>> {
    let d = target.d;
    let k = basis.len();
    let mut rows: Vec<Vec<ImagQuad>> = (0..9)
        .map(|e| {
            let (i, j) = (e / 3, e % 3);
            let mut row: Vec<ImagQuad> = basis.iter().map(|b| b.entries[i][j].clone()).collect();
            row.push(target.entries[i][j].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        rows[r] = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut sol = vec![ImagQuad::zero(d); k];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][k].clone();
    }
    Some(sol)
}

/// Dense univariate polynomial over `E_d`, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    d: SquarefreeD,
    coeffs: Vec<ImagQuad>,
}

impl Poly {
    pub fn new(d: SquarefreeD, mut coeffs: Vec<ImagQuad>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(ImagQuad::zero(d));
        }
        Poly { d, coeffs }
    }

    /// `∏ (X − rᵢ)`.
    pub fn from_roots(d: SquarefreeD, roots: &[ImagQuad]) -> Self {
        let mut p = Poly::new(d, vec![ImagQuad::one(d)]);
        for r in roots {
            p = p.mul(&Poly::new(d, vec![-r, ImagQuad::one(d)]));
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ImagQuad] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![ImagQuad::zero(self.d); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(self.d, out)
    }

    pub fn eval(&self, x: &ImagQuad) -> ImagQuad {
        let mut acc = ImagQuad::zero(self.d);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_matrix(&self, m: &UMat) -> UMat {
        let mut acc = UMat::zero(self.d);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).expect("same d").add(&UMat::identity(self.d).scale(c));
        }
        acc
    }

    /// `Some((r, n))` when the polynomial is exactly `(X − r)ⁿ`.
    pub fn as_linear_power(&self) -> Option<(ImagQuad, usize)> {
        let n = self.degree();
        if n == 0 || !self.coeffs[n].is_one() {
            return None;
        }
        let r = self.coeffs[n - 1].scale(&int(-1)).scale(&int(n as i64).recip());
        let candidate = Poly::from_roots(self.d, &vec![r.clone(); n]);
        (candidate == *self).then_some((r, n))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((r, n)) = self.as_linear_power() {
            let factor = if r.is_zero() {
                "X".to_string()
            } else {
                let neg = -&r;
                let text = neg.to_string();
                if text.starts_with('-') {
                    format!("(X - {})", text.trim_start_matches('-'))
                } else if neg.is_real() {
                    format!("(X + {text})")
                } else {
                    format!("(X + ({text}))")
                }
            };
            return if n == 1 {
                f.write_str(&factor)
            } else {
                write!(f, "{factor}^{n}")
            };
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            let coeff = if c.is_one() && i > 0 {
                String::new()
            } else if c.is_real() || i == 0 {
                c.to_string()
            } else {
                format!("({c})")
            };
            terms.push(match (coeff.is_empty(), mono.is_empty()) {
                (true, _) => mono,
                (false, true) => coeff,
                (false, false) => format!("{coeff}*{mono}"),
            });
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn d(n: u64) -> SquarefreeD {
        SquarefreeD::new(n).unwrap()
    }

    #[test]
    fn siegel_form_is_preserved_by_dilations() {
        let m = UMat::dilation(d(5), &rat(7, 3)).unwrap();
        assert!(m.preserves_form());
        assert!(UMat::identity(d(5)).preserves_form());
    }

    #[test]
    fn min_poly_of_identity() {
        let p = UMat::identity(d(2)).min_poly();
        assert_eq!(p.degree(), 1);
        assert_eq!(p.to_string(), "(X - 1)");
    }

    #[test]
    fn krylov_agrees_on_non_triangular_matrix() {
        let dd = d(3);
        let m = UMat::from_fn(dd, |i, j| ImagQuad::from_ints(dd, (i * 3 + j) as i64 % 4, (i + j) as i64 % 2));
        assert!(!m.is_upper_triangular());
        let p = m.min_poly();
        assert_eq!(p, m.min_poly_krylov());
        assert_eq!(p.eval_matrix(&m), UMat::zero(dd));
        // generic matrix: minimal = characteristic
        assert_eq!(p, m.char_poly());
        assert_eq!(m.eigenvalues_upper(), Err(MatrixError::NotUpperTriangular));
    }

    #[test]
    fn char_poly_of_diagonal() {
        let dd = d(7);
        let m = UMat::dilation(dd, &rat(2, 1)).unwrap();
        let expected = Poly::from_roots(
            dd,
            &[
                ImagQuad::from_ints(dd, 2, 0),
                ImagQuad::one(dd),
                ImagQuad::from_rat(dd, rat(1, 2)),
            ],
        );
        assert_eq!(m.char_poly(), expected);
        assert_eq!(m.min_poly(), expected);
    }

    #[test]
    fn submultisets_dedupe_repeats() {
        let dd = d(1);
        let one = ImagQuad::one(dd);
        let i = ImagQuad::i_sqrt_d(dd);
        let items = [one.clone(), i.clone(), one.clone()];
        assert_eq!(submultisets(&items, 1).len(), 2);
        assert_eq!(submultisets(&items, 2).len(), 2);
        assert_eq!(submultisets(&items, 3).len(), 1);
    }

    #[test]
    fn poly_display() {
        let dd = d(1);
        let p = Poly::from_roots(dd, &vec![ImagQuad::one(dd); 3]);
        assert_eq!(p.to_string(), "(X - 1)^3");
        let q = Poly::from_roots(dd, &[ImagQuad::one(dd), ImagQuad::i_sqrt_d(dd)]);
        assert_eq!(q.as_linear_power(), None);
        assert_eq!(q.to_string(), "X^2 + (-1 - i)*X + i");
    }
}
