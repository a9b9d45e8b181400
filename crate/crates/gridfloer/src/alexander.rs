//! Exact multivariable Laurent polynomials, the minesweeper matrix, its
//! determinant, and the normalized Alexander polynomial.
//!
//! Exponents live on a doubled lattice throughout: the stored vector `e`
//! denotes the monomial `prod t_i^(e_i / 2)`, so the half-integer gradings
//! of links and the `t^(1/2) - t^(-1/2)` factors stay exact. Coefficients
//! are checked i64; the scales here keep them far from overflow, which is
//! an error rather than a wrap if it ever triggers.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gradings::GradingTables;
use crate::grid::GridDiagram;
use crate::homology::PoincarePoly;

/// Sparse exact Laurent polynomial in `nvars` variables on the doubled
/// exponent lattice. No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, i64>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], 1)
    }

    /// `coeff * t^(exps2 / 2)`.
    pub fn monomial(exps2: Vec<i32>, coeff: i64) -> Self {
        let mut p = LaurentPoly {
            nvars: exps2.len(),
            terms: BTreeMap::new(),
        };
        p.add_term(exps2, coeff);
        p
    }

    /// `1 - t_var` on the doubled lattice.
    pub fn one_minus_t(nvars: usize, var: usize) -> Self {
        let mut p = LaurentPoly::one(nvars);
        let mut e = vec![0; nvars];
        e[var] = 2;
        p.add_term(e, -1);
        p
    }

    /// `t_var^(1/2) - t_var^(-1/2)`.
    pub fn sqrt_t_minus_inv(nvars: usize, var: usize) -> Self {
        let mut hi = vec![0; nvars];
        hi[var] = 1;
        let mut lo = vec![0; nvars];
        lo[var] = -1;
        let mut p = LaurentPoly::monomial(hi, 1);
        p.add_term(lo, -1);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exps2: Vec<i32>, coeff: i64) {
        debug_assert_eq!(exps2.len(), self.nvars);
        if coeff == 0 {
            return;
        }
        match self.terms.entry(exps2) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().checked_add(coeff).expect("coefficient overflow");
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i32>, &i64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps2: &[i32]) -> i64 {
        self.terms.get(exps2).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca.checked_mul(cb).expect("coefficient overflow");
                out.add_term(e, c);
            }
        }
        out
    }

    /// Substitutes `t_i -> t_i^{-1}` for every variable.
    pub fn invert_vars(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, &c) in &self.terms {
            out.add_term(e.iter().map(|v| -v).collect(), c);
        }
        out
    }

    /// Multiplies by the monomial `t^(shift2 / 2)`.
    pub fn shift(&self, shift2: &[i32]) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, &c) in &self.terms {
            out.add_term(e.iter().zip(shift2).map(|(a, b)| a + b).collect(), c);
        }
        out
    }

    /// Value at `t_1 = ... = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Lexicographically largest exponent with its coefficient.
    pub fn leading(&self) -> Option<(&Vec<i32>, i64)> {
        self.terms.iter().next_back().map(|(e, &c)| (e, c))
    }

    /// Exact division, erroring when the quotient would not be a Laurent
    /// polynomial. Ordinary term-by-term long division; the quotient support
    /// is confined to the exponent box forced by the factorization, which
    /// bounds the loop even over Laurent exponents.
    pub fn try_div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::DivisionFailure("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars));
        }
        let bound_lo: Vec<i32> = (0..self.nvars)
            .map(|v| self.min_exp(v) - divisor.min_exp(v))
            .collect();
        let bound_hi: Vec<i32> = (0..self.nvars)
            .map(|v| self.max_exp(v) - divisor.max_exp(v))
            .collect();
        let (lead_e, lead_c) = divisor.leading().expect("divisor nonzero");
        let lead_e = lead_e.clone();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.leading() {
            let qe: Vec<i32> = re.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let inside = qe
                .iter()
                .zip(bound_lo.iter().zip(&bound_hi))
                .all(|(q, (lo, hi))| lo <= q && q <= hi);
            if !inside || rc % lead_c != 0 {
                return Err(Error::DivisionFailure(format!(
                    "{} is not divisible by {}",
                    self.display(),
                    divisor.display()
                )));
            }
            let qc = rc / lead_c;
            quot.add_term(qe.clone(), qc);
            for (de, &dc) in &divisor.terms {
                let e: Vec<i32> = qe.iter().zip(de).map(|(a, b)| a + b).collect();
                rem.add_term(e, -(qc.checked_mul(dc).expect("coefficient overflow")));
            }
        }
        Ok(quot)
    }

    fn min_exp(&self, var: usize) -> i32 {
        self.terms.keys().map(|e| e[var]).min().unwrap_or(0)
    }

    fn max_exp(&self, var: usize) -> i32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Text form: terms `c * t1^{e/2}` in lexicographic exponent order.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let var_name = |v: usize| {
            if self.nvars == 1 {
                "t".to_string()
            } else {
                format!("t{}", v + 1)
            }
        };
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut s = String::new();
            if *c < 0 {
                s.push_str("- ");
            } else if !parts.is_empty() {
                s.push_str("+ ");
            }
            let mag = c.abs();
            let vars: Vec<String> = (0..self.nvars)
                .filter(|&v| e[v] != 0)
                .map(|v| {
                    if e[v] % 2 == 0 {
                        format!("{}^{}", var_name(v), e[v] / 2)
                    } else {
                        format!("{}^({}/2)", var_name(v), e[v])
                    }
                })
                .collect();
            if vars.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    s.push_str(&format!("{mag} "));
                }
                s.push_str(&vars.join(" "));
            }
            parts.push(s);
        }
        parts.join(" ")
    }

    /// JSON form: a list of `{exponents_doubled, coeff}` objects.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    serde_json::json!({
                        "exponents_doubled": e,
                        "coeff": c,
                    })
                })
                .collect(),
        )
    }
}

/// The n x n matrix of monomials `t^(a(i,j))`, `a(i,j)` the per-component
/// minesweeper exponents (minus the winding numbers) at the lattice point
/// `(i, j)`. Rows are printed top row first, matching the usual picture.
pub fn minesweeper(g: &GridDiagram) -> Vec<Vec<LaurentPoly>> {
    let n = g.n();
    let ell = g.ell();
    let tables = GradingTables::new(g);
    (0..n)
        .map(|r| {
            let j = n - 1 - r;
            (0..n)
                .map(|i| {
                    let e: Vec<i32> = (0..ell)
                        .map(|k| 2 * tables.exponent(k, i, j) as i32)
                        .collect();
                    LaurentPoly::monomial(e, 1)
                })
                .collect()
        })
        .collect()
}

/// Exact determinant of a Laurent polynomial matrix.
///
/// Minesweeper-shaped matrices (all monomial entries) get a structured
/// reduction first: subtract each column from the next, factor the
/// exposed binomial `t_i^{±1} - 1` out of every column but the first, and
/// expand along the row that the subtraction trivialized. The remaining
/// minor (again all monomials) goes to fraction-free Bareiss elimination,
/// as does any matrix the pattern does not fit.
pub fn laurent_det(m: &[Vec<LaurentPoly>]) -> Result<LaurentPoly> {
    let k = m.len();
    if k == 0 {
        return Ok(LaurentPoly::one(0));
    }
    let nvars = m[0][0].nvars();
    for row in m {
        if row.len() != k {
            return Err(Error::DivisionFailure(
                "determinant of non-square matrix".into(),
            ));
        }
    }
    if k == 1 {
        return Ok(m[0][0].clone());
    }
    if let Some(det) = try_structured_det(m, nvars)? {
        return Ok(det);
    }
    bareiss_det(m.to_vec(), nvars)
}

fn monomial_of(p: &LaurentPoly) -> Option<(Vec<i32>, i64)> {
    if p.num_terms() == 1 {
        p.leading().map(|(e, c)| (e.clone(), c))
    } else {
        None
    }
}

/// The column-difference reduction. Returns Ok(None) when the matrix does
/// not have the minesweeper shape.
fn try_structured_det(m: &[Vec<LaurentPoly>], nvars: usize) -> Result<Option<LaurentPoly>> {
    let k = m.len();
    let mut mono = vec![vec![(vec![0i32; nvars], 0i64); k]; k];
    for (i, row) in m.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            match monomial_of(p) {
                Some(t) => mono[i][j] = t,
                None => return Ok(None),
            }
        }
    }
    // diff[r][c] = col_c - col_{c-1} for c >= 1; column 0 is unchanged.
    // Each nonzero difference in column c must be coeff * t^{prev} *
    // (t_v^{±1} - 1) for one (v, direction) shared by the whole column.
    let mut factors = LaurentPoly::one(nvars);
    let mut reduced: Vec<Vec<LaurentPoly>> = vec![vec![LaurentPoly::zero(nvars); k]; k];
    for r in 0..k {
        reduced[r][0] = m[r][0].clone();
    }
    for c in 1..k {
        let mut dir: Option<(usize, i32)> = None;
        for r in 0..k {
            let (ecur, ccur) = &mono[r][c];
            let (eprev, cprev) = &mono[r][c - 1];
            if ecur == eprev && ccur == cprev {
                continue; // zero difference
            }
            if ccur != cprev {
                return Ok(None);
            }
            let delta: Vec<i32> = ecur.iter().zip(eprev).map(|(a, b)| a - b).collect();
            let nz: Vec<usize> = (0..nvars).filter(|&v| delta[v] != 0).collect();
            if nz.len() != 1 || delta[nz[0]].abs() != 2 {
                return Ok(None);
            }
            let this = (nz[0], delta[nz[0]]);
            match dir {
                None => dir = Some(this),
                Some(d) if d == this => {}
                _ => return Ok(None),
            }
            // (t^cur - t^prev) = (t_v^{±1} - 1) * t^prev * coeff
            reduced[r][c] = LaurentPoly::monomial(eprev.clone(), *cprev);
        }
        if let Some((v, d)) = dir {
            // factor t_v - 1 (upward) or t_v^{-1} - 1 (downward)
            let mut f = LaurentPoly::zero(nvars);
            let mut e = vec![0i32; nvars];
            e[v] = d;
            f.add_term(e, 1);
            f.add_term(vec![0; nvars], -1);
            factors = factors.mul(&f);
        } else {
            // whole column cancelled: two equal columns, determinant zero
            return Ok(Some(LaurentPoly::zero(nvars)));
        }
    }
    // A row whose differenced entries all vanished expands trivially.
    let pivot_row = (0..k).find(|&r| (1..k).all(|c| reduced[r][c].is_zero()));
    let Some(pr) = pivot_row else {
        return Ok(None);
    };
    let lead = reduced[pr][0].clone();
    let minor: Vec<Vec<LaurentPoly>> = (0..k)
        .filter(|&r| r != pr)
        .map(|r| (1..k).map(|c| reduced[r][c].clone()).collect())
        .collect();
    let minor_det = if minor.is_empty() {
        LaurentPoly::one(nvars)
    } else {
        bareiss_det(minor, nvars)?
    };
    let sign = if pr % 2 == 0 { 1 } else { -1 };
    let mut det = factors.mul(&lead).mul(&minor_det);
    if sign < 0 {
        det = det.neg();
    }
    Ok(Some(det))
}

/// Fraction-free Gaussian elimination (Bareiss): every division is by the
/// previous pivot and exact over the Laurent ring.
fn bareiss_det(mut m: Vec<Vec<LaurentPoly>>, nvars: usize) -> Result<LaurentPoly> {
    let k = m.len();
    let mut prev = LaurentPoly::one(nvars);
    let mut sign = 1i64;
    for step in 0..k {
        // Pivot: any row with a nonzero entry in column `step`.
        let pivot = (step..k).find(|&r| !m[r][step].is_zero());
        let Some(pr) = pivot else {
            return Ok(LaurentPoly::zero(nvars));
        };
        if pr != step {
            m.swap(pr, step);
            sign = -sign;
        }
        for r in step + 1..k {
            for c in step + 1..k {
                let hi = m[r][c].mul(&m[step][step]);
                let lo = m[r][step].mul(&m[step][c]);
                m[r][c] = hi.sub(&lo).try_div_exact(&prev)?;
            }
            m[r][step] = LaurentPoly::zero(nvars);
        }
        prev = m[step][step].clone();
    }
    let det = m[k - 1][k - 1].clone();
    Ok(if sign < 0 { det.neg() } else { det })
}

/// The normalized multivariable Alexander polynomial: the minesweeper
/// determinant divided by `(1-t)^(n-1)` (knots) or `prod (1-t_i)^(n_i)`
/// (links), recentered so the exponent support is symmetric under inverting
/// every variable. The sign is fixed by `Delta(1) = +1` for knots and a
/// positive lexicographic leading coefficient for links; the theory
/// determines both only up to sign.
pub fn alexander_polynomial(g: &GridDiagram) -> Result<LaurentPoly> {
    let det = laurent_det(&minesweeper(g))?;
    normalize_determinant(g, &det)
}

pub(crate) fn normalize_determinant(g: &GridDiagram, det: &LaurentPoly) -> Result<LaurentPoly> {
    let ell = g.ell();
    if det.is_zero() {
        return Ok(LaurentPoly::zero(ell));
    }
    let mut p = det.clone();
    if ell == 1 {
        let d = LaurentPoly::one_minus_t(1, 0);
        for _ in 1..g.n() {
            p = p.try_div_exact(&d)?;
        }
    } else {
        for comp in 0..ell {
            let d = LaurentPoly::one_minus_t(ell, comp);
            for _ in 0..g.comp_sizes()[comp] {
                p = p.try_div_exact(&d)?;
            }
        }
    }
    if p.is_zero() {
        return Ok(p);
    }
    // Recenter each variable: support must be symmetrizable on the lattice.
    let shift2: Vec<i32> = (0..ell)
        .map(|v| {
            let (lo, hi) = (p.min_exp(v), p.max_exp(v));
            if (lo + hi) % 2 != 0 {
                return i32::MIN;
            }
            -(lo + hi) / 2
        })
        .collect();
    if shift2.contains(&i32::MIN) {
        return Err(Error::DivisionFailure(
            "determinant cannot be symmetrized on the half-integer lattice".into(),
        ));
    }
    let mut p = p.shift(&shift2);
    let inv = p.invert_vars();
    if inv != p && inv != p.neg() {
        return Err(Error::DivisionFailure(
            "normalized polynomial is not symmetric up to sign".into(),
        ));
    }
    let flip = if ell == 1 {
        let v = p.eval_at_one();
        if v.abs() != 1 {
            return Err(Error::DivisionFailure(format!(
                "Delta(1) = {v}, expected a unit for a knot"
            )));
        }
        v < 0
    } else {
        p.leading().map(|(_, c)| c < 0).unwrap_or(false)
    };
    if flip {
        p = p.neg();
    }
    Ok(p)
}

/// Euler characteristic of the tilde chain groups: the alternating-sign
/// generating function over generators, computable without homology.
pub fn chain_euler(g: &GridDiagram, cap: usize) -> Result<LaurentPoly> {
    let gens = crate::complex::enumerate_generators(g, cap)?;
    Ok(chain_euler_from(&gens))
}

pub(crate) fn chain_euler_from(gens: &crate::complex::Generators) -> LaurentPoly {
    let mut p = LaurentPoly::zero(gens.ell);
    for i in 0..gens.count {
        let sign = if gens.maslov(i).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        let e: Vec<i32> = gens.alex2(i).iter().map(|&v| i32::from(v)).collect();
        p.add_term(e, sign);
    }
    p
}

/// Euler characteristic of a bigraded rank function.
pub fn poly_euler(p: &PoincarePoly, ell: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(ell);
    for (k, &r) in p.iter() {
        let sign = if k.maslov.rem_euclid(2) == 0 { 1 } else { -1 };
        let e: Vec<i32> = k.alex2.iter().map(|&v| i32::from(v)).collect();
        out.add_term(e, sign * r as i64);
    }
    out
}

/// If `p == s * t^(shift/2) * q` for a single sign and monomial, returns
/// `(shift, s)`.
pub fn monomial_ratio(p: &LaurentPoly, q: &LaurentPoly) -> Option<(Vec<i32>, i64)> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Some((vec![0; p.nvars()], 1)),
        (true, false) | (false, true) => return None,
        _ => {}
    }
    let (pe, pc) = p.leading()?;
    let (qe, qc) = q.leading()?;
    if pc.abs() != qc.abs() {
        return None;
    }
    let shift: Vec<i32> = pe.iter().zip(qe).map(|(a, b)| a - b).collect();
    let sign = if pc == qc { 1 } else { -1 };
    let mut cand = q.shift(&shift);
    if sign < 0 {
        cand = cand.neg();
    }
    if &cand == p {
        Some((shift, sign))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::parse_grid;

    fn unknot2() -> GridDiagram {
        parse_grid("n = 2\nX = 0 1\nO = 1 0\n").unwrap()
    }

    fn trefoil5() -> GridDiagram {
        parse_grid("n = 5\nX = 0 1 2 3 4\nO = 2 3 4 0 1\n").unwrap()
    }

    fn figure8() -> GridDiagram {
        parse_grid("n = 6\nX = 0 4 3 1 2 5\nO = 3 2 5 4 0 1\n").unwrap()
    }

    fn poly1(terms: &[(i32, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(1);
        for &(e, c) in terms {
            p.add_term(vec![e], c);
        }
        p
    }

    #[test]
    fn det_of_1x1() {
        let m = vec![vec![LaurentPoly::monomial(vec![4], 1)]];
        assert_eq!(laurent_det(&m).unwrap(), LaurentPoly::monomial(vec![4], 1));
    }

    #[test]
    fn det_of_all_ones_vanishes() {
        let one = LaurentPoly::one(1);
        let m = vec![vec![one.clone(); 3]; 3];
        assert!(laurent_det(&m).unwrap().is_zero());
    }

    #[test]
    fn bareiss_matches_cofactor_on_2x2() {
        let t = LaurentPoly::monomial(vec![2], 1);
        let one = LaurentPoly::one(1);
        // det [[1, t], [t, 1]] = 1 - t^2
        let m = vec![vec![one.clone(), t.clone()], vec![t.clone(), one.clone()]];
        let d = laurent_det(&m).unwrap();
        assert_eq!(d, poly1(&[(0, 1), (4, -1)]));
    }

    #[test]
    fn exact_division_by_binomial() {
        // (1 - t^2) / (1 - t) = 1 + t
        let p = poly1(&[(0, 1), (4, -1)]);
        let d = LaurentPoly::one_minus_t(1, 0);
        assert_eq!(p.try_div_exact(&d).unwrap(), poly1(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn inexact_division_is_detected() {
        let p = poly1(&[(0, 1), (2, 1)]); // 1 + t
        let d = LaurentPoly::one_minus_t(1, 0);
        assert!(p.try_div_exact(&d).is_err());
    }

    #[test]
    fn unknot_minesweeper_det() {
        let g = unknot2();
        let m = minesweeper(&g);
        // Exactly one entry is not 1, and the determinant is +-t^k (1 - t).
        let nontrivial: usize = m
            .iter()
            .flatten()
            .filter(|p| **p != LaurentPoly::one(1))
            .count();
        assert_eq!(nontrivial, 1);
        let det = laurent_det(&m).unwrap();
        let target = LaurentPoly::one_minus_t(1, 0);
        assert!(
            monomial_ratio(&det, &target).is_some(),
            "det = {}",
            det.display()
        );
    }

    #[test]
    fn unknot_alexander_is_one() {
        for n in 2..=5 {
            let sx: Vec<u8> = (0..n as u8).collect();
            let so: Vec<u8> = (0..n).map(|i| ((i + 1) % n) as u8).collect();
            let g = GridDiagram::new(sx, so).unwrap();
            let delta = alexander_polynomial(&g).unwrap();
            assert_eq!(delta, LaurentPoly::one(1), "n = {n}");
        }
    }

    #[test]
    fn trefoil_alexander() {
        let delta = alexander_polynomial(&trefoil5()).unwrap();
        assert_eq!(delta, poly1(&[(-2, 1), (0, -1), (2, 1)]));
    }

    #[test]
    fn figure8_minesweeper_row_patterns() {
        // The running example: one row reads (1,1,1,t,t,t) and the bottom
        // row is all ones.
        let m = minesweeper(&figure8());
        let row_t = vec![0, 0, 0, 2, 2, 2];
        let has_pattern = m.iter().any(|row| {
            row.iter()
                .zip(&row_t)
                .all(|(p, &e)| *p == LaurentPoly::monomial(vec![e], 1))
        });
        assert!(has_pattern);
        let all_ones = m.last().unwrap().iter().all(|p| *p == LaurentPoly::one(1));
        assert!(all_ones);
    }

    #[test]
    fn figure8_alexander() {
        // Delta(4_1) with Delta(1) = 1 is -t + 3 - t^{-1}.
        let delta = alexander_polynomial(&figure8()).unwrap();
        assert_eq!(delta, poly1(&[(-2, -1), (0, 3), (2, -1)]));
        assert_eq!(delta.eval_at_one(), 1);
    }

    #[test]
    fn trefoil_determinant_factors_as_expected() {
        // det = +- t^k (1 - t)^(n-1) Delta with n - 1 = 4 binomial factors.
        let g = trefoil5();
        let det = laurent_det(&minesweeper(&g)).unwrap();
        let mut target = poly1(&[(-2, 1), (0, -1), (2, 1)]); // t - 1 + 1/t
        for _ in 0..4 {
            target = target.mul(&LaurentPoly::one_minus_t(1, 0));
        }
        assert!(monomial_ratio(&det, &target).is_some(), "det = {}", det.display());
    }

    #[test]
    fn figure8_determinant_factors_as_expected() {
        // Five binomial factors total: the worked reduction exposes
        // (t-1)^3 (t^{-1}-1)^2 and the remaining minor carries Delta.
        let g = figure8();
        let det = laurent_det(&minesweeper(&g)).unwrap();
        let mut target = poly1(&[(-2, -1), (0, 3), (2, -1)]); // -t + 3 - 1/t
        for _ in 0..5 {
            target = target.mul(&LaurentPoly::one_minus_t(1, 0));
        }
        assert!(monomial_ratio(&det, &target).is_some(), "det = {}", det.display());
    }

    #[test]
    fn structured_and_plain_bareiss_agree() {
        for g in [unknot2(), trefoil5(), figure8()] {
            let m = minesweeper(&g);
            let structured = laurent_det(&m).unwrap();
            let plain = bareiss_det(m.clone(), g.ell()).unwrap();
            assert_eq!(structured, plain);
        }
    }

    #[test]
    fn unlink_determinant_vanishes() {
        let g = parse_grid("n = 4\nX = 0 1 2 3\nO = 1 0 3 2\n").unwrap();
        let det = laurent_det(&minesweeper(&g)).unwrap();
        assert!(det.is_zero());
        assert!(alexander_polynomial(&g).unwrap().is_zero());
    }

    #[test]
    fn hopf_alexander_is_a_unit() {
        let g = parse_grid("n = 4\nX = 0 1 2 3\nO = 2 3 0 1\n").unwrap();
        let delta = alexander_polynomial(&g).unwrap();
        assert_eq!(delta.num_terms(), 1);
        assert_eq!(delta.eval_at_one().abs(), 1);
    }

    #[test]
    fn involution_symmetry_after_normalization() {
        for g in [trefoil5(), figure8()] {
            let d = alexander_polynomial(&g).unwrap();
            let inv = d.invert_vars();
            assert!(inv == d || inv == d.neg());
        }
    }

    #[test]
    fn display_formats() {
        let p = poly1(&[(2, 1), (0, -1), (-2, 1)]);
        assert_eq!(p.display(), "t^1 - 1 + t^-1");
    }
}
