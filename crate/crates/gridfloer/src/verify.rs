//! The verification suites: machine-checkable forms of the structural
//! theorems. Each suite returns a report with the number of checks performed
//! and counterexample payloads on failure; the CLI turns a failed suite into
//! a nonzero exit.

use serde::Serialize;

use crate::alexander::{
    alexander_polynomial, chain_euler_from, laurent_det, minesweeper, monomial_ratio, poly_euler,
    LaurentPoly,
};
use crate::complex::{build_complex, enumerate_generators, Coeffs, Flavor};
use crate::error::Result;
use crate::grid::{random_move_sequence, GridDiagram};
use crate::homology::{
    divide_v_factors, hat_poly, homology_int, tau, tilde_homology_gf2_from, PoincarePoly,
};
use crate::signs::{random_gauge, verify_axioms, SignAssignment};

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: u64,
    pub millis: u128,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn finish(suite: &str, start: std::time::Instant, checks: u64, failures: Vec<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            passed: failures.is_empty(),
            checks,
            millis: start.elapsed().as_millis(),
            failures,
        }
    }
}

/// d^2 = 0 for the tilde and minus differentials over GF(2) and, signed,
/// over Z; plus the 2n-annuli count behind the x-to-x cancellation.
pub fn suite_dsquared(g: &GridDiagram, cap: usize) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    let mut checks = 0u64;
    let mut failures = Vec::new();
    for (flavor, coeffs) in [
        (Flavor::Tilde, Coeffs::Gf2),
        (Flavor::Minus, Coeffs::Gf2),
        (Flavor::Tilde, Coeffs::Int),
        (Flavor::Minus, Coeffs::Int),
    ] {
        let c = build_complex(g, flavor, coeffs, cap)?;
        match c.d_squared_zero() {
            Ok(pairs) => checks += pairs,
            Err(e) => failures.push(format!("{flavor:?}/{coeffs:?}: {e}")),
        }
        if flavor == Flavor::Minus && coeffs == Coeffs::Gf2 {
            if let Err(e) = c.annuli_per_generator() {
                failures.push(format!("annuli count: {e}"));
            } else {
                checks += c.gens.count as u64;
            }
        }
    }
    Ok(SuiteReport::finish("dsquared", start, checks, failures))
}

/// Sign axioms (Sq), (V), (H) exhaustively, the same under a random gauge
/// twist, and agreement of the closed-form square signs with the width
/// induction on every in-square empty rectangle (n <= 4).
pub fn suite_signs(g: &GridDiagram, cap: usize) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    let mut checks = 0u64;
    let mut failures = Vec::new();
    let s = SignAssignment::new(g.n());

    let plain = verify_axioms(g, &s, None, cap)?;
    checks += plain.sq_domains + plain.vertical_annuli + plain.horizontal_annuli;
    failures.extend(plain.failures.iter().take(3).cloned());

    let gens = enumerate_generators(g, cap)?;
    let gauge = random_gauge(gens.count, 0xFAE);
    let twisted = verify_axioms(g, &s, Some(&gauge), cap)?;
    checks += twisted.sq_domains + twisted.vertical_annuli + twisted.horizontal_annuli;
    failures.extend(
        twisted
            .failures
            .iter()
            .take(3)
            .map(|f| format!("gauge-twisted: {f}")),
    );

    if g.n() <= 4 {
        let scanner = crate::complex::RectScanner::new(g);
        for i in 0..gens.count {
            let x = gens.perm(i).to_vec();
            let mut local = Vec::new();
            scanner.scan(&x, |item| {
                if item.empty {
                    local.push(item.rect);
                }
            });
            for r in local {
                if r.c0 < r.c1 && (r.c1 as usize) < g.n() && r.r0 < r.r1 && (r.r1 as usize) < g.n()
                {
                    checks += 1;
                    if s.sign(&x, &r) != s.sign_via_extension(&x, &r) {
                        failures.push(format!(
                            "closed form disagrees with extension at generator {i}, rect {r:?}"
                        ));
                    }
                }
            }
        }
    }
    Ok(SuiteReport::finish("signs", start, checks, failures))
}

/// Canonical form of a bigraded table under permutations of the link
/// components, so invariants of links can be compared across grids whose
/// component numbering differs.
fn canonical_table(p: &PoincarePoly, ell: usize) -> Vec<(i32, Vec<i16>, u64)> {
    let perms = permutations(ell);
    perms
        .iter()
        .map(|perm| {
            let mut rows: Vec<(i32, Vec<i16>, u64)> = p
                .iter()
                .map(|(k, &r)| {
                    let mut a = vec![0i16; ell];
                    for (old, &new) in perm.iter().enumerate() {
                        a[new] = k.alex2[old];
                    }
                    (k.maslov, a, r)
                })
                .collect();
            rows.sort();
            rows
        })
        .min()
        .unwrap_or_default()
}

fn canonical_poly(p: &LaurentPoly) -> Vec<(Vec<i32>, i64)> {
    let ell = p.nvars();
    permutations(ell)
        .iter()
        .map(|perm| {
            let mut rows: Vec<(Vec<i32>, i64)> = p
                .iter()
                .map(|(e, &c)| {
                    let mut f = vec![0i32; ell];
                    for (old, &new) in perm.iter().enumerate() {
                        f[new] = e[old];
                    }
                    (f, c)
                })
                .collect();
            rows.sort();
            rows
        })
        .min()
        .unwrap_or_default()
}

fn permutations(ell: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..ell).collect();
    loop {
        out.push(cur.clone());
        if !next_perm(&mut cur) {
            return out;
        }
    }
}

fn next_perm(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Move invariance: along a seeded random sequence of legal moves, the hat
/// polynomial, tau (knots), and the normalized Alexander polynomial must be
/// identical on every grid.
pub fn suite_moves(
    g: &GridDiagram,
    seed: u64,
    len: usize,
    max_n: usize,
    cap: usize,
) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    let mut checks = 0u64;
    let mut failures = Vec::new();
    let seq = random_move_sequence(g, len, seed, max_n);
    let ell = g.ell();

    let base_hat = canonical_table(&hat_poly(g, cap)?, ell);
    let base_tau = if ell == 1 { Some(tau(g, cap)?) } else { None };
    let base_delta = canonical_poly(&alexander_polynomial(g)?);

    for (step, h) in seq.iter().enumerate().skip(1) {
        let hat = canonical_table(&hat_poly(h, cap)?, ell);
        if hat != base_hat {
            failures.push(format!(
                "hat polynomial changed at step {step} (n={})",
                h.n()
            ));
        }
        checks += 1;
        if let Some(t0) = base_tau {
            let t = tau(h, cap)?;
            if t != t0 {
                failures.push(format!("tau changed at step {step}: {t0} -> {t}"));
            }
            checks += 1;
        }
        let delta = canonical_poly(&alexander_polynomial(h)?);
        if delta != base_delta {
            failures.push(format!("Alexander polynomial changed at step {step}"));
        }
        checks += 1;
    }
    Ok(SuiteReport::finish("moves", start, checks, failures))
}

/// The four symmetry properties of the hat table.
pub fn suite_symmetry(g: &GridDiagram, cap: usize) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    let rep = crate::homology::symmetry_suite(g, cap)?;
    let checks = rep.checks.len() as u64;
    let failures = rep
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    Ok(SuiteReport::finish("symmetry", start, checks, failures))
}

/// The Euler-characteristic identities tying the chain groups, the
/// minesweeper determinant, the V factors, and the normalized Alexander
/// polynomial together.
pub fn suite_euler(g: &GridDiagram, cap: usize) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    let mut checks = 0u64;
    let mut failures = Vec::new();
    let ell = g.ell();

    let gens = enumerate_generators(g, cap)?;
    let chi_chain = chain_euler_from(&gens);
    let det = laurent_det(&minesweeper(g))?;

    // chi of the chain groups is the determinant up to one global monomial
    // and sign (the permutation-expansion identity).
    checks += 1;
    if monomial_ratio(&chi_chain, &det).is_none() {
        failures.push(format!(
            "chain Euler characteristic {} is not a monomial multiple of det {}",
            chi_chain.display(),
            det.display()
        ));
    }

    // chi is exactly differential-invariant, blockwise.
    let th = tilde_homology_gf2_from(g, &gens);
    let chi_homology = poly_euler(&th.poly, ell);
    checks += 1;
    if chi_homology != chi_chain {
        failures.push("chi(tilde homology) differs from chi(tilde chains)".into());
    }

    // chi(tilde) = chi(hat) * prod (1 - 1/t_i)^(n_i - 1), by the V factors.
    let hat = divide_v_factors(&th.poly, g)?;
    let chi_hat = poly_euler(&hat, ell);
    let mut expected = chi_hat.clone();
    for comp in 0..ell {
        let mut v = LaurentPoly::one(ell);
        let mut e = vec![0i32; ell];
        e[comp] = -2;
        v.add_term(e, -1);
        for _ in 1..g.comp_sizes()[comp] {
            expected = expected.mul(&v);
        }
    }
    checks += 1;
    if expected != chi_homology {
        failures.push("chi(hat) times the V factors differs from chi(tilde)".into());
    }

    // chi(hat) against the normalized Alexander polynomial.
    let delta = alexander_polynomial(g)?;
    let rhs = if ell == 1 {
        delta.clone()
    } else {
        let mut r = delta.clone();
        for comp in 0..ell {
            r = r.mul(&LaurentPoly::sqrt_t_minus_inv(ell, comp));
        }
        r
    };
    checks += 1;
    let matches = if chi_hat.is_zero() || rhs.is_zero() {
        chi_hat.is_zero() && rhs.is_zero()
    } else {
        chi_hat == rhs || chi_hat == rhs.neg()
    };
    if !matches {
        failures.push(format!(
            "chi(hat) = {} but the Alexander side gives {}",
            chi_hat.display(),
            rhs.display()
        ));
    }
    Ok(SuiteReport::finish("euler", start, checks, failures))
}

/// Integral/mod-2 consistency: GF(2) ranks must equal integral free ranks
/// plus the mod-2 torsion contributions from the adjacent boundary maps.
pub fn suite_coefficients(g: &GridDiagram, cap: usize) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    let mut failures = Vec::new();
    let c = build_complex(g, Flavor::Tilde, Coeffs::Int, cap)?;
    let ih = homology_int(&c)?;
    let th = crate::homology::tilde_homology_gf2(g, cap)?;
    let mut checks = 0u64;
    // Count mod-2 torsion hits per bigrading: a factor 2^k in the boundary
    // into degree d contributes at d and at d+1.
    use std::collections::BTreeMap;
    let mut even_torsion: BTreeMap<crate::homology::Bigrading, u64> = BTreeMap::new();
    for (k, tors) in &ih.torsion {
        let evens = tors
            .iter()
            .filter(|t| {
                let last = t.bytes().last().unwrap_or(b'1');
                (last - b'0') % 2 == 0
            })
            .count() as u64;
        if evens > 0 {
            *even_torsion.entry(k.clone()).or_insert(0) += evens;
            let mut up = k.clone();
            up.maslov += 1;
            *even_torsion.entry(up).or_insert(0) += evens;
        }
    }
    let keys: std::collections::BTreeSet<crate::homology::Bigrading> = th
        .poly
        .iter()
        .map(|(k, _)| k.clone())
        .chain(ih.free.iter().map(|(k, _)| k.clone()))
        .chain(even_torsion.keys().cloned())
        .collect();
    for k in keys {
        checks += 1;
        let gf2 = th.poly.rank_at(k.maslov, &k.alex2);
        let free = ih.free.rank_at(k.maslov, &k.alex2);
        let t2 = even_torsion.get(&k).copied().unwrap_or(0);
        if gf2 != free + t2 {
            failures.push(format!(
                "universal coefficients mismatch at ({}, {:?}): gf2 {} vs free {} + torsion {}",
                k.maslov, k.alex2, gf2, free, t2
            ));
        }
        if gf2 < free {
            failures.push(format!(
                "GF(2) rank below free rank at ({}, {:?})",
                k.maslov, k.alex2
            ));
        }
    }
    Ok(SuiteReport::finish("coefficients", start, checks, failures))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::parse_grid;

    fn trefoil5() -> GridDiagram {
        parse_grid("n = 5\nX = 0 1 2 3 4\nO = 2 3 4 0 1\n").unwrap()
    }

    #[test]
    fn dsquared_suite_on_trefoil() {
        let rep = suite_dsquared(&trefoil5(), 10).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
        assert!(rep.checks > 0);
    }

    #[test]
    fn signs_suite_on_small_grid() {
        let g = parse_grid("n = 4\nX = 0 1 2 3\nO = 1 2 3 0\n").unwrap();
        let rep = suite_signs(&g, 10).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
    }

    #[test]
    fn euler_suite_on_trefoil() {
        let rep = suite_euler(&trefoil5(), 10).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
    }

    #[test]
    fn euler_suite_on_hopf() {
        let hopf = parse_grid("n = 4\nX = 0 1 2 3\nO = 2 3 0 1\n").unwrap();
        let rep = suite_euler(&hopf, 10).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
    }

    #[test]
    fn euler_suite_on_split_unlink() {
        let unlink = parse_grid("n = 4\nX = 0 1 2 3\nO = 1 0 3 2\n").unwrap();
        let rep = suite_euler(&unlink, 10).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
    }

    #[test]
    fn moves_suite_short_walk() {
        let rep = suite_moves(&trefoil5(), 3, 4, 6, 10).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
    }

    #[test]
    fn coefficients_suite_on_trefoil() {
        let rep = suite_coefficients(&trefoil5(), 10).unwrap();
        assert!(rep.passed, "{:?}", rep.failures);
    }
}
