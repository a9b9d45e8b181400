//! Generators, empty rectangles, and the chain complexes.
//!
//! Generators are the n! bijections between vertical and horizontal circles,
//! enumerated in lexicographic order so that a generator's index equals its
//! Lehmer rank. Rectangles connecting two generators exist exactly when the
//! permutations differ by a transposition, and then there are exactly two of
//! them on the torus.
//!
//! Flavors: `Minus` counts every empty rectangle and records which O's it
//! covers as a U-monomial; `Tilde` counts only empty rectangles containing no
//! markings at all (its differential preserves the Alexander multigrading and
//! drops Maslov by one); `Hat` is the minus complex with one U per link
//! component marked as killed, and its homology is reached downstream through
//! the tilde homology and the tensor-factorization theorem rather than by
//! linear algebra over a polynomial ring.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gradings::GradingTables;
use crate::grid::GridDiagram;
use crate::perm;

/// Largest grid the enumerator will ever touch; masks are u32 and ranks u64.
pub const HARD_MAX_N: usize = 14;

/// Default generator cap: 10! is about 3.6M generators.
pub const DEFAULT_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Minus,
    Hat,
    Tilde,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coeffs {
    Gf2,
    Int,
}

/// All n! generators with cached gradings, in lexicographic (Lehmer) order.
#[derive(Debug)]
pub struct Generators {
    pub n: usize,
    pub ell: usize,
    pub count: usize,
    perms: Vec<u8>,
    maslov: Vec<i32>,
    alex2: Vec<i16>,
}

impl Generators {
    pub fn perm(&self, i: usize) -> &[u8] {
        &self.perms[i * self.n..(i + 1) * self.n]
    }

    pub fn maslov(&self, i: usize) -> i32 {
        self.maslov[i]
    }

    /// Doubled Alexander multigrading of generator `i`.
    pub fn alex2(&self, i: usize) -> &[i16] {
        &self.alex2[i * self.ell..(i + 1) * self.ell]
    }

    /// Index of a permutation; the enumeration order makes this the Lehmer rank.
    pub fn index_of(&self, p: &[u8]) -> usize {
        perm::rank(p) as usize
    }
}

/// Enumerates the generator set of `g`, refusing grids past the cap.
pub fn enumerate_generators(g: &GridDiagram, cap: usize) -> Result<Generators> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    if n > HARD_MAX_N {
        return Err(Error::CapExceeded { n, cap: HARD_MAX_N });
    }
    let ell = g.ell();
    let count = perm::FACT[n] as usize;
    let tables = GradingTables::new(g);

    let mut perms = vec![0u8; count * n];
    let mut maslov = vec![0i32; count];
    let mut alex2 = vec![0i16; count * ell];

    // Unranking makes the fill chunk-parallel and keeps index == Lehmer rank.
    let chunk = 1usize << 13;
    perms
        .par_chunks_mut(chunk * n)
        .zip(maslov.par_chunks_mut(chunk))
        .zip(alex2.par_chunks_mut(chunk * ell))
        .enumerate()
        .for_each(|(ci, ((pc, mc), ac))| {
            let base = ci * chunk;
            let mut a = vec![0i64; ell];
            for k in 0..mc.len() {
                let idx = base + k;
                let pslice = &mut pc[k * n..(k + 1) * n];
                perm::unrank(n, idx as u64, pslice);
                mc[k] = tables.maslov(pslice) as i32;
                tables.alex2_into(pslice, &mut a);
                for (e, &v) in ac[k * ell..(k + 1) * ell].iter_mut().zip(&a) {
                    *e = i16::try_from(v).expect("doubled Alexander grading fits i16");
                }
            }
        });

    Ok(Generators {
        n,
        ell,
        count,
        perms,
        maslov,
        alex2,
    })
}

/// An embedded rectangle on the grid torus, named by its edges: left edge at
/// column `c0`, right at `c1`, bottom row `r0`, top row `r1`, all cyclic. It
/// covers the cell columns `c0..c1-1` and cell rows `r0..r1-1` (mod n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rect {
    pub c0: u8,
    pub c1: u8,
    pub r0: u8,
    pub r1: u8,
}

#[inline]
pub(crate) fn cyc_dist(a: u8, b: u8, n: usize) -> usize {
    (b as usize + n - a as usize) % n
}

/// Bitmask of the cyclic cell range `a..b-1` (mod n), `a != b`.
#[inline]
pub(crate) fn cells_mask(a: u8, b: u8, n: usize) -> u32 {
    let full = (1u32 << n) - 1;
    let (a, b) = (a as usize, b as usize);
    if a < b {
        (1u32 << b) - (1u32 << a)
    } else {
        (full ^ ((1u32 << a) - 1)) | ((1u32 << b) - 1)
    }
}

/// Bitmask of rows strictly inside the cyclic interval `(a, b)`.
#[inline]
pub(crate) fn open_mask(a: u8, b: u8, n: usize) -> u32 {
    cells_mask(a, b, n) & !(1u32 << a)
}

impl Rect {
    pub fn width(&self, n: usize) -> usize {
        cyc_dist(self.c0, self.c1, n)
    }

    pub fn height(&self, n: usize) -> usize {
        cyc_dist(self.r0, self.r1, n)
    }

    /// Covered cell columns as a bitmask.
    pub fn col_mask(&self, n: usize) -> u32 {
        cells_mask(self.c0, self.c1, n)
    }

    /// Covered cell rows as a bitmask.
    pub fn row_mask(&self, n: usize) -> u32 {
        cells_mask(self.r0, self.r1, n)
    }

    /// True when no point of `x` lies in the open interior.
    pub fn is_empty_for(&self, x: &[u8]) -> bool {
        let n = x.len();
        let open = open_mask(self.r0, self.r1, n);
        let mut c = (self.c0 as usize + 1) % n;
        while c != self.c1 as usize {
            if open & (1u32 << x[c]) != 0 {
                return false;
            }
            c = (c + 1) % n;
        }
        true
    }

    /// Columns whose O marking lies inside, as a bitmask over marker indices.
    pub fn o_cols(&self, g: &GridDiagram) -> u32 {
        self.marker_cols(g.sigma_o(), g.n())
    }

    /// Columns whose X marking lies inside.
    pub fn x_cols(&self, g: &GridDiagram) -> u32 {
        self.marker_cols(g.sigma_x(), g.n())
    }

    fn marker_cols(&self, rows: &[u8], n: usize) -> u32 {
        let cells = self.row_mask(n);
        let mut mask = 0u32;
        let mut c = self.c0 as usize;
        while c != self.c1 as usize {
            if cells & (1u32 << rows[c]) != 0 {
                mask |= 1u32 << c;
            }
            c = (c + 1) % n;
        }
        mask
    }

    /// The generator this rectangle ends at, given its start.
    pub fn target(&self, x: &[u8]) -> Vec<u8> {
        let mut y = x.to_vec();
        y.swap(self.c0 as usize, self.c1 as usize);
        y
    }
}

/// The rectangles connecting `x` to `y`: exactly two when the permutations
/// differ by a transposition, none otherwise.
pub fn rectangles_between(x: &[u8], y: &[u8]) -> Vec<Rect> {
    debug_assert_eq!(x.len(), y.len());
    let diff: Vec<usize> = (0..x.len()).filter(|&i| x[i] != y[i]).collect();
    if diff.len() != 2 {
        return Vec::new();
    }
    let (i, j) = (diff[0], diff[1]);
    if x[i] != y[j] || x[j] != y[i] {
        return Vec::new();
    }
    vec![
        Rect {
            c0: i as u8,
            c1: j as u8,
            r0: x[i],
            r1: x[j],
        },
        Rect {
            c0: j as u8,
            c1: i as u8,
            r0: x[j],
            r1: x[i],
        },
    ]
}

/// Precomputed marker row masks for the rectangle sweep.
pub struct RectScanner {
    n: usize,
    o_row_bit: Vec<u32>,
    x_row_bit: Vec<u32>,
}

/// What the sweep reports for each rectangle rooted at a source generator.
pub struct ScanItem {
    pub rect: Rect,
    pub empty: bool,
    /// Number of O markings inside.
    pub o_count: u32,
    /// Number of X markings inside.
    pub x_count: u32,
}

impl RectScanner {
    pub fn new(g: &GridDiagram) -> Self {
        RectScanner {
            n: g.n(),
            o_row_bit: g.sigma_o().iter().map(|&r| 1u32 << r).collect(),
            x_row_bit: g.sigma_x().iter().map(|&r| 1u32 << r).collect(),
        }
    }

    /// Visits all 2*C(n,2) rectangles starting at `x`, each exactly once, as
    /// the spans `[a, b)` over all ordered column pairs. Interior-occupancy
    /// and marker tests are O(1) per rectangle via incremental row masks.
    pub fn scan(&self, x: &[u8], mut visit: impl FnMut(&ScanItem)) {
        let n = self.n;
        for a in 0..n {
            let mut occ = 0u32;
            let mut o_or = self.o_row_bit[a];
            let mut x_or = self.x_row_bit[a];
            for step in 1..n {
                let b = (a + step) % n;
                if step >= 2 {
                    let grown = (a + step - 1) % n;
                    occ |= 1u32 << x[grown];
                    o_or |= self.o_row_bit[grown];
                    x_or |= self.x_row_bit[grown];
                }
                let rect = Rect {
                    c0: a as u8,
                    c1: b as u8,
                    r0: x[a],
                    r1: x[b],
                };
                let cells = cells_mask(rect.r0, rect.r1, n);
                let open = cells & !(1u32 << rect.r0);
                let item = ScanItem {
                    rect,
                    empty: occ & open == 0,
                    o_count: (o_or & cells).count_ones(),
                    x_count: (x_or & cells).count_ones(),
                };
                visit(&item);
            }
        }
    }
}

/// One term of a differential: `sign * U^(o_mask) * (to)` contributed by an
/// empty rectangle from `from`. `o_mask` is the set of columns whose O lies
/// inside (each exponent is 0 or 1); tilde entries always carry mask 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub from: u32,
    pub to: u32,
    pub sign: i8,
    pub o_mask: u32,
}

/// A chain complex with generators bucketed by bigrading and an explicit
/// sparse differential. Suited to verification and to small grids; the
/// homology module streams block matrices directly for the big sweeps.
pub struct GradedComplex {
    pub flavor: Flavor,
    pub coeffs: Coeffs,
    pub grid: GridDiagram,
    pub gens: Generators,
    pub entries: Vec<Entry>,
    /// For the hat flavor: one O column per link component whose U is set to
    /// zero (the smallest column of each component).
    pub killed_o_cols: Vec<usize>,
}

/// Builds the requested complex. Integer coefficients attach the sign
/// assignment to every rectangle; this is only sensible at desk scale.
pub fn build_complex(
    g: &GridDiagram,
    flavor: Flavor,
    coeffs: Coeffs,
    cap: usize,
) -> Result<GradedComplex> {
    let gens = enumerate_generators(g, cap)?;
    let signs = match coeffs {
        Coeffs::Gf2 => None,
        Coeffs::Int => Some(crate::signs::SignAssignment::new(g.n())),
    };
    let scanner = RectScanner::new(g);
    let n = g.n();

    let entries: Vec<Entry> = (0..gens.count)
        .into_par_iter()
        .flat_map_iter(|from| {
            let x = gens.perm(from).to_vec();
            let mut out = Vec::new();
            scanner.scan(&x, |item| {
                if !item.empty {
                    return;
                }
                let keep = match flavor {
                    Flavor::Minus | Flavor::Hat => true,
                    Flavor::Tilde => item.o_count == 0 && item.x_count == 0,
                };
                if !keep {
                    return;
                }
                let mut y = x.clone();
                y.swap(item.rect.c0 as usize, item.rect.c1 as usize);
                let to = perm::rank(&y) as u32;
                let sign = match &signs {
                    Some(s) => s.sign(&x, &item.rect),
                    None => 1,
                };
                let o_mask = if item.o_count > 0 {
                    item.rect.o_cols(g)
                } else {
                    0
                };
                out.push(Entry {
                    from: from as u32,
                    to,
                    sign,
                    o_mask,
                });
            });
            out.into_iter()
        })
        .collect();

    let killed_o_cols = match flavor {
        Flavor::Hat => {
            let mut killed = vec![usize::MAX; g.ell()];
            for col in (0..n).rev() {
                killed[g.comp_of_col(col)] = col;
            }
            killed
        }
        _ => Vec::new(),
    };

    let complex = GradedComplex {
        flavor,
        coeffs,
        grid: g.clone(),
        gens,
        entries,
        killed_o_cols,
    };
    complex.check_grading_laws()?;
    Ok(complex)
}

impl GradedComplex {
    /// Every entry must drop Maslov by exactly one and never raise the
    /// Alexander filtration; tilde entries preserve it outright.
    fn check_grading_laws(&self) -> Result<()> {
        let ell = self.gens.ell;
        let comp_of_col = self.grid.comp_labels();
        for e in &self.entries {
            let (f, t) = (e.from as usize, e.to as usize);
            let o_total = e.o_mask.count_ones() as i32;
            if self.gens.maslov(f) != self.gens.maslov(t) + 1 - 2 * o_total {
                return Err(Error::InvalidGrid(format!(
                    "Maslov change law violated on entry {f}->{t}"
                )));
            }
            let (af, at) = (self.gens.alex2(f), self.gens.alex2(t));
            match self.flavor {
                Flavor::Tilde => {
                    if af != at {
                        return Err(Error::InvalidGrid(format!(
                            "tilde entry {f}->{t} crosses Alexander blocks"
                        )));
                    }
                }
                _ => {
                    // a(from) - a(to) = sum over covered X's minus covered O's
                    // componentwise must leave the filtration level
                    // a(to) - sum O_i g(i) no larger than a(from)'s.
                    let mut drop2 = vec![0i32; ell];
                    for c in 0..self.grid.n() {
                        if e.o_mask & (1 << c) != 0 {
                            drop2[comp_of_col[c] as usize] += 2;
                        }
                    }
                    for k in 0..ell {
                        let filt_change = i32::from(af[k]) - (i32::from(at[k]) - drop2[k]);
                        if filt_change < 0 {
                            return Err(Error::InvalidGrid(format!(
                                "entry {f}->{t} raises the Alexander filtration"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks `d o d = 0`, honoring signs and U-exponents. Composites are
    /// grouped by (endpoint, accumulated exponent vector); each group must
    /// cancel. Returns the number of composite pairs inspected.
    pub fn d_squared_zero(&self) -> std::result::Result<u64, String> {
        let count = self.gens.count;
        let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (i, e) in self.entries.iter().enumerate() {
            by_source[e.from as usize].push(i);
        }
        let n = self.gens.n;

        let verdicts: Vec<std::result::Result<u64, String>> = (0..count)
            .into_par_iter()
            .map(|x| {
                use std::collections::HashMap;
                // key: (endpoint, exponent vector packed 2 bits per column)
                let mut acc: HashMap<(u32, u64), i64> = HashMap::new();
                let mut pairs = 0u64;
                for &i in &by_source[x] {
                    let e1 = &self.entries[i];
                    for &j in &by_source[e1.to as usize] {
                        let e2 = &self.entries[j];
                        pairs += 1;
                        let mut packed = 0u64;
                        for c in 0..n {
                            let exp = ((e1.o_mask >> c) & 1) + ((e2.o_mask >> c) & 1);
                            packed |= (exp as u64) << (2 * c);
                        }
                        let w = i64::from(e1.sign) * i64::from(e2.sign);
                        *acc.entry((e2.to, packed)).or_insert(0) += match self.coeffs {
                            Coeffs::Int => w,
                            Coeffs::Gf2 => 1,
                        };
                    }
                }
                for ((z, _packed), v) in acc {
                    let bad = match self.coeffs {
                        Coeffs::Int => v != 0,
                        Coeffs::Gf2 => v % 2 != 0,
                    };
                    if bad {
                        return Err(format!(
                            "d^2 != 0: component {} -> {} has coefficient {}",
                            x, z, v
                        ));
                    }
                }
                Ok(pairs)
            })
            .collect();

        let mut total = 0u64;
        for v in verdicts {
            total += v?;
        }
        Ok(total)
    }

    /// Counts, for each generator, the domains from x back to itself that
    /// decompose into two empty rectangles; these are exactly the 2n thin
    /// annuli. Only meaningful for the minus flavor, where no rectangles are
    /// filtered away.
    pub fn annuli_per_generator(&self) -> std::result::Result<usize, String> {
        if self.flavor == Flavor::Tilde {
            return Err("annuli carry markings; build the minus complex".into());
        }
        let count = self.gens.count;
        let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (i, e) in self.entries.iter().enumerate() {
            by_source[e.from as usize].push(i);
        }
        let expected = 2 * self.gens.n;
        for x in 0..count {
            let mut loops = 0usize;
            for &i in &by_source[x] {
                let e1 = &self.entries[i];
                for &j in &by_source[e1.to as usize] {
                    if self.entries[j].to as usize == x {
                        loops += 1;
                    }
                }
            }
            if loops != expected {
                return Err(format!(
                    "generator {x} supports {loops} two-rectangle loops, expected {expected}"
                ));
            }
        }
        Ok(expected)
    }

    /// Writes the per-Alexander-block boundary matrices as sparse triplets
    /// `from to sign` under `dir`, one file per block, each with a JSON
    /// header line describing the block gradings.
    pub fn dump_blocks(&self, dir: &std::path::Path) -> Result<()> {
        use std::io::Write;
        std::fs::create_dir_all(dir)?;
        let mut blocks: std::collections::BTreeMap<Vec<i16>, Vec<usize>> =
            std::collections::BTreeMap::new();
        for i in 0..self.gens.count {
            blocks
                .entry(self.gens.alex2(i).to_vec())
                .or_default()
                .push(i);
        }
        let block_of: std::collections::HashMap<Vec<i16>, usize> = blocks
            .keys()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        for (bi, (key, members)) in blocks.iter().enumerate() {
            let path = dir.join(format!("block_{bi:04}.triplets"));
            let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
            let maslovs: Vec<i32> = members.iter().map(|&i| self.gens.maslov(i)).collect();
            let header = serde_json::json!({
                "alexander_doubled": key,
                "generators": members.len(),
                "maslov_min": maslovs.iter().min(),
                "maslov_max": maslovs.iter().max(),
            });
            writeln!(f, "# {header}")?;
            for e in &self.entries {
                if block_of[&self.gens.alex2(e.from as usize).to_vec()] == bi {
                    writeln!(f, "{} {} {}", e.from, e.to, e.sign)?;
                }
            }
        }
        Ok(())
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

    #[test]
    fn generator_counts() {
        assert_eq!(enumerate_generators(&unknot2(), 10).unwrap().count, 2);
        assert_eq!(enumerate_generators(&trefoil5(), 10).unwrap().count, 120);
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_generators(&trefoil5(), 4).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { n: 5, cap: 4 }));
    }

    #[test]
    fn generator_index_is_lehmer_rank() {
        let gens = enumerate_generators(&trefoil5(), 10).unwrap();
        for i in (0..gens.count).step_by(17) {
            assert_eq!(gens.index_of(gens.perm(i)), i);
        }
    }

    #[test]
    fn rectangles_for_identical_generators_are_empty() {
        assert!(rectangles_between(&[0, 1, 2], &[0, 1, 2]).is_empty());
    }

    #[test]
    fn rectangles_need_a_transposition() {
        // Differ in three places: no rectangles.
        assert!(rectangles_between(&[0, 1, 2], &[1, 2, 0]).is_empty());
    }

    #[test]
    fn two_rectangles_on_the_2x2_grid() {
        let x = [1u8, 0];
        let y = [0u8, 1];
        let rects = rectangles_between(&x, &y);
        assert_eq!(rects.len(), 2);
        for r in &rects {
            assert_eq!(r.width(2), 1);
            assert_eq!(r.height(2), 1);
            assert!(r.is_empty_for(&x));
        }
        // Every cell of this grid is decorated, so each unit square holds
        // exactly one marking.
        let g = unknot2();
        for r in &rects {
            let o = r.o_cols(&g).count_ones();
            let x = r.x_cols(&g).count_ones();
            assert_eq!(o + x, 1);
        }
    }

    #[test]
    fn scanner_agrees_with_direct_rectangle_tests() {
        let g = trefoil5();
        let gens = enumerate_generators(&g, 10).unwrap();
        let scanner = RectScanner::new(&g);
        for i in (0..gens.count).step_by(7) {
            let x = gens.perm(i);
            scanner.scan(x, |item| {
                assert_eq!(item.empty, item.rect.is_empty_for(x));
                assert_eq!(item.o_count, item.rect.o_cols(&g).count_ones());
                assert_eq!(item.x_count, item.rect.x_cols(&g).count_ones());
            });
        }
    }

    #[test]
    fn tilde_differential_of_2x2_unknot_vanishes() {
        let c = build_complex(&unknot2(), Flavor::Tilde, Coeffs::Gf2, 10).unwrap();
        assert!(c.entries.is_empty());
    }

    #[test]
    fn d_squared_zero_minus_gf2() {
        for g in [unknot2(), trefoil5()] {
            let c = build_complex(&g, Flavor::Minus, Coeffs::Gf2, 10).unwrap();
            c.d_squared_zero().unwrap();
        }
    }

    #[test]
    fn d_squared_zero_tilde_signed() {
        for g in [unknot2(), trefoil5()] {
            let c = build_complex(&g, Flavor::Tilde, Coeffs::Int, 10).unwrap();
            c.d_squared_zero().unwrap();
        }
    }

    #[test]
    fn d_squared_zero_minus_signed() {
        let c = build_complex(&trefoil5(), Flavor::Minus, Coeffs::Int, 10).unwrap();
        c.d_squared_zero().unwrap();
    }

    #[test]
    fn exactly_2n_annuli_per_generator() {
        let c = build_complex(&trefoil5(), Flavor::Minus, Coeffs::Gf2, 10).unwrap();
        assert_eq!(c.annuli_per_generator().unwrap(), 10);
    }

    #[test]
    fn grading_change_laws_hold_for_every_rectangle() {
        // M(x) = M(y) + 1 - 2 sum O_i(r) for empty rectangles, and
        // A(x) - A(y) = sum (X_i(r) - O_i(r)) g(i) for all rectangles.
        let g = trefoil5();
        let gens = enumerate_generators(&g, 10).unwrap();
        let scanner = RectScanner::new(&g);
        for i in 0..gens.count {
            let x = gens.perm(i);
            scanner.scan(x, |item| {
                let y = item.rect.target(x);
                let j = gens.index_of(&y);
                if item.empty {
                    assert_eq!(
                        i64::from(gens.maslov(i)),
                        i64::from(gens.maslov(j)) + 1 - 2 * i64::from(item.o_count)
                    );
                }
                let mut delta2 = vec![0i64; g.ell()];
                let (om, xm) = (item.rect.o_cols(&g), item.rect.x_cols(&g));
                for c in 0..g.n() {
                    let k = g.comp_of_col(c);
                    if xm & (1 << c) != 0 {
                        delta2[k] += 2;
                    }
                    if om & (1 << c) != 0 {
                        delta2[k] -= 2;
                    }
                }
                for k in 0..g.ell() {
                    assert_eq!(
                        i64::from(gens.alex2(i)[k]) - i64::from(gens.alex2(j)[k]),
                        delta2[k]
                    );
                }
            });
        }
    }

    #[test]
    fn hat_marks_one_u_per_component() {
        let hopf = parse_grid("n = 4\nX = 0 1 2 3\nO = 2 3 0 1\n").unwrap();
        let c = build_complex(&hopf, Flavor::Hat, Coeffs::Gf2, 10).unwrap();
        assert_eq!(c.killed_o_cols.len(), 2);
        assert_eq!(c.killed_o_cols, vec![0, 1]);
    }
}
