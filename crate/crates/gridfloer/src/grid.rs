//! Grid diagrams: representation, validation, the text format, link-component
//! extraction, and the Cromwell moves (cyclic permutation, commutation,
//! stabilization/destabilization).
//!
//! Coordinate conventions used throughout the crate: columns `0..n` run left
//! to right, rows `0..n` bottom to top. The marking in column `i`, row `j`
//! sits at the cell center `(i + 1/2, j + 1/2)`; generators live on the
//! integer lattice. The fundamental domain is `[0,n) x [0,n)` with the left
//! and bottom edges included.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `n x n` toroidal grid diagram for an oriented link.
///
/// Immutable after construction; moves return new grids. The oriented link is
/// recovered by drawing horizontal segments from the O's to the X's in each
/// row and vertical segments from the X's to the O's in each column, with the
/// horizontal segment the underpass at every crossing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    n: usize,
    /// Column -> row of the X in that column.
    sigma_x: Vec<u8>,
    /// Column -> row of the O in that column.
    sigma_o: Vec<u8>,
    /// Column -> link-component label. Components are numbered by the
    /// smallest column index they touch.
    comp_of_col: Vec<u8>,
    /// Per-component number of O's (equivalently of columns).
    comp_sizes: Vec<usize>,
}

impl GridDiagram {
    /// Builds and validates a grid from the two column->row assignments.
    pub fn new(sigma_x: Vec<u8>, sigma_o: Vec<u8>) -> Result<Self> {
        let n = sigma_x.len();
        if n < 2 {
            return Err(Error::InvalidGrid(format!("grid number {n} < 2")));
        }
        if sigma_o.len() != n {
            return Err(Error::InvalidGrid(format!(
                "X has {n} entries but O has {}",
                sigma_o.len()
            )));
        }
        if n > u8::MAX as usize {
            return Err(Error::InvalidGrid(format!("grid number {n} too large")));
        }
        for (name, sigma) in [("X", &sigma_x), ("O", &sigma_o)] {
            let mut seen = vec![false; n];
            for (col, &row) in sigma.iter().enumerate() {
                if row as usize >= n {
                    return Err(Error::InvalidGrid(format!(
                        "{name} row {row} out of range in column {col}"
                    )));
                }
                if seen[row as usize] {
                    return Err(Error::InvalidGrid(format!(
                        "two {name} markings in row {row}"
                    )));
                }
                seen[row as usize] = true;
            }
        }
        for col in 0..n {
            if sigma_x[col] == sigma_o[col] {
                return Err(Error::InvalidGrid(format!(
                    "X and O share the cell ({col}, {})",
                    sigma_x[col]
                )));
            }
        }
        let (comp_of_col, comp_sizes) = trace_components(&sigma_x, &sigma_o);
        Ok(GridDiagram {
            n,
            sigma_x,
            sigma_o,
            comp_of_col,
            comp_sizes,
        })
    }

    /// Grid number.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Row of the X in column `col`.
    pub fn x_row(&self, col: usize) -> usize {
        self.sigma_x[col] as usize
    }

    /// Row of the O in column `col`.
    pub fn o_row(&self, col: usize) -> usize {
        self.sigma_o[col] as usize
    }

    pub fn sigma_x(&self) -> &[u8] {
        &self.sigma_x
    }

    pub fn sigma_o(&self) -> &[u8] {
        &self.sigma_o
    }

    /// Number of link components.
    pub fn ell(&self) -> usize {
        self.comp_sizes.len()
    }

    /// Component label of the markings in column `col`. The X and the O of a
    /// column are joined by a vertical segment, so they share a component.
    pub fn comp_of_col(&self, col: usize) -> usize {
        self.comp_of_col[col] as usize
    }

    pub fn comp_labels(&self) -> &[u8] {
        &self.comp_of_col
    }

    /// `n_i`: number of O's on component `i`. Sums to `n`.
    pub fn comp_sizes(&self) -> &[usize] {
        &self.comp_sizes
    }

    /// Grid with the roles of rows and columns exchanged (reflection through
    /// the main diagonal). Presents the same link with all orientations
    /// reversed.
    pub fn transpose(&self) -> GridDiagram {
        GridDiagram::new(
            crate::perm::inverse(&self.sigma_x),
            crate::perm::inverse(&self.sigma_o),
        )
        .expect("transpose of a valid grid is valid")
    }

    /// Grid rotated a quarter turn counterclockwise. Presents the mirror link.
    pub fn rotate90(&self) -> GridDiagram {
        let n = self.n;
        let mut sx = vec![0u8; n];
        let mut so = vec![0u8; n];
        for i in 0..n {
            // cell (i, j) maps to cell (n-1-j, i)
            sx[n - 1 - self.sigma_x[i] as usize] = i as u8;
            so[n - 1 - self.sigma_o[i] as usize] = i as u8;
        }
        GridDiagram::new(sx, so).expect("rotation of a valid grid is valid")
    }

    /// Grid with the X and O markings of component `comp` exchanged,
    /// reversing the orientation of that component only.
    pub fn reverse_component(&self, comp: usize) -> GridDiagram {
        let mut sx = self.sigma_x.clone();
        let mut so = self.sigma_o.clone();
        for col in 0..self.n {
            if self.comp_of_col[col] as usize == comp {
                sx[col] = self.sigma_o[col];
                so[col] = self.sigma_x[col];
            }
        }
        GridDiagram::new(sx, so).expect("component reversal of a valid grid is valid")
    }

    /// Grid with ALL X and O markings exchanged (every orientation reversed).
    pub fn swap_xo(&self) -> GridDiagram {
        GridDiagram::new(self.sigma_o.clone(), self.sigma_x.clone())
            .expect("marking swap of a valid grid is valid")
    }

    /// Applies a Cromwell move, returning the new grid.
    pub fn apply_move(&self, m: &MoveSpec) -> Result<GridDiagram> {
        apply_move(self, m)
    }

    /// Canonical text serialization (the same format [`parse_grid`] reads).
    pub fn to_text(&self) -> String {
        let fmt = |s: &[u8]| {
            s.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!(
            "n = {}\nX = {}\nO = {}\n",
            self.n,
            fmt(&self.sigma_x),
            fmt(&self.sigma_o)
        )
    }

    pub fn to_json(&self) -> GridJson {
        GridJson {
            n: self.n,
            sigma_x: self.sigma_x.iter().map(|&v| v as usize).collect(),
            sigma_o: self.sigma_o.iter().map(|&v| v as usize).collect(),
            components: self.comp_of_col.iter().map(|&v| v as usize).collect(),
            ell: self.ell(),
            component_sizes: self.comp_sizes.clone(),
        }
    }
}

impl std::fmt::Debug for GridDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GridDiagram(n={}, X={:?}, O={:?})",
            self.n, self.sigma_x, self.sigma_o
        )
    }
}

impl std::fmt::Display for GridDiagram {
    /// ASCII picture, top row first.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in (0..self.n).rev() {
            for col in 0..self.n {
                let c = if self.sigma_x[col] as usize == row {
                    'X'
                } else if self.sigma_o[col] as usize == row {
                    'O'
                } else {
                    '.'
                };
                write!(f, "{c} ")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// JSON export mirroring the grid fields plus derived component labels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridJson {
    pub n: usize,
    pub sigma_x: Vec<usize>,
    pub sigma_o: Vec<usize>,
    pub components: Vec<usize>,
    pub ell: usize,
    pub component_sizes: Vec<usize>,
}

/// Walks the link: in column `c`, the vertical segment runs from the X to the
/// O; the horizontal segment of the O's row then leads to that row's X.
fn trace_components(sigma_x: &[u8], sigma_o: &[u8]) -> (Vec<u8>, Vec<usize>) {
    let n = sigma_x.len();
    let x_col_of_row = crate::perm::inverse(sigma_x);
    let mut comp_of_col = vec![u8::MAX; n];
    let mut sizes = Vec::new();
    for start in 0..n {
        if comp_of_col[start] != u8::MAX {
            continue;
        }
        let label = sizes.len() as u8;
        let mut size = 0usize;
        let mut col = start;
        loop {
            comp_of_col[col] = label;
            size += 1;
            col = x_col_of_row[sigma_o[col] as usize] as usize;
            if col == start {
                break;
            }
        }
        sizes.push(size);
    }
    (comp_of_col, sizes)
}

/// Parses the external grid format:
///
/// ```text
/// # comment lines start with '#'
/// n = 5
/// X = 0 1 2 3 4
/// O = 2 3 4 0 1
/// ```
pub fn parse_grid(text: &str) -> Result<GridDiagram> {
    let mut n: Option<usize> = None;
    let mut xs: Option<Vec<u8>> = None;
    let mut os: Option<Vec<u8>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: lineno,
            msg: format!("expected `key = value`, got `{line}`"),
        })?;
        let parse_row_list = |value: &str| -> Result<Vec<u8>> {
            value
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u8>().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("`{tok}` is not a row index"),
                    })
                })
                .collect()
        };
        match key.trim() {
            "n" => {
                n = Some(value.trim().parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("`{}` is not a grid number", value.trim()),
                })?)
            }
            "X" => xs = Some(parse_row_list(value)?),
            "O" => os = Some(parse_row_list(value)?),
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unknown key `{other}`"),
                })
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing `n = ...` line".into(),
    })?;
    let xs = xs.ok_or(Error::Parse {
        line: 0,
        msg: "missing `X = ...` line".into(),
    })?;
    let os = os.ok_or(Error::Parse {
        line: 0,
        msg: "missing `O = ...` line".into(),
    })?;
    if xs.len() != n || os.len() != n {
        return Err(Error::Parse {
            line: 0,
            msg: format!("expected {n} entries, got X: {}, O: {}", xs.len(), os.len()),
        });
    }
    GridDiagram::new(xs, os)
}

/// Which side of the anchor marker the new column is inserted on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// The four column-stabilization variants: the first letter picks the marker
/// the new column is inserted next to, the second whether that marker lands
/// on the upper of the two split rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StabVariant {
    /// Anchor at the row's X; X goes to the upper copy of the row.
    XUp,
    /// Anchor at the row's X; X goes to the lower copy.
    XDown,
    /// Anchor at the row's O; O goes to the upper copy.
    OUp,
    /// Anchor at the row's O; O goes to the lower copy.
    ODown,
}

/// A single Cromwell move. All indices are 0-based.
///
/// Only column stabilizations are exposed; a row stabilization is the
/// composite (transpose, column-stabilize, transpose) and can equally be
/// reached through commutations, so the move set stays complete.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveSpec {
    /// Shift every row index up by `k` (mod n).
    CyclicRows(usize),
    /// Shift every column index right by `k` (mod n).
    CyclicCols(usize),
    /// Exchange the decorations of columns `i` and `i+1` (mod n).
    CommuteCols(usize),
    /// Exchange the decorations of rows `j` and `j+1` (mod n).
    CommuteRows(usize),
    /// Split `row` in two and insert a new column next to one of its markers.
    Stabilize {
        row: usize,
        side: Side,
        variant: StabVariant,
    },
    /// Remove column `col` (whose markers occupy adjacent rows) and merge the
    /// two rows. Inverse of a stabilization.
    Destabilize { col: usize },
}

fn check_index(what: &str, idx: usize, n: usize) -> Result<()> {
    if idx >= n {
        Err(Error::IllegalMove(format!(
            "{what} {idx} out of range for n={n}"
        )))
    } else {
        Ok(())
    }
}

/// True when `v` lies strictly inside the cyclic open interval `(a, b)` of
/// `Z/n`, walking upward from `a` to `b`.
fn in_cyclic_open(v: usize, a: usize, b: usize, n: usize) -> bool {
    ((v + n - a) % n) > 0 && ((v + n - a) % n) < ((b + n - a) % n)
}

/// Commutation legality on the torus: the two markers of the second column
/// (or row) must both lie strictly inside one of the two arcs cut out by the
/// markers of the first. Shared rows (or columns) make the move illegal.
fn commute_legal(a1: usize, a2: usize, b1: usize, b2: usize, n: usize) -> bool {
    if b1 == a1 || b1 == a2 || b2 == a1 || b2 == a2 {
        return false;
    }
    let b1_in = in_cyclic_open(b1, a1, a2, n);
    let b2_in = in_cyclic_open(b2, a1, a2, n);
    b1_in == b2_in
}

fn apply_move(g: &GridDiagram, m: &MoveSpec) -> Result<GridDiagram> {
    let n = g.n;
    match *m {
        MoveSpec::CyclicRows(k) => {
            let shift = |s: &[u8]| s.iter().map(|&r| ((r as usize + k) % n) as u8).collect();
            GridDiagram::new(shift(&g.sigma_x), shift(&g.sigma_o))
        }
        MoveSpec::CyclicCols(k) => {
            let k = k % n;
            let shift = |s: &[u8]| (0..n).map(|col| s[(col + n - k) % n]).collect();
            GridDiagram::new(shift(&g.sigma_x), shift(&g.sigma_o))
        }
        MoveSpec::CommuteCols(i) => {
            check_index("column", i, n)?;
            let j = (i + 1) % n;
            if !commute_legal(g.x_row(i), g.o_row(i), g.x_row(j), g.o_row(j), n) {
                return Err(Error::IllegalMove(format!(
                    "columns {i} and {j} interleave"
                )));
            }
            let mut sx = g.sigma_x.clone();
            let mut so = g.sigma_o.clone();
            sx.swap(i, j);
            so.swap(i, j);
            GridDiagram::new(sx, so)
        }
        MoveSpec::CommuteRows(r) => {
            check_index("row", r, n)?;
            let s = (r + 1) % n;
            let xr = crate::perm::inverse(&g.sigma_x);
            let or = crate::perm::inverse(&g.sigma_o);
            if !commute_legal(
                xr[r] as usize,
                or[r] as usize,
                xr[s] as usize,
                or[s] as usize,
                n,
            ) {
                return Err(Error::IllegalMove(format!("rows {r} and {s} interleave")));
            }
            let swap_rows = |v: &[u8]| {
                v.iter()
                    .map(|&row| {
                        if row as usize == r {
                            s as u8
                        } else if row as usize == s {
                            r as u8
                        } else {
                            row
                        }
                    })
                    .collect()
            };
            GridDiagram::new(swap_rows(&g.sigma_x), swap_rows(&g.sigma_o))
        }
        MoveSpec::Stabilize { row, side, variant } => {
            check_index("row", row, n)?;
            stabilize(g, row, side, variant)
        }
        MoveSpec::Destabilize { col } => {
            check_index("column", col, n)?;
            destabilize(g, col)
        }
    }
}

fn stabilize(g: &GridDiagram, row: usize, side: Side, variant: StabVariant) -> Result<GridDiagram> {
    let n = g.n;
    let x_col = crate::perm::inverse(&g.sigma_x)[row] as usize;
    let o_col = crate::perm::inverse(&g.sigma_o)[row] as usize;
    let anchor_col = match variant {
        StabVariant::XUp | StabVariant::XDown => x_col,
        StabVariant::OUp | StabVariant::ODown => o_col,
    };
    // Does the original X of this row land on the upper copy?
    let x_up = match variant {
        StabVariant::XUp | StabVariant::ODown => true,
        StabVariant::XDown | StabVariant::OUp => false,
    };
    let insert_at = match side {
        Side::Left => anchor_col,
        Side::Right => anchor_col + 1,
    };

    // Rows above `row` shift up by one; `row` splits into `row` / `row + 1`.
    let lift_row = |r: usize, goes_up: bool| -> u8 {
        if r > row {
            (r + 1) as u8
        } else if r == row {
            if goes_up {
                (row + 1) as u8
            } else {
                row as u8
            }
        } else {
            r as u8
        }
    };

    let mut sx = Vec::with_capacity(n + 1);
    let mut so = Vec::with_capacity(n + 1);
    for old_col in 0..n {
        sx.push(lift_row(g.x_row(old_col), x_up));
        so.push(lift_row(g.o_row(old_col), !x_up));
    }
    // New column: O1 shares a row with the displaced X, X1 with the O.
    let new_x = if x_up { row } else { row + 1 } as u8;
    let new_o = if x_up { row + 1 } else { row } as u8;
    sx.insert(insert_at, new_x);
    so.insert(insert_at, new_o);
    GridDiagram::new(sx, so)
}

fn destabilize(g: &GridDiagram, col: usize) -> Result<GridDiagram> {
    let n = g.n;
    if n <= 2 {
        return Err(Error::IllegalMove("cannot destabilize below n=2".into()));
    }
    let xr = g.x_row(col);
    let or = g.o_row(col);
    // The column's markers must occupy cyclically adjacent rows.
    let (lo, hi) = if (xr + 1) % n == or {
        (xr, or)
    } else if (or + 1) % n == xr {
        (or, xr)
    } else {
        return Err(Error::IllegalMove(format!(
            "column {col} markers are not in adjacent rows"
        )));
    };
    // Three of the four relevant markings must share a corner: the other
    // marker of row xr or of row or sits in a neighboring column.
    let o_partner = crate::perm::inverse(&g.sigma_o)[xr] as usize;
    let x_partner = crate::perm::inverse(&g.sigma_x)[or] as usize;
    let adjacent = |c: usize| (c + 1) % n == col || (col + 1) % n == c;
    if !adjacent(o_partner) && !adjacent(x_partner) {
        return Err(Error::IllegalMove(format!(
            "no destabilization pattern at column {col}"
        )));
    }

    // Delete the column, fold row `hi` onto row `lo`, renumber.
    let squash = |r: usize| -> u8 {
        let r = if r == hi { lo } else { r };
        if r > hi {
            (r - 1) as u8
        } else {
            r as u8
        }
    };
    let mut sx = Vec::with_capacity(n - 1);
    let mut so = Vec::with_capacity(n - 1);
    for c in 0..n {
        if c == col {
            continue;
        }
        sx.push(squash(g.x_row(c)));
        so.push(squash(g.o_row(c)));
    }
    GridDiagram::new(sx, so)
}

/// A reproducible random walk through legal moves. Returns the visited grids,
/// `[g]` itself first, `length + 1` in total. Candidate moves that are
/// illegal in context (interleaved commutations, missing destabilization
/// patterns, stabilizations past `max_n`) are skipped and redrawn.
pub fn random_move_sequence(
    g: &GridDiagram,
    length: usize,
    seed: u64,
    max_n: usize,
) -> Vec<GridDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(length + 1);
    out.push(g.clone());
    let mut cur = g.clone();
    for _ in 0..length {
        // A cyclic move is always legal, so this loop terminates.
        loop {
            let n = cur.n();
            let m = match rng.gen_range(0..6u32) {
                0 => MoveSpec::CyclicRows(rng.gen_range(1..n)),
                1 => MoveSpec::CyclicCols(rng.gen_range(1..n)),
                2 => MoveSpec::CommuteCols(rng.gen_range(0..n)),
                3 => MoveSpec::CommuteRows(rng.gen_range(0..n)),
                4 => MoveSpec::Stabilize {
                    row: rng.gen_range(0..n),
                    side: if rng.gen() { Side::Left } else { Side::Right },
                    variant: match rng.gen_range(0..4u32) {
                        0 => StabVariant::XUp,
                        1 => StabVariant::XDown,
                        2 => StabVariant::OUp,
                        _ => StabVariant::ODown,
                    },
                },
                _ => MoveSpec::Destabilize {
                    col: rng.gen_range(0..n),
                },
            };
            if matches!(m, MoveSpec::Stabilize { .. }) && n >= max_n {
                continue;
            }
            if let Ok(next) = cur.apply_move(&m) {
                cur = next;
                out.push(cur.clone());
                break;
            }
        }
    }
    out
}

/// Uniformly random valid grid of size `n` (for fuzzing and the seeded
/// acceptance sweeps): a random X permutation plus a random O permutation
/// redrawn until no cell holds both decorations.
pub fn random_grid<R: Rng>(rng: &mut R, n: usize) -> GridDiagram {
    use rand::seq::SliceRandom;
    let mut sx: Vec<u8> = (0..n as u8).collect();
    sx.shuffle(rng);
    loop {
        let mut so: Vec<u8> = (0..n as u8).collect();
        so.shuffle(rng);
        if sx.iter().zip(&so).all(|(a, b)| a != b) {
            return GridDiagram::new(sx, so).expect("random grid is valid");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn unknot2() -> GridDiagram {
        GridDiagram::new(vec![0, 1], vec![1, 0]).unwrap()
    }

    fn trefoil5() -> GridDiagram {
        GridDiagram::new(vec![0, 1, 2, 3, 4], vec![2, 3, 4, 0, 1]).unwrap()
    }

    #[test]
    fn smallest_legal_grid_is_the_unknot() {
        let g = unknot2();
        assert_eq!(g.n(), 2);
        assert_eq!(g.ell(), 1);
        assert_eq!(g.comp_sizes(), &[2]);
    }

    #[test]
    fn trefoil_grid_is_a_knot() {
        let g = trefoil5();
        assert_eq!(g.ell(), 1);
        assert_eq!(g.comp_sizes(), &[5]);
    }

    #[test]
    fn same_cell_decoration_rejected() {
        let err = GridDiagram::new(vec![0, 1], vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::InvalidGrid(_)));
    }

    #[test]
    fn duplicate_row_rejected() {
        assert!(GridDiagram::new(vec![0, 0], vec![1, 1]).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        let g = trefoil5();
        let text = g.to_text();
        let h = parse_grid(&text).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn parse_with_comments_and_blanks() {
        let g = parse_grid("# a trefoil\n\nn = 5\nX = 0 1 2 3 4\n# interlude\nO = 2 3 4 0 1\n")
            .unwrap();
        assert_eq!(g, trefoil5());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_grid("n = 5\nX = 0 1 2 3 nope\nO = 2 3 4 0 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn hopf_link_has_two_components() {
        let g = GridDiagram::new(vec![0, 1, 2, 3], vec![2, 3, 0, 1]).unwrap();
        assert_eq!(g.ell(), 2);
        assert_eq!(g.comp_sizes(), &[2, 2]);
        assert_eq!(g.comp_labels(), &[0, 1, 0, 1]);
    }

    #[test]
    fn cyclic_rows_shifts_sigma() {
        let g = trefoil5();
        let h = g.apply_move(&MoveSpec::CyclicRows(1)).unwrap();
        assert_eq!(h.sigma_x(), &[1, 2, 3, 4, 0]);
        assert_eq!(h.sigma_o(), &[3, 4, 0, 1, 2]);
    }

    #[test]
    fn cyclic_rows_order_n() {
        let g = trefoil5();
        let mut h = g.clone();
        for _ in 0..5 {
            h = h.apply_move(&MoveSpec::CyclicRows(1)).unwrap();
        }
        assert_eq!(g, h);
    }

    #[test]
    fn commutation_is_an_involution() {
        // Columns 0 and 1 of this grid have nested vertical intervals.
        let g = GridDiagram::new(vec![0, 1, 2, 3], vec![3, 2, 0, 1]).unwrap();
        let h = g.apply_move(&MoveSpec::CommuteCols(0)).unwrap();
        let back = h.apply_move(&MoveSpec::CommuteCols(0)).unwrap();
        assert_eq!(g, back);
        assert_ne!(g, h);
    }

    #[test]
    fn interleaved_commutation_rejected() {
        // Columns 0,1 of the trefoil interleave: {0,2} vs {1,3}.
        let err = trefoil5()
            .apply_move(&MoveSpec::CommuteCols(0))
            .unwrap_err();
        assert!(matches!(err, Error::IllegalMove(_)));
    }

    #[test]
    fn shared_row_commutation_rejected() {
        // In the 2x2 unknot adjacent columns share both rows.
        let err = unknot2().apply_move(&MoveSpec::CommuteCols(0)).unwrap_err();
        assert!(matches!(err, Error::IllegalMove(_)));
    }

    #[test]
    fn stabilize_then_destabilize_roundtrips() {
        let g = trefoil5();
        for row in 0..5 {
            for side in [Side::Left, Side::Right] {
                for variant in [
                    StabVariant::XUp,
                    StabVariant::XDown,
                    StabVariant::OUp,
                    StabVariant::ODown,
                ] {
                    let stab = g
                        .apply_move(&MoveSpec::Stabilize { row, side, variant })
                        .unwrap();
                    assert_eq!(stab.n(), 6);
                    assert_eq!(stab.ell(), g.ell());
                    // The inserted column is the anchor's position (Left) or
                    // one past it (Right); recover it by searching for the
                    // adjacent-row pattern that destabilizes back to g.
                    let mut found = false;
                    for col in 0..6 {
                        if let Ok(back) = stab.apply_move(&MoveSpec::Destabilize { col }) {
                            if back == g {
                                found = true;
                            }
                        }
                    }
                    assert!(found, "no destabilization returns to the original");
                }
            }
        }
    }

    #[test]
    fn destabilize_requires_pattern() {
        let err = trefoil5()
            .apply_move(&MoveSpec::Destabilize { col: 0 })
            .unwrap_err();
        assert!(matches!(err, Error::IllegalMove(_)));
    }

    #[test]
    fn stabilization_increments_one_component_size() {
        let hopf = GridDiagram::new(vec![0, 1, 2, 3], vec![2, 3, 0, 1]).unwrap();
        let stab = hopf
            .apply_move(&MoveSpec::Stabilize {
                row: 0,
                side: Side::Right,
                variant: StabVariant::XUp,
            })
            .unwrap();
        assert_eq!(stab.ell(), 2);
        let mut sizes = stab.comp_sizes().to_vec();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3]);
    }

    #[test]
    fn random_sequence_length_zero() {
        let g = trefoil5();
        let seq = random_move_sequence(&g, 0, 1, 7);
        assert_eq!(seq.len(), 1);
        assert_eq!(seq[0], g);
    }

    #[test]
    fn random_sequence_respects_cap_and_reproduces() {
        let g = unknot2();
        let seq = random_move_sequence(&g, 12, 7, 4);
        assert_eq!(seq.len(), 13);
        assert!(seq.iter().all(|h| h.n() >= 2 && h.n() <= 4));
        assert!(seq.iter().all(|h| h.ell() == 1));
        let again = random_move_sequence(&g, 12, 7, 4);
        assert_eq!(seq, again);
    }

    mod prop {
        use super::*;
        use proptest::prelude::*;

        fn grid() -> impl Strategy<Value = GridDiagram> {
            ((2usize..=7), proptest::num::u64::ANY).prop_map(|(n, seed)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                crate::grid::random_grid(&mut rng, n)
            })
        }

        proptest! {
            // Parsing is the inverse of printing.
            #[test]
            fn text_roundtrip(g in grid()) {
                prop_assert_eq!(parse_grid(&g.to_text()).unwrap(), g);
            }

            // Every grid reachable by legal moves is again a valid grid with
            // the same number of components (GridDiagram::new re-validates
            // all invariants on construction).
            #[test]
            fn legal_moves_preserve_validity(g in grid(), seed in proptest::num::u64::ANY) {
                let seq = random_move_sequence(&g, 5, seed, g.n() + 2);
                for h in &seq {
                    prop_assert_eq!(h.ell(), g.ell());
                }
            }
        }
    }

    #[test]
    fn moves_preserve_component_structure() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..40 {
            let n = rng.gen_range(2..=6);
            let g = crate::grid::random_grid(&mut rng, n);
            let seq = random_move_sequence(&g, 6, rng.gen(), n + 2);
            for h in &seq {
                assert_eq!(h.ell(), g.ell());
                let mut a = g.comp_sizes().to_vec();
                let mut b: Vec<usize> = h.comp_sizes().to_vec();
                // Sizes grow under stabilization but the count is fixed;
                // cyclic/commute keep the multiset.
                a.sort();
                b.sort();
                assert_eq!(a.len(), b.len());
            }
        }
    }
}
