//! Bit-packed linear algebra over GF(2): ranks of sparse boundary blocks,
//! kernel bases with coefficient tracking, and reduced echelon bases for
//! membership queries. Rows are `Vec<u64>` words; a block of a few thousand
//! generators reduces in milliseconds.

/// Dense bit vector.
#[derive(Clone, PartialEq, Eq)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn toggle(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the highest set bit.
    pub fn highest_bit(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec[")?;
        for i in self.ones() {
            write!(f, "{i},")?;
        }
        write!(f, "]")
    }
}

/// Rank of a GF(2) matrix given as rows; consumes the rows.
pub fn rank(rows: Vec<BitVec>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivot_at: Vec<u32> = vec![u32::MAX; cols];
    let mut stored: Vec<BitVec> = Vec::new();
    for mut row in rows {
        while let Some(h) = row.highest_bit() {
            let pi = pivot_at[h];
            if pi == u32::MAX {
                pivot_at[h] = stored.len() as u32;
                stored.push(row);
                break;
            }
            row.xor_assign(&stored[pi as usize]);
        }
    }
    stored.len()
}

/// A reduced echelon basis with pivots at the highest set bit, supporting
/// unique normal forms for coset membership.
pub struct Echelon {
    /// (pivot index, row) sorted by descending pivot; rows are mutually
    /// reduced, so normal forms are unique per coset.
    basis: Vec<(usize, BitVec)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Fully reduces `v` against the basis.
    pub fn normal_form(&self, mut v: BitVec) -> BitVec {
        for (p, row) in &self.basis {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Reduces and inserts if independent; returns whether the vector
    /// extended the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let v = self.normal_form(v);
        let Some(h) = v.highest_bit() else {
            return false;
        };
        // Back-substitute into existing rows to keep the basis reduced.
        for (_, row) in self.basis.iter_mut() {
            if row.get(h) {
                row.xor_assign(&v);
            }
        }
        let pos = self.basis.partition_point(|(p, _)| *p > h);
        self.basis.insert(pos, (h, v));
        true
    }
}

impl Default for Echelon {
    fn default() -> Self {
        Self::new()
    }
}

/// Kernel basis of the linear map sending basis vector `i` to `columns[i]`,
/// as coefficient vectors over the domain. Deterministic: vectors appear in
/// the order their leading (largest-index) coordinate closes a relation.
pub fn kernel_basis(columns: &[BitVec], domain_len: usize) -> Vec<BitVec> {
    let target_len = columns.first().map_or(0, |c| c.len());
    let mut pivot_at: Vec<u32> = vec![u32::MAX; target_len];
    let mut stored: Vec<(BitVec, BitVec)> = Vec::new(); // (image, coef)
    let mut kernel = Vec::new();
    for (i, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut coef = BitVec::zeros(domain_len);
        coef.set(i);
        loop {
            match v.highest_bit() {
                None => {
                    kernel.push(coef);
                    break;
                }
                Some(h) => {
                    let pi = pivot_at[h];
                    if pi == u32::MAX {
                        pivot_at[h] = stored.len() as u32;
                        stored.push((v, coef));
                        break;
                    }
                    let (pv, pc) = &stored[pi as usize];
                    v.xor_assign(pv);
                    coef.xor_assign(pc);
                }
            }
        }
    }
    kernel
}
