//! Bit-packed linear algebra over F₂²ⁿ with the standard symplectic form.
//!
//! A [`SympVec`] stores the pair `(a|b)` as one contiguous bit array: the
//! x-part `a` occupies bits `0..n` and the z-part `b` occupies bits `n..2n`.
//! Qubit `q` (0-based) therefore owns bits `q` and `n + q`.
//!
//! [`Subspace`] keeps its basis in reduced row-echelon form where the pivot
//! of a row is its lowest set bit and rows are sorted by pivot. Two subspaces
//! are equal exactly when their bases are equal.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// An element of F₂²ⁿ, read as the Weyl operator `X^a Z^b` up to phase.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SympVec {
    n: usize,
    words: Vec<u64>,
}

impl SympVec {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            words: vec![0; words_for(2 * n)],
        }
    }

    /// Builds `(a|b)` from per-qubit x and z bits.
    pub fn from_parts(a: &[bool], b: &[bool]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        let mut v = Self::zero(a.len());
        for (q, (&x, &z)) in a.iter().zip(b).enumerate() {
            v.set_x(q, x);
            v.set_z(q, z);
        }
        Ok(v)
    }

    /// Interprets the low `2n` bits of `index` as the packed vector. Requires `2n <= 64`.
    pub fn from_index(n: usize, index: u64) -> Self {
        assert!(2 * n <= WORD_BITS, "from_index needs 2n <= 64");
        let mut v = Self::zero(n);
        if n > 0 {
            v.words[0] = index & low_mask(2 * n);
        }
        v
    }

    /// Inverse of [`SympVec::from_index`].
    pub fn to_index(&self) -> u64 {
        assert!(2 * self.n <= WORD_BITS, "to_index needs 2n <= 64");
        self.words.first().copied().unwrap_or(0)
    }

    /// Single-qubit X on qubit `q`.
    pub fn x_on(n: usize, q: usize) -> Self {
        let mut v = Self::zero(n);
        v.set_x(q, true);
        v
    }

    /// Single-qubit Z on qubit `q`.
    pub fn z_on(n: usize, q: usize) -> Self {
        let mut v = Self::zero(n);
        v.set_z(q, true);
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i < 2 * self.n);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set_bit(&mut self, i: usize, value: bool) {
        debug_assert!(i < 2 * self.n);
        let m = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= m;
        } else {
            self.words[i / WORD_BITS] &= !m;
        }
    }

    #[inline]
    pub fn flip_bit(&mut self, i: usize) {
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn x(&self, q: usize) -> bool {
        self.bit(q)
    }

    #[inline]
    pub fn z(&self, q: usize) -> bool {
        self.bit(self.n + q)
    }

    #[inline]
    pub fn set_x(&mut self, q: usize, value: bool) {
        self.set_bit(q, value)
    }

    #[inline]
    pub fn set_z(&mut self, q: usize, value: bool) {
        let n = self.n;
        self.set_bit(n + q, value)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of qubits on which the operator acts non-trivially.
    pub fn weight(&self) -> usize {
        (0..self.n).filter(|&q| self.x(q) || self.z(q)).count()
    }

    pub fn lowest_set_bit(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    fn lowest_set_bit_masked(&self, mask: &SympVec) -> Option<usize> {
        self.words
            .iter()
            .zip(&mask.words)
            .enumerate()
            .find(|(_, (&w, &m))| w & m != 0)
            .map(|(i, (&w, &m))| i * WORD_BITS + (w & m).trailing_zeros() as usize)
    }

    fn intersects(&self, mask: &SympVec) -> bool {
        self.words.iter().zip(&mask.words).any(|(&w, &m)| w & m != 0)
    }

    /// Reads up to 64 bits starting at `offset + 64 * k`, truncated at `offset + len`.
    #[inline]
    fn chunk(&self, offset: usize, len: usize, k: usize) -> u64 {
        let start = offset + k * WORD_BITS;
        let w = start / WORD_BITS;
        let s = start % WORD_BITS;
        let mut out = self.words[w] >> s;
        if s > 0 && w + 1 < self.words.len() {
            out |= self.words[w + 1] << (WORD_BITS - s);
        }
        let remaining = len - k * WORD_BITS;
        if remaining < WORD_BITS {
            out &= low_mask(remaining);
        }
        out
    }

    /// `[self, other]`, computed word-parallel as parity of `a₁·b₂ + b₁·a₂`.
    ///
    /// Panics on a qubit-count mismatch; see [`symplectic_product`] for the checked form.
    pub fn symplectic(&self, other: &SympVec) -> bool {
        assert_eq!(self.n, other.n, "symplectic product of mismatched vectors");
        let n = self.n;
        let mut acc = 0u32;
        for k in 0..words_for(n) {
            let a1 = self.chunk(0, n, k);
            let b1 = self.chunk(n, n, k);
            let a2 = other.chunk(0, n, k);
            let b2 = other.chunk(n, n, k);
            acc ^= (a1 & b2).count_ones() ^ (b1 & a2).count_ones();
        }
        acc & 1 == 1
    }

    /// Standard (non-symplectic) dot product over F₂.
    pub fn dot(&self, other: &SympVec) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// `(a|b) ↦ (b|a)`.
    pub fn swap_halves(&self) -> SympVec {
        let mut out = SympVec::zero(self.n);
        for q in 0..self.n {
            out.set_x(q, self.z(q));
            out.set_z(q, self.x(q));
        }
        out
    }

    /// Zeroes every coordinate outside `mask`.
    pub fn masked(&self, mask: &SympVec) -> SympVec {
        SympVec {
            n: self.n,
            words: self.words.iter().zip(&mask.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Both coordinates of every qubit in `qubits`.
    pub fn qubit_mask(n: usize, qubits: &[usize]) -> SympVec {
        let mut m = SympVec::zero(n);
        for &q in qubits {
            m.set_x(q, true);
            m.set_z(q, true);
        }
        m
    }

    /// True when the operator acts as identity outside `qubits`.
    pub fn is_supported_on(&self, qubits: &[usize]) -> bool {
        let mut outside = SympVec::qubit_mask(self.n, &(0..self.n).collect::<Vec<_>>());
        for &q in qubits {
            outside.set_x(q, false);
            outside.set_z(q, false);
        }
        !self.intersects(&outside)
    }
}

fn low_mask(bits: usize) -> u64 {
    if bits >= WORD_BITS {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

impl AddAssign<&SympVec> for SympVec {
    fn add_assign(&mut self, rhs: &SympVec) {
        assert_eq!(self.n, rhs.n, "adding mismatched vectors");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl Add<&SympVec> for &SympVec {
    type Output = SympVec;

    fn add(self, rhs: &SympVec) -> SympVec {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl fmt::Display for SympVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            let c = match (self.x(q), self.z(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SympVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SympVec({self})")
    }
}

impl FromStr for SympVec {
    type Err = Error;

    /// Parses Pauli-string notation, one character per qubit; `Y` sets both bits.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.trim().chars().collect();
        let mut v = SympVec::zero(chars.len());
        for (q, c) in chars.into_iter().enumerate() {
            let (x, z) = match c {
                'I' | 'i' => (false, false),
                'X' | 'x' => (true, false),
                'Z' | 'z' => (false, true),
                'Y' | 'y' => (true, true),
                _ => return Err(Error::InvalidPauliString(s.to_string())),
            };
            v.set_x(q, x);
            v.set_z(q, z);
        }
        Ok(v)
    }
}

/// Checked `[x, y]`.
pub fn symplectic_product(x: &SympVec, y: &SympVec) -> Result<bool> {
    if x.n != y.n {
        return Err(Error::DimensionMismatch {
            left: x.n,
            right: y.n,
        });
    }
    Ok(x.symplectic(y))
}

/// Incremental Gaussian elimination. Pivots are chosen among the columns of
/// `mask`; the stored rows are fully reduced on their pivot columns.
struct Echelon {
    mask: SympVec,
    rows: Vec<SympVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(mask: SympVec) -> Self {
        Self {
            mask,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, v: &mut SympVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.bit(p) {
                *v += row;
            }
        }
    }

    /// Adds `v`. Returns the reduced vector when it has no remaining pivot candidate.
    fn insert(&mut self, mut v: SympVec) -> Option<SympVec> {
        self.reduce(&mut v);
        match v.lowest_set_bit_masked(&self.mask) {
            None => Some(v),
            Some(p) => {
                for row in &mut self.rows {
                    if row.bit(p) {
                        *row += &v;
                    }
                }
                let at = self.pivots.partition_point(|&q| q < p);
                self.rows.insert(at, v);
                self.pivots.insert(at, p);
                None
            }
        }
    }
}

/// A subspace of F₂²ⁿ held as a reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    rows: Vec<SympVec>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("n", &self.n)
            .field("basis", &self.rows.iter().map(|r| r.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        let rows: Vec<SympVec> = (0..2 * n)
            .map(|i| {
                let mut v = SympVec::zero(n);
                v.set_bit(i, true);
                v
            })
            .collect();
        Self {
            n,
            rows,
            pivots: (0..2 * n).collect(),
        }
    }

    /// Span of `vectors`, all of which must act on `n` qubits.
    pub fn span<'a, I>(n: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a SympVec>,
    {
        let mut ech = Echelon::new(SympVec::qubit_mask(n, &(0..n).collect::<Vec<_>>()));
        for v in vectors {
            if v.n != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: v.n,
                });
            }
            if ech.rows.len() == 2 * n {
                break;
            }
            ech.insert(v.clone());
        }
        Ok(Self {
            n,
            rows: ech.rows,
            pivots: ech.pivots,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SympVec] {
        &self.rows
    }

    pub fn contains(&self, v: &SympVec) -> bool {
        if v.n != self.n {
            return false;
        }
        let mut w = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w.bit(p) {
                w += row;
            }
        }
        w.is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.n == other.n && self.rows.iter().all(|r| other.contains(r))
    }

    /// Pairwise check on the basis; bilinearity extends it to the whole subspace.
    pub fn is_isotropic(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, x)| self.rows[i + 1..].iter().all(|y| !x.symplectic(y)))
    }

    /// `T^⊥ = {y : [x, y] = 0 ∀ x ∈ T}`: the kernel of the basis with halves swapped.
    pub fn symplectic_complement(&self) -> Subspace {
        let swapped: Vec<SympVec> = self.rows.iter().map(SympVec::swap_halves).collect();
        let m = Subspace::span(self.n, &swapped).expect("same n by construction");
        m.kernel()
    }

    /// `{y : row · y = 0}` for the standard dot product.
    fn kernel(&self) -> Subspace {
        let width = 2 * self.n;
        let mut is_pivot = vec![false; width];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::with_capacity(width - self.rows.len());
        for f in (0..width).filter(|&c| !is_pivot[c]) {
            let mut v = SympVec::zero(self.n);
            v.set_bit(f, true);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if row.bit(f) {
                    v.set_bit(p, true);
                }
            }
            out.push(v);
        }
        Subspace::span(self.n, &out).expect("same n by construction")
    }

    /// `S_side`: the elements of `self` acting as identity outside `side`.
    pub fn restrict_to(&self, side: &[usize]) -> Result<Subspace> {
        for &q in side {
            if q >= self.n {
                return Err(Error::QubitOutOfRange { index: q, n: self.n });
            }
        }
        let mut outside_qubits = vec![true; self.n];
        for &q in side {
            outside_qubits[q] = false;
        }
        let outside: Vec<usize> = (0..self.n).filter(|&q| outside_qubits[q]).collect();
        let mut ech = Echelon::new(SympVec::qubit_mask(self.n, &outside));
        let mut inside = Vec::new();
        for row in &self.rows {
            if let Some(v) = ech.insert(row.clone()) {
                inside.push(v);
            }
        }
        Subspace::span(self.n, &inside)
    }

    /// Smallest subspace containing both.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        Subspace::span(self.n, self.rows.iter().chain(&other.rows))
    }

    /// All `2^dim` elements. Only sensible for small dimensions.
    pub fn elements(&self) -> Vec<SympVec> {
        assert!(self.dim() < 32, "refusing to enumerate 2^{} elements", self.dim());
        let mut out = Vec::with_capacity(1 << self.dim());
        for mask in 0u64..(1u64 << self.dim()) {
            let mut v = SympVec::zero(self.n);
            for (i, row) in self.rows.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    v += row;
                }
            }
            out.push(v);
        }
        out
    }
}

/// Free-function form of [`Subspace::span`].
pub fn span(n: usize, vectors: &[SympVec]) -> Result<Subspace> {
    Subspace::span(n, vectors)
}

/// Free-function form of [`Subspace::symplectic_complement`].
pub fn symplectic_complement(t: &Subspace) -> Subspace {
    t.symplectic_complement()
}

/// Free-function form of [`Subspace::restrict_to`].
pub fn restrict_to_cut(s: &Subspace, side: &[usize]) -> Result<Subspace> {
    s.restrict_to(side)
}

/// Result of greedy symplectic Gram–Schmidt on a subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSplit {
    /// Pairs `(eᵢ, fᵢ)` with `[eᵢ, fⱼ] = δᵢⱼ` and `[eᵢ, eⱼ] = [fᵢ, fⱼ] = 0`.
    pub pairs: Vec<(SympVec, SympVec)>,
    /// Isotropic remainder, symplectically orthogonal to every pair.
    pub residual: Subspace,
}

impl SymplecticSplit {
    /// Span of all `eᵢ, fᵢ`.
    pub fn symplectic_part(&self) -> Subspace {
        let n = self.residual.n();
        Subspace::span(n, self.pairs.iter().flat_map(|(e, f)| [e, f])).expect("same n")
    }
}

/// Splits `s` into a symplectic part with an explicit symplectic basis and an isotropic residual.
///
/// Each round takes the first basis vector `e` that has a partner, the first `f`
/// with `[e, f] = 1`, and projects the rest of the basis onto `⟨e, f⟩^⊥` via
/// `v ↦ v + [v, e] f + [v, f] e`.
pub fn extract_symplectic_subspace(s: &Subspace) -> SymplecticSplit {
    let n = s.n();
    let mut current = s.clone();
    let mut pairs = Vec::new();
    loop {
        let basis = current.basis();
        let found = basis.iter().enumerate().find_map(|(i, e)| {
            basis
                .iter()
                .position(|f| e.symplectic(f))
                .map(|j| (i, j))
        });
        let Some((i, j)) = found else { break };
        let e = basis[i].clone();
        let f = basis[j].clone();
        let projected: Vec<SympVec> = basis
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != i && m != j)
            .map(|(_, v)| {
                let mut w = v.clone();
                if v.symplectic(&e) {
                    w += &f;
                }
                if v.symplectic(&f) {
                    w += &e;
                }
                w
            })
            .collect();
        current = Subspace::span(n, &projected).expect("same n");
        pairs.push((e, f));
    }
    SymplecticSplit {
        pairs,
        residual: current,
    }
}

/// A bipartition `A ⊔ B` of the qubits `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    n: usize,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl Cut {
    /// Cut with side `A` given by 0-based qubit indices; `B` is the complement.
    pub fn new(n: usize, a: &[usize]) -> Result<Self> {
        let mut in_a = vec![false; n];
        for &q in a {
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, n });
            }
            if in_a[q] {
                return Err(Error::InvalidCut(format!("qubit {} listed twice", q + 1)));
            }
            in_a[q] = true;
        }
        let a = (0..n).filter(|&q| in_a[q]).collect();
        let b = (0..n).filter(|&q| !in_a[q]).collect();
        Ok(Self { n, a, b })
    }

    /// Same as [`Cut::new`] with 1-based indices.
    pub fn from_one_based(n: usize, a: &[usize]) -> Result<Self> {
        let zero_based = a
            .iter()
            .map(|&q| {
                q.checked_sub(1)
                    .ok_or_else(|| Error::InvalidCut("qubit indices are 1-based".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, &zero_based)
    }

    /// `A` = the first `n / 2` qubits.
    pub fn half(n: usize) -> Self {
        Self::new(n, &(0..n / 2).collect::<Vec<_>>()).expect("in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn swapped(&self) -> Cut {
        Cut {
            n: self.n,
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    pub fn a_one_based(&self) -> Vec<usize> {
        self.a.iter().map(|q| q + 1).collect()
    }
}
