//! Boolean-matrix semantics.
//!
//! A relation `m → n` is an `m × n` matrix over the boolean semiring.
//! Composition is the boolean matrix product, `⊗` the Kronecker product,
//! `⊕` the block-diagonal sum. Rows are bit-packed.

use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use crate::finrel::{EvalError, Instance};
use crate::presentation::{Presentation, TypeError};
use crate::syntax::{Morphism, Name, Object};

/// Matrices with more entries than this are refused.
pub const MAX_ENTRIES: usize = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum MatrixError {
    #[error("cannot compose {0}x{1} with {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("a {0}x{1} matrix exceeds the entry limit")]
    TooLarge(usize, usize),
    #[error("no matrix is given for generator {0:?}")]
    UnboundGenerator(Name),
    #[error("no dimension is given for object {0:?}")]
    UnboundObject(Name),
    #[error("matrix for {name:?} is {rows}x{cols}, its type needs {want_rows}x{want_cols}")]
    WrongShape { name: Name, rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self, MatrixError> {
        if rows.saturating_mul(cols) > MAX_ENTRIES {
            return Err(MatrixError::TooLarge(rows, cols));
        }
        let words = cols.div_ceil(64);
        Ok(BoolMatrix { rows, cols, words, bits: vec![0; rows * words] })
    }

    pub fn identity(n: usize) -> Result<Self, MatrixError> {
        let mut m = Self::zeros(n, n)?;
        (0..n).for_each(|i| m.set(i, i, true));
        Ok(m)
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self, MatrixError> {
        let mut m = Self::zeros(rows, cols)?;
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v != 0);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Positions of the true entries, row by row.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |i| (0..self.cols).filter(move |&j| self.get(i, j)).map(move |j| (i, j)))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> BoolMatrix {
        let mut t = Self::zeros(self.cols, self.rows).expect("same size");
        for (i, j) in self.entries() {
            t.set(j, i, true);
        }
        t
    }

    /// Entrywise order: `self ≤ other`.
    pub fn le(&self, other: &BoolMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Entrywise AND.
    pub fn hadamard(&self, other: &BoolMatrix) -> BoolMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        BoolMatrix { bits, ..self.clone() }
    }

    /// Entrywise OR.
    pub fn or(&self, other: &BoolMatrix) -> BoolMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        BoolMatrix { bits, ..self.clone() }
    }
}

impl fmt::Display for BoolMatrix {
    /// One line per row, entries `0`/`1` separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<&str> = (0..self.cols).map(|j| if self.get(i, j) { "1" } else { "0" }).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolMatrix {}x{}\n{self}", self.rows, self.cols)
    }
}

/// Boolean matrix product `a · b`.
pub fn mat_compose(a: &BoolMatrix, b: &BoolMatrix) -> Result<BoolMatrix, MatrixError> {
    if a.cols != b.rows {
        return Err(MatrixError::DimensionMismatch(a.rows, a.cols, b.rows, b.cols));
    }
    let mut out = BoolMatrix::zeros(a.rows, b.cols)?;
    for i in 0..a.rows {
        let target = i * out.words;
        for k in (0..a.cols).filter(|&k| a.get(i, k)) {
            for (w, bw) in b.row(k).iter().enumerate() {
                out.bits[target + w] |= bw;
            }
        }
    }
    Ok(out)
}

/// Kronecker product: block `(i, j)` is `a[i][j] · b`.
pub fn mat_kron(a: &BoolMatrix, b: &BoolMatrix) -> Result<BoolMatrix, MatrixError> {
    let mut out = BoolMatrix::zeros(a.rows * b.rows, a.cols * b.cols)?;
    for (i, j) in a.entries() {
        for (k, l) in b.entries() {
            out.set(i * b.rows + k, j * b.cols + l, true);
        }
    }
    Ok(out)
}

/// Block-diagonal sum.
pub fn mat_dsum(a: &BoolMatrix, b: &BoolMatrix) -> Result<BoolMatrix, MatrixError> {
    let mut out = BoolMatrix::zeros(a.rows + b.rows, a.cols + b.cols)?;
    for (i, j) in a.entries() {
        out.set(i, j, true);
    }
    for (k, l) in b.entries() {
        out.set(a.rows + k, a.cols + l, true);
    }
    Ok(out)
}

/// Structural morphisms, parameterized by carrier sizes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Structural {
    Identity(usize),
    Braid(usize, usize),
    Copy(usize),
    Delete(usize),
    Merge(usize),
    Create(usize),
    SumBraid(usize, usize),
    CoMerge(usize),
    CoCreate(usize),
    CoCopy(usize),
    CoDelete(usize),
    Distribute(usize, usize, usize),
    DistributeInv(usize, usize, usize),
}

/// The matrix of a structural morphism.
pub fn mat_structural(kind: Structural) -> Result<BoolMatrix, MatrixError> {
    use Structural::*;
    Ok(match kind {
        Identity(n) => BoolMatrix::identity(n)?,
        Braid(m, n) => {
            let mut out = BoolMatrix::zeros(m * n, n * m)?;
            for i in 0..m {
                for j in 0..n {
                    out.set(i * n + j, j * m + i, true);
                }
            }
            out
        }
        // Δ_n = (e1e1ᵀ ... en enᵀ): row i has its one at column i*n + i.
        Copy(n) => {
            let mut out = BoolMatrix::zeros(n, n * n)?;
            (0..n).for_each(|i| out.set(i, i * n + i, true));
            out
        }
        Delete(n) => BoolMatrix::ones(n, 1)?,
        Merge(n) => mat_structural(Copy(n))?.transpose(),
        Create(n) => BoolMatrix::ones(1, n)?,
        SumBraid(m, n) => {
            let mut out = BoolMatrix::zeros(m + n, n + m)?;
            (0..m).for_each(|i| out.set(i, n + i, true));
            (0..n).for_each(|j| out.set(m + j, j, true));
            out
        }
        // ▼_n stacks two identities.
        CoMerge(n) => {
            let mut out = BoolMatrix::zeros(2 * n, n)?;
            for i in 0..n {
                out.set(i, i, true);
                out.set(n + i, i, true);
            }
            out
        }
        CoCreate(n) => BoolMatrix::zeros(0, n)?,
        CoCopy(n) => mat_structural(CoMerge(n))?.transpose(),
        CoDelete(n) => BoolMatrix::zeros(n, 0)?,
        Distribute(n, p, q) => {
            let mut out = BoolMatrix::zeros(n * (p + q), n * p + n * q)?;
            for x in 0..n {
                for s in 0..p + q {
                    let target = if s < p { x * p + s } else { n * p + x * q + (s - p) };
                    out.set(x * (p + q) + s, target, true);
                }
            }
            out
        }
        DistributeInv(n, p, q) => mat_structural(Distribute(n, p, q))?.transpose(),
    })
}

/// Dimensions for object generators and matrices for morphism generators.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MatrixInstance {
    pub dims: IndexMap<Name, usize>,
    pub matrices: IndexMap<Name, BoolMatrix>,
}

impl MatrixInstance {
    pub fn dim(&self, obj: &Object) -> Result<usize, MatrixError> {
        Ok(match obj {
            Object::Gen(n) => *self.dims.get(n).ok_or_else(|| MatrixError::UnboundObject(n.clone()))?,
            Object::Unit => 1,
            Object::Zero => 0,
            Object::Tensor(fs) => fs.iter().try_fold(1usize, |a, f| Ok::<_, MatrixError>(a * self.dim(f)?))?,
            Object::Sum(ss) => ss.iter().try_fold(0usize, |a, s| Ok::<_, MatrixError>(a + self.dim(s)?))?,
        })
    }
}

/// Evaluates `expr` as a boolean matrix. Derived constructors use their
/// matrix shortcuts: dagger is transpose, meet is the Hadamard product,
/// join is entrywise OR.
pub fn eval_matrix(expr: &Morphism, inst: &MatrixInstance, pres: &Presentation) -> Result<BoolMatrix, MatrixError> {
    pres.infer_type(expr)?;
    go(expr, inst, pres)
}

fn go(expr: &Morphism, inst: &MatrixInstance, pres: &Presentation) -> Result<BoolMatrix, MatrixError> {
    use Morphism::*;
    let d = |x: &Object| inst.dim(&x.normalize());
    let st = |k| mat_structural(k);
    match expr {
        Generator(g) => {
            let m = inst.matrices.get(g).ok_or_else(|| MatrixError::UnboundGenerator(g.clone()))?;
            let sig = pres.signature(g)?;
            let (want_rows, want_cols) = (inst.dim(&sig.dom)?, inst.dim(&sig.cod)?);
            if (m.rows, m.cols) != (want_rows, want_cols) {
                return Err(MatrixError::WrongShape {
                    name: g.clone(),
                    rows: m.rows,
                    cols: m.cols,
                    want_rows,
                    want_cols,
                });
            }
            Ok(m.clone())
        }
        Identity(x) => st(Structural::Identity(d(x)?)),
        Compose(ps) => {
            let mut acc = go(&ps[0], inst, pres)?;
            for p in &ps[1..] {
                acc = mat_compose(&acc, &go(p, inst, pres)?)?;
            }
            Ok(acc)
        }
        Tensor(ps) => {
            let mut acc = BoolMatrix::identity(1)?;
            for p in ps {
                acc = mat_kron(&acc, &go(p, inst, pres)?)?;
            }
            Ok(acc)
        }
        SumTensor(ps) => {
            let mut acc = BoolMatrix::zeros(0, 0)?;
            for p in ps {
                acc = mat_dsum(&acc, &go(p, inst, pres)?)?;
            }
            Ok(acc)
        }
        Braid(x, y) => st(Structural::Braid(d(x)?, d(y)?)),
        Copy(x) => st(Structural::Copy(d(x)?)),
        Delete(x) => st(Structural::Delete(d(x)?)),
        Merge(x) => st(Structural::Merge(d(x)?)),
        Create(x) => st(Structural::Create(d(x)?)),
        Dagger(m) => Ok(go(m, inst, pres)?.transpose()),
        Unit(x) => Ok(go(&Counit(x.clone()), inst, pres)?.transpose()),
        Counit(x) => {
            let n = d(x)?;
            let mut out = BoolMatrix::zeros(n * n, 1)?;
            (0..n).for_each(|i| out.set(i * n + i, 0, true));
            Ok(out)
        }
        Meet(a, b) => Ok(go(a, inst, pres)?.hadamard(&go(b, inst, pres)?)),
        Join(a, b) => Ok(go(a, inst, pres)?.or(&go(b, inst, pres)?)),
        Top(x, y) => BoolMatrix::ones(d(x)?, d(y)?),
        Bottom(x, y) => BoolMatrix::zeros(d(x)?, d(y)?),
        SumBraid(x, y) => st(Structural::SumBraid(d(x)?, d(y)?)),
        CoMerge(x) => st(Structural::CoMerge(d(x)?)),
        CoCreate(x) => st(Structural::CoCreate(d(x)?)),
        CoCopy(x) => st(Structural::CoCopy(d(x)?)),
        CoDelete(x) => st(Structural::CoDelete(d(x)?)),
        Distribute(x, y, z) => st(Structural::Distribute(d(x)?, d(y)?, d(z)?)),
        DistributeInv(x, y, z) => st(Structural::DistributeInv(d(x)?, d(y)?, d(z)?)),
    }
}

/// Converts a finite instance to matrices, indexing each carrier in
/// declaration order.
pub fn bridge(inst: &Instance, pres: &Presentation) -> Result<MatrixInstance, MatrixError> {
    let mut out = MatrixInstance::default();
    for (name, atoms) in &inst.carriers {
        out.dims.insert(name.clone(), atoms.len());
    }
    for (g, sig) in &pres.generators {
        let rel = inst.generator_relation(g, sig)?;
        out.matrices.insert(g.clone(), relation_matrix(&rel)?);
    }
    Ok(out)
}

/// The matrix of a finite relation in canonical carrier order.
pub fn relation_matrix(rel: &crate::finrel::FinRelation) -> Result<BoolMatrix, MatrixError> {
    let mut m = BoolMatrix::zeros(rel.dom_size, rel.cod_size)?;
    for &(a, b) in &rel.pairs {
        m.set(a, b, true);
    }
    Ok(m)
}
