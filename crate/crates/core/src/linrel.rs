//! Linear relations over the rationals.
//!
//! A linear relation `U → V` is a subspace of `U ⊕ V`, stored as a basis
//! in reduced row echelon form. The RREF basis of a subspace is unique,
//! so equality of relations is equality of the stored bases. Both `⊗`
//! and `⊕` act as the direct sum here.

use std::fmt;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::presentation::{Presentation, TypeError};
use crate::syntax::{Morphism, Name, Object};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Reduces `rows` to RREF over `ncols` columns, dropping zero rows.
/// Returns the reduced rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Q>>, ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (pivot_row, row) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// A basis of `{x : row · x = 0 for every row}`.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (red, pivots) = rref(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinRel {
    dom: usize,
    cod: usize,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum LinError {
    #[error("cannot compose a relation into dimension {0} with one out of dimension {1}")]
    DimensionMismatch(usize, usize),
    #[error("{0} has no linear-relation semantics")]
    UnsupportedConstructor(&'static str),
    #[error("no relation is given for generator {0:?}")]
    UnboundGenerator(Name),
    #[error("no dimension is given for object {0:?}")]
    UnboundObject(Name),
    #[error("relation for {name:?} has type {found}, the generator needs {want}")]
    WrongShape { name: Name, found: String, want: String },
    #[error("spanning vector of length {0} in a space of dimension {1}")]
    BadVector(usize, usize),
    #[error(transparent)]
    Type(#[from] TypeError),
}

impl LinRel {
    /// The span of `vectors` inside `U ⊕ V`, with `dim U = dom`, `dim V = cod`.
    pub fn span(dom: usize, cod: usize, vectors: Vec<Vec<Q>>) -> Result<LinRel, LinError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dom + cod) {
            return Err(LinError::BadVector(v.len(), dom + cod));
        }
        let (basis, pivots) = rref(vectors, dom + cod);
        Ok(LinRel { dom, cod, basis, pivots })
    }

    fn from_rows(dom: usize, cod: usize, vectors: Vec<Vec<Q>>) -> LinRel {
        Self::span(dom, cod, vectors).expect("vectors have the right length")
    }

    /// `{x : c · x = 0 for every constraint c}`.
    pub fn from_constraints(dom: usize, cod: usize, constraints: &[Vec<Q>]) -> LinRel {
        Self::from_rows(dom, cod, nullspace(constraints, dom + cod))
    }

    /// The graph `{(u, uA)}` of the linear map with `dom × cod` matrix `a`.
    pub fn graph(a: &[Vec<Q>], dom: usize, cod: usize) -> LinRel {
        let rows = (0..dom)
            .map(|i| {
                let mut v = unit(dom + cod, i);
                v[dom..].clone_from_slice(&a[i]);
                v
            })
            .collect();
        Self::from_rows(dom, cod, rows)
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn full(dom: usize, cod: usize) -> LinRel {
        Self::from_rows(dom, cod, (0..dom + cod).map(|i| unit(dom + cod, i)).collect())
    }

    pub fn zero(dom: usize, cod: usize) -> LinRel {
        LinRel { dom, cod, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn identity(n: usize) -> LinRel {
        let rows = (0..n)
            .map(|i| {
                let mut v = unit(2 * n, i);
                v[n + i] = Q::one();
                v
            })
            .collect();
        Self::from_rows(n, n, rows)
    }

    /// Linear constraints cutting out the subspace.
    pub fn constraints(&self) -> Vec<Vec<Q>> {
        nullspace(&self.basis, self.dom + self.cod)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.constraints().iter().all(|c| c.iter().zip(v).map(|(a, b)| a * b).sum::<Q>().is_zero())
    }

    /// Subspace inclusion.
    pub fn le(&self, other: &LinRel) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn dagger(&self) -> LinRel {
        let rows = self
            .basis
            .iter()
            .map(|v| {
                let mut w = v[self.dom..].to_vec();
                w.extend_from_slice(&v[..self.dom]);
                w
            })
            .collect();
        Self::from_rows(self.cod, self.dom, rows)
    }

    /// Relational composite `self ; other`: eliminate the middle space.
    pub fn compose(&self, other: &LinRel) -> Result<LinRel, LinError> {
        if self.cod != other.dom {
            return Err(LinError::DimensionMismatch(self.cod, other.dom));
        }
        let (u, v, w) = (self.dom, self.cod, other.cod);
        let n = u + v + w;
        let mut cons = Vec::new();
        for c in self.constraints() {
            let mut row = c;
            row.resize(n, Q::zero());
            cons.push(row);
        }
        for c in other.constraints() {
            let mut row = vec![Q::zero(); u];
            row.extend(c);
            cons.push(row);
        }
        let joint = nullspace(&cons, n);
        let projected = joint
            .into_iter()
            .map(|x| {
                let mut y = x[..u].to_vec();
                y.extend_from_slice(&x[u + v..]);
                y
            })
            .collect();
        Ok(Self::from_rows(u, w, projected))
    }

    pub fn meet(&self, other: &LinRel) -> LinRel {
        assert_eq!((self.dom, self.cod), (other.dom, other.cod));
        let mut cons = self.constraints();
        cons.extend(other.constraints());
        Self::from_constraints(self.dom, self.cod, &cons)
    }

    pub fn join(&self, other: &LinRel) -> LinRel {
        assert_eq!((self.dom, self.cod), (other.dom, other.cod));
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::from_rows(self.dom, self.cod, rows)
    }

    /// Direct sum `U₁⊕U₂ → V₁⊕V₂`.
    pub fn direct_sum(&self, other: &LinRel) -> LinRel {
        let (u1, v1, u2, v2) = (self.dom, self.cod, other.dom, other.cod);
        let n = u1 + u2 + v1 + v2;
        let mut rows = Vec::new();
        for b in &self.basis {
            let mut r = vec![Q::zero(); n];
            r[..u1].clone_from_slice(&b[..u1]);
            r[u1 + u2..u1 + u2 + v1].clone_from_slice(&b[u1..]);
            rows.push(r);
        }
        for b in &other.basis {
            let mut r = vec![Q::zero(); n];
            r[u1..u1 + u2].clone_from_slice(&b[..u2]);
            r[u1 + u2 + v1..].clone_from_slice(&b[u2..]);
            rows.push(r);
        }
        Self::from_rows(u1 + u2, v1 + v2, rows)
    }

    /// Whether the relation is the graph of a linear map, read off the
    /// basis: the pivots are exactly the first `dom` columns.
    pub fn as_linear_map(&self) -> Option<Vec<Vec<Q>>> {
        if self.pivots != (0..self.dom).collect::<Vec<_>>() {
            return None;
        }
        Some(self.basis.iter().map(|r| r[self.dom..].to_vec()).collect())
    }

    /// Whether `1 ⇒ self ; self†` and `self† ; self ⇒ 1`, i.e. the relation
    /// is a map in the sense of adjunctions.
    pub fn is_map(&self) -> bool {
        let d = self.dagger();
        let total = LinRel::identity(self.dom).le(&self.compose(&d).expect("dims"));
        let univalent = d.compose(self).expect("dims").le(&LinRel::identity(self.cod));
        total && univalent
    }
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

impl fmt::Display for LinRel {
    /// One basis row per line, entries as `p/q` separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.basis {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinRel {} -> {}, rank {}\n{self}", self.dom, self.cod, self.rank())
    }
}

/// Free-standing form of [`LinRel::compose`].
pub fn lin_compose(l: &LinRel, m: &LinRel) -> Result<LinRel, LinError> {
    l.compose(m)
}

pub fn lin_join(l: &LinRel, m: &LinRel) -> LinRel {
    l.join(m)
}

pub fn lin_meet(l: &LinRel, m: &LinRel) -> LinRel {
    l.meet(m)
}

/// Structural morphisms over a space of the given dimension.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LinStructural {
    Identity(usize),
    Braid(usize, usize),
    Copy(usize),
    Delete(usize),
    Merge(usize),
    Create(usize),
    CoMerge(usize),
    CoCreate(usize),
    CoCopy(usize),
    CoDelete(usize),
}

pub fn lin_structural(kind: LinStructural) -> LinRel {
    use LinStructural::*;
    match kind {
        Identity(n) => LinRel::identity(n),
        // (x, y) ↦ (y, x)
        Braid(m, n) => {
            let d = m + n;
            let rows = (0..d)
                .map(|i| {
                    let mut v = unit(2 * d, i);
                    let j = if i < m { n + i } else { i - m };
                    v[d + j] = Q::one();
                    v
                })
                .collect();
            LinRel::from_rows(d, d, rows)
        }
        // v ↦ (v, v)
        Copy(n) => {
            let rows = (0..n)
                .map(|i| {
                    let mut v = unit(3 * n, i);
                    v[n + i] = Q::one();
                    v[2 * n + i] = Q::one();
                    v
                })
                .collect();
            LinRel::from_rows(n, 2 * n, rows)
        }
        // v ↦ 0 in the zero space
        Delete(n) => LinRel::full(n, 0),
        Merge(n) => lin_structural(Copy(n)).dagger(),
        Create(n) => LinRel::full(0, n),
        // (v1, v2) ↦ v1 + v2
        CoMerge(n) => {
            let mut rows = Vec::new();
            for i in 0..n {
                let mut a = unit(3 * n, i);
                a[2 * n + i] = Q::one();
                let mut b = unit(3 * n, n + i);
                b[2 * n + i] = Q::one();
                rows.push(a);
                rows.push(b);
            }
            LinRel::from_rows(2 * n, n, rows)
        }
        // the zero map {0} → V
        CoCreate(n) => LinRel::zero(0, n),
        CoCopy(n) => lin_structural(CoMerge(n)).dagger(),
        CoDelete(n) => LinRel::zero(n, 0),
    }
}

/// Dimensions for object generators and linear relations for morphism generators.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LinInstance {
    pub name: Option<Name>,
    pub dims: IndexMap<Name, usize>,
    pub relations: IndexMap<Name, LinRel>,
}

impl LinInstance {
    pub fn dim(&self, obj: &Object) -> Result<usize, LinError> {
        Ok(match obj {
            Object::Gen(n) => *self.dims.get(n).ok_or_else(|| LinError::UnboundObject(n.clone()))?,
            Object::Unit | Object::Zero => 0,
            Object::Tensor(ps) | Object::Sum(ps) => {
                let mut total = 0;
                for p in ps {
                    total += self.dim(p)?;
                }
                total
            }
        })
    }
}

/// Evaluates `expr` as a linear relation. Distributors have no semantics
/// here because `⊗` and `⊕` coincide.
pub fn eval_linrel(expr: &Morphism, inst: &LinInstance, pres: &Presentation) -> Result<LinRel, LinError> {
    pres.infer_type(expr)?;
    go(expr, inst, pres)
}

fn go(expr: &Morphism, inst: &LinInstance, pres: &Presentation) -> Result<LinRel, LinError> {
    use LinStructural as S;
    use Morphism::*;
    let d = |x: &Object| inst.dim(&x.normalize());
    let st = |k| Ok(lin_structural(k));
    match expr {
        Generator(g) => {
            let r = inst.relations.get(g).ok_or_else(|| LinError::UnboundGenerator(g.clone()))?;
            let sig = pres.signature(g)?;
            let (dd, cd) = (inst.dim(&sig.dom)?, inst.dim(&sig.cod)?);
            if (r.dom, r.cod) != (dd, cd) {
                return Err(LinError::WrongShape {
                    name: g.clone(),
                    found: format!("{} -> {}", r.dom, r.cod),
                    want: format!("{dd} -> {cd}"),
                });
            }
            Ok(r.clone())
        }
        Identity(x) => st(S::Identity(d(x)?)),
        Compose(ps) => {
            let mut acc = go(&ps[0], inst, pres)?;
            for p in &ps[1..] {
                acc = acc.compose(&go(p, inst, pres)?)?;
            }
            Ok(acc)
        }
        Tensor(ps) | SumTensor(ps) => {
            let mut acc = LinRel::identity(0);
            for p in ps {
                acc = acc.direct_sum(&go(p, inst, pres)?);
            }
            Ok(acc)
        }
        Braid(x, y) | SumBraid(x, y) => st(S::Braid(d(x)?, d(y)?)),
        Copy(x) => st(S::Copy(d(x)?)),
        Delete(x) => st(S::Delete(d(x)?)),
        Merge(x) => st(S::Merge(d(x)?)),
        Create(x) => st(S::Create(d(x)?)),
        CoMerge(x) => st(S::CoMerge(d(x)?)),
        CoCreate(x) => st(S::CoCreate(d(x)?)),
        CoCopy(x) => st(S::CoCopy(d(x)?)),
        CoDelete(x) => st(S::CoDelete(d(x)?)),
        Dagger(m) => Ok(go(m, inst, pres)?.dagger()),
        Unit(x) => Ok(lin_structural(S::Create(d(x)?)).compose(&lin_structural(S::Copy(d(x)?)))?),
        Counit(x) => Ok(lin_structural(S::Merge(d(x)?)).compose(&lin_structural(S::Delete(d(x)?)))?),
        Meet(a, b) => Ok(go(a, inst, pres)?.meet(&go(b, inst, pres)?)),
        Join(a, b) => Ok(go(a, inst, pres)?.join(&go(b, inst, pres)?)),
        Top(x, y) => Ok(LinRel::full(d(x)?, d(y)?)),
        Bottom(x, y) => Ok(LinRel::zero(d(x)?, d(y)?)),
        Distribute(..) => Err(LinError::UnsupportedConstructor("Distribute")),
        DistributeInv(..) => Err(LinError::UnsupportedConstructor("DistributeInv")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn scale(k: i64) -> LinRel {
        LinRel::graph(&[vec![q(k)]], 1, 1)
    }

    fn rows(r: &LinRel) -> Vec<Vec<Q>> {
        r.basis().to_vec()
    }

    #[test]
    fn scalings_compose() {
        let r = scale(2).compose(&scale(3)).unwrap();
        assert_eq!(rows(&r), vec![vec![q(1), q(6)]]);
    }

    #[test]
    fn map_then_its_dagger() {
        let r = scale(2).compose(&scale(2).dagger()).unwrap();
        assert_eq!(rows(&r), vec![vec![q(1), q(1)]]);
    }

    #[test]
    fn comerge_on_a_line() {
        let r = lin_structural(LinStructural::CoMerge(1));
        assert_eq!(rows(&r), vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]]);
        assert_eq!(r.to_string(), "1 0 1\n0 1 1\n");
    }

    #[test]
    fn two_lines_in_the_plane() {
        let a = LinRel::span(1, 1, vec![vec![q(1), q(2)]]).unwrap();
        let b = LinRel::span(1, 1, vec![vec![q(1), q(3)]]).unwrap();
        assert_eq!(a.join(&b), LinRel::full(1, 1));
        assert_eq!(a.meet(&b), LinRel::zero(1, 1));
    }

    #[test]
    fn rref_normalizes_spanning_sets() {
        let a = LinRel::span(1, 1, vec![vec![q(2), q(4)], vec![q(-1), q(-2)]]).unwrap();
        assert_eq!(rows(&a), vec![vec![q(1), q(2)]]);
        let b = LinRel::span(1, 1, vec![vec![qf(1, 2), q(1)]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fractions_print_as_ratios() {
        let a = LinRel::span(1, 1, vec![vec![q(2), q(1)]]).unwrap();
        assert_eq!(a.to_string(), "1 1/2\n");
    }

    #[test]
    fn graphs_are_maps() {
        let g = LinRel::graph(&[vec![q(1), q(-1)], vec![q(0), qf(2, 3)]], 2, 2);
        assert!(g.is_map());
        assert!(g.as_linear_map().is_some());
        let h = g.dagger().compose(&lin_structural(LinStructural::Delete(2))).unwrap();
        assert!(h.is_map());
        let not_map = LinRel::span(1, 1, vec![vec![q(0), q(1)]]).unwrap();
        assert!(!not_map.is_map());
        assert!(not_map.as_linear_map().is_none());
    }

    #[test]
    fn dimension_mismatch() {
        let e = scale(2).compose(&LinRel::identity(2));
        assert_eq!(e, Err(LinError::DimensionMismatch(1, 2)));
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let rows_ = vec![vec![q(1), q(2), q(3)], vec![q(0), q(1), q(1)]];
        let ns = nullspace(&rows_, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows_ {
            let dot: Q = r.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn negative_entries_stay_exact() {
        let r = LinRel::span(1, 1, vec![vec![q(3), q(-1)]]).unwrap();
        assert!(r.basis()[0][1].is_negative());
        assert_eq!(r.basis()[0][1], qf(-1, 3));
    }
}
