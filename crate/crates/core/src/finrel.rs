//! Finite relational semantics: instances of an olog in finite sets and relations.
//!
//! Elements of a normalized product are right-nested pairs of the factor
//! elements; elements of a normalized sum are right-nested `Inl`/`Inr`
//! tags over the summands. Carrier order is row-major over factors, the
//! leftmost factor varying slowest, and left-block-first over summands.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

use crate::presentation::{Presentation, TypeError};
use crate::syntax::{Morphism, Name, Object, Signature};

/// Pairs beyond this bound are refused rather than materialized.
pub const MAX_PAIRS: usize = 1 << 24;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Element {
    Atom(Name),
    Star,
    Pair(Box<Element>, Box<Element>),
    Inl(Box<Element>),
    Inr(Box<Element>),
}

impl Element {
    pub fn atom(name: impl Into<Name>) -> Element {
        Element::Atom(name.into())
    }

    pub fn pair(a: Element, b: Element) -> Element {
        Element::Pair(Box::new(a), Box::new(b))
    }

    /// Right-nested tuple; the empty tuple is `Star`.
    pub fn tuple(mut parts: Vec<Element>) -> Element {
        match parts.len() {
            0 => Element::Star,
            1 => parts.pop().unwrap(),
            _ => {
                let last = parts.pop().unwrap();
                parts.into_iter().rev().fold(last, |acc, e| Element::pair(e, acc))
            }
        }
    }

    /// Inverse of [`Element::tuple`] for tuples of length `n`.
    pub fn untuple(&self, n: usize) -> Option<Vec<Element>> {
        match n {
            0 => (*self == Element::Star).then(Vec::new),
            1 => Some(vec![self.clone()]),
            _ => match self {
                Element::Pair(a, b) => {
                    let mut rest = b.untuple(n - 1)?;
                    rest.insert(0, (**a).clone());
                    Some(rest)
                }
                _ => None,
            },
        }
    }

    /// Injection into summand `i` of an `n`-ary sum.
    pub fn inject(i: usize, n: usize, e: Element) -> Element {
        debug_assert!(i < n);
        if n == 1 {
            e
        } else if i == 0 {
            Element::Inl(Box::new(e))
        } else {
            Element::Inr(Box::new(Element::inject(i - 1, n - 1, e)))
        }
    }

    /// Inverse of [`Element::inject`].
    pub fn project(&self, n: usize) -> Option<(usize, Element)> {
        match n {
            0 => None,
            1 => Some((0, self.clone())),
            _ => match self {
                Element::Inl(e) => Some((0, (**e).clone())),
                Element::Inr(e) => e.project(n - 1).map(|(i, x)| (i + 1, x)),
                _ => None,
            },
        }
    }

    /// Joins elements of `x` and `y` into an element of `x ⊗ y`.
    pub fn tensor_join(a: &Element, x: &Object, b: &Element, y: &Object) -> Element {
        let mut parts = a.untuple(x.factors().len()).expect("element of x");
        parts.extend(b.untuple(y.factors().len()).expect("element of y"));
        Element::tuple(parts)
    }

    /// Splits an element of `x ⊗ y`.
    pub fn tensor_split(&self, x: &Object, y: &Object) -> (Element, Element) {
        let nx = x.factors().len();
        let mut parts = self.untuple(nx + y.factors().len()).expect("element of a product");
        let right = parts.split_off(nx);
        (Element::tuple(parts), Element::tuple(right))
    }

    /// Embeds an element of `x` into `x ⊕ y`.
    pub fn sum_left(&self, x: &Object, y: &Object) -> Element {
        let nx = x.summands().len();
        let (i, e) = self.project(nx).expect("element of x");
        Element::inject(i, nx + y.summands().len(), e)
    }

    /// Embeds an element of `y` into `x ⊕ y`.
    pub fn sum_right(&self, x: &Object, y: &Object) -> Element {
        let (nx, ny) = (x.summands().len(), y.summands().len());
        let (i, e) = self.project(ny).expect("element of y");
        Element::inject(nx + i, nx + ny, e)
    }

    /// Splits an element of `x ⊕ y` into `Ok` (from `x`) or `Err` (from `y`).
    pub fn sum_split(&self, x: &Object, y: &Object) -> Result<Element, Element> {
        let (nx, ny) = (x.summands().len(), y.summands().len());
        let (i, e) = self.project(nx + ny).expect("element of a sum");
        if i < nx {
            Ok(Element::inject(i, nx, e))
        } else {
            Err(Element::inject(i - nx, ny, e))
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Atom(n) => f.write_str(&n.quoted()),
            Element::Star => f.write_str("*"),
            Element::Pair(a, b) => {
                write!(f, "({a}")?;
                let mut rest: &Element = b;
                while let Element::Pair(x, y) = rest {
                    write!(f, ", {x}")?;
                    rest = y;
                }
                write!(f, ", {rest})")
            }
            Element::Inl(e) => write!(f, "inl({e})"),
            Element::Inr(e) => write!(f, "inr({e})"),
        }
    }
}

/// A finite relation between two objects, stored as index pairs into
/// their canonical carriers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinRelation {
    pub dom: Object,
    pub cod: Object,
    pub dom_size: usize,
    pub cod_size: usize,
    pub pairs: BTreeSet<(usize, usize)>,
}

impl FinRelation {
    pub fn empty(dom: Object, cod: Object, dom_size: usize, cod_size: usize) -> Self {
        FinRelation { dom, cod, dom_size, cod_size, pairs: BTreeSet::new() }
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.dom.clone(), self.cod.clone())
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn is_subset(&self, other: &FinRelation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn converse(&self) -> FinRelation {
        FinRelation {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            dom_size: self.cod_size,
            cod_size: self.dom_size,
            pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    /// Diagrammatic composite `self ; other`.
    pub fn compose(&self, other: &FinRelation) -> FinRelation {
        let mut next: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(b, c) in &other.pairs {
            next.entry(b).or_default().push(c);
        }
        let mut out = FinRelation::empty(self.dom.clone(), other.cod.clone(), self.dom_size, other.cod_size);
        for &(a, b) in &self.pairs {
            if let Some(cs) = next.get(&b) {
                out.pairs.extend(cs.iter().map(|&c| (a, c)));
            }
        }
        out
    }

    pub fn intersection(&self, other: &FinRelation) -> FinRelation {
        FinRelation { pairs: self.pairs.intersection(&other.pairs).copied().collect(), ..self.clone() }
    }

    pub fn union(&self, other: &FinRelation) -> FinRelation {
        FinRelation { pairs: self.pairs.union(&other.pairs).copied().collect(), ..self.clone() }
    }

    /// Product relation; index arithmetic follows the row-major carrier order.
    pub fn tensor(&self, other: &FinRelation) -> FinRelation {
        let mut out = FinRelation::empty(
            Object::pair(&self.dom, &other.dom),
            Object::pair(&self.cod, &other.cod),
            self.dom_size * other.dom_size,
            self.cod_size * other.cod_size,
        );
        for &(a, b) in &self.pairs {
            for &(c, d) in &other.pairs {
                out.pairs.insert((a * other.dom_size + c, b * other.cod_size + d));
            }
        }
        out
    }

    /// Disjoint-union relation; the left block comes first.
    pub fn direct_sum(&self, other: &FinRelation) -> FinRelation {
        let mut out = FinRelation::empty(
            Object::sum([self.dom.clone(), other.dom.clone()]),
            Object::sum([self.cod.clone(), other.cod.clone()]),
            self.dom_size + other.dom_size,
            self.cod_size + other.cod_size,
        );
        out.pairs.extend(self.pairs.iter().copied());
        out.pairs.extend(other.pairs.iter().map(|&(c, d)| (c + self.dom_size, d + self.cod_size)));
        out
    }

    pub fn classify(&self) -> MapClass {
        let mut out_deg = vec![0usize; self.dom_size];
        let mut in_deg = vec![0usize; self.cod_size];
        for &(a, b) in &self.pairs {
            out_deg[a] += 1;
            in_deg[b] += 1;
        }
        MapClass {
            partial_function: out_deg.iter().all(|&d| d <= 1),
            total: out_deg.iter().all(|&d| d >= 1),
            injective: in_deg.iter().all(|&d| d <= 1),
            surjective: in_deg.iter().all(|&d| d >= 1),
        }
    }
}

/// Which map-like properties a relation has.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct MapClass {
    pub partial_function: bool,
    pub total: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl MapClass {
    pub fn is_function(&self) -> bool {
        self.partial_function && self.total
    }
}

/// Free-standing form of [`FinRelation::classify`].
pub fn classify_map(rel: &FinRelation) -> MapClass {
    rel.classify()
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum EvalError {
    #[error("no relation is given for generator {0:?}")]
    UnboundGenerator(Name),
    #[error("no carrier is given for object {0:?}")]
    UnboundObject(Name),
    #[error("element {element} of relation {relation:?} is not in the carrier of {object}")]
    ForeignElement { relation: Name, element: String, object: Object },
    #[error("relation {relation:?} is not the type of generator: {found}")]
    SignatureMismatch { relation: Name, found: String },
    #[error("sides have different types: {left} and {right}")]
    ParallelMismatch { left: Signature, right: Signature },
    #[error("{0} would be larger than the evaluation limit")]
    TooLarge(String),
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// Finite sets for the object generators and finite relations for the
/// morphism generators.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Instance {
    pub name: Option<Name>,
    pub carriers: IndexMap<Name, IndexSet<Name>>,
    pub relations: IndexMap<Name, BTreeSet<(Element, Element)>>,
}

impl Instance {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_carrier<I, S>(&mut self, object: impl Into<Name>, atoms: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Name>,
    {
        self.carriers.insert(object.into(), atoms.into_iter().map(Into::into).collect());
        self
    }

    pub fn set_relation<I>(&mut self, generator: impl Into<Name>, pairs: I) -> &mut Self
    where
        I: IntoIterator<Item = (Element, Element)>,
    {
        self.relations.insert(generator.into(), pairs.into_iter().collect());
        self
    }

    /// Number of elements of a normalized object.
    pub fn size(&self, obj: &Object) -> Result<usize, EvalError> {
        let too_large = || EvalError::TooLarge(format!("carrier of {obj}"));
        match obj {
            Object::Gen(n) => {
                self.carriers.get(n).map(IndexSet::len).ok_or_else(|| EvalError::UnboundObject(n.clone()))
            }
            Object::Unit => Ok(1),
            Object::Zero => Ok(0),
            Object::Tensor(fs) => {
                fs.iter().try_fold(1usize, |acc, f| acc.checked_mul(self.size(f)?).ok_or_else(too_large))
            }
            Object::Sum(ss) => {
                ss.iter().try_fold(0usize, |acc, s| acc.checked_add(self.size(s)?).ok_or_else(too_large))
            }
        }
    }

    /// Position of `e` in the canonical carrier of `obj`.
    pub fn index_of(&self, obj: &Object, e: &Element) -> Option<usize> {
        match (obj, e) {
            (Object::Gen(n), Element::Atom(a)) => self.carriers.get(n)?.get_index_of(a),
            (Object::Unit, Element::Star) => Some(0),
            (Object::Tensor(fs), _) => {
                let parts = e.untuple(fs.len())?;
                let mut idx = 0usize;
                for (f, p) in fs.iter().zip(&parts) {
                    idx = idx * self.size(f).ok()? + self.index_of(f, p)?;
                }
                Some(idx)
            }
            (Object::Sum(ss), _) => {
                let (i, inner) = e.project(ss.len())?;
                let mut offset = 0;
                for s in &ss[..i] {
                    offset += self.size(s).ok()?;
                }
                Some(offset + self.index_of(&ss[i], &inner)?)
            }
            _ => None,
        }
    }

    /// The element at position `idx` of the canonical carrier of `obj`.
    pub fn element_at(&self, obj: &Object, idx: usize) -> Option<Element> {
        match obj {
            Object::Gen(n) => Some(Element::Atom(self.carriers.get(n)?.get_index(idx)?.clone())),
            Object::Unit => (idx == 0).then_some(Element::Star),
            Object::Zero => None,
            Object::Tensor(fs) => {
                let mut rest = idx;
                let mut parts = Vec::with_capacity(fs.len());
                for f in fs.iter().rev() {
                    let s = self.size(f).ok()?;
                    if s == 0 {
                        return None;
                    }
                    parts.push(self.element_at(f, rest % s)?);
                    rest /= s;
                }
                if rest != 0 {
                    return None;
                }
                parts.reverse();
                Some(Element::tuple(parts))
            }
            Object::Sum(ss) => {
                let mut rest = idx;
                for (i, s) in ss.iter().enumerate() {
                    let n = self.size(s).ok()?;
                    if rest < n {
                        return Some(Element::inject(i, ss.len(), self.element_at(s, rest)?));
                    }
                    rest -= n;
                }
                None
            }
        }
    }

    /// All elements of `obj` in canonical order.
    pub fn elements(&self, obj: &Object) -> Result<Vec<Element>, EvalError> {
        let n = self.size(obj)?;
        Ok((0..n).map(|i| self.element_at(obj, i).expect("index in range")).collect())
    }

    /// Checks that every generator of `pres` has a carrier or relation,
    /// and that every relation stays inside its carriers.
    pub fn check_signatures(&self, pres: &Presentation) -> Result<(), EvalError> {
        for o in &pres.objects {
            if !self.carriers.contains_key(o) {
                return Err(EvalError::UnboundObject(o.clone()));
            }
        }
        for (g, sig) in &pres.generators {
            let pairs = self.relations.get(g).ok_or_else(|| EvalError::UnboundGenerator(g.clone()))?;
            for (a, b) in pairs {
                for (e, obj) in [(a, &sig.dom), (b, &sig.cod)] {
                    if self.index_of(obj, e).is_none() {
                        return Err(EvalError::ForeignElement {
                            relation: g.clone(),
                            element: e.to_string(),
                            object: obj.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The relation of a generator as index pairs.
    pub fn generator_relation(&self, name: &Name, sig: &Signature) -> Result<FinRelation, EvalError> {
        let pairs = self.relations.get(name).ok_or_else(|| EvalError::UnboundGenerator(name.clone()))?;
        let mut rel = FinRelation::empty(sig.dom.clone(), sig.cod.clone(), self.size(&sig.dom)?, self.size(&sig.cod)?);
        for (a, b) in pairs {
            let foreign = |e: &Element, obj: &Object| EvalError::ForeignElement {
                relation: name.clone(),
                element: e.to_string(),
                object: obj.clone(),
            };
            let i = self.index_of(&sig.dom, a).ok_or_else(|| foreign(a, &sig.dom))?;
            let j = self.index_of(&sig.cod, b).ok_or_else(|| foreign(b, &sig.cod))?;
            rel.pairs.insert((i, j));
        }
        Ok(rel)
    }

    /// Element pairs of a relation, in canonical order.
    pub fn pairs_of(&self, rel: &FinRelation) -> Vec<(Element, Element)> {
        rel.pairs
            .iter()
            .map(|&(a, b)| {
                (self.element_at(&rel.dom, a).expect("in carrier"), self.element_at(&rel.cod, b).expect("in carrier"))
            })
            .collect()
    }

    /// `{(a, b), ...}` with elements in canonical order.
    pub fn show(&self, rel: &FinRelation) -> String {
        let body: Vec<String> = self.pairs_of(rel).iter().map(|(a, b)| format!("({a}, {b})")).collect();
        format!("{{{}}}", body.join(", "))
    }
}

/// Evaluates expressions in a fixed instance, caching generator relations.
pub struct Evaluator<'a> {
    pub inst: &'a Instance,
    pub pres: &'a Presentation,
    cache: HashMap<Name, FinRelation>,
}

impl<'a> Evaluator<'a> {
    pub fn new(inst: &'a Instance, pres: &'a Presentation) -> Self {
        Evaluator { inst, pres, cache: HashMap::new() }
    }

    pub fn eval(&mut self, expr: &Morphism) -> Result<FinRelation, EvalError> {
        self.pres.infer_type(expr)?;
        self.go(expr)
    }

    fn size(&self, x: &Object) -> Result<usize, EvalError> {
        self.inst.size(x)
    }

    fn limit(&self, n: usize, what: impl FnOnce() -> String) -> Result<(), EvalError> {
        if n > MAX_PAIRS {
            Err(EvalError::TooLarge(what()))
        } else {
            Ok(())
        }
    }

    /// The graph of an element-level function `dom → cod`.
    fn graph(&self, dom: Object, cod: Object, f: impl Fn(&Element) -> Element) -> Result<FinRelation, EvalError> {
        let (n, m) = (self.size(&dom)?, self.size(&cod)?);
        self.limit(n, || format!("graph over {dom}"))?;
        let mut rel = FinRelation::empty(dom.clone(), cod.clone(), n, m);
        for i in 0..n {
            let e = self.inst.element_at(&dom, i).expect("index in range");
            let j = self.inst.index_of(&cod, &f(&e)).expect("image in carrier");
            rel.pairs.insert((i, j));
        }
        Ok(rel)
    }

    fn go(&mut self, expr: &Morphism) -> Result<FinRelation, EvalError> {
        use Morphism::*;
        let n = |x: &Object| x.normalize();
        match expr {
            Generator(g) => {
                if let Some(r) = self.cache.get(g) {
                    return Ok(r.clone());
                }
                let sig = self.pres.signature(g)?.clone();
                let r = self.inst.generator_relation(g, &sig)?;
                self.cache.insert(g.clone(), r.clone());
                Ok(r)
            }
            Identity(x) => {
                let x = n(x);
                let s = self.size(&x)?;
                self.limit(s, || format!("identity on {x}"))?;
                let mut r = FinRelation::empty(x.clone(), x, s, s);
                r.pairs.extend((0..s).map(|i| (i, i)));
                Ok(r)
            }
            Compose(ps) => {
                let mut acc = self.go(&ps[0])?;
                for p in &ps[1..] {
                    acc = acc.compose(&self.go(p)?);
                }
                Ok(acc)
            }
            Tensor(ps) => {
                let mut acc = self.go(&Identity(Object::Unit))?;
                for p in ps {
                    let r = self.go(p)?;
                    self.limit(acc.pairs.len().saturating_mul(r.pairs.len()), || "product relation".into())?;
                    acc = acc.tensor(&r);
                }
                Ok(acc)
            }
            SumTensor(ps) => {
                let mut acc = FinRelation::empty(Object::Zero, Object::Zero, 0, 0);
                for p in ps {
                    acc = acc.direct_sum(&self.go(p)?);
                }
                Ok(acc)
            }
            Braid(x, y) => {
                let (x, y) = (n(x), n(y));
                self.graph(Object::pair(&x, &y), Object::pair(&y, &x), |e| {
                    let (a, b) = e.tensor_split(&x, &y);
                    Element::tensor_join(&b, &y, &a, &x)
                })
            }
            Copy(x) => {
                let x = n(x);
                self.graph(x.clone(), Object::pair(&x, &x), |e| Element::tensor_join(e, &x, e, &x))
            }
            Merge(x) => Ok(self.go(&Copy(x.clone()))?.converse()),
            Delete(x) => {
                let x = n(x);
                self.graph(x, Object::Unit, |_| Element::Star)
            }
            Create(x) => Ok(self.go(&Delete(x.clone()))?.converse()),
            Dagger(m) => Ok(self.go(m)?.converse()),
            Unit(x) => Ok(self.go(&Counit(x.clone()))?.converse()),
            Counit(x) => {
                let x = n(x);
                let s = self.size(&x)?;
                self.limit(s, || format!("counit on {x}"))?;
                let xx = Object::pair(&x, &x);
                let mut r = FinRelation::empty(xx.clone(), Object::Unit, s * s, 1);
                for i in 0..s {
                    let e = self.inst.element_at(&x, i).expect("in range");
                    let j = self.inst.index_of(&xx, &Element::tensor_join(&e, &x, &e, &x)).expect("in carrier");
                    r.pairs.insert((j, 0));
                }
                Ok(r)
            }
            Meet(a, b) => Ok(self.go(a)?.intersection(&self.go(b)?)),
            Join(a, b) => Ok(self.go(a)?.union(&self.go(b)?)),
            Top(x, y) => {
                let (x, y) = (n(x), n(y));
                let (s, t) = (self.size(&x)?, self.size(&y)?);
                self.limit(s.saturating_mul(t), || format!("top on {x} -> {y}"))?;
                let mut r = FinRelation::empty(x, y, s, t);
                for i in 0..s {
                    r.pairs.extend((0..t).map(|j| (i, j)));
                }
                Ok(r)
            }
            Bottom(x, y) => {
                let (x, y) = (n(x), n(y));
                Ok(FinRelation::empty(x.clone(), y.clone(), self.size(&x)?, self.size(&y)?))
            }
            SumBraid(x, y) => {
                let (x, y) = (n(x), n(y));
                let dom = Object::sum([x.clone(), y.clone()]);
                let cod = Object::sum([y.clone(), x.clone()]);
                self.graph(dom, cod, |e| match e.sum_split(&x, &y) {
                    Ok(a) => a.sum_right(&y, &x),
                    Err(b) => b.sum_left(&y, &x),
                })
            }
            CoMerge(x) => {
                let x = n(x);
                let dom = Object::sum([x.clone(), x.clone()]);
                self.graph(dom, x.clone(), |e| match e.sum_split(&x, &x) {
                    Ok(a) | Err(a) => a,
                })
            }
            CoCopy(x) => Ok(self.go(&CoMerge(x.clone()))?.converse()),
            CoCreate(x) => {
                let x = n(x);
                Ok(FinRelation::empty(Object::Zero, x.clone(), 0, self.size(&x)?))
            }
            CoDelete(x) => Ok(self.go(&CoCreate(x.clone()))?.converse()),
            Distribute(x, y, z) => {
                let (x, y, z) = (n(x), n(y), n(z));
                let (dom, cod) = crate::presentation::distributor(&x, &y, &z);
                let yz = Object::sum([y.clone(), z.clone()]);
                let (xy, xz) = (Object::pair(&x, &y), Object::pair(&x, &z));
                self.graph(dom, cod, |e| {
                    let (a, w) = e.tensor_split(&x, &yz);
                    match w.sum_split(&y, &z) {
                        Ok(b) => Element::tensor_join(&a, &x, &b, &y).sum_left(&xy, &xz),
                        Err(c) => Element::tensor_join(&a, &x, &c, &z).sum_right(&xy, &xz),
                    }
                })
            }
            DistributeInv(x, y, z) => Ok(self.go(&Distribute(x.clone(), y.clone(), z.clone()))?.converse()),
        }
    }
}

/// Evaluates `expr` in `inst`.
pub fn eval(expr: &Morphism, inst: &Instance, pres: &Presentation) -> Result<FinRelation, EvalError> {
    Evaluator::new(inst, pres).eval(expr)
}

/// One failed axiom and the pairs that witness the failure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub axiom: usize,
    pub lhs: Morphism,
    pub rhs: Morphism,
    /// Pairs in the left side but not in the right side, in canonical order.
    pub witnesses: Vec<(Element, Element)>,
}

impl Violation {
    pub fn witness(&self) -> &(Element, Element) {
        &self.witnesses[0]
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every axiom of `pres` in `inst`.
pub fn check_instance(inst: &Instance, pres: &Presentation) -> Result<ViolationReport, EvalError> {
    inst.check_signatures(pres)?;
    let mut ev = Evaluator::new(inst, pres);
    let mut report = ViolationReport::default();
    for (i, ax) in pres.axioms.iter().enumerate() {
        let l = ev.eval(&ax.lhs)?;
        let r = ev.eval(&ax.rhs)?;
        if l.signature() != r.signature() {
            return Err(EvalError::ParallelMismatch { left: l.signature(), right: r.signature() });
        }
        let extra: BTreeSet<(usize, usize)> = l.pairs.difference(&r.pairs).copied().collect();
        if !extra.is_empty() {
            let diff = FinRelation { pairs: extra, ..l };
            report.violations.push(Violation {
                axiom: i,
                lhs: ax.lhs.clone(),
                rhs: ax.rhs.clone(),
                witnesses: inst.pairs_of(&diff),
            });
        }
    }
    Ok(report)
}

/// The first pair of `lhs` missing from `rhs`, if any.
pub fn subsumption_witness(
    inst: &Instance,
    pres: &Presentation,
    lhs: &Morphism,
    rhs: &Morphism,
) -> Result<Option<(Element, Element)>, EvalError> {
    let mut ev = Evaluator::new(inst, pres);
    let l = ev.eval(lhs)?;
    let r = ev.eval(rhs)?;
    if l.signature() != r.signature() {
        return Err(EvalError::ParallelMismatch { left: l.signature(), right: r.signature() });
    }
    Ok(l.pairs.difference(&r.pairs).next().map(|&(a, b)| {
        (inst.element_at(&l.dom, a).expect("in carrier"), inst.element_at(&l.cod, b).expect("in carrier"))
    }))
}

/// Whether `lhs ⇒ rhs` holds in `inst`.
pub fn subsumes(inst: &Instance, pres: &Presentation, lhs: &Morphism, rhs: &Morphism) -> Result<bool, EvalError> {
    subsumption_witness(inst, pres, lhs, rhs).map(|w| w.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Element {
        Element::atom(s)
    }

    fn person() -> Object {
        Object::gen("Person")
    }

    fn fragment() -> (Presentation, Instance) {
        let mut p = Presentation::new();
        p.add_object("Person");
        p.add_generator("friend of", person(), person());
        p.add_generator("knows", person(), person());
        p.add_axiom(Morphism::gen("friend of"), Morphism::gen("knows"));
        let mut i = Instance::new();
        i.set_carrier("Person", ["P1", "P2", "P3", "P4"]);
        i.set_relation("friend of", [(a("P1"), a("P2")), (a("P2"), a("P1"))]);
        i.set_relation("knows", [(a("P1"), a("P2")), (a("P2"), a("P1")), (a("P3"), a("P4")), (a("P4"), a("P3"))]);
        (p, i)
    }

    #[test]
    fn tuple_roundtrip() {
        let t = Element::tuple(vec![a("x"), a("y"), a("z")]);
        assert_eq!(t.to_string(), "(x, y, z)");
        assert_eq!(t.untuple(3).unwrap(), vec![a("x"), a("y"), a("z")]);
        assert_eq!(t.untuple(2).unwrap()[1].to_string(), "(y, z)");
        assert_eq!(Element::tuple(vec![]), Element::Star);
    }

    #[test]
    fn injection_roundtrip() {
        for n in 1..4 {
            for i in 0..n {
                let e = Element::inject(i, n, a("v"));
                assert_eq!(e.project(n), Some((i, a("v"))));
            }
        }
    }

    #[test]
    fn carrier_order_is_row_major() {
        let mut i = Instance::new();
        i.set_carrier("A", ["a0", "a1"]).set_carrier("B", ["b0", "b1", "b2"]);
        let ab = Object::tensor([Object::gen("A"), Object::gen("B")]);
        let els = i.elements(&ab).unwrap();
        assert_eq!(els[1].to_string(), "(a0, b1)");
        assert_eq!(els[3].to_string(), "(a1, b0)");
        for (k, e) in els.iter().enumerate() {
            assert_eq!(i.index_of(&ab, e), Some(k));
        }
        let s = Object::sum([Object::gen("A"), ab.clone()]);
        let els = i.elements(&s).unwrap();
        assert_eq!(els.len(), 8);
        assert_eq!(els[2].to_string(), "inr((a0, b0))");
    }

    #[test]
    fn tensor_arithmetic_matches_elements() {
        // The index arithmetic in FinRelation::tensor must agree with
        // element-level joining.
        let mut i = Instance::new();
        i.set_carrier("A", ["a0", "a1"]).set_carrier("B", ["b0", "b1", "b2"]);
        let (x, y) = (Object::gen("A"), Object::tensor([Object::gen("B"), Object::gen("A")]));
        let xy = Object::pair(&x, &y);
        let ny = i.size(&y).unwrap();
        for p in 0..i.size(&x).unwrap() {
            for q in 0..ny {
                let e = Element::tensor_join(&i.element_at(&x, p).unwrap(), &x, &i.element_at(&y, q).unwrap(), &y);
                assert_eq!(i.index_of(&xy, &e), Some(p * ny + q));
            }
        }
    }

    #[test]
    fn friend_then_knows() {
        let (p, i) = fragment();
        let r = eval(&Morphism::gen("friend of").then(Morphism::gen("knows")), &i, &p).unwrap();
        assert_eq!(i.show(&r), "{(P1, P1), (P2, P2)}");
    }

    #[test]
    fn meet_of_knows_and_friend_is_friend() {
        let (p, i) = fragment();
        let m = eval(&Morphism::gen("knows").meet(Morphism::gen("friend of")), &i, &p).unwrap();
        assert_eq!(m, eval(&Morphism::gen("friend of"), &i, &p).unwrap());
    }

    #[test]
    fn knows_not_below_friend() {
        let (p, i) = fragment();
        let w = subsumption_witness(&i, &p, &Morphism::gen("knows"), &Morphism::gen("friend of")).unwrap();
        assert_eq!(w, Some((a("P3"), a("P4"))));
    }

    #[test]
    fn added_friendship_violates_containment() {
        let (p, mut i) = fragment();
        assert!(check_instance(&i, &p).unwrap().is_empty());
        i.relations.get_mut("friend of").unwrap().insert((a("P3"), a("P1")));
        let rep = check_instance(&i, &p).unwrap();
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].witness(), &(a("P3"), a("P1")));
    }

    #[test]
    fn empty_instance_has_no_violations() {
        let (p, _) = fragment();
        let mut i = Instance::new();
        i.set_carrier("Person", Vec::<&str>::new());
        i.set_relation("friend of", []).set_relation("knows", []);
        assert!(check_instance(&i, &p).unwrap().is_empty());
    }

    #[test]
    fn age_is_an_injective_function() {
        let mut p = Presentation::new();
        p.add_object("Person").add_object("Number");
        p.add_generator("age", person(), Object::gen("Number"));
        let mut i = Instance::new();
        i.set_carrier("Person", ["P1", "P2", "P3", "P4"]);
        i.set_carrier("Number", ["21", "22", "37", "54"]);
        i.set_relation("age", [("P1", "21"), ("P2", "37"), ("P3", "22"), ("P4", "54")].map(|(x, y)| (a(x), a(y))));
        let c = eval(&Morphism::gen("age"), &i, &p).unwrap().classify();
        assert!(c.is_function() && c.injective && c.surjective);
    }

    #[test]
    fn unbound_generator() {
        let (p, mut i) = fragment();
        i.relations.shift_remove("knows");
        assert_eq!(eval(&Morphism::gen("knows"), &i, &p), Err(EvalError::UnboundGenerator(Name::from("knows"))));
    }
}
