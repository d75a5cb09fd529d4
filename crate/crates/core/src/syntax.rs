//! Object and morphism expressions of a relational olog.
//!
//! Objects are kept in strict normal form by the smart constructors
//! [`Object::tensor`] and [`Object::sum`]: products and sums are flat,
//! have at least two parts, and never contain their own unit.

use std::borrow::Borrow;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// An interned identifier for object generators, morphism generators,
/// logic symbols and variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: impl AsRef<str>) -> Self {
        Name(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True when the name can be written without quotes.
    pub fn is_bare(&self) -> bool {
        !self.0.is_empty() && self.0.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && !is_reserved(&self.0)
    }

    /// The name as it appears in source text, quoted when necessary.
    pub fn quoted(&self) -> String {
        if self.is_bare() {
            self.0.to_string()
        } else {
            let escaped = self.0.replace('\\', "\\\\").replace('"', "\\\"");
            format!("\"{escaped}\"")
        }
    }
}

/// Words with a fixed meaning in the text formats. Names spelled like
/// these must be quoted.
pub const RESERVED: &[&str] = &[
    "I",
    "O",
    "olog",
    "type",
    "rel",
    "fn",
    "axiom",
    "distributive",
    "theory",
    "mode",
    "regular",
    "coherent",
    "instance",
    "linear",
    "dim",
    "span",
    "compose",
    "tensor",
    "sum",
    "id",
    "braid",
    "sbraid",
    "copy",
    "delete",
    "merge",
    "create",
    "dagger",
    "unit",
    "counit",
    "meet",
    "top",
    "join",
    "bottom",
    "comerge",
    "cocreate",
    "cocopy",
    "codelete",
    "dist",
    "distinv",
    "true",
    "false",
    "exists",
    "case",
    "inl",
    "inr",
    "pi1",
    "pi2",
    "proof",
    "by",
    "map",
    "olog_file",
];

pub fn is_reserved(s: &str) -> bool {
    RESERVED.contains(&s)
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

impl From<String> for Name {
    fn from(s: String) -> Self {
        Name(Arc::from(s))
    }
}

impl Borrow<str> for Name {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl Serialize for Name {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Name {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d).map(Name::from)
    }
}

/// An object expression: a type of the olog.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Object {
    Gen(Name),
    /// Monoidal product of at least two factors, none of them `Unit` or `Tensor`.
    Tensor(Vec<Object>),
    Unit,
    /// Cotensor (disjoint union) of at least two summands, none of them `Zero` or `Sum`.
    Sum(Vec<Object>),
    Zero,
}

impl Object {
    pub fn gen(name: impl Into<Name>) -> Object {
        Object::Gen(name.into())
    }

    /// Normalizing product.
    pub fn tensor(parts: impl IntoIterator<Item = Object>) -> Object {
        let mut flat = Vec::new();
        for p in parts {
            match p.normalize() {
                Object::Unit => {}
                Object::Tensor(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Object::Unit,
            1 => flat.pop().unwrap(),
            _ => Object::Tensor(flat),
        }
    }

    /// Normalizing cotensor.
    pub fn sum(parts: impl IntoIterator<Item = Object>) -> Object {
        let mut flat = Vec::new();
        for p in parts {
            match p.normalize() {
                Object::Zero => {}
                Object::Sum(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Object::Zero,
            1 => flat.pop().unwrap(),
            _ => Object::Sum(flat),
        }
    }

    pub fn pair(a: &Object, b: &Object) -> Object {
        Object::tensor([a.clone(), b.clone()])
    }

    pub fn normalize(&self) -> Object {
        match self {
            Object::Tensor(ps) => Object::tensor(ps.iter().cloned()),
            Object::Sum(ps) => Object::sum(ps.iter().cloned()),
            other => other.clone(),
        }
    }

    pub fn is_normal(&self) -> bool {
        *self == self.normalize()
    }

    /// Factors of a normalized object; `Unit` has none.
    pub fn factors(&self) -> Vec<Object> {
        match self {
            Object::Unit => Vec::new(),
            Object::Tensor(ps) => ps.clone(),
            other => vec![other.clone()],
        }
    }

    /// Summands of a normalized object; `Zero` has none.
    pub fn summands(&self) -> Vec<Object> {
        match self {
            Object::Zero => Vec::new(),
            Object::Sum(ps) => ps.clone(),
            other => vec![other.clone()],
        }
    }

    /// Whether the expression mentions `Sum` or `Zero`.
    pub fn uses_sums(&self) -> bool {
        match self {
            Object::Sum(_) | Object::Zero => true,
            Object::Tensor(ps) => ps.iter().any(Object::uses_sums),
            _ => false,
        }
    }

    pub fn generators(&self, out: &mut Vec<Name>) {
        match self {
            Object::Gen(n) => {
                if !out.contains(n) {
                    out.push(n.clone())
                }
            }
            Object::Tensor(ps) | Object::Sum(ps) => ps.iter().for_each(|p| p.generators(out)),
            Object::Unit | Object::Zero => {}
        }
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Gen(n) => f.write_str(&n.quoted()),
            Object::Unit => f.write_str("I"),
            Object::Zero => f.write_str("O"),
            Object::Tensor(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    match p {
                        Object::Sum(_) | Object::Tensor(_) => write!(f, "({p})")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
            Object::Sum(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    match p {
                        Object::Sum(_) | Object::Tensor(_) => write!(f, "({p})")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// A morphism expression: a string diagram written as a term.
///
/// The first block of variants is the core syntax of a relational olog,
/// the second block holds the derived constructors, the third block is
/// the distributive extension. Derived constructors expand into core
/// ones under [`crate::rewrite::desugar`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Morphism {
    Generator(Name),
    Identity(Object),
    Compose(Vec<Morphism>),
    Tensor(Vec<Morphism>),
    Braid(Object, Object),
    Copy(Object),
    Delete(Object),
    Merge(Object),
    Create(Object),

    Dagger(Box<Morphism>),
    Unit(Object),
    Counit(Object),
    Meet(Box<Morphism>, Box<Morphism>),
    Top(Object, Object),

    SumTensor(Vec<Morphism>),
    SumBraid(Object, Object),
    CoMerge(Object),
    CoCreate(Object),
    CoCopy(Object),
    CoDelete(Object),
    Join(Box<Morphism>, Box<Morphism>),
    Bottom(Object, Object),
    Distribute(Object, Object, Object),
    DistributeInv(Object, Object, Object),
}

impl Morphism {
    pub fn gen(name: impl Into<Name>) -> Morphism {
        Morphism::Generator(name.into())
    }

    pub fn then(self, next: Morphism) -> Morphism {
        Morphism::Compose(vec![self, next])
    }

    pub fn dagger(self) -> Morphism {
        Morphism::Dagger(Box::new(self))
    }

    pub fn meet(self, other: Morphism) -> Morphism {
        Morphism::Meet(Box::new(self), Box::new(other))
    }

    pub fn join(self, other: Morphism) -> Morphism {
        Morphism::Join(Box::new(self), Box::new(other))
    }

    pub fn tensor(parts: impl IntoIterator<Item = Morphism>) -> Morphism {
        Morphism::Tensor(parts.into_iter().collect())
    }

    pub fn compose(parts: impl IntoIterator<Item = Morphism>) -> Morphism {
        Morphism::Compose(parts.into_iter().collect())
    }

    /// Whether this node belongs to the distributive extension.
    pub fn is_distributive_node(&self) -> bool {
        matches!(
            self,
            Morphism::SumTensor(_)
                | Morphism::SumBraid(..)
                | Morphism::CoMerge(_)
                | Morphism::CoCreate(_)
                | Morphism::CoCopy(_)
                | Morphism::CoDelete(_)
                | Morphism::Join(..)
                | Morphism::Bottom(..)
                | Morphism::Distribute(..)
                | Morphism::DistributeInv(..)
        )
    }

    /// Whether this node is a derived constructor.
    pub fn is_derived_node(&self) -> bool {
        matches!(
            self,
            Morphism::Dagger(_)
                | Morphism::Unit(_)
                | Morphism::Counit(_)
                | Morphism::Meet(..)
                | Morphism::Top(..)
                | Morphism::Join(..)
                | Morphism::Bottom(..)
        )
    }

    pub fn children(&self) -> Vec<&Morphism> {
        match self {
            Morphism::Compose(ps) | Morphism::Tensor(ps) | Morphism::SumTensor(ps) => ps.iter().collect(),
            Morphism::Dagger(m) => vec![m],
            Morphism::Meet(a, b) | Morphism::Join(a, b) => vec![a, b],
            _ => Vec::new(),
        }
    }

    /// Objects mentioned directly by this node (not by its children).
    pub fn objects(&self) -> Vec<&Object> {
        use Morphism::*;
        match self {
            Identity(x) | Copy(x) | Delete(x) | Merge(x) | Create(x) | Unit(x) | Counit(x) | CoMerge(x)
            | CoCreate(x) | CoCopy(x) | CoDelete(x) => vec![x],
            Braid(x, y) | Top(x, y) | SumBraid(x, y) | Bottom(x, y) => vec![x, y],
            Distribute(x, y, z) | DistributeInv(x, y, z) => vec![x, y, z],
            _ => Vec::new(),
        }
    }

    /// True when the expression or any of its objects needs the
    /// distributive extension.
    pub fn uses_distributive_syntax(&self) -> bool {
        self.is_distributive_node()
            || self.objects().iter().any(|o| o.uses_sums())
            || self.children().iter().any(|c| c.uses_distributive_syntax())
    }

    /// Generator names in order of first occurrence.
    pub fn generators(&self) -> Vec<Name> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators(&self, out: &mut Vec<Name>) {
        if let Morphism::Generator(n) = self {
            if !out.contains(n) {
                out.push(n.clone());
            }
        }
        for c in self.children() {
            c.collect_generators(out);
        }
    }

    /// Number of nodes in the expression tree.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }
}

/// Type of a morphism.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Signature {
    pub dom: Object,
    pub cod: Object,
}

impl Signature {
    pub fn new(dom: Object, cod: Object) -> Self {
        Signature { dom, cod }
    }

    pub fn flip(&self) -> Signature {
        Signature::new(self.cod.clone(), self.dom.clone())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.dom, self.cod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Object {
        Object::gen(s)
    }

    #[test]
    fn tensor_flattens_and_drops_unit() {
        let nested = Object::tensor([g("A"), Object::Tensor(vec![g("B"), Object::Unit, g("C")])]);
        assert_eq!(nested, Object::Tensor(vec![g("A"), g("B"), g("C")]));
        assert_eq!(Object::tensor([Object::Unit, g("A")]), g("A"));
        assert_eq!(Object::tensor([]), Object::Unit);
    }

    #[test]
    fn sum_flattens_and_drops_zero() {
        let s = Object::sum([Object::Zero, Object::sum([g("A"), g("B")]), g("C")]);
        assert_eq!(s, Object::Sum(vec![g("A"), g("B"), g("C")]));
        assert_eq!(Object::sum([Object::Zero]), Object::Zero);
    }

    #[test]
    fn sum_inside_tensor_is_one_factor() {
        let t = Object::tensor([g("A"), Object::sum([g("B"), g("C")])]);
        assert_eq!(t.factors().len(), 2);
        assert!(t.uses_sums());
    }

    #[test]
    fn names_quote_when_needed() {
        assert_eq!(Name::from("knows").quoted(), "knows");
        assert_eq!(Name::from("friend of").quoted(), "\"friend of\"");
        assert_eq!(Name::from("I").quoted(), "\"I\"");
        assert_eq!(Name::from("21").quoted(), "21");
        assert_eq!(Name::from("30,000").quoted(), "\"30,000\"");
    }

    #[test]
    fn object_display() {
        let t = Object::tensor([g("Person"), Object::sum([g("A"), g("B")])]);
        assert_eq!(t.to_string(), "Person * (A + B)");
    }
}
