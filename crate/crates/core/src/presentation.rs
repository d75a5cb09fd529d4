//! Olog presentations and type inference.

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

use crate::syntax::{Morphism, Name, Object, Signature};

/// A subsumption axiom `lhs ⇒ rhs`. Equalities are stored as two axioms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Axiom {
    pub lhs: Morphism,
    pub rhs: Morphism,
}

impl Axiom {
    pub fn new(lhs: Morphism, rhs: Morphism) -> Self {
        Axiom { lhs, rhs }
    }
}

/// Generators and axioms of a relational olog.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Presentation {
    pub name: Option<Name>,
    /// Whether the distributive extension (cotensor, unions, distributors) is enabled.
    pub distributive: bool,
    pub objects: IndexSet<Name>,
    pub generators: IndexMap<Name, Signature>,
    pub axioms: Vec<Axiom>,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum TypeError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(Name),
    #[error("unknown object generator {0:?}")]
    UnknownObject(Name),
    #[error("composition mismatch at position {position}: expected {expected}, found {found}")]
    CompositionMismatch { position: usize, expected: Object, found: Object },
    #[error("distributive syntax in a non-distributive presentation")]
    DistributiveSyntaxInNonDistributivePresentation,
    #[error("{constructor} needs parallel arguments, got {left} and {right}")]
    ParallelMismatch { constructor: &'static str, left: Signature, right: Signature },
    #[error("empty composite")]
    EmptyComposite,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum PresentationError {
    #[error("generator {name:?}: {source}")]
    BadGenerator { name: Name, source: TypeError },
    #[error("axiom {index}: {source}")]
    IllTyped { index: usize, source: TypeError },
    #[error("axiom {index}: sides have types {lhs} and {rhs}")]
    AxiomMismatch { index: usize, lhs: Signature, rhs: Signature },
    #[error("{0:?} is declared both as an object and as a morphism generator")]
    NameClash(Name),
}

impl Presentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, name: impl Into<Name>) -> &mut Self {
        self.objects.insert(name.into());
        self
    }

    pub fn add_generator(&mut self, name: impl Into<Name>, dom: Object, cod: Object) -> &mut Self {
        self.generators.insert(name.into(), Signature::new(dom.normalize(), cod.normalize()));
        self
    }

    pub fn add_axiom(&mut self, lhs: Morphism, rhs: Morphism) -> &mut Self {
        self.axioms.push(Axiom::new(lhs, rhs));
        self
    }

    pub fn add_equation(&mut self, lhs: Morphism, rhs: Morphism) -> &mut Self {
        self.axioms.push(Axiom::new(lhs.clone(), rhs.clone()));
        self.axioms.push(Axiom::new(rhs, lhs));
        self
    }

    pub fn signature(&self, name: &Name) -> Result<&Signature, TypeError> {
        self.generators.get(name).ok_or_else(|| TypeError::UnknownGenerator(name.clone()))
    }

    /// Checks that an object only mentions declared generators and,
    /// outside distributive mode, no sums.
    pub fn check_object(&self, obj: &Object) -> Result<Object, TypeError> {
        if obj.uses_sums() && !self.distributive {
            return Err(TypeError::DistributiveSyntaxInNonDistributivePresentation);
        }
        let mut names = Vec::new();
        obj.generators(&mut names);
        if let Some(n) = names.into_iter().find(|n| !self.objects.contains(n)) {
            return Err(TypeError::UnknownObject(n));
        }
        Ok(obj.normalize())
    }

    /// The type of `expr`, or the first reason it has none.
    pub fn infer_type(&self, expr: &Morphism) -> Result<Signature, TypeError> {
        use Morphism::*;
        if expr.is_distributive_node() && !self.distributive {
            return Err(TypeError::DistributiveSyntaxInNonDistributivePresentation);
        }
        let o = |x: &Object| self.check_object(x);
        let sig = |d: Object, c: Object| Ok(Signature::new(d, c));
        match expr {
            Generator(n) => self.signature(n).cloned(),
            Identity(x) => {
                let x = o(x)?;
                sig(x.clone(), x)
            }
            Compose(parts) => {
                let mut iter = parts.iter();
                let first = iter.next().ok_or(TypeError::EmptyComposite)?;
                let Signature { dom, mut cod } = self.infer_type(first)?;
                for (i, p) in iter.enumerate() {
                    let s = self.infer_type(p)?;
                    if s.dom != cod {
                        return Err(TypeError::CompositionMismatch { position: i + 1, expected: cod, found: s.dom });
                    }
                    cod = s.cod;
                }
                sig(dom, cod)
            }
            Tensor(parts) => {
                let sigs = parts.iter().map(|p| self.infer_type(p)).collect::<Result<Vec<_>, _>>()?;
                sig(
                    Object::tensor(sigs.iter().map(|s| s.dom.clone())),
                    Object::tensor(sigs.iter().map(|s| s.cod.clone())),
                )
            }
            SumTensor(parts) => {
                let sigs = parts.iter().map(|p| self.infer_type(p)).collect::<Result<Vec<_>, _>>()?;
                sig(Object::sum(sigs.iter().map(|s| s.dom.clone())), Object::sum(sigs.iter().map(|s| s.cod.clone())))
            }
            Braid(x, y) => {
                let (x, y) = (o(x)?, o(y)?);
                sig(Object::pair(&x, &y), Object::pair(&y, &x))
            }
            SumBraid(x, y) => {
                let (x, y) = (o(x)?, o(y)?);
                sig(Object::sum([x.clone(), y.clone()]), Object::sum([y, x]))
            }
            Copy(x) => {
                let x = o(x)?;
                sig(x.clone(), Object::pair(&x, &x))
            }
            Merge(x) => {
                let x = o(x)?;
                sig(Object::pair(&x, &x), x)
            }
            Delete(x) => sig(o(x)?, Object::Unit),
            Create(x) => sig(Object::Unit, o(x)?),
            Unit(x) => {
                let x = o(x)?;
                sig(Object::Unit, Object::pair(&x, &x))
            }
            Counit(x) => {
                let x = o(x)?;
                sig(Object::pair(&x, &x), Object::Unit)
            }
            Top(x, y) | Bottom(x, y) => sig(o(x)?, o(y)?),
            Dagger(m) => self.infer_type(m).map(|s| s.flip()),
            Meet(a, b) | Join(a, b) => {
                let (l, r) = (self.infer_type(a)?, self.infer_type(b)?);
                if l != r {
                    let constructor = if matches!(expr, Meet(..)) { "meet" } else { "join" };
                    return Err(TypeError::ParallelMismatch { constructor, left: l, right: r });
                }
                Ok(l)
            }
            CoMerge(x) => {
                let x = o(x)?;
                sig(Object::sum([x.clone(), x.clone()]), x)
            }
            CoCopy(x) => {
                let x = o(x)?;
                sig(x.clone(), Object::sum([x.clone(), x]))
            }
            CoCreate(x) => sig(Object::Zero, o(x)?),
            CoDelete(x) => sig(o(x)?, Object::Zero),
            Distribute(x, y, z) => {
                let (d, c) = distributor(&o(x)?, &o(y)?, &o(z)?);
                sig(d, c)
            }
            DistributeInv(x, y, z) => {
                let (d, c) = distributor(&o(x)?, &o(y)?, &o(z)?);
                sig(c, d)
            }
        }
    }

    /// Checks generator signatures and that both sides of every axiom
    /// have the same type.
    pub fn validate(&self) -> Result<(), PresentationError> {
        for (name, s) in &self.generators {
            if self.objects.contains(name) {
                return Err(PresentationError::NameClash(name.clone()));
            }
            for x in [&s.dom, &s.cod] {
                self.check_object(x)
                    .map_err(|source| PresentationError::BadGenerator { name: name.clone(), source })?;
            }
        }
        for (index, ax) in self.axioms.iter().enumerate() {
            let err = |source| PresentationError::IllTyped { index, source };
            let l = self.infer_type(&ax.lhs).map_err(err)?;
            let r = self.infer_type(&ax.rhs).map_err(err)?;
            if l != r {
                return Err(PresentationError::AxiomMismatch { index, lhs: l, rhs: r });
            }
        }
        Ok(())
    }
}

/// Domain and codomain of the distributor `X⊗(Y⊕Z) → (X⊗Y)⊕(X⊗Z)`.
pub fn distributor(x: &Object, y: &Object, z: &Object) -> (Object, Object) {
    let dom = Object::tensor([x.clone(), Object::sum([y.clone(), z.clone()])]);
    let cod = Object::sum([Object::pair(x, y), Object::pair(x, z)]);
    (dom, cod)
}

/// Free-standing form of [`Presentation::infer_type`].
pub fn infer_type(expr: &Morphism, pres: &Presentation) -> Result<Signature, TypeError> {
    pres.infer_type(expr)
}

/// Free-standing form of [`Presentation::validate`].
pub fn validate_presentation(pres: &Presentation) -> Result<(), PresentationError> {
    pres.validate()
}
