//! Desugaring of derived constructors and strict normalization.

use crate::presentation::{Presentation, TypeError};
use crate::syntax::{Morphism, Object};

/// `η_X = □_X · Δ_X : I → X⊗X`.
pub fn unit_core(x: &Object) -> Morphism {
    Morphism::compose([Morphism::Create(x.clone()), Morphism::Copy(x.clone())])
}

/// `ε_X = ∇_X · ◊_X : X⊗X → I`.
pub fn counit_core(x: &Object) -> Morphism {
    Morphism::compose([Morphism::Merge(x.clone()), Morphism::Delete(x.clone())])
}

/// Expands every derived constructor into core (or distributive-core)
/// syntax. The result contains no `Dagger`, `Unit`, `Counit`, `Meet`,
/// `Top`, `Join` or `Bottom` node, so the function is idempotent.
pub fn desugar(expr: &Morphism, pres: &Presentation) -> Result<Morphism, TypeError> {
    use Morphism::*;
    Ok(match expr {
        Compose(ps) => Compose(desugar_all(ps, pres)?),
        Tensor(ps) => Tensor(desugar_all(ps, pres)?),
        SumTensor(ps) => SumTensor(desugar_all(ps, pres)?),
        Unit(x) => unit_core(x),
        Counit(x) => counit_core(x),
        Top(x, y) => Morphism::compose([Delete(x.clone()), Create(y.clone())]),
        Bottom(x, y) => Morphism::compose([CoDelete(x.clone()), CoCreate(y.clone())]),
        Meet(a, b) => {
            let s = pres.infer_type(a)?;
            pres.infer_type(expr)?;
            Morphism::compose([Copy(s.dom), Morphism::tensor([desugar(a, pres)?, desugar(b, pres)?]), Merge(s.cod)])
        }
        Join(a, b) => {
            let s = pres.infer_type(a)?;
            pres.infer_type(expr)?;
            Morphism::compose([CoCopy(s.dom), SumTensor(vec![desugar(a, pres)?, desugar(b, pres)?]), CoMerge(s.cod)])
        }
        Dagger(r) => {
            let s = pres.infer_type(r)?;
            let (x, y) = (s.dom, s.cod);
            // (η_X ⊗ 1_Y)(1_X ⊗ R ⊗ 1_Y)(1_X ⊗ ε_Y)
            Morphism::compose([
                Morphism::tensor([unit_core(&x), Identity(y.clone())]),
                Morphism::tensor([Identity(x.clone()), desugar(r, pres)?, Identity(y.clone())]),
                Morphism::tensor([Identity(x), counit_core(&y)]),
            ])
        }
        other => other.clone(),
    })
}

fn desugar_all(ps: &[Morphism], pres: &Presentation) -> Result<Vec<Morphism>, TypeError> {
    ps.iter().map(|p| desugar(p, pres)).collect()
}

/// Strict normalization: flattens nested `Compose`, `Tensor` and
/// `SumTensor`, drops identities from composites, drops `Identity(I)`
/// from products and `Identity(O)` from cotensors, merges products of
/// identities, and normalizes every object. Idempotent; preserves types
/// and semantics.
pub fn normalize_strict(expr: &Morphism, pres: &Presentation) -> Result<Morphism, TypeError> {
    pres.infer_type(expr)?;
    Ok(normalize_typed(expr, pres))
}

fn normalize_typed(expr: &Morphism, pres: &Presentation) -> Morphism {
    use Morphism::*;
    let n = |x: &Object| x.normalize();
    match expr {
        Compose(ps) => {
            let mut flat = Vec::new();
            for p in ps {
                match normalize_typed(p, pres) {
                    Compose(inner) => flat.extend(inner),
                    Identity(_) => {}
                    other => flat.push(other),
                }
            }
            match flat.len() {
                0 => {
                    let dom = pres.infer_type(expr).expect("typed").dom;
                    Identity(dom)
                }
                1 => flat.pop().unwrap(),
                _ => Compose(flat),
            }
        }
        Tensor(ps) => flatten_monoidal(ps, pres, true),
        SumTensor(ps) => flatten_monoidal(ps, pres, false),
        Dagger(m) => Dagger(Box::new(normalize_typed(m, pres))),
        Meet(a, b) => Meet(Box::new(normalize_typed(a, pres)), Box::new(normalize_typed(b, pres))),
        Join(a, b) => Join(Box::new(normalize_typed(a, pres)), Box::new(normalize_typed(b, pres))),
        Generator(g) => Generator(g.clone()),
        Identity(x) => Identity(n(x)),
        Braid(x, y) => Braid(n(x), n(y)),
        Copy(x) => Copy(n(x)),
        Delete(x) => Delete(n(x)),
        Merge(x) => Merge(n(x)),
        Create(x) => Create(n(x)),
        Unit(x) => Unit(n(x)),
        Counit(x) => Counit(n(x)),
        Top(x, y) => Top(n(x), n(y)),
        SumBraid(x, y) => SumBraid(n(x), n(y)),
        CoMerge(x) => CoMerge(n(x)),
        CoCreate(x) => CoCreate(n(x)),
        CoCopy(x) => CoCopy(n(x)),
        CoDelete(x) => CoDelete(n(x)),
        Bottom(x, y) => Bottom(n(x), n(y)),
        Distribute(x, y, z) => Distribute(n(x), n(y), n(z)),
        DistributeInv(x, y, z) => DistributeInv(n(x), n(y), n(z)),
    }
}

fn flatten_monoidal(ps: &[Morphism], pres: &Presentation, tensor: bool) -> Morphism {
    let unit = if tensor { Object::Unit } else { Object::Zero };
    let mut flat = Vec::new();
    for p in ps {
        match normalize_typed(p, pres) {
            Morphism::Tensor(inner) if tensor => flat.extend(inner),
            Morphism::SumTensor(inner) if !tensor => flat.extend(inner),
            Morphism::Identity(x) if x == unit => {}
            other => flat.push(other),
        }
    }
    let all_identities = flat.iter().all(|m| matches!(m, Morphism::Identity(_)));
    if all_identities {
        let objs = flat.into_iter().map(|m| match m {
            Morphism::Identity(x) => x,
            _ => unreachable!(),
        });
        let obj = if tensor { Object::tensor(objs) } else { Object::sum(objs) };
        return Morphism::Identity(obj);
    }
    if flat.len() == 1 {
        return flat.pop().unwrap();
    }
    if tensor {
        Morphism::Tensor(flat)
    } else {
        Morphism::SumTensor(flat)
    }
}
