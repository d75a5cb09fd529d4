//! Translation of morphism expressions into formulas.
//!
//! Regular mode uses one variable per generator factor of the domain
//! and codomain. Coherent mode uses a single variable on each side,
//! typed by the product and sum structure of the object.

use thiserror::Error;

use super::interpret::SignatureMap;
use super::syntax::{Context, Formula, LogicType, Mode, Term, Theory};
use crate::presentation::{Presentation, TypeError};
use crate::syntax::{Morphism, Name, Object};

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum TranslateError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("regular translation does not support {0}")]
    NotRegular(String),
}

/// The logic type standing for an object.
pub fn object_type(o: &Object) -> LogicType {
    fn nest(parts: Vec<LogicType>, unit: LogicType, f: fn(LogicType, LogicType) -> LogicType) -> LogicType {
        parts.into_iter().rev().reduce(|acc, t| f(t, acc)).unwrap_or(unit)
    }
    match o {
        Object::Gen(n) => LogicType::Basic(n.clone()),
        Object::Unit => LogicType::One,
        Object::Zero => LogicType::Zero,
        Object::Tensor(fs) => nest(fs.iter().map(object_type).collect(), LogicType::One, LogicType::prod),
        Object::Sum(ss) => nest(ss.iter().map(object_type).collect(), LogicType::Zero, LogicType::sum),
    }
}

/// The theory whose symbols are the generators of `pres`, with the
/// signature map sending each symbol to its generator.
pub fn theory_of(pres: &Presentation, mode: Mode) -> Result<(Theory, SignatureMap), TranslateError> {
    let mut thy = Theory::new(mode);
    thy.name = pres.name.clone();
    let mut sig = SignatureMap::new(pres, mode);
    for t in &pres.objects {
        thy.types.insert(t.clone());
        sig.types.insert(t.clone(), Object::Gen(t.clone()));
    }
    for (r, s) in &pres.generators {
        let (args, k) = match mode {
            Mode::Regular => {
                let basic = |o: &Object| -> Result<Vec<LogicType>, TranslateError> {
                    o.factors()
                        .iter()
                        .map(|f| match f {
                            Object::Gen(n) => Ok(LogicType::Basic(n.clone())),
                            other => Err(TranslateError::NotRegular(format!("the object {other}"))),
                        })
                        .collect()
                };
                let d = basic(&s.dom)?;
                let k = d.len();
                let mut args = d;
                args.extend(basic(&s.cod)?);
                (args, k)
            }
            Mode::Coherent => (vec![object_type(&s.dom), object_type(&s.cod)], 1),
        };
        thy.relations.insert(r.clone(), args);
        sig.relations.insert(r.clone(), (Morphism::Generator(r.clone()), k));
    }
    Ok((thy, sig))
}

/// `(Γ; Γ' | φ)` with `⟦Γ; Γ' ⊢ φ⟧` equal to `expr` in every model.
pub fn translate_to_logic(
    expr: &Morphism,
    pres: &Presentation,
    mode: Mode,
) -> Result<(Context, Formula), TranslateError> {
    let mut pres = pres.clone();
    if mode == Mode::Coherent {
        pres.distributive = true;
    }
    let s = pres.infer_type(expr)?;
    let mut tr = Translator { pres: &pres, next: 0 };
    match mode {
        Mode::Regular => {
            let xs = tr.fresh_factors(&s.dom)?;
            let ys = tr.fresh_factors(&s.cod)?;
            let phi = tr.regular(expr, &xs, &ys)?;
            Ok((Context::split(xs, ys), phi))
        }
        Mode::Coherent => {
            let x = tr.fresh();
            let y = tr.fresh();
            let phi = tr.coherent(expr, &Term::Var(x.clone()), &Term::Var(y.clone()))?;
            Ok((Context::split(vec![(x, object_type(&s.dom))], vec![(y, object_type(&s.cod))]), phi))
        }
    }
}

type Vars = Vec<(Name, LogicType)>;

struct Translator<'a> {
    pres: &'a Presentation,
    next: usize,
}

fn eqs(xs: &[(Name, LogicType)], ys: &[(Name, LogicType)]) -> Formula {
    Formula::conj(xs.iter().zip(ys).map(|((x, _), (y, _))| Formula::eq(Term::Var(x.clone()), Term::Var(y.clone()))))
}

/// Equality, or truth on the unit object.
fn eq_at(a: Term, b: Term, o: &Object) -> Formula {
    if *o == Object::Unit {
        Formula::Truth
    } else {
        Formula::eq(a, b)
    }
}

/// Components of `t : T(o)`, one per factor of `o`.
fn factor_terms(t: &Term, o: &Object) -> Vec<Term> {
    let n = o.factors().len();
    let mut out = Vec::new();
    let mut cur = t.clone();
    for i in 0..n {
        if i + 1 == n {
            out.push(cur.clone());
        } else {
            out.push(Term::proj1(cur.clone()));
            cur = Term::proj2(cur);
        }
    }
    out
}

fn tuple_terms(mut ts: Vec<Term>) -> Term {
    match ts.len() {
        0 => Term::Star,
        1 => ts.pop().unwrap(),
        _ => {
            let first = ts.remove(0);
            Term::pair(first, tuple_terms(ts))
        }
    }
}

/// `t : T(o₁ ⊗ … ⊗ oₙ)` split into terms of type `T(oᵢ)`.
fn split_tensor(t: &Term, parts: &[Object]) -> Vec<Term> {
    let whole = Object::tensor(parts.iter().cloned());
    let mut comps = factor_terms(t, &whole).into_iter();
    parts.iter().map(|p| tuple_terms(comps.by_ref().take(p.factors().len()).collect())).collect()
}

/// Terms of type `T(oᵢ)` joined into a term of type `T(o₁ ⊗ … ⊗ oₙ)`.
fn join_tensor(parts: &[(Term, Object)]) -> Term {
    tuple_terms(parts.iter().flat_map(|(t, o)| factor_terms(t, o)).collect())
}

impl<'a> Translator<'a> {
    fn fresh(&mut self) -> Name {
        let n = Name::new(format!("x{}", self.next));
        self.next += 1;
        n
    }

    fn fresh_factors(&mut self, o: &Object) -> Result<Vars, TranslateError> {
        o.factors()
            .into_iter()
            .map(|f| match f {
                Object::Gen(n) => Ok((self.fresh(), LogicType::Basic(n))),
                other => Err(TranslateError::NotRegular(format!("the object {other}"))),
            })
            .collect()
    }

    fn regular(
        &mut self,
        e: &Morphism,
        xs: &[(Name, LogicType)],
        ys: &[(Name, LogicType)],
    ) -> Result<Formula, TranslateError> {
        use Morphism as M;
        let count = |o: &Object| o.factors().len();
        Ok(match e {
            M::Generator(r) => {
                Formula::rel(r.clone(), xs.iter().chain(ys).map(|(x, _)| Term::Var(x.clone())).collect())
            }
            M::Identity(_) => eqs(xs, ys),
            M::Compose(ps) => match ps.as_slice() {
                [] => return Err(TypeError::EmptyComposite.into()),
                [only] => self.regular(only, xs, ys)?,
                [first, rest @ ..] => {
                    let mid = self.pres.infer_type(first)?.cod;
                    let zs = self.fresh_factors(&mid)?;
                    let l = self.regular(first, xs, &zs)?;
                    let r = self.regular(&M::Compose(rest.to_vec()), &zs, ys)?;
                    Formula::exists_many(zs, Formula::and(l, r))
                }
            },
            M::Tensor(ps) => {
                let (mut i, mut j) = (0, 0);
                let mut parts = Vec::new();
                for p in ps {
                    let s = self.pres.infer_type(p)?;
                    let (a, b) = (count(&s.dom), count(&s.cod));
                    parts.push(self.regular(p, &xs[i..i + a], &ys[j..j + b])?);
                    i += a;
                    j += b;
                }
                Formula::conj(parts)
            }
            M::Braid(a, _) => {
                let n = count(a);
                let m = xs.len() - n;
                Formula::and(eqs(&xs[..n], &ys[m..]), eqs(&xs[n..], &ys[..m]))
            }
            M::Copy(_) => {
                let n = xs.len();
                Formula::and(eqs(xs, &ys[..n]), eqs(xs, &ys[n..]))
            }
            M::Merge(_) => {
                let n = ys.len();
                Formula::and(eqs(&xs[..n], ys), eqs(&xs[n..], ys))
            }
            M::Delete(_) | M::Create(_) | M::Top(..) => Formula::Truth,
            M::Dagger(inner) => self.regular(inner, ys, xs)?,
            M::Unit(_) => {
                let n = ys.len() / 2;
                eqs(&ys[..n], &ys[n..])
            }
            M::Counit(_) => {
                let n = xs.len() / 2;
                eqs(&xs[..n], &xs[n..])
            }
            M::Meet(a, b) => Formula::and(self.regular(a, xs, ys)?, self.regular(b, xs, ys)?),
            other => return Err(TranslateError::NotRegular(format!("the constructor {}", head(other)))),
        })
    }

    fn binder(&mut self, o: &Object) -> (Option<(Name, LogicType)>, Term) {
        if *o == Object::Unit {
            return (None, Term::Star);
        }
        let x = self.fresh();
        (Some((x.clone(), object_type(o))), Term::Var(x))
    }

    /// Embeds `u : T(parts[i])` into `T(parts[0] ⊕ … ⊕ parts[n-1])`.
    /// `None` when `parts[i]` has no elements in any model, i.e. is `0`.
    fn embed(&mut self, u: Term, i: usize, parts: &[Object]) -> Option<Term> {
        let whole = Object::sum(parts.iter().cloned());
        let summands = whole.summands();
        let start: usize = parts[..i].iter().map(|p| p.summands().len()).sum();
        let width = parts[i].summands().len();
        if width == 0 {
            return None;
        }
        Some(self.embed_range(u, start, start + width, &summands))
    }

    /// `u : T(s[a] ⊕ … ⊕ s[b-1])` into `T(s[0] ⊕ … ⊕ s[n-1])`.
    fn embed_range(&mut self, u: Term, a: usize, b: usize, s: &[Object]) -> Term {
        let into = |k: usize| object_type(&Object::sum(s[k..].iter().cloned()));
        let wrap = |mut t: Term, from: usize| {
            for k in (0..from).rev() {
                t = Term::inj2(t, into(k));
            }
            t
        };
        if b == s.len() {
            return wrap(u, a);
        }
        if b - a == 1 {
            return wrap(Term::inj1(u, into(a)), a);
        }
        let l = self.fresh();
        let r = self.fresh();
        let left_body = wrap(Term::inj1(Term::Var(l.clone()), into(a)), a);
        let right_body = self.embed_range(Term::Var(r.clone()), a + 1, b, s);
        Term::Case {
            scrutinee: Box::new(u),
            left: (l, object_type(&s[a])),
            left_body: Box::new(left_body),
            right: (r, object_type(&Object::sum(s[a + 1..b].iter().cloned()))),
            right_body: Box::new(right_body),
        }
    }

    fn coherent(&mut self, e: &Morphism, x: &Term, y: &Term) -> Result<Formula, TranslateError> {
        use Morphism as M;
        Ok(match e {
            M::Generator(r) => Formula::rel(r.clone(), vec![x.clone(), y.clone()]),
            M::Identity(o) => eq_at(x.clone(), y.clone(), o),
            M::Compose(ps) => match ps.as_slice() {
                [] => return Err(TypeError::EmptyComposite.into()),
                [only] => self.coherent(only, x, y)?,
                [first, rest @ ..] => {
                    let mid = self.pres.infer_type(first)?.cod;
                    let (b, z) = self.binder(&mid);
                    let l = self.coherent(first, x, &z)?;
                    let r = self.coherent(&M::Compose(rest.to_vec()), &z, y)?;
                    Formula::exists_many(b.into_iter().collect(), Formula::and(l, r))
                }
            },
            M::Tensor(ps) => {
                let sigs = ps.iter().map(|p| self.pres.infer_type(p)).collect::<Result<Vec<_>, _>>()?;
                let xs = split_tensor(x, &sigs.iter().map(|s| s.dom.clone()).collect::<Vec<_>>());
                let ys = split_tensor(y, &sigs.iter().map(|s| s.cod.clone()).collect::<Vec<_>>());
                let mut parts = Vec::new();
                for ((p, a), b) in ps.iter().zip(&xs).zip(&ys) {
                    parts.push(self.coherent(p, a, b)?);
                }
                Formula::conj(parts)
            }
            M::Braid(a, b) => {
                let xs = split_tensor(x, &[a.clone(), b.clone()]);
                let ys = split_tensor(y, &[b.clone(), a.clone()]);
                Formula::and(eq_at(xs[0].clone(), ys[1].clone(), a), eq_at(xs[1].clone(), ys[0].clone(), b))
            }
            M::Copy(o) => {
                let ys = split_tensor(y, &[o.clone(), o.clone()]);
                Formula::and(eq_at(x.clone(), ys[0].clone(), o), eq_at(x.clone(), ys[1].clone(), o))
            }
            M::Merge(o) => {
                let xs = split_tensor(x, &[o.clone(), o.clone()]);
                Formula::and(eq_at(xs[0].clone(), y.clone(), o), eq_at(xs[1].clone(), y.clone(), o))
            }
            M::Delete(_) | M::Create(_) | M::Top(..) => Formula::Truth,
            M::Dagger(inner) => self.coherent(inner, y, x)?,
            M::Unit(o) => {
                let ys = split_tensor(y, &[o.clone(), o.clone()]);
                eq_at(ys[0].clone(), ys[1].clone(), o)
            }
            M::Counit(o) => {
                let xs = split_tensor(x, &[o.clone(), o.clone()]);
                eq_at(xs[0].clone(), xs[1].clone(), o)
            }
            M::Meet(a, b) => Formula::and(self.coherent(a, x, y)?, self.coherent(b, x, y)?),
            M::Join(a, b) => Formula::or(self.coherent(a, x, y)?, self.coherent(b, x, y)?),
            M::Bottom(..) | M::CoCreate(_) | M::CoDelete(_) => Formula::Falsity,
            M::SumTensor(ps) => {
                let sigs = ps.iter().map(|p| self.pres.infer_type(p)).collect::<Result<Vec<_>, _>>()?;
                let doms: Vec<Object> = sigs.iter().map(|s| s.dom.clone()).collect();
                let cods: Vec<Object> = sigs.iter().map(|s| s.cod.clone()).collect();
                let mut disjuncts = Vec::new();
                for (i, p) in ps.iter().enumerate() {
                    let (bu, u) = self.binder(&doms[i]);
                    let (bv, v) = self.binder(&cods[i]);
                    let (Some(eu), Some(ev)) = (self.embed(u.clone(), i, &doms), self.embed(v.clone(), i, &cods))
                    else {
                        continue;
                    };
                    // Nested as a chain x ~ u ~ v ~ y.
                    let inner = Formula::exists_many(
                        bv.into_iter().collect(),
                        Formula::and(self.coherent(p, &u, &v)?, Formula::eq(ev, y.clone())),
                    );
                    let body = Formula::and(Formula::eq(eu, x.clone()), inner);
                    disjuncts.push(Formula::exists_many(bu.into_iter().collect(), body));
                }
                Formula::disj(disjuncts)
            }
            M::SumBraid(a, b) => {
                let dom = [a.clone(), b.clone()];
                let cod = [b.clone(), a.clone()];
                let mut disjuncts = Vec::new();
                for (i, o) in dom.iter().enumerate() {
                    let (bu, u) = self.binder(o);
                    let (Some(ex), Some(ey)) = (self.embed(u.clone(), i, &dom), self.embed(u, 1 - i, &cod)) else {
                        continue;
                    };
                    let body = Formula::and(Formula::eq(ex, x.clone()), Formula::eq(ey, y.clone()));
                    disjuncts.push(Formula::exists_many(bu.into_iter().collect(), body));
                }
                Formula::disj(disjuncts)
            }
            M::CoCopy(o) => {
                let parts = [o.clone(), o.clone()];
                let mut disjuncts = Vec::new();
                for i in 0..2 {
                    if let Some(e) = self.embed(x.clone(), i, &parts) {
                        disjuncts.push(Formula::eq(e, y.clone()));
                    }
                }
                Formula::disj(disjuncts)
            }
            M::CoMerge(o) => {
                let parts = [o.clone(), o.clone()];
                let mut disjuncts = Vec::new();
                for i in 0..2 {
                    if let Some(e) = self.embed(y.clone(), i, &parts) {
                        disjuncts.push(Formula::eq(e, x.clone()));
                    }
                }
                Formula::disj(disjuncts)
            }
            M::Distribute(a, b, c) => self.distribute(a, b, c, x, y)?,
            M::DistributeInv(a, b, c) => self.distribute(a, b, c, y, x)?,
        })
    }

    /// `x : T(a ⊗ (b ⊕ c))` related to `y : T(a⊗b ⊕ a⊗c)`.
    fn distribute(
        &mut self,
        a: &Object,
        b: &Object,
        c: &Object,
        x: &Term,
        y: &Term,
    ) -> Result<Formula, TranslateError> {
        let bc = [b.clone(), c.clone()];
        let w = Object::sum(bc.iter().cloned());
        let outs = [Object::pair(a, b), Object::pair(a, c)];
        let mut disjuncts = Vec::new();
        for (i, o) in bc.iter().enumerate() {
            let (ba, ta) = self.binder(a);
            let (bb, tb) = self.binder(o);
            let Some(eb) = self.embed(tb.clone(), i, &bc) else {
                continue;
            };
            let inner = join_tensor(&[(ta.clone(), a.clone()), (tb, o.clone())]);
            let Some(ey) = self.embed(inner, i, &outs) else {
                continue;
            };
            let lhs = join_tensor(&[(ta, a.clone()), (eb, w.clone())]);
            let body = Formula::and(Formula::eq(x.clone(), lhs), Formula::eq(y.clone(), ey));
            disjuncts.push(Formula::exists_many(ba.into_iter().chain(bb).collect(), body));
        }
        Ok(Formula::disj(disjuncts))
    }
}

fn head(m: &Morphism) -> String {
    let s = format!("{m:?}");
    s.split(['(', ' ']).next().unwrap_or_default().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrel::{eval, Element, Instance};
    use crate::logic::interpret::interpret;
    use crate::logic::text::print_formula;
    use crate::text::{parse_morphism, parse_olog};

    fn foaf() -> (Presentation, Instance) {
        let pres = parse_olog("type Person\nrel knows : Person -> Person").unwrap();
        let mut inst = Instance::new();
        inst.set_carrier("Person", ["P1", "P2", "P3"]);
        let e = |a: &str, b: &str| (Element::atom(a), Element::atom(b));
        inst.set_relation("knows", [e("P1", "P2"), e("P2", "P3")]);
        (pres, inst)
    }

    fn round_trip(src: &str, pres: &Presentation, inst: &Instance, mode: Mode) {
        let e = parse_morphism(src).unwrap();
        let (ctx, phi) = translate_to_logic(&e, pres, mode).unwrap();
        let (thy, sig) = theory_of(pres, mode).unwrap();
        let back = interpret(&ctx, &phi, &thy, &sig).unwrap();
        assert_eq!(
            eval(&back, inst, &sig.pres).unwrap(),
            eval(&e, inst, &sig.pres).unwrap(),
            "{src} became {}",
            print_formula(&phi)
        );
    }

    #[test]
    fn generator_translates_to_atom() {
        let (pres, _) = foaf();
        let (ctx, phi) = translate_to_logic(&Morphism::gen("knows"), &pres, Mode::Regular).unwrap();
        assert_eq!(ctx.to_string(), "[x0:Person; x1:Person]");
        assert_eq!(print_formula(&phi), "knows(x0, x1)");
    }

    #[test]
    fn composite_introduces_a_witness() {
        let (pres, _) = foaf();
        let e = parse_morphism("knows ; knows").unwrap();
        let (_, phi) = translate_to_logic(&e, &pres, Mode::Regular).unwrap();
        assert_eq!(print_formula(&phi), "exists x2:Person. knows(x0, x2) & knows(x2, x1)");
    }

    #[test]
    fn regular_round_trips() {
        let (pres, inst) = foaf();
        for src in [
            "knows ; dagger(knows)",
            "meet(knows, dagger(knows))",
            "copy(Person) ; knows * id(Person) ; braid(Person, Person)",
            "unit(Person) ; knows * id(Person) ; counit(Person)",
            "delete(Person) ; create(Person)",
            "top(Person, Person * Person)",
        ] {
            round_trip(src, &pres, &inst, Mode::Regular);
        }
    }

    #[test]
    fn coherent_round_trips() {
        let (pres, inst) = foaf();
        for src in [
            "knows ; knows",
            "join(knows, dagger(knows))",
            "cocopy(Person) ; sbraid(Person, Person) ; comerge(Person)",
            "knows + id(Person)",
            "bottom(Person, Person)",
            "copy(Person) ; id(Person) * cocopy(Person) ; dist(Person, Person, Person) ; distinv(Person, Person, Person)",
        ] {
            round_trip(src, &pres, &inst, Mode::Coherent);
        }
    }

    #[test]
    fn regular_rejects_sums() {
        let (pres, _) = foaf();
        let mut p = pres.clone();
        p.distributive = true;
        let e = Morphism::Join(Box::new(Morphism::gen("knows")), Box::new(Morphism::gen("knows")));
        assert!(matches!(translate_to_logic(&e, &p, Mode::Regular), Err(TranslateError::NotRegular(_))));
    }
}
