//! Interpretation of terms and formulas as morphism expressions.
//!
//! A formula in split context `Γ; Γ'` becomes a morphism `⟦Γ⟧ → ⟦Γ'⟧`;
//! a term in context `Γ` becomes a map `⟦Γ⟧ → ⟦A⟧`. Terms and atoms are
//! interpreted on the variables they mention and then precomposed with
//! a wiring of copies, deletions and braids, which keeps intermediate
//! relations small.

use std::collections::BTreeSet;

use indexmap::IndexMap;
use thiserror::Error;

use super::formation::{check_context, check_formula, check_term, LogicError};
use super::syntax::{fresh_name, Context, Formula, LogicType, Mode, Term, Theory};
use crate::presentation::{Presentation, TypeError};
use crate::rewrite::normalize_strict;
use crate::syntax::{Morphism, Name, Object};
use crate::text::lexer::{Cursor, SyntaxError};

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum InterpretError {
    #[error(transparent)]
    Formation(#[from] LogicError),
    #[error("symbol {0} has no interpretation")]
    UnmappedSymbol(Name),
    #[error("{symbol} is interpreted as {found}, expected {expected}")]
    SignatureMismatch { symbol: Name, expected: String, found: String },
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// Interpretation of a signature in a presentation: basic types go to
/// objects, relation symbols to morphisms together with the number of
/// leading arguments on the domain side, function symbols to maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignatureMap {
    pub pres: Presentation,
    pub types: IndexMap<Name, Object>,
    pub relations: IndexMap<Name, (Morphism, usize)>,
    pub functions: IndexMap<Name, Morphism>,
}

pub fn type_object(ty: &LogicType, sig: &SignatureMap) -> Result<Object, InterpretError> {
    Ok(match ty {
        LogicType::Basic(n) => sig.types.get(n).cloned().ok_or_else(|| InterpretError::UnmappedSymbol(n.clone()))?,
        LogicType::Prod(a, b) => Object::tensor([type_object(a, sig)?, type_object(b, sig)?]),
        LogicType::One => Object::Unit,
        LogicType::Sum(a, b) => Object::sum([type_object(a, sig)?, type_object(b, sig)?]),
        LogicType::Zero => Object::Zero,
    })
}

impl SignatureMap {
    /// An empty map over `pres`. Coherent theories need the distributive
    /// constructors, so the stored presentation is marked distributive.
    pub fn new(pres: &Presentation, mode: Mode) -> Self {
        let mut pres = pres.clone();
        if mode == Mode::Coherent {
            pres.distributive = true;
        }
        SignatureMap { pres, types: IndexMap::new(), relations: IndexMap::new(), functions: IndexMap::new() }
    }

    /// Maps every symbol of `thy` to the same-named object or generator.
    pub fn derive(thy: &Theory, pres: &Presentation) -> Result<Self, InterpretError> {
        let mut sig = SignatureMap::new(pres, thy.mode);
        sig.fill_defaults(thy)?;
        Ok(sig)
    }

    /// Fills in every symbol not yet mapped by name, then checks all entries.
    pub fn fill_defaults(&mut self, thy: &Theory) -> Result<(), InterpretError> {
        for t in &thy.types {
            if !self.types.contains_key(t) {
                if !self.pres.objects.contains(t) {
                    return Err(InterpretError::UnmappedSymbol(t.clone()));
                }
                self.types.insert(t.clone(), Object::Gen(t.clone()));
            }
        }
        for (f, _) in &thy.functions {
            if !self.functions.contains_key(f) {
                if !self.pres.generators.contains_key(f) {
                    return Err(InterpretError::UnmappedSymbol(f.clone()));
                }
                self.functions.insert(f.clone(), Morphism::Generator(f.clone()));
            }
        }
        for (r, tys) in &thy.relations {
            if !self.relations.contains_key(r) {
                if !self.pres.generators.contains_key(r) {
                    return Err(InterpretError::UnmappedSymbol(r.clone()));
                }
                let m = Morphism::Generator(r.clone());
                let k = self.infer_split(r, &m, tys)?;
                self.relations.insert(r.clone(), (m, k));
            }
        }
        self.check(thy)
    }

    /// The number of leading argument types whose product is the domain.
    pub fn infer_split(&self, r: &Name, m: &Morphism, tys: &[LogicType]) -> Result<usize, InterpretError> {
        let s = self.pres.infer_type(m)?;
        let objs = tys.iter().map(|t| type_object(t, self)).collect::<Result<Vec<_>, _>>()?;
        (0..=objs.len())
            .find(|&k| {
                Object::tensor(objs[..k].iter().cloned()) == s.dom && Object::tensor(objs[k..].iter().cloned()) == s.cod
            })
            .ok_or_else(|| InterpretError::SignatureMismatch {
                symbol: r.clone(),
                expected: format!("a split of ({})", tys.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")),
                found: s.to_string(),
            })
    }

    /// Checks that every entry has the type its symbol demands.
    pub fn check(&self, thy: &Theory) -> Result<(), InterpretError> {
        for (f, (dom, cod)) in &thy.functions {
            let m = self.functions.get(f).ok_or_else(|| InterpretError::UnmappedSymbol(f.clone()))?;
            let s = self.pres.infer_type(m)?;
            let (d, c) = (type_object(dom, self)?, type_object(cod, self)?);
            if s.dom != d || s.cod != c {
                return Err(InterpretError::SignatureMismatch {
                    symbol: f.clone(),
                    expected: format!("{d} -> {c}"),
                    found: s.to_string(),
                });
            }
        }
        for (r, tys) in &thy.relations {
            let (m, k) = self.relations.get(r).ok_or_else(|| InterpretError::UnmappedSymbol(r.clone()))?;
            let s = self.pres.infer_type(m)?;
            let objs = tys.iter().map(|t| type_object(t, self)).collect::<Result<Vec<_>, _>>()?;
            if *k > objs.len()
                || Object::tensor(objs[..*k].iter().cloned()) != s.dom
                || Object::tensor(objs[*k..].iter().cloned()) != s.cod
            {
                return Err(InterpretError::SignatureMismatch {
                    symbol: r.clone(),
                    expected: format!("arguments split after {k}"),
                    found: s.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// Parses the mapping statements of a signature map file:
///
/// ```text
/// type Person := Person
/// rel friend := "friend of"
/// rel kin := join(parent, dagger(parent)) split 1
/// fn age := age
/// ```
///
/// Unlisted symbols map to the same-named object or generator.
pub fn parse_signature_map(src: &str, thy: &Theory, pres: &Presentation) -> Result<SignatureMap, MapFileError> {
    let mut c = Cursor::new(src)?;
    let mut sig = SignatureMap::new(pres, thy.mode);
    if c.eat_kw("map") {
        c.name()?;
    }
    if c.eat_kw("olog_file") {
        c.name()?;
    }
    let mut pending: Vec<(Name, Morphism, Option<usize>)> = Vec::new();
    while !c.at_eof() {
        if c.eat_kw("type") {
            let t = c.name()?;
            c.expect_sym(":=")?;
            let o = crate::text::olog::object(&mut c)?;
            sig.types.insert(t, o);
        } else if c.eat_kw("rel") {
            let r = c.name()?;
            c.expect_sym(":=")?;
            let m = crate::text::olog::morphism(&mut c)?;
            let k = if c.eat_kw("split") {
                match c.advance() {
                    crate::text::lexer::Tok::Word(w) => Some(w.parse().map_err(|_| c.error("a number"))?),
                    _ => return Err(c.error("a number").into()),
                }
            } else {
                None
            };
            pending.push((r, m, k));
        } else if c.eat_kw("fn") {
            let f = c.name()?;
            c.expect_sym(":=")?;
            let m = crate::text::olog::morphism(&mut c)?;
            sig.functions.insert(f, m);
        } else {
            return Err(c.error("`type`, `rel` or `fn`").into());
        }
    }
    for (r, m, k) in pending {
        let k = match k {
            Some(k) => k,
            None => {
                let tys = thy.relations.get(&r).ok_or_else(|| InterpretError::UnmappedSymbol(r.clone()))?;
                sig.infer_split(&r, &m, tys)?
            }
        };
        sig.relations.insert(r, (m, k));
    }
    sig.fill_defaults(thy)?;
    Ok(sig)
}

/// The path named by an `olog_file "…"` line, if the map file has one.
pub fn map_file_olog_path(src: &str) -> Result<Option<String>, SyntaxError> {
    let mut c = Cursor::new(src)?;
    if c.eat_kw("map") {
        c.name()?;
    }
    if c.eat_kw("olog_file") {
        return Ok(Some(c.name()?.as_str().to_string()));
    }
    Ok(None)
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum MapFileError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Interpret(#[from] InterpretError),
}

fn delete(x: Object) -> Morphism {
    if x == Object::Unit {
        Morphism::Identity(x)
    } else {
        Morphism::Delete(x)
    }
}

fn top(x: Object, y: Object) -> Morphism {
    match (x == Object::Unit, y == Object::Unit) {
        (true, true) => Morphism::Identity(Object::Unit),
        (false, true) => Morphism::Delete(x),
        (true, false) => Morphism::Create(y),
        (false, false) => Morphism::Top(x, y),
    }
}

/// The converse, pushed through structural constructors.
pub fn converse(m: &Morphism) -> Morphism {
    use Morphism::*;
    match m {
        Identity(x) => Identity(x.clone()),
        Copy(x) => Merge(x.clone()),
        Merge(x) => Copy(x.clone()),
        Delete(x) => Create(x.clone()),
        Create(x) => Delete(x.clone()),
        Braid(x, y) => Braid(y.clone(), x.clone()),
        Unit(x) => Counit(x.clone()),
        Counit(x) => Unit(x.clone()),
        Top(x, y) => Top(y.clone(), x.clone()),
        Compose(ps) => Compose(ps.iter().rev().map(converse).collect()),
        Tensor(ps) => Tensor(ps.iter().map(converse).collect()),
        Dagger(inner) => (**inner).clone(),
        other => Dagger(Box::new(other.clone())),
    }
}

type Vars = Vec<(Name, LogicType)>;

struct Interp<'a> {
    thy: &'a Theory,
    sig: &'a SignatureMap,
}

impl<'a> Interp<'a> {
    fn obj(&self, ty: &LogicType) -> Result<Object, InterpretError> {
        type_object(ty, self.sig)
    }

    fn ctx_obj(&self, vars: &[(Name, LogicType)]) -> Result<Object, InterpretError> {
        Ok(Object::tensor(vars.iter().map(|(_, t)| self.obj(t)).collect::<Result<Vec<_>, _>>()?))
    }

    fn type_of(&self, vars: &[(Name, LogicType)], t: &Term) -> Result<LogicType, InterpretError> {
        Ok(check_term(&Context::new(vars.to_vec()), t, self.thy)?)
    }

    /// Copies, deletes and braids `⟦vars⟧` into the listed variables, in order.
    fn rewire(&self, vars: &[(Name, LogicType)], targets: &[Name]) -> Result<Morphism, InterpretError> {
        let objs: Vec<Object> = vars.iter().map(|(_, t)| self.obj(t)).collect::<Result<_, _>>()?;
        let index = |x: &Name| {
            vars.iter()
                .position(|(y, _)| y == x)
                .ok_or_else(|| InterpretError::Formation(LogicError::UnboundVariable(x.clone())))
        };
        let wanted: Vec<usize> = targets.iter().map(index).collect::<Result<_, _>>()?;
        if wanted.iter().copied().eq(0..vars.len()) {
            return Ok(Morphism::Identity(Object::tensor(objs)));
        }
        let mut first = Vec::new();
        let mut slots: Vec<usize> = Vec::new();
        for (j, o) in objs.iter().enumerate() {
            let count = wanted.iter().filter(|&&w| w == j).count();
            first.push(match count {
                0 => delete(o.clone()),
                _ => copies(o, count),
            });
            slots.extend(std::iter::repeat_n(j, count));
        }
        let mut steps = vec![Morphism::Tensor(first)];
        // Bubble the slots into target order with adjacent braids.
        let mut cur = slots;
        for (pos, &w) in wanted.iter().enumerate() {
            let from = pos + cur[pos..].iter().position(|&s| s == w).expect("slot exists");
            for i in (pos..from).rev() {
                let prefix = Object::tensor(cur[..i].iter().map(|&s| objs[s].clone()));
                let suffix = Object::tensor(cur[i + 2..].iter().map(|&s| objs[s].clone()));
                steps.push(Morphism::Tensor(vec![
                    Morphism::Identity(prefix),
                    Morphism::Braid(objs[cur[i]].clone(), objs[cur[i + 1]].clone()),
                    Morphism::Identity(suffix),
                ]));
                cur.swap(i, i + 1);
            }
        }
        Ok(Morphism::Compose(steps))
    }

    fn restrict(vars: &[(Name, LogicType)], names: &indexmap::IndexSet<Name>) -> Vars {
        vars.iter().filter(|(x, _)| names.contains(x)).cloned().collect()
    }

    /// `⟦vars ⊢ t⟧`.
    fn term(&self, vars: &[(Name, LogicType)], t: &Term) -> Result<Morphism, InterpretError> {
        if let Term::Var(x) = t {
            return self.rewire(vars, std::slice::from_ref(x));
        }
        let used = Self::restrict(vars, &t.fv());
        let inner = self.term_exact(&used, t)?;
        if used.len() == vars.len() {
            return Ok(inner);
        }
        let names: Vec<Name> = used.iter().map(|(x, _)| x.clone()).collect();
        Ok(Morphism::Compose(vec![self.rewire(vars, &names)?, inner]))
    }

    /// Interpretation following the term's structure, in a context that
    /// may hold unused variables.
    fn term_exact(&self, vars: &[(Name, LogicType)], t: &Term) -> Result<Morphism, InterpretError> {
        use Morphism as M;
        Ok(match t {
            Term::Var(x) => self.rewire(vars, std::slice::from_ref(x))?,
            Term::App(f, a) => {
                let fm = self.sig.functions.get(f).cloned().ok_or_else(|| InterpretError::UnmappedSymbol(f.clone()))?;
                M::Compose(vec![self.term(vars, a)?, fm])
            }
            Term::Pair(a, b) => self.tuple(vars, &[(**a).clone(), (**b).clone()])?,
            Term::Proj1(a) | Term::Proj2(a) => {
                let LogicType::Prod(l, r) = self.type_of(vars, a)? else {
                    unreachable!("formation checked");
                };
                let (l, r) = (self.obj(&l)?, self.obj(&r)?);
                let keep = if matches!(t, Term::Proj1(_)) {
                    M::Tensor(vec![M::Identity(l), delete(r)])
                } else {
                    M::Tensor(vec![delete(l), M::Identity(r)])
                };
                M::Compose(vec![self.term(vars, a)?, keep])
            }
            Term::Star => delete(self.ctx_obj(vars)?),
            Term::Inj1(a, into) | Term::Inj2(a, into) => {
                let LogicType::Sum(l, r) = into else {
                    unreachable!("formation checked");
                };
                let inner = self.term(vars, a)?;
                if matches!(t, Term::Inj1(..)) {
                    M::SumTensor(vec![inner, M::CoCreate(self.obj(r)?)])
                } else {
                    M::SumTensor(vec![M::CoCreate(self.obj(l)?), inner])
                }
            }
            Term::Case { scrutinee, left, left_body, right, right_body } => {
                let g = self.ctx_obj(vars)?;
                let result = self.type_of(vars, t)?;
                let mut branches = Vec::new();
                for ((x, ty), body) in [(left, left_body), (right, right_body)] {
                    let (x2, body2) = self.freshen_term(vars, x, body);
                    let mut inner = vars.to_vec();
                    inner.push((x2, ty.clone()));
                    branches.push(self.term(&inner, &body2)?);
                }
                M::Compose(vec![
                    M::Copy(g.clone()),
                    M::Tensor(vec![M::Identity(g.clone()), self.term(vars, scrutinee)?]),
                    M::Distribute(g, self.obj(&left.1)?, self.obj(&right.1)?),
                    M::SumTensor(branches),
                    M::CoMerge(self.obj(&result)?),
                ])
            }
        })
    }

    fn freshen_term(&self, vars: &[(Name, LogicType)], x: &Name, body: &Term) -> (Name, Term) {
        if !vars.iter().any(|(y, _)| y == x) {
            return (x.clone(), body.clone());
        }
        let mut avoid: BTreeSet<Name> = vars.iter().map(|(y, _)| y.clone()).collect();
        avoid.extend(body.fv());
        let x2 = fresh_name(x, &avoid);
        (x2.clone(), body.rename(x, &x2))
    }

    /// `⟦vars ⊢ t₁⟧ ⊗ … ⊗ ⟦vars ⊢ tₙ⟧` after copying `vars`.
    fn tuple(&self, vars: &[(Name, LogicType)], ts: &[Term]) -> Result<Morphism, InterpretError> {
        if ts.iter().all(Term::is_var) {
            let names: Vec<Name> = ts
                .iter()
                .map(|t| match t {
                    Term::Var(x) => x.clone(),
                    _ => unreachable!(),
                })
                .collect();
            return self.rewire(vars, &names);
        }
        let mut names = Vec::new();
        let mut parts = Vec::new();
        for t in ts {
            let used = Self::restrict(vars, &t.fv());
            names.extend(used.iter().map(|(x, _)| x.clone()));
            parts.push(self.term_exact(&used, t)?);
        }
        Ok(Morphism::Compose(vec![self.rewire(vars, &names)?, Morphism::Tensor(parts)]))
    }

    /// `⟦dom; cod ⊢ φ⟧`.
    fn formula(
        &self,
        dom: &[(Name, LogicType)],
        cod: &[(Name, LogicType)],
        phi: &Formula,
    ) -> Result<Morphism, InterpretError> {
        use Morphism as M;
        Ok(match phi {
            Formula::Truth => top(self.ctx_obj(dom)?, self.ctx_obj(cod)?),
            Formula::Falsity => M::Bottom(self.ctx_obj(dom)?, self.ctx_obj(cod)?),
            Formula::And(a, b) => self.formula(dom, cod, a)?.meet(self.formula(dom, cod, b)?),
            Formula::Or(a, b) => self.formula(dom, cod, a)?.join(self.formula(dom, cod, b)?),
            Formula::Exists(x, ty, body) => {
                if let Some(m) = self.composite(dom, cod, phi)? {
                    return Ok(m);
                }
                let mut all: Vec<(Name, LogicType)> = dom.to_vec();
                all.extend(cod.iter().cloned());
                let (x2, body2) = if all.iter().any(|(y, _)| y == x) {
                    let mut avoid: BTreeSet<Name> = all.iter().map(|(y, _)| y.clone()).collect();
                    avoid.extend(body.all_names_set());
                    let x2 = fresh_name(x, &avoid);
                    let b2 = body.rename(x, &x2);
                    (x2, b2)
                } else {
                    (x.clone(), (**body).clone())
                };
                let mut cod2 = cod.to_vec();
                cod2.push((x2, ty.clone()));
                M::Compose(vec![
                    self.formula(dom, &cod2, &body2)?,
                    M::Tensor(vec![M::Identity(self.ctx_obj(cod)?), delete(self.obj(ty)?)]),
                ])
            }
            Formula::Rel(r, args) => {
                let (m, k) =
                    self.sig.relations.get(r).cloned().ok_or_else(|| InterpretError::UnmappedSymbol(r.clone()))?;
                self.atom(dom, cod, m, &args[..k], &args[k..])?
            }
            Formula::Eq(a, b) => {
                let mut all: Vec<(Name, LogicType)> = dom.to_vec();
                all.extend(cod.iter().cloned());
                let ty = self.type_of(&all, a)?;
                let m = M::Identity(self.obj(&ty)?);
                self.atom(dom, cod, m, std::slice::from_ref(a), std::slice::from_ref(b))?
            }
        })
    }

    /// `∃zs. l ∧ r` with `l` on `dom, zs` and `r` on `zs, cod` is the
    /// composite of `⟦dom; zs ⊢ l⟧` and `⟦zs; cod ⊢ r⟧`. This avoids
    /// carrying the witnesses alongside the codomain.
    fn composite(
        &self,
        dom: &[(Name, LogicType)],
        cod: &[(Name, LogicType)],
        phi: &Formula,
    ) -> Result<Option<Morphism>, InterpretError> {
        let mut avoid: BTreeSet<Name> = dom.iter().chain(cod).map(|(y, _)| y.clone()).collect();
        let mut zs: Vars = Vec::new();
        let mut body = phi.clone();
        while let Formula::Exists(x, ty, inner) = body {
            let (x2, inner2) = if avoid.contains(&x) {
                let mut all = avoid.clone();
                all.extend(inner.all_names_set());
                let x2 = fresh_name(&x, &all);
                let b2 = inner.rename(&x, &x2);
                (x2, b2)
            } else {
                (x, *inner)
            };
            avoid.insert(x2.clone());
            zs.push((x2, ty));
            body = inner2;
        }
        let Formula::And(l, r) = &body else {
            return Ok(None);
        };
        let on = |f: &Formula, side: &[(Name, LogicType)]| {
            f.fv().iter().all(|x| side.iter().chain(&zs).any(|(y, _)| y == x))
        };
        let (first, second) = if on(l, dom) && on(r, cod) {
            (l, r)
        } else if on(r, dom) && on(l, cod) {
            (r, l)
        } else {
            return Ok(None);
        };
        Ok(Some(Morphism::Compose(vec![self.formula(dom, &zs, first)?, self.formula(&zs, cod, second)?])))
    }

    /// The relation `m` between the tuples `ds` and `cs`.
    fn atom(
        &self,
        dom: &[(Name, LogicType)],
        cod: &[(Name, LogicType)],
        m: Morphism,
        ds: &[Term],
        cs: &[Term],
    ) -> Result<Morphism, InterpretError> {
        use Morphism as M;
        let fv = |ts: &[Term]| {
            let mut out = indexmap::IndexSet::new();
            ts.iter().for_each(|t| t.free_vars(&mut out));
            out
        };
        let within = |names: &indexmap::IndexSet<Name>, vars: &[(Name, LogicType)]| {
            names.iter().all(|x| vars.iter().any(|(y, _)| y == x))
        };
        let (fd, fc) = (fv(ds), fv(cs));
        if within(&fd, dom) && within(&fc, cod) {
            return Ok(M::Compose(vec![self.tuple(dom, ds)?, m, converse(&self.tuple(cod, cs)?)]));
        }
        if within(&fd, cod) && within(&fc, dom) {
            return Ok(M::Compose(vec![self.tuple(dom, cs)?, converse(&m), converse(&self.tuple(cod, ds)?)]));
        }
        // Mixed sides: build the closed form on every variable, then bend
        // the codomain variables across.
        let mut all: Vec<(Name, LogicType)> = dom.to_vec();
        all.extend(cod.iter().cloned());
        let c_obj = Object::tensor(
            cs.iter().map(|t| self.type_of(&all, t).and_then(|ty| self.obj(&ty))).collect::<Result<Vec<_>, _>>()?,
        );
        let mut ts = ds.to_vec();
        ts.extend(cs.iter().cloned());
        let closed =
            M::Compose(vec![self.tuple(&all, &ts)?, M::Tensor(vec![m, M::Identity(c_obj.clone())]), M::Counit(c_obj)]);
        if cod.is_empty() {
            return Ok(closed);
        }
        let (d, c) = (self.ctx_obj(dom)?, self.ctx_obj(cod)?);
        Ok(M::Compose(vec![
            M::Tensor(vec![M::Identity(d), M::Unit(c.clone())]),
            M::Tensor(vec![closed, M::Identity(c)]),
        ]))
    }
}

fn copies(o: &Object, k: usize) -> Morphism {
    // Δ then Δ ⊗ 1 repeatedly: X → X^k.
    let mut m = Morphism::Identity(o.clone());
    for i in 1..k {
        let rest = Object::tensor(std::iter::repeat_n(o.clone(), i - 1));
        m = Morphism::Compose(vec![m, Morphism::Tensor(vec![Morphism::Copy(o.clone()), Morphism::Identity(rest)])]);
    }
    m
}

/// `⟦Γ; Γ' ⊢ φ⟧ : ⟦Γ⟧ → ⟦Γ'⟧`, strictly normalized.
pub fn interpret(ctx: &Context, phi: &Formula, thy: &Theory, sig: &SignatureMap) -> Result<Morphism, InterpretError> {
    check_context(ctx, thy)?;
    check_formula(ctx, phi, thy)?;
    let it = Interp { thy, sig };
    let m = it.formula(ctx.dom(), ctx.cod(), phi)?;
    Ok(normalize_strict(&m, &sig.pres)?)
}

/// `⟦Γ ⊢ t⟧ : ⟦Γ⟧ → ⟦A⟧`, a map; strictly normalized.
pub fn interpret_term(ctx: &Context, t: &Term, thy: &Theory, sig: &SignatureMap) -> Result<Morphism, InterpretError> {
    check_context(ctx, thy)?;
    check_term(ctx, t, thy)?;
    let it = Interp { thy, sig };
    let m = it.term(&ctx.vars, t)?;
    Ok(normalize_strict(&m, &sig.pres)?)
}

/// Whether `⟦φ⟧ ⊆ ⟦ψ⟧` holds in `inst`, both read in the unsplit context.
pub fn sequent_holds(
    s: &super::syntax::Sequent,
    thy: &Theory,
    sig: &SignatureMap,
    inst: &crate::finrel::Instance,
) -> Result<bool, SemanticError> {
    let ctx = s.ctx.unsplit();
    let l = interpret(&ctx, &s.lhs, thy, sig)?;
    let r = interpret(&ctx, &s.rhs, thy, sig)?;
    let lv = crate::finrel::eval(&l, inst, &sig.pres)?;
    let rv = crate::finrel::eval(&r, inst, &sig.pres)?;
    Ok(lv.is_subset(&rv))
}

/// Whether every axiom of `thy` holds in `inst`.
pub fn is_model(thy: &Theory, sig: &SignatureMap, inst: &crate::finrel::Instance) -> Result<bool, SemanticError> {
    for ax in &thy.axioms {
        if !sequent_holds(ax, thy, sig, inst)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum SemanticError {
    #[error(transparent)]
    Interpret(#[from] InterpretError),
    #[error(transparent)]
    Eval(#[from] crate::finrel::EvalError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finrel::{eval, Element, Instance};
    use crate::logic::text::{parse_formula, parse_term, parse_theory};
    use crate::text::parse_olog;

    fn setup() -> (Theory, SignatureMap, Instance) {
        let pres = parse_olog("type Person\nrel knows : Person -> Person\nrel R : Person * Person -> I").unwrap();
        let thy = parse_theory("type Person\nrel knows : Person, Person\nrel R : Person, Person").unwrap();
        let sig = SignatureMap::derive(&thy, &pres).unwrap();
        let mut inst = Instance::new();
        inst.set_carrier("Person", ["P1", "P2", "P3", "P4"]);
        let e = |a: &str, b: &str| (Element::atom(a), Element::atom(b));
        inst.set_relation("knows", [e("P1", "P2"), e("P2", "P1"), e("P3", "P4"), e("P4", "P3")]);
        let r = |a: &str, b: &str| (Element::pair(Element::atom(a), Element::atom(b)), Element::Star);
        inst.set_relation("R", [r("P1", "P3")]);
        (thy, sig, inst)
    }

    fn ctx(src: &str) -> Context {
        crate::logic::text::parse_context(src).unwrap()
    }

    #[test]
    fn base_case_is_the_generator() {
        let (thy, sig, _) = setup();
        let m = interpret(&ctx("[x:Person; y:Person]"), &parse_formula("knows(x, y)").unwrap(), &thy, &sig).unwrap();
        assert_eq!(m, Morphism::gen("knows"));
    }

    #[test]
    fn truth_in_closed_context_is_delete() {
        let (thy, sig, _) = setup();
        let m = interpret(&ctx("[x:Person]"), &Formula::Truth, &thy, &sig).unwrap();
        assert_eq!(m, Morphism::Delete(Object::gen("Person")));
    }

    #[test]
    fn relational_composition() {
        let (thy, sig, inst) = setup();
        let phi = parse_formula("exists y:Person. knows(x, y) & knows(y, z)").unwrap();
        let m = interpret(&ctx("[x:Person; z:Person]"), &phi, &thy, &sig).unwrap();
        let got = eval(&m, &inst, &sig.pres).unwrap();
        let want = eval(&Morphism::gen("knows").then(Morphism::gen("knows")), &inst, &sig.pres).unwrap();
        assert_eq!(got, want);
        assert_eq!(inst.show(&got), "{(P1, P1), (P2, P2), (P3, P3), (P4, P4)}");
    }

    #[test]
    fn mixed_sides_and_reordering() {
        let (thy, sig, inst) = setup();
        // y on the domain side and x on the codomain side: the converse.
        let m = interpret(&ctx("[y:Person; x:Person]"), &parse_formula("knows(x, y)").unwrap(), &thy, &sig).unwrap();
        let want = eval(&Morphism::gen("knows").dagger(), &inst, &sig.pres).unwrap();
        assert_eq!(eval(&m, &inst, &sig.pres).unwrap(), want);
        // A binary predicate split across the semicolon.
        let m = interpret(&ctx("[x:Person; y:Person]"), &parse_formula("R(y, x)").unwrap(), &thy, &sig).unwrap();
        let got = eval(&m, &inst, &sig.pres).unwrap();
        assert_eq!(inst.show(&got), "{(P3, P1)}");
    }

    #[test]
    fn equality_clauses() {
        let (thy, sig, inst) = setup();
        let m = interpret(&ctx("[x:Person; y:Person]"), &parse_formula("x = y").unwrap(), &thy, &sig).unwrap();
        assert_eq!(m, Morphism::Identity(Object::gen("Person")));
        let m = interpret(&ctx("[x:Person, y:Person]"), &parse_formula("x = y").unwrap(), &thy, &sig).unwrap();
        let got = eval(&m, &inst, &sig.pres).unwrap();
        assert_eq!(got.pairs.len(), 4);
    }

    fn coherent() -> (Theory, SignatureMap, Instance) {
        let pres = parse_olog("type A, B").unwrap();
        let thy = parse_theory("mode coherent\ntype A, B").unwrap();
        let sig = SignatureMap::derive(&thy, &pres).unwrap();
        let mut inst = Instance::new();
        inst.set_carrier("A", ["a1", "a2"]);
        inst.set_carrier("B", ["b1", "b2"]);
        (thy, sig, inst)
    }

    #[test]
    fn variable_term_is_identity() {
        let (thy, sig, _) = coherent();
        let m = interpret_term(&ctx("[x:A]"), &parse_term("x").unwrap(), &thy, &sig).unwrap();
        assert_eq!(m, Morphism::Identity(Object::gen("A")));
    }

    #[test]
    fn swap_term_is_the_swap_function() {
        let (thy, sig, inst) = coherent();
        let m = interpret_term(&ctx("[x:A * A]"), &parse_term("<pi2(x), pi1(x)>").unwrap(), &thy, &sig).unwrap();
        let got = eval(&m, &inst, &sig.pres).unwrap();
        let a = Object::gen("A");
        let want = eval(&Morphism::Braid(a.clone(), a), &inst, &sig.pres).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn case_retags() {
        let (thy, sig, inst) = coherent();
        let t = parse_term("case(z; u:A. inr{B + A}(u); w:B. inl{B + A}(w))").unwrap();
        let m = interpret_term(&ctx("[z:A + B]"), &t, &thy, &sig).unwrap();
        let got = eval(&m, &inst, &sig.pres).unwrap();
        assert!(got.classify().is_function());
        let want = eval(&Morphism::SumBraid(Object::gen("A"), Object::gen("B")), &inst, &sig.pres).unwrap();
        assert_eq!(got, want);
    }
}
