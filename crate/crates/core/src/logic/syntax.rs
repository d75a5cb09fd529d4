//! Types, terms, formulas, contexts and sequents.

use std::collections::BTreeSet;
use std::fmt;

use indexmap::{IndexMap, IndexSet};

use crate::syntax::Name;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    Regular,
    Coherent,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Regular => "regular",
            Mode::Coherent => "coherent",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum LogicType {
    Basic(Name),
    Prod(Box<LogicType>, Box<LogicType>),
    One,
    Sum(Box<LogicType>, Box<LogicType>),
    Zero,
}

impl LogicType {
    pub fn basic(n: impl Into<Name>) -> Self {
        LogicType::Basic(n.into())
    }

    pub fn prod(a: LogicType, b: LogicType) -> Self {
        LogicType::Prod(Box::new(a), Box::new(b))
    }

    pub fn sum(a: LogicType, b: LogicType) -> Self {
        LogicType::Sum(Box::new(a), Box::new(b))
    }

    pub fn is_basic(&self) -> bool {
        matches!(self, LogicType::Basic(_))
    }

    pub fn uses_sums(&self) -> bool {
        match self {
            LogicType::Sum(..) | LogicType::Zero => true,
            LogicType::Prod(a, b) => a.uses_sums() || b.uses_sums(),
            _ => false,
        }
    }
}

impl fmt::Display for LogicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `*` binds tighter than `+`; both associate to the right.
        match self {
            LogicType::Basic(n) => f.write_str(&n.quoted()),
            LogicType::One => f.write_str("1"),
            LogicType::Zero => f.write_str("0"),
            LogicType::Prod(a, b) => {
                match **a {
                    LogicType::Prod(..) | LogicType::Sum(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                f.write_str(" * ")?;
                match **b {
                    LogicType::Sum(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            LogicType::Sum(a, b) => {
                match **a {
                    LogicType::Sum(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                write!(f, " + {b}")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Var(Name),
    App(Name, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Proj1(Box<Term>),
    Proj2(Box<Term>),
    Star,
    /// Left inclusion into the given sum type.
    Inj1(Box<Term>, LogicType),
    Inj2(Box<Term>, LogicType),
    Case {
        scrutinee: Box<Term>,
        left: (Name, LogicType),
        left_body: Box<Term>,
        right: (Name, LogicType),
        right_body: Box<Term>,
    },
}

impl Term {
    pub fn var(n: impl Into<Name>) -> Term {
        Term::Var(n.into())
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Box::new(a), Box::new(b))
    }

    pub fn proj1(t: Term) -> Term {
        Term::Proj1(Box::new(t))
    }

    pub fn proj2(t: Term) -> Term {
        Term::Proj2(Box::new(t))
    }

    pub fn inj1(t: Term, into: LogicType) -> Term {
        Term::Inj1(Box::new(t), into)
    }

    pub fn inj2(t: Term, into: LogicType) -> Term {
        Term::Inj2(Box::new(t), into)
    }

    pub fn app(f: impl Into<Name>, t: Term) -> Term {
        Term::App(f.into(), Box::new(t))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self, out: &mut IndexSet<Name>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::App(_, t) | Term::Proj1(t) | Term::Proj2(t) | Term::Inj1(t, _) | Term::Inj2(t, _) => t.free_vars(out),
            Term::Pair(a, b) => {
                a.free_vars(out);
                b.free_vars(out);
            }
            Term::Star => {}
            Term::Case { scrutinee, left, left_body, right, right_body } => {
                scrutinee.free_vars(out);
                for (binder, body) in [(&left.0, left_body), (&right.0, right_body)] {
                    let mut inner = IndexSet::new();
                    body.free_vars(&mut inner);
                    inner.shift_remove(binder);
                    out.extend(inner);
                }
            }
        }
    }

    pub fn fv(&self) -> IndexSet<Name> {
        let mut out = IndexSet::new();
        self.free_vars(&mut out);
        out
    }

    /// Names bound or free anywhere in the term.
    fn all_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::App(_, t) | Term::Proj1(t) | Term::Proj2(t) | Term::Inj1(t, _) | Term::Inj2(t, _) => t.all_names(out),
            Term::Pair(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
            Term::Star => {}
            Term::Case { scrutinee, left, left_body, right, right_body } => {
                scrutinee.all_names(out);
                out.insert(left.0.clone());
                out.insert(right.0.clone());
                left_body.all_names(out);
                right_body.all_names(out);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Star => 1,
            Term::App(_, t) | Term::Proj1(t) | Term::Proj2(t) | Term::Inj1(t, _) | Term::Inj2(t, _) => 1 + t.size(),
            Term::Pair(a, b) => 1 + a.size() + b.size(),
            Term::Case { scrutinee, left_body, right_body, .. } => {
                1 + scrutinee.size() + left_body.size() + right_body.size()
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Rel(Name, Vec<Term>),
    Eq(Term, Term),
    Truth,
    Falsity,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(Name, LogicType, Box<Formula>),
}

impl Formula {
    pub fn rel(r: impl Into<Name>, args: Vec<Term>) -> Formula {
        Formula::Rel(r.into(), args)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(x: impl Into<Name>, ty: LogicType, body: Formula) -> Formula {
        Formula::Exists(x.into(), ty, Box::new(body))
    }

    /// Right-nested conjunction; `Truth` when empty.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else {
            return Formula::Truth;
        };
        while let Some(p) = parts.pop() {
            acc = Formula::and(p, acc);
        }
        acc
    }

    /// Right-nested disjunction; `Falsity` when empty.
    pub fn disj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else {
            return Formula::Falsity;
        };
        while let Some(p) = parts.pop() {
            acc = Formula::or(p, acc);
        }
        acc
    }

    /// `∃x₁…∃xₙ. body`, outermost binder first.
    pub fn exists_many(binders: Vec<(Name, LogicType)>, body: Formula) -> Formula {
        binders.into_iter().rev().fold(body, |acc, (x, ty)| Formula::exists(x, ty, acc))
    }

    pub fn free_vars(&self, out: &mut IndexSet<Name>) {
        match self {
            Formula::Rel(_, args) => args.iter().for_each(|t| t.free_vars(out)),
            Formula::Eq(a, b) => {
                a.free_vars(out);
                b.free_vars(out);
            }
            Formula::Truth | Formula::Falsity => {}
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.free_vars(out);
                b.free_vars(out);
            }
            Formula::Exists(x, _, body) => {
                let mut inner = IndexSet::new();
                body.free_vars(&mut inner);
                inner.shift_remove(x);
                out.extend(inner);
            }
        }
    }

    pub fn fv(&self) -> IndexSet<Name> {
        let mut out = IndexSet::new();
        self.free_vars(&mut out);
        out
    }

    fn all_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Formula::Rel(_, args) => args.iter().for_each(|t| t.all_names(out)),
            Formula::Eq(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
            Formula::Truth | Formula::Falsity => {}
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
            Formula::Exists(x, _, body) => {
                out.insert(x.clone());
                body.all_names(out);
            }
        }
    }

    /// Whether the formula uses `∨` or `⊥`.
    pub fn is_coherent_only(&self) -> bool {
        match self {
            Formula::Falsity | Formula::Or(..) => true,
            Formula::And(a, b) => a.is_coherent_only() || b.is_coherent_only(),
            Formula::Exists(_, _, b) => b.is_coherent_only(),
            _ => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Rel(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Formula::Eq(a, b) => 1 + a.size() + b.size(),
            Formula::Truth | Formula::Falsity => 1,
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
            Formula::Exists(_, _, b) => 1 + b.size(),
        }
    }
}

/// An ordered list of typed variables, optionally split into a domain
/// part and a codomain part.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Context {
    pub vars: Vec<(Name, LogicType)>,
    /// Number of leading variables on the domain side; `None` puts every
    /// variable there.
    pub split: Option<usize>,
}

impl Context {
    pub fn new(vars: Vec<(Name, LogicType)>) -> Self {
        Context { vars, split: None }
    }

    pub fn split(dom: Vec<(Name, LogicType)>, cod: Vec<(Name, LogicType)>) -> Self {
        let k = dom.len();
        let mut vars = dom;
        vars.extend(cod);
        Context { vars, split: Some(k) }
    }

    pub fn lookup(&self, x: &Name) -> Option<&LogicType> {
        self.vars.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    pub fn contains(&self, x: &Name) -> bool {
        self.vars.iter().any(|(y, _)| y == x)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn split_point(&self) -> usize {
        self.split.unwrap_or(self.vars.len())
    }

    pub fn dom(&self) -> &[(Name, LogicType)] {
        &self.vars[..self.split_point()]
    }

    pub fn cod(&self) -> &[(Name, LogicType)] {
        &self.vars[self.split_point()..]
    }

    pub fn push(&mut self, x: Name, ty: LogicType) {
        self.vars.push((x, ty));
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.vars.iter().map(|(x, _)| x)
    }

    /// The same variables with no split.
    pub fn unsplit(&self) -> Context {
        Context::new(self.vars.clone())
    }

    pub fn duplicate(&self) -> Option<&Name> {
        let mut seen = BTreeSet::new();
        self.vars.iter().map(|(x, _)| x).find(|x| !seen.insert(*x))
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |vs: &[(Name, LogicType)]| {
            vs.iter().map(|(x, ty)| format!("{}:{ty}", x.quoted())).collect::<Vec<_>>().join(", ")
        };
        write!(f, "[{}", show(self.dom()))?;
        if self.split.is_some() {
            f.write_str(";")?;
            if !self.cod().is_empty() {
                write!(f, " {}", show(self.cod()))?;
            }
        }
        f.write_str("]")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sequent {
    pub ctx: Context,
    pub lhs: Formula,
    pub rhs: Formula,
}

impl Sequent {
    pub fn new(ctx: Context, lhs: Formula, rhs: Formula) -> Self {
        Sequent { ctx, lhs, rhs }
    }
}

/// A signature together with axioms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Theory {
    pub name: Option<Name>,
    pub mode: Mode,
    pub types: IndexSet<Name>,
    /// Function symbols `f : A -> B`; coherent mode only.
    pub functions: IndexMap<Name, (LogicType, LogicType)>,
    /// Relation symbols with their argument types.
    pub relations: IndexMap<Name, Vec<LogicType>>,
    pub axioms: Vec<Sequent>,
}

impl Theory {
    pub fn new(mode: Mode) -> Self {
        Theory {
            name: None,
            mode,
            types: IndexSet::new(),
            functions: IndexMap::new(),
            relations: IndexMap::new(),
            axioms: Vec::new(),
        }
    }
}

/// A name not in `avoid`, built from `base` by appending digits.
pub fn fresh_name(base: &Name, avoid: &BTreeSet<Name>) -> Name {
    let stem = base.as_str().trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (0..)
        .map(|i| Name::from(format!("{stem}{i}")))
        .find(|n| !avoid.contains(n) && !crate::syntax::is_reserved(n.as_str()))
        .expect("infinitely many candidates")
}

/// A simultaneous substitution of terms for variables.
pub type Subst = IndexMap<Name, Term>;

fn subst_names(s: &Subst) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    for (x, t) in s {
        out.insert(x.clone());
        t.all_names(&mut out);
    }
    out
}

impl Term {
    /// Capture-avoiding simultaneous substitution.
    pub fn subst(&self, s: &Subst) -> Term {
        match self {
            Term::Var(x) => s.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, t) => Term::App(f.clone(), Box::new(t.subst(s))),
            Term::Pair(a, b) => Term::pair(a.subst(s), b.subst(s)),
            Term::Proj1(t) => Term::proj1(t.subst(s)),
            Term::Proj2(t) => Term::proj2(t.subst(s)),
            Term::Star => Term::Star,
            Term::Inj1(t, ty) => Term::inj1(t.subst(s), ty.clone()),
            Term::Inj2(t, ty) => Term::inj2(t.subst(s), ty.clone()),
            Term::Case { scrutinee, left, left_body, right, right_body } => {
                let (l, lb) = subst_under_binder(&left.0, &**left_body, s, |b: &Term| b.all_names_set());
                let (r, rb) = subst_under_binder(&right.0, &**right_body, s, |b: &Term| b.all_names_set());
                Term::Case {
                    scrutinee: Box::new(scrutinee.subst(s)),
                    left: (l, left.1.clone()),
                    left_body: Box::new(lb),
                    right: (r, right.1.clone()),
                    right_body: Box::new(rb),
                }
            }
        }
    }

    fn all_names_set(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.all_names(&mut out);
        out
    }

    pub fn rename(&self, from: &Name, to: &Name) -> Term {
        let mut s = Subst::new();
        s.insert(from.clone(), Term::Var(to.clone()));
        self.subst(&s)
    }
}

trait Substitutable: Sized {
    fn subst(&self, s: &Subst) -> Self;
    fn fv_set(&self) -> IndexSet<Name>;
}

impl Substitutable for Term {
    fn subst(&self, s: &Subst) -> Self {
        Term::subst(self, s)
    }
    fn fv_set(&self) -> IndexSet<Name> {
        self.fv()
    }
}

impl Substitutable for Formula {
    fn subst(&self, s: &Subst) -> Self {
        Formula::subst(self, s)
    }
    fn fv_set(&self) -> IndexSet<Name> {
        self.fv()
    }
}

/// Substitutes into `body` under the binder `x`, renaming `x` when it
/// would capture a variable of the substituted terms.
fn subst_under_binder<T: Substitutable>(
    x: &Name,
    body: &T,
    s: &Subst,
    names: impl Fn(&T) -> BTreeSet<Name>,
) -> (Name, T) {
    let fv_body = body.fv_set();
    let mut inner: Subst =
        s.iter().filter(|(y, _)| *y != x && fv_body.contains(*y)).map(|(y, t)| (y.clone(), t.clone())).collect();
    let captures = inner.values().any(|t| t.fv().contains(x));
    if !captures {
        return (x.clone(), body.subst(&inner));
    }
    let mut avoid = subst_names(s);
    avoid.extend(names(body));
    avoid.extend(fv_body.iter().cloned());
    let x2 = fresh_name(x, &avoid);
    inner.insert(x.clone(), Term::Var(x2.clone()));
    (x2, body.subst(&inner))
}

impl Formula {
    /// Capture-avoiding simultaneous substitution.
    pub fn subst(&self, s: &Subst) -> Formula {
        match self {
            Formula::Rel(r, args) => Formula::Rel(r.clone(), args.iter().map(|t| t.subst(s)).collect()),
            Formula::Eq(a, b) => Formula::Eq(a.subst(s), b.subst(s)),
            Formula::Truth => Formula::Truth,
            Formula::Falsity => Formula::Falsity,
            Formula::And(a, b) => Formula::and(a.subst(s), b.subst(s)),
            Formula::Or(a, b) => Formula::or(a.subst(s), b.subst(s)),
            Formula::Exists(x, ty, body) => {
                let (x2, b2) = subst_under_binder(x, &**body, s, |b| {
                    let mut out = BTreeSet::new();
                    b.all_names(&mut out);
                    out
                });
                Formula::exists(x2, ty.clone(), b2)
            }
        }
    }

    pub fn rename(&self, from: &Name, to: &Name) -> Formula {
        let mut s = Subst::new();
        s.insert(from.clone(), Term::Var(to.clone()));
        self.subst(&s)
    }

    pub fn all_names_set(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.all_names(&mut out);
        out
    }
}

/// Renames bound variables in preorder to `v{k}`, `v{k+1}`, …, where
/// `k` is the next free index; free variables follow `env`.
struct Canon {
    next: usize,
    prefix: &'static str,
}

impl Canon {
    fn name(&mut self) -> Name {
        let n = Name::from(format!("{}{}", self.prefix, self.next));
        self.next += 1;
        n
    }

    fn term(&mut self, t: &Term, env: &[(Name, Name)]) -> Term {
        let look =
            |x: &Name| env.iter().rev().find(|(a, _)| a == x).map(|(_, b)| b.clone()).unwrap_or_else(|| x.clone());
        match t {
            Term::Var(x) => Term::Var(look(x)),
            Term::App(f, a) => Term::App(f.clone(), Box::new(self.term(a, env))),
            Term::Pair(a, b) => {
                let a = self.term(a, env);
                Term::pair(a, self.term(b, env))
            }
            Term::Proj1(a) => Term::proj1(self.term(a, env)),
            Term::Proj2(a) => Term::proj2(self.term(a, env)),
            Term::Star => Term::Star,
            Term::Inj1(a, ty) => Term::inj1(self.term(a, env), ty.clone()),
            Term::Inj2(a, ty) => Term::inj2(self.term(a, env), ty.clone()),
            Term::Case { scrutinee, left, left_body, right, right_body } => {
                let sc = self.term(scrutinee, env);
                let l = self.name();
                let mut e = env.to_vec();
                e.push((left.0.clone(), l.clone()));
                let lb = self.term(left_body, &e);
                let r = self.name();
                let mut e = env.to_vec();
                e.push((right.0.clone(), r.clone()));
                let rb = self.term(right_body, &e);
                Term::Case {
                    scrutinee: Box::new(sc),
                    left: (l, left.1.clone()),
                    left_body: Box::new(lb),
                    right: (r, right.1.clone()),
                    right_body: Box::new(rb),
                }
            }
        }
    }

    fn formula(&mut self, f: &Formula, env: &[(Name, Name)]) -> Formula {
        match f {
            Formula::Rel(r, args) => Formula::Rel(r.clone(), args.iter().map(|t| self.term(t, env)).collect()),
            Formula::Eq(a, b) => {
                let a = self.term(a, env);
                Formula::Eq(a, self.term(b, env))
            }
            Formula::Truth => Formula::Truth,
            Formula::Falsity => Formula::Falsity,
            Formula::And(a, b) => {
                let a = self.formula(a, env);
                Formula::and(a, self.formula(b, env))
            }
            Formula::Or(a, b) => {
                let a = self.formula(a, env);
                Formula::or(a, self.formula(b, env))
            }
            Formula::Exists(x, ty, body) => {
                let v = self.name();
                let mut e = env.to_vec();
                e.push((x.clone(), v.clone()));
                Formula::exists(v, ty.clone(), self.formula(body, &e))
            }
        }
    }
}

/// Renames context variables to `v0, v1, …` in order and bound
/// variables to the following indices in preorder. Alpha-equivalent
/// inputs give identical outputs.
pub fn alpha_canonicalize(ctx: &Context, phi: &Formula) -> (Context, Formula) {
    let (ctx, mut fs) = alpha_canonicalize_all(ctx, &[phi]);
    (ctx, fs.pop().unwrap())
}

/// [`alpha_canonicalize`] for several formulas sharing one context.
pub fn alpha_canonicalize_all(ctx: &Context, phis: &[&Formula]) -> (Context, Vec<Formula>) {
    let mut c = Canon { next: 0, prefix: "v" };
    let mut env = Vec::new();
    let mut vars = Vec::new();
    for (x, ty) in &ctx.vars {
        let v = c.name();
        env.push((x.clone(), v.clone()));
        vars.push((v, ty.clone()));
    }
    let out = phis.iter().map(|f| c.formula(f, &env)).collect();
    (Context { vars, split: ctx.split }, out)
}

/// Alpha-equivalence of formulas.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    // Binders become names that cannot be written in source text, so they
    // never meet a free variable.
    let canon = |f: &Formula| Canon { next: 0, prefix: "#" }.formula(f, &[]);
    a == b || canon(a) == canon(b)
}

/// Alpha-equivalence of terms.
pub fn alpha_eq_term(a: &Term, b: &Term) -> bool {
    let canon = |t: &Term| Canon { next: 0, prefix: "#" }.term(t, &[]);
    a == b || canon(a) == canon(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> Term {
        Term::var(x)
    }

    fn a() -> LogicType {
        LogicType::basic("A")
    }

    #[test]
    fn bound_renaming_is_alpha_equivalent() {
        let f = Formula::exists("y", a(), Formula::rel("R", vec![v("x"), v("y")]));
        let g = Formula::exists("w", a(), Formula::rel("R", vec![v("x"), v("w")]));
        assert!(alpha_eq(&f, &g));
        let ctx = Context::new(vec![("x".into(), a())]);
        assert_eq!(alpha_canonicalize(&ctx, &f), alpha_canonicalize(&ctx, &g));
    }

    #[test]
    fn context_renaming_is_canonicalized() {
        let c1 = Context::split(vec![("a".into(), a())], vec![("b".into(), a())]);
        let c2 = Context::split(vec![("x".into(), a())], vec![("y".into(), a())]);
        let f1 = Formula::rel("R", vec![v("a"), v("b")]);
        let f2 = Formula::rel("R", vec![v("x"), v("y")]);
        assert_eq!(alpha_canonicalize(&c1, &f1), alpha_canonicalize(&c2, &f2));
    }

    #[test]
    fn shadowing_innermost_binder_wins() {
        let f = Formula::exists("y", a(), Formula::exists("y", a(), Formula::rel("R", vec![v("y")])));
        let (_, g) = alpha_canonicalize(&Context::default(), &f);
        let expect = Formula::exists("v0", a(), Formula::exists("v1", a(), Formula::rel("R", vec![v("v1")])));
        assert_eq!(g, expect);
        // Idempotent.
        assert_eq!(alpha_canonicalize(&Context::default(), &g).1, g);
    }

    #[test]
    fn free_variables_distinguish() {
        let f = Formula::rel("R", vec![v("x")]);
        let g = Formula::rel("R", vec![v("y")]);
        assert!(!alpha_eq(&f, &g));
    }

    #[test]
    fn substitution_avoids_capture() {
        // (∃y. R(x, y))[y/x] must not capture.
        let f = Formula::exists("y", a(), Formula::rel("R", vec![v("x"), v("y")]));
        let mut s = Subst::new();
        s.insert("x".into(), v("y"));
        let g = f.subst(&s);
        let Formula::Exists(b, _, body) = &g else { panic!() };
        assert_ne!(b.as_str(), "y");
        assert_eq!(**body, Formula::rel("R", vec![v("y"), Term::Var(b.clone())]));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let f = Formula::rel("R", vec![v("x"), v("y")]);
        let mut s = Subst::new();
        s.insert("x".into(), v("y"));
        s.insert("y".into(), v("x"));
        assert_eq!(f.subst(&s), Formula::rel("R", vec![v("y"), v("x")]));
    }

    #[test]
    fn case_binders_are_bound() {
        let t = Term::Case {
            scrutinee: Box::new(v("z")),
            left: ("a".into(), a()),
            left_body: Box::new(v("a")),
            right: ("b".into(), a()),
            right_body: Box::new(v("w")),
        };
        assert_eq!(t.fv().into_iter().collect::<Vec<_>>(), vec![Name::from("z"), Name::from("w")]);
    }

    #[test]
    fn type_display() {
        let t = LogicType::prod(LogicType::sum(a(), LogicType::One), LogicType::prod(a(), a()));
        assert_eq!(t.to_string(), "(A + 1) * A * A");
    }
}
