//! Proof trees and the proof checker.
//!
//! A proof is an explicit tree: every node names its rule, states its
//! conclusion and, where the rule needs one, carries a substitution as a
//! witness. The checker never searches.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::formation::{check_sequent, check_term, LogicError};
use super::syntax::{
    alpha_canonicalize_all, alpha_eq, alpha_eq_term, Context, Formula, LogicType, Mode, Sequent, Subst, Term, Theory,
};
use crate::syntax::Name;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Rule {
    Identity,
    Cut,
    Substitution,
    EqRefl,
    EqSubst,
    EqTerm,
    Proj1,
    Proj2,
    PairEta,
    Incl1,
    Incl2,
    CaseCover,
    CaseDisjoint,
    Singleton,
    Empty,
    Truth,
    Falsity,
    AndIntro,
    AndElimL,
    AndElimR,
    OrElim,
    OrIntroL,
    OrIntroR,
    Distributivity,
    ExistsDown,
    ExistsUp,
    Frobenius,
    ExistsIntro,
    ExistsElim,
    Axiom(usize),
}

impl Rule {
    /// Every rule except `Axiom`, in a fixed order.
    pub const ALL: [Rule; 29] = [
        Rule::Identity,
        Rule::Cut,
        Rule::Substitution,
        Rule::EqRefl,
        Rule::EqSubst,
        Rule::EqTerm,
        Rule::Proj1,
        Rule::Proj2,
        Rule::PairEta,
        Rule::Incl1,
        Rule::Incl2,
        Rule::CaseCover,
        Rule::CaseDisjoint,
        Rule::Singleton,
        Rule::Empty,
        Rule::Truth,
        Rule::Falsity,
        Rule::AndIntro,
        Rule::AndElimL,
        Rule::AndElimR,
        Rule::OrElim,
        Rule::OrIntroL,
        Rule::OrIntroR,
        Rule::Distributivity,
        Rule::ExistsDown,
        Rule::ExistsUp,
        Rule::Frobenius,
        Rule::ExistsIntro,
        Rule::ExistsElim,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Rule::Identity => "identity",
            Rule::Cut => "cut",
            Rule::Substitution => "subst",
            Rule::EqRefl => "eq_refl",
            Rule::EqSubst => "eq_subst",
            Rule::EqTerm => "eq_term",
            Rule::Proj1 => "proj1",
            Rule::Proj2 => "proj2",
            Rule::PairEta => "pair",
            Rule::Incl1 => "incl1",
            Rule::Incl2 => "incl2",
            Rule::CaseCover => "case_cover",
            Rule::CaseDisjoint => "case_disjoint",
            Rule::Singleton => "singleton",
            Rule::Empty => "empty",
            Rule::Truth => "truth",
            Rule::Falsity => "falsity",
            Rule::AndIntro => "and_intro",
            Rule::AndElimL => "and_elim_l",
            Rule::AndElimR => "and_elim_r",
            Rule::OrElim => "or_elim",
            Rule::OrIntroL => "or_intro_l",
            Rule::OrIntroR => "or_intro_r",
            Rule::Distributivity => "distributivity",
            Rule::ExistsDown => "exists_down",
            Rule::ExistsUp => "exists_up",
            Rule::Frobenius => "frobenius",
            Rule::ExistsIntro => "exists_intro",
            Rule::ExistsElim => "exists_elim",
            Rule::Axiom(_) => "axiom",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Rule::ALL.iter().copied().find(|r| r.name() == s)
    }

    /// Rules that exist only in coherent logic.
    pub fn is_coherent_only(&self) -> bool {
        matches!(
            self,
            Rule::EqTerm
                | Rule::Proj1
                | Rule::Proj2
                | Rule::PairEta
                | Rule::Incl1
                | Rule::Incl2
                | Rule::CaseCover
                | Rule::CaseDisjoint
                | Rule::Singleton
                | Rule::Empty
                | Rule::Falsity
                | Rule::OrElim
                | Rule::OrIntroL
                | Rule::OrIntroR
                | Rule::Distributivity
        )
    }

    fn premise_count(&self) -> usize {
        match self {
            Rule::Cut | Rule::AndIntro | Rule::OrElim | Rule::ExistsElim => 2,
            Rule::Substitution | Rule::ExistsDown | Rule::ExistsUp | Rule::ExistsIntro => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Axiom(i) => write!(f, "axiom({i})"),
            r => f.write_str(r.name()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProofTree {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<ProofTree>,
    /// Terms substituted for variables: premise variables for `subst`,
    /// the quantified variable for `exists_intro`.
    pub witness: Subst,
    /// Optional label from the source text.
    pub name: Option<Name>,
}

impl ProofTree {
    pub fn leaf(rule: Rule, conclusion: Sequent) -> Self {
        ProofTree { rule, conclusion, premises: Vec::new(), witness: Subst::new(), name: None }
    }

    pub fn node(rule: Rule, conclusion: Sequent, premises: Vec<ProofTree>) -> Self {
        ProofTree { premises, ..ProofTree::leaf(rule, conclusion) }
    }

    pub fn with_witness(mut self, witness: Subst) -> Self {
        self.witness = witness;
        self
    }

    /// Rules used anywhere in the tree.
    pub fn rules(&self, out: &mut BTreeSet<Rule>) {
        out.insert(match self.rule {
            Rule::Axiom(_) => Rule::Axiom(0),
            r => r,
        });
        for p in &self.premises {
            p.rules(out);
        }
    }

    pub fn sequents(&self) -> Vec<&Sequent> {
        let mut out = vec![&self.conclusion];
        for p in &self.premises {
            out.extend(p.sequents());
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ProofError {
    #[error("{0}")]
    RuleMismatch(String),
    #[error("no axiom with index {0}")]
    UnknownAxiomIndex(usize),
    #[error("not alpha-equivalent: expected {expected}, found {found}")]
    AlphaMismatch { expected: String, found: String },
    #[error("ill-formed sequent: {0}")]
    Formation(#[from] LogicError),
    #[error("expected {expected} premises, found {found}")]
    PremiseCount { expected: usize, found: usize },
    #[error("rule only available in coherent mode")]
    ModeViolation,
    #[error("rule disabled")]
    Disabled,
}

/// One failed node.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagnostic {
    /// Premise indices from the root.
    pub path: Vec<usize>,
    pub rule: Rule,
    pub error: ProofError,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(usize::to_string).collect();
        let at = if path.is_empty() { "root".to_string() } else { path.join(".") };
        write!(f, "node {at}: rule {}: {}", self.rule, self.error)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ProofReport {
    pub diagnostics: Vec<Diagnostic>,
}

impl ProofReport {
    pub fn ok(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

impl fmt::Display for ProofReport {
    /// One diagnostic per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.diagnostics {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    pub disabled: BTreeSet<Rule>,
}

pub fn check_proof(proof: &ProofTree, thy: &Theory) -> ProofReport {
    check_proof_with(proof, thy, &CheckOptions::default())
}

pub fn check_proof_with(proof: &ProofTree, thy: &Theory, opts: &CheckOptions) -> ProofReport {
    let mut report = ProofReport::default();
    walk(proof, thy, opts, &mut Vec::new(), &mut report);
    report
}

fn walk(node: &ProofTree, thy: &Theory, opts: &CheckOptions, path: &mut Vec<usize>, out: &mut ProofReport) {
    if let Err(error) = check_node(node, thy, opts) {
        out.diagnostics.push(Diagnostic { path: path.clone(), rule: node.rule, error });
    }
    for (i, p) in node.premises.iter().enumerate() {
        path.push(i);
        walk(p, thy, opts, path, out);
        path.pop();
    }
}

fn mismatch(reason: impl Into<String>) -> ProofError {
    ProofError::RuleMismatch(reason.into())
}

fn expect_alpha(expected: &Formula, found: &Formula) -> Result<(), ProofError> {
    if alpha_eq(expected, found) {
        Ok(())
    } else {
        Err(ProofError::AlphaMismatch {
            expected: super::text::print_formula(expected),
            found: super::text::print_formula(found),
        })
    }
}

fn expect_alpha_term(expected: &Term, found: &Term) -> Result<(), ProofError> {
    if alpha_eq_term(expected, found) {
        Ok(())
    } else {
        Err(ProofError::AlphaMismatch {
            expected: super::text::print_term(expected),
            found: super::text::print_term(found),
        })
    }
}

fn same_vars(a: &Context, b: &Context) -> bool {
    a.vars == b.vars
}

fn expect_same_context(premise: &Sequent, concl: &Sequent) -> Result<(), ProofError> {
    if same_vars(&premise.ctx, &concl.ctx) {
        Ok(())
    } else {
        Err(mismatch(format!("premise context {} differs from conclusion context {}", premise.ctx, concl.ctx)))
    }
}

/// The variable that `big` adds to `small`, if `big` is `small` with
/// exactly one more entry.
fn extra_variable(small: &Context, big: &Context) -> Option<(Name, LogicType)> {
    if big.len() != small.len() + 1 {
        return None;
    }
    (0..big.len()).find_map(|i| {
        let mut rest = big.vars.clone();
        let v = rest.remove(i);
        (rest == small.vars && !small.contains(&v.0)).then_some(v)
    })
}

/// Splits a chain of conjunctions into its conjuncts.
fn conjuncts(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::And(a, b) => {
            conjuncts(a, out);
            conjuncts(b, out);
        }
        Formula::Truth => {}
        other => out.push(other.clone()),
    }
}

/// Reads `x₁ = y₁ ∧ … ∧ xₙ = yₙ` with variable sides and distinct `xᵢ`.
fn var_equations(f: &Formula) -> Option<Subst> {
    let mut parts = Vec::new();
    conjuncts(f, &mut parts);
    let mut s = Subst::new();
    for p in parts {
        match p {
            Formula::Eq(Term::Var(x), y @ Term::Var(_)) => {
                if s.insert(x, y).is_some() {
                    return None;
                }
            }
            _ => return None,
        }
    }
    Some(s)
}

/// Matches `(∃x:A. ι₁(x) = t)` and `(∃x:B. ι₂(x) = t)`, returning `t`
/// and both binders.
fn inclusion_witness(f: &Formula, left: bool) -> Option<(&Term, &Name)> {
    let Formula::Exists(x, _, body) = f else { return None };
    let Formula::Eq(inc, t) = &**body else { return None };
    let inner = match (inc, left) {
        (Term::Inj1(v, _), true) | (Term::Inj2(v, _), false) => v,
        _ => return None,
    };
    (**inner == Term::Var(x.clone())).then_some((t, x))
}

fn case_pair<'a>(a: &'a Formula, b: &'a Formula, ctx: &Context) -> Result<(), ProofError> {
    let shape = "expected (exists x:A. inl(x) = t) and (exists x:B. inr(x) = t)";
    let (t1, x1) = inclusion_witness(a, true).ok_or_else(|| mismatch(shape))?;
    let (t2, x2) = inclusion_witness(b, false).ok_or_else(|| mismatch(shape))?;
    for x in [x1, x2] {
        if ctx.contains(x) {
            return Err(mismatch(format!(
                "side condition [x \u{2209} \u{393}] violated: {} occurs in the context",
                x.quoted()
            )));
        }
    }
    expect_alpha_term(t1, t2)
}

fn check_node(node: &ProofTree, thy: &Theory, opts: &CheckOptions) -> Result<(), ProofError> {
    let rule = node.rule;
    if opts.disabled.contains(&rule) {
        return Err(ProofError::Disabled);
    }
    if rule.is_coherent_only() && thy.mode == Mode::Regular {
        return Err(ProofError::ModeViolation);
    }
    let expected = match rule {
        Rule::Axiom(_) => 0,
        r => r.premise_count(),
    };
    if node.premises.len() != expected {
        return Err(ProofError::PremiseCount { expected, found: node.premises.len() });
    }
    let s = &node.conclusion;
    check_sequent(s, thy)?;
    let ps: Vec<&Sequent> = node.premises.iter().map(|p| &p.conclusion).collect();
    let (lhs, rhs, ctx) = (&s.lhs, &s.rhs, &s.ctx);
    match rule {
        Rule::Identity => expect_alpha(lhs, rhs),
        Rule::Cut => {
            expect_same_context(ps[0], s)?;
            expect_same_context(ps[1], s)?;
            expect_alpha(lhs, &ps[0].lhs)?;
            expect_alpha(&ps[0].rhs, &ps[1].lhs)?;
            expect_alpha(rhs, &ps[1].rhs)
        }
        Rule::Substitution => {
            let p = ps[0];
            let mut sub = Subst::new();
            for key in node.witness.keys() {
                if !p.ctx.contains(key) {
                    return Err(mismatch(format!("{} is not a premise variable", key.quoted())));
                }
            }
            for (x, ty) in &p.ctx.vars {
                let t = node.witness.get(x).cloned().unwrap_or_else(|| Term::Var(x.clone()));
                let tt = check_term(ctx, &t, thy)?;
                if &tt != ty {
                    return Err(mismatch(format!("substituted term for {} has type {tt}, expected {ty}", x.quoted())));
                }
                sub.insert(x.clone(), t);
            }
            expect_alpha(&p.lhs.subst(&sub), lhs)?;
            expect_alpha(&p.rhs.subst(&sub), rhs)
        }
        Rule::EqRefl => match rhs {
            Formula::Eq(a, b) => expect_alpha_term(a, b),
            _ => Err(mismatch("conclusion must be t = t")),
        },
        Rule::EqSubst => {
            let Formula::And(..) = lhs else {
                return Err(mismatch("premise formula must be (x = y) & phi"));
            };
            // Try every split of the right-nested chain into equations and the rest.
            let mut cur = lhs;
            let mut eqs: Vec<Formula> = Vec::new();
            let mut last = None;
            while let Formula::And(a, b) = cur {
                eqs.push((**a).clone());
                let e = Formula::conj(eqs.clone());
                if let Some(sub) = var_equations(&e) {
                    let cand = b.subst(&sub);
                    if alpha_eq(&cand, rhs) {
                        return Ok(());
                    }
                    last = Some(cand);
                }
                cur = b;
            }
            match last {
                Some(cand) => expect_alpha(&cand, rhs),
                None => Err(mismatch("left side must start with equations between variables")),
            }
        }
        Rule::EqTerm => {
            let sub = var_equations(lhs).ok_or_else(|| mismatch("left side must be equations between variables"))?;
            match rhs {
                Formula::Eq(t, u) => expect_alpha_term(&t.subst(&sub), u),
                _ => Err(mismatch("conclusion must be t = t[y/x]")),
            }
        }
        Rule::Proj1 | Rule::Proj2 => {
            let Formula::Eq(Term::Proj1(p) | Term::Proj2(p), u) = rhs else {
                return Err(mismatch("conclusion must be pi(<t, s>) = t"));
            };
            let first = matches!(rhs, Formula::Eq(Term::Proj1(_), _));
            if first != (rule == Rule::Proj1) {
                return Err(mismatch("wrong projection"));
            }
            let Term::Pair(a, b) = &**p else {
                return Err(mismatch("projection must be applied to a pair"));
            };
            expect_alpha_term(if first { a } else { b }, u)
        }
        Rule::PairEta => match rhs {
            Formula::Eq(Term::Pair(a, b), u) => match (&**a, &**b) {
                (Term::Proj1(t1), Term::Proj2(t2)) => {
                    expect_alpha_term(t1, t2)?;
                    expect_alpha_term(t1, u)
                }
                _ => Err(mismatch("conclusion must be <pi1(t), pi2(t)> = t")),
            },
            _ => Err(mismatch("conclusion must be <pi1(t), pi2(t)> = t")),
        },
        Rule::Incl1 | Rule::Incl2 => {
            let Formula::Eq(Term::Case { scrutinee, left, left_body, right, right_body }, u) = rhs else {
                return Err(mismatch("conclusion must be case(inl(t); x. r; y. s) = r[t/x]"));
            };
            let (inner, binder, body) = match (&**scrutinee, rule) {
                (Term::Inj1(t, _), Rule::Incl1) => (t, &left.0, left_body),
                (Term::Inj2(t, _), Rule::Incl2) => (t, &right.0, right_body),
                _ => return Err(mismatch("scrutinee must be an inclusion matching the rule")),
            };
            let mut sub = Subst::new();
            sub.insert(binder.clone(), (**inner).clone());
            expect_alpha_term(&body.subst(&sub), u)
        }
        Rule::CaseCover => match rhs {
            Formula::Or(a, b) => case_pair(a, b, ctx),
            _ => Err(mismatch("conclusion must be a disjunction of two inclusion witnesses")),
        },
        Rule::CaseDisjoint => {
            if rhs != &Formula::Falsity {
                return Err(mismatch("conclusion must be false"));
            }
            match lhs {
                Formula::And(a, b) => case_pair(a, b, ctx),
                _ => Err(mismatch("left side must conjoin two inclusion witnesses")),
            }
        }
        Rule::Singleton => match rhs {
            Formula::Eq(_, Term::Star) => Ok(()),
            _ => Err(mismatch("conclusion must be t = *")),
        },
        Rule::Empty => {
            if rhs != &Formula::Falsity {
                return Err(mismatch("conclusion must be false"));
            }
            if ctx.vars.iter().any(|(_, t)| *t == LogicType::Zero) {
                Ok(())
            } else {
                Err(mismatch("context has no variable of type 0"))
            }
        }
        Rule::Truth => match rhs {
            Formula::Truth => Ok(()),
            _ => Err(mismatch("conclusion must be true")),
        },
        Rule::Falsity => match lhs {
            Formula::Falsity => Ok(()),
            _ => Err(mismatch("left side must be false")),
        },
        Rule::AndIntro => {
            expect_same_context(ps[0], s)?;
            expect_same_context(ps[1], s)?;
            let Formula::And(a, b) = rhs else {
                return Err(mismatch("conclusion must be a conjunction"));
            };
            expect_alpha(lhs, &ps[0].lhs)?;
            expect_alpha(lhs, &ps[1].lhs)?;
            expect_alpha(a, &ps[0].rhs)?;
            expect_alpha(b, &ps[1].rhs)
        }
        Rule::AndElimL | Rule::AndElimR => match lhs {
            Formula::And(a, b) => expect_alpha(if rule == Rule::AndElimL { a } else { b }, rhs),
            _ => Err(mismatch("left side must be a conjunction")),
        },
        Rule::OrElim => {
            expect_same_context(ps[0], s)?;
            expect_same_context(ps[1], s)?;
            let Formula::Or(a, b) = lhs else {
                return Err(mismatch("left side must be a disjunction"));
            };
            expect_alpha(a, &ps[0].lhs)?;
            expect_alpha(b, &ps[1].lhs)?;
            expect_alpha(rhs, &ps[0].rhs)?;
            expect_alpha(rhs, &ps[1].rhs)
        }
        Rule::OrIntroL | Rule::OrIntroR => match rhs {
            Formula::Or(a, b) => expect_alpha(if rule == Rule::OrIntroL { a } else { b }, lhs),
            _ => Err(mismatch("conclusion must be a disjunction")),
        },
        Rule::Distributivity => {
            let Formula::And(phi, or) = lhs else {
                return Err(mismatch("left side must be phi & (psi | chi)"));
            };
            let Formula::Or(psi, chi) = &**or else {
                return Err(mismatch("left side must be phi & (psi | chi)"));
            };
            let want = Formula::or(
                Formula::and((**phi).clone(), (**psi).clone()),
                Formula::and((**phi).clone(), (**chi).clone()),
            );
            expect_alpha(&want, rhs)
        }
        Rule::ExistsDown | Rule::ExistsUp => {
            let (outer, inner) = if rule == Rule::ExistsDown { (s, ps[0]) } else { (ps[0], s) };
            let (x, ty) = extra_variable(&outer.ctx, &inner.ctx).ok_or_else(|| {
                mismatch(format!("context {} must extend {} by one fresh variable", inner.ctx, outer.ctx))
            })?;
            let Formula::Exists(y, yty, body) = &outer.lhs else {
                return Err(mismatch("left side of the quantified sequent must be exists x:A. phi"));
            };
            if *yty != ty {
                return Err(mismatch(format!("bound variable has type {yty}, context adds {ty}")));
            }
            expect_alpha(&body.rename(y, &x), &inner.lhs)?;
            expect_alpha(&outer.rhs, &inner.rhs)
        }
        Rule::Frobenius => {
            let Formula::And(phi, ex) = lhs else {
                return Err(mismatch("left side must be phi & (exists x:A. psi)"));
            };
            let Formula::Exists(x, ty, psi) = &**ex else {
                return Err(mismatch("left side must be phi & (exists x:A. psi)"));
            };
            if ctx.contains(x) {
                return Err(mismatch(format!(
                    "side condition [x \u{2209} \u{393}] violated: {} occurs in the context",
                    x.quoted()
                )));
            }
            let want = Formula::exists(x.clone(), ty.clone(), Formula::and((**phi).clone(), (**psi).clone()));
            expect_alpha(&want, rhs)
        }
        Rule::ExistsIntro => {
            let p = ps[0];
            expect_same_context(p, s)?;
            let Formula::Exists(x, ty, psi) = rhs else {
                return Err(mismatch("conclusion must be phi |- exists x:A. psi"));
            };
            let t = node
                .witness
                .get(x)
                .or_else(|| (node.witness.len() == 1).then(|| &node.witness[0]))
                .ok_or_else(|| mismatch(format!("missing witness term for {}", x.quoted())))?;
            let tt = check_term(ctx, t, thy)?;
            if &tt != ty {
                return Err(mismatch(format!("witness has type {tt}, expected {ty}")));
            }
            let mut sub = Subst::new();
            sub.insert(x.clone(), t.clone());
            expect_alpha(lhs, &p.lhs)?;
            expect_alpha(&psi.subst(&sub), &p.rhs)
        }
        Rule::ExistsElim => {
            let (p1, p2) = (ps[0], ps[1]);
            expect_same_context(p1, s)?;
            expect_alpha(lhs, &p1.lhs)?;
            let Formula::Exists(x, ty, psi) = &p1.rhs else {
                return Err(mismatch("first premise must conclude exists x:A. psi"));
            };
            let (z, zty) = extra_variable(ctx, &p2.ctx)
                .ok_or_else(|| mismatch("second premise context must extend the conclusion context by one variable"))?;
            if &zty != ty {
                return Err(mismatch(format!("bound variable has type {ty}, second premise adds {zty}")));
            }
            expect_alpha(&psi.rename(x, &z), &p2.lhs)?;
            expect_alpha(rhs, &p2.rhs)
        }
        Rule::Axiom(i) => {
            let ax = thy.axioms.get(i).ok_or(ProofError::UnknownAxiomIndex(i))?;
            let types = |c: &Context| c.vars.iter().map(|(_, t)| t.clone()).collect::<Vec<_>>();
            if types(&ax.ctx) != types(ctx) {
                return Err(mismatch(format!("context {} does not match axiom context {}", ctx, ax.ctx)));
            }
            let (_, a) = alpha_canonicalize_all(&ax.ctx.unsplit(), &[&ax.lhs, &ax.rhs]);
            let (_, b) = alpha_canonicalize_all(&ctx.unsplit(), &[lhs, rhs]);
            if a == b {
                Ok(())
            } else {
                Err(ProofError::AlphaMismatch {
                    expected: format!(
                        "{} |- {}",
                        super::text::print_formula(&ax.lhs),
                        super::text::print_formula(&ax.rhs)
                    ),
                    found: format!("{} |- {}", super::text::print_formula(lhs), super::text::print_formula(rhs)),
                })
            }
        }
    }
}
