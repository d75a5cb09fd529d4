//! Formation rules: typing of terms and well-formedness of formulas.

use thiserror::Error;

use super::syntax::{Context, Formula, LogicType, Mode, Sequent, Term, Theory};
use crate::syntax::Name;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum LogicError {
    #[error("unbound variable {0}")]
    UnboundVariable(Name),
    #[error("type mismatch in {context}: expected {expected}, found {found}")]
    TypeMismatch { context: String, expected: String, found: LogicType },
    #[error("not allowed in {mode} mode: {what}")]
    ModeViolation { mode: Mode, what: String },
    #[error("unknown symbol {0}")]
    UnknownSymbol(Name),
    #[error("{symbol} expects {expected} arguments, got {found}")]
    Arity { symbol: Name, expected: usize, found: usize },
    #[error("variable {0} occurs twice in the context")]
    DuplicateVariable(Name),
}

fn mismatch(context: impl Into<String>, expected: impl Into<String>, found: LogicType) -> LogicError {
    LogicError::TypeMismatch { context: context.into(), expected: expected.into(), found }
}

/// Checks that a type only mentions declared basic types and respects the mode.
pub fn check_type(ty: &LogicType, thy: &Theory) -> Result<(), LogicError> {
    match ty {
        LogicType::Basic(n) => {
            if thy.types.contains(n) {
                Ok(())
            } else {
                Err(LogicError::UnknownSymbol(n.clone()))
            }
        }
        _ if thy.mode == Mode::Regular => {
            Err(LogicError::ModeViolation { mode: Mode::Regular, what: format!("compound type {ty}") })
        }
        LogicType::Prod(a, b) | LogicType::Sum(a, b) => {
            check_type(a, thy)?;
            check_type(b, thy)
        }
        LogicType::One | LogicType::Zero => Ok(()),
    }
}

pub fn check_context(ctx: &Context, thy: &Theory) -> Result<(), LogicError> {
    if let Some(x) = ctx.duplicate() {
        return Err(LogicError::DuplicateVariable(x.clone()));
    }
    for (_, ty) in &ctx.vars {
        check_type(ty, thy)?;
    }
    Ok(())
}

/// Returns the type of `t` in `ctx`.
pub fn check_term(ctx: &Context, t: &Term, thy: &Theory) -> Result<LogicType, LogicError> {
    if thy.mode == Mode::Regular && !t.is_var() {
        return Err(LogicError::ModeViolation { mode: Mode::Regular, what: "terms other than variables".into() });
    }
    match t {
        Term::Var(x) => ctx.lookup(x).cloned().ok_or_else(|| LogicError::UnboundVariable(x.clone())),
        Term::App(f, a) => {
            let (dom, cod) = thy.functions.get(f).ok_or_else(|| LogicError::UnknownSymbol(f.clone()))?;
            let ty = check_term(ctx, a, thy)?;
            if &ty != dom {
                return Err(mismatch(format!("argument of {}", f.quoted()), dom.to_string(), ty));
            }
            Ok(cod.clone())
        }
        Term::Pair(a, b) => Ok(LogicType::prod(check_term(ctx, a, thy)?, check_term(ctx, b, thy)?)),
        Term::Proj1(a) | Term::Proj2(a) => match check_term(ctx, a, thy)? {
            LogicType::Prod(l, r) => Ok(if matches!(t, Term::Proj1(_)) { *l } else { *r }),
            other => Err(mismatch("projection", "a product type", other)),
        },
        Term::Star => Ok(LogicType::One),
        Term::Inj1(a, into) | Term::Inj2(a, into) => {
            check_type(into, thy)?;
            let LogicType::Sum(l, r) = into else {
                return Err(mismatch("inclusion", "a sum type", into.clone()));
            };
            let want = if matches!(t, Term::Inj1(..)) { l } else { r };
            let ty = check_term(ctx, a, thy)?;
            if ty != **want {
                return Err(mismatch("inclusion", want.to_string(), ty));
            }
            Ok(into.clone())
        }
        Term::Case { scrutinee, left, left_body, right, right_body } => {
            let st = check_term(ctx, scrutinee, thy)?;
            let want = LogicType::sum(left.1.clone(), right.1.clone());
            if st != want {
                return Err(mismatch("case scrutinee", want.to_string(), st));
            }
            let mut lc = ctx.unsplit();
            lc.push(left.0.clone(), left.1.clone());
            let lt = check_term(&lc, left_body, thy)?;
            let mut rc = ctx.unsplit();
            rc.push(right.0.clone(), right.1.clone());
            let rt = check_term(&rc, right_body, thy)?;
            if lt != rt {
                return Err(mismatch("case branches", lt.to_string(), rt));
            }
            Ok(lt)
        }
    }
}

/// Confirms that `phi` is a formula in context `ctx`.
pub fn check_formula(ctx: &Context, phi: &Formula, thy: &Theory) -> Result<(), LogicError> {
    match phi {
        Formula::Rel(r, args) => {
            let tys = thy.relations.get(r).ok_or_else(|| LogicError::UnknownSymbol(r.clone()))?;
            if tys.len() != args.len() {
                return Err(LogicError::Arity { symbol: r.clone(), expected: tys.len(), found: args.len() });
            }
            for (i, (t, want)) in args.iter().zip(tys).enumerate() {
                let ty = check_term(ctx, t, thy)?;
                if &ty != want {
                    return Err(mismatch(format!("argument {} of {}", i + 1, r.quoted()), want.to_string(), ty));
                }
            }
            Ok(())
        }
        Formula::Eq(a, b) => {
            let (l, r) = (check_term(ctx, a, thy)?, check_term(ctx, b, thy)?);
            if l != r {
                return Err(mismatch("equality", l.to_string(), r));
            }
            Ok(())
        }
        Formula::Truth => Ok(()),
        Formula::Falsity | Formula::Or(..) if thy.mode == Mode::Regular => Err(LogicError::ModeViolation {
            mode: Mode::Regular,
            what: if matches!(phi, Formula::Falsity) { "falsity" } else { "disjunction" }.into(),
        }),
        Formula::Falsity => Ok(()),
        Formula::And(a, b) | Formula::Or(a, b) => {
            check_formula(ctx, a, thy)?;
            check_formula(ctx, b, thy)
        }
        Formula::Exists(x, ty, body) => {
            check_type(ty, thy)?;
            let mut inner = ctx.unsplit();
            inner.push(x.clone(), ty.clone());
            check_formula(&inner, body, thy)
        }
    }
}

pub fn check_sequent(s: &Sequent, thy: &Theory) -> Result<(), LogicError> {
    check_context(&s.ctx, thy)?;
    check_formula(&s.ctx, &s.lhs, thy)?;
    check_formula(&s.ctx, &s.rhs, thy)
}

/// Checks the signature and every axiom.
pub fn check_theory(thy: &Theory) -> Result<(), LogicError> {
    if thy.mode == Mode::Regular {
        if let Some(f) = thy.functions.keys().next() {
            return Err(LogicError::ModeViolation {
                mode: Mode::Regular,
                what: format!("function symbol {}", f.quoted()),
            });
        }
    }
    for (dom, cod) in thy.functions.values() {
        check_type(dom, thy)?;
        check_type(cod, thy)?;
    }
    for (r, tys) in &thy.relations {
        if thy.mode == Mode::Coherent && tys.len() != 2 {
            return Err(LogicError::Arity { symbol: r.clone(), expected: 2, found: tys.len() });
        }
        for ty in tys {
            check_type(ty, thy)?;
        }
    }
    for ax in &thy.axioms {
        check_sequent(ax, thy)?;
    }
    Ok(())
}
