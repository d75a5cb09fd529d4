//! Text formats for theories, formulas and proofs.
//!
//! ```text
//! theory foaf
//! mode regular
//! type Person
//! rel knows : Person, Person
//! axiom [x:Person, y:Person] "friend of"(x, y) |- knows(x, y)
//! ```
//!
//! Formulas: `exists y:B. R(x, y) & S(y, z)`, `|` for disjunction,
//! `true`, `false`, `t = s`. `&` binds tighter than `|`; a quantifier
//! body extends as far right as possible. Terms: variables, `f(t)`,
//! `<t, s>`, `pi1(t)`, `pi2(t)`, `*`, `inl{A + B}(t)`, `inr{A + B}(t)`,
//! `case(t; x:A. r; y:B. s)`. Types: `*` binds tighter than `+`, `1` and
//! `0` are the units. A context `[x:A; y:B]` splits at the semicolon.
//!
//! Proofs nest rule applications:
//!
//! ```text
//! proof weaken_friend
//! by cut : [x:Person, y:Person] "friend of"(x, y) |- true {
//!   by axiom(0) : [x:Person, y:Person] "friend of"(x, y) |- knows(x, y)
//!   by truth : [x:Person, y:Person] knows(x, y) |- true
//! }
//! ```
//!
//! `by subst with [x := t] : …` and `by exists_intro with [x := t] : …`
//! supply witnesses.

use super::proof::{ProofTree, Rule};
use super::syntax::{Context, Formula, LogicType, Mode, Sequent, Subst, Term, Theory};
use crate::syntax::Name;
use crate::text::lexer::{Cursor, SyntaxError, Tok};

fn parse_all<T>(src: &str, f: impl FnOnce(&mut Cursor) -> Result<T, SyntaxError>) -> Result<T, SyntaxError> {
    let mut c = Cursor::new(src)?;
    let v = f(&mut c)?;
    c.expect_eof()?;
    Ok(v)
}

pub fn parse_type(src: &str) -> Result<LogicType, SyntaxError> {
    parse_all(src, ty)
}

pub fn parse_term(src: &str) -> Result<Term, SyntaxError> {
    parse_all(src, term)
}

pub fn parse_formula(src: &str) -> Result<Formula, SyntaxError> {
    parse_all(src, formula)
}

pub fn parse_context(src: &str) -> Result<Context, SyntaxError> {
    parse_all(src, context)
}

/// `[x:A; y:B] φ`: a context followed by a formula over it.
pub fn parse_formula_in_context(src: &str) -> Result<(Context, Formula), SyntaxError> {
    parse_all(src, |c| Ok((context(c)?, formula(c)?)))
}

pub fn parse_sequent(src: &str) -> Result<Sequent, SyntaxError> {
    parse_all(src, |c| {
        let mut v = sequents(c)?;
        if v.len() != 1 {
            return Err(c.error("`|-`"));
        }
        Ok(v.pop().unwrap())
    })
}

pub(crate) fn ty(c: &mut Cursor) -> Result<LogicType, SyntaxError> {
    let a = ty_product(c)?;
    if c.eat_sym("+") {
        return Ok(LogicType::sum(a, ty(c)?));
    }
    Ok(a)
}

fn ty_product(c: &mut Cursor) -> Result<LogicType, SyntaxError> {
    let a = ty_atom(c)?;
    if c.eat_sym("*") {
        return Ok(LogicType::prod(a, ty_product(c)?));
    }
    Ok(a)
}

fn ty_atom(c: &mut Cursor) -> Result<LogicType, SyntaxError> {
    if c.eat_kw("1") {
        return Ok(LogicType::One);
    }
    if c.eat_kw("0") {
        return Ok(LogicType::Zero);
    }
    if c.eat_sym("(") {
        let t = ty(c)?;
        c.expect_sym(")")?;
        return Ok(t);
    }
    c.name().map(LogicType::Basic).map_err(|_| c.error("a type"))
}

pub(crate) fn term(c: &mut Cursor) -> Result<Term, SyntaxError> {
    if c.eat_sym("*") {
        return Ok(Term::Star);
    }
    if c.eat_sym("<") {
        let a = term(c)?;
        c.expect_sym(",")?;
        let b = term(c)?;
        c.expect_sym(">")?;
        return Ok(Term::pair(a, b));
    }
    for kw in ["pi1", "pi2"] {
        if c.eat_kw(kw) {
            c.expect_sym("(")?;
            let t = term(c)?;
            c.expect_sym(")")?;
            return Ok(if kw == "pi1" { Term::proj1(t) } else { Term::proj2(t) });
        }
    }
    for kw in ["inl", "inr"] {
        if c.eat_kw(kw) {
            c.expect_sym("{")?;
            let into = ty(c)?;
            c.expect_sym("}")?;
            c.expect_sym("(")?;
            let t = term(c)?;
            c.expect_sym(")")?;
            return Ok(if kw == "inl" { Term::inj1(t, into) } else { Term::inj2(t, into) });
        }
    }
    if c.eat_kw("case") {
        c.expect_sym("(")?;
        let scrutinee = Box::new(term(c)?);
        let branch = |c: &mut Cursor| -> Result<((Name, LogicType), Box<Term>), SyntaxError> {
            c.expect_sym(";")?;
            let x = c.name()?;
            c.expect_sym(":")?;
            let t = ty(c)?;
            c.expect_sym(".")?;
            Ok(((x, t), Box::new(term(c)?)))
        };
        let (left, left_body) = branch(c)?;
        let (right, right_body) = branch(c)?;
        c.expect_sym(")")?;
        return Ok(Term::Case { scrutinee, left, left_body, right, right_body });
    }
    let n = c.name().map_err(|_| c.error("a term"))?;
    if c.eat_sym("(") {
        let t = term(c)?;
        c.expect_sym(")")?;
        return Ok(Term::App(n, Box::new(t)));
    }
    Ok(Term::Var(n))
}

pub(crate) fn formula(c: &mut Cursor) -> Result<Formula, SyntaxError> {
    let a = conjunction(c)?;
    if c.eat_sym("|") {
        return Ok(Formula::or(a, formula(c)?));
    }
    Ok(a)
}

fn conjunction(c: &mut Cursor) -> Result<Formula, SyntaxError> {
    if c.at_kw("exists") {
        return unary(c);
    }
    let a = unary(c)?;
    if c.eat_sym("&") {
        return Ok(Formula::and(a, conjunction(c)?));
    }
    Ok(a)
}

fn unary(c: &mut Cursor) -> Result<Formula, SyntaxError> {
    if c.eat_kw("exists") {
        let x = c.name()?;
        c.expect_sym(":")?;
        let t = ty(c)?;
        c.expect_sym(".")?;
        return Ok(Formula::exists(x, t, formula(c)?));
    }
    if c.eat_kw("true") {
        return Ok(Formula::Truth);
    }
    if c.eat_kw("false") {
        return Ok(Formula::Falsity);
    }
    if c.eat_sym("(") {
        let f = formula(c)?;
        c.expect_sym(")")?;
        return Ok(f);
    }
    // `name(args)` is a relation unless an `=` follows a single argument.
    if c.at_name() && c.peek_at(1) == &Tok::Sym("(") {
        let r = c.name()?;
        c.advance();
        let args = c.list(",", ")", term)?;
        c.expect_sym(")")?;
        if args.len() == 1 && c.at_sym("=") {
            c.advance();
            let lhs = Term::App(r, Box::new(args.into_iter().next().unwrap()));
            return Ok(Formula::Eq(lhs, term(c)?));
        }
        return Ok(Formula::Rel(r, args));
    }
    let lhs = term(c).map_err(|_| c.error("a formula"))?;
    c.expect_sym("=")?;
    Ok(Formula::Eq(lhs, term(c)?))
}

fn binding(c: &mut Cursor) -> Result<(Name, LogicType), SyntaxError> {
    let x = c.name()?;
    c.expect_sym(":")?;
    Ok((x, ty(c)?))
}

pub(crate) fn context(c: &mut Cursor) -> Result<Context, SyntaxError> {
    c.expect_sym("[")?;
    let dom = if c.at_sym(";") { Vec::new() } else { c.list(",", "]", binding)? };
    let ctx = if c.eat_sym(";") {
        let cod = c.list(",", "]", binding)?;
        Context::split(dom, cod)
    } else {
        Context::new(dom)
    };
    c.expect_sym("]")?;
    Ok(ctx)
}

/// `ctx lhs |- rhs`, `ctx |- rhs`, or `ctx lhs -||- rhs` (two sequents).
fn sequents(c: &mut Cursor) -> Result<Vec<Sequent>, SyntaxError> {
    let ctx = context(c)?;
    let lhs = if c.at_sym("|-") { Formula::Truth } else { formula(c)? };
    if c.eat_sym("-||-") {
        let rhs = formula(c)?;
        return Ok(vec![Sequent::new(ctx.clone(), lhs.clone(), rhs.clone()), Sequent::new(ctx, rhs, lhs)]);
    }
    c.expect_sym("|-")?;
    let rhs = formula(c)?;
    Ok(vec![Sequent::new(ctx, lhs, rhs)])
}

pub fn parse_theory(src: &str) -> Result<Theory, SyntaxError> {
    let mut c = Cursor::new(src)?;
    let mut thy = Theory::new(Mode::Regular);
    if c.eat_kw("theory") {
        thy.name = Some(c.name()?);
    }
    while !c.at_eof() {
        if c.eat_kw("mode") {
            thy.mode = if c.eat_kw("regular") {
                Mode::Regular
            } else if c.eat_kw("coherent") {
                Mode::Coherent
            } else {
                return Err(c.error("`regular` or `coherent`"));
            };
        } else if c.eat_kw("type") {
            for n in c.list(",", "\0", |c| c.name())? {
                thy.types.insert(n);
            }
        } else if c.eat_kw("rel") {
            let r = c.name()?;
            let args = if c.eat_sym(":") { c.list(",", "\0", ty)? } else { Vec::new() };
            thy.relations.insert(r, args);
        } else if c.eat_kw("fn") {
            let f = c.name()?;
            c.expect_sym(":")?;
            let dom = ty(&mut c)?;
            c.expect_sym("->")?;
            let cod = ty(&mut c)?;
            thy.functions.insert(f, (dom, cod));
        } else if c.eat_kw("axiom") {
            thy.axioms.extend(sequents(&mut c)?);
        } else {
            return Err(c.error("`mode`, `type`, `rel`, `fn` or `axiom`"));
        }
    }
    Ok(thy)
}

fn proof_node(c: &mut Cursor) -> Result<ProofTree, SyntaxError> {
    c.expect_kw("by")?;
    let rule = match c.peek().clone() {
        Tok::Word(w) if w == "axiom" => {
            c.advance();
            c.expect_sym("(")?;
            let i = match c.advance() {
                Tok::Word(d) => d.parse::<usize>().map_err(|_| c.error("an axiom index"))?,
                _ => return Err(c.error("an axiom index")),
            };
            c.expect_sym(")")?;
            Rule::Axiom(i)
        }
        Tok::Word(w) => match Rule::from_name(&w) {
            Some(r) => {
                c.advance();
                r
            }
            None => return Err(c.error("a rule name")),
        },
        _ => return Err(c.error("a rule name")),
    };
    let mut witness = Subst::new();
    if c.eat_kw("with") {
        c.expect_sym("[")?;
        for (x, t) in c.list(",", "]", |c| {
            let x = c.name()?;
            c.expect_sym(":=")?;
            Ok((x, term(c)?))
        })? {
            witness.insert(x, t);
        }
        c.expect_sym("]")?;
    }
    c.expect_sym(":")?;
    let mut seq = sequents(c)?;
    if seq.len() != 1 {
        return Err(c.error("a single sequent"));
    }
    let conclusion = seq.pop().unwrap();
    let mut premises = Vec::new();
    if c.eat_sym("{") {
        while !c.at_sym("}") {
            premises.push(proof_node(c)?);
        }
        c.expect_sym("}")?;
    }
    Ok(ProofTree { rule, conclusion, premises, witness, name: None })
}

/// Parses a file of one or more `proof NAME by …` blocks.
pub fn parse_proofs(src: &str) -> Result<Vec<ProofTree>, SyntaxError> {
    let mut c = Cursor::new(src)?;
    let mut out = Vec::new();
    while !c.at_eof() {
        let name = if c.eat_kw("proof") { Some(c.name()?) } else { None };
        let mut p = proof_node(&mut c)?;
        p.name = name;
        out.push(p);
    }
    Ok(out)
}

/// Parses a file holding exactly one proof.
pub fn parse_proof(src: &str) -> Result<ProofTree, SyntaxError> {
    let mut v = parse_proofs(src)?;
    if v.len() != 1 {
        return Err(SyntaxError {
            line: 1,
            col: 1,
            expected: "exactly one proof".into(),
            found: format!("{} proofs", v.len()),
        });
    }
    Ok(v.pop().unwrap())
}

pub fn print_type(t: &LogicType) -> String {
    t.to_string()
}

pub fn print_term(t: &Term) -> String {
    match t {
        Term::Var(x) => x.quoted(),
        Term::App(f, a) => format!("{}({})", f.quoted(), print_term(a)),
        Term::Pair(a, b) => format!("<{}, {}>", print_term(a), print_term(b)),
        Term::Proj1(a) => format!("pi1({})", print_term(a)),
        Term::Proj2(a) => format!("pi2({})", print_term(a)),
        Term::Star => "*".into(),
        Term::Inj1(a, ty) => format!("inl{{{ty}}}({})", print_term(a)),
        Term::Inj2(a, ty) => format!("inr{{{ty}}}({})", print_term(a)),
        Term::Case { scrutinee, left, left_body, right, right_body } => format!(
            "case({}; {}:{}. {}; {}:{}. {})",
            print_term(scrutinee),
            left.0.quoted(),
            left.1,
            print_term(left_body),
            right.0.quoted(),
            right.1,
            print_term(right_body)
        ),
    }
}

/// Canonical text of a formula; parsing it gives back the same tree.
pub fn print_formula(f: &Formula) -> String {
    fmt_formula(f, 0)
}

fn fmt_formula(f: &Formula, prec: u8) -> String {
    let wrap = |s: String, own: u8| if prec > own { format!("({s})") } else { s };
    match f {
        Formula::Rel(r, args) => {
            let a: Vec<String> = args.iter().map(print_term).collect();
            format!("{}({})", r.quoted(), a.join(", "))
        }
        Formula::Eq(a, b) => format!("{} = {}", print_term(a), print_term(b)),
        Formula::Truth => "true".into(),
        Formula::Falsity => "false".into(),
        Formula::Or(a, b) => wrap(format!("{} | {}", fmt_formula(a, 2), fmt_formula(b, 1)), 1),
        Formula::And(a, b) => wrap(format!("{} & {}", fmt_formula(a, 3), fmt_formula(b, 2)), 2),
        Formula::Exists(x, ty, body) => wrap(format!("exists {}:{ty}. {}", x.quoted(), fmt_formula(body, 0)), 0),
    }
}

pub fn print_sequent(s: &Sequent) -> String {
    format!("{} {} |- {}", s.ctx, print_formula(&s.lhs), print_formula(&s.rhs))
}

pub fn print_theory(thy: &Theory) -> String {
    let mut out = String::new();
    if let Some(n) = &thy.name {
        out += &format!("theory {}\n", n.quoted());
    }
    out += &format!("mode {}\n", thy.mode);
    for t in &thy.types {
        out += &format!("type {}\n", t.quoted());
    }
    for (r, tys) in &thy.relations {
        if tys.is_empty() {
            out += &format!("rel {}\n", r.quoted());
        } else {
            let a: Vec<String> = tys.iter().map(LogicType::to_string).collect();
            out += &format!("rel {} : {}\n", r.quoted(), a.join(", "));
        }
    }
    for (f, (d, c)) in &thy.functions {
        out += &format!("fn {} : {d} -> {c}\n", f.quoted());
    }
    for ax in &thy.axioms {
        out += &format!("axiom {}\n", print_sequent(ax));
    }
    out
}

fn print_node(p: &ProofTree, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    out.push_str(&pad);
    out.push_str(&format!("by {}", p.rule));
    if !p.witness.is_empty() {
        let w: Vec<String> = p.witness.iter().map(|(x, t)| format!("{} := {}", x.quoted(), print_term(t))).collect();
        out.push_str(&format!(" with [{}]", w.join(", ")));
    }
    out.push_str(&format!(" : {}", print_sequent(&p.conclusion)));
    if p.premises.is_empty() {
        out.push('\n');
        return;
    }
    out.push_str(" {\n");
    for q in &p.premises {
        print_node(q, indent + 1, out);
    }
    out.push_str(&pad);
    out.push_str("}\n");
}

pub fn print_proof(p: &ProofTree) -> String {
    let mut out = String::new();
    if let Some(n) = &p.name {
        out += &format!("proof {}\n", n.quoted());
    }
    print_node(p, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_round_trip() {
        for src in [
            "exists y:B. R(x, y) & S(y, z)",
            "(exists y:B. R(x, y)) & S(x, x) | false",
            "x = y & (true | \"friend of\"(x, y))",
            "f(x) = pi1(<x, *>)",
            "case(z; a:A. inr{B + A}(a); b:B. inl{B + A}(b)) = w",
            "exists p:A * (B + 1). true",
        ] {
            let f = parse_formula(src).unwrap();
            assert_eq!(print_formula(&f), src, "{src}");
        }
    }

    #[test]
    fn precedence() {
        let f = parse_formula("a = b & c = d | e = f").unwrap();
        assert!(matches!(f, Formula::Or(..)));
        let g = parse_formula("exists x:A. a = x & b = x").unwrap();
        let Formula::Exists(_, _, body) = g else { panic!() };
        assert!(matches!(*body, Formula::And(..)));
    }

    #[test]
    fn contexts() {
        for src in ["[x:A; y:B]", "[; y:B]", "[x:A;]", "[x:A, y:A * A]", "[]"] {
            assert_eq!(parse_context(src).unwrap().to_string(), src);
        }
    }

    #[test]
    fn theory_round_trip() {
        let src = "theory t\nmode coherent\ntype A\ntype B\nrel R : A, B\nfn f : A -> B\n\
                   axiom [x:A, y:B] R(x, y) |- f(x) = y\n";
        let thy = parse_theory(src).unwrap();
        assert_eq!(print_theory(&thy), src);
    }

    #[test]
    fn bidirectional_axiom_gives_two() {
        let thy = parse_theory("type A\nrel R : A\nrel S : A\naxiom [x:A] R(x) -||- S(x)").unwrap();
        assert_eq!(thy.axioms.len(), 2);
        assert_eq!(thy.axioms[1].lhs, Formula::rel("S", vec![Term::var("x")]));
    }

    #[test]
    fn proof_round_trip() {
        let src = "proof p\nby cut : [x:A] R(x) |- true {\n  by axiom(0) : [x:A] R(x) |- S(x)\n  \
                   by truth : [x:A] S(x) |- true\n}\n";
        let p = parse_proof(src).unwrap();
        assert_eq!(p.rule, Rule::Cut);
        assert_eq!(p.premises[0].rule, Rule::Axiom(0));
        assert_eq!(print_proof(&p), src);
        let q = parse_proof(
            "by exists_intro with [y := x] : [x:A] R(x) |- exists y:A. R(y) {\n\
                             by identity : [x:A] R(x) |- R(x)\n}",
        )
        .unwrap();
        assert_eq!(q.witness["y"], Term::var("x"));
    }

    #[test]
    fn error_positions() {
        let e = parse_theory("type A\naxiom [x:A] R(x) |-").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.expected, "a formula");
        let e = parse_proof("by bogus : [] true |- true").unwrap_err();
        assert_eq!((e.line, e.col, e.expected.as_str()), (1, 4, "a rule name"));
    }
}
