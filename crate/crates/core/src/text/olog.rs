//! Text formats for objects, morphism expressions, presentations and instances.
//!
//! Expression syntax, loosest binding first: `f ; g` composes, `f + g`
//! is the cotensor, `f * g` the tensor. Every constructor also has a
//! prefix form, which is what the printer emits:
//!
//! ```text
//! compose(f, g)  tensor(f, g)  sum(f, g)  meet(f, g)  join(f, g)  dagger(f)
//! id(X) copy(X) delete(X) merge(X) create(X) unit(X) counit(X)
//! comerge(X) cocreate(X) cocopy(X) codelete(X)
//! braid(X, Y) sbraid(X, Y) top(X, Y) bottom(X, Y) dist(X, Y, Z) distinv(X, Y, Z)
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::lexer::{Cursor, SyntaxError, Tok};
use crate::finrel::{Element, Instance};
use crate::linrel::{LinInstance, LinRel, Q};
use crate::presentation::Presentation;
use crate::syntax::{Morphism, Name, Object};

pub fn parse_object(src: &str) -> Result<Object, SyntaxError> {
    let mut c = Cursor::new(src)?;
    let o = object(&mut c)?;
    c.expect_eof()?;
    Ok(o)
}

pub fn parse_morphism(src: &str) -> Result<Morphism, SyntaxError> {
    let mut c = Cursor::new(src)?;
    let m = morphism(&mut c)?;
    c.expect_eof()?;
    Ok(m)
}

pub(crate) fn object(c: &mut Cursor) -> Result<Object, SyntaxError> {
    let mut parts = vec![object_product(c)?];
    while c.eat_sym("+") {
        parts.push(object_product(c)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Object::sum(parts) })
}

fn object_product(c: &mut Cursor) -> Result<Object, SyntaxError> {
    let mut parts = vec![object_atom(c)?];
    while c.eat_sym("*") {
        parts.push(object_atom(c)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Object::tensor(parts) })
}

fn object_atom(c: &mut Cursor) -> Result<Object, SyntaxError> {
    if c.eat_kw("I") {
        return Ok(Object::Unit);
    }
    if c.eat_kw("O") {
        return Ok(Object::Zero);
    }
    if c.eat_sym("(") {
        let o = object(c)?;
        c.expect_sym(")")?;
        return Ok(o);
    }
    c.name().map(Object::Gen).map_err(|_| c.error("an object"))
}

pub(crate) fn morphism(c: &mut Cursor) -> Result<Morphism, SyntaxError> {
    let mut parts = vec![morphism_sum(c)?];
    while c.eat_sym(";") {
        parts.push(morphism_sum(c)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Morphism::Compose(parts) })
}

fn morphism_sum(c: &mut Cursor) -> Result<Morphism, SyntaxError> {
    let mut parts = vec![morphism_product(c)?];
    while c.eat_sym("+") {
        parts.push(morphism_product(c)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Morphism::SumTensor(parts) })
}

fn morphism_product(c: &mut Cursor) -> Result<Morphism, SyntaxError> {
    let mut parts = vec![morphism_atom(c)?];
    while c.eat_sym("*") {
        parts.push(morphism_atom(c)?);
    }
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Morphism::Tensor(parts) })
}

fn morphism_atom(c: &mut Cursor) -> Result<Morphism, SyntaxError> {
    use Morphism::*;
    if c.eat_sym("(") {
        let m = morphism(c)?;
        c.expect_sym(")")?;
        return Ok(m);
    }
    let kw = match c.peek() {
        Tok::Word(w) if crate::syntax::is_reserved(w) => w.clone(),
        _ => return c.name().map(Generator).map_err(|_| c.error("a morphism expression")),
    };
    c.advance();
    c.expect_sym("(")?;
    let obj1 = |c: &mut Cursor| object(c);
    let m = match kw.as_str() {
        "compose" | "tensor" | "sum" => {
            let parts = c.list(",", ")", morphism)?;
            match kw.as_str() {
                "compose" => Compose(parts),
                "tensor" => Tensor(parts),
                _ => SumTensor(parts),
            }
        }
        "meet" | "join" => {
            let a = morphism(c)?;
            c.expect_sym(",")?;
            let b = morphism(c)?;
            if kw == "meet" {
                a.meet(b)
            } else {
                a.join(b)
            }
        }
        "dagger" => morphism(c)?.dagger(),
        "id" => Identity(obj1(c)?),
        "copy" => Copy(obj1(c)?),
        "delete" => Delete(obj1(c)?),
        "merge" => Merge(obj1(c)?),
        "create" => Create(obj1(c)?),
        "unit" => Unit(obj1(c)?),
        "counit" => Counit(obj1(c)?),
        "comerge" => CoMerge(obj1(c)?),
        "cocreate" => CoCreate(obj1(c)?),
        "cocopy" => CoCopy(obj1(c)?),
        "codelete" => CoDelete(obj1(c)?),
        "braid" | "sbraid" | "top" | "bottom" => {
            let x = object(c)?;
            c.expect_sym(",")?;
            let y = object(c)?;
            match kw.as_str() {
                "braid" => Braid(x, y),
                "sbraid" => SumBraid(x, y),
                "top" => Top(x, y),
                _ => Bottom(x, y),
            }
        }
        "dist" | "distinv" => {
            let x = object(c)?;
            c.expect_sym(",")?;
            let y = object(c)?;
            c.expect_sym(",")?;
            let z = object(c)?;
            if kw == "dist" {
                Distribute(x, y, z)
            } else {
                DistributeInv(x, y, z)
            }
        }
        _ => return Err(c.error("a morphism constructor")),
    };
    c.expect_sym(")")?;
    Ok(m)
}

/// Canonical prefix form of an expression. Parsing it gives back the
/// same tree for expressions whose objects are normalized.
pub fn print_morphism(m: &Morphism) -> String {
    use Morphism::*;
    let list = |kw: &str, ps: &[Morphism]| {
        let inner: Vec<String> = ps.iter().map(print_morphism).collect();
        format!("{kw}({})", inner.join(", "))
    };
    match m {
        Generator(n) => n.quoted(),
        Identity(x) => format!("id({x})"),
        Compose(ps) => list("compose", ps),
        Tensor(ps) => list("tensor", ps),
        SumTensor(ps) => list("sum", ps),
        Braid(x, y) => format!("braid({x}, {y})"),
        Copy(x) => format!("copy({x})"),
        Delete(x) => format!("delete({x})"),
        Merge(x) => format!("merge({x})"),
        Create(x) => format!("create({x})"),
        Dagger(a) => format!("dagger({})", print_morphism(a)),
        Unit(x) => format!("unit({x})"),
        Counit(x) => format!("counit({x})"),
        Meet(a, b) => format!("meet({}, {})", print_morphism(a), print_morphism(b)),
        Top(x, y) => format!("top({x}, {y})"),
        SumBraid(x, y) => format!("sbraid({x}, {y})"),
        CoMerge(x) => format!("comerge({x})"),
        CoCreate(x) => format!("cocreate({x})"),
        CoCopy(x) => format!("cocopy({x})"),
        CoDelete(x) => format!("codelete({x})"),
        Join(a, b) => format!("join({}, {})", print_morphism(a), print_morphism(b)),
        Bottom(x, y) => format!("bottom({x}, {y})"),
        Distribute(x, y, z) => format!("dist({x}, {y}, {z})"),
        DistributeInv(x, y, z) => format!("distinv({x}, {y}, {z})"),
    }
}

impl std::fmt::Display for Morphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_morphism(self))
    }
}

/// Parses an olog file:
///
/// ```text
/// olog foaf
/// distributive                      # optional
/// type Person, Organization
/// rel "friend of" : Person -> Person
/// axiom "friend of" => knows
/// axiom knows == dagger(knows)      # stored as two subsumptions
/// ```
pub fn parse_olog(src: &str) -> Result<Presentation, SyntaxError> {
    let mut c = Cursor::new(src)?;
    let mut p = Presentation::new();
    if c.eat_kw("olog") {
        p.name = Some(c.name()?);
    }
    while !c.at_eof() {
        if c.eat_kw("distributive") {
            p.distributive = true;
        } else if c.eat_kw("type") {
            for n in c.list(",", "\0", |c| c.name())? {
                p.add_object(n);
            }
        } else if c.eat_kw("rel") {
            let n = c.name()?;
            c.expect_sym(":")?;
            let dom = object(&mut c)?;
            c.expect_sym("->")?;
            let cod = object(&mut c)?;
            p.add_generator(n, dom, cod);
        } else if c.eat_kw("axiom") {
            let lhs = morphism(&mut c)?;
            if c.eat_sym("=>") {
                p.add_axiom(lhs, morphism(&mut c)?);
            } else if c.eat_sym("==") {
                p.add_equation(lhs, morphism(&mut c)?);
            } else {
                return Err(c.error("`=>` or `==`"));
            }
        } else {
            return Err(c.error("`type`, `rel`, `axiom` or `distributive`"));
        }
    }
    Ok(p)
}

/// Prints a presentation; equalities appear as two subsumptions.
pub fn print_olog(p: &Presentation) -> String {
    let mut out = String::new();
    if let Some(n) = &p.name {
        out += &format!("olog {}\n", n.quoted());
    }
    if p.distributive {
        out += "distributive\n";
    }
    for o in &p.objects {
        out += &format!("type {}\n", o.quoted());
    }
    for (g, s) in &p.generators {
        out += &format!("rel {} : {} -> {}\n", g.quoted(), s.dom, s.cod);
    }
    for a in &p.axioms {
        out += &format!("axiom {} => {}\n", print_morphism(&a.lhs), print_morphism(&a.rhs));
    }
    out
}

/// Parses `L => R`, a subsumption to test.
pub fn parse_conjecture(src: &str) -> Result<(Morphism, Morphism), SyntaxError> {
    let mut c = Cursor::new(src)?;
    let lhs = morphism(&mut c)?;
    c.expect_sym("=>")?;
    let rhs = morphism(&mut c)?;
    c.expect_eof()?;
    Ok((lhs, rhs))
}

pub(crate) fn element(c: &mut Cursor) -> Result<Element, SyntaxError> {
    if c.eat_sym("*") {
        return Ok(Element::Star);
    }
    if c.eat_sym("(") {
        let parts = c.list(",", ")", element)?;
        c.expect_sym(")")?;
        return Ok(Element::tuple(parts));
    }
    for (kw, left) in [("inl", true), ("inr", false)] {
        if c.at_kw(kw) && c.peek_at(1) == &Tok::Sym("(") {
            c.advance();
            c.advance();
            let e = Box::new(element(c)?);
            c.expect_sym(")")?;
            return Ok(if left { Element::Inl(e) } else { Element::Inr(e) });
        }
    }
    match c.peek().clone() {
        Tok::Word(w) => {
            c.advance();
            Ok(Element::Atom(Name::from(w)))
        }
        Tok::Quoted(q) => {
            c.advance();
            Ok(Element::Atom(Name::from(q)))
        }
        _ => Err(c.error("an element")),
    }
}

pub fn parse_element(src: &str) -> Result<Element, SyntaxError> {
    let mut c = Cursor::new(src)?;
    let e = element(&mut c)?;
    c.expect_eof()?;
    Ok(e)
}

/// Parses an instance file against the presentation it interprets.
///
/// ```text
/// instance foaf
/// type Person = {P1, P2}
/// rel "friend of" = {(P1, P2), (P2, P1)}
/// rel salary = {((P1, O1), 30000)}
/// ```
///
/// A relation entry is a pair `(a, b)` of a domain and a codomain
/// element, or the flat tuple of all domain and codomain components.
pub fn parse_instance(src: &str, pres: &Presentation) -> Result<Instance, SyntaxError> {
    let mut c = Cursor::new(src)?;
    let mut inst = Instance::new();
    if c.eat_kw("instance") {
        inst.name = Some(c.name()?);
    }
    while !c.at_eof() {
        if c.eat_kw("type") {
            let n = c.name()?;
            c.expect_sym("=")?;
            c.expect_sym("{")?;
            let atoms = c.list(",", "}", |c| match element(c)? {
                Element::Atom(a) => Ok(a),
                _ => Err(c.error("an atom")),
            })?;
            c.expect_sym("}")?;
            inst.carriers.insert(n, atoms.into_iter().collect());
        } else if c.eat_kw("rel") {
            let n = c.name()?;
            c.expect_sym("=")?;
            c.expect_sym("{")?;
            let mut pairs = std::collections::BTreeSet::new();
            if !c.at_sym("}") {
                loop {
                    let err = c.error(format!("an entry of {}", n.quoted()));
                    let e = element(&mut c)?;
                    pairs.insert(split_entry(&inst, pres, &n, e).ok_or(err)?);
                    if !c.eat_sym(",") {
                        break;
                    }
                }
            }
            c.expect_sym("}")?;
            inst.relations.insert(n, pairs);
        } else {
            return Err(c.error("`type` or `rel`"));
        }
    }
    Ok(inst)
}

fn split_entry(inst: &Instance, pres: &Presentation, rel: &Name, e: Element) -> Option<(Element, Element)> {
    let Some(sig) = pres.generators.get(rel) else {
        // Unknown generator: keep pairs as written; signature checks report it.
        return match e {
            Element::Pair(a, b) => Some((*a, *b)),
            _ => None,
        };
    };
    if let Element::Pair(a, b) = &e {
        if inst.index_of(&sig.dom, a).is_some() && inst.index_of(&sig.cod, b).is_some() {
            return Some(((**a).clone(), (**b).clone()));
        }
    }
    let nd = sig.dom.factors().len();
    let mut parts = e.untuple(nd + sig.cod.factors().len())?;
    let cod = parts.split_off(nd);
    Some((Element::tuple(parts), Element::tuple(cod)))
}

/// Prints an instance, relations in canonical carrier order.
pub fn print_instance(inst: &Instance, pres: &Presentation) -> String {
    let mut out = String::new();
    if let Some(n) = &inst.name {
        out += &format!("instance {}\n", n.quoted());
    }
    for (o, atoms) in &inst.carriers {
        let a: Vec<String> = atoms.iter().map(|a| a.quoted()).collect();
        out += &format!("type {} = {{{}}}\n", o.quoted(), a.join(", "));
    }
    for (g, pairs) in &inst.relations {
        let body = match pres.generators.get(g).and_then(|s| inst.generator_relation(g, s).ok()) {
            Some(rel) => inst.show(&rel),
            None => {
                let ps: Vec<String> = pairs.iter().map(|(a, b)| format!("({a}, {b})")).collect();
                format!("{{{}}}", ps.join(", "))
            }
        };
        out += &format!("rel {} = {body}\n", g.quoted());
    }
    out
}

fn rational(c: &mut Cursor) -> Result<Q, SyntaxError> {
    let neg = c.eat_sym("-");
    let int = |c: &mut Cursor| -> Result<BigInt, SyntaxError> {
        match c.peek().clone() {
            Tok::Word(w) if w.chars().all(|d| d.is_ascii_digit()) => {
                c.advance();
                Ok(w.parse().expect("digits"))
            }
            _ => Err(c.error("a number")),
        }
    };
    let n = int(c)?;
    let d = if c.eat_sym("/") { int(c)? } else { BigInt::from(1) };
    if d.is_zero() {
        return Err(c.error("a nonzero denominator"));
    }
    let v = Q::new(n, d);
    Ok(if neg { -v } else { v })
}

/// Parses a linear instance file:
///
/// ```text
/// linear instance lines
/// dim V = 1
/// rel L = span {(1, 2)}
/// ```
///
/// Each spanning vector lists the domain coordinates, then the codomain ones.
pub fn parse_lin_instance(src: &str, pres: &Presentation) -> Result<LinInstance, SyntaxError> {
    let mut c = Cursor::new(src)?;
    let mut inst = LinInstance::default();
    if c.eat_kw("linear") {
        c.expect_kw("instance")?;
        inst.name = Some(c.name()?);
    }
    while !c.at_eof() {
        if c.eat_kw("dim") {
            let n = c.name()?;
            c.expect_sym("=")?;
            let d = match c.advance() {
                Tok::Word(w) => w.parse::<usize>().map_err(|_| c.error("a dimension"))?,
                _ => return Err(c.error("a dimension")),
            };
            inst.dims.insert(n, d);
        } else if c.eat_kw("rel") {
            let n = c.name()?;
            let sig = pres.generators.get(&n).ok_or_else(|| c.error("a generator of the presentation"))?.clone();
            let shape_err = c.error("dimensions for the generator's objects");
            let (dd, cd) =
                (inst.dim(&sig.dom).map_err(|_| shape_err.clone())?, inst.dim(&sig.cod).map_err(|_| shape_err)?);
            c.expect_sym("=")?;
            c.expect_kw("span")?;
            c.expect_sym("{")?;
            let vecs = c.list(",", "}", |c| {
                c.expect_sym("(")?;
                let v = c.list(",", ")", rational)?;
                c.expect_sym(")")?;
                if v.len() != dd + cd {
                    return Err(c.error(format!("a vector of length {}", dd + cd)));
                }
                Ok(v)
            })?;
            c.expect_sym("}")?;
            inst.relations.insert(n, LinRel::span(dd, cd, vecs).expect("lengths checked"));
        } else {
            return Err(c.error("`dim` or `rel`"));
        }
    }
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infix_and_prefix_agree() {
        let a = parse_morphism("f ; g * h + k").unwrap();
        let b = parse_morphism("compose(f, sum(tensor(g, h), k))").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn print_then_parse_is_identity() {
        let src = "compose(copy(A * B), tensor(\"friend of\", dagger(g)), merge(I), \
                   meet(top(A, O), bottom(A + B, A)), dist(A, B, C))";
        let m = parse_morphism(src).unwrap();
        assert_eq!(print_morphism(&m), src);
        assert_eq!(parse_morphism(&print_morphism(&m)).unwrap(), m);
    }

    #[test]
    fn objects_normalize_while_parsing() {
        assert_eq!(
            parse_object("(A * I) * (B * C)").unwrap(),
            Object::Tensor(vec![Object::gen("A"), Object::gen("B"), Object::gen("C")])
        );
        assert_eq!(parse_object("O + A").unwrap(), Object::gen("A"));
    }

    #[test]
    fn olog_file() {
        let p = parse_olog(
            "olog t\n type A, B\n rel f : A -> B\n rel \"g h\" : A * A -> I\n\
             axiom f => f\n axiom f == f ; id(B)\n",
        )
        .unwrap();
        assert_eq!(p.objects.len(), 2);
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.axioms.len(), 3);
        assert_eq!(parse_olog(&print_olog(&p)).unwrap(), p);
        p.validate().unwrap();
    }

    #[test]
    fn olog_syntax_error_position() {
        let e = parse_olog("type A\nrel f : A => A\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 11));
        assert_eq!(e.expected, "`->`");
    }

    #[test]
    fn instance_entries_nested_or_flat() {
        let p = parse_olog("type P, G, N\nrel s : P * G -> N\nrel e : P -> I").unwrap();
        let i = parse_instance(
            "type P = {p1}\ntype G = {o1}\ntype N = {\"30,000\", 7}\n\
             rel s = {((p1, o1), \"30,000\"), (p1, o1, 7)}\nrel e = {(p1, *)}",
            &p,
        )
        .unwrap();
        assert_eq!(i.relations["s"].len(), 2);
        i.check_signatures(&p).unwrap();
        let again = parse_instance(&print_instance(&i, &p), &p).unwrap();
        assert_eq!(again, i);
    }

    #[test]
    fn elements_with_tags() {
        let e = parse_element("inl((a, inr(*)))").unwrap();
        assert_eq!(e.to_string(), "inl((a, inr(*)))");
    }

    #[test]
    fn linear_instance() {
        let p = parse_olog("type V\nrel L : V -> V").unwrap();
        let i = parse_lin_instance("linear instance l\ndim V = 1\nrel L = span {(2, -1/2)}", &p).unwrap();
        assert_eq!(i.relations["L"].to_string(), "1 -1/4\n");
    }
}
