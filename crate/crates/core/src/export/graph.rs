//! Instances as property graphs via the category of elements.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use indexmap::{IndexMap, IndexSet};

use crate::finrel::{Element, EvalError, Instance};
use crate::presentation::Presentation;
use crate::syntax::{Name, Object};

/// A vertex `(X, x)`. Product vertices carry the product object and a tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Vertex {
    pub ty: Object,
    pub element: Element,
}

impl Vertex {
    pub fn id(&self) -> String {
        format!("{}:{}", self.ty, self.element)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Edge {
    pub src: Vertex,
    pub label: Name,
    pub dst: Vertex,
    pub directed: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ElementsOptions {
    /// Types stored as vertex properties instead of vertices.
    pub primitive: BTreeSet<Name>,
    /// One undirected edge for each symmetric pair of a symmetric relation.
    pub undirected_symmetric: bool,
    /// Vertices for tuples of product domains and codomains, with projection edges.
    pub product_vertices: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ElementsGraph {
    pub vertices: IndexSet<Vertex>,
    /// Vertex properties: generator name to values, per vertex.
    pub properties: IndexMap<Vertex, BTreeMap<Name, Vec<Element>>>,
    pub edges: Vec<Edge>,
}

impl ElementsGraph {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }
}

fn is_primitive(o: &Object, opts: &ElementsOptions) -> bool {
    matches!(o, Object::Gen(n) if opts.primitive.contains(n))
}

/// The vertex for `e : o`, or `None` when `o` has no vertices under `opts`.
fn vertex_of(o: &Object, e: &Element, opts: &ElementsOptions) -> Option<Vertex> {
    match o {
        Object::Gen(n) if !opts.primitive.contains(n) => Some(Vertex { ty: o.clone(), element: e.clone() }),
        Object::Tensor(_) if opts.product_vertices => Some(Vertex { ty: o.clone(), element: e.clone() }),
        _ => None,
    }
}

/// Restriction of the category of elements to generator objects and
/// generator relations. Generators with a primitive codomain become vertex
/// properties; generators touching compound objects are dropped unless
/// product vertices are enabled.
pub fn category_of_elements(
    inst: &Instance,
    pres: &Presentation,
    opts: &ElementsOptions,
) -> Result<ElementsGraph, EvalError> {
    inst.check_signatures(pres)?;
    let mut g = ElementsGraph::default();
    for t in &pres.objects {
        if opts.primitive.contains(t) {
            continue;
        }
        for a in inst.carriers.get(t).into_iter().flatten() {
            g.vertices.insert(Vertex { ty: Object::Gen(t.clone()), element: Element::Atom(a.clone()) });
        }
    }
    let product = |g: &mut ElementsGraph, o: &Object, e: &Element| {
        let Object::Tensor(fs) = o else { return };
        if !opts.product_vertices {
            return;
        }
        let v = Vertex { ty: o.clone(), element: e.clone() };
        if !g.vertices.insert(v.clone()) {
            return;
        }
        let parts = e.untuple(fs.len()).expect("tuple of the product");
        for (i, (f, p)) in fs.iter().zip(parts).enumerate() {
            let label = Name::new(format!("proj {}", i + 1));
            if let Some(w) = vertex_of(f, &p, opts) {
                g.edges.push(Edge { src: v.clone(), label, dst: w, directed: true });
            } else if is_primitive(f, opts) {
                g.properties.entry(v.clone()).or_default().entry(label).or_default().push(p);
            }
        }
    };
    for (name, sig) in &pres.generators {
        let pairs = inst.relations.get(name).cloned().unwrap_or_default();
        let symmetric = opts.undirected_symmetric
            && sig.dom == sig.cod
            && pairs.iter().all(|(a, b)| pairs.contains(&(b.clone(), a.clone())));
        for (a, b) in &pairs {
            product(&mut g, &sig.dom, a);
            product(&mut g, &sig.cod, b);
            let src = vertex_of(&sig.dom, a, opts);
            let dst = vertex_of(&sig.cod, b, opts);
            match (src, dst) {
                (Some(s), Some(d)) => {
                    if symmetric && d < s {
                        continue;
                    }
                    g.edges.push(Edge { src: s, label: name.clone(), dst: d, directed: !symmetric });
                }
                (Some(s), None) if is_primitive(&sig.cod, opts) => {
                    g.properties.entry(s).or_default().entry(name.clone()).or_default().push(b.clone());
                }
                _ => {}
            }
        }
    }
    Ok(g)
}

fn dot_string(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn element_text(e: &Element) -> String {
    match e {
        Element::Atom(a) => a.as_str().to_string(),
        other => other.to_string(),
    }
}

/// Graphviz text: nodes in vertex order, then edges in generator order.
pub fn export_dot(g: &ElementsGraph) -> String {
    let mut out = String::from("digraph elements {\n");
    for v in &g.vertices {
        let mut label = format!("{}\\n{}", element_text(&v.element), v.ty);
        if let Some(props) = g.properties.get(v) {
            for (k, vals) in props {
                let vals: Vec<String> = vals.iter().map(element_text).collect();
                write!(label, "\\n{k} = {}", vals.join(", ")).unwrap();
            }
        }
        let label = label.replace('"', "\\\"");
        writeln!(out, "  {} [label=\"{label}\"];", dot_string(&v.id())).unwrap();
    }
    for e in &g.edges {
        let dir = if e.directed { "" } else { ", dir=none" };
        writeln!(
            out,
            "  {} -> {} [label={}{dir}];",
            dot_string(&e.src.id()),
            dot_string(&e.dst.id()),
            dot_string(e.label.as_str())
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
