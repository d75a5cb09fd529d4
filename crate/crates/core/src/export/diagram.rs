//! String diagrams laid out in layers from the strict normal form.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::presentation::{Presentation, TypeError};
use crate::rewrite::normalize_strict;
use crate::syntax::{Morphism, Object};
use crate::text::print_morphism;

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum DiagramError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("unsupported diagram format {0:?} (expected dot, tikz or json)")]
    UnsupportedFormat(String),
    #[error("layer {layer} tensors a sum-typed wire {object} beside other wires; wrap it in a single box")]
    SumInsideTensor { layer: usize, object: Object },
    #[error("layers {layer} and {next} meet at different port lists")]
    PortMismatch { layer: usize, next: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Dot,
    Tikz,
    Json,
}

impl std::str::FromStr for Format {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(Format::Dot),
            "tikz" => Ok(Format::Tikz),
            "json" => Ok(Format::Json),
            other => Err(DiagramError::UnsupportedFormat(other.into())),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoxStyle {
    /// A generator.
    Relation,
    /// A bare wire.
    Identity,
    /// Copy, delete, merge, create, braid and the other ⊗ structure.
    Structural,
    /// Structure of the second product, drawn filled.
    SumStructural,
    /// A nested composite or derived constructor drawn as one box.
    Opaque,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DiagramBox {
    pub id: String,
    pub label: String,
    pub style: BoxStyle,
    pub inputs: Vec<Object>,
    pub outputs: Vec<Object>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Layer {
    pub boxes: Vec<DiagramBox>,
}

/// `node` is a box id, or `in`/`out` for the diagram boundary.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Endpoint {
    pub node: String,
    pub port: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Wire {
    pub src: Endpoint,
    pub dst: Endpoint,
    pub object: Object,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DiagramIR {
    pub inputs: Vec<Object>,
    pub outputs: Vec<Object>,
    pub layers: Vec<Layer>,
    pub wires: Vec<Wire>,
}

impl DiagramIR {
    /// Wires with a box at both ends.
    pub fn internal_wires(&self) -> impl Iterator<Item = &Wire> {
        self.wires.iter().filter(|w| w.src.node != "in" && w.dst.node != "out")
    }
}

/// Ports of an interface object: summands of a sum, factors otherwise.
fn ports(o: &Object) -> Vec<Object> {
    match o {
        Object::Sum(_) | Object::Zero => o.summands(),
        _ => o.factors(),
    }
}

fn style_and_label(m: &Morphism) -> (BoxStyle, String) {
    use Morphism::*;
    match m {
        Generator(g) => (BoxStyle::Relation, g.as_str().to_string()),
        Identity(_) => (BoxStyle::Identity, String::new()),
        Braid(..) => (BoxStyle::Structural, "braid".into()),
        Copy(_) => (BoxStyle::Structural, "copy".into()),
        Delete(_) => (BoxStyle::Structural, "delete".into()),
        Merge(_) => (BoxStyle::Structural, "merge".into()),
        Create(_) => (BoxStyle::Structural, "create".into()),
        Unit(_) => (BoxStyle::Structural, "unit".into()),
        Counit(_) => (BoxStyle::Structural, "counit".into()),
        SumBraid(..) => (BoxStyle::SumStructural, "sbraid".into()),
        CoMerge(_) => (BoxStyle::SumStructural, "comerge".into()),
        CoCreate(_) => (BoxStyle::SumStructural, "cocreate".into()),
        CoCopy(_) => (BoxStyle::SumStructural, "cocopy".into()),
        CoDelete(_) => (BoxStyle::SumStructural, "codelete".into()),
        Distribute(..) => (BoxStyle::SumStructural, "dist".into()),
        DistributeInv(..) => (BoxStyle::SumStructural, "distinv".into()),
        other => (BoxStyle::Opaque, print_morphism(other)),
    }
}

/// Builds the layered diagram of `expr`.
pub fn diagram_ir(expr: &Morphism, pres: &Presentation) -> Result<DiagramIR, DiagramError> {
    let sig = pres.infer_type(expr)?;
    let norm = normalize_strict(expr, pres)?;
    let slices: Vec<&Morphism> = match &norm {
        Morphism::Compose(ps) => ps.iter().collect(),
        Morphism::Identity(_) => Vec::new(),
        m => vec![m],
    };
    let mut layers = Vec::new();
    for (li, slice) in slices.iter().enumerate() {
        let parts: Vec<&Morphism> = match slice {
            Morphism::Tensor(ps) | Morphism::SumTensor(ps) => ps.iter().collect(),
            m => vec![m],
        };
        let in_tensor = matches!(slice, Morphism::Tensor(_));
        let in_sum = matches!(slice, Morphism::SumTensor(_));
        let mut boxes = Vec::new();
        for (bi, part) in parts.iter().enumerate() {
            let s = pres.infer_type(part)?;
            let (inputs, outputs) = if in_tensor {
                for o in [&s.dom, &s.cod] {
                    if o.uses_sums() {
                        return Err(DiagramError::SumInsideTensor { layer: li, object: o.clone() });
                    }
                }
                (s.dom.factors(), s.cod.factors())
            } else if in_sum {
                (s.dom.summands(), s.cod.summands())
            } else {
                (ports(&s.dom), ports(&s.cod))
            };
            let (style, label) = style_and_label(part);
            boxes.push(DiagramBox { id: format!("b{li}_{bi}"), label, style, inputs, outputs });
        }
        layers.push(Layer { boxes });
    }

    let (inputs, outputs) = (ports(&sig.dom), ports(&sig.cod));
    let boundary = |node: &str, objs: &[Object]| -> Vec<(Endpoint, Object)> {
        objs.iter().enumerate().map(|(i, o)| (Endpoint { node: node.into(), port: i }, o.clone())).collect()
    };
    let side = |layer: &Layer, out: bool| -> Vec<(Endpoint, Object)> {
        layer
            .boxes
            .iter()
            .flat_map(|b| {
                let objs = if out { &b.outputs } else { &b.inputs };
                objs.iter()
                    .enumerate()
                    .map(|(i, o)| (Endpoint { node: b.id.clone(), port: i }, o.clone()))
                    .collect::<Vec<_>>()
            })
            .collect()
    };
    let mut wires = Vec::new();
    let mut srcs = boundary("in", &inputs);
    for (li, layer) in layers.iter().enumerate() {
        let dsts = side(layer, false);
        if srcs.len() != dsts.len() || srcs.iter().zip(&dsts).any(|(a, b)| a.1 != b.1) {
            return Err(DiagramError::PortMismatch { layer: li.saturating_sub(1), next: li });
        }
        for ((s, o), (d, _)) in srcs.into_iter().zip(dsts) {
            wires.push(Wire { src: s, dst: d, object: o });
        }
        srcs = side(layer, true);
    }
    let dsts = boundary("out", &outputs);
    if srcs.len() != dsts.len() || srcs.iter().zip(&dsts).any(|(a, b)| a.1 != b.1) {
        return Err(DiagramError::PortMismatch { layer: layers.len().saturating_sub(1), next: layers.len() });
    }
    for ((s, o), (d, _)) in srcs.into_iter().zip(dsts) {
        wires.push(Wire { src: s, dst: d, object: o });
    }
    Ok(DiagramIR { inputs, outputs, layers, wires })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn render_dot(d: &DiagramIR) -> String {
    let mut out = String::from("digraph diagram {\n  rankdir=LR;\n");
    for (node, objs) in [("in", &d.inputs), ("out", &d.outputs)] {
        for i in 0..objs.len() {
            writeln!(out, "  {} [shape=point];", quote(&format!("{node}{i}"))).unwrap();
        }
    }
    for b in d.layers.iter().flat_map(|l| &l.boxes) {
        let attrs = match b.style {
            BoxStyle::Relation | BoxStyle::Opaque => format!("shape=box, label={}", quote(&b.label)),
            BoxStyle::Identity => "shape=point".to_string(),
            BoxStyle::Structural => format!("shape=circle, width=0.2, label={}", quote(&b.label)),
            BoxStyle::SumStructural => {
                format!("shape=circle, width=0.2, style=filled, fillcolor=gray, label={}", quote(&b.label))
            }
        };
        writeln!(out, "  {} [{attrs}];", quote(&b.id)).unwrap();
    }
    let node = |e: &Endpoint| match e.node.as_str() {
        "in" | "out" => quote(&format!("{}{}", e.node, e.port)),
        id => quote(id),
    };
    for w in &d.wires {
        writeln!(
            out,
            "  {} -> {} [label={}, arrowhead=none];",
            node(&w.src),
            node(&w.dst),
            quote(&w.object.to_string())
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

fn tikz_escape(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '_' | '&' | '%' | '$' | '#' | '{' | '}' => format!("\\{c}"),
            c => c.to_string(),
        })
        .collect()
}

fn render_tikz(d: &DiagramIR) -> String {
    let mut out = String::from("\\begin{tikzpicture}[x=2cm, y=1cm]\n");
    let coord = |port: usize, x: f64| format!("({x:.1}, {:.1})", -(port as f64));
    for i in 0..d.inputs.len() {
        writeln!(out, "  \\coordinate (in{i}) at {};", coord(i, 0.0)).unwrap();
    }
    for (li, layer) in d.layers.iter().enumerate() {
        let mut row = 0usize;
        for b in &layer.boxes {
            let x = (li + 1) as f64;
            let height = b.inputs.len().max(b.outputs.len()).max(1);
            let y = -(row as f64) - (height as f64 - 1.0) / 2.0;
            let style = match b.style {
                BoxStyle::Relation | BoxStyle::Opaque => "draw, rectangle, minimum height=0.6cm",
                BoxStyle::Identity => "inner sep=0pt",
                BoxStyle::Structural => "draw, circle, inner sep=1pt",
                BoxStyle::SumStructural => "draw, circle, fill=gray, inner sep=1pt",
            };
            writeln!(out, "  \\node[{style}] ({}) at ({x:.1}, {y:.1}) {{{}}};", b.id, tikz_escape(&b.label)).unwrap();
            row += height;
        }
    }
    let last = (d.layers.len() + 1) as f64;
    for i in 0..d.outputs.len() {
        writeln!(out, "  \\coordinate (out{i}) at {};", coord(i, last)).unwrap();
    }
    let node = |e: &Endpoint| match e.node.as_str() {
        "in" | "out" => format!("({}{})", e.node, e.port),
        id => format!("({id})"),
    };
    for w in &d.wires {
        writeln!(
            out,
            "  \\draw {} -- node[above, font=\\tiny] {{{}}} {};",
            node(&w.src),
            tikz_escape(&w.object.to_string()),
            node(&w.dst)
        )
        .unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// Renders `expr` as DOT, TikZ or the JSON form of its [`DiagramIR`].
pub fn render_diagram(expr: &Morphism, pres: &Presentation, format: &str) -> Result<String, DiagramError> {
    let format: Format = format.parse()?;
    let ir = diagram_ir(expr, pres)?;
    Ok(match format {
        Format::Dot => render_dot(&ir),
        Format::Tikz => render_tikz(&ir),
        Format::Json => serde_json::to_string_pretty(&ir).expect("diagram serializes") + "\n",
    })
}
