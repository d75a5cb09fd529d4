use super::diagram::BoxStyle;
use super::*;
use crate::finrel::check_instance;
use crate::rewrite::desugar;
use crate::text::{parse_instance, parse_morphism, parse_olog};
use crate::{Morphism, Name, Presentation};

const FRAGMENT: &str = include_str!("../../../../corpus/foaf-fragment.olog");
const FRAGMENT_INST: &str = include_str!("../../../../corpus/foaf-fragment.inst");

fn foaf() -> (Presentation, crate::finrel::Instance) {
    let pres = parse_olog(FRAGMENT).unwrap();
    let inst = parse_instance(FRAGMENT_INST, &pres).unwrap();
    (pres, inst)
}

fn rows(csv: &str) -> usize {
    csv.lines().count() - 1
}

#[test]
fn fragment_instance_is_a_model() {
    let (pres, inst) = foaf();
    assert!(check_instance(&inst, &pres).unwrap().is_empty());
}

#[test]
fn foaf_tables() {
    let (pres, inst) = foaf();
    let out = export_sql(&inst, &pres, SqlOptions::default()).unwrap();
    let counts: Vec<(&str, usize)> = out.tables.iter().map(|(k, v)| (k.as_str(), rows(v))).collect();
    for (t, n) in [("Person", 4), ("Organization", 2), ("friend of", 2), ("knows", 4), ("salary", 2)] {
        assert!(counts.contains(&(t, n)), "{t}: {counts:?}");
    }
    assert_eq!(out.tables["friend of"], "Person 1,Person 2\nP1,P2\nP2,P1\n");
    assert_eq!(out.tables["salary"], "Person,Organization,Number\nP1,O1,30000\nP3,O2,40000\n");
    assert!(out
        .ddl
        .contains("CREATE TABLE \"friend of\" (\n  \"Person 1\" TEXT NOT NULL REFERENCES \"Person\" (\"ID\"),"));
    assert!(out.ddl.contains("PRIMARY KEY (\"Person\", \"Organization\", \"Number\")"));
}

#[test]
fn folding_maps_gives_one_person_table() {
    let (pres, inst) = foaf();
    let folded = folded_generators_names(&pres);
    assert_eq!(folded, ["age", "family name", "given name"]);
    let out = export_sql(&inst, &pres, SqlOptions { fold_maps: true }).unwrap();
    let person = &out.tables["Person"];
    assert_eq!(person.lines().next().unwrap(), "ID,age,family name,given name");
    assert_eq!(person.lines().nth(1).unwrap(), "P1,21,Doe,Alice");
    assert!(!out.tables.contains_key("age"));
    assert!(out.tables.contains_key("knows"));
}

fn folded_generators_names(pres: &Presentation) -> Vec<String> {
    sql::folded_generators(pres).iter().map(|n| n.as_str().to_string()).collect()
}

#[test]
fn partial_maps_fold_to_null() {
    let pres = parse_olog("type A, B\nrel f : A -> B\naxiom dagger(f) ; f => id(B)").unwrap();
    let inst = parse_instance("type A = {a1, a2}\ntype B = {b}\nrel f = {(a1, b)}", &pres).unwrap();
    let out = export_sql(&inst, &pres, SqlOptions { fold_maps: true }).unwrap();
    assert_eq!(out.tables["A"], "ID,f\na1,b\na2,\n");
    let back = import_sql(&out.tables, &pres, SqlOptions { fold_maps: true }).unwrap();
    assert_eq!(back, inst);
}

#[test]
fn fold_conflict() {
    let pres = parse_olog("type A, B\nrel ID : A -> B\naxiom dagger(ID) ; ID => id(B)").unwrap();
    let inst = parse_instance("type A = {a}\ntype B = {b}\nrel ID = {}", &pres).unwrap();
    let err = export_sql(&inst, &pres, SqlOptions { fold_maps: true }).unwrap_err();
    assert!(matches!(err, ExportError::FoldConflict { .. }));
}

#[test]
fn empty_instance_has_headers_only() {
    let pres = parse_olog("type A\nrel R : A -> A").unwrap();
    let inst = parse_instance("type A = {}\nrel R = {}", &pres).unwrap();
    let out = export_sql(&inst, &pres, SqlOptions::default()).unwrap();
    assert_eq!(out.tables["A"], "ID\n");
    assert_eq!(out.tables["R"], "A 1,A 2\n");
    assert!(out.ddl.starts_with("CREATE TABLE \"A\""));
}

#[test]
fn csv_round_trip() {
    let (pres, inst) = foaf();
    for fold_maps in [false, true] {
        let opts = SqlOptions { fold_maps };
        let out = export_sql(&inst, &pres, opts).unwrap();
        let back = import_sql(&out.tables, &pres, opts).unwrap();
        assert_eq!(back.carriers, inst.carriers);
        assert_eq!(back.relations.len(), inst.relations.len());
        for (g, pairs) in &inst.relations {
            assert_eq!(&back.relations[g], pairs, "{g}");
        }
    }
}

#[test]
fn export_is_deterministic() {
    let (pres, inst) = foaf();
    let a = export_sql(&inst, &pres, SqlOptions { fold_maps: true }).unwrap();
    let b = export_sql(&inst.clone(), &pres, SqlOptions { fold_maps: true }).unwrap();
    assert_eq!(a, b);
}

fn primitive() -> ElementsOptions {
    ElementsOptions {
        primitive: [Name::new("Number"), Name::new("String")].into_iter().collect(),
        ..Default::default()
    }
}

#[test]
fn foaf_graph_matches_the_figure() {
    let (pres, inst) = foaf();
    let g = category_of_elements(&inst, &pres, &primitive()).unwrap();
    assert_eq!(g.vertices.len(), 6);
    let mut labels: Vec<&str> = g.edges.iter().map(|e| e.label.as_str()).collect();
    labels.sort();
    assert_eq!(labels, ["friend of", "friend of", "knows", "knows", "knows", "knows"]);
    let dot = export_dot(&g);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 6);
    assert!(dot.contains("  \"Person:P1\" -> \"Person:P2\" [label=\"knows\"];\n"));
    assert!(dot.contains("age = 21"));
}

#[test]
fn undirected_symmetric_halves_edges() {
    let (pres, inst) = foaf();
    let opts = ElementsOptions { undirected_symmetric: true, ..primitive() };
    let g = category_of_elements(&inst, &pres, &opts).unwrap();
    assert_eq!(g.edges.len(), 3);
    assert!(export_dot(&g).contains("dir=none"));
}

#[test]
fn product_vertices_encode_salary() {
    let (pres, inst) = foaf();
    let opts = ElementsOptions { product_vertices: true, ..primitive() };
    let g = category_of_elements(&inst, &pres, &opts).unwrap();
    assert_eq!(g.vertices.len(), 8);
    let proj = g.edges.iter().filter(|e| e.label.as_str().starts_with("proj")).count();
    assert_eq!(proj, 4);
}

#[test]
fn graph_edge_count_is_the_total_relation_size() {
    let pres = parse_olog("type A, B\nrel R : A -> B\nrel S : B -> B").unwrap();
    let inst =
        parse_instance("type A = {a}\ntype B = {b, c}\nrel R = {(a, b), (a, c)}\nrel S = {(b, b)}", &pres).unwrap();
    let g = category_of_elements(&inst, &pres, &ElementsOptions::default()).unwrap();
    assert_eq!(g.edges.len(), 3);
}

#[test]
fn empty_and_self_loop_graphs() {
    let pres = parse_olog("type A\nrel R : A -> A").unwrap();
    let empty = parse_instance("type A = {}\nrel R = {}", &pres).unwrap();
    assert!(category_of_elements(&empty, &pres, &ElementsOptions::default()).unwrap().is_empty());
    let one = parse_instance("type A = {a}\nrel R = {(a, a)}", &pres).unwrap();
    let g = category_of_elements(&one, &pres, &ElementsOptions::default()).unwrap();
    assert_eq!(g.vertices.len(), 1);
    assert_eq!(g.edges.len(), 1);
    assert_eq!(g.edges[0].src, g.edges[0].dst);
    assert_eq!(
        export_dot(&g),
        "digraph elements {\n  \"A:a\" [label=\"a\\nA\"];\n  \"A:a\" -> \"A:a\" [label=\"R\"];\n}\n"
    );
}

#[test]
fn composite_is_two_boxes_and_one_wire() {
    let (pres, _) = foaf();
    let e = parse_morphism("compose(\"friend of\", knows)").unwrap();
    let d = diagram_ir(&e, &pres).unwrap();
    assert_eq!(d.layers.len(), 2);
    assert_eq!(d.layers.iter().map(|l| l.boxes.len()).sum::<usize>(), 2);
    let inner: Vec<_> = d.internal_wires().collect();
    assert_eq!(inner.len(), 1);
    assert_eq!(inner[0].object, crate::Object::gen("Person"));
}

#[test]
fn meet_is_copy_boxes_merge() {
    let (pres, _) = foaf();
    let e = parse_morphism("meet(\"friend of\", knows)").unwrap();
    let d = diagram_ir(&desugar(&e, &pres).unwrap(), &pres).unwrap();
    let shape: Vec<Vec<&str>> = d.layers.iter().map(|l| l.boxes.iter().map(|b| b.label.as_str()).collect()).collect();
    assert_eq!(shape, [vec!["copy"], vec!["friend of", "knows"], vec!["merge"]]);
    assert_eq!(d.layers[0].boxes[0].style, BoxStyle::Structural);
    assert_eq!(d.internal_wires().count(), 4);
}

#[test]
fn json_ignores_strict_rewriting() {
    let (pres, _) = foaf();
    let e = parse_morphism("compose(id(Person), compose(knows, id(Person)), tensor(id(I), knows))").unwrap();
    let n = crate::rewrite::normalize_strict(&e, &pres).unwrap();
    assert_eq!(render_diagram(&e, &pres, "json").unwrap(), render_diagram(&n, &pres, "json").unwrap());
}

#[test]
fn formats() {
    let (pres, _) = foaf();
    let e = Morphism::gen("knows");
    assert!(render_diagram(&e, &pres, "dot").unwrap().starts_with("digraph diagram {"));
    let tikz = render_diagram(&e, &pres, "tikz").unwrap();
    assert!(tikz.starts_with("\\begin{tikzpicture}") && tikz.ends_with("\\end{tikzpicture}\n"));
    assert!(matches!(render_diagram(&e, &pres, "svg"), Err(DiagramError::UnsupportedFormat(_))));
}

#[test]
fn sums_beside_products_are_refused() {
    let pres = parse_olog("distributive\ntype A, B\nrel R : A -> A + B").unwrap();
    let e = parse_morphism("tensor(R, id(A))").unwrap();
    assert!(matches!(diagram_ir(&e, &pres), Err(DiagramError::SumInsideTensor { .. })));
    let ok = parse_morphism("sum(R, id(A))").unwrap();
    let d = diagram_ir(&ok, &pres).unwrap();
    assert_eq!(d.outputs.len(), 3);
}
