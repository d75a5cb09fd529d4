//! Instances as relational databases: one entity table per type, one
//! association table per generator.

use std::collections::BTreeSet;

use indexmap::IndexMap;
use thiserror::Error;

use crate::finrel::{Element, EvalError, Instance};
use crate::presentation::Presentation;
use crate::rewrite::normalize_strict;
use crate::syntax::{Morphism, Name, Object};
use crate::text::{parse_element, SyntaxError};

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ExportError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("folding {generator} into {table} clashes with an existing column")]
    FoldConflict { table: Name, generator: Name },
    #[error("{generator} is not single-valued in this instance: {element} has several images")]
    NotAFunction { generator: Name, element: String },
    #[error("csv: {0}")]
    Csv(String),
    #[error("table {0} is missing")]
    MissingTable(String),
    #[error("bad value in table {table}: {source}")]
    BadValue { table: String, source: SyntaxError },
}

impl From<csv::Error> for ExportError {
    fn from(e: csv::Error) -> Self {
        ExportError::Csv(e.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct SqlOptions {
    pub fold_maps: bool,
}

/// DDL text and one CSV document per table, tables in declaration order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SqlExport {
    pub ddl: String,
    pub tables: IndexMap<String, String>,
}

/// Whether an axiom of `pres` states that `g : X → Y` is single-valued,
/// as `g† ; g ⇒ 1` or `g ; Δ ⇒ Δ ; (g ⊗ g)`.
pub fn declared_single_valued(pres: &Presentation, g: &Name) -> bool {
    let Some(sig) = pres.generators.get(g) else { return false };
    let r = Morphism::Generator(g.clone());
    let forms = [
        (r.clone().dagger().then(r.clone()), Morphism::Identity(sig.cod.clone())),
        (
            r.clone().then(Morphism::Copy(sig.cod.clone())),
            Morphism::Copy(sig.dom.clone()).then(Morphism::tensor([r.clone(), r])),
        ),
    ];
    let norm = |m: &Morphism| normalize_strict(m, pres).ok();
    pres.axioms.iter().any(|ax| {
        let (l, rr) = (norm(&ax.lhs), norm(&ax.rhs));
        forms.iter().any(|(fl, fr)| l.is_some() && l == norm(fl) && rr == norm(fr))
    })
}

/// The generators stored as columns when folding: declared single-valued,
/// basic domain and basic codomain.
pub fn folded_generators(pres: &Presentation) -> Vec<Name> {
    pres.generators
        .iter()
        .filter(|(g, s)| {
            matches!(s.dom, Object::Gen(_)) && matches!(s.cod, Object::Gen(_)) && declared_single_valued(pres, g)
        })
        .map(|(g, _)| g.clone())
        .collect()
}

/// Column headers for the factors of a relation: the type names, with
/// a 1-based suffix on types that occur more than once.
fn column_names(factors: &[Object]) -> Vec<String> {
    let label = |o: &Object| match o {
        Object::Gen(n) => n.as_str().to_string(),
        other => other.to_string(),
    };
    factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let same = factors.iter().filter(|g| *g == f).count();
            if same > 1 {
                let k = factors[..=i].iter().filter(|g| *g == f).count();
                format!("{} {k}", label(f))
            } else {
                label(f)
            }
        })
        .collect()
}

fn cell(e: &Element) -> String {
    match e {
        Element::Atom(a) => a.as_str().to_string(),
        other => other.to_string(),
    }
}

fn quote_ident(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn csv_text(header: &[String], mut rows: Vec<Vec<String>>) -> Result<String, ExportError> {
    rows.sort();
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header)?;
    for r in &rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| ExportError::Csv(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 strings"))
}

/// Relation rows of `g` as one cell per factor of its domain and codomain.
fn relation_rows(inst: &Instance, g: &Name, dom: &Object, cod: &Object) -> Vec<Vec<String>> {
    let (nd, nc) = (dom.factors().len(), cod.factors().len());
    inst.relations
        .get(g)
        .map(|pairs| {
            pairs
                .iter()
                .map(|(a, b)| {
                    let mut row: Vec<String> = a.untuple(nd).unwrap_or_default().iter().map(cell).collect();
                    row.extend(b.untuple(nc).unwrap_or_default().iter().map(cell));
                    row
                })
                .collect()
        })
        .unwrap_or_default()
}

pub fn export_sql(inst: &Instance, pres: &Presentation, opts: SqlOptions) -> Result<SqlExport, ExportError> {
    inst.check_signatures(pres)?;
    let folded: Vec<Name> = if opts.fold_maps { folded_generators(pres) } else { Vec::new() };
    let mut out = SqlExport::default();
    let mut ddl = Vec::new();
    for t in &pres.objects {
        let mut cols = vec![format!("  {} TEXT PRIMARY KEY", quote_ident("ID"))];
        let mut header = vec!["ID".to_string()];
        let mut seen: BTreeSet<String> = header.iter().cloned().collect();
        let maps: Vec<&Name> = folded.iter().filter(|g| pres.generators[*g].dom == Object::Gen(t.clone())).collect();
        for g in &maps {
            if !seen.insert(g.as_str().to_string()) {
                return Err(ExportError::FoldConflict { table: t.clone(), generator: (*g).clone() });
            }
            let Object::Gen(cod) = &pres.generators[*g].cod else { unreachable!("folded maps have basic codomains") };
            cols.push(format!(
                "  {} TEXT REFERENCES {} ({})",
                quote_ident(g.as_str()),
                quote_ident(cod.as_str()),
                quote_ident("ID")
            ));
            header.push(g.as_str().to_string());
        }
        let mut rows = Vec::new();
        for a in inst.carriers.get(t).into_iter().flatten() {
            let mut row = vec![a.as_str().to_string()];
            for g in &maps {
                let images: Vec<&Element> =
                    inst.relations[*g].iter().filter(|(x, _)| *x == Element::Atom(a.clone())).map(|(_, y)| y).collect();
                if images.len() > 1 {
                    return Err(ExportError::NotAFunction { generator: (*g).clone(), element: a.to_string() });
                }
                row.push(images.first().map(|y| cell(y)).unwrap_or_default());
            }
            rows.push(row);
        }
        ddl.push(format!("CREATE TABLE {} (\n{}\n);", quote_ident(t.as_str()), cols.join(",\n")));
        out.tables.insert(t.as_str().to_string(), csv_text(&header, rows)?);
    }
    for (g, sig) in &pres.generators {
        if folded.contains(g) {
            continue;
        }
        let mut factors = sig.dom.factors();
        factors.extend(sig.cod.factors());
        let header = column_names(&factors);
        let mut cols = Vec::new();
        for (h, f) in header.iter().zip(&factors) {
            let fk = match f {
                Object::Gen(n) => format!(" REFERENCES {} ({})", quote_ident(n.as_str()), quote_ident("ID")),
                _ => String::new(),
            };
            cols.push(format!("  {} TEXT NOT NULL{fk}", quote_ident(h)));
        }
        if !header.is_empty() {
            let keys: Vec<String> = header.iter().map(|h| quote_ident(h)).collect();
            cols.push(format!("  PRIMARY KEY ({})", keys.join(", ")));
        }
        ddl.push(format!("CREATE TABLE {} (\n{}\n);", quote_ident(g.as_str()), cols.join(",\n")));
        out.tables.insert(g.as_str().to_string(), csv_text(&header, relation_rows(inst, g, &sig.dom, &sig.cod))?);
    }
    out.ddl = ddl.join("\n\n") + "\n";
    Ok(out)
}

/// Reads tables produced by [`export_sql`] back into an instance.
pub fn import_sql(
    tables: &IndexMap<String, String>,
    pres: &Presentation,
    opts: SqlOptions,
) -> Result<Instance, ExportError> {
    let folded: Vec<Name> = if opts.fold_maps { folded_generators(pres) } else { Vec::new() };
    let read = |name: &str| -> Result<Vec<Vec<String>>, ExportError> {
        let text = tables.get(name).ok_or_else(|| ExportError::MissingTable(name.into()))?;
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for rec in r.records() {
            rows.push(rec?.iter().map(str::to_string).collect());
        }
        Ok(rows)
    };
    let value = |table: &str, f: &Object, s: &str| -> Result<Element, ExportError> {
        match f {
            Object::Gen(_) => Ok(Element::atom(s)),
            _ => parse_element(s).map_err(|source| ExportError::BadValue { table: table.into(), source }),
        }
    };
    let mut inst = Instance::new();
    for g in pres.generators.keys() {
        inst.relations.insert(g.clone(), BTreeSet::new());
    }
    for t in &pres.objects {
        let rows = read(t.as_str())?;
        inst.set_carrier(t.clone(), rows.iter().map(|r| r[0].clone()));
        let maps: Vec<&Name> = folded.iter().filter(|g| pres.generators[*g].dom == Object::Gen(t.clone())).collect();
        for row in &rows {
            for (g, v) in maps.iter().zip(&row[1..]) {
                if !v.is_empty() {
                    inst.relations
                        .get_mut(*g)
                        .expect("declared")
                        .insert((Element::atom(row[0].as_str()), Element::atom(v.as_str())));
                }
            }
        }
    }
    for (g, sig) in &pres.generators {
        if folded.contains(g) {
            continue;
        }
        let (df, cf) = (sig.dom.factors(), sig.cod.factors());
        let mut pairs = BTreeSet::new();
        for row in read(g.as_str())? {
            let mut cells = row.iter();
            let mut side = |fs: &[Object]| -> Result<Element, ExportError> {
                let parts = fs
                    .iter()
                    .map(|f| value(g.as_str(), f, cells.next().map(String::as_str).unwrap_or("")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Element::tuple(parts))
            };
            let a = side(&df)?;
            let b = side(&cf)?;
            pairs.insert((a, b));
        }
        if df.is_empty() && cf.is_empty() {
            // A relation I → I has no columns; csv cannot tell {} from {(*, *)}.
            pairs.clear();
        }
        inst.relations.insert(g.clone(), pairs);
    }
    Ok(inst)
}
