//! `relolog`: check, evaluate, prove, translate, search and export.
//!
//! Exit status: 0 when the check holds, 1 on a violation, failed proof or
//! countermodel, 2 on usage, input or parse errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};

use relolog::boolmat::{bridge, eval_matrix};
use relolog::export::{category_of_elements, export_dot, export_sql, render_diagram, ElementsOptions, SqlOptions};
use relolog::finrel::{check_instance, eval, Instance};
use relolog::linrel::eval_linrel;
use relolog::logic::interpret::{map_file_olog_path, parse_signature_map};
use relolog::logic::text::{parse_formula_in_context, parse_proofs, parse_theory, print_formula};
use relolog::logic::{check_proof, check_theory, interpret, translate_to_logic, Mode};
use relolog::rewrite::desugar;
use relolog::search::{find_countermodel, SearchBudget, SearchOutcome};
use relolog::text::{
    parse_conjecture, parse_instance, parse_lin_instance, parse_morphism, parse_olog, print_instance, print_morphism,
};
use relolog::{Name, Presentation};

#[derive(Parser)]
#[command(name = "relolog", version, about = "Relational ologs: typecheck, evaluate, prove and export")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Finrel,
    Boolmat,
    Linrel,
}

#[derive(Clone, Copy, ValueEnum)]
enum LogicMode {
    Regular,
    Coherent,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramFormat {
    Dot,
    Tikz,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an olog: every generator and axiom typechecks.
    Check { olog: PathBuf },
    /// Evaluate an expression in an instance.
    Eval {
        olog: PathBuf,
        instance: PathBuf,
        #[arg(short, long)]
        expr: String,
        #[arg(long, value_enum, default_value = "finrel")]
        backend: Backend,
    },
    /// Check every axiom of an olog in an instance.
    Verify { olog: PathBuf, instance: PathBuf },
    /// Check the proofs in a proof file against a theory.
    Prove { theory: PathBuf, proofs: PathBuf },
    /// Interpret a formula in context as a morphism expression.
    Interpret {
        theory: PathBuf,
        map: PathBuf,
        /// `[x:A; y:B] formula`
        #[arg(short, long)]
        formula: String,
        /// Olog file; defaults to the map file's `olog_file` entry.
        #[arg(long)]
        olog: Option<PathBuf>,
    },
    /// Translate an expression into a formula in context.
    Translate {
        olog: PathBuf,
        #[arg(short, long)]
        expr: String,
        #[arg(long, value_enum, default_value = "regular")]
        mode: LogicMode,
    },
    /// Search for a finite model refuting `L => R`.
    Search {
        olog: PathBuf,
        #[arg(long)]
        conjecture: String,
        #[arg(long)]
        bound: usize,
        /// Per-type bound `Type=k`; repeatable.
        #[arg(long = "type-bound", value_parser = parse_type_bound)]
        type_bounds: Vec<(String, usize)>,
        #[arg(long)]
        max_models: Option<usize>,
        /// Seconds.
        #[arg(long)]
        timeout: Option<u64>,
    },
    /// Export an instance as SQL DDL and CSV tables.
    ExportSql {
        olog: PathBuf,
        instance: PathBuf,
        #[arg(long)]
        fold_maps: bool,
        /// Write `schema.sql` and one CSV per table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the category of elements of an instance as DOT.
    ExportGraph {
        olog: PathBuf,
        instance: PathBuf,
        #[arg(long)]
        undirected_symmetric: bool,
        #[arg(long)]
        product_vertices: bool,
        /// Type stored as vertex properties; repeatable.
        #[arg(long)]
        primitive: Vec<String>,
    },
    /// Render an expression as a string diagram.
    Render {
        olog: PathBuf,
        #[arg(short, long)]
        expr: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: DiagramFormat,
        /// Expand derived constructors first.
        #[arg(long)]
        desugar: bool,
    },
}

fn parse_type_bound(s: &str) -> Result<(String, usize), String> {
    let (t, k) = s.rsplit_once('=').ok_or("expected Type=k")?;
    Ok((t.trim().to_string(), k.trim().parse().map_err(|e| format!("{e}"))?))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_olog(path: &Path) -> Result<Presentation> {
    parse_olog(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_instance(path: &Path, pres: &Presentation) -> Result<Instance> {
    parse_instance(&read(path)?, pres).with_context(|| format!("parsing {}", path.display()))
}

/// Exit status of a completed command.
enum Status {
    Holds,
    Fails,
}

fn run(cmd: Command) -> Result<Status> {
    match cmd {
        Command::Check { olog } => {
            let pres = load_olog(&olog)?;
            match pres.validate() {
                Ok(()) => {
                    println!(
                        "ok: {} types, {} relations, {} axioms",
                        pres.objects.len(),
                        pres.generators.len(),
                        pres.axioms.len()
                    );
                    Ok(Status::Holds)
                }
                Err(e) => {
                    println!("invalid: {e}");
                    Ok(Status::Fails)
                }
            }
        }
        Command::Eval { olog, instance, expr, backend } => {
            let pres = load_olog(&olog)?;
            let e = parse_morphism(&expr).context("parsing the expression")?;
            match backend {
                Backend::Finrel => {
                    let inst = load_instance(&instance, &pres)?;
                    let rel = eval(&e, &inst, &pres)?;
                    println!("{}", inst.show(&rel));
                }
                Backend::Boolmat => {
                    let inst = load_instance(&instance, &pres)?;
                    let mats = bridge(&inst, &pres)?;
                    print!("{}", eval_matrix(&e, &mats, &pres)?);
                }
                Backend::Linrel => {
                    let inst = parse_lin_instance(&read(&instance)?, &pres)
                        .with_context(|| format!("parsing {}", instance.display()))?;
                    let rel = eval_linrel(&e, &inst, &pres)?;
                    println!("dim {} -> {}, rank {}", rel.dom(), rel.cod(), rel.rank());
                    print!("{rel}");
                }
            }
            Ok(Status::Holds)
        }
        Command::Verify { olog, instance } => {
            let pres = load_olog(&olog)?;
            let inst = load_instance(&instance, &pres)?;
            let report = check_instance(&inst, &pres)?;
            if report.is_empty() {
                println!("ok: {} axioms hold", pres.axioms.len());
                return Ok(Status::Holds);
            }
            for v in &report.violations {
                let (a, b) = v.witness();
                println!(
                    "violated axiom {}: {} => {}; witness ({a}, {b}); {} pairs missing",
                    v.axiom,
                    print_morphism(&v.lhs),
                    print_morphism(&v.rhs),
                    v.witnesses.len()
                );
            }
            Ok(Status::Fails)
        }
        Command::Prove { theory, proofs } => {
            let thy = parse_theory(&read(&theory)?).with_context(|| format!("parsing {}", theory.display()))?;
            check_theory(&thy)?;
            let proofs = parse_proofs(&read(&proofs)?).with_context(|| format!("parsing {}", proofs.display()))?;
            let mut all = true;
            for (i, p) in proofs.iter().enumerate() {
                let name = p.name.as_ref().map(|n| n.to_string()).unwrap_or_else(|| format!("#{i}"));
                let report = check_proof(p, &thy);
                if report.ok() {
                    println!("proof {name}: ok");
                } else {
                    all = false;
                    println!("proof {name}: rejected");
                    for d in &report.diagnostics {
                        println!("  {d}");
                    }
                }
            }
            Ok(if all { Status::Holds } else { Status::Fails })
        }
        Command::Interpret { theory, map, formula, olog } => {
            let thy = parse_theory(&read(&theory)?).with_context(|| format!("parsing {}", theory.display()))?;
            check_theory(&thy)?;
            let map_src = read(&map)?;
            let olog = match olog {
                Some(p) => p,
                None => {
                    let rel = map_file_olog_path(&map_src)?
                        .ok_or_else(|| anyhow!("{} names no olog_file; pass --olog", map.display()))?;
                    map.parent().unwrap_or(Path::new(".")).join(rel)
                }
            };
            let pres = load_olog(&olog)?;
            let sig =
                parse_signature_map(&map_src, &thy, &pres).with_context(|| format!("reading {}", map.display()))?;
            let (ctx, phi) = parse_formula_in_context(&formula).context("parsing the formula")?;
            let m = interpret(&ctx, &phi, &thy, &sig)?;
            println!("{}", print_morphism(&m));
            Ok(Status::Holds)
        }
        Command::Translate { olog, expr, mode } => {
            let pres = load_olog(&olog)?;
            let e = parse_morphism(&expr).context("parsing the expression")?;
            let mode = match mode {
                LogicMode::Regular => Mode::Regular,
                LogicMode::Coherent => Mode::Coherent,
            };
            let (ctx, phi) = translate_to_logic(&e, &pres, mode)?;
            println!("{ctx} {}", print_formula(&phi));
            Ok(Status::Holds)
        }
        Command::Search { olog, conjecture, bound, type_bounds, max_models, timeout } => {
            let pres = load_olog(&olog)?;
            let (l, r) = parse_conjecture(&conjecture).context("parsing the conjecture")?;
            let mut budget = SearchBudget::uniform(bound);
            budget.max_models = max_models;
            budget.timeout = timeout.map(Duration::from_secs);
            for (t, k) in type_bounds {
                if !pres.objects.contains(t.as_str()) {
                    bail!("--type-bound names unknown type {t}");
                }
                budget.per_type.insert(Name::new(t), k);
            }
            let outcome = find_countermodel(&pres, &l, &r, &budget)?;
            println!("{outcome}");
            match outcome {
                SearchOutcome::Countermodel { model, .. } => {
                    print!("{}", print_instance(&model, &pres));
                    Ok(Status::Fails)
                }
                SearchOutcome::NoneUpTo { .. } => Ok(Status::Holds),
            }
        }
        Command::ExportSql { olog, instance, fold_maps, out } => {
            let pres = load_olog(&olog)?;
            let inst = load_instance(&instance, &pres)?;
            let sql = export_sql(&inst, &pres, SqlOptions { fold_maps })?;
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                    fs::write(dir.join("schema.sql"), &sql.ddl)?;
                    for (name, csv) in &sql.tables {
                        fs::write(dir.join(format!("{name}.csv")), csv)?;
                    }
                }
                None => {
                    print!("{}", sql.ddl);
                    for (name, csv) in &sql.tables {
                        println!("\n-- table: {name}");
                        print!("{csv}");
                    }
                }
            }
            Ok(Status::Holds)
        }
        Command::ExportGraph { olog, instance, undirected_symmetric, product_vertices, primitive } => {
            let pres = load_olog(&olog)?;
            let inst = load_instance(&instance, &pres)?;
            for t in &primitive {
                if !pres.objects.contains(t.as_str()) {
                    bail!("--primitive names unknown type {t}");
                }
            }
            let opts = ElementsOptions {
                primitive: primitive.into_iter().map(Name::new).collect::<BTreeSet<_>>(),
                undirected_symmetric,
                product_vertices,
            };
            print!("{}", export_dot(&category_of_elements(&inst, &pres, &opts)?));
            Ok(Status::Holds)
        }
        Command::Render { olog, expr, format, desugar: expand } => {
            let pres = load_olog(&olog)?;
            let mut e = parse_morphism(&expr).context("parsing the expression")?;
            if expand {
                e = desugar(&e, &pres)?;
            }
            let format = match format {
                DiagramFormat::Dot => "dot",
                DiagramFormat::Tikz => "tikz",
                DiagramFormat::Json => "json",
            };
            print!("{}", render_diagram(&e, &pres, format)?);
            Ok(Status::Holds)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Holds) => ExitCode::SUCCESS,
        Ok(Status::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
