//! Acceptance suite: one PASS/FAIL line per criterion, with timings.
//!
//! The report is printed even when test output is captured.

mod common;

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use indexmap::IndexMap;
use rand::Rng;
use relolog::boolmat::{bridge, eval_matrix, relation_matrix, BoolMatrix, MatrixError, MatrixInstance};
use relolog::export::{category_of_elements, export_dot, export_sql, ElementsOptions, SqlExport, SqlOptions};
use relolog::finrel::{check_instance, classify_map, eval, Element, FinRelation, Instance};
use relolog::linrel::{eval_linrel, LinInstance, LinRel};
use relolog::logic::interpret::parse_signature_map;
use relolog::logic::text::{parse_proofs, parse_theory};
use relolog::logic::{check_proof, interpret, sequent_holds, theory_of, translate_to_logic, Mode, Rule, SignatureMap};
use relolog::logic::{ProofTree, Theory};
use relolog::random::{random_expr, random_instance, random_lin_instance, random_object, random_parallel};
use relolog::random::{random_presentation, ExprConfig};
use relolog::rewrite::desugar;
use relolog::search::{enumerate_models, find_countermodel, sample_model, Enumerated, SearchBudget, SearchOutcome};
use relolog::text::{parse_instance, parse_lin_instance, parse_olog, print_instance};
use relolog::{Morphism, Name, Object, Presentation};

use Morphism::*;

type Verdict = Result<String, String>;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn read(name: &str) -> String {
    fs::read_to_string(corpus(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn olog(name: &str) -> Presentation {
    parse_olog(&read(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn id(x: &Object) -> Morphism {
    Identity(x.clone())
}

fn tensor(a: Morphism, b: Morphism) -> Morphism {
    Tensor(vec![a, b])
}

fn compose(a: Morphism, b: Morphism) -> Morphism {
    Compose(vec![a, b])
}

// 1. FOAF reproduction

fn foaf_reproduction() -> Verdict {
    let pres = olog("foaf.olog");
    pres.validate().map_err(|e| e.to_string())?;
    let inst = parse_instance(&read("foaf.inst"), &pres).map_err(|e| e.to_string())?;
    let report = check_instance(&inst, &pres).map_err(|e| e.to_string())?;
    ensure(report.is_empty(), || format!("{} violations in the shipped instance", report.violations.len()))?;

    let mut broken = inst.clone();
    let p = |s: &str| Element::Atom(Name::new(s));
    let knows: BTreeSet<(Element, Element)> =
        inst.relations["knows"].iter().filter(|pair| !["P1", "P2"].contains(&pair_atom(&pair.0))).cloned().collect();
    broken.set_relation("knows", knows);
    let report = check_instance(&broken, &pres).map_err(|e| e.to_string())?;
    ensure(report.violations.len() == 1, || format!("{} violations after removing the rows", report.violations.len()))?;
    let v = &report.violations[0];
    let friend = Morphism::gen("friend of");
    ensure(v.lhs == friend && v.rhs == Morphism::gen("knows"), || format!("violated {} => {}", v.lhs, v.rhs))?;
    ensure(v.witness() == &(p("P1"), p("P2")), || format!("witness {:?}", v.witness()))?;
    Ok(format!(
        "{} axioms hold; without knows(P1, P2) only axiom {} fails, witness (P1, P2)",
        pres.axioms.len(),
        v.axiom
    ))
}

fn pair_atom(e: &Element) -> &str {
    match e {
        Element::Atom(n) => n.as_str(),
        _ => "",
    }
}

// 2. Matrix fidelity

fn matrix_fidelity() -> Verdict {
    let pres = olog("foaf.olog");
    let inst = parse_instance(&read("foaf.inst"), &pres).map_err(|e| e.to_string())?;
    let m = bridge(&inst, &pres).map_err(|e| e.to_string())?;
    let friend =
        BoolMatrix::from_rows(&[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0]]).unwrap();
    let knows =
        BoolMatrix::from_rows(&[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]]).unwrap();
    ensure(m.matrices["friend of"] == friend, || "friend of matrix differs".into())?;
    ensure(m.matrices["knows"] == knows, || "knows matrix differs".into())?;

    let n = 1000;
    for seed in 0..n {
        let (pres, inst, e) = common::triple(seed, 4, 5);
        let m = bridge(&inst, &pres).map_err(|err| format!("seed {seed}: {err}"))?;
        let want = relation_matrix(&eval(&e, &inst, &pres).map_err(|err| format!("seed {seed}: {err}"))?).unwrap();
        let got = eval_matrix(&e, &m, &pres).map_err(|err| format!("seed {seed}: {err}"))?;
        ensure(got == want, || format!("seed {seed}: {e} disagrees"))?;
    }
    Ok(format!("both matrices exact; {n} random triples agree"))
}

// 3. Law suites

/// A semantics for expressions, with the operations the laws compare against.
trait Backend {
    type Inst;
    type Val: PartialEq + Debug;
    const NAME: &'static str;
    const CONFIG: ExprConfig;
    fn instance(rng: &mut impl Rng, pres: &Presentation) -> Self::Inst;
    /// `None` when the value is beyond what the backend represents.
    fn eval(e: &Morphism, inst: &Self::Inst, pres: &Presentation) -> Option<Self::Val>;
    fn le(a: &Self::Val, b: &Self::Val) -> bool;
    fn converse(a: &Self::Val) -> Self::Val;
    fn meet(a: &Self::Val, b: &Self::Val) -> Self::Val;
    fn join(a: &Self::Val, b: &Self::Val) -> Self::Val;
    /// Map test that does not go through the adjunction.
    fn is_map(a: &Self::Val) -> bool;
}

struct Fin;
struct Mat;
struct Lin;

impl Backend for Fin {
    type Inst = Instance;
    type Val = FinRelation;
    const NAME: &'static str = "finrel";
    const CONFIG: ExprConfig = ExprConfig { depth: 4, derived: true, distributors: true };
    fn instance(rng: &mut impl Rng, pres: &Presentation) -> Instance {
        random_instance(rng, pres, 4)
    }
    fn eval(e: &Morphism, inst: &Instance, pres: &Presentation) -> Option<FinRelation> {
        Some(eval(e, inst, pres).unwrap_or_else(|err| panic!("{e}: {err}")))
    }
    fn le(a: &FinRelation, b: &FinRelation) -> bool {
        a.is_subset(b)
    }
    fn converse(a: &FinRelation) -> FinRelation {
        a.converse()
    }
    fn meet(a: &FinRelation, b: &FinRelation) -> FinRelation {
        a.intersection(b)
    }
    fn join(a: &FinRelation, b: &FinRelation) -> FinRelation {
        a.union(b)
    }
    fn is_map(a: &FinRelation) -> bool {
        classify_map(a).is_function()
    }
}

impl Backend for Mat {
    type Inst = MatrixInstance;
    type Val = BoolMatrix;
    const NAME: &'static str = "boolmat";
    const CONFIG: ExprConfig = ExprConfig { depth: 4, derived: true, distributors: true };
    fn instance(rng: &mut impl Rng, pres: &Presentation) -> MatrixInstance {
        bridge(&random_instance(rng, pres, 4), pres).unwrap()
    }
    fn eval(e: &Morphism, inst: &MatrixInstance, pres: &Presentation) -> Option<BoolMatrix> {
        match eval_matrix(e, inst, pres) {
            Err(MatrixError::TooLarge(..)) => None,
            other => Some(other.unwrap_or_else(|err| panic!("{e}: {err}"))),
        }
    }
    fn le(a: &BoolMatrix, b: &BoolMatrix) -> bool {
        a.le(b)
    }
    fn converse(a: &BoolMatrix) -> BoolMatrix {
        a.transpose()
    }
    fn meet(a: &BoolMatrix, b: &BoolMatrix) -> BoolMatrix {
        a.hadamard(b)
    }
    fn join(a: &BoolMatrix, b: &BoolMatrix) -> BoolMatrix {
        a.or(b)
    }
    fn is_map(a: &BoolMatrix) -> bool {
        (0..a.rows()).all(|i| (0..a.cols()).filter(|&j| a.get(i, j)).count() == 1)
    }
}

impl Backend for Lin {
    type Inst = LinInstance;
    type Val = LinRel;
    const NAME: &'static str = "linrel";
    const CONFIG: ExprConfig = ExprConfig { depth: 4, derived: true, distributors: false };
    fn instance(rng: &mut impl Rng, pres: &Presentation) -> LinInstance {
        random_lin_instance(rng, pres, 3)
    }
    fn eval(e: &Morphism, inst: &LinInstance, pres: &Presentation) -> Option<LinRel> {
        Some(eval_linrel(e, inst, pres).unwrap_or_else(|err| panic!("{e}: {err}")))
    }
    fn le(a: &LinRel, b: &LinRel) -> bool {
        a.le(b)
    }
    fn converse(a: &LinRel) -> LinRel {
        a.dagger()
    }
    fn meet(a: &LinRel, b: &LinRel) -> LinRel {
        a.meet(b)
    }
    fn join(a: &LinRel, b: &LinRel) -> LinRel {
        a.join(b)
    }
    fn is_map(a: &LinRel) -> bool {
        a.as_linear_map().is_some()
    }
}

const LAWS: [&str; 7] = ["frobenius", "special", "zig-zag", "dagger", "lax homomorphism", "maps", "meet/join"];

/// Checked and skipped case counts per law.
#[derive(Default)]
struct Tally {
    checked: [usize; LAWS.len()],
    skipped: [usize; LAWS.len()],
}

/// Runs every law on one random case. A law whose evaluation leaves the
/// backend is skipped.
fn law_case<B: Backend>(seed: u64, tally: &mut Tally) -> Result<(), String> {
    let mut rng = common::rng(seed);
    let pres = random_presentation(&mut rng, seed % 2 == 1);
    let inst = B::instance(&mut rng, &pres);
    let x = random_object(&mut rng, &pres);
    let r = random_expr(&mut rng, &pres, B::CONFIG);
    let sig = pres.infer_type(&r).map_err(|e| e.to_string())?;
    let s = random_parallel(&mut rng, &pres, &sig, B::CONFIG);
    let ev = |e: &Morphism| B::eval(e, &inst, &pres);
    let evd = |e: &Morphism| B::eval(&desugar(e, &pres).unwrap(), &inst, &pres);
    let fail = |law: &str, what: &dyn Debug| format!("{} {law}, seed {seed}: {what:?}", B::NAME);

    let mut record = |law: usize, outcome: Option<bool>, what: &dyn Debug| -> Result<(), String> {
        match outcome {
            None => tally.skipped[law] += 1,
            Some(true) => tally.checked[law] += 1,
            Some(false) => return Err(fail(LAWS[law], what)),
        }
        Ok(())
    };

    let frob = (|| {
        let left = ev(&compose(tensor(id(&x), Copy(x.clone())), tensor(Merge(x.clone()), id(&x))))?;
        let middle = ev(&compose(Merge(x.clone()), Copy(x.clone())))?;
        let right = ev(&compose(tensor(Copy(x.clone()), id(&x)), tensor(id(&x), Merge(x.clone()))))?;
        Some(left == middle && right == middle)
    })();
    record(0, frob, &x)?;

    let special = (|| Some(ev(&compose(Copy(x.clone()), Merge(x.clone())))? == ev(&id(&x))?))();
    record(1, special, &x)?;

    let zig_zag = (|| {
        let one = ev(&id(&x))?;
        let zig = ev(&compose(tensor(id(&x), Unit(x.clone())), tensor(Counit(x.clone()), id(&x))))?;
        let zag = ev(&compose(tensor(Unit(x.clone()), id(&x)), tensor(id(&x), Counit(x.clone()))))?;
        Some(zig == one && zag == one)
    })();
    record(2, zig_zag, &x)?;

    let d = r.clone().dagger();
    let dagger = (|| {
        let got = ev(&d)?;
        Some(got == B::converse(&ev(&r)?) && got == evd(&d)?)
    })();
    record(3, dagger, &r)?;

    let (dom, cod) = (sig.dom.clone(), sig.cod.clone());
    let lax = (|| {
        let rr = tensor(r.clone(), r.clone());
        let inclusions = [
            (compose(r.clone(), Copy(cod.clone())), compose(Copy(dom.clone()), rr.clone())),
            (compose(r.clone(), Delete(cod.clone())), Delete(dom.clone())),
            (compose(Merge(dom.clone()), r.clone()), compose(rr, Merge(cod.clone()))),
            (compose(Create(dom.clone()), r.clone()), Create(cod.clone())),
        ];
        let mut all = true;
        for (a, b) in &inclusions {
            all &= B::le(&ev(a)?, &ev(b)?);
        }
        Some(all)
    })();
    record(4, lax, &r)?;

    let maps = (|| {
        let a = ev(&r)?;
        let total = B::le(&ev(&id(&dom))?, &ev(&compose(r.clone(), d.clone()))?);
        let univalent = B::le(&ev(&compose(d.clone(), r.clone()))?, &ev(&id(&cod))?);
        Some(B::is_map(&a) == (total && univalent))
    })();
    record(5, maps, &r)?;

    let shortcuts = (|| {
        let (a, b) = (ev(&r)?, ev(&s)?);
        let meet = r.clone().meet(s.clone());
        let got = ev(&meet)?;
        let mut ok = got == B::meet(&a, &b) && got == evd(&meet)?;
        if pres.distributive {
            let join = r.clone().join(s.clone());
            let got = ev(&join)?;
            ok &= got == B::join(&a, &b) && got == evd(&join)?;
        }
        Some(ok)
    })();
    record(6, shortcuts, &(&r, &s))?;
    Ok(())
}

fn law_suite<B: Backend>(min_cases: usize) -> Verdict {
    let mut tally = Tally::default();
    let mut seed = 0u64;
    while tally.checked.iter().any(|&c| c < min_cases) && seed < 20 * min_cases as u64 {
        law_case::<B>(seed, &mut tally)?;
        seed += 1;
    }
    let short: Vec<String> =
        LAWS.iter().zip(tally.checked).filter(|&(_, c)| c < min_cases).map(|(l, c)| format!("{l} {c}")).collect();
    ensure(short.is_empty(), || format!("{} laws below {min_cases} cases: {}", B::NAME, short.join(", ")))?;
    let skipped: usize = tally.skipped.iter().sum();
    Ok(format!(
        "{} laws x >= {min_cases} cases over {seed} seeds, 0 failures, {skipped} law instances skipped beyond the dense limit",
        LAWS.len()
    ))
}

// 4. Logic soundness

struct Logic {
    thy: Theory,
    sig: SignatureMap,
    proofs: Vec<ProofTree>,
}

fn logic(theory: &str, map: &str, olog_file: &str, proofs: &str) -> Result<Logic, String> {
    let thy = parse_theory(&read(theory)).map_err(|e| format!("{theory}: {e}"))?;
    let sig = parse_signature_map(&read(map), &thy, &olog(olog_file)).map_err(|e| format!("{map}: {e}"))?;
    let proofs = parse_proofs(&read(proofs)).map_err(|e| format!("{proofs}: {e}"))?;
    Ok(Logic { thy, sig, proofs })
}

/// The theory's relations with its axioms interpreted as subsumptions,
/// plus the olog axioms that only mention function symbols.
fn model_presentation(l: &Logic) -> Result<Presentation, String> {
    let mut pres = l.sig.pres.clone();
    let keep: BTreeSet<Name> = l.thy.relations.keys().chain(l.thy.functions.keys()).cloned().collect();
    pres.generators.retain(|g, _| keep.contains(g));
    let fns: BTreeSet<Name> = l.thy.functions.keys().cloned().collect();
    pres.axioms.retain(|ax| {
        let mut gs = ax.lhs.generators();
        gs.extend(ax.rhs.generators());
        !gs.is_empty() && gs.iter().all(|g| fns.contains(g))
    });
    for ax in &l.thy.axioms {
        let ctx = ax.ctx.unsplit();
        let lhs = interpret(&ctx, &ax.lhs, &l.thy, &l.sig).map_err(|e| e.to_string())?;
        let rhs = interpret(&ctx, &ax.rhs, &l.thy, &l.sig).map_err(|e| e.to_string())?;
        pres.add_axiom(lhs, rhs);
    }
    Ok(pres)
}

fn logic_soundness() -> Verdict {
    let corpora = [
        logic("foaf.theory", "foaf.map", "foaf.olog", "foaf.proofs")?,
        logic("shapes.theory", "shapes.map", "shapes.olog", "shapes.proofs")?,
    ];
    let mut used = BTreeSet::new();
    let mut proofs = 0;
    let mut sequents = 0;
    for l in &corpora {
        for p in &l.proofs {
            let report = check_proof(p, &l.thy);
            ensure(report.ok(), || format!("{:?}: {report}", p.name))?;
            p.rules(&mut used);
            proofs += 1;
            sequents += p.sequents().len();
        }
    }
    ensure(proofs >= 15, || format!("only {proofs} proofs"))?;
    let names: BTreeSet<&str> = used.iter().map(Rule::name).collect();
    for r in Rule::ALL.iter().map(Rule::name).chain(["axiom"]) {
        ensure(names.contains(r), || format!("rule {r} is never used"))?;
    }

    let models = 100;
    for l in &corpora {
        let pres = model_presentation(l)?;
        let sig = SignatureMap { pres: pres.clone(), ..l.sig.clone() };
        let mut rng = common::rng(11);
        let mut found = 0;
        let mut attempts = 0;
        while found < models {
            attempts += 1;
            ensure(attempts <= 50 * models, || "too few models sampled".into())?;
            let sizes: IndexMap<Name, usize> = pres.objects.iter().map(|t| (t.clone(), rng.gen_range(1..=3))).collect();
            let Some(inst) = sample_model(&pres, &sizes, 8, &mut rng).map_err(|e| e.to_string())? else { continue };
            found += 1;
            for p in &l.proofs {
                for s in p.sequents() {
                    let holds = sequent_holds(s, &l.thy, &sig, &inst).map_err(|e| e.to_string())?;
                    ensure(holds, || format!("{:?}: {s:?} fails in\n{}", p.name, print_instance(&inst, &pres)))?;
                }
            }
        }
    }

    let mut refused = 0;
    let mut rules = BTreeSet::new();
    for (theory, file) in [("foaf.theory", "malformed/foaf.proofs"), ("shapes.theory", "malformed/shapes.proofs")] {
        let thy = parse_theory(&read(theory)).map_err(|e| e.to_string())?;
        for p in parse_proofs(&read(file)).map_err(|e| e.to_string())? {
            let name = p.name.clone().unwrap();
            let rule = match name.as_str().strip_prefix("axiom_") {
                Some(i) => format!("axiom({i})"),
                None => name.as_str().to_string(),
            };
            let report = check_proof(&p, &thy);
            ensure(!report.ok(), || format!("malformed {name} accepted"))?;
            ensure(report.to_string().contains(&format!("rule {rule}:")), || format!("{name}: {report}"))?;
            rules.insert(rule);
            refused += 1;
        }
    }
    for r in Rule::ALL.iter().map(|r| r.name().to_string()).chain(["axiom(0)".to_string()]) {
        ensure(rules.contains(&r), || format!("no malformed proof for {r}"))?;
    }
    Ok(format!(
        "{proofs} proofs check using all {} rules; {sequents} sequents hold in {models} models per theory; {refused} malformed proofs refused by rule",
        Rule::ALL.len() + 1
    ))
}

// 5. Round trip through logic

fn round_trip() -> Verdict {
    let n = 500;
    for mode in [Mode::Regular, Mode::Coherent] {
        for seed in 0..n {
            let mut rng = common::rng(seed);
            let pres = random_presentation(&mut rng, mode == Mode::Coherent);
            let inst = random_instance(&mut rng, &pres, 3);
            let e = random_expr(&mut rng, &pres, ExprConfig::new(4));
            let at = |err: &dyn std::fmt::Display| format!("{mode:?} seed {seed}, {e}: {err}");
            let (thy, sig) = theory_of(&pres, mode).map_err(|err| at(&err))?;
            let (ctx, phi) = translate_to_logic(&e, &pres, mode).map_err(|err| at(&err))?;
            let back = interpret(&ctx, &phi, &thy, &sig).map_err(|err| at(&err))?;
            let want = eval(&e, &inst, &sig.pres).map_err(|err| at(&err))?;
            let got = eval(&back, &inst, &sig.pres).map_err(|err| at(&err))?;
            ensure(got.pairs == want.pairs, || at(&format!("became {back}")))?;
        }
    }
    Ok(format!("{n} expressions per mode, regular and coherent"))
}

// 6. Countermodels

fn countermodel_text(pres: &Presentation, lhs: &str, rhs: &str, bound: usize) -> Result<String, String> {
    let parse = |s: &str| relolog::text::parse_morphism(s).map_err(|e| e.to_string());
    let out = find_countermodel(pres, &parse(lhs)?, &parse(rhs)?, &SearchBudget::uniform(bound))
        .map_err(|e| e.to_string())?;
    Ok(match &out {
        SearchOutcome::Countermodel { model, .. } => format!("{out}\n{}", print_instance(model, pres)),
        SearchOutcome::NoneUpTo { .. } => out.to_string(),
    })
}

fn countermodels() -> Verdict {
    let rs = parse_olog("type A\nrel R : A -> A\nrel S : A -> A").unwrap();
    let family = olog("family.olog");
    let examples: [(&Presentation, &str, &str, usize, &str); 4] = [
        (
            &rs,
            "R",
            "S",
            1,
            "countermodel found, witness (a1, a1)\ninstance countermodel\ntype A = {a1}\nrel R = {(a1, a1)}\nrel S = {}\n",
        ),
        (&rs, "R", "R", 3, "no countermodel up to bound 3"),
        (
            &family,
            "\"ancestor of\"",
            "\"parent of\"",
            1,
            "countermodel found, witness (p1, p1)\ninstance countermodel\ntype Person = {p1}\n\
             rel \"parent of\" = {}\nrel \"ancestor of\" = {(p1, p1)}\nrel \"grandparent of\" = {}\n",
        ),
        (&family, "\"grandparent of\"", "\"ancestor of\"", 3, "no countermodel up to bound 3"),
    ];
    for (pres, lhs, rhs, bound, want) in examples {
        let first = countermodel_text(pres, lhs, rhs, bound)?;
        ensure(first == want, || format!("{lhs} => {rhs} at bound {bound}:\n{first}"))?;
        let again = countermodel_text(pres, lhs, rhs, bound)?;
        ensure(again == first, || format!("{lhs} => {rhs} is not deterministic"))?;
    }

    let start = Instant::now();
    let mut count = 0;
    for item in enumerate_models(&family, &SearchBudget::uniform(3)).map_err(|e| e.to_string())? {
        match item.map_err(|e| e.to_string())? {
            Enumerated::Model(_) => count += 1,
            Enumerated::Truncated(t) => return Err(format!("enumeration truncated: {t:?}")),
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(300), || format!("bound 3 enumeration took {took:?}"))?;
    Ok(format!(
        "4 examples reproduce twice; {count} family models up to bound 3 enumerated in {:.1} s",
        took.as_secs_f64()
    ))
}

// 7. Negation

fn negation() -> Verdict {
    let pres = olog("negation.olog");
    let atoms = ["x1", "x2"];
    let all_pairs: Vec<(Element, Element)> = atoms
        .iter()
        .flat_map(|a| atoms.iter().map(move |b| (Element::Atom(Name::new(*a)), Element::Atom(Name::new(*b)))))
        .collect();
    let subset = |mask: usize| -> BTreeSet<(Element, Element)> {
        all_pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect()
    };
    for r in 0..16 {
        let mut satisfying = Vec::new();
        for s in 0..16 {
            let mut inst = Instance::default();
            inst.set_carrier("X", atoms);
            inst.set_relation("R", subset(r));
            inst.set_relation("S", subset(s));
            if check_instance(&inst, &pres).map_err(|e| e.to_string())?.is_empty() {
                satisfying.push(s);
            }
        }
        ensure(satisfying == [15 ^ r], || format!("R = {:?}: S in {satisfying:?}", subset(r)))?;
    }

    let lin = parse_lin_instance(&read("negation.lin"), &pres).map_err(|e| e.to_string())?;
    for ax in &pres.axioms {
        let l = eval_linrel(&ax.lhs, &lin, &pres).map_err(|e| e.to_string())?;
        let r = eval_linrel(&ax.rhs, &lin, &pres).map_err(|e| e.to_string())?;
        ensure(l.le(&r), || format!("linear {} => {} fails", ax.lhs, ax.rhs))?;
    }
    Ok("each of the 16 relations on 2 elements has exactly its complement as S; two complementary lines satisfy both axioms".into())
}

// 8. Export goldens

fn golden_dir(dir: &str, out: &SqlExport) -> Result<usize, String> {
    let mut files = 0;
    let mut expected: BTreeSet<String> = BTreeSet::new();
    for entry in fs::read_dir(corpus(dir)).map_err(|e| e.to_string())? {
        expected.insert(entry.map_err(|e| e.to_string())?.file_name().to_string_lossy().into_owned());
    }
    let produced: BTreeSet<String> =
        out.tables.keys().map(|t| format!("{t}.csv")).chain(["schema.sql".to_string()]).collect();
    ensure(produced == expected, || format!("{dir}: files {produced:?}"))?;
    ensure(out.ddl == read(&format!("{dir}/schema.sql")), || format!("{dir}/schema.sql differs"))?;
    for (t, csv) in &out.tables {
        ensure(csv == &read(&format!("{dir}/{t}.csv")), || format!("{dir}/{t}.csv differs"))?;
        files += 1;
    }
    Ok(files + 1)
}

fn export_goldens() -> Verdict {
    let pres = olog("foaf-fragment.olog");
    let inst = parse_instance(&read("foaf-fragment.inst"), &pres).map_err(|e| e.to_string())?;
    let sql = |fold_maps| export_sql(&inst, &pres, SqlOptions { fold_maps }).map_err(|e| e.to_string());
    let (plain, folded) = (sql(false)?, sql(true)?);
    ensure(plain == sql(false)? && folded == sql(true)?, || "SQL export is not stable".into())?;
    let mut files = golden_dir("golden/foaf-sql", &plain)?;
    files += golden_dir("golden/foaf-sql-folded", &folded)?;
    ensure(folded.tables["Person"].lines().nth(1) == Some("P1,21,Doe,Alice"), || "folded Person row".into())?;

    let opts = ElementsOptions {
        primitive: ["Number", "String", "Organization"].into_iter().map(Name::new).collect(),
        ..Default::default()
    };
    let g = category_of_elements(&inst, &pres, &opts).map_err(|e| e.to_string())?;
    let dot = export_dot(&g);
    ensure(dot == export_dot(&category_of_elements(&inst, &pres, &opts).unwrap()), || "DOT is not stable".into())?;
    ensure(dot == read("golden/foaf.dot"), || "golden/foaf.dot differs".into())?;
    let vertices: BTreeSet<String> = g.vertices.iter().map(|v| v.id()).collect();
    let figure_vertices: BTreeSet<String> = (1..=4).map(|i| format!("Person:P{i}")).collect();
    ensure(vertices == figure_vertices, || format!("vertices {vertices:?}"))?;
    let mut edges: Vec<(String, &str, String)> =
        g.edges.iter().map(|e| (e.src.id(), e.label.as_str(), e.dst.id())).collect();
    edges.sort();
    let mut figure: Vec<(String, &str, String)> = [
        ("P1", "knows", "P2"),
        ("P2", "knows", "P1"),
        ("P1", "friend of", "P2"),
        ("P2", "friend of", "P1"),
        ("P3", "knows", "P4"),
        ("P4", "knows", "P3"),
    ]
    .into_iter()
    .map(|(a, l, b)| (format!("Person:{a}"), l, format!("Person:{b}")))
    .collect();
    figure.sort();
    ensure(edges == figure, || format!("edges {edges:?}"))?;
    Ok(format!("{files} SQL/CSV goldens and the DOT golden match byte for byte; 4 vertices, 6 edges"))
}

fn criterion(n: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let verdict = f();
    let took = start.elapsed();
    let verdict = match (verdict, limit) {
        (Ok(_), Some(l)) if took > l => {
            Err(format!("took {:.2} s, limit {:.0} s", took.as_secs_f64(), l.as_secs_f64()))
        }
        (v, _) => v,
    };
    let (tag, detail) = match &verdict {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    // Written to the stream directly so the report survives output capture.
    let line = format!("{tag} {n}. {name}: {detail} [{:.2} s]\n", took.as_secs_f64());
    std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
    verdict.is_ok()
}

#[test]
fn acceptance() {
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        criterion(1, "FOAF reproduction", secs(1), foaf_reproduction),
        criterion(2, "matrix fidelity", secs(60), matrix_fidelity),
        criterion(3, "law suite, finrel", None, || law_suite::<Fin>(200)),
        criterion(3, "law suite, boolmat", None, || law_suite::<Mat>(200)),
        criterion(3, "law suite, linrel", None, || law_suite::<Lin>(200)),
        criterion(4, "logic soundness", None, logic_soundness),
        criterion(5, "round trip through logic", None, round_trip),
        criterion(6, "countermodel suite", secs(300), countermodels),
        criterion(7, "negation encoding", None, negation),
        criterion(8, "export goldens", None, export_goldens),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
