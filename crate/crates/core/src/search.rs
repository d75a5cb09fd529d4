//! Bounded enumeration of finite models and countermodel search.
//!
//! Models are enumerated carrier sizes first (size vectors in
//! lexicographic order, each size from 1 to its bound), then relation
//! contents: the bits of all generator matrices, concatenated in
//! generator order with each matrix in row-major order, read as one
//! big-endian integer counting upward. Axioms are checked on boolean
//! matrices, each as soon as the last generator it mentions has a value,
//! so a failing axiom prunes every assignment of the later generators.
//! The pruned search visits the surviving models in the same order.

use std::time::{Duration, Instant};

use indexmap::IndexMap;
use thiserror::Error;

use crate::boolmat::{eval_matrix, BoolMatrix, MatrixError, MatrixInstance};
use crate::finrel::Instance;
use crate::presentation::{Presentation, PresentationError};
use crate::syntax::{Morphism, Name, Signature};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SearchBudget {
    /// Largest carrier for types without an entry in `per_type`.
    pub max_carrier: usize,
    pub per_type: IndexMap<Name, usize>,
    pub max_models: Option<usize>,
    pub timeout: Option<Duration>,
}

impl SearchBudget {
    pub fn uniform(bound: usize) -> Self {
        SearchBudget { max_carrier: bound, ..Default::default() }
    }

    pub fn bound(&self, ty: &Name) -> usize {
        self.per_type.get(ty).copied().unwrap_or(self.max_carrier)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("conjecture sides have different types: {left} and {right}")]
    SignatureMismatch { left: Signature, right: Signature },
}

/// Why an enumeration stopped early.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Truncation {
    MaxModels,
    Timeout,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Enumerated {
    Model(Instance),
    /// Always the last item when present.
    Truncated(Truncation),
}

/// Deterministic atom names: the lowercased initial of the type and a
/// 1-based index, e.g. `p1, p2` for `Person`.
pub fn atom_names(ty: &Name, n: usize) -> Vec<Name> {
    let initial = ty
        .as_str()
        .chars()
        .find(|c| c.is_alphabetic())
        .map(|c| c.to_lowercase().collect::<String>())
        .unwrap_or_else(|| "e".into());
    (1..=n).map(|i| Name::new(format!("{initial}{i}"))).collect()
}

/// An axiom or conjecture side condition, checked as soon as the last
/// generator it mentions has a value.
#[derive(Clone, Debug)]
struct Constraint {
    lhs: Morphism,
    rhs: Morphism,
    /// `true`: require `lhs ≤ rhs`; `false`: require that it fails.
    holds: bool,
    /// Index of the last generator mentioned, `None` for closed terms.
    level: Option<usize>,
}

/// The stream of models of `pres` within `budget`.
pub struct ModelStream<'a> {
    pres: &'a Presentation,
    budget: SearchBudget,
    types: Vec<Name>,
    bounds: Vec<usize>,
    sizes: Option<Vec<usize>>,
    constraints: Vec<Constraint>,
    /// Current bits per generator, row-major.
    bits: Vec<Vec<bool>>,
    /// Generators `0..depth` hold values; `None` before entering `sizes`.
    depth: Option<usize>,
    /// Set after a yield: resume by incrementing the deepest generator.
    resume: bool,
    shapes: Vec<(usize, usize)>,
    mats: MatrixInstance,
    started: Instant,
    yielded: usize,
    done: bool,
}

/// Every model of `pres` with carriers within `budget`, in the order
/// described in the module documentation.
pub fn enumerate_models<'a>(pres: &'a Presentation, budget: &SearchBudget) -> Result<ModelStream<'a>, SearchError> {
    pres.validate()?;
    let types: Vec<Name> = pres.objects.iter().cloned().collect();
    let bounds: Vec<usize> = types.iter().map(|t| budget.bound(t)).collect();
    let sizes = if bounds.iter().all(|&b| b >= 1) { Some(vec![1; types.len()]) } else { None };
    let mut stream = ModelStream {
        pres,
        budget: budget.clone(),
        types,
        bounds,
        sizes,
        constraints: Vec::new(),
        bits: Vec::new(),
        depth: None,
        resume: false,
        shapes: Vec::new(),
        mats: MatrixInstance::default(),
        started: Instant::now(),
        yielded: 0,
        done: false,
    };
    for ax in &pres.axioms {
        stream.add_constraint(ax.lhs.clone(), ax.rhs.clone(), true);
    }
    Ok(stream)
}

impl<'a> ModelStream<'a> {
    fn add_constraint(&mut self, lhs: Morphism, rhs: Morphism, holds: bool) {
        let mut gens = lhs.generators();
        gens.extend(rhs.generators());
        let level = gens.iter().filter_map(|g| self.pres.generators.get_index_of(g)).max();
        self.constraints.push(Constraint { lhs, rhs, holds, level });
    }

    fn enter_sizes(&mut self) -> Result<(), SearchError> {
        let sizes = self.sizes.as_ref().expect("sizes present");
        self.mats = MatrixInstance::default();
        for (t, &n) in self.types.iter().zip(sizes) {
            self.mats.dims.insert(t.clone(), n);
        }
        self.shapes.clear();
        self.bits.clear();
        for sig in self.pres.generators.values() {
            let (r, c) = (self.mats.dim(&sig.dom)?, self.mats.dim(&sig.cod)?);
            self.shapes.push((r, c));
            self.bits.push(vec![false; r * c]);
        }
        Ok(())
    }

    fn next_sizes(&mut self) {
        let Some(sizes) = self.sizes.as_mut() else { return };
        for i in (0..sizes.len()).rev() {
            if sizes[i] < self.bounds[i] {
                sizes[i] += 1;
                sizes[i + 1..].iter_mut().for_each(|s| *s = 1);
                return;
            }
        }
        self.sizes = None;
    }

    fn load(&mut self, k: usize) -> Result<(), SearchError> {
        let (r, c) = self.shapes[k];
        let mut m = BoolMatrix::zeros(r, c)?;
        for (idx, _) in self.bits[k].iter().enumerate().filter(|(_, b)| **b) {
            m.set(idx / c, idx % c, true);
        }
        let g = self.pres.generators.get_index(k).expect("generator index").0.clone();
        self.mats.matrices.insert(g, m);
        Ok(())
    }

    /// Constraints whose last generator is `level` hold for the current values.
    fn passes(&self, level: Option<usize>) -> Result<bool, SearchError> {
        for c in self.constraints.iter().filter(|c| c.level == level) {
            let l = eval_matrix(&c.lhs, &self.mats, self.pres)?;
            let r = eval_matrix(&c.rhs, &self.mats, self.pres)?;
            if l.le(&r) != c.holds {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Big-endian increment of generator `k`; false on overflow.
    fn increment(&mut self, k: usize) -> bool {
        let bits = &mut self.bits[k];
        match bits.iter().rposition(|b| !b) {
            Some(i) => {
                bits[i] = true;
                bits[i + 1..].iter_mut().for_each(|b| *b = false);
                true
            }
            None => false,
        }
    }

    /// Moves to the next value at the deepest assigned generator,
    /// backtracking on overflow. False when the size vector is exhausted.
    fn bump(&mut self, mut k: usize) -> Result<bool, SearchError> {
        loop {
            if self.increment(k) {
                self.load(k)?;
                self.depth = Some(k);
                return Ok(true);
            }
            if k == 0 {
                return Ok(false);
            }
            k -= 1;
        }
    }

    fn out_of_time(&self) -> bool {
        self.budget.timeout.is_some_and(|t| self.started.elapsed() > t)
    }

    /// Advances to the next complete assignment passing every constraint.
    fn advance(&mut self) -> Result<Option<Truncation>, SearchError> {
        let n = self.pres.generators.len();
        loop {
            if self.out_of_time() {
                return Ok(Some(Truncation::Timeout));
            }
            if self.sizes.is_none() {
                self.done = true;
                return Ok(None);
            }
            let Some(d) = self.depth else {
                self.enter_sizes()?;
                if !self.passes(None)? || n == 0 {
                    let model = n == 0 && self.passes(None)?;
                    self.next_sizes();
                    if model {
                        return Ok(None);
                    }
                    continue;
                }
                self.load(0)?;
                self.depth = Some(0);
                self.resume = false;
                continue;
            };
            let ok = if self.resume {
                self.resume = false;
                false
            } else {
                self.passes(Some(d))?
            };
            if ok && d + 1 == n {
                self.resume = true;
                return Ok(None);
            }
            if ok {
                self.bits[d + 1].iter_mut().for_each(|b| *b = false);
                self.load(d + 1)?;
                self.depth = Some(d + 1);
                continue;
            }
            if !self.bump(d)? {
                self.depth = None;
                self.next_sizes();
            }
        }
    }

    /// The current assignment as an instance with generated atom names.
    fn instance(&self) -> Instance {
        let mut inst = Instance::new();
        for (t, &n) in self.types.iter().zip(self.sizes.as_ref().expect("sizes present")) {
            inst.set_carrier(t.clone(), atom_names(t, n));
        }
        for (g, sig) in &self.pres.generators {
            let m = &self.mats.matrices[g];
            let pairs: Vec<_> = m
                .entries()
                .map(|(i, j)| {
                    (
                        inst.element_at(&sig.dom, i).expect("row in carrier"),
                        inst.element_at(&sig.cod, j).expect("column in carrier"),
                    )
                })
                .collect();
            inst.set_relation(g.clone(), pairs);
        }
        inst.name = Some(Name::new("countermodel"));
        inst
    }

    fn next_model(&mut self) -> Option<Result<Enumerated, SearchError>> {
        if self.done {
            return None;
        }
        if self.budget.max_models.is_some_and(|m| self.yielded >= m) {
            self.done = true;
            return Some(Ok(Enumerated::Truncated(Truncation::MaxModels)));
        }
        // A size vector without generators yields once, then moves on.
        let sizes_before = self.sizes.clone();
        match self.advance() {
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
            Ok(Some(t)) => {
                self.done = true;
                Some(Ok(Enumerated::Truncated(t)))
            }
            Ok(None) if self.done => None,
            Ok(None) => {
                self.yielded += 1;
                if self.pres.generators.is_empty() {
                    let saved = std::mem::replace(&mut self.sizes, sizes_before);
                    let model = self.instance();
                    self.sizes = saved;
                    return Some(Ok(Enumerated::Model(model)));
                }
                Some(Ok(Enumerated::Model(self.instance())))
            }
        }
    }
}

/// A random model of `pres` with the given carrier sizes, found by a
/// depth-first search that tries `tries` random values per generator,
/// each drawn with a random density. `None` when no model was reached.
/// The result is not uniformly distributed over the models.
pub fn sample_model<R: rand::Rng>(
    pres: &Presentation,
    sizes: &IndexMap<Name, usize>,
    tries: usize,
    rng: &mut R,
) -> Result<Option<Instance>, SearchError> {
    let mut stream = enumerate_models(pres, &SearchBudget::uniform(1))?;
    stream.sizes = Some(stream.types.iter().map(|t| sizes.get(t).copied().unwrap_or(1)).collect());
    stream.enter_sizes()?;
    if !stream.passes(None)? {
        return Ok(None);
    }
    let mut visits = 0usize;
    if sample_from(&mut stream, 0, tries, rng, &mut visits)? {
        Ok(Some(stream.instance()))
    } else {
        Ok(None)
    }
}

fn sample_from<R: rand::Rng>(
    st: &mut ModelStream<'_>,
    k: usize,
    tries: usize,
    rng: &mut R,
    visits: &mut usize,
) -> Result<bool, SearchError> {
    if k == st.bits.len() {
        return Ok(true);
    }
    for _ in 0..tries {
        *visits += 1;
        if *visits > tries * tries * st.bits.len().max(1) {
            return Ok(false);
        }
        let density: f64 = rng.gen();
        st.bits[k].iter_mut().for_each(|b| *b = rng.gen_bool(density));
        st.load(k)?;
        if st.passes(Some(k))? && sample_from(st, k + 1, tries, rng, visits)? {
            return Ok(true);
        }
    }
    Ok(false)
}

impl<'a> Iterator for ModelStream<'a> {
    type Item = Result<Enumerated, SearchError>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_model()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SearchOutcome {
    /// The first model in which the conjecture fails, with one pair of
    /// the left side missing from the right side.
    Countermodel { model: Instance, witness: (crate::finrel::Element, crate::finrel::Element) },
    /// Every model within the budget satisfies the conjecture. This is
    /// not a proof.
    NoneUpTo { budget: SearchBudget, truncated: Option<Truncation> },
}

impl std::fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchOutcome::Countermodel { witness: (a, b), .. } => write!(f, "countermodel found, witness ({a}, {b})"),
            SearchOutcome::NoneUpTo { budget, truncated } => {
                write!(f, "no countermodel up to bound {}", budget.max_carrier)?;
                match truncated {
                    Some(Truncation::MaxModels) => write!(f, " (stopped at the model limit)"),
                    Some(Truncation::Timeout) => write!(f, " (stopped at the time limit)"),
                    None => Ok(()),
                }
            }
        }
    }
}

/// The first enumerated model in which `lhs ⇒ rhs` fails.
pub fn find_countermodel(
    pres: &Presentation,
    lhs: &Morphism,
    rhs: &Morphism,
    budget: &SearchBudget,
) -> Result<SearchOutcome, SearchError> {
    let (l, r) = (pres.infer_type(lhs).map_err(MatrixError::from)?, pres.infer_type(rhs).map_err(MatrixError::from)?);
    if l != r {
        return Err(SearchError::SignatureMismatch { left: l, right: r });
    }
    let mut stream = enumerate_models(pres, budget)?;
    stream.add_constraint(lhs.clone(), rhs.clone(), false);
    match stream.next() {
        None => Ok(SearchOutcome::NoneUpTo { budget: budget.clone(), truncated: None }),
        Some(item) => match item? {
            Enumerated::Truncated(t) => Ok(SearchOutcome::NoneUpTo { budget: budget.clone(), truncated: Some(t) }),
            Enumerated::Model(model) => {
                let lm = eval_matrix(lhs, &stream.mats, pres)?;
                let rm = eval_matrix(rhs, &stream.mats, pres)?;
                let (i, j) = lm.entries().find(|&(i, j)| !rm.get(i, j)).expect("conjecture fails in the model");
                let witness = (
                    model.element_at(&l.dom, i).expect("row in carrier"),
                    model.element_at(&l.cod, j).expect("column in carrier"),
                );
                Ok(SearchOutcome::Countermodel { model, witness })
            }
        },
    }
}
