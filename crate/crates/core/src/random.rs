//! Random presentations, instances and well-typed expressions.
//!
//! Every function draws from a caller-supplied RNG, so a seed fixes the
//! output. Objects are kept small: with carriers of at most four atoms no
//! generated object has more than [`MAX_ELEMENTS`] elements.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::finrel::Instance;
use crate::linrel::{LinInstance, LinRel, Q};
use crate::logic::interpret::converse;
use crate::presentation::{distributor, Presentation};
use crate::search::atom_names;
use crate::syntax::{Morphism, Object, Signature};

/// Largest element count of a generated object when every carrier has four atoms.
pub const MAX_ELEMENTS: usize = 64;

const BASIC: [&str; 3] = ["A", "B", "C"];

fn bound(o: &Object) -> usize {
    match o {
        Object::Gen(_) => 4,
        Object::Unit => 1,
        Object::Zero => 0,
        Object::Tensor(ps) => ps.iter().map(bound).product(),
        Object::Sum(ps) => ps.iter().map(bound).sum(),
    }
}

fn small(o: &Object) -> bool {
    bound(o) <= MAX_ELEMENTS
}

/// Two or three basic types and two to five generators without axioms.
/// Generator signatures are mostly basic; some use `I`, a product, or
/// (when `distributive`) a sum.
pub fn random_presentation<R: Rng>(rng: &mut R, distributive: bool) -> Presentation {
    let mut pres = Presentation::new();
    pres.distributive = distributive;
    let n_types = rng.gen_range(2..=3);
    for t in &BASIC[..n_types] {
        pres.add_object(*t);
    }
    let n_gens = rng.gen_range(2..=5);
    for i in 0..n_gens {
        let dom = random_object(rng, &pres);
        let cod = random_object(rng, &pres);
        pres.add_generator(format!("R{i}"), dom, cod);
    }
    pres
}

fn random_basic<R: Rng>(rng: &mut R, pres: &Presentation) -> Object {
    let i = rng.gen_range(0..pres.objects.len());
    Object::Gen(pres.objects[i].clone())
}

/// A basic type most of the time, otherwise `I`, a binary product, or a binary sum.
pub fn random_object<R: Rng>(rng: &mut R, pres: &Presentation) -> Object {
    match rng.gen_range(0..10) {
        0 => Object::Unit,
        1 => Object::pair(&random_basic(rng, pres), &random_basic(rng, pres)),
        2 if pres.distributive => Object::sum([random_basic(rng, pres), random_basic(rng, pres)]),
        _ => random_basic(rng, pres),
    }
}

/// Carriers of zero to `max_carrier` atoms (empty only occasionally) and
/// relations of a random density.
pub fn random_instance<R: Rng>(rng: &mut R, pres: &Presentation, max_carrier: usize) -> Instance {
    let mut inst = Instance::new();
    for t in &pres.objects {
        let n = if max_carrier == 0 || rng.gen_ratio(1, 10) { 0 } else { rng.gen_range(1..=max_carrier) };
        inst.set_carrier(t.clone(), atom_names(t, n));
    }
    for (g, sig) in &pres.generators {
        let xs = inst.elements(&sig.dom).expect("carriers are set");
        let ys = inst.elements(&sig.cod).expect("carriers are set");
        let density = *[0.2, 0.5, 0.8].choose(rng).unwrap();
        let mut pairs = Vec::new();
        for x in &xs {
            for y in &ys {
                if rng.gen_bool(density) {
                    pairs.push((x.clone(), y.clone()));
                }
            }
        }
        inst.set_relation(g.clone(), pairs);
    }
    inst
}

/// A vector of small integers in `[-2, 2]`.
fn random_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Q> {
    (0..n).map(|_| Q::from_integer(rng.gen_range(-2..=2).into())).collect()
}

/// A random linear relation `Q^dom → Q^cod` spanned by up to `dom + cod` small vectors.
pub fn random_linrel<R: Rng>(rng: &mut R, dom: usize, cod: usize) -> LinRel {
    let k = rng.gen_range(0..=dom + cod);
    let vs = (0..k).map(|_| random_vector(rng, dom + cod)).collect();
    LinRel::span(dom, cod, vs).expect("vectors of the right length")
}

/// A random linear map `Q^dom → Q^cod`, as its graph.
pub fn random_linear_map<R: Rng>(rng: &mut R, dom: usize, cod: usize) -> LinRel {
    let a: Vec<Vec<Q>> = (0..dom).map(|_| random_vector(rng, cod)).collect();
    LinRel::graph(&a, dom, cod)
}

/// Dimensions up to `max_dim` and random linear relations for every generator.
pub fn random_lin_instance<R: Rng>(rng: &mut R, pres: &Presentation, max_dim: usize) -> LinInstance {
    let mut inst = LinInstance::default();
    for t in &pres.objects {
        inst.dims.insert(t.clone(), rng.gen_range(0..=max_dim));
    }
    for (g, sig) in &pres.generators {
        let d = inst.dim(&sig.dom).expect("dims are set");
        let c = inst.dim(&sig.cod).expect("dims are set");
        let r = random_linrel(rng, d, c);
        inst.relations.insert(g.clone(), r);
    }
    inst
}

/// Which constructors an expression may use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ExprConfig {
    /// Upper bound on [`Morphism::depth`].
    pub depth: usize,
    /// Allow the derived constructors (dagger, cups and caps, meet, top, join, bottom).
    pub derived: bool,
    /// Allow distributors; the linear backend has no semantics for them.
    pub distributors: bool,
}

impl ExprConfig {
    pub fn new(depth: usize) -> Self {
        ExprConfig { depth, derived: true, distributors: true }
    }
}

struct Gen<'a, R> {
    rng: &'a mut R,
    pres: &'a Presentation,
    cfg: ExprConfig,
}

impl<R: Rng> Gen<'_, R> {
    fn sig(&self, m: &Morphism) -> Option<Signature> {
        self.pres.infer_type(m).ok()
    }

    /// Splits a product `dom` into two nonempty products.
    fn split_tensor(&mut self, dom: &Object) -> Option<(Object, Object)> {
        let fs = dom.factors();
        if fs.len() < 2 {
            return None;
        }
        let k = self.rng.gen_range(1..fs.len());
        Some((Object::tensor(fs[..k].to_vec()), Object::tensor(fs[k..].to_vec())))
    }

    fn split_sum(&mut self, dom: &Object) -> Option<(Object, Object)> {
        let ss = dom.summands();
        if ss.len() < 2 {
            return None;
        }
        let k = self.rng.gen_range(1..ss.len());
        Some((Object::sum(ss[..k].to_vec()), Object::sum(ss[k..].to_vec())))
    }

    /// `X` when `parts` is `X` twice over.
    fn halves(parts: Vec<Object>, join: fn(Vec<Object>) -> Object) -> Option<Object> {
        let n = parts.len();
        (n >= 2 && n.is_multiple_of(2) && parts[..n / 2] == parts[n / 2..]).then(|| join(parts[..n / 2].to_vec()))
    }

    fn leaves(&mut self, dom: &Object) -> Vec<Morphism> {
        use Morphism::*;
        let mut out = vec![Identity(dom.clone()), Copy(dom.clone()), Delete(dom.clone())];
        // Generators are listed several times so that they dominate the draw.
        for (g, s) in &self.pres.generators {
            if &s.dom == dom {
                out.extend(std::iter::repeat_n(Generator(g.clone()), 4));
            }
            if self.cfg.derived && &s.cod == dom {
                out.extend(std::iter::repeat_n(Generator(g.clone()).dagger(), 2));
            }
        }
        if let Some(x) = Self::halves(dom.factors(), Object::tensor) {
            out.push(Merge(x.clone()));
            if self.cfg.derived {
                out.push(Counit(x));
            }
        }
        if let Some((x, y)) = self.split_tensor(dom) {
            out.push(Braid(x, y));
        }
        let y = random_object(self.rng, self.pres);
        if *dom == Object::Unit {
            out.push(Create(y.clone()));
            if self.cfg.derived {
                out.push(Unit(y.clone()));
            }
        }
        if self.cfg.derived {
            out.push(Top(dom.clone(), y.clone()));
        }
        if self.pres.distributive {
            out.push(CoCopy(dom.clone()));
            if self.rng.gen_ratio(1, 4) {
                out.push(CoDelete(dom.clone()));
            }
            if self.cfg.derived {
                out.push(Bottom(dom.clone(), y.clone()));
            }
            if let Some(x) = Self::halves(dom.summands(), Object::sum) {
                out.push(CoMerge(x));
            }
            if let Some((x, z)) = self.split_sum(dom) {
                out.push(SumBraid(x, z));
            }
            if *dom == Object::Zero {
                out.push(CoCreate(y));
            }
            if self.cfg.distributors {
                let fs = dom.factors();
                if let Some((last, init)) = fs.split_last() {
                    if let Some((a, b)) = self.split_sum(last) {
                        out.push(Distribute(Object::tensor(init.to_vec()), a, b));
                    }
                }
                let ss = dom.summands();
                if ss.len() == 2 {
                    let (l, r) = (ss[0].factors(), ss[1].factors());
                    for k in 1..l.len().min(r.len()) {
                        if l[..k] == r[..k] {
                            let x = Object::tensor(l[..k].to_vec());
                            let (a, b) = (Object::tensor(l[k..].to_vec()), Object::tensor(r[k..].to_vec()));
                            if distributor(&x, &a, &b).1 == *dom {
                                out.push(DistributeInv(x, a, b));
                            }
                        }
                    }
                }
            }
        }
        out.retain(|m| self.sig(m).is_some_and(|s| &s.dom == dom && small(&s.cod)));
        out
    }

    fn leaf(&mut self, dom: &Object) -> Morphism {
        let ls = self.leaves(dom);
        ls.choose(self.rng).cloned().unwrap_or_else(|| Morphism::Identity(dom.clone()))
    }

    /// A morphism out of `dom` of depth at most `d`.
    fn from(&mut self, dom: &Object, d: usize) -> Morphism {
        use Morphism::*;
        if d <= 1 || self.rng.gen_ratio(1, 4) {
            return self.leaf(dom);
        }
        let m = match self.rng.gen_range(0..6) {
            0 | 1 => {
                let f = self.from(dom, d - 1);
                let mid = self.sig(&f).expect("well typed").cod;
                let g = self.from(&mid, d - 1);
                Compose(vec![f, g])
            }
            2 => match self.split_tensor(dom) {
                Some((x, y)) => Tensor(vec![self.from(&x, d - 1), self.from(&y, d - 1)]),
                None if self.pres.distributive && self.rng.gen_bool(0.5) => match self.split_sum(dom) {
                    Some((x, y)) => SumTensor(vec![self.from(&x, d - 1), self.from(&y, d - 1)]),
                    None => SumTensor(vec![self.from(dom, d - 1), self.from(&Object::Zero, d - 1)]),
                },
                None => Tensor(vec![self.from(dom, d - 1), self.from(&Object::Unit, d - 1)]),
            },
            3 if self.cfg.derived && d >= 3 => {
                let g = self.from(dom, d - 2);
                Dagger(Box::new(converse(&g)))
            }
            4 | 5 if self.cfg.derived => {
                let f = self.from(dom, d - 1);
                let s = self.sig(&f).expect("well typed");
                let g = self.parallel(&s, d - 1);
                if self.pres.distributive && self.rng.gen_bool(0.5) {
                    f.join(g)
                } else {
                    f.meet(g)
                }
            }
            _ => self.leaf(dom),
        };
        match self.sig(&m) {
            Some(s) if small(&s.cod) && m.depth() <= d => m,
            _ => self.leaf(dom),
        }
    }

    /// A morphism of signature `s` and depth at most `d`.
    fn parallel(&mut self, s: &Signature, d: usize) -> Morphism {
        for _ in 0..8 {
            let m = self.from(&s.dom, d);
            if self.sig(&m).as_ref() == Some(s) {
                return m;
            }
        }
        if self.pres.distributive && self.rng.gen_bool(0.5) {
            Morphism::Bottom(s.dom.clone(), s.cod.clone())
        } else {
            Morphism::Top(s.dom.clone(), s.cod.clone())
        }
    }
}

/// A well-typed expression over `pres` out of `dom`.
pub fn random_expr_from<R: Rng>(rng: &mut R, pres: &Presentation, dom: &Object, cfg: ExprConfig) -> Morphism {
    Gen { rng, pres, cfg }.from(dom, cfg.depth)
}

/// A well-typed expression over `pres`, usually out of the domain of a generator.
pub fn random_expr<R: Rng>(rng: &mut R, pres: &Presentation, cfg: ExprConfig) -> Morphism {
    let dom = match pres.generators.values().collect::<Vec<_>>().choose(rng) {
        Some(s) if rng.gen_ratio(3, 4) => s.dom.clone(),
        _ => random_object(rng, pres),
    };
    random_expr_from(rng, pres, &dom, cfg)
}

/// A well-typed expression of signature `sig`; falls back to `top` or `bottom`.
pub fn random_parallel<R: Rng>(rng: &mut R, pres: &Presentation, sig: &Signature, cfg: ExprConfig) -> Morphism {
    Gen { rng, pres, cfg }.parallel(sig, cfg.depth)
}
