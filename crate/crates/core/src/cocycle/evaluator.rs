use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use super::coboundary::{CoboundaryData, CoboundaryKind};
use super::connection::{AffConn, ProjConn};
use super::cycle::CycleSpec;
use super::geometric::{check_form, cycle_weights, function_value, mixing_value, vector_value, Arg};
use super::local::FormSeries;
use crate::error::KncError;
use crate::exact::Rat;
use crate::forms::{BasisIndex, Expansion, Form, KnContext};

/// The algebra a cocycle is defined on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CocycleKind {
    /// `A × A`.
    Function,
    /// `L × L`.
    Vector,
    /// `L × A`, extended antisymmetrically.
    Mixing,
    /// All of `D¹ × D¹`.
    D1,
}

impl CocycleKind {
    /// Whether `(x, y)` lies in the domain.
    pub fn admits(&self, x: BasisIndex, y: BasisIndex) -> bool {
        let d1 = |w: i64| w == 0 || w == -1;
        match self {
            CocycleKind::Function => x.weight == 0 && y.weight == 0,
            CocycleKind::Vector => x.weight == -1 && y.weight == -1,
            CocycleKind::Mixing => x.weight + y.weight == -1 && d1(x.weight) && d1(y.weight),
            CocycleKind::D1 => d1(x.weight) && d1(y.weight),
        }
    }

    /// Weights of the canonical ordered pairs enumerated by scans.
    pub fn pair_weights(&self) -> Vec<(i64, i64)> {
        match self {
            CocycleKind::Function => vec![(0, 0)],
            CocycleKind::Vector => vec![(-1, -1)],
            CocycleKind::Mixing => vec![(-1, 0)],
            CocycleKind::D1 => vec![(0, 0), (-1, 0), (-1, -1)],
        }
    }
}

impl fmt::Display for CocycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CocycleKind::Function => "function",
            CocycleKind::Vector => "vector",
            CocycleKind::Mixing => "mixing",
            CocycleKind::D1 => "d1",
        })
    }
}

/// Where a cocycle came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Provenance {
    Geometric { cycle: String, connection: String },
    Coboundary { data: CoboundaryData },
    Pullback { lambda: i64 },
    Combination { terms: Vec<(Rat, Provenance)> },
    Restriction { part: CocycleKind, of: Box<Provenance> },
    Extension { of: Box<Provenance> },
    Table { entries: usize },
}

/// A cocycle given by some other module on basis pairs.
pub trait BasisCocycle: Send + Sync {
    fn value(&self, ctx: &KnContext, x: BasisIndex, y: BasisIndex) -> Result<Rat, KncError>;
}

enum Node {
    Function(Vec<i64>),
    Vector(Vec<i64>, Option<FormSeries>),
    Mixing(Vec<i64>, Option<FormSeries>),
    Coboundary(CoboundaryData),
    External(Arc<dyn BasisCocycle>),
    Combination(Vec<(Rat, CocycleEvaluator)>),
    Restriction(CocycleEvaluator),
    Extension(CocycleEvaluator),
    Table(BTreeMap<(BasisIndex, BasisIndex), Rat>),
}

/// An exact bilinear form on basis pairs, memoized.
///
/// Cloning shares the memo. Evaluation is pure, so the evaluator can be
/// used from several threads.
#[derive(Clone)]
pub struct CocycleEvaluator {
    ctx: Arc<KnContext>,
    kind: CocycleKind,
    provenance: Provenance,
    node: Arc<Node>,
    memo: Arc<RwLock<HashMap<(BasisIndex, BasisIndex), Rat>>>,
}

impl fmt::Debug for CocycleEvaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CocycleEvaluator")
            .field("kind", &self.kind)
            .field("provenance", &self.provenance)
            .finish()
    }
}

fn nonzero_series(f: Form) -> Option<FormSeries> {
    (!f.is_zero()).then(|| FormSeries::new(f))
}

impl CocycleEvaluator {
    fn build(ctx: &Arc<KnContext>, kind: CocycleKind, provenance: Provenance, node: Node) -> Self {
        CocycleEvaluator {
            ctx: ctx.clone(),
            kind,
            provenance,
            node: Arc::new(node),
            memo: Arc::new(RwLock::new(HashMap::new())),
        }
    }

    /// `γ_C(g, h) = Σ res_C(g dh)`.
    pub fn function(ctx: &Arc<KnContext>, cycle: &CycleSpec) -> Self {
        Self::build(
            ctx,
            CocycleKind::Function,
            Provenance::Geometric {
                cycle: cycle.to_string(),
                connection: "none".into(),
            },
            Node::Function(cycle_weights(ctx, cycle)),
        )
    }

    pub fn vector(ctx: &Arc<KnContext>, cycle: &CycleSpec, r: &ProjConn) -> Self {
        let connection = if r.extra.is_zero() {
            "R0".to_string()
        } else {
            format!("R0 + {}", r.extra)
        };
        Self::build(
            ctx,
            CocycleKind::Vector,
            Provenance::Geometric {
                cycle: cycle.to_string(),
                connection,
            },
            Node::Vector(cycle_weights(ctx, cycle), nonzero_series(r.extra.clone())),
        )
    }

    pub fn mixing(ctx: &Arc<KnContext>, cycle: &CycleSpec, t: &AffConn) -> Self {
        let connection = if t.extra.is_zero() {
            "T0".to_string()
        } else {
            format!("T0 + {}", t.extra)
        };
        Self::build(
            ctx,
            CocycleKind::Mixing,
            Provenance::Geometric {
                cycle: cycle.to_string(),
                connection,
            },
            Node::Mixing(cycle_weights(ctx, cycle), nonzero_series(Form::new(1, t.total()))),
        )
    }

    /// Geometric cocycle of the given kind with the default connection.
    pub fn geometric(ctx: &Arc<KnContext>, kind: CocycleKind, cycle: &CycleSpec) -> Result<Self, KncError> {
        match kind {
            CocycleKind::Function => Ok(Self::function(ctx, cycle)),
            CocycleKind::Vector => Ok(Self::vector(ctx, cycle, &ProjConn::zero())),
            CocycleKind::Mixing => Ok(Self::mixing(ctx, cycle, &AffConn::default_for(ctx.config()))),
            CocycleKind::D1 => Err(KncError::KindMismatch("no geometric d1 cocycle".into())),
        }
    }

    pub fn coboundary(ctx: &Arc<KnContext>, data: CoboundaryData) -> Self {
        let kind = match data.kind {
            CoboundaryKind::W => CocycleKind::Vector,
            CoboundaryKind::V => CocycleKind::Mixing,
        };
        Self::build(
            ctx,
            kind,
            Provenance::Coboundary { data: data.clone() },
            Node::Coboundary(data),
        )
    }

    pub fn external(
        ctx: &Arc<KnContext>,
        kind: CocycleKind,
        provenance: Provenance,
        inner: Arc<dyn BasisCocycle>,
    ) -> Self {
        Self::build(ctx, kind, provenance, Node::External(inner))
    }

    /// `Σ c_i γ_i`. The kind is shared by all terms or else `d1`.
    pub fn combination(terms: Vec<(Rat, CocycleEvaluator)>) -> Result<Self, KncError> {
        let Some((_, first)) = terms.first() else {
            return Err(KncError::Invalid("empty combination".into()));
        };
        let ctx = first.ctx.clone();
        if terms.iter().any(|(_, t)| !Arc::ptr_eq(&t.ctx, &ctx)) {
            return Err(KncError::Invalid("combination over different contexts".into()));
        }
        let kind = if terms.iter().all(|(_, t)| t.kind == first.kind) {
            first.kind
        } else {
            CocycleKind::D1
        };
        let provenance = Provenance::Combination {
            terms: terms.iter().map(|(c, t)| (c.clone(), t.provenance.clone())).collect(),
        };
        Ok(Self::build(&ctx, kind, provenance, Node::Combination(terms)))
    }

    pub fn scaled(&self, c: Rat) -> Self {
        Self::combination(vec![(c, self.clone())]).expect("single term")
    }

    pub fn plus(&self, other: &CocycleEvaluator) -> Result<Self, KncError> {
        Self::combination(vec![(Rat::one(), self.clone()), (Rat::one(), other.clone())])
    }

    /// An antisymmetric form given by listed values; unlisted pairs are 0
    /// unless their transpose is listed.
    pub fn table(
        ctx: &Arc<KnContext>,
        kind: CocycleKind,
        entries: impl IntoIterator<Item = ((BasisIndex, BasisIndex), Rat)>,
    ) -> Result<Self, KncError> {
        let mut map = BTreeMap::new();
        for ((x, y), v) in entries {
            if !kind.admits(x, y) {
                return Err(KncError::KindMismatch(format!("({x}, {y}) is outside the {kind} domain")));
            }
            if x == y && !v.is_zero() {
                return Err(KncError::Invalid(format!("nonzero diagonal value at {x}")));
            }
            if let Some(t) = map.get(&(y, x)) {
                if *t != -&v {
                    return Err(KncError::Invalid(format!("values at ({x}, {y}) are not antisymmetric")));
                }
                continue;
            }
            map.insert((x, y), v);
        }
        let n = map.len();
        Ok(Self::build(ctx, kind, Provenance::Table { entries: n }, Node::Table(map)))
    }

    pub(crate) fn restriction(&self, part: CocycleKind) -> Self {
        Self::build(
            &self.ctx,
            part,
            Provenance::Restriction {
                part,
                of: Box::new(self.provenance.clone()),
            },
            Node::Restriction(self.clone()),
        )
    }

    pub(crate) fn zero_extension(&self) -> Self {
        Self::build(
            &self.ctx,
            CocycleKind::D1,
            Provenance::Extension {
                of: Box::new(self.provenance.clone()),
            },
            Node::Extension(self.clone()),
        )
    }

    pub fn kind(&self) -> CocycleKind {
        self.kind
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn context(&self) -> &Arc<KnContext> {
        &self.ctx
    }

    /// Value on a basis pair in the domain of this cocycle.
    pub fn eval(&self, x: BasisIndex, y: BasisIndex) -> Result<Rat, KncError> {
        if !self.kind.admits(x, y) {
            return Err(KncError::WeightMismatch(format!(
                "{} cocycle cannot take ({x}, {y})",
                self.kind
            )));
        }
        if self.kind == CocycleKind::Mixing && x.weight == 0 {
            return Ok(-self.eval(y, x)?);
        }
        if let Some(v) = self.memo.read().get(&(x, y)) {
            return Ok(v.clone());
        }
        let v = self.compute(x, y)?;
        self.memo.write().insert((x, y), v.clone());
        Ok(v)
    }

    /// Value with the cocycle viewed on `D¹`: zero off its own domain.
    pub fn eval_d1(&self, x: BasisIndex, y: BasisIndex) -> Result<Rat, KncError> {
        if self.kind.admits(x, y) {
            return self.eval(x, y);
        }
        if CocycleKind::D1.admits(x, y) {
            return Ok(Rat::zero());
        }
        Err(KncError::WeightMismatch(format!("({x}, {y}) is not a pair of D1 generators")))
    }

    /// Bilinear extension to basis coordinates, on `D¹`.
    pub fn eval_coords(&self, a: &Expansion, b: &Expansion) -> Result<Rat, KncError> {
        let mut acc = Rat::zero();
        for (x, cx) in a {
            for (y, cy) in b {
                let v = self.eval_d1(*x, *y)?;
                if !v.is_zero() {
                    acc += v * cx * cy;
                }
            }
        }
        Ok(acc)
    }

    /// Value on arbitrary forms, through their basis expansions.
    pub fn eval_forms(&self, f: &Form, g: &Form) -> Result<Rat, KncError> {
        let a = self.ctx.expand(f)?;
        let b = self.ctx.expand(g)?;
        if let (Some(x), Some(y)) = (a.keys().next(), b.keys().next()) {
            if !self.kind.admits(*x, *y) {
                return Err(KncError::WeightMismatch(format!(
                    "{} cocycle cannot take weights ({}, {})",
                    self.kind, f.weight, g.weight
                )));
            }
        }
        self.eval_coords(&a, &b)
    }

    fn compute(&self, x: BasisIndex, y: BasisIndex) -> Result<Rat, KncError> {
        let ctx = &self.ctx;
        match self.node.as_ref() {
            Node::Function(w) => function_value(ctx, w, Arg::Basis(x), Arg::Basis(y)),
            Node::Vector(w, r) => vector_value(ctx, w, r.as_ref(), Arg::Basis(x), Arg::Basis(y)),
            Node::Mixing(w, t) => mixing_value(ctx, w, t.as_ref(), Arg::Basis(x), Arg::Basis(y)),
            Node::Coboundary(d) => d.value(ctx, x, y),
            Node::External(e) => e.value(ctx, x, y),
            Node::Combination(terms) => {
                let mut acc = Rat::zero();
                for (c, t) in terms {
                    let v = t.eval_d1(x, y)?;
                    if !v.is_zero() {
                        acc += v * c;
                    }
                }
                Ok(acc)
            }
            Node::Restriction(parent) => parent.eval_d1(x, y),
            Node::Extension(parent) => parent.eval_d1(x, y),
            Node::Table(map) => Ok(map
                .get(&(x, y))
                .cloned()
                .or_else(|| map.get(&(y, x)).map(|v| -v))
                .unwrap_or_else(Rat::zero)),
        }
    }
}

/// `γ_C(g, h) = Σ w · res(g dh)` on arbitrary functions.
pub fn gamma_function(ctx: &KnContext, cycle: &CycleSpec, g: &Form, h: &Form) -> Result<Rat, KncError> {
    check_form(ctx, g, 0)?;
    check_form(ctx, h, 0)?;
    let (g, h) = (FormSeries::new(g.clone()), FormSeries::new(h.clone()));
    function_value(ctx, &cycle_weights(ctx, cycle), Arg::Fixed(&g), Arg::Fixed(&h))
}

/// The vector field cocycle with projective connection `r`.
pub fn gamma_vector(ctx: &KnContext, cycle: &CycleSpec, r: &ProjConn, e: &Form, f: &Form) -> Result<Rat, KncError> {
    check_form(ctx, e, -1)?;
    check_form(ctx, f, -1)?;
    let (e, f) = (FormSeries::new(e.clone()), FormSeries::new(f.clone()));
    let r = nonzero_series(r.extra.clone());
    vector_value(ctx, &cycle_weights(ctx, cycle), r.as_ref(), Arg::Fixed(&e), Arg::Fixed(&f))
}

/// The mixing cocycle with affine connection `t`.
pub fn gamma_mixing(ctx: &KnContext, cycle: &CycleSpec, t: &AffConn, e: &Form, g: &Form) -> Result<Rat, KncError> {
    check_form(ctx, e, -1)?;
    check_form(ctx, g, 0)?;
    let (e, g) = (FormSeries::new(e.clone()), FormSeries::new(g.clone()));
    let t = nonzero_series(Form::new(1, t.total()));
    mixing_value(ctx, &cycle_weights(ctx, cycle), t.as_ref(), Arg::Fixed(&e), Arg::Fixed(&g))
}
