use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::lie::FinDimLie;
use crate::cocycle::{CocycleEvaluator, CocycleKind};
use crate::error::KncError;
use crate::exact::Rat;
use crate::forms::{BasisIndex, Form, KnContext};
use crate::ops::{basis_op, OpKind};

/// A finite sum `Σ c · x_i ⊗ A_{n,p}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CurrentElement {
    terms: BTreeMap<(usize, BasisIndex), Rat>,
}

impl CurrentElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `x_i ⊗ a`, for a function basis element `a`.
    pub fn tensor(i: usize, a: BasisIndex) -> Result<Self, KncError> {
        let mut out = Self::zero();
        out.add_term(i, a, Rat::one())?;
        Ok(out)
    }

    pub fn add_term(&mut self, i: usize, a: BasisIndex, c: Rat) -> Result<(), KncError> {
        if !a.is_function() {
            return Err(KncError::WeightMismatch(format!("current elements need functions, got {a}")));
        }
        let e = self.terms.entry((i, a)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, a));
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, BasisIndex, &Rat)> {
        self.terms.iter().map(|(&(i, a), c)| (i, a, c))
    }

    pub fn coefficient(&self, i: usize, a: BasisIndex) -> Rat {
        self.terms.get(&(i, a)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CurrentElement {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, a, c) in other.terms() {
            out.add_term(i, a, c.clone()).expect("terms are functions");
        }
        out
    }

    /// Degrees of the homogeneous pieces present.
    pub fn degrees(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|(_, a)| a.degree).min()?;
        let hi = self.terms.keys().map(|(_, a)| a.degree).max()?;
        Some((lo, hi))
    }

    /// Display with the labels of `lie`, e.g. `h⊗A[0,1] - 2 e⊗A[3,2]`.
    pub fn display<'a>(&'a self, lie: &'a FinDimLie) -> impl fmt::Display + 'a {
        struct D<'a>(&'a CurrentElement, &'a FinDimLie);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_zero() {
                    return write!(f, "0");
                }
                for (n, (i, a, c)) in self.0.terms().enumerate() {
                    let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
                    match (n, sign) {
                        (0, "+") => {}
                        (0, _) => write!(f, "-")?,
                        _ => write!(f, " {sign} ")?,
                    }
                    if !mag.is_one() {
                        write!(f, "{mag} ")?;
                    }
                    write!(f, "{}⊗{a}", self.1.label(i))?;
                }
                Ok(())
            }
        }
        D(self, lie)
    }
}

/// An element `x + c t` of the central extension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtendedElement {
    pub current: CurrentElement,
    pub central: Rat,
}

impl ExtendedElement {
    pub fn new(current: CurrentElement, central: Rat) -> Self {
        ExtendedElement { current, central }
    }

    /// The central generator `t`.
    pub fn t() -> Self {
        ExtendedElement::new(CurrentElement::zero(), Rat::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        ExtendedElement::new(self.current.add(&other.current), &self.central + &other.central)
    }

    pub fn is_zero(&self) -> bool {
        self.current.is_zero() && self.central.is_zero()
    }
}

impl From<CurrentElement> for ExtendedElement {
    fn from(current: CurrentElement) -> Self {
        ExtendedElement::new(current, Rat::zero())
    }
}

/// `g ⊗ A` for a Lie algebra `g` and the function algebra of a context.
#[derive(Clone, Debug)]
pub struct CurrentAlgebra {
    lie: Arc<FinDimLie>,
    ctx: Arc<KnContext>,
}

impl CurrentAlgebra {
    pub fn new(lie: FinDimLie, ctx: &Arc<KnContext>) -> Self {
        CurrentAlgebra {
            lie: Arc::new(lie),
            ctx: ctx.clone(),
        }
    }

    pub fn lie(&self) -> &FinDimLie {
        &self.lie
    }

    pub fn context(&self) -> &Arc<KnContext> {
        &self.ctx
    }

    /// `x_i ⊗ f` for an arbitrary function `f`, expanded in the basis.
    pub fn element(&self, i: usize, f: &Form) -> Result<CurrentElement, KncError> {
        if i >= self.lie.dim() {
            return Err(KncError::Invalid(format!("Lie basis index {i} out of range")));
        }
        if f.weight != 0 {
            return Err(KncError::WeightMismatch(format!("expected a function, got weight {}", f.weight)));
        }
        let mut out = CurrentElement::zero();
        for (a, c) in self.ctx.expand(f)? {
            out.add_term(i, a, c)?;
        }
        Ok(out)
    }

    /// `[x ⊗ f, y ⊗ g] = [x, y] ⊗ fg`, extended bilinearly.
    pub fn bracket(&self, a: &CurrentElement, b: &CurrentElement) -> Result<CurrentElement, KncError> {
        let mut out = CurrentElement::zero();
        for (i, f, c) in a.terms() {
            for (j, g, d) in b.terms() {
                let cd = c * d;
                let lie = self.lie.bracket(i, j);
                if lie.iter().all(Rat::is_zero) {
                    continue;
                }
                let fg = basis_op(&self.ctx, OpKind::FunMul, f, g)?;
                for (k, s) in lie.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                    let sc = s * &cd;
                    for (h, v) in fg.iter() {
                        out.add_term(k, *h, v * &sc)?;
                    }
                }
            }
        }
        Ok(out)
    }

    fn same_config(&self, g: &CocycleEvaluator) -> Result<(), KncError> {
        if !Arc::ptr_eq(g.context(), &self.ctx) && g.context().config() != self.ctx.config() {
            return Err(KncError::Invalid("cocycle and current algebra use different configurations".into()));
        }
        Ok(())
    }

    /// `Σ B(x_i, y_j) γ(f_i, g_j)`.
    pub fn central_term(&self, gamma: &CocycleEvaluator, a: &CurrentElement, b: &CurrentElement) -> Result<Rat, KncError> {
        if gamma.kind() != CocycleKind::Function {
            return Err(KncError::KindMismatch(format!(
                "central extensions need a function cocycle, got {}",
                gamma.kind()
            )));
        }
        self.same_config(gamma)?;
        let mut acc = Rat::zero();
        for (i, f, c) in a.terms() {
            for (j, g, d) in b.terms() {
                let bij = self.lie.form(i, j);
                if bij.is_zero() {
                    continue;
                }
                let v = gamma.eval(f, g)?;
                if !v.is_zero() {
                    acc += bij * v * c * d;
                }
            }
        }
        Ok(acc)
    }

    /// `[x̂ ⊗ f, ŷ ⊗ g] = [x, y] ⊗ fg + B(x, y) γ(f, g) t`, with `t` central.
    pub fn extended_bracket(
        &self,
        a: &ExtendedElement,
        b: &ExtendedElement,
        gamma: &CocycleEvaluator,
    ) -> Result<ExtendedElement, KncError> {
        let central = self.central_term(gamma, &a.current, &b.current)?;
        Ok(ExtendedElement::new(self.bracket(&a.current, &b.current)?, central))
    }

    /// Every `x_i ⊗ A_{n,p}` with `n` in `window`.
    pub fn homogeneous(&self, window: (i64, i64)) -> Vec<CurrentElement> {
        let k = self.ctx.k();
        (0..self.lie.dim())
            .flat_map(|i| (window.0..=window.1).flat_map(move |n| (1..=k).map(move |p| (i, n, p))))
            .map(|(i, n, p)| CurrentElement::tensor(i, BasisIndex::a(n, p)).expect("function index"))
            .collect()
    }

    /// All ordered triples of homogeneous elements in `window` with
    /// `i ≤ j ≤ k` in the enumeration; the checked identities are symmetric
    /// enough that the rest adds nothing.
    pub fn homogeneous_triples(&self, window: (i64, i64)) -> Vec<[CurrentElement; 3]> {
        let gens = self.homogeneous(window);
        let mut out = Vec::new();
        for i in 0..gens.len() {
            for j in i..gens.len() {
                for k in j..gens.len() {
                    out.push([gens[i].clone(), gens[j].clone(), gens[k].clone()]);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleFailure {
    pub args: Vec<String>,
    /// Central part of the residual.
    pub residual: Rat,
    /// Whether the current part of the residual also failed to vanish.
    pub current_nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    pub check: String,
    pub checked: usize,
    pub failures: Vec<TripleFailure>,
}

impl TripleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn describe(lie: &FinDimLie, t: &[CurrentElement; 3]) -> Vec<String> {
    t.iter().map(|x| x.display(lie).to_string()).collect()
}

/// Jacobi identity of the extended bracket `[[a, b], c] + [[b, c], a] + [[c, a], b]`.
pub fn jacobi_check(
    alg: &CurrentAlgebra,
    gamma: &CocycleEvaluator,
    triples: &[[CurrentElement; 3]],
) -> Result<TripleReport, KncError> {
    let residuals: Vec<ExtendedElement> = triples
        .par_iter()
        .map(|[a, b, c]| -> Result<_, KncError> {
            let mut acc = ExtendedElement::default();
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                let xy = alg.extended_bracket(&x.clone().into(), &y.clone().into(), gamma)?;
                acc = acc.add(&alg.extended_bracket(&xy, &z.clone().into(), gamma)?);
            }
            Ok(acc)
        })
        .collect::<Result<_, _>>()?;
    let failures = triples
        .iter()
        .zip(residuals)
        .filter(|(_, r)| !r.is_zero())
        .map(|(t, r)| TripleFailure {
            args: describe(alg.lie(), t),
            residual: r.central,
            current_nonzero: !r.current.is_zero(),
        })
        .collect();
    Ok(TripleReport {
        check: "jacobi".into(),
        checked: triples.len(),
        failures,
    })
}

/// A bilinear form `Γ(x ⊗ f, y ⊗ g) = B'(x, y) ψ(f, g)` on `g ⊗ A` for a
/// symmetric matrix `B'` on `g` and a function cocycle `ψ`.
#[derive(Clone, Debug)]
pub struct CurrentCocycle {
    alg: CurrentAlgebra,
    lie_form: Vec<Vec<Rat>>,
    psi: CocycleEvaluator,
}

impl CurrentCocycle {
    pub fn new(alg: &CurrentAlgebra, lie_form: Vec<Vec<Rat>>, psi: CocycleEvaluator) -> Result<Self, KncError> {
        let d = alg.lie().dim();
        if lie_form.len() != d || lie_form.iter().any(|r| r.len() != d) {
            return Err(KncError::Invalid(format!("form must be {d} x {d}")));
        }
        if psi.kind() != CocycleKind::Function {
            return Err(KncError::KindMismatch(format!("expected a function cocycle, got {}", psi.kind())));
        }
        alg.same_config(&psi)?;
        Ok(CurrentCocycle {
            alg: alg.clone(),
            lie_form,
            psi,
        })
    }

    /// `B(x, y) γ(f, g)` with the algebra's own form.
    pub fn affine(alg: &CurrentAlgebra, gamma: CocycleEvaluator) -> Result<Self, KncError> {
        Self::new(alg, alg.lie().form_matrix().to_vec(), gamma)
    }

    /// `tr(x) tr(y) ψ(f, g)`.
    pub fn trace_product(alg: &CurrentAlgebra, psi: CocycleEvaluator) -> Result<Self, KncError> {
        let tr = alg
            .lie()
            .trace()
            .ok_or_else(|| KncError::Invalid("Lie algebra has no trace".into()))?;
        let form = tr.iter().map(|a| tr.iter().map(|b| a * b).collect()).collect();
        Self::new(alg, form, psi)
    }

    pub fn psi(&self) -> &CocycleEvaluator {
        &self.psi
    }

    pub fn eval(&self, a: &CurrentElement, b: &CurrentElement) -> Result<Rat, KncError> {
        let mut acc = Rat::zero();
        for (i, f, c) in a.terms() {
            for (j, g, d) in b.terms() {
                let bij = &self.lie_form[i][j];
                if bij.is_zero() {
                    continue;
                }
                let v = self.psi.eval(f, g)?;
                if !v.is_zero() {
                    acc += bij * v * c * d;
                }
            }
        }
        Ok(acc)
    }

    /// Antisymmetry and `Γ([a, b], c) + Γ([b, c], a) + Γ([c, a], b) = 0`.
    pub fn check(&self, triples: &[[CurrentElement; 3]]) -> Result<TripleReport, KncError> {
        let alg = &self.alg;
        let residuals: Vec<Rat> = triples
            .par_iter()
            .map(|[a, b, c]| -> Result<_, KncError> {
                let mut acc = self.eval(a, b)? + self.eval(b, a)?;
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    acc += self.eval(&alg.bracket(x, y)?, z)?;
                }
                Ok(acc)
            })
            .collect::<Result<_, _>>()?;
        let failures = triples
            .iter()
            .zip(residuals)
            .filter(|(_, r)| !r.is_zero())
            .map(|(t, r)| TripleFailure {
                args: describe(alg.lie(), t),
                residual: r,
                current_nonzero: false,
            })
            .collect();
        Ok(TripleReport {
            check: "current cocycle".into(),
            checked: triples.len(),
            failures,
        })
    }
}

/// `tr(x) tr(y) ψ(f, g)` on `gl(n) ⊗ A` for a tabulated antisymmetric `ψ`.
///
/// This is a cocycle for any antisymmetric `ψ`, multiplicative or not,
/// because the trace kills every bracket.
pub fn reductive_counterexample(
    alg: &CurrentAlgebra,
    psi: impl IntoIterator<Item = ((BasisIndex, BasisIndex), Rat)>,
) -> Result<CurrentCocycle, KncError> {
    let table = CocycleEvaluator::table(alg.context(), CocycleKind::Function, psi)?;
    CurrentCocycle::trace_product(alg, table)
}
