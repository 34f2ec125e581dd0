use std::path::Path;
use std::sync::Arc;

use knc_core::cocycle::{decompose_bounded, level_pairs, locality_scan, CoboundaryData, CoboundaryKind, Decomposition};
use knc_core::current::{reductive_counterexample, jacobi_check, CurrentAlgebra, FinDimLie};
use knc_core::glinf::{phi_lambda_coords, pullback_cocycle};
use knc_core::ops::{boundary_coefficient_check, structure_table, unit};
use knc_core::{BasisIndex, CocycleEvaluator, CocycleKind, CycleSpec, KnContext, MarkedConfig, OpKind, Rat};

use crate::error::CliError;
use crate::report::{CheckRecord, RunReport, Table};
use crate::{suites, Command, Common, KindArg, OpArg, Source, Window};

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn load_config(common: &Common) -> Result<MarkedConfig, CliError> {
    match &common.config {
        Some(p) => Ok(MarkedConfig::from_json(&read_file(p)?)?),
        None => Ok(MarkedConfig::classical()),
    }
}

pub fn context(common: &Common) -> Result<Arc<KnContext>, CliError> {
    Ok(KnContext::new(load_config(common)?)?)
}

pub fn kind_of(k: KindArg) -> CocycleKind {
    match k {
        KindArg::Function => CocycleKind::Function,
        KindArg::Vector => CocycleKind::Vector,
        KindArg::Mixing => CocycleKind::Mixing,
    }
}

fn w(window: Window) -> (i64, i64) {
    (window.0, window.1)
}

/// Largest absolute degree in the window.
pub fn radius(window: Window) -> i64 {
    window.0.abs().max(window.1.abs())
}

pub fn source_evaluator(ctx: &Arc<KnContext>, src: &Source) -> Result<CocycleEvaluator, CliError> {
    let kind = kind_of(src.kind);
    let cycle = CycleSpec::parse(&src.cycle, ctx.config())?;
    let g = CocycleEvaluator::geometric(ctx, kind, &cycle)?;
    let Some(path) = &src.coboundary else {
        return Ok(g);
    };
    let data: CoboundaryData =
        serde_json::from_str(&read_file(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let fits = matches!(
        (kind, data.kind),
        (CocycleKind::Vector, CoboundaryKind::W) | (CocycleKind::Mixing, CoboundaryKind::V)
    );
    if !fits {
        return Err(CliError::Usage(format!("a {:?} coboundary cannot be added to a {kind} cocycle", data.kind)));
    }
    Ok(g.plus(&CocycleEvaluator::coboundary(ctx, data))?)
}

pub fn dispatch(cmd: &Command, common: &Common) -> Result<RunReport, CliError> {
    match cmd {
        Command::Basis { lambda, n, p } => basis(common, BasisIndex::new(*lambda, *n, *p)),
        Command::Pair { lambda, n, p, m, r } => pair(
            common,
            BasisIndex::new(*lambda, *n, *p),
            BasisIndex::new(1 - lambda, *m, *r),
        ),
        Command::Table { op, lambda } => table(common, *op, *lambda),
        Command::Cocycle { source, level } => cocycle(common, source, *level),
        Command::Scan { source, levels } => scan(common, source, *levels),
        Command::Decompose { source, pullback } => decompose(common, source, *pullback),
        Command::Pullcyc { lambda, phi } => pullcyc(common, *lambda, phi.as_deref()),
        Command::Affine {
            lie,
            cycle,
            scale,
            counterexample,
        } => affine(common, lie, cycle, scale, *counterexample),
        Command::Verify { suite, lambda } => suites::run(common, *suite, *lambda),
    }
}

fn basis(common: &Common, idx: BasisIndex) -> Result<RunReport, CliError> {
    let ctx = context(common)?;
    let f = ctx.basis(idx)?;
    let shown = f.factored_display(ctx.finite_points());
    let mut r = RunReport::new("basis");
    r.summary.push(shown.clone());
    r.table = Table::new(&["index", "form"]);
    r.table.push(vec![idx.to_string(), shown]);
    r.detail = Some(serde_json::json!({ "index": idx.to_string(), "form": f.to_json_value() }));
    Ok(r)
}

fn pair(common: &Common, a: BasisIndex, b: BasisIndex) -> Result<RunReport, CliError> {
    let ctx = context(common)?;
    let v = ctx.pair_basis(a, b)?;
    let mut r = RunReport::new("pair");
    r.summary.push(v.to_string());
    r.table = Table::new(&["left", "right", "value"]);
    r.table.push(vec![a.to_string(), b.to_string(), v.to_string()]);
    Ok(r)
}

fn op_kind(op: OpArg, lambda: i64) -> OpKind {
    match op {
        OpArg::FunMul => OpKind::FunMul,
        OpArg::VfBracket => OpKind::VfBracket,
        OpArg::Lie => OpKind::LieDerivative(lambda),
        OpArg::D1 => OpKind::D1Bracket,
    }
}

fn table(common: &Common, op: OpArg, lambda: i64) -> Result<RunReport, CliError> {
    let ctx = context(common)?;
    let kind = op_kind(op, lambda);
    let t = structure_table(&ctx, kind, w(common.window))?;
    let mut r = RunReport::new(format!("table {kind}"));
    r.table = Table::new(&["left", "right", "target", "coefficient"]);
    for ((x, y), e) in &t.entries {
        for (h, c) in e {
            r.table.push(vec![x.to_string(), y.to_string(), h.to_string(), c.to_string()]);
        }
    }
    let b = boundary_coefficient_check(&t);
    r.check(
        CheckRecord::new("lower shift is zero", b.lower_shift == 0 || t.entries.values().all(|e| e.is_empty()))
            .with("lower_shift", b.lower_shift)
            .with("upper_shift", b.upper_shift),
    );
    let mut c = CheckRecord::new("boundary coefficients", b.violations.is_empty()).with("pairs", b.checked_pairs);
    if let Some(v) = b.violations.first() {
        c = c
            .with("left", v.left)
            .with("right", v.right)
            .with("target", v.target)
            .with("expected", &v.expected)
            .with("got", &v.got);
    }
    r.check(c);
    Ok(r)
}

fn cocycle(common: &Common, src: &Source, level: Option<i64>) -> Result<RunReport, CliError> {
    let ctx = context(common)?;
    let g = source_evaluator(&ctx, src)?;
    let win = w(common.window);
    let levels: Vec<i64> = match level {
        Some(l) => vec![l],
        None => (2 * win.0..=2 * win.1).collect(),
    };
    let mut r = RunReport::new(format!("cocycle {} {}", g.kind(), src.cycle));
    r.table = Table::new(&["left", "right", "level", "value"]);
    for l in levels {
        for (x, y) in level_pairs(g.kind(), l, win, ctx.k()) {
            let v = g.eval(x, y)?;
            if level.is_some() || !v.is_zero() {
                r.table.push(vec![x.to_string(), y.to_string(), l.to_string(), v.to_string()]);
            }
        }
    }
    r.detail(g.provenance())?;
    Ok(r)
}

fn scan(common: &Common, src: &Source, levels: Option<Window>) -> Result<RunReport, CliError> {
    let ctx = context(common)?;
    let g = source_evaluator(&ctx, src)?;
    let levels = levels.unwrap_or(common.window);
    let rep = locality_scan(&g, w(levels), w(common.window))?;
    let mut r = RunReport::new(format!("scan {} {}", g.kind(), src.cycle));
    let show = |b: Option<i64>| b.map_or("none".to_string(), |b| b.to_string());
    r.summary.push(format!(
        "verdict {}, upper bound {}, lower bound {}, {} pairs",
        serde_json::to_value(rep.verdict)?.as_str().unwrap_or_default(),
        show(rep.upper_bound),
        show(rep.lower_bound),
        rep.pairs_evaluated
    ));
    r.table = Table::new(&["level", "left", "right", "value"]);
    for (l, wit) in &rep.witnesses {
        r.table.push(vec![l.to_string(), wit.left.to_string(), wit.right.to_string(), wit.value.to_string()]);
    }
    r.detail(&rep)?;
    Ok(r)
}

fn decomposition_table(r: &mut RunReport, d: &Decomposition) {
    r.table = Table::new(&["term", "coefficient"]);
    for (i, a) in d.alpha.iter().enumerate() {
        r.table.push(vec![format!("alpha_{}", i + 1), a.to_string()]);
    }
    if let Some(c) = &d.coboundary {
        let name = match c.kind {
            CoboundaryKind::W => "W",
            CoboundaryKind::V => "V",
        };
        for ((n, p), b) in &c.coefficients {
            r.table.push(vec![format!("{name}[{n},{p}]"), b.to_string()]);
        }
    }
}

fn decompose(common: &Common, src: &Source, pullback: Option<i64>) -> Result<RunReport, CliError> {
    let ctx = context(common)?;
    let kind = kind_of(src.kind);
    let win = w(common.window);
    let g = match pullback {
        Some(l) => pullback_cocycle(&ctx, l, 2 * radius(common.window) + 2),
        None => source_evaluator(&ctx, src)?,
    };
    let d = decompose_bounded(&g, kind, win)?;
    let mut r = RunReport::new(format!("decompose {kind}"));
    decomposition_table(&mut r, &d);
    r.check(
        CheckRecord::new("reconstruction", true)
            .with("pairs_verified", d.pairs_verified)
            .with("undetermined", d.undetermined.len()),
    );
    r.detail(&d)?;
    Ok(r)
}

fn pullcyc(common: &Common, lambda: i64, phi: Option<&str>) -> Result<RunReport, CliError> {
    let ctx = context(common)?;
    let width = radius(common.window).max(2);
    let mut r = RunReport::new(format!("pullcyc lambda={lambda}"));
    if let Some(s) = phi {
        let idx: BasisIndex = s.parse()?;
        if idx.weight != 0 && idx.weight != -1 {
            return Err(CliError::Usage(format!("{idx} is not a function or vector field")));
        }
        let m = phi_lambda_coords(&ctx, lambda, &unit(idx), ctx.k() as i64 * width)?;
        r.table = Table::new(&["row", "col", "value"]);
        for ((i, j), v) in &m.entries {
            r.table.push(vec![i.to_string(), j.to_string(), v.to_string()]);
        }
        r.detail(&m)?;
        return Ok(r);
    }
    let rep = suites::pullcyc_growing(&ctx, lambda, width)?;
    r.table = Table::new(&["check", "expected", "got"]);
    for c in &rep.checks {
        r.table.push(vec![c.name.clone(), c.expected.to_string(), c.got.to_string()]);
        r.check(CheckRecord::equal(c.name.clone(), &c.expected, &c.got));
    }
    r.detail(&rep)?;
    Ok(r)
}

pub fn parse_lie(s: &str) -> Result<FinDimLie, CliError> {
    if s == "sl2" {
        return Ok(FinDimLie::sl2());
    }
    if let Some(n) = s.strip_prefix("gl").and_then(|n| n.parse::<usize>().ok()) {
        if n == 0 {
            return Err(CliError::Usage("gl0 is empty".into()));
        }
        return Ok(FinDimLie::gl(n));
    }
    Ok(FinDimLie::from_json(&read_file(Path::new(s))?)?)
}

fn affine(common: &Common, lie: &str, cycle: &str, scale: &str, counterexample: bool) -> Result<RunReport, CliError> {
    let ctx = context(common)?;
    let lie = parse_lie(lie)?;
    let alg = CurrentAlgebra::new(lie, &ctx);
    let win = w(common.window);
    let triples = alg.homogeneous_triples(win);
    let mut r = RunReport::new("affine");
    if counterexample {
        let psi = [
            ((BasisIndex::a(0, 1), BasisIndex::a(3, 1)), Rat::one()),
            ((BasisIndex::a(3, 1), BasisIndex::a(0, 1)), Rat::from_int(-1)),
        ];
        let cex = reductive_counterexample(&alg, psi)?;
        suites::counterexample_checks(&mut r, &alg, &cex, &triples)?;
        return Ok(r);
    }
    let a: Rat = scale.parse().map_err(|e| CliError::Usage(format!("--scale: {e}")))?;
    let cycle = CycleSpec::parse(cycle, ctx.config())?;
    let gamma = CocycleEvaluator::function(&ctx, &cycle).scaled(a);
    r.check(
        CheckRecord::new("invariant form", alg.lie().is_invariant())
            .with("violations", alg.lie().invariance_violations().len()),
    );
    let rep = jacobi_check(&alg, &gamma, &triples)?;
    let mut c = CheckRecord::new("jacobi", rep.passed()).with("triples", rep.checked);
    if let Some(f) = rep.failures.first() {
        c = c.with("witness", f.args.join(", ")).with("residual", &f.residual);
    }
    r.check(c);
    Ok(r)
}
