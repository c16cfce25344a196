//! One function per verb. Each reads its inputs, runs the computation and
//! returns a [`ResultDocument`] or a [`CliError`] carrying the exit code.

use std::fmt::Display;
use std::path::Path;

use birkhoff::fuchsian::{
    classify_singularity_scalar, classify_singularity_system, exponents_system, frobenius_series, fuchs_relation_scalar,
    fuchs_relation_system, gauge_transform, indicial_polynomial, ode_residual, FuchsianSystem, LocalSystemData,
    ResidualOrder, ScalarODE, Singularity,
};
use birkhoff::monodromy::{bolibrukh_criterion, MonodromyRep};
use birkhoff::roots::rational_roots;
use birkhoff::{
    birkhoff_factor, verify_factorization, Error, Factorization, Matrix, QBundle, QLaurentMatrix, QLaurentPoly, QMatrix,
    QPoint, QRatFunc, SplittingType,
};
use serde_json::{json, Value};

use crate::format::{self, Document, Kind};
use crate::output::ResultDocument;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalSearchExhausted(_) | Error::InternalConsistency(_) => CliError::Internal(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

type CmdResult = Result<ResultDocument, CliError>;

/// A file read from disk and parsed.
pub struct Input {
    pub path: String,
    pub bytes: Vec<u8>,
    pub doc: Document,
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

impl Input {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let bytes = read(path)?;
        let shown = path.display().to_string();
        let text = std::str::from_utf8(&bytes).map_err(|_| CliError::Parse(format!("{shown}: not valid UTF-8")))?;
        let doc = format::parse(text).map_err(|e| CliError::Parse(format!("{shown}: {e}")))?;
        Ok(Input { path: shown, bytes, doc })
    }

    fn mismatch(&self, expected: &[Kind]) -> CliError {
        let names: Vec<&str> = expected.iter().map(|k| k.name()).collect();
        CliError::Parse(format!("{}: expected kind {}, found {}", self.path, names.join(" or "), self.doc.kind()))
    }

    fn laurent_matrix(&self) -> Result<&QLaurentMatrix, CliError> {
        match &self.doc {
            Document::LaurentMatrix(m) => Ok(m),
            _ => Err(self.mismatch(&[Kind::LaurentMatrix])),
        }
    }

    fn bundle(&self) -> Result<QBundle, CliError> {
        Ok(QBundle::new(self.laurent_matrix()?.clone())?)
    }
}

fn s(x: impl Display) -> Value {
    Value::String(x.to_string())
}

fn matrix_json<T: Display>(m: &Matrix<T>) -> Value {
    Value::Array(m.rows_iter().map(|row| Value::Array(row.iter().map(s).collect())).collect())
}

fn vector_json<T: Display>(v: &[T]) -> Value {
    Value::Array(v.iter().map(s).collect())
}

fn roots_json(p: &QLaurentPoly) -> Value {
    Value::Array(rational_roots(p).into_iter().map(|(r, m)| json!({"value": s(r), "multiplicity": m})).collect())
}

fn profile_json(profile: &[(i64, usize)]) -> Value {
    Value::Array(profile.iter().map(|(k, h)| json!({"twist": k, "h0": h})).collect())
}

pub fn split(input: &Input) -> CmdResult {
    let bundle = input.bundle()?;
    let (st, profile) = bundle.section_profile()?;
    Ok(ResultDocument::new(
        "split",
        &[&input.bytes],
        json!({"indices": st.indices(), "rank": bundle.rank(), "degree": bundle.degree()}),
        json!({"section_counts": profile_json(&profile)}),
    ))
}

pub fn factor(input: &Input) -> CmdResult {
    let f = birkhoff_factor(&input.bundle()?)?;
    Ok(ResultDocument::new(
        "factor",
        &[&input.bytes],
        json!({"indices": f.exponents.indices()}),
        json!({"B": matrix_json(&f.b), "C": matrix_json(&f.c), "diagonal": matrix_json(&f.diagonal())}),
    ))
}

const VERIFY_CLAUSES: [&str; 6] = [
    "shapes agree",
    "B has no negative exponents",
    "C has no positive exponents",
    "det(B) constant",
    "det(C) constant",
    "B*A*C equals the diagonal",
];

/// Checks a factorization given as the JSON output of `factor`.
pub fn verify(input: &Input, factorization: &Path) -> CmdResult {
    let a = input.laurent_matrix()?;
    let raw = read(factorization)?;
    let shown = factorization.display();
    let bad = |msg: &str| CliError::Parse(format!("{shown}: {msg}"));
    let value: Value = serde_json::from_slice(&raw).map_err(|e| bad(&format!("invalid JSON: {e}")))?;
    let indices: Vec<i64> = value
        .pointer("/result/indices")
        .and_then(Value::as_array)
        .and_then(|v| v.iter().map(Value::as_i64).collect())
        .ok_or_else(|| bad("missing integer array result.indices"))?;
    let exponents = SplittingType::from_descending(indices).ok_or_else(|| bad("result.indices must be descending"))?;
    let load = |key: &str| -> Result<QLaurentMatrix, CliError> {
        let missing = || bad(&format!("missing string matrix certificate.{key}"));
        let rows = value.pointer(&format!("/certificate/{key}")).and_then(Value::as_array).ok_or_else(missing)?;
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = Vec::new();
            for cell in row.as_array().ok_or_else(missing)? {
                let text = cell.as_str().ok_or_else(missing)?;
                out.push(format::parse_laurent(text).map_err(|e| bad(&format!("certificate.{key}: {e}")))?);
            }
            parsed.push(out);
        }
        Matrix::from_rows(parsed).ok_or_else(|| bad(&format!("certificate.{key} has ragged rows")))
    };
    let f = Factorization { b: load("B")?, c: load("C")?, exponents };
    let report = verify_factorization(a, &f);
    Ok(ResultDocument::new(
        "verify",
        &[&input.bytes, &raw],
        json!({"valid": report.valid, "violation": report.violation.map(|v| v.to_string())}),
        json!({"clauses": VERIFY_CLAUSES, "indices": f.exponents.indices()}),
    ))
}

pub fn h0(input: &Input, k: i64) -> CmdResult {
    let bundle = input.bundle()?;
    let space = bundle.h0_dim(k);
    if !space.is_consistent_with(&bundle) {
        return Err(CliError::Internal(format!("section basis at twist {k} fails the gluing check")));
    }
    let basis: Vec<Value> =
        space.basis.iter().map(|(s0, s1)| json!({"s0": vector_json(s0), "s1": vector_json(s1)})).collect();
    Ok(ResultDocument::new("h0", &[&input.bytes], json!({"twist": k, "dimension": space.dimension}), json!({"basis": basis})))
}

fn euler_characteristic(bundle: &QBundle, k: i64) -> i64 {
    let n = bundle.rank() as i64;
    bundle.degree() + n * k + n
}

pub fn h1(input: &Input, k: i64) -> CmdResult {
    let bundle = input.bundle()?;
    let st = bundle.splitting_type()?;
    Ok(ResultDocument::new(
        "h1",
        &[&input.bytes],
        json!({"twist": k, "dimension": bundle.h1_dim(k)}),
        json!({"h0": bundle.h0_count(k), "euler_characteristic": euler_characteristic(&bundle, k), "splitting_type": st.indices()}),
    ))
}

pub fn rr(input: &Input, k: i64) -> CmdResult {
    let bundle = input.bundle()?;
    let (h0, h1) = (bundle.h0_count(k), bundle.h1_dim(k));
    let chi = euler_characteristic(&bundle, k);
    if h0 as i64 - h1 as i64 != chi {
        return Err(CliError::Internal(format!("Riemann-Roch fails at twist {k}: h0 = {h0}, h1 = {h1}, expected h0 - h1 = {chi}")));
    }
    Ok(ResultDocument::new(
        "rr",
        &[&input.bytes],
        json!({"twist": k, "h0": h0, "h1": h1, "euler_characteristic": chi, "holds": true}),
        json!({"rank": bundle.rank(), "degree": bundle.degree(), "splitting_type": bundle.splitting_type()?.indices()}),
    ))
}

pub fn iso(a: &Input, b: &Input) -> CmdResult {
    let (ea, eb) = (a.bundle()?, b.bundle()?);
    let (sa, pa) = ea.section_profile()?;
    let (sb, pb) = eb.section_profile()?;
    Ok(ResultDocument::new(
        "iso",
        &[&a.bytes, &b.bytes],
        json!({"isomorphic": sa == sb, "splitting_a": sa.indices(), "splitting_b": sb.indices()}),
        json!({"section_counts_a": profile_json(&pa), "section_counts_b": profile_json(&pb)}),
    ))
}

fn system(input: &Input) -> Result<FuchsianSystem<birkhoff::Rat>, CliError> {
    let Document::FuchsianSystem { n, blocks } = &input.doc else {
        return Err(input.mismatch(&[Kind::FuchsianSystem]));
    };
    let (mut points, mut residues, mut infinity) = (Vec::new(), Vec::new(), None);
    for (p, r) in blocks {
        match p {
            QPoint::Finite(a) => {
                points.push(a.clone());
                residues.push(r.clone());
            }
            QPoint::Infinity => infinity = Some(r.clone()),
        }
    }
    let sys = FuchsianSystem::new(*n, points, residues)?;
    Ok(match infinity {
        Some(r) => sys.with_residue_at_infinity(r)?,
        None => sys,
    })
}

pub fn fuchs_system(input: &Input) -> CmdResult {
    let sys = system(input)?;
    let rel = fuchs_relation_system(&sys);
    let mut points: Vec<QPoint> = sys.points().iter().cloned().map(QPoint::Finite).collect();
    points.push(QPoint::Infinity);
    let mut data = Vec::new();
    for p in &points {
        let e = exponents_system(&sys, p)?;
        data.push(json!({
            "point": s(&e.point),
            "trace": s(&e.trace),
            "charpoly": s(&e.charpoly),
            "rational_exponents": roots_json(&e.charpoly),
        }));
    }
    Ok(ResultDocument::new(
        "fuchs-system",
        &[&input.bytes],
        json!({"holds": rel.holds, "trace_sum": s(&rel.lhs), "singular_points": rel.singular_points}),
        json!({"points": data}),
    ))
}

fn ode(input: &Input) -> Result<ScalarODE<birkhoff::Rat>, CliError> {
    match &input.doc {
        Document::ScalarOde(c) => Ok(ScalarODE::new(c.clone())?),
        _ => Err(input.mismatch(&[Kind::ScalarOde])),
    }
}

pub fn fuchs_ode(input: &Input) -> CmdResult {
    let eq = ode(input)?;
    let rel = fuchs_relation_scalar(&eq)?;
    Ok(ResultDocument::new(
        "fuchs-ode",
        &[&input.bytes],
        json!({"holds": rel.holds, "exponent_sum": s(&rel.lhs), "expected": s(&rel.rhs), "singular_points": rel.singular_points}),
        json!({"order": eq.order(), "finite_singular_locus": s(eq.finite_singular_locus())}),
    ))
}

pub fn indicial(input: &Input, at: &QPoint) -> CmdResult {
    let eq = ode(input)?;
    let data = indicial_polynomial(&eq, at)?;
    Ok(ResultDocument::new(
        "indicial",
        &[&input.bytes],
        json!({"point": s(at), "polynomial": s(&data.polynomial), "exponent_sum": s(&data.exponent_sum)}),
        json!({"rational_exponents": roots_json(&data.polynomial), "singularity": s(classify_singularity_scalar(&eq, at))}),
    ))
}

fn local_data(input: &Input, at: &QPoint, order: usize) -> Result<LocalSystemData<birkhoff::Rat>, CliError> {
    match &input.doc {
        Document::FuchsianSystem { .. } => Ok(system(input)?.local_data(at, order)?),
        Document::RatMatrixList { matrices, .. } => Ok(LocalSystemData::new(matrices[0].clone(), matrices[1..].to_vec())?),
        _ => Err(input.mismatch(&[Kind::FuchsianSystem, Kind::RatMatrixList])),
    }
}

/// `residual_order` is `N + 1` when the truncated series is an exact solution.
pub fn frobenius(input: &Input, order: usize, at: &QPoint) -> CmdResult {
    let local = local_data(input, at, order)?;
    let series = frobenius_series(&local, order)?;
    let residual = match ode_residual(&local, &series)? {
        ResidualOrder::Exact => order as i64 + 1,
        ResidualOrder::Finite(k) if k >= order as i64 => k,
        ResidualOrder::Finite(k) => {
            return Err(CliError::Internal(format!("series residual starts at order {k}, below the truncation {order}")));
        }
    };
    let point = match input.doc {
        Document::FuchsianSystem { .. } => s(at),
        _ => Value::Null,
    };
    Ok(ResultDocument::new(
        "frobenius",
        &[&input.bytes],
        json!({"point": point, "truncation": order, "residual_order": residual}),
        json!({"residue": matrix_json(&series.residue), "coefficients": series.coefficients.iter().map(matrix_json).collect::<Vec<_>>()}),
    ))
}

fn ratfunc_matrix(input: &Input) -> Result<Matrix<QRatFunc>, CliError> {
    match &input.doc {
        Document::RatfuncMatrix(m) => Ok(m.clone()),
        Document::FuchsianSystem { .. } => Ok(system(input)?.coefficient_matrix()),
        _ => Err(input.mismatch(&[Kind::RatfuncMatrix, Kind::FuchsianSystem])),
    }
}

pub fn gauge(a: &Input, p: &Input) -> CmdResult {
    let am = ratfunc_matrix(a)?;
    let pm = match &p.doc {
        Document::RatfuncMatrix(m) => m.clone(),
        _ => return Err(p.mismatch(&[Kind::RatfuncMatrix])),
    };
    let out = gauge_transform(&am, &pm)?;
    Ok(ResultDocument::new(
        "gauge",
        &[&a.bytes, &p.bytes],
        json!({"matrix": matrix_json(&out)}),
        json!({"det_p": s(pm.det())}),
    ))
}

fn matrices(input: &Input) -> Result<&[QMatrix], CliError> {
    match &input.doc {
        Document::MonodromyRep { matrices, .. } | Document::RatMatrixList { matrices, .. } => Ok(matrices),
        _ => Err(input.mismatch(&[Kind::MonodromyRep, Kind::RatMatrixList])),
    }
}

pub fn bolibrukh(input: &Input) -> CmdResult {
    let rep = MonodromyRep::new(matrices(input)?.to_vec())?;
    let r = bolibrukh_criterion(&rep);
    let profiles: Vec<Value> = r
        .profiles
        .iter()
        .map(|p| json!({"eigenvalue": p.single_eigenvalue.as_ref().map(s), "single_block": p.single_block}))
        .collect();
    let witness = r.witness.as_ref().map(|w| w.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>());
    Ok(ResultDocument::new(
        "bolibrukh",
        &[&input.bytes],
        json!({
            "applies": r.applies,
            "eigenvalue_product": r.eigenvalue_product.as_ref().map(s),
            "reason": r.reason.as_ref().map(s),
        }),
        json!({
            "product_is_identity": r.product_is_identity,
            "reducible": r.reducible,
            "invariant_subspace": witness,
            "all_single_block": r.all_single_block,
            "jordan_profiles": profiles,
        }),
    ))
}

pub fn classify(input: &Input, at: &QPoint) -> CmdResult {
    let kind = match &input.doc {
        Document::ScalarOde(_) => classify_singularity_scalar(&ode(input)?, at),
        Document::RatfuncMatrix(_) | Document::FuchsianSystem { .. } => classify_singularity_system(&ratfunc_matrix(input)?, at),
        _ => return Err(input.mismatch(&[Kind::ScalarOde, Kind::RatfuncMatrix, Kind::FuchsianSystem])),
    };
    let rank = match kind {
        Singularity::SecondKind { rank } => Value::from(rank),
        _ => Value::Null,
    };
    Ok(ResultDocument::new(
        "classify",
        &[&input.bytes],
        json!({"point": s(at), "singularity": s(kind), "rank": rank}),
        json!({}),
    ))
}
