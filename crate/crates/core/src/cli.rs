//! File formats and command implementations behind the `qbezier` binary.
//!
//! Each command writes its regular output to `out`, warnings to `diag`, and
//! returns an [`Exit`] status; failures come back as [`CliError`], which maps
//! to a process exit code.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decasteljau::{evaluate, evaluate_with_tableau, is_convex_at};
use crate::elevation::elevate_to;
use crate::error::Error;
use crate::net::{CoefficientNet, TriangularNet};
use crate::patch::{tessellate, ControlNet3D, Point3};
use crate::qcore::QParam;
use crate::stability::{compare_conditioning, qbernstein_to_bernstein_matrix, BasisKind};
use crate::tribasis::{barycentric_grid, basis_sample_grid, DomainPoint, MultiIndex3};

/// Successful (or property-violating) completion of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    PropertyViolation = 1,
    Undefined = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Undefined(_) => 3,
            CliError::Parse { .. } => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Singular { .. } => CliError::Undefined(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Formats a double with the shortest digit string that reads back to the same value.
pub fn fmt_num(x: f64) -> String {
    format!("{x}")
}

// ---------------------------------------------------------------------------
// net files

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NetKind {
    Scalar,
    Points3d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisLabel {
    #[default]
    Qbernstein,
    Bernstein,
}

impl BasisLabel {
    fn is_default(&self) -> bool {
        *self == BasisLabel::Qbernstein
    }
}

impl From<BasisLabel> for BasisKind {
    fn from(b: BasisLabel) -> Self {
        match b {
            BasisLabel::Qbernstein => BasisKind::Q,
            BasisLabel::Bernstein => BasisKind::Classical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryValue {
    Scalar(f64),
    Point([f64; 3]),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: EntryValue,
}

/// On-disk JSON form of a net.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetFile {
    pub degree: usize,
    pub q: f64,
    pub kind: NetKind,
    #[serde(default, skip_serializing_if = "BasisLabel::is_default")]
    pub basis: BasisLabel,
    pub entries: Vec<NetEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NetData {
    Scalar(CoefficientNet),
    Points(ControlNet3D),
}

/// A validated net together with its shape parameter and basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedNet {
    pub q: QParam,
    pub basis: BasisLabel,
    pub data: NetData,
}

impl LoadedNet {
    pub fn scalar(net: CoefficientNet, q: QParam) -> Self {
        LoadedNet { q, basis: BasisLabel::Qbernstein, data: NetData::Scalar(net) }
    }

    pub fn points(net: ControlNet3D, q: QParam) -> Self {
        LoadedNet { q, basis: BasisLabel::Qbernstein, data: NetData::Points(net) }
    }

    pub fn degree(&self) -> usize {
        match &self.data {
            NetData::Scalar(n) => n.degree(),
            NetData::Points(n) => n.degree(),
        }
    }

    pub fn kind(&self) -> NetKind {
        match self.data {
            NetData::Scalar(_) => NetKind::Scalar,
            NetData::Points(_) => NetKind::Points3d,
        }
    }

    /// Reinterprets the same coefficients under another `q`. This changes the
    /// represented polynomial unless the net is in the classical basis.
    pub fn with_q(mut self, q: QParam) -> Self {
        self.q = q;
        self
    }

    /// The `q` actually used for evaluation: 1 for classical-basis nets.
    pub fn eval_q(&self) -> QParam {
        match self.basis {
            BasisLabel::Qbernstein => self.q,
            BasisLabel::Bernstein => QParam::ONE,
        }
    }

    pub fn to_file(&self) -> NetFile {
        let entries = match &self.data {
            NetData::Scalar(n) => n
                .iter()
                .map(|(t, &v)| NetEntry { i: t.i, j: t.j, k: t.k, value: EntryValue::Scalar(v) })
                .collect(),
            NetData::Points(n) => n
                .iter()
                .map(|(t, p)| NetEntry { i: t.i, j: t.j, k: t.k, value: EntryValue::Point(p.to_array()) })
                .collect(),
        };
        NetFile {
            degree: self.degree(),
            q: self.q.value(),
            kind: self.kind(),
            basis: self.basis,
            entries,
        }
    }

    /// JSON text with one entry per line, in canonical order.
    pub fn to_json(&self) -> String {
        let file = self.to_file();
        let mut s = String::from("{\n");
        s += &format!("  \"degree\": {},\n", file.degree);
        s += &format!("  \"q\": {},\n", serde_json::to_string(&file.q).expect("finite q"));
        s += &format!("  \"kind\": {},\n", serde_json::to_string(&file.kind).expect("kind"));
        if !file.basis.is_default() {
            s += &format!("  \"basis\": {},\n", serde_json::to_string(&file.basis).expect("basis"));
        }
        s += "  \"entries\": [\n";
        let lines: Vec<String> = file
            .entries
            .iter()
            .map(|e| format!("    {}", serde_json::to_string(e).expect("entry serializes")))
            .collect();
        s += &lines.join(",\n");
        s += "\n  ]\n}\n";
        s
    }
}

/// Line of the `n`-th entry object (0-based), found by counting `"i"` keys.
fn entry_line(text: &str, n: usize) -> usize {
    text.match_indices("\"i\"")
        .nth(n)
        .map(|(at, _)| text[..at].matches('\n').count() + 1)
        .unwrap_or(1)
}

pub fn parse_net(text: &str) -> CliResult<LoadedNet> {
    let file: NetFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let whole = |message: String| CliError::Parse { line: 1, message };
    let q = QParam::new(file.q).map_err(|e| whole(e.to_string()))?;
    for (n, e) in file.entries.iter().enumerate() {
        let ok = matches!(
            (file.kind, e.value),
            (NetKind::Scalar, EntryValue::Scalar(_)) | (NetKind::Points3d, EntryValue::Point(_))
        );
        if !ok {
            return Err(CliError::Parse {
                line: entry_line(text, n),
                message: format!("entry ({},{},{}) does not match kind {:?}", e.i, e.j, e.k, file.kind),
            });
        }
        if e.i + e.j + e.k != file.degree {
            return Err(CliError::Parse {
                line: entry_line(text, n),
                message: format!("entry ({},{},{}) does not have degree {}", e.i, e.j, e.k, file.degree),
            });
        }
    }
    let idx = |e: &NetEntry| MultiIndex3::new(e.i, e.j, e.k);
    let locate = |err: Error| {
        // point duplicates at their second occurrence
        let mut seen = std::collections::HashSet::new();
        let line = file
            .entries
            .iter()
            .position(|e| !seen.insert(idx(e)))
            .map_or(1, |n| entry_line(text, n));
        CliError::Parse { line, message: err.to_string() }
    };
    let data = match file.kind {
        NetKind::Scalar => NetData::Scalar(
            TriangularNet::from_entries(
                file.degree,
                file.entries.iter().map(|e| match e.value {
                    EntryValue::Scalar(v) => (idx(e), v),
                    EntryValue::Point(_) => unreachable!("kind checked"),
                }),
            )
            .map_err(locate)?,
        ),
        NetKind::Points3d => NetData::Points(
            TriangularNet::from_entries(
                file.degree,
                file.entries.iter().map(|e| match e.value {
                    EntryValue::Point(p) => (idx(e), Point3::from(p)),
                    EntryValue::Scalar(_) => unreachable!("kind checked"),
                }),
            )
            .map_err(locate)?,
        ),
    };
    Ok(LoadedNet { q, basis: file.basis, data })
}

pub fn read_net(path: &std::path::Path) -> CliResult<LoadedNet> {
    let text = std::fs::read_to_string(path)?;
    parse_net(&text)
}

/// Parses a point list: one `u,v` pair per line; blank lines, `#` comments and
/// a `u,v` header are skipped.
pub fn parse_points(text: &str) -> CliResult<Vec<DomainPoint>> {
    let mut pts = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.eq_ignore_ascii_case("u,v") {
            continue;
        }
        let bad = || CliError::Parse { line: n + 1, message: format!("expected \"u,v\", got {line:?}") };
        let mut parts = line.split(',').map(str::trim);
        let (Some(u), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let (u, v) = (u.parse::<f64>().map_err(|_| bad())?, v.parse::<f64>().map_err(|_| bad())?);
        pts.push(DomainPoint::new(u, v));
    }
    Ok(pts)
}

/// `count` uniformly distributed points of the parameter triangle.
pub fn random_points(count: usize, seed: u64) -> Vec<DomainPoint> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (mut a, mut b): (f64, f64) = (rng.gen(), rng.gen());
            if a + b > 1.0 {
                a = 1.0 - a;
                b = 1.0 - b;
            }
            DomainPoint::new(a, b)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// commands

fn write_value<W: Write + ?Sized>(
    out: &mut W,
    data: &NetData,
    p: DomainPoint,
    q: QParam,
    tableau: bool,
) -> io::Result<()> {
    fn line<T: Copy>(vals: &[T], f: impl Fn(T) -> String) -> String {
        vals.iter().map(|&v| f(v)).collect::<Vec<_>>().join(" ")
    }
    match data {
        NetData::Scalar(net) => {
            if tableau {
                let tab = evaluate_with_tableau(net, p, q);
                for (r, layer) in tab.layers().iter().enumerate() {
                    writeln!(out, "layer {r}")?;
                    for (t, &v) in layer.iter() {
                        writeln!(out, "{} {} {} {}", t.i, t.j, t.k, fmt_num(v))?;
                    }
                }
            }
            writeln!(out, "{}", fmt_num(evaluate(net, p, q)))
        }
        NetData::Points(net) => {
            let fmt_p = |x: Point3| line(&x.to_array(), fmt_num);
            if tableau {
                let tab = evaluate_with_tableau(net, p, q);
                for (r, layer) in tab.layers().iter().enumerate() {
                    writeln!(out, "layer {r}")?;
                    for (t, &v) in layer.iter() {
                        writeln!(out, "{} {} {} {}", t.i, t.j, t.k, fmt_p(v))?;
                    }
                }
            }
            writeln!(out, "{}", fmt_p(evaluate(net, p, q)))
        }
    }
}

/// Evaluates the net at `(u, v)`, optionally dumping every tableau layer.
pub fn cmd_eval<W: Write + ?Sized, D: Write + ?Sized>(
    net: &LoadedNet,
    p: DomainPoint,
    tableau: bool,
    out: &mut W,
    diag: &mut D,
) -> CliResult<Exit> {
    if !is_convex_at(p) {
        writeln!(
            diag,
            "warning: ({}, {}) lies outside the parameter triangle; evaluation steps are not convex there",
            fmt_num(p.u),
            fmt_num(p.v)
        )?;
    }
    write_value(out, &net.data, p, net.eval_q(), tableau)?;
    Ok(Exit::Success)
}

pub fn cmd_elevate(net: &LoadedNet, target: usize) -> CliResult<LoadedNet> {
    if target < net.degree() {
        return Err(CliError::Usage(format!(
            "--to {target} is below the net degree {}",
            net.degree()
        )));
    }
    let q = net.eval_q();
    let data = match &net.data {
        NetData::Scalar(n) => NetData::Scalar(elevate_to(n, target, q)?),
        NetData::Points(n) => NetData::Points(elevate_to(n, target, q)?),
    };
    Ok(LoadedNet { data, ..net.clone() })
}

fn convert_scalar(net: &CoefficientNet, from: BasisLabel, to: BasisLabel, q: QParam) -> CliResult<CoefficientNet> {
    if from == to {
        return Ok(net.clone());
    }
    let a = qbernstein_to_bernstein_matrix(net.degree(), q)?;
    Ok(match to {
        BasisLabel::Bernstein => a.to_bernstein(net),
        BasisLabel::Qbernstein => a.to_qbernstein(net)?,
    })
}

/// Rewrites the net in the other basis, keeping `q` in the file.
pub fn cmd_convert(net: &LoadedNet, to: BasisLabel) -> CliResult<LoadedNet> {
    let (from, q) = (net.basis, net.q);
    let data = match &net.data {
        NetData::Scalar(n) => NetData::Scalar(convert_scalar(n, from, to, q)?),
        NetData::Points(n) => {
            let comp = |c: usize| -> CliResult<CoefficientNet> {
                convert_scalar(&n.map(|p| p.to_array()[c]), from, to, q)
            };
            let (x, y, z) = (comp(0)?, comp(1)?, comp(2)?);
            NetData::Points(ControlNet3D::from_vec(
                n.degree(),
                (0..n.len())
                    .map(|s| Point3::new(x.values()[s], y.values()[s], z.values()[s]))
                    .collect(),
            )?)
        }
    };
    Ok(LoadedNet { q, basis: to, data })
}

/// Conditioning table in both bases at `points`, with a closing `max_ratio` line.
pub fn cmd_cond<W: Write + ?Sized>(
    net: &LoadedNet,
    points: &[DomainPoint],
    sup_resolution: usize,
    tol: f64,
    out: &mut W,
) -> CliResult<Exit> {
    let NetData::Scalar(coeffs) = &net.data else {
        return Err(CliError::Usage("cond needs a scalar net".into()));
    };
    if sup_resolution == 0 {
        return Err(CliError::Usage("sup-norm resolution must be at least 1".into()));
    }
    let qnet = convert_scalar(coeffs, net.basis, BasisLabel::Qbernstein, net.q)?;
    let report = compare_conditioning(&qnet, net.q, points, sup_resolution)?;
    let opt = |x: Option<f64>| x.map_or_else(|| "undefined".to_string(), fmt_num);
    writeln!(out, "u,v,cond_bernstein,cond_q,ratio")?;
    for pc in &report.points {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_num(pc.point.u),
            fmt_num(pc.point.v),
            opt(pc.cond_bernstein),
            opt(pc.cond_q),
            opt(pc.ratio())
        )?;
    }
    writeln!(out, "max_ratio,{}", opt(report.max_ratio))?;
    Ok(match report.max_ratio {
        None if report.sup_norm == 0.0 => Exit::Undefined,
        _ if report.ordering_holds(tol) || points.is_empty() => Exit::Success,
        _ => Exit::PropertyViolation,
    })
}

/// CSV samples `u,v,value` of one basis function over the barycentric grid.
pub fn cmd_basis_sample<W: Write + ?Sized>(
    n: usize,
    idx: MultiIndex3,
    q: QParam,
    m: usize,
    out: &mut W,
) -> CliResult<Exit> {
    if idx.degree() != n {
        return Err(CliError::Usage(format!("indices {idx} do not sum to degree {n}")));
    }
    if m == 0 {
        return Err(CliError::Usage("grid resolution must be at least 1".into()));
    }
    crate::qcore::check_degree(n)?;
    writeln!(out, "u,v,value")?;
    for s in basis_sample_grid(idx, q, m) {
        writeln!(out, "{},{},{}", fmt_num(s.u), fmt_num(s.v), fmt_num(s.value))?;
    }
    Ok(Exit::Success)
}

/// OBJ mesh of a point net on the grid of resolution `m`.
pub fn cmd_tessellate(net: &LoadedNet, m: usize) -> CliResult<String> {
    let NetData::Points(points) = &net.data else {
        return Err(CliError::Usage("tessellate needs a points3d net".into()));
    };
    if m == 0 {
        return Err(CliError::Usage("grid resolution must be at least 1".into()));
    }
    Ok(tessellate(points, net.eval_q(), m).to_obj())
}

/// Grid points used by `cond --grid m`.
pub fn grid_points(m: usize) -> CliResult<Vec<DomainPoint>> {
    if m == 0 {
        return Err(CliError::Usage("grid resolution must be at least 1".into()));
    }
    Ok(barycentric_grid(m))
}
