//! Structure recovery and theorem verification: parallel-class partitions,
//! net parameters, the pole/polar census with its exact counting identities,
//! involution extraction, and the full attach/recover round-trip.
//!
//! The checks here are deliberately non-circular. Pole detection uses the raw
//! definition (at least two perpendiculars from an external point), not the
//! all-or-one dichotomy, so the dichotomy itself stays testable. Counting
//! identities are verified with exact integer arithmetic; a non-integer
//! quotient is reported, never rounded.
//!
//! Everything is a pure function over an immutable geometry; results are
//! deterministic regardless of execution order (minimal-witness rule).

use std::fmt;

use thiserror::Error;

use crate::axioms::{
    check_axiom, check_thickness, perp_applicable, Axiom, Witness, PARTIAL_SHERK_AXIOMS,
};
use crate::construct::{attach_perpendicularity, ConstructError, Tau, TauError};
use crate::geometry::{Geometry, GeometryError, LineId, PointId};

/// Parameters of an `(n, r)`-net.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetParams {
    /// Points per line.
    pub n: usize,
    /// Lines per point.
    pub r: usize,
    /// Total points (`n * n`).
    pub v: usize,
    /// Total lines (`n * r`).
    pub b: usize,
    /// Parallel classes (`r`).
    pub num_classes: usize,
}

/// Partition of the line set under "equal or non-intersecting".
///
/// Classes are ordered canonically by their least member line index, and the
/// lines inside each class are ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelClasses {
    pub classes: Vec<Vec<LineId>>,
    /// Class index of each line.
    pub class_of: Vec<usize>,
}

impl ParallelClasses {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, l: LineId) -> usize {
        self.class_of[l.0]
    }
}

/// Pole/polar structure of a geometry with perpendicularity.
///
/// A point `P` is a pole of a line `l` when `P` is not on `l` and at least
/// two lines through `P` are perpendicular to `l`; `l` is then a polar of
/// `P`. The aggregate counts are populated only when they are constant
/// across all lines (resp. points).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolePolarCensus {
    /// Poles of each line, ascending.
    pub poles_of: Vec<Vec<PointId>>,
    /// Polars of each point, ascending.
    pub polars_of: Vec<Vec<LineId>>,
    /// Common pole count per line, when constant.
    pub poles_per_line: Option<usize>,
    /// Common polar count per point, when constant.
    pub polars_per_point: Option<usize>,
}

impl PolePolarCensus {
    pub fn total_poles(&self) -> usize {
        self.poles_of.iter().map(Vec::len).sum()
    }

    pub fn total_polars(&self) -> usize {
        self.polars_of.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_poles() == 0
    }
}

/// Verified counting identities for a thick partial Sherk plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingReport {
    pub n: usize,
    pub r: usize,
    pub v: usize,
    pub b: usize,
    /// Poles per line: `(n^2 - v) / (r - 1)`, verified against the census.
    pub poles_per_line: usize,
    /// Polars per point: `(n*r - b) / (r - 1)`, verified against the census.
    pub polars_per_point: usize,
}

/// Result of the exhaustive parallel ⟺ common-perpendicular scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParallelPerpReport {
    /// Unordered pairs of distinct lines checked (the reflexive cases are
    /// checked too, but are trivially consistent).
    pub distinct_pairs: usize,
}

/// Successful outcome of [`verify_theorem_roundtrip`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundtripReport {
    pub params: NetParams,
    pub recovered_tau: Tau,
}

/// The eight structural properties of a finite net, checked individually.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetProperty {
    ConstantLineSize,
    ConstantPointDegree,
    ClassCountEqualsDegree,
    ClassSize,
    PointCountIsSquare,
    LineCountIsProduct,
    CrossClassIntersection,
    OneLinePerClass,
}

impl fmt::Display for NetProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NetProperty::ConstantLineSize => "constant-line-size",
            NetProperty::ConstantPointDegree => "constant-point-degree",
            NetProperty::ClassCountEqualsDegree => "class-count-equals-degree",
            NetProperty::ClassSize => "class-size",
            NetProperty::PointCountIsSquare => "point-count-is-square",
            NetProperty::LineCountIsProduct => "line-count-is-product",
            NetProperty::CrossClassIntersection => "cross-class-intersection",
            NetProperty::OneLinePerClass => "one-line-per-class",
        };
        f.write_str(s)
    }
}

/// Preconditions the theorem-level operations require.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    PerpRelation,
    PartialSherkAxiom(Axiom),
    ThickLine,
    ConstantLineSize,
    ConstantPointDegree,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::PerpRelation => f.write_str("PERP_RELATION"),
            Hypothesis::PartialSherkAxiom(a) => write!(f, "{a}"),
            Hypothesis::ThickLine => f.write_str("THICK_LINE"),
            Hypothesis::ConstantLineSize => f.write_str("CONSTANT_N"),
            Hypothesis::ConstantPointDegree => f.write_str("CONSTANT_R"),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("geometry has no perpendicularity relation")]
    NoPerpRelation,
    #[error("parallelism is not transitive: {l} || {m} and {m} || {h}, but {l} meets {h}")]
    NotTransitive { l: LineId, m: LineId, h: LineId },
    #[error("not a net: {property} fails: {detail}")]
    NotANet {
        property: NetProperty,
        witness: Witness,
        detail: String,
    },
    #[error("hypothesis {hypothesis} failed")]
    HypothesisFailed {
        hypothesis: Hypothesis,
        witness: Option<Witness>,
    },
    #[error("counting formula mismatch: {context}")]
    FormulaMismatch { context: String },
    #[error("point {point} has {} perpendiculars to line {line}", perpendiculars.len())]
    NotUnique {
        point: PointId,
        line: LineId,
        perpendiculars: Vec<LineId>,
    },
    #[error("no perpendicular from point {point} to line {line}")]
    NoPerpFound { point: PointId, line: LineId },
    #[error("class-mates {line} and {other} induce different perpendicular classes")]
    NotWellDefined { line: LineId, other: LineId },
    #[error("perpendicular set of line {line} is not a parallel class")]
    PerpSetNotAClass { line: LineId },
    #[error(transparent)]
    Tau(#[from] TauError),
    #[error(
        "dichotomy violated at point {point}, line {line}: {found} of {degree} lines perpendicular"
    )]
    DichotomyViolation {
        point: PointId,
        line: LineId,
        found: usize,
        degree: usize,
    },
    #[error("lines {l} and {m}: parallel={parallel} but common perpendicular={has_common_perp}")]
    ParallelPerpMismatch {
        l: LineId,
        m: LineId,
        parallel: bool,
        has_common_perp: bool,
    },
    #[error("round-trip attach stage failed: {0}")]
    AttachFailed(Box<ConstructError>),
    #[error("round-trip axiom stage failed: {axiom}")]
    RoundtripAxiomFailed {
        axiom: Axiom,
        witness: Option<Witness>,
    },
    #[error("round-trip parameters differ: expected (n={expected_n}, r={expected_r}), got (n={got_n}, r={got_r})")]
    RoundtripParamsMismatch {
        expected_n: usize,
        expected_r: usize,
        got_n: usize,
        got_r: usize,
    },
    #[error("round-trip recovered a different involution")]
    RoundtripTauMismatch { expected: Tau, recovered: Tau },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn not_a_net(property: NetProperty, witness: Witness, detail: String) -> AnalysisError {
    AnalysisError::NotANet {
        property,
        witness,
        detail,
    }
}

/// Partitions the lines into parallel classes under "equal or
/// non-intersecting", verifying transitivity explicitly. A transitivity
/// violation signals that the geometry is not net-like.
pub fn parallel_classes(g: &Geometry) -> Result<ParallelClasses, AnalysisError> {
    let b = g.num_lines();
    let mut par = vec![vec![false; b]; b];
    for l in 0..b {
        par[l][l] = true;
        for m in (l + 1)..b {
            let p = g.lines_disjoint(l, m);
            par[l][m] = p;
            par[m][l] = p;
        }
    }
    for l in 0..b {
        for m in 0..b {
            if !par[l][m] {
                continue;
            }
            for h in 0..b {
                if par[m][h] && !par[l][h] {
                    return Err(AnalysisError::NotTransitive {
                        l: LineId(l),
                        m: LineId(m),
                        h: LineId(h),
                    });
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; b];
    let mut classes: Vec<Vec<LineId>> = Vec::new();
    for l in 0..b {
        if class_of[l] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        for m in l..b {
            if par[l][m] {
                class_of[m] = c;
                members.push(LineId(m));
            }
        }
        classes.push(members);
    }
    Ok(ParallelClasses { classes, class_of })
}

/// Derives `(n, r, v, b, num_classes)` and asserts each of the eight net
/// properties individually; the first failure is reported with a witness
/// rather than silently normalized.
pub fn net_parameters(g: &Geometry) -> Result<NetParams, AnalysisError> {
    let v = g.num_points();
    let b = g.num_lines();
    if b == 0 {
        return Err(not_a_net(
            NetProperty::LineCountIsProduct,
            Witness::default(),
            "geometry has no lines".to_string(),
        ));
    }
    if v == 0 {
        return Err(not_a_net(
            NetProperty::PointCountIsSquare,
            Witness::default(),
            "geometry has no points".to_string(),
        ));
    }
    let n = g.lines()[0].len();
    for l in 1..b {
        let size = g.lines()[l].len();
        if size != n {
            return Err(not_a_net(
                NetProperty::ConstantLineSize,
                Witness::lines(&[0, l]),
                format!("line 0 has {n} points but line {l} has {size}"),
            ));
        }
    }
    let r = g.lines_through_raw(0).len();
    for p in 1..v {
        let deg = g.lines_through_raw(p).len();
        if deg != r {
            return Err(not_a_net(
                NetProperty::ConstantPointDegree,
                Witness::points(&[0, p]),
                format!("point 0 lies on {r} lines but point {p} lies on {deg}"),
            ));
        }
    }
    let pc = parallel_classes(g)?;
    if pc.num_classes() != r {
        return Err(not_a_net(
            NetProperty::ClassCountEqualsDegree,
            Witness::default(),
            format!("{} parallel classes but degree {r}", pc.num_classes()),
        ));
    }
    for (c, members) in pc.classes.iter().enumerate() {
        if members.len() != n {
            return Err(not_a_net(
                NetProperty::ClassSize,
                Witness {
                    points: Vec::new(),
                    lines: members.clone(),
                },
                format!("class {c} has {} lines, expected {n}", members.len()),
            ));
        }
    }
    if v != n * n {
        return Err(not_a_net(
            NetProperty::PointCountIsSquare,
            Witness::default(),
            format!("{v} points, expected n^2 = {}", n * n),
        ));
    }
    if b != n * r {
        return Err(not_a_net(
            NetProperty::LineCountIsProduct,
            Witness::default(),
            format!("{b} lines, expected n*r = {}", n * r),
        ));
    }
    for l in 0..b {
        for m in (l + 1)..b {
            if pc.class_of[l] == pc.class_of[m] {
                continue;
            }
            let shared = g.intersect_raw(l, m);
            if shared.len() != 1 {
                return Err(not_a_net(
                    NetProperty::CrossClassIntersection,
                    Witness::lines(&[l, m]),
                    format!(
                        "lines {l} and {m} from distinct classes share {} points",
                        shared.len()
                    ),
                ));
            }
        }
    }
    for p in 0..v {
        let mut counts = vec![0usize; pc.num_classes()];
        for &l in g.lines_through_raw(p) {
            counts[pc.class_of[l]] += 1;
        }
        if let Some((c, &count)) = counts.iter().enumerate().find(|(_, &count)| count != 1) {
            return Err(not_a_net(
                NetProperty::OneLinePerClass,
                Witness::points(&[p]),
                format!("point {p} lies on {count} lines of class {c}"),
            ));
        }
    }
    Ok(NetParams {
        n,
        r,
        v,
        b,
        num_classes: pc.num_classes(),
    })
}

fn perp_count(g: &Geometry, p: usize, l: usize) -> usize {
    g.lines_through_raw(p)
        .iter()
        .filter(|&&m| g.is_perp_raw(m, l))
        .count()
}

/// Verifies the hypotheses the theorem-level checks rely on: a present
/// perpendicularity relation, the partial Sherk axioms, and (optionally)
/// a line incident only with thick points.
pub(crate) fn check_hypotheses(g: &Geometry, need_thick: bool) -> Result<(), AnalysisError> {
    if !perp_applicable(g) {
        return Err(AnalysisError::HypothesisFailed {
            hypothesis: Hypothesis::PerpRelation,
            witness: None,
        });
    }
    for axiom in PARTIAL_SHERK_AXIOMS {
        let verdict = check_axiom(g, axiom).expect("perp applicability checked");
        if !verdict.holds {
            return Err(AnalysisError::HypothesisFailed {
                hypothesis: Hypothesis::PartialSherkAxiom(axiom),
                witness: verdict.witness,
            });
        }
    }
    if need_thick {
        let (thick_line, _) = check_thickness(g);
        if !thick_line.holds {
            return Err(AnalysisError::HypothesisFailed {
                hypothesis: Hypothesis::ThickLine,
                witness: thick_line.witness,
            });
        }
    }
    Ok(())
}

fn constant_params(g: &Geometry) -> Result<(usize, usize), AnalysisError> {
    let n = g.lines().first().map(Vec::len).unwrap_or(0);
    for l in 1..g.num_lines() {
        let size = g.lines()[l].len();
        if size != n {
            return Err(AnalysisError::HypothesisFailed {
                hypothesis: Hypothesis::ConstantLineSize,
                witness: Some(Witness::lines(&[0, l])),
            });
        }
    }
    let r = if g.num_points() == 0 {
        0
    } else {
        g.lines_through_raw(0).len()
    };
    for p in 1..g.num_points() {
        if g.lines_through_raw(p).len() != r {
            return Err(AnalysisError::HypothesisFailed {
                hypothesis: Hypothesis::ConstantPointDegree,
                witness: Some(Witness::points(&[0, p])),
            });
        }
    }
    Ok((n, r))
}

/// Computes the exact pole/polar census from the raw definition.
///
/// When the geometry additionally satisfies the partial Sherk axioms and has
/// a line incident only with thick points, the all-or-one dichotomy is
/// asserted on top: every line through a pole of `l` must be perpendicular
/// to `l`.
pub fn pole_polar_census(g: &Geometry) -> Result<PolePolarCensus, AnalysisError> {
    if !perp_applicable(g) {
        return Err(AnalysisError::NoPerpRelation);
    }
    let v = g.num_points();
    let b = g.num_lines();
    let mut poles_of = vec![Vec::new(); b];
    let mut polars_of = vec![Vec::new(); v];
    for l in 0..b {
        for p in 0..v {
            if g.incident_raw(l, p) {
                continue;
            }
            if perp_count(g, p, l) >= 2 {
                poles_of[l].push(PointId(p));
                polars_of[p].push(LineId(l));
            }
        }
    }
    if check_hypotheses(g, true).is_ok() {
        for l in 0..b {
            for p in 0..v {
                if g.incident_raw(l, p) {
                    continue;
                }
                let found = perp_count(g, p, l);
                let degree = g.lines_through_raw(p).len();
                if found > 1 && found != degree {
                    return Err(AnalysisError::DichotomyViolation {
                        point: PointId(p),
                        line: LineId(l),
                        found,
                        degree,
                    });
                }
            }
        }
    }
    let poles_per_line = constant_count(poles_of.iter().map(Vec::len));
    let polars_per_point = constant_count(polars_of.iter().map(Vec::len));
    Ok(PolePolarCensus {
        poles_of,
        polars_of,
        poles_per_line,
        polars_per_point,
    })
}

fn constant_count(mut counts: impl Iterator<Item = usize>) -> Option<usize> {
    let first = counts.next()?;
    counts.all(|c| c == first).then_some(first)
}

fn exact_nonneg_div(num: i64, den: i64, what: &str) -> Result<usize, AnalysisError> {
    if den <= 0 || num < 0 || num % den != 0 {
        return Err(AnalysisError::FormulaMismatch {
            context: format!("{what} = {num}/{den} is not a nonnegative integer"),
        });
    }
    Ok((num / den) as usize)
}

fn pole_bounds(n: usize, r: usize, poles_per_line: usize) -> Result<(), AnalysisError> {
    if r >= n {
        return Err(AnalysisError::FormulaMismatch {
            context: format!("a pole exists but r = {r} >= n = {n}"),
        });
    }
    if poles_per_line < n - r + 1 {
        return Err(AnalysisError::FormulaMismatch {
            context: format!(
                "a pole exists but N = {poles_per_line} < n - r + 1 = {}",
                n - r + 1
            ),
        });
    }
    Ok(())
}

/// Checks the pole/polar counting identities `N = (n^2 - v)/(r - 1)`,
/// `M = (n*r - b)/(r - 1)` and `N*r = M*n` against the exact census.
///
/// Requires a partial Sherk plane with a line incident only with thick
/// points, plus constant line size and point degree (verified here). When a
/// pole exists, the bounds `r < n` and `n - r + 1 <= N` are asserted too;
/// on conforming inputs those are vacuous because the census is empty.
pub fn check_counting_formulas(g: &Geometry) -> Result<CountingReport, AnalysisError> {
    check_hypotheses(g, true)?;
    let (n, r) = constant_params(g)?;
    let v = g.num_points();
    let b = g.num_lines();
    let census = pole_polar_census(g)?;

    let n_i = n as i64;
    let r_i = r as i64;
    let poles_per_line = exact_nonneg_div(n_i * n_i - v as i64, r_i - 1, "(n^2 - v)/(r - 1)")?;
    for (l, poles) in census.poles_of.iter().enumerate() {
        if poles.len() != poles_per_line {
            return Err(AnalysisError::FormulaMismatch {
                context: format!(
                    "line {l} has {} poles but the formula gives {poles_per_line}",
                    poles.len()
                ),
            });
        }
    }
    let polars_per_point = exact_nonneg_div(n_i * r_i - b as i64, r_i - 1, "(n*r - b)/(r - 1)")?;
    for (p, polars) in census.polars_of.iter().enumerate() {
        if polars.len() != polars_per_point {
            return Err(AnalysisError::FormulaMismatch {
                context: format!(
                    "point {p} has {} polars but the formula gives {polars_per_point}",
                    polars.len()
                ),
            });
        }
    }
    if poles_per_line * r != polars_per_point * n {
        return Err(AnalysisError::FormulaMismatch {
            context: format!(
                "N*r = {} but M*n = {}",
                poles_per_line * r,
                polars_per_point * n
            ),
        });
    }
    if poles_per_line > 0 {
        pole_bounds(n, r, poles_per_line)?;
    }
    Ok(CountingReport {
        n,
        r,
        v,
        b,
        poles_per_line,
        polars_per_point,
    })
}

/// The unique line through `p` perpendicular to `l`, with uniqueness
/// established by exhaustion. Requires a partial Sherk plane with a line
/// incident only with thick points.
pub fn unique_perpendicular(g: &Geometry, p: PointId, l: LineId) -> Result<LineId, AnalysisError> {
    g.point_stats(p)?;
    g.line_points(l)?;
    check_hypotheses(g, true)?;
    let perps: Vec<LineId> = g
        .lines_through_raw(p.0)
        .iter()
        .copied()
        .filter(|&m| g.is_perp_raw(m, l.0))
        .map(LineId)
        .collect();
    match perps.len() {
        0 => Err(AnalysisError::NoPerpFound { point: p, line: l }),
        1 => Ok(perps[0]),
        _ => Err(AnalysisError::NotUnique {
            point: p,
            line: l,
            perpendiculars: perps,
        }),
    }
}

fn sorted_slices_share_element(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Asserts, over every unordered line pair, that two lines are parallel
/// exactly when some line is perpendicular to both. A line is parallel to
/// itself (class-mates), and the reflexive case is consistent because of B3.
pub fn check_parallel_iff_common_perp(g: &Geometry) -> Result<ParallelPerpReport, AnalysisError> {
    check_hypotheses(g, true)?;
    let b = g.num_lines();
    for l in 0..b {
        for m in l..b {
            let parallel = l == m || g.lines_disjoint(l, m);
            let has_common_perp = sorted_slices_share_element(g.perp_adj_raw(l), g.perp_adj_raw(m));
            if parallel != has_common_perp {
                return Err(AnalysisError::ParallelPerpMismatch {
                    l: LineId(l),
                    m: LineId(m),
                    parallel,
                    has_common_perp,
                });
            }
        }
    }
    Ok(ParallelPerpReport {
        distinct_pairs: b * (b - 1) / 2,
    })
}

/// Recovers the involution behind the perpendicularity relation: the
/// perpendicular set of every line must be exactly one parallel class,
/// class-mates must agree on the target, and the induced map on classes must
/// be a fixed-point-free involution.
pub fn extract_tau(g: &Geometry) -> Result<Tau, AnalysisError> {
    check_hypotheses(g, true)?;
    let pc = parallel_classes(g)?;
    let num_classes = pc.num_classes();
    let mut mapping = vec![usize::MAX; num_classes];
    let mut setter = vec![usize::MAX; num_classes];
    for l in 0..g.num_lines() {
        let perps = g.perp_adj_raw(l);
        let target = pc
            .classes
            .iter()
            .position(|members| {
                members.len() == perps.len() && members.iter().zip(perps).all(|(a, &b)| a.0 == b)
            })
            .ok_or(AnalysisError::PerpSetNotAClass { line: LineId(l) })?;
        let class = pc.class_of[l];
        if mapping[class] == usize::MAX {
            mapping[class] = target;
            setter[class] = l;
        } else if mapping[class] != target {
            return Err(AnalysisError::NotWellDefined {
                line: LineId(l),
                other: LineId(setter[class]),
            });
        }
    }
    Ok(Tau::new(mapping)?)
}

/// Runs the full equivalence in both directions on a concrete instance:
/// attach the involution, re-verify the partial Sherk axioms and thickness,
/// re-derive the net and its parameters, and recover the involution. Every
/// stage is checked, none is assumed.
pub fn verify_theorem_roundtrip(
    net: &Geometry,
    tau: &Tau,
) -> Result<RoundtripReport, AnalysisError> {
    let input_params = net_parameters(net)?;
    let attached =
        attach_perpendicularity(net, tau).map_err(|e| AnalysisError::AttachFailed(Box::new(e)))?;
    for axiom in PARTIAL_SHERK_AXIOMS {
        let verdict = check_axiom(&attached, axiom)
            .expect("attached geometry has a perpendicularity relation");
        if !verdict.holds {
            return Err(AnalysisError::RoundtripAxiomFailed {
                axiom,
                witness: verdict.witness,
            });
        }
    }
    let (thick_line, _) = check_thickness(&attached);
    if !thick_line.holds {
        return Err(AnalysisError::RoundtripAxiomFailed {
            axiom: Axiom::ThickLine,
            witness: thick_line.witness,
        });
    }
    for axiom in [Axiom::N1, Axiom::N2, Axiom::N3] {
        let verdict = check_axiom(&attached, axiom).expect("N-axioms need no perp relation");
        if !verdict.holds {
            return Err(AnalysisError::RoundtripAxiomFailed {
                axiom,
                witness: verdict.witness,
            });
        }
    }
    let params = net_parameters(&attached)?;
    if (params.n, params.r) != (input_params.n, input_params.r) {
        return Err(AnalysisError::RoundtripParamsMismatch {
            expected_n: input_params.n,
            expected_r: input_params.r,
            got_n: params.n,
            got_r: params.r,
        });
    }
    let recovered = extract_tau(&attached)?;
    if recovered != *tau {
        return Err(AnalysisError::RoundtripTauMismatch {
            expected: tau.clone(),
            recovered,
        });
    }
    Ok(RoundtripReport {
        params,
        recovered_tau: recovered,
    })
}
