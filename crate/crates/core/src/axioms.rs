//! Witness-producing checkers for the incidence and perpendicularity axioms,
//! plus the classifier that combines them.
//!
//! Every check is exhaustive; there is no sampling. Failure witnesses are the
//! lexicographically first counterexample found when scanning in the axiom's
//! own quantifier order, so verdicts are deterministic and diffable. The
//! checks never assume each other: B2 is checked literally ("intersect in at
//! least one point") even though A* would make the intersection unique, and
//! the classifier always evaluates every applicable axiom rather than
//! short-circuiting.
//!
//! The B-axioms quantify over the perpendicularity relation, so they error
//! with [`AxiomError::NoPerpRelation`] on relation-free geometries. A
//! geometry without lines has nothing to relate, so the B-axioms are treated
//! as applicable (and vacuous) there; degenerate geometries (no points or no
//! lines) fail B5, N2 and N3 outright.
//!
//! All checks are pure functions over an immutable geometry and may run
//! concurrently.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::analysis::{net_parameters, AnalysisError, NetParams};
use crate::geometry::{Geometry, LineId, PointId};

/// Identifiers for every axiom and thickness condition the suite can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Two distinct points are incident with a unique line.
    A,
    /// Two distinct points are incident with at most one line.
    AStar,
    /// Perpendicularity is symmetric.
    B1,
    /// Perpendicular lines intersect in at least one point.
    B2,
    /// Every point has a perpendicular to every line through it or not.
    B3,
    /// A line has a unique perpendicular at each of its points.
    B4,
    /// There is a perpendicular pair and a line avoiding it suitably.
    B5,
    /// Unique parallel through an external point.
    N1,
    /// Every line misses at least two points.
    N2,
    /// Every point misses at least two lines.
    N3,
    /// Some line is incident only with thick points.
    ThickLine,
    /// Every point is thick.
    AllThick,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::A => "A",
            Axiom::AStar => "A*",
            Axiom::B1 => "B1",
            Axiom::B2 => "B2",
            Axiom::B3 => "B3",
            Axiom::B4 => "B4",
            Axiom::B5 => "B5",
            Axiom::N1 => "N1",
            Axiom::N2 => "N2",
            Axiom::N3 => "N3",
            Axiom::ThickLine => "THICK_LINE",
            Axiom::AllThick => "ALL_THICK",
        };
        f.write_str(s)
    }
}

/// The axioms defining a partial Sherk plane, in check order.
pub const PARTIAL_SHERK_AXIOMS: [Axiom; 6] = [
    Axiom::AStar,
    Axiom::B1,
    Axiom::B2,
    Axiom::B3,
    Axiom::B4,
    Axiom::B5,
];

/// Concrete point/line indices backing a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness {
    pub points: Vec<PointId>,
    pub lines: Vec<LineId>,
}

impl Witness {
    pub fn lines(lines: &[usize]) -> Self {
        Witness {
            points: Vec::new(),
            lines: lines.iter().map(|&l| LineId(l)).collect(),
        }
    }

    pub fn points(points: &[usize]) -> Self {
        Witness {
            points: points.iter().map(|&p| PointId(p)).collect(),
            lines: Vec::new(),
        }
    }

    pub fn both(points: &[usize], lines: &[usize]) -> Self {
        Witness {
            points: points.iter().map(|&p| PointId(p)).collect(),
            lines: lines.iter().map(|&l| LineId(l)).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.lines.is_empty()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("empty");
        }
        let mut first = true;
        if !self.points.is_empty() {
            let ids: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
            write!(f, "points={}", ids.join(","))?;
            first = false;
        }
        if !self.lines.is_empty() {
            if !first {
                f.write_str(" ")?;
            }
            let ids: Vec<String> = self.lines.iter().map(|l| l.to_string()).collect();
            write!(f, "lines={}", ids.join(","))?;
        }
        Ok(())
    }
}

/// Verdict for a single axiom. A witness is present exactly when the axiom
/// fails, except for B5 where a success also carries its witness triple
/// (B5 is existential, so success is what has a finite certificate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl AxiomVerdict {
    fn holds(axiom: Axiom) -> Self {
        AxiomVerdict {
            axiom,
            holds: true,
            witness: None,
        }
    }

    fn fails(axiom: Axiom, witness: Witness) -> Self {
        AxiomVerdict {
            axiom,
            holds: false,
            witness: Some(witness),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AxiomError {
    #[error("geometry has no perpendicularity relation; cannot check a B-axiom")]
    NoPerpRelation,
}

/// Structural classes a geometry can fall into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeometryClass {
    PartialLinearSpace,
    LinearSpace,
    PartialSherkPlane,
    SherkPlane,
    BruckNet,
    EvenDegreeNet,
}

impl fmt::Display for GeometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GeometryClass::PartialLinearSpace => "PartialLinearSpace",
            GeometryClass::LinearSpace => "LinearSpace",
            GeometryClass::PartialSherkPlane => "PartialSherkPlane",
            GeometryClass::SherkPlane => "SherkPlane",
            GeometryClass::BruckNet => "BruckNet",
            GeometryClass::EvenDegreeNet => "EvenDegreeNet",
        };
        f.write_str(s)
    }
}

/// Output of [`classify`]: every applicable verdict, the classes they imply,
/// and net parameters whenever the geometry is a net.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub verdicts: Vec<AxiomVerdict>,
    pub classes: BTreeSet<GeometryClass>,
    pub net_params: Option<NetParams>,
}

impl ClassificationReport {
    pub fn verdict(&self, axiom: Axiom) -> Option<&AxiomVerdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }

    pub fn axiom_holds(&self, axiom: Axiom) -> bool {
        self.verdict(axiom).map(|v| v.holds).unwrap_or(false)
    }

    pub fn has_class(&self, class: GeometryClass) -> bool {
        self.classes.contains(&class)
    }
}

/// Whether the B-axioms can be evaluated at all. A geometry with no lines has
/// an empty (hence trivially present) relation.
pub fn perp_applicable(g: &Geometry) -> bool {
    g.has_perp_relation() || g.num_lines() == 0
}

/// Checks a single axiom exhaustively.
pub fn check_axiom(g: &Geometry, which: Axiom) -> Result<AxiomVerdict, AxiomError> {
    match which {
        Axiom::A => Ok(check_a(g, false)),
        Axiom::AStar => Ok(check_a(g, true)),
        Axiom::B1 | Axiom::B2 | Axiom::B3 | Axiom::B4 | Axiom::B5 => {
            if !perp_applicable(g) {
                return Err(AxiomError::NoPerpRelation);
            }
            Ok(match which {
                Axiom::B1 => AxiomVerdict::holds(Axiom::B1),
                Axiom::B2 => check_b2(g),
                Axiom::B3 => check_b3(g),
                Axiom::B4 => check_b4(g),
                Axiom::B5 => check_b5(g),
                _ => unreachable!(),
            })
        }
        Axiom::N1 => Ok(check_n1(g)),
        Axiom::N2 => Ok(check_n2(g)),
        Axiom::N3 => Ok(check_n3(g)),
        Axiom::ThickLine => Ok(check_thick_line(g)),
        Axiom::AllThick => Ok(check_all_thick(g)),
    }
}

/// Checks the thickness pair (`THICK_LINE`, `ALL_THICK`).
pub fn check_thickness(g: &Geometry) -> (AxiomVerdict, AxiomVerdict) {
    (check_thick_line(g), check_all_thick(g))
}

fn check_a(g: &Geometry, at_most: bool) -> AxiomVerdict {
    let axiom = if at_most { Axiom::AStar } else { Axiom::A };
    for p in 0..g.num_points() {
        for q in (p + 1)..g.num_points() {
            let common = g.common_lines_raw(p, q);
            if common.len() >= 2 {
                return AxiomVerdict::fails(axiom, Witness::both(&[p, q], &[common[0], common[1]]));
            }
            if !at_most && common.is_empty() {
                return AxiomVerdict::fails(axiom, Witness::points(&[p, q]));
            }
        }
    }
    AxiomVerdict::holds(axiom)
}

fn check_b2(g: &Geometry) -> AxiomVerdict {
    if let Some(pairs) = g.perp_pairs() {
        for &(l, m) in pairs {
            if g.lines_disjoint(l, m) {
                return AxiomVerdict::fails(Axiom::B2, Witness::lines(&[l, m]));
            }
        }
    }
    AxiomVerdict::holds(Axiom::B2)
}

fn check_b3(g: &Geometry) -> AxiomVerdict {
    // Every (point, line) pair, incident ones included.
    for p in 0..g.num_points() {
        for l in 0..g.num_lines() {
            let found = g.lines_through_raw(p).iter().any(|&m| g.is_perp_raw(m, l));
            if !found {
                return AxiomVerdict::fails(Axiom::B3, Witness::both(&[p], &[l]));
            }
        }
    }
    AxiomVerdict::holds(Axiom::B3)
}

fn check_b4(g: &Geometry) -> AxiomVerdict {
    // Incident (point, line) pairs only.
    for p in 0..g.num_points() {
        for &l in g.lines_through_raw(p) {
            let perps: Vec<usize> = g
                .lines_through_raw(p)
                .iter()
                .copied()
                .filter(|&m| g.is_perp_raw(m, l))
                .collect();
            if perps.len() != 1 {
                let mut lines = vec![l];
                lines.extend(perps.iter().take(2));
                return AxiomVerdict::fails(Axiom::B4, Witness::both(&[p], &lines));
            }
        }
    }
    AxiomVerdict::holds(Axiom::B4)
}

fn check_b5(g: &Geometry) -> AxiomVerdict {
    let b = g.num_lines();
    let mut anchor: Option<(usize, usize)> = None;
    for x in 0..b {
        for y in 0..b {
            if !g.is_perp_raw(x, y) {
                continue;
            }
            if anchor.is_none() {
                anchor = Some((x, y));
            }
            let shared = g.intersect_raw(x, y);
            for z in 0..b {
                if g.is_perp_raw(x, z) || g.is_perp_raw(y, z) {
                    continue;
                }
                let concurrent = shared.iter().any(|&p| g.incident_raw(z, p));
                if !concurrent {
                    return AxiomVerdict {
                        axiom: Axiom::B5,
                        holds: true,
                        witness: Some(Witness::lines(&[x, y, z])),
                    };
                }
            }
        }
    }
    // No valid triple exists. B5 is existential, so there is no single
    // counterexample tuple; the witness records the first perpendicular pair
    // (if any) as a search anchor.
    let witness = match anchor {
        Some((x, y)) => Witness::lines(&[x, y]),
        None => Witness::default(),
    };
    AxiomVerdict::fails(Axiom::B5, witness)
}

fn check_n1(g: &Geometry) -> AxiomVerdict {
    for l in 0..g.num_lines() {
        for p in 0..g.num_points() {
            if g.incident_raw(l, p) {
                continue;
            }
            let parallels: Vec<usize> = g
                .lines_through_raw(p)
                .iter()
                .copied()
                .filter(|&m| g.lines_disjoint(m, l))
                .collect();
            if parallels.len() != 1 {
                let mut lines = vec![l];
                lines.extend(parallels.iter().take(2));
                return AxiomVerdict::fails(Axiom::N1, Witness::both(&[p], &lines));
            }
        }
    }
    AxiomVerdict::holds(Axiom::N1)
}

fn check_n2(g: &Geometry) -> AxiomVerdict {
    if g.num_lines() == 0 {
        return AxiomVerdict::fails(Axiom::N2, Witness::default());
    }
    for l in 0..g.num_lines() {
        if g.num_points() - g.lines()[l].len() < 2 {
            return AxiomVerdict::fails(Axiom::N2, Witness::lines(&[l]));
        }
    }
    AxiomVerdict::holds(Axiom::N2)
}

fn check_n3(g: &Geometry) -> AxiomVerdict {
    if g.num_points() == 0 {
        return AxiomVerdict::fails(Axiom::N3, Witness::default());
    }
    for p in 0..g.num_points() {
        if g.num_lines() - g.lines_through_raw(p).len() < 2 {
            return AxiomVerdict::fails(Axiom::N3, Witness::points(&[p]));
        }
    }
    AxiomVerdict::holds(Axiom::N3)
}

fn min_thin_point(g: &Geometry) -> Option<usize> {
    (0..g.num_points()).find(|&p| g.lines_through_raw(p).len() < 3)
}

fn thin_point_witness(g: &Geometry) -> Witness {
    match min_thin_point(g) {
        Some(p) => {
            let lines = g.lines_through_raw(p);
            if lines.is_empty() {
                Witness::points(&[p])
            } else {
                Witness::both(&[p], &[lines[0]])
            }
        }
        None => Witness::default(),
    }
}

fn check_thick_line(g: &Geometry) -> AxiomVerdict {
    for l in 0..g.num_lines() {
        if g.lines()[l]
            .iter()
            .all(|&p| g.lines_through_raw(p).len() >= 3)
        {
            return AxiomVerdict::holds(Axiom::ThickLine);
        }
    }
    AxiomVerdict::fails(Axiom::ThickLine, thin_point_witness(g))
}

fn check_all_thick(g: &Geometry) -> AxiomVerdict {
    match min_thin_point(g) {
        None => AxiomVerdict::holds(Axiom::AllThick),
        Some(p) => AxiomVerdict::fails(Axiom::AllThick, Witness::points(&[p])),
    }
}

/// Runs every applicable axiom check and derives the structural classes.
///
/// The B-axioms are skipped (not errored) when the geometry carries no
/// perpendicularity relation, so relation-free nets still classify. Net
/// parameters are computed exactly when the geometry is a Bruck net.
pub fn classify(g: &Geometry) -> Result<ClassificationReport, AnalysisError> {
    let mut verdicts = Vec::new();
    verdicts.push(check_a(g, false));
    verdicts.push(check_a(g, true));
    let b_applicable = perp_applicable(g);
    if b_applicable {
        for axiom in [Axiom::B1, Axiom::B2, Axiom::B3, Axiom::B4, Axiom::B5] {
            verdicts.push(check_axiom(g, axiom).expect("perp applicability checked"));
        }
    }
    verdicts.push(check_n1(g));
    verdicts.push(check_n2(g));
    verdicts.push(check_n3(g));
    let (thick_line, all_thick) = check_thickness(g);
    verdicts.push(thick_line);
    verdicts.push(all_thick);

    let holds = |axiom: Axiom| {
        verdicts
            .iter()
            .find(|v| v.axiom == axiom)
            .map(|v| v.holds)
            .unwrap_or(false)
    };
    let b_axioms_hold = b_applicable
        && [Axiom::B1, Axiom::B2, Axiom::B3, Axiom::B4, Axiom::B5]
            .iter()
            .all(|&a| holds(a));
    let nonempty = g.num_points() > 0;

    let mut classes = BTreeSet::new();
    if nonempty && holds(Axiom::AStar) {
        classes.insert(GeometryClass::PartialLinearSpace);
    }
    if nonempty && holds(Axiom::A) {
        classes.insert(GeometryClass::LinearSpace);
    }
    if holds(Axiom::AStar) && b_axioms_hold {
        classes.insert(GeometryClass::PartialSherkPlane);
    }
    if holds(Axiom::A) && b_axioms_hold {
        classes.insert(GeometryClass::SherkPlane);
    }

    let mut net_params = None;
    if holds(Axiom::AStar) && holds(Axiom::N1) && holds(Axiom::N2) && holds(Axiom::N3) {
        classes.insert(GeometryClass::BruckNet);
        let params = net_parameters(g)?;
        if params.r % 2 == 0 && params.r > 2 {
            classes.insert(GeometryClass::EvenDegreeNet);
        }
        net_params = Some(params);
    }

    Ok(ClassificationReport {
        verdicts,
        classes,
        net_params,
    })
}
