//! Builders for the concrete geometries: affine planes over prime fields,
//! nets from mutually orthogonal latin squares or from parallel-class
//! deletion, involution-based perpendicularity, and the thin-point
//! extensions that add universal perpendicular lines.
//!
//! Every builder validates its preconditions and re-verifies its advertised
//! postconditions on the constructed object instead of trusting them. All
//! builders are pure: the input geometry is never mutated and the output is
//! freshly constructed.

use std::fmt;

use thiserror::Error;

use crate::analysis::{net_parameters, parallel_classes, AnalysisError};
use crate::axioms::{
    check_axiom, perp_applicable, Axiom, AxiomError, Witness, PARTIAL_SHERK_AXIOMS,
};
use crate::geometry::{Geometry, GeometryError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TauError {
    #[error("mapping entry {value} at index {index} is out of range (length {len})")]
    EntryOutOfRange {
        index: usize,
        value: usize,
        len: usize,
    },
    #[error("mapping is not an involution at class {index}")]
    NotInvolution { index: usize },
    #[error("mapping fixes class {index}")]
    HasFixedPoint { index: usize },
    #[error("pairs do not cover class {class}")]
    IncompletePairs { class: usize },
    #[error("class {class} appears in more than one pair")]
    DuplicateInPairs { class: usize },
}

/// A fixed-point-free involution on parallel-class indices `[0, r)`.
///
/// Classes are always counted in canonical order (sorted by their least
/// member line index), so an involution serializes and round-trips as a
/// plain pair list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tau {
    mapping: Vec<usize>,
}

impl Tau {
    /// Validates that `mapping` is a fixed-point-free involution.
    pub fn new(mapping: Vec<usize>) -> Result<Self, TauError> {
        let len = mapping.len();
        for (index, &value) in mapping.iter().enumerate() {
            if value >= len {
                return Err(TauError::EntryOutOfRange { index, value, len });
            }
        }
        for (index, &value) in mapping.iter().enumerate() {
            if value == index {
                return Err(TauError::HasFixedPoint { index });
            }
            if mapping[value] != index {
                return Err(TauError::NotInvolution { index });
            }
        }
        Ok(Tau { mapping })
    }

    /// Builds an involution on `num_classes` classes from unordered pairs;
    /// the pairs must cover every class exactly once.
    pub fn from_pairs(num_classes: usize, pairs: &[(usize, usize)]) -> Result<Self, TauError> {
        let mut mapping = vec![usize::MAX; num_classes];
        for &(a, b) in pairs {
            for &x in &[a, b] {
                if x >= num_classes {
                    return Err(TauError::EntryOutOfRange {
                        index: x,
                        value: x,
                        len: num_classes,
                    });
                }
            }
            if a == b {
                return Err(TauError::HasFixedPoint { index: a });
            }
            for &x in &[a, b] {
                if mapping[x] != usize::MAX {
                    return Err(TauError::DuplicateInPairs { class: x });
                }
            }
            mapping[a] = b;
            mapping[b] = a;
        }
        if let Some(class) = mapping.iter().position(|&t| t == usize::MAX) {
            return Err(TauError::IncompletePairs { class });
        }
        Ok(Tau { mapping })
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    /// Image of a class index; `class` must be below `len()`.
    pub fn apply(&self, class: usize) -> usize {
        self.mapping[class]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    /// Canonical pair list: each transposition `(i, tau(i))` with `i < tau(i)`,
    /// ascending by `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mapping
            .iter()
            .enumerate()
            .filter(|&(i, &t)| i < t)
            .map(|(i, &t)| (i, t))
            .collect()
    }

    /// All fixed-point-free involutions on `num_classes` classes, in a
    /// deterministic order; empty when `num_classes` is odd.
    pub fn enumerate(num_classes: usize) -> Vec<Tau> {
        if num_classes % 2 != 0 {
            return Vec::new();
        }
        fn rec(mapping: &mut Vec<usize>, out: &mut Vec<Tau>) {
            let Some(i) = mapping.iter().position(|&t| t == usize::MAX) else {
                out.push(Tau {
                    mapping: mapping.clone(),
                });
                return;
            };
            let candidates: Vec<usize> = ((i + 1)..mapping.len())
                .filter(|&j| mapping[j] == usize::MAX)
                .collect();
            for j in candidates {
                mapping[i] = j;
                mapping[j] = i;
                rec(mapping, out);
                mapping[i] = usize::MAX;
                mapping[j] = usize::MAX;
            }
        }
        let mut out = Vec::new();
        rec(&mut vec![usize::MAX; num_classes], &mut out);
        out
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .collect();
        f.write_str(&pairs.join(" "))
    }
}

/// A validated set of mutually orthogonal latin squares of one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquareSet {
    order: usize,
    squares: Vec<Vec<Vec<usize>>>,
}

impl LatinSquareSet {
    /// Validates that every square is latin and every pair is orthogonal.
    /// An empty square list is allowed and yields the plain row/column grid
    /// when turned into a net.
    pub fn new(order: usize, squares: Vec<Vec<Vec<usize>>>) -> Result<Self, ConstructError> {
        if order < 2 {
            return Err(ConstructError::MolsOrderTooSmall { order });
        }
        for (s, square) in squares.iter().enumerate() {
            if square.len() != order {
                return Err(ConstructError::NotLatin {
                    square: s,
                    detail: format!("{} rows, expected {order}", square.len()),
                });
            }
            for (i, row) in square.iter().enumerate() {
                if row.len() != order {
                    return Err(ConstructError::NotLatin {
                        square: s,
                        detail: format!("row {i} has {} entries, expected {order}", row.len()),
                    });
                }
                let mut seen = vec![false; order];
                for &value in row {
                    if value >= order {
                        return Err(ConstructError::NotLatin {
                            square: s,
                            detail: format!("row {i} contains out-of-range symbol {value}"),
                        });
                    }
                    if seen[value] {
                        return Err(ConstructError::NotLatin {
                            square: s,
                            detail: format!("row {i} repeats symbol {value}"),
                        });
                    }
                    seen[value] = true;
                }
            }
            for j in 0..order {
                let mut seen = vec![false; order];
                for row in square {
                    let value = row[j];
                    if seen[value] {
                        return Err(ConstructError::NotLatin {
                            square: s,
                            detail: format!("column {j} repeats symbol {value}"),
                        });
                    }
                    seen[value] = true;
                }
            }
        }
        for a in 0..squares.len() {
            for b in (a + 1)..squares.len() {
                let mut seen = vec![false; order * order];
                for (row_a, row_b) in squares[a].iter().zip(&squares[b]) {
                    for (&x, &y) in row_a.iter().zip(row_b) {
                        if seen[x * order + y] {
                            return Err(ConstructError::NotOrthogonal {
                                first: a,
                                second: b,
                                pair: (x, y),
                            });
                        }
                        seen[x * order + y] = true;
                    }
                }
            }
        }
        Ok(LatinSquareSet { order, squares })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_squares(&self) -> usize {
        self.squares.len()
    }

    pub fn squares(&self) -> &[Vec<Vec<usize>>] {
        &self.squares
    }
}

/// Configuration for the thin-point extensions: `k` new lines perpendicular
/// to every original line, optionally capped by one apex point incident with
/// all of them (which requires `k` even).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GkConfig {
    k: usize,
    starred: bool,
}

impl GkConfig {
    pub fn plain(k: usize) -> Result<Self, ConstructError> {
        if k == 0 {
            return Err(ConstructError::InvalidK);
        }
        Ok(GkConfig { k, starred: false })
    }

    pub fn starred(k: usize) -> Result<Self, ConstructError> {
        if k == 0 {
            return Err(ConstructError::InvalidK);
        }
        if k % 2 != 0 {
            return Err(ConstructError::StarRequiresEvenK { k });
        }
        Ok(GkConfig { k, starred: true })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_starred(&self) -> bool {
        self.starred
    }
}

/// Why a class deletion was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegenerateReason {
    DegreeBelowThree { degree: usize },
    AxiomFailed { axiom: Axiom },
}

impl fmt::Display for DegenerateReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerateReason::DegreeBelowThree { degree } => {
                write!(f, "remaining degree {degree} is below 3")
            }
            DegenerateReason::AxiomFailed { axiom } => {
                write!(f, "axiom {axiom} fails on the result")
            }
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("{q} is not prime")]
    NotPrime { q: u64 },
    #[error("latin square order {order} is too small (need at least 2)")]
    MolsOrderTooSmall { order: usize },
    #[error("square {square} is not latin: {detail}")]
    NotLatin { square: usize, detail: String },
    #[error("squares {first} and {second} are not orthogonal: symbol pair ({}, {}) repeats", pair.0, pair.1)]
    NotOrthogonal {
        first: usize,
        second: usize,
        pair: (usize, usize),
    },
    #[error("class index {index} out of range ({num_classes} classes)")]
    BadClassIndex { index: usize, num_classes: usize },
    #[error("deletion left a degenerate structure: {reason}")]
    DegenerateResult { reason: DegenerateReason },
    #[error("degree {degree} is odd; no fixed-point-free involution exists")]
    OddDegree { degree: usize },
    #[error("degree 2 is rejected: axiom B5 cannot hold")]
    DegreeTwo,
    #[error("involution acts on {got} classes but the net has {expected}")]
    TauSizeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Tau(#[from] TauError),
    #[error("input is not a partial Sherk plane: axiom {axiom} fails")]
    NotPartialSherk {
        axiom: Axiom,
        witness: Option<Witness>,
    },
    #[error("apex extension requires even k, got {k}")]
    StarRequiresEvenK { k: usize },
    #[error("k must be positive")]
    InvalidK,
    #[error("input is not a net: {0}")]
    NotANet(Box<AnalysisError>),
    #[error("construction postcondition failed: axiom {axiom} does not hold on the result")]
    PostVerification {
        axiom: Axiom,
        witness: Option<Witness>,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds the affine plane of prime order `q`: `q^2` points, `q^2 + q`
/// lines in `q + 1` parallel classes. Prime-power planes are not generated
/// here; they enter through user-supplied latin squares instead.
pub fn build_affine_plane(q: u64) -> Result<Geometry, ConstructError> {
    if !is_prime(q) {
        return Err(ConstructError::NotPrime { q });
    }
    let q = q as usize;
    let mut lines: Vec<Vec<usize>> = Vec::with_capacity(q * q + q);
    for c in 0..q {
        lines.push((0..q).map(|y| c * q + y).collect());
    }
    for slope in 0..q {
        for c in 0..q {
            lines.push((0..q).map(|x| x * q + (slope * x + c) % q).collect());
        }
    }
    Ok(Geometry::new(q * q, lines)?)
}

/// Builds the net on the `n^2` cells of the squares: `n` rows, `n` columns,
/// and the `n` level sets of each square, giving degree `k + 2` for `k`
/// squares.
pub fn build_net_from_mols(mols: &LatinSquareSet) -> Geometry {
    let n = mols.order();
    let mut lines: Vec<Vec<usize>> = Vec::with_capacity(n * (mols.num_squares() + 2));
    for i in 0..n {
        lines.push((0..n).map(|j| i * n + j).collect());
    }
    for j in 0..n {
        lines.push((0..n).map(|i| i * n + j).collect());
    }
    for square in mols.squares() {
        for value in 0..n {
            let mut line = Vec::with_capacity(n);
            for (i, row) in square.iter().enumerate() {
                for (j, &entry) in row.iter().enumerate() {
                    if entry == value {
                        line.push(i * n + j);
                    }
                }
            }
            lines.push(line);
        }
    }
    Geometry::new(n * n, lines).expect("lines assembled from validated squares are distinct")
}

/// Removes every line of the named parallel classes, keeping the points.
/// The result must remain a net of degree at least 3 and is re-verified;
/// any perpendicularity relation on the input is not carried over.
pub fn delete_parallel_classes(
    g: &Geometry,
    classes: &[usize],
) -> Result<Geometry, ConstructError> {
    net_parameters(g).map_err(|e| ConstructError::NotANet(Box::new(e)))?;
    let pc = parallel_classes(g).map_err(|e| ConstructError::NotANet(Box::new(e)))?;
    let mut delete = vec![false; pc.num_classes()];
    for &class in classes {
        if class >= pc.num_classes() {
            return Err(ConstructError::BadClassIndex {
                index: class,
                num_classes: pc.num_classes(),
            });
        }
        delete[class] = true;
    }
    let kept: Vec<Vec<usize>> = g
        .lines()
        .iter()
        .enumerate()
        .filter(|(l, _)| !delete[pc.class_of[*l]])
        .map(|(_, line)| line.clone())
        .collect();
    let result = Geometry::new(g.num_points(), kept)?;
    for axiom in [Axiom::AStar, Axiom::N1, Axiom::N2, Axiom::N3] {
        let verdict = check_axiom(&result, axiom).expect("A* and N-axioms need no perp relation");
        if !verdict.holds {
            return Err(ConstructError::DegenerateResult {
                reason: DegenerateReason::AxiomFailed { axiom },
            });
        }
    }
    let params = net_parameters(&result).map_err(|e| ConstructError::NotANet(Box::new(e)))?;
    if params.r < 3 {
        return Err(ConstructError::DegenerateResult {
            reason: DegenerateReason::DegreeBelowThree { degree: params.r },
        });
    }
    Ok(result)
}

/// Attaches perpendicularity to a net: lines `l` and `m` become perpendicular
/// exactly when `tau` maps the class of `l` to the class of `m`. The net must
/// have even degree above 2, and the advertised conclusion (the result is a
/// partial Sherk plane) is re-verified exhaustively, not assumed.
pub fn attach_perpendicularity(g: &Geometry, tau: &Tau) -> Result<Geometry, ConstructError> {
    let params = net_parameters(g).map_err(|e| ConstructError::NotANet(Box::new(e)))?;
    if params.r % 2 != 0 {
        return Err(ConstructError::OddDegree { degree: params.r });
    }
    if params.r == 2 {
        return Err(ConstructError::DegreeTwo);
    }
    if tau.len() != params.num_classes {
        return Err(ConstructError::TauSizeMismatch {
            expected: params.num_classes,
            got: tau.len(),
        });
    }
    let pc = parallel_classes(g).map_err(|e| ConstructError::NotANet(Box::new(e)))?;
    let mut pairs = Vec::new();
    for l in 0..g.num_lines() {
        let target = tau.apply(pc.class_of[l]);
        for m in &pc.classes[target] {
            pairs.push((l, m.0));
        }
    }
    let result = Geometry::with_perp(g.num_points(), g.lines().to_vec(), pairs)?;
    for axiom in PARTIAL_SHERK_AXIOMS {
        let verdict = check_axiom(&result, axiom).expect("result has a perpendicularity relation");
        if !verdict.holds {
            return Err(ConstructError::PostVerification {
                axiom,
                witness: verdict.witness,
            });
        }
    }
    Ok(result)
}

/// Extends a partial Sherk plane with `k` new lines.
///
/// Each original line `l` gains `k` new points (one per new line), appended
/// in `(line, i)` order at indices `v + l*k + i`. The new lines follow the
/// original ones at indices `b..b+k`; each is perpendicular to every
/// original line and to no new line. With `cfg.is_starred()` one apex point
/// (the final index) is added to all new lines and the new lines are instead
/// paired perpendicular `i <-> k-1-i`. The input must verify as a partial
/// Sherk plane, and so must the result.
pub fn construct_gk(g: &Geometry, cfg: GkConfig) -> Result<Geometry, ConstructError> {
    for axiom in PARTIAL_SHERK_AXIOMS {
        let verdict = match check_axiom(g, axiom) {
            Ok(v) => v,
            Err(AxiomError::NoPerpRelation) => {
                return Err(ConstructError::NotPartialSherk {
                    axiom,
                    witness: None,
                })
            }
        };
        if !verdict.holds {
            return Err(ConstructError::NotPartialSherk {
                axiom,
                witness: verdict.witness,
            });
        }
    }
    debug_assert!(perp_applicable(g));
    let v = g.num_points();
    let b = g.num_lines();
    let k = cfg.k();
    let mut lines: Vec<Vec<usize>> = g.lines().to_vec();
    for (l, line) in lines.iter_mut().enumerate() {
        line.extend((0..k).map(|i| v + l * k + i));
    }
    let apex = v + b * k;
    for i in 0..k {
        let mut new_line: Vec<usize> = (0..b).map(|l| v + l * k + i).collect();
        if cfg.is_starred() {
            new_line.push(apex);
        }
        lines.push(new_line);
    }
    let num_points = v + b * k + usize::from(cfg.is_starred());
    let mut pairs: Vec<(usize, usize)> = g
        .perp_pairs()
        .map(|set| set.iter().copied().collect())
        .unwrap_or_default();
    for i in 0..k {
        for m in 0..b {
            pairs.push((m, b + i));
        }
    }
    if cfg.is_starred() {
        for i in 0..k {
            let j = k - 1 - i;
            if i < j {
                pairs.push((b + i, b + j));
            }
        }
    }
    let result = Geometry::with_perp(num_points, lines, pairs)?;
    for axiom in PARTIAL_SHERK_AXIOMS {
        let verdict = check_axiom(&result, axiom).expect("result has a perpendicularity relation");
        if !verdict.holds {
            return Err(ConstructError::PostVerification {
                axiom,
                witness: verdict.witness,
            });
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_rejects_fixed_points_and_non_involutions() {
        assert_eq!(
            Tau::new(vec![0, 1]).unwrap_err(),
            TauError::HasFixedPoint { index: 0 }
        );
        assert_eq!(
            Tau::new(vec![1, 2, 0]).unwrap_err(),
            TauError::NotInvolution { index: 0 }
        );
        assert_eq!(
            Tau::new(vec![4, 0]).unwrap_err(),
            TauError::EntryOutOfRange {
                index: 0,
                value: 4,
                len: 2
            }
        );
        let tau = Tau::new(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(tau.pairs(), vec![(0, 1), (2, 3)]);
        assert_eq!(tau.to_string(), "0-1 2-3");
    }

    #[test]
    fn tau_pairs_round_trip() {
        let tau = Tau::new(vec![2, 3, 0, 1]).unwrap();
        assert_eq!(Tau::from_pairs(4, &tau.pairs()).unwrap(), tau);
        assert_eq!(
            Tau::from_pairs(4, &[(0, 1)]).unwrap_err(),
            TauError::IncompletePairs { class: 2 }
        );
        assert_eq!(
            Tau::from_pairs(4, &[(0, 1), (1, 2)]).unwrap_err(),
            TauError::DuplicateInPairs { class: 1 }
        );
    }

    #[test]
    fn tau_enumeration_counts_are_double_factorials() {
        assert_eq!(Tau::enumerate(2).len(), 1);
        assert_eq!(Tau::enumerate(4).len(), 3);
        assert_eq!(Tau::enumerate(6).len(), 15);
        assert_eq!(Tau::enumerate(8).len(), 105);
        assert!(Tau::enumerate(5).is_empty());
    }

    #[test]
    fn affine_plane_counts() {
        for (q, v, b, classes) in [(2u64, 4, 6, 3), (3, 9, 12, 4), (5, 25, 30, 6)] {
            let g = build_affine_plane(q).unwrap();
            assert_eq!(g.num_points(), v, "q={q}");
            assert_eq!(g.num_lines(), b, "q={q}");
            let pc = parallel_classes(&g).unwrap();
            assert_eq!(pc.num_classes(), classes, "q={q}");
        }
        assert_eq!(
            build_affine_plane(4).unwrap_err(),
            ConstructError::NotPrime { q: 4 }
        );
        assert_eq!(
            build_affine_plane(9).unwrap_err(),
            ConstructError::NotPrime { q: 9 }
        );
        assert_eq!(
            build_affine_plane(1).unwrap_err(),
            ConstructError::NotPrime { q: 1 }
        );
    }

    #[test]
    fn mols_validation() {
        // Repeated symbol in a row.
        let err = LatinSquareSet::new(2, vec![vec![vec![0, 0], vec![1, 1]]]).unwrap_err();
        assert!(matches!(err, ConstructError::NotLatin { square: 0, .. }));
        // Two copies of one square repeat every symbol pair.
        let square = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let err = LatinSquareSet::new(3, vec![square.clone(), square]).unwrap_err();
        assert_eq!(
            err,
            ConstructError::NotOrthogonal {
                first: 0,
                second: 1,
                pair: (1, 1)
            }
        );
    }

    #[test]
    fn zero_squares_build_the_grid() {
        let mols = LatinSquareSet::new(3, vec![]).unwrap();
        let g = build_net_from_mols(&mols);
        assert_eq!(g.num_points(), 9);
        assert_eq!(g.num_lines(), 6);
        let params = net_parameters(&g).unwrap();
        assert_eq!((params.n, params.r), (3, 2));
    }

    #[test]
    fn gk_config_guards() {
        assert_eq!(GkConfig::plain(0).unwrap_err(), ConstructError::InvalidK);
        assert_eq!(
            GkConfig::starred(3).unwrap_err(),
            ConstructError::StarRequiresEvenK { k: 3 }
        );
        assert!(GkConfig::starred(4).is_ok());
    }

    #[test]
    fn gk_rejects_inputs_without_perpendicularity() {
        let g = build_affine_plane(3).unwrap();
        let err = construct_gk(&g, GkConfig::plain(2).unwrap()).unwrap_err();
        assert!(matches!(
            err,
            ConstructError::NotPartialSherk {
                axiom: Axiom::B1,
                witness: None
            }
        ));
    }
}
