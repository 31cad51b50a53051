//! Immutable finite point-line geometries with an optional perpendicularity
//! relation, plus the primitive incidence queries every other module builds on.
//!
//! A [`Geometry`] stores lines as explicit point-index sequences; no algebraic
//! coordinates are retained. Construction canonicalizes the input: points are
//! sorted within each line, lines are sorted lexicographically by point
//! sequence, and line indices everywhere else in this crate refer to the
//! post-sort positions. Canonicalization is idempotent, so rebuilding a
//! geometry from its own canonical data yields an identical structure.
//!
//! A geometry is immutable after construction and all queries are pure, so
//! shared references can be used freely across threads.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Index of a point in a [`Geometry`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub usize);

/// Index of a line in a [`Geometry`], referring to canonical (post-sort) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineId(pub usize);

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Point count of a single line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineStats {
    pub line: LineId,
    /// Number of points incident with the line.
    pub n_line: usize,
}

/// Line count through a single point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointStats {
    pub point: PointId,
    /// Number of lines incident with the point.
    pub r_point: usize,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("point {point} out of bounds (geometry has {num_points} points)")]
    PointOutOfBounds { point: usize, num_points: usize },
    #[error("line {line} out of bounds (geometry has {num_lines} lines)")]
    LineOutOfBounds { line: usize, num_lines: usize },
    #[error("input line {line} repeats point {point}")]
    RepeatedPoint { line: usize, point: usize },
    #[error("input lines {first} and {second} have identical point sets")]
    DuplicateLine { first: usize, second: usize },
    #[error("perpendicularity pair refers to line {line}, but geometry has {num_lines} lines")]
    PerpLineOutOfBounds { line: usize, num_lines: usize },
    #[error("line_through requires two distinct points, got point {point} twice")]
    SamePoint { point: usize },
    #[error("points {p} and {q} lie on two lines ({first} and {second})")]
    MultipleLines {
        p: usize,
        q: usize,
        first: LineId,
        second: LineId,
    },
    #[error("geometry has no perpendicularity relation")]
    NoPerpRelation,
}

/// An immutable finite partial linear space, optionally equipped with a
/// symmetric perpendicularity relation on lines.
///
/// The perpendicularity relation is stored as unordered index pairs, so
/// symmetry holds by representation. Self-pairs `(l, l)` are representable on
/// purpose: "no line is perpendicular to itself" is a checkable property of an
/// input, not a type constraint. Constructors in [`crate::construct`] never
/// emit self-pairs.
///
/// Isolated points (on zero lines) are permitted by the data model; the axiom
/// suite flags them (axiom B3 fails for them) rather than the constructor.
#[derive(Clone)]
pub struct Geometry {
    num_points: usize,
    lines: Vec<Vec<usize>>,
    perp: Option<BTreeSet<(usize, usize)>>,
    // Derived caches, rebuilt on construction.
    lines_through: Vec<Vec<usize>>,
    perp_adj: Vec<Vec<usize>>,
}

impl PartialEq for Geometry {
    fn eq(&self, other: &Self) -> bool {
        self.num_points == other.num_points && self.lines == other.lines && self.perp == other.perp
    }
}

impl Eq for Geometry {}

impl fmt::Debug for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Geometry")
            .field("num_points", &self.num_points)
            .field("lines", &self.lines)
            .field("perp", &self.perp)
            .finish()
    }
}

impl Geometry {
    /// Builds a geometry without a perpendicularity relation.
    pub fn new(num_points: usize, lines: Vec<Vec<usize>>) -> Result<Self, GeometryError> {
        Self::build(num_points, lines, None)
    }

    /// Builds a geometry with a perpendicularity relation given as unordered
    /// line-index pairs (indices refer to the input order of `lines` and are
    /// remapped to canonical order along with the lines themselves).
    pub fn with_perp(
        num_points: usize,
        lines: Vec<Vec<usize>>,
        perp: Vec<(usize, usize)>,
    ) -> Result<Self, GeometryError> {
        Self::build(num_points, lines, Some(perp))
    }

    fn build(
        num_points: usize,
        lines: Vec<Vec<usize>>,
        perp: Option<Vec<(usize, usize)>>,
    ) -> Result<Self, GeometryError> {
        let num_lines = lines.len();
        let mut indexed: Vec<(Vec<usize>, usize)> = Vec::with_capacity(num_lines);
        for (input_index, mut line) in lines.into_iter().enumerate() {
            line.sort_unstable();
            for pair in line.windows(2) {
                if pair[0] == pair[1] {
                    return Err(GeometryError::RepeatedPoint {
                        line: input_index,
                        point: pair[0],
                    });
                }
            }
            if let Some(&last) = line.last() {
                if last >= num_points {
                    return Err(GeometryError::PointOutOfBounds {
                        point: last,
                        num_points,
                    });
                }
            }
            indexed.push((line, input_index));
        }
        indexed.sort();
        for pair in indexed.windows(2) {
            if pair[0].0 == pair[1].0 {
                let (a, b) = (pair[0].1, pair[1].1);
                return Err(GeometryError::DuplicateLine {
                    first: a.min(b),
                    second: a.max(b),
                });
            }
        }
        let mut old_to_new = vec![0usize; num_lines];
        for (new_index, (_, old_index)) in indexed.iter().enumerate() {
            old_to_new[*old_index] = new_index;
        }
        let sorted_lines: Vec<Vec<usize>> = indexed.into_iter().map(|(line, _)| line).collect();

        let perp = match perp {
            None => None,
            Some(pairs) => {
                let mut set = BTreeSet::new();
                for (a, b) in pairs {
                    for &x in &[a, b] {
                        if x >= num_lines {
                            return Err(GeometryError::PerpLineOutOfBounds { line: x, num_lines });
                        }
                    }
                    let (a, b) = (old_to_new[a], old_to_new[b]);
                    set.insert((a.min(b), a.max(b)));
                }
                Some(set)
            }
        };

        let mut lines_through = vec![Vec::new(); num_points];
        for (l, line) in sorted_lines.iter().enumerate() {
            for &p in line {
                lines_through[p].push(l);
            }
        }

        let mut perp_adj = vec![Vec::new(); num_lines];
        if let Some(set) = &perp {
            for &(a, b) in set {
                perp_adj[a].push(b);
                if a != b {
                    perp_adj[b].push(a);
                }
            }
            for adj in &mut perp_adj {
                adj.sort_unstable();
            }
        }

        Ok(Geometry {
            num_points,
            lines: sorted_lines,
            perp,
            lines_through,
            perp_adj,
        })
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    /// Canonical lines as sorted point-index sequences.
    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn has_perp_relation(&self) -> bool {
        self.perp.is_some()
    }

    /// The perpendicularity relation as canonical `(min, max)` index pairs.
    pub fn perp_pairs(&self) -> Option<&BTreeSet<(usize, usize)>> {
        self.perp.as_ref()
    }

    fn check_point(&self, p: usize) -> Result<(), GeometryError> {
        if p >= self.num_points {
            return Err(GeometryError::PointOutOfBounds {
                point: p,
                num_points: self.num_points,
            });
        }
        Ok(())
    }

    fn check_line(&self, l: usize) -> Result<(), GeometryError> {
        if l >= self.lines.len() {
            return Err(GeometryError::LineOutOfBounds {
                line: l,
                num_lines: self.lines.len(),
            });
        }
        Ok(())
    }

    /// Point sequence of a line.
    pub fn line_points(&self, l: LineId) -> Result<&[usize], GeometryError> {
        self.check_line(l.0)?;
        Ok(&self.lines[l.0])
    }

    /// All lines incident with a point, ascending.
    pub fn lines_through(&self, p: PointId) -> Result<Vec<LineId>, GeometryError> {
        self.check_point(p.0)?;
        Ok(self.lines_through[p.0].iter().map(|&l| LineId(l)).collect())
    }

    pub(crate) fn lines_through_raw(&self, p: usize) -> &[usize] {
        &self.lines_through[p]
    }

    pub(crate) fn incident_raw(&self, l: usize, p: usize) -> bool {
        self.lines[l].binary_search(&p).is_ok()
    }

    pub fn incident(&self, p: PointId, l: LineId) -> Result<bool, GeometryError> {
        self.check_point(p.0)?;
        self.check_line(l.0)?;
        Ok(self.incident_raw(l.0, p.0))
    }

    /// The unique line through two distinct points, if one exists.
    ///
    /// When the two points lie on more than one line the geometry violates
    /// axiom A*; rather than choosing arbitrarily, the violation is reported.
    pub fn line_through(&self, p: PointId, q: PointId) -> Result<Option<LineId>, GeometryError> {
        self.check_point(p.0)?;
        self.check_point(q.0)?;
        if p == q {
            return Err(GeometryError::SamePoint { point: p.0 });
        }
        let common = intersect_sorted(&self.lines_through[p.0], &self.lines_through[q.0]);
        match common.len() {
            0 => Ok(None),
            1 => Ok(Some(LineId(common[0]))),
            _ => Err(GeometryError::MultipleLines {
                p: p.0,
                q: q.0,
                first: LineId(common[0]),
                second: LineId(common[1]),
            }),
        }
    }

    pub(crate) fn common_lines_raw(&self, p: usize, q: usize) -> Vec<usize> {
        intersect_sorted(&self.lines_through[p], &self.lines_through[q])
    }

    /// Exact point-set intersection of two lines; `intersect(l, l)` is the
    /// full point set of `l`.
    pub fn intersect(&self, l: LineId, m: LineId) -> Result<Vec<PointId>, GeometryError> {
        self.check_line(l.0)?;
        self.check_line(m.0)?;
        Ok(self
            .intersect_raw(l.0, m.0)
            .into_iter()
            .map(PointId)
            .collect())
    }

    pub(crate) fn intersect_raw(&self, l: usize, m: usize) -> Vec<usize> {
        intersect_sorted(&self.lines[l], &self.lines[m])
    }

    pub(crate) fn lines_disjoint(&self, l: usize, m: usize) -> bool {
        if l == m {
            return self.lines[l].is_empty();
        }
        disjoint_sorted(&self.lines[l], &self.lines[m])
    }

    /// True iff the point is incident with at least three lines.
    pub fn is_thick(&self, p: PointId) -> Result<bool, GeometryError> {
        self.check_point(p.0)?;
        Ok(self.lines_through[p.0].len() >= 3)
    }

    pub fn line_stats(&self, l: LineId) -> Result<LineStats, GeometryError> {
        self.check_line(l.0)?;
        Ok(LineStats {
            line: l,
            n_line: self.lines[l.0].len(),
        })
    }

    pub fn point_stats(&self, p: PointId) -> Result<PointStats, GeometryError> {
        self.check_point(p.0)?;
        Ok(PointStats {
            point: p,
            r_point: self.lines_through[p.0].len(),
        })
    }

    /// All lines perpendicular to `l`, ascending. Errors when the geometry
    /// carries no perpendicularity relation (an empty relation is fine and
    /// yields an empty set).
    pub fn perpendiculars_to(&self, l: LineId) -> Result<Vec<LineId>, GeometryError> {
        if self.perp.is_none() {
            return Err(GeometryError::NoPerpRelation);
        }
        self.check_line(l.0)?;
        Ok(self.perp_adj[l.0].iter().map(|&m| LineId(m)).collect())
    }

    pub(crate) fn perp_adj_raw(&self, l: usize) -> &[usize] {
        &self.perp_adj[l]
    }

    pub fn is_perp(&self, l: LineId, m: LineId) -> Result<bool, GeometryError> {
        if self.perp.is_none() {
            return Err(GeometryError::NoPerpRelation);
        }
        self.check_line(l.0)?;
        self.check_line(m.0)?;
        Ok(self.is_perp_raw(l.0, m.0))
    }

    pub(crate) fn is_perp_raw(&self, l: usize, m: usize) -> bool {
        match &self.perp {
            Some(set) => set.contains(&(l.min(m), l.max(m))),
            None => false,
        }
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn disjoint_sorted(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Geometry {
        // 3x3 grid: rows and columns only.
        Geometry::new(
            9,
            vec![
                vec![0, 1, 2],
                vec![3, 4, 5],
                vec![6, 7, 8],
                vec![0, 3, 6],
                vec![1, 4, 7],
                vec![2, 5, 8],
            ],
        )
        .unwrap()
    }

    #[test]
    fn canonicalizes_lines_and_points() {
        let g = Geometry::new(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(g.lines(), &[vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn rejects_out_of_bounds_point() {
        let err = Geometry::new(3, vec![vec![0, 3]]).unwrap_err();
        assert_eq!(
            err,
            GeometryError::PointOutOfBounds {
                point: 3,
                num_points: 3
            }
        );
    }

    #[test]
    fn rejects_repeated_point_in_line() {
        let err = Geometry::new(3, vec![vec![1, 1]]).unwrap_err();
        assert_eq!(err, GeometryError::RepeatedPoint { line: 0, point: 1 });
    }

    #[test]
    fn rejects_duplicate_lines() {
        let err = Geometry::new(3, vec![vec![0, 1], vec![2], vec![1, 0]]).unwrap_err();
        assert_eq!(
            err,
            GeometryError::DuplicateLine {
                first: 0,
                second: 2
            }
        );
    }

    #[test]
    fn perp_indices_follow_line_sort() {
        // Input line 0 sorts after input line 1; the pair must be remapped.
        let g = Geometry::with_perp(4, vec![vec![2, 3], vec![0, 1]], vec![(0, 1)]).unwrap();
        assert_eq!(g.lines(), &[vec![0, 1], vec![2, 3]]);
        assert!(g.is_perp(LineId(0), LineId(1)).unwrap());
    }

    #[test]
    fn line_through_unique_and_absent() {
        let g = grid();
        assert_eq!(
            g.line_through(PointId(0), PointId(1)).unwrap(),
            Some(LineId(0))
        );
        // Diagonal cells share no grid line.
        assert_eq!(g.line_through(PointId(0), PointId(4)).unwrap(), None);
    }

    #[test]
    fn line_through_reports_a_star_violation() {
        let g = Geometry::new(4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        let err = g.line_through(PointId(0), PointId(1)).unwrap_err();
        assert_eq!(
            err,
            GeometryError::MultipleLines {
                p: 0,
                q: 1,
                first: LineId(0),
                second: LineId(1)
            }
        );
    }

    #[test]
    fn line_through_rejects_equal_points() {
        let g = grid();
        assert_eq!(
            g.line_through(PointId(2), PointId(2)).unwrap_err(),
            GeometryError::SamePoint { point: 2 }
        );
    }

    #[test]
    fn intersect_self_is_full_line() {
        let g = grid();
        assert_eq!(
            g.intersect(LineId(0), LineId(0)).unwrap(),
            vec![PointId(0), PointId(1), PointId(2)]
        );
        assert_eq!(g.intersect(LineId(0), LineId(1)).unwrap(), vec![PointId(0)]);
    }

    #[test]
    fn thickness_threshold_is_three() {
        let g = grid();
        assert!(!g.is_thick(PointId(4)).unwrap()); // on a row and a column only
        let single = Geometry::new(2, vec![vec![0, 1]]).unwrap();
        assert!(!single.is_thick(PointId(0)).unwrap());
    }

    #[test]
    fn perpendiculars_require_relation() {
        let g = grid();
        assert_eq!(
            g.perpendiculars_to(LineId(0)).unwrap_err(),
            GeometryError::NoPerpRelation
        );
        let g = Geometry::with_perp(9, g.lines().to_vec(), vec![]).unwrap();
        assert_eq!(g.perpendiculars_to(LineId(0)).unwrap(), vec![]);
    }

    #[test]
    fn self_pairs_are_representable() {
        let g = Geometry::with_perp(2, vec![vec![0, 1]], vec![(0, 0)]).unwrap();
        assert!(g.is_perp(LineId(0), LineId(0)).unwrap());
        assert_eq!(g.perpendiculars_to(LineId(0)).unwrap(), vec![LineId(0)]);
    }
}
