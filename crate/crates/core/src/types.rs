//! Distance types of rooted partial k-trees: bipartite types,
//! compatibility, the ⪯ order, and the glue-type invariant.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dist::Dist;
use crate::graph::{bipartition, distances};
use crate::ktree::{glue, RootedPartialKTree};

/// A `(k+1)×(k+1)` symmetric matrix of root distances: zero exactly on the
/// diagonal, positive or `∞` off it, satisfying the triangle inequality
/// with `∞ + x = ∞`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeMatrix {
    k: usize,
    entries: Vec<Dist>, // row-major, (k+1)² entries
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeError {
    BadShape { expected: usize, got: usize },
    NotSymmetric { i: usize, j: usize },
    DiagonalNonZero { i: usize },
    OffDiagonalZero { i: usize, j: usize },
    TriangleViolated { i: usize, j: usize, via: usize },
    KMismatch { left: usize, right: usize },
    BudgetExhausted { needed: u128, limit: u64 },
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeError::BadShape { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            TypeError::NotSymmetric { i, j } => write!(f, "entries ({i},{j}) and ({j},{i}) differ"),
            TypeError::DiagonalNonZero { i } => write!(f, "diagonal entry ({i},{i}) is not zero"),
            TypeError::OffDiagonalZero { i, j } => {
                write!(f, "off-diagonal entry ({i},{j}) is zero (roots are distinct vertices)")
            }
            TypeError::TriangleViolated { i, j, via } => {
                write!(f, "triangle inequality fails: ({i},{j}) > ({i},{via}) + ({via},{j})")
            }
            TypeError::KMismatch { left, right } => {
                write!(f, "types have k={left} and k={right}")
            }
            TypeError::BudgetExhausted { needed, limit } => {
                write!(f, "enumeration needs {needed} candidates, limit is {limit}")
            }
        }
    }
}

impl TypeMatrix {
    pub fn new(k: usize, entries: Vec<Dist>) -> Result<TypeMatrix, TypeError> {
        let dim = k + 1;
        if entries.len() != dim * dim {
            return Err(TypeError::BadShape { expected: dim * dim, got: entries.len() });
        }
        let m = TypeMatrix { k, entries };
        for i in 0..dim {
            if m.get(i, i) != Dist::ZERO {
                return Err(TypeError::DiagonalNonZero { i });
            }
            for j in i + 1..dim {
                if m.get(i, j) != m.get(j, i) {
                    return Err(TypeError::NotSymmetric { i, j });
                }
                if m.get(i, j) == Dist::ZERO {
                    return Err(TypeError::OffDiagonalZero { i, j });
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for via in 0..dim {
                    if m.get(i, j) > m.get(i, via).add(m.get(via, j)) {
                        return Err(TypeError::TriangleViolated { i, j, via });
                    }
                }
            }
        }
        Ok(m)
    }

    /// The type with every off-diagonal entry `∞`.
    pub fn all_infinite(k: usize) -> TypeMatrix {
        let dim = k + 1;
        let mut entries = vec![Dist::Inf; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Dist::ZERO;
        }
        TypeMatrix { k, entries }
    }

    /// Builds a symmetric matrix from the strict upper triangle, row by row.
    pub fn from_upper_triangle(k: usize, upper: &[Dist]) -> Result<TypeMatrix, TypeError> {
        let dim = k + 1;
        if upper.len() != dim * (dim - 1) / 2 {
            return Err(TypeError::BadShape { expected: dim * (dim - 1) / 2, got: upper.len() });
        }
        let mut entries = vec![Dist::ZERO; dim * dim];
        let mut it = upper.iter();
        for i in 0..dim {
            for j in i + 1..dim {
                let d = *it.next().unwrap();
                entries[i * dim + j] = d;
                entries[j * dim + i] = d;
            }
        }
        TypeMatrix::new(k, entries)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.k + 1
    }

    pub fn get(&self, i: usize, j: usize) -> Dist {
        self.entries[i * self.dim() + j]
    }

    /// Strict-upper-triangle entries, row by row.
    pub fn upper_triangle(&self) -> Vec<Dist> {
        let mut out = Vec::with_capacity(self.dim() * (self.dim() - 1) / 2);
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                out.push(self.get(i, j));
            }
        }
        out
    }

    pub fn max_finite_entry(&self) -> Option<u64> {
        self.upper_triangle().iter().filter_map(|d| d.finite()).max()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim()).map(|j| format!("{}", self.get(i, j))).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for TypeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Pairwise shortest-path distances between the roots; `∞` when
/// disconnected. Always a valid type: the metric provides the triangle
/// inequality, and distinct roots give positive off-diagonal entries.
pub fn type_of(t: &RootedPartialKTree) -> TypeMatrix {
    let dim = t.k() + 1;
    let mut entries = vec![Dist::ZERO; dim * dim];
    for (i, &r) in t.roots().iter().enumerate() {
        let d = distances(t.graph(), &[r]).expect("roots are in range");
        for (j, &s) in t.roots().iter().enumerate() {
            entries[i * dim + j] = d[s];
        }
    }
    TypeMatrix { k: t.k(), entries }
}

/// A type is bipartite iff every triple of pairwise-finite entries has even
/// sum.
pub fn is_bipartite_type(m: &TypeMatrix) -> bool {
    let dim = m.dim();
    for i in 0..dim {
        for j in i + 1..dim {
            for l in j + 1..dim {
                if let (Some(a), Some(b), Some(c)) =
                    (m.get(i, j).finite(), m.get(j, l).finite(), m.get(i, l).finite())
                {
                    if (a + b + c) % 2 != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Compatible: entries have the same parity whenever both are finite.
pub fn compatible(m1: &TypeMatrix, m2: &TypeMatrix) -> Result<bool, TypeError> {
    if m1.k != m2.k {
        return Err(TypeError::KMismatch { left: m1.k, right: m2.k });
    }
    for i in 0..m1.dim() {
        for j in i + 1..m1.dim() {
            if let (Some(a), Some(b)) = (m1.get(i, j).finite(), m2.get(i, j).finite()) {
                if a % 2 != b % 2 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `m1 ⪯ m2`: compatible and entrywise `m1 ≤ m2` (`∞` is maximal).
pub fn leq(m1: &TypeMatrix, m2: &TypeMatrix) -> Result<bool, TypeError> {
    if !compatible(m1, m2)? {
        return Ok(false);
    }
    for i in 0..m1.dim() {
        for j in i + 1..m1.dim() {
            if m1.get(i, j) > m2.get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All valid bipartite types for `k` with entries in `{1,…,bound} ∪ {∞}`,
/// in deterministic lexicographic order over the upper triangle
/// (finite values ascending, then `∞`). Triangle inequality is filtered
/// before parity.
pub fn enumerate_bipartite_types(
    k: usize,
    bound: u64,
    limit: u64,
) -> Result<Vec<TypeMatrix>, TypeError> {
    let pairs = (k + 1) * k / 2;
    let choices = bound as u128 + 1;
    let total = choices.checked_pow(pairs as u32).unwrap_or(u128::MAX);
    if total > limit as u128 {
        return Err(TypeError::BudgetExhausted { needed: total, limit });
    }
    let value_of = |digit: u64| -> Dist {
        if digit < bound {
            Dist::Fin(digit + 1)
        } else {
            Dist::Inf
        }
    };
    let mut out = Vec::new();
    let mut digits = vec![0u64; pairs];
    loop {
        let upper: Vec<Dist> = digits.iter().map(|&d| value_of(d)).collect();
        if let Ok(m) = TypeMatrix::from_upper_triangle(k, &upper) {
            if is_bipartite_type(&m) {
                out.push(m);
            }
        }
        // Mixed-radix increment, least significant digit last so the order
        // is lexicographic over the upper triangle.
        let mut pos = pairs;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] <= bound {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Everything `check_glue_type` needed to decide, kept for reporting.
#[derive(Debug, Clone)]
pub struct GlueTypeReport {
    pub type_a: TypeMatrix,
    pub type_b: TypeMatrix,
    pub glued_type: TypeMatrix,
    pub glued: RootedPartialKTree,
}

#[derive(Debug, Clone)]
pub enum CheckGlueError {
    Precondition(String),
    /// Any of these would falsify the glue-type invariant; carries the full
    /// instance for reproduction.
    LemmaViolation {
        stage: &'static str,
        a: RootedPartialKTree,
        b: RootedPartialKTree,
        m0: TypeMatrix,
    },
}

impl fmt::Display for CheckGlueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckGlueError::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            CheckGlueError::LemmaViolation { stage, a, b, m0 } => write!(
                f,
                "glue-type invariant violated at stage `{stage}`\n\
                 m0:\n{m0}\nleft: {a:?}\nright: {b:?}"
            ),
        }
    }
}

/// Verifies the glue-type invariant on a concrete instance: given bipartite
/// `a`, `b` and a bipartite type `m0` below both of their types, the types
/// must be compatible, the glue must be bipartite, and `m0 ⪯ type(a ⊕ b)`.
pub fn check_glue_type(
    a: &RootedPartialKTree,
    b: &RootedPartialKTree,
    m0: &TypeMatrix,
) -> Result<GlueTypeReport, CheckGlueError> {
    if a.k() != b.k() || a.k() != m0.k() {
        return Err(CheckGlueError::Precondition(format!(
            "k mismatch: {} vs {} vs type k={}",
            a.k(),
            b.k(),
            m0.k()
        )));
    }
    if bipartition(a.graph()).is_err() || bipartition(b.graph()).is_err() {
        return Err(CheckGlueError::Precondition("inputs must be bipartite".into()));
    }
    if !is_bipartite_type(m0) {
        return Err(CheckGlueError::Precondition("m0 must be a bipartite type".into()));
    }
    let type_a = type_of(a);
    let type_b = type_of(b);
    for (name, ty) in [("left", &type_a), ("right", &type_b)] {
        if !leq(m0, ty).expect("same k") {
            return Err(CheckGlueError::Precondition(format!(
                "m0 is not below the {name} type"
            )));
        }
    }
    let violation = |stage: &'static str| CheckGlueError::LemmaViolation {
        stage,
        a: a.clone(),
        b: b.clone(),
        m0: m0.clone(),
    };
    if !compatible(&type_a, &type_b).expect("same k") {
        return Err(violation("types compatible"));
    }
    let glued = glue(a, b).expect("same k");
    if bipartition(glued.graph()).is_err() {
        return Err(violation("glue bipartite"));
    }
    let glued_type = type_of(&glued);
    if !leq(m0, &glued_type).expect("same k") {
        return Err(violation("m0 below glued type"));
    }
    Ok(GlueTypeReport { type_a, type_b, glued_type, glued })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn t2(d: u64) -> TypeMatrix {
        TypeMatrix::from_upper_triangle(1, &[Dist::Fin(d)]).unwrap()
    }

    /// k=2 type with root distances (d, ∞, ∞): a far-rooted path's type.
    fn far_type(d: u64) -> TypeMatrix {
        TypeMatrix::from_upper_triangle(2, &[Dist::Fin(d), Dist::Inf, Dist::Inf]).unwrap()
    }

    #[test]
    fn type_of_examples() {
        // Endpoints of a length-3 path at distance 3 (third root isolated).
        let p3 = crate::ktree::far_rooted_path(3);
        assert_eq!(type_of(&p3), far_type(3));

        // C6 rooted at 0, 2, 4: all off-diagonal entries 2.
        let c6 = crate::ktree::certify_low_treewidth(&Graph::cycle(6), 2, Some(&[0, 2, 4])).unwrap();
        let ty = type_of(&c6);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { Dist::ZERO } else { Dist::Fin(2) };
                assert_eq!(ty.get(i, j), want);
            }
        }

        let iso = RootedPartialKTree::isolated(1);
        assert_eq!(type_of(&iso), TypeMatrix::all_infinite(1));
    }

    #[test]
    fn bipartite_type_examples() {
        let all2 = TypeMatrix::from_upper_triangle(2, &[Dist::Fin(2); 3]).unwrap();
        assert!(is_bipartite_type(&all2));
        let all1 = TypeMatrix::from_upper_triangle(2, &[Dist::Fin(1); 3]).unwrap();
        assert!(!is_bipartite_type(&all1));
        let vacuous = TypeMatrix::from_upper_triangle(
            2,
            &[Dist::Fin(2), Dist::Inf, Dist::Inf],
        )
        .unwrap();
        assert!(is_bipartite_type(&vacuous));
    }

    #[test]
    fn order_examples() {
        assert!(compatible(&t2(3), &t2(5)).unwrap());
        assert!(!compatible(&t2(2), &t2(3)).unwrap());
        let inf = TypeMatrix::all_infinite(1);
        assert!(compatible(&t2(2), &inf).unwrap());

        assert!(leq(&t2(3), &t2(5)).unwrap());
        assert!(!leq(&t2(3), &t2(4)).unwrap());
        assert!(leq(&t2(3), &inf).unwrap());
        assert!(leq(&t2(4), &inf).unwrap());
        assert!(!leq(&inf, &t2(4)).unwrap());
    }

    #[test]
    fn invalid_matrices_rejected() {
        // Zero off-diagonal.
        assert!(matches!(
            TypeMatrix::from_upper_triangle(1, &[Dist::ZERO]),
            Err(TypeError::OffDiagonalZero { .. })
        ));
        // Triangle violation: 1 + 1 < 5.
        assert!(matches!(
            TypeMatrix::from_upper_triangle(2, &[Dist::Fin(1), Dist::Fin(5), Dist::Fin(1)]),
            Err(TypeError::TriangleViolated { .. })
        ));
        // ∞ absorbs: finite ≤ ∞ + anything.
        assert!(TypeMatrix::from_upper_triangle(
            2,
            &[Dist::Fin(3), Dist::Inf, Dist::Inf]
        )
        .is_ok());
    }

    #[test]
    fn enumerate_small() {
        // k=1: no parity constraint (no triples); bound=2 gives {1, 2, ∞}.
        let types = enumerate_bipartite_types(1, 2, 1000).unwrap();
        assert_eq!(types.len(), 3);
        assert_eq!(types[0], t2(1));
        assert_eq!(types[1], t2(2));
        assert_eq!(types[2], TypeMatrix::all_infinite(1));

        let types = enumerate_bipartite_types(1, 1, 1000).unwrap();
        assert_eq!(types.len(), 2);

        // k=2, bound=1: off-diagonals from {1, ∞}; parity kills the all-1
        // triangle, triangle inequality kills exactly-one-∞ patterns.
        let types = enumerate_bipartite_types(2, 1, 1000).unwrap();
        let count = types.len();
        // Brute-force oracle over the 8 patterns.
        let mut expect = 0;
        for bits in 0..8u32 {
            let up: Vec<Dist> = (0..3)
                .map(|i| if bits & (1 << i) != 0 { Dist::Fin(1) } else { Dist::Inf })
                .collect();
            if let Ok(m) = TypeMatrix::from_upper_triangle(2, &up) {
                if is_bipartite_type(&m) {
                    expect += 1;
                }
            }
        }
        assert_eq!(count, expect);

        assert!(matches!(
            enumerate_bipartite_types(2, 100, 10),
            Err(TypeError::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn glue_type_examples() {
        // Two far-rooted length-4 paths glue to C8 (plus the shared
        // isolated root); the glued distance doubles.
        let p4 = crate::ktree::far_rooted_path(4);
        let m0 = far_type(2);
        let report = check_glue_type(&p4, &p4, &m0).unwrap();
        assert_eq!(report.glued_type, far_type(4));
        assert_eq!(report.glued.vertex_count(), 9);

        // A far-rooted length-2 path against three isolated roots.
        let p2 = crate::ktree::far_rooted_path(2);
        let iso = RootedPartialKTree::isolated(2);
        let report = check_glue_type(&p2, &iso, &m0).unwrap();
        assert_eq!(report.glued_type, far_type(2));

        // Precondition: m0 must be below both types (parity clash with the
        // length-1 path).
        let p1 = crate::ktree::far_rooted_path(1);
        assert!(matches!(
            check_glue_type(&p1, &p2, &m0),
            Err(CheckGlueError::Precondition(_))
        ));

        // Precondition: inputs must be bipartite.
        let c5 = crate::ktree::certify_low_treewidth(&Graph::cycle(5), 2, Some(&[0, 1, 2])).unwrap();
        let m0k2 = TypeMatrix::from_upper_triangle(2, &[Dist::Fin(1), Dist::Fin(2), Dist::Fin(1)])
            .unwrap();
        assert!(matches!(
            check_glue_type(&c5, &c5, &m0k2),
            Err(CheckGlueError::Precondition(_))
        ));
    }
}
