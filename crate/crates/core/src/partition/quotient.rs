use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, NotEquitable, Result};
use crate::graph::Graph;

use super::{check_exhaustive, ColorFn, Coloring};

/// A square matrix of neighbour counts `s[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientMatrix {
    k: usize,
    entries: Vec<u32>,
}

impl QuotientMatrix {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<QuotientMatrix> {
        let k = rows.len();
        if k == 0 || rows.iter().any(|r| r.len() != k) {
            return Err(Error::Precondition("quotient matrix must be square and nonempty".into()));
        }
        Ok(QuotientMatrix { k, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(k: usize, f: impl Fn(usize, usize) -> u32) -> QuotientMatrix {
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                entries.push(f(i, j));
            }
        }
        QuotientMatrix { k, entries }
    }

    /// `s (J - E) + a E` of order `k`.
    pub fn je(k: usize, s: u32, a: u32) -> QuotientMatrix {
        QuotientMatrix::from_fn(k, |i, j| if i == j { a } else { s })
    }

    /// `s J` of order `k`.
    pub fn j(k: usize, s: u32) -> QuotientMatrix {
        QuotientMatrix::from_fn(k, |_, _| s)
    }

    /// The matrix `[[a, b], [c, d]]`.
    pub fn two(a: u32, b: u32, c: u32, d: u32) -> QuotientMatrix {
        QuotientMatrix { k: 2, entries: vec![a, b, c, d] }
    }

    /// Parses `"a b; c d"`.
    pub fn parse(s: &str) -> Result<QuotientMatrix> {
        let rows: std::result::Result<Vec<Vec<u32>>, _> = s
            .split(';')
            .map(|r| r.split_whitespace().map(|x| x.parse::<u32>()).collect())
            .collect();
        let rows = rows.map_err(|e| Error::Parse { line: 1, msg: format!("matrix entry: {e}") })?;
        QuotientMatrix::from_rows(rows).map_err(|_| Error::Parse { line: 1, msg: format!("not a square matrix: {s:?}") })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.k + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.k..(i + 1) * self.k]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.k).map(|i| self.row(i).to_vec()).collect()
    }

    /// The common row sum, if all rows agree.
    pub fn row_sum(&self) -> Option<u32> {
        let s: u32 = self.row(0).iter().sum();
        (0..self.k).all(|i| self.row(i).iter().sum::<u32>() == s).then_some(s)
    }

    pub fn scale(&self, t: u32) -> QuotientMatrix {
        QuotientMatrix { k: self.k, entries: self.entries.iter().map(|x| x * t).collect() }
    }

    pub fn add_diagonal(&self, t: u32) -> QuotientMatrix {
        QuotientMatrix::from_fn(self.k, |i, j| self.get(i, j) + if i == j { t } else { 0 })
    }

    pub fn is_tridiagonal(&self) -> bool {
        (0..self.k).all(|i| (0..self.k).all(|j| i.abs_diff(j) <= 1 || self.get(i, j) == 0))
    }

    /// `m[i][j] == m[i+1][j+1]` cyclically.
    pub fn is_equal_diagonal(&self) -> bool {
        let k = self.k;
        (0..k).all(|i| (0..k).all(|j| self.get(i, j) == self.get((i + 1) % k, (j + 1) % k)))
    }

    /// The off-diagonal pair `(s12, s21)` of a 2x2 matrix.
    pub fn bc(&self) -> Option<(u32, u32)> {
        (self.k == 2).then(|| (self.get(0, 1), self.get(1, 0)))
    }

    /// Quotient of the coloring obtained by uniting colors per `grouping`.
    /// `None` if the grouping is not compatible (rows within a group differ).
    pub fn merged(&self, grouping: &[Vec<usize>]) -> Option<QuotientMatrix> {
        let g = grouping.len();
        let mut out = vec![0u32; g * g];
        for (a, ga) in grouping.iter().enumerate() {
            for (b, gb) in grouping.iter().enumerate() {
                let first: u32 = gb.iter().map(|&j| self.get(ga[0], j)).sum();
                if ga.iter().any(|&i| gb.iter().map(|&j| self.get(i, j)).sum::<u32>() != first) {
                    return None;
                }
                out[a * g + b] = first;
            }
        }
        Some(QuotientMatrix { k: g, entries: out })
    }
}

impl fmt::Display for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.k)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}

/// Counts neighbours of `v` by color into `buf`, compares with `row`, and
/// resets the touched entries. Returns `false` on mismatch.
#[inline]
fn row_matches<C: ColorFn + ?Sized>(c: &C, g: &Graph, v: u64, row: &[u32], buf: &mut [u32]) -> bool {
    for u in g.neighbors(v) {
        buf[c.color(u)] += 1;
    }
    let mut ok = true;
    for u in g.neighbors(v) {
        let cu = c.color(u);
        if buf[cu] != row[cu] {
            ok = false;
        }
    }
    for u in g.neighbors(v) {
        buf[c.color(u)] = 0;
    }
    ok
}

fn observed_row<C: ColorFn + ?Sized>(c: &C, g: &Graph, v: u64) -> Vec<u32> {
    let mut row = vec![0u32; c.num_colors()];
    for u in g.neighbors(v) {
        row[c.color(u)] += 1;
    }
    row
}

fn first_mismatch<C: ColorFn + ?Sized>(
    c: &C,
    g: &Graph,
    rows: &[Vec<u32>],
    vertices: impl IndexedParallelIterator<Item = u64>,
) -> Option<NotEquitable> {
    let k = c.num_colors();
    vertices
        .with_min_len(1 << 12)
        .map_init(
            || vec![0u32; k],
            |buf, v| {
                let i = c.color(v);
                (!row_matches(c, g, v, &rows[i], buf)).then_some(v)
            },
        )
        .find_first(|r| r.is_some())
        .flatten()
        .map(|v| {
            let i = c.color(v);
            NotEquitable { vertex: v, color: i, expected_row: rows[i].clone(), observed_row: observed_row(c, g, v) }
        })
}

/// Computes the quotient matrix by visiting every vertex.
///
/// The row of each color is taken from its first vertex in canonical order; the
/// reported counterexample is the smallest index whose row differs.
pub fn compute_quotient<C: ColorFn + ?Sized>(c: &C) -> Result<QuotientMatrix> {
    let spec = c.spec();
    check_exhaustive(spec, "exhaustive quotient computation")?;
    let k = c.num_colors();
    let g = spec.graph();
    let mut reps: Vec<Option<u64>> = vec![None; k];
    let mut found = 0;
    for v in 0..spec.num_vertices() {
        let col = c.color(v);
        if col >= k {
            return Err(Error::InvalidColoring(format!("vertex {v} has color {} > {k}", col + 1)));
        }
        if reps[col].is_none() {
            reps[col] = Some(v);
            found += 1;
            if found == k {
                break;
            }
        }
    }
    if let Some(missing) = reps.iter().position(Option::is_none) {
        return Err(Error::InvalidColoring(format!("color {} is never used", missing + 1)));
    }
    let rows: Vec<Vec<u32>> = reps.iter().map(|r| observed_row(c, &g, r.unwrap())).collect();
    if let Some(w) = first_mismatch(c, &g, &rows, (0..spec.num_vertices() as usize).into_par_iter().map(|v| v as u64)) {
        return Err(w.into());
    }
    QuotientMatrix::from_rows(rows)
}

/// Exhaustive check against a declared matrix.
pub fn verify_quotient<C: ColorFn + ?Sized>(c: &C, expected: &QuotientMatrix) -> Result<()> {
    let got = compute_quotient(c)?;
    if &got != expected {
        return Err(Error::Verification(format!("quotient is [{got}], expected [{expected}]")));
    }
    Ok(())
}

/// Checks the rows of the given vertices only, against a declared matrix.
/// Used for colorings too large to visit exhaustively; the caller chooses the
/// vertex set (samples or coset representatives).
pub fn verify_quotient_on<C: ColorFn + ?Sized>(c: &C, expected: &QuotientMatrix, vertices: &[u64]) -> Result<()> {
    if expected.k() != c.num_colors() {
        return Err(Error::WrongColorCount { expected: expected.k(), found: c.num_colors() });
    }
    let spec = c.spec();
    for &v in vertices {
        spec.check_index(v)?;
    }
    let g = spec.graph();
    let rows = expected.rows();
    if let Some(w) = first_mismatch(c, &g, &rows, vertices.par_iter().copied()) {
        return Err(w.into());
    }
    Ok(())
}

/// The pair `(s12, s21)` of a perfect 2-coloring.
pub fn is_perfect_bc(c: &Coloring) -> Result<(u32, u32)> {
    if c.k() != 2 {
        return Err(Error::WrongColorCount { expected: 2, found: c.k() });
    }
    let q = compute_quotient(c)?;
    Ok((q.get(0, 1), q.get(1, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::shrikhande_label_bits;
    use crate::graph::GraphSpec;

    fn spec(m: u32, n: u32) -> GraphSpec {
        GraphSpec::new(m, n).unwrap()
    }

    /// Neighbour counts from the structured API only.
    fn naive_quotient(c: &Coloring) -> Option<Vec<Vec<u32>>> {
        let s = c.spec();
        let mut rows: Vec<Option<Vec<u32>>> = vec![None; c.k()];
        for v in 0..s.num_vertices() {
            let mut row = vec![0u32; c.k()];
            for u in s.neighbors_of(&s.vertex_at(v).unwrap()).unwrap() {
                row[c.get(s.index(&u).unwrap())] += 1;
            }
            match &rows[c.get(v)] {
                None => rows[c.get(v)] = Some(row),
                Some(r) if *r != row => return None,
                _ => {}
            }
        }
        Some(rows.into_iter().map(Option::unwrap).collect())
    }

    #[test]
    fn constant_coloring() {
        let c = Coloring::new(spec(1, 1), 1, vec![0; 64]).unwrap();
        assert_eq!(compute_quotient(&c).unwrap(), QuotientMatrix::from_rows(vec![vec![9]]).unwrap());
    }

    #[test]
    fn k4_halves() {
        let c = Coloring::new(spec(0, 1), 2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(compute_quotient(&c).unwrap(), QuotientMatrix::two(1, 2, 2, 1));
        let c = Coloring::new(spec(0, 1), 2, vec![0, 1, 1, 1]).unwrap();
        assert_eq!(is_perfect_bc(&c).unwrap(), (3, 1));
    }

    #[test]
    fn shrikhande_label_coloring() {
        let s = spec(1, 0);
        let c = Coloring::from_closure(s, 4, |v| shrikhande_label_bits((v >> 2) as u8, (v & 3) as u8) as usize)
            .unwrap();
        let q = compute_quotient(&c).unwrap();
        assert_eq!(q, QuotientMatrix::je(4, 2, 0));
        assert_eq!(Some(q.rows()), naive_quotient(&c));
    }

    #[test]
    fn paper_bc_sets_in_shrikhande() {
        let s = spec(1, 0);
        let first: Vec<u64> = [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (1, 2), (1, 3)]
            .iter()
            .map(|&(a, b)| 4 * a + b)
            .collect();
        let c = Coloring::from_closure(s, 2, |v| usize::from(!first.contains(&v))).unwrap();
        assert_eq!(is_perfect_bc(&c).unwrap(), (2, 2));
        let first: Vec<u64> = [(0, 0), (0, 1), (0, 2), (0, 3), (2, 0), (2, 1), (2, 2), (2, 3)]
            .iter()
            .map(|&(a, b)| 4 * a + b)
            .collect();
        let c = Coloring::from_closure(s, 2, |v| usize::from(!first.contains(&v))).unwrap();
        assert_eq!(is_perfect_bc(&c).unwrap(), (4, 4));
    }

    #[test]
    fn first_counterexample_is_minimal() {
        // a vertex of each color is fine, then a perturbation at vertex 9
        let s = spec(0, 2);
        let mut colors: Vec<u16> = (0..16).map(|v| (((v >> 2) + v) % 4) as u16).collect();
        let ok = Coloring::new(s, 4, colors.clone()).unwrap();
        assert!(compute_quotient(&ok).is_ok());
        colors[9] = (colors[9] + 1) % 4;
        let bad = Coloring::new(s, 4, colors).unwrap();
        let Err(Error::NotEquitable(w)) = compute_quotient(&bad) else { panic!() };
        let naive_first = (0..16u64)
            .find(|&v| {
                let g = s.graph();
                let reps: Vec<u64> = (0..4).map(|c| (0..16).find(|&u| bad.get(u) == c).unwrap()).collect();
                observed_row(&bad, &g, v) != observed_row(&bad, &g, reps[bad.get(v)])
            })
            .unwrap();
        assert_eq!(w.vertex, naive_first);
        assert_ne!(w.expected_row, w.observed_row);
    }

    #[test]
    fn parse_and_display() {
        let q = QuotientMatrix::parse("1 5; 3 3").unwrap();
        assert_eq!(q, QuotientMatrix::two(1, 5, 3, 3));
        assert_eq!(q.to_string(), "1 5; 3 3");
        assert!(QuotientMatrix::parse("1 2; 3").is_err());
        assert!(QuotientMatrix::parse("a").is_err());
    }

    #[test]
    fn merged_quotients() {
        let q = QuotientMatrix::je(4, 2, 0);
        assert_eq!(q.merged(&[vec![0], vec![1, 2, 3]]).unwrap(), QuotientMatrix::two(0, 6, 2, 4));
        assert_eq!(q.merged(&[vec![0, 1], vec![2, 3]]).unwrap(), QuotientMatrix::two(2, 4, 4, 2));
        let bad = QuotientMatrix::from_rows(vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]]).unwrap();
        assert!(bad.merged(&[vec![0, 1], vec![2]]).is_none());
    }

    #[test]
    fn sampled_verification() {
        let s = spec(1, 0);
        let c = Coloring::from_closure(s, 4, |v| shrikhande_label_bits((v >> 2) as u8, (v & 3) as u8) as usize)
            .unwrap();
        assert!(verify_quotient_on(&c, &QuotientMatrix::je(4, 2, 0), &[0, 5, 15]).is_ok());
        assert!(verify_quotient_on(&c, &QuotientMatrix::je(4, 1, 3), &[0]).is_err());
    }
}
