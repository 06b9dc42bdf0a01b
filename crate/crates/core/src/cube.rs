use std::fmt;

/// Face of the n-cube: some coordinates fixed to 0 or 1. Coordinates are 1-based
/// and kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeFace {
    n: usize,
    fixed: Vec<(usize, u8)>,
}

impl CubeFace {
    pub fn new(n: usize, mut fixed: Vec<(usize, u8)>) -> Self {
        fixed.sort();
        fixed.dedup();
        assert!(fixed.iter().all(|&(i, e)| (1..=n).contains(&i) && e <= 1));
        assert!(fixed.windows(2).all(|w| w[0].0 != w[1].0), "coordinate fixed twice");
        CubeFace { n, fixed }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn codim(&self) -> usize {
        self.fixed.len()
    }

    pub fn fixed(&self) -> &[(usize, u8)] {
        &self.fixed
    }

    pub fn value_of(&self, coord: usize) -> Option<u8> {
        self.fixed.iter().find(|f| f.0 == coord).map(|f| f.1)
    }

    /// True when `self` lies inside `other` (fixes a superset of its coordinates).
    pub fn is_subface_of(&self, other: &CubeFace) -> bool {
        other.fixed.iter().all(|f| self.fixed.contains(f))
    }

    /// All proper faces of codimension >= 1, ordered by codimension, then by the
    /// fixed coordinates, then by the fixed values.
    pub fn all_proper(n: usize) -> Vec<CubeFace> {
        let mut out = Vec::new();
        for codim in 1..=n {
            for coords in combinations(n, codim) {
                for bits in 0..(1u32 << codim) {
                    let fixed = coords
                        .iter()
                        .enumerate()
                        .map(|(k, &i)| (i, ((bits >> (codim - 1 - k)) & 1) as u8))
                        .collect();
                    out.push(CubeFace::new(n, fixed));
                }
            }
        }
        out
    }
}

impl fmt::Display for CubeFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fixed.iter().map(|(i, e)| format!("y{i}={e}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Increasing `k`-subsets of `1..=n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Vertices of the n-cube in lexicographic order.
pub fn vertices(n: usize) -> Vec<Vec<u8>> {
    (0..(1u32 << n))
        .map(|bits| (0..n).map(|k| ((bits >> (n - 1 - k)) & 1) as u8).collect())
        .collect()
}

/// `(-1)^(number of coordinates equal to 1)`.
pub fn vertex_sign(v: &[u8]) -> i64 {
    if v.iter().filter(|&&e| e == 1).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_counts() {
        // 3^n - 1 proper faces
        assert_eq!(CubeFace::all_proper(2).len(), 8);
        assert_eq!(CubeFace::all_proper(3).len(), 26);
        let first_codim2 = &CubeFace::all_proper(2)[4];
        assert_eq!(first_codim2.to_string(), "{y1=0,y2=0}");
    }

    #[test]
    fn signs() {
        assert_eq!(vertex_sign(&[0, 0]), 1);
        assert_eq!(vertex_sign(&[1, 0]), -1);
        assert_eq!(vertex_sign(&[1, 1, 1]), -1);
        assert_eq!(vertices(2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
