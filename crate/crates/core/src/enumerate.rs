//! Exhaustive generation of maximal outerplanar graphs, one representative
//! per isomorphism class, via polygon triangulations canonicalized under
//! the dihedral group.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::triangulation::PolygonTriangulation;

/// Desk-scale cap; triangulation counts grow like Catalan numbers.
pub const MAX_N: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("n must lie in 3..={MAX_N}, got {0}")]
    OutOfRange(usize),
}

/// Lexicographically minimal serialized diagonal set over all `2n` dihedral
/// relabelings; equal codes characterize isomorphic maximal outerplanar
/// graphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalCode(pub String);

/// Canonical code of a triangulation: minimum over the `2n` rotations and
/// reflections of the polygon. Idempotent under relabeling.
pub fn canonical_code(t: &PolygonTriangulation) -> CanonicalCode {
    let n = t.n();
    let mut best: Option<String> = None;
    for r in 0..n {
        for reflect in [false, true] {
            let map = |p: usize| -> usize {
                if reflect {
                    (n + r - p) % n
                } else {
                    (p + r) % n
                }
            };
            let mut diags: Vec<(usize, usize)> = t
                .diagonals()
                .iter()
                .map(|&(a, b)| {
                    let (a, b) = (map(a), map(b));
                    if a < b {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect();
            diags.sort_unstable();
            let body: Vec<String> = diags.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            let code = format!("{n}:{}", body.join(","));
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    CanonicalCode(best.unwrap())
}

/// Visit every triangulation of the convex `n`-gon (with repetition across
/// isomorphism classes), by recursing on the apex choice of the triangle
/// sitting on each chord.
fn for_each_raw(n: usize, f: &mut impl FnMut(&[(usize, usize)])) {
    // Worklist of chords (i, j) still to be triangulated, each standing for
    // the sub-polygon i, i+1, ..., j.
    fn go(
        n: usize,
        stack: &mut Vec<(usize, usize)>,
        diags: &mut Vec<(usize, usize)>,
        f: &mut impl FnMut(&[(usize, usize)]),
    ) {
        let Some((i, j)) = stack.pop() else {
            f(diags);
            return;
        };
        if j - i < 2 {
            go(n, stack, diags, f);
            stack.push((i, j));
            return;
        }
        for k in i + 1..j {
            let mut added = 0;
            // The root chord (0, n-1) is the closing boundary edge; every
            // other non-consecutive chord is a polygon diagonal.
            if k > i + 1 && !(i == 0 && k == n - 1) {
                diags.push((i, k));
                added += 1;
            }
            if j > k + 1 && !(k == 0 && j == n - 1) {
                diags.push((k, j));
                added += 1;
            }
            stack.push((i, k));
            stack.push((k, j));
            go(n, stack, diags, f);
            stack.pop();
            stack.pop();
            for _ in 0..added {
                diags.pop();
            }
        }
        stack.push((i, j));
    }

    if n == 3 {
        f(&[]);
        return;
    }
    let mut stack = vec![(0usize, n - 1)];
    let mut diags = Vec::new();
    go(n, &mut stack, &mut diags, f);
}

/// Number of labeled polygon triangulations, before isomorphism dedup;
/// equals Catalan(n-2) and cross-checks the generator.
pub fn raw_count(n: usize) -> Result<u64, EnumerateError> {
    if !(3..=MAX_N).contains(&n) {
        return Err(EnumerateError::OutOfRange(n));
    }
    let mut count = 0u64;
    for_each_raw(n, &mut |_| count += 1);
    Ok(count)
}

/// All maximal outerplanar graphs on `n` vertices, exactly one canonical
/// representative per isomorphism class, in sorted code order.
pub fn enumerate_triangulations(n: usize) -> Result<Vec<PolygonTriangulation>, EnumerateError> {
    if !(3..=MAX_N).contains(&n) {
        return Err(EnumerateError::OutOfRange(n));
    }
    let mut codes: BTreeSet<String> = BTreeSet::new();
    for_each_raw(n, &mut |diags| {
        let t = PolygonTriangulation::new(n, diags.iter().copied())
            .expect("generator emits valid triangulations");
        codes.insert(canonical_code(&t).0);
    });
    Ok(codes
        .into_iter()
        .map(|code| {
            PolygonTriangulation::parse(&code)
                .expect("canonical codes round-trip through the parser")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_counts_are_catalan() {
        // Catalan(n-2) for n = 3..=14
        let catalan = [
            1u64, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012,
        ];
        for (n, &expect) in (3..=14).zip(catalan.iter()) {
            assert_eq!(raw_count(n).unwrap(), expect, "n = {n}");
        }
        assert!(raw_count(2).is_err());
        assert!(raw_count(17).is_err());
    }

    #[test]
    fn canonical_code_identifies_rotations() {
        let a = PolygonTriangulation::new(4, [(0, 2)]).unwrap();
        let b = PolygonTriangulation::new(4, [(1, 3)]).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));

        let fan0 = PolygonTriangulation::new(5, [(0, 2), (0, 3)]).unwrap();
        let fan3 = PolygonTriangulation::new(5, [(3, 0), (3, 1)]).unwrap();
        assert_eq!(canonical_code(&fan0), canonical_code(&fan3));

        let fan = PolygonTriangulation::new(6, [(0, 2), (0, 3), (0, 4)]).unwrap();
        let snake = PolygonTriangulation::new(6, [(0, 2), (2, 4), (0, 4)]).unwrap();
        assert_ne!(canonical_code(&fan), canonical_code(&snake));
    }

    #[test]
    fn class_counts() {
        assert_eq!(enumerate_triangulations(3).unwrap().len(), 1);
        assert_eq!(enumerate_triangulations(4).unwrap().len(), 1);
        assert_eq!(enumerate_triangulations(5).unwrap().len(), 1);
        assert_eq!(enumerate_triangulations(6).unwrap().len(), 3);
        assert_eq!(enumerate_triangulations(7).unwrap().len(), 4);
        assert_eq!(enumerate_triangulations(8).unwrap().len(), 12);
    }

    #[test]
    fn representatives_are_canonical_and_sorted() {
        let reps = enumerate_triangulations(7).unwrap();
        let codes: Vec<String> = reps.iter().map(|t| canonical_code(t).0).collect();
        let mut sorted = codes.clone();
        sorted.sort();
        assert_eq!(codes, sorted);
        for (t, code) in reps.iter().zip(&codes) {
            assert_eq!(&t.code(), code);
        }
    }
}
