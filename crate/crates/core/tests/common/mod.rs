//! Shared helpers for the integration tests: independent reference
//! implementations and seeded corpora.

#![allow(dead_code)]

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ultragh::gen::{random_space, GenConfig};
use ultragh::{Rational, UltrametricSpace};

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn space(labels: &[&str], rows: &[&[&str]]) -> UltrametricSpace {
    UltrametricSpace::from_strs(labels, rows).unwrap()
}

/// ab=1, ac=2, bc=2.
pub fn e1() -> UltrametricSpace {
    space(
        &["a", "b", "c"],
        &[&["0", "1", "2"], &["1", "0", "2"], &["2", "2", "0"]],
    )
}

/// Two points at distance 2.
pub fn e2() -> UltrametricSpace {
    space(&["p", "q"], &[&["0", "2"], &["2", "0"]])
}

pub fn integer_heights() -> Vec<Rational> {
    (1..=10).map(Rational::from_integer).collect()
}

pub fn half_heights() -> Vec<Rational> {
    vec![q("1/2"), q("3/2"), q("5/2")]
}

/// A generated space with `1..=max_n` points, seeded from `rng`.
pub fn draw_space(rng: &mut ChaCha8Rng, max_n: usize, heights: &[Rational]) -> UltrametricSpace {
    let n = rng.random_range(1..=max_n);
    let arity = rng.random_range(2..=4);
    let cfg = GenConfig::new(n, heights.to_vec(), rng.random(), arity).unwrap();
    random_space(&cfg)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Single-linkage (minimax path) closure of a symmetric weight table;
/// always an ultrametric. Independent of the crate's generator.
pub fn minimax_space(n: usize, weights: &[u64]) -> UltrametricSpace {
    let mut d = vec![vec![0u64; n]; n];
    let mut w = weights.iter().cycle();
    for (i, j) in (0..n).tuple_combinations() {
        let v = *w.next().unwrap();
        d[i][j] = v;
        d[j][i] = v;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k].max(d[k][j]);
                if i != j && via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    let table = d
        .iter()
        .map(|row| row.iter().map(|&v| Rational::from_integer(v)).collect())
        .collect();
    UltrametricSpace::new(labels, table).unwrap()
}

/// Isometry by trying every bijection.
pub fn brute_isometric(x: &UltrametricSpace, y: &UltrametricSpace) -> bool {
    let n = x.len();
    if n != y.len() {
        return false;
    }
    (0..n)
        .permutations(n)
        .any(|p| (0..n).all(|i| (i + 1..n).all(|j| x.dist(i, j) == y.dist(p[i], p[j]))))
}

/// Closed-ball classes at level `t` by union-find over pairs within `t`,
/// with the class distance taken as the minimum over member pairs.
pub fn naive_quotient(x: &UltrametricSpace, t: &Rational) -> Vec<Vec<Rational>> {
    let n = x.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if x.dist(i, j) <= t {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let classes: Vec<usize> = roots.iter().copied().unique().collect();
    let mut table = vec![vec![Rational::zero(); classes.len()]; classes.len()];
    for (a, &ra) in classes.iter().enumerate() {
        for (b, &rb) in classes.iter().enumerate() {
            if a == b {
                continue;
            }
            table[a][b] = (0..n)
                .filter(|&i| roots[i] == ra)
                .flat_map(|i| (0..n).filter(|&j| roots[j] == rb).map(move |j| (i, j)))
                .map(|(i, j)| x.dist(i, j).clone())
                .min()
                .unwrap();
        }
    }
    table
}

fn table_space(table: Vec<Vec<Rational>>) -> UltrametricSpace {
    let labels = (0..table.len()).map(|i| format!("k{i}")).collect();
    UltrametricSpace::new(labels, table).unwrap()
}

/// Every distance value of either space, plus 0, ascending.
pub fn all_levels(x: &UltrametricSpace, y: &UltrametricSpace) -> Vec<Rational> {
    let mut levels = vec![Rational::zero()];
    for s in [x, y] {
        for i in 0..s.len() {
            for j in 0..s.len() {
                levels.push(s.dist(i, j).clone());
            }
        }
    }
    levels.sort();
    levels.dedup();
    levels
}

/// Whether the naive quotients at `t` are isometric (checked by brute force).
pub fn naive_match(x: &UltrametricSpace, y: &UltrametricSpace, t: &Rational) -> bool {
    let qx = naive_quotient(x, t);
    let qy = naive_quotient(y, t);
    qx.len() == qy.len() && brute_isometric(&table_space(qx), &table_space(qy))
}

/// Smallest level at which the quotients agree, by a linear scan with
/// brute-force isometry.
pub fn scan_ugh(x: &UltrametricSpace, y: &UltrametricSpace) -> Rational {
    all_levels(x, y)
        .into_iter()
        .find(|t| naive_match(x, y, t))
        .expect("quotients agree at the larger diameter")
}
