//! Brute-force oracles. Everything here is recomputed from the cover list by
//! exhaustive search and never calls the library's derived tables.

#![allow(dead_code)]

use commlat::lattice::FiniteLattice;

/// Order, meets and joins recomputed from the covers.
pub struct Oracle {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
}

impl Oracle {
    pub fn new(l: &FiniteLattice) -> Self {
        let n = l.n();
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in l.covers() {
            leq[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        let bound = |x: usize, y: usize, below: bool| {
            let cands: Vec<usize> = (0..n)
                .filter(|&z| {
                    if below {
                        leq[z][x] && leq[z][y]
                    } else {
                        leq[x][z] && leq[y][z]
                    }
                })
                .collect();
            *cands
                .iter()
                .find(|&&z| {
                    cands
                        .iter()
                        .all(|&w| if below { leq[w][z] } else { leq[z][w] })
                })
                .expect("lattice")
        };
        let meet = (0..n)
            .map(|x| (0..n).map(|y| bound(x, y, true)).collect())
            .collect();
        let join = (0..n)
            .map(|x| (0..n).map(|y| bound(x, y, false)).collect())
            .collect();
        let bottom = (0..n).find(|&x| (0..n).all(|y| leq[x][y])).unwrap();
        let top = (0..n).find(|&x| (0..n).all(|y| leq[y][x])).unwrap();
        Oracle {
            n,
            leq,
            meet,
            join,
            bottom,
            top,
        }
    }

    pub fn covered(&self, x: usize, y: usize) -> bool {
        x != y
            && self.leq[x][y]
            && (0..self.n).all(|z| z == x || z == y || !(self.leq[x][z] && self.leq[z][y]))
    }

    pub fn prime_intervals(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.covered(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |a, b| self.join[a][b])
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |a, b| self.meet[a][b])
    }

    /// Meet irreducibles with their unique upper cover.
    pub fn meet_irreducibles(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .filter_map(|x| {
                let ups: Vec<usize> = (0..self.n).filter(|&y| self.covered(x, y)).collect();
                (ups.len() == 1).then(|| (x, ups[0]))
            })
            .collect()
    }

    /// Join irreducibles with their unique lower cover.
    pub fn join_irreducibles(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .filter_map(|x| {
                let downs: Vec<usize> = (0..self.n).filter(|&y| self.covered(y, x)).collect();
                (downs.len() == 1).then(|| (x, downs[0]))
            })
            .collect()
    }

    pub fn is_modular(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                (0..self.n).all(|z| {
                    !self.leq[x][z]
                        || self.join[x][self.meet[y][z]] == self.meet[self.join[x][y]][z]
                })
            })
        })
    }

    /// Projectivity on all intervals `a ≤ b`: the equivalence generated by
    /// `[a, b] ↗ [c, d]` whenever `d = b ∨ c` and `a = b ∧ c`.
    pub fn projectivity(&self) -> Projective {
        let n = self.n;
        let idx = |a: usize, b: usize| a * n + b;
        let mut parent: Vec<usize> = (0..n * n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for a in 0..n {
            for b in 0..n {
                if !self.leq[a][b] {
                    continue;
                }
                for c in 0..n {
                    if self.meet[b][c] == a {
                        let d = self.join[b][c];
                        let (r1, r2) = (find(&mut parent, idx(a, b)), find(&mut parent, idx(c, d)));
                        parent[r1] = r2;
                    }
                }
            }
        }
        let class = (0..n * n).map(|i| find(&mut parent, i)).collect();
        Projective { n, class }
    }

    pub fn is_congruence(&self, class: &[usize]) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                class[x] != class[y]
                    || (0..self.n).all(|z| {
                        class[self.meet[x][z]] == class[self.meet[y][z]]
                            && class[self.join[x][z]] == class[self.join[y][z]]
                    })
            })
        })
    }

    /// Every congruence, as a class label per element (restricted growth).
    pub fn congruences(&self) -> Vec<Vec<usize>> {
        set_partitions(self.n)
            .into_iter()
            .filter(|p| self.is_congruence(p))
            .collect()
    }

    /// Every (0,1)-homomorphism onto the two-element lattice, as 0/1 images.
    pub fn b2_homs(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut out = Vec::new();
        if n < 2 {
            return out;
        }
        for mask in 0u32..(1 << n) {
            let h: Vec<usize> = (0..n).map(|x| ((mask >> x) & 1) as usize).collect();
            if h[self.bottom] != 0 || h[self.top] != 1 {
                continue;
            }
            let ok = (0..n).all(|x| {
                (0..n).all(|y| {
                    h[self.meet[x][y]] == h[x].min(h[y]) && h[self.join[x][y]] == h[x].max(h[y])
                })
            });
            if ok {
                out.push(h);
            }
        }
        out
    }

    /// Checks the commutator axioms directly, for every triple.
    pub fn is_commutator(&self, t: &[Vec<usize>]) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            t[self.bottom][x] == self.bottom
                && (0..n).all(|y| {
                    t[x][y] == t[y][x]
                        && self.leq[t[x][y]][self.meet[x][y]]
                        && (0..n).all(|z| t[self.join[x][z]][y] == self.join[t[x][y]][t[z][y]])
                })
        })
    }

    /// Every commutator multiplication, by exhaustive search over symmetric
    /// tables below the meet.
    pub fn all_commutators(&self) -> Vec<Vec<Vec<usize>>> {
        let n = self.n;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (x..n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != self.bottom && y != self.bottom)
            .collect();
        let choices: Vec<Vec<usize>> = pairs
            .iter()
            .map(|&(x, y)| (0..n).filter(|&z| self.leq[z][self.meet[x][y]]).collect())
            .collect();
        let mut t = vec![vec![self.bottom; n]; n];
        let mut out = Vec::new();
        self.fill(&pairs, &choices, 0, &mut t, &mut out);
        out.sort();
        out
    }

    fn fill(
        &self,
        pairs: &[(usize, usize)],
        choices: &[Vec<usize>],
        k: usize,
        t: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if k == pairs.len() {
            if self.is_commutator(t) {
                out.push(t.clone());
            }
            return;
        }
        let (x, y) = pairs[k];
        for &v in &choices[k] {
            t[x][y] = v;
            t[y][x] = v;
            self.fill(pairs, choices, k + 1, t, out);
        }
    }

    /// `(x : y)` for a table.
    pub fn residuation(&self, t: &[Vec<usize>], x: usize, y: usize) -> usize {
        self.join_all((0..self.n).filter(|&z| self.leq[t[z][y]][x]))
    }
}

pub struct Projective {
    n: usize,
    class: Vec<usize>,
}

impl Projective {
    pub fn related(&self, i: (usize, usize), j: (usize, usize)) -> bool {
        self.class[i.0 * self.n + i.1] == self.class[j.0 * self.n + j.1]
    }
}

/// All set partitions of `0..n` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max + 1 {
            cur.push(c);
            rec(n, cur, max.max(c), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut cur = vec![0];
    rec(n, &mut cur, 0, &mut out);
    out
}

/// Pointwise join of tables.
pub fn table_join(o: &Oracle, tables: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let mut acc = vec![vec![o.bottom; o.n]; o.n];
    for t in tables {
        for x in 0..o.n {
            for y in 0..o.n {
                acc[x][y] = o.join[acc[x][y]][t[x][y]];
            }
        }
    }
    acc
}
