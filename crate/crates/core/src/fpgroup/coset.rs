//! Coset enumeration over the trivial subgroup: HLT strategy with a
//! scan-only lookahead pass when the table grows past its bound.

use super::Letter;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Overflow {
    pub defined: usize,
    pub live: usize,
}

/// A closed coset table, renumbered in first-reached order from coset 0.
#[derive(Debug, Clone)]
pub(crate) struct CosetTable {
    pub cols: usize,
    /// `table[c * cols + col]`, column `2k` is generator `k`, `2k+1` its inverse.
    pub table: Vec<u32>,
    pub size: usize,
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    live: usize,
    bound: usize,
}

#[inline]
fn col(l: Letter) -> usize {
    2 * l.gen as usize + usize::from(l.inv)
}

#[inline]
fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl Enumerator {
    fn new(cols: usize, bound: usize) -> Self {
        Self {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            queue: Vec::new(),
            live: 1,
            bound,
        }
    }

    fn num_defined(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) {
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.set(c, x, d);
        self.set(d, inv_col(x), c);
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let x = self.rep(a);
        let y = self.rep(b);
        if x != y {
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
            self.live -= 1;
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                let xi = inv_col(x);
                self.set(d, xi, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let m_x = self.get(mu, x);
                if m_x != NONE {
                    self.merge(nu, m_x);
                } else {
                    let n_xi = self.get(nu, xi);
                    if n_xi != NONE {
                        self.merge(mu, n_xi);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, xi, mu);
                    }
                }
            }
        }
    }

    /// Scans `w` from both ends at coset `a`; with `fill`, defines cosets to
    /// complete the scan.
    fn scan(&mut self, a: u32, w: &[usize], fill: bool) {
        let r = w.len();
        let mut f = a;
        let mut b = a;
        let mut i = 0usize;
        let mut j = r;
        loop {
            while i < j {
                let d = self.get(f, w[i]);
                if d == NONE {
                    break;
                }
                f = d;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j > i {
                let d = self.get(b, inv_col(w[j - 1]));
                if d == NONE {
                    break;
                }
                b = d;
                j -= 1;
            }
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, inv_col(w[i]), f);
                return;
            }
            if !fill {
                return;
            }
            self.define(f, w[i]);
        }
    }

    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        let mut c = 0u32;
        while (c as usize) < self.num_defined() {
            if self.is_live(c) {
                for w in relators {
                    self.scan(c, w, false);
                    if !self.is_live(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
    }

    fn run(&mut self, relators: &[Vec<usize>]) -> Result<(), Overflow> {
        let mut a = 0u32;
        while (a as usize) < self.num_defined() {
            if self.is_live(a) {
                for w in relators {
                    self.scan(a, w, true);
                    if !self.is_live(a) {
                        break;
                    }
                }
                if self.is_live(a) {
                    for x in 0..self.cols {
                        if self.get(a, x) == NONE {
                            self.define(a, x);
                        }
                    }
                }
            }
            if self.live > self.bound {
                self.lookahead(relators);
                if self.live > self.bound {
                    return Err(Overflow {
                        defined: self.num_defined(),
                        live: self.live,
                    });
                }
            }
            a += 1;
        }
        Ok(())
    }

    fn standardize(&self) -> CosetTable {
        let n = self.num_defined();
        let mut new_of = vec![NONE; n];
        let mut order = vec![0u32];
        new_of[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for x in 0..self.cols {
                let d = self.get(c, x);
                if new_of[d as usize] == NONE {
                    new_of[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let size = order.len();
        let mut table = vec![0u32; size * self.cols];
        for (new, &old) in order.iter().enumerate() {
            for x in 0..self.cols {
                table[new * self.cols + x] = new_of[self.get(old, x) as usize];
            }
        }
        CosetTable {
            cols: self.cols,
            table,
            size,
        }
    }
}

/// Enumerates cosets of the trivial subgroup in `<gens | relators>`.
pub(crate) fn enumerate(num_gens: usize, relators: &[Vec<Letter>], bound: usize) -> Result<CosetTable, Overflow> {
    let rels: Vec<Vec<usize>> = relators
        .iter()
        .map(|w| w.iter().map(|&l| col(l)).collect())
        .collect();
    let mut e = Enumerator::new(2 * num_gens, bound);
    e.run(&rels)?;
    Ok(e.standardize())
}

impl CosetTable {
    #[inline]
    pub fn act(&self, c: u32, l: Letter) -> u32 {
        self.table[c as usize * self.cols + col(l)]
    }

    pub fn walk(&self, start: u32, word: &[Letter]) -> u32 {
        word.iter().fold(start, |c, &l| self.act(c, l))
    }
}
