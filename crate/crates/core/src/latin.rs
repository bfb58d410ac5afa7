//! Latin squares, transversals, complete mappings and group isotopy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nets::DualNet;
use crate::plane::join;

/// An `n × n` array in which every row and column is a permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct LatinSquare {
    cells: Vec<Vec<usize>>,
}

impl TryFrom<Vec<Vec<usize>>> for LatinSquare {
    type Error = Error;

    fn try_from(cells: Vec<Vec<usize>>) -> Result<Self> {
        LatinSquare::new(cells)
    }
}

impl From<LatinSquare> for Vec<Vec<usize>> {
    fn from(l: LatinSquare) -> Self {
        l.cells
    }
}

fn is_permutation(xs: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    let mut count = 0;
    for x in xs {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
        count += 1;
    }
    count == n
}

impl LatinSquare {
    pub fn new(cells: Vec<Vec<usize>>) -> Result<Self> {
        let n = cells.len();
        if n == 0 || cells.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter(
                "a latin square must be a non-empty square array".into(),
            ));
        }
        for i in 0..n {
            if !is_permutation(cells[i].iter().copied(), n) || !is_permutation(cells.iter().map(|r| r[i]), n) {
                return Err(Error::InvalidParameter(format!(
                    "row or column {i} is not a permutation"
                )));
            }
        }
        Ok(LatinSquare { cells })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        LatinSquare::new((0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect())
    }

    /// `L(i, j) = k` when the line through `Λ1[i]` and `Λ2[j]` contains `Λ3[k]`.
    pub fn from_net(net: &DualNet) -> Result<Self> {
        if !net.is_verified() {
            return Err(Error::Unverified);
        }
        let comps = net.components();
        if comps.len() != 3 {
            return Err(Error::InvalidParameter(format!(
                "expected 3 components, got {}",
                comps.len()
            )));
        }
        let n = net.order();
        let mut cells = vec![vec![0; n]; n];
        for (i, a) in comps[0].iter().enumerate() {
            for (j, b) in comps[1].iter().enumerate() {
                let l = join(a, b)?;
                cells[i][j] = comps[2]
                    .iter()
                    .position(|c| l.contains(c))
                    .ok_or_else(|| Error::Degenerate(format!("line {l} misses the third component")))?;
            }
        }
        LatinSquare::new(cells)
    }

    pub fn order(&self) -> usize {
        self.cells.len()
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i][j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// Applies the isotopy `L'(r(i), c(j)) = s(L(i, j))`.
    pub fn isotope(&self, r: &[usize], c: &[usize], s: &[usize]) -> LatinSquare {
        let n = self.order();
        let mut cells = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                cells[r[i]][c[j]] = s[self.cells[i][j]];
            }
        }
        LatinSquare { cells }
    }

    /// Cells `(i, j)`, one per row and column, with pairwise distinct symbols.
    /// Supports order at most 64.
    pub fn transversal_search(&self) -> Option<Vec<(usize, usize)>> {
        let n = self.order();
        let mut solver = Transversals::new(self);
        let mut found = None;
        solver.search(&mut |cells| {
            found = Some(cells.to_vec());
            true
        });
        found.map(|mut cells| {
            cells.sort_unstable();
            debug_assert_eq!(cells.len(), n);
            cells
        })
    }

    pub fn count_transversals(&self) -> u64 {
        let mut solver = Transversals::new(self);
        let mut count = 0;
        solver.search(&mut |_| {
            count += 1;
            false
        });
        count
    }

    /// Principal loop isotope `x ∘ y = L(f(x), g(y))` where `f(x)` is the row whose
    /// first entry is `x` and `g(y)` the column whose first entry is `y`.
    /// Its identity is `L(0, 0)`.
    pub fn principal_loop(&self) -> LatinSquare {
        let n = self.order();
        let mut f = vec![0; n];
        let mut g = vec![0; n];
        for i in 0..n {
            f[self.cells[i][0]] = i;
            g[self.cells[0][i]] = i;
        }
        LatinSquare {
            cells: (0..n)
                .map(|x| (0..n).map(|y| self.cells[f[x]][g[y]]).collect())
                .collect(),
        }
    }

    /// The group this square is isotopic to, read off a principal loop isotope.
    pub fn is_group_coordinatizable(&self) -> Option<GroupTable> {
        let lp = self.principal_loop();
        GroupTable::new(lp.cells, self.cells[0][0]).ok()
    }
}

/// Exact cover of rows, columns and symbols by cells.
struct Transversals<'a> {
    l: &'a LatinSquare,
    n: usize,
    /// `col_of[i][s]`: the column of symbol `s` in row `i`.
    col_of: Vec<Vec<usize>>,
    rows: u64,
    cols: u64,
    syms: u64,
    chosen: Vec<(usize, usize)>,
}

type Visit<'v> = dyn FnMut(&[(usize, usize)]) -> bool + 'v;

#[derive(Clone, Copy)]
enum Pick {
    Row(usize),
    Col(usize),
    Sym(usize),
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

impl<'a> Transversals<'a> {
    fn new(l: &'a LatinSquare) -> Self {
        let n = l.order();
        assert!(n <= 64, "transversal search supports order at most 64");
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut col_of = vec![vec![0; n]; n];
        for (i, row) in l.cells.iter().enumerate() {
            for (j, &s) in row.iter().enumerate() {
                col_of[i][s] = j;
            }
        }
        Transversals {
            l,
            n,
            col_of,
            rows: full,
            cols: full,
            syms: full,
            chosen: Vec::with_capacity(n),
        }
    }

    fn fix(&mut self, i: usize, j: usize) {
        self.rows &= !(1 << i);
        self.cols &= !(1 << j);
        self.syms &= !(1 << self.l.cells[i][j]);
        self.chosen.push((i, j));
    }

    fn unfix(&mut self) {
        let (i, j) = self.chosen.pop().unwrap();
        self.rows |= 1 << i;
        self.cols |= 1 << j;
        self.syms |= 1 << self.l.cells[i][j];
    }

    fn row_options(&self, i: usize) -> u64 {
        bits(self.cols)
            .filter(|&j| self.syms >> self.l.cells[i][j] & 1 == 1)
            .fold(0, |m, j| m | 1 << j)
    }

    fn col_options(&self, j: usize) -> u64 {
        bits(self.rows)
            .filter(|&i| self.syms >> self.l.cells[i][j] & 1 == 1)
            .fold(0, |m, i| m | 1 << i)
    }

    fn sym_options(&self, s: usize) -> u64 {
        bits(self.rows)
            .filter(|&i| self.cols >> self.col_of[i][s] & 1 == 1)
            .fold(0, |m, i| m | 1 << i)
    }

    /// The row, column or symbol with the fewest completions, and those completions.
    fn branch(&self) -> (Pick, u64) {
        let mut best = (Pick::Row(0), u64::MAX, u32::MAX);
        let mut consider = |pick: Pick, opts: u64| {
            let c = opts.count_ones();
            if c < best.2 {
                best = (pick, opts, c);
            }
            c <= 1
        };
        for i in bits(self.rows) {
            if consider(Pick::Row(i), self.row_options(i)) {
                return (best.0, best.1);
            }
        }
        for j in bits(self.cols) {
            if consider(Pick::Col(j), self.col_options(j)) {
                return (best.0, best.1);
            }
        }
        for s in bits(self.syms) {
            if consider(Pick::Sym(s), self.sym_options(s)) {
                return (best.0, best.1);
            }
        }
        (best.0, best.1)
    }

    /// Calls `visit` on each transversal until it returns true.
    fn search(&mut self, visit: &mut Visit<'_>) -> bool {
        if self.chosen.len() == self.n {
            return visit(&self.chosen);
        }
        let (pick, opts) = self.branch();
        for x in bits(opts) {
            let (i, j) = match pick {
                Pick::Row(i) => (i, x),
                Pick::Col(j) => (x, j),
                Pick::Sym(s) => (x, self.col_of[x][s]),
            };
            self.fix(i, j);
            let stop = self.search(visit);
            self.unfix();
            if stop {
                return true;
            }
        }
        false
    }
}

/// Multiplication table of a finite group on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupTable {
    /// Checks closure, identity, inverses and associativity exhaustively.
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        LatinSquare::new(table.clone())?;
        let n = table.len();
        if identity >= n || (0..n).any(|x| table[identity][x] != x || table[x][identity] != x) {
            return Err(Error::InvalidParameter(format!(
                "{identity} is not a two-sided identity"
            )));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidParameter(format!("({a}{b}){c} != {a}({b}{c})")));
                    }
                }
            }
        }
        Ok(GroupTable { table, identity })
    }

    pub fn cyclic(n: usize) -> Self {
        GroupTable::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(), 0).unwrap()
    }

    /// Dihedral group of order `2m`: elements `r^k` (index `k`) and `s·r^k` (index `m + k`).
    pub fn dihedral(m: usize) -> Self {
        let mul = |a: usize, b: usize| {
            let (fa, ka) = (a / m, a % m);
            let (fb, kb) = (b / m, b % m);
            let k = if fb == 0 { (ka + kb) % m } else { (m - ka + kb) % m };
            ((fa ^ fb) * m) + k
        };
        GroupTable::new((0..2 * m).map(|a| (0..2 * m).map(|b| mul(a, b)).collect()).collect(), 0).unwrap()
    }

    /// Dicyclic group of order `4m`: `a^k x^e` with `a^(2m) = 1`, `x² = a^m`, `x a x⁻¹ = a⁻¹`.
    pub fn dicyclic(m: usize) -> Self {
        let o = 2 * m;
        let mul = |p: usize, q: usize| {
            let (ep, kp) = (p / o, p % o);
            let (eq, kq) = (q / o, q % o);
            match (ep, eq) {
                (0, _) => eq * o + (kp + kq) % o,
                (1, 0) => o + (kp + o - kq) % o,
                _ => (kp + o - kq + m) % o,
            }
        };
        GroupTable::new((0..2 * o).map(|a| (0..2 * o).map(|b| mul(a, b)).collect()).collect(), 0).unwrap()
    }

    pub fn quaternion() -> Self {
        GroupTable::dicyclic(2)
    }

    /// Alternating group on four letters.
    pub fn alternating4() -> Self {
        let mut perms: Vec<[usize; 4]> = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        if is_permutation(p.iter().copied(), 4) && inversions(&p).is_multiple_of(2) {
                            perms.push(p);
                        }
                    }
                }
            }
        }
        let compose = |x: &[usize; 4], y: &[usize; 4]| [0, 1, 2, 3].map(|i| x[y[i]]);
        let idx = |p: [usize; 4]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|x| perms.iter().map(|y| idx(compose(x, y))).collect())
            .collect();
        GroupTable::new(table, 0).unwrap()
    }

    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Self {
        let (n, m) = (a.order(), b.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        GroupTable::new(table, a.identity * m + b.identity).unwrap()
    }

    /// Groups of order at most 16 used for cross-checks.
    pub fn catalog() -> Vec<(String, GroupTable)> {
        let z = GroupTable::cyclic;
        let x = GroupTable::direct_product;
        let mut out: Vec<(String, GroupTable)> = (1..=16).map(|n| (format!("Z{n}"), z(n))).collect();
        out.extend((3..=8).map(|m| (format!("D{m}"), GroupTable::dihedral(m))));
        out.extend([
            ("Z2xZ2".to_string(), x(&z(2), &z(2))),
            ("Z2xZ4".into(), x(&z(2), &z(4))),
            ("Z2xZ2xZ2".into(), x(&x(&z(2), &z(2)), &z(2))),
            ("Z3xZ3".into(), x(&z(3), &z(3))),
            ("Z2xZ6".into(), x(&z(2), &z(6))),
            ("Z2xZ8".into(), x(&z(2), &z(8))),
            ("Z4xZ4".into(), x(&z(4), &z(4))),
            ("Z2xZ2xZ4".into(), x(&x(&z(2), &z(2)), &z(4))),
            ("Z2^4".into(), x(&x(&z(2), &z(2)), &x(&z(2), &z(2)))),
            ("Z2xD4".into(), x(&z(2), &GroupTable::dihedral(4))),
            ("Z2xQ8".into(), x(&z(2), &GroupTable::quaternion())),
            ("Q8".into(), GroupTable::quaternion()),
            ("Dic3".into(), GroupTable::dicyclic(3)),
            ("Dic4".into(), GroupTable::dicyclic(4)),
            ("A4".into(), GroupTable::alternating4()),
        ]);
        out
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// True when the Sylow 2-subgroup is trivial or not cyclic.
    pub fn hall_paige(&self) -> bool {
        let n = self.order();
        let two_part = 1usize << n.trailing_zeros();
        two_part == 1 || (0..n).all(|a| self.element_order(a) != two_part)
    }

    /// A permutation `θ` with `g ↦ g·θ(g)` also a permutation.
    pub fn complete_mapping(&self) -> Option<Vec<usize>> {
        let square = LatinSquare {
            cells: self.table.clone(),
        };
        let mut solver = Transversals::new(&square);
        // right-multiplying a complete mapping by a constant gives another one
        solver.fix(self.identity, self.identity);
        let mut found = None;
        solver.search(&mut |cells| {
            let mut theta = vec![0; cells.len()];
            for &(g, h) in cells {
                theta[g] = h;
            }
            found = Some(theta);
            true
        });
        found
    }

    pub fn complete_mapping_exists(&self) -> bool {
        self.complete_mapping().is_some()
    }

    /// Whether some bijection `self → other` is a homomorphism.
    pub fn is_isomorphic(&self, other: &GroupTable) -> bool {
        let n = self.order();
        if n != other.order() {
            return false;
        }
        let mut orders_a: Vec<usize> = (0..n).map(|a| self.element_order(a)).collect();
        let mut orders_b: Vec<usize> = (0..n).map(|a| other.element_order(a)).collect();
        orders_a.sort_unstable();
        orders_b.sort_unstable();
        if orders_a != orders_b {
            return false;
        }
        let gens = self.generators();
        let mut images = Vec::with_capacity(gens.len());
        self.extend_iso(other, &gens, &mut images)
    }

    fn generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        let mut in_span = vec![false; n];
        in_span[self.identity] = true;
        while span.len() < n {
            let g = (0..n)
                .filter(|&a| !in_span[a])
                .max_by_key(|&a| self.element_order(a))
                .unwrap();
            gens.push(g);
            let mut frontier = span.clone();
            while let Some(x) = frontier.pop() {
                for &h in &gens {
                    let y = self.mul(x, h);
                    if !in_span[y] {
                        in_span[y] = true;
                        span.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }

    fn extend_iso(&self, other: &GroupTable, gens: &[usize], images: &mut Vec<usize>) -> bool {
        if images.len() == gens.len() {
            return self.homomorphism_from(other, gens, images);
        }
        let g = gens[images.len()];
        let ord = self.element_order(g);
        for cand in 0..other.order() {
            if other.element_order(cand) == ord {
                images.push(cand);
                if self.extend_iso(other, gens, images) {
                    return true;
                }
                images.pop();
            }
        }
        false
    }

    fn homomorphism_from(&self, other: &GroupTable, gens: &[usize], images: &[usize]) -> bool {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        map[self.identity] = other.identity;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = other.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    frontier.push(y);
                } else if map[y] != fy {
                    return false;
                }
            }
        }
        is_permutation(map.iter().copied(), n)
            && (0..n).all(|a| (0..n).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])))
    }
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
        .sum()
}
